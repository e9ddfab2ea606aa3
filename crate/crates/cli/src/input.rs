//! Loading graphs from files or generator specs.

use std::path::Path;

use dynachrome_core::generators::GraphFamily;
use dynachrome_core::io::{read_dimacs, read_edge_list};
use dynachrome_core::Graph;

use crate::error::CliError;

/// A graph with a stable identifier for reports.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub id: String,
    pub graph: Graph,
    pub family: Option<GraphFamily>,
}

/// DIMACS when the text has a `p` line, else a 0-based edge list.
pub fn parse_graph_text(text: &str) -> Result<Graph, CliError> {
    let dimacs = text.lines().any(|l| l.trim_start().starts_with("p "));
    if dimacs {
        read_dimacs(text).map_err(CliError::input)
    } else {
        read_edge_list(text).map_err(CliError::input)
    }
}

pub fn load_file(path: &Path) -> Result<LoadedGraph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(LoadedGraph {
        id: format!("file:{}", path.display()),
        graph: parse_graph_text(&text)?,
        family: None,
    })
}

pub fn load_family(spec: &str, seed: u64) -> Result<LoadedGraph, CliError> {
    let family: GraphFamily = spec.parse().map_err(CliError::input)?;
    let graph = family.generate(seed).map_err(CliError::input)?;
    let id = if family.is_random() {
        format!("{family}@{seed}")
    } else {
        family.to_string()
    };
    Ok(LoadedGraph {
        id,
        graph,
        family: Some(family),
    })
}

pub fn load(file: Option<&Path>, family: Option<&str>, seed: u64) -> Result<LoadedGraph, CliError> {
    match (file, family) {
        (Some(p), None) => load_file(p),
        (None, Some(f)) => load_family(f, seed),
        _ => Err(CliError::Input("give exactly one of --graph FILE or --family SPEC".into())),
    }
}
