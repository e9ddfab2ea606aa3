//! The JSON document exchanged for colorings:
//! `{graph_id, palette_size, assignment, certificates}`.

use serde::{Deserialize, Serialize};

use dynachrome_core::verify::Violation;
use dynachrome_core::{Color, Coloring};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    /// Which property was checked, e.g. `dynamic` or `double_total_domination`.
    pub kind: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub detail: serde_json::Value,
}

impl Certificate {
    pub fn from_violations(kind: &str, violations: Vec<Violation>) -> Self {
        Self {
            kind: kind.to_string(),
            holds: violations.is_empty(),
            violations,
            detail: serde_json::Value::Null,
        }
    }

    pub fn with_detail(mut self, detail: serde_json::Value) -> Self {
        self.detail = detail;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColoringDocument {
    pub graph_id: String,
    pub palette_size: usize,
    pub assignment: Vec<Option<Color>>,
    #[serde(default)]
    pub certificates: Vec<Certificate>,
}

impl ColoringDocument {
    pub fn new(graph_id: impl Into<String>, c: &Coloring, certificates: Vec<Certificate>) -> Self {
        Self {
            graph_id: graph_id.into(),
            palette_size: c.palette_size(),
            assignment: c.assignment().to_vec(),
            certificates,
        }
    }

    pub fn coloring(&self) -> Result<Coloring, CliError> {
        Coloring::partial(self.assignment.clone(), self.palette_size).map_err(CliError::input)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_fields() {
        let c = Coloring::new(vec![0, 1], 2).unwrap();
        let doc = ColoringDocument::new("cycle:4", &c, vec![Certificate::from_violations("dynamic", vec![])]);
        let v: serde_json::Value = serde_json::to_value(&doc).unwrap();
        assert_eq!(v["graph_id"], "cycle:4");
        assert_eq!(v["palette_size"], 2);
        assert_eq!(v["assignment"], serde_json::json!([0, 1]));
        assert_eq!(v["certificates"][0]["holds"], true);
        let back: ColoringDocument = serde_json::from_value(v).unwrap();
        assert_eq!(back, doc);
        let bare: ColoringDocument =
            serde_json::from_str(r#"{"graph_id":"x","palette_size":3,"assignment":[2]}"#).unwrap();
        assert!(bare.certificates.is_empty());
        assert!(serde_json::from_str::<ColoringDocument>(r#"{"graph_id":"x","palette_size":1,"assignment":[2]}"#)
            .unwrap()
            .coloring()
            .is_err());
    }
}
