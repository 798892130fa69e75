use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{SpliceDiagram, VertexKind};
use crate::error::{Result, SpliceError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub id: String,
    pub kind: VertexKind,
}

/// Decorations are kept signed here so that non-positive values can be
/// reported instead of failing deserialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub u: String,
    pub v: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dec_u: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dec_v: Option<i64>,
}

/// On-disk form of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDocument {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
    #[serde(default)]
    pub leaf_order: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub enriched: bool,
}

impl DiagramDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| SpliceError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

/// Parses and validates a diagram document.
pub fn parse_diagram(text: &str) -> Result<SpliceDiagram> {
    SpliceDiagram::new(&DiagramDocument::from_json(text)?)
}

impl SpliceDiagram {
    pub fn to_document(&self) -> DiagramDocument {
        DiagramDocument {
            vertices: self
                .ids
                .iter()
                .zip(&self.kinds)
                .map(|(id, &kind)| VertexEntry { id: id.clone(), kind })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeEntry {
                    u: self.ids[e.u].clone(),
                    v: self.ids[e.v].clone(),
                    dec_u: e.dec_u.map(|d| d as i64),
                    dec_v: e.dec_v.map(|d| d as i64),
                })
                .collect(),
            leaf_order: self.leaf_order.iter().map(|&l| self.ids[l].clone()).collect(),
            enriched: self.enriched,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }

    /// Graphviz rendering with decorations as edge-end labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph splice {\n");
        for (id, kind) in self.ids.iter().zip(&self.kinds) {
            let shape = match kind {
                VertexKind::Node => "circle",
                VertexKind::Leaf => "point",
            };
            let _ = writeln!(out, "  \"{id}\" [shape={shape}];");
        }
        for e in &self.edges {
            let _ = write!(out, "  \"{}\" -- \"{}\"", self.ids[e.u], self.ids[e.v]);
            let mut attrs = Vec::new();
            if let Some(d) = e.dec_u {
                attrs.push(format!("taillabel=\"{d}\""));
            }
            if let Some(d) = e.dec_v {
                attrs.push(format!("headlabel=\"{d}\""));
            }
            if !attrs.is_empty() {
                let _ = write!(out, " [{}]", attrs.join(", "));
            }
            out.push_str(";\n");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syntax_error_carries_position() {
        let err = parse_diagram("{\n  \"vertices\": [,]\n}").unwrap_err();
        match err {
            SpliceError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn singleton_leaf() {
        let d = parse_diagram(r#"{"vertices":[{"id":"x","kind":"leaf"}],"edges":[]}"#).unwrap();
        assert_eq!(d.leaf_count(), 1);
        assert!(d.nodes().is_empty());
    }

    #[test]
    fn dot_has_edge_end_labels() {
        let d = parse_diagram(
            r#"{"vertices":[{"id":"v","kind":"node"},{"id":"x","kind":"leaf"},
            {"id":"y","kind":"leaf"},{"id":"z","kind":"leaf"}],
            "edges":[{"u":"v","v":"x","dec_u":2},{"u":"v","v":"y","dec_u":3},{"u":"v","v":"z","dec_u":5}]}"#,
        )
        .unwrap();
        let dot = d.to_dot();
        assert!(dot.contains("\"v\" -- \"x\" [taillabel=\"2\"];"));
    }
}
