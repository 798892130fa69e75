use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::Serialize;

use super::{DiagramDocument, SpliceDiagram, VertexKind};
use crate::error::SpliceError;
use crate::semigroup::{check_semigroup_condition, SemigroupReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Document,
    Tree,
    Valency,
    Positivity,
    Coprimality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: CheckKind,
    pub location: String,
    pub message: String,
}

impl Violation {
    fn new(check: CheckKind, location: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            check,
            location: location.into(),
            message: message.into(),
        }
    }

    pub fn into_error(self) -> SpliceError {
        SpliceError::structure(self.location, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub citations: Vec<String>,
}

impl Verdict {
    fn from_citations(citations: Vec<String>) -> Self {
        Verdict {
            ok: citations.is_empty(),
            citations,
        }
    }
}

/// Every check run independently, so a single document can fail several.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub document: Verdict,
    pub tree: Verdict,
    pub valency: Verdict,
    pub positivity: Verdict,
    pub coprimality: Verdict,
    /// Absent when the structural checks fail.
    pub determinant: Option<Verdict>,
    pub semigroup: Option<SemigroupReport>,
}

impl ValidationReport {
    pub fn check(doc: &DiagramDocument) -> Self {
        let violations = structural_violations(doc);
        let cite = |kind: CheckKind| {
            Verdict::from_citations(
                violations
                    .iter()
                    .filter(|v| v.check == kind)
                    .map(|v| format!("{}: {}", v.location, v.message))
                    .collect(),
            )
        };
        let (determinant, semigroup) = if violations.is_empty() {
            let d = SpliceDiagram::assemble(doc);
            let det = Verdict::from_citations(
                d.determinant_failures()
                    .into_iter()
                    .map(|(a, b, det)| format!("edge `{a}`-`{b}`: determinant {det}"))
                    .collect(),
            );
            (Some(det), Some(check_semigroup_condition(&d)))
        } else {
            (None, None)
        };
        ValidationReport {
            document: cite(CheckKind::Document),
            tree: cite(CheckKind::Tree),
            valency: cite(CheckKind::Valency),
            positivity: cite(CheckKind::Positivity),
            coprimality: cite(CheckKind::Coprimality),
            determinant,
            semigroup,
        }
    }

    pub fn all_ok(&self) -> bool {
        self.document.ok
            && self.tree.ok
            && self.valency.ok
            && self.positivity.ok
            && self.coprimality.ok
            && self.determinant.as_ref().is_some_and(|v| v.ok)
            && self.semigroup.as_ref().is_some_and(|s| s.satisfied)
    }
}

fn edge_name(u: &str, v: &str) -> String {
    format!("edge `{u}`-`{v}`")
}

/// All violations of the structural invariants, in a fixed order:
/// document, tree, valency, positivity, coprimality.
pub(crate) fn structural_violations(doc: &DiagramDocument) -> Vec<Violation> {
    use CheckKind::*;
    let mut out = Vec::new();

    let mut index = BTreeMap::new();
    if doc.vertices.is_empty() {
        out.push(Violation::new(Document, "diagram", "no vertices"));
    }
    for (i, v) in doc.vertices.iter().enumerate() {
        if index.insert(v.id.as_str(), i).is_some() {
            out.push(Violation::new(Document, format!("vertex `{}`", v.id), "duplicate id"));
        }
    }
    for e in &doc.edges {
        for end in [&e.u, &e.v] {
            if !index.contains_key(end.as_str()) {
                out.push(Violation::new(
                    Document,
                    edge_name(&e.u, &e.v),
                    format!("unknown vertex `{end}`"),
                ));
            }
        }
    }
    let mut listed = BTreeSet::new();
    for l in &doc.leaf_order {
        match index.get(l.as_str()) {
            None => out.push(Violation::new(Document, "leaf_order", format!("unknown vertex `{l}`"))),
            Some(&i) if doc.vertices[i].kind != VertexKind::Leaf => {
                out.push(Violation::new(Document, "leaf_order", format!("`{l}` is not a leaf")))
            }
            Some(_) => {
                if !listed.insert(l.as_str()) {
                    out.push(Violation::new(Document, "leaf_order", format!("`{l}` listed twice")));
                }
            }
        }
    }
    if !doc.leaf_order.is_empty() {
        for v in doc.vertices.iter().filter(|v| v.kind == VertexKind::Leaf) {
            if !listed.contains(v.id.as_str()) {
                out.push(Violation::new(Document, "leaf_order", format!("leaf `{}` missing", v.id)));
            }
        }
    }
    if !out.is_empty() {
        return out;
    }

    let n = doc.vertices.len();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut seen_edges = BTreeSet::new();
    for e in &doc.edges {
        let (a, b) = (index[e.u.as_str()], index[e.v.as_str()]);
        if a == b {
            out.push(Violation::new(Tree, edge_name(&e.u, &e.v), "self-loop forms a cycle"));
            continue;
        }
        if !seen_edges.insert((a.min(b), a.max(b))) {
            out.push(Violation::new(Tree, edge_name(&e.u, &e.v), "repeated edge forms a cycle"));
            continue;
        }
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut reached = vec![false; n];
    if n > 0 {
        reached[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &y in &adjacency[x] {
                if !reached[y] {
                    reached[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    if let Some(i) = reached.iter().position(|r| !r) {
        out.push(Violation::new(
            Tree,
            format!("vertex `{}`", doc.vertices[i].id),
            "not connected to the rest of the diagram",
        ));
    } else if seen_edges.len() + 1 > n {
        out.push(Violation::new(Tree, "diagram", "edges form a cycle"));
    }

    let mut valency_two_seen = false;
    for (i, v) in doc.vertices.iter().enumerate() {
        let deg = adjacency[i].len();
        let loc = format!("vertex `{}`", v.id);
        match v.kind {
            VertexKind::Leaf if deg > 1 => {
                out.push(Violation::new(Valency, loc, format!("leaf has valency {deg}")))
            }
            VertexKind::Node if deg < 2 => {
                out.push(Violation::new(Valency, loc, format!("node has valency {deg}")))
            }
            VertexKind::Node if deg == 2 => {
                if !doc.enriched {
                    out.push(Violation::new(Valency, loc, "valency-2 vertex"));
                } else if valency_two_seen {
                    out.push(Violation::new(Valency, loc, "second valency-2 vertex in enriched mode"));
                }
                valency_two_seen = true;
            }
            _ => {}
        }
    }

    // decorations gathered per node for the coprimality pass
    let mut around: Vec<Vec<u64>> = vec![Vec::new(); n];
    let mut complete = vec![true; n];
    for e in &doc.edges {
        for (end, dec) in [(&e.u, e.dec_u), (&e.v, e.dec_v)] {
            let i = index[end.as_str()];
            let kind = doc.vertices[i].kind;
            let loc = format!("{} at `{end}`", edge_name(&e.u, &e.v));
            match (kind, dec) {
                (VertexKind::Node, None) => {
                    out.push(Violation::new(Positivity, loc, "missing decoration at node end"));
                    complete[i] = false;
                }
                (VertexKind::Node, Some(d)) if d <= 0 => {
                    out.push(Violation::new(Positivity, loc, format!("non-positive decoration {d}")));
                    complete[i] = false;
                }
                (VertexKind::Node, Some(d)) => around[i].push(d as u64),
                (VertexKind::Leaf, Some(_)) => {
                    out.push(Violation::new(Positivity, loc, "decoration at a leaf end"))
                }
                (VertexKind::Leaf, None) => {}
            }
        }
    }
    for (i, decs) in around.iter().enumerate() {
        if !complete[i] {
            continue;
        }
        for (k, a) in decs.iter().enumerate() {
            for b in &decs[k + 1..] {
                let g = a.gcd(b);
                if g != 1 {
                    out.push(Violation::new(
                        Coprimality,
                        format!("node `{}`", doc.vertices[i].id),
                        format!("decorations {a} and {b} share the factor {g}"),
                    ));
                }
            }
        }
    }
    out
}
