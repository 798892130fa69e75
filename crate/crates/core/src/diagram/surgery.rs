use std::collections::BTreeSet;

use super::{DiagramDocument, EdgeEntry, SpliceDiagram, VertexEntry, VertexKind};
use crate::error::{Result, SpliceError};

impl SpliceDiagram {
    pub(crate) fn fresh_id(&self, base: &str) -> String {
        let mut id = base.to_string();
        while self.index.contains_key(&id) {
            id.push('\'');
        }
        id
    }

    /// Cuts the internal edge `a`-`b` at an interior point. Each side keeps
    /// its near-node decoration on a new undecorated leaf, appended last in
    /// the leaf order: `r_a` on the side of `a`, `r_b` on the side of `b`.
    pub fn split_edge(&self, a: &str, b: &str) -> Result<(SpliceDiagram, SpliceDiagram)> {
        let (ai, bi, cut) = self.internal_edge(a, b)?;
        let side_a = self.side_of(ai, bi);
        let root_a = self.fresh_id(&format!("r_{a}"));
        let root_b = self.fresh_id(&format!("r_{b}"));
        let full = self.to_document();
        let build = |on_a: bool, owner: usize, root: &str| {
            let keep = |v: usize| side_a[v] == on_a;
            let mut doc = DiagramDocument {
                vertices: full
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| keep(i))
                    .map(|(_, v)| v.clone())
                    .collect(),
                edges: full
                    .edges
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != cut && keep(self.edges[k].u))
                    .map(|(_, e)| e.clone())
                    .collect(),
                leaf_order: self
                    .leaf_order
                    .iter()
                    .filter(|&&l| keep(l))
                    .map(|&l| self.ids[l].clone())
                    .collect(),
                enriched: false,
            };
            doc.vertices.push(VertexEntry {
                id: root.to_string(),
                kind: VertexKind::Leaf,
            });
            doc.edges.push(EdgeEntry {
                u: self.ids[owner].clone(),
                v: root.to_string(),
                dec_u: Some(self.decoration(owner, cut) as i64),
                dec_v: None,
            });
            doc.leaf_order.push(root.to_string());
            SpliceDiagram::new(&doc)
        };
        Ok((build(true, ai, &root_a)?, build(false, bi, &root_b)?))
    }

    /// Joins `first` and `second` by fusing the edges of the leaves `leaf1`
    /// and `leaf2` into one edge; near-node decorations are kept and the
    /// leaf orders are concatenated.
    pub fn splice(first: &SpliceDiagram, leaf1: &str, second: &SpliceDiagram, leaf2: &str) -> Result<SpliceDiagram> {
        let (l1, x1, e1) = first.leaf_edge(leaf1)?;
        let (l2, x2, e2) = second.leaf_edge(leaf2)?;
        let d1 = first.to_document();
        let d2 = second.to_document();

        let mut vertices: Vec<VertexEntry> = Vec::new();
        let mut ids = BTreeSet::new();
        for (doc, skip) in [(&d1, leaf1), (&d2, leaf2)] {
            for v in doc.vertices.iter().filter(|v| v.id != skip) {
                if !ids.insert(v.id.clone()) {
                    return Err(SpliceError::structure(format!("vertex `{}`", v.id), "present in both diagrams"));
                }
                vertices.push(v.clone());
            }
        }
        let mut edges: Vec<EdgeEntry> = d1
            .edges
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != e1)
            .map(|(_, e)| e.clone())
            .collect();
        edges.extend(d2.edges.iter().enumerate().filter(|&(k, _)| k != e2).map(|(_, e)| e.clone()));
        let end = |d: &SpliceDiagram, x: usize, e: usize| d.is_node(x).then(|| d.decoration(x, e) as i64);
        edges.push(EdgeEntry {
            u: first.ids[x1].clone(),
            v: second.ids[x2].clone(),
            dec_u: end(first, x1, e1),
            dec_v: end(second, x2, e2),
        });
        let leaf_order = d1
            .leaf_order
            .iter()
            .filter(|l| *l != &first.ids[l1])
            .chain(d2.leaf_order.iter().filter(|l| *l != &second.ids[l2]))
            .cloned()
            .collect();
        SpliceDiagram::new(&DiagramDocument {
            vertices,
            edges,
            leaf_order,
            enriched: false,
        })
    }

    /// `(leaf, its neighbor, edge)` for a leaf with exactly one edge.
    fn leaf_edge(&self, id: &str) -> Result<(usize, usize, usize)> {
        let l = self.index_of(id)?;
        if !self.is_leaf(l) || self.valency(l) != 1 {
            return Err(SpliceError::NotALeaf(id.to_string()));
        }
        let (x, e) = self.adjacency[l][0];
        Ok((l, x, e))
    }
}
