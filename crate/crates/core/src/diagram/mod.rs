//! Splice diagrams: decorated trees whose node-edge incidences carry
//! positive integer weights, pairwise coprime around every node.

mod io;
mod iso;
mod surgery;
mod validate;

pub use io::{parse_diagram, DiagramDocument, EdgeEntry, VertexEntry};
pub use validate::{CheckKind, Verdict, ValidationReport, Violation};

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SpliceError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Leaf,
    Node,
}

/// An edge stored with its orientation as given; decorations live at node ends only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub dec_u: Option<u64>,
    pub dec_v: Option<u64>,
}

/// One edge seen from a node, with the leaves lying beyond it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeEdge {
    pub neighbor: usize,
    pub edge: usize,
    pub decoration: u64,
    /// Positions in the leaf order, ascending.
    pub leaves: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct SpliceDiagram {
    ids: Vec<String>,
    kinds: Vec<VertexKind>,
    edges: Vec<Edge>,
    leaf_order: Vec<usize>,
    enriched: bool,
    index: BTreeMap<String, usize>,
    adjacency: Vec<Vec<(usize, usize)>>,
    leaf_pos: Vec<Option<usize>>,
}

impl PartialEq for SpliceDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids
            && self.kinds == other.kinds
            && self.edges == other.edges
            && self.leaf_order == other.leaf_order
            && self.enriched == other.enriched
    }
}

impl Eq for SpliceDiagram {}

impl SpliceDiagram {
    /// Builds a diagram from its parts, enforcing every structural invariant.
    pub fn new(document: &DiagramDocument) -> Result<Self> {
        if let Some(v) = validate::structural_violations(document).into_iter().next() {
            return Err(v.into_error());
        }
        Ok(Self::assemble(document))
    }

    /// Assumes `document` passed the structural checks.
    fn assemble(doc: &DiagramDocument) -> Self {
        let ids: Vec<String> = doc.vertices.iter().map(|v| v.id.clone()).collect();
        let kinds: Vec<VertexKind> = doc.vertices.iter().map(|v| v.kind).collect();
        let index: BTreeMap<String, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let edges: Vec<Edge> = doc
            .edges
            .iter()
            .map(|e| Edge {
                u: index[&e.u],
                v: index[&e.v],
                dec_u: e.dec_u.map(|d| d as u64),
                dec_v: e.dec_v.map(|d| d as u64),
            })
            .collect();
        let mut adjacency = vec![Vec::new(); ids.len()];
        for (k, e) in edges.iter().enumerate() {
            adjacency[e.u].push((e.v, k));
            adjacency[e.v].push((e.u, k));
        }
        let leaf_order: Vec<usize> = if doc.leaf_order.is_empty() {
            (0..ids.len()).filter(|&i| kinds[i] == VertexKind::Leaf).collect()
        } else {
            doc.leaf_order.iter().map(|l| index[l]).collect()
        };
        let mut leaf_pos = vec![None; ids.len()];
        for (p, &l) in leaf_order.iter().enumerate() {
            leaf_pos[l] = Some(p);
        }
        SpliceDiagram {
            ids,
            kinds,
            edges,
            leaf_order,
            enriched: doc.enriched,
            index,
            adjacency,
            leaf_pos,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_enriched(&self) -> bool {
        self.enriched
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| SpliceError::UnknownVertex(id.to_string()))
    }

    pub fn node_index(&self, id: &str) -> Result<usize> {
        let v = self.index_of(id)?;
        if self.is_node(v) {
            Ok(v)
        } else {
            Err(SpliceError::NotANode(id.to_string()))
        }
    }

    pub fn is_node(&self, v: usize) -> bool {
        self.kinds[v] == VertexKind::Node
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.kinds[v] == VertexKind::Leaf
    }

    pub fn valency(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency[v].iter().copied()
    }

    /// Node indices in vertex order.
    pub fn nodes(&self) -> Vec<usize> {
        (0..self.ids.len()).filter(|&v| self.is_node(v)).collect()
    }

    /// Leaf indices in the diagram's leaf order.
    pub fn leaves(&self) -> &[usize] {
        &self.leaf_order
    }

    pub fn leaf_ids(&self) -> Vec<&str> {
        self.leaf_order.iter().map(|&l| self.ids[l].as_str()).collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_order.len()
    }

    pub fn leaf_position(&self, v: usize) -> Option<usize> {
        self.leaf_pos[v]
    }

    /// Decoration at `v` on edge `e`; leaf ends count as 1.
    pub fn decoration(&self, v: usize, e: usize) -> u64 {
        let edge = &self.edges[e];
        let d = if edge.u == v { edge.dec_u } else { edge.dec_v };
        d.unwrap_or(1)
    }

    pub fn edge_between(&self, x: usize, y: usize) -> Option<usize> {
        self.adjacency[x].iter().find(|&&(n, _)| n == y).map(|&(_, e)| e)
    }

    /// Vertices of the path from `u` to `v`, both included.
    pub fn path(&self, u: usize, v: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.ids.len()];
        parent[u] = u;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &(y, _) in &self.adjacency[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![v];
        let mut x = v;
        while x != u {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        path
    }

    /// Product of the decorations at path vertices on edges leaving the path.
    fn path_product(&self, path: &[usize], skip_ends: bool) -> BigInt {
        let mut acc = BigInt::one();
        for (k, &x) in path.iter().enumerate() {
            if skip_ends && (k == 0 || k + 1 == path.len()) {
                continue;
            }
            let prev = (k > 0).then(|| path[k - 1]);
            let next = path.get(k + 1).copied();
            for &(y, e) in &self.adjacency[x] {
                if Some(y) != prev && Some(y) != next {
                    acc *= self.decoration(x, e);
                }
            }
        }
        acc
    }

    pub(crate) fn linking_idx(&self, u: usize, v: usize) -> BigInt {
        if u == v {
            return self.degree_idx(u);
        }
        self.path_product(&self.path(u, v), false)
    }

    pub(crate) fn reduced_linking_idx(&self, u: usize, v: usize) -> BigInt {
        if u == v {
            return BigInt::one();
        }
        self.path_product(&self.path(u, v), true)
    }

    pub(crate) fn degree_idx(&self, v: usize) -> BigInt {
        self.adjacency[v]
            .iter()
            .fold(BigInt::one(), |acc, &(_, e)| acc * self.decoration(v, e))
    }

    /// Product of the decorations adjacent to the path `[u, v]`; the node
    /// degree when `u == v`.
    pub fn linking_number(&self, u: &str, v: &str) -> Result<BigInt> {
        Ok(self.linking_idx(self.index_of(u)?, self.index_of(v)?))
    }

    /// Linking number with the decorations at both endpoints left out.
    pub fn reduced_linking_number(&self, u: &str, v: &str) -> Result<BigInt> {
        Ok(self.reduced_linking_idx(self.index_of(u)?, self.index_of(v)?))
    }

    pub fn node_degree(&self, v: &str) -> Result<BigInt> {
        Ok(self.degree_idx(self.index_of(v)?))
    }

    pub(crate) fn internal_edge(&self, u: &str, v: &str) -> Result<(usize, usize, usize)> {
        let (a, b) = (self.index_of(u)?, self.index_of(v)?);
        match self.edge_between(a, b) {
            Some(e) if self.is_node(a) && self.is_node(b) => Ok((a, b, e)),
            _ => Err(SpliceError::NotInternal(u.to_string(), v.to_string())),
        }
    }

    pub(crate) fn determinant_idx(&self, a: usize, b: usize, e: usize) -> BigInt {
        let ends = BigInt::from(self.decoration(a, e)) * self.decoration(b, e);
        ends - self.linking_idx(a, b)
    }

    /// `d_{u,e} d_{v,e}` minus the product of the other decorations at `u` and `v`.
    pub fn edge_determinant(&self, u: &str, v: &str) -> Result<BigInt> {
        let (a, b, e) = self.internal_edge(u, v)?;
        Ok(self.determinant_idx(a, b, e))
    }

    /// Edges joining two nodes, as `(u, v, edge index)` in edge order.
    pub fn internal_edges(&self) -> Vec<(usize, usize, usize)> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| self.is_node(e.u) && self.is_node(e.v))
            .map(|(k, e)| (e.u, e.v, k))
            .collect()
    }

    /// Internal edges with non-positive determinant.
    pub fn determinant_failures(&self) -> Vec<(String, String, BigInt)> {
        self.internal_edges()
            .into_iter()
            .map(|(a, b, e)| (a, b, self.determinant_idx(a, b, e)))
            .filter(|(_, _, det)| !det.is_positive())
            .map(|(a, b, det)| (self.ids[a].clone(), self.ids[b].clone(), det))
            .collect()
    }

    pub fn satisfies_determinant_condition(&self) -> bool {
        self.determinant_failures().is_empty()
    }

    /// Degrees of the special fibers of the Seifert piece at `v`: the
    /// decorations at `v` with ones removed, sorted.
    pub fn seifert_data(&self, v: &str) -> Result<Vec<u64>> {
        let v = self.node_index(v)?;
        let mut data: Vec<u64> = self.adjacency[v]
            .iter()
            .map(|&(_, e)| self.decoration(v, e))
            .filter(|&d| d != 1)
            .collect();
        data.sort_unstable();
        Ok(data)
    }

    /// Leaf positions seen from `v` through the edge toward `neighbor`.
    pub fn leaves_beyond(&self, v: usize, neighbor: usize) -> Vec<usize> {
        let mut seen = vec![false; self.ids.len()];
        seen[v] = true;
        seen[neighbor] = true;
        let mut stack = vec![neighbor];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            if let Some(p) = self.leaf_pos[x] {
                out.push(p);
            }
            for &(y, _) in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Edges at node `v`, ordered by the first leaf (in leaf order) beyond each.
    pub fn node_edges(&self, v: usize) -> Vec<NodeEdge> {
        let mut out: Vec<NodeEdge> = self.adjacency[v]
            .iter()
            .map(|&(n, e)| NodeEdge {
                neighbor: n,
                edge: e,
                decoration: self.decoration(v, e),
                leaves: self.leaves_beyond(v, n),
            })
            .collect();
        out.sort_by_key(|ne| ne.leaves.first().copied().unwrap_or(usize::MAX));
        out
    }

    /// `true` for vertices on `a`'s side once the edge `a`-`b` is removed.
    pub fn side_of(&self, a: usize, b: usize) -> Vec<bool> {
        let mut side = vec![false; self.ids.len()];
        side[a] = true;
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for &(y, _) in &self.adjacency[x] {
                if !side[y] && !(x == a && y == b) {
                    side[y] = true;
                    stack.push(y);
                }
            }
        }
        side
    }

}
