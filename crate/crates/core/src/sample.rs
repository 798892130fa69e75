//! Seeded random splice diagrams satisfying the determinant and semigroup
//! conditions, for property tests and benchmarks.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{DiagramDocument, EdgeEntry, SpliceDiagram, VertexEntry, VertexKind};
use crate::semigroup::check_semigroup_condition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleOptions {
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub max_leaves: usize,
    /// Largest decoration on an edge to a leaf.
    pub max_leaf_decoration: u64,
    /// Largest decoration on an edge between nodes.
    pub max_edge_decoration: u64,
    pub max_attempts: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            min_nodes: 1,
            max_nodes: 3,
            max_leaves: 8,
            max_leaf_decoration: 13,
            max_edge_decoration: 60,
            max_attempts: 100_000,
        }
    }
}

fn pairwise_coprime(xs: &[u64]) -> bool {
    xs.iter()
        .enumerate()
        .all(|(i, a)| xs[i + 1..].iter().all(|b| a.gcd(b) == 1))
}

/// One candidate tree; may violate the determinant or semigroup condition.
fn candidate(rng: &mut ChaCha8Rng, opts: &SampleOptions) -> Option<DiagramDocument> {
    let k = rng.gen_range(opts.min_nodes..=opts.max_nodes);
    let parents: Vec<usize> = (1..k).map(|i| rng.gen_range(0..i)).collect();
    let mut node_degree = vec![0usize; k];
    for (i, &p) in parents.iter().enumerate() {
        node_degree[i + 1] += 1;
        node_degree[p] += 1;
    }
    let mut leaves: Vec<usize> = node_degree.iter().map(|&t| 3usize.saturating_sub(t)).collect();
    let minimum: usize = leaves.iter().sum();
    if minimum > opts.max_leaves {
        return None;
    }
    let target = rng.gen_range(minimum..=opts.max_leaves);
    for _ in minimum..target {
        let i = rng.gen_range(0..k);
        leaves[i] += 1;
    }

    // incident edge slots per node: (other end, is_leaf)
    let mut vertices: Vec<VertexEntry> = (0..k)
        .map(|i| VertexEntry {
            id: format!("n{}", i + 1),
            kind: VertexKind::Node,
        })
        .collect();
    let mut edges: Vec<EdgeEntry> = parents
        .iter()
        .enumerate()
        .map(|(i, &p)| EdgeEntry {
            u: format!("n{}", p + 1),
            v: format!("n{}", i + 2),
            dec_u: None,
            dec_v: None,
        })
        .collect();
    let mut leaf_ids = Vec::new();
    for (i, &count) in leaves.iter().enumerate() {
        for _ in 0..count {
            let id = format!("l{}", leaf_ids.len() + 1);
            vertices.push(VertexEntry {
                id: id.clone(),
                kind: VertexKind::Leaf,
            });
            edges.push(EdgeEntry {
                u: format!("n{}", i + 1),
                v: id.clone(),
                dec_u: None,
                dec_v: None,
            });
            leaf_ids.push(id);
        }
    }

    for i in 0..k {
        let name = format!("n{}", i + 1);
        let slots: Vec<(usize, bool)> = edges
            .iter()
            .enumerate()
            .filter_map(|(j, e)| {
                if e.u == name {
                    Some((j, e.v.starts_with('l')))
                } else if e.v == name {
                    Some((j, false))
                } else {
                    None
                }
            })
            .collect();
        let mut decs = Vec::new();
        for _ in 0..100 {
            decs = slots
                .iter()
                .map(|&(_, leaf)| {
                    let max = if leaf { opts.max_leaf_decoration } else { opts.max_edge_decoration };
                    rng.gen_range(1..=max)
                })
                .collect();
            if pairwise_coprime(&decs) {
                break;
            }
        }
        if !pairwise_coprime(&decs) {
            return None;
        }
        for (&(j, _), &d) in slots.iter().zip(&decs) {
            if edges[j].u == name {
                edges[j].dec_u = Some(d as i64);
            } else {
                edges[j].dec_v = Some(d as i64);
            }
        }
    }
    leaf_ids.shuffle(rng);
    Some(DiagramDocument {
        vertices,
        edges,
        leaf_order: leaf_ids,
        enriched: false,
    })
}

/// A diagram satisfying every structural invariant plus the determinant and
/// semigroup conditions, or `None` after `max_attempts` rejections.
pub fn random_diagram(rng: &mut ChaCha8Rng, opts: &SampleOptions) -> Option<SpliceDiagram> {
    for _ in 0..opts.max_attempts {
        let Some(doc) = candidate(rng, opts) else { continue };
        let Ok(d) = SpliceDiagram::new(&doc) else { continue };
        if d.satisfies_determinant_condition() && check_semigroup_condition(&d).satisfied {
            return Some(d);
        }
    }
    None
}

/// `count` diagrams from a fixed seed.
pub fn random_diagrams(seed: u64, count: usize, opts: &SampleOptions) -> Vec<SpliceDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_diagram(&mut rng, opts).expect("sampler found a valid diagram"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_valid_and_reproducible() {
        let opts = SampleOptions {
            min_nodes: 2,
            ..SampleOptions::default()
        };
        let a = random_diagrams(7, 10, &opts);
        let b = random_diagrams(7, 10, &opts);
        assert_eq!(a, b);
        for d in &a {
            assert!(d.nodes().len() >= 2);
            assert!(d.leaf_count() <= 8);
            assert!(d.satisfies_determinant_condition());
        }
    }
}
