//! Edge enrichment and edge deformations of splice type systems.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::diagram::{DiagramDocument, EdgeEntry, SpliceDiagram, VertexEntry, VertexKind};
use crate::error::{Result, SpliceError};
use crate::linalg::Rat;
use crate::poly::{Polynomial, WeightVector};
use crate::polysys::{weight_idx, SpliceSystem};

/// Root decorations `(k_a, k_b)` and the scale `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedTriple {
    pub ka: u64,
    pub kb: u64,
    pub d: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriplePolicy {
    /// Simplest fraction in the interval: least `k_b`, then least `k_a`.
    MinDenominator,
    Explicit { ka: u64, kb: u64 },
}

/// Open interval `(d_a / d_{a,ab}^2, d_{b,ab}^2 / d_b)` for `k_a / k_b`.
pub fn root_interval(d: &SpliceDiagram, a: &str, b: &str) -> Result<(Rat, Rat)> {
    let (ai, bi, e) = d.internal_edge(a, b)?;
    let dae = BigInt::from(d.decoration(ai, e));
    let dbe = BigInt::from(d.decoration(bi, e));
    Ok((
        Rat::new(d.degree_idx(ai), &dae * &dae),
        Rat::new(&dbe * &dbe, d.degree_idx(bi)),
    ))
}

/// Simplest fraction strictly between `lo` and `hi` (`hi = None` is infinity),
/// by continued-fraction descent of the Stern-Brocot tree. Needs `0 <= lo < hi`.
pub fn simplest_between(lo: &Rat, hi: Option<&Rat>) -> Rat {
    let fl = lo.floor();
    let next = &fl + Rat::one();
    if hi.map_or(true, |h| &next < h) {
        return next;
    }
    let hi = hi.expect("finite upper bound here");
    // lo and hi share the integer part fl, with hi <= fl + 1
    let inner_lo = (hi - &fl).recip();
    let inner_hi = if *lo == fl { None } else { Some((lo - &fl).recip()) };
    fl + simplest_between(&inner_lo, inner_hi.as_ref()).recip()
}

fn strictly_inside(x: &Rat, (lo, hi): &(Rat, Rat)) -> bool {
    lo < x && x < hi
}

/// For every node `u`, the decoration at `u` on the first edge of the path
/// toward the edge `a`-`b`; `D` must be a multiple of each.
fn toward_root_decorations(d: &SpliceDiagram, ai: usize, bi: usize) -> Vec<(usize, u64)> {
    let side_a = d.side_of(ai, bi);
    d.nodes()
        .into_iter()
        .map(|u| {
            let (target, other) = if side_a[u] { (ai, bi) } else { (bi, ai) };
            let next = if u == target { other } else { d.path(u, target)[1] };
            let e = d.edge_between(u, next).expect("path step is an edge");
            (u, d.decoration(u, e))
        })
        .collect()
}

/// Least valid `D`: the lcm of the toward-root decorations.
pub fn minimal_scale(d: &SpliceDiagram, a: &str, b: &str) -> Result<BigInt> {
    let (ai, bi, _) = d.internal_edge(a, b)?;
    Ok(toward_root_decorations(d, ai, bi)
        .into_iter()
        .fold(BigInt::one(), |acc, (_, dec)| acc.lcm(&BigInt::from(dec))))
}

/// Chooses `(k_a, k_b)` by `policy` and `D` (the lcm unless given).
pub fn adapted_triple(d: &SpliceDiagram, a: &str, b: &str, policy: TriplePolicy, scale: Option<BigInt>) -> Result<AdaptedTriple> {
    let interval = root_interval(d, a, b)?;
    if interval.0 >= interval.1 {
        return Err(SpliceError::EmptyInterval {
            lower: interval.0.to_string(),
            upper: interval.1.to_string(),
        });
    }
    let (ka, kb) = match policy {
        TriplePolicy::MinDenominator => {
            let f = simplest_between(&interval.0, Some(&interval.1));
            let ka = f.numer().to_u64().ok_or_else(|| SpliceError::Triple("k_a too large".into()))?;
            let kb = f.denom().to_u64().ok_or_else(|| SpliceError::Triple("k_b too large".into()))?;
            (ka, kb)
        }
        TriplePolicy::Explicit { ka, kb } => (ka, kb),
    };
    let min = minimal_scale(d, a, b)?;
    let triple = AdaptedTriple {
        ka,
        kb,
        d: scale.unwrap_or(min),
    };
    check_triple(d, a, b, &triple)?;
    Ok(triple)
}

/// Checks coprimality, the strict interval condition and the divisibility of `D`.
pub fn check_triple(d: &SpliceDiagram, a: &str, b: &str, t: &AdaptedTriple) -> Result<()> {
    if t.ka == 0 || t.kb == 0 {
        return Err(SpliceError::Triple("k_a and k_b must be positive".into()));
    }
    if t.ka.gcd(&t.kb) != 1 {
        return Err(SpliceError::Triple(format!("{} and {} are not coprime", t.ka, t.kb)));
    }
    let interval = root_interval(d, a, b)?;
    if interval.0 >= interval.1 {
        return Err(SpliceError::EmptyInterval {
            lower: interval.0.to_string(),
            upper: interval.1.to_string(),
        });
    }
    let ratio = Rat::new(BigInt::from(t.ka), BigInt::from(t.kb));
    if !strictly_inside(&ratio, &interval) {
        return Err(SpliceError::Triple(format!(
            "{}/{} is not strictly between {} and {}",
            t.ka, t.kb, interval.0, interval.1
        )));
    }
    if !t.d.is_positive() {
        return Err(SpliceError::Triple("D must be positive".into()));
    }
    let (ai, bi, _) = d.internal_edge(a, b)?;
    for (u, dec) in toward_root_decorations(d, ai, bi) {
        if !t.d.is_multiple_of(&BigInt::from(dec)) {
            return Err(SpliceError::Triple(format!(
                "D = {} is not divisible by {dec}, the decoration at `{}` toward the root",
                t.d,
                d.id(u)
            )));
        }
    }
    Ok(())
}

/// A diagram with the edge `a`-`b` subdivided by a valency-2 root `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichedDiagram {
    pub base: SpliceDiagram,
    /// The subdivided diagram, in enriched mode.
    pub tilde: SpliceDiagram,
    pub a: String,
    pub b: String,
    pub root: String,
    pub triple: AdaptedTriple,
}

/// Subdivides `a`-`b` at a new root carrying `k_a` toward `a` and `k_b` toward `b`.
pub fn enrich(d: &SpliceDiagram, a: &str, b: &str, triple: &AdaptedTriple) -> Result<EnrichedDiagram> {
    check_triple(d, a, b, triple)?;
    let (ai, bi, cut) = d.internal_edge(a, b)?;
    let root = d.fresh_id("r");
    let mut doc: DiagramDocument = d.to_document();
    doc.enriched = true;
    doc.edges.remove(cut);
    doc.vertices.push(VertexEntry {
        id: root.clone(),
        kind: VertexKind::Node,
    });
    for (end, k) in [(ai, triple.ka), (bi, triple.kb)] {
        doc.edges.push(EdgeEntry {
            u: d.id(end).to_string(),
            v: root.clone(),
            dec_u: Some(d.decoration(end, cut) as i64),
            dec_v: Some(k as i64),
        });
    }
    let tilde = SpliceDiagram::new(&doc)?;
    if let Some((u, v, det)) = tilde.determinant_failures().into_iter().next() {
        return Err(SpliceError::Triple(format!("edge `{u}`-`{v}` of the enrichment has determinant {det}")));
    }
    Ok(EnrichedDiagram {
        base: d.clone(),
        tilde,
        a: a.to_string(),
        b: b.to_string(),
        root,
        triple: triple.clone(),
    })
}

impl EnrichedDiagram {
    /// `l_{r,u}` in the enriched diagram.
    pub fn root_linking(&self, u: &str) -> Result<BigInt> {
        self.tilde.linking_number(&self.root, u)
    }

    /// `D l_{r,u} / d_u`, or `D` for the root itself.
    pub fn scale_of(&self, u: &str) -> Result<BigInt> {
        let ui = self.tilde.node_index(u)?;
        if u == self.root {
            return Ok(self.triple.d.clone());
        }
        let num = &self.triple.d * self.tilde.linking_idx(self.tilde.index_of(&self.root)?, ui);
        let den = self.tilde.degree_idx(ui);
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(SpliceError::Triple(format!("D l_(r,{u}) is not divisible by d_{u}")));
        }
        Ok(q)
    }

    /// Weight vector of a node of the enriched diagram, over the base leaves.
    pub fn weight(&self, u: &str) -> Result<WeightVector> {
        Ok(weight_idx(&self.tilde, self.tilde.node_index(u)?))
    }

    /// Node ids of the base diagram lying on the side of `a`.
    pub fn on_a_side(&self, u: &str) -> Result<bool> {
        let ai = self.base.index_of(&self.a)?;
        let bi = self.base.index_of(&self.b)?;
        Ok(self.base.side_of(ai, bi)[self.base.index_of(u)?])
    }
}

/// `w0 + (D l_{r,u} / d_u) w_u`, with coordinate 0 for the deformation variable.
pub fn extended_weight_vector(ed: &EnrichedDiagram, u: &str) -> Result<WeightVector> {
    let s = ed.scale_of(u)?;
    let w = ed.weight(u)?;
    let mut out = Vec::with_capacity(w.len() + 1);
    out.push(BigInt::one());
    out.extend(w.0.iter().map(|x| x * &s));
    Ok(WeightVector(out))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformedNode {
    pub node: String,
    pub weight: WeightVector,
    /// `D l_{r,v}`: the exponent of `z0` and the weighted degree.
    pub degree: BigInt,
    pub coefficients: Vec<Rat>,
    pub equations: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformedSystem {
    pub enriched: EnrichedDiagram,
    /// `z0` first, then the leaves.
    pub variables: Vec<String>,
    pub nodes: Vec<DeformedNode>,
}

/// `F_{v,i} - c_{v,i} z0^(D l_{r,v})` for every equation; missing coefficients are 1.
pub fn edge_deformation(
    system: &SpliceSystem,
    ed: &EnrichedDiagram,
    coefficients: &BTreeMap<(String, usize), Rat>,
) -> Result<DeformedSystem> {
    let leaves: Vec<&str> = ed.base.leaf_ids();
    if system.variables.iter().map(String::as_str).ne(leaves.iter().copied()) {
        return Err(SpliceError::Document("system variables differ from the diagram's leaves".into()));
    }
    for ((node, index), c) in coefficients {
        if c.is_zero() {
            return Err(SpliceError::ZeroCoefficient {
                node: node.clone(),
                index: *index,
            });
        }
    }
    let n = leaves.len() + 1;
    let mut nodes = Vec::with_capacity(system.nodes.len());
    for ns in &system.nodes {
        let degree = &ed.triple.d * ed.root_linking(&ns.node)?;
        let power = degree.to_u64().ok_or_else(|| SpliceError::ExponentOverflow(degree.to_string()))?;
        let mut z0 = vec![0u64; n];
        z0[0] = power;
        let mut cs = Vec::with_capacity(ns.equations.len());
        let mut equations = Vec::with_capacity(ns.equations.len());
        for (i, f) in ns.equations.iter().enumerate() {
            let c = coefficients
                .get(&(ns.node.clone(), i + 1))
                .cloned()
                .unwrap_or_else(Rat::one);
            let mut g = f.prepend_variable();
            g.add_term(z0.clone(), -c.clone());
            cs.push(c);
            equations.push(g);
        }
        nodes.push(DeformedNode {
            node: ns.node.clone(),
            weight: extended_weight_vector(ed, &ns.node)?,
            degree,
            coefficients: cs,
            equations,
        });
    }
    let mut variables = vec![ed.base.fresh_id("z0")];
    variables.extend(system.variables.iter().cloned());
    Ok(DeformedSystem {
        enriched: ed.clone(),
        variables,
        nodes,
    })
}

/// An equation tagged by node id and index (from 1).
pub type TaggedEquation = (String, usize, Polynomial);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideSystems {
    pub a_side: Vec<TaggedEquation>,
    pub b_side: Vec<TaggedEquation>,
}

impl DeformedSystem {
    /// Sets `z0 = 0`, recovering the undeformed equations per node.
    pub fn restrict_to_zero(&self) -> Vec<Vec<Polynomial>> {
        self.nodes
            .iter()
            .map(|n| n.equations.iter().map(|f| f.restrict_to_zero(0)).collect())
            .collect()
    }

    /// Splits the equations by the side of `a`-`b` their node lies on.
    pub fn side_systems(&self) -> Result<SideSystems> {
        let mut sides = SideSystems {
            a_side: Vec::new(),
            b_side: Vec::new(),
        };
        for n in &self.nodes {
            let bucket = if self.enriched.on_a_side(&n.node)? {
                &mut sides.a_side
            } else {
                &mut sides.b_side
            };
            bucket.extend(n.equations.iter().enumerate().map(|(i, f)| (n.node.clone(), i + 1, f.clone())));
        }
        Ok(sides)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    pub(crate) const LARGE_TWO_NODE: &str = r#"{
        "vertices": [{"id":"a","kind":"node"},{"id":"b","kind":"node"},
            {"id":"l1","kind":"leaf"},{"id":"l2","kind":"leaf"},{"id":"l3","kind":"leaf"},
            {"id":"l4","kind":"leaf"},{"id":"l5","kind":"leaf"}],
        "edges": [{"u":"a","v":"l1","dec_u":2},{"u":"a","v":"l2","dec_u":3},
            {"u":"a","v":"b","dec_u":49,"dec_v":11},
            {"u":"b","v":"l3","dec_u":7},{"u":"b","v":"l4","dec_u":5},{"u":"b","v":"l5","dec_u":2}],
        "leaf_order": ["l1","l2","l3","l4","l5"]
    }"#;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn interval_and_triple() {
        let d = parse_diagram(LARGE_TWO_NODE).unwrap();
        assert_eq!(root_interval(&d, "a", "b").unwrap(), (r(6, 49), r(11, 70)));
        let t = adapted_triple(&d, "a", "b", TriplePolicy::MinDenominator, None).unwrap();
        assert_eq!((t.ka, t.kb, t.d), (1, 7, BigInt::from(539)));
        assert!(adapted_triple(&d, "a", "b", TriplePolicy::Explicit { ka: 1, kb: 6 }, None).is_err());
        assert!(adapted_triple(&d, "a", "b", TriplePolicy::Explicit { ka: 1, kb: 7 }, Some(BigInt::from(49))).is_err());
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_between(&r(6, 49), Some(&r(11, 70))), r(1, 7));
        assert_eq!(simplest_between(&r(1, 3), Some(&r(1, 2))), r(2, 5));
        assert_eq!(simplest_between(&r(0, 1), Some(&r(1, 1))), r(1, 2));
        assert_eq!(simplest_between(&r(3, 2), None), r(2, 1));
        assert_eq!(simplest_between(&r(2, 1), Some(&r(3, 1))), r(5, 2));
    }

    #[test]
    fn root_weights() {
        let d = parse_diagram(LARGE_TWO_NODE).unwrap();
        let t = adapted_triple(&d, "a", "b", TriplePolicy::MinDenominator, None).unwrap();
        let ed = enrich(&d, "a", "b", &t).unwrap();
        assert_eq!(ed.root_linking("a").unwrap(), BigInt::from(42));
        assert_eq!(ed.root_linking("b").unwrap(), BigInt::from(70));
        assert_eq!(ed.weight("r").unwrap(), WeightVector::from_i64(&[21, 14, 10, 14, 35]));
        assert_eq!(
            extended_weight_vector(&ed, "a").unwrap(),
            WeightVector::from_i64(&[1, 11319, 7546, 4620, 6468, 16170])
        );
        assert_eq!(
            extended_weight_vector(&ed, "r").unwrap(),
            WeightVector::from_i64(&[1, 11319, 7546, 5390, 7546, 18865])
        );
    }
}
