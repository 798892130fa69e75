#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use splice_core::diagram::{parse_diagram, SpliceDiagram};
use splice_core::linalg::{rat, Rat};
use splice_core::polysys::{strict_splice_system, CoefficientSource, SpliceSystem, SystemOptions};

pub fn data(name: &str) -> String {
    let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn e8() -> SpliceDiagram {
    parse_diagram(&data("e8.json")).unwrap()
}

pub fn two_node_small() -> SpliceDiagram {
    parse_diagram(&data("two_node_42_110.json")).unwrap()
}

pub fn two_node_large() -> SpliceDiagram {
    parse_diagram(&data("two_node_294_770.json")).unwrap()
}

pub fn corpus() -> Vec<SpliceDiagram> {
    vec![e8(), two_node_small(), two_node_large()]
}

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rats(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
    rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

/// System of the small two-node diagram with fixed nonzero signs.
pub fn small_system() -> SpliceSystem {
    let mut m = BTreeMap::new();
    m.insert("a".to_string(), rats(&[&[1, -1, 1]]));
    m.insert("b".to_string(), rats(&[&[1, 1, -1]]));
    strict_splice_system(
        &two_node_small(),
        &SystemOptions {
            coefficients: CoefficientSource::Explicit(m),
            ..Default::default()
        },
    )
    .unwrap()
}

/// System of the large two-node diagram with fixed reference coefficients.
pub fn large_system() -> SpliceSystem {
    let mut m = BTreeMap::new();
    m.insert("a".to_string(), rats(&[&[1, -2, 1]]));
    m.insert("b".to_string(), rats(&[&[1, 1, 1, -2155], &[33, 1, 2, -2123]]));
    strict_splice_system(
        &two_node_large(),
        &SystemOptions {
            coefficients: CoefficientSource::Explicit(m),
            ..Default::default()
        },
    )
    .unwrap()
}

/// Linking number computed straight from the document: walk the unique
/// path by depth-first search and multiply decorations of the edges that
/// leave it.
pub fn linking_oracle(d: &SpliceDiagram, u: &str, v: &str) -> BigInt {
    let doc = d.to_document();
    let mut adj: BTreeMap<&str, Vec<(&str, u64)>> = BTreeMap::new();
    for e in &doc.edges {
        adj.entry(e.u.as_str()).or_default().push((e.v.as_str(), e.dec_u.unwrap_or(1) as u64));
        adj.entry(e.v.as_str()).or_default().push((e.u.as_str(), e.dec_v.unwrap_or(1) as u64));
    }
    fn walk<'a>(adj: &BTreeMap<&'a str, Vec<(&'a str, u64)>>, at: &'a str, goal: &str, from: Option<&'a str>, path: &mut Vec<&'a str>) -> bool {
        path.push(at);
        if at == goal {
            return true;
        }
        for &(next, _) in adj.get(at).map(|v| v.as_slice()).unwrap_or(&[]) {
            if Some(next) != from && walk(adj, next, goal, Some(at), path) {
                return true;
            }
        }
        path.pop();
        false
    }
    let mut path = Vec::new();
    assert!(walk(&adj, u, v, None, &mut path));
    let mut product = BigInt::from(1);
    for (k, x) in path.iter().enumerate() {
        for &(y, dec) in adj.get(x).map(|v| v.as_slice()).unwrap_or(&[]) {
            let on_path = (k > 0 && path[k - 1] == y) || path.get(k + 1) == Some(&y);
            if !on_path {
                product *= dec;
            }
        }
    }
    product
}
