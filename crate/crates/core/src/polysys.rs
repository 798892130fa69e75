//! Splice type systems: node weight vectors, admissible monomials, the
//! Hamm condition on coefficient matrices, and initial forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::diagram::SpliceDiagram;
use crate::error::{Result, SpliceError};
use crate::linalg::{bareiss_det, clear_denominators, combinations, Rat};
use crate::poly::{Exponent, Polynomial, WeightVector};
use crate::semigroup::check_semigroup_condition;

pub(crate) fn weight_idx(d: &SpliceDiagram, v: usize) -> WeightVector {
    WeightVector(d.leaves().iter().map(|&l| d.linking_idx(v, l)).collect())
}

/// `w_v = sum over leaves of l_{v,leaf} e_leaf`, in leaf order.
pub fn node_weight_vector(d: &SpliceDiagram, v: &str) -> Result<WeightVector> {
    Ok(weight_idx(d, d.node_index(v)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HammVerdict {
    pub passed: bool,
    /// Columns of the first vanishing maximal minor, in lexicographic order.
    pub failing_columns: Option<Vec<usize>>,
}

/// Checks that every maximal minor of a `k x m` matrix (`k <= m`) is
/// non-zero. Rows are scaled to integers first, then each minor is
/// evaluated by fraction-free elimination.
pub fn hamm_check(matrix: &[Vec<Rat>]) -> Result<HammVerdict> {
    let k = matrix.len();
    let m = matrix.first().map_or(0, |r| r.len());
    if matrix.iter().any(|r| r.len() != m) {
        return Err(SpliceError::Coefficients("ragged matrix".into()));
    }
    if k > m {
        return Err(SpliceError::MatrixShape { rows: k, cols: m });
    }
    let ints: Vec<Vec<BigInt>> = matrix.iter().map(|r| clear_denominators(r)).collect();
    for cols in combinations(m, k) {
        let minor: Vec<Vec<BigInt>> = ints.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        if bareiss_det(minor).is_zero() {
            return Ok(HammVerdict {
                passed: false,
                failing_columns: Some(cols),
            });
        }
    }
    Ok(HammVerdict {
        passed: true,
        failing_columns: None,
    })
}

/// `rows x cols` matrix whose column `e` is `(t^0, t^1, ...)` with
/// `t = offset + e + 1`. Maximal minors are Vandermonde determinants.
pub fn vandermonde(rows: usize, cols: usize, offset: u64) -> Vec<Vec<Rat>> {
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|e| Rat::from_integer(BigInt::from(offset + e as u64 + 1).pow(i as u32)))
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientSource {
    /// Deterministic Vandermonde columns; the offset shifts the parameters.
    Vandermonde { offset: u64 },
    /// Per node id, an `(valency - 2) x valency` matrix with columns in the
    /// node's edge order.
    Explicit(BTreeMap<String, Vec<Vec<Rat>>>),
}

impl Default for CoefficientSource {
    fn default() -> Self {
        CoefficientSource::Vandermonde { offset: 0 }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SystemOptions {
    pub coefficients: CoefficientSource,
    /// Admissible exponent vectors keyed by `(node, neighbor toward the edge)`,
    /// replacing the lexicographically least default.
    pub exponents: BTreeMap<(String, String), Exponent>,
}

/// The equations attached to one node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSystem {
    pub node: String,
    pub weight: WeightVector,
    pub degree: BigInt,
    /// Neighbor ids, one per incident edge, in the node's edge order.
    pub edges: Vec<String>,
    /// Admissible exponent vector per edge.
    pub exponents: Vec<Exponent>,
    /// Rows are equations, columns follow `edges`.
    pub coefficients: Vec<Vec<Rat>>,
    pub equations: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceSystem {
    pub variables: Vec<String>,
    pub nodes: Vec<NodeSystem>,
}

impl SpliceSystem {
    pub fn equation_count(&self) -> usize {
        self.nodes.iter().map(|n| n.equations.len()).sum()
    }

    pub fn node(&self, id: &str) -> Option<&NodeSystem> {
        self.nodes.iter().find(|n| n.node == id)
    }

    /// `(node, index from 1, equation)` in node order.
    pub fn equations(&self) -> impl Iterator<Item = (&str, usize, &Polynomial)> {
        self.nodes
            .iter()
            .flat_map(|n| n.equations.iter().enumerate().map(move |(i, f)| (n.node.as_str(), i + 1, f)))
    }
}

fn to_exponent(coefficients: &[num_bigint::BigUint], positions: &[usize], n: usize) -> Result<Exponent> {
    let mut m = vec![0u64; n];
    for (c, &p) in coefficients.iter().zip(positions) {
        m[p] = c.to_u64().ok_or_else(|| SpliceError::ExponentOverflow(c.to_string()))?;
    }
    Ok(m)
}

fn combine(matrix: &[Vec<Rat>], exponents: &[Exponent], n: usize) -> Vec<Polynomial> {
    matrix
        .iter()
        .map(|row| {
            let mut f = Polynomial::zero(n);
            for (c, m) in row.iter().zip(exponents) {
                f.add_term(m.clone(), c.clone());
            }
            f
        })
        .collect()
}

/// Builds a strict splice type system: for each node `v` and each
/// `i < valency - 1`, `f_{v,i} = sum_e c_{v,e,i} z^{m_{v,e}}`.
pub fn strict_splice_system(d: &SpliceDiagram, options: &SystemOptions) -> Result<SpliceSystem> {
    if let Some((a, b, _)) = d.determinant_failures().into_iter().next() {
        return Err(SpliceError::DeterminantCondition(a, b));
    }
    let report = check_semigroup_condition(d);
    let n = d.leaf_count();
    let mut nodes = Vec::new();
    for v in d.nodes() {
        let node = d.id(v).to_string();
        let weight = weight_idx(d, v);
        let degree = d.degree_idx(v);
        let node_edges = d.node_edges(v);
        let delta = node_edges.len();
        let mut exponents = Vec::with_capacity(delta);
        let mut edges = Vec::with_capacity(delta);
        for ne in &node_edges {
            let toward = d.id(ne.neighbor).to_string();
            let m = match options.exponents.get(&(node.clone(), toward.clone())) {
                Some(m) => {
                    check_admissible(m, &ne.leaves, &weight, &degree, &node, &toward)?;
                    m.clone()
                }
                None => {
                    let entry = report.entry(&node, &toward).expect("one entry per node edge");
                    let witness = entry.witness.as_ref().ok_or_else(|| SpliceError::SemigroupCondition {
                        node: node.clone(),
                        toward: toward.clone(),
                    })?;
                    to_exponent(witness, &ne.leaves, n)?
                }
            };
            exponents.push(m);
            edges.push(toward);
        }
        let k = delta.saturating_sub(2);
        let coefficients = match &options.coefficients {
            CoefficientSource::Vandermonde { offset } => vandermonde(k, delta, *offset),
            CoefficientSource::Explicit(map) => {
                let m = map
                    .get(&node)
                    .ok_or_else(|| SpliceError::Coefficients(format!("no matrix for node `{node}`")))?;
                if m.len() != k || m.iter().any(|r| r.len() != delta) {
                    return Err(SpliceError::Coefficients(format!(
                        "node `{node}` needs a {k} x {delta} matrix"
                    )));
                }
                m.clone()
            }
        };
        let verdict = hamm_check(&coefficients)?;
        if let Some(columns) = verdict.failing_columns {
            return Err(SpliceError::Hamm {
                context: format!("node `{node}`"),
                columns,
            });
        }
        let equations = combine(&coefficients, &exponents, n);
        debug_assert!(equations
            .iter()
            .all(|f| f.homogeneous_degree(&weight).ok().flatten().as_ref() == Some(&degree)));
        nodes.push(NodeSystem {
            node,
            weight,
            degree,
            edges,
            exponents,
            coefficients,
            equations,
        });
    }
    Ok(SpliceSystem {
        variables: d.leaf_ids().iter().map(|s| s.to_string()).collect(),
        nodes,
    })
}

fn check_admissible(
    m: &[u64],
    allowed: &[usize],
    weight: &WeightVector,
    degree: &BigInt,
    node: &str,
    toward: &str,
) -> Result<()> {
    let ctx = format!("`{node}` toward `{toward}`");
    if m.len() != weight.len() {
        return Err(SpliceError::Exponent(format!("{ctx}: expected {} entries", weight.len())));
    }
    if m.iter().enumerate().any(|(i, &a)| a > 0 && !allowed.contains(&i)) {
        return Err(SpliceError::Exponent(format!("{ctx}: uses a leaf outside this direction")));
    }
    if &weight.dot(m) != degree {
        return Err(SpliceError::Exponent(format!("{ctx}: weighted degree differs from {degree}")));
    }
    Ok(())
}

/// The Pham-Brieskorn-Hamm system `sum_j c_{i,j} z_j^{p_j}` with one node `v`
/// and variables `z1..zn`.
pub fn bph_system(degrees: &[u64], matrix: &[Vec<Rat>]) -> Result<SpliceSystem> {
    let n = degrees.len();
    if n < 3 || matrix.len() != n - 2 || matrix.iter().any(|r| r.len() != n) {
        return Err(SpliceError::Coefficients(format!(
            "need {} x {n} coefficients for {n} exponents",
            n.saturating_sub(2)
        )));
    }
    if let Some(columns) = hamm_check(matrix)?.failing_columns {
        return Err(SpliceError::Hamm {
            context: "Pham-Brieskorn-Hamm matrix".into(),
            columns,
        });
    }
    let exponents: Vec<Exponent> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { degrees[j] } else { 0 }).collect())
        .collect();
    let degree: BigInt = degrees.iter().map(|&p| BigInt::from(p)).product();
    let weight = WeightVector(degrees.iter().map(|&p| &degree / p).collect());
    let variables: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    Ok(SpliceSystem {
        nodes: vec![NodeSystem {
            node: "v".into(),
            weight,
            degree,
            edges: variables.clone(),
            equations: combine(matrix, &exponents, n),
            exponents,
            coefficients: matrix.to_vec(),
        }],
        variables,
    })
}

pub fn initial_form(f: &Polynomial, w: &[Rat]) -> Result<Polynomial> {
    f.initial_form(w)
}

pub fn homogeneous_degree(f: &Polynomial, w: &WeightVector) -> Result<Option<BigInt>> {
    f.homogeneous_degree(w)
}

/// `true` iff every exponent `m` in the support has `w_v . m > d_v`.
pub fn validate_higher_order(g: &Polynomial, v: &str, d: &SpliceDiagram) -> Result<bool> {
    let vi = d.node_index(v)?;
    let w = weight_idx(d, vi);
    if g.nvars() != w.len() {
        return Err(SpliceError::Dimension {
            expected: w.len(),
            got: g.nvars(),
        });
    }
    let degree = d.degree_idx(vi);
    Ok(g.terms().all(|(m, _)| w.dot(m) > degree))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialSystem {
    pub forms: Vec<Polynomial>,
    /// Every initial form has at least two terms. Necessary, not sufficient,
    /// for the weight to lie in the tropicalization: it looks at the
    /// generators only, never at the whole initial ideal.
    pub generator_monomial_free: bool,
}

pub fn initial_system<'a>(equations: impl IntoIterator<Item = &'a Polynomial>, w: &[Rat]) -> Result<InitialSystem> {
    let forms = equations
        .into_iter()
        .map(|f| f.initial_form(w))
        .collect::<Result<Vec<_>>>()?;
    let generator_monomial_free = forms.iter().all(|f| f.len() >= 2);
    Ok(InitialSystem {
        forms,
        generator_monomial_free,
    })
}
