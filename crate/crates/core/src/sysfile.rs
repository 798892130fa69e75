//! JSON form of splice type systems and their deformations. Integers and
//! rationals are written as decimal strings.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::deform::DeformedSystem;
use crate::error::{Result, SpliceError};
use crate::linalg::Rat;
use crate::poly::{Exponent, Polynomial, WeightVector};
use crate::polysys::SpliceSystem;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDocument {
    pub exp: Exponent,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDocument {
    pub node: String,
    pub weight: WeightVector,
    pub degree: String,
    /// One admissible exponent vector per edge at the node.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monomials: Option<Vec<Exponent>>,
    /// Rows are equations, entries are rationals such as `"-3/2"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Vec<String>>>,
    pub equations: Vec<Vec<TermDocument>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationDocument {
    pub edge: [String; 2],
    pub root: String,
    pub ka: u64,
    pub kb: u64,
    #[serde(rename = "D")]
    pub d: String,
    /// Deformation coefficients per node, one per equation.
    pub c: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub variables: Vec<String>,
    pub nodes: Vec<NodeDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<DeformationDocument>,
}

fn terms_of(f: &Polynomial) -> Vec<TermDocument> {
    f.terms()
        .rev()
        .map(|(e, c)| TermDocument {
            exp: e.clone(),
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        })
        .collect()
}

fn strings(row: &[Rat]) -> Vec<String> {
    row.iter().map(|c| c.to_string()).collect()
}

pub fn parse_rational(s: &str) -> Result<Rat> {
    let bad = || SpliceError::Document(format!("`{s}` is not a rational number"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = BigInt::from_str(den).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

impl SystemDocument {
    pub fn from_system(s: &SpliceSystem) -> Self {
        SystemDocument {
            variables: s.variables.clone(),
            nodes: s
                .nodes
                .iter()
                .map(|n| NodeDocument {
                    node: n.node.clone(),
                    weight: n.weight.clone(),
                    degree: n.degree.to_string(),
                    monomials: Some(n.exponents.clone()),
                    coefficients: Some(n.coefficients.iter().map(|r| strings(r)).collect()),
                    equations: n.equations.iter().map(terms_of).collect(),
                })
                .collect(),
            deformation: None,
        }
    }

    /// Variables start with the deformation variable; weights are extended.
    pub fn from_deformed(s: &DeformedSystem) -> Self {
        let ed = &s.enriched;
        SystemDocument {
            variables: s.variables.clone(),
            nodes: s
                .nodes
                .iter()
                .map(|n| NodeDocument {
                    node: n.node.clone(),
                    weight: n.weight.clone(),
                    degree: n.degree.to_string(),
                    monomials: None,
                    coefficients: None,
                    equations: n.equations.iter().map(terms_of).collect(),
                })
                .collect(),
            deformation: Some(DeformationDocument {
                edge: [ed.a.clone(), ed.b.clone()],
                root: ed.root.clone(),
                ka: ed.triple.ka,
                kb: ed.triple.kb,
                d: ed.triple.d.to_string(),
                c: s.nodes.iter().map(|n| (n.node.clone(), strings(&n.coefficients))).collect(),
            }),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SystemDocument = serde_json::from_str(text).map_err(|e| SpliceError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        doc.check()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("system serializes")
    }

    fn check(&self) -> Result<()> {
        let n = self.variables.len();
        for node in &self.nodes {
            if node.weight.len() != n {
                return Err(SpliceError::Dimension {
                    expected: n,
                    got: node.weight.len(),
                });
            }
            BigInt::from_str(&node.degree)
                .map_err(|_| SpliceError::Document(format!("degree of `{}` is not an integer", node.node)))?;
            for m in node.monomials.iter().flatten() {
                if m.len() != n {
                    return Err(SpliceError::Dimension { expected: n, got: m.len() });
                }
            }
            self.polynomials(node)?;
            self.coefficient_matrix(node)?;
        }
        Ok(())
    }

    pub fn polynomials(&self, node: &NodeDocument) -> Result<Vec<Polynomial>> {
        let n = self.variables.len();
        node.equations
            .iter()
            .map(|terms| {
                let parsed = terms
                    .iter()
                    .map(|t| Ok((t.exp.clone(), parse_rational(&format!("{}/{}", t.num, t.den))?)))
                    .collect::<Result<Vec<_>>>()?;
                Polynomial::from_terms(n, parsed)
            })
            .collect()
    }

    pub fn coefficient_matrix(&self, node: &NodeDocument) -> Result<Option<Vec<Vec<Rat>>>> {
        node.coefficients
            .as_ref()
            .map(|rows| rows.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect()).collect())
            .transpose()
    }

    pub fn degree(&self, node: &NodeDocument) -> BigInt {
        BigInt::from_str(&node.degree).expect("checked on load")
    }

    /// Every equation with its node id and index from 1.
    pub fn all_equations(&self) -> Result<Vec<(String, usize, Polynomial)>> {
        let mut out = Vec::new();
        for node in &self.nodes {
            for (i, f) in self.polynomials(node)?.into_iter().enumerate() {
                out.push((node.node.clone(), i + 1, f));
            }
        }
        Ok(out)
    }
}
