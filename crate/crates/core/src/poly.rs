//! Sparse polynomials with exact rational coefficients and integer weight vectors.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SpliceError};
use crate::linalg::Rat;

pub type Exponent = Vec<u64>;

/// Integer weight vector, paired with exponent vectors by the dot product.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeightVector(
    #[serde(serialize_with = "crate::num_str::display_vec", deserialize_with = "crate::num_str::parse_vec")]
    pub Vec<BigInt>,
);

impl WeightVector {
    pub fn from_i64(v: &[i64]) -> Self {
        WeightVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dot(&self, m: &[u64]) -> BigInt {
        self.0.iter().zip(m).map(|(w, &e)| w * e).sum()
    }

    pub fn to_rational(&self) -> Vec<Rat> {
        self.0.iter().cloned().map(Rat::from_integer).collect()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|x| x.is_positive())
    }

    pub fn scaled(&self, s: &BigInt) -> Self {
        WeightVector(self.0.iter().map(|x| x * s).collect())
    }
}

impl std::fmt::Display for WeightVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn rat_dot(w: &[Rat], m: &[u64]) -> Rat {
    w.iter().zip(m).fold(Rat::zero(), |acc, (x, &e)| acc + x * Rat::from_integer(BigInt::from(e)))
}

/// No zero coefficient is ever stored; all exponents have length `nvars`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, Rat>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exponent: Exponent, coefficient: Rat) -> Self {
        let mut p = Polynomial::zero(exponent.len());
        p.add_term(exponent, coefficient);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rat)>) -> Result<Self> {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(SpliceError::Dimension {
                    expected: nvars,
                    got: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &[u64]) -> Rat {
        self.terms.get(exponent).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, exponent: Exponent, coefficient: Rat) {
        debug_assert_eq!(exponent.len(), self.nvars);
        let slot = self.terms.entry(exponent).or_insert_with(Rat::zero);
        *slot += coefficient;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    fn same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(SpliceError::Dimension {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn product(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rat) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    fn check_weight(&self, len: usize) -> Result<()> {
        if len != self.nvars {
            return Err(SpliceError::Dimension {
                expected: self.nvars,
                got: len,
            });
        }
        Ok(())
    }

    /// Least weight `w . m` over the support; `None` for the zero polynomial.
    pub fn min_weight(&self, w: &[Rat]) -> Result<Option<Rat>> {
        self.check_weight(w.len())?;
        Ok(self.terms.keys().map(|m| rat_dot(w, m)).min())
    }

    /// Sum of the terms of least `w`-weight.
    pub fn initial_form(&self, w: &[Rat]) -> Result<Polynomial> {
        let Some(min) = self.min_weight(w)? else {
            return Ok(self.clone());
        };
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| rat_dot(w, m) == min)
            .map(|(m, c)| (m.clone(), c.clone()));
        Polynomial::from_terms(self.nvars, terms)
    }

    /// The common weight of all terms, if there is one.
    pub fn homogeneous_degree(&self, w: &WeightVector) -> Result<Option<BigInt>> {
        self.check_weight(w.len())?;
        let mut degrees = self.terms.keys().map(|m| w.dot(m));
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        Ok(degrees.all(|d| d == first).then_some(first))
    }

    /// Inserts a new variable at index 0 that no term uses.
    pub fn prepend_variable(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars + 1);
        for (e, c) in &self.terms {
            let mut ext = Vec::with_capacity(e.len() + 1);
            ext.push(0);
            ext.extend_from_slice(e);
            out.add_term(ext, c.clone());
        }
        out
    }

    /// Sets variable `var` to zero and drops it from the ring.
    pub fn restrict_to_zero(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars - 1);
        for (e, c) in self.terms.iter().filter(|(e, _)| e[var] == 0) {
            let mut short = e.clone();
            short.remove(var);
            out.add_term(short, c.clone());
        }
        out
    }

    /// Renders with the given variable names, highest exponent first.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    let name = names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
                    if p == 1 {
                        name
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            if vars.is_empty() || !mag.is_one() {
                let _ = write!(out, "{mag}");
                if !vars.is_empty() {
                    out.push('*');
                }
            }
            out.push_str(&vars.join("*"));
        }
        out
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("z{i}")).collect();
        f.write_str(&self.format_with(&names))
    }
}
