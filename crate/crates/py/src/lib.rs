//! Python module `splicetype`: diagrams, splice type systems, deformations
//! and fans. Big integers cross as Python ints; rationals as ints or
//! `"p/q"` strings.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use splice_core::linalg::Rat;
use splice_core::sysfile::parse_rational;
use splice_core::tropfan::Fan;
use splice_core::{
    adapted_triple, central_cone, check_semigroup_condition, deformation_partial_fan, dual_complex, edge_deformation,
    enrich, hamm_check as core_hamm_check, membership as core_membership, node_weight_vector, parse_diagram,
    rounding_fiber_group, stellar_subdivide, strict_splice_system, surface_trop_fan, CoefficientSource, Cone,
    EnrichedDiagram, MonoidPresentation, SpliceDiagram, SpliceError, SpliceSystem, SystemDocument, SystemOptions,
    TriplePolicy,
};

fn err(e: SpliceError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An int or a `"p/q"` string.
#[derive(FromPyObject)]
enum RatArg {
    Int(BigInt),
    Text(String),
}

impl RatArg {
    fn value(&self) -> PyResult<Rat> {
        match self {
            RatArg::Int(n) => Ok(Rat::from_integer(n.clone())),
            RatArg::Text(s) => parse_rational(s).map_err(err),
        }
    }
}

fn rat_matrix(rows: &[Vec<RatArg>]) -> PyResult<Vec<Vec<Rat>>> {
    rows.iter().map(|r| r.iter().map(RatArg::value).collect()).collect()
}

#[pyclass(name = "Diagram", module = "splicetype", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDiagram {
    inner: SpliceDiagram,
}

#[pymethods]
impl PyDiagram {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyDiagram {
            inner: parse_diagram(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    fn nodes(&self) -> Vec<String> {
        self.inner.nodes().into_iter().map(|v| self.inner.id(v).to_string()).collect()
    }

    fn leaves(&self) -> Vec<String> {
        self.inner.leaf_ids().into_iter().map(String::from).collect()
    }

    fn internal_edges(&self) -> Vec<(String, String)> {
        self.inner
            .internal_edges()
            .into_iter()
            .map(|(u, v, _)| (self.inner.id(u).to_string(), self.inner.id(v).to_string()))
            .collect()
    }

    fn linking_number(&self, u: &str, v: &str) -> PyResult<BigInt> {
        self.inner.linking_number(u, v).map_err(err)
    }

    fn node_degree(&self, v: &str) -> PyResult<BigInt> {
        self.inner.node_degree(v).map_err(err)
    }

    fn edge_determinant(&self, u: &str, v: &str) -> PyResult<BigInt> {
        self.inner.edge_determinant(u, v).map_err(err)
    }

    fn weight_vector(&self, v: &str) -> PyResult<Vec<BigInt>> {
        Ok(node_weight_vector(&self.inner, v).map_err(err)?.0)
    }

    fn seifert_data(&self, v: &str) -> PyResult<Vec<u64>> {
        self.inner.seifert_data(v).map_err(err)
    }

    fn satisfies_determinant_condition(&self) -> bool {
        self.inner.satisfies_determinant_condition()
    }

    fn satisfies_semigroup_condition(&self) -> bool {
        check_semigroup_condition(&self.inner).satisfied
    }

    /// Admissible exponent at `node` for the edge toward `toward`, over the
    /// leaves beyond it, or None.
    fn semigroup_witness(&self, node: &str, toward: &str) -> Option<Vec<BigUint>> {
        check_semigroup_condition(&self.inner).entry(node, toward).and_then(|e| e.witness.clone())
    }

    fn split_edge(&self, a: &str, b: &str) -> PyResult<(PyDiagram, PyDiagram)> {
        let (x, y) = self.inner.split_edge(a, b).map_err(err)?;
        Ok((PyDiagram { inner: x }, PyDiagram { inner: y }))
    }

    #[staticmethod]
    fn splice(first: &PyDiagram, leaf1: &str, second: &PyDiagram, leaf2: &str) -> PyResult<PyDiagram> {
        Ok(PyDiagram {
            inner: SpliceDiagram::splice(&first.inner, leaf1, &second.inner, leaf2).map_err(err)?,
        })
    }

    fn is_isomorphic(&self, other: &PyDiagram) -> bool {
        self.inner.is_isomorphic(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Diagram(nodes={}, leaves={})",
            self.inner.nodes().len(),
            self.inner.leaf_count()
        )
    }
}

#[pyclass(name = "System", module = "splicetype", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySystem {
    inner: SpliceSystem,
}

#[pymethods]
impl PySystem {
    /// Strict splice type system; `coefficients` maps node ids to matrices,
    /// otherwise Vandermonde coefficients with the given offset are used.
    #[staticmethod]
    #[pyo3(signature = (diagram, coefficients=None, offset=0))]
    fn strict(diagram: &PyDiagram, coefficients: Option<BTreeMap<String, Vec<Vec<RatArg>>>>, offset: u64) -> PyResult<Self> {
        let coefficients = match coefficients {
            None => CoefficientSource::Vandermonde { offset },
            Some(m) => CoefficientSource::Explicit(
                m.iter()
                    .map(|(k, rows)| Ok((k.clone(), rat_matrix(rows)?)))
                    .collect::<PyResult<_>>()?,
            ),
        };
        let opts = SystemOptions {
            coefficients,
            ..SystemOptions::default()
        };
        Ok(PySystem {
            inner: strict_splice_system(&diagram.inner, &opts).map_err(err)?,
        })
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.variables.clone()
    }

    /// `(node, index, text)` for every equation, index from 1.
    fn equations(&self) -> Vec<(String, usize, String)> {
        self.inner.equations().map(|(n, i, f)| (n.to_string(), i, f.to_string())).collect()
    }

    fn to_json(&self) -> String {
        SystemDocument::from_system(&self.inner).to_json()
    }

    fn __len__(&self) -> usize {
        self.inner.equation_count()
    }
}

#[pyclass(name = "Enrichment", module = "splicetype", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyEnrichment {
    inner: EnrichedDiagram,
}

#[pymethods]
impl PyEnrichment {
    /// Enrich the edge `a`-`b`; without `ka`/`kb` the simplest root
    /// decorations are chosen, without `scale` the least valid one.
    #[new]
    #[pyo3(signature = (diagram, a, b, ka=None, kb=None, scale=None))]
    fn new(diagram: &PyDiagram, a: &str, b: &str, ka: Option<u64>, kb: Option<u64>, scale: Option<BigInt>) -> PyResult<Self> {
        let policy = match (ka, kb) {
            (Some(ka), Some(kb)) => TriplePolicy::Explicit { ka, kb },
            (None, None) => TriplePolicy::MinDenominator,
            _ => return Err(PyValueError::new_err("give both ka and kb or neither")),
        };
        let t = adapted_triple(&diagram.inner, a, b, policy, scale).map_err(err)?;
        Ok(PyEnrichment {
            inner: enrich(&diagram.inner, a, b, &t).map_err(err)?,
        })
    }

    #[getter]
    fn triple(&self) -> (u64, u64, BigInt) {
        let t = &self.inner.triple;
        (t.ka, t.kb, t.d.clone())
    }

    #[getter]
    fn root(&self) -> String {
        self.inner.root.clone()
    }

    fn diagram(&self) -> PyDiagram {
        PyDiagram {
            inner: self.inner.tilde.clone(),
        }
    }

    fn root_linking(&self, u: &str) -> PyResult<BigInt> {
        self.inner.root_linking(u).map_err(err)
    }

    fn extended_weight(&self, u: &str) -> PyResult<Vec<BigInt>> {
        Ok(splice_core::extended_weight_vector(&self.inner, u).map_err(err)?.0)
    }

    /// Deformed system as JSON; `c` maps `(node, index)` to coefficients.
    #[pyo3(signature = (system, c=None))]
    fn deform(&self, system: &PySystem, c: Option<BTreeMap<(String, usize), RatArg>>) -> PyResult<String> {
        let c = c
            .unwrap_or_default()
            .iter()
            .map(|(k, v)| Ok((k.clone(), v.value()?)))
            .collect::<PyResult<BTreeMap<_, _>>>()?;
        let def = edge_deformation(&system.inner, &self.inner, &c).map_err(err)?;
        Ok(SystemDocument::from_deformed(&def).to_json())
    }

    fn partial_fan(&self) -> PyResult<String> {
        Ok(deformation_partial_fan(&self.inner).map_err(err)?.to_json())
    }

    /// `(rank, extreme flags, non-simplicial)` of the central cone.
    fn central_cone(&self) -> PyResult<(usize, Vec<bool>, bool)> {
        let (_, r) = central_cone(&self.inner).map_err(err)?;
        Ok((r.rank, r.extreme, r.non_simplicial))
    }

    /// Edges of the dual complex.
    fn dual_complex(&self) -> PyResult<Vec<(String, String)>> {
        Ok(dual_complex(&self.inner).map_err(err)?.edges)
    }
}

/// Lexicographically least representation of `target`, or None.
#[pyfunction]
fn membership(target: BigUint, generators: Vec<BigUint>) -> PyResult<Option<Vec<BigUint>>> {
    Ok(core_membership(&target, &generators).map_err(err)?.map(|r| r.coefficients))
}

/// Whether every maximal minor is non-zero.
#[pyfunction]
fn hamm_check(matrix: Vec<Vec<RatArg>>) -> PyResult<bool> {
    Ok(core_hamm_check(&rat_matrix(&matrix)?).map_err(err)?.passed)
}

#[pyfunction]
fn surface_fan(diagram: &PyDiagram) -> PyResult<String> {
    Ok(surface_trop_fan(&diagram.inner).map_err(err)?.to_json())
}

#[pyfunction]
fn cone_contains(generators: Vec<Vec<BigInt>>, point: Vec<RatArg>) -> PyResult<bool> {
    let dim = point.len();
    let x: Vec<Rat> = point.iter().map(RatArg::value).collect::<PyResult<_>>()?;
    Cone::new(dim, &generators).and_then(|c| c.contains(&x)).map_err(err)
}

/// Stellar subdivision of a fan given as JSON.
#[pyfunction]
fn subdivide(fan_json: &str, ray: Vec<BigInt>) -> PyResult<String> {
    let f = Fan::from_json(fan_json).map_err(err)?;
    Ok(stellar_subdivide(&f, &ray).map_err(err)?.to_json())
}

/// `(rank, torsion, components)` of the group with `generators` generators
/// and the given relation rows.
#[pyfunction]
#[pyo3(signature = (generators, relations=Vec::new()))]
fn rounding_fiber(generators: usize, relations: Vec<Vec<BigInt>>) -> PyResult<(usize, Vec<BigInt>, BigInt)> {
    let r = rounding_fiber_group(&MonoidPresentation { generators, relations }).map_err(err)?;
    Ok((r.rank, r.torsion, r.components))
}

#[pymodule]
fn splicetype(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiagram>()?;
    m.add_class::<PySystem>()?;
    m.add_class::<PyEnrichment>()?;
    m.add_function(wrap_pyfunction!(membership, m)?)?;
    m.add_function(wrap_pyfunction!(hamm_check, m)?)?;
    m.add_function(wrap_pyfunction!(surface_fan, m)?)?;
    m.add_function(wrap_pyfunction!(cone_contains, m)?)?;
    m.add_function(wrap_pyfunction!(subdivide, m)?)?;
    m.add_function(wrap_pyfunction!(rounding_fiber, m)?)?;
    Ok(())
}
