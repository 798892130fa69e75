//! Rational polyhedral cones and fans over the weight lattice, the explicit
//! tropical fans of splice type surfaces and their edge deformations, and
//! rounding-fiber groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::deform::{extended_weight_vector, EnrichedDiagram};
use crate::diagram::SpliceDiagram;
use crate::error::{Result, SpliceError};
use crate::linalg::{combinations, nullspace, primitive, rank, rref, solve_in_span, to_rat_vec, Rat};
use crate::polysys::weight_idx;
use crate::semigroup::check_semigroup_condition;
use crate::snf::smith_normal_form;

fn rat_rows(gens: &[Vec<BigInt>]) -> Vec<Vec<Rat>> {
    gens.iter().map(|g| to_rat_vec(g)).collect()
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Whether `x` is a non-negative combination of `gens`. By Caratheodory it
/// suffices to try the bases of their span drawn from `gens`.
fn contains_in(gens: &[Vec<Rat>], x: &[Rat]) -> bool {
    if x.iter().all(Zero::is_zero) {
        return true;
    }
    let r = rank(gens);
    if r == 0 {
        return false;
    }
    let mut with_x = gens.to_vec();
    with_x.push(x.to_vec());
    if rank(&with_x) > r {
        return false;
    }
    combinations(gens.len(), r).any(|subset| {
        let basis: Vec<Vec<Rat>> = subset.iter().map(|&i| gens[i].clone()).collect();
        rank(&basis) == r
            && solve_in_span(&basis, x).is_some_and(|c| c.iter().all(|t| !t.is_negative()))
    })
}

/// Generator index sets of the facets of the cone spanned by `gens`.
fn facets_of(gens: &[Vec<Rat>]) -> Vec<Vec<usize>> {
    let k = rank(gens);
    if k == 0 {
        return Vec::new();
    }
    let mut span = gens.to_vec();
    let pivots = rref(&mut span);
    span.truncate(pivots.len());
    let mut out = BTreeSet::new();
    for subset in combinations(gens.len(), k - 1) {
        let chosen: Vec<Vec<Rat>> = subset.iter().map(|&i| gens[i].clone()).collect();
        if rank(&chosen) != k - 1 {
            continue;
        }
        // functional u in the span vanishing on the chosen generators
        let m: Vec<Vec<Rat>> = chosen.iter().map(|g| span.iter().map(|b| dot(b, g)).collect()).collect();
        let Some(beta) = nullspace(&m, k).into_iter().next() else { continue };
        let dim = gens[0].len();
        let u: Vec<Rat> = (0..dim)
            .map(|c| span.iter().zip(&beta).fold(Rat::zero(), |acc, (b, t)| acc + &b[c] * t))
            .collect();
        let values: Vec<Rat> = gens.iter().map(|g| dot(&u, g)).collect();
        let nonneg = values.iter().all(|v| !v.is_negative());
        let nonpos = values.iter().all(|v| !v.is_positive());
        if !(nonneg || nonpos) {
            continue;
        }
        let facet: Vec<usize> = (0..gens.len()).filter(|&i| values[i].is_zero()).collect();
        let facet_gens: Vec<Vec<Rat>> = facet.iter().map(|&i| gens[i].clone()).collect();
        if facet.len() < gens.len() && rank(&facet_gens) == k - 1 {
            out.insert(facet);
        }
    }
    out.into_iter().collect()
}

/// All faces, as generator index sets, including the cone itself.
fn faces_of(gens: &[Vec<Rat>]) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    let mut stack = vec![(0..gens.len()).collect::<Vec<usize>>()];
    while let Some(face) = stack.pop() {
        if !out.insert(face.clone()) {
            continue;
        }
        let sub: Vec<Vec<Rat>> = face.iter().map(|&i| gens[i].clone()).collect();
        for f in facets_of(&sub) {
            stack.push(f.iter().map(|&i| face[i]).collect());
        }
    }
    let mut v: Vec<Vec<usize>> = out.into_iter().collect();
    v.sort_by_key(|f| (f.len(), f.clone()));
    v
}

fn checked_primitive(dim: usize, g: &[BigInt]) -> Result<Vec<BigInt>> {
    if g.len() != dim {
        return Err(SpliceError::Dimension {
            expected: dim,
            got: g.len(),
        });
    }
    if g.iter().all(Zero::is_zero) {
        return Err(SpliceError::ZeroRay);
    }
    Ok(primitive(g))
}

/// Cone spanned by primitive integer generators, none redundant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    generators: Vec<Vec<BigInt>>,
}

impl Cone {
    /// Primitivizes, drops duplicates and generators inside the cone of the rest.
    pub fn new(dim: usize, generators: &[Vec<BigInt>]) -> Result<Cone> {
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        for g in generators {
            let p = checked_primitive(dim, g)?;
            if !gens.contains(&p) {
                gens.push(p);
            }
        }
        let mut i = 0;
        while i < gens.len() {
            let rest: Vec<Vec<BigInt>> = gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
            if contains_in(&rat_rows(&rest), &to_rat_vec(&gens[i])) {
                gens.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(Cone { dim, generators: gens })
    }

    pub fn zero(dim: usize) -> Cone {
        Cone {
            dim,
            generators: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        rank(&rat_rows(&self.generators))
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(SpliceError::Dimension {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(contains_in(&rat_rows(&self.generators), x))
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        facets_of(&rat_rows(&self.generators))
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        faces_of(&rat_rows(&self.generators))
    }
}

pub fn cone_contains(c: &Cone, x: &[Rat]) -> Result<bool> {
    c.contains(x)
}

/// Rays with cones given as ray index sets. Only maximal cones are listed;
/// their faces belong to the fan implicitly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fan {
    pub dim: usize,
    #[serde(serialize_with = "crate::num_str::display_matrix", deserialize_with = "crate::num_str::parse_matrix")]
    pub rays: Vec<Vec<BigInt>>,
    pub cones: Vec<Vec<usize>>,
    pub partial: bool,
    /// Optional names for the rays, e.g. the vertex each ray comes from.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

impl Fan {
    /// Checks dimensions, primitivity and indices; sorts each cone.
    pub fn new(dim: usize, rays: Vec<Vec<BigInt>>, cones: Vec<Vec<usize>>, partial: bool, labels: Vec<String>) -> Result<Fan> {
        let rays = rays.iter().map(|r| checked_primitive(dim, r)).collect::<Result<Vec<_>>>()?;
        if !labels.is_empty() && labels.len() != rays.len() {
            return Err(SpliceError::Document("one label per ray expected".into()));
        }
        let mut sorted = Vec::with_capacity(cones.len());
        for c in cones {
            let set: BTreeSet<usize> = c.into_iter().collect();
            if let Some(&bad) = set.iter().find(|&&i| i >= rays.len()) {
                return Err(SpliceError::Document(format!("cone refers to missing ray {bad}")));
            }
            sorted.push(set.into_iter().collect());
        }
        Ok(Fan {
            dim,
            rays,
            cones: sorted,
            partial,
            labels,
        })
    }

    pub fn from_json(text: &str) -> Result<Fan> {
        let raw: Fan = serde_json::from_str(text).map_err(|e| SpliceError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Fan::new(raw.dim, raw.rays, raw.cones, raw.partial, raw.labels)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fan serializes")
    }

    fn cone_gens(&self, c: &[usize]) -> Vec<Vec<Rat>> {
        c.iter().map(|&i| to_rat_vec(&self.rays[i])).collect()
    }

    pub fn cone(&self, index: usize) -> Result<Cone> {
        let c = self.cones.get(index).ok_or(SpliceError::ConeIndex(index))?;
        Ok(Cone {
            dim: self.dim,
            generators: c.iter().map(|&i| self.rays[i].clone()).collect(),
        })
    }

    /// Membership in the union of the listed cones.
    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(SpliceError::Dimension {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.cones.iter().any(|c| contains_in(&self.cone_gens(c), x)))
    }

    /// Every face of every listed cone, as sorted ray index sets.
    pub fn all_cones(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for c in &self.cones {
            for f in faces_of(&self.cone_gens(c)) {
                out.insert(f.iter().map(|&i| c[i]).collect());
            }
        }
        out
    }

    /// Two-dimensional cones of the fan, faces included.
    pub fn two_cones(&self) -> Vec<(usize, usize)> {
        self.all_cones()
            .into_iter()
            .filter(|c| c.len() == 2 && rank(&self.cone_gens(c)) == 2)
            .map(|c| (c[0], c[1]))
            .collect()
    }

    pub fn label(&self, i: usize) -> String {
        self.labels.get(i).cloned().unwrap_or_else(|| format!("ray{i}"))
    }
}

/// Rays `e_leaf` for the leaves and `w_v` for the nodes; one 2-cone per edge.
pub fn surface_trop_fan(d: &SpliceDiagram) -> Result<Fan> {
    if let Some((a, b, _)) = d.determinant_failures().into_iter().next() {
        return Err(SpliceError::DeterminantCondition(a, b));
    }
    let report = check_semigroup_condition(d);
    if let Some(e) = report.entries.iter().find(|e| !e.satisfied()) {
        return Err(SpliceError::SemigroupCondition {
            node: e.node.clone(),
            toward: e.toward.clone(),
        });
    }
    let n = d.leaf_count();
    let mut rays = Vec::new();
    let mut labels = Vec::new();
    let mut ray_of = BTreeMap::new();
    for (p, &l) in d.leaves().iter().enumerate() {
        let mut e = vec![BigInt::zero(); n];
        e[p] = BigInt::one();
        ray_of.insert(l, rays.len());
        rays.push(e);
        labels.push(d.id(l).to_string());
    }
    for v in d.nodes() {
        ray_of.insert(v, rays.len());
        rays.push(weight_idx(d, v).0);
        labels.push(d.id(v).to_string());
    }
    let cones: Vec<Vec<usize>> = if d.edges().is_empty() {
        (0..rays.len()).map(|i| vec![i]).collect()
    } else {
        d.edges().iter().map(|e| vec![ray_of[&e.u], ray_of[&e.v]]).collect()
    };
    Fan::new(n, rays, cones, false, labels)
}

fn deformation_rays(ed: &EnrichedDiagram) -> Result<(Vec<Vec<BigInt>>, Vec<String>, BTreeMap<usize, usize>)> {
    let t = &ed.tilde;
    let n = t.leaf_count() + 1;
    let mut rays = Vec::new();
    let mut labels = Vec::new();
    let mut ray_of = BTreeMap::new();
    let mut e0 = vec![BigInt::zero(); n];
    e0[0] = BigInt::one();
    rays.push(e0);
    labels.push("e0".to_string());
    for (p, &l) in t.leaves().iter().enumerate() {
        let mut e = vec![BigInt::zero(); n];
        e[p + 1] = BigInt::one();
        ray_of.insert(l, rays.len());
        rays.push(e);
        labels.push(t.id(l).to_string());
    }
    for u in t.nodes() {
        ray_of.insert(u, rays.len());
        rays.push(primitive(&extended_weight_vector(ed, t.id(u))?.0));
        labels.push(t.id(u).to_string());
    }
    Ok((rays, labels, ray_of))
}

/// `e0`, the leaf rays, and the extended weight vector of every node of the
/// enriched diagram, primitivized.
pub fn deformation_trop_rays(ed: &EnrichedDiagram) -> Result<Vec<Vec<BigInt>>> {
    Ok(deformation_rays(ed)?.0)
}

/// The documented part of the deformation fan, flagged partial: the central
/// cone, one 2-cone per edge of the enriched diagram away from the root,
/// and `{e0, w_u}` for each node other than `a`, `b` and the root.
pub fn deformation_partial_fan(ed: &EnrichedDiagram) -> Result<Fan> {
    let (rays, labels, ray_of) = deformation_rays(ed)?;
    let t = &ed.tilde;
    let (a, b, r) = (t.index_of(&ed.a)?, t.index_of(&ed.b)?, t.index_of(&ed.root)?);
    let mut cones = vec![vec![0, ray_of[&a], ray_of[&b], ray_of[&r]]];
    for e in t.edges() {
        if e.u == r || e.v == r {
            continue;
        }
        cones.push(vec![ray_of[&e.u], ray_of[&e.v]]);
    }
    for u in t.nodes() {
        if u != a && u != b && u != r {
            cones.push(vec![0, ray_of[&u]]);
        }
    }
    Fan::new(t.leaf_count() + 1, rays, cones, true, labels)
}

/// Rank and extremality of a list of generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    #[serde(serialize_with = "crate::num_str::display_matrix")]
    pub generators: Vec<Vec<BigInt>>,
    pub rank: usize,
    /// Per input generator; repeats of an earlier generator are never extreme.
    pub extreme: Vec<bool>,
    pub non_simplicial: bool,
    pub warnings: Vec<String>,
}

pub fn cone_report(dim: usize, generators: &[Vec<BigInt>]) -> Result<ConeReport> {
    let gens = generators.iter().map(|g| checked_primitive(dim, g)).collect::<Result<Vec<_>>>()?;
    let mut warnings = Vec::new();
    let mut first_seen: Vec<bool> = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let repeat = gens[..i].contains(g);
        if repeat {
            warnings.push(format!("generator {i} repeats an earlier generator"));
        }
        first_seen.push(!repeat);
    }
    let unique: Vec<Vec<Rat>> = gens.iter().zip(&first_seen).filter(|(_, &f)| f).map(|(g, _)| to_rat_vec(g)).collect();
    let r = rank(&unique);
    let mut extreme = Vec::with_capacity(gens.len());
    let mut k = 0;
    for &f in &first_seen {
        if !f {
            extreme.push(false);
            continue;
        }
        let rest: Vec<Vec<Rat>> = unique.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, g)| g.clone()).collect();
        extreme.push(!contains_in(&rest, &unique[k]));
        k += 1;
    }
    let count = extreme.iter().filter(|&&e| e).count();
    if count < unique.len() {
        warnings.push("some generators are not extreme".into());
    }
    Ok(ConeReport {
        generators: gens,
        rank: r,
        extreme,
        non_simplicial: count > r,
        warnings,
    })
}

/// The cone on `e0` and the extended weights of `a`, `b` and the root.
pub fn central_cone(ed: &EnrichedDiagram) -> Result<(Cone, ConeReport)> {
    let (rays, _, ray_of) = deformation_rays(ed)?;
    let t = &ed.tilde;
    let gens: Vec<Vec<BigInt>> = [None, Some(&ed.a), Some(&ed.b), Some(&ed.root)]
        .into_iter()
        .map(|u| match u {
            None => Ok(rays[0].clone()),
            Some(id) => Ok(rays[ray_of[&t.index_of(id)?]].clone()),
        })
        .collect::<Result<_>>()?;
    let dim = t.leaf_count() + 1;
    Ok((Cone::new(dim, &gens)?, cone_report(dim, &gens)?))
}

/// An undirected graph on named vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualComplex {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl DualComplex {
    fn normalized(mut vertices: Vec<String>, edges: impl IntoIterator<Item = (String, String)>) -> Self {
        vertices.sort();
        let set: BTreeSet<(String, String)> = edges
            .into_iter()
            .map(|(x, y)| if x <= y { (x, y) } else { (y, x) })
            .collect();
        DualComplex {
            vertices,
            edges: set.into_iter().collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dual {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for (x, y) in &self.edges {
            let _ = writeln!(out, "  \"{x}\" -- \"{y}\";");
        }
        out.push_str("}\n");
        out
    }
}

/// The subtree spanned by the nodes of `d`.
pub fn node_subtree(d: &SpliceDiagram) -> DualComplex {
    let vertices = d.nodes().into_iter().map(|v| d.id(v).to_string()).collect();
    let edges = d
        .internal_edges()
        .into_iter()
        .map(|(u, v, _)| (d.id(u).to_string(), d.id(v).to_string()));
    DualComplex::normalized(vertices, edges)
}

/// Interior rays of the deformation fan, joined when they span a 2-face of a
/// listed cone.
pub fn dual_complex(ed: &EnrichedDiagram) -> Result<DualComplex> {
    let fan = deformation_partial_fan(ed)?;
    let interior: Vec<bool> = fan.rays.iter().map(|r| r.iter().all(Signed::is_positive)).collect();
    let vertices = (0..fan.rays.len()).filter(|&i| interior[i]).map(|i| fan.label(i)).collect();
    let edges: Vec<(String, String)> = fan
        .two_cones()
        .into_iter()
        .filter(|&(i, j)| interior[i] && interior[j])
        .map(|(i, j)| (fan.label(i), fan.label(j)))
        .collect();
    Ok(DualComplex::normalized(vertices, edges))
}

/// Stellar subdivision along a ray in the support: every listed cone
/// containing it is replaced by the joins of the ray with its facets that
/// do not contain it.
pub fn stellar_subdivide(f: &Fan, ray: &[BigInt]) -> Result<Fan> {
    let rho = checked_primitive(f.dim, ray)?;
    if f.rays.contains(&rho) {
        return Ok(f.clone());
    }
    let x = to_rat_vec(&rho);
    if !f.contains(&x)? {
        return Err(SpliceError::OutsideSupport);
    }
    let mut rays = f.rays.clone();
    let new = rays.len();
    rays.push(rho);
    let mut labels = f.labels.clone();
    if !labels.is_empty() {
        labels.push(format!("ray{new}"));
    }
    let mut cones: Vec<Vec<usize>> = Vec::new();
    for c in &f.cones {
        let gens = f.cone_gens(c);
        if !contains_in(&gens, &x) {
            cones.push(c.clone());
            continue;
        }
        let facets = facets_of(&gens);
        if facets.is_empty() {
            // a ray or the zero cone cannot hold a new ray
            cones.push(c.clone());
            continue;
        }
        for facet in facets {
            let tau: Vec<Vec<Rat>> = facet.iter().map(|&i| gens[i].clone()).collect();
            if contains_in(&tau, &x) {
                continue;
            }
            let mut joined: Vec<usize> = facet.iter().map(|&i| c[i]).collect();
            joined.push(new);
            joined.sort_unstable();
            cones.push(joined);
        }
    }
    // keep maximal cones only
    let sets: Vec<BTreeSet<usize>> = cones.iter().map(|c| c.iter().copied().collect()).collect();
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        let dominated = sets.iter().enumerate().any(|(j, t)| j != i && s.is_subset(t) && (s != t || j < i));
        if !dominated {
            kept.push(cones[i].clone());
        }
    }
    Fan::new(f.dim, rays, kept, f.partial, labels)
}

/// `g` generators with integer relations, presenting an abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidPresentation {
    pub generators: usize,
    #[serde(serialize_with = "crate::num_str::display_matrix", deserialize_with = "crate::num_str::parse_matrix")]
    pub relations: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundingFiber {
    pub rank: usize,
    #[serde(serialize_with = "crate::num_str::display_vec")]
    pub torsion: Vec<BigInt>,
    #[serde(serialize_with = "crate::num_str::display")]
    pub components: BigInt,
    /// The Smith factorization was recomputed and checked exactly.
    pub verified: bool,
}

/// Rank, torsion and number of torus components of the group presented by `p`.
pub fn rounding_fiber_group(p: &MonoidPresentation) -> Result<RoundingFiber> {
    if let Some(r) = p.relations.iter().find(|r| r.len() != p.generators) {
        return Err(SpliceError::Dimension {
            expected: p.generators,
            got: r.len(),
        });
    }
    let snf = smith_normal_form(&p.relations, p.generators);
    let verified = snf.verify(&p.relations);
    let factors = snf.invariant_factors();
    let torsion: Vec<BigInt> = factors.iter().filter(|f| !f.is_one()).cloned().collect();
    let components = torsion.iter().fold(BigInt::one(), |acc, t| acc * t);
    Ok(RoundingFiber {
        rank: p.generators - factors.len(),
        torsion,
        components,
        verified,
    })
}

/// Dimension of the listed cone, which is the dimension of the torus fiber
/// over a point of the matching orbit.
pub fn orbit_fiber_dimension(f: &Fan, cone_index: usize) -> Result<usize> {
    Ok(f.cone(cone_index)?.dimension())
}
