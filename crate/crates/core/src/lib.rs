//! Splice diagrams and the singularities they describe: diagram calculus,
//! semigroup conditions, splice type systems, edge deformations, tropical
//! fans and rounding-fiber groups. All arithmetic is exact.

pub mod deform;
pub mod diagram;
pub mod error;
pub mod linalg;
pub mod num_str;
pub mod poly;
pub mod polysys;
pub mod sample;
pub mod semigroup;
pub mod snf;
pub mod sysfile;
pub mod tropfan;

pub use deform::{
    adapted_triple, edge_deformation, enrich, extended_weight_vector, AdaptedTriple, DeformedSystem, EnrichedDiagram,
    TriplePolicy,
};
pub use diagram::{parse_diagram, DiagramDocument, SpliceDiagram, ValidationReport, VertexKind};
pub use error::{Result, SpliceError};
pub use linalg::Rat;
pub use poly::{Exponent, Polynomial, WeightVector};
pub use polysys::{
    bph_system, hamm_check, homogeneous_degree, initial_form, initial_system, node_weight_vector, strict_splice_system,
    validate_higher_order, CoefficientSource, SpliceSystem, SystemOptions,
};
pub use semigroup::{check_semigroup_condition, enumerate_representations, membership, Representation};
pub use sysfile::SystemDocument;
pub use tropfan::{
    central_cone, cone_contains, deformation_partial_fan, deformation_trop_rays, dual_complex, orbit_fiber_dimension,
    rounding_fiber_group, stellar_subdivide, surface_trop_fan, Cone, Fan, MonoidPresentation,
};
