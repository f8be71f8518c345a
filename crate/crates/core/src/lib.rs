//! Evaluation codes from order domains: Gröbner footprints, weight
//! semigroups, points of higher degree with inner codes, and an exhaustive
//! distance oracle for checking every attached bound.

pub mod codes;
pub mod config;
pub mod distance;
pub mod gf;
pub mod groebner;
pub mod linalg;
pub mod pipeline;
pub mod points;
pub mod poly;
pub mod report;
pub mod semigroup;

pub use codes::{Bounds, CodeInstance, ConstructionTag, Evaluation, FunctionSpace, InnerCode};
pub use config::Config;
pub use distance::{DistanceReport, Parallelism};
pub use gf::{Elem, Field, FieldSpec};
pub use groebner::{Footprint, GroebnerBasis};
pub use pipeline::{Analysis, ErrorKind, PipelineError, Verification};
pub use points::{EvaluationPoint, PointSelection, SelectedPoints};
pub use poly::{Monomial, Poly, PolyRing, Weight, WeightedOrder};
pub use report::Report;
pub use semigroup::{OrderDomainDiagnosis, Semigroup};
