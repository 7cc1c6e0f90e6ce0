//! Graded Lie algebras given by structure constants on a finite window of
//! degrees, with invariant forms, finite-order automorphisms, affinization
//! and the EALA structure checks.

use thiserror::Error;

use crate::autoroot::AutoRootError;
use crate::ears::EarsError;
use crate::exactnum::ExactError;

pub mod affine;
pub mod algebra;
pub mod automorphism;
pub mod axioms;
pub mod cartan;
pub mod checks;
pub mod matrix;
pub mod scenario;
pub mod subspace;

pub use affine::{
    affinize, degenerate_degree, extend_automorphism, fixed_subalgebra, loop_algebra, AffSigma,
    Affinization, Subalgebra,
};
pub use algebra::{Elt, GradedAlgebra};
pub use automorphism::{AlgebraAutomorphism, EigenBlock, Eigenspaces};
pub use axioms::{
    check_ea_axioms, condition_iii, core_identity, equivalence_conditions, CoreIdentityReport,
    DegreeDims, EaReport, EquivalenceReport,
};
pub use cartan::{average, infer_root_datum, CartanData};
pub use checks::{check_structure, CheckResult, StructureReport};
pub use matrix::{diagonal_automorphism, MatrixAlgebra, MatrixBasis};
pub use scenario::{
    quantum_sl_build, sl_loop, toroidal_build, AlgebraReport, AlgebraScenario, AnyScenario,
    AutomorphismSpec, RootAgreement,
};
pub use subspace::{
    centralizer, generated_subalgebra, tameness_check, two_step_span, Core, CoreDegree, GradedSpan,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("invalid automorphism: {0}")]
    BadAutomorphism(String),
    #[error("the field has no primitive {0}-th root of unity")]
    MissingRoot(u64),
    #[error("{0} is not rational")]
    NotRational(String),
    #[error("basis element {0} is not a weight vector for h")]
    NotDiagonal(String),
    #[error("degenerate form: {0}")]
    DegenerateForm(String),
    #[error("window too small: {0}")]
    Window(String),
    #[error(transparent)]
    Ears(#[from] EarsError),
    #[error(transparent)]
    AutoRoot(#[from] AutoRootError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[cfg(test)]
mod tests;
