//! Extended affine root data.
//!
//! A root set of positive nullity is infinite. It is stored as finitely many
//! cosets `rep + ℤ-span(isotropic basis)`, each carrying the periodic set of
//! lattice shifts that actually occur.

mod datum;
mod json;
mod shift;

pub use datum::{
    BarFrame, BarImage, Coset, Ea5bResult, EalaRootReport, LatticeCoords, RootDatum, RootSplit,
};
pub use json::{CosetJson, RootDatumJson};
pub use shift::{Progression, ShiftSet};

use thiserror::Error;

use crate::exactnum::{vec_to_string, ExactError, RatVector};
use crate::rootsys::RootSysError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EarsError {
    #[error("malformed root datum: {0}")]
    Malformed(String),
    #[error("form is not positive semidefinite on span(R): witness {} has negative norm", vec_to_string(.0))]
    NotSemidefinite(RatVector),
    #[error("root datum axiom violated: {0}")]
    Axiom(String),
    #[error("no nonisotropic roots: there is no finite root system")]
    NoNonisotropicRoots,
    #[error(transparent)]
    RootSys(#[from] RootSysError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
