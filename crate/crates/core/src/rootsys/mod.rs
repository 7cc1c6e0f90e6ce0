//! Finite irreducible root systems with `0` adjoined, possibly non-reduced.

mod build;
mod label;
mod recognize;
mod system;

pub use build::{build_finite, standard_gram};
pub use label::{admissible, Family, TypeLabel};
pub use recognize::{cartan_matrix, recognize_type};
pub use system::{orthogonality_components, FiniteRootSystem, ProjectionReport};

use thiserror::Error;

use crate::exactnum::ExactError;

/// Which root-system axiom an input violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Dimension,
    FormPositiveDefinite,
    Nonempty,
    Spanning,
    Integrality,
    ReflectionClosure,
    Irreducibility,
    Classification,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Axiom::Dimension => "vectors and form have consistent dimensions",
            Axiom::FormPositiveDefinite => "form is symmetric positive definite",
            Axiom::Nonempty => "at least one nonzero root",
            Axiom::Spanning => "roots span the ambient space",
            Axiom::Integrality => "2(a,b)/(b,b) is an integer",
            Axiom::ReflectionClosure => "closed under reflections",
            Axiom::Irreducibility => "not an orthogonal union",
            Axiom::Classification => "simple system matches a classified type",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSysError {
    #[error("inadmissible type label {0}")]
    Inadmissible(String),
    #[error("root system axiom violated ({axiom}): {detail}")]
    Axiom { axiom: Axiom, detail: String },
    #[error("cannot reflect in an isotropic vector")]
    IsotropicReflection,
    #[error("projection target subspace is zero")]
    ZeroSubspace,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

impl RootSysError {
    pub(crate) fn axiom(axiom: Axiom, detail: impl Into<String>) -> Self {
        RootSysError::Axiom {
            axiom,
            detail: detail.into(),
        }
    }

    /// The violated axiom, if this is an axiom failure.
    pub fn violated_axiom(&self) -> Option<Axiom> {
        match self {
            RootSysError::Axiom { axiom, .. } => Some(*axiom),
            _ => None,
        }
    }
}
