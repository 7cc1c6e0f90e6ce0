//! Exact computations with extended affine Lie algebras, their finite-order
//! automorphisms and affinizations.

pub mod autoroot;
pub mod coords;
pub mod ears;
pub mod exactnum;
pub mod gcm;
pub mod liealg;
pub mod rootsys;
