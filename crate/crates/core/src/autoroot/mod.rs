//! Finite-order automorphisms of root data, the projection `π` onto the
//! fixed space, and the affinized root system `R̃`.

mod affinize;
mod quantum;
mod residues;
mod verdict;

pub use affinize::{affinized_root_datum, nondegeneracy_transfer, AffinizedDatum};
pub use quantum::{quantum_sl_roots, reversal_flip};
pub use residues::ResidueAssignment;
pub use verdict::{
    affinization_report, affinized_bar_roots, affinized_nullity, condition_iv,
    prime_period_verdict, projected_nonisotropic, projected_witnesses, AffinizationReport,
    BarSummary, PrimePeriodVerdict, Verdict, Witnessed,
};

use num_traits::Zero;
use thiserror::Error;

use crate::ears::{EarsError, LatticeCoords, RootDatum};
use crate::exactnum::{
    int, rat, vec_to_string, vscale, ExactError, RatMatrix, RatVector, Rational,
};
use crate::gcm::{DiagramAutomorphism, GcmError};
use crate::rootsys::RootSysError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutoRootError {
    #[error("invalid automorphism: {0}")]
    BadAutomorphism(String),
    #[error("{} is not a root", vec_to_string(.0))]
    NotARoot(RatVector),
    #[error("every projected root is isotropic; there is no finite projected system")]
    CriterionFails,
    #[error("inconsistent residue assignment: {0}")]
    InconsistentResidues(String),
    #[error("input datum is degenerate")]
    Degenerate,
    #[error(transparent)]
    Ears(#[from] EarsError),
    #[error(transparent)]
    RootSys(#[from] RootSysError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Gcm(#[from] GcmError),
}

/// A linear map `σ` of the ambient space of a root datum with `σ^m = 1`,
/// preserving the form and `R`, and permuting the stored isotropic basis.
#[derive(Debug, Clone)]
pub struct RootAutomorphism {
    matrix: RatMatrix,
    period: u64,
    /// `σ δ_i = δ_{iso_perm[i]}`.
    iso_perm: Vec<usize>,
    projector: RatMatrix,
    /// `η_O = π(δ_i)` for `i ∈ O`, one per orbit of `iso_perm`.
    orbits: Vec<Vec<usize>>,
    eta: Vec<RatVector>,
    eta_coords: LatticeCoords,
}

impl RootAutomorphism {
    pub fn new(d: &RootDatum, matrix: RatMatrix, period: u64) -> Result<Self, AutoRootError> {
        let n = d.dim();
        let bad = |s: String| Err(AutoRootError::BadAutomorphism(s));
        if matrix.rows() != n || matrix.cols() != n {
            return bad(format!(
                "matrix is {}x{}, ambient dimension is {n}",
                matrix.rows(),
                matrix.cols()
            ));
        }
        if period == 0 {
            return bad("period must be positive".into());
        }
        if matrix.pow(period)? != RatMatrix::identity(n) {
            return bad(format!("σ^{period} is not the identity"));
        }
        if matrix.transpose().mul(&d.form().mul(&matrix)?)? != *d.form() {
            return bad("σ does not preserve the form".into());
        }
        let basis = d.isotropic_basis();
        let mut iso_perm = Vec::with_capacity(basis.len());
        for (i, delta) in basis.iter().enumerate() {
            let image = matrix.mul_vec(delta)?;
            match basis.iter().position(|b| *b == image) {
                Some(j) => iso_perm.push(j),
                None => return bad(format!("σ does not permute the isotropic basis (δ_{i})")),
            }
        }
        for c in d.cosets() {
            let (rep, t) = d.canonicalize(&matrix.mul_vec(&c.rep)?)?;
            let want = c.shifts.permute(&iso_perm).translate(&t);
            let ok = d.cosets().iter().any(|o| o.rep == rep && o.shifts == want);
            if !ok {
                return bad(format!("σ(R) != R at coset {}", vec_to_string(&c.rep)));
            }
        }
        let mut projector = RatMatrix::zeros(n, n);
        let mut power = RatMatrix::identity(n);
        for _ in 0..period {
            projector = projector.add(&power)?;
            power = matrix.mul(&power)?;
        }
        let projector = projector.scale(&rat(1, period as i64));
        let orbits = perm_orbits(&iso_perm);
        let eta: Vec<RatVector> = orbits
            .iter()
            .map(|o| {
                let sum = o.iter().fold(vec![int(0); n], |acc, &i| {
                    crate::exactnum::vadd(&acc, &basis[i])
                });
                vscale(&rat(1, o.len() as i64), &sum)
            })
            .collect();
        let eta_coords = LatticeCoords::new(n, &eta)?;
        Ok(RootAutomorphism {
            matrix,
            period,
            iso_perm,
            projector,
            orbits,
            eta,
            eta_coords,
        })
    }

    /// The identity with period 1.
    pub fn identity(d: &RootDatum) -> Result<Self, AutoRootError> {
        RootAutomorphism::new(d, RatMatrix::identity(d.dim()), 1)
    }

    /// `α_i ↦ α_{σ i}` on a datum in simple-root coordinates.
    pub fn from_diagram(d: &RootDatum, sigma: &DiagramAutomorphism) -> Result<Self, AutoRootError> {
        if sigma.perm.len() != d.dim() {
            return Err(AutoRootError::BadAutomorphism(format!(
                "{} nodes for ambient dimension {}",
                sigma.perm.len(),
                d.dim()
            )));
        }
        RootAutomorphism::new(d, sigma.lattice_matrix(), sigma.period)
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn iso_perm(&self) -> &[usize] {
        &self.iso_perm
    }

    /// Orbits of `σ` on the isotropic basis.
    pub fn iso_orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// `π(δ_i)`, one vector per orbit.
    pub fn eta(&self) -> &[RatVector] {
        &self.eta
    }

    pub fn fixes_isotropic_basis(&self) -> bool {
        self.iso_perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn apply(&self, v: &[Rational]) -> RatVector {
        self.matrix.mul_vec(v).expect("dimension")
    }

    /// `(1/m) Σ σ^i`.
    pub fn projector(&self) -> &RatMatrix {
        &self.projector
    }

    pub fn pi(&self, v: &[Rational]) -> RatVector {
        self.projector.mul_vec(v).expect("dimension")
    }

    pub fn fixed_subspace(&self) -> Vec<RatVector> {
        self.matrix.fixed_subspace().expect("square")
    }

    /// Least `ℓ ≥ 1` with `σ^ℓ α = α`.
    pub fn sigma_length(&self, d: &RootDatum, alpha: &[Rational]) -> Result<u64, AutoRootError> {
        if !d.contains(alpha) {
            return Err(AutoRootError::NotARoot(alpha.to_vec()));
        }
        let mut v = self.apply(alpha);
        let mut len = 1;
        while v != alpha {
            v = self.apply(&v);
            len += 1;
        }
        Ok(len)
    }

    /// `π(α) = p + Σ t_O η_O` with `p` canonical modulo the `η`-lattice.
    pub(crate) fn pi_key(&self, v: &[Rational]) -> (RatVector, Vec<i64>) {
        self.eta_coords
            .canonicalize(&self.pi(v))
            .expect("small coordinates")
    }

    /// Componentwise `gcd` of `period` over each orbit: the period of the
    /// orbit sums of `r + period·ℤ^k`.
    pub(crate) fn orbit_gcd(&self, period: &[i64]) -> Vec<i64> {
        use num_integer::Integer;
        self.orbits
            .iter()
            .map(|o| o.iter().fold(0i64, |g, &i| g.gcd(&period[i])))
            .collect()
    }

    pub(crate) fn orbit_sum(&self, n: &[i64]) -> Vec<i64> {
        self.orbits
            .iter()
            .map(|o| o.iter().map(|&i| n[i]).sum())
            .collect()
    }
}

fn perm_orbits(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        let mut orbit = Vec::new();
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            orbit.push(i);
            i = perm[i];
        }
        if !orbit.is_empty() {
            out.push(orbit);
        }
    }
    out
}

pub(crate) fn norm(d: &RootDatum, v: &[Rational]) -> Rational {
    d.pair(v, v)
}

pub(crate) fn is_nonisotropic(d: &RootDatum, v: &[Rational]) -> bool {
    !norm(d, v).is_zero()
}
