//! Concrete algebras with automorphisms, and the full comparison of the
//! algebra-level computation of `Aff(g, σ)` against the root-level one.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::affine::AffSigma;
use super::algebra::{basis_elt, to_dense, Elt, GradedAlgebra};
use super::automorphism::AlgebraAutomorphism;
use super::axioms::{
    check_ea_axioms, core_identity, equivalence_conditions, CoreIdentityReport, EaReport,
    EquivalenceReport,
};
use super::cartan::{infer_root_datum, CartanData};
use super::checks::{check_structure, StructureReport};
use super::matrix::MatrixAlgebra;
use super::LieError;
use crate::autoroot::{
    affinization_report, affinized_root_datum, AffinizationReport, AffinizedDatum,
    ResidueAssignment, RootAutomorphism,
};
use crate::coords::QuantumTorus;
use crate::ears::{EalaRootReport, RootDatum};
use crate::exactnum::{
    int, is_zero_vec, solve, vec_to_string, CyclotomicField, Field, RatVector, Rational,
    RationalField,
};

/// An automorphism of `sl_n(A) ⊕ C ⊕ D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AutomorphismSpec {
    Identity,
    /// `x ↦ −xᵀ`.
    Chevalley,
    /// `x ↦ −x*`, the reversed transpose.
    NegStar,
    /// `Ad diag(ζ^{a_1}, …, ζ^{a_n})` composed with `t^p ↦ ζ^{μ·p} t^p`.
    Diagonal {
        exponents: Vec<i64>,
        #[serde(default)]
        mu: Vec<i64>,
        m: u64,
    },
    /// `Ad` of a permutation matrix.
    Permutation {
        perm: Vec<usize>,
    },
}

/// An algebra over `F` with a Cartan subalgebra and a finite-order
/// automorphism.
#[derive(Debug, Clone)]
pub struct AlgebraScenario<F: Field> {
    pub g: GradedAlgebra<F>,
    pub cartan: CartanData<F>,
    pub sigma: AlgebraAutomorphism<F>,
    /// Window of the affinization.
    pub window: i64,
}

/// Scenarios over `ℚ` (`m ≤ 2`) or over `ℚ(ζ_m)`.
#[derive(Debug, Clone)]
pub enum AnyScenario {
    Rational(AlgebraScenario<RationalField>),
    Cyclotomic(AlgebraScenario<CyclotomicField>),
}

fn finish(
    ma: MatrixAlgebra,
    spec: &AutomorphismSpec,
    window: i64,
) -> Result<AnyScenario, LieError> {
    let sigma = match spec {
        AutomorphismSpec::Identity => AlgebraAutomorphism::identity(&ma.algebra),
        AutomorphismSpec::Chevalley => ma.chevalley()?,
        AutomorphismSpec::NegStar => ma.neg_star()?,
        AutomorphismSpec::Permutation { perm } => ma.ad_permutation(perm)?,
        AutomorphismSpec::Diagonal { exponents, mu, m } => {
            let mu = if mu.is_empty() {
                vec![0; ma.torus().nu()]
            } else {
                mu.clone()
            };
            let exps = ma.diagonal_exponents(exponents, &mu)?;
            if *m <= 2 {
                AlgebraAutomorphism::diagonal(&ma.algebra, &exps, *m)?
            } else {
                let f = CyclotomicField::new(*m);
                let g = ma.algebra.map_field(f.clone(), |c| f.from_rational(c));
                let cartan = ma
                    .cartan
                    .map_field::<CyclotomicField>(|c| f.from_rational(c));
                let sigma = AlgebraAutomorphism::diagonal(&g, &exps, *m)?;
                return Ok(AnyScenario::Cyclotomic(AlgebraScenario {
                    g,
                    cartan,
                    sigma,
                    window,
                }));
            }
        }
    };
    let m = sigma.period();
    if m <= 2 {
        return Ok(AnyScenario::Rational(AlgebraScenario {
            g: ma.algebra,
            cartan: ma.cartan,
            sigma,
            window,
        }));
    }
    let f = CyclotomicField::new(m);
    let lift = |c: &Rational| f.from_rational(c);
    Ok(AnyScenario::Cyclotomic(AlgebraScenario {
        g: ma.algebra.map_field(f.clone(), lift),
        cartan: ma.cartan.map_field::<CyclotomicField>(lift),
        sigma: sigma.map_field(f.clone(), lift),
        window,
    }))
}

/// `sl_n` with an automorphism, affinized with the given window.
pub fn sl_loop(n: usize, spec: &AutomorphismSpec, window: i64) -> Result<AnyScenario, LieError> {
    finish(MatrixAlgebra::sl(n)?, spec, window)
}

/// The toroidal algebra `(sl_n ⊗ A) ⊕ C ⊕ D` over the commutative torus in
/// `ν` variables, with the Killing form of `sl_n`.
pub fn toroidal_build(
    n: usize,
    nu: usize,
    spec: &AutomorphismSpec,
    window: i64,
) -> Result<AnyScenario, LieError> {
    if nu == 0 {
        return Err(LieError::Malformed(
            "a toroidal algebra needs at least one variable".into(),
        ));
    }
    let ma = MatrixAlgebra::new(n, QuantumTorus::commutative(nu), window, int(2 * n as i64))?;
    finish(ma, spec, window)
}

/// `sl_{ℓ+1}(A_q) ⊕ C ⊕ D` with `(x, y) = ε(tr(xy))` and `σ(x) = −x*`.
pub fn quantum_sl_build(
    ell: usize,
    torus: QuantumTorus,
    window: i64,
) -> Result<AnyScenario, LieError> {
    let ma = MatrixAlgebra::new(ell + 1, torus, window, int(1))?;
    finish(ma, &AutomorphismSpec::NegStar, window)
}

/// Agreement between the weights of `Aff(g, σ)` and the affinized root
/// datum built from the inferred datum of `g` and residues read off the
/// eigenspaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootAgreement {
    pub agree: bool,
    pub algebra_roots: usize,
    pub datum_roots: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub m: u64,
    pub base_dim: usize,
    pub affinized_dim: usize,
    pub eigenspace_dims: Vec<usize>,
    pub base_structure: StructureReport,
    pub base_axioms: Result<EaReport, String>,
    pub affinized_structure: StructureReport,
    pub affinized_axioms: Result<EaReport, String>,
    pub equivalence_conditions: EquivalenceReport,
    pub core: Result<CoreIdentityReport, String>,
    pub root_agreement: Result<RootAgreement, String>,
    /// The root-level verdict for the inferred datum and `σ`.
    pub root_level: Result<AffinizationReport, String>,
    /// `R̃` built from the eigenspace residues.
    pub affinized_roots: Result<EalaRootReport, String>,
}

impl AnyScenario {
    pub fn m(&self) -> u64 {
        match self {
            AnyScenario::Rational(s) => s.sigma.period(),
            AnyScenario::Cyclotomic(s) => s.sigma.period(),
        }
    }

    pub fn analyze(&self) -> Result<AlgebraReport, LieError> {
        match self {
            AnyScenario::Rational(s) => s.analyze(),
            AnyScenario::Cyclotomic(s) => s.analyze(),
        }
    }

    pub fn window(&self) -> i64 {
        match self {
            AnyScenario::Rational(s) => s.window,
            AnyScenario::Cyclotomic(s) => s.window,
        }
    }

    pub fn root_automorphism(&self) -> Result<(RootDatum, RootAutomorphism), LieError> {
        match self {
            AnyScenario::Rational(s) => s.root_automorphism(),
            AnyScenario::Cyclotomic(s) => s.root_automorphism(),
        }
    }

    pub fn affinized_datum(
        &self,
    ) -> Result<(RootDatum, RootAutomorphism, AffinizedDatum), LieError> {
        match self {
            AnyScenario::Rational(s) => s.affinized_datum(),
            AnyScenario::Cyclotomic(s) => s.affinized_datum(),
        }
    }

    pub fn equivalence_conditions(&self) -> Result<EquivalenceReport, LieError> {
        match self {
            AnyScenario::Rational(s) => equivalence_conditions(&s.g, &s.cartan, &s.sigma, s.window),
            AnyScenario::Cyclotomic(s) => {
                equivalence_conditions(&s.g, &s.cartan, &s.sigma, s.window)
            }
        }
    }
}

impl<F: Field> AlgebraScenario<F> {
    pub fn affinized(&self) -> Result<AffSigma<F>, LieError> {
        AffSigma::new(&self.g, &self.cartan, &self.sigma, self.window)
    }

    pub fn root_automorphism(&self) -> Result<(RootDatum, RootAutomorphism), LieError> {
        let d = infer_root_datum(&self.g, &self.cartan)?;
        let action = self.cartan.weight_action(&self.g, &self.sigma)?;
        let s = RootAutomorphism::new(&d, action, self.sigma.period())?;
        Ok((d, s))
    }

    pub fn analyze(&self) -> Result<AlgebraReport, LieError> {
        let a = self.affinized()?;
        let t = a.algebra();
        let err = |e: LieError| e.to_string();
        Ok(AlgebraReport {
            m: self.sigma.period(),
            base_dim: self.g.dim(),
            affinized_dim: t.dim(),
            eigenspace_dims: self.sigma.eigenspaces()?.dims(),
            base_structure: check_structure(&self.g),
            base_axioms: check_ea_axioms(&self.g, &self.cartan).map_err(err),
            affinized_structure: check_structure(t),
            affinized_axioms: check_ea_axioms(t, a.cartan()).map_err(err),
            equivalence_conditions: equivalence_conditions(
                &self.g,
                &self.cartan,
                &self.sigma,
                self.window,
            )?,
            core: core_identity(&self.g, &self.cartan, &self.sigma, self.window).map_err(err),
            root_agreement: self.root_agreement(&a).map_err(err),
            root_level: self
                .root_automorphism()
                .and_then(|(d, s)| Ok(affinization_report(&s, &d)?))
                .map_err(err),
            affinized_roots: self
                .affinized_datum()
                .and_then(|(_, _, t)| Ok(t.datum.report()?))
                .map_err(err),
        })
    }

    /// Residues `ī` with `g_{ī, π(α)} ≠ 0`, keyed by `π(α)`.
    fn residues_by_projection(
        &self,
        s: &RootAutomorphism,
    ) -> Result<BTreeMap<RatVector, BTreeSet<u64>>, LieError> {
        let m = self.sigma.period();
        let mut out: BTreeMap<RatVector, BTreeSet<u64>> = BTreeMap::new();
        for (w, idx) in self.cartan.weight_spaces() {
            let entry = out.entry(s.pi(&w)).or_default();
            for i in 0..m {
                for &b in &idx {
                    if !self.sigma.project(&self.g.basis(b), i as i64)?.is_empty() {
                        entry.insert(i);
                        break;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Value of `λ + i δ̃` on each element of `h̃`, for `λ` in evaluation
    /// coordinates on `h`.
    fn weight_on_cartan(
        coeffs: &[(Vec<Rational>, Rational)],
        lambda: &[Rational],
        i: i64,
    ) -> RatVector {
        coeffs
            .iter()
            .map(|(u, e)| u.iter().zip(lambda).map(|(x, y)| x * y).sum::<Rational>() + e * int(i))
            .collect()
    }

    /// Each `h̃` element as `Σ u_j (h_j ⊗ 1) + γc + εd`; returns `(u, ε)`.
    fn cartan_coefficients(
        &self,
        a: &AffSigma<F>,
    ) -> Result<Vec<(Vec<Rational>, Rational)>, LieError> {
        let f = self.g.field();
        let w = a.aff.index(0, 0);
        let h = self.cartan.h();
        let mut idx: Vec<usize> = h
            .iter()
            .flat_map(|x| x.keys().map(|b| w + b))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        idx.push(a.aff.c());
        idx.push(a.aff.d());
        let mut cols: Vec<Elt<F::Elem>> = h
            .iter()
            .map(|x| x.iter().map(|(b, c)| (w + b, c.clone())).collect())
            .collect();
        cols.push(basis_elt(f, a.aff.c()));
        cols.push(basis_elt(f, a.aff.d()));
        let dense: Vec<Vec<F::Elem>> = cols.iter().map(|c| to_dense(f, c, &idx)).collect();
        let rows: Vec<Vec<F::Elem>> = (0..idx.len())
            .map(|r| dense.iter().map(|c| c[r].clone()).collect())
            .collect();
        a.cartan()
            .h()
            .iter()
            .map(|x| {
                let amb = a.sub.embed(x);
                let coef = solve(f, &rows, &to_dense(f, &amb, &idx))
                    .ok_or_else(|| LieError::Malformed("h̃ is not inside h ⊗ 1 ⊕ ℚc ⊕ ℚd".into()))?;
                let rat = coef
                    .iter()
                    .map(|c| {
                        f.to_rational(c)
                            .ok_or_else(|| LieError::NotRational(f.render(c)))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((rat[..h.len()].to_vec(), rat[h.len() + 1].clone()))
            })
            .collect()
    }

    /// The inferred datum, the root action of `σ`, and `R̃` built with
    /// residues read off the eigenspaces. Residues depend on the shift
    /// modulo `m`, so classes are taken modulo `m` times the lattice period.
    pub fn affinized_datum(
        &self,
    ) -> Result<(RootDatum, RootAutomorphism, AffinizedDatum), LieError> {
        let (d, s) = self.root_automorphism()?;
        let by_pi = self.residues_by_projection(&s)?;
        let m = self.sigma.period();
        let period = d.lattice_period().iter().map(|p| p * m as i64).collect();
        let residues = ResidueAssignment::from_fn(&d, m, Some(period), |root| {
            by_pi.get(&s.pi(root)).cloned().unwrap_or_default()
        })?;
        let tilde = affinized_root_datum(&s, &d, &residues)?;
        Ok((d, s, tilde))
    }

    pub fn root_agreement(&self, a: &AffSigma<F>) -> Result<RootAgreement, LieError> {
        let (_, s, tilde) = self.affinized_datum()?;
        let coeffs = self.cartan_coefficients(a)?;
        let t = a.algebra();
        let algebra: BTreeSet<RatVector> = a
            .cartan()
            .weights()
            .iter()
            .filter(|w| !is_zero_vec(w))
            .cloned()
            .collect();
        let mut datum = BTreeSet::new();
        let weights: BTreeSet<RatVector> = self.cartan.weights().iter().cloned().collect();
        for alpha in &weights {
            let p = s.pi(alpha);
            for i in -t.window()..=t.window() {
                if tilde.datum.contains(&tilde.embed(&p, i)) {
                    let w = Self::weight_on_cartan(&coeffs, &p, i);
                    if !is_zero_vec(&w) {
                        datum.insert(w);
                    }
                }
            }
        }
        let witness = algebra.symmetric_difference(&datum).next().map(|w| {
            let side = if algebra.contains(w) {
                "the algebra only"
            } else {
                "the datum only"
            };
            format!("{} occurs in {side}", vec_to_string(w))
        });
        Ok(RootAgreement {
            agree: witness.is_none(),
            algebra_roots: algebra.len(),
            datum_roots: datum.len(),
            witness,
        })
    }
}
