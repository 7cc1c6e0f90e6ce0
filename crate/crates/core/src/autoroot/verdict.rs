use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{is_nonisotropic, nondegeneracy_transfer, AutoRootError, RootAutomorphism};
use crate::ears::RootDatum;
use crate::exactnum::{is_zero_vec, span_basis, RatMatrix, RatVector, RationalField};
use crate::rootsys::{FiniteRootSystem, TypeLabel};

/// A yes/no answer with a root that certifies it, when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witnessed {
    pub holds: bool,
    pub witness: Option<RatVector>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimePeriodVerdict {
    /// Condition (iv) and the criterion both hold.
    pub sufficient: bool,
    /// For prime `m`, whether the affinization is a tame EALA with
    /// nonisotropic roots; `None` when `m` is not prime.
    pub necessary_given_prime: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    TameEala,
    EmptyNonisotropic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BarSummary {
    pub rank: usize,
    pub nonzero_roots: usize,
    #[serde(rename = "type")]
    pub type_label: TypeLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffinizationReport {
    pub projected_nonisotropic: bool,
    pub condition_iv: bool,
    pub prime_period: PrimePeriodVerdict,
    pub verdict: Verdict,
    #[serde(rename = "type")]
    pub type_label: Option<TypeLabel>,
    pub nullity: Option<usize>,
    pub nondegenerate: bool,
    pub bar_projected_roots: Option<BarSummary>,
}

/// Some root has `(π(α), π(α)) ≠ 0`. Coset representatives suffice: shifts
/// change `π(α)` by isotropic vectors.
pub fn projected_nonisotropic(sigma: &RootAutomorphism, d: &RootDatum) -> Witnessed {
    let witness = d
        .cosets()
        .iter()
        .map(|c| &c.rep)
        .find(|rep| is_nonisotropic(d, &sigma.pi(rep)))
        .cloned();
    Witnessed {
        holds: witness.is_some(),
        witness,
    }
}

/// `(x, y)` with `x·a + y·b = gcd(a, b)`.
fn bezout(a: i64, b: i64) -> (i64, i64) {
    let e = a.extended_gcd(&b);
    (e.x, e.y)
}

/// Some `n ≡ r (mod P)` with the given orbit sums, if one exists.
fn with_orbit_sums(
    sigma: &RootAutomorphism,
    r: &[i64],
    period: &[i64],
    target: &[i64],
) -> Option<Vec<i64>> {
    let mut n = r.to_vec();
    let sums = sigma.orbit_sum(r);
    for (o, orbit) in sigma.iso_orbits().iter().enumerate() {
        let need = target[o] - sums[o];
        // Write `need` as Σ k_i P_i over the orbit.
        let mut g = 0i64;
        let mut coeffs: Vec<i64> = Vec::with_capacity(orbit.len());
        for &i in orbit {
            let (x, y) = bezout(g, period[i]);
            coeffs.iter_mut().for_each(|c| *c *= x);
            coeffs.push(y);
            g = g.gcd(&period[i]);
        }
        if need % g != 0 {
            return None;
        }
        for (&i, c) in orbit.iter().zip(&coeffs) {
            n[i] += c * (need / g) * period[i];
        }
    }
    Some(n)
}

/// `π(α) ≠ 0` for every nonzero `α ∈ R`. Exact over the infinite set: for
/// each coset, `π(rep + nδ) = 0` is a condition on the orbit sums of `n`.
pub fn condition_iv(sigma: &RootAutomorphism, d: &RootDatum) -> Witnessed {
    let period = d.lattice_period();
    for c in d.cosets() {
        let (p, t) = sigma.pi_key(&c.rep);
        if !is_zero_vec(&p) {
            continue;
        }
        let target: Vec<i64> = t.iter().map(|x| -x).collect();
        if is_zero_vec(&c.rep) {
            // Nonzero `n` with zero orbit sums needs an orbit of size ≥ 2.
            if let Some(orbit) = sigma.iso_orbits().iter().find(|o| o.len() >= 2) {
                let (i, j) = (orbit[0], orbit[1]);
                let l = period[i].lcm(&period[j]);
                let mut n = vec![0; period.len()];
                n[i] = l;
                n[j] = -l;
                return Witnessed {
                    holds: false,
                    witness: Some(d.root_at(&c.rep, &n)),
                };
            }
            continue;
        }
        for r in c.shifts.residues_mod(&period) {
            if let Some(n) = with_orbit_sums(sigma, &r, &period, &target) {
                return Witnessed {
                    holds: false,
                    witness: Some(d.root_at(&c.rep, &n)),
                };
            }
        }
    }
    Witnessed {
        holds: true,
        witness: None,
    }
}

fn is_prime(m: u64) -> bool {
    m >= 2
        && (2..)
            .take_while(|p| p * p <= m)
            .all(|p| !m.is_multiple_of(p))
}

pub fn prime_period_verdict(sigma: &RootAutomorphism, d: &RootDatum) -> PrimePeriodVerdict {
    let sufficient = condition_iv(sigma, d).holds && projected_nonisotropic(sigma, d).holds;
    PrimePeriodVerdict {
        sufficient,
        necessary_given_prime: is_prime(sigma.period()).then_some(sufficient),
    }
}

/// `π̄(R̄)`: images of the nonisotropic projected roots in `span(R)/V⁰`,
/// in coordinates of their own span.
pub fn affinized_bar_roots(
    sigma: &RootAutomorphism,
    d: &RootDatum,
) -> Result<FiniteRootSystem, AutoRootError> {
    let frame = d.bar_frame()?;
    let gram = &frame.gram;
    let images: Vec<RatVector> = d
        .split_roots()
        .nonisotropic
        .iter()
        .map(|c| sigma.pi(&c.rep))
        .filter(|v| is_nonisotropic(d, v))
        .map(|v| frame.coords(&v))
        .collect();
    if images.is_empty() {
        return Err(AutoRootError::CriterionFails);
    }
    let r = gram.rows();
    let basis = span_basis(&RationalField, &images, r);
    let bmat = RatMatrix::from_columns(&basis, r);
    let coords: Vec<RatVector> = images
        .iter()
        .map(|v| bmat.solve(v).expect("in span"))
        .collect();
    let restricted = bmat.transpose().mul(&gram.mul(&bmat)?)?;
    Ok(FiniteRootSystem::new(coords, restricted)?.normalized())
}

/// `dim (V⁰)^σ + 1`.
pub fn affinized_nullity(sigma: &RootAutomorphism, d: &RootDatum) -> usize {
    super::affinize::fixed_radical(sigma, d).len() + 1
}

/// Every `α ∈ R^×` pairs nontrivially with some `β ∈ R^×` of nonisotropic
/// projection. Vacuously true when no projection is nonisotropic.
pub fn projected_witnesses(sigma: &RootAutomorphism, d: &RootDatum) -> bool {
    let non: Vec<RatVector> = d
        .split_roots()
        .nonisotropic
        .into_iter()
        .map(|c| c.rep)
        .collect();
    let visible: Vec<&RatVector> = non
        .iter()
        .filter(|b| is_nonisotropic(d, &sigma.pi(b)))
        .collect();
    visible.is_empty()
        || non
            .iter()
            .all(|a| visible.iter().any(|b| !d.pair(a, b).is_zero()))
}

pub fn affinization_report(
    sigma: &RootAutomorphism,
    d: &RootDatum,
) -> Result<AffinizationReport, AutoRootError> {
    let criterion = projected_nonisotropic(sigma, d).holds;
    let iv = condition_iv(sigma, d).holds;
    let (type_label, nullity, bar) = if criterion {
        let sys = affinized_bar_roots(sigma, d)?;
        let ty = sys.recognize()?;
        let summary = BarSummary {
            rank: sys.dim(),
            nonzero_roots: sys.len() - 1,
            type_label: ty,
        };
        (Some(ty), Some(affinized_nullity(sigma, d)), Some(summary))
    } else {
        (None, None, None)
    };
    let nondegenerate = match nondegeneracy_transfer(sigma, d) {
        Ok(b) => b,
        Err(AutoRootError::Degenerate) => false,
        Err(e) => return Err(e),
    };
    Ok(AffinizationReport {
        projected_nonisotropic: criterion,
        condition_iv: iv,
        prime_period: prime_period_verdict(sigma, d),
        verdict: if criterion {
            Verdict::TameEala
        } else {
            Verdict::EmptyNonisotropic
        },
        type_label,
        nullity,
        nondegenerate,
        bar_projected_roots: bar,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::norm;
    use super::*;
    use crate::exactnum::{ivec, rat, vscale};
    use crate::gcm::{diagram_automorphisms, DiagramAutomorphism};

    #[test]
    fn identity_verdicts() {
        for label in ["A_1", "B_3", "G_2"] {
            let d = finite(label);
            let id = RootAutomorphism::identity(&d).unwrap();
            assert!(projected_nonisotropic(&id, &d).holds);
            assert!(condition_iv(&id, &d).holds);
            let v = prime_period_verdict(&id, &d);
            assert_eq!((v.sufficient, v.necessary_given_prime), (true, None));
            let bar = affinized_bar_roots(&id, &d).unwrap();
            assert_eq!(bar.recognize().unwrap().to_string(), label);
            assert_eq!(affinized_nullity(&id, &d), 1);
        }
    }

    #[test]
    fn rotation_fails_the_criterion() {
        for ell in 1..=4usize {
            let (g, d) = affine(&format!("A_{ell}^(1)"));
            let perm: Vec<usize> = (0..=ell).map(|i| (i + 1) % (ell + 1)).collect();
            let s =
                RootAutomorphism::from_diagram(&d, &DiagramAutomorphism::new(&g, perm).unwrap())
                    .unwrap();
            let c = projected_nonisotropic(&s, &d);
            assert!(!c.holds && c.witness.is_none());
            assert!(condition_iv(&s, &d).holds);
            let v = prime_period_verdict(&s, &d);
            assert!(!v.sufficient);
            let m = ell as u64 + 1;
            assert_eq!(v.necessary_given_prime, is_prime(m).then_some(false));
            assert!(matches!(
                affinized_bar_roots(&s, &d),
                Err(AutoRootError::CriterionFails)
            ));
            let r = affinization_report(&s, &d).unwrap();
            assert_eq!(r.verdict, Verdict::EmptyNonisotropic);
            assert_eq!(r.type_label, None);
        }
    }

    #[test]
    fn minus_one_on_a1_fails_condition_iv() {
        let (d, s) = a1_minus_one();
        let iv = condition_iv(&s, &d);
        assert!(!iv.holds);
        let w = iv.witness.unwrap();
        assert!(is_zero_vec(&s.pi(&w)) && !is_zero_vec(&w));
        assert!(!projected_nonisotropic(&s, &d).holds);
        assert_eq!(
            prime_period_verdict(&s, &d).necessary_given_prime,
            Some(false)
        );
    }

    #[test]
    fn swapping_null_directions_fails_condition_iv() {
        let d = quantum_sl(1, 2);
        let m = RatMatrix::from_i64(&[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
        ]);
        let s = RootAutomorphism::new(&d, m, 2).unwrap();
        let iv = condition_iv(&s, &d);
        assert_eq!(iv.witness, Some(ivec(&[0, 0, 1, -1])));
        assert!(projected_nonisotropic(&s, &d).holds);
        assert_eq!(affinized_nullity(&s, &d), 2);
    }

    #[test]
    fn quantum_torus_flip() {
        let d = quantum_sl(3, 1);
        let s = flip(&d, 3, 1);
        let c = projected_nonisotropic(&s, &d);
        assert!(c.holds);
        let a = ivec(&[1, -1, 0, 0, 0]);
        let want = vscale(&rat(1, 2), &ivec(&[1, -1, 1, -1, 0]));
        assert_eq!(s.pi(&a), want);
        assert!(!norm(&d, &want).is_zero());
        assert!(prime_period_verdict(&s, &d).sufficient);
        for (ell, ty) in [(1, "C_1"), (2, "BC_1"), (3, "C_2"), (4, "BC_2"), (5, "C_3")] {
            for nu in 1..=2 {
                let d = quantum_sl(ell, nu);
                let s = flip(&d, ell, nu);
                let r = affinization_report(&s, &d).unwrap();
                let want: TypeLabel = ty.parse().unwrap();
                assert!(
                    r.type_label.unwrap().same_class(want),
                    "ell={ell}: {:?}",
                    r.type_label
                );
                assert_eq!(r.nullity, Some(nu + 1));
                assert!(r.nondegenerate);
            }
        }
    }

    #[test]
    fn diagram_automorphisms_satisfy_condition_iv() {
        for name in ["A_3^(1)", "D_4^(1)", "A_4^(2)", "E_6^(1)"] {
            let (g, d) = affine(name);
            for sigma in diagram_automorphisms(&g) {
                let s = RootAutomorphism::from_diagram(&d, &sigma).unwrap();
                assert!(condition_iv(&s, &d).holds, "{name} {:?}", sigma.perm);
                assert!(projected_witnesses(&s, &d));
                let crit = projected_nonisotropic(&s, &d).holds;
                assert_eq!(crit, !sigma.is_transitive(), "{name} {:?}", sigma.perm);
                if crit {
                    assert_eq!(affinized_nullity(&s, &d), 2);
                }
            }
        }
    }
}
