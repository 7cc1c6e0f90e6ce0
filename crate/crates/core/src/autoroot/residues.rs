use std::collections::{BTreeMap, BTreeSet};

use super::{is_nonisotropic, AutoRootError, RootAutomorphism};
use crate::ears::RootDatum;
use crate::exactnum::{kernel, vec_to_string, vneg, CyclotomicField, Field, RatVector};

/// Key of a class of roots: a coset representative and a residue of the
/// lattice shift modulo the assignment period.
pub type ClassKey = (RatVector, Vec<i64>);

/// For each class of roots `rep + nδ` with `n ≡ r` modulo a fixed period,
/// the residues `ī ∈ ℤ_m` with `α ∈ R_ī`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueAssignment {
    m: u64,
    period: Vec<i64>,
    classes: BTreeMap<ClassKey, BTreeSet<u64>>,
}

fn reduce(n: &[i64], period: &[i64]) -> Vec<i64> {
    n.iter()
        .zip(period)
        .map(|(x, p)| x.rem_euclid(*p))
        .collect()
}

impl ResidueAssignment {
    /// Checks that the classes are exactly the root classes of `d`, that
    /// every root gets at least one residue, and that `−R_ī = R_{−ī}`.
    pub fn new(
        d: &RootDatum,
        m: u64,
        period: Vec<i64>,
        classes: BTreeMap<ClassKey, BTreeSet<u64>>,
    ) -> Result<Self, AutoRootError> {
        let bad = |s: String| Err(AutoRootError::InconsistentResidues(s));
        if m == 0 {
            return bad("m must be positive".into());
        }
        let lattice = d.lattice_period();
        if period.len() != lattice.len()
            || period
                .iter()
                .zip(&lattice)
                .any(|(p, l)| *p < 1 || p % l != 0)
        {
            return bad(format!(
                "period {period:?} is not a multiple of the lattice period {lattice:?}"
            ));
        }
        let expected: BTreeSet<ClassKey> = d
            .cosets()
            .iter()
            .flat_map(|c| {
                c.shifts
                    .residues_mod(&period)
                    .into_iter()
                    .map(move |r| (c.rep.clone(), r))
            })
            .collect();
        let given: BTreeSet<ClassKey> = classes.keys().cloned().collect();
        if let Some((rep, r)) = expected.difference(&given).next() {
            return bad(format!(
                "root class {} + {r:?} has no residues",
                vec_to_string(rep)
            ));
        }
        if let Some((rep, r)) = given.difference(&expected).next() {
            return bad(format!(
                "{} + {r:?} is not a root class",
                vec_to_string(rep)
            ));
        }
        for ((rep, r), set) in &classes {
            if set.is_empty() {
                return bad(format!(
                    "root class {} + {r:?} lies in no R_i",
                    vec_to_string(rep)
                ));
            }
            if let Some(i) = set.iter().find(|&&i| i >= m) {
                return bad(format!("residue {i} out of range for m = {m}"));
            }
        }
        let a = ResidueAssignment { m, period, classes };
        for ((rep, r), set) in &a.classes {
            let neg = vneg(&d.root_at(rep, r));
            let key = a.key(d, &neg)?;
            let want: BTreeSet<u64> = set.iter().map(|&i| (m - i) % m).collect();
            if a.classes.get(&key) != Some(&want) {
                return bad(format!("-R_i != R_(-i) at {}", vec_to_string(&neg)));
            }
        }
        Ok(a)
    }

    /// Builds the assignment by evaluating `f` on one root of each class.
    pub fn from_fn(
        d: &RootDatum,
        m: u64,
        period: Option<Vec<i64>>,
        mut f: impl FnMut(&RatVector) -> BTreeSet<u64>,
    ) -> Result<Self, AutoRootError> {
        let period = period.unwrap_or_else(|| d.lattice_period());
        let mut classes = BTreeMap::new();
        for c in d.cosets() {
            for r in c.shifts.residues_mod(&period) {
                let set = f(&d.root_at(&c.rep, &r));
                classes.insert((c.rep.clone(), r), set);
            }
        }
        ResidueAssignment::new(d, m, period, classes)
    }

    /// Root-level default when no algebra is at hand. A nonisotropic root of
    /// `σ`-length `ℓ` gets the residues `i` with `ℓ i ≡ 0 (mod m)`, as if
    /// `σ^ℓ` acted trivially on its root space; an isotropic one gets `0̄`
    /// and every `ī` with `ζ^i` an eigenvalue of `σ`. Classes with equal
    /// `π` values are then merged. Needs `σ` to fix the isotropic basis.
    pub fn orbit_rule(sigma: &RootAutomorphism, d: &RootDatum) -> Result<Self, AutoRootError> {
        if !sigma.fixes_isotropic_basis() {
            return Err(AutoRootError::InconsistentResidues(
                "the orbit rule needs σ to fix the isotropic basis".into(),
            ));
        }
        let m = sigma.period();
        let eigen = eigenvalue_residues(sigma);
        let mut isotropic = eigen;
        isotropic.insert(0);
        let period = d.lattice_period();
        let mut raw = BTreeMap::new();
        for c in d.cosets() {
            let set: BTreeSet<u64> = if is_nonisotropic(d, &c.rep) {
                let len = sigma
                    .sigma_length(d, &d.root_at(&c.rep, &c.shifts.residues_mod(&period)[0]))?;
                (0..m).filter(|i| (len * i) % m == 0).collect()
            } else {
                isotropic.clone()
            };
            for r in c.shifts.residues_mod(&period) {
                raw.insert((c.rep.clone(), r), set.clone());
            }
        }
        let mut merged: BTreeMap<(RatVector, Vec<i64>), BTreeSet<u64>> = BTreeMap::new();
        let g = sigma.orbit_gcd(&period);
        let pi_class = |key: &ClassKey| pi_class(sigma, d, key, &g);
        for (key, set) in &raw {
            merged.entry(pi_class(key)).or_default().extend(set);
        }
        let classes = raw
            .keys()
            .map(|k| (k.clone(), merged[&pi_class(k)].clone()))
            .collect();
        ResidueAssignment::new(d, m, period, classes)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn period(&self) -> &[i64] {
        &self.period
    }

    pub fn classes(&self) -> &BTreeMap<ClassKey, BTreeSet<u64>> {
        &self.classes
    }

    fn key(
        &self,
        d: &RootDatum,
        root: &[crate::exactnum::Rational],
    ) -> Result<ClassKey, AutoRootError> {
        let (rep, t) = d.canonicalize(root)?;
        Ok((rep, reduce(&t, &self.period)))
    }

    /// Residues `ī` with `root ∈ R_ī`; `None` off `R`.
    pub fn residues_of(
        &self,
        d: &RootDatum,
        root: &[crate::exactnum::Rational],
    ) -> Option<&BTreeSet<u64>> {
        self.classes.get(&self.key(d, root).ok()?)
    }

    /// `π(α) = π(β) ⟹ (α ∈ R_ī ⟺ β ∈ R_ī)`, decided exactly on classes.
    pub fn check_pi_consistency(
        &self,
        sigma: &RootAutomorphism,
        d: &RootDatum,
    ) -> Result<(), AutoRootError> {
        if sigma.period() != self.m {
            return Err(AutoRootError::InconsistentResidues(format!(
                "residues modulo {} for σ of period {}",
                self.m,
                sigma.period()
            )));
        }
        let g = sigma.orbit_gcd(&self.period);
        let mut seen: BTreeMap<ClassKey, (&ClassKey, &BTreeSet<u64>)> = BTreeMap::new();
        for (key, set) in &self.classes {
            let pk = pi_class(sigma, d, key, &g);
            if let Some((other, s)) = seen.get(&pk) {
                if *s != set {
                    return Err(AutoRootError::InconsistentResidues(format!(
                        "{} and {} have equal π but different residues",
                        vec_to_string(&d.root_at(&key.0, &key.1)),
                        vec_to_string(&d.root_at(&other.0, &other.1))
                    )));
                }
            } else {
                seen.insert(pk, (key, set));
            }
        }
        Ok(())
    }
}

/// Roots of a class `(rep, r mod P)` all have `π = p + uη` with `u` running
/// through one residue class modulo `g` (orbitwise gcd of `P`); this returns
/// `(p, u mod g)`. Two classes share a `π` value iff the keys agree.
fn pi_class(sigma: &RootAutomorphism, d: &RootDatum, key: &ClassKey, g: &[i64]) -> ClassKey {
    let (p, t) = sigma.pi_key(&d.root_at(&key.0, &key.1));
    (p, reduce(&t, g))
}

/// `i ∈ [0, m)` such that `ζ_m^i` is an eigenvalue of `σ`.
fn eigenvalue_residues(sigma: &RootAutomorphism) -> BTreeSet<u64> {
    let m = sigma.period();
    let field = CyclotomicField::new(m);
    let n = sigma.matrix().rows();
    let lifted: Vec<Vec<_>> = sigma
        .matrix()
        .as_rows()
        .iter()
        .map(|row| row.iter().map(|x| field.from_rational(x)).collect())
        .collect();
    (0..m)
        .filter(|&i| {
            let z = field.zeta_pow(i as i64);
            let shifted: Vec<Vec<_>> = lifted
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(c, x)| if r == c { field.sub(x, &z) } else { x.clone() })
                        .collect()
                })
                .collect();
            !kernel(&field, &shifted, n).is_empty()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::exactnum::{int, ivec, zero_vec, RatMatrix};
    use crate::gcm::DiagramAutomorphism;

    #[test]
    fn orbit_rule_on_a2_flip() {
        let d = finite("A_2");
        let s =
            RootAutomorphism::new(&d, RatMatrix::from_i64(&[vec![0, 1], vec![1, 0]]), 2).unwrap();
        let r = ResidueAssignment::orbit_rule(&s, &d).unwrap();
        assert_eq!(
            r.residues_of(&d, &ivec(&[1, 0])).unwrap(),
            &[0, 1].into_iter().collect()
        );
        assert_eq!(
            r.residues_of(&d, &ivec(&[1, 1])).unwrap(),
            &[0].into_iter().collect()
        );
        assert_eq!(
            r.residues_of(&d, &zero_vec(2)).unwrap(),
            &[0, 1].into_iter().collect()
        );
        r.check_pi_consistency(&s, &d).unwrap();
    }

    #[test]
    fn invariants_are_enforced() {
        let d = finite("A_1");
        let all = |_: &RatVector| [0u64, 1].into_iter().collect();
        assert!(ResidueAssignment::from_fn(&d, 2, None, all).is_ok());
        let empty = |v: &RatVector| {
            if v[0] > int(0) {
                BTreeSet::new()
            } else {
                [0].into_iter().collect()
            }
        };
        assert!(ResidueAssignment::from_fn(&d, 2, None, empty).is_err());
        // ±α ∈ R_1 only: breaks −R_ī = R_{−ī} for m = 3.
        let skew = |v: &RatVector| {
            if v[0] == int(0) {
                [0u64].into_iter().collect()
            } else {
                [1u64].into_iter().collect()
            }
        };
        assert!(ResidueAssignment::from_fn(&d, 3, None, skew).is_err());
        let out_of_range = |_: &RatVector| [5u64].into_iter().collect();
        assert!(ResidueAssignment::from_fn(&d, 2, None, out_of_range).is_err());
    }

    #[test]
    fn pi_consistency_catches_split_classes() {
        let (g, d) = affine("A_2^(1)");
        let s = RootAutomorphism::from_diagram(
            &d,
            &DiagramAutomorphism::new(&g, vec![0, 2, 1]).unwrap(),
        )
        .unwrap();
        // α_1 and α_2 share π, but only α_1 is denied the odd residue.
        let a1 = ivec(&[0, 1, 0]);
        let r = ResidueAssignment::from_fn(&d, 2, None, |v| {
            let (rep, _) = d.canonicalize(v).unwrap();
            let (r1, _) = d.canonicalize(&a1).unwrap();
            let (r1n, _) = d.canonicalize(&vneg(&a1)).unwrap();
            if rep == r1 || rep == r1n {
                [0u64].into_iter().collect()
            } else {
                [0u64, 1].into_iter().collect()
            }
        })
        .unwrap();
        assert!(r.check_pi_consistency(&s, &d).is_err());
        ResidueAssignment::orbit_rule(&s, &d)
            .unwrap()
            .check_pi_consistency(&s, &d)
            .unwrap();
    }
}
