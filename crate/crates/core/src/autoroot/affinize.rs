use std::collections::BTreeMap;

use super::{AutoRootError, ResidueAssignment, RootAutomorphism};
use crate::ears::{Coset, RootDatum, ShiftSet};
use crate::exactnum::{
    int, kernel, rank, span_basis, zero_vec, RatMatrix, RatVector, Rational, RationalField,
};

/// Ambient space `V^σ ⊕ ℚγ̃ ⊕ ℚδ̃` in coordinates of a basis of `V^σ`
/// followed by `γ̃` and `δ̃`.
#[derive(Debug, Clone)]
struct Ambient {
    fixed: RatMatrix,
    form: RatMatrix,
}

impl Ambient {
    fn new(sigma: &RootAutomorphism, d: &RootDatum) -> Result<Self, AutoRootError> {
        let basis = sigma.fixed_subspace();
        let f = basis.len();
        let fixed = RatMatrix::from_columns(&basis, d.dim());
        let restricted = fixed.transpose().mul(&d.form().mul(&fixed)?)?;
        let mut form = RatMatrix::zeros(f + 2, f + 2);
        for i in 0..f {
            for j in 0..f {
                form.set(i, j, restricted.get(i, j).clone());
            }
        }
        form.set(f, f + 1, int(1));
        form.set(f + 1, f, int(1));
        Ok(Ambient { fixed, form })
    }

    fn dim(&self) -> usize {
        self.fixed.cols() + 2
    }

    /// `v + i δ̃` for a `σ`-fixed `v`.
    fn embed(&self, v: &[Rational], i: i64) -> RatVector {
        let mut out = self.fixed.solve(v).expect("σ-fixed vector");
        out.push(int(0));
        out.push(int(i));
        out
    }

    fn delta(&self) -> RatVector {
        let mut v = zero_vec(self.dim());
        v[self.dim() - 1] = int(1);
        v
    }

    /// Radical of the form on `span(gens)`.
    fn radical_of_span(&self, gens: &[RatVector]) -> Vec<RatVector> {
        let span = span_basis(&RationalField, gens, self.dim());
        if span.is_empty() {
            return vec![];
        }
        let smat = RatMatrix::from_columns(&span, self.dim());
        let gram = smat
            .transpose()
            .mul(&self.form.mul(&smat).unwrap())
            .unwrap();
        gram.kernel()
            .iter()
            .map(|k| smat.mul_vec(k).unwrap())
            .collect()
    }
}

/// `R̃` together with the embedding of its ambient space.
#[derive(Debug, Clone)]
pub struct AffinizedDatum {
    pub datum: RootDatum,
    ambient: Ambient,
}

impl AffinizedDatum {
    /// `π(α) + i δ̃` in the coordinates of the datum.
    pub fn embed(&self, fixed: &[Rational], i: i64) -> RatVector {
        self.ambient.embed(fixed, i)
    }

    pub fn delta(&self) -> RatVector {
        self.ambient.delta()
    }

    /// Basis of `V^σ` in the coordinates of the input datum.
    pub fn fixed_basis(&self) -> Vec<RatVector> {
        (0..self.ambient.fixed.cols())
            .map(|j| self.ambient.fixed.column(j))
            .collect()
    }

    /// The form before the datum rescaled it: the input form on `V^σ`,
    /// `(γ̃, δ̃) = 1`, `(γ̃, γ̃) = (δ̃, δ̃) = 0`.
    pub fn ambient_form(&self) -> &RatMatrix {
        &self.ambient.form
    }
}

/// `R̃ = ⋃_i (π(R_ī) + i δ̃)`. Isotropic lattice: one `π(δ_j)` per
/// `σ`-orbit on the isotropic basis, then `δ̃`.
pub fn affinized_root_datum(
    sigma: &RootAutomorphism,
    d: &RootDatum,
    residues: &ResidueAssignment,
) -> Result<AffinizedDatum, AutoRootError> {
    residues.check_pi_consistency(sigma, d)?;
    let ambient = Ambient::new(sigma, d)?;
    let m = i64::try_from(sigma.period()).expect("small period");
    let mut basis: Vec<RatVector> = sigma.eta().iter().map(|e| ambient.embed(e, 0)).collect();
    basis.push(ambient.delta());
    let mut by_rep: BTreeMap<RatVector, ShiftSet> = BTreeMap::new();
    for ((rep, r), set) in residues.classes() {
        let class =
            ShiftSet::new(residues.period().to_vec(), [r.clone()]).orbit_sums(sigma.iso_orbits());
        let steps = ShiftSet::new(vec![m], set.iter().map(|&i| vec![i as i64]));
        let shifts = class.product(&steps);
        let key = ambient.embed(&sigma.pi(rep), 0);
        let entry = by_rep
            .entry(key)
            .or_insert_with(|| ShiftSet::empty(basis.len()));
        *entry = entry.union(&shifts);
    }
    let cosets = by_rep
        .into_iter()
        .map(|(rep, shifts)| Coset { rep, shifts })
        .collect();
    let datum = RootDatum::new(ambient.dim(), ambient.form.clone(), basis, cosets, None)?;
    Ok(AffinizedDatum { datum, ambient })
}

/// Basis of `(V⁰)^σ` in the coordinates of `d`.
pub(crate) fn fixed_radical(sigma: &RootAutomorphism, d: &RootDatum) -> Vec<RatVector> {
    let rad = d.radical();
    if rad.is_empty() {
        return vec![];
    }
    let y = RatMatrix::from_columns(&rad, d.dim());
    let diff = sigma
        .matrix()
        .sub(&RatMatrix::identity(d.dim()))
        .expect("square")
        .mul(&y)
        .expect("dimension");
    kernel(&RationalField, diff.as_rows(), rad.len())
        .iter()
        .map(|c| y.mul_vec(c).unwrap())
        .collect()
}

/// `Ṽ⁰ = (V⁰)^σ ⊕ ℚδ̃`, checked as an identity of subspaces. `span(R̃)` is
/// `π(span R) + ℚδ̃` for every residue assignment, so no residues are
/// needed.
pub fn nondegeneracy_transfer(
    sigma: &RootAutomorphism,
    d: &RootDatum,
) -> Result<bool, AutoRootError> {
    if !d.check_nondegenerate() {
        return Err(AutoRootError::Degenerate);
    }
    let ambient = Ambient::new(sigma, d)?;
    let mut gens: Vec<RatVector> = d
        .cosets()
        .iter()
        .map(|c| ambient.embed(&sigma.pi(&c.rep), 0))
        .collect();
    gens.extend(sigma.eta().iter().map(|e| ambient.embed(e, 0)));
    gens.push(ambient.delta());
    let radical = ambient.radical_of_span(&gens);
    let mut structural: Vec<RatVector> = fixed_radical(sigma, d)
        .iter()
        .map(|v| ambient.embed(v, 0))
        .collect();
    structural.push(ambient.delta());
    let independent = rank(&RationalField, &structural) == structural.len();
    let mut both = radical.clone();
    both.extend(structural.iter().cloned());
    let r = rank(&RationalField, &radical);
    Ok(independent && r == structural.len() && rank(&RationalField, &both) == r)
}
