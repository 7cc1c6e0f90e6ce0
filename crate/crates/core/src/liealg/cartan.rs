use std::collections::{BTreeMap, BTreeSet};

use super::algebra::{to_dense, Elt, GradedAlgebra};
use super::automorphism::AlgebraAutomorphism;
use super::LieError;
use crate::ears::{Coset, RootDatum, ShiftSet};
use crate::exactnum::{
    int, rat, solve, vec_to_string, zero_vec, Field, RatMatrix, RatVector, Rational,
};

/// A chosen abelian subalgebra `h` in degree zero together with the weight of
/// every basis element. `derivations[j]` is the position in `h` of the
/// element acting by `p_j` on degree `p`.
#[derive(Debug, Clone)]
pub struct CartanData<F: Field> {
    h: Vec<Elt<F::Elem>>,
    derivations: Vec<usize>,
    weights: Vec<RatVector>,
    gram: RatMatrix,
    dual: RatMatrix,
}

fn rational<F: Field>(f: &F, x: &F::Elem) -> Result<Rational, LieError> {
    f.to_rational(x)
        .ok_or_else(|| LieError::NotRational(f.render(x)))
}

impl<F: Field> CartanData<F> {
    /// Reads off weights, failing unless every basis element is a common
    /// eigenvector of `ad h` with rational eigenvalues.
    pub fn new(
        g: &GradedAlgebra<F>,
        h: Vec<Elt<F::Elem>>,
        derivations: Vec<usize>,
    ) -> Result<Self, LieError> {
        let f = g.field();
        let k = g.grading_rank();
        if derivations.len() != k || derivations.iter().any(|&d| d >= h.len()) {
            return Err(LieError::Malformed(format!(
                "need {k} degree derivations inside h"
            )));
        }
        let zero = vec![0i64; k];
        for x in &h {
            if g.degree_of(x).is_some_and(|d| d != zero) || x.is_empty() {
                return Err(LieError::Malformed("h must lie in degree zero".into()));
            }
        }
        for (a, x) in h.iter().enumerate() {
            for y in &h[a + 1..] {
                if !g.bracket(x, y).expect("degree zero").is_empty() {
                    return Err(LieError::Malformed("h is not abelian".into()));
                }
            }
        }
        let mut weights = Vec::with_capacity(g.dim());
        for i in 0..g.dim() {
            let b = g.basis(i);
            let mut w = Vec::with_capacity(h.len());
            for x in &h {
                let v = g.bracket(x, &b).expect("degree zero");
                let c = v.get(&i).cloned().unwrap_or_else(|| f.zero());
                if v.len() > usize::from(!f.is_zero(&c)) {
                    return Err(LieError::NotDiagonal(g.name(i).to_string()));
                }
                w.push(rational(f, &c)?);
            }
            for (j, &d) in derivations.iter().enumerate() {
                if w[d] != int(g.degree(i)[j]) {
                    return Err(LieError::Malformed(format!(
                        "derivation {j} does not measure the degree of {}",
                        g.name(i)
                    )));
                }
            }
            weights.push(w);
        }
        let mut gram = RatMatrix::zeros(h.len(), h.len());
        for (a, x) in h.iter().enumerate() {
            for (b, y) in h.iter().enumerate() {
                gram.set(a, b, rational(f, &g.form(x, y))?);
            }
        }
        let dual = gram
            .inverse()
            .map_err(|_| LieError::DegenerateForm("the form is degenerate on h".into()))?;
        Ok(CartanData {
            h,
            derivations,
            weights,
            gram,
            dual,
        })
    }

    pub fn h(&self) -> &[Elt<F::Elem>] {
        &self.h
    }

    pub fn rank(&self) -> usize {
        self.h.len()
    }

    pub fn derivations(&self) -> &[usize] {
        &self.derivations
    }

    pub fn weight(&self, i: usize) -> &RatVector {
        &self.weights[i]
    }

    pub fn weights(&self) -> &[RatVector] {
        &self.weights
    }

    /// `(h_a, h_b)`.
    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    /// The induced form on `h*` in evaluation coordinates.
    pub fn dual_form(&self) -> &RatMatrix {
        &self.dual
    }

    pub fn pair(&self, a: &[Rational], b: &[Rational]) -> Rational {
        self.dual.bilinear(a, b)
    }

    pub fn is_isotropic(&self, a: &[Rational]) -> bool {
        self.pair(a, a) == int(0)
    }

    /// Weight → basis indices spanning its weight space; includes `0`.
    pub fn weight_spaces(&self) -> BTreeMap<RatVector, Vec<usize>> {
        let mut out: BTreeMap<RatVector, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.weights.iter().enumerate() {
            out.entry(w.clone()).or_default().push(i);
        }
        out
    }

    /// The weight measuring degree `j`: one on the `j`-th derivation, zero on
    /// the rest of `h`.
    pub fn delta(&self, j: usize) -> RatVector {
        let mut v = zero_vec(self.h.len());
        v[self.derivations[j]] = int(1);
        v
    }

    pub fn degree_of_weight(&self, w: &[Rational]) -> Option<Vec<i64>> {
        self.derivations
            .iter()
            .map(|&d| {
                if w[d].is_integer() {
                    i64::try_from(w[d].to_integer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn map_field<G: Field>(&self, lift: impl Fn(&F::Elem) -> G::Elem) -> CartanData<G> {
        CartanData {
            h: self
                .h
                .iter()
                .map(|x| x.iter().map(|(i, c)| (*i, lift(c))).collect())
                .collect(),
            derivations: self.derivations.clone(),
            weights: self.weights.clone(),
            gram: self.gram.clone(),
            dual: self.dual.clone(),
        }
    }

    /// Matrix of `σ|_h` in the basis `h` (columns are images).
    pub fn restrict(
        &self,
        g: &GradedAlgebra<F>,
        sigma: &AlgebraAutomorphism<F>,
    ) -> Result<RatMatrix, LieError> {
        let f = g.field();
        let idx: Vec<usize> = self
            .h
            .iter()
            .flat_map(|x| x.keys().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let cols: Vec<Vec<F::Elem>> = self.h.iter().map(|x| to_dense(f, x, &idx)).collect();
        let rows: Vec<Vec<F::Elem>> = (0..idx.len())
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        let mut out = RatMatrix::zeros(self.h.len(), self.h.len());
        for (a, x) in self.h.iter().enumerate() {
            let img = sigma.apply(x);
            if img.keys().any(|i| !idx.contains(i)) {
                return Err(LieError::BadAutomorphism("σ does not preserve h".into()));
            }
            let coef = solve(f, &rows, &to_dense(f, &img, &idx))
                .ok_or_else(|| LieError::BadAutomorphism("σ does not preserve h".into()))?;
            for (b, c) in coef.iter().enumerate() {
                out.set(b, a, rational(f, c)?);
            }
        }
        Ok(out)
    }

    /// `σ` on `h*` in evaluation coordinates: `λ ↦ λ ∘ σ⁻¹`.
    pub fn weight_action(
        &self,
        g: &GradedAlgebra<F>,
        sigma: &AlgebraAutomorphism<F>,
    ) -> Result<RatMatrix, LieError> {
        let s = self.restrict(g, sigma)?;
        Ok(s.inverse()
            .map_err(|_| LieError::BadAutomorphism("σ is singular on h".into()))?
            .transpose())
    }
}

/// `(1/m) Σ A^i`.
pub fn average(action: &RatMatrix, m: u64) -> RatMatrix {
    let n = action.rows();
    let mut acc = RatMatrix::zeros(n, n);
    let mut p = RatMatrix::identity(n);
    for _ in 0..m {
        acc = acc.add(&p).expect("square");
        p = action.mul(&p).expect("square");
    }
    acc.scale(&rat(1, m as i64))
}

/// Smallest `P` in `[1, N]^k` (by product, then lexicographic) such that the
/// observed set is exactly the points of the box in a union of residue
/// classes mod `P`.
fn infer_shifts(observed: &BTreeSet<Vec<i64>>, k: usize, n: i64) -> Option<ShiftSet> {
    let mut box_pts: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..k {
        box_pts = box_pts
            .into_iter()
            .flat_map(|v| (-n..=n).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    let mut periods: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..k {
        periods = periods
            .into_iter()
            .flat_map(|v| (1..=n.max(1)).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    periods.sort_by_key(|p| (p.iter().product::<i64>(), p.clone()));
    let reduce = |q: &[i64], p: &[i64]| -> Vec<i64> {
        q.iter().zip(p).map(|(a, b)| a.rem_euclid(*b)).collect()
    };
    for p in periods {
        let residues: BTreeSet<Vec<i64>> = observed.iter().map(|q| reduce(q, &p)).collect();
        if box_pts
            .iter()
            .all(|q| observed.contains(q) == residues.contains(&reduce(q, &p)))
        {
            return Some(ShiftSet::new(p, residues));
        }
    }
    None
}

/// The root datum whose windowed part is the set of weights, in evaluation
/// coordinates on `h` with the form induced on `h*`.
pub fn infer_root_datum<F: Field>(
    g: &GradedAlgebra<F>,
    cartan: &CartanData<F>,
) -> Result<RootDatum, LieError> {
    let dim = cartan.rank();
    let k = g.grading_rank();
    let form = cartan.dual_form().clone();
    let weights: BTreeSet<RatVector> = cartan.weights().iter().cloned().collect();
    if k == 0 {
        return Ok(RootDatum::finite(dim, form, weights.into_iter().collect())?);
    }
    let deltas: Vec<RatVector> = (0..k).map(|j| cartan.delta(j)).collect();
    let mut by_rep: BTreeMap<RatVector, BTreeSet<Vec<i64>>> = BTreeMap::new();
    for w in &weights {
        let p = cartan.degree_of_weight(w).ok_or_else(|| {
            LieError::Malformed(format!(
                "weight {} has no integral degree",
                vec_to_string(w)
            ))
        })?;
        let mut rep = w.clone();
        for (d, &pj) in deltas.iter().zip(&p) {
            for (r, x) in rep.iter_mut().zip(d) {
                *r -= x * int(pj);
            }
        }
        by_rep.entry(rep).or_default().insert(p);
    }
    let mut cosets = Vec::new();
    for (rep, observed) in by_rep {
        let shifts = infer_shifts(&observed, k, g.window()).ok_or_else(|| {
            LieError::Window(format!(
                "no periodic pattern for the roots {} + ...",
                vec_to_string(&rep)
            ))
        })?;
        cosets.push(Coset { rep, shifts });
    }
    Ok(RootDatum::new(dim, form, deltas, cosets, None)?)
}
