use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::shift::box_points;
use super::{EarsError, ShiftSet};
use crate::exactnum::{
    int, rank, span_basis, vadd, vec_to_string, vneg, vscale, zero_vec, CyclotomicField, Field,
    RatMatrix, RatVector, Rational, RationalField,
};
use crate::rootsys::{FiniteRootSystem, TypeLabel};

/// `{rep + Σ n_i δ_i : n ∈ shifts}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    pub rep: RatVector,
    pub shifts: ShiftSet,
}

/// A root set `R` in `ℚ^dim` with a positive semidefinite form.
#[derive(Debug, Clone)]
pub struct RootDatum {
    dim: usize,
    form: RatMatrix,
    isotropic_basis: Vec<RatVector>,
    cosets: Vec<Coset>,
    m_period: Option<u64>,
    coords: LatticeCoords,
}

/// Splits vectors as `rep + Σ t_i δ_i` with integer `t` and the lattice
/// coordinates of `rep` in `[0, 1)`.
#[derive(Debug, Clone)]
pub struct LatticeCoords {
    basis: Vec<RatVector>,
    /// Inverse of `[δ_1 … δ_k | completion]`.
    inverse: RatMatrix,
}

impl LatticeCoords {
    pub fn new(dim: usize, basis: &[RatVector]) -> Result<Self, EarsError> {
        if rank(&RationalField, basis) != basis.len() {
            return Err(EarsError::Malformed(
                "isotropic basis is linearly dependent".into(),
            ));
        }
        let mut cols = basis.to_vec();
        for i in 0..dim {
            let mut e = zero_vec(dim);
            e[i] = int(1);
            let mut trial = cols.clone();
            trial.push(e.clone());
            if rank(&RationalField, &trial) == trial.len() {
                cols.push(e);
            }
        }
        Ok(LatticeCoords {
            basis: basis.to_vec(),
            inverse: RatMatrix::from_columns(&cols, dim).inverse()?,
        })
    }

    pub fn canonicalize(&self, v: &[Rational]) -> Result<(RatVector, Vec<i64>), EarsError> {
        let c = self.inverse.mul_vec(v)?;
        let mut rep = v.to_vec();
        let mut t = Vec::with_capacity(self.basis.len());
        for (ci, delta) in c.iter().zip(&self.basis) {
            let f = floor_i64(ci)
                .ok_or_else(|| EarsError::Malformed("lattice coordinate overflow".into()))?;
            if f != 0 {
                rep = vadd(&rep, &vscale(&int(-f), delta));
            }
            t.push(f);
        }
        Ok((rep, t))
    }
}

#[derive(Debug, Clone)]
pub struct RootSplit {
    pub isotropic: Vec<Coset>,
    pub nonisotropic: Vec<Coset>,
}

/// `R̄ ⊂ span(R)/V⁰` in the coordinates of a chosen complement.
#[derive(Debug, Clone)]
pub struct BarImage {
    pub system: FiniteRootSystem,
    /// Basis of the complement of `V⁰` in `span(R)`, ambient coordinates.
    pub complement: Vec<RatVector>,
}

/// A complement of `V⁰` in `span(R)` with its Gram matrix.
#[derive(Debug, Clone)]
pub struct BarFrame {
    pub complement: Vec<RatVector>,
    /// `G c` for each complement vector `c`.
    paired: Vec<RatVector>,
    pub gram: RatMatrix,
    gram_inv: RatMatrix,
}

impl BarFrame {
    /// Coordinates of the image of `v ∈ span(R)` in `span(R)/V⁰`.
    pub fn coords(&self, v: &[Rational]) -> RatVector {
        let pairings: RatVector = self.paired.iter().map(|gc| dot(v, gc)).collect();
        self.gram_inv.mul_vec(&pairings).expect("dimension")
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ea5bResult {
    pub ok: bool,
    /// Isotropic roots `δ` for which no `α ∈ R^×` has `α + δ ∈ R`.
    pub failing: Vec<RatVector>,
}

impl Ea5bResult {
    pub fn failing_delta(&self) -> Option<&RatVector> {
        self.failing.first()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EalaRootReport {
    pub nullity: usize,
    #[serde(rename = "type")]
    pub type_label: TypeLabel,
    /// Counts of coset generators.
    pub isotropic_count: usize,
    pub nonisotropic_count: usize,
    pub ea5a: bool,
    pub ea5b: bool,
    pub nondegenerate: bool,
}

fn floor_i64(r: &Rational) -> Option<i64> {
    r.floor().to_integer().to_i64()
}

impl RootDatum {
    /// Canonicalizes cosets, checks the axioms of a root datum and rescales
    /// the form so that the smallest nonzero norm on `R^×` is 2.
    pub fn new(
        dim: usize,
        form: RatMatrix,
        isotropic_basis: Vec<RatVector>,
        cosets: Vec<Coset>,
        m_period: Option<u64>,
    ) -> Result<Self, EarsError> {
        if form.rows() != dim || form.cols() != dim {
            return Err(EarsError::Malformed(format!(
                "form is {}x{}, dim is {dim}",
                form.rows(),
                form.cols()
            )));
        }
        if !form.is_symmetric() {
            return Err(EarsError::Malformed("form is not symmetric".into()));
        }
        let k = isotropic_basis.len();
        if isotropic_basis.iter().any(|d| d.len() != dim) {
            return Err(EarsError::Malformed(
                "isotropic basis vector of wrong length".into(),
            ));
        }
        if rank(&RationalField, &isotropic_basis) != k {
            return Err(EarsError::Malformed(
                "isotropic basis is linearly dependent".into(),
            ));
        }
        for c in &cosets {
            if c.rep.len() != dim {
                return Err(EarsError::Malformed(format!(
                    "coset rep {} has wrong length",
                    vec_to_string(&c.rep)
                )));
            }
            if c.shifts.rank() != k {
                return Err(EarsError::Malformed(format!(
                    "coset {} has shifts of rank {}, expected {k}",
                    vec_to_string(&c.rep),
                    c.shifts.rank()
                )));
            }
        }
        if m_period == Some(0) {
            return Err(EarsError::Malformed("m_period must be positive".into()));
        }
        let coords = LatticeCoords::new(dim, &isotropic_basis)?;
        let mut d = RootDatum {
            dim,
            form,
            isotropic_basis,
            cosets: Vec::new(),
            m_period,
            coords,
        };
        let mut merged: BTreeMap<RatVector, ShiftSet> = BTreeMap::new();
        for c in cosets {
            let (rep, t) = d.canonicalize(&c.rep)?;
            let s = c.shifts.translate(&t);
            let entry = merged.entry(rep).or_insert_with(|| ShiftSet::empty(k));
            *entry = entry.union(&s);
        }
        d.cosets = merged
            .into_iter()
            .filter(|(_, s)| !s.is_empty())
            .map(|(rep, shifts)| Coset { rep, shifts })
            .collect();
        d.validate()?;
        d.normalize();
        Ok(d)
    }

    /// Finite root set: every root is its own coset.
    pub fn finite(dim: usize, form: RatMatrix, roots: Vec<RatVector>) -> Result<Self, EarsError> {
        let cosets = roots
            .into_iter()
            .map(|rep| Coset {
                rep,
                shifts: ShiftSet::all(0),
            })
            .collect();
        RootDatum::new(dim, form, vec![], cosets, None)
    }

    /// `v = rep + Σ t_i δ_i` with `rep` canonical (lattice coordinates in `[0,1)`).
    pub fn canonicalize(&self, v: &[Rational]) -> Result<(RatVector, Vec<i64>), EarsError> {
        self.coords.canonicalize(v)
    }

    fn coset_index(&self, rep: &RatVector) -> Option<usize> {
        self.cosets.binary_search_by(|c| c.rep.cmp(rep)).ok()
    }

    /// `(coset index, lattice shift)` of `v` if `v ∈ R`.
    pub fn locate(&self, v: &[Rational]) -> Option<(usize, Vec<i64>)> {
        if v.len() != self.dim {
            return None;
        }
        let (rep, t) = self.canonicalize(v).ok()?;
        let i = self.coset_index(&rep)?;
        self.cosets[i].shifts.contains(&t).then_some((i, t))
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.locate(v).is_some()
    }

    fn validate(&self) -> Result<(), EarsError> {
        if !self.contains(&zero_vec(self.dim)) {
            return Err(EarsError::Axiom("0 is not a root".into()));
        }
        for c in &self.cosets {
            let (rep, t) = self.canonicalize(&vneg(&c.rep))?;
            let want = c.shifts.negate().translate(&t);
            let ok = self
                .coset_index(&rep)
                .is_some_and(|i| self.cosets[i].shifts == want);
            if !ok {
                return Err(EarsError::Axiom(format!(
                    "-R != R at coset {}",
                    vec_to_string(&c.rep)
                )));
            }
        }
        let span = self.span_basis();
        let smat = RatMatrix::from_columns(&span, self.dim);
        let gram = smat.transpose().mul(&self.form.mul(&smat)?)?;
        if let Some(w) = gram.psd_witness() {
            return Err(EarsError::NotSemidefinite(smat.mul_vec(&w)?));
        }
        for (i, delta) in self.isotropic_basis.iter().enumerate() {
            let bad = span.iter().any(|s| !self.form.bilinear(delta, s).is_zero());
            if bad {
                return Err(EarsError::Axiom(format!(
                    "isotropic basis vector {i} is not in the radical"
                )));
            }
        }
        let split = self.split_roots();
        for a in &split.isotropic {
            for b in &split.nonisotropic {
                if !self.pair(&a.rep, &b.rep).is_zero() {
                    return Err(EarsError::Axiom(format!(
                        "(R0, Rx) != 0: ({}, {}) != 0",
                        vec_to_string(&a.rep),
                        vec_to_string(&b.rep)
                    )));
                }
            }
        }
        Ok(())
    }

    fn normalize(&mut self) {
        let min = self
            .cosets
            .iter()
            .map(|c| self.form.bilinear(&c.rep, &c.rep))
            .filter(|n| !n.is_zero())
            .min();
        if let Some(min) = min {
            self.form = self.form.scale(&(int(2) / min));
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form(&self) -> &RatMatrix {
        &self.form
    }

    pub fn pair(&self, a: &[Rational], b: &[Rational]) -> Rational {
        self.form.bilinear(a, b)
    }

    pub fn isotropic_basis(&self) -> &[RatVector] {
        &self.isotropic_basis
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn m_period(&self) -> Option<u64> {
        self.m_period
    }

    pub fn with_m_period(mut self, m: Option<u64>) -> Self {
        self.m_period = m;
        self
    }

    /// Componentwise lcm of all coset periods.
    pub fn lattice_period(&self) -> Vec<i64> {
        let k = self.isotropic_basis.len();
        self.cosets.iter().fold(vec![1; k], |acc, c| {
            acc.iter()
                .zip(c.shifts.period())
                .map(|(a, b)| a.lcm(b))
                .collect()
        })
    }

    /// `rep + Σ n_i δ_i`.
    pub fn root_at(&self, rep: &[Rational], n: &[i64]) -> RatVector {
        let mut v = rep.to_vec();
        for (ni, d) in n.iter().zip(&self.isotropic_basis) {
            if *ni != 0 {
                v = vadd(&v, &vscale(&int(*ni), d));
            }
        }
        v
    }

    /// All roots whose lattice shift lies in `[-bound, bound]^k`.
    pub fn roots_in_box(&self, bound: i64) -> Vec<RatVector> {
        let k = self.isotropic_basis.len();
        let side = vec![2 * bound + 1; k];
        let mut out = Vec::new();
        for c in &self.cosets {
            for p in box_points(&side) {
                let n: Vec<i64> = p.iter().map(|x| x - bound).collect();
                if c.shifts.contains(&n) {
                    out.push(self.root_at(&c.rep, &n));
                }
            }
        }
        out.sort();
        out
    }

    /// RREF basis of `span(R)`.
    pub fn span_basis(&self) -> Vec<RatVector> {
        let mut gens: Vec<RatVector> = self.cosets.iter().map(|c| c.rep.clone()).collect();
        gens.extend(self.isotropic_basis.iter().cloned());
        span_basis(&RationalField, &gens, self.dim)
    }

    /// Basis of `V⁰ = {v ∈ span(R) : (v, span(R)) = 0}`.
    pub fn radical(&self) -> Vec<RatVector> {
        let span = self.span_basis();
        if span.is_empty() {
            return vec![];
        }
        let smat = RatMatrix::from_columns(&span, self.dim);
        let gram = smat
            .transpose()
            .mul(&self.form.mul(&smat).unwrap())
            .unwrap();
        let ker = gram.kernel();
        let vecs: Vec<RatVector> = ker.iter().map(|k| smat.mul_vec(k).unwrap()).collect();
        span_basis(&RationalField, &vecs, self.dim)
    }

    pub fn nullity(&self) -> usize {
        self.radical().len()
    }

    pub fn split_roots(&self) -> RootSplit {
        let (iso, non): (Vec<Coset>, Vec<Coset>) = self
            .cosets
            .iter()
            .cloned()
            .partition(|c| self.pair(&c.rep, &c.rep).is_zero());
        RootSplit {
            isotropic: iso,
            nonisotropic: non,
        }
    }

    fn complement(&self) -> Vec<RatVector> {
        let mut chosen = self.radical();
        let base = chosen.len();
        for s in self.span_basis() {
            let mut trial = chosen.clone();
            trial.push(s.clone());
            if rank(&RationalField, &trial) == trial.len() {
                chosen.push(s);
            }
        }
        chosen.split_off(base)
    }

    /// Coordinates on `span(R)/V⁰` through a complement of `V⁰`.
    pub fn bar_frame(&self) -> Result<BarFrame, EarsError> {
        let complement = self.complement();
        let paired: Vec<RatVector> = complement
            .iter()
            .map(|c| self.form.mul_vec(c))
            .collect::<Result<_, _>>()?;
        let gram = RatMatrix::from_rows(
            complement
                .iter()
                .map(|a| paired.iter().map(|gb| dot(a, gb)).collect())
                .collect(),
        )?;
        let gram_inv = gram.inverse()?;
        Ok(BarFrame {
            complement,
            paired,
            gram,
            gram_inv,
        })
    }

    pub fn bar_image(&self) -> Result<BarImage, EarsError> {
        let split = self.split_roots();
        if split.nonisotropic.is_empty() {
            return Err(EarsError::NoNonisotropicRoots);
        }
        let frame = self.bar_frame()?;
        let roots: Vec<RatVector> = split
            .nonisotropic
            .iter()
            .map(|c| frame.coords(&c.rep))
            .collect();
        let system = FiniteRootSystem::new(roots, frame.gram.clone())?;
        Ok(BarImage {
            system,
            complement: frame.complement,
        })
    }

    /// The orthogonality graph on `R^×` is connected.
    pub fn check_ea5a(&self) -> bool {
        let non: Vec<RatVector> = self
            .split_roots()
            .nonisotropic
            .into_iter()
            .map(|c| c.rep)
            .collect();
        !non.is_empty() && crate::rootsys::orthogonality_components(&non, &self.form).len() == 1
    }

    /// For every `δ ∈ R⁰` some `α ∈ R^×` has `α + δ ∈ R`. Exhaustive over
    /// residues modulo the lattice period.
    pub fn check_ea5b(&self) -> Ea5bResult {
        let period = self.lattice_period();
        let split = self.split_roots();
        let mut failing = Vec::new();
        for iso in &split.isotropic {
            for n in iso.shifts.residues_mod(&period) {
                let found = split.nonisotropic.iter().any(|a| {
                    let Ok((rep, t)) = self.canonicalize(&vadd(&a.rep, &iso.rep)) else {
                        return false;
                    };
                    let Some(j) = self.coset_index(&rep) else {
                        return false;
                    };
                    a.shifts.residues_mod(&period).iter().any(|np| {
                        let total: Vec<i64> = n
                            .iter()
                            .zip(np)
                            .zip(&t)
                            .map(|((x, y), z)| x + y + z)
                            .collect();
                        self.cosets[j].shifts.contains(&total)
                    })
                });
                if !found {
                    failing.push(self.root_at(&iso.rep, &n));
                }
            }
        }
        Ea5bResult {
            ok: failing.is_empty(),
            failing,
        }
    }

    /// Generators of `span(R⁰)`: each isotropic residue and its translates by
    /// one period in every lattice direction.
    pub fn isotropic_generators(&self) -> Vec<RatVector> {
        let period = self.lattice_period();
        let mut out = Vec::new();
        for c in self.split_roots().isotropic {
            for n in c.shifts.residues_mod(&period) {
                out.push(self.root_at(&c.rep, &n));
                for i in 0..n.len() {
                    let mut m = n.clone();
                    m[i] += period[i];
                    out.push(self.root_at(&c.rep, &m));
                }
            }
        }
        out
    }

    /// Rank of `R⁰` over ℚ equals its rank over `ℚ(ζ_m)`.
    pub fn check_nondegenerate(&self) -> bool {
        let gens = self.isotropic_generators();
        let q_rank = rank(&RationalField, &gens);
        let field = CyclotomicField::new(self.m_period.unwrap_or(1));
        let lifted: Vec<Vec<_>> = gens
            .iter()
            .map(|g| g.iter().map(|x| field.from_rational(x)).collect())
            .collect();
        q_rank == rank(&field, &lifted)
    }

    pub fn report(&self) -> Result<EalaRootReport, EarsError> {
        let bar = self.bar_image()?;
        let split = self.split_roots();
        Ok(EalaRootReport {
            nullity: self.nullity(),
            type_label: bar.system.recognize()?,
            isotropic_count: split.isotropic.len(),
            nonisotropic_count: split.nonisotropic.len(),
            ea5a: self.check_ea5a(),
            ea5b: self.check_ea5b().ok,
            nondegenerate: self.check_nondegenerate(),
        })
    }
}
