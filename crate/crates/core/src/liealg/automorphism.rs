use std::collections::BTreeSet;

use super::algebra::{add_scaled, basis_elt, from_dense, sub, to_dense, Elt, GradedAlgebra};
use super::LieError;
use crate::exactnum::{kernel, row_reduce, Field};

/// A finite-order automorphism given by the images of the basis.
#[derive(Debug, Clone)]
pub struct AlgebraAutomorphism<F: Field> {
    field: F,
    images: Vec<Elt<F::Elem>>,
    period: u64,
}

/// The eigenspaces `g_ī = {x : σx = ζ^i x}` computed on `σ`-stable blocks of
/// basis elements. Each block's vectors are in reduced echelon form.
#[derive(Debug, Clone)]
pub struct Eigenspaces<E> {
    pub m: u64,
    pub blocks: Vec<EigenBlock<E>>,
}

#[derive(Debug, Clone)]
pub struct EigenBlock<E> {
    pub indices: Vec<usize>,
    /// `spaces[i]` is a basis of the `ζ^i` eigenspace inside the block.
    pub spaces: Vec<Vec<Elt<E>>>,
}

impl<E: Clone> Eigenspaces<E> {
    pub fn component(&self, i: u64) -> Vec<Elt<E>> {
        self.blocks
            .iter()
            .flat_map(|b| b.spaces[i as usize].iter().cloned())
            .collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..self.m)
            .map(|i| self.blocks.iter().map(|b| b.spaces[i as usize].len()).sum())
            .collect()
    }
}

impl<F: Field> AlgebraAutomorphism<F> {
    /// Checks `σ^m = 1`, that `σ` preserves degrees, and `σ[x, y] = [σx, σy]`
    /// on in-window basis pairs.
    pub fn new(
        g: &GradedAlgebra<F>,
        images: Vec<Elt<F::Elem>>,
        period: u64,
    ) -> Result<Self, LieError> {
        if images.len() != g.dim() {
            return Err(LieError::BadAutomorphism(format!(
                "{} images for dimension {}",
                images.len(),
                g.dim()
            )));
        }
        if period == 0 {
            return Err(LieError::BadAutomorphism("period must be positive".into()));
        }
        for (i, x) in images.iter().enumerate() {
            if x.is_empty()
                || x.keys()
                    .any(|&j| j >= g.dim() || g.degree(j) != g.degree(i))
            {
                return Err(LieError::BadAutomorphism(format!(
                    "image of {} is not homogeneous of its degree",
                    g.name(i)
                )));
            }
        }
        let s = AlgebraAutomorphism {
            field: g.field().clone(),
            images,
            period,
        };
        let p = s.power(period);
        if let Some(i) = (0..g.dim()).find(|&i| p[i] != basis_elt(g.field(), i)) {
            return Err(LieError::BadAutomorphism(format!(
                "σ^{period} moves {}",
                g.name(i)
            )));
        }
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                let Some(v) = g.bracket_basis(i, j) else {
                    continue;
                };
                let left = s.apply(v);
                let right = g
                    .bracket(&s.images[i], &s.images[j])
                    .expect("degrees preserved");
                if left != right {
                    return Err(LieError::BadAutomorphism(format!(
                        "σ[{0}, {1}] != [σ{0}, σ{1}]",
                        g.name(i),
                        g.name(j)
                    )));
                }
            }
        }
        Ok(s)
    }

    pub fn identity(g: &GradedAlgebra<F>) -> Self {
        let images = (0..g.dim()).map(|i| basis_elt(g.field(), i)).collect();
        AlgebraAutomorphism {
            field: g.field().clone(),
            images,
            period: 1,
        }
    }

    /// `b_i ↦ ζ_m^{exps[i]} b_i`.
    pub fn diagonal(g: &GradedAlgebra<F>, exps: &[i64], m: u64) -> Result<Self, LieError> {
        let f = g.field();
        let images = exps
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let z = f.root_of_unity(m, e).ok_or(LieError::MissingRoot(m))?;
                Ok(Elt::from([(i, z)]))
            })
            .collect::<Result<Vec<_>, LieError>>()?;
        AlgebraAutomorphism::new(g, images, m)
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn images(&self) -> &[Elt<F::Elem>] {
        &self.images
    }

    pub fn apply(&self, x: &Elt<F::Elem>) -> Elt<F::Elem> {
        let mut out = Elt::new();
        for (i, c) in x {
            add_scaled(&self.field, &mut out, &self.images[*i], c);
        }
        out
    }

    /// Images of the basis under `σ^k`.
    pub fn power(&self, k: u64) -> Vec<Elt<F::Elem>> {
        let mut cur: Vec<Elt<F::Elem>> = (0..self.images.len())
            .map(|i| basis_elt(&self.field, i))
            .collect();
        for _ in 0..k {
            cur = cur.iter().map(|x| self.apply(x)).collect();
        }
        cur
    }

    /// `self ∘ other`.
    pub fn compose(
        &self,
        g: &GradedAlgebra<F>,
        other: &Self,
        period: u64,
    ) -> Result<Self, LieError> {
        let images = other.images.iter().map(|x| self.apply(x)).collect();
        AlgebraAutomorphism::new(g, images, period)
    }

    /// First basis pair with `(σx, σy) != (x, y)`.
    pub fn form_violation(&self, g: &GradedAlgebra<F>) -> Option<(usize, usize)> {
        let f = g.field();
        for i in 0..g.dim() {
            for j in i..g.dim() {
                let s = g.form(&self.images[i], &self.images[j]);
                if !f.is_zero(&f.sub(&s, &g.form_basis(i, j))) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn map_field<G: Field>(
        &self,
        g: G,
        lift: impl Fn(&F::Elem) -> G::Elem,
    ) -> AlgebraAutomorphism<G> {
        let images = self
            .images
            .iter()
            .map(|x| x.iter().map(|(i, c)| (*i, lift(c))).collect())
            .collect();
        AlgebraAutomorphism {
            field: g,
            images,
            period: self.period,
        }
    }

    /// Connected components of the support graph; each is `σ`-stable.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (i, x) in self.images.iter().enumerate() {
            for &j in x.keys() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut out: std::collections::BTreeMap<usize, Vec<usize>> =
            std::collections::BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            out.entry(r).or_default().push(i);
        }
        out.into_values().collect()
    }

    /// Needs `ζ_m` in the field.
    pub fn eigenspaces(&self) -> Result<Eigenspaces<F::Elem>, LieError> {
        let f = &self.field;
        let m = self.period;
        let zetas = (0..m)
            .map(|i| f.root_of_unity(m, i as i64).ok_or(LieError::MissingRoot(m)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut blocks = Vec::new();
        for idx in self.blocks() {
            let cols: Vec<Vec<F::Elem>> = idx
                .iter()
                .map(|&i| to_dense(f, &self.images[i], &idx))
                .collect();
            let mut spaces = Vec::with_capacity(m as usize);
            let mut total = 0;
            for z in &zetas {
                let rows: Vec<Vec<F::Elem>> = (0..idx.len())
                    .map(|r| {
                        (0..idx.len())
                            .map(|c| {
                                if r == c {
                                    f.sub(&cols[c][r], z)
                                } else {
                                    cols[c][r].clone()
                                }
                            })
                            .collect()
                    })
                    .collect();
                let ker = kernel(f, &rows, idx.len());
                let reduced = row_reduce(f, &ker, idx.len());
                total += reduced.rows.len();
                spaces.push(
                    reduced
                        .rows
                        .iter()
                        .map(|v| from_dense(f, v, &idx))
                        .collect(),
                );
            }
            if total != idx.len() {
                return Err(LieError::BadAutomorphism("σ is not diagonalizable".into()));
            }
            blocks.push(EigenBlock {
                indices: idx,
                spaces,
            });
        }
        Ok(Eigenspaces { m, blocks })
    }

    /// `(1/m) Σ_k ζ^{−ik} σ^k x`, the component of `x` in `g_ī`.
    pub fn project(&self, x: &Elt<F::Elem>, i: i64) -> Result<Elt<F::Elem>, LieError> {
        let f = &self.field;
        let m = self.period;
        let inv_m = f.inv(&f.from_int(m as i64)).expect("nonzero");
        let mut out = Elt::new();
        let mut cur = x.clone();
        for k in 0..m as i64 {
            let z = f.root_of_unity(m, -i * k).ok_or(LieError::MissingRoot(m))?;
            add_scaled(f, &mut out, &cur, &f.mul(&z, &inv_m));
            cur = self.apply(&cur);
        }
        Ok(out)
    }

    /// `{x ∈ span(vs) : σ^k x = x}` for a `σ^k`-stable span.
    pub fn fixed_in_span(&self, vs: &[Elt<F::Elem>], k: u64) -> Vec<Elt<F::Elem>> {
        let f = &self.field;
        if vs.is_empty() {
            return vec![];
        }
        let p = self.power(k);
        let idx: Vec<usize> = vs
            .iter()
            .flat_map(|v| v.keys().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let diffs: Vec<Elt<F::Elem>> = vs
            .iter()
            .map(|v| {
                let mut img = Elt::new();
                for (i, c) in v {
                    add_scaled(f, &mut img, &p[*i], c);
                }
                sub(f, &img, v)
            })
            .collect();
        let mut all_idx: BTreeSet<usize> = idx.iter().copied().collect();
        all_idx.extend(diffs.iter().flat_map(|d| d.keys().copied()));
        let all_idx: Vec<usize> = all_idx.into_iter().collect();
        let cols: Vec<Vec<F::Elem>> = diffs.iter().map(|d| to_dense(f, d, &all_idx)).collect();
        let rows: Vec<Vec<F::Elem>> = (0..all_idx.len())
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        kernel(f, &rows, vs.len())
            .iter()
            .map(|coef| {
                let mut out = Elt::new();
                for (v, c) in vs.iter().zip(coef) {
                    add_scaled(f, &mut out, v, c);
                }
                out
            })
            .collect()
    }
}
