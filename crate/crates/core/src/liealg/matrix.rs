//! `sl_n(A) ⊕ C ⊕ D` for `A` a quantum torus with `q_ij = ±1`. With no
//! variables this is `sl_n` itself.

use std::collections::HashMap;

use super::algebra::{add_term, Elt, GradedAlgebra};
use super::automorphism::AlgebraAutomorphism;
use super::cartan::CartanData;
use super::LieError;
use crate::coords::{mat_mul, mat_sub, matrix_star, QuantumTorus, TorusElement, TorusMatrix};
use crate::exactnum::{int, Field, Rational, RationalField};

/// A basis label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixBasis {
    /// `t^p e_ij`, `i != j`.
    Root {
        p: Vec<i64>,
        i: usize,
        j: usize,
    },
    /// `t^p (e_kk − e_{k+1,k+1})`.
    Cartan {
        p: Vec<i64>,
        k: usize,
    },
    /// `t^p e_11` for noncentral `t^p`.
    Trace {
        p: Vec<i64>,
    },
    Central(usize),
    Derivation(usize),
}

impl MatrixBasis {
    pub fn degree(&self, nu: usize) -> Vec<i64> {
        match self {
            MatrixBasis::Root { p, .. }
            | MatrixBasis::Cartan { p, .. }
            | MatrixBasis::Trace { p } => p.clone(),
            _ => vec![0; nu],
        }
    }
}

fn suffix(p: &[i64]) -> String {
    if p.is_empty() {
        String::new()
    } else {
        format!("@{p:?}").replace(' ', "")
    }
}

fn label_name(l: &MatrixBasis) -> String {
    match l {
        MatrixBasis::Root { p, i, j } => format!("e{}{}{}", i + 1, j + 1, suffix(p)),
        MatrixBasis::Cartan { p, k } => format!("h{}{}", k + 1, suffix(p)),
        MatrixBasis::Trace { p } => format!("s{}", suffix(p)),
        MatrixBasis::Central(j) => format!("c{}", j + 1),
        MatrixBasis::Derivation(j) => format!("d{}", j + 1),
    }
}

/// `sl_n(A_q) ⊕ C ⊕ D` truncated to `[−N, N]^ν`, with bracket
/// `[x, y] + Σ_i ([d_i, x], y) c_i` and form `s·ε(tr(xy))`, `(c_i, d_j) = δ_ij`.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    layout: Layout,
    pub algebra: GradedAlgebra<RationalField>,
    pub cartan: CartanData<RationalField>,
}

#[derive(Debug, Clone)]
struct Layout {
    n: usize,
    torus: QuantumTorus,
    scale: Rational,
    labels: Vec<MatrixBasis>,
    index: HashMap<MatrixBasis, usize>,
}

fn box_points(nu: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..nu {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| (-r..=r).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

impl MatrixAlgebra {
    pub fn new(
        n: usize,
        torus: QuantumTorus,
        window: i64,
        scale: Rational,
    ) -> Result<Self, LieError> {
        if n < 2 {
            return Err(LieError::Malformed(format!("sl_{n} needs n >= 2")));
        }
        if !torus.is_signs() {
            return Err(LieError::Malformed(
                "quantum torus parameters must be ±1".into(),
            ));
        }
        let nu = torus.nu();
        let window = if nu == 0 { 0 } else { window };
        let mut labels = Vec::new();
        for p in box_points(nu, window) {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        labels.push(MatrixBasis::Root { p: p.clone(), i, j });
                    }
                }
            }
            for k in 0..n - 1 {
                labels.push(MatrixBasis::Cartan { p: p.clone(), k });
            }
            if !torus.is_central(&p) {
                labels.push(MatrixBasis::Trace { p: p.clone() });
            }
        }
        labels.extend((0..nu).map(MatrixBasis::Central));
        labels.extend((0..nu).map(MatrixBasis::Derivation));
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let layout = Layout {
            n,
            torus,
            scale,
            labels,
            index,
        };
        let names = layout.labels.iter().map(label_name).collect();
        let degrees = layout.labels.iter().map(|l| l.degree(nu)).collect();
        let mut algebra =
            GradedAlgebra::from_tables(RationalField, names, degrees, window, [], [])?;
        layout.fill(&mut algebra)?;
        let zero = vec![0; nu];
        let unit = |l: MatrixBasis| Elt::from([(layout.index[&l], int(1))]);
        let mut h: Vec<Elt<Rational>> = (0..n - 1)
            .map(|k| unit(MatrixBasis::Cartan { p: zero.clone(), k }))
            .collect();
        h.extend((0..nu).map(|j| unit(MatrixBasis::Central(j))));
        h.extend((0..nu).map(|j| unit(MatrixBasis::Derivation(j))));
        let derivations = (0..nu).map(|j| n - 1 + nu + j).collect();
        let cartan = CartanData::new(&algebra, h, derivations)?;
        Ok(MatrixAlgebra {
            layout,
            algebra,
            cartan,
        })
    }

    /// `sl_n` with the Killing form `2n·tr(xy)`.
    pub fn sl(n: usize) -> Result<Self, LieError> {
        MatrixAlgebra::new(n, QuantumTorus::commutative(0), 0, int(2 * n as i64))
    }

    pub fn n(&self) -> usize {
        self.layout.n
    }

    pub fn torus(&self) -> &QuantumTorus {
        &self.layout.torus
    }

    pub fn labels(&self) -> &[MatrixBasis] {
        &self.layout.labels
    }

    pub fn index(&self, l: &MatrixBasis) -> Option<usize> {
        self.layout.index.get(l).copied()
    }

    pub fn matrix(&self, i: usize) -> Option<TorusMatrix<Rational>> {
        self.layout.matrix(i)
    }

    pub fn decompose(&self, m: &TorusMatrix<Rational>) -> Result<Elt<Rational>, LieError> {
        self.layout.decompose(m)
    }

    fn nu(&self) -> usize {
        self.layout.torus.nu()
    }

    /// Extends a map on matrices to `C ⊕ D` by the identity.
    pub fn matrix_automorphism(
        &self,
        map: impl Fn(&TorusMatrix<Rational>) -> Result<TorusMatrix<Rational>, LieError>,
        period: u64,
    ) -> Result<AlgebraAutomorphism<RationalField>, LieError> {
        let images = (0..self.layout.labels.len())
            .map(|i| match self.layout.matrix(i) {
                Some(m) => self.layout.decompose(&map(&m)?),
                None => Ok(Elt::from([(i, int(1))])),
            })
            .collect::<Result<Vec<_>, _>>()?;
        AlgebraAutomorphism::new(&self.algebra, images, period)
    }

    /// `x ↦ −x*`.
    pub fn neg_star(&self) -> Result<AlgebraAutomorphism<RationalField>, LieError> {
        let f = RationalField;
        self.matrix_automorphism(
            |m| {
                Ok(matrix_star(&self.layout.torus, &f, m)?
                    .iter()
                    .map(|r| r.iter().map(|x| x.neg(&f)).collect())
                    .collect())
            },
            2,
        )
    }

    /// The Chevalley involution `x ↦ −xᵀ`; needs `A` commutative.
    pub fn chevalley(&self) -> Result<AlgebraAutomorphism<RationalField>, LieError> {
        if !self.layout.torus.is_commutative() {
            return Err(LieError::BadAutomorphism(
                "the transpose is not an automorphism over a noncommutative torus".into(),
            ));
        }
        let f = RationalField;
        let n = self.layout.n;
        self.matrix_automorphism(
            |m| {
                Ok((0..n)
                    .map(|i| (0..n).map(|j| m[j][i].neg(&f)).collect())
                    .collect())
            },
            2,
        )
    }

    /// `Ad P` for the permutation matrix of `perm`; needs `A` commutative.
    pub fn ad_permutation(
        &self,
        perm: &[usize],
    ) -> Result<AlgebraAutomorphism<RationalField>, LieError> {
        if !self.layout.torus.is_commutative() || perm.len() != self.layout.n {
            return Err(LieError::BadAutomorphism(
                "Ad of a permutation needs n entries and commutative A".into(),
            ));
        }
        let mut order = 1;
        let mut cur: Vec<usize> = perm.to_vec();
        while cur.iter().enumerate().any(|(i, &x)| i != x) {
            cur = cur.iter().map(|&x| perm[x]).collect();
            order += 1;
        }
        let n = self.layout.n;
        self.matrix_automorphism(
            |m| {
                let mut out = vec![vec![TorusElement::zero(); n]; n];
                for i in 0..n {
                    for j in 0..n {
                        out[perm[i]][perm[j]] = m[i][j].clone();
                    }
                }
                Ok(out)
            },
            order,
        )
    }

    /// Exponents `e_b` with `σ(b) = ζ_m^{e_b} b` for
    /// `σ = Ad diag(ζ^{a_1}, …, ζ^{a_n})` composed with `t^p ↦ ζ^{μ·p} t^p`.
    pub fn diagonal_exponents(&self, a: &[i64], mu: &[i64]) -> Result<Vec<i64>, LieError> {
        if a.len() != self.layout.n || mu.len() != self.nu() {
            return Err(LieError::BadAutomorphism(
                "wrong number of diagonal exponents".into(),
            ));
        }
        Ok(self
            .layout
            .labels
            .iter()
            .map(|l| {
                let twist = |p: &Vec<i64>| p.iter().zip(mu).map(|(x, y)| x * y).sum::<i64>();
                match l {
                    MatrixBasis::Root { p, i, j } => a[*i] - a[*j] + twist(p),
                    MatrixBasis::Cartan { p, .. } | MatrixBasis::Trace { p } => twist(p),
                    _ => 0,
                }
            })
            .collect())
    }
}

impl Layout {
    /// The matrix of a basis element; `None` for `c_i`, `d_i`.
    pub fn matrix(&self, i: usize) -> Option<TorusMatrix<Rational>> {
        let f = RationalField;
        let n = self.n;
        let mut m = vec![vec![TorusElement::zero(); n]; n];
        let mono = |p: &Vec<i64>, c: i64| TorusElement::monomial(&f, p.clone(), int(c));
        match &self.labels[i] {
            MatrixBasis::Root { p, i, j } => m[*i][*j] = mono(p, 1),
            MatrixBasis::Cartan { p, k } => {
                m[*k][*k] = mono(p, 1);
                m[k + 1][k + 1] = mono(p, -1);
            }
            MatrixBasis::Trace { p } => m[0][0] = mono(p, 1),
            _ => return None,
        }
        Some(m)
    }

    /// Coordinates of a matrix in `sl_n(A)`.
    pub fn decompose(&self, m: &TorusMatrix<Rational>) -> Result<Elt<Rational>, LieError> {
        let f = RationalField;
        let n = self.n;
        let mut out = Elt::new();
        let find = |l: MatrixBasis| {
            self.index
                .get(&l)
                .copied()
                .ok_or_else(|| LieError::Window(format!("{} is not in the window", label_name(&l))))
        };
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    for (p, c) in m[i][j].terms() {
                        add_term(
                            &f,
                            &mut out,
                            find(MatrixBasis::Root { p: p.clone(), i, j })?,
                            c.clone(),
                        );
                    }
                }
            }
        }
        let mut degrees: Vec<&Vec<i64>> = (0..n).flat_map(|i| m[i][i].terms().keys()).collect();
        degrees.sort();
        degrees.dedup();
        for p in degrees {
            let d: Vec<Rational> = (0..n).map(|i| m[i][i].coeff(&f, p)).collect();
            let s: Rational = d.iter().sum();
            let mut rest = d.clone();
            if s != int(0) {
                let t = self
                    .index
                    .get(&MatrixBasis::Trace { p: p.clone() })
                    .copied()
                    .ok_or_else(|| {
                        LieError::Malformed(format!("trace t^{p:?} is not in [A, A]"))
                    })?;
                add_term(&f, &mut out, t, s.clone());
                rest[0] -= s;
            }
            let mut acc = int(0);
            for (k, r) in rest.iter().take(n - 1).enumerate() {
                acc += r;
                add_term(
                    &f,
                    &mut out,
                    find(MatrixBasis::Cartan { p: p.clone(), k })?,
                    acc.clone(),
                );
            }
        }
        Ok(out)
    }

    fn form_k(
        &self,
        x: &TorusMatrix<Rational>,
        y: &TorusMatrix<Rational>,
    ) -> Result<Rational, LieError> {
        let f = RationalField;
        let xy = mat_mul(&self.torus, &f, x, y)?;
        let tr: Rational = (0..self.n).map(|i| xy[i][i].epsilon(&f)).sum();
        Ok(&self.scale * tr)
    }

    fn nu(&self) -> usize {
        self.torus.nu()
    }

    fn fill(&self, algebra: &mut GradedAlgebra<RationalField>) -> Result<(), LieError> {
        let f = RationalField;
        let nu = self.nu();
        let dim = self.labels.len();
        let mats: Vec<Option<TorusMatrix<Rational>>> = (0..dim).map(|i| self.matrix(i)).collect();
        let mut brackets = Vec::new();
        let mut form = Vec::new();
        for a in 0..dim {
            for b in a + 1..dim {
                if !algebra.bracket_defined(a, b) {
                    continue;
                }
                let mut v = Elt::new();
                match (&mats[a], &mats[b]) {
                    (Some(x), Some(y)) => {
                        let comm = mat_sub(
                            &f,
                            &mat_mul(&self.torus, &f, x, y)?,
                            &mat_mul(&self.torus, &f, y, x)?,
                        );
                        v = self.decompose(&comm)?;
                        let pa = self.labels[a].degree(nu);
                        if pa.iter().any(|&x| x != 0) {
                            let xy = self.form_k(x, y)?;
                            for (j, &pj) in pa.iter().enumerate() {
                                add_term(
                                    &f,
                                    &mut v,
                                    self.index[&MatrixBasis::Central(j)],
                                    int(pj) * &xy,
                                );
                            }
                        }
                    }
                    (None, Some(_)) | (Some(_), None) => {
                        let (d, x, sign) = if mats[a].is_none() {
                            (a, b, 1)
                        } else {
                            (b, a, -1)
                        };
                        if let MatrixBasis::Derivation(j) = self.labels[d] {
                            let pj = self.labels[x].degree(nu)[j];
                            add_term(&f, &mut v, x, int(sign * pj));
                        }
                    }
                    (None, None) => {}
                }
                let neg: Elt<Rational> = v.iter().map(|(i, c)| (*i, -c)).collect();
                brackets.push(((a, b), v));
                brackets.push(((b, a), neg));
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                let zero_sum = algebra.degree_sum(a, b).iter().all(|&x| x == 0);
                match (&mats[a], &mats[b]) {
                    (Some(x), Some(y)) if zero_sum => form.push(((a, b), self.form_k(x, y)?)),
                    (None, None) => {
                        if let (MatrixBasis::Central(i), MatrixBasis::Derivation(j))
                        | (MatrixBasis::Derivation(j), MatrixBasis::Central(i)) =
                            (&self.labels[a], &self.labels[b])
                        {
                            if i == j {
                                form.push(((a, b), int(1)));
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
        for ((a, b), v) in brackets {
            algebra.set_bracket(a, b, v);
        }
        for ((a, b), v) in form {
            algebra.set_form(a, b, v);
        }
        Ok(())
    }
}

impl From<crate::coords::CoordsError> for LieError {
    fn from(e: crate::coords::CoordsError) -> Self {
        LieError::Malformed(e.to_string())
    }
}

/// `b ↦ ζ_m^{e_b} b` on an algebra over a field containing `ζ_m`.
pub fn diagonal_automorphism<F: Field>(
    g: &GradedAlgebra<F>,
    exps: &[i64],
    m: u64,
) -> Result<AlgebraAutomorphism<F>, LieError> {
    AlgebraAutomorphism::diagonal(g, exps, m)
}
