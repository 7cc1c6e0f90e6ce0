use std::collections::BTreeMap;

use super::algebra::{add_scaled, add_term, basis_elt, Elt, GradedAlgebra};
use super::automorphism::AlgebraAutomorphism;
use super::cartan::CartanData;
use super::LieError;
use crate::exactnum::{kernel, row_reduce, Field};

fn loop_degree(i: i64, d: &[i64]) -> Vec<i64> {
    let mut out = vec![i];
    out.extend_from_slice(d);
    out
}

fn check_window<F: Field>(g: &GradedAlgebra<F>, window: i64) -> Result<(), LieError> {
    if window < 0 {
        return Err(LieError::Window("negative window".into()));
    }
    if g.grading_rank() > 0 && g.window() != window {
        return Err(LieError::Window(format!(
            "the algebra has window {}, asked for {window}",
            g.window()
        )));
    }
    Ok(())
}

/// First degree `p` whose pairing with degree `−p` is singular.
pub fn degenerate_degree<F: Field>(g: &GradedAlgebra<F>) -> Option<Vec<i64>> {
    let f = g.field();
    for (p, idx) in g.by_degree() {
        let neg: Vec<i64> = p.iter().map(|x| -x).collect();
        let other = g.of_degree(&neg);
        if other.len() != idx.len() {
            return Some(p.clone());
        }
        let rows: Vec<Vec<F::Elem>> = idx
            .iter()
            .map(|&i| other.iter().map(|&j| g.form_basis(i, j)).collect())
            .collect();
        if crate::exactnum::rank(f, &rows) != idx.len() {
            return Some(p.clone());
        }
    }
    None
}

/// `g ⊗ t^i`, `|i| ≤ N`, with `[x ⊗ t^i, y ⊗ t^j] = [x, y] ⊗ t^{i+j}`.
pub fn loop_algebra<F: Field>(
    g: &GradedAlgebra<F>,
    window: i64,
) -> Result<GradedAlgebra<F>, LieError> {
    Ok(build(g, window, false)?.0)
}

/// `Aff(g)` truncated to the window, its Cartan `h ⊗ 1 ⊕ ℚc ⊕ ℚd`, and the
/// position of `x ⊗ t^i`.
#[derive(Debug, Clone)]
pub struct Affinization<F: Field> {
    pub algebra: GradedAlgebra<F>,
    pub cartan: CartanData<F>,
    base_dim: usize,
    window: i64,
}

impl<F: Field> Affinization<F> {
    pub fn index(&self, b: usize, i: i64) -> usize {
        (i + self.window) as usize * self.base_dim + b
    }

    pub fn c(&self) -> usize {
        (2 * self.window as usize + 1) * self.base_dim
    }

    pub fn d(&self) -> usize {
        self.c() + 1
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    /// `x ⊗ t^i` for `x` in base coordinates.
    pub fn tensor(&self, x: &Elt<F::Elem>, i: i64) -> Elt<F::Elem> {
        x.iter()
            .map(|(b, c)| (self.index(*b, i), c.clone()))
            .collect()
    }
}

fn build<F: Field>(
    g: &GradedAlgebra<F>,
    window: i64,
    central: bool,
) -> Result<(GradedAlgebra<F>, usize), LieError> {
    check_window(g, window)?;
    let f = g.field();
    let n = g.dim();
    let span = 2 * window as usize + 1;
    let idx = |b: usize, i: i64| (i + window) as usize * n + b;
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for i in -window..=window {
        for b in 0..n {
            names.push(format!("{}⊗t^{i}", g.name(b)));
            degrees.push(loop_degree(i, g.degree(b)));
        }
    }
    let c = span * n;
    if central {
        names.push("c".into());
        names.push("d".into());
        let zero = vec![0; g.grading_rank() + 1];
        degrees.push(zero.clone());
        degrees.push(zero);
    }
    let mut brackets = Vec::new();
    let mut form = Vec::new();
    for i in -window..=window {
        for j in -window..=window {
            if (i + j).abs() > window {
                continue;
            }
            for a in 0..n {
                for b in 0..n {
                    let Some(v) = g.bracket_basis(a, b) else {
                        continue;
                    };
                    let mut out: Elt<F::Elem> =
                        v.iter().map(|(l, x)| (idx(*l, i + j), x.clone())).collect();
                    if central && i + j == 0 && i != 0 {
                        add_term(f, &mut out, c, f.mul(&f.from_int(i), &g.form_basis(a, b)));
                    }
                    if !out.is_empty() {
                        brackets.push(((idx(a, i), idx(b, j)), out));
                    }
                }
            }
        }
        if central {
            for b in 0..n {
                if i != 0 {
                    brackets.push(((c + 1, idx(b, i)), Elt::from([(idx(b, i), f.from_int(i))])));
                    brackets.push(((idx(b, i), c + 1), Elt::from([(idx(b, i), f.from_int(-i))])));
                }
                for a in 0..n {
                    let v = g.form_basis(a, b);
                    if !f.is_zero(&v) {
                        form.push(((idx(a, i), idx(b, -i)), v));
                    }
                }
            }
        }
    }
    if central {
        form.push(((c, c + 1), f.one()));
        form.push(((c + 1, c), f.one()));
    }
    Ok((
        GradedAlgebra::from_tables(f.clone(), names, degrees, window, brackets, form)?,
        n,
    ))
}

/// `Aff(g) = g ⊗ ℚ[t, t⁻¹] ⊕ ℚc ⊕ ℚd`.
pub fn affinize<F: Field>(
    g: &GradedAlgebra<F>,
    cartan: &CartanData<F>,
    window: i64,
) -> Result<Affinization<F>, LieError> {
    if let Some(p) = degenerate_degree(g) {
        return Err(LieError::DegenerateForm(format!(
            "the form is degenerate in degree {p:?}"
        )));
    }
    let (algebra, n) = build(g, window, true)?;
    let c = (2 * window as usize + 1) * n;
    let f = g.field();
    let mut h: Vec<Elt<F::Elem>> = cartan
        .h()
        .iter()
        .map(|x| {
            x.iter()
                .map(|(b, v)| (window as usize * n + b, v.clone()))
                .collect()
        })
        .collect();
    h.push(basis_elt(f, c));
    h.push(basis_elt(f, c + 1));
    let mut derivations = vec![h.len() - 1];
    derivations.extend_from_slice(cartan.derivations());
    let cartan = CartanData::new(&algebra, h, derivations)?;
    Ok(Affinization {
        algebra,
        cartan,
        base_dim: n,
        window,
    })
}

/// `x ⊗ t^i + rc + sd ↦ ζ^{−i} σ(x) ⊗ t^i + rc + sd`.
pub fn extend_automorphism<F: Field>(
    g: &GradedAlgebra<F>,
    aff: &Affinization<F>,
    sigma: &AlgebraAutomorphism<F>,
) -> Result<AlgebraAutomorphism<F>, LieError> {
    if let Some((i, j)) = sigma.form_violation(g) {
        return Err(LieError::BadAutomorphism(format!(
            "σ does not preserve ({}, {})",
            g.name(i),
            g.name(j)
        )));
    }
    let f = g.field();
    let m = sigma.period();
    let mut images = Vec::with_capacity(aff.algebra.dim());
    for i in -aff.window..=aff.window {
        let z = f.root_of_unity(m, -i).ok_or(LieError::MissingRoot(m))?;
        for b in 0..aff.base_dim {
            let img = aff.tensor(&sigma.images()[b], i);
            images.push(img.into_iter().map(|(k, c)| (k, f.mul(&z, &c))).collect());
        }
    }
    images.push(basis_elt(f, aff.c()));
    images.push(basis_elt(f, aff.d()));
    AlgebraAutomorphism::new(&aff.algebra, images, m)
}

/// A subalgebra with a basis in reduced echelon form inside each `σ`-block,
/// so coordinates are read off at pivots.
#[derive(Debug, Clone)]
pub struct Subalgebra<F: Field> {
    pub algebra: GradedAlgebra<F>,
    pub cartan: CartanData<F>,
    embedding: Vec<Elt<F::Elem>>,
    pivots: BTreeMap<usize, usize>,
}

fn pivot_coords<F: Field>(
    f: &F,
    pivots: &BTreeMap<usize, usize>,
    embedding: &[Elt<F::Elem>],
    x: &Elt<F::Elem>,
) -> Option<Elt<F::Elem>> {
    let mut out = Elt::new();
    let mut rest = x.clone();
    for (p, c) in x {
        if let Some(&b) = pivots.get(p) {
            add_term(f, &mut out, b, c.clone());
            add_scaled(f, &mut rest, &embedding[b], &f.neg(c));
        }
    }
    rest.is_empty().then_some(out)
}

fn render<F: Field>(g: &GradedAlgebra<F>, x: &Elt<F::Elem>) -> String {
    let f = g.field();
    if x.len() == 1 {
        let (i, c) = x.iter().next().expect("one term");
        if f.is_one(c) {
            return g.name(*i).to_string();
        }
    }
    x.iter()
        .map(|(i, c)| format!("({})·{}", f.render(c), g.name(*i)))
        .collect::<Vec<_>>()
        .join(" + ")
}

impl<F: Field> Subalgebra<F> {
    pub fn embedding(&self) -> &[Elt<F::Elem>] {
        &self.embedding
    }

    /// Coordinates of an ambient element lying in the subalgebra.
    pub fn coords(&self, x: &Elt<F::Elem>) -> Option<Elt<F::Elem>> {
        pivot_coords(self.algebra.field(), &self.pivots, &self.embedding, x)
    }

    pub fn embed(&self, x: &Elt<F::Elem>) -> Elt<F::Elem> {
        let f = self.algebra.field();
        let mut out = Elt::new();
        for (b, c) in x {
            add_scaled(f, &mut out, &self.embedding[*b], c);
        }
        out
    }
}

/// Fixed points of `σ`. The Cartan is `h^σ`, keeping the degree derivations
/// (which `σ` must fix) as basis vectors.
pub fn fixed_subalgebra<F: Field>(
    a: &GradedAlgebra<F>,
    cartan: &CartanData<F>,
    sigma: &AlgebraAutomorphism<F>,
) -> Result<Subalgebra<F>, LieError> {
    let f = a.field();
    let mut vectors = Vec::new();
    for idx in sigma.blocks() {
        let rows: Vec<Vec<F::Elem>> = (0..idx.len())
            .map(|r| {
                idx.iter()
                    .enumerate()
                    .map(|(c, &col)| {
                        let x = sigma.images()[col]
                            .get(&idx[r])
                            .cloned()
                            .unwrap_or_else(|| f.zero());
                        if r == c {
                            f.sub(&x, &f.one())
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        let ker = kernel(f, &rows, idx.len());
        for v in row_reduce(f, &ker, idx.len()).rows {
            vectors.push(super::algebra::from_dense(f, &v, &idx));
        }
    }
    let mut pivots = BTreeMap::new();
    for (b, v) in vectors.iter().enumerate() {
        let (&p, _) = v.iter().next().expect("nonzero");
        pivots.insert(p, b);
    }
    let names = vectors.iter().map(|v| render(a, v)).collect();
    let degrees = vectors
        .iter()
        .map(|v| a.degree_of(v).expect("blocks are homogeneous"))
        .collect();
    let mut algebra = GradedAlgebra::from_tables(f.clone(), names, degrees, a.window(), [], [])?;
    let coords = |x: &Elt<F::Elem>| pivot_coords(f, &pivots, &vectors, x);
    let n = vectors.len();
    for x in 0..n {
        for y in 0..n {
            if x != y && algebra.bracket_defined(x, y) {
                let v = a.bracket(&vectors[x], &vectors[y]).expect("in window");
                let c = coords(&v)
                    .ok_or_else(|| LieError::Malformed("fixed points are not closed".into()))?;
                algebra.set_bracket(x, y, c);
            }
            algebra.set_form(x, y, a.form(&vectors[x], &vectors[y]));
        }
    }
    let der: Vec<Elt<F::Elem>> = cartan
        .derivations()
        .iter()
        .map(|&j| cartan.h()[j].clone())
        .collect();
    if der.iter().any(|x| sigma.apply(x) != *x) {
        return Err(LieError::BadAutomorphism(
            "σ must fix the degree derivations".into(),
        ));
    }
    let rest: Vec<Elt<F::Elem>> = (0..cartan.rank())
        .filter(|j| !cartan.derivations().contains(j))
        .map(|j| cartan.h()[j].clone())
        .collect();
    let mut h = sigma.fixed_in_span(&rest, 1);
    let first = h.len();
    h.extend(der);
    let h = h
        .iter()
        .map(|x| {
            coords(x).ok_or_else(|| LieError::Malformed("h^σ is not in the fixed points".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let derivations = (first..h.len()).collect();
    let cartan = CartanData::new(&algebra, h, derivations)?;
    Ok(Subalgebra {
        algebra,
        cartan,
        embedding: vectors,
        pivots,
    })
}

/// `Aff(g, σ) = Aff(g)^σ̃` together with the positions of `c`, `d` and the
/// subalgebra `g^σ ⊗ 1`.
#[derive(Debug, Clone)]
pub struct AffSigma<F: Field> {
    pub aff: Affinization<F>,
    pub sigma_tilde: AlgebraAutomorphism<F>,
    pub sub: Subalgebra<F>,
    pub c: usize,
    pub d: usize,
}

impl<F: Field> AffSigma<F> {
    pub fn new(
        g: &GradedAlgebra<F>,
        cartan: &CartanData<F>,
        sigma: &AlgebraAutomorphism<F>,
        window: i64,
    ) -> Result<Self, LieError> {
        let aff = affinize(g, cartan, window)?;
        let sigma_tilde = extend_automorphism(g, &aff, sigma)?;
        let sub = fixed_subalgebra(&aff.algebra, &aff.cartan, &sigma_tilde)?;
        let f = g.field();
        let c = *sub
            .coords(&basis_elt(f, aff.c()))
            .expect("c is fixed")
            .keys()
            .next()
            .expect("one term");
        let d = *sub
            .coords(&basis_elt(f, aff.d()))
            .expect("d is fixed")
            .keys()
            .next()
            .expect("one term");
        Ok(AffSigma {
            aff,
            sigma_tilde,
            sub,
            c,
            d,
        })
    }

    pub fn algebra(&self) -> &GradedAlgebra<F> {
        &self.sub.algebra
    }

    pub fn cartan(&self) -> &CartanData<F> {
        &self.sub.cartan
    }

    /// `x ⊗ t^i` in subalgebra coordinates, if fixed.
    pub fn tensor(&self, x: &Elt<F::Elem>, i: i64) -> Option<Elt<F::Elem>> {
        self.sub.coords(&self.aff.tensor(x, i))
    }

    /// Basis elements of loop degree zero other than `c`, `d`: a basis of
    /// `g^σ ⊗ 1`.
    pub fn g_sigma(&self) -> Vec<usize> {
        let g = self.algebra();
        (0..g.dim())
            .filter(|&i| g.degree(i)[0] == 0 && i != self.c && i != self.d)
            .collect()
    }

    /// `h^σ ⊗ 1` inside the Cartan.
    pub fn h_sigma(&self) -> Vec<Elt<F::Elem>> {
        let f = self.algebra().field();
        let c = basis_elt(f, self.c);
        let d = basis_elt(f, self.d);
        self.cartan()
            .h()
            .iter()
            .filter(|x| **x != c && **x != d)
            .cloned()
            .collect()
    }
}
