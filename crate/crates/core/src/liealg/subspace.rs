use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::algebra::{add_scaled, from_dense, Elt, GradedAlgebra};
use super::cartan::CartanData;
use super::LieError;
use crate::exactnum::{kernel, Field};

/// Reduced echelon basis of a subspace of one degree component.
#[derive(Debug, Clone)]
struct Space<E> {
    idx: Vec<usize>,
    pos: HashMap<usize, usize>,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone> Space<E> {
    fn new(idx: Vec<usize>) -> Self {
        let pos = idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        Space {
            idx,
            pos,
            rows: vec![],
            pivots: vec![],
        }
    }

    fn dense<F: Field<Elem = E>>(&self, f: &F, x: &Elt<E>) -> Vec<E> {
        let mut v = vec![f.zero(); self.idx.len()];
        for (i, c) in x {
            v[self.pos[i]] = c.clone();
        }
        v
    }

    fn reduce<F: Field<Elem = E>>(&self, f: &F, mut v: Vec<E>) -> Vec<E> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    fn insert<F: Field<Elem = E>>(&mut self, f: &F, x: &Elt<E>) -> bool {
        let mut v = self.reduce(f, self.dense(f, x));
        let Some(p) = v.iter().position(|c| !f.is_zero(c)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        for c in v.iter_mut() {
            *c = f.mul(c, &inv);
        }
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[p]) {
                let c = row[p].clone();
                for (r, x) in row.iter_mut().zip(&v) {
                    if !f.is_zero(x) {
                        *r = f.sub(r, &f.mul(&c, x));
                    }
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    fn contains<F: Field<Elem = E>>(&self, f: &F, x: &Elt<E>) -> bool {
        self.reduce(f, self.dense(f, x))
            .iter()
            .all(|c| f.is_zero(c))
    }
}

/// A graded subspace stored degree by degree.
#[derive(Debug, Clone)]
pub struct GradedSpan<F: Field> {
    field: F,
    spaces: BTreeMap<Vec<i64>, Space<F::Elem>>,
}

impl<F: Field> GradedSpan<F> {
    pub fn new(g: &GradedAlgebra<F>) -> Self {
        GradedSpan {
            field: g.field().clone(),
            spaces: BTreeMap::new(),
        }
    }

    /// Adds a homogeneous element; returns whether the span grew.
    pub fn insert(&mut self, g: &GradedAlgebra<F>, x: &Elt<F::Elem>) -> bool {
        let Some(d) = g.degree_of(x) else {
            return false;
        };
        let space = self
            .spaces
            .entry(d.clone())
            .or_insert_with(|| Space::new(g.of_degree(&d).to_vec()));
        space.insert(&self.field, x)
    }

    pub fn contains(&self, g: &GradedAlgebra<F>, x: &Elt<F::Elem>) -> bool {
        let Some(d) = g.degree_of(x) else {
            return x.is_empty();
        };
        self.spaces
            .get(&d)
            .is_some_and(|s| s.contains(&self.field, x))
    }

    pub fn dim_at(&self, d: &[i64]) -> usize {
        self.spaces.get(d).map_or(0, |s| s.rows.len())
    }

    pub fn basis_at(&self, d: &[i64]) -> Vec<Elt<F::Elem>> {
        self.spaces.get(d).map_or(vec![], |s| {
            s.rows
                .iter()
                .map(|r| from_dense(&self.field, r, &s.idx))
                .collect()
        })
    }

    pub fn degrees(&self) -> Vec<Vec<i64>> {
        self.spaces
            .iter()
            .filter(|(_, s)| !s.rows.is_empty())
            .map(|(d, _)| d.clone())
            .collect()
    }

    pub fn vectors(&self) -> Vec<Elt<F::Elem>> {
        self.degrees()
            .iter()
            .flat_map(|d| self.basis_at(d))
            .collect()
    }
}

/// `{x ∈ span(within) : [x, s] = 0 for all s}` for homogeneous `within`;
/// pairs whose bracket leaves the window impose nothing.
pub fn centralizer<F: Field>(
    g: &GradedAlgebra<F>,
    s: &[Elt<F::Elem>],
    within: &[Elt<F::Elem>],
) -> Result<Vec<Elt<F::Elem>>, LieError> {
    let f = g.field();
    let mut groups: BTreeMap<Vec<i64>, Vec<&Elt<F::Elem>>> = BTreeMap::new();
    for w in within {
        let d = g
            .degree_of(w)
            .ok_or_else(|| LieError::Malformed("centralizer needs homogeneous elements".into()))?;
        groups.entry(d).or_default().push(w);
    }
    let mut out = Vec::new();
    for ws in groups.values() {
        let mut cols: Vec<Elt<F::Elem>> = vec![Elt::new(); ws.len()];
        let mut offset = 0usize;
        for x in s {
            let images: Option<Vec<Elt<F::Elem>>> = ws.iter().map(|w| g.bracket(w, x)).collect();
            let Some(images) = images else { continue };
            let support: BTreeSet<usize> = images.iter().flat_map(|v| v.keys().copied()).collect();
            let rowmap: HashMap<usize, usize> = support
                .iter()
                .enumerate()
                .map(|(r, &i)| (i, offset + r))
                .collect();
            for (col, img) in cols.iter_mut().zip(&images) {
                for (i, c) in img {
                    col.insert(rowmap[i], c.clone());
                }
            }
            offset += support.len();
        }
        let rows: Vec<Vec<F::Elem>> = (0..offset)
            .map(|r| {
                cols.iter()
                    .map(|c| c.get(&r).cloned().unwrap_or_else(|| f.zero()))
                    .collect()
            })
            .collect();
        for coef in kernel(f, &rows, ws.len()) {
            let mut v = Elt::new();
            for (w, c) in ws.iter().zip(&coef) {
                add_scaled(f, &mut v, w, c);
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// Basis elements whose weight is nonisotropic.
pub fn nonisotropic_generators<F: Field>(
    g: &GradedAlgebra<F>,
    cartan: &CartanData<F>,
) -> Vec<Elt<F::Elem>> {
    (0..g.dim())
        .filter(|&i| !cartan.is_isotropic(cartan.weight(i)))
        .map(|i| g.basis(i))
        .collect()
}

/// The subalgebra generated by `gens`, truncated to the window.
pub fn generated_subalgebra<F: Field>(
    g: &GradedAlgebra<F>,
    gens: &[Elt<F::Elem>],
) -> GradedSpan<F> {
    let mut span = GradedSpan::new(g);
    let mut work: Vec<Elt<F::Elem>> = Vec::new();
    for x in gens {
        if span.insert(g, x) {
            work.push(x.clone());
        }
    }
    while let Some(v) = work.pop() {
        for x in gens {
            if let Some(u) = g.bracket(x, &v) {
                if !u.is_empty() && span.insert(g, &u) {
                    work.push(u);
                }
            }
        }
    }
    span
}

/// `span(gens) + span([gens, gens])`.
pub fn two_step_span<F: Field>(g: &GradedAlgebra<F>, gens: &[Elt<F::Elem>]) -> GradedSpan<F> {
    let mut span = GradedSpan::new(g);
    for x in gens {
        span.insert(g, x);
    }
    for (a, x) in gens.iter().enumerate() {
        for y in &gens[a + 1..] {
            if let Some(u) = g.bracket(x, y) {
                span.insert(g, &u);
            }
        }
    }
    span
}

/// Core data on the window interior.
#[derive(Debug, Clone)]
pub struct Core<F: Field> {
    pub generators: Vec<Elt<F::Elem>>,
    pub span: GradedSpan<F>,
    /// Centralizer of the core, by interior degree.
    pub centralizer: BTreeMap<Vec<i64>, Vec<Elt<F::Elem>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreDegree {
    pub degree: Vec<i64>,
    pub core: usize,
    pub center: usize,
    pub centralizer: usize,
}

impl<F: Field> Core<F> {
    pub fn compute(g: &GradedAlgebra<F>, cartan: &CartanData<F>) -> Result<Self, LieError> {
        let generators = nonisotropic_generators(g, cartan);
        let span = generated_subalgebra(g, &generators);
        let mut centralizer = BTreeMap::new();
        for (d, idx) in g.by_degree() {
            if !g.in_interior(d) {
                continue;
            }
            let within: Vec<Elt<F::Elem>> = idx.iter().map(|&i| g.basis(i)).collect();
            centralizer.insert(d.clone(), self::centralizer(g, &generators, &within)?);
        }
        Ok(Core {
            generators,
            span,
            centralizer,
        })
    }

    /// Per interior degree: dimensions of the core, its center and its
    /// centralizer.
    pub fn table(&self, g: &GradedAlgebra<F>) -> Vec<CoreDegree> {
        self.centralizer
            .iter()
            .map(|(d, cent)| {
                let core = self.span.dim_at(d);
                let mut sum = self.span.clone();
                let mut grown = 0;
                for v in cent {
                    if sum.insert(g, v) {
                        grown += 1;
                    }
                }
                CoreDegree {
                    degree: d.clone(),
                    core,
                    center: cent.len() - grown,
                    centralizer: cent.len(),
                }
            })
            .collect()
    }

    /// The first interior centralizer element outside the core.
    pub fn tameness_witness(&self, g: &GradedAlgebra<F>) -> Option<String> {
        for vs in self.centralizer.values() {
            for v in vs {
                if !self.span.contains(g, v) {
                    let names: Vec<&str> = v.keys().map(|&i| g.name(i)).collect();
                    return Some(format!(
                        "centralizer element on {} lies outside the core",
                        names.join(", ")
                    ));
                }
            }
        }
        None
    }

    pub fn is_tame(&self, g: &GradedAlgebra<F>) -> bool {
        self.tameness_witness(g).is_none()
    }
}

/// Tameness on the window interior.
pub fn tameness_check<F: Field>(
    g: &GradedAlgebra<F>,
    cartan: &CartanData<F>,
) -> Result<bool, LieError> {
    Ok(Core::compute(g, cartan)?.is_tame(g))
}
