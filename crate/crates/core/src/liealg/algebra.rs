use std::collections::{BTreeMap, HashMap};

use super::LieError;
use crate::exactnum::Field;

/// Sparse vector in the coordinates of an algebra basis.
pub type Elt<E> = BTreeMap<usize, E>;

pub fn basis_elt<F: Field>(f: &F, i: usize) -> Elt<F::Elem> {
    BTreeMap::from([(i, f.one())])
}

pub fn add_scaled<F: Field>(f: &F, acc: &mut Elt<F::Elem>, x: &Elt<F::Elem>, s: &F::Elem) {
    if f.is_zero(s) {
        return;
    }
    let unit = f.is_one(s);
    for (i, c) in x {
        let term = if unit { c.clone() } else { f.mul(s, c) };
        add_term(f, acc, *i, term);
    }
}

pub fn add_term<F: Field>(f: &F, acc: &mut Elt<F::Elem>, i: usize, c: F::Elem) {
    if f.is_zero(&c) {
        return;
    }
    match acc.get_mut(&i) {
        Some(x) => {
            *x = f.add(x, &c);
            if f.is_zero(x) {
                acc.remove(&i);
            }
        }
        None => {
            acc.insert(i, c);
        }
    }
}

pub fn scale<F: Field>(f: &F, x: &Elt<F::Elem>, s: &F::Elem) -> Elt<F::Elem> {
    let mut out = Elt::new();
    add_scaled(f, &mut out, x, s);
    out
}

pub fn sub<F: Field>(f: &F, x: &Elt<F::Elem>, y: &Elt<F::Elem>) -> Elt<F::Elem> {
    let mut out = x.clone();
    add_scaled(f, &mut out, y, &f.neg(&f.one()));
    out
}

pub fn to_dense<F: Field>(f: &F, x: &Elt<F::Elem>, idx: &[usize]) -> Vec<F::Elem> {
    idx.iter()
        .map(|i| x.get(i).cloned().unwrap_or_else(|| f.zero()))
        .collect()
}

pub fn from_dense<F: Field>(f: &F, v: &[F::Elem], idx: &[usize]) -> Elt<F::Elem> {
    idx.iter()
        .zip(v)
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(i, c)| (*i, c.clone()))
        .collect()
}

/// A Lie algebra given by structure constants on a basis of homogeneous
/// elements whose degrees lie in the box `[−N, N]^k`. Brackets whose degree
/// leaves the box are undefined.
#[derive(Debug, Clone)]
pub struct GradedAlgebra<F: Field> {
    field: F,
    names: Vec<String>,
    degrees: Vec<Vec<i64>>,
    window: i64,
    table: HashMap<(usize, usize), Elt<F::Elem>>,
    form: HashMap<(usize, usize), F::Elem>,
    by_degree: BTreeMap<Vec<i64>, Vec<usize>>,
    empty: Elt<F::Elem>,
}

impl<F: Field> GradedAlgebra<F> {
    /// Brackets and form values not listed are zero. Every listed bracket is
    /// stored as given; use [`super::check_structure`] to validate.
    pub fn from_tables(
        field: F,
        names: Vec<String>,
        degrees: Vec<Vec<i64>>,
        window: i64,
        brackets: impl IntoIterator<Item = ((usize, usize), Elt<F::Elem>)>,
        form: impl IntoIterator<Item = ((usize, usize), F::Elem)>,
    ) -> Result<Self, LieError> {
        if names.len() != degrees.len() {
            return Err(LieError::Malformed(format!(
                "{} names for {} degrees",
                names.len(),
                degrees.len()
            )));
        }
        let k = degrees.first().map_or(0, Vec::len);
        let mut by_degree: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (i, d) in degrees.iter().enumerate() {
            if d.len() != k {
                return Err(LieError::Malformed(format!(
                    "basis element {} has degree of length {}",
                    names[i],
                    d.len()
                )));
            }
            if d.iter().any(|x| x.abs() > window) {
                return Err(LieError::Malformed(format!(
                    "basis element {} lies outside the window",
                    names[i]
                )));
            }
            by_degree.entry(d.clone()).or_default().push(i);
        }
        let n = names.len();
        let mut alg = GradedAlgebra {
            field,
            names,
            degrees,
            window,
            table: HashMap::new(),
            form: HashMap::new(),
            by_degree,
            empty: Elt::new(),
        };
        for ((i, j), v) in brackets {
            if i >= n || j >= n || v.keys().any(|&l| l >= n) {
                return Err(LieError::Malformed(format!(
                    "bracket entry ({i}, {j}) out of range"
                )));
            }
            alg.set_bracket(i, j, v);
        }
        for ((i, j), v) in form {
            if i >= n || j >= n {
                return Err(LieError::Malformed(format!(
                    "form entry ({i}, {j}) out of range"
                )));
            }
            alg.set_form(i, j, v);
        }
        Ok(alg)
    }

    pub(crate) fn set_bracket(&mut self, i: usize, j: usize, v: Elt<F::Elem>) {
        let v: Elt<F::Elem> = v
            .into_iter()
            .filter(|(_, c)| !self.field.is_zero(c))
            .collect();
        if v.is_empty() {
            self.table.remove(&(i, j));
        } else {
            self.table.insert((i, j), v);
        }
    }

    pub(crate) fn set_form(&mut self, i: usize, j: usize, v: F::Elem) {
        if self.field.is_zero(&v) {
            self.form.remove(&(i, j));
        } else {
            self.form.insert((i, j), v);
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> &[i64] {
        &self.degrees[i]
    }

    pub fn degrees(&self) -> &[Vec<i64>] {
        &self.degrees
    }

    /// Number of degree coordinates.
    pub fn grading_rank(&self) -> usize {
        self.degrees.first().map_or(0, Vec::len)
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn in_window(&self, d: &[i64]) -> bool {
        d.iter().all(|x| x.abs() <= self.window)
    }

    /// Every coordinate at most `N − 1` in absolute value.
    pub fn in_interior(&self, d: &[i64]) -> bool {
        d.iter().all(|x| x.abs() < self.window)
    }

    pub fn by_degree(&self) -> &BTreeMap<Vec<i64>, Vec<usize>> {
        &self.by_degree
    }

    pub fn of_degree(&self, d: &[i64]) -> &[usize] {
        self.by_degree.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn degree_sum(&self, i: usize, j: usize) -> Vec<i64> {
        self.degrees[i]
            .iter()
            .zip(&self.degrees[j])
            .map(|(a, b)| a + b)
            .collect()
    }

    pub fn bracket_defined(&self, i: usize, j: usize) -> bool {
        self.degrees[i]
            .iter()
            .zip(&self.degrees[j])
            .all(|(a, b)| (a + b).abs() <= self.window)
    }

    /// `[b_i, b_j]`, or `None` outside the window.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Option<&Elt<F::Elem>> {
        if !self.bracket_defined(i, j) {
            return None;
        }
        Some(self.table.get(&(i, j)).unwrap_or(&self.empty))
    }

    pub fn bracket(&self, x: &Elt<F::Elem>, y: &Elt<F::Elem>) -> Option<Elt<F::Elem>> {
        let f = &self.field;
        let mut out = Elt::new();
        for (i, a) in x {
            for (j, b) in y {
                let v = self.bracket_basis(*i, *j)?;
                if !v.is_empty() {
                    add_scaled(f, &mut out, v, &f.mul(a, b));
                }
            }
        }
        Some(out)
    }

    pub fn form_basis(&self, i: usize, j: usize) -> F::Elem {
        self.form
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn form(&self, x: &Elt<F::Elem>, y: &Elt<F::Elem>) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (i, a) in x {
            for (j, b) in y {
                if let Some(v) = self.form.get(&(*i, *j)) {
                    acc = f.add(&acc, &f.mul(v, &f.mul(a, b)));
                }
            }
        }
        acc
    }

    pub fn basis(&self, i: usize) -> Elt<F::Elem> {
        basis_elt(&self.field, i)
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree_of(&self, x: &Elt<F::Elem>) -> Option<Vec<i64>> {
        let mut it = x.keys();
        let first = self.degrees[*it.next()?].clone();
        it.all(|&i| self.degrees[i] == first).then_some(first)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub(crate) fn nonzero_brackets(
        &self,
    ) -> impl Iterator<Item = (&(usize, usize), &Elt<F::Elem>)> {
        self.table.iter()
    }

    pub(crate) fn nonzero_form(&self) -> impl Iterator<Item = (&(usize, usize), &F::Elem)> {
        self.form.iter()
    }

    /// The same structure constants read in another field.
    pub fn map_field<G: Field>(
        &self,
        g: G,
        lift: impl Fn(&F::Elem) -> G::Elem,
    ) -> GradedAlgebra<G> {
        let table = self
            .table
            .iter()
            .map(|(k, v)| (*k, v.iter().map(|(i, c)| (*i, lift(c))).collect()))
            .collect();
        let form = self.form.iter().map(|(k, v)| (*k, lift(v))).collect();
        GradedAlgebra {
            field: g,
            names: self.names.clone(),
            degrees: self.degrees.clone(),
            window: self.window,
            table,
            form,
            by_degree: self.by_degree.clone(),
            empty: Elt::new(),
        }
    }

    /// Rows `(x, b_j)` for `x` in `xs` and `j` in `cols`.
    pub fn form_matrix(&self, xs: &[Elt<F::Elem>], cols: &[usize]) -> Vec<Vec<F::Elem>> {
        xs.iter()
            .map(|x| {
                cols.iter()
                    .map(|&j| self.form(x, &basis_elt(&self.field, j)))
                    .collect()
            })
            .collect()
    }
}
