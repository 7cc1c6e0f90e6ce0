use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::affine::{degenerate_degree, AffSigma};
use super::algebra::{add_scaled, basis_elt, sub, to_dense, Elt, GradedAlgebra};
use super::automorphism::AlgebraAutomorphism;
use super::cartan::{average, infer_root_datum, CartanData};
use super::checks::{degree_pairing, form_invariant, form_symmetric, CheckResult};
use super::subspace::{centralizer, generated_subalgebra, two_step_span, Core, GradedSpan};
use super::LieError;
use crate::exactnum::{
    int, is_zero_vec, kernel, solve, span_basis, vec_to_string, Field, RatMatrix, RatVector,
    Rational, RationalField,
};
use crate::rootsys::TypeLabel;

fn join(a: CheckResult, b: CheckResult) -> CheckResult {
    CheckResult {
        holds: a.holds && b.holds,
        checked: a.checked + b.checked,
        witness: a.witness.or(b.witness),
    }
}

fn is_prime(m: u64) -> bool {
    m >= 2
        && (2..m)
            .take_while(|d| d * d <= m)
            .all(|d| !m.is_multiple_of(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EaReport {
    pub ea1: CheckResult,
    pub ea2: CheckResult,
    pub ea3: CheckResult,
    pub ea4: CheckResult,
    pub ea5a: bool,
    pub ea5b: bool,
    pub nullity: Option<usize>,
    #[serde(rename = "type")]
    pub type_label: Option<TypeLabel>,
    /// Why no root datum could be read off the weights.
    pub datum_error: Option<String>,
    pub weight_orthogonality: CheckResult,
    pub nonisotropic_dim_one: CheckResult,
}

impl EaReport {
    pub fn all_hold(&self) -> bool {
        self.ea1.holds
            && self.ea2.holds
            && self.ea3.holds
            && self.ea4.holds
            && self.ea5a
            && self.ea5b
    }
}

fn ea1<F: Field>(g: &GradedAlgebra<F>) -> CheckResult {
    let mut out = join(form_symmetric(g), form_invariant(g));
    out = join(out, degree_pairing(g));
    let nondeg = match degenerate_degree(g) {
        Some(p) => CheckResult::from(1, Some(format!("the form is degenerate in degree {p:?}"))),
        None => CheckResult::from(g.by_degree().len(), None),
    };
    join(out, nondeg)
}

fn ea2<F: Field>(g: &GradedAlgebra<F>, cartan: &CartanData<F>) -> CheckResult {
    let zero: Vec<usize> = (0..g.dim())
        .filter(|&i| is_zero_vec(cartan.weight(i)))
        .collect();
    if zero.len() == cartan.rank() {
        CheckResult::from(zero.len(), None)
    } else {
        let mut h = GradedSpan::new(g);
        for x in cartan.h() {
            h.insert(g, x);
        }
        let extra = zero
            .iter()
            .find(|&&i| !h.contains(g, &g.basis(i)))
            .copied()
            .unwrap_or(zero[0]);
        CheckResult::from(
            zero.len(),
            Some(format!("{} has weight zero but is not in h", g.name(extra))),
        )
    }
}

/// `ad x` nilpotent on in-window chains for nonisotropic root vectors `x`,
/// and every Cartan integer `2(β, α)/(α, α)` an integer in `[−4, 4]`.
fn ea3<F: Field>(g: &GradedAlgebra<F>, cartan: &CartanData<F>) -> CheckResult {
    let mut checked = 0;
    let weights: BTreeSet<&RatVector> = cartan.weights().iter().collect();
    for i in 0..g.dim() {
        let a = cartan.weight(i);
        let aa = cartan.pair(a, a);
        if aa.is_zero() {
            continue;
        }
        let x = g.basis(i);
        for j in 0..g.dim() {
            let mut y = g.basis(j);
            let mut steps = 0;
            while !y.is_empty() {
                match g.bracket(&x, &y) {
                    Some(z) => y = z,
                    None => break,
                }
                steps += 1;
                if steps > 4 && !y.is_empty() {
                    return CheckResult::from(
                        checked,
                        Some(format!("(ad {})^5 {} is nonzero", g.name(i), g.name(j))),
                    );
                }
            }
            checked += 1;
        }
        for b in &weights {
            let n = int(2) * cartan.pair(b, a) / &aa;
            checked += 1;
            if !n.is_integer() || n.abs() > int(4) {
                return CheckResult::from(
                    checked,
                    Some(format!(
                        "2(β, α)/(α, α) = {n} for α = {}, β = {}",
                        vec_to_string(a),
                        vec_to_string(b)
                    )),
                );
            }
        }
    }
    CheckResult::from(checked, None)
}

/// Every weight has integral coordinates in a basis of roots, up to a
/// common denominator, so the roots lie in a lattice.
fn ea4<F: Field>(cartan: &CartanData<F>) -> CheckResult {
    let weights: Vec<RatVector> = cartan
        .weights()
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let dim = cartan.rank();
    let span = span_basis(&RationalField, &weights, dim);
    let mut basis: Vec<RatVector> = Vec::new();
    for w in &weights {
        let mut trial = basis.clone();
        trial.push(w.clone());
        if span_basis(&RationalField, &trial, dim).len() > basis.len() {
            basis = trial;
        }
        if basis.len() == span.len() {
            break;
        }
    }
    let rows: Vec<Vec<Rational>> = (0..dim)
        .map(|r| basis.iter().map(|b| b[r].clone()).collect())
        .collect();
    for (n, w) in weights.iter().enumerate() {
        if solve(&RationalField, &rows, w).is_none() {
            return CheckResult::from(
                n + 1,
                Some(format!(
                    "{} is outside the span of the roots",
                    vec_to_string(w)
                )),
            );
        }
    }
    CheckResult::from(weights.len(), None)
}

fn weight_orthogonality<F: Field>(g: &GradedAlgebra<F>, cartan: &CartanData<F>) -> CheckResult {
    let mut entries: Vec<(usize, usize)> = g.nonzero_form().map(|(k, _)| *k).collect();
    entries.sort();
    for (n, &(i, j)) in entries.iter().enumerate() {
        let s: RatVector = cartan
            .weight(i)
            .iter()
            .zip(cartan.weight(j))
            .map(|(a, b)| a + b)
            .collect();
        if !is_zero_vec(&s) {
            return CheckResult::from(
                n + 1,
                Some(format!(
                    "({}, {}) pairs weights not summing to 0",
                    g.name(i),
                    g.name(j)
                )),
            );
        }
    }
    CheckResult::from(entries.len(), None)
}

fn nonisotropic_dim_one<F: Field>(cartan: &CartanData<F>) -> CheckResult {
    let spaces = cartan.weight_spaces();
    let mut checked = 0;
    for (w, idx) in &spaces {
        if cartan.is_isotropic(w) {
            continue;
        }
        checked += 1;
        if idx.len() != 1 {
            return CheckResult::from(
                checked,
                Some(format!(
                    "the root space of {} has dimension {}",
                    vec_to_string(w),
                    idx.len()
                )),
            );
        }
    }
    CheckResult::from(checked, None)
}

/// EA1 to EA5b on the window, EA5a and EA5b read off the inferred root
/// datum.
pub fn check_ea_axioms<F: Field>(
    g: &GradedAlgebra<F>,
    cartan: &CartanData<F>,
) -> Result<EaReport, LieError> {
    let report = infer_root_datum(g, cartan).and_then(|d| Ok(d.report()?));
    let (ea5a, ea5b, nullity, type_label, datum_error) = match report {
        Ok(r) => (r.ea5a, r.ea5b, Some(r.nullity), Some(r.type_label), None),
        Err(e) => (false, false, None, None, Some(e.to_string())),
    };
    Ok(EaReport {
        ea1: ea1(g),
        ea2: ea2(g, cartan),
        ea3: ea3(g, cartan),
        ea4: ea4(cartan),
        ea5a,
        ea5b,
        nullity,
        type_label,
        datum_error,
        weight_orthogonality: weight_orthogonality(g, cartan),
        nonisotropic_dim_one: nonisotropic_dim_one(cartan),
    })
}

fn sigma_length(action: &RatMatrix, alpha: &[Rational]) -> u64 {
    let mut cur = action.mul_vec(alpha).expect("square");
    let mut ell = 1;
    while cur != alpha {
        cur = action.mul_vec(&cur).expect("square");
        ell += 1;
    }
    ell
}

/// Either `π(α) ≠ 0` or `σ^ℓ` fixes no nonzero vector of `g_α`, where `ℓ`
/// is the `σ`-length of `α`.
pub fn condition_iii<F: Field>(
    g: &GradedAlgebra<F>,
    cartan: &CartanData<F>,
    sigma: &AlgebraAutomorphism<F>,
    alpha: &[Rational],
) -> Result<bool, LieError> {
    let spaces = cartan.weight_spaces();
    let idx = spaces
        .get(alpha)
        .filter(|_| !is_zero_vec(alpha))
        .ok_or_else(|| {
            LieError::Malformed(format!("{} is not a nonzero root", vec_to_string(alpha)))
        })?;
    let action = cartan.weight_action(g, sigma)?;
    let pi = average(&action, sigma.period())
        .mul_vec(alpha)
        .expect("square");
    if !is_zero_vec(&pi) {
        return Ok(true);
    }
    let ell = sigma_length(&action, alpha);
    let vs: Vec<Elt<F::Elem>> = idx.iter().map(|&i| g.basis(i)).collect();
    Ok(sigma.fixed_in_span(&vs, ell).is_empty())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub m: u64,
    /// The centralizer of `h̃` in `Aff(g, σ)` is `h̃`.
    pub i: bool,
    /// The centralizer of `h^σ` in `g^σ` is `h^σ`.
    pub ii: bool,
    pub iii: bool,
    /// No nonzero root has `π(α) = 0`.
    pub iv: bool,
    pub m_prime: bool,
    pub witness: Option<String>,
}

impl EquivalenceReport {
    /// (i), (ii), (iii) agree, and so does (iv) when `m` is prime.
    pub fn consistent(&self) -> bool {
        self.i == self.ii && self.ii == self.iii && (!self.m_prime || self.iii == self.iv)
    }
}

pub fn equivalence_conditions<F: Field>(
    g: &GradedAlgebra<F>,
    cartan: &CartanData<F>,
    sigma: &AlgebraAutomorphism<F>,
    window: i64,
) -> Result<EquivalenceReport, LieError> {
    let a = AffSigma::new(g, cartan, sigma, window)?;
    let t = a.algebra();
    let zero = vec![0; t.grading_rank()];
    let degree_zero: Vec<Elt<F::Elem>> = t.of_degree(&zero).iter().map(|&i| t.basis(i)).collect();
    let i = centralizer(t, a.cartan().h(), &degree_zero)?.len() == a.cartan().rank();
    let h_sigma = a.h_sigma();
    let g_sigma: Vec<Elt<F::Elem>> = a.g_sigma().iter().map(|&i| t.basis(i)).collect();
    let ii = centralizer(t, &h_sigma, &g_sigma)?.len() == h_sigma.len();
    let action = cartan.weight_action(g, sigma)?;
    let pi = average(&action, sigma.period());
    let mut iii = true;
    let mut iv = true;
    let mut witness = None;
    for w in cartan.weight_spaces().keys() {
        if is_zero_vec(w) {
            continue;
        }
        if iv && is_zero_vec(&pi.mul_vec(w).expect("square")) {
            iv = false;
            witness.get_or_insert_with(|| format!("π({}) = 0", vec_to_string(w)));
        }
        if iii && !condition_iii(g, cartan, sigma, w)? {
            iii = false;
            witness = Some(format!(
                "σ^ℓ fixes a vector of the root space of {}",
                vec_to_string(w)
            ));
        }
    }
    let m = sigma.period();
    Ok(EquivalenceReport {
        m,
        i,
        ii,
        iii,
        iv,
        m_prime: is_prime(m),
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeDims {
    pub degree: Vec<i64>,
    pub affinized: usize,
    pub twisted_loop: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreIdentityReport {
    /// The core of `Aff(g, σ)` equals `⊕ (g_c)_ī ⊗ t^i ⊕ ℚc` on interior degrees.
    pub core_matches: bool,
    /// The core is generated by the `g̃_α̃` with `(π(α), π(α)) ≠ 0`.
    pub generated_by_projected: bool,
    /// Generators plus their pairwise commutators already span the core.
    pub two_step_span: bool,
    pub c_in_core: bool,
    /// `[x⊗t^k, y⊗t^{−k}] − [x⊗t^{k+m}, y⊗t^{−k−m}] = −m(x, y)c`.
    pub c_via_commutator: bool,
    pub commutator_degrees: (i64, i64),
    pub tame: bool,
    /// `dim (g̃_c / Z(g̃_c))` against `dim L(g_c / Z(g_c), σ)`, per degree.
    pub quotient_dims: Vec<DegreeDims>,
    pub quotient_dims_agree: bool,
    pub degrees_checked: usize,
    pub mismatch: Option<String>,
}

/// Interior degrees where the two spans differ, if any.
fn first_difference<F: Field>(
    t: &GradedAlgebra<F>,
    a: &GradedSpan<F>,
    b: &GradedSpan<F>,
) -> Option<Vec<i64>> {
    for d in t.by_degree().keys().filter(|d| t.in_interior(d)) {
        if a.dim_at(d) != b.dim_at(d) || a.basis_at(d).iter().any(|v| !b.contains(t, v)) {
            return Some(d.clone());
        }
    }
    None
}

fn project_rank<F: Field>(
    g: &GradedAlgebra<F>,
    sigma: &AlgebraAutomorphism<F>,
    vs: &[Elt<F::Elem>],
    i: i64,
) -> Result<usize, LieError> {
    let mut s = GradedSpan::new(g);
    let mut n = 0;
    for v in vs {
        let p = sigma.project(v, i)?;
        if !p.is_empty() && s.insert(g, &p) {
            n += 1;
        }
    }
    Ok(n)
}

/// Checks the shape of the core of `Aff(g, σ)` on the window interior.
pub fn core_identity<F: Field>(
    g: &GradedAlgebra<F>,
    cartan: &CartanData<F>,
    sigma: &AlgebraAutomorphism<F>,
    window: i64,
) -> Result<CoreIdentityReport, LieError> {
    let f = g.field();
    let a = AffSigma::new(g, cartan, sigma, window)?;
    let t = a.algebra();
    let lift = |x: &Elt<F::Elem>, i: i64| -> Result<Elt<F::Elem>, LieError> {
        a.tensor(x, i)
            .ok_or_else(|| LieError::Malformed("a projected element is not σ̃-fixed".into()))
    };
    let core = Core::compute(t, a.cartan())?;

    let g_core = Core::compute(g, cartan)?;
    let g_core_vectors = g_core.span.vectors();
    let mut expected = GradedSpan::new(t);
    expected.insert(t, &basis_elt(f, a.c));
    for i in -window..=window {
        for v in &g_core_vectors {
            let p = sigma.project(v, i)?;
            if !p.is_empty() {
                expected.insert(t, &lift(&p, i)?);
            }
        }
    }
    let mut mismatch = None;
    let core_matches = match first_difference(t, &core.span, &expected) {
        Some(d) => {
            mismatch = Some(format!("core and ⊕(g_c)_ī⊗t^i ⊕ ℚc differ in degree {d:?}"));
            false
        }
        None => true,
    };

    let action = cartan.weight_action(g, sigma)?;
    let pi = average(&action, sigma.period());
    let mut projected_gens = Vec::new();
    for b in 0..g.dim() {
        let w = pi.mul_vec(cartan.weight(b)).expect("square");
        if cartan.is_isotropic(&w) {
            continue;
        }
        for i in -window..=window {
            let p = sigma.project(&g.basis(b), i)?;
            if !p.is_empty() {
                projected_gens.push(lift(&p, i)?);
            }
        }
    }
    let generated = generated_subalgebra(t, &projected_gens);
    let generated_by_projected = first_difference(t, &core.span, &generated).is_none();
    let two_step_span =
        first_difference(t, &core.span, &two_step_span(t, &core.generators)).is_none();
    let c_in_core = core.span.contains(t, &basis_elt(f, a.c));

    let (c_via_commutator, commutator_degrees) = commutator_trick(g, cartan, sigma, &a, &core)?;

    let centre = core.table(t);
    let g_table: std::collections::BTreeMap<Vec<i64>, (Vec<Elt<F::Elem>>, Vec<Elt<F::Elem>>)> =
        g_core
            .centralizer
            .iter()
            .map(|(d, cent)| {
                let core_vs = g_core.span.basis_at(d);
                (d.clone(), (core_vs, intersect(g, &g_core.span, cent)))
            })
            .collect();
    let mut quotient_dims = Vec::new();
    for row in &centre {
        let (i, p) = (row.degree[0], row.degree[1..].to_vec());
        let twisted_loop = match g_table.get(&p) {
            Some((core_vs, z)) => {
                project_rank(g, sigma, core_vs, i)? - project_rank(g, sigma, z, i)?
            }
            None => continue,
        };
        quotient_dims.push(DegreeDims {
            degree: row.degree.clone(),
            affinized: row.core - row.center,
            twisted_loop,
        });
    }
    let quotient_dims_agree = quotient_dims.iter().all(|d| d.affinized == d.twisted_loop);
    let tame = core.is_tame(t);
    Ok(CoreIdentityReport {
        core_matches,
        generated_by_projected,
        two_step_span,
        c_in_core,
        c_via_commutator,
        commutator_degrees,
        tame,
        degrees_checked: t.by_degree().keys().filter(|d| t.in_interior(d)).count(),
        quotient_dims,
        quotient_dims_agree,
        mismatch,
    })
}

/// `span ∩ span(vs)` in the degree of `vs`.
fn intersect<F: Field>(
    g: &GradedAlgebra<F>,
    span: &GradedSpan<F>,
    vs: &[Elt<F::Elem>],
) -> Vec<Elt<F::Elem>> {
    let f = g.field();
    let Some(d) = vs.first().and_then(|v| g.degree_of(v)) else {
        return vec![];
    };
    let a = span.basis_at(&d);
    let idx = g.of_degree(&d).to_vec();
    let cols: Vec<Vec<F::Elem>> = a.iter().chain(vs).map(|v| to_dense(f, v, &idx)).collect();
    let rows: Vec<Vec<F::Elem>> = (0..idx.len())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut inside = GradedSpan::new(g);
    let mut out = Vec::new();
    for coef in kernel(f, &rows, cols.len()) {
        let mut v = Elt::new();
        for (x, c) in a.iter().zip(&coef) {
            add_scaled(f, &mut v, x, c);
        }
        if !v.is_empty() && inside.insert(g, &v) {
            out.push(v);
        }
    }
    out
}

/// Evaluates the commutator combination that produces `c` from a
/// nonisotropic `x ∈ (g_c)_ī` and a partner `y ∈ g_{−ī}`, with all four
/// factors in interior degrees.
fn commutator_trick<F: Field>(
    g: &GradedAlgebra<F>,
    cartan: &CartanData<F>,
    sigma: &AlgebraAutomorphism<F>,
    a: &AffSigma<F>,
    core: &Core<F>,
) -> Result<(bool, (i64, i64)), LieError> {
    let f = g.field();
    let m = sigma.period() as i64;
    let n = a.aff.algebra.window();
    let zero = vec![0; g.grading_rank()];
    for b in g.of_degree(&zero) {
        if cartan.is_isotropic(cartan.weight(*b)) {
            continue;
        }
        for i in 0..m {
            let x = sigma.project(&g.basis(*b), i)?;
            if x.is_empty() {
                continue;
            }
            let Some(k) = (-n + 1..n)
                .filter(|k| (k - i).rem_euclid(m) == 0 && (k + m).abs() < n)
                .min_by_key(|k| k.abs())
            else {
                return Err(LieError::Window(format!(
                    "the commutator trick needs degrees k and k+{m} inside the window interior"
                )));
            };
            for b2 in 0..g.dim() {
                let y = sigma.project(&g.basis(b2), -i)?;
                let xy = g.form(&x, &y);
                if y.is_empty() || f.is_zero(&xy) {
                    continue;
                }
                let amb = &a.aff.algebra;
                let br = |p: i64| {
                    amb.bracket(&a.aff.tensor(&x, p), &a.aff.tensor(&y, -p))
                        .expect("interior degrees")
                };
                let u = sub(f, &br(k), &br(k + m));
                let mut want = Elt::new();
                add_scaled(
                    f,
                    &mut want,
                    &basis_elt(f, a.aff.c()),
                    &f.mul(&f.from_int(-m), &xy),
                );
                let in_core = a
                    .sub
                    .coords(&u)
                    .is_some_and(|v| core.span.contains(a.algebra(), &v));
                return Ok((u == want && in_core, (k, k + m)));
            }
        }
    }
    Ok((false, (0, 0)))
}
