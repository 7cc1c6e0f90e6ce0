use rayon::prelude::*;
use serde::Serialize;

use super::algebra::{add_scaled, Elt, GradedAlgebra};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::exactnum::{Field, Rational};

/// Outcome of an exhaustive in-window check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub holds: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

impl CheckResult {
    pub(crate) fn from(checked: usize, witness: Option<String>) -> Self {
        CheckResult {
            holds: witness.is_none(),
            checked,
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub antisymmetry: CheckResult,
    pub jacobi: CheckResult,
    pub grading: CheckResult,
    pub form_symmetric: CheckResult,
    pub form_invariant: CheckResult,
    pub degree_pairing: CheckResult,
}

impl StructureReport {
    pub fn all_hold(&self) -> bool {
        [
            &self.antisymmetry,
            &self.jacobi,
            &self.grading,
            &self.form_symmetric,
            &self.form_invariant,
            &self.degree_pairing,
        ]
        .iter()
        .all(|c| c.holds)
    }
}

pub fn check_structure<F: Field>(g: &GradedAlgebra<F>) -> StructureReport {
    StructureReport {
        antisymmetry: antisymmetry(g),
        jacobi: jacobi(g),
        grading: grading(g),
        form_symmetric: form_symmetric(g),
        form_invariant: form_invariant(g),
        degree_pairing: degree_pairing(g),
    }
}

fn antisymmetry<F: Field>(g: &GradedAlgebra<F>) -> CheckResult {
    let f = g.field();
    let mut checked = 0;
    for i in 0..g.dim() {
        for j in i..g.dim() {
            let Some(a) = g.bracket_basis(i, j) else {
                continue;
            };
            let b = g.bracket_basis(j, i).expect("symmetric window");
            checked += 1;
            let mut s = a.clone();
            add_scaled(f, &mut s, b, &f.one());
            if !s.is_empty() {
                return CheckResult::from(
                    checked,
                    Some(format!("[{0}, {1}] != -[{1}, {0}]", g.name(i), g.name(j))),
                );
            }
        }
    }
    CheckResult::from(checked, None)
}

fn grading<F: Field>(g: &GradedAlgebra<F>) -> CheckResult {
    let mut entries: Vec<_> = g.nonzero_brackets().collect();
    entries.sort_by_key(|(k, _)| **k);
    for (n, ((i, j), v)) in entries.iter().enumerate() {
        let want = g.degree_sum(*i, *j);
        if !g.in_window(&want) || v.keys().any(|&l| g.degree(l) != want.as_slice()) {
            return CheckResult::from(
                n + 1,
                Some(format!(
                    "[{}, {}] has the wrong degree",
                    g.name(*i),
                    g.name(*j)
                )),
            );
        }
    }
    CheckResult::from(entries.len(), None)
}

pub(crate) fn form_symmetric<F: Field>(g: &GradedAlgebra<F>) -> CheckResult {
    let mut entries: Vec<_> = g.nonzero_form().map(|(k, _)| *k).collect();
    entries.sort();
    for (n, (i, j)) in entries.iter().enumerate() {
        if g.form_basis(*i, *j) != g.form_basis(*j, *i) {
            return CheckResult::from(
                n + 1,
                Some(format!("({}, {}) is not symmetric", g.name(*i), g.name(*j))),
            );
        }
    }
    CheckResult::from(entries.len(), None)
}

pub(crate) fn degree_pairing<F: Field>(g: &GradedAlgebra<F>) -> CheckResult {
    let mut entries: Vec<_> = g.nonzero_form().map(|(k, _)| *k).collect();
    entries.sort();
    for (n, (i, j)) in entries.iter().enumerate() {
        if g.degree_sum(*i, *j).iter().any(|&x| x != 0) {
            return CheckResult::from(
                n + 1,
                Some(format!(
                    "({}, {}) pairs unequal degrees",
                    g.name(*i),
                    g.name(*j)
                )),
            );
        }
    }
    CheckResult::from(entries.len(), None)
}

pub(crate) fn form_invariant<F: Field>(g: &GradedAlgebra<F>) -> CheckResult {
    let f = g.field();
    let results: Vec<(usize, Option<String>)> = (0..g.dim())
        .into_par_iter()
        .map(|i| {
            let mut checked = 0;
            for j in 0..g.dim() {
                let Some(ij) = g.bracket_basis(i, j) else {
                    continue;
                };
                let target: Vec<i64> = g.degree_sum(i, j).iter().map(|x| -x).collect();
                for &k in g.of_degree(&target) {
                    let Some(jk) = g.bracket_basis(j, k) else {
                        continue;
                    };
                    checked += 1;
                    let left = g.form(ij, &g.basis(k));
                    let right = g.form(&g.basis(i), jk);
                    if !f.is_zero(&f.sub(&left, &right)) {
                        let w = format!(
                            "([{}, {}], {}) != ({}, [{}, {}])",
                            g.name(i),
                            g.name(j),
                            g.name(k),
                            g.name(i),
                            g.name(j),
                            g.name(k)
                        );
                        return (checked, Some(w));
                    }
                }
            }
            (checked, None)
        })
        .collect();
    summarize(results)
}

fn summarize(results: Vec<(usize, Option<String>)>) -> CheckResult {
    let checked = results.iter().map(|r| r.0).sum();
    let witness = results.into_iter().find_map(|r| r.1);
    CheckResult::from(checked, witness)
}

/// `[[x, y], z]` for basis `x, y` and basis index `z`, or `None` when some
/// intermediate bracket leaves the window.
fn nested<F: Field>(g: &GradedAlgebra<F>, xy: &Elt<F::Elem>, k: usize) -> Option<Elt<F::Elem>> {
    let f = g.field();
    let mut out = Elt::new();
    for (l, c) in xy {
        let v = g.bracket_basis(*l, k)?;
        add_scaled(f, &mut out, v, c);
    }
    Some(out)
}

/// Bitset of basis pairs with a nonzero bracket.
struct NonzeroPairs {
    n: usize,
    bits: Vec<u64>,
}

impl NonzeroPairs {
    fn new<F: Field>(g: &GradedAlgebra<F>) -> Self {
        let n = g.dim();
        let mut bits = vec![0u64; (n * n).div_ceil(64)];
        for i in 0..n {
            for j in 0..n {
                if g.bracket_basis(i, j).is_some_and(|v| !v.is_empty()) {
                    let b = i * n + j;
                    bits[b / 64] |= 1 << (b % 64);
                }
            }
        }
        NonzeroPairs { n, bits }
    }

    fn get(&self, i: usize, j: usize) -> bool {
        let b = i * self.n + j;
        self.bits[b / 64] >> (b % 64) & 1 == 1
    }
}

/// Basis indices bucketed by degree in a dense box `[−N, N]^r`.
struct DegreeBuckets {
    window: i64,
    side: i64,
    rank: usize,
    slots: Vec<Vec<usize>>,
}

impl DegreeBuckets {
    fn new<F: Field>(g: &GradedAlgebra<F>) -> Self {
        let window = g.window();
        let side = 2 * window + 1;
        let rank = g.grading_rank();
        let mut slots = vec![Vec::new(); side.pow(rank as u32) as usize];
        let mut out = DegreeBuckets {
            window,
            side,
            rank,
            slots: vec![],
        };
        for i in 0..g.dim() {
            slots[out.slot(g.degree(i))].push(i);
        }
        out.slots = slots;
        out
    }

    fn slot(&self, d: &[i64]) -> usize {
        d.iter()
            .rev()
            .fold(0, |acc, x| acc * self.side + x + self.window) as usize
    }

    /// Indices above `min` whose degree lies in the box `lo..=hi`.
    fn for_each_in_box(
        &self,
        lo: &[i64],
        hi: &[i64],
        min: usize,
        mut f: impl FnMut(usize) -> bool,
    ) -> bool {
        if lo.iter().zip(hi).any(|(a, b)| a > b) {
            return true;
        }
        let mut d = lo.to_vec();
        loop {
            let bucket = &self.slots[self.slot(&d)];
            for &k in &bucket[bucket.partition_point(|&k| k <= min)..] {
                if !f(k) {
                    return false;
                }
            }
            let mut c = 0;
            loop {
                if c == self.rank {
                    return true;
                }
                if d[c] < hi[c] {
                    d[c] += 1;
                    break;
                }
                d[c] = lo[c];
                c += 1;
            }
        }
    }
}

/// Structure constants as integers over a common denominator, when every
/// entry is rational and small enough.
struct IntTable {
    n: usize,
    entries: Vec<Option<Box<[(u32, i64)]>>>,
}

impl IntTable {
    fn new<F: Field>(g: &GradedAlgebra<F>) -> Option<Self> {
        let f = g.field();
        let n = g.dim();
        if n * n > 16_000_000 {
            return None;
        }
        let mut denom = BigInt::one();
        for i in 0..n {
            for j in 0..n {
                for c in g.bracket_basis(i, j).into_iter().flat_map(|v| v.values()) {
                    denom = denom.lcm(f.to_rational(c)?.denom());
                }
            }
        }
        let scale = Rational::from_integer(denom);
        let mut entries = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                let Some(v) = g.bracket_basis(i, j).filter(|v| !v.is_empty()) else {
                    continue;
                };
                let row = v
                    .iter()
                    .map(|(l, c)| {
                        Some((
                            u32::try_from(*l).ok()?,
                            (f.to_rational(c)? * &scale).to_integer().to_i64()?,
                        ))
                    })
                    .collect::<Option<Box<[_]>>>()?;
                entries[i * n + j] = Some(row);
            }
        }
        Some(IntTable { n, entries })
    }

    fn get(&self, i: usize, j: usize) -> &[(u32, i64)] {
        self.entries[i * self.n + j].as_deref().unwrap_or(&[])
    }

    /// `[[i, j], k] + [[j, k], i] + [[k, i], j] = 0`, with a zeroed scratch
    /// vector that is left zeroed.
    fn jacobi_vanishes(
        &self,
        i: usize,
        j: usize,
        k: usize,
        acc: &mut [i128],
        touched: &mut Vec<usize>,
    ) -> bool {
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            for &(l, c) in self.get(x, y) {
                for &(m, c2) in self.get(l as usize, z) {
                    let m = m as usize;
                    if acc[m] == 0 {
                        touched.push(m);
                    }
                    acc[m] += i128::from(c) * i128::from(c2);
                }
            }
        }
        let ok = touched.iter().all(|&m| acc[m] == 0);
        for &m in touched.iter() {
            acc[m] = 0;
        }
        touched.clear();
        ok
    }
}

fn jacobi<F: Field>(g: &GradedAlgebra<F>) -> CheckResult {
    let f = g.field();
    let n = g.dim();
    let w = g.window();
    let nonzero = NonzeroPairs::new(g);
    let buckets = DegreeBuckets::new(g);
    let ints = IntTable::new(g);
    let results: Vec<(usize, Option<String>)> = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0i128; n], Vec::new()),
            |(acc, touched), i| {
                let mut checked = 0;
                let mut witness = None;
                let di = g.degree(i);
                for j in i + 1..n {
                    let Some(ij) = g.bracket_basis(i, j) else {
                        continue;
                    };
                    let dj = g.degree(j);
                    let ij_nonzero = !ij.is_empty();
                    // `k` must keep `[k, i]`, `[j, k]` and `[[i, j], k]` in the window.
                    let lo: Vec<i64> = (0..di.len())
                        .map(|c| -w - di[c].min(dj[c]).min(di[c] + dj[c]))
                        .collect();
                    let hi: Vec<i64> = (0..di.len())
                        .map(|c| w - di[c].max(dj[c]).max(di[c] + dj[c]))
                        .collect();
                    let lo: Vec<i64> = lo.iter().map(|x| (*x).max(-w)).collect();
                    let hi: Vec<i64> = hi.iter().map(|x| (*x).min(w)).collect();
                    let done = buckets.for_each_in_box(&lo, &hi, j, |k| {
                        checked += 1;
                        if !(ij_nonzero || nonzero.get(j, k) || nonzero.get(k, i)) {
                            return true;
                        }
                        let vanishes = match &ints {
                            Some(t) => t.jacobi_vanishes(i, j, k, acc, touched),
                            None => {
                                let jk = g.bracket_basis(j, k).expect("in window");
                                let ki = g.bracket_basis(k, i).expect("in window");
                                let mut sum = nested(g, ij, k).expect("in window");
                                add_scaled(
                                    f,
                                    &mut sum,
                                    &nested(g, jk, i).expect("in window"),
                                    &f.one(),
                                );
                                add_scaled(
                                    f,
                                    &mut sum,
                                    &nested(g, ki, j).expect("in window"),
                                    &f.one(),
                                );
                                sum.is_empty()
                            }
                        };
                        if vanishes {
                            true
                        } else {
                            witness = Some(format!(
                                "Jacobi fails on ({}, {}, {})",
                                g.name(i),
                                g.name(j),
                                g.name(k)
                            ));
                            false
                        }
                    });
                    if !done {
                        return (checked, witness);
                    }
                }
                (checked, None)
            },
        )
        .collect();
    summarize(results)
}
