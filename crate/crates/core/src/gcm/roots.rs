use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::{Gcm, GcmError};
use crate::ears::{Coset, LatticeCoords, RootDatum, ShiftSet};
use crate::exactnum::{int, RatVector, Rational};

/// Real roots with `|height| ≤ max_height`, coordinates in the simple roots.
fn real_roots(a: &Gcm, max_height: i64) -> BTreeSet<Vec<i64>> {
    let n = a.size();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut found: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    found.extend(
        simple
            .iter()
            .map(|s| s.iter().map(|x| -x).collect::<Vec<_>>()),
    );
    let mut frontier: Vec<Vec<i64>> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let next: BTreeSet<Vec<i64>> = frontier
            .par_iter()
            .flat_map_iter(|r| {
                (0..n).filter_map(move |i| {
                    let c: i64 = (0..n).map(|j| r[j] * a.entry(i, j)).sum();
                    if c == 0 {
                        return None;
                    }
                    let mut w = r.clone();
                    w[i] -= c;
                    (w.iter().sum::<i64>().abs() <= max_height).then_some(w)
                })
            })
            .collect();
        frontier = next
            .into_iter()
            .filter(|w| found.insert(w.clone()))
            .collect();
    }
    found
}

/// Smallest period `p` such that `observed ∩ [lo, hi]` is `S ∩ [lo, hi]`
/// for a `p`-periodic `S`, with at least two full periods in the window.
fn infer_progression(observed: &BTreeSet<i64>, lo: i64, hi: i64) -> Option<ShiftSet> {
    let width = hi - lo + 1;
    for p in 1..=width / 2 {
        let residues: BTreeSet<i64> = observed.iter().map(|t| t.rem_euclid(p)).collect();
        if (lo..=hi).all(|t| residues.contains(&t.rem_euclid(p)) == observed.contains(&t)) {
            return Some(ShiftSet::new(
                vec![p],
                residues.into_iter().map(|r| vec![r]),
            ));
        }
    }
    None
}

fn datum_at(a: &Gcm, bound: i64) -> Result<RootDatum, GcmError> {
    let marks = a.validate_affine()?;
    let form = a.invariant_form()?;
    let n = a.size();
    let delta: RatVector = marks.0.iter().map(|&m| int(m)).collect();
    let height_delta: i64 = marks.0.iter().sum();
    let coords = LatticeCoords::new(n, std::slice::from_ref(&delta))?;

    let roots = real_roots(a, bound * height_delta);
    let mut by_rep: BTreeMap<RatVector, BTreeSet<i64>> = BTreeMap::new();
    for r in &roots {
        let v: RatVector = r.iter().map(|&x| int(x)).collect();
        let (rep, t) = coords.canonicalize(&v)?;
        by_rep.entry(rep).or_default().insert(t[0]);
    }
    let height = |v: &RatVector| v.iter().sum::<Rational>();
    let mut cosets = Vec::new();
    for (rep, ts) in by_rep {
        // Shifts t with |ht(rep) + t·ht(δ)| ≤ bound·ht(δ), all of them enumerated.
        let h = height(&rep);
        let hd = int(height_delta);
        let hi = ((int(bound) * &hd - &h) / &hd).floor().to_integer();
        let lo = ((-int(bound) * &hd - &h) / &hd).ceil().to_integer();
        let (lo, hi) = (i64::try_from(lo).unwrap(), i64::try_from(hi).unwrap());
        let shifts = infer_progression(&ts, lo, hi).ok_or(GcmError::Unstable { bound })?;
        cosets.push(Coset { rep, shifts });
    }
    cosets.push(Coset {
        rep: vec![int(0); n],
        shifts: ShiftSet::all(1),
    });
    Ok(RootDatum::new(n, form, vec![delta], cosets, None)?)
}

/// Root datum of the affine algebra of `A`: real-root cosets from a
/// reflection search up to height `bound·ht(δ)`, and imaginary roots `ℤδ`.
/// The inferred progressions must agree at `bound` and `bound + 1`.
pub fn affine_root_datum(a: &Gcm, bound: i64) -> Result<RootDatum, GcmError> {
    if bound < 2 {
        return Err(GcmError::BoundTooSmall(bound));
    }
    let d = datum_at(a, bound)?;
    let check = datum_at(a, bound + 1)?;
    if d.cosets() != check.cosets() {
        return Err(GcmError::Unstable { bound });
    }
    Ok(d)
}
