use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A periodic subset of `ℤ^k`: `{n : n mod period ∈ residues}`, with
/// componentwise reduction. Kept with minimal period, so equality of sets
/// is equality of values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftSet {
    period: Vec<i64>,
    residues: BTreeSet<Vec<i64>>,
}

/// One arithmetic progression `offset + modulus·ℤ^k` (componentwise).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progression {
    pub offset: Vec<i64>,
    pub modulus: Vec<i64>,
}

fn reduce(n: &[i64], period: &[i64]) -> Vec<i64> {
    n.iter()
        .zip(period)
        .map(|(x, p)| x.rem_euclid(*p))
        .collect()
}

/// All vectors `v` with `0 ≤ v_i < bound_i`.
pub(crate) fn box_points(bound: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

impl ShiftSet {
    /// Every shift: `ℤ^k`.
    pub fn all(k: usize) -> Self {
        ShiftSet {
            period: vec![1; k],
            residues: [vec![0; k]].into_iter().collect(),
        }
    }

    pub fn empty(k: usize) -> Self {
        ShiftSet {
            period: vec![1; k],
            residues: BTreeSet::new(),
        }
    }

    /// Panics if some `period_i < 1` or a residue has the wrong length.
    pub fn new(period: Vec<i64>, residues: impl IntoIterator<Item = Vec<i64>>) -> Self {
        assert!(period.iter().all(|&p| p >= 1), "periods must be positive");
        let residues = residues
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), period.len());
                reduce(&r, &period)
            })
            .collect();
        ShiftSet { period, residues }.minimized()
    }

    pub fn from_progressions(k: usize, progs: &[Progression]) -> Result<Self, String> {
        let mut out = ShiftSet::empty(k);
        for p in progs {
            if p.offset.len() != k || p.modulus.len() != k {
                return Err(format!(
                    "progression has length {}/{}, expected {k}",
                    p.offset.len(),
                    p.modulus.len()
                ));
            }
            if p.modulus.iter().any(|&m| m < 1) {
                return Err(format!(
                    "progression modulus {:?} must be positive",
                    p.modulus
                ));
            }
            out = out.union(&ShiftSet::new(p.modulus.clone(), [p.offset.clone()]));
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.period.len()
    }

    pub fn period(&self) -> &[i64] {
        &self.period
    }

    pub fn residues(&self) -> &BTreeSet<Vec<i64>> {
        &self.residues
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, n: &[i64]) -> bool {
        self.residues.contains(&reduce(n, &self.period))
    }

    pub fn progressions(&self) -> Vec<Progression> {
        self.residues
            .iter()
            .map(|r| Progression {
                offset: r.clone(),
                modulus: self.period.clone(),
            })
            .collect()
    }

    /// Residues with respect to a multiple `big` of the period.
    pub fn residues_mod(&self, big: &[i64]) -> Vec<Vec<i64>> {
        debug_assert!(big.iter().zip(&self.period).all(|(b, p)| b % p == 0));
        box_points(big)
            .into_iter()
            .filter(|n| self.contains(n))
            .collect()
    }

    fn with_period(&self, big: &[i64]) -> ShiftSet {
        ShiftSet {
            period: big.to_vec(),
            residues: self.residues_mod(big).into_iter().collect(),
        }
    }

    fn minimized(mut self) -> Self {
        for i in 0..self.period.len() {
            let mut changed = true;
            while changed {
                changed = false;
                let p = self.period[i];
                for q in 2..=p {
                    if p % q != 0 {
                        continue;
                    }
                    let step = p / q;
                    let invariant = self.residues.iter().all(|r| {
                        let mut s = r.clone();
                        s[i] = (s[i] + step).rem_euclid(p);
                        self.residues.contains(&s)
                    });
                    if invariant {
                        self.period[i] = step;
                        let period = self.period.clone();
                        self.residues = self.residues.iter().map(|r| reduce(r, &period)).collect();
                        changed = true;
                        break;
                    }
                }
            }
        }
        self
    }

    pub fn union(&self, other: &ShiftSet) -> ShiftSet {
        let big: Vec<i64> = self
            .period
            .iter()
            .zip(&other.period)
            .map(|(a, b)| a.lcm(b))
            .collect();
        let mut out = self.with_period(&big);
        out.residues.extend(other.with_period(&big).residues);
        out.minimized()
    }

    pub fn intersection(&self, other: &ShiftSet) -> ShiftSet {
        let big: Vec<i64> = self
            .period
            .iter()
            .zip(&other.period)
            .map(|(a, b)| a.lcm(b))
            .collect();
        let a = self.with_period(&big);
        let b = other.with_period(&big);
        ShiftSet {
            period: big,
            residues: a.residues.intersection(&b.residues).cloned().collect(),
        }
        .minimized()
    }

    /// `{n + t : n ∈ self}`.
    pub fn translate(&self, t: &[i64]) -> ShiftSet {
        let residues = self.residues.iter().map(|r| {
            let s: Vec<i64> = r.iter().zip(t).map(|(a, b)| a + b).collect();
            reduce(&s, &self.period)
        });
        ShiftSet {
            period: self.period.clone(),
            residues: residues.collect(),
        }
    }

    pub fn negate(&self) -> ShiftSet {
        let residues = self
            .residues
            .iter()
            .map(|r| reduce(&r.iter().map(|x| -x).collect::<Vec<_>>(), &self.period));
        ShiftSet {
            period: self.period.clone(),
            residues: residues.collect(),
        }
    }

    /// `self × other ⊂ ℤ^{k+k'}`.
    pub fn product(&self, other: &ShiftSet) -> ShiftSet {
        let mut period = self.period.clone();
        period.extend(&other.period);
        let residues = self.residues.iter().flat_map(|a| {
            other.residues.iter().map(move |b| {
                let mut r = a.clone();
                r.extend(b);
                r
            })
        });
        ShiftSet {
            period,
            residues: residues.collect(),
        }
    }

    /// Image under `e_i ↦ e_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> ShiftSet {
        let move_to = |v: &[i64]| {
            let mut w = vec![0; v.len()];
            for (i, &p) in perm.iter().enumerate() {
                w[p] = v[i];
            }
            w
        };
        ShiftSet {
            period: move_to(&self.period),
            residues: self.residues.iter().map(|r| move_to(r)).collect(),
        }
    }

    /// Image under `n ↦ (Σ_{i∈orbit_j} n_i)_j` for disjoint orbits.
    pub fn orbit_sums(&self, orbits: &[Vec<usize>]) -> ShiftSet {
        let period: Vec<i64> = orbits
            .iter()
            .map(|o| o.iter().fold(0i64, |g, &i| g.gcd(&self.period[i])))
            .collect();
        let residues = self
            .residues
            .iter()
            .map(|r| {
                let s: Vec<i64> = orbits
                    .iter()
                    .map(|o| o.iter().map(|&i| r[i]).sum())
                    .collect();
                reduce(&s, &period)
            })
            .collect();
        ShiftSet { period, residues }.minimized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_period_is_canonical() {
        let a = ShiftSet::new(vec![4], [vec![0], vec![2]]);
        assert_eq!(a, ShiftSet::new(vec![2], [vec![0]]));
        let all = ShiftSet::new(vec![3], [vec![0], vec![1], vec![2]]);
        assert_eq!(all, ShiftSet::all(1));
    }

    #[test]
    fn membership_and_ops() {
        let odd = ShiftSet::new(vec![2], [vec![1]]);
        assert!(odd.contains(&[-3]));
        assert!(!odd.contains(&[4]));
        let even = odd.translate(&[1]);
        assert_eq!(even.union(&odd), ShiftSet::all(1));
        assert!(even.intersection(&odd).is_empty());
        assert_eq!(odd.negate(), odd);
        let thirds = ShiftSet::new(vec![3], [vec![1]]);
        assert_eq!(thirds.negate(), ShiftSet::new(vec![3], [vec![2]]));
        assert_eq!(odd.union(&thirds).period(), &[6]);
    }

    #[test]
    fn progressions_roundtrip() {
        let s = ShiftSet::new(vec![2, 3], [vec![1, 0], vec![0, 2]]);
        let back = ShiftSet::from_progressions(2, &s.progressions()).unwrap();
        assert_eq!(back, s);
        assert!(ShiftSet::from_progressions(
            1,
            &[Progression {
                offset: vec![0],
                modulus: vec![0]
            }]
        )
        .is_err());
    }

    #[test]
    fn orbit_sums() {
        // (n1, n2) with n1 even, n2 arbitrary  ↦  n1 + n2: everything.
        let s = ShiftSet::new(vec![2, 1], [vec![0, 0]]);
        assert_eq!(s.orbit_sums(&[vec![0, 1]]), ShiftSet::all(1));
        let t = ShiftSet::new(vec![2, 2], [vec![1, 1]]);
        assert_eq!(
            t.orbit_sums(&[vec![0, 1]]),
            ShiftSet::new(vec![2], [vec![0]])
        );
        let u = ShiftSet::new(vec![2, 2], [vec![0, 0], vec![1, 1]]);
        assert_eq!(u.orbit_sums(&[vec![0], vec![1]]), u);
        let p = ShiftSet::new(vec![2], [vec![1]]).product(&ShiftSet::new(vec![3], [vec![0]]));
        assert!(p.contains(&[3, 6]) && !p.contains(&[2, 6]) && !p.contains(&[1, 1]));
        assert_eq!(p.permute(&[1, 0]), ShiftSet::new(vec![3, 2], [vec![0, 1]]));
        let zero_rank = ShiftSet::all(0);
        assert!(zero_rank.contains(&[]));
    }
}
