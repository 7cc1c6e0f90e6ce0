use serde::Serialize;

use super::{Gcm, GcmError};
use crate::exactnum::RatMatrix;

/// A permutation of the nodes preserving `A`, with its exact period.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DiagramAutomorphism {
    pub perm: Vec<usize>,
    pub period: u64,
}

fn perm_period(perm: &[usize]) -> u64 {
    let mut cur: Vec<usize> = perm.to_vec();
    let id: Vec<usize> = (0..perm.len()).collect();
    let mut k = 1;
    while cur != id {
        cur = cur.iter().map(|&i| perm[i]).collect();
        k += 1;
    }
    k
}

impl DiagramAutomorphism {
    pub fn new(a: &Gcm, perm: Vec<usize>) -> Result<Self, GcmError> {
        let n = a.size();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(GcmError::BadAutomorphism(format!(
                "{perm:?} is not a permutation of 0..{n}"
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if a.entry(perm[i], perm[j]) != a.entry(i, j) {
                    return Err(GcmError::BadAutomorphism(format!(
                        "a[σ{i}][σ{j}] != a[{i}][{j}]"
                    )));
                }
            }
        }
        let period = perm_period(&perm);
        Ok(DiagramAutomorphism { perm, period })
    }

    pub fn identity(n: usize) -> Self {
        DiagramAutomorphism {
            perm: (0..n).collect(),
            period: 1,
        }
    }

    /// `⟨σ⟩` has a single orbit on the nodes.
    pub fn is_transitive(&self) -> bool {
        let n = self.perm.len();
        let mut i = self.perm[0];
        let mut len = 1;
        while i != 0 {
            i = self.perm[i];
            len += 1;
        }
        len == n
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut orbit = vec![];
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                orbit.push(i);
                i = self.perm[i];
            }
            out.push(orbit);
        }
        out
    }

    /// `α_i ↦ α_{σ i}` on the root lattice.
    pub fn lattice_matrix(&self) -> RatMatrix {
        RatMatrix::permutation(&self.perm)
    }

    pub fn compose(&self, other: &DiagramAutomorphism) -> DiagramAutomorphism {
        let perm: Vec<usize> = other.perm.iter().map(|&i| self.perm[i]).collect();
        let period = perm_period(&perm);
        DiagramAutomorphism { perm, period }
    }

    pub fn inverse(&self) -> DiagramAutomorphism {
        let mut perm = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
        }
        DiagramAutomorphism {
            perm,
            period: self.period,
        }
    }
}

/// Every node permutation preserving `A`, in lexicographic order.
pub fn diagram_automorphisms(a: &Gcm) -> Vec<DiagramAutomorphism> {
    let n = a.size();
    fn go(a: &Gcm, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = perm.len();
        if i == a.size() {
            out.push(perm.clone());
            return;
        }
        for c in 0..a.size() {
            if used[c] {
                continue;
            }
            let ok = a.entry(c, c) == a.entry(i, i)
                && (0..i).all(|j| {
                    a.entry(c, perm[j]) == a.entry(i, j) && a.entry(perm[j], c) == a.entry(j, i)
                });
            if ok {
                used[c] = true;
                perm.push(c);
                go(a, perm, used, out);
                perm.pop();
                used[c] = false;
            }
        }
    }
    let mut raw = Vec::new();
    go(a, &mut Vec::with_capacity(n), &mut vec![false; n], &mut raw);
    raw.into_iter()
        .map(|perm| {
            let period = perm_period(&perm);
            DiagramAutomorphism { perm, period }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiagramVerdict {
    pub empty_nonisotropic: bool,
    pub tame_eala: bool,
    pub nullity: Option<usize>,
}

/// Transitive `σ`: no nonisotropic roots. Otherwise a tame EALA of nullity 2.
pub fn diagram_verdict(a: &Gcm, sigma: &DiagramAutomorphism) -> Result<DiagramVerdict, GcmError> {
    a.validate_affine()?;
    DiagramAutomorphism::new(a, sigma.perm.clone())?;
    Ok(if sigma.is_transitive() {
        DiagramVerdict {
            empty_nonisotropic: true,
            tame_eala: false,
            nullity: None,
        }
    } else {
        DiagramVerdict {
            empty_nonisotropic: false,
            tame_eala: true,
            nullity: Some(2),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcm::affine_catalog;

    fn entry(name: &str) -> Gcm {
        affine_catalog(8)
            .into_iter()
            .find(|e| e.name == name)
            .unwrap()
            .gcm
    }

    #[test]
    fn automorphism_groups() {
        assert_eq!(diagram_automorphisms(&entry("A_1^(1)")).len(), 2);
        for ell in 2..=6 {
            assert_eq!(
                diagram_automorphisms(&entry(&format!("A_{ell}^(1)"))).len(),
                2 * (ell + 1)
            );
        }
        let finite_a1 = Gcm::new(vec![vec![2]]).unwrap();
        assert_eq!(
            diagram_automorphisms(&finite_a1),
            vec![DiagramAutomorphism::identity(1)]
        );
    }

    #[test]
    fn groups_are_closed() {
        for e in affine_catalog(5) {
            let g = diagram_automorphisms(&e.gcm);
            for s in &g {
                assert!(g.contains(&s.inverse()));
                for t in &g {
                    assert!(g.contains(&s.compose(t)), "{}", e.name);
                }
            }
        }
    }

    #[test]
    fn transitivity() {
        let a2 = entry("A_2^(1)");
        let rot = DiagramAutomorphism::new(&a2, vec![1, 2, 0]).unwrap();
        assert!(rot.is_transitive());
        assert_eq!(rot.period, 3);
        let a1 = entry("A_1^(1)");
        assert!(DiagramAutomorphism::new(&a1, vec![1, 0])
            .unwrap()
            .is_transitive());
        let a3 = entry("A_3^(1)");
        let flip = DiagramAutomorphism::new(&a3, vec![0, 3, 2, 1]).unwrap();
        assert!(!flip.is_transitive());
        assert!(DiagramAutomorphism::new(&a3, vec![1, 0, 2, 3]).is_err());
    }

    #[test]
    fn verdicts() {
        let a2 = entry("A_2^(1)");
        let rot = DiagramAutomorphism::new(&a2, vec![1, 2, 0]).unwrap();
        assert!(diagram_verdict(&a2, &rot).unwrap().empty_nonisotropic);
        let a3 = entry("A_3^(1)");
        let flip = DiagramAutomorphism::new(&a3, vec![0, 3, 2, 1]).unwrap();
        let v = diagram_verdict(&a3, &flip).unwrap();
        assert_eq!((v.tame_eala, v.nullity), (true, Some(2)));
        let id = DiagramAutomorphism::identity(4);
        assert_eq!(diagram_verdict(&a3, &id).unwrap().nullity, Some(2));
    }

    #[test]
    fn transitive_automorphisms_of_a_cycle_are_coprime_rotations() {
        for ell in 1..=7usize {
            let n = ell + 1;
            let g = entry(&format!("A_{ell}^(1)"));
            for s in diagram_automorphisms(&g) {
                let rotation = (1..=n).find(|&t| (0..n).all(|i| s.perm[i] == (i + t) % n));
                let expected = rotation.is_some_and(|t| num_integer::gcd(t, n) == 1);
                assert_eq!(s.is_transitive(), expected, "ell={ell} perm={:?}", s.perm);
            }
        }
    }
}
