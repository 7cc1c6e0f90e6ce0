use num_traits::Signed;

use super::Gcm;
use crate::exactnum::{int, Rational};
use crate::rootsys::{build_finite, Family, TypeLabel};

/// A named affine matrix, used for labeling tests and tables only. Nodes
/// follow Bourbaki order with `α_0` first.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub gcm: Gcm,
    /// Expected marks, as tabulated.
    pub marks: Vec<i64>,
}

/// `α_0 = δ − θ` adjoined to the simple roots of `label`.
fn untwisted(label: TypeLabel) -> (Gcm, Vec<i64>) {
    let sys = build_finite(label).expect("admissible");
    let g = sys.form();
    let n = label.rank;
    let height = |r: &Vec<Rational>| r.iter().sum::<Rational>();
    let theta = sys
        .nonzero_roots()
        .into_iter()
        .max_by_key(height)
        .expect("nonempty");
    let vecs: Vec<Vec<Rational>> = std::iter::once(theta.iter().map(|x| -x).collect())
        .chain((0..n).map(|i| (0..n).map(|j| int(i64::from(i == j))).collect()))
        .collect();
    let a = vecs
        .iter()
        .map(|x| {
            let xx = g.bilinear(x, x);
            vecs.iter()
                .map(|y| i64::try_from((int(2) * g.bilinear(x, y) / &xx).to_integer()).unwrap())
                .collect()
        })
        .collect();
    let mut marks = vec![1];
    marks.extend(
        theta
            .iter()
            .map(|x| i64::try_from(x.abs().to_integer()).unwrap()),
    );
    (Gcm::new(a).expect("valid"), marks)
}

/// `A_{2ℓ}^{(2)}`: chain with norms `1, 2, …, 2, 4`.
fn a_even_twisted(ell: usize) -> Gcm {
    let n = ell + 1;
    let mut norms = vec![2i64; n];
    norms[0] = 1;
    norms[ell] = 4;
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    for i in 0..ell {
        let bond = -norms[i].max(norms[i + 1]) / 2;
        a[i][i + 1] = 2 * bond / norms[i];
        a[i + 1][i] = 2 * bond / norms[i + 1];
    }
    Gcm::new(a).expect("valid")
}

/// Affine matrices with `ℓ ≤ max_ell`, untwisted first, then twisted.
pub fn affine_catalog(max_ell: usize) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let mut push =
        |name: String, gcm: Gcm, marks: Vec<i64>| out.push(CatalogEntry { name, gcm, marks });
    for ell in 1..=max_ell {
        for family in [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ] {
            let ok = match family {
                Family::B => ell >= 3,
                Family::C => ell >= 2,
                Family::D => ell >= 4,
                _ => crate::rootsys::admissible(family, ell),
            };
            if !ok {
                continue;
            }
            let label = TypeLabel { family, rank: ell };
            let (gcm, marks) = untwisted(label);
            push(format!("{label}^(1)"), gcm, marks);
        }
    }
    for ell in 1..=max_ell {
        let mut m = vec![2; ell + 1];
        m[ell] = 1;
        push(format!("A_{}^(2)", 2 * ell), a_even_twisted(ell), m);
        if ell >= 3 {
            let (g, _) = untwisted(TypeLabel {
                family: Family::B,
                rank: ell,
            });
            let mut m = vec![2; ell + 1];
            m[0] = 1;
            m[1] = 1;
            m[ell] = 1;
            push(format!("A_{}^(2)", 2 * ell - 1), g.transpose(), m);
        }
        if ell >= 2 {
            let (g, _) = untwisted(TypeLabel {
                family: Family::C,
                rank: ell,
            });
            push(
                format!("D_{}^(2)", ell + 1),
                g.transpose(),
                vec![1; ell + 1],
            );
        }
        if ell == 4 {
            let (g, _) = untwisted(TypeLabel {
                family: Family::F,
                rank: 4,
            });
            push("E_6^(2)".into(), g.transpose(), vec![1, 2, 3, 2, 1]);
        }
        if ell == 2 {
            let (g, _) = untwisted(TypeLabel {
                family: Family::G,
                rank: 2,
            });
            push("D_4^(3)".into(), g.transpose(), vec![1, 1, 2]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(name: &str) -> CatalogEntry {
        affine_catalog(8)
            .into_iter()
            .find(|e| e.name == name)
            .unwrap_or_else(|| panic!("{name}"))
    }

    #[test]
    fn tabulated_marks() {
        assert_eq!(find("A_1^(1)").gcm.rows(), &[vec![2, -2], vec![-2, 2]]);
        assert_eq!(find("A_2^(2)").gcm.rows(), &[vec![2, -4], vec![-1, 2]]);
        assert_eq!(find("B_4^(1)").marks, vec![1, 1, 2, 2, 2]);
        assert_eq!(find("C_3^(1)").marks, vec![1, 2, 2, 1]);
        assert_eq!(find("D_5^(1)").marks, vec![1, 1, 2, 2, 1, 1]);
        assert_eq!(find("G_2^(1)").marks, vec![1, 3, 2]);
        assert_eq!(find("F_4^(1)").marks, vec![1, 2, 3, 4, 2]);
        assert_eq!(find("E_8^(1)").marks, vec![1, 2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(find("A_5^(2)").marks, vec![1, 1, 2, 1]);
        assert_eq!(find("A_6^(2)").marks, vec![2, 2, 2, 1]);
    }

    #[test]
    fn every_entry_is_affine_with_tabulated_marks() {
        let cat = affine_catalog(8);
        assert!(cat.len() > 40);
        for e in cat {
            assert_eq!(e.gcm.validate_affine().unwrap().0, e.marks, "{}", e.name);
            assert!(e.gcm.size() <= 9);
            e.gcm.symmetrizer().unwrap();
        }
    }
}
