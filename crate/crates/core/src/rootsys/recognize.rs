use std::collections::HashSet;

use num_traits::{Signed, Zero};

use super::{standard_gram, Axiom, Family, FiniteRootSystem, RootSysError, TypeLabel};
use crate::exactnum::{
    int, is_zero_vec, span_basis, vadd, vscale, RatMatrix, RatVector, Rational, RationalField,
};

/// `a_ij = 2(α_i, α_j)/(α_i, α_i)`.
pub fn cartan_matrix(simple: &[RatVector], form: &RatMatrix) -> Vec<Vec<i64>> {
    simple
        .iter()
        .map(|a| {
            let aa = form.bilinear(a, a);
            simple
                .iter()
                .map(|b| {
                    let c = int(2) * form.bilinear(a, b) / &aa;
                    c.to_integer().try_into().expect("small Cartan integer")
                })
                .collect()
        })
        .collect()
}

fn standard_cartan(label: TypeLabel) -> Vec<Vec<i64>> {
    let g = standard_gram(label);
    let n = label.rank;
    let basis: Vec<RatVector> = (0..n)
        .map(|i| (0..n).map(|j| int(i64::from(i == j))).collect())
        .collect();
    cartan_matrix(&basis, &g)
}

fn nonzero_root_count(label: TypeLabel) -> usize {
    let n = label.rank;
    match label.family {
        Family::A => n * (n + 1),
        Family::B | Family::C => 2 * n * n,
        Family::D => 2 * n * (n - 1),
        Family::E => [72, 126, 240][n - 6],
        Family::F => 48,
        Family::G => 12,
        Family::BC => 2 * n * (n + 1),
    }
}

/// Permutation `p` with `a[p[i]][p[j]] == b[i][j]`, by backtracking.
pub(crate) fn match_permutation(a: &[Vec<i64>], b: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    fn go(a: &[Vec<i64>], b: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = perm.len();
        if i == a.len() {
            return true;
        }
        for cand in 0..a.len() {
            if used[cand] {
                continue;
            }
            let ok = (0..i).all(|j| a[cand][perm[j]] == b[i][j] && a[perm[j]][cand] == b[j][i])
                && a[cand][cand] == b[i][i];
            if ok {
                used[cand] = true;
                perm.push(cand);
                if go(a, b, perm, used) {
                    return true;
                }
                perm.pop();
                used[cand] = false;
            }
        }
        false
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    go(a, b, &mut perm, &mut used).then_some(perm)
}

/// Values `(1, t, t², …)` at the smallest `t ≥ 1` vanishing on no root.
fn generic_functional(roots: &[RatVector], dim: usize) -> Vec<Rational> {
    let mut t = 1i64;
    loop {
        let f: Vec<Rational> = (0..dim as u32).map(|k| int(t.pow(k))).collect();
        let hits_zero = roots.iter().any(|r| {
            r.iter()
                .zip(&f)
                .map(|(x, y)| x * y)
                .sum::<Rational>()
                .is_zero()
        });
        if !hits_zero {
            return f;
        }
        t += 1;
    }
}

fn simple_system(roots: &[RatVector], dim: usize) -> Vec<RatVector> {
    let f = generic_functional(roots, dim);
    let value = |r: &RatVector| r.iter().zip(&f).map(|(x, y)| x * y).sum::<Rational>();
    let positive: Vec<RatVector> = roots
        .iter()
        .filter(|r| value(r).is_positive())
        .cloned()
        .collect();
    let pos_set: HashSet<&RatVector> = positive.iter().collect();
    positive
        .iter()
        .filter(|a| {
            !positive.iter().any(|b| {
                let c = crate::exactnum::vsub(a, b);
                pos_set.contains(&c)
            })
        })
        .cloned()
        .collect()
}

pub(crate) fn recognize_system(sys: &FiniteRootSystem) -> Result<TypeLabel, RootSysError> {
    let nz = sys.nonzero_roots();
    let dim = sys.dim();
    let form = sys.form();
    let divisible: Vec<RatVector> = nz
        .iter()
        .filter(|r| sys.contains(&vscale(&crate::exactnum::rat(1, 2), r)))
        .cloned()
        .collect();
    let div_set: HashSet<&RatVector> = divisible.iter().collect();
    let indivisible: Vec<RatVector> = nz
        .iter()
        .filter(|r| !div_set.contains(r))
        .cloned()
        .collect();

    let simple = simple_system(&indivisible, dim);
    if simple.len() != dim {
        return Err(RootSysError::axiom(
            Axiom::Classification,
            format!("{} simple roots in dimension {dim}", simple.len()),
        ));
    }
    let cartan = cartan_matrix(&simple, form);

    if !divisible.is_empty() {
        let b = TypeLabel::new(Family::B, dim)?;
        if match_permutation(&cartan, &standard_cartan(b)).is_none() {
            return Err(RootSysError::axiom(
                Axiom::Classification,
                "indivisible roots are not of type B",
            ));
        }
        let min_norm = indivisible
            .iter()
            .map(|r| form.bilinear(r, r))
            .min()
            .expect("nonempty");
        let mut doubled_short: Vec<RatVector> = indivisible
            .iter()
            .filter(|r| form.bilinear(r, r) == min_norm)
            .map(|r| vadd(r, r))
            .collect();
        let mut div_sorted = divisible.clone();
        doubled_short.sort();
        div_sorted.sort();
        if doubled_short != div_sorted {
            return Err(RootSysError::axiom(
                Axiom::Classification,
                "divisible roots are not twice the short roots",
            ));
        }
        return TypeLabel::new(Family::BC, dim);
    }

    let mut seen = Vec::new();
    for label in TypeLabel::all_of_rank(dim) {
        let canon = label.canonical();
        if !label.is_reduced() || seen.contains(&canon) {
            continue;
        }
        seen.push(canon);
        if match_permutation(&cartan, &standard_cartan(canon)).is_some() {
            // Same Cartan matrix forces the same root count; checked anyway.
            if nonzero_root_count(canon) == sys.len() - 1 {
                return Ok(canon);
            }
        }
    }
    Err(RootSysError::axiom(
        Axiom::Classification,
        format!("Cartan matrix {cartan:?} matches no type"),
    ))
}

/// Type of the root system `roots` (0 allowed and ignored) under `form`, up
/// to scaling. Roots need not span the ambient space.
pub fn recognize_type(roots: &[RatVector], form: &RatMatrix) -> Result<TypeLabel, RootSysError> {
    let dim = form.rows();
    if let Some(r) = roots.iter().find(|r| r.len() != dim) {
        return Err(RootSysError::axiom(
            Axiom::Dimension,
            format!("root of length {}, form of size {dim}", r.len()),
        ));
    }
    let nz: Vec<RatVector> = roots.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
    if nz.is_empty() {
        return Err(RootSysError::axiom(Axiom::Nonempty, "only the zero vector"));
    }
    let basis = span_basis(&RationalField, &nz, dim);
    let bmat = RatMatrix::from_columns(&basis, dim);
    let coords: Vec<RatVector> = nz.iter().map(|r| bmat.solve(r).expect("in span")).collect();
    let restricted = bmat.transpose().mul(&form.mul(&bmat)?)?;
    FiniteRootSystem::new(coords, restricted)?.recognize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{ivec, rat};
    use crate::rootsys::build_finite;

    #[test]
    fn root_counts_match_constructions() {
        for rank in 1..=8 {
            for label in TypeLabel::all_of_rank(rank) {
                assert_eq!(
                    build_finite(label).unwrap().len() - 1,
                    nonzero_root_count(label),
                    "{label}"
                );
            }
        }
    }

    #[test]
    fn bc1_from_raw_vectors() {
        let roots = vec![ivec(&[0]), ivec(&[1]), ivec(&[-1]), ivec(&[2]), ivec(&[-2])];
        let t = recognize_type(&roots, &RatMatrix::identity(1)).unwrap();
        assert_eq!(t.to_string(), "BC_1");
    }

    #[test]
    fn scaling_is_ignored() {
        let s = build_finite("G_2".parse().unwrap()).unwrap();
        let t = recognize_type(s.roots(), &s.form().scale(&rat(1, 7))).unwrap();
        assert_eq!(t.to_string(), "G_2");
    }

    #[test]
    fn non_spanning_input_is_restricted() {
        // A_1 sitting on the diagonal of ℚ².
        let roots = vec![ivec(&[1, 1]), ivec(&[-1, -1])];
        let t = recognize_type(&roots, &RatMatrix::identity(2)).unwrap();
        assert_eq!(t.to_string(), "A_1");
    }

    #[test]
    fn malformed_input_names_axiom() {
        let roots = vec![ivec(&[1, 0]), ivec(&[-1, 0]), ivec(&[0, 1]), ivec(&[0, -1])];
        let err = recognize_type(&roots, &RatMatrix::identity(2)).unwrap_err();
        assert_eq!(err.violated_axiom(), Some(Axiom::Irreducibility));
    }

    #[test]
    fn roundtrip_all_ranks_up_to_eight() {
        for rank in 1..=8 {
            for label in TypeLabel::all_of_rank(rank) {
                let s = build_finite(label).unwrap();
                let t = s.recognize().unwrap();
                assert!(t.same_class(label), "{label} recognized as {t}");
            }
        }
    }
}
