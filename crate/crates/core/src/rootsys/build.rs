use std::collections::BTreeSet;

use super::{Family, FiniteRootSystem, RootSysError, TypeLabel};
use crate::exactnum::{int, vscale, RatMatrix, RatVector};

/// Node norms and edges (0-indexed) of the Dynkin diagram in Bourbaki order.
fn diagram(label: TypeLabel) -> (Vec<i64>, Vec<(usize, usize)>) {
    let n = label.rank;
    let chain = |k: usize| {
        (0..k.saturating_sub(1))
            .map(|i| (i, i + 1))
            .collect::<Vec<_>>()
    };
    match label.family {
        Family::A => (vec![2; n], chain(n)),
        Family::B | Family::BC => {
            let mut norms = vec![4; n];
            norms[n - 1] = 2;
            (norms, chain(n))
        }
        Family::C => {
            let mut norms = vec![2; n];
            norms[n - 1] = 4;
            if n == 1 {
                norms[0] = 2;
            }
            (norms, chain(n))
        }
        Family::D => {
            let mut edges = chain(n - 1);
            edges.push((n - 3, n - 1));
            (vec![2; n], edges)
        }
        Family::E => {
            let mut edges = vec![(0, 2), (1, 3)];
            edges.extend((2..n - 1).map(|i| (i, i + 1)));
            (vec![2; n], edges)
        }
        Family::F => (vec![4, 4, 2, 2], chain(4)),
        Family::G => (vec![2, 6], chain(2)),
    }
}

/// Gram matrix of the simple roots of the standard realization, short roots
/// of norm 2. For `BC_n` this is the Gram matrix of `B_n`.
pub fn standard_gram(label: TypeLabel) -> RatMatrix {
    let (norms, edges) = diagram(label);
    let n = norms.len();
    let mut g = RatMatrix::zeros(n, n);
    for (i, &x) in norms.iter().enumerate() {
        g.set(i, i, int(x));
    }
    for (i, j) in edges {
        let v = int(-norms[i].max(norms[j]) / 2);
        g.set(i, j, v.clone());
        g.set(j, i, v);
    }
    g
}

/// Standard realization in simple-root coordinates, with `0` adjoined.
pub fn build_finite(label: TypeLabel) -> Result<FiniteRootSystem, RootSysError> {
    let label = TypeLabel::new(label.family, label.rank)?;
    let g = standard_gram(label);
    let n = label.rank;
    let simple: Vec<RatVector> = (0..n)
        .map(|i| (0..n).map(|j| int(i64::from(i == j))).collect())
        .collect();
    let sys = FiniteRootSystem::new_unchecked(simple.clone(), g.clone());
    let mut found: BTreeSet<RatVector> = simple.iter().cloned().collect();
    let mut frontier: Vec<RatVector> = simple.clone();
    while let Some(r) = frontier.pop() {
        for s in &simple {
            let w = sys.reflect(s, &r)?;
            if found.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    if label.family == Family::BC {
        let short: Vec<RatVector> = found
            .iter()
            .filter(|r| g.bilinear(r, r) == int(2))
            .cloned()
            .collect();
        found.extend(short.iter().map(|r| vscale(&int(2), r)));
    }
    Ok(FiniteRootSystem::new_unchecked(
        found.into_iter().collect(),
        g,
    ))
}
