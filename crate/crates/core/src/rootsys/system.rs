use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{Axiom, RootSysError, TypeLabel};
use crate::exactnum::{
    common_denominator, int, is_integer, is_zero_vec, span_basis, vec_to_string, vscale, vsub,
    zero_vec, RatMatrix, RatVector, Rational, RationalField,
};

/// A finite irreducible root system `Ω` in `ℚ^dim`, `0 ∈ Ω`.
#[derive(Debug, Clone)]
pub struct FiniteRootSystem {
    dim: usize,
    roots: Vec<RatVector>,
    index: HashSet<RatVector>,
    form: RatMatrix,
}

impl PartialEq for FiniteRootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.form == other.form && self.roots == other.roots
    }
}

/// Vectors scaled to integers, with every pairing precomputed. `None` if
/// some entry leaves `i128`.
struct IntegerFrame {
    scaled: Vec<Vec<i128>>,
    pairing: Vec<Vec<i128>>,
}

fn integer_frame(vectors: &[RatVector], form: &RatMatrix) -> Option<IntegerFrame> {
    let to_int = |v: &[Rational], scale: &BigInt| -> Option<Vec<i128>> {
        v.iter()
            .map(|x| {
                (x * Rational::from_integer(scale.clone()))
                    .to_integer()
                    .to_i128()
            })
            .collect()
    };
    let all: Vec<Rational> = vectors.iter().flatten().cloned().collect();
    let vs = common_denominator(&all);
    let fs = common_denominator(&form.as_rows().concat());
    let scaled: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| to_int(v, &vs))
        .collect::<Option<_>>()?;
    let g: Vec<Vec<i128>> = form
        .as_rows()
        .iter()
        .map(|r| to_int(r, &fs))
        .collect::<Option<_>>()?;
    let images: Vec<Vec<i128>> = scaled
        .iter()
        .map(|v| {
            (0..g.len())
                .map(|i| {
                    v.iter()
                        .zip(&g[i])
                        .try_fold(0i128, |acc, (a, b)| acc.checked_add(a.checked_mul(*b)?))
                })
                .collect::<Option<Vec<i128>>>()
        })
        .collect::<Option<_>>()?;
    let pairing = scaled
        .iter()
        .map(|a| {
            images
                .iter()
                .map(|gb| {
                    a.iter()
                        .zip(gb)
                        .try_fold(0i128, |acc, (x, y)| acc.checked_add(x.checked_mul(*y)?))
                })
                .collect::<Option<Vec<i128>>>()
        })
        .collect::<Option<_>>()?;
    Some(IntegerFrame { scaled, pairing })
}

fn components_from(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut comp: Vec<Option<usize>> = vec![None; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start].is_some() {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = Some(id);
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for b in 0..n {
                if comp[b].is_none() && adjacent(a, b) {
                    comp[b] = Some(id);
                    members.push(b);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Connected components of the graph on `vectors` with an edge whenever
/// `(a, b) ≠ 0`.
pub fn orthogonality_components(vectors: &[RatVector], form: &RatMatrix) -> Vec<Vec<usize>> {
    if let Some(frame) = integer_frame(vectors, form) {
        return components_from(vectors.len(), |a, b| frame.pairing[a][b] != 0);
    }
    let images: Vec<RatVector> = vectors
        .iter()
        .map(|v| form.mul_vec(v).expect("dimension"))
        .collect();
    components_from(vectors.len(), |a, b| {
        !dot(&vectors[b], &images[a]).is_zero()
    })
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

impl FiniteRootSystem {
    /// Validates every axiom; `0` is adjoined if missing.
    pub fn new(
        roots: impl IntoIterator<Item = RatVector>,
        form: RatMatrix,
    ) -> Result<Self, RootSysError> {
        let dim = form.rows();
        if !form.is_square() {
            return Err(RootSysError::axiom(
                Axiom::Dimension,
                format!("form is {}x{}", form.rows(), form.cols()),
            ));
        }
        let mut set: BTreeSet<RatVector> = BTreeSet::new();
        for r in roots {
            if r.len() != dim {
                return Err(RootSysError::axiom(
                    Axiom::Dimension,
                    format!(
                        "root {} has length {}, form has size {dim}",
                        vec_to_string(&r),
                        r.len()
                    ),
                ));
            }
            set.insert(r);
        }
        set.insert(zero_vec(dim));
        if dim == 0 || !form.is_positive_definite() {
            return Err(RootSysError::axiom(
                Axiom::FormPositiveDefinite,
                format!("{form:?}"),
            ));
        }
        let roots: Vec<RatVector> = set.into_iter().collect();
        let sys = FiniteRootSystem {
            dim,
            index: roots.iter().cloned().collect(),
            roots,
            form,
        };
        sys.validate()?;
        Ok(sys)
    }

    pub(crate) fn new_unchecked(roots: Vec<RatVector>, form: RatMatrix) -> Self {
        let mut set: BTreeSet<RatVector> = roots.into_iter().collect();
        let dim = form.rows();
        set.insert(zero_vec(dim));
        let roots: Vec<RatVector> = set.into_iter().collect();
        FiniteRootSystem {
            dim,
            index: roots.iter().cloned().collect(),
            roots,
            form,
        }
    }

    fn validate(&self) -> Result<(), RootSysError> {
        let nz = self.nonzero_roots();
        if nz.is_empty() {
            return Err(RootSysError::axiom(Axiom::Nonempty, "only the zero vector"));
        }
        let rank = span_basis(&RationalField, &nz, self.dim).len();
        if rank != self.dim {
            return Err(RootSysError::axiom(
                Axiom::Spanning,
                format!("roots span rank {rank} of {}", self.dim),
            ));
        }
        if let Some(frame) = integer_frame(&nz, &self.form) {
            self.check_reflections_integral(&nz, &frame)?;
        } else {
            self.check_reflections(&nz)?;
        }
        let comps = orthogonality_components(&nz, &self.form);
        if comps.len() > 1 {
            let first: Vec<String> = comps[0].iter().map(|&i| vec_to_string(&nz[i])).collect();
            return Err(RootSysError::axiom(
                Axiom::Irreducibility,
                format!(
                    "{} orthogonal components; first is {{{}}}",
                    comps.len(),
                    first.join(", ")
                ),
            ));
        }
        Ok(())
    }

    fn check_reflections(&self, nz: &[RatVector]) -> Result<(), RootSysError> {
        let images: Vec<RatVector> = nz.iter().map(|b| self.form.mul_vec(b).unwrap()).collect();
        let norms: Vec<Rational> = nz.iter().zip(&images).map(|(b, gb)| dot(b, gb)).collect();
        for a in nz {
            for ((b, gb), nb) in nz.iter().zip(&images).zip(&norms) {
                let c = int(2) * dot(a, gb) / nb;
                if !is_integer(&c) {
                    return Err(RootSysError::axiom(
                        Axiom::Integrality,
                        format!(
                            "2(a,b)/(b,b) = {c} for a = {}, b = {}",
                            vec_to_string(a),
                            vec_to_string(b)
                        ),
                    ));
                }
                if c.is_zero() {
                    continue;
                }
                let r = vsub(a, &vscale(&c, b));
                if is_zero_vec(&r) || !self.index.contains(&r) {
                    return Err(RootSysError::axiom(
                        Axiom::ReflectionClosure,
                        format!(
                            "reflection of {} in {} is {}",
                            vec_to_string(a),
                            vec_to_string(b),
                            vec_to_string(&r)
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_reflections_integral(
        &self,
        nz: &[RatVector],
        frame: &IntegerFrame,
    ) -> Result<(), RootSysError> {
        let index: HashSet<&Vec<i128>> = frame.scaled.iter().collect();
        for (i, a) in frame.scaled.iter().enumerate() {
            for (j, b) in frame.scaled.iter().enumerate() {
                let (num, den) = (2 * frame.pairing[i][j], frame.pairing[j][j]);
                if num % den != 0 {
                    let c = Rational::new(num.into(), den.into());
                    return Err(RootSysError::axiom(
                        Axiom::Integrality,
                        format!(
                            "2(a,b)/(b,b) = {c} for a = {}, b = {}",
                            vec_to_string(&nz[i]),
                            vec_to_string(&nz[j])
                        ),
                    ));
                }
                let c = num / den;
                if c == 0 {
                    continue;
                }
                let r: Vec<i128> = a.iter().zip(b).map(|(x, y)| x - c * y).collect();
                if r.iter().all(|x| *x == 0) || !index.contains(&r) {
                    let rr = vsub(&nz[i], &vscale(&Rational::from_integer(c.into()), &nz[j]));
                    return Err(RootSysError::axiom(
                        Axiom::ReflectionClosure,
                        format!(
                            "reflection of {} in {} is {}",
                            vec_to_string(&nz[i]),
                            vec_to_string(&nz[j]),
                            vec_to_string(&rr)
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form(&self) -> &RatMatrix {
        &self.form
    }

    /// All roots including `0`, in lexicographic order.
    pub fn roots(&self) -> &[RatVector] {
        &self.roots
    }

    pub fn nonzero_roots(&self) -> Vec<RatVector> {
        self.roots
            .iter()
            .filter(|r| !is_zero_vec(r))
            .cloned()
            .collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.index.contains(v)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn pair(&self, a: &[Rational], b: &[Rational]) -> Rational {
        self.form.bilinear(a, b)
    }

    pub fn is_reduced(&self) -> bool {
        !self
            .roots
            .iter()
            .any(|r| !is_zero_vec(r) && self.contains(&vscale(&int(2), r)))
    }

    /// `w_α(β) = β − 2(β,α)/(α,α)·α`.
    pub fn reflect(
        &self,
        alpha: &[Rational],
        beta: &[Rational],
    ) -> Result<RatVector, RootSysError> {
        let aa = self.pair(alpha, alpha);
        if aa.is_zero() {
            return Err(RootSysError::IsotropicReflection);
        }
        let c = int(2) * self.pair(beta, alpha) / aa;
        Ok(vsub(beta, &vscale(&c, alpha)))
    }

    /// Matrix of the orthogonal projection onto `span(y)`.
    pub fn projector(&self, y: &[RatVector]) -> Result<RatMatrix, RootSysError> {
        let basis = span_basis(&RationalField, y, self.dim);
        if basis.is_empty() {
            return Err(RootSysError::ZeroSubspace);
        }
        let ymat = RatMatrix::from_columns(&basis, self.dim);
        let gy = self.form.mul(&ymat)?;
        let gram = ymat.transpose().mul(&gy)?;
        Ok(ymat.mul(&gram.inverse()?)?.mul(&gy.transpose())?)
    }

    /// `p(Ω^×)` for the orthogonal projection `p` onto `span(y)`; may contain `0`.
    pub fn project(&self, y: &[RatVector]) -> Result<Vec<RatVector>, RootSysError> {
        let p = self.projector(y)?;
        let set: BTreeSet<RatVector> = self
            .nonzero_roots()
            .iter()
            .map(|r| p.mul_vec(r).expect("dimension"))
            .collect();
        Ok(set.into_iter().collect())
    }

    /// Both projection statements for `span(y)`, with the visible and
    /// nearly visible roots.
    pub fn check_projection(&self, y: &[RatVector]) -> Result<ProjectionReport, RootSysError> {
        let p = self.projector(y)?;
        let delta = self.nonzero_roots();
        let proj: Vec<RatVector> = delta.iter().map(|r| p.mul_vec(r).unwrap()).collect();
        let visible: Vec<usize> = (0..delta.len())
            .filter(|&i| !is_zero_vec(&proj[i]))
            .collect();
        let mut witnesses = Vec::new();
        let mut unwitnessed = Vec::new();
        for a in &delta {
            match visible
                .iter()
                .find(|&&j| !self.pair(a, &delta[j]).is_zero())
            {
                Some(&j) => witnesses.push((a.clone(), delta[j].clone())),
                None => unwitnessed.push(a.clone()),
            }
        }
        let image: Vec<RatVector> = proj
            .iter()
            .filter(|v| !is_zero_vec(v))
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let part_ii = !image.is_empty() && orthogonality_components(&image, &self.form).len() == 1;
        Ok(ProjectionReport {
            part_i: unwitnessed.is_empty(),
            part_ii,
            visible: visible.iter().map(|&i| delta[i].clone()).collect(),
            nearly_visible: witnesses.iter().map(|(a, _)| a.clone()).collect(),
            delta_equals_nearly_visible: unwitnessed.is_empty(),
            witnesses,
            unwitnessed,
        })
    }

    pub fn recognize(&self) -> Result<TypeLabel, RootSysError> {
        super::recognize::recognize_system(self)
    }

    /// Multiply the form so that the smallest nonzero root norm is 2.
    pub fn normalized(&self) -> FiniteRootSystem {
        let min = self
            .nonzero_roots()
            .iter()
            .map(|r| self.pair(r, r))
            .min()
            .unwrap_or_else(Rational::one);
        let form = self.form.scale(&(int(2) / min));
        FiniteRootSystem {
            form,
            ..self.clone()
        }
    }
}

/// Outcome of the projection statements on one subspace.
#[derive(Debug, Clone)]
pub struct ProjectionReport {
    pub part_i: bool,
    pub part_ii: bool,
    /// `(α, β)` with `β` visible and `(α, β) ≠ 0`.
    pub witnesses: Vec<(RatVector, RatVector)>,
    pub unwitnessed: Vec<RatVector>,
    pub visible: Vec<RatVector>,
    pub nearly_visible: Vec<RatVector>,
    pub delta_equals_nearly_visible: bool,
}
