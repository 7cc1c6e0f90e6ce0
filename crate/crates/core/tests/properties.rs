use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::sample::Index;

use eala::autoroot::{
    affinization_report, affinized_root_datum, quantum_sl_roots, reversal_flip, AffinizedDatum,
    ResidueAssignment, RootAutomorphism, Verdict,
};
use eala::ears::RootDatum;
use eala::exactnum::{
    int, rank, vadd, vscale, zero_vec, CyclotomicField, Field, RatMatrix, RatVector, Rational,
    RationalField,
};
use eala::gcm::{
    affine_catalog, affine_root_datum, diagram_automorphisms, CatalogEntry, DiagramAutomorphism,
};
use eala::rootsys::{build_finite, FiniteRootSystem, TypeLabel};

struct Case {
    name: String,
    datum: RootDatum,
    sigma: RootAutomorphism,
    affinized: AffinizedDatum,
}

fn case(name: String, datum: RootDatum, sigma: RootAutomorphism) -> Case {
    let residues = ResidueAssignment::orbit_rule(&sigma, &datum).unwrap();
    let affinized = affinized_root_datum(&sigma, &datum, &residues).unwrap();
    Case {
        name,
        datum,
        sigma,
        affinized,
    }
}

/// Affine data with every diagram automorphism, then quantum-torus flips.
fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        let mut out = Vec::new();
        for e in affine_catalog(4) {
            let d = affine_root_datum(&e.gcm, 3).unwrap();
            for s in diagram_automorphisms(&e.gcm) {
                let sigma = RootAutomorphism::from_diagram(&d, &s).unwrap();
                out.push(case(format!("{} {:?}", e.name, s.perm), d.clone(), sigma));
            }
        }
        for ell in 1..=4 {
            for nu in 1..=2 {
                let d = quantum_sl_roots(ell, nu).unwrap();
                let sigma = reversal_flip(&d, ell, nu).unwrap();
                out.push(case(format!("quantum sl_{} nu={nu}", ell + 1), d, sigma));
            }
        }
        out
    })
}

fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| affine_catalog(8))
}

fn rotation_data() -> &'static [(RootDatum, RootAutomorphism)] {
    static DATA: OnceLock<Vec<(RootDatum, RootAutomorphism)>> = OnceLock::new();
    DATA.get_or_init(|| {
        (1..=8)
            .map(|ell| {
                let e = catalog()
                    .iter()
                    .find(|e| e.name == format!("A_{ell}^(1)"))
                    .unwrap();
                let d = affine_root_datum(&e.gcm, 2).unwrap();
                let perm = (0..=ell).map(|i| (i + 1) % (ell + 1)).collect();
                let s = DiagramAutomorphism::new(&e.gcm, perm).unwrap();
                let sigma = RootAutomorphism::from_diagram(&d, &s).unwrap();
                (d, sigma)
            })
            .collect()
    })
}

fn unit(n: usize, i: usize) -> RatVector {
    let mut v = zero_vec(n);
    v[i] = int(1);
    v
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn permutation() -> impl Strategy<Value = Vec<usize>> {
    (1usize..=6).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

fn int_vector(n: usize) -> impl Strategy<Value = RatVector> {
    prop::collection::vec(-3i64..=3, n).prop_map(|v| v.into_iter().map(int).collect())
}

fn label() -> impl Strategy<Value = TypeLabel> {
    (1usize..=6).prop_flat_map(|r| prop::sample::select(TypeLabel::all_of_rank(r)))
}

fn average(p: &RatMatrix, m: u64, v: &[Rational]) -> RatVector {
    let mut acc = zero_vec(v.len());
    let mut w = v.to_vec();
    for _ in 0..m {
        acc = vadd(&acc, &w);
        w = p.mul_vec(&w).unwrap();
    }
    vscale(&Rational::new(1.into(), m.into()), &acc)
}

fn assert_root_system(sys: &FiniteRootSystem) -> Result<(), TestCaseError> {
    let non = sys.nonzero_roots();
    for a in &non {
        for b in &non {
            let c = int(2) * sys.pair(a, b) / sys.pair(b, b);
            prop_assert!(c.is_integer(), "2(a,b)/(b,b) = {c}");
            let r = sys.reflect(a, b).unwrap();
            prop_assert!(sys.contains(&r) && r.iter().any(|x| !x.is_zero()));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_are_reduced(n in -10_000i64..10_000, d in (1i64..500).prop_union(-500i64..0)) {
        let r = Rational::new(n.into(), d.into());
        prop_assert!(r.denom().is_positive());
        prop_assert!(r.numer().gcd(r.denom()).is_one());
    }

    #[test]
    fn zeta_has_exact_order(m in 1u64..=12, k in 1i64..12) {
        let f = CyclotomicField::new(m);
        prop_assert_eq!(f.zeta().coeffs.len() as u64, eala::exactnum::euler_phi(m));
        prop_assert_eq!(f.zeta_pow(m as i64), f.one());
        if (k as u64) < m {
            prop_assert_ne!(f.zeta_pow(k), f.one());
        }
    }

    #[test]
    fn symmetric_kernel_pairs_to_zero(rows in 1usize..4, b in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 3)) {
        let b = RatMatrix::from_i64(&b[..rows]);
        let m = b.transpose().mul(&b).unwrap();
        let ker = m.kernel();
        prop_assert_eq!(ker.len(), 5 - m.rank());
        for v in &ker {
            for j in 0..5 {
                prop_assert!(dot(v, &m.column(j)).is_zero());
            }
        }
    }

    #[test]
    fn fixed_space_and_image_span(perm in permutation()) {
        let n = perm.len();
        let p = RatMatrix::permutation(&perm);
        let fixed = p.fixed_subspace().unwrap();
        let image = p.sub(&RatMatrix::identity(n)).unwrap();
        prop_assert_eq!(fixed.len() + image.rank(), n);
        let mut all = fixed.clone();
        all.extend((0..n).map(|j| image.column(j)));
        prop_assert_eq!(rank(&RationalField, &all), n);
    }

    #[test]
    fn averaging_lands_in_fixed_space(perm in permutation(), seed in int_vector(6)) {
        let n = perm.len();
        let p = RatMatrix::permutation(&perm);
        let m = p.order(720).unwrap();
        let v = &seed[..n];
        let avg = average(&p, m, v);
        prop_assert_eq!(p.mul_vec(&avg).unwrap(), avg.clone());
        prop_assert_eq!(average(&p, m, &avg), avg.clone());
        let fixed = p.fixed_subspace().unwrap();
        let mut with = fixed.clone();
        with.push(avg);
        prop_assert_eq!(rank(&RationalField, &with), rank(&RationalField, &fixed));
    }

    #[test]
    fn built_systems_are_closed_and_integral(l in label(), i in any::<Index>(), j in any::<Index>()) {
        let sys = build_finite(l).unwrap();
        let non = sys.nonzero_roots();
        let (a, b) = (i.get(&non), j.get(&non));
        let c = int(2) * sys.pair(a, b) / sys.pair(b, b);
        prop_assert!(c.is_integer());
        let r = sys.reflect(a, b).unwrap();
        prop_assert!(sys.contains(&r) && r.iter().any(|x| !x.is_zero()));
        prop_assert!(sys.recognize().unwrap().same_class(l), "{l} recognized as {}", sys.recognize().unwrap());
    }

    #[test]
    fn projector_is_idempotent_and_self_adjoint(l in label(), gens in prop::collection::vec(int_vector(8), 1..4)) {
        let sys = build_finite(l).unwrap();
        let n = sys.dim();
        let y: Vec<RatVector> = gens.iter().map(|g| g[..n].to_vec()).collect();
        prop_assume!(rank(&RationalField, &y) > 0);
        let p = sys.projector(&y).unwrap();
        prop_assert_eq!(p.mul(&p).unwrap(), p.clone());
        let g = sys.form();
        prop_assert_eq!(g.mul(&p).unwrap(), p.transpose().mul(g).unwrap());
    }

    #[test]
    fn marks_are_diagram_invariant(e in any::<Index>()) {
        let e = e.get(catalog());
        let marks: RatVector = e.marks.iter().map(|&a| int(a)).collect();
        for s in diagram_automorphisms(&e.gcm) {
            for i in 0..e.marks.len() {
                prop_assert_eq!(e.marks[s.perm[i]], e.marks[i], "{} {:?}", e.name, s.perm);
            }
            prop_assert_eq!(s.lattice_matrix().mul_vec(&marks).unwrap(), marks.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rotation_averages_simple_roots(ell in 1usize..=8, j in any::<Index>()) {
        let (d, sigma) = &rotation_data()[ell - 1];
        let j = j.index(ell + 1);
        let delta = vec![int(1); ell + 1];
        let expected = vscale(&Rational::new(1.into(), (ell as i64 + 1).into()), &delta);
        prop_assert_eq!(sigma.pi(&unit(d.dim(), j)), expected);
    }

    #[test]
    fn data_are_symmetric_with_orthogonal_radical(c in any::<Index>()) {
        let c = c.get(cases());
        let d = &c.datum;
        prop_assert!(d.contains(&zero_vec(d.dim())));
        let roots = d.roots_in_box(2);
        for r in &roots {
            prop_assert!(d.contains(&vscale(&int(-1), r)), "{}: -R != R", c.name);
        }
        let non = d.split_roots().nonisotropic;
        for delta in d.isotropic_generators() {
            for a in &non {
                prop_assert!(d.pair(&delta, &a.rep).is_zero(), "{}", c.name);
            }
        }
        assert_root_system(&d.bar_image().unwrap().system)?;
    }

    #[test]
    fn projection_is_orthogonal_and_sigma_stable(c in any::<Index>()) {
        let c = c.get(cases());
        let p = c.sigma.projector();
        let s = c.sigma.matrix();
        prop_assert_eq!(p.mul(p).unwrap(), p.clone());
        prop_assert_eq!(s.mul(p).unwrap(), p.clone());
        prop_assert_eq!(p.mul(s).unwrap(), p.clone());
        let g = c.datum.form();
        prop_assert_eq!(g.mul(p).unwrap(), p.transpose().mul(g).unwrap());
        for r in c.datum.roots_in_box(2) {
            prop_assert!(c.datum.contains(&c.sigma.apply(&r)), "{}: sigma(R) != R", c.name);
        }
    }

    #[test]
    fn affine_projections_are_nonzero_and_discrete(c in any::<Index>()) {
        let c = c.get(cases());
        prop_assume!(!c.name.starts_with("quantum"));
        let m = int(c.sigma.period() as i64);
        for r in c.datum.roots_in_box(2) {
            if r.iter().all(|x| x.is_zero()) {
                continue;
            }
            let pr = c.sigma.pi(&r);
            prop_assert!(pr.iter().any(|x| !x.is_zero()), "{}: pi vanishes", c.name);
            prop_assert!(vscale(&m, &pr).iter().all(|x| x.is_integer()), "{}", c.name);
        }
    }

    #[test]
    fn affinized_norms_ignore_the_delta_shift(c in any::<Index>()) {
        let c = c.get(cases());
        let a = &c.affinized;
        let mut scale: Option<Rational> = None;
        for r in c.datum.roots_in_box(1) {
            let pr = c.sigma.pi(&r);
            let base = c.datum.pair(&pr, &pr);
            let at = |i: i64| {
                let v = a.embed(&pr, i);
                a.datum.pair(&v, &v)
            };
            for i in -2..=2 {
                prop_assert_eq!(at(i), at(0), "{}", c.name);
            }
            if base.is_zero() {
                prop_assert!(at(0).is_zero());
            } else {
                let s = at(0) / base;
                prop_assert!(s.is_positive());
                prop_assert_eq!(scale.get_or_insert(s.clone()), &s, "{}", c.name);
            }
        }
    }

    #[test]
    fn verdict_follows_projected_roots(c in any::<Index>()) {
        let c = c.get(cases());
        let report = affinization_report(&c.sigma, &c.datum).unwrap();
        prop_assert_eq!(report.verdict == Verdict::TameEala, report.projected_nonisotropic, "{}", c.name);
        if !report.projected_nonisotropic {
            return Ok(());
        }
        prop_assert!(c.affinized.datum.check_ea5a(), "{}", c.name);
        let non: Vec<RatVector> = c.datum.split_roots().nonisotropic.into_iter().map(|x| x.rep).collect();
        for a in &non {
            let witnessed = non.iter().any(|b| {
                let pb = c.sigma.pi(b);
                !c.datum.pair(&pb, &pb).is_zero() && !c.datum.pair(a, b).is_zero()
            });
            prop_assert!(witnessed, "{}: no witness for {:?}", c.name, a);
        }
    }
}
