use std::sync::LazyLock;

use proptest::prelude::*;
use twisted_flag::geometry::{in_cone2, is_unimodular_pair, Rat2};
use twisted_flag::isotropy::{
    classify_by_weights, freeness_check, isotropy_at_support, Prop53Class, SupportPattern,
};
use twisted_flag::quadric::{
    action_orbit_map, certify_samples, constraints, embed_su3, random_su3, LevelSetPoint, SampleConfig,
};
use twisted_flag::weights::{
    check_nrc, check_star, derive, enumerate_star_systems, par_enumerate_star_systems, star_holds,
    weights_from_cone_data,
};
use twisted_flag::{DerivedConeData, WeightSystem};

fn zero_sum_triple(max: i64) -> impl Strategy<Value = [[i64; 2]; 3]> {
    prop::array::uniform4(-max..=max).prop_map(|[a, b, c, d]| [[a, b], [c, d], [-a - c, -b - d]])
}

fn weight_system(max: i64) -> impl Strategy<Value = WeightSystem> {
    (zero_sum_triple(max), zero_sum_triple(max))
        .prop_map(|(l, r)| WeightSystem::new(l, r).unwrap())
}

fn int_vec(max: i128) -> impl Strategy<Value = [i128; 2]> {
    prop::array::uniform2(-max..=max)
}

fn cone_data(max: i128) -> impl Strategy<Value = DerivedConeData> {
    (int_vec(max), prop::array::uniform3(int_vec(max))).prop_map(|(c, a)| {
        let b = a.map(|v| [c[0] - v[0], c[1] - v[1]]);
        DerivedConeData::from_int_cone_data(a, b).unwrap()
    })
}

static STAR_BOUND_TWO: LazyLock<Vec<WeightSystem>> = LazyLock::new(|| par_enumerate_star_systems(2));

fn star_system() -> impl Strategy<Value = WeightSystem> {
    prop::sample::select(STAR_BOUND_TWO.clone())
}

#[test]
fn star_implies_nrc_at_bound_two() {
    for ws in STAR_BOUND_TWO.iter() {
        let d = derive(&ws).unwrap();
        assert!(check_nrc(&d).all(), "{ws:?}");
    }
}

#[test]
fn parallel_enumeration_matches_sequential() {
    let seq: Vec<_> = enumerate_star_systems(1).collect();
    assert_eq!(seq, par_enumerate_star_systems(1));
    assert_eq!(par_enumerate_star_systems(2), par_enumerate_star_systems(2));
}

#[test]
fn unimodular_mixed_pairs_force_constant_data() {
    // all A_i, B_j with i != j unimodular means every A_i and every B_j agree
    let mut seen = 0;
    for ws in STAR_BOUND_TWO.iter() {
        let d = derive(&ws).unwrap();
        let all_unimodular = (0..3).all(|i| {
            (0..3).all(|j| i == j || is_unimodular_pair(&d.a[i], &d.b[j]).unwrap())
        });
        if all_unimodular {
            seen += 1;
            assert!(d.a.iter().all(|x| *x == d.a[0]), "{ws:?}");
            assert!(d.b.iter().all(|x| *x == d.b[0]), "{ws:?}");
        }
    }
    assert!(seen > 0);
}

#[test]
fn freeness_matches_weight_classification_at_bound_two() {
    for ws in STAR_BOUND_TWO.iter() {
        let d = derive(&ws).unwrap();
        let free = freeness_check(&d, Some(ws)).unwrap().free;
        assert_eq!(free, classify_by_weights(&ws) == Prop53Class::FreeFlagCase, "{ws:?}");
    }
}

#[test]
fn bound_one_systems_certify() {
    let cfg = SampleConfig { count: 20, ..Default::default() };
    for ws in par_enumerate_star_systems(1) {
        let d = derive(&ws).unwrap();
        let recs = certify_samples(&d, &cfg).unwrap();
        assert!(recs.iter().all(|r| r.pass), "{ws:?}");
    }
}

#[test]
fn strided_bound_two_systems_certify() {
    let cfg = SampleConfig { count: 12, seed: 3, ..Default::default() };
    for ws in par_enumerate_star_systems(2).iter().step_by(97) {
        let d = derive(ws).unwrap();
        let recs = certify_samples(&d, &cfg).unwrap();
        assert!(recs.iter().all(|r| r.pass), "{ws:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn star_invariant_under_swap_and_permutation(d in cone_data(3), k in 0usize..6) {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let s = star_holds(&d);
        prop_assert_eq!(s, star_holds(&d.swapped()));
        prop_assert_eq!(s, star_holds(&d.permuted(perms[k])));
        prop_assert_eq!(s, check_star(&d).star);
    }

    #[test]
    fn star_invariant_under_positive_scaling(d in cone_data(3), k in 1i128..5) {
        prop_assert_eq!(star_holds(&d), star_holds(&d.scale(k.into())));
    }

    #[test]
    fn star_implies_nrc(ws in weight_system(3)) {
        let d = derive(&ws).unwrap();
        if star_holds(&d) {
            prop_assert!(check_nrc(&d).all());
        }
    }

    #[test]
    fn generate_roundtrip(d in cone_data(4)) {
        let g = weights_from_cone_data(d.a, d.b).unwrap();
        let back = derive(&g.integer).unwrap();
        prop_assert_eq!(back, d.scale((g.scale as i128).into()));
        prop_assert!(g.scale >= 1 && 3 % g.scale == 0);
    }

    #[test]
    fn membership_witness_reconstructs(c in int_vec(4), g1 in int_vec(4), g2 in int_vec(4)) {
        let (c, g1, g2) = (Rat2::from_ints(c[0], c[1]), Rat2::from_ints(g1[0], g1[1]), Rat2::from_ints(g2[0], g2[1]));
        let m = in_cone2(&c, &g1, &g2);
        if let Some((l1, l2)) = m.coefficients {
            prop_assert!(m.is_member());
            prop_assert!(l1 >= 0.into() && l2 >= 0.into());
            prop_assert_eq!(g1.scale(l1) + g2.scale(l2), c);
        } else {
            prop_assert!(!m.is_member());
        }
    }

    #[test]
    fn freeness_iff_trivial_singleton_isotropy(ws in star_system()) {
        let d = derive(&ws).unwrap();
        let free = freeness_check(&d, None).unwrap().free;
        let trivial = (0..3).all(|i| (0..3).all(|j| {
            i == j || isotropy_at_support(&d, &SupportPattern::singleton(i, j).unwrap())
                .unwrap()
                .is_trivial()
        }));
        prop_assert_eq!(free, trivial);
    }

    #[test]
    fn larger_support_has_smaller_isotropy(ws in star_system(), zi in 1u8..8, wj in 1u8..8) {
        let d = derive(&ws).unwrap();
        let bits = |m: u8| (0..3).filter(|k| m & (1 << k) != 0).collect::<Vec<usize>>();
        let Ok(p) = SupportPattern::new(&bits(zi), &bits(wj)) else { return Ok(()); };
        let full = isotropy_at_support(&d, &SupportPattern::full()).unwrap();
        let here = isotropy_at_support(&d, &p).unwrap();
        if let (Some(a), Some(b)) = (full.order(), here.order()) {
            prop_assert_eq!(b % a, 0);
        }
    }

    #[test]
    fn torus_action_preserves_level_set(seed in 0u64..10_000, t1 in -3.2f64..3.2, t2 in -3.2f64..3.2) {
        let d = derive(&WeightSystem::standard_torus()).unwrap();
        let p = embed_su3(&random_su3(seed).unwrap());
        let q = LevelSetPoint::new(&d, p.point).unwrap();
        let moved = action_orbit_map(&d, &q, [t1, t2]);
        prop_assert!(constraints(&d, &moved.point).amax() < 1e-10);
        prop_assert!((moved.point.z_norm() - q.point.z_norm()).abs() < 1e-12);
    }

    #[test]
    fn su3_embedding_lands_on_level_set(seed in any::<u64>()) {
        let a = random_su3(seed).unwrap();
        prop_assert!(a.residual() <= 1e-12);
        prop_assert!(embed_su3(&a).residuals.max() <= 1e-12);
    }
}
