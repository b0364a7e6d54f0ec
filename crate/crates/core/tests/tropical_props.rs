use std::collections::BTreeMap;

use flagpos_core::ground::{bit, full_mask, k_subsets};
use flagpos_core::sample::{perturb, random_rational, random_tnn_flag, random_vector, seeded_rng};
use flagpos_core::tropical::{
    gen_three_term, in_fldr, in_fldr_nonneg, mu_tilde, positive_tropical_holds, rat, tropical_holds,
    FlagTropVector, RelationKind, TropPluckerVector, TropVal,
};
use num::BigRational;
use proptest::prelude::*;

fn single(v: TropPluckerVector) -> FlagTropVector {
    FlagTropVector::new(vec![v]).unwrap()
}

fn tv() -> impl Strategy<Value = TropVal> {
    prop_oneof![Just(TropVal::Inf), (-3i64..=3).prop_map(TropVal::int)]
}

/// Minimum attained at least twice (or everything infinite), by counting.
fn tropical_by_count(v: &[TropVal; 3]) -> bool {
    let m = v.iter().min().unwrap();
    !m.is_finite() || v.iter().filter(|x| *x == m).count() >= 2
}

/// The minimum is attained by the negative middle term and by a positive
/// one (or everything is infinite).
fn positive_by_definition(v: &[TropVal; 3]) -> bool {
    let m = v.iter().min().unwrap();
    !m.is_finite() || (v[1] == *m && (v[0] == *m || v[2] == *m))
}

#[test]
fn relation_counts() {
    let binom = |n: usize, k: usize| (0..k).fold(1usize, |a, i| a * (n - i) / (i + 1));
    for n in 1..=7 {
        for r in 0..=n {
            let gp = gen_three_term(n, r, RelationKind::GrassmannPlucker).unwrap().len();
            let want = if r >= 2 && n >= r + 2 { binom(n, r - 2) * binom(n - r + 2, 4) } else { 0 };
            assert_eq!(gp, want, "GP n={n} r={r}");
            if r < n {
                let inc = gen_three_term(n, r, RelationKind::Incidence).unwrap().len();
                let want = if r >= 1 && n >= r + 2 { binom(n, r - 1) * binom(n - r + 1, 3) } else { 0 };
                assert_eq!(inc, want, "incidence n={n} r={r}");
            }
        }
    }
}

proptest! {
    #[test]
    fn holds_predicates_match_definitions(a in tv(), b in tv(), c in tv()) {
        let v = [a, b, c];
        prop_assert_eq!(tropical_holds(&v), tropical_by_count(&v));
        prop_assert_eq!(positive_tropical_holds(&v), positive_by_definition(&v));
        if positive_tropical_holds(&v) {
            prop_assert!(tropical_holds(&v));
        }
    }

    #[test]
    fn tnn_samples_are_nonnegative(seed in any::<u64>(), n in 2usize..=6, steps in 0usize..40) {
        let mut rng = seeded_rng(seed);
        let lo = 1 + (seed as usize % (n - 1));
        let ranks: Vec<usize> = (lo..n).collect();
        let f = random_tnn_flag(&mut rng, n, &ranks, steps);
        prop_assert!(in_fldr_nonneg(&f).unwrap());
        prop_assert!(in_fldr(&f).unwrap());
    }

    #[test]
    fn dual_roundtrip_and_membership(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = seeded_rng(seed);
        let r = 1 + (seed as usize % n);
        let v = if seed % 2 == 0 {
            random_tnn_flag(&mut rng, n, &[r], 25).constituents()[0].clone()
        } else {
            match random_vector(&mut rng, n, r, 3, 0.3) {
                Some(v) => v,
                None => return Ok(()),
            }
        };
        let d = v.dual();
        prop_assert_eq!(d.r(), n - r);
        prop_assert_eq!(d.dual(), v.clone());
        prop_assert_eq!(in_fldr_nonneg(&single(v.clone())).unwrap(), in_fldr_nonneg(&single(d.clone())).unwrap());
        prop_assert_eq!(in_fldr(&single(v)).unwrap(), in_fldr(&single(d)).unwrap());
    }

    #[test]
    fn mu_tilde_minors_recover_the_pair(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = seeded_rng(seed);
        let r = seed as usize % n;
        let f = random_tnn_flag(&mut rng, n, &[r, r + 1], 30);
        let (m1, m2) = (&f.constituents()[0], &f.constituents()[1]);
        let t = mu_tilde(m1, m2).unwrap();
        let last = bit(n + 1);
        prop_assert_eq!(t.valuated_minor(full_mask(n + 1), last).unwrap(), m1.clone());
        prop_assert_eq!(t.valuated_minor(full_mask(n), 0).unwrap(), m2.clone());
        // The extension of a nonnegative pair is nonnegative.
        prop_assert!(in_fldr_nonneg(&single(t)).unwrap());
    }

    #[test]
    fn closure_under_shift_and_initial_part(seed in any::<u64>(), n in 3usize..=5) {
        let mut rng = seeded_rng(seed);
        let f = random_tnn_flag(&mut rng, n, &[1, 2], 30);
        let f = if seed % 3 == 0 { perturb(&mut rng, &f) } else { f };
        let member = in_fldr_nonneg(&f).unwrap();
        let c0 = random_rational(&mut rng, 4);
        let c: Vec<BigRational> = (0..n).map(|_| random_rational(&mut rng, 4)).collect();
        let g = f.affine_shift(&c0, &c).unwrap();
        // Shifts are invertible, so membership is preserved both ways.
        prop_assert_eq!(in_fldr_nonneg(&g).unwrap(), member);
        if member {
            prop_assert!(in_fldr_nonneg(&f.initial_part()).unwrap());
        }
    }

    #[test]
    fn normalization_is_projective(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let Some(v) = random_vector(&mut rng, 5, 2, 4, 0.2) else { return Ok(()) };
        let shift = rat(7, 3);
        let coords: BTreeMap<u64, TropVal> = v
            .finite_coords()
            .iter()
            .map(|(&k, x)| (k, TropVal::Fin(x + &shift)))
            .collect();
        let w = TropPluckerVector::new(5, 2, coords).unwrap();
        prop_assert!(v.projectively_eq(&w));
        prop_assert_eq!(v.normalized(), w.normalized());
        prop_assert_eq!(in_fldr(&single(v)).unwrap(), in_fldr(&single(w)).unwrap());
    }
}

#[test]
fn indicator_vectors_follow_the_support() {
    // U_{2,4} with all-zero heights is in the nonnegative Dressian.
    let coords = k_subsets(4, 2).map(|s| (s, TropVal::zero())).collect();
    let v = TropPluckerVector::new(4, 2, coords).unwrap();
    assert!(in_fldr_nonneg(&single(v)).unwrap());
    // {12, 14, 23, 34}: the minimum of the 1234 relation is attained only
    // by the positive terms.
    let coords = [0b0011u64, 0b1001, 0b0110, 0b1100]
        .into_iter()
        .map(|s| (s, TropVal::zero()))
        .collect();
    let v = TropPluckerVector::new(4, 2, coords).unwrap();
    assert!(in_fldr(&single(v.clone())).unwrap());
    assert!(!in_fldr_nonneg(&single(v)).unwrap());
}
