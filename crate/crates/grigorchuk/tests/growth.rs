use grigorchuk::growth::*;
use grigorchuk::group::{in_h, reduced_words, words_equal};
use grigorchuk::minform::{element_weight_units, minimal_form};
use grigorchuk::{Weight, Word};
use proptest::prelude::*;

const BUDGET: usize = 2_000_000;

/// Oracle: all reduced words up to length n, deduplicated pairwise with the word problem.
fn distinct_elements(n: usize) -> Vec<Word> {
    let mut reps: Vec<Word> = Vec::new();
    for len in 0..=n {
        for v in reduced_words(len) {
            if !reps.iter().any(|r| words_equal(r, &v)) {
                reps.push(v);
            }
        }
    }
    reps
}

#[test]
fn unit_ball_matches_word_oracle() {
    for n in 0..=4 {
        assert_eq!(gamma(&Weight::unit(), n * 10_000, BUDGET).unwrap(), distinct_elements(n as usize).len(), "radius {n}");
    }
}

#[test]
fn two_backends_agree_to_ten() {
    let radii: Vec<i64> = (0..=10).map(|n| n * 10_000).collect();
    let a = GrowthTable::at_radii(&Weight::unit(), &radii, Subgroup::G, BUDGET).unwrap().counts();
    let b = gamma_by_signature(&Weight::unit(), &radii, 10);
    assert_eq!(a, b);
    assert_eq!((a[0], a[1]), (1, 5));
}

#[test]
fn restricted_counts() {
    assert_eq!(gamma_restricted(&Weight::unit(), 10_000, Subgroup::H, BUDGET).unwrap(), 4);
    assert_eq!(gamma_restricted(&Weight::unit(), 10_000, Subgroup::B, BUDGET).unwrap(), 2);
}

#[test]
fn subgroup_inequalities() {
    for omega in [Weight::unit(), Weight::tuned()] {
        let radii: Vec<i64> = (0..=8).map(|n| n * 10_000).collect();
        for row in check_sbgp(&omega, &radii, BUDGET).unwrap() {
            assert!(row.holds, "{omega} at {}: {row:?}", row.radius);
        }
    }
    let zero = &check_sbgp(&Weight::unit(), &[0], BUDGET).unwrap()[0];
    assert_eq!((zero.lower, zero.middle), (1, 2));
}

#[test]
fn unit_weight_is_geodesic_length() {
    for e in ball(&Weight::unit(), 50_000, BUDGET).unwrap() {
        assert_eq!(e.units, e.word.len() as i64 * 10_000);
    }
}

#[test]
fn alpha_values() {
    assert_eq!(alpha_of_eta(4.0).unwrap(), 0.5);
    assert_eq!(alpha_of_eta(2.0).unwrap(), 1.0);
    assert!((alpha_of_eta(3.83414).unwrap() - 0.5157).abs() < 1e-4);
    assert!(alpha_of_eta(1.0).is_err());
}

#[test]
fn bound_single_iteration() {
    let p = BoundParams { eta: 4.0, k: 3.0, l: 10.0, gamma_l: 100 };
    let b = lower_bound_log_gamma(4.0 * 10.0 + 3.0, &p).unwrap();
    assert_eq!(b.m, 1);
    assert!((b.log_gamma - (2.0 * (25f64).ln() + 4f64.ln())).abs() < 1e-12);
    assert!(matches!(lower_bound_log_gamma(20.0, &p), Err(grigorchuk::Error::NoBound(_))));
}

#[test]
fn bound_tracks_n_to_the_alpha() {
    let eta = 3.83414;
    let alpha = alpha_of_eta(eta).unwrap();
    let p = BoundParams { eta, k: 20.0, l: 10.0, gamma_l: 60 };
    let ratios: Vec<f64> = (3..12).map(|e| {
        let n = 10f64.powi(e);
        lower_bound_log_gamma(n, &p).unwrap().log_gamma / n.powf(alpha)
    }).collect();
    let (lo, hi) = ratios.iter().fold((f64::MAX, 0f64), |(l, h), &r| (l.min(r), h.max(r)));
    // m jumps by one at each power of eta, so the ratio oscillates by a bounded factor
    assert!(lo > 0.0 && hi / lo < 8.0, "{ratios:?}");
}

proptest! {
    #[test]
    fn bound_is_monotone(n in 50.0f64..1e7, dn in 0.0f64..1e5, g in 5u64..1000, dg in 0u64..1000) {
        let p = BoundParams { eta: 3.83414, k: 7.0, l: 4.0, gamma_l: g };
        let q = BoundParams { gamma_l: g + dg, ..p };
        if let (Ok(a), Ok(b)) = (lower_bound_log_gamma(n, &p), lower_bound_log_gamma(n + dn, &p)) {
            prop_assert!(a.log_gamma <= b.log_gamma);
        }
        if let (Ok(a), Ok(b)) = (lower_bound_log_gamma(n, &p), lower_bound_log_gamma(n, &q)) {
            prop_assert!(a.log_gamma <= b.log_gamma);
        }
    }

    #[test]
    fn norm_is_submultiplicative(i in 0usize..400, j in 0usize..400) {
        let omega = Weight::tuned();
        let entries = ball(&omega, 80_000, BUDGET).unwrap();
        let (g, h) = (&entries[i % entries.len()], &entries[j % entries.len()]);
        let gh = element_weight_units(&g.word.concat(&h.word), &omega).unwrap();
        prop_assert!(gh <= g.units + h.units);
    }

    #[test]
    fn minimal_form_is_lightest_and_equal(i in 0usize..2000) {
        let omega = Weight::tuned();
        let words: Vec<Word> = (0..=6).flat_map(reduced_words).collect();
        let v = &words[i % words.len()];
        let m = minimal_form(v, &omega).unwrap();
        prop_assert!(words_equal(&m, v));
        prop_assert!(omega.word_units(&m) <= omega.word_units(v));
        prop_assert_eq!(in_h(&m), in_h(v));
        prop_assert_eq!(minimal_form(&m, &omega).unwrap(), m);
    }
}
