mod common;

use hasse::leaps::{is_m_integrable, leap_scan, Integrability, LeapLab, Mode};
use proptest::prelude::*;

fn small_corpus() -> Vec<std::sync::Arc<hasse::PresentedAlgebra>> {
    common::monomial_corpus()
        .into_iter()
        .map(|(a, _)| a)
        .filter(|a| a.field().characteristic() <= 3 && hasse::artinian::ArtinianModel::new(a).unwrap().dim() <= 5)
        .collect()
}

/// Coset pruning never changes an answer: compared with the full DFS on
/// every derivation of the small algebras.
#[test]
fn pruning_agrees_with_full_search() {
    let mut pairs = 0;
    for a in small_corpus() {
        let mut pruned = LeapLab::new(&a).unwrap();
        let mut full = LeapLab::new(&a).unwrap().with_pruning(false);
        let der = pruned.derivations().clone();
        let model = pruned.model().clone();
        for coords in hasse::linalg::all_tuples(a.field(), der.dim()) {
            let v = hasse::linalg::combine(a.field(), der.ambient(), &coords, der.basis());
            let delta = model.vec_element(&v);
            for m in 2..=4 {
                let x = pruned.decide(&delta, m).unwrap();
                let y = full.decide(&delta, m).unwrap();
                assert_eq!(x.is_yes(), y.is_yes(), "{a:?} {delta:?} m = {m}");
                assert_eq!(x.is_no(), y.is_no());
                pairs += 1;
            }
        }
    }
    assert!(pairs > 100, "{pairs}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// m-integrable implies m'-integrable for m' ≤ m, and witnesses validate.
    #[test]
    fn integrability_is_monotone(seed in any::<u64>(), which in 0usize..18) {
        let mut rng = common::rng(seed);
        let (a, _) = common::monomial_corpus().swap_remove(which);
        let d = common::random_hs(&mut rng, &a, 1).first_component();
        let mut seen_no = false;
        for m in 1..=5 {
            match is_m_integrable(&a, &d, m, Mode::Exact).unwrap() {
                Integrability::Yes(w) => {
                    prop_assert!(!seen_no, "integrable at {m} after failing earlier");
                    prop_assert_eq!(w.length(), m);
                    prop_assert!(w.validate().unwrap().is_valid());
                    prop_assert_eq!(w.first_component(), d.clone());
                }
                Integrability::No(_) => seen_no = true,
                Integrability::Unknown(_) => {}
            }
        }
    }
}

#[test]
fn ider_dimensions_do_not_increase() {
    for (a, bound) in common::monomial_corpus() {
        let rep = leap_scan(&a, bound).unwrap();
        assert!(rep.dims.windows(2).all(|w| w[1] <= w[0]), "{a:?}: {:?}", rep.dims);
        for leap in &rep.leaps {
            // a leap is a strict drop
            assert!(rep.dims[leap.s - 2] > rep.dims[leap.s - 1]);
            assert_eq!(leap.integral.length(), leap.s - 1);
            assert!(leap.integral.validate().unwrap().is_valid());
        }
    }
}
