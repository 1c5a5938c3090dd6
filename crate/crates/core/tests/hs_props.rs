mod common;

use hasse::{HsDerivation, QuotientIdeal, Validation};
use proptest::prelude::*;
use rand::Rng;

fn algebras() -> Vec<std::sync::Arc<hasse::PresentedAlgebra>> {
    vec![
        common::polynomial_ring(2, &["x", "y"]),
        common::polynomial_ring(5, &["x"]),
        common::algebra(2, &["x"], &["x^2"]),
        common::algebra(3, &["x"], &["x^3"]),
        common::algebra(2, &["x", "y"], &["x^2", "x*y", "y^2"]),
        common::algebra(3, &["x", "y"], &["x^2", "y^2"]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn group_laws(seed in any::<u64>(), m in 1usize..=4, which in 0usize..6) {
        let mut rng = common::rng(seed);
        let a = &algebras()[which];
        let d = common::random_hs(&mut rng, a, m);
        let e = common::random_hs(&mut rng, a, m);
        let g = common::random_hs(&mut rng, a, m);
        let id = HsDerivation::identity(a, m);
        prop_assert_eq!(d.compose(&e).unwrap().compose(&g).unwrap(), d.compose(&e.compose(&g).unwrap()).unwrap());
        prop_assert_eq!(d.compose(&id).unwrap(), d.clone());
        prop_assert_eq!(id.compose(&d).unwrap(), d.clone());
        let inv = d.inverse().unwrap();
        prop_assert!(d.compose(&inv).unwrap().is_identity());
        prop_assert!(inv.compose(&d).unwrap().is_identity());
        prop_assert_eq!(inv.inverse().unwrap(), d.clone());
        prop_assert!(d.compose(&e).unwrap().validate().unwrap().is_valid());
        let t = rng.gen_range(1..=m);
        prop_assert_eq!(
            d.compose(&e).unwrap().truncate(t).unwrap(),
            d.truncate(t).unwrap().compose(&e.truncate(t).unwrap()).unwrap()
        );
    }

    #[test]
    fn first_components_are_derivations(seed in any::<u64>(), m in 1usize..=4, which in 0usize..6) {
        let mut rng = common::rng(seed);
        let a = &algebras()[which];
        let d = common::random_hs(&mut rng, a, m);
        prop_assert!(hasse::derivation_check(a, &d.first_component()).unwrap());
        // D_1 of a composition is the sum of the D_1's
        let e = common::random_hs(&mut rng, a, m);
        let sum: Vec<_> = d.first_component().iter().zip(e.first_component()).map(|(x, y)| a.reduce(&(x + &y))).collect();
        prop_assert_eq!(d.compose(&e).unwrap().first_component(), sum);
    }

    #[test]
    fn truncations_validate(seed in any::<u64>(), which in 2usize..6) {
        let mut rng = common::rng(seed);
        let a = &algebras()[which];
        let d = common::random_hs(&mut rng, a, 4);
        for t in 1..=4 {
            prop_assert!(d.truncate(t).unwrap().validate().unwrap().is_valid());
        }
    }
}

#[test]
fn validation_examples() {
    let a = common::algebra(2, &["x"], &["x^2"]);
    // x ↦ x + t: (x + t)^2 = t^2, fails at order 2
    let d = HsDerivation::parse(&a, &[&["1"], &["0"]]).unwrap();
    assert_eq!(d.validate().unwrap(), Validation::Invalid { generator: 0, order: 2 });
    let e = HsDerivation::parse(&a, &[&["x"], &["0"]]).unwrap();
    assert!(e.validate().unwrap().is_valid());
    let b = common::algebra(2, &["x", "y"], &["y^2 + x^3"]);
    let d = HsDerivation::parse(&b, &[&["0", "x^2"], &["x^2", "0"]]).unwrap();
    assert!(d.validate().unwrap().is_valid());
    let j = QuotientIdeal::new(&b, &[b.parse_element("x^2").unwrap()]).unwrap();
    assert!(d.entries_in(&j));
}
