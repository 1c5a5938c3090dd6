mod common;

use hasse::groebner::{ideal_contained, ideal_intersection, ideal_membership, ideal_quotient, ideals_equal};
use hasse::{Ideal, Monomial, MonomialOrder, Polynomial, Ring};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn random_ideal(rng: &mut rand_chacha::ChaCha8Rng, ring: &std::sync::Arc<Ring>) -> Ideal {
    let k = rng.gen_range(1..=3);
    let gens = (0..k).map(|_| common::nonzero_poly(rng, ring, 3, 3)).collect();
    Ideal::new(ring, gens).unwrap()
}

fn ring_for(rng: &mut rand_chacha::ChaCha8Rng) -> std::sync::Arc<Ring> {
    let p = *[0u64, 2, 3, 7].choose(rng).unwrap();
    let n = rng.gen_range(1..=3);
    Ring::with_char(p, &["x", "y", "z"][..n]).unwrap()
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let (mf, cf) = f.leading_term(order).unwrap().clone();
    let (mg, cg) = g.leading_term(order).unwrap().clone();
    let field = f.ring().field();
    let l = mf.lcm(&mg);
    let a = f.mul_term(&l.div(&mf).unwrap(), &field.inv(&cf));
    let b = g.mul_term(&l.div(&mg).unwrap(), &field.inv(&cg));
    &a - &b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_is_closed_under_s_pairs(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let ring = ring_for(&mut rng);
        let ideal = random_ideal(&mut rng, &ring);
        let order = if rng.gen_bool(0.5) { MonomialOrder::Grevlex } else { MonomialOrder::Lex };
        let gb = ideal.groebner(order).unwrap();
        let els = gb.elements();
        for i in 0..els.len() {
            for j in i + 1..els.len() {
                prop_assert!(gb.reduce(&s_polynomial(&els[i], &els[j], order)).is_zero());
            }
        }
        for g in ideal.generators() {
            prop_assert!(gb.contains(g));
        }
        for e in els {
            prop_assert!(ideal_membership(e, &ideal).unwrap());
            prop_assert!(e.leading_term(order).map(|t| ring.field().is_one(&t.1)).unwrap_or(false));
        }
    }

    #[test]
    fn normal_form_laws(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let ring = ring_for(&mut rng);
        let gb = random_ideal(&mut rng, &ring).groebner(MonomialOrder::Grevlex).unwrap();
        let f = common::poly(&mut rng, &ring, 5, 6);
        let g = common::poly(&mut rng, &ring, 5, 6);
        let c = common::coeff(&mut rng, ring.field());
        let nf = gb.reduce(&f);
        prop_assert_eq!(gb.reduce(&nf), nf.clone());
        prop_assert_eq!(gb.reduce(&f.add_scaled(&g, &c)), nf.add_scaled(&gb.reduce(&g), &c));
        let cert = gb.normal_form(&f).unwrap();
        prop_assert_eq!(cert.recombine(gb.elements()), f);
    }

    #[test]
    fn intersection_bounds(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let ring = ring_for(&mut rng);
        let a = random_ideal(&mut rng, &ring);
        let b = random_ideal(&mut rng, &ring);
        let meet = ideal_intersection(&a, &b).unwrap();
        prop_assert!(ideal_contained(&meet, &a).unwrap());
        prop_assert!(ideal_contained(&meet, &b).unwrap());
        prop_assert!(ideal_contained(&a.product(&b).unwrap(), &meet).unwrap());
    }

    #[test]
    fn monomial_quotients(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(1..=3);
        let ring = Ring::with_char(3, &["x", "y", "z"][..n]).unwrap();
        let one = ring.field().one();
        let mono = |rng: &mut rand_chacha::ChaCha8Rng, lo: u32| {
            let d = rng.gen_range(lo..=3);
            Monomial::all_of_degree(n, d).choose(rng).unwrap().clone()
        };
        let gens: Vec<Monomial> = (0..rng.gen_range(1..=3)).map(|_| mono(&mut rng, 1)).collect();
        let f = mono(&mut rng, 0);
        let ideal = Ideal::new(&ring, gens.iter().map(|g| Polynomial::monomial(&ring, g.clone(), one.clone())).collect()).unwrap();
        let q = ideal_quotient(&ideal, &Polynomial::monomial(&ring, f.clone(), one.clone())).unwrap();
        // (⟨m_i⟩ : f) = ⟨m_i / gcd(m_i, f)⟩
        let expected: Vec<Polynomial> = gens
            .iter()
            .map(|g| {
                let e: Vec<u32> = (0..n).map(|i| g.exponent(i).saturating_sub(f.exponent(i))).collect();
                Polynomial::monomial(&ring, Monomial::from_exponents(&e), one.clone())
            })
            .collect();
        prop_assert!(ideals_equal(&q, &Ideal::new(&ring, expected).unwrap()).unwrap());
    }
}

#[test]
fn spec_membership_examples() {
    let ring = Ring::with_char(2, &["x", "y"]).unwrap();
    let p = |s: &str| hasse::parse_polynomial(&ring, s).unwrap();
    let id = |g: &[&str]| Ideal::new(&ring, g.iter().map(|s| p(s)).collect()).unwrap();
    assert!(ideal_membership(&p("x*y"), &id(&["x"])).unwrap());
    assert!(!ideal_membership(&p("1"), &id(&["x", "y"])).unwrap());
    assert!(ideal_membership(&p("x^3"), &id(&["y^2 - x^3", "y^2"])).unwrap());
}
