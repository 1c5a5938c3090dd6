mod common;

use std::sync::Arc;

use hasse::integrator::{
    cofactor_solve, integrate_ci, integrate_equidim, linear_extension_space, EquidimOptions, StepContext,
};
use hasse::matrix::{mat_vec, minor_det, subsets, Matrix, Minor};
use hasse::{Error, Ideal, PresentedAlgebra, QuotientIdeal, Ring};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Rank-r systems built as r free rows plus a dependent one.
    #[test]
    fn cofactor_solutions_solve(seed in any::<u64>(), r in 1usize..=2, extra in 0usize..=2) {
        let mut rng = common::rng(seed);
        let alg = common::polynomial_ring(3, &["x", "y", "z"]);
        let ring = alg.ring().clone();
        let ncols = r + extra;
        let mut m: Matrix = (0..r)
            .map(|_| (0..ncols).map(|_| common::poly(&mut rng, &ring, 2, 2)).collect())
            .collect();
        let mut b: Vec<_> = (0..r).map(|_| common::poly(&mut rng, &ring, 2, 2)).collect();
        let lam: Vec<_> = (0..r).map(|_| common::poly(&mut rng, &ring, 1, 2)).collect();
        let dep_row = (0..ncols)
            .map(|j| (0..r).fold(alg.zero(), |acc, i| &acc + &alg.mul(&lam[i], &m[i][j])))
            .collect();
        let dep_b = (0..r).fold(alg.zero(), |acc, i| &acc + &alg.mul(&lam[i], &b[i]));
        m.push(dep_row);
        b.push(dep_b);

        let rows: Vec<usize> = (0..r).collect();
        let mut cols_all = subsets(ncols, r);
        cols_all.shuffle(&mut rng);
        let Some(cols) = cols_all.into_iter().find(|c| !minor_det(&alg, &m, &rows, c).is_zero()) else {
            return Ok(());
        };
        let value = minor_det(&alg, &m, &rows, &cols);
        let minor = Minor { rows, cols, value: value.clone() };
        let xi = cofactor_solve(&alg, &m, &b, &minor).unwrap();
        let lhs = mat_vec(&alg, &m, &xi);
        for (l, bi) in lhs.iter().zip(&b) {
            prop_assert!(alg.eq(l, &alg.mul(&value, bi)));
        }
        let br = QuotientIdeal::new(&alg, &b[..r]).unwrap();
        prop_assert!(xi.iter().all(|x| br.contains(x)));
    }

    /// Every point of the extension space extends the partial derivation.
    #[test]
    fn extension_space_is_exact(seed in any::<u64>(), which in 0usize..18, nu in 2usize..=4) {
        let mut rng = common::rng(seed);
        let (alg, _) = common::monomial_corpus().swap_remove(which);
        let d = common::random_hs(&mut rng, &alg, nu - 1);
        let ctx = StepContext::unconstrained(d.clone()).unwrap();
        let space = linear_extension_space(&ctx).unwrap();
        let Some(space) = space else {
            return Ok(());
        };
        let field = alg.field();
        let mut row = space.particular.clone();
        for k in &space.kernel {
            let c = common::coeff(&mut rng, field);
            for (r, ki) in row.iter_mut().zip(k) {
                *r = alg.reduce(&(&*r + &ki.scale(&c)));
            }
        }
        prop_assert!(d.extended(row).unwrap().validate().unwrap().is_valid());
        for k in &space.kernel {
            prop_assert!(hasse::derivation_check(&alg, k).unwrap());
        }
    }
}

/// Plane curves f, δ = (f_y, −f_x) scaled by Δ = f_x: the complete
/// intersection and equidimensional methods both integrate Δ·δ.
#[test]
fn ci_and_equidim_agree_on_curves() {
    let mut rng = common::rng(17);
    let mut done = 0;
    for _ in 0..400 {
        if done == 25 {
            break;
        }
        let p = *[2u64, 3, 5].choose(&mut rng).unwrap();
        let ring = Ring::with_char(p, &["x", "y"]).unwrap();
        let f = common::poly(&mut rng, &ring, 4, 4);
        if f.total_degree().unwrap_or(0) < 2 {
            continue;
        }
        let Ok(alg) = PresentedAlgebra::new(Ideal::new(&ring, vec![f.clone()]).unwrap()) else {
            continue;
        };
        if alg.is_zero_ring() {
            continue;
        }
        let fx = alg.reduce(&f.partial_derivative(0).unwrap());
        let fy = alg.reduce(&f.partial_derivative(1).unwrap());
        if fx.is_zero() {
            continue;
        }
        let delta = vec![fy.clone(), alg.reduce(&-&fx)];
        let m = rng.gen_range(2..=4);
        let eq = match integrate_equidim(&alg, &delta, &fx, m, &EquidimOptions::default()) {
            Ok(r) => r,
            Err(Error::ZeroDivisor(_)) => continue,
            Err(e) => panic!("{f}: {e}"),
        };
        let scaled: Vec<_> = delta.iter().map(|d| alg.mul(&fx, d)).collect();
        let ci = integrate_ci(&alg, &scaled, m).unwrap();
        assert!(eq.is_complete(), "{f}: {:?}", eq.outcome);
        assert!(ci.is_complete(), "{f}: {:?}", ci.outcome);
        for res in [&eq, &ci] {
            assert!(res.derivation.validate().unwrap().is_valid());
            assert_eq!(res.derivation.length(), m);
            assert_eq!(res.derivation.first_component(), scaled);
        }
        let ma = QuotientIdeal::new(&alg, std::slice::from_ref(&fx)).unwrap();
        assert!(eq.derivation.entries_in(&ma));
        done += 1;
    }
    assert_eq!(done, 25);
}

#[test]
fn contexts_reject_bad_generators() {
    let a = common::algebra(2, &["x", "y"], &["y^2 + x^3"]);
    let d = hasse::HsDerivation::parse(&a, &[&["0", "x^2"]]).unwrap();
    let ma = Arc::new(QuotientIdeal::new(&a, &[a.parse_element("x^2").unwrap()]).unwrap());
    assert!(StepContext::new(d.clone(), vec![a.parse_element("x").unwrap()], ma.clone()).is_err());
    assert!(StepContext::new(d, a.generators().to_vec(), ma).is_ok());
}
