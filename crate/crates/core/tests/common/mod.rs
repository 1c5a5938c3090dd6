#![allow(dead_code)]

use std::sync::Arc;

use hasse::artinian::ArtinianModel;
use hasse::integrator::LinearizedSystem;
use hasse::linalg::{combine, Subspace};
use hasse::{Coeff, Field, HsDerivation, Ideal, Monomial, Polynomial, PresentedAlgebra, Ring};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coeff(rng: &mut ChaCha8Rng, field: Field) -> Coeff {
    match field.characteristic() {
        0 => field.from_i64(rng.gen_range(-4..=4)),
        p => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

/// Up to `terms` random terms of total degree at most `deg`.
pub fn poly(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, deg: u32, terms: usize) -> Polynomial {
    let n = ring.nvars();
    let field = ring.field();
    let mut out = Vec::new();
    for _ in 0..rng.gen_range(1..=terms) {
        let total = rng.gen_range(0..=deg);
        let mut e = vec![0u32; n];
        for _ in 0..total {
            e[rng.gen_range(0..n)] += 1;
        }
        out.push((Monomial::from_exponents(&e), coeff(rng, field)));
    }
    Polynomial::from_terms(ring, out)
}

/// Nonzero random polynomial.
pub fn nonzero_poly(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, deg: u32, terms: usize) -> Polynomial {
    loop {
        let p = poly(rng, ring, deg, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn algebra(p: u64, vars: &[&str], gens: &[&str]) -> Arc<PresentedAlgebra> {
    PresentedAlgebra::parse(p, vars, gens).unwrap()
}

pub fn polynomial_ring(p: u64, vars: &[&str]) -> Arc<PresentedAlgebra> {
    PresentedAlgebra::new(Ideal::zero(&Ring::with_char(p, vars).unwrap())).unwrap()
}

/// The artinian monomial algebras used across the leap tests, with a scan
/// bound for each.
pub fn monomial_corpus() -> Vec<(Arc<PresentedAlgebra>, usize)> {
    let cases: &[(u64, &[&str], &[&str], usize)] = &[
        (2, &["x"], &["x^2"], 8),
        (2, &["x"], &["x^3"], 8),
        (2, &["x"], &["x^4"], 8),
        (2, &["x"], &["x^5"], 8),
        (3, &["x"], &["x^2"], 9),
        (3, &["x"], &["x^3"], 9),
        (3, &["x"], &["x^4"], 9),
        (5, &["x"], &["x^5"], 5),
        (2, &["x", "y"], &["x^2", "y^2"], 8),
        (2, &["x", "y"], &["x^2", "x*y", "y^2"], 8),
        (2, &["x", "y"], &["x^2", "y^3"], 8),
        (2, &["x", "y"], &["x^4", "y^2"], 8),
        (2, &["x", "y"], &["x^2", "x*y", "y^3"], 8),
        (2, &["x", "y"], &["x^3", "x*y", "y^3"], 8),
        (2, &["x", "y"], &["x^4", "x*y", "y^4"], 8),
        (3, &["x", "y"], &["x^2", "y^2"], 9),
        (3, &["x", "y"], &["x^3", "y^2"], 9),
        (3, &["x", "y"], &["x^3", "x*y", "y^3"], 9),
    ];
    cases
        .iter()
        .map(|(p, v, g, b)| (algebra(*p, v, g), *b))
        .collect()
}

/// A random HS-derivation of length `m`: random rows for I = 0, otherwise
/// random choices in each level's affine solution space.
pub fn random_hs(rng: &mut ChaCha8Rng, alg: &Arc<PresentedAlgebra>, m: usize) -> HsDerivation {
    let n = alg.nvars();
    if alg.generators().is_empty() {
        let rows = (0..m)
            .map(|_| (0..n).map(|_| poly(rng, alg.ring(), 2, 2)).collect())
            .collect();
        return HsDerivation::new(alg, rows).unwrap();
    }
    let model = ArtinianModel::new(alg).unwrap();
    let sys = LinearizedSystem::new(&model, alg.generators()).unwrap();
    let field = alg.field();
    let ambient = sys.ncols();
    let der = Subspace::spanned_by(field, ambient, sys.kernel());
    let pick = |rng: &mut ChaCha8Rng, basis: &[Vec<Coeff>]| {
        let c: Vec<Coeff> = basis.iter().map(|_| coeff(rng, field)).collect();
        combine(field, ambient, &c, basis)
    };
    'restart: for attempt in 0.. {
        // after many failures fall back to δ = 0, which always extends
        let first = if attempt < 50 { pick(rng, der.basis()) } else { vec![field.zero(); ambient] };
        let mut d = HsDerivation::new(alg, vec![model.vec_element(&first)]).unwrap();
        for _ in 2..=m {
            let Some(sol) = sys.extensions(&d).unwrap() else {
                continue 'restart;
            };
            let k = pick(rng, &sol.kernel);
            let v: Vec<Coeff> = sol
                .particular
                .iter()
                .zip(&k)
                .map(|(a, b)| field.add(a, b))
                .collect();
            d = d.extended(model.vec_element(&v)).unwrap();
        }
        assert!(d.validate().unwrap().is_valid());
        return d;
    }
    unreachable!()
}

/// All elements of a finite-dimensional algebra.
pub fn all_elements(model: &ArtinianModel) -> Vec<Polynomial> {
    hasse::linalg::all_tuples(model.field(), model.dim())
        .iter()
        .map(|t| model.element(t))
        .collect()
}
