//! Ideal-theoretic operations built on Gröbner bases.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

use super::{GroebnerBasis, Ideal};

/// f ∈ I.
pub fn ideal_membership(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    Ok(ideal.groebner(MonomialOrder::Grevlex)?.contains(f))
}

/// I ∩ J by eliminating t from t·I + (1 − t)·J.
pub fn ideal_intersection(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = a.ring();
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let big = ring.with_leading_var();
    let t = Polynomial::var(&big, 0);
    let one_minus_t = &Polynomial::one(&big) - &t;
    let mut gens = Vec::new();
    for f in a.generators() {
        gens.push(&t * &f.lift_to(&big, 0));
    }
    for g in b.generators() {
        gens.push(&one_minus_t * &g.lift_to(&big, 0));
    }
    let gb = Ideal::new(&big, gens)?.groebner(MonomialOrder::Elimination(1))?;
    let kept = gb
        .elements()
        .iter()
        .filter_map(|e| e.project_from(ring))
        .collect();
    Ideal::new(ring, kept)
}

/// Intersection of a nonempty family.
pub fn intersect_all(ideals: &[Ideal]) -> Result<Ideal> {
    let (first, rest) = ideals
        .split_first()
        .ok_or_else(|| Error::InvalidInput("empty intersection".into()))?;
    let mut acc = first.clone();
    for i in rest {
        acc = ideal_intersection(&acc, i)?;
    }
    Ok(acc)
}

/// `h / f` when f divides h exactly in the polynomial ring.
pub fn exact_division(h: &Polynomial, f: &Polynomial) -> Option<Polynomial> {
    if f.is_zero() {
        return None;
    }
    let ring = h.ring();
    let field = ring.field();
    let order = MonomialOrder::Grevlex;
    let (lm, lc) = f.leading_term(order)?.clone();
    let mut rest = h.clone();
    let mut q = Vec::new();
    while let Some((m, c)) = rest.leading_term(order).cloned() {
        let u = m.div(&lm)?;
        let coef = field.div(&c, &lc);
        rest = &rest - &f.mul_term(&u, &coef);
        q.push((u, coef));
    }
    Some(Polynomial::from_terms(ring, q))
}

/// (I : f) = (I ∩ ⟨f⟩)/f.
pub fn ideal_quotient(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    let ring = ideal.ring();
    if !same_ring(f.ring(), ring) {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    let inter = ideal_intersection(ideal, &Ideal::new(ring, vec![f.clone()])?)?;
    let mut gens = Vec::new();
    for h in inter.generators() {
        gens.push(
            exact_division(h, f)
                .ok_or_else(|| Error::Verification("intersection element not divisible".into()))?,
        );
    }
    Ideal::new(ring, gens)
}

/// Krull dimension of k[x]/I; `None` for the unit ideal.
pub fn krull_dimension(ideal: &Ideal) -> Result<Option<usize>> {
    let gb = ideal.groebner(MonomialOrder::Grevlex)?;
    Ok(dimension_from_basis(&gb))
}

/// Largest set of variables that contains the support of no leading monomial.
pub fn dimension_from_basis(gb: &GroebnerBasis) -> Option<usize> {
    if gb.is_unit() {
        return None;
    }
    let n = gb.ring().nvars();
    let supports: Vec<u64> = gb
        .leading_monomials()
        .iter()
        .map(support_mask)
        .collect();
    let mut best = 0;
    // n is small in practice; subsets enumerated by mask
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|s| s & !mask != 0) {
            best = size;
        }
    }
    Some(best)
}

fn support_mask(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0, |acc, (i, _)| acc | (1 << i))
}

/// Equality of ideals via reduced Gröbner bases.
pub fn ideals_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    let ga = a.groebner(MonomialOrder::Grevlex)?;
    let gb = b.groebner(MonomialOrder::Grevlex)?;
    Ok(ga.elements() == gb.elements())
}

/// Every generator of `a` lies in `b`.
pub fn ideal_contained(a: &Ideal, b: &Ideal) -> Result<bool> {
    let gb = b.groebner(MonomialOrder::Grevlex)?;
    Ok(a.generators().iter().all(|g| gb.contains(g)))
}

/// The ideal generated by all variables.
pub fn maximal_ideal_at_origin(ring: &Arc<Ring>) -> Ideal {
    Ideal {
        ring: ring.clone(),
        generators: (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect(),
    }
}
