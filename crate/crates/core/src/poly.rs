//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept sorted in descending grevlex order with no zero
//! coefficients, so two polynomials are equal exactly when their term lists
//! are equal.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::monomial::{Monomial, MonomialOrder};
use crate::ring::{same_ring, Ring};

pub type Term = (Monomial, Coeff);

#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    MonomialOrder::Grevlex.cmp(b, a)
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Coeff) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Arc<Ring>, c: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(c))
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index), ring.field().one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Coeff) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = Term>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms already sorted in descending grevlex with no zeros or duplicates.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| canonical_cmp(&w[0].0, &w[1].0) == Ordering::Less));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.field().is_one(&self.terms[0].1)
    }

    /// The constant value when the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(self.field().zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms
            .binary_search_by(|(t, _)| canonical_cmp(t, m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field().zero())
    }

    /// Leading term with respect to `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<&Term> {
        if order == MonomialOrder::Grevlex {
            return self.terms.first();
        }
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, &self.field().one()))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, &self.field().neg(&self.field().one())))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self + c * other`, merging the sorted term lists.
    pub fn add_scaled(&self, other: &Polynomial, c: &Coeff) -> Polynomial {
        let field = self.field();
        if field.is_zero(c) || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match canonical_cmp(ma, mb) {
                Ordering::Less => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((mb.clone(), field.mul(c, cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = field.add(ca, &field.mul(c, cb));
                    if !field.is_zero(&s) {
                        out.push((ma.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, cb)| (m.clone(), field.mul(c, cb))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, Coeff> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = field.mul(ca, cb);
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(v) => *v = field.add(v, &prod),
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Multiply by the single term `c * m`. Monomial multiplication preserves
    /// the term order, so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(mm, cc)| {
                let v = field.mul(cc, c);
                (!field.is_zero(&v)).then(|| (mm.mul(m), v))
            })
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `j`; coefficients
    /// are reduced in the ring's characteristic.
    pub fn partial_derivative(&self, j: usize) -> Result<Polynomial> {
        let n = self.ring.nvars();
        if j >= n {
            return Err(Error::VariableOutOfRange { index: j, nvars: n });
        }
        let field = self.field();
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(j);
            if e == 0 {
                return None;
            }
            let c = field.mul(c, &field.from_i64(e as i64));
            if field.is_zero(&c) {
                return None;
            }
            let mut exps = m.exponents().to_vec();
            exps[j] -= 1;
            Some((Monomial::from_exponents(&exps), c))
        });
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// Make the grevlex-leading coefficient 1 (no-op on zero).
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field().inv(c)),
        }
    }

    /// Re-home the polynomial in a ring with the same field and variable
    /// count (e.g. after renaming).
    pub fn rehome(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        if ring.nvars() != self.ring.nvars() || ring.field() != self.field() {
            return Err(Error::RingMismatch);
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Embed into a ring with one extra leading variable.
    pub(crate) fn lift_to(&self, ring: &Arc<Ring>, extra_exp: u32) -> Polynomial {
        Polynomial::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.insert_var(0, extra_exp), c.clone())),
        )
    }

    /// Drop the leading variable, which must not occur.
    pub(crate) fn project_from(&self, ring: &Arc<Ring>) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let (rest, e) = m.remove_var(0);
            if e != 0 {
                return None;
            }
            terms.push((rest, c.clone()));
        }
        Some(Polynomial::from_terms(ring, terms))
    }

    /// Substitute polynomials (in a possibly different ring over the same
    /// field) for the variables.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidInput("substitution arity".into()));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        if images.iter().any(|p| !same_ring(&p.ring, &target)) || target.field() != self.field() {
            return Err(Error::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on ring mismatch; use [`Polynomial::try_add`] at API boundaries.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&self.field().neg(&self.field().one()))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.field();
        let names = self.ring.var_names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { field.neg(c) } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !field.is_one(&abs) || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use proptest::prelude::*;

    fn ring(p: u64, vars: &[&str]) -> Arc<Ring> {
        Ring::with_char(p, vars).unwrap()
    }

    fn poly(r: &Arc<Ring>, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn power_rule_char_zero() {
        let r = ring(0, &["x"]);
        assert_eq!(poly(&r, "x^3").partial_derivative(0).unwrap(), poly(&r, "3*x^2"));
    }

    #[test]
    fn derivative_vanishes_in_char_two() {
        let r = ring(2, &["x", "y"]);
        assert!(poly(&r, "y^2").partial_derivative(1).unwrap().is_zero());
        // -3 ≡ 1 mod 2
        assert_eq!(poly(&r, "y^2 - x^3").partial_derivative(0).unwrap(), poly(&r, "x^2"));
    }

    #[test]
    fn derivative_index_checked() {
        let r = ring(2, &["x"]);
        assert_eq!(
            poly(&r, "x").partial_derivative(1),
            Err(Error::VariableOutOfRange { index: 1, nvars: 1 })
        );
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring(2, &["x", "y"]);
        let f = poly(&r, "x*y + 1");
        assert_eq!(&f + &Polynomial::zero(&r), f);
        assert_eq!(poly(&r, "x + y").pow(2), poly(&r, "x^2 + y^2"));
        let q = ring(0, &["x"]);
        assert_eq!(&poly(&q, "x + 1") * &poly(&q, "x - 1"), poly(&q, "x^2 - 1"));
    }

    #[test]
    fn mismatched_rings_error() {
        let a = ring(2, &["x"]);
        let b = ring(3, &["x"]);
        assert_eq!(poly(&a, "x").try_add(&poly(&b, "x")), Err(Error::RingMismatch));
    }

    #[test]
    fn printing_is_descending() {
        let r = ring(0, &["x", "y"]);
        assert_eq!(poly(&r, "y^2 - x^3").to_string(), "-x^3 + y^2");
        let r3 = ring(3, &["x", "y"]);
        assert_eq!(poly(&r3, "x - y").to_string(), "x + 2*y");
        assert_eq!(Polynomial::zero(&r3).to_string(), "0");
    }

    pub(crate) fn arb_poly(r: Arc<Ring>, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
        let n = r.nvars();
        let p = r.characteristic().max(7) as i64;
        proptest::collection::vec(
            (proptest::collection::vec(0..=max_exp, n), -p..p),
            0..=max_terms,
        )
        .prop_map(move |ts| {
            Polynomial::from_terms(
                &r,
                ts.into_iter()
                    .map(|(e, c)| (Monomial::from_exponents(&e), r.field().from_i64(c))),
            )
        })
    }

    fn triples() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
        prop_oneof![Just(0u64), Just(2), Just(3), Just(5)].prop_flat_map(|p| {
            let r = ring(p, &["x", "y", "z"]);
            (
                arb_poly(r.clone(), 4, 3),
                arb_poly(r.clone(), 4, 3),
                arb_poly(r, 4, 3),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in triples()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn leibniz_rule((a, b, _c) in triples(), j in 0usize..3) {
            let lhs = (&a * &b).partial_derivative(j).unwrap();
            let rhs = &(&a * &b.partial_derivative(j).unwrap()) + &(&b * &a.partial_derivative(j).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn derivative_of_pth_power_vanishes(p in prop_oneof![Just(2u64), Just(3), Just(5)], seed in 0u64..1000) {
            let r = ring(p, &["x", "y"]);
            let f = Polynomial::from_terms(&r, (0..3).map(|k| {
                let e = [((seed >> (2 * k)) & 3) as u32, ((seed >> (2 * k + 6)) & 3) as u32];
                (Monomial::from_exponents(&e), r.field().from_i64((seed as i64 >> k) + 1))
            }));
            let fp = f.pow(p as u32);
            for j in 0..2 {
                prop_assert!(fp.partial_derivative(j).unwrap().is_zero());
            }
        }
    }
}
