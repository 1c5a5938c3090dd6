//! Finitely presented algebras A = R/I and ideals of A.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{GroebnerBasis, Ideal};
use crate::monomial::MonomialOrder;
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// A = R/I with a cached reduced Gröbner basis. Elements of A are
/// represented by their normal forms.
#[derive(Debug)]
pub struct PresentedAlgebra {
    ideal: Ideal,
    basis: GroebnerBasis,
}

impl PresentedAlgebra {
    pub fn new(ideal: Ideal) -> Result<Arc<PresentedAlgebra>> {
        Self::with_order(ideal, MonomialOrder::Grevlex)
    }

    pub fn with_order(ideal: Ideal, order: MonomialOrder) -> Result<Arc<PresentedAlgebra>> {
        let basis = ideal.groebner(order)?;
        Ok(Arc::new(PresentedAlgebra { ideal, basis }))
    }

    /// Convenience constructor from strings.
    pub fn parse(characteristic: u64, vars: &[&str], gens: &[&str]) -> Result<Arc<PresentedAlgebra>> {
        let ring = Ring::with_char(characteristic, vars)?;
        let gens = gens
            .iter()
            .map(|g| parse_polynomial(&ring, g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(Ideal::new(&ring, gens)?)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.ideal.ring()
    }

    pub fn field(&self) -> Field {
        self.ring().field()
    }

    pub fn nvars(&self) -> usize {
        self.ring().nvars()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// The stored generators f_1, …, f_s of I.
    pub fn generators(&self) -> &[Polynomial] {
        self.ideal.generators()
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    pub fn order(&self) -> MonomialOrder {
        self.basis.order()
    }

    /// True when I is the unit ideal (A = 0).
    pub fn is_zero_ring(&self) -> bool {
        self.basis.is_unit()
    }

    pub fn parse_element(&self, s: &str) -> Result<Polynomial> {
        Ok(self.reduce(&parse_polynomial(self.ring(), s)?))
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.basis.reduce(f)
    }

    pub fn is_zero(&self, f: &Polynomial) -> bool {
        self.basis.contains(f)
    }

    pub fn eq(&self, a: &Polynomial, b: &Polynomial) -> bool {
        self.is_zero(&(a - b))
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&(a * b))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.reduce(&Polynomial::var(self.ring(), i))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.ring())
    }

    pub fn one(&self) -> Polynomial {
        self.reduce(&Polynomial::one(self.ring()))
    }

    /// The preimage ⟨gens⟩ + I in R.
    pub fn preimage(&self, gens: &[Polynomial]) -> Result<Ideal> {
        let mut all = gens.to_vec();
        all.extend(self.generators().iter().cloned());
        Ideal::new(self.ring(), all)
    }

    /// Same ring, ideal enlarged by `extra`.
    pub fn quotient_by(&self, extra: &[Polynomial]) -> Result<Arc<PresentedAlgebra>> {
        PresentedAlgebra::with_order(self.preimage(extra)?, self.order())
    }

    pub(crate) fn check_ring(&self, f: &Polynomial) -> Result<()> {
        if same_ring(f.ring(), self.ring()) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

/// An ideal of A, given by generators (normal forms). Membership uses a
/// Gröbner basis of the preimage; lifting onto the generators uses a tracked
/// basis computed on first use.
#[derive(Debug)]
pub struct QuotientIdeal {
    algebra: Arc<PresentedAlgebra>,
    generators: Vec<Polynomial>,
    basis: GroebnerBasis,
    tracked: OnceLock<GroebnerBasis>,
}

impl QuotientIdeal {
    pub fn new(algebra: &Arc<PresentedAlgebra>, gens: &[Polynomial]) -> Result<QuotientIdeal> {
        for g in gens {
            algebra.check_ring(g)?;
        }
        let generators: Vec<Polynomial> = gens
            .iter()
            .map(|g| algebra.reduce(g))
            .filter(|g| !g.is_zero())
            .collect();
        let basis = algebra.preimage(&generators)?.groebner(MonomialOrder::Grevlex)?;
        Ok(QuotientIdeal {
            algebra: algebra.clone(),
            generators,
            basis,
            tracked: OnceLock::new(),
        })
    }

    pub fn unit(algebra: &Arc<PresentedAlgebra>) -> Result<QuotientIdeal> {
        Self::new(algebra, &[Polynomial::one(algebra.ring())])
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        &self.algebra
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.basis.is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.basis.contains(f)
    }

    pub fn contains_ideal(&self, other: &QuotientIdeal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Coefficients c_j (normal forms in A) with f = Σ c_j g_j in A.
    pub fn lift(&self, f: &Polynomial) -> Result<Option<Vec<Polynomial>>> {
        let tracked = match self.tracked.get() {
            Some(t) => t,
            None => {
                let t = self.algebra.preimage(&self.generators)?.groebner_tracked(MonomialOrder::Grevlex)?;
                self.tracked.get_or_init(|| t)
            }
        };
        let Some(all) = tracked.lift(f)? else {
            return Ok(None);
        };
        let coeffs: Vec<Polynomial> = all[..self.generators.len()]
            .iter()
            .map(|c| self.algebra.reduce(c))
            .collect();
        let mut check = self.algebra.zero();
        for (c, g) in coeffs.iter().zip(&self.generators) {
            check = &check + &(c * g);
        }
        if !self.algebra.eq(&check, f) {
            return Err(Error::Verification("ideal lift does not recombine in A".into()));
        }
        Ok(Some(coeffs))
    }

    pub fn product(&self, other: &QuotientIdeal) -> Result<QuotientIdeal> {
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a * b);
            }
        }
        QuotientIdeal::new(&self.algebra, &gens)
    }

    pub fn sum(&self, other: &QuotientIdeal) -> Result<QuotientIdeal> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        QuotientIdeal::new(&self.algebra, &gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_arithmetic() {
        let a = PresentedAlgebra::parse(2, &["x", "y"], &["y^2 + x^3"]).unwrap();
        let x = a.var(0);
        // grevlex: x^3 leads, so it rewrites to y^2 (char 2)
        assert_eq!(a.mul(&x, &a.mul(&x, &x)).to_string(), "y^2");
        assert!(!a.is_zero_ring());
    }

    #[test]
    fn ideal_lift_recombines() {
        let a = PresentedAlgebra::parse(3, &["x"], &["x^2"]).unwrap();
        let j = QuotientIdeal::new(&a, &[a.parse_element("x").unwrap()]).unwrap();
        assert!(j.contains(&a.parse_element("2x").unwrap()));
        assert!(!j.contains(&a.one()));
        let c = j.lift(&a.parse_element("2x").unwrap()).unwrap().unwrap();
        assert_eq!(c[0].to_string(), "2");
        assert!(j.lift(&a.one()).unwrap().is_none());
    }

    #[test]
    fn square_of_maximal_ideal() {
        let a = PresentedAlgebra::parse(2, &["x", "y"], &[]).unwrap();
        let m = QuotientIdeal::new(&a, &[a.var(0), a.var(1)]).unwrap();
        let m2 = m.product(&m).unwrap();
        assert!(m2.contains(&a.parse_element("x*y").unwrap()));
        assert!(!m2.contains(&a.var(0)));
    }
}
