//! Truncated power series A[t]/⟨t^{m+1}⟩.

use crate::algebra::PresentedAlgebra;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// c_0 + c_1 t + … + c_m t^m with coefficients in A (normal forms).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Polynomial>,
}

impl TruncatedSeries {
    /// Coefficients beyond `m` are dropped; missing ones are zero.
    pub fn new(algebra: &PresentedAlgebra, coeffs: Vec<Polynomial>, m: usize) -> TruncatedSeries {
        let mut coeffs: Vec<Polynomial> = coeffs.into_iter().take(m + 1).map(|c| algebra.reduce(&c)).collect();
        coeffs.resize(m + 1, algebra.zero());
        TruncatedSeries { coeffs }
    }

    pub fn constant(algebra: &PresentedAlgebra, c: &Polynomial, m: usize) -> TruncatedSeries {
        Self::new(algebra, vec![c.clone()], m)
    }

    /// Truncation order m.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Polynomial {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, algebra: &PresentedAlgebra, other: &TruncatedSeries) -> TruncatedSeries {
        let m = self.order().min(other.order());
        let mut out = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut acc = algebra.zero();
            for i in 0..=k {
                let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            out.push(algebra.reduce(&acc));
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn scale(&self, algebra: &PresentedAlgebra, c: &Polynomial) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| algebra.mul(a, c)).collect(),
        }
    }
}

/// f(images) in A[t]/⟨t^{m+1}⟩. `f` lives in the ambient ring of `algebra`.
pub fn truncated_substitution(
    algebra: &PresentedAlgebra,
    f: &Polynomial,
    images: &[TruncatedSeries],
    m: usize,
) -> Result<TruncatedSeries> {
    algebra.check_ring(f)?;
    if images.len() != algebra.nvars() {
        return Err(Error::InvalidInput(format!(
            "expected {} images, got {}",
            algebra.nvars(),
            images.len()
        )));
    }
    if images.iter().any(|s| s.order() < m) {
        return Err(Error::InvalidInput("image series shorter than requested order".into()));
    }
    let images: Vec<TruncatedSeries> = images
        .iter()
        .map(|s| TruncatedSeries::new(algebra, s.coeffs.clone(), m))
        .collect();
    let mut powers: Vec<Vec<TruncatedSeries>> = images
        .iter()
        .map(|s| vec![TruncatedSeries::constant(algebra, &algebra.one(), m), s.clone()])
        .collect();
    let mut acc = TruncatedSeries::new(algebra, Vec::new(), m);
    for (mono, c) in f.terms() {
        let mut term = TruncatedSeries::constant(
            algebra,
            &Polynomial::constant(algebra.ring(), c.clone()),
            m,
        );
        for (i, &e) in mono.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap().mul(algebra, &images[i]);
                powers[i].push(next);
            }
            term = term.mul(algebra, &powers[i][e as usize]);
        }
        acc = acc.add(&term);
    }
    Ok(TruncatedSeries::new(algebra, acc.coeffs, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PresentedAlgebra;

    fn shift(a: &PresentedAlgebra, m: usize) -> TruncatedSeries {
        TruncatedSeries::new(a, vec![a.var(0), a.one()], m)
    }

    #[test]
    fn binomial_char_zero_and_two() {
        let a0 = PresentedAlgebra::parse(0, &["x"], &[]).unwrap();
        let f = a0.parse_element("x^2").unwrap();
        let s = truncated_substitution(&a0, &f, &[shift(&a0, 2)], 2).unwrap();
        let got: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
        assert_eq!(got, ["x^2", "2*x", "1"]);

        let a2 = PresentedAlgebra::parse(2, &["x"], &[]).unwrap();
        let f = a2.parse_element("x^2").unwrap();
        let s = truncated_substitution(&a2, &f, &[shift(&a2, 2)], 2).unwrap();
        let got: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
        assert_eq!(got, ["x^2", "0", "1"]);
    }

    #[test]
    fn linear_gives_image() {
        let a = PresentedAlgebra::parse(5, &["x", "y"], &[]).unwrap();
        let img = TruncatedSeries::new(&a, vec![a.var(0), a.var(1), a.one(), a.var(0)], 3);
        let other = TruncatedSeries::new(&a, vec![a.var(1)], 3);
        let s = truncated_substitution(&a, &a.var(0), &[img.clone(), other], 3).unwrap();
        assert_eq!(s, img);
    }

    #[test]
    fn truncation_is_enforced() {
        let a = PresentedAlgebra::parse(0, &["x"], &[]).unwrap();
        let f = a.parse_element("x^5").unwrap();
        let s = truncated_substitution(&a, &f, &[shift(&a, 3)], 3).unwrap();
        assert_eq!(s.order(), 3);
        assert_eq!(s.coeff(3).to_string(), "10*x^2");
    }
}
