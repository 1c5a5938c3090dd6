//! Jacobian matrices, Fitting ideals of the module of differentials, prime
//! witnesses, and the construction of generating sets with the generic rank
//! property.

use std::sync::Arc;

use crate::algebra::{PresentedAlgebra, QuotientIdeal};
use crate::error::{Error, Result};
use crate::groebner::{dimension_from_basis, intersect_all, step_budget, GroebnerBasis, Ideal};
use crate::matrix::{all_minors, subsets, Matrix, Minor};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// Matrix of partials ∂_j g_i, one row per generator.
pub fn jacobian(gens: &[Polynomial]) -> Result<Matrix> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidInput("jacobian of an empty list".into()))?;
    let n = first.ring().nvars();
    gens.iter()
        .map(|g| (0..n).map(|j| g.partial_derivative(j)).collect::<Result<Vec<_>>>())
        .collect()
}

/// J_ℓ(A): the ℓ-minors of the Jacobian of A's stored generators.
#[derive(Debug, Clone)]
pub struct FittingIdeal {
    pub level: usize,
    /// Nonzero minors, reduced mod I; `value` doubles as the lift to R.
    pub minors: Vec<Minor>,
}

impl FittingIdeal {
    pub fn generators(&self) -> Vec<Polynomial> {
        self.minors.iter().map(|m| m.value.clone()).collect()
    }

    pub fn ideal(&self, alg: &Arc<PresentedAlgebra>) -> Result<QuotientIdeal> {
        QuotientIdeal::new(alg, &self.generators())
    }
}

/// Fitting ideal from an explicit generating set `gens` of I.
pub fn fitting_ideal_of(alg: &PresentedAlgebra, gens: &[Polynomial], ell: usize) -> Result<FittingIdeal> {
    let n = alg.nvars();
    if ell > n {
        return Err(Error::InvalidInput(format!("level {ell} exceeds {n} variables")));
    }
    if ell == 0 {
        return Ok(FittingIdeal {
            level: 0,
            minors: vec![Minor {
                rows: vec![],
                cols: vec![],
                value: alg.one(),
            }],
        });
    }
    if gens.is_empty() {
        return Ok(FittingIdeal {
            level: ell,
            minors: vec![],
        });
    }
    let jac = reduce_matrix(alg, &jacobian(gens)?);
    let minors = all_minors(alg, &jac, ell)
        .into_iter()
        .filter(|m| !m.value.is_zero())
        .collect();
    Ok(FittingIdeal { level: ell, minors })
}

pub fn fitting_ideal(alg: &PresentedAlgebra, ell: usize) -> Result<FittingIdeal> {
    fitting_ideal_of(alg, alg.generators(), ell)
}

pub fn reduce_matrix(alg: &PresentedAlgebra, m: &Matrix) -> Matrix {
    m.iter().map(|row| row.iter().map(|e| alg.reduce(e)).collect()).collect()
}

/// A prime P ⊇ I, supplied by the user. Primality is trusted.
#[derive(Debug, Clone)]
pub struct PrimeWitness {
    ideal: Ideal,
    basis: GroebnerBasis,
    height: usize,
}

impl PrimeWitness {
    /// Verifies I ⊆ P and P proper; recomputes the height and checks it
    /// against `claimed_height` when given.
    pub fn new(alg: &PresentedAlgebra, gens: Vec<Polynomial>, claimed_height: Option<usize>) -> Result<PrimeWitness> {
        let ideal = Ideal::new(alg.ring(), gens)?;
        let basis = ideal.groebner(MonomialOrder::Grevlex)?;
        let dim = dimension_from_basis(&basis)
            .ok_or_else(|| Error::InvalidInput("prime witness is the unit ideal".into()))?;
        let height = alg.nvars() - dim;
        if let Some(h) = claimed_height {
            if h != height {
                return Err(Error::InvalidInput(format!(
                    "claimed height {h} but computed {height}"
                )));
            }
        }
        if let Some(g) = alg.generators().iter().find(|g| !basis.contains(g)) {
            return Err(Error::InvalidInput(format!("generator {g} of I is not in the prime witness")));
        }
        Ok(PrimeWitness { ideal, basis, height })
    }

    pub fn parse(alg: &PresentedAlgebra, gens: &[&str], claimed_height: Option<usize>) -> Result<PrimeWitness> {
        let gens = gens
            .iter()
            .map(|g| crate::parse::parse_polynomial(alg.ring(), g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alg, gens, claimed_height)
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.ideal.generators()
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.basis.contains(f)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.ideal.ring()
    }

    /// Primality of witnesses is an input assumption, never checked.
    pub fn primality_verified(&self) -> bool {
        false
    }
}

/// het(P) = n − dim R/P.
pub fn height(p: &PrimeWitness) -> usize {
    p.height
}

/// Largest ℓ such that some ℓ-minor of `m` lies outside P.
pub fn rank_at_prime(m: &Matrix, p: &PrimeWitness) -> Result<usize> {
    if m.iter().flatten().any(|e| !same_ring(e.ring(), p.ring())) {
        return Err(Error::RingMismatch);
    }
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    // reduce entries mod P once; minors of the reduced matrix have the same
    // classes mod P
    let reduced: Matrix = m.iter().map(|row| row.iter().map(|e| p.basis.reduce(e)).collect()).collect();
    let quotient = PresentedAlgebra::new(p.ideal.clone())?;
    for ell in (1..=nrows.min(ncols)).rev() {
        for rows in subsets(nrows, ell) {
            for cols in subsets(ncols, ell) {
                let v = crate::matrix::minor_det(&quotient, &reduced, &rows, &cols);
                if !v.is_zero() {
                    return Ok(ell);
                }
            }
        }
    }
    Ok(0)
}

/// For each prime: whether some generator of J_{het P}(A) lies outside P.
pub fn check_jhet(alg: &PresentedAlgebra, primes: &[PrimeWitness]) -> Result<Vec<bool>> {
    check_jhet_with(alg, alg.generators(), primes)
}

pub fn check_jhet_with(alg: &PresentedAlgebra, gens: &[Polynomial], primes: &[PrimeWitness]) -> Result<Vec<bool>> {
    let mut out = Vec::with_capacity(primes.len());
    for p in primes {
        let fit = fitting_ideal_of(alg, gens, p.height())?;
        out.push(fit.minors.iter().any(|m| !p.contains(&m.value)));
    }
    Ok(out)
}

/// Output of [`generic_generators`].
#[derive(Debug, Clone)]
pub struct GenericGenerators {
    /// F followed by the original generators; generates I.
    pub s: Vec<Polynomial>,
    pub f: Vec<Polynomial>,
    /// max height among the primes; equals ♯F.
    pub r: usize,
    /// rank of J(F) at each prime, equal to its height.
    pub ranks: Vec<usize>,
}

struct Search<'a> {
    alg: &'a PresentedAlgebra,
    primes: &'a [PrimeWitness],
    budget: u64,
    spent: u64,
}

impl<'a> Search<'a> {
    fn tick(&mut self) -> Result<()> {
        self.spent += 1;
        if self.spent > self.budget {
            return Err(Error::BudgetExceeded {
                what: "generic generator search",
                limit: self.budget,
            });
        }
        Ok(())
    }

    /// rank_P(J(F ∪ {g})) = ♯F + 1
    fn raises(&mut self, f: &[Polynomial], g: &Polynomial, p: usize) -> Result<bool> {
        self.tick()?;
        let mut rows = f.to_vec();
        rows.push(g.clone());
        Ok(rank_at_prime(&jacobian(&rows)?, &self.primes[p])? == f.len() + 1)
    }

    fn raises_all(&mut self, f: &[Polynomial], g: &Polynomial, q: &[usize]) -> Result<bool> {
        for &p in q {
            if !self.raises(f, g, p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Some g ∈ I raising the rank of J(F) at every prime of `q`.
    fn extend(&mut self, f: &[Polynomial], q: &[usize]) -> Result<Polynomial> {
        for g in self.alg.generators() {
            if self.raises_all(f, g, q)? {
                return Ok(g.clone());
            }
        }
        if q.len() <= 1 {
            return Err(Error::Hypothesis(
                "no generator raises the Jacobian rank at a prime; the J^het condition or I ⊆ P fails".into(),
            ));
        }
        let (p1, pm) = (q[0], q[q.len() - 1]);
        let h_m = self.extend(f, &q[1..])?;
        if self.raises(f, &h_m, p1)? {
            return Ok(h_m);
        }
        let h_1 = self.extend(f, &q[..q.len() - 1])?;
        if self.raises(f, &h_1, pm)? {
            return Ok(h_1);
        }
        // h_m fails only at P_1, h_1 works there: g = h_m + λ h_1 with λ in
        // every other prime of q but not in P_1
        let others: Vec<Ideal> = q[1..].iter().map(|&i| self.primes[i].ideal.clone()).collect();
        let inter = intersect_all(&others)?;
        for lambda in self.lambda_candidates(&inter, p1)? {
            let g = &h_m + &(&lambda * &h_1);
            if self.raises_all(f, &g, q)? {
                return Ok(g);
            }
        }
        Err(Error::BudgetExceeded {
            what: "lambda search",
            limit: self.budget,
        })
    }

    /// Elements of `inter` outside P_1: the generators first, then small
    /// linear combinations of them.
    fn lambda_candidates(&mut self, inter: &Ideal, p1: usize) -> Result<Vec<Polynomial>> {
        let prime = &self.primes[p1];
        let gens = inter.generators();
        let mut out: Vec<Polynomial> = gens.iter().filter(|g| !prime.contains(g)).cloned().collect();
        if !out.is_empty() {
            return Ok(out);
        }
        let field = self.alg.field();
        let cmax = match field.characteristic() {
            0 => 4,
            p => (p - 1).min(4),
        } as i64;
        let k = gens.len().min(4);
        let mut coeffs = vec![0i64; k];
        loop {
            let mut carry = true;
            for c in coeffs.iter_mut() {
                if carry {
                    *c += 1;
                    carry = *c > cmax;
                    if carry {
                        *c = 0;
                    }
                }
            }
            if carry {
                break;
            }
            self.tick()?;
            let mut cand = Polynomial::zero(self.alg.ring());
            for (c, g) in coeffs.iter().zip(gens) {
                cand = cand.add_scaled(g, &field.from_i64(*c));
            }
            if !prime.contains(&cand) {
                out.push(cand);
                break;
            }
        }
        Ok(out)
    }
}

/// A generating set S = F ∪ {original generators} of I with ♯F = r (the
/// largest height) and rank J(F) = het(P) at every supplied prime.
pub fn generic_generators(alg: &PresentedAlgebra, primes: &[PrimeWitness]) -> Result<GenericGenerators> {
    if primes.is_empty() {
        return Err(Error::InvalidInput("generic generators need at least one prime".into()));
    }
    for (i, ok) in check_jhet(alg, primes)?.into_iter().enumerate() {
        if !ok {
            return Err(Error::JhetFails { prime: i });
        }
    }
    let r = primes.iter().map(|p| p.height()).max().unwrap_or(0);
    let mut search = Search {
        alg,
        primes,
        budget: step_budget(),
        spent: 0,
    };
    let mut f: Vec<Polynomial> = Vec::new();
    while f.len() < r {
        let q: Vec<usize> = (0..primes.len()).filter(|&i| primes[i].height() > f.len()).collect();
        let g = search.extend(&f, &q)?;
        f.push(g);
    }
    // verification
    let mut ranks = Vec::with_capacity(primes.len());
    for p in primes {
        let rank = if f.is_empty() { 0 } else { rank_at_prime(&jacobian(&f)?, p)? };
        if rank != p.height() {
            return Err(Error::Verification(format!(
                "rank {rank} of J(F) differs from height {}",
                p.height()
            )));
        }
        ranks.push(rank);
    }
    if let Some(g) = f.iter().find(|g| !alg.is_zero(g)) {
        return Err(Error::Verification(format!("{g} is not in I")));
    }
    let mut s = f.clone();
    s.extend(alg.generators().iter().cloned());
    Ok(GenericGenerators { s, f, r, ranks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ideals_equal;

    #[test]
    fn jacobian_examples() {
        let a = PresentedAlgebra::parse(2, &["x", "y"], &["y^2 - x^3"]).unwrap();
        let j = jacobian(a.generators()).unwrap();
        assert_eq!(j[0][0].to_string(), "x^2");
        assert!(j[0][1].is_zero());
        let b = PresentedAlgebra::parse(0, &["x", "y", "z"], &["x*z", "y*z"]).unwrap();
        let j: Vec<Vec<String>> = jacobian(b.generators())
            .unwrap()
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect();
        assert_eq!(j, [["z", "0", "x"], ["0", "z", "y"]]);
    }

    #[test]
    fn fitting_examples() {
        let a = PresentedAlgebra::parse(0, &["x", "y"], &["x"]).unwrap();
        assert!(fitting_ideal(&a, 1).unwrap().ideal(&a).unwrap().is_unit());
        let cusp = PresentedAlgebra::parse(2, &["x", "y"], &["y^2 + x^3"]).unwrap();
        let j1 = fitting_ideal(&cusp, 1).unwrap();
        assert_eq!(j1.generators(), vec![cusp.parse_element("x^2").unwrap()]);
        assert!(fitting_ideal(&cusp, 0).unwrap().ideal(&cusp).unwrap().is_unit());
        assert!(fitting_ideal(&cusp, 3).is_err());
    }

    #[test]
    fn ranks_and_jhet() {
        let cusp = PresentedAlgebra::parse(2, &["x", "y"], &["y^2 + x^3"]).unwrap();
        let p = PrimeWitness::parse(&cusp, &["y^2 + x^3"], Some(1)).unwrap();
        let j = jacobian(cusp.generators()).unwrap();
        assert_eq!(rank_at_prime(&j, &p).unwrap(), 1);
        assert_eq!(check_jhet(&cusp, &[p]).unwrap(), [true]);

        let fat = PresentedAlgebra::parse(2, &["x"], &["x^2"]).unwrap();
        let p = PrimeWitness::parse(&fat, &["x"], None).unwrap();
        assert_eq!(p.height(), 1);
        assert_eq!(check_jhet(&fat, &[p]).unwrap(), [false]);

        let zero = vec![vec![Polynomial::zero(cusp.ring()); 2]];
        let p = PrimeWitness::parse(&cusp, &["x", "y"], None).unwrap();
        assert_eq!(rank_at_prime(&zero, &p).unwrap(), 0);
    }

    #[test]
    fn witness_validation() {
        let a = PresentedAlgebra::parse(0, &["x", "y"], &["x*y"]).unwrap();
        assert!(PrimeWitness::parse(&a, &["x"], Some(2)).is_err());
        assert!(PrimeWitness::parse(&a, &["x - 1"], None).is_err());
        assert!(PrimeWitness::parse(&a, &["1"], None).is_err());
        assert_eq!(PrimeWitness::parse(&a, &["y"], None).unwrap().height(), 1);
    }

    #[test]
    fn generic_generators_two_components() {
        let a = PresentedAlgebra::parse(0, &["x", "y", "z"], &["x*z", "y*z"]).unwrap();
        let primes = vec![
            PrimeWitness::parse(&a, &["x", "y"], Some(2)).unwrap(),
            PrimeWitness::parse(&a, &["z"], Some(1)).unwrap(),
        ];
        let g = generic_generators(&a, &primes).unwrap();
        assert_eq!(g.f.len(), 2);
        assert_eq!(g.ranks, [2, 1]);
        let s = Ideal::new(a.ring(), g.s.clone()).unwrap();
        assert!(ideals_equal(&s, a.ideal()).unwrap());
    }

    #[test]
    fn generic_generators_needs_combination() {
        // each generator is singular at one of the two points
        let a = PresentedAlgebra::parse(0, &["x"], &["x^2*(x - 1)", "-x*(x - 1)^2"]).unwrap();
        let primes = vec![
            PrimeWitness::parse(&a, &["x"], None).unwrap(),
            PrimeWitness::parse(&a, &["x - 1"], None).unwrap(),
        ];
        let g = generic_generators(&a, &primes).unwrap();
        assert_eq!(g.f.len(), 1);
        assert_eq!(g.ranks, [1, 1]);
        assert!(!a.generators().contains(&g.f[0]));
    }

    #[test]
    fn generic_generators_on_prime() {
        let a = PresentedAlgebra::parse(3, &["x", "y"], &["x", "y"]).unwrap();
        let primes = vec![PrimeWitness::parse(&a, &["x", "y"], Some(2)).unwrap()];
        let g = generic_generators(&a, &primes).unwrap();
        assert_eq!(g.f, a.generators().to_vec());
    }
}
