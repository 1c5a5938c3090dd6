//! Integration of Δ·δ on equidimensional algebras, Δ a non-zerodivisor in
//! the Jacobian ideal of the correct codimension.

use std::sync::Arc;

use super::{cofactor_solve, Check, Driver, Integration, Method};
use crate::algebra::{PresentedAlgebra, QuotientIdeal};
use crate::error::{Error, Result};
use crate::geometry::{fitting_ideal_of, generic_generators, PrimeWitness};
use crate::groebner::{ideal_quotient, ideals_equal, krull_dimension, Ideal};
use crate::hs::{derivation_check, HsDerivation};
use crate::poly::Polynomial;

#[derive(Debug, Clone, Default)]
pub struct EquidimOptions {
    /// Minimal primes of I, used to check J^het and to build a generating
    /// set with the generic rank property.
    pub primes: Vec<PrimeWitness>,
    /// A generating set of I to use instead (must generate I).
    pub generators: Option<Vec<Polynomial>>,
    pub codim: Option<usize>,
    /// Check the result is logarithmic along this ideal at every order.
    pub log_ideal: Option<Vec<Polynomial>>,
}

/// Integrates Δ·δ to length `m` with every entry in ⟨Δ⟩.
pub fn integrate_equidim(
    alg: &Arc<PresentedAlgebra>,
    delta: &[Polynomial],
    big_delta: &Polynomial,
    m: usize,
    opts: &EquidimOptions,
) -> Result<Integration> {
    Ok(equidim_core(alg, delta, big_delta, m, opts, Method::EquidimensionalDelta)?.0)
}

fn setup(order: usize, what: impl Into<String>) -> Check {
    Check {
        order,
        what: what.into(),
        passed: true,
    }
}

/// Also returns q_1 = δ, q_2, … with ξ_μ = Δ·q_μ.
pub(crate) fn equidim_core(
    alg: &Arc<PresentedAlgebra>,
    delta: &[Polynomial],
    big_delta: &Polynomial,
    m: usize,
    opts: &EquidimOptions,
    method: Method,
) -> Result<(Integration, Vec<Vec<Polynomial>>)> {
    if m == 0 {
        return Err(Error::InvalidInput("order must be at least 1".into()));
    }
    let n = alg.nvars();
    if delta.len() != n {
        return Err(Error::InvalidInput(format!("derivation has {} entries, expected {n}", delta.len())));
    }
    alg.check_ring(big_delta)?;
    let mut pre = Vec::new();
    let big_delta = alg.reduce(big_delta);
    if big_delta.is_zero() {
        return Err(Error::ZeroDivisor("0".into()));
    }
    let colon = ideal_quotient(alg.ideal(), &big_delta)?;
    if !ideals_equal(&colon, alg.ideal())? {
        return Err(Error::ZeroDivisor(big_delta.to_string()));
    }
    pre.push(setup(0, "Delta is a non-zerodivisor: (I : Delta) = I"));

    let dim = krull_dimension(alg.ideal())?.ok_or_else(|| Error::Hypothesis("I is the unit ideal".into()))?;
    let mut r = n - dim;
    if let Some(first) = opts.primes.first() {
        if opts.primes.iter().any(|p| p.height() != first.height()) {
            return Err(Error::Hypothesis("primes of different heights: not equidimensional".into()));
        }
        if first.height() != r {
            return Err(Error::Hypothesis(format!(
                "prime height {} differs from the codimension {r} of I",
                first.height()
            )));
        }
    }
    if let Some(c) = opts.codim {
        if c != r {
            return Err(Error::Hypothesis(format!("asserted codimension {c} but I has codimension {r}")));
        }
        r = c;
    }
    pre.push(setup(0, format!("codimension {r}")));

    let gens: Vec<Polynomial> = if let Some(g) = &opts.generators {
        let given = Ideal::new(alg.ring(), g.clone())?;
        if !ideals_equal(&given, alg.ideal())? {
            return Err(Error::InvalidInput("supplied generators do not generate I".into()));
        }
        pre.push(setup(0, "supplied generators generate I"));
        g.clone()
    } else if !opts.primes.is_empty() {
        let gg = generic_generators(alg, &opts.primes)?;
        pre.push(setup(0, format!("J^het holds at all {} primes", opts.primes.len())));
        pre.push(setup(0, format!("generic generators: {} elements, ranks {:?}", gg.s.len(), gg.ranks)));
        gg.s
    } else {
        alg.generators().to_vec()
    };
    let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();

    let fit = fitting_ideal_of(alg, &gens, r)?;
    let jr = fit.ideal(alg)?;
    let gamma = jr
        .lift(&big_delta)?
        .ok_or_else(|| Error::Hypothesis(format!("Delta = {big_delta} is not in J_{r}")))?;
    pre.push(setup(0, format!("Delta in J_{r}")));

    if !derivation_check(alg, delta)? {
        return Err(Error::Hypothesis("delta is not a derivation of A".into()));
    }
    let log_ideal = match &opts.log_ideal {
        Some(g) => {
            let j = QuotientIdeal::new(alg, g)?;
            let d = HsDerivation::new(alg, vec![delta.to_vec()])?;
            if !d.is_logarithmic(&j)? {
                return Err(Error::Hypothesis("delta is not logarithmic along the given ideal".into()));
            }
            Some(j)
        }
        None => None,
    };

    let ma = Arc::new(QuotientIdeal::new(alg, std::slice::from_ref(&big_delta))?);
    let sq = QuotientIdeal::new(alg, &[alg.mul(&big_delta, &big_delta)])?;
    let mut qs: Vec<Vec<Polynomial>> = vec![delta.iter().map(|d| alg.reduce(d)).collect()];
    let first: Vec<Polynomial> = delta.iter().map(|d| alg.mul(&big_delta, d)).collect();
    let driver = Driver {
        alg,
        method,
        rows: gens.clone(),
        ma,
        log_ideal: log_ideal.as_ref(),
    };
    let mut res = driver.run(first, m, |ctx, sys, _| {
        let mut q = vec![alg.zero(); n];
        if !sys.matrix.is_empty() {
            // F_α = Δ² c_α
            let c: Vec<Polynomial> = sys
                .obstruction
                .iter()
                .enumerate()
                .map(|(a, f)| {
                    sq.lift(f)?
                        .map(|v| v[0].clone())
                        .ok_or_else(|| Error::Verification(format!("F_{} is not in <Delta^2>", a + 1)))
                })
                .collect::<Result<_>>()?;
            for (g, minor) in gamma.iter().zip(&fit.minors) {
                if g.is_zero() {
                    continue;
                }
                let b: Vec<Polynomial> = c.iter().map(|x| alg.mul(g, x)).collect();
                if b.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let xi = cofactor_solve(alg, &sys.matrix, &b, minor)?;
                for (t, x) in q.iter_mut().zip(xi) {
                    *t = &*t + &x;
                }
            }
        }
        let q: Vec<Polynomial> = q.iter().map(|t| alg.reduce(&-t)).collect();
        let xi = q.iter().map(|t| alg.mul(&big_delta, t)).collect();
        if qs.len() < ctx.order() {
            qs.push(q);
        } else {
            qs[ctx.order() - 1] = q;
        }
        Ok(xi)
    })?;
    qs.truncate(res.derivation.length());
    pre.append(&mut res.transcript);
    res.transcript = pre;
    Ok((res, qs))
}
