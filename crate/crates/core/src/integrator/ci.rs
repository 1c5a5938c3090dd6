//! Integration when I is generated by exactly codim-many elements and δ
//! takes values in the Jacobian ideal.

use std::sync::Arc;

use super::{cofactor_solve, Check, Driver, Integration, Method};
use crate::algebra::{PresentedAlgebra, QuotientIdeal};
use crate::error::{Error, Result};
use crate::geometry::fitting_ideal;
use crate::groebner::krull_dimension;
use crate::hs::derivation_check;
use crate::matrix::Minor;
use crate::poly::Polynomial;

/// Integrates δ to length `m` with every entry in J_r, r the number of
/// stored generators of I, which must equal the codimension.
pub fn integrate_ci(alg: &Arc<PresentedAlgebra>, delta: &[Polynomial], m: usize) -> Result<Integration> {
    if m == 0 {
        return Err(Error::InvalidInput("order must be at least 1".into()));
    }
    let n = alg.nvars();
    let s = alg.generators().len();
    let dim = krull_dimension(alg.ideal())?
        .ok_or_else(|| Error::Hypothesis("I is the unit ideal".into()))?;
    if n - dim != s {
        return Err(Error::Hypothesis(format!(
            "presentation has {s} generators but codimension {}",
            n - dim
        )));
    }
    if delta.len() != n {
        return Err(Error::InvalidInput(format!("derivation has {} entries, expected {n}", delta.len())));
    }
    if !derivation_check(alg, delta)? {
        return Err(Error::Hypothesis("delta is not a derivation of A".into()));
    }
    let fit = fitting_ideal(alg, s)?;
    let minors: Vec<Minor> = fit.minors.clone();
    let jr = Arc::new(fit.ideal(alg)?);
    for (i, d) in delta.iter().enumerate() {
        if !jr.contains(d) {
            return Err(Error::Hypothesis(format!(
                "delta({}) = {} is not in J_{s}",
                alg.ring().var_names()[i],
                alg.reduce(d)
            )));
        }
    }
    let mut products: Option<(QuotientIdeal, Vec<(usize, usize)>)> = None;
    let driver = Driver {
        alg,
        method: Method::CompleteIntersection,
        rows: alg.generators().to_vec(),
        ma: jr.clone(),
        log_ideal: None,
    };
    let first = delta.iter().map(|d| alg.reduce(d)).collect();
    driver.run(first, m, |ctx, sys, transcript| {
        let nu = ctx.order();
        let k = minors.len();
        // h[α][λ] with F_α = Σ_λ Δ_λ h_{αλ}, h ∈ J_r
        let mut h: Vec<Vec<Polynomial>> = Vec::with_capacity(s);
        let mut fallbacks = 0;
        for (a, f) in sys.obstruction.iter().enumerate() {
            let direct = jr
                .lift(f)?
                .filter(|c| c.iter().all(|x| jr.contains(x)));
            let row = match direct {
                Some(c) => c,
                None => {
                    fallbacks += 1;
                    let (prod, pairs) = match &products {
                        Some(p) => p,
                        None => products.insert(product_ideal(alg, &minors)?),
                    };
                    let c = prod.lift(f)?.ok_or_else(|| {
                        Error::Verification(format!("F_{} is not in J_r^2", a + 1))
                    })?;
                    let mut row = vec![alg.zero(); k];
                    for (coef, &(l, mu)) in c.iter().zip(pairs) {
                        row[l] = &row[l] + &alg.mul(coef, &minors[mu].value);
                    }
                    let row: Vec<Polynomial> = row.iter().map(|x| alg.reduce(x)).collect();
                    if let Some(x) = row.iter().find(|x| !jr.contains(x)) {
                        return Err(Error::Verification(format!(
                            "coefficient {x} for F_{} is not in J_r",
                            a + 1
                        )));
                    }
                    row
                }
            };
            h.push(row);
        }
        transcript.push(Check {
            order: nu,
            what: format!("F = sum Delta_l h_l with h in J_r ({fallbacks} via products)"),
            passed: true,
        });
        let mut total = vec![alg.zero(); n];
        for (l, minor) in minors.iter().enumerate() {
            let b: Vec<Polynomial> = h.iter().map(|row| row[l].clone()).collect();
            if b.iter().all(|x| x.is_zero()) {
                continue;
            }
            let xi = cofactor_solve(alg, &sys.matrix, &b, minor)?;
            for (t, x) in total.iter_mut().zip(xi) {
                *t = &*t + &x;
            }
        }
        Ok(total.iter().map(|t| alg.reduce(&-t)).collect())
    })
}

/// ⟨Δ_λ Δ_μ : λ ≤ μ⟩, with the pair behind each generator. Zero products are
/// kept so that indices line up.
fn product_ideal(alg: &Arc<PresentedAlgebra>, minors: &[Minor]) -> Result<(QuotientIdeal, Vec<(usize, usize)>)> {
    let mut gens = Vec::new();
    let mut pairs = Vec::new();
    for l in 0..minors.len() {
        for mu in l..minors.len() {
            let p = alg.mul(&minors[l].value, &minors[mu].value);
            if !p.is_zero() {
                gens.push(p);
                pairs.push((l, mu));
            }
        }
    }
    Ok((QuotientIdeal::new(alg, &gens)?, pairs))
}
