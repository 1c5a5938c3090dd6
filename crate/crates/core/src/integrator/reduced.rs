//! Integration of Δ·δ on reduced algebras that need not be equidimensional:
//! drop the minimal primes containing Δ and work on what is left.

use std::sync::Arc;

use super::equidim::{equidim_core, EquidimOptions};
use super::{Check, Integration, Method, Outcome};
use crate::algebra::{PresentedAlgebra, QuotientIdeal};
use crate::error::{Error, Result};
use crate::geometry::{fitting_ideal, PrimeWitness};
use crate::groebner::{ideals_equal, intersect_all, Ideal};
use crate::hs::{derivation_check, HsDerivation};
use crate::poly::Polynomial;

/// `decomposition` must list primes with I = ∩P (checked); radicality of I
/// and primality of each witness are trusted.
pub fn integrate_reduced(
    alg: &Arc<PresentedAlgebra>,
    delta: &[Polynomial],
    big_delta: &Polynomial,
    decomposition: &[PrimeWitness],
    m: usize,
) -> Result<Integration> {
    if m == 0 {
        return Err(Error::InvalidInput("order must be at least 1".into()));
    }
    let n = alg.nvars();
    if delta.len() != n {
        return Err(Error::InvalidInput(format!("derivation has {} entries, expected {n}", delta.len())));
    }
    if decomposition.is_empty() {
        return Err(Error::InvalidInput("empty prime decomposition".into()));
    }
    alg.check_ring(big_delta)?;
    let ideals: Vec<Ideal> = decomposition.iter().map(|p| p.ideal().clone()).collect();
    if !ideals_equal(&intersect_all(&ideals)?, alg.ideal())? {
        return Err(Error::InvalidInput("the primes do not intersect to I".into()));
    }
    let mut pre = vec![Check {
        order: 0,
        what: format!("I is the intersection of the {} primes", decomposition.len()),
        passed: true,
    }];
    if !derivation_check(alg, delta)? {
        return Err(Error::Hypothesis("delta is not a derivation of A".into()));
    }
    let big_delta = alg.reduce(big_delta);
    let scaled: Vec<Polynomial> = delta.iter().map(|d| alg.mul(&big_delta, d)).collect();
    if big_delta.is_zero() {
        pre.push(Check {
            order: 0,
            what: "Delta in I: Delta*delta is zero and integrates to the identity".into(),
            passed: true,
        });
        return Ok(Integration {
            method: Method::ReducedLog,
            outcome: Outcome::Extended,
            requested_order: m,
            derivation: HsDerivation::identity(alg, m),
            constraint: vec![],
            transcript: pre,
        });
    }

    let kept: Vec<&PrimeWitness> = decomposition.iter().filter(|p| !p.contains(&big_delta)).collect();
    let r = kept[0].height();
    if kept.iter().any(|p| p.height() != r) {
        return Err(Error::Hypothesis(
            "the primes avoiding Delta have different heights".into(),
        ));
    }
    pre.push(Check {
        order: 0,
        what: format!("{} of {} primes avoid Delta, all of height {r}", kept.len(), decomposition.len()),
        passed: true,
    });
    if !fitting_ideal(alg, r)?.ideal(alg)?.contains(&big_delta) {
        return Err(Error::Hypothesis(format!("Delta = {big_delta} is not in J_{r}(A)")));
    }
    pre.push(Check {
        order: 0,
        what: format!("Delta in J_{r}(A)"),
        passed: true,
    });

    // B = R/I₁, presented by the generators of I followed by those of I₁;
    // B = A when no prime is dropped
    let b = if kept.len() == decomposition.len() {
        alg.clone()
    } else {
        let kept_ideals: Vec<Ideal> = kept.iter().map(|p| p.ideal().clone()).collect();
        let i1 = intersect_all(&kept_ideals)?;
        let mut b_gens = alg.generators().to_vec();
        b_gens.extend(i1.generators().iter().cloned());
        PresentedAlgebra::with_order(Ideal::new(alg.ring(), b_gens)?, alg.order())?
    };
    if !derivation_check(&b, delta)? {
        return Err(Error::Hypothesis("delta does not preserve the kept components".into()));
    }
    let primes_b = kept
        .iter()
        .map(|p| PrimeWitness::new(&b, p.generators().to_vec(), Some(r)))
        .collect::<Result<Vec<_>>>()?;
    let opts = EquidimOptions {
        primes: primes_b,
        codim: Some(r),
        ..Default::default()
    };
    let (on_b, qs) = equidim_core(&b, delta, &big_delta, m, &opts, Method::ReducedLog)?;
    for c in on_b.transcript {
        pre.push(Check {
            what: format!("on B: {}", c.what),
            ..c
        });
    }

    // ξ_μ = Δ q_μ is well defined mod I since Δ·I₁ ⊆ I
    let table: Vec<Vec<Polynomial>> = qs
        .iter()
        .map(|q| q.iter().map(|x| alg.mul(&big_delta, x)).collect())
        .collect();
    let full = HsDerivation::new(alg, table)?;
    let ma = QuotientIdeal::new(alg, std::slice::from_ref(&big_delta))?;
    let mut best = HsDerivation::new(alg, vec![scaled])?;
    let mut outcome = on_b.outcome.clone();
    for nu in 1..=full.length() {
        let d = full.truncate(nu)?;
        let valid = d.validate()?.is_valid();
        let in_ma = d.row(nu).iter().all(|x| ma.contains(x));
        pre.push(Check {
            order: nu,
            what: "valid on A (logarithmic along I)".into(),
            passed: valid,
        });
        pre.push(Check {
            order: nu,
            what: "entries in <Delta>".into(),
            passed: in_ma,
        });
        if !(valid && in_ma) {
            outcome = Outcome::Obstructed {
                order: nu,
                reason: "induced table fails on A".into(),
            };
            break;
        }
        best = d;
    }
    if outcome == Outcome::Extended {
        for (i, p) in decomposition.iter().enumerate() {
            if !p.contains(&big_delta) {
                continue;
            }
            let q = QuotientIdeal::new(alg, p.generators())?;
            pre.push(Check {
                order: best.length(),
                what: format!("logarithmic along prime {} (contains Delta)", i + 1),
                passed: best.is_logarithmic(&q)?,
            });
        }
    }
    Ok(Integration {
        method: Method::ReducedLog,
        outcome,
        requested_order: m,
        derivation: best,
        constraint: vec![big_delta],
        transcript: pre,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane_and_line() -> Arc<PresentedAlgebra> {
        PresentedAlgebra::parse(5, &["x", "y", "z"], &["x*z", "y*z"]).unwrap()
    }

    fn decomposition(a: &PresentedAlgebra) -> Vec<PrimeWitness> {
        vec![
            PrimeWitness::parse(a, &["x", "y"], Some(2)).unwrap(),
            PrimeWitness::parse(a, &["z"], Some(1)).unwrap(),
        ]
    }

    #[test]
    fn euler_field_times_z_squared() {
        let a = plane_and_line();
        let delta = vec![a.var(0), a.var(1), a.var(2)];
        let d = a.parse_element("z^2").unwrap();
        let res = integrate_reduced(&a, &delta, &d, &decomposition(&a), 6).unwrap();
        assert!(res.is_complete(), "{:?}", res.outcome);
        let e = &res.derivation;
        assert_eq!(e.length(), 6);
        assert!(e.validate().unwrap().is_valid());
        assert!(e.entries_in(&QuotientIdeal::new(&a, &[d]).unwrap()));
        for p in decomposition(&a) {
            let q = QuotientIdeal::new(&a, p.generators()).unwrap();
            assert!(e.is_logarithmic(&q).unwrap());
        }
    }

    #[test]
    fn delta_in_i_gives_identity() {
        let a = plane_and_line();
        let delta = vec![a.var(0), a.var(1), a.var(2)];
        let d = a.parse_element("x*z").unwrap();
        let res = integrate_reduced(&a, &delta, &d, &decomposition(&a), 3).unwrap();
        assert!(res.derivation.is_identity());
    }

    #[test]
    fn bad_decomposition() {
        let a = plane_and_line();
        let only = vec![PrimeWitness::parse(&a, &["z"], Some(1)).unwrap()];
        let delta = vec![a.zero(); 3];
        assert!(matches!(
            integrate_reduced(&a, &delta, &a.one(), &only, 2),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn single_prime_matches_equidim() {
        let a = PresentedAlgebra::parse(2, &["x", "y"], &["y^2 + x^3"]).unwrap();
        let p = vec![PrimeWitness::parse(&a, &["y^2 + x^3"], Some(1)).unwrap()];
        let d = a.parse_element("x^2").unwrap();
        let res = integrate_reduced(&a, &[a.zero(), a.one()], &d, &p, 6).unwrap();
        assert!(res.is_complete());
        let eq = super::super::integrate_equidim(
            &a,
            &[a.zero(), a.one()],
            &d,
            6,
            &EquidimOptions {
                primes: p.clone(),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(eq.derivation.table(), res.derivation.table());
    }
}
