//! Order-by-order extension of derivations to Hasse–Schmidt derivations.
//!
//! At order ν, with ξ_1, …, ξ_{ν−1} already chosen, each generator satisfies
//! f_α(x + Σ_{μ<ν} t^μ ξ_μ) ≡ t^ν F_α (mod t^{ν+1}), and the next row must
//! solve F_α + Σ_j ∂_j f_α ξ_{ν,j} = 0 in A.

mod ci;
mod equidim;
mod linear;
mod reduced;

pub use ci::integrate_ci;
pub use equidim::{integrate_equidim, EquidimOptions};
pub use linear::{linear_extension_space, ExtensionSpace, LinearizedSystem};
pub use reduced::integrate_reduced;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{PresentedAlgebra, QuotientIdeal};
use crate::error::{Error, Result};
use crate::geometry::{jacobian, reduce_matrix};
use crate::hs::HsDerivation;
use crate::matrix::{mat_vec, minor_det, Matrix, Minor};
use crate::poly::Polynomial;
use crate::series::{truncated_substitution, TruncatedSeries};

/// A partial integral of length ν−1 together with the ideal Ma that all of
/// its entries lie in.
#[derive(Debug, Clone)]
pub struct StepContext {
    partial: HsDerivation,
    generators: Vec<Polynomial>,
    ma: Arc<QuotientIdeal>,
    ma_sq: Arc<QuotientIdeal>,
}

impl StepContext {
    /// Checks that `partial` validates, that `generators` lie in I, and that
    /// every entry of `partial` lies in `ma`.
    pub fn new(partial: HsDerivation, generators: Vec<Polynomial>, ma: Arc<QuotientIdeal>) -> Result<StepContext> {
        let alg = partial.algebra().clone();
        if !Arc::ptr_eq(ma.algebra(), &alg) {
            return Err(Error::InvalidInput("constraint ideal over a different algebra".into()));
        }
        if let Some(g) = generators.iter().find(|g| !alg.is_zero(g)) {
            return Err(Error::InvalidInput(format!("{g} is not in I")));
        }
        if !partial.validate()?.is_valid() {
            return Err(Error::InvalidInput("partial HS-derivation does not validate".into()));
        }
        if !partial.entries_in(&ma) {
            return Err(Error::InvalidInput("partial HS-derivation leaves the constraint ideal".into()));
        }
        let ma_sq = Arc::new(ma.product(&ma)?);
        Ok(StepContext {
            partial,
            generators,
            ma,
            ma_sq,
        })
    }

    /// Unconstrained context over A's stored generators.
    pub fn unconstrained(partial: HsDerivation) -> Result<StepContext> {
        let alg = partial.algebra().clone();
        let gens = alg.generators().to_vec();
        Self::new(partial, gens, Arc::new(QuotientIdeal::unit(&alg)?))
    }

    pub(crate) fn trusted(
        partial: HsDerivation,
        generators: Vec<Polynomial>,
        ma: Arc<QuotientIdeal>,
        ma_sq: Arc<QuotientIdeal>,
    ) -> StepContext {
        StepContext {
            partial,
            generators,
            ma,
            ma_sq,
        }
    }

    pub fn partial(&self) -> &HsDerivation {
        &self.partial
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn constraint(&self) -> &QuotientIdeal {
        &self.ma
    }

    pub fn constraint_squared(&self) -> &QuotientIdeal {
        &self.ma_sq
    }

    /// The order ν being solved for.
    pub fn order(&self) -> usize {
        self.partial.length() + 1
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        self.partial.algebra()
    }
}

/// The linear system J ξ_ν = −F at one order.
#[derive(Debug, Clone)]
pub struct ObstructionSystem {
    pub order: usize,
    /// ∂_j f_α, reduced mod I.
    pub matrix: Matrix,
    /// F_α per generator.
    pub obstruction: Vec<Polynomial>,
}

impl ObstructionSystem {
    pub fn rhs(&self) -> Vec<Polynomial> {
        self.obstruction.iter().map(|f| -f).collect()
    }

    /// J ξ + F = 0 in A.
    pub fn is_solved_by(&self, alg: &PresentedAlgebra, xi: &[Polynomial]) -> bool {
        mat_vec(alg, &self.matrix, xi)
            .iter()
            .zip(&self.obstruction)
            .all(|(a, f)| alg.is_zero(&(a + f)))
    }
}

/// F_α = [t^ν] f_α(x + Σ_{μ<ν} t^μ ξ_μ), reduced in A.
pub fn obstruction_coefficients(partial: &HsDerivation, generators: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let alg = partial.algebra();
    let nu = partial.length() + 1;
    let images: Vec<TruncatedSeries> = partial
        .series_all()
        .iter()
        .map(|s| TruncatedSeries::new(alg, s.coeffs().to_vec(), nu))
        .collect();
    generators
        .iter()
        .map(|f| Ok(truncated_substitution(alg, f, &images, nu)?.coeff(nu).clone()))
        .collect()
}

/// Builds the system at order ν and checks F_α ∈ Ma².
pub fn obstruction(ctx: &StepContext) -> Result<ObstructionSystem> {
    let alg = ctx.algebra();
    let obstruction = obstruction_coefficients(&ctx.partial, &ctx.generators)?;
    for (a, f) in obstruction.iter().enumerate() {
        if !ctx.ma_sq.contains(f) {
            return Err(Error::Verification(format!(
                "obstruction F_{} = {f} at order {} is not in Ma^2",
                a + 1,
                ctx.order()
            )));
        }
    }
    let matrix = if ctx.generators.is_empty() {
        Vec::new()
    } else {
        reduce_matrix(alg, &jacobian(&ctx.generators)?)
    };
    Ok(ObstructionSystem {
        order: ctx.order(),
        matrix,
        obstruction,
    })
}

/// Solves M ξ = Δ b from the cofactors of the bordered matrix
/// [[M_{R,C} | b_R], [M_{i,C} | b_i]] along its last row, where Δ = det
/// M_{R,C}. Variables outside C are set to zero. The result is checked
/// (M ξ = Δ b and ξ_i ∈ ⟨b_R⟩) before it is returned.
pub fn cofactor_solve(alg: &Arc<PresentedAlgebra>, m: &Matrix, b: &[Polynomial], minor: &Minor) -> Result<Vec<Polynomial>> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    if b.len() != nrows {
        return Err(Error::InvalidInput("right-hand side length differs from row count".into()));
    }
    let r = minor.rows.len();
    if minor.cols.len() != r
        || minor.rows.iter().any(|&i| i >= nrows)
        || minor.cols.iter().any(|&j| j >= ncols)
    {
        return Err(Error::InvalidInput("minor indices out of range".into()));
    }
    let delta = minor_det(alg, m, &minor.rows, &minor.cols);
    if !alg.eq(&delta, &minor.value) {
        return Err(Error::InvalidInput("minor value is not the determinant of its submatrix".into()));
    }
    let b: Vec<Polynomial> = b.iter().map(|x| alg.reduce(x)).collect();
    let mut xi = vec![alg.zero(); ncols];
    // r×r matrices [M_{R, C∖c_j} | b_R]
    for j in 0..r {
        let sub: Matrix = minor
            .rows
            .iter()
            .map(|&row| {
                let mut v: Vec<Polynomial> = minor
                    .cols
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, &c)| m[row][c].clone())
                    .collect();
                v.push(b[row].clone());
                v
            })
            .collect();
        let idx: Vec<usize> = (0..r).collect();
        let d = minor_det(alg, &sub, &idx, &idx);
        // cofactor sign (−1)^{(r+1)+(j+1)}; ξ_{c_j} = −cofactor
        let cof = if (r + j).is_multiple_of(2) { d } else { -&d };
        xi[minor.cols[j]] = alg.reduce(&-&cof);
    }
    let lhs = mat_vec(alg, m, &xi);
    for (i, (l, bi)) in lhs.iter().zip(&b).enumerate() {
        if !alg.eq(l, &alg.mul(&delta, bi)) {
            return Err(Error::Verification(format!(
                "cofactor solution fails row {}: the rank hypothesis does not hold",
                i + 1
            )));
        }
    }
    let b_r: Vec<Polynomial> = minor.rows.iter().map(|&i| b[i].clone()).collect();
    let ideal = QuotientIdeal::new(alg, &b_r)?;
    if let Some(x) = xi.iter().find(|x| !ideal.contains(x)) {
        return Err(Error::Verification(format!("cofactor solution entry {x} is not in <b_R>")));
    }
    Ok(xi)
}

/// Which construction produced an integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    CompleteIntersection,
    EquidimensionalDelta,
    ReducedLog,
    ArtinianLinear,
    DegreeBounded,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::CompleteIntersection => "complete-intersection",
            Method::EquidimensionalDelta => "equidimensional-delta",
            Method::ReducedLog => "reduced-log",
            Method::ArtinianLinear => "artinian-linear",
            Method::DegreeBounded => "degree-bounded",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One recorded verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub order: usize,
    pub what: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Reached the requested order.
    Extended,
    /// A step failed; the derivation holds the last valid prefix.
    Obstructed { order: usize, reason: String },
    /// A resource budget ran out.
    Inconclusive { order: usize, reason: String },
}

#[derive(Debug, Clone)]
pub struct Integration {
    pub method: Method,
    pub outcome: Outcome,
    pub requested_order: usize,
    /// Longest validated prefix (the full integral when extended).
    pub derivation: HsDerivation,
    /// Generators of the ideal every entry was required to lie in.
    pub constraint: Vec<Polynomial>,
    pub transcript: Vec<Check>,
}

impl Integration {
    pub fn is_complete(&self) -> bool {
        self.outcome == Outcome::Extended && self.transcript.iter().all(|c| c.passed)
    }
}

/// Shared order-by-order loop. `step` receives the context and system at
/// order ν and returns ξ_ν.
pub(crate) struct Driver<'a> {
    pub alg: &'a Arc<PresentedAlgebra>,
    pub method: Method,
    pub rows: Vec<Polynomial>,
    pub ma: Arc<QuotientIdeal>,
    pub log_ideal: Option<&'a QuotientIdeal>,
}

impl<'a> Driver<'a> {
    pub fn run<F>(self, first: Vec<Polynomial>, m: usize, mut step: F) -> Result<Integration>
    where
        F: FnMut(&StepContext, &ObstructionSystem, &mut Vec<Check>) -> Result<Vec<Polynomial>>,
    {
        let ma_sq = Arc::new(self.ma.product(&self.ma)?);
        let mut transcript = Vec::new();
        let mut current = HsDerivation::new(self.alg, vec![first])?;
        let constraint = self.ma.generators().to_vec();
        let finish = |current: HsDerivation, outcome: Outcome, transcript: Vec<Check>| Integration {
            method: self.method,
            outcome,
            requested_order: m,
            derivation: current,
            constraint: constraint.clone(),
            transcript,
        };
        let check_order = |d: &HsDerivation, order: usize, transcript: &mut Vec<Check>| -> Result<Option<String>> {
            let valid = d.validate()?;
            transcript.push(Check {
                order,
                what: "valid".into(),
                passed: valid.is_valid(),
            });
            let row_ok = d.row(order).iter().all(|x| self.ma.contains(x));
            transcript.push(Check {
                order,
                what: "entries in Ma".into(),
                passed: row_ok,
            });
            if let Some(j) = self.log_ideal {
                let ok = d.is_logarithmic(j)?;
                transcript.push(Check {
                    order,
                    what: "logarithmic".into(),
                    passed: ok,
                });
                if !ok {
                    return Ok(Some("not logarithmic".into()));
                }
            }
            Ok(match (valid, row_ok) {
                (crate::hs::Validation::Invalid { generator, order: k }, _) => {
                    Some(format!("generator {} fails at t^{k}", generator + 1))
                }
                (_, false) => Some("entry outside Ma".into()),
                _ => None,
            })
        };
        if let Some(reason) = check_order(&current, 1, &mut transcript)? {
            let outcome = Outcome::Obstructed { order: 1, reason };
            return Ok(finish(current, outcome, transcript));
        }
        for nu in 2..=m {
            let ctx = StepContext::trusted(current.clone(), self.rows.clone(), self.ma.clone(), ma_sq.clone());
            let attempt = obstruction(&ctx).and_then(|sys| {
                transcript.push(Check {
                    order: nu,
                    what: "F in Ma^2".into(),
                    passed: true,
                });
                let xi = step(&ctx, &sys, &mut transcript)?;
                let solved = sys.is_solved_by(self.alg, &xi);
                transcript.push(Check {
                    order: nu,
                    what: "solves J xi = -F".into(),
                    passed: solved,
                });
                Ok(xi)
            });
            let xi = match attempt {
                Ok(xi) => xi,
                Err(Error::BudgetExceeded { what, limit }) => {
                    let outcome = Outcome::Inconclusive {
                        order: nu,
                        reason: format!("{what} exceeded budget {limit}"),
                    };
                    return Ok(finish(current, outcome, transcript));
                }
                Err(e @ (Error::Verification(_) | Error::Hypothesis(_) | Error::ZeroDivisor(_))) => {
                    transcript.push(Check {
                        order: nu,
                        what: e.to_string(),
                        passed: false,
                    });
                    let outcome = Outcome::Obstructed {
                        order: nu,
                        reason: e.to_string(),
                    };
                    return Ok(finish(current, outcome, transcript));
                }
                Err(e) => return Err(e),
            };
            let next = current.extended(xi)?;
            if let Some(reason) = check_order(&next, nu, &mut transcript)? {
                let outcome = Outcome::Obstructed { order: nu, reason };
                return Ok(finish(current, outcome, transcript));
            }
            current = next;
        }
        Ok(finish(current, Outcome::Extended, transcript))
    }
}
