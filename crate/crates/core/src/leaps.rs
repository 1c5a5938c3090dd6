//! Deciding m-integrability on finite-dimensional algebras, and the chain
//! Der = IDer(A; 1) ⊇ IDer(A; 2) ⊇ … with its leaps.
//!
//! The exact search prunes with one fact: if E is an HS-derivation of length
//! ⌊m/ν⌋ with first component w, then composing with E(t^ν) changes only
//! rows ν and above, and row ν by w. So whether a partial integral extends
//! to length m depends only on its row ν modulo IDer(A; ⌊m/ν⌋).

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::PresentedAlgebra;
use crate::artinian::ArtinianModel;
use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::groebner::{step_budget, Ideal};
use crate::hs::{derivation_check, HsDerivation};
use crate::integrator::{obstruction_coefficients, LinearizedSystem};
use crate::linalg::{add, combine, projective_tuples, solve, tuples, Subspace};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Exhaustive search over the affine solution spaces (artinian A).
    Exact,
    /// Greedy search with unknowns of total degree at most the bound.
    DegreeBounded(u32),
}

/// A level with no solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeadEnd {
    pub order: usize,
    pub obstruction: Vec<Polynomial>,
}

/// Bookkeeping of one exhaustive search.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub dead_ends: u64,
    /// Longest partial integral reached.
    pub deepest: usize,
    pub first_dead_end: Option<DeadEnd>,
}

#[derive(Debug, Clone)]
pub enum Integrability {
    Yes(HsDerivation),
    /// Every branch was exhausted.
    No(SearchStats),
    Unknown(String),
}

impl Integrability {
    pub fn is_yes(&self) -> bool {
        matches!(self, Integrability::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Integrability::No(_))
    }
}

/// Search state shared across queries on one artinian algebra: the
/// linearized Jacobian, Der_k(A), and the memoized chain IDer(A; s).
#[derive(Debug)]
pub struct LeapLab {
    model: ArtinianModel,
    system: LinearizedSystem,
    der: Subspace,
    ider: HashMap<usize, Subspace>,
    budget: u64,
    spent: u64,
    pruning: bool,
}

impl LeapLab {
    pub fn new(alg: &Arc<PresentedAlgebra>) -> Result<LeapLab> {
        let model = ArtinianModel::new(alg)?;
        if alg.field().elements().is_none() {
            return Err(Error::InvalidInput("exact search needs a finite field".into()));
        }
        let system = LinearizedSystem::new(&model, alg.generators())?;
        let der = Subspace::spanned_by(model.field(), system.ncols(), system.kernel());
        Ok(LeapLab {
            model,
            system,
            der,
            ider: HashMap::new(),
            budget: step_budget(),
            spent: 0,
            pruning: true,
        })
    }

    /// With `false`, every level enumerates all of Der instead of coset
    /// representatives. Slow; for cross-checking.
    pub fn with_pruning(mut self, on: bool) -> LeapLab {
        self.pruning = on;
        self
    }

    pub fn model(&self) -> &ArtinianModel {
        &self.model
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        self.model.algebra()
    }

    /// Der_k(A) in coordinates.
    pub fn derivations(&self) -> &Subspace {
        &self.der
    }

    /// Search nodes spent so far.
    pub fn spent(&self) -> u64 {
        self.spent
    }

    fn tick(&mut self, n: u64) -> Result<()> {
        self.spent += n;
        if self.spent > self.budget {
            return Err(Error::BudgetExceeded {
                what: "integrability search",
                limit: self.budget,
            });
        }
        Ok(())
    }

    /// IDer(A; s) as a subspace of Der. Tests one vector per line of
    /// IDer(A; s−1) modulo what is already known to integrate; every hit is
    /// added with its A-multiples.
    pub fn ider(&mut self, s: usize) -> Result<Subspace> {
        if s <= 1 {
            return Ok(self.der.clone());
        }
        if let Some(w) = self.ider.get(&s) {
            return Ok(w.clone());
        }
        let v = self.ider(s - 1)?;
        let field = self.model.field();
        let ambient = self.system.ncols();
        let mut found = Subspace::zero(field, ambient);
        loop {
            let comp = found.complement_in(&v);
            if comp.is_empty() {
                break;
            }
            let mut grew = false;
            for t in projective_tuples(field, comp.len()) {
                let cand = combine(field, ambient, &t, &comp);
                let mut stats = SearchStats::default();
                if self.search(&cand, s, &mut stats)?.is_some() {
                    self.insert_module(&mut found, &cand);
                    grew = true;
                    break;
                }
            }
            if !grew {
                break;
            }
        }
        self.ider.insert(s, found.clone());
        Ok(found)
    }

    fn insert_module(&self, found: &mut Subspace, v: &[Coeff]) {
        let one = self.model.field().one();
        for b in self.model.basis() {
            let mono = Polynomial::monomial(self.algebra().ring(), b.clone(), one.clone());
            found.insert(&self.model.scale_vector(&mono, v));
        }
    }

    /// An integral of length `m` of the derivation with coordinates `delta`.
    pub fn search(&mut self, delta: &[Coeff], m: usize, stats: &mut SearchStats) -> Result<Option<HsDerivation>> {
        let first = self.model.vec_element(delta);
        let start = HsDerivation::new(self.algebra(), vec![first])?;
        self.dfs(start, m, stats)
    }

    fn dfs(&mut self, partial: HsDerivation, m: usize, stats: &mut SearchStats) -> Result<Option<HsDerivation>> {
        stats.deepest = stats.deepest.max(partial.length());
        let nu = partial.length() + 1;
        if nu > m {
            return Ok(Some(partial));
        }
        self.tick(1)?;
        stats.nodes += 1;
        let f = obstruction_coefficients(&partial, self.algebra().generators())?;
        let Some(part) = self.system.particular(&f) else {
            stats.dead_ends += 1;
            if stats.first_dead_end.is_none() {
                stats.first_dead_end = Some(DeadEnd {
                    order: nu,
                    obstruction: f,
                });
            }
            return Ok(None);
        };
        let reps = if self.pruning {
            self.ider(m / nu)?.complement_in(&self.der)
        } else {
            self.der.basis().to_vec()
        };
        let field = self.model.field();
        let p = field.characteristic();
        let count = (p as u128).checked_pow(reps.len() as u32).unwrap_or(u128::MAX);
        if count > (self.budget - self.spent.min(self.budget)) as u128 {
            return Err(Error::BudgetExceeded {
                what: "integrability search",
                limit: self.budget,
            });
        }
        let ambient = self.system.ncols();
        for t in tuples(field, reps.len()) {
            let v = add(field, &part, &combine(field, ambient, &t, &reps));
            let next = partial.extended(self.model.vec_element(&v))?;
            if let Some(found) = self.dfs(next, m, stats)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    /// Decides whether δ extends to length m, returning a validated witness.
    pub fn decide(&mut self, delta: &[Polynomial], m: usize) -> Result<Integrability> {
        let coords = self.model.vec_coords(delta);
        if !self.der.contains(&coords) {
            return Err(Error::Hypothesis("delta is not a derivation of A".into()));
        }
        let mut stats = SearchStats::default();
        match self.search(&coords, m.max(1), &mut stats) {
            Ok(Some(w)) => {
                if !w.validate()?.is_valid() {
                    return Err(Error::Verification("search produced an invalid witness".into()));
                }
                Ok(Integrability::Yes(w))
            }
            Ok(None) => Ok(Integrability::No(stats)),
            Err(Error::BudgetExceeded { what, limit }) => {
                Ok(Integrability::Unknown(format!("{what} exceeded budget {limit}")))
            }
            Err(e) => Err(e),
        }
    }

    /// 𝔪^M·Der, spanned by (degree-M monomial)·(basis derivation).
    pub fn power_times_der(&self, power: u32) -> Subspace {
        let field = self.model.field();
        let mut out = Subspace::zero(field, self.system.ncols());
        let one = field.one();
        for mono in Monomial::all_of_degree(self.model.nvars(), power) {
            let p = Polynomial::monomial(self.algebra().ring(), mono, one.clone());
            for v in self.der.basis() {
                out.insert(&self.model.scale_vector(&p, v));
            }
        }
        out
    }
}

/// Decides whether δ is m-integrable.
pub fn is_m_integrable(alg: &Arc<PresentedAlgebra>, delta: &[Polynomial], m: usize, mode: Mode) -> Result<Integrability> {
    if delta.len() != alg.nvars() {
        return Err(Error::InvalidInput(format!(
            "derivation has {} entries, expected {}",
            delta.len(),
            alg.nvars()
        )));
    }
    if !derivation_check(alg, delta)? {
        return Err(Error::Hypothesis("delta is not a derivation of A".into()));
    }
    match mode {
        Mode::Exact => LeapLab::new(alg)?.decide(delta, m),
        Mode::DegreeBounded(d) => degree_bounded(alg, delta, m, d),
    }
}

/// Greedy extension with each ξ_{ν,i} a combination of monomials of degree
/// at most `bound`; answers yes or unknown.
pub fn degree_bounded(alg: &Arc<PresentedAlgebra>, delta: &[Polynomial], m: usize, bound: u32) -> Result<Integrability> {
    let n = alg.nvars();
    let field = alg.field();
    let gens = alg.generators();
    let monos: Vec<Monomial> = (0..=bound).flat_map(|d| Monomial::all_of_degree(n, d)).collect();
    let one = field.one();
    // column (i, β) ↦ NF(∂_i f_α · x^β) for each α
    let mut columns: Vec<(usize, Polynomial, Vec<Polynomial>)> = Vec::new();
    for i in 0..n {
        let partials: Vec<Polynomial> = gens
            .iter()
            .map(|g| g.partial_derivative(i))
            .collect::<Result<_>>()?;
        for b in &monos {
            let x = Polynomial::monomial(alg.ring(), b.clone(), one.clone());
            let img = partials.iter().map(|d| alg.reduce(&(d * &x))).collect();
            columns.push((i, x, img));
        }
    }
    let budget = step_budget();
    let mut partial = HsDerivation::new(alg, vec![delta.to_vec()])?;
    for nu in 2..=m {
        if (nu as u64) * (columns.len() as u64) > budget {
            return Ok(Integrability::Unknown(format!("degree-bounded search exceeded budget {budget}")));
        }
        let f = obstruction_coefficients(&partial, gens)?;
        let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
        let mut entries: Vec<Vec<(usize, Coeff)>> = vec![Vec::new(); columns.len()];
        for (c, (_, _, img)) in columns.iter().enumerate() {
            for (a, p) in img.iter().enumerate() {
                for (mono, coef) in p.terms() {
                    let next = index.len();
                    let r = *index.entry((a, mono.clone())).or_insert(next);
                    entries[c].push((r, coef.clone()));
                }
            }
        }
        let mut rhs_terms = Vec::new();
        for (a, p) in f.iter().enumerate() {
            for (mono, coef) in alg.reduce(p).terms() {
                let next = index.len();
                let r = *index.entry((a, mono.clone())).or_insert(next);
                rhs_terms.push((r, field.neg(coef)));
            }
        }
        let nrows = index.len();
        let mut rows = vec![vec![field.zero(); columns.len()]; nrows];
        for (c, col) in entries.iter().enumerate() {
            for (r, v) in col {
                rows[*r][c] = v.clone();
            }
        }
        let mut rhs = vec![field.zero(); nrows];
        for (r, v) in rhs_terms {
            rhs[r] = v;
        }
        let Some(sol) = solve(field, &rows, &rhs, columns.len()) else {
            return Ok(Integrability::Unknown(format!(
                "no solution of degree at most {bound} at order {nu}"
            )));
        };
        let mut row = vec![alg.zero(); n];
        for ((i, x, _), c) in columns.iter().zip(&sol.particular) {
            if !field.is_zero(c) {
                row[*i] = row[*i].add_scaled(x, c);
            }
        }
        partial = partial.extended(row)?;
    }
    if !partial.validate()?.is_valid() {
        return Err(Error::Verification("degree-bounded witness does not validate".into()));
    }
    Ok(Integrability::Yes(partial))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certification {
    Exact,
    DegreeBounded(u32),
}

/// A strict step IDer(A; s−1) ⊋ IDer(A; s).
#[derive(Debug, Clone)]
pub struct Leap {
    pub s: usize,
    pub witness: Vec<Polynomial>,
    /// An integral of the witness of length s−1.
    pub integral: HsDerivation,
    /// The exhausted search at length s.
    pub certificate: SearchStats,
}

#[derive(Debug, Clone)]
pub struct LeapReport {
    pub bound: usize,
    pub certification: Certification,
    pub leaps: Vec<Leap>,
    /// dim_F IDer(A; s) for s = 1, 2, … (exact mode).
    pub dims: Vec<usize>,
    /// Orders 1..=scanned were decided.
    pub scanned: usize,
    pub complete: bool,
    /// Smallest M with 𝔪^M·Der ⊆ IDer(A; scanned), for local A.
    pub certified_power: Option<u32>,
    /// dim Der/𝔪^M·Der for the certified M.
    pub leap_bound: Option<usize>,
    /// Degree-bounded mode: first order some generator could not be
    /// integrated to.
    pub unknown_from: Option<usize>,
    pub nodes: u64,
}

/// Exact scan of s = 2..=bound on an artinian algebra over F_p. Stops early
/// (with `complete = false`) when the search budget runs out.
pub fn leap_scan(alg: &Arc<PresentedAlgebra>, bound: usize) -> Result<LeapReport> {
    let mut lab = LeapLab::new(alg)?;
    let mut report = LeapReport {
        bound,
        certification: Certification::Exact,
        leaps: Vec::new(),
        dims: vec![lab.der.dim()],
        scanned: 1,
        complete: true,
        certified_power: None,
        leap_bound: None,
        unknown_from: None,
        nodes: 0,
    };
    let mut prev = lab.der.clone();
    for s in 2..=bound {
        let cur = match lab.ider(s) {
            Ok(c) => c,
            Err(Error::BudgetExceeded { .. }) => {
                report.complete = false;
                break;
            }
            Err(e) => return Err(e),
        };
        if cur.dim() < prev.dim() {
            let v = cur
                .complement_in(&prev)
                .into_iter()
                .next()
                .expect("a strict drop leaves a vector outside");
            let witness = prev
                .basis()
                .iter()
                .find(|b| !cur.contains(b))
                .cloned()
                .unwrap_or(v);
            let mut yes = SearchStats::default();
            let integral = lab
                .search(&witness, s - 1, &mut yes)?
                .ok_or_else(|| Error::Verification(format!("leap witness does not reach order {}", s - 1)))?;
            if !integral.validate()?.is_valid() {
                return Err(Error::Verification("leap witness integral does not validate".into()));
            }
            let mut no = SearchStats::default();
            if lab.search(&witness, s, &mut no)?.is_some() {
                return Err(Error::Verification(format!("leap witness integrates to order {s}")));
            }
            report.leaps.push(Leap {
                s,
                witness: lab.model.vec_element(&witness),
                integral,
                certificate: no,
            });
        }
        report.dims.push(cur.dim());
        report.scanned = s;
        prev = cur;
    }
    if lab.model.is_local_at_origin() {
        let top = lab.ider(report.scanned).unwrap_or(prev);
        for power in 1..=lab.model.dim() as u32 {
            let sub = lab.power_times_der(power);
            if top.contains_subspace(&sub) {
                report.certified_power = Some(power);
                report.leap_bound = Some(lab.der.dim() - sub.dim());
                break;
            }
        }
    }
    report.nodes = lab.spent();
    Ok(report)
}

/// Degree-bounded scan for algebras without a finite model: each of
/// `generators` (meant to generate Der_k(A) as an A-module) is integrated
/// greedily to `bound`. No leaps are ever claimed; when every generator
/// reaches `bound`, IDer(A; bound) = Der and there are none up to `bound`.
pub fn leap_scan_degree_bounded(
    alg: &Arc<PresentedAlgebra>,
    generators: &[Vec<Polynomial>],
    bound: usize,
    degree: u32,
) -> Result<LeapReport> {
    let mut unknown_from: Option<usize> = None;
    for g in generators {
        if !derivation_check(alg, g)? {
            return Err(Error::Hypothesis("a supplied generator is not a derivation".into()));
        }
        match degree_bounded(alg, g, bound, degree)? {
            Integrability::Yes(_) => {}
            _ => {
                let reached = (2..=bound)
                    .find(|&s| !degree_bounded(alg, g, s, degree).map(|r| r.is_yes()).unwrap_or(false))
                    .unwrap_or(bound);
                unknown_from = Some(unknown_from.map_or(reached, |u| u.min(reached)));
            }
        }
    }
    Ok(LeapReport {
        bound,
        certification: Certification::DegreeBounded(degree),
        leaps: Vec::new(),
        dims: Vec::new(),
        scanned: unknown_from.map_or(bound, |u| u - 1),
        complete: unknown_from.is_none(),
        certified_power: None,
        leap_bound: None,
        unknown_from,
        nodes: 0,
    })
}

/// dim_F Der/𝔪^M·Der for local artinian A with 𝔪 = ⟨x⟩.
pub fn leap_bound(alg: &Arc<PresentedAlgebra>, power: u32) -> Result<usize> {
    let lab = LeapLab::new(alg)?;
    if !lab.model.is_local_at_origin() {
        return Err(Error::NotLocal);
    }
    Ok(lab.der.dim() - lab.power_times_der(power).dim())
}

/// Smallest N ≥ 1 with 𝔪^N ⊆ J, testing products of N generators of 𝔪.
pub fn min_power_in_ideal(maximal: &Ideal, j: &Ideal) -> Result<usize> {
    if j.is_zero() {
        return Err(Error::InvalidInput("target ideal is zero".into()));
    }
    let gb = j.groebner(MonomialOrder::Grevlex)?;
    let gens = maximal.generators();
    let budget = step_budget();
    let mut spent = 0u64;
    // products outside J, with the index of their last factor
    let mut frontier: Vec<(Polynomial, usize)> = vec![(Polynomial::one(maximal.ring()), 0)];
    for n in 1.. {
        let mut next = Vec::new();
        for (p, last) in &frontier {
            for (k, g) in gens.iter().enumerate().skip(*last) {
                spent += 1;
                if spent > budget {
                    return Err(Error::BudgetExceeded {
                        what: "power search",
                        limit: budget,
                    });
                }
                let q = p * g;
                if !gb.contains(&q) {
                    next.push((q, k));
                }
            }
        }
        if next.is_empty() {
            return Ok(n);
        }
        frontier = next;
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaps_of(report: &LeapReport) -> Vec<usize> {
        report.leaps.iter().map(|l| l.s).collect()
    }

    #[test]
    fn dual_numbers_decisions() {
        let a = PresentedAlgebra::parse(2, &["x"], &["x^2"]).unwrap();
        assert!(is_m_integrable(&a, &[a.one()], 1, Mode::Exact).unwrap().is_yes());
        match is_m_integrable(&a, &[a.one()], 2, Mode::Exact).unwrap() {
            Integrability::No(stats) => {
                let dead = stats.first_dead_end.unwrap();
                assert_eq!(dead.order, 2);
                assert!(a.eq(&dead.obstruction[0], &a.one()));
            }
            other => panic!("{other:?}"),
        }
        match is_m_integrable(&a, &[a.var(0)], 8, Mode::Exact).unwrap() {
            Integrability::Yes(w) => assert_eq!(w.length(), 8),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn motivating_leaps() {
        let a = PresentedAlgebra::parse(2, &["x"], &["x^2"]).unwrap();
        let r = leap_scan(&a, 8).unwrap();
        assert_eq!(leaps_of(&r), vec![2]);
        assert!(r.complete);
        let b = PresentedAlgebra::parse(2, &["x"], &["x^4"]).unwrap();
        assert_eq!(leaps_of(&leap_scan(&b, 8).unwrap()), vec![4]);
        let c = PresentedAlgebra::parse(3, &["x"], &["x^3"]).unwrap();
        assert_eq!(leaps_of(&leap_scan(&c, 9).unwrap()), vec![3]);
    }

    #[test]
    fn bounds() {
        let a = PresentedAlgebra::parse(2, &["x"], &["x^2"]).unwrap();
        assert_eq!(leap_bound(&a, 1).unwrap(), 1);
        let b = PresentedAlgebra::parse(2, &["x"], &["x^4"]).unwrap();
        assert_eq!(leap_bound(&b, 1).unwrap(), 1);
        let k = PresentedAlgebra::parse(2, &["x"], &["x"]).unwrap();
        assert_eq!(leap_bound(&k, 3).unwrap(), 0);
        let c = PresentedAlgebra::parse(2, &["x"], &["x^2 + x"]).unwrap();
        assert!(matches!(leap_bound(&c, 1), Err(Error::NotLocal)));
    }

    #[test]
    fn powers() {
        let r = crate::ring::Ring::with_char(2, &["x", "y"]).unwrap();
        let p = |s: &str| crate::parse::parse_polynomial(&r, s).unwrap();
        let id = |g: &[&str]| Ideal::new(&r, g.iter().map(|s| p(s)).collect()).unwrap();
        assert_eq!(min_power_in_ideal(&id(&["x"]), &id(&["x^2"])).unwrap(), 2);
        assert_eq!(min_power_in_ideal(&id(&["x", "y"]), &id(&["x", "y"])).unwrap(), 1);
        assert_eq!(min_power_in_ideal(&id(&["x", "y"]), &id(&["x^2", "x*y", "y^2"])).unwrap(), 2);
    }

    #[test]
    fn degree_bounded_polynomial_ring() {
        let a = PresentedAlgebra::new(Ideal::zero(&crate::ring::Ring::with_char(2, &["x"]).unwrap())).unwrap();
        assert!(is_m_integrable(&a, &[a.one()], 8, Mode::DegreeBounded(2)).unwrap().is_yes());
        let r = leap_scan_degree_bounded(&a, &[vec![a.one()]], 8, 2).unwrap();
        assert!(r.leaps.is_empty() && r.complete);
        assert!(matches!(
            is_m_integrable(&a, &[a.one()], 2, Mode::Exact),
            Err(Error::NotArtinian)
        ));
    }

    #[test]
    fn degree_bounded_cusp() {
        let a = PresentedAlgebra::parse(2, &["x", "y"], &["y^2 + x^3"]).unwrap();
        let delta = vec![a.zero(), a.parse_element("x^2").unwrap()];
        assert!(is_m_integrable(&a, &delta, 6, Mode::DegreeBounded(3)).unwrap().is_yes());
    }
}
