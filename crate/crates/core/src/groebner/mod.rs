//! Reduced Gröbner bases and division with certificates.
//!
//! Buchberger's algorithm with the Gebauer–Möller update and the normal
//! selection strategy by sugar degree. Every run is capped by a step budget
//! (number of S-pair reductions); exceeding it is an error, never a partial
//! answer.

mod ideal_ops;

pub use ideal_ops::*;

use std::cmp::Ordering;
use std::cell::Cell;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Term};
use crate::ring::{same_ring, Ring};

pub const DEFAULT_STEP_BUDGET: u64 = 200_000;

thread_local! {
    static STEP_BUDGET: Cell<u64> = const { Cell::new(DEFAULT_STEP_BUDGET) };
}

/// Cap on S-pair reductions per Buchberger run (and on search nodes in the
/// leap explorer). Applies to the calling thread.
pub fn set_step_budget(steps: u64) {
    STEP_BUDGET.with(|b| b.set(steps.max(1)));
}

pub fn step_budget() -> u64 {
    STEP_BUDGET.with(|b| b.get())
}

/// An ideal of a polynomial ring, given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped; all generators must live in `ring`.
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Ideal> {
        if generators.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ring: &Arc<Ring>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    pub fn unit(ring: &Arc<Ring>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators: vec![Polynomial::one(ring)],
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn groebner(&self, order: MonomialOrder) -> Result<GroebnerBasis> {
        buchberger(self, order)
    }

    /// Gröbner basis that also records how each element is built from the
    /// generators, enabling [`GroebnerBasis::lift`].
    pub fn groebner_tracked(&self, order: MonomialOrder) -> Result<GroebnerBasis> {
        run_buchberger(self, order, true)
    }

    /// I + J
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// I · J, generated by pairwise products.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }
}

/// f = Σ quotients[i] · basis[i] + remainder, exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionCertificate {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

impl DivisionCertificate {
    /// Re-evaluates Σ qᵢgᵢ + r.
    pub fn recombine(&self, basis: &[Polynomial]) -> Polynomial {
        let mut acc = self.remainder.clone();
        for (q, g) in self.quotients.iter().zip(basis) {
            acc = &acc + &(q * g);
        }
        acc
    }
}

/// A reduced Gröbner basis: monic, no term of any element divisible by
/// another element's leading monomial. Elements are sorted by descending
/// leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    internal: Vec<OPoly>,
    source: Ideal,
    /// `lifts[i][j]`: coefficient of source generator j in element i.
    lifts: Option<Vec<Vec<Polynomial>>>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn source(&self) -> &Ideal {
        &self.source
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].as_constant().is_some()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.internal.iter().map(|g| g.lm().clone()).collect()
    }

    /// Remainder of `f` modulo the basis (the canonical representative of
    /// `f + I`).
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        debug_assert!(same_ring(f.ring(), &self.ring));
        let fo = OPoly::from_poly(f, self.order);
        let (r, _) = reduce_full(fo, &self.internal, self.order, self.ring.field(), false);
        r.into_poly(&self.ring, self.order)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<DivisionCertificate> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let fo = OPoly::from_poly(f, self.order);
        let (r, q) = reduce_full(fo, &self.internal, self.order, self.ring.field(), true);
        let quotients = q
            .expect("tracked")
            .into_iter()
            .map(|ts| Polynomial::from_terms(&self.ring, ts))
            .collect();
        Ok(DivisionCertificate {
            quotients,
            remainder: r.into_poly(&self.ring, self.order),
        })
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// Coefficients c_j with f = Σ c_j · source_j, when f lies in the ideal.
    /// Requires a tracked basis.
    pub fn lift(&self, f: &Polynomial) -> Result<Option<Vec<Polynomial>>> {
        let lifts = self
            .lifts
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("lift needs a tracked Gröbner basis".into()))?;
        let cert = self.normal_form(f)?;
        if !cert.remainder.is_zero() {
            return Ok(None);
        }
        let nsrc = self.source.generators.len();
        let mut coeffs = vec![Polynomial::zero(&self.ring); nsrc];
        for (q, rep) in cert.quotients.iter().zip(lifts) {
            if q.is_zero() {
                continue;
            }
            for (c, r) in coeffs.iter_mut().zip(rep) {
                *c = &*c + &(q * r);
            }
        }
        let mut check = Polynomial::zero(&self.ring);
        for (c, g) in coeffs.iter().zip(&self.source.generators) {
            check = &check + &(c * g);
        }
        if check != *f {
            return Err(Error::Verification("lift certificate does not recombine".into()));
        }
        Ok(Some(coeffs))
    }
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis> {
    run_buchberger(ideal, order, false)
}

/// Polynomial with terms sorted descending in a specific order.
#[derive(Debug, Clone)]
pub(crate) struct OPoly {
    terms: Vec<Term>,
}

impl OPoly {
    fn from_poly(p: &Polynomial, order: MonomialOrder) -> OPoly {
        let mut terms = p.terms().to_vec();
        if order != MonomialOrder::Grevlex {
            terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        }
        OPoly { terms }
    }

    fn into_poly(self, ring: &Arc<Ring>, order: MonomialOrder) -> Polynomial {
        if order == MonomialOrder::Grevlex {
            Polynomial::from_sorted_terms(ring, self.terms)
        } else {
            Polynomial::from_terms(ring, self.terms)
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &Coeff {
        &self.terms[0].1
    }

    fn scale(&mut self, c: &Coeff, field: Field) {
        for t in &mut self.terms {
            t.1 = field.mul(&t.1, c);
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Coeff, field: Field) -> OPoly {
        OPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), field.mul(cc, c)))
                .collect(),
        }
    }
}

/// `a - c·m·g` over sorted term slices.
fn sub_mul(a: &[Term], c: &Coeff, m: &Monomial, g: &[Term], order: MonomialOrder, field: Field) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let neg_c = field.neg(c);
    let mut i = 0;
    let mut gi = g.iter().map(|(gm, gc)| (gm.mul(m), field.mul(gc, &neg_c))).peekable();
    while i < a.len() {
        match gi.peek() {
            None => break,
            Some((gm, _)) => match order.cmp(&a[i].0, gm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => out.push(gi.next().unwrap()),
                Ordering::Equal => {
                    let (gm, gc) = gi.next().unwrap();
                    let s = field.add(&a[i].1, &gc);
                    if !field.is_zero(&s) {
                        out.push((gm, s));
                    }
                    i += 1;
                }
            },
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(gi);
    out
}

/// Full reduction of `f` by `basis` (first divisor in list order wins).
/// Returns the remainder and, when `track`, the quotient terms per element.
fn reduce_full(
    f: OPoly,
    basis: &[OPoly],
    order: MonomialOrder,
    field: Field,
    track: bool,
) -> (OPoly, Option<Vec<Vec<Term>>>) {
    let mut quotients = track.then(|| vec![Vec::new(); basis.len()]);
    let mut p = f.terms;
    let mut start = 0;
    let mut rem: Vec<Term> = Vec::new();
    while start < p.len() {
        let (m, c) = &p[start];
        let hit = basis
            .iter()
            .enumerate()
            .find(|(_, g)| !g.is_zero() && g.lm().divides(m));
        match hit {
            Some((k, g)) => {
                let q = m.div(g.lm()).expect("divides");
                let coef = field.div(c, g.lc());
                if let Some(qs) = quotients.as_mut() {
                    qs[k].push((q.clone(), coef.clone()));
                }
                p = sub_mul(&p[start..], &coef, &q, &g.terms, order, field);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    (OPoly { terms: rem }, quotients)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine<'a> {
    ring: &'a Arc<Ring>,
    order: MonomialOrder,
    field: Field,
    polys: Vec<OPoly>,
    sugar: Vec<u32>,
    reps: Option<Vec<Vec<Polynomial>>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<'a> Engine<'a> {
    fn reducers(&self) -> Vec<OPoly> {
        self.active.iter().map(|&k| self.polys[k].clone()).collect()
    }

    /// Gebauer–Möller update after adding polynomial `h`.
    fn update(&mut self, h: usize) {
        let lh = self.polys[h].lm().clone();
        let sh = self.sugar[h];
        let make = |s: &Self, g: usize| {
            let lg = s.polys[g].lm();
            let lcm = lh.lcm(lg);
            let sugar = (sh + lcm.degree() - lh.degree()).max(s.sugar[g] + lcm.degree() - lg.degree());
            Pair { i: g, j: h, lcm, sugar }
        };
        let mut c: Vec<Pair> = self.active.iter().map(|&g| make(self, g)).collect();
        let mut d: Vec<Pair> = Vec::new();
        while !c.is_empty() {
            let p = c.remove(0);
            let disjoint = lh.coprime(self.polys[p.i].lm());
            let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if disjoint || !dominated {
                d.push(p);
            }
        }
        let e: Vec<Pair> = d
            .into_iter()
            .filter(|p| !lh.coprime(self.polys[p.i].lm()))
            .collect();
        let old = std::mem::take(&mut self.pairs);
        for p in old {
            let keep = !lh.divides(&p.lcm)
                || lh.lcm(self.polys[p.i].lm()) == p.lcm
                || lh.lcm(self.polys[p.j].lm()) == p.lcm;
            if keep {
                self.pairs.push(p);
            }
        }
        self.pairs.extend(e);
        let polys = &self.polys;
        self.active.retain(|&g| !lh.divides(polys[g].lm()));
        self.active.push(h);
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    /// Reduce `f` by the active set, make monic, and record it if nonzero.
    fn insert(&mut self, f: OPoly, rep: Option<Vec<Polynomial>>, sugar: u32) {
        let reducers = self.reducers();
        let (mut r, qs) = reduce_full(f, &reducers, self.order, self.field, rep.is_some());
        if r.is_zero() {
            return;
        }
        let inv = self.field.inv(r.lc());
        r.scale(&inv, self.field);
        if let (Some(reps), Some(mut rep), Some(qs)) = (self.reps.as_mut(), rep, qs) {
            for (k, q) in self.active.iter().zip(qs) {
                if q.is_empty() {
                    continue;
                }
                let q = Polynomial::from_terms(self.ring, q);
                for (a, b) in rep.iter_mut().zip(&reps[*k]) {
                    *a = &*a - &(&q * b);
                }
            }
            for a in rep.iter_mut() {
                *a = a.scale(&inv);
            }
            reps.push(rep);
        }
        self.polys.push(r);
        self.sugar.push(sugar);
        self.update(self.polys.len() - 1);
    }
}

fn run_buchberger(ideal: &Ideal, order: MonomialOrder, track: bool) -> Result<GroebnerBasis> {
    let ring = &ideal.ring;
    let field = ring.field();
    let nsrc = ideal.generators.len();
    let mut eng = Engine {
        ring,
        order,
        field,
        polys: Vec::new(),
        sugar: Vec::new(),
        reps: track.then(Vec::new),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for (j, g) in ideal.generators.iter().enumerate() {
        let rep = track.then(|| {
            (0..nsrc)
                .map(|k| if k == j { Polynomial::one(ring) } else { Polynomial::zero(ring) })
                .collect()
        });
        eng.insert(OPoly::from_poly(g, order), rep, g.total_degree().unwrap_or(0));
    }
    let budget = step_budget();
    let mut steps = 0u64;
    while let Some(pair) = eng.select() {
        steps += 1;
        if steps > budget {
            return Err(Error::BudgetExceeded {
                what: "Buchberger",
                limit: budget,
            });
        }
        let (gi, gj) = (&eng.polys[pair.i], &eng.polys[pair.j]);
        let ui = pair.lcm.div(gi.lm()).expect("lcm");
        let uj = pair.lcm.div(gj.lm()).expect("lcm");
        let one = field.one();
        let a = gi.mul_term(&ui, &one, field);
        let s = OPoly {
            terms: sub_mul(&a.terms, &one, &uj, &gj.terms, order, field),
        };
        let rep = eng.reps.as_ref().map(|reps| {
            let pi = Polynomial::monomial(ring, ui.clone(), one.clone());
            let pj = Polynomial::monomial(ring, uj.clone(), one.clone());
            reps[pair.i]
                .iter()
                .zip(&reps[pair.j])
                .map(|(a, b)| &(&pi * a) - &(&pj * b))
                .collect()
        });
        eng.insert(s, rep, pair.sugar);
    }
    finish(ideal, order, eng)
}

/// Minimalize, interreduce, and sort.
fn finish(ideal: &Ideal, order: MonomialOrder, eng: Engine<'_>) -> Result<GroebnerBasis> {
    let ring = &ideal.ring;
    let field = ring.field();
    let mut idx: Vec<usize> = eng.active.clone();
    idx.sort_by(|&a, &b| order.cmp(eng.polys[b].lm(), eng.polys[a].lm()));
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<usize> = Vec::new();
    for (pos, &k) in idx.iter().enumerate() {
        let lk = eng.polys[k].lm();
        let redundant = idx.iter().enumerate().any(|(pos2, &k2)| {
            pos2 != pos && eng.polys[k2].lm().divides(lk) && (eng.polys[k2].lm() != lk || pos2 > pos)
        });
        if !redundant {
            minimal.push(k);
        }
    }
    let mut internal = Vec::with_capacity(minimal.len());
    let mut lifts: Option<Vec<Vec<Polynomial>>> = eng.reps.as_ref().map(|_| Vec::new());
    for &k in &minimal {
        let others: Vec<OPoly> = minimal
            .iter()
            .map(|&o| if o == k { OPoly { terms: Vec::new() } } else { eng.polys[o].clone() })
            .collect();
        let (r, qs) = reduce_full(eng.polys[k].clone(), &others, order, field, lifts.is_some());
        if let (Some(lifts), Some(reps), Some(qs)) = (lifts.as_mut(), eng.reps.as_ref(), qs) {
            let mut rep = reps[k].clone();
            for (o, q) in minimal.iter().zip(qs) {
                if q.is_empty() {
                    continue;
                }
                let q = Polynomial::from_terms(ring, q);
                for (a, b) in rep.iter_mut().zip(&reps[*o]) {
                    *a = &*a - &(&q * b);
                }
            }
            lifts.push(rep);
        }
        internal.push(r);
    }
    let elements = internal
        .iter()
        .map(|p| p.clone().into_poly(ring, order))
        .collect();
    Ok(GroebnerBasis {
        ring: ring.clone(),
        order,
        elements,
        internal,
        source: ideal.clone(),
        lifts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ideal(r: &Arc<Ring>, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(r, g).unwrap()).collect()).unwrap()
    }

    fn strs(gb: &GroebnerBasis) -> Vec<String> {
        gb.elements().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn single_monomial() {
        let r = Ring::with_char(0, &["x", "y"]).unwrap();
        let gb = ideal(&r, &["x"]).groebner(MonomialOrder::Grevlex).unwrap();
        assert_eq!(strs(&gb), ["x"]);
    }

    #[test]
    fn principal_ideal_is_its_own_basis() {
        let r = Ring::with_char(0, &["x", "y"]).unwrap();
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let gb = ideal(&r, &["y^2 - x^3"]).groebner(order).unwrap();
            assert_eq!(gb.elements().len(), 1);
            assert_eq!(gb.elements()[0], parse_polynomial(&r, "x^3 - y^2").unwrap());
        }
    }

    #[test]
    fn lex_pair_already_reduced() {
        let r = Ring::with_char(0, &["x", "y"]).unwrap();
        let gb = ideal(&r, &["x - y", "y^2"]).groebner(MonomialOrder::Lex).unwrap();
        let mut got = strs(&gb);
        got.sort();
        assert_eq!(got, ["x - y", "y^2"]);
    }

    #[test]
    fn normal_form_one_division_step() {
        let r = Ring::with_char(0, &["x", "y"]).unwrap();
        // lex with y first so that y^2 leads
        let r2 = Ring::with_char(0, &["y", "x"]).unwrap();
        let gb = ideal(&r2, &["y^2 - x^3"]).groebner(MonomialOrder::Lex).unwrap();
        let f = parse_polynomial(&r2, "y^2").unwrap();
        let cert = gb.normal_form(&f).unwrap();
        assert_eq!(cert.remainder, parse_polynomial(&r2, "x^3").unwrap());
        assert!(cert.quotients[0].is_one());
        assert_eq!(cert.recombine(gb.elements()), f);
        let _ = r;
    }

    #[test]
    fn units_survive_proper_ideals() {
        let r = Ring::with_char(3, &["x", "y"]).unwrap();
        let gb = ideal(&r, &["x^2 - y", "x*y"]).groebner(MonomialOrder::Grevlex).unwrap();
        assert!(gb.reduce(&Polynomial::one(&r)).is_one());
    }

    #[test]
    fn cyclic_three_is_deterministic() {
        let r = Ring::with_char(0, &["a", "b", "c"]).unwrap();
        let i = ideal(&r, &["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"]);
        let g1 = i.groebner(MonomialOrder::Grevlex).unwrap();
        let g2 = i.groebner(MonomialOrder::Grevlex).unwrap();
        assert_eq!(strs(&g1), strs(&g2));
        for g in i.generators() {
            assert!(g1.contains(g));
        }
        for e in g1.elements() {
            assert!(e.terms()[0].1 == r.field().one());
        }
    }

    #[test]
    fn tracked_lift_recombines() {
        let r = Ring::with_char(5, &["x", "y", "z"]).unwrap();
        let i = ideal(&r, &["x*y - z", "y^2 - x", "z^2 - x*y"]);
        let gb = i.groebner_tracked(MonomialOrder::Grevlex).unwrap();
        for e in gb.elements() {
            let c = gb.lift(e).unwrap().unwrap();
            assert_eq!(c.len(), 3);
        }
        assert!(gb.lift(&Polynomial::var(&r, 0)).unwrap().is_none() || gb.contains(&Polynomial::var(&r, 0)));
    }

    #[test]
    fn budget_is_enforced() {
        let r = Ring::with_char(0, &["a", "b", "c"]).unwrap();
        let i = ideal(&r, &["a^2 + b*c - 1", "b^2 + a*c - 2", "c^2 + a*b - 3"]);
        set_step_budget(1);
        let res = i.groebner(MonomialOrder::Lex);
        set_step_budget(DEFAULT_STEP_BUDGET);
        assert!(matches!(res, Err(Error::BudgetExceeded { .. })));
    }
}
