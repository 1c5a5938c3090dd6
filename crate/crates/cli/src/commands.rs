//! Verb dispatch.

use hasse::artinian::ArtinianModel;
use hasse::geometry::{check_jhet, fitting_ideal, generic_generators, jacobian, rank_at_prime};
use hasse::integrator::{
    integrate_ci, integrate_equidim, integrate_reduced, EquidimOptions, Integration, LinearizedSystem, Outcome,
};
use hasse::leaps::{
    degree_bounded, is_m_integrable, leap_scan, leap_scan_degree_bounded, Certification, Integrability, LeapReport,
    Mode, SearchStats,
};
use hasse::{derivation_check, HsDerivation, Polynomial, QuotientIdeal, Validation};
use serde_json::{json, Value};

use crate::problem::{row_json, Problem};
use crate::report::{Entry, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodChoice {
    Auto,
    Ci,
    Equidim,
    Reduced,
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub max_order: Option<usize>,
    pub method: Option<MethodChoice>,
    pub degree_bound: Option<u32>,
    pub ell: Option<usize>,
}

pub const DEFAULT_INTEGRATE_ORDER: usize = 4;
pub const DEFAULT_LEAP_BOUND: usize = 8;

/// Results, transcript, and an optional failure that overrides the
/// transcript-derived status.
pub type Outputs = (Value, Vec<Entry>, Option<Failure>);

pub fn dispatch(verb: &str, problem: &Problem, opts: &Options) -> Result<Outputs, Failure> {
    match verb {
        "integrate" => integrate(problem, opts),
        "leaps" => leaps(problem, opts),
        "fitting" => fitting(problem, opts),
        "genericgens" => genericgens(problem),
        "check-hs" => check_hs(problem),
        "derivations" => derivations(problem),
        _ => Err(Failure::input(format!("unknown verb {verb:?}"))),
    }
}

fn names(p: &Problem) -> &[String] {
    p.algebra.ring().var_names()
}

fn hs_json(p: &Problem, d: &HsDerivation) -> Value {
    Value::Array(d.table().iter().map(|r| Value::Object(row_json(names(p), r))).collect())
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn stats_json(s: &SearchStats) -> Value {
    json!({
        "nodes": s.nodes,
        "dead_ends": s.dead_ends,
        "deepest": s.deepest,
        "first_dead_end": s.first_dead_end.as_ref().map(|d| json!({
            "order": d.order,
            "obstruction": strings(&d.obstruction),
        })),
    })
}

fn integrate(p: &Problem, opts: &Options) -> Result<Outputs, Failure> {
    let delta = p
        .derivation
        .as_ref()
        .ok_or_else(|| Failure::input("integrate needs a \"derivation\""))?;
    let m = opts.max_order.unwrap_or(DEFAULT_INTEGRATE_ORDER);
    let alg = &p.algebra;
    let equidim = |d: &Polynomial| {
        integrate_equidim(
            alg,
            delta,
            d,
            m,
            &EquidimOptions {
                primes: p.minimal_primes(),
                codim: p.spec.assertions.equidimensional_codim,
                ..Default::default()
            },
        )
    };
    let need_delta = || {
        p.delta
            .as_ref()
            .ok_or_else(|| Failure::input("this method needs \"delta\""))
    };
    let res = match opts.method.unwrap_or(MethodChoice::Auto) {
        MethodChoice::Ci => integrate_ci(alg, delta, m)?,
        MethodChoice::Equidim => equidim(need_delta()?)?,
        MethodChoice::Reduced => integrate_reduced(alg, delta, need_delta()?, &p.minimal_primes(), m)?,
        MethodChoice::Auto => match &p.delta {
            Some(d) if p.spec.assertions.radical == Some(true) && !p.minimal_primes().is_empty() => {
                integrate_reduced(alg, delta, d, &p.minimal_primes(), m)?
            }
            Some(d) => equidim(d)?,
            None => return integrate_search(p, delta, m, opts),
        },
    };
    Ok(integration_outputs(p, &res))
}

/// Auto without Δ: decide by search when possible, else the complete
/// intersection construction.
fn integrate_search(p: &Problem, delta: &[Polynomial], m: usize, opts: &Options) -> Result<Outputs, Failure> {
    let alg = &p.algebra;
    let searchable = alg.field().characteristic() > 0 && ArtinianModel::new(alg).is_ok();
    let (method, answer) = match opts.degree_bound {
        Some(d) => ("degree-bounded", degree_bounded(alg, delta, m, d)?),
        None if searchable && p.spec.assertions.complete_intersection != Some(true) => {
            ("artinian-linear", is_m_integrable(alg, delta, m, Mode::Exact)?)
        }
        None => return Ok(integration_outputs(p, &integrate_ci(alg, delta, m)?)),
    };
    let mut transcript = vec![Entry::new(Some(1), "delta is a derivation", derivation_check(alg, delta)?)];
    let (outcome, derivation, stats, failure) = match &answer {
        Integrability::Yes(w) => {
            transcript.push(Entry::new(Some(m), "witness validates", w.validate()?.is_valid()));
            transcript.push(Entry::new(Some(m), "witness has D_1 = delta", w.first_component() == delta));
            ("extended", hs_json(p, w), Value::Null, None)
        }
        Integrability::No(s) => (
            "obstructed",
            Value::Null,
            stats_json(s),
            Some(Failure::new("obstructed", format!("not {m}-integrable: exhausted {} nodes", s.nodes))),
        ),
        Integrability::Unknown(why) => ("inconclusive", Value::Null, Value::Null, Some(Failure::new("inconclusive", why.clone()))),
    };
    let results = json!({
        "method": method,
        "outcome": outcome,
        "requested_order": m,
        "derivation": derivation,
        "search": stats,
    });
    Ok((results, transcript, failure))
}

fn integration_outputs(p: &Problem, res: &Integration) -> Outputs {
    let (outcome, reason) = match &res.outcome {
        Outcome::Extended => ("extended", None),
        Outcome::Obstructed { order, reason } => (
            "obstructed",
            Some(Failure::new("obstructed", format!("order {order}: {reason}"))),
        ),
        Outcome::Inconclusive { order, reason } => (
            "inconclusive",
            Some(Failure::new("budget", format!("order {order}: {reason}"))),
        ),
    };
    let results = json!({
        "method": res.method.name(),
        "outcome": outcome,
        "requested_order": res.requested_order,
        "reached_order": res.derivation.length(),
        "constraint": strings(&res.constraint),
        "derivation": hs_json(p, &res.derivation),
    });
    let transcript = res
        .transcript
        .iter()
        .map(|c| Entry::new(Some(c.order), c.what.clone(), c.passed))
        .collect();
    (results, transcript, reason)
}

fn leaps(p: &Problem, opts: &Options) -> Result<Outputs, Failure> {
    let alg = &p.algebra;
    let bound = opts.max_order.unwrap_or(DEFAULT_LEAP_BOUND);
    let report = match opts.degree_bound {
        Some(d) => {
            let gens = match &p.derivation {
                Some(delta) => vec![delta.clone()],
                None if alg.generators().iter().all(|g| g.is_zero()) => (0..alg.nvars())
                    .map(|i| (0..alg.nvars()).map(|j| if i == j { alg.one() } else { alg.zero() }).collect())
                    .collect(),
                None => {
                    return Err(Failure::input(
                        "degree-bounded leaps need a \"derivation\" unless the ideal is zero",
                    ))
                }
            };
            leap_scan_degree_bounded(alg, &gens, bound, d)?
        }
        None => leap_scan(alg, bound)?,
    };
    Ok(leap_outputs(p, &report))
}

fn leap_outputs(p: &Problem, r: &LeapReport) -> Outputs {
    let mut transcript = Vec::new();
    let mut witnesses = Vec::new();
    for l in &r.leaps {
        let valid = l.integral.validate().map(|v| v.is_valid()).unwrap_or(false);
        transcript.push(Entry::new(
            Some(l.s - 1),
            format!("leap {}: witness integral validates", l.s),
            valid && l.integral.first_component() == l.witness,
        ));
        transcript.push(Entry::new(
            Some(l.s),
            format!(
                "leap {}: no integral to order {} ({} nodes, {} dead ends)",
                l.s, l.s, l.certificate.nodes, l.certificate.dead_ends
            ),
            l.certificate.first_dead_end.is_some(),
        ));
        witnesses.push(json!({
            "s": l.s,
            "witness": row_json(names(p), &l.witness),
            "integral": hs_json(p, &l.integral),
            "certificate": stats_json(&l.certificate),
        }));
    }
    let certification = match r.certification {
        Certification::Exact => "exact".to_string(),
        Certification::DegreeBounded(d) => format!("degree-bounded({d})"),
    };
    let results = json!({
        "certification": certification,
        "bound": r.bound,
        "scanned": r.scanned,
        "complete": r.complete,
        "leaps": r.leaps.iter().map(|l| l.s).collect::<Vec<_>>(),
        "ider_dims": r.dims,
        "certified_power": r.certified_power,
        "leap_bound": r.leap_bound,
        "unknown_from": r.unknown_from,
        "nodes": r.nodes,
        "witnesses": witnesses,
    });
    let failure = (!r.complete).then(|| match r.unknown_from {
        Some(s) => Failure::new("inconclusive", format!("no integral found within the degree bound at order {s}")),
        None => Failure::new("budget", format!("search budget exhausted after order {}", r.scanned)),
    });
    (results, transcript, failure)
}

fn fitting(p: &Problem, opts: &Options) -> Result<Outputs, Failure> {
    let ell = opts.ell.ok_or_else(|| Failure::input("fitting needs --ell"))?;
    let alg = &p.algebra;
    let j = fitting_ideal(alg, ell)?;
    let mut transcript = Vec::new();
    if ell > 0 {
        let below = fitting_ideal(alg, ell - 1)?.ideal(alg)?;
        transcript.push(Entry::new(
            None,
            format!("J_{ell} is contained in J_{}", ell - 1),
            below.contains_ideal(&j.ideal(alg)?),
        ));
    }
    let minors: Vec<Value> = j
        .minors
        .iter()
        .map(|m| {
            json!({
                "rows": m.rows.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "cols": m.cols.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "value": m.value.to_string(),
            })
        })
        .collect();
    let results = json!({
        "ell": ell,
        "generators": strings(&j.generators()),
        "minors": minors,
    });
    Ok((results, transcript, None))
}

fn genericgens(p: &Problem) -> Result<Outputs, Failure> {
    let primes = p.minimal_primes();
    if primes.is_empty() {
        return Err(Failure::input("genericgens needs \"primes\" with purpose \"minimal\""));
    }
    let alg = &p.algebra;
    let mut transcript: Vec<Entry> = check_jhet(alg, &primes)?
        .into_iter()
        .enumerate()
        .map(|(i, ok)| Entry::new(None, format!("J^het holds at prime {}", i + 1), ok))
        .collect();
    if transcript.iter().any(|e| !e.passed) {
        return Ok((Value::Null, transcript, None));
    }
    let g = generic_generators(alg, &primes)?;
    if !g.f.is_empty() {
        let jac = jacobian(&g.f)?;
        for (i, q) in primes.iter().enumerate() {
            let rank = rank_at_prime(&jac, q)?;
            transcript.push(Entry::new(
                None,
                format!("rank of J(F) at prime {} is its height {}", i + 1, q.height()),
                rank == q.height(),
            ));
        }
    }
    let gens_in_i = g.s.iter().all(|x| alg.is_zero(x));
    transcript.push(Entry::new(None, "S lies in I", gens_in_i));
    let results = json!({
        "r": g.r,
        "f": strings(&g.f),
        "s": strings(&g.s),
        "ranks": g.ranks,
    });
    Ok((results, transcript, None))
}

fn check_hs(p: &Problem) -> Result<Outputs, Failure> {
    let d = p.hs.as_ref().ok_or_else(|| Failure::input("check-hs needs \"hs\""))?;
    let alg = &p.algebra;
    let mut transcript = Vec::new();
    let mut failure = None;
    let mut failing = Value::Null;
    for nu in 1..=d.length() {
        let v = d.truncate(nu)?.validate()?;
        if let Validation::Invalid { generator, order } = v {
            let g = &alg.generators()[generator];
            transcript.push(Entry::new(Some(order), format!("generator {} ({g}) maps into I", generator + 1), false));
            failure = Some(Failure::verification(format!(
                "generator {} ({g}) fails at order {order}",
                generator + 1
            )));
            failing = json!({"generator": generator + 1, "polynomial": g.to_string(), "order": order});
            break;
        }
        transcript.push(Entry::new(Some(nu), "every generator maps into I", true));
    }
    if failure.is_none() {
        for (i, q) in p.primes.iter().enumerate() {
            let ideal = QuotientIdeal::new(alg, q.generators())?;
            transcript.push(Entry::new(
                Some(d.length()),
                format!("logarithmic along prime {}", i + 1),
                d.is_logarithmic(&ideal)?,
            ));
        }
    }
    let results = json!({
        "length": d.length(),
        "valid": failure.is_none(),
        "failing": failing,
        "first_component": row_json(names(p), &d.first_component()),
    });
    Ok((results, transcript, failure))
}

fn derivations(p: &Problem) -> Result<Outputs, Failure> {
    let alg = &p.algebra;
    let mut transcript = Vec::new();
    if let Some(delta) = &p.derivation {
        transcript.push(Entry::new(None, "the given map is a derivation", derivation_check(alg, delta)?));
    }
    let unit = |i: usize| -> Vec<Polynomial> {
        (0..alg.nvars()).map(|j| if i == j { alg.one() } else { alg.zero() }).collect()
    };
    let results = if alg.generators().iter().all(|g| g.is_zero()) {
        json!({
            "kind": "module-generators",
            "basis": (0..alg.nvars()).map(|i| row_json(names(p), &unit(i))).collect::<Vec<_>>(),
        })
    } else {
        match ArtinianModel::new(alg) {
            Ok(model) => {
                let sys = LinearizedSystem::new(&model, alg.generators())?;
                let basis: Vec<_> = sys
                    .kernel()
                    .iter()
                    .map(|v| row_json(names(p), &model.vec_element(v)))
                    .collect();
                json!({"kind": "vector-space-basis", "dimension": basis.len(), "basis": basis})
            }
            Err(hasse::Error::NotArtinian) if p.derivation.is_some() => Value::Null,
            Err(e) => return Err(e.into()),
        }
    };
    Ok((results, transcript, None))
}
