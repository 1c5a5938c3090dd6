//! The JSON problem format shared by every verb.

use std::sync::Arc;

use hasse::geometry::PrimeWitness;
use hasse::{Field, HsDerivation, Ideal, MonomialOrder, Polynomial, PresentedAlgebra, Ring};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::report::Failure;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assertions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_intersection: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equidimensional_codim: Option<usize>,
}

impl Assertions {
    fn is_empty(&self) -> bool {
        *self == Assertions::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeSpec {
    pub generators: Vec<String>,
    /// Free-form tag; primes tagged "minimal" (the default) form the
    /// decomposition of I.
    #[serde(default = "minimal")]
    pub purpose: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
}

fn minimal() -> String {
    "minimal".into()
}

/// The problem file as written.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub characteristic: u64,
    pub variables: Vec<String>,
    #[serde(default)]
    pub ideal: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    /// Variable → image of a derivation δ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<Map<String, Value>>,
    /// The element Δ scaling δ for the equidimensional and reduced methods.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    /// Rows D_1, D_2, … of an HS-derivation, each a map variable → image.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hs: Option<Vec<Map<String, Value>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<PrimeSpec>,
    #[serde(default, skip_serializing_if = "Assertions::is_empty")]
    pub assertions: Assertions,
}

/// A parsed and validated problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub spec: ProblemSpec,
    pub algebra: Arc<PresentedAlgebra>,
    pub derivation: Option<Vec<Polynomial>>,
    pub delta: Option<Polynomial>,
    pub hs: Option<HsDerivation>,
    pub primes: Vec<PrimeWitness>,
}

pub fn parse_order(name: &str) -> Result<MonomialOrder, Failure> {
    match name {
        "grevlex" => Ok(MonomialOrder::Grevlex),
        "lex" => Ok(MonomialOrder::Lex),
        _ => Err(Failure::input(format!("unknown monomial order {name:?} (expected grevlex or lex)"))),
    }
}

/// Parses problem text; `order` overrides the file's monomial order.
pub fn parse_problem(text: &str, order: Option<MonomialOrder>) -> Result<Problem, Failure> {
    let spec: ProblemSpec =
        serde_json::from_str(text).map_err(|e| Failure::new("syntax", format!("problem file: {e}")))?;
    build(spec, order)
}

fn build(spec: ProblemSpec, order: Option<MonomialOrder>) -> Result<Problem, Failure> {
    let order = match (order, &spec.order) {
        (Some(o), _) => o,
        (None, Some(name)) => parse_order(name)?,
        (None, None) => MonomialOrder::Grevlex,
    };
    let field = Field::with_characteristic(spec.characteristic)?;
    let ring = Ring::from_names(field, spec.variables.clone())?;
    let gens = spec
        .ideal
        .iter()
        .map(|s| hasse::parse_polynomial(&ring, s))
        .collect::<hasse::Result<Vec<_>>>()?;
    let algebra = PresentedAlgebra::with_order(Ideal::new(&ring, gens)?, order)?;
    let derivation = spec
        .derivation
        .as_ref()
        .map(|m| row(&algebra, m, "derivation"))
        .transpose()?;
    let delta = spec.delta.as_deref().map(|s| algebra.parse_element(s)).transpose()?;
    let hs = match &spec.hs {
        Some(rows) => {
            let table = rows
                .iter()
                .enumerate()
                .map(|(i, m)| row(&algebra, m, &format!("hs row {}", i + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            Some(HsDerivation::new(&algebra, table)?)
        }
        None => None,
    };
    let primes = spec
        .primes
        .iter()
        .map(|p| {
            let g = p
                .generators
                .iter()
                .map(|s| algebra.parse_element(s))
                .collect::<hasse::Result<Vec<_>>>()?;
            PrimeWitness::new(&algebra, g, p.height)
        })
        .collect::<hasse::Result<Vec<_>>>()?;
    Ok(Problem {
        spec,
        algebra,
        derivation,
        delta,
        hs,
        primes,
    })
}

/// Images of the variables; missing entries are zero.
fn row(alg: &Arc<PresentedAlgebra>, map: &Map<String, Value>, what: &str) -> Result<Vec<Polynomial>, Failure> {
    let ring = alg.ring();
    let mut out = vec![alg.zero(); alg.nvars()];
    for (name, v) in map {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Failure::input(format!("{what}: unknown variable {name:?}")))?;
        let s = v
            .as_str()
            .ok_or_else(|| Failure::input(format!("{what}: image of {name} must be a string")))?;
        out[i] = alg.parse_element(s)?;
    }
    Ok(out)
}

/// Variable → polynomial string, in variable order.
pub fn row_json(names: &[String], row: &[Polynomial]) -> Map<String, Value> {
    names
        .iter()
        .zip(row)
        .map(|(n, p)| (n.clone(), Value::String(p.to_string())))
        .collect()
}

impl Problem {
    /// Primes tagged as minimal.
    pub fn minimal_primes(&self) -> Vec<PrimeWitness> {
        self.primes
            .iter()
            .zip(&self.spec.primes)
            .filter(|(_, s)| s.purpose == "minimal")
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// The problem with every polynomial printed in normal form.
    pub fn canonical(&self) -> ProblemSpec {
        let names = self.algebra.ring().var_names();
        let show = |ps: &[Polynomial]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        ProblemSpec {
            characteristic: self.spec.characteristic,
            variables: names.to_vec(),
            ideal: show(self.algebra.generators()),
            order: Some(self.algebra.order().name()),
            derivation: self.derivation.as_ref().map(|d| row_json(names, d)),
            delta: self.delta.as_ref().map(|d| d.to_string()),
            hs: self
                .hs
                .as_ref()
                .map(|h| h.table().iter().map(|r| row_json(names, r)).collect()),
            primes: self
                .primes
                .iter()
                .zip(&self.spec.primes)
                .map(|(p, s)| PrimeSpec {
                    generators: show(p.generators()),
                    purpose: s.purpose.clone(),
                    height: s.height,
                })
                .collect(),
            assertions: self.spec.assertions.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_problem() {
        let p = parse_problem(r#"{"characteristic": 2, "variables": ["x"], "ideal": ["x^2"]}"#, None).unwrap();
        assert_eq!(p.algebra.nvars(), 1);
        assert!(p.derivation.is_none());
    }

    #[test]
    fn rejections() {
        let undeclared = parse_problem(r#"{"characteristic": 2, "variables": ["x"], "ideal": ["y^2"]}"#, None);
        assert!(undeclared.unwrap_err().message.contains("unknown variable"));
        let four = parse_problem(r#"{"characteristic": 4, "variables": ["x"], "ideal": []}"#, None).unwrap_err();
        assert_eq!(four.code, "characteristic");
        assert!(four.message.contains("characteristic must be 0 or prime"));
        let dup = parse_problem(r#"{"characteristic": 2, "variables": ["x", "x"]}"#, None).unwrap_err();
        assert_eq!(dup.code, "input");
        let extra = parse_problem(r#"{"characteristic": 2, "variables": ["x"], "bogus": 1}"#, None).unwrap_err();
        assert_eq!(extra.code, "syntax");
        let der = parse_problem(r#"{"characteristic": 2, "variables": ["x"], "derivation": {"z": "1"}}"#, None);
        assert!(der.unwrap_err().message.contains("unknown variable"));
    }

    #[test]
    fn canonical_is_a_fixed_point() {
        let text = r#"{"characteristic": 3, "variables": ["x", "y"], "ideal": ["x^3 + y^2 + 2*y^2"],
            "derivation": {"y": "x + x"}, "primes": [{"generators": ["y", "x"], "height": 2}]}"#;
        let c1 = parse_problem(text, None).unwrap().canonical();
        let s1 = serde_json::to_string(&c1).unwrap();
        let c2 = parse_problem(&s1, None).unwrap().canonical();
        assert_eq!(s1, serde_json::to_string(&c2).unwrap());
    }

    #[test]
    fn order_override() {
        let text = r#"{"characteristic": 2, "variables": ["x"], "order": "lex"}"#;
        assert_eq!(parse_problem(text, None).unwrap().algebra.order(), MonomialOrder::Lex);
        assert_eq!(
            parse_problem(text, Some(MonomialOrder::Grevlex)).unwrap().algebra.order(),
            MonomialOrder::Grevlex
        );
        assert!(parse_problem(r#"{"characteristic": 2, "variables": ["x"], "order": "deglex"}"#, None).is_err());
    }
}
