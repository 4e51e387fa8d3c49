//! JSON rendering of polynomials and exit-code mapping.

use std::collections::BTreeMap;

use serde::Serialize;
use skeinlab::poly::{LaurentFraction, LaurentPoly, Var};
use skeinlab::Error;

pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SIZE: i32 = 3;
pub const EXIT_MISSING: i32 = 4;

#[derive(Serialize)]
pub struct Term {
    pub monomial: BTreeMap<&'static str, i32>,
    pub coeff: String,
}

pub fn terms(p: &LaurentPoly) -> Vec<Term> {
    p.terms()
        .map(|(m, c)| Term {
            monomial: m.vars().map(|(v, e)| (v.name(), e)).collect(),
            coeff: c.to_string(),
        })
        .collect()
}

pub fn variables(f: &LaurentFraction) -> Vec<&'static str> {
    Var::ALL
        .iter()
        .filter(|&&v| f.contains_var(v))
        .map(|v| v.name())
        .collect()
}

#[derive(Serialize)]
pub struct InvariantOutput {
    pub input: String,
    pub invariant: String,
    pub route: String,
    pub variables: Vec<&'static str>,
    pub normalization: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub substitutions: BTreeMap<&'static str, String>,
    pub text: String,
    pub polynomial: Vec<Term>,
    /// Present only for genuine rational functions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub denominator: Option<Vec<Term>>,
}

impl InvariantOutput {
    pub fn new(
        input: String,
        invariant: &str,
        route: &str,
        normalization: String,
        substitutions: BTreeMap<&'static str, String>,
        value: &LaurentFraction,
    ) -> Self {
        let den = value.den();
        InvariantOutput {
            input,
            invariant: invariant.to_string(),
            route: route.to_string(),
            variables: variables(value),
            normalization,
            substitutions,
            text: value.to_string(),
            polynomial: terms(value.num()),
            denominator: (!den.is_one()).then(|| terms(den)),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Diagram(_) | Error::Poly(_) => EXIT_PARSE,
        Error::TooManyCrossings { .. } | Error::SizeCap(_) => EXIT_SIZE,
        Error::MissingData(_) => EXIT_MISSING,
        _ => EXIT_FAIL,
    }
}

/// Row status used by the batch table.
pub fn status(e: &Error) -> &'static str {
    match e {
        Error::Diagram(_) | Error::Poly(_) => "parse-error",
        Error::TooManyCrossings { .. } | Error::SizeCap(_) => "size-cap",
        Error::MissingData(_) => "missing-data",
        _ => "error",
    }
}
