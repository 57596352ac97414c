//! Turning parsed expressions into library structures and elements.

use num_traits::{ToPrimitive, Zero};

use subatomica_core::monoids::{MonoidDescriptor, MonoidElement};
use subatomica_core::poly::{LaurentPoly, SemiPoly};
use subatomica_core::semidomains::{ExpBase, ExpSum, LexPoly, MixedPoly, SemidomainDescriptor as D, SemidomainElement as E};
use subatomica_core::witness::{Element, Structure};
use subatomica_core::{QuadExt, QuadPoly, RatPoly, Rational};

use crate::expr::{parse_structure, parse_value, parse_values, Arg, StructureExpr, Sum, Value};

/// A failure to interpret input, reported with status `error`.
#[derive(Debug)]
pub enum InputError {
    Parse {
        what: &'static str,
        text: String,
        err: crate::expr::ParseError,
    },
    Invalid(String),
    /// Well-formed input that is not an element of the structure.
    NotMember(String),
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Parse { what, text, err } => write!(f, "cannot parse {what} \"{text}\": {err}"),
            InputError::Invalid(m) | InputError::NotMember(m) => write!(f, "{m}"),
        }
    }
}

impl From<subatomica_core::Error> for InputError {
    fn from(e: subatomica_core::Error) -> Self {
        InputError::Invalid(e.to_string())
    }
}

fn invalid<T>(m: impl Into<String>) -> Result<T, InputError> {
    Err(InputError::Invalid(m.into()))
}

pub const KINDS: &str = "numerical, puiseux, P, MF, MAA, dyadic, lexcone, N0, Z, QGe1, expsum, mixed, lexalg, poly, laurent";

/// Keys that carry an element rather than a parameter.
const ELEMENT_KEYS: [&str; 4] = ["f", "r", "q", "elem"];

fn base_named(name: &str) -> Result<D, InputError> {
    match name {
        "N0" => Ok(D::N0),
        "Z" | "Integers" => Ok(D::Integers),
        "QGe1" => Ok(D::QGe1),
        other => invalid(format!("unknown coefficient semidomain '{other}' (expected N0, Z or QGe1)")),
    }
}

fn rational_of(v: &Value) -> Result<Rational, InputError> {
    match v {
        Value::Sum(s) => s.as_rational().ok_or_else(|| InputError::Invalid(format!("{s} is not a rational number"))),
        Value::Pair(..) => invalid(format!("{v} is not a rational number")),
    }
}

fn name_arg(s: &StructureExpr, key: &str, default: Option<&str>) -> Result<String, InputError> {
    match (s.get(key), default) {
        (Some(Arg::Name(n)), _) => Ok(n.clone()),
        (Some(other), _) => invalid(format!("{key}={other} should be a name")),
        (None, Some(d)) => Ok(d.to_string()),
        (None, None) => invalid(format!("{} needs {key}=...", s.kind)),
    }
}

fn check_keys(s: &StructureExpr, allowed: &[&str]) -> Result<(), InputError> {
    for (k, _) in &s.args {
        if !allowed.contains(&k.as_str()) && !ELEMENT_KEYS.contains(&k.as_str()) {
            return invalid(format!("{} does not take {k}=...", s.kind));
        }
    }
    Ok(())
}

pub fn structure_of(s: &StructureExpr) -> Result<Structure, InputError> {
    let kind = s.kind.as_str();
    let allowed: &[&str] = match kind {
        "numerical" | "puiseux" => &["gens"],
        "expsum" | "poly" | "laurent" => &["base"],
        "mixed" => &["d"],
        _ => &[],
    };
    check_keys(s, allowed)?;
    let gens = || -> Result<Vec<Rational>, InputError> {
        match s.get("gens") {
            Some(Arg::List(v)) => v.iter().map(rational_of).collect(),
            _ => invalid(format!("{kind} needs gens=[...]")),
        }
    };
    Ok(match kind {
        "numerical" => {
            let g = gens()?;
            let ints = g
                .iter()
                .map(|q| q.is_integer().then(|| q.to_integer().to_u64()).flatten())
                .collect::<Option<Vec<u64>>>()
                .ok_or_else(|| InputError::Invalid("numerical generators must be nonnegative integers".into()))?;
            Structure::Monoid(MonoidDescriptor::numerical(&ints)?)
        }
        "puiseux" => Structure::Monoid(MonoidDescriptor::puiseux(gens()?)?),
        "P" => Structure::Monoid(MonoidDescriptor::PrimeReciprocal),
        "MF" => Structure::Monoid(MonoidDescriptor::PrimeReciprocalPlusQge1),
        "MAA" => Structure::Monoid(MonoidDescriptor::AlmostAtomicExample),
        "dyadic" => Structure::Monoid(MonoidDescriptor::Dyadic),
        "lexcone" => Structure::Monoid(MonoidDescriptor::LexCone),
        "N0" => Structure::Semidomain(D::N0),
        "Z" | "Integers" => Structure::Semidomain(D::Integers),
        "QGe1" => Structure::Semidomain(D::QGe1),
        "expsum" => Structure::Semidomain(D::ExpSum(match name_arg(s, "base", None)?.as_str() {
            "MF" => ExpBase::MF,
            "MAA" => ExpBase::MAA,
            other => return invalid(format!("expsum base must be MF or MAA, not {other}")),
        })),
        "mixed" => {
            let d = match s.get("d") {
                None => 2,
                Some(Arg::Value(v)) => rational_of(v)?
                    .to_integer()
                    .to_u64()
                    .filter(|&d| squarefree(d))
                    .ok_or_else(|| InputError::Invalid("mixed{d=...} needs a squarefree integer at least 2".into()))?,
                Some(other) => return invalid(format!("d={other} should be an integer")),
            };
            Structure::Semidomain(D::MixedRing { quad_d: d })
        }
        "lexalg" => Structure::Semidomain(D::LexConeAlgebra),
        "poly" => Structure::Poly(base_named(&name_arg(s, "base", None)?)?),
        "laurent" => Structure::Laurent(base_named(&name_arg(s, "base", None)?)?),
        other => return invalid(format!("unknown structure kind '{other}' (expected one of {KINDS})")),
    })
}

fn squarefree(d: u64) -> bool {
    d >= 2 && (2..).take_while(|p| p * p <= d).all(|p| d % (p * p) != 0)
}

/// The element embedded in a structure expression, if any.
pub fn embedded_element(s: &StructureExpr) -> Result<Option<Value>, InputError> {
    let mut found = None;
    for (k, v) in &s.args {
        if ELEMENT_KEYS.contains(&k.as_str()) {
            if found.is_some() {
                return invalid("more than one element given in the structure");
            }
            found = Some(match v {
                Arg::Value(v) => v.clone(),
                other => return invalid(format!("{k}={other} is not an element")),
            });
        }
    }
    Ok(found)
}

fn only_x(s: &Sum) -> Result<(), InputError> {
    if s.terms().iter().any(|(m, _)| !m.e.is_zero() || m.lex != (0, 0)) {
        return invalid(format!("{s} should be a polynomial in x"));
    }
    Ok(())
}

fn rational_coeffs(s: &Sum) -> Result<Vec<(i64, Rational)>, InputError> {
    only_x(s)?;
    s.terms()
        .iter()
        .map(|(m, c)| match c.as_rational() {
            Some(q) => Ok((m.x, q.clone())),
            None => invalid(format!("{s} has an irrational coefficient")),
        })
        .collect()
}

fn dense<C: Clone + Zero>(terms: &[(i64, C)], shift: i64) -> Vec<C> {
    let top = terms.iter().map(|(k, _)| k - shift).max().unwrap_or(-1);
    let mut v = vec![C::zero(); (top + 1) as usize];
    for (k, c) in terms {
        v[(k - shift) as usize] = c.clone();
    }
    v
}

/// Interprets a parsed value as an element of `st`.
pub fn element_of(st: &Structure, v: &Value) -> Result<Element, InputError> {
    let not_member = |e: subatomica_core::Error| InputError::NotMember(format!("{v} is not an element of {}: {e}", st.name()));
    let el = build(st, v, &not_member)?;
    if !st.contains(&el).map_err(not_member)? {
        return Err(InputError::NotMember(format!("{v} is not an element of {}", st.name())));
    }
    Ok(el)
}

fn build(st: &Structure, v: &Value, not_member: &dyn Fn(subatomica_core::Error) -> InputError) -> Result<Element, InputError> {
    let sum = |v: &Value| -> Result<Sum, InputError> {
        match v {
            Value::Sum(s) => Ok(s.clone()),
            Value::Pair(..) => invalid(format!("{v}: pairs are elements of the lexicographic cone only")),
        }
    };
    let el = match st {
        Structure::Monoid(MonoidDescriptor::LexCone) => match v {
            Value::Pair(b, c) => Element::Monoid(MonoidElement::Pair(*b, *c)),
            _ => return invalid(format!("{v}: elements of the lexicographic cone are pairs (b,c)")),
        },
        Structure::Monoid(_) => Element::Monoid(MonoidElement::Value(rational_of(v)?)),
        Structure::Semidomain(d) => Element::Semi(match d {
            D::N0 | D::Integers | D::QGe1 => E::Scalar(rational_of(v)?),
            D::ExpSum(_) => {
                let s = sum(v)?;
                let mut terms = Vec::new();
                for (m, c) in s.terms() {
                    let q = c
                        .as_rational()
                        .filter(|q| q.is_integer())
                        .ok_or_else(|| InputError::Invalid(format!("{s}: exponential sums take integer coefficients")))?;
                    if m.x != 0 || m.lex != (0, 0) {
                        return invalid(format!("{s} should be a sum of c*e^(q)"));
                    }
                    terms.push((m.e.clone(), q.to_integer()));
                }
                E::ExpSum(ExpSum::new(terms).map_err(not_member)?)
            }
            D::MixedRing { quad_d } => {
                let s = sum(v)?;
                only_x(&s)?;
                if let Some(d) = v.surd().filter(|d| d != quad_d) {
                    return invalid(format!("{s} uses sqrt{d} in the ring over sqrt{quad_d}"));
                }
                if s.terms().iter().any(|(m, _)| m.x < 0) {
                    return invalid(format!("{s} has a negative power of x"));
                }
                let terms: Vec<(i64, QuadExt)> = s.terms().iter().map(|(m, c)| (m.x, c.clone())).collect();
                E::Mixed(MixedPoly::new(QuadPoly::new(dense(&terms, 0)), *quad_d).map_err(not_member)?)
            }
            D::LexConeAlgebra => {
                let s = sum(v)?;
                let mut terms = Vec::new();
                for (m, c) in s.terms() {
                    if m.x != 0 || !m.e.is_zero() {
                        return invalid(format!("{s} should be a sum of q*X^(b,c)"));
                    }
                    let q = c.as_rational().ok_or_else(|| InputError::Invalid(format!("{s} has an irrational coefficient")))?;
                    terms.push((m.lex, q.clone()));
                }
                E::Lex(LexPoly::new(terms).map_err(not_member)?)
            }
        }),
        Structure::Poly(base) => {
            let terms = rational_coeffs(&sum(v)?)?;
            if terms.iter().any(|(k, _)| *k < 0) {
                return invalid(format!("{v} has a negative power of x; use laurent{{...}}"));
            }
            Element::Poly(SemiPoly::new(*base, RatPoly::new(dense(&terms, 0))).map_err(not_member)?)
        }
        Structure::Laurent(base) => {
            let terms = rational_coeffs(&sum(v)?)?;
            let low = terms.iter().map(|(k, _)| *k).min().unwrap_or(0);
            Element::Laurent(LaurentPoly::new(low, SemiPoly::new(*base, RatPoly::new(dense(&terms, low))).map_err(not_member)?))
        }
    };
    Ok(el)
}

pub fn parse_structure_arg(text: &str) -> Result<(Structure, Option<Value>), InputError> {
    let s = parse_structure(text).map_err(|err| InputError::Parse { what: "structure", text: text.into(), err })?;
    Ok((structure_of(&s)?, embedded_element(&s)?))
}

pub fn parse_element_arg(st: &Structure, text: &str) -> Result<Element, InputError> {
    let v = parse_value(text).map_err(|err| InputError::Parse { what: "element", text: text.into(), err })?;
    element_of(st, &v)
}

pub fn parse_elements_arg(st: &Structure, text: &str) -> Result<Vec<Element>, InputError> {
    let vs = parse_values(text).map_err(|err| InputError::Parse { what: "element list", text: text.into(), err })?;
    vs.iter().map(|v| element_of(st, v)).collect()
}
