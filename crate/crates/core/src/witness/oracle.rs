//! Exhaustive factorization enumeration by naive divisor search. It shares no
//! code with the closed-form procedures, so it can be used to check them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Element, Structure};
use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::monoids::{MonoidDescriptor, MonoidElement};
use crate::poly::{exact_divide, SemiPoly};
use crate::semidomains::{ExpSum, SemidomainDescriptor, SemidomainElement};
use crate::{RatPoly, Rational};

/// Enumerations above this many candidates are refused.
const MAX_CANDIDATES: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    /// Every factorization into nonunits with at most `depth_bound` factors,
    /// the trivial one included, each sorted by display form.
    pub factorizations: Vec<Vec<Element>>,
    /// Those whose factors have no proper divisor among the candidates.
    pub atom_factorizations: Vec<Vec<Element>>,
    /// False when divisors were drawn from a bounded grid rather than all of them.
    pub complete: bool,
}

type Divisors = Vec<(Element, Element)>;

fn too_many(n: u64) -> Error {
    Error::LimitExceeded(format!("oracle would test {n} candidate divisors"))
}

// Proper nonunit divisors d of e with their cofactors, and whether the list is exhaustive.
fn proper_divisors(s: &Structure, e: &Element, budget: &SearchBudget) -> Result<(Divisors, bool)> {
    match (s, e) {
        (Structure::Monoid(m), Element::Monoid(x)) => monoid_divisors(m, x, budget),
        (Structure::Semidomain(SemidomainDescriptor::N0 | SemidomainDescriptor::Integers), Element::Semi(SemidomainElement::Scalar(q))) => {
            let n = q.to_integer().abs();
            let nn = n.to_u64().ok_or_else(|| Error::Overflow(n.to_string()))?;
            let sign = if q.is_negative() { -BigInt::one() } else { BigInt::one() };
            let sc = |v: BigInt| Element::Semi(SemidomainElement::Scalar(Rational::from_integer(v)));
            let out = (2..nn).filter(|d| nn % d == 0).map(|d| (sc(BigInt::from(d)), sc(&sign * BigInt::from(nn / d)))).collect();
            Ok((out, true))
        }
        (Structure::Semidomain(SemidomainDescriptor::ExpSum(base)), Element::Semi(SemidomainElement::ExpSum(r))) => {
            let grid = r.support().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            let top = r.support().max().cloned().unwrap_or_else(Rational::zero);
            let cmax = r.terms().values().max().cloned().unwrap_or_else(BigInt::zero);
            let points = (&top * Rational::from_integer(grid.clone())).to_integer().to_u64().unwrap_or(u64::MAX).saturating_add(1);
            let radix = cmax.to_u64().unwrap_or(u64::MAX).saturating_add(1);
            let total = radix.checked_pow(points as u32).unwrap_or(u64::MAX);
            if total > MAX_CANDIDATES {
                return Err(too_many(total));
            }
            let mut out = Vec::new();
            for code in 1..total {
                let mut c = code;
                let mut terms = BTreeMap::new();
                for i in 0..points {
                    let k = c % radix;
                    c /= radix;
                    if k > 0 {
                        terms.insert(Rational::new(BigInt::from(i), grid.clone()), BigInt::from(k));
                    }
                }
                let g = ExpSum::new(terms)?;
                if g.is_one() || g == *r || !base.contains(&g)? {
                    continue;
                }
                if let Some(h) = r.checked_div(&g) {
                    if base.contains(&h)? {
                        out.push((Element::Semi(SemidomainElement::ExpSum(g)), Element::Semi(SemidomainElement::ExpSum(h))));
                    }
                }
            }
            Ok((out, false))
        }
        (Structure::Poly(SemidomainDescriptor::N0), Element::Poly(f)) => {
            // g·h = f with nonnegative coefficients forces every coefficient of g below max f.
            let deg = f.degree().unwrap_or(0);
            let cmax = f.max_coeff().to_integer().to_u64().unwrap_or(u64::MAX);
            let radix = cmax.saturating_add(1);
            let total = radix.checked_pow(deg as u32 + 1).unwrap_or(u64::MAX);
            if total > MAX_CANDIDATES {
                return Err(too_many(total));
            }
            let mut out = Vec::new();
            for code in 1..total {
                let mut c = code;
                let coeffs = (0..=deg)
                    .map(|_| {
                        let k = c % radix;
                        c /= radix;
                        Rational::from_integer(k.into())
                    })
                    .collect();
                let g = SemiPoly::raw(SemidomainDescriptor::N0, RatPoly::new(coeffs));
                if g.is_unit() || g == *f {
                    continue;
                }
                if let Some(h) = exact_divide(f, &g)? {
                    out.push((Element::Poly(g), Element::Poly(h)));
                }
            }
            Ok((out, true))
        }
        _ => Err(Error::InvalidInput(format!("the oracle has no divisor enumeration for {}", s.name()))),
    }
}

fn monoid_divisors(m: &MonoidDescriptor, x: &MonoidElement, budget: &SearchBudget) -> Result<(Divisors, bool)> {
    let mut out = Vec::new();
    let wrap = |d: MonoidElement, c: MonoidElement| (Element::Monoid(d), Element::Monoid(c));
    match (m, x) {
        (MonoidDescriptor::LexCone, MonoidElement::Pair(b, c)) => {
            let w = budget.atom_denominator_bound as i64;
            for c1 in 0..=*c {
                for b1 in -w..=w {
                    let d = MonoidElement::Pair(b1, c1);
                    let rest = MonoidElement::Pair(b - b1, c - c1);
                    if !d.is_zero() && !rest.is_zero() && m.contains(&d)? && m.contains(&rest)? {
                        out.push(wrap(d, rest));
                    }
                }
            }
            Ok((out, *c == 0))
        }
        (_, MonoidElement::Value(q)) => {
            // Finitely generated kinds live on the lattice of the generators' denominators.
            let (dens, complete): (Vec<BigInt>, bool) = match m {
                MonoidDescriptor::Numerical(g) | MonoidDescriptor::PuiseuxFG(g) => {
                    (vec![g.generators().iter().fold(BigInt::one(), |l, a| l.lcm(a.denom()))], true)
                }
                _ => ((1..=budget.atom_denominator_bound).map(BigInt::from).collect(), false),
            };
            let mut seen = BTreeSet::new();
            for den in dens {
                let top = (q * Rational::from_integer(den.clone())).ceil().to_integer();
                let top = top.to_u64().ok_or_else(|| Error::Overflow(top.to_string()))?;
                if top > MAX_CANDIDATES {
                    return Err(too_many(top));
                }
                for k in 1..top {
                    let d = Rational::new(BigInt::from(k), den.clone());
                    if &d >= q || !seen.insert(d.clone()) {
                        continue;
                    }
                    let (dm, rm) = (MonoidElement::Value(d.clone()), MonoidElement::Value(q - &d));
                    if m.contains(&dm)? && m.contains(&rm)? {
                        out.push(wrap(dm, rm));
                    }
                }
            }
            Ok((out, complete))
        }
        _ => Err(Error::NotAnElement(x.to_string())),
    }
}

fn sort_key(f: &[Element]) -> Vec<String> {
    f.iter().map(|e| e.to_string()).collect()
}

fn sorted(mut f: Vec<Element>) -> Vec<Element> {
    f.sort_by_key(|e| e.to_string());
    f
}

struct Search<'a> {
    s: &'a Structure,
    budget: &'a SearchBudget,
    divisors: HashMap<String, Divisors>,
    memo: HashMap<(String, usize), Vec<Vec<Element>>>,
    complete: bool,
}

impl Search<'_> {
    fn divisors(&mut self, e: &Element) -> Result<Divisors> {
        let k = e.to_string();
        if let Some(d) = self.divisors.get(&k) {
            return Ok(d.clone());
        }
        let (d, complete) = proper_divisors(self.s, e, self.budget)?;
        self.complete &= complete;
        self.divisors.insert(k, d.clone());
        Ok(d)
    }

    fn factorizations(&mut self, e: &Element, depth: usize) -> Result<Vec<Vec<Element>>> {
        let mk = (e.to_string(), depth);
        if let Some(v) = self.memo.get(&mk) {
            return Ok(v.clone());
        }
        let mut out: BTreeMap<Vec<String>, Vec<Element>> = BTreeMap::new();
        out.insert(vec![e.to_string()], vec![e.clone()]);
        if depth >= 2 {
            for (d, c) in self.divisors(e)? {
                for mut f in self.factorizations(&c, depth - 1)? {
                    f.push(d.clone());
                    let f = sorted(f);
                    out.insert(sort_key(&f), f);
                }
            }
        }
        let v: Vec<Vec<Element>> = out.into_values().collect();
        self.memo.insert(mk, v.clone());
        Ok(v)
    }
}

/// All factorizations of `e` into nonunits with at most `depth_bound` factors.
pub fn brute_force_oracle(s: &Structure, e: &Element, depth_bound: usize, budget: &SearchBudget) -> Result<OracleReport> {
    s.require_nonunit(e)?;
    let mut search = Search { s, budget, divisors: HashMap::new(), memo: HashMap::new(), complete: true };
    let factorizations = search.factorizations(e, depth_bound.max(1))?;
    let mut atom_factorizations = Vec::new();
    for f in &factorizations {
        let mut all = true;
        for x in f {
            if !search.divisors(x)?.is_empty() {
                all = false;
                break;
            }
        }
        if all {
            atom_factorizations.push(f.clone());
        }
    }
    Ok(OracleReport { factorizations, atom_factorizations, complete: search.complete })
}
