//! Bounded check of "quasi-atomic + GCD ⟹ unique factorization" on a sample.

use std::collections::BTreeSet;

use num_traits::{Signed, ToPrimitive};

use super::{quasi_atomic_witness, Element, Structure};
use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::exact::factor_integer;
use crate::monoids::MonoidElement;
use crate::poly::{atom_factorizations, exact_divide, SemiPoly};
use crate::semidomains::{SemidomainDescriptor, SemidomainElement};
use crate::upoly::{factor_rat_poly, to_rat};
use crate::{RatPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UfmReport {
    pub structure: String,
    pub elements_checked: usize,
    pub pairs_checked: usize,
    /// First sampled pair without a greatest common divisor.
    pub gcd_failure: Option<(Element, Element)>,
    /// First sampled nonunit without a quasi-atomic witness.
    pub quasi_failure: Option<Element>,
    /// Sampled elements with more than one factorization, each with two of them.
    pub non_unique: Vec<(Element, Vec<Element>, Vec<Element>)>,
    /// Hypothesis held on the sample but a factorization was not unique.
    pub counterexample: Option<(Element, Vec<Element>, Vec<Element>)>,
}

impl UfmReport {
    pub fn hypothesis_holds(&self) -> bool {
        self.gcd_failure.is_none() && self.quasi_failure.is_none()
    }

    pub fn conclusion_holds(&self) -> bool {
        self.non_unique.is_empty()
    }

    /// The implication is never violated on the sample.
    pub fn consistent(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Rationals `lo..=hi` as monoid elements, or as scalars of a semidomain.
pub fn value_range(s: &Structure, lo: i64, hi: i64) -> Vec<Element> {
    (lo..=hi)
        .map(|n| {
            let q = Rational::from_integer(n.into());
            match s {
                Structure::Monoid(_) => Element::Monoid(MonoidElement::Value(q)),
                _ => Element::Semi(SemidomainElement::Scalar(q)),
            }
        })
        .collect()
}

/// Every nonzero polynomial of degree ≤ `max_degree` with coefficients in `0..=max_coeff`.
pub fn poly_grid(base: SemidomainDescriptor, max_degree: usize, max_coeff: u32) -> Vec<Element> {
    let n = max_degree + 1;
    let radix = max_coeff as u64 + 1;
    let total = radix.pow(n as u32);
    (1..total)
        .map(|mut code| {
            let coeffs = (0..n)
                .map(|_| {
                    let c = code % radix;
                    code /= radix;
                    Rational::from_integer(c.into())
                })
                .collect();
            Element::Poly(SemiPoly::raw(base, RatPoly::new(coeffs)))
        })
        .collect()
}

fn key(atoms: &[Element]) -> Vec<String> {
    let mut k: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
    k.sort();
    k
}

// Distinct factorizations (up to units), at most two needed.
fn factorizations(s: &Structure, e: &Element, budget: &SearchBudget) -> Result<Vec<Vec<Element>>> {
    Ok(match (s, e) {
        (Structure::Monoid(m), Element::Monoid(x)) => m
            .factorizations(x, 2, budget.atom_denominator_bound)?
            .factorizations
            .into_iter()
            .map(|f| f.atoms.into_iter().map(Element::Monoid).collect())
            .collect(),
        (Structure::Semidomain(SemidomainDescriptor::N0 | SemidomainDescriptor::Integers), Element::Semi(SemidomainElement::Scalar(q))) => {
            let n = q.to_integer();
            let m = n.abs().to_u64().ok_or_else(|| Error::Overflow(n.to_string()))?;
            let ps = factor_integer(m)?;
            vec![ps.into_iter().map(|p| Element::Semi(SemidomainElement::Scalar(Rational::from_integer(p.into())))).collect()]
        }
        (Structure::Poly(_), Element::Poly(p)) => atom_factorizations(p, 2, budget)?
            .factorizations
            .into_iter()
            .map(|f| f.atoms.into_iter().map(Element::Poly).collect())
            .collect(),
        _ => return Err(Error::InvalidInput(format!("no bounded factorization enumeration for {}", s.name()))),
    })
}

// Nonzero divisors of `e` up to units, for the gcd test.
fn divisors(s: &Structure, e: &Element) -> Result<Vec<Element>> {
    Ok(match (s, e) {
        (Structure::Poly(base), Element::Poly(f)) => poly_divisors(*base, f)?.into_iter().map(Element::Poly).collect(),
        _ => return Err(Error::InvalidInput(format!("no divisor enumeration for {}", s.name()))),
    })
}

fn poly_divisors(base: SemidomainDescriptor, f: &SemiPoly) -> Result<Vec<SemiPoly>> {
    let (content, fs) = factor_rat_poly(f.poly(), crate::upoly::DEFAULT_DEGREE_CAP)?;
    let c = content.to_integer();
    let m = c.abs().to_u64().ok_or_else(|| Error::Overflow(c.to_string()))?;
    let mut consts = vec![1u64];
    for p in factor_integer(m)? {
        let mut next = consts.clone();
        next.extend(consts.iter().map(|d| d * p));
        next.sort_unstable();
        next.dedup();
        consts = next;
    }
    let n = fs.len();
    let mut polys = BTreeSet::new();
    for mask in 0usize..(1 << n) {
        let g = (0..n).filter(|i| mask >> i & 1 == 1).fold(RatPoly::one(), |acc, i| &acc * &to_rat(&fs[i]));
        polys.insert(g.coeffs().to_vec());
    }
    let mut out = Vec::new();
    for d in &consts {
        for coeffs in &polys {
            let g = RatPoly::new(coeffs.clone()).scale(&Rational::from_integer((*d).into()));
            if let Ok(g) = SemiPoly::new(base, g) {
                if exact_divide(f, &g)?.is_some() {
                    out.push(g);
                }
            }
        }
    }
    Ok(out)
}

fn divides(s: &Structure, a: &Element, b: &Element) -> Result<bool> {
    Ok(match (s, a, b) {
        (Structure::Poly(_), Element::Poly(x), Element::Poly(y)) => exact_divide(y, x)?.is_some(),
        _ => false,
    })
}

fn has_gcd(s: &Structure, a: &Element, b: &Element, div_a: &[Element], div_b: &[Element]) -> Result<bool> {
    if let (Structure::Monoid(m), Element::Monoid(x), Element::Monoid(y)) = (s, a, b) {
        return Ok(!m.gcd_set(&[x.clone(), y.clone()], crate::monoids::DEFAULT_ATOM_BOUND)?.is_empty());
    }
    if let (Structure::Semidomain(_), Element::Semi(_), Element::Semi(_)) = (s, a, b) {
        // ℤ and ℕ₀ have gcds.
        return Ok(true);
    }
    let kb: BTreeSet<String> = div_b.iter().map(|d| d.to_string()).collect();
    let common: Vec<&Element> = div_a.iter().filter(|d| kb.contains(&d.to_string())).collect();
    for g in &common {
        let mut all = true;
        for d in &common {
            if !divides(s, d, g)? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Scans `sample` for gcd failures, missing quasi-atomic witnesses and
/// non-unique factorizations. Zero and units are skipped.
pub fn ufm_check_small(s: &Structure, sample: &[Element], budget: &SearchBudget) -> Result<UfmReport> {
    let mut elems = Vec::new();
    for e in sample {
        if s.contains(e)? && !s.is_absorbing(e) && !s.is_unit(e)? {
            elems.push(e.clone());
        }
    }
    let needs_divisors = matches!(s, Structure::Poly(_));
    let divs: Vec<Vec<Element>> =
        if needs_divisors { elems.iter().map(|e| divisors(s, e)).collect::<Result<_>>()? } else { vec![Vec::new(); elems.len()] };
    let mut report = UfmReport {
        structure: s.name(),
        elements_checked: elems.len(),
        pairs_checked: 0,
        gcd_failure: None,
        quasi_failure: None,
        non_unique: Vec::new(),
        counterexample: None,
    };
    'pairs: for j in 0..elems.len() {
        for i in 0..j {
            report.pairs_checked += 1;
            if !has_gcd(s, &elems[i], &elems[j], &divs[i], &divs[j])? {
                report.gcd_failure = Some((elems[i].clone(), elems[j].clone()));
                break 'pairs;
            }
        }
    }
    for e in &elems {
        if report.quasi_failure.is_none() && quasi_atomic_witness(s, e, budget)?.witness().is_none() {
            report.quasi_failure = Some(e.clone());
        }
        let fs = factorizations(s, e, budget)?;
        let mut distinct: Vec<Vec<Element>> = Vec::new();
        for f in fs {
            if !distinct.iter().any(|g| key(g) == key(&f)) {
                distinct.push(f);
            }
        }
        if distinct.len() > 1 {
            report.non_unique.push((e.clone(), distinct[0].clone(), distinct[1].clone()));
        }
    }
    if report.hypothesis_holds() {
        report.counterexample = report.non_unique.first().cloned();
    }
    Ok(report)
}
