//! The three witness searches. Each one first tries the direct route (an atom
//! split off by the atom tests, or a full factorization) and then falls back
//! to the structure-specific constructions.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Element, SearchReport, Step, Structure, SubatomicWitness, WitnessFactorization, WitnessKind, WitnessOutcome};
use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::exact::{factor_integer, floor, padic_valuation, QuadExt, Valuation};
use crate::monoids::{almost, reciprocal, MonoidDescriptor, MonoidElement};
use crate::poly::{atom_factorizations, coefficient_mcd, LaurentPoly, SemiPoly};
use crate::semidomains::{expsum_exponent_mcd_split, ExpBase, ExpSum, MixedPoly, OrdStatus, SemidomainDescriptor, SemidomainElement};
use crate::{QuadPoly, RatPoly, Rational};

const DESCENT_DEPTH: usize = 64;
const DESCENT_NODES: usize = 4096;
const MAX_ATOMS: usize = 64;

fn found(kind: WitnessKind, report: SearchReport) -> Result<WitnessOutcome> {
    Ok(WitnessOutcome::Found(SubatomicWitness { kind, report }))
}

fn provably(obstruction: impl Into<String>, report: SearchReport) -> Result<WitnessOutcome> {
    Ok(WitnessOutcome::ProvablyNoWitness { obstruction: obstruction.into(), report })
}

// Reasons an element has no atom divisor at all.
fn atomless(s: &Structure, e: &Element) -> Option<&'static str> {
    use SemidomainDescriptor::QGe1;
    match (s, e) {
        (Structure::Monoid(MonoidDescriptor::Dyadic), _) => Some("the dyadic monoid has no atoms"),
        (Structure::Semidomain(QGe1), _) => Some("QGe1 has no atoms: q = ((1+q)/2)·(2q/(1+q)) with both factors above 1"),
        (Structure::Poly(QGe1), Element::Poly(p)) if p.is_constant() => Some("divisors of a constant are constants, and QGe1 has no atoms"),
        (Structure::Laurent(QGe1), Element::Laurent(p)) if p.body().is_constant() => {
            Some("divisors of a monomial are monomials c·x^k, and QGe1 has no atoms")
        }
        _ => None,
    }
}

/// An atom dividing `e`, found by following atom-test splits depth first.
pub fn furstenberg_witness(s: &Structure, e: &Element, budget: &SearchBudget) -> Result<WitnessOutcome> {
    s.require_nonunit(e)?;
    let mut report = SearchReport::new(budget);
    if let Some(why) = atomless(s, e) {
        return provably(why, report);
    }
    let mut seen = HashSet::new();
    if let Some((atom, cofactor)) = descend(s, e, budget, 0, &mut report, &mut seen)? {
        return found(WitnessKind::FurstenbergAtom { atom, cofactor }, report);
    }
    if let (Structure::Monoid(m), Element::Monoid(x)) = (s, e) {
        for a in m.atoms_up_to(budget.atom_denominator_bound).atoms {
            report.branches += 1;
            if m.divides(&a, x)? {
                let cofactor = Element::Monoid(x.sub(&a)?);
                return found(WitnessKind::FurstenbergAtom { atom: Element::Monoid(a), cofactor }, report);
            }
        }
        report.note(format!("no atom with denominator ≤ {} divides {x}", budget.atom_denominator_bound));
    }
    Ok(WitnessOutcome::NotFoundWithinBudget(report))
}

fn descend(
    s: &Structure,
    e: &Element,
    budget: &SearchBudget,
    depth: usize,
    report: &mut SearchReport,
    seen: &mut HashSet<String>,
) -> Result<Option<(Element, Element)>> {
    if depth > DESCENT_DEPTH || report.branches >= DESCENT_NODES || !seen.insert(e.to_string()) {
        return Ok(None);
    }
    report.branches += 1;
    if atomless(s, e).is_some() {
        return Ok(None);
    }
    let step = match s.step(e, budget) {
        Err(Error::LimitExceeded(m)) | Err(Error::Overflow(m)) => Step::Unknown(m),
        other => other?,
    };
    match step {
        Step::Atom => Ok(Some((e.clone(), s.identity()))),
        Step::Unknown(m) => {
            report.note(m);
            Ok(None)
        }
        Step::Split(a, b) => {
            if let Some((atom, c)) = descend(s, &a, budget, depth + 1, report, seen)? {
                return Ok(Some((atom, s.combine(&c, &b)?)));
            }
            if let Some((atom, c)) = descend(s, &b, budget, depth + 1, report, seen)? {
                return Ok(Some((atom, s.combine(&c, &a)?)));
            }
            Ok(None)
        }
    }
}

fn limit_to_none<T>(r: Result<Option<T>>, report: &mut SearchReport) -> Result<Option<T>> {
    match r {
        Err(Error::LimitExceeded(m)) | Err(Error::Overflow(m)) => {
            report.note(m);
            Ok(None)
        }
        other => other,
    }
}

fn poly_factorization(p: &SemiPoly, budget: &SearchBudget) -> Result<Option<(Rational, Vec<SemiPoly>)>> {
    let fs = atom_factorizations(p, 1, budget)?;
    Ok(fs.factorizations.into_iter().next().map(|f| (f.unit, f.atoms)))
}

fn const_poly(base: SemidomainDescriptor, c: Rational) -> SemiPoly {
    SemiPoly::raw(base, RatPoly::constant(c))
}

/// Some factorization of `e` into certified atoms.
fn factorization(s: &Structure, e: &Element, budget: &SearchBudget, report: &mut SearchReport) -> Result<Option<WitnessFactorization>> {
    let r = match (s, e) {
        (Structure::Monoid(m), Element::Monoid(x)) => {
            let set = m.factorizations(x, 1, budget.atom_denominator_bound)?;
            Ok(set
                .factorizations
                .into_iter()
                .next()
                .map(|f| WitnessFactorization { unit: s.identity(), atoms: f.atoms.into_iter().map(Element::Monoid).collect() }))
        }
        (Structure::Semidomain(d), Element::Semi(x)) => d.factor_by_splitting(x, MAX_ATOMS, budget).map(|o| {
            o.map(|f| WitnessFactorization { unit: Element::Semi(f.unit), atoms: f.atoms.into_iter().map(Element::Semi).collect() })
        }),
        (Structure::Poly(b), Element::Poly(p)) => poly_factorization(p, budget).map(|o| {
            o.map(|(u, atoms)| WitnessFactorization {
                unit: Element::Poly(const_poly(*b, u)),
                atoms: atoms.into_iter().map(Element::Poly).collect(),
            })
        }),
        (Structure::Laurent(b), Element::Laurent(g)) => poly_factorization(g.body(), budget).map(|o| {
            o.map(|(u, atoms)| WitnessFactorization {
                unit: Element::Laurent(LaurentPoly::new(g.shift(), const_poly(*b, u))),
                atoms: atoms.into_iter().map(|a| Element::Laurent(a.into())).collect(),
            })
        }),
        _ => Err(Error::BaseMismatch),
    };
    limit_to_none(r, report)
}

// Monoid-level plan: extra elements (added atoms, or a single multiplier) and
// the atoms of the resulting sum.
enum Plan {
    Found { extra: Vec<MonoidElement>, atoms: Vec<MonoidElement> },
    Provably(String),
    NotFound,
}

fn value(e: &MonoidElement) -> Result<&Rational> {
    e.value().ok_or_else(|| Error::NotAnElement(e.to_string()))
}

fn copies(q: Rational, n: u64) -> Vec<MonoidElement> {
    vec![MonoidElement::Value(q); n as usize]
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

// n ∈ ℕ written as 2n copies of 1/2.
fn halves(n: &BigInt) -> Result<Vec<MonoidElement>> {
    let k = n.to_u64().ok_or_else(|| Error::Overflow(n.to_string()))?;
    Ok(copies(half(), 2 * k))
}

fn reciprocal_valuation_obstruction(q: &Rational) -> Result<Option<String>> {
    let den = q.denom().to_u64().ok_or_else(|| Error::Overflow(q.to_string()))?;
    for p in factor_integer(den)? {
        if let Valuation::Finite(v) = padic_valuation(q, p)? {
            if v <= -2 {
                return Ok(Some(format!(
                    "v_{p}({q}) = {v}, while every atom 1/p has {p}-adic valuation at least -1; adding atoms keeps the valuation at {v}, so no sum of atoms is reached"
                )));
            }
        }
    }
    Ok(None)
}

fn monoid_almost_plan(m: &MonoidDescriptor, x: &MonoidElement, budget: &SearchBudget) -> Result<Plan> {
    use MonoidDescriptor::*;
    if let Some(f) = m.factorizations(x, 1, budget.atom_denominator_bound)?.factorizations.into_iter().next() {
        return Ok(Plan::Found { extra: vec![], atoms: f.atoms });
    }
    Ok(match m {
        Dyadic => Plan::Provably("the dyadic monoid has no atoms".into()),
        LexCone => match x {
            MonoidElement::Pair(_, c) if *c != 0 => Plan::Provably(format!(
                "every atom is (1,0), so adding atoms keeps the second coordinate {c}, while sums of atoms have second coordinate 0"
            )),
            _ => Plan::NotFound,
        },
        PrimeReciprocal | PrimeReciprocalPlusQge1 => {
            let q = value(x)?;
            if let Some(why) = reciprocal_valuation_obstruction(q)? {
                return Ok(Plan::Provably(why));
            }
            // Top up every residue to a full unit, then split the integer into halves.
            let den = q.denom().to_u64().ok_or_else(|| Error::Overflow(q.to_string()))?;
            let mut extra = Vec::new();
            let mut total = q.clone();
            for p in factor_integer(den)? {
                let r = reciprocal::p_residue(q, p);
                let k = (p - r) % p;
                total += Rational::new(k.into(), p.into());
                extra.extend(copies(Rational::new(1.into(), p.into()), k));
            }
            Plan::Found { extra, atoms: halves(&total.to_integer())? }
        }
        AlmostAtomicExample => almost_example_plan(value(x)?)?,
        Numerical(_) | PuiseuxFG(_) => Plan::NotFound,
    })
}

// q = D + q' with D the greatest dyadic divisor. Writing D = c/2^(n+1) with
// n ≥ 1, adding c as 5c copies of a₁ = 1/5 gives q + c = 2c(aₙ + a'ₙ) + q'.
fn almost_example_plan(q: &Rational) -> Result<Plan> {
    let decs = almost::canonical_decompositions(q)?;
    let Some(best) = decs.into_iter().max_by(|a, b| a.dyadic_summand.cmp(&b.dyadic_summand)) else {
        return Ok(Plan::NotFound);
    };
    let mut atoms = Vec::new();
    for (&n, &(c, c2)) in &best.pairs {
        atoms.extend(copies(almost::a(n), c));
        atoms.extend(copies(almost::a_prime(n), c2));
    }
    let d = &best.dyadic_summand;
    if d.is_zero() {
        return Ok(Plan::Found { extra: vec![], atoms });
    }
    let k = d.denom().bits().saturating_sub(1) as usize;
    let n = k.saturating_sub(1).max(1);
    let c = (d * Rational::from_integer(BigInt::one() << (n + 1))).to_integer();
    let c = c.to_u64().ok_or_else(|| Error::Overflow(c.to_string()))?;
    atoms.extend(copies(almost::a(n), 2 * c));
    atoms.extend(copies(almost::a_prime(n), 2 * c));
    Ok(Plan::Found { extra: copies(almost::a(1), 5 * c), atoms })
}

fn monoid_quasi_plan(m: &MonoidDescriptor, x: &MonoidElement, budget: &SearchBudget) -> Result<Plan> {
    use MonoidDescriptor::*;
    match monoid_almost_plan(m, x, budget)? {
        Plan::Found { extra, atoms } => {
            let sum = extra.iter().try_fold(m.zero(), |acc, a| acc.add(a))?;
            return Ok(Plan::Found { extra: vec![sum], atoms });
        }
        Plan::Provably(why) if matches!(m, Dyadic | LexCone) => {
            let why = match m {
                Dyadic => why,
                _ => format!("{why}; any added element has nonnegative second coordinate"),
            };
            return Ok(Plan::Provably(why));
        }
        _ => {}
    }
    Ok(match m {
        PrimeReciprocalPlusQge1 => {
            // b = n − q ≥ 1 lies in ℚ≥1, and n is a sum of halves.
            let q = value(x)?;
            let n = floor(q) + BigInt::from(2);
            let b = Rational::from_integer(n.clone()) - q;
            Plan::Found { extra: vec![MonoidElement::Value(b)], atoms: halves(&n)? }
        }
        _ => Plan::NotFound,
    })
}

fn monoid_outcome(m: &MonoidDescriptor, plan: Plan, quasi: bool, report: SearchReport) -> Result<WitnessOutcome> {
    let s = Structure::Monoid(m.clone());
    match plan {
        Plan::Found { extra, atoms } => {
            let factorization = WitnessFactorization { unit: s.identity(), atoms: atoms.into_iter().map(Element::Monoid).collect() };
            let kind = if quasi {
                let multiplier = Element::Monoid(extra.into_iter().next().unwrap_or_else(|| m.zero()));
                WitnessKind::QuasiAtomic { multiplier, factorization }
            } else {
                WitnessKind::AlmostAtomic { added_atoms: extra.into_iter().map(Element::Monoid).collect(), factorization }
            };
            found(kind, report)
        }
        Plan::Provably(why) => provably(why, report),
        Plan::NotFound => Ok(WitnessOutcome::NotFoundWithinBudget(report)),
    }
}

fn semi(e: SemidomainElement) -> Element {
    Element::Semi(e)
}

fn exp_mono(c: BigInt, q: Rational) -> Element {
    semi(SemidomainElement::ExpSum(ExpSum::monomial(c, q)))
}

fn prime_list(n: &BigInt) -> Result<Vec<BigInt>> {
    let m = n.abs().to_u64().ok_or_else(|| Error::Overflow(n.to_string()))?;
    Ok(factor_integer(m)?.into_iter().map(BigInt::from).collect())
}

// r = c·e^d·r₂ with r₂ of unit content and no common exponent; the monomial part
// is handled in the exponent monoid, r₂ by splitting.
fn expsum_plan(
    base: ExpBase,
    r: &ExpSum,
    quasi: bool,
    budget: &SearchBudget,
    report: &mut SearchReport,
) -> Result<Option<(Vec<Element>, Vec<Element>)>> {
    let (d, r1) = expsum_exponent_mcd_split(base, r, budget)?;
    let c = r1.content();
    let r2 = r1.scalar_div(&c).expect("content divides");
    let m = base.monoid();
    let mut atoms: Vec<Element> = prime_list(&c)?.into_iter().map(|p| exp_mono(p, Rational::zero())).collect();
    let mut extra = Vec::new();
    if d.is_positive() {
        let x = MonoidElement::Value(d.clone());
        let plan = if quasi { monoid_quasi_plan(&m, &x, budget)? } else { monoid_almost_plan(&m, &x, budget)? };
        match plan {
            Plan::Found { extra: ex, atoms: at } => {
                extra.extend(ex.iter().map(|e| exp_mono(BigInt::one(), value(e).unwrap().clone())));
                atoms.extend(at.iter().map(|e| exp_mono(BigInt::one(), value(e).unwrap().clone())));
            }
            Plan::Provably(why) => {
                report.note(format!("exponent {d}: {why}"));
                return Ok(None);
            }
            Plan::NotFound => return Ok(None),
        }
    }
    if !r2.is_one() {
        let sd = SemidomainDescriptor::ExpSum(base);
        match limit_to_none(sd.factor_by_splitting(&SemidomainElement::ExpSum(r2), MAX_ATOMS, budget), report)? {
            Some(f) => atoms.extend(f.atoms.into_iter().map(semi)),
            None => return Ok(None),
        }
    }
    Ok(Some((extra, atoms)))
}

fn mixed_of(poly: QuadPoly, d: u64) -> Result<Element> {
    Ok(semi(SemidomainElement::Mixed(MixedPoly::new(poly, d)?)))
}

/// Atoms `a₁, …, a_k` with `a₁ ⋯ a_k · e` a product of atoms.
pub fn almost_atomic_witness(s: &Structure, e: &Element, budget: &SearchBudget) -> Result<WitnessOutcome> {
    s.require_nonunit(e)?;
    let mut report = SearchReport::new(budget);
    match (s, e) {
        (Structure::Monoid(m), Element::Monoid(x)) => {
            let plan = monoid_almost_plan(m, x, budget)?;
            return monoid_outcome(m, plan, false, report);
        }
        (Structure::Semidomain(SemidomainDescriptor::QGe1), _) => {
            return provably("QGe1 has no atoms, so a product of atoms is 1 and cannot be a nonunit times atoms", report);
        }
        _ => {}
    }
    if let Some(factorization) = factorization(s, e, budget, &mut report)? {
        return found(WitnessKind::AlmostAtomic { added_atoms: vec![], factorization }, report);
    }
    match (s, e) {
        (Structure::Semidomain(sd @ SemidomainDescriptor::MixedRing { quad_d }), Element::Semi(SemidomainElement::Mixed(p))) => {
            let OrdStatus::NeverFactors(c) = p.ord_status()? else {
                return Ok(WitnessOutcome::NotFoundWithinBudget(report));
            };
            let Some(q) = c.as_rational().filter(|q| q.is_positive()) else {
                return provably(mixed_obstruction(&c), report);
            };
            // Multiplying by the primes of the denominator makes the ord coefficient natural.
            let den = q.denom().clone();
            let added: Vec<Element> = prime_list(&den)?
                .into_iter()
                .map(|pr| mixed_of(QuadPoly::constant(QuadExt::rational(Rational::from_integer(pr))), *quad_d))
                .collect::<Result<_>>()?;
            let product = s.combine(&s.combine_all(&added)?, e)?;
            let Element::Semi(prod) = &product else { unreachable!() };
            match sd.factor_by_splitting(prod, MAX_ATOMS, budget)? {
                Some(f) => {
                    let factorization = WitnessFactorization { unit: semi(f.unit), atoms: f.atoms.into_iter().map(semi).collect() };
                    found(WitnessKind::AlmostAtomic { added_atoms: added, factorization }, report)
                }
                None => Ok(WitnessOutcome::NotFoundWithinBudget(report)),
            }
        }
        (Structure::Semidomain(SemidomainDescriptor::ExpSum(base)), Element::Semi(SemidomainElement::ExpSum(r))) => {
            match expsum_plan(*base, r, false, budget, &mut report)? {
                Some((added_atoms, atoms)) => {
                    let factorization = WitnessFactorization { unit: s.identity(), atoms };
                    found(WitnessKind::AlmostAtomic { added_atoms, factorization }, report)
                }
                None => Ok(WitnessOutcome::NotFoundWithinBudget(report)),
            }
        }
        (Structure::Poly(SemidomainDescriptor::QGe1), Element::Poly(f)) => match qge1_plan(f, budget)? {
            Some((added, atoms)) => {
                let factorization = WitnessFactorization { unit: s.identity(), atoms: atoms.into_iter().map(Element::Poly).collect() };
                found(WitnessKind::AlmostAtomic { added_atoms: added.into_iter().map(Element::Poly).collect(), factorization }, report)
            }
            None => Ok(WitnessOutcome::NotFoundWithinBudget(report)),
        },
        (Structure::Laurent(b), Element::Laurent(g)) => {
            let inner = almost_atomic_witness(&Structure::Poly(*b), &Element::Poly(g.body().clone()), budget)?;
            Ok(lift_laurent(*b, g, inner))
        }
        _ => Ok(WitnessOutcome::NotFoundWithinBudget(report)),
    }
}

fn mixed_obstruction(c: &QuadExt) -> String {
    format!(
        "the coefficient {c} at x^ord is not a positive rational; atoms of the ring have ord at most 1 with positive integer coefficient there, so multiplying by atoms only scales it by positive integers and a product of atoms never arises"
    )
}

// f = c·g with c the least coefficient. The atom A = x² + (c + 1/c)x + 1 turns
// the scalar into atoms: c·A = (cx + 1)(x + c).
fn qge1_plan(f: &SemiPoly, budget: &SearchBudget) -> Result<Option<(Vec<SemiPoly>, Vec<SemiPoly>)>> {
    let base = SemidomainDescriptor::QGe1;
    let c = coefficient_mcd(f)?.swap_remove(0);
    let g = SemiPoly::raw(base, f.poly().scale(&(Rational::one() / &c)));
    let mut atoms = if g.is_unit() {
        Vec::new()
    } else {
        match poly_factorization(&g, budget)? {
            Some((_, atoms)) => atoms,
            None => return Ok(None),
        }
    };
    if c.is_one() {
        return Ok(Some((vec![], atoms)));
    }
    let one = Rational::one();
    let a = RatPoly::new(vec![one.clone(), &c + &one / &c, one.clone()]);
    atoms.push(SemiPoly::raw(base, RatPoly::new(vec![one.clone(), c.clone()])));
    atoms.push(SemiPoly::raw(base, RatPoly::new(vec![c, one])));
    Ok(Some((vec![SemiPoly::raw(base, a)], atoms)))
}

fn to_laurent(e: &Element) -> Element {
    match e {
        Element::Poly(p) => Element::Laurent(p.clone().into()),
        other => other.clone(),
    }
}

// A witness for the ord-0 body of g in S[x] carries over to g = x^k·body.
fn lift_laurent(base: SemidomainDescriptor, g: &LaurentPoly, inner: WitnessOutcome) -> WitnessOutcome {
    let lift_fact = |f: WitnessFactorization| {
        let unit = match &f.unit {
            Element::Poly(u) => Element::Laurent(LaurentPoly::new(g.shift(), u.clone())),
            _ => unreachable!(),
        };
        WitnessFactorization { unit, atoms: f.atoms.iter().map(to_laurent).collect() }
    };
    match inner {
        WitnessOutcome::Found(w) => {
            let kind = match w.kind {
                WitnessKind::AlmostAtomic { added_atoms, factorization } => WitnessKind::AlmostAtomic {
                    added_atoms: added_atoms.iter().map(to_laurent).collect(),
                    factorization: lift_fact(factorization),
                },
                WitnessKind::QuasiAtomic { multiplier, factorization } => {
                    WitnessKind::QuasiAtomic { multiplier: to_laurent(&multiplier), factorization: lift_fact(factorization) }
                }
                k @ WitnessKind::FurstenbergAtom { .. } => k,
            };
            WitnessOutcome::Found(SubatomicWitness { kind, report: w.report })
        }
        WitnessOutcome::ProvablyNoWitness { obstruction, mut report } => {
            report.note(format!("in {}[x]: {obstruction}", base.name()));
            WitnessOutcome::NotFoundWithinBudget(report)
        }
        other => other,
    }
}

/// A nonzero multiplier `m` with `m · e` a product of atoms.
pub fn quasi_atomic_witness(s: &Structure, e: &Element, budget: &SearchBudget) -> Result<WitnessOutcome> {
    s.require_nonunit(e)?;
    if let (Structure::Monoid(m), Element::Monoid(x)) = (s, e) {
        let plan = monoid_quasi_plan(m, x, budget)?;
        return monoid_outcome(m, plan, true, SearchReport::new(budget));
    }
    let mut report = match almost_atomic_witness(s, e, budget)? {
        WitnessOutcome::Found(w) => {
            let WitnessKind::AlmostAtomic { added_atoms, factorization } = w.kind else { unreachable!() };
            let multiplier = s.combine_all(&added_atoms)?;
            return found(WitnessKind::QuasiAtomic { multiplier, factorization }, w.report);
        }
        WitnessOutcome::ProvablyNoWitness { obstruction, report } => {
            if matches!(s, Structure::Semidomain(SemidomainDescriptor::QGe1)) {
                return provably(obstruction, report);
            }
            let mut report = report;
            report.note(format!("no atom multipliers: {obstruction}"));
            report
        }
        WitnessOutcome::NotFoundWithinBudget(r) => r,
    };
    match (s, e) {
        (Structure::Semidomain(sd @ SemidomainDescriptor::MixedRing { quad_d }), Element::Semi(SemidomainElement::Mixed(p))) => {
            let OrdStatus::NeverFactors(c) = p.ord_status()? else {
                return Ok(WitnessOutcome::NotFoundWithinBudget(report));
            };
            // (x²/c_m)·f has coefficient 1 at its order, which is at least 2.
            let inv = c.inv().ok_or(Error::ZeroDivisor)?;
            let multiplier = mixed_of(QuadPoly::monomial(inv, 2), *quad_d)?;
            let Element::Semi(prod) = s.combine(&multiplier, e)? else { unreachable!() };
            match sd.factor_by_splitting(&prod, MAX_ATOMS, budget)? {
                Some(f) => {
                    let factorization = WitnessFactorization { unit: semi(f.unit), atoms: f.atoms.into_iter().map(semi).collect() };
                    found(WitnessKind::QuasiAtomic { multiplier, factorization }, report)
                }
                None => Ok(WitnessOutcome::NotFoundWithinBudget(report)),
            }
        }
        (Structure::Semidomain(SemidomainDescriptor::ExpSum(base)), Element::Semi(SemidomainElement::ExpSum(r))) => {
            match expsum_plan(*base, r, true, budget, &mut report)? {
                Some((extra, atoms)) => {
                    let multiplier = s.combine_all(&extra)?;
                    let factorization = WitnessFactorization { unit: s.identity(), atoms };
                    found(WitnessKind::QuasiAtomic { multiplier, factorization }, report)
                }
                None => Ok(WitnessOutcome::NotFoundWithinBudget(report)),
            }
        }
        _ => Ok(WitnessOutcome::NotFoundWithinBudget(report)),
    }
}
