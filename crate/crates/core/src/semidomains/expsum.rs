//! Formal exponential sums `Σ cᵢ·e^qᵢ` with exponents in a Puiseux monoid.
//! The exponentials of distinct algebraic exponents are linearly independent,
//! so the semiring is the monoid semiring ℕ₀[M] and products are convolutions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{AtomCertificate, AtomVerdict, SemidomainElement};
use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::exact::{compare_pow2, expsum_log2_bounds, is_prime, lcm_all, Pow2Comparison};
use crate::monoids::{MonoidDescriptor, MonoidElement};
use crate::Rational;

/// Exponent monoid of an exponential semiring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExpBase {
    /// `P ∪ ℚ≥1`.
    MF,
    /// The almost atomic example.
    MAA,
}

impl ExpBase {
    pub fn monoid(self) -> MonoidDescriptor {
        match self {
            ExpBase::MF => MonoidDescriptor::PrimeReciprocalPlusQge1,
            ExpBase::MAA => MonoidDescriptor::AlmostAtomicExample,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ExpBase::MF => "MF",
            ExpBase::MAA => "MAA",
        }
    }

    pub fn contains_exponent(self, q: &Rational) -> Result<bool> {
        self.monoid().contains(&MonoidElement::Value(q.clone()))
    }

    pub fn contains(self, r: &ExpSum) -> Result<bool> {
        for q in r.terms.keys() {
            if !self.contains_exponent(q)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Exponent ↦ positive coefficient; the empty map is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExpSum {
    terms: BTreeMap<Rational, BigInt>,
}

impl ExpSum {
    /// Sums repeated exponents and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (Rational, BigInt)>) -> Result<Self> {
        let mut map: BTreeMap<Rational, BigInt> = BTreeMap::new();
        for (q, c) in terms {
            if q.is_negative() {
                return Err(Error::InvalidInput(format!("negative exponent {q}")));
            }
            if c.is_negative() {
                return Err(Error::InvalidInput(format!("negative coefficient {c}")));
            }
            *map.entry(q).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(ExpSum { terms: map })
    }

    pub fn zero() -> Self {
        ExpSum::default()
    }

    pub fn one() -> Self {
        ExpSum::monomial(BigInt::one(), Rational::zero())
    }

    /// `c·e^q`; zero when `c = 0`.
    pub fn monomial(c: BigInt, q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(q, c);
        }
        ExpSum { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Rational, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == ExpSum::one()
    }

    pub fn support(&self) -> impl Iterator<Item = &Rational> {
        self.terms.keys()
    }

    pub fn min_exponent(&self) -> Option<&Rational> {
        self.terms.keys().next()
    }

    pub fn add(&self, other: &ExpSum) -> ExpSum {
        let mut terms = self.terms.clone();
        for (q, c) in &other.terms {
            *terms.entry(q.clone()).or_default() += c;
        }
        ExpSum { terms }
    }

    pub fn mul(&self, other: &ExpSum) -> ExpSum {
        let mut terms: BTreeMap<Rational, BigInt> = BTreeMap::new();
        for (q1, c1) in &self.terms {
            for (q2, c2) in &other.terms {
                *terms.entry(q1 + q2).or_default() += c1 * c2;
            }
        }
        ExpSum { terms }
    }

    /// Gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scalar_div(&self, s: &BigInt) -> Option<ExpSum> {
        if s.is_zero() || self.terms.values().any(|c| !(c % s).is_zero()) {
            return None;
        }
        Some(ExpSum { terms: self.terms.iter().map(|(q, c)| (q.clone(), c / s)).collect() })
    }

    /// Every exponent lowered by `d`; None if one would turn negative.
    pub fn shift_down(&self, d: &Rational) -> Option<ExpSum> {
        if self.min_exponent().is_some_and(|m| m < d) {
            return None;
        }
        Some(ExpSum { terms: self.terms.iter().map(|(q, c)| (q - d, c.clone())).collect() })
    }

    /// `(cᵢ, qᵢ)` pairs for the real-value enclosures.
    pub fn value_terms(&self) -> Vec<(BigInt, Rational)> {
        self.terms.iter().map(|(q, c)| (c.clone(), q.clone())).collect()
    }

    /// The quotient with nonnegative exponents and coefficients, if any.
    /// Matches the lowest remaining term each round; since nothing can cancel,
    /// the remainder must stay nonnegative and inside the dividend's support.
    pub fn checked_div(&self, b: &ExpSum) -> Option<ExpSum> {
        let (bmin, bc) = b.terms.iter().next()?;
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((q, c)) = rem.iter().next().map(|(q, c)| (q.clone(), c.clone())) {
            let e = &q - bmin;
            if e.is_negative() || !(&c % bc).is_zero() {
                return None;
            }
            let k = &c / bc;
            for (qb, cb) in &b.terms {
                let key = &e + qb;
                let slot = rem.get_mut(&key)?;
                *slot -= &k * cb;
                if slot.is_negative() {
                    return None;
                }
                if slot.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(e, k);
        }
        Some(ExpSum { terms: quot })
    }
}

impl fmt::Display for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (q, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*e^({q})")?;
        }
        Ok(())
    }
}

fn wrap(r: ExpSum) -> SemidomainElement {
    SemidomainElement::ExpSum(r)
}

/// Outcome of looking for a nonzero exponent dividing every exponent of the support.
enum CommonExponent {
    Found(Rational),
    /// Proven absent.
    None,
    /// Absent from a bounded search only.
    Unsettled,
}

fn common_exponent(base: ExpBase, r: &ExpSum, budget: &SearchBudget) -> Result<CommonExponent> {
    let support: Vec<Rational> = r.support().cloned().collect();
    if support.iter().any(|q| q.is_zero()) {
        return Ok(CommonExponent::None);
    }
    let ds = base.monoid().divisor_sets(&to_elems(&support), budget.atom_denominator_bound);
    if let Ok(ds) = &ds {
        if let Some(d) = largest_nonzero(&ds.mcd) {
            return Ok(CommonExponent::Found(d));
        }
    }
    let min = support[0].clone();
    match base {
        // For m < 1 every divisor of m has its denominator dividing m's, so the
        // grid search was exhaustive; for m ≥ 1 a small enough 1/p always divides.
        ExpBase::MF if min < Rational::one() => Ok(if ds.is_ok() { CommonExponent::None } else { CommonExponent::Unsettled }),
        ExpBase::MF => {
            let m = base.monoid();
            for p in 2..=budget.atom_denominator_bound.max(1000) {
                if !is_prime(p) {
                    continue;
                }
                let a = MonoidElement::Value(Rational::new(1.into(), p.into()));
                let mut all = true;
                for q in &support {
                    if !m.divides(&a, &MonoidElement::Value(q.clone()))? {
                        all = false;
                        break;
                    }
                }
                if all {
                    return Ok(CommonExponent::Found(a.value().unwrap().clone()));
                }
            }
            Ok(CommonExponent::Unsettled)
        }
        ExpBase::MAA => Ok(match ds {
            Ok(ds) if ds.exact => CommonExponent::None,
            _ => CommonExponent::Unsettled,
        }),
    }
}

fn largest_nonzero(v: &[MonoidElement]) -> Option<Rational> {
    v.iter().filter_map(|e| e.value().cloned()).filter(|q| !q.is_zero()).max()
}

fn to_elems(v: &[Rational]) -> Vec<MonoidElement> {
    v.iter().cloned().map(MonoidElement::Value).collect()
}

/// `r = e^d · reduced` with `d` a maximal common divisor of the exponents.
pub fn exponent_mcd_split(base: ExpBase, r: &ExpSum, budget: &SearchBudget) -> Result<(Rational, ExpSum)> {
    if r.is_zero() {
        return Err(Error::ZeroInput);
    }
    if r.terms.len() == 1 {
        let d = r.min_exponent().unwrap().clone();
        return Ok((d.clone(), r.shift_down(&d).unwrap()));
    }
    let d = match common_exponent(base, r, budget)? {
        CommonExponent::Found(d) => d,
        _ => Rational::zero(),
    };
    Ok((d.clone(), r.shift_down(&d).unwrap()))
}

/// Upper limit on candidate divisors in the exhaustive split search.
const SPLIT_CANDIDATES: u64 = 200_000;

pub(crate) fn is_atom(base: ExpBase, r: &ExpSum, budget: &SearchBudget) -> Result<AtomVerdict> {
    if r.is_zero() {
        return Err(Error::ZeroInput);
    }
    if r.is_one() {
        return Err(Error::UnitInput);
    }
    let m = base.monoid();
    if r.terms.len() == 1 {
        let (q, c) = r.terms.iter().next().unwrap();
        if q.is_zero() {
            // Any factor with a positive exponent would leave one in the product.
            let n = c.to_u64().ok_or_else(|| Error::Overflow(c.to_string()))?;
            if is_prime(n) {
                return Ok(AtomVerdict::Atom(AtomCertificate::PrimeScalar(c.clone())));
            }
            let p = crate::exact::factor_integer(n)?[0];
            let pb = BigInt::from(p);
            return Ok(AtomVerdict::NotAtom(
                wrap(ExpSum::monomial(pb.clone(), Rational::zero())),
                wrap(ExpSum::monomial(c / &pb, Rational::zero())),
            ));
        }
        if !c.is_one() {
            return Ok(AtomVerdict::NotAtom(
                wrap(ExpSum::monomial(c.clone(), Rational::zero())),
                wrap(ExpSum::monomial(BigInt::one(), q.clone())),
            ));
        }
        // Factors of a single exponential are single exponentials.
        return Ok(match m.nontrivial_split(&MonoidElement::Value(q.clone()))? {
            None => AtomVerdict::Atom(AtomCertificate::ExpMonomial(q.clone())),
            Some((a, b)) => AtomVerdict::NotAtom(
                wrap(ExpSum::monomial(BigInt::one(), a.value().unwrap().clone())),
                wrap(ExpSum::monomial(BigInt::one(), b.value().unwrap().clone())),
            ),
        });
    }
    let g = r.content();
    if !g.is_one() {
        return Ok(AtomVerdict::NotAtom(wrap(ExpSum::monomial(g.clone(), Rational::zero())), wrap(r.scalar_div(&g).unwrap())));
    }
    let settled = match common_exponent(base, r, budget)? {
        CommonExponent::Found(d) => {
            return Ok(AtomVerdict::NotAtom(wrap(ExpSum::monomial(BigInt::one(), d.clone())), wrap(r.shift_down(&d).unwrap())));
        }
        CommonExponent::None => true,
        CommonExponent::Unsettled => false,
    };
    // Without exponential or integer divisors every nonunit factor has value ≥ 2,
    // so a value below 4 leaves room for one factor only.
    if settled {
        let terms = r.value_terms();
        if let Ok(Pow2Comparison::Less) = compare_pow2(&terms, 2, 64, budget.precision_cap) {
            let upper = expsum_log2_bounds(&terms, 64)?.upper;
            return Ok(AtomVerdict::Atom(AtomCertificate::ExpValueBelowFour { log2_upper: upper }));
        }
    }
    split_search(base, r, settled)
}

// With exponent 0 in the support both factors have minimum exponent 0, so each
// factor's support lies in the support of r and its coefficients are bounded
// by r's: the search below is then exhaustive.
fn split_search(base: ExpBase, r: &ExpSum, settled: bool) -> Result<AtomVerdict> {
    let zero_in_support = r.min_exponent().is_some_and(|q| q.is_zero());
    let offsets: Vec<Rational> = if zero_in_support {
        vec![Rational::zero()]
    } else {
        // Offsets of the cofactor's least exponent on the grid of the support.
        let l = lcm_all(r.support().map(|q| q.denom())) * BigInt::from(210);
        let min = r.min_exponent().unwrap();
        let top = (min * Rational::from_integer(l.clone())).floor().to_integer().to_u64().unwrap_or(u64::MAX).min(2000);
        (0..=top).map(|k| Rational::new(k.into(), l.clone())).collect()
    };
    let support: Vec<(Rational, BigInt)> = r.terms.iter().map(|(q, c)| (q.clone(), c.clone())).collect();
    let mut count = 0u64;
    for off in &offsets {
        if !base.contains_exponent(off)? {
            continue;
        }
        let shifted: Vec<(Rational, BigInt)> =
            support.iter().map(|(q, c)| (q - off, c.clone())).filter(|(q, _)| !q.is_negative()).collect();
        let mut choice = vec![BigInt::zero(); shifted.len()];
        loop {
            // Odometer over coefficient vectors bounded by r's coefficients.
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] <= shifted[i].1 {
                    break;
                }
                choice[i] = BigInt::zero();
                i += 1;
            }
            if i == choice.len() {
                break;
            }
            count += 1;
            if count > SPLIT_CANDIDATES {
                return Ok(AtomVerdict::Unknown(format!("split search stopped after {SPLIT_CANDIDATES} candidates")));
            }
            let f = ExpSum::new(shifted.iter().zip(&choice).map(|((q, _), c)| (q.clone(), c.clone())))?;
            if f.terms.len() < 2 || f == *r || !base.contains(&f)? {
                continue;
            }
            if let Some(g) = r.checked_div(&f) {
                if !g.is_one() && base.contains(&g)? {
                    return Ok(AtomVerdict::NotAtom(wrap(f), wrap(g)));
                }
            }
        }
    }
    if zero_in_support && settled {
        Ok(AtomVerdict::Atom(AtomCertificate::ExpExhaustive { candidates: count }))
    } else {
        Ok(AtomVerdict::Unknown("no split found on the exponent grid".into()))
    }
}
