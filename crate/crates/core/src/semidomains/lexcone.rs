//! The monoid algebra ℚ[x; M] of the lexicographic cone
//! `M = (ℕ₀ × {0}) ∪ (ℤ × ℕ)`. Writing `X^(b,c) = x^b·y^c`, it is the ring
//! `ℚ[x] + y·ℚ[x^±1][y]`, and `φ(f)` is the degree in `y`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{AtomCertificate, AtomVerdict, SemidomainElement};
use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::upoly::{factor_rat_poly, primitive_part, rational_roots, to_rat};
use crate::{DensePoly, RatPoly, Rational};

/// `Σ q·X^(b,c)`, keyed internally by `(c, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LexPoly {
    terms: BTreeMap<(i64, i64), Rational>,
}

pub fn in_cone(b: i64, c: i64) -> bool {
    c >= 1 || (c == 0 && b >= 0)
}

impl LexPoly {
    /// Terms given as `((b, c), q)`; repeated exponents are summed.
    pub fn new(terms: impl IntoIterator<Item = ((i64, i64), Rational)>) -> Result<Self> {
        let mut map: BTreeMap<(i64, i64), Rational> = BTreeMap::new();
        for ((b, c), q) in terms {
            if !in_cone(b, c) {
                return Err(Error::InvalidInput(format!("({b},{c}) is not in the lexicographic cone")));
            }
            *map.entry((c, b)).or_insert_with(Rational::zero) += q;
        }
        map.retain(|_, q| !q.is_zero());
        Ok(LexPoly { terms: map })
    }

    pub fn monomial(q: Rational, b: i64, c: i64) -> Result<Self> {
        LexPoly::new([((b, c), q)])
    }

    pub fn one() -> Self {
        LexPoly::monomial(Rational::one(), 0, 0).unwrap()
    }

    pub fn from_rat_poly(p: &RatPoly) -> Self {
        LexPoly { terms: p.terms().map(|(i, q)| ((0, i as i64), q.clone())).collect() }
    }

    /// `((b, c), q)` in increasing `(c, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &Rational)> {
        self.terms.iter().map(|(&(c, b), q)| ((b, c), q))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains_key(&(0, 0))
    }

    /// Largest second coordinate in the support.
    pub fn phi(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|&(c, _)| c as u32)
    }

    pub fn add(&self, o: &LexPoly) -> LexPoly {
        let mut terms = self.terms.clone();
        for (k, q) in &o.terms {
            *terms.entry(*k).or_insert_with(Rational::zero) += q;
        }
        terms.retain(|_, q| !q.is_zero());
        LexPoly { terms }
    }

    pub fn neg(&self) -> LexPoly {
        LexPoly { terms: self.terms.iter().map(|(k, q)| (*k, -q)).collect() }
    }

    pub fn mul(&self, o: &LexPoly) -> LexPoly {
        let mut terms: BTreeMap<(i64, i64), Rational> = BTreeMap::new();
        for ((c1, b1), q1) in &self.terms {
            for ((c2, b2), q2) in &o.terms {
                *terms.entry((c1 + c2, b1 + b2)).or_insert_with(Rational::zero) += q1 * q2;
            }
        }
        terms.retain(|_, q| !q.is_zero());
        LexPoly { terms }
    }

    /// The `y^c` coefficients as Laurent polynomials in `x`, for `c = 0..=φ`.
    fn strata(&self) -> Vec<Laurent> {
        let phi = match self.phi() {
            Some(p) => p as usize,
            None => return Vec::new(),
        };
        let mut maps: Vec<BTreeMap<i64, Rational>> = vec![BTreeMap::new(); phi + 1];
        for (&(c, b), q) in &self.terms {
            maps[c as usize].insert(b, q.clone());
        }
        maps.into_iter().map(|m| Laurent::from_map(&m)).collect()
    }

    fn from_strata(s: &[Laurent]) -> Option<LexPoly> {
        let mut terms = BTreeMap::new();
        for (c, l) in s.iter().enumerate() {
            if c == 0 && !l.is_zero() && l.low < 0 {
                return None;
            }
            for (i, q) in l.body.terms() {
                terms.insert((c as i64, l.low + i as i64), q.clone());
            }
        }
        Some(LexPoly { terms })
    }

    /// `self / b` when the quotient in ℚ[x^±1][y] lies in ℚ[x; M].
    pub fn checked_div(&self, b: &LexPoly) -> Option<LexPoly> {
        let q = ambient_div(&self.strata(), &b.strata())?;
        LexPoly::from_strata(&q).filter(|p| !p.is_zero())
    }
}

impl fmt::Display for LexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((b, c), q)) in self.terms().enumerate() {
            match (i, q.is_negative()) {
                (0, _) => write!(f, "{q}")?,
                (_, true) => write!(f, " - {}", -q)?,
                (_, false) => write!(f, " + {q}")?,
            }
            write!(f, "*X^({b},{c})")?;
        }
        Ok(())
    }
}

/// `x^low · body` with `body(0) ≠ 0`, or zero.
#[derive(Debug, Clone, PartialEq)]
struct Laurent {
    low: i64,
    body: RatPoly,
}

impl Laurent {
    fn zero() -> Self {
        Laurent { low: 0, body: RatPoly::zero() }
    }

    fn new(low: i64, body: RatPoly) -> Self {
        match body.ord() {
            None => Laurent::zero(),
            Some(k) => Laurent { low: low + k as i64, body: body.unshift(k) },
        }
    }

    fn from_map(m: &BTreeMap<i64, Rational>) -> Self {
        let Some((&low, _)) = m.iter().next() else { return Laurent::zero() };
        let top = *m.keys().next_back().unwrap();
        let v = (low..=top).map(|b| m.get(&b).cloned().unwrap_or_else(Rational::zero)).collect();
        Laurent::new(low, DensePoly::new(v))
    }

    fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    fn mul(&self, o: &Laurent) -> Laurent {
        Laurent::new(self.low + o.low, &self.body * &o.body)
    }

    fn sub(&self, o: &Laurent) -> Laurent {
        if self.is_zero() {
            return Laurent::new(o.low, -&o.body);
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let a = self.body.shift((self.low - low) as usize);
        let b = o.body.shift((o.low - low) as usize);
        Laurent::new(low, &a - &b)
    }

    fn exact_div(&self, o: &Laurent) -> Option<Laurent> {
        Some(Laurent::new(self.low - o.low, self.body.exact_div(&o.body)?))
    }

    fn shifted(&self, k: i64) -> Laurent {
        Laurent { low: self.low + k, body: self.body.clone() }
    }

    /// `x^k · self` as a polynomial, for `k ≥ −low`.
    fn to_poly(&self, k: i64) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        self.body.shift((self.low + k) as usize)
    }
}

// Long division in y over ℚ[x^±1]; None unless exact.
fn ambient_div(a: &[Laurent], b: &[Laurent]) -> Option<Vec<Laurent>> {
    let db = b.len().checked_sub(1)?;
    let mut rem: Vec<Laurent> = a.to_vec();
    if rem.len() < b.len() {
        return rem.iter().all(|l| l.is_zero()).then(Vec::new);
    }
    let mut q = vec![Laurent::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        if rem[i + db].is_zero() {
            continue;
        }
        let t = rem[i + db].exact_div(&b[db])?;
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] = rem[i + j].sub(&t.mul(bj));
        }
        q[i] = t;
    }
    rem.iter().all(|l| l.is_zero()).then_some(q)
}

fn wrap(p: LexPoly) -> SemidomainElement {
    SemidomainElement::Lex(p)
}

fn split(f: &LexPoly, g: LexPoly) -> Result<AtomVerdict> {
    let h = f.checked_div(&g).ok_or_else(|| Error::InvalidInput(format!("{g} should divide {f}")))?;
    Ok(AtomVerdict::NotAtom(wrap(g), wrap(h)))
}

fn monic_factors(p: &RatPoly, cap: usize) -> Result<Vec<RatPoly>> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    Ok(factor_rat_poly(p, cap)?.1.iter().map(|g| to_rat(g).monic()).collect())
}

// Monic divisors of x^e·∏ factors, without repeats.
fn monic_divisors(e: usize, factors: &[RatPoly]) -> Vec<RatPoly> {
    let mut out: Vec<RatPoly> = (0..=e).map(|i| RatPoly::monomial(Rational::one(), i)).collect();
    for g in factors {
        let mut next = out.clone();
        for d in &out {
            next.push(d * g);
        }
        next.sort_by(crate::upoly::canonical_cmp);
        next.dedup();
        out = next;
    }
    out
}

pub(crate) fn is_atom(f: &LexPoly, budget: &SearchBudget) -> Result<AtomVerdict> {
    let phi = f.phi().ok_or(Error::ZeroInput)?;
    if f.is_unit() {
        return Err(Error::UnitInput);
    }
    let cap = budget.factor_degree_cap;
    let s = f.strata();
    if phi == 0 {
        // Here both factors of any split have φ = 0, so this is ℚ[x].
        let p = s[0].to_poly(0);
        let factors = match factor_rat_poly(&p, cap) {
            Ok(v) => v.1,
            Err(Error::LimitExceeded(m)) => return Ok(AtomVerdict::Unknown(m)),
            Err(e) => return Err(e),
        };
        if factors.len() == 1 {
            return Ok(AtomVerdict::Atom(AtomCertificate::LexIrreducible));
        }
        return split(f, LexPoly::from_rat_poly(&to_rat(&factors[0])));
    }
    // Divisors with φ = 0: irreducibles dividing every stratum, or x.
    let g = s.iter().filter(|l| !l.is_zero()).fold(RatPoly::zero(), |acc, l| acc.gcd(&l.body));
    if g.degree().unwrap_or(0) > 0 {
        match monic_factors(&g, cap) {
            Ok(fs) => return split(f, LexPoly::from_rat_poly(&fs[0])),
            Err(Error::LimitExceeded(m)) => return Ok(AtomVerdict::Unknown(m)),
            Err(e) => return Err(e),
        }
    }
    if s[0].is_zero() || s[0].low >= 1 {
        return split(f, LexPoly::from_rat_poly(&RatPoly::x()));
    }
    if phi == 1 {
        return Ok(AtomVerdict::Atom(AtomCertificate::LexPhiOne));
    }
    match linear_factor(f, &s, cap) {
        Ok(Some(g)) => split(f, g),
        Ok(None) if phi <= 3 => Ok(AtomVerdict::Atom(AtomCertificate::LexNoLinearFactor { phi })),
        Ok(None) => Ok(AtomVerdict::Unknown(format!("no factor linear in y; φ = {phi} also allows two factors with φ ≥ 2"))),
        Err(Error::LimitExceeded(m)) => Ok(AtomVerdict::Unknown(m)),
        Err(e) => Err(e),
    }
}

// A divisor with φ = 1, found by the rational root test in y over ℚ[x]:
// after clearing x-denominators, a root y = −c·A/B has A | F₀ and B | F_φ.
fn linear_factor(f: &LexPoly, s: &[Laurent], cap: usize) -> Result<Option<LexPoly>> {
    let phi = s.len() - 1;
    let n = s.iter().filter(|l| !l.is_zero()).map(|l| -l.low).max().unwrap().max(0);
    let polys: Vec<RatPoly> = s.iter().map(|l| l.to_poly(n)).collect();
    let a_divs = monic_divisors((s[0].low + n) as usize, &monic_factors(&s[0].body, cap)?);
    let b_divs = monic_divisors((s[phi].low + n) as usize, &monic_factors(&s[phi].body, cap)?);
    for a in &a_divs {
        for b in &b_divs {
            if a.gcd(b).degree() != Some(0) {
                continue;
            }
            // Σ F_k·(−cA)^k·B^(φ−k) = Σ C_k c^k must vanish identically.
            let cs: Vec<RatPoly> = (0..=phi)
                .map(|k| {
                    let sign = if k % 2 == 1 { -Rational::one() } else { Rational::one() };
                    (&(&polys[k] * &a.pow(k as u32)) * &b.pow((phi - k) as u32)).scale(&sign)
                })
                .collect();
            let top = cs.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
            let Some(pc) =
                (0..=top).map(|t| DensePoly::new(cs.iter().map(|c| c.coeff(t)).collect::<Vec<_>>())).find(|p: &RatPoly| !p.is_zero())
            else {
                continue;
            };
            if pc.degree() == Some(0) {
                continue;
            }
            for c in rational_roots(&primitive_part(&pc).1)? {
                if c.is_zero() {
                    continue;
                }
                let total = cs.iter().rev().fold(RatPoly::zero(), |acc, ck| &acc.scale(&c) + ck);
                if !total.is_zero() {
                    continue;
                }
                if let Some(g) = place_linear(f, a.scale(&c), b.clone()) {
                    return Ok(Some(g));
                }
            }
        }
    }
    Ok(None)
}

// Scales c·A + y·B by the power of x that puts both it and the cofactor in ℚ[x; M].
fn place_linear(f: &LexPoly, ca: RatPoly, b: RatPoly) -> Option<LexPoly> {
    let g = [Laurent::new(0, ca), Laurent::new(0, b)];
    let h = ambient_div(&f.strata(), &g)?;
    let t = (-h[0].low).max(0);
    if h[0].is_zero() || g[0].low < t {
        return None;
    }
    let g2: Vec<Laurent> = g.iter().map(|l| l.shifted(-t)).collect();
    let out = LexPoly::from_strata(&g2)?;
    f.checked_div(&out).map(|_| out)
}
