//! Outward-rounded rational enclosures of `e^q` and `log₂` of finite
//! exponential sums. Every endpoint is a dyadic rational, and every
//! truncation carries an explicit remainder bound.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::floor;
use crate::Rational;

/// A closed rational interval `[lower, upper]` guaranteed to contain a real quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealBound {
    pub lower: Rational,
    pub upper: Rational,
}

impl RealBound {
    pub fn new(lower: Rational, upper: Rational) -> Self {
        assert!(lower <= upper, "inverted real bound");
        RealBound { lower, upper }
    }

    pub fn exact(v: Rational) -> Self {
        RealBound { lower: v.clone(), upper: v }
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lower <= v && v <= &self.upper
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lower + &self.upper) / Rational::from_integer(2.into())
    }

    fn add(&self, other: &RealBound) -> RealBound {
        RealBound { lower: &self.lower + &other.lower, upper: &self.upper + &other.upper }
    }

    fn scale(&self, c: &Rational) -> RealBound {
        debug_assert!(!c.is_negative());
        RealBound { lower: &self.lower * c, upper: &self.upper * c }
    }

    fn round_out(&self, prec: u32) -> RealBound {
        RealBound { lower: round_down(&self.lower, prec), upper: round_up(&self.upper, prec) }
    }
}

impl fmt::Display for RealBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

fn round_down(r: &Rational, prec: u32) -> Rational {
    let s = pow2(prec);
    Rational::new(floor(&(r * Rational::from_integer(s.clone()))), s)
}

fn round_up(r: &Rational, prec: u32) -> Rational {
    let s = pow2(prec);
    Rational::new((r * Rational::from_integer(s.clone())).ceil().to_integer(), s)
}

fn fdiv(a: &BigInt, d: &BigInt) -> BigInt {
    a.div_floor(d)
}

fn cdiv(a: &BigInt, d: &BigInt) -> BigInt {
    -((-a).div_floor(d))
}

fn fixed(v: BigInt, wp: u32) -> Rational {
    Rational::new(v, pow2(wp))
}

/// Enclosure of `e^q` for rational `q ≥ 0`, with endpoints on the `2^-prec` grid.
pub fn exp_bounds(q: &Rational, prec: u32) -> RealBound {
    assert!(!q.is_negative(), "exp_bounds expects a nonnegative exponent");
    if q.is_zero() {
        return RealBound::exact(Rational::one());
    }
    // Halve until the argument is at most 1/2, then square back.
    let half = Rational::new(1.into(), 2.into());
    let mut x = q.clone();
    let mut halvings = 0u32;
    while x > half {
        x /= Rational::from_integer(2.into());
        halvings += 1;
    }
    let wp = prec + 2 * halvings + 16;
    let (xn, xd) = (x.numer().clone(), x.denom().clone());
    // Fixed point at scale 2^wp; lower terms round down, upper terms round up.
    let one = pow2(wp);
    let (mut tlo, mut thi) = (one.clone(), one.clone());
    let (mut slo, mut shi) = (BigInt::zero(), BigInt::zero());
    let mut k = 0u32;
    while thi > BigInt::one() {
        slo += &tlo;
        shi += &thi;
        k += 1;
        let den = &xd * BigInt::from(k);
        tlo = fdiv(&(&tlo * &xn), &den);
        thi = cdiv(&(&thi * &xn), &den);
    }
    // Tail after k terms is at most term/(1 - x/(k+1)) <= 2·term for x <= 1/2.
    shi += thi * 2;
    let (mut lo, mut hi) = (slo, shi);
    for _ in 0..halvings {
        lo = fdiv(&(&lo * &lo), &one);
        hi = cdiv(&(&hi * &hi), &one);
    }
    RealBound { lower: fixed(lo, wp), upper: fixed(hi, wp) }.round_out(prec)
}

// 2·atanh(z) for 0 <= z <= 1/3, i.e. ln((1+z)/(1-z)).
fn two_atanh(z: &Rational, wp: u32) -> RealBound {
    if z.is_zero() {
        return RealBound::exact(Rational::zero());
    }
    let z2 = z * z;
    let (zn, zd) = (z2.numer().clone(), z2.denom().clone());
    let one = pow2(wp);
    let mut plo = fdiv(&(&one * z.numer()), z.denom());
    let mut phi = cdiv(&(&one * z.numer()), z.denom());
    let (mut slo, mut shi) = (BigInt::zero(), BigInt::zero());
    let mut k = 0u32;
    while phi > BigInt::zero() {
        let m = BigInt::from(2 * k + 1);
        slo += fdiv(&plo, &m);
        shi += cdiv(&phi, &m);
        plo = fdiv(&(&plo * &zn), &zd);
        phi = cdiv(&(&phi * &zn), &zd);
        k += 1;
        if phi <= BigInt::one() {
            break;
        }
    }
    // Tail bound: z^(2k+1) / ((2k+1)(1 - z²)) <= (9/8)·z^(2k+1) since z <= 1/3.
    shi += cdiv(&(phi * 9), &BigInt::from(8 * (2 * k + 1)));
    RealBound { lower: fixed(slo * 2, wp), upper: fixed(shi * 2, wp) }
}

fn ln_unit_interval(y: &Rational, wp: u32) -> RealBound {
    // y in [1, 2): z = (y-1)/(y+1) in [0, 1/3).
    let z = (y - Rational::one()) / (y + Rational::one());
    two_atanh(&z, wp)
}

fn ln2(wp: u32) -> RealBound {
    two_atanh(&Rational::new(1.into(), 3.into()), wp)
}

// floor(log2 v) for v > 0.
fn ilog2(v: &Rational) -> i64 {
    let n = v.numer().bits() as i64;
    let d = v.denom().bits() as i64;
    let mut k = n - d;
    let two = Rational::from_integer(2.into());
    let p = |k: i64| {
        if k >= 0 {
            Rational::from_integer(pow2(k as u32))
        } else {
            Rational::new(BigInt::one(), pow2((-k) as u32))
        }
    };
    while &p(k) > v {
        k -= 1;
    }
    while &(p(k) * &two) <= v {
        k += 1;
    }
    k
}

fn log2_point(v: &Rational, wp: u32) -> RealBound {
    assert!(v.is_positive());
    let k = ilog2(v);
    let scale = if k >= 0 { Rational::from_integer(pow2(k as u32)) } else { Rational::new(BigInt::one(), pow2((-k) as u32)) };
    let y = v / scale;
    let ln_y = ln_unit_interval(&y, wp);
    let l2 = ln2(wp);
    let kq = Rational::from_integer(k.into());
    RealBound { lower: &kq + &ln_y.lower / &l2.upper, upper: kq + &ln_y.upper / &l2.lower }
}

/// Enclosure of `log₂ v` for every `v` in the positive interval `value`.
pub fn log2_bounds(value: &RealBound, prec: u32) -> RealBound {
    let wp = prec + 16;
    let lo = log2_point(&value.lower, wp);
    let hi = log2_point(&value.upper, wp);
    RealBound { lower: lo.lower, upper: hi.upper }.round_out(prec)
}

fn expsum_value_bounds(terms: &[(BigInt, Rational)], prec: u32) -> RealBound {
    let mut acc = RealBound::exact(Rational::zero());
    for (c, q) in terms {
        acc = acc.add(&exp_bounds(q, prec + 8).scale(&Rational::from_integer(c.clone())));
    }
    acc
}

/// Enclosure of `log₂(Σ cᵢ·e^{qᵢ})` at `prec` bits of working precision.
pub fn expsum_log2_bounds(terms: &[(BigInt, Rational)], prec: u32) -> Result<RealBound> {
    if terms.is_empty() {
        return Err(Error::InvalidInput("empty exponential sum".into()));
    }
    if terms.iter().any(|(c, q)| !c.is_positive() || q.is_negative()) {
        return Err(Error::InvalidInput("coefficients must be positive and exponents nonnegative".into()));
    }
    Ok(log2_bounds(&expsum_value_bounds(terms, prec), prec))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pow2Comparison {
    Less,
    Equal,
    Greater,
}

/// Decides how `Σ cᵢ·e^{qᵢ}` compares with `2^m`, doubling the precision
/// from `start_prec` up to `cap` before giving up.
pub fn compare_pow2(terms: &[(BigInt, Rational)], m: u32, start_prec: u32, cap: u32) -> Result<Pow2Comparison> {
    let target = Rational::from_integer(pow2(m));
    if terms.iter().all(|(_, q)| q.is_zero()) {
        let v: BigInt = terms.iter().map(|(c, _)| c.clone()).sum();
        return Ok(match Rational::from_integer(v).cmp(&target) {
            Ordering::Less => Pow2Comparison::Less,
            Ordering::Equal => Pow2Comparison::Equal,
            Ordering::Greater => Pow2Comparison::Greater,
        });
    }
    let mut prec = start_prec.max(8);
    loop {
        let b = expsum_value_bounds(terms, prec);
        if b.upper < target {
            return Ok(Pow2Comparison::Less);
        }
        if b.lower > target {
            return Ok(Pow2Comparison::Greater);
        }
        if prec >= cap {
            return Err(Error::IndeterminateAtPrecision(cap));
        }
        prec = (prec * 2).min(cap);
    }
}
