//! Exact arithmetic substrate: rationals, p-adic valuations, primes,
//! quadratic extensions and certified real enclosures.

mod bounds;
mod primes;
mod quad;

pub use bounds::{compare_pow2, exp_bounds, expsum_log2_bounds, log2_bounds, Pow2Comparison, RealBound};
pub use primes::{factor_integer, is_prime, is_squarefree, primes_greater_than, PrimeSeq};
pub use quad::QuadExt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Builds the rational `n/d`. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

pub fn is_natural(q: &Rational) -> bool {
    q.is_integer() && !q.is_negative()
}

/// Denominator as `u64`, if it fits.
pub fn denom_u64(q: &Rational) -> Option<u64> {
    q.denom().to_u64()
}

pub fn to_biguint(n: &BigInt) -> Option<BigUint> {
    n.to_biguint()
}

/// `p`-adic valuation of a rational number; `Infinity` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// The exponent of `p` in `q`.
pub fn padic_valuation(q: &Rational, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    if q.is_zero() {
        return Ok(Valuation::Infinity);
    }
    let pb = BigInt::from(p);
    Ok(Valuation::Finite(int_valuation(q.numer(), &pb) - int_valuation(q.denom(), &pb)))
}

/// Valuation for a known prime `p` of a nonzero rational; skips the primality check.
pub(crate) fn val_nonzero(q: &Rational, p: u64) -> i64 {
    debug_assert!(!q.is_zero());
    let pb = BigInt::from(p);
    int_valuation(q.numer(), &pb) - int_valuation(q.denom(), &pb)
}

pub fn is_power_of_two(n: &BigInt) -> bool {
    n.is_positive() && (n & (n - BigInt::one())).is_zero()
}

pub fn lcm_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}

pub fn gcd_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Floor of a rational as a big integer.
pub fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}
