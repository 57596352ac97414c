//! The monoid generated by reciprocals of primes, and its union with ℚ≥1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Obstruction;
use crate::error::{Error, Result};
use crate::exact::{factor_integer, val_nonzero};
use crate::Rational;

/// `q = n + Σ rₚ/p` over the primes dividing the denominator, with `rₚ ∈ [1, p−1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueForm {
    pub residues: Vec<(u64, u64)>,
    pub integer_part: Rational,
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a is coprime to p.
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

pub(crate) fn denominator_u64(q: &Rational) -> Result<u64> {
    q.denom().to_u64().ok_or_else(|| Error::Overflow(q.to_string()))
}

/// Residue of `q`'s `p`-part: the unique `r ∈ [0, p−1]` with `v_p(q − r/p) ≥ 0`,
/// given `v_p(q) ≥ −1`.
pub(crate) fn p_residue(q: &Rational, p: u64) -> u64 {
    let d = q.denom();
    let pb = BigInt::from(p);
    if !(d % &pb).is_zero() {
        return 0;
    }
    let cof = ((d / &pb) % &pb).to_u64().unwrap();
    let a = q.numer().mod_floor(&pb).to_u64().unwrap();
    (a as u128 * inv_mod(cof, p) as u128 % p as u128) as u64
}

/// Splits `q ≥ 0` into its forced residues, or returns the obstruction to membership.
pub fn residue_form(q: &Rational) -> Result<std::result::Result<ResidueForm, Obstruction>> {
    let den = denominator_u64(q)?;
    let f = factor_integer(den)?;
    if let Some(w) = f.windows(2).find(|w| w[0] == w[1]) {
        let p = w[0];
        return Ok(Err(Obstruction::Valuation { prime: p, valuation: val_nonzero(q, p), min_reachable: -1 }));
    }
    let mut residues = Vec::new();
    let mut sum = Rational::zero();
    for &p in &f {
        let r = p_residue(q, p);
        sum += Rational::new(BigInt::from(r), BigInt::from(p));
        residues.push((p, r));
    }
    let n = q - &sum;
    if n.is_negative() {
        return Ok(Err(Obstruction::ResidueExcess { required: sum, value: q.clone() }));
    }
    Ok(Ok(ResidueForm { residues, integer_part: n }))
}

pub fn in_prime_reciprocal(q: &Rational) -> Result<bool> {
    if q.is_negative() {
        return Ok(false);
    }
    Ok(residue_form(q)?.is_ok())
}

pub fn in_mf(q: &Rational) -> Result<bool> {
    if q.is_negative() {
        return Ok(false);
    }
    if q.is_zero() || q >= &Rational::one() {
        return Ok(true);
    }
    in_prime_reciprocal(q)
}

/// The prime `p` with `q = 1/p`, if any.
pub fn reciprocal_prime(q: &Rational) -> Option<u64> {
    if !q.numer().is_one() {
        return None;
    }
    let p = q.denom().to_u64()?;
    crate::exact::is_prime(p).then_some(p)
}
