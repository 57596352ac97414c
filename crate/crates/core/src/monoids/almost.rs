//! The almost atomic, non-atomic Puiseux monoid generated by
//! `aₙ = 1/pₙ`, `a'ₙ = 1/2^(n+2) + 1/2 − 1/pₙ` and `1/2^(n+2)`, where
//! `pₙ` runs over the primes greater than 4.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::reciprocal::{denominator_u64, p_residue};
use crate::error::{Error, Result};
use crate::exact::{factor_integer, is_power_of_two, PrimeSeq};
use crate::Rational;

/// Lower bound of the prime sequence.
pub const PRIME_FLOOR: u64 = 4;

/// `q = dyadic_summand + Σ (cₙ·aₙ + c'ₙ·a'ₙ)` with `cₙ, c'ₙ ∈ [0, pₙ − 1]`;
/// `pairs` lists only the nonzero pairs, keyed by the 1-based index `n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalDecomposition {
    pub dyadic_summand: Rational,
    pub pairs: BTreeMap<usize, (u64, u64)>,
}

impl CanonicalDecomposition {
    pub fn value(&self) -> Rational {
        self.pairs.iter().fold(self.dyadic_summand.clone(), |acc, (&n, &(c, c2))| {
            acc + Rational::from_integer(c.into()) * a(n) + Rational::from_integer(c2.into()) * a_prime(n)
        })
    }
}

pub fn p(n: usize) -> u64 {
    PrimeSeq::new(PRIME_FLOOR).nth(n)
}

fn index_of(prime: u64) -> Option<usize> {
    PrimeSeq::new(PRIME_FLOOR).index_of(prime)
}

pub fn dyadic(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

/// `aₙ = 1/pₙ`.
pub fn a(n: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(p(n)))
}

/// `a'ₙ = 1/2^(n+2) + 1/2 − 1/pₙ`.
pub fn a_prime(n: usize) -> Rational {
    delta(n) - a(n)
}

/// `aₙ + a'ₙ = 1/2^(n+2) + 1/2`.
pub fn delta(n: usize) -> Rational {
    dyadic(n as u32 + 2) + dyadic(1)
}

pub fn is_dyadic(q: &Rational) -> bool {
    !q.is_negative() && is_power_of_two(q.denom())
}

/// The atom `q` as `(n, primed)`: `aₙ` when `primed` is false, `a'ₙ` otherwise.
pub fn atom_index(q: &Rational) -> Option<(usize, bool)> {
    if !q.is_positive() {
        return None;
    }
    let den = denominator_u64(q).ok()?;
    let odd: Vec<u64> = factor_integer(den).ok()?.into_iter().filter(|&x| x != 2).collect();
    if odd.len() != 1 {
        return None;
    }
    let n = index_of(odd[0])?;
    if q == &a(n) {
        Some((n, false))
    } else if q == &a_prime(n) {
        Some((n, true))
    } else {
        None
    }
}

// For each odd prime of the denominator: its index, prime, and forced residue of cₙ − c'ₙ.
// None when the denominator rules out membership outright.
fn prime_data(q: &Rational) -> Result<Option<Vec<(usize, u64, u64)>>> {
    let den = denominator_u64(q)?;
    let f: Vec<u64> = factor_integer(den)?.into_iter().filter(|&x| x != 2).collect();
    if f.windows(2).any(|w| w[0] == w[1]) {
        return Ok(None);
    }
    let mut out = Vec::new();
    for &pr in &f {
        match index_of(pr) {
            Some(n) => out.push((n, pr, p_residue(q, pr))),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

// All (c, c', value) with c − c' ≡ r (mod p) in canonical ranges, ascending by value.
fn pair_options(n: usize, pr: u64, r: u64) -> Vec<(u64, u64, Rational)> {
    let (an, an2) = (a(n), a_prime(n));
    let mut v: Vec<(u64, u64, Rational)> = (0..pr)
        .map(|c2| {
            let c = (c2 + r) % pr;
            let val = Rational::from_integer(c.into()) * &an + Rational::from_integer(c2.into()) * &an2;
            (c, c2, val)
        })
        .collect();
    v.sort_by(|x, y| x.2.cmp(&y.2));
    v
}

/// Every canonical decomposition of `q`, sorted; empty iff `q` is not in the monoid.
pub fn canonical_decompositions(q: &Rational) -> Result<Vec<CanonicalDecomposition>> {
    if q.is_negative() {
        return Ok(Vec::new());
    }
    let data = match prime_data(q)? {
        Some(d) => d,
        None => return Ok(Vec::new()),
    };
    let opts: Vec<(usize, Vec<(u64, u64, Rational)>)> = data.iter().map(|&(n, pr, r)| (n, pair_options(n, pr, r))).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    decomp_dfs(q, &opts, 0, Rational::zero(), &mut chosen, &mut out);
    out.sort();
    Ok(out)
}

fn decomp_dfs(
    q: &Rational,
    opts: &[(usize, Vec<(u64, u64, Rational)>)],
    i: usize,
    used: Rational,
    chosen: &mut Vec<(usize, u64, u64)>,
    out: &mut Vec<CanonicalDecomposition>,
) {
    if i == opts.len() {
        let pairs = chosen.iter().filter(|t| t.1 != 0 || t.2 != 0).map(|&(n, c, c2)| (n, (c, c2))).collect();
        out.push(CanonicalDecomposition { dyadic_summand: q - used, pairs });
        return;
    }
    let (n, list) = &opts[i];
    for (c, c2, val) in list {
        let next = &used + val;
        if &next > q {
            break;
        }
        chosen.push((*n, *c, *c2));
        decomp_dfs(q, opts, i + 1, next, chosen, out);
        chosen.pop();
    }
}

// Smallest amount the odd-prime parts force out of q; None if q is not a member.
fn min_forced(q: &Rational) -> Result<Option<Rational>> {
    if q.is_negative() {
        return Ok(None);
    }
    let data = match prime_data(q)? {
        Some(d) => d,
        None => return Ok(None),
    };
    let total = data.iter().fold(Rational::zero(), |acc, &(n, pr, r)| acc + pair_options(n, pr, r).swap_remove(0).2);
    Ok((total <= *q).then_some(total))
}

pub fn contains(q: &Rational) -> Result<bool> {
    Ok(min_forced(q)?.is_some())
}

/// The greatest divisor of `q` lying in the dyadic submonoid: the largest
/// dyadic summand over all canonical decompositions.
pub fn greatest_divisor_in_dyadic(q: &Rational) -> Result<Rational> {
    match min_forced(q)? {
        Some(m) => Ok(q - m),
        None => Err(Error::NotAnElement(q.to_string())),
    }
}

/// Odd primes dividing the denominator of a member `q`.
pub fn odd_primes(q: &Rational) -> Result<Vec<u64>> {
    Ok(prime_data(q)?.unwrap_or_default().into_iter().map(|t| t.1).collect())
}
