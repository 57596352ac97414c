//! Independent brute-force oracles, generators and a small property runner
//! shared by the integration test targets. Nothing here calls the closed-form
//! procedures it is used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subatomica_core::exact::{int, rat};
use subatomica_core::monoids::almost;
use subatomica_core::Rational;

pub type PropResult = Result<(), TestCaseError>;

/// A named property; `Err` carries the shrunk counterexample.
pub struct Prop {
    pub name: &'static str,
    pub run: fn() -> Result<(), String>,
}

/// Runs `test` on `cases` inputs from a fixed-seed generator, so repeated runs agree.
pub fn check<S: Strategy>(cases: u32, strat: S, test: impl Fn(S::Value) -> PropResult) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strat, test).map_err(|e| e.to_string())
}

/// Runs every property, returning the names of those that failed with their messages.
pub fn run_all(props: &[Prop]) -> Vec<(String, String)> {
    let mut failed = Vec::new();
    for p in props {
        let start = std::time::Instant::now();
        let r = (p.run)();
        eprintln!("  {:<64} {:>8.2?}", p.name, start.elapsed());
        if let Err(e) = r {
            failed.push((p.name.to_string(), e));
        }
    }
    failed
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(r: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    rat(r.gen_range(0..=max_num), r.gen_range(1..=max_den))
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=30).prop_map(|(n, d)| rat(n, d))
}

pub fn positive_rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_num, 1..=max_den).prop_map(|(n, d)| rat(n, d))
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

// ---------------------------------------------------------------- polynomials

/// Integer polynomial with trailing zeros trimmed.
pub fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn imul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// `f / g` by schoolbook division over ℤ, when exact.
pub fn idiv(f: &[i64], g: &[i64]) -> Option<Vec<i64>> {
    let (f, g) = (trim(f.to_vec()), trim(g.to_vec()));
    if g.is_empty() || f.len() < g.len() {
        return if f.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut rem = f.clone();
    let lead = *g.last().unwrap();
    let mut q = vec![0; f.len() - g.len() + 1];
    for k in (0..q.len()).rev() {
        let top = rem[k + g.len() - 1];
        if top % lead != 0 {
            return None;
        }
        let c = top / lead;
        q[k] = c;
        for (j, gj) in g.iter().enumerate() {
            rem[k + j] -= c * gj;
        }
    }
    rem.iter().all(|&x| x == 0).then(|| trim(q))
}

/// Every polynomial of degree ≤ `deg` with coefficients in `0..=max`, zero excluded.
pub fn n0_grid(deg: usize, max: i64) -> Vec<Vec<i64>> {
    let radix = max + 1;
    let total = radix.pow(deg as u32 + 1);
    (1..total)
        .map(|mut code| {
            let v = (0..=deg)
                .map(|_| {
                    let c = code % radix;
                    code /= radix;
                    c
                })
                .collect();
            trim(v)
        })
        .collect()
}

/// Proper nonunit divisors `g` of `f` in ℕ₀[x] with cofactors, by trying every
/// polynomial whose coefficients are bounded by those of `f`.
pub fn n0_divisors(f: &[i64]) -> Vec<(Vec<i64>, Vec<i64>)> {
    let f = trim(f.to_vec());
    let max = *f.iter().max().unwrap();
    let mut out = Vec::new();
    for g in n0_grid(f.len() - 1, max) {
        if g == [1] || g == f {
            continue;
        }
        if let Some(h) = idiv(&f, &g) {
            if h.iter().all(|&c| c >= 0) {
                out.push((g, h));
            }
        }
    }
    out
}

pub fn n0_is_atom(f: &[i64]) -> bool {
    trim(f.to_vec()) != [1] && n0_divisors(f).is_empty()
}

/// All factorizations of `f` into atoms of ℕ₀[x], each a sorted multiset.
pub fn n0_factorizations(f: &[i64], memo: &mut HashMap<Vec<i64>, BTreeSet<Vec<Vec<i64>>>>) -> BTreeSet<Vec<Vec<i64>>> {
    let f = trim(f.to_vec());
    if let Some(v) = memo.get(&f) {
        return v.clone();
    }
    let divs = n0_divisors(&f);
    let mut out = BTreeSet::new();
    if divs.is_empty() {
        out.insert(vec![f.clone()]);
    }
    for (g, h) in divs {
        if !n0_is_atom(&g) {
            continue;
        }
        for mut rest in n0_factorizations(&h, memo) {
            rest.push(g.clone());
            rest.sort();
            out.insert(rest);
        }
    }
    memo.insert(f, out.clone());
    out
}

// --------------------------------------------------------------------- monoids

fn den_primes(b: u64) -> Vec<u64> {
    primes_up_to(b).into_iter().filter(|p| b % p == 0).collect()
}

/// `q ∈ ⟨1/p : p prime⟩` by trying all coefficient vectors over the primes of
/// the denominator together with 2 (halves supply any integer part).
pub fn in_p_oracle(q: &Rational) -> bool {
    if q.is_negative() {
        return false;
    }
    if q.is_zero() {
        return true;
    }
    let b = q.denom().to_u64().unwrap();
    let mut primes = den_primes(b);
    if !primes.contains(&2) {
        primes.push(2);
    }
    let top = q.ceil().to_integer().to_i64().unwrap();
    fn go(q: &Rational, primes: &[u64], top: i64) -> bool {
        match primes.split_first() {
            None => q.is_zero(),
            Some((&p, rest)) => (0..=top * p as i64).any(|c| {
                let r = q - rat(c, p as i64);
                !r.is_negative() && go(&r, rest, top)
            }),
        }
    }
    go(q, &primes, top)
}

pub fn in_mf_oracle(q: &Rational) -> bool {
    *q >= Rational::one() || in_p_oracle(q)
}

/// Canonical decompositions of `q` in the almost atomic example by scanning every
/// `(c, c')` in `[0, p)²` for each odd prime of the denominator; the remainder
/// has to be a nonnegative dyadic rational.
pub fn maa_scan(q: &Rational) -> Vec<(Rational, BTreeMap<usize, (u64, u64)>)> {
    let b = q.denom().to_u64().unwrap();
    let primes: Vec<u64> = den_primes(b).into_iter().filter(|&p| p != 2).collect();
    let mut idx = Vec::new();
    for &p in &primes {
        match (1..=40).find(|&n| almost::p(n) == p) {
            Some(n) => idx.push(n),
            None => return Vec::new(),
        }
    }
    if primes.iter().any(|&p| (b / p) % p == 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Rational, BTreeMap<usize, (u64, u64)>)> = vec![(0, q.clone(), BTreeMap::new())];
    while let Some((i, rest, chosen)) = stack.pop() {
        if i == idx.len() {
            let den = rest.denom().clone();
            if !rest.is_negative() && (&den & (&den - BigInt::one())).is_zero() {
                out.push((rest, chosen));
            }
            continue;
        }
        let n = idx[i];
        let p = primes[i];
        for c in 0..p {
            for c2 in 0..p {
                let r = &rest - int(c as i64) * almost::a(n) - int(c2 as i64) * almost::a_prime(n);
                if r.is_negative() {
                    continue;
                }
                let mut ch = chosen.clone();
                if c != 0 || c2 != 0 {
                    ch.insert(n, (c, c2));
                }
                stack.push((i + 1, r, ch));
            }
        }
    }
    out.sort();
    out
}

/// A random element of the almost atomic example built from its generators,
/// with denominator dividing `2⁶·5·7·11`.
pub fn random_maa(r: &mut ChaCha8Rng) -> Rational {
    let mut q = Rational::zero();
    for n in 1..=3 {
        if r.gen_bool(0.6) {
            q += int(r.gen_range(0..8)) * almost::a(n);
        }
        if r.gen_bool(0.4) {
            q += int(r.gen_range(0..4)) * almost::a_prime(n);
        }
    }
    q += rat(r.gen_range(0..20), 64);
    if q.is_zero() {
        q = almost::a(1);
    }
    q
}

// --------------------------------------------------------------------- reals

/// `Σ c·e^q` in double precision, by the library-independent `f64::exp`.
pub fn expsum_f64(terms: &[(BigInt, Rational)]) -> f64 {
    terms.iter().map(|(c, q)| c.to_f64().unwrap() * (q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap()).exp()).sum()
}

pub fn to_f64(q: &Rational) -> f64 {
    q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap()
}
