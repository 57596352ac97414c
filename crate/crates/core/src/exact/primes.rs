use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

// The first twelve primes are a deterministic witness set for all n < 3.3e24.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

// Brent's variant of Pollard rho; `n` is odd, composite and not a prime power of a small prime.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n % p == 0 {
            out.push(p);
            factor_into(n / p, out);
            return;
        }
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Prime factors of `n` with multiplicity, ascending.
pub fn factor_integer(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut out = Vec::new();
    factor_into(n, &mut out);
    out.sort_unstable();
    Ok(out)
}

pub fn is_squarefree(n: u64) -> bool {
    match factor_integer(n) {
        Ok(f) => f.windows(2).all(|w| w[0] != w[1]),
        Err(_) => false,
    }
}

/// The first `count` primes strictly greater than `bound`, ascending.
pub fn primes_greater_than(bound: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = bound;
    while out.len() < count {
        n += 1;
        if is_prime(n) {
            out.push(n);
        }
    }
    out
}

/// Ascending list of all primes above a fixed lower bound, grown on demand.
///
/// Growth never mutates a shared value: [`PrimeSeq::extended`] returns a new sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSeq {
    lower_bound: u64,
    cache: Vec<u64>,
}

impl PrimeSeq {
    pub fn new(lower_bound: u64) -> Self {
        PrimeSeq { lower_bound, cache: Vec::new() }
    }

    pub fn lower_bound(&self) -> u64 {
        self.lower_bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.cache
    }

    /// A sequence holding at least `count` primes.
    pub fn extended(&self, count: usize) -> PrimeSeq {
        if self.cache.len() >= count {
            return self.clone();
        }
        let start = self.cache.last().copied().unwrap_or(self.lower_bound);
        let mut cache = self.cache.clone();
        cache.extend(primes_greater_than(start, count - self.cache.len()));
        PrimeSeq { lower_bound: self.lower_bound, cache }
    }

    /// The `n`-th prime above the lower bound, 1-based.
    pub fn nth(&self, n: usize) -> u64 {
        assert!(n >= 1, "prime sequence is 1-based");
        match self.cache.get(n - 1) {
            Some(&p) => p,
            None => *self.extended(n).cache.last().unwrap(),
        }
    }

    /// 1-based position of `p` in the sequence, if `p` is a listed prime.
    pub fn index_of(&self, p: u64) -> Option<usize> {
        if p <= self.lower_bound || !is_prime(p) {
            return None;
        }
        let mut idx = 0;
        let mut q = self.lower_bound;
        loop {
            q += 1;
            if is_prime(q) {
                idx += 1;
                if q == p {
                    return Some(idx);
                }
            }
        }
    }
}
