//! Finitely generated Puiseux monoids, numerical monoids included.
//!
//! Generators are scaled by the lcm of their denominators and divided by
//! their gcd, so membership reduces to a numerical monoid and is decided by
//! its Apéry set with respect to the smallest generator.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Largest scaled target the bounded enumerations accept.
pub const ENUMERATION_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgMonoid {
    gens: Vec<Rational>,
    scale: BigInt,
    step: u64,
    reduced: Vec<u64>,
    apery: Vec<u64>,
    atoms: Vec<usize>,
}

impl FgMonoid {
    pub fn new(mut gens: Vec<Rational>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidDescriptor("empty generator list".into()));
        }
        if gens.iter().any(|g| !g.is_positive()) {
            return Err(Error::InvalidDescriptor("generators must be positive".into()));
        }
        gens.sort();
        if gens.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidDescriptor("duplicate generator".into()));
        }
        let scale = gens.iter().fold(BigInt::one(), |l, g| l.lcm(g.denom()));
        let ints: Vec<u64> = gens
            .iter()
            .map(|g| (g * Rational::from_integer(scale.clone())).to_integer().to_u64().ok_or_else(|| Error::Overflow(g.to_string())))
            .collect::<Result<_>>()?;
        let step = ints.iter().fold(0u64, |a, &b| a.gcd(&b));
        let reduced: Vec<u64> = ints.iter().map(|&g| g / step).collect();
        let m = reduced[0];
        if m > ENUMERATION_CAP {
            return Err(Error::LimitExceeded(format!("smallest scaled generator {m}")));
        }
        let apery = apery_set(&reduced, m);
        let mut fg = FgMonoid { gens, scale, step, reduced, apery, atoms: Vec::new() };
        fg.atoms = (0..fg.gens.len())
            .filter(|&i| {
                let gi = fg.reduced[i];
                !fg.reduced.iter().any(|&gj| gj < gi && fg.contains_reduced(gi - gj))
            })
            .collect();
        Ok(fg)
    }

    pub fn generators(&self) -> &[Rational] {
        &self.gens
    }

    fn contains_reduced(&self, u: u64) -> bool {
        let m = self.reduced[0];
        self.apery[(u % m) as usize] <= u
    }

    // q = step·u/scale for the integer u returned, if q lies on the lattice.
    fn to_reduced(&self, q: &Rational) -> Option<BigInt> {
        let t = q * Rational::from_integer(self.scale.clone());
        if !t.is_integer() {
            return None;
        }
        let (u, r) = t.to_integer().div_rem(&BigInt::from(self.step));
        r.is_zero().then_some(u)
    }

    fn from_reduced(&self, u: u64) -> Rational {
        Rational::new(BigInt::from(u) * BigInt::from(self.step), self.scale.clone())
    }

    pub fn contains(&self, q: &Rational) -> bool {
        if q.is_negative() {
            return false;
        }
        match self.to_reduced(q) {
            None => false,
            Some(u) => {
                let m = BigInt::from(self.reduced[0]);
                let r = (&u % &m).to_usize().unwrap();
                BigInt::from(self.apery[r]) <= u
            }
        }
    }

    /// The minimal generating set, ascending.
    pub fn atoms(&self) -> Vec<Rational> {
        self.atoms.iter().map(|&i| self.gens[i].clone()).collect()
    }

    pub fn is_atom(&self, q: &Rational) -> bool {
        self.atoms.iter().any(|&i| &self.gens[i] == q)
    }

    fn bounded_reduced(&self, q: &Rational) -> Result<u64> {
        let u = self.to_reduced(q).ok_or_else(|| Error::NotAnElement(q.to_string()))?;
        match u.to_u64() {
            Some(v) if v <= ENUMERATION_CAP => Ok(v),
            _ => Err(Error::LimitExceeded(format!("scaled value of {q} exceeds {ENUMERATION_CAP}"))),
        }
    }

    /// All factorizations as atom-count vectors aligned with [`FgMonoid::atoms`],
    /// up to `max_count`; the flag reports whether the list is exhaustive.
    pub fn factorizations(&self, q: &Rational, max_count: usize) -> Result<(Vec<Vec<u64>>, bool)> {
        let t = self.bounded_reduced(q)?;
        let atoms: Vec<u64> = self.atoms.iter().map(|&i| self.reduced[i]).collect();
        let mut out = Vec::new();
        let mut counts = vec![0u64; atoms.len()];
        let complete = fg_dfs(&atoms, atoms.len(), t, &mut counts, &mut out, max_count);
        out.sort();
        Ok((out, complete))
    }

    /// Every common divisor of `elems`, ascending.
    pub fn common_divisors(&self, elems: &[Rational]) -> Result<Vec<Rational>> {
        let ts: Vec<u64> = elems.iter().map(|q| self.bounded_reduced(q)).collect::<Result<_>>()?;
        let min = *ts.iter().min().ok_or(Error::EmptyInput)?;
        Ok((0..=min)
            .filter(|&d| self.contains_reduced(d) && ts.iter().all(|&t| self.contains_reduced(t - d)))
            .map(|d| self.from_reduced(d))
            .collect())
    }
}

// Depth-first over atoms from the largest down; returns false when truncated.
fn fg_dfs(atoms: &[u64], k: usize, rest: u64, counts: &mut Vec<u64>, out: &mut Vec<Vec<u64>>, max: usize) -> bool {
    if rest == 0 {
        if out.len() >= max {
            return false;
        }
        out.push(counts.clone());
        return true;
    }
    if k == 0 {
        return true;
    }
    let a = atoms[k - 1];
    let top = rest / a;
    for c in (0..=top).rev() {
        counts[k - 1] = c;
        if !fg_dfs(atoms, k - 1, rest - c * a, counts, out, max) {
            counts[k - 1] = 0;
            return false;
        }
    }
    counts[k - 1] = 0;
    true
}

// Least element of the monoid in each residue class modulo m (u64::MAX if none).
fn apery_set(gens: &[u64], m: u64) -> Vec<u64> {
    let m = m as usize;
    let mut dist = vec![u64::MAX; m];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &g in gens {
            let nr = (r + (g as usize % m)) % m;
            let nd = d + g;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    dist
}
