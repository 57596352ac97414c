//! Factorization search for Puiseux monoids whose atoms are grouped by a
//! single odd prime of their denominator.
//!
//! Groups are processed from the largest prime down. A sum of atoms has
//! `ℓ`-adic valuation at least the least valuation among them, so after each
//! group the remainder must already meet that bound for the atoms still
//! available, at `ℓ = 2` and at every group prime. This prunes almost every branch.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::reciprocal::{inv_mod, p_residue};
use crate::exact::val_nonzero;
use crate::Rational;

pub struct AtomGroup {
    pub prime: u64,
    pub atoms: Vec<Rational>,
}

struct Search<'a> {
    groups: &'a [AtomGroup],
    primes: Vec<u64>,
    // floor[gi][j]: least valuation at primes[j] over the atoms of groups[gi..].
    floor: Vec<Vec<i64>>,
    max: usize,
    out: Vec<Vec<Rational>>,
}

/// Factorizations of `q` as atom multisets (ascending within each), at most `max`;
/// the flag is false when the limit cut the search short.
pub fn grouped_factorizations(q: &Rational, mut groups: Vec<AtomGroup>, max: usize) -> (Vec<Vec<Rational>>, bool) {
    groups.sort_by(|x, y| y.prime.cmp(&x.prime));
    let mut primes: Vec<u64> = groups.iter().map(|g| g.prime).collect();
    primes.push(2);
    primes.sort_unstable();
    primes.dedup();
    let mut floor = vec![vec![0i64; primes.len()]; groups.len() + 1];
    for gi in (0..groups.len()).rev() {
        for (j, &l) in primes.iter().enumerate() {
            let here = groups[gi].atoms.iter().map(|a| val_nonzero(a, l)).min().unwrap_or(0);
            floor[gi][j] = floor[gi + 1][j].min(here);
        }
    }
    let mut s = Search { groups: &groups, primes, floor, max, out: Vec::new() };
    let complete = !s.admissible(q, 0) || s.dfs(q.clone(), 0, &mut Vec::new());
    let mut out = s.out;
    for f in out.iter_mut() {
        f.sort();
    }
    out.sort();
    (out, complete)
}

impl Search<'_> {
    // Whether `rest` can still be a sum of atoms from groups[gi..].
    fn admissible(&self, rest: &Rational, gi: usize) -> bool {
        if rest.is_zero() {
            return true;
        }
        if gi == self.groups.len() {
            return false;
        }
        self.primes.iter().zip(&self.floor[gi]).all(|(&l, &f)| val_nonzero(rest, l) >= f)
    }

    fn dfs(&mut self, rest: Rational, gi: usize, current: &mut Vec<Rational>) -> bool {
        if rest.is_zero() {
            if self.out.len() >= self.max {
                return false;
            }
            self.out.push(current.clone());
            return true;
        }
        if gi == self.groups.len() {
            return true;
        }
        let g = &self.groups[gi];
        let mut choices = Vec::new();
        counts_in_group(&rest, &g.atoms, g.prime, &mut Vec::new(), &mut choices);
        for counts in choices {
            let used = counts.iter().zip(&g.atoms).fold(Rational::zero(), |acc, (&c, a)| acc + Rational::from_integer(BigInt::from(c)) * a);
            let next = &rest - used;
            if !self.admissible(&next, gi + 1) {
                continue;
            }
            let before = current.len();
            for (&c, a) in counts.iter().zip(&g.atoms) {
                for _ in 0..c {
                    current.push(a.clone());
                }
            }
            let ok = self.dfs(next, gi + 1, current);
            current.truncate(before);
            if !ok {
                return false;
            }
        }
        true
    }
}

// Count vectors whose weighted sum fits inside `rest`, larger counts first. When the
// last atom has valuation −1 at `p`, only the counts that clear `p` from the
// remainder are produced for it.
fn counts_in_group(rest: &Rational, atoms: &[Rational], p: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    let Some((a, tail)) = atoms.split_first() else {
        out.push(cur.clone());
        return;
    };
    let top = (rest / a).floor().to_integer().to_u64().unwrap();
    let (mut c, step) = if tail.is_empty() && val_nonzero(a, p) == -1 {
        // c·res(a) ≡ res(rest) (mod p)
        let want = (p_residue(rest, p) as u128 * inv_mod(p_residue(a, p), p) as u128 % p as u128) as u64;
        if want > top {
            return;
        }
        (top - (top - want) % p, p)
    } else {
        (top, 1)
    };
    loop {
        let left = rest - Rational::from_integer(BigInt::from(c)) * a;
        debug_assert!(!left.is_negative());
        cur.push(c);
        counts_in_group(&left, tail, p, cur, out);
        cur.pop();
        if c < step {
            break;
        }
        c -= step;
    }
}
