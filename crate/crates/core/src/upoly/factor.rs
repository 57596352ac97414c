//! Factorization in ℤ[x] by rational roots followed by Kronecker's
//! interpolation search, and in ℚ[x] through primitive parts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{canonical_cmp, content, int_exact_div, primitive_part, IntPoly, RatPoly};
use crate::error::{Error, Result};
use crate::exact::factor_integer;
use crate::Rational;

pub const DEFAULT_DEGREE_CAP: usize = 10;

/// `f = content · ∏ factors`, each factor primitive and irreducible with positive
/// leading coefficient, listed with multiplicity in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFactorization {
    pub content: BigInt,
    pub factors: Vec<IntPoly>,
}

impl IntFactorization {
    pub fn product(&self) -> IntPoly {
        self.factors.iter().fold(IntPoly::constant(self.content.clone()), |acc, g| &acc * g)
    }
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let m = n.abs().to_u64().ok_or_else(|| Error::Overflow(n.to_string()))?;
    let f = factor_integer(m)?;
    let mut ds = vec![1u64];
    let mut i = 0;
    while i < f.len() {
        let p = f[i];
        let mut k = 0;
        while i < f.len() && f[i] == p {
            k += 1;
            i += 1;
        }
        let base = ds.clone();
        let mut pk = 1u64;
        for _ in 0..k {
            pk *= p;
            ds.extend(base.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    Ok(ds.into_iter().map(BigInt::from).collect())
}

/// All rational roots of a nonzero integer polynomial, ascending, without multiplicity.
pub fn rational_roots(f: &IntPoly) -> Result<Vec<Rational>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let k = f.ord().unwrap();
    let g = f.unshift(k);
    let mut roots = Vec::new();
    if k > 0 {
        roots.push(Rational::zero());
    }
    if g.degree() == Some(0) {
        return Ok(roots);
    }
    let n = g.degree().unwrap();
    let a0 = g.coeff(0);
    let an = g.lead().unwrap().clone();
    for p in divisors(&a0)? {
        for q in divisors(&an)? {
            if !p.gcd(&q).is_one() {
                continue;
            }
            for s in [p.clone(), -p.clone()] {
                // q^n · g(s/q) = Σ aᵢ sⁱ q^(n−i)
                let mut val = BigInt::zero();
                let mut spow = BigInt::one();
                for i in 0..=n {
                    val += g.coeff(i) * &spow * q.pow((n - i) as u32);
                    spow *= &s;
                }
                if val.is_zero() {
                    roots.push(Rational::new(s, q.clone()));
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

const POINT_ORDER: [i64; 25] = [0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7, 8, -8, 9, -9, 10, -10, 11, -11, 12, -12];

// Searches for a factor of exact degree `d` of a primitive `f` having no factor of lower
// positive degree. Values at the chosen nodes are divisors of f there; Newton divided
// differences of an integer polynomial at integer nodes are integers, which prunes the tree.
fn kronecker_factor(f: &IntPoly, d: usize) -> Result<Option<IntPoly>> {
    let n = f.degree().unwrap();
    let mut cands: Vec<(usize, i64, BigInt)> = Vec::new();
    for &x in POINT_ORDER.iter() {
        let v = f.eval(&BigInt::from(x));
        if v.is_zero() {
            continue;
        }
        let count = divisors(&v)?.len();
        cands.push((count, x, v));
        if cands.len() >= 2 * n + 4 {
            break;
        }
    }
    if cands.len() < d + 1 {
        return Ok(None);
    }
    cands.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.abs().cmp(&b.1.abs())).then(a.1.cmp(&b.1)));
    let nodes: Vec<(BigInt, Vec<BigInt>)> = cands[..=d]
        .iter()
        .map(|(_, x, v)| {
            let ds = divisors(v).unwrap();
            let mut signed: Vec<BigInt> = Vec::with_capacity(2 * ds.len());
            for q in ds {
                signed.push(q.clone());
                signed.push(-q);
            }
            (BigInt::from(*x), signed)
        })
        .collect();
    let lead = f.lead().unwrap().clone();
    let mut dd: Vec<Vec<BigInt>> = Vec::new();
    Ok(search(f, d, &nodes, &lead, &mut dd))
}

fn search(f: &IntPoly, d: usize, nodes: &[(BigInt, Vec<BigInt>)], lead: &BigInt, dd: &mut Vec<Vec<BigInt>>) -> Option<IntPoly> {
    let i = dd.len();
    if i == d + 1 {
        let newton: Vec<BigInt> = dd.iter().map(|row| row[0].clone()).collect();
        let top = &newton[d];
        if top.is_zero() || !(lead % top).is_zero() {
            return None;
        }
        let mut g = IntPoly::constant(newton[d].clone());
        for k in (0..d).rev() {
            let lin = IntPoly::new(vec![-nodes[k].0.clone(), BigInt::one()]);
            g = &(&g * &lin) + &IntPoly::constant(newton[k].clone());
        }
        if g.degree() != Some(d) {
            return None;
        }
        return int_exact_div(f, &g).map(|_| g);
    }
    let xi = &nodes[i].0;
    for v in &nodes[i].1 {
        // Fix the sign of the first value: g and −g are interchangeable.
        if i == 0 && v.is_negative() {
            continue;
        }
        // row[j] = g[x_j .. x_i]
        let mut row = vec![BigInt::zero(); i + 1];
        row[i] = v.clone();
        let mut ok = true;
        for j in (0..i).rev() {
            let num = &row[j + 1] - &dd[i - 1][j];
            let den = xi - &nodes[j].0;
            let (q, r) = num.div_rem(&den);
            if !r.is_zero() {
                ok = false;
                break;
            }
            row[j] = q;
        }
        if !ok {
            continue;
        }
        // The degree-d factor has all Newton coefficients beyond d zero; reject early
        // when the top divided difference cannot divide the leading coefficient.
        if i == d && (row[0].is_zero() || !(lead % &row[0]).is_zero()) {
            continue;
        }
        dd.push(row);
        if let Some(g) = search(f, d, nodes, lead, dd) {
            dd.pop();
            return Some(g);
        }
        dd.pop();
    }
    None
}

fn normalize_sign(g: IntPoly) -> IntPoly {
    if g.lead().is_some_and(|l| l.is_negative()) {
        -&g
    } else {
        g
    }
}

/// Complete factorization of a nonzero integer polynomial. The Kronecker search
/// runs only on parts free of linear factors, of degree at most `degree_cap`.
pub fn factor_int_poly(f: &IntPoly, degree_cap: usize) -> Result<IntFactorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut c = content(f);
    if f.lead().unwrap().is_negative() {
        c = -c;
    }
    let mut rest = f.map(|a| a / &c);
    let mut factors = Vec::new();
    let k = rest.ord().unwrap();
    for _ in 0..k {
        factors.push(IntPoly::x());
    }
    rest = rest.unshift(k);
    for r in rational_roots(&rest)? {
        let lin = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
        while let Some(q) = int_exact_div(&rest, &lin) {
            factors.push(lin.clone());
            rest = q;
        }
    }
    let mut stack = vec![rest];
    while let Some(g) = stack.pop() {
        let n = g.degree().unwrap();
        if n == 0 {
            continue;
        }
        if n <= 3 {
            // No linear factor remains, so degree ≤ 3 is irreducible.
            factors.push(g);
            continue;
        }
        if n > degree_cap {
            return Err(Error::LimitExceeded(format!("degree {n} exceeds the factorization cap {degree_cap}")));
        }
        let mut split = None;
        for d in 2..=n / 2 {
            if let Some(h) = kronecker_factor(&g, d)? {
                split = Some(h);
                break;
            }
        }
        match split {
            Some(h) => {
                let h = normalize_sign(h);
                let q = int_exact_div(&g, &h).expect("verified factor");
                stack.push(h);
                stack.push(q);
            }
            None => factors.push(g),
        }
    }
    factors.sort_by(canonical_cmp);
    Ok(IntFactorization { content: c, factors })
}

/// Factorization in ℚ[x]: `(unit, irreducible primitive integer factors)`.
pub fn factor_rat_poly(f: &RatPoly, degree_cap: usize) -> Result<(Rational, Vec<IntPoly>)> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (c, p) = primitive_part(f);
    let fz = factor_int_poly(&p, degree_cap)?;
    Ok((c * Rational::from_integer(fz.content), fz.factors))
}
