//! Dense univariate polynomials generic over the coefficient ring, with
//! field division, gcd, and factorization over ℤ and ℚ.

mod factor;
mod quadfactor;

pub use factor::{factor_int_poly, factor_rat_poly, rational_roots, IntFactorization, DEFAULT_DEGREE_CAP};
pub use quadfactor::{factor_quad_poly, squarefree_decomposition};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Coefficients of a commutative ring with identity.
pub trait Coeff:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Coeff for T where T: Clone + PartialEq + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T> {}

/// Coefficients of a field.
pub trait FieldCoeff: Coeff + Div<Output = Self> {}

impl<T> FieldCoeff for T where T: Coeff + Div<Output = T> {}

/// `c₀ + c₁x + … + cₙxⁿ`, stored with `cₙ ≠ 0`; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DensePoly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> DensePoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        DensePoly::new(vec![c])
    }

    pub fn x() -> Self {
        DensePoly::monomial(C::one(), 1)
    }

    pub fn monomial(c: C, k: usize) -> Self {
        let mut v = vec![C::zero(); k + 1];
        v[k] = c;
        DensePoly::new(v)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Least exponent with a nonzero coefficient.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, s: &C) -> Self {
        DensePoly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![C::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        DensePoly { coeffs: v }
    }

    /// Divides by `x^k`; panics if `x^k` does not divide.
    pub fn unshift(&self, k: usize) -> Self {
        assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()), "x^{k} does not divide");
        DensePoly { coeffs: self.coeffs.iter().skip(k).cloned().collect() }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> DensePoly<D> {
        DensePoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(DensePoly::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        let mut k = C::zero();
        let mut v = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for c in self.coeffs.iter().skip(1) {
            k = k + C::one();
            v.push(k.clone() * c.clone());
        }
        DensePoly::new(v)
    }

    /// `f(x + t)`.
    pub fn compose_shift(&self, t: &C) -> Self {
        let lin = DensePoly::new(vec![t.clone(), C::one()]);
        self.coeffs.iter().rev().fold(DensePoly::zero(), |acc, c| &(&acc * &lin) + &DensePoly::constant(c.clone()))
    }

    /// Indices and coefficients of the nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &C)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl<C: FieldCoeff> DensePoly<C> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.lead().expect("polynomial division by zero").clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return (DensePoly::zero(), self.clone());
        }
        let mut q = vec![C::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone() / dl.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].clone() - c.clone() * dc.clone();
            }
            q[i] = c;
        }
        (DensePoly::new(q), DensePoly::new(r))
    }

    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = C::one() / l.clone();
                self.scale(&inv)
            }
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<C: Coeff> Add for &DensePoly<C> {
    type Output = DensePoly<C>;
    fn add(self, rhs: &DensePoly<C>) -> DensePoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<C: Coeff> Sub for &DensePoly<C> {
    type Output = DensePoly<C>;
    fn sub(self, rhs: &DensePoly<C>) -> DensePoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<C: Coeff> Mul for &DensePoly<C> {
    type Output = DensePoly<C>;
    fn mul(self, rhs: &DensePoly<C>) -> DensePoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut v = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        DensePoly::new(v)
    }
}

impl<C: Coeff> Neg for &DensePoly<C> {
    type Output = DensePoly<C>;
    fn neg(self) -> DensePoly<C> {
        DensePoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<C: Coeff> $tr for DensePoly<C> {
            type Output = DensePoly<C>;
            fn $m(self, rhs: DensePoly<C>) -> DensePoly<C> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<C: Coeff> Zero for DensePoly<C> {
    fn zero() -> Self {
        DensePoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Coeff> One for DensePoly<C> {
    fn one() -> Self {
        DensePoly::one()
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for DensePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.terms() {
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let compound = body.contains(['+', '-']);
            let body = if compound { format!("({body})") } else { body };
            match (i, body.as_str()) {
                (0, _) => write!(f, "{body}")?,
                (_, "1") => {}
                _ => write!(f, "{body}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Canonical order: by degree, then coefficients from the top down.
pub fn canonical_cmp<C: Coeff + Ord>(a: &DensePoly<C>, b: &DensePoly<C>) -> Ordering {
    a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

pub type IntPoly = DensePoly<BigInt>;
pub type RatPoly = DensePoly<Rational>;

pub fn to_rat(f: &IntPoly) -> RatPoly {
    f.map(|c| Rational::from_integer(c.clone()))
}

/// Integer coefficients, if every coefficient is integral.
pub fn to_int(f: &RatPoly) -> Option<IntPoly> {
    f.coeffs.iter().all(|c| c.is_integer()).then(|| f.map(|c| c.to_integer()))
}

/// Gcd of the coefficients, nonnegative.
pub fn content(f: &IntPoly) -> BigInt {
    f.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// `(c, p)` with `f = c·p`, `p` primitive in ℤ[x] with positive leading coefficient.
pub fn primitive_part(f: &RatPoly) -> (Rational, IntPoly) {
    if f.is_zero() {
        return (Rational::zero(), IntPoly::zero());
    }
    let den = f.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let p = IntPoly::new(ints);
    let mut g = content(&p);
    if p.lead().unwrap().is_negative() {
        g = -g;
    }
    let prim = p.map(|c| c / &g);
    (Rational::new(g, den), prim)
}

/// Exact division in ℤ[x].
pub fn int_exact_div(f: &IntPoly, g: &IntPoly) -> Option<IntPoly> {
    to_rat(f).exact_div(&to_rat(g)).and_then(|q| to_int(&q))
}
