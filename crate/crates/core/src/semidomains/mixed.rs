//! The mixed-degree semidomain `R = ℕ₀ + ℕ₀x + x²K[x]` with `K = ℚ(√d)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{AtomCertificate, AtomVerdict, SemidomainElement};
use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::exact::{factor_integer, is_natural, is_prime, QuadExt};
use crate::upoly::factor_quad_poly;
use crate::{DensePoly, QuadPoly, Rational};

/// An element of `R`: constant and linear coefficients in ℕ₀, the rest in `K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedPoly {
    poly: QuadPoly,
}

/// Whether `f` factors into atoms, decided by the coefficient `c_m` at `x^ord f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrdStatus {
    FactorsIntoAtoms,
    NeverFactors(QuadExt),
}

pub(crate) fn is_natural_quad(c: &QuadExt) -> bool {
    c.as_rational().is_some_and(is_natural)
}

impl MixedPoly {
    pub fn new(poly: QuadPoly, d: u64) -> Result<Self> {
        for c in poly.coeffs() {
            if !c.is_rational() && c.d != d {
                return Err(Error::InvalidInput(format!("coefficient {c} is not in Q(sqrt{d})")));
            }
        }
        for i in 0..2 {
            if !is_natural_quad(&poly.coeff(i)) {
                return Err(Error::InvalidInput(format!("coefficient of x^{i} must be a nonnegative integer")));
            }
        }
        Ok(MixedPoly { poly })
    }

    pub fn constant(n: u64) -> Self {
        MixedPoly { poly: DensePoly::constant(QuadExt::rational(Rational::from_integer(n.into()))) }
    }

    pub fn poly(&self) -> &QuadPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly == QuadPoly::one()
    }

    pub fn add(&self, o: &MixedPoly) -> MixedPoly {
        MixedPoly { poly: &self.poly + &o.poly }
    }

    pub fn mul(&self, o: &MixedPoly) -> MixedPoly {
        MixedPoly { poly: &self.poly * &o.poly }
    }

    fn from_quad(poly: QuadPoly) -> Option<MixedPoly> {
        (0..2).all(|i| is_natural_quad(&poly.coeff(i))).then_some(MixedPoly { poly })
    }

    /// `self / b` when the quotient in `K[x]` lies in `R`.
    pub fn checked_div(&self, b: &MixedPoly) -> Option<MixedPoly> {
        if b.is_zero() {
            return None;
        }
        MixedPoly::from_quad(self.poly.exact_div(&b.poly)?).filter(|q| !q.is_zero())
    }

    pub fn ord_status(&self) -> Result<OrdStatus> {
        let m = self.poly.ord().ok_or(Error::ZeroInput)?;
        let cm = self.poly.coeff(m);
        Ok(if m <= 1 || is_natural_quad(&cm) { OrdStatus::FactorsIntoAtoms } else { OrdStatus::NeverFactors(cm) })
    }
}

impl fmt::Display for MixedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

fn wrap(p: MixedPoly) -> SemidomainElement {
    SemidomainElement::Mixed(p)
}

fn nat(c: &QuadExt) -> BigInt {
    c.as_rational().unwrap().to_integer()
}

fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let v = n.to_u64().ok_or_else(|| Error::Overflow(n.to_string()))?;
    let f = factor_integer(v)?;
    let mut divs = vec![1u64];
    for (i, &p) in f.iter().enumerate() {
        if i > 0 && f[i - 1] == p {
            continue;
        }
        let e = f.iter().filter(|&&q| q == p).count();
        let mut next = Vec::new();
        for &d in &divs {
            let mut x = d;
            for _ in 0..=e {
                next.push(x);
                x *= p;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Ok(divs.into_iter().map(BigInt::from).collect())
}

// Distinct sub-multisets of `factors` given as (factor, multiplicity), as products.
fn sub_products(groups: &[(QuadPoly, usize)]) -> Vec<QuadPoly> {
    let mut out = vec![QuadPoly::one()];
    for (g, k) in groups {
        let mut next = Vec::new();
        for base in &out {
            let mut cur = base.clone();
            next.push(cur.clone());
            for _ in 0..*k {
                cur = &cur * g;
                next.push(cur.clone());
            }
        }
        out = next;
    }
    out.sort_by_key(|p| p.degree());
    out
}

pub(crate) fn is_atom(f: &MixedPoly, d: u64, budget: &SearchBudget) -> Result<AtomVerdict> {
    let poly = &f.poly;
    let m = poly.ord().ok_or(Error::ZeroInput)?;
    if f.is_one() {
        return Err(Error::UnitInput);
    }
    let cm = poly.coeff(m);
    if m >= 2 {
        // Both splits keep the low coefficients zero, so the cofactors stay in R.
        let two = MixedPoly::constant(2);
        return Ok(if is_natural_quad(&cm) {
            let x = MixedPoly { poly: QuadPoly::x() };
            AtomVerdict::NotAtom(wrap(x), wrap(MixedPoly { poly: poly.unshift(1) }))
        } else {
            let half = QuadExt::rational(Rational::new(1.into(), 2.into()));
            AtomVerdict::NotAtom(wrap(two), wrap(MixedPoly { poly: poly.scale(&half) }))
        });
    }
    let c = nat(&cm);
    if poly.degree() == Some(0) {
        let n = c.to_u64().ok_or_else(|| Error::Overflow(c.to_string()))?;
        if is_prime(n) {
            return Ok(AtomVerdict::Atom(AtomCertificate::PrimeScalar(c)));
        }
        let p = factor_integer(n)?[0];
        return Ok(AtomVerdict::NotAtom(wrap(MixedPoly::constant(p)), wrap(MixedPoly::constant(n / p))));
    }
    // Every split is g·h with g = λ·x^m·D for a monic K-divisor D of F = f/x^m and
    // λ·D(0) a positive divisor g₀ of F(0) = c_m, since both ords are ≤ 1.
    let big_f = poly.unshift(m);
    let (_, factors) = match factor_quad_poly(&big_f, d, budget.factor_degree_cap) {
        Ok(v) => v,
        Err(Error::LimitExceeded(msg)) => return Ok(AtomVerdict::Unknown(msg)),
        Err(e) => return Err(e),
    };
    let mut groups: Vec<(QuadPoly, usize)> = Vec::new();
    for g in factors {
        match groups.iter_mut().find(|(h, _)| *h == g) {
            Some(e) => e.1 += 1,
            None => groups.push((g, 1)),
        }
    }
    let divisors = sub_products(&groups);
    let g0s = positive_divisors(&c)?;
    let mut checked = 0usize;
    for dpoly in &divisors {
        let d0 = dpoly.coeff(0);
        for g0 in &g0s {
            checked += 1;
            let lambda = QuadExt::rational(Rational::from_integer(g0.clone())) / d0.clone();
            let g = dpoly.scale(&lambda).shift(m);
            let Some(g) = MixedPoly::from_quad(g) else { continue };
            if g.is_one() {
                continue;
            }
            if let Some(h) = f.checked_div(&g) {
                if !h.is_one() {
                    return Ok(AtomVerdict::NotAtom(wrap(g), wrap(h)));
                }
            }
        }
    }
    Ok(AtomVerdict::Atom(AtomCertificate::MixedExhaustive { candidates: checked }))
}
