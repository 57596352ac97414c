//! Polynomial and Laurent polynomial semidomains `S[x]`, `S[x^±1]` over
//! `S ∈ {ℕ₀, ℤ, {0} ∪ ℚ≥1}`.

mod atoms;
mod laurent;

pub use atoms::{
    atom_factorizations, is_atom_poly, is_indecomposable, verify_poly_atom, Indecomposability, PolyAtomCertificate, PolyAtomVerdict,
    PolyFactorization, PolyFactorizations,
};
pub use laurent::{laurent_atom_transfer, laurent_is_atom, laurent_normalize, LaurentPoly};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::is_natural;
use crate::semidomains::SemidomainDescriptor;
use crate::{RatPoly, Rational};

/// A polynomial whose coefficients lie in `base`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemiPoly {
    base: SemidomainDescriptor,
    poly: RatPoly,
}

pub(crate) fn in_base(base: SemidomainDescriptor, c: &Rational) -> bool {
    match base {
        SemidomainDescriptor::N0 => is_natural(c),
        SemidomainDescriptor::Integers => c.is_integer(),
        _ => c.is_zero() || *c >= Rational::one(),
    }
}

fn check_base(base: SemidomainDescriptor) -> Result<()> {
    match base {
        SemidomainDescriptor::N0 | SemidomainDescriptor::Integers | SemidomainDescriptor::QGe1 => Ok(()),
        other => Err(Error::InvalidInput(format!("polynomials over {} are not supported", other.name()))),
    }
}

impl SemiPoly {
    pub fn new(base: SemidomainDescriptor, poly: RatPoly) -> Result<Self> {
        check_base(base)?;
        if let Some(c) = poly.coeffs().iter().find(|c| !in_base(base, c)) {
            return Err(Error::NotAnElement(format!("coefficient {c} is not in {}", base.name())));
        }
        Ok(SemiPoly { base, poly })
    }

    pub fn from_ints(base: SemidomainDescriptor, coeffs: &[i64]) -> Result<Self> {
        SemiPoly::new(base, RatPoly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect()))
    }

    pub fn constant(base: SemidomainDescriptor, c: Rational) -> Result<Self> {
        SemiPoly::new(base, RatPoly::constant(c))
    }

    pub fn x(base: SemidomainDescriptor) -> Self {
        SemiPoly { base, poly: RatPoly::x() }
    }

    pub(crate) fn raw(base: SemidomainDescriptor, poly: RatPoly) -> Self {
        SemiPoly { base, poly }
    }

    pub fn base(&self) -> SemidomainDescriptor {
        self.base
    }

    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }

    pub fn ord(&self) -> Option<usize> {
        self.poly.ord()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.poly.is_constant()
    }

    pub fn is_unit(&self) -> bool {
        match (self.poly.degree(), self.base) {
            (Some(0), SemidomainDescriptor::Integers) => self.poly.coeff(0).abs().is_one(),
            (Some(0), _) => self.poly.coeff(0).is_one(),
            _ => false,
        }
    }

    /// Largest coefficient, used to bound divisor searches.
    pub fn max_coeff(&self) -> Rational {
        self.poly.coeffs().iter().cloned().max().unwrap_or_else(Rational::zero)
    }

    fn same_base(&self, o: &SemiPoly) -> Result<()> {
        if self.base == o.base {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }
}

impl fmt::Display for SemiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

pub fn poly_mul(f: &SemiPoly, g: &SemiPoly) -> Result<SemiPoly> {
    f.same_base(g)?;
    Ok(SemiPoly { base: f.base, poly: &f.poly * &g.poly })
}

pub fn poly_add(f: &SemiPoly, g: &SemiPoly) -> Result<SemiPoly> {
    f.same_base(g)?;
    Ok(SemiPoly { base: f.base, poly: &f.poly + &g.poly })
}

/// `Some(h)` with `f = g·h` and `h ∈ S[x]`: divide in ℚ[x] (which contains the
/// Grothendieck ring's polynomials), then check every coefficient.
pub fn exact_divide(f: &SemiPoly, g: &SemiPoly) -> Result<Option<SemiPoly>> {
    f.same_base(g)?;
    if g.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    Ok(f.poly.exact_div(&g.poly).and_then(|q| SemiPoly::new(f.base, q).ok()))
}

/// Maximal common divisors of the coefficients in the base's multiplicative monoid.
pub fn coefficient_mcd(f: &SemiPoly) -> Result<Vec<Rational>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(vec![match f.base {
        // Any common divisor d ≥ 1 is at most the least nonzero coefficient,
        // which itself divides every coefficient.
        SemidomainDescriptor::QGe1 => f.poly.terms().map(|(_, c)| c.clone()).min().unwrap(),
        _ => Rational::from_integer(f.poly.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(&c.to_integer()))),
    }])
}

/// `f / c` for a scalar `c` dividing every coefficient inside the base.
pub(crate) fn scalar_div(f: &SemiPoly, c: &Rational) -> Option<SemiPoly> {
    SemiPoly::new(f.base, f.poly.scale(&(Rational::one() / c))).ok()
}

pub(crate) fn is_base_unit(base: SemidomainDescriptor, c: &Rational) -> bool {
    match base {
        SemidomainDescriptor::Integers => c.abs().is_one(),
        _ => c.is_one(),
    }
}

pub(crate) fn sign_normalized(f: &SemiPoly) -> (Rational, SemiPoly) {
    if f.base == SemidomainDescriptor::Integers && f.poly.lead().is_some_and(|c| c.is_negative()) {
        (-Rational::one(), SemiPoly { base: f.base, poly: -&f.poly })
    } else {
        (Rational::one(), f.clone())
    }
}
