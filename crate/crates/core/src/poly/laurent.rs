use std::fmt;

use super::{is_atom_poly, PolyAtomCertificate, PolyAtomVerdict, SemiPoly};
use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::semidomains::SemidomainDescriptor;
use crate::RatPoly;

/// `x^shift · body` with `body(0) ≠ 0` unless the whole thing is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    shift: i64,
    body: SemiPoly,
}

impl LaurentPoly {
    /// Builds `x^shift · p`, pulling any power of `x` out of `p`.
    pub fn new(shift: i64, p: SemiPoly) -> Self {
        match p.ord() {
            None => LaurentPoly { shift: 0, body: p },
            Some(m) => {
                let body = SemiPoly::raw(p.base(), p.poly().unshift(m));
                LaurentPoly { shift: shift + m as i64, body }
            }
        }
    }

    /// The unit `x^k`.
    pub fn monomial(base: SemidomainDescriptor, k: i64) -> Self {
        LaurentPoly { shift: k, body: SemiPoly::raw(base, RatPoly::one()) }
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn body(&self) -> &SemiPoly {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.body.is_unit()
    }

    pub fn mul(&self, o: &LaurentPoly) -> Result<LaurentPoly> {
        let body = super::poly_mul(&self.body, &o.body)?;
        Ok(LaurentPoly::new(self.shift + o.shift, body))
    }

    /// Coefficients from `x^shift` upward.
    pub fn coeffs(&self) -> &[crate::Rational] {
        self.body.poly().coeffs()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 || self.is_zero() {
            write!(f, "{}", self.body)
        } else {
            write!(f, "x^{}*({})", self.shift, self.body)
        }
    }
}

pub fn laurent_normalize(g: &LaurentPoly) -> (i64, SemiPoly) {
    (g.shift, g.body.clone())
}

/// The image of an `S[x]` atom in `S[x^±1]`, present exactly when `ord a = 0`.
pub fn laurent_atom_transfer(a: &SemiPoly, budget: &SearchBudget) -> Result<Option<(LaurentPoly, PolyAtomCertificate)>> {
    if a.ord() != Some(0) {
        return Ok(None);
    }
    Ok(match is_atom_poly(a, budget) {
        Ok(PolyAtomVerdict::Atom(cert)) => Some((LaurentPoly::new(0, a.clone()), cert)),
        Ok(_) | Err(Error::UnitInput) => None,
        Err(e) => return Err(e),
    })
}

/// Atom test in `S[x^±1]`: units are `u·x^k`, so `g` is an atom iff its
/// body is an atom of `S[x]`. Splits are reported on the body with the
/// power of `x` folded into the first factor.
pub fn laurent_is_atom(g: &LaurentPoly, budget: &SearchBudget) -> Result<PolyAtomVerdict> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if g.is_unit() {
        return Err(Error::UnitInput);
    }
    is_atom_poly(&g.body, budget)
}

impl From<SemiPoly> for LaurentPoly {
    fn from(p: SemiPoly) -> Self {
        LaurentPoly::new(0, p)
    }
}
