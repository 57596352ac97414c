//! Semidomains viewed through their multiplicative monoids: ℕ₀, ℤ,
//! `{0} ∪ ℚ≥1`, exponential sums over a Puiseux monoid, the mixed-degree ring
//! `ℕ₀ + ℕ₀x + x²ℚ(√d)[x]`, and the algebra of the lexicographic cone.

pub mod expsum;
pub mod lexcone;
pub mod mixed;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use expsum::{ExpBase, ExpSum};
pub use lexcone::LexPoly;
pub use mixed::{MixedPoly, OrdStatus};

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::exact::{factor_integer, is_natural, is_prime};
use crate::{QuadPoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemidomainDescriptor {
    N0,
    Integers,
    /// `{0} ∪ ℚ≥1`.
    QGe1,
    ExpSum(ExpBase),
    MixedRing {
        quad_d: u64,
    },
    LexConeAlgebra,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SemidomainElement {
    Scalar(Rational),
    ExpSum(ExpSum),
    Mixed(MixedPoly),
    Lex(LexPoly),
}

impl fmt::Display for SemidomainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemidomainElement::Scalar(q) => write!(f, "{q}"),
            SemidomainElement::ExpSum(r) => write!(f, "{r}"),
            SemidomainElement::Mixed(p) => write!(f, "{p}"),
            SemidomainElement::Lex(p) => write!(f, "{p}"),
        }
    }
}

/// Evidence that an element is an atom. Each kind is re-proved by
/// [`SemidomainDescriptor::verify_atom`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomCertificate {
    /// A prime integer; in the ring kinds only constants divide constants.
    PrimeScalar(BigInt),
    /// `e^q` with `q` an atom of the exponent monoid.
    ExpMonomial(Rational),
    /// Content 1, no exponential divisor, and `log₂(value) ≤ log2_upper < 2`.
    ExpValueBelowFour { log2_upper: Rational },
    /// Exponent 0 in the support, so every divisor lives inside the support
    /// with bounded coefficients; all candidates failed.
    ExpExhaustive { candidates: u64 },
    /// Every split `λx^m D · h` built from the ℚ(√d)[x] factorization failed.
    MixedExhaustive { candidates: usize },
    /// `φ = 0` and irreducible in ℚ[x].
    LexIrreducible,
    /// `φ = 1` and no divisor with `φ = 0`.
    LexPhiOne,
    /// `φ ∈ {2, 3}`, no divisor with `φ = 0`, and no divisor linear in `y`.
    LexNoLinearFactor { phi: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomVerdict {
    Atom(AtomCertificate),
    /// Two nonunits whose product is the input.
    NotAtom(SemidomainElement, SemidomainElement),
    Unknown(String),
}

/// `unit · ∏ atoms`, each atom with its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultFactorization {
    pub unit: SemidomainElement,
    pub atoms: Vec<SemidomainElement>,
    pub certificates: Vec<AtomCertificate>,
}

/// Image in the Grothendieck ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Embedded {
    Integer(BigInt),
    Rational(Rational),
    /// Formal ℤ-combination of exponentials.
    GroupRing(BTreeMap<Rational, BigInt>),
    Quad(QuadPoly),
    Lex(LexPoly),
}

impl Embedded {
    pub fn add(&self, o: &Embedded) -> Result<Embedded> {
        use Embedded::*;
        Ok(match (self, o) {
            (Integer(a), Integer(b)) => Integer(a + b),
            (Rational(a), Rational(b)) => Rational(a + b),
            (GroupRing(a), GroupRing(b)) => GroupRing(combine(a, b, |x, y| x + y)),
            (Quad(a), Quad(b)) => Quad(a + b),
            (Lex(a), Lex(b)) => Lex(a.add(b)),
            _ => return Err(Error::BaseMismatch),
        })
    }

    pub fn sub(&self, o: &Embedded) -> Result<Embedded> {
        use Embedded::*;
        Ok(match (self, o) {
            (Integer(a), Integer(b)) => Integer(a - b),
            (Rational(a), Rational(b)) => Rational(a - b),
            (GroupRing(a), GroupRing(b)) => GroupRing(combine(a, b, |x, y| x - y)),
            (Quad(a), Quad(b)) => Quad(a - b),
            (Lex(a), Lex(b)) => Lex(a.add(&b.neg())),
            _ => return Err(Error::BaseMismatch),
        })
    }

    pub fn mul(&self, o: &Embedded) -> Result<Embedded> {
        use Embedded::*;
        Ok(match (self, o) {
            (Integer(a), Integer(b)) => Integer(a * b),
            (Rational(a), Rational(b)) => Rational(a * b),
            (GroupRing(a), GroupRing(b)) => {
                let mut m: BTreeMap<crate::Rational, BigInt> = BTreeMap::new();
                for (q1, c1) in a {
                    for (q2, c2) in b {
                        *m.entry(q1 + q2).or_default() += c1 * c2;
                    }
                }
                m.retain(|_, c| !c.is_zero());
                GroupRing(m)
            }
            (Quad(a), Quad(b)) => Quad(a * b),
            (Lex(a), Lex(b)) => Lex(a.mul(b)),
            _ => return Err(Error::BaseMismatch),
        })
    }
}

impl fmt::Display for Embedded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Embedded::Integer(n) => write!(f, "{n}"),
            Embedded::Rational(q) => write!(f, "{q}"),
            Embedded::GroupRing(m) => {
                if m.is_empty() {
                    return write!(f, "0");
                }
                for (i, (q, c)) in m.iter().enumerate() {
                    match (i, c.is_negative()) {
                        (0, _) => write!(f, "{c}")?,
                        (_, true) => write!(f, " - {}", -c)?,
                        (_, false) => write!(f, " + {c}")?,
                    }
                    write!(f, "*e^({q})")?;
                }
                Ok(())
            }
            Embedded::Quad(p) => write!(f, "{p}"),
            Embedded::Lex(p) => write!(f, "{p}"),
        }
    }
}

fn combine(
    a: &BTreeMap<Rational, BigInt>,
    b: &BTreeMap<Rational, BigInt>,
    op: impl Fn(&BigInt, &BigInt) -> BigInt,
) -> BTreeMap<Rational, BigInt> {
    let mut m = a.clone();
    for (q, c) in b {
        let cur = m.remove(q).unwrap_or_default();
        m.insert(q.clone(), op(&cur, c));
    }
    m.retain(|_, c| !c.is_zero());
    m
}

fn scalar(q: Rational) -> SemidomainElement {
    SemidomainElement::Scalar(q)
}

fn int_scalar(n: BigInt) -> SemidomainElement {
    SemidomainElement::Scalar(Rational::from_integer(n))
}

impl SemidomainDescriptor {
    pub fn name(&self) -> String {
        match self {
            SemidomainDescriptor::N0 => "N0".into(),
            SemidomainDescriptor::Integers => "Integers".into(),
            SemidomainDescriptor::QGe1 => "QGe1".into(),
            SemidomainDescriptor::ExpSum(b) => format!("ExpSum({})", b.name()),
            SemidomainDescriptor::MixedRing { quad_d } => format!("MixedRing(sqrt{quad_d})"),
            SemidomainDescriptor::LexConeAlgebra => "LexConeAlgebra".into(),
        }
    }

    pub fn contains(&self, a: &SemidomainElement) -> Result<bool> {
        use SemidomainDescriptor as S;
        use SemidomainElement as E;
        Ok(match (self, a) {
            (S::N0, E::Scalar(q)) => is_natural(q),
            (S::Integers, E::Scalar(q)) => q.is_integer(),
            (S::QGe1, E::Scalar(q)) => q.is_zero() || *q >= Rational::one(),
            (S::ExpSum(b), E::ExpSum(r)) => b.contains(r)?,
            (S::MixedRing { quad_d }, E::Mixed(p)) => MixedPoly::new(p.poly().clone(), *quad_d).is_ok(),
            (S::LexConeAlgebra, E::Lex(_)) => true,
            _ => false,
        })
    }

    fn require(&self, a: &SemidomainElement) -> Result<()> {
        if self.contains(a)? {
            Ok(())
        } else {
            Err(Error::NotAnElement(format!("{a} in {}", self.name())))
        }
    }

    pub fn zero(&self) -> SemidomainElement {
        match self {
            SemidomainDescriptor::ExpSum(_) => SemidomainElement::ExpSum(ExpSum::zero()),
            SemidomainDescriptor::MixedRing { .. } => SemidomainElement::Mixed(MixedPoly::constant(0)),
            SemidomainDescriptor::LexConeAlgebra => SemidomainElement::Lex(LexPoly::default()),
            _ => scalar(Rational::zero()),
        }
    }

    pub fn one(&self) -> SemidomainElement {
        match self {
            SemidomainDescriptor::ExpSum(_) => SemidomainElement::ExpSum(ExpSum::one()),
            SemidomainDescriptor::MixedRing { .. } => SemidomainElement::Mixed(MixedPoly::constant(1)),
            SemidomainDescriptor::LexConeAlgebra => SemidomainElement::Lex(LexPoly::one()),
            _ => scalar(Rational::one()),
        }
    }

    pub fn is_zero(&self, a: &SemidomainElement) -> bool {
        match a {
            SemidomainElement::Scalar(q) => q.is_zero(),
            SemidomainElement::ExpSum(r) => r.is_zero(),
            SemidomainElement::Mixed(p) => p.is_zero(),
            SemidomainElement::Lex(p) => p.is_zero(),
        }
    }

    pub fn add(&self, a: &SemidomainElement, b: &SemidomainElement) -> Result<SemidomainElement> {
        self.require(a)?;
        self.require(b)?;
        use SemidomainElement as E;
        Ok(match (a, b) {
            (E::Scalar(x), E::Scalar(y)) => E::Scalar(x + y),
            (E::ExpSum(x), E::ExpSum(y)) => E::ExpSum(x.add(y)),
            (E::Mixed(x), E::Mixed(y)) => E::Mixed(x.add(y)),
            (E::Lex(x), E::Lex(y)) => E::Lex(x.add(y)),
            _ => return Err(Error::BaseMismatch),
        })
    }

    pub fn mult(&self, a: &SemidomainElement, b: &SemidomainElement) -> Result<SemidomainElement> {
        self.require(a)?;
        self.require(b)?;
        use SemidomainElement as E;
        Ok(match (a, b) {
            (E::Scalar(x), E::Scalar(y)) => E::Scalar(x * y),
            (E::ExpSum(x), E::ExpSum(y)) => E::ExpSum(x.mul(y)),
            (E::Mixed(x), E::Mixed(y)) => E::Mixed(x.mul(y)),
            (E::Lex(x), E::Lex(y)) => E::Lex(x.mul(y)),
            _ => return Err(Error::BaseMismatch),
        })
    }

    fn nonzero(&self, a: &SemidomainElement) -> Result<()> {
        self.require(a)?;
        if self.is_zero(a) {
            Err(Error::ZeroInput)
        } else {
            Ok(())
        }
    }

    pub fn is_unit(&self, a: &SemidomainElement) -> Result<bool> {
        self.nonzero(a)?;
        Ok(match a {
            SemidomainElement::Scalar(q) => match self {
                SemidomainDescriptor::Integers => q.abs().is_one(),
                _ => q.is_one(),
            },
            SemidomainElement::ExpSum(r) => r.is_one(),
            SemidomainElement::Mixed(p) => p.is_one(),
            SemidomainElement::Lex(p) => p.is_unit(),
        })
    }

    /// `Some(d)` with `b·d = c` and `d` in the semidomain, else None.
    pub fn mult_divides(&self, b: &SemidomainElement, c: &SemidomainElement) -> Result<Option<SemidomainElement>> {
        self.nonzero(b)?;
        self.nonzero(c)?;
        use SemidomainElement as E;
        Ok(match (b, c) {
            (E::Scalar(x), E::Scalar(y)) => Some(scalar(y / x)).filter(|d| self.contains(d).unwrap_or(false)),
            (E::ExpSum(x), E::ExpSum(y)) => match (self, y.checked_div(x)) {
                (SemidomainDescriptor::ExpSum(base), Some(d)) if base.contains(&d)? => Some(E::ExpSum(d)),
                _ => None,
            },
            (E::Mixed(x), E::Mixed(y)) => y.checked_div(x).map(E::Mixed),
            (E::Lex(x), E::Lex(y)) => y.checked_div(x).map(E::Lex),
            _ => return Err(Error::BaseMismatch),
        })
    }

    pub fn mult_is_atom(&self, a: &SemidomainElement, budget: &SearchBudget) -> Result<AtomVerdict> {
        self.nonzero(a)?;
        if self.is_unit(a)? {
            return Err(Error::UnitInput);
        }
        use SemidomainElement as E;
        match (self, a) {
            (SemidomainDescriptor::QGe1, E::Scalar(q)) => {
                // Antimatter: (1+q)/2 and 2q/(1+q) both exceed 1.
                let two = Rational::from_integer(2.into());
                let s = (Rational::one() + q) / &two;
                let t = q / &s;
                Ok(AtomVerdict::NotAtom(scalar(s), scalar(t)))
            }
            (_, E::Scalar(q)) => {
                let n = q.to_integer();
                let m = n.abs().to_u64().ok_or_else(|| Error::Overflow(n.to_string()))?;
                if is_prime(m) {
                    return Ok(AtomVerdict::Atom(AtomCertificate::PrimeScalar(n)));
                }
                let p = BigInt::from(factor_integer(m)?[0]);
                let rest = &n / &p;
                Ok(AtomVerdict::NotAtom(int_scalar(p), int_scalar(rest)))
            }
            (SemidomainDescriptor::ExpSum(b), E::ExpSum(r)) => expsum::is_atom(*b, r, budget),
            (SemidomainDescriptor::MixedRing { quad_d }, E::Mixed(p)) => mixed::is_atom(p, *quad_d, budget),
            (SemidomainDescriptor::LexConeAlgebra, E::Lex(p)) => lexcone::is_atom(p, budget),
            _ => Err(Error::BaseMismatch),
        }
    }

    /// Re-derives the certificate from scratch.
    pub fn verify_atom(&self, a: &SemidomainElement, cert: &AtomCertificate, budget: &SearchBudget) -> Result<bool> {
        if let (AtomCertificate::PrimeScalar(p), SemidomainElement::Scalar(q)) = (cert, a) {
            return Ok(q.is_integer() && &q.to_integer() == p && p.abs().to_u64().is_some_and(is_prime));
        }
        Ok(matches!(self.mult_is_atom(a, budget)?, AtomVerdict::Atom(c) if &c == cert))
    }

    pub fn grothendieck_embed(&self, a: &SemidomainElement) -> Result<Embedded> {
        self.require(a)?;
        Ok(match (self, a) {
            (SemidomainDescriptor::QGe1, SemidomainElement::Scalar(q)) => Embedded::Rational(q.clone()),
            (_, SemidomainElement::Scalar(q)) => Embedded::Integer(q.to_integer()),
            (_, SemidomainElement::ExpSum(r)) => Embedded::GroupRing(r.terms().clone()),
            (_, SemidomainElement::Mixed(p)) => Embedded::Quad(p.poly().clone()),
            (_, SemidomainElement::Lex(p)) => Embedded::Lex(p.clone()),
        })
    }

    /// Splits `a` recursively along `NotAtom` witnesses until every piece is a
    /// certified atom; None on `Unknown` or once more than `max_atoms` pieces appear.
    pub fn factor_by_splitting(&self, a: &SemidomainElement, max_atoms: usize, budget: &SearchBudget) -> Result<Option<MultFactorization>> {
        self.nonzero(a)?;
        let mut atoms = Vec::new();
        let mut certificates = Vec::new();
        if self.is_unit(a)? {
            return Ok(Some(MultFactorization { unit: a.clone(), atoms, certificates }));
        }
        let mut unit = self.one();
        let mut stack = vec![a.clone()];
        while let Some(x) = stack.pop() {
            if self.is_unit(&x)? {
                unit = self.mult(&unit, &x)?;
                continue;
            }
            match self.mult_is_atom(&x, budget)? {
                AtomVerdict::Atom(c) => {
                    atoms.push(x);
                    certificates.push(c);
                    if atoms.len() > max_atoms {
                        return Ok(None);
                    }
                }
                AtomVerdict::NotAtom(l, r) => {
                    if atoms.len() + stack.len() + 2 > max_atoms {
                        return Ok(None);
                    }
                    stack.push(r);
                    stack.push(l);
                }
                AtomVerdict::Unknown(_) => return Ok(None),
            }
        }
        Ok(Some(MultFactorization { unit, atoms, certificates }))
    }

    pub fn product(&self, f: &MultFactorization) -> Result<SemidomainElement> {
        f.atoms.iter().try_fold(f.unit.clone(), |acc, a| self.mult(&acc, a))
    }
}

/// `r = e^d · reduced`, `d` a maximal common divisor of the exponents of `r`.
pub fn expsum_exponent_mcd_split(base: ExpBase, r: &ExpSum, budget: &SearchBudget) -> Result<(Rational, ExpSum)> {
    expsum::exponent_mcd_split(base, r, budget)
}

pub fn mixedring_ord_status(f: &MixedPoly) -> Result<OrdStatus> {
    f.ord_status()
}

pub fn lexcone_phi(f: &LexPoly) -> Result<u32> {
    f.phi().ok_or(Error::ZeroInput)
}
