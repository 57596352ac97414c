//! Constructive subatomicity witnesses: an atom dividing an element
//! (Furstenberg), finitely many atoms whose product with the element factors
//! (almost atomic), or an arbitrary nonzero multiplier doing the same
//! (quasi-atomic). Also a small unique-factorization cross-check and a
//! brute-force factorization oracle.

mod ascent;
mod oracle;
mod ufm;

pub use ascent::{almost_atomic_witness, furstenberg_witness, quasi_atomic_witness};
pub use oracle::{brute_force_oracle, OracleReport};
pub use ufm::{poly_grid, ufm_check_small, value_range, UfmReport};

use std::fmt;

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::monoids::{MonoidDescriptor, MonoidElement};
use crate::poly::{is_atom_poly, laurent_is_atom, poly_mul, LaurentPoly, PolyAtomVerdict, SemiPoly};
use crate::semidomains::{AtomVerdict, SemidomainDescriptor, SemidomainElement};
use crate::RatPoly;

/// Where a witness lives: an additive monoid, a semidomain under
/// multiplication, or the polynomial / Laurent polynomial semidomain over a base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Monoid(MonoidDescriptor),
    Semidomain(SemidomainDescriptor),
    Poly(SemidomainDescriptor),
    Laurent(SemidomainDescriptor),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    Monoid(MonoidElement),
    Semi(SemidomainElement),
    Poly(SemiPoly),
    Laurent(LaurentPoly),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Monoid(e) => write!(f, "{e}"),
            Element::Semi(e) => write!(f, "{e}"),
            Element::Poly(e) => write!(f, "{e}"),
            Element::Laurent(e) => write!(f, "{e}"),
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Outcome of a one-step atom test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Step {
    Atom,
    Split(Element, Element),
    Unknown(String),
}

fn mismatch(s: &Structure, e: &Element) -> Error {
    Error::NotAnElement(format!("{e} in {}", s.name()))
}

impl Structure {
    pub fn name(&self) -> String {
        match self {
            Structure::Monoid(m) => m.name(),
            Structure::Semidomain(s) => s.name(),
            Structure::Poly(s) => format!("{}[x]", s.name()),
            Structure::Laurent(s) => format!("{}[x^±1]", s.name()),
        }
    }

    /// `true` when the operation is `+` rather than `·`.
    pub fn is_additive(&self) -> bool {
        matches!(self, Structure::Monoid(_))
    }

    pub fn contains(&self, e: &Element) -> Result<bool> {
        Ok(match (self, e) {
            (Structure::Monoid(m), Element::Monoid(x)) => m.contains(x)?,
            (Structure::Semidomain(s), Element::Semi(x)) => s.contains(x)?,
            (Structure::Poly(b), Element::Poly(p)) => p.base() == *b,
            (Structure::Laurent(b), Element::Laurent(p)) => p.body().base() == *b,
            _ => false,
        })
    }

    /// The identity of the operation: 0 for monoids, 1 otherwise.
    pub fn identity(&self) -> Element {
        match self {
            Structure::Monoid(m) => Element::Monoid(m.zero()),
            Structure::Semidomain(s) => Element::Semi(s.one()),
            Structure::Poly(b) => Element::Poly(SemiPoly::raw(*b, RatPoly::one())),
            Structure::Laurent(b) => Element::Laurent(LaurentPoly::new(0, SemiPoly::raw(*b, RatPoly::one()))),
        }
    }

    pub fn combine(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(match (self, a, b) {
            (Structure::Monoid(_), Element::Monoid(x), Element::Monoid(y)) => Element::Monoid(x.add(y)?),
            (Structure::Semidomain(s), Element::Semi(x), Element::Semi(y)) => Element::Semi(s.mult(x, y)?),
            (Structure::Poly(_), Element::Poly(x), Element::Poly(y)) => Element::Poly(poly_mul(x, y)?),
            (Structure::Laurent(_), Element::Laurent(x), Element::Laurent(y)) => Element::Laurent(x.mul(y)?),
            _ => return Err(Error::BaseMismatch),
        })
    }

    pub fn combine_all<'a>(&self, items: impl IntoIterator<Item = &'a Element>) -> Result<Element> {
        items.into_iter().try_fold(self.identity(), |acc, x| self.combine(&acc, x))
    }

    /// The absorbing element: none for monoids, zero for the rest.
    pub fn is_absorbing(&self, e: &Element) -> bool {
        match e {
            Element::Monoid(_) => false,
            Element::Semi(x) => matches!(self, Structure::Semidomain(s) if s.is_zero(x)),
            Element::Poly(p) => p.is_zero(),
            Element::Laurent(p) => p.is_zero(),
        }
    }

    pub fn is_unit(&self, e: &Element) -> Result<bool> {
        Ok(match (self, e) {
            (Structure::Monoid(_), Element::Monoid(x)) => x.is_zero(),
            (Structure::Semidomain(s), Element::Semi(x)) => s.is_unit(x)?,
            (Structure::Poly(_), Element::Poly(p)) => p.is_unit(),
            (Structure::Laurent(_), Element::Laurent(p)) => p.is_unit(),
            _ => return Err(mismatch(self, e)),
        })
    }

    fn require_nonunit(&self, e: &Element) -> Result<()> {
        if !self.contains(e)? {
            return Err(mismatch(self, e));
        }
        if self.is_absorbing(e) || self.is_unit(e)? {
            return Err(Error::InvalidInput(format!("{e} is zero or a unit in {}", self.name())));
        }
        Ok(())
    }

    pub(crate) fn step(&self, e: &Element, budget: &SearchBudget) -> Result<Step> {
        Ok(match (self, e) {
            (Structure::Monoid(m), Element::Monoid(x)) => match m.nontrivial_split(x)? {
                None => Step::Atom,
                Some((a, b)) => Step::Split(Element::Monoid(a), Element::Monoid(b)),
            },
            (Structure::Semidomain(s), Element::Semi(x)) => match s.mult_is_atom(x, budget)? {
                AtomVerdict::Atom(_) => Step::Atom,
                AtomVerdict::NotAtom(a, b) => Step::Split(Element::Semi(a), Element::Semi(b)),
                AtomVerdict::Unknown(m) => Step::Unknown(m),
            },
            (Structure::Poly(_), Element::Poly(p)) => match is_atom_poly(p, budget)? {
                PolyAtomVerdict::Atom(_) => Step::Atom,
                PolyAtomVerdict::NotAtom(a, b) => Step::Split(Element::Poly(a), Element::Poly(b)),
                PolyAtomVerdict::Unknown(m) => Step::Unknown(m),
            },
            (Structure::Laurent(_), Element::Laurent(p)) => match laurent_is_atom(p, budget)? {
                PolyAtomVerdict::Atom(_) => Step::Atom,
                PolyAtomVerdict::NotAtom(a, b) => Step::Split(Element::Laurent(LaurentPoly::new(p.shift(), a)), Element::Laurent(b.into())),
                PolyAtomVerdict::Unknown(m) => Step::Unknown(m),
            },
            _ => return Err(mismatch(self, e)),
        })
    }

    /// Whether `e` is a certified atom.
    pub fn is_certified_atom(&self, e: &Element, budget: &SearchBudget) -> Result<bool> {
        if !self.contains(e)? || self.is_absorbing(e) || self.is_unit(e)? {
            return Ok(false);
        }
        if let (Structure::Monoid(m), Element::Monoid(x)) = (self, e) {
            return m.is_atom(x);
        }
        Ok(self.step(e, budget)? == Step::Atom)
    }
}

/// `unit · ∏ atoms` (or `unit + Σ atoms` in a monoid).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFactorization {
    pub unit: Element,
    pub atoms: Vec<Element>,
}

impl WitnessFactorization {
    pub fn value(&self, s: &Structure) -> Result<Element> {
        self.atoms.iter().try_fold(self.unit.clone(), |acc, a| s.combine(&acc, a))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessKind {
    /// `atom · cofactor = target`.
    FurstenbergAtom { atom: Element, cofactor: Element },
    /// `(∏ added_atoms) · target = factorization`.
    AlmostAtomic { added_atoms: Vec<Element>, factorization: WitnessFactorization },
    /// `multiplier · target = factorization`.
    QuasiAtomic { multiplier: Element, factorization: WitnessFactorization },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub budget: SearchBudget,
    pub branches: usize,
    pub notes: Vec<String>,
}

impl SearchReport {
    pub(crate) fn new(budget: &SearchBudget) -> Self {
        SearchReport { budget: budget.clone(), branches: 0, notes: Vec::new() }
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubatomicWitness {
    pub kind: WitnessKind,
    pub report: SearchReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found(SubatomicWitness),
    /// The search ran out of budget; nothing is claimed.
    NotFoundWithinBudget(SearchReport),
    /// No witness exists, for the stated checkable reason.
    ProvablyNoWitness {
        obstruction: String,
        report: SearchReport,
    },
}

impl WitnessOutcome {
    pub fn witness(&self) -> Option<&SubatomicWitness> {
        match self {
            WitnessOutcome::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn report(&self) -> &SearchReport {
        match self {
            WitnessOutcome::Found(w) => &w.report,
            WitnessOutcome::NotFoundWithinBudget(r) | WitnessOutcome::ProvablyNoWitness { report: r, .. } => r,
        }
    }
}

fn all_atoms(s: &Structure, atoms: &[Element], budget: &SearchBudget) -> Result<bool> {
    for a in atoms {
        if !s.is_certified_atom(a, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl SubatomicWitness {
    /// Re-checks the witness against `target` using only its own data.
    pub fn verify(&self, s: &Structure, target: &Element, budget: &SearchBudget) -> Result<bool> {
        match &self.kind {
            WitnessKind::FurstenbergAtom { atom, cofactor } => Ok(s.contains(cofactor)?
                && !s.is_absorbing(cofactor)
                && s.is_certified_atom(atom, budget)?
                && s.combine(atom, cofactor)? == *target),
            WitnessKind::AlmostAtomic { added_atoms, factorization } => Ok(all_atoms(s, added_atoms, budget)?
                && check_factorization(s, factorization, budget)?
                && s.combine(&s.combine_all(added_atoms)?, target)? == factorization.value(s)?),
            WitnessKind::QuasiAtomic { multiplier, factorization } => Ok(s.contains(multiplier)?
                && !s.is_absorbing(multiplier)
                && check_factorization(s, factorization, budget)?
                && s.combine(multiplier, target)? == factorization.value(s)?),
        }
    }
}

fn check_factorization(s: &Structure, f: &WitnessFactorization, budget: &SearchBudget) -> Result<bool> {
    Ok(s.contains(&f.unit)? && s.is_unit(&f.unit)? && all_atoms(s, &f.atoms, budget)?)
}
