//! Concrete additive monoids: finitely generated Puiseux monoids, the
//! prime-reciprocal monoid `P`, its union with ℚ≥1, the almost atomic
//! example built over primes above 4, the dyadic monoid, and the
//! lexicographic cone in ℤ².

pub mod almost;
pub mod fg;
pub mod reciprocal;
mod search;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use almost::CanonicalDecomposition;
pub use fg::FgMonoid;

use crate::error::{Error, Result};
use crate::exact::{is_power_of_two, padic_valuation, primes_greater_than, Valuation};
use crate::Rational;
use search::{grouped_factorizations, AtomGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoidDescriptor {
    Numerical(FgMonoid),
    PuiseuxFG(FgMonoid),
    /// `P = ⟨1/p : p prime⟩`.
    PrimeReciprocal,
    /// `P ∪ ℚ≥1`.
    PrimeReciprocalPlusQge1,
    AlmostAtomicExample,
    /// Nonnegative dyadic rationals.
    Dyadic,
    /// `(ℕ₀ × {0}) ∪ (ℤ × ℕ)`, ordered lexicographically with the second coordinate first.
    LexCone,
}

/// An element of a Puiseux monoid, or a pair `(b, c)` of the lexicographic cone.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonoidElement {
    Value(Rational),
    Pair(i64, i64),
}

impl MonoidElement {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            MonoidElement::Value(q) => Some(q),
            MonoidElement::Pair(..) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            MonoidElement::Value(q) => q.is_zero(),
            MonoidElement::Pair(b, c) => *b == 0 && *c == 0,
        }
    }

    pub fn add(&self, other: &MonoidElement) -> Result<MonoidElement> {
        match (self, other) {
            (MonoidElement::Value(a), MonoidElement::Value(b)) => Ok(MonoidElement::Value(a + b)),
            (MonoidElement::Pair(a, b), MonoidElement::Pair(c, d)) => Ok(MonoidElement::Pair(a + c, b + d)),
            _ => Err(Error::InvalidInput("mixed element kinds".into())),
        }
    }

    pub fn sub(&self, other: &MonoidElement) -> Result<MonoidElement> {
        match (self, other) {
            (MonoidElement::Value(a), MonoidElement::Value(b)) => Ok(MonoidElement::Value(a - b)),
            (MonoidElement::Pair(a, b), MonoidElement::Pair(c, d)) => Ok(MonoidElement::Pair(a - c, b - d)),
            _ => Err(Error::InvalidInput("mixed element kinds".into())),
        }
    }
}

impl From<Rational> for MonoidElement {
    fn from(q: Rational) -> Self {
        MonoidElement::Value(q)
    }
}

impl Ord for MonoidElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (MonoidElement::Value(a), MonoidElement::Value(b)) => a.cmp(b),
            (MonoidElement::Pair(a, b), MonoidElement::Pair(c, d)) => (b, a).cmp(&(d, c)),
            (MonoidElement::Value(_), MonoidElement::Pair(..)) => Ordering::Less,
            (MonoidElement::Pair(..), MonoidElement::Value(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for MonoidElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidElement::Value(q) => write!(f, "{q}"),
            MonoidElement::Pair(b, c) => write!(f, "({b},{c})"),
        }
    }
}

/// Machine-checkable reason why an element has no factorization into atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// `v_prime(q) = valuation`, while every sum of the atoms able to divide `q`
    /// has valuation at least `min_reachable`.
    Valuation { prime: u64, valuation: i64, min_reachable: i64 },
    /// The residues forced by the denominator already add up to more than `value`.
    ResidueExcess { required: Rational, value: Rational },
    /// Sums of atoms of the cone have second coordinate 0.
    SecondCoordinate { c: i64 },
    /// The monoid has no atoms and the element is nonzero.
    Antimatter,
    /// Every atom that can divide the element was tried.
    Exhaustive { atoms_considered: usize },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Valuation { prime, valuation, min_reachable } => {
                write!(f, "{prime}-adic valuation {valuation} is below {min_reachable}, the least valuation of any sum of dividing atoms")
            }
            Obstruction::ResidueExcess { required, value } => {
                write!(f, "forced residues sum to {required}, exceeding {value}")
            }
            Obstruction::SecondCoordinate { c } => write!(f, "second coordinate {c} is not reachable by sums of (1,0)"),
            Obstruction::Antimatter => write!(f, "the monoid has no atoms"),
            Obstruction::Exhaustive { atoms_considered } => {
                write!(f, "exhaustive search over all {atoms_considered} dividing atoms")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomList {
    pub atoms: Vec<MonoidElement>,
    /// The list holds every atom within the bound.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AdditiveFactorization {
    pub atoms: Vec<MonoidElement>,
    pub complete_enumeration: bool,
}

impl AdditiveFactorization {
    pub fn sum(&self) -> MonoidElement {
        let zero = match self.atoms.first() {
            Some(MonoidElement::Pair(..)) => MonoidElement::Pair(0, 0),
            _ => MonoidElement::Value(Rational::zero()),
        };
        self.atoms.iter().fold(zero, |acc, a| acc.add(a).unwrap())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSet {
    pub factorizations: Vec<AdditiveFactorization>,
    /// Every factorization of the element is listed.
    pub complete: bool,
    /// Present when the set is provably empty.
    pub obstruction: Option<Obstruction>,
}

/// Common-divisor data for a finite subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorSets {
    pub gcd: Vec<MonoidElement>,
    pub mcd: Vec<MonoidElement>,
    /// The full set of common divisors when it is finite and was enumerated.
    pub common: Option<Vec<MonoidElement>>,
    /// False when the answer comes from a bounded search rather than a complete one.
    pub exact: bool,
}

/// Default bound on denominators for searches over infinitely generated monoids.
pub const DEFAULT_ATOM_BOUND: u64 = 100;

fn val(e: &MonoidElement) -> Result<&Rational> {
    e.value().ok_or_else(|| Error::NotAnElement(e.to_string()))
}

fn pair(e: &MonoidElement) -> Result<(i64, i64)> {
    match e {
        MonoidElement::Pair(b, c) => Ok((*b, *c)),
        _ => Err(Error::NotAnElement(e.to_string())),
    }
}

fn primes_up_to(bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut last = 1;
    loop {
        let p = primes_greater_than(last, 1)[0];
        if p > bound {
            return out;
        }
        out.push(p);
        last = p;
    }
}

fn recip(p: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(p))
}

impl MonoidDescriptor {
    pub fn numerical(gens: &[u64]) -> Result<Self> {
        let g = gens.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect();
        Ok(MonoidDescriptor::Numerical(FgMonoid::new(g)?))
    }

    pub fn puiseux(gens: Vec<Rational>) -> Result<Self> {
        Ok(MonoidDescriptor::PuiseuxFG(FgMonoid::new(gens)?))
    }

    pub fn name(&self) -> String {
        match self {
            MonoidDescriptor::Numerical(m) => format!("numerical{:?}", m.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>()),
            MonoidDescriptor::PuiseuxFG(m) => format!("puiseux{:?}", m.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>()),
            MonoidDescriptor::PrimeReciprocal => "P".into(),
            MonoidDescriptor::PrimeReciprocalPlusQge1 => "MF".into(),
            MonoidDescriptor::AlmostAtomicExample => "MAA".into(),
            MonoidDescriptor::Dyadic => "dyadic".into(),
            MonoidDescriptor::LexCone => "lexcone".into(),
        }
    }

    pub fn is_lex_cone(&self) -> bool {
        matches!(self, MonoidDescriptor::LexCone)
    }

    pub fn zero(&self) -> MonoidElement {
        if self.is_lex_cone() {
            MonoidElement::Pair(0, 0)
        } else {
            MonoidElement::Value(Rational::zero())
        }
    }

    /// Membership test. Denominators must fit in 64 bits for the prime-based kinds.
    pub fn contains(&self, e: &MonoidElement) -> Result<bool> {
        use MonoidDescriptor::*;
        match (self, e) {
            (LexCone, MonoidElement::Pair(b, c)) => Ok(*c >= 1 || (*c == 0 && *b >= 0)),
            (LexCone, _) | (_, MonoidElement::Pair(..)) => Ok(false),
            (Numerical(m) | PuiseuxFG(m), MonoidElement::Value(q)) => Ok(m.contains(q)),
            (PrimeReciprocal, MonoidElement::Value(q)) => reciprocal::in_prime_reciprocal(q),
            (PrimeReciprocalPlusQge1, MonoidElement::Value(q)) => reciprocal::in_mf(q),
            (AlmostAtomicExample, MonoidElement::Value(q)) => almost::contains(q),
            (Dyadic, MonoidElement::Value(q)) => Ok(!q.is_negative() && is_power_of_two(q.denom())),
        }
    }

    fn require(&self, e: &MonoidElement) -> Result<()> {
        if self.contains(e)? {
            Ok(())
        } else {
            Err(Error::NotAnElement(e.to_string()))
        }
    }

    /// Whether `b` divides `c`, that is `c − b` lies in the monoid.
    pub fn divides(&self, b: &MonoidElement, c: &MonoidElement) -> Result<bool> {
        self.contains(&c.sub(b)?)
    }

    pub fn is_atom(&self, e: &MonoidElement) -> Result<bool> {
        use MonoidDescriptor::*;
        self.require(e)?;
        Ok(match self {
            Numerical(m) | PuiseuxFG(m) => m.is_atom(val(e)?),
            PrimeReciprocal | PrimeReciprocalPlusQge1 => reciprocal::reciprocal_prime(val(e)?).is_some(),
            AlmostAtomicExample => almost::atom_index(val(e)?).is_some(),
            Dyadic => false,
            LexCone => pair(e)? == (1, 0),
        })
    }

    /// A split `e = a + b` into nonzero members with `a` an atom whenever the
    /// kind has one dividing `e`; None when `e` is zero or an atom.
    pub fn nontrivial_split(&self, e: &MonoidElement) -> Result<Option<(MonoidElement, MonoidElement)>> {
        use MonoidDescriptor::*;
        if e.is_zero() || self.is_atom(e)? {
            return Ok(None);
        }
        let first = match self {
            Numerical(m) | PuiseuxFG(m) => {
                let q = val(e)?;
                m.atoms().into_iter().find(|a| m.contains(&(q - a))).map(MonoidElement::Value)
            }
            PrimeReciprocal | PrimeReciprocalPlusQge1 => {
                let q = val(e)?;
                let p = match reciprocal::residue_form(q)? {
                    Ok(rf) => rf.residues.first().map_or(2, |r| r.0),
                    // q > 1 outside P: any 1/p ≤ q − 1 leaves a remainder ≥ 1.
                    Err(_) => {
                        let k = crate::exact::ceil(&(Rational::one() / (q - Rational::one())));
                        let mut p = k.to_u64().ok_or_else(|| Error::Overflow(q.to_string()))?.max(2);
                        while !crate::exact::is_prime(p) {
                            p += 1;
                        }
                        p
                    }
                };
                Some(MonoidElement::Value(recip(p)))
            }
            AlmostAtomicExample => {
                let q = val(e)?;
                let decs = almost::canonical_decompositions(q)?;
                let with_pair = decs.iter().find_map(|d| d.pairs.iter().next().map(|(&n, &c)| (n, c)));
                Some(MonoidElement::Value(match with_pair {
                    Some((n, (c, _))) if c > 0 => almost::a(n),
                    Some((n, _)) => almost::a_prime(n),
                    None => almost::greatest_divisor_in_dyadic(q)? / Rational::from_integer(2.into()),
                }))
            }
            Dyadic => Some(MonoidElement::Value(val(e)? / Rational::from_integer(2.into()))),
            LexCone => Some(MonoidElement::Pair(1, 0)),
        };
        match first {
            Some(a) => {
                let b = e.sub(&a)?;
                if b.is_zero() || !self.contains(&b)? {
                    return Err(Error::InvalidInput(format!("split of {e} failed")));
                }
                Ok(Some((a, b)))
            }
            None => Ok(None),
        }
    }

    /// Atoms whose denominator is at most `bound`, ascending.
    pub fn atoms_up_to(&self, bound: u64) -> AtomList {
        use MonoidDescriptor::*;
        let mut atoms: Vec<MonoidElement> = match self {
            Numerical(m) | PuiseuxFG(m) => {
                m.atoms().into_iter().filter(|a| a.denom().to_u64().is_some_and(|d| d <= bound)).map(MonoidElement::Value).collect()
            }
            PrimeReciprocal | PrimeReciprocalPlusQge1 => primes_up_to(bound).into_iter().map(|p| MonoidElement::Value(recip(p))).collect(),
            AlmostAtomicExample => {
                let mut v = Vec::new();
                let mut n = 1;
                while almost::p(n) <= bound {
                    v.push(MonoidElement::Value(almost::a(n)));
                    let ap = almost::a_prime(n);
                    if ap.denom() <= &BigInt::from(bound) {
                        v.push(MonoidElement::Value(ap));
                    }
                    n += 1;
                }
                v
            }
            Dyadic => Vec::new(),
            LexCone => vec![MonoidElement::Pair(1, 0)],
        };
        atoms.sort();
        AtomList { atoms, complete: true }
    }

    /// Factorizations of `e` into atoms with denominators at most `atom_bound`,
    /// up to `max_count` of them.
    pub fn factorizations(&self, e: &MonoidElement, max_count: usize, atom_bound: u64) -> Result<FactorizationSet> {
        use MonoidDescriptor::*;
        self.require(e)?;
        if e.is_zero() {
            let f = AdditiveFactorization { atoms: Vec::new(), complete_enumeration: true };
            return Ok(FactorizationSet { factorizations: vec![f], complete: true, obstruction: None });
        }
        let (lists, complete, obstruction): (Vec<Vec<MonoidElement>>, bool, Option<Obstruction>) = match self {
            Numerical(m) | PuiseuxFG(m) => {
                let atoms = m.atoms();
                let (counts, complete) = m.factorizations(val(e)?, max_count)?;
                let lists = counts
                    .into_iter()
                    .map(|cv| {
                        cv.iter()
                            .zip(&atoms)
                            .flat_map(|(&c, a)| std::iter::repeat(MonoidElement::Value(a.clone())).take(c as usize))
                            .collect()
                    })
                    .collect();
                (lists, complete, None)
            }
            PrimeReciprocal | PrimeReciprocalPlusQge1 => {
                let q = val(e)?;
                match reciprocal::residue_form(q)? {
                    Err(obs) => (Vec::new(), true, Some(obs)),
                    Ok(form) => {
                        let groups = primes_up_to(atom_bound).into_iter().map(|p| AtomGroup { prime: p, atoms: vec![recip(p)] }).collect();
                        let (found, not_cut) = grouped_factorizations(q, groups, max_count);
                        let max_p = form.residues.iter().map(|r| r.0).max().unwrap_or(0);
                        let complete = not_cut && form.integer_part.is_zero() && max_p <= atom_bound;
                        (wrap(found), complete, None)
                    }
                }
            }
            AlmostAtomicExample => {
                let q = val(e)?;
                let quarter = Rational::new(1.into(), 4.into());
                match padic_valuation(q, 2)? {
                    // Atoms a'ₙ exceed 1/4, and sums of the aₙ have nonnegative 2-adic valuation.
                    Valuation::Finite(v) if v < 0 && q <= &quarter => {
                        (Vec::new(), true, Some(Obstruction::Valuation { prime: 2, valuation: v, min_reachable: 0 }))
                    }
                    _ => {
                        let mut groups = Vec::new();
                        let mut n = 1;
                        while almost::p(n) <= atom_bound {
                            groups.push(AtomGroup { prime: almost::p(n), atoms: vec![almost::a(n), almost::a_prime(n)] });
                            n += 1;
                        }
                        let considered = 2 * groups.len();
                        let (found, not_cut) = grouped_factorizations(q, groups, max_count);
                        let max_p = almost::odd_primes(q)?.into_iter().max().unwrap_or(0);
                        // Below 1/2 only atoms whose prime divides the denominator can divide q.
                        let complete = not_cut && q <= &Rational::new(1.into(), 2.into()) && max_p <= atom_bound;
                        let obs = (complete && found.is_empty()).then_some(Obstruction::Exhaustive { atoms_considered: considered });
                        (wrap(found), complete, obs)
                    }
                }
            }
            Dyadic => (Vec::new(), true, Some(Obstruction::Antimatter)),
            LexCone => {
                let (b, c) = pair(e)?;
                if c == 0 {
                    (vec![vec![MonoidElement::Pair(1, 0); b as usize]], true, None)
                } else {
                    (Vec::new(), true, Some(Obstruction::SecondCoordinate { c }))
                }
            }
        };
        let factorizations = lists.into_iter().map(|atoms| AdditiveFactorization { atoms, complete_enumeration: complete }).collect();
        Ok(FactorizationSet { factorizations, complete, obstruction })
    }

    /// Re-checks an obstruction against `e` without any search state.
    pub fn verify_obstruction(&self, e: &MonoidElement, obs: &Obstruction) -> Result<bool> {
        use MonoidDescriptor::*;
        Ok(match (self, obs) {
            (PrimeReciprocal | PrimeReciprocalPlusQge1, Obstruction::Valuation { prime, valuation, min_reachable }) => {
                *min_reachable == -1 && padic_valuation(val(e)?, *prime)? == Valuation::Finite(*valuation) && valuation < min_reachable
            }
            (PrimeReciprocal | PrimeReciprocalPlusQge1, Obstruction::ResidueExcess { required, value }) => {
                let q = val(e)?;
                q == value
                    && required > value
                    && matches!(reciprocal::residue_form(q)?, Err(Obstruction::ResidueExcess { required: r, .. }) if &r == required)
            }
            (AlmostAtomicExample, Obstruction::Valuation { prime: 2, valuation, min_reachable: 0 }) => {
                let q = val(e)?;
                *valuation < 0
                    && padic_valuation(q, 2)? == Valuation::Finite(*valuation)
                    && q <= &Rational::new(1.into(), 4.into())
                    && almost::a_prime(1) > Rational::new(1.into(), 4.into())
            }
            (AlmostAtomicExample, Obstruction::Exhaustive { .. }) => {
                let q = val(e)?;
                let set = self.factorizations(e, usize::MAX, almost::odd_primes(q)?.into_iter().max().unwrap_or(5))?;
                set.complete && set.factorizations.is_empty()
            }
            (Dyadic, Obstruction::Antimatter) => !e.is_zero(),
            (LexCone, Obstruction::SecondCoordinate { c }) => pair(e)?.1 == *c && *c != 0,
            _ => false,
        })
    }

    /// Greatest and maximal common divisors of `elems`. Infinitely generated
    /// kinds other than the valuation monoids search a bounded grid of candidates.
    pub fn divisor_sets(&self, elems: &[MonoidElement], bound: u64) -> Result<DivisorSets> {
        use MonoidDescriptor::*;
        if elems.is_empty() {
            return Err(Error::EmptyInput);
        }
        for e in elems {
            self.require(e)?;
        }
        match self {
            Dyadic | LexCone => {
                let m = elems.iter().min().unwrap().clone();
                Ok(DivisorSets { gcd: vec![m.clone()], mcd: vec![m], common: None, exact: true })
            }
            Numerical(fg) | PuiseuxFG(fg) => {
                let qs: Vec<Rational> = elems.iter().map(|e| val(e).cloned()).collect::<Result<_>>()?;
                let common: Vec<MonoidElement> = fg.common_divisors(&qs)?.into_iter().map(MonoidElement::Value).collect();
                let (gcd, mcd) = self.extremes(&common)?;
                Ok(DivisorSets { gcd, mcd, common: Some(common), exact: true })
            }
            AlmostAtomicExample => self.almost_divisor_sets(elems),
            PrimeReciprocal | PrimeReciprocalPlusQge1 => self.grid_divisor_sets(elems, bound),
        }
    }

    pub fn gcd_set(&self, elems: &[MonoidElement], bound: u64) -> Result<Vec<MonoidElement>> {
        Ok(self.divisor_sets(elems, bound)?.gcd)
    }

    pub fn mcd_set(&self, elems: &[MonoidElement], bound: u64) -> Result<Vec<MonoidElement>> {
        Ok(self.divisor_sets(elems, bound)?.mcd)
    }

    // (greatest, maximal) elements of a finite set of common divisors under divisibility.
    // Divisibility implies `≤`, so scanning from the top each element only has to be
    // tested against the maximal ones already found, and a greatest element is the maximum.
    fn extremes(&self, cands: &[MonoidElement]) -> Result<(Vec<MonoidElement>, Vec<MonoidElement>)> {
        let mut sorted = cands.to_vec();
        sorted.sort();
        sorted.dedup();
        let mut mcd: Vec<MonoidElement> = Vec::new();
        for x in sorted.iter().rev() {
            let mut maximal = true;
            for y in &mcd {
                if self.divides(x, y)? {
                    maximal = false;
                    break;
                }
            }
            if maximal {
                mcd.push(x.clone());
            }
        }
        mcd.sort();
        let mut gcd = Vec::new();
        if let Some(top) = sorted.last() {
            let mut greatest = true;
            for y in &sorted {
                if !self.divides(y, top)? {
                    greatest = false;
                    break;
                }
            }
            if greatest {
                gcd.push(top.clone());
            }
        }
        Ok((gcd, mcd))
    }

    // Candidates on the lattice 1/L, L = lcm of the denominators times 2·3·5·7.
    fn grid_divisor_sets(&self, elems: &[MonoidElement], _bound: u64) -> Result<DivisorSets> {
        use num_integer::Integer;
        let qs: Vec<&Rational> = elems.iter().map(val).collect::<Result<_>>()?;
        let l = qs.iter().fold(BigInt::from(210), |acc, q| acc.lcm(q.denom()));
        let min = qs.iter().min().unwrap();
        let top = (*min * Rational::from_integer(l.clone())).floor().to_integer();
        let top = top
            .to_u64()
            .filter(|&t| t <= fg::ENUMERATION_CAP)
            .ok_or_else(|| Error::LimitExceeded(format!("candidate grid 1/{l} up to {min}")))?;
        let mut cands = Vec::new();
        for k in 0..=top {
            let x = MonoidElement::Value(Rational::new(BigInt::from(k), l.clone()));
            if !self.contains(&x)? {
                continue;
            }
            let mut ok = true;
            for e in elems {
                if !self.divides(&x, e)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                cands.push(x);
            }
        }
        let (gcd, mcd) = self.extremes(&cands)?;
        Ok(DivisorSets { gcd, mcd, common: None, exact: false })
    }

    // Every common divisor is y + e with y a combination of atoms over the odd
    // primes of the denominators (canonical ranges) and e dyadic; for fixed y the
    // largest admissible e is the least greatest dyadic divisor of the s − y.
    fn almost_divisor_sets(&self, elems: &[MonoidElement]) -> Result<DivisorSets> {
        let qs: Vec<Rational> = elems.iter().map(|e| val(e).cloned()).collect::<Result<_>>()?;
        let min = qs.iter().min().unwrap().clone();
        let mut primes: Vec<u64> = Vec::new();
        for q in &qs {
            primes.extend(almost::odd_primes(q)?);
        }
        primes.sort_unstable();
        primes.dedup();
        let idx: Vec<usize> = primes.iter().map(|&p| (1..).find(|&n| almost::p(n) == p).unwrap()).collect();
        let mut ys = vec![Rational::zero()];
        for (&p, &n) in primes.iter().zip(&idx) {
            let mut next = Vec::new();
            for y in &ys {
                for c in 0..p {
                    for c2 in 0..p {
                        let v =
                            y + Rational::from_integer(c.into()) * almost::a(n) + Rational::from_integer(c2.into()) * almost::a_prime(n);
                        if v <= min {
                            next.push(v);
                        }
                    }
                }
            }
            ys = next;
        }
        let mut cands = Vec::new();
        'y: for y in ys {
            let mut e: Option<Rational> = None;
            for q in &qs {
                let rest = q - &y;
                if !almost::contains(&rest)? {
                    continue 'y;
                }
                let g = almost::greatest_divisor_in_dyadic(&rest)?;
                e = Some(match e {
                    Some(cur) if cur <= g => cur,
                    _ => g,
                });
            }
            cands.push(MonoidElement::Value(y + e.unwrap()));
        }
        cands.sort();
        cands.dedup();
        let (gcd, mcd) = self.extremes(&cands)?;
        let exact = min <= Rational::new(1.into(), 2.into());
        Ok(DivisorSets { gcd, mcd, common: None, exact })
    }

    /// Canonical decompositions in the almost atomic example.
    pub fn canonical_decompositions(&self, q: &Rational) -> Result<Vec<CanonicalDecomposition>> {
        match self {
            MonoidDescriptor::AlmostAtomicExample => almost::canonical_decompositions(q),
            _ => Err(Error::InvalidInput("canonical decompositions exist only for the almost atomic example".into())),
        }
    }

    pub fn greatest_divisor_in_dyadic(&self, q: &Rational) -> Result<Rational> {
        match self {
            MonoidDescriptor::AlmostAtomicExample => almost::greatest_divisor_in_dyadic(q),
            _ => Err(Error::InvalidInput("greatest dyadic divisors are defined for the almost atomic example".into())),
        }
    }
}

fn wrap(found: Vec<Vec<Rational>>) -> Vec<Vec<MonoidElement>> {
    found.into_iter().map(|f| f.into_iter().map(MonoidElement::Value).collect()).collect()
}
