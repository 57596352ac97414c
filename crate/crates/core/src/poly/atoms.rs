//! Indecomposability, atom tests and atom factorizations in `S[x]`, all driven
//! by recombining the irreducible factors over ℚ.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{coefficient_mcd, is_base_unit, scalar_div, sign_normalized, SemiPoly};
use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::exact::{factor_integer, is_prime};
use crate::semidomains::SemidomainDescriptor;
use crate::upoly::{canonical_cmp, factor_rat_poly, to_rat};
use crate::{RatPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Indecomposability {
    pub indecomposable: bool,
    /// Two nonconstant factors in `S[x]` when decomposable.
    pub evidence: Option<(SemiPoly, SemiPoly)>,
    pub splits_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyAtomCertificate {
    /// A constant that is an atom of the base.
    ConstantAtom(BigInt),
    /// Unit content and no split into two nonconstant factors in `S[x]`,
    /// after checking `splits_checked` recombinations of the ℚ[x] factors.
    Nonconstant { mcd: Rational, splits_checked: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyAtomVerdict {
    Atom(PolyAtomCertificate),
    NotAtom(SemiPoly, SemiPoly),
    Unknown(String),
}

/// `unit · ∏ atoms`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFactorization {
    pub unit: Rational,
    pub atoms: Vec<SemiPoly>,
    pub certificates: Vec<PolyAtomCertificate>,
}

impl PolyFactorization {
    pub fn product(&self) -> RatPoly {
        self.atoms.iter().fold(RatPoly::constant(self.unit.clone()), |acc, a| &acc * a.poly())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFactorizations {
    pub factorizations: Vec<PolyFactorization>,
    pub complete: bool,
}

fn nonneg(p: &RatPoly) -> bool {
    p.coeffs().iter().all(|c| !c.is_negative())
}

fn min_nonzero(p: &RatPoly) -> Rational {
    p.terms().map(|(_, c)| c.clone()).min().unwrap()
}

// f = unit · ∏ factors over ℚ, factors primitive integral with positive leading coefficient.
fn rational_factors(f: &SemiPoly, cap: usize) -> Result<(Rational, Vec<RatPoly>)> {
    let (u, fs) = factor_rat_poly(f.poly(), cap)?;
    let mut fs: Vec<RatPoly> = fs.iter().map(to_rat).collect();
    fs.sort_by(canonical_cmp);
    Ok((u, fs))
}

// Products over every subset mask.
fn mask_products(fs: &[RatPoly]) -> Vec<RatPoly> {
    let n = fs.len();
    let mut prods = vec![RatPoly::one(); 1 << n];
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        prods[mask] = &prods[mask & (mask - 1)] * &fs[low];
    }
    prods
}

// A split of the factors into two nonempty parts realizable in S[x], as (g, h).
fn realize_split(base: SemidomainDescriptor, unit: &Rational, g: &RatPoly, h: &RatPoly) -> Option<(RatPoly, RatPoly)> {
    match base {
        SemidomainDescriptor::Integers => Some((g.clone(), h.scale(unit))),
        SemidomainDescriptor::N0 => (nonneg(g) && nonneg(h)).then(|| (g.clone(), h.scale(unit))),
        _ => {
            if !(nonneg(g) && nonneg(h)) {
                return None;
            }
            // Scale g to least nonzero coefficient 1; h then needs k·m_g·m_h ≥ 1.
            let (mg, mh) = (min_nonzero(g), min_nonzero(h));
            (unit * &mg * &mh >= Rational::one()).then(|| (g.scale(&(Rational::one() / &mg)), h.scale(&(unit * &mg))))
        }
    }
}

fn limit_to_unknown<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::LimitExceeded(m)) | Err(Error::Overflow(m)) => Ok(Err(m)),
        Err(e) => Err(e),
    }
}

/// Whether `f` has no factorization into two nonconstant polynomials of `S[x]`.
pub fn is_indecomposable(f: &SemiPoly, budget: &SearchBudget) -> Result<Indecomposability> {
    match f.degree() {
        None => return Err(Error::ZeroInput),
        Some(0) => return Err(Error::ConstantInput),
        _ => {}
    }
    let (unit, fs) = rational_factors(f, budget.factor_degree_cap)?;
    let n = fs.len();
    let prods = mask_products(&fs);
    let full = (1usize << n) - 1;
    let mut seen = BTreeSet::new();
    let mut checked = 0;
    for mask in 1..full {
        if !seen.insert(prods[mask].coeffs().to_vec()) {
            continue;
        }
        checked += 1;
        if let Some((g, h)) = realize_split(f.base(), &unit, &prods[mask], &prods[full ^ mask]) {
            let ev = (SemiPoly::raw(f.base(), g), SemiPoly::raw(f.base(), h));
            return Ok(Indecomposability { indecomposable: false, evidence: Some(ev), splits_checked: checked });
        }
    }
    Ok(Indecomposability { indecomposable: true, evidence: None, splits_checked: checked })
}

fn constant_poly(base: SemidomainDescriptor, c: Rational) -> SemiPoly {
    SemiPoly::raw(base, RatPoly::constant(c))
}

pub fn is_atom_poly(f: &SemiPoly, budget: &SearchBudget) -> Result<PolyAtomVerdict> {
    let base = f.base();
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.is_unit() {
        return Err(Error::UnitInput);
    }
    if f.is_constant() {
        let c = f.poly().coeff(0);
        if base == SemidomainDescriptor::QGe1 {
            let s = (Rational::one() + &c) / Rational::from_integer(2.into());
            let t = &c / &s;
            return Ok(PolyAtomVerdict::NotAtom(constant_poly(base, s), constant_poly(base, t)));
        }
        let n = c.to_integer();
        let m = n.abs().to_u64().ok_or_else(|| Error::Overflow(n.to_string()))?;
        if is_prime(m) {
            return Ok(PolyAtomVerdict::Atom(PolyAtomCertificate::ConstantAtom(n)));
        }
        let p = Rational::from_integer(factor_integer(m)?[0].into());
        let rest = &c / &p;
        return Ok(PolyAtomVerdict::NotAtom(constant_poly(base, p), constant_poly(base, rest)));
    }
    let mcd = coefficient_mcd(f)?.swap_remove(0);
    if !is_base_unit(base, &mcd) {
        let rest = scalar_div(f, &mcd).expect("the content divides every coefficient");
        return Ok(PolyAtomVerdict::NotAtom(constant_poly(base, mcd), rest));
    }
    let ind = match limit_to_unknown(is_indecomposable(f, budget))? {
        Ok(v) => v,
        Err(m) => return Ok(PolyAtomVerdict::Unknown(m)),
    };
    Ok(match ind.evidence {
        Some((g, h)) => PolyAtomVerdict::NotAtom(g, h),
        None => PolyAtomVerdict::Atom(PolyAtomCertificate::Nonconstant { mcd, splits_checked: ind.splits_checked }),
    })
}

/// Replays the certificate's evidence.
pub fn verify_poly_atom(f: &SemiPoly, cert: &PolyAtomCertificate, budget: &SearchBudget) -> Result<bool> {
    match cert {
        PolyAtomCertificate::ConstantAtom(p) => Ok(f.is_constant()
            && f.base() != SemidomainDescriptor::QGe1
            && f.poly().coeff(0) == Rational::from_integer(p.clone())
            && p.abs().to_u64().is_some_and(is_prime)),
        PolyAtomCertificate::Nonconstant { mcd, .. } => {
            if f.is_constant() || !is_base_unit(f.base(), mcd) || coefficient_mcd(f)?[0] != *mcd {
                return Ok(false);
            }
            Ok(is_indecomposable(f, budget)?.indecomposable)
        }
    }
}

fn prime_constants(n: &BigInt) -> Result<Vec<Rational>> {
    let m = n.abs().to_u64().ok_or_else(|| Error::Overflow(n.to_string()))?;
    Ok(factor_integer(m)?.into_iter().map(|p| Rational::from_integer(p.into())).collect())
}

// Partitions of the full mask into valid blocks; each partition as a sorted mask list.
fn block_partitions(full: usize, valid: &dyn Fn(usize) -> bool) -> Vec<Vec<usize>> {
    fn rec(rest: usize, valid: &dyn Fn(usize) -> bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        let low = rest & rest.wrapping_neg();
        let others = rest ^ low;
        let mut sub = others;
        loop {
            let block = sub | low;
            if valid(block) {
                cur.push(block);
                rec(rest ^ block, valid, cur, out);
                cur.pop();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }
    let mut out = Vec::new();
    rec(full, valid, &mut Vec::new(), &mut out);
    out
}

// Whether a block's product (already known realizable) splits further inside S[x].
fn block_splits(block: usize, prods: &[RatPoly], ok: &dyn Fn(&RatPoly, &RatPoly, &RatPoly) -> bool) -> bool {
    let mut sub = (block - 1) & block;
    while sub != 0 {
        if ok(&prods[block], &prods[sub], &prods[block ^ sub]) {
            return true;
        }
        sub = (sub - 1) & block;
    }
    false
}

/// Factorizations of `f` into atoms of `S[x]`, up to `max_count`, with
/// `complete` false only when that limit cut the list.
pub fn atom_factorizations(f: &SemiPoly, max_count: usize, budget: &SearchBudget) -> Result<PolyFactorizations> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let base = f.base();
    let (sign, f) = sign_normalized(f);
    if f.is_unit() {
        return Ok(PolyFactorizations {
            factorizations: vec![PolyFactorization { unit: sign * f.poly().coeff(0), atoms: vec![], certificates: vec![] }],
            complete: true,
        });
    }
    let (unit, fs) = rational_factors(&f, budget.factor_degree_cap)?;
    let n = fs.len();
    let prods = mask_products(&fs);
    let full = (1usize << n) - 1;
    let mut results: BTreeSet<Vec<(usize, Vec<Rational>)>> = BTreeSet::new();
    let mut listed: Vec<(Rational, Vec<RatPoly>)> = Vec::new();
    match base {
        SemidomainDescriptor::QGe1 => {
            if n == 0 {
                // Constants above 1 have no atom divisors at all.
                return Ok(PolyFactorizations { factorizations: vec![], complete: true });
            }
            let mins: Vec<Rational> = prods.iter().map(|p| if p.is_zero() { Rational::zero() } else { min_nonzero(p) }).collect();
            let valid = |b: usize| {
                nonneg(&prods[b])
                    && !block_splits(b, &prods, &|whole, g, h| {
                        nonneg(g) && nonneg(h) && min_nonzero(g) * min_nonzero(h) >= min_nonzero(whole)
                    })
            };
            for part in block_partitions(full, &valid) {
                let scale = part.iter().fold(unit.clone(), |acc, &b| acc * &mins[b]);
                if scale.is_one() {
                    let atoms = part.iter().map(|&b| prods[b].scale(&(Rational::one() / &mins[b]))).collect();
                    listed.push((Rational::one(), atoms));
                }
            }
        }
        _ => {
            let content = unit.to_integer();
            let consts = prime_constants(&content)?;
            let const_atoms: Vec<RatPoly> = consts.into_iter().map(RatPoly::constant).collect();
            let valid = |b: usize| {
                base == SemidomainDescriptor::Integers && b.count_ones() == 1
                    || base == SemidomainDescriptor::N0 && nonneg(&prods[b]) && !block_splits(b, &prods, &|_, g, h| nonneg(g) && nonneg(h))
            };
            let parts = if n == 0 { vec![vec![]] } else { block_partitions(full, &valid) };
            for part in parts {
                let mut atoms = const_atoms.clone();
                atoms.extend(part.iter().map(|&b| prods[b].clone()));
                listed.push((sign.clone(), atoms));
            }
        }
    }
    let mut factorizations = Vec::new();
    let mut cert_cache: HashMap<Vec<Rational>, PolyAtomCertificate> = HashMap::new();
    let mut complete = true;
    for (u, mut atoms) in listed {
        atoms.sort_by(canonical_cmp);
        let key: Vec<(usize, Vec<Rational>)> = atoms.iter().map(|a| (a.coeffs().len(), a.coeffs().to_vec())).collect();
        if !results.insert(key) {
            continue;
        }
        if factorizations.len() >= max_count {
            complete = false;
            break;
        }
        let mut sp = Vec::new();
        let mut certs = Vec::new();
        for a in atoms {
            let p = SemiPoly::raw(base, a);
            let cert = match cert_cache.get(p.poly().coeffs()) {
                Some(c) => c.clone(),
                None => match is_atom_poly(&p, budget)? {
                    PolyAtomVerdict::Atom(c) => {
                        cert_cache.insert(p.poly().coeffs().to_vec(), c.clone());
                        c
                    }
                    v => return Err(Error::InvalidInput(format!("recombined factor {p} is not an atom: {v:?}"))),
                },
            };
            sp.push(p);
            certs.push(cert);
        }
        factorizations.push(PolyFactorization { unit: u, atoms: sp, certificates: certs });
    }
    factorizations.sort_by(|a, b| {
        let ka: Vec<&[Rational]> = a.atoms.iter().map(|p| p.poly().coeffs()).collect();
        let kb: Vec<&[Rational]> = b.atoms.iter().map(|p| p.poly().coeffs()).collect();
        ka.len().cmp(&kb.len()).then(ka.cmp(&kb))
    });
    Ok(PolyFactorizations { factorizations, complete })
}
