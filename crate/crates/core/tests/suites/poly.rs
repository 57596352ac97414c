use std::collections::{BTreeSet, HashMap};

use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

use subatomica_core::exact::{int, rat};
use subatomica_core::poly::{
    atom_factorizations, coefficient_mcd, exact_divide, is_atom_poly, poly_add, poly_mul, verify_poly_atom, PolyAtomVerdict, SemiPoly,
};
use subatomica_core::semidomains::SemidomainDescriptor as D;
use subatomica_core::{RatPoly, Rational, SearchBudget};

use crate::common::{check, imul, n0_factorizations, n0_grid, n0_is_atom, trim, Prop, PropResult};

pub const PROPS: &[Prop] = &[
    Prop { name: "polynomial semiring laws with degree and ord additivity", run: ring_laws },
    Prop { name: "exact_divide round-trips and agrees with coefficient search", run: divide_round_trip },
    Prop { name: "atom verdicts re-verify and match exhaustive search", run: atom_soundness },
    Prop { name: "atom factorizations round-trip and match brute force", run: factorization_agreement },
    Prop { name: "x is prime", run: x_is_prime },
    Prop { name: "content splitting", run: content_splitting },
];

fn coeff(base: D) -> BoxedStrategy<Rational> {
    match base {
        D::N0 => (0i64..=4).prop_map(int).boxed(),
        D::Integers => (-4i64..=4).prop_map(int).boxed(),
        _ => prop_oneof![Just(int(0)), (1i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n + d, d))].boxed(),
    }
}

pub fn semipoly(base: D, max_deg: usize) -> impl Strategy<Value = SemiPoly> {
    prop::collection::vec(coeff(base), 0..=max_deg + 1).prop_map(move |c| SemiPoly::new(base, RatPoly::new(c)).unwrap())
}

fn base() -> impl Strategy<Value = D> {
    prop::sample::select(vec![D::N0, D::Integers, D::QGe1])
}

fn ring_laws() -> Result<(), String> {
    let s = base().prop_flat_map(|b| (semipoly(b, 3), semipoly(b, 3), semipoly(b, 3)));
    check(256, s, |(f, g, h)| -> PropResult {
        let mul = |a: &SemiPoly, b: &SemiPoly| poly_mul(a, b).unwrap();
        let add = |a: &SemiPoly, b: &SemiPoly| poly_add(a, b).unwrap();
        prop_assert_eq!(mul(&mul(&f, &g), &h), mul(&f, &mul(&g, &h)));
        prop_assert_eq!(mul(&f, &add(&g, &h)), add(&mul(&f, &g), &mul(&f, &h)));
        prop_assert_eq!(mul(&f, &g), mul(&g, &f));
        if !f.is_zero() && !g.is_zero() {
            let fg = mul(&f, &g);
            prop_assert_eq!(fg.degree().unwrap(), f.degree().unwrap() + g.degree().unwrap());
            prop_assert_eq!(fg.ord().unwrap(), f.ord().unwrap() + g.ord().unwrap());
        }
        Ok(())
    })
}

fn ints(f: &SemiPoly) -> Vec<i64> {
    trim(f.poly().coeffs().iter().map(|c| c.to_integer().to_i64().unwrap()).collect())
}

fn n0(v: &[i64]) -> SemiPoly {
    SemiPoly::from_ints(D::N0, v).unwrap()
}

fn divide_round_trip() -> Result<(), String> {
    check(256, (semipoly(D::N0, 4), semipoly(D::N0, 2)), |(f, g)| -> PropResult {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = poly_mul(&f, &g).unwrap();
        prop_assert_eq!(exact_divide(&fg, &g).unwrap(), Some(f.clone()));
        match exact_divide(&f, &g).unwrap() {
            Some(h) => prop_assert_eq!(poly_mul(&g, &h).unwrap(), f),
            None => {
                // No nonnegative quotient of degree deg f − deg g with coefficients bounded by f's.
                let (fi, gi) = (ints(&f), ints(&g));
                prop_assume!(fi.len() >= gi.len());
                let max = *fi.iter().max().unwrap();
                for h in n0_grid(fi.len() - gi.len(), max) {
                    prop_assert!(imul(&gi, &h) != fi);
                }
            }
        }
        Ok(())
    })
}

pub fn atom_soundness() -> Result<(), String> {
    let budget = SearchBudget::default();
    // Every N0 polynomial of degree ≤ 4 with coefficients ≤ 3 against exhaustive divisor search.
    for v in n0_grid(4, 3) {
        let f = n0(&v);
        if f.is_unit() {
            continue;
        }
        let verdict = is_atom_poly(&f, &budget).map_err(|e| e.to_string())?;
        let brute = n0_is_atom(&v);
        match &verdict {
            PolyAtomVerdict::Atom(cert) if brute => {
                if !verify_poly_atom(&f, cert, &budget).map_err(|e| e.to_string())? {
                    return Err(format!("certificate for {f} does not verify"));
                }
            }
            PolyAtomVerdict::NotAtom(a, b) if !brute => {
                if poly_mul(a, b).map_err(|e| e.to_string())? != f || a.is_unit() || b.is_unit() {
                    return Err(format!("bad split of {f}: {a} * {b}"));
                }
            }
            other => return Err(format!("{f}: verdict {other:?}, brute force atom = {brute}")),
        }
    }
    // Over the other bases the verdicts still have to check out.
    let s = prop::sample::select(vec![D::Integers, D::QGe1]).prop_flat_map(|b| semipoly(b, 3));
    check(128, s, |f| -> PropResult {
        prop_assume!(!f.is_zero() && !f.is_unit());
        match is_atom_poly(&f, &budget).unwrap() {
            PolyAtomVerdict::Atom(cert) => prop_assert!(verify_poly_atom(&f, &cert, &budget).unwrap()),
            PolyAtomVerdict::NotAtom(a, b) => {
                prop_assert_eq!(poly_mul(&a, &b).unwrap(), f);
                prop_assert!(!a.is_unit() && !b.is_unit());
            }
            PolyAtomVerdict::Unknown(_) => {}
        }
        Ok(())
    })
}

pub fn factorization_agreement() -> Result<(), String> {
    let budget = SearchBudget::default();
    let mut memo = HashMap::new();
    for v in n0_grid(5, 3) {
        let f = n0(&v);
        if f.is_unit() {
            continue;
        }
        let got = atom_factorizations(&f, usize::MAX, &budget).map_err(|e| e.to_string())?;
        let mut keys = BTreeSet::new();
        for fac in &got.factorizations {
            if fac.product() != *f.poly() || !fac.unit.is_one() {
                return Err(format!("a factorization of {f} does not multiply back"));
            }
            let mut k: Vec<Vec<i64>> = fac.atoms.iter().map(ints).collect();
            k.sort();
            if !keys.insert(k) {
                return Err(format!("{f} has a repeated factorization"));
            }
        }
        if got.complete && keys != n0_factorizations(&v, &mut memo) {
            return Err(format!("{f}: {keys:?} vs brute force {:?}", n0_factorizations(&v, &mut memo)));
        }
        if !got.complete {
            return Err(format!("{f}: enumeration over N0 should be complete"));
        }
    }
    Ok(())
}

fn x_is_prime() -> Result<(), String> {
    let s = base().prop_flat_map(|b| (semipoly(b, 3), semipoly(b, 3)));
    check(256, s, |(f, g)| -> PropResult {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let x = SemiPoly::x(f.base());
        let fg = poly_mul(&f, &g).unwrap();
        if exact_divide(&fg, &x).unwrap().is_some() {
            prop_assert!(exact_divide(&f, &x).unwrap().is_some() || exact_divide(&g, &x).unwrap().is_some());
        }
        Ok(())
    })
}

fn content_splitting() -> Result<(), String> {
    let s = prop::sample::select(vec![D::N0, D::QGe1]).prop_flat_map(|b| semipoly(b, 3));
    check(256, s, |f| -> PropResult {
        prop_assume!(!f.is_zero());
        for c in coefficient_mcd(&f).unwrap() {
            let cp = SemiPoly::constant(f.base(), c).unwrap();
            let rest = exact_divide(&f, &cp).unwrap();
            prop_assert!(rest.is_some(), "{} does not divide {}", cp, f);
            let rest = rest.unwrap();
            prop_assert_eq!(poly_mul(&cp, &rest).unwrap(), f.clone());
            prop_assert_eq!(coefficient_mcd(&rest).unwrap(), vec![Rational::one()]);
        }
        Ok(())
    })
}
