use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use subatomica_core::exact::{factor_integer, int, rat};
use subatomica_core::monoids::{MonoidDescriptor, MonoidElement};
use subatomica_core::poly::{atom_factorizations, laurent_atom_transfer, LaurentPoly, SemiPoly};
use subatomica_core::semidomains::{mixedring_ord_status, ExpBase, ExpSum, OrdStatus, SemidomainDescriptor as D, SemidomainElement as E};
use subatomica_core::witness::{
    almost_atomic_witness, brute_force_oracle, furstenberg_witness, quasi_atomic_witness, Element, Structure, WitnessKind, WitnessOutcome,
};
use subatomica_core::SearchBudget;

use crate::common::{check, Prop, PropResult};
use crate::suites::poly::semipoly;
use crate::suites::semidomains::{lex_poly, mixed_poly};

pub const PROPS: &[Prop] = &[
    Prop { name: "found witnesses re-verify from their own data", run: witnesses_verify },
    Prop { name: "every nonunit of N0[x] has a Furstenberg witness", run: n0_poly_furstenberg },
    Prop { name: "witnesses transfer between S[x] and S[x^±1]", run: laurent_coherence },
    Prop { name: "mixed ring elements either factor or need a multiplier", run: mixed_dichotomy },
    Prop { name: "closed-form factorizations agree with the brute-force oracle", run: oracle_agreement },
];

fn budget() -> SearchBudget {
    SearchBudget::default()
}

/// A structure with a strategy for its nonzero nonunits.
fn structure() -> impl Strategy<Value = (Structure, BoxedStrategy<Element>)> {
    let mono = |m: MonoidDescriptor, num: i64, den: i64| {
        let mm = m.clone();
        (
            Structure::Monoid(m),
            (1..=num, 1..=den)
                .prop_map(|(n, d)| Element::Monoid(MonoidElement::Value(rat(n, d))))
                .prop_filter("member", move |e| {
                    let Element::Monoid(x) = e else { unreachable!() };
                    mm.contains(x).unwrap()
                })
                .boxed(),
        )
    };
    let poly = |b: D| {
        (Structure::Poly(b), semipoly(b, 3).prop_filter("nonunit", |f| !f.is_zero() && !f.is_unit()).prop_map(Element::Poly).boxed())
    };
    let expsum = (prop::collection::vec((prop::sample::select(vec![int(0), rat(1, 2), rat(1, 3), int(1), rat(3, 2)]), 1i64..=3), 1..=3))
        .prop_map(|t| Element::Semi(E::ExpSum(ExpSum::new(t.into_iter().map(|(q, c)| (q, BigInt::from(c)))).unwrap())))
        .prop_filter("nonunit", |e| !matches!(e, Element::Semi(E::ExpSum(r)) if r.is_one()))
        .boxed();
    prop_oneof![
        Just(mono(MonoidDescriptor::numerical(&[2, 3]).unwrap(), 30, 1)),
        Just(mono(MonoidDescriptor::PrimeReciprocalPlusQge1, 40, 12)),
        Just(mono(MonoidDescriptor::AlmostAtomicExample, 20, 40)),
        Just(poly(D::N0)),
        Just(poly(D::Integers)),
        Just(poly(D::QGe1)),
        Just((Structure::Semidomain(D::ExpSum(ExpBase::MF)), expsum)),
        Just((
            Structure::Semidomain(D::MixedRing { quad_d: 2 }),
            mixed_poly().prop_filter("nonunit", |f| !f.is_zero() && !f.is_one()).prop_map(|f| Element::Semi(E::Mixed(f))).boxed()
        )),
        Just((
            Structure::Semidomain(D::LexConeAlgebra),
            lex_poly().prop_filter("nonunit", |f| !f.is_unit()).prop_map(|f| Element::Semi(E::Lex(f))).boxed()
        )),
    ]
}

fn witnesses_verify() -> Result<(), String> {
    let b = budget();
    let s = structure().prop_flat_map(|(s, el)| (Just(s), el));
    check(96, s, |(s, e)| -> PropResult {
        for out in [furstenberg_witness(&s, &e, &b), almost_atomic_witness(&s, &e, &b), quasi_atomic_witness(&s, &e, &b)] {
            if let WitnessOutcome::Found(w) = out.unwrap() {
                prop_assert!(w.verify(&s, &e, &b).unwrap(), "witness for {} in {} does not verify", e, s.name());
            }
        }
        Ok(())
    })
}

fn n0_poly_furstenberg() -> Result<(), String> {
    let b = budget();
    let s = Structure::Poly(D::N0);
    let coeffs = prop::collection::vec(0i64..=5, 1..=6);
    check(200, coeffs, |v| -> PropResult {
        let f = SemiPoly::from_ints(D::N0, &v).unwrap();
        prop_assume!(!f.is_zero() && !f.is_unit());
        let e = Element::Poly(f);
        match furstenberg_witness(&s, &e, &b).unwrap() {
            WitnessOutcome::Found(w) => prop_assert!(w.verify(&s, &e, &b).unwrap()),
            other => prop_assert!(false, "no witness for {}: {:?}", e, other),
        }
        Ok(())
    })
}

// Atom bodies with the power of x stripped, as a sorted multiset.
fn bodies(atoms: &[Element]) -> Vec<String> {
    let mut v: Vec<String> = atoms
        .iter()
        .map(|a| match a {
            Element::Poly(p) => LaurentPoly::from(p.clone()).body().to_string(),
            Element::Laurent(l) => l.body().to_string(),
            other => other.to_string(),
        })
        .collect();
    v.sort();
    v
}

fn laurent_coherence() -> Result<(), String> {
    let b = budget();
    let s = prop::sample::select(vec![D::N0, D::QGe1]).prop_flat_map(|base| (Just(base), semipoly(base, 3), -3i64..=3));
    check(96, s, |(base, f, k)| -> PropResult {
        prop_assume!(f.ord() == Some(0) && !f.is_unit());
        let (ps, ls) = (Structure::Poly(base), Structure::Laurent(base));
        let pe = Element::Poly(f.clone());
        let le = Element::Laurent(LaurentPoly::new(k, f.clone()));
        let (pw, lw) = (almost_atomic_witness(&ps, &pe, &b).unwrap(), almost_atomic_witness(&ls, &le, &b).unwrap());
        match (pw.witness(), lw.witness()) {
            (Some(p), Some(l)) => {
                prop_assert!(l.verify(&ls, &le, &b).unwrap());
                let (
                    WitnessKind::AlmostAtomic { factorization: pf, added_atoms: pa },
                    WitnessKind::AlmostAtomic { factorization: lf, added_atoms: la },
                ) = (&p.kind, &l.kind)
                else {
                    unreachable!()
                };
                prop_assert_eq!(bodies(&pf.atoms), bodies(&lf.atoms));
                prop_assert_eq!(bodies(pa), bodies(la));
                // And back: each atom of the factorization has ord 0 and transfers.
                for a in &pf.atoms {
                    let Element::Poly(a) = a else { unreachable!() };
                    prop_assert!(laurent_atom_transfer(a, &b).unwrap().is_some(), "{} does not transfer", a);
                }
            }
            (None, None) => {}
            (p, l) => prop_assert!(false, "S[x] found {:?}, Laurent found {:?}", p.is_some(), l.is_some()),
        }
        Ok(())
    })
}

fn mixed_dichotomy() -> Result<(), String> {
    let b = budget();
    let s = Structure::Semidomain(D::MixedRing { quad_d: 2 });
    check(96, mixed_poly(), |f| -> PropResult {
        prop_assume!(!f.is_zero() && !f.is_one());
        let e = Element::Semi(E::Mixed(f.clone()));
        match mixedring_ord_status(&f).unwrap() {
            OrdStatus::FactorsIntoAtoms => {
                let fac = s.clone();
                let Structure::Semidomain(d) = fac else { unreachable!() };
                let got = d.factor_by_splitting(&E::Mixed(f.clone()), 32, &b).unwrap();
                prop_assert!(got.is_some(), "{} should factor", f);
                prop_assert_eq!(d.product(&got.unwrap()).unwrap(), E::Mixed(f.clone()));
            }
            OrdStatus::NeverFactors(c) => {
                let almost = almost_atomic_witness(&s, &e, &b).unwrap();
                if !c.is_rational() {
                    prop_assert!(matches!(almost, WitnessOutcome::ProvablyNoWitness { .. }), "{}: {:?}", f, almost);
                }
                let quasi = quasi_atomic_witness(&s, &e, &b).unwrap();
                prop_assert!(quasi.witness().is_some_and(|w| w.verify(&s, &e, &b).unwrap()), "{}: {:?}", f, quasi);
            }
        }
        Ok(())
    })
}

fn atom_multisets(v: &[Vec<Element>]) -> BTreeSet<Vec<String>> {
    v.iter()
        .map(|f| {
            let mut k: Vec<String> = f.iter().map(|e| e.to_string()).collect();
            k.sort();
            k
        })
        .collect()
}

fn oracle_agreement() -> Result<(), String> {
    let b = budget();
    let err = |e: subatomica_core::Error| e.to_string();
    // (ℕ, ×): prime factorizations.
    let s = Structure::Semidomain(D::N0);
    for n in 2..=60u64 {
        let rep = brute_force_oracle(&s, &Element::Semi(E::Scalar(int(n as i64))), 8, &b).map_err(err)?;
        let mut want: Vec<String> = factor_integer(n).map_err(err)?.iter().map(|p| p.to_string()).collect();
        want.sort();
        let got = atom_multisets(&rep.atom_factorizations);
        if got != BTreeSet::from([want.clone()]) || !rep.complete {
            return Err(format!("{n}: oracle {got:?}, prime factors {want:?}"));
        }
    }
    // Numerical monoid ⟨2,3⟩ and ⟨3,5,7⟩.
    for gens in [&[2u64, 3][..], &[3, 5, 7]] {
        let m = MonoidDescriptor::numerical(gens).map_err(err)?;
        let s = Structure::Monoid(m.clone());
        for n in 1..=30i64 {
            let x = MonoidElement::Value(int(n));
            if !m.contains(&x).map_err(err)? {
                continue;
            }
            let rep = brute_force_oracle(&s, &Element::Monoid(x.clone()), 16, &b).map_err(err)?;
            let closed = m.factorizations(&x, usize::MAX, 100).map_err(err)?;
            let closed: Vec<Vec<Element>> =
                closed.factorizations.iter().map(|f| f.atoms.iter().cloned().map(Element::Monoid).collect()).collect();
            if atom_multisets(&rep.atom_factorizations) != atom_multisets(&closed) {
                return Err(format!("{n} in {}: oracle and closed form differ", m.name()));
            }
        }
    }
    // N0[x] of degree ≤ 3 with coefficients ≤ 2.
    let s = Structure::Poly(D::N0);
    for v in crate::common::n0_grid(3, 2) {
        let f = SemiPoly::from_ints(D::N0, &v).map_err(err)?;
        if f.is_unit() {
            continue;
        }
        let rep = brute_force_oracle(&s, &Element::Poly(f.clone()), 6, &b).map_err(err)?;
        let closed = atom_factorizations(&f, usize::MAX, &b).map_err(err)?;
        let closed: Vec<Vec<Element>> =
            closed.factorizations.iter().map(|fa| fa.atoms.iter().cloned().map(Element::Poly).collect()).collect();
        if atom_multisets(&rep.atom_factorizations) != atom_multisets(&closed) {
            return Err(format!("{f}: oracle and closed form differ"));
        }
    }
    Ok(())
}
