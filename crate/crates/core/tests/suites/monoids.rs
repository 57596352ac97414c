use num_traits::{One, Zero};
use proptest::prelude::*;

use subatomica_core::exact::{int, rat};
use subatomica_core::monoids::reciprocal::in_prime_reciprocal;
use subatomica_core::monoids::{MonoidDescriptor, MonoidElement, Obstruction};
use subatomica_core::Rational;

use crate::common::{check, in_p_oracle, maa_scan, random_maa, rng, Prop, PropResult};

pub const PROPS: &[Prop] = &[
    Prop { name: "divisibility matches membership of the difference", run: divides_is_membership },
    Prop { name: "closed-form atoms agree with bounded split search", run: atom_soundness },
    Prop { name: "factorizations sum to their input and consist of atoms", run: factorization_round_trip },
    Prop { name: "gcd sets are contained in mcd sets", run: gcd_within_mcd },
    Prop { name: "dyadic and lexicographic cone monoids are valuation monoids", run: valuation_monoid_law },
    Prop { name: "1/8 has a certified empty factorization set", run: eighth_certified_empty },
    Prop { name: "prime reciprocal membership agrees with brute force", run: reciprocal_membership },
    Prop { name: "canonical decompositions agree with an exhaustive scan", run: canonical_decomposition_scan },
];

fn value_monoids() -> Vec<MonoidDescriptor> {
    vec![
        MonoidDescriptor::numerical(&[2, 3]).unwrap(),
        MonoidDescriptor::numerical(&[3, 5, 7]).unwrap(),
        MonoidDescriptor::puiseux(vec![rat(1, 2), rat(2, 3)]).unwrap(),
        MonoidDescriptor::PrimeReciprocal,
        MonoidDescriptor::PrimeReciprocalPlusQge1,
        MonoidDescriptor::AlmostAtomicExample,
        MonoidDescriptor::Dyadic,
    ]
}

fn monoid() -> impl Strategy<Value = MonoidDescriptor> {
    prop::sample::select(value_monoids())
}

fn grid_value() -> impl Strategy<Value = Rational> {
    (0i64..=90, 1i64..=30).prop_map(|(n, d)| rat(n, d))
}

fn v(q: Rational) -> MonoidElement {
    MonoidElement::Value(q)
}

fn member(m: &MonoidDescriptor, q: &Rational) -> bool {
    m.contains(&v(q.clone())).unwrap()
}

fn divides_is_membership() -> Result<(), String> {
    check(256, (monoid(), grid_value(), grid_value()), |(m, b, c)| -> PropResult {
        prop_assume!(member(&m, &b) && member(&m, &c));
        prop_assert_eq!(m.divides(&v(b.clone()), &v(c.clone())).unwrap(), member(&m, &(&c - &b)));
        Ok(())
    })?;
    let pair = (-6i64..=6, 0i64..=3).prop_filter("in cone", |&(b, c)| c > 0 || b >= 0);
    check(128, (pair.clone(), pair), |((b1, c1), (b2, c2))| -> PropResult {
        let m = MonoidDescriptor::LexCone;
        let diff = MonoidElement::Pair(b2 - b1, c2 - c1);
        prop_assert_eq!(m.divides(&MonoidElement::Pair(b1, c1), &MonoidElement::Pair(b2, c2)).unwrap(), m.contains(&diff).unwrap());
        Ok(())
    })
}

// A split `q = u + v` with `u` on the grid of denominators up to 60.
fn grid_split(m: &MonoidDescriptor, q: &Rational) -> Option<Rational> {
    (1..=60i64)
        .flat_map(|d| (1..).map(move |k| rat(k, d)).take_while(|u| u < q).collect::<Vec<_>>())
        .find(|u| member(m, u) && member(m, &(q - u)))
}

fn atom_soundness() -> Result<(), String> {
    let kinds = prop::sample::select(vec![
        MonoidDescriptor::numerical(&[3, 5, 7]).unwrap(),
        MonoidDescriptor::puiseux(vec![rat(1, 2), rat(2, 3)]).unwrap(),
        MonoidDescriptor::PrimeReciprocal,
        MonoidDescriptor::PrimeReciprocalPlusQge1,
    ]);
    let q = (1i64..=60, 1i64..=30).prop_map(|(n, d)| rat(n, d));
    check(160, (kinds, q), |(m, q)| -> PropResult {
        prop_assume!(member(&m, &q));
        let atom = m.is_atom(&v(q.clone())).unwrap();
        prop_assert_eq!(atom, grid_split(&m, &q).is_none(), "{} in {}", q, m.name());
        match m.nontrivial_split(&v(q.clone())).unwrap() {
            None => prop_assert!(atom),
            Some((a, b)) => {
                prop_assert!(!atom && !a.is_zero() && !b.is_zero());
                prop_assert!(m.contains(&a).unwrap() && m.contains(&b).unwrap());
                prop_assert_eq!(a.add(&b).unwrap(), v(q.clone()));
            }
        }
        Ok(())
    })?;
    // Atom lists below a bound match the brute-force atoms of the same grid.
    for m in [MonoidDescriptor::PrimeReciprocal, MonoidDescriptor::PrimeReciprocalPlusQge1] {
        let listed = m.atoms_up_to(30).atoms;
        let mut brute = Vec::new();
        for d in 1..=30 {
            for n in 1..=d {
                let q = rat(n, d);
                if q.denom() == &d.into() && member(&m, &q) && grid_split(&m, &q).is_none() {
                    brute.push(v(q));
                }
            }
        }
        brute.sort();
        if listed != brute {
            return Err(format!("{}: listed {listed:?}, brute force {brute:?}", m.name()));
        }
    }
    Ok(())
}

fn factorization_round_trip() -> Result<(), String> {
    check(128, (monoid(), (1i64..=40, 1i64..=24).prop_map(|(n, d)| rat(n, d))), |(m, q)| -> PropResult {
        prop_assume!(member(&m, &q));
        let e = v(q.clone());
        let set = m.factorizations(&e, 16, 40).unwrap();
        for f in &set.factorizations {
            prop_assert_eq!(f.sum(), e.clone());
            for a in &f.atoms {
                prop_assert!(m.is_atom(a).unwrap(), "{} is not an atom of {}", a, m.name());
            }
        }
        if let Some(obs) = &set.obstruction {
            prop_assert!(set.factorizations.is_empty());
            prop_assert!(m.verify_obstruction(&e, obs).unwrap());
        }
        Ok(())
    })?;
    check(64, (0i64..=8, 0i64..=3), |(b, c)| -> PropResult {
        prop_assume!(c > 0 || b > 0);
        let m = MonoidDescriptor::LexCone;
        let e = MonoidElement::Pair(b, c);
        let set = m.factorizations(&e, 4, 10).unwrap();
        prop_assert_eq!(set.factorizations.is_empty(), c > 0);
        for f in &set.factorizations {
            prop_assert_eq!(f.sum(), e.clone());
        }
        Ok(())
    })
}

fn gcd_within_mcd() -> Result<(), String> {
    let kinds = prop::sample::select(vec![
        MonoidDescriptor::numerical(&[2, 3]).unwrap(),
        MonoidDescriptor::numerical(&[3, 5, 7]).unwrap(),
        MonoidDescriptor::puiseux(vec![rat(1, 2), rat(2, 3)]).unwrap(),
        MonoidDescriptor::Dyadic,
        MonoidDescriptor::AlmostAtomicExample,
    ]);
    check(128, (kinds, prop::collection::vec(grid_value(), 2..=3)), |(m, qs)| -> PropResult {
        prop_assume!(qs.iter().all(|q| member(&m, q) && !q.is_zero()));
        let elems: Vec<MonoidElement> = qs.into_iter().map(v).collect();
        let sets = m.divisor_sets(&elems, 60).unwrap();
        for g in &sets.gcd {
            prop_assert!(sets.mcd.contains(g));
        }
        if !sets.gcd.is_empty() {
            prop_assert_eq!(sets.gcd.len(), 1);
            prop_assert_eq!(&sets.mcd, &sets.gcd);
        }
        Ok(())
    })
}

fn valuation_monoid_law() -> Result<(), String> {
    let dy = (0i64..=64, 0u32..=5).prop_map(|(n, k)| rat(n, 1 << k));
    check(128, (dy.clone(), dy), |(b, c)| -> PropResult {
        let m = MonoidDescriptor::Dyadic;
        prop_assert!(m.divides(&v(b.clone()), &v(c.clone())).unwrap() || m.divides(&v(c), &v(b)).unwrap());
        Ok(())
    })?;
    let pair = (-6i64..=6, 0i64..=3).prop_filter("in cone", |&(b, c)| c > 0 || b >= 0);
    check(128, (pair.clone(), pair), |((b1, c1), (b2, c2))| -> PropResult {
        let m = MonoidDescriptor::LexCone;
        let (x, y) = (MonoidElement::Pair(b1, c1), MonoidElement::Pair(b2, c2));
        prop_assert!(m.divides(&x, &y).unwrap() || m.divides(&y, &x).unwrap());
        Ok(())
    })
}

fn eighth_certified_empty() -> Result<(), String> {
    let m = MonoidDescriptor::AlmostAtomicExample;
    let e = v(rat(1, 8));
    let set = m.factorizations(&e, usize::MAX, 100).map_err(|e| e.to_string())?;
    match &set.obstruction {
        Some(obs @ Obstruction::Valuation { prime: 2, .. }) if set.factorizations.is_empty() && set.complete => {
            if m.verify_obstruction(&e, obs).map_err(|e| e.to_string())? {
                Ok(())
            } else {
                Err(format!("obstruction {obs} does not verify"))
            }
        }
        other => Err(format!("expected a 2-adic obstruction, got {other:?} with {} factorizations", set.factorizations.len())),
    }
}

fn reciprocal_membership() -> Result<(), String> {
    for b in 1..=30i64 {
        for a in 0..=5 * b {
            let q = rat(a, b);
            let closed = in_prime_reciprocal(&q).map_err(|e| e.to_string())?;
            if closed != in_p_oracle(&q) {
                return Err(format!("membership of {q}: closed form says {closed}"));
            }
            let mf = MonoidDescriptor::PrimeReciprocalPlusQge1.contains(&v(q.clone())).map_err(|e| e.to_string())?;
            if mf != (closed || q >= Rational::one()) {
                return Err(format!("MF membership of {q}"));
            }
        }
    }
    Ok(())
}

pub fn canonical_decomposition_scan() -> Result<(), String> {
    let m = MonoidDescriptor::AlmostAtomicExample;
    let mut r = rng(7);
    for _ in 0..100 {
        let q = random_maa(&mut r);
        let got = m.canonical_decompositions(&q).map_err(|e| e.to_string())?;
        let scan = maa_scan(&q);
        let got_pairs: Vec<_> = got.iter().map(|d| (d.dyadic_summand.clone(), d.pairs.clone())).collect();
        if got_pairs != scan || got.is_empty() {
            return Err(format!("{q}: {} decompositions, scan found {}", got.len(), scan.len()));
        }
        if got.iter().any(|d| d.value() != q) {
            return Err(format!("{q}: a decomposition does not sum back"));
        }
        let best = scan.iter().map(|s| s.0.clone()).max().unwrap();
        let gd = m.greatest_divisor_in_dyadic(&q).map_err(|e| e.to_string())?;
        if gd != best {
            return Err(format!("{q}: greatest dyadic divisor {gd}, scan maximum {best}"));
        }
    }
    // Non-members have none.
    for q in [rat(1, 3), rat(1, 25), int(1) / int(9)] {
        if !m.canonical_decompositions(&q).map_err(|e| e.to_string())?.is_empty() {
            return Err(format!("{q} should have no canonical decomposition"));
        }
    }
    Ok(())
}
