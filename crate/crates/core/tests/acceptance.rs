//! One check per acceptance criterion, each printed as a PASS/FAIL line.
//! Runs without the libtest harness; exits nonzero when any criterion fails.

mod common;
mod suites;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use subatomica_core::exact::{int, rat, QuadExt};
use subatomica_core::monoids::{almost, MonoidDescriptor, MonoidElement, Obstruction};
use subatomica_core::poly::{atom_factorizations, is_atom_poly, poly_mul, verify_poly_atom, PolyAtomVerdict, SemiPoly};
use subatomica_core::semidomains::{
    mixedring_ord_status, AtomCertificate, AtomVerdict, ExpBase, ExpSum, LexPoly, MixedPoly, OrdStatus, SemidomainDescriptor as D,
    SemidomainElement as E,
};
use subatomica_core::witness::{
    almost_atomic_witness, brute_force_oracle, furstenberg_witness, poly_grid, quasi_atomic_witness, ufm_check_small, value_range, Element,
    Structure, WitnessKind, WitnessOutcome,
};
use subatomica_core::{QuadPoly, RatPoly, Rational, SearchBudget};

use common::{rng, run_all};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn budget() -> SearchBudget {
    SearchBudget::default()
}

fn mv(q: Rational) -> MonoidElement {
    MonoidElement::Value(q)
}

fn vals(v: &[MonoidElement]) -> Vec<Rational> {
    v.iter().map(|x| x.value().cloned().unwrap()).collect()
}

// Found and re-verified.
fn verified(s: &Structure, x: &Element, out: WitnessOutcome) -> Result<WitnessKind, String> {
    match out {
        WitnessOutcome::Found(w) => {
            ensure!(w.verify(s, x, &budget()).map_err(e)?, "witness for {x} in {} does not verify", s.name());
            Ok(w.kind)
        }
        other => Err(format!("no witness for {x} in {}: {other:?}", s.name())),
    }
}

fn numerical_divisor_sets() -> Check {
    let m = MonoidDescriptor::numerical(&[2, 3]).map_err(e)?;
    let sets = m.divisor_sets(&[mv(int(5)), mv(int(6))], 100).map_err(e)?;
    ensure!(sets.gcd.is_empty(), "gcd set {:?}", sets.gcd);
    ensure!(vals(&sets.mcd) == vec![int(2), int(3)], "mcd set {:?}", sets.mcd);
    let common = sets.common.ok_or("common divisors were not enumerated")?;
    ensure!(vals(&common) == vec![int(0), int(2), int(3)], "common divisors {common:?}");
    ensure!(sets.exact, "answer should be exact");
    Ok(())
}

fn reciprocal_union() -> Check {
    let m = MonoidDescriptor::PrimeReciprocalPlusQge1;
    let atoms = m.atoms_up_to(30);
    let want: BTreeSet<Rational> = common::primes_up_to(30).into_iter().map(|p| rat(1, p as i64)).collect();
    let got: BTreeSet<Rational> = vals(&atoms.atoms).into_iter().collect();
    ensure!(got == want && atoms.complete, "atoms up to 30: {got:?}");
    for a in &atoms.atoms {
        ensure!(m.is_atom(a).map_err(e)?, "{a} is not reported as an atom");
    }
    let x = mv(rat(5, 4));
    let fs = m.factorizations(&x, 16, 100).map_err(e)?;
    ensure!(fs.factorizations.is_empty(), "5/4 has factorizations {:?}", fs.factorizations);
    match &fs.obstruction {
        Some(obs @ Obstruction::Valuation { prime: 2, .. }) => {
            ensure!(m.verify_obstruction(&x, obs).map_err(e)?, "obstruction {obs} does not verify")
        }
        other => return Err(format!("expected a 2-adic obstruction for 5/4, got {other:?}")),
    }
    let s = Structure::Monoid(m.clone());
    let mut r = rng(2);
    let mut tested = 0;
    while tested < 100 {
        let q = rat(r.gen_range(1..=200), r.gen_range(1..=50));
        if !m.contains(&mv(q.clone())).map_err(e)? {
            continue;
        }
        let x = Element::Monoid(mv(q));
        verified(&s, &x, furstenberg_witness(&s, &x, &budget()).map_err(e)?)?;
        tested += 1;
    }
    Ok(())
}

fn expsum_over_mf() -> Check {
    let d = D::ExpSum(ExpBase::MF);
    let s = Structure::Semidomain(d);
    let b = budget();
    let r = ExpSum::new([(int(0), BigInt::from(2)), (rat(1, 2), BigInt::from(1))]).map_err(e)?;
    let x = E::ExpSum(r.clone());
    match d.mult_is_atom(&x, &b).map_err(e)? {
        AtomVerdict::Atom(cert @ AtomCertificate::ExpValueBelowFour { .. }) => {
            let AtomCertificate::ExpValueBelowFour { log2_upper } = &cert else { unreachable!() };
            ensure!(*log2_upper < int(2), "log2 upper bound {log2_upper} is not below 2");
            ensure!(d.verify_atom(&x, &cert, &b).map_err(e)?, "certificate for {x} does not verify");
        }
        other => return Err(format!("2+e^(1/2): {other:?}")),
    }
    let (shift, rest) = subatomica_core::semidomains::expsum_exponent_mcd_split(ExpBase::MF, &r, &b).map_err(e)?;
    ensure!(shift.is_zero() && rest == r, "exponent split of 2+e^(1/2) is ({shift}, {rest})");

    let r = ExpSum::new([(rat(1, 2), BigInt::from(2)), (rat(3, 2), BigInt::from(3))]).map_err(e)?;
    let x = Element::Semi(E::ExpSum(r));
    let want = Element::Semi(E::ExpSum(ExpSum::monomial(BigInt::one(), rat(1, 2))));
    match verified(&s, &x, furstenberg_witness(&s, &x, &b).map_err(e)?)? {
        WitnessKind::FurstenbergAtom { atom, .. } => ensure!(atom == want, "Furstenberg atom {atom}"),
        other => return Err(format!("unexpected witness {other:?}")),
    }

    // Every support in {0, 1/2, 1, 3/2} with coefficients 1 or 2.
    let grid = [int(0), rat(1, 2), int(1), rat(3, 2)];
    for code in 1..3u32.pow(4) {
        let mut c = code;
        let mut terms = Vec::new();
        for q in &grid {
            if c % 3 > 0 {
                terms.push((q.clone(), BigInt::from(c % 3)));
            }
            c /= 3;
        }
        let r = ExpSum::new(terms).map_err(e)?;
        if r.is_one() {
            continue;
        }
        let x = E::ExpSum(r.clone());
        let rep = brute_force_oracle(&s, &Element::Semi(x.clone()), 2, &b).map_err(e)?;
        let oracle_atom = rep.factorizations.len() == 1;
        let full = r.min_exponent().is_some_and(|q| q.is_zero());
        match d.mult_is_atom(&x, &b).map_err(e)? {
            AtomVerdict::Atom(cert) => {
                ensure!(oracle_atom, "{x} certified an atom but the oracle splits it: {:?}", rep.factorizations);
                ensure!(d.verify_atom(&x, &cert, &b).map_err(e)?, "certificate for {x} does not verify");
            }
            AtomVerdict::NotAtom(u, v) => {
                ensure!(d.mult(&u, &v).map_err(e)? == x, "{u} * {v} is not {x}");
                ensure!(!d.is_unit(&u).map_err(e)? && !d.is_unit(&v).map_err(e)?, "{x} split off a unit");
                ensure!(!full || !oracle_atom, "{x} split, yet the oracle finds no divisor");
            }
            AtomVerdict::Unknown(why) => ensure!(!full, "{x} left undecided with exponent 0 in the support: {why}"),
        }
    }
    Ok(())
}

// Proper splits of `q` on the lattice with denominator `den`.
fn lattice_split(m: &MonoidDescriptor, q: &Rational, den: i64) -> Result<Option<Rational>, String> {
    let top = (q * int(den)).ceil().to_integer();
    let mut k = BigInt::one();
    while k < top {
        let x = Rational::new(k.clone(), BigInt::from(den));
        if &x < q && m.contains(&mv(x.clone())).map_err(e)? && m.contains(&mv(q - &x)).map_err(e)? {
            return Ok(Some(x));
        }
        k += 1;
    }
    Ok(None)
}

fn almost_atomic_monoid() -> Check {
    let m = MonoidDescriptor::AlmostAtomicExample;
    let ps: Vec<u64> = (1..=4).map(almost::p).collect();
    ensure!(ps == vec![5, 7, 11, 13], "first primes {ps:?}");
    let mut want = BTreeSet::new();
    for n in 1..=4 {
        want.insert(almost::a(n));
        want.insert(almost::a_prime(n));
    }
    let got: BTreeSet<Rational> =
        vals(&m.atoms_up_to(832).atoms).into_iter().filter(|q| almost::atom_index(q).is_some_and(|(n, _)| n <= 4)).collect();
    ensure!(got == want, "atoms with n ≤ 4: {got:?}");
    for a in &want {
        ensure!(m.is_atom(&mv(a.clone())).map_err(e)?, "{a} is not reported as an atom");
        let den = (a.denom() * BigInt::from(10)).to_string().parse::<i64>().unwrap();
        if let Some(x) = lattice_split(&m, a, den).map_err(e)? {
            return Err(format!("{a} = {x} + {}", a - &x));
        }
    }
    let x = mv(rat(1, 8));
    let fs = m.factorizations(&x, 16, 100).map_err(e)?;
    let obs = fs.obstruction.ok_or("1/8 carries no obstruction")?;
    ensure!(fs.factorizations.is_empty() && m.verify_obstruction(&x, &obs).map_err(e)?, "obstruction {obs} for 1/8 does not verify");

    let s = Structure::Monoid(m.clone());
    let x = Element::Monoid(x);
    match verified(&s, &x, almost_atomic_witness(&s, &x, &budget()).map_err(e)?)? {
        WitnessKind::AlmostAtomic { added_atoms, factorization } => {
            ensure!(added_atoms == vec![Element::Monoid(mv(rat(1, 5))); 5], "added atoms {added_atoms:?}");
            let mut want = vec![Element::Monoid(mv(almost::a(2))); 2];
            want.extend(vec![Element::Monoid(mv(almost::a_prime(2))); 2]);
            ensure!(factorization.atoms == want, "factorization {:?}", factorization.atoms);
            ensure!(factorization.value(&s).map_err(e)? == Element::Monoid(mv(rat(9, 8))), "factorization does not sum to 9/8");
        }
        other => return Err(format!("unexpected witness {other:?}")),
    }
    suites::monoids::canonical_decomposition_scan()
}

fn qge1_polynomials() -> Check {
    let b = budget();
    let qx = |c: Vec<Rational>| SemiPoly::new(D::QGe1, RatPoly::new(c)).map_err(e);
    let certified = |f: &SemiPoly| -> Check {
        match is_atom_poly(f, &b).map_err(e)? {
            PolyAtomVerdict::Atom(cert) => ensure!(verify_poly_atom(f, &cert, &b).map_err(e)?, "certificate for {f} does not verify"),
            other => return Err(format!("{f}: {other:?}")),
        }
        Ok(())
    };
    let mut r = rng(5);
    for _ in 0..50 {
        let c = int(1) + rat(r.gen_range(1..=20), r.gen_range(1..=12));
        let one = int(1);
        let a = qx(vec![one.clone(), &c + one.clone() / &c, one.clone()])?;
        let l1 = qx(vec![one.clone(), c.clone()])?;
        let l2 = qx(vec![c.clone(), one.clone()])?;
        let lhs = poly_mul(&SemiPoly::constant(D::QGe1, c.clone()).map_err(e)?, &a).map_err(e)?;
        ensure!(lhs == poly_mul(&l1, &l2).map_err(e)?, "c·A ≠ (cx+1)(x+c) at c = {c}");
        for f in [&a, &l1, &l2] {
            certified(f)?;
        }
    }
    // c = 1: only the identity.
    let a = qx(vec![int(1), int(2), int(1)])?;
    let l = qx(vec![int(1), int(1)])?;
    ensure!(a == poly_mul(&l, &l).map_err(e)?, "1+2x+x^2 ≠ (1+x)^2");

    let s = Structure::Poly(D::QGe1);
    let coeff =
        |r: &mut rand_chacha::ChaCha8Rng| if r.gen_bool(0.25) { int(0) } else { int(1) + rat(r.gen_range(0..=6), r.gen_range(1..=3)) };
    let mut tested = 0;
    while tested < 50 {
        let deg = r.gen_range(0..=3);
        let f = qx((0..=deg).map(|_| coeff(&mut r)).collect())?;
        if f.is_zero() || f.is_unit() {
            continue;
        }
        let x = Element::Poly(f);
        verified(&s, &x, almost_atomic_witness(&s, &x, &b).map_err(e)?)?;
        tested += 1;
    }
    Ok(())
}

fn n0_polynomials() -> Check {
    let b = budget();
    let n0 = |v: &[i64]| SemiPoly::from_ints(D::N0, v).map_err(e);
    let f = n0(&[1, 1, 1, 1, 1, 1])?;
    let got = atom_factorizations(&f, usize::MAX, &b).map_err(e)?;
    let key = |atoms: &[SemiPoly]| -> BTreeSet<String> { atoms.iter().map(|a| a.to_string()).collect() };
    let got: BTreeSet<BTreeSet<String>> = got.factorizations.iter().map(|fa| key(&fa.atoms)).collect();
    let want: BTreeSet<BTreeSet<String>> =
        [key(&[n0(&[1, 1])?, n0(&[1, 0, 1, 0, 1])?]), key(&[n0(&[1, 1, 1])?, n0(&[1, 0, 0, 1])?])].into();
    ensure!(got == want, "factorizations of 1+x+…+x^5: {got:?}");
    for g in [n0(&[1, 0, 1, 0, 1])?, n0(&[1, 0, 0, 1])?] {
        match is_atom_poly(&g, &b).map_err(e)? {
            PolyAtomVerdict::Atom(cert) => ensure!(verify_poly_atom(&g, &cert, &b).map_err(e)?, "certificate for {g} does not verify"),
            other => return Err(format!("{g}: {other:?}")),
        }
    }
    suites::poly::atom_soundness()?;
    suites::poly::factorization_agreement()
}

fn mixed_ring() -> Check {
    let d = D::MixedRing { quad_d: 2 };
    let s = Structure::Semidomain(d);
    let b = budget();
    let mut r = rng(7);
    for _ in 0..100 {
        let mut coeffs = vec![QuadExt::rational(int(r.gen_range(0..=3))), QuadExt::rational(int(r.gen_range(0..=3)))];
        for _ in 0..r.gen_range(0..=2) {
            coeffs.push(QuadExt::new(rat(r.gen_range(-3..=3), r.gen_range(1..=2)), int(r.gen_range(-2..=2)), 2));
        }
        let f = MixedPoly::new(QuadPoly::new(coeffs), 2).map_err(e)?;
        if f.is_zero() || f.is_one() {
            continue;
        }
        let m = f.poly().ord().unwrap();
        let cm = f.poly().coeff(m);
        let natural = cm.as_rational().is_some_and(|q| q.is_integer() && !q.is_negative());
        let x = E::Mixed(f.clone());
        match mixedring_ord_status(&f).map_err(e)? {
            OrdStatus::FactorsIntoAtoms => {
                ensure!(m < 2 || natural, "{f} reported as factoring with c_m = {cm}");
                let fac = d.factor_by_splitting(&x, 32, &b).map_err(e)?.ok_or(format!("{f} does not factor"))?;
                ensure!(d.product(&fac).map_err(e)? == x, "factorization of {f} does not multiply back");
            }
            OrdStatus::NeverFactors(c) => {
                ensure!(m >= 2 && !natural && c == cm, "{f} reported as never factoring");
                if !c.is_rational() {
                    let out = almost_atomic_witness(&s, &Element::Semi(x.clone()), &b).map_err(e)?;
                    ensure!(matches!(out, WitnessOutcome::ProvablyNoWitness { .. }), "{f}: {out:?}");
                }
            }
        }
    }
    let x = Element::Semi(E::Mixed(MixedPoly::new(QuadPoly::monomial(QuadExt::new(int(0), int(1), 2), 2), 2).map_err(e)?));
    match verified(&s, &x, quasi_atomic_witness(&s, &x, &b).map_err(e)?)? {
        WitnessKind::QuasiAtomic { multiplier, factorization } => {
            ensure!(multiplier.to_string() == "1/2*sqrt2*x^2", "multiplier {multiplier}");
            let atoms: Vec<String> = factorization.atoms.iter().map(|a| a.to_string()).collect();
            ensure!(atoms == vec!["x"; 4], "atoms {atoms:?}");
        }
        other => return Err(format!("unexpected witness {other:?}")),
    }
    Ok(())
}

fn lex_cone() -> Check {
    let m = MonoidDescriptor::LexCone;
    let atoms = m.atoms_up_to(100).atoms;
    ensure!(atoms == vec![MonoidElement::Pair(1, 0)], "atoms {atoms:?}");
    for (b, c) in [(0, 1), (-3, 2), (4, 1)] {
        let x = MonoidElement::Pair(b, c);
        let fs = m.factorizations(&x, 16, 100).map_err(e)?;
        ensure!(fs.factorizations.is_empty(), "({b},{c}) has factorizations");
        match fs.obstruction {
            Some(obs @ Obstruction::SecondCoordinate { .. }) => {
                ensure!(m.verify_obstruction(&x, &obs).map_err(e)?, "obstruction for ({b},{c}) does not verify")
            }
            other => return Err(format!("({b},{c}): {other:?}")),
        }
    }
    // (0,1) is not k·(1,0) for any k.
    ensure!((0..=1000).all(|k| MonoidElement::Pair(k, 0) != MonoidElement::Pair(0, 1)), "(0,1) is a multiple of (1,0)");

    let s = Structure::Semidomain(D::LexConeAlgebra);
    let mut r = rng(8);
    let mut tested = 0;
    while tested < 50 {
        let n = r.gen_range(1..=4);
        let mut terms = Vec::new();
        for _ in 0..n {
            let c = r.gen_range(0..=3);
            let b = if c == 0 { r.gen_range(0..=5) } else { r.gen_range(-5..=5) };
            terms.push(((b, c), rat(r.gen_range(1..=6), r.gen_range(1..=3))));
        }
        let f = LexPoly::new(terms).map_err(e)?;
        if f.is_zero() || f.is_unit() {
            continue;
        }
        let x = Element::Semi(E::Lex(f));
        verified(&s, &x, furstenberg_witness(&s, &x, &budget()).map_err(e)?)?;
        tested += 1;
    }
    Ok(())
}

fn ufm_check() -> Check {
    let b = budget();
    let s = Structure::Semidomain(D::N0);
    let r = ufm_check_small(&s, &value_range(&s, 2, 200), &b).map_err(e)?;
    ensure!(r.hypothesis_holds() && r.conclusion_holds() && r.consistent(), "(ℕ,×): {r:?}");

    let s = Structure::Monoid(MonoidDescriptor::numerical(&[2, 3]).map_err(e)?);
    let r = ufm_check_small(&s, &value_range(&s, 2, 30), &b).map_err(e)?;
    let el = |n| Element::Monoid(mv(int(n)));
    ensure!(r.gcd_failure == Some((el(5), el(6))), "gcd failure {:?}", r.gcd_failure);
    ensure!(r.non_unique.first().is_some_and(|n| n.0 == el(6)), "first non-unique {:?}", r.non_unique.first());
    ensure!(r.consistent(), "numerical monoid: {r:?}");

    let s = Structure::Poly(D::N0);
    let r = ufm_check_small(&s, &poly_grid(D::N0, 5, 1), &b).map_err(e)?;
    let f = Element::Poly(SemiPoly::from_ints(D::N0, &[1, 1, 1, 1, 1, 1]).map_err(e)?);
    ensure!(r.non_unique.iter().any(|n| n.0 == f), "1+…+x^5 not listed as non-unique");
    ensure!(!r.hypothesis_holds() && r.consistent(), "N0[x]: {r:?}");
    Ok(())
}

fn property_suites() -> Check {
    let mut failed = Vec::new();
    for (name, props) in suites::all() {
        for (p, msg) in run_all(props) {
            failed.push(format!("[{name}] {p}: {msg}"));
        }
    }
    ensure!(failed.is_empty(), "{}", failed.join("\n"));
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("numerical monoid gcd and mcd sets", numerical_divisor_sets),
        ("prime reciprocals with Q>=1: atoms, obstruction, Furstenberg", reciprocal_union),
        ("exponential sums over MF: atoms, Furstenberg, oracle", expsum_over_mf),
        ("almost atomic monoid: atoms, 1/8, canonical decompositions", almost_atomic_monoid),
        ("Q>=1[x]: non-unique atom factorizations, almost atomic", qge1_polynomials),
        ("N0[x]: factorizations of 1+...+x^5 and atom oracle", n0_polynomials),
        ("mixed ring: ord dichotomy and quasi-atomic multiplier", mixed_ring),
        ("lexicographic cone: atoms, obstruction, Furstenberg", lex_cone),
        ("small unique-factorization checks", ufm_check),
        ("property suites", property_suites),
    ];
    let mut all_ok = true;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or("panic".into()))
        });
        let verdict = if result.is_ok() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {title} ({:.2?})", i + 1, start.elapsed());
        if let Err(msg) = result {
            all_ok = false;
            for line in msg.lines() {
                println!("    {line}");
            }
        }
    }
    if !all_ok {
        std::process::exit(1);
    }
}
