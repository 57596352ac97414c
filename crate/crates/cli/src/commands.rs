//! One function per subcommand, each producing a [`CommandResult`].

use serde_json::{json, Value};

use subatomica_core::monoids::{MonoidDescriptor, MonoidElement};
use subatomica_core::poly::{
    atom_factorizations, exact_divide, is_atom_poly, laurent_is_atom, laurent_normalize, LaurentPoly, PolyAtomVerdict, SemiPoly,
};
use subatomica_core::semidomains::{lexcone_phi, mixedring_ord_status, AtomVerdict, OrdStatus, SemidomainElement};
use subatomica_core::witness::{
    almost_atomic_witness, brute_force_oracle, furstenberg_witness, poly_grid, quasi_atomic_witness, ufm_check_small, value_range, Element,
    Structure, WitnessFactorization, WitnessKind as Kind, WitnessOutcome,
};
use subatomica_core::{Rational, SearchBudget};

use crate::args::{Command, Global, Target, WitnessKind};
use crate::model::{element_of, parse_element_arg, parse_elements_arg, parse_structure_arg, InputError};
use crate::output::{CommandResult, Status};

pub type Outcome = Result<CommandResult, InputError>;

fn strs<T: ToString>(xs: &[T]) -> Value {
    Value::from(xs.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn ok(cmd: &str, payload: Value) -> CommandResult {
    CommandResult::new(cmd, Status::Ok, payload)
}

fn core<T>(r: subatomica_core::Result<T>) -> Result<T, InputError> {
    r.map_err(|e| InputError::Invalid(e.to_string()))
}

fn target(t: &Target) -> Result<(Structure, Element), InputError> {
    let (s, embedded) = parse_structure_arg(&t.structure)?;
    let e = match (&t.elem, embedded) {
        (Some(text), None) => parse_element_arg(&s, text)?,
        (None, Some(v)) => element_of(&s, &v)?,
        (Some(_), Some(_)) => return Err(InputError::Invalid("element given both in the structure and with --elem".into())),
        (None, None) => return Err(InputError::Invalid("no element given; use --elem".into())),
    };
    Ok((s, e))
}

fn monoid(text: &str) -> Result<MonoidDescriptor, InputError> {
    match parse_structure_arg(text)?.0 {
        Structure::Monoid(m) => Ok(m),
        other => Err(InputError::Invalid(format!("{} is not an additive monoid", other.name()))),
    }
}

fn monoid_elements(text: &str, elems: &str) -> Result<(MonoidDescriptor, Vec<MonoidElement>), InputError> {
    let m = monoid(text)?;
    let es = parse_elements_arg(&Structure::Monoid(m.clone()), elems)?
        .into_iter()
        .map(|e| match e {
            Element::Monoid(x) => x,
            _ => unreachable!("monoid structures yield monoid elements"),
        })
        .collect();
    Ok((m, es))
}

fn value(e: &Element) -> Result<Rational, InputError> {
    match e {
        Element::Monoid(MonoidElement::Value(q)) => Ok(q.clone()),
        _ => Err(InputError::Invalid(format!("{e} is not a rational"))),
    }
}

pub fn run(cmd: &Command, g: &Global) -> CommandResult {
    let name = command_name(cmd);
    match dispatch(cmd, g) {
        Ok(r) => r,
        Err(e) => {
            let mut r = CommandResult::error(name, e.to_string());
            if let InputError::Parse { what, text, err } = &e {
                r.payload.insert(
                    "parse_error".into(),
                    json!({ "input": what, "text": text, "line": err.line, "column": err.column, "message": err.message, "expected": err.expected }),
                );
            }
            r
        }
    }
}

pub fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Contains(_) => "contains",
        Command::Divides { .. } => "divides",
        Command::Atoms { .. } => "atoms",
        Command::IsAtom(_) => "is-atom",
        Command::Factorize { .. } => "factorize",
        Command::Gcd { .. } => "gcd",
        Command::Mcd { .. } => "mcd",
        Command::CanonDecomp(_) => "canon-decomp",
        Command::GreatestDyadic(_) => "greatest-dyadic",
        Command::Embed(_) => "embed",
        Command::Phi { .. } => "phi",
        Command::OrdStatus { .. } => "ord-status",
        Command::Witness { .. } => "witness",
        Command::UfmCheck { .. } => "ufm-check",
        Command::Oracle { .. } => "oracle",
        Command::Check { .. } => "check",
    }
}

fn dispatch(cmd: &Command, g: &Global) -> Outcome {
    let budget = g.budget();
    match cmd {
        Command::Contains(t) => contains(t),
        Command::Divides { target: t, divisor } => divides(t, divisor),
        Command::Atoms { structure, bound } => {
            let list = monoid(structure)?.atoms_up_to(*bound);
            Ok(ok("atoms", json!({ "atoms": strs(&list.atoms), "complete": list.complete, "bound": bound })))
        }
        Command::IsAtom(t) => is_atom(t, &budget),
        Command::Factorize { target: t, max } => factorize(t, *max, &budget),
        Command::Gcd { structure, elems } => divisor_sets("gcd", structure, elems, &budget),
        Command::Mcd { structure, elems } => divisor_sets("mcd", structure, elems, &budget),
        Command::CanonDecomp(t) => {
            let (s, e) = target(&Target { structure: t.structure.clone(), elem: Some(t.elem.clone()) })?;
            let Structure::Monoid(m) = &s else {
                return Err(InputError::Invalid(format!("{} is not an additive monoid", s.name())));
            };
            let ds = core(m.canonical_decompositions(&value(&e)?))?;
            let list: Vec<Value> = ds
                .iter()
                .map(|d| {
                    let pairs: serde_json::Map<String, Value> =
                        d.pairs.iter().map(|(n, (c, c2))| (n.to_string(), json!([c, c2]))).collect();
                    json!({ "dyadic_summand": d.dyadic_summand.to_string(), "pairs": pairs })
                })
                .collect();
            Ok(ok("canon-decomp", json!({ "elem": e.to_string(), "decompositions": list })).cite(&["canonical-decomposition"]))
        }
        Command::GreatestDyadic(t) => {
            let (s, e) = target(&Target { structure: t.structure.clone(), elem: Some(t.elem.clone()) })?;
            let Structure::Monoid(m) = &s else {
                return Err(InputError::Invalid(format!("{} is not an additive monoid", s.name())));
            };
            let d = core(m.greatest_divisor_in_dyadic(&value(&e)?))?;
            Ok(ok("greatest-dyadic", json!({ "elem": e.to_string(), "divisor": d.to_string() })).cite(&["dyadic-greatest-divisor"]))
        }
        Command::Embed(t) => {
            let (s, e) = target(t)?;
            let (Structure::Semidomain(d), Element::Semi(x)) = (&s, &e) else {
                return Err(InputError::Invalid("embed takes a semidomain".into()));
            };
            let img = core(d.grothendieck_embed(x))?;
            Ok(ok("embed", json!({ "elem": e.to_string(), "image": img.to_string() })).cite(&["difference-ring-embedding"]))
        }
        Command::Phi { structure, elem } => {
            let (s, e) = target(&Target { structure: structure.clone(), elem: Some(elem.clone()) })?;
            let Element::Semi(SemidomainElement::Lex(p)) = &e else {
                return Err(InputError::Invalid(format!("phi is defined on the lex cone algebra, not {}", s.name())));
            };
            Ok(ok("phi", json!({ "elem": e.to_string(), "phi": core(lexcone_phi(p))? })).cite(&["lex-cone-algebra"]))
        }
        Command::OrdStatus { structure, elem } => {
            let (s, e) = target(&Target { structure: structure.clone(), elem: Some(elem.clone()) })?;
            let Element::Semi(SemidomainElement::Mixed(p)) = &e else {
                return Err(InputError::Invalid(format!("ord-status is defined on the mixed ring, not {}", s.name())));
            };
            let payload = match core(mixedring_ord_status(p))? {
                OrdStatus::FactorsIntoAtoms => json!({ "elem": e.to_string(), "status": "factors-into-atoms", "coefficient": null }),
                OrdStatus::NeverFactors(c) => json!({ "elem": e.to_string(), "status": "never-factors", "coefficient": c.to_string() }),
            };
            Ok(ok("ord-status", payload).cite(&["mixed-ring-dichotomy"]))
        }
        Command::Witness { kind, target: t } => witness(*kind, t, &budget),
        Command::UfmCheck { structure, range, grid } => ufm_check(structure, range.as_deref(), grid.as_deref(), &budget),
        Command::Oracle { target: t, max_factors } => {
            let (s, e) = target(t)?;
            let r = core(brute_force_oracle(&s, &e, *max_factors, &budget))?;
            let lists = |v: &[Vec<Element>]| Value::from(v.iter().map(|f| strs(f)).collect::<Vec<_>>());
            Ok(ok(
                "oracle",
                json!({
                    "elem": e.to_string(),
                    "factorizations": lists(&r.factorizations),
                    "atom_factorizations": lists(&r.atom_factorizations),
                    "complete": r.complete,
                }),
            ))
        }
        // `examples` is an alias of `paper`.
        Command::Check { suite: _, report } => Ok(crate::suite::check(report.as_deref(), g)),
    }
}

fn contains(t: &Target) -> Outcome {
    match target(t) {
        Ok((_, e)) => Ok(ok("contains", json!({ "elem": e.to_string(), "contains": true }))),
        Err(InputError::NotMember(reason)) => Ok(ok("contains", json!({ "contains": false, "reason": reason }))),
        Err(e) => Err(e),
    }
}

fn divides(t: &Target, divisor: &str) -> Outcome {
    let (s, c) = target(t)?;
    let b = parse_element_arg(&s, divisor)?;
    let quotient: Option<Element> = match (&s, &b, &c) {
        (Structure::Monoid(m), Element::Monoid(x), Element::Monoid(y)) => {
            core(m.divides(x, y))?.then(|| core(y.sub(x)).map(Element::Monoid)).transpose()?
        }
        (Structure::Semidomain(d), Element::Semi(x), Element::Semi(y)) => core(d.mult_divides(x, y))?.map(Element::Semi),
        (Structure::Poly(_), Element::Poly(x), Element::Poly(y)) => {
            if x.is_zero() {
                y.is_zero().then(|| c.clone())
            } else {
                core(exact_divide(y, x))?.map(Element::Poly)
            }
        }
        (Structure::Laurent(_), Element::Laurent(x), Element::Laurent(y)) => {
            if x.is_zero() {
                y.is_zero().then(|| c.clone())
            } else {
                core(exact_divide(y.body(), x.body()))?.map(|q| Element::Laurent(LaurentPoly::new(y.shift() - x.shift(), q)))
            }
        }
        _ => unreachable!("both elements were parsed in the same structure"),
    };
    Ok(ok(
        "divides",
        json!({
            "divisor": b.to_string(),
            "elem": c.to_string(),
            "divides": quotient.is_some(),
            "cofactor": quotient.map(|q| q.to_string()),
        }),
    ))
}

fn is_atom(t: &Target, budget: &SearchBudget) -> Outcome {
    let (s, e) = target(t)?;
    let base = json!({ "elem": e.to_string() });
    let with = |mut v: Value, extra: Value| {
        v.as_object_mut().unwrap().extend(extra.as_object().unwrap().clone());
        v
    };
    if s.is_absorbing(&e) || core(s.is_unit(&e))? {
        let why = if s.is_absorbing(&e) { "zero" } else { "unit" };
        return Ok(ok("is-atom", with(base, json!({ "atom": false, "reason": why }))));
    }
    enum V {
        Atom(String),
        Split(Element, Element),
        Unknown(String),
    }
    let v = match (&s, &e) {
        (Structure::Monoid(m), Element::Monoid(x)) => match core(m.nontrivial_split(x))? {
            None => V::Atom("no nontrivial split".into()),
            Some((a, b)) => V::Split(Element::Monoid(a), Element::Monoid(b)),
        },
        (Structure::Semidomain(d), Element::Semi(x)) => match core(d.mult_is_atom(x, budget))? {
            AtomVerdict::Atom(c) => V::Atom(format!("{c:?}")),
            AtomVerdict::NotAtom(a, b) => V::Split(Element::Semi(a), Element::Semi(b)),
            AtomVerdict::Unknown(m) => V::Unknown(m),
        },
        (Structure::Poly(_), Element::Poly(p)) => match core(is_atom_poly(p, budget))? {
            PolyAtomVerdict::Atom(c) => V::Atom(format!("{c:?}")),
            PolyAtomVerdict::NotAtom(a, b) => V::Split(Element::Poly(a), Element::Poly(b)),
            PolyAtomVerdict::Unknown(m) => V::Unknown(m),
        },
        (Structure::Laurent(_), Element::Laurent(p)) => match core(laurent_is_atom(p, budget))? {
            PolyAtomVerdict::Atom(c) => V::Atom(format!("{c:?}")),
            PolyAtomVerdict::NotAtom(a, b) => {
                V::Split(Element::Laurent(LaurentPoly::new(p.shift(), a)), Element::Laurent(LaurentPoly::new(0, b)))
            }
            PolyAtomVerdict::Unknown(m) => V::Unknown(m),
        },
        _ => unreachable!(),
    };
    Ok(match v {
        V::Atom(cert) => ok("is-atom", with(base, json!({ "atom": true, "certificate": cert }))),
        V::Split(a, b) => ok("is-atom", with(base, json!({ "atom": false, "split": [a.to_string(), b.to_string()] }))),
        V::Unknown(m) => CommandResult::new("is-atom", Status::Indeterminate, with(base, json!({ "atom": null, "reason": m }))),
    })
}

fn factorize(t: &Target, max: usize, budget: &SearchBudget) -> Outcome {
    let (s, e) = target(t)?;
    let elem = e.to_string();
    match (&s, &e) {
        (Structure::Monoid(m), Element::Monoid(x)) => {
            let fs = core(m.factorizations(x, max, budget.atom_denominator_bound))?;
            let list: Vec<Value> = fs.factorizations.iter().map(|f| strs(&f.atoms)).collect();
            let status = match (&fs.obstruction, list.is_empty()) {
                (Some(_), _) => Status::ProvablyNone,
                (None, true) => Status::NotFound,
                (None, false) => Status::Ok,
            };
            Ok(CommandResult::new(
                "factorize",
                status,
                json!({
                    "elem": elem,
                    "factorizations": list,
                    "complete": fs.complete,
                    "obstruction": fs.obstruction.map(|o| o.to_string()),
                }),
            ))
        }
        (Structure::Semidomain(d), Element::Semi(x)) => {
            if d.is_zero(x) {
                return Err(InputError::Invalid("zero has no factorization".into()));
            }
            Ok(match core(d.factor_by_splitting(x, budget.factor_depth_bound.max(max), budget))? {
                Some(f) => ok(
                    "factorize",
                    json!({ "elem": elem, "factorizations": [{ "unit": f.unit.to_string(), "atoms": strs(&f.atoms) }], "complete": false }),
                ),
                None => CommandResult::new("factorize", Status::NotFound, json!({ "elem": elem, "factorizations": [], "complete": false })),
            })
        }
        (Structure::Poly(_), Element::Poly(p)) => poly_factorize(elem, p, 0, max, budget),
        (Structure::Laurent(_), Element::Laurent(p)) => {
            let (shift, body) = laurent_normalize(p);
            poly_factorize(elem, &body, shift, max, budget)
        }
        _ => unreachable!(),
    }
}

// Factorizations of `x^shift · p`; a nonzero shift is folded into the unit.
fn poly_factorize(elem: String, p: &SemiPoly, shift: i64, max: usize, budget: &SearchBudget) -> Outcome {
    if p.is_zero() {
        return Err(InputError::Invalid("zero has no factorization".into()));
    }
    let fs = core(atom_factorizations(p, max, budget))?;
    let laurent = shift != 0;
    let list: Vec<Value> = fs
        .factorizations
        .iter()
        .map(|f| {
            let unit = core(SemiPoly::constant(p.base(), f.unit.clone()))?;
            let (unit, atoms) = if laurent {
                (
                    LaurentPoly::new(shift, unit).to_string(),
                    f.atoms.iter().map(|a| LaurentPoly::new(0, a.clone()).to_string()).collect::<Vec<_>>(),
                )
            } else {
                (unit.to_string(), f.atoms.iter().map(|a| a.to_string()).collect())
            };
            Ok(json!({ "unit": unit, "atoms": atoms }))
        })
        .collect::<Result<_, InputError>>()?;
    let status = if list.is_empty() { Status::NotFound } else { Status::Ok };
    Ok(CommandResult::new("factorize", status, json!({ "elem": elem, "factorizations": list, "complete": fs.complete })))
}

fn divisor_sets(cmd: &str, structure: &str, elems: &str, budget: &SearchBudget) -> Outcome {
    let (m, es) = monoid_elements(structure, elems)?;
    let ds = core(m.divisor_sets(&es, budget.atom_denominator_bound))?;
    let status = if ds.exact { Status::Ok } else { Status::Indeterminate };
    Ok(CommandResult::new(
        cmd,
        status,
        json!({
            "elems": strs(&es),
            "gcd": strs(&ds.gcd),
            "mcd": strs(&ds.mcd),
            "common": ds.common.as_ref().map(|c| strs(c)),
            "exact": ds.exact,
        }),
    )
    .cite(&["common-divisor-sets"]))
}

fn factorization_json(f: &WitnessFactorization) -> Value {
    json!({ "unit": f.unit.to_string(), "atoms": strs(&f.atoms) })
}

fn witness(kind: WitnessKind, t: &Target, budget: &SearchBudget) -> Outcome {
    let (s, e) = target(t)?;
    let (outcome, label) = match kind {
        WitnessKind::Furstenberg => (core(furstenberg_witness(&s, &e, budget))?, "furstenberg-ascent"),
        WitnessKind::AlmostAtomic => (core(almost_atomic_witness(&s, &e, budget))?, "almost-atomic-ascent"),
        WitnessKind::QuasiAtomic => (core(quasi_atomic_witness(&s, &e, budget))?, "quasi-atomic-ascent"),
    };
    let kind_name = match kind {
        WitnessKind::Furstenberg => "furstenberg",
        WitnessKind::AlmostAtomic => "almost-atomic",
        WitnessKind::QuasiAtomic => "quasi-atomic",
    };
    let r = outcome.report();
    let mut payload = json!({
        "kind": kind_name,
        "structure": s.name(),
        "elem": e.to_string(),
        "branches": r.branches,
        "notes": r.notes,
    });
    let m = payload.as_object_mut().unwrap();
    let status = match &outcome {
        WitnessOutcome::Found(w) => {
            match &w.kind {
                Kind::FurstenbergAtom { atom, cofactor } => {
                    m.insert("atom".into(), atom.to_string().into());
                    m.insert("cofactor".into(), cofactor.to_string().into());
                }
                Kind::AlmostAtomic { added_atoms, factorization } => {
                    m.insert("added_atoms".into(), strs(added_atoms));
                    m.insert("factorization".into(), factorization_json(factorization));
                }
                Kind::QuasiAtomic { multiplier, factorization } => {
                    m.insert("multiplier".into(), multiplier.to_string().into());
                    m.insert("factorization".into(), factorization_json(factorization));
                }
            }
            m.insert("verified".into(), core(w.verify(&s, &e, budget))?.into());
            Status::Ok
        }
        WitnessOutcome::NotFoundWithinBudget(_) => Status::NotFound,
        WitnessOutcome::ProvablyNoWitness { obstruction, .. } => {
            m.insert("obstruction".into(), obstruction.clone().into());
            Status::ProvablyNone
        }
    };
    Ok(CommandResult::new("witness", status, payload).cite(&[label]))
}

fn parse_pair<A: std::str::FromStr, B: std::str::FromStr>(text: &str, sep: &str, what: &str) -> Result<(A, B), InputError> {
    let bad = || InputError::Invalid(format!("{what} should look like A{sep}B, got \"{text}\""));
    let (a, b) = text.split_once(sep).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn ufm_check(structure: &str, range: Option<&str>, grid: Option<&str>, budget: &SearchBudget) -> Outcome {
    let (s, _) = parse_structure_arg(structure)?;
    let sample = match (range, grid, &s) {
        (Some(r), _, Structure::Monoid(_) | Structure::Semidomain(_)) => {
            let (lo, hi): (i64, i64) = parse_pair(r, "..", "--range")?;
            if hi < lo || hi - lo > 10_000 {
                return Err(InputError::Invalid("--range must satisfy LO <= HI <= LO + 10000".into()));
            }
            value_range(&s, lo, hi)
        }
        (None, Some(gr), Structure::Poly(b)) => {
            let (deg, coeff): (usize, u32) = parse_pair(gr, ",", "--grid")?;
            if deg > 6 || coeff > 6 {
                return Err(InputError::Invalid("--grid is limited to degree and coefficients at most 6".into()));
            }
            poly_grid(*b, deg, coeff)
        }
        (None, None, _) => return Err(InputError::Invalid("give --range LO..HI or --grid DEG,COEFF".into())),
        _ => return Err(InputError::Invalid(format!("this sample kind does not apply to {}", s.name()))),
    };
    let r = core(ufm_check_small(&s, &sample, budget))?;
    let pair = |p: &Option<(Element, Element)>| p.as_ref().map(|(a, b)| json!([a.to_string(), b.to_string()]));
    let triple = |t: &(Element, Vec<Element>, Vec<Element>)| json!({ "elem": t.0.to_string(), "first": strs(&t.1), "second": strs(&t.2) });
    Ok(ok(
        "ufm-check",
        json!({
            "structure": r.structure,
            "elements_checked": r.elements_checked,
            "pairs_checked": r.pairs_checked,
            "gcd_failure": pair(&r.gcd_failure),
            "quasi_failure": r.quasi_failure.as_ref().map(|e| e.to_string()),
            "non_unique": r.non_unique.iter().take(5).map(triple).collect::<Vec<_>>(),
            "hypothesis_holds": r.hypothesis_holds(),
            "conclusion_holds": r.conclusion_holds(),
            "consistent": r.consistent(),
            "counterexample": r.counterexample.as_ref().map(triple),
        }),
    )
    .cite(&["ufm-gcd-quasi-atomic"]))
}
