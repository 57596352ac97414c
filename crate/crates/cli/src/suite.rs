//! The worked-example regression suite behind `check`.
//!
//! Each case is an ordinary command line plus the status and payload fields it
//! must produce, so the suite exercises the same path as a user would.

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde_json::{json, Value};

use crate::args::Global;
use crate::output::{CommandResult, Status};

struct Case {
    name: &'static str,
    argv: &'static [&'static str],
    status: &'static str,
    /// JSON pointers into the payload and their expected values.
    expect: fn() -> Vec<(&'static str, Value)>,
}

macro_rules! case {
    ($name:expr, [$($a:expr),*], $status:expr $(, $ptr:expr => $v:tt)* $(,)?) => {
        Case { name: $name, argv: &[$($a),*], status: $status, expect: || vec![$(($ptr, json!($v))),*] }
    };
}

fn cases() -> Vec<Case> {
    vec![
        case!("1 is not in <2,3>", ["contains", "--structure", "numerical{gens=[2,3]}", "--elem", "1"], "ok", "/contains" => false),
        case!("2 divides 5 in <2,3>", ["divides", "--structure", "numerical{gens=[2,3]}", "--divisor", "2", "--elem", "5"], "ok",
            "/divides" => true, "/cofactor" => "3"),
        case!("mcd of 5,6 in <2,3>", ["mcd", "--monoid", "numerical{gens=[2,3]}", "--elems", "5,6"], "ok",
            "/mcd" => ["2", "3"], "/gcd" => [], "/common" => ["0", "2", "3"]),
        case!("gcd of 5,6 in <2,3> is empty", ["gcd", "--monoid", "numerical{gens=[2,3]}", "--elems", "5,6"], "ok", "/gcd" => []),
        case!("atoms of P up to 7", ["atoms", "--structure", "P", "--bound", "7"], "ok", "/atoms" => ["1/7", "1/5", "1/3", "1/2"]),
        case!("atoms of MF up to 30", ["atoms", "--structure", "MF", "--bound", "30"], "ok",
            "/atoms" => ["1/29", "1/23", "1/19", "1/17", "1/13", "1/11", "1/7", "1/5", "1/3", "1/2"]),
        case!("dyadic monoid is antimatter", ["atoms", "--structure", "dyadic", "--bound", "100"], "ok", "/atoms" => []),
        case!("1/5 is an atom of MF", ["is-atom", "--structure", "MF", "--elem", "1/5"], "ok", "/atom" => true),
        case!("5/4 has no factorization in MF", ["factorize", "--structure", "MF", "--elem", "5/4"], "provably-none", "/factorizations" => []),
        case!("furstenberg in MF", ["witness", "furstenberg", "--structure", "MF", "--elem", "5/3"], "ok", "/verified" => true),
        case!("first atoms of MAA", ["atoms", "--structure", "MAA", "--bound", "13"], "ok", "/atoms" => ["1/13", "1/11", "1/7", "1/5"]),
        case!("1/8 is not an atom of MAA", ["is-atom", "--structure", "MAA", "--elem", "1/8"], "ok", "/atom" => false),
        case!("1/8 has no factorization in MAA", ["factorize", "--structure", "MAA", "--elem", "1/8"], "provably-none"),
        case!("almost atomic witness for 1/8", ["witness", "almost-atomic", "--structure", "MAA", "--elem", "1/8"], "ok",
            "/added_atoms" => ["1/5", "1/5", "1/5", "1/5", "1/5"], "/verified" => true),
        case!("9/8 lies in MAA", ["canon-decomp", "--elem", "9/8"], "ok"),
        case!("greatest dyadic divisor of 1/8", ["greatest-dyadic", "--elem", "1/8"], "ok", "/divisor" => "1/8"),
        case!("2+e^(1/2) is an atom", ["is-atom", "--structure", "expsum{base=MF}", "--elem", "2 + e^(1/2)"], "ok", "/atom" => true),
        case!("e^(1/2) divides 2e^(1/2)+3e^(3/2)",
            ["witness", "furstenberg", "--structure", "expsum{base=MF, r=2*e^(1/2) + 3*e^(3/2)}"], "ok",
            "/atom" => "1*e^(1/2)", "/verified" => true),
        case!("QGe1 is antimatter", ["is-atom", "--structure", "QGe1", "--elem", "2"], "ok", "/atom" => false),
        case!("decomposition identity over QGe1", ["divides", "--structure", "poly{base=QGe1}", "--divisor", "3x+1", "--elem", "3x^2+10x+3"], "ok",
            "/cofactor" => "3+x"),
        case!("x^2+13/6x+1 is an atom of QGe1[x]", ["is-atom", "--structure", "poly{base=QGe1}", "--elem", "x^2 + 13/6*x + 1"], "ok", "/atom" => true),
        case!("almost atomic witness in QGe1[x]", ["witness", "almost-atomic", "--structure", "poly{base=QGe1}", "--elem", "2x^2+5x+2"], "ok",
            "/verified" => true),
        case!("two factorizations in N0[x]", ["factorize", "--structure", "poly{base=N0, f=1+x+x^2+x^3+x^4+x^5}"], "ok",
            "/factorizations/0/atoms" => ["1+x", "1+x^2+x^4"], "/factorizations/1/atoms" => ["1+x+x^2", "1+x^3"]),
        case!("x^4+x^2+1 is an atom of N0[x]", ["is-atom", "--structure", "poly{base=N0, f=x^4+x^2+1}"], "ok", "/atom" => true),
        case!("furstenberg in N0[x]", ["witness", "furstenberg", "--structure", "poly{base=N0}", "--elem", "2x+2"], "ok", "/atom" => "2"),
        case!("x is a unit of N0[x^±1]", ["is-atom", "--structure", "laurent{base=N0}", "--elem", "x"], "ok", "/atom" => false, "/reason" => "unit"),
        case!("sqrt2*x^2 splits in the mixed ring", ["is-atom", "--structure", "mixed", "--elem", "sqrt2*x^2"], "ok", "/atom" => false),
        case!("sqrt2*x^2 never factors", ["ord-status", "--elem", "sqrt2*x^2"], "ok", "/status" => "never-factors", "/coefficient" => "1*sqrt2"),
        case!("3x factors into atoms", ["ord-status", "--elem", "3x"], "ok", "/status" => "factors-into-atoms"),
        case!("quasi atomic witness for sqrt2*x^2", ["witness", "quasi-atomic", "--structure", "mixed", "--elem", "sqrt2*x^2"], "ok",
            "/multiplier" => "1/2*sqrt2*x^2", "/factorization/atoms" => ["x", "x", "x", "x"]),
        case!(
            "no almost atomic witness for sqrt2*x^2",
            ["witness", "almost-atomic", "--structure", "mixed", "--elem", "sqrt2*x^2"],
            "provably-none"
        ),
        case!("atom of the lex cone", ["atoms", "--structure", "lexcone"], "ok", "/atoms" => ["(1,0)"]),
        case!("(0,1) has no factorization", ["factorize", "--structure", "lexcone", "--elem", "(0,1)"], "provably-none"),
        case!("furstenberg in the lex cone algebra", ["witness", "furstenberg", "--structure", "lexalg", "--elem", "X^(0,1) + X^(2,1)"], "ok",
            "/verified" => true),
        case!("UFM check on (N,*)", ["ufm-check", "--structure", "N0", "--range", "1..200"], "ok",
            "/hypothesis_holds" => true, "/conclusion_holds" => true, "/consistent" => true),
        case!("UFM check on <2,3>", ["ufm-check", "--structure", "numerical{gens=[2,3]}", "--range", "2..30"], "ok",
            "/gcd_failure" => ["5", "6"], "/hypothesis_holds" => false, "/conclusion_holds" => false, "/consistent" => true),
        case!("UFM check on N0[x]", ["ufm-check", "--structure", "poly{base=N0}", "--grid", "5,1"], "ok",
            "/hypothesis_holds" => false, "/conclusion_holds" => false, "/consistent" => true),
    ]
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn run_case(c: &Case) -> Outcome {
    let argv = std::iter::once("subatomica").chain(c.argv.iter().copied()).chain(["--json"]);
    let result = match crate::invoke(argv) {
        Ok((r, _)) => r,
        Err(e) => return Outcome { passed: false, detail: format!("usage error: {}", e.kind()) },
    };
    let mut problems = Vec::new();
    if result.status.as_str() != c.status {
        problems.push(format!("status {} (expected {})", result.status.as_str(), c.status));
    }
    let payload = Value::Object(result.payload.clone());
    for (ptr, want) in (c.expect)() {
        match payload.pointer(ptr) {
            Some(got) if *got == want => {}
            got => problems.push(format!("{ptr} = {} (expected {want})", got.map_or("missing".into(), |g| g.to_string()))),
        }
    }
    if problems.is_empty() {
        Outcome { passed: true, detail: String::new() }
    } else {
        Outcome { passed: false, detail: problems.join("; ") }
    }
}

fn run_all(cases: &[Case], jobs: usize) -> Vec<Outcome> {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Outcome>>> = cases.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, cases.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(c) = cases.get(i) else { break };
                *slots[i].lock().unwrap() = Some(run_case(c));
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().unwrap().expect("every case ran")).collect()
}

fn tap(cases: &[Case], outcomes: &[Outcome]) -> String {
    let mut out = format!("TAP version 13\n1..{}\n", cases.len());
    for (i, (c, o)) in cases.iter().zip(outcomes).enumerate() {
        let verdict = if o.passed { "ok" } else { "not ok" };
        out.push_str(&format!("{verdict} {} - {}\n", i + 1, c.name));
        if !o.passed {
            out.push_str(&format!("  # {}\n", o.detail));
        }
    }
    out
}

pub fn check(report: Option<&Path>, g: &Global) -> CommandResult {
    let cases = cases();
    let outcomes = run_all(&cases, g.jobs as usize);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let rows: Vec<Value> =
        cases.iter().zip(&outcomes).map(|(c, o)| json!({ "name": c.name, "passed": o.passed, "detail": o.detail })).collect();
    let mut table = String::new();
    for (c, o) in cases.iter().zip(&outcomes) {
        table.push_str(&format!("{}  {}\n", if o.passed { "PASS" } else { "FAIL" }, c.name));
        if !o.passed {
            table.push_str(&format!("      {}\n", o.detail));
        }
    }
    table.push_str(&format!("{} passed, {failed} failed\n", cases.len() - failed));
    let status = if failed == 0 { Status::Ok } else { Status::Error };
    let mut r = CommandResult::new("check", status, json!({ "cases": rows, "passed": cases.len() - failed, "failed": failed }));
    if let Some(path) = report {
        if let Err(e) = std::fs::write(path, tap(&cases, &outcomes)) {
            return CommandResult::error("check", format!("cannot write report {}: {e}", path.display()));
        }
        r.payload.insert("report".into(), path.display().to_string().into());
    }
    r.table = Some(table);
    r
}
