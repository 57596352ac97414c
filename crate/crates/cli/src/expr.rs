//! The input language: structure descriptors `kind{key=value, ...}` and
//! algebraic values built from rationals, `sqrtN`, `x`, `e^(q)` and `X^(b,c)`.
//!
//! ```text
//! structure := ident [ "{" [ kv ("," kv)* ] "}" ]
//! kv        := ident "=" ( "[" [ value ("," value)* ] "]" | structure | value )
//! value     := pair | sum
//! pair      := "(" int "," int ")"
//! sum       := ["+" | "-"] term (("+" | "-") term)*
//! term      := power (["*" | "/"] power)*        adjacent powers multiply
//! power     := atom ["^" exponent]
//! atom      := int | "x" | "e" | "X" | "sqrt" int | "(" sum ")"
//! exponent  := ["-"] int | "(" sum ")" | pair
//! ```
//!
//! Whitespace is insignificant. Every value is normalized to a finite sum of
//! monomials `c·x^k·e^q·X^(b,c)` with coefficients in ℚ(√d), so `2*e^0` and `2`
//! are the same value and printing is canonical.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use subatomica_core::{QuadExt, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: BTreeSet<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            let list: Vec<&str> = self.expected.iter().map(String::as_str).collect();
            write!(f, " (expected {})", list.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

// ------------------------------------------------------------------- values

/// `x^x · e^e · X^lex`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono {
    pub x: i64,
    pub e: Rational,
    /// `(b, c)`, ordered by `c` first to match the cone's lexicographic order.
    pub lex: (i64, i64),
}

impl Mono {
    pub fn is_one(&self) -> bool {
        *self == Mono::default()
    }

    fn mul(&self, o: &Mono) -> Mono {
        Mono { x: self.x + o.x, e: &self.e + &o.e, lex: (self.lex.0 + o.lex.0, self.lex.1 + o.lex.1) }
    }

    fn sort_key(&self) -> (i64, &Rational, i64, i64) {
        (self.x, &self.e, self.lex.1, self.lex.0)
    }
}

/// A finite sum of monomials with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sum {
    terms: Vec<(Mono, QuadExt)>,
}

impl Sum {
    pub fn constant(c: QuadExt) -> Sum {
        Sum::from_terms([(Mono::default(), c)])
    }

    pub fn rational(q: Rational) -> Sum {
        Sum::constant(QuadExt::rational(q))
    }

    pub fn mono(m: Mono) -> Sum {
        Sum::from_terms([(m, QuadExt::one())])
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, QuadExt)>) -> Sum {
        let mut map: BTreeMap<(i64, Rational, i64, i64), (Mono, QuadExt)> = BTreeMap::new();
        for (m, c) in it {
            let (x, e, c2, b) = m.sort_key();
            let key = (x, e.clone(), c2, b);
            match map.get_mut(&key) {
                Some(slot) => slot.1 = slot.1.clone() + c,
                None => {
                    map.insert(key, (m, c));
                }
            }
        }
        Sum { terms: map.into_values().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(Mono, QuadExt)] {
        &self.terms
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => c.as_rational().cloned(),
            _ => None,
        }
    }

    fn add(&self, o: &Sum) -> Sum {
        Sum::from_terms(self.terms.iter().chain(&o.terms).cloned())
    }

    fn neg(&self) -> Sum {
        Sum { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    fn mul(&self, o: &Sum) -> Sum {
        let mut out = Vec::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.push((m1.mul(m2), c1.clone() * c2.clone()));
            }
        }
        Sum::from_terms(out)
    }

    fn scale(&self, q: &Rational) -> Sum {
        self.mul(&Sum::rational(q.clone()))
    }

    // The surd index appearing in the coefficients, if any.
    fn surd(&self) -> Option<u64> {
        self.terms.iter().find(|(_, c)| !c.is_rational()).map(|(_, c)| c.d)
    }
}

/// A parsed element: a pair of integers or a sum of monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Pair(i64, i64),
    Sum(Sum),
}

fn fmt_coeff(c: &QuadExt) -> (bool, String) {
    if let Some(q) = c.as_rational() {
        return (q.is_negative(), q.abs().to_string());
    }
    if c.a.is_zero() {
        let neg = c.b.is_negative();
        let b = c.b.abs();
        let body = if b.is_one() { format!("sqrt{}", c.d) } else { format!("{b}*sqrt{}", c.d) };
        return (neg, body);
    }
    (false, format!("({c})"))
}

impl fmt::Display for Sum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, body) = fmt_coeff(c);
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts = Vec::new();
            if !(body == "1" && !m.is_one()) {
                parts.push(body);
            }
            match m.x {
                0 => {}
                1 => parts.push("x".into()),
                k => parts.push(format!("x^{k}")),
            }
            if !m.e.is_zero() {
                parts.push(format!("e^({})", m.e));
            }
            if m.lex != (0, 0) {
                parts.push(format!("X^({},{})", m.lex.0, m.lex.1));
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Pair(b, c) => write!(f, "({b},{c})"),
            Value::Sum(s) => write!(f, "{s}"),
        }
    }
}

// ----------------------------------------------------------------- structures

/// The right-hand side of `key=...` in a structure descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    List(Vec<Value>),
    Name(String),
    Structure(StructureExpr),
    Value(Value),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureExpr {
    pub kind: String,
    pub args: Vec<(String, Arg)>,
}

impl StructureExpr {
    pub fn get(&self, key: &str) -> Option<&Arg> {
        self.args.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::List(v) => {
                let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", items.join(","))
            }
            Arg::Name(n) => write!(f, "{n}"),
            Arg::Structure(s) => write!(f, "{s}"),
            Arg::Value(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for StructureExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.args.is_empty() {
            let kvs: Vec<String> = self.args.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "{{{}}}", kvs.join(", "))?;
        }
        Ok(())
    }
}

// --------------------------------------------------------------------- lexer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().unwrap())
        } else if c.is_alphabetic() || c == '_' {
            // `sqrt2` is one identifier; so is `x2`, which is then rejected as unknown.
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "+-*/^()[]{},=".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError { line: l0, column: c0, message: format!("unexpected character '{c}'"), expected: BTreeSet::new() });
        };
        col += i - start;
        out.push(Spanned { tok, line: l0, column: c0 });
    }
    out.push(Spanned { tok: Tok::End, line, column: col });
    Ok(out)
}

// -------------------------------------------------------------------- parser

const RESERVED: [&str; 3] = ["x", "e", "X"];

fn is_value_ident(s: &str) -> bool {
    RESERVED.contains(&s) || surd_index(s).is_some()
}

fn surd_index(s: &str) -> Option<u64> {
    s.strip_prefix("sqrt").and_then(|d| d.parse().ok())
}

fn squarefree(d: u64) -> bool {
    d >= 2 && (2..).take_while(|p| p * p <= d).all(|p| d % (p * p) != 0)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    /// Tokens that would have been accepted at the current position.
    expected: BTreeSet<String>,
    surd: Option<u64>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(text: &str) -> PResult<Parser> {
        Ok(Parser { toks: lex(text)?, pos: 0, expected: BTreeSet::new(), surd: None })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        self.expected.clear();
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError { line: s.line, column: s.column, message: message.into(), expected: self.expected.clone() }
    }

    fn unexpected(&self) -> ParseError {
        self.error(format!("unexpected {}", self.peek()))
    }

    fn at_sym(&mut self, c: char) -> bool {
        self.expected.insert(format!("'{c}'"));
        *self.peek() == Tok::Sym(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.at_sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn finish(&mut self) -> PResult<()> {
        self.expected.insert("end of input".into());
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        self.expected.insert(what.into());
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected()),
        }
    }

    fn small(&self, n: &BigInt) -> PResult<i64> {
        n.to_i64().ok_or_else(|| self.error(format!("{n} is too large")))
    }

    // ---------------------------------------------------------- structures

    fn structure(&mut self) -> PResult<StructureExpr> {
        let kind = self.ident("structure kind")?;
        let mut args = Vec::new();
        if self.eat('{') {
            if !self.eat('}') {
                loop {
                    let key = self.ident("key")?;
                    self.expect('=')?;
                    let v = self.arg()?;
                    if args.iter().any(|(k, _): &(String, Arg)| *k == key) {
                        return Err(self.error(format!("duplicate key '{key}'")));
                    }
                    args.push((key, v));
                    if self.eat('}') {
                        break;
                    }
                    self.expect(',')?;
                }
            }
        }
        Ok(StructureExpr { kind, args })
    }

    fn arg(&mut self) -> PResult<Arg> {
        if self.eat('[') {
            let mut items = Vec::new();
            if !self.eat(']') {
                loop {
                    items.push(self.value()?);
                    if self.eat(']') {
                        break;
                    }
                    self.expect(',')?;
                }
            }
            return Ok(Arg::List(items));
        }
        if let Tok::Ident(s) = self.peek().clone() {
            if !is_value_ident(&s) {
                let next = self.toks.get(self.pos + 1).map(|t| t.tok.clone());
                return if next == Some(Tok::Sym('{')) {
                    Ok(Arg::Structure(self.structure()?))
                } else {
                    self.bump();
                    Ok(Arg::Name(s))
                };
            }
        }
        Ok(Arg::Value(self.value()?))
    }

    // -------------------------------------------------------------- values

    fn value(&mut self) -> PResult<Value> {
        if let Some(p) = self.try_pair()? {
            return Ok(p);
        }
        Ok(Value::Sum(self.sum()?))
    }

    // `(int, int)` with optional signs, or nothing (position restored).
    fn try_pair(&mut self) -> PResult<Option<Value>> {
        let save = self.pos;
        if *self.peek() != Tok::Sym('(') {
            return Ok(None);
        }
        self.bump();
        let Some(b) = self.try_signed_int() else {
            self.pos = save;
            return Ok(None);
        };
        if *self.peek() != Tok::Sym(',') {
            self.pos = save;
            return Ok(None);
        }
        self.bump();
        let Some(c) = self.try_signed_int() else {
            return Err(self.error("the second coordinate of a pair must be an integer"));
        };
        self.expect(')')?;
        Ok(Some(Value::Pair(self.small(&b)?, self.small(&c)?)))
    }

    fn try_signed_int(&mut self) -> Option<BigInt> {
        let save = self.pos;
        let neg = *self.peek() == Tok::Sym('-');
        if neg {
            self.bump();
        }
        if let Tok::Int(n) = self.peek().clone() {
            self.bump();
            return Some(if neg { -n } else { n });
        }
        self.pos = save;
        None
    }

    fn sum(&mut self) -> PResult<Sum> {
        let mut neg = false;
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::Sym('('))
    }

    fn term(&mut self) -> PResult<Sum> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let (line, column) = (self.toks[self.pos].line, self.toks[self.pos].column);
                let d = self.power()?;
                match d.as_rational() {
                    Some(q) if !q.is_zero() => acc = acc.scale(&(Rational::one() / q)),
                    _ => {
                        return Err(ParseError {
                            line,
                            column,
                            message: "only division by a nonzero rational is supported".into(),
                            expected: BTreeSet::new(),
                        })
                    }
                }
            } else if self.starts_atom() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> PResult<Sum> {
        self.expected.extend(["integer", "'x'", "'e'", "'X'", "'sqrtN'", "'('"].map(String::from));
        let (line, column) = (self.toks[self.pos].line, self.toks[self.pos].column);
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let base = Sum::rational(Rational::from_integer(n));
                self.int_power(base, false)
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.sum()?;
                self.expect(')')?;
                self.int_power(inner, false)
            }
            Tok::Ident(s) if s == "x" => {
                self.bump();
                self.int_power(Sum::mono(Mono { x: 1, ..Mono::default() }), true)
            }
            Tok::Ident(s) if s == "e" => {
                self.bump();
                let q = if self.eat('^') { self.exponent_rational()? } else { Rational::one() };
                Ok(Sum::mono(Mono { e: q, ..Mono::default() }))
            }
            Tok::Ident(s) if s == "X" => {
                self.bump();
                let (b, c) = if self.eat('^') {
                    match self.try_pair()? {
                        Some(Value::Pair(b, c)) => (b, c),
                        _ => return Err(self.error("X takes a pair exponent (b,c)")),
                    }
                } else {
                    (1, 0)
                };
                Ok(Sum::mono(Mono { lex: (b, c), ..Mono::default() }))
            }
            Tok::Ident(s) => match surd_index(&s) {
                Some(d) if squarefree(d) => {
                    if self.surd.is_some_and(|d0| d0 != d) {
                        return Err(ParseError {
                            line,
                            column,
                            message: format!("sqrt{d} mixed with sqrt{}", self.surd.unwrap()),
                            expected: BTreeSet::new(),
                        });
                    }
                    self.surd = Some(d);
                    self.bump();
                    self.int_power(Sum::constant(QuadExt::surd(Rational::one(), d)), false)
                }
                Some(d) => Err(self.error(format!("sqrt{d}: the radicand must be squarefree and at least 2"))),
                None => Err(self.error(format!("unknown name '{s}'"))),
            },
            _ => Err(self.unexpected()),
        }
    }

    // `^k` after an atom; negative exponents only for the bare variable.
    fn int_power(&mut self, base: Sum, monomial: bool) -> PResult<Sum> {
        if !self.eat('^') {
            return Ok(base);
        }
        let k = if self.eat('(') {
            let k = self.try_signed_int().ok_or_else(|| self.error("expected an integer exponent"))?;
            self.expect(')')?;
            k
        } else {
            self.try_signed_int().ok_or_else(|| {
                let mut e = self.error("expected an integer exponent");
                e.expected.insert("integer".into());
                e
            })?
        };
        let k = self.small(&k)?;
        if monomial {
            return Ok(Sum::mono(Mono { x: k, ..Mono::default() }));
        }
        if k < 0 {
            return Err(self.error("negative exponents are allowed on x only"));
        }
        if k > 64 {
            return Err(self.error(format!("exponent {k} is too large")));
        }
        let mut acc = Sum::rational(Rational::one());
        for _ in 0..k {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn exponent_rational(&mut self) -> PResult<Rational> {
        if self.eat('(') {
            let s = self.sum()?;
            self.expect(')')?;
            return s.as_rational().ok_or_else(|| self.error("the exponent of e must be rational"));
        }
        match self.try_signed_int() {
            Some(n) => Ok(Rational::from_integer(n)),
            None => {
                let mut e = self.error("expected a rational exponent");
                e.expected.extend(["integer".to_string(), "'('".to_string()]);
                Err(e)
            }
        }
    }
}

pub fn parse_structure(text: &str) -> Result<StructureExpr, ParseError> {
    let mut p = Parser::new(text)?;
    let s = p.structure()?;
    p.finish()?;
    Ok(s)
}

pub fn parse_value(text: &str) -> Result<Value, ParseError> {
    let mut p = Parser::new(text)?;
    let v = p.value()?;
    p.finish()?;
    Ok(v)
}

/// Comma-separated values, splitting only outside brackets.
pub fn parse_values(text: &str) -> Result<Vec<Value>, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out = vec![p.value()?];
    while p.eat(',') {
        out.push(p.value()?);
    }
    p.finish()?;
    Ok(out)
}

impl Value {
    pub fn surd(&self) -> Option<u64> {
        match self {
            Value::Pair(..) => None,
            Value::Sum(s) => s.surd(),
        }
    }
}
