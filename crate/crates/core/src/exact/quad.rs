use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::is_squarefree;
use crate::Rational;

/// An element `a + b·√d` of the quadratic field ℚ(√d).
///
/// Elements with `b = 0` are rational and combine with elements of any `d`;
/// mixing two irrational elements over different `d` panics.
#[derive(Debug, Clone)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    pub d: u64,
}

pub const DEFAULT_D: u64 = 2;

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        debug_assert!(d >= 2 && is_squarefree(d));
        QuadExt { a, b, d }
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), d: DEFAULT_D }
    }

    /// `b·√d`.
    pub fn surd(b: Rational, d: u64) -> Self {
        QuadExt::new(Rational::zero(), b, d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(self.d.into()) * &self.b * &self.b
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadExt { a: &self.a / &n, b: -&self.b / &n, d: self.d })
    }

    fn common_d(&self, other: &Self) -> u64 {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.d,
            (_, true) => self.d,
            _ => {
                assert_eq!(self.d, other.d, "mixing quadratic fields of different discriminant");
                self.d
            }
        }
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadExt {}

impl Hash for QuadExt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        if !self.b.is_zero() {
            self.d.hash(state);
        }
    }
}

impl From<Rational> for QuadExt {
    fn from(a: Rational) -> Self {
        QuadExt::rational(a)
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_d(&rhs);
        QuadExt { a: self.a + rhs.a, b: self.b + rhs.b, d }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_d(&rhs);
        QuadExt { a: self.a - rhs.a, b: self.b - rhs.b, d }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_d(&rhs);
        let dq = Rational::from_integer(d.into());
        QuadExt { a: &self.a * &rhs.a + dq * &self.b * &rhs.b, b: &self.a * &rhs.b + &self.b * &rhs.a, d }
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: QuadExt) -> QuadExt {
        self * rhs.inv().expect("division by zero in quadratic field")
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt{}", self.b, self.d);
        }
        if self.b < Rational::zero() {
            write!(f, "{}-{}*sqrt{}", self.a, -self.b.clone(), self.d)
        } else {
            write!(f, "{}+{}*sqrt{}", self.a, self.b, self.d)
        }
    }
}
