use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// `a + b*sqrt(D)` with rational `a`, `b` and square-free `D > 1`.
///
/// `discriminant == 0` marks a value that has not been tied to a field yet
/// (only possible while `b == 0`). Binary operations adopt the discriminant of
/// whichever operand carries one; mixing two different discriminants panics.
#[derive(Clone, Debug)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    discriminant: u64,
}

impl QuadScalar {
    pub fn new(a: Rational, b: Rational, discriminant: u64) -> Self {
        assert!(discriminant != 1, "sqrt(1) is rational");
        assert!(b.is_zero() || discriminant > 1, "irrational part needs a discriminant");
        QuadScalar { a, b, discriminant }
    }

    pub fn rational(a: Rational) -> Self {
        QuadScalar { a, b: Rational::zero(), discriminant: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `sqrt(D)` itself.
    pub fn sqrt(discriminant: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), discriminant)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn discriminant(&self) -> u64 {
        self.discriminant
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b*sqrt(D)`.
    pub fn conjugate(&self) -> Self {
        QuadScalar { a: self.a.clone(), b: -self.b.clone(), discriminant: self.discriminant }
    }

    /// Field norm `a^2 - D b^2`.
    pub fn norm(&self) -> Rational {
        let d = Rational::from_integer(BigInt::from(self.discriminant));
        &self.a * &self.a - d * &self.b * &self.b
    }

    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt D)");
        QuadScalar { a: &self.a / &n, b: -(&self.b / &n), discriminant: self.discriminant }
    }

    /// Real-number sign, decided exactly: compares `a` against `-b sqrt(D)`.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: |a| vs |b| sqrt(D)
        let d = Rational::from_integer(BigInt::from(self.discriminant));
        let lhs = &self.a * &self.a;
        let rhs = d * &self.b * &self.b;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    fn merge(&self, other: &Self) -> u64 {
        match (self.discriminant, other.discriminant) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("mixing Q(sqrt {d}) with Q(sqrt {e})"),
        }
    }
}

fn sign(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialEq for QuadScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.a != other.a || self.b != other.b {
            return false;
        }
        self.b.is_zero()
            || self.discriminant == other.discriminant
    }
}

impl Eq for QuadScalar {}

impl From<Rational> for QuadScalar {
    fn from(a: Rational) -> Self {
        QuadScalar::rational(a)
    }
}

impl Zero for QuadScalar {
    fn zero() -> Self {
        QuadScalar::rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadScalar {
    fn one() -> Self {
        QuadScalar::rational(Rational::one())
    }
}

impl Add for QuadScalar {
    type Output = QuadScalar;

    fn add(self, rhs: QuadScalar) -> QuadScalar {
        let d = self.merge(&rhs);
        QuadScalar { a: self.a + rhs.a, b: self.b + rhs.b, discriminant: d }
    }
}

impl Sub for QuadScalar {
    type Output = QuadScalar;

    fn sub(self, rhs: QuadScalar) -> QuadScalar {
        let d = self.merge(&rhs);
        QuadScalar { a: self.a - rhs.a, b: self.b - rhs.b, discriminant: d }
    }
}

impl Mul for QuadScalar {
    type Output = QuadScalar;

    fn mul(self, rhs: QuadScalar) -> QuadScalar {
        let d = self.merge(&rhs);
        let dd = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + dd * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadScalar { a, b, discriminant: d }
    }
}

impl Div for QuadScalar {
    type Output = QuadScalar;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: QuadScalar) -> QuadScalar {
        let d = self.merge(&rhs);
        let mut inv = rhs.inv();
        inv.discriminant = d;
        self * inv
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;

    fn neg(self) -> QuadScalar {
        QuadScalar { a: -self.a, b: -self.b, discriminant: self.discriminant }
    }
}

impl fmt::Display for QuadScalar {
    /// `a+b*sqrt(D)`, with the irrational part omitted when it vanishes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, -self.b.clone(), self.discriminant)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.discriminant)
        }
    }
}
