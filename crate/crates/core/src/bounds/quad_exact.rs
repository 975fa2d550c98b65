//! Exact numbers `a + b*sqrt(q)` with rational `a`, `b`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `a + b*sqrt(radicand)`. Rational values carry radicand 1; a perfect-square
/// radicand is folded into `a` on construction, so an irrational value always
/// has a non-square radicand and comparisons can be decided by squaring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExact {
    a: BigRational,
    b: BigRational,
    radicand: u64,
}

fn exact_sqrt(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

impl QuadExact {
    pub fn new(a: BigRational, b: BigRational, radicand: u64) -> QuadExact {
        if b.is_zero() || radicand == 1 {
            return QuadExact {
                a: a + b,
                b: BigRational::zero(),
                radicand: 1,
            };
        }
        if let Some(s) = exact_sqrt(radicand) {
            return QuadExact {
                a: a + b * BigRational::from_integer(BigInt::from(s)),
                b: BigRational::zero(),
                radicand: 1,
            };
        }
        QuadExact { a, b, radicand }
    }

    pub fn rational(a: BigRational) -> QuadExact {
        QuadExact::new(a, BigRational::zero(), 1)
    }

    pub fn integer(n: impl Into<BigInt>) -> QuadExact {
        QuadExact::rational(BigRational::from_integer(n.into()))
    }

    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> QuadExact {
        QuadExact::rational(BigRational::new(num.into(), den.into()))
    }

    /// `sqrt(q)`.
    pub fn sqrt(q: u64) -> QuadExact {
        QuadExact::new(BigRational::zero(), BigRational::one(), q)
    }

    /// `q^(n/2)`.
    pub fn half_power(q: u64, n: u32) -> QuadExact {
        let whole = BigRational::from_integer(BigInt::from(q).pow(n / 2));
        if n % 2 == 0 {
            QuadExact::rational(whole)
        } else {
            QuadExact::new(BigRational::zero(), whole, q)
        }
    }

    pub fn zero() -> QuadExact {
        QuadExact::integer(0)
    }

    pub fn one() -> QuadExact {
        QuadExact::integer(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn common_radicand(&self, other: &QuadExact) -> Result<u64> {
        match (self.radicand, other.radicand) {
            (1, r) | (r, 1) => Ok(r),
            (r, s) if r == s => Ok(r),
            (r, s) => Err(Error::RadicandMismatch(r, s)),
        }
    }

    pub fn checked_add(&self, other: &QuadExact) -> Result<QuadExact> {
        let r = self.common_radicand(other)?;
        Ok(QuadExact::new(&self.a + &other.a, &self.b + &other.b, r))
    }

    pub fn checked_mul(&self, other: &QuadExact) -> Result<QuadExact> {
        let r = self.common_radicand(other)?;
        let rq = BigRational::from_integer(BigInt::from(r));
        let a = &self.a * &other.a + &self.b * &other.b * rq;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadExact::new(a, b, r))
    }

    pub fn checked_cmp(&self, other: &QuadExact) -> Result<Ordering> {
        self.common_radicand(other)?;
        Ok((self - other).signum())
    }

    pub fn scale(&self, k: &BigRational) -> QuadExact {
        QuadExact::new(&self.a * k, &self.b * k, self.radicand)
    }

    pub fn pow(&self, mut e: u32) -> QuadExact {
        let mut base = self.clone();
        let mut acc = QuadExact::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign, decided exactly: when `a` and `b` disagree, compare `a^2`
    /// against `b^2 * q`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.radicand));
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    /// `floor(b * sqrt(q))` for the surd part alone.
    fn floor_surd(&self) -> BigInt {
        if self.b.is_zero() {
            return BigInt::zero();
        }
        let num = self.b.numer().abs();
        let den = self.b.denom().clone();
        // |b| sqrt(q) = sqrt(num^2 q) / den
        let radicand = &num * &num * BigInt::from(self.radicand);
        let root = radicand.sqrt();
        let perfect = &root * &root == radicand;
        let down = num_integer::Integer::div_floor(&root, &den);
        if self.b.is_positive() {
            down
        } else if perfect && num_integer::Integer::is_multiple_of(&root, &den) {
            -down
        } else {
            -down - 1
        }
    }

    pub fn floor(&self) -> BigInt {
        let base = self.a.floor().to_integer() + self.floor_surd();
        // The value lies in [base, base + 2).
        let next = QuadExact::integer(&base + 1);
        if *self >= next {
            base + 1
        } else {
            base
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.radicand as f64).sqrt()
    }
}

/// Smallest integer `>= n^(1/3)`.
pub fn ceil_cube_root(n: &BigUint) -> BigUint {
    let r = n.cbrt();
    if &(&r * &r * &r) == n {
        r
    } else {
        r + 1u32
    }
}

impl Ord for QuadExact {
    fn cmp(&self, other: &Self) -> Ordering {
        self.checked_cmp(other)
            .expect("comparison across radicands")
    }
}

impl PartialOrd for QuadExact {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &QuadExact {
    type Output = QuadExact;
    fn add(self, rhs: &QuadExact) -> QuadExact {
        self.checked_add(rhs).expect("addition across radicands")
    }
}

impl Sub for &QuadExact {
    type Output = QuadExact;
    fn sub(self, rhs: &QuadExact) -> QuadExact {
        self + &(-rhs)
    }
}

impl Mul for &QuadExact {
    type Output = QuadExact;
    fn mul(self, rhs: &QuadExact) -> QuadExact {
        self.checked_mul(rhs).expect("product across radicands")
    }
}

impl Neg for &QuadExact {
    type Output = QuadExact;
    fn neg(self) -> QuadExact {
        QuadExact {
            a: -&self.a,
            b: -&self.b,
            radicand: self.radicand,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadExact {
            type Output = QuadExact;
            fn $m(self, rhs: QuadExact) -> QuadExact {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QuadExact {
    type Output = QuadExact;
    fn neg(self) -> QuadExact {
        -&self
    }
}

impl fmt::Display for QuadExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let surd = if self.b.is_one() {
            format!("sqrt({})", self.radicand)
        } else if self.b == -BigRational::one() {
            format!("-sqrt({})", self.radicand)
        } else {
            format!("{}*sqrt({})", self.b, self.radicand)
        };
        if self.a.is_zero() {
            f.write_str(&surd)
        } else if self.b.is_negative() {
            write!(f, "{}{}", self.a, surd)
        } else {
            write!(f, "{}+{}", self.a, surd)
        }
    }
}

/// Operations exposed through [`quad_exact_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Mul,
    Cmp,
    /// Raises the left operand to the power given by the right operand,
    /// which must be a nonnegative integer.
    Pow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuadOutput {
    Value(QuadExact),
    Order(Ordering),
}

pub fn quad_exact_arith(op: QuadOp, u: &QuadExact, v: &QuadExact) -> Result<QuadOutput> {
    Ok(match op {
        QuadOp::Add => QuadOutput::Value(u.checked_add(v)?),
        QuadOp::Mul => QuadOutput::Value(u.checked_mul(v)?),
        QuadOp::Cmp => QuadOutput::Order(u.checked_cmp(v)?),
        QuadOp::Pow => {
            let e = v
                .is_rational()
                .then(|| v.a.to_integer())
                .filter(|_| v.a.is_integer())
                .and_then(|e| e.to_u32())
                .ok_or_else(|| {
                    Error::Hypothesis("exponent must be a nonnegative integer".into())
                })?;
            QuadOutput::Value(u.pow(e))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> QuadExact {
        QuadExact::integer(n)
    }

    #[test]
    fn examples() {
        let s5 = QuadExact::sqrt(5);
        let x = &int(1) + &s5;
        assert_eq!(
            x.pow(2),
            QuadExact::new(
                BigRational::from_integer(6.into()),
                BigRational::from_integer(2.into()),
                5
            )
        );
        assert_eq!((&int(2) + &s5).cmp(&int(5)), Ordering::Less);
        let p = s5.pow(9);
        assert!(p.rational_part().is_zero());
        assert_eq!(p.surd_part(), &BigRational::from_integer(625.into()));
        assert_eq!(QuadExact::half_power(5, 9), p);
    }

    #[test]
    fn radicand_mismatch() {
        let err = quad_exact_arith(QuadOp::Add, &QuadExact::sqrt(3), &QuadExact::sqrt(5));
        assert_eq!(err, Err(Error::RadicandMismatch(3, 5)));
        // Rationals mix with anything.
        assert!(quad_exact_arith(QuadOp::Mul, &int(3), &QuadExact::sqrt(5)).is_ok());
        assert_eq!(
            quad_exact_arith(QuadOp::Pow, &QuadExact::sqrt(5), &int(2)),
            Ok(QuadOutput::Value(int(5)))
        );
        assert!(quad_exact_arith(QuadOp::Pow, &int(2), &QuadExact::ratio(1, 2)).is_err());
    }

    #[test]
    fn square_radicands_collapse() {
        assert_eq!(QuadExact::sqrt(9), int(3));
        assert!(QuadExact::half_power(25, 3).is_rational());
        assert_eq!(QuadExact::half_power(25, 3), int(125));
    }

    #[test]
    fn floor_and_ceil() {
        let s3 = QuadExact::sqrt(3);
        assert_eq!(s3.floor(), BigInt::from(1));
        assert_eq!((-&s3).floor(), BigInt::from(-2));
        assert_eq!(s3.ceil(), BigInt::from(2));
        assert_eq!(int(4).floor(), BigInt::from(4));
        assert_eq!(QuadExact::ratio(-1, 2).floor(), BigInt::from(-1));
        let x = &QuadExact::ratio(7, 3)
            - &QuadExact::sqrt(2).scale(&BigRational::new(1.into(), 3.into()));
        assert_eq!(x.floor(), BigInt::from(1)); // (7 - 1.414)/3 = 1.86
    }

    #[test]
    fn cube_roots() {
        assert_eq!(ceil_cube_root(&BigUint::from(27u32)), BigUint::from(3u32));
        assert_eq!(ceil_cube_root(&BigUint::from(28u32)), BigUint::from(4u32));
        assert_eq!(ceil_cube_root(&BigUint::from(1u32)), BigUint::from(1u32));
    }
}
