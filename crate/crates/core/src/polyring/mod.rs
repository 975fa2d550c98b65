//! Dense univariate polynomials over `F_q`.
//!
//! Coefficients are stored low degree first and trimmed, so the zero
//! polynomial has an empty coefficient vector and degree [`Degree::NegInf`].
//! Polynomials are ordered canonically: by degree, then by coefficients from
//! the highest power down, each compared by its field index.

mod enumerate;
mod factor;
mod irreducible;
mod symbol;

pub use enumerate::{enumerate_polys, DegreeRange};
pub use factor::Factorization;
pub use symbol::{count_irreducibles, legendre_symbol, mobius};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FieldSpec};

/// Polynomial degree with `-inf` for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone)]
pub struct Polynomial {
    field: Arc<FieldSpec>,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: &Arc<FieldSpec>, mut coeffs: Vec<FieldElement>) -> Polynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial {
            field: Arc::clone(field),
            coeffs,
        }
    }

    /// Coefficients given as field indices, reduced modulo the field size.
    pub fn from_indices(field: &Arc<FieldSpec>, coeffs: &[u64]) -> Polynomial {
        let coeffs = coeffs.iter().map(|&c| field.element(c)).collect();
        Polynomial::new(field, coeffs)
    }

    /// Coefficients given as integers, mapped into the prime subfield.
    pub fn from_ints(field: &Arc<FieldSpec>, coeffs: &[i64]) -> Polynomial {
        let coeffs = coeffs.iter().map(|&c| field.from_int(c)).collect();
        Polynomial::new(field, coeffs)
    }

    pub fn zero(field: &Arc<FieldSpec>) -> Polynomial {
        Polynomial::new(field, Vec::new())
    }

    pub fn one(field: &Arc<FieldSpec>) -> Polynomial {
        Polynomial::constant(field, FieldElement::ONE)
    }

    pub fn constant(field: &Arc<FieldSpec>, c: FieldElement) -> Polynomial {
        Polynomial::new(field, vec![c])
    }

    /// The indeterminate `T`.
    pub fn t(field: &Arc<FieldSpec>) -> Polynomial {
        Polynomial::monomial(field, FieldElement::ONE, 1)
    }

    /// `c * T^k`.
    pub fn monomial(field: &Arc<FieldSpec>, c: FieldElement, k: usize) -> Polynomial {
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = c;
        Polynomial::new(field, coeffs)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree with the zero polynomial mapped to 0; only for loops that
    /// have already excluded zero.
    fn deg_or_zero(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElement::ONE
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&FieldElement::ONE)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading_coefficient(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn same_field(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    fn check_field(&self, other: &Polynomial) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn assert_field(&self, other: &Polynomial) {
        assert!(self.same_field(other), "polynomials over different fields");
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        let f = &self.field;
        Polynomial::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Splits off the leading coefficient: returns `(lc, monic)` with
    /// `self = lc * monic`. The zero polynomial maps to `(0, 0)`.
    pub fn monic_split(&self) -> (FieldElement, Polynomial) {
        let lc = self.leading_coefficient();
        if lc.is_zero() || lc == FieldElement::ONE {
            return (lc, self.clone());
        }
        let inv = self.field.inv(lc).expect("nonzero leading coefficient");
        (lc, self.scale(inv))
    }

    pub fn monic(&self) -> Polynomial {
        self.monic_split().1
    }

    fn add_impl(&self, other: &Polynomial) -> Polynomial {
        self.assert_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Polynomial::new(f, coeffs)
    }

    fn sub_impl(&self, other: &Polynomial) -> Polynomial {
        self.assert_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Polynomial::new(f, coeffs)
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        self.assert_field(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.field);
        }
        let f = &self.field;
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        if f.degree() == 1 {
            let p = f.characteristic();
            let mut acc = vec![0u64; n];
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.coeffs.iter().enumerate() {
                    acc[i + j] = (acc[i + j] + a.index() * b.index()) % p;
                }
            }
            return Polynomial::from_indices(f, &acc);
        }
        let mut coeffs = vec![FieldElement::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Polynomial::new(f, coeffs)
    }

    pub fn square(&self) -> Polynomial {
        self.mul_impl(self)
    }

    /// Euclidean division: `(quotient, remainder)` with `deg r < deg g`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = divisor.deg_or_zero();
        if self.coeffs.len() <= dd {
            return Ok((Polynomial::zero(f), self.clone()));
        }
        let inv_lc = f.inv(divisor.leading_coefficient())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c.is_zero() {
                continue;
            }
            let t = f.mul(c, inv_lc);
            quot[k - dd] = t;
            for (j, &g) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] = f.sub(rem[k - dd + j], f.mul(t, g));
            }
        }
        rem.truncate(dd);
        Ok((Polynomial::new(f, quot), Polynomial::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; errors when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::CheckFailed(format!(
                "{divisor} does not divide {self}"
            )))
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Polynomial {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int((i as u64 % f.characteristic()) as i64), c))
            .collect();
        Polynomial::new(f, coeffs)
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Polynomial) -> Result<Polynomial> {
        self.check_field(modulus)?;
        if modulus.is_constant() {
            return Err(Error::ConstantModulus);
        }
        let base = self.rem(modulus)?;
        let mut acc = Polynomial::one(&self.field);
        for i in (0..e.bits()).rev() {
            acc = acc.square().rem(modulus)?;
            if e.bit(i) {
                acc = (&acc * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Polynomial part of the square root in `F_q((1/T))`: the `r` with
    /// `deg r = deg self / 2`, leading coefficient the smaller square root
    /// of the leading coefficient, and `deg(self - r^2) < deg r`. `None`
    /// when the degree is odd or the leading coefficient is a non-square.
    pub fn sqrt_polynomial_part(&self) -> Option<Polynomial> {
        let f = &self.field;
        let n = self.degree().finite()?;
        if n % 2 == 1 {
            return None;
        }
        let k = n / 2;
        let s = f.sqrt(self.leading_coefficient())?;
        let inv_two_s = f.inv(f.add(s, s)).ok()?;
        let mut r = vec![FieldElement::ZERO; k + 1];
        r[k] = s;
        for j in (0..k).rev() {
            // Coefficient of T^{k+j} in r^2 using the already-fixed r_{j+1..k}.
            let mut c = FieldElement::ZERO;
            for a in (j + 1)..=k {
                let b = k + j - a;
                if b > j && b <= k {
                    c = f.add(c, f.mul(r[a], r[b]));
                }
            }
            r[j] = f.mul(f.sub(self.coeff(k + j), c), inv_two_s);
        }
        Some(Polynomial::new(f, r))
    }

    /// Exact square root, if `self` is a square in `F_q[T]`.
    pub fn sqrt(&self) -> Option<Polynomial> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let r = self.sqrt_polynomial_part()?;
        (r.square() == *self).then_some(r)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.same_field(other)
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_impl(rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.sub_impl(rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_impl(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let f = &self.field;
        Polynomial::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

/// Renders a field element; extension-field elements are written as
/// polynomials in the generator `a`.
pub fn render_element(field: &FieldSpec, c: FieldElement) -> String {
    if field.degree() == 1 {
        return c.index().to_string();
    }
    let digits = field.coefficients(c);
    let terms: Vec<String> = digits
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| match (i, d) {
            (0, d) => d.to_string(),
            (1, 1) => "a".to_string(),
            (1, d) => format!("{d}*a"),
            (i, 1) => format!("a^{i}"),
            (i, d) => format!("{d}*a^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let rendered = render_element(&self.field, c);
            let coeff = if rendered.contains('+') {
                format!("({rendered})")
            } else {
                rendered
            };
            match i {
                0 => f.write_str(&coeff)?,
                _ => {
                    if c != FieldElement::ONE {
                        write!(f, "{coeff}*")?;
                    }
                    f.write_str("T")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self} over {:?})", self.field)
    }
}

/// Binary operations exposed as a single checked entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivRem,
    Gcd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyOutput {
    Single(Polynomial),
    Pair(Polynomial, Polynomial),
}

/// Applies `op` after checking that both operands share a base field.
pub fn poly_arith(op: PolyOp, f: &Polynomial, g: &Polynomial) -> Result<PolyOutput> {
    f.check_field(g)?;
    Ok(match op {
        PolyOp::Add => PolyOutput::Single(f + g),
        PolyOp::Sub => PolyOutput::Single(f - g),
        PolyOp::Mul => PolyOutput::Single(f * g),
        PolyOp::DivRem => {
            let (q, r) = f.div_rem(g)?;
            PolyOutput::Pair(q, r)
        }
        PolyOp::Gcd => PolyOutput::Single(f.gcd(g)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::prime(p).unwrap())
    }

    #[test]
    fn gcd_is_monic() {
        let f5 = field(5);
        let a = Polynomial::from_ints(&f5, &[-1, 0, 1]);
        let b = Polynomial::from_ints(&f5, &[-1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);
        let b3 = b.scale(f5.element(3));
        assert_eq!(a.gcd(&b3).unwrap(), b);
        assert!(Polynomial::zero(&f5)
            .gcd(&Polynomial::zero(&f5))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn product_of_paper_witness() {
        let f5 = field(5);
        let x = Polynomial::from_ints(&f5, &[2, 1]);
        assert_eq!(&x * &x, Polynomial::from_ints(&f5, &[4, 4, 1]));
    }

    #[test]
    fn long_division_over_f3() {
        let f3 = field(3);
        let t3 = Polynomial::from_ints(&f3, &[0, 0, 0, 1]);
        let m = Polynomial::from_ints(&f3, &[1, 0, 1]);
        let (q, r) = t3.div_rem(&m).unwrap();
        assert_eq!(q, Polynomial::t(&f3));
        assert_eq!(r, Polynomial::from_ints(&f3, &[0, 2]));
        assert_eq!(
            t3.div_rem(&Polynomial::zero(&f3)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = Polynomial::t(&field(3));
        let b = Polynomial::t(&field(5));
        assert_eq!(poly_arith(PolyOp::Add, &a, &b), Err(Error::FieldMismatch));
        assert_eq!(a.div_rem(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn pow_mod_examples() {
        let f3 = field(3);
        let t = Polynomial::t(&f3);
        let m = Polynomial::from_ints(&f3, &[1, 0, 1]);
        assert_eq!(t.pow_mod(&BigUint::from(9u32), &m).unwrap(), t);
        assert_eq!(t.pow_mod(&BigUint::from(1u32), &m).unwrap(), t);
        let big = Polynomial::from_ints(&f3, &[1, 2, 0, 1, 1]);
        assert_eq!(
            big.pow_mod(&BigUint::from(1u32), &m).unwrap(),
            big.rem(&m).unwrap()
        );
        assert_eq!(
            t.pow_mod(&BigUint::from(3u32), &Polynomial::one(&f3)),
            Err(Error::ConstantModulus)
        );

        let f5 = field(5);
        let t = Polynomial::t(&f5);
        let m = Polynomial::from_ints(&f5, &[2, 0, 1]);
        let frob = t.pow_mod(&BigUint::from(25u32), &m).unwrap();
        assert_eq!(frob == t, m.is_irreducible());
        assert!(m.is_irreducible());
    }

    #[test]
    fn degree_sentinel() {
        let f3 = field(3);
        let z = Polynomial::zero(&f3);
        assert_eq!(z.degree(), Degree::NegInf);
        assert!(Degree::NegInf < Degree::Finite(0));
        assert_eq!(z.degree() + Degree::Finite(4), Degree::NegInf);
        assert_eq!((&z * &Polynomial::t(&f3)).degree(), Degree::NegInf);
    }

    #[test]
    fn canonical_order() {
        let f3 = field(3);
        let a = Polynomial::from_ints(&f3, &[2, 1]); // T+2
        let b = Polynomial::from_ints(&f3, &[0, 2]); // 2T
        let c = Polynomial::from_ints(&f3, &[0, 0, 1]);
        assert!(Polynomial::zero(&f3) < Polynomial::one(&f3));
        assert!(a < b && b < c);
    }

    #[test]
    fn derivative_in_characteristic_3() {
        let f3 = field(3);
        let t3 = Polynomial::from_ints(&f3, &[0, 0, 0, 1]);
        assert!(t3.derivative().is_zero());
        let f = Polynomial::from_ints(&f3, &[1, 1, 1]);
        assert_eq!(f.derivative(), Polynomial::from_ints(&f3, &[1, 2]));
    }

    #[test]
    fn square_roots() {
        let f5 = field(5);
        let x = Polynomial::from_ints(&f5, &[2, 1, 3]);
        let sq = x.square();
        let r = sq.sqrt().unwrap();
        assert!(r == x || r == -&x);
        assert!(Polynomial::from_ints(&f5, &[1, 0, 1]).sqrt().is_none());
        // Polynomial part of sqrt(T^2 + T) over F_3 is T + 2.
        let f3 = field(3);
        let d = Polynomial::from_ints(&f3, &[0, 1, 1]);
        assert_eq!(
            d.sqrt_polynomial_part().unwrap(),
            Polynomial::from_ints(&f3, &[2, 1])
        );
    }

    #[test]
    fn display() {
        let f5 = field(5);
        let d = Polynomial::from_ints(
            &f5,
            &[2, 0, 0, 0, 0, 0, 0, 0, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
        );
        assert_eq!(d.to_string(), "T^19+3*T^8+2");
        assert_eq!(Polynomial::from_ints(&f5, &[2, 4]).to_string(), "4*T+2");
        assert_eq!(Polynomial::zero(&f5).to_string(), "0");
        let f9 = Arc::new(FieldSpec::new(3, 2).unwrap());
        let c = f9.from_coefficients(&[1, 1]);
        let p = Polynomial::new(&f9, vec![f9.generator(), c]);
        assert_eq!(p.to_string(), "(a+1)*T+a");
    }
}
