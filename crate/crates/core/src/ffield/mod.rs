//! Exact arithmetic in finite fields `F_{p^m}` of odd characteristic.
//!
//! An element is stored as its *index*: the coefficient vector
//! `(c_0, .., c_{m-1})` of its polynomial representative packed as the base-`p`
//! integer `c_0 + c_1 p + .. + c_{m-1} p^{m-1}`. The index doubles as the
//! element's integer representative in the canonical order, so elements are
//! plain `Copy` values and every operation takes the [`FieldSpec`] explicitly.

mod tables;

pub use tables::{Embedding, LogTables, SquareOracle, SquareTable, LOG_ZERO};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::polyring::{DegreeRange, Polynomial};

const MAX_DIGITS: usize = 64;

/// An element of `F_{p^m}`, packed as a base-`p` index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A finite field `F_p[X] / (modulus)` with `p` an odd prime.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    m: usize,
    /// Monic modulus over `F_p`, low degree first, length `m + 1`.
    modulus: Vec<u64>,
    size: u64,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.size)?;
        if self.m > 1 {
            write!(f, " (mod {:?})", self.modulus)?;
        }
        Ok(())
    }
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut k = 3;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if !is_odd_prime(p) || p >= 1 << 31 {
            return Err(Error::InvalidField(format!(
                "characteristic {p} is not an odd prime below 2^31"
            )));
        }
        Ok(FieldSpec {
            p,
            m: 1,
            modulus: vec![0, 1],
            size: p,
        })
    }

    /// `F_{p^m}` built on the canonical modulus: the first monic irreducible
    /// of degree `m` over `F_p` in degree-lex order.
    pub fn new(p: u64, m: usize) -> Result<FieldSpec> {
        let base = FieldSpec::prime(p)?;
        if m == 0 {
            return Err(Error::InvalidField(
                "extension degree must be at least 1".into(),
            ));
        }
        if m == 1 {
            return Ok(base);
        }
        let size = checked_size(p, m)?;
        let base = Arc::new(base);
        let candidates = DegreeRange::exact(m, true);
        for rank in 0..candidates.len(p) {
            let f = candidates.get(&base, rank);
            if f.is_irreducible() {
                return Ok(FieldSpec {
                    p,
                    m,
                    modulus: f.coeffs().iter().map(|c| c.index()).collect(),
                    size,
                });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// `F_{p^m}` built on a caller-supplied monic irreducible modulus
    /// (coefficients low degree first, entries reduced mod `p`).
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<FieldSpec> {
        let base = Arc::new(FieldSpec::prime(p)?);
        let f = Polynomial::from_indices(&base, modulus);
        let m = f
            .degree()
            .finite()
            .filter(|&m| m >= 1)
            .ok_or_else(|| Error::InvalidField("modulus must be nonconstant".into()))?;
        if f.leading_coefficient() != FieldElement::ONE {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !f.is_irreducible() {
            return Err(Error::NotIrreducible(format!("{f}")));
        }
        let size = checked_size(p, m)?;
        Ok(FieldSpec {
            p,
            m,
            modulus: f.coeffs().iter().map(|c| c.index()).collect(),
            size,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// Number of elements `p^m`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The class of `X` in `F_p[X]/(modulus)`; for a prime field this is
    /// the root of `X`, i.e. zero.
    pub fn generator(&self) -> FieldElement {
        if self.m == 1 {
            FieldElement::ZERO
        } else {
            FieldElement(self.p)
        }
    }

    /// Element with the given index; indices are reduced modulo the field size.
    pub fn element(&self, index: u64) -> FieldElement {
        FieldElement(index % self.size)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u64)
    }

    /// Element from its coefficient vector over `F_p` (low degree first).
    /// Out-of-range entries are reduced; missing entries are zero.
    pub fn from_coefficients(&self, coeffs: &[u64]) -> FieldElement {
        let mut digits = [0u64; MAX_DIGITS];
        for (i, &c) in coeffs.iter().enumerate() {
            if i < self.m {
                digits[i] = c % self.p;
            } else {
                // Fold higher powers back through the modulus.
                return self.fold_long_digits(coeffs);
            }
        }
        self.compose(&digits[..self.m])
    }

    fn fold_long_digits(&self, coeffs: &[u64]) -> FieldElement {
        let mut buf: Vec<u64> = coeffs.iter().map(|c| c % self.p).collect();
        self.reduce_digits(&mut buf);
        self.compose(&buf[..self.m])
    }

    /// Coefficient vector of `a` over `F_p`, low degree first, length `m`.
    pub fn coefficients(&self, a: FieldElement) -> Vec<u64> {
        let mut d = [0u64; MAX_DIGITS];
        self.decompose(a, &mut d);
        d[..self.m].to_vec()
    }

    /// Iterates every element in canonical (index) order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size).map(FieldElement)
    }

    #[inline]
    fn decompose(&self, a: FieldElement, out: &mut [u64]) {
        let mut v = a.0;
        for slot in out.iter_mut().take(self.m) {
            *slot = v % self.p;
            v /= self.p;
        }
    }

    #[inline]
    fn compose(&self, digits: &[u64]) -> FieldElement {
        let mut v = 0u64;
        for &d in digits[..self.m].iter().rev() {
            v = v * self.p + d;
        }
        FieldElement(v)
    }

    /// Reduces a digit vector of arbitrary length modulo the field modulus
    /// in place; afterwards only the first `m` entries are meaningful.
    fn reduce_digits(&self, buf: &mut [u64]) {
        let p = self.p;
        let m = self.m;
        for k in (m..buf.len()).rev() {
            let c = buf[k] % p;
            if c == 0 {
                continue;
            }
            buf[k] = 0;
            for j in 0..m {
                let t = c * self.modulus[j] % p;
                buf[k - m + j] = (buf[k - m + j] + p - t) % p;
            }
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= self.p { s - self.p } else { s });
        }
        let p = self.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            let s = (x % p + y % p) % p;
            out += s * place;
            place = place.wrapping_mul(p);
            x /= p;
            y /= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let p = self.p;
        let mut x = a.0;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            let d = x % p;
            out += ((p - d) % p) * place;
            place = place.wrapping_mul(p);
            x /= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement(a.0 * b.0 % self.p);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let mut da = [0u64; MAX_DIGITS];
        let mut db = [0u64; MAX_DIGITS];
        self.decompose(a, &mut da);
        self.decompose(b, &mut db);
        let mut prod = [0u64; 2 * MAX_DIGITS];
        self.mul_digits(&da[..self.m], &db[..self.m], &mut prod);
        self.compose(&prod[..self.m])
    }

    /// Multiplies two reduced digit vectors; the reduced product is left in
    /// `prod[..m]`.
    pub(crate) fn mul_digits(&self, a: &[u64], b: &[u64], prod: &mut [u64]) {
        let p = self.p;
        let m = self.m;
        for slot in prod.iter_mut().take(2 * m - 1) {
            *slot = 0;
        }
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
        }
        self.reduce_digits(&mut prod[..2 * m - 1]);
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// `a^e` by square-and-multiply; `a^0 = 1` for every `a`, zero included.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: FieldElement, e: &BigUint) -> FieldElement {
        let mut acc = FieldElement::ONE;
        for i in (0..e.bits()).rev() {
            acc = self.mul(acc, acc);
            if e.bit(i) {
                acc = self.mul(acc, a);
            }
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.m == 1 {
            return Ok(FieldElement(mod_inverse(a.0, self.p)));
        }
        Ok(self.pow(a, self.size - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Euler's criterion: `a` is a square iff `a = 0` or `a^((q-1)/2) = 1`.
    pub fn is_square(&self, a: FieldElement) -> bool {
        a.is_zero() || self.pow(a, (self.size - 1) / 2) == FieldElement::ONE
    }

    /// Quadratic character: `0`, `1` or `-1`.
    pub fn chi(&self, a: FieldElement) -> i8 {
        if a.is_zero() {
            0
        } else if self.pow(a, (self.size - 1) / 2) == FieldElement::ONE {
            1
        } else {
            -1
        }
    }

    /// A square root of `a`, choosing the root with the smaller index.
    pub fn sqrt(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return Some(a);
        }
        if !self.is_square(a) {
            return None;
        }
        // Tonelli-Shanks on q - 1 = 2^s * t.
        let mut t = self.size - 1;
        let mut s = 0;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let z = self
            .elements()
            .skip(1)
            .find(|&z| !self.is_square(z))
            .expect("odd field has a non-square");
        let mut c = self.pow(z, t);
        let mut x = self.pow(a, t.div_ceil(2));
        let mut b = self.pow(a, t);
        let mut r = s;
        while b != FieldElement::ONE {
            let mut i = 0;
            let mut b2 = b;
            while b2 != FieldElement::ONE {
                b2 = self.square(b2);
                i += 1;
            }
            let mut w = c;
            for _ in 0..(r - i - 1) {
                w = self.square(w);
            }
            x = self.mul(x, w);
            c = self.square(w);
            b = self.mul(b, c);
            r = i;
        }
        let other = self.neg(x);
        Some(x.min(other))
    }

    /// Multiplicative order of `a` divides `q - 1`; returns true when it
    /// equals `q - 1`.
    pub fn is_primitive(&self, a: FieldElement) -> bool {
        if a.is_zero() {
            return false;
        }
        let order = self.size - 1;
        prime_factors(order)
            .into_iter()
            .all(|l| self.pow(a, order / l) != FieldElement::ONE)
    }

    /// First primitive element in canonical order.
    pub fn primitive_element(&self) -> FieldElement {
        self.elements()
            .skip(1)
            .find(|&a| self.is_primitive(a))
            .expect("the multiplicative group is cyclic")
    }
}

fn checked_size(p: u64, m: usize) -> Result<u64> {
    let size = (p as u128).checked_pow(m as u32).filter(|&s| s < 1 << 63);
    size.map(|s| s as u64).ok_or(Error::FieldTooLarge {
        size: u128::MAX,
        cap: 1 << 63,
    })
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u64
}

/// Distinct prime divisors of `n`, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    #[test]
    fn prime_field_arith() {
        let f = f5();
        assert_eq!(f.add(f.element(3), f.element(4)), f.element(2));
        assert_eq!(f.div(f.element(2), f.element(3)).unwrap(), f.element(4));
        assert_eq!(f.mul(f.element(3), f.element(4)), f.element(2));
        assert_eq!(f.div(f.one(), f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn f9_uses_i_squared_plus_one() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let one_plus_i = f9.from_coefficients(&[1, 1]);
        assert_eq!(
            f9.mul(one_plus_i, one_plus_i),
            f9.from_coefficients(&[0, 2])
        );
    }

    #[test]
    fn powers() {
        let f = f5();
        for a in f.elements() {
            assert_eq!(f.pow(a, 0), f.one());
        }
        assert_eq!(f.pow(f.element(2), 4), f.one());
        assert_eq!(f.pow(f.element(3), 2), f.element(4));
        assert_eq!(f.pow_big(f.element(3), &BigUint::from(2u32)), f.element(4));
    }

    #[test]
    fn squares_mod_5() {
        let f = f5();
        assert!(f.is_square(f.zero()));
        assert!(f.is_square(f.element(4)));
        assert!(!f.is_square(f.element(2)));
        assert!(!f.is_square(f.element(3)));
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert!(FieldSpec::prime(2).is_err());
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::new(3, 0).is_err());
        assert!(FieldSpec::with_modulus(3, &[2, 0, 1]).is_err()); // T^2 + 2 = (T+1)(T+2)
    }

    #[test]
    fn sqrt_roundtrip() {
        for (p, m) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3)] {
            let f = FieldSpec::new(p, m).unwrap();
            for a in f.elements() {
                match f.sqrt(a) {
                    Some(r) => assert_eq!(f.square(r), a),
                    None => assert!(!f.is_square(a)),
                }
            }
        }
    }

    #[test]
    fn inverse_and_frobenius() {
        for (p, m) in [(3, 1), (5, 1), (3, 2), (3, 3), (5, 2), (7, 2)] {
            let f = FieldSpec::new(p, m).unwrap();
            for a in f.elements() {
                assert_eq!(f.pow(a, f.size()), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.div(f.one(), a).unwrap()), f.one());
                }
            }
        }
    }

    #[test]
    fn coefficient_roundtrip_and_reduction() {
        let f = FieldSpec::new(5, 3).unwrap();
        for a in f.elements().step_by(7) {
            assert_eq!(f.from_coefficients(&f.coefficients(a)), a);
        }
        // X^3 folds back through the modulus.
        let x = f.generator();
        assert_eq!(f.from_coefficients(&[0, 0, 0, 1]), f.pow(x, 3));
        assert_eq!(f.from_int(-1), f.element(4));
        assert_eq!(f.from_int(7), f.element(2));
    }

    #[test]
    fn primitive_elements() {
        let f = f5();
        assert_eq!(f.primitive_element(), f.element(2));
        let f9 = FieldSpec::new(3, 2).unwrap();
        let g = f9.primitive_element();
        let mut seen = std::collections::HashSet::new();
        let mut x = f9.one();
        for _ in 0..8 {
            seen.insert(x);
            x = f9.mul(x, g);
        }
        assert_eq!(seen.len(), 8);
    }
}
