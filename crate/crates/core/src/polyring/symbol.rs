use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::Polynomial;
use crate::error::{Error, Result};

/// Möbius function.
pub fn mobius(n: u64) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            n /= k;
            if n % k == 0 {
                return 0;
            }
            sign = -sign;
        }
        k += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducibles of degree `n` over `F_q`:
/// `(1/n) * sum_{k | n} mu(k) q^(n/k)`.
pub fn count_irreducibles(q: u64, n: u32) -> BigUint {
    assert!(n >= 1, "degree must be positive");
    let q = BigUint::from(q);
    let mut plus = BigUint::zero();
    let mut minus = BigUint::zero();
    for k in 1..=n {
        if n % k != 0 {
            continue;
        }
        let term = q.pow(n / k);
        match mobius(k as u64) {
            1 => plus += term,
            -1 => minus += term,
            _ => {}
        }
    }
    (plus - minus) / BigUint::from(n)
}

/// Quadratic residue symbol `(d / p)` for a monic irreducible `p`:
/// `0` if `p | d`, `1` if `d` is a nonzero square modulo `p`, else `-1`.
pub fn legendre_symbol(d: &Polynomial, p: &Polynomial) -> Result<i8> {
    if !p.is_monic() || !p.is_irreducible() {
        return Err(Error::NotIrreducible(format!("{p}")));
    }
    let r = d.rem(p)?;
    if r.is_zero() {
        return Ok(0);
    }
    let n = p.degree().finite().expect("nonzero") as u32;
    let e = (BigUint::from(p.field().size()).pow(n) - BigUint::one()) / 2u32;
    let s = r.pow_mod(&e, p)?;
    if s.is_one() {
        Ok(1)
    } else {
        debug_assert_eq!(s, -&Polynomial::one(p.field()));
        Ok(-1)
    }
}
