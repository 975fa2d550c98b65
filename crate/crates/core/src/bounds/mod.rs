//! Exact evaluation of the degree bound for the smallest irreducible
//! `x^2 - d y^2`, the class-number lower bound, and the terms of the
//! effective Chebotarev inequality, all in `Q[sqrt(q)]`.

mod quad_exact;

pub use quad_exact::{ceil_cube_root, quad_exact_arith, QuadExact, QuadOp, QuadOutput};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::error::{Error, Result};

pub fn ceil_half(deg_d: u32) -> u32 {
    deg_d.div_ceil(2)
}

fn frac(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Upper bound for `[L:K]`: `(sqrt(q)+1)^(deg d - 1)` for odd `deg d`,
/// `2 (sqrt(q)+1)^(deg d - 2) / deg d` for even `deg d`.
pub fn r_hat(q: u64, deg_d: u32) -> QuadExact {
    assert!(deg_d >= 1, "deg d must be positive");
    let base = &QuadExact::sqrt(q) + &QuadExact::one();
    if deg_d % 2 == 1 {
        base.pow(deg_d - 1)
    } else {
        base.pow(deg_d - 2).scale(&frac(2, deg_d))
    }
}

/// `M = 2 r ceil(deg d / 2) + 2`.
pub fn degree_bound_m(deg_d: u32, r: &QuadExact) -> QuadExact {
    let k = BigRational::from_integer(BigInt::from(2 * ceil_half(deg_d)));
    &r.scale(&k) + &QuadExact::integer(2)
}

/// Least `n >= 1` with `q^n >= M^4`, i.e. `ceil(4 log M / log q)`.
pub fn degree_bound(q: u64, deg_d: u32, r: &QuadExact) -> u32 {
    let m4 = degree_bound_m(deg_d, r).pow(4);
    let mut n = 1u32;
    let mut qn = QuadExact::integer(q);
    while qn < m4 {
        n += 1;
        qn = &qn * &QuadExact::integer(q);
    }
    n
}

/// Floating-point `ceil(4 log M / log q)`, kept only to cross-check the exact route.
pub fn degree_bound_f64(q: u64, deg_d: u32, r: f64) -> i64 {
    let m = 2.0 * r * ceil_half(deg_d) as f64 + 2.0;
    (4.0 * m.ln() / (q as f64).ln()).ceil() as i64
}

/// Lower bound `(q^((deg d - 1)/4) - 2) / (deg d + 1)` on `h_K` for odd
/// `deg d`, with the least integer strictly above it.
pub fn class_number_lower_bound(q: u64, deg_d: u32) -> Result<(QuadExact, BigInt)> {
    if deg_d % 2 == 0 {
        return Err(Error::Hypothesis(format!(
            "the class-number bound needs odd deg d, got {deg_d}"
        )));
    }
    // q^((deg d - 1)/4) = q^(e/2) with e = (deg d - 1)/2
    let e = (deg_d - 1) / 2;
    let value = (&QuadExact::half_power(q, e) - &QuadExact::integer(2)).scale(&frac(1, deg_d + 1));
    let integer = value.floor() + 1;
    Ok((value, integer))
}

/// Right-hand side of the effective Chebotarev inequality over a base of
/// genus 0:
/// `2 g_L (|C|/|G|) q^(n/2)/n + 2 |C| q^(n/2)/n + (1 + |C|/n) |D|`.
pub fn cdt_rhs(
    q: u64,
    n: u32,
    genus_l: u64,
    c_size: u64,
    g_size: u64,
    different: u64,
) -> QuadExact {
    assert!(n >= 1 && g_size >= 1);
    let qn2 = QuadExact::half_power(q, n);
    let genus_base = 0u64;
    let first = qn2.scale(&frac(2 * genus_l * c_size, g_size * n as u64));
    let second = qn2.scale(&frac(2 * (2 * genus_base + 1) * c_size, n));
    let third = QuadExact::rational(frac(different * (n as u64 + c_size), n));
    &(&first + &second) + &third
}

/// `q^n/n - q^(n/2)/n - ceil(q^(n/3)) - 2 r ceil(deg d/2)/n`, a lower bound
/// for the number of unramified degree-`n` primes. The cube-root term is
/// rounded up so the value never over-estimates.
pub fn pi_lower_bound(q: u64, n: u32, deg_d: u32, r: u64) -> QuadExact {
    assert!(n >= 1);
    let qn = BigUint::from(q).pow(n);
    let main = QuadExact::rational(frac(BigInt::from(qn.clone()), n));
    let half = QuadExact::half_power(q, n).scale(&frac(1, n));
    let cube = QuadExact::integer(BigInt::from(ceil_cube_root(&qn)));
    let ram = QuadExact::rational(frac(2 * r * ceil_half(deg_d) as u64, n));
    &(&(&main - &half) - &cube) - &ram
}

/// Everything the degree bound needs for one `(q, deg d, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub q: u64,
    pub deg_d: u32,
    pub r_used: QuadExact,
    pub m_value: QuadExact,
    pub bound_n: u32,
    /// Present only for odd `deg d`.
    pub corollary: Option<(QuadExact, BigInt)>,
}

pub fn bound_report(q: u64, deg_d: u32, r: QuadExact) -> BoundReport {
    BoundReport {
        q,
        deg_d,
        m_value: degree_bound_m(deg_d, &r),
        bound_n: degree_bound(q, deg_d, &r),
        corollary: class_number_lower_bound(q, deg_d).ok(),
        r_used: r,
    }
}

#[cfg(test)]
mod tests {
    use std::cmp::Ordering;

    use super::*;

    fn int(n: i64) -> QuadExact {
        QuadExact::integer(n)
    }

    #[test]
    fn r_hat_examples() {
        assert_eq!(r_hat(5, 2), int(1));
        assert_eq!(r_hat(3, 4), &int(2) + &QuadExact::sqrt(3));
        let r = r_hat(5, 19);
        // (1+sqrt5)^18 by independent binomial expansion
        let (mut a, mut b) = (BigInt::from(0), BigInt::from(0));
        let mut binom = BigInt::from(1);
        for k in 0..=18u32 {
            if k > 0 {
                binom = binom * (19 - k) / k;
            }
            if k % 2 == 0 {
                a += &binom * BigInt::from(5).pow(k / 2);
            } else {
                b += &binom * BigInt::from(5).pow(k / 2);
            }
        }
        assert_eq!(r, QuadExact::new(a.into(), b.into(), 5));
    }

    #[test]
    fn degree_bound_examples() {
        assert_eq!(degree_bound(5, 19, &r_hat(5, 19)), 60);
        assert_eq!(degree_bound(5, 2, &int(1)), 4);
    }

    #[test]
    fn degree_bound_monotone_in_r() {
        for q in [3u64, 5, 7] {
            for deg in 1..=20 {
                assert!(degree_bound(q, deg, &int(1)) <= degree_bound(q, deg, &r_hat(q, deg)));
            }
        }
    }

    #[test]
    fn exact_vs_float() {
        for q in [3u64, 5, 7] {
            for deg in 1..=20 {
                let r = r_hat(q, deg);
                let exact = degree_bound(q, deg, &r) as i64;
                let float = degree_bound_f64(q, deg, r.to_f64());
                if exact != float {
                    // Only possible right at a power boundary.
                    let m4 = degree_bound_m(deg, &r).pow(4);
                    let near = QuadExact::integer(q).pow(exact.min(float) as u32);
                    let ratio = (near.to_f64() / m4.to_f64() - 1.0).abs();
                    eprintln!(
                        "float/exact disagreement at q={q} deg={deg}: exact {exact}, float {float}"
                    );
                    assert!(ratio < 1e-9);
                }
            }
        }
    }

    #[test]
    fn class_number_lower_bound_examples() {
        let (v, n) = class_number_lower_bound(5, 19).unwrap();
        assert_eq!(
            v,
            (&QuadExact::half_power(5, 9) - &int(2)).scale(&frac(1, 20))
        );
        assert_eq!(n, BigInt::from(70));
        let (v, n) = class_number_lower_bound(3, 1).unwrap();
        assert_eq!(v, QuadExact::ratio(-1, 2));
        assert_eq!(n, BigInt::from(0));
        let (_, n) = class_number_lower_bound(3, 11).unwrap();
        assert_eq!(n, BigInt::from(2));
    }

    /// First odd degree from which the integer lower bound on h_K implied by
    /// the class-number bound beats the one implied by (sqrt q - 1)^(deg d - 1).
    fn crossover(q: u64) -> u32 {
        let beats = |deg: u32| {
            let (_, cor) = class_number_lower_bound(q, deg).unwrap();
            let hw = (&QuadExact::sqrt(q) - &int(1)).pow(deg - 1).ceil();
            cor > hw
        };
        let first = (1..60).step_by(2).find(|&d| beats(d)).unwrap();
        assert!((first..60).step_by(2).all(beats));
        first
    }

    #[test]
    fn class_number_bound_overtakes_hasse_weil() {
        assert_eq!(crossover(3), 11);
        assert_eq!(crossover(5), 17);
        assert!(class_number_lower_bound(5, 4).is_err());
    }

    #[test]
    fn cdt_rhs_examples() {
        // Only the 2(2*0+1)|C| q^(n/2)/n term survives: 2 * 3 / 2.
        assert_eq!(cdt_rhs(3, 2, 0, 1, 1, 0), int(3));
        assert_eq!(cdt_rhs(3, 2, 0, 0, 1, 0), int(0));
        // g_L = 1, |G| = 14, D = 28, n = 3: (2/14 + 2) * sqrt(27)/3 + (4/3) * 28
        let v = cdt_rhs(3, 3, 1, 1, 14, 28);
        let expect = &QuadExact::sqrt(3).scale(&frac(15, 7)) + &QuadExact::ratio(112, 3);
        assert_eq!(v, expect);
    }

    #[test]
    fn pi_lower_bound_examples() {
        let v = pi_lower_bound(3, 3, 3, 7);
        let expect = &(&int(9) - &QuadExact::sqrt(3)) - &(&int(3) + &QuadExact::ratio(28, 3));
        assert_eq!(v, expect);
        assert_eq!(pi_lower_bound(5, 10, 19, 1).signum(), Ordering::Greater);
    }
}
