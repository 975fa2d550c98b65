//! Divisor class number of `K = F_q(T)(sqrt(d))` from point counts on the
//! curve `y^2 = d(x)` and the numerator `L(T)` of its zeta function.
//!
//! With `S_i = q^i + 1 - N_i`, Newton's identities give `c_1..c_g` of
//! `L(T) = sum c_k T^k`, the functional equation `c_{2g-k} = q^{g-k} c_k`
//! gives the rest, and `h_K = L(1)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::ffield::{Embedding, FieldElement, FieldSpec, LogTables};
use crate::quadfield::{InfinitePlace, QuadExtension};

/// `x` values handed to one worker at a time.
const CHUNK: u64 = 1 << 16;

/// Projective point counts `N_1..N_k` of the smooth model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCounts {
    pub q: u64,
    pub counts: Vec<u64>,
}

impl PointCounts {
    /// `S_i = q^i + 1 - N_i` for `i = 1..=k`.
    pub fn traces(&self) -> Vec<BigInt> {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &n)| BigInt::from(self.q).pow(i as u32 + 1) + 1 - BigInt::from(n))
            .collect()
    }

    /// Checks `|q^i + 1 - N_i| <= 2 g q^(i/2)` exactly by squaring.
    pub fn within_weil_bound(&self, genus: u32) -> bool {
        self.traces().iter().enumerate().all(|(i, s)| {
            let lhs = s * s;
            let rhs = BigInt::from(4 * genus as u64 * genus as u64)
                * BigInt::from(self.q).pow(i as u32 + 1);
            lhs <= rhs
        })
    }
}

/// Points at infinity: one over a ramified place, two over a split one.
fn points_at_infinity(ext: &QuadExtension) -> Result<u64> {
    match ext.infinite_place {
        InfinitePlace::Ramified => Ok(1),
        InfinitePlace::Split => Ok(2),
        InfinitePlace::Inert => Err(Error::Unsupported(
            "point counting needs a ramified or split infinite place".into(),
        )),
    }
}

/// `N_i`, the number of points of `y^2 = d(x)` over `F_{q^i}`:
/// `sum_x (1 + chi(d(x)))` plus the points at infinity.
pub fn count_points(ext: &QuadExtension, i: u32, config: &Config) -> Result<u64> {
    let at_infinity = points_at_infinity(ext)?;
    if i == 0 {
        return Err(Error::Hypothesis(
            "extension degree must be at least 1".into(),
        ));
    }
    let base = ext.field();
    let size = (base.size() as u128).checked_pow(i);
    let size = match size {
        Some(s) if s <= config.point_cap as u128 => s as u64,
        other => {
            return Err(Error::FieldTooLarge {
                size: other.unwrap_or(u128::MAX),
                cap: config.point_cap,
            })
        }
    };
    let big = FieldSpec::new(base.characteristic(), base.degree() * i as usize)?;
    debug_assert_eq!(big.size(), size);
    let embed = Embedding::new(base, &big)?;
    let coeffs: Vec<FieldElement> = ext
        .d
        .coeffs()
        .iter()
        .map(|&c| embed.apply(base, &big, c))
        .collect();
    let chi_sum = if size <= config.table_threshold {
        let tables = LogTables::build(&big)?;
        chi_sum_tables(&tables, &coeffs, config)
    } else {
        chi_sum_euler(&big, &coeffs, config)
    };
    let affine = size as i64 + chi_sum;
    Ok(affine as u64 + at_infinity)
}

/// `sum_x chi(d(x))` with Horner's rule in the logarithm domain. Nonzero
/// `x` are enumerated by their logarithm.
fn chi_sum_tables(tables: &LogTables, coeffs: &[FieldElement], config: &Config) -> i64 {
    let logs: Vec<u32> = coeffs.iter().map(|&c| tables.log(c)).collect();
    let at_zero = tables.chi(logs[0]);
    let order = tables.order() as u64;
    let eval = |k: u32| {
        let mut acc = crate::ffield::LOG_ZERO;
        for &c in logs.iter().rev() {
            acc = tables.add(tables.mul(acc, k), c);
        }
        tables.chi(acc)
    };
    let chunk = |start: u64| -> i64 {
        let end = (start + CHUNK).min(order);
        (start..end).map(|k| eval(k as u32)).sum()
    };
    let starts: Vec<u64> = (0..order).step_by(CHUNK as usize).collect();
    let rest: i64 = if config.workers <= 1 {
        starts.iter().map(|&s| chunk(s)).sum()
    } else {
        config.install(|| starts.par_iter().map(|&s| chunk(s)).sum())
    };
    at_zero + rest
}

fn chi_sum_euler(big: &FieldSpec, coeffs: &[FieldElement], config: &Config) -> i64 {
    let eval = |x: FieldElement| {
        let v = coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| big.add(big.mul(acc, x), c));
        big.chi(v) as i64
    };
    let size = big.size();
    let chunk = |start: u64| -> i64 {
        let end = (start + CHUNK).min(size);
        (start..end).map(|x| eval(big.element(x))).sum()
    };
    let starts: Vec<u64> = (0..size).step_by(CHUNK as usize).collect();
    if config.workers <= 1 {
        starts.iter().map(|&s| chunk(s)).sum()
    } else {
        config.install(|| starts.par_iter().map(|&s| chunk(s)).sum())
    }
}

pub fn point_counts(ext: &QuadExtension, k: u32, config: &Config) -> Result<PointCounts> {
    let counts = (1..=k)
        .map(|i| count_points(ext, i, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(PointCounts { q: ext.q(), counts })
}

/// Integer coefficients `c_0..c_{2g}` of the zeta numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    pub q: u64,
    pub genus: u32,
    pub coeffs: Vec<BigInt>,
}

impl LPolynomial {
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn satisfies_functional_equation(&self) -> bool {
        let g = self.genus as usize;
        self.coeffs.len() == 2 * g + 1
            && self.coeffs[0].is_one()
            && (0..=g).all(|k| {
                self.coeffs[2 * g - k] == BigInt::from(self.q).pow((g - k) as u32) * &self.coeffs[k]
            })
    }

    /// Power sums `S_1..S_k` of the reciprocal roots, from Newton's identities.
    pub fn power_sums(&self, k: usize) -> Vec<BigInt> {
        let c = |j: usize| self.coeffs.get(j).cloned().unwrap_or_else(BigInt::zero);
        let mut s: Vec<BigInt> = Vec::with_capacity(k);
        for n in 1..=k {
            let mut v = -BigInt::from(n) * c(n);
            for i in 1..n {
                v -= &s[i - 1] * c(n - i);
            }
            s.push(v);
        }
        s
    }

    /// The point count over `F_{q^i}` implied by this polynomial.
    pub fn predicted_count(&self, i: usize) -> BigInt {
        let s = self.power_sums(i).pop().unwrap_or_else(BigInt::zero);
        BigInt::from(self.q).pow(i as u32) + 1 - s
    }
}

/// Ascending powers, e.g. `1+3*T+3*T^2`.
impl fmt::Display for LPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.magnitude();
            f.write_str(sign)?;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("T")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Assembles `L(T)` from `N_1..N_g`.
pub fn l_polynomial(q: u64, genus: u32, counts: &PointCounts) -> Result<LPolynomial> {
    let g = genus as usize;
    if counts.counts.len() < g {
        return Err(Error::Hypothesis(format!(
            "need {g} point counts, got {}",
            counts.counts.len()
        )));
    }
    let s = counts.traces();
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for k in 1..=g {
        // k c_k = -sum_{i=1..k} S_i c_{k-i}
        let total: BigInt = (1..=k).map(|i| &s[i - 1] * &c[k - i]).sum();
        let kk = BigInt::from(k);
        if (&total % &kk) != BigInt::zero() {
            return Err(Error::CheckFailed(format!(
                "non-integral Newton coefficient c_{k} = -({total})/{k}"
            )));
        }
        c.push(-(total / kk));
    }
    for k in (0..g).rev() {
        c.push(BigInt::from(q).pow((g - k) as u32) * &c[k]);
    }
    Ok(LPolynomial {
        q,
        genus,
        coeffs: c,
    })
}

/// Class number together with the data used to certify it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassNumberReport {
    pub h_k: u64,
    pub l_poly: LPolynomial,
    /// `N_1..N_{g+1}`; the last entry is the self-check count.
    pub counts: PointCounts,
    pub predicted_next: BigInt,
}

/// Counts `N_1..N_{g+1}`, builds `L(T)` from the first `g`, and insists
/// that it predicts `N_{g+1}` exactly.
pub fn class_number_report(ext: &QuadExtension, config: &Config) -> Result<ClassNumberReport> {
    let g = ext.genus_k;
    let counts = point_counts(ext, g + 1, config)?;
    if !counts.within_weil_bound(g) {
        return Err(Error::CheckFailed(format!(
            "point counts {:?} violate the Weil bound",
            counts.counts
        )));
    }
    let l_poly = l_polynomial(ext.q(), g, &counts)?;
    if !l_poly.satisfies_functional_equation() {
        return Err(Error::CheckFailed(
            "L-polynomial fails the functional equation".into(),
        ));
    }
    let predicted_next = l_poly.predicted_count(g as usize + 1);
    let observed = BigInt::from(counts.counts[g as usize]);
    if predicted_next != observed {
        return Err(Error::CheckFailed(format!(
            "N_{} = {observed} but the L-polynomial predicts {predicted_next}",
            g + 1
        )));
    }
    let h = l_poly.at_one();
    let h_k = h
        .to_u64()
        .filter(|&h| h >= 1)
        .ok_or_else(|| Error::CheckFailed(format!("class number {h} out of range")))?;
    Ok(ClassNumberReport {
        h_k,
        l_poly,
        counts,
        predicted_next,
    })
}

/// `h_K = L(1)`.
pub fn divisor_class_number(ext: &QuadExtension, config: &Config) -> Result<u64> {
    Ok(class_number_report(ext, config)?.h_k)
}
