//! Prime counts by splitting type for `K = F(sqrt d)` with odd `deg d`,
//! checked against the effective Chebotarev bound for the Hilbert class
//! field `L/F` (`|G| = 2r`, `C` the identity class).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;

use crate::bounds::{cdt_rhs, pi_lower_bound, QuadExact};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::polyring::{count_irreducibles, legendre_symbol, DegreeRange, Polynomial};
use crate::quadfield::{hilbert_data, QuadExtension};
use crate::search::represent;
use crate::zeta::divisor_class_number;

/// Degree multiset of the finite ramified primes (the irreducible factors
/// of `d`), and whether the infinite place ramifies.
pub fn ramified_profile(ext: &QuadExtension, config: &Config) -> (BTreeMap<usize, u64>, bool) {
    let mut degrees = BTreeMap::new();
    for (f, _) in ext.d.factor_with(config).factors {
        *degrees.entry(f.degree().finite().unwrap_or(0)).or_insert(0) += 1;
    }
    (degrees, ext.is_odd())
}

/// Finite primes of degree `n` unramified in `K`: `gamma_n - eps_n`.
pub fn pi_n(ext: &QuadExtension, n: u32, config: &Config) -> u64 {
    let (ramified, _) = ramified_profile(ext, config);
    let gamma = u64::try_from(count_irreducibles(ext.q(), n)).expect("prime count fits in u64");
    gamma - ramified.get(&(n as usize)).copied().unwrap_or(0)
}

fn require_odd(ext: &QuadExtension) -> Result<()> {
    if ext.is_odd() {
        Ok(())
    } else {
        Err(Error::Unsupported("the census needs odd deg d".into()))
    }
}

fn monic_primes(ext: &QuadExtension, n: u32) -> impl Iterator<Item = Polynomial> + '_ {
    DegreeRange::exact(n as usize, true)
        .iter(ext.field())
        .filter(|p| p.is_irreducible())
}

/// Monic primes `p` of degree `n`, `p` not dividing `d`, with `(p)` generated
/// by some `x^2 - d y^2`, i.e. `p` splits completely in the Hilbert class field.
pub fn pi_c_n(ext: &QuadExtension, n: u32) -> Result<u64> {
    require_odd(ext)?;
    let mut count = 0;
    for p in monic_primes(ext, n) {
        if !ext.d.rem(&p)?.is_zero() && represent(&p, ext)?.is_some() {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub n: u32,
    pub gamma_n: u64,
    pub eps_n: u64,
    pub pi_n: u64,
    /// Unramified primes with Legendre symbol `+1`, i.e. split in `K`.
    pub split_n: u64,
    pub pi_c_n: u64,
    pub r: u64,
    /// `pi_n / 2r`.
    pub predicted: BigRational,
    pub rhs: QuadExact,
    /// `|pi_c_n - predicted| <= rhs`.
    pub holds: bool,
    pub pi_lower_bound: QuadExact,
    pub lower_bound_holds: bool,
    /// `deg d = 1`: the genus formula for `L` gives `1 - r` and is clamped at 0.
    pub genus_clamped: bool,
}

fn census_row(ext: &QuadExtension, n: u32, r: u64, config: &Config) -> Result<CensusRow> {
    let (ramified, _) = ramified_profile(ext, config);
    let gamma_n = u64::try_from(count_irreducibles(ext.q(), n)).expect("prime count fits in u64");
    let eps_n = ramified.get(&(n as usize)).copied().unwrap_or(0);
    let pi_n = gamma_n - eps_n;
    let (mut split_n, mut pi_c_n) = (0, 0);
    for p in monic_primes(ext, n) {
        if legendre_symbol(&ext.d, &p)? != 1 {
            continue;
        }
        split_n += 1;
        if represent(&p, ext)?.is_some() {
            pi_c_n += 1;
        }
    }
    let hilbert = hilbert_data(ext, r)?;
    let rhs = cdt_rhs(
        ext.q(),
        n,
        hilbert.genus_l_clamped(),
        1,
        2 * r,
        hilbert.different_l_f,
    );
    let predicted = BigRational::new(BigInt::from(pi_n), BigInt::from(2 * r));
    let deviation = (BigRational::from_integer(BigInt::from(pi_c_n)) - &predicted).abs();
    let holds = QuadExact::rational(deviation) <= rhs;
    let lower = pi_lower_bound(ext.q(), n, ext.deg_d, r);
    let lower_bound_holds = lower <= QuadExact::integer(pi_n);
    Ok(CensusRow {
        n,
        gamma_n,
        eps_n,
        pi_n,
        split_n,
        pi_c_n,
        r,
        predicted,
        rhs,
        holds,
        pi_lower_bound: lower,
        lower_bound_holds,
        genus_clamped: ext.deg_d < 3,
    })
}

/// Rows `n = 1..=n_max` with `r = h_K` from point counting (the ideal and
/// divisor class numbers agree when the infinite place ramifies).
pub fn verify_cdt(ext: &QuadExtension, n_max: u32, config: &Config) -> Result<Vec<CensusRow>> {
    require_odd(ext)?;
    let r = divisor_class_number(ext, config)?;
    verify_cdt_with_r(ext, n_max, r, config)
}

pub fn verify_cdt_with_r(
    ext: &QuadExtension,
    n_max: u32,
    r: u64,
    config: &Config,
) -> Result<Vec<CensusRow>> {
    require_odd(ext)?;
    let row = |n| census_row(ext, n, r, config);
    if config.workers <= 1 {
        (1..=n_max).map(row).collect()
    } else {
        config.install(|| (1..=n_max).into_par_iter().map(row).collect())
    }
}
