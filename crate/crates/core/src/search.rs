//! Smallest irreducible values of `x^2 - d y^2`, and the backward question
//! of whether a given prime is such a value up to a unit.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::ffield::FieldElement;
use crate::polyring::{legendre_symbol, Degree, DegreeRange, Polynomial};
use crate::quadfield::{InfinitePlace, QuadExtension};

/// Candidates handed to one worker per wave.
const CHUNK: u64 = 1 << 12;

/// Degrees of `x` and `y` that can produce `x^2 - d y^2` of degree `n`
/// when `deg d` is odd. Leading terms of `x^2` (even degree) and `d y^2`
/// (odd degree) never cancel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub n: usize,
    /// Inclusive range for `deg y`.
    pub y_degrees: (usize, usize),
    /// Inclusive range for `deg x`; the minimum is `NegInf` when `x = 0` is allowed.
    pub x_degrees: (Degree, usize),
    pub feasible: bool,
}

impl DegreeProfile {
    fn ranges(&self) -> (DegreeRange, DegreeRange) {
        let y = DegreeRange {
            min: Degree::Finite(self.y_degrees.0),
            max: Degree::Finite(self.y_degrees.1),
            monic: true,
        };
        let x = DegreeRange {
            min: self.x_degrees.0,
            max: Degree::Finite(self.x_degrees.1),
            monic: false,
        };
        (y, x)
    }
}

pub fn degree_profile(deg_d: usize, n: usize) -> Result<DegreeProfile> {
    if deg_d % 2 == 0 {
        return Err(Error::Unsupported(format!(
            "degree profiles need odd deg d, got {deg_d}"
        )));
    }
    let infeasible = DegreeProfile {
        n,
        y_degrees: (0, 0),
        x_degrees: (Degree::NegInf, 0),
        feasible: false,
    };
    if n == 0 {
        return Ok(infeasible);
    }
    if n % 2 == 1 {
        if n < deg_d {
            return Ok(infeasible);
        }
        let k = (n - deg_d) / 2;
        Ok(DegreeProfile {
            n,
            y_degrees: (k, k),
            x_degrees: (Degree::NegInf, (n - 1) / 2),
            feasible: true,
        })
    } else {
        // deg d + 2 deg y < n with y != 0
        if n <= deg_d {
            return Ok(infeasible);
        }
        Ok(DegreeProfile {
            n,
            y_degrees: (0, (n - deg_d - 1) / 2),
            x_degrees: (Degree::Finite(n / 2), n / 2),
            feasible: true,
        })
    }
}

/// An irreducible `p = x^2 - d y^2` together with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub degree: usize,
    pub p: Polynomial,
    pub x: Polynomial,
    pub y: Polynomial,
    /// `p = unit * monic`.
    pub monic: Polynomial,
    pub unit: FieldElement,
}

impl SearchResult {
    fn new(x: Polynomial, y: Polynomial, p: Polynomial) -> SearchResult {
        let (unit, monic) = p.monic_split();
        SearchResult {
            degree: p.degree().finite().unwrap_or(0),
            p,
            x,
            y,
            monic,
            unit,
        }
    }

    /// Re-multiplies the witness.
    pub fn verify(&self, d: &Polynomial) -> bool {
        &self.x.square() - &(d * &self.y.square()) == self.p && self.p.is_irreducible()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub smallest: SearchResult,
    /// First hit in the same order whose value does not divide `d`.
    pub smallest_coprime: Option<SearchResult>,
    /// Set for even `deg d`, where leading terms can cancel and the scan
    /// is not exhaustive.
    pub upper_bound_only: bool,
}

/// A block of `(y, x)` pairs laid out as `y_rank * x_len + x_rank`.
struct Grid<'a> {
    ext: &'a QuadExtension,
    y: DegreeRange,
    x: DegreeRange,
    x_len: u64,
    len: u64,
}

impl<'a> Grid<'a> {
    fn new(ext: &'a QuadExtension, y: DegreeRange, x: DegreeRange) -> Grid<'a> {
        let q = ext.q();
        let x_len = x.len(q);
        let len = y.len(q).checked_mul(x_len).expect("search space overflow");
        Grid {
            ext,
            y,
            x,
            x_len,
            len,
        }
    }

    fn candidate(&self, rank: u64) -> (Polynomial, Polynomial) {
        let field = self.ext.field();
        let y = self.y.get(field, rank / self.x_len);
        let x = self.x.get(field, rank % self.x_len);
        (x, y)
    }

    fn value(&self, x: &Polynomial, y: &Polynomial) -> Polynomial {
        &x.square() - &(&self.ext.d * &y.square())
    }

    /// Lowest-rank hit in `[start, end)` accepted by `keep`.
    fn first_in(
        &self,
        start: u64,
        end: u64,
        keep: &(dyn Fn(&Polynomial) -> bool + Sync),
    ) -> Option<(u64, SearchResult)> {
        (start..end).find_map(|rank| {
            let (x, y) = self.candidate(rank);
            let p = self.value(&x, &y);
            (keep(&p) && p.is_irreducible()).then(|| (rank, SearchResult::new(x, y, p)))
        })
    }

    /// Lowest-rank hit overall. Parallel runs scan waves of disjoint chunks
    /// and keep the minimum rank, so the answer matches the serial scan.
    fn first(
        &self,
        config: &Config,
        keep: &(dyn Fn(&Polynomial) -> bool + Sync),
    ) -> Option<SearchResult> {
        if config.workers <= 1 {
            return self.first_in(0, self.len, keep).map(|(_, r)| r);
        }
        let wave = CHUNK * config.workers as u64;
        config.install(|| {
            let mut start = 0;
            while start < self.len {
                let end = (start + wave).min(self.len);
                let starts: Vec<u64> = (start..end).step_by(CHUNK as usize).collect();
                let hit = starts
                    .par_iter()
                    .filter_map(|&s| self.first_in(s, (s + CHUNK).min(end), keep))
                    .min_by_key(|(rank, _)| *rank);
                if let Some((_, r)) = hit {
                    return Some(r);
                }
                start = end;
            }
            None
        })
    }

    fn all(&self, config: &Config) -> Vec<SearchResult> {
        let scan = |rank: u64| {
            let (x, y) = self.candidate(rank);
            let p = self.value(&x, &y);
            p.is_irreducible().then(|| SearchResult::new(x, y, p))
        };
        if config.workers <= 1 {
            (0..self.len).filter_map(scan).collect()
        } else {
            config.install(|| (0..self.len).into_par_iter().filter_map(scan).collect())
        }
    }
}

fn divides(p: &Polynomial, d: &Polynomial) -> bool {
    d.rem(p).map(|r| r.is_zero()).unwrap_or(false)
}

fn odd_grids(ext: &QuadExtension, n: usize) -> Result<Option<Grid<'_>>> {
    let profile = degree_profile(ext.deg_d as usize, n)?;
    if !profile.feasible {
        return Ok(None);
    }
    let (y, x) = profile.ranges();
    Ok(Some(Grid::new(ext, y, x)))
}

/// Pairs whose nominal size `max(2 deg x, deg d + 2 deg y)` is exactly `s`,
/// as two grids: `deg y` at its maximum, then the rest with `deg x` at its maximum.
fn split_grids(ext: &QuadExtension, s: usize) -> Vec<Grid<'_>> {
    let deg_d = ext.deg_d as usize;
    let mut grids = Vec::new();
    let x_max = s / 2;
    if s >= deg_d && (s - deg_d) % 2 == 0 {
        let k = (s - deg_d) / 2;
        grids.push(Grid::new(
            ext,
            DegreeRange {
                min: Degree::Finite(k),
                max: Degree::Finite(k),
                monic: true,
            },
            DegreeRange::up_to(Degree::Finite(x_max)),
        ));
    }
    if s % 2 == 0 && s > deg_d {
        // deg d + 2 deg y < s
        let k = (s - deg_d - 1) / 2;
        grids.push(Grid::new(
            ext,
            DegreeRange {
                min: Degree::Finite(0),
                max: Degree::Finite(k),
                monic: true,
            },
            DegreeRange::exact(x_max, false),
        ));
    }
    grids
}

fn scan_odd(
    ext: &QuadExtension,
    degree_cap: usize,
    config: &Config,
    keep: &(dyn Fn(&Polynomial) -> bool + Sync),
) -> Result<Option<SearchResult>> {
    for n in 1..=degree_cap {
        if let Some(grid) = odd_grids(ext, n)? {
            if let Some(r) = grid.first(config, keep) {
                return Ok(Some(r));
            }
        }
    }
    Ok(None)
}

/// In the split case: the lowest-degree hit among pairs of the first
/// nominal size that produces any hit, ties going to the earlier pair.
fn scan_split(
    ext: &QuadExtension,
    size_cap: usize,
    config: &Config,
    keep: &(dyn Fn(&Polynomial) -> bool + Sync),
) -> Option<SearchResult> {
    for s in 0..=size_cap {
        let mut best: Option<SearchResult> = None;
        for grid in split_grids(ext, s) {
            let hits = grid.all(config);
            for h in hits.into_iter().filter(|h| keep(&h.p)) {
                if best.as_ref().is_none_or(|b| h.degree < b.degree) {
                    best = Some(h);
                }
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

/// The first irreducible `x^2 - d y^2` by degree, then by `(y, x)` in
/// canonical order. Only monic `y` are scanned: rescaling `(x, y)` by the
/// inverse of `lc(y)` keeps irreducibility and moves the pair earlier.
///
/// For odd `deg d` the cap bounds `deg p`; for even `deg d` it bounds the
/// nominal size `max(2 deg x, deg d + 2 deg y)`.
pub fn smallest_irreducible(
    ext: &QuadExtension,
    degree_cap: usize,
    config: &Config,
) -> Result<SearchOutcome> {
    let d = &ext.d;
    let any = |_: &Polynomial| true;
    let coprime = |p: &Polynomial| !divides(p, d);
    match ext.infinite_place {
        InfinitePlace::Ramified => {
            let smallest = scan_odd(ext, degree_cap, config, &any)?
                .ok_or(Error::DegreeCapExceeded(degree_cap))?;
            let smallest_coprime = if divides(&smallest.p, d) {
                scan_odd(ext, degree_cap, config, &coprime)?
            } else {
                Some(smallest.clone())
            };
            Ok(SearchOutcome {
                smallest,
                smallest_coprime,
                upper_bound_only: false,
            })
        }
        InfinitePlace::Split => {
            let smallest = scan_split(ext, degree_cap, config, &any)
                .ok_or(Error::DegreeCapExceeded(degree_cap))?;
            let smallest_coprime = if divides(&smallest.p, d) {
                scan_split(ext, degree_cap, config, &coprime)
            } else {
                Some(smallest.clone())
            };
            Ok(SearchOutcome {
                smallest,
                smallest_coprime,
                upper_bound_only: true,
            })
        }
        InfinitePlace::Inert => Err(Error::Hypothesis(
            "the infinite place is inert, so K/F is not geometric".into(),
        )),
    }
}

/// Every distinct irreducible value of degree `n` (odd `deg d`), ordered
/// canonically by the value, each with its canonically first witness.
pub fn irreducibles_of_degree(
    ext: &QuadExtension,
    n: usize,
    config: &Config,
) -> Result<Vec<SearchResult>> {
    let Some(grid) = odd_grids(ext, n)? else {
        return Ok(Vec::new());
    };
    let mut by_value = BTreeMap::new();
    for r in grid.all(config) {
        by_value.entry(r.p.clone()).or_insert(r);
    }
    Ok(by_value.into_values().collect())
}

/// A witness `u p = x^2 - d y^2` with `u` in `F_q^x`, or `None` when no
/// such representation exists. Odd `deg d` only: the degree profile then
/// bounds `deg y`, so the scan over monic `y` and all units is exhaustive.
pub fn represent(
    p_monic: &Polynomial,
    ext: &QuadExtension,
) -> Result<Option<(Polynomial, Polynomial, FieldElement)>> {
    if !ext.is_odd() {
        return Err(Error::Unsupported(
            "backward representability needs odd deg d".into(),
        ));
    }
    if !p_monic.same_field(&ext.d) {
        return Err(Error::FieldMismatch);
    }
    let d = &ext.d;
    if legendre_symbol(d, p_monic)? == -1 {
        return Ok(None);
    }
    let n = p_monic.degree().finite().expect("irreducible is nonzero");
    let profile = degree_profile(ext.deg_d as usize, n)?;
    if !profile.feasible {
        return Ok(None);
    }
    let field = ext.field();
    let (ys, _) = profile.ranges();
    let units: Vec<FieldElement> = field.elements().filter(|u| !u.is_zero()).collect();
    for y in ys.iter(field) {
        let dy2 = d * &y.square();
        for &u in &units {
            let target = &p_monic.scale(u) + &dy2;
            if let Some(x) = target.sqrt() {
                return Ok(Some((x, y, u)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ffield::FieldSpec;
    use crate::quadfield::classify;

    fn field(p: u64) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::prime(p).unwrap())
    }

    fn example() -> QuadExtension {
        let f = field(5);
        let mut c = vec![0i64; 20];
        c[19] = 1;
        c[8] = 3;
        c[0] = 2;
        classify(&Polynomial::from_ints(&f, &c)).unwrap()
    }

    #[test]
    fn profiles() {
        let p = degree_profile(19, 19).unwrap();
        assert!(p.feasible);
        assert_eq!(p.y_degrees, (0, 0));
        assert_eq!(p.x_degrees.1, 9);
        assert!(!degree_profile(19, 18).unwrap().feasible);
        let p = degree_profile(19, 21).unwrap();
        assert_eq!((p.y_degrees, p.x_degrees.1), ((1, 1), 10));
        let p = degree_profile(3, 8).unwrap();
        assert_eq!((p.y_degrees, p.x_degrees), ((0, 2), (Degree::Finite(4), 4)));
        assert!(degree_profile(4, 8).is_err());
    }

    #[test]
    fn worked_example_search() {
        let e = example();
        let f = e.field().clone();
        let out = smallest_irreducible(&e, 30, &Config::default()).unwrap();
        let r = &out.smallest;
        assert_eq!(r.degree, 19);
        assert_eq!(r.x, Polynomial::from_ints(&f, &[2, 1]));
        assert!(r.y.is_one());
        let mut c = vec![0i64; 20];
        c[19] = 4;
        c[8] = 2;
        c[2] = 1;
        c[1] = 4;
        c[0] = 2;
        assert_eq!(r.p, Polynomial::from_ints(&f, &c));
        assert!(r.verify(&e.d));
        assert!(!out.upper_bound_only);
        assert_eq!(out.smallest_coprime.as_ref(), Some(r));

        let parallel = smallest_irreducible(&e, 30, &Config::default().with_workers(4)).unwrap();
        assert_eq!(parallel, out);

        let (x, y, u) = represent(&r.monic, &e).unwrap().unwrap();
        assert_eq!((x, y.is_one(), u), (r.x.clone(), true, f.element(4)));
    }

    #[test]
    fn small_examples() {
        let f = field(3);
        let e = classify(&Polynomial::t(&f)).unwrap();
        let out = smallest_irreducible(&e, 5, &Config::default()).unwrap();
        assert_eq!(out.smallest.degree, 1);
        assert!(out.smallest.x.is_zero() && out.smallest.y.is_one());
        assert_eq!(out.smallest.p, Polynomial::from_ints(&f, &[0, 2]));
        // 2T is an associate of d itself.
        let c = out.smallest_coprime.unwrap();
        assert!(c.verify(&e.d) && !divides(&c.p, &e.d));

        let d = Polynomial::from_ints(&f, &[1, 2, 0, 1]);
        let e = classify(&d).unwrap();
        let out = smallest_irreducible(&e, 9, &Config::default()).unwrap();
        assert_eq!(out.smallest.degree, 3);
        assert!(out.smallest.x.is_zero() && out.smallest.y.is_one());
        assert_eq!(out.smallest.p, d.scale(f.element(2)));
        assert!(represent(&Polynomial::t(&f), &e).unwrap().is_none());
    }

    #[test]
    fn nonresidues_are_not_represented() {
        let f = field(3);
        let e = classify(&Polynomial::from_ints(&f, &[1, 2, 0, 1])).unwrap();
        for n in 1..=4 {
            for p in DegreeRange::exact(n, true)
                .iter(&f)
                .filter(|p| p.is_irreducible())
            {
                if let Some((x, y, u)) = represent(&p, &e).unwrap() {
                    assert_ne!(legendre_symbol(&e.d, &p).unwrap(), -1);
                    assert_eq!(&x.square() - &(&e.d * &y.square()), p.scale(u));
                }
            }
        }
    }

    #[test]
    fn split_case_is_labelled() {
        let f = field(5);
        let e = classify(&Polynomial::from_ints(&f, &[1, 0, 1])).unwrap();
        let out = smallest_irreducible(&e, 6, &Config::default()).unwrap();
        assert!(out.upper_bound_only);
        assert!(out.smallest.verify(&e.d));
        assert_eq!(out.smallest.degree, 1);
        let inert = classify(&Polynomial::from_ints(&field(3), &[1, 0, 2])).unwrap();
        assert!(smallest_irreducible(&inert, 6, &Config::default()).is_err());
    }

    #[test]
    fn all_hits_at_degree() {
        let f = field(3);
        let e = classify(&Polynomial::from_ints(&f, &[1, 2, 0, 1])).unwrap();
        let hits = irreducibles_of_degree(&e, 3, &Config::default()).unwrap();
        assert!(hits.windows(2).all(|w| w[0].p < w[1].p));
        assert!(hits.iter().all(|h| h.verify(&e.d) && h.degree == 3));
        let first = smallest_irreducible(&e, 9, &Config::default())
            .unwrap()
            .smallest;
        assert!(hits.iter().any(|h| h.p == first.p));
    }
}
