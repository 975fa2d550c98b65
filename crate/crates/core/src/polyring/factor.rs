use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Polynomial;
use crate::config::Config;
use crate::ffield::FieldElement;

/// `unit * prod(factor^multiplicity)` with monic irreducible factors,
/// pairwise distinct and sorted in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self, like: &Polynomial) -> Polynomial {
        let field = like.field();
        self.factors
            .iter()
            .fold(Polynomial::constant(field, self.unit), |acc, (f, e)| {
                &acc * &f.pow(*e)
            })
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }
}

impl Polynomial {
    /// True iff no irreducible divides `self` twice. A nonconstant polynomial
    /// with zero derivative is a `p`-th power and therefore not squarefree.
    pub fn is_squarefree(&self) -> bool {
        if self.is_constant() {
            return !self.is_zero();
        }
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).expect("same field").is_constant()
    }

    pub fn factor(&self) -> Factorization {
        self.factor_with(&Config::default())
    }

    /// Squarefree split, distinct-degree split, then Cantor-Zassenhaus
    /// equal-degree splitting driven by a ChaCha generator seeded from
    /// `config.seed`.
    pub fn factor_with(&self, config: &Config) -> Factorization {
        assert!(!self.is_zero(), "cannot factor the zero polynomial");
        let (unit, monic) = self.monic_split();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut merged: BTreeMap<Polynomial, u32> = BTreeMap::new();
        for (part, mult) in squarefree_parts(&monic) {
            for (chunk, degree) in distinct_degree(&part) {
                for irr in equal_degree(&chunk, degree, &mut rng) {
                    *merged.entry(irr).or_default() += mult;
                }
            }
        }
        Factorization {
            unit,
            factors: merged.into_iter().collect(),
        }
    }
}

/// `p`-th root of a polynomial whose derivative vanishes.
fn pth_root(f: &Polynomial) -> Polynomial {
    let field = f.field();
    let p = field.characteristic() as usize;
    // a^(1/p) = a^(p^(m-1)) in F_{p^m}
    let root_exp = (field.characteristic()).pow(field.degree() as u32 - 1);
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&c| field.pow(c, root_exp))
        .collect();
    Polynomial::new(field, coeffs)
}

/// Squarefree decomposition of a monic polynomial into coprime squarefree
/// parts paired with their multiplicities.
fn squarefree_parts(f: &Polynomial) -> Vec<(Polynomial, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let p = f.field().characteristic() as u32;
    let fp = f.derivative();
    if fp.is_zero() {
        for (g, e) in squarefree_parts(&pth_root(f)) {
            out.push((g, e * p));
        }
        return out;
    }
    let mut c = f.gcd(&fp).expect("same field");
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c).expect("same field");
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if !c.is_one() {
        for (g, e) in squarefree_parts(&pth_root(&c)) {
            out.push((g, e * p));
        }
    }
    out
}

/// Splits a monic squarefree polynomial into products of irreducibles of a
/// common degree.
fn distinct_degree(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let field = f.field();
    let q = BigUint::from(field.size());
    let t = Polynomial::t(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = t.clone();
    let mut d = 1;
    while rest.degree().finite().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&q, &rest).expect("nonconstant");
        let g = (&h - &t).gcd(&rest).expect("same field");
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest).unwrap_or_else(|_| h.clone());
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = rest.degree().finite().filter(|&n| n > 0) {
        out.push((rest, n));
    }
    out
}

fn equal_degree(f: &Polynomial, d: usize, rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let n = f.degree().finite().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let e = (BigUint::from(field.size()).pow(d as u32) - 1u32) / 2u32;
    let one = Polynomial::one(field);
    loop {
        let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..field.size())).collect();
        let a = Polynomial::from_indices(field, &coeffs);
        if a.is_constant() {
            continue;
        }
        let b = &a.pow_mod(&e, f).expect("nonconstant") - &one;
        let g = b.gcd(f).expect("same field");
        let k = g.degree().finite().unwrap_or(0);
        if k > 0 && k < n {
            let other = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}
