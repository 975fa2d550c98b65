//! Precomputed tables: square bitsets, discrete logarithms with Zech
//! logarithms, and subfield embeddings.

use super::{FieldElement, FieldSpec, MAX_DIGITS};
use crate::error::{Error, Result};

/// Bitset of the squares of a field, indexed by element index.
#[derive(Clone, Debug)]
pub struct SquareTable {
    bits: Vec<u64>,
}

impl SquareTable {
    pub fn build(spec: &FieldSpec) -> SquareTable {
        let n = spec.size() as usize;
        let mut bits = vec![0u64; n.div_ceil(64)];
        for a in spec.elements() {
            let s = spec.square(a).index() as usize;
            bits[s / 64] |= 1 << (s % 64);
        }
        SquareTable { bits }
    }

    pub fn is_square(&self, a: FieldElement) -> bool {
        let i = a.index() as usize;
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }
}

/// Squareness predicate backed either by a table or by Euler's criterion.
#[derive(Clone, Debug)]
pub enum SquareOracle {
    Table(SquareTable),
    Euler,
}

impl SquareOracle {
    /// Builds the table when the field has at most `threshold` elements.
    pub fn new(spec: &FieldSpec, threshold: u64) -> SquareOracle {
        if spec.size() <= threshold {
            SquareOracle::Table(SquareTable::build(spec))
        } else {
            SquareOracle::Euler
        }
    }

    pub fn is_square(&self, spec: &FieldSpec, a: FieldElement) -> bool {
        match self {
            SquareOracle::Table(t) => t.is_square(a),
            SquareOracle::Euler => spec.is_square(a),
        }
    }
}

/// Marker for the logarithm of zero.
pub const LOG_ZERO: u32 = u32::MAX;

/// Discrete logarithms to a primitive base together with Zech logarithms
/// `zech[n] = log(1 + g^n)`, so that field arithmetic on nonzero elements
/// becomes integer arithmetic modulo `q - 1` plus one table lookup per
/// addition. The quadratic character of `g^k` is the parity of `k`.
#[derive(Clone, Debug)]
pub struct LogTables {
    order: u32,
    log: Vec<u32>,
    zech: Vec<u32>,
    base: FieldElement,
}

impl LogTables {
    pub fn build(spec: &FieldSpec) -> Result<LogTables> {
        let size = spec.size();
        if size > LOG_ZERO as u64 {
            return Err(Error::FieldTooLarge {
                size: size as u128,
                cap: LOG_ZERO as u64,
            });
        }
        let order = (size - 1) as u32;
        let g = spec.primitive_element();
        let m = spec.degree();
        let p = spec.characteristic();

        let mut exp = vec![0u32; order as usize];
        let mut log = vec![LOG_ZERO; size as usize];
        let mut gd = [0u64; MAX_DIGITS];
        spec.decompose(g, &mut gd);
        let mut cur = [0u64; MAX_DIGITS];
        cur[0] = 1;
        let mut prod = [0u64; 2 * MAX_DIGITS];
        for k in 0..order {
            let idx = spec.compose(&cur[..m]).index();
            exp[k as usize] = idx as u32;
            log[idx as usize] = k;
            if m == 1 {
                cur[0] = cur[0] * gd[0] % p;
            } else {
                spec.mul_digits(&cur[..m], &gd[..m], &mut prod);
                cur[..m].copy_from_slice(&prod[..m]);
            }
        }

        // 1 + g^n: bump the constant digit.
        let zech = exp
            .iter()
            .map(|&e| {
                let e = e as u64;
                let bumped = if e % p == p - 1 { e - (p - 1) } else { e + 1 };
                log[bumped as usize]
            })
            .collect();
        Ok(LogTables {
            order,
            log,
            zech,
            base: g,
        })
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn base(&self) -> FieldElement {
        self.base
    }

    /// `log_g(a)`, or [`LOG_ZERO`] for zero.
    #[inline]
    pub fn log(&self, a: FieldElement) -> u32 {
        self.log[a.index() as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == LOG_ZERO || b == LOG_ZERO {
            return LOG_ZERO;
        }
        let s = a as u64 + b as u64;
        (s % self.order as u64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == LOG_ZERO {
            return b;
        }
        if b == LOG_ZERO {
            return a;
        }
        // g^a + g^b = g^a (1 + g^(b - a))
        let diff = if b >= a { b - a } else { b + self.order - a };
        let z = self.zech[diff as usize];
        if z == LOG_ZERO {
            LOG_ZERO
        } else {
            self.mul(a, z)
        }
    }

    /// Quadratic character of the element with logarithm `a`.
    #[inline]
    pub fn chi(&self, a: u32) -> i64 {
        if a == LOG_ZERO {
            0
        } else if a % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Embedding of a subfield `F_{p^m}` into `F_{p^{mk}}`, fixed by sending the
/// generator of the small field to a root of its modulus in the big field.
#[derive(Clone, Debug)]
pub struct Embedding {
    /// Images of `1, X, .., X^{m-1}`.
    powers: Vec<FieldElement>,
    identity: bool,
}

impl Embedding {
    pub fn new(small: &FieldSpec, big: &FieldSpec) -> Result<Embedding> {
        if small.characteristic() != big.characteristic() || big.degree() % small.degree() != 0 {
            return Err(Error::FieldMismatch);
        }
        let m = small.degree();
        if m == 1 {
            return Ok(Embedding {
                powers: vec![FieldElement::ONE],
                identity: true,
            });
        }
        let modulus = small.modulus();
        let eval = |x: FieldElement| {
            modulus.iter().rev().fold(FieldElement::ZERO, |acc, &c| {
                big.add(big.mul(acc, x), big.element(c))
            })
        };
        let root = if big.degree() == m && big.modulus() == modulus {
            big.generator()
        } else {
            // Roots lie in the subfield of order p^m, generated by g^((Q-1)/(p^m-1)).
            let w = big.pow(
                big.primitive_element(),
                (big.size() - 1) / (small.size() - 1),
            );
            let mut x = w;
            let mut found = None;
            for _ in 0..small.size() - 1 {
                if eval(x).is_zero() {
                    found = Some(x);
                    break;
                }
                x = big.mul(x, w);
            }
            found.ok_or_else(|| Error::CheckFailed("no root of the subfield modulus".into()))?
        };
        let mut powers = Vec::with_capacity(m);
        let mut x = FieldElement::ONE;
        for _ in 0..m {
            powers.push(x);
            x = big.mul(x, root);
        }
        Ok(Embedding {
            powers,
            identity: false,
        })
    }

    pub fn apply(&self, small: &FieldSpec, big: &FieldSpec, a: FieldElement) -> FieldElement {
        if self.identity {
            return a;
        }
        small
            .coefficients(a)
            .into_iter()
            .zip(&self.powers)
            .fold(FieldElement::ZERO, |acc, (c, &x)| {
                big.add(acc, big.mul(big.element(c), x))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_and_euler_agree_up_to_3_pow_6() {
        let fields = [
            (3, 1),
            (3, 2),
            (3, 3),
            (3, 4),
            (3, 5),
            (3, 6),
            (5, 1),
            (5, 2),
            (5, 3),
            (7, 1),
            (7, 2),
        ];
        for (p, m) in fields {
            let f = FieldSpec::new(p, m).unwrap();
            let table = SquareOracle::new(&f, 1 << 24);
            assert!(matches!(table, SquareOracle::Table(_)));
            for a in f.elements() {
                assert_eq!(table.is_square(&f, a), f.is_square(a), "{f:?} {a:?}");
            }
        }
        let f = FieldSpec::new(3, 3).unwrap();
        assert!(matches!(SquareOracle::new(&f, 10), SquareOracle::Euler));
    }

    #[test]
    fn log_tables_reproduce_arithmetic() {
        for (p, m) in [(3, 1), (5, 1), (3, 2), (5, 2), (3, 4), (7, 2)] {
            let f = FieldSpec::new(p, m).unwrap();
            let t = LogTables::build(&f).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let (la, lb) = (t.log(a), t.log(b));
                    assert_eq!(t.add(la, lb), t.log(f.add(a, b)));
                    assert_eq!(t.mul(la, lb), t.log(f.mul(a, b)));
                }
                assert_eq!(t.chi(t.log(a)), f.chi(a) as i64);
            }
        }
    }

    #[test]
    fn squares_stay_squares_in_extensions() {
        for (p, m, k) in [(3, 1, 2), (3, 1, 3), (5, 1, 2), (3, 2, 2), (5, 1, 3)] {
            let small = FieldSpec::new(p, m).unwrap();
            let big = FieldSpec::new(p, m * k).unwrap();
            let e = Embedding::new(&small, &big).unwrap();
            for a in small.elements() {
                let b = e.apply(&small, &big, a);
                if small.is_square(a) {
                    assert!(big.is_square(b));
                }
                // Ring homomorphism on a sample of pairs.
                for c in small.elements().take(5) {
                    let d = e.apply(&small, &big, c);
                    assert_eq!(e.apply(&small, &big, small.mul(a, c)), big.mul(b, d));
                    assert_eq!(e.apply(&small, &big, small.add(a, c)), big.add(b, d));
                }
            }
        }
    }
}
