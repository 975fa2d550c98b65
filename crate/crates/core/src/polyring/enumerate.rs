use std::ops::RangeInclusive;
use std::sync::Arc;

use super::{Degree, Polynomial};
use crate::ffield::{FieldElement, FieldSpec};

/// A set of polynomials with degree in `[min, max]`, listed in canonical
/// order and addressable by rank so that ranges can be split across workers.
/// `min = NegInf` includes the zero polynomial (unless `monic`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeRange {
    pub min: Degree,
    pub max: Degree,
    pub monic: bool,
}

impl DegreeRange {
    pub fn exact(degree: usize, monic: bool) -> DegreeRange {
        DegreeRange {
            min: Degree::Finite(degree),
            max: Degree::Finite(degree),
            monic,
        }
    }

    /// Every polynomial of degree at most `max`, zero included.
    pub fn up_to(max: Degree) -> DegreeRange {
        DegreeRange {
            min: Degree::NegInf,
            max,
            monic: false,
        }
    }

    /// Every nonzero polynomial of degree at most `max`.
    pub fn nonzero_up_to(max: usize) -> DegreeRange {
        DegreeRange {
            min: Degree::Finite(0),
            max: Degree::Finite(max),
            monic: false,
        }
    }

    pub fn is_empty(&self, q: u64) -> bool {
        self.len(q) == 0
    }

    fn count_of_degree(&self, q: u64, j: usize) -> u64 {
        let tail = q.checked_pow(j as u32).expect("enumeration size overflow");
        if self.monic {
            tail
        } else {
            (q - 1)
                .checked_mul(tail)
                .expect("enumeration size overflow")
        }
    }

    fn degrees(&self) -> RangeInclusive<usize> {
        let lo = self.min.finite().unwrap_or(0);
        match self.max {
            Degree::NegInf => RangeInclusive::new(1, 0),
            Degree::Finite(hi) => lo..=hi,
        }
    }

    fn includes_zero(&self) -> bool {
        self.min == Degree::NegInf && !self.monic
    }

    pub fn len(&self, q: u64) -> u64 {
        if self.min > self.max {
            return 0;
        }
        let zero = u64::from(self.includes_zero());
        self.degrees()
            .map(|j| self.count_of_degree(q, j))
            .fold(zero, |a, b| {
                a.checked_add(b).expect("enumeration size overflow")
            })
    }

    /// The polynomial of the given rank; panics when `rank >= len`.
    pub fn get(&self, field: &Arc<FieldSpec>, mut rank: u64) -> Polynomial {
        let q = field.size();
        if self.includes_zero() {
            if rank == 0 {
                return Polynomial::zero(field);
            }
            rank -= 1;
        }
        for j in self.degrees() {
            let count = self.count_of_degree(q, j);
            if rank < count {
                let mut coeffs = vec![FieldElement::ZERO; j + 1];
                let tail = q.pow(j as u32);
                coeffs[j] = if self.monic {
                    FieldElement::ONE
                } else {
                    field.element(rank / tail + 1)
                };
                let mut rest = rank % tail;
                for c in coeffs.iter_mut().take(j) {
                    *c = field.element(rest % q);
                    rest /= q;
                }
                return Polynomial::new(field, coeffs);
            }
            rank -= count;
        }
        panic!("rank out of range for {self:?}");
    }

    pub fn iter<'a>(&self, field: &'a Arc<FieldSpec>) -> impl Iterator<Item = Polynomial> + 'a {
        self.iter_from(field, 0)
    }

    /// Restartable iteration from an arbitrary rank.
    pub fn iter_from<'a>(
        &self,
        field: &'a Arc<FieldSpec>,
        start: u64,
    ) -> impl Iterator<Item = Polynomial> + 'a {
        let range = *self;
        (start..range.len(field.size())).map(move |r| range.get(field, r))
    }
}

/// Every polynomial of exactly `degree` (monic or all), in canonical order.
pub fn enumerate_polys(
    field: &Arc<FieldSpec>,
    degree: usize,
    monic: bool,
) -> impl Iterator<Item = Polynomial> + '_ {
    DegreeRange::exact(degree, monic).iter(field)
}
