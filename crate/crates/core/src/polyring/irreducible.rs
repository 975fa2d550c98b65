use num_bigint::BigUint;

use super::Polynomial;
use crate::ffield::prime_factors;

/// Root scans are only cheaper than Rabin for small fields.
const ROOT_SCAN_MAX_FIELD: u64 = 1 << 12;

impl Polynomial {
    pub fn has_root(&self) -> bool {
        self.field().elements().any(|x| self.eval(x).is_zero())
    }

    /// Rabin's test: `f` of degree `n` is irreducible iff `T^{q^n} = T mod f`
    /// and `gcd(T^{q^{n/l}} - T, f) = 1` for every prime `l | n`. Degrees 2
    /// and 3 over small fields use a root scan instead.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree().finite() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let field = self.field();
        if n <= 3 && field.size() <= ROOT_SCAN_MAX_FIELD {
            return !self.has_root();
        }
        let f = self.monic();
        let t = Polynomial::t(field);
        let q = BigUint::from(field.size());
        let mut frobenius = Vec::with_capacity(n);
        let mut cur = t.clone();
        for _ in 0..n {
            cur = cur.pow_mod(&q, &f).expect("nonconstant modulus");
            frobenius.push(cur.clone());
        }
        if frobenius[n - 1] != t {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|l| {
            let k = n / l as usize;
            let g = (&frobenius[k - 1] - &t).gcd(&f).expect("same field");
            g.is_one()
        })
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ffield::FieldSpec;

    #[test]
    fn small_cases() {
        let f5 = Arc::new(FieldSpec::prime(5).unwrap());
        assert!(Polynomial::from_ints(&f5, &[2, 1]).is_irreducible());
        assert!(!Polynomial::from_ints(&f5, &[1, 0, 1]).is_irreducible());
        assert!(!Polynomial::from_ints(&f5, &[3]).is_irreducible());
        assert!(!Polynomial::zero(&f5).is_irreducible());
    }

    #[test]
    fn example_value_is_irreducible() {
        let f5 = Arc::new(FieldSpec::prime(5).unwrap());
        let mut c = vec![0i64; 20];
        c[19] = 4;
        c[8] = 2;
        c[2] = 1;
        c[1] = 4;
        c[0] = 2;
        assert!(Polynomial::from_ints(&f5, &c).is_irreducible());
    }

    #[test]
    fn root_scan_agrees_with_rabin() {
        // Force the Rabin path by using a field above the scan threshold.
        let big = Arc::new(FieldSpec::prime(4099).unwrap());
        let reducible =
            &Polynomial::from_ints(&big, &[5, 1]) * &Polynomial::from_ints(&big, &[7, 1]);
        assert!(!reducible.is_irreducible());
        // 4099 = 3 mod 4, so -1 is a non-square and T^2 + 1 is irreducible.
        assert!(Polynomial::from_ints(&big, &[1, 0, 1]).is_irreducible());
    }
}
