//! Prime fields F_p with u64 elements, p odd (and p >= 5 wherever the
//! surface machinery is involved).

use crate::arith::{is_prime_u64, mul_mod_u64, pow_mod_u64};
use crate::field::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(is_prime_u64(p), "{p} is not prime");
        assert!(p % 2 == 1, "even characteristic unsupported");
        assert!(p < (1 << 31), "modulus too large");
        PrimeField { p }
    }

    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Legendre symbol as -1, 0, 1.
    pub fn legendre(&self, a: u64) -> i32 {
        if a % self.p == 0 {
            return 0;
        }
        let e = pow_mod_u64(a, (self.p - 1) / 2, self.p);
        if e == 1 {
            1
        } else {
            -1
        }
    }

    /// Least quadratic nonresidue.
    pub fn nonresidue(&self) -> u64 {
        (2..self.p).find(|&a| self.legendre(a) == -1).expect("no nonresidue")
    }

    /// Tonelli-Shanks.
    pub fn sqrt_mod(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if self.legendre(a) != 1 {
            return None;
        }
        if p % 4 == 3 {
            let r = pow_mod_u64(a, (p + 1) / 4, p);
            return Some(r.min(p - r));
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = self.nonresidue();
        let mut m = s;
        let mut c = pow_mod_u64(z, q, p);
        let mut t = pow_mod_u64(a, q, p);
        let mut r = pow_mod_u64(a, (q + 1) / 2, p);
        while t != 1 {
            let mut i = 0u32;
            let mut tt = t;
            while tt != 1 {
                tt = mul_mod_u64(tt, tt, p);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = mul_mod_u64(b, b, p);
            }
            m = i;
            c = mul_mod_u64(b, b, p);
            t = mul_mod_u64(t, c, p);
            r = mul_mod_u64(r, b, p);
        }
        // canonical root: the numerically smaller of the pair
        Some(r.min(p - r))
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod_u64(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(pow_mod_u64(*a, self.p - 2, self.p))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn sqrt(&self, a: &u64) -> Option<u64> {
        self.sqrt_mod(*a)
    }
    fn from_rat(&self, q: &crate::field::Rat) -> u64 {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let pb = num_bigint::BigInt::from(self.p);
        let n = q.numer().mod_floor(&pb).to_u64().unwrap();
        let d = q.denom().mod_floor(&pb).to_u64().unwrap();
        self.mul(&n, &self.inv(&d).expect("denominator divisible by p"))
    }
    fn canonical_positive(&self, a: &u64) -> bool {
        *a <= (self.p - 1) / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let f = PrimeField::new(13);
        assert_eq!(f.add(&7, &9), 3);
        assert_eq!(f.mul(&f.inv(&5).unwrap(), &5), 1);
        assert_eq!(f.from_i64(-1), 12);
    }

    #[test]
    fn sqrt_all_squares() {
        for p in [5u64, 13, 17, 97, 65537] {
            let f = PrimeField::new(p);
            for a in 0..p.min(200) {
                let sq = f.mul(&a, &a);
                let r = f.sqrt_mod(sq).unwrap();
                assert_eq!(f.mul(&r, &r), sq);
            }
            assert_eq!(f.sqrt_mod(f.nonresidue()), None);
        }
    }

    #[test]
    fn legendre_multiplicative() {
        let f = PrimeField::new(31);
        for a in 1..31 {
            for b in 1..31 {
                assert_eq!(
                    f.legendre(a) * f.legendre(b),
                    f.legendre(f.mul(&a, &b))
                );
            }
        }
    }
}
