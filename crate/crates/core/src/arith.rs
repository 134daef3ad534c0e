//! Integer primality, factorization, and square classes of rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

use crate::field::Rat;

/// Deterministic Miller-Rabin for u64 (the usual 12-witness set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Brent-cycle Pollard rho; input must be composite, odd, > 1.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime_u64(n) && n % 2 == 1);
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Factor a positive u64 into (prime, exponent) pairs, primes ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factor_u64 needs a positive integer");
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut stack = vec![n];
    let mut rest: Vec<u64> = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            rest.push(m);
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    rest.sort_unstable();
    for p in rest {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out.sort_unstable();
    out
}

/// Factor a nonzero BigInt's absolute value. Errors out (panics) only if a
/// factor exceeds u64, which does not occur for the quantities handled here.
pub fn factor_bigint(n: &BigInt) -> Vec<(u64, u32)> {
    let a = n.abs();
    let v = a
        .to_u64()
        .unwrap_or_else(|| panic!("integer too large to factor: {a}"));
    factor_u64(v)
}

/// A rational square class: sign and squarefree positive integer, so that
/// q = sign * squarefree * (square).  The class of 0 is not represented.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct SquareClass {
    pub sign: i8,
    pub squarefree: u64,
}

impl SquareClass {
    pub fn of_rat(q: &Rat) -> SquareClass {
        assert!(!q.is_zero(), "square class of zero is undefined");
        let n = q.numer() * q.denom();
        let mut sf = 1u64;
        for (p, e) in factor_bigint(&n) {
            if e % 2 == 1 {
                sf *= p;
            }
        }
        SquareClass {
            sign: if n.is_negative() { -1 } else { 1 },
            squarefree: sf,
        }
    }

    pub fn of_i64(n: i64) -> SquareClass {
        Self::of_rat(&Rat::from(BigInt::from(n)))
    }

    pub fn is_square(&self) -> bool {
        self.sign == 1 && self.squarefree == 1
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let g = self.squarefree.gcd(&other.squarefree);
        SquareClass {
            sign: self.sign * other.sign,
            squarefree: (self.squarefree / g) * (other.squarefree / g),
        }
    }

    /// Odd primes dividing the squarefree part.
    pub fn odd_primes(&self) -> Vec<u64> {
        factor_u64(self.squarefree)
            .into_iter()
            .map(|(p, _)| p)
            .filter(|&p| p != 2)
            .collect()
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.squarefree == 1 {
            write!(f, "1")
        } else {
            let parts: Vec<String> = factor_u64(self.squarefree)
                .iter()
                .map(|(p, _)| p.to_string())
                .collect();
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Exact integer square root test.
pub fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact rational square root.
pub fn rat_sqrt_exact(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let n = bigint_sqrt_exact(q.numer())?;
    let d = bigint_sqrt_exact(q.denom())?;
    Some(Rat::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
                 79, 83, 89, 97]
        );
    }

    #[test]
    fn primality_large() {
        assert!(is_prime_u64(2_147_483_647));
        assert!(!is_prime_u64(2_147_483_649));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn factor_roundtrip() {
        for n in [1u64, 2, 12, 97, 1024, 600851475143, 9_999_999_967 * 3] {
            let f = factor_u64(n);
            let prod: u64 = f.iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(prod, n);
            for (p, _) in &f {
                assert!(is_prime_u64(*p));
            }
        }
    }

    #[test]
    fn square_class_basics() {
        assert!(SquareClass::of_i64(49).is_square());
        assert_eq!(SquareClass::of_i64(-18), SquareClass { sign: -1, squarefree: 2 });
        assert_eq!(SquareClass::of_i64(51), SquareClass { sign: 1, squarefree: 51 });
        // class of a fraction uses numerator times denominator
        let q = Rat::new(BigInt::from(51), BigInt::from(25));
        assert_eq!(SquareClass::of_rat(&q).squarefree, 51);
        let prod = SquareClass::of_i64(6).mul(&SquareClass::of_i64(10));
        assert_eq!(prod.squarefree, 15);
    }

    #[test]
    fn sqrt_exact() {
        assert_eq!(
            rat_sqrt_exact(&Rat::new(BigInt::from(9), BigInt::from(4))),
            Some(Rat::new(BigInt::from(3), BigInt::from(2)))
        );
        assert_eq!(rat_sqrt_exact(&Rat::new(BigInt::from(2), BigInt::from(1))), None);
    }
}
