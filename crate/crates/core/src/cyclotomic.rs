//! Cyclotomic polynomials and the split of a characteristic polynomial into
//! its roots-of-unity part and the rest.

use crate::field::{Field, Rat, Rationals};
use crate::poly::UPoly;

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The d-th cyclotomic polynomial over Q.
pub fn cyclotomic_poly(d: u64) -> UPoly<Rat> {
    let q = Rationals;
    assert!(d >= 1);
    // x^d - 1 divided by all lower cyclotomics at divisors of d
    let mut num = {
        let mut c = vec![q.from_i64(-1)];
        c.extend(std::iter::repeat(q.zero()).take(d as usize - 1));
        c.push(q.one());
        UPoly::new(&q, c)
    };
    for e in 1..d {
        if d % e == 0 {
            let phi_e = cyclotomic_poly(e);
            let (quo, rem) = num.divrem(&q, &phi_e);
            debug_assert!(rem.is_zero());
            num = quo;
        }
    }
    num
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CycloError {
    #[error("polynomial has a zero root or non-unit constant term")]
    BadConstantTerm,
}

/// Split f = g * h with g the maximal product of cyclotomic polynomials
/// (with multiplicity) dividing f and no root of h a root of unity.  The
/// constant term of f must be a unit (+-1).
pub fn cyclotomic_split(f: &UPoly<Rat>) -> Result<(UPoly<Rat>, UPoly<Rat>), CycloError> {
    let q = Rationals;
    let c0 = f.coeff(&q, 0);
    if c0 != q.one() && c0 != q.from_i64(-1) {
        return Err(CycloError::BadConstantTerm);
    }
    let deg = f.degree() as u64;
    let mut g = UPoly::constant(&q, q.one());
    let mut h = f.clone();
    for d in 1..=(4 * deg.max(1)) {
        if euler_phi(d) > deg {
            continue;
        }
        let phi = cyclotomic_poly(d);
        loop {
            let (quo, rem) = h.divrem(&q, &phi);
            if !rem.is_zero() || quo.is_zero() {
                break;
            }
            h = quo;
            g = g.mul(&q, &phi);
        }
    }
    Ok((g, h))
}

/// Multiplicities of (x - 1) and (x + 1) in f.
pub fn unipotent_multiplicities(f: &UPoly<Rat>) -> (u32, u32) {
    let q = Rationals;
    let m1 = f.valuation(&q, &UPoly::from_i64(&q, &[-1, 1]));
    let m2 = f.valuation(&q, &UPoly::from_i64(&q, &[1, 1]));
    (m1, m2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat_frac;

    fn qp(c: &[i64]) -> UPoly<Rat> {
        UPoly::from_i64(&Rationals, c)
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), qp(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), qp(&[1, 1]));
        assert_eq!(cyclotomic_poly(3), qp(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(6), qp(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), qp(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn split_with_quadratic_tail() {
        let q = Rationals;
        // (x-1)^16 (x+1)^2 (x^2+x+1) (x^2 + 7/5 x + 1)
        let tail = UPoly::new(&q, vec![q.one(), rat_frac(7, 5), q.one()]);
        let f = qp(&[-1, 1])
            .pow(&q, 16)
            .mul(&q, &qp(&[1, 1]).pow(&q, 2))
            .mul(&q, &qp(&[1, 1, 1]))
            .mul(&q, &tail);
        let (g, h) = cyclotomic_split(&f).unwrap();
        assert_eq!(h, tail);
        assert_eq!(g.mul(&q, &h), f);
        assert_eq!(g.degree(), 20);
    }

    #[test]
    fn split_pure_cyclotomic_and_trivial() {
        let q = Rationals;
        let f = qp(&[-1, 1]);
        let (g, h) = cyclotomic_split(&f).unwrap();
        assert_eq!(g, f);
        assert_eq!(h, UPoly::constant(&q, q.one()));
        assert_eq!(
            cyclotomic_split(&qp(&[0, 1])),
            Err(CycloError::BadConstantTerm)
        );
    }

    #[test]
    fn split_table_like() {
        let q = Rationals;
        // (x-1)^16 (x+1)^4 (x^2 + 6/5 x + 1)
        let tail = UPoly::new(&q, vec![q.one(), rat_frac(6, 5), q.one()]);
        let f = qp(&[-1, 1])
            .pow(&q, 16)
            .mul(&q, &qp(&[1, 1]).pow(&q, 4))
            .mul(&q, &tail);
        let (g, h) = cyclotomic_split(&f).unwrap();
        assert_eq!(h, tail);
        assert_eq!(unipotent_multiplicities(&g), (16, 4));
    }
}
