//! The fraction field K(T) of K[T], packaged as a Field context so that the
//! generic curve and polynomial code runs over it unchanged.

use crate::field::Field;
use crate::poly::{RatFunc, UPoly};
#[cfg(test)]
use crate::fp::PrimeField;

#[derive(Clone, Debug, PartialEq)]
pub struct FracField<F: Field>(pub F);

impl<F: Field> FracField<F> {
    pub fn base(&self) -> &F {
        &self.0
    }

    pub fn from_poly(&self, p: UPoly<F::Elem>) -> RatFunc<F::Elem> {
        RatFunc::from_poly(&self.0, p)
    }

    pub fn from_coeffs_i64(&self, c: &[i64]) -> RatFunc<F::Elem> {
        self.from_poly(UPoly::from_i64(&self.0, c))
    }

    pub fn var(&self) -> RatFunc<F::Elem> {
        RatFunc::x(&self.0)
    }
}

impl<F: Field> Field for FracField<F> {
    type Elem = RatFunc<F::Elem>;

    fn zero(&self) -> Self::Elem {
        RatFunc::zero(&self.0)
    }
    fn one(&self) -> Self::Elem {
        RatFunc::constant(&self.0, self.0.one())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        RatFunc::constant(&self.0, self.0.from_i64(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(&self.0, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(&self.0, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.0)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(&self.0, b)
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        a.inv(&self.0)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        self.0.characteristic()
    }
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem> {
        a.sqrt(&self.0)
    }
    fn from_rat(&self, q: &crate::field::Rat) -> Self::Elem {
        RatFunc::constant(&self.0, self.0.from_rat(q))
    }
    fn canonical_positive(&self, a: &Self::Elem) -> bool {
        if a.is_zero() {
            return true;
        }
        self.0.canonical_positive(a.num.lead())
    }
}

/// The quotient K[T]/(pi) for monic irreducible pi, as a Field context.
/// Elements are polynomials reduced mod pi.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotField<F: Field> {
    pub base: F,
    pub pi: UPoly<F::Elem>,
}

impl<F: Field> QuotField<F> {
    pub fn new(base: F, pi: UPoly<F::Elem>) -> Self {
        assert!(pi.degree() >= 1);
        QuotField { base, pi }
    }

    pub fn reduce(&self, a: &UPoly<F::Elem>) -> UPoly<F::Elem> {
        a.rem(&self.base, &self.pi)
    }
}

impl<F: Field> Field for QuotField<F> {
    type Elem = UPoly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        UPoly::zero()
    }
    fn one(&self) -> Self::Elem {
        UPoly::constant(&self.base, self.base.one())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.reduce(&UPoly::constant(&self.base, self.base.from_i64(n)))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(&self.base, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(&self.base, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(&a.mul(&self.base, b))
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.is_zero() {
            return None;
        }
        let (g, u, _) = a.xgcd(&self.base, &self.pi);
        assert!(g.degree() == 0, "non-invertible residue: pi not irreducible?");
        Some(self.reduce(&u))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn sqrt(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        panic!("sqrt in a generic residue field is not supported");
    }
    fn from_rat(&self, q: &crate::field::Rat) -> Self::Elem {
        UPoly::constant(&self.base, self.base.from_rat(q))
    }
    fn canonical_positive(&self, a: &Self::Elem) -> bool {
        if a.is_zero() {
            return true;
        }
        self.base.canonical_positive(a.lead())
    }
}

/// base^e mod m over any coefficient field.
pub fn upoly_powmod<F: Field>(
    f: &F,
    base: &UPoly<F::Elem>,
    mut e: u64,
    m: &UPoly<F::Elem>,
) -> UPoly<F::Elem> {
    let mut acc = UPoly::constant(f, f.one());
    let mut b = base.rem(f, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(f, &b).rem(f, m);
        }
        b = b.mul(f, &b).rem(f, m);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::UPoly;

    #[test]
    fn field_ops() {
        let k = FracField(Rationals);
        let t = k.var();
        let a = k.div(&k.one(), &t); // 1/T
        let b = k.mul(&t, &a);
        assert!(k.is_one(&b));
        // sqrt of T^2 / (T+1)^2
        let num = UPoly::from_i64(&Rationals, &[0, 0, 1]);
        let den = UPoly::from_i64(&Rationals, &[1, 2, 1]);
        let r = RatFunc::new(&Rationals, num, den);
        let s = k.sqrt(&r).unwrap();
        assert_eq!(k.mul(&s, &s), r);
        assert!(k.sqrt(&t).is_none());
    }

    #[test]
    fn quotient_field_f9() {
        // F_3[T]/(T^2+1) = F_9
        let f3 = PrimeField::new(3);
        let pi = UPoly::new(&f3, vec![1, 0, 1]);
        let f9 = QuotField::new(f3.clone(), pi);
        let i = UPoly::new(&f3, vec![0, 1]);
        assert_eq!(f9.mul(&i, &i), f9.from_i64(-1));
        let inv = f9.inv(&i).unwrap();
        assert!(f9.is_one(&f9.mul(&i, &inv)));
        // x^9 - x vanishes exactly on F_9: gcd with (x - i)^2 (x + i) picks
        // up each distinct root once
        let xi = UPoly::new(&f9, vec![f9.neg(&i), f9.one()]);
        let cubic = xi.pow(&f9, 2).mul(&f9, &UPoly::new(&f9, vec![i.clone(), f9.one()]));
        let frob = upoly_powmod(&f9, &UPoly::x(&f9), 9, &cubic);
        let g = frob.sub(&f9, &UPoly::x(&f9)).gcd(&f9, &cubic);
        assert_eq!(g.degree(), 2);
    }
}
