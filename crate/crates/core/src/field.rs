//! Field abstraction: context objects carrying the arithmetic, with plain
//! data elements.  Implementations here: Q and iterated quadratic extensions.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::rat_sqrt_exact;

pub type Rat = num_rational::BigRational;

/// Context object for a field.  Elements are inert data; all arithmetic goes
/// through the context so towers like Q(sqrt(d1), sqrt(d2)) and F_p(T) can
/// share generic polynomial and curve code.
pub trait Field: Clone {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// None for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 in characteristic zero.
    fn characteristic(&self) -> u64;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow_i64(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        if n < 0 {
            return self.pow_i64(&self.inv(a).expect("inverse of zero"), -n);
        }
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// A square root if the element is a square, else None.  Implementations
    /// that cannot decide must panic rather than return a wrong answer.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Embed a rational number.  Panics when the denominator is not
    /// invertible (e.g. divisible by the characteristic).
    fn from_rat(&self, q: &Rat) -> Self::Elem;

    /// Deterministic choice between a and -a, used to normalize square roots
    /// and section y-coordinates: exactly one of a, -a is canonical unless
    /// a = 0 (which is canonical).
    fn canonical_positive(&self, a: &Self::Elem) -> bool;
}

/// The rational numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::from(BigInt::from(1))
    }
    fn from_i64(&self, n: i64) -> Rat {
        Rat::from(BigInt::from(n))
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn sqrt(&self, a: &Rat) -> Option<Rat> {
        rat_sqrt_exact(a)
    }
    fn from_rat(&self, q: &Rat) -> Rat {
        q.clone()
    }
    fn canonical_positive(&self, a: &Rat) -> bool {
        use num_traits::Signed;
        !a.is_negative()
    }
}

pub fn rat_i64(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Quadratic extension F(sqrt(d)); elements are pairs (a, b) = a + b*sqrt(d).
/// d must be a nonsquare in F.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadExt<F: Field> {
    pub base: F,
    pub d: F::Elem,
}

impl<F: Field> QuadExt<F> {
    pub fn new(base: F, d: F::Elem) -> Self {
        assert!(base.sqrt(&d).is_none(), "quadratic extension by a square");
        QuadExt { base, d }
    }

    pub fn embed(&self, a: &F::Elem) -> (F::Elem, F::Elem) {
        (a.clone(), self.base.zero())
    }

    pub fn gen(&self) -> (F::Elem, F::Elem) {
        (self.base.zero(), self.base.one())
    }

    pub fn conj(&self, x: &(F::Elem, F::Elem)) -> (F::Elem, F::Elem) {
        (x.0.clone(), self.base.neg(&x.1))
    }

    /// Norm to the base field: a^2 - d*b^2.
    pub fn norm(&self, x: &(F::Elem, F::Elem)) -> F::Elem {
        let f = &self.base;
        f.sub(&f.mul(&x.0, &x.0), &f.mul(&self.d, &f.mul(&x.1, &x.1)))
    }
}

impl<F: Field> Field for QuadExt<F> {
    type Elem = (F::Elem, F::Elem);

    fn zero(&self) -> Self::Elem {
        (self.base.zero(), self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        (self.base.one(), self.base.zero())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        (self.base.from_i64(n), self.base.zero())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.sub(&a.0, &b.0), self.base.sub(&a.1, &b.1))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        let re = f.add(&f.mul(&a.0, &b.0), &f.mul(&self.d, &f.mul(&a.1, &b.1)));
        let im = f.add(&f.mul(&a.0, &b.1), &f.mul(&a.1, &b.0));
        (re, im)
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let n = self.norm(a);
        let ninv = self.base.inv(&n)?;
        Some((self.base.mul(&a.0, &ninv), self.base.neg(&self.base.mul(&a.1, &ninv))))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.0) && self.base.is_zero(&a.1)
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    /// sqrt(a + b*sqrt(d)): if b = 0 try sqrt(a) in F, else sqrt(a)*?; the
    /// general case solves (x + y*sqrt(d))^2 = a + b*sqrt(d) via the norm:
    /// x^2 = (a + sqrt(a^2 - d b^2))/2 for either choice of the inner root.
    fn sqrt(&self, e: &Self::Elem) -> Option<Self::Elem> {
        let f = &self.base;
        if self.is_zero(e) {
            return Some(self.zero());
        }
        let (a, b) = e;
        if f.is_zero(b) {
            if let Some(r) = f.sqrt(a) {
                return Some((r, f.zero()));
            }
            // a = d * (a/d), so sqrt(a) = sqrt(a/d) * sqrt(d) when a/d is square
            if let Some(r) = f.sqrt(&f.div(a, &self.d)) {
                return Some((f.zero(), r));
            }
            return None;
        }
        let n = self.norm(e);
        let s = f.sqrt(&n)?;
        let half = f.inv(&f.from_i64(2)).expect("characteristic 2 unsupported");
        for sg in [s.clone(), f.neg(&s)] {
            let x2 = f.mul(&f.add(a, &sg), &half);
            if let Some(x) = f.sqrt(&x2) {
                if f.is_zero(&x) {
                    continue;
                }
                let y = f.div(&f.mul(b, &half), &x);
                let cand = (x, y);
                if self.mul(&cand, &cand) == *e {
                    return Some(cand);
                }
            }
        }
        None
    }
    fn from_rat(&self, q: &Rat) -> Self::Elem {
        (self.base.from_rat(q), self.base.zero())
    }
    fn canonical_positive(&self, a: &Self::Elem) -> bool {
        if !self.base.is_zero(&a.0) {
            self.base.canonical_positive(&a.0)
        } else {
            self.base.canonical_positive(&a.1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quad_ext_arithmetic() {
        let k = QuadExt::new(Rationals, rat_i64(5));
        let x = (rat_i64(2), rat_i64(3)); // 2 + 3 sqrt 5
        let xi = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &xi), k.one());
        assert_eq!(k.norm(&x), rat_i64(4 - 45));
    }

    #[test]
    fn quad_ext_sqrt() {
        let k = QuadExt::new(Rationals, rat_i64(5));
        // (1 + sqrt 5)^2 = 6 + 2 sqrt 5
        let t = (rat_i64(6), rat_i64(2));
        let r = k.sqrt(&t).unwrap();
        assert_eq!(k.mul(&r, &r), t);
        // 5 is d * square
        let r5 = k.sqrt(&k.from_i64(5)).unwrap();
        assert_eq!(k.mul(&r5, &r5), k.from_i64(5));
        assert_eq!(k.sqrt(&k.from_i64(7)), None);
        assert_eq!(k.sqrt(&(rat_i64(1), rat_i64(1))), None);
    }

    #[test]
    fn biquadratic_tower() {
        let k1 = QuadExt::new(Rationals, rat_i64(-1));
        let k2 = QuadExt::new(k1.clone(), k1.from_i64(-3));
        // sqrt(-3) exists upstairs, sqrt(3) = sqrt(-1)*sqrt(-3) does too
        let m3 = k2.from_i64(-3);
        let r = k2.sqrt(&m3).unwrap();
        assert_eq!(k2.mul(&r, &r), m3);
        let t3 = k2.from_i64(3);
        let r3 = k2.sqrt(&t3).unwrap();
        assert_eq!(k2.mul(&r3, &r3), t3);
        assert!(k2.sqrt(&k2.from_i64(2)).is_none());
    }
}
