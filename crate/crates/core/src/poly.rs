//! Univariate polynomials and rational functions over a generic field.
//! Polynomials are coefficient vectors, low degree first, no trailing zeros.

use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<T> {
    pub c: Vec<T>,
}

impl<T: Clone + PartialEq + std::fmt::Debug> UPoly<T> {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn new<F: Field<Elem = T>>(f: &F, mut c: Vec<T>) -> Self {
        while c.last().map_or(false, |x| f.is_zero(x)) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_i64<F: Field<Elem = T>>(f: &F, c: &[i64]) -> Self {
        Self::new(f, c.iter().map(|&n| f.from_i64(n)).collect())
    }

    pub fn constant<F: Field<Elem = T>>(f: &F, a: T) -> Self {
        Self::new(f, vec![a])
    }

    pub fn x<F: Field<Elem = T>>(f: &F) -> Self {
        UPoly { c: vec![f.zero(), f.one()] }
    }

    /// -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lead(&self) -> &T {
        self.c.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeff<F: Field<Elem = T>>(&self, f: &F, i: usize) -> T {
        self.c.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn eval<F: Field<Elem = T>>(&self, f: &F, x: &T) -> T {
        let mut acc = f.zero();
        for a in self.c.iter().rev() {
            acc = f.add(&f.mul(&acc, x), a);
        }
        acc
    }

    pub fn add<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(f.add(&self.coeff(f, i), &other.coeff(f, i)));
        }
        Self::new(f, c)
    }

    pub fn sub<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(f.sub(&self.coeff(f, i), &other.coeff(f, i)));
        }
        Self::new(f, c)
    }

    pub fn neg<F: Field<Elem = T>>(&self, f: &F) -> Self {
        UPoly { c: self.c.iter().map(|a| f.neg(a)).collect() }
    }

    pub fn mul<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![f.zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, c)
    }

    pub fn scale<F: Field<Elem = T>>(&self, f: &F, a: &T) -> Self {
        Self::new(f, self.c.iter().map(|x| f.mul(x, a)).collect())
    }

    pub fn pow<F: Field<Elem = T>>(&self, f: &F, n: u32) -> Self {
        let mut acc = Self::constant(f, f.one());
        for _ in 0..n {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Quotient and remainder; divisor must be nonzero.
    pub fn divrem<F: Field<Elem = T>>(&self, f: &F, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dl = f.inv(d.lead()).expect("leading coefficient not invertible");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if f.is_zero(&r[i]) {
                continue;
            }
            let t = f.mul(&r[i], &dl);
            q[i - dd] = t.clone();
            for (j, b) in d.c.iter().enumerate() {
                r[i - dd + j] = f.sub(&r[i - dd + j], &f.mul(&t, b));
            }
        }
        (Self::new(f, q), Self::new(f, r))
    }

    pub fn rem<F: Field<Elem = T>>(&self, f: &F, d: &Self) -> Self {
        self.divrem(f, d).1
    }

    pub fn monic<F: Field<Elem = T>>(&self, f: &F) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let li = f.inv(self.lead()).unwrap();
        self.scale(f, &li)
    }

    pub fn gcd<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Returns (g, u, v) with u*self + v*other = g = monic gcd.
    pub fn xgcd<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> (Self, Self, Self) {
        let one = Self::constant(f, f.one());
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(f, &r1);
            let s = s0.sub(f, &q.mul(f, &s1));
            let t = t0.sub(f, &q.mul(f, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (Self::zero(), Self::zero(), Self::zero());
        }
        let li = f.inv(r0.lead()).unwrap();
        (r0.scale(f, &li), s0.scale(f, &li), t0.scale(f, &li))
    }

    pub fn derivative<F: Field<Elem = T>>(&self, f: &F) -> Self {
        if self.c.len() <= 1 {
            return Self::zero();
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(&f.from_i64(i as i64), a))
            .collect();
        Self::new(f, c)
    }

    /// Multiplicity of the irreducible pi in self (0 if coprime).
    pub fn valuation<F: Field<Elem = T>>(&self, f: &F, pi: &Self) -> u32 {
        assert!(!self.is_zero(), "valuation of zero polynomial");
        assert!(pi.degree() >= 1);
        let mut v = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(f, pi);
            if !r.is_zero() {
                return v;
            }
            v += 1;
            cur = q;
        }
    }

    /// self(g(x)) for polynomial g.
    pub fn compose<F: Field<Elem = T>>(&self, f: &F, g: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(f, g).add(f, &Self::constant(f, a.clone()));
        }
        acc
    }

    /// Coefficients reversed: x^n * self(1/x) for n = degree.
    pub fn reversed<F: Field<Elem = T>>(&self, f: &F) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        Self::new(f, c)
    }

    /// Exact polynomial square root, if one exists.
    pub fn sqrt_exact<F: Field<Elem = T>>(&self, f: &F) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.degree();
        if n % 2 != 0 {
            return None;
        }
        let lr = f.sqrt(self.lead())?;
        let h = (n / 2) as usize;
        // build root from the top coefficient down
        let mut r = vec![f.zero(); h + 1];
        r[h] = lr.clone();
        let two_lr_inv = f.inv(&f.mul(&f.from_i64(2), &lr)).unwrap();
        for k in (0..h).rev() {
            // coefficient of x^(h+k) in r^2 must match self
            let mut s = f.zero();
            for i in (k + 1)..h {
                let j = (h + k) - i;
                if j > h || j <= k {
                    continue;
                }
                s = f.add(&s, &f.mul(&r[i], &r[j]));
            }
            let target = self.coeff(f, h + k);
            r[k] = f.mul(&f.sub(&target, &s), &two_lr_inv);
        }
        let cand = Self::new(f, r);
        if cand.mul(f, &cand) == *self {
            Some(cand)
        } else {
            None
        }
    }

    /// self / gcd(self, self'): same irreducible factors, multiplicity one.
    pub fn squarefree_part<F: Field<Elem = T>>(&self, f: &F) -> Self {
        let g = self.gcd(f, &self.derivative(f));
        self.divrem(f, &g).0.monic(f)
    }

    /// Evaluate at a rational function, returning a rational function.
    pub fn eval_ratfunc<F: Field<Elem = T>>(&self, f: &F, x: &RatFunc<T>) -> RatFunc<T> {
        let mut acc = RatFunc::zero(f);
        for a in self.c.iter().rev() {
            acc = acc.mul(f, x).add(f, &RatFunc::from_poly(f, Self::constant(f, a.clone())));
        }
        acc
    }

    pub fn map_coeffs<S, G, M>(&self, g: &G, m: M) -> UPoly<S>
    where
        S: Clone + PartialEq + std::fmt::Debug,
        G: Field<Elem = S>,
        M: Fn(&T) -> S,
    {
        UPoly::new(g, self.c.iter().map(m).collect())
    }
}

/// Lagrange interpolation through distinct points.
pub fn interpolate<F: Field>(f: &F, pts: &[(F::Elem, F::Elem)]) -> UPoly<F::Elem> {
    let mut acc = UPoly::zero();
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut li = UPoly::constant(f, yi.clone());
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = f.sub(xi, xj);
            let di = f.inv(&denom).expect("interpolation nodes not distinct");
            // li *= (x - xj) / (xi - xj)
            let lin = UPoly::new(f, vec![f.neg(&f.mul(xj, &di)), di.clone()]);
            li = li.mul(f, &lin);
        }
        acc = acc.add(f, &li);
    }
    acc
}

/// Cauchy interpolation: the rational function with numerator degree <= dn and
/// denominator degree <= dd passing through the given points, if one exists.
pub fn rat_interpolate<F: Field>(
    f: &F,
    pts: &[(F::Elem, F::Elem)],
    dn: i64,
    dd: i64,
) -> Option<RatFunc<F::Elem>> {
    assert!(pts.len() as i64 > dn + dd, "need more samples than dn + dd");
    let mut modulus = UPoly::constant(f, f.one());
    for (x, _) in pts {
        let lin = UPoly::new(f, vec![f.neg(x), f.one()]);
        modulus = modulus.mul(f, &lin);
    }
    let p = interpolate(f, pts);
    // extended Euclid on (modulus, p); stop when remainder degree <= dn
    let (mut r0, mut r1) = (modulus, p);
    let (mut t0, mut t1) = (UPoly::zero(), UPoly::constant(f, f.one()));
    while r1.degree() > dn {
        let (q, r) = r0.divrem(f, &r1);
        let t = t0.sub(f, &q.mul(f, &t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if t1.degree() > dd || t1.is_zero() {
        return None;
    }
    let g = r1.gcd(f, &t1);
    if g.degree() > 0 {
        return None;
    }
    let rf = RatFunc::new(f, r1, t1);
    // the Euclidean candidate can fail at poles of the denominator; verify
    for (x, y) in pts {
        if f.is_zero(&rf.den.eval(f, x)) {
            return None;
        }
        if rf.eval(f, x) != *y {
            return None;
        }
    }
    Some(rf)
}

/// Rational function num/den, denominator monic, gcd(num, den) = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<T> {
    pub num: UPoly<T>,
    pub den: UPoly<T>,
}

impl<T: Clone + PartialEq + std::fmt::Debug> RatFunc<T> {
    pub fn zero<F: Field<Elem = T>>(f: &F) -> Self {
        RatFunc { num: UPoly::zero(), den: UPoly::constant(f, f.one()) }
    }

    pub fn from_poly<F: Field<Elem = T>>(f: &F, p: UPoly<T>) -> Self {
        RatFunc { num: p, den: UPoly::constant(f, f.one()) }
    }

    pub fn new<F: Field<Elem = T>>(f: &F, num: UPoly<T>, den: UPoly<T>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num: UPoly::zero(), den: UPoly::constant(f, f.one()) };
        }
        let g = num.gcd(f, &den);
        let (num, den) = if g.degree() > 0 {
            (num.divrem(f, &g).0, den.divrem(f, &g).0)
        } else {
            (num, den)
        };
        let li = f.inv(den.lead()).unwrap();
        RatFunc { num: num.scale(f, &li), den: den.scale(f, &li) }
    }

    pub fn constant<F: Field<Elem = T>>(f: &F, a: T) -> Self {
        Self::new(f, UPoly::constant(f, a), UPoly::constant(f, f.one()))
    }

    pub fn x<F: Field<Elem = T>>(f: &F) -> Self {
        Self::new(f, UPoly::x(f), UPoly::constant(f, f.one()))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add<F: Field<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        let num = self.num.mul(f, &o.den).add(f, &o.num.mul(f, &self.den));
        Self::new(f, num, self.den.mul(f, &o.den))
    }

    pub fn sub<F: Field<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        self.add(f, &o.neg(f))
    }

    pub fn neg<F: Field<Elem = T>>(&self, f: &F) -> Self {
        RatFunc { num: self.num.neg(f), den: self.den.clone() }
    }

    pub fn mul<F: Field<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        Self::new(f, self.num.mul(f, &o.num), self.den.mul(f, &o.den))
    }

    pub fn inv<F: Field<Elem = T>>(&self, f: &F) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(f, self.den.clone(), self.num.clone()))
    }

    pub fn div<F: Field<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        self.mul(f, &o.inv(f).expect("division by zero"))
    }

    pub fn eval<F: Field<Elem = T>>(&self, f: &F, x: &T) -> T {
        f.div(&self.num.eval(f, x), &self.den.eval(f, x))
    }

    /// v_pi: num valuation minus den valuation.
    pub fn valuation<F: Field<Elem = T>>(&self, f: &F, pi: &UPoly<T>) -> i64 {
        assert!(!self.is_zero(), "valuation of zero");
        self.num.valuation(f, pi) as i64 - self.den.valuation(f, pi) as i64
    }

    /// Degree of num minus degree of den; valuation at infinity is its negative.
    pub fn degree(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.num.degree() - self.den.degree()
    }

    pub fn derivative<F: Field<Elem = T>>(&self, f: &F) -> Self {
        let num = self
            .num
            .derivative(f)
            .mul(f, &self.den)
            .sub(f, &self.num.mul(f, &self.den.derivative(f)));
        Self::new(f, num, self.den.mul(f, &self.den))
    }

    pub fn sqrt<F: Field<Elem = T>>(&self, f: &F) -> Option<Self> {
        let dn = self.den.sqrt_exact(f)?;
        let nn = self.num.sqrt_exact(f)?;
        Some(Self::new(f, nn, dn))
    }

    /// Substitute another rational function for the variable.
    pub fn compose_ratfunc<F: Field<Elem = T>>(&self, f: &F, x: &RatFunc<T>) -> Self {
        let n = self.num.eval_ratfunc(f, x);
        let d = self.den.eval_ratfunc(f, x);
        n.div(f, &d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat_i64, Rationals};

    fn qp(c: &[i64]) -> UPoly<crate::field::Rat> {
        UPoly::from_i64(&Rationals, c)
    }

    #[test]
    fn divrem_gcd() {
        let q = Rationals;
        let a = qp(&[-1, 0, 0, 0, 1]); // x^4 - 1
        let b = qp(&[-1, 0, 1]); // x^2 - 1
        let (quo, rem) = a.divrem(&q, &b);
        assert_eq!(quo, qp(&[1, 0, 1]));
        assert!(rem.is_zero());
        assert_eq!(a.gcd(&q, &b), b);
        let (g, u, v) = a.xgcd(&q, &qp(&[2, 1]));
        assert_eq!(g, qp(&[1]));
        assert_eq!(u.mul(&q, &a).add(&q, &v.mul(&q, &qp(&[2, 1]))), qp(&[1]));
    }

    #[test]
    fn sqrt_and_squarefree() {
        let q = Rationals;
        let p = qp(&[1, 2, 1]); // (x+1)^2
        assert_eq!(p.sqrt_exact(&q), Some(qp(&[1, 1])));
        assert_eq!(qp(&[1, 1, 1]).sqrt_exact(&q), None);
        let s = qp(&[0, 1]).mul(&q, &p); // x (x+1)^2
        assert_eq!(s.squarefree_part(&q), qp(&[0, 1, 1]));
        let big = qp(&[4, 12, 9]); // (3x+2)^2
        assert_eq!(big.sqrt_exact(&q), Some(qp(&[2, 3])));
    }

    #[test]
    fn valuation_and_ratfunc() {
        let q = Rationals;
        let pi = qp(&[1, 1]);
        let p = pi.pow(&q, 3).mul(&q, &qp(&[5, 0, 1]));
        assert_eq!(p.valuation(&q, &pi), 3);
        let r = RatFunc::new(&q, qp(&[0, 1]), pi.pow(&q, 2));
        assert_eq!(r.valuation(&q, &pi), -2);
        assert_eq!(r.valuation(&q, &qp(&[0, 1])), 1);
        let s = r.add(&q, &r);
        assert_eq!(s.num, qp(&[0, 2]));
        assert_eq!(
            r.eval(&q, &rat_i64(1)),
            rat_i64(1) / rat_i64(4)
        );
    }

    #[test]
    fn interpolation() {
        let q = Rationals;
        let target = qp(&[1, -3, 0, 2]);
        let pts: Vec<_> = (0..4)
            .map(|i| (rat_i64(i), target.eval(&q, &rat_i64(i))))
            .collect();
        assert_eq!(interpolate(&q, &pts), target);
    }

    #[test]
    fn rational_reconstruction() {
        let q = Rationals;
        let target = RatFunc::new(&q, qp(&[1, 0, 2]), qp(&[-3, 1]));
        let pts: Vec<_> = (4..10)
            .map(|i| (rat_i64(i), target.eval(&q, &rat_i64(i))))
            .collect();
        let got = rat_interpolate(&q, &pts, 2, 1).unwrap();
        assert_eq!(got, target);
        // degree bounds too small
        assert!(rat_interpolate(&q, &pts, 1, 0).is_none());
    }

    #[test]
    fn compose() {
        let q = Rationals;
        let p = qp(&[1, 0, 1]); // x^2 + 1
        let inv_t = RatFunc::new(&q, qp(&[1]), qp(&[0, 1]));
        let r = p.eval_ratfunc(&q, &inv_t); // 1/T^2 + 1 = (T^2+1)/T^2
        assert_eq!(r.num, qp(&[1, 0, 1]));
        assert_eq!(r.den, qp(&[0, 0, 1]));
    }
}
