//! Sparse multivariate polynomials, arity at most 8.  Used for the covariant
//! forms and the double-cover model equations; univariate work stays dense.

use std::collections::BTreeMap;

use num_traits::One;

use crate::field::{Field, Rat};

pub const MAX_ARITY: usize = 8;

/// Terms keyed by exponent vector of fixed arity.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<T> {
    pub arity: usize,
    pub terms: BTreeMap<Vec<u16>, T>,
}

impl<T: Clone + PartialEq + std::fmt::Debug> MPoly<T> {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1 && arity <= MAX_ARITY, "arity out of range");
        MPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant<F: Field<Elem = T>>(f: &F, arity: usize, a: T) -> Self {
        let mut p = Self::zero(arity);
        if !f.is_zero(&a) {
            p.terms.insert(vec![0; arity], a);
        }
        p
    }

    pub fn var<F: Field<Elem = T>>(f: &F, arity: usize, i: usize) -> Self {
        assert!(i < arity);
        let mut p = Self::zero(arity);
        let mut e = vec![0; arity];
        e[i] = 1;
        p.terms.insert(e, f.one());
        p
    }

    pub fn from_terms<F: Field<Elem = T>>(
        f: &F,
        arity: usize,
        terms: Vec<(Vec<u16>, T)>,
    ) -> Self {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity);
            p.add_term(f, e, c);
        }
        p
    }

    fn add_term<F: Field<Elem = T>>(&mut self, f: &F, e: Vec<u16>, c: T) {
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = f.add(old, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as i64).sum())
            .max()
            .unwrap_or(-1)
    }

    pub fn add<F: Field<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        assert_eq!(self.arity, o.arity);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(f, e.clone(), c.clone());
        }
        p
    }

    pub fn neg<F: Field<Elem = T>>(&self, f: &F) -> Self {
        MPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub<F: Field<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        self.add(f, &o.neg(f))
    }

    pub fn mul<F: Field<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        assert_eq!(self.arity, o.arity);
        let mut p = Self::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(f, e, f.mul(c1, c2));
            }
        }
        p
    }

    pub fn scale<F: Field<Elem = T>>(&self, f: &F, a: &T) -> Self {
        let mut p = Self::zero(self.arity);
        for (e, c) in &self.terms {
            p.add_term(f, e.clone(), f.mul(c, a));
        }
        p
    }

    pub fn pow<F: Field<Elem = T>>(&self, f: &F, n: u32) -> Self {
        let mut acc = Self::constant(f, self.arity, f.one());
        for _ in 0..n {
            acc = acc.mul(f, self);
        }
        acc
    }

    pub fn deriv<F: Field<Elem = T>>(&self, f: &F, var: usize) -> Self {
        assert!(var < self.arity);
        let mut p = Self::zero(self.arity);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            p.add_term(f, e2, f.mul(c, &f.from_i64(e[var] as i64)));
        }
        p
    }

    pub fn eval<F: Field<Elem = T>>(&self, f: &F, vals: &[T]) -> T {
        assert_eq!(vals.len(), self.arity);
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    t = f.mul(&t, &vals[i]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitute a polynomial for every variable.
    pub fn subst<F: Field<Elem = T>>(&self, f: &F, vals: &[MPoly<T>]) -> MPoly<T> {
        assert_eq!(vals.len(), self.arity);
        let out_arity = vals[0].arity;
        let mut acc = MPoly::zero(out_arity);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(f, out_arity, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                t = t.mul(f, &vals[i].pow(f, exp as u32));
            }
            acc = acc.add(f, &t);
        }
        acc
    }

    pub fn map_coeffs<S, G, M>(&self, g: &G, m: M) -> MPoly<S>
    where
        S: Clone + PartialEq + std::fmt::Debug,
        G: Field<Elem = S>,
        M: Fn(&T) -> S,
    {
        let mut p = MPoly::zero(self.arity);
        for (e, c) in &self.terms {
            p.add_term(g, e.clone(), m(c));
        }
        p
    }
}

impl MPoly<Rat> {
    /// Canonical text form: terms in graded-lex order, coefficients as p/q.
    pub fn canonical_string(&self, vars: &[&str]) -> String {
        assert_eq!(vars.len(), self.arity);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&Vec<u16>> = self.terms.keys().collect();
        keys.sort_by_key(|e| {
            let total: i64 = e.iter().map(|&x| x as i64).sum();
            (-total, e.iter().map(|&x| -(x as i64)).collect::<Vec<_>>())
        });
        let mut out = String::new();
        for (idx, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let coeff_str = if c.denom().is_one() {
                format!("{}", c.numer())
            } else {
                format!("{}/{}", c.numer(), c.denom())
            };
            let mut mon = String::new();
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if !mon.is_empty() {
                    mon.push('*');
                }
                if exp == 1 {
                    mon.push_str(vars[i]);
                } else {
                    mon.push_str(&format!("{}^{}", vars[i], exp));
                }
            }
            let piece = if mon.is_empty() {
                coeff_str.clone()
            } else if coeff_str == "1" {
                mon.clone()
            } else if coeff_str == "-1" {
                format!("-{mon}")
            } else {
                format!("{coeff_str}*{mon}")
            };
            if idx == 0 {
                out.push_str(&piece);
            } else if piece.starts_with('-') {
                out.push_str(" - ");
                out.push_str(&piece[1..]);
            } else {
                out.push_str(" + ");
                out.push_str(&piece);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat_i64, Rationals};

    #[test]
    fn arithmetic_and_eval() {
        let q = Rationals;
        let x = MPoly::var(&q, 2, 0);
        let y = MPoly::var(&q, 2, 1);
        // (x + y)^2 = x^2 + 2xy + y^2
        let s = x.add(&q, &y).pow(&q, 2);
        assert_eq!(s.terms.len(), 3);
        assert_eq!(s.eval(&q, &[rat_i64(2), rat_i64(3)]), rat_i64(25));
        let d = s.deriv(&q, 0); // 2x + 2y
        assert_eq!(d.eval(&q, &[rat_i64(2), rat_i64(3)]), rat_i64(10));
    }

    #[test]
    fn substitution() {
        let q = Rationals;
        let x = MPoly::var(&q, 1, 0);
        let p = x.pow(&q, 2); // x^2
        let u = MPoly::var(&q, 2, 0);
        let v = MPoly::var(&q, 2, 1);
        let s = p.subst(&q, &[u.add(&q, &v)]); // (u+v)^2
        assert_eq!(s.total_degree(), 2);
        assert_eq!(s.eval(&q, &[rat_i64(1), rat_i64(2)]), rat_i64(9));
    }

    #[test]
    fn canonical_text() {
        let q = Rationals;
        let x = MPoly::var(&q, 2, 0);
        let y = MPoly::var(&q, 2, 1);
        let p = x
            .pow(&q, 2)
            .sub(&q, &y.scale(&q, &rat_i64(3)))
            .add(&q, &MPoly::constant(&q, 2, crate::field::rat_frac(1, 2)));
        assert_eq!(p.canonical_string(&["x", "y"]), "x^2 - 3*y + 1/2");
    }
}
