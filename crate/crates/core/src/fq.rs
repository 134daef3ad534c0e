//! Extension fields F_{p^r} as F_p[x] modulo a deterministically chosen
//! irreducible, so cached data is reproducible across runs and machines.

use crate::field::Field;
use crate::fp::PrimeField;
use crate::poly::UPoly;

/// F_{p^r}; elements are coefficient vectors of length r (low degree first).
#[derive(Clone, Debug, PartialEq)]
pub struct ExtField {
    pub base: PrimeField,
    pub r: usize,
    /// Monic irreducible of degree r, length r+1.
    pub modulus: Vec<u64>,
    /// red[k] = x^(r+k) reduced, k = 0..r-1.
    red: Vec<Vec<u64>>,
}

/// Monic polynomials of degree r scanned in lexicographic order of the
/// coefficient vector (a_0, ..., a_{r-1}); the first irreducible one is the
/// modulus.  For (p, r) = (3, 2) this picks x^2 + 1.
pub fn choose_modulus(p: u64, r: usize) -> Vec<u64> {
    assert!(r >= 1);
    let f = PrimeField::new(p);
    let total = p.checked_pow(r as u32).expect("field too large");
    for n in 0..total {
        let mut c: Vec<u64> = (0..r)
            .map(|i| (n / p.pow((r - 1 - i) as u32)) % p)
            .collect();
        c.push(1);
        if is_irreducible(&f, &c) {
            return c;
        }
    }
    unreachable!("no irreducible polynomial found");
}

/// x^(p^k) mod f via repeated Frobenius; used for irreducibility.
fn is_irreducible(f: &PrimeField, c: &[u64]) -> bool {
    let poly = UPoly::new(f, c.to_vec());
    let r = poly.degree();
    if r < 1 {
        return false;
    }
    if r == 1 {
        return true;
    }
    let x = UPoly::x(f);
    // x^(p^r) == x mod poly
    let mut xp = x.clone();
    let mut powers = vec![x.clone()];
    for _ in 0..r {
        xp = poly_powmod(f, &xp, f.p, &poly);
        powers.push(xp.clone());
    }
    if powers[r as usize] != x.rem(f, &poly) {
        return false;
    }
    // gcd(x^(p^(r/l)) - x, poly) trivial for prime l | r
    let mut m = r as u64;
    let mut ls = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            ls.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        ls.push(m);
    }
    for l in ls {
        let k = (r as u64 / l) as usize;
        let diff = powers[k].sub(f, &x);
        if poly.gcd(f, &diff).degree() > 0 {
            return false;
        }
    }
    true
}

pub fn poly_powmod(
    f: &PrimeField,
    base: &UPoly<u64>,
    mut e: u64,
    m: &UPoly<u64>,
) -> UPoly<u64> {
    let mut acc = UPoly::constant(f, 1);
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

impl ExtField {
    pub fn new(p: u64, r: usize) -> Self {
        let modulus = choose_modulus(p, r);
        Self::with_modulus(p, modulus)
    }

    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Self {
        let base = PrimeField::new(p);
        let r = modulus.len() - 1;
        assert_eq!(modulus[r], 1, "modulus must be monic");
        // precompute x^(r+k) mod modulus
        let mut red: Vec<Vec<u64>> = Vec::with_capacity(r);
        let mut cur: Vec<u64> = modulus[..r].iter().map(|&a| base.neg(&a)).collect();
        red.push(cur.clone());
        for _ in 1..r {
            // multiply by x and reduce
            let top = cur[r - 1];
            let mut next = vec![0u64; r];
            for i in (1..r).rev() {
                next[i] = cur[i - 1];
            }
            if top != 0 {
                for i in 0..r {
                    next[i] = base.add(&next[i], &base.mul(&top, &red[0][i]));
                }
            }
            red.push(next.clone());
            cur = next;
        }
        ExtField { base, r, modulus, red }
    }

    pub fn q(&self) -> u64 {
        self.base.p.pow(self.r as u32)
    }

    pub fn embed(&self, a: u64) -> Vec<u64> {
        let mut v = vec![0; self.r];
        v[0] = a % self.base.p;
        v
    }

    pub fn gen_x(&self) -> Vec<u64> {
        let mut v = vec![0; self.r];
        if self.r > 1 {
            v[1] = 1;
        } else {
            // degree-1 modulus: x = -c0
            v[0] = self.base.neg(&self.modulus[0]);
        }
        v
    }

    /// n-th element in lexicographic order of coordinate vectors (a_0 most
    /// significant), the fixed iteration order.
    pub fn from_index(&self, n: u64) -> Vec<u64> {
        let p = self.base.p;
        (0..self.r)
            .map(|i| (n / p.pow((self.r - 1 - i) as u32)) % p)
            .collect()
    }

    pub fn to_index(&self, e: &[u64]) -> u64 {
        let p = self.base.p;
        e.iter().fold(0, |acc, &d| acc * p + d)
    }

    pub fn iter_elems(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.q()).map(move |n| self.from_index(n))
    }

    pub fn pow_u64(&self, a: &Vec<u64>, mut e: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Quadratic character: 0 on zero, else +-1.
    pub fn chi(&self, a: &Vec<u64>) -> i32 {
        if self.is_zero(a) {
            return 0;
        }
        let e = self.pow_u64(a, (self.q() - 1) / 2);
        if self.is_one(&e) {
            1
        } else {
            -1
        }
    }

    fn to_poly(&self, a: &[u64]) -> UPoly<u64> {
        UPoly::new(&self.base, a.to_vec())
    }

    fn from_poly(&self, p: &UPoly<u64>) -> Vec<u64> {
        let mut v = vec![0; self.r];
        for (i, a) in p.c.iter().enumerate() {
            v[i] = *a;
        }
        v
    }
}

impl Field for ExtField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.r]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.r];
        v[0] = 1;
        v
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        self.embed(self.base.reduce_i64(n))
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let r = self.r;
        let mut prod = vec![0u64; 2 * r - 1];
        for i in 0..r {
            if a[i] == 0 {
                continue;
            }
            for j in 0..r {
                prod[i + j] = self.base.add(&prod[i + j], &self.base.mul(&a[i], &b[j]));
            }
        }
        let mut out: Vec<u64> = prod[..r].to_vec();
        for k in r..(2 * r - 1) {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            let row = &self.red[k - r];
            for i in 0..r {
                out[i] = self.base.add(&out[i], &self.base.mul(&c, &row[i]));
            }
        }
        out
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let m = UPoly::new(&self.base, self.modulus.clone());
        let ap = self.to_poly(a);
        let (g, u, _) = ap.xgcd(&self.base, &m);
        assert_eq!(g.degree(), 0);
        let gi = self.base.inv(g.lead()).unwrap();
        Some(self.from_poly(&u.scale(&self.base, &gi).rem(&self.base, &m)))
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }
    fn characteristic(&self) -> u64 {
        self.base.p
    }
    /// Tonelli-Shanks in the cyclic group of order q - 1.
    fn sqrt(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if self.chi(a) != 1 {
            return None;
        }
        let q = self.q();
        if q % 4 == 3 {
            return Some(self.lex_min_root(self.pow_u64(a, (q + 1) / 4)));
        }
        let mut s = 0u32;
        let mut m2 = q - 1;
        while m2 % 2 == 0 {
            m2 /= 2;
            s += 1;
        }
        // first nonresidue in enumeration order
        let z = (1..q)
            .map(|n| self.from_index(n))
            .find(|e| self.chi(e) == -1)
            .expect("no nonresidue");
        let mut m = s;
        let mut c = self.pow_u64(&z, m2);
        let mut t = self.pow_u64(a, m2);
        let mut r = self.pow_u64(a, (m2 + 1) / 2);
        while !self.is_one(&t) {
            let mut i = 0u32;
            let mut tt = t.clone();
            while !self.is_one(&tt) {
                tt = self.mul(&tt, &tt);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(self.lex_min_root(r))
    }
    fn from_rat(&self, q: &crate::field::Rat) -> Vec<u64> {
        self.embed(self.base.from_rat(q))
    }
    fn canonical_positive(&self, a: &Vec<u64>) -> bool {
        *a <= self.neg(a)
    }
}

impl ExtField {
    /// Canonical square root: lexicographically smaller coordinate vector
    /// among r and -r.
    fn lex_min_root(&self, r: Vec<u64>) -> Vec<u64> {
        let n = self.neg(&r);
        if n < r {
            n
        } else {
            r
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_choice() {
        assert_eq!(choose_modulus(3, 2), vec![1, 0, 1]);
        assert_eq!(choose_modulus(5, 1), vec![0, 1]);
        // for p = 5 the scan passes x^2, x^2+x, ..., x^2+1 (all split) first
        assert_eq!(choose_modulus(5, 2), vec![1, 1, 1]);
    }

    #[test]
    fn field_axioms_f9() {
        let f = ExtField::new(3, 2);
        assert_eq!(f.q(), 9);
        for a in f.iter_elems() {
            if f.is_zero(&a) {
                continue;
            }
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), f.one());
        }
        // multiplicative group has order 8
        for a in f.iter_elems() {
            if !f.is_zero(&a) {
                assert_eq!(f.pow_u64(&a, 8), f.one());
            }
        }
    }

    #[test]
    fn sqrt_f49_and_f125() {
        for (p, r) in [(7u64, 2usize), (5, 3), (13, 2)] {
            let f = ExtField::new(p, r);
            let mut squares = 0;
            for a in f.iter_elems() {
                let sq = f.mul(&a, &a);
                let root = f.sqrt(&sq).expect("square must have a root");
                assert_eq!(f.mul(&root, &root), sq);
                if f.chi(&a) == 1 {
                    squares += 1;
                }
            }
            assert_eq!(squares, (f.q() - 1) / 2);
        }
    }

    #[test]
    fn index_roundtrip() {
        let f = ExtField::new(5, 2);
        for n in 0..25 {
            assert_eq!(f.to_index(&f.from_index(n)), n);
        }
    }
}
