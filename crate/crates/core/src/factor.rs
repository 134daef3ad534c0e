//! Polynomial factorization: Cantor-Zassenhaus over prime fields and
//! Zassenhaus (factor mod p, Hensel lift, subset recombination) over Q.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::is_prime_u64;
use crate::field::{Field, Rat, Rationals};
use crate::fp::PrimeField;
use crate::poly::UPoly;

/// a^e mod m with a big exponent.
fn poly_powmod_big(f: &PrimeField, base: &UPoly<u64>, e: &BigUint, m: &UPoly<u64>) -> UPoly<u64> {
    let mut acc = UPoly::constant(f, 1);
    let mut b = base.rem(f, m);
    for i in 0..e.bits() {
        if e.bit(i) {
            acc = acc.mul(f, &b).rem(f, m);
        }
        b = b.mul(f, &b).rem(f, m);
    }
    acc
}

/// Full factorization over F_p into monic irreducibles with multiplicity,
/// sorted by (degree, coefficient vector).  Leading coefficient is dropped.
pub fn factor_fp(f: &PrimeField, poly: &UPoly<u64>) -> Vec<(UPoly<u64>, u32)> {
    assert!(!poly.is_zero());
    let mut out: Vec<(UPoly<u64>, u32)> = Vec::new();
    let mut rest = poly.monic(f);
    while rest.degree() > 0 {
        let deriv = rest.derivative(f);
        if deriv.is_zero() {
            // rest = g(x^p); p-th roots of coefficients are the coefficients
            let p = f.p as usize;
            let c: Vec<u64> = rest.c.iter().step_by(p).cloned().collect();
            let g = UPoly::new(f, c);
            for (q, e) in factor_fp(f, &g) {
                merge_factor(&mut out, q, e * f.p as u32);
            }
            break;
        }
        let sf = rest.divrem(f, &rest.gcd(f, &deriv)).0.monic(f);
        for q in factor_squarefree_fp(f, &sf) {
            let e = rest.valuation(f, &q);
            debug_assert!(e >= 1);
            for _ in 0..e {
                rest = rest.divrem(f, &q).0;
            }
            merge_factor(&mut out, q, e);
        }
        rest = rest.monic(f);
    }
    out.sort_by(|a, b| (a.0.degree(), &a.0.c).cmp(&(b.0.degree(), &b.0.c)));
    out
}

fn merge_factor(out: &mut Vec<(UPoly<u64>, u32)>, q: UPoly<u64>, e: u32) {
    for (f, m) in out.iter_mut() {
        if *f == q {
            *m += e;
            return;
        }
    }
    out.push((q, e));
}

/// Distinct-degree then equal-degree splitting; input squarefree monic.
fn factor_squarefree_fp(f: &PrimeField, poly: &UPoly<u64>) -> Vec<UPoly<u64>> {
    let mut out = Vec::new();
    let x = UPoly::x(f);
    let mut rest = poly.clone();
    let mut xp = x.rem(f, &rest);
    let mut d = 0u32;
    while rest.degree() > 0 {
        d += 1;
        if (rest.degree() as u32) < 2 * d {
            out.push(rest.clone());
            break;
        }
        xp = crate::fq::poly_powmod(f, &xp, f.p, &rest);
        let g = rest.gcd(f, &xp.sub(f, &x));
        if g.degree() > 0 {
            equal_degree_split(f, &g, d, &mut out);
            rest = rest.divrem(f, &g).0;
            xp = xp.rem(f, &rest);
        }
    }
    out
}

fn equal_degree_split(f: &PrimeField, g: &UPoly<u64>, d: u32, out: &mut Vec<UPoly<u64>>) {
    if g.degree() == d as i64 {
        out.push(g.monic(f));
        return;
    }
    // deterministic splitting randomness keyed by the polynomial
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&f.p.to_le_bytes());
    for (i, c) in g.c.iter().enumerate().take(3) {
        seed[8 + 8 * i..16 + 8 * i].copy_from_slice(&c.to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(seed);
    let e = (BigUint::from(f.p).pow(d) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a = UPoly::new(
            f,
            (0..g.degree() as usize).map(|_| rng.gen_range(0..f.p)).collect(),
        );
        if a.degree() < 1 && a.is_zero() {
            continue;
        }
        let b = poly_powmod_big(f, &a, &e, g).sub(f, &UPoly::constant(f, 1));
        let w = g.gcd(f, &b);
        if w.degree() > 0 && w.degree() < g.degree() {
            let other = g.divrem(f, &w).0;
            equal_degree_split(f, &w, d, out);
            equal_degree_split(f, &other, d, out);
            return;
        }
    }
}

/// Roots in F_p, ascending.
pub fn roots_fp(f: &PrimeField, poly: &UPoly<u64>) -> Vec<u64> {
    let mut r: Vec<u64> = factor_fp(f, poly)
        .into_iter()
        .filter(|(q, _)| q.degree() == 1)
        .map(|(q, _)| f.neg(&q.c[0]))
        .collect();
    r.sort_unstable();
    r
}

// ---- integer polynomial helpers (dense BigInt vectors, low degree first) ----

fn zp_norm(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.last().map_or(false, |x| x.is_zero()) {
        c.pop();
    }
    c
}

fn zp_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

/// Exact division over Z; None if not exact (requires divisor monic-friendly
/// leading division at each step).
fn zp_divexact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.is_empty() {
        return None;
    }
    let mut r: Vec<BigInt> = a.to_vec();
    r = zp_norm(r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let bl = &b[b.len() - 1];
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for i in (b.len() - 1..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (t, rem) = r[i].div_rem(bl);
        if !rem.is_zero() {
            return None;
        }
        q[i - (b.len() - 1)] = t.clone();
        for (j, y) in b.iter().enumerate() {
            let idx = i - (b.len() - 1) + j;
            r[idx] = &r[idx] - &t * y;
        }
    }
    if zp_norm(r).is_empty() {
        Some(zp_norm(q))
    } else {
        None
    }
}

fn zp_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    zp_norm(a.iter().map(|x| x.mod_floor(m)).collect())
}

/// Coefficients into the symmetric range (-m/2, m/2].
fn zp_symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    zp_norm(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn zp_mulmod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    zp_mod(&zp_mul(a, b), m)
}

fn zp_submod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_else(BigInt::zero);
    zp_norm((0..n).map(|i| (get(a, i) - get(b, i)).mod_floor(m)).collect())
}

/// Division with remainder mod m; divisor must be monic.
fn zp_divrem_monic_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    assert!(b.last().map_or(false, |x| x.is_one()), "divisor not monic");
    let mut r: Vec<BigInt> = zp_mod(a, m);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for i in (b.len() - 1..r.len()).rev() {
        let t = r[i].clone();
        if t.is_zero() {
            continue;
        }
        q[i - (b.len() - 1)] = t.clone();
        for (j, y) in b.iter().enumerate() {
            let idx = i - (b.len() - 1) + j;
            r[idx] = (&r[idx] - &t * y).mod_floor(m);
        }
    }
    (zp_norm(q), zp_norm(r))
}

fn upoly_u64_to_z(p: &UPoly<u64>) -> Vec<BigInt> {
    p.c.iter().map(|&x| BigInt::from(x)).collect()
}

/// Quadratic Hensel: from f = g*h (mod p), s*g + t*h = 1 (mod p), g and h
/// monic, lift to modulus >= bound.  Returns (g, h, s, t, modulus).
#[allow(clippy::type_complexity)]
fn hensel_pair(
    fz: &[BigInt],
    g0: &[BigInt],
    h0: &[BigInt],
    s0: &[BigInt],
    t0: &[BigInt],
    p: &BigInt,
    bound: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, BigInt) {
    let mut m = p.clone();
    let (mut g, mut h) = (g0.to_vec(), h0.to_vec());
    let (mut s, mut t) = (s0.to_vec(), t0.to_vec());
    while &m < bound {
        let m2 = &m * &m;
        let e = zp_submod(fz, &zp_mul(&g, &h), &m2);
        let se = zp_mulmod(&s, &e, &m2);
        let (q, r) = zp_divrem_monic_mod(&se, &h, &m2);
        let mut gn = zp_submod(&zp_submod(&g, &zp_mulmod(&t, &e, &m2).iter().map(|x| -x).collect::<Vec<_>>(), &m2), &zp_mul(&q, &g).iter().map(|x| -x).collect::<Vec<_>>(), &m2);
        gn = zp_mod(&gn, &m2);
        let hn = zp_mod(&{
            let n = h.len().max(r.len());
            let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_else(BigInt::zero);
            (0..n).map(|i| get(&h, i) + get(&r, i)).collect::<Vec<_>>()
        }, &m2);
        // correct the Bezout pair
        let b = zp_submod(&zp_submod(&zp_mulmod(&s, &gn, &m2), &{
            let one = vec![BigInt::one()];
            one
        }, &m2), &zp_mulmod(&t, &hn, &m2).iter().map(|x| -x).collect::<Vec<_>>(), &m2);
        let sb = zp_mulmod(&s, &b, &m2);
        let (c, d) = zp_divrem_monic_mod(&sb, &hn, &m2);
        let sn = zp_submod(&s, &d, &m2);
        let tn = zp_submod(&zp_submod(&t, &zp_mulmod(&t, &b, &m2), &m2), &zp_mulmod(&c, &gn, &m2), &m2);
        g = gn;
        h = hn;
        s = sn;
        t = tn;
        m = m2;
    }
    (g, h, s, t, m)
}

/// Lift a full modular factorization of monic fz to modulus >= bound.
fn multi_hensel(
    fz: &[BigInt],
    factors: &[UPoly<u64>],
    field: &PrimeField,
    bound: &BigInt,
) -> (Vec<Vec<BigInt>>, BigInt) {
    let p = BigInt::from(field.p);
    if factors.len() == 1 {
        let mut m = p.clone();
        while &m < bound {
            m = &m * &m;
        }
        return (vec![zp_mod(fz, &m)], m);
    }
    let mid = factors.len() / 2;
    let gp = factors[..mid]
        .iter()
        .fold(UPoly::constant(field, 1), |a, b| a.mul(field, b));
    let hp = factors[mid..]
        .iter()
        .fold(UPoly::constant(field, 1), |a, b| a.mul(field, b));
    let (one, s, t) = gp.xgcd(field, &hp);
    assert_eq!(one.degree(), 0, "modular factors not coprime");
    let (g, h, _, _, m) = hensel_pair(
        fz,
        &upoly_u64_to_z(&gp),
        &upoly_u64_to_z(&hp),
        &upoly_u64_to_z(&s),
        &upoly_u64_to_z(&t),
        &p,
        bound,
    );
    let (mut left, _) = multi_hensel(&g, &factors[..mid], field, bound);
    let (right, _) = multi_hensel(&h, &factors[mid..], field, bound);
    left.extend(right);
    (left, m)
}

/// Monic irreducible factors over Q with multiplicities, sorted by degree
/// then coefficients; the constant in front is not returned.
pub fn factor_q(poly: &UPoly<Rat>) -> Vec<(UPoly<Rat>, u32)> {
    let q = Rationals;
    assert!(!poly.is_zero());
    if poly.degree() == 0 {
        return Vec::new();
    }
    // squarefree part, then irreducible factors, then multiplicities
    let sf = poly.squarefree_part(&q);
    let irr = factor_squarefree_q(&sf);
    let mut out: Vec<(UPoly<Rat>, u32)> = Vec::new();
    for g in irr {
        let e = poly.valuation(&q, &g);
        debug_assert!(e >= 1);
        out.push((g, e));
    }
    out.sort_by(|a, b| {
        (a.0.degree(), format!("{:?}", a.0.c)).cmp(&(b.0.degree(), format!("{:?}", b.0.c)))
    });
    out
}

fn factor_squarefree_q(poly: &UPoly<Rat>) -> Vec<UPoly<Rat>> {
    let q = Rationals;
    let n = poly.degree();
    if n <= 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![poly.monic(&q)];
    }
    // clear denominators, make primitive
    let mut den = BigInt::one();
    for c in &poly.c {
        den = den.lcm(c.denom());
    }
    let mut z: Vec<BigInt> = poly.c.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let content = z.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    for c in z.iter_mut() {
        *c /= &content;
    }
    // monicize: F(x) = l^(n-1) * f(x/l) is monic over Z
    let l = z.last().unwrap().clone();
    let nn = z.len() - 1;
    let fz: Vec<BigInt> = z
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i == nn {
                BigInt::one()
            } else {
                c * l.pow((nn - 1 - i) as u32)
            }
        })
        .collect();
    // choose a prime keeping F squarefree
    let mut chosen: Option<(PrimeField, UPoly<u64>)> = None;
    let mut p = 3u64;
    while chosen.is_none() {
        p += 2;
        if !is_prime_u64(p) {
            continue;
        }
        let f = PrimeField::new(p);
        let fp = UPoly::new(
            &f,
            fz.iter().map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap()).collect(),
        );
        if fp.degree() != nn as i64 {
            continue;
        }
        if fp.gcd(&f, &fp.derivative(&f)).degree() == 0 {
            chosen = Some((f, fp));
        }
    }
    let (field, fp) = chosen.unwrap();
    let modular: Vec<UPoly<u64>> = factor_fp(&field, &fp).into_iter().map(|(g, _)| g).collect();
    if modular.len() == 1 {
        return vec![rat_poly_from_z(&fz).monic(&q).compose_scaled(&l)];
    }
    // Landau-Mignotte style bound: 2^n * l2norm, doubled for the symmetric range
    let norm2: BigInt = fz.iter().map(|c| c * c).sum();
    let bound = (BigInt::from(2).pow(nn as u32 + 2)) * (norm2.sqrt() + BigInt::one());
    let (lifted, modulus) = multi_hensel(&fz, &modular, &field, &bound);
    // subset recombination
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut rest = fz.clone();
    let mut found: Vec<Vec<BigInt>> = Vec::new();
    let mut k = 1usize;
    while 2 * k <= remaining.len() {
        let mut advanced = false;
        for subset in subsets(remaining.len(), k) {
            let mut prod = vec![BigInt::one()];
            for &i in &subset {
                prod = zp_mulmod(&prod, &remaining[i], &modulus);
            }
            let cand = zp_symmetric(&prod, &modulus);
            if let Some(quot) = zp_divexact(&rest, &cand) {
                found.push(cand);
                rest = quot;
                let keep: Vec<Vec<BigInt>> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                remaining = keep;
                advanced = true;
                break;
            }
        }
        if !advanced {
            k += 1;
        }
    }
    if zp_norm(rest.clone()).len() > 1 {
        found.push(rest);
    }
    found
        .into_iter()
        .map(|g| rat_poly_from_z(&g).monic(&q).compose_scaled(&l))
        .collect()
}

fn rat_poly_from_z(z: &[BigInt]) -> UPoly<Rat> {
    UPoly::new(&Rationals, z.iter().map(|c| Rat::from(c.clone())).collect())
}

impl UPoly<Rat> {
    /// Undo the monicization substitution: g(x) -> monic multiple of g(l x).
    fn compose_scaled(&self, l: &BigInt) -> UPoly<Rat> {
        let q = Rationals;
        let lr = Rat::from(l.clone());
        let c: Vec<Rat> = self
            .c
            .iter()
            .enumerate()
            .map(|(i, a)| a * lr.clone().pow(i as i32))
            .collect();
        UPoly::new(&q, c).monic(&q)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Rational roots of a Q[x] polynomial, via its degree-1 monic factors.
pub fn rational_roots(poly: &UPoly<Rat>) -> Vec<Rat> {
    factor_q(poly)
        .into_iter()
        .filter(|(g, _)| g.degree() == 1)
        .map(|(g, _)| -g.c[0].clone())
        .collect()
}

pub fn is_irreducible_q(poly: &UPoly<Rat>) -> bool {
    poly.degree() >= 1 && {
        let f = factor_q(poly);
        f.len() == 1 && f[0].1 == 1 && f[0].0.degree() == poly.degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat_i64;

    fn qp(c: &[i64]) -> UPoly<Rat> {
        UPoly::from_i64(&Rationals, c)
    }

    #[test]
    fn fp_factor_small() {
        let f = PrimeField::new(7);
        let p = UPoly::from_i64(&f, &[1, 0, 1]); // x^2 + 1 = (x-...)(x+...) mod 7? -1 non-QR mod 7
        assert_eq!(factor_fp(&f, &p).len(), 1);
        let p2 = UPoly::from_i64(&f, &[6, 0, 1]); // x^2 - 1
        let fs = factor_fp(&f, &p2);
        assert_eq!(fs.len(), 2);
        assert_eq!(roots_fp(&f, &p2), vec![1, 6]);
    }

    #[test]
    fn fp_factor_with_multiplicity() {
        let f = PrimeField::new(13);
        // (x+1)^2 (x^2+2) x
        let p = UPoly::from_i64(&f, &[1, 1])
            .pow(&f, 2)
            .mul(&f, &UPoly::from_i64(&f, &[2, 0, 1]))
            .mul(&f, &UPoly::from_i64(&f, &[0, 1]));
        let fs = factor_fp(&f, &p);
        let prod = fs.iter().fold(UPoly::constant(&f, 1), |a, (g, e)| {
            a.mul(&f, &g.pow(&f, *e))
        });
        assert_eq!(prod, p.monic(&f));
        assert_eq!(fs.iter().map(|(_, e)| e).sum::<u32>() , 4);
    }

    #[test]
    fn fp_factor_high_degree() {
        // x^35 - 1 over F_11: factors into cyclotomic pieces
        let f = PrimeField::new(11);
        let mut c = vec![0i64; 36];
        c[0] = -1;
        c[35] = 1;
        let p = UPoly::from_i64(&f, &c);
        let fs = factor_fp(&f, &p);
        let total: i64 = fs.iter().map(|(g, e)| g.degree() * (*e as i64)).sum();
        assert_eq!(total, 35);
        for (g, _) in &fs {
            // each factor divides x^35 - 1
            assert!(p.rem(&f, g).is_zero());
        }
    }

    #[test]
    fn q_factor_products() {
        let q = Rationals;
        let a = qp(&[-1, 1]); // x - 1
        let b = qp(&[1, 1, 1]); // x^2 + x + 1
        let c = qp(&[2, 0, 1]); // x^2 + 2
        let p = a.mul(&q, &b).mul(&q, &c).mul(&q, &a);
        let fs = factor_q(&p);
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(UPoly::constant(&q, q.one()), |acc, (g, e)| {
            acc.mul(&q, &g.pow(&q, *e))
        });
        assert_eq!(prod, p.monic(&q));
        assert!(fs.iter().any(|(g, e)| *g == a && *e == 2));
    }

    #[test]
    fn q_factor_irreducible() {
        assert!(is_irreducible_q(&qp(&[1, 1, 1, 1, 1, 1, 1]))); // Phi_7
        assert!(is_irreducible_q(&qp(&[-2, 0, 0, 0, 0, 1]))); // x^5 - 2
        assert!(!is_irreducible_q(&qp(&[-1, 0, 0, 0, 1])));
    }

    #[test]
    fn q_factor_nonmonic_and_rational_coeffs() {
        let q = Rationals;
        // (2x + 1)(3x^2 + x + 5), non-monic
        let p = qp(&[1, 2]).mul(&q, &qp(&[5, 1, 3]));
        let fs = factor_q(&p);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].0, qp(&[1, 2]).monic(&q));
        assert_eq!(fs[1].0, qp(&[5, 1, 3]).monic(&q));
        assert_eq!(rational_roots(&p), vec![rat_i64(-1) / rat_i64(2)]);
    }

    #[test]
    fn q_factor_swinnerton_dyer_style() {
        let q = Rationals;
        // (x^2-2)(x^2-3)(x^2-6): modular factors recombine nontrivially
        let p = qp(&[-2, 0, 1]).mul(&q, &qp(&[-3, 0, 1])).mul(&q, &qp(&[-6, 0, 1]));
        let fs = factor_q(&p);
        assert_eq!(fs.len(), 3);
        for (g, e) in fs {
            assert_eq!(g.degree(), 2);
            assert_eq!(e, 1);
        }
    }
}
