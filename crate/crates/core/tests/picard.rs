//! Picard number certification for the whole catalog: the Hodge bound
//! closes five surfaces, van Luijk's two-prime comparison closes three, and
//! the remaining three need the local obstruction between regulator forms.

use zne_core::field::{rat_frac, rat_i64, Rat, Rationals};
use zne_core::picard::{certify_picard, PicardMethod};
use zne_core::poly::UPoly;
use zne_core::surfaces::{catalog, surface};

// (x - 1)^e1 (x + 1)^e2 (x^2 + x + 1)^e3 times quadratics x^2 + (c/p) x + 1,
// normalized so the constant term is +1
fn assemble(p: i64, e1: u32, e2: u32, e3: u32, tails: &[i64], neg: bool) -> UPoly<Rat> {
    let q = Rationals;
    let mut f = UPoly::from_i64(&q, &[-1, 1]).pow(&q, e1);
    f = f.mul(&q, &UPoly::from_i64(&q, &[1, 1]).pow(&q, e2));
    f = f.mul(&q, &UPoly::from_i64(&q, &[1, 1, 1]).pow(&q, e3));
    for &c in tails {
        let t = UPoly::new(&q, vec![rat_i64(1), rat_frac(c, p), rat_i64(1)]);
        f = f.mul(&q, &t);
    }
    if neg {
        f = f.neg(&q);
    }
    if f.coeff(&q, 0) == rat_i64(-1) {
        f = f.neg(&q);
    }
    f
}

#[test]
fn hodge_bound_surfaces() {
    for s in catalog() {
        if 10 * s.m != s.rho {
            continue;
        }
        let cert = certify_picard(&s, &[]);
        assert_eq!(cert.rho, s.rho, "{}", s.label());
        assert_eq!(cert.method, PicardMethod::HodgeBound);
        assert_eq!(cert.lower, cert.upper);
    }
    // exactly five surfaces are closed this way
    let n = catalog().iter().filter(|s| 10 * s.m == s.rho).count();
    assert_eq!(n, 5);
}

#[test]
fn van_luijk_surfaces() {
    let rows: [(u32, u32, [(u64, (u32, u32, u32), &[i64], bool); 2]); 3] = [
        (9, 1, [(5, (16, 2, 1), &[7], false), (7, (18, 2, 0), &[10], false)]),
        (12, 1, [(5, (16, 4, 0), &[6], false), (11, (12, 8, 0), &[6], false)]),
        (9, 2, [(7, (24, 2, 2), &[10, 13], false), (13, (24, 0, 3), &[1, 25], false)]),
    ];
    for (n, eps, polys) in rows {
        let s = surface(n, eps);
        let frob: Vec<(u64, UPoly<Rat>)> = polys
            .iter()
            .map(|&(p, e, tails, neg)| (p, assemble(p as i64, e.0, e.1, e.2, tails, neg)))
            .collect();
        let cert = certify_picard(&s, &frob);
        assert_eq!(cert.rho, s.rho, "{}", s.label());
        assert_eq!(cert.method, PicardMethod::VanLuijk, "{}", s.label());
        assert_eq!(cert.upper, cert.lower);
        assert_ne!(cert.deltas[0], cert.deltas[1]);
    }
}

#[test]
fn form_refinement_surfaces() {
    let rows: [(u32, u32, &str, [(u64, (u32, u32, u32), &[i64], bool); 2]); 3] = [
        (10, 1, "3", [(7, (24, 2, 2), &[10, 10], false), (17, (25, 5, 0), &[-2, 25], true)]),
        (10, 3, "3", [(31, (24, 2, 2), &[46, 58], false), (37, (28, 2, 0), &[70, 70], false)]),
        (11, 1, "11", [(23, (28, 2, 0), &[42, 45], false), (53, (28, 0, 1), &[25, 70], false)]),
    ];
    for (n, eps, place, polys) in rows {
        let s = surface(n, eps);
        let frob: Vec<(u64, UPoly<Rat>)> = polys
            .iter()
            .map(|&(p, e, tails, neg)| (p, assemble(p as i64, e.0, e.1, e.2, tails, neg)))
            .collect();
        let cert = certify_picard(&s, &frob);
        assert_eq!(cert.rho, s.rho, "{}", s.label());
        assert_eq!(cert.method, PicardMethod::FormRefinement, "{}", s.label());
        assert_eq!(cert.witness.as_deref(), Some(place), "{}", s.label());
    }
}
