//! Canonical heights on the Mordell-Weil group of an elliptic surface over
//! K(T): section lifting, the height pairing via local contributions at the
//! bad fibers, regulators, and torsion certification.
//!
//! Heights are geometric (computed over the algebraic closure of K), so the
//! same code serves number-field towers and finite base fields.

use num_traits::Zero;

use crate::curve::{count_points_naive, CurvePoint, WModel};
use crate::field::{rat_i64, Field, Rat, Rationals};
use crate::fp::PrimeField;
use crate::kodaira::{
    analyze_fibers, infinity_model, FpPlaces, KodairaSymbol, Place, QPlaces,
    SurfaceAnalysis,
};
use crate::poly::{RatFunc, UPoly};
use crate::qform::QForm;
use crate::ratfield::FracField;
use crate::surfaces::Surface;

/// A section of the elliptic surface, as a point with coordinates in K(T).
#[derive(Clone, Debug, PartialEq)]
pub struct MWSection<T> {
    pub x: RatFunc<T>,
    pub y: RatFunc<T>,
}

impl<T: Clone + PartialEq + std::fmt::Debug> MWSection<T> {
    pub fn point(&self) -> CurvePoint<RatFunc<T>> {
        CurvePoint::Affine(self.x.clone(), self.y.clone())
    }
}

/// Embed a rational function over Q into K(T).
pub fn embed_ratfunc<K: Field>(k: &K, r: &RatFunc<Rat>) -> RatFunc<K::Elem> {
    let num = r.num.map_coeffs(k, |c| k.from_rat(c));
    let den = r.den.map_coeffs(k, |c| k.from_rat(c));
    RatFunc::new(k, num, den)
}

pub fn embed_model<K: Field>(k: &K, w: &WModel<RatFunc<Rat>>) -> WModel<RatFunc<K::Elem>> {
    let kk = FracField(k.clone());
    w.map_coeffs(&kk, |a| embed_ratfunc(k, a))
}

/// Solve for a y-coordinate over K(T) above the given x-coordinate.  Returns
/// None when the point does not lie on the curve over K(T).  Of the two
/// roots the one with the canonical leading coefficient is returned.
pub fn lift_section<K: Field>(
    k: &K,
    w: &WModel<RatFunc<K::Elem>>,
    x: &RatFunc<K::Elem>,
) -> Option<MWSection<K::Elem>> {
    let kk = FracField(k.clone());
    let lin = kk.add(&kk.mul(&w.a1, x), &w.a3);
    let rhs = {
        let x2 = kk.mul(x, x);
        let x3 = kk.mul(&x2, x);
        kk.add(
            &kk.add(&x3, &kk.mul(&w.a2, &x2)),
            &kk.add(&kk.mul(&w.a4, x), &w.a6),
        )
    };
    // y = (-lin +- sqrt(lin^2 + 4 rhs)) / 2
    let disc = kk.add(&kk.mul(&lin, &lin), &kk.mul(&kk.from_i64(4), &rhs));
    let s = kk.sqrt(&disc)?;
    let half = kk.inv(&kk.from_i64(2)).unwrap();
    let y1 = kk.mul(&kk.sub(&s, &lin), &half);
    let y2 = kk.mul(&kk.neg(&kk.add(&s, &lin)), &half);
    let y = if kk.canonical_positive(&y1) { y1 } else { y2 };
    let sec = MWSection { x: x.clone(), y };
    debug_assert!(w.is_on_curve(&kk, &sec.point()));
    Some(sec)
}

/// Everything needed to evaluate heights: the model, its chi, and the bad
/// places over K with their Kodaira symbols (only fibers with more than one
/// simple component matter for the correction terms).
#[derive(Clone)]
pub struct HeightCtx<K: Field> {
    pub k: K,
    pub model: WModel<RatFunc<K::Elem>>,
    pub m: u32,
    /// finite places of K(T) under the bad fibers with c_t > 1
    pub bad: Vec<(UPoly<K::Elem>, KodairaSymbol)>,
    pub inf_symbol: KodairaSymbol,
    pub inf_model: WModel<RatFunc<K::Elem>>,
    /// twist exponent of the model at infinity
    pub e: u32,
}

/// Split a monic irreducible polynomial over Q into irreducible monic
/// factors over K.  Only degrees up to 3 are supported, which covers every
/// fiber with component group larger than one in the catalog.
fn q_place_over_k<K: Field>(k: &K, pi: &UPoly<Rat>) -> Vec<UPoly<K::Elem>> {
    let pik = pi.map_coeffs(k, |c| k.from_rat(c));
    match pi.degree() {
        1 => vec![pik],
        2 => {
            // roots (-b +- sqrt(b^2 - 4c)) / 2
            let b = pik.coeff(k, 1);
            let c = pik.coeff(k, 0);
            let disc = k.sub(&k.mul(&b, &b), &k.mul(&k.from_i64(4), &c));
            match k.sqrt(&disc) {
                None => vec![pik],
                Some(s) => {
                    let half = k.inv(&k.from_i64(2)).unwrap();
                    let r1 = k.mul(&k.sub(&s, &b), &half);
                    let r2 = k.mul(&k.neg(&k.add(&s, &b)), &half);
                    vec![
                        UPoly::new(k, vec![k.neg(&r1), k.one()]),
                        UPoly::new(k, vec![k.neg(&r2), k.one()]),
                    ]
                }
            }
        }
        3 => {
            // a cubic irreducible over Q stays irreducible over any field of
            // degree prime to 3 over Q; our towers have degree 2 or 4
            vec![pik]
        }
        d => panic!("place of degree {d} with nontrivial component group"),
    }
}

fn assert_minimal_at<K: Field>(
    k: &K,
    w: &WModel<RatFunc<K::Elem>>,
    pi: &UPoly<K::Elem>,
) {
    let kk = FracField(k.clone());
    let inv = w.invariants(&kk);
    let mut kmin = inv.disc.valuation(k, pi).div_euclid(12);
    if !inv.c4.is_zero() {
        kmin = kmin.min(inv.c4.valuation(k, pi).div_euclid(4));
    }
    if !inv.c6.is_zero() {
        kmin = kmin.min(inv.c6.valuation(k, pi).div_euclid(6));
    }
    assert!(kmin == 0, "model not minimal at a bad place");
}

fn build_ctx<K: Field>(
    k: &K,
    model: WModel<RatFunc<K::Elem>>,
    analysis: &SurfaceAnalysis<Rat>,
    split_places: bool,
) -> HeightCtx<K>
where
    K: Field,
{
    let mut bad = Vec::new();
    let mut inf_symbol = KodairaSymbol::I(0);
    for f in &analysis.fibers {
        match &f.place {
            Place::Infinity => inf_symbol = f.symbol.clone(),
            Place::Finite(pi) => {
                if f.symbol.c_t() > 1 {
                    let parts = if split_places {
                        q_place_over_k(k, pi)
                    } else {
                        vec![pi.map_coeffs(k, |c| k.from_rat(c))]
                    };
                    for part in parts {
                        bad.push((part, f.symbol.clone()));
                    }
                }
            }
        }
    }
    let (inf_model, e) = infinity_model(k, &model);
    for (pi, _) in &bad {
        assert_minimal_at(k, &model, pi);
    }
    assert_minimal_at(k, &inf_model, &UPoly::x(k));
    HeightCtx { k: k.clone(), model, m: analysis.m, bad, inf_symbol, inf_model, e }
}

/// Height context for a catalog surface over a number field K (use
/// K = Rationals for heights of the rational sections).
pub fn height_ctx_over<K: Field>(k: &K, s: &Surface) -> HeightCtx<K> {
    assert_eq!(k.characteristic(), 0);
    let analysis = analyze_fibers(&QPlaces, &s.model);
    build_ctx(k, embed_model(k, &s.model), &analysis, true)
}

/// Height context for a reduced model over F_p(T).
pub fn height_ctx_fp(f: &PrimeField, w: &WModel<RatFunc<u64>>) -> HeightCtx<PrimeField> {
    let analysis = analyze_fibers(&FpPlaces { f: *f }, w);
    let mut bad = Vec::new();
    let mut inf_symbol = KodairaSymbol::I(0);
    for fd in &analysis.fibers {
        match &fd.place {
            Place::Infinity => inf_symbol = fd.symbol.clone(),
            Place::Finite(pi) => {
                if fd.symbol.c_t() > 1 {
                    bad.push((pi.clone(), fd.symbol.clone()));
                }
            }
        }
    }
    let (inf_model, e) = infinity_model(f, w);
    for (pi, _) in &bad {
        assert_minimal_at(f, w, pi);
    }
    assert_minimal_at(f, &inf_model, &UPoly::x(f));
    HeightCtx { k: *f, model: w.clone(), m: analysis.m, bad, inf_symbol, inf_model, e }
}

/// Local correction at a bad place: 0 unless the section meets the singular
/// point of the Weierstrass fiber, else the diagonal entry of the inverse
/// component intersection matrix for the component it lands on.
fn local_contr(sym: &KodairaSymbol, v_x: i64, v_y: i64, v_tang: i64) -> Rat {
    if v_x < 0 || v_y < 1 || v_tang < 1 {
        return Rat::zero();
    }
    match sym {
        KodairaSymbol::I(n) => {
            let n = *n as i64;
            let m = if n % 2 == 0 { v_y.min(n / 2) } else { v_y.min((n - 1) / 2) };
            Rat::new((m * (n - m)).into(), n.into())
        }
        KodairaSymbol::IStar(0) => rat_i64(1),
        KodairaSymbol::III => Rat::new(1.into(), 2.into()),
        KodairaSymbol::IV => Rat::new(2.into(), 3.into()),
        KodairaSymbol::IIIStar => Rat::new(3.into(), 2.into()),
        KodairaSymbol::IVStar => Rat::new(4.into(), 3.into()),
        s => panic!("height correction for fiber {s} not supported"),
    }
}

/// Canonical height 2 chi + 2 (P.O) - sum of local corrections, via the
/// short model X = 36x + 3b2, Y = 108 (2y + a1 x + a3).
pub fn canonical_height<K: Field>(
    ctx: &HeightCtx<K>,
    pt: &CurvePoint<RatFunc<K::Elem>>,
) -> Rat {
    let k = &ctx.k;
    let kk = FracField(k.clone());
    let (x, y) = match pt {
        CurvePoint::Infinity => return Rat::zero(),
        CurvePoint::Affine(x, y) => (x, y),
    };
    let inv = ctx.model.invariants(&kk);
    let xs = kk.add(
        &kk.mul(&kk.from_i64(36), x),
        &kk.mul(&kk.from_i64(3), &inv.b2),
    );
    let ys = kk.mul(&kk.from_i64(108), &{
        let t = kk.add(&kk.mul(&kk.from_i64(2), y), &kk.mul(&ctx.model.a1, x));
        kk.add(&t, &ctx.model.a3)
    });
    let a_short = kk.mul(&kk.from_i64(-27), &inv.c4);
    let tangency = kk.add(
        &kk.mul(&kk.from_i64(3), &kk.mul(&xs, &xs)),
        &a_short,
    );

    // intersection with the zero section: half the pole degree of x, finite
    // part from the denominator, plus the pole at infinity
    let den_deg = xs.den.degree();
    assert!(den_deg % 2 == 0, "odd pole order against the zero section");
    let mut po = Rat::new(den_deg.into(), 2.into());
    let v_inf_x = 2 * ctx.e as i64 - (xs.num.degree() - xs.den.degree());
    if v_inf_x < 0 {
        assert!(v_inf_x % 2 == 0, "odd pole order at infinity");
        po += Rat::new((-v_inf_x).into(), 2.into());
    }

    let mut corr = Rat::zero();
    for (pi, sym) in &ctx.bad {
        let d = pi.degree();
        let c = local_contr(
            sym,
            xs.valuation(k, pi),
            ys.valuation(k, pi),
            tangency.valuation(k, pi),
        );
        corr += Rat::from(num_bigint::BigInt::from(d)) * c;
    }
    if ctx.inf_symbol.c_t() > 1 {
        // same computation in the chart at infinity
        let s = UPoly::x(k);
        let inv_s = kk.div(&kk.one(), &kk.var());
        let tw = |a: &RatFunc<K::Elem>, wt: i64| {
            kk.mul(
                &a.compose_ratfunc(k, &inv_s),
                &kk.pow_i64(&kk.var(), wt * ctx.e as i64),
            )
        };
        let xs_i = tw(&xs, 2);
        let ys_i = tw(&ys, 3);
        let inv_i = ctx.inf_model.invariants(&kk);
        let a_i = kk.mul(&kk.from_i64(-27), &inv_i.c4);
        let tang_i = kk.add(&kk.mul(&kk.from_i64(3), &kk.mul(&xs_i, &xs_i)), &a_i);
        let c = local_contr(
            &ctx.inf_symbol,
            xs_i.valuation(k, &s),
            ys_i.valuation(k, &s),
            tang_i.valuation(k, &s),
        );
        corr += c;
    }

    rat_i64(2 * ctx.m as i64) + rat_i64(2) * po - corr
}

/// Height pairing by polarization: ( h(P+Q) - h(P) - h(Q) ) / 2.
pub fn height_pairing<K: Field>(
    ctx: &HeightCtx<K>,
    p: &CurvePoint<RatFunc<K::Elem>>,
    q: &CurvePoint<RatFunc<K::Elem>>,
) -> Rat {
    let kk = FracField(ctx.k.clone());
    let sum = ctx.model.add_points(&kk, p, q);
    (canonical_height(ctx, &sum) - canonical_height(ctx, p) - canonical_height(ctx, q))
        / rat_i64(2)
}

pub fn gram_matrix<K: Field>(
    ctx: &HeightCtx<K>,
    pts: &[CurvePoint<RatFunc<K::Elem>>],
) -> Vec<Vec<Rat>> {
    let n = pts.len();
    let heights: Vec<Rat> = pts.iter().map(|p| canonical_height(ctx, p)).collect();
    let mut g = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        g[i][i] = heights[i].clone();
        for j in (i + 1)..n {
            let v = height_pairing(ctx, &pts[i], &pts[j]);
            g[i][j] = v.clone();
            g[j][i] = v;
        }
    }
    g
}

pub fn det_rat(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut det = rat_i64(1);
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero());
        let Some(piv) = piv else {
            return Rat::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= pv.clone();
        for r in (col + 1)..n {
            let factor = &a[r][col] / &pv;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

pub fn regulator<K: Field>(
    ctx: &HeightCtx<K>,
    pts: &[CurvePoint<RatFunc<K::Elem>>],
) -> Rat {
    det_rat(&gram_matrix(ctx, pts))
}

/// The regulator of (fixed..., u Q1 + v Q2) as a binary quadratic form in
/// (u, v).
pub fn regulator_form<K: Field>(
    ctx: &HeightCtx<K>,
    fixed: &[CurvePoint<RatFunc<K::Elem>>],
    pencil: (&CurvePoint<RatFunc<K::Elem>>, &CurvePoint<RatFunc<K::Elem>>),
) -> QForm {
    let kk = FracField(ctx.k.clone());
    let reg_at = |q: &CurvePoint<RatFunc<K::Elem>>| -> Rat {
        let mut pts = fixed.to_vec();
        pts.push(q.clone());
        regulator(ctx, &pts)
    };
    let a = reg_at(pencil.0);
    let c = reg_at(pencil.1);
    let s = ctx.model.add_points(&kk, pencil.0, pencil.1);
    let b = reg_at(&s) - &a - &c;
    QForm::from_binary(a, b, c)
}

#[derive(Clone, Debug)]
pub struct TorsionInfo<T> {
    pub order: u32,
    pub generators: Vec<MWSection<T>>,
    pub certificate: String,
}

/// Sections of order 2: polynomial roots in x of 4x^3 + b2 x^2 + 2b4 x + b6.
pub fn two_torsion_sections(s: &Surface) -> Vec<MWSection<Rat>> {
    let q = Rationals;
    let kk = FracField(q.clone());
    let inv = s.model.invariants(&kk);
    let rhs = s.model.two_torsion_rhs(&kk); // [b6, 2b4, b2, 4]
    let _ = &inv;
    // a root x(T) is a polynomial dividing 16 b6 up to a rational constant
    let c0 = rhs[0].clone();
    if c0.is_zero() {
        // x = 0 is a root; factor it out: 4x^2 + b2 x + 2 b4 = 0
        let mut out = vec![MWSection {
            x: RatFunc::zero(&q),
            y: lift_y_for_two_torsion(s, &RatFunc::zero(&q)),
        }];
        let b2 = rhs[2].clone();
        let b4h = rhs[1].clone(); // 2 b4
        let disc = kk.sub(&kk.mul(&b2, &b2), &kk.mul(&kk.from_i64(16), &b4h));
        if let Some(sq) = kk.sqrt(&disc) {
            let eighth = kk.inv(&kk.from_i64(8)).unwrap();
            for sg in [sq.clone(), kk.neg(&sq)] {
                let x = kk.mul(&kk.sub(&sg, &b2), &eighth);
                out.push(MWSection { x: x.clone(), y: lift_y_for_two_torsion(s, &x) });
            }
        }
        return out;
    }
    let mut out = Vec::new();
    assert!(c0.den.degree() == 0);
    let c0_poly = c0.num.clone();
    let factors = crate::factor::factor_q(&c0_poly);
    // enumerate monic divisors
    let mut divisors: Vec<UPoly<Rat>> = vec![UPoly::constant(&q, q.one())];
    for (f, e) in &factors {
        let mut next = Vec::new();
        for d in &divisors {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = acc.mul(&q, f);
                next.push(acc.clone());
            }
        }
        divisors = next;
    }
    // pin the rational constant by one specialization
    let t0 = (0..)
        .map(rat_i64)
        .find(|t| !c0.den.eval(&q, t).is_zero() && !divisors.iter().any(|d| d.eval(&q, t).is_zero()))
        .unwrap();
    let cubic_at = |t: &Rat| {
        UPoly::new(&q, rhs.iter().map(|c| c.eval(&q, t)).collect())
    };
    let roots0 = crate::factor::rational_roots(&cubic_at(&t0));
    for d in &divisors {
        for r in &roots0 {
            let alpha = r / d.eval(&q, &t0);
            let x = RatFunc::from_poly(&q, d.scale(&q, &alpha));
            // verify: 4x^3 + b2 x^2 + 2 b4 x + b6 = 0 in Q(T)
            let mut v = RatFunc::zero(&q);
            for c in rhs.iter().rev() {
                v = kk.add(&kk.mul(&v, &x), c);
            }
            if v.is_zero() && !out.iter().any(|s: &MWSection<Rat>| s.x == x) {
                let y = lift_y_for_two_torsion(s, &x);
                out.push(MWSection { x, y });
            }
        }
    }
    out
}

fn lift_y_for_two_torsion(s: &Surface, x: &RatFunc<Rat>) -> RatFunc<Rat> {
    // 2y + a1 x + a3 = 0 at a two-torsion point
    let kk = FracField(Rationals);
    let lin = kk.add(&kk.mul(&s.model.a1, x), &s.model.a3);
    kk.mul(&kk.neg(&lin), &kk.inv(&kk.from_i64(2)).unwrap())
}

/// Torsion order with a two-sided certificate: lower bound from explicit
/// 2-torsion sections, upper bound from gcd of specialized group orders.
pub fn torsion_order(s: &Surface) -> TorsionInfo<Rat> {
    let gens = two_torsion_sections(s);
    let lower = 1 + gens.len() as u32;
    assert!(lower == 1 || lower == 2 || lower == 4);

    let aq = analyze_fibers(&QPlaces, &s.model);
    let mut g: u64 = 0;
    let mut used = Vec::new();
    'outer: for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if !crate::kodaira::good_prime_test_with(&aq, &s.model, p) {
            continue;
        }
        let f = PrimeField::new(p);
        let Some(wp) = crate::kodaira::reduce_model_mod_p(&s.model, p) else {
            continue;
        };
        let kk = FracField(f);
        for t in 0..p {
            let curve = specialize(&f, &wp, t);
            let Some(curve) = curve else { continue };
            let inv = curve.invariants(&f);
            if f.is_zero(&inv.disc) {
                continue;
            }
            g = num_integer::gcd(g, count_points_naive(&f, &curve));
            used.push((p, t));
            if used.len() >= 24 && g == lower as u64 {
                break 'outer;
            }
            if used.len() >= 60 {
                break 'outer;
            }
        }
        let _ = &kk;
    }
    assert!(
        g as u32 == lower,
        "torsion bounds disagree: lower {lower}, specialization gcd {g}"
    );
    TorsionInfo {
        order: lower,
        generators: gens,
        certificate: format!(
            "2-torsion sections: {}; gcd |E_t(F_p)| = {} over {} good specializations",
            lower - 1,
            g,
            used.len()
        ),
    }
}

/// Specialize a model over F_p(T) at T = t; None at a pole.
pub fn specialize(
    f: &PrimeField,
    w: &WModel<RatFunc<u64>>,
    t: u64,
) -> Option<WModel<u64>> {
    let ev = |r: &RatFunc<u64>| -> Option<u64> {
        let d = r.den.eval(f, &t);
        if f.is_zero(&d) {
            return None;
        }
        Some(f.mul(&r.num.eval(f, &t), &f.inv(&d).unwrap()))
    };
    Some(WModel::new(ev(&w.a1)?, ev(&w.a2)?, ev(&w.a3)?, ev(&w.a4)?, ev(&w.a6)?))
}

/// Lift the table sections over Q(T) and certify their independence: returns
/// (rank lower bound, regulator of the lifted points).
pub fn rank_lower_bound_q(s: &Surface) -> (u32, Rat) {
    let q = Rationals;
    let ctx = height_ctx_over(&q, s);
    let pts: Vec<_> = s
        .mw_x
        .iter()
        .map(|x| {
            lift_section(&q, &ctx.model, x)
                .unwrap_or_else(|| panic!("section of {} does not lift", s.label()))
                .point()
        })
        .collect();
    let reg = regulator(&ctx, &pts);
    assert!(!reg.is_zero(), "dependent sections for {}", s.label());
    (pts.len() as u32, reg)
}

/// Same over Qbar: adjoins the fields of definition of the extra sections.
pub fn rank_lower_bound_qbar(s: &Surface) -> (u32, Rat) {
    let mut ds: Vec<i64> = s.mw_geom.iter().map(|(_, d)| *d).collect();
    ds.sort();
    ds.dedup();
    match ds.len() {
        0 => rank_lower_bound_q(s),
        1 => {
            let k = crate::field::QuadExt::new(Rationals, rat_i64(ds[0]));
            rank_lower_bound_over(&k, s)
        }
        2 => {
            let k1 = crate::field::QuadExt::new(Rationals, rat_i64(ds[0]));
            let k = crate::field::QuadExt::new(k1.clone(), k1.from_i64(ds[1]));
            rank_lower_bound_over(&k, s)
        }
        n => panic!("{n} distinct section fields unsupported"),
    }
}

fn rank_lower_bound_over<K: Field>(k: &K, s: &Surface) -> (u32, Rat) {
    let ctx = height_ctx_over(k, s);
    let mut pts = Vec::new();
    for x in &s.mw_x {
        let xe = embed_ratfunc(k, x);
        pts.push(
            lift_section(k, &ctx.model, &xe)
                .unwrap_or_else(|| panic!("rational section of {} does not lift", s.label()))
                .point(),
        );
    }
    for (x, _) in &s.mw_geom {
        let xe = embed_ratfunc(k, x);
        pts.push(
            lift_section(k, &ctx.model, &xe)
                .unwrap_or_else(|| panic!("geometric section of {} does not lift", s.label()))
                .point(),
        );
    }
    let reg = regulator(&ctx, &pts);
    assert!(!reg.is_zero(), "dependent sections for {}", s.label());
    (pts.len() as u32, reg)
}
