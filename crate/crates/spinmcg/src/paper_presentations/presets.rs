//! Fully instantiated presentations.

use crate::fp_core::{Expr, GenKind, Presentation};
use crate::sp_rep::{index_range, pairing, twist_generator_classes};

use super::expander::{down, handlebody_r_pairs, hat, negate, pred, signed_indices, up, Expander, Mode};
use super::PresError;

/// Reason attached to relators that fail the symplectic check under every reading tried.
pub const TRANSCRIPTION_FLAG: &str = "fails the Sp(2g,Z) check as transcribed; possible transcription ambiguity";

/// Presentation under construction.
struct Builder {
    p: Presentation,
}

impl Builder {
    fn new(x: &Expander, name: String) -> Self {
        let mut p = x.skeleton();
        p.name = name;
        Builder { p }
    }

    fn rel(&mut self, label: impl Into<String>, e: Expr) {
        self.p.add_relator(&label.into(), e);
    }

    fn eq(&mut self, label: impl Into<String>, lhs: Expr, rhs: Expr) {
        self.rel(label, Expr::eq(&lhs, &rhs));
    }

    fn comm(&mut self, label: impl Into<String>, a: Expr, b: Expr) {
        self.rel(label, Expr::comm(&a, &b));
    }

    fn flag(&mut self, label: impl Into<String>, lhs: Expr, rhs: Expr) {
        self.p.add_flagged(&label.into(), Expr::eq(&lhs, &rhs), TRANSCRIPTION_FLAG);
    }
}

/// `x y x = y x y`
fn braid3(a: &Expr, b: &Expr) -> (Expr, Expr) {
    (Expr::seq([a.clone(), b.clone(), a.clone()]), Expr::seq([b.clone(), a.clone(), b.clone()]))
}

/// `x y x y = y x y x`
fn braid4(a: &Expr, b: &Expr) -> (Expr, Expr) {
    (
        Expr::seq([a.clone(), b.clone(), a.clone(), b.clone()]),
        Expr::seq([b.clone(), a.clone(), b.clone(), a.clone()]),
    )
}

fn fmt_pair(i: i64, j: i64) -> String {
    format!("[{i},{j}]")
}

/// Genus one: generators `A1 = a^2`, `b1`.
pub fn genus1() -> Presentation {
    let mut p = Presentation::new("g1");
    let a = Expr::gen(p.add_gen("A1", GenKind::Free));
    let b = Expr::gen(p.add_gen("b1", GenKind::Free));
    let ab = a.mul(&b);
    let ba = b.mul(&a);
    p.add_relator("G1a", Expr::eq(&ab.pow(2), &ba.pow(2)));
    p.add_relator("G1b", ab.pow(4));
    p
}

/// Genus two: generators `A1`, `b1`, `t1`, `d[1,2]` and relations (i)-(x).
pub fn genus2() -> Result<Presentation, PresError> {
    let mut x = Expander::new(Mode::Genus2, 2)?;
    let mut bl = Builder::new(&x, "g2".into());
    let (a, b, t, d) = (x.a2(1)?, x.b(1)?, x.t(1)?, x.d12()?);
    let ta = Expr::conj(&t, &a);
    let s1 = x.s(1)?;
    bl.comm("i.1", a.clone(), ta.clone());
    bl.comm("i.2", a.clone(), d.clone());
    bl.comm("i.3", ta.clone(), b.clone());
    bl.comm("i.4", b.clone(), Expr::conj(&t.mul(&d.inv()), &b));
    let (l, r) = braid4(&a, &b);
    bl.eq("ii.1", l, r);
    let (l, r) = braid4(&s1, &t);
    bl.eq("ii.2", l, r);
    bl.eq("iii", t.pow(2), d.pow(2));
    bl.comm("iv.1", t.clone(), d.clone());
    let (l, r) = braid4(&s1, &d);
    bl.eq("iv.2", l, r);
    bl.eq("v.1", b.clone(), Expr::conj(&Expr::seq([t.clone(), b.clone(), a.clone(), b.clone(), t.clone()]), &b));
    bl.comm("v.2", a.mul(&d), Expr::seq([b.clone(), d.clone(), a.clone(), b.clone()]));
    bl.eq(
        "v.3",
        Expr::seq([t.clone(), b.clone(), d.clone(), a.clone(), b.clone(), d.clone()]),
        Expr::seq([a.inv(), t.clone(), d.inv(), b.clone(), d.clone(), a.clone(), b.clone()]),
    );
    let inner = Expr::seq([t.clone(), d.inv(), b.clone(), d.clone(), a.clone(), b.clone(), d.clone(), t.inv()]);
    bl.eq("vi", inner.pow(2), Expr::seq([d.pow(-2), a.inv(), ta.pow(-2)]));
    bl.eq(
        "vii.1",
        Expr::seq([b.inv(), a.clone(), b.clone(), d.inv(), b.inv(), d.pow(-2), a.inv(), b.clone()]),
        d.inv().mul(&ta),
    );
    let c = Expr::seq([t.inv(), b.inv(), a.inv(), b.inv()]);
    bl.eq(
        "vii.2",
        Expr::seq([d.inv(), b.inv(), d.clone(), a.clone(), b.clone(), d.clone()]),
        Expr::seq([b.inv(), Expr::conj(&c, &d), a.clone(), b.clone()]),
    );
    bl.rel(
        "viii",
        Expr::seq([
            t.clone(),
            d.inv(),
            b.clone(),
            d.clone(),
            a.pow(2),
            b.clone(),
            d.clone(),
            t.inv(),
            b.clone(),
            t.clone(),
            a.clone(),
            b.clone(),
            d.inv(),
            t.inv(),
            b.clone(),
            t.clone(),
            b.clone(),
            a.clone(),
            ta.clone(),
        ]),
    );
    let c = Expr::seq([b.clone(), a.clone(), b.clone(), t.clone(), b.clone(), a.clone(), b.clone()]);
    bl.eq("ix", d.clone(), Expr::conj(&c, &d));
    let d4 = x.dset(&[-2, -1, 1, 2])?;
    bl.rel("x", Expr::seq([d4, a, ta]));
    Ok(bl.p)
}

/// Commutation and braid relations between twist generators, read off from
/// the algebraic intersection of their classes.
fn s1_relations(x: &Expander, bl: &mut Builder) -> Result<(), PresError> {
    let classes = twist_generator_classes(x.genus());
    for a in 0..classes.len() {
        for b in a + 1..classes.len() {
            let (na, va) = &classes[a];
            let (nb, vb) = &classes[b];
            let (ea, eb) = (x.gen(na)?, x.gen(nb)?);
            match pairing(va, vb).abs() {
                0 => bl.comm(format!("S1[{na},{nb}]"), ea, eb),
                1 => {
                    let (l, r) = braid3(&ea, &eb);
                    bl.eq(format!("S1[{na},{nb}]"), l, r)
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// Pairs of (S4) and (S13): `i = 1 < j`, or `i < 0`, `j + i > 0`, `j - i < g`.
pub fn r_relation_pairs(g: usize) -> Vec<(i64, i64)> {
    let g = g as i64;
    let mut out = Vec::new();
    for i in std::iter::once(1).chain((-g..=-1).rev()) {
        for j in 1..=g {
            if (i == 1 && j > 1) || (i < 0 && j + i > 0 && j - i < g) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Pairs of the triangle relations: `i = 1 < j`, or `i < 0`, `j + i >= 1`, `j - i <= g`.
pub fn triangle_pairs(g: usize) -> Vec<(i64, i64)> {
    let g = g as i64;
    let mut out = Vec::new();
    for j in 2..=g {
        for i in std::iter::once(1).chain((-g..=-1).rev()) {
            if i == 1 || (j + i >= 1 && j - i <= g) {
                out.push((i, j));
            }
        }
    }
    out
}

/// `A_1^-2 ... A_{-i}^-2 A_{max(1,-i+1)}^-1 ... A_{top}^-1` (powers of `A = a^2`).
fn a_prefix(x: &mut Expander, i: i64, top: i64) -> Result<Expr, PresError> {
    let m = if i < 0 { -i } else { 0 };
    let mut terms: Vec<(usize, i64)> = (1..=m).map(|k| (k as usize, -2)).collect();
    terms.extend((m.max(0) + 1..=top).map(|k| (k as usize, -1)));
    x.a2_product(&terms)
}

/// Relations (S2)-(S14) for the twist generators; terms naming indices
/// above `g` are dropped.
fn surface_relations(x: &mut Expander, bl: &mut Builder) -> Result<(), PresError> {
    let g = x.genus();
    s1_relations(x, bl)?;
    let (b1, b2, b3) = (x.b(1)?, x.b(2)?, x.b(3)?);
    let (xi1, xi2, eta2, eta3) = (x.xi(1)?, x.xi(2)?, x.eta(2)?, x.eta(3)?);

    let chain5 = Expr::seq([b1.clone(), eta2.clone(), eta3.clone(), b2.clone(), xi1.clone()]);
    bl.eq("S2", chain5.pow(6), b3.mul(&x.m(1)?));

    let hyp = Expr::seq([
        b3.clone(),
        xi2.clone(),
        xi1.clone(),
        b2.clone(),
        eta3.clone(),
        eta2.clone(),
        b1.clone(),
        b1.clone(),
        eta2.clone(),
        eta3.clone(),
        b2.clone(),
        xi1.clone(),
        xi2.clone(),
        b3.clone(),
    ])
    .pow(2);
    if g >= 4 {
        let chain6 = Expr::seq([b1.clone(), eta2.clone(), eta3.clone(), b2.clone(), xi1.clone(), xi2.clone()]);
        bl.eq("S3", hyp, chain6.pow(14));
    } else {
        bl.rel("S3", hyp);
    }

    let t1 = x.t(1)?;
    bl.eq("S4a", t1.pow(2), x.dbar(1, 2)?.mul(&x.dbar(-2, -1)?));
    let a1 = x.a2(1)?;
    let s1 = x.s(1)?;
    let h2 = x.h2()?;
    bl.eq(
        "S4b",
        Expr::seq([a1.clone(), s1.clone(), Expr::seq([eta2.clone(), s1.clone(), eta2.clone()])]),
        Expr::seq([b2.clone(), h2.clone(), b2.clone(), h2.inv()]),
    );
    for (i, j) in r_relation_pairs(g) {
        let lhs = x.rbar(i, j)?.pow(2);
        let c = x.ts(&down(j - 1, (-i + 1).max(1)))?;
        let rhs = Expr::seq([
            a_prefix(x, i, j)?,
            x.drange(i, j)?.pow(-2),
            x.drange(i, j - 1)?,
            Expr::conj(&c, &x.drange(pred(i), j)?),
        ]);
        bl.eq(format!("S4c{}", fmt_pair(i, j)), lhs, rhs);
    }

    if g >= 4 {
        let (m1, m4, eta4) = (x.m(1)?, x.m(4)?, x.eta(4)?);
        let (l, r) = braid3(&m1, &eta4);
        bl.eq("S5a", l, r);
        bl.comm("S5b", eta4.clone(), Expr::conj(&b3.mul(&xi2), &m4));
        bl.comm("S5c", Expr::conj(&eta3.inv().mul(&eta4.inv()), &m4), Expr::conj(&b1.inv(), &eta2));
        let (l3, l4) = (x.l3()?, x.l4()?);
        bl.comm("S6a[b3]", l3.clone(), b3.clone());
        bl.comm("S6a[eta3]", l3.clone(), eta3.clone());
        bl.comm("S6b[m1]", l4.clone(), m1.clone());
        bl.comm("S6b[m2]", l4.clone(), x.m(2)?);
        if g >= 5 {
            bl.comm("S6a[eta5]", l3.clone(), x.eta(5)?);
            bl.comm("S6b[eta5]", l4.clone(), x.eta(5)?);
        }
        bl.comm("S7", x.m(3)?.mul(&l3), m4.mul(&l4));
    }

    for i in 1..g {
        let ii = i as i64;
        let lhs = Expr::conj(&x.dbar(ii, ii + 1)?, &x.b(i)?);
        let rhs = Expr::conj(&x.a2(i)?.inv().mul(&x.s(i)?.inv()), &x.xi(i)?);
        bl.eq(format!("S8a[{i}]"), lhs, rhs);
    }
    bl.eq(
        "S8b",
        Expr::conj(&x.d12()?.mul(&b1.inv()), &eta2),
        Expr::conj(&x.a2(2)?.inv().mul(&b2.inv()), &xi1),
    );
    for i in 1..g.saturating_sub(1) {
        let c = Expr::seq([x.xi(i)?, x.b(i)?.inv(), x.b(i + 1)?, x.eta(i + 2)?]);
        let rhs = Expr::conj(&c, &x.eta(i + 1)?);
        bl.comm(format!("S9a[{i}]"), x.a2(i)?, rhs);
    }
    for i in 2..g {
        let ii = i as i64;
        let c = x.eta(i)?.mul(&x.eta(i + 1)?);
        let rhs = Expr::conj(&c, &x.b(i)?);
        bl.comm(format!("S9b[{i}]"), x.dbar(ii - 1, ii)?, rhs);
    }

    let d12 = x.d12()?;
    bl.comm("S10a", d12.clone(), x.a2(3)?);
    if g >= 4 {
        bl.comm("S10b", d12.clone(), x.dbar(3, 4)?);
    }
    bl.comm("S10c", d12.clone(), x.dbar(-3, -1)?);
    let t2 = x.t(2)?;
    bl.comm("S10d", d12.clone(), Expr::seq([t2.clone(), d12.clone(), t2]));

    let (l, r) = braid4(&a1, &b1);
    bl.eq("S11a", l, r);
    bl.comm("S11b", Expr::conj(&b1, &a1), Expr::conj(&xi1, &a1));
    bl.comm("S11c[b2]", a1.clone(), b2.clone());
    bl.comm("S11c[xi2]", a1.clone(), xi2.clone());
    bl.comm("S11c[eta2]", a1.clone(), eta2.clone());

    let dm21 = x.dbar(-2, -1)?;
    let d3 = x.dset(&[-1, 1, 2])?;
    bl.eq(
        "S12a",
        b2.mul(&Expr::conj(&b1.inv().mul(&eta2.inv()), &d12.mul(&dm21.inv()))),
        Expr::seq([d3.clone(), a1.clone(), b2.clone()]),
    );
    bl.eq("S12b", Expr::conj(&dm21, &eta2), b2.clone());
    bl.eq(
        "S12c",
        Expr::seq([dm21.clone(), d3.clone(), Expr::conj(&t1, &d3)]),
        d12.mul(&x.dset(&[-2, -1, 1, 2])?),
    );

    for (i, j) in r_relation_pairs(g) {
        let r = x.rbar(i, j)?;
        let dij = x.drange(i, j)?;
        bl.comm(format!("S13a{}", fmt_pair(i, j)), x.a2(j as usize)?.mul(&dij), r.clone());
        let pre = a_prefix(x, i, j - 1)?;
        bl.eq(format!("S13b{}", fmt_pair(i, j)), r.mul(&dij), Expr::seq([pre, dij.inv(), r]));
    }

    bl.eq(
        "S14a",
        Expr::seq([b1.inv(), a1.clone(), b1.clone(), d12.inv(), b1.inv(), d12.pow(-2), a1.inv(), b1.clone()]),
        d12.inv().mul(&x.a2(2)?),
    );
    for (i, j) in triangle_pairs(g) {
        for case in ['b', 'c', 'd', 'e'] {
            let Some((zeta, phi1, phi2)) = triangle_terms(x, i, j, case)? else { continue };
            let ju = j as usize;
            let lhs = Expr::seq([x.b(ju)?.inv(), x.a2(ju)?, x.drange(i, j)?, x.b(ju)?]);
            let c = x.ts(&down(j - 1, 1))?.mul(&zeta.inv());
            let inner = Expr::seq([b1.inv(), phi2, phi1, a1.clone(), b1.clone()]);
            let rhs = Expr::conj(&c, &inner);
            let label = format!("S14{case}{}", fmt_pair(i, j));
            if case == 'e' || (case == 'b' && i < 0) {
                bl.flag(label, lhs, rhs);
            } else {
                bl.eq(label, lhs, rhs);
            }
        }
    }
    Ok(())
}

/// `(zeta, phi_1, phi_2)` of a triangle case, `None` when the case does not apply.
fn triangle_terms(x: &mut Expander, i: i64, j: i64, case: char) -> Result<Option<(Expr, Expr, Expr)>, PresError> {
    let g = x.genus() as i64;
    let ip = pred(i);
    let ju = j as usize;
    Ok(Some(match case {
        'b' => {
            let tt = x.ts(&down(j - 1, 1))?;
            let zeta = Expr::conj(&tt, &x.drange(-1, j)?);
            let phi1 = x.a2(ju)?.mul(&Expr::conj(&tt, &x.dset(&hat(&index_range(ip, j), -2))?));
            let phi2 = Expr::conj(&x.s(ju)?, &x.dbar(1, j)?);
            (zeta, phi1, phi2)
        }
        'c' => {
            if j + 1 > g {
                return Ok(None);
            }
            let zeta = x.drange(1, j + 1)?;
            let phi1 = x.dset(&hat(&index_range(ip, j + 1), -1))?.mul(&x.a2(ju + 1)?);
            let phi2 = x.dbar(1, j + 1)?;
            (zeta, phi1, phi2)
        }
        'd' => {
            let zeta = x.drange(1, j - 1)?;
            let phi1 = x.dset(&hat(&index_range(ip, j - 1), -1))?;
            let c = x.ts(&negate(down(j - 1, 2)))?.mul(&x.s(1)?);
            let phi2 = Expr::conj(&c, &x.d12()?);
            (zeta, phi1, phi2)
        }
        _ => {
            if i == 1 {
                return Ok(None);
            }
            let tt = x.ts(&negate(up(-i + 1, j - 1)))?;
            let zeta = Expr::conj(&tt, &x.drange(1, j - 1)?);
            let phi1 =
                x.a2((-i + 1) as usize)?.mul(&Expr::conj(&tt, &x.dset(&hat(&index_range(ip, j - 1), -1))?));
            let c = Expr::seq([tt, x.ts(&negate(down(j - 1, 2)))?, x.s(1)?]);
            let phi2 = Expr::conj(&c, &x.d12()?);
            (zeta, phi1, phi2)
        }
    }))
}

/// Capping relations (S15) and (S16).
fn closing_relations(x: &mut Expander, bl: &mut Builder) -> Result<(), PresError> {
    let g = x.genus() as i64;
    let terms: Vec<(usize, i64)> = (1..=g as usize).map(|k| (k, 1)).collect();
    bl.rel("S15", x.drange(-g, g)?.mul(&x.a2_product(&terms)?));
    bl.eq("S16", x.drange(-g, -1)?, x.drange(1, g)?);
    Ok(())
}

pub fn boundary(g: usize) -> Result<Presentation, PresError> {
    if g < 4 {
        return Err(PresError::GenusOutOfRange { what: "boundary".into(), g });
    }
    let mut x = Expander::new(Mode::Twist, g)?;
    let mut bl = Builder::new(&x, format!("boundary-g{g}"));
    surface_relations(&mut x, &mut bl)?;
    Ok(bl.p)
}

pub fn closed(g: usize) -> Result<Presentation, PresError> {
    if g < 4 {
        return Err(PresError::GenusOutOfRange { what: "closed".into(), g });
    }
    let mut x = Expander::new(Mode::Twist, g)?;
    let mut bl = Builder::new(&x, format!("closed-g{g}"));
    surface_relations(&mut x, &mut bl)?;
    closing_relations(&mut x, &mut bl)?;
    Ok(bl.p)
}

/// Genus three: twist generators with `z1`, `z2`.
pub fn genus3() -> Result<Presentation, PresError> {
    let mut x = Expander::new(Mode::Twist, 3)?;
    let mut bl = Builder::new(&x, "g3".into());
    surface_relations(&mut x, &mut bl)?;
    let (z1, z2) = (x.z(1)?, x.z(2)?);
    bl.comm("Z1", z2.clone(), x.m(2)?);
    bl.comm("Z2", x.m(3)?.mul(&z1), x.m(4)?.mul(&z2));
    Ok(bl.p)
}

/// Stabilizer relations A1-A8 over `A_i`, `s`, `t_i`, `d[i,j]`.
fn stabilizer_relations(x: &mut Expander, bl: &mut Builder) -> Result<(), PresError> {
    let g = x.genus();
    let idx = signed_indices(g);
    let pairs: Vec<(i64, i64)> =
        idx.iter().flat_map(|&i| idx.iter().filter(move |&&j| i < j).map(move |&j| (i, j))).collect();
    let s = x.gen("s")?;

    for i in 1..=g {
        for j in i + 1..=g {
            bl.comm(format!("A1[A{i},A{j}]"), x.a2(i)?, x.a2(j)?);
        }
        for &(p, q) in &pairs {
            bl.comm(format!("A1[A{i},d{}]", fmt_pair(p, q)), x.a2(i)?, x.dbar(p, q)?);
        }
    }

    for &(r, s_) in &pairs {
        for &(i, j) in &pairs {
            if (r < s_ && s_ < i && i < j) || (i < r && r < s_ && s_ < j) {
                let d = x.dbar(i, j)?;
                bl.eq(format!("A2a[{r},{s_},{i},{j}]"), Expr::conj(&x.dbar(r, s_)?.inv(), &d), d);
            }
        }
    }
    for &r in &idx {
        for &s_ in &idx {
            for &j in &idx {
                if !(r < s_ && s_ < j) {
                    continue;
                }
                let (drs, dsj, drj) = (x.dbar(r, s_)?, x.dbar(s_, j)?, x.dbar(r, j)?);
                bl.eq(format!("A2b[{r},{s_},{j}]"), Expr::conj(&drs.inv(), &dsj), Expr::conj(&drj, &dsj));
                bl.eq(format!("A2c[{r},{s_},{j}]"), Expr::conj(&drj.inv(), &drs), Expr::conj(&dsj, &drs));
                for &i in &idx {
                    if r < i && i < s_ {
                        bl.comm(format!("A2d[{r},{i},{s_},{j}]"), x.dbar(i, j)?, Expr::conj(&drj.inv(), &drs));
                    }
                }
            }
        }
    }

    for i in 1..g {
        if i + 1 < g {
            let (l, r) = braid3(&x.t(i)?, &x.t(i + 1)?);
            bl.eq(format!("A3a[{i}]"), l, r);
        }
        for j in i + 2..g {
            bl.comm(format!("A3b[{i},{j}]"), x.t(i)?, x.t(j)?);
        }
    }

    bl.eq("A4a", s.pow(2), x.dbar(-1, 1)?.mul(&x.a2(1)?.inv()));
    for i in 1..g {
        let ii = i as i64;
        bl.eq(format!("A4b[{i}]"), x.t(i)?.pow(2), x.dbar(ii, ii + 1)?.mul(&x.dbar(-ii - 1, -ii)?));
        if i >= 2 {
            bl.comm(format!("A5[{i}]"), x.t(i)?, s.clone());
        }
    }
    if g >= 2 {
        let (l, r) = braid4(&s, &x.t(1)?);
        bl.eq("A6", l, r);
    }

    for i in 1..=g {
        bl.comm(format!("A7a[{i}]"), s.clone(), x.a2(i)?);
        if i < g {
            bl.eq(format!("A7b[{i}]"), Expr::conj(&x.t(i)?, &x.a2(i)?), x.a2(i + 1)?);
        }
        for j in 1..g {
            if j != i && j + 1 != i {
                bl.comm(format!("A7c[{i},{j}]"), x.a2(i)?, x.t(j)?);
            }
        }
    }

    for &(i, j) in &pairs {
        let d = x.dbar(i, j)?;
        let l = fmt_pair(i, j);
        if (i.abs() >= 2 && j.abs() >= 2) || (i, j) == (-1, 1) {
            bl.eq(format!("A8a{l}"), Expr::conj(&s, &d), d.clone());
        }
        if i == -1 && j >= 2 {
            bl.eq(format!("A8a{l}"), Expr::conj(&s, &d), x.dbar(1, j)?);
        }
        if j == -1 && i <= -2 {
            bl.eq(format!("A8a{l}"), Expr::conj(&s, &d), x.dbar(i, 1)?);
        }
        for k in 1..g as i64 {
            let t = x.t(k as usize)?;
            let lk = format!("[{k};{i},{j}]");
            let td = Expr::conj(&t, &d);
            let mid = [k, k + 1];
            if (j - 1 == i && i == k) || (j == i + 1 && i + 1 == -k) || (!mid.contains(&i.abs()) && !mid.contains(&j.abs()))
            {
                bl.eq(format!("A8b{lk}"), td.clone(), d.clone());
            }
            if i == k && j >= k + 2 {
                bl.eq(format!("A8c{lk}"), td.clone(), x.dbar(k + 1, j)?);
            }
            if j == -k - 1 && i <= -k - 2 {
                bl.eq(format!("A8c{lk}"), td.clone(), x.dbar(i, -k)?);
            }
            if (i, j) == (-k - 1, k) {
                bl.eq(format!("A8d{lk}"), td.clone(), x.dbar(-k, k + 1)?);
            }
            if (i, j) == (-k - 1, k + 1) {
                bl.eq(format!("A8e{lk}"), td.clone(), Expr::conj(&x.dbar(k, k + 1)?, &x.dbar(-k, k)?));
            }
            if i == -k - 1 && j > -k && j != k && j != k + 1 {
                bl.eq(format!("A8f{lk}"), td.clone(), x.dbar(-k, j)?);
            }
            if j == k && i < k && i != -k && i != -k - 1 {
                bl.eq(format!("A8f{lk}"), td.clone(), x.dbar(i, k + 1)?);
            }
        }
    }
    Ok(())
}

pub fn stabilizer(g: usize) -> Result<Presentation, PresError> {
    let mut x = Expander::new(Mode::Stabilizer { handlebody: false }, g)?;
    let mut bl = Builder::new(&x, format!("stabilizer-g{g}"));
    stabilizer_relations(&mut x, &mut bl)?;
    Ok(bl.p)
}

/// Product of the `k_m` for `m = hi, hi-1, ..., lo`.
fn k_down(x: &mut Expander, hi: i64, lo: i64) -> Result<Expr, PresError> {
    let mut parts = Vec::new();
    for m in down(hi, lo) {
        parts.push(x.k(m as usize)?);
    }
    Ok(Expr::seq(parts))
}

pub fn handlebody(g: usize) -> Result<Presentation, PresError> {
    let mut x = Expander::new(Mode::Stabilizer { handlebody: true }, g)?;
    let mut bl = Builder::new(&x, format!("handlebody-g{g}"));
    stabilizer_relations(&mut x, &mut bl)?;
    let gi = g as i64;
    let idx = signed_indices(g);
    let all_a: Vec<(usize, i64)> = (1..=g).map(|k| (k, 1)).collect();

    bl.rel("H2", x.dset(&idx)?.mul(&x.a2_product(&all_a)?));
    for &k in &idx {
        let rest: Vec<(usize, i64)> = all_a.iter().copied().filter(|&(m, _)| m as i64 != k.abs()).collect();
        bl.rel(format!("H3[{k}]"), x.dset(&hat(&idx, k))?.mul(&x.a2_product(&rest)?));
    }

    for (i, j) in handlebody_r_pairs(g) {
        let l = fmt_pair(i, j);
        let ju = j as usize;
        let r = x.rbar(i, j)?;
        let dij = x.drange(i, j)?;
        let sj = x.s(ju)?;
        let pre = a_prefix(&mut x, i, j - 1)?;
        bl.eq(format!("H4{l}"), r.pow(2), Expr::seq([pre, sj.clone(), dij.clone(), sj.clone(), dij.inv()]));

        for k in 1..=g {
            if k != ju {
                bl.comm(format!("H5a{l}[A{k}]"), r.clone(), x.a2(k)?);
            }
        }
        let c2 = if i == 1 {
            dij.pow(2).mul(&x.a2_product(&(1..=ju).map(|k| (k, 1)).collect::<Vec<_>>())?)
        } else {
            let m = (-i) as usize;
            let mut terms: Vec<(usize, i64)> = (1..=m).map(|k| (k, 2)).collect();
            terms.extend((m + 1..=ju).map(|k| (k, 1)));
            dij.pow(2).mul(&x.a2_product(&terms)?)
        };
        bl.eq(format!("H5a{l}"), Expr::conj(&r, &x.a2(ju)?), c2);
        for k in 1..gi {
            if k != j && k != j - 1 && k != -i {
                bl.comm(format!("H5b{l}[t{k}]"), r.clone(), x.t(k as usize)?);
            }
        }
        for k in 1..=gi {
            if k <= -i || k > j {
                bl.comm(format!("H5c{l}[s{k}]"), r.clone(), x.s(k as usize)?);
            }
        }
        let inside = index_range(i, j - 1);
        let mut outside = index_range(i, j);
        outside.push(-j);
        for (a, &p) in idx.iter().enumerate() {
            for &q in &idx[a + 1..] {
                let both_in = inside.contains(&p) && inside.contains(&q);
                let both_out = !outside.contains(&p) && !outside.contains(&q);
                if both_in || both_out {
                    bl.comm(format!("H5d{l}[{p},{q}]"), r.clone(), x.dbar(p, q)?);
                }
            }
        }
        if i <= -1 && j - i == gi {
            let m = (-i) as usize;
            let lhs = Expr::conj(&x.z(ju)?, &r);
            let rhs = Expr::seq([
                x.a2_product(&(1..=m).map(|k| (k, 1)).collect::<Vec<_>>())?,
                r.clone(),
                x.a2_product(&(ju + 1..=g).map(|k| (k, -1)).collect::<Vec<_>>())?,
            ]);
            bl.eq(format!("H5e{l}"), lhs, rhs);
        }
        let rest = index_range(i, j)[1..].to_vec();
        bl.eq(
            format!("H5f{l}"),
            Expr::conj(&r, &x.dbar(i, j)?),
            Expr::seq([x.a2(i.unsigned_abs() as usize)?.inv(), dij.inv(), x.dset(&rest)?]),
        );
        if i == 1 {
            let c = x.ts(&down(j - 2, 1))?;
            bl.eq(
                format!("H5g{l}"),
                Expr::conj(&r, &x.dbar(-j, -j + 1)?),
                dij.inv().mul(&Expr::conj(&c, &x.drange(-1, j)?)),
            );
        }
        if i <= -1 && j + i > 1 {
            let c = x.ts(&down(j - 2, -i + 1))?;
            bl.eq(
                format!("H5h{l}"),
                Expr::conj(&r, &x.dbar(-j, -j + 1)?),
                dij.inv().mul(&Expr::conj(&c, &x.drange(i - 1, j)?)),
            );
        }
        if j < gi {
            bl.eq(
                format!("H5i{l}"),
                Expr::conj(&r.inv(), &x.dbar(-j - 1, -j)?),
                dij.inv().mul(&Expr::conj(&x.s(ju + 1)?.inv(), &x.drange(i, j + 1)?)),
            );
        }
        let t = x.t(ju - 1)?;
        let lhs = Expr::conj(&r, &t);
        let base = Expr::conj(&t.inv(), &r);
        if i > -j + 1 {
            bl.eq(format!("H6{l}"), lhs, base.mul(&dij.inv()));
        } else {
            let a = x.a2_product(&(1..ju).map(|k| (k, 1)).collect::<Vec<_>>())?;
            bl.flag(format!("H6{l}"), lhs, Expr::seq([base, a, dij.pow(-2)]));
        }
    }

    z_commutation(&mut x, &mut bl)?;
    triangle_relations_handlebody(&mut x, &mut bl)?;
    Ok(bl.p)
}

/// `[r̄_{1,g}, z_g] = 1`.
fn z_commutation(x: &mut Expander, bl: &mut Builder) -> Result<(), PresError> {
    let g = x.genus();
    if g >= 2 {
        bl.comm(format!("H5e[1,{g}]"), x.rbar(1, g as i64)?, x.z(g)?);
    }
    Ok(())
}

fn triangle_relations_handlebody(x: &mut Expander, bl: &mut Builder) -> Result<(), PresError> {
    let g = x.genus();
    for (i, j) in handlebody_r_pairs(g) {
        let ju = j as usize;
        let sj = x.s(ju)?;
        let a1 = x.a2(1)?;
        let r12 = x.rbar(1, 2)?;
        if i == 1 && j >= 3 {
            let a = Expr::seq([x.k(ju - 1)?.inv(), x.ts(&negate(down(j - 2, 1)))?, k_down(x, j - 1, 2)?]);
            let d1j = x.drange(1, j)?;
            let rhs = Expr::seq([
                sj.clone(),
                d1j.clone(),
                sj.clone(),
                d1j.inv(),
                x.k(ju - 1)?,
                x.drange(1, j - 2)?,
                x.t(ju - 1)?,
                x.drange(1, j - 1)?.inv(),
                x.t(ju - 1)?.inv(),
                x.rbar(1, j - 1)?.inv(),
                x.s(ju - 1)?,
                x.a2_product(&(1..ju - 1).map(|k| (k, -1)).collect::<Vec<_>>())?,
                Expr::conj(&a, &a1.inv().mul(&r12.inv())),
                x.k(ju - 1)?.inv(),
            ]);
            bl.eq(format!("H7a[1,{j}]"), x.rbar(1, j)?, rhs);
        }
        if i == -1 {
            let b = x.s(1)?.mul(&k_down(x, j - 1, 2)?);
            let dm = x.drange(-1, j)?;
            let rhs = Expr::seq([
                Expr::conj(&b, &a1.inv().mul(&r12.inv())),
                sj.clone(),
                x.rbar(1, j)?.inv(),
                x.a2_product(&(1..ju).map(|k| (k, -1)).collect::<Vec<_>>())?,
                x.drange(-1, j - 1)?.inv(),
                x.drange(1, j - 1)?,
                sj.clone(),
                dm.clone(),
                sj.clone(),
                dm.inv(),
            ]);
            bl.eq(format!("H7b[-1,{j}]"), x.rbar(-1, j)?, rhs);
        }
        if i <= -2 {
            let m = (-i) as usize;
            let c = Expr::seq([x.s(m)?, x.ts(&negate(down(-i - 1, 1)))?, k_down(x, j - 1, 2)?]);
            let mut terms: Vec<(usize, i64)> = (1..m).map(|k| (k, -2)).collect();
            terms.extend((m..ju).map(|k| (k, -1)));
            let dij = x.drange(i, j)?;
            let rhs = Expr::seq([
                Expr::conj(&c, &a1.inv().mul(&r12.inv())),
                sj.clone(),
                x.a2_product(&terms)?,
                x.rbar(i + 1, j)?.inv(),
                x.drange(i, j - 1)?.inv(),
                x.drange(i + 1, j - 1)?,
                sj.clone(),
                dij.clone(),
                sj.clone(),
                dij.inv(),
            ]);
            bl.eq(format!("H7c[{i},{j}]"), x.rbar(i, j)?, rhs);
        }
    }
    Ok(())
}
