//! Shorthand expansion into words over a presentation's generators.

use std::collections::HashMap;

use crate::fp_core::{Expr, GenKind, Presentation};
use crate::sp_rep::index_range;

use super::PresError;

/// Which generators the shorthands unfold into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `b_i`, `xi_i`, `eta_i` (plus `z1`, `z2` in genus 3).
    Twist,
    /// `A_i = a_i^2`, `s`, `t_i`, `d[i,j]`, and for the handlebody also `r[i,j]` and opaque `z[j]`.
    Stabilizer { handlebody: bool },
    /// `A1`, `b1`, `t1`, `d[1,2]`.
    Genus2,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Sym {
    M(usize),
    H2,
    H3,
    D12,
    A(usize),
    T(usize),
    S(usize),
    Dbar(i64, i64),
    Rbar(i64, i64),
}

/// `a, a-1, ..., b` (empty if `a < b`).
pub fn down(a: i64, b: i64) -> Vec<i64> {
    if a < b {
        return Vec::new();
    }
    (b..=a).rev().collect()
}

/// `a, a+1, ..., b` (empty if `b < a`).
pub fn up(a: i64, b: i64) -> Vec<i64> {
    (a..=b).collect()
}

pub fn negate(v: Vec<i64>) -> Vec<i64> {
    v.into_iter().map(|k| -k).collect()
}

/// `v` without `x`.
pub fn hat(v: &[i64], x: i64) -> Vec<i64> {
    v.iter().copied().filter(|&k| k != x).collect()
}

/// Predecessor in `-g..-1, 1..g`.
pub fn pred(i: i64) -> i64 {
    if i == 1 {
        -1
    } else {
        i - 1
    }
}

/// Signed index list `±1..±g`.
pub fn signed_indices(g: usize) -> Vec<i64> {
    index_range(-(g as i64), g as i64)
}

/// Pairs `(i,j)` indexing the `r̄_{i,j}` generators of the handlebody group.
pub fn handlebody_r_pairs(g: usize) -> Vec<(i64, i64)> {
    let g = g as i64;
    let mut out: Vec<(i64, i64)> = (2..=g).map(|j| (1, j)).collect();
    for i in (-g..=-1).rev() {
        for j in (-i + 1)..=(g + i) {
            out.push((i, j));
        }
    }
    out
}

pub struct Expander {
    g: usize,
    mode: Mode,
    skeleton: Presentation,
    index: HashMap<String, usize>,
    memo: HashMap<Sym, Expr>,
}

impl Expander {
    pub fn new(mode: Mode, g: usize) -> Result<Self, PresError> {
        let min = match mode {
            Mode::Twist => 3,
            Mode::Genus2 => 2,
            Mode::Stabilizer { .. } => 1,
        };
        if g < min || (mode == Mode::Genus2 && g != 2) || g > crate::gf2_spin::MAX_GENUS {
            return Err(PresError::GenusOutOfRange { what: format!("{mode:?}"), g });
        }
        let mut p = Presentation::new(format!("{mode:?} g={g}"));
        match mode {
            Mode::Twist => {
                for k in 1..=g {
                    p.add_gen(&format!("b{k}"), GenKind::Free);
                }
                for k in 1..g {
                    p.add_gen(&format!("xi{k}"), GenKind::Free);
                }
                for k in 2..=g {
                    p.add_gen(&format!("eta{k}"), GenKind::Free);
                }
                if g == 3 {
                    p.add_gen("z1", GenKind::Free);
                    p.add_gen("z2", GenKind::Free);
                }
            }
            Mode::Genus2 => {
                for n in ["A1", "b1", "t1", "d[1,2]"] {
                    p.add_gen(n, GenKind::Free);
                }
            }
            Mode::Stabilizer { handlebody } => {
                for k in 1..=g {
                    p.add_gen(&format!("A{k}"), GenKind::Free);
                }
                p.add_gen("s", GenKind::Free);
                for k in 1..g {
                    p.add_gen(&format!("t{k}"), GenKind::Free);
                }
                let idx = signed_indices(g);
                for (x, &i) in idx.iter().enumerate() {
                    for &j in &idx[x + 1..] {
                        p.add_gen(&format!("d[{i},{j}]"), GenKind::Free);
                    }
                }
                if handlebody {
                    for (i, j) in handlebody_r_pairs(g) {
                        p.add_gen(&format!("r[{i},{j}]"), GenKind::Free);
                    }
                    for j in 1..=g {
                        p.add_gen(&format!("z[{j}]"), GenKind::Opaque);
                    }
                }
            }
        }
        let index = p.gens.iter().enumerate().map(|(k, x)| (x.name.clone(), k)).collect();
        Ok(Expander { g, mode, skeleton: p, index, memo: HashMap::new() })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// The generators with no relators.
    pub fn skeleton(&self) -> Presentation {
        self.skeleton.clone()
    }

    pub fn gen_names(&self) -> Vec<String> {
        self.skeleton.gen_names()
    }

    pub fn gen(&self, name: &str) -> Result<Expr, PresError> {
        self.index.get(name).map(|&k| Expr::gen(k)).ok_or_else(|| PresError::UnknownSymbol(name.to_string()))
    }

    fn range_err(&self, what: String) -> PresError {
        PresError::IndexOutOfRange { g: self.g, what }
    }

    fn check(&self, ok: bool, what: impl FnOnce() -> String) -> Result<(), PresError> {
        if ok {
            Ok(())
        } else {
            Err(self.range_err(what()))
        }
    }

    fn twist_only(&self, what: &str) -> Result<(), PresError> {
        if self.mode == Mode::Twist {
            Ok(())
        } else {
            Err(PresError::UnknownSymbol(format!("{what} needs twist generators")))
        }
    }

    pub fn b(&self, k: usize) -> Result<Expr, PresError> {
        if self.mode == Mode::Genus2 && k == 1 {
            return self.gen("b1");
        }
        self.twist_only("b")?;
        self.gen(&format!("b{k}")).map_err(|_| self.range_err(format!("b{k}")))
    }

    pub fn xi(&self, k: usize) -> Result<Expr, PresError> {
        self.twist_only("xi")?;
        self.gen(&format!("xi{k}")).map_err(|_| self.range_err(format!("xi{k}")))
    }

    pub fn eta(&self, k: usize) -> Result<Expr, PresError> {
        self.twist_only("eta")?;
        self.gen(&format!("eta{k}")).map_err(|_| self.range_err(format!("eta{k}")))
    }

    pub fn z(&self, k: usize) -> Result<Expr, PresError> {
        match self.mode {
            Mode::Twist => self.gen(&format!("z{k}")).map_err(|_| self.range_err(format!("z{k}"))),
            _ => self.gen(&format!("z[{k}]")).map_err(|_| self.range_err(format!("z[{k}]"))),
        }
    }

    fn cached(&mut self, key: Sym, f: impl FnOnce(&mut Self) -> Result<Expr, PresError>) -> Result<Expr, PresError> {
        if let Some(e) = self.memo.get(&key) {
            return Ok(e.clone());
        }
        let e = f(self)?;
        self.memo.insert(key, e.clone());
        Ok(e)
    }

    /// `E_i = b_{i+1}^-1 * xi_i`
    pub fn e(&mut self, i: usize) -> Result<Expr, PresError> {
        Ok(Expr::conj(&self.b(i + 1)?.inv(), &self.xi(i)?))
    }

    /// `N_{i+1} = b_i^-1 * eta_{i+1}`
    pub fn n(&mut self, i: usize) -> Result<Expr, PresError> {
        self.check(i >= 2, || format!("N{i}"))?;
        Ok(Expr::conj(&self.b(i - 1)?.inv(), &self.eta(i)?))
    }

    pub fn h3(&mut self) -> Result<Expr, PresError> {
        self.cached(Sym::H3, |x| {
            Ok(Expr::seq([
                x.xi(2)?,
                x.xi(1)?,
                x.b(2)?,
                x.eta(3)?,
                x.eta(2)?,
                x.b(1)?,
                x.b(1)?,
                x.eta(2)?,
                x.eta(3)?,
                x.b(2)?,
                x.xi(1)?,
                x.xi(2)?,
            ]))
        })
    }

    /// `H_2 = eta3 eta2 b1 A1 b1 eta2 eta3`
    pub fn h2(&mut self) -> Result<Expr, PresError> {
        self.cached(Sym::H2, |x| {
            Ok(Expr::seq([x.eta(3)?, x.eta(2)?, x.b(1)?, x.a2(1)?, x.b(1)?, x.eta(2)?, x.eta(3)?]))
        })
    }

    pub fn m(&mut self, k: usize) -> Result<Expr, PresError> {
        self.check((1..=4).contains(&k), || format!("m{k}"))?;
        self.cached(Sym::M(k), |x| {
            Ok(match k {
                1 => Expr::conj(&x.h3()?, &x.b(3)?),
                2 => Expr::conj(&Expr::seq([x.eta(2)?, x.eta(3)?]), &x.b(2)?),
                3 => Expr::conj(&Expr::seq([x.b(1)?, x.eta(2)?, x.eta(3)?, x.b(2)?]), &x.xi(1)?),
                _ => Expr::conj(&Expr::seq([x.xi(1)?, x.b(2)?, x.eta(3)?, x.eta(2)?]), &x.b(1)?),
            })
        })
    }

    /// `(eta4 m1 m2 eta4) * m3`
    pub fn l3(&mut self) -> Result<Expr, PresError> {
        let c = Expr::seq([self.eta(4)?, self.m(1)?, self.m(2)?, self.eta(4)?]);
        Ok(Expr::conj(&c, &self.m(3)?))
    }

    /// `(eta4 eta3 b3 eta4) * m4`
    pub fn l4(&mut self) -> Result<Expr, PresError> {
        let c = Expr::seq([self.eta(4)?, self.eta(3)?, self.b(3)?, self.eta(4)?]);
        Ok(Expr::conj(&c, &self.m(4)?))
    }

    pub fn d12(&mut self) -> Result<Expr, PresError> {
        match self.mode {
            Mode::Genus2 => self.gen("d[1,2]"),
            Mode::Stabilizer { .. } => self.dbar(1, 2),
            Mode::Twist => self.cached(Sym::D12, |x| {
                let (m1, m2, m3) = (x.m(1)?, x.m(2)?, x.m(3)?);
                if x.g >= 4 {
                    let l = Expr::conj(&Expr::seq([x.eta(4)?, m1.clone(), m2.clone(), x.eta(4)?]), &m3.inv());
                    Ok(Expr::seq([m1, m2, l, m3.inv()]))
                } else {
                    Ok(Expr::seq([x.b(3)?, m2, x.z(1)?.inv(), m3.inv()]))
                }
            }),
        }
    }

    /// `A_i = a_i^2`.
    pub fn a2(&mut self, i: usize) -> Result<Expr, PresError> {
        self.check(i >= 1 && i <= self.g, || format!("a{i}^2"))?;
        match self.mode {
            Mode::Stabilizer { .. } => self.gen(&format!("A{i}")),
            Mode::Genus2 if i == 1 => self.gen("A1"),
            _ => self.cached(Sym::A(i), |x| {
                if i > 1 {
                    return Ok(Expr::conj(&x.t(i - 1)?, &x.a2(i - 1)?));
                }
                let (m1, m2, m3, m4) = (x.m(1)?, x.m(2)?, x.m(3)?, x.m(4)?);
                let (e3, b3) = (x.eta(3)?, x.b(3)?);
                if x.g >= 4 {
                    Ok(Expr::seq([m4, x.l4()?, e3.inv(), b3.inv(), m3, x.l3()?, m1.inv(), m2.inv()]))
                } else {
                    Ok(Expr::seq([m4, x.z(2)?, e3.inv(), b3.inv(), m3, x.z(1)?, b3.inv(), m2.inv()]))
                }
            }),
        }
    }

    pub fn t(&mut self, i: usize) -> Result<Expr, PresError> {
        self.check(i >= 1 && i < self.g, || format!("t{i}"))?;
        match self.mode {
            Mode::Stabilizer { .. } | Mode::Genus2 => self.gen(&format!("t{i}")),
            Mode::Twist => self.cached(Sym::T(i), |x| Ok(Expr::seq([x.n(i + 1)?, x.a2(i)?, x.e(i)?]))),
        }
    }

    /// Product of `t_|k|^sign(k)` over a signed list.
    pub fn ts(&mut self, list: &[i64]) -> Result<Expr, PresError> {
        let mut parts = Vec::with_capacity(list.len());
        for &k in list {
            let t = self.t(k.unsigned_abs() as usize)?;
            parts.push(if k > 0 { t } else { t.inv() });
        }
        Ok(Expr::seq(parts))
    }

    pub fn s(&mut self, j: usize) -> Result<Expr, PresError> {
        self.check(j >= 1 && j <= self.g, || format!("s{j}"))?;
        self.cached(Sym::S(j), |x| match x.mode {
            Mode::Stabilizer { .. } => {
                let s = x.gen("s")?;
                let mut c = Vec::new();
                for k in (1..j).rev() {
                    c.push(x.k(k)?);
                }
                Ok(Expr::conj(&Expr::seq(c), &s))
            }
            _ => Ok(Expr::seq([x.b(j)?, x.a2(j)?, x.b(j)?])),
        })
    }

    /// `k_j = t_j d̄_{j,j+1}^-1`
    pub fn k(&mut self, j: usize) -> Result<Expr, PresError> {
        Ok(self.t(j)?.mul(&self.dbar(j as i64, j as i64 + 1)?.inv()))
    }

    /// `d̄_{i,j}` for `i < j` in `±1..±g`.
    pub fn dbar(&mut self, i: i64, j: i64) -> Result<Expr, PresError> {
        let g = self.g as i64;
        self.check(i < j && i != 0 && j != 0 && i.abs() <= g && j.abs() <= g, || format!("d[{i},{j}]"))?;
        if let Mode::Stabilizer { .. } = self.mode {
            return self.gen(&format!("d[{i},{j}]"));
        }
        if (i, j) == (1, 2) {
            return self.d12();
        }
        self.cached(Sym::Dbar(i, j), |x| {
            let s1 = x.s(1)?;
            if i + j == 0 {
                if j == 1 {
                    return Ok(Expr::seq([s1.clone(), s1, x.a2(1)?]));
                }
                let mut w = Vec::new();
                for k in (1..j).rev() {
                    w.push(x.t(k as usize)?.inv());
                    w.push(x.dbar(k, k + 1)?);
                }
                return Ok(Expr::conj(&Expr::seq(w), &x.dbar(-1, 1)?));
            }
            let d12 = x.d12()?;
            let c = if i > 0 {
                let mut l = down(i - 1, 1);
                l.extend(down(j - 1, 2));
                x.ts(&l)?
            } else if -i < j {
                Expr::seq([x.ts(&negate(down(-i - 1, 1)))?, s1.inv(), x.ts(&down(j - 1, 2))?])
            } else if j > 0 {
                Expr::seq([x.ts(&negate(down(-i - 1, 1)))?, s1.inv(), x.ts(&down(j, 2))?])
            } else {
                let mut l = negate(down(-j - 1, 1));
                l.extend(negate(down(-i - 1, 2)));
                Expr::seq([x.ts(&l)?, s1.inv(), x.t(1)?.inv(), s1.inv()])
            };
            Ok(Expr::conj(&c, &d12))
        })
    }

    /// `d̄_I`: product of `d̄_{i,j}` over pairs of `I` in lexicographic order.
    pub fn dset(&mut self, set: &[i64]) -> Result<Expr, PresError> {
        let mut parts = Vec::new();
        for x in 0..set.len() {
            for y in x + 1..set.len() {
                parts.push(self.dbar(set[x], set[y])?);
            }
        }
        Ok(Expr::seq(parts))
    }

    /// `d̄` of the consecutive range `i..j` (zero skipped).
    pub fn drange(&mut self, i: i64, j: i64) -> Result<Expr, PresError> {
        self.dset(&index_range(i, j))
    }

    pub fn rbar(&mut self, i: i64, j: i64) -> Result<Expr, PresError> {
        if let Mode::Stabilizer { .. } = self.mode {
            return self.gen(&format!("r[{i},{j}]")).map_err(|_| self.range_err(format!("r[{i},{j}]")));
        }
        let g = self.g as i64;
        self.check(i < j && i != 0 && j >= 1 && i >= -g && j <= g, || format!("r[{i},{j}]"))?;
        self.cached(Sym::Rbar(i, j), |x| {
            let ju = j as usize;
            Ok(Expr::seq([x.b(ju)?, x.a2(ju)?, x.drange(i, j)?, x.b(ju)?]))
        })
    }

    /// Product of `A_k^e` over `(k, e)`.
    pub fn a2_product(&mut self, terms: &[(usize, i64)]) -> Result<Expr, PresError> {
        let mut parts = Vec::new();
        for &(k, e) in terms {
            parts.push(self.a2(k)?.pow(e));
        }
        Ok(Expr::seq(parts))
    }

    /// `u = t_1 ... t_{g-1}`
    pub fn u(&mut self) -> Result<Expr, PresError> {
        let l = up(1, self.g as i64 - 1);
        self.ts(&l)
    }

    /// `w1 = eta2 A2 N2 A1 N2 eta2`
    pub fn w1(&mut self) -> Result<Expr, PresError> {
        Ok(Expr::seq([self.eta(2)?, self.a2(2)?, self.n(2)?, self.a2(1)?, self.n(2)?, self.eta(2)?]))
    }

    /// `w2 = N3 A2 N2 A1 N2 N3`
    pub fn w2(&mut self) -> Result<Expr, PresError> {
        Ok(Expr::seq([self.n(3)?, self.a2(2)?, self.n(2)?, self.a2(1)?, self.n(2)?, self.n(3)?]))
    }

    /// `w3 = E2 E1 A1 E1 A2 E2`
    pub fn w3(&mut self) -> Result<Expr, PresError> {
        Ok(Expr::seq([self.e(2)?, self.e(1)?, self.a2(1)?, self.e(1)?, self.a2(2)?, self.e(2)?]))
    }

    /// Expands a symbol such as `d[1,2]`, `D[-2,-1,1,2]`, `r[1,3]`, `t1`,
    /// `a1^2`, `A1`, `s2`, `k1`, `m3`, `H3`, `E1`, `N2`, `w1`, `u`, or a
    /// generator name.
    pub fn symbol(&mut self, sym: &str) -> Result<Expr, PresError> {
        let sym = sym.trim();
        if let Some((head, args)) = sym.strip_suffix(']').and_then(|s| s.split_once('[')) {
            let nums: Vec<i64> = args
                .split(',')
                .map(|a| a.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| PresError::UnknownSymbol(sym.to_string()))?;
            return match (head, nums.as_slice()) {
                ("d", [i, j]) => self.dbar(*i, *j),
                ("D", set) => {
                    let g = self.g as i64;
                    self.check(set.iter().all(|&k| k != 0 && k.abs() <= g), || sym.to_string())?;
                    self.dset(set)
                }
                ("r", [i, j]) => self.rbar(*i, *j),
                _ => {
                    if self.index.contains_key(sym) {
                        self.gen(sym)
                    } else {
                        Err(PresError::UnknownSymbol(sym.to_string()))
                    }
                }
            };
        }
        if self.index.contains_key(sym) {
            return self.gen(sym);
        }
        if sym == "u" {
            return self.u();
        }
        if sym == "H2" {
            return self.h2();
        }
        if sym == "H3" {
            return self.h3();
        }
        let split = sym.find(|c: char| c.is_ascii_digit()).ok_or_else(|| PresError::UnknownSymbol(sym.to_string()))?;
        let (head, rest) = sym.split_at(split);
        let (num, squared) = match rest.strip_suffix("^2") {
            Some(n) => (n, true),
            None => (rest, false),
        };
        let k: usize = num.parse().map_err(|_| PresError::UnknownSymbol(sym.to_string()))?;
        match (head, squared) {
            ("a", true) | ("A", false) => self.a2(k),
            ("t", false) => self.t(k),
            ("s", false) => self.s(k),
            ("k", false) => self.k(k),
            ("m", false) => self.m(k),
            ("E", false) => self.e(k),
            ("N", false) => self.n(k),
            ("w", false) => match k {
                1 => self.w1(),
                2 => self.w2(),
                3 => self.w3(),
                _ => Err(self.range_err(sym.to_string())),
            },
            ("b", false) => self.b(k),
            ("xi", false) => self.xi(k),
            ("eta", false) => self.eta(k),
            ("z", false) => self.z(k),
            _ => Err(PresError::UnknownSymbol(sym.to_string())),
        }
    }
}

/// Number of lantern steps in the recursive unfolding of `d̄_I` for `|I| = n`:
/// the distinct subsets of size at least 3 reached from `I` by repeatedly
/// dropping its last or second-to-last element.
pub fn lantern_count(n: usize) -> usize {
    use std::collections::HashSet;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut stack = vec![(0..n).collect::<Vec<_>>()];
    while let Some(s) = stack.pop() {
        if s.len() < 3 || !seen.insert(s.clone()) {
            continue;
        }
        let l = s.len();
        for drop in [l - 1, l - 2] {
            let mut t = s.clone();
            t.remove(drop);
            stack.push(t);
        }
    }
    seen.len()
}
