//! Integral symplectic representation of twist words.
//!
//! Convention: `T_c(x) = x + <c,x> c` with `<alpha_i, beta_i> = 1`, so the
//! twist along `alpha_1` in genus one is `[[1,1],[0,1]]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::fp_core::{Evaluator, Expr, FpError, GenId, Letter, Rep, Word};
use crate::gf2_spin::{Gf2SympMap, Gf2Vec, QuadForm};
use crate::linalg::{symplectic_inverse, Gf2, IntMatrix, Matrix};

pub type SpMatrix = IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpError {
    #[error("index out of range for genus {g}: {what}")]
    IndexOutOfRange { g: usize, what: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("curves do not form a 7-chain: {0}")]
    NotAChain(String),
    #[error("genus {0} is too small here")]
    GenusTooSmall(usize),
    #[error(transparent)]
    Fp(#[from] FpError),
}

/// Structured curve names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurveName {
    Alpha(usize),
    Beta(usize),
    /// `beta_i - beta_{i+1}`
    Eps(usize),
    /// Curve around the holes of a subset of `±1..±g`.
    Delta(Vec<i64>),
    /// `delta` of the consecutive range `i..j` (zero skipped).
    Gamma(i64, i64),
    Boundary,
    /// Any other class given by coordinates.
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveClass {
    pub name: CurveName,
    pub vec: Vec<i64>,
}

impl CurveClass {
    pub fn from_vec(name: &str, vec: Vec<i64>) -> Self {
        CurveClass { name: CurveName::Named(name.to_string()), vec }
    }

    pub fn genus(&self) -> usize {
        self.vec.len() / 2
    }

    pub fn mod2(&self) -> Gf2Vec {
        Gf2Vec::from_coords(&self.vec)
    }
}

/// Indices `i..=j` with zero removed.
pub fn index_range(i: i64, j: i64) -> Vec<i64> {
    (i..=j).filter(|&k| k != 0).collect()
}

fn check_index(g: usize, i: usize, what: &str) -> Result<(), SpError> {
    if i == 0 || i > g {
        return Err(SpError::IndexOutOfRange { g, what: what.to_string() });
    }
    Ok(())
}

pub fn curve_class(name: CurveName, g: usize) -> Result<CurveClass, SpError> {
    let mut v = vec![0i64; 2 * g];
    match &name {
        CurveName::Alpha(i) => {
            check_index(g, *i, "alpha")?;
            v[2 * (i - 1)] = 1;
        }
        CurveName::Beta(i) => {
            check_index(g, *i, "beta")?;
            v[2 * i - 1] = 1;
        }
        CurveName::Eps(i) => {
            check_index(g, *i, "eps")?;
            check_index(g, *i + 1, "eps")?;
            v[2 * i - 1] = 1;
            v[2 * i + 1] = -1;
        }
        CurveName::Delta(set) => {
            for &k in set {
                check_index(g, k.unsigned_abs() as usize, "delta")?;
                v[2 * (k.unsigned_abs() as usize - 1)] += k.signum();
            }
        }
        CurveName::Gamma(i, j) => {
            return Ok(CurveClass { vec: curve_class(CurveName::Delta(index_range(*i, *j)), g)?.vec, name });
        }
        CurveName::Boundary => {}
        CurveName::Named(n) => {
            return Err(SpError::UnknownGenerator(n.clone()));
        }
    }
    Ok(CurveClass { name, vec: v })
}

/// `<u,v> = sum u_alpha v_beta - u_beta v_alpha`.
pub fn pairing(u: &[i64], v: &[i64]) -> i64 {
    (0..u.len() / 2).map(|i| u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i]).sum()
}

pub fn transvection_vec(c: &[i64]) -> SpMatrix {
    let n = c.len();
    let mut m = SpMatrix::identity(n);
    for j in 0..n {
        let mut e = vec![0i64; n];
        e[j] = 1;
        let p = pairing(c, &e);
        if p == 0 {
            continue;
        }
        for (i, &ci) in c.iter().enumerate() {
            if ci != 0 {
                let x = m.get(i, j) + BigInt::from(p * ci);
                m.set(i, j, x);
            }
        }
    }
    m
}

pub fn transvection_int(c: &CurveClass) -> SpMatrix {
    transvection_vec(&c.vec)
}

pub fn sp_mul(a: &SpMatrix, b: &SpMatrix) -> SpMatrix {
    a.mul(b)
}

pub fn sp_inv(a: &SpMatrix) -> SpMatrix {
    symplectic_inverse(a)
}

pub fn sp_pow(a: &SpMatrix, k: i64) -> SpMatrix {
    let rep = SpRep::from_images(vec![Some(a.clone())]);
    rep.pow(&SpElem::from_matrix(a), k).to_matrix()
}

/// `a b a^-1`
pub fn sp_conj(a: &SpMatrix, b: &SpMatrix) -> SpMatrix {
    a.mul(b).mul(&sp_inv(a))
}

pub fn sp_prod(ms: &[&SpMatrix]) -> SpMatrix {
    let n = ms.first().map_or(0, |m| m.rows());
    ms.iter().fold(SpMatrix::identity(n), |acc, m| acc.mul(m))
}

pub fn reduce_mod2(m: &SpMatrix) -> Matrix<Gf2> {
    m.map(|x| Gf2::from(x))
}

/// Mod-2 reduction as a bit-packed symplectic map.
pub fn to_gf2_map(m: &SpMatrix) -> Result<Gf2SympMap, crate::gf2_spin::Gf2Error> {
    Gf2SympMap::from_matrix(&reduce_mod2(m))
}

/// Matrix element with a machine-integer fast path.
#[derive(Clone, Debug)]
pub enum SpElem {
    Small { n: usize, data: Vec<i64> },
    Big(SpMatrix),
}

impl SpElem {
    pub fn from_matrix(m: &SpMatrix) -> SpElem {
        let n = m.rows();
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                match m.get(r, c).to_i64() {
                    Some(x) => data.push(x),
                    None => return SpElem::Big(m.clone()),
                }
            }
        }
        SpElem::Small { n, data }
    }

    pub fn to_matrix(&self) -> SpMatrix {
        match self {
            SpElem::Big(m) => m.clone(),
            SpElem::Small { n, data } => {
                SpMatrix::from_rows((0..*n).map(|r| (0..*n).map(|c| BigInt::from(data[r * n + c])).collect()).collect())
            }
        }
    }

}

/// Evaluates generators by fixed symplectic images; missing images fail evaluation.
pub struct SpRep {
    images: Vec<Option<SpElem>>,
    dim: usize,
}

impl SpRep {
    pub fn from_images(images: Vec<Option<SpMatrix>>) -> Self {
        let dim = images.iter().flatten().map(|m| m.rows()).next().unwrap_or(0);
        SpRep { images: images.iter().map(|m| m.as_ref().map(SpElem::from_matrix)).collect(), dim }
    }

    /// Images looked up by generator name in a table.
    pub fn from_table(names: &[String], table: &GeneratorTable) -> Self {
        SpRep::from_images(names.iter().map(|n| table.get(n).cloned()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl Rep for SpRep {
    type Elem = SpElem;

    fn identity(&self) -> SpElem {
        let n = self.dim;
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        SpElem::Small { n, data }
    }

    fn generator(&self, g: GenId) -> Option<SpElem> {
        self.images.get(g).cloned().flatten()
    }

    fn mul(&self, a: &SpElem, b: &SpElem) -> SpElem {
        if let (SpElem::Small { n, data: x }, SpElem::Small { data: y, .. }) = (a, b) {
            let n = *n;
            let mut out = vec![0i64; n * n];
            let mut ok = true;
            'outer: for i in 0..n {
                for j in 0..n {
                    let mut acc: i128 = 0;
                    for k in 0..n {
                        acc += i128::from(x[i * n + k]) * i128::from(y[k * n + j]);
                    }
                    match i64::try_from(acc) {
                        Ok(v) if v.unsigned_abs() < (1u64 << 62) => out[i * n + j] = v,
                        _ => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if ok {
                return SpElem::Small { n, data: out };
            }
        }
        SpElem::from_matrix(&a.to_matrix().mul(&b.to_matrix()))
    }

    fn inverse(&self, a: &SpElem) -> SpElem {
        // -J M^T J has entry (r,c) = s(r) s(c) M[c^1][r^1], s = +1 on alpha rows and -1 on beta rows
        match a {
            SpElem::Small { n, data } => {
                let n = *n;
                let sgn = |k: usize| if k.is_multiple_of(2) { 1i64 } else { -1 };
                let mut out = vec![0i64; n * n];
                for r in 0..n {
                    for c in 0..n {
                        out[r * n + c] = sgn(r) * sgn(c) * data[(c ^ 1) * n + (r ^ 1)];
                    }
                }
                SpElem::Small { n, data: out }
            }
            SpElem::Big(m) => SpElem::Big(symplectic_inverse(m)),
        }
    }

    fn is_identity(&self, a: &SpElem) -> bool {
        match a {
            SpElem::Small { n, data } => {
                (0..*n).all(|r| (0..*n).all(|c| data[r * n + c] == i64::from(r == c)))
            }
            SpElem::Big(m) => m.is_identity(),
        }
    }
}

/// Mod-2 images as bit-packed symplectic maps.
pub struct Gf2Rep {
    images: Vec<Option<Gf2SympMap>>,
    g: usize,
}

impl Gf2Rep {
    pub fn from_images(g: usize, images: Vec<Option<Gf2SympMap>>) -> Self {
        Gf2Rep { images, g }
    }

    pub fn from_table(names: &[String], table: &GeneratorTable) -> Self {
        let images = names.iter().map(|n| table.get(n).and_then(|m| to_gf2_map(m).ok())).collect();
        Gf2Rep { images, g: table.g }
    }
}

impl Rep for Gf2Rep {
    type Elem = Gf2SympMap;

    fn identity(&self) -> Gf2SympMap {
        Gf2SympMap::identity(self.g)
    }

    fn generator(&self, g: GenId) -> Option<Gf2SympMap> {
        self.images.get(g).cloned().flatten()
    }

    fn mul(&self, a: &Gf2SympMap, b: &Gf2SympMap) -> Gf2SympMap {
        a.compose(b)
    }

    fn inverse(&self, a: &Gf2SympMap) -> Gf2SympMap {
        a.inverse()
    }

    fn is_identity(&self, a: &Gf2SympMap) -> bool {
        a.is_identity()
    }
}

/// Named matrix images.
#[derive(Clone, Debug, Default)]
pub struct GeneratorTable {
    pub g: usize,
    pub mats: BTreeMap<String, SpMatrix>,
}

impl GeneratorTable {
    pub fn new(g: usize) -> Self {
        GeneratorTable { g, mats: BTreeMap::new() }
    }

    pub fn insert(&mut self, name: &str, m: SpMatrix) {
        self.mats.insert(name.to_string(), m);
    }

    pub fn get(&self, name: &str) -> Option<&SpMatrix> {
        self.mats.get(name)
    }

    pub fn names(&self) -> Vec<String> {
        self.mats.keys().cloned().collect()
    }
}

/// Product of the word's letters, looked up by name; leftmost factor is applied last.
pub fn eval_word(w: &Word, names: &[String], table: &GeneratorTable) -> Result<SpMatrix, SpError> {
    for l in w.letters() {
        let name = names.get(l.gen).ok_or_else(|| SpError::UnknownGenerator(format!("#{}", l.gen)))?;
        if table.get(name).is_none() {
            return Err(SpError::UnknownGenerator(name.clone()));
        }
    }
    let rep = SpRep::from_table(names, table);
    let mut ev = Evaluator::new(&rep);
    let e = ev.eval(&Expr::from_word(w))?;
    if w.is_empty() {
        return Ok(SpMatrix::identity(2 * table.g));
    }
    Ok(e.to_matrix())
}

pub fn check_relator(w: &Word, names: &[String], table: &GeneratorTable) -> Result<bool, SpError> {
    Ok(eval_word(w, names, table)?.is_identity())
}

/// Direct matrices of the classical generators: `a_i`, `b_i`, `t_i`,
/// `s`, `d̄_{i,j}`, `d̄_I`, `r̄_{i,j}`, built from transvections.
#[derive(Clone, Debug)]
pub struct ClassicalModel {
    pub g: usize,
}

impl ClassicalModel {
    pub fn new(g: usize) -> Self {
        ClassicalModel { g }
    }

    fn class(&self, name: CurveName) -> Vec<i64> {
        curve_class(name, self.g).map(|c| c.vec).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn identity(&self) -> SpMatrix {
        SpMatrix::identity(2 * self.g)
    }

    pub fn a(&self, i: usize) -> SpMatrix {
        transvection_vec(&self.class(CurveName::Alpha(i)))
    }

    /// `a_i^2`
    pub fn a2(&self, i: usize) -> SpMatrix {
        let a = self.a(i);
        a.mul(&a)
    }

    pub fn b(&self, i: usize) -> SpMatrix {
        transvection_vec(&self.class(CurveName::Beta(i)))
    }

    /// `s = b_1 a_1^2 b_1`
    pub fn s(&self) -> SpMatrix {
        sp_prod(&[&self.b(1), &self.a2(1), &self.b(1)])
    }

    /// `t_i = T(eps_i) a_i a_{i+1} T(eps_i)`
    pub fn t(&self, i: usize) -> SpMatrix {
        let e = transvection_vec(&self.class(CurveName::Eps(i)));
        sp_prod(&[&e, &self.a(i), &self.a(i + 1), &e])
    }

    /// `d̄_{i,j} = T(delta_{i,j}) a_|i|^-1 a_|j|^-1`
    pub fn dbar(&self, i: i64, j: i64) -> SpMatrix {
        let d = transvection_vec(&self.class(CurveName::Delta(vec![i, j])));
        let ai = sp_inv(&self.a(i.unsigned_abs() as usize));
        let aj = sp_inv(&self.a(j.unsigned_abs() as usize));
        sp_prod(&[&d, &ai, &aj])
    }

    /// Ordered product of `d̄` over pairs of `set`.
    pub fn dset(&self, set: &[i64]) -> SpMatrix {
        let mut r = self.identity();
        for x in 0..set.len() {
            for y in x + 1..set.len() {
                r = r.mul(&self.dbar(set[x], set[y]));
            }
        }
        r
    }

    /// `k_j = t_j d̄_{j,j+1}^-1`
    pub fn k(&self, j: usize) -> SpMatrix {
        self.t(j).mul(&sp_inv(&self.dbar(j as i64, j as i64 + 1)))
    }

    /// `s_j = (k_{j-1} ... k_1) * s`
    pub fn s_j(&self, j: usize) -> SpMatrix {
        let mut c = self.identity();
        for k in (1..j).rev() {
            c = c.mul(&self.k(k));
        }
        sp_conj(&c, &self.s())
    }

    /// `r̄_{i,j}` from `r_{i,j} = b_j a_j c_{i,j} b_j` with the `a` prefix of the definition.
    pub fn rbar(&self, i: i64, j: usize) -> SpMatrix {
        let c = transvection_vec(&self.class(CurveName::Gamma(i, j as i64)));
        let r = sp_prod(&[&self.b(j), &self.a(j), &c, &self.b(j)]);
        let mut pre = self.identity();
        if i == 1 {
            for k in 1..j {
                pre = pre.mul(&sp_inv(&self.a(k)));
            }
        } else {
            let m = (-i) as usize;
            for k in 1..=m {
                pre = pre.mul(&sp_inv(&self.a2(k)));
            }
            for k in m + 1..j {
                pre = pre.mul(&sp_inv(&self.a(k)));
            }
        }
        pre.mul(&r)
    }
}

/// Homology classes of the admissible twist generators `b_k`, `xi_k`,
/// `eta_k` (and `z1`, `z2` in genus three).
pub fn twist_generator_classes(g: usize) -> Vec<(String, Vec<i64>)> {
    let mut out = Vec::new();
    let e = |k: usize| 2 * (k - 1);
    let f = |k: usize| 2 * k - 1;
    for k in 1..=g {
        let mut v = vec![0; 2 * g];
        v[f(k)] = -1;
        out.push((format!("b{k}"), v));
    }
    for k in 1..g {
        let mut v = vec![0; 2 * g];
        v[f(k)] = -1;
        v[e(k + 1)] = 1;
        out.push((format!("xi{k}"), v));
    }
    for k in 2..=g {
        let mut v = vec![0; 2 * g];
        v[e(k - 1)] = 1;
        v[f(k)] = -1;
        out.push((format!("eta{k}"), v));
    }
    if g == 3 {
        out.push(("z1".into(), vec![0, 0, 1, 0, 0, -1]));
        out.push(("z2".into(), vec![1, 0, 1, 0, 0, -1]));
    }
    out
}

/// Matrices of `b_k`, `xi_k`, `eta_k` obtained from their defining words in
/// the classical generators, together with `z1`, `z2` (genus 3), `m1..m4`, `H3`.
pub fn derived_generator_matrices(g: usize) -> Result<GeneratorTable, SpError> {
    if g < 2 {
        return Err(SpError::GenusTooSmall(g));
    }
    let m = ClassicalModel::new(g);
    let mut t = GeneratorTable::new(g);
    let mut b = vec![SpMatrix::identity(0), m.b(1)];
    t.insert("b1", m.b(1));
    for k in 1..g {
        let dinv = sp_inv(&m.dbar(k as i64, k as i64 + 1));
        let next = sp_conj(&m.t(k).mul(&dinv), &b[k]);
        t.insert(&format!("xi{k}"), sp_conj(&dinv, &b[k]));
        t.insert(&format!("eta{}", k + 1), sp_conj(&sp_inv(&m.t(k)), &b[k]));
        t.insert(&format!("b{}", k + 1), next.clone());
        b.push(next);
    }
    if g >= 3 {
        if g == 3 {
            for (name, v) in twist_generator_classes(3).into_iter().filter(|(n, _)| n.starts_with('z')) {
                t.insert(&name, transvection_vec(&v));
            }
        }
        let get = |n: &str| t.get(n).cloned().unwrap_or_else(|| panic!("missing {n}"));
        let (b1, b2, b3) = (get("b1"), get("b2"), get("b3"));
        let (x1, x2, e2, e3) = (get("xi1"), get("xi2"), get("eta2"), get("eta3"));
        let h3 = sp_prod(&[&x2, &x1, &b2, &e3, &e2, &b1, &b1, &e2, &e3, &b2, &x1, &x2]);
        let m1 = sp_conj(&h3, &b3);
        let m2 = sp_conj(&e2.mul(&e3), &b2);
        let m3 = sp_conj(&sp_prod(&[&b1, &e2, &e3, &b2]), &x1);
        let m4 = sp_conj(&sp_prod(&[&x1, &b2, &e3, &e2]), &b1);
        t.insert("H3", h3);
        t.insert("m1", m1);
        t.insert("m2", m2);
        t.insert("m3", m3);
        t.insert("m4", m4);
    }
    Ok(t)
}

/// Table of the twist generators built directly from their classes.
pub fn twist_generator_table(g: usize) -> GeneratorTable {
    let mut t = GeneratorTable::new(g);
    for (name, v) in twist_generator_classes(g) {
        t.insert(&name, transvection_vec(&v));
    }
    t
}

/// Edge words of the hyperelliptic face of a 7-chain.
///
/// The relator word is `x = (c1 ... c6 c7^2 c6 ... c1)^2` (28 letters over
/// generator indices `0..7`); `h_k = (x_1 ... x_{k-1}) * x_k`.
pub fn hyperelliptic_face_words(chain: &[CurveClass]) -> Result<Vec<Word>, SpError> {
    if chain.len() != 7 {
        return Err(SpError::NotAChain(format!("expected 7 curves, got {}", chain.len())));
    }
    for i in 0..7 {
        for j in i + 1..7 {
            let p = pairing(&chain[i].vec, &chain[j].vec).abs();
            let want = i64::from(j == i + 1);
            if p != want {
                return Err(SpError::NotAChain(format!("curves {} and {} pair to {p}", i + 1, j + 1)));
            }
        }
    }
    let x = hyperelliptic_relator_letters();
    Ok((0..x.len())
        .map(|k| {
            let prefix = Word(x[..k].to_vec());
            Word::conj(&prefix, &Word(vec![x[k]]))
        })
        .collect())
}

/// The 28 letters `(c1 ... c6 c7^2 c6 ... c1)^2` over indices `0..7`.
pub fn hyperelliptic_relator_letters() -> Vec<Letter> {
    let mut half: Vec<Letter> = (0..6).map(Letter::pos).collect();
    half.push(Letter::pos(6));
    half.push(Letter::pos(6));
    half.extend((0..6).rev().map(Letter::pos));
    let mut x = half.clone();
    x.extend(half);
    x
}

/// Whether every generator image preserves the quadratic form `q`.
pub fn preserves_form(m: &SpMatrix, q: &QuadForm) -> bool {
    to_gf2_map(m).ok().and_then(|f| crate::gf2_spin::preserves(&f, q).ok()).unwrap_or(false)
}

/// The three convention checks: braid relation for classes pairing to one,
/// commutation for disjoint classes, and `s_1^2 = a_1^-4` in genus one.
pub fn convention_oracle() -> [(&'static str, bool); 3] {
    let m1 = ClassicalModel::new(1);
    let (a, b) = (m1.a(1), m1.b(1));
    let braid = sp_prod(&[&a, &b, &a]) == sp_prod(&[&b, &a, &b]);
    let m2 = ClassicalModel::new(2);
    let (a1, a2) = (m2.a(1), m2.b(2));
    let commute = a1.mul(&a2) == a2.mul(&a1);
    let s = m1.s();
    let a4 = sp_pow(&a, -4);
    let square = s.mul(&s) == a4 && s == int_rows(&[&[-1, 2], &[0, -1]]);
    [("braid", braid), ("disjoint-commute", commute), ("s1-squared", square)]
}

pub fn int_rows(rows: &[&[i64]]) -> SpMatrix {
    SpMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
}

pub fn is_zero_class(v: &[i64]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn one() -> BigInt {
    BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_symplectic;

    #[test]
    fn alpha_twist_matrix() {
        let a = transvection_int(&curve_class(CurveName::Alpha(1), 1).unwrap());
        assert_eq!(a, int_rows(&[&[1, 1], &[0, 1]]));
        assert!(transvection_int(&curve_class(CurveName::Boundary, 2).unwrap()).is_identity());
        assert!(transvection_int(&curve_class(CurveName::Delta(vec![-1, 1]), 2).unwrap()).is_identity());
    }

    #[test]
    fn oracle_triple() {
        for (name, ok) in convention_oracle() {
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn fast_inverse_matches() {
        let m = ClassicalModel::new(3);
        let x = sp_prod(&[&m.t(1), &m.b(2), &m.dbar(-1, 3), &m.a(3)]);
        assert!(is_symplectic(&x));
        let rep = SpRep::from_images(vec![Some(x.clone())]);
        let inv = rep.inverse(&SpElem::from_matrix(&x)).to_matrix();
        assert_eq!(inv, sp_inv(&x));
        assert!(x.mul(&inv).is_identity());
    }

    #[test]
    fn derived_match_classes() {
        for g in 2..=5 {
            let d = derived_generator_matrices(g).unwrap();
            let c = twist_generator_table(g);
            for n in c.names() {
                if n.starts_with('z') {
                    continue;
                }
                assert_eq!(d.get(&n), c.get(&n), "{n} at genus {g}");
            }
        }
    }
}
