//! Mod-2 symplectic algebra and spin structures as quadratic enhancements.
//!
//! Vectors and maps are bit-packed (coordinate `2(i-1)` is `alpha_i`,
//! `2(i-1)+1` is `beta_i`), which keeps closure enumeration cheap.

use std::collections::{HashMap, VecDeque};

use crate::linalg::{Gf2, Gf2Matrix, Matrix};

pub const MAX_GENUS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("zero vector is not allowed here")]
    ZeroVector,
    #[error("map is not symplectic")]
    NotSymplectic,
    #[error("vectors do not form a symplectic basis")]
    NotSymplecticBasis,
    #[error("spin values differ at basis position {0}")]
    SpinMismatch(usize),
    #[error("closure exceeded cap {0}")]
    CapExceeded(usize),
    #[error("genus {0} out of range 1..={MAX_GENUS}")]
    BadGenus(usize),
}

type Result<T> = std::result::Result<T, Gf2Error>;

/// Element of H_1(Sigma_g; Z/2).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gf2Vec {
    bits: u64,
    dim: usize,
}

impl Gf2Vec {
    pub fn zero(g: usize) -> Self {
        Gf2Vec { bits: 0, dim: 2 * g }
    }

    pub fn from_bits(g: usize, bits: u64) -> Self {
        let dim = 2 * g;
        let mask = if dim == 64 { u64::MAX } else { (1u64 << dim) - 1 };
        Gf2Vec { bits: bits & mask, dim }
    }

    /// Reduction mod 2 of an integer coordinate vector.
    pub fn from_coords<T: Into<i64> + Copy>(coords: &[T]) -> Self {
        let mut bits = 0u64;
        for (k, &c) in coords.iter().enumerate() {
            if c.into().rem_euclid(2) == 1 {
                bits |= 1 << k;
            }
        }
        Gf2Vec { bits, dim: coords.len() }
    }

    pub fn alpha(g: usize, i: usize) -> Self {
        Gf2Vec::from_bits(g, 1 << (2 * (i - 1)))
    }

    pub fn beta(g: usize, i: usize) -> Self {
        Gf2Vec::from_bits(g, 1 << (2 * (i - 1) + 1))
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn genus(&self) -> usize {
        self.dim / 2
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn coord(&self, k: usize) -> bool {
        (self.bits >> k) & 1 == 1
    }

    pub fn add(&self, other: &Gf2Vec) -> Result<Gf2Vec> {
        check_dims(self, other)?;
        Ok(Gf2Vec { bits: self.bits ^ other.bits, dim: self.dim })
    }
}

fn check_dims(u: &Gf2Vec, v: &Gf2Vec) -> Result<()> {
    if u.dim != v.dim {
        return Err(Gf2Error::DimensionMismatch(u.dim, v.dim));
    }
    Ok(())
}

const ALPHA_MASK: u64 = 0x5555_5555_5555_5555;

fn pair_bits(u: u64, v: u64) -> bool {
    // swap alpha/beta coordinates of v, then count overlaps
    let sw = ((v & ALPHA_MASK) << 1) | ((v >> 1) & ALPHA_MASK);
    (u & sw).count_ones() % 2 == 1
}

/// Mod-2 intersection pairing.
pub fn pair(u: &Gf2Vec, v: &Gf2Vec) -> Result<bool> {
    check_dims(u, v)?;
    Ok(pair_bits(u.bits, v.bits))
}

/// Quadratic enhancement q of the mod-2 intersection form, stored by basis values.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct QuadForm {
    g: usize,
    basis_q: u64,
}

impl QuadForm {
    pub fn new(g: usize, basis_q: u64) -> Result<Self> {
        if g == 0 || g > MAX_GENUS {
            return Err(Gf2Error::BadGenus(g));
        }
        Ok(QuadForm { g, basis_q: Gf2Vec::from_bits(g, basis_q).bits })
    }

    /// phi(alpha_i) = 1, phi(beta_i) = 0, i.e. q(alpha_i) = 0, q(beta_i) = 1.
    pub fn standard_even(g: usize) -> Self {
        let betas = !ALPHA_MASK;
        QuadForm { g, basis_q: Gf2Vec::from_bits(g, betas).bits }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn basis_q(&self) -> u64 {
        self.basis_q
    }

    /// Orthogonal direct sum; the second form occupies the last handles.
    pub fn direct_sum(&self, other: &QuadForm) -> Result<QuadForm> {
        QuadForm::new(self.g + other.g, self.basis_q | (other.basis_q << (2 * self.g)))
    }

    /// Every form in genus g, in order of basis values.
    pub fn all(g: usize) -> impl Iterator<Item = QuadForm> {
        (0..(1u64 << (2 * g))).map(move |b| QuadForm { g, basis_q: b })
    }
}

fn eval_bits(q: &QuadForm, v: u64) -> bool {
    // sum of basis values plus pairings between the alpha and beta of each handle
    let linear = (q.basis_q & v).count_ones();
    let cross = (v & ALPHA_MASK & (v >> 1)).count_ones();
    (linear + cross) % 2 == 1
}

fn check_form(q: &QuadForm, v: &Gf2Vec) -> Result<()> {
    if 2 * q.g != v.dim {
        return Err(Gf2Error::DimensionMismatch(2 * q.g, v.dim));
    }
    Ok(())
}

/// q(v) by polarization.
pub fn eval_form(q: &QuadForm, v: &Gf2Vec) -> Result<bool> {
    check_form(q, v)?;
    Ok(eval_bits(q, v.bits))
}

/// phi(v) = q(v) + 1.
pub fn spin_value(q: &QuadForm, v: &Gf2Vec) -> Result<bool> {
    Ok(!eval_form(q, v)?)
}

/// Arf invariant: sum over handles of q(alpha_i) q(beta_i).
pub fn arf(q: &QuadForm) -> bool {
    (q.basis_q & ALPHA_MASK & (q.basis_q >> 1)).count_ones() % 2 == 1
}

pub fn even_form_count(g: usize) -> usize {
    QuadForm::all(g).filter(|q| !arf(q)).count()
}

/// Symplectic map over GF(2); bit c of row r is the (r, c) entry.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gf2SympMap {
    g: usize,
    rows: Vec<u64>,
}

impl Gf2SympMap {
    pub fn identity(g: usize) -> Self {
        Gf2SympMap { g, rows: (0..2 * g).map(|r| 1u64 << r).collect() }
    }

    /// Wraps rows, checking the symplectic condition.
    pub fn from_rows(g: usize, rows: Vec<u64>) -> Result<Self> {
        if rows.len() != 2 * g {
            return Err(Gf2Error::DimensionMismatch(2 * g, rows.len()));
        }
        let m = Gf2SympMap { g, rows };
        if !m.is_symplectic() {
            return Err(Gf2Error::NotSymplectic);
        }
        Ok(m)
    }

    pub fn from_matrix(m: &Gf2Matrix) -> Result<Self> {
        let n = m.rows();
        if n != m.cols() || !n.is_multiple_of(2) {
            return Err(Gf2Error::DimensionMismatch(n, m.cols()));
        }
        let rows = (0..n)
            .map(|r| (0..n).fold(0u64, |acc, c| acc | (u64::from(m.get(r, c).0) << c)))
            .collect();
        Gf2SympMap::from_rows(n / 2, rows)
    }

    pub fn to_matrix(&self) -> Gf2Matrix {
        let n = 2 * self.g;
        Matrix::from_rows(
            self.rows.iter().map(|row| (0..n).map(|c| Gf2((row >> c) & 1 == 1)).collect()).collect(),
        )
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn apply(&self, v: &Gf2Vec) -> Result<Gf2Vec> {
        if v.dim != 2 * self.g {
            return Err(Gf2Error::DimensionMismatch(2 * self.g, v.dim));
        }
        Ok(Gf2Vec { bits: self.apply_bits(v.bits), dim: v.dim })
    }

    fn apply_bits(&self, v: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (r, row)| acc | (u64::from((row & v).count_ones() % 2 == 1) << r))
    }

    fn column(&self, c: usize) -> u64 {
        self.apply_bits(1 << c)
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn compose(&self, other: &Gf2SympMap) -> Gf2SympMap {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = 0u64;
                let mut bits = *row;
                while bits != 0 {
                    let k = bits.trailing_zeros() as usize;
                    out ^= other.rows[k];
                    bits &= bits - 1;
                }
                out
            })
            .collect();
        Gf2SympMap { g: self.g, rows }
    }

    pub fn inverse(&self) -> Gf2SympMap {
        // J M^T J; over GF(2) J only swaps alpha and beta coordinates
        let n = 2 * self.g;
        let cols: Vec<u64> = (0..n).map(|c| self.column(c)).collect();
        let swap_idx = |k: usize| k ^ 1;
        let swap_bits = |v: u64| ((v & ALPHA_MASK) << 1) | ((v >> 1) & ALPHA_MASK);
        let rows = (0..n).map(|r| swap_bits(cols[swap_idx(r)])).collect();
        Gf2SympMap { g: self.g, rows }
    }

    pub fn is_symplectic(&self) -> bool {
        let n = 2 * self.g;
        let cols: Vec<u64> = (0..n).map(|c| self.column(c)).collect();
        (0..n).all(|a| (0..n).all(|b| pair_bits(cols[a], cols[b]) == pair_bits(1 << a, 1 << b)))
    }

    pub fn is_identity(&self) -> bool {
        *self == Gf2SympMap::identity(self.g)
    }
}

/// v -> v + pair(v, c) c.
pub fn transvection_gf2(c: &Gf2Vec) -> Result<Gf2SympMap> {
    if c.is_zero() {
        return Err(Gf2Error::ZeroVector);
    }
    let g = c.genus();
    let n = 2 * g;
    let mut rows = vec![0u64; n];
    for k in 0..n {
        let col = if pair_bits(1 << k, c.bits) { (1u64 << k) ^ c.bits } else { 1u64 << k };
        for (r, row) in rows.iter_mut().enumerate() {
            if (col >> r) & 1 == 1 {
                *row |= 1 << k;
            }
        }
    }
    Ok(Gf2SympMap { g, rows })
}

/// q o M^{-1}.
pub fn act_form(m: &Gf2SympMap, q: &QuadForm) -> Result<QuadForm> {
    if m.g != q.g {
        return Err(Gf2Error::GenusMismatch(m.g, q.g));
    }
    if !m.is_symplectic() {
        return Err(Gf2Error::NotSymplectic);
    }
    let inv = m.inverse();
    let basis_q = (0..2 * q.g).fold(0u64, |acc, k| acc | (u64::from(eval_bits(q, inv.column(k))) << k));
    Ok(QuadForm { g: q.g, basis_q })
}

pub fn preserves(m: &Gf2SympMap, q: &QuadForm) -> Result<bool> {
    Ok(act_form(m, q)? == *q)
}

/// Twist along c preserves the structure iff phi(c) = 0.
pub fn admissible(q: &QuadForm, c: &Gf2Vec) -> Result<bool> {
    if c.is_zero() {
        return Err(Gf2Error::ZeroVector);
    }
    Ok(!spin_value(q, c)?)
}

/// phi of a smoothing of k parallel copies of a and l of b.
pub fn smoothing_value(k: i64, l: i64, phi_a: bool, phi_b: bool) -> bool {
    (k.rem_euclid(2) * i64::from(phi_a) + l.rem_euclid(2) * i64::from(phi_b)) % 2 == 1
}

/// phi of an arc sum.
pub fn arc_sum_value(phi_a: bool, phi_b: bool) -> bool {
    !(phi_a ^ phi_b)
}

/// Sum of boundary spin values equals the Euler characteristic mod 2.
pub fn coherence_check(q: &QuadForm, boundary: &[Gf2Vec], euler: i64) -> Result<bool> {
    let mut total = 0i64;
    for c in boundary {
        total += i64::from(spin_value(q, c)?);
    }
    Ok((total - euler).rem_euclid(2) == 0)
}

pub fn same_orbit(q1: &QuadForm, q2: &QuadForm) -> Result<bool> {
    if q1.g != q2.g {
        return Err(Gf2Error::GenusMismatch(q1.g, q2.g));
    }
    Ok(arf(q1) == arf(q2))
}

fn check_symplectic_basis(g: usize, basis: &[Gf2Vec]) -> Result<()> {
    if basis.len() != 2 * g || basis.iter().any(|v| v.dim != 2 * g) {
        return Err(Gf2Error::NotSymplecticBasis);
    }
    for a in 0..2 * g {
        for b in 0..2 * g {
            if pair_bits(basis[a].bits, basis[b].bits) != pair_bits(1 << a, 1 << b) {
                return Err(Gf2Error::NotSymplecticBasis);
            }
        }
    }
    Ok(())
}

/// Symplectic M with M(src_k) = dst_k preserving q.
pub fn change_of_coords(q: &QuadForm, src: &[Gf2Vec], dst: &[Gf2Vec]) -> Result<Gf2SympMap> {
    let g = q.g;
    check_symplectic_basis(g, src)?;
    check_symplectic_basis(g, dst)?;
    for (k, (s, d)) in src.iter().zip(dst).enumerate() {
        if spin_value(q, s)? != spin_value(q, d)? {
            return Err(Gf2Error::SpinMismatch(k));
        }
    }
    let n = 2 * g;
    let to_map = |basis: &[Gf2Vec]| {
        let mut rows = vec![0u64; n];
        for (c, v) in basis.iter().enumerate() {
            for (r, row) in rows.iter_mut().enumerate() {
                if v.coord(r) {
                    *row |= 1 << c;
                }
            }
        }
        Gf2SympMap { g, rows }
    };
    let s = to_map(src);
    let d = to_map(dst);
    let m = d.compose(&s.inverse());
    debug_assert!(preserves(&m, q).unwrap_or(false));
    Ok(m)
}

/// Order of the subgroup of Sp(2g, 2) generated by `gens`, by FIFO breadth-first search.
pub fn group_closure(gens: &[Gf2SympMap], cap: usize) -> Result<usize> {
    let Some(first) = gens.first() else {
        return Ok(1);
    };
    let g = first.g;
    for m in gens {
        if m.g != g {
            return Err(Gf2Error::GenusMismatch(g, m.g));
        }
        if !m.is_symplectic() {
            return Err(Gf2Error::NotSymplectic);
        }
    }
    let start = Gf2SympMap::identity(g);
    let mut seen: HashMap<Vec<u64>, ()> = HashMap::new();
    seen.insert(start.rows.clone(), ());
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = x.compose(s);
            if !seen.contains_key(&y.rows) {
                if seen.len() >= cap {
                    return Err(Gf2Error::CapExceeded(cap));
                }
                seen.insert(y.rows.clone(), ());
                queue.push_back(y);
            }
        }
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_basics() {
        let g = 2;
        assert!(pair(&Gf2Vec::alpha(g, 1), &Gf2Vec::beta(g, 1)).unwrap());
        assert!(!pair(&Gf2Vec::alpha(g, 1), &Gf2Vec::alpha(g, 2)).unwrap());
        assert!(pair(&Gf2Vec::alpha(1, 1), &Gf2Vec::alpha(2, 1)).is_err());
    }

    #[test]
    fn transvection_matrix() {
        let t = transvection_gf2(&Gf2Vec::alpha(2, 1)).unwrap();
        let b1 = Gf2Vec::beta(2, 1);
        assert_eq!(t.apply(&b1).unwrap(), b1.add(&Gf2Vec::alpha(2, 1)).unwrap());
        assert!(t.compose(&t).is_identity());
        assert!(t.is_symplectic());
    }

    #[test]
    fn inverse_is_inverse() {
        let a = transvection_gf2(&Gf2Vec::from_bits(3, 0b101101)).unwrap();
        let b = transvection_gf2(&Gf2Vec::from_bits(3, 0b010011)).unwrap();
        let m = a.compose(&b);
        assert!(m.compose(&m.inverse()).is_identity());
    }
}
