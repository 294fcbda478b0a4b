//! Dense matrices over an exact ring scalar.
//!
//! The same code serves integer symplectic matrices (`BigInt`), exponent
//! matrices for Smith normal form, and mod-2 reductions (`Gf2`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact commutative ring scalar.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf2(pub bool);

impl fmt::Debug for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Add for Gf2 {
    type Output = Gf2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, o: Gf2) -> Gf2 {
        Gf2(self.0 ^ o.0)
    }
}

impl Sub for Gf2 {
    type Output = Gf2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, o: Gf2) -> Gf2 {
        Gf2(self.0 ^ o.0)
    }
}

impl Mul for Gf2 {
    type Output = Gf2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: Gf2) -> Gf2 {
        Gf2(self.0 & o.0)
    }
}

impl Neg for Gf2 {
    type Output = Gf2;
    fn neg(self) -> Gf2 {
        self
    }
}

impl Zero for Gf2 {
    fn zero() -> Gf2 {
        Gf2(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for Gf2 {
    fn one() -> Gf2 {
        Gf2(true)
    }
}

impl From<&BigInt> for Gf2 {
    fn from(x: &BigInt) -> Gf2 {
        Gf2(x.bit(0))
    }
}

/// Row-major `rows x cols` matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type Gf2Matrix = Matrix<Gf2>;

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in apply");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        *v == S::one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, f: &S) {
        for c in 0..self.cols {
            let v = self.get(dst, c).clone() + f.clone() * self.get(src, c).clone();
            self.set(dst, c, v);
        }
    }

    /// col[dst] += f * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, f: &S) {
        for r in 0..self.rows {
            let v = self.get(r, dst).clone() + f.clone() * self.get(r, src).clone();
            self.set(r, dst, v);
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c).clone();
            self.set(r, c, v);
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -self.get(r, c).clone();
            self.set(r, c, v);
        }
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Standard symplectic Gram matrix for the basis alpha_1, beta_1, ..., alpha_g, beta_g.
pub fn symplectic_form<S: Scalar>(g: usize) -> Matrix<S> {
    let mut j = Matrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        j.set(2 * i, 2 * i + 1, S::one());
        j.set(2 * i + 1, 2 * i, -S::one());
    }
    j
}

/// `M^T J M == J`.
pub fn is_symplectic<S: Scalar>(m: &Matrix<S>) -> bool {
    if m.rows != m.cols || !m.rows.is_multiple_of(2) {
        return false;
    }
    let j = symplectic_form::<S>(m.rows / 2);
    m.transpose().mul(&j).mul(m) == j
}

/// Inverse of a symplectic matrix: `-J M^T J`.
pub fn symplectic_inverse<S: Scalar>(m: &Matrix<S>) -> Matrix<S> {
    let j = symplectic_form::<S>(m.rows / 2);
    let t = j.mul(&m.transpose()).mul(&j);
    t.map(|x| -x.clone())
}
