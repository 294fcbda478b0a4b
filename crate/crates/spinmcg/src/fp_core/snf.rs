//! Smith normal form over arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::IntMatrix;

/// Abelian group `Z^free_rank + sum Z/d_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SnfResult {
    /// Factors greater than one, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl SnfResult {
    pub fn factors_u64(&self) -> Vec<u64> {
        self.invariant_factors.iter().map(|d| u64::try_from(d).unwrap_or(u64::MAX)).collect()
    }

    /// Parses `Z+Z/2`, `Z^2+Z/4`, `0`, also with `⊕`.
    pub fn parse(s: &str) -> Option<SnfResult> {
        let s = s.replace('⊕', "+").replace(' ', "");
        let mut free = 0usize;
        let mut torsion = Vec::new();
        if s == "0" || s.is_empty() {
            return Some(SnfResult { invariant_factors: vec![], free_rank: 0 });
        }
        for part in s.split('+') {
            if part == "Z" {
                free += 1;
            } else if let Some(k) = part.strip_prefix("Z^") {
                free += k.parse::<usize>().ok()?;
            } else {
                let d: BigInt = part.strip_prefix("Z/")?.parse().ok()?;
                if d <= BigInt::one() {
                    return None;
                }
                torsion.push(d);
            }
        }
        Some(SnfResult { invariant_factors: normalize_torsion(torsion), free_rank: free })
    }
}

/// Rewrites a list of cyclic orders into invariant-factor form.
fn normalize_torsion(orders: Vec<BigInt>) -> Vec<BigInt> {
    let mut m = IntMatrix::zeros(orders.len(), orders.len());
    for (i, d) in orders.into_iter().enumerate() {
        m.set(i, i, d);
    }
    smith_normal_form(&m).result.invariant_factors
}

impl fmt::Display for SnfResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".into());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Full decomposition `D = U A V` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    pub result: SnfResult,
}

impl SnfDecomposition {
    /// Checks `U A V = D`, diagonality, divisibility and `|det U| = |det V| = 1`.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        if self.u.mul(a).mul(&self.v) != self.d {
            return false;
        }
        let d = &self.d;
        let k = d.rows().min(d.cols());
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                if r != c && !d.get(r, c).is_zero() {
                    return false;
                }
            }
        }
        for i in 1..k {
            let (p, q) = (d.get(i - 1, i - 1), d.get(i, i));
            if p.is_negative() || (p.is_zero() && !q.is_zero()) || (!p.is_zero() && !q.is_multiple_of(p)) {
                return false;
            }
        }
        det_abs_one(&self.u) && det_abs_one(&self.v)
    }
}

/// Fraction-free determinant check via Bareiss elimination.
fn det_abs_one(m: &IntMatrix) -> bool {
    let n = m.rows();
    let mut a = m.clone();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                Some(r) => a.swap_rows(k, r),
                None => return false,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    n == 0 || prev.abs().is_one()
}

/// Smallest-absolute-value nonzero entry in the trailing block, ties by (row, col).
fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..a.rows() {
        for c in t..a.cols() {
            let v = a.get(r, c);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((br, bc)) if a.get(br, bc).abs() <= v.abs() => {}
                _ => best = Some((r, c)),
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut rank = 0;
    for t in 0..m.min(n) {
        let Some((pr, pc)) = find_pivot(&d, t) else { break };
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);
        loop {
            let mut dirty = false;
            for r in t + 1..m {
                if d.get(r, t).is_zero() {
                    continue;
                }
                let q = d.get(r, t).div_floor(d.get(t, t));
                d.add_row_multiple(r, t, &-q.clone());
                u.add_row_multiple(r, t, &-q);
                if !d.get(r, t).is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..n {
                if d.get(t, c).is_zero() {
                    continue;
                }
                let q = d.get(t, c).div_floor(d.get(t, t));
                d.add_col_multiple(c, t, &-q.clone());
                v.add_col_multiple(c, t, &-q);
                if !d.get(t, c).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a smaller remainder appeared in the pivot row or column
                let mut best = (t, t);
                for r in t + 1..m {
                    let x = d.get(r, t);
                    if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                        best = (r, t);
                    }
                }
                for c in t + 1..n {
                    let x = d.get(t, c);
                    if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                        best = (t, c);
                    }
                }
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let p = d.get(t, t).clone();
            let bad = (t + 1..m).find(|&r| (t + 1..n).any(|c| !d.get(r, c).is_multiple_of(&p)));
            match bad {
                Some(r) => {
                    d.add_row_multiple(t, r, &BigInt::one());
                    u.add_row_multiple(t, r, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        rank += 1;
    }
    let invariant_factors = (0..rank).map(|i| d.get(i, i).clone()).filter(|x| !x.is_one()).collect();
    SnfDecomposition { u, v, d, result: SnfResult { invariant_factors, free_rank: n - rank } }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
    }

    #[test]
    fn genus_one_table() {
        let a = int(vec![vec![0, 0], vec![4, 4]]);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(s.result.to_string(), "Z+Z/4");
    }

    #[test]
    fn coprime_diagonal() {
        let a = int(vec![vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(s.result.to_string(), "Z/6");
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(s.result.free_rank, 3);
        assert!(s.result.invariant_factors.is_empty());
    }

    #[test]
    fn parse_display() {
        let r = SnfResult::parse("Z+Z/2+Z/2").unwrap();
        assert_eq!(r.to_string(), "Z+Z/2+Z/2");
        assert_eq!(SnfResult::parse("Z/3 ⊕ Z/2").unwrap().to_string(), "Z/6");
        assert_eq!(SnfResult::parse("0").unwrap().free_rank, 0);
        assert!(SnfResult::parse("Q").is_none());
    }
}
