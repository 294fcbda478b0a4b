//! Abelianization through exponent-sum matrices.

use std::collections::HashSet;

use num_bigint::BigInt;

use super::expr::{Evaluator, ExponentRep};
use super::presentation::{GenKind, Presentation};
use super::snf::{smith_normal_form, SnfDecomposition, SnfResult};
use super::FpError;
use crate::linalg::IntMatrix;

/// Exponent sums of the active relators over the non-opaque generators.
///
/// Opaque symbols must cancel in every row; a relator with nonzero net
/// exponent in one is an error because its abelian image is unknown.
pub fn abelianization_matrix(p: &Presentation) -> Result<IntMatrix, FpError> {
    let rep = ExponentRep { n: p.gens.len() };
    let mut ev = Evaluator::new(&rep);
    let cols: Vec<usize> = (0..p.gens.len()).filter(|&g| p.gens[g].kind == GenKind::Free).collect();
    let mut rows = Vec::new();
    for r in p.active() {
        let sums = ev.eval(&r.expr)?;
        for (g, gen) in p.gens.iter().enumerate() {
            if gen.kind == GenKind::Opaque && sums[g] != 0 {
                return Err(FpError::OpaqueExponent { relator: r.label.clone(), gen: gen.name.clone() });
            }
        }
        rows.push(cols.iter().map(|&c| BigInt::from(sums[c])).collect::<Vec<_>>());
    }
    if rows.is_empty() {
        return Ok(IntMatrix::zeros(0, cols.len()));
    }
    Ok(IntMatrix::from_rows(rows))
}

/// Drops zero rows and repeated rows (up to sign); the cokernel is unchanged.
pub fn compress_rows(m: &IntMatrix) -> IntMatrix {
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let mut keep = Vec::new();
    for r in 0..m.rows() {
        let row = m.row(r).to_vec();
        if row.iter().all(|x| x == &BigInt::from(0)) {
            continue;
        }
        let neg: Vec<BigInt> = row.iter().map(|x| -x).collect();
        if seen.contains(&row) || seen.contains(&neg) {
            continue;
        }
        seen.insert(row.clone());
        keep.push(row);
    }
    if keep.is_empty() {
        return IntMatrix::zeros(0, m.cols());
    }
    IntMatrix::from_rows(keep)
}

/// Smith normal form of the compressed abelianization matrix, with its certificate.
pub fn abelianize_with_certificate(p: &Presentation) -> Result<(IntMatrix, SnfDecomposition), FpError> {
    let m = compress_rows(&abelianization_matrix(p)?);
    let snf = smith_normal_form(&m);
    Ok((m, snf))
}

pub fn abelianize(p: &Presentation) -> Result<SnfResult, FpError> {
    Ok(abelianize_with_certificate(p)?.1.result)
}
