//! The fake 3-chain relator, built from lantern substitutions.
//!
//! Curves live in a genus-3 subsurface with homology basis
//! `A1 = alpha1`, `B1 = alpha1 + beta1`, `A2 = alpha2`, `B2 = beta2`,
//! `A3 = beta3`, `B3 = -alpha3`, padded with zeros in higher genus.

use crate::fp_core::{Letter, Word};
use crate::gf2_spin::{spin_value, QuadForm};
use crate::sp_rep::{transvection_vec, CurveClass, CurveName, GeneratorTable, SpMatrix};

use super::PresError;

#[derive(Clone, Debug)]
pub struct FakeChain {
    pub genus: usize,
    /// Letters of `word`, indexed by position.
    pub curves: Vec<CurveClass>,
    pub word: Word,
    /// `(relation, lanterns it consists of, times used)`.
    pub lantern_ledger: Vec<(String, usize, usize)>,
}

impl FakeChain {
    pub fn curve_names(&self) -> Vec<String> {
        self.curves
            .iter()
            .map(|c| match &c.name {
                CurveName::Named(n) => n.clone(),
                other => format!("{other:?}"),
            })
            .collect()
    }

    pub fn table(&self) -> GeneratorTable {
        let mut t = GeneratorTable::new(self.genus);
        for (n, c) in self.curve_names().iter().zip(&self.curves) {
            t.insert(n, transvection_vec(&c.vec));
        }
        t
    }

    pub fn total_lanterns(&self) -> usize {
        self.lantern_ledger.iter().map(|(_, n, k)| n * k).sum()
    }

    /// Whether every letter is an admissible twist for the standard even form.
    pub fn all_admissible(&self) -> bool {
        let q = QuadForm::standard_even(self.genus);
        self.curves.iter().all(|c| spin_value(&q, &c.mod2()).map(|v| !v).unwrap_or(false))
    }
}

struct Basis {
    g: usize,
}

impl Basis {
    fn vec(&self, terms: &[(i64, usize)]) -> Vec<i64> {
        // 0 = A1, 1 = B1, 2 = A2, 3 = B2, 4 = A3, 5 = B3
        let mut v = vec![0i64; 2 * self.g];
        for &(c, e) in terms {
            let (slot, coeffs): (usize, [i64; 2]) = match e {
                0 => (0, [1, 0]),
                1 => (0, [1, 1]),
                2 => (1, [1, 0]),
                3 => (1, [0, 1]),
                4 => (2, [0, 1]),
                _ => (2, [-1, 0]),
            };
            v[2 * slot] += c * coeffs[0];
            v[2 * slot + 1] += c * coeffs[1];
        }
        v
    }
}

fn apply(m: &SpMatrix, v: &[i64]) -> Vec<i64> {
    use num_traits::ToPrimitive;
    let big: Vec<num_bigint::BigInt> = v.iter().map(|&x| x.into()).collect();
    m.apply(&big).iter().map(|x| x.to_i64().unwrap_or(0)).collect()
}

/// Curves of the construction, by name.
pub fn fake_chain_curves(g: usize) -> Result<Vec<(String, Vec<i64>)>, PresError> {
    if g < 3 {
        return Err(PresError::GenusOutOfRange { what: "fake 3-chain".into(), g });
    }
    let b = Basis { g };
    let gamma1 = b.vec(&[(1, 0)]);
    let gamma2 = b.vec(&[(1, 1)]);
    let gamma3 = b.vec(&[(1, 0), (-1, 2)]);
    let delta = b.vec(&[(1, 2)]);
    let eps1 = b.vec(&[(1, 2), (-1, 4)]);
    let eps2 = b.vec(&[(1, 4)]);
    let y = b.vec(&[(1, 0), (-1, 4)]);
    let z = b.vec(&[(1, 0), (-1, 2), (1, 4)]);
    let y3 = b.vec(&[(1, 0), (1, 2), (-1, 4)]);
    let g12 = apply(&transvection_vec(&gamma1), &gamma2);
    let g32 = apply(&transvection_vec(&gamma3), &gamma2);
    Ok(vec![
        ("gamma1".into(), gamma1),
        ("gamma2".into(), gamma2),
        ("gamma3".into(), gamma3),
        ("delta1".into(), delta.clone()),
        ("delta2".into(), delta),
        ("eps1".into(), eps1),
        ("eps2".into(), eps2.clone()),
        ("eps3".into(), eps2.clone()),
        ("y1".into(), y.clone()),
        ("y2".into(), y),
        ("z1".into(), z.clone()),
        ("z2".into(), z),
        ("y3".into(), y3),
        ("z3".into(), eps2),
        ("g12".into(), g12),
        ("g32".into(), g32),
    ])
}

/// Word over named curves, `-` marking inverse letters.
fn named_word(names: &[&str], spec: &str) -> Word {
    spec.split_whitespace()
        .map(|tok| {
            let (inv, n) = match tok.strip_suffix('-') {
                Some(n) => (true, n),
                None => (false, tok),
            };
            let k = names.iter().position(|x| *x == n).unwrap_or_else(|| panic!("unknown curve {n}"));
            if inv {
                Letter::neg(k)
            } else {
                Letter::pos(k)
            }
        })
        .collect()
}

const F_CURVES: [&str; 11] = ["eps1", "eps2", "eps3", "y1", "y2", "z1", "z2", "y3", "z3", "g12", "g32"];

/// `F = e1^-1 e2^-1 y1 z1 (g12 y2 z2 e1^-1 e3^-1 y2^-1 e1^-1 y3 z3 g32)^2 e1^-1 e3^-1 y2 z2`.
pub fn fake_3chain_relator(g: usize) -> Result<FakeChain, PresError> {
    let all = fake_chain_curves(g)?;
    let curves = F_CURVES
        .iter()
        .map(|n| {
            let v = all.iter().find(|(m, _)| m == n).map(|(_, v)| v.clone()).unwrap_or_default();
            CurveClass::from_vec(n, v)
        })
        .collect();
    let inner = named_word(&F_CURVES, "g12 y2 z2 eps1- eps3- y2- eps1- y3 z3 g32");
    let word = named_word(&F_CURVES, "eps1- eps2- y1 z1")
        .concat(&inner.pow(2))
        .concat(&named_word(&F_CURVES, "eps1- eps3- y2 z2"));
    Ok(FakeChain {
        genus: g,
        curves,
        word,
        lantern_ledger: vec![("L1".into(), 1, 1), ("L2".into(), 1, 1), ("A".into(), 2, 2)],
    })
}

/// The lantern relators used in the construction, as words over the curves
/// returned by [`fake_chain_curves`].
pub fn fake_chain_lanterns(g: usize) -> Result<Vec<(String, Word)>, PresError> {
    let all = fake_chain_curves(g)?;
    let names: Vec<&str> = all.iter().map(|(n, _)| n.as_str()).collect();
    Ok(vec![
        ("L1".into(), named_word(&names, "y1 z1 delta1 gamma1- gamma3- eps1- eps2-")),
        ("L2".into(), named_word(&names, "y2 z2 delta2 gamma1- gamma3- eps1- eps3-")),
        ("L3".into(), named_word(&names, "y3 z3 gamma3 gamma1- delta2- y1- eps1-")),
        ("A".into(), named_word(&names, "eps3 eps1 z2- y2- gamma1 gamma1 z3- y3- eps1 y2")),
    ])
}
