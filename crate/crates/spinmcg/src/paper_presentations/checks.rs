//! Relator, form and generation checks shared by the command line and the tests.

use std::fmt;

use rayon::prelude::*;

use crate::fp_core::{Evaluator, FpError, Presentation, Relator, RelatorStatus, Rep};
use crate::gf2_spin::{even_form_count, group_closure, QuadForm};
use crate::sp_rep::{preserves_form, Gf2Rep, SpRep};

use super::{generator_table, GeneratingSet, PresError};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Not evaluated, e.g. the relator involves an opaque symbol.
    Skipped,
    /// Flagged relator; evaluated for the record but never counted.
    Flagged,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
            CheckStatus::Flagged => "flagged",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub label: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl CheckOutcome {
    pub fn new(label: impl Into<String>, status: CheckStatus, detail: impl Into<String>) -> Self {
        CheckOutcome { label: label.into(), status, detail: detail.into() }
    }

    pub fn from_bool(label: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        CheckOutcome::new(label, status, detail)
    }
}

/// True iff no outcome failed.
pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.status != CheckStatus::Fail)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RepKind {
    Sp,
    Gf2,
}

impl std::str::FromStr for RepKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sp" => Ok(RepKind::Sp),
            "gf2" => Ok(RepKind::Gf2),
            _ => Err(format!("unknown representation `{s}` (expected sp or gf2)")),
        }
    }
}

fn outcome<R: Rep + Sync>(ev: &mut Evaluator<'_, R>, r: &Relator) -> CheckOutcome {
    match (ev.is_relator(&r.expr), &r.status) {
        (Err(FpError::NoImage(_)), RelatorStatus::Active) => {
            CheckOutcome::new(&r.label, CheckStatus::Skipped, "involves a generator without image")
        }
        (Err(e), _) => CheckOutcome::new(&r.label, CheckStatus::Fail, e.to_string()),
        (Ok(true), RelatorStatus::Active) => CheckOutcome::new(&r.label, CheckStatus::Pass, ""),
        (Ok(false), RelatorStatus::Active) => CheckOutcome::new(&r.label, CheckStatus::Fail, "not the identity"),
        (Ok(ok), RelatorStatus::Flagged(reason)) => {
            let holds = if ok { "holds" } else { "does not hold" };
            CheckOutcome::new(&r.label, CheckStatus::Flagged, format!("{reason}; {holds}"))
        }
    }
}

fn run<R: Rep + Sync>(rep: &R, p: &Presentation, parallel: bool) -> Vec<CheckOutcome> {
    if parallel {
        p.relators.par_iter().map_init(|| Evaluator::new(rep), |ev, r| outcome(ev, r)).collect()
    } else {
        let mut ev = Evaluator::new(rep);
        p.relators.iter().map(|r| outcome(&mut ev, r)).collect()
    }
}

/// Evaluates every relator of `p` (genus `g`) in the chosen representation, in relator order.
pub fn check_relators(p: &Presentation, g: usize, kind: RepKind, parallel: bool) -> Vec<CheckOutcome> {
    let table = generator_table(p, g);
    let names = p.gen_names();
    match kind {
        RepKind::Sp => run(&SpRep::from_table(&names, &table), p, parallel),
        RepKind::Gf2 => run(&Gf2Rep::from_table(&names, &table), p, parallel),
    }
}

/// Whether each generator image preserves the standard even form; opaque symbols are skipped.
pub fn check_generator_forms(p: &Presentation, g: usize) -> Vec<CheckOutcome> {
    let table = generator_table(p, g);
    let q = QuadForm::standard_even(g);
    p.gen_names()
        .into_iter()
        .map(|n| match table.get(&n) {
            Some(m) => CheckOutcome::from_bool(format!("form:{n}"), preserves_form(m, &q), ""),
            None => CheckOutcome::new(format!("form:{n}"), CheckStatus::Skipped, "no image"),
        })
        .collect()
}

/// Order of Sp(2g, 2).
pub fn sp2g_f2_order(g: usize) -> u128 {
    let mut n: u128 = 1 << (g * g);
    for i in 1..=g {
        n *= (1u128 << (2 * i)) - 1;
    }
    n
}

/// Order of the stabilizer of an even form in Sp(2g, 2).
pub fn even_stabilizer_order(g: usize) -> u128 {
    sp2g_f2_order(g) / even_form_count(g) as u128
}

/// Size of the mod-2 image generated by `set`.
pub fn closure_size(set: &GeneratingSet, cap: usize) -> Result<usize, PresError> {
    let images = set.mod2_images()?;
    group_closure(&images, cap).map_err(|e| PresError::Check(e.to_string()))
}
