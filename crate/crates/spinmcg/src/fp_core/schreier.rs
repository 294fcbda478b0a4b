//! Reidemeister–Schreier rewriting for finite-index subgroups.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use super::expr::Expr;
use super::presentation::{GenKind, Presentation};
use super::word::{free_reduce, GenId, Letter, Word};
use super::FpError;

/// Right action of the generators on cosets `0..n`, coset `0` being the subgroup.
#[derive(Clone, Debug)]
pub struct CosetAction {
    pub n: usize,
    pub gen_names: Vec<String>,
    /// `perm[g][c]` is the coset of `H u_c g`.
    pub perm: Vec<Vec<usize>>,
}

impl CosetAction {
    pub fn new(n: usize, gen_names: Vec<String>, perm: Vec<Vec<usize>>) -> Result<Self, FpError> {
        for (g, p) in perm.iter().enumerate() {
            let mut seen = vec![false; n];
            if p.len() != n {
                return Err(FpError::NotPermutation(g));
            }
            for &c in p {
                if c >= n || seen[c] {
                    return Err(FpError::NotPermutation(g));
                }
                seen[c] = true;
            }
        }
        Ok(CosetAction { n, gen_names, perm })
    }

    pub fn apply(&self, c: usize, l: Letter) -> usize {
        if l.inv {
            self.perm[l.gen].iter().position(|&x| x == c).unwrap_or(c)
        } else {
            self.perm[l.gen][c]
        }
    }

    pub fn apply_word(&self, c: usize, w: &Word) -> usize {
        w.letters().iter().fold(c, |acc, &l| self.apply(acc, l))
    }

    pub fn is_involution(&self, g: GenId) -> bool {
        (0..self.n).all(|c| self.perm[g][self.perm[g][c]] == c)
    }

    /// Cosets reachable from coset 0.
    pub fn orbit_of_base(&self) -> usize {
        self.bfs_transversal().iter().filter(|t| t.is_some()).count()
    }

    /// Prefix-closed transversal found by breadth-first search (positive
    /// letters first, generator order), `None` for unreachable cosets.
    pub fn bfs_transversal(&self) -> Vec<Option<Word>> {
        let mut reps: Vec<Option<Word>> = vec![None; self.n];
        reps[0] = Some(Word::empty());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            let base = reps[c].clone().unwrap_or_default();
            for inv in [false, true] {
                for g in 0..self.perm.len() {
                    let l = Letter { gen: g, inv };
                    let d = self.apply(c, l);
                    if reps[d].is_none() {
                        reps[d] = Some(base.concat(&Word(vec![l])));
                        queue.push_back(d);
                    }
                }
            }
        }
        reps
    }
}

/// Names the Schreier generator for coset `c` and generator `g`.
fn schreier_name(p: &Presentation, g: GenId, c: usize) -> String {
    format!("{}_c{}", p.gens[g].name, c)
}

/// Presentation of the subgroup fixing coset 0.
///
/// Schreier generators `u_c x u_{cx}^-1` that freely reduce to the identity
/// are dropped; each relator `r` contributes `u_c r u_c^-1` rewritten for
/// every coset `c`.
pub fn schreier_subgroup_presentation(
    p: &Presentation,
    action: &CosetAction,
    transversal: &[Word],
) -> Result<Presentation, FpError> {
    if transversal.len() != action.n || action.perm.len() != p.gens.len() {
        return Err(FpError::InconsistentAction("sizes do not match".into()));
    }
    for (c, u) in transversal.iter().enumerate() {
        if action.apply_word(0, u) != c {
            return Err(FpError::InconsistentAction(format!("transversal element {c} lands elsewhere")));
        }
    }
    let words = p.relator_words(super::tietze::TIETZE_MAX_LEN)?;
    for (r, w) in p.relators.iter().zip(&words) {
        if let Some(c) = (0..action.n).find(|&c| action.apply_word(c, w) != c) {
            return Err(FpError::InconsistentAction(format!("relator {} moves coset {c}", r.label)));
        }
    }
    let mut out = Presentation::new(format!("{} subgroup", p.name));
    let mut index: HashMap<(GenId, usize), GenId> = HashMap::new();
    for g in 0..p.gens.len() {
        for c in 0..action.n {
            let d = action.perm[g][c];
            let w = transversal[c].concat(&Word::gen(g)).concat(&transversal[d].inverse());
            if !free_reduce(&w).is_empty() {
                let kind = p.gens[g].kind;
                index.insert((g, c), out.add_gen(&schreier_name(p, g, c), kind));
            }
        }
    }
    let rewritten: Vec<(String, Word)> = p
        .relators
        .par_iter()
        .zip(words.par_iter())
        .flat_map_iter(|(r, w)| {
            (0..action.n).map(|c| (format!("{}@c{}", r.label, c), rewrite(action, &index, c, w))).collect::<Vec<_>>()
        })
        .collect();
    for (label, w) in rewritten {
        out.add_relator(&label, Expr::from_word(&w));
    }
    Ok(out)
}

/// Reidemeister rewriting of a word read from coset `c`.
fn rewrite(action: &CosetAction, index: &HashMap<(GenId, usize), GenId>, start: usize, w: &Word) -> Word {
    let mut c = start;
    let mut out = Vec::new();
    for &l in w.letters() {
        if l.inv {
            let prev = action.apply(c, l);
            if let Some(&s) = index.get(&(l.gen, prev)) {
                out.push(Letter::neg(s));
            }
            c = prev;
        } else {
            if let Some(&s) = index.get(&(l.gen, c)) {
                out.push(Letter::pos(s));
            }
            c = action.perm[l.gen][c];
        }
    }
    free_reduce(&Word(out))
}

/// Action of the stabilizer generators `a_i, s, t_i, d[i,j]` on subsets of
/// `{1..g}`, encoded as bitmasks (bit `i-1` for `i`): `a_i` toggles `i`,
/// `t_i` exchanges the membership of `i` and `i+1`, `s` and every `d[i,j]`
/// act trivially.
pub fn spin_coset_action(g: usize) -> CosetAction {
    let n = 1usize << g;
    let mut names = Vec::new();
    let mut perm = Vec::new();
    for i in 0..g {
        names.push(format!("a{}", i + 1));
        perm.push((0..n).map(|m| m ^ (1 << i)).collect());
    }
    names.push("s".into());
    perm.push((0..n).collect());
    for i in 0..g.saturating_sub(1) {
        names.push(format!("t{}", i + 1));
        perm.push(
            (0..n)
                .map(|m| {
                    let (x, y) = ((m >> i) & 1, (m >> (i + 1)) & 1);
                    if x == y {
                        m
                    } else {
                        m ^ (0b11 << i)
                    }
                })
                .collect(),
        );
    }
    let idx: Vec<i64> = (-(g as i64)..=g as i64).filter(|&k| k != 0).collect();
    for (x, &i) in idx.iter().enumerate() {
        for &j in &idx[x + 1..] {
            names.push(format!("d[{i},{j}]"));
            perm.push((0..n).collect());
        }
    }
    CosetAction { n, gen_names: names, perm }
}

/// `u_J`: the product of the `a_j`, `j` in `J`, in increasing order.
pub fn spin_transversal(g: usize) -> Vec<Word> {
    (0..1usize << g).map(|m| (0..g).filter(|&i| (m >> i) & 1 == 1).map(Letter::pos).collect()).collect()
}

/// Free presentation on the given generator names.
pub fn free_presentation(names: &[String]) -> Presentation {
    let mut p = Presentation::new("free");
    for n in names {
        p.add_gen(n, GenKind::Free);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_core::abelian::abelianize;

    #[test]
    fn even_subgroup_of_z() {
        let p = Presentation::from_words("Z", &["x"], &[]);
        let act = CosetAction::new(2, vec!["x".into()], vec![vec![1, 0]]).unwrap();
        let tr: Vec<Word> = act.bfs_transversal().into_iter().map(Option::unwrap).collect();
        let h = schreier_subgroup_presentation(&p, &act, &tr).unwrap();
        assert_eq!(h.gens.len(), 1);
        assert_eq!(abelianize(&h).unwrap().to_string(), "Z");
    }

    #[test]
    fn kernel_in_cyclic_six() {
        let p = Presentation::from_words("Z6", &["x"], &[("r", Word::power_of(0, 6))]);
        let act = CosetAction::new(2, vec!["x".into()], vec![vec![1, 0]]).unwrap();
        let tr: Vec<Word> = act.bfs_transversal().into_iter().map(Option::unwrap).collect();
        let h = schreier_subgroup_presentation(&p, &act, &tr).unwrap();
        assert_eq!(abelianize(&h).unwrap().to_string(), "Z/3");
    }

    #[test]
    fn inconsistent_action_rejected() {
        let p = Presentation::from_words("Z3", &["x"], &[("r", Word::power_of(0, 3))]);
        let act = CosetAction::new(2, vec!["x".into()], vec![vec![1, 0]]).unwrap();
        let tr = vec![Word::empty(), Word::gen(0)];
        assert!(schreier_subgroup_presentation(&p, &act, &tr).is_err());
    }

    #[test]
    fn spin_action_basics() {
        let act = spin_coset_action(3);
        assert_eq!(act.perm[0][0], 0b001);
        assert_eq!(act.perm[4][0b001], 0b010);
        assert_eq!(act.orbit_of_base(), 8);
        let tr = spin_transversal(3);
        assert!(tr.iter().enumerate().all(|(c, u)| act.apply_word(0, u) == c));
    }
}
