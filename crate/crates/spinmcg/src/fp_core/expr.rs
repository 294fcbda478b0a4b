//! Shared expression DAG for long relators.
//!
//! Shorthand expansions nest conjugations many levels deep, so flattened
//! words grow geometrically with the genus. Relators are kept as a DAG of
//! reference-counted nodes and every representation evaluates each shared
//! node once.

use std::collections::HashMap;
use std::sync::Arc;

use super::word::{GenId, Letter, Word};
use super::FpError;

#[derive(Debug)]
pub enum Node {
    Id,
    Gen(GenId),
    Inv(Expr),
    Seq(Vec<Expr>),
    Pow(Expr, i64),
}

#[derive(Clone, Debug)]
pub struct Expr(Arc<Node>);

impl Expr {
    pub fn node(&self) -> &Node {
        &self.0
    }

    fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn id() -> Expr {
        Expr(Arc::new(Node::Id))
    }

    pub fn gen(g: GenId) -> Expr {
        Expr(Arc::new(Node::Gen(g)))
    }

    pub fn inv(&self) -> Expr {
        match self.node() {
            Node::Id => self.clone(),
            Node::Inv(e) => e.clone(),
            _ => Expr(Arc::new(Node::Inv(self.clone()))),
        }
    }

    /// Product in the given order; identities are dropped.
    pub fn seq(parts: impl IntoIterator<Item = Expr>) -> Expr {
        let v: Vec<Expr> = parts.into_iter().filter(|e| !matches!(e.node(), Node::Id)).collect();
        match v.len() {
            0 => Expr::id(),
            1 => v.into_iter().next().unwrap_or_else(Expr::id),
            _ => Expr(Arc::new(Node::Seq(v))),
        }
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        Expr::seq([self.clone(), other.clone()])
    }

    pub fn pow(&self, k: i64) -> Expr {
        match (k, self.node()) {
            (0, _) | (_, Node::Id) => Expr::id(),
            (1, _) => self.clone(),
            (-1, _) => self.inv(),
            _ => Expr(Arc::new(Node::Pow(self.clone(), k))),
        }
    }

    /// `a * b = a b a^-1`.
    pub fn conj(a: &Expr, b: &Expr) -> Expr {
        if matches!(a.node(), Node::Id) {
            return b.clone();
        }
        Expr::seq([a.clone(), b.clone(), a.inv()])
    }

    pub fn comm(a: &Expr, b: &Expr) -> Expr {
        Expr::seq([a.clone(), b.clone(), a.inv(), b.inv()])
    }

    /// Relator `lhs rhs^-1` for the relation `lhs = rhs`.
    pub fn eq(lhs: &Expr, rhs: &Expr) -> Expr {
        lhs.mul(&rhs.inv())
    }

    pub fn from_word(w: &Word) -> Expr {
        Expr::seq(w.letters().iter().map(|l| if l.inv { Expr::gen(l.gen).inv() } else { Expr::gen(l.gen) }))
    }

    /// Number of letters of the flattened word, saturating.
    pub fn letter_count(&self) -> u128 {
        let mut memo = HashMap::new();
        count(self, &mut memo)
    }

    /// Set of generators that occur.
    pub fn generators(&self) -> Vec<GenId> {
        let mut seen = HashMap::new();
        let mut gens = Vec::new();
        collect_gens(self, &mut seen, &mut gens);
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    /// Flattens to a word; fails if it would exceed `max_len` letters.
    pub fn to_word(&self, max_len: u128) -> Result<Word, FpError> {
        let n = self.letter_count();
        if n > max_len {
            return Err(FpError::TooLong(n));
        }
        let mut out = Vec::with_capacity(n as usize);
        flatten(self, false, &mut out);
        Ok(Word(out))
    }

    /// Flattened and freely reduced.
    pub fn to_reduced_word(&self, max_len: u128) -> Result<Word, FpError> {
        Ok(self.to_word(max_len)?.free_reduce())
    }

    /// Replaces generator indices.
    pub fn reindex(&self, f: &dyn Fn(GenId) -> GenId) -> Expr {
        let mut memo = HashMap::new();
        reindex(self, f, &mut memo)
    }
}

fn count(e: &Expr, memo: &mut HashMap<usize, u128>) -> u128 {
    if let Some(&c) = memo.get(&e.key()) {
        return c;
    }
    let c = match e.node() {
        Node::Id => 0,
        Node::Gen(_) => 1,
        Node::Inv(x) => count(x, memo),
        Node::Seq(v) => v.iter().fold(0u128, |acc, x| acc.saturating_add(count(x, memo))),
        Node::Pow(x, k) => count(x, memo).saturating_mul(u128::from(k.unsigned_abs())),
    };
    memo.insert(e.key(), c);
    c
}

fn collect_gens(e: &Expr, seen: &mut HashMap<usize, ()>, out: &mut Vec<GenId>) {
    if seen.insert(e.key(), ()).is_some() {
        return;
    }
    match e.node() {
        Node::Id => {}
        Node::Gen(g) => out.push(*g),
        Node::Inv(x) | Node::Pow(x, _) => collect_gens(x, seen, out),
        Node::Seq(v) => v.iter().for_each(|x| collect_gens(x, seen, out)),
    }
}

fn flatten(e: &Expr, inv: bool, out: &mut Vec<Letter>) {
    match e.node() {
        Node::Id => {}
        Node::Gen(g) => out.push(Letter { gen: *g, inv }),
        Node::Inv(x) => flatten(x, !inv, out),
        Node::Seq(v) => {
            if inv {
                v.iter().rev().for_each(|x| flatten(x, true, out));
            } else {
                v.iter().for_each(|x| flatten(x, false, out));
            }
        }
        Node::Pow(x, k) => {
            let flip = inv ^ (*k < 0);
            for _ in 0..k.unsigned_abs() {
                flatten(x, flip, out);
            }
        }
    }
}

fn reindex(e: &Expr, f: &dyn Fn(GenId) -> GenId, memo: &mut HashMap<usize, Expr>) -> Expr {
    if let Some(x) = memo.get(&e.key()) {
        return x.clone();
    }
    let r = match e.node() {
        Node::Id => Expr::id(),
        Node::Gen(g) => Expr::gen(f(*g)),
        Node::Inv(x) => reindex(x, f, memo).inv(),
        Node::Seq(v) => Expr::seq(v.iter().map(|x| reindex(x, f, memo)).collect::<Vec<_>>()),
        Node::Pow(x, k) => reindex(x, f, memo).pow(*k),
    };
    memo.insert(e.key(), r.clone());
    r
}

/// A group in which words can be evaluated.
pub trait Rep {
    type Elem: Clone;

    fn identity(&self) -> Self::Elem;

    /// Image of a generator, or `None` if the representation has none.
    fn generator(&self, g: GenId) -> Option<Self::Elem>;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn inverse(&self, a: &Self::Elem) -> Self::Elem;

    fn is_identity(&self, a: &Self::Elem) -> bool;

    fn pow(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let mut base = if k < 0 { self.inverse(a) } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// Memoizing evaluator; reuse one instance across relators that share subexpressions.
pub struct Evaluator<'r, R: Rep> {
    rep: &'r R,
    memo: HashMap<usize, (Expr, R::Elem)>,
}

impl<'r, R: Rep> Evaluator<'r, R> {
    pub fn new(rep: &'r R) -> Self {
        Evaluator { rep, memo: HashMap::new() }
    }

    pub fn rep(&self) -> &R {
        self.rep
    }

    pub fn eval(&mut self, e: &Expr) -> Result<R::Elem, FpError> {
        if let Some((_, v)) = self.memo.get(&e.key()) {
            return Ok(v.clone());
        }
        let v = match e.node() {
            Node::Id => self.rep.identity(),
            Node::Gen(g) => self.rep.generator(*g).ok_or(FpError::NoImage(*g))?,
            Node::Inv(x) => {
                let y = self.eval(x)?;
                self.rep.inverse(&y)
            }
            Node::Seq(v) => {
                let mut acc: Option<R::Elem> = None;
                for x in v {
                    let y = self.eval(x)?;
                    acc = Some(match acc {
                        None => y,
                        Some(a) => self.rep.mul(&a, &y),
                    });
                }
                acc.unwrap_or_else(|| self.rep.identity())
            }
            Node::Pow(x, k) => {
                let y = self.eval(x)?;
                self.rep.pow(&y, *k)
            }
        };
        self.memo.insert(e.key(), (e.clone(), v.clone()));
        Ok(v)
    }

    pub fn is_relator(&mut self, e: &Expr) -> Result<bool, FpError> {
        let v = self.eval(e)?;
        Ok(self.rep.is_identity(&v))
    }
}

/// Free abelian image: exponent sums over `n` generators.
pub struct ExponentRep {
    pub n: usize,
}

impl Rep for ExponentRep {
    type Elem = Vec<i64>;

    fn identity(&self) -> Vec<i64> {
        vec![0; self.n]
    }

    fn generator(&self, g: GenId) -> Option<Vec<i64>> {
        (g < self.n).then(|| {
            let mut v = vec![0; self.n];
            v[g] = 1;
            v
        })
    }

    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn inverse(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }

    fn is_identity(&self, a: &Vec<i64>) -> bool {
        a.iter().all(|&x| x == 0)
    }

    fn pow(&self, a: &Vec<i64>, k: i64) -> Vec<i64> {
        a.iter().map(|x| x * k).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_respects_inverse_and_power() {
        let a = Expr::gen(0);
        let b = Expr::gen(1);
        let e = Expr::conj(&a, &b.pow(2)).inv();
        let w = e.to_word(100).unwrap();
        assert_eq!(w, Word(vec![Letter::pos(0), Letter::neg(1), Letter::neg(1), Letter::neg(0)]));
        assert_eq!(e.letter_count(), 4);
    }

    #[test]
    fn exponent_rep_matches_word_sums() {
        let a = Expr::gen(0);
        let b = Expr::gen(1);
        let e = Expr::seq([Expr::comm(&a, &b), a.pow(3), b.inv()]);
        let rep = ExponentRep { n: 2 };
        let mut ev = Evaluator::new(&rep);
        assert_eq!(ev.eval(&e).unwrap(), e.to_word(100).unwrap().exponent_sums(2));
    }

    #[test]
    fn too_long_is_reported() {
        let e = Expr::gen(0).pow(1 << 40);
        assert!(matches!(e.to_word(1000), Err(FpError::TooLong(_))));
    }
}
