//! Free words over indexed generators.

use std::fmt;

pub type GenId = usize;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub gen: GenId,
    pub inv: bool,
}

impl Letter {
    pub fn pos(gen: GenId) -> Self {
        Letter { gen, inv: false }
    }

    pub fn neg(gen: GenId) -> Self {
        Letter { gen, inv: true }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    pub fn exponent(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

/// A word read left to right; the leftmost letter is applied last.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: GenId) -> Self {
        Word(vec![Letter::pos(g)])
    }

    /// `g^e` as a word of length `|e|`.
    pub fn power_of(g: GenId, e: i64) -> Self {
        let l = if e < 0 { Letter::neg(g) } else { Letter::pos(g) };
        Word(vec![l; e.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// `a * b = a b a^-1`.
    pub fn conj(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse())
    }

    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    pub fn free_reduce(&self) -> Word {
        free_reduce(self)
    }

    /// Cyclic reduction of a freely reduced word.
    pub fn cyclic_reduce(&self) -> Word {
        let w = free_reduce(self);
        let v = &w.0;
        let (mut i, mut j) = (0, v.len());
        while j > i + 1 && v[i] == v[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word(v[i..j].to_vec())
    }

    /// Net exponent of each generator in `0..n`.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut out = vec![0; n];
        for l in &self.0 {
            out[l.gen] += l.exponent();
        }
        out
    }

    pub fn mentions(&self, g: GenId) -> bool {
        self.0.iter().any(|l| l.gen == g)
    }

    /// Replaces every occurrence of `g` by `w` (and `g^-1` by `w^-1`).
    pub fn substitute(&self, g: GenId, w: &Word) -> Word {
        let wi = w.inverse();
        let mut v = Vec::with_capacity(self.len());
        for l in &self.0 {
            if l.gen == g {
                v.extend_from_slice(if l.inv { &wi.0 } else { &w.0 });
            } else {
                v.push(*l);
            }
        }
        Word(v)
    }

    /// Applies `f` to every generator index.
    pub fn reindex(&self, f: impl Fn(GenId) -> GenId) -> Word {
        Word(self.0.iter().map(|l| Letter { gen: f(l.gen), inv: l.inv }).collect())
    }

    /// Run-length groups `(gen, exponent)` of consecutive equal generators.
    pub fn syllables(&self) -> Vec<(GenId, i64)> {
        let mut out: Vec<(GenId, i64)> = Vec::new();
        for l in &self.0 {
            match out.last_mut() {
                Some((g, e)) if *g == l.gen && (*e > 0) == !l.inv => *e += l.exponent(),
                _ => out.push((l.gen, l.exponent())),
            }
        }
        out
    }
}

/// Cancels adjacent inverse pairs with a stack; the result has none left.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .syllables()
            .iter()
            .map(|(g, e)| if *e == 1 { format!("x{g}") } else { format!("x{g}^{e}") })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[i64]) -> Word {
        s.iter().map(|&x| if x > 0 { Letter::pos(x as usize - 1) } else { Letter::neg((-x) as usize - 1) }).collect()
    }

    #[test]
    fn reduce_examples() {
        assert!(free_reduce(&w(&[1, -1])).is_empty());
        assert_eq!(free_reduce(&w(&[1, 2, -2, 1])), w(&[1, 1]));
        assert_eq!(free_reduce(&w(&[1, 2, 1])), w(&[1, 2, 1]));
        assert_eq!(free_reduce(&w(&[1, 2, -2, -1, 3])), w(&[3]));
    }

    #[test]
    fn cyclic() {
        assert_eq!(w(&[2, 1, 3, -2]).cyclic_reduce(), w(&[1, 3]));
    }

    #[test]
    fn syllables_and_sums() {
        let x = w(&[1, 1, -2, -2, -2, 1]);
        assert_eq!(x.syllables(), vec![(0, 2), (1, -3), (0, 1)]);
        assert_eq!(x.exponent_sums(2), vec![3, -3]);
    }

    #[test]
    fn substitution() {
        let x = w(&[1, -2, 1]);
        let y = x.substitute(1, &w(&[3, 3]));
        assert_eq!(y, w(&[1, -3, -3, 1]));
    }
}
