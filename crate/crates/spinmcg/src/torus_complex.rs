//! The genus-1 spin cut-system complex: vertices are spin curves on the torus,
//! edges join curves meeting once (type i) or twice (type ii), and every
//! type-ii edge spans exactly one triangle.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;

use crate::gf2_spin::{arf, spin_value, Gf2Vec, QuadForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TorusError {
    #[error("({0},{1}) is not primitive")]
    NotPrimitive(i64, i64),
    #[error("{0} is not a vertex")]
    NotVertex(PrimitiveClass),
    #[error("{0} and {1} do not span a type-ii edge")]
    NotTypeII(PrimitiveClass, PrimitiveClass),
    #[error("{count} spin completions of the type-ii edge {v}, {w}")]
    Dichotomy { v: PrimitiveClass, w: PrimitiveClass, count: usize },
    #[error("ball radius must be at least 1")]
    EmptyBall,
}

type Result<T> = std::result::Result<T, TorusError>;

/// Unoriented simple closed curve `p alpha + q beta`, first nonzero coordinate positive.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PrimitiveClass {
    p: i64,
    q: i64,
}

impl PrimitiveClass {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p.gcd(&q) != 1 {
            return Err(TorusError::NotPrimitive(p, q));
        }
        Ok(if p < 0 || (p == 0 && q < 0) { PrimitiveClass { p: -p, q: -q } } else { PrimitiveClass { p, q } })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Sup norm, the ball radius at which the class first appears.
    pub fn height(&self) -> i64 {
        self.p.abs().max(self.q.abs())
    }

    fn det(&self, other: &PrimitiveClass) -> i64 {
        self.p * other.q - self.q * other.p
    }
}

impl fmt::Display for PrimitiveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// The even torus spin structure with phi(alpha) = 1, phi(beta) = 0.
#[derive(Clone, Copy, Debug)]
pub struct SpinTorus {
    form: QuadForm,
}

impl Default for SpinTorus {
    fn default() -> Self {
        let form = QuadForm::standard_even(1);
        debug_assert!(!arf(&form));
        SpinTorus { form }
    }
}

impl SpinTorus {
    pub fn form(&self) -> &QuadForm {
        &self.form
    }

    pub fn spin(&self, v: &PrimitiveClass) -> bool {
        spin_value(&self.form, &Gf2Vec::from_coords(&[v.p, v.q])).expect("genus-1 vector")
    }
}

pub fn is_vertex(v: &PrimitiveClass, st: &SpinTorus) -> bool {
    st.spin(v)
}

/// Geometric intersection number, which on the torus is `|det|`.
pub fn intersection_number(v: &PrimitiveClass, w: &PrimitiveClass) -> u64 {
    v.det(w).unsigned_abs()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum EdgeType {
    None,
    TypeI,
    TypeII,
}

pub fn edge_type(v: &PrimitiveClass, w: &PrimitiveClass, st: &SpinTorus) -> Result<EdgeType> {
    for x in [v, w] {
        if !is_vertex(x, st) {
            return Err(TorusError::NotVertex(*x));
        }
    }
    Ok(match intersection_number(v, w) {
        1 => EdgeType::TypeI,
        2 => EdgeType::TypeII,
        _ => EdgeType::None,
    })
}

/// The spin curve among `(v+w)/2`, `(v-w)/2`; it meets both `v` and `w` once.
pub fn triangle_complete(v: &PrimitiveClass, w: &PrimitiveClass, st: &SpinTorus) -> Result<PrimitiveClass> {
    if edge_type(v, w, st)? != EdgeType::TypeII {
        return Err(TorusError::NotTypeII(*v, *w));
    }
    let cands = [
        PrimitiveClass::new((v.p + w.p) / 2, (v.q + w.q) / 2)?,
        PrimitiveClass::new((v.p - w.p) / 2, (v.q - w.q) / 2)?,
    ];
    for c in &cands {
        assert!(intersection_number(c, v) == 1 && intersection_number(c, w) == 1);
    }
    let spin: Vec<_> = cands.iter().filter(|c| st.spin(c)).copied().collect();
    match spin.as_slice() {
        [c] => Ok(*c),
        _ => Err(TorusError::Dichotomy { v: *v, w: *w, count: spin.len() }),
    }
}

/// All vertices of height at most `n` and the edges among them.
#[derive(Clone, Debug)]
pub struct TorusBall {
    pub radius: i64,
    pub vertices: Vec<PrimitiveClass>,
    index: HashMap<PrimitiveClass, usize>,
    /// Sorted neighbour lists.
    pub type_i: Vec<Vec<usize>>,
    pub type_ii: Vec<Vec<usize>>,
}

pub fn ball(n: i64, st: &SpinTorus) -> Result<TorusBall> {
    if n < 1 {
        return Err(TorusError::EmptyBall);
    }
    let vertices: Vec<PrimitiveClass> = (0..=n)
        .flat_map(|p| (-n..=n).map(move |q| (p, q)))
        .filter(|&(p, q)| (p > 0 || q > 0) && p.gcd(&q) == 1)
        .map(|(p, q)| PrimitiveClass { p, q })
        .filter(|v| st.spin(v))
        .collect();
    let index = vertices.iter().enumerate().map(|(k, v)| (*v, k)).collect();
    let rows: Vec<(Vec<usize>, Vec<usize>)> = vertices
        .par_iter()
        .map(|v| {
            let (mut one, mut two) = (Vec::new(), Vec::new());
            for (k, w) in vertices.iter().enumerate() {
                match intersection_number(v, w) {
                    1 => one.push(k),
                    2 => two.push(k),
                    _ => {}
                }
            }
            (one, two)
        })
        .collect();
    let (type_i, type_ii) = rows.into_iter().unzip();
    Ok(TorusBall { radius: n, vertices, index, type_i, type_ii })
}

impl TorusBall {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, v: &PrimitiveClass) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn edge_count(&self) -> (usize, usize) {
        let half = |a: &Vec<Vec<usize>>| a.iter().map(Vec::len).sum::<usize>() / 2;
        (half(&self.type_i), half(&self.type_ii))
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.type_i[a].binary_search(&b).is_ok() || self.type_ii[a].binary_search(&b).is_ok()
    }

    /// One line per vertex: `p,q: i p,q ... | ii p,q ...`.
    pub fn adjacency_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.vertices.iter().enumerate() {
            let list = |ns: &[usize]| {
                ns.iter().map(|&j| format!(" {},{}", self.vertices[j].p, self.vertices[j].q)).collect::<String>()
            };
            out.push_str(&format!("{},{}: i{} | ii{}\n", v.p, v.q, list(&self.type_i[k]), list(&self.type_ii[k])));
        }
        out
    }

    /// Total degree to number of vertices.
    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for k in 0..self.len() {
            *h.entry(self.type_i[k].len() + self.type_ii[k].len()).or_insert(0) += 1;
        }
        h
    }

    pub fn degree_histogram_json(&self) -> String {
        let body: Vec<String> = self.degree_histogram().iter().map(|(d, c)| format!("\"{d}\":{c}")).collect();
        format!("{{{}}}", body.join(","))
    }

    /// Vertices reachable from `start` by type-i edges through vertices of height at most `cap`.
    fn type_i_component(&self, start: usize, cap: i64) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(a) = queue.pop_front() {
            for &b in &self.type_i[a] {
                if !seen[b] && self.vertices[b].height() <= cap {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        seen
    }
}

/// Smallest radius `m` such that every vertex of height at most `n` joins `(1,0)`
/// by a type-i path through vertices of height at most `m`, searched up to `n + max_slack`.
pub fn connectivity_radius(big: &TorusBall, n: i64, max_slack: i64) -> Option<i64> {
    let root = big.index_of(&PrimitiveClass { p: 1, q: 0 })?;
    (n..=(n + max_slack).min(big.radius)).find(|&m| {
        let seen = big.type_i_component(root, m);
        big.vertices.iter().zip(&seen).all(|(v, &s)| s || v.height() > n)
    })
}

/// Checks type-i connectivity of every ball up to radius `n` with the given slack.
/// Returns the first radius that fails.
pub fn check_type_i_connectivity(n: i64, slack: i64, st: &SpinTorus) -> Result<Option<i64>> {
    let big = ball(n + slack, st)?;
    Ok((1..=n).into_par_iter().find_first(|&k| connectivity_radius(&big, k, slack).is_none()))
}

/// Every type-ii edge of the ball has exactly one spin completion; returns the edge count.
pub fn check_dichotomy(b: &TorusBall, st: &SpinTorus) -> Result<usize> {
    let edges: Vec<(usize, usize)> =
        (0..b.len()).flat_map(|a| b.type_ii[a].iter().filter(move |&&c| c > a).map(move |&c| (a, c))).collect();
    edges.par_iter().try_for_each(|&(a, c)| triangle_complete(&b.vertices[a], &b.vertices[c], st).map(|_| ()))?;
    Ok(edges.len())
}

/// Counts of 3-cycles in the ball by number of type-ii edges (0..=3).
pub fn triangle_census(b: &TorusBall) -> [usize; 4] {
    let counts: Vec<[usize; 4]> = (0..b.len())
        .into_par_iter()
        .map(|a| {
            let mut c = [0usize; 4];
            let nbrs = neighbours(b, a);
            for (x, &(u, tu)) in nbrs.iter().enumerate() {
                for &(v, tv) in &nbrs[x + 1..] {
                    if u < a || v < a {
                        continue;
                    }
                    let tuv = if b.type_i[u].binary_search(&v).is_ok() {
                        1
                    } else if b.type_ii[u].binary_search(&v).is_ok() {
                        2
                    } else {
                        continue;
                    };
                    c[[tu, tv, tuv].iter().filter(|&&t| t == 2).count()] += 1;
                }
            }
            c
        })
        .collect();
    counts.iter().fold([0; 4], |mut acc, c| {
        for k in 0..4 {
            acc[k] += c[k];
        }
        acc
    })
}

fn neighbours(b: &TorusBall, a: usize) -> Vec<(usize, u8)> {
    let mut out: Vec<(usize, u8)> =
        b.type_i[a].iter().map(|&x| (x, 1)).chain(b.type_ii[a].iter().map(|&x| (x, 2))).collect();
    out.sort_unstable();
    out
}

/// Simple cycles of length `3..=max_len`, each listed once.
pub fn short_cycles(b: &TorusBall, max_len: usize) -> Vec<Vec<usize>> {
    let per_start: Vec<Vec<Vec<usize>>> = (0..b.len())
        .into_par_iter()
        .map(|s| {
            let mut found = Vec::new();
            let mut path = vec![s];
            extend_cycles(b, s, max_len, &mut path, &mut found);
            found
        })
        .collect();
    per_start.into_iter().flatten().collect()
}

fn extend_cycles(b: &TorusBall, s: usize, max_len: usize, path: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
    let last = *path.last().unwrap();
    for (x, _) in neighbours(b, last) {
        if x == s && path.len() >= 3 && path[1] < last {
            found.push(path.clone());
        }
        if x > s && path.len() < max_len && !path.contains(&x) {
            path.push(x);
            extend_cycles(b, s, max_len, path, found);
            path.pop();
        }
    }
}

/// Whether three vertices span a face: two type-i edges and one type-ii edge.
pub fn is_face(a: &PrimitiveClass, b: &PrimitiveClass, c: &PrimitiveClass) -> bool {
    let mut d = [intersection_number(a, b), intersection_number(b, c), intersection_number(a, c)];
    d.sort_unstable();
    d == [1, 1, 2]
}

/// Searches for a null-homotopy of the closed edge path `cycle` using backtrack
/// cancellation and triangle moves, staying in vertices of height at most
/// `radius` and paths of length at most `cycle.len() + extra`.
pub fn contracts(cycle: &[PrimitiveClass], radius: i64, extra: usize, st: &SpinTorus, max_states: usize) -> bool {
    let limit = cycle.len() + extra;
    let start = canonical(cycle.to_vec());
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        if c.len() <= 3 && (c.is_empty() || is_face(&c[0], &c[1], &c[2])) {
            return true;
        }
        for next in moves(&c, radius, st) {
            if next.len() > limit {
                continue;
            }
            let next = canonical(next);
            if next.is_empty() {
                return true;
            }
            if seen.len() >= max_states {
                return false;
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    false
}

fn moves(c: &[PrimitiveClass], radius: i64, st: &SpinTorus) -> Vec<Vec<PrimitiveClass>> {
    let n = c.len();
    let mut out = Vec::new();
    let rotate = |k: usize| -> Vec<PrimitiveClass> { c[k..].iter().chain(&c[..k]).copied().collect() };
    for k in 0..n {
        let r = rotate(k);
        let (u, x, v) = (r[0], r[1], r[2 % n]);
        // u x u -> u
        if n >= 2 && u == v {
            out.push(r[2..].to_vec());
        }
        // u x v -> u v across a face
        if n >= 3 && is_face(&u, &x, &v) {
            let mut m = r.clone();
            m.remove(1);
            out.push(m);
        }
        // u x -> u y x across a face
        for y in face_apexes(&u, &x, st) {
            if y.height() <= radius {
                let mut m = r.clone();
                m.insert(1, y);
                out.push(m);
            }
        }
    }
    out
}

fn face_apexes(u: &PrimitiveClass, x: &PrimitiveClass, st: &SpinTorus) -> Vec<PrimitiveClass> {
    let mut out = Vec::new();
    match intersection_number(u, x) {
        2 => out.extend(triangle_complete(u, x, st).ok()),
        1 => {
            // Apexes y with {u, x, y} a face: y meets one of u, x twice and the other once.
            for a in [1i64, -1] {
                for (s, t) in [(1i64, 2i64), (2, 1)] {
                    let y = (s * u.p + a * t * x.p, s * u.q + a * t * x.q);
                    if let Ok(y) = PrimitiveClass::new(y.0, y.1) {
                        if st.spin(&y) && is_face(u, x, &y) {
                            out.push(y);
                        }
                    }
                }
            }
        }
        _ => {}
    }
    out.sort();
    out.dedup();
    out
}

/// Least rotation of either orientation, after cancelling cyclic backtracks of length 2.
fn canonical(mut c: Vec<PrimitiveClass>) -> Vec<PrimitiveClass> {
    if c.len() <= 2 {
        return Vec::new();
    }
    let best = |c: &[PrimitiveClass]| (0..c.len()).map(|k| c[k..].iter().chain(&c[..k]).copied().collect::<Vec<_>>()).min().unwrap();
    let fwd = best(&c);
    c.reverse();
    fwd.min(best(&c))
}

/// Outcome of the contraction check over all short cycles of a ball.
#[derive(Clone, Debug)]
pub struct ContractionReport {
    pub cycles: usize,
    pub failures: Vec<Vec<PrimitiveClass>>,
}

pub fn check_short_cycles(n: i64, max_len: usize, fill_radius: i64, st: &SpinTorus) -> Result<ContractionReport> {
    let b = ball(n, st)?;
    let cycles = short_cycles(&b, max_len);
    let failures = cycles
        .par_iter()
        .map(|c| c.iter().map(|&k| b.vertices[k]).collect::<Vec<_>>())
        .filter(|c| !contracts(c, fill_radius, 2, st, 20_000))
        .collect();
    debug_assert!(cycles.iter().all(|c| c.windows(2).all(|w| b.adjacent(w[0], w[1]))));
    Ok(ContractionReport { cycles: cycles.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(p: i64, q: i64) -> PrimitiveClass {
        PrimitiveClass::new(p, q).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(pc(-1, 2), pc(1, -2));
        assert_eq!(pc(0, -1), pc(0, 1));
        assert!(PrimitiveClass::new(2, 4).is_err());
        assert!(PrimitiveClass::new(0, 0).is_err());
    }

    #[test]
    fn apexes_span_faces() {
        let st = SpinTorus::default();
        let ys = face_apexes(&pc(1, 0), &pc(1, 1), &st);
        assert!(!ys.is_empty());
        for y in ys {
            assert!(is_face(&pc(1, 0), &pc(1, 1), &y));
        }
    }
}
