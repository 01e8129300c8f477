//! Independent oracles and seeded generators shared by the integration tests.
//!
//! Nothing here calls the library's linear algebra, quotient or rewriting code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use dgquiver::constructions::{AlgebraPresentation, Relation};
use dgquiver::dg::DgQuiverAlgebra;
use dgquiver::dsl::Document;
use dgquiver::element::{PathElement, Potential};
use dgquiver::quiver::{ArrowId, GradedQuiver, Path, Quiver, VertexId};
use dgquiver::scalar::{frac, int, Scalar};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Linear algebra

/// Row reduction over the rationals, pivoting on the smallest column.
#[derive(Default)]
pub struct RowReducer {
    rows: BTreeMap<usize, BTreeMap<usize, Scalar>>,
}

impl RowReducer {
    pub fn new() -> RowReducer {
        RowReducer::default()
    }

    /// Adds a row; returns its pivot column if it was independent.
    pub fn insert(&mut self, mut row: BTreeMap<usize, Scalar>) -> Option<usize> {
        row.retain(|_, c| !c.is_zero());
        loop {
            let (&col, c) = row.iter().next()?;
            let Some(pivot_row) = self.rows.get(&col) else {
                let inv = Scalar::one() / c.clone();
                for v in row.values_mut() {
                    *v *= &inv;
                }
                self.rows.insert(col, row);
                return Some(col);
            };
            let factor = c.clone();
            for (k, v) in pivot_row {
                let entry = row.entry(*k).or_insert_with(Scalar::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    row.remove(k);
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }
}

// ---------------------------------------------------------------------------
// Words over a plain quiver

/// A quiver as bare endpoint pairs `(source, target)`.
#[derive(Clone, Debug)]
pub struct PlainQuiver {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl PlainQuiver {
    pub fn of(q: &Quiver) -> PlainQuiver {
        PlainQuiver {
            vertices: q.num_vertices(),
            arrows: q.arrow_ids().map(|a| (q.source(a).0, q.target(a).0)).collect(),
        }
    }
}

/// A path in function order: `letters[0]` is applied last.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub source: usize,
    pub target: usize,
    pub letters: Vec<usize>,
}

impl Word {
    pub fn trivial(v: usize) -> Word {
        Word { source: v, target: v, letters: Vec::new() }
    }

    pub fn letter(q: &PlainQuiver, a: usize) -> Word {
        Word { source: q.arrows[a].0, target: q.arrows[a].1, letters: vec![a] }
    }

    /// `self` after `other`.
    pub fn then(&self, other: &Word) -> Option<Word> {
        if self.source != other.target {
            return None;
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Some(Word { source: other.source, target: self.target, letters })
    }
}

/// Every word of length exactly `len`.
pub fn words_of_length(q: &PlainQuiver, len: usize) -> Vec<Word> {
    let mut level: Vec<Word> = (0..q.vertices).map(Word::trivial).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &level {
            for a in 0..q.arrows.len() {
                if let Some(x) = Word::letter(q, a).then(w) {
                    next.push(x);
                }
            }
        }
        level = next;
    }
    level.sort();
    level
}

pub fn words_up_to(q: &PlainQuiver, len: usize) -> Vec<Word> {
    (0..=len).flat_map(|l| words_of_length(q, l)).collect()
}

pub type Combination = Vec<(Word, Scalar)>;

/// Dimension of `kQ_l / (span of u r v of length l)` for each `l <= max_len`,
/// for relations that are combinations of words of one common length.
pub fn quotient_dims_by_length(q: &PlainQuiver, relations: &[Combination], max_len: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for l in 0..=max_len {
        let words = words_of_length(q, l);
        let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut reducer = RowReducer::new();
        for r in relations {
            let rl = r[0].0.letters.len();
            if rl > l {
                continue;
            }
            let (rs, rt) = (r[0].0.source, r[0].0.target);
            for ul in 0..=(l - rl) {
                let vl = l - rl - ul;
                for u in words_of_length(q, ul).into_iter().filter(|u| u.source == rt) {
                    for v in words_of_length(q, vl).into_iter().filter(|v| v.target == rs) {
                        let mut row = BTreeMap::new();
                        for (w, c) in r {
                            let full = u.then(w).unwrap().then(&v).unwrap();
                            *row.entry(index[&full]).or_insert_with(Scalar::zero) += c;
                        }
                        reducer.insert(row);
                    }
                }
            }
        }
        out.push(words.len() - reducer.rank());
    }
    out
}

/// Relations `sum_{t(a)=i} a a* - sum_{s(a)=i} a* a` of the preprojective
/// algebra, written over the double quiver with `a*` at index `m + a`.
pub fn preprojective_oracle(q: &PlainQuiver) -> (PlainQuiver, Vec<Combination>) {
    let m = q.arrows.len();
    let mut double = q.clone();
    double.arrows.extend(q.arrows.iter().map(|&(s, t)| (t, s)));
    let mut relations = Vec::new();
    for i in 0..q.vertices {
        let mut r = Vec::new();
        for (a, &(s, t)) in q.arrows.iter().enumerate() {
            if t == i {
                r.push((Word { source: i, target: i, letters: vec![a, m + a] }, Scalar::one()));
            }
            if s == i {
                r.push((Word { source: i, target: i, letters: vec![m + a, a] }, -Scalar::one()));
            }
        }
        if !r.is_empty() {
            relations.push(r);
        }
    }
    (double, relations)
}

/// Linearly oriented `A_n`.
pub fn type_a(n: usize) -> PlainQuiver {
    PlainQuiver { vertices: n, arrows: (0..n - 1).map(|i| (i, i + 1)).collect() }
}

// ---------------------------------------------------------------------------
// Monomial counts

/// Monomials `x^a y^b z^c` of total degree `d` with `a w0 + b w1 + c w2 = 0 mod n`.
pub fn invariant_monomials(n: i64, weights: [i64; 3], d: usize) -> usize {
    let mut count = 0;
    for a in 0..=d {
        for b in 0..=(d - a) {
            let c = d - a - b;
            let total = a as i64 * weights[0] + b as i64 * weights[1] + c as i64 * weights[2];
            if total.rem_euclid(n) == 0 {
                count += 1;
            }
        }
    }
    count
}

// ---------------------------------------------------------------------------
// Leavitt brute force

/// Dimension of the degree-`n` part of the span of words of length `<= max_len`
/// in arrows and starred arrows, modulo all `u r v` with `|u| + |r| + |v| <= max_len`
/// for the Cuntz-Krieger relations. Returns dimensions for degrees
/// `-max_len..=max_len`.
pub fn leavitt_brute_force(q: &PlainQuiver, max_len: usize) -> BTreeMap<i64, usize> {
    let m = q.arrows.len();
    let mut letters = q.clone();
    letters.arrows.extend(q.arrows.iter().map(|&(s, t)| (t, s)));
    let degree = |w: &Word| w.letters.iter().map(|&l| if l < m { -1 } else { 1 }).sum::<i64>();

    let mut relations: Vec<Combination> = Vec::new();
    for i in 0..q.vertices {
        let incoming: Vec<usize> = (0..m).filter(|&a| q.arrows[a].1 == i).collect();
        if incoming.is_empty() {
            continue;
        }
        let mut r: Combination =
            incoming.iter().map(|&a| (Word { source: i, target: i, letters: vec![a, m + a] }, Scalar::one())).collect();
        r.push((Word::trivial(i), -Scalar::one()));
        relations.push(r);
    }
    for a in 0..m {
        let s = q.arrows[a].0;
        relations.push(vec![
            (Word { source: s, target: s, letters: vec![m + a, a] }, Scalar::one()),
            (Word::trivial(s), -Scalar::one()),
        ]);
        for b in (0..m).filter(|&b| b != a && q.arrows[b].1 == q.arrows[a].1) {
            relations.push(vec![(
                Word { source: q.arrows[b].0, target: q.arrows[a].0, letters: vec![m + a, b] },
                Scalar::one(),
            )]);
        }
    }

    let words = words_up_to(&letters, max_len);
    let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut reducer = RowReducer::new();
    for r in &relations {
        let top = r.iter().map(|(w, _)| w.letters.len()).max().unwrap();
        let (rs, rt) = (r[0].0.source, r[0].0.target);
        for ul in 0..=(max_len - top) {
            for vl in 0..=(max_len - top - ul) {
                for u in words_of_length(&letters, ul).into_iter().filter(|u| u.source == rt) {
                    for v in words_of_length(&letters, vl).into_iter().filter(|v| v.target == rs) {
                        let mut row = BTreeMap::new();
                        for (w, c) in r {
                            let full = u.then(w).unwrap().then(&v).unwrap();
                            *row.entry(index[&full]).or_insert_with(Scalar::zero) += c;
                        }
                        reducer.insert(row);
                    }
                }
            }
        }
    }
    let mut dims: BTreeMap<i64, usize> = (-(max_len as i64)..=max_len as i64).map(|n| (n, 0)).collect();
    for w in &words {
        *dims.get_mut(&degree(w)).unwrap() += 1;
    }
    for col in reducer.pivots() {
        *dims.get_mut(&degree(&words[col])).unwrap() -= 1;
    }
    dims
}

/// Every quiver with at most `max_vertices` vertices and at most `max_arrows`
/// arrows, one per multiset of endpoint pairs.
pub fn all_small_quivers(max_vertices: usize, max_arrows: usize) -> Vec<PlainQuiver> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(chosen) = stack.pop() {
            out.push(PlainQuiver { vertices: n, arrows: chosen.iter().map(|&i| pairs[i]).collect() });
            if chosen.len() < max_arrows {
                let from = chosen.last().copied().unwrap_or(0);
                for i in from..pairs.len() {
                    let mut next = chosen.clone();
                    next.push(i);
                    stack.push(next);
                }
            }
        }
    }
    out
}

pub fn to_quiver(q: &PlainQuiver) -> Quiver {
    let mut b = Quiver::builder();
    for v in 0..q.vertices {
        b.vertex((v + 1).to_string(), None).unwrap();
    }
    for (i, &(s, t)) in q.arrows.iter().enumerate() {
        b.arrow(format!("a{i}"), VertexId(s), VertexId(t)).unwrap();
    }
    b.build()
}

// ---------------------------------------------------------------------------
// Cyclic derivatives

/// `sum over positions of a in c` of the rotation of `c` starting after `a`,
/// computed on raw arrow lists.
pub fn cyclic_derivative_oracle(q: &Quiver, cycle: &[ArrowId], a: ArrowId) -> PathElement {
    let n = cycle.len();
    let mut out = PathElement::zero();
    for k in (0..n).filter(|&k| cycle[k] == a) {
        // c = u a v with u = cycle[..k], v = cycle[k+1..]; contributes v u.
        let mut arrows: Vec<ArrowId> = cycle[k + 1..].to_vec();
        arrows.extend_from_slice(&cycle[..k]);
        let path = if arrows.is_empty() {
            Path::trivial(q.target(a))
        } else {
            Path::from_arrows(q, arrows).unwrap()
        };
        out.add_term(path, Scalar::one());
    }
    out
}

pub fn rotate(q: &Quiver, p: &Path, k: usize) -> Path {
    let mut arrows = p.arrows()[k..].to_vec();
    arrows.extend_from_slice(&p.arrows()[..k]);
    Path::from_arrows(q, arrows).unwrap()
}

// ---------------------------------------------------------------------------
// Random generators

pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let num = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
    let den = *[1i64, 1, 1, 2, 3].choose(rng).unwrap();
    frac(num, den)
}

pub fn random_quiver(rng: &mut ChaCha8Rng, vertices: usize, arrows: usize) -> Quiver {
    let mut b = Quiver::builder();
    for v in 0..vertices {
        b.vertex((v + 1).to_string(), None).unwrap();
    }
    for i in 0..arrows {
        let s = rng.gen_range(0..vertices);
        let t = rng.gen_range(0..vertices);
        b.arrow(format!("a{i}"), VertexId(s), VertexId(t)).unwrap();
    }
    b.build()
}

/// A random combination of the given paths, nonzero when `paths` is nonempty.
pub fn random_combination(rng: &mut ChaCha8Rng, paths: &[Path], max_terms: usize) -> PathElement {
    let mut x = PathElement::zero();
    if paths.is_empty() {
        return x;
    }
    while x.is_zero() {
        for _ in 0..rng.gen_range(1..=max_terms) {
            x.add_term(paths.choose(rng).unwrap().clone(), random_scalar(rng));
        }
    }
    x
}

fn paths_between(all: &[Path], s: VertexId, t: VertexId) -> Vec<Path> {
    all.iter().filter(|p| p.source() == s && p.target() == t).cloned().collect()
}

/// A finite-dimensional quotient: every path of length three is a relation,
/// plus random combinations of length-two paths.
pub fn random_findim_presentation(rng: &mut ChaCha8Rng) -> AlgebraPresentation {
    loop {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=4);
        let q = random_quiver(rng, n, m);
        let mut relations: Vec<PathElement> = q.paths_of_length(3).into_iter().map(PathElement::from_path).collect();
        let two = q.paths_of_length(2);
        for _ in 0..rng.gen_range(0..=2) {
            let Some(p) = two.choose(rng) else { break };
            let candidates = paths_between(&two, p.source(), p.target());
            relations.push(random_combination(rng, &candidates, 2));
        }
        if let Ok(p) = AlgebraPresentation::from_elements(q, relations) {
            return p;
        }
    }
}

/// A dg algebra with a loop `x` of degree -1 at a chosen vertex and `d(x) = e`.
pub fn random_contractible(rng: &mut ChaCha8Rng) -> (DgQuiverAlgebra, VertexId, PathElement) {
    let n = rng.gen_range(1..=3);
    let i = VertexId(rng.gen_range(0..n));
    let zero_arrows = rng.gen_range(1..=3);
    let minus_arrows = rng.gen_range(0..=2);
    let mut b = Quiver::builder();
    for v in 0..n {
        b.vertex((v + 1).to_string(), None).unwrap();
    }
    b.arrow("x", i, i).unwrap();
    let mut endpoints = Vec::new();
    for k in 0..zero_arrows + minus_arrows {
        let (s, t) = (VertexId(rng.gen_range(0..n)), VertexId(rng.gen_range(0..n)));
        let name = if k < zero_arrows { format!("g{k}") } else { format!("u{k}") };
        b.arrow(name, s, t).unwrap();
        endpoints.push((s, t));
    }
    let q = b.build();
    let mut degrees = vec![-1];
    degrees.extend((0..zero_arrows + minus_arrows).map(|k| if k < zero_arrows { 0 } else { -1 }));
    let gq = GradedQuiver::new(q.clone(), degrees, None).unwrap();
    // Degree-zero paths of length one and two, avoiding x.
    let degree_zero: Vec<Path> = q
        .paths_up_to(2)
        .into_iter()
        .filter(|p| !p.is_trivial() && p.arrows().iter().all(|a| gq.degree(*a) == 0))
        .collect();
    let mut d = vec![PathElement::trivial(i)];
    for (k, &(s, t)) in endpoints.iter().enumerate() {
        if k < zero_arrows {
            d.push(PathElement::zero());
        } else {
            d.push(random_combination(rng, &paths_between(&degree_zero, s, t), 2));
        }
    }
    let x = PathElement::arrow(&q, ArrowId(0));
    (DgQuiverAlgebra::new(gq, d, false), i, x)
}

/// Nontrivial cycles of length at most `max_len`.
pub fn cycles(q: &Quiver, max_len: usize) -> Vec<Path> {
    q.paths_up_to(max_len).into_iter().filter(|p| !p.is_trivial() && p.is_cycle()).collect()
}

/// A random quiver with a nonzero potential.
pub fn random_quiver_with_potential(rng: &mut ChaCha8Rng) -> (Quiver, Potential) {
    loop {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=4);
        let q = random_quiver(rng, n, m);
        let cs = cycles(&q, 4);
        if cs.is_empty() {
            continue;
        }
        let w = random_combination(rng, &cs, 4);
        let p = Potential::new(&GradedQuiver::ungraded(q.clone()), w).unwrap();
        return (q, p);
    }
}

const VERTEX_NAMES: &[&str] = &["1", "2", "3", "v", "w_2", "p'", "10", "x0"];
const ARROW_NAMES: &[&str] = &["a", "b", "alpha", "beta'", "g*", "x.1", "_t", "rho2", "c_1'", "zz"];
const LABELS: &[&str] = &["source", "sink vertex", "(top)", "k[t]"];

/// A random document exercising every statement of the text format.
pub fn random_document(rng: &mut ChaCha8Rng) -> Document {
    let n = rng.gen_range(1..=4);
    let mut vnames: Vec<&str> = VERTEX_NAMES.to_vec();
    vnames.shuffle(rng);
    let mut anames: Vec<&str> = ARROW_NAMES.to_vec();
    anames.shuffle(rng);
    let mut b = Quiver::builder();
    for name in &vnames[..n] {
        let label = if rng.gen_bool(0.3) { Some(LABELS.choose(rng).unwrap().to_string()) } else { None };
        b.vertex(*name, label).unwrap();
    }
    let m = rng.gen_range(0..=6);
    for name in &anames[..m] {
        b.arrow(*name, VertexId(rng.gen_range(0..n)), VertexId(rng.gen_range(0..n))).unwrap();
    }
    let q = b.build();
    let degrees: Vec<i64> = (0..m).map(|_| *[-2, -1, -1, 0, 0, 0, 1].choose(rng).unwrap()).collect();
    let weights = rng.gen_bool(0.5).then(|| (0..m).map(|_| rng.gen_range(0..=3)).collect());
    let gq = GradedQuiver::new(q.clone(), degrees, weights).unwrap();
    let mut doc = Document::new(gq.clone());
    doc.homogeneous = rng.gen_bool(0.3);

    let short = q.paths_up_to(2);
    for a in q.arrow_ids() {
        if rng.gen_bool(0.5) {
            let x = random_combination(rng, &paths_between(&short, q.source(a), q.target(a)), 3);
            if !x.is_zero() {
                doc.differential.insert(a, x);
            }
        }
    }
    let mut relation_names: BTreeSet<String> = BTreeSet::new();
    for k in 0..rng.gen_range(0..=3) {
        let p = short.choose(rng).unwrap();
        let element = random_combination(rng, &paths_between(&short, p.source(), p.target()), 3);
        let name = rng.gen_bool(0.5).then(|| format!("r{k}'"));
        if let Some(name) = &name {
            relation_names.insert(name.clone());
        }
        doc.relations.push(Relation { name, element });
    }
    let degree_zero = GradedQuiver::new(q.clone(), vec![0; m], None).unwrap();
    let zero_cycles: Vec<Path> =
        cycles(&q, 3).into_iter().filter(|c| c.arrows().iter().all(|a| gq.degree(*a) == 0)).collect();
    if !zero_cycles.is_empty() && rng.gen_bool(0.5) {
        let w = random_combination(rng, &zero_cycles, 3);
        Potential::new(&degree_zero, w.clone()).unwrap();
        doc.potential = Some(w);
    }
    for v in q.vertex_ids() {
        if rng.gen_bool(0.3) {
            doc.lambda.insert(v, random_scalar(rng) - int(rng.gen_range(0..2)));
        }
    }
    doc
}
