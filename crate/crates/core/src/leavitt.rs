//! Leavitt path algebra presentations and normal forms.
//!
//! For a quiver `Q'` whose arrows sit in degree -1, the presentation adjoins
//! `a*: t(a) -> s(a)` in degree +1 subject to
//!
//! * `sum_{t(a)=i} a a* = e_i` for every vertex `i` with incoming arrows,
//! * `a* a = e_{s(a)}`,
//! * `a* b = 0` for `a != b` with `t(a) = t(b)`.
//!
//! Normal forms rewrite `a* b -> delta_ab e_{s(a)}` and `s s* -> e_i - sum t t*`
//! where `s` is the incoming arrow of largest id at `i` and `t` runs over the
//! other incoming arrows. Irreducible words are `p q*` with `s(p) = s(q)` and
//! no junction `s s*`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::constructions::{fresh_name, Relation};
use crate::dsl::Document;
use crate::element::PathElement;
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, GradedQuiver, Path, Quiver, VertexId};
use crate::scalar::Scalar;

/// Safety cap on rewriting steps for a single normal form computation.
const MAX_REWRITE_STEPS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Arrow(ArrowId),
    Star(ArrowId),
}

/// A composable word in arrows and starred arrows, in function order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeavittWord {
    letters: Vec<Letter>,
    source: VertexId,
    target: VertexId,
}

impl LeavittWord {
    pub fn trivial(v: VertexId) -> LeavittWord {
        LeavittWord { letters: Vec::new(), source: v, target: v }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `-1` per arrow and `+1` per starred arrow.
    pub fn degree(&self) -> i64 {
        self.letters.iter().map(|l| if matches!(l, Letter::Arrow(_)) { -1 } else { 1 }).sum()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeavittElement {
    terms: BTreeMap<LeavittWord, Scalar>,
}

impl LeavittElement {
    pub fn zero() -> LeavittElement {
        LeavittElement::default()
    }

    pub fn word(w: LeavittWord) -> LeavittElement {
        let mut x = LeavittElement::zero();
        x.add_term(w, Scalar::one());
        x
    }

    pub fn add_term(&mut self, w: LeavittWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LeavittWord, &Scalar)> {
        self.terms.iter()
    }

    fn pop_first(&mut self) -> Option<(LeavittWord, Scalar)> {
        self.terms.pop_first()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationFamily {
    /// `sum_{t(a)=i} a a* = e_i`
    Ck1a,
    /// `a* a = e_{s(a)}`
    Ck1b,
    /// `a* b = 0`
    Ck1c,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeavittRelation {
    pub family: RelationFamily,
    pub name: String,
    /// Relation written as `lhs - rhs`, over [`LeavittPresentation::full_quiver`].
    pub element: PathElement,
}

/// A monomial `p q*` with `s(p) = s(q) = vertex`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LeavittMonomial {
    pub vertex: VertexId,
    pub p: Vec<ArrowId>,
    pub q: Vec<ArrowId>,
}

impl LeavittMonomial {
    pub fn degree(&self) -> i64 {
        self.q.len() as i64 - self.p.len() as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeavittPresentation {
    base: GradedQuiver,
    full: GradedQuiver,
    relations: Vec<LeavittRelation>,
    special: Vec<Option<ArrowId>>,
}

/// The presentation for `Q'`, the copy of `q` with primed names and arrows in degree -1.
pub fn leavitt_presentation(q: &Quiver) -> Result<LeavittPresentation> {
    let mut b = Quiver::builder();
    for v in q.vertices() {
        b.vertex(format!("{}'", v.name), None)?;
    }
    for a in q.arrows() {
        b.arrow(format!("{}'", a.name), a.source, a.target)?;
    }
    leavitt_presentation_of(&b.build())
}

/// The presentation taking the arrows of `base` themselves as the degree -1 generators.
pub fn leavitt_presentation_of(base: &Quiver) -> Result<LeavittPresentation> {
    if let Some(&v) = base.sources().first() {
        return Err(Error::Precondition(format!("vertex `{}` is a source", base.vertex_name(v))));
    }
    let m = base.num_arrows();
    let mut b = Quiver::builder();
    for v in base.vertices() {
        b.vertex(v.name.clone(), v.label.clone())?;
    }
    let mut taken = BTreeSet::new();
    for a in base.arrows() {
        b.arrow(a.name.clone(), a.source, a.target)?;
        taken.insert(a.name.clone());
    }
    for a in base.arrows() {
        let name = fresh_name(&taken, &format!("{}*", a.name));
        taken.insert(name.clone());
        b.arrow(name, a.target, a.source)?;
    }
    let full_quiver = b.build();
    let star = |a: ArrowId| ArrowId(a.0 + m);
    let path = |arrows: Vec<ArrowId>| Path::from_arrows(&full_quiver, arrows).expect("composable by construction");

    let mut relations = Vec::new();
    for v in base.vertex_ids() {
        let mut x = PathElement::zero();
        for a in base.arrows_into(v) {
            x.add_term(path(vec![a, star(a)]), Scalar::one());
        }
        x.add_term(Path::trivial(v), -Scalar::one());
        relations.push(LeavittRelation {
            family: RelationFamily::Ck1a,
            name: format!("ck1a_{}", base.vertex_name(v)),
            element: x,
        });
    }
    for a in base.arrow_ids() {
        let mut x = PathElement::from_path(path(vec![star(a), a]));
        x.add_term(Path::trivial(base.source(a)), -Scalar::one());
        relations.push(LeavittRelation {
            family: RelationFamily::Ck1b,
            name: format!("ck1b_{}", base.arrow_name(a)),
            element: x,
        });
    }
    for a in base.arrow_ids() {
        for b in base.arrow_ids().filter(|&b| b != a && base.target(b) == base.target(a)) {
            relations.push(LeavittRelation {
                family: RelationFamily::Ck1c,
                name: format!("ck1c_{}_{}", base.arrow_name(a), base.arrow_name(b)),
                element: PathElement::from_path(path(vec![star(a), b])),
            });
        }
    }
    let special = base.vertex_ids().map(|v| base.arrows_into(v).max()).collect();
    let base_graded = GradedQuiver::new(base.clone(), vec![-1; m], None)?;
    let mut degrees = vec![-1; m];
    degrees.extend(std::iter::repeat_n(1, m));
    let full = GradedQuiver::new(full_quiver, degrees, None)?;
    Ok(LeavittPresentation { base: base_graded, full, relations, special })
}

impl LeavittPresentation {
    pub fn base(&self) -> &GradedQuiver {
        &self.base
    }

    /// The base arrows followed by their starred copies.
    pub fn full_quiver(&self) -> &GradedQuiver {
        &self.full
    }

    pub fn relations(&self) -> &[LeavittRelation] {
        &self.relations
    }

    pub fn special_arrow(&self, v: VertexId) -> Option<ArrowId> {
        self.special[v.0]
    }

    fn base_quiver(&self) -> &Quiver {
        self.base.quiver()
    }

    fn m(&self) -> usize {
        self.base_quiver().num_arrows()
    }

    /// The presentation as a document: full quiver plus named relations.
    pub fn to_document(&self) -> Document {
        let mut doc = Document::new(self.full.clone());
        doc.relations = self
            .relations
            .iter()
            .map(|r| Relation { name: Some(r.name.clone()), element: r.element.clone() })
            .collect();
        doc
    }

    fn letter_ends(&self, l: Letter) -> (VertexId, VertexId) {
        let q = self.base_quiver();
        match l {
            Letter::Arrow(a) => (q.source(a), q.target(a)),
            Letter::Star(a) => (q.target(a), q.source(a)),
        }
    }

    /// Builds a word from letters in function order; `None` if not composable.
    pub fn word(&self, letters: Vec<Letter>) -> Option<LeavittWord> {
        let first = *letters.first()?;
        let last = *letters.last()?;
        for pair in letters.windows(2) {
            if self.letter_ends(pair[0]).0 != self.letter_ends(pair[1]).1 {
                return None;
            }
        }
        Some(LeavittWord { source: self.letter_ends(last).0, target: self.letter_ends(first).1, letters })
    }

    pub fn word_from_path(&self, p: &Path) -> LeavittWord {
        let m = self.m();
        let letters = p
            .arrows()
            .iter()
            .map(|a| if a.0 < m { Letter::Arrow(*a) } else { Letter::Star(ArrowId(a.0 - m)) })
            .collect();
        LeavittWord { letters, source: p.source(), target: p.target() }
    }

    pub fn path_from_word(&self, w: &LeavittWord) -> Path {
        let m = self.m();
        if w.is_empty() {
            return Path::trivial(w.source);
        }
        let arrows = w
            .letters
            .iter()
            .map(|l| match l {
                Letter::Arrow(a) => *a,
                Letter::Star(a) => ArrowId(a.0 + m),
            })
            .collect();
        Path::from_arrows(self.full.quiver(), arrows).expect("words are composable")
    }

    pub fn element_from_path_element(&self, x: &PathElement) -> Result<LeavittElement> {
        self.full.check_element(x)?;
        let mut out = LeavittElement::zero();
        for (p, c) in x.terms() {
            out.add_term(self.word_from_path(p), c.clone());
        }
        Ok(out)
    }

    pub fn to_path_element(&self, x: &LeavittElement) -> PathElement {
        PathElement::from_terms(x.terms().map(|(w, c)| (self.path_from_word(w), c.clone())))
    }

    fn is_redex(&self, a: Letter, b: Letter) -> bool {
        match (a, b) {
            (Letter::Star(_), Letter::Arrow(_)) => true,
            (Letter::Arrow(s), Letter::Star(t)) => s == t && self.special[self.base_quiver().target(s).0] == Some(s),
            _ => false,
        }
    }

    /// Position of the leftmost reducible pair of letters.
    pub fn find_redex(&self, w: &LeavittWord) -> Option<usize> {
        w.letters.windows(2).position(|pair| self.is_redex(pair[0], pair[1]))
    }

    fn splice(&self, w: &LeavittWord, pos: usize, middle: &[Letter], vertex: VertexId) -> LeavittWord {
        let mut letters = Vec::with_capacity(w.len());
        letters.extend_from_slice(&w.letters[..pos]);
        letters.extend_from_slice(middle);
        letters.extend_from_slice(&w.letters[pos + 2..]);
        if letters.is_empty() {
            return LeavittWord::trivial(vertex);
        }
        LeavittWord { letters, source: w.source, target: w.target }
    }

    /// Applies the rule whose left-hand side starts at `pos`, or `None` if there is none.
    pub fn rewrite_at(&self, w: &LeavittWord, pos: usize) -> Option<LeavittElement> {
        let (a, b) = (*w.letters.get(pos)?, *w.letters.get(pos + 1)?);
        if !self.is_redex(a, b) {
            return None;
        }
        let q = self.base_quiver();
        let mut out = LeavittElement::zero();
        match (a, b) {
            (Letter::Star(x), Letter::Arrow(y)) => {
                if x == y {
                    out.add_term(self.splice(w, pos, &[], q.source(x)), Scalar::one());
                }
            }
            (Letter::Arrow(s), Letter::Star(_)) => {
                let i = q.target(s);
                out.add_term(self.splice(w, pos, &[], i), Scalar::one());
                for t in q.arrows_into(i).filter(|&t| t != s) {
                    out.add_term(self.splice(w, pos, &[Letter::Arrow(t), Letter::Star(t)], i), -Scalar::one());
                }
            }
            _ => unreachable!(),
        }
        Some(out)
    }

    pub fn normal_form(&self, x: &LeavittElement) -> Result<LeavittElement> {
        let mut pending = x.clone();
        let mut done = LeavittElement::zero();
        let mut steps = 0;
        while let Some((w, c)) = pending.pop_first() {
            match self.find_redex(&w) {
                None => done.add_term(w, c),
                Some(pos) => {
                    steps += 1;
                    if steps > MAX_REWRITE_STEPS {
                        return Err(Error::EnumerationBound("rewriting did not terminate".into()));
                    }
                    for (v, e) in self.rewrite_at(&w, pos).expect("redex found").terms() {
                        pending.add_term(v.clone(), &c * e);
                    }
                }
            }
        }
        Ok(done)
    }

    /// Normal form of an element of the path algebra of the full quiver.
    pub fn leavitt_normal_form(&self, x: &PathElement) -> Result<PathElement> {
        let y = self.element_from_path_element(x)?;
        Ok(self.to_path_element(&self.normal_form(&y)?))
    }

    /// Reads an irreducible word as `p q*`.
    pub fn monomial(&self, w: &LeavittWord) -> Option<LeavittMonomial> {
        if self.find_redex(w).is_some() {
            return None;
        }
        let split = w.letters.iter().position(|l| matches!(l, Letter::Star(_))).unwrap_or(w.len());
        let mut p = Vec::new();
        for l in &w.letters[..split] {
            let Letter::Arrow(a) = l else { return None };
            p.push(*a);
        }
        let mut q = Vec::new();
        for l in w.letters[split..].iter().rev() {
            let Letter::Star(a) = l else { return None };
            q.push(*a);
        }
        let vertex = match (p.last(), q.last()) {
            (Some(&a), _) => self.base_quiver().source(a),
            (None, Some(&a)) => self.base_quiver().source(a),
            (None, None) => w.source,
        };
        Some(LeavittMonomial { vertex, p, q })
    }

    /// Irreducible words of length at most `max_len` and the given degree.
    pub fn normal_monomials(&self, degree: i64, max_len: usize) -> Vec<LeavittMonomial> {
        let q = self.base_quiver();
        let paths = q.paths_up_to(max_len);
        let mut out = Vec::new();
        for v in q.vertex_ids() {
            let from_v: Vec<&Path> = paths.iter().filter(|p| p.source() == v).collect();
            for p in &from_v {
                for r in &from_v {
                    if p.len() + r.len() > max_len || r.len() as i64 - p.len() as i64 != degree {
                        continue;
                    }
                    if let (Some(&a), Some(&b)) = (p.arrows().last(), r.arrows().last()) {
                        if a == b && self.special[q.target(a).0] == Some(a) {
                            continue;
                        }
                    }
                    out.push(LeavittMonomial { vertex: v, p: p.arrows().to_vec(), q: r.arrows().to_vec() });
                }
            }
        }
        out.sort();
        out
    }

    /// The overlaps `s s* b` and `a* s s*` of the two rewriting rules.
    pub fn critical_words(&self) -> Vec<LeavittWord> {
        let q = self.base_quiver();
        let mut out = Vec::new();
        for s in self.special.iter().flatten().copied() {
            for b in q.arrows_into(q.target(s)) {
                out.extend(self.word(vec![Letter::Arrow(s), Letter::Star(s), Letter::Arrow(b)]));
                out.extend(self.word(vec![Letter::Star(b), Letter::Arrow(s), Letter::Star(s)]));
            }
        }
        out
    }

    /// First critical word whose two one-step reductions have different normal forms.
    pub fn confluence_failure(&self) -> Result<Option<LeavittWord>> {
        for w in self.critical_words() {
            let left = self.normal_form(&self.rewrite_at(&w, 0).expect("overlap starts with a redex"))?;
            let right = self.normal_form(&self.rewrite_at(&w, 1).expect("overlap ends with a redex"))?;
            if left != right {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}

/// Number of irreducible monomials `p q*` of the given degree with `|p| + |q| <= max_len`.
pub fn leavitt_graded_dim(p: &LeavittPresentation, degree: i64, max_len: usize) -> Result<usize> {
    if degree.unsigned_abs() as usize > max_len {
        return Err(Error::Precondition(format!("word length bound {max_len} is below |{degree}|")));
    }
    Ok(p.normal_monomials(degree, max_len).len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDim {
    pub degree: i64,
    pub max_word_length: usize,
    pub dim: usize,
}
