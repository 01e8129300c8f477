//! Finite graded quivers and their paths.
//!
//! Paths use function order: the path `a1 a2 ... al` applies `al` first, so
//! its source is `s(al)` and its target is `t(a1)`. Composition `p * q` is the
//! concatenation `pq` when `s(p) = t(q)` and the zero outcome otherwise.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// Identifier used in the text format (`1`, `2'`, ...).
    pub name: String,
    /// Free-form display label.
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    vertex_index: BTreeMap<String, VertexId>,
    arrow_index: BTreeMap<String, ArrowId>,
}

impl Quiver {
    pub fn builder() -> QuiverBuilder {
        QuiverBuilder::default()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v.0]
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0].name
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_by_name(&self, name: &str) -> Result<ArrowId> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn has_arrow_named(&self, name: &str) -> bool {
        self.arrow_index.contains_key(name)
    }

    pub fn arrows_into(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrow_ids().filter(move |&a| self.target(a) == v)
    }

    pub fn arrows_out_of(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrow_ids().filter(move |&a| self.source(a) == v)
    }

    /// Vertices without incoming arrows.
    pub fn sources(&self) -> Vec<VertexId> {
        self.vertex_ids()
            .filter(|&v| self.arrows_into(v).next().is_none())
            .collect()
    }

    /// True when some nontrivial path is a cycle (loops included).
    pub fn has_oriented_cycle(&self) -> bool {
        // Kahn's algorithm: a cycle exists iff some vertex never reaches in-degree zero.
        let n = self.num_vertices();
        let mut indegree = vec![0usize; n];
        for arrow in &self.arrows {
            indegree[arrow.target.0] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for arrow in self.arrows.iter().filter(|a| a.source.0 == v) {
                indegree[arrow.target.0] -= 1;
                if indegree[arrow.target.0] == 0 {
                    stack.push(arrow.target.0);
                }
            }
        }
        seen < n
    }

    /// Checks that `path` only uses arrows of this quiver and is composable.
    pub fn check_path(&self, path: &Path) -> Result<()> {
        if path.source.0 >= self.num_vertices() || path.target.0 >= self.num_vertices() {
            return Err(Error::QuiverMismatch(format!(
                "path endpoint outside the {} vertices of the quiver",
                self.num_vertices()
            )));
        }
        if path.arrows.is_empty() {
            if path.source != path.target {
                return Err(Error::QuiverMismatch("trivial path with distinct endpoints".into()));
            }
            return Ok(());
        }
        if let Some(bad) = path.arrows.iter().find(|a| a.0 >= self.num_arrows()) {
            return Err(Error::QuiverMismatch(format!("arrow id {} out of range", bad.0)));
        }
        for pair in path.arrows.windows(2) {
            if self.source(pair[0]) != self.target(pair[1]) {
                return Err(Error::QuiverMismatch(format!(
                    "arrows `{}` and `{}` are not composable",
                    self.arrow_name(pair[0]),
                    self.arrow_name(pair[1])
                )));
            }
        }
        let expected_target = self.target(path.arrows[0]);
        let expected_source = self.source(*path.arrows.last().unwrap());
        if path.target != expected_target || path.source != expected_source {
            return Err(Error::QuiverMismatch("stored endpoints disagree with arrows".into()));
        }
        Ok(())
    }

    /// All paths of exactly `len` arrows, in canonical order.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut level: Vec<Path> = self.vertex_ids().map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &level {
                // Extending on the source side keeps lexicographic order.
                for a in self.arrow_ids() {
                    if self.target(a) == p.source {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a);
                        next.push(Path {
                            source: self.source(a),
                            target: if p.arrows.is_empty() { self.target(a) } else { p.target },
                            arrows,
                        });
                    }
                }
            }
            if len > 0 && next.is_empty() {
                return next;
            }
            level = next;
        }
        level.sort();
        level
    }

    /// All paths with at most `max_len` arrows, in canonical order.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        (0..=max_len).flat_map(|l| self.paths_of_length(l)).collect()
    }
}

#[derive(Debug, Default)]
pub struct QuiverBuilder {
    quiver: Quiver,
}

impl QuiverBuilder {
    pub fn vertex(&mut self, name: impl Into<String>, label: Option<String>) -> Result<VertexId> {
        let name = name.into();
        if self.quiver.vertex_index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        let id = VertexId(self.quiver.vertices.len());
        self.quiver.vertex_index.insert(name.clone(), id);
        self.quiver.vertices.push(Vertex { name, label });
        Ok(id)
    }

    pub fn arrow(&mut self, name: impl Into<String>, source: VertexId, target: VertexId) -> Result<ArrowId> {
        let name = name.into();
        if self.quiver.arrow_index.contains_key(&name) {
            return Err(Error::DuplicateArrow(name));
        }
        let n = self.quiver.vertices.len();
        for v in [source, target] {
            if v.0 >= n {
                return Err(Error::DanglingEndpoint { arrow: name, vertex: v.0.to_string() });
            }
        }
        let id = ArrowId(self.quiver.arrows.len());
        self.quiver.arrow_index.insert(name.clone(), id);
        self.quiver.arrows.push(Arrow { name, source, target });
        Ok(id)
    }

    /// Adds an arrow between vertices given by name.
    pub fn arrow_named(&mut self, name: impl Into<String>, source: &str, target: &str) -> Result<ArrowId> {
        let name = name.into();
        let lookup = |v: &str| {
            self.quiver.vertex_index.get(v).copied().ok_or_else(|| Error::DanglingEndpoint {
                arrow: name.clone(),
                vertex: v.to_string(),
            })
        };
        let (s, t) = (lookup(source)?, lookup(target)?);
        self.arrow(name, s, t)
    }

    pub fn has_arrow_named(&self, name: &str) -> bool {
        self.quiver.arrow_index.contains_key(name)
    }

    pub fn build(self) -> Quiver {
        self.quiver
    }
}

/// A path of a quiver, trivial (`e_v`) or a composable sequence of arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn arrow(quiver: &Quiver, a: ArrowId) -> Path {
        Path { source: quiver.source(a), target: quiver.target(a), arrows: vec![a] }
    }

    /// Builds `arrows[0] arrows[1] ...` (last entry applied first).
    pub fn from_arrows(quiver: &Quiver, arrows: Vec<ArrowId>) -> Result<Path> {
        let (Some(&first), Some(&last)) = (arrows.first(), arrows.last()) else {
            return Err(Error::QuiverMismatch("empty arrow list; use a trivial path".into()));
        };
        if first.0 >= quiver.num_arrows() || last.0 >= quiver.num_arrows() {
            return Err(Error::QuiverMismatch("arrow id out of range".into()));
        }
        let path = Path { source: quiver.source(last), target: quiver.target(first), arrows };
        quiver.check_path(&path)?;
        Ok(path)
    }

    pub(crate) fn from_parts(source: VertexId, target: VertexId, arrows: Vec<ArrowId>) -> Path {
        Path { source, target, arrows }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        !self.arrows.is_empty() && self.source == self.target
    }

    /// `self * other`: concatenation when `s(self) = t(other)`, `None` otherwise.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.arrows.len() + other.arrows.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: other.source, target: self.target, arrows })
    }

    /// Vertex at cut position `r`: position 0 is `t(a1)`, position `j >= 1` is `s(aj)`.
    pub fn cut_vertex(&self, quiver: &Quiver, r: usize) -> VertexId {
        if r == 0 {
            self.target
        } else {
            quiver.source(self.arrows[r - 1])
        }
    }

    /// The `l + 1` vertices visited by the path, from the target end.
    pub fn vertex_sequence(&self, quiver: &Quiver) -> Vec<VertexId> {
        (0..=self.len()).map(|r| self.cut_vertex(quiver, r)).collect()
    }

    pub fn passes_through(&self, quiver: &Quiver, v: VertexId) -> bool {
        self.target == v || self.arrows.iter().any(|&a| quiver.source(a) == v)
    }

    /// The subpath made of arrows `start..end`; trivial at the cut vertex when empty.
    pub fn slice(&self, quiver: &Quiver, start: usize, end: usize) -> Path {
        if start == end {
            return Path::trivial(self.cut_vertex(quiver, start));
        }
        let arrows = self.arrows[start..end].to_vec();
        Path {
            source: quiver.source(arrows[arrows.len() - 1]),
            target: quiver.target(arrows[0]),
            arrows,
        }
    }

    /// Writes the path with arrow names, `e<vertex>` when trivial.
    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            return write!(f, "e{}", self.quiver.vertex_name(self.path.source));
        }
        for (i, &a) in self.path.arrows.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.quiver.arrow_name(a))?;
        }
        Ok(())
    }
}

/// Restrictions applied by [`GradedQuiver::basis_paths`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PathFilter {
    pub source: Option<VertexId>,
    pub target: Option<VertexId>,
    pub degree: Option<i64>,
    pub weight: Option<i64>,
}

/// A quiver whose arrows carry a cohomological degree and optionally a weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQuiver {
    quiver: Quiver,
    degrees: Vec<i64>,
    weights: Option<Vec<i64>>,
}

/// A quiver without arrows is weighted, with every path in weight zero.
fn normalize_weights(quiver: &Quiver, weights: Option<Vec<i64>>) -> Option<Vec<i64>> {
    if quiver.num_arrows() == 0 {
        Some(Vec::new())
    } else {
        weights
    }
}

impl GradedQuiver {
    pub fn new(quiver: Quiver, degrees: Vec<i64>, weights: Option<Vec<i64>>) -> Result<GradedQuiver> {
        if degrees.len() != quiver.num_arrows() {
            return Err(Error::QuiverMismatch(format!(
                "{} degrees given for {} arrows",
                degrees.len(),
                quiver.num_arrows()
            )));
        }
        if let Some(w) = &weights {
            if w.len() != quiver.num_arrows() {
                return Err(Error::QuiverMismatch(format!(
                    "{} weights given for {} arrows",
                    w.len(),
                    quiver.num_arrows()
                )));
            }
        }
        let weights = normalize_weights(&quiver, weights);
        Ok(GradedQuiver { quiver, degrees, weights })
    }

    /// All arrows in degree zero, no weights.
    pub fn ungraded(quiver: Quiver) -> GradedQuiver {
        let degrees = vec![0; quiver.num_arrows()];
        let weights = normalize_weights(&quiver, None);
        GradedQuiver { quiver, degrees, weights }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn into_quiver(self) -> Quiver {
        self.quiver
    }

    pub fn degree(&self, a: ArrowId) -> i64 {
        self.degrees[a.0]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    pub fn weight(&self, a: ArrowId) -> Option<i64> {
        self.weights.as_ref().map(|w| w[a.0])
    }

    pub fn has_weights(&self) -> bool {
        self.weights.is_some()
    }

    pub fn with_weights(mut self, weights: Option<Vec<i64>>) -> Result<GradedQuiver> {
        if let Some(w) = &weights {
            if w.len() != self.quiver.num_arrows() {
                return Err(Error::QuiverMismatch("weight vector length".into()));
            }
        }
        self.weights = normalize_weights(&self.quiver, weights);
        Ok(self)
    }

    pub fn path_degree(&self, p: &Path) -> i64 {
        p.arrows.iter().map(|a| self.degrees[a.0]).sum()
    }

    pub fn path_weight(&self, p: &Path) -> Option<i64> {
        self.weights.as_ref().map(|w| p.arrows.iter().map(|a| w[a.0]).sum())
    }

    /// Degree of the prefix `a1 ... ar`, the exponent of the Koszul sign.
    pub fn prefix_degree(&self, p: &Path, r: usize) -> i64 {
        p.arrows[..r].iter().map(|a| self.degrees[a.0]).sum()
    }

    fn matches(&self, p: &Path, filter: &PathFilter) -> bool {
        filter.source.is_none_or(|s| p.source == s)
            && filter.target.is_none_or(|t| p.target == t)
            && filter.degree.is_none_or(|d| self.path_degree(p) == d)
            && filter.weight.is_none_or(|w| self.path_weight(p) == Some(w))
    }

    /// All paths of length at most `max_len` matching `filter`, in canonical order.
    pub fn basis_paths(&self, max_len: usize, filter: &PathFilter) -> Vec<Path> {
        self.quiver
            .paths_up_to(max_len)
            .into_iter()
            .filter(|p| self.matches(p, filter))
            .collect()
    }

    /// All paths of a fixed weight (and optionally degree/endpoints).
    ///
    /// Requires every arrow weight to be positive so that the piece is finite.
    pub fn paths_of_weight(&self, weight: i64, filter: &PathFilter) -> Result<Vec<Path>> {
        let weights = self
            .weights
            .as_ref()
            .ok_or_else(|| Error::Unsupported("quiver carries no weight grading".into()))?;
        if let Some((a, _)) = weights.iter().enumerate().find(|(_, &w)| w <= 0) {
            return Err(Error::EnumerationBound(format!(
                "arrow `{}` has non-positive weight, graded pieces may be infinite",
                self.quiver.arrow_name(ArrowId(a))
            )));
        }
        let mut out = Vec::new();
        if weight < 0 {
            return Ok(out);
        }
        let mut stack: Vec<(Path, i64)> = self
            .quiver
            .vertex_ids()
            .filter(|&v| filter.target.is_none_or(|t| t == v))
            .map(|v| (Path::trivial(v), 0))
            .collect();
        while let Some((p, w)) = stack.pop() {
            if w == weight {
                if self.matches(&p, filter) {
                    out.push(p);
                }
                continue;
            }
            for a in self.quiver.arrow_ids() {
                let wa = weights[a.0];
                if self.quiver.target(a) == p.source && w + wa <= weight {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    let target = if p.arrows.is_empty() { self.quiver.target(a) } else { p.target };
                    stack.push((Path { source: self.quiver.source(a), target, arrows }, w + wa));
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Free-function form of [`Path::compose`].
pub fn compose(p: &Path, q: &Path) -> Option<Path> {
    p.compose(q)
}
