//! Truncated cohomology of dg quiver algebras and truncated dimensions of
//! quotient algebras, by exact rational elimination.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::constructions::AlgebraPresentation;
use crate::dg::DgQuiverAlgebra;
use crate::element::PathElement;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Insert, SparseVec};
use crate::quiver::{Path, PathFilter, Quiver, VertexId};

#[derive(Clone, Debug, Default)]
struct Block {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    ideal: Echelon,
    /// The inserted independent vectors, which span the ideal in this block.
    spanning: Vec<SparseVec>,
}

impl Block {
    fn new(paths: Vec<Path>) -> Block {
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Block { paths, index, ..Block::default() }
    }

    fn vector(&self, x: &PathElement) -> SparseVec {
        x.terms().map(|(p, c)| (self.index[p], c.clone())).collect()
    }

    fn add_generator(&mut self, v: SparseVec) {
        if let Insert::Pivot(_) = self.ideal.insert(v.clone()) {
            self.spanning.push(v);
        }
    }

    fn quotient_dim(&self) -> usize {
        self.paths.len() - self.ideal.rank()
    }

    fn normal_paths(&self) -> impl Iterator<Item = &Path> {
        self.paths.iter().enumerate().filter(|(i, _)| !self.ideal.is_pivot(*i)).map(|(_, p)| p)
    }
}

/// `kQ / I` for an ideal generated by length-homogeneous relations, graded by path length.
///
/// Level `l` holds, per (source, target), the paths of length `l` and an
/// echelon basis of `I_l`, built as `R_l + Q_1 I_(l-1) + I_(l-1) Q_1`. Normal
/// forms use the non-pivot paths, which are the smallest in canonical order.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    quiver: Quiver,
    relations: Vec<PathElement>,
    levels: Vec<BTreeMap<(VertexId, VertexId), Block>>,
}

impl GradedQuotient {
    pub fn new(p: &AlgebraPresentation) -> Result<GradedQuotient> {
        if !p.is_length_homogeneous() {
            return Err(Error::Unsupported("relations are not length-homogeneous".into()));
        }
        Ok(GradedQuotient {
            quiver: p.quiver().clone(),
            relations: p.relation_elements().cloned().collect(),
            levels: Vec::new(),
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn computed_levels(&self) -> usize {
        self.levels.len()
    }

    /// Computes all levels up to and including `len`.
    pub fn extend_to(&mut self, len: usize) {
        while self.levels.len() <= len {
            let l = self.levels.len();
            let mut blocks: BTreeMap<(VertexId, VertexId), Block> = BTreeMap::new();
            let mut grouped: BTreeMap<(VertexId, VertexId), Vec<Path>> = BTreeMap::new();
            for p in self.quiver.paths_of_length(l) {
                grouped.entry((p.source(), p.target())).or_default().push(p);
            }
            for (key, paths) in grouped {
                blocks.insert(key, Block::new(paths));
            }
            for r in &self.relations {
                if r.max_length() == Some(l) {
                    let key = r.endpoints().expect("relations have common endpoints");
                    let block = blocks.get_mut(&key).expect("relation paths exist");
                    let v = block.vector(r);
                    block.add_generator(v);
                }
            }
            if l > 0 {
                let prev = &self.levels[l - 1];
                for (&(s, t), block) in prev {
                    for v in &block.spanning {
                        let x: PathElement =
                            PathElement::from_terms(v.iter().map(|(i, c)| (block.paths[*i].clone(), c.clone())));
                        for a in self.quiver.arrows_out_of(t) {
                            let y = PathElement::arrow(&self.quiver, a).mul(&x);
                            let target = blocks.get_mut(&(s, self.quiver.target(a))).unwrap();
                            let w = target.vector(&y);
                            target.add_generator(w);
                        }
                        for a in self.quiver.arrows_into(s) {
                            let y = x.mul(&PathElement::arrow(&self.quiver, a));
                            let target = blocks.get_mut(&(self.quiver.source(a), t)).unwrap();
                            let w = target.vector(&y);
                            target.add_generator(w);
                        }
                    }
                }
            }
            self.levels.push(blocks);
        }
    }

    /// Dimension of the length-`len` piece, optionally restricted to endpoints.
    pub fn dim(&mut self, len: usize, source: Option<VertexId>, target: Option<VertexId>) -> usize {
        self.extend_to(len);
        self.levels[len]
            .iter()
            .filter(|((s, t), _)| source.is_none_or(|v| v == *s) && target.is_none_or(|v| v == *t))
            .map(|(_, b)| b.quotient_dim())
            .sum()
    }

    /// Paths of length `len` that are not leading terms of the ideal.
    pub fn normal_paths(&mut self, len: usize) -> Vec<Path> {
        self.extend_to(len);
        let mut out: Vec<Path> = self.levels[len].values().flat_map(|b| b.normal_paths().cloned()).collect();
        out.sort();
        out
    }

    /// The normal form of `x` modulo the ideal.
    pub fn reduce(&mut self, x: &PathElement) -> PathElement {
        let mut parts: BTreeMap<(usize, VertexId, VertexId), PathElement> = BTreeMap::new();
        for (p, c) in x.terms() {
            parts.entry((p.len(), p.source(), p.target())).or_default().add_term(p.clone(), c.clone());
        }
        let mut out = PathElement::zero();
        for ((len, s, t), part) in parts {
            self.extend_to(len);
            let block = &self.levels[len][&(s, t)];
            let reduced = block.ideal.reduce(block.vector(&part));
            for (i, c) in reduced {
                out.add_term(block.paths[i].clone(), c);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelDims {
    pub length: usize,
    pub total: usize,
    /// Entry `m` is the dimension contributed by paths of length `m`.
    pub by_weight: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionTable {
    pub max_length: usize,
    /// True for length-homogeneous relations; otherwise the values are upper bounds.
    pub exact: bool,
    pub levels: Vec<LevelDims>,
    /// First level whose dimensions are repeated by the next level in every weight.
    pub stabilized_at: Option<usize>,
}

impl DimensionTable {
    pub fn stable_total(&self) -> Option<usize> {
        self.stabilized_at.map(|l| self.levels[l].total)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDim {
    pub degree: i64,
    pub weight: i64,
    pub dim: usize,
    pub exact: bool,
}

fn stabilization(levels: &[LevelDims]) -> Option<usize> {
    levels.windows(2).position(|w| {
        let (a, b) = (&w[0], &w[1]);
        b.by_weight.iter().enumerate().all(|(m, &d)| d == a.by_weight.get(m).copied().unwrap_or(0))
    })
}

/// Dimensions of `span(paths of length <= l) / span(u r v of top length <= l)` for `l <= max_len`.
pub fn quotient_dim_truncated(p: &AlgebraPresentation, max_len: usize) -> DimensionTable {
    let mut levels = Vec::with_capacity(max_len + 1);
    let exact = p.is_length_homogeneous();
    if exact {
        let mut quotient = GradedQuotient::new(p).expect("checked homogeneous");
        let mut by_weight = Vec::new();
        for l in 0..=max_len {
            by_weight.push(quotient.dim(l, None, None));
            levels.push(LevelDims { length: l, total: by_weight.iter().sum(), by_weight: by_weight.clone() });
        }
    } else {
        levels = filtered_levels(p, max_len);
    }
    let stabilized_at = stabilization(&levels);
    DimensionTable { max_length: max_len, exact, levels, stabilized_at }
}

/// One elimination over all paths of length `<= max_len`, adding the
/// generators `u r v` level by level. Pivots are the longest paths, so each
/// level's count of non-pivot paths of length `m` is its weight-`m` entry.
fn filtered_levels(p: &AlgebraPresentation, max_len: usize) -> Vec<LevelDims> {
    let q = p.quiver();
    let paths = q.paths_up_to(max_len);
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut by_target: BTreeMap<VertexId, Vec<&Path>> = BTreeMap::new();
    let mut by_source: BTreeMap<VertexId, Vec<&Path>> = BTreeMap::new();
    for path in &paths {
        by_target.entry(path.target()).or_default().push(path);
        by_source.entry(path.source()).or_default().push(path);
    }
    let mut ideal = Echelon::new();
    let mut levels = Vec::new();
    for l in 0..=max_len {
        for r in p.relation_elements() {
            let top = r.max_length().unwrap();
            if top > l {
                continue;
            }
            let (s, t) = r.endpoints().unwrap();
            for v in by_target.get(&s).into_iter().flatten() {
                for u in by_source.get(&t).into_iter().flatten() {
                    if top + u.len() + v.len() != l {
                        continue;
                    }
                    let x = PathElement::from_path((*u).clone()).mul(r).mul(&PathElement::from_path((*v).clone()));
                    ideal.insert(x.terms().map(|(p, c)| (index[p], c.clone())).collect());
                }
            }
        }
        let mut by_weight = vec![0; l + 1];
        for (i, path) in paths.iter().enumerate() {
            if path.len() <= l && !ideal.is_pivot(i) {
                by_weight[path.len()] += 1;
            }
        }
        levels.push(LevelDims { length: l, total: by_weight.iter().sum(), by_weight });
    }
    levels
}

/// Weightwise (path-length) dimensions of a quotient by length-homogeneous
/// relations, optionally restricted to paths with the given endpoints.
pub fn hilbert_report(
    p: &AlgebraPresentation,
    weights: impl IntoIterator<Item = usize>,
    source: Option<VertexId>,
    target: Option<VertexId>,
) -> Result<Vec<WeightDim>> {
    let mut quotient = GradedQuotient::new(p)?;
    Ok(weights
        .into_iter()
        .map(|w| WeightDim { degree: 0, weight: w as i64, dim: quotient.dim(w, source, target), exact: true })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyEntry {
    pub degree: i64,
    pub weight: i64,
    pub dim: usize,
    pub exact: bool,
    /// Dimension of the `(degree, weight)` piece of the path algebra.
    pub piece_dim: usize,
    pub cocycles_dim: usize,
    pub boundaries_dim: usize,
    #[serde(skip)]
    pub representatives: Vec<PathElement>,
}

fn vector_of(index: &HashMap<Path, usize>, x: &PathElement) -> SparseVec {
    x.terms().map(|(p, c)| (index[p], c.clone())).collect()
}

/// `H^n` of `a` in weight `w`, with cocycle representatives of a basis.
pub fn truncated_cohomology(a: &DgQuiverAlgebra, degree: i64, weight: i64) -> Result<CohomologyEntry> {
    let gq = a.graded_quiver();
    if !gq.has_weights() {
        return Err(Error::Unsupported(
            "no weight grading; use quotient_dim_truncated on the degree-zero presentation".into(),
        ));
    }
    if !a.is_weight_homogeneous() {
        return Err(Error::Unsupported(
            "differential is not declared and verified weight-homogeneous; use quotient_dim_truncated".into(),
        ));
    }
    let report = a.validate();
    if !report.is_valid() {
        return Err(Error::Precondition(format!("invalid dg algebra: {}", report.violations[0].detail)));
    }
    let piece = |n: i64| {
        gq.paths_of_weight(weight, &PathFilter { degree: Some(n), ..PathFilter::default() })
    };
    let here = piece(degree)?;
    let below = piece(degree - 1)?;

    let mut blocks: BTreeMap<(VertexId, VertexId), (Vec<Path>, Vec<Path>)> = BTreeMap::new();
    for p in here {
        blocks.entry((p.source(), p.target())).or_default().0.push(p);
    }
    for p in below {
        blocks.entry((p.source(), p.target())).or_default().1.push(p);
    }

    let mut entry = CohomologyEntry {
        degree,
        weight,
        dim: 0,
        exact: true,
        piece_dim: 0,
        cocycles_dim: 0,
        boundaries_dim: 0,
        representatives: Vec::new(),
    };
    for (here, below) in blocks.into_values() {
        entry.piece_dim += here.len();
        let index: HashMap<Path, usize> = here.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut out_index: HashMap<Path, usize> = HashMap::new();
        let images: Vec<SparseVec> = here
            .iter()
            .map(|p| {
                a.d_path(p)
                    .terms()
                    .map(|(m, c)| {
                        let next = out_index.len();
                        (*out_index.entry(m.clone()).or_insert(next), c.clone())
                    })
                    .collect()
            })
            .collect();
        let cocycles = linalg::kernel(&images);
        let mut quotient = Echelon::new();
        for p in &below {
            if let Insert::Pivot(_) = quotient.insert(vector_of(&index, &a.d_path(p))) {
                entry.boundaries_dim += 1;
            }
        }
        entry.cocycles_dim += cocycles.len();
        for z in cocycles {
            if let Insert::Pivot(_) = quotient.insert(z.clone()) {
                let rep = PathElement::from_terms(z.into_iter().map(|(i, c)| (here[i].clone(), c)));
                entry.representatives.push(rep);
            }
        }
    }
    entry.dim = entry.representatives.len();
    debug_assert_eq!(entry.dim, entry.cocycles_dim - entry.boundaries_dim);
    Ok(entry)
}

/// `truncated_cohomology` over a rectangle of degrees and weights.
pub fn cohomology_table(
    a: &DgQuiverAlgebra,
    degrees: impl IntoIterator<Item = i64> + Clone,
    weights: impl IntoIterator<Item = i64>,
) -> Result<Vec<CohomologyEntry>> {
    let mut out = Vec::new();
    for w in weights {
        for n in degrees.clone() {
            out.push(truncated_cohomology(a, n, w)?);
        }
    }
    Ok(out)
}

/// Re-expresses a sparse vector over `paths` as a path element.
pub fn element_from_vector(paths: &[Path], v: &SparseVec) -> PathElement {
    PathElement::from_terms(v.iter().map(|(i, c)| (paths[*i].clone(), c.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{derived_preprojective, resolve_gldim2, DeformationParameter};
    use crate::dsl::parse;

    fn presentation(text: &str) -> AlgebraPresentation {
        parse(text).unwrap().presentation().unwrap()
    }

    const EXAMPLE: &str = "vertex 1\nvertex 2\narrow alpha 1 -> 2\narrow beta 2 -> 1\nrelation gamma: alpha beta\n";

    #[test]
    fn dual_numbers_stabilize_at_two() {
        let t = quotient_dim_truncated(&presentation("vertex 1\narrow a 1 -> 1\nrelation a a\n"), 4);
        assert!(t.exact);
        assert_eq!(t.stable_total(), Some(2));
        assert_eq!(t.levels[4].by_weight, vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn example_algebra_is_five_dimensional() {
        let t = quotient_dim_truncated(&presentation(EXAMPLE), 4);
        assert_eq!(t.stable_total(), Some(5));
        let mut q = GradedQuotient::new(&presentation(EXAMPLE)).unwrap();
        let names: Vec<String> =
            q.normal_paths(2).iter().map(|p| p.display(&presentation(EXAMPLE).quiver().clone()).to_string()).collect();
        assert_eq!(names, vec!["beta alpha"]);
    }

    #[test]
    fn inhomogeneous_relations_are_flagged() {
        let p = presentation("vertex 1\narrow a 1 -> 1\nrelation a a - e1\n");
        let t = quotient_dim_truncated(&p, 4);
        assert!(!t.exact);
        assert_eq!(t.stable_total(), Some(2));
    }

    #[test]
    fn cohomology_of_resolved_example() {
        let a = resolve_gldim2(&presentation(EXAMPLE)).unwrap();
        let h0: usize = (0..=4).map(|w| truncated_cohomology(&a, 0, w).unwrap().dim).sum();
        assert_eq!(h0, 5);
        for w in 0..=4 {
            let e = truncated_cohomology(&a, -1, w).unwrap();
            assert_eq!(e.dim, 0, "weight {w}");
            for r in &e.representatives {
                assert!(a.apply_d(r).is_zero());
            }
        }
    }

    #[test]
    fn cohomology_refuses_inhomogeneous_input() {
        let q = parse("vertex 1\nvertex 2\narrow a 1 -> 2\n").unwrap().quiver.into_quiver();
        let lambda = DeformationParameter::from_map(&q, &[(VertexId(0), crate::scalar::int(1))].into());
        let pi = derived_preprojective(&q, &lambda).unwrap();
        assert!(matches!(truncated_cohomology(&pi, 0, 0), Err(Error::Unsupported(_))));
        let ungraded = parse("vertex 1\narrow t 1 -> 1 deg -1\n").unwrap().dg_algebra();
        assert!(matches!(truncated_cohomology(&ungraded, 0, 0), Err(Error::Unsupported(_))));
    }
}
