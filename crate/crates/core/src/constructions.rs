//! Generators for the standard dg quiver algebras.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::dg::DgQuiverAlgebra;
use crate::element::{PathElement, Potential};
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, GradedQuiver, Path, Quiver, QuiverBuilder, VertexId};
use crate::scalar::{int, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: Option<String>,
    pub element: PathElement,
}

impl Relation {
    pub fn unnamed(element: PathElement) -> Relation {
        Relation { name: None, element }
    }
}

/// `kQ / (relations)` with all arrows in degree zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    quiver: Quiver,
    relations: Vec<Relation>,
}

impl AlgebraPresentation {
    /// Every relation must be nonzero, live in `quiver`, and have a single
    /// (source, target) pair.
    pub fn new(quiver: Quiver, relations: Vec<Relation>) -> Result<AlgebraPresentation> {
        for (k, r) in relations.iter().enumerate() {
            let label = r.name.clone().unwrap_or_else(|| format!("#{}", k + 1));
            for p in r.element.support() {
                quiver.check_path(p)?;
            }
            if r.element.is_zero() {
                return Err(Error::MalformedRelation(format!("relation {label} is zero")));
            }
            if r.element.endpoints().is_none() {
                return Err(Error::MalformedRelation(format!(
                    "relation {label} mixes paths with different endpoints: {}",
                    r.element.display(&quiver)
                )));
            }
        }
        Ok(AlgebraPresentation { quiver, relations })
    }

    pub fn from_elements(quiver: Quiver, elements: Vec<PathElement>) -> Result<AlgebraPresentation> {
        AlgebraPresentation::new(quiver, elements.into_iter().map(Relation::unnamed).collect())
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation_elements(&self) -> impl Iterator<Item = &PathElement> {
        self.relations.iter().map(|r| &r.element)
    }

    /// Every relation is a combination of paths of one common length.
    pub fn is_length_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| r.element.is_length_homogeneous())
    }

    /// Every support path of every relation has length at least two.
    pub fn is_admissible(&self) -> bool {
        self.relations.iter().all(|r| r.element.min_length().is_some_and(|l| l >= 2))
    }
}

/// The deformation parameter `lambda`, one scalar per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationParameter {
    values: Vec<Scalar>,
}

impl DeformationParameter {
    pub fn zero(quiver: &Quiver) -> DeformationParameter {
        DeformationParameter { values: vec![Scalar::zero(); quiver.num_vertices()] }
    }

    pub fn new(quiver: &Quiver, values: Vec<Scalar>) -> Result<DeformationParameter> {
        if values.len() != quiver.num_vertices() {
            return Err(Error::QuiverMismatch(format!(
                "{} deformation values for {} vertices",
                values.len(),
                quiver.num_vertices()
            )));
        }
        Ok(DeformationParameter { values })
    }

    /// Missing vertices get zero.
    pub fn from_map(quiver: &Quiver, map: &BTreeMap<VertexId, Scalar>) -> DeformationParameter {
        let mut lambda = DeformationParameter::zero(quiver);
        for (v, c) in map {
            lambda.values[v.0] = c.clone();
        }
        lambda
    }

    pub fn get(&self, v: VertexId) -> &Scalar {
        &self.values[v.0]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn to_map(&self) -> BTreeMap<VertexId, Scalar> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (VertexId(i), c.clone()))
            .collect()
    }
}

/// `base`, or `base_2`, `base_3`, ... avoiding names already taken.
pub fn fresh_name(taken: &BTreeSet<String>, base: &str) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    (2..).map(|k| format!("{base}_{k}")).find(|n| !taken.contains(n)).unwrap()
}

/// A builder holding a copy of `q`, keeping its vertex and arrow ids.
fn copy_quiver(q: &Quiver) -> QuiverBuilder {
    let mut b = Quiver::builder();
    for v in q.vertices() {
        b.vertex(v.name.clone(), v.label.clone()).expect("vertex names of a quiver are distinct");
    }
    for a in q.arrows() {
        b.arrow(a.name.clone(), a.source, a.target).expect("arrow names of a quiver are distinct");
    }
    b
}

fn arrow_names(q: &Quiver) -> BTreeSet<String> {
    q.arrows().iter().map(|a| a.name.clone()).collect()
}

fn vertex_names(q: &Quiver) -> BTreeSet<String> {
    q.vertices().iter().map(|v| v.name.clone()).collect()
}

/// Adjoins a degree -1 arrow `rho_r: s(r) -> t(r)` with `d(rho_r) = r` for every relation.
///
/// When every relation is length-homogeneous the result carries weights
/// (old arrows 1, `rho_r` the length of `r`) and is marked weight-homogeneous.
/// Unnamed relations get the names `rho1`, `rho2`, ...
pub fn resolve_gldim2(p: &AlgebraPresentation) -> Result<DgQuiverAlgebra> {
    let q = p.quiver();
    let mut builder = copy_quiver(q);
    let mut taken = arrow_names(q);
    let mut degrees = vec![0i64; q.num_arrows()];
    let mut weights = vec![1i64; q.num_arrows()];
    let mut d = vec![PathElement::zero(); q.num_arrows()];
    for (k, r) in p.relations().iter().enumerate() {
        let (s, t) = r.element.endpoints().expect("presentation relations have common endpoints");
        let base = r.name.clone().unwrap_or_else(|| format!("rho{}", k + 1));
        let name = fresh_name(&taken, &base);
        taken.insert(name.clone());
        builder.arrow(name, s, t)?;
        degrees.push(-1);
        weights.push(r.element.max_length().unwrap_or(0) as i64);
        d.push(r.element.clone());
    }
    let homogeneous = p.is_length_homogeneous();
    let graded = GradedQuiver::new(builder.build(), degrees, homogeneous.then_some(weights))?;
    Ok(DgQuiverAlgebra::new(graded, d, homogeneous))
}

/// Output of [`auslander_rad2`].
#[derive(Clone, Debug)]
pub struct AuslanderData {
    pub presentation: AlgebraPresentation,
    pub dg: DgQuiverAlgebra,
    /// The unprimed vertices `i`.
    pub idempotent: Vec<VertexId>,
}

/// The gldim-two algebra attached to the radical-square-zero algebra of `q`.
///
/// Vertices are `i` (same ids as in `q`) followed by `i'`; arrows are
/// `c_i: i -> i'` and `a_alpha: s(alpha)' -> t(alpha)` with relations
/// `c_{t(alpha)} a_alpha`. The dg model adds `alpha': s(alpha)' -> t(alpha)'`
/// of degree -1 with `d(alpha') = c_{t(alpha)} a_alpha`.
pub fn auslander_rad2(q: &Quiver) -> Result<AuslanderData> {
    if let Some(&v) = q.sources().first() {
        return Err(Error::Precondition(format!("vertex `{}` is a source", q.vertex_name(v))));
    }
    let n = q.num_vertices();
    let mut builder = Quiver::builder();
    let mut vnames = vertex_names(q);
    for v in q.vertices() {
        builder.vertex(v.name.clone(), v.label.clone())?;
    }
    for v in q.vertices() {
        let name = fresh_name(&vnames, &format!("{}'", v.name));
        vnames.insert(name.clone());
        builder.vertex(name, None)?;
    }
    let primed = |v: VertexId| VertexId(v.0 + n);
    let mut anames = BTreeSet::new();
    let mut c = Vec::with_capacity(n);
    for v in q.vertex_ids() {
        let name = fresh_name(&anames, &format!("c_{}", q.vertex_name(v)));
        anames.insert(name.clone());
        c.push(builder.arrow(name, v, primed(v))?);
    }
    let mut a = Vec::with_capacity(q.num_arrows());
    for alpha in q.arrow_ids() {
        let name = fresh_name(&anames, &format!("a_{}", q.arrow_name(alpha)));
        anames.insert(name.clone());
        a.push(builder.arrow(name, primed(q.source(alpha)), q.target(alpha))?);
    }
    let quiver = builder.build();
    let mut relations = Vec::new();
    for alpha in q.arrow_ids() {
        let path = Path::from_arrows(&quiver, vec![c[q.target(alpha).0], a[alpha.0]])?;
        let name = fresh_name(&anames, &format!("{}'", q.arrow_name(alpha)));
        anames.insert(name.clone());
        relations.push(Relation { name: Some(name), element: PathElement::from_path(path) });
    }
    let presentation = AlgebraPresentation::new(quiver, relations)?;
    let dg = resolve_gldim2(&presentation)?;
    Ok(AuslanderData { presentation, dg, idempotent: q.vertex_ids().collect() })
}

/// `sum over decompositions c = u a v of v u`, extended linearly.
pub fn cyclic_derivative(quiver: &Quiver, w: &Potential, a: ArrowId) -> Result<PathElement> {
    if a.0 >= quiver.num_arrows() {
        return Err(Error::UnknownArrow(format!("#{}", a.0)));
    }
    let mut out = PathElement::zero();
    for (c, coeff) in w.element().terms() {
        quiver.check_path(c)?;
        let arrows = c.arrows();
        for k in (0..arrows.len()).filter(|&k| arrows[k] == a) {
            let mut vu = Vec::with_capacity(arrows.len() - 1);
            vu.extend_from_slice(&arrows[k + 1..]);
            vu.extend_from_slice(&arrows[..k]);
            out.add_term(Path::from_parts(quiver.target(a), quiver.source(a), vu), coeff.clone());
        }
    }
    Ok(out)
}

fn check_potential(quiver: &Quiver, w: &Potential) -> Result<()> {
    let graded = GradedQuiver::ungraded(quiver.clone());
    Potential::new(&graded, w.element().clone()).map(|_| ())
}

/// Appends `a*: t(a) -> s(a)` for every arrow and a loop `t_i` at every vertex.
///
/// Returns the builder and the ids of the starred arrows and loops.
fn double_with_loops(q: &Quiver) -> Result<(QuiverBuilder, Vec<ArrowId>, Vec<ArrowId>)> {
    let mut builder = copy_quiver(q);
    let mut taken = arrow_names(q);
    let mut star = Vec::with_capacity(q.num_arrows());
    for a in q.arrows() {
        let name = fresh_name(&taken, &format!("{}*", a.name));
        taken.insert(name.clone());
        star.push(builder.arrow(name, a.target, a.source)?);
    }
    let mut loops = Vec::with_capacity(q.num_vertices());
    for v in q.vertex_ids() {
        let name = fresh_name(&taken, &format!("t_{}", q.vertex_name(v)));
        taken.insert(name.clone());
        loops.push(builder.arrow(name, v, v)?);
    }
    Ok((builder, star, loops))
}

/// `sum_{t(a)=i} a a* - sum_{s(a)=i} a* a` for every vertex `i`.
fn commutator_sums(q: &Quiver, doubled: &Quiver, star: &[ArrowId]) -> Vec<PathElement> {
    let mut out = vec![PathElement::zero(); q.num_vertices()];
    for a in q.arrow_ids() {
        let aa = Path::from_arrows(doubled, vec![a, star[a.0]]).expect("a a* is a path");
        let aa_rev = Path::from_arrows(doubled, vec![star[a.0], a]).expect("a* a is a path");
        out[q.target(a).0].add_term(aa, int(1));
        out[q.source(a).0].add_term(aa_rev, int(-1));
    }
    out
}

/// The Ginzburg dg algebra of a quiver with potential.
pub fn ginzburg(q: &Quiver, w: &Potential) -> Result<DgQuiverAlgebra> {
    check_potential(q, w)?;
    let (builder, star, loops) = double_with_loops(q)?;
    let doubled = builder.build();
    let m = q.num_arrows();
    let mut degrees = vec![0i64; m];
    degrees.extend(std::iter::repeat_n(-1, m));
    degrees.extend(std::iter::repeat_n(-2, q.num_vertices()));
    let mut d = vec![PathElement::zero(); m];
    for a in q.arrow_ids() {
        d.push(cyclic_derivative(q, w, a)?);
    }
    d.extend(commutator_sums(q, &doubled, &star));
    debug_assert_eq!(d.len(), doubled.num_arrows());
    debug_assert_eq!(loops.len(), q.num_vertices());
    let weights = w.homogeneous_length().map(|len| {
        let len = len as i64;
        let mut ws = vec![1i64; m];
        ws.extend(std::iter::repeat_n(len - 1, m));
        ws.extend(std::iter::repeat_n(len, q.num_vertices()));
        ws
    });
    let homogeneous = weights.is_some();
    let graded = GradedQuiver::new(doubled, degrees, weights)?;
    Ok(DgQuiverAlgebra::new(graded, d, homogeneous))
}

/// `kQ / (partial_a W)`, dropping vanishing derivatives.
pub fn jacobian_presentation(q: &Quiver, w: &Potential) -> Result<AlgebraPresentation> {
    check_potential(q, w)?;
    let mut relations = Vec::new();
    for a in q.arrow_ids() {
        let r = cyclic_derivative(q, w, a)?;
        if !r.is_zero() {
            relations.push(Relation { name: Some(format!("d_{}", q.arrow_name(a))), element: r });
        }
    }
    AlgebraPresentation::new(q.clone(), relations)
}

/// The deformed derived preprojective algebra.
///
/// Arrows `a`, `a*` sit in degree 0 and loops `t_i` in degree -1, with
/// `d(t_i) = sum_{t(a)=i} a a* - sum_{s(a)=i} a* a - lambda_i e_i`. Weights are
/// 1 for `a`, `a*` and 2 for `t_i`; the differential is weight-homogeneous
/// exactly when `lambda = 0`.
pub fn derived_preprojective(q: &Quiver, lambda: &DeformationParameter) -> Result<DgQuiverAlgebra> {
    if q.has_oriented_cycle() {
        return Err(Error::Precondition("quiver has an oriented cycle".into()));
    }
    let lambda = DeformationParameter::new(q, lambda.values.clone())?;
    let (builder, star, _) = double_with_loops(q)?;
    let doubled = builder.build();
    let m = q.num_arrows();
    let n = q.num_vertices();
    let mut degrees = vec![0i64; 2 * m];
    degrees.extend(std::iter::repeat_n(-1, n));
    let mut weights = vec![1i64; 2 * m];
    weights.extend(std::iter::repeat_n(2, n));
    let mut d = vec![PathElement::zero(); 2 * m];
    for (i, mut x) in commutator_sums(q, &doubled, &star).into_iter().enumerate() {
        x.add_term(Path::trivial(VertexId(i)), -lambda.get(VertexId(i)).clone());
        d.push(x);
    }
    let graded = GradedQuiver::new(doubled, degrees, Some(weights))?;
    Ok(DgQuiverAlgebra::new(graded, d, lambda.is_zero()))
}

/// Quiver with potential for the cyclic group of order `n` acting with weights `(a1, a2, a3)`.
///
/// Vertices are `0..n`; arrows `x_v: v -> v+a1`, `y_v: v -> v+a2`,
/// `z_v: v -> v+a3` (named `x`, `y`, `z` when `n = 1`). The potential is
/// `sum_v (z y x - z x y)` with each term based at `v`.
pub fn mckay_cyclic(n: u32, weights: [i64; 3]) -> Result<(Quiver, Potential)> {
    if n == 0 {
        return Err(Error::Precondition("group order must be positive".into()));
    }
    let n_i = n as i64;
    if weights.iter().sum::<i64>().rem_euclid(n_i) != 0 {
        return Err(Error::Precondition(format!(
            "weights {:?} do not sum to 0 mod {}",
            weights, n
        )));
    }
    let shift = weights.map(|a| a.rem_euclid(n_i) as usize);
    let n = n as usize;
    let mut builder = Quiver::builder();
    for v in 0..n {
        builder.vertex(v.to_string(), None)?;
    }
    let mut ids = [vec![], vec![], vec![]];
    for (j, letter) in ["x", "y", "z"].iter().enumerate() {
        for v in 0..n {
            let name = if n == 1 { letter.to_string() } else { format!("{letter}{v}") };
            ids[j].push(builder.arrow(name, VertexId(v), VertexId((v + shift[j]) % n))?);
        }
    }
    let quiver = builder.build();
    let mut w = PathElement::zero();
    for v in 0..n {
        // x then y then z, and y then x then z, both starting at v.
        let xyz = vec![ids[2][(v + shift[0] + shift[1]) % n], ids[1][(v + shift[0]) % n], ids[0][v]];
        let yxz = vec![ids[2][(v + shift[0] + shift[1]) % n], ids[0][(v + shift[1]) % n], ids[1][v]];
        w.add_term(Path::from_arrows(&quiver, xyz)?, int(1));
        w.add_term(Path::from_arrows(&quiver, yxz)?, int(-1));
    }
    let potential = Potential::new(&GradedQuiver::ungraded(quiver.clone()), w)?;
    Ok((quiver, potential))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse, parse_element};

    fn example_presentation() -> AlgebraPresentation {
        parse("vertex 1\nvertex 2\narrow alpha 1 -> 2\narrow beta 2 -> 1\nrelation gamma: alpha beta\n")
            .unwrap()
            .presentation()
            .unwrap()
    }

    fn element(q: &Quiver, s: &str) -> PathElement {
        parse_element(q, s).unwrap()
    }

    #[test]
    fn resolution_of_example() {
        let a = resolve_gldim2(&example_presentation()).unwrap();
        let q = a.quiver();
        assert_eq!(q.num_arrows(), 3);
        let g = q.arrow_by_name("gamma").unwrap();
        assert_eq!(q.vertex_name(q.source(g)), "2");
        assert_eq!(q.vertex_name(q.target(g)), "2");
        assert_eq!(a.graded_quiver().degree(g), -1);
        assert_eq!(a.d(g), &element(q, "alpha beta"));
        assert_eq!(a.graded_quiver().weights(), Some(&[1, 1, 2][..]));
        assert!(a.validate().is_valid());
    }

    #[test]
    fn resolution_without_relations_is_identity() {
        let p = parse("vertex 1\narrow a 1 -> 1\n").unwrap().presentation().unwrap();
        let a = resolve_gldim2(&p).unwrap();
        assert_eq!(a.quiver(), p.quiver());
        assert!(a.differentials().iter().all(PathElement::is_zero));
    }

    #[test]
    fn resolution_of_dual_numbers() {
        let p = parse("vertex 1\narrow a 1 -> 1\nrelation a a\n").unwrap().presentation().unwrap();
        let a = resolve_gldim2(&p).unwrap();
        let rho = a.quiver().arrow_by_name("rho1").unwrap();
        assert_eq!(a.graded_quiver().weight(rho), Some(2));
        assert_eq!(a.d(rho), &element(a.quiver(), "a a"));
    }

    #[test]
    fn mixed_endpoints_are_rejected() {
        let doc = parse("vertex 1\nvertex 2\narrow alpha 1 -> 2\narrow beta 2 -> 1\nrelation alpha beta + beta alpha\n")
            .unwrap();
        assert!(matches!(doc.presentation(), Err(Error::MalformedRelation(_))));
    }

    #[test]
    fn auslander_of_loop() {
        let q = parse("vertex 1\narrow alpha 1 -> 1\n").unwrap().quiver.into_quiver();
        let data = auslander_rad2(&q).unwrap();
        let p = &data.presentation;
        assert_eq!(p.quiver().num_vertices(), 2);
        assert_eq!(p.quiver().vertex_name(VertexId(1)), "1'");
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.relations()[0].element, element(p.quiver(), "c_1 a_alpha"));
        let alpha = data.dg.quiver().arrow_by_name("alpha'").unwrap();
        assert_eq!(data.dg.quiver().source(alpha), VertexId(1));
        assert_eq!(data.dg.graded_quiver().degree(alpha), -1);
        assert!(data.dg.validate().is_valid());
    }

    #[test]
    fn auslander_rejects_sources() {
        let q = parse("vertex 1\nvertex 2\narrow a 1 -> 2\n").unwrap().quiver.into_quiver();
        assert_eq!(auslander_rad2(&q).unwrap_err(), Error::Precondition("vertex `1` is a source".into()));
        let two_cycle = parse("vertex 1\nvertex 2\narrow a 1 -> 2\narrow b 2 -> 1\n").unwrap().quiver.into_quiver();
        let data = auslander_rad2(&two_cycle).unwrap();
        assert_eq!(data.presentation.quiver().num_vertices(), 4);
        assert_eq!(data.presentation.quiver().num_arrows(), 4);
        assert_eq!(data.presentation.relations().len(), 2);
    }

    #[test]
    fn cyclic_derivatives_of_loop_powers() {
        let gq = parse("vertex 1\narrow a 1 -> 1\n").unwrap().quiver;
        let q = gq.quiver();
        let a = ArrowId(0);
        let der = |s: &str| {
            let w = Potential::new(&gq, element(q, s)).unwrap();
            cyclic_derivative(q, &w, a).unwrap()
        };
        assert_eq!(der("a"), element(q, "e1"));
        assert_eq!(der("a a"), element(q, "2 a"));
        assert_eq!(der("a a a"), element(q, "3 a a"));
    }

    #[test]
    fn cyclic_derivative_of_two_cycle() {
        let gq = parse("vertex 1\nvertex 2\narrow a 1 -> 2\narrow b 2 -> 1\n").unwrap().quiver;
        let q = gq.quiver();
        let w = Potential::new(&gq, element(q, "a b")).unwrap();
        assert_eq!(cyclic_derivative(q, &w, ArrowId(1)).unwrap(), element(q, "a"));
        assert_eq!(cyclic_derivative(q, &w, ArrowId(0)).unwrap(), element(q, "b"));
    }

    #[test]
    fn ginzburg_of_cubic_loop() {
        let gq = parse("vertex 1\narrow a 1 -> 1\n").unwrap().quiver;
        let w = Potential::new(&gq, element(gq.quiver(), "a a a")).unwrap();
        let g = ginzburg(gq.quiver(), &w).unwrap();
        let q = g.quiver();
        assert_eq!(g.graded_quiver().degrees(), &[0, -1, -2]);
        assert_eq!(g.graded_quiver().weights(), Some(&[1, 2, 3][..]));
        assert_eq!(g.d(ArrowId(1)), &element(q, "3 a a"));
        assert_eq!(g.d(ArrowId(2)), &element(q, "a a* - a* a"));
        assert!(g.check_d_squared().is_ok());
        assert!(g.validate().is_valid());
    }

    #[test]
    fn ginzburg_with_zero_potential() {
        let gq = parse("vertex 1\nvertex 2\narrow a 1 -> 2\n").unwrap().quiver;
        let g = ginzburg(gq.quiver(), &Potential::zero()).unwrap();
        let q = g.quiver();
        assert!(g.d(ArrowId(1)).is_zero());
        assert_eq!(g.d(q.arrow_by_name("t_1").unwrap()), &element(q, "-a* a"));
        assert_eq!(g.d(q.arrow_by_name("t_2").unwrap()), &element(q, "a a*"));
        assert!(!g.graded_quiver().has_weights());
    }

    #[test]
    fn jacobian_of_cubic_loop() {
        let gq = parse("vertex 1\narrow a 1 -> 1\n").unwrap().quiver;
        let w = Potential::new(&gq, element(gq.quiver(), "a a a")).unwrap();
        let p = jacobian_presentation(gq.quiver(), &w).unwrap();
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.relations()[0].element, element(gq.quiver(), "3 a a"));
        assert!(jacobian_presentation(gq.quiver(), &Potential::zero()).unwrap().relations().is_empty());
    }

    #[test]
    fn preprojective_of_a2() {
        let q = parse("vertex 1\nvertex 2\narrow a 1 -> 2\n").unwrap().quiver.into_quiver();
        let pi = derived_preprojective(&q, &DeformationParameter::zero(&q)).unwrap();
        let dq = pi.quiver();
        let t1 = dq.arrow_by_name("t_1").unwrap();
        let t2 = dq.arrow_by_name("t_2").unwrap();
        assert_eq!(pi.d(t1), &element(dq, "-a* a"));
        assert_eq!(pi.d(t2), &element(dq, "a a*"));
        assert!(pi.is_weight_homogeneous());

        let lambda = DeformationParameter::new(&q, vec![int(1), int(-1)]).unwrap();
        let pi = derived_preprojective(&q, &lambda).unwrap();
        assert_eq!(pi.d(t1), &element(dq, "-a* a - e1"));
        assert_eq!(pi.d(t2), &element(dq, "a a* + e2"));
        assert!(!pi.is_declared_homogeneous());
        assert!(pi.validate().is_valid());
    }

    #[test]
    fn preprojective_rejects_cycles() {
        let q = parse("vertex 1\narrow a 1 -> 1\n").unwrap().quiver.into_quiver();
        assert!(matches!(derived_preprojective(&q, &DeformationParameter::zero(&q)), Err(Error::Precondition(_))));
    }

    #[test]
    fn mckay_shapes() {
        let (q, w) = mckay_cyclic(1, [0, 0, 0]).unwrap();
        assert_eq!(q.num_vertices(), 1);
        assert_eq!(w.element(), &element(&q, "z y x - z x y"));
        assert_eq!(cyclic_derivative(&q, &w, ArrowId(0)).unwrap(), element(&q, "z y - y z"));

        let (q, w) = mckay_cyclic(3, [1, 1, 1]).unwrap();
        assert_eq!(q.num_vertices(), 3);
        assert_eq!(q.num_arrows(), 9);
        assert_eq!(w.element().len(), 6);
        assert_eq!(jacobian_presentation(&q, &w).unwrap().relations().len(), 9);

        assert!(matches!(mckay_cyclic(2, [1, 1, 1]), Err(Error::Precondition(_))));
    }
}
