use serde::Serialize;

use crate::dg::DgQuiverAlgebra;
use crate::element::PathElement;
use crate::error::{Error, Result};
use crate::quiver::{Path, VertexId};
use crate::scalar::int;

/// Upper bound on the number of correction terms summed by [`ContractingHomotopy::apply`].
pub const MAX_CORRECTION_STEPS: usize = 64;

/// Contracting homotopy on the ideal spanned by paths through a vertex `i`,
/// built from a cycle `x` at `i` with `d(x) = e_i`.
///
/// The insertion formula `h0(a1...al) = (-1)^{|a1...ar|} a1...ar x a(r+1)...al`,
/// with `r` the first cut position whose vertex is `i`, satisfies
/// `d h0 + h0 d = 1 - E` where `E` vanishes on paths with no differential
/// terms before the cut but not in general. [`ContractingHomotopy::apply`]
/// returns `h = h0 (1 + E + E^2 + ...)`, which is exact whenever `E` is
/// nilpotent, and agrees with `h0` whenever `E` vanishes.
#[derive(Clone, Debug)]
pub struct ContractingHomotopy<'a> {
    algebra: &'a DgQuiverAlgebra,
    vertex: VertexId,
    x: PathElement,
}

pub fn contracting_homotopy<'a>(
    algebra: &'a DgQuiverAlgebra,
    vertex: VertexId,
    x: PathElement,
) -> Result<ContractingHomotopy<'a>> {
    let q = algebra.quiver();
    if vertex.0 >= q.num_vertices() {
        return Err(Error::UnknownVertex(format!("#{}", vertex.0)));
    }
    if x.is_zero() || x.support().any(|p| p.source() != vertex || p.target() != vertex) {
        return Err(Error::Precondition(format!(
            "contraction must be a nonzero combination of cycles at `{}`",
            q.vertex_name(vertex)
        )));
    }
    let dx = algebra.extend_d(&x)?;
    if dx != PathElement::trivial(vertex) {
        return Err(Error::Precondition(format!(
            "d({}) = {}, expected e{}",
            x.display(q),
            dx.display(q),
            q.vertex_name(vertex)
        )));
    }
    Ok(ContractingHomotopy { algebra, vertex, x })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomotopyFormula {
    /// The bare insertion formula `h0`.
    Insertion,
    /// `h0` followed by the correction series.
    Corrected,
}

impl ContractingHomotopy<'_> {
    pub fn vertex(&self) -> VertexId {
        self.vertex
    }

    pub fn contraction(&self) -> &PathElement {
        &self.x
    }

    /// The insertion formula on a single path.
    pub fn insertion(&self, p: &Path) -> Result<PathElement> {
        let q = self.algebra.quiver();
        let r = (0..=p.len()).find(|&r| p.cut_vertex(q, r) == self.vertex).ok_or_else(|| {
            Error::Precondition(format!(
                "`{}` does not pass through `{}`",
                p.display(q),
                q.vertex_name(self.vertex)
            ))
        })?;
        let sign = if self.algebra.graded_quiver().prefix_degree(p, r).rem_euclid(2) == 0 { int(1) } else { int(-1) };
        let prefix = PathElement::from_path(p.slice(q, 0, r));
        let suffix = PathElement::from_path(p.slice(q, r, p.len()));
        Ok(prefix.mul(&self.x).mul(&suffix).scale(&sign))
    }

    pub fn insertion_element(&self, y: &PathElement) -> Result<PathElement> {
        let mut out = PathElement::zero();
        for (p, c) in y.terms() {
            out += self.insertion(p)?.scale(c);
        }
        Ok(out)
    }

    /// `E(y) = y - d h0(y) - h0 d(y)`.
    pub fn defect(&self, y: &PathElement) -> Result<PathElement> {
        let dh = self.algebra.apply_d(&self.insertion_element(y)?);
        let hd = self.insertion_element(&self.algebra.apply_d(y))?;
        Ok(y - &dh - hd)
    }

    pub fn apply_element(&self, y: &PathElement) -> Result<PathElement> {
        self.algebra.graded_quiver().check_element(y)?;
        let mut total = y.clone();
        let mut term = y.clone();
        for _ in 0..MAX_CORRECTION_STEPS {
            term = self.defect(&term)?;
            if term.is_zero() {
                return self.insertion_element(&total);
            }
            total += term.clone();
        }
        Err(Error::Precondition(format!(
            "correction series did not terminate within {MAX_CORRECTION_STEPS} steps"
        )))
    }

    pub fn apply(&self, p: &Path) -> Result<PathElement> {
        self.apply_element(&PathElement::from_path(p.clone()))
    }

    fn evaluate(&self, formula: HomotopyFormula, y: &PathElement) -> Result<PathElement> {
        match formula {
            HomotopyFormula::Insertion => self.insertion_element(y),
            HomotopyFormula::Corrected => self.apply_element(y),
        }
    }

    /// `(d h + h d)(p)`.
    pub fn chain_defect_image(&self, formula: HomotopyFormula, p: &Path) -> Result<PathElement> {
        let y = PathElement::from_path(p.clone());
        let dh = self.algebra.apply_d(&self.evaluate(formula, &y)?);
        let hd = self.evaluate(formula, &self.algebra.apply_d(&y))?;
        Ok(dh + hd)
    }

    pub fn verify(&self, formula: HomotopyFormula, max_len: usize) -> ContractionReport {
        let q = self.algebra.quiver();
        let mut checked = 0;
        for p in q.paths_up_to(max_len).into_iter().filter(|p| p.passes_through(q, self.vertex)) {
            checked += 1;
            let outcome = self.chain_defect_image(formula, &p);
            let failure = match outcome {
                Ok(image) if image == PathElement::from_path(p.clone()) => continue,
                Ok(image) => format!("(dh+hd)({}) = {}", p.display(q), image.display(q)),
                Err(e) => format!("at {}: {}", p.display(q), e),
            };
            return ContractionReport { checked_paths: checked, failure: Some(failure), max_length: max_len };
        }
        ContractionReport { checked_paths: checked, failure: None, max_length: max_len }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    pub max_length: usize,
    pub checked_paths: usize,
    /// First failing path, or the precondition that failed.
    pub failure: Option<String>,
}

impl ContractionReport {
    pub fn is_ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `(d h + h d)(p) = p` for every path of length at most `max_len` through `vertex`.
pub fn verify_contraction(
    algebra: &DgQuiverAlgebra,
    vertex: VertexId,
    x: PathElement,
    max_len: usize,
) -> ContractionReport {
    match contracting_homotopy(algebra, vertex, x) {
        Ok(h) => h.verify(HomotopyFormula::Corrected, max_len),
        Err(e) => ContractionReport { max_length: max_len, checked_paths: 0, failure: Some(e.to_string()) },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse, parse_element};

    const SYNTHETIC: &str = "\
vertex 1
vertex 2
vertex 3
arrow alpha 2 -> 1
arrow beta 3 -> 2
arrow x 2 -> 2 deg -1
d x = e2
";

    #[test]
    fn insertion_on_simple_paths() {
        let a = parse(SYNTHETIC).unwrap().dg_algebra();
        let q = a.quiver();
        let x = parse_element(q, "x").unwrap();
        let h = contracting_homotopy(&a, VertexId(1), x.clone()).unwrap();
        assert_eq!(h.apply(&Path::trivial(VertexId(1))).unwrap(), x);
        let ab = parse_element(q, "alpha beta").unwrap();
        let p = ab.support().next().unwrap().clone();
        assert_eq!(h.apply(&p).unwrap(), parse_element(q, "alpha x beta").unwrap());
        assert_eq!(h.chain_defect_image(HomotopyFormula::Corrected, &p).unwrap(), ab);
        let px = x.support().next().unwrap().clone();
        assert_eq!(h.apply(&px).unwrap(), parse_element(q, "x x").unwrap());
        assert_eq!(h.chain_defect_image(HomotopyFormula::Corrected, &px).unwrap(), x);
        assert!(h.verify(HomotopyFormula::Corrected, 8).is_ok());
        assert!(h.verify(HomotopyFormula::Insertion, 8).is_ok());
    }

    #[test]
    fn length_zero_checks_only_the_idempotent() {
        let a = parse(SYNTHETIC).unwrap().dg_algebra();
        let x = parse_element(a.quiver(), "x").unwrap();
        let report = verify_contraction(&a, VertexId(1), x, 0);
        assert_eq!(report.checked_paths, 1);
        assert!(report.is_ok());
    }

    #[test]
    fn bad_contraction_is_reported() {
        let a = parse("vertex 1\narrow a 1 -> 1\narrow x 1 -> 1 deg -1\nd x = e1 + a\n").unwrap().dg_algebra();
        let x = parse_element(a.quiver(), "x").unwrap();
        let report = verify_contraction(&a, VertexId(0), x, 3);
        assert!(!report.is_ok());
        assert_eq!(report.checked_paths, 0);
    }

    // A differential term that skips the cut vertex breaks the bare insertion formula.
    const SKEW: &str = "\
vertex i
vertex j
arrow x i -> i deg -1
arrow g i -> i
arrow b i -> j
arrow a i -> j deg -1
d x = ei
d a = b g
";

    #[test]
    fn insertion_formula_needs_correction() {
        let alg = parse(SKEW).unwrap().dg_algebra();
        assert!(alg.validate().is_valid());
        let q = alg.quiver();
        let h = contracting_homotopy(&alg, VertexId(0), parse_element(q, "x").unwrap()).unwrap();
        let a = parse_element(q, "a").unwrap();
        let p = a.support().next().unwrap().clone();
        assert_eq!(
            h.chain_defect_image(HomotopyFormula::Insertion, &p).unwrap(),
            parse_element(q, "a - b g x + b x g").unwrap()
        );
        assert_eq!(h.chain_defect_image(HomotopyFormula::Corrected, &p).unwrap(), a);
        assert!(!h.verify(HomotopyFormula::Insertion, 3).is_ok());
        assert!(h.verify(HomotopyFormula::Corrected, 6).is_ok());
    }
}
