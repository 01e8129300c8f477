//! Differentials on graded path algebras.

use serde::Serialize;

use crate::constructions::{AlgebraPresentation, Relation};
use crate::element::PathElement;
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, GradedQuiver, Path, Quiver};
use crate::scalar::int;

/// A graded path algebra with a differential given on arrows.
///
/// Construction does not check the axioms; see [`DgQuiverAlgebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgQuiverAlgebra {
    quiver: GradedQuiver,
    d: Vec<PathElement>,
    homogeneous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DSquaredReport {
    Ok,
    Failure { arrow: ArrowId, value: PathElement },
}

impl DSquaredReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, DSquaredReport::Ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// A support path of `d(a)` does not live in the quiver.
    Path,
    Endpoint,
    Degree,
    Weight,
    DSquared,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub arrow: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl DgQuiverAlgebra {
    /// `d[a]` is the differential of arrow `a`. `homogeneous` declares that `d`
    /// preserves the weight grading.
    pub fn new(quiver: GradedQuiver, d: Vec<PathElement>, homogeneous: bool) -> DgQuiverAlgebra {
        assert_eq!(d.len(), quiver.quiver().num_arrows(), "one differential per arrow");
        DgQuiverAlgebra { quiver, d, homogeneous }
    }

    pub fn zero_differential(quiver: GradedQuiver) -> DgQuiverAlgebra {
        let n = quiver.quiver().num_arrows();
        let homogeneous = quiver.has_weights();
        DgQuiverAlgebra::new(quiver, vec![PathElement::zero(); n], homogeneous)
    }

    pub fn graded_quiver(&self) -> &GradedQuiver {
        &self.quiver
    }

    pub fn quiver(&self) -> &Quiver {
        self.quiver.quiver()
    }

    pub fn d(&self, a: ArrowId) -> &PathElement {
        &self.d[a.0]
    }

    pub fn differentials(&self) -> &[PathElement] {
        &self.d
    }

    pub fn is_declared_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn with_quiver(self, quiver: GradedQuiver) -> Result<DgQuiverAlgebra> {
        if quiver.quiver() != self.quiver.quiver() {
            return Err(Error::QuiverMismatch("regrading must keep the underlying quiver".into()));
        }
        Ok(DgQuiverAlgebra { quiver, ..self })
    }

    /// Leibniz extension on a single path.
    pub fn d_path(&self, p: &Path) -> PathElement {
        let q = self.quiver();
        let mut out = PathElement::zero();
        let mut sign_degree = 0i64;
        for j in 0..p.len() {
            let a = p.arrows()[j];
            let image = &self.d[a.0];
            if !image.is_zero() {
                let prefix = p.slice(q, 0, j);
                let suffix = p.slice(q, j + 1, p.len());
                let sign = if sign_degree.rem_euclid(2) == 0 { int(1) } else { int(-1) };
                for (m, c) in image.terms() {
                    if let Some(path) = prefix.compose(m).and_then(|pm| pm.compose(&suffix)) {
                        out.add_term(path, &sign * c);
                    }
                }
            }
            sign_degree += self.quiver.degree(a);
        }
        out
    }

    /// Linear extension of [`DgQuiverAlgebra::d_path`], without checking the quiver.
    pub fn apply_d(&self, x: &PathElement) -> PathElement {
        let mut out = PathElement::zero();
        for (p, c) in x.terms() {
            for (m, e) in self.d_path(p).terms() {
                out.add_term(m.clone(), c * e);
            }
        }
        out
    }

    pub fn extend_d(&self, x: &PathElement) -> Result<PathElement> {
        self.quiver.check_element(x)?;
        Ok(self.apply_d(x))
    }

    pub fn check_d_squared(&self) -> DSquaredReport {
        for a in self.quiver().arrow_ids() {
            let value = self.apply_d(&self.d[a.0]);
            if !value.is_zero() {
                return DSquaredReport::Failure { arrow: a, value };
            }
        }
        DSquaredReport::Ok
    }

    pub fn validate(&self) -> ValidationReport {
        let q = self.quiver();
        let mut violations = Vec::new();
        let mut push = |kind, a: ArrowId, detail: String| {
            violations.push(Violation { kind, arrow: q.arrow_name(a).to_string(), detail })
        };
        let mut structurally_sound = true;
        for a in q.arrow_ids() {
            let image = &self.d[a.0];
            if let Err(e) = self.quiver.check_element(image) {
                push(ViolationKind::Path, a, e.to_string());
                structurally_sound = false;
                continue;
            }
            for p in image.support() {
                if p.source() != q.source(a) || p.target() != q.target(a) {
                    push(
                        ViolationKind::Endpoint,
                        a,
                        format!(
                            "`{}` runs {} -> {}, expected {} -> {}",
                            p.display(q),
                            q.vertex_name(p.source()),
                            q.vertex_name(p.target()),
                            q.vertex_name(q.source(a)),
                            q.vertex_name(q.target(a))
                        ),
                    );
                }
                let deg = self.quiver.path_degree(p);
                if deg != self.quiver.degree(a) + 1 {
                    push(
                        ViolationKind::Degree,
                        a,
                        format!("`{}` has degree {}, expected {}", p.display(q), deg, self.quiver.degree(a) + 1),
                    );
                }
            }
            if self.homogeneous {
                match self.quiver.weight(a) {
                    None => push(ViolationKind::Weight, a, "declared homogeneous but no weight grading".into()),
                    Some(w) => {
                        for p in image.support() {
                            let pw = self.quiver.path_weight(p).unwrap_or_default();
                            if pw != w {
                                push(
                                    ViolationKind::Weight,
                                    a,
                                    format!("`{}` has weight {}, expected {}", p.display(q), pw, w),
                                );
                            }
                        }
                    }
                }
            }
        }
        if structurally_sound {
            if let DSquaredReport::Failure { arrow, value } = self.check_d_squared() {
                push(ViolationKind::DSquared, arrow, format!("d^2 = {}", value.display(q)));
            }
        }
        ValidationReport { violations }
    }

    /// True when `validate` reports no weight violations and the flag is set.
    pub fn is_weight_homogeneous(&self) -> bool {
        self.homogeneous && !self.validate().violations.iter().any(|v| v.kind == ViolationKind::Weight)
    }

    /// The degree-zero cohomology as `kQ_0 / (d(degree -1 arrows))`.
    ///
    /// Only meaningful when all arrows have degree at most zero.
    pub fn h0_presentation(&self) -> Result<AlgebraPresentation> {
        let q = self.quiver();
        if let Some(a) = q.arrow_ids().find(|&a| self.quiver.degree(a) > 0) {
            return Err(Error::Unsupported(format!(
                "arrow `{}` has positive degree",
                q.arrow_name(a)
            )));
        }
        let mut builder = Quiver::builder();
        for v in q.vertices() {
            builder.vertex(v.name.clone(), v.label.clone())?;
        }
        let mut new_id = vec![None; q.num_arrows()];
        for a in q.arrow_ids().filter(|&a| self.quiver.degree(a) == 0) {
            new_id[a.0] = Some(builder.arrow(q.arrow_name(a), q.source(a), q.target(a))?);
        }
        let h0 = builder.build();
        let mut relations = Vec::new();
        for a in q.arrow_ids().filter(|&a| self.quiver.degree(a) == -1) {
            let mut r = PathElement::zero();
            for (p, c) in self.d[a.0].terms() {
                let arrows: Option<Vec<ArrowId>> = p.arrows().iter().map(|b| new_id[b.0]).collect();
                let arrows = arrows.ok_or_else(|| {
                    Error::Unsupported(format!("d({}) involves arrows of nonzero degree", q.arrow_name(a)))
                })?;
                let path = Path::from_parts(p.source(), p.target(), arrows);
                r.add_term(path, c.clone());
            }
            if !r.is_zero() {
                relations.push(Relation { name: Some(q.arrow_name(a).to_string()), element: r });
            }
        }
        AlgebraPresentation::new(h0, relations)
    }
}
