//! Elements of graded path algebras: finite rational combinations of paths.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, GradedQuiver, Path, Quiver, VertexId};
use crate::scalar::Scalar;

/// A finite linear combination of paths with no stored zero coefficients.
///
/// The support is kept in canonical path order, so equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PathElement {
    terms: BTreeMap<Path, Scalar>,
}

impl PathElement {
    pub fn zero() -> PathElement {
        PathElement::default()
    }

    pub fn from_path(p: Path) -> PathElement {
        PathElement::term(Scalar::one(), p)
    }

    pub fn term(c: Scalar, p: Path) -> PathElement {
        let mut x = PathElement::zero();
        x.add_term(p, c);
        x
    }

    pub fn trivial(v: VertexId) -> PathElement {
        PathElement::from_path(Path::trivial(v))
    }

    pub fn arrow(quiver: &Quiver, a: ArrowId) -> PathElement {
        PathElement::from_path(Path::arrow(quiver, a))
    }

    /// Sum of the trivial paths, the unit of the path algebra.
    pub fn unit(quiver: &Quiver) -> PathElement {
        quiver.vertex_ids().map(PathElement::trivial).fold(PathElement::zero(), |acc, x| acc + x)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Path, Scalar)>) -> PathElement {
        let mut x = PathElement::zero();
        for (p, c) in terms {
            x.add_term(p, c);
        }
        x
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Path> {
        self.terms.keys()
    }

    pub fn coefficient(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> PathElement {
        if c.is_zero() {
            return PathElement::zero();
        }
        PathElement { terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect() }
    }

    /// Keeps the terms whose path satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Path) -> bool) -> PathElement {
        PathElement {
            terms: self.terms.iter().filter(|(p, _)| keep(p)).map(|(p, c)| (p.clone(), c.clone())).collect(),
        }
    }

    /// Bilinear extension of path composition; zero composites are dropped.
    pub fn mul(&self, other: &PathElement) -> PathElement {
        let mut out = PathElement::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = p.compose(q) {
                    out.add_term(pq, a * b);
                }
            }
        }
        out
    }

    /// Common (source, target) of all support paths, if there is one.
    pub fn endpoints(&self) -> Option<(VertexId, VertexId)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.source(), first.target());
        it.all(|p| (p.source(), p.target()) == ends).then_some(ends)
    }

    pub fn max_length(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).max()
    }

    pub fn min_length(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).min()
    }

    /// True when every support path has the same length.
    pub fn is_length_homogeneous(&self) -> bool {
        self.min_length() == self.max_length()
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> crate::dsl::ElementDisplay<'a> {
        crate::dsl::ElementDisplay::new(self, quiver)
    }
}

impl GradedQuiver {
    /// Errors with [`Error::QuiverMismatch`] unless every support path lives in this quiver.
    pub fn check_element(&self, x: &PathElement) -> Result<()> {
        x.support().try_for_each(|p| self.quiver().check_path(p))
    }

    /// Checked multiplication: both factors must live in this quiver.
    pub fn mul(&self, x: &PathElement, y: &PathElement) -> Result<PathElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(x.mul(y))
    }

    pub fn unit(&self) -> PathElement {
        PathElement::unit(self.quiver())
    }

    /// Restriction of `x` to paths of the given degree (and weight).
    pub fn homogeneous_component(&self, x: &PathElement, degree: i64, weight: Option<i64>) -> Result<PathElement> {
        if weight.is_some() && !self.has_weights() {
            return Err(Error::Unsupported("weight requested but the quiver has no weight grading".into()));
        }
        self.check_element(x)?;
        Ok(x.filter(|p| self.path_degree(p) == degree && weight.is_none_or(|w| self.path_weight(p) == Some(w))))
    }

    /// The common degree of all support paths, if `x` is homogeneous and nonzero.
    pub fn element_degree(&self, x: &PathElement) -> Option<i64> {
        let mut degrees = x.support().map(|p| self.path_degree(p));
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    pub fn element_weight(&self, x: &PathElement) -> Option<i64> {
        let mut weights = x.support().map(|p| self.path_weight(p));
        let w = weights.next()??;
        weights.all(|e| e == Some(w)).then_some(w)
    }
}

impl Add for PathElement {
    type Output = PathElement;
    fn add(mut self, rhs: PathElement) -> PathElement {
        self += rhs;
        self
    }
}

impl<'a> Add<&'a PathElement> for &'a PathElement {
    type Output = PathElement;
    fn add(self, rhs: &PathElement) -> PathElement {
        let mut out = self.clone();
        out += rhs.clone();
        out
    }
}

impl AddAssign for PathElement {
    fn add_assign(&mut self, rhs: PathElement) {
        for (p, c) in rhs.terms {
            self.add_term(p, c);
        }
    }
}

impl Sub for PathElement {
    type Output = PathElement;
    fn sub(mut self, rhs: PathElement) -> PathElement {
        self -= rhs;
        self
    }
}

impl<'a> Sub<&'a PathElement> for &'a PathElement {
    type Output = PathElement;
    fn sub(self, rhs: &PathElement) -> PathElement {
        self.clone() - rhs.clone()
    }
}

impl SubAssign for PathElement {
    fn sub_assign(&mut self, rhs: PathElement) {
        for (p, c) in rhs.terms {
            self.add_term(p, -c);
        }
    }
}

impl Neg for PathElement {
    type Output = PathElement;
    fn neg(self) -> PathElement {
        PathElement { terms: self.terms.into_iter().map(|(p, c)| (p, -c)).collect() }
    }
}

impl<'a> Mul<&'a PathElement> for &'a PathElement {
    type Output = PathElement;
    fn mul(self, rhs: &PathElement) -> PathElement {
        PathElement::mul(self, rhs)
    }
}

/// A linear combination of cycles of degree-zero arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    element: PathElement,
}

impl Potential {
    pub fn new(quiver: &GradedQuiver, element: PathElement) -> Result<Potential> {
        quiver.check_element(&element)?;
        for p in element.support() {
            if !p.is_cycle() {
                return Err(Error::InvalidPotential(format!(
                    "`{}` is not a cycle of positive length",
                    p.display(quiver.quiver())
                )));
            }
            if let Some(&a) = p.arrows().iter().find(|&&a| quiver.degree(a) != 0) {
                return Err(Error::InvalidPotential(format!(
                    "arrow `{}` has nonzero degree",
                    quiver.quiver().arrow_name(a)
                )));
            }
        }
        Ok(Potential { element })
    }

    pub fn zero() -> Potential {
        Potential { element: PathElement::zero() }
    }

    pub fn element(&self) -> &PathElement {
        &self.element
    }

    /// Common cycle length when all support cycles have the same length.
    pub fn homogeneous_length(&self) -> Option<usize> {
        if self.element.is_zero() || !self.element.is_length_homogeneous() {
            return None;
        }
        self.element.max_length()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn example_quiver() -> (GradedQuiver, ArrowId, ArrowId, ArrowId) {
        // alpha: 1 -> 2, beta: 2 -> 1, gamma: 2 -> 2 in degree -1.
        let mut b = Quiver::builder();
        let v1 = b.vertex("1", None).unwrap();
        let v2 = b.vertex("2", None).unwrap();
        let alpha = b.arrow("alpha", v1, v2).unwrap();
        let beta = b.arrow("beta", v2, v1).unwrap();
        let gamma = b.arrow("gamma", v2, v2).unwrap();
        let gq = GradedQuiver::new(b.build(), vec![0, 0, -1], None).unwrap();
        (gq, alpha, beta, gamma)
    }

    #[test]
    fn addition_collects_coefficients() {
        let (gq, alpha, beta, _) = example_quiver();
        let q = gq.quiver();
        let a = PathElement::arrow(q, alpha);
        let sum = a.scale(&int(2)) + a.scale(&int(3));
        assert_eq!(sum, a.scale(&int(5)));
        assert!((a.clone() + a.scale(&int(-1))).is_zero());
        let ab = a + PathElement::arrow(q, beta);
        assert_eq!(ab.len(), 2);
    }

    #[test]
    fn multiplication_concatenates() {
        let (gq, alpha, beta, _) = example_quiver();
        let q = gq.quiver();
        let a = PathElement::arrow(q, alpha);
        let b = PathElement::arrow(q, beta);
        let ab = gq.mul(&a, &b).unwrap();
        assert_eq!(ab, PathElement::from_path(Path::from_arrows(q, vec![alpha, beta]).unwrap()));
        assert!(a.mul(&a).is_zero());
        assert_eq!(gq.unit().mul(&ab), ab);
        assert_eq!(ab.mul(&gq.unit()), ab);
    }

    #[test]
    fn homogeneous_components() {
        let (gq, alpha, beta, gamma) = example_quiver();
        let q = gq.quiver();
        let ab = PathElement::from_path(Path::from_arrows(q, vec![alpha, beta]).unwrap());
        let x = ab.clone() + PathElement::arrow(q, gamma);
        assert_eq!(gq.homogeneous_component(&x, 0, None).unwrap(), ab);
        assert!(gq.homogeneous_component(&PathElement::zero(), 3, None).unwrap().is_zero());
        assert_eq!(gq.homogeneous_component(&ab, 0, None).unwrap(), ab);
        assert!(gq.homogeneous_component(&ab, 1, None).unwrap().is_zero());
        assert!(gq.homogeneous_component(&ab, 0, Some(2)).is_err());
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let (gq, _, _, _) = example_quiver();
        let foreign = PathElement::trivial(VertexId(7));
        assert!(matches!(gq.mul(&foreign, &gq.unit()), Err(Error::QuiverMismatch(_))));
    }

    #[test]
    fn potentials_must_be_cycles_in_degree_zero() {
        let (gq, alpha, beta, gamma) = example_quiver();
        let q = gq.quiver();
        let ab = PathElement::from_path(Path::from_arrows(q, vec![alpha, beta]).unwrap());
        assert!(Potential::new(&gq, ab).is_ok());
        assert!(Potential::new(&gq, PathElement::arrow(q, alpha)).is_err());
        assert!(Potential::new(&gq, PathElement::arrow(q, gamma)).is_err());
        assert!(Potential::new(&gq, PathElement::trivial(VertexId(0))).is_err());
    }
}
