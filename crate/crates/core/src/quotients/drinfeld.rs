use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::quiver::{Path, VertexId};
use crate::quotients::FiniteDimAlgebra;
use crate::scalar::Scalar;

/// A tensor word `a0 ⊗ a1 ⊗ ... ⊗ a(p+1)` of basis indices, of degree `-(p+1)`.
/// Words of length one are the basis of `A` in degree zero.
pub type Word = Vec<usize>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DrinfeldElement {
    terms: BTreeMap<Word, Scalar>,
}

impl DrinfeldElement {
    pub fn zero() -> DrinfeldElement {
        DrinfeldElement::default()
    }

    pub fn word(w: Word) -> DrinfeldElement {
        let mut x = DrinfeldElement::zero();
        x.add_term(w, Scalar::one());
        x
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &DrinfeldElement) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), c * x);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }
}

/// Degree of a word: `-(len - 1)`.
pub fn word_degree(w: &Word) -> i64 {
    -(w.len() as i64 - 1)
}

/// The bar-type complex `B` with components `A` in degree 0 and
/// `Ae ⊗ (eAe)^⊗p ⊗ eA` in degree `-(p+1)`, for `p <= p_max`.
#[derive(Clone, Debug)]
pub struct DrinfeldComplex<'a> {
    algebra: &'a FiniteDimAlgebra,
    idempotent: BTreeSet<VertexId>,
    p_max: usize,
    ae: Vec<usize>,
    eae: Vec<usize>,
    ea: Vec<usize>,
}

impl<'a> DrinfeldComplex<'a> {
    pub fn new(algebra: &'a FiniteDimAlgebra, e: &[VertexId], p_max: usize) -> Result<DrinfeldComplex<'a>> {
        if let Some(v) = e.iter().find(|v| v.0 >= algebra.quiver().num_vertices()) {
            return Err(Error::UnknownVertex(format!("#{}", v.0)));
        }
        let idempotent: BTreeSet<VertexId> = e.iter().copied().collect();
        let n = algebra.dim();
        let ae = (0..n).filter(|&i| idempotent.contains(&algebra.source(i))).collect();
        let eae = (0..n)
            .filter(|&i| idempotent.contains(&algebra.source(i)) && idempotent.contains(&algebra.target(i)))
            .collect();
        let ea = (0..n).filter(|&i| idempotent.contains(&algebra.target(i))).collect();
        Ok(DrinfeldComplex { algebra, idempotent, p_max, ae, eae, ea })
    }

    pub fn algebra(&self) -> &FiniteDimAlgebra {
        self.algebra
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    /// Longest word allowed by the truncation.
    pub fn max_word_len(&self) -> usize {
        self.p_max + 2
    }

    pub fn ae(&self) -> &[usize] {
        &self.ae
    }

    pub fn ea(&self) -> &[usize] {
        &self.ea
    }

    pub fn eae(&self) -> &[usize] {
        &self.eae
    }

    /// Dimension of the degree component, or `None` outside the truncation.
    pub fn component_dim(&self, degree: i64) -> Option<usize> {
        if degree == 0 {
            return Some(self.algebra.dim());
        }
        let k = usize::try_from(-degree).ok()?;
        if k == 0 || k > self.p_max + 1 {
            return None;
        }
        Some(self.ae.len() * self.eae.len().pow(k as u32 - 1) * self.ea.len())
    }

    /// Basis words of the degree component, in lexicographic order.
    pub fn basis(&self, degree: i64) -> Vec<Word> {
        if degree == 0 {
            return (0..self.algebra.dim()).map(|i| vec![i]).collect();
        }
        let Ok(k) = usize::try_from(-degree) else { return Vec::new() };
        if k == 0 || k > self.p_max + 1 {
            return Vec::new();
        }
        let mut words: Vec<Word> = self.ae.iter().map(|&i| vec![i]).collect();
        for _ in 1..k {
            words = words
                .into_iter()
                .flat_map(|w| {
                    self.eae.iter().map(move |&j| {
                        let mut w = w.clone();
                        w.push(j);
                        w
                    })
                })
                .collect();
        }
        words
            .into_iter()
            .flat_map(|w| {
                self.ea.iter().map(move |&j| {
                    let mut w = w.clone();
                    w.push(j);
                    w
                })
            })
            .collect()
    }

    /// `sum_{i=0}^{p} (-1)^i a0 ⊗ ... ⊗ a_i a_(i+1) ⊗ ... ⊗ a_(p+1)`.
    pub fn d_word(&self, w: &Word) -> DrinfeldElement {
        let mut out = DrinfeldElement::zero();
        if w.len() < 2 {
            return out;
        }
        for i in 0..w.len() - 1 {
            let sign = if i % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            for (k, c) in self.algebra.mul_basis(w[i], w[i + 1]) {
                let mut merged = Vec::with_capacity(w.len() - 1);
                merged.extend_from_slice(&w[..i]);
                merged.push(*k);
                merged.extend_from_slice(&w[i + 2..]);
                out.add_term(merged, &sign * c);
            }
        }
        out
    }

    pub fn d(&self, x: &DrinfeldElement) -> DrinfeldElement {
        let mut out = DrinfeldElement::zero();
        for (w, c) in x.terms() {
            out.add_scaled(c, &self.d_word(w));
        }
        out
    }

    /// `(a0 ⊗ ... ⊗ a(p+1)) (b0 ⊗ ... ⊗ b(q+1)) = a0 ⊗ ... ⊗ a(p+1) b0 ⊗ ... ⊗ b(q+1)`.
    ///
    /// Errors when the product leaves the truncation.
    pub fn mul_words(&self, x: &Word, y: &Word) -> Result<DrinfeldElement> {
        let len = x.len() + y.len() - 1;
        if len > self.max_word_len() {
            return Err(Error::EnumerationBound(format!(
                "product of degrees {} and {} exceeds the truncation p_max = {}",
                word_degree(x),
                word_degree(y),
                self.p_max
            )));
        }
        let mut out = DrinfeldElement::zero();
        let last = x[x.len() - 1];
        for (k, c) in self.algebra.mul_basis(last, y[0]) {
            let mut w = Vec::with_capacity(len);
            w.extend_from_slice(&x[..x.len() - 1]);
            w.push(*k);
            w.extend_from_slice(&y[1..]);
            out.add_term(w, c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, x: &DrinfeldElement, y: &DrinfeldElement) -> Result<DrinfeldElement> {
        let mut out = DrinfeldElement::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                out.add_scaled(&(a * b), &self.mul_words(u, v)?);
            }
        }
        Ok(out)
    }

    /// First basis word with `d(d(w)) != 0`, over every component in the truncation.
    pub fn d_squared_failure(&self) -> Option<Word> {
        (2..=self.p_max as i64 + 1)
            .flat_map(|k| self.basis(-k))
            .find(|w| !self.d(&self.d_word(w)).is_zero())
    }

    /// All basis words of the truncation, degree 0 first.
    fn all_words(&self) -> Vec<Word> {
        (0..=self.p_max as i64 + 1).flat_map(|k| self.basis(-k)).collect()
    }

    /// Number of basis-word pairs whose product fits the truncation.
    pub fn leibniz_pair_count(&self) -> usize {
        let counts: Vec<usize> = (0..=self.p_max + 1).map(|k| self.component_dim(-(k as i64)).unwrap()).collect();
        let mut total = 0;
        for (i, a) in counts.iter().enumerate() {
            for (j, b) in counts.iter().enumerate() {
                if i + j <= self.p_max + 1 {
                    total += a * b;
                }
            }
        }
        total
    }

    /// First pair of basis words violating `d(xy) = d(x) y + (-1)^|x| x d(y)`.
    pub fn leibniz_failure(&self) -> Option<(Word, Word)> {
        let words = self.all_words();
        for x in &words {
            let dx = self.d_word(x);
            let sign = if word_degree(x).rem_euclid(2) == 0 { Scalar::one() } else { -Scalar::one() };
            for y in &words {
                if x.len() + y.len() - 1 > self.max_word_len() {
                    continue;
                }
                let xy = self.mul_words(x, y).expect("fits the truncation");
                let lhs = self.d(&xy);
                let mut rhs = self.mul(&dx, &DrinfeldElement::word(y.clone())).expect("shorter than xy");
                let xdy = self.mul(&DrinfeldElement::word(x.clone()), &self.d_word(y)).expect("shorter than xy");
                rhs.add_scaled(&sign, &xdy);
                if lhs != rhs {
                    return Some((x.clone(), y.clone()));
                }
            }
        }
        None
    }

    /// `A / im(d^{-1})`: dimension and the basis indices spanning a complement.
    pub fn h0_cokernel(&self) -> (usize, Vec<usize>) {
        let mut image = Echelon::new();
        for w in self.basis(-1) {
            let v: SparseVec = self.d_word(&w).terms().map(|(w, c)| (w[0], c.clone())).collect();
            image.insert(v);
        }
        let basis: Vec<usize> = (0..self.algebra.dim()).filter(|&i| !image.is_pivot(i)).collect();
        (basis.len(), basis)
    }

    pub fn idempotent(&self) -> &BTreeSet<VertexId> {
        &self.idempotent
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DrinfeldH0 {
    pub dim: usize,
    /// Coset representatives of `A / AeA`.
    #[serde(skip)]
    pub basis: Vec<Path>,
    pub span_dim: usize,
    pub cokernel_dim: usize,
}

impl DrinfeldH0 {
    pub fn routes_agree(&self) -> bool {
        self.span_dim == self.cokernel_dim
    }
}

/// `H^0 = A / AeA`, computed from the span of `b e_j b'` and cross-checked
/// against the cokernel of `d^{-1}`.
pub fn drinfeld_h0(a: &FiniteDimAlgebra, e: &[VertexId]) -> Result<DrinfeldH0> {
    let complex = DrinfeldComplex::new(a, e, 0)?;
    let n = a.dim();
    let mut span = Echelon::new();
    for j in complex.idempotent() {
        let ej: SparseVec = [(a.idempotent(*j), Scalar::one())].into();
        for b in 0..n {
            let b_ej = a.mul(&[(b, Scalar::one())].into(), &ej);
            if b_ej.is_empty() {
                continue;
            }
            for b2 in 0..n {
                span.insert(a.mul(&b_ej, &[(b2, Scalar::one())].into()));
            }
        }
    }
    let basis: Vec<Path> = (0..n).filter(|&i| !span.is_pivot(i)).map(|i| a.basis()[i].clone()).collect();
    let (cokernel_dim, _) = complex.h0_cokernel();
    let span_dim = basis.len();
    Ok(DrinfeldH0 { dim: span_dim, basis, span_dim, cokernel_dim })
}
