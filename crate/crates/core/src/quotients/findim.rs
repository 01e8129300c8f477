use std::collections::HashMap;

use crate::constructions::AlgebraPresentation;
use crate::element::PathElement;
use crate::error::{Error, Result};
use crate::homology::GradedQuotient;
use crate::linalg::{add_scaled, SparseVec};
use crate::quiver::{Path, Quiver, VertexId};
use crate::scalar::Scalar;

/// Associativity is checked on every triple up to this dimension and on a
/// deterministic sample above it.
const EXHAUSTIVE_ASSOCIATIVITY_DIM: usize = 30;

/// A finite-dimensional quotient `kQ / I` with a basis of normal-form paths.
#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    presentation: AlgebraPresentation,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    table: Vec<Vec<SparseVec>>,
}

/// Materializes `kQ / I` when the length-graded quotient vanishes at some length below `max_len`.
///
/// Only length-homogeneous relations are supported.
pub fn build_findim(p: &AlgebraPresentation, max_len: usize) -> Result<FiniteDimAlgebra> {
    let mut quotient = GradedQuotient::new(p)?;
    let top = (0..max_len)
        .find(|&l| quotient.dim(l, None, None) == 0)
        .ok_or(Error::NoStabilization { bound: max_len })?;
    let basis: Vec<Path> = (0..top).flat_map(|l| quotient.normal_paths(l)).collect();
    let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut table = vec![vec![SparseVec::new(); basis.len()]; basis.len()];
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let Some(xy) = x.compose(y) else { continue };
            if xy.len() >= top {
                continue;
            }
            let reduced = quotient.reduce(&PathElement::from_path(xy));
            table[i][j] = reduced.terms().map(|(p, c)| (index[p], c.clone())).collect();
        }
    }
    let algebra = FiniteDimAlgebra { presentation: p.clone(), basis, index, table };
    if let Some((i, j, k)) = algebra.associativity_failure() {
        return Err(Error::Precondition(format!("structure constants not associative at ({i}, {j}, {k})")));
    }
    Ok(algebra)
}

impl FiniteDimAlgebra {
    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        self.presentation.quiver()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Basis index of the trivial path `e_v`.
    pub fn idempotent(&self, v: VertexId) -> usize {
        self.index[&Path::trivial(v)]
    }

    pub fn source(&self, i: usize) -> VertexId {
        self.basis[i].source()
    }

    pub fn target(&self, i: usize) -> VertexId {
        self.basis[i].target()
    }

    /// `b_i b_j` in the basis.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                let prod: Scalar = a * b;
                add_scaled(&mut out, &prod, &self.table[*i][*j]);
            }
        }
        out
    }

    pub fn unit(&self) -> SparseVec {
        self.quiver().vertex_ids().map(|v| (self.idempotent(v), Scalar::from_integer(1.into()))).collect()
    }

    pub fn to_element(&self, x: &SparseVec) -> PathElement {
        PathElement::from_terms(x.iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())))
    }

    fn associative_at(&self, i: usize, j: usize, k: usize) -> bool {
        let left = self.mul(&self.table[i][j], &[(k, Scalar::from_integer(1.into()))].into());
        let right = self.mul(&[(i, Scalar::from_integer(1.into()))].into(), &self.table[j][k]);
        left == right
    }

    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if n <= EXHAUSTIVE_ASSOCIATIVITY_DIM {
            Box::new((0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))))
        } else {
            Box::new((0..n * n * 8).map(move |s| (s % n, (s * 7 + 3) % n, (s * 13 + 5) % n)))
        };
        for (i, j, k) in triples {
            if !self.associative_at(i, j, k) {
                return Some((i, j, k));
            }
        }
        None
    }

    /// Checks that the sum of the idempotents is a two-sided unit.
    pub fn check_unit(&self) -> bool {
        let one = self.unit();
        (0..self.dim()).all(|i| {
            let b: SparseVec = [(i, Scalar::from_integer(1.into()))].into();
            self.mul(&one, &b) == b && self.mul(&b, &one) == b
        })
    }
}
