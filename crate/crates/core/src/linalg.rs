//! Sparse incremental row echelon form over the rationals.
//!
//! Each stored row has its pivot at its largest column and pivot coefficient
//! one. Reduction clears pivot columns from the top down, so vectors reduced
//! against the echelon keep only non-pivot columns.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type SparseVec = BTreeMap<usize, Scalar>;

/// `v -= c * w`, dropping cancelled entries.
pub fn sub_scaled(v: &mut SparseVec, c: &Scalar, w: &SparseVec) {
    for (k, x) in w {
        let entry = v.entry(*k).or_insert_with(Scalar::zero);
        *entry -= c * x;
        if entry.is_zero() {
            v.remove(k);
        }
    }
}

pub fn add_scaled(v: &mut SparseVec, c: &Scalar, w: &SparseVec) {
    sub_scaled(v, &-c, w);
}

#[derive(Clone, Debug)]
struct Row {
    v: SparseVec,
    combo: SparseVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    /// The vector was independent and now owns this pivot column.
    Pivot(usize),
    /// The vector was dependent. With tracking on, the map gives coefficients
    /// `c_k` over insertion indices with `sum c_k v_k = 0`.
    Dependent(SparseVec),
}

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
    track: bool,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    /// Records, for every row, which inserted vectors it is built from.
    pub fn with_tracking() -> Echelon {
        Echelon { track: true, ..Echelon::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    fn reduce_with(&self, mut v: SparseVec, mut combo: Option<&mut SparseVec>) -> SparseVec {
        let mut bound: Option<usize> = None;
        loop {
            let next = match bound {
                None => v.keys().rev().find(|k| self.rows.contains_key(k)).copied(),
                Some(b) => v.range(..b).rev().find(|(k, _)| self.rows.contains_key(k)).map(|(k, _)| *k),
            };
            let Some(k) = next else { break };
            let c = v[&k].clone();
            let row = &self.rows[&k];
            sub_scaled(&mut v, &c, &row.v);
            if let Some(combo) = combo.as_deref_mut() {
                sub_scaled(combo, &c, &row.combo);
            }
            bound = Some(k);
        }
        v
    }

    /// The remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        self.reduce_with(v, None)
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn insert(&mut self, v: SparseVec) -> Insert {
        let index = self.inserted;
        self.inserted += 1;
        let mut combo = SparseVec::new();
        if self.track {
            combo.insert(index, Scalar::one());
        }
        let mut v = self.reduce_with(v, self.track.then_some(&mut combo));
        let Some((&pivot, lead)) = v.iter().next_back() else {
            return Insert::Dependent(combo);
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for x in v.values_mut() {
                *x *= &inv;
            }
            for x in combo.values_mut() {
                *x *= &inv;
            }
        }
        self.rows.insert(pivot, Row { v, combo });
        Insert::Pivot(pivot)
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<I: IntoIterator<Item = SparseVec>>(vectors: I) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// A basis of the kernel of the map sending basis vector `j` to `images[j]`.
pub fn kernel(images: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::with_tracking();
    let mut out = Vec::new();
    for v in images {
        if let Insert::Dependent(combo) = e.insert(v.clone()) {
            out.push(combo);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn vec_of(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, x)| (k, int(x))).filter(|(_, x)| !x.is_zero()).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![vec_of(&[(0, 1), (1, 2)]), vec_of(&[(0, 2), (1, 4)]), vec_of(&[(2, 1)])];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn reduction_keeps_non_pivot_columns() {
        let mut e = Echelon::new();
        e.insert(vec_of(&[(0, 1), (2, 2)]));
        let r = e.reduce(vec_of(&[(1, 3), (2, 1)]));
        assert_eq!(r, [(0, frac(-1, 2)), (1, int(3))].into_iter().collect());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let images = vec![vec_of(&[(0, 1)]), vec_of(&[(1, 1)]), vec_of(&[(0, 2), (1, -3)]), SparseVec::new()];
        let ker = kernel(&images);
        assert_eq!(ker.len(), 2);
        for k in ker {
            let mut total = SparseVec::new();
            for (j, c) in &k {
                add_scaled(&mut total, c, &images[*j]);
            }
            assert!(total.is_empty());
        }
    }
}
