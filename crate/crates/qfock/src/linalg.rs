//! Small exact-rational linear algebra over sparse vectors.
//!
//! Everything here works over arbitrary ordered coordinate keys, which lets
//! the callers rank sets of wedge vectors, quotient tensors, or raw rows
//! without building dense matrices first.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// An incrementally maintained row echelon basis over sparse vectors.
///
/// Rows are kept normalized with pivot coefficient 1 and are ordered by
/// pivot key. Inserting a vector reduces it against the current rows; a
/// nonzero remainder joins the basis and the rank grows by one.
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<(K, BTreeMap<K, Scalar>)>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis without inserting it; returns the
    /// remainder.
    pub fn reduce(&self, mut v: BTreeMap<K, Scalar>) -> BTreeMap<K, Scalar> {
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                if c.is_zero() {
                    v.remove(pivot);
                    continue;
                }
                for (k, rv) in row {
                    let entry = v.entry(k.clone()).or_insert_with(Scalar::zero);
                    *entry -= &(&c * rv);
                    if entry.is_zero() {
                        v.remove(k);
                    }
                }
            }
        }
        v.retain(|_, c| !c.is_zero());
        v
    }

    /// Inserts `v` into the span. Returns true when the rank increased.
    pub fn insert(&mut self, v: BTreeMap<K, Scalar>) -> bool {
        let v = self.reduce(v);
        let Some((pivot, lead)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading coefficient");
        let normalized: BTreeMap<K, Scalar> = v.iter().map(|(k, c)| (k.clone(), c * &inv)).collect();
        // Back-substitute into existing rows so membership tests stay cheap.
        for (_, row) in self.rows.iter_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                for (k, nv) in &normalized {
                    let entry = row.entry(k.clone()).or_insert_with(Scalar::zero);
                    *entry -= &(&c * nv);
                }
                row.retain(|_, cv| !cv.is_zero());
            }
        }
        let pos = self
            .rows
            .binary_search_by(|(p, _)| p.cmp(&pivot))
            .unwrap_err();
        self.rows.insert(pos, (pivot, normalized));
        true
    }

    /// True when `v` already lies in the span.
    pub fn contains(&self, v: BTreeMap<K, Scalar>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of a family of sparse vectors.
pub fn sparse_rank<K: Ord + Clone>(rows: impl IntoIterator<Item = BTreeMap<K, Scalar>>) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}
