//! Sparse exact linear algebra over a field.
//!
//! Vectors are ordered maps from an arbitrary ordered key type to nonzero
//! coefficients. [`Echelon`] maintains a row-echelon basis of a subspace and
//! answers span membership and rank queries incrementally.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::ring::{Field, Ring};

pub type SparseVec<K, F> = BTreeMap<K, F>;

/// Adds `coef * src` into `dst`, dropping entries that cancel.
pub fn axpy<K: Ord + Clone, R: Ring>(dst: &mut SparseVec<K, R>, coef: &R, src: &SparseVec<K, R>) {
    if coef.is_zero() {
        return;
    }
    for (k, v) in src {
        add_entry(dst, k.clone(), coef.mul(v));
    }
}

/// Adds `value` to the entry at `key`, removing the entry if it becomes zero.
pub fn add_entry<K: Ord, R: Ring>(dst: &mut SparseVec<K, R>, key: K, value: R) {
    if value.is_zero() {
        return;
    }
    match dst.entry(key) {
        alloc::collections::btree_map::Entry::Vacant(e) => {
            e.insert(value);
        }
        alloc::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get().add(&value);
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// Row-echelon basis of a subspace. Each row is keyed by its pivot, which is
/// its smallest key, and has pivot coefficient one.
#[derive(Clone, Debug)]
pub struct Echelon<K, F> {
    rows: BTreeMap<K, SparseVec<K, F>>,
}

impl<K: Ord + Clone, F: Field> Default for Echelon<K, F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone, F: Field> Echelon<K, F> {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn is_pivot(&self, key: &K) -> bool {
        self.rows.contains_key(key)
    }

    /// Reduces `v` modulo the subspace. The result contains no pivot keys.
    pub fn reduce(&self, mut v: SparseVec<K, F>) -> SparseVec<K, F> {
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().find(|k| self.rows.contains_key(*k)).cloned(),
                Some(c) => v
                    .range((core::ops::Bound::Excluded(c.clone()), core::ops::Bound::Unbounded))
                    .map(|(k, _)| k)
                    .find(|k| self.rows.contains_key(*k))
                    .cloned(),
            };
            let Some(p) = next else { break };
            let coef = v[&p].neg();
            axpy(&mut v, &coef, &self.rows[&p]);
            cursor = Some(p);
        }
        v
    }

    /// Inserts `v`; returns `true` if the rank grew.
    pub fn insert(&mut self, v: SparseVec<K, F>) -> bool {
        let mut r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("nonzero field element is invertible");
        for c in r.values_mut() {
            *c = c.mul(&inv);
        }
        self.rows.insert(pivot, r);
        true
    }

    pub fn contains(&self, v: &SparseVec<K, F>) -> bool {
        self.reduce(v.clone()).is_empty()
    }
}

/// Rank of a family of vectors.
pub fn rank<K: Ord + Clone, F: Field>(vectors: impl IntoIterator<Item = SparseVec<K, F>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Builds a sparse vector from a list of `(key, coefficient)` pairs.
pub fn sparse<K: Ord, R: Ring>(entries: impl IntoIterator<Item = (K, R)>) -> SparseVec<K, R> {
    let mut v = BTreeMap::new();
    for (k, c) in entries {
        add_entry(&mut v, k, c);
    }
    v
}

/// Keys of `universe` that are not pivots of `e`: a basis of the quotient
/// space `span(universe) / span(e)` when `e` lives inside `span(universe)`.
pub fn quotient_basis<K: Ord + Clone, F: Field>(e: &Echelon<K, F>, universe: &[K]) -> Vec<K> {
    universe.iter().filter(|k| !e.is_pivot(k)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Fp, Q};

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn span_membership_over_rationals() {
        let mut e = Echelon::<u32, Q>::new();
        assert!(e.insert(sparse([(0, q(1)), (1, q(2))])));
        assert!(e.insert(sparse([(1, q(1)), (2, q(1))])));
        assert!(!e.insert(sparse([(0, q(1)), (1, q(3)), (2, q(1))])));
        assert!(e.contains(&sparse([(0, q(2)), (1, q(3)), (2, q(-1))])));
        assert!(!e.contains(&sparse([(2, q(1))])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn characteristic_two_collapses() {
        let v = sparse([(0u8, Fp::<2>::one()), (1, Fp::one())]);
        let w = sparse([(0u8, Fp::<2>::one()), (1, Fp::new(-1))]);
        assert_eq!(rank([v, w]), 1);
    }

    #[test]
    fn quotient_basis_skips_pivots() {
        let mut e = Echelon::<u32, Q>::new();
        e.insert(sparse([(1, q(1)), (2, q(-1))]));
        assert_eq!(quotient_basis(&e, &[0, 1, 2]), alloc::vec![0, 2]);
    }
}
