//! Eventually periodic subsets of ℕ and grid-periodic set families over ℕᵏ.
//!
//! A [`SemilinearSet`] is stored in canonical form: a preperiod `N₀`, a period
//! `P ≥ 1` and the membership table on `[0, N₀ + P)`. For `n ≥ N₀` membership
//! depends only on `(n − N₀) mod P`. The period is whatever the producer
//! detected and need not be minimal; comparisons refine both operands to a
//! common `(max N₀, lcm P)` first.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, Eq)]
pub struct SemilinearSet {
    preperiod: usize,
    period: usize,
    table: Vec<bool>,
}

impl PartialEq for SemilinearSet {
    fn eq(&self, other: &Self) -> bool {
        let (n0, p) = common_shape(&[self, other]);
        (0..n0 + p).all(|n| self.contains(n) == other.contains(n))
    }
}

/// `(max preperiod, lcm period)` of a family of sets.
pub fn common_shape(sets: &[&SemilinearSet]) -> (usize, usize) {
    sets.iter().fold((0, 1), |(n0, p), s| (n0.max(s.preperiod), p.lcm(&s.period)))
}

impl SemilinearSet {
    /// Builds a set from its membership table. `table.len()` must equal
    /// `preperiod + period`.
    pub fn from_table(preperiod: usize, period: usize, table: Vec<bool>) -> SemilinearSet {
        assert!(period >= 1, "period must be positive");
        assert_eq!(table.len(), preperiod + period, "table must cover [0, N0 + P)");
        SemilinearSet { preperiod, period, table }
    }

    pub fn empty() -> SemilinearSet {
        Self::from_table(0, 1, vec![false])
    }

    pub fn naturals() -> SemilinearSet {
        Self::from_table(0, 1, vec![true])
    }

    /// `sporadic ∪ ⋃ {a + jp : j ≥ 0}` over the given `(a, p)` progressions.
    pub fn from_parts(sporadic: &[usize], progressions: &[(usize, usize)]) -> SemilinearSet {
        assert!(progressions.iter().all(|&(_, p)| p >= 1), "progression periods must be positive");
        let n0 = sporadic
            .iter()
            .map(|&n| n + 1)
            .chain(progressions.iter().map(|&(a, _)| a))
            .max()
            .unwrap_or(0);
        let p = progressions.iter().fold(1usize, |acc, &(_, q)| acc.lcm(&q));
        let table = (0..n0 + p)
            .map(|n| sporadic.contains(&n) || progressions.iter().any(|&(a, q)| n >= a && (n - a) % q == 0))
            .collect();
        Self::from_table(n0, p, table)
    }

    pub fn preperiod(&self) -> usize {
        self.preperiod
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// Folds `n` into the representative range `[0, N₀ + P)`.
    pub fn fold(&self, n: usize) -> usize {
        fold(n, self.preperiod, self.period)
    }

    pub fn contains(&self, n: usize) -> bool {
        self.table[self.fold(n)]
    }

    /// Same set, re-expressed with a larger preperiod and a multiple period.
    pub fn refine(&self, preperiod: usize, period: usize) -> SemilinearSet {
        assert!(preperiod >= self.preperiod && period % self.period == 0);
        let table = (0..preperiod + period).map(|n| self.contains(n)).collect();
        Self::from_table(preperiod, period, table)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> SemilinearSet {
        let (n0, p) = common_shape(&[self, other]);
        let table = (0..n0 + p).map(|n| f(self.contains(n), other.contains(n))).collect();
        Self::from_table(n0, p, table)
    }

    pub fn union(&self, other: &Self) -> SemilinearSet {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> SemilinearSet {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn complement(&self) -> SemilinearSet {
        Self::from_table(self.preperiod, self.period, self.table.iter().map(|b| !b).collect())
    }

    /// `{n + c : n ∈ self}`.
    pub fn shift_by(&self, c: usize) -> SemilinearSet {
        let mut table = vec![false; c];
        table.extend_from_slice(&self.table);
        Self::from_table(self.preperiod + c, self.period, table)
    }

    /// Whether `ℕ \ self` is infinite.
    pub fn misses_infinitely_many(&self) -> bool {
        self.table[self.preperiod..].iter().any(|b| !b)
    }

    pub fn is_empty(&self) -> bool {
        self.table.iter().all(|b| !b)
    }

    /// Members below the preperiod.
    pub fn sporadic(&self) -> Vec<usize> {
        (0..self.preperiod).filter(|&n| self.table[n]).collect()
    }

    /// Progressions `(a, P)` covering the periodic tail.
    pub fn progressions(&self) -> Vec<(usize, usize)> {
        (self.preperiod..self.preperiod + self.period)
            .filter(|&n| self.table[n])
            .map(|n| (n, self.period))
            .collect()
    }

    /// The smallest natural not in the set, if any.
    pub fn least_missing(&self) -> Option<usize> {
        (0..self.preperiod + self.period).find(|&n| !self.table[n])
    }
}

pub(crate) fn fold(n: usize, preperiod: usize, period: usize) -> usize {
    if n < preperiod + period {
        n
    } else {
        preperiod + (n - preperiod) % period
    }
}

/// Length spectra of all core vertices, computed together.
#[derive(Debug, Clone)]
pub struct Spectra {
    pub preperiod: usize,
    pub period: usize,
    sets: Vec<SemilinearSet>,
}

impl Spectra {
    pub fn of(&self, v: VertexId) -> &SemilinearSet {
        &self.sets[v]
    }

    pub fn fold(&self, n: usize) -> usize {
        fold(n, self.preperiod, self.period)
    }
}

/// `{n : some core path of length n has range v}` for every core vertex `v`.
///
/// Iterates the boolean "receives a path of length n" vector until it
/// repeats; the first repeat gives a common preperiod and period.
pub fn length_spectra(g: &Graph) -> Spectra {
    let n = g.vertex_count();
    let mut seen: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
    let mut history: Vec<Vec<bool>> = Vec::new();
    let mut cur = vec![true; n];
    let (preperiod, period) = loop {
        if let Some(&i) = seen.get(&cur) {
            break (i, history.len() - i);
        }
        seen.insert(cur.clone(), history.len());
        let mut next = vec![false; n];
        for e in g.edges() {
            if cur[e.src] {
                next[e.rng] = true;
            }
        }
        history.push(core::mem::replace(&mut cur, next));
    };
    let sets = (0..n)
        .map(|v| SemilinearSet::from_table(preperiod, period, history.iter().map(|row| row[v]).collect()))
        .collect();
    Spectra { preperiod, period, sets }
}

pub fn length_spectrum(g: &Graph, v: VertexId) -> Result<SemilinearSet> {
    if v >= g.vertex_count() {
        return Err(Error::domain("length spectrum requested for a vertex outside the core"));
    }
    Ok(length_spectra(g).sets.swap_remove(v))
}

/// A family `m ↦ S_m ⊆ carrier` over ℕᵏ that is periodic along each axis
/// beyond a per-axis preperiod.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPeriodicFamily {
    preperiod: Vec<usize>,
    period: Vec<usize>,
    table: Vec<BTreeSet<usize>>,
}

impl GridPeriodicFamily {
    /// Tabulates `value` on the representative box `∏[0, Nᵢ + Pᵢ)`.
    pub fn tabulate(
        preperiod: Vec<usize>,
        period: Vec<usize>,
        mut value: impl FnMut(&[usize]) -> BTreeSet<usize>,
    ) -> GridPeriodicFamily {
        assert_eq!(preperiod.len(), period.len());
        assert!(period.iter().all(|&p| p >= 1));
        let mut fam = GridPeriodicFamily { preperiod, period, table: Vec::new() };
        let points = fam.box_points();
        fam.table = points.iter().map(|m| value(m)).collect();
        fam
    }

    pub fn rank(&self) -> usize {
        self.period.len()
    }

    pub fn preperiod(&self) -> &[usize] {
        &self.preperiod
    }

    pub fn period(&self) -> &[usize] {
        &self.period
    }

    pub fn box_extent(&self) -> Vec<usize> {
        self.preperiod.iter().zip(&self.period).map(|(n, p)| n + p).collect()
    }

    /// All points of the representative box in row-major order (last
    /// coordinate fastest).
    pub fn box_points(&self) -> Vec<Vec<usize>> {
        let ext = self.box_extent();
        let mut out = vec![Vec::new()];
        for &e in &ext {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..e).map(move |i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn fold(&self, m: &[usize]) -> Vec<usize> {
        m.iter()
            .enumerate()
            .map(|(i, &x)| fold(x, self.preperiod[i], self.period[i]))
            .collect()
    }

    /// Fold of `m + e_axis` for an already folded `m`.
    pub fn step(&self, folded: &[usize], axis: usize) -> Vec<usize> {
        let mut m = folded.to_vec();
        m[axis] += 1;
        self.fold(&m)
    }

    /// Row-major index of a folded point within the representative box.
    pub fn box_index(&self, folded: &[usize]) -> usize {
        let ext = self.box_extent();
        folded.iter().zip(&ext).fold(0, |acc, (&x, &e)| acc * e + x)
    }

    pub fn value(&self, m: &[usize]) -> &BTreeSet<usize> {
        &self.table[self.box_index(&self.fold(m))]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_spectrum_is_everything() {
        let g = Graph::from_edges(1, &[(0, 0)]);
        let s = length_spectrum(&g, 0).unwrap();
        assert_eq!(s, SemilinearSet::naturals());
        assert!(s.sporadic().is_empty());
        assert_eq!(s.progressions(), vec![(0, 1)]);
    }

    #[test]
    fn single_edge_spectrum() {
        let g = Graph::from_edges(2, &[(0, 1)]);
        assert_eq!(length_spectrum(&g, 1).unwrap(), SemilinearSet::from_parts(&[0, 1], &[]));
        assert_eq!(length_spectrum(&g, 0).unwrap(), SemilinearSet::from_parts(&[0], &[]));
    }

    #[test]
    fn two_cycle_spectrum_matches_enumeration() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]);
        let s = length_spectrum(&g, 0).unwrap();
        for n in 0..=10 {
            let brute = !crate::graph::paths_into(&g, 0, n, 1 << 12).unwrap().is_empty();
            assert!(brute);
            assert!(s.contains(n));
        }
        assert_eq!(s, SemilinearSet::naturals());
    }

    #[test]
    fn outside_core_is_domain_error() {
        let g = Graph::from_edges(1, &[]);
        assert!(length_spectrum(&g, 3).is_err());
    }

    #[test]
    fn set_operations() {
        let s = SemilinearSet::from_parts(&[0, 1], &[]);
        assert_eq!(s.shift_by(2), SemilinearSet::from_parts(&[2, 3], &[]));
        let evens = SemilinearSet::from_parts(&[], &[(0, 2)]);
        let odds = SemilinearSet::from_parts(&[], &[(1, 2)]);
        assert_eq!(evens.union(&odds), SemilinearSet::naturals());
        assert!(evens.misses_infinitely_many());
        assert!(!evens.union(&odds).misses_infinitely_many());
        assert!(!SemilinearSet::from_parts(&[1], &[(3, 1)]).misses_infinitely_many());
        assert_eq!(evens.intersection(&odds), SemilinearSet::empty());
        assert_eq!(evens.complement(), odds);
    }

    #[test]
    fn equality_uses_common_refinement() {
        let a = SemilinearSet::from_parts(&[], &[(0, 2)]);
        let b = SemilinearSet::from_parts(&[0, 2], &[(4, 4), (6, 4)]);
        assert_eq!(a, b);
        assert_eq!(a.refine(5, 6), a);
    }

    #[test]
    fn grid_family_folds() {
        let fam = GridPeriodicFamily::tabulate(vec![1, 0], vec![2, 1], |m| {
            if m[0] == 0 { BTreeSet::from([0]) } else { BTreeSet::from([m[0] % 2]) }
        });
        assert_eq!(fam.box_points().len(), 3);
        assert_eq!(fam.value(&[0, 7]), &BTreeSet::from([0]));
        assert_eq!(fam.value(&[5, 2]), fam.value(&[1, 0]));
        assert_eq!(fam.value(&[4, 9]), fam.value(&[2, 0]));
    }
}
