//! Finite-dimensional restriction and induction between graded right
//! `A`-modules and right `A_ε`-modules, and the natural maps between them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::Element;
use crate::linalg::{axpy, quotient_basis, rank, Echelon};
use crate::ring::Field;
use crate::steinberg::{BasisId, GradedAlgebra, Vector};

/// A graded right module with a homogeneous basis; `act[m][a] = m·a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule<F> {
    pub names: Vec<String>,
    pub deg: Vec<Element>,
    pub act: Vec<Vec<Vector<F>>>,
}

/// A right `A_ε`-module; `act[n][t] = n·b_t` with `b_t` the `t`-th basis
/// element of `A_ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsModule<F> {
    pub names: Vec<String>,
    pub eps: Vec<BasisId>,
    pub act: Vec<Vec<Vector<F>>>,
}

impl<F: Field> GradedModule<F> {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    fn act_vec(&self, m: &Vector<F>, x: &Vector<F>) -> Vector<F> {
        let mut out = BTreeMap::new();
        for (&i, c) in m {
            for (&j, d) in x {
                axpy(&mut out, &c.mul(d), &self.act[i][j]);
            }
        }
        out
    }

    /// Checks sizes, degrees, `(m·a)·b = m·(ab)` and `m·1 = m` when `A` has
    /// an identity.
    pub fn validate(&self, a: &GradedAlgebra<F>) -> Result<()> {
        let (n, d) = (self.dim(), a.dim());
        if self.deg.len() != n || self.act.len() != n || self.act.iter().any(|r| r.len() != d) {
            return Err(Error::validation("module tables do not match the bases"));
        }
        let grp = a.group();
        for m in 0..n {
            for x in 0..d {
                let want = grp.add(&self.deg[m], a.degree(x));
                if self.act[m][x].keys().any(|&k| k >= n || self.deg[k] != want) {
                    return Err(Error::validation(format!(
                        "{}·{} is not homogeneous of the right degree",
                        self.names[m],
                        a.name(x)
                    )));
                }
            }
        }
        for m in 0..n {
            let mv = unit(m);
            for x in 0..d {
                for y in 0..d {
                    let left = self.act_vec(&self.act[m][x], &unit(y));
                    let right = self.act_vec(&mv, a.basis_product(x, y));
                    if left != right {
                        return Err(Error::validation(format!(
                            "({}·{})·{} differs from {}·({}{})",
                            self.names[m],
                            a.name(x),
                            a.name(y),
                            self.names[m],
                            a.name(x),
                            a.name(y)
                        )));
                    }
                }
            }
        }
        if let Some(one) = a.identity() {
            for m in 0..n {
                if self.act_vec(&unit(m), &one) != unit(m) {
                    return Err(Error::validation(format!("{}·1 is not {}", self.names[m], self.names[m])));
                }
            }
        }
        Ok(())
    }
}

fn unit<F: Field>(i: usize) -> Vector<F> {
    BTreeMap::from([(i, F::one())])
}

/// `A(α)` with `A(α)_γ = A_{α+γ}`: the basis element `a` sits in degree
/// `deg(a) − α`.
pub fn shifted_regular<F: Field>(a: &GradedAlgebra<F>, alpha: &[i64]) -> GradedModule<F> {
    let grp = a.group();
    let d = a.dim();
    GradedModule {
        names: a.names().to_vec(),
        deg: (0..d).map(|x| grp.sub(a.degree(x), alpha)).collect(),
        act: (0..d).map(|x| (0..d).map(|y| a.basis_product(x, y).clone()).collect()).collect(),
    }
}

/// `M ↦ M_ε` with the action restricted to `A_ε`.
pub fn dade_restriction<F: Field>(a: &GradedAlgebra<F>, m: &GradedModule<F>) -> EpsModule<F> {
    let grp = a.group();
    let eps = a.component(&grp.identity());
    let keep: Vec<usize> = (0..m.dim()).filter(|&i| grp.is_identity(&m.deg[i])).collect();
    let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let act = keep
        .iter()
        .map(|&i| eps.iter().map(|&b| m.act[i][b].iter().map(|(k, c)| (pos[k], c.clone())).collect()).collect())
        .collect();
    EpsModule { names: keep.iter().map(|&i| m.names[i].clone()).collect(), eps, act }
}

/// `N ⊗_{A_ε} A` as the quotient of the free space on pairs `(n, a)` by the
/// relations `(n·b) ⊗ a − n ⊗ ba` for `b` in `A_ε`.
#[derive(Debug, Clone)]
pub struct Induced<F> {
    pub module: GradedModule<F>,
    /// The pair `(n, a)` behind each basis element of `module`.
    pub keys: Vec<(usize, BasisId)>,
    relations: Echelon<(usize, BasisId), F>,
}

impl<F: Field> Induced<F> {
    /// Coordinates of `Σ c·(n ⊗ a)` in the quotient basis.
    pub fn coordinates(&self, v: BTreeMap<(usize, BasisId), F>) -> Vector<F> {
        let r = self.relations.reduce(v);
        r.into_iter().map(|(k, c)| (self.keys.binary_search(&k).expect("reduced keys are basis keys"), c)).collect()
    }
}

pub fn dade_induction<F: Field>(a: &GradedAlgebra<F>, n: &EpsModule<F>) -> Induced<F> {
    let d = a.dim();
    let mut relations = Echelon::new();
    for i in 0..n.names.len() {
        for (t, &b) in n.eps.iter().enumerate() {
            for x in 0..d {
                let mut v = BTreeMap::new();
                for (&j, c) in &n.act[i][t] {
                    axpy(&mut v, c, &BTreeMap::from([((j, x), F::one())]));
                }
                for (&y, c) in a.basis_product(b, x) {
                    axpy(&mut v, &c.neg(), &BTreeMap::from([((i, y), F::one())]));
                }
                relations.insert(v);
            }
        }
    }
    let universe: Vec<(usize, BasisId)> = (0..n.names.len()).flat_map(|i| (0..d).map(move |x| (i, x))).collect();
    let keys = quotient_basis(&relations, &universe);
    let mut induced = Induced {
        module: GradedModule { names: Vec::new(), deg: Vec::new(), act: Vec::new() },
        keys: keys.clone(),
        relations,
    };
    let mut act = Vec::new();
    for &(i, x) in &keys {
        let row = (0..d)
            .map(|y| {
                let v = a.basis_product(x, y).iter().map(|(&z, c)| ((i, z), c.clone())).collect();
                induced.coordinates(v)
            })
            .collect();
        act.push(row);
    }
    induced.module = GradedModule {
        names: keys.iter().map(|&(i, x)| format!("{}⊗{}", n.names[i], a.name(x))).collect(),
        deg: keys.iter().map(|&(_, x)| a.degree(x).clone()).collect(),
        act,
    };
    induced
}

/// Outcome of a natural map check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalMap<F> {
    /// Image of each basis element of the source.
    pub images: Vec<Vector<F>>,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub iso: bool,
}

/// `M_ε ⊗_{A_ε} A → M`, `m ⊗ a ↦ m·a`.
pub fn dade_natural_map<F: Field>(a: &GradedAlgebra<F>, m: &GradedModule<F>) -> NaturalMap<F> {
    let grp = a.group();
    let keep: Vec<usize> = (0..m.dim()).filter(|&i| grp.is_identity(&m.deg[i])).collect();
    let ind = dade_induction(a, &dade_restriction(a, m));
    let images: Vec<Vector<F>> = ind.keys.iter().map(|&(p, x)| m.act[keep[p]][x].clone()).collect();
    let r = rank(images.iter().cloned());
    let (s, t) = (images.len(), m.dim());
    NaturalMap { images, source_dim: s, target_dim: t, rank: r, iso: r == s && r == t }
}

/// `η : N ⊗_{A_ε} A_ε → N`, `n ⊗ b ↦ n·b`.
pub fn dade_eta<F: Field>(a: &GradedAlgebra<F>, n: &EpsModule<F>) -> NaturalMap<F> {
    let ind = dade_induction(a, n);
    let grp = a.group();
    let pos: BTreeMap<BasisId, usize> = n.eps.iter().enumerate().map(|(t, &b)| (b, t)).collect();
    let images: Vec<Vector<F>> = ind
        .keys
        .iter()
        .filter(|&&(_, x)| grp.is_identity(a.degree(x)))
        .map(|&(i, x)| n.act[i][pos[&x]].clone())
        .collect();
    let r = rank(images.iter().cloned());
    let (s, t) = (images.len(), n.names.len());
    NaturalMap { images, source_dim: s, target_dim: t, rank: r, iso: r == s && r == t }
}

/// One row of a Dade probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeRow {
    pub alpha: Element,
    pub natural_iso: bool,
    pub eta_iso: bool,
}

/// Natural maps for the shifted regular modules `A(α)`, `α` over `window`.
pub fn dade_probe<F: Field>(a: &GradedAlgebra<F>, window: &[Element]) -> Vec<ProbeRow> {
    window
        .iter()
        .map(|alpha| {
            let alpha = a.group().reduce(alpha);
            let m = shifted_regular(a, &alpha);
            let natural_iso = dade_natural_map(a, &m).iso;
            let eta_iso = dade_eta(a, &dade_restriction(a, &m)).iso;
            ProbeRow { alpha, natural_iso, eta_iso }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;
    use crate::groupoid::FiniteGradedGroupoid;
    use crate::ring::{Fp, Q};
    use crate::steinberg::steinberg_algebra;

    fn two_points() -> GradedAlgebra<Q> {
        let z2 = AbelianGroup::cyclic(2);
        let parts: Vec<_> = (0..2)
            .map(|_| FiniteGradedGroupoid::transitive(&z2, 1, &AbelianGroup::trivial(), &[vec![0]], &[]).unwrap())
            .collect();
        steinberg_algebra(&FiniteGradedGroupoid::disjoint_union(&parts).unwrap())
    }

    #[test]
    fn group_ring_regular_module_is_induced() {
        let g = FiniteGradedGroupoid::group(&AbelianGroup::cyclic(2)).unwrap();
        let a = steinberg_algebra::<Q>(&g);
        let m = shifted_regular(&a, &[0]);
        m.validate(&a).unwrap();
        let map = dade_natural_map(&a, &m);
        assert!(map.iso);
        assert_eq!(map.source_dim, 2);
        for row in dade_probe(&a, &g.default_window()) {
            assert!(row.natural_iso && row.eta_iso);
        }
    }

    #[test]
    fn shifted_product_ring_is_not_induced() {
        let a = two_points();
        let m = shifted_regular(&a, &[1]);
        m.validate(&a).unwrap();
        let map = dade_natural_map(&a, &m);
        assert!(!map.iso);
        assert_eq!((map.source_dim, map.target_dim), (0, 2));
        let rows = dade_probe(&a, &[vec![0], vec![1]]);
        assert!(rows[0].natural_iso && !rows[1].natural_iso);
        assert!(rows.iter().all(|r| r.eta_iso));
    }

    #[test]
    fn induced_module_is_a_module() {
        let g = FiniteGradedGroupoid::transitive(
            &AbelianGroup::cyclic(3),
            2,
            &AbelianGroup::cyclic(2),
            &[vec![0], vec![1]],
            &[vec![0]],
        )
        .unwrap();
        let a = steinberg_algebra::<Fp<3>>(&g);
        let m = shifted_regular(&a, &[2]);
        let ind = dade_induction(&a, &dade_restriction(&a, &m));
        ind.module.validate(&a).unwrap();
    }
}
