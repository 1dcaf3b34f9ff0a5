//! Partial actions of finite abelian groups on finite sets and their
//! transformation groupoids.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Element};
use crate::groupoid::FiniteGradedGroupoid;

/// Unvalidated description: for each listed `γ`, the pairs `(y, θ_γ(y))`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialActionSpec {
    pub group: String,
    pub points: Vec<String>,
    pub maps: Vec<(Vec<i64>, Vec<(String, String)>)>,
}

/// `θ_γ : X_{−γ} → X_γ` for every `γ` of a finite group. Groups elements
/// missing from the description act by the empty map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAction {
    group: AbelianGroup,
    points: Vec<String>,
    maps: BTreeMap<Element, BTreeMap<usize, usize>>,
}

impl PartialAction {
    pub fn new(spec: &PartialActionSpec) -> Result<PartialAction> {
        let group = AbelianGroup::parse(&spec.group)?;
        let mut points = spec.points.clone();
        points.sort();
        for w in points.windows(2) {
            if w[0] == w[1] {
                return Err(Error::validation(format!("duplicate point `{}`", w[0])));
            }
        }
        let idx = |p: &str| {
            points
                .binary_search_by(|q| q.as_str().cmp(p))
                .map_err(|_| Error::validation(format!("undeclared point `{p}`")))
        };
        let mut maps = BTreeMap::new();
        for (g, pairs) in &spec.maps {
            let g = group.element(g)?;
            let mut m = BTreeMap::new();
            for (y, x) in pairs {
                if m.insert(idx(y)?, idx(x)?).is_some() {
                    return Err(Error::validation(format!("θ_{g:?} is given twice at `{y}`")));
                }
            }
            if maps.insert(g.clone(), m).is_some() {
                return Err(Error::validation(format!("θ_{g:?} is given twice")));
            }
        }
        Self::from_maps(group, points, maps)
    }

    /// Validates (P1) and (P2).
    pub fn from_maps(
        group: AbelianGroup,
        points: Vec<String>,
        mut maps: BTreeMap<Element, BTreeMap<usize, usize>>,
    ) -> Result<PartialAction> {
        let elements = group.elements().ok_or_else(|| Error::domain("partial actions need a finite group"))?;
        let n = points.len();
        for g in &elements {
            maps.entry(g.clone()).or_default();
        }
        for (g, m) in &maps {
            if m.iter().any(|(&y, &x)| y >= n || x >= n) {
                return Err(Error::validation(format!("θ_{g:?} moves a point out of range")));
            }
        }
        let image = |m: &BTreeMap<usize, usize>| m.values().copied().collect::<BTreeSet<_>>();
        for g in &elements {
            let m = &maps[g];
            if image(m).len() != m.len() {
                return Err(Error::validation(format!("(P1) θ_{g:?} is not injective")));
            }
            let dom: BTreeSet<usize> = m.keys().copied().collect();
            if dom != image(&maps[&group.neg(g)]) {
                return Err(Error::validation(format!("(P1) the domain of θ_{g:?} is not X_{:?}", group.neg(g))));
            }
        }
        let id = group.identity();
        if maps[&id].len() != n || maps[&id].iter().any(|(y, x)| y != x) {
            return Err(Error::validation("(P2) θ_ε is not the identity of X"));
        }
        for g in &elements {
            for h in &elements {
                let gh = &maps[&group.add(g, h)];
                for (y, x) in &maps[h] {
                    if let Some(z) = maps[g].get(x) {
                        if gh.get(y) != Some(z) {
                            return Err(Error::validation(format!(
                                "(P2) θ_{:?} does not extend θ_{g:?} θ_{h:?}",
                                group.add(g, h)
                            )));
                        }
                    }
                }
            }
        }
        Ok(PartialAction { group, points, maps })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    /// `θ_γ` as a map from `X_{−γ}` to `X_γ`.
    pub fn map(&self, g: &[i64]) -> &BTreeMap<usize, usize> {
        &self.maps[&self.group.reduce(g)]
    }

    pub fn to_spec(&self) -> PartialActionSpec {
        PartialActionSpec {
            group: self.group.display(),
            points: self.points.clone(),
            maps: self
                .maps
                .iter()
                .filter(|(_, m)| !m.is_empty())
                .map(|(g, m)| {
                    (g.clone(), m.iter().map(|(&y, &x)| (self.points[y].clone(), self.points[x].clone())).collect())
                })
                .collect(),
        }
    }
}

/// `X_γ = X` for every `γ`.
pub fn is_global(p: &PartialAction) -> bool {
    p.maps.values().all(|m| m.len() == p.points.len())
}

/// `Γ ⋉_θ X = {(x, γ, y) : y ∈ X_{−γ}, x = θ_γ(y)}` graded by `γ`.
pub fn transformation_groupoid(p: &PartialAction) -> Result<FiniteGradedGroupoid> {
    let mut triples: Vec<(usize, Element, usize)> = Vec::new();
    for (g, m) in &p.maps {
        for (&y, &x) in m {
            triples.push((x, g.clone(), y));
        }
    }
    triples.sort();
    let pos: BTreeMap<(usize, Element, usize), usize> =
        triples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let id = p.group.identity();
    let unit = |x: usize| pos[&(x, id.clone(), x)];
    let n = triples.len();
    let names = triples
        .iter()
        .map(|(x, g, y)| {
            let gs: Vec<String> = g.iter().map(|a| format!("{a}")).collect();
            format!("{}.{}.{}", p.points[*x], gs.join("_"), p.points[*y])
        })
        .collect();
    let d = triples.iter().map(|t| unit(t.2)).collect();
    let c = triples.iter().map(|t| unit(t.0)).collect();
    let deg = triples.iter().map(|t| t.1.clone()).collect();
    let mut table = vec![vec![None; n]; n];
    for (i, (x, g, y)) in triples.iter().enumerate() {
        for (j, (y2, h, z)) in triples.iter().enumerate() {
            if y == y2 {
                let k = pos.get(&(*x, p.group.add(g, h), *z)).copied();
                if k.is_none() {
                    return Err(Error::Internal(String::from("validated action is not closed under products")));
                }
                table[i][j] = k;
            }
        }
    }
    let units = (0..p.points.len()).map(unit).collect();
    FiniteGradedGroupoid::from_raw(p.group.clone(), names, units, d, c, deg, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::strong_grading_check;

    fn action(pairs: &[(&[i64], &[(&str, &str)])], group: &str, points: &[&str]) -> Result<PartialAction> {
        PartialAction::new(&PartialActionSpec {
            group: group.into(),
            points: points.iter().map(|s| String::from(*s)).collect(),
            maps: pairs
                .iter()
                .map(|(g, m)| (g.to_vec(), m.iter().map(|(a, b)| (String::from(*a), String::from(*b))).collect()))
                .collect(),
        })
    }

    #[test]
    fn global_swap() {
        let p = action(&[(&[0], &[("a", "a"), ("b", "b")]), (&[1], &[("a", "b"), ("b", "a")])], "Z/2", &["a", "b"])
            .unwrap();
        assert!(is_global(&p));
        let g = transformation_groupoid(&p).unwrap();
        assert_eq!(g.len(), 4);
        assert!(strong_grading_check(&g, &g.default_window()).answer);
        assert_eq!(PartialAction::new(&p.to_spec()).unwrap(), p);
    }

    #[test]
    fn partial_identity_on_one_point() {
        let p = action(&[(&[0], &[("a", "a"), ("b", "b")]), (&[1], &[("a", "a")])], "Z/2", &["a", "b"]).unwrap();
        assert!(!is_global(&p));
        let g = transformation_groupoid(&p).unwrap();
        assert!(!strong_grading_check(&g, &g.default_window()).answer);
    }

    #[test]
    fn trivial_group_is_global() {
        let p = action(&[(&[], &[("a", "a")])], "1", &["a"]).unwrap();
        assert!(is_global(&p));
        let g = transformation_groupoid(&p).unwrap();
        assert!(strong_grading_check(&g, &g.default_window()).answer);
    }

    #[test]
    fn axiom_violations_are_named() {
        let e = action(&[(&[0], &[("a", "a")]), (&[1], &[("a", "b")])], "Z/2", &["a", "b"]).unwrap_err();
        assert!(format!("{e}").contains("(P1)"));
        let e = action(&[(&[0], &[("a", "a")])], "Z/2", &["a", "b"]).unwrap_err();
        assert!(format!("{e}").contains("(P2)"));
    }
}
