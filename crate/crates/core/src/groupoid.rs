//! Finite discrete graded groupoids and cylinder bisections of path
//! groupoids.
//!
//! Morphisms carry a domain `d` and codomain `c`; the product `xy` is defined
//! when `d(x) = c(y)` and then `d(xy) = d(y)`, `c(xy) = c(x)`. With the
//! discrete topology every subset is compact open and a bisection is any set
//! on which `d` and `c` are injective.
//!
//! For an abelian grading group and finitely many units the four criteria
//! `𝒢_γ𝒢_δ = 𝒢_{γ+δ}` (all δ), `𝒢_γ𝒢_{−γ} = 𝒢_0`, `d(𝒢_γ) = 𝒢⁽⁰⁾` and
//! `c(𝒢_γ) = 𝒢⁽⁰⁾` agree for each single `γ`, not only in aggregate. On a
//! connected component with isotropy degrees `K` and unit degrees `Φ`,
//! both `c(𝒢_γ)` and `d(𝒢_γ)` are everything iff the finite image of `Φ` in
//! `Γ/K` is invariant under translation by `γ`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, Path};
use crate::group::{AbelianGroup, Element, Quotient};

pub type MorphismId = usize;

/// Unvalidated groupoid description by name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupoidSpec {
    pub group: String,
    pub units: Vec<String>,
    /// `(id, domain, codomain, degree)`
    pub morphisms: Vec<(String, String, String, Vec<i64>)>,
    /// `(x, y, xy)`
    pub compose: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGradedGroupoid {
    group: AbelianGroup,
    names: Vec<String>,
    units: Vec<MorphismId>,
    d: Vec<MorphismId>,
    c: Vec<MorphismId>,
    deg: Vec<Element>,
    /// `table[x][y] = xy` when `d(x) = c(y)`.
    table: Vec<Vec<Option<MorphismId>>>,
    inverse: Vec<MorphismId>,
}

/// Outcome of [`validate_groupoid`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidReport {
    pub valid: bool,
    pub violation: Option<String>,
}

pub fn validate_groupoid(spec: &GroupoidSpec) -> GroupoidReport {
    match FiniteGradedGroupoid::new(spec) {
        Ok(_) => GroupoidReport { valid: true, violation: None },
        Err(e) => GroupoidReport { valid: false, violation: Some(format!("{e}")) },
    }
}

impl FiniteGradedGroupoid {
    pub fn new(spec: &GroupoidSpec) -> Result<FiniteGradedGroupoid> {
        let group = AbelianGroup::parse(&spec.group)?;
        let mut ms = spec.morphisms.clone();
        ms.sort();
        let names: Vec<String> = ms.iter().map(|m| m.0.clone()).collect();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::validation(format!("duplicate morphism identifier `{}`", w[0])));
            }
        }
        let idx = |n: &str, ctx: &str| -> Result<MorphismId> {
            names
                .binary_search_by(|m| m.as_str().cmp(n))
                .map_err(|_| Error::validation(format!("{ctx} names undeclared morphism `{n}`")))
        };
        let mut units = Vec::new();
        for u in &spec.units {
            units.push(idx(u, "units")?);
        }
        let mut d = Vec::new();
        let mut c = Vec::new();
        let mut deg = Vec::new();
        for (id, dom, cod, g) in &ms {
            d.push(idx(dom, id)?);
            c.push(idx(cod, id)?);
            deg.push(group.element(g).map_err(|_| Error::validation(format!("degree of `{id}` has the wrong rank")))?);
        }
        let n = names.len();
        let mut table = vec![vec![None; n]; n];
        for (x, y, z) in &spec.compose {
            let (x, y, z) = (idx(x, "compose")?, idx(y, "compose")?, idx(z, "compose")?);
            if table[x][y].is_some_and(|p| p != z) {
                return Err(Error::validation(format!("product {} {} is given twice", names[x], names[y])));
            }
            table[x][y] = Some(z);
        }
        Self::from_raw(group, names, units, d, c, deg, table)
    }

    /// Builds and validates a groupoid from index tables.
    pub fn from_raw(
        group: AbelianGroup,
        names: Vec<String>,
        mut units: Vec<MorphismId>,
        d: Vec<MorphismId>,
        c: Vec<MorphismId>,
        deg: Vec<Element>,
        table: Vec<Vec<Option<MorphismId>>>,
    ) -> Result<FiniteGradedGroupoid> {
        units.sort_unstable();
        units.dedup();
        let n = names.len();
        let bad = |msg: String| Err(Error::validation(msg));
        if d.len() != n || c.len() != n || deg.len() != n || table.len() != n || table.iter().any(|r| r.len() != n) {
            return bad(String::from("table sizes do not match the morphism count"));
        }
        if units.iter().chain(&d).chain(&c).any(|&u| u >= n) {
            return bad(String::from("morphism index out of range"));
        }
        let is_unit: Vec<bool> = (0..n).map(|x| units.binary_search(&x).is_ok()).collect();
        for x in 0..n {
            if !is_unit[d[x]] || !is_unit[c[x]] {
                return bad(format!("domain or codomain of `{}` is not a unit", names[x]));
            }
            if is_unit[x] && (d[x] != x || c[x] != x) {
                return bad(format!("unit `{}` must be its own domain and codomain", names[x]));
            }
            if deg[x].len() != group.rank() {
                return bad(format!("degree of `{}` has the wrong rank", names[x]));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let composable = d[x] == c[y];
                match (composable, table[x][y]) {
                    (true, None) => return bad(format!("missing product ({}, {})", names[x], names[y])),
                    (false, Some(_)) => {
                        return bad(format!("product ({}, {}) given for a non-composable pair", names[x], names[y]))
                    }
                    (true, Some(z)) => {
                        if z >= n || d[z] != d[y] || c[z] != c[x] {
                            return bad(format!("product ({}, {}) has wrong endpoints", names[x], names[y]));
                        }
                        if group.add(&deg[x], &deg[y]) != deg[z] {
                            return bad(format!(
                                "degree is not multiplicative on ({}, {}, {})",
                                names[x], names[y], names[z]
                            ));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for &u in &units {
            if !group.is_identity(&deg[u]) {
                return bad(format!("unit `{}` has nonzero degree", names[u]));
            }
        }
        for x in 0..n {
            if table[x][d[x]] != Some(x) || table[c[x]][x] != Some(x) {
                return bad(format!("units do not act neutrally on `{}`", names[x]));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let Some(xy) = table[x][y] else { continue };
                for z in 0..n {
                    let Some(yz) = table[y][z] else { continue };
                    if table[xy][z] != table[x][yz] {
                        return bad(format!("associativity fails on ({}, {}, {})", names[x], names[y], names[z]));
                    }
                }
            }
        }
        let mut inverse = vec![0; n];
        for x in 0..n {
            let inv = (0..n).find(|&y| table[x][y] == Some(c[x]) && table[y][x] == Some(d[x]));
            match inv {
                Some(y) => inverse[x] = y,
                None => return bad(format!("`{}` has no inverse", names[x])),
            }
        }
        Ok(FiniteGradedGroupoid { group, names, units, d, c, deg, table, inverse })
    }

    pub fn to_spec(&self) -> GroupoidSpec {
        let mut compose = Vec::new();
        for x in 0..self.len() {
            for y in 0..self.len() {
                if let Some(z) = self.table[x][y] {
                    compose.push((self.names[x].clone(), self.names[y].clone(), self.names[z].clone()));
                }
            }
        }
        GroupoidSpec {
            group: self.group.display(),
            units: self.units.iter().map(|&u| self.names[u].clone()).collect(),
            morphisms: (0..self.len())
                .map(|x| {
                    (
                        self.names[x].clone(),
                        self.names[self.d[x]].clone(),
                        self.names[self.c[x]].clone(),
                        self.deg[x].clone(),
                    )
                })
                .collect(),
            compose,
        }
    }

    /// The transitive groupoid `{0..n} × H × {0..n}` with `(i, h, j)` from `j`
    /// to `i`, graded by `φ(i) + χ(h) − φ(j)`. `chi[t]` is the image of the
    /// `t`-th generator of `h_group`.
    pub fn transitive(
        group: &AbelianGroup,
        n: usize,
        h_group: &AbelianGroup,
        phi: &[Element],
        chi: &[Element],
    ) -> Result<FiniteGradedGroupoid> {
        let hs = h_group.elements().ok_or_else(|| Error::domain("isotropy group must be finite"))?;
        if phi.len() != n || chi.len() != h_group.rank() {
            return Err(Error::domain("φ needs one value per object and χ one per generator"));
        }
        let chi_of = |h: &[i64]| {
            let mut acc = group.identity();
            for (t, &a) in h.iter().enumerate() {
                acc = group.add(&acc, &group.scale(a, &chi[t]));
            }
            acc
        };
        let hn = hs.len();
        let id = |i: usize, h: usize, j: usize| (i * hn + h) * n + j;
        let total = n * hn * n;
        let mut names = vec![String::new(); total];
        let mut d = vec![0; total];
        let mut c = vec![0; total];
        let mut deg = vec![Vec::new(); total];
        let zero = hs.iter().position(|h| h_group.is_identity(h)).unwrap();
        let hindex: BTreeMap<&Element, usize> = hs.iter().enumerate().map(|(i, h)| (h, i)).collect();
        for i in 0..n {
            for (hi, h) in hs.iter().enumerate() {
                for j in 0..n {
                    let x = id(i, hi, j);
                    let hs_name: Vec<String> = h.iter().map(|a| format!("{a}")).collect();
                    names[x] = format!("g{i}.{}.{j}", hs_name.join("_"));
                    d[x] = id(j, zero, j);
                    c[x] = id(i, zero, i);
                    deg[x] = group.sub(&group.add(&phi[i], &chi_of(h)), &phi[j]);
                }
            }
        }
        let mut table = vec![vec![None; total]; total];
        for i in 0..n {
            for (a, ha) in hs.iter().enumerate() {
                for j in 0..n {
                    for (b, hb) in hs.iter().enumerate() {
                        for k in 0..n {
                            let prod = hindex[&h_group.add(ha, hb)];
                            table[id(i, a, j)][id(j, b, k)] = Some(id(i, prod, k));
                        }
                    }
                }
            }
        }
        let units = (0..n).map(|i| id(i, zero, i)).collect();
        Self::from_raw(group.clone(), names, units, d, c, deg, table)
    }

    /// A group as a one-unit groupoid graded by the identity.
    pub fn group(group: &AbelianGroup) -> Result<FiniteGradedGroupoid> {
        let gens: Vec<Element> = (0..group.rank())
            .map(|t| {
                let mut e = group.identity();
                e[t] = 1;
                e
            })
            .collect();
        Self::transitive(group, 1, group, &[group.identity()], &gens)
    }

    /// Disjoint union; morphism names are prefixed by the component index.
    pub fn disjoint_union(parts: &[FiniteGradedGroupoid]) -> Result<FiniteGradedGroupoid> {
        let Some(first) = parts.first() else {
            return Err(Error::domain("disjoint union of no groupoids"));
        };
        let group = first.group.clone();
        if parts.iter().any(|p| p.group != group) {
            return Err(Error::domain("components are graded by different groups"));
        }
        let total: usize = parts.iter().map(|p| p.len()).sum();
        let mut names = Vec::with_capacity(total);
        let (mut units, mut d, mut c, mut deg) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        let mut table = vec![vec![None; total]; total];
        let mut off = 0;
        for (t, p) in parts.iter().enumerate() {
            for x in 0..p.len() {
                names.push(format!("c{t}.{}", p.names[x]));
                d.push(p.d[x] + off);
                c.push(p.c[x] + off);
                deg.push(p.deg[x].clone());
                for y in 0..p.len() {
                    table[x + off][y + off] = p.table[x][y].map(|z| z + off);
                }
            }
            units.extend(p.units.iter().map(|u| u + off));
            off += p.len();
        }
        Self::from_raw(group, names, units, d, c, deg, table)
    }

    pub fn group_ref(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: MorphismId) -> &str {
        &self.names[x]
    }

    pub fn index(&self, name: &str) -> Option<MorphismId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn units(&self) -> &[MorphismId] {
        &self.units
    }

    pub fn domain(&self, x: MorphismId) -> MorphismId {
        self.d[x]
    }

    pub fn codomain(&self, x: MorphismId) -> MorphismId {
        self.c[x]
    }

    pub fn degree(&self, x: MorphismId) -> &Element {
        &self.deg[x]
    }

    pub fn inverse(&self, x: MorphismId) -> MorphismId {
        self.inverse[x]
    }

    pub fn compose(&self, x: MorphismId, y: MorphismId) -> Option<MorphismId> {
        self.table[x][y]
    }

    /// `𝒢_γ`.
    pub fn component(&self, gamma: &[i64]) -> BTreeSet<MorphismId> {
        let g = self.group.reduce(gamma);
        (0..self.len()).filter(|&x| self.deg[x] == g).collect()
    }

    /// `UV = {uv : (u, v) composable}`.
    pub fn set_product(&self, u: &BTreeSet<MorphismId>, v: &BTreeSet<MorphismId>) -> BTreeSet<MorphismId> {
        let mut out = BTreeSet::new();
        for &x in u {
            for &y in v {
                if let Some(z) = self.table[x][y] {
                    out.insert(z);
                }
            }
        }
        out
    }

    pub fn is_bisection(&self, u: &BTreeSet<MorphismId>) -> bool {
        let ds: BTreeSet<_> = u.iter().map(|&x| self.d[x]).collect();
        let cs: BTreeSet<_> = u.iter().map(|&x| self.c[x]).collect();
        ds.len() == u.len() && cs.len() == u.len()
    }

    /// The default degree window: all of a finite group, otherwise the
    /// occurring degrees widened by one step in every infinite coordinate.
    pub fn default_window(&self) -> Vec<Element> {
        if let Some(all) = self.group.elements() {
            return all;
        }
        let radius = self.deg.iter().flat_map(|g| g.iter().map(|a| a.abs())).max().unwrap_or(0) + 1;
        self.group.window(radius)
    }

    /// Same morphisms graded by `Γ/Ω`, with `Ω` generated by `omega`.
    pub fn regrade_quotient(&self, omega: &[Element]) -> Result<FiniteGradedGroupoid> {
        let q = Quotient::new(&self.group, omega)?;
        let deg = self.deg.iter().map(|g| q.project(g)).collect();
        Ok(FiniteGradedGroupoid { group: q.quotient.clone(), deg, ..self.clone() })
    }

    /// The subgroupoid `𝒢_Ω` of morphisms with degree in `Ω`, still graded
    /// by `Γ`, together with the elements of `Ω` inside `window` to check it
    /// on.
    pub fn restrict_subgroupoid(
        &self,
        omega: &[Element],
        window: &[Element],
    ) -> Result<(FiniteGradedGroupoid, Vec<Element>)> {
        let q = Quotient::new(&self.group, omega)?;
        let keep: Vec<MorphismId> = (0..self.len()).filter(|&x| q.contains(&self.deg[x])).collect();
        let pos: BTreeMap<MorphismId, usize> = keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let names = keep.iter().map(|&x| self.names[x].clone()).collect();
        let d = keep.iter().map(|&x| pos[&self.d[x]]).collect();
        let c = keep.iter().map(|&x| pos[&self.c[x]]).collect();
        let deg = keep.iter().map(|&x| self.deg[x].clone()).collect();
        let table = keep
            .iter()
            .map(|&x| keep.iter().map(|&y| self.table[x][y].map(|z| pos[&z])).collect())
            .collect();
        let units = self.units.iter().map(|u| pos[u]).collect();
        let g = Self::from_raw(self.group.clone(), names, units, d, c, deg, table)?;
        let win = window.iter().filter(|w| q.contains(w)).cloned().collect();
        Ok((g, win))
    }
}

/// Per-degree outcome of the four criteria.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCheck {
    pub gamma: Element,
    /// `𝒢_γ𝒢_δ = 𝒢_{γ+δ}` for every `δ` in the window and `δ = −γ`.
    pub products: bool,
    /// `𝒢_γ𝒢_{−γ} = 𝒢_0`.
    pub inverse_products: bool,
    /// `d(𝒢_γ) = 𝒢⁽⁰⁾`.
    pub domains: bool,
    /// `c(𝒢_γ) = 𝒢⁽⁰⁾`.
    pub codomains: bool,
}

impl DegreeCheck {
    pub fn agree(&self) -> bool {
        self.products == self.inverse_products && self.products == self.domains && self.products == self.codomains
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongReport {
    pub answer: bool,
    pub agree: bool,
    pub degrees: Vec<DegreeCheck>,
}

impl StrongReport {
    /// The first degree at which the grading fails.
    pub fn failing_degree(&self) -> Option<&Element> {
        self.degrees.iter().find(|c| !c.domains).map(|c| &c.gamma)
    }
}

/// Evaluates the four strong-grading criteria at each degree of `window`.
pub fn strong_grading_check(g: &FiniteGradedGroupoid, window: &[Element]) -> StrongReport {
    let units: BTreeSet<MorphismId> = g.units.iter().copied().collect();
    let zero = g.component(&g.group.identity());
    let mut degrees = Vec::new();
    for gamma in window {
        let gamma = g.group.reduce(gamma);
        let gg = g.component(&gamma);
        let neg = g.group.neg(&gamma);
        let mut deltas: Vec<Element> = window.iter().map(|w| g.group.reduce(w)).collect();
        deltas.push(neg.clone());
        let products = deltas.iter().all(|delta| {
            g.set_product(&gg, &g.component(delta)) == g.component(&g.group.add(&gamma, delta))
        });
        let inverse_products = g.set_product(&gg, &g.component(&neg)) == zero;
        let domains = gg.iter().map(|&x| g.d[x]).collect::<BTreeSet<_>>() == units;
        let codomains = gg.iter().map(|&x| g.c[x]).collect::<BTreeSet<_>>() == units;
        degrees.push(DegreeCheck { gamma, products, inverse_products, domains, codomains });
    }
    let agree = degrees.iter().all(DegreeCheck::agree);
    let answer = degrees.iter().all(|c| c.products && c.inverse_products && c.domains && c.codomains);
    StrongReport { answer, agree, degrees }
}

/// The compact open bisection `Z(α, β \ F)` of a path groupoid.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CylinderBisection {
    pub alpha: Path,
    pub beta: Path,
    pub excluded: Vec<Path>,
}

impl CylinderBisection {
    pub fn new(g: &Graph, alpha: Path, beta: Path) -> Result<CylinderBisection> {
        if alpha.range(g) != beta.range(g) {
            return Err(Error::domain("Z(α, β) needs r(α) = r(β)"));
        }
        Ok(CylinderBisection { alpha, beta, excluded: Vec::new() })
    }

    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    pub fn inverse(&self) -> Result<CylinderBisection> {
        self.plain()?;
        Ok(CylinderBisection { alpha: self.beta.clone(), beta: self.alpha.clone(), excluded: Vec::new() })
    }

    fn plain(&self) -> Result<()> {
        if !self.excluded.is_empty() {
            return Err(Error::Unsupported(String::from("bisections with excluded extensions")));
        }
        Ok(())
    }

    pub fn display(&self, g: &Graph) -> String {
        format!("Z({}, {})", self.alpha.display(g), self.beta.display(g))
    }
}

/// `Z(α, β) · Z(γ, δ)`, or `None` for the empty set.
pub fn compose_bisections(
    g: &Graph,
    a: &CylinderBisection,
    b: &CylinderBisection,
) -> Result<Option<CylinderBisection>> {
    a.plain()?;
    b.plain()?;
    if let Some(rest) = b.alpha.strip_prefix(g, &a.beta) {
        let alpha = a.alpha.concat(g, &rest).expect("ranges match");
        return Ok(Some(CylinderBisection { alpha, beta: b.beta.clone(), excluded: Vec::new() }));
    }
    if let Some(rest) = a.beta.strip_prefix(g, &b.alpha) {
        let beta = b.beta.concat(g, &rest).expect("ranges match");
        return Ok(Some(CylinderBisection { alpha: a.alpha.clone(), beta, excluded: Vec::new() }));
    }
    Ok(None)
}
