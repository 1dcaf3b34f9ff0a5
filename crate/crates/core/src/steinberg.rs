//! Finite-dimensional graded algebras given by structure constants, the
//! Steinberg algebra of a finite discrete groupoid, and the
//! inclusion–exclusion factorisation of indicator functions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Element, Quotient};
use crate::groupoid::{FiniteGradedGroupoid, MorphismId};
use crate::linalg::{add_entry, axpy, Echelon, SparseVec};
use crate::ring::Field;

pub type BasisId = usize;
pub type Vector<F> = SparseVec<BasisId, F>;

/// Unvalidated algebra description; coefficients are written `a` or `a/b`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub group: String,
    /// `(name, degree)`
    pub basis: Vec<(String, Vec<i64>)>,
    /// `(x, y, xy)`; missing products are zero.
    pub products: Vec<(String, String, Vec<(String, String)>)>,
    pub local_units: Vec<Vec<(String, String)>>,
}

/// A graded algebra with a homogeneous basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra<F> {
    group: AbelianGroup,
    names: Vec<String>,
    deg: Vec<Element>,
    mult: Vec<Vec<Vector<F>>>,
    local_units: Vec<Vector<F>>,
}

/// Parses `a` or `a/b` into a field element.
pub fn parse_coefficient<F: Field>(s: &str) -> Result<F> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let bad = || Error::validation(format!("bad coefficient `{s}`"));
    let num: i64 = num.parse().map_err(|_| bad())?;
    let den: i64 = den.parse().map_err(|_| bad())?;
    F::from_i64(den).inv().map(|d| F::from_i64(num).mul(&d)).ok_or_else(|| {
        Error::domain(format!("denominator of `{s}` vanishes in the coefficient field"))
    })
}

impl<F: Field> GradedAlgebra<F> {
    pub fn new(spec: &AlgebraSpec) -> Result<GradedAlgebra<F>> {
        let group = AbelianGroup::parse(&spec.group)?;
        let mut basis = spec.basis.clone();
        basis.sort();
        let names: Vec<String> = basis.iter().map(|b| b.0.clone()).collect();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::validation(format!("duplicate basis element `{}`", w[0])));
            }
        }
        let idx = |s: &str| {
            names
                .binary_search_by(|n| n.as_str().cmp(s))
                .map_err(|_| Error::validation(format!("undeclared basis element `{s}`")))
        };
        let vector = |terms: &[(String, String)]| -> Result<Vector<F>> {
            let mut v = BTreeMap::new();
            for (b, c) in terms {
                add_entry(&mut v, idx(b)?, parse_coefficient::<F>(c)?);
            }
            Ok(v)
        };
        let mut deg = Vec::new();
        for (_, g) in &basis {
            deg.push(group.element(g)?);
        }
        let n = names.len();
        let mut mult = vec![vec![BTreeMap::new(); n]; n];
        let mut given = BTreeSet::new();
        for (x, y, terms) in &spec.products {
            let (i, j) = (idx(x)?, idx(y)?);
            if !given.insert((i, j)) {
                return Err(Error::validation(format!("product {x} {y} is given twice")));
            }
            mult[i][j] = vector(terms)?;
        }
        let mut local_units = Vec::new();
        for u in &spec.local_units {
            local_units.push(vector(u)?);
        }
        Self::from_parts(group, names, deg, mult, local_units)
    }

    /// Validates associativity on the basis, additivity of degrees and the
    /// local units.
    pub fn from_parts(
        group: AbelianGroup,
        names: Vec<String>,
        deg: Vec<Element>,
        mult: Vec<Vec<Vector<F>>>,
        local_units: Vec<Vector<F>>,
    ) -> Result<GradedAlgebra<F>> {
        let n = names.len();
        if deg.len() != n || mult.len() != n || mult.iter().any(|r| r.len() != n) {
            return Err(Error::validation("table sizes do not match the basis"));
        }
        let a = GradedAlgebra { group, names, deg, mult, local_units };
        for i in 0..n {
            for j in 0..n {
                let want = a.group.add(&a.deg[i], &a.deg[j]);
                if let Some(&k) = a.mult[i][j].keys().find(|&&k| k >= n || a.deg[k] != want) {
                    if k >= n {
                        return Err(Error::validation("product refers to a basis index out of range"));
                    }
                    return Err(Error::validation(format!(
                        "product {} {} has a term {} of the wrong degree",
                        a.names[i], a.names[j], a.names[k]
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = a.mul(&a.mult[i][j], &a.unit(k));
                    let right = a.mul(&a.unit(i), &a.mult[j][k]);
                    if left != right {
                        return Err(Error::validation(format!(
                            "associativity fails on ({}, {}, {})",
                            a.names[i], a.names[j], a.names[k]
                        )));
                    }
                }
            }
        }
        for (t, e) in a.local_units.iter().enumerate() {
            if e.keys().any(|&k| k >= n || !a.group.is_identity(&a.deg[k])) {
                return Err(Error::validation(format!("local unit {t} is not homogeneous of degree zero")));
            }
            if a.mul(e, e) != *e {
                return Err(Error::validation(format!("local unit {t} is not idempotent")));
            }
        }
        Ok(a)
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        let terms = |v: &Vector<F>| -> Vec<(String, String)> {
            v.iter().map(|(&k, c)| (self.names[k].clone(), format!("{c}"))).collect()
        };
        let mut products = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !self.mult[i][j].is_empty() {
                    products.push((self.names[i].clone(), self.names[j].clone(), terms(&self.mult[i][j])));
                }
            }
        }
        AlgebraSpec {
            group: self.group.display(),
            basis: self.names.iter().cloned().zip(self.deg.iter().cloned()).collect(),
            products,
            local_units: self.local_units.iter().map(terms).collect(),
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: BasisId) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: BasisId) -> &Element {
        &self.deg[i]
    }

    pub fn local_units(&self) -> &[Vector<F>] {
        &self.local_units
    }

    pub fn unit(&self, i: BasisId) -> Vector<F> {
        BTreeMap::from([(i, F::one())])
    }

    pub fn basis_product(&self, i: BasisId, j: BasisId) -> &Vector<F> {
        &self.mult[i][j]
    }

    pub fn mul(&self, x: &Vector<F>, y: &Vector<F>) -> Vector<F> {
        let mut out = BTreeMap::new();
        for (&i, a) in x {
            for (&j, b) in y {
                axpy(&mut out, &a.mul(b), &self.mult[i][j]);
            }
        }
        out
    }

    /// Basis indices of `A_γ`.
    pub fn component(&self, gamma: &[i64]) -> Vec<BasisId> {
        let g = self.group.reduce(gamma);
        (0..self.dim()).filter(|&i| self.deg[i] == g).collect()
    }

    /// Echelon basis of `span(A_γ A_δ)`.
    pub fn product_span(&self, gamma: &[i64], delta: &[i64]) -> Echelon<BasisId, F> {
        let mut e = Echelon::new();
        for i in self.component(gamma) {
            for j in self.component(delta) {
                e.insert(self.mult[i][j].clone());
            }
        }
        e
    }

    /// The identity element, if one of the local units is two-sided
    /// identity for the whole algebra.
    pub fn identity(&self) -> Option<Vector<F>> {
        // the largest local unit, when one is given, is the identity candidate
        let cand = self.local_units.iter().max_by_key(|e| e.len())?.clone();
        let is_id = (0..self.dim()).all(|i| {
            let b = self.unit(i);
            self.mul(&cand, &b) == b && self.mul(&b, &cand) == b
        });
        is_id.then_some(cand)
    }

    /// Same basis graded by `Γ/Ω`.
    pub fn regrade_quotient(&self, omega: &[Element]) -> Result<GradedAlgebra<F>> {
        let q = Quotient::new(&self.group, omega)?;
        Ok(GradedAlgebra {
            group: q.quotient.clone(),
            deg: self.deg.iter().map(|g| q.project(g)).collect(),
            ..self.clone()
        })
    }

    /// `A_Ω = ⊕_{ω ∈ Ω} A_ω`, still graded by `Γ`, with the elements of `Ω`
    /// inside `window`.
    pub fn restrict(&self, omega: &[Element], window: &[Element]) -> Result<(GradedAlgebra<F>, Vec<Element>)> {
        let q = Quotient::new(&self.group, omega)?;
        let keep: Vec<BasisId> = (0..self.dim()).filter(|&i| q.contains(&self.deg[i])).collect();
        let pos: BTreeMap<BasisId, usize> = keep.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let re = |v: &Vector<F>| -> Vector<F> { v.iter().map(|(k, c)| (pos[k], c.clone())).collect() };
        let a = GradedAlgebra {
            group: self.group.clone(),
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            deg: keep.iter().map(|&i| self.deg[i].clone()).collect(),
            mult: keep.iter().map(|&i| keep.iter().map(|&j| re(&self.mult[i][j])).collect()).collect(),
            local_units: self.local_units.iter().map(re).collect(),
        };
        let win = window.iter().filter(|w| q.contains(w)).cloned().collect();
        Ok((a, win))
    }
}

/// `A_R(𝒢)` on the singleton basis: `1_g * 1_h = 1_{gh}` when composable.
/// The local units are `1_{u}` for each unit and `1_{𝒢⁽⁰⁾}`.
pub fn steinberg_algebra<F: Field>(g: &FiniteGradedGroupoid) -> GradedAlgebra<F> {
    let n = g.len();
    let names = (0..n).map(|x| String::from(g.name(x))).collect();
    let deg = (0..n).map(|x| g.degree(x).clone()).collect();
    let mult = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| match g.compose(x, y) {
                    Some(z) => BTreeMap::from([(z, F::one())]),
                    None => BTreeMap::new(),
                })
                .collect()
        })
        .collect();
    let mut local_units: Vec<Vector<F>> = g.units().iter().map(|&u| BTreeMap::from([(u, F::one())])).collect();
    local_units.push(g.units().iter().map(|&u| (u, F::one())).collect());
    GradedAlgebra { group: g.group_ref().clone(), names, deg, mult, local_units }
}

/// Per-degree outcome of the algebra-level criteria.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDegreeCheck {
    pub gamma: Element,
    /// Every local unit lies in `A_γ A_{−γ}`.
    pub local_units: bool,
    /// `A_γ A_δ = A_{γ+δ}` for every `δ` in the window and `δ = −γ`.
    pub products: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraReport {
    pub answer: bool,
    pub agree: bool,
    pub degrees: Vec<AlgebraDegreeCheck>,
}

pub fn strongly_graded_algebra_check<F: Field>(a: &GradedAlgebra<F>, window: &[Element]) -> AlgebraReport {
    let mut degrees = Vec::new();
    for gamma in window {
        let gamma = a.group.reduce(gamma);
        let neg = a.group.neg(&gamma);
        let span = a.product_span(&gamma, &neg);
        let local_units = a.local_units.iter().all(|e| span.contains(e));
        let mut deltas: Vec<Element> = window.iter().map(|w| a.group.reduce(w)).collect();
        deltas.push(neg);
        let products =
            deltas.iter().all(|d| a.product_span(&gamma, d).rank() == a.component(&a.group.add(&gamma, d)).len());
        degrees.push(AlgebraDegreeCheck { gamma, local_units, products });
    }
    let agree = degrees.iter().all(|c| c.local_units == c.products);
    let answer = degrees.iter().all(|c| c.local_units && c.products);
    AlgebraReport { answer, agree, degrees }
}

/// `Σ ± 1_V * 1_W` with each `V`, `W` a homogeneous bisection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicatorExpression {
    pub terms: Vec<(i64, BTreeSet<MorphismId>, BTreeSet<MorphismId>)>,
}

impl IndicatorExpression {
    /// Convolution value as integer coefficients on morphisms.
    pub fn evaluate(&self, g: &FiniteGradedGroupoid) -> BTreeMap<MorphismId, i64> {
        let mut out: BTreeMap<MorphismId, i64> = BTreeMap::new();
        for (sign, v, w) in &self.terms {
            for &x in v {
                for &y in w {
                    if let Some(z) = g.compose(x, y) {
                        *out.entry(z).or_insert(0) += sign;
                    }
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn display(&self, g: &FiniteGradedGroupoid) -> String {
        let set = |s: &BTreeSet<MorphismId>| {
            let v: Vec<&str> = s.iter().map(|&x| g.name(x)).collect();
            format!("{{{}}}", v.join(", "))
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, v, w)| format!("{} 1_{} * 1_{}", if *s < 0 { "-" } else { "+" }, set(v), set(w)))
            .collect();
        parts.join(" ")
    }
}

/// Writes `1_U` for a homogeneous bisection `U` of degree `γ + δ` as a
/// signed sum of products `1_V * 1_W` with `V ⊆ 𝒢_γ`-translates and
/// `W ⊆ 𝒢_δ`.
///
/// Each `u ∈ U` is factored as `u = pq` with `p ∈ 𝒢_γ` least and
/// `q = p⁻¹u ∈ 𝒢_δ`, giving the cover `U = ⋃ {p_u}{q_u}`. Inclusion–exclusion
/// over the cover yields `1_U = Σ_S (−1)^{|S|−1} 1_{⋂_S V_iW_i}`, and each
/// term is rewritten as `1_{(⋂ V_iW_i) W_{i₁}⁻¹} * 1_{W_{i₁}}` because
/// `W⁻¹W = d(W)`.
pub fn inclusion_exclusion_factorization(
    g: &FiniteGradedGroupoid,
    u: &BTreeSet<MorphismId>,
    gamma: &[i64],
    delta: &[i64],
) -> Result<IndicatorExpression> {
    let grp = g.group_ref();
    let target = grp.add(&grp.reduce(gamma), &grp.reduce(delta));
    if u.iter().any(|&x| x >= g.len()) {
        return Err(Error::domain("set names a morphism out of range"));
    }
    if !g.is_bisection(u) {
        return Err(Error::domain("U is not a bisection"));
    }
    if let Some(&x) = u.iter().find(|&&x| *g.degree(x) != target) {
        return Err(Error::domain(format!("`{}` does not have degree γ + δ", g.name(x))));
    }
    let g_gamma = g.component(gamma);
    let mut cover: Vec<(BTreeSet<MorphismId>, BTreeSet<MorphismId>, BTreeSet<MorphismId>)> = Vec::new();
    for &x in u {
        let p = g_gamma
            .iter()
            .copied()
            .find(|&p| g.codomain(p) == g.codomain(x))
            .ok_or(Error::NotStronglyGraded { morphism: x })?;
        let q = g.compose(g.inverse(p), x).expect("c(p) = c(x)");
        let v = BTreeSet::from([p]);
        let w = BTreeSet::from([q]);
        let vw = g.set_product(&v, &w);
        cover.push((v, w, vw));
    }
    let mut terms = Vec::new();
    // depth-first over subsets S with nonempty intersection
    let mut stack: Vec<(usize, usize, BTreeSet<MorphismId>, usize)> =
        (0..cover.len()).rev().map(|i| (i, 1, cover[i].2.clone(), i)).collect();
    while let Some((last, size, inter, first)) = stack.pop() {
        let w1 = &cover[first].1;
        let w1_inv: BTreeSet<MorphismId> = w1.iter().map(|&y| g.inverse(y)).collect();
        let left = g.set_product(&inter, &w1_inv);
        let sign = if size % 2 == 1 { 1 } else { -1 };
        terms.push((sign, left, w1.clone()));
        for j in (last + 1..cover.len()).rev() {
            let next: BTreeSet<MorphismId> = inter.intersection(&cover[j].2).copied().collect();
            if !next.is_empty() {
                stack.push((j, size + 1, next, first));
            }
        }
    }
    Ok(IndicatorExpression { terms })
}
