//! Finitely generated abelian grading groups `ℤ/n₁ × … × ℤ/n_r`, where a
//! modulus of `0` stands for a copy of `ℤ`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An element is a coordinate vector reduced into `[0, nᵢ)` on finite factors.
pub type Element = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<u64>) -> AbelianGroup {
        AbelianGroup { moduli }
    }

    pub fn cyclic(n: u64) -> AbelianGroup {
        AbelianGroup { moduli: vec![n] }
    }

    pub fn integers(k: usize) -> AbelianGroup {
        AbelianGroup { moduli: vec![0; k] }
    }

    pub fn trivial() -> AbelianGroup {
        AbelianGroup { moduli: Vec::new() }
    }

    /// Parses `Z`, `Z^k`, `Z/n` and products joined by `x`, e.g. `Z/2 x Z`.
    pub fn parse(s: &str) -> Result<AbelianGroup> {
        let s = s.trim();
        if s == "1" || s == "0" {
            return Ok(AbelianGroup::trivial());
        }
        let mut moduli = Vec::new();
        for part in s.split('x').map(str::trim) {
            let lower = part.to_ascii_lowercase();
            let rest = lower.strip_prefix('z').ok_or_else(|| Error::validation(format!("bad group factor `{part}`")))?;
            if rest.is_empty() {
                moduli.push(0);
            } else if let Some(k) = rest.strip_prefix('^') {
                let k: usize = k.parse().map_err(|_| Error::validation(format!("bad exponent in `{part}`")))?;
                moduli.extend(core::iter::repeat(0).take(k));
            } else if let Some(n) = rest.strip_prefix('/') {
                let n: u64 = n.parse().map_err(|_| Error::validation(format!("bad modulus in `{part}`")))?;
                if n == 0 {
                    return Err(Error::validation("Z/0 is written Z"));
                }
                moduli.push(n);
            } else {
                return Err(Error::validation(format!("bad group factor `{part}`")));
            }
        }
        Ok(AbelianGroup { moduli })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.iter().all(|&n| n > 0)
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.moduli.iter().product())
    }

    pub fn identity(&self) -> Element {
        vec![0; self.moduli.len()]
    }

    pub fn reduce(&self, x: &[i64]) -> Element {
        x.iter()
            .zip(&self.moduli)
            .map(|(&a, &n)| if n == 0 { a } else { a.rem_euclid(n as i64) })
            .collect()
    }

    pub fn element(&self, x: &[i64]) -> Result<Element> {
        if x.len() != self.moduli.len() {
            return Err(Error::domain(format!(
                "element has {} coordinates, the group has {}",
                x.len(),
                self.moduli.len()
            )));
        }
        Ok(self.reduce(x))
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Element {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, a: &[i64]) -> Element {
        let s: Vec<i64> = a.iter().map(|x| -x).collect();
        self.reduce(&s)
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Element {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> Element {
        let s: Vec<i64> = a.iter().map(|x| k * x).collect();
        self.reduce(&s)
    }

    pub fn is_identity(&self, a: &[i64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// All elements in lexicographic order; `None` for infinite groups.
    pub fn elements(&self) -> Option<Vec<Element>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for &n in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (0..n as i64).map(move |i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                })
                .collect();
        }
        Some(out)
    }

    /// Elements with every infinite coordinate in `[-radius, radius]`.
    pub fn window(&self, radius: i64) -> Vec<Element> {
        let mut out = vec![Vec::new()];
        for &n in &self.moduli {
            let range: Vec<i64> = if n == 0 { (-radius..=radius).collect() } else { (0..n as i64).collect() };
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    range.iter().map(move |&i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn display(&self) -> String {
        if self.moduli.is_empty() {
            return String::from("1");
        }
        let parts: Vec<String> =
            self.moduli.iter().map(|&n| if n == 0 { String::from("Z") } else { format!("Z/{n}") }).collect();
        parts.join(" x ")
    }
}

/// The subgroup generated by `generators` and the projection onto the
/// quotient, computed from a Smith normal form of the relation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub group: AbelianGroup,
    pub quotient: AbelianGroup,
    /// Columns of the change of basis that survive in the quotient.
    transform: Vec<Vec<i64>>,
}

impl Quotient {
    pub fn new(group: &AbelianGroup, generators: &[Element]) -> Result<Quotient> {
        let n = group.rank();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for g in generators {
            rows.push(group.element(g)?);
        }
        for (i, &m) in group.moduli.iter().enumerate() {
            if m > 0 {
                let mut r = vec![0; n];
                r[i] = m as i64;
                rows.push(r);
            }
        }
        let (diag, v) = smith_columns(rows, n);
        let mut moduli = Vec::new();
        let mut transform = Vec::new();
        for j in 0..n {
            let d = diag.get(j).copied().unwrap_or(0);
            if d == 1 {
                continue;
            }
            moduli.push(d as u64);
            transform.push((0..n).map(|i| v[i][j]).collect());
        }
        Ok(Quotient { group: group.clone(), quotient: AbelianGroup::new(moduli), transform })
    }

    pub fn project(&self, x: &[i64]) -> Element {
        let y: Vec<i64> = self.transform.iter().map(|col| col.iter().zip(x).map(|(a, b)| a * b).sum()).collect();
        self.quotient.reduce(&y)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.quotient.is_identity(&self.project(x))
    }

    /// Subgroup elements in lexicographic order, for finite groups.
    pub fn subgroup_elements(&self) -> Option<Vec<Element>> {
        Some(self.group.elements()?.into_iter().filter(|x| self.contains(x)).collect())
    }
}

/// Diagonalises the integer matrix `rows` (r × n) by unimodular row and
/// column operations. Returns the diagonal and the accumulated column
/// transform `V`, so that `x ↦ xV` followed by reduction modulo the diagonal
/// is the projection `ℤⁿ → ℤⁿ / rowspace`.
fn smith_columns(mut a: Vec<Vec<i64>>, n: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
    let mut v: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let r = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < r.min(n) {
        // pivot: smallest nonzero |entry| in the lower-right block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..n {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..r {
            let q = a[i][t].div_euclid(a[t][t]);
            if q != 0 {
                for j in t..n {
                    a[i][j] -= q * a[t][j];
                }
            }
            if a[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..n {
            let q = a[t][j].div_euclid(a[t][t]);
            if q != 0 {
                for row in a.iter_mut() {
                    row[j] -= q * row[t];
                }
                for row in v.iter_mut() {
                    row[j] -= q * row[t];
                }
            }
            if a[t][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold in any entry of the remaining block not divisible by the pivot
        let p = a[t][t];
        let bad = (t + 1..r).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
        if let Some(i) = bad {
            for j in t..n {
                a[t][j] += a[i][j];
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    (diag, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let g = AbelianGroup::parse("Z/2 x Z").unwrap();
        assert_eq!(g.moduli(), &[2, 0]);
        assert_eq!(g.display(), "Z/2 x Z");
        assert_eq!(AbelianGroup::parse("Z^2").unwrap(), AbelianGroup::integers(2));
        assert!(AbelianGroup::parse("Q").is_err());
    }

    #[test]
    fn z4_mod_two() {
        let g = AbelianGroup::cyclic(4);
        let q = Quotient::new(&g, &[vec![2]]).unwrap();
        assert_eq!(q.quotient, AbelianGroup::cyclic(2));
        assert_eq!(q.subgroup_elements().unwrap(), vec![vec![0], vec![2]]);
        assert_eq!(q.project(&[3]), vec![1]);
    }

    #[test]
    fn whole_group_quotient_is_trivial() {
        let g = AbelianGroup::cyclic(4);
        let q = Quotient::new(&g, &[vec![1]]).unwrap();
        assert_eq!(q.quotient, AbelianGroup::trivial());
    }

    #[test]
    fn z_mod_n() {
        let g = AbelianGroup::integers(1);
        let q = Quotient::new(&g, &[vec![3]]).unwrap();
        assert_eq!(q.quotient, AbelianGroup::cyclic(3));
        assert_eq!(q.project(&[-1]), vec![2]);
    }

    #[test]
    fn product_quotients_are_homomorphisms() {
        let g = AbelianGroup::new(vec![4, 6]);
        let q = Quotient::new(&g, &[vec![2, 3]]).unwrap();
        assert_eq!(q.quotient.order(), Some(12));
        let els = g.elements().unwrap();
        for a in &els {
            for b in &els {
                assert_eq!(q.project(&g.add(a, b)), q.quotient.add(&q.project(a), &q.project(b)));
            }
        }
        assert_eq!(q.subgroup_elements().unwrap().len(), 2);
    }
}
