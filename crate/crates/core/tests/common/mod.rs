//! Sample families shared by the acceptance run and the property tests.
#![allow(dead_code)]

use gradecheck_core::graph::Graph;
use gradecheck_core::group::{AbelianGroup, Element};
use gradecheck_core::groupoid::FiniteGradedGroupoid;
use gradecheck_core::kgraph::{match_squares, KGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Edge multiplicities `counts[i * n + j]` for `i → j`.
fn to_graph(n: usize, counts: &[usize]) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for _ in 0..counts[i * n + j] {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

fn weakly_connected(n: usize, counts: &[usize]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if !seen[w] && (counts[v * n + w] > 0 || counts[w * n + v] > 0) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Calls `f` once per isomorphism class of connected graphs on exactly `n`
/// vertices with at most `max_par` parallel edges per ordered pair (loops
/// included). Each class is visited through its least multiplicity table.
pub fn for_each_connected_graph(n: usize, max_par: usize, mut f: impl FnMut(&Graph)) {
    let base = max_par + 1;
    let cells = n * n;
    let total = base.pow(cells as u32);
    let perms = permutations(n);
    let mut counts = vec![0usize; cells];
    for code in 0..total {
        let mut c = code;
        for cell in counts.iter_mut() {
            *cell = c % base;
            c /= base;
        }
        let minimal = perms.iter().all(|p| {
            for idx in 0..cells {
                let (i, j) = (idx / n, idx % n);
                let a = counts[idx];
                let b = counts[p[i] * n + p[j]];
                if a != b {
                    return b > a;
                }
            }
            true
        });
        if minimal && weakly_connected(n, &counts) {
            f(&to_graph(n, &counts));
        }
    }
}

pub fn connected_graphs(n: usize, max_par: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for_each_connected_graph(n, max_par, |g| out.push(g.clone()));
    out
}

/// Uniform random connected labelled graphs on `n` vertices with at most
/// `max_par` parallel edges per ordered pair.
pub fn random_connected_graphs(n: usize, max_par: usize, count: usize, seed: u64) -> Vec<Graph> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let counts: Vec<usize> = (0..n * n).map(|_| r.gen_range(0..=max_par)).collect();
        if weakly_connected(n, &counts) {
            out.push(to_graph(n, &counts));
        }
    }
    out
}

/// Random graphs on 1 to 6 vertices, at most two parallel edges per pair.
pub fn random_graphs(count: usize, seed: u64) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=6);
            let density = r.gen_range(0.1..0.5);
            let counts: Vec<usize> = (0..n * n)
                .map(|_| if r.gen_bool(density) { r.gen_range(1..=2) } else { 0 })
                .collect();
            to_graph(n, &counts)
        })
        .collect()
}

/// Graphs with a core of at most four vertices and one or two rays.
pub fn ray_graphs(count: usize, seed: u64) -> Vec<Graph> {
    let mut r = rng(seed);
    let mut out = vec![
        Graph::from_parts(1, &[], &[], &[vec![0]]),
        Graph::from_parts(1, &[(0, 0)], &[], &[vec![0]]),
        Graph::from_parts(2, &[(0, 1), (1, 0)], &[], &[vec![0]]),
        Graph::from_parts(3, &[(0, 1), (1, 2), (2, 0)], &[], &[vec![1]]),
        Graph::from_parts(2, &[(0, 1)], &[], &[vec![1], vec![0]]),
    ];
    while out.len() < count {
        let n = r.gen_range(1..=4);
        let p = r.gen_range(0.15..0.5);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if r.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        let rays: Vec<Vec<usize>> = (0..r.gen_range(1..=2))
            .map(|_| {
                let mut ent: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.4)).collect();
                if ent.is_empty() {
                    ent.push(r.gen_range(0..n));
                }
                ent
            })
            .collect();
        out.push(Graph::from_parts(n, &edges, &[], &rays));
    }
    out
}

/// Random sourceless 2-graphs on up to three vertices with one or two
/// incoming edges of each colour at every vertex.
pub fn random_two_graphs(count: usize, seed: u64) -> Vec<KGraph> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = r.gen_range(1..=3);
        let mut edges = Vec::new();
        for color in 0..2 {
            for v in 0..n {
                for _ in 0..r.gen_range(1..=2) {
                    edges.push((color, r.gen_range(0..n), v));
                }
            }
        }
        let mut pick_rng = rng(r.gen());
        let Some(squares) = match_squares(2, n, &edges, |k| pick_rng.gen_range(0..k)) else { continue };
        if let Ok(k) = KGraph::from_parts(2, n, &edges, &squares) {
            out.push(k);
        }
    }
    out
}

/// One transitive block `{0..n} × H × {0..n}` with `H = ∏ ℤ/hᵢ`.
#[derive(Debug, Clone)]
pub struct Block {
    pub n: usize,
    pub isotropy: Vec<u64>,
    pub phi: Vec<Element>,
    /// Image of each generator of `H`.
    pub chi: Vec<Element>,
}

impl Block {
    pub fn size(&self) -> usize {
        self.n * self.n * self.isotropy.iter().product::<u64>() as usize
    }

    pub fn build(&self, group: &AbelianGroup) -> Option<FiniteGradedGroupoid> {
        let hg = AbelianGroup::new(self.isotropy.clone());
        FiniteGradedGroupoid::transitive(group, self.n, &hg, &self.phi, &self.chi).ok()
    }
}

/// Abelian isotropy groups of order at most `max`, as cyclic factors.
fn isotropy_groups(max: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    out.extend((2..=max as u64).map(|h| vec![h]));
    if max >= 4 {
        out.push(vec![2, 2]);
    }
    out
}

fn tuples(els: &[Element], len: usize, first: Option<Element>) -> Vec<Vec<Element>> {
    let mut out: Vec<Vec<Element>> = vec![first.into_iter().collect()];
    let have = out[0].len();
    for _ in have..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                els.iter().map(move |e| {
                    let mut q = p.clone();
                    q.push(e.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// Every transitive block with at most `max` morphisms and `φ(0) = 0`.
pub fn blocks(group: &AbelianGroup, max: usize) -> Vec<Block> {
    let els = group.elements().expect("finite group");
    let mut out = Vec::new();
    for n in (1..=max).take_while(|n| n * n <= max) {
        for iso in isotropy_groups(max / (n * n)) {
            for phi in tuples(&els, n, Some(group.identity())) {
                for chi in tuples(&els, iso.len(), None) {
                    // each χ(gen) must be killed by the order of its generator
                    if chi.iter().zip(&iso).any(|(c, &h)| !group.is_identity(&group.scale(h as i64, c))) {
                        continue;
                    }
                    out.push(Block { n, isotropy: iso.clone(), phi: phi.clone(), chi });
                }
            }
        }
    }
    out
}

/// Disjoint unions of blocks (as multisets) with at most `max` morphisms.
pub fn groupoid_samples(group: &AbelianGroup, max: usize) -> Vec<FiniteGradedGroupoid> {
    let bs = blocks(group, max);
    let built: Vec<FiniteGradedGroupoid> = bs.iter().map(|b| b.build(group).expect("valid block")).collect();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>, usize)> = vec![(0, Vec::new(), 0)];
    while let Some((from, chosen, size)) = stack.pop() {
        if !chosen.is_empty() {
            let parts: Vec<FiniteGradedGroupoid> = chosen.iter().map(|&i| built[i].clone()).collect();
            out.push(if parts.len() == 1 {
                parts.into_iter().next().unwrap()
            } else {
                FiniteGradedGroupoid::disjoint_union(&parts).unwrap()
            });
        }
        for i in from..bs.len() {
            if size + bs[i].size() <= max {
                let mut c = chosen.clone();
                c.push(i);
                stack.push((i, c, size + bs[i].size()));
            }
        }
    }
    out
}

pub fn cyclic_groups() -> Vec<AbelianGroup> {
    vec![AbelianGroup::cyclic(2), AbelianGroup::cyclic(3), AbelianGroup::cyclic(4)]
}
