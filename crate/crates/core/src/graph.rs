//! Finite directed multigraphs with infinite-emitter annotations and attached
//! rays, together with the path machinery used by every graph-level check.
//!
//! Vertices and edges are stored sorted by name, so vertex and edge indices
//! follow the lexicographic order of identifiers. Every enumeration in this
//! crate inherits that order.
//!
//! Infinite emitters are annotations only. Their unmaterialised edges are
//! taken to add no new path into any presented vertex, so receipt and
//! reachability are always computed over materialised edges.
//!
//! A [`Ray`] presents the infinite tail `ρ(0) → ρ(1) → ρ(2) → …` entered from a
//! set of core vertices by one edge each into `ρ(0)`. Ray vertices never lead
//! back into the core.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: VertexId,
    pub rng: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub name: String,
    /// Core vertices with an edge into the ray head, sorted.
    pub entries: Vec<VertexId>,
}

/// A validated graph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    infinite_emitters: BTreeSet<VertexId>,
    rays: Vec<Ray>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    ray_entries: Vec<Vec<usize>>,
    fingerprint: u64,
}

/// Unvalidated graph description by name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    /// `(id, src, rng)`
    pub edges: Vec<(String, String, String)>,
    pub infinite_emitters: Vec<String>,
    /// `(id, entries)`
    pub rays: Vec<(String, Vec<String>)>,
}

impl Graph {
    pub fn new(spec: &GraphSpec) -> Result<Graph> {
        let mut names = BTreeSet::new();
        let mut vertices = spec.vertices.clone();
        vertices.sort();
        for v in &vertices {
            if !names.insert(v.as_str()) {
                return Err(Error::validation(format!("duplicate vertex identifier `{v}`")));
            }
        }
        let index: BTreeMap<&str, VertexId> =
            vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let lookup = |what: &str, name: &str, owner: &str| -> Result<VertexId> {
            index.get(name).copied().ok_or_else(|| {
                Error::validation(format!("{what} of `{owner}` is undeclared vertex `{name}`"))
            })
        };

        let mut raw_edges = spec.edges.clone();
        raw_edges.sort();
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (id, src, rng) in &raw_edges {
            if !names.insert(id.as_str()) {
                return Err(Error::validation(format!("identifier `{id}` of edge is already in use")));
            }
            edges.push(Edge {
                name: id.clone(),
                src: lookup("source", src, id)?,
                rng: lookup("range", rng, id)?,
            });
        }

        let mut infinite_emitters = BTreeSet::new();
        for v in &spec.infinite_emitters {
            infinite_emitters.insert(lookup("annotation", v, "infinite_emitters")?);
        }

        let mut raw_rays = spec.rays.clone();
        raw_rays.sort();
        let mut rays = Vec::with_capacity(raw_rays.len());
        for (id, entries) in &raw_rays {
            if !names.insert(id.as_str()) {
                return Err(Error::validation(format!("identifier `{id}` of ray is already in use")));
            }
            if entries.is_empty() {
                return Err(Error::validation(format!("ray `{id}` has no entry vertex")));
            }
            let mut ent = BTreeSet::new();
            for w in entries {
                ent.insert(lookup("entry", w, id)?);
            }
            rays.push(Ray { name: id.clone(), entries: ent.into_iter().collect() });
        }

        Ok(Self::assemble(vertices, edges, infinite_emitters, rays))
    }

    fn assemble(
        vertices: Vec<String>,
        edges: Vec<Edge>,
        infinite_emitters: BTreeSet<VertexId>,
        rays: Vec<Ray>,
    ) -> Graph {
        let n = vertices.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.src].push(i);
            in_edges[e.rng].push(i);
        }
        let mut ray_entries = vec![Vec::new(); n];
        for (r, ray) in rays.iter().enumerate() {
            for &w in &ray.entries {
                ray_entries[w].push(r);
            }
        }
        let fingerprint = fingerprint(&vertices, &edges, &infinite_emitters, &rays);
        Graph { vertices, edges, infinite_emitters, rays, out_edges, in_edges, ray_entries, fingerprint }
    }

    /// Structural hash identifying the graph; elements built over different
    /// graphs carry different fingerprints.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Builds a plain finite graph on `n` vertices from `(src, rng)` pairs.
    /// Vertices are named `v00, v01, …` and edges `e000, e001, …` in the
    /// given order, so indices coincide with positions.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Graph {
        Self::from_parts(n, edges, &[], &[])
    }

    /// Like [`Graph::from_edges`] with infinite emitters and rays given by
    /// index. Rays are named `r00, r01, …`.
    pub fn from_parts(
        n: usize,
        edges: &[(VertexId, VertexId)],
        infinite_emitters: &[VertexId],
        rays: &[Vec<VertexId>],
    ) -> Graph {
        let vertices = (0..n).map(|i| format!("v{i:02}")).collect();
        let edges = edges
            .iter()
            .enumerate()
            .map(|(i, &(src, rng))| {
                assert!(src < n && rng < n, "edge endpoint out of range");
                Edge { name: format!("e{i:03}"), src, rng }
            })
            .collect();
        let rays = rays
            .iter()
            .enumerate()
            .map(|(i, ent)| {
                let ent: BTreeSet<_> = ent.iter().copied().collect();
                assert!(!ent.is_empty() && ent.iter().all(|&w| w < n));
                Ray { name: format!("r{i:02}"), entries: ent.into_iter().collect() }
            })
            .collect();
        Self::assemble(vertices, edges, infinite_emitters.iter().copied().collect(), rays)
    }

    /// Returns the description this graph was built from, in canonical order.
    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| (e.name.clone(), self.vertices[e.src].clone(), self.vertices[e.rng].clone()))
                .collect(),
            infinite_emitters: self.infinite_emitters.iter().map(|&v| self.vertices[v].clone()).collect(),
            rays: self
                .rays
                .iter()
                .map(|r| (r.name.clone(), r.entries.iter().map(|&w| self.vertices[w].clone()).collect()))
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> core::ops::Range<VertexId> {
        0..self.vertices.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<VertexId> {
        self.vertices.binary_search_by(|x| x.as_str().cmp(name)).ok()
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, name: &str) -> Option<EdgeId> {
        self.edges.binary_search_by(|x| x.name.as_str().cmp(name)).ok()
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v]
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    /// Indices of rays entered from `v`.
    pub fn rays_entered_from(&self, v: VertexId) -> &[usize] {
        &self.ray_entries[v]
    }

    pub fn infinite_emitters(&self) -> &BTreeSet<VertexId> {
        &self.infinite_emitters
    }

    pub fn is_infinite_emitter(&self, v: VertexId) -> bool {
        self.infinite_emitters.contains(&v)
    }

    pub fn is_finite(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_row_finite(&self) -> bool {
        self.infinite_emitters.is_empty()
    }

    /// A vertex is regular when it emits finitely many and at least one edge.
    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.is_infinite_emitter(v) && (!self.out_edges[v].is_empty() || !self.ray_entries[v].is_empty())
    }

    /// Relabels vertices by `perm` (old index → new index) keeping all names
    /// tied to their new positions. Used to test labelling invariance.
    pub fn relabel(&self, vertex_names: &[String], edge_names: &[String]) -> Result<Graph> {
        let mut spec = GraphSpec::default();
        let rename_v = |v: VertexId| vertex_names[v].clone();
        spec.vertices = self.vertices().map(rename_v).collect();
        spec.edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| (edge_names[i].clone(), rename_v(e.src), rename_v(e.rng)))
            .collect();
        spec.infinite_emitters = self.infinite_emitters.iter().map(|&v| rename_v(v)).collect();
        spec.rays = self
            .rays
            .iter()
            .map(|r| (r.name.clone(), r.entries.iter().map(|&w| rename_v(w)).collect()))
            .collect();
        Graph::new(&spec)
    }
}

fn fingerprint(vertices: &[String], edges: &[Edge], emitters: &BTreeSet<VertexId>, rays: &[Ray]) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x0100_0000_01b3);
    };
    for v in vertices {
        eat(v.as_bytes());
    }
    for e in edges {
        eat(e.name.as_bytes());
        eat(&(e.src as u64).to_le_bytes());
        eat(&(e.rng as u64).to_le_bytes());
    }
    for v in emitters {
        eat(&(*v as u64).to_le_bytes());
    }
    for r in rays {
        eat(r.name.as_bytes());
        for w in &r.entries {
            eat(&(*w as u64).to_le_bytes());
        }
    }
    h
}

/// A finite path: a start vertex and a composable edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    start: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path { start: v, edges: Vec::new() }
    }

    /// Builds a path from a nonempty edge sequence, checking composability.
    pub fn from_edges(g: &Graph, edges: Vec<EdgeId>) -> Result<Path> {
        let Some(&first) = edges.first() else {
            return Err(Error::domain("an edge sequence for a path must be nonempty"));
        };
        for w in edges.windows(2) {
            if g.edge(w[0]).rng != g.edge(w[1]).src {
                return Err(Error::domain(format!(
                    "edges `{}` and `{}` are not composable",
                    g.edge(w[0]).name,
                    g.edge(w[1]).name
                )));
            }
        }
        Ok(Path { start: g.edge(first).src, edges })
    }

    pub(crate) fn from_raw(start: VertexId, edges: Vec<EdgeId>) -> Path {
        Path { start, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn source(&self) -> VertexId {
        self.start
    }

    pub fn range(&self, g: &Graph) -> VertexId {
        self.edges.last().map_or(self.start, |&e| g.edge(e).rng)
    }

    /// Vertex reached after the first `i` edges.
    pub fn vertex_at(&self, g: &Graph, i: usize) -> VertexId {
        if i == 0 {
            self.start
        } else {
            g.edge(self.edges[i - 1]).rng
        }
    }

    /// `self` followed by `other`, if composable.
    pub fn concat(&self, g: &Graph, other: &Path) -> Option<Path> {
        if self.range(g) != other.start {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path { start: self.start, edges })
    }

    /// If `prefix` is an initial subpath of `self`, the remainder.
    pub fn strip_prefix(&self, g: &Graph, prefix: &Path) -> Option<Path> {
        if self.start != prefix.start || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        let rest = self.edges[prefix.edges.len()..].to_vec();
        Some(Path { start: prefix.range(g), edges: rest })
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            return String::from(g.vertex_name(self.start));
        }
        let names: Vec<&str> = self.edges.iter().map(|&e| g.edge(e).name.as_str()).collect();
        names.join(" ")
    }
}

/// The shift map `σⁿ`: drops the first `n` edges. `σⁿ` of a length-`n`
/// path is its range vertex.
pub fn shift(g: &Graph, p: &Path, n: usize) -> Result<Path> {
    if n > p.len() {
        return Err(Error::domain(format!("cannot shift a path of length {} by {n}", p.len())));
    }
    Ok(Path { start: p.vertex_at(g, n), edges: p.edges[n..].to_vec() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VertexFlags {
    pub sink: bool,
    pub infinite_emitter: bool,
    pub singular: bool,
    pub isolated: bool,
    /// Receives no edge.
    pub source: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClassification {
    pub flags: Vec<VertexFlags>,
    pub row_finite: bool,
    pub has_sink: bool,
    pub has_isolated: bool,
    pub source_free: bool,
}

impl VertexClassification {
    pub fn sinks(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.flags.iter().enumerate().filter(|(_, f)| f.sink).map(|(v, _)| v)
    }

    pub fn singular(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.flags.iter().enumerate().filter(|(_, f)| f.singular).map(|(v, _)| v)
    }
}

/// Per-vertex flags. Ray vertices are neither sinks nor singular, so an
/// entry vertex of a ray always emits.
pub fn classify_vertices(g: &Graph) -> VertexClassification {
    let flags: Vec<VertexFlags> = g
        .vertices()
        .map(|v| {
            let inf = g.is_infinite_emitter(v);
            let emits = inf || !g.out_edges(v).is_empty() || !g.rays_entered_from(v).is_empty();
            let receives = !g.in_edges(v).is_empty();
            VertexFlags {
                sink: !emits,
                infinite_emitter: inf,
                singular: !emits || inf,
                isolated: !emits && !receives,
                source: !receives,
            }
        })
        .collect();
    VertexClassification {
        row_finite: g.is_row_finite(),
        has_sink: flags.iter().any(|f| f.sink),
        has_isolated: flags.iter().any(|f| f.isolated),
        source_free: flags.iter().all(|f| !f.source),
        flags,
    }
}

/// Vertices lying on a closed core path of positive length.
pub fn cycle_vertices(g: &Graph) -> BTreeSet<VertexId> {
    g.vertices()
        .filter(|&v| {
            let mut seen = vec![false; g.vertex_count()];
            let mut stack: Vec<VertexId> = g.out_edges(v).iter().map(|&e| g.edge(e).rng).collect();
            while let Some(u) = stack.pop() {
                if u == v {
                    return true;
                }
                if core::mem::replace(&mut seen[u], true) {
                    continue;
                }
                stack.extend(g.out_edges(u).iter().map(|&e| g.edge(e).rng));
            }
            false
        })
        .collect()
}

/// `layers[j]` holds the vertices from which some path of length `j` ends at
/// `target`, for `j ≤ n`.
fn backward_layers(g: &Graph, target: VertexId, n: usize) -> Vec<Vec<bool>> {
    let mut layers = Vec::with_capacity(n + 1);
    let mut cur = vec![false; g.vertex_count()];
    cur[target] = true;
    layers.push(cur);
    for _ in 0..n {
        let prev = layers.last().unwrap();
        let mut next = vec![false; g.vertex_count()];
        for e in g.edges() {
            if prev[e.rng] {
                next[e.src] = true;
            }
        }
        layers.push(next);
    }
    layers
}

/// All core paths of length `n` with range `v`, in lexicographic order of
/// edge identifiers.
pub fn paths_into(g: &Graph, v: VertexId, n: usize, cap: usize) -> Result<Vec<Path>> {
    if v >= g.vertex_count() {
        return Err(Error::domain(format!("vertex index {v} out of range")));
    }
    let layers = backward_layers(g, v, n);
    if n == 0 {
        return Ok(vec![Path::vertex(v)]);
    }
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(n);
    // first edge: any edge whose range can still reach v in n-1 steps
    for (e, edge) in g.edges().iter().enumerate() {
        if layers[n - 1][edge.rng] {
            word.push(e);
            extend_into(g, &layers, n - 1, &mut word, &mut out, cap)?;
            word.pop();
        }
    }
    Ok(out)
}

fn extend_into(
    g: &Graph,
    layers: &[Vec<bool>],
    remaining: usize,
    word: &mut Vec<EdgeId>,
    out: &mut Vec<Path>,
    cap: usize,
) -> Result<()> {
    if remaining == 0 {
        if out.len() >= cap {
            return Err(Error::Resource { what: String::from("path enumeration"), cap });
        }
        out.push(Path { start: g.edge(word[0]).src, edges: word.clone() });
        return Ok(());
    }
    let here = g.edge(*word.last().unwrap()).rng;
    for &e in g.out_edges(here) {
        if layers[remaining - 1][g.edge(e).rng] {
            word.push(e);
            extend_into(g, layers, remaining - 1, word, out, cap)?;
            word.pop();
        }
    }
    Ok(())
}

/// All core paths of length `n` with source `v`, in lexicographic order.
pub fn paths_from(g: &Graph, v: VertexId, n: usize, cap: usize) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(n);
    fn go(
        g: &Graph,
        at: VertexId,
        start: VertexId,
        remaining: usize,
        word: &mut Vec<EdgeId>,
        out: &mut Vec<Path>,
        cap: usize,
    ) -> Result<()> {
        if remaining == 0 {
            if out.len() >= cap {
                return Err(Error::Resource { what: String::from("path enumeration"), cap });
            }
            out.push(Path { start, edges: word.clone() });
            return Ok(());
        }
        for &e in g.out_edges(at) {
            word.push(e);
            go(g, g.edge(e).rng, start, remaining - 1, word, out, cap)?;
            word.pop();
        }
        Ok(())
    }
    go(g, v, v, n, &mut word, &mut out, cap)?;
    Ok(out)
}

/// The lexicographically least core path of length `n` ending at `v`.
pub fn least_path_into(g: &Graph, v: VertexId, n: usize) -> Option<Path> {
    if n == 0 {
        return Some(Path::vertex(v));
    }
    let layers = backward_layers(g, v, n);
    let first = (0..g.edge_count()).find(|&e| layers[n - 1][g.edge(e).rng])?;
    let mut word = vec![first];
    for remaining in (0..n - 1).rev() {
        let here = g.edge(*word.last().unwrap()).rng;
        let next = g.out_edges(here).iter().copied().find(|&e| layers[remaining][g.edge(e).rng])?;
        word.push(next);
    }
    Some(Path { start: g.edge(first).src, edges: word })
}

/// Vertices reachable from `v` by a path of length exactly `j`, for `j < n`.
pub fn reachable_layers(g: &Graph, v: VertexId, n: usize) -> Vec<BTreeSet<VertexId>> {
    let mut layers = Vec::with_capacity(n);
    let mut cur = BTreeSet::from([v]);
    for _ in 0..n {
        let next = cur.iter().flat_map(|&u| g.out_edges(u).iter().map(|&e| g.edge(e).rng)).collect();
        layers.push(core::mem::replace(&mut cur, next));
    }
    layers
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_graph() -> Graph {
        Graph::from_edges(1, &[(0, 0)])
    }

    #[test]
    fn classify_loop() {
        let c = classify_vertices(&loop_graph());
        assert!(!c.flags[0].sink && !c.flags[0].isolated);
        assert!(c.row_finite);
    }

    #[test]
    fn classify_single_edge() {
        let c = classify_vertices(&Graph::from_edges(2, &[(0, 1)]));
        assert!(c.flags[1].sink && c.flags[1].singular);
        assert!(!c.flags[0].isolated);
        assert!(c.has_sink);
    }

    #[test]
    fn classify_infinite_emitter() {
        let g = Graph::from_parts(1, &[], &[0], &[]);
        let c = classify_vertices(&g);
        assert!(!c.row_finite);
        assert!(c.flags[0].singular && c.flags[0].infinite_emitter);
        assert!(!c.flags[0].sink && !c.flags[0].isolated);
    }

    #[test]
    fn ray_entry_is_not_a_sink() {
        let g = Graph::from_parts(1, &[], &[], &[vec![0]]);
        let c = classify_vertices(&g);
        assert!(!c.flags[0].sink && !c.flags[0].singular);
    }

    #[test]
    fn cycles() {
        assert_eq!(cycle_vertices(&loop_graph()), BTreeSet::from([0]));
        assert_eq!(cycle_vertices(&Graph::from_edges(2, &[(0, 1), (1, 0)])), BTreeSet::from([0, 1]));
        assert!(cycle_vertices(&Graph::from_edges(2, &[(0, 1)])).is_empty());
    }

    #[test]
    fn shift_examples() {
        let g = loop_graph();
        let p = Path::from_edges(&g, vec![0, 0]).unwrap();
        assert_eq!(shift(&g, &p, 0).unwrap(), p);
        assert_eq!(shift(&g, &p, 1).unwrap().edges(), &[0]);
        assert_eq!(shift(&g, &p, 2).unwrap(), Path::vertex(0));
        assert!(matches!(shift(&g, &p, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn path_enumeration() {
        let g = loop_graph();
        assert_eq!(paths_into(&g, 0, 3, 100).unwrap(), vec![Path::from_raw(0, vec![0, 0, 0])]);
        let g = Graph::from_edges(2, &[(0, 1)]);
        assert_eq!(paths_into(&g, 1, 1, 100).unwrap(), vec![Path::from_raw(0, vec![0])]);
        assert!(paths_into(&g, 1, 2, 100).unwrap().is_empty());
    }

    #[test]
    fn enumeration_is_lexicographic_and_capped() {
        // two parallel loops
        let g = Graph::from_edges(1, &[(0, 0), (0, 0)]);
        let ps = paths_into(&g, 0, 3, 100).unwrap();
        assert_eq!(ps.len(), 8);
        assert!(ps.windows(2).all(|w| w[0].edges() < w[1].edges()));
        assert!(matches!(paths_into(&g, 0, 3, 5), Err(Error::Resource { .. })));
        assert_eq!(least_path_into(&g, 0, 3).unwrap(), ps[0]);
    }

    #[test]
    fn validation_names_offending_edge() {
        let spec = GraphSpec {
            vertices: vec!["u".into()],
            edges: vec![("e".into(), "u".into(), "w".into())],
            ..Default::default()
        };
        let err = Graph::new(&spec).unwrap_err();
        assert!(format!("{err}").contains("`e`"));
        let spec = GraphSpec {
            vertices: vec!["u".into()],
            edges: vec![("u".into(), "u".into(), "u".into())],
            ..Default::default()
        };
        assert!(Graph::new(&spec).is_err());
    }

    #[test]
    fn classification_ignores_edge_order() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 2)]);
        let b = Graph::from_edges(3, &[(2, 2), (0, 1), (1, 2)]);
        assert_eq!(classify_vertices(&a), classify_vertices(&b));
        assert_eq!(classify_vertices(&a), classify_vertices(&a));
    }
}
