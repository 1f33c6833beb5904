//! Simple graphs on at most 16 vertices: bitset adjacency, canonical forms,
//! graph6 I/O, triangle-free and anti-triangle-free enumeration, subgraph
//! containment, and the forbidden-pattern library used by the classifier.

use crate::algebraic::{spindle_root, ExactReal, SpindleRootHandle};
use crate::ratio::rat_i;
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::HashSet;
use std::error::Error;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

/// Largest vertex count supported by the bitset representation.
pub const MAX_ORDER: usize = 16;

/// Largest order accepted by the exhaustive enumeration routines.
pub const MAX_ENUMERATION_ORDER: usize = 12;

/// Errors from graph construction, decoding, and enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// A vertex count exceeds the representation or enumeration cap.
    OrderTooLarge { order: usize, cap: usize },
    /// Malformed graph6 input, with the byte offset of the problem.
    Graph6 { offset: usize, message: String },
    /// Invalid parameters for a named pattern.
    Pattern { message: String },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::OrderTooLarge { order, cap } => {
                write!(f, "graph order {order} exceeds the supported maximum {cap}")
            }
            GraphError::Graph6 { offset, message } => {
                write!(f, "invalid graph6 at byte {offset}: {message}")
            }
            GraphError::Pattern { message } => write!(f, "invalid pattern: {message}"),
        }
    }
}

impl Error for GraphError {}

/// An undirected simple graph on at most [`MAX_ORDER`] vertices.
///
/// Adjacency is stored as one 16-bit mask per vertex. Equality and hashing
/// are *labelled* (use [`SimpleGraph::is_isomorphic`] or
/// [`SimpleGraph::canonical_form`] for isomorphism questions). The canonical
/// form is computed on first use and cached.
#[derive(Debug, Clone)]
pub struct SimpleGraph {
    order: usize,
    adj: Vec<u16>,
    canon: OnceLock<Vec<u8>>,
}

impl PartialEq for SimpleGraph {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.adj == other.adj
    }
}

impl Eq for SimpleGraph {}

impl Hash for SimpleGraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.adj.hash(state);
    }
}

impl SimpleGraph {
    /// An edgeless graph on `order` vertices.
    pub fn new(order: usize) -> Result<Self, GraphError> {
        if order > MAX_ORDER {
            return Err(GraphError::OrderTooLarge { order, cap: MAX_ORDER });
        }
        Ok(SimpleGraph {
            order,
            adj: vec![0; order],
            canon: OnceLock::new(),
        })
    }

    /// A graph on `order` vertices with the given edges.
    pub fn with_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = SimpleGraph::new(order)?;
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// The complete graph on `order` vertices.
    pub fn complete(order: usize) -> Result<Self, GraphError> {
        let mut g = SimpleGraph::new(order)?;
        for u in 0..order {
            for v in (u + 1)..order {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    /// The cycle `0 - 1 - ... - (order-1) - 0` (order must be at least 3).
    pub fn cycle(order: usize) -> Result<Self, GraphError> {
        if order < 3 {
            return Err(GraphError::Pattern {
                message: format!("a cycle needs at least 3 vertices, got {order}"),
            });
        }
        let mut g = SimpleGraph::new(order)?;
        for v in 0..order {
            g.add_edge(v, (v + 1) % order);
        }
        Ok(g)
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Adds the edge `uv`. Panics on loops or out-of-range vertices.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.order && v < self.order, "bad edge ({u}, {v})");
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        self.canon = OnceLock::new();
    }

    /// Removes the edge `uv` if present.
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.order && v < self.order, "bad edge ({u}, {v})");
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        self.canon = OnceLock::new();
    }

    /// Whether `uv` is an edge.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.order && v < self.order && self.adj[u] >> v & 1 == 1
    }

    /// Neighborhood of `v` as a bitmask.
    pub fn neighbors(&self, v: usize) -> u16 {
        self.adj[v]
    }

    /// Degree of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// All edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order {
            for v in (u + 1)..self.order {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// The complement graph.
    pub fn complement(&self) -> SimpleGraph {
        let all = if self.order == 16 { !0u16 } else { (1u16 << self.order) - 1 };
        let adj = (0..self.order)
            .map(|v| !self.adj[v] & all & !(1 << v))
            .collect();
        SimpleGraph {
            order: self.order,
            adj,
            canon: OnceLock::new(),
        }
    }

    /// Relabels vertices: vertex `i` of the result is vertex `perm[i]` here.
    pub fn relabel(&self, perm: &[usize]) -> SimpleGraph {
        assert_eq!(perm.len(), self.order, "permutation length mismatch");
        let mut g = SimpleGraph::new(self.order).expect("same order");
        for i in 0..self.order {
            for j in (i + 1)..self.order {
                if self.has_edge(perm[i], perm[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// The subgraph induced on the listed vertices (in the given order).
    pub fn induced_subgraph(&self, vertices: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::new(vertices.len()).expect("within cap");
        for i in 0..vertices.len() {
            for j in (i + 1)..vertices.len() {
                if self.has_edge(vertices[i], vertices[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Disjoint union, with `other`'s vertices shifted past `self`'s.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> Result<SimpleGraph, GraphError> {
        let n = self.order + other.order;
        let mut g = SimpleGraph::new(n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(self.order + u, self.order + v);
        }
        Ok(g)
    }

    /// Whether the masked vertex set is independent.
    pub fn mask_is_independent(&self, mask: u16) -> bool {
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            if self.adj[v] & mask != 0 {
                return false;
            }
            m &= m - 1;
        }
        true
    }

    /// Whether the graph has no triangle.
    pub fn is_triangle_free(&self) -> bool {
        for u in 0..self.order {
            // Only scan neighbors v > u to visit each edge once.
            let mut m = self.adj[u] & !(((1u32 << (u + 1)) - 1) as u16);
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                if self.adj[u] & self.adj[v] != 0 {
                    return false;
                }
                m &= m - 1;
            }
        }
        true
    }

    /// Whether the graph has no independent set of size 3 (anti-triangle).
    pub fn is_anti_triangle_free(&self) -> bool {
        self.complement().is_triangle_free()
    }

    /// The canonical form: order byte followed by the lexicographically
    /// smallest upper-triangle bitstring (column-major) over all vertex
    /// orderings. Two graphs are isomorphic iff their forms are equal.
    pub fn canonical_form(&self) -> &[u8] {
        self.canon.get_or_init(|| self.canonical_compute())
    }

    /// Whether `self` and `other` are isomorphic.
    pub fn is_isomorphic(&self, other: &SimpleGraph) -> bool {
        self.order == other.order && self.canonical_form() == other.canonical_form()
    }

    fn canonical_compute(&self) -> Vec<u8> {
        let n = self.order;
        let nbits = n * n.saturating_sub(1) / 2;
        let mut out = Vec::with_capacity(1 + nbits);
        out.push(n as u8);
        if n == 0 {
            return out;
        }
        let mut search = CanonSearch {
            g: self,
            n,
            ord: Vec::with_capacity(n),
            // Sentinel 2 is larger than any bit, so the first complete
            // ordering commits itself position by position.
            best: vec![2u8; nbits],
        };
        search.dfs(0);
        out.extend_from_slice(&search.best);
        out
    }

    /// graph6 encoding (order up to 62; here capped by [`MAX_ORDER`]).
    pub fn to_graph6(&self) -> String {
        let n = self.order;
        let mut out = vec![(n as u8) + 63];
        let mut acc = 0u8;
        let mut nbits = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | u8::from(self.has_edge(i, j));
                nbits += 1;
                if nbits == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            out.push((acc << (6 - nbits)) + 63);
        }
        String::from_utf8(out).expect("graph6 bytes are printable ASCII")
    }

    /// Decodes a graph6 string; errors carry the byte offset of the fault.
    pub fn from_graph6(s: &str) -> Result<SimpleGraph, GraphError> {
        let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
        let fail = |offset: usize, message: &str| GraphError::Graph6 {
            offset,
            message: message.to_string(),
        };
        if bytes.is_empty() {
            return Err(fail(0, "empty input"));
        }
        let head = bytes[0];
        if head == 126 {
            return Err(fail(0, "orders above 62 are not supported"));
        }
        if !(63..126).contains(&head) {
            return Err(fail(0, "header byte out of range"));
        }
        let order = (head - 63) as usize;
        if order > MAX_ORDER {
            return Err(GraphError::OrderTooLarge { order, cap: MAX_ORDER });
        }
        let nbits = order * order.saturating_sub(1) / 2;
        let needed = nbits.div_ceil(6);
        let data = &bytes[1..];
        if data.len() < needed {
            return Err(fail(bytes.len(), "truncated: missing adjacency bytes"));
        }
        if data.len() > needed {
            return Err(fail(1 + needed, "unexpected trailing byte"));
        }
        let mut g = SimpleGraph::new(order)?;
        let mut k = 0usize;
        for j in 1..order {
            for i in 0..j {
                let byte = data[k / 6];
                if !(63..=126).contains(&byte) {
                    return Err(fail(1 + k / 6, "adjacency byte out of range"));
                }
                let bit = (byte - 63) >> (5 - k % 6) & 1;
                if bit == 1 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        if needed > 0 {
            let last = data[needed - 1];
            if !(63..=126).contains(&last) {
                return Err(fail(needed, "adjacency byte out of range"));
            }
            let pad = 6 * needed - nbits;
            if (last - 63) & ((1 << pad) - 1) != 0 {
                return Err(fail(needed, "nonzero padding bits"));
            }
        }
        Ok(g)
    }
}

struct CanonSearch<'a> {
    g: &'a SimpleGraph,
    n: usize,
    ord: Vec<usize>,
    best: Vec<u8>,
}

impl CanonSearch<'_> {
    /// Branch-and-bound over vertex orderings. Invariant: the bits induced
    /// by the current partial ordering equal `best[..C(depth,2)]`.
    fn dfs(&mut self, used: u16) {
        let depth = self.ord.len();
        if depth == self.n {
            return;
        }
        // Candidates, collapsed by the twin relation: if swapping u and v is
        // an automorphism, orderings through v mirror orderings through u.
        let mut reps: Vec<(u32, usize)> = Vec::new();
        'cand: for v in 0..self.n {
            if used >> v & 1 == 1 {
                continue;
            }
            for &(_, u) in &reps {
                let excl = !((1u16 << u) | (1u16 << v));
                if self.g.adj[u] & excl == self.g.adj[v] & excl {
                    continue 'cand;
                }
            }
            let mut col = 0u32;
            for &p in &self.ord {
                col = (col << 1) | u32::from(self.g.adj[p] >> v & 1);
            }
            reps.push((col, v));
        }
        reps.sort_unstable();
        let off = depth * depth.saturating_sub(1) / 2;
        for &(col, v) in &reps {
            let mut cmp = Ordering::Equal;
            for i in 0..depth {
                let bit = (col >> (depth - 1 - i) & 1) as u8;
                match bit.cmp(&self.best[off + i]) {
                    Ordering::Equal => {}
                    other => {
                        cmp = other;
                        break;
                    }
                }
            }
            match cmp {
                Ordering::Greater => continue,
                Ordering::Less => {
                    for i in 0..depth {
                        self.best[off + i] = (col >> (depth - 1 - i) & 1) as u8;
                    }
                    for slot in self.best[off + depth..].iter_mut() {
                        *slot = 2;
                    }
                }
                Ordering::Equal => {}
            }
            self.ord.push(v);
            self.dfs(used | 1 << v);
            self.ord.pop();
        }
    }
}

/// All triangle-free graphs of the given order, one per isomorphism class.
///
/// Generated level by level: every triangle-free graph arises from a
/// triangle-free graph with one vertex fewer by attaching the new vertex to
/// an independent set, so extending and deduplicating by canonical form is
/// exhaustive.
pub fn enumerate_triangle_free(order: usize) -> Result<Vec<SimpleGraph>, GraphError> {
    if order > MAX_ENUMERATION_ORDER {
        return Err(GraphError::OrderTooLarge {
            order,
            cap: MAX_ENUMERATION_ORDER,
        });
    }
    if order == 0 {
        return Ok(vec![SimpleGraph::new(0)?]);
    }
    let mut level = vec![SimpleGraph::new(1)?];
    for m in 2..=order {
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u32..(1 << (m - 1)) {
                if !g.mask_is_independent(mask as u16) {
                    continue;
                }
                let mut h = SimpleGraph::new(m)?;
                for (u, v) in g.edges() {
                    h.add_edge(u, v);
                }
                let mut bits = mask as u16;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    h.add_edge(v, m - 1);
                    bits &= bits - 1;
                }
                if seen.insert(h.canonical_form().to_vec()) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// All anti-triangle-free graphs of the given order, one per class.
pub fn enumerate_atf(order: usize) -> Result<Vec<SimpleGraph>, GraphError> {
    Ok(enumerate_triangle_free(order)?
        .iter()
        .map(SimpleGraph::complement)
        .collect())
}

/// Whether `g` is anti-triangle-free and edge-minimal with that property:
/// dropping any edge `uv` must create an independent triple, which happens
/// exactly when some vertex is adjacent to neither `u` nor `v`.
pub fn is_minimal_atf(g: &SimpleGraph) -> bool {
    if !g.is_anti_triangle_free() {
        return false;
    }
    g.edges().iter().all(|&(u, v)| {
        let covered = g.neighbors(u) | g.neighbors(v) | 1 << u | 1 << v;
        (0..g.order()).any(|w| covered >> w & 1 == 0)
    })
}

/// All minimal anti-triangle-free graphs of the given order, one per class.
pub fn minimal_atf(order: usize) -> Result<Vec<SimpleGraph>, GraphError> {
    Ok(enumerate_atf(order)?.into_iter().filter(is_minimal_atf).collect())
}

/// Whether `host` contains a subgraph isomorphic to `pattern` (ordinary
/// subgraph containment, not induced): a vertex-injective map sending
/// pattern edges to host edges.
pub fn subgraph_contains(host: &SimpleGraph, pattern: &SimpleGraph) -> bool {
    if pattern.order() > host.order() || pattern.edge_count() > host.edge_count() {
        return false;
    }
    if pattern.order() == 0 {
        return true;
    }
    let n = pattern.order();
    // Most-constrained-first vertex order: maximize placed neighbors, then
    // degree, so adjacency constraints bind as early as possible.
    let mut porder = Vec::with_capacity(n);
    let mut chosen = 0u16;
    for _ in 0..n {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..n {
            if chosen >> v & 1 == 1 {
                continue;
            }
            let placed = (pattern.neighbors(v) & chosen).count_ones() as usize;
            let key = (placed, pattern.degree(v), v);
            if best.map_or(true, |(p, d, w)| key > (p, d, w)) {
                best = Some(key);
            }
        }
        let (_, _, v) = best.expect("unchosen vertex exists");
        porder.push(v);
        chosen |= 1 << v;
    }
    let mut map = vec![usize::MAX; n];
    extend_monomorphism(host, pattern, &porder, 0, &mut map, 0)
}

fn extend_monomorphism(
    host: &SimpleGraph,
    pattern: &SimpleGraph,
    porder: &[usize],
    pos: usize,
    map: &mut [usize],
    used: u16,
) -> bool {
    if pos == porder.len() {
        return true;
    }
    let v = porder[pos];
    let pdeg = pattern.degree(v);
    for h in 0..host.order() {
        if used >> h & 1 == 1 || host.degree(h) < pdeg {
            continue;
        }
        let ok = porder[..pos].iter().all(|&u| {
            !pattern.has_edge(u, v) || host.has_edge(map[u], h)
        });
        if ok {
            map[v] = h;
            if extend_monomorphism(host, pattern, porder, pos + 1, map, used | 1 << h) {
                return true;
            }
            map[v] = usize::MAX;
        }
    }
    false
}

/// Names for the forbidden and constructible patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternName {
    /// Three pairwise nonadjacent vertices.
    AntiTriangle,
    /// Complete graph on `m` vertices.
    Complete(usize),
    /// Two complete graphs on `k+1` vertices sharing `k` vertices: the
    /// complete graph on `k+2` vertices with one edge removed.
    Rhombus(usize),
    /// Two `k`-rhombi intersecting in an induced complete graph on `k+1`
    /// vertices; the two apexes are nonadjacent and miss distinct vertices.
    ExtendedRhombus(usize),
    /// `Spindle(k, k)`.
    MoserSpindle(usize),
    /// Two rhombi with arms `k` and `l` glued at a common apex, plus an
    /// edge joining the two free apexes.
    Spindle(usize, usize),
    /// Split cycle on `2k` vertices: pairs `p_i, q_i` with the neighborhood
    /// of both `p_i` and `q_i` equal to `{p_(i-1), q_(i-1), p_(i+1), q_(i+1)}`.
    W(usize),
    /// Complement of `W(k)`.
    WComplement(usize),
    /// The 12-vertex graph obtained from `WComplement(5)` by adding two
    /// nonadjacent vertices joined to pair-columns {0,2,4} and {1,3,4}.
    H12,
}

impl fmt::Display for PatternName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternName::AntiTriangle => write!(f, "anti-triangle"),
            PatternName::Complete(m) => write!(f, "K{m}"),
            PatternName::Rhombus(k) => write!(f, "{k}-rhombus"),
            PatternName::ExtendedRhombus(k) => write!(f, "extended {k}-rhombus"),
            PatternName::MoserSpindle(k) => write!(f, "MS{k}"),
            PatternName::Spindle(k, l) => write!(f, "S({k},{l})"),
            PatternName::W(k) => write!(f, "W{k}"),
            PatternName::WComplement(k) => write!(f, "co-W{k}"),
            PatternName::H12 => write!(f, "H12"),
        }
    }
}

/// Builds the named pattern graph.
pub fn make_pattern(name: PatternName) -> Result<SimpleGraph, GraphError> {
    let param_err = |message: String| GraphError::Pattern { message };
    match name {
        PatternName::AntiTriangle => SimpleGraph::new(3),
        PatternName::Complete(m) => SimpleGraph::complete(m),
        PatternName::Rhombus(k) => {
            if k == 0 {
                return Err(param_err("rhombus arm must be at least 1".into()));
            }
            let mut g = SimpleGraph::complete(k + 2)?;
            g.remove_edge(k, k + 1);
            Ok(g)
        }
        PatternName::ExtendedRhombus(k) => {
            if k == 0 {
                return Err(param_err("extended rhombus arm must be at least 1".into()));
            }
            // Shared clique 0..=k; apex e misses vertex 0, apex f misses 1.
            let mut g = SimpleGraph::complete(k + 1)?;
            let mut h = SimpleGraph::new(k + 3)?;
            for (u, v) in g.edges() {
                h.add_edge(u, v);
            }
            let (e, f) = (k + 1, k + 2);
            for s in 0..=k {
                if s != 0 {
                    h.add_edge(e, s);
                }
                if s != 1 {
                    h.add_edge(f, s);
                }
            }
            g = h;
            Ok(g)
        }
        PatternName::MoserSpindle(k) => make_pattern(PatternName::Spindle(k, k)),
        PatternName::Spindle(k, l) => {
            if k == 0 || l == 0 {
                return Err(param_err("spindle arms must be at least 1".into()));
            }
            // Shared apex e = 0; first arm base 1..=k with apex p1 = k+1;
            // second arm base k+2..=k+l+1 with apex p2 = k+l+2.
            let order = k + l + 3;
            let mut g = SimpleGraph::new(order)?;
            let p1 = k + 1;
            let p2 = k + l + 2;
            let group1: Vec<usize> = std::iter::once(0).chain(1..=k).chain([p1]).collect();
            let group2: Vec<usize> = std::iter::once(0).chain(k + 2..=k + l + 1).chain([p2]).collect();
            for group in [&group1, &group2] {
                for (a, &u) in group.iter().enumerate() {
                    for &v in &group[a + 1..] {
                        if (u, v) != (0, p1) && (u, v) != (0, p2) {
                            g.add_edge(u, v);
                        }
                    }
                }
            }
            g.add_edge(p1, p2);
            Ok(g)
        }
        PatternName::W(k) => {
            if k < 3 {
                return Err(param_err(format!("split cycle needs k >= 3, got {k}")));
            }
            // p_i = i, q_i = k + i.
            let mut g = SimpleGraph::new(2 * k)?;
            for i in 0..k {
                let j = (i + 1) % k;
                g.add_edge(i, j);
                g.add_edge(i, k + j);
                g.add_edge(k + i, j);
                g.add_edge(k + i, k + j);
            }
            Ok(g)
        }
        PatternName::WComplement(k) => Ok(make_pattern(PatternName::W(k))?.complement()),
        PatternName::H12 => {
            let base = make_pattern(PatternName::WComplement(5))?;
            let mut g = SimpleGraph::new(12)?;
            for (u, v) in base.edges() {
                g.add_edge(u, v);
            }
            let (x, y) = (10, 11);
            for i in [0usize, 2, 4] {
                g.add_edge(x, i);
                g.add_edge(x, 5 + i);
            }
            for i in [1usize, 3, 4] {
                g.add_edge(y, i);
                g.add_edge(y, 5 + i);
            }
            Ok(g)
        }
    }
}

/// One forbidden pattern applicable at specific parameters, with the
/// threshold that made it applicable.
#[derive(Debug, Clone)]
pub struct PatternEntry {
    pub name: PatternName,
    pub graph: SimpleGraph,
    pub why: String,
}

/// The forbidden-pattern list for distance graphs of t-almost-equiangular
/// sets on the unit sphere in dimension `n`, evaluated exactly at `t`.
///
/// A maximum-set distance graph contains none of the returned patterns as a
/// subgraph. Thresholds against the spindle critical values `t_{k,i}` and
/// the rationals `-1/k` are decided exactly. Requires `n >= 2` and
/// `-1 <= t <= 0`.
pub fn pattern_library(n: usize, t: &ExactReal) -> Result<Vec<PatternEntry>, GraphError> {
    if n < 2 {
        return Err(GraphError::Pattern {
            message: format!("pattern library needs dimension n >= 2, got {n}"),
        });
    }
    if t.cmp_rational(&rat_i(-1)) == Ordering::Less
        || t.cmp_rational(&Zero::zero()) == Ordering::Greater
    {
        return Err(GraphError::Pattern {
            message: "pattern library needs -1 <= t <= 0".to_string(),
        });
    }
    let mut out: Vec<PatternEntry> = Vec::new();
    let push = |name: PatternName, why: String, out: &mut Vec<PatternEntry>| -> Result<(), GraphError> {
        if out.iter().any(|e| e.name == name) {
            return Ok(());
        }
        out.push(PatternEntry {
            name,
            graph: make_pattern(name)?,
            why,
        });
        Ok(())
    };
    push(PatternName::AntiTriangle, "always".into(), &mut out)?;
    push(PatternName::Complete(n + 2), "always".into(), &mut out)?;
    push(PatternName::Rhombus(n), "always".into(), &mut out)?;
    for k in 2..=n {
        let threshold = rat_i(-1) / rat_i(k as i64);
        let cmp = t.cmp_rational(&threshold);
        if cmp != Ordering::Greater {
            push(PatternName::Rhombus(k), format!("t <= -1/{k}"), &mut out)?;
        }
        if cmp == Ordering::Less {
            push(PatternName::Complete(k + 1), format!("t < -1/{k}"), &mut out)?;
        }
        let tk1 = spindle_root(SpindleRootHandle { k: k as u32, i: 1 })
            .expect("cubic has three real roots");
        if t.cmp_algebraic(&tk1) == Ordering::Less {
            push(PatternName::MoserSpindle(k), format!("t < t_{k}_1"), &mut out)?;
        }
    }
    let threshold_n = rat_i(-1) / rat_i(n as i64);
    match t.cmp_rational(&threshold_n) {
        Ordering::Greater => {
            push(PatternName::Complete(n + 1), format!("t > -1/{n}"), &mut out)?;
        }
        Ordering::Equal => {
            push(
                PatternName::ExtendedRhombus(n - 1),
                format!("t = -1/{n}"),
                &mut out,
            )?;
        }
        Ordering::Less => {}
    }
    let tn2 = spindle_root(SpindleRootHandle {
        k: (n - 1) as u32,
        i: 2,
    })
    .expect("cubic has three real roots");
    if t.cmp_algebraic(&tn2) == Ordering::Greater {
        push(
            PatternName::MoserSpindle(n - 1),
            format!("t > t_{}_2", n - 1),
            &mut out,
        )?;
    }
    Ok(out)
}

/// Graphs of the given order that are minimal anti-triangle-free and avoid
/// every applicable forbidden pattern at `(n, t)`.
///
/// The anti-triangle is an induced condition (an independent 3-set), so it
/// is checked via [`SimpleGraph::is_anti_triangle_free`]; every other
/// pattern is ordinary subgraph containment.
pub fn pattern_filter_survivors(
    order: usize,
    n: usize,
    t: &ExactReal,
) -> Result<Vec<SimpleGraph>, GraphError> {
    let patterns = pattern_library(n, t)?;
    Ok(minimal_atf(order)?
        .into_iter()
        .filter(|g| {
            g.is_anti_triangle_free()
                && !patterns.iter().any(|p| {
                    p.name != PatternName::AntiTriangle && subgraph_contains(g, &p.graph)
                })
        })
        .collect())
}
