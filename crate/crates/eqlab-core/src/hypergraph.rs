//! 3-uniform hypergraphs with exact independence-number computation.
//!
//! The text file format is: first line the vertex count, then one edge per
//! line as three distinct vertex indices separated by whitespace. Blank
//! lines and lines starting with `#` are ignored.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt::Write as _;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("malformed hypergraph input: {0}")]
    Parse(String),
    #[error("edge {0:?} has a vertex index >= vertex count {1}")]
    VertexOutOfRange([usize; 3], usize),
    #[error("edge {0:?} has repeated vertices")]
    RepeatedVertex([usize; 3]),
    #[error("vertex count {0} exceeds the practical cap {1} for this operation")]
    SizeCap(usize, usize),
}

/// A 3-uniform hypergraph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph3 {
    vertex_count: usize,
    /// Sorted, deduplicated edges, each stored ascending.
    edges: Vec<[usize; 3]>,
}

impl Hypergraph3 {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = [usize; 3]>,
    ) -> Result<Self, HypergraphError> {
        // bitmask representation throughout caps vertices at 64
        if vertex_count > 64 {
            return Err(HypergraphError::SizeCap(vertex_count, 64));
        }
        let mut set = BTreeSet::new();
        for e in edges {
            let mut e = e;
            e.sort_unstable();
            if e[0] == e[1] || e[1] == e[2] {
                return Err(HypergraphError::RepeatedVertex(e));
            }
            if e[2] >= vertex_count {
                return Err(HypergraphError::VertexOutOfRange(e, vertex_count));
            }
            set.insert(e);
        }
        Ok(Hypergraph3 {
            vertex_count,
            edges: set.into_iter().collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    /// The complete 3-uniform hypergraph on `m` vertices.
    pub fn complete(m: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    edges.push([a, b, c]);
                }
            }
        }
        Hypergraph3 {
            vertex_count: m,
            edges,
        }
    }

    pub fn edgeless(m: usize) -> Self {
        Hypergraph3 {
            vertex_count: m,
            edges: Vec::new(),
        }
    }

    /// A uniformly random hypergraph with `edge_count` distinct edges.
    pub fn random(vertex_count: usize, edge_count: usize, seed: u64) -> Self {
        let mut all = Vec::new();
        for a in 0..vertex_count {
            for b in a + 1..vertex_count {
                for c in b + 1..vertex_count {
                    all.push([a, b, c]);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        all.shuffle(&mut rng);
        all.truncate(edge_count.min(all.len()));
        all.sort_unstable();
        Hypergraph3 {
            vertex_count,
            edges: all,
        }
    }

    pub fn parse(text: &str) -> Result<Self, HypergraphError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let first = lines
            .next()
            .ok_or_else(|| HypergraphError::Parse("empty input".into()))?;
        let vertex_count: usize = first
            .parse()
            .map_err(|e| HypergraphError::Parse(format!("vertex count: {e}")))?;
        let mut edges = Vec::new();
        for (ln, line) in lines.enumerate() {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(HypergraphError::Parse(format!(
                    "edge line {} has {} fields, expected 3",
                    ln + 2,
                    parts.len()
                )));
            }
            let mut e = [0usize; 3];
            for (k, p) in parts.iter().enumerate() {
                e[k] = p
                    .parse()
                    .map_err(|err| HypergraphError::Parse(format!("vertex index: {err}")))?;
            }
            edges.push(e);
        }
        Hypergraph3::new(vertex_count, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.vertex_count);
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e[0], e[1], e[2]);
        }
        out
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, HypergraphError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HypergraphError::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn edge_masks(&self) -> Vec<u64> {
        self.edges
            .iter()
            .map(|e| (1u64 << e[0]) | (1 << e[1]) | (1 << e[2]))
            .collect()
    }

    /// True iff the set contains no edge.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        let mut mask = 0u64;
        for &v in set {
            mask |= 1 << v;
        }
        self.edges
            .iter()
            .all(|e| ((1u64 << e[0]) | (1 << e[1]) | (1 << e[2])) & !mask != 0)
    }

    /// All independent sets of size at most `k`, in lexicographic order
    /// (shorter prefixes first).
    pub fn independent_sets_up_to(&self, k: usize) -> Vec<Vec<usize>> {
        let edge_masks = self.edge_masks();
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(
            vc: usize,
            k: usize,
            edge_masks: &[u64],
            start: usize,
            mask: u64,
            current: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            out.push(current.clone());
            if current.len() == k {
                return;
            }
            for v in start..vc {
                let nm = mask | (1 << v);
                if edge_masks.iter().any(|&em| em & !nm == 0) {
                    continue;
                }
                current.push(v);
                rec(vc, k, edge_masks, v + 1, nm, current, out);
                current.pop();
            }
        }
        rec(
            self.vertex_count,
            k,
            &edge_masks,
            0,
            0,
            &mut current,
            &mut out,
        );
        out
    }

    /// Exact independence number by scanning all `2^m` subsets.
    pub fn alpha_exhaustive(&self) -> Result<usize, HypergraphError> {
        const CAP: usize = 25;
        if self.vertex_count > CAP {
            return Err(HypergraphError::SizeCap(self.vertex_count, CAP));
        }
        let edge_masks = self.edge_masks();
        let mut best = 0usize;
        for mask in 0u64..(1u64 << self.vertex_count) {
            if edge_masks.iter().any(|&em| em & !mask == 0) {
                continue;
            }
            best = best.max(mask.count_ones() as usize);
        }
        Ok(best)
    }

    /// Exact independence number by branch-and-bound over vertex inclusion.
    pub fn alpha_bruteforce(&self) -> Result<usize, HypergraphError> {
        const CAP: usize = 30;
        if self.vertex_count > CAP {
            return Err(HypergraphError::SizeCap(self.vertex_count, CAP));
        }
        // For each vertex v, the pair masks {a, b} of edges {a, b, v} with
        // a, b < v: adding v to a chosen set creates an edge exactly when
        // one of these pairs is already fully chosen.
        let mut pair_masks: Vec<Vec<u64>> = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            pair_masks[e[2]].push((1u64 << e[0]) | (1 << e[1]));
        }
        fn rec(v: usize, vc: usize, chosen: u64, count: usize, pair_masks: &[Vec<u64>], best: &mut usize) {
            if count + (vc - v) <= *best {
                return;
            }
            if v == vc {
                *best = (*best).max(count);
                return;
            }
            // include v if legal
            if pair_masks[v].iter().all(|&pm| pm & !chosen != 0) {
                rec(v + 1, vc, chosen | (1 << v), count + 1, pair_masks, best);
            }
            // exclude v
            rec(v + 1, vc, chosen, count, pair_masks, best);
        }
        let mut best = 0usize;
        rec(0, self.vertex_count, 0, 0, &pair_masks, &mut best);
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_write_round_trip() {
        let text = "5\n# comment\n0 1 2\n\n2 3 4\n";
        let h = Hypergraph3::parse(text).unwrap();
        assert_eq!(h.vertex_count(), 5);
        assert_eq!(h.edges(), &[[0, 1, 2], [2, 3, 4]]);
        let h2 = Hypergraph3::parse(&h.to_text()).unwrap();
        assert_eq!(h, h2);
    }

    #[test]
    fn constructor_rejects_bad_edges() {
        assert!(matches!(
            Hypergraph3::new(3, [[0, 1, 3]]),
            Err(HypergraphError::VertexOutOfRange(..))
        ));
        assert!(matches!(
            Hypergraph3::new(3, [[0, 1, 1]]),
            Err(HypergraphError::RepeatedVertex(..))
        ));
        // duplicate edges collapse
        let h = Hypergraph3::new(4, [[2, 1, 0], [0, 1, 2]]).unwrap();
        assert_eq!(h.edges().len(), 1);
    }

    #[test]
    fn independent_sets_of_the_complete_hypergraph() {
        let h = Hypergraph3::complete(4);
        let sets = h.independent_sets_up_to(3);
        // all subsets of size <= 2: 1 + 4 + 6
        assert_eq!(sets.len(), 11);
        assert!(sets.iter().all(|s| s.len() <= 2));
    }

    #[test]
    fn independent_sets_of_the_edgeless_hypergraph() {
        let h = Hypergraph3::edgeless(3);
        let sets = h.independent_sets_up_to(3);
        assert_eq!(sets.len(), 8);
        // lexicographic order with shorter prefixes first
        assert_eq!(
            sets,
            vec![
                vec![],
                vec![0],
                vec![0, 1],
                vec![0, 1, 2],
                vec![0, 2],
                vec![1],
                vec![1, 2],
                vec![2],
            ]
        );
    }

    /// Edges := 3-subsets of a 5-cycle inducing exactly one cycle edge;
    /// the independent 3-sets are then exactly the five 3-vertex paths.
    #[test]
    fn five_cycle_motif_independent_triples_are_paths() {
        let cycle = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        let mut edges = Vec::new();
        for a in 0..5usize {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    let count = cycle
                        .iter()
                        .filter(|&&(p, q)| {
                            let s = [a, b, c];
                            s.contains(&p) && s.contains(&q)
                        })
                        .count();
                    if count == 1 {
                        edges.push([a, b, c]);
                    }
                }
            }
        }
        assert_eq!(edges.len(), 5);
        let h = Hypergraph3::new(5, edges).unwrap();
        let triples: Vec<Vec<usize>> = h
            .independent_sets_up_to(3)
            .into_iter()
            .filter(|s| s.len() == 3)
            .collect();
        let mut expected = vec![
            vec![0, 1, 2],
            vec![1, 2, 3],
            vec![2, 3, 4],
            vec![0, 3, 4],
            vec![0, 1, 4],
        ];
        expected.iter_mut().for_each(|s| s.sort_unstable());
        expected.sort();
        let mut got = triples;
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn alpha_of_reference_families() {
        for m in 3..8 {
            assert_eq!(Hypergraph3::complete(m).alpha_bruteforce().unwrap(), 2);
        }
        for m in 0..8 {
            assert_eq!(Hypergraph3::edgeless(m).alpha_bruteforce().unwrap(), m);
        }
    }

    #[test]
    fn branch_and_bound_matches_exhaustive_scan() {
        for seed in 0..6u64 {
            let h = Hypergraph3::random(10, 40, seed);
            assert_eq!(h.edges().len(), 40);
            assert_eq!(
                h.alpha_bruteforce().unwrap(),
                h.alpha_exhaustive().unwrap(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn size_caps_are_enforced() {
        let h = Hypergraph3::edgeless(31);
        assert!(matches!(
            h.alpha_bruteforce(),
            Err(HypergraphError::SizeCap(31, 30))
        ));
        let h = Hypergraph3::edgeless(26);
        assert!(h.alpha_exhaustive().is_err());
    }
}
