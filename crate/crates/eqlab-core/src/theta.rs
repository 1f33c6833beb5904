//! Independence-number relaxations for 3-uniform hypergraphs: the
//! moment-matrix (Lasserre-style) program `lass(H)` over independent sets
//! of size at most 3, and the stronger-looking per-point program `Δ(H)`
//! with one positive semidefinite block for every independent set of size
//! at most 1. Both maximize the sum of singleton masses of a nonnegative
//! set function `ν` with `ν(∅) = 1` and entries `ν(S ∪ T)` forced to zero
//! on dependent unions. The sandwich `α(H) ≤ lass(H) ≤ Δ(H)` holds, with
//! equality to `α` in every frozen reference case below.

use crate::hypergraph::{Hypergraph3, HypergraphError};
use crate::sdp::{
    solve_sdp, BlockSpec, SdpProblem, SdpSolution, SdpStatus, SolveOptions, SparseSym,
};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Debug, thiserror::Error)]
pub enum ThetaError {
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("index family too large: |I| = {0} exceeds cap {1}")]
    SizeCap(usize, usize),
    #[error("solver: {0}")]
    Solver(#[from] crate::sdp::SdpError),
}

/// A built relaxation: the block SDP plus the independent sets backing the
/// variable vector (`variables[i]` is the set whose mass is `y_i`; the
/// empty set is substituted out as `ν(∅) = 1`).
#[derive(Debug, Clone)]
pub struct ThetaProgram {
    pub problem: SdpProblem,
    pub variables: Vec<Vec<usize>>,
}

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0u64, |m, &v| m | (1 << v))
}

/// Shared builder: one PSD block per `(Q, rows)` pair with entries
/// `ν(S ∪ T ∪ Q)` for row sets `S, T`, plus a trailing diagonal
/// nonnegativity block over `var_sets` (which excludes the empty set).
fn build_program(q_blocks: &[(Vec<usize>, Vec<Vec<usize>>)], var_sets: &[Vec<usize>]) -> ThetaProgram {
    let var_index: HashMap<u64, usize> = var_sets
        .iter()
        .enumerate()
        .map(|(i, s)| (mask_of(s), i))
        .collect();
    let nvars = var_sets.len();
    let nblocks = q_blocks.len() + 1; // PSD blocks + trailing nonnegativity block

    let mut blocks: Vec<BlockSpec> = q_blocks
        .iter()
        .map(|(_, rows)| BlockSpec::Dense(rows.len()))
        .collect();
    blocks.push(BlockSpec::Diag(nvars));

    let mut c = SparseSym::new(nblocks);
    let mut constraints: Vec<SparseSym> = (0..nvars).map(|_| SparseSym::new(nblocks)).collect();

    for (qb, (q, rows)) in q_blocks.iter().enumerate() {
        let qmask = mask_of(q);
        let row_masks: Vec<u64> = rows.iter().map(|s| mask_of(s)).collect();
        for i in 0..rows.len() {
            for j in i..rows.len() {
                let u = row_masks[i] | row_masks[j] | qmask;
                if u == 0 {
                    // nu(empty) = 1 contributes to C
                    c.push(qb, i, j, 1.0);
                } else if let Some(&vi) = var_index.get(&u) {
                    // X = C - sum_i y_i A_i, so a +y_i entry means A_i = -1
                    constraints[vi].push(qb, i, j, -1.0);
                }
                // dependent unions stay zero
            }
        }
    }
    for (vi, cons) in constraints.iter_mut().enumerate() {
        cons.push(nblocks - 1, vi, vi, -1.0);
    }
    let b: Vec<f64> = var_sets
        .iter()
        .map(|s| if s.len() == 1 { 1.0 } else { 0.0 })
        .collect();

    ThetaProgram {
        problem: SdpProblem {
            blocks,
            c,
            constraints,
            b,
        },
        variables: var_sets.to_vec(),
    }
}

const INDEX_CAP: usize = 10_000;

/// The per-point program `Δ(H)`: one PSD block per independent `Q` of size
/// at most 1, with entries `ν(S ∪ T ∪ Q)` over sets of size at most 1;
/// variables are the independent sets of size 1..3.
///
/// Rows `S` and `S'` with `S ∪ Q = S' ∪ Q` produce identical matrix rows,
/// so each block is indexed by the distinct unions `S ∪ Q` instead — an
/// exact reformulation (dropping a duplicated row/column pair preserves
/// positive semidefiniteness in both directions) that restores a strictly
/// feasible interior for the interior-point solver.
pub fn build_delta_sdp(h: &Hypergraph3) -> Result<ThetaProgram, ThetaError> {
    let small = h.independent_sets_up_to(1);
    let vars_all = h.independent_sets_up_to(3);
    if vars_all.len() > INDEX_CAP {
        return Err(ThetaError::SizeCap(vars_all.len(), INDEX_CAP));
    }
    let q_blocks: Vec<(Vec<usize>, Vec<Vec<usize>>)> = small
        .iter()
        .map(|q| {
            let qmask = mask_of(q);
            let mut seen = std::collections::BTreeSet::new();
            let mut rows = Vec::new();
            for s in &small {
                let mut u: Vec<usize> = s.clone();
                u.extend(q.iter().copied());
                u.sort_unstable();
                u.dedup();
                if seen.insert(mask_of(&u) | qmask) {
                    rows.push(u);
                }
            }
            (q.clone(), rows)
        })
        .collect();
    let var_sets: Vec<Vec<usize>> = vars_all.into_iter().filter(|s| !s.is_empty()).collect();
    Ok(build_program(&q_blocks, &var_sets))
}

/// The moment-matrix program `lass(H)`: a single PSD block indexed by the
/// independent sets of size at most 3 with entries `ν(S ∪ T)`; variables
/// are the independent sets of size 1..6.
pub fn build_lasserre_sdp(h: &Hypergraph3) -> Result<ThetaProgram, ThetaError> {
    let rows = h.independent_sets_up_to(3);
    if rows.len() > INDEX_CAP {
        return Err(ThetaError::SizeCap(rows.len(), INDEX_CAP));
    }
    let vars_all = h.independent_sets_up_to(6);
    if vars_all.len() > INDEX_CAP {
        return Err(ThetaError::SizeCap(vars_all.len(), INDEX_CAP));
    }
    let var_sets: Vec<Vec<usize>> = vars_all.into_iter().filter(|s| !s.is_empty()).collect();
    Ok(build_program(&[(Vec::new(), rows)], &var_sets))
}

/// Combined report for one hypergraph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThetaReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub alpha: usize,
    pub lasserre: f64,
    pub delta: f64,
    pub lasserre_gap: f64,
    pub delta_gap: f64,
    pub lasserre_status: SdpStatus,
    pub delta_status: SdpStatus,
}

/// Solves one built program and returns the maximization value (the
/// midpoint of the final primal/dual pair) plus the raw solution.
pub fn solve_program(p: &ThetaProgram, opts: &SolveOptions) -> Result<(f64, SdpSolution), ThetaError> {
    let sol = solve_sdp(&p.problem, opts)?;
    let value = 0.5 * (sol.primal_objective + sol.dual_objective);
    Ok((value, sol))
}

/// Computes `α`, `lass`, and `Δ` for a hypergraph.
pub fn theta_report(h: &Hypergraph3, opts: &SolveOptions) -> Result<ThetaReport, ThetaError> {
    let alpha = h.alpha_bruteforce()?;
    let (lass, lsol) = solve_program(&build_lasserre_sdp(h)?, opts)?;
    let (delta, dsol) = solve_program(&build_delta_sdp(h)?, opts)?;
    Ok(ThetaReport {
        vertex_count: h.vertex_count(),
        edge_count: h.edges().len(),
        alpha,
        lasserre: lass,
        delta,
        lasserre_gap: lsol.gap,
        delta_gap: dsol.gap,
        lasserre_status: lsol.status,
        delta_status: dsol.status,
    })
}

/// Evaluates the indicator vector of an independent set `I`
/// (`ν(S) = 1` iff `S ⊆ I`) as a feasible point: returns the objective
/// value and the minimum eigenvalue over all PSD blocks at that point.
pub fn indicator_feasibility(p: &ThetaProgram, independent: &[usize]) -> (f64, f64) {
    let imask = mask_of(independent);
    let y: Vec<f64> = p
        .variables
        .iter()
        .map(|s| {
            if mask_of(s) & !imask == 0 {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    let objective: f64 = p.problem.b.iter().zip(&y).map(|(b, v)| b * v).sum();

    // X = C - sum y_i A_i, assembled densely per block
    let mut min_eig = f64::INFINITY;
    for (bi, spec) in p.problem.blocks.iter().enumerate() {
        let n = spec.dim();
        match spec {
            BlockSpec::Dense(_) => {
                let mut m = nalgebra::DMatrix::<f64>::zeros(n, n);
                let mut add = |s: &SparseSym, scale: f64| {
                    for &(i, j, v) in &s.entries[bi] {
                        m[(i, j)] += scale * v;
                        if i != j {
                            m[(j, i)] += scale * v;
                        }
                    }
                };
                add(&p.problem.c, 1.0);
                for (a, yi) in p.problem.constraints.iter().zip(&y) {
                    add(a, -yi);
                }
                let eig = m.symmetric_eigen();
                min_eig = min_eig.min(
                    eig.eigenvalues
                        .iter()
                        .cloned()
                        .fold(f64::INFINITY, f64::min),
                );
            }
            BlockSpec::Diag(_) => {
                let mut d = vec![0.0f64; n];
                for &(i, _, v) in &p.problem.c.entries[bi] {
                    d[i] += v;
                }
                for (a, yi) in p.problem.constraints.iter().zip(&y) {
                    for &(i, _, v) in &a.entries[bi] {
                        d[i] -= yi * v;
                    }
                }
                min_eig = min_eig.min(d.iter().cloned().fold(f64::INFINITY, f64::min));
            }
        }
    }
    (objective, min_eig)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SolveOptions {
        SolveOptions::default()
    }

    fn check_value(h: &Hypergraph3, expected: f64) {
        let r = theta_report(h, &opts()).unwrap();
        assert!(
            (r.lasserre - expected).abs() < 1e-6,
            "lasserre: {} vs {expected} ({r:?})",
            r.lasserre
        );
        assert!(
            (r.delta - expected).abs() < 1e-6,
            "delta: {} vs {expected} ({r:?})",
            r.delta
        );
    }

    #[test]
    fn single_edge_on_three_vertices() {
        let h = Hypergraph3::new(3, [[0, 1, 2]]).unwrap();
        assert_eq!(h.alpha_bruteforce().unwrap(), 2);
        check_value(&h, 2.0);
    }

    #[test]
    fn edgeless_on_five_vertices() {
        check_value(&Hypergraph3::edgeless(5), 5.0);
    }

    #[test]
    fn complete_three_uniform_on_six_vertices() {
        let h = Hypergraph3::complete(6);
        assert_eq!(h.alpha_bruteforce().unwrap(), 2);
        check_value(&h, 2.0);
    }

    #[test]
    fn frozen_random_instances() {
        let cases: [(usize, &[[usize; 3]], f64); 3] = [
            (6, &[[0, 1, 3], [0, 1, 4], [1, 2, 5]], 5.0),
            (7, &[[0, 1, 5], [1, 4, 6]], 6.0),
            (7, &[[0, 1, 4], [0, 2, 3], [2, 3, 6]], 5.0),
        ];
        for (nv, edges, expected) in cases {
            let h = Hypergraph3::new(nv, edges.iter().copied()).unwrap();
            assert_eq!(h.alpha_bruteforce().unwrap() as f64, expected);
            check_value(&h, expected);
        }
    }

    #[test]
    fn sandwich_on_random_hypergraphs() {
        for seed in 0..8u64 {
            let h = Hypergraph3::random(7, 12, seed);
            let r = theta_report(&h, &opts()).unwrap();
            let a = r.alpha as f64;
            assert!(
                a <= r.lasserre + 1e-6 && r.lasserre <= r.delta + 1e-6,
                "sandwich violated for seed {seed}: {r:?}"
            );
        }
    }

    #[test]
    fn indicator_vectors_are_feasible_in_both_programs() {
        let h = Hypergraph3::new(6, [[0, 1, 2], [1, 2, 3], [3, 4, 5]]).unwrap();
        // {0, 1, 3, 4} contains no edge
        assert!(h.is_independent(&[0, 1, 3, 4]));
        for program in [build_delta_sdp(&h).unwrap(), build_lasserre_sdp(&h).unwrap()] {
            let (obj, min_eig) = indicator_feasibility(&program, &[0, 1, 3, 4]);
            assert_eq!(obj, 4.0);
            assert!(
                min_eig >= -1e-9,
                "indicator moment matrix not psd: {min_eig}"
            );
        }
    }

    #[test]
    fn size_cap_is_reported() {
        // edgeless on 40 vertices exceeds the 64-vertex representation? no —
        // it exceeds the index-family cap for lasserre: C(40,6) >> 10^4.
        let h = Hypergraph3::edgeless(40);
        assert!(matches!(
            build_lasserre_sdp(&h),
            Err(ThetaError::SizeCap(..))
        ));
    }

    #[test]
    fn lasserre_moment_matrix_has_expected_size_on_eight_vertices() {
        let h = Hypergraph3::edgeless(8);
        let p = build_lasserre_sdp(&h).unwrap();
        // 1 + 8 + 28 + 56 = 93 rows; variables: independent sets of size 1..6
        assert_eq!(p.problem.blocks[0], BlockSpec::Dense(93));
        let expected_vars: usize = (1..=6).map(|k| binom(8, k)).sum();
        assert_eq!(p.variables.len(), expected_vars);
        fn binom(n: usize, k: usize) -> usize {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
    }
}
