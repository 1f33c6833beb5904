//! A small dense primal-dual interior-point solver for block-diagonal
//! semidefinite programs, sized for moment matrices of a few hundred rows.
//!
//! The problem pair solved is, for symmetric data `C`, `A_i` and a vector
//! `b`,
//!
//! ```text
//! (max side)  maximize   b . y    subject to  X = C - sum_i y_i A_i,  X psd
//! (min side)  minimize   <C, Z>   subject to  <A_i, Z> = b_i,         Z psd
//! ```
//!
//! Weak duality gives `b . y <= <C, Z>`; the solver drives both residuals
//! and the gap below a tolerance using Nesterov–Todd scaling with a
//! Mehrotra-style adaptive centering parameter. No sparsity is exploited
//! beyond sparse constraint matrices; iterates are dense.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::sdpa::{SdpaProblem, SparseEntry};

/// Shape of one block of the decision variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockSpec {
    /// A full symmetric block of the given side length.
    Dense(usize),
    /// A diagonal block with the given number of entries.
    Diag(usize),
}

impl BlockSpec {
    pub fn dim(&self) -> usize {
        match *self {
            BlockSpec::Dense(n) | BlockSpec::Diag(n) => n,
        }
    }
}

/// A sparse symmetric block matrix: upper-triangle entries `(i, j, value)`
/// with `i <= j`, one list per block. Diagonal blocks may only carry
/// `(i, i, value)` entries.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseSym {
    pub entries: Vec<Vec<(usize, usize, f64)>>,
}

impl SparseSym {
    pub fn new(num_blocks: usize) -> Self {
        SparseSym {
            entries: vec![Vec::new(); num_blocks],
        }
    }

    pub fn push(&mut self, block: usize, i: usize, j: usize, value: f64) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.entries[block].push((i, j, value));
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut acc = 0.0;
        for blk in &self.entries {
            for &(i, j, v) in blk {
                acc += if i == j { v * v } else { 2.0 * v * v };
            }
        }
        acc.sqrt()
    }
}

/// A block-diagonal semidefinite program in the max/min pair above.
#[derive(Debug, Clone)]
pub struct SdpProblem {
    pub blocks: Vec<BlockSpec>,
    pub c: SparseSym,
    pub constraints: Vec<SparseSym>,
    pub b: Vec<f64>,
}

/// Termination status of the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SdpStatus {
    /// Residuals and gap below tolerance.
    Optimal,
    /// Iteration budget exhausted before reaching tolerance.
    MaxIterations,
    /// Divergence indicators observed (unbounded multipliers or stalled
    /// complementarity); the problem may be infeasible or unbounded.
    InfeasibleSuspect,
}

/// One line of the iteration trace.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct IterRecord {
    pub iter: usize,
    pub mu: f64,
    pub rel_primal: f64,
    pub rel_dual: f64,
    pub rel_gap: f64,
    pub step_primal: f64,
    pub step_dual: f64,
    pub sigma: f64,
}

/// Solver output. `dual_objective = b . y` (the maximization side, a lower
/// bound at feasibility) and `primal_objective = <C, Z>` (the upper bound).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SdpSolution {
    pub status: SdpStatus,
    pub primal_objective: f64,
    pub dual_objective: f64,
    pub gap: f64,
    pub rel_primal_residual: f64,
    pub rel_dual_residual: f64,
    pub iterations: usize,
    pub y: Vec<f64>,
    pub trace: Vec<IterRecord>,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-8,
            max_iter: 200,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SdpError {
    #[error("problem is inconsistent: {0}")]
    BadProblem(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

// ---------------------------------------------------------------------------
// dense block matrices

#[derive(Debug, Clone)]
enum Blk {
    Dense(DMatrix<f64>),
    Diag(DVector<f64>),
}

#[derive(Debug, Clone)]
struct BMat(Vec<Blk>);

impl BMat {
    fn zeros(specs: &[BlockSpec]) -> Self {
        BMat(
            specs
                .iter()
                .map(|s| match *s {
                    BlockSpec::Dense(n) => Blk::Dense(DMatrix::zeros(n, n)),
                    BlockSpec::Diag(n) => Blk::Diag(DVector::zeros(n)),
                })
                .collect(),
        )
    }

    fn scaled_identity(specs: &[BlockSpec], tau: f64) -> Self {
        BMat(
            specs
                .iter()
                .map(|s| match *s {
                    BlockSpec::Dense(n) => Blk::Dense(DMatrix::identity(n, n) * tau),
                    BlockSpec::Diag(n) => Blk::Diag(DVector::from_element(n, tau)),
                })
                .collect(),
        )
    }

    fn add_sparse(&mut self, alpha: f64, s: &SparseSym) {
        for (blk, entries) in self.0.iter_mut().zip(&s.entries) {
            match blk {
                Blk::Dense(m) => {
                    for &(i, j, v) in entries {
                        m[(i, j)] += alpha * v;
                        if i != j {
                            m[(j, i)] += alpha * v;
                        }
                    }
                }
                Blk::Diag(d) => {
                    for &(i, j, v) in entries {
                        debug_assert_eq!(i, j, "off-diagonal entry in diagonal block");
                        d[i] += alpha * v;
                    }
                }
            }
        }
    }

    fn axpy(&mut self, alpha: f64, other: &BMat) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            match (a, b) {
                (Blk::Dense(x), Blk::Dense(y)) => *x += y * alpha,
                (Blk::Diag(x), Blk::Diag(y)) => *x += y * alpha,
                _ => unreachable!("mismatched block kinds"),
            }
        }
    }

    fn dot(&self, other: &BMat) -> f64 {
        let mut acc = 0.0;
        for (a, b) in self.0.iter().zip(&other.0) {
            match (a, b) {
                (Blk::Dense(x), Blk::Dense(y)) => {
                    acc += x.iter().zip(y.iter()).map(|(p, q)| p * q).sum::<f64>()
                }
                (Blk::Diag(x), Blk::Diag(y)) => acc += x.dot(y),
                _ => unreachable!("mismatched block kinds"),
            }
        }
        acc
    }

    fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    fn symmetrize(&mut self) {
        for blk in &mut self.0 {
            if let Blk::Dense(m) = blk {
                let t = m.transpose();
                *m += t;
                *m *= 0.5;
            }
        }
    }

    fn sparse_dot(&self, s: &SparseSym) -> f64 {
        let mut acc = 0.0;
        for (blk, entries) in self.0.iter().zip(&s.entries) {
            match blk {
                Blk::Dense(m) => {
                    for &(i, j, v) in entries {
                        acc += v * m[(i, j)] * if i == j { 1.0 } else { 2.0 };
                    }
                }
                Blk::Diag(d) => {
                    for &(i, _j, v) in entries {
                        acc += v * d[i];
                    }
                }
            }
        }
        acc
    }

    /// `W^{-1} A W^{-1}` for sparse symmetric `A`, with `self` holding the
    /// symmetric `W^{-1}` blocks.
    fn conjugate_sparse(&self, a: &SparseSym) -> BMat {
        let blocks: Vec<Blk> = self
            .0
            .iter()
            .zip(&a.entries)
            .map(|(blk, entries)| match blk {
                Blk::Dense(w) => {
                    let n = w.nrows();
                    let mut out = DMatrix::zeros(n, n);
                    for &(p, q, v) in entries {
                        let cp = w.column(p);
                        let cq = w.column(q);
                        out.ger(v, &cp, &cq, 1.0);
                        if p != q {
                            out.ger(v, &cq, &cp, 1.0);
                        }
                    }
                    Blk::Dense(out)
                }
                Blk::Diag(w) => {
                    let mut out = DVector::zeros(w.len());
                    for &(p, _q, v) in entries {
                        out[p] += v * w[p] * w[p];
                    }
                    Blk::Diag(out)
                }
            })
            .collect();
        BMat(blocks)
    }

    /// `W^{-1} R W^{-1}` for dense symmetric `R`.
    fn conjugate_dense(&self, r: &BMat) -> BMat {
        let blocks: Vec<Blk> = self
            .0
            .iter()
            .zip(&r.0)
            .map(|(w, rb)| match (w, rb) {
                (Blk::Dense(w), Blk::Dense(r)) => Blk::Dense(w * r * w),
                (Blk::Diag(w), Blk::Diag(r)) => {
                    Blk::Diag(DVector::from_iterator(
                        w.len(),
                        w.iter().zip(r.iter()).map(|(wi, ri)| wi * wi * ri),
                    ))
                }
                _ => unreachable!("mismatched block kinds"),
            })
            .collect();
        BMat(blocks)
    }
}

/// Spectral data of a positive definite block matrix.
struct PdFactors {
    /// Per dense block: (eigenvectors Q, eigenvalues).
    dense: Vec<Option<(DMatrix<f64>, DVector<f64>)>>,
}

fn pd_factors(x: &BMat) -> Result<PdFactors, SdpError> {
    // Roundoff can push eigenvalues of a near-boundary iterate a hair
    // below zero; clamp tiny negatives to a scaled floor and only treat
    // substantially negative spectra as failure.
    let mut dense = Vec::with_capacity(x.0.len());
    for blk in &x.0 {
        match blk {
            Blk::Dense(m) => {
                let mut eig = m.clone().symmetric_eigen();
                let lmax = eig
                    .eigenvalues
                    .iter()
                    .cloned()
                    .fold(f64::NEG_INFINITY, f64::max)
                    .max(1e-30);
                if eig.eigenvalues.iter().any(|&l| l < -1e-9 * lmax.max(1.0)) {
                    return Err(SdpError::Numerical(
                        "iterate lost positive definiteness".into(),
                    ));
                }
                let floor = lmax * 1e-15;
                for l in eig.eigenvalues.iter_mut() {
                    if *l < floor {
                        *l = floor;
                    }
                }
                dense.push(Some((eig.eigenvectors, eig.eigenvalues)));
            }
            Blk::Diag(d) => {
                let lmax = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max).max(1e-30);
                if d.iter().any(|&l| l < -1e-9 * lmax.max(1.0)) {
                    return Err(SdpError::Numerical(
                        "iterate lost positive definiteness".into(),
                    ));
                }
                dense.push(None);
            }
        }
    }
    Ok(PdFactors { dense })
}

/// Applies `f` to the eigenvalues: returns `Q f(L) Q^T` per block.
fn spectral_map(x: &BMat, f: &PdFactors, map: impl Fn(f64) -> f64) -> BMat {
    let blocks: Vec<Blk> = x
        .0
        .iter()
        .zip(&f.dense)
        .map(|(blk, fac)| match (blk, fac) {
            (Blk::Dense(_), Some((q, l))) => {
                let fl = DVector::from_iterator(l.len(), l.iter().map(|&v| map(v)));
                let mut scaled = q.clone();
                for (c, &fv) in fl.iter().enumerate() {
                    scaled.column_mut(c).scale_mut(fv);
                }
                Blk::Dense(&scaled * q.transpose())
            }
            (Blk::Diag(d), None) => {
                let lmax = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max).max(1e-30);
                let floor = lmax * 1e-15;
                Blk::Diag(DVector::from_iterator(
                    d.len(),
                    d.iter().map(|&v| map(v.max(floor))),
                ))
            }
            _ => unreachable!(),
        })
        .collect();
    BMat(blocks)
}

/// Largest step `alpha` so that `x + alpha dx` stays positive definite,
/// damped by 0.98 and capped at 1.
fn max_step(x: &BMat, f: &PdFactors, dx: &BMat) -> f64 {
    let mut alpha: f64 = 1.0;
    for ((blk, fac), dblk) in x.0.iter().zip(&f.dense).zip(&dx.0) {
        match (blk, fac, dblk) {
            (Blk::Dense(_), Some((q, l)), Blk::Dense(d)) => {
                // G = L^{-1} dX L^{-T} with L = Q diag(sqrt(l))
                let mut qs = q.clone();
                for (c, &lv) in l.iter().enumerate() {
                    qs.column_mut(c).scale_mut(1.0 / lv.sqrt());
                }
                let g = qs.transpose() * d * &qs;
                let g = (&g + g.transpose()) * 0.5;
                let eig = g.symmetric_eigen();
                let lmin = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
                if lmin < -1e-14 {
                    alpha = alpha.min(-0.98 / lmin);
                }
            }
            (Blk::Diag(xv), None, Blk::Diag(dv)) => {
                for (xi, di) in xv.iter().zip(dv.iter()) {
                    if *di < 0.0 {
                        alpha = alpha.min(-0.98 * xi.max(0.0) / di);
                    }
                }
            }
            _ => unreachable!(),
        }
    }
    alpha.min(1.0)
}

impl SdpProblem {
    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    fn validate(&self) -> Result<(), SdpError> {
        if self.b.len() != self.constraints.len() {
            return Err(SdpError::BadProblem(format!(
                "{} constraint matrices but {} objective entries",
                self.constraints.len(),
                self.b.len()
            )));
        }
        let nb = self.blocks.len();
        for (k, s) in std::iter::once(&self.c).chain(self.constraints.iter()).enumerate() {
            if s.entries.len() != nb {
                return Err(SdpError::BadProblem(format!(
                    "matrix {k} has {} blocks, problem has {nb}",
                    s.entries.len()
                )));
            }
            for (bi, (spec, entries)) in self.blocks.iter().zip(&s.entries).enumerate() {
                for &(i, j, _) in entries {
                    if i > j || j >= spec.dim() {
                        return Err(SdpError::BadProblem(format!(
                            "matrix {k} block {bi} entry ({i},{j}) out of range"
                        )));
                    }
                    if matches!(spec, BlockSpec::Diag(_)) && i != j {
                        return Err(SdpError::BadProblem(format!(
                            "matrix {k} block {bi} has off-diagonal entry in a diagonal block"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Converts to the SDPA convention `min c.x` with
    /// `sum_i x_i F_i - F_0` psd: `x = y`, `c = -b`, `F_i = -A_i`,
    /// `F_0 = -C`.
    pub fn to_sdpa(&self) -> SdpaProblem {
        let blocks: Vec<i64> = self
            .blocks
            .iter()
            .map(|s| match *s {
                BlockSpec::Dense(n) => n as i64,
                BlockSpec::Diag(n) => -(n as i64),
            })
            .collect();
        let to_entries = |s: &SparseSym, negate: bool| -> Vec<SparseEntry> {
            let mut out = Vec::new();
            for (b, entries) in s.entries.iter().enumerate() {
                for &(i, j, v) in entries {
                    out.push(SparseEntry {
                        block: b + 1,
                        i: i + 1,
                        j: j + 1,
                        value: if negate { -v } else { v },
                    });
                }
            }
            out
        };
        let mut mats = Vec::with_capacity(self.constraints.len() + 1);
        mats.push(to_entries(&self.c, true));
        for a in &self.constraints {
            mats.push(to_entries(a, true));
        }
        SdpaProblem {
            objective: self.b.iter().map(|v| -v).collect(),
            blocks,
            mats,
        }
    }

    /// Inverse of [`to_sdpa`](Self::to_sdpa).
    pub fn from_sdpa(p: &SdpaProblem) -> Result<Self, SdpError> {
        let blocks: Vec<BlockSpec> = p
            .blocks
            .iter()
            .map(|&b| {
                if b >= 0 {
                    BlockSpec::Dense(b as usize)
                } else {
                    BlockSpec::Diag((-b) as usize)
                }
            })
            .collect();
        let nb = blocks.len();
        let convert = |entries: &[SparseEntry]| -> Result<SparseSym, SdpError> {
            let mut s = SparseSym::new(nb);
            for e in entries {
                if e.block == 0 || e.block > nb {
                    return Err(SdpError::BadProblem(format!(
                        "block index {} out of range",
                        e.block
                    )));
                }
                s.push(e.block - 1, e.i - 1, e.j - 1, -e.value);
            }
            Ok(s)
        };
        let c = convert(&p.mats[0])?;
        let mut constraints = Vec::with_capacity(p.num_vars());
        for m in &p.mats[1..] {
            constraints.push(convert(m)?);
        }
        let prob = SdpProblem {
            blocks,
            c,
            constraints,
            b: p.objective.iter().map(|v| -v).collect(),
        };
        prob.validate()?;
        Ok(prob)
    }
}

/// Solves the block SDP pair by an infeasible-start primal-dual
/// path-following method with Nesterov–Todd scaling.
pub fn solve_sdp(problem: &SdpProblem, opts: &SolveOptions) -> Result<SdpSolution, SdpError> {
    problem.validate()?;
    let specs = &problem.blocks;
    let m = problem.num_constraints();
    let ntot: f64 = specs.iter().map(|s| s.dim()).sum::<usize>() as f64;
    if ntot == 0.0 {
        return Err(SdpError::BadProblem("empty block structure".into()));
    }

    let mut c_dense = BMat::zeros(specs);
    c_dense.add_sparse(1.0, &problem.c);
    let norm_c = c_dense.norm();
    let norm_b = problem.b.iter().map(|v| v * v).sum::<f64>().sqrt();
    let a_norms: Vec<f64> = problem
        .constraints
        .iter()
        .map(|a| a.frobenius_norm())
        .collect();

    // scaled-identity infeasible start
    let tau_x = {
        let mut t: f64 = 10.0;
        for (ai, bi) in a_norms.iter().zip(&problem.b) {
            t = t.max((1.0 + bi.abs()) / (1.0 + ai));
        }
        t.max(norm_c / ntot.sqrt() + 1.0)
    };
    let tau_z = {
        let mut t = 10.0_f64.max(ntot.sqrt());
        for ai in &a_norms {
            t = t.max(*ai);
        }
        t.max(norm_b + 1.0)
    };
    let mut x = BMat::scaled_identity(specs, tau_x);
    let mut z = BMat::scaled_identity(specs, tau_z);
    let mut y = vec![0.0; m];

    let mut trace: Vec<IterRecord> = Vec::new();
    let mut status = SdpStatus::MaxIterations;
    let mut iterations = opts.max_iter;

    for iter in 0..opts.max_iter {
        // residuals
        let pobj = c_dense.dot(&z);
        let dobj: f64 = problem.b.iter().zip(&y).map(|(b, y)| b * y).sum();
        let rel_gap = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());

        let rp: Vec<f64> = problem
            .constraints
            .iter()
            .zip(&problem.b)
            .map(|(a, bi)| bi - z.sparse_dot(a))
            .collect();
        let rel_p = rp.iter().map(|v| v * v).sum::<f64>().sqrt() / (1.0 + norm_b);

        let mut rd = c_dense.clone();
        for (ai, yi) in problem.constraints.iter().zip(&y) {
            rd.add_sparse(-yi, ai);
        }
        rd.axpy(-1.0, &x);
        let rel_d = rd.norm() / (1.0 + norm_c);

        let mu = x.dot(&z) / ntot;

        if rel_p <= opts.tol && rel_d <= opts.tol && rel_gap <= opts.tol {
            status = SdpStatus::Optimal;
            iterations = iter;
            trace.push(IterRecord {
                iter,
                mu,
                rel_primal: rel_p,
                rel_dual: rel_d,
                rel_gap,
                step_primal: 0.0,
                step_dual: 0.0,
                sigma: 0.0,
            });
            break;
        }
        if y.iter().any(|v| v.abs() > 1e12) || mu > 1e16 {
            status = SdpStatus::InfeasibleSuspect;
            iterations = iter;
            break;
        }

        // NT scaling; project the iterates onto their clamped spectral
        // reconstructions so boundary roundoff cannot accumulate.
        let (fx, fz) = match (pd_factors(&x), pd_factors(&z)) {
            (Ok(fx), Ok(fz)) => (fx, fz),
            _ => {
                status = SdpStatus::MaxIterations;
                iterations = iter;
                break;
            }
        };
        x = spectral_map(&x, &fx, |l| l);
        z = spectral_map(&z, &fz, |l| l);
        let x_half = spectral_map(&x, &fx, f64::sqrt);
        let x_inv_half = spectral_map(&x, &fx, |l| 1.0 / l.sqrt());
        let x_inv = spectral_map(&x, &fx, |l| 1.0 / l);
        // T = X^{1/2} Z X^{1/2}; W^{-1} = X^{-1/2} T^{1/2} X^{-1/2}
        let t_mat = {
            let mut t = x_half.conjugate_dense(&z);
            t.symmetrize();
            t
        };
        let ft = match pd_factors(&t_mat) {
            Ok(f) => f,
            Err(_) => {
                status = SdpStatus::MaxIterations;
                iterations = iter;
                break;
            }
        };
        let t_half = spectral_map(&t_mat, &ft, f64::sqrt);
        let mut w_inv = x_inv_half.conjugate_dense(&t_half);
        w_inv.symmetrize();

        // Schur complement M_ij = <A_i, W^{-1} A_j W^{-1}>
        let vs: Vec<BMat> = problem
            .constraints
            .par_iter()
            .map(|a| w_inv.conjugate_sparse(a))
            .collect();
        let mut schur = DMatrix::zeros(m, m);
        let rows: Vec<Vec<f64>> = (0..m)
            .into_par_iter()
            .map(|i| {
                (i..m)
                    .map(|j| vs[j].sparse_dot(&problem.constraints[i]))
                    .collect()
            })
            .collect();
        for (i, row) in rows.iter().enumerate() {
            for (off, &v) in row.iter().enumerate() {
                schur[(i, i + off)] = v;
                schur[(i + off, i)] = v;
            }
        }
        let chol = {
            let mut ridge = 0.0;
            let base = schur.diagonal().iter().sum::<f64>().abs() / m.max(1) as f64;
            loop {
                let mut s = schur.clone();
                if ridge > 0.0 {
                    for d in 0..m {
                        s[(d, d)] += ridge;
                    }
                }
                match s.cholesky() {
                    Some(f) => break f,
                    None => {
                        ridge = if ridge == 0.0 {
                            1e-14 * (1.0 + base)
                        } else {
                            ridge * 100.0
                        };
                        if ridge > 1e-4 * (1.0 + base) {
                            return Err(SdpError::Numerical(
                                "Schur complement not positive definite".into(),
                            ));
                        }
                    }
                }
            }
        };

        // shared pieces of the right-hand side
        let w_rd_w = w_inv.conjugate_dense(&rd);

        // direction for a given centering sigma
        let compute_direction = |sigma: f64| -> (Vec<f64>, BMat, BMat) {
            // target = sigma mu X^{-1} - Z
            let mut tgt = x_inv.clone();
            for blk in &mut tgt.0 {
                match blk {
                    Blk::Dense(mm) => *mm *= sigma * mu,
                    Blk::Diag(dd) => *dd *= sigma * mu,
                }
            }
            tgt.axpy(-1.0, &z);

            let rhs: Vec<f64> = (0..m)
                .map(|i| {
                    rp[i] - tgt.sparse_dot(&problem.constraints[i])
                        + w_rd_w.sparse_dot(&problem.constraints[i])
                })
                .collect();
            let dy = chol.solve(&DVector::from_vec(rhs));
            // dX = R_d - A*(dy)
            let mut dx = rd.clone();
            for (ai, dyi) in problem.constraints.iter().zip(dy.iter()) {
                dx.add_sparse(-dyi, ai);
            }
            // dZ = sigma mu X^{-1} - Z - W^{-1} dX W^{-1}
            let mut dz = tgt;
            let wdxw = w_inv.conjugate_dense(&dx);
            dz.axpy(-1.0, &wdxw);
            dz.symmetrize();
            (dy.iter().cloned().collect(), dx, dz)
        };

        // predictor (affine) direction chooses sigma
        let (_, dx_aff, dz_aff) = compute_direction(0.0);
        let a_d_aff = max_step(&x, &fx, &dx_aff);
        let a_p_aff = max_step(&z, &fz, &dz_aff);
        let mu_aff = {
            let mut xa = x.clone();
            xa.axpy(a_d_aff, &dx_aff);
            let mut za = z.clone();
            za.axpy(a_p_aff, &dz_aff);
            xa.dot(&za) / ntot
        };
        let sigma = ((mu_aff / mu).powi(3)).clamp(1e-4, 0.9);

        let (dy, dx, dz) = compute_direction(sigma);
        let alpha_d = max_step(&x, &fx, &dx);
        let alpha_p = max_step(&z, &fz, &dz);

        for (yi, dyi) in y.iter_mut().zip(&dy) {
            *yi += alpha_d * dyi;
        }
        x.axpy(alpha_d, &dx);
        z.axpy(alpha_p, &dz);
        x.symmetrize();
        z.symmetrize();

        trace.push(IterRecord {
            iter,
            mu,
            rel_primal: rel_p,
            rel_dual: rel_d,
            rel_gap,
            step_primal: alpha_p,
            step_dual: alpha_d,
            sigma,
        });
    }

    let pobj = c_dense.dot(&z);
    let dobj: f64 = problem.b.iter().zip(&y).map(|(b, y)| b * y).sum();
    let rp: Vec<f64> = problem
        .constraints
        .iter()
        .zip(&problem.b)
        .map(|(a, bi)| bi - z.sparse_dot(a))
        .collect();
    let rel_p = rp.iter().map(|v| v * v).sum::<f64>().sqrt() / (1.0 + norm_b);
    let mut rd = c_dense.clone();
    for (ai, yi) in problem.constraints.iter().zip(&y) {
        rd.add_sparse(-yi, ai);
    }
    rd.axpy(-1.0, &x);
    let rel_d = rd.norm() / (1.0 + norm_c);

    Ok(SdpSolution {
        status,
        primal_objective: pobj,
        dual_objective: dobj,
        gap: (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs()),
        rel_primal_residual: rel_p,
        rel_dual_residual: rel_d,
        iterations,
        y,
        trace,
    })
}
