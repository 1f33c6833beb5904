//! Exact symmetric matrices over the rationals with an LDL^T-based
//! positive-semidefiniteness decision procedure.
//!
//! The PSD check uses symmetric (diagonal) pivoting: at each step the
//! largest remaining diagonal entry is chosen as the pivot. For a symmetric
//! matrix this decides PSD-ness exactly: a negative pivot is a certificate
//! of a negative eigenvalue, and if all remaining diagonal entries are zero
//! the matrix is PSD iff the whole remaining block is zero.

use crate::ratio::{to_f64, Rat};
use num_traits::{Signed, Zero};

/// Dense symmetric rational matrix (full storage, symmetry enforced by
/// constructors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymRatMatrix {
    n: usize,
    a: Vec<Rat>,
}

/// Outcome of the exact PSD decision, with a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdOutcome {
    /// PSD, with the rank found during elimination.
    PositiveSemidefinite { rank: usize },
    /// Not PSD: a vector `x` with `x^T A x < 0` exists; the stored value is
    /// the offending pivot (or off-diagonal residual) encountered.
    Indefinite { witness: Rat },
}

impl SymRatMatrix {
    /// Zero matrix of side `n`.
    pub fn zeros(n: usize) -> Self {
        SymRatMatrix {
            n,
            a: vec![Rat::zero(); n * n],
        }
    }

    /// Builds from a row-major generator, symmetrizing by construction:
    /// the entry used for `(i, j)` with `i <= j` is `gen(i, j)`.
    pub fn from_fn<F: FnMut(usize, usize) -> Rat>(n: usize, mut gen: F) -> Self {
        let mut m = SymRatMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = gen(i, j);
                m.a[i * n + j] = v.clone();
                m.a[j * n + i] = v;
            }
        }
        m
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.a[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.a[i * self.n + j] = v.clone();
        self.a[j * self.n + i] = v;
    }

    /// Matrix with every entry rounded to `f64` (for spectral cross-checks).
    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| to_f64(self.get(i, j)))
    }

    /// Exact PSD decision by LDL^T with symmetric pivoting.
    pub fn psd_check(&self) -> PsdOutcome {
        let n = self.n;
        let mut a = self.a.clone();
        // active[k..] are the rows/columns still in play, tracked through an
        // index permutation so pivoting is a swap of indices.
        let mut idx: Vec<usize> = (0..n).collect();
        let mut rank = 0usize;
        let at = |a: &Vec<Rat>, i: usize, j: usize| a[i * n + j].clone();
        for step in 0..n {
            // pick the largest remaining diagonal entry
            let (mut best_pos, mut best_val) = (step, at(&a, idx[step], idx[step]));
            for (pos, &i) in idx.iter().enumerate().skip(step + 1) {
                let v = at(&a, i, i);
                if v > best_val {
                    best_val = v;
                    best_pos = pos;
                }
            }
            idx.swap(step, best_pos);
            let p = idx[step];
            let pivot = at(&a, p, p);
            if pivot.is_negative() {
                return PsdOutcome::Indefinite { witness: pivot };
            }
            if pivot.is_zero() {
                // PSD requires the whole remaining block to vanish: since the
                // pivot was the max diagonal, all diagonals are <= 0; any
                // negative diagonal or nonzero off-diagonal entry disproves.
                for (pa, &i) in idx.iter().enumerate().skip(step) {
                    for &j in idx.iter().skip(pa) {
                        let v = at(&a, i, j);
                        if !v.is_zero() {
                            return PsdOutcome::Indefinite { witness: v };
                        }
                    }
                }
                return PsdOutcome::PositiveSemidefinite { rank };
            }
            // eliminate: A' = A - (1/pivot) * col * col^T on the active block
            rank += 1;
            for (pa, &i) in idx.iter().enumerate().skip(step + 1) {
                let ci = at(&a, i, p);
                if ci.is_zero() {
                    continue;
                }
                for &j in idx.iter().skip(pa) {
                    let cj = at(&a, j, p);
                    if cj.is_zero() {
                        continue;
                    }
                    let delta = &ci * &cj / &pivot;
                    let v = at(&a, i, j) - delta;
                    a[i * n + j] = v.clone();
                    a[j * n + i] = v;
                }
            }
        }
        PsdOutcome::PositiveSemidefinite { rank }
    }

    /// Convenience wrapper: true iff exactly PSD.
    pub fn is_psd(&self) -> bool {
        matches!(self.psd_check(), PsdOutcome::PositiveSemidefinite { .. })
    }
}
