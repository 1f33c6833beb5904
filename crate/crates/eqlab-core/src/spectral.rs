//! Spectral analysis of Gram matrices of t-almost-equiangular sets, and the
//! correspondence between maximum sets at t = -1/n and symmetric orthogonal
//! matrices with constant row sum one and a combinatorial triple condition.
//!
//! For a Gram matrix U of m unit vectors, write J for the all-ones matrix and
//! define
//!
//!   C = U - tJ,          B = U - tJ - (1-t)I.
//!
//! B has zero diagonal and its off-diagonal entries vanish exactly on pairs
//! with inner product t, so trace(B) = 0 always and trace(B^3) = 0 whenever
//! every triple of points contains such a pair.  At t = -1/n a maximum set has
//! m = 2(n+1) points, Ue = 0, and a single nonzero U-eigenvalue 2(1+1/n); such
//! Gram matrices correspond bijectively to "O-matrices" via
//!
//!   O = (n/(n+1)) U + (1/(n+1)) J - I,
//!   U = (1+1/n) O - (1/n) J + (1+1/n) I.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{GeometryError, GramMatrix, UnitConfig};
use crate::graphs::{make_pattern, subgraph_contains, PatternName, SimpleGraph};

/// Default relative eigenvalue threshold used for rank and kernel decisions.
pub const SPECTRAL_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("matrix has size {got}, expected {expected} = 2(n+1) for n = {n}")]
    SizeMismatch { got: usize, expected: usize, n: usize },
    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    NotSymmetric(f64),
    #[error("eigen-factorization has rank {got}, expected {expected}")]
    RankMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Eigenvalue and kernel diagnostics for a Gram matrix U at a parameter t.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralReport {
    /// Number of points m.
    pub order: usize,
    /// Parameter t the matrices C and B refer to.
    pub t: f64,
    /// Relative threshold used for rank and kernel decisions.
    pub threshold: f64,
    /// Eigenvalues of U, ascending.
    pub eigenvalues_u: Vec<f64>,
    /// Eigenvalues of C = U - tJ, ascending.
    pub eigenvalues_c: Vec<f64>,
    /// Eigenvalues of B = U - tJ - (1-t)I, ascending.
    pub eigenvalues_b: Vec<f64>,
    /// Rank estimates: eigenvalues of magnitude > threshold * max|eigenvalue|.
    pub rank_u: usize,
    pub rank_c: usize,
    pub rank_b: usize,
    pub trace_b: f64,
    pub trace_b_cubed: f64,
    /// Euclidean norm of Ue, e the all-ones vector.
    pub ue_norm: f64,
    /// Whether ||Ue|| <= threshold * ||U||_2 (spectral norm).
    pub e_in_kernel: bool,
    /// Norm of the barycenter (1/m) * sum of the points, computed from U.
    pub barycenter_norm: f64,
}

fn require_symmetric(m: &DMatrix<f64>) -> Result<(), SpectralError> {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    if worst > 1e-9 {
        return Err(SpectralError::NotSymmetric(worst));
    }
    Ok(())
}

fn sorted_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

fn rank_by_threshold(eigenvalues: &[f64], threshold: f64) -> usize {
    let max_abs = eigenvalues.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    if max_abs == 0.0 {
        return 0;
    }
    eigenvalues
        .iter()
        .filter(|&&x| x.abs() > threshold * max_abs)
        .count()
}

/// B = U - tJ - (1-t)I.  Zero diagonal for a unit-vector Gram; off-diagonal
/// entries vanish exactly on pairs at inner product t.
pub fn b_matrix(u: &DMatrix<f64>, t: f64) -> DMatrix<f64> {
    let m = u.nrows();
    let mut b = u.clone();
    for i in 0..m {
        for j in 0..m {
            b[(i, j)] -= t;
            if i == j {
                b[(i, j)] -= 1.0 - t;
            }
        }
    }
    b
}

/// Full spectral diagnostics for a Gram matrix at parameter t.  `threshold`
/// is relative; pass [`SPECTRAL_THRESHOLD`] for the default. Errors if `u` is
/// not symmetric.
pub fn spectral_report(
    u: &GramMatrix,
    t: f64,
    threshold: f64,
) -> Result<SpectralReport, SpectralError> {
    let um = &u.m;
    require_symmetric(um)?;
    let m = um.nrows();
    let mut c = um.clone();
    for i in 0..m {
        for j in 0..m {
            c[(i, j)] -= t;
        }
    }
    let b = b_matrix(um, t);

    let ev_u = sorted_eigenvalues(um);
    let ev_c = sorted_eigenvalues(&c);
    let ev_b = sorted_eigenvalues(&b);

    let trace_b = b.trace();
    let trace_b_cubed = (&b * &b * &b).trace();

    let e = DVector::from_element(m, 1.0);
    let ue = um * &e;
    let ue_norm = ue.norm();
    let u_spectral_norm = ev_u.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let e_in_kernel = ue_norm <= threshold * u_spectral_norm.max(1e-300);
    // ||sum x_i||^2 = e^T U e; clamp tiny negatives from round-off.
    let barycenter_norm = (e.dot(&ue)).max(0.0).sqrt() / m as f64;

    Ok(SpectralReport {
        order: m,
        t,
        threshold,
        rank_u: rank_by_threshold(&ev_u, threshold),
        rank_c: rank_by_threshold(&ev_c, threshold),
        rank_b: rank_by_threshold(&ev_b, threshold),
        eigenvalues_u: ev_u,
        eigenvalues_c: ev_c,
        eigenvalues_b: ev_b,
        trace_b,
        trace_b_cubed,
        ue_norm,
        e_in_kernel,
        barycenter_norm,
    })
}

/// A candidate O-matrix: symmetric, of even size 2(n+1).  Validity is tested
/// by [`o_matrix_check`]; the struct itself only stores the entries.
#[derive(Debug, Clone, PartialEq)]
pub struct OMatrix {
    m: DMatrix<f64>,
}

impl OMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self, SpectralError> {
        require_symmetric(&m)?;
        Ok(OMatrix { m })
    }

    pub fn order(&self) -> usize {
        self.m.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    /// Permutation matrix of a fixed-point-free involution sigma on
    /// 2(n+1) points: sigma is given as `pairs`, each element appearing once.
    pub fn from_involution(pairs: &[(usize, usize)]) -> Result<Self, SpectralError> {
        let sz = 2 * pairs.len();
        let mut seen = vec![false; sz];
        let mut m = DMatrix::zeros(sz, sz);
        for &(a, b) in pairs {
            if a >= sz || b >= sz || a == b || seen[a] || seen[b] {
                return Err(SpectralError::SizeMismatch {
                    got: sz,
                    expected: sz,
                    n: sz / 2,
                });
            }
            seen[a] = true;
            seen[b] = true;
            m[(a, b)] = 1.0;
            m[(b, a)] = 1.0;
        }
        Ok(OMatrix { m })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.m.nrows() {
            let row: Vec<String> = (0..self.m.ncols())
                .map(|j| format!("{:.17e}", self.m[(i, j)]))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(s: &str) -> Result<Self, SpectralError> {
        let g = GramMatrix::from_csv(s)?;
        OMatrix::new(g.m)
    }
}

/// Map a maximum-candidate Gram matrix U of size 2(n+1) to its O-matrix,
/// O = (n/(n+1)) U + (1/(n+1)) J - I.  Errors if the size is not 2(n+1).
pub fn to_o_matrix(u: &GramMatrix, n: usize) -> Result<OMatrix, SpectralError> {
    let m = u.order();
    if m != 2 * (n + 1) {
        return Err(SpectralError::SizeMismatch {
            got: m,
            expected: 2 * (n + 1),
            n,
        });
    }
    require_symmetric(&u.m)?;
    let nf = n as f64;
    let mut o = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            o[(i, j)] = nf / (nf + 1.0) * u.get(i, j) + 1.0 / (nf + 1.0)
                - if i == j { 1.0 } else { 0.0 };
        }
    }
    Ok(OMatrix { m: o })
}

/// One condition of the O-matrix characterization, with the worst violation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub name: String,
    pub passed: bool,
    pub max_violation: f64,
}

/// Per-condition verdicts for an O-matrix candidate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OMatrixReport {
    pub order: usize,
    pub tolerance: f64,
    /// O symmetric (always true for values constructed via [`OMatrix::new`]).
    pub symmetric: ConditionCheck,
    /// O^2 = I.
    pub involutive: ConditionCheck,
    /// Oe = e.
    pub fixes_ones: ConditionCheck,
    /// Zero diagonal.
    pub zero_diagonal: ConditionCheck,
    /// O_ij O_jk O_ki = 0 for all triples {i,j,k} of distinct indices.
    pub triple_products: ConditionCheck,
    pub all_passed: bool,
}

/// Check the five defining conditions of an O-matrix, each with the maximum
/// violation magnitude.  `tol` is the absolute pass tolerance per condition.
pub fn o_matrix_check(o: &OMatrix, tol: f64) -> OMatrixReport {
    let m = &o.m;
    let sz = m.nrows();

    let mut sym_dev = 0.0f64;
    for i in 0..sz {
        for j in (i + 1)..sz {
            sym_dev = sym_dev.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }

    let o2 = m * m;
    let mut inv_dev = 0.0f64;
    for i in 0..sz {
        for j in 0..sz {
            let want = if i == j { 1.0 } else { 0.0 };
            inv_dev = inv_dev.max((o2[(i, j)] - want).abs());
        }
    }

    let e = DVector::from_element(sz, 1.0);
    let oe = m * &e;
    let mut fix_dev = 0.0f64;
    for i in 0..sz {
        fix_dev = fix_dev.max((oe[i] - 1.0).abs());
    }

    let mut diag_dev = 0.0f64;
    for i in 0..sz {
        diag_dev = diag_dev.max(m[(i, i)].abs());
    }

    let mut triple_dev = 0.0f64;
    for i in 0..sz {
        for j in (i + 1)..sz {
            for k in (j + 1)..sz {
                let p = (m[(i, j)] * m[(j, k)] * m[(k, i)]).abs();
                triple_dev = triple_dev.max(p);
            }
        }
    }

    let mk = |name: &str, dev: f64| ConditionCheck {
        name: name.to_string(),
        passed: dev <= tol,
        max_violation: dev,
    };
    let symmetric = mk("symmetric", sym_dev);
    let involutive = mk("involutive", inv_dev);
    let fixes_ones = mk("fixes_ones", fix_dev);
    let zero_diagonal = mk("zero_diagonal", diag_dev);
    let triple_products = mk("triple_products", triple_dev);
    let all_passed = symmetric.passed
        && involutive.passed
        && fixes_ones.passed
        && zero_diagonal.passed
        && triple_products.passed;
    OMatrixReport {
        order: sz,
        tolerance: tol,
        symmetric,
        involutive,
        fixes_ones,
        zero_diagonal,
        triple_products,
        all_passed,
    }
}

/// Invert [`to_o_matrix`]: U = (1+1/n) O - (1/n) J + (1+1/n) I, then recover a
/// point configuration from the n positive eigenpairs of U.  Errors if the
/// O-matrix size is not 2(n+1) or the factorization rank differs from n.
///
/// The configuration may contain coincident points (e.g. for the O-matrix of
/// a fixed-point-free involution, which encodes a doubled simplex), so it is
/// built as a multiset.
pub fn from_o_matrix(o: &OMatrix, n: usize) -> Result<(GramMatrix, UnitConfig), SpectralError> {
    let m = o.order();
    if m != 2 * (n + 1) {
        return Err(SpectralError::SizeMismatch {
            got: m,
            expected: 2 * (n + 1),
            n,
        });
    }
    let nf = n as f64;
    let mut u = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            u[(i, j)] = (1.0 + 1.0 / nf) * o.get(i, j) - 1.0 / nf
                + if i == j { 1.0 + 1.0 / nf } else { 0.0 };
        }
    }

    let eig = u.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let max_abs = eig
        .eigenvalues
        .iter()
        .fold(0.0f64, |a, &x| a.max(x.abs()))
        .max(1e-300);
    let rank = eig
        .eigenvalues
        .iter()
        .filter(|&&x| x.abs() > SPECTRAL_THRESHOLD * max_abs)
        .count();
    if rank != n {
        return Err(SpectralError::RankMismatch {
            got: rank,
            expected: n,
        });
    }

    let mut points = vec![vec![0.0f64; n]; m];
    for (c, &idx) in order.iter().take(n).enumerate() {
        let lam = eig.eigenvalues[idx];
        if lam <= 0.0 {
            return Err(SpectralError::RankMismatch {
                got: c,
                expected: n,
            });
        }
        let scale = lam.sqrt();
        for (r, pt) in points.iter_mut().enumerate() {
            pt[c] = scale * eig.eigenvectors[(r, idx)];
        }
    }
    // Renormalize: eigen round-off can leave norms off by ~1e-13.
    for pt in &mut points {
        let norm = pt.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(SpectralError::RankMismatch {
                got: rank,
                expected: n,
            });
        }
        for x in pt.iter_mut() {
            *x /= norm;
        }
    }
    let labels = (0..m).map(|i| format!("x{i}")).collect();
    let cfg = UnitConfig::new_multiset(n, points, labels)?;
    Ok((GramMatrix { m: u }, cfg))
}

/// Moment defects of a configuration against the spherical 2-design
/// equations sum x_k = 0 and sum x_k x_k^T = (m/n) I.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoDesignReport {
    pub is_2design: bool,
    pub tolerance: f64,
    /// || sum x_k ||.
    pub first_moment_defect: f64,
    /// max entry of | sum x_k x_k^T - (m/n) I |.
    pub second_moment_defect: f64,
}

/// Deterministic moment-matrix form of the 2-design property: a finite set is
/// a spherical 2-design iff its first moment vanishes and its second moment
/// matrix is (m/n) I.
pub fn two_design_check(cfg: &UnitConfig, tol: f64) -> TwoDesignReport {
    let n = cfg.dim;
    let m = cfg.len();
    let mut first = DVector::zeros(n);
    let mut second = DMatrix::zeros(n, n);
    for p in &cfg.points {
        let v = DVector::from_column_slice(p);
        first += &v;
        second += &v * v.transpose();
    }
    let first_moment_defect = first.norm();
    let target = m as f64 / n as f64;
    let mut second_moment_defect = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { target } else { 0.0 };
            second_moment_defect = second_moment_defect.max((second[(i, j)] - want).abs());
        }
    }
    TwoDesignReport {
        is_2design: first_moment_defect <= tol && second_moment_defect <= tol,
        tolerance: tol,
        first_moment_defect,
        second_moment_defect,
    }
}

/// Combinatorial necessary conditions on the distance graph G of a maximum
/// set at t = -1/n (2(n+1) vertices): G contains K_{n+1}; the complement of G
/// is quadrangular (no two vertices have exactly one common neighbour); and
/// every complement degree lies in [1, n+1].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MaxSetGraphReport {
    pub order: usize,
    pub n: usize,
    pub contains_clique: bool,
    pub complement_quadrangular: bool,
    /// A witness pair with exactly one common neighbour in the complement.
    pub quadrangular_offender: Option<(usize, usize)>,
    pub complement_degrees: Vec<usize>,
    pub complement_degrees_in_range: bool,
    pub all_passed: bool,
}

/// `g` must have 2(n+1) vertices.
pub fn maximum_set_graph_checks(
    g: &SimpleGraph,
    n: usize,
) -> Result<MaxSetGraphReport, SpectralError> {
    let order = g.order();
    if order != 2 * (n + 1) {
        return Err(SpectralError::SizeMismatch {
            got: order,
            expected: 2 * (n + 1),
            n,
        });
    }
    let clique = make_pattern(PatternName::Complete(n + 1)).map_err(|_| {
        SpectralError::SizeMismatch {
            got: n + 1,
            expected: order,
            n,
        }
    })?;
    let contains_clique = subgraph_contains(g, &clique);

    let comp = g.complement();
    let mut quadrangular_offender = None;
    'outer: for u in 0..order {
        for v in (u + 1)..order {
            let common = (comp.neighbors(u) & comp.neighbors(v)).count_ones();
            if common == 1 {
                quadrangular_offender = Some((u, v));
                break 'outer;
            }
        }
    }
    let complement_quadrangular = quadrangular_offender.is_none();

    let complement_degrees: Vec<usize> = (0..order).map(|v| comp.degree(v)).collect();
    let complement_degrees_in_range = complement_degrees
        .iter()
        .all(|&d| d >= 1 && d <= n + 1);

    let all_passed = contains_clique && complement_quadrangular && complement_degrees_in_range;
    Ok(MaxSetGraphReport {
        order,
        n,
        contains_clique,
        complement_quadrangular,
        quadrangular_offender,
        complement_degrees,
        complement_degrees_in_range,
        all_passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{
        build_double_simplex, build_simplex, distance_graph, is_almost_equiangular, larman_rogers,
    };
    use approx::assert_abs_diff_eq;

    fn gram_of(cfg: &UnitConfig) -> GramMatrix {
        cfg.gram()
    }

    #[test]
    fn b_matrix_basics() {
        let u = DMatrix::identity(4, 4);
        let b0 = b_matrix(&u, 0.0);
        assert!(b0.iter().all(|&x| x == 0.0));
        // General t: B = I - tJ - (1-t)I has diagonal 0 and off-diagonal -t.
        let b = b_matrix(&u, -0.25);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 0.0 } else { 0.25 };
                assert_abs_diff_eq!(b[(i, j)], want, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn double_simplex_spectrum_and_kernel() {
        for n in 2..=6usize {
            let cfg = build_double_simplex(n).unwrap();
            let t = -1.0 / n as f64;
            let u = gram_of(&cfg);
            let rep = spectral_report(&u, t, SPECTRAL_THRESHOLD).unwrap();
            assert_eq!(rep.order, 2 * (n + 1));
            assert_eq!(rep.rank_u, n, "rank at n={n}");
            assert!(rep.e_in_kernel, "Ue=0 at n={n}");
            // e^T U e suffers O(m^2 eps) cancellation, so sqrt gives ~1e-7.
            assert!(rep.barycenter_norm < 1e-6);
            // Nonzero eigenvalues of U are all 2(1+1/n).
            let want = 2.0 * (1.0 + 1.0 / n as f64);
            let max_abs = rep
                .eigenvalues_u
                .iter()
                .fold(0.0f64, |a, &x| a.max(x.abs()));
            for &ev in &rep.eigenvalues_u {
                if ev.abs() > SPECTRAL_THRESHOLD * max_abs {
                    assert_abs_diff_eq!(ev, want, epsilon = 1e-9);
                }
            }
            // B eigenvalues are +-(1+1/n), each with multiplicity n+1.
            let lim = 1.0 + 1.0 / n as f64;
            let pos = rep
                .eigenvalues_b
                .iter()
                .filter(|&&x| (x - lim).abs() < 1e-9)
                .count();
            let neg = rep
                .eigenvalues_b
                .iter()
                .filter(|&&x| (x + lim).abs() < 1e-9)
                .count();
            assert_eq!((pos, neg), (n + 1, n + 1), "B spectrum at n={n}");
            assert!(rep.trace_b.abs() < 1e-9);
            assert!(rep.trace_b_cubed.abs() < 1e-9);
        }
    }

    #[test]
    fn single_simplex_and_orthonormal_spectra() {
        let cfg = build_simplex(3, 3, -1.0 / 3.0).unwrap();
        let rep = spectral_report(&gram_of(&cfg), -1.0 / 3.0, SPECTRAL_THRESHOLD).unwrap();
        assert_eq!(rep.rank_u, 3);
        assert!(rep.e_in_kernel);
        let mut top = rep.eigenvalues_u.clone();
        top.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for &ev in top.iter().take(3) {
            assert_abs_diff_eq!(ev, 1.0 + 1.0 / 3.0, epsilon = 1e-10);
        }
        assert_abs_diff_eq!(top[3], 0.0, epsilon = 1e-10);

        // Orthonormal basis: U = I, full rank, e not in the kernel.
        let pts: Vec<Vec<f64>> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let labels = (0..3).map(|i| format!("e{i}")).collect();
        let onb = UnitConfig::new(3, pts, labels).unwrap();
        let rep = spectral_report(&gram_of(&onb), 0.0, SPECTRAL_THRESHOLD).unwrap();
        assert_eq!(rep.rank_u, 3);
        assert!(!rep.e_in_kernel);
    }

    #[test]
    fn trace_b_cubed_vanishes_for_almost_equiangular_sets() {
        // Larman-Rogers set: 16 points, t = 1/5, not a maximum set, yet every
        // triple has a pair at t, so trace(B^3) = 0.
        let cfg = larman_rogers();
        let rep = spectral_report(&gram_of(&cfg), 0.2, SPECTRAL_THRESHOLD).unwrap();
        assert!(rep.trace_b.abs() < 1e-9);
        assert!(rep.trace_b_cubed.abs() < 1e-9, "got {}", rep.trace_b_cubed);
        // The set is antipodally symmetric per coordinate, so sum x_k = 0.
        assert!(rep.e_in_kernel);
        assert_eq!(rep.rank_u, 5);
    }

    #[test]
    fn o_matrix_round_trip_on_double_simplex() {
        for n in 2..=6usize {
            let cfg = build_double_simplex(n).unwrap();
            let u = gram_of(&cfg);
            let o = to_o_matrix(&u, n).unwrap();
            // Zero blocks on the two simplex diagonals.
            for i in 0..=n {
                for j in 0..=n {
                    assert!(o.get(i, j).abs() < 1e-10, "upper block at n={n}");
                    assert!(o.get(n + 1 + i, n + 1 + j).abs() < 1e-10, "lower block");
                }
            }
            let rep = o_matrix_check(&o, 1e-9);
            assert!(rep.all_passed, "o_matrix_check at n={n}: {rep:?}");

            let (u2, cfg2) = from_o_matrix(&o, n).unwrap();
            let mut round_trip_dev = 0.0f64;
            for i in 0..u.order() {
                for j in 0..u.order() {
                    round_trip_dev = round_trip_dev.max((u.get(i, j) - u2.get(i, j)).abs());
                }
            }
            assert!(round_trip_dev <= 1e-10, "round trip at n={n}: {round_trip_dev:.3e}");
            assert!(is_almost_equiangular(&u2, -1.0 / n as f64, 1e-8));
            assert_eq!(cfg2.len(), 2 * (n + 1));

            // Oe = e implies Ue = 0 for the reconstruction.
            let rep2 = spectral_report(&u2, -1.0 / n as f64, SPECTRAL_THRESHOLD).unwrap();
            assert!(rep2.e_in_kernel);

            let td = two_design_check(&cfg2, 1e-8);
            assert!(td.is_2design, "2-design at n={n}: {td:?}");
        }
    }

    #[test]
    fn o_matrix_diagnostics_on_non_examples() {
        // Identity Gram of the right size: O = J/(n+1) - I/(n+1) fails O^2=I.
        let n = 3usize;
        let m = 2 * (n + 1);
        let u = GramMatrix { m: DMatrix::identity(m, m) };
        let o = to_o_matrix(&u, n).unwrap();
        let rep = o_matrix_check(&o, 1e-9);
        assert!(!rep.involutive.passed);
        assert!(rep.symmetric.passed);
        assert!(!rep.all_passed);

        // J/(m-1) off-diagonal: symmetric, zero diagonal, fixes e, but not
        // an involution and triple products are all nonzero.
        let mut jm = DMatrix::from_element(m, m, 1.0 / (m as f64 - 1.0));
        for i in 0..m {
            jm[(i, i)] = 0.0;
        }
        let o = OMatrix::new(jm).unwrap();
        let rep = o_matrix_check(&o, 1e-9);
        assert!(rep.zero_diagonal.passed);
        assert!(rep.fixes_ones.passed);
        assert!(!rep.involutive.passed);
        assert!(!rep.triple_products.passed);

        // Size mismatch errors.
        let small = GramMatrix { m: DMatrix::identity(5, 5) };
        assert!(to_o_matrix(&small, 3).is_err());
    }

    #[test]
    fn involution_o_matrix_encodes_doubled_simplex() {
        let n = 3usize;
        let pairs: Vec<(usize, usize)> = (0..=n).map(|i| (i, n + 1 + i)).collect();
        let o = OMatrix::from_involution(&pairs).unwrap();
        let rep = o_matrix_check(&o, 1e-12);
        assert!(rep.all_passed, "{rep:?}");

        let (u, cfg) = from_o_matrix(&o, n).unwrap();
        // Each point coincides with its partner; distinct points form a
        // regular n-simplex at -1/n.
        for &(a, b) in &pairs {
            assert_abs_diff_eq!(u.get(a, b), 1.0, epsilon = 1e-10);
        }
        for i in 0..u.order() {
            for j in 0..u.order() {
                if i != j && !pairs.contains(&(i.min(j), i.max(j))) {
                    assert_abs_diff_eq!(u.get(i, j), -1.0 / n as f64, epsilon = 1e-10);
                }
            }
        }
        let td = two_design_check(&cfg, 1e-8);
        assert!(td.is_2design);
        let rep = spectral_report(&u, -1.0 / n as f64, SPECTRAL_THRESHOLD).unwrap();
        assert_eq!(rep.rank_u, n);
        assert!(rep.e_in_kernel);
    }

    #[test]
    fn from_o_matrix_rejects_wrong_rank() {
        // The J/(m-1)-style matrix passes some conditions but its U has the
        // wrong rank profile.
        let n = 3usize;
        let m = 2 * (n + 1);
        let mut jm = DMatrix::from_element(m, m, 1.0 / (m as f64 - 1.0));
        for i in 0..m {
            jm[(i, i)] = 0.0;
        }
        let o = OMatrix::new(jm).unwrap();
        assert!(matches!(
            from_o_matrix(&o, n),
            Err(SpectralError::RankMismatch { .. })
        ));
    }

    #[test]
    fn two_design_examples() {
        // Single regular n-simplex is a 2-design.
        let cfg = build_simplex(4, 4, -0.25).unwrap();
        assert!(two_design_check(&cfg, 1e-10).is_2design);

        // Orthonormal basis union its negation is a 2-design; alone it fails
        // on the first moment.
        let n = 3usize;
        let mut pts = Vec::new();
        for s in [1.0f64, -1.0] {
            for i in 0..n {
                let mut p = vec![0.0; n];
                p[i] = s;
                pts.push(p);
            }
        }
        let labels = (0..2 * n).map(|i| format!("v{i}")).collect();
        let both = UnitConfig::new(n, pts.clone(), labels).unwrap();
        assert!(two_design_check(&both, 1e-12).is_2design);

        let labels = (0..n).map(|i| format!("v{i}")).collect();
        let half = UnitConfig::new(n, pts[..n].to_vec(), labels).unwrap();
        let td = two_design_check(&half, 1e-12);
        assert!(!td.is_2design);
        assert!(td.first_moment_defect > 1.0);
    }

    #[test]
    fn maximum_set_graph_checks_examples() {
        // Distance graph of the double simplex: complement K_{n+1,n+1}.
        for n in 2..=4usize {
            let cfg = build_double_simplex(n).unwrap();
            let g = distance_graph(&gram_of(&cfg), -1.0 / n as f64, 1e-8).unwrap();
            let rep = maximum_set_graph_checks(&g, n).unwrap();
            assert!(rep.all_passed, "n={n}: {rep:?}");
            assert!(rep.complement_degrees.iter().all(|&d| d == n + 1));
        }

        // Complement of W(5) on 10 vertices with n = 4: the complement is
        // W(5) itself, which is quadrangular with all degrees 4, but the
        // graph has no K_5, so the clique condition rules it out.
        let w5 = make_pattern(PatternName::W(5)).unwrap();
        let co_w5 = w5.complement();
        let rep = maximum_set_graph_checks(&co_w5, 4).unwrap();
        assert!(rep.complement_quadrangular, "{rep:?}");
        assert!(rep.complement_degrees_in_range);
        assert!(rep.complement_degrees.iter().all(|&d| d == 4));
        assert!(!rep.contains_clique);
        assert!(!rep.all_passed);

        // The complement of a path fails quadrangularity: in a path, the two
        // neighbours of an endpoint's neighbour include exactly one common
        // neighbour for the endpoints of a 2-edge subpath.
        let mut path = SimpleGraph::new(8).unwrap();
        for i in 0..7 {
            path.add_edge(i, i + 1);
        }
        let rep = maximum_set_graph_checks(&path.complement(), 3).unwrap();
        assert!(!rep.complement_quadrangular);
        assert!(rep.quadrangular_offender.is_some());

        // Size precondition.
        assert!(maximum_set_graph_checks(&SimpleGraph::new(7).unwrap(), 3).is_err());
    }

    #[test]
    fn o_matrix_csv_round_trip() {
        let n = 2usize;
        let cfg = build_double_simplex(n).unwrap();
        let o = to_o_matrix(&gram_of(&cfg), n).unwrap();
        let csv = o.to_csv();
        let o2 = OMatrix::from_csv(&csv).unwrap();
        for i in 0..o.order() {
            for j in 0..o.order() {
                assert_eq!(o.get(i, j), o2.get(i, j));
            }
        }
    }

    #[test]
    fn spectral_report_serializes() {
        let cfg = build_double_simplex(2).unwrap();
        let rep = spectral_report(&gram_of(&cfg), -0.5, SPECTRAL_THRESHOLD).unwrap();
        let js = serde_json::to_string(&rep).unwrap();
        let back: SpectralReport = serde_json::from_str(&js).unwrap();
        assert_eq!(back.order, rep.order);
        assert_eq!(back.eigenvalues_u, rep.eigenvalues_u);
    }
}
