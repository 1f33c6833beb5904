//! Coordinate constructions on unit spheres: simplices, rhombi, spindles,
//! double simplices, and the classical 16-point dimension-5 configuration,
//! together with exact realizability verdicts for each family.
//!
//! Conventions. A *k-simplex* here means `k + 1` unit vectors with all
//! pairwise inner products equal to `t` (the complete graph `K_{k+1}`). A
//! *k-rhombus* is `K_{k+2}` minus one edge: a `k`-vertex common base plus
//! two apexes `e, p` joined to the base but not to each other. A
//! *(k, l)-spindle* glues a `k`-rhombus and an `l`-rhombus along the apex
//! `e` and joins the two far apexes `p1, p2` by an edge.
//!
//! The `*_realizable` predicates decide membership exactly (the parameter
//! `t` may be rational or algebraic); the `build_*` constructors produce
//! explicit floating-point coordinates and verify every edge inner product
//! before returning.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebraic::{spindle_root, AlgebraicNumber, ExactReal, SpindleRootHandle};
use crate::graphs::SimpleGraph;
use crate::ratio::{rat, rat_i, Rat};

/// Unit-norm tolerance accepted by [`UnitConfig::new`].
pub const UNIT_NORM_TOL: f64 = 1e-12;
/// Two points closer than this are considered coincident.
pub const DISTINCT_TOL: f64 = 1e-9;
/// Edge inner products of built configurations are verified to this.
pub const EDGE_TOL: f64 = 1e-10;

/// Errors from realizability checks and coordinate constructions.
#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("domain: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("not realizable: {0}")]
    NotRealizable(String),
    #[error("embedding failed: {0}")]
    Embedding(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// A finite set of labelled unit vectors in a fixed dimension.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnitConfig {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub labels: Vec<String>,
}

impl UnitConfig {
    /// Validates dimensions, unit norms (to [`UNIT_NORM_TOL`]) and pairwise
    /// distinctness (beyond [`DISTINCT_TOL`]).
    pub fn new(
        dim: usize,
        points: Vec<Vec<f64>>,
        labels: Vec<String>,
    ) -> Result<Self, GeometryError> {
        if labels.len() != points.len() {
            return Err(GeometryError::InvalidConfig(format!(
                "{} labels for {} points",
                labels.len(),
                points.len()
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(GeometryError::InvalidConfig(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(GeometryError::InvalidConfig(format!(
                    "point {i} has norm {norm}, expected 1 within {UNIT_NORM_TOL}"
                )));
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let d2: f64 = points[i]
                    .iter()
                    .zip(&points[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                if d2.sqrt() <= DISTINCT_TOL {
                    return Err(GeometryError::InvalidConfig(format!(
                        "points {i} and {j} coincide (distance {:.3e})",
                        d2.sqrt()
                    )));
                }
            }
        }
        Ok(UnitConfig {
            dim,
            points,
            labels,
        })
    }

    /// Like [`UnitConfig::new`] but allows coincident points (multisets).
    /// Gram factorizations of degenerate candidates can repeat points; the
    /// almost-equiangular and moment checks still make sense on them.
    pub fn new_multiset(
        dim: usize,
        points: Vec<Vec<f64>>,
        labels: Vec<String>,
    ) -> Result<Self, GeometryError> {
        if labels.len() != points.len() {
            return Err(GeometryError::InvalidConfig(format!(
                "{} labels for {} points",
                labels.len(),
                points.len()
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(GeometryError::InvalidConfig(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(GeometryError::InvalidConfig(format!(
                    "point {i} has norm {norm}, expected 1 within {UNIT_NORM_TOL}"
                )));
            }
        }
        Ok(UnitConfig {
            dim,
            points,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The Gram matrix of the configuration.
    pub fn gram(&self) -> GramMatrix {
        let m = self.points.len();
        let mut g = DMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                g[(i, j)] = dot(&self.points[i], &self.points[j]);
            }
        }
        GramMatrix { m: g }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A symmetric matrix of pairwise inner products.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub m: DMatrix<f64>,
}

impl GramMatrix {
    pub fn order(&self) -> usize {
        self.m.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[(i, j)]
    }

    /// Checks the Gram invariants: unit diagonal, positive semidefinite
    /// within `tol`, and rank at most `dim` (relative eigenvalue threshold).
    pub fn check(&self, dim: usize, tol: f64) -> Result<(), GeometryError> {
        for i in 0..self.order() {
            if (self.get(i, i) - 1.0).abs() > tol {
                return Err(GeometryError::InvalidConfig(format!(
                    "diagonal entry {i} is {} (expected 1 within {tol})",
                    self.get(i, i)
                )));
            }
        }
        let eig = self.eigenvalues();
        let max = eig.iter().cloned().fold(0.0f64, f64::max).max(1.0);
        if let Some(min) = eig.iter().cloned().reduce(f64::min) {
            if min < -tol * max {
                return Err(GeometryError::InvalidConfig(format!(
                    "not positive semidefinite: min eigenvalue {min:.3e}"
                )));
            }
        }
        let rank = eig.iter().filter(|&&l| l > tol.max(1e-12) * max).count();
        if rank > dim {
            return Err(GeometryError::InvalidConfig(format!(
                "rank {rank} exceeds dimension {dim}"
            )));
        }
        Ok(())
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut e: Vec<f64> = self
            .m
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .collect();
        e.sort_by(|a, b| a.partial_cmp(b).unwrap());
        e
    }

    /// Serializes to CSV (one row per line, full square matrix).
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.order() {
            let row: Vec<String> = (0..self.order())
                .map(|j| format!("{:.17e}", self.get(i, j)))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the CSV form produced by [`GramMatrix::to_csv`].
    pub fn from_csv(s: &str) -> Result<Self, GeometryError> {
        let rows: Vec<Vec<f64>> = s
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<f64>()
                            .map_err(|e| GeometryError::InvalidConfig(format!("bad entry: {e}")))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(GeometryError::InvalidConfig(
                "CSV Gram matrix must be square".into(),
            ));
        }
        let mut m = DMatrix::zeros(n, n);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        Ok(GramMatrix { m })
    }
}

/// Outcome of a realizability decision, with the boundary data that the
/// decision hinged on (latitude inner products, extreme pair value, and the
/// polynomial roots delimiting the admissible ranges).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RealizabilityVerdict {
    pub realizable: bool,
    /// Which case of the analysis applied.
    pub reason: String,
    /// Forced or extreme latitude inner products (`tau` values), one per arm.
    pub tau: Vec<f64>,
    /// The minimal far-apex inner product when both latitudes are extreme.
    pub e_value: Option<f64>,
    /// Roots delimiting the admissible parameter range (approximate values).
    pub roots: Vec<f64>,
    /// Radius of the sphere of admissible apexes (rhombus case).
    pub apex_radius: Option<f64>,
    /// When the ambient dimension forces the apex inner product, its value.
    pub forced_apex_ip: Option<f64>,
}

impl RealizabilityVerdict {
    fn no(reason: impl Into<String>) -> Self {
        RealizabilityVerdict {
            realizable: false,
            reason: reason.into(),
            tau: Vec::new(),
            e_value: None,
            roots: Vec::new(),
            apex_radius: None,
            forced_apex_ip: None,
        }
    }

    fn yes(reason: impl Into<String>) -> Self {
        RealizabilityVerdict {
            realizable: true,
            ..Self::no(reason)
        }
    }
}

fn in_unit_range(t: &ExactReal) -> bool {
    use std::cmp::Ordering::*;
    t.cmp_rational(&rat_i(-1)) != Less && t.cmp_rational(&rat_i(1)) == Less
}

/// Decides whether `k + 1` unit vectors in dimension `n` can have all
/// pairwise inner products equal to `t` (a regular `k`-simplex at angle `t`).
pub fn simplex_realizable(k: usize, n: usize, t: &ExactReal) -> RealizabilityVerdict {
    use std::cmp::Ordering::*;
    if k == 0 || n == 0 {
        return RealizabilityVerdict::no("domain: k and n must be at least 1");
    }
    if !in_unit_range(t) {
        return RealizabilityVerdict::no(
            "domain: inner products of distinct unit vectors lie in [-1, 1)",
        );
    }
    if k > n {
        return RealizabilityVerdict::no(format!(
            "dimension: a {k}-simplex needs ambient dimension at least {k} (got {n})"
        ));
    }
    let threshold = rat(-1, k as i64);
    let mut v = if k == n {
        match t.cmp_rational(&threshold) {
            Equal => RealizabilityVerdict::yes(format!(
                "k = n: realizable exactly at t = -1/{k} (full-dimensional simplex)"
            )),
            _ => RealizabilityVerdict::no(format!("k = n: requires t = -1/{k} exactly")),
        }
    } else {
        match t.cmp_rational(&threshold) {
            Less => RealizabilityVerdict::no(format!("k < n: requires t >= -1/{k}")),
            _ => RealizabilityVerdict::yes(format!("k < n: realizable exactly when t >= -1/{k}")),
        }
    };
    v.roots = vec![-1.0 / k as f64];
    v
}

/// Circumradius of the regular `k`-simplex at angle `t`:
/// `sqrt((1 - t) k / (k + 1))`.
pub fn circumradius(k: usize, t: f64) -> Result<f64, GeometryError> {
    if k == 0 {
        return Err(GeometryError::Domain("k must be at least 1".into()));
    }
    if !(-1.0..1.0).contains(&t) {
        return Err(GeometryError::Domain(format!(
            "t must lie in [-1, 1) (got {t})"
        )));
    }
    Ok(((1.0 - t) * k as f64 / (k as f64 + 1.0)).sqrt())
}

/// Factors a PSD Gram matrix into points of the given dimension.
///
/// Eigenvalues below `-tol * max` fail; the numerical rank must be at most
/// `dim`. Points come out in the leading `rank` coordinates, zero-padded.
pub fn embed_gram(
    gram: &DMatrix<f64>,
    dim: usize,
    tol: f64,
) -> Result<Vec<DVector<f64>>, GeometryError> {
    let m = gram.nrows();
    let eig = gram.clone().symmetric_eigen();
    let max = eig.eigenvalues.iter().cloned().fold(1.0f64, f64::max);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap()
    });
    let mut rank = 0usize;
    for &idx in &order {
        let l = eig.eigenvalues[idx];
        if l < -tol * max {
            return Err(GeometryError::Embedding(format!(
                "Gram matrix is not positive semidefinite (eigenvalue {l:.3e})"
            )));
        }
        if l > tol * max {
            rank += 1;
        }
    }
    if rank > dim {
        return Err(GeometryError::Embedding(format!(
            "Gram matrix has rank {rank}, which does not fit in dimension {dim}"
        )));
    }
    let mut pts = vec![DVector::zeros(dim); m];
    for (c, &idx) in order.iter().take(rank).enumerate() {
        let scale = eig.eigenvalues[idx].max(0.0).sqrt();
        for (r, pt) in pts.iter_mut().enumerate() {
            pt[c] = scale * eig.eigenvectors[(r, idx)];
        }
    }
    Ok(pts)
}

/// Builds the regular `k`-simplex at angle `t` in dimension `n`:
/// `k + 1` unit vectors with pairwise inner products `t`, supported on the
/// first `min(k + 1, n)` coordinates.
pub fn build_simplex(k: usize, n: usize, t: f64) -> Result<UnitConfig, GeometryError> {
    if k == 0 || n == 0 {
        return Err(GeometryError::Domain("k and n must be at least 1".into()));
    }
    if !(-1.0..1.0).contains(&t) {
        return Err(GeometryError::Domain(format!(
            "t must lie in [-1, 1) (got {t})"
        )));
    }
    if k > n {
        return Err(GeometryError::NotRealizable(format!(
            "a {k}-simplex needs ambient dimension at least {k} (got {n})"
        )));
    }
    let lower = -1.0 / k as f64;
    if k == n && (t - lower).abs() > 1e-9 {
        return Err(GeometryError::NotRealizable(format!(
            "k = n = {k}: realizable only at t = -1/{k}"
        )));
    }
    if t < lower - 1e-12 {
        return Err(GeometryError::NotRealizable(format!(
            "needs t >= -1/{k} (got {t})"
        )));
    }
    let m = k + 1;
    let mut g = DMatrix::from_element(m, m, t);
    for i in 0..m {
        g[(i, i)] = 1.0;
    }
    let pts = embed_gram(&g, n, 1e-9)?;
    let labels = (0..m).map(|i| format!("s{i}")).collect();
    UnitConfig::new(n, pts.into_iter().map(normalize_vec).collect(), labels)
}

fn normalize_vec(v: DVector<f64>) -> Vec<f64> {
    let norm = v.norm();
    v.iter().map(|x| x / norm).collect()
}

/// The forced far-apex inner product of the `k`-rhombus at angle `t`:
/// `tau = 2 k t^2 / ((k - 1) t + 1) - 1`.
///
/// Returns a pole error when `(k - 1) t + 1 = 0` (only possible outside the
/// realizable range `t > -1/k`).
pub fn rhombus_tau(k: usize, t: f64) -> Result<f64, GeometryError> {
    if k == 0 {
        return Err(GeometryError::Domain("k must be at least 1".into()));
    }
    let den = (k as f64 - 1.0) * t + 1.0;
    if den.abs() < 1e-14 {
        return Err(GeometryError::Pole(format!(
            "tau({k}, t) has a pole at t = -1/{} ",
            k - 1
        )));
    }
    Ok(2.0 * k as f64 * t * t / den - 1.0)
}

/// Exact-rational version of [`rhombus_tau`].
pub fn rhombus_tau_exact(k: usize, t: &Rat) -> Result<Rat, GeometryError> {
    if k == 0 {
        return Err(GeometryError::Domain("k must be at least 1".into()));
    }
    let den = rat_i(k as i64 - 1) * t + rat_i(1);
    if den == rat_i(0) {
        return Err(GeometryError::Pole(format!(
            "tau({k}, t) has a pole at t = -1/{}",
            k - 1
        )));
    }
    Ok(rat_i(2 * k as i64) * t * t / den - rat_i(1))
}

/// Decides realizability of the `k`-rhombus (two apexes over a common
/// `k`-vertex base, apexes not joined) in dimension `n` at angle `t`.
pub fn rhombus_realizable(k: usize, n: usize, t: &ExactReal) -> RealizabilityVerdict {
    use std::cmp::Ordering::*;
    if k == 0 || n == 0 {
        return RealizabilityVerdict::no("domain: k and n must be at least 1");
    }
    if !in_unit_range(t) {
        return RealizabilityVerdict::no(
            "domain: inner products of distinct unit vectors lie in [-1, 1)",
        );
    }
    if k > n - 1 {
        return RealizabilityVerdict::no(format!(
            "dimension: a {k}-rhombus needs ambient dimension at least {} (got {n})",
            k + 1
        ));
    }
    let threshold = rat(-1, k as i64);
    if t.cmp_rational(&threshold) != Greater {
        let mut v = RealizabilityVerdict::no(format!("requires t > -1/{k} strictly"));
        v.roots = vec![-1.0 / k as f64];
        return v;
    }
    let tf = t.to_f64();
    let tau = rhombus_tau(k, tf).expect("no pole inside t > -1/k");
    let apex_norm2 = (tau + 1.0) / 2.0;
    let mut v = RealizabilityVerdict::yes(format!(
        "realizable exactly when k <= n - 1 and t > -1/{k}"
    ));
    v.tau = vec![tau];
    v.roots = vec![-1.0 / k as f64];
    v.apex_radius = Some((1.0 - apex_norm2).max(0.0).sqrt());
    if k == n - 1 {
        v.forced_apex_ip = Some(tau);
        v.reason.push_str("; k = n - 1 forces the apex pair inner product to tau");
    }
    v
}

/// Builds the `k`-rhombus at angle `t` in dimension `n`. The two apexes have
/// inner product `apex_ip` (defaults to the extreme value `tau`, which is
/// forced when `k = n - 1`); any value in `[tau, 1)` is admissible when
/// `k < n - 1`.
///
/// Vertex order matches the pattern graph: base `0..k`, then apexes `e, p`.
pub fn build_rhombus(
    k: usize,
    n: usize,
    t: f64,
    apex_ip: Option<f64>,
) -> Result<UnitConfig, GeometryError> {
    if k == 0 || n == 0 {
        return Err(GeometryError::Domain("k and n must be at least 1".into()));
    }
    if !(-1.0..1.0).contains(&t) {
        return Err(GeometryError::Domain(format!(
            "t must lie in [-1, 1) (got {t})"
        )));
    }
    if k > n - 1 {
        return Err(GeometryError::NotRealizable(format!(
            "a {k}-rhombus needs ambient dimension at least {}",
            k + 1
        )));
    }
    if t <= -1.0 / k as f64 + 1e-12 {
        return Err(GeometryError::NotRealizable(format!(
            "needs t > -1/{k} (got {t})"
        )));
    }
    let tau = rhombus_tau(k, t)?;
    let c = apex_ip.unwrap_or(tau);
    if k == n - 1 && (c - tau).abs() > 1e-9 {
        return Err(GeometryError::NotRealizable(format!(
            "k = n - 1 forces the apex inner product to tau = {tau}, got {c}"
        )));
    }
    if c < tau - 1e-9 || c >= 1.0 - 1e-12 {
        return Err(GeometryError::NotRealizable(format!(
            "apex inner product {c} outside the admissible range [{tau}, 1)"
        )));
    }
    let c = c.max(tau);
    // Base simplex in the first k coordinates.
    let base = build_simplex(k - 1, k, t).map_err(|e| {
        GeometryError::NotRealizable(format!("base simplex of the rhombus failed: {e}"))
    })?;
    let mut points: Vec<Vec<f64>> = base
        .points
        .iter()
        .map(|p| {
            let mut q = vec![0.0; n];
            q[..k].copy_from_slice(p);
            q
        })
        .collect();
    // Apex center a0 = lambda * sum of base, with the apexes on the sphere of
    // radius r around it, orthogonal to the base span.
    let lambda = t / ((k as f64 - 1.0) * t + 1.0);
    let mut a0 = vec![0.0; n];
    for p in &points {
        for (ai, pi) in a0.iter_mut().zip(p) {
            *ai += lambda * pi;
        }
    }
    let a0n2: f64 = a0.iter().map(|x| x * x).sum();
    let r2 = 1.0 - a0n2;
    if r2 <= 0.0 {
        return Err(GeometryError::NotRealizable(
            "apex sphere has nonpositive radius".into(),
        ));
    }
    let r = r2.sqrt();
    let cos_psi = ((c - a0n2) / r2).clamp(-1.0, 1.0);
    let sin_psi = (1.0 - cos_psi * cos_psi).max(0.0).sqrt();
    let mut e = a0.clone();
    e[k] += r;
    let mut p = a0.clone();
    p[k] += r * cos_psi;
    if sin_psi > 1e-12 {
        if k + 1 >= n {
            return Err(GeometryError::NotRealizable(
                "free apex angle needs one more dimension".into(),
            ));
        }
        p[k + 1] += r * sin_psi;
    }
    points.push(e);
    points.push(p);
    let mut labels: Vec<String> = (0..k).map(|i| format!("b{}", i + 1)).collect();
    labels.push("e".into());
    labels.push("p".into());
    let cfg = UnitConfig::new(n, points, labels)?;
    // Verify the rhombus edges: all base pairs, and each apex to every base
    // vertex, equal t; the apex pair equals c.
    let g = cfg.gram();
    let m = k + 2;
    for i in 0..k {
        for j in i + 1..k {
            check_ip(g.get(i, j), t, "base pair")?;
        }
        check_ip(g.get(i, k), t, "apex e to base")?;
        check_ip(g.get(i, k + 1), t, "apex p to base")?;
    }
    debug_assert_eq!(m, cfg.len());
    check_ip(g.get(k, k + 1), c, "apex pair")?;
    Ok(cfg)
}

fn check_ip(got: f64, want: f64, what: &str) -> Result<(), GeometryError> {
    if (got - want).abs() > EDGE_TOL {
        return Err(GeometryError::Embedding(format!(
            "{what} inner product is {got}, expected {want} (off by {:.3e})",
            (got - want).abs()
        )));
    }
    Ok(())
}

/// The minimal far-apex inner product when both spindle arms sit at their
/// extreme latitudes: `E = tau1 tau2 - sqrt(1 - tau1^2) sqrt(1 - tau2^2)`.
pub fn spindle_e_value(k: usize, l: usize, t: f64) -> Result<f64, GeometryError> {
    let tau1 = rhombus_tau(k, t)?;
    let tau2 = rhombus_tau(l, t)?;
    for (arm, tau) in [(k, tau1), (l, tau2)] {
        if !(-1.0..=1.0).contains(&tau) {
            return Err(GeometryError::Domain(format!(
                "tau({arm}, {t}) = {tau} lies outside [-1, 1]"
            )));
        }
    }
    Ok(tau1 * tau2 - (1.0 - tau1 * tau1).sqrt() * (1.0 - tau2 * tau2).sqrt())
}

/// Decides realizability of the `(k, l)`-spindle in dimension `n` at angle
/// `t`, exactly. The verdict's `roots` record the thresholds that delimit
/// the admissible range for the matched case.
pub fn spindle_realizable(k: usize, l: usize, n: usize, t: &ExactReal) -> RealizabilityVerdict {
    use std::cmp::Ordering::*;
    if k == 0 || l == 0 || n == 0 {
        return RealizabilityVerdict::no("domain: k, l and n must be at least 1");
    }
    if !in_unit_range(t) {
        return RealizabilityVerdict::no(
            "domain: inner products of distinct unit vectors lie in [-1, 1)",
        );
    }
    let (a, b) = (k.min(l), k.max(l));
    if b > n - 1 {
        return RealizabilityVerdict::no(format!(
            "dimension: spindle arms need k, l <= n - 1 = {}",
            n - 1
        ));
    }
    let root = |kk: usize, i: u32| -> Option<AlgebraicNumber> {
        spindle_root(SpindleRootHandle { k: kk as u32, i })
    };
    let fill = |mut v: RealizabilityVerdict, roots: &[f64]| -> RealizabilityVerdict {
        v.roots = roots.to_vec();
        let tf = t.to_f64();
        if let (Ok(t1), Ok(t2)) = (rhombus_tau(a, tf), rhombus_tau(b, tf)) {
            v.tau = vec![t1, t2];
            if let Ok(e) = spindle_e_value(a, b, tf) {
                v.e_value = Some(e);
            }
        }
        v
    };
    if n == 2 {
        // Both arms are single points: only the two admissible roots of the
        // arm-1 polynomial work (its middle root makes points coincide).
        let r1 = root(1, 1).unwrap();
        let r3 = root(1, 3).unwrap();
        let ok = t.cmp_algebraic(&r1) == Equal || t.cmp_algebraic(&r3) == Equal;
        let v = if ok {
            RealizabilityVerdict::yes("n = 2: realizable exactly at the roots t_1_1 and t_1_3")
        } else {
            RealizabilityVerdict::no("n = 2: realizable only at the roots t_1_1 and t_1_3")
        };
        return fill(v, &[r1.to_f64(), r3.to_f64()]);
    }
    if a == b {
        let r1 = root(a, 1).unwrap();
        let r2 = root(a, 2).unwrap();
        let r3 = root(a, 3).unwrap();
        let rf = [r1.to_f64(), r2.to_f64(), r3.to_f64()];
        if a == n - 1 {
            // Both latitudes forced: realizable exactly on
            // [t_a_1, t_a_2] union [t_a_3, 1).
            let in_window = t.cmp_algebraic(&r1) != Less && t.cmp_algebraic(&r2) != Greater;
            let upper = t.cmp_algebraic(&r3) != Less;
            let v = if in_window || upper {
                RealizabilityVerdict::yes(format!(
                    "k = l = n - 1: realizable exactly on [t_{a}_1, t_{a}_2] or [t_{a}_3, 1)"
                ))
            } else {
                RealizabilityVerdict::no(format!(
                    "k = l = n - 1: t outside [t_{a}_1, t_{a}_2] and below t_{a}_3"
                ))
            };
            return fill(v, &rf);
        }
        // Latitudes free: realizable exactly when t >= t_a_1.
        let v = if t.cmp_algebraic(&r1) != Less {
            RealizabilityVerdict::yes(format!(
                "k = l < n - 1: realizable exactly when t >= t_{a}_1"
            ))
        } else {
            RealizabilityVerdict::no(format!("k = l < n - 1: requires t >= t_{a}_1"))
        };
        return fill(v, &rf);
    }
    // Unequal arms: realizable exactly when t > -1/max(k, l).
    let threshold = rat(-1, b as i64);
    let v = if t.cmp_rational(&threshold) == Greater {
        RealizabilityVerdict::yes(format!("k < l: realizable exactly when t > -1/{b}"))
    } else {
        RealizabilityVerdict::no(format!("k < l: requires t > -1/{b} strictly"))
    };
    fill(v, &[-1.0 / b as f64])
}

/// One spindle arm placed in the orthogonal complement of the pole axis:
/// base residuals `w_i` (the base vertices are `t * pole + w_i`) and the
/// apex azimuth direction `u` (the apex is `cos(theta) * pole +
/// sin(theta) * u`).
struct PolarArm {
    base_y: Vec<DVector<f64>>,
    azimuth: DVector<f64>,
}

/// Builds an arm of `m` base vertices at latitude angle `theta` in the
/// `(n-1)`-dimensional complement of the pole. The base occupies coordinates
/// `0..m`; the azimuth may need one extra coordinate (`z_coord`).
fn arm_polar(
    m: usize,
    nm1: usize,
    t: f64,
    theta: f64,
    z_coord: usize,
) -> Result<PolarArm, GeometryError> {
    // Base residual Gram: (1 - t) (I + t J), full rank for t > -1/m.
    let mut g = DMatrix::from_element(m, m, t * (1.0 - t));
    for i in 0..m {
        g[(i, i)] = 1.0 - t * t;
    }
    let w = embed_gram(&g, nm1, 1e-9)
        .map_err(|e| GeometryError::NotRealizable(format!("arm base embedding failed: {e}")))?;
    let (sin_t, cos_t) = theta.sin_cos();
    if sin_t <= 1e-12 {
        return Err(GeometryError::NotRealizable(
            "arm apex would coincide with the shared apex".into(),
        ));
    }
    // Azimuth u with <u, w_i> = t (1 - cos theta) / sin theta for all i.
    let d = t * (1.0 - cos_t) / sin_t;
    let sum_w: DVector<f64> = w.iter().fold(DVector::zeros(nm1), |acc, v| acc + v);
    let denom = (1.0 - t) * (1.0 + t * m as f64);
    let mu = d / denom;
    let rho2 = d * d * m as f64 / denom;
    let nu2 = 1.0 - rho2;
    if nu2 < -1e-9 {
        return Err(GeometryError::NotRealizable(format!(
            "latitude angle {theta} is below the arm's extreme latitude"
        )));
    }
    let mut u = sum_w * mu;
    if nu2 > 1e-12 {
        if z_coord >= nm1 {
            return Err(GeometryError::NotRealizable(
                "free latitude needs one more dimension".into(),
            ));
        }
        u[z_coord] += nu2.sqrt();
    } else {
        // Extreme latitude: the azimuth lies in the base span; renormalize.
        let norm = u.norm();
        if norm < 1e-13 {
            return Err(GeometryError::NotRealizable(
                "degenerate arm azimuth".into(),
            ));
        }
        u /= norm;
    }
    Ok(PolarArm {
        base_y: w,
        azimuth: u,
    })
}

/// A unit vector orthogonal to `u` (and to `avoid`, when given), found by
/// Gram-Schmidt over the coordinate axes.
fn orthogonal_unit(
    u: &DVector<f64>,
    avoid: Option<&DVector<f64>>,
    dim: usize,
) -> Option<DVector<f64>> {
    for c in 0..dim {
        let mut v = DVector::zeros(dim);
        v[c] = 1.0;
        v -= u * u.dot(&v);
        if let Some(a) = avoid {
            v -= a * a.dot(&v);
        }
        let norm = v.norm();
        if norm > 1e-6 {
            return Some(v / norm);
        }
    }
    None
}

/// Householder reflection sending `from` to `to` (both unit).
fn reflect_onto(y: &DVector<f64>, from: &DVector<f64>, to: &DVector<f64>) -> DVector<f64> {
    let diff = from - to;
    let n2 = diff.norm_squared();
    if n2 < 1e-24 {
        return y.clone();
    }
    y - &diff * (2.0 * diff.dot(y) / n2)
}

/// Builds the `(k, l)`-spindle at angle `t` in dimension `n`. The shared
/// apex sits at the north pole; the two far apexes sit on latitude circles
/// whose angles are chosen inside the admissible ranges so that the far-apex
/// pair meets at exactly `t`.
///
/// Vertex order matches the pattern graph: shared apex `e`, first base
/// (`k` vertices), far apex `p1`, second base (`l` vertices), far apex `p2`.
pub fn build_spindle(k: usize, l: usize, n: usize, t: f64) -> Result<UnitConfig, GeometryError> {
    if k == 0 || l == 0 || n < 2 {
        return Err(GeometryError::Domain(
            "arms need k, l >= 1 and dimension n >= 2".into(),
        ));
    }
    if !(-1.0..1.0).contains(&t) {
        return Err(GeometryError::Domain(format!(
            "t must lie in [-1, 1) (got {t})"
        )));
    }
    if k.max(l) > n - 1 {
        return Err(GeometryError::NotRealizable(format!(
            "spindle arms need k, l <= n - 1 = {}",
            n - 1
        )));
    }
    for (arm, m) in [("first", k), ("second", l)] {
        if t <= -1.0 / m as f64 + 1e-12 {
            return Err(GeometryError::NotRealizable(format!(
                "{arm} arm needs t > -1/{m} (got {t})"
            )));
        }
    }
    let tau1 = rhombus_tau(k, t)?;
    let tau2 = rhombus_tau(l, t)?;
    let cap1 = tau1.clamp(-1.0, 1.0).acos();
    let cap2 = tau2.clamp(-1.0, 1.0).acos();
    let forced1 = k == n - 1;
    let forced2 = l == n - 1;
    let angle = t.clamp(-1.0, 1.0).acos();
    const ANG_TOL: f64 = 1e-9;
    // Latitude angles theta1, theta2 (apex i at angle theta_i from the pole)
    // must satisfy |theta1 - theta2| <= angle <= theta1 + theta2 <=
    // 2 pi - angle, with theta_i <= cap_i and equality when the arm spans a
    // full hyperplane (forced).
    let theta2_hi = cap2.min(PI).min(cap1 + angle);
    let theta2_lo = (angle - cap1).max(1e-12);
    if theta2_hi < theta2_lo - ANG_TOL {
        return Err(GeometryError::NotRealizable(
            "no admissible latitude pair: the far apexes cannot meet at t".into(),
        ));
    }
    let theta2 = if forced2 {
        if cap2 > theta2_hi + ANG_TOL || cap2 < theta2_lo - ANG_TOL {
            return Err(GeometryError::NotRealizable(
                "forced second latitude is incompatible with the far-apex angle".into(),
            ));
        }
        cap2
    } else {
        theta2_hi.min(cap2)
    };
    let theta1_hi = cap1.min(theta2 + angle).min(2.0 * PI - angle - theta2);
    let theta1_lo = (angle - theta2).max(theta2 - angle).max(1e-12);
    if theta1_hi < theta1_lo - ANG_TOL {
        return Err(GeometryError::NotRealizable(
            "no admissible latitude pair: the far apexes cannot meet at t".into(),
        ));
    }
    // First latitude: forced arms pin it at the cap; free arms get several
    // candidates inside the admissible interval, because an endpoint choice
    // can make the canonical placement degenerate (points colliding) even
    // when the spindle is realizable.
    let theta1_candidates: Vec<f64> = if forced1 {
        if cap1 > theta1_hi + ANG_TOL || cap1 < theta1_lo - ANG_TOL {
            return Err(GeometryError::NotRealizable(
                "forced first latitude is incompatible with the far-apex angle".into(),
            ));
        }
        vec![cap1]
    } else {
        let hi = theta1_hi.min(cap1).max(theta1_lo);
        let lo = theta1_lo.min(hi);
        vec![hi, 0.5 * (lo + hi), lo + 0.751 * (hi - lo)]
    };
    let nm1 = n - 1;
    let arm2 = arm_polar(l, nm1, t, theta2, l)?;
    let (s2, c2) = theta2.sin_cos();
    let mut last_err = GeometryError::NotRealizable("no spindle placement attempted".into());
    for &theta1 in &theta1_candidates {
        let (s1, c1) = theta1.sin_cos();
        let cos_phi = ((t - c1 * c2) / (s1 * s2)).clamp(-1.0, 1.0);
        let sin_phi = (1.0 - cos_phi * cos_phi).max(0.0).sqrt();
        let arm1 = match arm_polar(k, nm1, t, theta1, k) {
            Ok(a) => a,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        // Target azimuth for the second apex, at angle phi from the first.
        // When phi is within snapping distance of 0 or pi (pair inner
        // product error at most sin^2(phi)/2 <= EDGE_TOL), collapse onto the
        // first azimuth so one azimuth dimension suffices.
        let target = if nm1 >= 2 && sin_phi > 1e-12 {
            match orthogonal_unit(&arm1.azimuth, None, nm1) {
                Some(perp) => &arm1.azimuth * cos_phi + perp * sin_phi,
                None => {
                    last_err = GeometryError::NotRealizable(
                        "far apexes need a second azimuth dimension at this angle".into(),
                    );
                    continue;
                }
            }
        } else if sin_phi <= 1.4e-5 {
            &arm1.azimuth * cos_phi.signum()
        } else {
            last_err = GeometryError::NotRealizable(
                "far apexes need a second azimuth dimension at this angle".into(),
            );
            continue;
        };
        // Spin freedom: reflect arm 2 onto the target azimuth, and if points
        // collide, additionally spin it by the stabilizer of the pole and
        // the target direction.
        for spin in 0..2usize {
            match place_spindle(
                k, l, n, t, c1, s1, c2, s2, &arm1, &arm2, &target, spin,
            ) {
                Ok(cfg) => return Ok(cfg),
                Err(e) => last_err = e,
            }
        }
    }
    Err(last_err)
}

/// One concrete spindle placement attempt at fixed latitudes and spin.
#[allow(clippy::too_many_arguments)]
fn place_spindle(
    k: usize,
    l: usize,
    n: usize,
    t: f64,
    c1: f64,
    s1: f64,
    c2: f64,
    s2: f64,
    arm1: &PolarArm,
    arm2: &PolarArm,
    target: &DVector<f64>,
    spin: usize,
) -> Result<UnitConfig, GeometryError> {
    let nm1 = n - 1;
    let map = |y: &DVector<f64>| -> DVector<f64> {
        let mut v = reflect_onto(y, &arm2.azimuth, target);
        if spin == 1 {
            // Reflect across the target direction within its complement.
            if let Some(q) = orthogonal_unit(target, None, nm1) {
                v = reflect_onto(&v, &q, &(-&q));
            }
        }
        v
    };
    let lift = |x0: f64, y: &DVector<f64>| -> Vec<f64> {
        let mut p = vec![0.0; n];
        p[0] = x0;
        for i in 0..nm1 {
            p[1 + i] = y[i];
        }
        p
    };
    let mut points = Vec::with_capacity(k + l + 3);
    let mut labels = Vec::with_capacity(k + l + 3);
    let mut pole = vec![0.0; n];
    pole[0] = 1.0;
    points.push(pole);
    labels.push("e".to_string());
    for (i, w) in arm1.base_y.iter().enumerate() {
        points.push(lift(t, w));
        labels.push(format!("b1_{}", i + 1));
    }
    points.push(lift(c1, &(&arm1.azimuth * s1)));
    labels.push("p1".to_string());
    for (i, w) in arm2.base_y.iter().enumerate() {
        points.push(lift(t, &map(w)));
        labels.push(format!("b2_{}", i + 1));
    }
    points.push(lift(c2, &(map(&arm2.azimuth) * s2)));
    labels.push("p2".to_string());
    let cfg = UnitConfig::new(n, points, labels)?;
    verify_spindle_edges(&cfg, k, l, t)?;
    Ok(cfg)
}

/// Checks every spindle edge of the built configuration against `t`.
fn verify_spindle_edges(cfg: &UnitConfig, k: usize, l: usize, t: f64) -> Result<(), GeometryError> {
    let g = cfg.gram();
    let e = 0usize;
    let b1: Vec<usize> = (1..=k).collect();
    let p1 = k + 1;
    let b2: Vec<usize> = (k + 2..=k + 1 + l).collect();
    let p2 = k + l + 2;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &b in &b1 {
        edges.push((e, b));
        edges.push((b, p1));
    }
    for &b in &b2 {
        edges.push((e, b));
        edges.push((b, p2));
    }
    for i in 0..b1.len() {
        for j in i + 1..b1.len() {
            edges.push((b1[i], b1[j]));
        }
    }
    for i in 0..b2.len() {
        for j in i + 1..b2.len() {
            edges.push((b2[i], b2[j]));
        }
    }
    edges.push((p1, p2));
    for (u, v) in edges {
        check_ip(g.get(u, v), t, "spindle edge")?;
    }
    Ok(())
}

/// Gap between the two far apexes when a `(n-1)`-rhombus pair shares a
/// common `n`-vertex simplex at `t = -1/n` (the extended rhombus). The
/// rigidity of full-dimensional rhombi forces both apexes to the same point,
/// so the gap vanishes.
pub fn extended_rhombus_apex_gap(n: usize) -> Result<f64, GeometryError> {
    if n < 3 {
        return Err(GeometryError::Domain("needs n >= 3".into()));
    }
    let t = -1.0 / n as f64;
    // The shared simplex: n unit vectors at pairwise -1/n, full rank in R^n.
    let sigma = build_simplex(n - 1, n, t)?;
    let tau = rhombus_tau(n - 1, t)?;
    let mut m = DMatrix::zeros(n, n);
    for (i, p) in sigma.points.iter().enumerate() {
        for j in 0..n {
            m[(i, j)] = p[j];
        }
    }
    let lu = m.lu();
    // Apex e: inner product t with the base sigma \ {0}, tau with sigma_0.
    let mut rhs_e = DVector::from_element(n, t);
    rhs_e[0] = tau;
    // Apex f: same with roles of sigma_0 and sigma_1 swapped.
    let mut rhs_f = DVector::from_element(n, t);
    rhs_f[1] = tau;
    let e = lu
        .solve(&rhs_e)
        .ok_or_else(|| GeometryError::Embedding("singular simplex system".into()))?;
    let f = lu
        .solve(&rhs_f)
        .ok_or_else(|| GeometryError::Embedding("singular simplex system".into()))?;
    for (name, v) in [("e", &e), ("f", &f)] {
        if (v.norm() - 1.0).abs() > 1e-8 {
            return Err(GeometryError::Embedding(format!(
                "forced apex {name} has norm {} (expected 1)",
                v.norm()
            )));
        }
    }
    Ok((e - f).norm())
}

/// Builds the double simplex: two full-dimensional regular simplices at
/// `t = -1/n`, the second a fixed pseudo-random rotation of the first,
/// resampled until no cross pair is within `1e-6` of `-1/n` and no points
/// coincide. `2 (n + 1)` unit vectors in dimension `n`.
pub fn build_double_simplex(n: usize) -> Result<UnitConfig, GeometryError> {
    if n < 2 {
        return Err(GeometryError::Domain("needs n >= 2".into()));
    }
    let t = -1.0 / n as f64;
    let first = build_simplex(n, n, t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0d5);
    for _attempt in 0..64 {
        let q = random_rotation(n, &mut rng);
        let second: Vec<Vec<f64>> = first
            .points
            .iter()
            .map(|p| {
                let v = &q * DVector::from_column_slice(p);
                v.iter().cloned().collect()
            })
            .collect();
        let clear = first.points.iter().all(|a| {
            second.iter().all(|b| {
                let ip = dot(a, b);
                (ip - t).abs() > 1e-6 && (ip - 1.0).abs() > 1e-6
            })
        });
        if !clear {
            continue;
        }
        let mut points = first.points.clone();
        points.extend(second);
        let mut labels: Vec<String> = (0..=n).map(|i| format!("a{i}")).collect();
        labels.extend((0..=n).map(|i| format!("b{i}")));
        return UnitConfig::new(n, points, labels);
    }
    Err(GeometryError::Embedding(
        "could not sample a clear rotation for the double simplex".into(),
    ))
}

/// A pseudo-random rotation (orthogonal, determinant +1) from the QR
/// factorization of a Gaussian matrix.
fn random_rotation(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let gauss = DMatrix::from_fn(n, n, |_, _| {
        // Box-Muller from two uniforms.
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
    });
    let qr = gauss.qr();
    let mut q = qr.q();
    let r = qr.r();
    for i in 0..n {
        if r[(i, i)] < 0.0 {
            for row in 0..n {
                q[(row, i)] = -q[(row, i)];
            }
        }
    }
    if q.determinant() < 0.0 {
        for row in 0..n {
            q[(row, 0)] = -q[(row, 0)];
        }
    }
    q
}

/// The classical 16-point configuration in dimension 5: the vertices of the
/// cube `[-1, 1]^5` with an odd number of positive signs, scaled to the unit
/// sphere. Every pair meets at `1/5` or `-3/5`, and every triple contains a
/// pair at `1/5`.
pub fn larman_rogers() -> UnitConfig {
    let scale = 1.0 / 5.0f64.sqrt();
    let mut points = Vec::with_capacity(16);
    let mut labels = Vec::with_capacity(16);
    for mask in 0u32..32 {
        if mask.count_ones() % 2 == 1 {
            let p: Vec<f64> = (0..5)
                .map(|b| if mask >> b & 1 == 1 { scale } else { -scale })
                .collect();
            labels.push(format!("v{mask:05b}"));
            points.push(p);
        }
    }
    UnitConfig::new(5, points, labels).expect("fixed configuration is valid")
}

/// The graph on the configuration's points whose edges are the pairs with
/// inner product within `tol` of `t`.
pub fn distance_graph(g: &GramMatrix, t: f64, tol: f64) -> Result<SimpleGraph, GeometryError> {
    let m = g.order();
    let mut graph = SimpleGraph::new(m)
        .map_err(|e| GeometryError::Domain(format!("distance graph: {e}")))?;
    for i in 0..m {
        for j in i + 1..m {
            if (g.get(i, j) - t).abs() <= tol {
                graph.add_edge(i, j);
            }
        }
    }
    Ok(graph)
}

/// Whether every triple of points contains at least one pair at inner
/// product `t` (within `tol`).
pub fn is_almost_equiangular(g: &GramMatrix, t: f64, tol: f64) -> bool {
    almost_equiangular_offender(g, t, tol).is_none()
}

/// The first triple with no pair at `t`, if any.
pub fn almost_equiangular_offender(g: &GramMatrix, t: f64, tol: f64) -> Option<[usize; 3]> {
    let m = g.order();
    let pair = |i: usize, j: usize| (g.get(i, j) - t).abs() <= tol;
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                if !pair(i, j) && !pair(i, k) && !pair(j, k) {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}

/// Result of the numerical realization search.
#[derive(Debug, Clone)]
pub enum RealizeOutcome {
    /// A configuration whose edge inner products all meet `t` within `1e-8`.
    Realized(UnitConfig),
    /// No realization found; the best residual over all restarts. This is
    /// not a proof of non-realizability.
    Inconclusive { best_residual: f64 },
}

/// Seeks unit vectors realizing the graph's edges at inner product `t` by
/// projected gradient descent on the squared edge residuals, with up to 20
/// seeded restarts and a Gauss-Newton polish. Failure is inconclusive.
pub fn heuristic_realize(
    g: &SimpleGraph,
    n: usize,
    t: f64,
    seed: u64,
    iters: usize,
) -> RealizeOutcome {
    let m = g.order();
    let edges = g.edges();
    let mut best_residual = f64::INFINITY;
    for restart in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(restart));
        let mut x: Vec<DVector<f64>> = (0..m)
            .map(|_| {
                let v = DVector::from_fn(n, |_, _| {
                    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
                    let u2: f64 = rng.gen_range(0.0..1.0);
                    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
                });
                let norm = v.norm();
                v / norm
            })
            .collect();
        let loss = |x: &[DVector<f64>]| -> f64 {
            edges
                .iter()
                .map(|&(i, j)| {
                    let r = x[i].dot(&x[j]) - t;
                    r * r
                })
                .sum()
        };
        let mut cur = loss(&x);
        let mut step = 0.25;
        for _ in 0..iters {
            if cur < 1e-22 {
                break;
            }
            let mut grad: Vec<DVector<f64>> = vec![DVector::zeros(n); m];
            for &(i, j) in &edges {
                let r = x[i].dot(&x[j]) - t;
                grad[i] += &x[j] * (2.0 * r);
                grad[j] += &x[i] * (2.0 * r);
            }
            let cand: Vec<DVector<f64>> = x
                .iter()
                .zip(&grad)
                .map(|(xi, gi)| {
                    let v = xi - gi * step;
                    let norm = v.norm();
                    v / norm
                })
                .collect();
            let cl = loss(&cand);
            if cl < cur {
                x = cand;
                cur = cl;
                step = (step * 1.2).min(1.0);
            } else {
                step *= 0.5;
                if step < 1e-14 {
                    break;
                }
            }
        }
        // Gauss-Newton polish on the joint system of edge residuals and
        // unit-norm constraints (quadratic convergence near a solution,
        // where projected gradient descent crawls).
        let joint_loss = |x: &[DVector<f64>]| -> f64 {
            let mut s = loss(x);
            for xi in x {
                let r = xi.norm_squared() - 1.0;
                s += r * r;
            }
            s
        };
        let mut jcur = joint_loss(&x);
        for _ in 0..60 {
            if jcur < 1e-28 {
                break;
            }
            let ne = edges.len();
            let mut jac = DMatrix::zeros(ne + m, m * n);
            let mut res = DVector::zeros(ne + m);
            for (r, &(i, j)) in edges.iter().enumerate() {
                res[r] = x[i].dot(&x[j]) - t;
                for c in 0..n {
                    jac[(r, i * n + c)] += x[j][c];
                    jac[(r, j * n + c)] += x[i][c];
                }
            }
            for i in 0..m {
                res[ne + i] = x[i].norm_squared() - 1.0;
                for c in 0..n {
                    jac[(ne + i, i * n + c)] = 2.0 * x[i][c];
                }
            }
            let svd = jac.svd(true, true);
            let delta = match svd.solve(&res, 1e-13) {
                Ok(d) => d,
                Err(_) => break,
            };
            let mut improved = false;
            let mut scale = 1.0;
            for _ in 0..8 {
                let cand: Vec<DVector<f64>> = x
                    .iter()
                    .enumerate()
                    .map(|(i, xi)| {
                        let mut v = xi.clone();
                        for c in 0..n {
                            v[c] -= scale * delta[i * n + c];
                        }
                        v
                    })
                    .collect();
                let cl = joint_loss(&cand);
                if cl < jcur {
                    x = cand;
                    jcur = cl;
                    improved = true;
                    break;
                }
                scale *= 0.5;
            }
            if !improved {
                break;
            }
        }
        // Final exact projection to the sphere.
        for xi in &mut x {
            let norm = xi.norm();
            if norm > 0.0 {
                *xi /= norm;
            }
        }
        let max_dev = edges
            .iter()
            .map(|&(i, j)| (x[i].dot(&x[j]) - t).abs())
            .fold(0.0f64, f64::max);
        best_residual = best_residual.min(max_dev);
        if max_dev <= 1e-8 {
            let points: Vec<Vec<f64>> = x
                .iter()
                .map(|v| {
                    let norm = v.norm();
                    v.iter().map(|c| c / norm).collect()
                })
                .collect();
            let labels = (0..m).map(|i| format!("x{i}")).collect();
            if let Ok(cfg) = UnitConfig::new(n, points, labels) {
                return RealizeOutcome::Realized(cfg);
            }
        }
    }
    RealizeOutcome::Inconclusive {
        best_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{make_pattern, PatternName};
    use crate::ratio::rat;

    fn exact(p: i64, q: i64) -> ExactReal {
        ExactReal::Rational(rat(p, q))
    }

    fn root(k: u32, i: u32) -> ExactReal {
        ExactReal::Algebraic(spindle_root(SpindleRootHandle { k, i }).unwrap())
    }

    fn rat_from_f64(x: f64) -> ExactReal {
        ExactReal::Rational(Rat::from_float(x).unwrap())
    }

    #[test]
    fn simplex_verdicts() {
        assert!(simplex_realizable(3, 3, &exact(-1, 3)).realizable);
        assert!(!simplex_realizable(3, 3, &exact(-33, 100)).realizable);
        assert!(!simplex_realizable(2, 3, &exact(-3, 5)).realizable);
        assert!(simplex_realizable(2, 3, &exact(-1, 2)).realizable);
        assert!(simplex_realizable(2, 5, &exact(0, 1)).realizable);
        let v = simplex_realizable(4, 3, &exact(-1, 4));
        assert!(!v.realizable);
        assert!(v.reason.contains("dimension"));
        assert!(!simplex_realizable(2, 3, &exact(3, 2)).realizable);
    }

    #[test]
    fn circumradius_values() {
        // r_k(-1/k) = 1: the simplex through the center.
        for k in 1..=6usize {
            let r = circumradius(k, -1.0 / k as f64).unwrap();
            assert!((r - 1.0).abs() < 1e-12, "k={k}: {r}");
        }
        assert!((circumradius(1, 0.0).unwrap() - (0.5f64).sqrt()).abs() < 1e-15);
        assert!((circumradius(2, 0.0).unwrap() - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!(circumradius(1, 1.0).is_err());
        assert!(circumradius(0, 0.0).is_err());
    }

    #[test]
    fn simplex_builds_match_design() {
        for n in 1..=6usize {
            for k in 1..=n {
                let ts: Vec<f64> = if k == n {
                    vec![-1.0 / k as f64]
                } else {
                    vec![-1.0 / k as f64, -1.0 / k as f64 + 0.1, 0.0, 0.4]
                };
                for t in ts {
                    let cfg = build_simplex(k, n, t).unwrap();
                    assert_eq!(cfg.len(), k + 1);
                    assert_eq!(cfg.dim, n);
                    let g = cfg.gram();
                    for i in 0..cfg.len() {
                        for j in i + 1..cfg.len() {
                            assert!(
                                (g.get(i, j) - t).abs() < 1e-10,
                                "k={k} n={n} t={t}: ip {}",
                                g.get(i, j)
                            );
                        }
                    }
                    g.check(n, 1e-8).unwrap();
                    // Supported on the first min(k+1, n) coordinates.
                    let support = (k + 1).min(n);
                    for p in &cfg.points {
                        for c in support..n {
                            assert!(p[c].abs() < 1e-12);
                        }
                    }
                }
            }
        }
        assert!(build_simplex(3, 3, -0.2).is_err());
        assert!(build_simplex(2, 3, -0.9).is_err());
        assert!(build_simplex(4, 3, -0.2).is_err());
    }

    #[test]
    fn rhombus_tau_values() {
        for t in [-0.9, -0.3, 0.0, 0.7] {
            assert!((rhombus_tau(1, t).unwrap() - (2.0 * t * t - 1.0)).abs() < 1e-15);
        }
        assert!((rhombus_tau(2, -1.0 / 3.0).unwrap() + 1.0 / 3.0).abs() < 1e-15);
        for k in 1..=6usize {
            assert!((rhombus_tau(k, 0.0).unwrap() + 1.0).abs() < 1e-15);
        }
        assert!(matches!(rhombus_tau(2, -1.0), Err(GeometryError::Pole(_))));
        assert_eq!(rhombus_tau_exact(2, &rat(-1, 3)).unwrap(), rat(-1, 3));
        assert!(rhombus_tau_exact(3, &rat(-1, 2)).is_err());
    }

    #[test]
    fn rhombus_verdicts_and_builds() {
        let v = rhombus_realizable(2, 3, &exact(-2, 5));
        assert!(v.realizable);
        assert!(v.forced_apex_ip.is_some());
        assert!(v.apex_radius.unwrap() > 0.0);
        assert!(!rhombus_realizable(2, 3, &exact(-1, 2)).realizable);
        assert!(!rhombus_realizable(3, 3, &exact(-1, 4)).realizable);
        assert!(rhombus_realizable(2, 4, &exact(-2, 5)).forced_apex_ip.is_none());

        // Rigidity: k = n - 1 forces the apex pair inner product to tau.
        for (k, n, t) in [(2usize, 3usize, -0.4f64), (3, 4, -0.25), (4, 5, -0.15)] {
            let cfg = build_rhombus(k, n, t, None).unwrap();
            let tau = rhombus_tau(k, t).unwrap();
            let g = cfg.gram();
            assert!((g.get(k, k + 1) - tau).abs() < 1e-12, "k={k} rigidity");
            assert!(build_rhombus(k, n, t, Some(tau + 0.05)).is_err());
        }
        // Free apex angle below the top dimension.
        let cfg = build_rhombus(2, 4, -0.4, Some(0.3)).unwrap();
        let g = cfg.gram();
        assert!((g.get(2, 3) - 0.3).abs() < 1e-12);
        assert!(build_rhombus(2, 4, -0.4, Some(-0.9)).is_err());
        assert!(build_rhombus(2, 4, -0.4, Some(1.0)).is_err());
        assert!(build_rhombus(2, 3, -0.5, None).is_err());
        assert!(build_rhombus(3, 3, -0.2, None).is_err());
    }

    #[test]
    fn spindle_e_values() {
        assert!((spindle_e_value(1, 1, -0.5).unwrap() + 0.5).abs() < 1e-15);
        assert!(spindle_e_value(3, 3, -0.9).is_err());
    }

    #[test]
    fn spindle_verdict_examples() {
        // n = 2: exactly the two admissible pentagon roots.
        assert!(spindle_realizable(1, 1, 2, &root(1, 1)).realizable);
        assert!(spindle_realizable(1, 1, 2, &root(1, 3)).realizable);
        assert!(!spindle_realizable(1, 1, 2, &exact(-1, 2)).realizable);
        assert!(!spindle_realizable(1, 1, 2, &exact(-809, 1000)).realizable);

        // k = l = n - 1 window.
        assert!(!spindle_realizable(2, 2, 3, &exact(0, 1)).realizable);
        assert!(!spindle_realizable(2, 2, 3, &exact(-1, 2)).realizable);
        assert!(spindle_realizable(2, 2, 3, &exact(-2, 5)).realizable);
        assert!(spindle_realizable(2, 2, 3, &exact(-3, 10)).realizable);
        assert!(!spindle_realizable(2, 2, 3, &exact(-1, 10)).realizable);
        assert!(!spindle_realizable(2, 2, 3, &exact(1, 10)).realizable);
        assert!(spindle_realizable(2, 2, 3, &exact(3, 10)).realizable);
        assert!(spindle_realizable(2, 2, 3, &root(2, 1)).realizable);
        assert!(spindle_realizable(2, 2, 3, &root(2, 2)).realizable);
        assert!(spindle_realizable(2, 2, 3, &root(2, 3)).realizable);

        // k = l < n - 1: everything from the first root on.
        assert!(spindle_realizable(2, 2, 4, &exact(-2, 5)).realizable);
        assert!(spindle_realizable(2, 2, 4, &exact(-3, 10)).realizable);
        assert!(!spindle_realizable(2, 2, 4, &exact(-1, 2)).realizable);
        assert!(spindle_realizable(1, 1, 3, &root(1, 1)).realizable);
        assert!(!spindle_realizable(1, 1, 3, &exact(-9, 10)).realizable);

        // Unequal arms: t > -1/max(k, l) strictly.
        assert!(spindle_realizable(1, 2, 4, &exact(-49, 100)).realizable);
        assert!(!spindle_realizable(1, 2, 4, &exact(-1, 2)).realizable);
        assert!(!spindle_realizable(1, 2, 3, &exact(-1, 2)).realizable);
        assert!(spindle_realizable(2, 1, 4, &exact(-49, 100)).realizable);

        // Dimension and domain.
        assert!(!spindle_realizable(2, 2, 2, &exact(-2, 5)).realizable);
        assert!(!spindle_realizable(1, 3, 3, &exact(-1, 5)).realizable);
        assert!(!spindle_realizable(1, 1, 3, &exact(-3, 2)).realizable);

        let v = spindle_realizable(2, 2, 3, &exact(-2, 5));
        assert_eq!(v.roots.len(), 3);
        assert!(v.e_value.is_some());
        assert_eq!(v.tau.len(), 2);
    }

    #[test]
    fn spindle_builds_at_named_points() {
        // Pentagon: 5 points on the circle at the first arm-1 root.
        let t11 = root(1, 1).to_f64();
        let cfg = build_spindle(1, 1, 2, t11).unwrap();
        assert_eq!(cfg.len(), 5);
        assert_eq!(cfg.dim, 2);
        let g = cfg.gram();
        let c5 = make_pattern(PatternName::Spindle(1, 1)).unwrap();
        let dg = distance_graph(&g, t11, 1e-8).unwrap();
        assert!(dg.is_isomorphic(&c5));
        // And at the positive root too.
        let t13 = root(1, 3).to_f64();
        assert_eq!(build_spindle(1, 1, 2, t13).unwrap().len(), 5);

        // The 7-point spindle in dimension 3 at the first arm-2 root.
        let t21 = root(2, 1).to_f64();
        let cfg = build_spindle(2, 2, 3, t21).unwrap();
        assert_eq!(cfg.len(), 7);
        assert_eq!(cfg.dim, 3);

        // A 6-point unequal-arm spindle.
        let cfg = build_spindle(1, 2, 3, -0.4).unwrap();
        assert_eq!(cfg.len(), 6);
        assert_eq!(cfg.dim, 3);

        // Degenerate middle root of the arm-1 polynomial: points coincide.
        assert!(build_spindle(1, 1, 2, -0.5).is_err());
    }

    #[test]
    fn spindle_build_agrees_with_verdict() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut built = 0usize;
        let mut rejected = 0usize;
        for n in 2..=6usize {
            for k in 1..n {
                for l in k..n {
                    for _ in 0..200 {
                        let t: f64 = rng.gen_range(-1.0..0.999);
                        let verdict = spindle_realizable(k, l, n, &rat_from_f64(t));
                        match build_spindle(k, l, n, t) {
                            Ok(cfg) => {
                                assert!(
                                    verdict.realizable,
                                    "built an unrealizable spindle k={k} l={l} n={n} t={t}"
                                );
                                assert_eq!(cfg.len(), k + l + 3);
                                built += 1;
                            }
                            Err(e) => {
                                assert!(
                                    !verdict.realizable,
                                    "failed to build a realizable spindle k={k} l={l} n={n} t={t}: {e}"
                                );
                                rejected += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(built > 500, "built only {built}");
        assert!(rejected > 500, "rejected only {rejected}");
    }

    #[test]
    fn extended_rhombus_apexes_coincide() {
        for n in 3..=6usize {
            let gap = extended_rhombus_apex_gap(n).unwrap();
            assert!(gap < 1e-8, "n={n}: gap {gap}");
        }
    }

    #[test]
    fn double_simplex_distance_graph_is_two_cliques() {
        for n in 2..=6usize {
            let cfg = build_double_simplex(n).unwrap();
            assert_eq!(cfg.len(), 2 * (n + 1));
            let t = -1.0 / n as f64;
            let g = cfg.gram();
            let dg = distance_graph(&g, t, 1e-8).unwrap();
            let kk = SimpleGraph::complete(n + 1).unwrap();
            let two = kk.disjoint_union(&kk).unwrap();
            assert_eq!(dg, two, "n={n}");
            assert!(is_almost_equiangular(&g, t, 1e-8));
        }
    }

    #[test]
    fn larman_rogers_is_almost_equiangular() {
        let cfg = larman_rogers();
        assert_eq!(cfg.len(), 16);
        assert_eq!(cfg.dim, 5);
        let g = cfg.gram();
        assert!(is_almost_equiangular(&g, 0.2, 1e-10));
        // Pairs meet at 1/5 or -3/5 only.
        for i in 0..16 {
            for j in i + 1..16 {
                let ip = g.get(i, j);
                assert!(
                    (ip - 0.2).abs() < 1e-12 || (ip + 0.6).abs() < 1e-12,
                    "ip {ip}"
                );
            }
        }
        // Not plain equiangular: both values occur.
        let dg = distance_graph(&g, 0.2, 1e-8).unwrap();
        assert!(dg.edge_count() < 16 * 15 / 2);
        assert!(dg.edge_count() > 0);
    }

    #[test]
    fn almost_equiangular_offender_reports_triples() {
        let cfg = build_double_simplex(3).unwrap();
        let g = cfg.gram();
        let t = -1.0 / 3.0;
        assert!(almost_equiangular_offender(&g, t, 1e-8).is_none());
        // Perturb one entry so a triple loses all its pairs.
        let mut bad = g.clone();
        bad.m[(0, 1)] = 0.9;
        bad.m[(1, 0)] = 0.9;
        bad.m[(0, 2)] = 0.9;
        bad.m[(2, 0)] = 0.9;
        bad.m[(1, 2)] = 0.9;
        bad.m[(2, 1)] = 0.9;
        assert_eq!(almost_equiangular_offender(&bad, t, 1e-8), Some([0, 1, 2]));
    }

    #[test]
    fn heuristic_realize_frozen_cases() {
        // The 7-point spindle at the second arm-2 root, in dimension 3.
        let t22 = root(2, 2).to_f64();
        let ms2 = make_pattern(PatternName::MoserSpindle(2)).unwrap();
        match heuristic_realize(&ms2, 3, t22, 11, 4000) {
            RealizeOutcome::Realized(cfg) => {
                assert_eq!(cfg.len(), 7);
                let g = cfg.gram();
                for (i, j) in ms2.edges() {
                    assert!((g.get(i, j) - t22).abs() <= 1e-8);
                }
            }
            RealizeOutcome::Inconclusive { best_residual } => {
                panic!("expected a realization, best residual {best_residual}")
            }
        }
        // K5 does not fit in dimension 3 at t = -1/4.
        let k5 = SimpleGraph::complete(5).unwrap();
        match heuristic_realize(&k5, 3, -0.25, 5, 1500) {
            RealizeOutcome::Realized(_) => panic!("K5 must not realize in dimension 3"),
            RealizeOutcome::Inconclusive { best_residual } => {
                assert!(best_residual > 1e-6, "residual {best_residual}")
            }
        }
        // Two disjoint edges on the circle.
        let two_k2 = SimpleGraph::with_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            heuristic_realize(&two_k2, 2, -0.3, 3, 1500),
            RealizeOutcome::Realized(_)
        ));
    }

    #[test]
    fn unit_config_validation_and_serialization() {
        let cfg = build_simplex(2, 3, -0.4).unwrap();
        let json = serde_json::to_string(&cfg).unwrap();
        let back: UnitConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back.points, cfg.points);
        assert_eq!(back.labels, cfg.labels);

        // Norm violation.
        assert!(UnitConfig::new(2, vec![vec![1.0, 0.5]], vec!["a".into()]).is_err());
        // Coincident points.
        assert!(UnitConfig::new(
            2,
            vec![vec![1.0, 0.0], vec![1.0, 0.0]],
            vec!["a".into(), "b".into()]
        )
        .is_err());
        // Wrong dimension.
        assert!(UnitConfig::new(3, vec![vec![1.0, 0.0]], vec!["a".into()]).is_err());

        let g = cfg.gram();
        let csv = g.to_csv();
        let back = GramMatrix::from_csv(&csv).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((back.get(i, j) - g.get(i, j)).abs() < 1e-15);
            }
        }
        assert!(GramMatrix::from_csv("1.0,0.0\n0.5").is_err());
    }

    #[test]
    fn embed_gram_rejects_rank_overflow_and_indefinite() {
        let id3 = DMatrix::identity(3, 3);
        assert!(embed_gram(&id3, 2, 1e-9).is_err());
        assert!(embed_gram(&id3, 3, 1e-9).is_ok());
        let mut neg = DMatrix::identity(2, 2);
        neg[(0, 1)] = 2.0;
        neg[(1, 0)] = 2.0;
        assert!(embed_gram(&neg, 2, 1e-9).is_err());
    }

    #[test]
    fn gram_check_invariants() {
        let cfg = larman_rogers();
        cfg.gram().check(5, 1e-8).unwrap();
        let bad = GramMatrix {
            m: DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]),
        };
        assert!(bad.check(2, 1e-8).is_err());
        let scaled = GramMatrix {
            m: DMatrix::from_row_slice(1, 1, &[2.0]),
        };
        assert!(scaled.check(1, 1e-8).is_err());
    }
}
