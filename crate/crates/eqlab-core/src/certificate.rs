//! The exact rational certificate behind the three-point bound: four small
//! positive semidefinite matrices whose induced three-point operator
//! `B_3A` satisfies, identically in the free inner products,
//!
//! * `B_3A({x}) = -1`,
//! * `B_3A({x, y}) = 0` for every pair inner product `s`, and
//! * `B_3A({x, y, z}) = 3 (t-u)(t-v)(t-s) / (t-1)^3`, which vanishes
//!   whenever one of the three inner products equals `t`.
//!
//! Together with positive semidefiniteness of the blocks this proves the
//! bound `f(n, t)` stored in the corner of the first block. Everything in
//! this module is exact rational arithmetic; [`verify_certificate`] decides
//! the whole certificate with no floating point. A sampled floating-point
//! export ([`export_sampled_sdp`]) materializes a finite relaxation in SDPA
//! format for cross-checking with external solvers.

use crate::bounds::{f_exact, p_exact};
use crate::exactmat::{PsdOutcome, SymRatMatrix};
use crate::jacobi::{q_eval, q_poly};
use crate::poly::{Subst, TriPoly, UniPoly};
use crate::ratio::{rat, rat_i, to_f64, Rat};
use crate::sdpa::{SdpaProblem, SparseEntry};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Domain violation for certificate construction.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("the certificate requires n >= 3 (got n = {0})")]
    DimensionTooSmall(u32),
    #[error("the certificate requires t in [-1, 0] (got t = {0})")]
    InnerProductOutOfRange(String),
    #[error("b3a_eval: set size {size} expects {expected} inner products (got {got})")]
    ArityMismatch {
        size: usize,
        expected: usize,
        got: usize,
    },
    #[error("b3a_eval: set size must be 0..=3 (got {0})")]
    SetSizeOutOfRange(usize),
}

/// The four certificate blocks at a fixed `(n, t)`.
///
/// Index conventions: `a0_empty` is indexed by (empty word, constant);
/// `a0_edge` by (empty word, degree 0, degree 1, degree 2); `a1_edge` by
/// (degree 0, degree 1); `a2_edge` by (degree 0).
#[derive(Debug, Clone)]
pub struct CertificateMatrices {
    pub n: u32,
    pub t: Rat,
    pub a0_empty: SymRatMatrix,
    pub a0_edge: SymRatMatrix,
    pub a1_edge: SymRatMatrix,
    pub a2_edge: SymRatMatrix,
}

/// Builds the certificate blocks. Requires `n >= 3`, `t` in `[-1, 0]`.
pub fn certificate_matrices(n: u32, t: &Rat) -> Result<CertificateMatrices, CertificateError> {
    if n < 3 {
        return Err(CertificateError::DimensionTooSmall(n));
    }
    if t < &rat_i(-1) || t > &rat_i(0) {
        return Err(CertificateError::InnerProductOutOfRange(t.to_string()));
    }
    let nn = rat_i(n as i64);
    let one = Rat::one();
    let s = &one - t; // 1 - t > 0
    let s2 = &s * &s;
    let s3 = &s2 * &s;
    let p = p_exact(n, t);
    let f = f_exact(n, t);

    let a0_empty = SymRatMatrix::from_fn(2, |i, j| match (i, j) {
        (0, 0) => f.clone(),
        (0, 1) => -&p / rat_i(2),
        (1, 1) => (&nn * t * t + &one) / (rat_i(2) * &nn * &s2),
        _ => unreachable!(),
    });

    let t2 = t * t;
    let t3 = &t2 * t;
    let nm1 = &nn - &one;
    let a0_edge = SymRatMatrix::from_fn(4, |i, j| match (i, j) {
        (0, 0) => p.clone(),
        (0, 1) => -&one / (rat_i(4) * &nn * &s2) - &t2 / &s2,
        (0, 2) => rat_i(3) * t / (rat_i(2) * &s2),
        (0, 3) => rat(-3, 4) / &s2,
        (1, 1) => &one / (rat_i(4) * &nn * &nm1 * &s3) - &t3 / (rat_i(2) * &s3),
        (1, 2) => rat_i(3) * &t2 / (rat_i(4) * &s3),
        (1, 3) => -(&nn + &one) / (rat_i(8) * &nn * &nm1 * &s3),
        (2, 2) => rat_i(-3) * t / (rat_i(2) * &s3),
        (2, 3) => Rat::zero(),
        (3, 3) => (rat_i(2) * &nn - &one) / (rat_i(4) * &nm1 * &s3),
        _ => unreachable!(),
    });

    let a1_edge = SymRatMatrix::from_fn(2, |i, j| match (i, j) {
        (1, 1) => (&nn + &one) / (rat_i(2) * &nn * &s3),
        _ => Rat::zero(),
    });

    let a2_edge = SymRatMatrix::from_fn(1, |_, _| {
        (&nn - rat_i(2)) / (rat_i(4) * &nn * &nm1 * &s3)
    });

    Ok(CertificateMatrices {
        n,
        t: t.clone(),
        a0_empty,
        a0_edge,
        a1_edge,
        a2_edge,
    })
}

impl CertificateMatrices {
    /// The two-point kernel `K(u, v, s)` as an exact trivariate polynomial:
    /// the polynomial part from `a0_edge`, plus `a1_edge` against the
    /// level-1 zonal kernel and `a2_edge` against the level-2 one.
    pub fn kernel(&self) -> TriPoly {
        let mut acc = TriPoly::zero();
        for i in 0..3usize {
            for j in 0..3usize {
                let c = self.a0_edge.get(1 + i, 1 + j).clone();
                if !c.is_zero() {
                    acc = acc.add(&TriPoly::monomial(c, i, j, 0));
                }
            }
        }
        let q1 = q_poly(1, self.n);
        let q2 = q_poly(2, self.n);
        for i in 0..2usize {
            for j in 0..2usize {
                let c = self.a1_edge.get(i, j).clone();
                if !c.is_zero() {
                    acc = acc.add(&TriPoly::monomial(c, i, j, 0).mul(&q1));
                }
            }
        }
        let c2 = self.a2_edge.get(0, 0).clone();
        if !c2.is_zero() {
            acc = acc.add(&q2.scale(&c2));
        }
        acc
    }

    /// The kernel with one argument at the base point: a polynomial in the
    /// other lifted inner product, with coefficients from the first row of
    /// `a0_edge`.
    pub fn kernel_base_row(&self) -> UniPoly {
        UniPoly::new(
            (0..3)
                .map(|j| self.a0_edge.get(0, 1 + j).clone())
                .collect(),
        )
    }

    /// Exact value of `B_3A` on singletons (must be `-1`).
    pub fn b3a_singleton(&self) -> Rat {
        let k = self.kernel();
        let base = self.kernel_base_row();
        let one = rat_i(1);
        rat_i(2) * self.a0_empty.get(0, 1)
            + self.a0_empty.get(1, 1)
            + self.a0_edge.get(0, 0)
            + rat_i(2) * base.eval(&one)
            + k.eval(&one, &one, &one)
    }

    /// Exact `B_3A` on pairs as a polynomial in the pair inner product
    /// (must be identically zero).
    pub fn b3a_pair_poly(&self) -> UniPoly {
        let k = self.kernel();
        let const_term = rat_i(2) * self.a0_empty.get(1, 1);
        let base4 = self.kernel_base_row().scale(&rat_i(4));
        let one = Subst::Const(rat_i(1));
        let var = Subst::Var;
        let sum_subs = k
            .substitute(&var, &var, &one)
            .add(&k.substitute(&var, &one, &var))
            .add(&k.substitute(&one, &var, &var))
            .scale(&rat_i(2));
        UniPoly::constant(const_term).add(&base4).add(&sum_subs)
    }

    /// Exact `B_3A` on triples as a trivariate polynomial in
    /// `(u, v, s) = (x.z, y.z, x.y)`.
    pub fn b3a_triple_poly(&self) -> TriPoly {
        let k = self.kernel();
        k.add(&k.permute([2, 1, 0]))
            .add(&k.permute([2, 0, 1]))
            .scale(&rat_i(2))
    }

    /// Exact value of `B_3A` on a point set of the given size, from the
    /// pairwise inner products of the involved points.
    ///
    /// Arity: size 0 and 1 take no inner products (a single point only ever
    /// pairs with itself at 1); size 2 takes `[x.y]`; size 3 takes
    /// `[u, v, s] = [x.z, y.z, x.y]`. Values: size 0 gives the bound value
    /// `f(n, t)`; size 1 gives -1; size 2 gives 0; size 3 gives
    /// `3 (t-u)(t-v)(t-s) / (t-1)^3`.
    pub fn b3a_eval(&self, set_size: usize, inner_products: &[Rat]) -> Result<Rat, CertificateError> {
        let expected = match set_size {
            0 | 1 => 0,
            2 => 1,
            3 => 3,
            _ => return Err(CertificateError::SetSizeOutOfRange(set_size)),
        };
        if inner_products.len() != expected {
            return Err(CertificateError::ArityMismatch {
                size: set_size,
                expected,
                got: inner_products.len(),
            });
        }
        Ok(match set_size {
            0 => self.a0_empty.get(0, 0).clone(),
            1 => self.b3a_singleton(),
            2 => self.b3a_pair_poly().eval(&inner_products[0]),
            _ => self.b3a_triple_poly().eval(
                &inner_products[0],
                &inner_products[1],
                &inner_products[2],
            ),
        })
    }

    /// The target for the triple identity: `3 (t-u)(t-v)(t-s) / (t-1)^3`.
    pub fn triple_target(&self) -> TriPoly {
        let t = TriPoly::constant(self.t.clone());
        let factor_u = t.sub(&TriPoly::u());
        let factor_v = t.sub(&TriPoly::v());
        let factor_s = t.sub(&TriPoly::s());
        let tm1 = &self.t - rat_i(1);
        let denom = &tm1 * &tm1 * &tm1;
        factor_u
            .mul(&factor_v)
            .mul(&factor_s)
            .scale(&(rat_i(3) / denom))
    }
}

/// Result of the exact certificate verification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateReport {
    pub n: u32,
    #[serde(with = "crate::ratio::serde_rat")]
    pub t: Rat,
    /// Exact PSD verdicts and ranks for the four blocks, in order
    /// (a0_empty, a0_edge, a1_edge, a2_edge).
    pub psd_ok: [bool; 4],
    pub psd_ranks: [usize; 4],
    /// The three polynomial identities, verified exactly.
    pub singleton_is_minus_one: bool,
    pub pair_identity_zero: bool,
    pub triple_identity_matches: bool,
    /// The certified bound (corner of the first block) as `p/q`.
    #[serde(with = "crate::ratio::serde_rat")]
    pub objective: Rat,
    /// True iff every check above passed.
    pub verified: bool,
}

/// Runs the full exact verification at `(n, t)`.
pub fn verify_certificate(n: u32, t: &Rat) -> Result<CertificateReport, CertificateError> {
    let c = certificate_matrices(n, t)?;
    let blocks = [&c.a0_empty, &c.a0_edge, &c.a1_edge, &c.a2_edge];
    let mut psd_ok = [false; 4];
    let mut psd_ranks = [0usize; 4];
    for (i, b) in blocks.iter().enumerate() {
        match b.psd_check() {
            PsdOutcome::PositiveSemidefinite { rank } => {
                psd_ok[i] = true;
                psd_ranks[i] = rank;
            }
            PsdOutcome::Indefinite { .. } => {
                psd_ok[i] = false;
            }
        }
    }
    let singleton = c.b3a_singleton() == rat_i(-1);
    let pair = c.b3a_pair_poly().is_zero();
    let triple = c.b3a_triple_poly().sub(&c.triple_target()).is_zero();
    let objective = c.a0_empty.get(0, 0).clone();
    let verified = psd_ok.iter().all(|&b| b) && singleton && pair && triple;
    Ok(CertificateReport {
        n,
        t: t.clone(),
        psd_ok,
        psd_ranks,
        singleton_is_minus_one: singleton,
        pair_identity_zero: pair,
        triple_identity_matches: triple,
        objective,
        verified,
    })
}

/// A `B_3A` evaluation point for the sampled export.
#[derive(Debug, Clone, Copy)]
pub enum SamplePoint {
    Singleton,
    Pair { s: f64 },
    Triple { u: f64, v: f64, s: f64 },
}

/// Floating-point `B_3A` evaluation as a linear function of the 17 distinct
/// block entries; returns the coefficient vector and applies it.
///
/// Variable order: upper triangle of `a0_empty` (3), `a0_edge` (10),
/// `a1_edge` (3), `a2_edge` (1), each row-major.
pub fn b3a_coefficients(n: u32, point: SamplePoint) -> Vec<f64> {
    let mut coeffs = Vec::with_capacity(17);
    // Entry (block, i, j) contributes linearly; evaluate the kernel terms
    // per entry. The multiplicity of an off-diagonal entry is 2 (it appears
    // at (i,j) and (j,i)).
    let var_list = variable_entries();
    for &(blk, i, j) in &var_list {
        let mult = if i == j { 1.0 } else { 2.0 };
        let c = match point {
            SamplePoint::Singleton => singleton_coeff(n, blk, i, j),
            SamplePoint::Pair { s } => pair_coeff(n, blk, i, j, s),
            SamplePoint::Triple { u, v, s } => triple_coeff(n, blk, i, j, u, v, s),
        };
        coeffs.push(mult * c);
    }
    coeffs
}

/// The 17 variables as (block, i, j) with `block` in 0..4, upper triangle.
pub fn variable_entries() -> Vec<(usize, usize, usize)> {
    let sizes = [2usize, 4, 2, 1];
    let mut out = Vec::new();
    for (b, &sz) in sizes.iter().enumerate() {
        for i in 0..sz {
            for j in i..sz {
                out.push((b, i, j));
            }
        }
    }
    out
}

/// Kernel contribution of a single `a0_edge`/`a1_edge`/`a2_edge` entry at
/// `(u, v, s)`; entries of `a0_empty` never reach the kernel.
fn kernel_entry_value(n: u32, blk: usize, i: usize, j: usize, u: f64, v: f64, s: f64) -> f64 {
    match blk {
        1 => {
            // a0_edge rows: 0 = empty word, 1.. = monomial degrees
            if i == 0 || j == 0 {
                0.0 // base-row entries enter through the base terms instead
            } else {
                u.powi(i as i32 - 1) * v.powi(j as i32 - 1)
            }
        }
        2 => u.powi(i as i32) * v.powi(j as i32) * q_eval(1, n, u, v, s),
        3 => q_eval(2, n, u, v, s),
        _ => 0.0,
    }
}

/// Symmetrized kernel contribution (handles `i != j` by averaging both
/// orientations so the caller's multiplicity-2 weighting is exact).
fn kernel_entry_sym(n: u32, blk: usize, i: usize, j: usize, u: f64, v: f64, s: f64) -> f64 {
    if i == j {
        kernel_entry_value(n, blk, i, j, u, v, s)
    } else {
        0.5 * (kernel_entry_value(n, blk, i, j, u, v, s)
            + kernel_entry_value(n, blk, j, i, u, v, s))
    }
}

/// Base-row contribution of `a0_edge` entry (0, j): the polynomial in one
/// lifted inner product evaluated at `y`.
fn base_entry(blk: usize, i: usize, j: usize, y: f64) -> f64 {
    if blk != 1 {
        return 0.0;
    }
    match (i, j) {
        (0, jj) if jj >= 1 => y.powi(jj as i32 - 1),
        _ => 0.0,
    }
}

fn singleton_coeff(n: u32, blk: usize, i: usize, j: usize) -> f64 {
    let mut total = 0.0;
    if blk == 0 {
        // 2 A0[(empty),(const)] + A0[(const),(const)]
        if (i, j) == (0, 1) {
            total += 1.0; // multiplicity 2 applied by caller
        }
        if (i, j) == (1, 1) {
            total += 1.0;
        }
    }
    if blk == 1 && (i, j) == (0, 0) {
        total += 1.0;
    }
    // 2 * K(base, x) at lifted value 1: off-diagonal (0,j) entries carry
    // caller multiplicity 2 already, so add the base value once.
    total += if i == j && blk == 1 && i == 0 {
        0.0
    } else {
        base_entry(blk, i, j, 1.0) + base_entry(blk, j, i, 1.0)
    };
    // K(x, x) at (1, 1, 1)
    total += kernel_entry_sym(n, blk, i, j, 1.0, 1.0, 1.0);
    total
}

fn pair_coeff(n: u32, blk: usize, i: usize, j: usize, s: f64) -> f64 {
    let mut total = 0.0;
    if blk == 0 && (i, j) == (1, 1) {
        total += 2.0;
    }
    // 4 * K(base, .)(s): base entries appear (0,j) with caller multiplicity
    // 2, so weight 2 here to reach 4 total.
    total += 2.0 * (base_entry(blk, i, j, s) + base_entry(blk, j, i, s));
    // 2 * [K(s,s,1) + K(s,1,s) + K(1,s,s)]
    total += 2.0
        * (kernel_entry_sym(n, blk, i, j, s, s, 1.0)
            + kernel_entry_sym(n, blk, i, j, s, 1.0, s)
            + kernel_entry_sym(n, blk, i, j, 1.0, s, s));
    total
}

fn triple_coeff(n: u32, blk: usize, i: usize, j: usize, u: f64, v: f64, s: f64) -> f64 {
    2.0 * (kernel_entry_sym(n, blk, i, j, u, v, s)
        + kernel_entry_sym(n, blk, i, j, s, v, u)
        + kernel_entry_sym(n, blk, i, j, s, u, v))
}

/// The sampled finite relaxation of the three-point program at `(n, t)`.
#[derive(Debug, Clone)]
pub struct SampledSdp {
    pub n: u32,
    pub t: f64,
    pub problem: SdpaProblem,
    pub points: Vec<SamplePoint>,
}

/// Builds the sampled relaxation: minimize the bound corner subject to the
/// four PSD blocks, the singleton constraint `B_3A <= -1`, pair constraints
/// on an even grid of pair inner products, and triple constraints on
/// seeded random admissible triples (one inner product pinned to `t`, the
/// rest rejection-sampled from the positive semidefinite region).
pub fn export_sampled_sdp(
    n: u32,
    t: &Rat,
    pair_grid: usize,
    triples: usize,
    seed: u64,
) -> Result<SampledSdp, CertificateError> {
    if n < 3 {
        return Err(CertificateError::DimensionTooSmall(n));
    }
    if t < &rat_i(-1) || t > &rat_i(0) {
        return Err(CertificateError::InnerProductOutOfRange(t.to_string()));
    }
    let tf = to_f64(t);
    let mut points = vec![SamplePoint::Singleton];
    for g in 0..pair_grid {
        // even grid on [-1, 0.95]
        let s = -1.0 + 1.95 * g as f64 / (pair_grid.max(2) - 1) as f64;
        points.push(SamplePoint::Pair { s });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted = 0usize;
    while accepted < triples {
        // Pin one of (u, v, s) to t, cycling deterministically. At t = -1
        // the pinned coordinate forces antipodal points, so the admissible
        // region collapses to the curve where the other two coordinates are
        // opposite; sample it directly instead of rejecting.
        let (u, v, s) = if tf <= -1.0 + 1e-12 {
            let a: f64 = rng.gen_range(-1.0..1.0);
            match accepted % 3 {
                0 => (a, -a, tf),
                1 => (a, tf, -a),
                _ => (tf, a, -a),
            }
        } else {
            let a: f64 = rng.gen_range(-1.0..1.0);
            let b: f64 = rng.gen_range(-1.0..1.0);
            let (u, v, s) = match accepted % 3 {
                0 => (a, b, tf),
                1 => (a, tf, b),
                _ => (tf, a, b),
            };
            // Gram of (x, y, z) with (u,v,s) = (x.z, y.z, x.y): the 2x2
            // minors are automatic for coordinates in (-1, 1), so the
            // determinant decides positive semidefiniteness.
            let det = 1.0 + 2.0 * u * v * s - u * u - v * v - s * s;
            if det < 1e-9 {
                continue;
            }
            (u, v, s)
        };
        points.push(SamplePoint::Triple { u, v, s });
        accepted += 1;
    }

    let vars = variable_entries();
    let m = vars.len();
    let block_sizes = [2i64, 4, 2, 1];
    let ineq = points.len();
    let mut blocks: Vec<i64> = block_sizes.to_vec();
    blocks.push(-(ineq as i64));

    // objective: minimize the (0,0) entry of block 0
    let mut c = vec![0.0; m];
    c[0] = 1.0;

    // F_k: the entry pattern in its PSD block plus inequality coefficients.
    let mut mats: Vec<Vec<SparseEntry>> = vec![Vec::new(); m + 1];
    for (k, &(blk, i, j)) in vars.iter().enumerate() {
        mats[k + 1].push(SparseEntry {
            block: blk + 1,
            i: i + 1,
            j: j + 1,
            value: 1.0,
        });
    }
    for (r, pt) in points.iter().enumerate() {
        let coeffs = b3a_coefficients(n, *pt);
        for (k, &cf) in coeffs.iter().enumerate() {
            if cf != 0.0 {
                mats[k + 1].push(SparseEntry {
                    block: 5,
                    i: r + 1,
                    j: r + 1,
                    value: -cf,
                });
            }
        }
        let rhs = match pt {
            SamplePoint::Singleton => -1.0,
            _ => 0.0,
        };
        if rhs != 0.0 {
            mats[0].push(SparseEntry {
                block: 5,
                i: r + 1,
                j: r + 1,
                value: -rhs,
            });
        }
    }

    Ok(SampledSdp {
        n,
        t: tf,
        problem: SdpaProblem {
            objective: c,
            blocks,
            mats,
        },
        points,
    })
}

/// Evaluates all sampled constraints at the exact certificate, returning
/// the worst violation (positive = infeasible by that much).
pub fn certificate_violation_on_samples(cert: &CertificateMatrices, sampled: &SampledSdp) -> f64 {
    let x = certificate_variable_vector(cert);
    let mut worst = f64::NEG_INFINITY;
    for pt in &sampled.points {
        let coeffs = b3a_coefficients(cert.n, *pt);
        let val: f64 = coeffs.iter().zip(&x).map(|(c, v)| c * v).sum();
        let rhs = match pt {
            SamplePoint::Singleton => -1.0,
            _ => 0.0,
        };
        worst = worst.max(val - rhs);
    }
    worst
}

/// The certificate's 17 entries in export order, as `f64`.
pub fn certificate_variable_vector(cert: &CertificateMatrices) -> Vec<f64> {
    let blocks = [
        &cert.a0_empty,
        &cert.a0_edge,
        &cert.a1_edge,
        &cert.a2_edge,
    ];
    variable_entries()
        .iter()
        .map(|&(b, i, j)| to_f64(blocks[b].get(i, j)))
        .collect()
}
