//! The closed-form three-point upper bound `f(n, t)` for t-almost-
//! equiangular sets on `S^{n-1}`, the asymptotic (dimension-free) version,
//! and the spectral cap `2(n+1)`, combined into one report.
//!
//! All values are computed in exact rational arithmetic; the floating-point
//! fields of [`BoundReport`] are rounded from the exact values, never the
//! other way around. The bound function is
//!
//! `f(n, t) = p(n, t)^2 * n (1-t)^2 / (2 (n t^2 + 1))` with
//! `p(n, t) = (8n^2 t^4 (2n-1) - 9n^2 t^3 (n-1) + (2n t^2 - 3t + 4)(7n+1))
//!            / (2 (1-t) (1 + 7n - 2n^2 t^3 (2n-1)))`,
//!
//! valid for `n >= 3` and `t` in `[-1, 0]`, where it is sharp at `t = 0`
//! (value `2n`) and at `t = -1/n` (value `2(n+1)`).

use crate::algebraic::AlgebraicNumber;
use crate::poly::UniPoly;
use crate::ratio::{dist_to_nearest_int, floor_int, rat, rat_i, serde_bigint, to_f64, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Domain violation for [`analytic_bound`].
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("the analytic bound requires n >= 3 (got n = {0})")]
    DimensionTooSmall(u32),
    #[error("the analytic bound requires t in [-1, 0] (got t = {0})")]
    InnerProductOutOfRange(String),
}

/// Exact value of the inner multiplier `p(n, t)`.
///
/// Defined for `n >= 2` and `t` in `[-1, 0]` (the denominator is positive
/// there). The theorem-level domain check lives in [`analytic_bound`].
pub fn p_exact(n: u32, t: &Rat) -> Rat {
    let n = rat_i(n as i64);
    let one = Rat::one();
    let t2 = t * t;
    let t3 = &t2 * t;
    let t4 = &t2 * &t2;
    let num = rat_i(8) * &n * &n * &t4 * (rat_i(2) * &n - &one)
        - rat_i(9) * &n * &n * &t3 * (&n - &one)
        + (rat_i(2) * &n * &t2 - rat_i(3) * t + rat_i(4)) * (rat_i(7) * &n + &one);
    let den = rat_i(2)
        * (&one - t)
        * (&one + rat_i(7) * &n - rat_i(2) * &n * &n * &t3 * (rat_i(2) * &n - &one));
    num / den
}

/// Exact value of the three-point bound `f(n, t)`.
pub fn f_exact(n: u32, t: &Rat) -> Rat {
    let p = p_exact(n, t);
    let nn = rat_i(n as i64);
    let one = Rat::one();
    let omt = &one - t;
    &p * &p * &nn * &omt * &omt / (rat_i(2) * (&nn * t * t + &one))
}

/// `f(n, t)` as a single exact rational function `num(t) / den(t)`.
///
/// Used to take exact floors at algebraic values of `t`.
pub fn f_num_den(n: u32) -> (UniPoly, UniPoly) {
    let n = n as i64;
    // numerator and denominator of p
    let p_num = UniPoly::new(vec![
        rat_i(4 * (7 * n + 1)),
        rat_i(-3 * (7 * n + 1)),
        rat_i(2 * n * (7 * n + 1)),
        rat_i(-9 * n * n * (n - 1)),
        rat_i(8 * n * n * (2 * n - 1)),
    ]);
    let p_den = UniPoly::from_ints(&[1, -1]) // (1 - t)
        .mul(&UniPoly::new(vec![
            rat_i(7 * n + 1),
            Rat::zero(),
            Rat::zero(),
            rat_i(-2 * n * n * (2 * n - 1)),
        ]))
        .scale(&rat_i(2));
    // f = p^2 * n (1-t)^2 / (2 (n t^2 + 1))
    let omt2 = UniPoly::from_ints(&[1, -1]).mul(&UniPoly::from_ints(&[1, -1]));
    let num = p_num.mul(&p_num).mul(&omt2).scale(&rat_i(n));
    let den = p_den
        .mul(&p_den)
        .mul(&UniPoly::new(vec![Rat::one(), Rat::zero(), rat_i(n)]))
        .scale(&rat_i(2));
    (num, den)
}

/// Exact value of the dimension-free bound `(16t - 9)^2 / (128 t^2)`
/// (the limit of `f(n, t)` as `n` grows), or `None` at `t = 0` where it
/// diverges.
pub fn asymptotic_exact(t: &Rat) -> Option<Rat> {
    if t.is_zero() {
        return None;
    }
    let q = rat_i(16) * t - rat_i(9);
    Some(&q * &q / (rat_i(128) * t * t))
}

/// Report for a single `(n, t)` bound query. All integer fields are exact.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u32,
    /// The inner product as an exact rational string `p/q`.
    #[serde(with = "crate::ratio::serde_rat")]
    pub t: Rat,
    /// `p(n, t)` rounded to double precision.
    pub p_value: f64,
    /// `f(n, t)` rounded to double precision.
    pub f_value: f64,
    /// Exact floor of `f(n, t)`.
    #[serde(with = "serde_bigint")]
    pub floor_f: BigInt,
    /// True when `f` is within `1e-9` of an integer; the exact floor is
    /// still authoritative, but a recomputation in floating point could
    /// land on either side, so both candidates are listed.
    pub floor_is_near_integer: bool,
    /// `[floor_f]`, or the two nearest candidates when the near-integer
    /// flag is set.
    pub floor_candidates: Vec<i64>,
    /// Exact floor of the dimension-free bound, `None` at `t = 0`.
    pub asymptotic_floor: Option<i64>,
    /// The spectral bound `2(n+1)`, valid on all of `[-1, 0]`.
    pub spectral_cap: u32,
    /// Whether the spectral cap can be attained (only at `t = -1/n`).
    pub spectral_equality_possible: bool,
    /// `min(floor_f, effective spectral cap)`: the effective cap is
    /// `2(n+1)` at `t = -1/n` and `2n+1` elsewhere.
    #[serde(with = "serde_bigint")]
    pub best_upper: BigInt,
}

/// Near-integer guard threshold for floor reporting.
fn near_integer_eps() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(1_000_000_000u64))
}

fn floor_with_guard(f: &Rat) -> (BigInt, bool, Vec<i64>) {
    let fl = floor_int(f);
    let near = dist_to_nearest_int(f) < near_integer_eps();
    let candidates = if near {
        let m = floor_int(&(f + rat(1, 2))); // nearest integer
        vec![as_i64(&(&m - 1)), as_i64(&m)]
    } else {
        vec![as_i64(&fl)]
    };
    (fl, near, candidates)
}

fn as_i64(x: &BigInt) -> i64 {
    use num_traits::ToPrimitive;
    x.to_i64().expect("bound magnitude exceeds i64")
}

/// The spectral cap that is actually usable as an integer bound at `t`:
/// `2(n+1)` exactly at `t = -1/n` (where equality is attainable) and
/// `2n+1` elsewhere in `[-1, 0]`.
pub fn effective_spectral_cap(n: u32, t: &Rat) -> u32 {
    if *t == rat(-1, n as i64) {
        2 * n + 2
    } else {
        2 * n + 1
    }
}

/// Full bound report at an exact rational `t`. Requires `n >= 3` and
/// `t` in `[-1, 0]`.
pub fn analytic_bound(n: u32, t: &Rat) -> Result<BoundReport, BoundError> {
    if n < 3 {
        return Err(BoundError::DimensionTooSmall(n));
    }
    if t < &rat_i(-1) || t > &rat_i(0) {
        return Err(BoundError::InnerProductOutOfRange(t.to_string()));
    }
    let p = p_exact(n, t);
    let f = f_exact(n, t);
    let (floor_f, near, candidates) = floor_with_guard(&f);
    let asymptotic_floor = asymptotic_exact(t).map(|a| as_i64(&floor_int(&a)));
    let cap = effective_spectral_cap(n, t);
    let best_upper = floor_f.clone().min(BigInt::from(cap));
    Ok(BoundReport {
        n,
        t: t.clone(),
        p_value: to_f64(&p),
        f_value: to_f64(&f),
        floor_f,
        floor_is_near_integer: near,
        floor_candidates: candidates,
        asymptotic_floor,
        spectral_cap: 2 * n + 2,
        spectral_equality_possible: *t == rat(-1, n as i64),
        best_upper,
    })
}

/// Exact floor of `f(n, t)` at an algebraic `t` (used by the classifier at
/// the spindle critical values, where `f` is irrational).
pub fn floor_f_at_algebraic(n: u32, t: &AlgebraicNumber) -> Option<BigInt> {
    let (num, den) = f_num_den(n);
    t.floor_ratfun(&num, &den)
}

/// Starting order for the classification descent: the best integer upper
/// bound available at `t`. For `n = 2` the analytic bound does not apply
/// and the spectral cap alone is used.
pub fn best_upper_for_classify(n: u32, t: &Rat) -> u32 {
    let cap = effective_spectral_cap(n, t);
    if n < 3 {
        return cap;
    }
    let f = f_exact(n, t);
    let fl = floor_int(&f);
    as_i64(&fl).min(cap as i64) as u32
}

/// Same as [`best_upper_for_classify`] at an exact algebraic `t`.
pub fn best_upper_for_classify_algebraic(n: u32, t: &AlgebraicNumber) -> u32 {
    // No algebraic number equals -1/n, so the effective cap is 2n+1.
    let cap = 2 * n + 1;
    if n < 3 {
        return cap;
    }
    match floor_f_at_algebraic(n, t) {
        Some(fl) => as_i64(&fl).min(cap as i64) as u32,
        None => cap,
    }
}

/// Evenly spaced rational sweep over `[lo, hi]` inclusive.
pub fn bound_sweep(n: u32, lo: &Rat, hi: &Rat, steps: u32) -> Result<Vec<BoundReport>, BoundError> {
    assert!(steps >= 1, "sweep needs at least one step");
    let mut out = Vec::with_capacity(steps as usize + 1);
    let span = hi - lo;
    for i in 0..=steps {
        let t = lo + &span * rat_i(i as i64) / rat_i(steps as i64);
        out.push(analytic_bound(n, &t)?);
    }
    Ok(out)
}
