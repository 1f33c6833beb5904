//! Exact real algebraic numbers as (squarefree polynomial, isolating
//! interval) pairs, plus the named critical values `t_{k,i}` used by the
//! classification.
//!
//! Comparisons are exact: intervals are refined until they separate, with a
//! polynomial-GCD fallback that detects genuine equality of roots of
//! different defining polynomials.

use crate::poly::{ms_polynomial, UniPoly};
use crate::ratio::{rat_i, to_f64, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// A real algebraic number: the unique root of `poly` in `(lo, hi]`.
///
/// `poly` is squarefree and monic; the interval is refined in place by the
/// comparison routines, so the struct is cheap to clone and refine lazily.
#[derive(Clone)]
pub struct AlgebraicNumber {
    poly: UniPoly,
    lo: Rat,
    hi: Rat,
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicNumber({:?} in ({}, {}])", self.poly, self.lo, self.hi)
    }
}

impl AlgebraicNumber {
    /// Wraps the unique root of `poly` inside `(lo, hi]`.
    ///
    /// Panics unless the squarefree part of `poly` has exactly one root
    /// there.
    pub fn new(poly: UniPoly, lo: Rat, hi: Rat) -> Self {
        let sf = poly.squarefree_part();
        assert_eq!(
            sf.count_roots_in(&lo, &hi),
            1,
            "interval must isolate exactly one root"
        );
        AlgebraicNumber { poly: sf, lo, hi }
    }

    /// The `i`-th real root (ascending, 0-based) of `poly`.
    pub fn root_of(poly: &UniPoly, index: usize) -> Option<Self> {
        let sf = poly.squarefree_part();
        let intervals = sf.isolate_roots();
        intervals.get(index).map(|(lo, hi)| AlgebraicNumber {
            poly: sf.clone(),
            lo: lo.clone(),
            hi: hi.clone(),
        })
    }

    /// An exact rational, represented as the root of a linear polynomial.
    pub fn from_rat(x: &Rat) -> Self {
        let poly = UniPoly::new(vec![-x.clone(), Rat::one()]);
        AlgebraicNumber {
            poly,
            lo: x - rat_i(1),
            hi: x.clone(),
        }
    }

    /// Defining (squarefree, monic) polynomial.
    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    /// Current isolating interval `(lo, hi]`.
    pub fn interval(&self) -> (Rat, Rat) {
        (self.lo.clone(), self.hi.clone())
    }

    fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// Shrinks the isolating interval below `target` width.
    pub fn refine_below(&mut self, target: &Rat) {
        while &self.width() > target {
            let (lo, hi) = self.poly.refine_interval(&self.lo, &self.hi);
            self.lo = lo;
            self.hi = hi;
        }
    }

    /// Double-precision approximation (refined to ~1e-17 first).
    pub fn to_f64(&self) -> f64 {
        let mut me = self.clone();
        me.refine_below(&Rat::new(BigInt::from(1), BigInt::from(10u64).pow(17)));
        to_f64(&((&me.lo + &me.hi) / rat_i(2)))
    }

    /// Exact comparison against a rational.
    pub fn cmp_rat(&self, x: &Rat) -> Ordering {
        // Root equals x iff poly(x) = 0 and x lies in the isolating interval.
        if self.poly.eval(x).is_zero() && *x > self.lo && *x <= self.hi {
            return Ordering::Equal;
        }
        let mut me = self.clone();
        loop {
            if &me.hi < x {
                return Ordering::Less;
            }
            if &me.lo >= x {
                return Ordering::Greater;
            }
            // x strictly inside (lo, hi) and not a root: refine until it exits.
            let (lo, hi) = me.poly.refine_interval(&me.lo, &me.hi);
            me.lo = lo;
            me.hi = hi;
        }
    }

    /// Exact comparison of two algebraic numbers.
    pub fn cmp_alg(&self, other: &AlgebraicNumber) -> Ordering {
        let mut a = self.clone();
        let mut b = other.clone();
        // Equality is decidable through the GCD of the defining polynomials:
        // a == b forces them to share a root in the overlap of the intervals.
        let common = a.poly.gcd(&b.poly);
        for _ in 0..256 {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            if common.degree().unwrap_or(0) >= 1 {
                let lo = if a.lo > b.lo { a.lo.clone() } else { b.lo.clone() };
                let hi = if a.hi < b.hi { a.hi.clone() } else { b.hi.clone() };
                if lo < hi
                    && common.count_roots_in(&lo, &hi) == 1
                    && a.poly.count_roots_in(&lo, &hi) == 1
                    && b.poly.count_roots_in(&lo, &hi) == 1
                {
                    return Ordering::Equal;
                }
            }
            let (alo, ahi) = a.poly.refine_interval(&a.lo, &a.hi);
            a.lo = alo;
            a.hi = ahi;
            let (blo, bhi) = b.poly.refine_interval(&b.lo, &b.hi);
            b.lo = blo;
            b.hi = bhi;
        }
        unreachable!("algebraic comparison failed to converge");
    }

    /// Exact floor of `num(self) / den(self)` for polynomials `num`, `den`
    /// with `den` nonvanishing at the root.
    ///
    /// Returns `None` after the iteration cap, which can only happen when
    /// the value is itself an integer; callers for which that is possible
    /// should handle the `None`.
    pub fn floor_ratfun(&self, num: &UniPoly, den: &UniPoly) -> Option<BigInt> {
        let mut me = self.clone();
        me.refine_below(&Rat::new(BigInt::from(1), BigInt::from(1u64 << 20)));
        for _ in 0..128 {
            let n_range = poly_range(num, &me.lo, &me.hi);
            let d_range = poly_range(den, &me.lo, &me.hi);
            // Need a sign-definite denominator before dividing intervals.
            if d_range.0.is_positive() || d_range.1.is_negative() {
                let candidates = [
                    &n_range.0 / &d_range.0,
                    &n_range.0 / &d_range.1,
                    &n_range.1 / &d_range.0,
                    &n_range.1 / &d_range.1,
                ];
                let lo = candidates.iter().min().unwrap().floor().to_integer();
                let hi = candidates.iter().max().unwrap().floor().to_integer();
                if lo == hi {
                    return Some(lo);
                }
            }
            let (lo, hi) = me.poly.refine_interval(&me.lo, &me.hi);
            me.lo = lo;
            me.hi = hi;
        }
        None
    }
}

/// Encloses the range of `p` on `[lo, hi]` via the midpoint value plus a
/// derivative-based Lipschitz radius.
fn poly_range(p: &UniPoly, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mid = (lo + hi) / rat_i(2);
    let val = p.eval(&mid);
    let half_width = (hi - lo) / rat_i(2);
    // max |p'| on the interval, bounded by sum |c_i| * m^i with m = max end.
    let m = {
        let a = lo.abs();
        let b = hi.abs();
        if a > b {
            a
        } else {
            b
        }
    };
    let dp = p.derivative();
    let mut bound = Rat::zero();
    let mut mp = Rat::one();
    for c in dp.coeffs() {
        bound += c.abs() * &mp;
        mp *= &m;
    }
    let radius = bound * half_width;
    (&val - &radius, val + radius)
}

/// Handle for the named spindle critical values `t_{k,i}`: the `i`-th real
/// root (ascending, 1-based) of the degree-3 spindle polynomial for arm
/// size `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpindleRootHandle {
    pub k: u32,
    pub i: u32,
}

/// Resolves `t_{k,i}` to an exact algebraic number.
///
/// `i` is 1-based and the roots are in ascending order, so `t_{1,1}` is the
/// pentagon value `-(1 + sqrt 5)/4` and `t_{2,1} < t_{2,2} < t_{2,3}` are
/// the arm-2 window endpoints.
pub fn spindle_root(handle: SpindleRootHandle) -> Option<AlgebraicNumber> {
    if handle.i == 0 {
        return None;
    }
    AlgebraicNumber::root_of(&ms_polynomial(handle.k), (handle.i - 1) as usize)
}

/// Parses a symbolic handle of the form `t_K_I`.
pub fn parse_root_handle(s: &str) -> Option<SpindleRootHandle> {
    let rest = s.strip_prefix("t_")?;
    let (k, i) = rest.split_once('_')?;
    Some(SpindleRootHandle {
        k: k.parse().ok()?,
        i: i.parse().ok()?,
    })
}

/// An exact real scalar: either rational or algebraic.
///
/// Used for the inner-product parameter `t` wherever decisions hinge on
/// exact comparisons against rational and algebraic thresholds (for
/// example `-1/k` and the spindle critical values).
#[derive(Clone, Debug)]
pub enum ExactReal {
    Rational(Rat),
    Algebraic(AlgebraicNumber),
}

impl ExactReal {
    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, x: &Rat) -> Ordering {
        match self {
            ExactReal::Rational(r) => r.cmp(x),
            ExactReal::Algebraic(a) => a.cmp_rat(x),
        }
    }

    /// Exact comparison against an algebraic number.
    pub fn cmp_algebraic(&self, other: &AlgebraicNumber) -> Ordering {
        match self {
            ExactReal::Rational(r) => other.cmp_rat(r).reverse(),
            ExactReal::Algebraic(a) => a.cmp_alg(other),
        }
    }

    /// Exact comparison of two scalars.
    pub fn cmp_exact(&self, other: &ExactReal) -> Ordering {
        match other {
            ExactReal::Rational(r) => self.cmp_rational(r),
            ExactReal::Algebraic(a) => self.cmp_algebraic(a),
        }
    }

    /// The underlying rational, if this scalar is one.
    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            ExactReal::Rational(r) => Some(r),
            ExactReal::Algebraic(_) => None,
        }
    }

    /// Double-precision approximation.
    pub fn to_f64(&self) -> f64 {
        match self {
            ExactReal::Rational(r) => to_f64(r),
            ExactReal::Algebraic(a) => a.to_f64(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn t(k: u32, i: u32) -> AlgebraicNumber {
        spindle_root(SpindleRootHandle { k, i }).unwrap()
    }

    #[test]
    fn named_roots_match_frozen_decimals() {
        // Reference decimals computed by isolating the cubic roots with an
        // independent numeric root finder.
        let cases = [
            (t(1, 1), -(1.0 + 5.0f64.sqrt()) / 4.0),
            (t(1, 2), -0.5),
            (t(1, 3), (5.0f64.sqrt() - 1.0) / 4.0),
            (t(2, 1), -0.455257810151660),
            (t(2, 2), -0.268829926171712),
            (t(2, 3), 0.255337736323373),
        ];
        for (root, expect) in cases {
            assert!(
                (root.to_f64() - expect).abs() < 1e-12,
                "root {:?} vs {}",
                root,
                expect
            );
        }
    }

    #[test]
    fn rational_comparisons_are_exact() {
        let t11 = t(1, 1);
        assert_eq!(t11.cmp_rat(&rat(-1, 2)), Ordering::Less);
        assert_eq!(t11.cmp_rat(&rat_i(-1)), Ordering::Greater);
        // t_{1,2} is exactly -1/2.
        assert_eq!(t(1, 2).cmp_rat(&rat(-1, 2)), Ordering::Equal);
        let t21 = t(2, 1);
        assert_eq!(t21.cmp_rat(&rat(-1, 2)), Ordering::Greater);
        assert_eq!(t21.cmp_rat(&rat(-5, 11)), Ordering::Less);
    }

    #[test]
    fn algebraic_comparisons_detect_order_and_equality() {
        assert_eq!(t(1, 1).cmp_alg(&t(2, 1)), Ordering::Less);
        assert_eq!(t(2, 2).cmp_alg(&t(2, 1)), Ordering::Greater);
        assert_eq!(t(2, 1).cmp_alg(&t(2, 1)), Ordering::Equal);
        // Same value through a different defining polynomial: -1/2 as the
        // middle root of the arm-1 cubic vs an explicit linear polynomial.
        let half = AlgebraicNumber::from_rat(&rat(-1, 2));
        assert_eq!(t(1, 2).cmp_alg(&half), Ordering::Equal);
    }

    #[test]
    fn floor_of_rational_function_at_algebraic_point() {
        // num/den = (x^2 + 1)/1 at x = sqrt(2): floor(3) exactly at an
        // integer is the capped case; perturb to x^2 + 1/2 -> floor = 2.
        let x = AlgebraicNumber::root_of(&UniPoly::from_ints(&[-2, 0, 1]), 1).unwrap();
        let num = UniPoly::new(vec![rat(1, 2), Rat::zero(), rat_i(1)]);
        let den = UniPoly::from_ints(&[1]);
        assert_eq!(x.floor_ratfun(&num, &den), Some(BigInt::from(2)));
        // Denominator with a sign: (x^2+1/2)/(x-1) at sqrt(2) ~ 6.03...
        let den2 = UniPoly::from_ints(&[-1, 1]);
        assert_eq!(x.floor_ratfun(&num, &den2), Some(BigInt::from(6)));
    }

    #[test]
    fn parse_handles() {
        assert_eq!(
            parse_root_handle("t_2_1"),
            Some(SpindleRootHandle { k: 2, i: 1 })
        );
        assert_eq!(parse_root_handle("t_11"), None);
        assert_eq!(parse_root_handle("x_1_1"), None);
    }
}
