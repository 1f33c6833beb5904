//! Exact univariate and trivariate polynomials over the rationals.
//!
//! [`UniPoly`] supports the field-coefficient Euclidean toolkit (division,
//! GCD, squarefree part), Sturm sequences with exact sign-variation counts,
//! and bisection-based isolation of all real roots into disjoint rational
//! intervals. [`TriPoly`] is a small dense trivariate polynomial used for
//! the three-point kernels; it only needs ring operations and substitution.

use crate::ratio::{rat_i, to_f64, Rat};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Univariate polynomial with exact rational coefficients.
///
/// Coefficients are stored in ascending degree order with no trailing
/// zeros; the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl UniPoly {
    /// Builds a polynomial from ascending coefficients, trimming zeros.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Convenience constructor from machine integers, ascending order.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| rat_i(c)).collect())
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        UniPoly::from_ints(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the convention `deg 0 = None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficient slice (no trailing zeros).
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Leading coefficient, or zero for the zero polynomial.
    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Floating-point evaluation (coefficients rounded once).
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + to_f64(c);
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_i(i as i64))
                .collect(),
        )
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, k: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    ///
    /// Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); rem.len() - dd + 1];
        let lead = divisor.leading();
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd - 1] / &lead;
            if !q.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    let v = &q * c;
                    rem[k + j] -= v;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd - 1);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic associate (leading coefficient scaled to one).
    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let inv = Rat::one() / self.leading();
        self.scale(&inv)
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) || g.is_zero() {
            return self.monic();
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// Composes with a linear substitution: `p(a*x + b)`.
    pub fn compose_linear(&self, a: &Rat, b: &Rat) -> UniPoly {
        let mut acc = UniPoly::zero();
        let lin = UniPoly::new(vec![b.clone(), a.clone()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// A bound `B` with all real roots in `(-B, B)` (Cauchy bound).
    pub fn root_bound(&self) -> Rat {
        if self.coeffs.len() <= 1 {
            return Rat::one();
        }
        let lead = self.leading().abs();
        let max_ratio = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / lead.clone())
            .max()
            .unwrap_or_else(Rat::zero);
        Rat::one() + max_ratio
    }

    /// Sturm chain of the squarefree part.
    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        let p = self.squarefree_part();
        let mut chain = vec![p.clone()];
        if p.degree().unwrap_or(0) == 0 {
            return chain;
        }
        chain.push(p.derivative());
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        chain
    }

    /// Counts roots of the squarefree part in the half-open interval `(a, b]`.
    pub fn count_roots_in(&self, a: &Rat, b: &Rat) -> usize {
        assert!(a <= b, "interval endpoints out of order");
        let chain = self.sturm_chain();
        let va = sign_variations(&chain, a);
        let vb = sign_variations(&chain, b);
        va.saturating_sub(vb)
    }

    /// Isolates all real roots into disjoint intervals `(lo, hi]`, sorted
    /// ascending, each containing exactly one root of the squarefree part.
    pub fn isolate_roots(&self) -> Vec<(Rat, Rat)> {
        let p = self.squarefree_part();
        if p.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let chain = p.sturm_chain();
        let bound = p.root_bound();
        let lo = -bound.clone();
        let hi = bound;
        let mut out = Vec::new();
        let mut stack = vec![(lo, hi)];
        while let Some((a, b)) = stack.pop() {
            let count =
                sign_variations(&chain, &a).saturating_sub(sign_variations(&chain, &b));
            match count {
                0 => {}
                1 => out.push((a, b)),
                _ => {
                    let mid = (&a + &b) / rat_i(2);
                    stack.push((mid.clone(), b));
                    stack.push((a, mid));
                }
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    /// Halves the width of an isolating interval `(lo, hi]`, keeping the root.
    ///
    /// Requires that the squarefree part has exactly one root in `(lo, hi]`
    /// and changes sign there (true for isolating intervals of a squarefree
    /// polynomial with odd multiplicity, i.e. always after `isolate_roots`).
    pub fn refine_interval(&self, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
        let mid = (lo + hi) / rat_i(2);
        let fm = self.eval(&mid);
        if fm.is_zero() {
            // Shrink to a tiny interval with the root at its right endpoint.
            let width = (hi - lo) / rat_i(4);
            return (&mid - width, mid);
        }
        let f_hi = self.eval(hi);
        let same_side = fm.is_positive() == f_hi.is_positive();
        if same_side && !f_hi.is_zero() {
            (lo.clone(), mid)
        } else {
            (mid, hi.clone())
        }
    }
}

/// Number of sign variations of `chain` evaluated at `x` (zeros skipped).
fn sign_variations(chain: &[UniPoly], x: &Rat) -> usize {
    let mut variations = 0;
    let mut last: Option<Ordering> = None;
    for p in chain {
        let v = p.eval(x);
        let s = match v.cmp(&Rat::zero()) {
            Ordering::Equal => continue,
            s => s,
        };
        if let Some(prev) = last {
            if prev != s {
                variations += 1;
            }
        }
        last = Some(s);
    }
    variations
}

/// The three-point spindle polynomial `m_k(t)` whose roots bound the
/// realizability windows of the spindle with two rhombus arms of size `k`:
/// `8k^2 t^3 - (k^2 - 10k + 1) t^2 - 2(k-1) t - 1`.
pub fn ms_polynomial(k: u32) -> UniPoly {
    let k = k as i64;
    UniPoly::new(vec![
        rat_i(-1),
        rat_i(-2 * (k - 1)),
        rat_i(-(k * k - 10 * k + 1)),
        rat_i(8 * k * k),
    ])
}

/// The quartic companion of the mixed spindle family:
/// `8k^2(k-1) t^4 - (k^3 - 19k^2 + 8k + 4) t^3 - k(3k - 14) t^2 - 3(k-1) t - 1`
/// (a cubic when `k = 1`).
pub fn spindle_quartic(k: u32) -> UniPoly {
    let k = k as i64;
    UniPoly::new(vec![
        rat_i(-1),
        rat_i(-3 * (k - 1)),
        rat_i(-k * (3 * k - 14)),
        rat_i(-(k * k * k - 19 * k * k + 8 * k + 4)),
        rat_i(8 * k * k * (k - 1)),
    ])
}

/// The cubic companion of the mixed spindle family:
/// `(2k^2 - 1) t^3 - (k^2 - 3k - 1) t^2 - (2k - 1) t - 1`.
pub fn spindle_cubic(k: u32) -> UniPoly {
    let k = k as i64;
    UniPoly::new(vec![
        rat_i(-1),
        rat_i(-(2 * k - 1)),
        rat_i(-(k * k - 3 * k - 1)),
        rat_i(2 * k * k - 1),
    ])
}

/// Dense trivariate polynomial in `(u, v, s)` with rational coefficients.
///
/// Coefficient of `u^i v^j s^l` is `c[i][j][l]`. Degrees stay tiny (at most
/// four per variable), so the dense representation is simplest.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriPoly {
    /// `c[i][j][l]` multiplies `u^i v^j s^l`.
    c: Vec<Vec<Vec<Rat>>>,
}

/// Substitution target for one variable of a [`TriPoly`].
#[derive(Clone, Debug)]
pub enum Subst {
    /// Replace with a rational constant.
    Const(Rat),
    /// Replace with the single surviving variable.
    Var,
}

impl TriPoly {
    fn with_dims(du: usize, dv: usize, ds: usize) -> Self {
        TriPoly {
            c: vec![vec![vec![Rat::zero(); ds + 1]; dv + 1]; du + 1],
        }
    }

    pub fn zero() -> Self {
        TriPoly::with_dims(0, 0, 0)
    }

    pub fn constant(v: Rat) -> Self {
        let mut p = TriPoly::with_dims(0, 0, 0);
        p.c[0][0][0] = v;
        p
    }

    /// The monomial `c * u^i v^j s^l`.
    pub fn monomial(c: Rat, i: usize, j: usize, l: usize) -> Self {
        let mut p = TriPoly::with_dims(i, j, l);
        p.c[i][j][l] = c;
        p
    }

    pub fn u() -> Self {
        TriPoly::monomial(Rat::one(), 1, 0, 0)
    }

    pub fn v() -> Self {
        TriPoly::monomial(Rat::one(), 0, 1, 0)
    }

    pub fn s() -> Self {
        TriPoly::monomial(Rat::one(), 0, 0, 1)
    }

    fn dims(&self) -> (usize, usize, usize) {
        (
            self.c.len() - 1,
            self.c[0].len() - 1,
            self.c[0][0].len() - 1,
        )
    }

    pub fn coeff(&self, i: usize, j: usize, l: usize) -> Rat {
        self.c
            .get(i)
            .and_then(|p| p.get(j))
            .and_then(|p| p.get(l))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &TriPoly) -> TriPoly {
        let (a1, b1, c1) = self.dims();
        let (a2, b2, c2) = other.dims();
        let mut out = TriPoly::with_dims(a1.max(a2), b1.max(b2), c1.max(c2));
        for i in 0..out.c.len() {
            for j in 0..out.c[0].len() {
                for l in 0..out.c[0][0].len() {
                    out.c[i][j][l] = self.coeff(i, j, l) + other.coeff(i, j, l);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &TriPoly) -> TriPoly {
        self.add(&other.scale(&rat_i(-1)))
    }

    pub fn scale(&self, k: &Rat) -> TriPoly {
        let mut out = self.clone();
        for plane in &mut out.c {
            for row in plane {
                for v in row {
                    *v *= k;
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &TriPoly) -> TriPoly {
        let (a1, b1, c1) = self.dims();
        let (a2, b2, c2) = other.dims();
        let mut out = TriPoly::with_dims(a1 + a2, b1 + b2, c1 + c2);
        for i1 in 0..=a1 {
            for j1 in 0..=b1 {
                for l1 in 0..=c1 {
                    let x = &self.c[i1][j1][l1];
                    if x.is_zero() {
                        continue;
                    }
                    for i2 in 0..=a2 {
                        for j2 in 0..=b2 {
                            for l2 in 0..=c2 {
                                let y = &other.c[i2][j2][l2];
                                if !y.is_zero() {
                                    out.c[i1 + i2][j1 + j2][l1 + l2] += x * y;
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> TriPoly {
        let mut acc = TriPoly::constant(Rat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.c
            .iter()
            .all(|p| p.iter().all(|r| r.iter().all(Zero::is_zero)))
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, u: &Rat, v: &Rat, s: &Rat) -> Rat {
        let mut total = Rat::zero();
        let mut upow = Rat::one();
        for plane in &self.c {
            let mut vpow = Rat::one();
            for row in plane {
                let mut spow = Rat::one();
                for coeff in row {
                    if !coeff.is_zero() {
                        total += coeff * &upow * &vpow * &spow;
                    }
                    spow *= s;
                }
                vpow *= v;
            }
            upow *= u;
        }
        total
    }

    /// Floating-point evaluation.
    pub fn eval_f64(&self, u: f64, v: f64, s: f64) -> f64 {
        let mut total = 0.0;
        for (i, plane) in self.c.iter().enumerate() {
            for (j, row) in plane.iter().enumerate() {
                for (l, coeff) in row.iter().enumerate() {
                    if !coeff.is_zero() {
                        total += to_f64(coeff) * u.powi(i as i32) * v.powi(j as i32) * s.powi(l as i32);
                    }
                }
            }
        }
        total
    }

    /// Relabels the variables: returns `q` with `q(x0, x1, x2) =
    /// self(x_{perm[0]}, x_{perm[1]}, x_{perm[2]})` where `x0, x1, x2`
    /// stand for `u, v, s`.
    pub fn permute(&self, perm: [usize; 3]) -> TriPoly {
        let (du, dv, ds) = self.dims();
        let mut new_dims = [0usize; 3];
        for (k, e) in [du, dv, ds].into_iter().enumerate() {
            new_dims[perm[k]] += e;
        }
        let mut out = TriPoly::with_dims(new_dims[0], new_dims[1], new_dims[2]);
        for (i, plane) in self.c.iter().enumerate() {
            for (j, row) in plane.iter().enumerate() {
                for (l, coeff) in row.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut e = [0usize; 3];
                    for (k, exp) in [i, j, l].into_iter().enumerate() {
                        e[perm[k]] += exp;
                    }
                    out.c[e[0]][e[1]][e[2]] += coeff;
                }
            }
        }
        out
    }

    /// Substitutes each variable with either a constant or the single
    /// remaining variable, producing a univariate polynomial.
    pub fn substitute(&self, u: &Subst, v: &Subst, s: &Subst) -> UniPoly {
        let mut acc = UniPoly::zero();
        for (i, plane) in self.c.iter().enumerate() {
            for (j, row) in plane.iter().enumerate() {
                for (l, coeff) in row.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut scalar = coeff.clone();
                    let mut degree = 0usize;
                    for (sub, e) in [(u, i), (v, j), (s, l)] {
                        match sub {
                            Subst::Const(c) => {
                                let mut p = Rat::one();
                                for _ in 0..e {
                                    p *= c;
                                }
                                scalar *= p;
                            }
                            Subst::Var => degree += e,
                        }
                    }
                    let mut term = vec![Rat::zero(); degree + 1];
                    term[degree] = scalar;
                    acc = acc.add(&UniPoly::new(term));
                }
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn poly(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_ints(coeffs)
    }

    #[test]
    fn division_reassembles() {
        // (x^2 + 1)(x - 3) + (x + 7)
        let d = poly(&[1, 0, 1]);
        let q = poly(&[-3, 1]);
        let r = poly(&[7, 1]);
        let p = d.mul(&q).add(&r);
        let (q2, r2) = p.div_rem(&d);
        assert_eq!(q2, q);
        assert_eq!(r2, r);
    }

    #[test]
    fn gcd_of_products() {
        let a = poly(&[-1, 1]); // x - 1
        let b = poly(&[2, 1]); // x + 2
        let c = poly(&[5, 1]); // x + 5
        let g = a.mul(&b).gcd(&a.mul(&c));
        assert_eq!(g, a.monic());
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        let a = poly(&[-1, 1]);
        let p = a.mul(&a).mul(&poly(&[3, 1]));
        let sf = p.squarefree_part();
        assert_eq!(sf, a.mul(&poly(&[3, 1])).monic());
    }

    #[test]
    fn sturm_counts_roots_of_wilkinson_fragment() {
        // (x-1)(x-2)(x-3): three roots in (0, 4], one in (0, 3/2].
        let p = poly(&[-1, 1]).mul(&poly(&[-2, 1])).mul(&poly(&[-3, 1]));
        assert_eq!(p.count_roots_in(&rat_i(0), &rat_i(4)), 3);
        assert_eq!(p.count_roots_in(&rat_i(0), &rat(3, 2)), 1);
        assert_eq!(p.count_roots_in(&rat_i(1), &rat_i(3)), 2); // (1,3] excludes root 1
    }

    #[test]
    fn isolates_quadratic_roots() {
        // x^2 - 2: roots +-sqrt(2)
        let p = poly(&[-2, 0, 1]);
        let roots = p.isolate_roots();
        assert_eq!(roots.len(), 2);
        let (mut lo, mut hi) = roots[1].clone();
        for _ in 0..40 {
            (lo, hi) = p.refine_interval(&lo, &hi);
        }
        let mid = to_f64(&((&lo + &hi) / rat_i(2)));
        assert!((mid - std::f64::consts::SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn isolates_all_roots_of_spindle_polynomials() {
        let p1 = ms_polynomial(1);
        let r1 = p1.isolate_roots();
        assert_eq!(r1.len(), 3);
        let approx: Vec<f64> = r1
            .iter()
            .map(|(lo, hi)| {
                let (mut lo, mut hi) = (lo.clone(), hi.clone());
                for _ in 0..60 {
                    (lo, hi) = p1.refine_interval(&lo, &hi);
                }
                to_f64(&((lo + hi) / rat_i(2)))
            })
            .collect();
        let golden = (1.0 + 5.0f64.sqrt()) / 4.0;
        assert!((approx[0] + golden).abs() < 1e-12);
        assert!((approx[1] + 0.5).abs() < 1e-12);
        assert!((approx[2] - (5.0f64.sqrt() - 1.0) / 4.0).abs() < 1e-12);

        let p2 = ms_polynomial(2);
        let r2 = p2.isolate_roots();
        assert_eq!(r2.len(), 3);
    }

    #[test]
    fn compose_linear_shifts_roots() {
        // p(x) = x^2 - 2 composed with x -> 2x + 1 vanishes where 2x+1 = sqrt(2)
        let p = poly(&[-2, 0, 1]);
        let q = p.compose_linear(&rat_i(2), &rat_i(1));
        let x = (std::f64::consts::SQRT_2 - 1.0) / 2.0;
        assert!(q.eval_f64(x).abs() < 1e-12);
    }

    #[test]
    fn tripoly_arithmetic_and_substitution() {
        // (u v - s)^2 evaluated and substituted
        let p = TriPoly::u().mul(&TriPoly::v()).sub(&TriPoly::s());
        let sq = p.pow(2);
        assert_eq!(
            sq.eval(&rat_i(2), &rat_i(3), &rat_i(1)),
            rat_i(25)
        );
        // substitute u = 1, v = x, s = x: (x - x)^2 = 0
        let zero = sq.substitute(
            &Subst::Const(rat_i(1)),
            &Subst::Var,
            &Subst::Var,
        );
        assert!(zero.is_zero());
        // substitute u = x, v = 2, s = 1: (2x - 1)^2
        let q = sq.substitute(&Subst::Var, &Subst::Const(rat_i(2)), &Subst::Const(rat_i(1)));
        assert_eq!(q, poly(&[1, -4, 4]));
    }

    #[test]
    fn tripoly_permutation_relabels_variables() {
        // p = u^2 v + 3 s; p(s, v, u) swaps the roles of u and s.
        let p = TriPoly::u()
            .pow(2)
            .mul(&TriPoly::v())
            .add(&TriPoly::s().scale(&rat_i(3)));
        let q = p.permute([2, 1, 0]);
        let (u, v, s) = (rat(1, 2), rat(-1, 3), rat(2, 5));
        assert_eq!(q.eval(&u, &v, &s), p.eval(&s, &v, &u));
        // identity permutation is a no-op
        assert_eq!(p.permute([0, 1, 2]), p);
    }

    #[test]
    fn spindle_cubic_k1_matches_expected_form() {
        // k = 1: t^3 + 3t^2 - t - 1
        assert_eq!(spindle_cubic(1), poly(&[-1, -1, 3, 1]));
        // k = 1 quartic degenerates to a cubic with leading 8k^2(k-1) = 0
        assert_eq!(spindle_quartic(1).degree(), Some(3));
    }
}
