//! Jacobi (Gegenbauer) polynomials for the sphere `S^{n-1}`, normalized to
//! `P_k(1) = 1`, and the two-variable zonal kernels `Q_k` obtained by
//! integrating out a common third point.
//!
//! The three-term recurrence used everywhere is
//! `P_k = ((2k + n - 4) x P_{k-1} - (k - 1) P_{k-2}) / (k + n - 3)`,
//! with `P_0 = 1`, `P_1 = x`. For `n = 2` these are the Chebyshev
//! polynomials of the first kind and for `n = 3` the Legendre polynomials;
//! `P_k(1) = 1` holds for every `n >= 2`.

use crate::poly::{TriPoly, UniPoly};
use crate::ratio::{rat_i, Rat};
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Exact coefficients of `P_k` for `S^{n-1}` (requires `n >= 2`).
pub fn jacobi_poly(k: u32, n: u32) -> UniPoly {
    assert!(n >= 2, "sphere dimension parameter must be at least 2");
    let mut p_prev = UniPoly::from_ints(&[1]);
    if k == 0 {
        return p_prev;
    }
    let mut p = UniPoly::x();
    for kk in 2..=k {
        let a = rat_i((2 * kk + n - 4) as i64);
        let b = rat_i((kk - 1) as i64);
        let d = rat_i((kk + n - 3) as i64);
        let next = UniPoly::x()
            .mul(&p)
            .scale(&a)
            .sub(&p_prev.scale(&b))
            .scale(&(Rat::one() / d));
        p_prev = p;
        p = next;
    }
    p
}

/// Exact evaluation of `P_k` at a rational point.
pub fn jacobi_eval_rat(k: u32, n: u32, x: &Rat) -> Rat {
    assert!(n >= 2);
    let mut prev = Rat::one();
    if k == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for kk in 2..=k {
        let a = rat_i((2 * kk + n - 4) as i64);
        let b = rat_i((kk - 1) as i64);
        let d = rat_i((kk + n - 3) as i64);
        let next = (a * x * &cur - b * &prev) / d;
        prev = cur;
        cur = next;
    }
    cur
}

/// Floating-point evaluation of `P_k` by the same recurrence.
pub fn jacobi_eval(k: u32, n: u32, x: f64) -> f64 {
    assert!(n >= 2);
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = x;
    for kk in 2..=k {
        let kk = kk as f64;
        let n = n as f64;
        let next = ((2.0 * kk + n - 4.0) * x * cur - (kk - 1.0) * prev) / (kk + n - 3.0);
        prev = cur;
        cur = next;
    }
    cur
}

static Q_CACHE: Lazy<Mutex<HashMap<(u32, u32), Arc<TriPoly>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The zonal three-point kernel `Q_k` for `S^{n-1}` as an exact trivariate
/// polynomial in `(u, v, s)` (requires `n >= 3`).
///
/// With `c_j` the coefficients of `P_k` for `S^{n-2}`,
/// `Q_k(u, v, s) = sum_j c_j (s - uv)^j ((1-u^2)(1-v^2))^{(k-j)/2}`;
/// the parity of the recurrence guarantees `k - j` is even whenever
/// `c_j != 0`, so this is a polynomial. Results are cached.
pub fn q_poly(k: u32, n: u32) -> Arc<TriPoly> {
    assert!(n >= 3, "the three-point kernel needs n >= 3");
    if let Some(hit) = Q_CACHE.lock().unwrap().get(&(k, n)) {
        return hit.clone();
    }
    let inner = jacobi_poly(k, n - 1);
    let s_minus_uv = TriPoly::s().sub(&TriPoly::u().mul(&TriPoly::v()));
    let one = TriPoly::constant(Rat::one());
    let u2 = TriPoly::u().mul(&TriPoly::u());
    let v2 = TriPoly::v().mul(&TriPoly::v());
    let disc = one.sub(&u2).mul(&one.sub(&v2));
    let mut acc = TriPoly::zero();
    for (j, c) in inner.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let parity_gap = k as usize - j;
        debug_assert!(parity_gap % 2 == 0, "recurrence must preserve parity");
        let term = s_minus_uv.pow(j).mul(&disc.pow(parity_gap / 2)).scale(c);
        acc = acc.add(&term);
    }
    let arc = Arc::new(acc);
    Q_CACHE.lock().unwrap().insert((k, n), arc.clone());
    arc
}

/// Floating-point evaluation of `Q_k`.
pub fn q_eval(k: u32, n: u32, u: f64, v: f64, s: f64) -> f64 {
    q_poly(k, n).eval_f64(u, v, s)
}

/// Exact evaluation of `Q_k` at a rational point.
pub fn q_eval_rat(k: u32, n: u32, u: &Rat, v: &Rat, s: &Rat) -> Rat {
    q_poly(k, n).eval(u, v, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Subst;
    use crate::ratio::{rat, to_f64};

    /// Independent construction of `P_k` by Gram-Schmidt against the
    /// moment sequence of the weight `(1 - x^2)^{(n-3)/2}`:
    /// `m_0 = 1`, `m_{2j+2} = m_{2j} (2j+1)/(2j+n)`, odd moments zero.
    fn gram_schmidt_jacobi(k: u32, n: u32) -> UniPoly {
        let deg = k as usize;
        let mut moments = vec![Rat::zero(); 2 * deg + 2];
        moments[0] = Rat::one();
        let mut j = 0usize;
        while 2 * j + 2 < moments.len() {
            let num = rat_i((2 * j + 1) as i64);
            let den = rat_i(2 * j as i64 + n as i64);
            moments[2 * j + 2] = &moments[2 * j] * num / den;
            j += 1;
        }
        let ip = |a: &UniPoly, b: &UniPoly| -> Rat {
            let prod = a.mul(b);
            prod.coeffs()
                .iter()
                .enumerate()
                .map(|(d, c)| c * &moments[d])
                .sum()
        };
        let mut basis: Vec<UniPoly> = Vec::new();
        for d in 0..=deg {
            let mut v = vec![Rat::zero(); d + 1];
            v[d] = Rat::one();
            let mut p = UniPoly::new(v);
            for b in &basis {
                let coef = ip(&p, b) / ip(b, b);
                p = p.sub(&b.scale(&coef));
            }
            basis.push(p);
        }
        let last = basis.pop().unwrap();
        let at_one = last.eval(&rat_i(1));
        last.scale(&(Rat::one() / at_one))
    }

    #[test]
    fn matches_gram_schmidt_construction() {
        for n in [3u32, 4, 5, 7, 10] {
            for k in 0..=6u32 {
                assert_eq!(
                    jacobi_poly(k, n),
                    gram_schmidt_jacobi(k, n),
                    "P_{k} for n={n}"
                );
            }
        }
    }

    #[test]
    fn value_one_at_one_and_parity() {
        for n in 2..=10u32 {
            for k in 0..=8u32 {
                assert_eq!(jacobi_eval_rat(k, n, &rat_i(1)), rat_i(1));
                assert_eq!(
                    jacobi_eval_rat(k, n, &rat_i(-1)),
                    if k % 2 == 0 { rat_i(1) } else { rat_i(-1) }
                );
            }
        }
    }

    #[test]
    fn chebyshev_and_legendre_special_cases() {
        // n = 2 gives cos(k arccos x).
        for k in 0..=8u32 {
            for &x in &[-0.9f64, -0.3, 0.1, 0.7] {
                let expect = (k as f64 * x.acos()).cos();
                assert!((jacobi_eval(k, 2, x) - expect).abs() < 1e-12);
            }
        }
        // n = 3 gives the Legendre polynomials; spot-check P_2 and P_3.
        for &x in &[-0.9f64, -0.3, 0.1, 0.7] {
            assert!((jacobi_eval(2, 3, x) - (1.5 * x * x - 0.5)).abs() < 1e-12);
            assert!((jacobi_eval(3, 3, x) - (2.5 * x * x * x - 1.5 * x)).abs() < 1e-12);
        }
    }

    #[test]
    fn orthogonality_by_quadrature() {
        // integral over [0, pi] of P_j(cos a) P_k(cos a) sin^{n-2} a da
        // vanishes for j != k; composite Simpson on the angular form.
        let steps = 4000usize;
        for n in [3u32, 4, 5, 8] {
            for j in 0..=6u32 {
                for k in 0..=6u32 {
                    if j == k {
                        continue;
                    }
                    let h = std::f64::consts::PI / steps as f64;
                    let f = |a: f64| {
                        let x = a.cos();
                        jacobi_eval(j, n, x)
                            * jacobi_eval(k, n, x)
                            * a.sin().powi(n as i32 - 2)
                    };
                    let mut total = f(0.0) + f(std::f64::consts::PI);
                    for i in 1..steps {
                        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                        total += w * f(i as f64 * h);
                    }
                    total *= h / 3.0;
                    assert!(
                        total.abs() < 1e-8,
                        "orthogonality failed for n={n}, j={j}, k={k}: {total}"
                    );
                }
            }
        }
    }

    #[test]
    fn q_kernel_low_degree_closed_forms() {
        for n in [3u32, 4, 5, 9] {
            // Q_1 = s - uv
            let q1 = q_poly(1, n);
            let expect1 = TriPoly::s().sub(&TriPoly::u().mul(&TriPoly::v()));
            assert!(q1.sub(&expect1).is_zero(), "Q_1 mismatch for n={n}");
            // Q_2 = ((n-1)(s-uv)^2 - (1-u^2)(1-v^2)) / (n-2)
            let q2 = q_poly(2, n);
            let d = rat_i(n as i64 - 2);
            let a = rat_i(n as i64 - 1);
            let smuv = TriPoly::s().sub(&TriPoly::u().mul(&TriPoly::v()));
            let one = TriPoly::constant(Rat::one());
            let disc = one
                .sub(&TriPoly::u().mul(&TriPoly::u()))
                .mul(&one.sub(&TriPoly::v().mul(&TriPoly::v())));
            let expect2 = smuv
                .pow(2)
                .scale(&a)
                .sub(&disc)
                .scale(&(Rat::one() / d));
            assert!(q2.sub(&expect2).is_zero(), "Q_2 mismatch for n={n}");
        }
    }

    #[test]
    fn q_kernel_symmetry_and_degree() {
        for n in [3u32, 5, 7] {
            for k in 1..=5u32 {
                let q = q_poly(k, n);
                // symmetry in (u, v)
                for i in 0..=(2 * k as usize) {
                    for j in 0..=(2 * k as usize) {
                        for l in 0..=(2 * k as usize) {
                            assert_eq!(q.coeff(i, j, l), q.coeff(j, i, l));
                            // per-variable degree bound
                            if i > 2 * k as usize
                                || j > 2 * k as usize
                                || l > 2 * k as usize
                            {
                                assert!(q.coeff(i, j, l).is_zero());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn q_kernel_collapses_on_the_diagonal() {
        // At u = 1 the lift x = z forces Q_k(1, v, s) = c_k (s - v)^k.
        let n = 5u32;
        for k in 1..=4u32 {
            let q = q_poly(k, n);
            // The collapsed kernel in the remaining variables is exactly
            // c_k (s - v)^k with c_k the leading coefficient of the inner
            // Jacobi polynomial; check by substitution against that form.
            let at_u1 = q.substitute(&Subst::Const(rat_i(1)), &Subst::Const(rat(1, 3)), &Subst::Var);
            let ck = jacobi_poly(k, n - 1).leading();
            let shifted = UniPoly::new(vec![rat(-1, 3), rat_i(1)]); // s - 1/3
            let mut expect_poly = UniPoly::from_ints(&[1]);
            for _ in 0..k {
                expect_poly = expect_poly.mul(&shifted);
            }
            assert_eq!(at_u1, expect_poly.scale(&ck), "collapse mismatch k={k}");
            for &(v, s) in &[(0.25, -0.5), (-0.75, 0.1), (0.0, 0.9)] {
                let got = q.eval_f64(1.0, v, s);
                let expect = to_f64(&ck) * (s - v).powi(k as i32);
                assert!(
                    (got - expect).abs() < 1e-12,
                    "collapse mismatch k={k}: {got} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn q_kernel_is_positive_definite_by_sampling() {
        // For fixed z, the matrix [Q_k(x_i.z, x_j.z, x_i.x_j)] over sampled
        // unit vectors must be PSD (addition theorem).
        use nalgebra::DMatrix;
        let n = 4usize;
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            // xorshift for reproducible sample points
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        let sample: Vec<Vec<f64>> = (0..12)
            .map(|_| {
                let mut v: Vec<f64> = (0..n).map(|_| next()).collect();
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                v.iter_mut().for_each(|x| *x /= norm);
                v
            })
            .collect();
        let z = {
            let mut v: Vec<f64> = (0..n).map(|_| next()).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
            v
        };
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        for k in 1..=3u32 {
            let m = sample.len();
            let mut mat = DMatrix::zeros(m, m);
            for i in 0..m {
                for j in 0..m {
                    mat[(i, j)] = q_eval(
                        k,
                        n as u32,
                        dot(&sample[i], &z),
                        dot(&sample[j], &z),
                        dot(&sample[i], &sample[j]),
                    );
                }
            }
            let sym = (mat.clone() + mat.transpose()) * 0.5;
            let eigs = sym.symmetric_eigenvalues();
            let min = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(min > -1e-9, "kernel not PSD for k={k}: min eig {min}");
        }
    }
}
