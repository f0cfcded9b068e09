//! One-dimensional quadrature utilities: Gauss-Legendre rules generated by
//! Newton iteration, a globally adaptive integrator with halving error
//! estimates, and the exponential integral E1 needed for closed-form inner
//! integrals of damped kernels.
//!
//! The adaptive driver evaluates only at interior Gauss nodes, so integrable
//! endpoint singularities (log, inverse square root) are handled by panel
//! refinement without special casing.

use crate::C64;
use once_cell::sync::Lazy;
use std::collections::BinaryHeap;

/// Value with an error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub err: f64,
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Computed by Newton iteration on P_n (classic gauleg); accurate to a few
/// ulps for the orders used here.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        loop {
            // Legendre recurrence for P_n(z) and P_{n-1}(z)
            let mut p1 = 1.0f64;
            let mut p2 = 0.0f64;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j as f64 + 1.0) * z * p2 - j as f64 * p3) / (j as f64 + 1.0);
            }
            let dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / dp;
            if (z - z1).abs() < 1e-15 {
                let dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
                x[i] = -z;
                x[n - 1 - i] = z;
                w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
                w[n - 1 - i] = w[i];
                break;
            }
        }
    }
    (x, w)
}

static GL16: Lazy<(Vec<f64>, Vec<f64>)> = Lazy::new(|| gauss_legendre(16));

fn gl16_panel(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (ref x, ref w) = *GL16;
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = 0.0;
    for i in 0..x.len() {
        s += w[i] * f(c + h * x[i]);
    }
    s * h
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err
            .partial_cmp(&other.err)
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

fn make_panel(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Panel {
    let whole = gl16_panel(f, a, b);
    let mid = 0.5 * (a + b);
    let halves = gl16_panel(f, a, mid) + gl16_panel(f, mid, b);
    Panel {
        a,
        b,
        value: halves,
        err: (whole - halves).abs(),
    }
}

/// Globally adaptive integration of `f` over [a, b] to absolute tolerance.
pub fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> QuadResult {
    adaptive_with_budget(f, a, b, tol, 4000)
}

pub fn adaptive_with_budget(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
) -> QuadResult {
    if a == b {
        return QuadResult {
            value: 0.0,
            err: 0.0,
        };
    }
    let mut heap = BinaryHeap::new();
    heap.push(make_panel(f, a, b));
    let mut total_err: f64 = heap.peek().map(|p| p.err).unwrap_or(0.0);
    let mut panels = 1usize;
    while total_err > tol && panels < max_panels {
        let worst = heap.pop().unwrap();
        if worst.b - worst.a < 1e-15 * (b - a).abs() {
            // cannot subdivide further; keep its error
            let mut rest: Vec<Panel> = heap.into_vec();
            rest.push(worst);
            let value = rest.iter().map(|p| p.value).sum();
            let err = rest.iter().map(|p| p.err).sum();
            return QuadResult { value, err };
        }
        total_err -= worst.err;
        let mid = 0.5 * (worst.a + worst.b);
        let left = make_panel(f, worst.a, mid);
        let right = make_panel(f, mid, worst.b);
        total_err += left.err + right.err;
        heap.push(left);
        heap.push(right);
        panels += 1;
    }
    let value = heap.iter().map(|p| p.value).sum();
    let err = heap.iter().map(|p| p.err).sum();
    QuadResult { value, err }
}

/// Integration over [a, inf) via the map r = a + u/(1-u), u in (0, 1).
pub fn adaptive_to_inf(f: &dyn Fn(f64) -> f64, a: f64, tol: f64) -> QuadResult {
    let g = move |u: f64| {
        let one_minus = 1.0 - u;
        let r = a + u / one_minus;
        f(r) / (one_minus * one_minus)
    };
    adaptive(&g, 0.0, 1.0, tol)
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponential integral E1(z) for Re z >= 0, z != 0.
///
/// Power series for small |z|, modified Lentz continued fraction otherwise.
/// The principal branch of ln is used, matching E1 on the cut plane.
pub fn exp_integral_e1(z: C64) -> C64 {
    assert!(
        z.norm() > 0.0,
        "E1 is singular at the origin; filter the t -> 0 limit upstream"
    );
    if z.norm() <= 2.0 {
        // E1(z) = -gamma - ln z + sum_{k>=1} (-1)^{k+1} z^k / (k k!)
        let mut sum = C64::new(0.0, 0.0);
        let mut term = C64::new(1.0, 0.0);
        for k in 1..=130 {
            term *= -z / (k as f64);
            let add = -term / (k as f64);
            sum += add;
            if add.norm() < 1e-18 * (1.0 + sum.norm()) {
                break;
            }
        }
        -EULER_GAMMA - z.ln() + sum
    } else {
        // E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...))))
        let tiny = 1e-300;
        let mut b = z + 1.0;
        let mut c = C64::new(1.0 / tiny, 0.0);
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..=400 {
            let a = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            if c.norm() == 0.0 {
                c = C64::new(tiny, 0.0);
            }
            let del = c * d;
            h *= del;
            if (del - 1.0).norm() < 1e-16 {
                break;
            }
        }
        (-z).exp() * h
    }
}

/// Real-argument convenience wrapper, x > 0.
pub fn e1_real(x: f64) -> f64 {
    exp_integral_e1(C64::new(x, 0.0)).re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_nodes_integrate_polynomials_exactly() {
        let (x, w) = gauss_legendre(16);
        // degree-31 exactness; check x^20 over [-1,1]
        let val: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(20)).sum();
        assert!((val - 2.0 / 21.0).abs() < 1e-14);
        let sum_w: f64 = w.iter().sum();
        assert!((sum_w - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_smooth_and_singular() {
        let r = adaptive(&|t: f64| t.exp(), 0.0, 1.0, 1e-12);
        assert!((r.value - (1.0f64.exp() - 1.0)).abs() < 1e-12);

        // integrable log singularity at the left endpoint
        let r = adaptive(&|t: f64| t.ln(), 0.0, 1.0, 1e-10);
        assert!((r.value + 1.0).abs() < 1e-8, "got {}", r.value);

        // 1/sqrt singularity
        let r = adaptive(&|t: f64| 1.0 / t.sqrt(), 0.0, 1.0, 1e-9);
        assert!((r.value - 2.0).abs() < 1e-7);
    }

    #[test]
    fn adaptive_infinite_tail() {
        // int_0^inf (1+r^2)^{-2} dr = pi/4
        let r = adaptive_to_inf(&|t: f64| (1.0 + t * t).powi(-2), 0.0, 1e-12);
        assert!((r.value - std::f64::consts::PI / 4.0).abs() < 1e-10);
    }

    #[test]
    fn e1_reference_values() {
        // Abramowitz & Stegun 5.1; 10-digit references
        assert!((e1_real(1.0) - 0.219_383_934_4).abs() < 1e-9);
        assert!((e1_real(0.5) - 0.559_773_594_8).abs() < 1e-9);
        assert!((e1_real(2.0) - 0.048_900_510_7).abs() < 1e-9);
        assert!((e1_real(10.0) - 4.156_968_93e-6).abs() < 1e-12);
    }

    #[test]
    fn e1_matches_direct_quadrature_complex() {
        // E1(z) = int_1^inf e^{-z t}/t dt for Re z > 0
        for &z in &[
            C64::new(0.9, 0.0),
            C64::new(2.5, 1.5),
            C64::new(0.3, -2.0),
            C64::new(4.0, 8.0),
        ] {
            let re = adaptive_to_inf(&|t: f64| ((-z * t).exp() / t).re, 1.0, 1e-12);
            let im = adaptive_to_inf(&|t: f64| ((-z * t).exp() / t).im, 1.0, 1e-12);
            let e = exp_integral_e1(z);
            assert!(
                (e - C64::new(re.value, im.value)).norm() < 1e-9,
                "E1({z}) = {e}, quad gives {} + {}i",
                re.value,
                im.value
            );
        }
    }

    #[test]
    fn e1_series_cf_agree_on_ring() {
        // both branches valid near |z| = 2
        for k in 0..8 {
            let th = k as f64 * std::f64::consts::FRAC_PI_2 / 4.5;
            let z = C64::from_polar(2.0, th - 0.7);
            if z.re < 0.0 {
                continue;
            }
            let series = {
                let mut sum = C64::new(0.0, 0.0);
                let mut term = C64::new(1.0, 0.0);
                for k in 1..=200 {
                    term *= -z / (k as f64);
                    sum += -term / (k as f64);
                }
                -EULER_GAMMA - z.ln() + sum
            };
            let e = exp_integral_e1(z);
            assert!((e - series).norm() < 1e-12);
        }
    }
}
