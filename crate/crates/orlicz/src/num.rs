//! Scalar numeric kernels: monotone root finding, concave maximization,
//! adaptive quadrature, deterministic summation, Gauss-Legendre nodes and
//! small statistics helpers.
//!
//! Everything here is deterministic: fixed evaluation order, no RNG, no
//! thread-dependent reduction.

use crate::error::{Error, Result};

/// Pairwise (cascade) summation. Deterministic for a fixed slice and much
/// better conditioned than a running sum; cost is the same O(n).
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const BASE: usize = 64;
    if xs.len() <= BASE {
        let mut acc = 0.0;
        for &x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Kahan-compensated accumulator for streaming sums where the slice is never
/// materialized. Deterministic for a fixed visit order.
#[derive(Debug, Clone, Copy, Default)]
pub struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Grow a bracket [lo, hi] upward from `start` until `f(hi) >= target`,
/// doubling each step. `f` must be non-decreasing.
pub fn grow_bracket(f: impl Fn(f64) -> f64, target: f64, start: f64) -> Result<(f64, f64)> {
    let mut hi = if start > 0.0 { start } else { 1.0 };
    let mut lo = 0.0;
    for _ in 0..1100 {
        if f(hi) >= target {
            return Ok((lo, hi));
        }
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            break;
        }
    }
    Err(Error::Convergence(format!(
        "bracket growth failed to enclose target {target}"
    )))
}

/// Bisection for f(x) = target with f non-decreasing on [lo, hi].
/// Stops when the bracket is below `rel_tol` in relative width (absolute
/// width for brackets straddling zero). 200-iteration cap.
pub fn bisect_monotone(
    f: impl Fn(f64) -> f64,
    target: f64,
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(lo <= hi) {
        return Err(Error::domain(format!("invalid bracket [{lo}, {hi}]")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
        let scale = hi.abs().max(1e-300);
        if (hi - lo) / scale <= rel_tol {
            return Ok(0.5 * (lo + hi));
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Maximizes a concave function on [lo, hi] by golden-section search.
/// Returns (argmax, max). Used for one-dimensional Legendre transforms.
pub fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Adaptive Simpson quadrature on [a, b] with absolute/relative tolerance.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let err = left + right - whole;
        if err.abs() <= 15.0 * tol || (b - a) < 1e-14 * (a.abs() + b.abs()) {
            return Ok(left + right + err / 15.0);
        }
        if depth == 0 {
            return Err(Error::Convergence(
                "adaptive quadrature hit depth cap".into(),
            ));
        }
        Ok(recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Integrates f over [a, b] split into geometric panels (b/a decades),
/// with adaptive Simpson per panel. Suitable for slowly decaying tails.
pub fn quad_geometric(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a > 0.0 && b > a) {
        return Err(Error::domain(format!("bad geometric range [{a}, {b}]")));
    }
    let decades = (b / a).log10().ceil().max(1.0) as usize;
    let ratio = (b / a).powf(1.0 / decades as f64);
    let mut lo = a;
    let mut total = 0.0;
    for _ in 0..decades {
        let hi = (lo * ratio).min(b);
        total += adaptive_simpson(f, lo, hi, tol / decades as f64)?;
        lo = hi;
    }
    Ok(total)
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre polynomial recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and derivative via the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = pk;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Ordinary least-squares slope of y against x.
pub fn ols_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    sxy / sxx
}

/// Kolmogorov-Smirnov distance between a sorted sample and a CDF.
pub fn ks_distance(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let c = cdf(x);
        d = d.max((c - i as f64 / n).abs());
        d = d.max(((i + 1) as f64 / n - c).abs());
    }
    d
}

/// Reduce an angle to the principal branch (-pi, pi].
pub fn principal_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut t = theta.rem_euclid(two_pi);
    if t > std::f64::consts::PI {
        t -= two_pi;
    }
    t
}

/// Relative difference |a-b| / max(|a|, |b|, floor).
pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}
