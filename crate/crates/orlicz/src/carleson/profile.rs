//! Window-mass profiles rho_mu(h) = sup_xi mu(W(xi, h)) and
//! K_mu(h) = sup_{t <= h} rho(t)/t.
//!
//! Two routes produce a profile:
//!
//! * [`profile`] works on any empirical measure: atoms are sorted by
//!   argument once, and for each h a prefix-sum table over the atoms passing
//!   the modulus gate answers every window query with two binary searches.
//! * [`exact_pullback_profile`] works for symbols whose boundary trace has a
//!   closed-form monotone argument (identity, lens, lens-singular). Window
//!   counts for the uniform n-grid are computed by solving the window
//!   preimage intervals, so n can be far beyond what fits in memory. The two
//!   routes agree atom-for-atom on common grids.
//!
//! The supremum over xi is taken on a finite grid and is therefore a lower
//! bound for the true supremum.

use crate::error::Result;
use crate::grid::GeometricGrid;
use crate::measure::EmpiricalMeasure;
use crate::num;
use crate::symbol::Symbol;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io;

const TAU: f64 = 2.0 * std::f64::consts::PI;
const PI: f64 = std::f64::consts::PI;

/// Centers for the sup over xi: `count` equispaced angles plus the symbol's
/// known contact angles.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct XiGrid {
    pub count: usize,
    pub extra_angles: Vec<f64>,
}

impl XiGrid {
    pub fn equispaced(count: usize) -> Self {
        XiGrid { count, extra_angles: Vec::new() }
    }

    pub fn with_contact(count: usize, extra: &[f64]) -> Self {
        XiGrid { count, extra_angles: extra.to_vec() }
    }

    pub fn angles(&self) -> Vec<f64> {
        let mut out: Vec<f64> = (0..self.count).map(|j| TAU * j as f64 / self.count as f64).collect();
        out.extend(self.extra_angles.iter().copied());
        out
    }
}

impl Default for XiGrid {
    fn default() -> Self {
        XiGrid::equispaced(1 << 12)
    }
}

/// rho and K tabulated on a descending h-grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CarlesonProfile {
    /// Descending window sizes.
    pub h: Vec<f64>,
    pub rho: Vec<f64>,
    pub k: Vec<f64>,
    pub xi_grid_size: usize,
    /// Number of boundary atoms the profile was computed from.
    pub boundary_n: u64,
    /// True when the window counts came from the closed-form grid-count
    /// route rather than materialized atoms.
    pub grid_counted: bool,
}

impl CarlesonProfile {
    /// OLS slope of log rho against log h over h in [lo, hi]; entries with
    /// rho = 0 are skipped.
    pub fn fitted_slope(&self, lo: f64, hi: f64) -> f64 {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (&h, &r) in self.h.iter().zip(&self.rho) {
            if h >= lo * (1.0 - 1e-12) && h <= hi * (1.0 + 1e-12) && r > 0.0 {
                xs.push(h.ln());
                ys.push(r.ln());
            }
        }
        num::ols_slope(&xs, &ys)
    }

    pub fn rho_at(&self, h: f64) -> Option<f64> {
        self.h
            .iter()
            .position(|&x| (x - h).abs() <= 1e-12 * h)
            .map(|i| self.rho[i])
    }

    pub fn write_csv<W: io::Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "h,rho,K")?;
        for i in 0..self.h.len() {
            writeln!(w, "{:.12e},{:.12e},{:.12e}", self.h[i], self.rho[i], self.k[i])?;
        }
        Ok(())
    }
}

fn k_from_rho(h: &[f64], rho: &[f64]) -> Vec<f64> {
    // h is descending; K(h) = max over t <= h of rho(t)/t on the grid
    let mut k = vec![0.0; h.len()];
    let mut running = 0.0f64;
    for i in (0..h.len()).rev() {
        running = running.max(rho[i] / h[i]);
        k[i] = running;
    }
    k
}

/// Profile of an arbitrary empirical measure on the closed disk.
pub fn profile(mu: &EmpiricalMeasure, h_grid: &GeometricGrid, xi: &XiGrid) -> CarlesonProfile {
    let n = mu.len();
    let mut order: Vec<u32> = (0..n as u32).collect();
    let args: Vec<f64> = mu.points().iter().map(|p| p.arg()).collect();
    order.sort_by(|&a, &b| args[a as usize].total_cmp(&args[b as usize]));
    let sorted_args: Vec<f64> = order.iter().map(|&i| args[i as usize]).collect();
    let sorted_mod: Vec<f64> = order.iter().map(|&i| mu.points()[i as usize].norm()).collect();
    let sorted_w: Vec<f64> = order.iter().map(|&i| mu.weights()[i as usize]).collect();

    let hs = h_grid.points_desc();
    let angles = xi.angles();
    let mut rho = Vec::with_capacity(hs.len());
    let mut prefix = vec![0.0f64; n + 1];
    for &h in &hs {
        let gate = 1.0 - h;
        for i in 0..n {
            let active = sorted_mod[i] > gate;
            prefix[i + 1] = prefix[i] + if active { sorted_w[i] } else { 0.0 };
        }
        let interval_sum = |lo: f64, hi: f64| -> f64 {
            let start = sorted_args.partition_point(|&a| a <= lo);
            let end = sorted_args.partition_point(|&a| a < hi);
            if end > start {
                prefix[end] - prefix[start]
            } else {
                0.0
            }
        };
        let best = angles
            .par_iter()
            .map(|&alpha| {
                let a = num::principal_angle(alpha);
                let lo = a - h;
                let hi = a + h;
                let mut mass = 0.0;
                if lo < -PI {
                    mass += interval_sum(-PI - 1.0, hi) + interval_sum(lo + TAU, PI + 1.0);
                } else if hi > PI {
                    mass += interval_sum(lo, PI + 1.0) + interval_sum(-PI - 1.0, hi - TAU);
                } else {
                    mass += interval_sum(lo, hi);
                }
                mass
            })
            .reduce(|| 0.0, f64::max);
        rho.push(best);
    }
    let k = k_from_rho(&hs, &rho);
    CarlesonProfile {
        h: hs,
        rho,
        k,
        xi_grid_size: angles.len(),
        boundary_n: n as u64,
        grid_counted: false,
    }
}

/// Monotone boundary chart of a symbol: on u = theta/2 in (0, u_sup) the
/// trace argument is f(u), strictly increasing, and the trace modulus passes
/// the gate |phi*| > 1 - h exactly for u < u_max(h).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Chart {
    /// arg = 2u on (0, pi), no modulus gate, full circle in one branch.
    Identity,
    /// arg = u, modulus cos u, mirrored branches.
    Lens,
    /// arg = u - cot u, modulus cos u, mirrored branches.
    LensSingular,
}

impl Chart {
    fn of(symbol: &Symbol) -> Option<Chart> {
        match symbol {
            Symbol::Identity => Some(Chart::Identity),
            Symbol::Lens => Some(Chart::Lens),
            Symbol::LensSingular => Some(Chart::LensSingular),
            _ => None,
        }
    }

    fn mirrored(self) -> bool {
        !matches!(self, Chart::Identity)
    }

    /// Whether the trace value at theta = 0 exists and sits at angle 0 on
    /// the unit circle (identity and lens); the singular factor forces the
    /// radial-limit value 0 there instead.
    fn counts_origin(self) -> bool {
        !matches!(self, Chart::LensSingular)
    }

    fn u_sup(self) -> f64 {
        match self {
            Chart::Identity => PI,
            _ => 0.5 * PI,
        }
    }

    fn u_max(self, h: f64) -> f64 {
        match self {
            Chart::Identity => PI,
            // modulus gate cos u > 1 - h
            _ => (1.0 - h).acos(),
        }
    }

    fn f(self, u: f64) -> f64 {
        match self {
            Chart::Identity => 2.0 * u,
            Chart::Lens => u,
            Chart::LensSingular => u - 1.0 / u.tan(),
        }
    }

    fn df(self, u: f64) -> f64 {
        match self {
            Chart::Identity => 2.0,
            Chart::Lens => 1.0,
            Chart::LensSingular => {
                let s = u.sin();
                1.0 + 1.0 / (s * s)
            }
        }
    }

    /// Solves f(u) = y on [lo, hi] (f increasing, y inside the bracket).
    fn invert(self, y: f64, lo: f64, hi: f64) -> f64 {
        match self {
            Chart::Identity => 0.5 * y,
            Chart::Lens => y,
            Chart::LensSingular => {
                // two fixed-point steps of u = 1/(u - y) give an excellent
                // start when the cot term dominates
                let mut u = if y < -4.0 {
                    let u1 = -1.0 / y;
                    1.0 / (u1 - y)
                } else {
                    0.5 * (lo + hi)
                };
                let mut lo = lo;
                let mut hi = hi;
                u = u.clamp(lo, hi);
                for _ in 0..60 {
                    let fu = self.f(u) - y;
                    if fu > 0.0 {
                        hi = u;
                    } else {
                        lo = u;
                    }
                    let step = fu / self.df(u);
                    let mut next = u - step;
                    if !(next > lo && next < hi) {
                        next = 0.5 * (lo + hi);
                    }
                    if (next - u).abs() <= 1e-15 * u.abs() {
                        return next;
                    }
                    u = next;
                }
                u
            }
        }
    }
}

/// Presorted folded arguments for the accumulation zone u <= u_tail, where
/// window preimages become shorter than the theta grid spacing.
struct TailIndex {
    folded: Vec<f64>,
    u_tail: f64,
}

impl TailIndex {
    fn build(chart: Chart, n: u64, h_min: f64) -> TailIndex {
        // keep the tail below every modulus gate on the h-grid and cap its
        // size near 2^21 entries
        let cap = PI * (1u64 << 21) as f64 / n as f64;
        let u_tail = 0.003f64.min(cap).min(0.9 * chart.u_max(h_min));
        let k_tail = (u_tail * n as f64 / PI).floor() as u64;
        let mut folded: Vec<f64> = (1..=k_tail)
            .map(|k| chart.f(PI * k as f64 / n as f64).rem_euclid(TAU))
            .collect();
        folded.sort_by(f64::total_cmp);
        TailIndex { folded, u_tail }
    }

    /// Number of tail atoms with folded argument strictly inside
    /// (lo, hi) mod 2 pi, where hi - lo < 2 pi.
    fn count_in(&self, lo: f64, hi: f64) -> u64 {
        let lo_f = lo.rem_euclid(TAU);
        let hi_f = hi.rem_euclid(TAU);
        let range = |a: f64, b: f64| -> u64 {
            let s = self.folded.partition_point(|&v| v <= a);
            let e = self.folded.partition_point(|&v| v < b);
            (e.saturating_sub(s)) as u64
        };
        if lo_f <= hi_f {
            range(lo_f, hi_f)
        } else {
            range(lo_f, TAU + 1.0) + range(-1.0, hi_f)
        }
    }
}

/// Number of grid points u_k = pi k / n with A < u_k < B and k <= k_max.
fn grid_count(a: f64, b: f64, n: u64, k_max: u64) -> u64 {
    if !(b > a) {
        return 0;
    }
    let s = n as f64 / PI;
    let hi = ((b * s).ceil() as i64 - 1).min(k_max as i64);
    let lo = (a * s).floor() as i64;
    if hi > lo {
        (hi - lo) as u64
    } else {
        0
    }
}

/// Counts the atoms of the positive branch (u in (0, u_max(h))) whose trace
/// argument lies within h of alpha mod 2 pi.
fn branch_count(chart: Chart, n: u64, tail: &TailIndex, alpha: f64, h: f64) -> u64 {
    let u_hi = chart.u_max(h).min(chart.u_sup());
    let k_max = if chart == Chart::Identity { n - 1 } else { n / 2 - 1 };
    let mut count = tail.count_in(alpha - h, alpha + h);
    if u_hi <= tail.u_tail {
        return count;
    }
    let y_lo = chart.f(tail.u_tail);
    let y_hi = chart.f(u_hi);
    let m_lo = ((y_lo - h - alpha) / TAU).ceil() as i64;
    let m_hi = ((y_hi + h - alpha) / TAU).floor() as i64;
    for m in m_lo..=m_hi {
        let y = alpha + TAU * m as f64;
        let a_y = (y - h).max(y_lo);
        let b_y = (y + h).min(y_hi);
        if b_y <= a_y {
            continue;
        }
        let ua = if a_y <= y_lo { tail.u_tail } else { chart.invert(a_y, tail.u_tail, u_hi) };
        let ub = if b_y >= y_hi { u_hi } else { chart.invert(b_y, tail.u_tail, u_hi) };
        count += grid_count(ua.max(tail.u_tail), ub, n, k_max);
    }
    count
}

/// Exact window count for the pullback of the uniform n-grid under a
/// charted symbol: the number of grid atoms inside W(e^{i alpha}, h).
pub fn exact_window_count(symbol: &Symbol, n: u64, alpha: f64, h: f64) -> Option<u64> {
    let chart = Chart::of(symbol)?;
    let tail = TailIndex::build(chart, n, h);
    Some(window_count_with(chart, n, &tail, alpha, h))
}

fn window_count_with(chart: Chart, n: u64, tail: &TailIndex, alpha: f64, h: f64) -> u64 {
    let mut count = branch_count(chart, n, tail, alpha, h);
    if chart.mirrored() {
        count += branch_count(chart, n, tail, -alpha, h);
    }
    if chart.counts_origin() && num::principal_angle(alpha).abs() < h {
        count += 1;
    }
    count
}

/// Profile of the pullback of the uniform n-grid under a charted symbol
/// (identity, lens, lens-singular), by exact interval counting; `None` for
/// other symbols. Supports n far beyond addressable memory.
pub fn exact_pullback_profile(
    symbol: &Symbol,
    n: u64,
    h_grid: &GeometricGrid,
    xi: &XiGrid,
) -> Option<CarlesonProfile> {
    let chart = Chart::of(symbol)?;
    assert!(n >= 4 && n.is_power_of_two(), "boundary grid must be a power of two");
    let hs = h_grid.points_desc();
    let tail = TailIndex::build(chart, n, hs[hs.len() - 1]);
    let angles = xi.angles();
    let rho: Vec<f64> = hs
        .iter()
        .map(|&h| {
            let best = angles
                .par_iter()
                .map(|&alpha| window_count_with(chart, n, &tail, alpha, h))
                .reduce(|| 0, u64::max);
            best as f64 / n as f64
        })
        .collect();
    let k = k_from_rho(&hs, &rho);
    Some(CarlesonProfile {
        h: hs,
        rho,
        k,
        xi_grid_size: angles.len(),
        boundary_n: n,
        grid_counted: true,
    })
}
