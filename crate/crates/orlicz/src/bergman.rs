//! Bergman-side numerics: normalized area quadrature on the disk, the
//! evaluation kernel H_a, Orlicz norms over area measure, the
//! compactness-ratio table for composition operators, and the
//! ring-Blaschke-product bounds driven by the finite-group Parseval
//! identity.

use crate::error::{Error, Result};
use crate::function::OrliczFunction;
use crate::measure::luxemburg_norm;
use crate::num;
use crate::symbol::{ring_level, Symbol};
use num_complex::Complex64;
use serde::Serialize;
use std::io;

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Tensor quadrature for the normalized area measure dA = dx dy / pi:
/// Gauss-Legendre panels in the radius against a uniform angular grid.
/// With geometric panel clustering toward |z| = 1 it resolves integrands
/// concentrating at the boundary (the H_a kernels).
#[derive(Debug, Clone)]
pub struct AreaQuadrature {
    /// (radius, weight) with weights summing to 1 = int_0^1 2r dr.
    radial: Vec<(f64, f64)>,
    n_ang: usize,
}

impl AreaQuadrature {
    /// Plain rule: one radial panel [0, 1] with `n_rad` nodes.
    pub fn new(n_rad: usize, n_ang: usize) -> Self {
        Self::with_panels(n_rad, 1, n_ang)
    }

    /// Geometrically clustered rule: panels [0, 1/2], [1/2, 3/4], ...,
    /// ending at 1, each carrying `n_rad` Gauss-Legendre nodes.
    pub fn with_panels(n_rad: usize, panels: usize, n_ang: usize) -> Self {
        assert!(n_rad >= 2 && n_ang >= 4 && panels >= 1);
        let (xs, ws) = num::gauss_legendre(n_rad);
        let mut radial = Vec::with_capacity(n_rad * panels);
        let mut lo = 0.0f64;
        for p in 0..panels {
            let hi = if p + 1 == panels { 1.0 } else { 1.0 - 0.5f64.powi(p as i32 + 1) };
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            for (&x, &w) in xs.iter().zip(&ws) {
                let r = mid + half * x;
                // weight for int_0^1 2 r g(r) dr
                radial.push((r, w * half * 2.0 * r));
            }
            lo = hi;
        }
        AreaQuadrature { radial, n_ang }
    }

    pub fn node_count(&self) -> usize {
        self.radial.len() * self.n_ang
    }

    /// Streaming integral of f against dA: angular average per ring, pairwise
    /// over rings. Deterministic evaluation order.
    pub fn integrate(&self, f: impl Fn(Complex64) -> f64 + Sync) -> f64 {
        use rayon::prelude::*;
        let ring: Vec<f64> = self
            .radial
            .par_iter()
            .map(|&(r, wr)| {
                let per: Vec<f64> = (0..self.n_ang)
                    .map(|j| f(Complex64::from_polar(r, TAU * j as f64 / self.n_ang as f64)))
                    .collect();
                wr * num::pairwise_sum(&per) / self.n_ang as f64
            })
            .collect();
        num::pairwise_sum(&ring)
    }

    /// Materialized samples of |f| with matching weights, for norm
    /// computations.
    pub fn sample(&self, f: impl Fn(Complex64) -> f64) -> (Vec<f64>, Vec<f64>) {
        let mut values = Vec::with_capacity(self.node_count());
        let mut weights = Vec::with_capacity(self.node_count());
        for &(r, wr) in &self.radial {
            let w = wr / self.n_ang as f64;
            for j in 0..self.n_ang {
                values.push(f(Complex64::from_polar(r, TAU * j as f64 / self.n_ang as f64)));
                weights.push(w);
            }
        }
        (values, weights)
    }

    pub fn total_weight(&self) -> f64 {
        let ws: Vec<f64> = self.radial.iter().map(|&(_, w)| w).collect();
        num::pairwise_sum(&ws)
    }

    pub fn second_moment(&self) -> f64 {
        let ws: Vec<f64> = self.radial.iter().map(|&(r, w)| w * r * r).collect();
        num::pairwise_sum(&ws)
    }
}

/// Bergman evaluation kernel H_a(w) = (1-|a|^2)^2 / |1 - conj(a) w|^4,
/// the absolute value of the derivative-squared of the disk automorphism
/// moving a to 0. ||H_a||_1 = 1 and ||H_a||_inf = (1+|a|)^2/(1-|a|)^2.
pub fn kernel_h(a: Complex64, w: Complex64) -> f64 {
    let num = 1.0 - a.norm_sqr();
    let den = (1.0 - a.conj() * w).norm_sqr();
    (num * num) / (den * den)
}

/// Luxemburg norm of a sampled function over the area quadrature.
pub fn bergman_norm(values: &[f64], quad_weights: &[f64], psi: &OrliczFunction) -> Result<f64> {
    luxemburg_norm(values, quad_weights, psi)
}

/// Two-sided bound for the Bergman evaluation functional at |a| = r:
/// [ psi^{-1}(1/(1-r)^2)/16, 8 psi^{-1}(1/(1-r)^2) ].
pub const BERGMAN_EVAL_LOWER: f64 = 1.0 / 16.0;
pub const BERGMAN_EVAL_UPPER: f64 = 8.0;

pub fn bergman_evaluation_bounds(psi: &OrliczFunction, r: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::domain(format!("evaluation radius must be in [0,1), got {r}")));
    }
    let v = psi.inv(1.0 / ((1.0 - r) * (1.0 - r)));
    Ok((BERGMAN_EVAL_LOWER * v, BERGMAN_EVAL_UPPER * v))
}

/// Witness ratio |G_a(a)| / ||G_a||_psi for the evaluation-norm sandwich,
/// where |G_a| = H_a.
pub fn evaluation_witness_ratio(
    a: Complex64,
    psi: &OrliczFunction,
    quad: &AreaQuadrature,
) -> Result<f64> {
    let (values, weights) = quad.sample(|w| kernel_h(a, w));
    let norm = bergman_norm(&values, &weights, psi)?;
    let peak = 1.0 / (1.0 - a.norm_sqr()).powi(2);
    Ok(peak / norm)
}

/// Finite-group Parseval identity at a in D for the p-th roots of unity:
/// (1/p) sum_k 1/|1 - a w^k|^2  =  (1 - |a|^{2p}) / ((1-|a|^2) |1 - a^p|^2)
/// and both sides dominate p |a|^p / 4.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ParsevalIdentity {
    pub lhs: f64,
    pub rhs: f64,
    pub lower: f64,
}

pub fn parseval_finite_group(a: Complex64, p: u32) -> Result<ParsevalIdentity> {
    if a.norm() >= 1.0 {
        return Err(Error::domain("Parseval point must lie in the open disk"));
    }
    if p < 1 {
        return Err(Error::domain("group order must be >= 1"));
    }
    let pf = p as f64;
    let terms: Vec<f64> = (0..p)
        .map(|k| {
            let w = Complex64::from_polar(1.0, TAU * k as f64 / pf);
            1.0 / (1.0 - a * w).norm_sqr()
        })
        .collect();
    let lhs = num::pairwise_sum(&terms) / pf;
    let mut ap = Complex64::new(1.0, 0.0);
    for _ in 0..p {
        ap *= a;
    }
    let r2 = a.norm_sqr();
    let rhs = if r2 == 0.0 {
        1.0
    } else {
        (1.0 - r2.powi(p as i32)) / ((1.0 - r2) * (1.0 - ap).norm_sqr())
    };
    let lower = 0.25 * pf * a.norm().powi(p as i32);
    if num::rel_diff(lhs, rhs) > 1e-11 {
        return Err(Error::Convergence(format!(
            "finite-group Parseval identity violated: lhs {lhs} vs rhs {rhs}"
        )));
    }
    if lhs < lower * (1.0 - 1e-12) {
        return Err(Error::Convergence(format!(
            "finite-group Parseval lower bound violated: lhs {lhs} < {lower}"
        )));
    }
    Ok(ParsevalIdentity { lhs, rhs, lower })
}

/// Pointwise bound data for a ring Blaschke product:
/// |B(z)|^2 <= exp(-S(z)) with S(z) the Poisson-type sum over the zeros,
/// and S(z) >= (1-r)/4 p_N^2 (1-r_N) (r_N r)^{p_N} for the ring level N
/// with r_N < |z| <= r_{N+1}.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BlaschkeBound {
    pub modulus_sq: f64,
    pub s: f64,
    pub exp_bound: f64,
    /// Per-level minorant of S at the level of z (only defined above the
    /// first ring).
    pub minorant: Option<f64>,
    pub level: Option<u32>,
}

pub fn blaschke_s_bound(symbol: &Symbol, z: Complex64) -> Result<BlaschkeBound> {
    let (levels, zeros) = match symbol {
        Symbol::RingBlaschke { levels, zeros } => (*levels, zeros.as_slice()),
        _ => return Err(Error::domain("S-bound needs a ring Blaschke product")),
    };
    if z.norm() >= 1.0 {
        return Err(Error::domain("S-bound point must lie in the open disk"));
    }
    let r = z.norm();
    let top = ring_level(levels).radius;
    if r > top {
        return Err(Error::Coverage(format!(
            "|z| = {r} exceeds the largest built ring radius {top}"
        )));
    }
    let modulus_sq = {
        let v = match symbol {
            Symbol::RingBlaschke { .. } => symbol.eval(z),
            _ => unreachable!(),
        };
        v.norm_sqr()
    };
    let one_minus_z2 = 1.0 - z.norm_sqr();
    let terms: Vec<f64> = zeros
        .iter()
        .map(|&w| one_minus_z2 * (1.0 - w.norm_sqr()) / (1.0 - w.conj() * z).norm_sqr())
        .collect();
    let s = num::pairwise_sum(&terms);

    let mut minorant = None;
    let mut level = None;
    if r > ring_level(1).radius {
        let mut n = 1;
        while n < levels && ring_level(n + 1).radius < r {
            n += 1;
        }
        // now ring_level(n).radius < r <= ring_level(n+1).radius
        if ring_level(n).radius < r {
            let lvl = ring_level(n);
            let p = lvl.count as f64;
            minorant = Some(
                (1.0 - r) / 4.0 * p * p * (1.0 - lvl.radius) * (lvl.radius * r).powi(lvl.count as i32),
            );
            level = Some(n);
        }
    }
    Ok(BlaschkeBound { modulus_sq, s, exp_bound: (-s).exp(), minorant, level })
}

/// Compactness-ratio table along rays:
/// ratio(a) = psi^{-1}(1/(1-|phi(a)|)^2) / psi^{-1}(1/(1-|a|)^2).
#[derive(Debug, Clone, Serialize)]
pub struct RatioTable {
    pub radii: Vec<f64>,
    pub ray_angles: Vec<f64>,
    /// ratios[ray][radius]; NaN marks excluded nodes.
    pub ratios: Vec<Vec<f64>>,
    /// nodes where |phi(a)| rounded to 1 (excluded from the table).
    pub excluded: Vec<(f64, f64)>,
    /// inf over all table nodes of (1 - |phi(z)|)/(1 - |z|)^eps for each
    /// tested eps (the direct slow-approach form for e^{x^2}-type psi).
    pub eps_infima: Vec<(f64, f64)>,
}

impl RatioTable {
    pub fn write_csv<W: io::Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "a,ray_angle,ratio")?;
        for (ray_idx, &angle) in self.ray_angles.iter().enumerate() {
            for (rad_idx, &r) in self.radii.iter().enumerate() {
                writeln!(w, "{:.12e},{:.12e},{:.12e}", r, angle, self.ratios[ray_idx][rad_idx])?;
            }
        }
        Ok(())
    }

    /// True when every ray decreases along the radius grid up to the given
    /// relative jitter.
    pub fn decreasing_along_rays(&self, jitter: f64) -> bool {
        self.ratios.iter().all(|ray| {
            ray.windows(2).all(|p| p[1] <= p[0] * (1.0 + jitter))
        })
    }

    pub fn final_column(&self) -> Vec<f64> {
        self.ratios.iter().map(|ray| *ray.last().unwrap()).collect()
    }
}

pub fn bergman_compact_ratio(
    symbol: &Symbol,
    psi: &OrliczFunction,
    radii: &[f64],
    n_rays: usize,
) -> Result<RatioTable> {
    if radii.is_empty() || n_rays == 0 {
        return Err(Error::domain("ratio table needs radii and rays"));
    }
    if radii.iter().any(|&r| !(0.0..1.0).contains(&r)) {
        return Err(Error::domain("ratio radii must lie in [0, 1)"));
    }
    let ray_angles: Vec<f64> = (0..n_rays).map(|j| TAU * j as f64 / n_rays as f64).collect();
    let mut ratios = Vec::with_capacity(n_rays);
    let mut excluded = Vec::new();
    let eps_set = [0.5, 0.25, 0.125];
    let mut eps_inf = [f64::INFINITY; 3];
    for &angle in &ray_angles {
        let mut row = Vec::with_capacity(radii.len());
        for &r in radii {
            let a = Complex64::from_polar(r, angle);
            let pa = symbol.eval(a).norm();
            if pa >= 1.0 {
                excluded.push((r, angle));
                row.push(f64::NAN);
                continue;
            }
            let num_v = psi.inv(1.0 / ((1.0 - pa) * (1.0 - pa)));
            let den_v = psi.inv(1.0 / ((1.0 - r) * (1.0 - r)));
            row.push(num_v / den_v);
            for (e, inf) in eps_set.iter().zip(eps_inf.iter_mut()) {
                let q = (1.0 - pa) / (1.0 - r).powf(*e);
                if q < *inf {
                    *inf = q;
                }
            }
        }
        ratios.push(row);
    }
    Ok(RatioTable {
        radii: radii.to_vec(),
        ray_angles,
        ratios,
        excluded,
        eps_infima: eps_set.iter().copied().zip(eps_inf).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rel_diff;

    #[test]
    fn quadrature_moments() {
        let q = AreaQuadrature::new(64, 128);
        assert!((q.total_weight() - 1.0).abs() < 1e-12);
        assert!((q.second_moment() - 0.5).abs() < 1e-12);
        let qr = AreaQuadrature::with_panels(32, 6, 128);
        assert!((qr.total_weight() - 1.0).abs() < 1e-12);
        assert!((qr.second_moment() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn kernel_center_is_flat() {
        let a = Complex64::new(0.0, 0.0);
        for &w in &[Complex64::new(0.3, 0.2), Complex64::new(-0.7, 0.1)] {
            assert!((kernel_h(a, w) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn kernel_sup_norm() {
        let a = Complex64::new(0.5, 0.0);
        // sup at w = a/|a| on the boundary
        let sup = kernel_h(a, Complex64::new(1.0, 0.0));
        assert!(rel_diff(sup, 9.0) < 1e-12);
    }

    #[test]
    fn kernel_mass_is_one() {
        let q = AreaQuadrature::with_panels(96, 8, 512);
        let a = Complex64::new(0.0, 0.7);
        let mass = q.integrate(|w| kernel_h(a, w));
        assert!((mass - 1.0).abs() < 1e-6, "mass {mass}");
    }

    #[test]
    fn bergman_norm_examples() {
        let psi2 = OrliczFunction::psi2();
        let q = AreaQuadrature::new(64, 128);
        let (ones, w) = q.sample(|_| 1.0);
        let n = bergman_norm(&ones, &w, &psi2).unwrap();
        assert!(rel_diff(n, 1.0 / std::f64::consts::LN_2.sqrt()) < 1e-9);

        // psi(x) = x^p is not in the catalog for p = 1; check int |z| dA
        // via the quadrature moments directly: int |z| dA = 2/3
        let (absz, w) = q.sample(|z| z.norm());
        let m1: f64 = absz.iter().zip(&w).map(|(v, wt)| v * wt).sum();
        assert!(rel_diff(m1, 2.0 / 3.0) < 1e-10, "{m1}");
    }

    #[test]
    fn parseval_examples() {
        let id = parseval_finite_group(Complex64::new(0.0, 0.0), 5).unwrap();
        assert!(rel_diff(id.lhs, 1.0) < 1e-14 && id.lower == 0.0);

        let a = Complex64::new(0.5, 0.0);
        let one = parseval_finite_group(a, 1).unwrap();
        assert!(rel_diff(one.lhs, 4.0) < 1e-13);

        let two = parseval_finite_group(a, 2).unwrap();
        assert!(rel_diff(two.lhs, 20.0 / 9.0) < 1e-13, "{}", two.lhs);
        assert!((two.lower - 1.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn parseval_random_points() {
        let mut state = 0xabcdef12345u64;
        let mut rnd = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..500 {
            let r = 0.95 * rnd();
            let t = TAU * rnd();
            let p = 1 + (rnd() * 64.0) as u32;
            parseval_finite_group(Complex64::from_polar(r, t), p).unwrap();
        }
    }

    #[test]
    fn blaschke_bound_at_zero_and_inside() {
        let b = Symbol::ring_blaschke(4).unwrap();
        let at0 = blaschke_s_bound(&b, Complex64::new(0.0, 0.0)).unwrap();
        assert!(at0.modulus_sq <= at0.exp_bound);
        assert!(at0.minorant.is_none());

        let z = Complex64::from_polar(0.9, 0.3);
        let bd = blaschke_s_bound(&b, z).unwrap();
        assert!(bd.modulus_sq <= bd.exp_bound, "{} vs {}", bd.modulus_sq, bd.exp_bound);
        let m = bd.minorant.unwrap();
        assert!(bd.s >= m, "S {} < minorant {m}", bd.s);
        assert_eq!(bd.level, Some(3)); // r_3 = 0.875 < 0.9 <= r_4 = 0.9375
    }

    #[test]
    fn blaschke_bound_coverage_error() {
        let b = Symbol::ring_blaschke(3).unwrap();
        let z = Complex64::new(0.93, 0.0); // beyond r_3 = 0.875
        assert!(blaschke_s_bound(&b, z).is_err());
    }

    #[test]
    fn ratio_table_identity_is_one() {
        let psi = OrliczFunction::psi2();
        let radii: Vec<f64> = (1..=6).map(|k| 1.0 - 0.5f64.powi(k)).collect();
        let table = bergman_compact_ratio(&Symbol::Identity, &psi, &radii, 8).unwrap();
        for row in &table.ratios {
            for &v in row {
                assert!((v - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn ratio_table_constant_decays() {
        let psi = OrliczFunction::psi2();
        let phi = Symbol::constant(Complex64::new(0.0, 0.0)).unwrap();
        let radii: Vec<f64> = (1..=8).map(|k| 1.0 - 0.5f64.powi(k)).collect();
        let table = bergman_compact_ratio(&phi, &psi, &radii, 4).unwrap();
        assert!(table.decreasing_along_rays(0.0));
        assert!(table.final_column().iter().all(|&v| v < 0.3));
    }

    #[test]
    fn evaluation_sandwich_under_psi2() {
        let psi = OrliczFunction::psi2();
        let quad = AreaQuadrature::with_panels(48, 8, 256);
        for &(re, im) in &[(0.0, 0.0), (0.5, 0.0), (0.3, -0.6), (0.0, 0.9)] {
            let a = Complex64::new(re, im);
            let ratio = evaluation_witness_ratio(a, &psi, &quad).unwrap();
            let (lo, hi) = bergman_evaluation_bounds(&psi, a.norm()).unwrap();
            assert!(ratio >= lo && ratio <= hi, "a = {a}: {ratio} outside [{lo}, {hi}]");
        }
    }

    #[test]
    fn witness_peak_value() {
        let a = Complex64::new(0.5, 0.0);
        let peak = 1.0 / (1.0 - a.norm_sqr()).powi(2);
        assert!(rel_diff(peak, 16.0 / 9.0) < 1e-14);
    }
}
