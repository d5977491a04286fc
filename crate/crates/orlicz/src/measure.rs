//! Finite measures (boundary arc samples, empirical pullbacks, discrete
//! atoms) and Orlicz-norm computation over them.
//!
//! A function is always handled as a finite weighted sample: values f_i with
//! nonnegative weights w_i. The modular is sum w_i psi(|f_i| / C) and the
//! Luxemburg norm is the C solving modular = 1, found by bisection inside an
//! analytically valid bracket. Summation is pairwise in a fixed order, so
//! repeated runs are bit-identical.

use crate::error::{Error, Result};
use crate::function::OrliczFunction;
use crate::num;
use num_complex::Complex64;
use std::io;
use std::path::Path;

/// Boundary values on the uniform circle grid theta_k = 2 pi k / n with the
/// normalized arc measure (weight 1/n each).
#[derive(Debug, Clone)]
pub struct BoundarySample {
    values: Vec<Complex64>,
    /// True when the values came from an exact boundary formula rather than
    /// evaluation at radius 1 - delta.
    pub closed_form: bool,
}

impl BoundarySample {
    pub fn new(values: Vec<Complex64>, closed_form: bool) -> Result<Self> {
        let n = values.len();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::domain(format!(
                "boundary grid size must be a power of two >= 2, got {n}"
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::domain("boundary sample contains non-finite values"));
        }
        Ok(BoundarySample { values, closed_form })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn theta(&self, k: usize) -> f64 {
        2.0 * std::f64::consts::PI * k as f64 / self.values.len() as f64
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn weight(&self) -> f64 {
        1.0 / self.values.len() as f64
    }

    pub fn abs_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }

    pub fn write_csv<W: io::Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "theta,value_re,value_im")?;
        for (k, v) in self.values.iter().enumerate() {
            writeln!(w, "{:.17e},{:.17e},{:.17e}", self.theta(k), v.re, v.im)?;
        }
        Ok(())
    }

    /// Reads a `theta,value_re,value_im` table; the theta column is ignored
    /// (the grid is implied by the row count, which must be a power of two).
    pub fn read_csv<R: io::Read>(r: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(r);
        let mut values = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::parse(format!("csv row {i}: {e}")))?;
            if rec.len() < 3 {
                return Err(Error::parse(format!("csv row {i}: expected 3 columns")));
            }
            let parse = |j: usize| -> Result<f64> {
                rec[j]
                    .parse::<f64>()
                    .map_err(|_| Error::parse(format!("csv row {i} col {j}: bad float {:?}", &rec[j])))
            };
            if i == 0 && rec[0].parse::<f64>().is_err() {
                continue; // header row
            }
            let _theta = parse(0)?;
            values.push(Complex64::new(parse(1)?, parse(2)?));
        }
        BoundarySample::new(values, false)
    }
}

/// A finite positive measure on the closed unit disk, stored as weighted
/// atoms.
#[derive(Debug, Clone)]
pub struct EmpiricalMeasure {
    points: Vec<Complex64>,
    weights: Vec<f64>,
    total: f64,
}

impl EmpiricalMeasure {
    pub fn new(points: Vec<Complex64>, weights: Vec<f64>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::domain("points/weights length mismatch"));
        }
        for (i, p) in points.iter().enumerate() {
            if p.norm_sqr() > 1.0 + 1e-12 {
                return Err(Error::domain(format!("atom {i} lies outside the closed disk: {p}")));
            }
        }
        if weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
            return Err(Error::domain("weights must be finite and >= 0"));
        }
        let total = num::pairwise_sum(&weights);
        Ok(EmpiricalMeasure { points, weights, total })
    }

    pub fn dirac(point: Complex64) -> Result<Self> {
        Self::new(vec![point], vec![1.0])
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        self.total
    }

    pub fn write_csv<W: io::Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "re,im,weight")?;
        for (p, wt) in self.points.iter().zip(&self.weights) {
            writeln!(w, "{:.17e},{:.17e},{:.17e}", p.re, p.im, wt)?;
        }
        Ok(())
    }

    pub fn write_csv_path(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }

    /// Reads a `re,im,weight` table (optional header).
    pub fn read_csv<R: io::Read>(r: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(r);
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::parse(format!("csv row {i}: {e}")))?;
            if rec.len() < 3 {
                return Err(Error::parse(format!("csv row {i}: expected 3 columns")));
            }
            if i == 0 && rec[0].parse::<f64>().is_err() {
                continue;
            }
            let f = |j: usize| -> Result<f64> {
                rec[j]
                    .parse::<f64>()
                    .map_err(|_| Error::parse(format!("csv row {i} col {j}: bad float {:?}", &rec[j])))
            };
            points.push(Complex64::new(f(0)?, f(1)?));
            weights.push(f(2)?);
        }
        EmpiricalMeasure::new(points, weights)
    }
}

/// The modular sum w_i psi(|f_i| / c). Overflow at an atom produces `inf`,
/// which is a valid modular value (it just means c is below the norm).
pub fn modular(f: &[f64], weights: &[f64], psi: &OrliczFunction, c: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::domain(format!("modular constant must be > 0, got {c}")));
    }
    if f.len() != weights.len() {
        return Err(Error::domain("sample/weight length mismatch"));
    }
    let terms: Vec<f64> = f
        .iter()
        .zip(weights)
        .map(|(&v, &w)| if w == 0.0 { 0.0 } else { w * psi.ev(v.abs() / c) })
        .collect();
    Ok(num::pairwise_sum(&terms))
}

/// Analytically valid bisection bracket for the Luxemburg norm:
/// [max|f| / psi^{-1}(1/w_min), max|f| / psi^{-1}(1/total_mass)].
pub fn luxemburg_bracket(
    psi: &OrliczFunction,
    max_abs: f64,
    w_min_pos: f64,
    total_mass: f64,
) -> (f64, f64) {
    let total = total_mass.max(w_min_pos);
    let lo = max_abs / psi.inv(1.0 / w_min_pos);
    let hi = max_abs / psi.inv((1.0 / total).min(1.0 / w_min_pos));
    if hi < lo {
        (hi, lo)
    } else {
        (lo, hi)
    }
}

/// Bisection core shared by every norm computation: finds the C with
/// modular(C) = 1 inside [lo, hi] for a continuous decreasing modular.
/// Relative tolerance 1e-10, then the |modular - 1| <= 1e-8 post-condition
/// is verified.
pub fn bisect_modular(modular_at: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    if modular_at(hi) > 1.0 {
        // a total mass below 1 can leave the analytic upper bracket slightly
        // inside; widen geometrically
        for _ in 0..64 {
            hi *= 2.0;
            if modular_at(hi) <= 1.0 {
                break;
            }
        }
    }
    let mut width = hi - lo;
    for _ in 0..200 {
        if width <= 1e-10 * hi.abs() {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if modular_at(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        width = hi - lo;
    }
    let c = hi;
    let check = modular_at(c);
    if (check - 1.0).abs() > 1e-8 {
        return Err(Error::Convergence(format!(
            "norm bisection left modular at {check} (|modular - 1| > 1e-8)"
        )));
    }
    Ok(c)
}

/// Luxemburg norm of a finite sample: the C with modular(C) = 1, or 0 for
/// the zero sample.
pub fn luxemburg_norm(f: &[f64], weights: &[f64], psi: &OrliczFunction) -> Result<f64> {
    if f.len() != weights.len() {
        return Err(Error::domain("sample/weight length mismatch"));
    }
    if f.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("norm undefined: sample contains a non-finite value"));
    }
    let mut max_abs = 0.0f64;
    let mut w_min_pos = f64::INFINITY;
    let mut active_total = 0.0;
    for (&v, &w) in f.iter().zip(weights) {
        if w > 0.0 {
            active_total += w;
            if v.abs() > 0.0 {
                max_abs = max_abs.max(v.abs());
                w_min_pos = w_min_pos.min(w);
            }
        }
    }
    if max_abs == 0.0 {
        return Ok(0.0);
    }
    let (lo, hi) = luxemburg_bracket(psi, max_abs, w_min_pos, active_total);
    bisect_modular(|c| modular(f, weights, psi, c).expect("validated inputs"), lo, hi)
}

/// mu(|f| > t), exact over atoms.
pub fn tail_distribution(f: &[f64], weights: &[f64], t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::domain(format!("tail level must being >= 0, got {t}")));
    }
    let terms: Vec<f64> = f
        .iter()
        .zip(weights)
        .map(|(&v, &w)| if v.abs() > t { w } else { 0.0 })
        .collect();
    Ok(num::pairwise_sum(&terms))
}

/// Default geometric level grid for tail scans: 64 points per decade over
/// the positive sample range.
pub fn default_level_grid(f: &[f64], per_decade: usize) -> Vec<f64> {
    let mut t_min = f64::INFINITY;
    let mut t_max = 0.0f64;
    for &v in f {
        let a = v.abs();
        if a > 0.0 {
            t_min = t_min.min(a);
            t_max = t_max.max(a);
        }
    }
    if !(t_max > 0.0) {
        return Vec::new();
    }
    if t_min >= t_max {
        return vec![t_max];
    }
    crate::grid::GeometricGrid::new(t_min, t_max, per_decade.max(1)).points()
}

/// Weak-Orlicz membership score: sup over the level grid of
/// psi(c t) mu(|f| > t). A score <= 1 is evidence that f lies in
/// weak-L^psi with constant c.
pub fn weak_orlicz_score(
    f: &[f64],
    weights: &[f64],
    psi: &OrliczFunction,
    c: f64,
    levels: &[f64],
) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::domain(format!("weak-norm constant must be > 0, got {c}")));
    }
    // sort the sample once; strict-above masses by suffix sums
    let mut order: Vec<usize> = (0..f.len()).collect();
    order.sort_by(|&a, &b| f[a].abs().partial_cmp(&f[b].abs()).unwrap());
    let sorted_abs: Vec<f64> = order.iter().map(|&i| f[i].abs()).collect();
    let sorted_w: Vec<f64> = order.iter().map(|&i| weights[i]).collect();
    let mut suffix = vec![0.0; f.len() + 1];
    for i in (0..f.len()).rev() {
        suffix[i] = suffix[i + 1] + sorted_w[i];
    }
    let mass_above = |t: f64| -> f64 {
        let idx = sorted_abs.partition_point(|&v| v <= t);
        suffix[idx]
    };
    let mut best = 0.0f64;
    for &t in levels {
        if t > 0.0 {
            best = best.max(psi.ev(c * t) * mass_above(t));
        }
    }
    Ok(best)
}

/// Two-sided bound for the norm of the evaluation functional at |z| = r on
/// the Hardy-Orlicz side: [ psi^{-1}(K)/4, 2 psi^{-1}(K) ] with
/// K = (1+r)/(1-r).
pub fn hardy_evaluation_bounds(psi: &OrliczFunction, r: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::domain(format!("evaluation radius must be in [0,1), got {r}")));
    }
    let k = (1.0 + r) / (1.0 - r);
    let v = psi.inv(k);
    Ok((0.25 * v, 2.0 * v))
}
