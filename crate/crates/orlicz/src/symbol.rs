//! Analytic self-maps of the unit disk (symbols), their boundary traces and
//! the test-function family u_{a,r}.
//!
//! The catalog covers every map used by the diagnostics: the identity and
//! constants, the half-plane-like lens map (1+z)/2, the singular inner
//! function exp(-(1+z)/(1-z)), their product, disk automorphisms, finite
//! Blaschke products, the ring Blaschke product with zeros
//! r_n = 1 - 2^{-n}, p_n = [2^{n - sqrt n}] + 1 per level, z times a
//! Blaschke product, and outer functions built from a boundary log-modulus
//! (step arcs in closed form, smooth samples through the Herglotz integral).

use crate::error::{Error, Result};
use crate::function::OrliczFunction;
use crate::measure::{luxemburg_norm, BoundarySample};
use crate::num;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Poisson kernel P_z(t) = (1 - |z|^2) / |e^{it} - z|^2.
pub fn poisson_kernel(z: Complex64, t: f64) -> f64 {
    let u = Complex64::new(t.cos(), t.sin());
    (1.0 - z.norm_sqr()) / (u - z).norm_sqr()
}

/// One level of the ring Blaschke product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RingLevel {
    /// Ring radius r_n = 1 - 2^{-n}.
    pub radius: f64,
    /// Zero count p_n = [2^{n - sqrt n}] + 1.
    pub count: usize,
}

/// Ring Blaschke parameters for level n.
pub fn ring_level(n: u32) -> RingLevel {
    let nf = n as f64;
    RingLevel {
        radius: 1.0 - 0.5f64.powi(n as i32),
        count: (nf - nf.sqrt()).exp2().floor() as usize + 1,
    }
}

/// Sum over truncated-away levels of the bound 2 * 2^{-sqrt n} on
/// p_n (1 - r_n); quantifies the truncation of a ring Blaschke product.
pub fn ring_tail_bound(levels: u32) -> f64 {
    let mut total = 0.0;
    for n in (levels + 1).. {
        let term = 2.0 * (-(n as f64).sqrt()).exp2();
        total += term;
        if term < 1e-18 {
            break;
        }
    }
    total
}

/// Outer function data: boundary log-modulus, either as exact step arcs or
/// as samples on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub enum OuterData {
    /// Arcs [start, end) in radians with constant log-modulus; must tile the
    /// circle for the Herglotz integral to have total weight log h.
    StepArcs(Vec<(f64, f64, f64)>),
    /// log h at theta_k = 2 pi k / n.
    Sampled(Vec<f64>),
}

/// An analytic self-map of the disk.
#[derive(Debug, Clone, PartialEq)]
pub enum Symbol {
    Identity,
    Constant(Complex64),
    /// (1 + z) / 2.
    Lens,
    /// exp(-(1+z)/(1-z)).
    SingularInner,
    /// The lens map multiplied by the singular inner function; same boundary
    /// modulus as the lens map, compact on H^2 but not on fast-growth H^psi.
    LensSingular,
    /// (z - a)/(1 - conj(a) z).
    Automorphism(Complex64),
    /// Finite Blaschke product with the given zeros.
    Blaschke(Vec<Complex64>),
    /// Ring Blaschke product truncated at `levels`.
    RingBlaschke { levels: u32, zeros: Vec<Complex64> },
    /// z B(z) for a Blaschke-type inner factor.
    ZTimesBlaschke(Box<Symbol>),
    Outer(OuterData),
}

impl Symbol {
    pub fn constant(c: Complex64) -> Result<Self> {
        if c.norm() >= 1.0 {
            return Err(Error::domain(format!("constant symbol must satisfy |c| < 1, got |c| = {}", c.norm())));
        }
        Ok(Symbol::Constant(c))
    }

    pub fn automorphism(a: Complex64) -> Result<Self> {
        if a.norm() >= 1.0 {
            return Err(Error::domain("automorphism parameter must lie in the open disk"));
        }
        Ok(Symbol::Automorphism(a))
    }

    pub fn blaschke(zeros: Vec<Complex64>) -> Result<Self> {
        if zeros.iter().any(|z| z.norm() >= 1.0) {
            return Err(Error::domain("Blaschke zeros must lie in the open disk"));
        }
        if zeros.len() > (1 << 20) {
            return Err(Error::Capacity(format!("{} Blaschke zeros is beyond enumeration capacity", zeros.len())));
        }
        Ok(Symbol::Blaschke(zeros))
    }

    /// Ring Blaschke product truncated at the given level.
    pub fn ring_blaschke(levels: u32) -> Result<Self> {
        if levels == 0 {
            return Err(Error::domain("ring Blaschke product needs at least one level"));
        }
        let mut zeros = Vec::new();
        for n in 1..=levels {
            let lvl = ring_level(n);
            if zeros.len() + lvl.count > (1 << 20) {
                return Err(Error::Capacity(format!(
                    "ring Blaschke level {n} needs {} zeros, beyond enumeration capacity",
                    lvl.count
                )));
            }
            for j in 0..lvl.count {
                let ang = TAU * j as f64 / lvl.count as f64;
                zeros.push(Complex64::from_polar(lvl.radius, ang));
            }
        }
        Ok(Symbol::RingBlaschke { levels, zeros })
    }

    pub fn z_times_blaschke(inner: Symbol) -> Result<Self> {
        match inner {
            b @ (Symbol::Blaschke(_) | Symbol::RingBlaschke { .. }) => Ok(Symbol::ZTimesBlaschke(Box::new(b))),
            other => Err(Error::domain(format!("z * B needs a Blaschke factor, got {}", other.kind_name()))),
        }
    }

    /// Outer function with prescribed boundary modulus samples h > 0.
    pub fn outer_from_modulus(h: &[f64]) -> Result<Self> {
        if h.len() < 2 || !h.len().is_power_of_two() {
            return Err(Error::domain("outer modulus sample count must be a power of two >= 2"));
        }
        if h.iter().any(|&v| !(v > 0.0) || v > 1.0) {
            return Err(Error::domain(
                "outer modulus must satisfy 0 < h <= 1 everywhere (zeros break log-integrability)",
            ));
        }
        Ok(Symbol::Outer(OuterData::Sampled(h.iter().map(|&v| v.ln()).collect())))
    }

    /// Outer function whose boundary modulus is the step function taking
    /// value `value` on each arc [start, end). Arcs must tile the circle.
    pub fn outer_from_arcs(arcs: Vec<(f64, f64, f64)>) -> Result<Self> {
        let mut total = 0.0;
        for &(a, b, v) in &arcs {
            if !(b > a) {
                return Err(Error::domain("outer arc with nonpositive length"));
            }
            if !(v > 0.0) || v > 1.0 {
                return Err(Error::domain("outer arc modulus must be in (0, 1]"));
            }
            total += b - a;
        }
        if (total - TAU).abs() > 1e-9 {
            return Err(Error::domain(format!("outer arcs must tile the circle, total length {total}")));
        }
        Ok(Symbol::Outer(OuterData::StepArcs(
            arcs.into_iter().map(|(a, b, v)| (a, b, v.ln())).collect(),
        )))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Symbol::Identity => "identity",
            Symbol::Constant(_) => "constant",
            Symbol::Lens => "lens",
            Symbol::SingularInner => "singular-inner",
            Symbol::LensSingular => "lens-singular",
            Symbol::Automorphism(_) => "automorphism",
            Symbol::Blaschke(_) => "blaschke",
            Symbol::RingBlaschke { .. } => "ring-blaschke",
            Symbol::ZTimesBlaschke(_) => "z-blaschke",
            Symbol::Outer(_) => "outer",
        }
    }

    /// phi(z) for |z| < 1.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        debug_assert!(z.norm_sqr() < 1.0 + 1e-12);
        match self {
            Symbol::Identity => z,
            Symbol::Constant(c) => *c,
            Symbol::Lens => (1.0 + z) / 2.0,
            Symbol::SingularInner => (-(1.0 + z) / (1.0 - z)).exp(),
            Symbol::LensSingular => ((1.0 + z) / 2.0) * (-(1.0 + z) / (1.0 - z)).exp(),
            Symbol::Automorphism(a) => (z - a) / (1.0 - a.conj() * z),
            Symbol::Blaschke(zeros) => blaschke_product(zeros, z),
            Symbol::RingBlaschke { zeros, .. } => blaschke_product(zeros, z),
            Symbol::ZTimesBlaschke(b) => z * b.eval(z),
            Symbol::Outer(data) => herglotz_eval(data, z).exp(),
        }
    }

    /// Exact boundary value phi*(e^{i theta}) when a closed form exists.
    /// The singular factor has no limit at theta = 0; by the radial-limit
    /// convention that sample is 0 for the kinds carrying the factor.
    pub fn boundary_value(&self, theta: f64) -> Option<Complex64> {
        let u = Complex64::from_polar(1.0, theta);
        match self {
            Symbol::Identity => Some(u),
            Symbol::Constant(c) => Some(*c),
            Symbol::Lens => Some((1.0 + u) / 2.0),
            Symbol::SingularInner => {
                if num::principal_angle(theta) == 0.0 {
                    return Some(Complex64::new(0.0, 0.0));
                }
                let half = 0.5 * num::principal_angle(theta);
                let arg = -half.cos() / half.sin();
                Some(Complex64::from_polar(1.0, arg))
            }
            Symbol::LensSingular => {
                let t = num::principal_angle(theta);
                if t == 0.0 {
                    return Some(Complex64::new(0.0, 0.0));
                }
                // half stays in (-pi/2, pi/2], so the modulus cos(half) is
                // nonnegative and arg = theta/2 - cot(theta/2)
                let half = 0.5 * t;
                Some(Complex64::from_polar(half.cos(), half - half.cos() / half.sin()))
            }
            Symbol::Automorphism(a) => Some((u - a) / (1.0 - a.conj() * u)),
            Symbol::Blaschke(zeros) | Symbol::RingBlaschke { zeros, .. } => Some(blaschke_product(zeros, u)),
            Symbol::ZTimesBlaschke(b) => b.boundary_value(theta).map(|v| u * v),
            Symbol::Outer(_) => None,
        }
    }

    /// Exact boundary modulus |phi*(e^{i theta})| when known.
    pub fn boundary_modulus(&self, theta: f64) -> Option<f64> {
        match self {
            Symbol::Identity | Symbol::Automorphism(_) => Some(1.0),
            Symbol::SingularInner => Some(if num::principal_angle(theta) == 0.0 { 0.0 } else { 1.0 }),
            Symbol::Blaschke(_) | Symbol::RingBlaschke { .. } => Some(1.0),
            Symbol::ZTimesBlaschke(_) => Some(1.0),
            Symbol::Constant(c) => Some(c.norm()),
            Symbol::Lens | Symbol::LensSingular => Some((0.5 * num::principal_angle(theta)).cos().abs()),
            Symbol::Outer(data) => Some(match data {
                OuterData::StepArcs(arcs) => {
                    let t = theta.rem_euclid(TAU);
                    arcs.iter()
                        .find(|&&(a, b, _)| t >= a && t < b)
                        .or(arcs.last())
                        .map(|&(_, _, l)| l.exp())?
                }
                OuterData::Sampled(log_h) => {
                    let n = log_h.len() as f64;
                    let k = (theta.rem_euclid(TAU) / TAU * n).round() as usize % log_h.len();
                    log_h[k].exp()
                }
            }),
        }
    }

    /// Boundary trace on the uniform n-grid. Closed forms are used whenever
    /// available; otherwise phi is evaluated at radius 1 - delta.
    pub fn trace(&self, n: usize, delta: f64) -> Result<BoundarySample> {
        if !(delta > 0.0 && delta <= 1e-3) {
            return Err(Error::domain(format!("radial offset must be in (0, 1e-3], got {delta}")));
        }
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::domain(format!("trace grid size must be a power of two, got {n}")));
        }
        if self.boundary_value(0.0).is_some() {
            let values: Vec<Complex64> = (0..n)
                .map(|k| self.boundary_value(TAU * k as f64 / n as f64).expect("closed form"))
                .collect();
            return BoundarySample::new(values, true);
        }
        match self {
            Symbol::Outer(data) => {
                let values = outer_trace(data, n, delta);
                BoundarySample::new(values, false)
            }
            _ => {
                let r = 1.0 - delta;
                let values: Vec<Complex64> = (0..n)
                    .map(|k| self.eval(Complex64::from_polar(r, TAU * k as f64 / n as f64)))
                    .collect();
                BoundarySample::new(values, false)
            }
        }
    }

    /// Upper bound (1 + |phi(0)|)/(1 - |phi(0)|) for the composition-operator
    /// norm.
    pub fn composition_norm_bound(&self) -> f64 {
        let a = self.eval(Complex64::new(0.0, 0.0)).norm();
        (1.0 + a) / (1.0 - a)
    }

    /// L^1 and Luxemburg norms of the boundary trace of phi^n under the arc
    /// measure.
    pub fn power_norms(&self, n: u32, psi: &OrliczFunction, grid: usize) -> Result<(f64, f64)> {
        if n < 1 {
            return Err(Error::domain("power must be >= 1"));
        }
        let trace = self.trace(grid, 1e-6)?;
        let powered: Vec<f64> = trace.values().iter().map(|v| v.norm().powi(n as i32)).collect();
        let w = vec![trace.weight(); powered.len()];
        let l1 = num::pairwise_sum(&powered.iter().map(|&v| v * trace.weight()).collect::<Vec<_>>());
        let lpsi = luxemburg_norm(&powered, &w, psi)?;
        Ok((l1, lpsi))
    }
}

fn blaschke_product(zeros: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for &w in zeros {
        let r = w.norm();
        let factor = if r == 0.0 {
            z
        } else {
            (w.conj() / r) * (w - z) / (1.0 - w.conj() * z)
        };
        acc *= factor;
    }
    acc
}

/// Herglotz integral int (u + z)/(u - z) log h(u) dm(u): step arcs in closed
/// form, sampled data by the trapezoid rule on its own grid.
fn herglotz_eval(data: &OuterData, z: Complex64) -> Complex64 {
    match data {
        OuterData::StepArcs(arcs) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(a, b, l) in arcs {
                acc += l * arc_herglotz(a, b, z);
            }
            acc
        }
        OuterData::Sampled(log_h) => {
            let n = log_h.len();
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &l) in log_h.iter().enumerate() {
                let u = Complex64::from_polar(1.0, TAU * k as f64 / n as f64);
                acc += l * (u + z) / (u - z);
            }
            acc / n as f64
        }
    }
}

/// int over the arc t in (a, b) of (e^{it} + z)/(e^{it} - z) dt / (2 pi),
/// exactly: -(b - a)/(2 pi) + (1/pi) * [continuous log increment of
/// (e^{it} - z)], split recursively so each principal-branch step stays
/// short.
fn arc_herglotz(a: f64, b: f64, z: Complex64) -> Complex64 {
    let total_log = continuous_log_increment(a, b, z, 0);
    Complex64::new(-(b - a) / TAU, 0.0) + total_log * Complex64::new(0.0, -1.0 / std::f64::consts::PI)
}

fn continuous_log_increment(a: f64, b: f64, z: Complex64, depth: u32) -> Complex64 {
    let ua = Complex64::from_polar(1.0, a) - z;
    let ub = Complex64::from_polar(1.0, b) - z;
    let ratio = ub / ua;
    let principal = Complex64::new(ratio.norm().ln(), ratio.arg());
    if depth >= 48 || (principal.im.abs() < 1.5 && b - a < std::f64::consts::PI) {
        return principal;
    }
    let mid = 0.5 * (a + b);
    continuous_log_increment(a, mid, z, depth + 1) + continuous_log_increment(mid, b, z, depth + 1)
}

/// Trace of an outer symbol at radius 1 - delta. Step arcs evaluate in
/// closed form per point; sampled data goes through the Fourier series of
/// log h (equivalent to the trapezoid rule, resummed), evaluated on the
/// output grid by FFT.
fn outer_trace(data: &OuterData, n: usize, delta: f64) -> Vec<Complex64> {
    let rho = 1.0 - delta;
    match data {
        OuterData::StepArcs(_) => (0..n)
            .map(|k| herglotz_eval(data, Complex64::from_polar(rho, TAU * k as f64 / n as f64)).exp())
            .collect(),
        OuterData::Sampled(log_h) => {
            use rustfft::{num_complex::Complex as FftComplex, FftPlanner};
            let m = log_h.len();
            let mut planner = FftPlanner::new();
            let fft = planner.plan_fft_forward(m);
            let mut buf: Vec<FftComplex<f64>> =
                log_h.iter().map(|&l| FftComplex::new(l, 0.0)).collect();
            fft.process(&mut buf);
            // S(z) = c_0 + 2 sum_{k>=1} c_k z^k with c_k = X_k / m
            let mut series = vec![FftComplex::new(0.0, 0.0); n];
            series[0] = FftComplex::new(buf[0].re / m as f64, buf[0].im / m as f64);
            let kmax = (m / 2).min(n / 2);
            let mut rpow = 1.0;
            for k in 1..kmax {
                rpow *= rho;
                let c = buf[k] * (2.0 * rpow / m as f64);
                series[k] = c;
            }
            let ifft = planner.plan_fft_inverse(n);
            ifft.process(&mut series);
            series
                .into_iter()
                .map(|s| Complex64::new(s.re, s.im).exp())
                .collect()
        }
    }
}

/// Test function u_{a,r}(z) = ((1-r)/(1 - conj(a) r z))^2 with |a| = 1,
/// optionally normalized to g_{a,r} = psi^{-1}(1/(1-r)) u_{a,r}.
#[derive(Debug, Clone, Copy)]
pub struct TestFunction {
    pub a: Complex64,
    pub r: f64,
    scale: f64,
}

impl TestFunction {
    pub fn new(a: Complex64, r: f64) -> Result<Self> {
        if (a.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::domain("test-function direction must be unimodular"));
        }
        if !(0.0..1.0).contains(&r) {
            return Err(Error::domain(format!("test-function radius must be in [0,1), got {r}")));
        }
        Ok(TestFunction { a, r, scale: 1.0 })
    }

    /// g_{a,r} = psi^{-1}(1/(1-r)) u_{a,r}, which has Luxemburg norm <= 1.
    pub fn normalized(a: Complex64, r: f64, psi: &OrliczFunction) -> Result<Self> {
        let mut f = Self::new(a, r)?;
        f.scale = psi.inv(1.0 / (1.0 - r));
        Ok(f)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let d = 1.0 - self.a.conj() * self.r * z;
        let q = (1.0 - self.r) / d;
        self.scale * q * q
    }

    pub fn abs(&self, z: Complex64) -> f64 {
        let d2 = (1.0 - self.a.conj() * self.r * z).norm_sqr();
        self.scale * (1.0 - self.r) * (1.0 - self.r) / d2
    }
}

/// Declarative symbol spec: `{ "kind": ..., "params": ... }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolSpec {
    pub kind: String,
    #[serde(default)]
    pub params: Value,
}

impl SymbolSpec {
    pub fn parse_json(text: &str) -> Result<Symbol> {
        let spec: SymbolSpec =
            serde_json::from_str(text).map_err(|e| Error::parse(format!("symbol spec: {e}")))?;
        spec.build()
    }

    pub fn build(&self) -> Result<Symbol> {
        let p = &self.params;
        let f64_field = |name: &str| -> Result<f64> {
            p.get(name)
                .and_then(Value::as_f64)
                .ok_or_else(|| Error::parse(format!("symbol {:?} needs numeric param {name:?}", self.kind)))
        };
        match self.kind.as_str() {
            "identity" => Ok(Symbol::Identity),
            "lens" => Ok(Symbol::Lens),
            "singular-inner" => Ok(Symbol::SingularInner),
            "lens-singular" => Ok(Symbol::LensSingular),
            "constant" => {
                let re = f64_field("re")?;
                let im = p.get("im").and_then(Value::as_f64).unwrap_or(0.0);
                Symbol::constant(Complex64::new(re, im))
            }
            "automorphism" => {
                let re = f64_field("re")?;
                let im = p.get("im").and_then(Value::as_f64).unwrap_or(0.0);
                Symbol::automorphism(Complex64::new(re, im))
            }
            "blaschke" => {
                let zeros = p
                    .get("zeros")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::parse("blaschke needs a zeros array"))?;
                let mut out = Vec::with_capacity(zeros.len());
                for z in zeros {
                    let pair = z.as_array().filter(|a| a.len() == 2);
                    let pair = pair.ok_or_else(|| Error::parse("blaschke zero must be [re, im]"))?;
                    let re = pair[0].as_f64().ok_or_else(|| Error::parse("bad zero re"))?;
                    let im = pair[1].as_f64().ok_or_else(|| Error::parse("bad zero im"))?;
                    out.push(Complex64::new(re, im));
                }
                Symbol::blaschke(out)
            }
            "ring-blaschke" => {
                let levels = f64_field("levels")?;
                if !(levels >= 1.0 && levels <= 24.0 && levels.fract() == 0.0) {
                    return Err(Error::parse(format!("ring-blaschke levels must be an integer in 1..=24, got {levels}")));
                }
                Symbol::ring_blaschke(levels as u32)
            }
            "z-blaschke" => {
                let levels = f64_field("levels")?;
                if !(levels >= 1.0 && levels <= 24.0 && levels.fract() == 0.0) {
                    return Err(Error::parse(format!("z-blaschke levels must be an integer in 1..=24, got {levels}")));
                }
                Symbol::z_times_blaschke(Symbol::ring_blaschke(levels as u32)?)
            }
            "outer" => {
                let h = p
                    .get("h")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::parse("outer needs an h array"))?;
                let mut vals = Vec::with_capacity(h.len());
                for v in h {
                    vals.push(v.as_f64().ok_or_else(|| Error::parse("bad h value"))?);
                }
                Symbol::outer_from_modulus(&vals)
            }
            other => Err(Error::parse(format!("unknown symbol kind {other:?}"))),
        }
    }
}

/// Parses a compact symbol name as used on the command line: a bare kind
/// (`lens`, `identity`, ...), `constant:c`, `ring-blaschke:N`,
/// `z-blaschke:N`, `automorphism:re[,im]`, or a full JSON spec.
pub fn parse_symbol(text: &str) -> Result<Symbol> {
    let text = text.trim();
    if text.starts_with('{') {
        return SymbolSpec::parse_json(text);
    }
    match text {
        "identity" => return Ok(Symbol::Identity),
        "lens" => return Ok(Symbol::Lens),
        "singular-inner" => return Ok(Symbol::SingularInner),
        "lens-singular" => return Ok(Symbol::LensSingular),
        _ => {}
    }
    if let Some(rest) = text.strip_prefix("constant:") {
        let c: f64 = rest.parse().map_err(|_| Error::parse(format!("bad constant in {text:?}")))?;
        return Symbol::constant(Complex64::new(c, 0.0));
    }
    if let Some(rest) = text.strip_prefix("automorphism:") {
        let parts: Vec<&str> = rest.split(',').collect();
        let re: f64 = parts[0].parse().map_err(|_| Error::parse("bad automorphism re"))?;
        let im: f64 = if parts.len() > 1 {
            parts[1].parse().map_err(|_| Error::parse("bad automorphism im"))?
        } else {
            0.0
        };
        return Symbol::automorphism(Complex64::new(re, im));
    }
    if let Some(rest) = text.strip_prefix("ring-blaschke:") {
        let n: u32 = rest.parse().map_err(|_| Error::parse("bad ring-blaschke level"))?;
        return Symbol::ring_blaschke(n);
    }
    if let Some(rest) = text.strip_prefix("z-blaschke:") {
        let n: u32 = rest.parse().map_err(|_| Error::parse("bad z-blaschke level"))?;
        return Symbol::z_times_blaschke(Symbol::ring_blaschke(n)?);
    }
    Err(Error::parse(format!("unknown symbol {text:?}")))
}

/// One ring of the step-outer construction below.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StepOuterLevel {
    pub index: u32,
    /// Slowly growing constant M_n = log(n + 1).
    pub m: f64,
    pub beta: f64,
    /// t_n = psi^{-1}(8 / beta_n) / M_n.
    pub t: f64,
    /// r_n = 1 - 1/psi(t_n); the boundary modulus on the n-th arc.
    pub radius: f64,
    /// Arc [start, end) carrying modulus r_n; mass c beta_n.
    pub arc: (f64, f64),
    pub arc_center: f64,
    /// Lower bound (1/9) / (alpha M_n) for the norms of the composed
    /// normalized test functions g_{a_n, r_n}.
    pub norm_lower_bound: f64,
}

/// The outer symbol with step boundary modulus sum r_n 1_{B_n} and its
/// construction data. The composition operator it induces is order bounded
/// into the small Orlicz space, yet the norms ||C_phi g_n|| decay only like
/// 1/log n, which defeats p-summability for every p.
#[derive(Debug, Clone)]
pub struct StepOuterPlan {
    pub levels: Vec<StepOuterLevel>,
    /// Normalization with sum_n beta_n = 1/c over the built levels.
    pub c: f64,
    /// delta2 witness used by the recursion.
    pub alpha: f64,
    /// True when the level cap (radii representable below 1) truncated the
    /// request.
    pub truncated: bool,
    pub symbol: Symbol,
}

/// Smallest representable gap to the unit circle for the step radii; levels
/// that would round past it are dropped with `truncated = true`.
const STEP_RADIUS_FLOOR: f64 = 1e-11;

/// Builds the step-outer symbol for a fast-growth psi (delta2 on-grid
/// required). The beta_n shrink by deterministic halving until
/// t_n = psi^{-1}(8/beta_n)/M_n is increasing and the remainder bound
/// [psi((t_1 + ... + t_{n-1})/alpha) + psi(x_n)] 2^n t_n / psi(t_n) <= 2^{-n}
/// holds, where psi(x)/psi(x/alpha) >= 2^n for x >= x_n.
pub fn step_outer_symbol(psi: &OrliczFunction, requested_levels: u32) -> Result<StepOuterPlan> {
    if requested_levels == 0 || requested_levels > 12 {
        return Err(Error::domain(format!(
            "step-outer level count must be in 1..=12, got {requested_levels}"
        )));
    }
    let grid = crate::grid::GeometricGrid::new(psi.domain_floor(), 1e6 * psi.domain_floor(), 8);
    let delta2 = crate::growth::classify_growth(
        psi,
        crate::growth::GrowthCondition::Delta2,
        None,
        &grid,
    )?;
    if delta2.verdict != crate::growth::Verdict::HoldsOnGrid {
        return Err(Error::domain(format!(
            "step-outer construction needs delta2 on-grid; {} fails it",
            psi.label()
        )));
    }
    let alpha = delta2.witness;

    let mut levels: Vec<StepOuterLevel> = Vec::new();
    let mut truncated = false;
    let mut beta_prev = 1.0f64;
    let mut t_sum = 0.0f64;
    let mut t_prev = 0.0f64;
    'levels: for n in 1..=requested_levels {
        let m_n = ((n + 1) as f64).ln();
        // x_n: the ratio psi(x)/psi(x/alpha) passes 2^n from x_n on
        let target = n as f64 * std::f64::consts::LN_2;
        let ratio = |x: f64| psi.ln_eval(x) - psi.ln_eval(x / alpha);
        let (lo, hi) = num::grow_bracket(ratio, target, 1.0)?;
        let x_n = num::bisect_monotone(ratio, target, lo, hi, 1e-12)?.max(psi.inv(1.0));
        let ln_psi_xn = psi.ln_eval(x_n);

        let mut beta = 0.5 * beta_prev;
        loop {
            let t = psi.inv(8.0 / beta) / m_n;
            if 1.0 / psi.ev(t) < STEP_RADIUS_FLOOR {
                truncated = true;
                break 'levels;
            }
            let increasing = t > t_prev * 1.000_001 || levels.is_empty();
            // remainder bound in log space, with log-sum-exp for the bracket
            let ln_head = if t_sum > 0.0 {
                let a = psi.ln_eval(t_sum / alpha);
                let b = ln_psi_xn;
                a.max(b) + (-(a - b).abs()).exp().ln_1p()
            } else {
                ln_psi_xn
            };
            let lhs = ln_head + n as f64 * std::f64::consts::LN_2 + t.ln() - psi.ln_eval(t);
            let small_enough = lhs <= -(n as f64) * std::f64::consts::LN_2;
            if increasing && small_enough {
                let radius = 1.0 - 1.0 / psi.ev(t);
                levels.push(StepOuterLevel {
                    index: n,
                    m: m_n,
                    beta,
                    t,
                    radius,
                    arc: (0.0, 0.0),
                    arc_center: 0.0,
                    norm_lower_bound: (1.0 / 9.0) / (alpha * m_n),
                });
                beta_prev = beta;
                t_sum += t;
                t_prev = t;
                break;
            }
            beta *= 0.5;
            if beta < 1e-300 {
                return Err(Error::Convergence(
                    "beta halving underflowed before the remainder bound held".into(),
                ));
            }
        }
    }
    if levels.is_empty() {
        return Err(Error::Capacity(
            "no representable level: psi grows too fast for the radius floor".into(),
        ));
    }

    let beta_total: f64 = levels.iter().map(|l| l.beta).sum();
    let c = 1.0 / beta_total;
    let mut acc = 0.0f64;
    let mut arcs = Vec::with_capacity(levels.len());
    for lvl in levels.iter_mut() {
        let len = TAU * c * lvl.beta;
        let end = (acc + len).min(TAU);
        lvl.arc = (acc, end);
        lvl.arc_center = 0.5 * (acc + end);
        arcs.push((acc, end, lvl.radius));
        acc = end;
    }
    // absorb the rounding remainder into the last arc so the circle is tiled
    if let (Some(last_arc), Some(last)) = (arcs.last_mut(), levels.last_mut()) {
        last_arc.1 = TAU;
        last.arc.1 = TAU;
        last.arc_center = 0.5 * (last.arc.0 + TAU);
    }
    let symbol = Symbol::outer_from_arcs(arcs)?;
    Ok(StepOuterPlan { levels, c, alpha, truncated, symbol })
}

/// Export of the zero list of a Blaschke-type symbol as (re, im) CSV.
pub fn write_zeros_csv<W: std::io::Write>(symbol: &Symbol, mut w: W) -> Result<()> {
    let zeros = match symbol {
        Symbol::Blaschke(z) => z.as_slice(),
        Symbol::RingBlaschke { zeros, .. } => zeros.as_slice(),
        Symbol::ZTimesBlaschke(b) => {
            return write_zeros_csv(b, w);
        }
        other => return Err(Error::domain(format!("{} has no zero list", other.kind_name()))),
    };
    writeln!(w, "re,im")?;
    for z in zeros {
        writeln!(w, "{:.17e},{:.17e}", z.re, z.im)?;
    }
    Ok(())
}
