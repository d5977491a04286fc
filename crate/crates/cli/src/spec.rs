//! Small parsers for the function and measure specs accepted on the command
//! line.

use num_complex::Complex64;
use orlicz::bergman::AreaQuadrature;
use orlicz::measure::EmpiricalMeasure;
use orlicz::symbol::{parse_symbol, TestFunction};
use orlicz::{Error, Result};

pub fn scaled_pow2(base: usize, size: f64) -> usize {
    ((base as f64 * size).max(16.0) as usize).next_power_of_two()
}

/// Parses `--f` against `--measure` and returns sampled values with their
/// weights.
///
/// Functions: `const:c`, `step:t:beta` (value t on a set of mass beta),
/// `ur:r` (boundary modulus of the test bump u_{1,r}), `trace:<symbol>`
/// (boundary modulus of a symbol).
/// Measures: `haar` (uniform circle grid), `area` (disk quadrature),
/// `csv:<path>` (re, im, weight atoms; the function is evaluated at the
/// atoms).
pub fn parse_function_on_measure(
    f: &str,
    measure: &str,
    n: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    enum Fun {
        Const(f64),
        Step { t: f64, beta: f64 },
        Ur(f64),
        Trace(orlicz::symbol::Symbol),
    }
    let fun = if let Some(c) = f.strip_prefix("const:") {
        Fun::Const(c.parse().map_err(|_| Error::Parse(format!("bad constant in {f:?}")))?)
    } else if let Some(rest) = f.strip_prefix("step:") {
        let mut it = rest.split(':');
        let t: f64 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad step value in {f:?}")))?;
        let beta: f64 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad step mass in {f:?}")))?;
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::Domain(format!("step mass must be in (0,1], got {beta}")));
        }
        Fun::Step { t, beta }
    } else if let Some(r) = f.strip_prefix("ur:") {
        let r: f64 = r.parse().map_err(|_| Error::Parse(format!("bad radius in {f:?}")))?;
        if !(0.0..1.0).contains(&r) {
            return Err(Error::Domain(format!("bump radius must be in [0,1), got {r}")));
        }
        Fun::Ur(r)
    } else if let Some(sym) = f.strip_prefix("trace:") {
        Fun::Trace(parse_symbol(sym)?)
    } else {
        return Err(Error::Parse(format!("unknown function spec {f:?}")));
    };

    let eval_at = |z: Complex64| -> f64 {
        match &fun {
            Fun::Const(c) => *c,
            Fun::Step { .. } => unreachable!("step handled on the grid"),
            Fun::Ur(r) => TestFunction::new(Complex64::new(1.0, 0.0), *r).expect("valid bump").abs(z),
            Fun::Trace(sym) => sym.eval(z).norm(),
        }
    };

    match measure {
        "haar" => {
            let w = vec![1.0 / n as f64; n];
            let values: Vec<f64> = match &fun {
                Fun::Step { t, beta } => {
                    let cut = (beta * n as f64).round() as usize;
                    (0..n).map(|k| if k < cut { *t } else { 0.0 }).collect()
                }
                Fun::Trace(sym) => sym.trace(n, 1e-6)?.abs_values(),
                _ => (0..n)
                    .map(|k| {
                        let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                        eval_at(Complex64::from_polar(1.0, theta))
                    })
                    .collect(),
            };
            Ok((values, w))
        }
        "area" => {
            let quad = AreaQuadrature::with_panels(64, 6, 256);
            match &fun {
                Fun::Step { t, beta } => {
                    // radial step: value t inside |z| <= sqrt(beta), mass beta
                    let root = beta.sqrt();
                    let (v, w) = quad.sample(|z| if z.norm() <= root { *t } else { 0.0 });
                    Ok((v, w))
                }
                _ => {
                    let (v, w) = quad.sample(|z| eval_at(z * 0.999_999));
                    Ok((v, w))
                }
            }
        }
        other => {
            if let Some(path) = other.strip_prefix("csv:") {
                let file = std::fs::File::open(path)?;
                let mu = EmpiricalMeasure::read_csv(file)?;
                let values: Vec<f64> = match &fun {
                    Fun::Step { t, beta } => {
                        // value t on the first atoms holding mass beta
                        let mut remaining = *beta * mu.total_mass();
                        mu.weights()
                            .iter()
                            .map(|&w| {
                                if remaining > 0.0 {
                                    remaining -= w;
                                    *t
                                } else {
                                    0.0
                                }
                            })
                            .collect()
                    }
                    _ => mu.points().iter().map(|&p| eval_at(p)).collect(),
                };
                Ok((values, mu.weights().to_vec()))
            } else {
                Err(Error::Parse(format!("unknown measure spec {measure:?}")))
            }
        }
    }
}

/// Default profile for a symbol at the given size factor: the exact
/// interval-count route when the symbol has a closed-form chart, the sampled
/// route otherwise.
pub fn profile_for(
    sym: &orlicz::symbol::Symbol,
    size: f64,
) -> Result<orlicz::carleson::CarlesonProfile> {
    use orlicz::carleson::{exact_pullback_profile, profile, pullback, XiGrid};
    use orlicz::GeometricGrid;
    let h = GeometricGrid::new(1e-5, 1e-1, 9);
    let xi = XiGrid::with_contact(scaled_pow2(1 << 12, size), &[0.0]);
    let exact_n = scaled_pow2(1 << 34, size) as u64;
    if let Some(p) = exact_pullback_profile(sym, exact_n, &h, &xi) {
        return Ok(p);
    }
    let n = scaled_pow2(1 << 22, size);
    let trace = sym.trace(n, 1e-6)?;
    let mu = pullback(&trace)?;
    Ok(profile(&mu, &h, &xi))
}
