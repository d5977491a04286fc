//! The Orlicz function catalog.
//!
//! An Orlicz function is a convex increasing map on [0, inf) with
//! psi(0) = 0 and psi(x)/x -> inf. The catalog carries closed forms for the
//! value, the left derivative, the inverse and the log-domain variants, so
//! that every downstream computation (Luxemburg norms, chi_K compositions,
//! Carleson products) can stay overflow-safe far beyond the range where the
//! direct value fits in an f64 (e^{x^2} overflows near x = 26.6).
//!
//! Catalog names accepted by [`OrliczFunction::from_name`]:
//! `power:p` (x^p, p > 1), `exp` (e^x - 1), `psi2` (e^{x^2} - 1),
//! `loglog` (exp[log(x+2) loglog(x+2)] - c0), `logpow:alpha`
//! (exp[(log(x+1))^alpha] - 1, alpha > 1) and `spliced-logsq`
//! (linear below sqrt(e), exp[(log x)^2] above).

use crate::error::{Error, Result};
use crate::num;
use std::fmt;
use std::str::FromStr;

/// Default threshold above which "for x large enough" conditions are tested.
pub const DEFAULT_DOMAIN_FLOOR: f64 = 10.0;

const SQRT_E: f64 = 1.648_721_270_700_128_2; // e^{1/2}
const QUARTER_EXP_NEG: f64 = 0.778_800_783_071_404_9; // e^{-1/4}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    /// x^p with p > 1.
    Power(f64),
    /// e^x - 1.
    Exp,
    /// e^{x^2} - 1.
    Psi2,
    /// exp[log(x+2) loglog(x+2)] - 2^{loglog 2}.
    LogLog,
    /// exp[(log(x+1))^alpha] - 1 with alpha > 1.
    LogPow(f64),
    /// e^{-1/4} x below sqrt(e), exp[(log x)^2] above; continuous and C^1
    /// at the knot.
    SplicedLogSq,
}

/// A catalog Orlicz function with closed-form value, derivative, inverse and
/// log-domain evaluation. Immutable after construction; all methods are pure.
#[derive(Debug, Clone, PartialEq)]
pub struct OrliczFunction {
    kind: Kind,
    x0: f64,
    label: String,
}

fn check_nonneg(x: f64, what: &str) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain(format!("{what} must be finite and >= 0, got {x}")));
    }
    Ok(())
}

impl OrliczFunction {
    fn new(kind: Kind, label: String) -> Self {
        OrliczFunction { kind, x0: DEFAULT_DOMAIN_FLOOR, label }
    }

    pub fn power(p: f64) -> Result<Self> {
        if !p.is_finite() || p <= 1.0 {
            return Err(Error::domain(format!("power exponent must be > 1, got {p}")));
        }
        Ok(Self::new(Kind::Power(p), format!("power:{p}")))
    }

    pub fn exp() -> Self {
        Self::new(Kind::Exp, "exp".into())
    }

    pub fn psi2() -> Self {
        Self::new(Kind::Psi2, "psi2".into())
    }

    pub fn loglog() -> Self {
        Self::new(Kind::LogLog, "loglog".into())
    }

    pub fn logpow(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 1.0 {
            return Err(Error::domain(format!("logpow exponent must be > 1, got {alpha}")));
        }
        Ok(Self::new(Kind::LogPow(alpha), format!("logpow:{alpha}")))
    }

    pub fn spliced_logsq() -> Self {
        Self::new(Kind::SplicedLogSq, "spliced-logsq".into())
    }

    /// Parses a catalog name: `power:p`, `exp`, `psi2`, `loglog`,
    /// `logpow:alpha`, `spliced-logsq`.
    pub fn from_name(name: &str) -> Result<Self> {
        let name = name.trim();
        match name {
            "exp" => return Ok(Self::exp()),
            "psi2" => return Ok(Self::psi2()),
            "loglog" => return Ok(Self::loglog()),
            "spliced-logsq" => return Ok(Self::spliced_logsq()),
            _ => {}
        }
        if let Some(p) = name.strip_prefix("power:") {
            let p: f64 = p.parse().map_err(|_| Error::parse(format!("bad exponent in {name:?}")))?;
            return Self::power(p).map_err(|e| Error::parse(e.to_string()));
        }
        if let Some(a) = name.strip_prefix("logpow:") {
            let a: f64 = a.parse().map_err(|_| Error::parse(format!("bad exponent in {name:?}")))?;
            return Self::logpow(a).map_err(|e| Error::parse(e.to_string()));
        }
        Err(Error::parse(format!("unknown Orlicz catalog name {name:?}")))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Threshold above which asymptotic growth conditions are tested.
    pub fn domain_floor(&self) -> f64 {
        self.x0
    }

    pub fn with_domain_floor(mut self, x0: f64) -> Self {
        self.x0 = x0;
        self
    }

    /// psi(x). Overflow past f64 range comes back as `inf`, which is a valid
    /// value for modular computations; use [`Self::log1p_eval`] for the
    /// overflow-safe variant.
    pub fn eval(&self, x: f64) -> Result<f64> {
        check_nonneg(x, "argument of psi")?;
        Ok(self.ev(x))
    }

    pub(crate) fn ev(&self, x: f64) -> f64 {
        match self.kind {
            Kind::Power(p) => x.powf(p),
            Kind::Exp => x.exp_m1(),
            Kind::Psi2 => (x * x).exp_m1(),
            Kind::LogLog => {
                let g = Self::loglog_g(x);
                if g > 700.0 {
                    f64::INFINITY
                } else {
                    g.exp() - Self::loglog_c0()
                }
            }
            Kind::LogPow(a) => (x.ln_1p().powf(a)).exp_m1(),
            Kind::SplicedLogSq => {
                if x <= SQRT_E {
                    QUARTER_EXP_NEG * x
                } else {
                    let l = x.ln();
                    (l * l).exp()
                }
            }
        }
    }

    fn loglog_g(x: f64) -> f64 {
        let l = (x + 2.0).ln();
        l * l.ln()
    }

    fn loglog_c0() -> f64 {
        // 2^{loglog 2} = exp(log 2 * loglog 2)
        (std::f64::consts::LN_2 * std::f64::consts::LN_2.ln()).exp()
    }

    /// Left derivative psi'(x).
    pub fn deriv(&self, x: f64) -> Result<f64> {
        check_nonneg(x, "argument of psi'")?;
        Ok(self.dv(x))
    }

    pub(crate) fn dv(&self, x: f64) -> f64 {
        match self.kind {
            Kind::Power(p) => p * x.powf(p - 1.0),
            Kind::Exp => x.exp(),
            Kind::Psi2 => 2.0 * x * (x * x).exp(),
            Kind::LogLog => {
                let l = (x + 2.0).ln();
                Self::loglog_g(x).exp() * (1.0 + l.ln()) / (x + 2.0)
            }
            Kind::LogPow(a) => {
                let l = x.ln_1p();
                if l == 0.0 {
                    return 0.0;
                }
                (l.powf(a)).exp() * a * l.powf(a - 1.0) / (x + 1.0)
            }
            Kind::SplicedLogSq => {
                if x <= SQRT_E {
                    QUARTER_EXP_NEG
                } else {
                    let l = x.ln();
                    (l * l).exp() * 2.0 * l / x
                }
            }
        }
    }

    /// log psi'(x), finite wherever psi'(x) > 0.
    pub(crate) fn ln_deriv(&self, x: f64) -> f64 {
        match self.kind {
            Kind::Power(p) => p.ln() + (p - 1.0) * x.ln(),
            Kind::Exp => x,
            Kind::Psi2 => (2.0 * x).ln() + x * x,
            Kind::LogLog => {
                let l = (x + 2.0).ln();
                Self::loglog_g(x) + (1.0 + l.ln()).ln() - l
            }
            Kind::LogPow(a) => {
                let l = x.ln_1p();
                l.powf(a) + a.ln() + (a - 1.0) * l.ln() - x.ln_1p()
            }
            Kind::SplicedLogSq => {
                if x <= SQRT_E {
                    -0.25
                } else {
                    let l = x.ln();
                    l * l + (2.0 * l).ln() - l
                }
            }
        }
    }

    /// log(1 + psi(x)), finite for every finite x.
    pub fn log1p_eval(&self, x: f64) -> Result<f64> {
        check_nonneg(x, "argument of log(1+psi)")?;
        let v = self.ev(x);
        if v.is_finite() {
            Ok(v.ln_1p())
        } else {
            Ok(self.ln_eval(x))
        }
    }

    /// log psi(x) for x > 0, overflow-safe.
    pub fn ln_eval(&self, x: f64) -> f64 {
        match self.kind {
            Kind::Power(p) => p * x.ln(),
            Kind::Exp => {
                if x > 36.0 {
                    x + (-((-x).exp())).ln_1p()
                } else {
                    x.exp_m1().ln()
                }
            }
            Kind::Psi2 => {
                let s = x * x;
                if s > 36.0 {
                    s + (-((-s).exp())).ln_1p()
                } else {
                    s.exp_m1().ln()
                }
            }
            Kind::LogLog => {
                let g = Self::loglog_g(x);
                if g > 36.0 {
                    g + (-(Self::loglog_c0() * (-g).exp())).ln_1p()
                } else {
                    (g.exp() - Self::loglog_c0()).ln()
                }
            }
            Kind::LogPow(a) => {
                let s = x.ln_1p().powf(a);
                if s > 36.0 {
                    s + (-((-s).exp())).ln_1p()
                } else {
                    s.exp_m1().ln()
                }
            }
            Kind::SplicedLogSq => {
                if x <= SQRT_E {
                    x.ln() - 0.25
                } else {
                    let l = x.ln();
                    l * l
                }
            }
        }
    }

    /// psi^{-1}(y), closed form where available, bracketed bisection for the
    /// `loglog` entry. Relative tolerance 1e-12.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if !y.is_finite() || y < 0.0 {
            return Err(Error::domain(format!("inverse argument must be finite and >= 0, got {y}")));
        }
        Ok(self.inv(y))
    }

    pub(crate) fn inv(&self, y: f64) -> f64 {
        match self.kind {
            Kind::Power(p) => y.powf(1.0 / p),
            Kind::Exp => y.ln_1p(),
            Kind::Psi2 => y.ln_1p().sqrt(),
            Kind::LogPow(a) => (y.ln_1p().powf(1.0 / a)).exp() - 1.0,
            Kind::SplicedLogSq => {
                if y <= 0.25f64.exp() {
                    y / QUARTER_EXP_NEG
                } else {
                    (y.ln().sqrt()).exp()
                }
            }
            Kind::LogLog => {
                if y == 0.0 {
                    return 0.0;
                }
                let (lo, hi) = num::grow_bracket(|t| self.ev(t), y, 1.0)
                    .expect("loglog inverse bracket");
                num::bisect_monotone(|t| self.ev(t), y, lo, hi, 1e-14).expect("loglog inverse")
            }
        }
    }

    /// psi^{-1}(e^{ln_y}), usable when y itself would overflow.
    pub(crate) fn inv_from_ln(&self, ln_y: f64) -> f64 {
        // ln(1+y) = ln_y + ln(1 + 1/y)
        let ln1p_y = if ln_y > 36.0 {
            ln_y + ((-ln_y).exp()).ln_1p()
        } else {
            ln_y.exp().ln_1p()
        };
        match self.kind {
            Kind::Power(p) => (ln_y / p).exp(),
            Kind::Exp => ln1p_y,
            Kind::Psi2 => ln1p_y.sqrt(),
            Kind::LogPow(a) => (ln1p_y.powf(1.0 / a)).exp() - 1.0,
            Kind::SplicedLogSq => {
                if ln_y <= 0.25 {
                    (ln_y + 0.25).exp()
                } else {
                    (ln_y.sqrt()).exp()
                }
            }
            Kind::LogLog => {
                let (lo, hi) = num::grow_bracket(|t| self.ln_eval(t), ln_y, 1.0)
                    .expect("loglog log-inverse bracket");
                num::bisect_monotone(|t| self.ln_eval(t), ln_y, lo, hi, 1e-14)
                    .expect("loglog log-inverse")
            }
        }
    }

    /// Complementary (Legendre-conjugate) function
    /// phi(y) = sup_{t>=0} (y t - psi(t)), by bracketing psi' around y and
    /// evaluating the objective at the stationary point.
    pub fn complementary_eval(&self, y: f64) -> Result<f64> {
        if !y.is_finite() || y < 0.0 {
            return Err(Error::domain(format!("conjugate argument must be finite and >= 0, got {y}")));
        }
        if y == 0.0 {
            return Ok(0.0);
        }
        if self.dv(0.0) >= y {
            // objective decreasing from t = 0
            return Ok(0.0);
        }
        let (lo, hi) = num::grow_bracket(|t| self.dv(t), y, 1.0)
            .map_err(|_| Error::Convergence("conjugate maximizer escaped bracket".into()))?;
        let t = num::bisect_monotone(|t| self.dv(t), y, lo, hi, 1e-13)?;
        // Golden polish guards the piecewise entries where psi' has a kink.
        let (t, v) = num::golden_max(
            |s| y * s - self.ev(s),
            0.5 * t,
            (1.5 * t).max(t + 1e-12),
            120,
        );
        let _ = t;
        Ok(v.max(0.0))
    }

    /// Numeric inverse of the complementary function, for the
    /// psi^{-1} phi^{-1} >= id checks.
    pub fn complementary_inverse(&self, v: f64) -> Result<f64> {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::domain("conjugate inverse argument must be >= 0"));
        }
        if v == 0.0 {
            return Ok(0.0);
        }
        let f = |y: f64| self.complementary_eval(y).unwrap_or(f64::INFINITY);
        let (lo, hi) = num::grow_bracket(f, v, 1.0)?;
        num::bisect_monotone(f, v, lo, hi, 1e-12)
    }

    /// chi_K(x) = psi(K psi^{-1}(x)).
    pub fn chi(&self, k: f64, x: f64) -> Result<f64> {
        if !k.is_finite() || k <= 0.0 {
            return Err(Error::domain(format!("chi constant must be > 0, got {k}")));
        }
        check_nonneg(x, "argument of chi")?;
        Ok(self.ev(k * self.inv(x)))
    }

    /// log chi_K(e^{ln_x}), overflow-safe in both directions.
    pub fn ln_chi(&self, k: f64, ln_x: f64) -> f64 {
        self.ln_eval(k * self.inv_from_ln(ln_x))
    }

    /// Verifies the construction-time invariants on a log grid over
    /// [x0, 1e6 x0]: strict growth, superlinearity, convexity (chord test)
    /// and inverse-of-value identity.
    pub fn validate(&self) -> Result<()> {
        if self.ev(0.0) != 0.0 {
            return Err(Error::domain(format!("{}: psi(0) != 0", self.label)));
        }
        let grid = crate::grid::GeometricGrid::new(self.x0, 1e6 * self.x0, 8).points();
        let mut prev = self.ev(self.x0 * 0.5);
        for &x in &grid {
            let v = self.ev(x);
            if v.is_finite() {
                if v <= prev {
                    return Err(Error::domain(format!("{}: not strictly increasing at {x}", self.label)));
                }
                let back = self.inv(v);
                if num::rel_diff(back, x) > 1e-10 {
                    return Err(Error::domain(format!(
                        "{}: inverse(eval({x})) = {back}, off by more than 1e-10",
                        self.label
                    )));
                }
                prev = v;
            }
        }
        // superlinearity: log psi(x) - log x strictly larger at the top
        let top = 1e6 * self.x0;
        let low_ratio = self.ln_eval(self.x0) - self.x0.ln();
        let high_ratio = self.ln_eval(top) - top.ln();
        if high_ratio <= low_ratio {
            return Err(Error::domain(format!("{}: psi(x)/x not growing", self.label)));
        }
        // convexity via chords on consecutive grid triples (finite values only)
        for w in grid.windows(3) {
            let (x, y, z) = (w[0], w[1], w[2]);
            let (fx, fy, fz) = (self.ev(x), self.ev(y), self.ev(z));
            if fx.is_finite() && fz.is_finite() {
                let chord = fx + (fz - fx) * (y - x) / (z - x);
                if fy > chord * (1.0 + 1e-12) {
                    return Err(Error::domain(format!("{}: convexity fails at {y}", self.label)));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for OrliczFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl FromStr for OrliczFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_name(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rel_diff;

    fn catalog() -> Vec<OrliczFunction> {
        vec![
            OrliczFunction::power(2.0).unwrap(),
            OrliczFunction::exp(),
            OrliczFunction::psi2(),
            OrliczFunction::loglog(),
            OrliczFunction::logpow(1.5).unwrap(),
            OrliczFunction::spliced_logsq(),
        ]
    }

    #[test]
    fn eval_examples() {
        assert_eq!(OrliczFunction::exp().eval(0.0).unwrap(), 0.0);
        let psi2 = OrliczFunction::psi2();
        assert!(rel_diff(psi2.eval(1.0).unwrap(), std::f64::consts::E - 1.0) < 1e-12);
        // below the knot the spliced entry is linear with slope e^{-1/4}
        let spl = OrliczFunction::spliced_logsq();
        assert!(rel_diff(spl.eval(1.0).unwrap(), (-0.25f64).exp()) < 1e-12);
        assert!((spl.eval(1.0).unwrap() - 0.778_800_8).abs() < 1e-6);
    }

    #[test]
    fn spliced_knot_is_continuous_and_c1() {
        let spl = OrliczFunction::spliced_logsq();
        let left = spl.eval(SQRT_E * (1.0 - 1e-12)).unwrap();
        let right = spl.eval(SQRT_E * (1.0 + 1e-12)).unwrap();
        assert!(rel_diff(left, right) < 1e-9);
        let dl = spl.deriv(SQRT_E * (1.0 - 1e-9)).unwrap();
        let dr = spl.deriv(SQRT_E * (1.0 + 1e-9)).unwrap();
        assert!(rel_diff(dl, dr) < 1e-6);
    }

    #[test]
    fn inverse_examples() {
        let exp = OrliczFunction::exp();
        assert!(rel_diff(exp.inverse(15.0).unwrap(), 16.0f64.ln()) < 1e-12);
        let psi2 = OrliczFunction::psi2();
        assert!(rel_diff(psi2.inverse(1.0).unwrap(), std::f64::consts::LN_2.sqrt()) < 1e-12);
        assert!((psi2.inverse(1.0).unwrap() - 0.832_554_6).abs() < 1e-6);
        let sq = OrliczFunction::power(2.0).unwrap();
        assert!(rel_diff(sq.inverse(4.0).unwrap(), 2.0) < 1e-12);
    }

    #[test]
    fn inverse_round_trip_whole_catalog() {
        for psi in catalog() {
            for k in 0..80 {
                let x = 1e-3 * 10f64.powf(k as f64 * 0.09);
                let v = psi.ev(x);
                if v.is_finite() && v > 0.0 {
                    assert!(
                        rel_diff(psi.inv(v), x) < 1e-10,
                        "{}: round trip at {x}",
                        psi.label()
                    );
                }
            }
        }
    }

    #[test]
    fn log_inverse_matches_inverse() {
        for psi in catalog() {
            for &y in &[0.5, 3.0, 1e4, 1e12] {
                let a = psi.inv(y);
                let b = psi.inv_from_ln(y.ln());
                assert!(rel_diff(a, b) < 1e-9, "{}: {y}", psi.label());
            }
        }
    }

    #[test]
    fn log_eval_matches_eval_and_extends_it() {
        for psi in catalog() {
            for &x in &[0.7, 3.0, 12.0, 25.0] {
                let v = psi.ev(x);
                assert!(rel_diff(v.ln(), psi.ln_eval(x)) < 1e-10, "{}: {x}", psi.label());
            }
        }
        // beyond the direct overflow point
        let psi2 = OrliczFunction::psi2();
        assert!(psi2.ev(40.0).is_infinite());
        assert!(rel_diff(psi2.ln_eval(40.0), 1600.0) < 1e-12);
    }

    #[test]
    fn conjugate_examples() {
        let sq = OrliczFunction::power(2.0).unwrap();
        // sup(2t - t^2) = 1
        assert!(rel_diff(sq.complementary_eval(2.0).unwrap(), 1.0) < 1e-9);
        for psi in catalog() {
            assert_eq!(psi.complementary_eval(0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn youngs_inequality_on_grid() {
        for psi in catalog() {
            for i in 0..12 {
                for j in 0..12 {
                    let x = 0.05 * 1.9f64.powi(i);
                    let y = 0.05 * 1.9f64.powi(j);
                    let lhs = x * y;
                    let v = psi.ev(x);
                    if !v.is_finite() {
                        continue;
                    }
                    let rhs = v + psi.complementary_eval(y).unwrap();
                    assert!(
                        lhs <= rhs * (1.0 + 1e-12) + 1e-12,
                        "{}: Young fails at ({x}, {y}): {lhs} > {rhs}",
                        psi.label()
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_product_inequality() {
        // psi^{-1}(t) phi^{-1}(t) >= t on a grid
        for psi in catalog() {
            for k in 0..10 {
                let t = 0.1 * 10f64.powi(k % 6);
                let a = psi.inv(t);
                let b = psi.complementary_inverse(t).unwrap();
                assert!(
                    a * b >= t * (1.0 - 1e-8),
                    "{}: psi^-1 phi^-1 < id at {t}: {} * {b}",
                    psi.label(),
                    a
                );
            }
        }
    }

    #[test]
    fn chi_examples() {
        let exp = OrliczFunction::exp();
        // chi_K(x) = (1+x)^K - 1 for e^x - 1
        assert!(rel_diff(exp.chi(2.0, 3.0).unwrap(), 15.0) < 1e-10);
        let psi2 = OrliczFunction::psi2();
        assert!(rel_diff(psi2.chi(1.0, 7.0).unwrap(), 7.0) < 1e-10);
        // psi2(2 sqrt(log 2)) = e^{4 log 2} - 1 = 15
        assert!(rel_diff(psi2.chi(2.0, 1.0).unwrap(), 15.0) < 1e-10);
    }

    #[test]
    fn chi_monotone_in_k_and_x() {
        for psi in catalog() {
            let mut prev = 0.0;
            for i in 1..=12 {
                let k = 0.25 * i as f64;
                let v = psi.chi(k, 5.0).unwrap();
                assert!(v >= prev, "{}: chi not monotone in K", psi.label());
                prev = v;
            }
            let mut prev = 0.0;
            for i in 1..=12 {
                let x = 0.5 * i as f64;
                let v = psi.chi(1.7, x).unwrap();
                assert!(v >= prev, "{}: chi not monotone in x", psi.label());
                prev = v;
            }
        }
    }

    #[test]
    fn chi_one_sided_bounds() {
        for psi in catalog() {
            for &x in &[0.3, 2.0, 40.0] {
                assert!(psi.chi(0.5, x).unwrap() <= x * (1.0 + 1e-10));
                assert!(psi.chi(2.0, x).unwrap() >= x * (1.0 - 1e-10));
            }
        }
    }

    #[test]
    fn ln_chi_matches_direct_chi() {
        for psi in catalog() {
            for &x in &[2.0, 50.0, 1e4] {
                let direct = psi.chi(1.5, x).unwrap();
                if direct.is_finite() && direct > 0.0 {
                    assert!(
                        rel_diff(psi.ln_chi(1.5, x.ln()), direct.ln()) < 1e-9,
                        "{}: ln_chi at {x}",
                        psi.label()
                    );
                }
            }
        }
    }

    #[test]
    fn name_round_trip_and_rejects() {
        for psi in catalog() {
            let again = OrliczFunction::from_name(psi.label()).unwrap();
            assert_eq!(psi.label(), again.label());
        }
        assert!(OrliczFunction::from_name("power:1").is_err());
        assert!(OrliczFunction::from_name("power:abc").is_err());
        assert!(OrliczFunction::from_name("logpow:0.5").is_err());
        assert!(OrliczFunction::from_name("gaussian").is_err());
        assert!(OrliczFunction::from_name("power:").is_err());
        assert!(OrliczFunction::from_name("power:inf").is_err());
    }

    #[test]
    fn catalog_validates() {
        for psi in catalog() {
            psi.validate().unwrap_or_else(|e| panic!("{e}"));
        }
    }

    #[test]
    fn domain_errors() {
        let psi2 = OrliczFunction::psi2();
        assert!(psi2.eval(-1.0).is_err());
        assert!(psi2.eval(f64::NAN).is_err());
        assert!(psi2.inverse(f64::INFINITY).is_err());
        assert!(psi2.chi(0.0, 1.0).is_err());
    }

    #[test]
    fn derivative_is_consistent_with_finite_differences() {
        for psi in catalog() {
            for &x in &[0.4, 2.0, 8.0] {
                let h = 1e-6 * x;
                let fd = (psi.ev(x + h) - psi.ev(x - h)) / (2.0 * h);
                let an = psi.dv(x);
                assert!(
                    rel_diff(fd, an) < 1e-4,
                    "{}: derivative mismatch at {x}: fd {fd} vs {an}",
                    psi.label()
                );
            }
        }
    }
}
