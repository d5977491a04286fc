//! Carleson windows and sectors, pullback measures, window-mass profiles
//! rho_mu / K_mu and the composition-operator diagnostics built on them.

mod diagnostics;
mod profile;

pub use diagnostics::{
    compactness_diagnostic, compactness_diagnostic_with_profile, condition_w_table,
    order_bounded_check, psi_carleson_test,
    window_scaling_check, ConditionOutcome, DiagnosticConfig, DiagnosticReport, ObReport,
    PsiCarlesonReport, ScalingReport, WTable, CONDITION_LABELS,
};
pub use profile::{exact_pullback_profile, exact_window_count, profile, CarlesonProfile, XiGrid};

use crate::error::{Error, Result};
use crate::measure::{BoundarySample, EmpiricalMeasure};
use crate::num;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Window geometry: the boundary box W(xi, h) (modulus in (1-h, 1], argument
/// within h of xi) or the sector S(xi, h) (distance to xi below h).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WindowShape {
    #[serde(rename = "W")]
    Box,
    #[serde(rename = "S")]
    Sector,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    /// Angle of the unimodular center xi.
    pub center_angle: f64,
    /// Size h in (0, 1).
    pub size: f64,
    pub shape: WindowShape,
}

impl Window {
    pub fn new(center_angle: f64, size: f64, shape: WindowShape) -> Result<Self> {
        if !(size > 0.0 && size < 1.0) {
            return Err(Error::domain(format!("window size must be in (0,1), got {size}")));
        }
        if !center_angle.is_finite() {
            return Err(Error::domain("window center angle must be finite"));
        }
        Ok(Window { center_angle, size, shape })
    }

    pub fn boxed(center_angle: f64, size: f64) -> Result<Self> {
        Self::new(center_angle, size, WindowShape::Box)
    }

    pub fn sector(center_angle: f64, size: f64) -> Result<Self> {
        Self::new(center_angle, size, WindowShape::Sector)
    }

    /// Membership test; argument comparisons use the reduced angle.
    pub fn contains(&self, z: Complex64) -> bool {
        match self.shape {
            WindowShape::Box => {
                let r = z.norm();
                if r <= 1.0 - self.size || r > 1.0 + 1e-12 {
                    return false;
                }
                let d = num::principal_angle(z.arg() - self.center_angle);
                d.abs() < self.size
            }
            WindowShape::Sector => {
                let xi = Complex64::from_polar(1.0, self.center_angle);
                (z - xi).norm() < self.size
            }
        }
    }
}

/// Pullback of the arc measure under the boundary trace: one atom of mass
/// 1/n at each trace value.
pub fn pullback(trace: &BoundarySample) -> Result<EmpiricalMeasure> {
    let w = trace.weight();
    // Inner-function traces can overshoot |z| = 1 by a rounding ulp; clamp.
    let points: Vec<Complex64> = trace
        .values()
        .iter()
        .map(|&z| {
            let r = z.norm();
            if r > 1.0 {
                z / r
            } else {
                z
            }
        })
        .collect();
    EmpiricalMeasure::new(points, vec![w; trace.n()])
}

/// Exact atom-sum of mu on the window.
pub fn window_measure(mu: &EmpiricalMeasure, w: &Window) -> f64 {
    let terms: Vec<f64> = mu
        .points()
        .iter()
        .zip(mu.weights())
        .map(|(&z, &wt)| if w.contains(z) { wt } else { 0.0 })
        .collect();
    num::pairwise_sum(&terms)
}
