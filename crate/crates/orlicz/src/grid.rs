//! Geometric (log-spaced) grids shared by the growth classifiers, tail
//! estimators and Carleson profiles.

use serde::{Deserialize, Serialize};

/// A geometric grid from `min` to `max` with a fixed number of points per
/// decade. Endpoints are always included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometricGrid {
    pub min: f64,
    pub max: f64,
    pub per_decade: usize,
}

impl GeometricGrid {
    pub fn new(min: f64, max: f64, per_decade: usize) -> Self {
        assert!(min > 0.0 && max > min && per_decade > 0, "bad grid spec");
        GeometricGrid { min, max, per_decade }
    }

    /// Ascending grid points.
    pub fn points(&self) -> Vec<f64> {
        let decades = (self.max / self.min).log10();
        let n = (decades * self.per_decade as f64).round().max(1.0) as usize;
        let ratio = (self.max / self.min).powf(1.0 / n as f64);
        let mut pts = Vec::with_capacity(n + 1);
        let mut x = self.min;
        for _ in 0..n {
            pts.push(x);
            x *= ratio;
        }
        pts.push(self.max);
        pts
    }

    /// Descending grid points (largest first), the natural order for
    /// Carleson h-grids.
    pub fn points_desc(&self) -> Vec<f64> {
        let mut pts = self.points();
        pts.reverse();
        pts
    }
}
