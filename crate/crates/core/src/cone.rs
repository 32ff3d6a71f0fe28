//! Open cones with closed-form gauges: the positive orthant and the Lorentz
//! (ice-cream) cone.
//!
//! The gauge M(x/y; C) = inf{λ > 0 : x ≤_C λ y} drives every metric formula
//! in this crate. On the orthant it is the max coordinate ratio; on the
//! Lorentz cone it is the larger root of a quadratic in λ.

use rand::Rng;

use crate::error::{GeomError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cone {
    /// Interior of R₊^d: all coordinates strictly positive.
    Orthant(usize),
    /// Λ_d = {x : x₁ > 0, x₁² − x₂² − ... − x_d² > 0}.
    Lorentz(usize),
}

impl Cone {
    pub fn dim(&self) -> usize {
        match self {
            Cone::Orthant(d) | Cone::Lorentz(d) => *d,
        }
    }

    /// Membership margin: positive in the open cone, zero on the boundary.
    pub fn margin(&self, x: &[f64]) -> f64 {
        match self {
            Cone::Orthant(_) => x.iter().copied().fold(f64::INFINITY, f64::min),
            Cone::Lorentz(_) => {
                if x[0] <= 0.0 {
                    return x[0];
                }
                lorentz_quadratic(x)
            }
        }
    }

    pub fn contains_open(&self, x: &[f64]) -> bool {
        x.len() == self.dim() && self.margin(x) > 0.0
    }

    pub fn contains_closed(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self {
            Cone::Orthant(_) => x.iter().all(|v| *v >= -tol),
            Cone::Lorentz(_) => x[0] >= -tol && lorentz_quadratic(x) >= -tol * (1.0 + x[0] * x[0]),
        }
    }

    fn ensure_open(&self, x: &[f64], what: &str) -> Result<()> {
        if x.len() != self.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        if !self.contains_open(x) {
            return Err(GeomError::OutsideCone(format!("{what} {:?}", x)));
        }
        Ok(())
    }

    /// Gauge M(x/y): x may be any vector, y must lie in the open cone.
    /// Returns 0 when x ≤_C 0 (every positive λ works).
    pub fn gauge(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.ensure_open(y, "gauge denominator")?;
        if x.len() != self.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let m = match self {
            Cone::Orthant(_) => x
                .iter()
                .zip(y)
                .map(|(xi, yi)| xi / yi)
                .fold(f64::NEG_INFINITY, f64::max),
            Cone::Lorentz(_) => {
                let qy = lorentz_quadratic(y);
                let qx = lorentz_quadratic(x);
                let b = lorentz_bilinear(x, y);
                let disc = (b * b - qx * qy).max(0.0);
                (b + disc.sqrt()) / qy
            }
        };
        Ok(m.max(0.0))
    }

    /// log M(x/y), the Funk distance on the cone.
    pub fn funk(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.ensure_open(x, "point")?;
        Ok(self.gauge(x, y)?.ln())
    }

    /// Hilbert's projective distance log M(x/y) + log M(y/x).
    pub fn hilbert(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        Ok(self.funk(x, y)? + self.funk(y, x)?)
    }

    /// Order relation x ≤_C y, i.e. y − x in the closed cone.
    pub fn leq(&self, x: &[f64], y: &[f64], tol: f64) -> bool {
        let diff: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
        self.contains_closed(&diff, tol)
    }

    /// Deterministic-seeded interior sample, bounded away from the boundary.
    pub fn sample_interior<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        match self {
            Cone::Orthant(d) => (0..*d).map(|_| rng.random_range(0.2..3.0)).collect(),
            Cone::Lorentz(d) => {
                let rest: Vec<f64> = (0..d - 1).map(|_| rng.random_range(-1.0..1.0)).collect();
                let r: f64 = rest.iter().map(|v| v * v).sum::<f64>().sqrt();
                let head = r + rng.random_range(0.2..2.0);
                let mut x = vec![head];
                x.extend(rest);
                x
            }
        }
    }
}

fn lorentz_quadratic(x: &[f64]) -> f64 {
    x[0] * x[0] - x[1..].iter().map(|v| v * v).sum::<f64>()
}

fn lorentz_bilinear(x: &[f64], y: &[f64]) -> f64 {
    x[0] * y[0] - x[1..].iter().zip(&y[1..]).map(|(a, b)| a * b).sum::<f64>()
}
