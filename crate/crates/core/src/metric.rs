//! Funk, reverse-Funk and Hilbert distances, geodesic parameterizations, and
//! metric balls.
//!
//! For a polytope the gauge of the lifted cone reduces to a max over facet
//! slack ratios; for an ellipse the cone over the body is linearly isomorphic
//! to a Lorentz cone, giving a quadratic closed form. The cross-ratio
//! definition of the Hilbert distance is kept as an independent evaluation
//! route and checked against the gauge formulas in the tests.

use crate::body::{BodyKind, ConvexBody};
use crate::error::{GeomError, Result};
use crate::linalg;
use crate::region::RegionSample;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Funk,
    ReverseFunk,
    Hilbert,
}

impl MetricKind {
    pub fn name(&self) -> &'static str {
        match self {
            MetricKind::Funk => "funk",
            MetricKind::ReverseFunk => "reverse_funk",
            MetricKind::Hilbert => "hilbert",
        }
    }
}

impl std::str::FromStr for MetricKind {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "funk" => Ok(MetricKind::Funk),
            "rev" | "reverse_funk" | "reverse-funk" => Ok(MetricKind::ReverseFunk),
            "hilbert" | "hil" => Ok(MetricKind::Hilbert),
            other => Err(GeomError::Parse(format!("unknown metric kind '{other}'"))),
        }
    }
}

/// A nonnegative distance value tagged with the metric that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakMetricValue {
    pub value: f64,
    pub kind: MetricKind,
}

/// Gauge M(x/y; C) of the cone over the body: x is any vector of R^{n+1},
/// y the lift of an interior point (or any open-cone element).
pub fn gauge_lifted(body: &ConvexBody, x: &[f64], y: &[f64]) -> Result<f64> {
    let n = body.dim();
    if x.len() != n + 1 || y.len() != n + 1 {
        return Err(GeomError::DimensionMismatch {
            expected: n + 1,
            got: if x.len() != n + 1 { x.len() } else { y.len() },
        });
    }
    match body.kind() {
        BodyKind::Polytope => {
            let mut m = f64::NEG_INFINITY;
            for i in 0..body.facets().len() {
                let denom = body.dual_pairing(i, y);
                if denom <= 0.0 {
                    return Err(GeomError::OutsideCone(format!(
                        "gauge denominator {:?} is not in the open cone",
                        y
                    )));
                }
                m = m.max(body.dual_pairing(i, x) / denom);
            }
            Ok(m.max(0.0))
        }
        BodyKind::Ellipse => {
            // Map the cone over the ellipse to Λ₃ by
            // (x₁, x₂, s) ↦ (s, (x₁ - c₁ s)/r₁, (x₂ - c₂ s)/r₂).
            let to_lorentz = |v: &[f64]| -> [f64; 3] {
                let c = body.center();
                let r = body.axes();
                [
                    v[2],
                    (v[0] - c[0] * v[2]) / r[0],
                    (v[1] - c[1] * v[2]) / r[1],
                ]
            };
            let lx = to_lorentz(x);
            let ly = to_lorentz(y);
            let qy = ly[0] * ly[0] - ly[1] * ly[1] - ly[2] * ly[2];
            if ly[0] <= 0.0 || qy <= 0.0 {
                return Err(GeomError::OutsideCone(format!(
                    "gauge denominator {:?} is not in the open cone",
                    y
                )));
            }
            let qx = lx[0] * lx[0] - lx[1] * lx[1] - lx[2] * lx[2];
            let b = lx[0] * ly[0] - lx[1] * ly[1] - lx[2] * ly[2];
            let disc = (b * b - qx * qy).max(0.0);
            Ok(((b + disc.sqrt()) / qy).max(0.0))
        }
    }
}

/// Gauge of two body points (both lifted internally); y must be interior.
pub fn gauge(body: &ConvexBody, x: &[f64], y: &[f64]) -> Result<f64> {
    body.ensure_interior(y, "gauge denominator")?;
    gauge_lifted(body, &linalg::lift(x), &linalg::lift(y))
}

/// Funk distance log M(x/y); both points interior.
pub fn funk_dist(body: &ConvexBody, x: &[f64], y: &[f64]) -> Result<WeakMetricValue> {
    body.ensure_interior(x, "first point")?;
    body.ensure_interior(y, "second point")?;
    Ok(WeakMetricValue {
        value: funk_raw(body, x, y),
        kind: MetricKind::Funk,
    })
}

/// Reverse-Funk distance rev(x, y) = funk(y, x). The first argument must be
/// interior; the second may lie in the closed body (continuous extension).
pub fn reverse_funk_dist(body: &ConvexBody, x: &[f64], y: &[f64]) -> Result<WeakMetricValue> {
    body.ensure_interior(x, "first point")?;
    if !body.is_in_closure(y) {
        return Err(GeomError::OutsidePoint(format!("{:?}", y)));
    }
    Ok(WeakMetricValue {
        value: funk_raw(body, y, x),
        kind: MetricKind::ReverseFunk,
    })
}

/// Hilbert distance funk + rev; symmetric, zero iff the points coincide.
pub fn hilbert_dist(body: &ConvexBody, x: &[f64], y: &[f64]) -> Result<WeakMetricValue> {
    body.ensure_interior(x, "first point")?;
    body.ensure_interior(y, "second point")?;
    Ok(WeakMetricValue {
        value: funk_raw(body, x, y) + funk_raw(body, y, x),
        kind: MetricKind::Hilbert,
    })
}

/// Distance in the chosen metric, as a bare f64.
pub fn dist(body: &ConvexBody, x: &[f64], y: &[f64], kind: MetricKind) -> Result<f64> {
    Ok(match kind {
        MetricKind::Funk => funk_dist(body, x, y)?.value,
        MetricKind::ReverseFunk => reverse_funk_dist(body, x, y)?.value,
        MetricKind::Hilbert => hilbert_dist(body, x, y)?.value,
    })
}

/// funk(x, y) without interiority checks; callers guarantee that y is
/// interior and x lies in the closed body. Nearly coincident points give
/// exactly 0 to avoid log-ratio cancellation noise.
pub(crate) fn funk_raw(body: &ConvexBody, x: &[f64], y: &[f64]) -> f64 {
    if linalg::dist(x, y) < body.eps() {
        return 0.0;
    }
    match body.kind() {
        BodyKind::Polytope => {
            let mut m = f64::NEG_INFINITY;
            for i in 0..body.facets().len() {
                m = m.max(body.slack(i, x) / body.slack(i, y));
            }
            m.ln().max(0.0)
        }
        BodyKind::Ellipse => gauge_lifted(body, &linalg::lift(x), &linalg::lift(y))
            .map(|g| g.ln().max(0.0))
            .unwrap_or(f64::INFINITY),
    }
}

/// Hilbert distance through the cross-ratio definition
/// log (|zx|/|zy|)·(|wy|/|wx|) with w, x, y, z in order along the line.
/// Independent of the gauge route; used as a verification oracle.
pub fn hilbert_dist_cross_ratio(body: &ConvexBody, x: &[f64], y: &[f64]) -> Result<f64> {
    body.ensure_interior(x, "first point")?;
    body.ensure_interior(y, "second point")?;
    if linalg::dist(x, y) < body.eps() {
        return Ok(0.0);
    }
    let (w, z) = body.line_boundary_hits(x, y)?;
    let zx = linalg::dist(&z, x);
    let zy = linalg::dist(&z, y);
    let wy = linalg::dist(&w, y);
    let wx = linalg::dist(&w, x);
    Ok((zx / zy * (wy / wx)).ln())
}

/// Funk distance through the cross-ratio factor |zx|/|zy|.
pub fn funk_dist_cross_ratio(body: &ConvexBody, x: &[f64], y: &[f64]) -> Result<f64> {
    body.ensure_interior(x, "first point")?;
    body.ensure_interior(y, "second point")?;
    if linalg::dist(x, y) < body.eps() {
        return Ok(0.0);
    }
    let (_, z) = body.line_boundary_hits(x, y)?;
    Ok((linalg::dist(&z, x) / linalg::dist(&z, y)).ln())
}

/// A straight-segment geodesic from x to y in the chosen metric, with the
/// closed-form parameterization by arc length.
#[derive(Debug, Clone)]
pub struct Geodesic {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub kind: MetricKind,
    pub length: f64,
    /// Boundary hit beyond x (w) and beyond y (z) on the line through x, y.
    w: Vec<f64>,
    z: Vec<f64>,
}

impl Geodesic {
    /// Point at parameter t ∈ [0, length].
    ///
    /// Funk: |z γ(t)| = |z x| e^{-t}. Reverse-Funk: |w γ(t)| = |w x| e^{t}.
    /// Hilbert: the along-line cross-ratio equation e^t = (X(W+s))/(W(X-s))
    /// inverted for the Euclidean arc coordinate s.
    pub fn point_at(&self, t: f64) -> Result<Vec<f64>> {
        if !(-1e-12..=self.length + 1e-12).contains(&t) {
            return Err(GeomError::InvalidArgument(format!(
                "geodesic parameter {t} outside [0, {}]",
                self.length
            )));
        }
        let t = t.clamp(0.0, self.length);
        match self.kind {
            MetricKind::Funk => {
                let toward = linalg::sub(&self.x, &self.z);
                Ok(linalg::axpy(&self.z, (-t).exp(), &toward))
            }
            MetricKind::ReverseFunk => {
                let toward = linalg::sub(&self.x, &self.w);
                Ok(linalg::axpy(&self.w, t.exp(), &toward))
            }
            MetricKind::Hilbert => {
                let big_x = linalg::dist(&self.z, &self.x);
                let big_w = linalg::dist(&self.w, &self.x);
                let et = t.exp();
                let s = big_x * big_w * (et - 1.0) / (big_x + big_w * et);
                let dir = linalg::normalize(&linalg::sub(&self.y, &self.x));
                Ok(linalg::axpy(&self.x, s, &dir))
            }
        }
    }
}

/// Straight-segment geodesic between two distinct interior points.
pub fn geodesic(body: &ConvexBody, x: &[f64], y: &[f64], kind: MetricKind) -> Result<Geodesic> {
    body.ensure_interior(x, "first point")?;
    body.ensure_interior(y, "second point")?;
    if linalg::dist(x, y) < body.eps() {
        return Err(GeomError::CoincidentPoints);
    }
    let (w, z) = body.line_boundary_hits(x, y)?;
    let length = dist(body, x, y, kind)?;
    Ok(Geodesic {
        x: x.to_vec(),
        y: y.to_vec(),
        kind,
        length,
        w,
        z,
    })
}

/// Boundary of the right ball B(center, r) = {x : d(x, center) ≤ r}, sampled
/// by radial bisection in `samples` directions (2D bodies).
///
/// In the Funk and reverse-Funk metrics the distance to the center can stay
/// bounded toward parts of the body boundary; directions in which the ball
/// reaches the boundary of the body contribute no point.
pub fn ball_boundary(
    body: &ConvexBody,
    center: &[f64],
    radius: f64,
    kind: MetricKind,
    samples: usize,
) -> Result<RegionSample> {
    if samples < 3 {
        return Err(GeomError::InvalidArgument(format!(
            "need at least 3 sample directions, got {samples}"
        )));
    }
    if body.dim() != 2 {
        return Err(GeomError::InvalidArgument(
            "ball boundaries are sampled for 2D bodies only".into(),
        ));
    }
    if radius < 0.0 {
        return Err(GeomError::InvalidArgument(format!(
            "negative radius {radius}"
        )));
    }
    body.ensure_interior(center, "center")?;
    if radius == 0.0 {
        return Ok(RegionSample {
            points: vec![center.to_vec(); samples],
            closed_hint: true,
        });
    }
    let mut points = Vec::with_capacity(samples);
    for k in 0..samples {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / samples as f64;
        let dir = vec![theta.cos(), theta.sin()];
        let (_, t_max) = body.line_param_range(center, &dir)?;
        // d(center + s·dir, center) is increasing in s along the ray.
        let f = |s: f64| -> f64 {
            let p = linalg::axpy(center, s, &dir);
            funk_raw(body, &p, center)
                + if kind == MetricKind::Funk {
                    0.0
                } else {
                    funk_raw(body, center, &p)
                }
        };
        let g = |s: f64| match kind {
            MetricKind::Funk => {
                let p = linalg::axpy(center, s, &dir);
                funk_raw(body, &p, center)
            }
            MetricKind::ReverseFunk => {
                let p = linalg::axpy(center, s, &dir);
                funk_raw(body, center, &p)
            }
            MetricKind::Hilbert => f(s),
        };
        let hi = t_max * (1.0 - 1e-13);
        if g(hi) < radius {
            continue; // ball reaches the body boundary in this direction
        }
        let mut lo = 0.0;
        let mut hi = hi;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) < radius {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-16 * (1.0 + hi) {
                break;
            }
        }
        points.push(linalg::axpy(center, 0.5 * (lo + hi), &dir));
    }
    Ok(RegionSample {
        points,
        closed_hint: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::ConvexBody;

    const LN2: f64 = std::f64::consts::LN_2;

    fn square() -> ConvexBody {
        ConvexBody::square()
    }

    #[test]
    fn square_funk_rev_hilbert_frozen_values() {
        let b = square();
        let x = [0.0, 0.0];
        let y = [0.5, 0.0];
        // Cross-ratio factors with z = (1,0), w = (-1,0).
        assert!((funk_dist(&b, &x, &y).unwrap().value - LN2).abs() < 1e-15);
        assert!((reverse_funk_dist(&b, &x, &y).unwrap().value - 1.5f64.ln()).abs() < 1e-15);
        assert!((hilbert_dist(&b, &x, &y).unwrap().value - 3.0f64.ln()).abs() < 1e-15);
        // Identity of indiscernibles and symmetry of hil.
        assert_eq!(funk_dist(&b, &x, &x).unwrap().value, 0.0);
        let h1 = hilbert_dist(&b, &x, &y).unwrap().value;
        let h2 = hilbert_dist(&b, &y, &x).unwrap().value;
        assert!((h1 - h2).abs() < 1e-15);
        // Asymmetry witness for funk.
        let f_xy = funk_dist(&b, &x, &y).unwrap().value;
        let f_yx = funk_dist(&b, &y, &x).unwrap().value;
        assert!((f_xy - f_yx).abs() > 0.2);
    }

    #[test]
    fn simplex_matches_coordinate_ratio_oracle() {
        // Barycentric slacks of the standard 2-simplex reproduce the
        // coordinate formula on the orthant cross-section.
        let b = ConvexBody::standard_simplex(2).unwrap();
        let x = [1.0 / 3.0, 1.0 / 3.0];
        let y = [1.0 / 7.0, 2.0 / 7.0];
        let f = funk_dist(&b, &x, &y).unwrap().value;
        assert!((f - (7.0f64 / 3.0).ln()).abs() < 1e-12, "funk {f}");
        let h = hilbert_dist(&b, &x, &y).unwrap().value;
        assert!((h - 4.0f64.ln()).abs() < 1e-12, "hilbert {h}");
    }

    #[test]
    fn gauge_identity_and_scaling() {
        let b = square();
        let y = linalg::lift(&[0.3, -0.2]);
        assert!((gauge_lifted(&b, &y, &y).unwrap() - 1.0).abs() < 1e-15);
        let x = linalg::lift(&[-0.5, 0.1]);
        let m = gauge_lifted(&b, &x, &y).unwrap();
        let sx: Vec<f64> = x.iter().map(|v| v * 2.5).collect();
        let sy: Vec<f64> = y.iter().map(|v| v * 0.4).collect();
        let m2 = gauge_lifted(&b, &sx, &sy).unwrap();
        assert!((m2 - 2.5 / 0.4 * m).abs() < 1e-12 * (1.0 + m2));
    }

    #[test]
    fn rev_extends_to_boundary() {
        let b = square();
        let v = reverse_funk_dist(&b, &[0.0, 0.0], &[1.0, 0.0]).unwrap().value;
        assert!((v - LN2).abs() < 1e-15);
        // Funk does not accept boundary input.
        assert!(funk_dist(&b, &[0.0, 0.0], &[1.0, 0.0]).is_err());
        assert!(reverse_funk_dist(&b, &[1.0, 0.0], &[0.0, 0.0]).is_err());
    }

    #[test]
    fn cross_ratio_route_agrees_with_gauge_route() {
        let b = square();
        let s = ConvexBody::standard_simplex(2).unwrap();
        let e = ConvexBody::ellipse(vec![0.2, -0.1], vec![2.0, 1.0], None).unwrap();
        let pairs = [
            ([0.1, 0.2], [0.4, -0.3]),
            ([-0.6, 0.5], [0.7, 0.7]),
            ([0.0, 0.0], [0.5, 0.0]),
        ];
        for (x, y) in pairs {
            for body in [&b, &e] {
                let via_cr = hilbert_dist_cross_ratio(body, &x, &y).unwrap();
                let via_gauge = hilbert_dist(body, &x, &y).unwrap().value;
                assert!((via_cr - via_gauge).abs() < 1e-12, "{via_cr} vs {via_gauge}");
            }
        }
        let via_cr = hilbert_dist_cross_ratio(&s, &[0.2, 0.3], &[0.4, 0.1]).unwrap();
        let via_gauge = hilbert_dist(&s, &[0.2, 0.3], &[0.4, 0.1]).unwrap().value;
        assert!((via_cr - via_gauge).abs() < 1e-12);
    }

    #[test]
    fn funk_geodesic_exponential_law() {
        let b = square();
        let g = geodesic(&b, &[0.0, 0.0], &[0.5, 0.0], MetricKind::Funk).unwrap();
        assert!((g.length - LN2).abs() < 1e-15);
        let p = g.point_at(LN2).unwrap();
        assert!(linalg::dist(&p, &[0.5, 0.0]) < 1e-12);
        let q = g.point_at((4.0f64 / 3.0).ln()).unwrap();
        assert!(linalg::dist(&q, &[0.25, 0.0]) < 1e-12);
        assert!(linalg::dist(&g.point_at(0.0).unwrap(), &[0.0, 0.0]) < 1e-15);
    }

    #[test]
    fn hilbert_midpoint_matches_bisection_oracle() {
        let b = square();
        let x = [0.0, 0.0];
        let y = [0.5, 0.0];
        let g = geodesic(&b, &x, &y, MetricKind::Hilbert).unwrap();
        let half = 0.5 * 3.0f64.ln();
        let mid = g.point_at(half).unwrap();
        // Closed form: (1+p)/(1-p) = √3 on the segment, p = 2 - √3.
        assert!((mid[0] - (2.0 - 3.0f64.sqrt())).abs() < 1e-12, "mid {mid:?}");
        assert!(mid[1].abs() < 1e-12);
        // Independent 1D bisection oracle on hil(x, p(u)) = half.
        let mut lo = 0.0;
        let mut hi = 1.0;
        for _ in 0..100 {
            let u = 0.5 * (lo + hi);
            let p = [0.5 * u, 0.0];
            if hilbert_dist(&b, &x, &p).unwrap().value < half {
                lo = u;
            } else {
                hi = u;
            }
        }
        let oracle = [0.5 * 0.5 * (lo + hi), 0.0];
        assert!(linalg::dist(&mid, &oracle) < 1e-9);
        let d1 = hilbert_dist(&b, &x, &mid).unwrap().value;
        let d2 = hilbert_dist(&b, &mid, &y).unwrap().value;
        assert!((d1 - half).abs() < 1e-12 && (d2 - half).abs() < 1e-12);
    }

    #[test]
    fn geodesic_additivity_all_metrics() {
        let b = square();
        let e = ConvexBody::ellipse(vec![0.0, 0.0], vec![1.5, 1.0], None).unwrap();
        for body in [&b, &e] {
            for kind in [MetricKind::Funk, MetricKind::ReverseFunk, MetricKind::Hilbert] {
                let g = geodesic(body, &[-0.3, 0.2], &[0.4, -0.35], kind).unwrap();
                let l = g.length;
                let (s, t, u) = (0.15 * l, 0.5 * l, 0.9 * l);
                let ps = g.point_at(s).unwrap();
                let pt = g.point_at(t).unwrap();
                let pu = g.point_at(u).unwrap();
                let d_su = dist(body, &ps, &pu, kind).unwrap();
                let d_st = dist(body, &ps, &pt, kind).unwrap();
                let d_tu = dist(body, &pt, &pu, kind).unwrap();
                assert!((d_su - (u - s)).abs() < 1e-9, "{kind:?} {d_su} vs {}", u - s);
                assert!((d_st + d_tu - d_su).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn ball_boundary_residuals_and_hexagon() {
        let b = square();
        let r = 3.0f64.ln();
        let ball = ball_boundary(&b, &[0.0, 0.0], r, MetricKind::Hilbert, 360).unwrap();
        assert_eq!(ball.points.len(), 360);
        for p in &ball.points {
            let d = hilbert_dist(&b, p, &[0.0, 0.0]).unwrap().value;
            assert!((d - r).abs() < 1e-9);
        }
        // (0.5, 0) lies on the boundary of the r = log 3 ball.
        assert!(ball
            .points
            .iter()
            .any(|p| linalg::dist(p, &[0.5, 0.0]) < 0.02));

        // Hilbert balls around the simplex centroid are hexagons.
        let s = ConvexBody::standard_simplex(2).unwrap();
        let c = s.base_point().to_vec();
        let ball = ball_boundary(&s, &c, 0.7, MetricKind::Hilbert, 720).unwrap();
        let pts = &ball.points;
        let mut corners = 0;
        for i in 0..pts.len() {
            let a = &pts[i];
            let b2 = &pts[(i + 1) % pts.len()];
            let c2 = &pts[(i + 2) % pts.len()];
            let u = linalg::normalize(&linalg::sub(b2, a));
            let v = linalg::normalize(&linalg::sub(c2, b2));
            let cross = u[0] * v[1] - u[1] * v[0];
            if cross.abs() > 5e-3 {
                corners += 1;
            }
        }
        assert_eq!(corners, 6, "simplex Hilbert ball should be a hexagon");
    }

    #[test]
    fn ball_radius_zero_is_degenerate() {
        let b = square();
        let ball = ball_boundary(&b, &[0.1, 0.1], 0.0, MetricKind::Funk, 8).unwrap();
        assert!(ball.points.iter().all(|p| linalg::dist(p, &[0.1, 0.1]) == 0.0));
        assert!(ball_boundary(&b, &[0.0, 0.0], 1.0, MetricKind::Funk, 2).is_err());
    }

    #[test]
    fn funk_ball_saturates_toward_boundary() {
        // Right Funk balls of radius ≥ log 2 about the center of the square
        // reach the body boundary; those directions are skipped.
        let b = square();
        let ball = ball_boundary(&b, &[0.0, 0.0], 1.0, MetricKind::Funk, 64).unwrap();
        assert!(ball.points.len() < 64);
        assert!(!ball.points.is_empty());
        for p in &ball.points {
            let d = funk_dist(&b, p, &[0.0, 0.0]).unwrap().value;
            assert!((d - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn hilbert_balls_have_positive_clearance() {
        // Properness surrogate: fixed-radius Hilbert balls stay uniformly
        // inside the body.
        let b = square();
        for r in [0.5, 2.0, 5.0] {
            let ball = ball_boundary(&b, &[0.0, 0.0], r, MetricKind::Hilbert, 90).unwrap();
            let min_margin = ball
                .points
                .iter()
                .map(|p| b.interior_margin(p))
                .fold(f64::INFINITY, f64::min);
            assert!(min_margin > 1e-4, "radius {r} margin {min_margin}");
        }
    }
}
