//! Segment measures and their closed-form Fourier transforms.
//!
//! Transform convention used throughout the crate:
//!
//! ```text
//! g^(xi) = integral of e^(-2 pi i xi . x) dg(x)
//! ```
//!
//! The opposite sign convention conjugates every transform value, so zero
//! sets and all absolute-value diagnostics are identical under either choice.
//! Closed forms are cross-checked against adaptive quadrature in the tests.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exec;
use crate::scalar::Scalar;

/// A frequency point `(l1, l2)` in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyPoint {
    pub l1: f64,
    pub l2: f64,
}

impl FrequencyPoint {
    pub fn new(l1: f64, l2: f64) -> Self {
        FrequencyPoint { l1, l2 }
    }

    pub fn origin() -> Self {
        FrequencyPoint { l1: 0.0, l2: 0.0 }
    }

    pub fn is_origin(&self) -> bool {
        self.l1 == 0.0 && self.l2 == 0.0
    }

    pub fn sub(&self, other: &FrequencyPoint) -> FrequencyPoint {
        FrequencyPoint::new(self.l1 - other.l1, self.l2 - other.l2)
    }

    pub fn norm_inf(&self) -> f64 {
        self.l1.abs().max(self.l2.abs())
    }
}

/// Normalized sinc: `sin(pi x) / (pi x)`, with `sinc(0) = 1`.
///
/// Below `|x| = 1e-4` the Taylor series is used; the first omitted term is
/// `(pi x)^6 / 5040 < 1e-24`, keeping relative error at the few-ulp level.
pub fn sinc(x: f64) -> f64 {
    let px = PI * x;
    if x.abs() < 1e-4 {
        let p2 = px * px;
        1.0 - p2 / 6.0 + p2 * p2 / 120.0
    } else {
        px.sin() / px
    }
}

/// Derivative of [`sinc`].
pub fn dsinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let p2 = PI * PI;
        -p2 * x / 3.0 + p2 * p2 * x * x * x / 30.0
    } else {
        ((PI * x).cos() - sinc(x)) / x
    }
}

fn cis(angle: f64) -> Complex64 {
    Complex64::new(angle.cos(), angle.sin())
}

/// Transform of one-half Lebesgue measure on `[t, t+1]`:
/// `1/2 e^(-2 pi i xi (t + 1/2)) sinc(xi)`.
pub fn mu_hat(t: &Scalar, xi: f64) -> Complex64 {
    let tf = t.to_f64();
    0.5 * cis(-2.0 * PI * xi * (tf + 0.5)) * sinc(xi)
}

/// The two-segment measure: one-half Lebesgue measure on `[t, t+1] x {0}`
/// plus one-half Lebesgue measure on `{0} x [t, t+1]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymmetricAdditiveMeasure {
    t: Scalar,
}

impl SymmetricAdditiveMeasure {
    pub fn new(t: Scalar) -> Self {
        SymmetricAdditiveMeasure { t }
    }

    pub fn t(&self) -> &Scalar {
        &self.t
    }

    /// Errors out for t = -1/2; spectral-analysis operations call this first.
    pub fn ensure_not_plus_space(&self) -> Result<()> {
        if self.t.is_plus_space() {
            Err(Error::PlusSpace)
        } else {
            Ok(())
        }
    }

    /// The same measure encoded as an explicit two-segment configuration.
    pub fn to_segments(&self) -> SegmentMeasure {
        let t = self.t.clone();
        let t1 = &t + &Scalar::one();
        let zero = Scalar::zero();
        SegmentMeasure::new(vec![
            Segment::new([t.clone(), zero.clone()], [t1.clone(), zero.clone()], 0.5),
            Segment::new([zero.clone(), t], [zero, t1], 0.5),
        ])
        .expect("two unit segments are a valid configuration")
    }
}

/// Transform of the two-segment measure at a frequency point.
///
/// Exactly 1 at the origin.
pub fn rho_hat(m: &SymmetricAdditiveMeasure, lambda: &FrequencyPoint) -> Complex64 {
    mu_hat(&m.t, lambda.l1) + mu_hat(&m.t, lambda.l2)
}

/// Batch evaluation of [`rho_hat`]; parallel with the `parallel` feature.
pub fn rho_hat_batch(m: &SymmetricAdditiveMeasure, points: &[FrequencyPoint]) -> Vec<Complex64> {
    exec::map_collect(points, |p| rho_hat(m, p))
}

/// A straight segment carrying a constant linear density.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Segment {
    pub a: [Scalar; 2],
    pub b: [Scalar; 2],
    /// Mass per unit length.
    pub density: f64,
}

impl Segment {
    pub fn new(a: [Scalar; 2], b: [Scalar; 2], density: f64) -> Self {
        Segment { a, b, density }
    }

    pub fn a_f64(&self) -> [f64; 2] {
        [self.a[0].to_f64(), self.a[1].to_f64()]
    }

    pub fn b_f64(&self) -> [f64; 2] {
        [self.b[0].to_f64(), self.b[1].to_f64()]
    }

    pub fn length(&self) -> f64 {
        let a = self.a_f64();
        let b = self.b_f64();
        ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt()
    }

    pub fn mass(&self) -> f64 {
        self.density * self.length()
    }

    fn is_degenerate(&self) -> bool {
        self.a[0] == self.b[0] && self.a[1] == self.b[1]
    }
}

/// A finite union of weighted segments; pairwise intersections must have
/// one-dimensional measure zero (touching points are fine).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "SegmentMeasureRepr", into = "SegmentMeasureRepr")]
pub struct SegmentMeasure {
    segments: Vec<Segment>,
}

#[derive(Serialize, Deserialize)]
struct SegmentMeasureRepr {
    segments: Vec<Segment>,
}

impl TryFrom<SegmentMeasureRepr> for SegmentMeasure {
    type Error = Error;
    fn try_from(repr: SegmentMeasureRepr) -> Result<Self> {
        SegmentMeasure::new(repr.segments)
    }
}

impl From<SegmentMeasure> for SegmentMeasureRepr {
    fn from(m: SegmentMeasure) -> Self {
        SegmentMeasureRepr {
            segments: m.segments,
        }
    }
}

impl SegmentMeasure {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::invalid("segments", "at least one segment required"));
        }
        for s in &segments {
            if s.is_degenerate() {
                return Err(Error::invalid("segments", "zero-length segment"));
            }
            if !(s.density > 0.0) {
                return Err(Error::invalid("segments", "density must be positive"));
            }
        }
        for i in 0..segments.len() {
            for j in i + 1..segments.len() {
                if collinear_overlap(&segments[i], &segments[j]) {
                    return Err(Error::invalid(
                        "segments",
                        format!("segments {i} and {j} overlap on a set of positive length"),
                    ));
                }
            }
        }
        Ok(SegmentMeasure { segments })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn total_mass(&self) -> f64 {
        self.segments.iter().map(Segment::mass).sum()
    }
}

/// Positive-length overlap test for two segments (f64 arithmetic; exactness
/// is not needed because any sign ambiguity lives at scale 1e-15).
fn collinear_overlap(s: &Segment, t: &Segment) -> bool {
    let (a, b) = (s.a_f64(), s.b_f64());
    let (c, d) = (t.a_f64(), t.b_f64());
    let ds = [b[0] - a[0], b[1] - a[1]];
    let dt = [d[0] - c[0], d[1] - c[1]];
    let scale = s.length().max(t.length());
    let eps = 1e-12 * scale * scale;
    let cross = ds[0] * dt[1] - ds[1] * dt[0];
    if cross.abs() > eps {
        return false; // not parallel
    }
    let ac = [c[0] - a[0], c[1] - a[1]];
    if (ds[0] * ac[1] - ds[1] * ac[0]).abs() > eps {
        return false; // parallel but not collinear
    }
    // collinear: compare parameter intervals along s's direction
    let len2 = ds[0] * ds[0] + ds[1] * ds[1];
    let p0 = (ac[0] * ds[0] + ac[1] * ds[1]) / len2;
    let p1 = ((d[0] - a[0]) * ds[0] + (d[1] - a[1]) * ds[1]) / len2;
    let (lo, hi) = (p0.min(p1), p0.max(p1));
    hi.min(1.0) - lo.max(0.0) > 1e-9
}

/// Transform of a general segment measure: each segment from `a` to `b` with
/// density `c` contributes
/// `c |b-a| e^(-2 pi i lambda.(a+b)/2) sinc(lambda.(b-a))`.
pub fn segment_measure_hat(m: &SegmentMeasure, lambda: &FrequencyPoint) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for s in &m.segments {
        let a = s.a_f64();
        let b = s.b_f64();
        let mid_dot = 0.5 * (lambda.l1 * (a[0] + b[0]) + lambda.l2 * (a[1] + b[1]));
        let dir_dot = lambda.l1 * (b[0] - a[0]) + lambda.l2 * (b[1] - a[1]);
        acc += s.mass() * cis(-2.0 * PI * mid_dot) * sinc(dir_dot);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, DEFAULT_MAX_PANELS};

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    /// Quadrature route for mu_hat, independent of the closed form.
    fn mu_hat_quad(t: f64, xi: f64) -> Complex64 {
        let (v, _) = integrate(
            |s| 0.5 * cis(-2.0 * PI * xi * s),
            t,
            t + 1.0,
            1e-13,
            DEFAULT_MAX_PANELS,
        );
        v
    }

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(1.0).abs() < 1e-15);
        // 2/pi from direct evaluation, cross-checked against the series route:
        // sin(pi/2) = 1 exactly, so sinc(1/2) = 2/pi
        assert!((sinc(0.5) - 2.0 / PI).abs() < 1e-15);
        assert!((sinc(0.5) - 0.636_619_772_367_581_3).abs() < 1e-12);
    }

    #[test]
    fn sinc_series_matches_direct_at_cutoff() {
        for &x in &[9.9e-5, 1.01e-4, 5e-5, -9.9e-5] {
            let direct = (PI * x).sin() / (PI * x);
            assert!((sinc(x) - direct).abs() < 1e-15, "x = {x}");
        }
    }

    #[test]
    fn dsinc_matches_finite_difference() {
        for &x in &[0.3, 1.7, -2.4, 1e-5, 12.0] {
            let h = 1e-6;
            let fd = (sinc(x + h) - sinc(x - h)) / (2.0 * h);
            assert!((dsinc(x) - fd).abs() < 1e-8, "x = {x}");
        }
    }

    #[test]
    fn mu_hat_trivial_values() {
        let t0 = Scalar::zero();
        assert!(close(mu_hat(&t0, 0.0), Complex64::new(0.5, 0.0), 1e-15));
        assert!(mu_hat(&t0, 1.0).norm() < 1e-15);
    }

    #[test]
    fn mu_hat_half_frequency_against_quadrature() {
        // expected value -i/pi frozen from the quadrature of (1/2) e^{-pi i s} on [0,1]
        let oracle = mu_hat_quad(0.0, 0.5);
        let expected = Complex64::new(0.0, -1.0 / PI);
        assert!(close(oracle, expected, 1e-12));
        assert!(close(mu_hat(&Scalar::zero(), 0.5), expected, 1e-13));
    }

    #[test]
    fn mu_hat_matches_quadrature_randomized() {
        let ts = [-0.45, -0.25, 0.0, 0.3, 1.0, 2.5];
        let xis = [-17.3, -2.0, -0.51, 0.001, 0.5, 3.25, 19.9];
        for &t in &ts {
            let ts = Scalar::from_f64_exact(t).unwrap();
            for &xi in &xis {
                let closed = mu_hat(&ts, xi);
                let quad = mu_hat_quad(t, xi);
                assert!(close(closed, quad, 1e-12), "t={t} xi={xi}");
            }
        }
    }

    #[test]
    fn rho_hat_reference_values() {
        let m = SymmetricAdditiveMeasure::new(Scalar::zero());
        assert_eq!(
            rho_hat(&m, &FrequencyPoint::origin()),
            Complex64::new(1.0, 0.0)
        );
        // (1/2, -1/2) is a zero: the phases i and -i cancel
        assert!(rho_hat(&m, &FrequencyPoint::new(0.5, -0.5)).norm() < 1e-15);
        // (1, -1) kills both sinc factors
        assert!(rho_hat(&m, &FrequencyPoint::new(1.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn rho_hat_agrees_with_segment_encoding() {
        for t in [-0.25, 0.0, 0.5, 1.0] {
            let m = SymmetricAdditiveMeasure::new(Scalar::from_f64_exact(t).unwrap());
            let seg = m.to_segments();
            for &(l1, l2) in &[(0.3, -0.7), (2.5, 2.5), (-19.0, 13.7), (0.5, -0.5)] {
                let p = FrequencyPoint::new(l1, l2);
                assert!(
                    close(rho_hat(&m, &p), segment_measure_hat(&seg, &p), 1e-12),
                    "t={t} p=({l1},{l2})"
                );
            }
        }
    }

    #[test]
    fn segment_hat_unit_horizontal() {
        let seg = SegmentMeasure::new(vec![Segment::new(
            [Scalar::zero(), Scalar::zero()],
            [Scalar::one(), Scalar::zero()],
            1.0,
        )])
        .unwrap();
        assert!(close(
            segment_measure_hat(&seg, &FrequencyPoint::origin()),
            Complex64::new(1.0, 0.0),
            1e-15
        ));
        assert!(segment_measure_hat(&seg, &FrequencyPoint::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn overlapping_segments_rejected() {
        let r = SegmentMeasure::new(vec![
            Segment::new(
                [Scalar::zero(), Scalar::zero()],
                [Scalar::from_int(2), Scalar::zero()],
                1.0,
            ),
            Segment::new(
                [Scalar::one(), Scalar::zero()],
                [Scalar::from_int(3), Scalar::zero()],
                1.0,
            ),
        ]);
        assert!(r.is_err());
        // touching at a single point is allowed
        let ok = SegmentMeasure::new(vec![
            Segment::new(
                [Scalar::zero(), Scalar::zero()],
                [Scalar::one(), Scalar::zero()],
                1.0,
            ),
            Segment::new(
                [Scalar::one(), Scalar::zero()],
                [Scalar::from_int(2), Scalar::zero()],
                1.0,
            ),
        ]);
        assert!(ok.is_ok());
    }

    #[test]
    fn conjugate_symmetry_is_exact() {
        let m = SymmetricAdditiveMeasure::new(Scalar::from_ratio(1, 3));
        for &(l1, l2) in &[(0.37, -1.92), (4.0, 4.0), (-0.001, 18.3)] {
            let p = FrequencyPoint::new(l1, l2);
            let q = FrequencyPoint::new(-l1, -l2);
            let v = rho_hat(&m, &p);
            let w = rho_hat(&m, &q);
            assert!((v.re - w.re).abs() <= 4.0 * f64::EPSILON * v.norm().max(1.0));
            assert!((v.im + w.im).abs() <= 4.0 * f64::EPSILON * v.norm().max(1.0));
        }
    }

    #[test]
    fn transform_bounded_by_total_mass() {
        let m = SymmetricAdditiveMeasure::new(Scalar::sqrt(2));
        for i in 0..200 {
            let l1 = -20.0 + 0.2 * i as f64;
            let l2 = 20.0 - 0.19 * i as f64;
            assert!(rho_hat(&m, &FrequencyPoint::new(l1, l2)).norm() <= 1.0 + 1e-12);
        }
    }
}
