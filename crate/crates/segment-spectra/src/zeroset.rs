//! Zero set of the two-segment transform: membership, group classification,
//! and root isolation along the lines `l2 - l1 = k/(2t+1)`.
//!
//! On such a line the transform factors as
//! `rho^(x, x+d) = (1/2) e^(-2 pi i x (t+1/2)) (sinc x + (-1)^k sinc(x+d))`
//! with `d = k/(2t+1)`, so the zeros are the real roots of
//! `h_k(x) = sinc(x) + (-1)^k sinc(x+d)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::measure::{dsinc, rho_hat, sinc, FrequencyPoint, SymmetricAdditiveMeasure};
use crate::scalar::round_rational;
#[cfg(test)]
use crate::scalar::Scalar;

/// Default membership tolerance for zero tests.
pub const MEMBERSHIP_TOL: f64 = 1e-10;
/// Default root refinement width.
pub const ROOT_REFINE_TOL: f64 = 1e-12;
/// Default initial grid step for root isolation.
pub const DEFAULT_GRID_STEP: f64 = 0.05;

/// Membership of a frequency point in the integer lattice (`H1`) and in the
/// union of lines `l2 - l1 in (1/(2t+1)) Z` (`H2`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupMembership {
    pub in_h1: bool,
    pub in_h2: bool,
    /// Line index with `l2 - l1 = k/(2t+1)`; present exactly when `in_h2`.
    pub k: Option<i64>,
    /// Distance of `(l2 - l1)(2t+1)` to the nearest integer.
    pub residual: f64,
}

/// A parameter window on the line `l2 - l1 = k/(2t+1)`: the point at
/// parameter `x` is `(x, x + k/(2t+1))`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LineWindow {
    pub k: i64,
    pub x_min: f64,
    pub x_max: f64,
}

impl LineWindow {
    pub fn new(k: i64, x_min: f64, x_max: f64) -> Result<Self> {
        if !(x_min < x_max) {
            return Err(Error::invalid(
                "line window",
                format!("x_min = {x_min} must be below x_max = {x_max}"),
            ));
        }
        Ok(LineWindow { k, x_min, x_max })
    }
}

/// An isolated zero on one of the admissible lines.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LineRoot {
    pub k: i64,
    /// Parameter on the line; the planar point is `(x, x + k/(2t+1))`.
    pub x: f64,
    pub y: f64,
    pub abs_transform: f64,
    /// True when the factor touches zero without a sign change.
    pub tangential: bool,
}

impl LineRoot {
    pub fn point(&self) -> FrequencyPoint {
        FrequencyPoint::new(self.x, self.y)
    }
}

/// `|rho^(lambda)| <= tol`.
pub fn is_zero(m: &SymmetricAdditiveMeasure, lambda: &FrequencyPoint, tol: f64) -> bool {
    rho_hat(m, lambda).norm() <= tol
}

/// Line offset `d = k/(2t+1)` as an exact rational when `t` is rational.
pub fn line_offset_rational(m: &SymmetricAdditiveMeasure, k: i64) -> Option<BigRational> {
    let t = m.t().as_rational()?;
    let two_t_one = t * BigRational::from_integer(2.into()) + BigRational::one();
    Some(BigRational::from_integer(k.into()) / two_t_one)
}

/// Line offset `d = k/(2t+1)` in double precision.
pub fn line_offset(m: &SymmetricAdditiveMeasure, k: i64) -> f64 {
    match line_offset_rational(m, k) {
        Some(r) => r.to_f64().unwrap_or(f64::NAN),
        None => k as f64 / (2.0 * m.t().to_f64() + 1.0),
    }
}

fn dist_to_int_f64(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Classify a frequency point. For rational `t` the scaled difference
/// `(l2 - l1)(2t+1)` is computed in exact arithmetic on the (dyadic) inputs,
/// so no floating error enters the residual.
pub fn classify(
    m: &SymmetricAdditiveMeasure,
    lambda: &FrequencyPoint,
    tol: f64,
) -> Result<GroupMembership> {
    m.ensure_not_plus_space()?;
    if let Some(t) = m.t().as_rational() {
        let l1 = BigRational::from_float(lambda.l1)
            .ok_or_else(|| Error::invalid("frequency point", "non-finite coordinate"))?;
        let l2 = BigRational::from_float(lambda.l2)
            .ok_or_else(|| Error::invalid("frequency point", "non-finite coordinate"))?;
        return Ok(classify_rational(t, &l1, &l2, tol));
    }
    let t = m.t().to_f64();
    let r = (lambda.l2 - lambda.l1) * (2.0 * t + 1.0);
    let residual = dist_to_int_f64(r);
    let in_h2 = residual <= tol;
    let in_h1 = dist_to_int_f64(lambda.l1) <= tol && dist_to_int_f64(lambda.l2) <= tol;
    Ok(GroupMembership {
        in_h1,
        in_h2,
        k: in_h2.then(|| r.round() as i64),
        residual,
    })
}

/// Exact classification for rational `t` and rational coordinates; the
/// tolerance is not consulted, membership means residual exactly zero.
pub fn classify_exact(
    m: &SymmetricAdditiveMeasure,
    l1: &BigRational,
    l2: &BigRational,
) -> Result<GroupMembership> {
    m.ensure_not_plus_space()?;
    let t = m
        .t()
        .as_rational()
        .ok_or_else(|| Error::invalid("t", "exact classification requires rational t"))?;
    Ok(classify_rational(t, l1, l2, 0.0))
}

fn classify_rational(
    t: &BigRational,
    l1: &BigRational,
    l2: &BigRational,
    tol: f64,
) -> GroupMembership {
    let two_t_one = t * BigRational::from_integer(2.into()) + BigRational::one();
    let r = (l2 - l1) * &two_t_one;
    let k_near = round_rational(&r);
    let residual = (&r - BigRational::from_integer(k_near.clone()))
        .abs()
        .to_f64()
        .unwrap_or(f64::INFINITY);
    let in_h2 = residual <= tol;
    let int_dist = |v: &BigRational| {
        (v - BigRational::from_integer(round_rational(v)))
            .abs()
            .to_f64()
            .unwrap_or(f64::INFINITY)
    };
    let in_h1 = int_dist(l1) <= tol && int_dist(l2) <= tol;
    GroupMembership {
        in_h1,
        in_h2,
        k: in_h2.then(|| k_near.to_i64().unwrap_or(i64::MAX)),
        residual,
    }
}

/// The factor `h_k(x) = sinc(x) + (-1)^k sinc(x + d)` whose real roots are
/// the on-line zeros.
fn line_factor(d: f64, parity: f64) -> impl Fn(f64) -> f64 {
    move |x: f64| sinc(x) + parity * sinc(x + d)
}

fn line_factor_derivative(d: f64, parity: f64) -> impl Fn(f64) -> f64 {
    move |x: f64| dsinc(x) + parity * dsinc(x + d)
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, width: f64) -> f64 {
    let mut flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 {
            return mid;
        }
        if (flo > 0.0) == (fmid > 0.0) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn golden_minimize(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, width: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > width {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

/// All zeros of the transform on the line `l2 - l1 = k/(2t+1)` with
/// parameter in the window, isolated by sign-change bisection on a grid of
/// the given step, refined to 1e-12 and verified to `|rho^| <= 1e-10`.
///
/// Double roots (the factor touching zero, e.g. the symmetric integer pairs
/// that arise when `d` is an integer) produce no sign change; they are caught
/// by the integer-point rule and by a local minimum scan, and flagged
/// `tangential`.
pub fn line_roots(
    m: &SymmetricAdditiveMeasure,
    w: &LineWindow,
    step: f64,
) -> Result<Vec<LineRoot>> {
    m.ensure_not_plus_space()?;
    if !(step > 0.0) {
        return Err(Error::invalid("step", "grid step must be positive"));
    }
    let d = line_offset(m, w.k);
    let parity = if w.k % 2 == 0 { 1.0 } else { -1.0 };
    let h = line_factor(d, parity);
    let dh = line_factor_derivative(d, parity);

    // (x, tangential, exact) — exact roots win over refined ones in dedupe
    let mut candidates: Vec<(f64, bool, bool)> = Vec::new();

    // Integer points where both sinc factors vanish: x and x + d nonzero
    // integers. Only possible when d itself is an integer.
    let d_int = match line_offset_rational(m, w.k) {
        Some(r) => r.denom().is_one().then(|| r.numer().clone()),
        None => (w.k == 0).then(|| BigInt::from(0)),
    };
    if let Some(d_int) = d_int {
        let lo = w.x_min.ceil() as i64;
        let hi = w.x_max.floor() as i64;
        for n in lo..=hi {
            let shifted = BigInt::from(n) + &d_int;
            if n != 0 && shifted != BigInt::from(0) {
                let x = n as f64;
                let tangential = {
                    let slope = dh(x);
                    let scale = dsinc(x).abs() + dsinc(x + d).abs() + 1e-12;
                    slope.abs() <= 1e-6 * scale
                };
                candidates.push((x, tangential, true));
            }
        }
    }

    // Sign-change bisection on the grid.
    let n_cells = ((w.x_max - w.x_min) / step).ceil() as usize;
    let xs: Vec<f64> = (0..=n_cells)
        .map(|i| (w.x_min + i as f64 * step).min(w.x_max))
        .collect();
    let vals: Vec<f64> = xs.iter().map(|&x| h(x)).collect();
    for i in 0..n_cells {
        let (a, b) = (xs[i], xs[i + 1]);
        let (fa, fb) = (vals[i], vals[i + 1]);
        if fa == 0.0 {
            candidates.push((a, false, false));
            continue;
        }
        if (fa > 0.0) != (fb > 0.0) {
            let root = bisect(&h, a, b, ROOT_REFINE_TOL * 0.1);
            candidates.push((root, false, false));
        }
    }
    if let Some(&last) = vals.last() {
        if last == 0.0 {
            candidates.push((*xs.last().unwrap(), false, false));
        }
    }

    // Local-minimum scan for tangential zeros without a sign change.
    for i in 1..n_cells {
        let (f0, f1, f2) = (vals[i - 1], vals[i], vals[i + 1]);
        let same_sign = (f0 > 0.0) == (f1 > 0.0) && (f1 > 0.0) == (f2 > 0.0);
        if same_sign && f1.abs() < f0.abs() && f1.abs() <= f2.abs() && f1.abs() < 0.05 {
            let sq = |x: f64| {
                let v = h(x);
                v * v
            };
            let x_star = golden_minimize(&sq, xs[i - 1], xs[i + 1], ROOT_REFINE_TOL * 0.1);
            if h(x_star).abs() <= 2e-11 {
                candidates.push((x_star, true, false));
            }
        }
    }

    // Deduplicate (exact values win), verify against the full transform.
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, bool, bool)> = Vec::new();
    for (x, tangential, exact) in candidates {
        if x < w.x_min - 1e-12 || x > w.x_max + 1e-12 {
            continue;
        }
        if let Some(prev) = merged.last_mut() {
            if (x - prev.0).abs() < 1e-8 {
                if exact && !prev.2 {
                    prev.0 = x;
                    prev.2 = true;
                }
                prev.1 |= tangential;
                continue;
            }
        }
        merged.push((x, tangential, exact));
    }
    let mut roots: Vec<LineRoot> = Vec::new();
    for (x, tangential, _) in merged {
        let point = FrequencyPoint::new(x, x + d);
        let abs = rho_hat(m, &point).norm();
        if abs <= MEMBERSHIP_TOL {
            roots.push(LineRoot {
                k: w.k,
                x,
                y: x + d,
                abs_transform: abs,
                tangential,
            });
        }
    }
    Ok(roots)
}

/// Roots on a batch of lines; parallel with the `parallel` feature.
pub fn line_roots_batch(
    m: &SymmetricAdditiveMeasure,
    windows: &[LineWindow],
    step: f64,
) -> Result<Vec<LineRoot>> {
    m.ensure_not_plus_space()?;
    let results = exec::map_collect(windows, |w| line_roots(m, w, step));
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Zeros on the diagonal `l1 = l2`: exactly the nonzero integers in the
/// window, independent of `t`. Computed through [`line_roots`] with `k = 0`
/// and cross-checked against that closed form.
pub fn diagonal_zeros(m: &SymmetricAdditiveMeasure, x_min: f64, x_max: f64) -> Result<Vec<i64>> {
    let w = LineWindow::new(0, x_min, x_max)?;
    let roots = line_roots(m, &w, DEFAULT_GRID_STEP)?;
    let mut found: Vec<i64> = Vec::new();
    for r in &roots {
        let n = r.x.round();
        if (r.x - n).abs() > 1e-9 {
            return Err(Error::Inconsistency(format!(
                "non-integer diagonal zero at x = {}",
                r.x
            )));
        }
        found.push(n as i64);
    }
    let lo = x_min.ceil() as i64;
    let hi = x_max.floor() as i64;
    let expected: Vec<i64> = (lo..=hi).filter(|&n| n != 0).collect();
    if found != expected {
        return Err(Error::Inconsistency(format!(
            "diagonal zeros {found:?} differ from the closed form {expected:?}"
        )));
    }
    Ok(found)
}

/// Largest admissible `|k|` for lines meeting the closed box `[-w, w]^2`:
/// on the box, `|l2 - l1| <= 2w`, so `|k| <= 2 w |2t+1|`.
pub fn k_range_for_box(m: &SymmetricAdditiveMeasure, window: f64) -> i64 {
    let two_t_one = (2.0 * m.t().to_f64() + 1.0).abs();
    (2.0 * window * two_t_one + 1e-9).floor() as i64
}

/// Line-index bound for a vertical strip of width `strip` intersected with
/// the sector `|l2| <= sector_k * |l1|`: `|k| <= ceil((1+K) C |2t+1|)`.
pub fn k_range_for_strip(m: &SymmetricAdditiveMeasure, strip: f64, sector_k: f64) -> i64 {
    let two_t_one = (2.0 * m.t().to_f64() + 1.0).abs();
    ((1.0 + sector_k) * strip * two_t_one).ceil() as i64
}

/// CSV rendering of a root list (`k,x,y,abs_transform,tangential`).
pub fn roots_to_csv(roots: &[LineRoot]) -> String {
    let mut out = String::from("k,x,y,abs_rho_hat,tangential\n");
    for r in roots {
        out.push_str(&format!(
            "{},{},{},{:e},{}\n",
            r.k, r.x, r.y, r.abs_transform, r.tangential
        ));
    }
    out
}

/// Brute-force oracle: scan `|rho^|` along a line and isolate its dips below
/// `1e-6` by golden-section minimization, independently of the sign-change
/// machinery in [`line_roots`]. Test support; kept here so integration tests
/// and the verification suite share it.
pub fn line_roots_scan_oracle(
    m: &SymmetricAdditiveMeasure,
    k: i64,
    x_min: f64,
    x_max: f64,
) -> Vec<f64> {
    let d = line_offset(m, k);
    let abs = |x: f64| rho_hat(m, &FrequencyPoint::new(x, x + d)).norm();
    let step = 1e-3;
    let n = ((x_max - x_min) / step).ceil() as usize;
    let vals: Vec<f64> = (0..=n)
        .map(|i| abs((x_min + i as f64 * step).min(x_max)))
        .collect();
    let mut roots = Vec::new();
    for i in 1..n {
        if vals[i] <= vals[i - 1] && vals[i] < vals[i + 1] && vals[i] < 1e-2 {
            let x = golden_minimize(
                &abs,
                x_min + (i - 1) as f64 * step,
                (x_min + (i + 1) as f64 * step).min(x_max),
                1e-13,
            );
            if abs(x) <= 1e-9
                && (x >= x_min - 1e-12 && x <= x_max + 1e-12)
                && roots
                    .last()
                    .is_none_or(|&prev: &f64| (x - prev).abs() > 1e-8)
            {
                roots.push(x);
            }
        }
    }
    // grid endpoints can hide boundary roots; check them directly
    for x in [x_min, x_max] {
        if abs(x) <= 1e-9 && roots.iter().all(|&r| (x - r).abs() > 1e-8) {
            roots.push(x);
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sam(t: Scalar) -> SymmetricAdditiveMeasure {
        SymmetricAdditiveMeasure::new(t)
    }

    #[test]
    fn is_zero_examples() {
        let m = sam(Scalar::zero());
        assert!(is_zero(&m, &FrequencyPoint::new(1.0, 2.0), 1e-10));
        // rho^(0,1) = 1/2 by the closed form
        assert!(!is_zero(&m, &FrequencyPoint::new(0.0, 1.0), 1e-10));
        assert!((rho_hat(&m, &FrequencyPoint::new(0.0, 1.0)).norm() - 0.5).abs() < 1e-12);
        assert!(is_zero(&m, &FrequencyPoint::new(-0.5, 0.5), 1e-10));
    }

    #[test]
    fn classify_examples() {
        let m = sam(Scalar::zero());
        let g = classify(&m, &FrequencyPoint::new(3.0, 5.0), 1e-10).unwrap();
        assert!(g.in_h1 && g.in_h2);
        assert_eq!(g.k, Some(2));

        let m = sam(Scalar::from_ratio(1, 4));
        let g = classify(&m, &FrequencyPoint::new(0.1, 0.1 + 2.0 / 3.0), 1e-10).unwrap();
        assert!(!g.in_h1);
        assert!(g.in_h2);
        assert_eq!(g.k, Some(1));

        let g = classify(&m, &FrequencyPoint::new(0.1, 0.5), 1e-10).unwrap();
        assert!(!g.in_h1 && !g.in_h2);
        assert_eq!(g.k, None);
        assert!((g.residual - 0.4).abs() < 1e-12);
    }

    #[test]
    fn classify_rejects_plus_space() {
        let m = sam(Scalar::from_ratio(-1, 2));
        assert!(matches!(
            classify(&m, &FrequencyPoint::origin(), 1e-10),
            Err(Error::PlusSpace)
        ));
    }

    #[test]
    fn classify_exact_is_exact() {
        let m = sam(Scalar::from_ratio(1, 4));
        let l1 = BigRational::new(1.into(), 3.into());
        let l2 = &l1 + BigRational::new(2.into(), 3.into());
        let g = classify_exact(&m, &l1, &l2).unwrap();
        assert!(g.in_h2);
        assert_eq!(g.k, Some(1));
        assert_eq!(g.residual, 0.0);
    }

    #[test]
    fn diagonal_roots_windows() {
        // expected sets are forced by the closed form {nonzero integers}
        let m = sam(Scalar::from_ratio(3, 10));
        assert_eq!(diagonal_zeros(&m, -2.5, 2.5).unwrap(), vec![-2, -1, 1, 2]);
        let m = sam(Scalar::sqrt(2));
        assert_eq!(diagonal_zeros(&m, 0.2, 0.8).unwrap(), Vec::<i64>::new());
        let m = sam(Scalar::one());
        assert_eq!(diagonal_zeros(&m, -0.5, 0.5).unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn k0_line_roots_are_nonzero_integers() {
        let m = sam(Scalar::zero());
        let w = LineWindow::new(0, -3.0, 3.0).unwrap();
        let roots = line_roots(&m, &w, DEFAULT_GRID_STEP).unwrap();
        let xs: Vec<f64> = roots.iter().map(|r| r.x).collect();
        assert_eq!(xs, vec![-3.0, -2.0, -1.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn k1_line_roots_at_t_zero() {
        // Oracle: |rho^| dips on the line (x, x+1). sin(pi x)(1/x + 1/(x+1))
        // vanishes at the integers outside {0, -1} (where the sinc poles
        // cancel the sine zero and the factor equals 1) and at x = -1/2.
        let m = sam(Scalar::zero());
        let oracle = line_roots_scan_oracle(&m, 1, -2.2, 1.2);
        let expected = [-2.0, -0.5, 1.0];
        assert_eq!(oracle.len(), expected.len());
        for (o, e) in oracle.iter().zip(expected) {
            assert!((o - e).abs() < 1e-9, "oracle {o} vs {e}");
        }

        let w = LineWindow::new(1, -2.2, 1.2).unwrap();
        let roots = line_roots(&m, &w, DEFAULT_GRID_STEP).unwrap();
        assert_eq!(roots.len(), expected.len());
        for (r, e) in roots.iter().zip(expected) {
            assert!((r.x - e).abs() < 1e-10);
            assert!(r.abs_transform <= 1e-10);
        }
        // the two cancellation points are not zeros
        assert!((rho_hat(&m, &FrequencyPoint::new(-1.0, 0.0)).norm() - 0.5).abs() < 1e-12);
        assert!((rho_hat(&m, &FrequencyPoint::new(0.0, 1.0)).norm() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn tangential_double_root_is_found() {
        // t = 0, k = 2: at x = -1 both sinc factors vanish and the line
        // factor has a double zero (no sign change).
        let m = sam(Scalar::zero());
        let w = LineWindow::new(2, -1.5, -0.5).unwrap();
        let roots = line_roots(&m, &w, DEFAULT_GRID_STEP).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].x + 1.0).abs() < 1e-12);
        assert!(roots[0].tangential);
    }

    #[test]
    fn no_diagonal_zeros_between_integers() {
        let m = sam(Scalar::from_ratio(1, 2));
        let w = LineWindow::new(0, 0.1, 0.9).unwrap();
        let roots = line_roots(&m, &w, DEFAULT_GRID_STEP).unwrap();
        assert!(roots.is_empty());
        // oracle agrees
        assert!(line_roots_scan_oracle(&m, 0, 0.1, 0.9).is_empty());
    }

    #[test]
    fn roots_classify_back_to_their_line() {
        let m = sam(Scalar::from_ratio(1, 4));
        for k in [-3i64, -1, 0, 2, 5] {
            let w = LineWindow::new(k, -4.0, 4.0).unwrap();
            for r in line_roots(&m, &w, DEFAULT_GRID_STEP).unwrap() {
                let g = classify(&m, &r.point(), 1e-8).unwrap();
                assert_eq!(g.k, Some(k), "root {:?}", r);
            }
        }
    }

    #[test]
    fn refining_the_grid_finds_no_new_roots() {
        let cases = [
            (Scalar::from_ratio(-1, 4), 3i64, -6.0, 6.0),
            (Scalar::from_ratio(1, 3), -2, -5.0, 5.0),
            (Scalar::sqrt(2), 4, -6.0, 2.0),
            (Scalar::from_ratio(7, 5), 1, 0.0, 8.0),
        ];
        for (t, k, lo, hi) in cases {
            let m = sam(t);
            let w = LineWindow::new(k, lo, hi).unwrap();
            let coarse = line_roots(&m, &w, 0.05).unwrap();
            let fine = line_roots(&m, &w, 0.01).unwrap();
            assert_eq!(coarse.len(), fine.len(), "k = {k}");
            for (c, f) in coarse.iter().zip(&fine) {
                assert!((c.x - f.x).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn soundness_of_reported_roots() {
        let m = sam(Scalar::sqrt(2));
        let w = LineWindow::new(3, -10.0, 10.0).unwrap();
        for r in line_roots(&m, &w, DEFAULT_GRID_STEP).unwrap() {
            assert!(r.abs_transform <= 1e-10);
        }
    }

    #[test]
    fn plus_space_is_refused() {
        let m = sam(Scalar::from_ratio(-1, 2));
        let w = LineWindow::new(0, -1.0, 1.0).unwrap();
        assert!(matches!(line_roots(&m, &w, 0.05), Err(Error::PlusSpace)));
        assert!(matches!(
            diagonal_zeros(&m, -1.0, 1.0),
            Err(Error::PlusSpace)
        ));
    }
}
