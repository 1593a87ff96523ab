//! Numerical non-spectrality diagnostics: Parseval-defect experiments for
//! concrete test functions, the translation-periodicity certificate for the
//! crossing regime, and fractional-part analysis of line indices.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::measure::{mu_hat, FrequencyPoint, SymmetricAdditiveMeasure};
use crate::quad::{integrate, integrate_real, DEFAULT_MAX_PANELS};
use crate::scalar::{frac_part, Scalar};
use crate::spectra::SpectrumCandidate;
use crate::zeroset::classify;

/// Test functions supported on the horizontal segment `[t, t+1] x {0}`
/// (all three vanish on the vertical segment).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TestFunction {
    /// 1 on the horizontal segment, 0 on the vertical one.
    IndicatorHorizontal,
    /// Standard mollifier profile `exp(1 - 1/(1 - s^2))` rescaled to
    /// `[center - radius, center + radius]`; equals 1 at the center.
    SmoothBump { center: f64, radius: f64 },
    /// `e^(2 pi i x s)` on the horizontal segment.
    ExponentialProbe { x: f64 },
}

/// The mollifier profile on `(-1, 1)`.
pub fn bump_profile(s: f64) -> f64 {
    if s.abs() < 1.0 {
        (1.0 - 1.0 / (1.0 - s * s)).exp()
    } else {
        0.0
    }
}

impl TestFunction {
    /// Value on the horizontal segment at abscissa `s`.
    pub fn horizontal_value(&self, s: f64) -> Complex64 {
        match self {
            TestFunction::IndicatorHorizontal => Complex64::new(1.0, 0.0),
            TestFunction::SmoothBump { center, radius } => {
                Complex64::new(bump_profile((s - center) / radius), 0.0)
            }
            TestFunction::ExponentialProbe { x } => {
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * x * s)
            }
        }
    }

    fn validate_for(&self, m: &SymmetricAdditiveMeasure) -> Result<()> {
        if let TestFunction::SmoothBump { center, radius } = self {
            if !(*radius > 0.0) {
                return Err(Error::invalid("bump", "radius must be positive"));
            }
            let t = m.t().to_f64();
            let (lo, hi) = (center - radius, center + radius);
            if !(lo > t && hi < t + 1.0) {
                return Err(Error::BumpOutOfRange {
                    lo,
                    hi,
                    seg_lo: t,
                    seg_hi: t + 1.0,
                });
            }
        }
        Ok(())
    }
}

/// Quadrature tolerance for bump coefficients.
const BUMP_QUAD_TOL: f64 = 1e-12;

/// Inner product of a test function with the exponential at `lambda` in the
/// two-segment space. Closed sinc forms for the indicator and the probe;
/// adaptive quadrature for the bump.
pub fn inner_product(
    m: &SymmetricAdditiveMeasure,
    f: &TestFunction,
    lambda: &FrequencyPoint,
) -> Result<Complex64> {
    f.validate_for(m)?;
    Ok(inner_product_unchecked(m, f, lambda))
}

fn inner_product_unchecked(
    m: &SymmetricAdditiveMeasure,
    f: &TestFunction,
    lambda: &FrequencyPoint,
) -> Complex64 {
    match f {
        TestFunction::IndicatorHorizontal => mu_hat(m.t(), lambda.l1),
        TestFunction::ExponentialProbe { x } => mu_hat(m.t(), lambda.l1 - x),
        TestFunction::SmoothBump { center, radius } => {
            let l1 = lambda.l1;
            let (v, _) = integrate(
                |s| {
                    0.5 * bump_profile((s - center) / radius)
                        * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * l1 * s)
                },
                center - radius,
                center + radius,
                BUMP_QUAD_TOL,
                DEFAULT_MAX_PANELS,
            );
            v
        }
    }
}

/// Quadrature route for [`inner_product`], used as an independent check of
/// the closed forms.
pub fn inner_product_quadrature(
    m: &SymmetricAdditiveMeasure,
    f: &TestFunction,
    lambda: &FrequencyPoint,
) -> Result<Complex64> {
    f.validate_for(m)?;
    let t = m.t().to_f64();
    let l1 = lambda.l1;
    let (v, _) = integrate(
        |s| {
            0.5 * f.horizontal_value(s)
                * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * l1 * s)
        },
        t,
        t + 1.0,
        BUMP_QUAD_TOL,
        DEFAULT_MAX_PANELS,
    );
    Ok(v)
}

/// Squared norm in the two-segment space.
pub fn norm_sq(m: &SymmetricAdditiveMeasure, f: &TestFunction) -> Result<f64> {
    f.validate_for(m)?;
    Ok(match f {
        TestFunction::IndicatorHorizontal | TestFunction::ExponentialProbe { .. } => 0.5,
        TestFunction::SmoothBump { center, radius } => {
            let (v, _) = integrate_real(
                |s| {
                    let b = bump_profile((s - center) / radius);
                    0.5 * b * b
                },
                center - radius,
                center + radius,
                BUMP_QUAD_TOL,
                DEFAULT_MAX_PANELS,
            );
            v
        }
    })
}

/// Energy bookkeeping for a finite family of exponentials.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DefectReport {
    pub norm_sq: f64,
    /// Sum of squared coefficients over the enumerated points (the
    /// exponentials are unit vectors since the measure has mass 1).
    pub captured: f64,
    pub defect: f64,
    /// Least-squares slope of `log |coefficient|` against `log |l1|` over
    /// the outer half of the window; `None` when too few usable points.
    pub coefficient_decay: Option<f64>,
    pub window: f64,
    pub terms: usize,
}

fn enumerate_for_l1_window(c: &SpectrumCandidate, window: f64) -> Vec<FrequencyPoint> {
    let points = match c {
        SpectrumCandidate::Window(_) => c.enumerate(window),
        SpectrumCandidate::PeriodicLine(p) => {
            let u1 = p.direction()[0].abs();
            let param = if u1 > 1e-9 { window / u1 } else { window };
            p.enumerate(param + p.period())
        }
    };
    points
        .into_iter()
        .filter(|p| p.l1.abs() <= window)
        .collect()
}

/// Captured energy of `f` against the candidate within `|l1| <= window`.
///
/// The candidate is assumed verified orthogonal, so Bessel bounds
/// `captured <= norm_sq` up to numerical slack.
pub fn parseval_defect(
    m: &SymmetricAdditiveMeasure,
    f: &TestFunction,
    c: &SpectrumCandidate,
    window: f64,
) -> Result<DefectReport> {
    f.validate_for(m)?;
    if !(window > 0.0) {
        return Err(Error::invalid("window", "must be positive"));
    }
    let points = enumerate_for_l1_window(c, window);
    let coeffs = exec::map_collect(&points, |p| inner_product_unchecked(m, f, p));
    let captured: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    let norm = norm_sq(m, f)?;

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (p, c) in points.iter().zip(&coeffs) {
        let a = p.l1.abs();
        if a >= window / 2.0 && a > 0.0 && c.norm() > 1e-250 {
            xs.push(a.ln());
            ys.push(c.norm().ln());
        }
    }
    let coefficient_decay = if xs.len() >= 3 {
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        (sxx > 1e-12).then(|| sxy / sxx)
    } else {
        None
    };

    Ok(DefectReport {
        norm_sq: norm,
        captured,
        defect: norm - captured,
        coefficient_decay,
        window,
        terms: points.len(),
    })
}

/// Certificate that every candidate exponential is periodic under the
/// translation `T = (2t+1, -(2t+1))` while the bump takes different values
/// at the two `T`-related interior points.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PeriodicityCertificate {
    pub t_vector: [f64; 2],
    pub all_in_h2: bool,
    /// `(1+2t, 0)` and `(0, 1+2t)`, both interior to the segments.
    pub point_pair: [[f64; 2]; 2],
    /// Truncated expansion evaluated at the two points, as (re, im).
    pub partial_sums: [[f64; 2]; 2],
    /// Distance of the two partial sums; zero up to rounding since every
    /// term takes equal values at the pair.
    pub agreement_gap: f64,
    /// The test function's actual values at the pair.
    pub f_values: [f64; 2],
    /// Largest distance of `lambda . T` from the integers over the
    /// enumerated points; exactly zero for exact-rational data.
    pub max_lattice_residual: f64,
    /// Whether the lattice check was exact (rational `t`, dyadic points)
    /// with zero residual.
    pub lattice_exact: bool,
    pub k_values: Vec<i64>,
    pub terms: usize,
}

/// Window (in line parameter) used when certifying periodic candidates.
const CERT_ENUM_WINDOW: f64 = 50.0;

/// Build the periodicity certificate for the crossing regime.
///
/// Requires `-1/2 < t < 0`, a verified-orthogonal candidate, and every
/// enumerated point on an admissible line (`NotInH2` otherwise).
pub fn periodicity_certificate(
    m: &SymmetricAdditiveMeasure,
    c: &SpectrumCandidate,
    f: &TestFunction,
) -> Result<PeriodicityCertificate> {
    m.ensure_not_plus_space()?;
    let t = m.t().to_f64();
    if !(t > -0.5 && t < 0.0) {
        return Err(Error::WrongRegime(m.t().to_string()));
    }
    if !matches!(f, TestFunction::SmoothBump { .. }) {
        return Err(Error::invalid(
            "test function",
            "certificate requires a smooth bump",
        ));
    }
    f.validate_for(m)?;

    let points = c.enumerate(CERT_ENUM_WINDOW);
    if points.is_empty() {
        return Err(Error::EmptyCandidate);
    }

    let two_t_one = m.t().two_t_plus_one();
    let two_t_one_f = two_t_one.to_f64();
    let mut k_values = Vec::new();
    let mut max_res = 0.0f64;
    let mut exact = m.t().is_rational();
    for p in &points {
        let g = classify(m, p, 1e-8)?;
        match g.k {
            Some(k) => {
                if !k_values.contains(&k) {
                    k_values.push(k);
                }
            }
            None => return Err(Error::NotInH2(p.l1, p.l2)),
        }
        // lambda . T = (l1 - l2)(2t+1); exact on rational data
        if let Some(r) = two_t_one.as_rational() {
            let l1 = BigRational::from_float(p.l1).unwrap();
            let l2 = BigRational::from_float(p.l2).unwrap();
            let dot = (l1 - l2) * r;
            let res = frac_dist_to_integer(&dot);
            if res != 0.0 {
                exact = false;
            }
            max_res = max_res.max(res);
        } else {
            exact = false;
            let dot = (p.l1 - p.l2) * two_t_one_f;
            max_res = max_res.max((dot - dot.round()).abs());
        }
    }
    k_values.sort_unstable();

    let p1 = [1.0 + 2.0 * t, 0.0];
    let p2 = [0.0, 1.0 + 2.0 * t];
    let coeffs = exec::map_collect(&points, |p| inner_product_unchecked(m, f, p));
    let eval = |x: [f64; 2]| -> Complex64 {
        points
            .iter()
            .zip(&coeffs)
            .map(|(p, c)| {
                c * Complex64::from_polar(
                    1.0,
                    2.0 * std::f64::consts::PI * (p.l1 * x[0] + p.l2 * x[1]),
                )
            })
            .sum()
    };
    let s1 = eval(p1);
    let s2 = eval(p2);
    let f1 = f.horizontal_value(p1[0]).re;

    Ok(PeriodicityCertificate {
        t_vector: [two_t_one_f, -two_t_one_f],
        all_in_h2: true,
        point_pair: [p1, p2],
        partial_sums: [[s1.re, s1.im], [s2.re, s2.im]],
        agreement_gap: (s1 - s2).norm(),
        f_values: [f1, 0.0],
        max_lattice_residual: max_res,
        lattice_exact: exact,
        k_values,
        terms: points.len(),
    })
}

fn frac_dist_to_integer(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    let f = frac_part(r);
    let d = f.to_f64().unwrap_or(f64::INFINITY);
    d.min((1.0 - d).abs())
}

/// Fractional parts of `2(l2 - l1)` over a candidate, clustered at the
/// stated precision, with the line indices they belong to.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FractionalPartReport {
    pub precision: f64,
    /// Clustered fractional parts as (representative in [0,1), count);
    /// clusters wrap around the circle.
    pub distinct_values: Vec<(f64, usize)>,
    pub k_values: Vec<i64>,
    pub per_line_counts: BTreeMap<i64, usize>,
    /// High-precision reference `frac(2k/(2t+1))` per occupied line.
    pub reference_values: Vec<(i64, f64)>,
    /// Number of distinct reference values at this precision.
    pub expected_distinct: usize,
    /// True when the data clusters are in bijection with the distinct
    /// reference values at the stated precision.
    pub matches_line_structure: bool,
    pub terms: usize,
}

/// Fractional-part reference `frac(2k/(2t+1))`, computed on the rational
/// approximant. Exact for rational `t`; with the default 256-bit real
/// constructors the result carries far more than 128 correct bits before the
/// final rounding to `f64`.
pub fn line_fraction_reference(t: &Scalar, k: i64) -> f64 {
    use num_traits::ToPrimitive;
    let r = &Scalar::from_int(2 * k) / &t.two_t_plus_one();
    frac_part(r.approx_rational()).to_f64().unwrap_or(f64::NAN)
}

fn circular_cluster(values: &[f64], quantum: f64) -> Vec<(f64, usize)> {
    let mut clusters = crate::spectra::cluster_values(values, quantum);
    if clusters.len() >= 2 {
        let first = clusters[0];
        let last = *clusters.last().unwrap();
        if (first.0 + 1.0) - last.0 <= quantum {
            clusters.pop();
            clusters[0] = (
                (first.0 * first.1 as f64 + (last.0 - 1.0) * last.1 as f64)
                    / (first.1 + last.1) as f64,
                first.1 + last.1,
            );
            if clusters[0].0 < 0.0 {
                clusters[0].0 += 1.0;
            }
        }
    }
    clusters
}

/// Analyze the fractional parts `{2(l2 - l1)}` of a candidate.
///
/// Data values are computed exactly (the coordinates are dyadic) and
/// clustered at `precision`; per-line references use high-precision
/// arithmetic on `t`. For irrational `t` distinct occupied lines must give
/// distinct fractional parts, which is what `matches_line_structure` records.
pub fn fractional_part_analysis(
    m: &SymmetricAdditiveMeasure,
    c: &SpectrumCandidate,
    precision: f64,
) -> Result<FractionalPartReport> {
    m.ensure_not_plus_space()?;
    if !(precision > 0.0) {
        return Err(Error::invalid("precision", "must be positive"));
    }
    let points = match c {
        SpectrumCandidate::Window(_) => c.enumerate(0.0),
        SpectrumCandidate::PeriodicLine(p) => p.enumerate(25.0f64.max(3.0 * p.period())),
    };
    if points.is_empty() {
        return Err(Error::EmptyCandidate);
    }

    let mut fracs = Vec::new();
    let mut per_line_counts: BTreeMap<i64, usize> = BTreeMap::new();
    for p in &points {
        let v = BigRational::from_float(2.0 * (p.l2 - p.l1))
            .ok_or_else(|| Error::invalid("candidate", "non-finite coordinate"))?;
        use num_traits::ToPrimitive;
        fracs.push(frac_part(&v).to_f64().unwrap_or(f64::NAN));
        if let Some(k) = classify(m, p, 1e-8)?.k {
            *per_line_counts.entry(k).or_insert(0) += 1;
        }
    }
    if fracs.is_empty() {
        return Err(Error::EmptyCandidate);
    }
    let distinct_values = circular_cluster(&fracs, precision);

    let k_values: Vec<i64> = per_line_counts.keys().cloned().collect();
    let reference_values: Vec<(i64, f64)> = k_values
        .iter()
        .map(|&k| (k, line_fraction_reference(m.t(), k)))
        .collect();
    let ref_fracs: Vec<f64> = reference_values.iter().map(|r| r.1).collect();
    let expected_distinct = circular_cluster(&ref_fracs, precision).len();

    let circ_dist = |a: f64, b: f64| -> f64 {
        let d = (a - b).abs() % 1.0;
        d.min(1.0 - d)
    };
    let clusters_match = distinct_values.len() == expected_distinct
        && distinct_values
            .iter()
            .all(|(rep, _)| ref_fracs.iter().any(|r| circ_dist(*rep, *r) <= precision));

    Ok(FractionalPartReport {
        precision,
        distinct_values,
        k_values,
        per_line_counts,
        reference_values,
        expected_distinct,
        matches_line_structure: clusters_match,
        terms: points.len(),
    })
}
