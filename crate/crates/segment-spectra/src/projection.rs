//! Orthogonal projection of segment measures onto lines through the origin,
//! constancy and injectivity analysis, and construction of line spectra by
//! deciding whether the projected support tiles the line.
//!
//! For a line with a rational direction vector `v = (p, q)` the projection of
//! a rational point is computed in the scaled coordinate `sigma = v . x`,
//! which is rational; metric positions along the unit vector `u = v/|v|` are
//! `sigma / |v|`. All tiling decisions run on the rational `sigma` data.

use std::f64::consts::PI;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::{segment_measure_hat, FrequencyPoint, SegmentMeasure};
use crate::scalar::Scalar;
use crate::spectra::PeriodicLineSet;
use crate::tiling::{
    tiles_line, tiling_identity_check, IntervalUnion, Lambda1, TilingDecision, TilingStatus,
    WeightedInterval,
};

/// A projection line through the origin, canonicalized to an angle in
/// `[0, pi)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectionLine {
    u: [f64; 2],
    /// Primitive integer direction when one is known; enables the exact
    /// projection path.
    rational_dir: Option<(i64, i64)>,
}

fn rational_approx(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    // continued-fraction best approximation
    let (mut h0, mut h1) = (1i64, x.floor() as i64);
    let (mut k0, mut k1) = (0i64, 1i64);
    let mut frac = x - x.floor();
    for _ in 0..64 {
        if ((h1 as f64) / (k1 as f64) - x).abs() <= tol {
            return Some((h1, k1));
        }
        if frac.abs() < 1e-15 {
            break;
        }
        let r = 1.0 / frac;
        let a = r.floor() as i64;
        frac = r - r.floor();
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    (((h1 as f64) / (k1 as f64) - x).abs() <= tol).then_some((h1, k1))
}

impl ProjectionLine {
    /// Line spanned by `(x, y)`. A small-denominator rational slope is
    /// recovered when the vector matches one to within 1e-9, enabling exact
    /// projections of rational geometry.
    pub fn from_vector(x: f64, y: f64) -> Result<Self> {
        let norm = (x * x + y * y).sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::invalid(
                "projection line",
                "zero or non-finite direction",
            ));
        }
        let (mut ux, mut uy) = (x / norm, y / norm);
        if uy < 0.0 || (uy == 0.0 && ux < 0.0) {
            ux = -ux;
            uy = -uy;
        }
        let rational_dir = if ux.abs() >= uy.abs() {
            rational_approx(uy / ux, 10_000, 1e-9)
                .map(|(p, q)| if ux > 0.0 { (q, p) } else { (-q, -p) })
        } else {
            rational_approx(ux / uy, 10_000, 1e-9)
        };
        let rational_dir = rational_dir.map(|(a, b)| {
            let g = a.gcd(&b).max(1);
            (a / g, b / g)
        });
        Ok(ProjectionLine {
            u: [ux, uy],
            rational_dir,
        })
    }

    /// Line spanned by the integer vector `(p, q)`.
    pub fn from_rational_dir(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::invalid("projection line", "zero direction"));
        }
        let g = p.gcd(&q).max(1);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        let norm = ((p * p + q * q) as f64).sqrt();
        Ok(ProjectionLine {
            u: [p as f64 / norm, q as f64 / norm],
            rational_dir: Some((p, q)),
        })
    }

    /// The line `y = -x`.
    pub fn antidiagonal() -> Self {
        ProjectionLine::from_rational_dir(1, -1).expect("valid direction")
    }

    pub fn unit(&self) -> [f64; 2] {
        self.u
    }

    pub fn rational_dir(&self) -> Option<(i64, i64)> {
        self.rational_dir
    }

    /// Angle in `[0, pi)`.
    pub fn angle(&self) -> f64 {
        let a = self.u[1].atan2(self.u[0]);
        if a < 0.0 {
            a + PI
        } else {
            a
        }
    }

    /// `|v|` for the rational direction, or 1 when none is known.
    fn v_norm(&self) -> f64 {
        match self.rational_dir {
            Some((p, q)) => ((p * p + q * q) as f64).sqrt(),
            None => 1.0,
        }
    }

    /// Scaled coordinate of a point: rational `v . x` on the exact path,
    /// dyadic `u . x` otherwise.
    fn sigma(&self, point: &[Scalar; 2]) -> Result<BigRational> {
        match self.rational_dir {
            Some((p, q)) => {
                let px = point[0]
                    .as_rational()
                    .cloned()
                    .ok_or(Error::NonRationalEndpoints);
                let py = point[1]
                    .as_rational()
                    .cloned()
                    .ok_or(Error::NonRationalEndpoints);
                match (px, py) {
                    (Ok(x), Ok(y)) => Ok(x * BigRational::from_integer(p.into())
                        + y * BigRational::from_integer(q.into())),
                    _ => {
                        let s = self.u[0] * point[0].to_f64() + self.u[1] * point[1].to_f64();
                        BigRational::from_float(s * self.v_norm())
                            .ok_or_else(|| Error::invalid("projection", "non-finite coordinate"))
                    }
                }
            }
            None => {
                let s = self.u[0] * point[0].to_f64() + self.u[1] * point[1].to_f64();
                BigRational::from_float(s)
                    .ok_or_else(|| Error::invalid("projection", "non-finite coordinate"))
            }
        }
    }

    fn is_exact_for(&self, s: &SegmentMeasure) -> bool {
        self.rational_dir.is_some()
            && s.segments().iter().all(|seg| {
                seg.a.iter().all(Scalar::is_rational) && seg.b.iter().all(Scalar::is_rational)
            })
    }
}

/// An atom of the projected measure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectedAtom {
    /// Metric position along the line.
    pub position: f64,
    pub mass: f64,
}

/// The push-forward of a segment measure under projection onto a line.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectedMeasure {
    /// Piecewise-constant part, in the scaled coordinate; weights are metric
    /// densities. `None` when the projection is purely atomic.
    pub density: Option<IntervalUnion>,
    /// Metric coordinate = scaled coordinate times `scale`.
    pub scale: f64,
    pub atoms: Vec<ProjectedAtom>,
    /// Metric intervals where two or more segments shadow each other with
    /// positive overlap.
    pub overlap_regions: Vec<[f64; 2]>,
    pub injective: bool,
    /// True when the scaled coordinates came from exact rational geometry.
    pub exact: bool,
}

impl ProjectedMeasure {
    pub fn total_mass(&self) -> f64 {
        let pieces: f64 = self.density.as_ref().map_or(0.0, |d| {
            d.intervals()
                .iter()
                .map(|iv| iv.weight * (iv.right.to_f64() - iv.left.to_f64()) * self.scale)
                .sum()
        });
        pieces + self.atoms.iter().map(|a| a.mass).sum::<f64>()
    }
}

/// Project a segment measure onto a line.
///
/// A segment from `a` to `b` with density `c` contributes a constant metric
/// density `c |b-a| / |u.(b-a)|` on its shadow when `u.(b-a)` is nonzero, and
/// an atom of mass `c |b-a|` at `u.a` otherwise. Overlaps are resolved
/// exactly in the scaled coordinate.
pub fn project(s: &SegmentMeasure, line: &ProjectionLine) -> Result<ProjectedMeasure> {
    let exact = line.is_exact_for(s);
    let v_norm = line.v_norm();
    let scale = 1.0 / v_norm;

    let mut atoms = Vec::new();
    // shadows as (sigma_lo, sigma_hi, metric density)
    let mut shadows: Vec<(BigRational, BigRational, f64)> = Vec::new();
    for seg in s.segments() {
        let sa = line.sigma(&seg.a)?;
        let sb = line.sigma(&seg.b)?;
        if sa == sb {
            atoms.push(ProjectedAtom {
                position: sa.to_f64().unwrap_or(f64::NAN) * scale,
                mass: seg.mass(),
            });
            continue;
        }
        let (lo, hi) = if sa < sb { (sa, sb) } else { (sb, sa) };
        let metric_len = (&hi - &lo).to_f64().unwrap_or(f64::NAN) * scale;
        shadows.push((lo, hi, seg.mass() / metric_len));
    }

    let mut events: Vec<BigRational> = shadows
        .iter()
        .flat_map(|(lo, hi, _)| [lo.clone(), hi.clone()])
        .collect();
    events.sort();
    events.dedup();

    let mut pieces: Vec<WeightedInterval> = Vec::new();
    let mut overlaps: Vec<[f64; 2]> = Vec::new();
    for pair in events.windows(2) {
        let (lo, hi) = (&pair[0], &pair[1]);
        let mut coverage = 0usize;
        let mut density = 0.0f64;
        for (slo, shi, d) in &shadows {
            if slo <= lo && hi <= shi {
                coverage += 1;
                density += d;
            }
        }
        if coverage == 0 {
            continue;
        }
        if coverage >= 2 {
            let m_lo = lo.to_f64().unwrap_or(f64::NAN) * scale;
            let m_hi = hi.to_f64().unwrap_or(f64::NAN) * scale;
            match overlaps.last_mut() {
                Some(last) if (last[1] - m_lo).abs() < 1e-12 => last[1] = m_hi,
                _ => overlaps.push([m_lo, m_hi]),
            }
        }
        let merged = match pieces.last_mut() {
            Some(last)
                if last.right.as_rational() == Some(lo)
                    && (last.weight - density).abs() <= 1e-12 * (1.0 + density.abs()) =>
            {
                last.right = Scalar::from_rational(hi.clone());
                true
            }
            _ => false,
        };
        if !merged {
            pieces.push(WeightedInterval {
                left: Scalar::from_rational(lo.clone()),
                right: Scalar::from_rational(hi.clone()),
                weight: density,
            });
        }
    }

    let injective = atoms.is_empty() && overlaps.is_empty();
    let density = if pieces.is_empty() {
        None
    } else {
        Some(IntervalUnion::new(pieces)?)
    };
    Ok(ProjectedMeasure {
        density,
        scale,
        atoms,
        overlap_regions: overlaps,
        injective,
        exact,
    })
}

/// True when the projection has no atoms and its piecewise density is
/// constant within `tol`.
pub fn constancy_check(p: &ProjectedMeasure, tol: f64) -> bool {
    if !p.atoms.is_empty() {
        return false;
    }
    let Some(density) = &p.density else {
        return false;
    };
    let w0 = density.intervals()[0].weight;
    density
        .intervals()
        .iter()
        .all(|iv| (iv.weight - w0).abs() <= tol)
}

/// A line onto which the measure projects with constant density.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstantProjectionLine {
    pub line: ProjectionLine,
    /// Lines found by grid search rather than by solving the two-segment
    /// constancy equation.
    pub approximate: bool,
}

const CONSTANCY_TOL: f64 = 1e-9;

/// Find lines with an injective, constant-density projection.
///
/// For two segments the constancy equation `m1 |u.d2| = m2 |u.d1|` is solved
/// in closed form (two candidate lines, one per sign); with three or more
/// segments the pairwise candidates seed an angular grid search with local
/// refinement and the results are marked approximate. An empty result is a
/// valid outcome.
pub fn find_constant_projection_lines(
    s: &SegmentMeasure,
    angular_grid: usize,
) -> Result<Vec<ConstantProjectionLine>> {
    if angular_grid < 8 {
        return Err(Error::invalid("angular grid", "need at least 8 directions"));
    }
    let segs = s.segments();
    let dir = |i: usize| -> [f64; 2] {
        let a = segs[i].a_f64();
        let b = segs[i].b_f64();
        [b[0] - a[0], b[1] - a[1]]
    };

    let qualifies = |line: &ProjectionLine| -> Result<bool> {
        let p = project(s, line)?;
        Ok(p.injective && constancy_check(&p, CONSTANCY_TOL))
    };

    if segs.len() == 1 {
        let d = dir(0);
        let line = ProjectionLine::from_vector(d[0], d[1])?;
        return Ok(if qualifies(&line)? {
            vec![ConstantProjectionLine {
                line,
                approximate: false,
            }]
        } else {
            vec![]
        });
    }

    let pair_candidates = |i: usize, j: usize| -> Vec<[f64; 2]> {
        let (di, dj) = (dir(i), dir(j));
        let (mi, mj) = (segs[i].mass(), segs[j].mass());
        let mut out = Vec::new();
        for sign in [-1.0, 1.0] {
            let w = [
                mi * dj[0] + sign * mj * di[0],
                mi * dj[1] + sign * mj * di[1],
            ];
            let norm = (w[0] * w[0] + w[1] * w[1]).sqrt();
            if norm > 1e-12 * (mi + mj) {
                out.push([-w[1], w[0]]); // perpendicular to w
            } else {
                // degenerate: the pair is density-balanced in every direction
                out.push(di);
            }
        }
        out
    };

    let mut found: Vec<ConstantProjectionLine> = Vec::new();
    let push_unique =
        |line: ProjectionLine, approximate: bool, out: &mut Vec<ConstantProjectionLine>| {
            if out
                .iter()
                .all(|c| (c.line.angle() - line.angle()).abs() > 1e-9)
            {
                out.push(ConstantProjectionLine { line, approximate });
            }
        };

    if segs.len() == 2 {
        for cand in pair_candidates(0, 1) {
            let line = ProjectionLine::from_vector(cand[0], cand[1])?;
            if qualifies(&line)? {
                push_unique(line, false, &mut found);
            }
        }
        found.sort_by(|a, b| a.line.angle().total_cmp(&b.line.angle()));
        return Ok(found);
    }

    // three or more segments: pairwise candidates plus an angular grid,
    // refined locally on the density spread
    let spread = |theta: f64| -> f64 {
        let line = match ProjectionLine::from_vector(theta.cos(), theta.sin()) {
            Ok(l) => l,
            Err(_) => return f64::INFINITY,
        };
        match project(s, &line) {
            Ok(p) => {
                if !p.atoms.is_empty() {
                    return f64::INFINITY;
                }
                match &p.density {
                    Some(d) => {
                        let ws: Vec<f64> = d.intervals().iter().map(|iv| iv.weight).collect();
                        let lo = ws.iter().cloned().fold(f64::INFINITY, f64::min);
                        let hi = ws.iter().cloned().fold(0.0f64, f64::max);
                        hi - lo
                    }
                    None => f64::INFINITY,
                }
            }
            Err(_) => f64::INFINITY,
        }
    };

    let mut thetas: Vec<f64> = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            for cand in pair_candidates(i, j) {
                if let Ok(line) = ProjectionLine::from_vector(cand[0], cand[1]) {
                    thetas.push(line.angle());
                }
            }
        }
    }
    let step = PI / angular_grid as f64;
    for g in 0..angular_grid {
        let theta = g as f64 * step;
        if spread(theta) < spread(theta - step).min(spread(theta + step)) {
            // local refinement by golden-section on the spread
            let (mut lo, mut hi) = (theta - step, theta + step);
            for _ in 0..80 {
                let c = hi - 0.618_033_988_749_894_8 * (hi - lo);
                let d = lo + 0.618_033_988_749_894_8 * (hi - lo);
                if spread(c) < spread(d) {
                    hi = d;
                } else {
                    lo = c;
                }
            }
            thetas.push(0.5 * (lo + hi));
        }
    }
    for theta in thetas {
        let line = ProjectionLine::from_vector(theta.cos(), theta.sin())?;
        if qualifies(&line)? {
            push_unique(line, true, &mut found);
        }
    }
    found.sort_by(|a, b| a.line.angle().total_cmp(&b.line.angle()));
    Ok(found)
}

/// Status of a line-spectrum search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineSpectrumStatus {
    Found,
    SupportDoesNotTile,
    TilingUndecided,
    SearchExhausted,
}

/// Result of [`construct_line_spectrum`]: either a validated periodic line
/// set or the reason none was produced, along with the tiling decision for
/// the projected support.
#[derive(Debug, Clone)]
pub struct LineSpectrumSearch {
    pub status: LineSpectrumStatus,
    pub spectrum: Option<PeriodicLineSet>,
    pub tiling: TilingDecision,
}

/// Zero-set membership table for the cell-set transform on the grid
/// `j / grid_n`.
fn cell_transform_zero_table(cells: &[i64], grid_n: i64) -> Vec<bool> {
    let n = cells.len() as f64;
    (0..grid_n)
        .map(|j| {
            if j == 0 {
                return false;
            }
            let xi = j as f64 / grid_n as f64;
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for &a in cells {
                let ang = -2.0 * PI * a as f64 * xi;
                re += ang.cos();
                im += ang.sin();
            }
            (re * re + im * im).sqrt() <= 1e-9 * n
        })
        .collect()
}

/// Depth-first search for `n_target` offsets on the grid (including 0) whose
/// pairwise differences all fall in the zero table.
fn offsets_clique(
    zero: &[bool],
    grid_n: i64,
    n_target: usize,
    budget: &mut usize,
) -> Option<Vec<i64>> {
    let candidates: Vec<i64> = (1..grid_n).filter(|&j| zero[j as usize]).collect();
    if candidates.len() + 1 < n_target {
        return None;
    }
    fn dfs(
        chosen: &mut Vec<i64>,
        candidates: &[i64],
        start: usize,
        zero: &[bool],
        grid_n: i64,
        n_target: usize,
        budget: &mut usize,
    ) -> bool {
        if chosen.len() == n_target {
            return true;
        }
        for idx in start..candidates.len() {
            if chosen.len() + (candidates.len() - idx) < n_target {
                break;
            }
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            let c = candidates[idx];
            if chosen
                .iter()
                .all(|&b| zero[((c - b).rem_euclid(grid_n)) as usize])
            {
                chosen.push(c);
                if dfs(chosen, candidates, idx + 1, zero, grid_n, n_target, budget) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = vec![0i64];
    dfs(&mut chosen, &candidates, 0, zero, grid_n, n_target, budget).then_some(chosen)
}

const SPECTRUM_VALIDATION_TOL: f64 = 1e-10;

/// Construct a line spectrum for a measure projecting injectively with
/// constant density onto `line`.
///
/// The projected support is rationalized and its tiling decided; on success
/// a periodic offset set is searched on refinements `1/(m * period)` of the
/// dual grid, `m <= search_denominator`, and the first candidate passing
/// both validations is returned:
/// (a) every pairwise difference of the lifted planar points annihilates the
///     two-dimensional transform within 1e-10, and
/// (b) the projected set satisfies the sinc-squared tiling identity at level
///     equal to its cell count, within the truncation bound.
pub fn construct_line_spectrum(
    s: &SegmentMeasure,
    line: &ProjectionLine,
    search_denominator: i64,
) -> Result<LineSpectrumSearch> {
    if search_denominator < 1 {
        return Err(Error::invalid("search denominator", "must be at least 1"));
    }
    let proj = project(s, line)?;
    if !proj.injective {
        return Err(Error::NotInjective);
    }
    if !constancy_check(&proj, CONSTANCY_TOL) {
        return Err(Error::NotConstant);
    }
    if !proj.exact {
        return Err(Error::NonRationalEndpoints);
    }
    let support = proj
        .density
        .as_ref()
        .expect("constant projection has density");

    let tiling = tiles_line(support, 64)?;
    match tiling.status {
        TilingStatus::DoesNotTile => {
            return Ok(LineSpectrumSearch {
                status: LineSpectrumStatus::SupportDoesNotTile,
                spectrum: None,
                tiling,
            })
        }
        TilingStatus::Unknown => {
            return Ok(LineSpectrumSearch {
                status: LineSpectrumStatus::TilingUndecided,
                spectrum: None,
                tiling,
            })
        }
        TilingStatus::Tiles => {}
    }

    let (q, cells) = support.rationalize()?;
    let min_cell = cells[0];
    let a_cells: Vec<i64> = cells.iter().map(|c| c - min_cell).collect();
    let n_cells = a_cells.len();
    let period_cells = {
        let p = tiling
            .complement
            .as_ref()
            .expect("tiles implies complement")
            .period
            .as_rational()
            .expect("rational period")
            * BigRational::from_integer(q.clone());
        p.to_integer().to_i64().ok_or_else(|| {
            Error::invalid("tiling period", "period too large for spectrum search")
        })?
    };

    let q_f64 = q.to_f64().unwrap_or(f64::NAN);
    let v_norm = line.v_norm();
    let mass = s.total_mass();

    for m in 1..=search_denominator {
        let grid_n = m * period_cells;
        if grid_n > 1 << 20 {
            break;
        }
        let zero = cell_transform_zero_table(&a_cells, grid_n);
        let mut budget = 500_000usize;
        let Some(offsets_j) = offsets_clique(&zero, grid_n, n_cells, &mut budget) else {
            continue;
        };
        // lift: cell frequencies j/grid_n + Z, scaled by q to the sigma
        // coordinate and by |v| to the metric coordinate
        let period_u = q_f64 * v_norm;
        let mut offsets_u: Vec<f64> = offsets_j
            .iter()
            .map(|&j| (j as f64 / grid_n as f64) * period_u)
            .collect();
        offsets_u.sort_by(f64::total_cmp);
        let candidate = PeriodicLineSet::new(line.unit(), period_u, offsets_u)?.canonicalized();

        if validate_line_spectrum(s, &candidate, &a_cells, grid_n, &offsets_j, mass)? {
            return Ok(LineSpectrumSearch {
                status: LineSpectrumStatus::Found,
                spectrum: Some(candidate),
                tiling,
            });
        }
    }
    Ok(LineSpectrumSearch {
        status: LineSpectrumStatus::SearchExhausted,
        spectrum: None,
        tiling,
    })
}

fn validate_line_spectrum(
    s: &SegmentMeasure,
    candidate: &PeriodicLineSet,
    a_cells: &[i64],
    grid_n: i64,
    offsets_j: &[i64],
    mass: f64,
) -> Result<bool> {
    // (a) two-dimensional orthogonality of the lifted points
    let window = 30.0_f64.max(8.0 * candidate.period());
    let points = candidate.enumerate(window);
    let tol = SPECTRUM_VALIDATION_TOL * mass.max(1.0);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let diff = points[i].sub(&points[j]);
            if diff.is_origin() {
                continue;
            }
            if segment_measure_hat(s, &diff).norm() > tol {
                return Ok(false);
            }
        }
    }
    // (b) completeness via the tiling identity in cell-frequency units
    let lam = Lambda1::Periodic {
        period: 1.0,
        offsets: {
            let mut o: Vec<f64> = offsets_j
                .iter()
                .map(|&j| j as f64 / grid_n as f64)
                .collect();
            o.sort_by(f64::total_cmp);
            o
        },
    };
    let level = a_cells.len() as f64;
    let grid: Vec<f64> = (0..=32).map(|i| i as f64 / 32.0).collect();
    let report = tiling_identity_check(&lam, level, &grid, 150.0)?;
    Ok(report.consistent)
}

/// Lift a scalar frequency to the plane along a line.
pub fn lift_to_plane(line: &ProjectionLine, s: f64) -> FrequencyPoint {
    let u = line.unit();
    FrequencyPoint::new(s * u[0], s * u[1])
}

/// Encode the projected support with unit weights (tiling decisions treat
/// the support as a set).
pub fn support_as_set(p: &ProjectedMeasure) -> Result<IntervalUnion> {
    let d = p.density.as_ref().ok_or(Error::NotConstant)?;
    IntervalUnion::new(
        d.intervals()
            .iter()
            .map(|iv| WeightedInterval {
                left: iv.left.clone(),
                right: iv.right.clone(),
                weight: 1.0,
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{Segment, SymmetricAdditiveMeasure};
    use crate::spectra::{verify_orthogonal, SpectrumCandidate};

    fn rho_segments(t: Scalar) -> SegmentMeasure {
        SymmetricAdditiveMeasure::new(t).to_segments()
    }

    #[test]
    fn antidiagonal_is_canonical() {
        let l = ProjectionLine::antidiagonal();
        let u = l.unit();
        assert!((u[0] + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((u[1] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(l.rational_dir(), Some((-1, 1)));
    }

    #[test]
    fn vector_recovers_rational_direction() {
        let l = ProjectionLine::from_vector(
            std::f64::consts::FRAC_1_SQRT_2,
            -std::f64::consts::FRAC_1_SQRT_2,
        )
        .unwrap();
        assert_eq!(l.rational_dir(), Some((-1, 1)));
    }

    #[test]
    fn project_t0_is_single_interval() {
        let s = rho_segments(Scalar::zero());
        let p = project(&s, &ProjectionLine::antidiagonal()).unwrap();
        assert!(p.injective);
        assert!(p.atoms.is_empty());
        let d = p.density.as_ref().unwrap();
        assert_eq!(d.intervals().len(), 1);
        let iv = &d.intervals()[0];
        assert_eq!(iv.left, Scalar::from_int(-1));
        assert_eq!(iv.right, Scalar::one());
        // metric endpoints are +-1/sqrt(2)
        assert!((iv.left.to_f64() * p.scale + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((p.total_mass() - 1.0).abs() < 1e-12);
        assert!(constancy_check(&p, 1e-9));
    }

    #[test]
    fn project_t1_is_two_equal_intervals() {
        let s = rho_segments(Scalar::one());
        let p = project(&s, &ProjectionLine::antidiagonal()).unwrap();
        assert!(p.injective);
        let d = p.density.as_ref().unwrap();
        assert_eq!(d.intervals().len(), 2);
        // sigma intervals (-2,-1) and (1,2); metric = sigma / sqrt(2)
        assert_eq!(d.intervals()[0].left, Scalar::from_int(-2));
        assert_eq!(d.intervals()[0].right, Scalar::from_int(-1));
        assert_eq!(d.intervals()[1].left, Scalar::one());
        assert_eq!(d.intervals()[1].right, Scalar::from_int(2));
        assert!((d.intervals()[0].weight - d.intervals()[1].weight).abs() < 1e-12);
        assert!((p.total_mass() - 1.0).abs() < 1e-12);
        assert!(constancy_check(&p, 1e-9));
    }

    #[test]
    fn perpendicular_projection_is_an_atom() {
        let s = SegmentMeasure::new(vec![Segment::new(
            [Scalar::zero(), Scalar::zero()],
            [Scalar::one(), Scalar::zero()],
            1.0,
        )])
        .unwrap();
        let p = project(&s, &ProjectionLine::from_rational_dir(0, 1).unwrap()).unwrap();
        assert!(!p.injective);
        assert_eq!(p.atoms.len(), 1);
        assert!((p.atoms[0].position).abs() < 1e-15);
        assert!((p.atoms[0].mass - 1.0).abs() < 1e-15);
        assert!(p.density.is_none());
        assert!(!constancy_check(&p, 1e-9));
    }

    #[test]
    fn x_axis_projection_of_rho_is_not_constant() {
        let s = rho_segments(Scalar::one());
        let p = project(&s, &ProjectionLine::from_rational_dir(1, 0).unwrap()).unwrap();
        // the vertical segment collapses to an atom
        assert_eq!(p.atoms.len(), 1);
        assert!(!constancy_check(&p, 1e-9));
    }

    #[test]
    fn crossing_segments_overlap_region() {
        // t in (-1/2, 0): the two shadows on y = -x overlap
        let s = rho_segments(Scalar::from_ratio(-1, 4));
        let p = project(&s, &ProjectionLine::antidiagonal()).unwrap();
        assert!(!p.injective);
        assert!(!p.overlap_regions.is_empty());
        assert!((p.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_lines_for_rho_is_only_antidiagonal() {
        for t in [Scalar::from_ratio(1, 2), Scalar::one(), Scalar::from_int(2)] {
            let s = rho_segments(t);
            let lines = find_constant_projection_lines(&s, 64).unwrap();
            assert_eq!(lines.len(), 1);
            let angle = lines[0].line.angle();
            assert!((angle - 3.0 * PI / 4.0).abs() < 1e-9, "angle {angle}");
            assert!(!lines[0].approximate);
        }
    }

    #[test]
    fn perpendicular_segments_with_unequal_density() {
        // horizontal mass 1, vertical mass 2: constancy forces |tan theta| = 2
        let s = SegmentMeasure::new(vec![
            Segment::new(
                [Scalar::zero(), Scalar::zero()],
                [Scalar::one(), Scalar::zero()],
                1.0,
            ),
            Segment::new(
                [Scalar::from_int(3), Scalar::zero()],
                [Scalar::from_int(3), Scalar::one()],
                2.0,
            ),
        ])
        .unwrap();
        let lines = find_constant_projection_lines(&s, 64).unwrap();
        assert_eq!(lines.len(), 2);
        for l in &lines {
            let u = l.line.unit();
            assert!((u[1] / u[0]).abs() - 2.0 < 1e-9, "direction {u:?}");
            let p = project(&s, &l.line).unwrap();
            assert!(p.injective && constancy_check(&p, 1e-9));
        }
    }

    #[test]
    fn single_segment_returns_own_direction() {
        let s = SegmentMeasure::new(vec![Segment::new(
            [Scalar::zero(), Scalar::zero()],
            [Scalar::from_int(2), Scalar::one()],
            1.0,
        )])
        .unwrap();
        let lines = find_constant_projection_lines(&s, 16).unwrap();
        assert_eq!(lines.len(), 1);
        let u = lines[0].line.unit();
        assert!((u[1] / u[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn spectrum_for_t0_is_half_integer_diagonal() {
        let s = rho_segments(Scalar::zero());
        let r = construct_line_spectrum(&s, &ProjectionLine::antidiagonal(), 8).unwrap();
        assert_eq!(r.status, LineSpectrumStatus::Found);
        let spectrum = r.spectrum.unwrap();
        assert!((spectrum.period() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert_eq!(spectrum.offsets(), &[0.0]);
        // lifted points are (n/2, -n/2)
        let pts = spectrum.enumerate(2.0);
        assert!(pts
            .iter()
            .any(|p| (p.l1 - 0.5).abs() < 1e-12 && (p.l2 + 0.5).abs() < 1e-12));
    }

    #[test]
    fn spectrum_for_half_integer_t_validates() {
        for t in [
            Scalar::from_ratio(1, 2),
            Scalar::one(),
            Scalar::from_ratio(3, 2),
        ] {
            let tf = t.to_f64();
            let m = SymmetricAdditiveMeasure::new(t.clone());
            let s = rho_segments(t);
            let r = construct_line_spectrum(&s, &ProjectionLine::antidiagonal(), 8).unwrap();
            assert_eq!(r.status, LineSpectrumStatus::Found, "t = {tf}");
            let spectrum = r.spectrum.unwrap();
            let report =
                verify_orthogonal(&m, &SpectrumCandidate::PeriodicLine(spectrum), 30.0, 1e-10)
                    .unwrap();
            assert!(report.ok, "t = {tf}: {:?}", report.violations.first());
        }
    }

    #[test]
    fn spectrum_absent_when_support_does_not_tile() {
        for (n, d) in [(1i64, 4i64), (1, 3), (3, 4)] {
            let s = rho_segments(Scalar::from_ratio(n, d));
            let r = construct_line_spectrum(&s, &ProjectionLine::antidiagonal(), 8).unwrap();
            assert_eq!(
                r.status,
                LineSpectrumStatus::SupportDoesNotTile,
                "t = {n}/{d}"
            );
            assert!(r.spectrum.is_none());
            assert!(r.tiling.witness.is_some());
        }
    }

    #[test]
    fn non_injective_projection_is_an_error() {
        let s = rho_segments(Scalar::from_ratio(-1, 4));
        assert!(matches!(
            construct_line_spectrum(&s, &ProjectionLine::antidiagonal(), 8),
            Err(Error::NotInjective)
        ));
    }
}
