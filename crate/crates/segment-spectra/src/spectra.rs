//! Candidate spectra: finite window sets and periodic line sets, pairwise
//! orthogonality verification, greedy maximal packings and their statistics.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::measure::{FrequencyPoint, SymmetricAdditiveMeasure};
use crate::scalar::Scalar;
use crate::zeroset::{
    classify, is_zero, k_range_for_strip, line_roots_batch, LineWindow, MEMBERSHIP_TOL,
};

/// A finite set of frequency points containing the origin.
#[derive(Debug, Clone)]
pub struct WindowSet {
    points: Vec<FrequencyPoint>,
}

impl WindowSet {
    /// Points must be pairwise distinct and include the origin.
    pub fn new(points: Vec<FrequencyPoint>) -> Result<Self> {
        if !points.iter().any(|p| p.is_origin()) {
            return Err(Error::invalid("window set", "must contain the origin"));
        }
        let mut sorted = points.clone();
        sorted.sort_by(|a, b| a.l1.total_cmp(&b.l1).then(a.l2.total_cmp(&b.l2)));
        for w in sorted.windows(2) {
            if (w[0].l1 - w[1].l1).abs() < 1e-12 && (w[0].l2 - w[1].l2).abs() < 1e-12 {
                return Err(Error::invalid(
                    "window set",
                    format!("duplicate point ({}, {})", w[0].l1, w[0].l2),
                ));
            }
        }
        Ok(WindowSet { points })
    }

    pub fn points(&self) -> &[FrequencyPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The periodic set `{(o + n p) u : o in offsets, n in Z}` on the line with
/// unit direction `u`.
#[derive(Debug, Clone)]
pub struct PeriodicLineSet {
    direction: [f64; 2],
    period: f64,
    offsets: Vec<f64>,
}

impl PeriodicLineSet {
    /// `direction` is normalized; offsets must be strictly increasing inside
    /// `[0, period)` and include `0` so the set contains the origin.
    pub fn new(direction: [f64; 2], period: f64, offsets: Vec<f64>) -> Result<Self> {
        let norm = (direction[0] * direction[0] + direction[1] * direction[1]).sqrt();
        if !(norm > 0.0) {
            return Err(Error::invalid("periodic line set", "zero direction"));
        }
        if !(period > 0.0) {
            return Err(Error::invalid(
                "periodic line set",
                "period must be positive",
            ));
        }
        if offsets.is_empty() || offsets[0] != 0.0 {
            return Err(Error::invalid(
                "periodic line set",
                "offsets must start at 0 so the set contains the origin",
            ));
        }
        for w in offsets.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::invalid(
                    "periodic line set",
                    "offsets must be strictly increasing",
                ));
            }
        }
        if *offsets.last().unwrap() >= period {
            return Err(Error::invalid(
                "periodic line set",
                "offsets must lie in [0, period)",
            ));
        }
        Ok(PeriodicLineSet {
            direction: [direction[0] / norm, direction[1] / norm],
            period,
            offsets,
        })
    }

    pub fn direction(&self) -> [f64; 2] {
        self.direction
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// Smallest-period representation: when the offsets are invariant under
    /// a shift `period / j`, the period is reduced and the offsets folded.
    pub fn canonicalized(self) -> PeriodicLineSet {
        let n = self.offsets.len();
        for j in (2..=n).rev() {
            if !n.is_multiple_of(j) {
                continue;
            }
            let t = self.period / j as f64;
            let invariant = self.offsets.iter().all(|&o| {
                let shifted = (o + t) % self.period;
                self.offsets
                    .iter()
                    .any(|&b| (b - shifted).abs() <= 1e-9 * self.period)
            });
            if invariant {
                let folded: Vec<f64> = self
                    .offsets
                    .iter()
                    .cloned()
                    .filter(|&o| o < t - 1e-9 * self.period)
                    .collect();
                let folded = if folded.is_empty() { vec![0.0] } else { folded };
                return PeriodicLineSet {
                    direction: self.direction,
                    period: t,
                    offsets: folded,
                };
            }
        }
        self
    }

    /// Points with line parameter `|o + n p| <= window`.
    pub fn enumerate(&self, window: f64) -> Vec<FrequencyPoint> {
        let mut out = Vec::new();
        let n_max = (window / self.period).ceil() as i64 + 1;
        for n in -n_max..=n_max {
            for &o in &self.offsets {
                let s = o + n as f64 * self.period;
                if s.abs() <= window {
                    out.push(FrequencyPoint::new(
                        s * self.direction[0],
                        s * self.direction[1],
                    ));
                }
            }
        }
        out.sort_by(|a, b| a.l1.total_cmp(&b.l1).then(a.l2.total_cmp(&b.l2)));
        out
    }
}

/// A candidate spectrum.
#[derive(Debug, Clone)]
pub enum SpectrumCandidate {
    Window(WindowSet),
    PeriodicLine(PeriodicLineSet),
}

impl SpectrumCandidate {
    /// Concrete points; `window` bounds the enumeration of periodic sets
    /// (finite sets are returned whole).
    pub fn enumerate(&self, window: f64) -> Vec<FrequencyPoint> {
        match self {
            SpectrumCandidate::Window(w) => w.points().to_vec(),
            SpectrumCandidate::PeriodicLine(p) => p.enumerate(window),
        }
    }
}

/// First-coordinate projection of a candidate as identity-check input:
/// finite sets project point by point, periodic line sets stay periodic.
///
/// Fails for lines perpendicular to the first axis, where the projection
/// collapses.
pub fn candidate_lambda1(c: &SpectrumCandidate, window: f64) -> Result<crate::tiling::Lambda1> {
    match c {
        SpectrumCandidate::Window(w) => {
            let mut l1s: Vec<f64> = w.points().iter().map(|p| p.l1).collect();
            l1s.sort_by(f64::total_cmp);
            let _ = window;
            Ok(crate::tiling::Lambda1::Finite(l1s))
        }
        SpectrumCandidate::PeriodicLine(p) => {
            let u1 = p.direction()[0];
            if u1.abs() < 1e-9 {
                return Err(Error::invalid(
                    "candidate",
                    "line is perpendicular to the first axis",
                ));
            }
            let period = (p.period() * u1).abs();
            let mut offsets: Vec<f64> = p
                .offsets()
                .iter()
                .map(|o| (o * u1).rem_euclid(period))
                .collect();
            offsets.sort_by(f64::total_cmp);
            offsets.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
            Ok(crate::tiling::Lambda1::Periodic { period, offsets })
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
enum CandidateRepr {
    Window {
        points: Vec<[f64; 2]>,
    },
    PeriodicLine {
        direction: [f64; 2],
        period: f64,
        offsets: Vec<f64>,
    },
}

/// On-disk form of a candidate: `{"schema":"v1","t":...,"variant":...}`.
#[derive(Serialize, Deserialize)]
pub struct CandidateFile {
    pub schema: String,
    pub t: Scalar,
    #[serde(flatten)]
    repr: CandidateRepr,
}

impl CandidateFile {
    pub fn new(t: Scalar, candidate: &SpectrumCandidate) -> Self {
        let repr = match candidate {
            SpectrumCandidate::Window(w) => CandidateRepr::Window {
                points: w.points().iter().map(|p| [p.l1, p.l2]).collect(),
            },
            SpectrumCandidate::PeriodicLine(p) => CandidateRepr::PeriodicLine {
                direction: p.direction(),
                period: p.period(),
                offsets: p.offsets().to_vec(),
            },
        };
        CandidateFile {
            schema: "v1".to_string(),
            t,
            repr,
        }
    }

    pub fn candidate(&self) -> Result<SpectrumCandidate> {
        match &self.repr {
            CandidateRepr::Window { points } => Ok(SpectrumCandidate::Window(WindowSet::new(
                points
                    .iter()
                    .map(|p| FrequencyPoint::new(p[0], p[1]))
                    .collect(),
            )?)),
            CandidateRepr::PeriodicLine {
                direction,
                period,
                offsets,
            } => Ok(SpectrumCandidate::PeriodicLine(PeriodicLineSet::new(
                *direction,
                *period,
                offsets.clone(),
            )?)),
        }
    }
}

/// One offending pair from an orthogonality check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ViolationPair {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub abs_transform: f64,
}

/// Outcome of [`verify_orthogonal`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrthogonalityReport {
    pub ok: bool,
    pub points_checked: usize,
    pub pairs_checked: usize,
    pub tol: f64,
    pub window: f64,
    pub violations: Vec<ViolationPair>,
}

/// Check that all pairwise differences of the enumerated candidate lie in
/// the zero set (or vanish); every violating pair is reported.
///
/// Pairs are checked in parallel with the `parallel` feature.
pub fn verify_orthogonal(
    m: &SymmetricAdditiveMeasure,
    c: &SpectrumCandidate,
    window: f64,
    tol: f64,
) -> Result<OrthogonalityReport> {
    m.ensure_not_plus_space()?;
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", "tolerance must be positive"));
    }
    let points = c.enumerate(window);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            pairs.push((i, j));
        }
    }
    // conjugate symmetry of the transform makes one difference direction enough
    let violations = exec::filter_map_collect(&pairs, |&(i, j)| {
        let diff = points[i].sub(&points[j]);
        if diff.is_origin() {
            return None;
        }
        let abs = crate::measure::rho_hat(m, &diff).norm();
        (abs > tol).then(|| ViolationPair {
            a: [points[i].l1, points[i].l2],
            b: [points[j].l1, points[j].l2],
            abs_transform: abs,
        })
    });
    Ok(OrthogonalityReport {
        ok: violations.is_empty(),
        points_checked: points.len(),
        pairs_checked: pairs.len(),
        tol,
        window,
        violations,
    })
}

/// Sector constant for the packing candidate region: candidates satisfy
/// `|l1|/K <= |l2| <= K |l1|`. True spectra are confined to such a sector;
/// fixing it makes the candidate region for a window an order ideal of the
/// greedy visit order, so packings are monotone in the window.
pub const PACK_SECTOR_K: f64 = 4.0;

/// Greedy maximal orthogonal packing over the strip `|l1| <= window`
/// intersected with the sector `|l1|/K <= |l2| <= K |l1|` (K = 4).
///
/// Candidates are the on-line zeros of the transform on every admissible
/// line meeting that region, visited in lexicographic `(|l1|, l1, l2)` order
/// starting from the origin; a point joins when its difference with every
/// member so far is again a zero. Deterministic by construction, and the
/// result for a window is a subset of the result for any larger window.
pub fn greedy_pack(m: &SymmetricAdditiveMeasure, window: f64, step: f64) -> Result<WindowSet> {
    m.ensure_not_plus_space()?;
    if !(window > 0.0) || !(step > 0.0) {
        return Err(Error::invalid(
            "greedy pack",
            "window and step must be positive",
        ));
    }
    let k_max = k_range_for_strip(m, window, PACK_SECTOR_K);
    let pad = 1e-9;
    let mut windows = Vec::new();
    for k in -k_max..=k_max {
        windows.push(LineWindow::new(k, -window - pad, window + pad)?);
    }
    let roots = line_roots_batch(m, &windows, step)?;
    let in_sector = |p: &FrequencyPoint| {
        let (a, b) = (p.l1.abs(), p.l2.abs());
        b <= PACK_SECTOR_K * a + pad && a <= PACK_SECTOR_K * b + pad
    };
    let mut candidates: Vec<FrequencyPoint> = roots
        .iter()
        .map(|r| r.point())
        .filter(|p| p.l1.abs() <= window + pad)
        .filter(&in_sector)
        .filter(|p| p.norm_inf() > 1e-9)
        .collect();
    candidates.sort_by(|a, b| {
        a.l1.abs()
            .total_cmp(&b.l1.abs())
            .then(a.l1.total_cmp(&b.l1))
            .then(a.l2.total_cmp(&b.l2))
    });

    let mut accepted = vec![FrequencyPoint::origin()];
    for cand in candidates {
        let ok = accepted
            .iter()
            .all(|a| is_zero(m, &cand.sub(a), MEMBERSHIP_TOL));
        if ok {
            accepted.push(cand);
        }
    }
    WindowSet::new(accepted)
}

/// Greedy maximal orthogonal packing drawn from the integer lattice instead
/// of the admissible lines (the other branch of the lattice/line dichotomy
/// for candidate spectra). Same region, order, and acceptance rule as
/// [`greedy_pack`].
pub fn greedy_pack_integer(m: &SymmetricAdditiveMeasure, window: f64) -> Result<WindowSet> {
    m.ensure_not_plus_space()?;
    if !(window > 0.0) {
        return Err(Error::invalid("greedy pack", "window must be positive"));
    }
    let w = window.floor() as i64;
    let mut candidates: Vec<FrequencyPoint> = Vec::new();
    for n in -w..=w {
        if n == 0 {
            continue;
        }
        let bound = (PACK_SECTOR_K * n.abs() as f64).floor() as i64;
        for m2 in -bound..=bound {
            if m2 == 0 || (n.abs() as f64) > PACK_SECTOR_K * m2.abs() as f64 {
                continue;
            }
            candidates.push(FrequencyPoint::new(n as f64, m2 as f64));
        }
    }
    candidates.sort_by(|a, b| {
        a.l1.abs()
            .total_cmp(&b.l1.abs())
            .then(a.l1.total_cmp(&b.l1))
            .then(a.l2.total_cmp(&b.l2))
    });
    let mut accepted = vec![FrequencyPoint::origin()];
    for cand in candidates {
        let ok = accepted
            .iter()
            .all(|a| is_zero(m, &cand.sub(a), MEMBERSHIP_TOL));
        if ok {
            accepted.push(cand);
        }
    }
    WindowSet::new(accepted)
}

/// Descriptive statistics of a verified packing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PackingStats {
    /// Max of `max(|l2|/|l1|, |l1|/|l2|)` over points off the axes;
    /// `None` when there is no nonzero point.
    pub k_observed: Option<f64>,
    /// Clustered successive gaps of the first-coordinate projection,
    /// as (representative, count).
    pub gaps: Vec<(f64, usize)>,
    /// Points per line index, from classification.
    pub per_line_counts: BTreeMap<i64, usize>,
    /// Nonzero points with a vanishing coordinate (would make the ratio
    /// infinite); reported separately rather than folded into the max.
    pub axis_points: Vec<[f64; 2]>,
    /// Points that classify onto no admissible line.
    pub off_line_points: usize,
    /// Largest number of points sharing a first (or second) coordinate.
    pub axis_multiplicity: usize,
}

/// Gap clustering quantum for packing output (refined roots carry about
/// 1e-12 error, amplified by differencing).
pub const PACK_GAP_QUANTUM: f64 = 1e-6;

/// Compute packing statistics; the candidate is assumed verified orthogonal.
pub fn packing_stats(m: &SymmetricAdditiveMeasure, c: &WindowSet) -> Result<PackingStats> {
    let mut k_observed: Option<f64> = None;
    let mut axis_points = Vec::new();
    let mut per_line_counts = BTreeMap::new();
    let mut off_line = 0usize;
    for p in c.points() {
        if p.is_origin() {
            continue;
        }
        if p.l1.abs() <= 1e-12 || p.l2.abs() <= 1e-12 {
            axis_points.push([p.l1, p.l2]);
        } else {
            let ratio = (p.l2 / p.l1).abs().max((p.l1 / p.l2).abs());
            k_observed = Some(k_observed.map_or(ratio, |k: f64| k.max(ratio)));
        }
        match classify(m, p, 1e-8)?.k {
            Some(k) => *per_line_counts.entry(k).or_insert(0) += 1,
            None => off_line += 1,
        }
    }

    let mut l1s: Vec<f64> = c.points().iter().map(|p| p.l1).collect();
    l1s.sort_by(f64::total_cmp);
    l1s.dedup_by(|a, b| (*a - *b).abs() <= PACK_GAP_QUANTUM);
    let diffs: Vec<f64> = l1s.windows(2).map(|w| w[1] - w[0]).collect();
    let gaps = cluster_values(&diffs, PACK_GAP_QUANTUM);

    let mult = |coords: &mut Vec<f64>| -> usize {
        coords.sort_by(f64::total_cmp);
        let mut best = 0usize;
        let mut i = 0usize;
        while i < coords.len() {
            let mut j = i + 1;
            while j < coords.len() && coords[j] - coords[i] <= 1e-9 {
                j += 1;
            }
            best = best.max(j - i);
            i = j;
        }
        best
    };
    let mut c1: Vec<f64> = c.points().iter().map(|p| p.l1).collect();
    let mut c2: Vec<f64> = c.points().iter().map(|p| p.l2).collect();
    let axis_multiplicity = mult(&mut c1).max(mult(&mut c2));

    Ok(PackingStats {
        k_observed,
        gaps,
        per_line_counts,
        axis_points,
        off_line_points: off_line,
        axis_multiplicity,
    })
}

/// Cluster a list of values to within `quantum`; returns sorted
/// (representative, count) pairs. Representatives are cluster means.
pub fn cluster_values(values: &[f64], quantum: f64) -> Vec<(f64, usize)> {
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut i = 0usize;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] - sorted[j - 1] <= quantum {
            j += 1;
        }
        let count = j - i;
        let mean = sorted[i..j].iter().sum::<f64>() / count as f64;
        out.push((mean, count));
        i = j;
    }
    out
}

/// The diagonal reference set `{(n/2, -n/2)}` as a periodic line set.
pub fn diagonal_half_integer_set() -> PeriodicLineSet {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    PeriodicLineSet::new([s, -s], s, vec![0.0]).expect("valid reference set")
}
