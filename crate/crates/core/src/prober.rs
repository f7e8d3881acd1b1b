//! Monte-Carlo openness prober: samples the image of an ε-cap around a
//! preimage, checks convexity of the image cloud, measures how much of a
//! scaled copy of the range is covered, and issues an empirical open /
//! not-open verdict for the range map at that preimage.
//!
//! Verdicts are sampling-limited. Every coverage gap is compared against a
//! bootstrap noise estimate (8 interleaved sample splits); a gap is treated
//! as real only when it exceeds three times the noise plus the margin.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, diameter, signed_distance_convex, NearestGrid};
use crate::matrix::{quadratic_form, ComplexSquareMatrix, UnitVector, C64};
use crate::sampling::sample_cap;
use crate::support::BoundaryModel;

#[derive(Debug, Clone)]
pub struct ProbeConfig {
    /// Cap radii, probed in the given order (default decreasing).
    pub epsilons: Vec<f64>,
    pub samples_per_epsilon: usize,
    /// Scaling factors δ for the covered-copy measurement, in (0, 1].
    pub delta_grid: Vec<f64>,
    /// Number of ray directions for the coverage test.
    pub coverage_resolution: usize,
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        // 64 log-spaced deltas over [5e-3, 1]
        let n = 64;
        let (lo, hi) = (5e-3f64.ln(), 1.0f64.ln());
        let delta_grid = (0..n)
            .map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp())
            .collect();
        Self {
            epsilons: vec![0.5, 0.25, 0.1],
            samples_per_epsilon: 20_000,
            delta_grid,
            coverage_resolution: 256,
            seed: 0x5EED,
        }
    }
}

impl ProbeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epsilons.is_empty() || self.epsilons.iter().any(|&e| e <= 0.0 || e > 2.0) {
            return Err(Error::InvalidInput("epsilons must lie in (0, 2]".into()));
        }
        if self.delta_grid.is_empty() || self.delta_grid.iter().any(|&d| d <= 0.0 || d > 1.0) {
            return Err(Error::InvalidInput("delta grid must lie in (0, 1]".into()));
        }
        if self.samples_per_epsilon < 64 {
            return Err(Error::InvalidInput("need at least 64 samples per epsilon".into()));
        }
        Ok(())
    }

    pub fn min_delta(&self) -> f64 {
        self.delta_grid.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Open,
    NotOpen,
    Inconclusive,
}

/// Per-ε measurement record.
#[derive(Debug, Clone)]
pub struct EpsilonRecord {
    pub epsilon: f64,
    pub convexity_defect: f64,
    pub delta_max_covered: f64,
    pub relative_nbhd_covered: bool,
    /// Worst distance of a required neighborhood point outside the cloud hull.
    pub uncovered_gap: f64,
    /// Bootstrap estimate of the sampling resolution of the gap.
    pub noise_estimate: f64,
}

/// Probe results for a single tested preimage.
#[derive(Debug, Clone)]
pub struct PreimageProbe {
    pub x: UnitVector,
    pub records: Vec<EpsilonRecord>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub z: C64,
    pub probes: Vec<PreimageProbe>,
    /// Open at every tested preimage.
    pub strong_verdict: Verdict,
    /// Open at at least one tested preimage. Sampling cannot exhaust the
    /// preimage set, so this only speaks for the listed preimages.
    pub weak_verdict: Verdict,
}

/// Image of the ε-cap around `x` under the range map.
pub fn cap_image(
    a: &ComplexSquareMatrix,
    x: &UnitVector,
    epsilon: f64,
    samples: usize,
    seed: u64,
) -> Vec<C64> {
    sample_cap(x, epsilon, seed, samples)
        .iter()
        .map(|y| quadratic_form(a, y.components()))
        .collect()
}

/// Normalized non-convexity of a point cloud: worst distance from a midpoint
/// of two hull vertices to its nearest cloud point, over the cloud diameter.
/// Tends to zero with sample count when the underlying image is convex.
pub fn convexity_defect(cloud: &[C64]) -> f64 {
    if cloud.len() < 2 {
        return 0.0;
    }
    let diam = diameter(cloud);
    if diam < 1e-12 {
        return 0.0;
    }
    let hull = convex_hull(cloud);
    let grid = NearestGrid::build(cloud);
    // cap the number of probe pairs; stride deterministically over vertices
    let stride = (hull.len() / 120).max(1);
    let verts: Vec<C64> = hull.iter().copied().step_by(stride).collect();
    let mut worst = 0.0f64;
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let mid = (verts[i] + verts[j]) * 0.5;
            worst = worst.max(grid.nearest_distance(mid));
        }
    }
    worst / diam
}

/// Largest δ in the grid whose scaled copy δ·W + (1−δ)·z lies inside the
/// cloud hull, with the same noise allowance as the neighborhood test.
pub fn delta_coverage(
    model: &BoundaryModel,
    z: C64,
    cloud: &[C64],
    config: &ProbeConfig,
) -> f64 {
    let diam_w = diameter(&model.hull);
    if diam_w < 1e-12 {
        return 1.0;
    }
    let cloud_hull = convex_hull(cloud);
    let splits = split_hulls(cloud);
    let margin = 1e-6 * diam_w;
    let dirs = ray_targets(model, z, config.coverage_resolution);
    let mut grid: Vec<f64> = config.delta_grid.clone();
    grid.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    for &delta in &grid {
        let probes: Vec<C64> = dirs.iter().map(|&w| z + (w - z) * delta).collect();
        let gap = coverage_gap(&probes, &cloud_hull);
        let noise = noise_estimate(&probes, gap, &splits);
        if gap <= 3.0 * noise + margin {
            return delta;
        }
    }
    0.0
}

/// Full openness probe of z at the given preimages.
pub fn openness_verdict(
    a: &ComplexSquareMatrix,
    model: &BoundaryModel,
    z: C64,
    preimages: &[UnitVector],
    config: &ProbeConfig,
) -> Result<ProbeReport> {
    config.validate()?;
    if preimages.is_empty() {
        return Err(Error::InvalidInput("need at least one preimage to probe".into()));
    }
    let diam_w = diameter(&model.hull);
    let r0 = config.min_delta() * diam_w;
    let required = neighborhood_points(model, z, r0);

    let mut probes = Vec::with_capacity(preimages.len());
    for (pi, x) in preimages.iter().enumerate() {
        let mut records = Vec::with_capacity(config.epsilons.len());
        for (ei, &eps) in config.epsilons.iter().enumerate() {
            let seed = config
                .seed
                .wrapping_add((pi as u64) << 32)
                .wrapping_add(ei as u64 + 1);
            let cloud = cap_image(a, x, eps, config.samples_per_epsilon, seed);
            records.push(epsilon_record(model, z, &cloud, eps, &required, config));
        }
        let verdict = preimage_verdict(&records, r0);
        probes.push(PreimageProbe { x: x.clone(), records, verdict });
    }

    let strong_verdict = combine(&probes, true);
    let weak_verdict = combine(&probes, false);
    Ok(ProbeReport { z, probes, strong_verdict, weak_verdict })
}

fn epsilon_record(
    model: &BoundaryModel,
    z: C64,
    cloud: &[C64],
    epsilon: f64,
    required: &[C64],
    config: &ProbeConfig,
) -> EpsilonRecord {
    let diam_w = diameter(&model.hull);
    let defect = convexity_defect(cloud);
    if diam_w < 1e-12 {
        // degenerate range: a single point is trivially covered
        return EpsilonRecord {
            epsilon,
            convexity_defect: defect,
            delta_max_covered: 1.0,
            relative_nbhd_covered: true,
            uncovered_gap: 0.0,
            noise_estimate: 0.0,
        };
    }
    let margin = 1e-6 * diam_w;
    let cloud_hull = convex_hull(cloud);
    let splits = split_hulls(cloud);
    let gap = coverage_gap(required, &cloud_hull);
    let noise = noise_estimate(required, gap, &splits);
    let delta_max = delta_coverage(model, z, cloud, config);
    let covered = gap <= 3.0 * noise + margin && delta_max > 0.0;
    EpsilonRecord {
        epsilon,
        convexity_defect: defect,
        delta_max_covered: delta_max,
        relative_nbhd_covered: covered,
        uncovered_gap: gap,
        noise_estimate: noise,
    }
}

fn preimage_verdict(records: &[EpsilonRecord], r0: f64) -> Verdict {
    if records.iter().all(|r| r.relative_nbhd_covered) {
        return Verdict::Open;
    }
    // the smallest ε is probed last when epsilons decrease; use the minimum
    let smallest = records
        .iter()
        .min_by(|a, b| a.epsilon.partial_cmp(&b.epsilon).expect("finite"))
        .expect("nonempty records");
    let real_gap = smallest.uncovered_gap > 3.0 * smallest.noise_estimate
        && smallest.uncovered_gap >= 0.1 * r0;
    if !smallest.relative_nbhd_covered && real_gap {
        Verdict::NotOpen
    } else {
        Verdict::Inconclusive
    }
}

fn combine(probes: &[PreimageProbe], all: bool) -> Verdict {
    let opens = probes.iter().filter(|p| p.verdict == Verdict::Open).count();
    let closed = probes.iter().filter(|p| p.verdict == Verdict::NotOpen).count();
    if all {
        // open at every preimage
        if opens == probes.len() {
            Verdict::Open
        } else if closed > 0 {
            Verdict::NotOpen
        } else {
            Verdict::Inconclusive
        }
    } else {
        // open at some preimage
        if opens > 0 {
            Verdict::Open
        } else if closed == probes.len() {
            Verdict::NotOpen
        } else {
            Verdict::Inconclusive
        }
    }
}

/// Test points of the relative neighborhood: the disk of radius r₀ around z
/// clipped to the scanned range, as a polar grid plus nearby scan points.
fn neighborhood_points(model: &BoundaryModel, z: C64, r0: f64) -> Vec<C64> {
    let mut out = vec![z];
    if r0 <= 0.0 {
        return out;
    }
    for ring in 1..=12 {
        let r = r0 * ring as f64 / 12.0;
        for k in 0..48 {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 48.0;
            let p = z + Complex::from_polar(r, theta);
            if signed_distance_convex(&model.hull, p) >= 0.0 {
                out.push(p);
            }
        }
    }
    for bp in &model.points {
        if (bp.z - z).norm() <= r0 {
            out.push(bp.z);
        }
    }
    out
}

/// Boundary targets of the coverage rays: exit points of rays from z through
/// the scanned boundary in each direction.
fn ray_targets(model: &BoundaryModel, z: C64, resolution: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(resolution);
    for k in 0..resolution {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / resolution as f64;
        let dir = Complex::from_polar(1.0, theta);
        if let Some(w) = crate::support::ray_exit_hull(&model.hull, z, dir) {
            out.push(w);
        }
    }
    out
}

fn coverage_gap(points: &[C64], hull: &[C64]) -> f64 {
    points
        .iter()
        .map(|&p| (-signed_distance_convex(hull, p)).max(0.0))
        .fold(0.0, f64::max)
}

/// Hulls of 8 interleaved sample splits, for the bootstrap noise estimate.
fn split_hulls(cloud: &[C64]) -> Vec<Vec<C64>> {
    (0..8)
        .map(|s| {
            let chunk: Vec<C64> = cloud.iter().skip(s).step_by(8).copied().collect();
            convex_hull(&chunk)
        })
        .collect()
}

/// Noise = worst excess gap of the split hulls over the full-cloud gap. For
/// a genuinely covered neighborhood the split gaps grow (an eighth of the
/// samples reaches less far), while a structural hole keeps all gaps equal.
fn noise_estimate(points: &[C64], full_gap: f64, splits: &[Vec<C64>]) -> f64 {
    let worst_split = splits
        .iter()
        .map(|h| coverage_gap(points, h))
        .fold(0.0f64, f64::max);
    (worst_split - full_gap).max(0.0) + 1e-12
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support::boundary_scan;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn nilpotent2() -> ComplexSquareMatrix {
        ComplexSquareMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
    }

    #[test]
    fn identity_cap_image_is_singleton() {
        let id = ComplexSquareMatrix::identity(3);
        let x = UnitVector::standard_basis(3, 0);
        let cloud = cap_image(&id, &x, 0.5, 500, 7);
        for p in cloud {
            assert!((p - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn nilpotent_cap_cloud_stays_in_disk() {
        let a = nilpotent2();
        let x = UnitVector::normalized(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let cloud = cap_image(&a, &x, 0.3, 2000, 11);
        for p in &cloud {
            assert!(p.norm() <= 0.5 + 1e-12);
        }
        // contains the center value 1/2
        let hit = cloud.iter().any(|p| (p - c(0.5, 0.0)).norm() < 0.05);
        assert!(hit);
    }

    #[test]
    fn convexity_defect_cases() {
        assert_eq!(convexity_defect(&[c(1.0, 1.0)]), 0.0);
        // convex cap image of the disk operator
        let a = nilpotent2();
        let x = UnitVector::normalized(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let cloud = cap_image(&a, &x, 0.3, 20_000, 3);
        assert!(convexity_defect(&cloud) <= 0.05);
        // two separated blobs must be flagged
        let mut blobs = Vec::new();
        for k in 0..200 {
            let t = k as f64 * 0.031;
            blobs.push(c(t.sin() * 0.01, t.cos() * 0.01));
            blobs.push(c(2.0 + t.cos() * 0.01, t.sin() * 0.01));
        }
        assert!(convexity_defect(&blobs) >= 0.3);
    }

    #[test]
    fn delta_coverage_identity_is_full() {
        let id = ComplexSquareMatrix::identity(2);
        let model = boundary_scan(&id, 64);
        // identity range is the single point 1: the scan degenerates
        assert!(model.is_err() || model.unwrap().degenerate);
        // degenerate handling is exercised through epsilon_record instead
        let config = ProbeConfig::default();
        let cloud = vec![c(1.0, 0.0); 100];
        // a fake single-point model cannot be built; check the direct rule
        assert!(config.min_delta() > 0.0);
        assert_eq!(convexity_defect(&cloud), 0.0);
    }

    #[test]
    fn interior_point_of_disk_probes_open() {
        let a = nilpotent2();
        let model = boundary_scan(&a, 128).unwrap();
        let x1 = UnitVector::standard_basis(2, 0);
        let x2 = UnitVector::standard_basis(2, 1);
        let config = ProbeConfig { samples_per_epsilon: 8000, ..Default::default() };
        let report = openness_verdict(&a, &model, c(0.0, 0.0), &[x1, x2], &config).unwrap();
        assert_eq!(report.strong_verdict, Verdict::Open, "records: {:?}", report.probes[0].records);
        for probe in &report.probes {
            for r in &probe.records {
                assert!(r.delta_max_covered > 0.0);
                assert!(!r.relative_nbhd_covered || r.delta_max_covered > 0.0);
            }
        }
    }

    #[test]
    fn square_corner_probes_open() {
        let a = ComplexSquareMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]);
        let model = boundary_scan(&a, 128).unwrap();
        let x = UnitVector::standard_basis(4, 0);
        let config = ProbeConfig { samples_per_epsilon: 8000, ..Default::default() };
        let report = openness_verdict(&a, &model, c(1.0, 0.0), &[x], &config).unwrap();
        assert_eq!(report.strong_verdict, Verdict::Open, "records: {:?}", report.probes[0].records);
    }

    #[test]
    fn two_ellipse_singularity_probes_not_open() {
        let op = crate::gallery::cjkls_block(1.0, 1.0);
        let a = &op.matrix;
        let model = boundary_scan(a, 256).unwrap();
        // kernel vectors of the two blocks are the preimages of 0
        let x1 = UnitVector::standard_basis(4, 0);
        let x2 = UnitVector::standard_basis(4, 2);
        let report = openness_verdict(a, &model, c(0.0, 0.0), &[x1, x2], &ProbeConfig::default()).unwrap();
        for probe in &report.probes {
            assert_eq!(probe.verdict, Verdict::NotOpen, "records: {:?}", probe.records);
        }
        assert_eq!(report.strong_verdict, Verdict::NotOpen);
        assert_eq!(report.weak_verdict, Verdict::NotOpen);
    }
}
