//! Support function μ(θ) of the numerical range and the boundary model
//! assembled from it: analytic arcs, flat portions, corners, extreme points.
//!
//! The closed numerical range is the intersection of the half-planes
//! {z : Re(e^{-iθ}z) ≤ μ(θ)}, where μ(θ) is the top eigenvalue of
//! Re(e^{-iθ}A); scanning θ over a uniform grid recovers the boundary.

use num_complex::Complex;

use crate::curves::slope_groups_for_eigenspace;
use crate::eig::{hermitian_eig, operator_norm};
use crate::error::{Error, Result};
use crate::geometry::{collinearity_defect, convex_hull, cross, signed_distance_convex};
use crate::matrix::{cartesian_part, CartesianPart, ComplexSquareMatrix, UnitVector, C64};

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// One support evaluation: angle, support value, and the near-maximal
/// eigenspace of Re(e^{-iθ}A).
#[derive(Debug, Clone)]
pub struct SupportSample {
    pub theta: f64,
    /// Top eigenvalue of Re(e^{-iθ}A).
    pub mu: f64,
    /// Number of eigenvalues within the gap tolerance of `mu`.
    pub multiplicity: usize,
    /// Orthonormal basis of the near-maximal eigenspace (`multiplicity` vectors).
    pub eigenbasis: Vec<UnitVector>,
    /// Heuristic flag: the top cluster fills more than half the space, so a
    /// finite section cannot treat it as an isolated finite-multiplicity
    /// eigenvalue.
    pub essential_like: bool,
    /// Gap tolerance that was in force.
    pub gap_tol: f64,
}

/// Flat portion of the boundary: one support angle touching a segment.
#[derive(Debug, Clone)]
pub struct FlatPortion {
    pub theta: f64,
    /// Endpoints in slope order (smallest slope first).
    pub endpoints: (C64, C64),
    /// The distinct extreme slopes generating the endpoints.
    pub slopes: (f64, f64),
}

/// Corner: one boundary point supported by an interval of angles.
#[derive(Debug, Clone)]
pub struct CornerPoint {
    pub z: C64,
    pub theta_interval: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    Arc,
    Flat,
    Corner,
}

/// One polygon vertex of the scanned boundary.
#[derive(Debug, Clone)]
pub struct BoundaryPoint {
    pub grid_index: usize,
    pub theta: f64,
    pub mu: f64,
    pub z: C64,
    pub multiplicity: usize,
    pub kind: SegmentKind,
}

/// Maximal run of grid indices whose boundary is a single analytic arc.
/// Indices are circular over the grid; `branch_id` is filled in once branch
/// tracking has run.
#[derive(Debug, Clone)]
pub struct ArcSegment {
    pub start_index: usize,
    pub end_index: usize,
    pub branch_id: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ExtremePoint {
    pub z: C64,
    pub is_isolated: bool,
}

/// Scanned model of the numerical range boundary.
#[derive(Debug, Clone)]
pub struct BoundaryModel {
    pub grid_size: usize,
    pub samples: Vec<SupportSample>,
    /// Boundary polygon in θ order; flat angles contribute both endpoints.
    pub points: Vec<BoundaryPoint>,
    pub arcs: Vec<ArcSegment>,
    pub flats: Vec<FlatPortion>,
    pub corners: Vec<CornerPoint>,
    pub extreme_points: Vec<ExtremePoint>,
    /// True when the extreme set fills the whole grid (boundary of a strictly
    /// convex region: every sample is a hull vertex).
    pub continuum_extremes: bool,
    /// True when the sampled range is collinear within tolerance.
    pub degenerate: bool,
    /// Worst convexity violation of the boundary polygon (0 when convex).
    pub convexity_defect: f64,
    /// Convex hull of the sampled boundary points.
    pub hull: Vec<C64>,
    /// Cached ‖A‖₂ and ‖A‖_F for downstream tolerances.
    pub op_norm: f64,
    pub fro_norm: f64,
    /// Isolation tolerance used for the stored extreme-point flags.
    pub iso_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

pub fn default_gap_tol(fro_norm: f64) -> f64 {
    1e-8 * (1.0 + fro_norm)
}

pub fn default_flat_tol(op_norm: f64) -> f64 {
    1e-6 * (1.0 + op_norm)
}

pub fn default_iso_tol(op_norm: f64) -> f64 {
    0.1 * (1.0 + op_norm)
}

/// Support value μ(θ) together with the near-maximal eigenspace.
pub fn support_value(a: &ComplexSquareMatrix, theta: f64, gap_tol: f64) -> Result<SupportSample> {
    if gap_tol <= 0.0 {
        return Err(Error::InvalidInput("gap tolerance must be positive".into()));
    }
    let re = cartesian_part(a, theta, CartesianPart::Real);
    let decomp = hermitian_eig(&re)?;
    let cluster = decomp.top_cluster(gap_tol);
    let eigenbasis: Vec<UnitVector> = cluster.iter().map(|&j| decomp.eigenvector(j)).collect();
    let multiplicity = eigenbasis.len();
    let dim = a.dim();
    Ok(SupportSample {
        theta,
        mu: decomp.max_eigenvalue(),
        multiplicity,
        eigenbasis,
        essential_like: 2 * multiplicity > dim,
        gap_tol,
    })
}

/// Scan the boundary of W(A) over a uniform θ-grid.
pub fn boundary_scan(a: &ComplexSquareMatrix, grid_size: usize) -> Result<BoundaryModel> {
    if grid_size < 64 {
        return Err(Error::InvalidInput("grid size must be at least 64".into()));
    }
    let fro_norm = a.frobenius_norm();
    let op_norm = operator_norm(a);
    let gap_tol = default_gap_tol(fro_norm);
    let flat_tol = default_flat_tol(op_norm);

    let mut samples = Vec::with_capacity(grid_size);
    let mut points: Vec<BoundaryPoint> = Vec::with_capacity(grid_size + 8);
    let mut flats = Vec::new();
    // single representative point per grid index, used for corner detection
    let mut rep_points = Vec::with_capacity(grid_size);

    for k in 0..grid_size {
        let theta = TAU * k as f64 / grid_size as f64;
        let sample = support_value(a, theta, gap_tol)?;
        let groups = slope_groups_for_eigenspace(a, theta, &sample.eigenbasis, flat_tol)?;
        let phase = Complex::from_polar(1.0, theta);
        let point_at = |slope: f64| phase * C64::new(sample.mu, slope);

        if groups.len() >= 2 {
            let s_min = groups.first().expect("nonempty").slope;
            let s_max = groups.last().expect("nonempty").slope;
            let endpoints = (point_at(s_min), point_at(s_max));
            flats.push(FlatPortion { theta, endpoints, slopes: (s_min, s_max) });
            for (z, s) in [(endpoints.0, s_min), (endpoints.1, s_max)] {
                let _ = s;
                points.push(BoundaryPoint {
                    grid_index: k,
                    theta,
                    mu: sample.mu,
                    z,
                    multiplicity: sample.multiplicity,
                    kind: SegmentKind::Flat,
                });
            }
            rep_points.push(None);
        } else {
            let slope = groups.first().map(|g| g.slope).unwrap_or(0.0);
            let z = point_at(slope);
            points.push(BoundaryPoint {
                grid_index: k,
                theta,
                mu: sample.mu,
                z,
                multiplicity: sample.multiplicity,
                kind: SegmentKind::Arc,
            });
            rep_points.push(Some(z));
        }
        samples.push(sample);
    }

    // corners: circular runs of (near-)coincident representative points
    let cluster_tol = 1e-6 * (1.0 + op_norm);
    let corner_span = 10.0 * TAU / grid_size as f64;
    let corners = detect_corners(&rep_points, grid_size, cluster_tol, corner_span);
    for bp in points.iter_mut() {
        if bp.kind == SegmentKind::Arc {
            let theta = bp.theta;
            if corners.iter().any(|c| angle_in_interval(theta, c.theta_interval)) {
                bp.kind = SegmentKind::Corner;
            }
        }
    }

    // arcs: circular index ranges not owned by a flat or corner
    let arcs = collect_arcs(&points, grid_size);

    let zs: Vec<C64> = points.iter().map(|p| p.z).collect();
    let degenerate = collinearity_defect(&zs) <= 1e-8 * (1.0 + op_norm);
    let convexity_defect = polygon_convexity_defect(&zs);
    let hull = clean_hull(convex_hull(&zs), 1e-7 * (1.0 + op_norm));

    let iso_tol = default_iso_tol(op_norm);
    let extreme_points = flag_extremes(&hull, iso_tol);
    let continuum_extremes = hull.len() * 10 >= grid_size * 9;

    let model = BoundaryModel {
        grid_size,
        samples,
        points,
        arcs,
        flats,
        corners,
        extreme_points,
        continuum_extremes,
        degenerate,
        convexity_defect,
        hull,
        op_norm,
        fro_norm,
        iso_tol,
    };
    if !model.degenerate && model.convexity_defect > 1e-8 * (1.0 + op_norm) {
        return Err(Error::InvalidInput(format!(
            "scanned boundary is not convex (defect {:.3e})",
            model.convexity_defect
        )));
    }
    Ok(model)
}

/// Hull vertices with isolation flags decided against `iso_tol`.
pub fn extreme_points(model: &BoundaryModel, iso_tol: f64) -> Vec<(C64, bool)> {
    flag_extremes(&model.hull, iso_tol)
        .into_iter()
        .map(|e| (e.z, e.is_isolated))
        .collect()
}

/// Convex membership with a margin band around the boundary.
pub fn hull_contains(model: &BoundaryModel, z: C64, margin: f64) -> Result<Location> {
    if model.degenerate {
        return Err(Error::DegenerateNumericalRange);
    }
    let sd = signed_distance_convex(&model.hull, z);
    Ok(if sd.abs() <= margin {
        Location::Boundary
    } else if sd > 0.0 {
        Location::Inside
    } else {
        Location::Outside
    })
}

/// Angle maximizing Re(e^{-iθ}z) − μ(θ): the supporting direction of a
/// boundary point. Grid argmax refined by golden-section search.
pub fn supporting_angle(
    a: &ComplexSquareMatrix,
    model: &BoundaryModel,
    z: C64,
) -> Result<(f64, SupportSample)> {
    let gap_tol = default_gap_tol(model.fro_norm);
    let objective = |theta: f64| -> Result<f64> {
        let s = support_value(a, theta, gap_tol)?;
        Ok((Complex::from_polar(1.0, -theta) * z).re - s.mu)
    };
    let mut best_k = 0usize;
    let mut best_val = f64::NEG_INFINITY;
    for (k, sample) in model.samples.iter().enumerate() {
        let val = (Complex::from_polar(1.0, -sample.theta) * z).re - sample.mu;
        if val > best_val {
            best_val = val;
            best_k = k;
        }
    }
    let h = TAU / model.grid_size as f64;
    let center = model.samples[best_k].theta;
    let (mut lo, mut hi) = (center - h, center + h);
    // golden-section: the objective is locally concave at a smooth maximum
    let phi = 0.5 * (3.0 - 5.0_f64.sqrt());
    let mut x1 = lo + phi * (hi - lo);
    let mut x2 = hi - phi * (hi - lo);
    let mut f1 = objective(x1)?;
    let mut f2 = objective(x2)?;
    for _ in 0..48 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = hi - phi * (hi - lo);
            f2 = objective(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + phi * (hi - lo);
            f1 = objective(x1)?;
        }
    }
    let theta = wrap_angle(0.5 * (lo + hi));
    let sample = support_value(a, theta, gap_tol)?;
    Ok((theta, sample))
}

/// Width of the band around the scanned polygon inside which a point must be
/// treated as "on the boundary": the inscribed polygon undershoots the true
/// boundary by up to the chord sagitta of one grid step.
pub fn boundary_band(model: &BoundaryModel) -> f64 {
    let h = TAU / model.grid_size as f64;
    0.5 * h * h * (1.0 + model.op_norm)
}

/// Exit point of the ray {origin + t·dir, t ≥ 0} through a convex polygon.
pub fn ray_exit_hull(hull: &[C64], origin: C64, dir: C64) -> Option<C64> {
    let n = hull.len();
    if n < 2 {
        return None;
    }
    let mut best_t = f64::NEG_INFINITY;
    let mut hit = None;
    for i in 0..n {
        let a = hull[i];
        let b = hull[(i + 1) % n];
        let e = b - a;
        let denom = dir.re * e.im - dir.im * e.re;
        if denom.abs() < 1e-300 {
            continue;
        }
        let w = a - origin;
        let t = (w.re * e.im - w.im * e.re) / denom;
        let s = (dir.re * w.im - dir.im * w.re) / -denom;
        if t >= 0.0 && (-1e-12..=1.0 + 1e-12).contains(&s) && t > best_t {
            best_t = t;
            hit = Some(origin + dir * t);
        }
    }
    hit
}

pub fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta % TAU;
    if t < 0.0 {
        t += TAU;
    }
    t
}

fn angle_in_interval(theta: f64, (a, b): (f64, f64)) -> bool {
    // circular interval, a <= b after unwrapping
    let t = wrap_angle(theta);
    let a = wrap_angle(a);
    let mut b = wrap_angle(b);
    if b < a {
        b += TAU;
    }
    let t2 = if t < a { t + TAU } else { t };
    t2 <= b + 1e-12
}

fn detect_corners(
    rep_points: &[Option<C64>],
    grid_size: usize,
    cluster_tol: f64,
    min_span: f64,
) -> Vec<CornerPoint> {
    let mut corners = Vec::new();
    let mut visited = vec![false; grid_size];
    for start in 0..grid_size {
        if visited[start] {
            continue;
        }
        let Some(anchor) = rep_points[start] else { continue };
        // check this index opens a run (its predecessor does not match)
        let prev = (start + grid_size - 1) % grid_size;
        let prev_matches = rep_points[prev]
            .map(|p| (p - anchor).norm() <= cluster_tol)
            .unwrap_or(false);
        if prev_matches {
            continue;
        }
        let mut len = 1usize;
        let mut sum = anchor;
        loop {
            let k = (start + len) % grid_size;
            if k == start {
                break;
            }
            match rep_points[k] {
                Some(p) if (p - sum / (len as f64)).norm() <= cluster_tol => {
                    visited[k] = true;
                    sum += p;
                    len += 1;
                }
                _ => break,
            }
        }
        visited[start] = true;
        let span = (len - 1) as f64 * TAU / grid_size as f64;
        if span > min_span {
            let theta0 = TAU * start as f64 / grid_size as f64;
            let theta1 = theta0 + span;
            corners.push(CornerPoint {
                z: sum / (len as f64),
                theta_interval: (theta0, theta1),
            });
        }
    }
    corners.sort_by(|a, b| a.theta_interval.0.partial_cmp(&b.theta_interval.0).expect("finite"));
    corners
}

fn collect_arcs(points: &[BoundaryPoint], grid_size: usize) -> Vec<ArcSegment> {
    // per grid index: arc iff its (unique) sample point is Arc kind
    let mut is_arc = vec![false; grid_size];
    for p in points {
        if p.kind == SegmentKind::Arc {
            is_arc[p.grid_index] = true;
        }
    }
    let mut segs: Vec<ArcSegment> = Vec::new();
    let mut visited = vec![false; grid_size];
    for start in 0..grid_size {
        if visited[start] || !is_arc[start] {
            continue;
        }
        let prev = (start + grid_size - 1) % grid_size;
        if is_arc[prev] && prev != start {
            continue; // run opens elsewhere
        }
        let mut len = 1usize;
        visited[start] = true;
        loop {
            let k = (start + len) % grid_size;
            if k == start || !is_arc[k] {
                break;
            }
            visited[k] = true;
            len += 1;
        }
        segs.push(ArcSegment {
            start_index: start,
            end_index: (start + len - 1) % grid_size,
            branch_id: None,
        });
    }
    // fully-arc circle (no flats/corners): single segment covering everything
    if segs.is_empty() && is_arc.iter().all(|&b| b) {
        segs.push(ArcSegment { start_index: 0, end_index: grid_size - 1, branch_id: None });
    }
    segs
}

fn polygon_convexity_defect(zs: &[C64]) -> f64 {
    let n = zs.len();
    if n < 3 {
        return 0.0;
    }
    // skip (near-)duplicate vertices so corner runs do not produce noise edges
    let mut verts: Vec<C64> = Vec::with_capacity(n);
    let scale = zs.iter().map(|z| z.norm()).fold(0.0f64, f64::max).max(1e-300);
    for &z in zs {
        if verts.last().map(|&l| (z - l).norm() > 1e-12 * scale).unwrap_or(true) {
            verts.push(z);
        }
    }
    while verts.len() > 1 && (verts[0] - *verts.last().expect("nonempty")).norm() <= 1e-12 * scale {
        verts.pop();
    }
    let m = verts.len();
    if m < 3 {
        return 0.0;
    }
    let mut worst = 0.0f64;
    for i in 0..m {
        let a = verts[i];
        let b = verts[(i + 1) % m];
        let c = verts[(i + 2) % m];
        let x = cross(a, b, c);
        if x < 0.0 {
            worst = worst.max(-x);
        }
    }
    worst
}

/// Merge hull vertices closer than `merge_tol` and prune vertices that are
/// collinear with their neighbors up to relative eps; eigensolver rounding
/// otherwise splits one geometric vertex into several.
fn clean_hull(hull: Vec<C64>, merge_tol: f64) -> Vec<C64> {
    if hull.len() < 3 {
        return hull;
    }
    let mut merged: Vec<C64> = Vec::with_capacity(hull.len());
    for z in hull {
        if merged.last().map(|&l| (z - l).norm() > merge_tol).unwrap_or(true) {
            merged.push(z);
        }
    }
    while merged.len() > 1
        && (merged[0] - *merged.last().expect("nonempty")).norm() <= merge_tol
    {
        merged.pop();
    }
    if merged.len() < 3 {
        return merged;
    }
    let mut out: Vec<C64> = Vec::with_capacity(merged.len());
    let n = merged.len();
    for i in 0..n {
        let a = merged[(i + n - 1) % n];
        let b = merged[i];
        let c = merged[(i + 1) % n];
        let e1 = (b - a).norm();
        let e2 = (c - b).norm();
        if e1 == 0.0 || e2 == 0.0 {
            continue;
        }
        if cross(a, b, c) / (e1 * e2) > 1e-9 {
            out.push(b);
        }
    }
    if out.len() < 3 {
        merged
    } else {
        out
    }
}

fn flag_extremes(hull: &[C64], iso_tol: f64) -> Vec<ExtremePoint> {
    let n = hull.len();
    hull.iter()
        .enumerate()
        .map(|(i, &z)| {
            let nearest = hull
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &w)| (z - w).norm())
                .fold(f64::INFINITY, f64::min);
            ExtremePoint { z, is_isolated: n == 1 || nearest > iso_tol }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn nilpotent2() -> ComplexSquareMatrix {
        ComplexSquareMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
    }

    fn square_matrix() -> ComplexSquareMatrix {
        ComplexSquareMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)])
    }

    #[test]
    fn identity_support_is_cosine() {
        let id = ComplexSquareMatrix::identity(2);
        for &theta in &[0.0, 0.31, 1.2, 2.8] {
            let s = support_value(&id, theta, 1e-8).unwrap();
            assert!((s.mu - theta.cos()).abs() < 1e-12);
            assert_eq!(s.multiplicity, 2);
        }
    }

    #[test]
    fn nilpotent_support_is_half() {
        for &theta in &[0.0, 0.9, 2.2, 5.0] {
            let s = support_value(&nilpotent2(), theta, 1e-8).unwrap();
            assert!((s.mu - 0.5).abs() < 1e-12);
            assert_eq!(s.multiplicity, 1);
        }
    }

    #[test]
    fn square_scan_finds_vertices_flats_corners() {
        let model = boundary_scan(&square_matrix(), 256).unwrap();
        assert_eq!(model.flats.len(), 4);
        assert_eq!(model.corners.len(), 4);
        let mut vertices: Vec<C64> = model.corners.iter().map(|c| c.z).collect();
        vertices.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        let mut expected = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        expected.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        for (got, want) in vertices.iter().zip(expected.iter()) {
            assert!((got - want).norm() < 1e-8, "vertex {got} vs {want}");
        }
        // flat endpoints land on the hull
        for f in &model.flats {
            for z in [f.endpoints.0, f.endpoints.1] {
                assert!(signed_distance_convex(&model.hull, z).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn disk_scan_is_smooth_circle() {
        let model = boundary_scan(&nilpotent2(), 256).unwrap();
        assert!(model.flats.is_empty());
        assert!(model.corners.is_empty());
        for p in &model.points {
            assert!((p.z.norm() - 0.5).abs() <= 1e-8);
        }
        assert!(model.continuum_extremes);
        assert_eq!(model.arcs.len(), 1);
    }

    #[test]
    fn extreme_points_square_isolated_disk_not() {
        let sq = boundary_scan(&square_matrix(), 256).unwrap();
        let ex = extreme_points(&sq, 0.5);
        assert_eq!(ex.len(), 4);
        assert!(ex.iter().all(|&(_, iso)| iso));

        let disk = boundary_scan(&nilpotent2(), 256).unwrap();
        let spacing = 0.5 * TAU / 256.0;
        let ex = extreme_points(&disk, 4.0 * spacing);
        assert!(ex.iter().all(|&(_, iso)| !iso));
    }

    #[test]
    fn irrational_rotation_extremes() {
        // 40 normal eigenvalues τ^k on the unit circle, τ = e^{i·1}
        let tau = C64::from_polar(1.0, 1.0);
        let values: Vec<C64> = (1..=40).map(|k| tau.powu(k)).collect();
        let m = ComplexSquareMatrix::diagonal(&values);
        let model = boundary_scan(&m, 256).unwrap();
        let ex = extreme_points(&model, 0.5);
        assert_eq!(ex.len(), 40);
        assert!(ex.iter().all(|&(_, iso)| !iso));
    }

    #[test]
    fn hull_contains_square_cases() {
        let model = boundary_scan(&square_matrix(), 256).unwrap();
        assert_eq!(hull_contains(&model, c(0.0, 0.0), 1e-6).unwrap(), Location::Inside);
        assert_eq!(hull_contains(&model, c(1.0, 0.0), 1e-6).unwrap(), Location::Boundary);
        assert_eq!(hull_contains(&model, c(2.0, 0.0), 1e-6).unwrap(), Location::Outside);
    }

    #[test]
    fn hull_contains_disk_radius() {
        let model = boundary_scan(&nilpotent2(), 256).unwrap();
        assert_eq!(hull_contains(&model, c(0.51, 0.0), 1e-3).unwrap(), Location::Outside);
    }

    #[test]
    fn degenerate_range_flagged_and_rejected_by_hull_queries() {
        let m = ComplexSquareMatrix::diagonal(&[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        let model = boundary_scan(&m, 64).unwrap();
        assert!(model.degenerate);
        assert!(matches!(
            hull_contains(&model, c(0.5, 0.0), 1e-6),
            Err(Error::DegenerateNumericalRange)
        ));
    }

    #[test]
    fn half_plane_consistency() {
        let a = ComplexSquareMatrix::from_rows(&[
            vec![c(0.1, 0.4), c(1.2, -0.3), c(0.0, 0.2)],
            vec![c(-0.7, 0.0), c(0.3, 0.3), c(0.5, -0.5)],
            vec![c(0.2, 0.9), c(-0.1, 0.1), c(-0.4, -0.2)],
        ]);
        let model = boundary_scan(&a, 128).unwrap();
        let tol = 1e-8 * (1.0 + model.op_norm);
        for p in &model.points {
            for s in &model.samples {
                let proj = (Complex::from_polar(1.0, -s.theta) * p.z).re;
                assert!(proj <= s.mu + tol, "theta {} violates support", s.theta);
            }
        }
    }

    #[test]
    fn supporting_angle_of_square_vertex() {
        let model = boundary_scan(&square_matrix(), 256).unwrap();
        let a = square_matrix();
        let (theta, sample) = supporting_angle(&a, &model, c(1.0, 0.0)).unwrap();
        // any angle in (-π/4, π/4) supports the vertex; the refiner must stay there
        assert!(theta < PI / 4.0 || theta > 7.0 * PI / 4.0, "theta {theta}");
        assert!(((Complex::from_polar(1.0, -theta) * c(1.0, 0.0)).re - sample.mu).abs() < 1e-6);
    }
}
