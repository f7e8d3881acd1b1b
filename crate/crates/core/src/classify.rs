//! Continuity classification of the set-valued inverse of the range map at
//! points of W(A): strong, weak-only, fails-weak, or undecidable, with the
//! rule that fired and its numeric evidence.
//!
//! Decision order is part of the contract: interior and isolated-extreme
//! rules fire before any boundary-curve analysis, the normal-operator limit
//! rule fires only with declared metadata, and any essential-like support
//! direction yields `Undecidable` unless metadata resolves it.

use num_complex::Complex;

use crate::curves::{curves_through_refined, BranchFamily};
use crate::error::{Error, Result};
use crate::gallery::GalleryMetadata;
use crate::matrix::{ComplexSquareMatrix, C64};
use crate::support::{hull_contains, supporting_angle, BoundaryModel, Location, SegmentKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocationKind {
    Interior,
    BoundaryArc,
    Corner,
    FlatInterior,
    FlatEndpoint,
}

impl LocationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            LocationKind::Interior => "interior",
            LocationKind::BoundaryArc => "boundary-arc",
            LocationKind::Corner => "corner",
            LocationKind::FlatInterior => "flat-interior",
            LocationKind::FlatEndpoint => "flat-endpoint",
        }
    }
}

/// Structural case of a boundary singularity: relative interior of an
/// analytic arc (I), transition between a flat and a curved arc (II), or
/// transition between two curved arcs (III).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    I,
    II,
    III,
    NotApplicable,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::I => "I",
            CaseTag::II => "II",
            CaseTag::III => "III",
            CaseTag::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Strong,
    WeakOnly,
    FailsWeak,
    Undecidable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Strong => "strong",
            Verdict::WeakOnly => "weak_only",
            Verdict::FailsWeak => "fails_weak",
            Verdict::Undecidable => "undecidable",
        }
    }
}

/// Numeric evidence backing a verdict.
#[derive(Debug, Clone, Default)]
pub struct Evidence {
    pub curve_count: Option<usize>,
    pub curve_branch_ids: Vec<usize>,
    pub curve_thetas: Vec<f64>,
    pub curve_ambiguous: bool,
    pub multiplicity: Option<usize>,
    pub essential_like: bool,
    pub supporting_theta: Option<f64>,
    pub slopes: Vec<f64>,
    pub is_isolated_extreme: Option<bool>,
    pub nearest_extreme_distance: Option<f64>,
    pub normality_defect: f64,
    pub declared_limit_match: bool,
    pub declared_unique_preimage_match: bool,
    pub essential_metadata_on_support_line: bool,
    pub notes: Vec<String>,
}

/// Tolerances in force for one classification.
#[derive(Debug, Clone)]
pub struct Tolerances {
    pub iso_tol: f64,
    pub gap_tol: f64,
    pub flat_tol: f64,
    pub curve_tol: f64,
    pub hull_margin: f64,
    pub point_match_tol: f64,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub z: C64,
    pub location: LocationKind,
    pub case: CaseTag,
    pub verdict: Verdict,
    /// Which rule fired, as a stable machine-readable name.
    pub rule: String,
    pub evidence: Evidence,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub iso_tol: Option<f64>,
    pub curve_tol: Option<f64>,
    /// Branches to track for curve counting.
    pub top_k: Option<usize>,
    /// Arc-interior sample points per arc in [`classify_boundary`].
    pub arc_samples: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { iso_tol: None, curve_tol: None, top_k: None, arc_samples: 4 }
    }
}

impl ClassifyOptions {
    pub fn resolve(&self, model: &BoundaryModel) -> Tolerances {
        let scale = 1.0 + model.op_norm;
        Tolerances {
            iso_tol: self.iso_tol.unwrap_or_else(|| crate::support::default_iso_tol(model.op_norm)),
            gap_tol: crate::support::default_gap_tol(model.fro_norm),
            flat_tol: crate::support::default_flat_tol(model.op_norm),
            curve_tol: self.curve_tol.unwrap_or(1e-4 * scale),
            hull_margin: 1e-6 * scale,
            point_match_tol: 1e-5 * scale,
        }
    }

    pub fn top_k_for(&self, a: &ComplexSquareMatrix) -> usize {
        self.top_k.unwrap_or_else(|| a.dim().min(6))
    }
}

/// Classification summary over the detected boundary structure.
#[derive(Debug, Clone)]
pub struct ClassificationSummary {
    pub reports: Vec<ClassificationReport>,
    pub non_strong_count: usize,
    pub notes: Vec<String>,
}

/// Classify a single point of cl W(A).
pub fn classify_point(
    a: &ComplexSquareMatrix,
    z: C64,
    model: &BoundaryModel,
    family: &BranchFamily,
    options: &ClassifyOptions,
    metadata: Option<&GalleryMetadata>,
) -> Result<ClassificationReport> {
    let tol = options.resolve(model);
    let mut evidence = Evidence {
        normality_defect: a.normality_defect(),
        ..Default::default()
    };

    if model.degenerate {
        return classify_degenerate(a, z, model, tol, evidence);
    }

    let location = hull_contains(model, z, tol.hull_margin)?;
    if location == Location::Outside {
        return Err(Error::OutsideRange);
    }

    // rule 1a: interior points
    if location == Location::Inside {
        return Ok(ClassificationReport {
            z,
            location: LocationKind::Interior,
            case: CaseTag::NotApplicable,
            verdict: Verdict::Strong,
            rule: "interior-point".into(),
            evidence,
            tolerances: tol,
        });
    }

    // structural location on the boundary
    let (loc_kind, owning_flats) = boundary_location(model, z, &tol);

    // rule 1b: relative interior of a flat portion is never a limit of
    // extreme points at finite dimension
    if loc_kind == LocationKind::FlatInterior {
        return Ok(ClassificationReport {
            z,
            location: loc_kind,
            case: CaseTag::NotApplicable,
            verdict: Verdict::Strong,
            rule: "flat-interior".into(),
            evidence,
            tolerances: tol,
        });
    }

    // rule 1c: isolated extreme point
    let (nearest_vertex, nearest_other) = extreme_context(model, z);
    evidence.nearest_extreme_distance = nearest_other;
    let is_extreme_here = nearest_vertex <= tol.point_match_tol.max(extreme_match_slack(model));
    let isolated = is_extreme_here && nearest_other.map(|d| d > tol.iso_tol).unwrap_or(true);
    evidence.is_isolated_extreme = Some(isolated);
    if isolated {
        return Ok(ClassificationReport {
            z,
            location: loc_kind,
            case: CaseTag::NotApplicable,
            verdict: Verdict::Strong,
            rule: "isolated-extreme-point".into(),
            evidence,
            tolerances: tol,
        });
    }

    // rule 2: normal operator at a declared limit of extreme points
    if a.is_normal() {
        let declared = metadata
            .map(|m| {
                m.declared_limit_extreme_points
                    .iter()
                    .any(|w| (w - z).norm() <= tol.point_match_tol)
            })
            .unwrap_or(false);
        evidence.declared_limit_match = declared;
        if declared {
            evidence.notes.push(
                "finite sections cannot witness limit extreme points; the declared \
                 metadata supplies the limit structure"
                    .into(),
            );
            return Ok(ClassificationReport {
                z,
                location: loc_kind,
                case: CaseTag::NotApplicable,
                verdict: Verdict::FailsWeak,
                rule: "normal-limit-extreme".into(),
                evidence,
                tolerances: tol,
            });
        }
    }

    // rule 3: boundary extreme point through the curve machinery
    let (theta_star, sample) = supporting_angle(a, model, z)?;
    evidence.supporting_theta = Some(theta_star);
    evidence.multiplicity = Some(sample.multiplicity);
    evidence.essential_like = sample.essential_like;
    if let Ok(groups) = crate::curves::slope_groups_for_eigenspace(a, theta_star, &sample.eigenbasis, tol.flat_tol) {
        evidence.slopes = groups.iter().map(|g| g.slope).collect();
    }

    let essential_metadata = metadata
        .and_then(|m| m.essential_numerical_range.as_ref())
        .map(|we| {
            we.iter().any(|w| {
                ((Complex::from_polar(1.0, -theta_star) * w).re - sample.mu).abs()
                    <= tol.point_match_tol
            })
        })
        .unwrap_or(false);
    evidence.essential_metadata_on_support_line = essential_metadata;

    if sample.essential_like || essential_metadata {
        let declared_unique = metadata
            .map(|m| {
                m.declared_unique_preimage_points
                    .iter()
                    .any(|w| (w - z).norm() <= tol.point_match_tol)
            })
            .unwrap_or(false);
        evidence.declared_unique_preimage_match = declared_unique;
        if declared_unique {
            evidence.notes.push(
                "support direction carries essential-like spectrum; the declared \
                 unique-preimage metadata certifies a single critical curve here"
                    .into(),
            );
            return Ok(ClassificationReport {
                z,
                location: loc_kind,
                case: case_for_location(loc_kind),
                verdict: Verdict::Strong,
                rule: "declared-unique-preimage".into(),
                evidence,
                tolerances: tol,
            });
        }
        return Ok(ClassificationReport {
            z,
            location: loc_kind,
            case: CaseTag::NotApplicable,
            verdict: Verdict::Undecidable,
            rule: "essential-like-support".into(),
            evidence,
            tolerances: tol,
        });
    }

    let through = curves_through_refined(a, family, z, tol.curve_tol, options.top_k_for(a))?;
    evidence.curve_count = Some(through.count);
    evidence.curve_ambiguous = through.ambiguous;
    evidence.curve_branch_ids = through.passages.iter().map(|p| p.branch_id).collect();
    evidence.curve_thetas = through.passages.iter().map(|p| p.theta).collect();

    if through.ambiguous {
        return Ok(ClassificationReport {
            z,
            location: loc_kind,
            case: CaseTag::NotApplicable,
            verdict: Verdict::Undecidable,
            rule: "curve-multiplicity-ambiguous".into(),
            evidence,
            tolerances: tol,
        });
    }
    if through.count == 0 {
        evidence.notes.push("no tracked critical curve reaches the point; increase top_k or the grid".into());
        return Ok(ClassificationReport {
            z,
            location: loc_kind,
            case: CaseTag::NotApplicable,
            verdict: Verdict::Undecidable,
            rule: "no-curve-found".into(),
            evidence,
            tolerances: tol,
        });
    }

    if through.count == 1 {
        return Ok(ClassificationReport {
            z,
            location: loc_kind,
            case: case_for_location(loc_kind),
            verdict: Verdict::Strong,
            rule: "single-critical-curve".into(),
            evidence,
            tolerances: tol,
        });
    }

    // several curves: weakly continuous iff the boundary is analytic at z or
    // z ends a flat portion
    if loc_kind == LocationKind::FlatEndpoint {
        return Ok(ClassificationReport {
            z,
            location: loc_kind,
            case: CaseTag::II,
            verdict: Verdict::WeakOnly,
            rule: "flat-endpoint-multiple-curves".into(),
            evidence,
            tolerances: tol,
        });
    }
    if owning_flats >= 2 {
        // vertex between two flats: outside the curved-arc case analysis
        return Ok(ClassificationReport {
            z,
            location: loc_kind,
            case: CaseTag::NotApplicable,
            verdict: Verdict::Undecidable,
            rule: "flat-flat-vertex".into(),
            evidence,
            tolerances: tol,
        });
    }
    let analytic = boundary_analytic_at(model, family, theta_star, z, &tol);
    if analytic {
        return Ok(ClassificationReport {
            z,
            location: loc_kind,
            case: CaseTag::I,
            verdict: Verdict::WeakOnly,
            rule: "analytic-boundary-multiple-curves".into(),
            evidence,
            tolerances: tol,
        });
    }
    Ok(ClassificationReport {
        z,
        location: loc_kind,
        case: CaseTag::III,
        verdict: Verdict::FailsWeak,
        rule: "two-arc-transition".into(),
        evidence,
        tolerances: tol,
    })
}

/// Classify every detected corner, flat endpoint, and a sample of
/// arc-interior points.
pub fn classify_boundary(
    a: &ComplexSquareMatrix,
    model: &BoundaryModel,
    family: &BranchFamily,
    options: &ClassifyOptions,
    metadata: Option<&GalleryMetadata>,
) -> Result<ClassificationSummary> {
    let tol = options.resolve(model);
    let mut targets: Vec<C64> = Vec::new();
    for corner in &model.corners {
        targets.push(corner.z);
    }
    for flat in &model.flats {
        targets.push(flat.endpoints.0);
        targets.push(flat.endpoints.1);
        targets.push((flat.endpoints.0 + flat.endpoints.1) * 0.5);
    }
    for arc in &model.arcs {
        let len = if arc.end_index >= arc.start_index {
            arc.end_index - arc.start_index + 1
        } else {
            model.grid_size - arc.start_index + arc.end_index + 1
        };
        let samples = options.arc_samples.min(len);
        for s in 0..samples {
            let off = len * (2 * s + 1) / (2 * samples);
            let idx = (arc.start_index + off) % model.grid_size;
            if let Some(p) = model.points.iter().find(|p| p.grid_index == idx && p.kind == SegmentKind::Arc) {
                targets.push(p.z);
            }
        }
    }
    // dedup near-coincident targets
    let mut unique: Vec<C64> = Vec::new();
    for t in targets {
        if unique.iter().all(|u| (u - t).norm() > tol.point_match_tol) {
            unique.push(t);
        }
    }

    let mut reports = Vec::with_capacity(unique.len());
    for z in unique {
        reports.push(classify_point(a, z, model, family, options, metadata)?);
    }
    let non_strong_count = reports.iter().filter(|r| r.verdict != Verdict::Strong).count();

    let mut notes = vec![format!(
        "verdicts are decided at grid resolution 2π/{}; singular points closer than \
         one grid step cannot be separated",
        model.grid_size
    )];
    let any_essential = model.samples.iter().any(|s| s.essential_like);
    let essential_declared_empty = metadata
        .map(|m| m.essential_numerical_range.as_deref() == Some(&[]))
        .unwrap_or(false);
    if !any_essential && essential_declared_empty {
        notes.push(format!(
            "essential data empty and no essential-like directions: the boundary is a \
             finite union of analytic curves and the {} non-strong points listed are all of them \
             (up to grid resolution)",
            non_strong_count
        ));
    }
    Ok(ClassificationSummary { reports, non_strong_count, notes })
}

fn classify_degenerate(
    a: &ComplexSquareMatrix,
    z: C64,
    model: &BoundaryModel,
    tol: Tolerances,
    mut evidence: Evidence,
) -> Result<ClassificationReport> {
    // collinear range: the operator is (numerically) normal with collinear
    // spectrum; the segment has two isolated extreme points, so the inverse
    // is strongly continuous everywhere on it
    let zs: Vec<C64> = model.points.iter().map(|p| p.z).collect();
    let dist = zs
        .iter()
        .map(|&p| (p - z).norm())
        .fold(f64::INFINITY, f64::min);
    let hull = crate::geometry::convex_hull(&zs);
    let seg_dist = -crate::geometry::signed_distance_convex(&hull, z);
    if seg_dist > tol.hull_margin.max(1e-6) && dist > tol.hull_margin.max(1e-6) {
        return Err(Error::OutsideRange);
    }
    if a.is_normal() {
        evidence.notes.push("range is a segment; finite normal operator".into());
        return Ok(ClassificationReport {
            z,
            location: LocationKind::BoundaryArc,
            case: CaseTag::NotApplicable,
            verdict: Verdict::Strong,
            rule: "degenerate-segment-normal".into(),
            evidence,
            tolerances: tol,
        });
    }
    evidence.notes.push("degenerate range on a non-normal matrix; not classified".into());
    Ok(ClassificationReport {
        z,
        location: LocationKind::BoundaryArc,
        case: CaseTag::NotApplicable,
        verdict: Verdict::Undecidable,
        rule: "degenerate-range".into(),
        evidence,
        tolerances: tol,
    })
}

fn case_for_location(loc: LocationKind) -> CaseTag {
    match loc {
        LocationKind::BoundaryArc => CaseTag::I,
        LocationKind::FlatEndpoint => CaseTag::II,
        LocationKind::Corner => CaseTag::III,
        _ => CaseTag::NotApplicable,
    }
}

/// Structural location of a boundary point, and how many flats end there.
fn boundary_location(model: &BoundaryModel, z: C64, tol: &Tolerances) -> (LocationKind, usize) {
    let mut endpoint_flats = 0usize;
    let mut interior_of_flat = false;
    for flat in &model.flats {
        let (p, q) = flat.endpoints;
        let d_end = (z - p).norm().min((z - q).norm());
        if d_end <= tol.point_match_tol {
            endpoint_flats += 1;
            continue;
        }
        // distance to the open segment
        let seg = q - p;
        let len2 = seg.norm_sqr();
        if len2 > 0.0 {
            let t = ((z.re - p.re) * seg.re + (z.im - p.im) * seg.im) / len2;
            if (0.0..=1.0).contains(&t) {
                let proj = p + seg * t;
                if (z - proj).norm() <= tol.point_match_tol {
                    interior_of_flat = true;
                }
            }
        }
    }
    if endpoint_flats > 0 {
        return (LocationKind::FlatEndpoint, endpoint_flats);
    }
    if interior_of_flat {
        return (LocationKind::FlatInterior, 0);
    }
    for corner in &model.corners {
        if (corner.z - z).norm() <= tol.point_match_tol {
            return (LocationKind::Corner, 0);
        }
    }
    (LocationKind::BoundaryArc, 0)
}

/// Distance from z to the nearest hull vertex, and to the nearest OTHER
/// extreme point.
fn extreme_context(model: &BoundaryModel, z: C64) -> (f64, Option<f64>) {
    let mut nearest = f64::INFINITY;
    let mut nearest_idx = 0usize;
    for (i, v) in model.hull.iter().enumerate() {
        let d = (v - z).norm();
        if d < nearest {
            nearest = d;
            nearest_idx = i;
        }
    }
    let other = model
        .hull
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != nearest_idx)
        .map(|(_, v)| (v - z).norm())
        .fold(f64::INFINITY, f64::min);
    (nearest, (other.is_finite()).then_some(other))
}

/// Slack for matching z against hull vertices: consecutive scan points are
/// about one grid step apart along the boundary.
fn extreme_match_slack(model: &BoundaryModel) -> f64 {
    2.0 * std::f64::consts::PI / model.grid_size as f64 * (1.0 + model.op_norm)
}

/// Does a single tracked branch own the boundary on both sides of the
/// supporting angle? True means the boundary is analytic through z.
fn boundary_analytic_at(
    model: &BoundaryModel,
    family: &BranchFamily,
    theta_star: f64,
    z: C64,
    tol: &Tolerances,
) -> bool {
    let h = family.grid_step;
    let offsets = [-3.0 * h, 3.0 * h];
    let mut owners: Vec<Option<usize>> = Vec::new();
    for off in offsets {
        let theta = theta_star + off;
        let mut owner = None;
        for (b, branch) in family.branches.iter().enumerate() {
            for k in 0..branch.len() {
                if !branch.is_maximal[k] {
                    continue;
                }
                if (branch.thetas[k] - theta).abs() <= h * 0.51 {
                    owner = Some(b);
                    break;
                }
            }
            if owner.is_some() {
                break;
            }
        }
        owners.push(owner);
    }
    let _ = (model, z, tol);
    match (owners[0], owners[1]) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::track_branches;
    use crate::support::boundary_scan;

    const TAU: f64 = 2.0 * std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn nilpotent2() -> ComplexSquareMatrix {
        ComplexSquareMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
    }

    fn square_matrix() -> ComplexSquareMatrix {
        ComplexSquareMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)])
    }

    fn setup(a: &ComplexSquareMatrix, grid: usize, top_k: usize) -> (BoundaryModel, BranchFamily) {
        let model = boundary_scan(a, grid).unwrap();
        let family = track_branches(a, (0.0, TAU), grid, top_k).unwrap();
        (model, family)
    }

    #[test]
    fn disk_center_is_interior_strong() {
        let a = nilpotent2();
        let (model, family) = setup(&a, 128, 2);
        let r = classify_point(&a, c(0.0, 0.0), &model, &family, &ClassifyOptions::default(), None).unwrap();
        assert_eq!(r.verdict, Verdict::Strong);
        assert_eq!(r.rule, "interior-point");
        assert_eq!(r.location, LocationKind::Interior);
    }

    #[test]
    fn square_is_strong_everywhere() {
        let a = square_matrix();
        let (model, family) = setup(&a, 256, 4);
        let summary =
            classify_boundary(&a, &model, &family, &ClassifyOptions::default(), None).unwrap();
        assert!(summary.reports.len() >= 8, "classified {} points", summary.reports.len());
        for r in &summary.reports {
            assert_eq!(r.verdict, Verdict::Strong, "point {} rule {}", r.z, r.rule);
        }
        assert_eq!(summary.non_strong_count, 0);
    }

    #[test]
    fn two_ellipse_singularity_is_case_three() {
        let op = crate::gallery::cjkls_block(1.0, 1.0);
        let a = &op.matrix;
        let (model, family) = setup(a, 512, 4);
        let r = classify_point(a, c(0.0, 0.0), &model, &family, &ClassifyOptions::default(), Some(&op.metadata)).unwrap();
        assert_eq!(r.verdict, Verdict::FailsWeak, "rule {} evidence {:?}", r.rule, r.evidence);
        assert_eq!(r.case, CaseTag::III);
        assert_eq!(r.evidence.curve_count, Some(2));
    }

    #[test]
    fn normal_limit_point_needs_metadata() {
        let mut values = vec![c(0.0, 0.0)];
        for k in 1..=20i32 {
            let kf = k as f64;
            values.push(c(1.0 / kf, 1.0 / (kf * kf)));
            values.push(c(-1.0 / kf, 1.0 / (kf * kf)));
        }
        let op = crate::gallery::normal_diag(&values, &[c(0.0, 0.0)]);
        let a = &op.matrix;
        let (model, family) = setup(a, 256, 4);
        // with declared metadata: the limit rule fires
        let r = classify_point(a, c(0.0, 0.0), &model, &family, &ClassifyOptions::default(), Some(&op.metadata)).unwrap();
        assert_eq!(r.verdict, Verdict::FailsWeak, "rule {}", r.rule);
        assert_eq!(r.rule, "normal-limit-extreme");
        // without metadata: the finite matrix itself is classified
        let r = classify_point(a, c(0.0, 0.0), &model, &family, &ClassifyOptions::default(), None).unwrap();
        assert_ne!(r.verdict, Verdict::FailsWeak, "rule {}", r.rule);
    }

    #[test]
    fn rule_precedence_interior_never_boundary_ruled() {
        let a = square_matrix();
        let (model, family) = setup(&a, 256, 4);
        for z in [c(0.0, 0.0), c(0.3, 0.2), c(-0.4, 0.1)] {
            let r = classify_point(&a, z, &model, &family, &ClassifyOptions::default(), None).unwrap();
            assert_eq!(r.rule, "interior-point");
        }
    }

    #[test]
    fn outside_point_is_rejected() {
        let a = nilpotent2();
        let (model, family) = setup(&a, 128, 2);
        assert!(matches!(
            classify_point(&a, c(2.0, 0.0), &model, &family, &ClassifyOptions::default(), None),
            Err(Error::OutsideRange)
        ));
    }

    #[test]
    fn degenerate_segment_normal_is_strong() {
        let a = ComplexSquareMatrix::diagonal(&[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        let model = boundary_scan(&a, 64).unwrap();
        let family = track_branches(&a, (0.0, TAU), 64, 2).unwrap();
        let r = classify_point(&a, c(0.5, 0.0), &model, &family, &ClassifyOptions::default(), None).unwrap();
        assert_eq!(r.verdict, Verdict::Strong);
        assert_eq!(r.rule, "degenerate-segment-normal");
    }
}
