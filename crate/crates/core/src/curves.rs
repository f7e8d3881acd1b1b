//! Analytic eigenvalue branches of Re(e^{-iθ}A) tracked across a θ-grid, and
//! the planar critical curves e^{iθ}(λ(θ) + iλ′(θ)) they generate.
//!
//! Analytic selection of branches is replaced by discrete continuation:
//! eigenvectors at consecutive grid angles are matched greedily by overlap
//! |⟨x(θ_k), x(θ_{k+1})⟩|, and a branch is terminated (never silently
//! reassigned) when the best overlap drops below [`OVERLAP_THRESHOLD`].

use num_complex::Complex;

use crate::eig::{hermitian_eig, operator_norm};
use crate::error::{Error, Result};
use crate::matrix::{
    cartesian_part, compress, inner, quadratic_form, CartesianPart, ComplexSquareMatrix,
    UnitVector, C64,
};
use crate::support::{default_flat_tol, support_value};

/// Minimum eigenvector overlap for two consecutive grid points to count as
/// the same analytic branch.
pub const OVERLAP_THRESHOLD: f64 = 0.9;

/// Overlap below which two curve passages are confidently distinct curves.
pub const DISTINCT_THRESHOLD: f64 = 0.5;

/// First-order slope data on an eigenspace: one group per distinct slope.
#[derive(Debug, Clone)]
pub struct SlopeGroup {
    pub slope: f64,
    pub multiplicity: usize,
    pub basis: Vec<UnitVector>,
}

/// One tracked eigenvalue branch λ(θ) with phase-fixed eigenvectors.
#[derive(Debug, Clone)]
pub struct CriticalBranch {
    pub id: usize,
    pub thetas: Vec<f64>,
    pub lambdas: Vec<f64>,
    /// λ′(θ) = ⟨Im(e^{-iθ}A) x(θ), x(θ)⟩.
    pub slopes: Vec<f64>,
    pub vectors: Vec<UnitVector>,
    /// Whether λ(θ) equals the top eigenvalue μ(θ) at each grid point.
    pub is_maximal: Vec<bool>,
}

impl CriticalBranch {
    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }
}

/// Branch continuation failure: records where and how badly matching broke.
#[derive(Debug, Clone)]
pub struct CrossingEvent {
    pub branch_id: usize,
    pub theta: f64,
    pub best_overlap: f64,
}

/// All branches tracked over one θ-range, with cached curve points.
#[derive(Debug, Clone)]
pub struct BranchFamily {
    pub branches: Vec<CriticalBranch>,
    pub crossings: Vec<CrossingEvent>,
    pub grid_step: f64,
    /// Curve points per branch, same indexing as the branch arrays.
    pub points: Vec<Vec<C64>>,
}

/// First-order slopes of the maximal eigenvalue at θ: eigenvalues of the
/// compression of Im(e^{-iθ}A) onto the near-maximal eigenspace, grouped by
/// the flat-detection tolerance. Ascending in slope.
pub fn branch_slopes(a: &ComplexSquareMatrix, theta: f64, gap_tol: f64) -> Result<Vec<SlopeGroup>> {
    let sample = support_value(a, theta, gap_tol)?;
    let flat_tol = default_flat_tol(operator_norm(a));
    slope_groups_for_eigenspace(a, theta, &sample.eigenbasis, flat_tol)
}

/// Slope groups for an already-computed eigenspace basis.
pub(crate) fn slope_groups_for_eigenspace(
    a: &ComplexSquareMatrix,
    theta: f64,
    eigenbasis: &[UnitVector],
    flat_tol: f64,
) -> Result<Vec<SlopeGroup>> {
    let m = eigenbasis.len();
    if m == 0 {
        return Err(Error::InvalidInput("empty eigenspace".into()));
    }
    let im = cartesian_part(a, theta, CartesianPart::Imaginary);
    if m == 1 {
        let slope = quadratic_form(&im, eigenbasis[0].components()).re;
        return Ok(vec![SlopeGroup { slope, multiplicity: 1, basis: vec![eigenbasis[0].clone()] }]);
    }
    let small = compress(&im, eigenbasis)?;
    let decomp = hermitian_eig(&small)?;
    // lift the small eigenvectors back to the ambient space
    let dim = a.dim();
    let lifted: Vec<UnitVector> = (0..m)
        .map(|j| {
            let mut v = vec![C64::new(0.0, 0.0); dim];
            for (b, basis_vec) in eigenbasis.iter().enumerate() {
                let coeff = decomp.eigenvectors[(b, j)];
                for (vi, bi) in v.iter_mut().zip(basis_vec.components()) {
                    *vi += bi * coeff;
                }
            }
            UnitVector::normalized(v).expect("lift of orthonormal combination")
        })
        .collect();

    let mut groups: Vec<SlopeGroup> = Vec::new();
    for j in 0..m {
        let slope = decomp.eigenvalues[j];
        match groups.last_mut() {
            Some(g) if (slope - g.slope).abs() <= flat_tol => {
                // running mean keeps the group slope stable
                g.slope = (g.slope * g.multiplicity as f64 + slope) / (g.multiplicity + 1) as f64;
                g.multiplicity += 1;
                g.basis.push(lifted[j].clone());
            }
            _ => groups.push(SlopeGroup { slope, multiplicity: 1, basis: vec![lifted[j].clone()] }),
        }
    }
    Ok(groups)
}

/// Track the top_k eigenvalue branches from `range.0` to `range.1` across an
/// inclusive grid of `grid_size + 1` points.
pub fn track_branches(
    a: &ComplexSquareMatrix,
    range: (f64, f64),
    grid_size: usize,
    top_k: usize,
) -> Result<BranchFamily> {
    if grid_size < 64 {
        return Err(Error::InvalidInput("grid size must be at least 64".into()));
    }
    if top_k < 1 || top_k > a.dim() {
        return Err(Error::InvalidInput(format!(
            "top_k must lie in 1..={}, got {top_k}",
            a.dim()
        )));
    }
    let (start, end) = range;
    if !(end > start) {
        return Err(Error::InvalidInput("empty theta range".into()));
    }
    let n = a.dim();
    let step = (end - start) / grid_size as f64;
    let fro = a.frobenius_norm();
    let max_tol = 1e-10 * (1.0 + fro);

    let eig_at = |theta: f64| -> Result<crate::eig::SpectralDecomposition> {
        hermitian_eig(&cartesian_part(a, theta, CartesianPart::Real))
    };

    let first = eig_at(start)?;
    let mut branches: Vec<CriticalBranch> = Vec::with_capacity(top_k);
    let mut live: Vec<bool> = vec![true; top_k];
    let im0 = cartesian_part(a, start, CartesianPart::Imaginary);
    for rank in 0..top_k {
        let col = n - 1 - rank;
        let vector = first.eigenvector(col);
        let lambda = first.eigenvalues[col];
        let slope = quadratic_form(&im0, vector.components()).re;
        branches.push(CriticalBranch {
            id: rank,
            thetas: vec![start],
            lambdas: vec![lambda],
            slopes: vec![slope],
            vectors: vec![vector],
            is_maximal: vec![first.max_eigenvalue() - lambda <= max_tol],
        });
    }
    let mut crossings = Vec::new();

    for j in 1..=grid_size {
        let theta = start + step * j as f64;
        let decomp = eig_at(theta)?;
        let im = cartesian_part(a, theta, CartesianPart::Imaginary);
        let cols: Vec<UnitVector> = (0..n).map(|c| decomp.eigenvector(c)).collect();

        // candidate (branch, column) pairs sorted for deterministic greedy matching
        let mut cands: Vec<(usize, usize, f64, f64)> = Vec::new();
        for (b, branch) in branches.iter().enumerate() {
            if !live[b] {
                continue;
            }
            let prev = branch.vectors.last().expect("nonempty branch");
            let prev_lambda = *branch.lambdas.last().expect("nonempty branch");
            for (c, col) in cols.iter().enumerate() {
                let ov = inner(prev.components(), col.components()).norm();
                cands.push((b, c, ov, (decomp.eigenvalues[c] - prev_lambda).abs()));
            }
        }
        cands.sort_by(|x, y| {
            y.2.partial_cmp(&x.2)
                .expect("finite overlaps")
                .then(x.3.partial_cmp(&y.3).expect("finite gaps"))
                .then(x.0.cmp(&y.0))
                .then(x.1.cmp(&y.1))
        });

        let mut branch_done = vec![false; branches.len()];
        let mut col_used = vec![false; n];
        let mut best_seen: Vec<f64> = vec![0.0; branches.len()];
        for &(b, c, ov, _) in &cands {
            if branch_done[b] || !live[b] {
                continue;
            }
            best_seen[b] = best_seen[b].max(ov);
            if col_used[c] {
                continue;
            }
            if ov < OVERLAP_THRESHOLD {
                continue;
            }
            // extend branch b with column c
            col_used[c] = true;
            branch_done[b] = true;
            let branch = &mut branches[b];
            branch.thetas.push(theta);
            branch.lambdas.push(decomp.eigenvalues[c]);
            branch.slopes.push(quadratic_form(&im, cols[c].components()).re);
            branch.vectors.push(cols[c].clone());
            branch
                .is_maximal
                .push(decomp.max_eigenvalue() - decomp.eigenvalues[c] <= max_tol);
        }
        for (b, done) in branch_done.iter().enumerate() {
            if live[b] && !done {
                live[b] = false;
                crossings.push(CrossingEvent {
                    branch_id: branches[b].id,
                    theta,
                    best_overlap: best_seen[b],
                });
            }
        }
        if live.iter().all(|&l| !l) {
            break;
        }
    }

    let points = branches
        .iter()
        .map(|b| b.thetas.iter().zip(&b.lambdas).zip(&b.slopes).map(
            |((&t, &l), &s)| Complex::from_polar(1.0, t) * C64::new(l, s),
        ).collect())
        .collect();

    Ok(BranchFamily { branches, crossings, grid_step: step, points })
}

/// Planar critical-curve points e^{iθ}(λ + iλ′) along one branch. Each point
/// is verified against f_A(x(θ)) as part of the contract.
pub fn curve_points(a: &ComplexSquareMatrix, branch: &CriticalBranch) -> Result<Vec<C64>> {
    let tol = 1e-6 * (1.0 + operator_norm(a));
    let mut out = Vec::with_capacity(branch.len());
    for k in 0..branch.len() {
        let p = Complex::from_polar(1.0, branch.thetas[k]) * C64::new(branch.lambdas[k], branch.slopes[k]);
        let f = quadratic_form(a, branch.vectors[k].components());
        let defect = (p - f).norm();
        if defect > tol {
            return Err(Error::InvalidInput(format!(
                "curve point at theta {:.6} disagrees with the range map by {defect:.3e}",
                branch.thetas[k]
            )));
        }
        out.push(p);
    }
    Ok(out)
}

/// One close approach of a branch curve to a query point.
#[derive(Debug, Clone)]
pub struct CurvePassage {
    pub branch_id: usize,
    pub theta: f64,
    pub point: C64,
    pub vector: UnitVector,
}

#[derive(Debug, Clone)]
pub struct CurvesThrough {
    /// Number of distinct curves through the query point after merging
    /// passages with matching eigenvector subspaces.
    pub count: usize,
    pub passages: Vec<CurvePassage>,
    /// True when some pair of passages could not be confidently merged or
    /// separated by the subspace test.
    pub ambiguous: bool,
}

/// Distinct critical curves passing within `tol` of `z`.
///
/// Passages are maximal runs of grid points within `tol` (runs separated by
/// more than 10 grid steps count separately); passages whose eigenvectors
/// agree (overlap ≥ [`OVERLAP_THRESHOLD`]) are the same curve, and overlaps
/// between [`DISTINCT_THRESHOLD`] and the identity threshold are flagged
/// ambiguous rather than forced either way.
pub fn curves_through(family: &BranchFamily, z: C64, tol: f64) -> CurvesThrough {
    let mut passages: Vec<CurvePassage> = Vec::new();
    for (b, branch) in family.branches.iter().enumerate() {
        let pts = &family.points[b];
        let mut run_best: Option<(usize, f64)> = None;
        let mut last_hit: Option<usize> = None;
        for (k, &p) in pts.iter().enumerate() {
            let d = (p - z).norm();
            if d <= tol {
                if let Some(prev) = last_hit {
                    if k - prev > 10 {
                        // close the previous run
                        if let Some((idx, _)) = run_best.take() {
                            passages.push(passage_at(branch, pts, idx));
                        }
                    }
                }
                last_hit = Some(k);
                run_best = match run_best {
                    Some((idx, best)) if best <= d => Some((idx, best)),
                    _ => Some((k, d)),
                };
            }
        }
        if let Some((idx, _)) = run_best {
            passages.push(passage_at(branch, pts, idx));
        }
    }

    merge_passages(passages)
}

fn passage_at(branch: &CriticalBranch, pts: &[C64], k: usize) -> CurvePassage {
    CurvePassage {
        branch_id: branch.id,
        theta: branch.thetas[k],
        point: pts[k],
        vector: branch.vectors[k].clone(),
    }
}

fn merge_passages(passages: Vec<CurvePassage>) -> CurvesThrough {
    let m = passages.len();
    let mut class: Vec<usize> = (0..m).collect();
    fn find(class: &mut Vec<usize>, mut i: usize) -> usize {
        while class[i] != i {
            class[i] = class[class[i]];
            i = class[i];
        }
        i
    }
    let mut ambiguous = false;
    for i in 0..m {
        for j in i + 1..m {
            let ov = inner(passages[i].vector.components(), passages[j].vector.components()).norm();
            if ov >= OVERLAP_THRESHOLD {
                let (ri, rj) = (find(&mut class, i), find(&mut class, j));
                if ri != rj {
                    class[ri.max(rj)] = ri.min(rj);
                }
            } else if ov > DISTINCT_THRESHOLD {
                ambiguous = true;
            }
        }
    }
    let mut roots: Vec<usize> = (0..m).map(|i| find(&mut class, i)).collect();
    roots.sort_unstable();
    roots.dedup();
    CurvesThrough { count: roots.len(), passages, ambiguous }
}

/// Curve counting with a local refinement pass: when the coarse answer is
/// ambiguous, the window around the passages is re-tracked at 4× resolution
/// and the subspace comparison is repeated.
pub fn curves_through_refined(
    a: &ComplexSquareMatrix,
    family: &BranchFamily,
    z: C64,
    tol: f64,
    top_k: usize,
) -> Result<CurvesThrough> {
    let coarse = curves_through(family, z, tol);
    if !coarse.ambiguous || coarse.passages.is_empty() {
        return Ok(coarse);
    }
    let center = coarse.passages.iter().map(|p| p.theta).sum::<f64>() / coarse.passages.len() as f64;
    let window = 0.1;
    let fine_steps = ((2.0 * window / family.grid_step) * 4.0).ceil().max(64.0) as usize;
    let fine = track_branches(a, (center - window, center + window), fine_steps, top_k)?;
    let refined = curves_through(&fine, z, tol);
    if refined.passages.is_empty() {
        // refinement lost the point entirely; keep the coarse (ambiguous) answer
        return Ok(coarse);
    }
    Ok(refined)
}

/// Tag each arc of the boundary model with the branch that parameterizes it.
pub fn attach_branch_ids(model: &mut crate::support::BoundaryModel, family: &BranchFamily) {
    let tol = 1e-6 * (1.0 + model.op_norm) * 10.0;
    for arc in model.arcs.iter_mut() {
        // middle grid index of the (circular) run
        let len = if arc.end_index >= arc.start_index {
            arc.end_index - arc.start_index + 1
        } else {
            model.grid_size - arc.start_index + arc.end_index + 1
        };
        let mid = (arc.start_index + len / 2) % model.grid_size;
        let (theta, z) = match model.points.iter().find(|p| p.grid_index == mid) {
            Some(p) => (p.theta, p.z),
            None => continue,
        };
        let mut best: Option<(usize, f64)> = None;
        for (b, branch) in family.branches.iter().enumerate() {
            for k in 0..branch.len() {
                if !branch.is_maximal[k] {
                    continue;
                }
                if (branch.thetas[k] - theta).abs() <= family.grid_step * 0.51 {
                    let d = (family.points[b][k] - z).norm();
                    if best.map(|(_, bd)| d < bd).unwrap_or(true) {
                        best = Some((branch.id, d));
                    }
                }
            }
        }
        if let Some((id, d)) = best {
            if d <= tol {
                arc.branch_id = Some(id);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    const TAU: f64 = 2.0 * PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn nilpotent2() -> ComplexSquareMatrix {
        ComplexSquareMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
    }

    #[test]
    fn slopes_of_normal_two_by_two_split() {
        // diag(1, i) at θ = π/4: two-dimensional top eigenspace, slopes ∓√2/2,
        // flat endpoints 1 and i
        let a = ComplexSquareMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0)]);
        let groups = branch_slopes(&a, FRAC_PI_4, 1e-8).unwrap();
        assert_eq!(groups.len(), 2);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((groups[0].slope + s).abs() < 1e-10);
        assert!((groups[1].slope - s).abs() < 1e-10);
        let phase = Complex::from_polar(1.0, FRAC_PI_4);
        let mu = s;
        let p0 = phase * c(mu, groups[0].slope);
        let p1 = phase * c(mu, groups[1].slope);
        assert!((p0 - c(1.0, 0.0)).norm() < 1e-10);
        assert!((p1 - c(0.0, 1.0)).norm() < 1e-10);
    }

    #[test]
    fn nilpotent_slope_is_zero() {
        for &theta in &[0.0, 1.0, 2.5, 4.0] {
            let groups = branch_slopes(&nilpotent2(), theta, 1e-8).unwrap();
            assert_eq!(groups.len(), 1);
            assert!(groups[0].slope.abs() < 1e-10);
        }
    }

    #[test]
    fn scalar_operator_branch() {
        // 2·I: λ(θ) = 2cos θ, λ′(θ) = −2sin θ
        let a = ComplexSquareMatrix::identity(2).scale(c(2.0, 0.0));
        let family = track_branches(&a, (0.0, TAU), 128, 1).unwrap();
        assert_eq!(family.branches.len(), 1);
        let b = &family.branches[0];
        assert_eq!(b.len(), 129);
        for k in 0..b.len() {
            assert!((b.lambdas[k] - 2.0 * b.thetas[k].cos()).abs() < 1e-10);
            assert!((b.slopes[k] + 2.0 * b.thetas[k].sin()).abs() < 1e-10);
        }
        // constant curve at the point 2
        for &p in &family.points[0] {
            assert!((p - c(2.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn normal_four_point_branches() {
        let a = ComplexSquareMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]);
        let family = track_branches(&a, (0.0, TAU), 512, 4).unwrap();
        assert_eq!(family.branches.len(), 4);
        assert!(family.crossings.is_empty());
        for (b, branch) in family.branches.iter().enumerate() {
            assert_eq!(branch.len(), 513);
            // each constant curve sits at its eigenvalue
            let target = family.points[b][0];
            for &p in &family.points[b] {
                assert!((p - target).norm() < 1e-9);
            }
            // maximal on a quarter of the circle
            let frac = branch.is_maximal.iter().filter(|&&m| m).count() as f64
                / branch.len() as f64;
            assert!((frac - 0.25).abs() < 0.02, "maximal fraction {frac}");
        }
    }

    #[test]
    fn branch_overlap_continuity() {
        let a = ComplexSquareMatrix::from_rows(&[
            vec![c(0.1, 0.4), c(1.2, -0.3), c(0.0, 0.2)],
            vec![c(-0.7, 0.0), c(0.3, 0.3), c(0.5, -0.5)],
            vec![c(0.2, 0.9), c(-0.1, 0.1), c(-0.4, -0.2)],
        ]);
        let family = track_branches(&a, (0.0, TAU), 256, 2).unwrap();
        for branch in &family.branches {
            for k in 0..branch.len() - 1 {
                let ov = inner(
                    branch.vectors[k].components(),
                    branch.vectors[k + 1].components(),
                )
                .norm();
                assert!(ov >= OVERLAP_THRESHOLD, "overlap {ov} at step {k}");
            }
            // Lipschitz bound |λ(θ+h) − λ(θ)| ≤ ‖A‖₂ h + 1e-8
            let bound = operator_norm(&a) * family.grid_step + 1e-8;
            for w in branch.lambdas.windows(2) {
                assert!((w[1] - w[0]).abs() <= bound);
            }
        }
    }

    #[test]
    fn slope_matches_definitional_form() {
        let a = ComplexSquareMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.5)],
            vec![c(-0.2, 0.1), c(0.3, -0.8)],
        ]);
        let family = track_branches(&a, (0.0, TAU), 128, 2).unwrap();
        let tol = 1e-10 * (1.0 + a.frobenius_norm());
        for branch in &family.branches {
            for k in 0..branch.len() {
                let im = cartesian_part(&a, branch.thetas[k], CartesianPart::Imaginary);
                let form = quadratic_form(&im, branch.vectors[k].components()).re;
                assert!((branch.slopes[k] - form).abs() <= tol);
            }
        }
    }

    #[test]
    fn curve_points_identity_and_circle() {
        let id = ComplexSquareMatrix::identity(2);
        let family = track_branches(&id, (0.0, TAU), 64, 1).unwrap();
        let pts = curve_points(&id, &family.branches[0]).unwrap();
        for p in pts {
            assert!((p - c(1.0, 0.0)).norm() < 1e-10);
        }

        let family = track_branches(&nilpotent2(), (0.0, TAU), 128, 1).unwrap();
        let pts = curve_points(&nilpotent2(), &family.branches[0]).unwrap();
        for (k, p) in pts.iter().enumerate() {
            let want = Complex::from_polar(0.5, family.branches[0].thetas[k]);
            assert!((p - want).norm() < 1e-10);
        }
    }

    #[test]
    fn curves_through_vertex_counts_one() {
        let a = ComplexSquareMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]);
        let family = track_branches(&a, (0.0, TAU), 512, 4).unwrap();
        let res = curves_through(&family, c(1.0, 0.0), 1e-6);
        assert_eq!(res.count, 1);
        assert!(!res.ambiguous);
    }

    #[test]
    fn curves_through_circle_merges_top_and_bottom() {
        // both branches of the 2×2 nilpotent trace the same circle; passages
        // at θ and θ+π share the eigenvector and must merge
        let family = track_branches(&nilpotent2(), (0.0, TAU), 128, 2).unwrap();
        let res = curves_through(&family, c(0.5, 0.0), 1e-6);
        assert_eq!(res.count, 1, "passages: {:?}", res.passages.len());
    }

    #[test]
    fn finite_difference_slope_convergence() {
        // central differences of λ converge to λ′ at order ≥ 1.8 under grid halving
        let a = ComplexSquareMatrix::from_rows(&[
            vec![c(0.2, 0.1), c(0.9, -0.4), c(0.1, 0.0)],
            vec![c(-0.3, 0.2), c(0.0, 0.6), c(0.4, 0.4)],
            vec![c(0.5, -0.1), c(0.2, 0.2), c(-0.6, 0.0)],
        ]);
        let err_at = |grid: usize| -> f64 {
            let family = track_branches(&a, (0.0, 1.0), grid, 1).unwrap();
            let b = &family.branches[0];
            let h = family.grid_step;
            let mut worst = 0.0f64;
            for k in 1..b.len() - 1 {
                let fd = (b.lambdas[k + 1] - b.lambdas[k - 1]) / (2.0 * h);
                worst = worst.max((fd - b.slopes[k]).abs());
            }
            worst
        };
        let e1 = err_at(128);
        let e2 = err_at(256);
        let order = (e1 / e2).log2();
        assert!(order >= 1.8, "observed order {order} (errors {e1:.3e} -> {e2:.3e})");
    }

    #[test]
    fn maximal_points_land_on_boundary() {
        let a = ComplexSquareMatrix::from_rows(&[
            vec![c(0.1, 0.4), c(1.2, -0.3)],
            vec![c(-0.7, 0.0), c(0.3, 0.3)],
        ]);
        let model = crate::support::boundary_scan(&a, 128).unwrap();
        let family = track_branches(&a, (0.0, TAU), 128, 1).unwrap();
        let tol = 1e-8 * (1.0 + model.op_norm);
        let branch = &family.branches[0];
        for k in 0..branch.len() {
            if !branch.is_maximal[k] {
                continue;
            }
            let grid_index = ((branch.thetas[k] / family.grid_step).round() as usize) % 128;
            if let Some(bp) = model.points.iter().find(|p| p.grid_index == grid_index) {
                if bp.kind == crate::support::SegmentKind::Arc {
                    assert!((family.points[0][k] - bp.z).norm() <= tol);
                }
            }
        }
    }

    #[test]
    fn attach_branch_ids_on_disk() {
        let mut model = crate::support::boundary_scan(&nilpotent2(), 128).unwrap();
        let family = track_branches(&nilpotent2(), (0.0, TAU), 128, 1).unwrap();
        attach_branch_ids(&mut model, &family);
        assert!(model.arcs.iter().all(|arc| arc.branch_id == Some(0)));
    }

    #[test]
    fn volterra_branch_slope_at_right_angle() {
        // top branch slope at θ = π/2 is −2/π²
        let v = crate::gallery::volterra_section(32).matrix;
        let gap = crate::support::default_gap_tol(v.frobenius_norm());
        let groups = branch_slopes(&v, FRAC_PI_2, gap).unwrap();
        assert_eq!(groups.len(), 1);
        let want = -2.0 / (PI * PI);
        assert!((groups[0].slope - want).abs() < 1e-2, "slope {}", groups[0].slope);
    }
}
