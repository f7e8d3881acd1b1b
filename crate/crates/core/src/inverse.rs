//! Preimage construction for the range map: boundary preimages from maximal
//! eigenvectors, interior preimages by reduction to a 2×2 compression solved
//! in closed-tolerance bisection form.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{compress, inner, norm, quadratic_form, ComplexSquareMatrix, UnitVector, C64};
use crate::support::{hull_contains, supporting_angle, BoundaryModel, Location};

/// How a preimage was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    BoundaryEigenvector,
    TwoByTwoReduction,
}

#[derive(Debug, Clone)]
pub struct PreimageResult {
    pub z_target: C64,
    pub x: UnitVector,
    /// f_A(x), recomputed on the full matrix.
    pub achieved: C64,
    pub residual: f64,
    pub construction: Construction,
    /// Rank of the projector onto the span of all preimages returned by the
    /// same call.
    pub span_projector_rank: usize,
}

/// Preimages of the support line L_θ: the eigenbasis of the μ(θ)-eigenspace.
/// When the eigenspace is more than one dimensional the f-values trace the
/// flat segment of the boundary.
pub fn boundary_preimages(
    a: &ComplexSquareMatrix,
    theta: f64,
    gap_tol: f64,
) -> Result<Vec<PreimageResult>> {
    let sample = crate::support::support_value(a, theta, gap_tol)?;
    let rank = sample.multiplicity;
    let phase = Complex::from_polar(1.0, -theta);
    let tol = 1e-9 * (1.0 + crate::eig::operator_norm(a));
    let mut out = Vec::with_capacity(rank);
    for v in &sample.eigenbasis {
        let achieved = quadratic_form(a, v.components());
        let defect = ((phase * achieved).re - sample.mu).abs();
        if defect > tol {
            return Err(Error::InvalidInput(format!(
                "boundary preimage drifted off the support line by {defect:.3e}"
            )));
        }
        out.push(PreimageResult {
            z_target: achieved,
            x: v.clone(),
            achieved,
            residual: 0.0,
            construction: Construction::BoundaryEigenvector,
            span_projector_rank: rank,
        });
    }
    Ok(out)
}

/// Sweep of normalized combinations cos s·v₁ + e^{iφ} sin s·v₂ of two
/// eigenvectors of a degenerate support eigenspace; their f-values run along
/// the flat portion.
pub fn flat_sweep(
    a: &ComplexSquareMatrix,
    theta: f64,
    gap_tol: f64,
    steps: usize,
) -> Result<Vec<PreimageResult>> {
    let base = boundary_preimages(a, theta, gap_tol)?;
    if base.len() < 2 {
        return Ok(base);
    }
    let v1 = base.first().expect("len >= 2").x.clone();
    let v2 = base.last().expect("len >= 2").x.clone();
    let mut out = base;
    let rank = out[0].span_projector_rank;
    for i in 0..steps {
        let s = std::f64::consts::FRAC_PI_2 * (i as f64 + 0.5) / steps as f64;
        for phi_idx in 0..4 {
            let phi = std::f64::consts::FRAC_PI_2 * phi_idx as f64;
            let e = Complex::from_polar(1.0, phi);
            let comps: Vec<C64> = v1
                .components()
                .iter()
                .zip(v2.components())
                .map(|(a1, a2)| a1 * s.cos() + a2 * e * s.sin())
                .collect();
            let x = UnitVector::normalized(comps)?;
            let achieved = quadratic_form(a, x.components());
            out.push(PreimageResult {
                z_target: achieved,
                x,
                achieved,
                residual: 0.0,
                construction: Construction::BoundaryEigenvector,
                span_projector_rank: rank,
            });
        }
    }
    Ok(out)
}

/// Solve u*Bu = z on the unit sphere of ℂ² by nested bisection over the
/// parameterization u(s, φ) = (cos s, e^{iφ} sin s).
///
/// The numerical range of a 2×2 matrix is an ellipse (possibly degenerate);
/// membership is checked against its support function first, and
/// [`Error::NotInRange`] reports how far outside the target lies.
pub fn solve_2x2(b: &ComplexSquareMatrix, z: C64, tol: f64) -> Result<UnitVector> {
    if b.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, actual: b.dim() });
    }
    if tol <= 0.0 {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    // shift to zero trace
    let center = b.trace() * 0.5;
    let b11 = b[(0, 0)] - center;
    let b12 = b[(0, 1)];
    let b21 = b[(1, 0)];
    let z0 = z - center;

    // support-function membership: μ(θ) of the shifted matrix in closed form
    let mut defect = 0.0f64;
    for k in 0..720 {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / 720.0;
        let phase = Complex::from_polar(1.0, -theta);
        let d = (phase * b11).re;
        let off = (phase * b12 + (phase * b21).conj()) * 0.5;
        let mu = (d * d + off.norm_sqr()).sqrt();
        defect = defect.max((phase * z0).re - mu);
    }
    if defect > tol {
        return Err(Error::NotInRange { defect });
    }

    let eval = |s: f64, phi: f64| -> C64 {
        let e = Complex::from_polar(1.0, phi);
        b11 * (2.0 * s).cos() + (e * b12 + e.conj() * b21) * ((2.0 * s).sin() * 0.5)
    };

    // coarse grid, then shrinking local refinement
    let mut best = (f64::INFINITY, 0.0f64, 0.0f64);
    for i in 0..=64 {
        let s = std::f64::consts::FRAC_PI_2 * i as f64 / 64.0;
        for j in 0..64 {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / 64.0;
            let d = (eval(s, phi) - z0).norm();
            if d < best.0 {
                best = (d, s, phi);
            }
        }
    }
    let mut ws = std::f64::consts::FRAC_PI_2 / 64.0;
    let mut wphi = 2.0 * std::f64::consts::PI / 64.0;
    for _ in 0..40 {
        let (_, s0, phi0) = best;
        for i in -2..=2i32 {
            let s = (s0 + ws * i as f64 * 0.5).clamp(0.0, std::f64::consts::FRAC_PI_2);
            for j in -2..=2i32 {
                let phi = phi0 + wphi * j as f64 * 0.5;
                let d = (eval(s, phi) - z0).norm();
                if d < best.0 {
                    best = (d, s, phi);
                }
            }
        }
        ws *= 0.6;
        wphi *= 0.6;
        if best.0 <= tol * 1e-3 {
            break;
        }
    }
    // damped Gauss-Newton polish; the pattern search alone stagnates around
    // quadratic accuracy of its final window
    {
        let (mut d0, mut s, mut phi) = best;
        for _ in 0..50 {
            if d0 <= 1e-15 {
                break;
            }
            let e = Complex::from_polar(1.0, phi);
            let q = (e * b12 + e.conj() * b21) * 0.5;
            let dq = (e * b12 * C64::new(0.0, 1.0) + e.conj() * b21 * C64::new(0.0, -1.0)) * 0.5;
            let g = eval(s, phi) - z0;
            let gs = b11 * (-2.0 * (2.0 * s).sin()) + q * (2.0 * (2.0 * s).cos());
            let gphi = dq * (2.0 * s).sin();
            // least-squares step on the real 2x2 system
            let (a11, a12) = (gs.re, gphi.re);
            let (a21, a22) = (gs.im, gphi.im);
            let (m11, m12) = (a11 * a11 + a21 * a21, a11 * a12 + a21 * a22);
            let m22 = a12 * a12 + a22 * a22;
            let lam = 1e-12 * (m11 + m22).max(1e-300);
            let det = (m11 + lam) * (m22 + lam) - m12 * m12;
            if det.abs() < 1e-300 {
                break;
            }
            let r1 = a11 * g.re + a21 * g.im;
            let r2 = a12 * g.re + a22 * g.im;
            let ds = -((m22 + lam) * r1 - m12 * r2) / det;
            let dphi = -(-m12 * r1 + (m11 + lam) * r2) / det;
            let mut step = 1.0;
            let mut improved = false;
            for _ in 0..20 {
                let s_new = (s + step * ds).clamp(0.0, std::f64::consts::FRAC_PI_2);
                let phi_new = phi + step * dphi;
                let d_new = (eval(s_new, phi_new) - z0).norm();
                if d_new < d0 {
                    s = s_new;
                    phi = phi_new;
                    d0 = d_new;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if !improved {
                break;
            }
        }
        if d0 < best.0 {
            best = (d0, s, phi);
        }
    }
    let (dist, s, phi) = best;
    if dist > tol {
        return Err(Error::NotInRange { defect: dist });
    }
    UnitVector::try_new(vec![
        C64::new(s.cos(), 0.0),
        Complex::from_polar(1.0, phi) * s.sin(),
    ])
}

/// A preimage of `z` under f_A: boundary eigenvector when `z` sits on the
/// scanned boundary, otherwise a chord through `z` reduces the problem to a
/// 2×2 compression.
pub fn preimage(
    a: &ComplexSquareMatrix,
    model: &BoundaryModel,
    z: C64,
    tol: f64,
) -> Result<PreimageResult> {
    preimage_seeded(a, model, z, tol, 0x5EED_1234)
}

pub fn preimage_seeded(
    a: &ComplexSquareMatrix,
    model: &BoundaryModel,
    z: C64,
    tol: f64,
    seed: u64,
) -> Result<PreimageResult> {
    let margin = crate::support::boundary_band(model).max(tol);
    let location = hull_contains(model, z, margin)?;
    if location == Location::Outside {
        return Err(Error::OutsideRange);
    }

    if location == Location::Boundary {
        if let Ok(result) = boundary_route(a, model, z, tol) {
            return Ok(result);
        }
    }
    chord_route(a, model, z, tol, seed)
}

fn boundary_route(
    a: &ComplexSquareMatrix,
    model: &BoundaryModel,
    z: C64,
    tol: f64,
) -> Result<PreimageResult> {
    let (theta, sample) = supporting_angle(a, model, z)?;
    let candidates = boundary_preimages(a, theta, sample.gap_tol)?;
    let rank = candidates.len();
    // single eigenvector matching the target directly
    let best = candidates
        .iter()
        .min_by(|p, q| {
            (p.achieved - z)
                .norm()
                .partial_cmp(&(q.achieved - z).norm())
                .expect("finite")
        })
        .expect("at least one eigenvector");
    if (best.achieved - z).norm() <= tol {
        let mut out = best.clone();
        out.z_target = z;
        out.residual = (out.achieved - z).norm();
        return Ok(out);
    }
    // flat interior: combine the two extreme eigenvectors through a 2×2 solve
    if rank >= 2 {
        let v1 = &candidates.first().expect("rank >= 2").x;
        let v2 = &candidates.last().expect("rank >= 2").x;
        if inner(v1.components(), v2.components()).norm() < 0.5 {
            let (x, achieved) = reduce_and_lift(a, v1, v2, z, tol)?;
            let residual = (achieved - z).norm();
            return Ok(PreimageResult {
                z_target: z,
                x,
                achieved,
                residual,
                construction: Construction::TwoByTwoReduction,
                span_projector_rank: 1,
            });
        }
    }
    Err(Error::NotInRange { defect: (best.achieved - z).norm() })
}

fn chord_route(
    a: &ComplexSquareMatrix,
    model: &BoundaryModel,
    z: C64,
    tol: f64,
    seed: u64,
) -> Result<PreimageResult> {
    let (theta_hat, _) = supporting_angle(a, model, z)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0u32;
    // primary chord runs parallel to the nearest support line, then seeded
    // random directions
    let mut direction = Complex::from_polar(1.0, theta_hat + std::f64::consts::FRAC_PI_2);
    loop {
        attempts += 1;
        match try_chord(a, model, z, direction, tol) {
            Ok(result) => return Ok(result),
            Err(_) if attempts < 64 => {
                direction = Complex::from_polar(1.0, rng.gen_range(0.0..2.0 * std::f64::consts::PI));
            }
            Err(_) => return Err(Error::ChordSearchFailed { attempts }),
        }
    }
}

fn try_chord(
    a: &ComplexSquareMatrix,
    model: &BoundaryModel,
    z: C64,
    direction: C64,
    tol: f64,
) -> Result<PreimageResult> {
    let w_plus = crate::support::ray_exit_hull(&model.hull, z, direction).ok_or(Error::OutsideRange)?;
    let w_minus = crate::support::ray_exit_hull(&model.hull, z, -direction).ok_or(Error::OutsideRange)?;

    let x1 = nearest_boundary_preimage(a, model, w_plus)?;
    let x2 = nearest_boundary_preimage(a, model, w_minus)?;
    if inner(x1.components(), x2.components()).norm() > 1.0 - 1e-10 {
        return Err(Error::InvalidInput("chord endpoints share a preimage".into()));
    }
    let (x, achieved) = reduce_and_lift(a, &x1, &x2, z, tol)?;
    let residual = (achieved - z).norm();
    Ok(PreimageResult {
        z_target: z,
        x,
        achieved,
        residual,
        construction: Construction::TwoByTwoReduction,
        span_projector_rank: 1,
    })
}

/// Orthonormalize {x₁, x₂}, compress A, solve the 2×2 problem, lift back.
fn reduce_and_lift(
    a: &ComplexSquareMatrix,
    x1: &UnitVector,
    x2: &UnitVector,
    z: C64,
    tol: f64,
) -> Result<(UnitVector, C64)> {
    let b1 = x1.clone();
    let proj = inner(x2.components(), b1.components());
    let raw: Vec<C64> = x2
        .components()
        .iter()
        .zip(b1.components())
        .map(|(v, b)| v - b * proj)
        .collect();
    if norm(&raw) < 1e-12 {
        return Err(Error::InvalidInput("chord endpoints are collinear".into()));
    }
    let b2 = UnitVector::normalized(raw)?;
    let small = compress(a, &[b1.clone(), b2.clone()])?;
    let u = solve_2x2(&small, z, tol)?;
    let lifted: Vec<C64> = b1
        .components()
        .iter()
        .zip(b2.components())
        .map(|(p, q)| p * u.components()[0] + q * u.components()[1])
        .collect();
    let x = UnitVector::normalized(lifted)?;
    let achieved = quadratic_form(a, x.components());
    Ok((x, achieved))
}

/// Best boundary preimage for a scanned boundary point: eigenvector of the
/// supporting angle whose f-value is closest to `w`.
fn nearest_boundary_preimage(
    a: &ComplexSquareMatrix,
    model: &BoundaryModel,
    w: C64,
) -> Result<UnitVector> {
    let (theta, sample) = supporting_angle(a, model, w)?;
    let candidates = boundary_preimages(a, theta, sample.gap_tol)?;
    Ok(candidates
        .into_iter()
        .min_by(|p, q| {
            (p.achieved - w)
                .norm()
                .partial_cmp(&(q.achieved - w).norm())
                .expect("finite")
        })
        .expect("at least one eigenvector")
        .x)
}

/// Orthogonal projector onto the span of a set of vectors, applied to `x`.
pub fn project_onto_span(span: &[UnitVector], x: &UnitVector) -> Vec<C64> {
    // Gram-Schmidt the span first
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in span {
        let mut w: Vec<C64> = v.components().to_vec();
        for b in &basis {
            let c = inner(&w, b);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= bi * c;
            }
        }
        let nrm = norm(&w);
        if nrm > 1e-10 {
            for wi in w.iter_mut() {
                *wi /= nrm;
            }
            basis.push(w);
        }
    }
    let mut out = vec![C64::new(0.0, 0.0); x.dim()];
    for b in &basis {
        let c = inner(x.components(), b);
        for (oi, bi) in out.iter_mut().zip(b) {
            *oi += bi * c;
        }
    }
    out
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
    fn boundary_preimage_of_dominant_eigenvalue() {
        let a = ComplexSquareMatrix::diagonal(&[c(2.0, 0.0), c(-1.0, 0.0)]);
        let pre = boundary_preimages(&a, 0.0, 1e-8).unwrap();
        assert_eq!(pre.len(), 1);
        assert!((pre[0].achieved - c(2.0, 0.0)).norm() < 1e-12);
        assert!((pre[0].x.components()[0].norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn flat_angle_returns_both_endpoints() {
        let a = ComplexSquareMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0)]);
        let pre = boundary_preimages(&a, std::f64::consts::FRAC_PI_4, 1e-8).unwrap();
        assert_eq!(pre.len(), 2);
        let mut values: Vec<C64> = pre.iter().map(|p| p.achieved).collect();
        values.sort_by(|a, b| a.re.partial_cmp(&b.re).expect("finite"));
        assert!((values[0] - c(0.0, 1.0)).norm() < 1e-10);
        assert!((values[1] - c(1.0, 0.0)).norm() < 1e-10);
        assert_eq!(pre[0].span_projector_rank, 2);
    }

    #[test]
    fn flat_sweep_stays_on_support_line() {
        let a = ComplexSquareMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0)]);
        let sweep = flat_sweep(&a, std::f64::consts::FRAC_PI_4, 1e-8, 16).unwrap();
        assert!(sweep.len() > 2);
        let phase = Complex::from_polar(1.0, -std::f64::consts::FRAC_PI_4);
        let mu = std::f64::consts::FRAC_1_SQRT_2;
        for p in &sweep {
            assert!(((phase * p.achieved).re - mu).abs() < 1e-9);
        }
    }

    #[test]
    fn solve_2x2_nilpotent_examples() {
        let b = nilpotent2();
        let u = solve_2x2(&b, c(0.5, 0.0), 1e-10).unwrap();
        let f = quadratic_form(&b, u.components());
        assert!((f - c(0.5, 0.0)).norm() <= 1e-10);
        // u = (cos s, sin s) with f = sin(2s)/2 = 1/4 at s = π/12
        let u = solve_2x2(&b, c(0.25, 0.0), 1e-10).unwrap();
        let f = quadratic_form(&b, u.components());
        assert!((f - c(0.25, 0.0)).norm() <= 1e-10);
        let s = u.components()[1].norm().asin();
        assert!((s - std::f64::consts::PI / 12.0).abs() < 1e-5
            || (s - (std::f64::consts::FRAC_PI_2 - std::f64::consts::PI / 12.0)).abs() < 1e-5);
    }

    #[test]
    fn solve_2x2_convex_combination_of_diagonal() {
        let b = ComplexSquareMatrix::diagonal(&[c(0.0, 0.0), c(1.0, 0.0)]);
        let u = solve_2x2(&b, c(0.3, 0.0), 1e-10).unwrap();
        assert!((u.components()[0].norm_sqr() - 0.7).abs() < 1e-8);
        assert!((u.components()[1].norm_sqr() - 0.3).abs() < 1e-8);
    }

    #[test]
    fn solve_2x2_rejects_outside_targets() {
        let b = nilpotent2();
        assert!(matches!(
            solve_2x2(&b, c(0.7, 0.0), 1e-8),
            Err(Error::NotInRange { .. })
        ));
    }

    #[test]
    fn preimage_center_of_disk() {
        let a = nilpotent2();
        let model = boundary_scan(&a, 128).unwrap();
        let p = preimage(&a, &model, c(0.0, 0.0), 1e-10).unwrap();
        assert!(p.residual <= 1e-10);
        assert!((p.achieved - c(0.0, 0.0)).norm() <= 1e-10);
    }

    #[test]
    fn preimage_centroid_of_square() {
        let a = ComplexSquareMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]);
        let model = boundary_scan(&a, 256).unwrap();
        let p = preimage(&a, &model, c(0.0, 0.0), 1e-10).unwrap();
        assert!(p.residual <= 1e-10, "residual {}", p.residual);
    }

    #[test]
    fn preimage_rejects_outside_points() {
        let a = nilpotent2();
        let model = boundary_scan(&a, 128).unwrap();
        assert!(matches!(
            preimage(&a, &model, c(0.9, 0.0), 1e-10),
            Err(Error::OutsideRange)
        ));
    }

    #[test]
    fn preimage_round_trip_random_targets() {
        let a = ComplexSquareMatrix::from_rows(&[
            vec![c(0.1, 0.4), c(1.2, -0.3), c(0.0, 0.2)],
            vec![c(-0.7, 0.0), c(0.3, 0.3), c(0.5, -0.5)],
            vec![c(0.2, 0.9), c(-0.1, 0.1), c(-0.4, -0.2)],
        ]);
        let model = boundary_scan(&a, 128).unwrap();
        for (i, x) in crate::sampling::sample_sphere(3, 77, 100).iter().enumerate() {
            let z = quadratic_form(&a, x.components());
            let p = preimage(&a, &model, z, 1e-8)
                .unwrap_or_else(|e| panic!("target {i} failed: {e}"));
            assert!(p.residual <= 1e-8, "target {i} residual {}", p.residual);
        }
    }

    #[test]
    fn unique_boundary_preimage_up_to_phase() {
        // multiplicity-1 boundary points determine the preimage up to phase:
        // an independent bisection solve must land on the same vector
        let a = nilpotent2();
        for theta in [0.0, 0.7, 2.1, 4.4] {
            let pre = boundary_preimages(&a, theta, 1e-8).unwrap();
            assert_eq!(pre.len(), 1);
            let z = pre[0].achieved;
            let y = solve_2x2(&a, z, 1e-12).unwrap();
            assert!((quadratic_form(&a, y.components()) - z).norm() <= 1e-12);
            let overlap = inner(y.components(), pre[0].x.components()).norm();
            assert!(overlap >= 1.0 - 1e-4, "theta {theta} overlap {overlap}");
        }
    }

    #[test]
    fn projector_span_behaviour() {
        let e0 = UnitVector::standard_basis(3, 0);
        let e1 = UnitVector::standard_basis(3, 1);
        let x = UnitVector::normalized(vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let px = project_onto_span(&[e0, e1], &x);
        let expected = 1.0 / 3.0f64.sqrt();
        assert!((px[0].re - expected).abs() < 1e-12);
        assert!((px[1].re - expected).abs() < 1e-12);
        assert!(px[2].norm() < 1e-12);
    }
}
