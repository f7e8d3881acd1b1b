//! Seeded sampling on the complex unit sphere and on spherical caps.
//!
//! All randomness flows through `ChaCha8Rng` seeded by the caller, so every
//! sample stream is reproducible across runs and platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{norm, UnitVector, C64};

/// Standard normal pair via Box-Muller; avoids ln(0) by nudging u1 off zero.
fn normal_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen::<f64>();
    let r = (-2.0 * u1.ln()).sqrt();
    let t = 2.0 * std::f64::consts::PI * u2;
    (r * t.cos(), r * t.sin())
}

fn gaussian_vector(dim: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    (0..dim)
        .map(|_| {
            let (re, im) = normal_pair(rng);
            C64::new(re, im)
        })
        .collect()
}

/// `count` i.i.d. uniform samples on the complex unit sphere in dimension `dim`.
pub fn sample_sphere(dim: usize, seed: u64, count: usize) -> Vec<UnitVector> {
    assert!(dim >= 1, "dimension must be >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let g = gaussian_vector(dim, &mut rng);
        if let Ok(v) = UnitVector::normalized(g) {
            out.push(v);
        }
    }
    out
}

/// `count` samples from the cap {y on the sphere : ‖y − x‖ < ε}, by
/// perturb-and-renormalize rejection. Outputs satisfy the bound strictly.
///
/// The perturbation scale starts at ε and halves after every 64 consecutive
/// rejections, so the loop terminates: as the scale shrinks, the renormalized
/// sample tends to x itself, which is admissible.
pub fn sample_cap(x: &UnitVector, epsilon: f64, seed: u64, count: usize) -> Vec<UnitVector> {
    assert!(epsilon > 0.0 && epsilon <= 2.0, "epsilon must lie in (0, 2]");
    let dim = x.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut scale = epsilon;
        let mut failures = 0u32;
        loop {
            let g = gaussian_vector(dim, &mut rng);
            let perturbed: Vec<C64> = x
                .components()
                .iter()
                .zip(&g)
                .map(|(xi, gi)| xi + gi * scale)
                .collect();
            if let Ok(y) = UnitVector::normalized(perturbed) {
                let dist: f64 = chord_distance(x, &y);
                if dist < epsilon {
                    out.push(y);
                    break;
                }
            }
            failures += 1;
            if failures % 64 == 0 {
                scale *= 0.5;
            }
        }
    }
    out
}

/// ‖x − y‖ on the embedding space.
pub fn chord_distance(x: &UnitVector, y: &UnitVector) -> f64 {
    let diff: Vec<C64> = x
        .components()
        .iter()
        .zip(y.components())
        .map(|(a, b)| a - b)
        .collect();
    norm(&diff)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim_one_gives_pure_phases() {
        let samples = sample_sphere(1, 3, 3);
        for v in &samples {
            assert!((v.components()[0].norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn sphere_samples_are_unit_norm() {
        for v in sample_sphere(4, 42, 1000) {
            assert!(v.norm_defect() <= 1e-12);
        }
    }

    #[test]
    fn sphere_sampling_is_deterministic() {
        let a = sample_sphere(3, 99, 10);
        let b = sample_sphere(3, 99, 10);
        assert_eq!(a, b);
    }

    #[test]
    fn uniform_moment_first_coordinate() {
        // E|x₁|² = 1/3 on the complex sphere in dimension 3
        let samples = sample_sphere(3, 7, 10_000);
        let mean: f64 = samples
            .iter()
            .map(|v| v.components()[0].norm_sqr())
            .sum::<f64>()
            / samples.len() as f64;
        assert!((mean - 1.0 / 3.0).abs() < 3e-2, "mean {mean}");
    }

    #[test]
    fn cap_epsilon_two_accepts_everything() {
        let x = UnitVector::standard_basis(3, 1);
        let samples = sample_cap(&x, 2.0, 5, 200);
        assert_eq!(samples.len(), 200);
        for y in &samples {
            assert!(chord_distance(&x, y) < 2.0);
        }
    }

    #[test]
    fn cap_bound_is_strict() {
        let x = UnitVector::standard_basis(2, 0);
        for y in sample_cap(&x, 0.1, 11, 100) {
            assert!(chord_distance(&x, &y) < 0.1);
        }
    }

    #[test]
    fn cap_sampler_reaches_the_rim() {
        let x = UnitVector::standard_basis(2, 0);
        let samples = sample_cap(&x, 0.5, 13, 10_000);
        let max = samples
            .iter()
            .map(|y| chord_distance(&x, y))
            .fold(0.0f64, f64::max);
        assert!((0.45..0.5).contains(&max), "max chord distance {max}");
    }
}
