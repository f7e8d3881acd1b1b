use nrange_core::curves::track_branches;
use nrange_core::geometry::{convex_hull, hausdorff_convex_regions, signed_distance_convex};
use nrange_core::matrix::{quadratic_form, ComplexSquareMatrix, C64};
use nrange_core::sampling::sample_sphere;
use nrange_core::support::boundary_scan;
use rand::{Rng, SeedableRng};

const TAU: f64 = 2.0 * std::f64::consts::PI;

fn random_unit_matrix(dim: usize, seed: u64) -> ComplexSquareMatrix {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let entries: Vec<C64> = (0..dim * dim)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let a = ComplexSquareMatrix::new(dim, entries).unwrap();
    a.scale(C64::new(1.0 / a.frobenius_norm(), 0.0))
}

fn main() {
    let mut worst_h = 0.0f64;
    let mut worst_contain = 0.0f64;
    let mut worst_order = f64::INFINITY;
    for seed in 0..20u64 {
        let a = random_unit_matrix(3, seed * 7 + 1);
        let model = boundary_scan(&a, 512).unwrap();
        let cloud: Vec<C64> = sample_sphere(3, seed + 100, 100_000)
            .iter()
            .map(|x| quadratic_form(&a, x.components()))
            .collect();
        let cloud_hull = convex_hull(&cloud);
        let h = hausdorff_convex_regions(&model.hull, &cloud_hull);
        let outside = cloud_hull
            .iter()
            .map(|&q| (-signed_distance_convex(&model.hull, q)).max(0.0))
            .fold(0.0, f64::max);
        worst_h = worst_h.max(h);
        worst_contain = worst_contain.max(outside);

        // FD order on the top branch, excluding small eigen-gap windows
        let order = fd_order(&a);
        worst_order = worst_order.min(order);
        println!("seed {seed}: hausdorff {h:.4e} contain {outside:.3e} order {order:.3}");
    }
    println!("worst hausdorff {worst_h:.4e} contain {worst_contain:.4e} min order {worst_order:.3}");
}

fn fd_order(a: &ComplexSquareMatrix) -> f64 {
    let err_at = |grid: usize| -> f64 {
        let family = track_branches(a, (0.0, TAU), grid, 2).unwrap();
        let h = family.grid_step;
        let mut worst = 0.0f64;
        for b in &family.branches {
            for k in 1..b.len().saturating_sub(1) {
                let fd = (b.lambdas[k + 1] - b.lambdas[k - 1]) / (2.0 * h);
                worst = worst.max((fd - b.slopes[k]).abs());
            }
        }
        worst
    };
    let e1 = err_at(256);
    let e2 = err_at(512);
    (e1 / e2).log2()
}
