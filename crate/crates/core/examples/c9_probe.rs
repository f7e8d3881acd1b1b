use nrange_core::geometry::{convex_hull, hausdorff_convex_regions, signed_distance_convex};
use nrange_core::matrix::{quadratic_form, ComplexSquareMatrix, C64};
use nrange_core::sampling::sample_sphere;
use nrange_core::support::boundary_scan;
use rand::{Rng, SeedableRng};

fn main() {
    let mut worst = 0.0f64;
    let mut worst_contain = 0.0f64;
    for seed in 0..20u64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed * 7 + 1);
        let entries: Vec<C64> = (0..9)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let a = ComplexSquareMatrix::new(3, entries).unwrap();
        let model = boundary_scan(&a, 256).unwrap();
        let cloud: Vec<C64> = sample_sphere(3, seed + 100, 100_000)
            .iter()
            .map(|x| quadratic_form(&a, x.components()))
            .collect();
        let cloud_hull = convex_hull(&cloud);
        let h = hausdorff_convex_regions(&model.hull, &cloud_hull);
        // containment: cloud inside scanned region with margin
        let outside = cloud_hull
            .iter()
            .map(|&q| (-signed_distance_convex(&model.hull, q)).max(0.0))
            .fold(0.0, f64::max);
        println!("seed {seed}: hausdorff {h:.4e} containment excess {outside:.3e}");
        worst = worst.max(h);
        worst_contain = worst_contain.max(outside);
    }
    println!("worst hausdorff {worst:.4e} worst containment excess {worst_contain:.4e}");
}
