use nrange_core::gallery::cjkls_block;
use nrange_core::geometry::{convex_hull, directed_hausdorff};
use nrange_core::matrix::{quadratic_form, C64};
use nrange_core::sampling::sample_sphere;
use nrange_core::support::boundary_scan;

fn main() {
    let op = cjkls_block(1.0, 1.0);
    let a = &op.matrix;
    let model = boundary_scan(a, 512).unwrap();
    let samples = sample_sphere(4, 12345, 100_000);
    let cloud: Vec<C64> = samples.iter().map(|x| quadratic_form(a, x.components())).collect();
    let cloud_hull = convex_hull(&cloud);
    println!("scan->cloud: {:.4e}", directed_hausdorff(&model.hull, &cloud_hull));
    println!("cloud->scan: {:.4e}", directed_hausdorff(&cloud_hull, &model.hull));
    println!("region hausdorff 1e5: {:.4e}", nrange_core::geometry::hausdorff_convex_regions(&model.hull, &cloud_hull));
    let samples6 = sample_sphere(4, 999, 4_000_000);
    let cloud6: Vec<C64> = samples6.iter().map(|x| quadratic_form(a, x.components())).collect();
    let cloud6_hull = convex_hull(&cloud6);
    println!("region hausdorff 4e6: {:.4e}", nrange_core::geometry::hausdorff_convex_regions(&model.hull, &cloud6_hull));
    // which scan-hull vertices are far from the cloud hull?
    for v in &model.hull {
        let d = cloud_hull.iter().map(|&q| (v - q).norm()).fold(f64::INFINITY, f64::min);
        if d > 0.2 {
            println!("scan vertex {:.4}+{:.4}i is {:.3} from cloud", v.re, v.im, d);
        }
    }
    println!("scan hull size {} cloud hull size {}", model.hull.len(), cloud_hull.len());
    let top_scan = model.hull.iter().map(|z| z.im).fold(f64::NEG_INFINITY, f64::max);
    let top_cloud = cloud_hull.iter().map(|z| z.im).fold(f64::NEG_INFINITY, f64::max);
    println!("max Im scan {:.4} cloud {:.4}", top_scan, top_cloud);
    let re_scan = model.hull.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let re_cloud = cloud_hull.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    println!("max Re scan {:.4} cloud {:.4}", re_scan, re_cloud);
    // offending cloud-hull vertices
    use nrange_core::geometry::signed_distance_convex;
    for q in &cloud_hull {
        let sd = signed_distance_convex(&model.hull, *q);
        if sd < -0.05 {
            println!("cloud vertex {:.4}+{:.4}i outside scan by {:.4}", q.re, q.im, -sd);
        }
    }
    // support values around theta = pi/2 .. 3pi/2 (left side)
    for k in (0..512).step_by(16) {
        let s = &model.samples[k];
        if s.theta > 1.5 && s.theta < 4.8 {
            println!("theta {:.4}: mu {:.5}", s.theta, s.mu);
        }
    }
}
// appended second stage
