use nrange_core::curves::{curves_through, track_branches};
use nrange_core::gallery::cjkls_block;
use nrange_core::geometry::signed_distance_convex;
use nrange_core::matrix::{quadratic_form, C64};
use nrange_core::sampling::sample_sphere;
use nrange_core::support::{boundary_scan, hull_contains, Location};

const TAU: f64 = 2.0 * std::f64::consts::PI;

fn main() {
    let op = cjkls_block(1.0, 1.0);
    let a = &op.matrix;
    let model = boundary_scan(a, 512).unwrap();
    println!("degenerate: {}", model.degenerate);
    println!("flats: {}", model.flats.len());
    for f in &model.flats {
        println!(
            "  flat at theta {:.4}: {:.4}+{:.4}i  to {:.4}+{:.4}i",
            f.theta, f.endpoints.0.re, f.endpoints.0.im, f.endpoints.1.re, f.endpoints.1.im
        );
    }
    println!("corners: {}", model.corners.len());
    for c in &model.corners {
        println!("  corner z = {:.6}+{:.6}i over thetas [{:.4},{:.4}]", c.z.re, c.z.im, c.theta_interval.0, c.theta_interval.1);
    }
    println!("convexity defect: {:.3e}", model.convexity_defect);

    // is 0 on the boundary?
    let sd = signed_distance_convex(&model.hull, C64::new(0.0, 0.0));
    println!("signed distance of 0 from hull: {:.3e}", sd);
    println!("hull_contains(0): {:?}", hull_contains(&model, C64::new(0.0, 0.0), 1e-6));

    // min Re over sampled boundary
    let min_re = model.points.iter().map(|p| p.z.re).fold(f64::INFINITY, f64::min);
    println!("min Re over boundary: {:.3e}", min_re);

    // conjugation symmetry of the scanned boundary
    let zs: Vec<C64> = model.points.iter().map(|p| p.z).collect();
    let conj: Vec<C64> = zs.iter().map(|z| z.conj()).collect();
    println!("conj symmetry hausdorff: {:.3e}", nrange_core::geometry::hausdorff(&zs, &conj));

    // brute force hull vs scan
    let samples = sample_sphere(4, 12345, 100_000);
    let cloud: Vec<C64> = samples.iter().map(|x| quadratic_form(a, x.components())).collect();
    let cloud_hull = nrange_core::geometry::convex_hull(&cloud);
    println!("hausdorff(scan hull, cloud hull): {:.3e}", nrange_core::geometry::hausdorff(&model.hull, &cloud_hull));

    // curves through 0
    let family = track_branches(a, (0.0, TAU), 512, 4).unwrap();
    println!("crossings: {}", family.crossings.len());
    for tol in [1e-3, 1e-4, 1e-5] {
        let res = curves_through(&family, C64::new(0.0, 0.0), tol);
        println!("curves through 0 at tol {tol:.0e}: count {} passages {} ambiguous {}", res.count, res.passages.len(), res.ambiguous);
        for p in &res.passages {
            println!("   branch {} theta {:.4} point {:.5}+{:.5}i", p.branch_id, p.theta, p.point.re, p.point.im);
        }
    }

    // multiplicity at theta = pi
    let s = nrange_core::support::support_value(a, std::f64::consts::PI, 1e-7).unwrap();
    println!("support at pi: mu {:.6e} multiplicity {}", s.mu, s.multiplicity);

    // I - A containment for b=k=0.1
    let small = cjkls_block(0.1, 0.1);
    let id = nrange_core::ComplexSquareMatrix::identity(4);
    let shifted = id.sub(&small.matrix);
    let m2 = boundary_scan(&shifted, 512).unwrap();
    let mu_max = m2.samples.iter().map(|s| s.mu).fold(f64::NEG_INFINITY, f64::max);
    println!("max mu over theta for I-A(0.1,0.1): {:.8} (needs <= 1)", mu_max);

    // second singularity? where does boundary ownership switch?
    // print which block owns the maximal eigenvector at each of a few angles
    for k in (0..512).step_by(32) {
        let sm = &model.samples[k];
        let v = &sm.eigenbasis[0];
        let w1: f64 = v.components()[..2].iter().map(|z| z.norm_sqr()).sum();
        println!("theta {:.4}: mult {} block1 weight {:.3}", sm.theta, sm.multiplicity, w1);
    }
}
