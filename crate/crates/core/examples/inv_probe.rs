use nrange_core::inverse::{preimage, solve_2x2};
use nrange_core::matrix::{quadratic_form, ComplexSquareMatrix, C64};
use nrange_core::support::boundary_scan;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn main() {
    let a = ComplexSquareMatrix::from_rows(&[
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0)],
    ]);
    let model = boundary_scan(&a, 128).unwrap();
    match preimage(&a, &model, c(0.0, 0.0), 1e-10) {
        Ok(p) => println!(
            "preimage ok: residual {:.3e} achieved {:.3e}+{:.3e}i construction {:?}",
            p.residual, p.achieved.re, p.achieved.im, p.construction
        ),
        Err(e) => println!("preimage error: {e}"),
    }
    // manual chord reproduction
    use nrange_core::matrix::{compress, inner, norm as vnorm, UnitVector};
    use nrange_core::support::{supporting_angle, ray_exit_hull};
    let z = c(0.0, 0.0);
    let (theta_hat, _) = supporting_angle(&a, &model, z).unwrap();
    println!("theta_hat {:.6}", theta_hat);
    let dir = C64::from_polar(1.0, theta_hat + std::f64::consts::FRAC_PI_2);
    let wp = ray_exit_hull(&model.hull, z, dir).unwrap();
    let wm = ray_exit_hull(&model.hull, z, -dir).unwrap();
    println!("wp {:.6}+{:.6}i wm {:.6}+{:.6}i", wp.re, wp.im, wm.re, wm.im);
    let (tp, sp) = supporting_angle(&a, &model, wp).unwrap();
    let (tm, sm) = supporting_angle(&a, &model, wm).unwrap();
    println!("support angles {:.8} {:.8} mults {} {}", tp, tm, sp.multiplicity, sm.multiplicity);
    let x1 = &sp.eigenbasis[0];
    let x2 = &sm.eigenbasis[0];
    println!("f(x1) {:?} f(x2) {:?}", quadratic_form(&a, x1.components()), quadratic_form(&a, x2.components()));
    let b1 = x1.clone();
    let pr = inner(x2.components(), b1.components());
    let raw: Vec<C64> = x2.components().iter().zip(b1.components()).map(|(v, b)| v - b * pr).collect();
    let b2 = UnitVector::normalized(raw).unwrap();
    let small = compress(&a, &[b1.clone(), b2.clone()]).unwrap();
    println!("small = [{:?} {:?}; {:?} {:?}]", small[(0,0)], small[(0,1)], small[(1,0)], small[(1,1)]);
    let u = solve_2x2(&small, z, 1e-10).unwrap();
    let inner_f = quadratic_form(&small, u.components());
    println!("u*Bu = {:.3e}+{:.3e}i  dist {:.3e}", inner_f.re, inner_f.im, (inner_f - z).norm());
    let lifted: Vec<C64> = b1.components().iter().zip(b2.components()).map(|(p, q)| p * u.components()[0] + q * u.components()[1]).collect();
    println!("lift norm {:.3e}", vnorm(&lifted));
    let xx = UnitVector::normalized(lifted).unwrap();
    let ach = quadratic_form(&a, xx.components());
    println!("f_A(lift) = {:.3e}+{:.3e}i", ach.re, ach.im);

    // direct 2x2 solve at center
    let u = solve_2x2(&a, c(0.0, 0.0), 1e-10);
    match u {
        Ok(u) => {
            let f = quadratic_form(&a, u.components());
            println!("solve_2x2 direct: |f| = {:.3e}", f.norm());
        }
        Err(e) => println!("solve_2x2 error: {e}"),
    }
}
// extended diagnostics appended at build time
