use nalgebra::DMatrix;
use num_complex::Complex;

type C64 = Complex<f64>;

fn main() {
    // deterministic pseudo-random Hermitian matrix
    let n = 129usize;
    let mut state = 0x2545F4914F6CDD1Du64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let mut m = DMatrix::<C64>::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = C64::new(next(), if i == j { 0.0 } else { next() });
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    let t0 = std::time::Instant::now();
    let reps = 8;
    let mut eig = None;
    for _ in 0..reps {
        eig = Some(nalgebra::SymmetricEigen::new(m.clone()));
    }
    let dt = t0.elapsed().as_secs_f64() / reps as f64;
    let eig = eig.unwrap();
    // residual check ||H v - lambda v||
    let mut worst = 0.0f64;
    for k in 0..n {
        let v = eig.eigenvectors.column(k);
        let hv = &m * v;
        let mut r = 0.0;
        for i in 0..n {
            r += (hv[i] - v[i] * C64::new(eig.eigenvalues[k], 0.0)).norm_sqr();
        }
        worst = worst.max(r.sqrt());
    }
    // orthonormality
    let mut gram_dev = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let mut g = C64::new(0.0, 0.0);
            for i in 0..n {
                g += eig.eigenvectors[(i, a)].conj() * eig.eigenvectors[(i, b)];
            }
            let target = if a == b { 1.0 } else { 0.0 };
            gram_dev = gram_dev.max((g - C64::new(target, 0.0)).norm());
        }
    }
    println!("dim {n}: {dt:.4} s/solve, worst residual {worst:.3e}, gram dev {gram_dev:.3e}");
}
