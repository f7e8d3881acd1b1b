//! Gallery of benchmark operators built as finite sections with analytic
//! metadata: exact eigenvalue formulas, declared essential data, and known
//! singular points, used as oracles by the rest of the crate.

use num_complex::Complex;

use crate::matrix::{ComplexSquareMatrix, C64};

const PI: f64 = std::f64::consts::PI;

/// Closed-form support oracle μ(θ).
#[derive(Debug, Clone, PartialEq)]
pub enum SupportOracle {
    /// Top eigenvalue of the Volterra angle family.
    VolterraTop,
    /// Constant numerical radius r (disk centered at 0).
    ConstantRadius(f64),
    /// μ(θ) = max_j Re(e^{-iθ} z_j) over declared normal eigenvalues.
    NormalEigenvalues(Vec<C64>),
}

impl SupportOracle {
    pub fn mu(&self, theta: f64) -> f64 {
        match self {
            SupportOracle::VolterraTop => (-200..=200)
                .map(|n| volterra_lambda(n, theta))
                .fold(f64::NEG_INFINITY, f64::max),
            SupportOracle::ConstantRadius(r) => *r,
            SupportOracle::NormalEigenvalues(zs) => zs
                .iter()
                .map(|z| (Complex::from_polar(1.0, -theta) * z).re)
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

/// Closed-form eigenvalue-branch oracle λ_n(θ).
#[derive(Debug, Clone, PartialEq)]
pub enum BranchOracle {
    /// λ_n(θ) = sin θ / (2θ + 2nπ), n ∈ ℤ.
    VolterraModes,
}

impl BranchOracle {
    pub fn lambda(&self, n: i64, theta: f64) -> f64 {
        match self {
            BranchOracle::VolterraModes => volterra_lambda(n, theta),
        }
    }
}

pub fn volterra_lambda(n: i64, theta: f64) -> f64 {
    theta.sin() / (2.0 * theta + 2.0 * n as f64 * PI)
}

/// Declared analytic facts about a gallery operator. Finite sections cannot
/// compute essential data; whatever is known about the underlying operator
/// is declared here and trusted downstream.
#[derive(Debug, Clone, Default)]
pub struct GalleryMetadata {
    /// Declared essential numerical range as a finite point set.
    /// `Some(vec![])` means declared empty; `None` means not declared.
    pub essential_numerical_range: Option<Vec<C64>>,
    /// Points declared to be limits of extreme points of the full operator.
    pub declared_limit_extreme_points: Vec<C64>,
    /// Boundary points with a declared unique preimage (hence a single
    /// critical curve) even where the finite section cannot certify it.
    pub declared_unique_preimage_points: Vec<C64>,
    /// Boundary points where weak continuity is expected to fail.
    pub expected_fails_weak: Vec<C64>,
    pub exact_support_oracle: Option<SupportOracle>,
    pub exact_branch_oracle: Option<BranchOracle>,
    pub notes: String,
}

#[derive(Debug, Clone)]
pub struct GalleryOperator {
    pub matrix: ComplexSquareMatrix,
    pub name: String,
    pub metadata: GalleryMetadata,
}

/// Finite section of the Volterra operator (Vf)(t) = ∫₀ᵗ f(s) ds on the
/// Fourier basis e_n(t) = e^{2πint}, n = −N..N (dimension 2N+1).
///
/// All entries are closed-form: V[0,0] = ½, V[m,0] = V[0,m] = i/(2πm) and
/// V[m,m] = −i/(2πm) for m ≠ 0, everything else zero. In this basis the real
/// part is exactly the rank-one projection ½·e₀e₀*.
pub fn volterra_section(n_modes: usize) -> GalleryOperator {
    assert!(n_modes >= 4, "need at least 4 Fourier modes");
    let nn = n_modes as i64;
    let dim = 2 * n_modes + 1;
    let idx = |n: i64| (n + nn) as usize;
    let mut m = ComplexSquareMatrix::zeros(dim);
    m[(idx(0), idx(0))] = C64::new(0.5, 0.0);
    for n in -nn..=nn {
        if n == 0 {
            continue;
        }
        let coupling = C64::new(0.0, 1.0 / (2.0 * PI * n as f64));
        m[(idx(n), idx(0))] = coupling;
        m[(idx(0), idx(n))] = coupling;
        m[(idx(n), idx(n))] = -coupling;
    }
    let flat_end = 1.0 / (2.0 * PI);
    GalleryOperator {
        matrix: m,
        name: format!("volterra-{n_modes}"),
        metadata: GalleryMetadata {
            essential_numerical_range: Some(vec![C64::new(0.0, 0.0)]),
            declared_limit_extreme_points: vec![],
            declared_unique_preimage_points: vec![C64::new(0.0, flat_end), C64::new(0.0, -flat_end)],
            expected_fails_weak: vec![],
            exact_support_oracle: Some(SupportOracle::VolterraTop),
            exact_branch_oracle: Some(BranchOracle::VolterraModes),
            notes: "boundary has a flat portion on the imaginary axis with endpoints ±i/(2π); \
                    the inverse map is strongly continuous everywhere including both endpoints"
                .into(),
        },
    }
}

/// Weighted shift (Ax)_{k+1} = α_k x_k. Cyclic shifts wrap the last weight
/// around to the first coordinate; non-cyclic shifts act on dimension
/// `weights.len() + 1`.
pub fn weighted_shift(weights: &[C64], cyclic: bool) -> GalleryOperator {
    assert!(!weights.is_empty());
    let dim = if cyclic { weights.len() } else { weights.len() + 1 };
    let mut m = ComplexSquareMatrix::zeros(dim);
    for (k, &w) in weights.iter().enumerate() {
        m[((k + 1) % dim, k)] = w;
    }
    let constant = weights.iter().all(|w| (w - weights[0]).norm() < 1e-15);
    let support = if constant && !cyclic {
        // Jordan-type shift: the range is a closed disk of radius
        // |w|·cos(π/(dim+1))
        Some(SupportOracle::ConstantRadius(
            weights[0].norm() * (PI / (dim as f64 + 1.0)).cos(),
        ))
    } else if constant && cyclic {
        // circulant: normal with eigenvalues on a scaled circle
        let root = C64::from_polar(1.0, 2.0 * PI / dim as f64);
        let scale = weights[0];
        Some(SupportOracle::NormalEigenvalues(
            (0..dim).map(|j| scale * root.powu(j as u32)).collect(),
        ))
    } else {
        None
    };
    GalleryOperator {
        matrix: m,
        name: format!("shift-{}{}", dim, if cyclic { "-cyclic" } else { "" }),
        metadata: GalleryMetadata {
            essential_numerical_range: Some(vec![]),
            exact_support_oracle: support,
            notes: "numerical range of a weighted shift is a disk centered at 0; \
                    conjugation by diag(τ^k) rotates the operator, so the range is \
                    rotation invariant"
                .into(),
            ..Default::default()
        },
    }
}

/// Diagonal normal operator section with declared limit extreme points of
/// the full operator.
pub fn normal_diag(values: &[C64], declared_limits: &[C64]) -> GalleryOperator {
    GalleryOperator {
        matrix: ComplexSquareMatrix::diagonal(values),
        name: format!("normal-diag-{}", values.len()),
        metadata: GalleryMetadata {
            essential_numerical_range: None,
            declared_limit_extreme_points: declared_limits.to_vec(),
            exact_support_oracle: Some(SupportOracle::NormalEigenvalues(values.to_vec())),
            notes: "normal diagonal section; range is the convex hull of the entries".into(),
            ..Default::default()
        },
    }
}

/// 4×4 operator whose numerical range is the convex hull of two conjugate
/// ellipses, both tangent to the imaginary axis at 0: the boundary switches
/// analytic curves at 0 and weak inverse continuity fails there.
///
/// Blocks are [[0, ik], [ik, b(1+i)]] and [[0, ik], [ik, b(1-i)]] with
/// b, k > 0. Each block has real part diag(0, b) ⪰ 0, so its range lies in
/// the closed right half-plane and touches the imaginary axis exactly at the
/// image of the first basis vector, which is 0.
pub fn cjkls_block(b: f64, k: f64) -> GalleryOperator {
    assert!(b > 0.0 && k > 0.0);
    let z = C64::new(0.0, 0.0);
    let ik = C64::new(0.0, k);
    let upper = C64::new(b, b);
    let lower = C64::new(b, -b);
    let m = ComplexSquareMatrix::from_rows(&[
        vec![z, ik, z, z],
        vec![ik, upper, z, z],
        vec![z, z, z, ik],
        vec![z, z, ik, lower],
    ]);
    GalleryOperator {
        matrix: m,
        name: format!("two-ellipse-{b}-{k}"),
        metadata: GalleryMetadata {
            essential_numerical_range: Some(vec![]),
            expected_fails_weak: vec![C64::new(0.0, 0.0)],
            notes: "convex hull of two conjugate ellipses centered (b±ib)/2, tangent to \
                    the imaginary axis at 0; two distinct critical curves meet at 0 with \
                    equal value and slope, so curve counting needs the subspace test"
                .into(),
            ..Default::default()
        },
    }
}

/// Block-diagonal truncation of the compact operator built from scaled,
/// rotated copies of the two-ellipse example: blocks
/// e^{iπ/j}(I₄ − A/j) − I₄ for j = 1..m with A = cjkls_block(0.1, 0.1).
/// Every block range sits inside the disk {|z+1| ≤ 1} and touches its
/// boundary exactly at e^{iπ/j} − 1, where weak continuity fails.
pub fn direct_sum_scaled(terms: usize) -> GalleryOperator {
    assert!(terms >= 1);
    let base = cjkls_block(0.1, 0.1).matrix;
    let dim = 4 * terms;
    let mut m = ComplexSquareMatrix::zeros(dim);
    let mut expected = Vec::with_capacity(terms);
    for j in 1..=terms {
        let phase = C64::from_polar(1.0, PI / j as f64);
        let offset = 4 * (j - 1);
        for r in 0..4 {
            for c in 0..4 {
                let block = (if r == c { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }
                    - base[(r, c)] / j as f64)
                    * phase;
                m[(offset + r, offset + c)] = block - if r == c { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
            }
        }
        expected.push(phase - C64::new(1.0, 0.0));
    }
    GalleryOperator {
        matrix: m,
        name: format!("scaled-sum-{terms}"),
        metadata: GalleryMetadata {
            essential_numerical_range: Some(vec![]),
            expected_fails_weak: expected,
            notes: "truncation of a compact operator with one weak-continuity failure \
                    per block, at e^{iπ/j} − 1 on the circle |z+1| = 1"
                .into(),
            ..Default::default()
        },
    }
}

/// Analytic boundary of the numerical range of a 2×2 matrix: an ellipse with
/// foci at the eigenvalues and minor axis √(‖B‖_F² − |λ₁|² − |λ₂|²).
pub fn two_by_two_range_boundary(b: &ComplexSquareMatrix, count: usize) -> Vec<C64> {
    assert_eq!(b.dim(), 2);
    let tr = b.trace();
    let det = b[(0, 0)] * b[(1, 1)] - b[(0, 1)] * b[(1, 0)];
    let center = tr * 0.5;
    let disc = (center * center - det).sqrt();
    let lam1 = center + disc;
    let lam2 = center - disc;
    let frob2 = b.frobenius_norm().powi(2);
    let minor = (frob2 - lam1.norm_sqr() - lam2.norm_sqr()).max(0.0).sqrt();
    let c_foc = (lam1 - lam2).norm() * 0.5;
    let a_semi = (c_foc * c_foc + minor * minor / 4.0).sqrt();
    let axis = if c_foc > 1e-15 {
        (lam1 - lam2) / (2.0 * c_foc)
    } else {
        C64::new(1.0, 0.0)
    };
    (0..count)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / count as f64;
            center + axis * (a_semi * t.cos()) + axis * C64::new(0.0, 1.0) * (minor / 2.0 * t.sin())
        })
        .collect()
}

/// Names and constructors for the CLI `gallery` commands.
pub fn builtin_names() -> Vec<&'static str> {
    vec!["volterra", "shift", "cyclic-shift", "normal-limits", "normal-roots", "two-ellipse", "scaled-sum"]
}

/// Build a named gallery operator with a numeric parameter list.
pub fn build_named(name: &str, params: &[f64]) -> Option<GalleryOperator> {
    match name {
        "volterra" => {
            let n = params.first().copied().unwrap_or(32.0) as usize;
            Some(volterra_section(n.max(4)))
        }
        "shift" => {
            let n = params.first().copied().unwrap_or(8.0).max(1.0) as usize;
            let w = params.get(1).copied().unwrap_or(1.0);
            Some(weighted_shift(&vec![C64::new(w, 0.0); n], false))
        }
        "cyclic-shift" => {
            let n = params.first().copied().unwrap_or(8.0).max(2.0) as usize;
            let w = params.get(1).copied().unwrap_or(1.0);
            Some(weighted_shift(&vec![C64::new(w, 0.0); n], true))
        }
        "normal-limits" => {
            let kmax = params.first().copied().unwrap_or(20.0).max(1.0) as i64;
            let mut values = vec![C64::new(0.0, 0.0)];
            for k in 1..=kmax {
                let kf = k as f64;
                values.push(C64::new(1.0 / kf, 1.0 / (kf * kf)));
                values.push(C64::new(-1.0 / kf, 1.0 / (kf * kf)));
            }
            Some(normal_diag(&values, &[C64::new(0.0, 0.0)]))
        }
        "normal-roots" => {
            let n = params.first().copied().unwrap_or(40.0).max(1.0) as u32;
            let tau = C64::from_polar(1.0, 1.0);
            let values: Vec<C64> = (1..=n).map(|k| tau.powu(k)).collect();
            Some(normal_diag(&values, &values.clone()))
        }
        "two-ellipse" => {
            let b = params.first().copied().unwrap_or(1.0);
            let k = params.get(1).copied().unwrap_or(1.0);
            Some(cjkls_block(b, k))
        }
        "scaled-sum" => {
            let m = params.first().copied().unwrap_or(3.0).max(1.0) as usize;
            Some(direct_sum_scaled(m))
        }
        _ => None,
    }
}
