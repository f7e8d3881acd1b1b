//! Dense complex square matrices, unit vectors, and the quadratic form
//! ⟨Ax, x⟩ that everything else in this crate is built on.

use num_complex::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Maximum allowed deviation of a `UnitVector` from unit norm.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Gram-matrix deviation above which a basis is rejected as non-orthonormal.
pub const BASIS_GRAM_TOL: f64 = 1e-8;

/// Which Hermitian part of `e^{-iθ}A` to extract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CartesianPart {
    Real,
    Imaginary,
}

/// Dense n×n complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSquareMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl ComplexSquareMatrix {
    /// Build from row-major entries. Rejects empty, non-square, or non-finite data.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("matrix dimension must be >= 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for dim {}, got {}",
                dim * dim,
                dim,
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![C64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    /// Convenience constructor from rows of (re, im) pairs; panics on bad shape.
    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must form a square matrix");
        let entries = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::new(dim, entries).expect("finite square matrix")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Conjugate transpose A*.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix-vector product A x.
    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.dim);
        let n = self.dim;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..n {
                acc += self[(i, j)] * x[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max entrywise deviation from Hermitian symmetry, ‖A − A*‖_max.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..=i {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// ‖AA* − A*A‖_F, zero exactly for normal matrices.
    pub fn normality_defect(&self) -> f64 {
        let aadj = self.adjoint();
        self.matmul(&aadj).sub(&aadj.matmul(self)).frobenius_norm()
    }

    pub fn is_normal(&self) -> bool {
        let f = self.frobenius_norm();
        self.normality_defect() <= 1e-10 * f * f.max(1.0)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexSquareMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexSquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.dim + j]
    }
}

/// Unit vector on the complex sphere, carrying its measured norm defect.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVector {
    dim: usize,
    components: Vec<C64>,
    norm_defect: f64,
}

impl UnitVector {
    /// Accepts a vector already within `UNIT_NORM_TOL` of unit norm.
    pub fn try_new(components: Vec<C64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidInput("unit vector must have dim >= 1".into()));
        }
        if components.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("unit vector entries must be finite".into()));
        }
        let defect = (norm(&components) - 1.0).abs();
        if defect > UNIT_NORM_TOL {
            return Err(Error::InvalidInput(format!(
                "vector norm deviates from 1 by {defect:.3e}"
            )));
        }
        let dim = components.len();
        Ok(Self { dim, components, norm_defect: defect })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(components: Vec<C64>) -> Result<Self> {
        let n = norm(&components);
        if !n.is_finite() || n < 1e-300 {
            return Err(Error::InvalidInput("cannot normalize a (near-)zero vector".into()));
        }
        let scaled: Vec<C64> = components.into_iter().map(|z| z / n).collect();
        let defect = (norm(&scaled) - 1.0).abs();
        let dim = scaled.len();
        Ok(Self { dim, components: scaled, norm_defect: defect })
    }

    pub fn standard_basis(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut components = vec![C64::new(0.0, 0.0); dim];
        components[index] = C64::new(1.0, 0.0);
        Self { dim, components, norm_defect: 0.0 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[C64] {
        &self.components
    }

    pub fn norm_defect(&self) -> f64 {
        self.norm_defect
    }
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Inner product ⟨u, v⟩ = Σ u_i conj(v_i), linear in the first argument.
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

/// Hermitian part of `e^{-iθ}A`: ½(e^{-iθ}A + e^{iθ}A*) for `Real`,
/// (1/2i)(e^{-iθ}A − e^{iθ}A*) for `Imaginary`. Both are Hermitian by
/// construction, entrywise down to rounding.
pub fn cartesian_part(a: &ComplexSquareMatrix, theta: f64, which: CartesianPart) -> ComplexSquareMatrix {
    let n = a.dim();
    let phase = C64::from_polar(1.0, -theta);
    let mut out = ComplexSquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let fwd = phase * a[(i, j)];
            let bwd = (phase * a[(j, i)]).conj();
            out[(i, j)] = match which {
                CartesianPart::Real => (fwd + bwd) * 0.5,
                CartesianPart::Imaginary => (fwd - bwd) * C64::new(0.0, -0.5),
            };
        }
    }
    out
}

/// The numerical range map f_A(x) = ⟨Ax, x⟩.
pub fn evaluate_range_map(a: &ComplexSquareMatrix, x: &UnitVector) -> Result<C64> {
    if x.dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), actual: x.dim() });
    }
    Ok(quadratic_form(a, x.components()))
}

/// ⟨Ax, x⟩ for a raw coefficient slice (no unit-norm check).
pub fn quadratic_form(a: &ComplexSquareMatrix, x: &[C64]) -> C64 {
    let ax = a.apply(x);
    inner(&ax, x)
}

/// Compression of A onto an orthonormal set: entry (i, j) = ⟨A b_j, b_i⟩.
pub fn compress(a: &ComplexSquareMatrix, basis: &[UnitVector]) -> Result<ComplexSquareMatrix> {
    let k = basis.len();
    if k == 0 {
        return Err(Error::InvalidInput("compression basis must be nonempty".into()));
    }
    for b in basis {
        if b.dim() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), actual: b.dim() });
        }
    }
    let mut gram_dev = 0.0f64;
    for i in 0..k {
        for j in 0..=i {
            let g = inner(basis[i].components(), basis[j].components());
            let target = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
            gram_dev = gram_dev.max((g - target).norm());
        }
    }
    if gram_dev > BASIS_GRAM_TOL {
        return Err(Error::BasisNotOrthonormal { deviation: gram_dev });
    }
    let mut out = ComplexSquareMatrix::zeros(k);
    for j in 0..k {
        let abj = a.apply(basis[j].components());
        for i in 0..k {
            out[(i, j)] = inner(&abj, basis[i].components());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn nilpotent2() -> ComplexSquareMatrix {
        ComplexSquareMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
    }

    #[test]
    fn rejects_non_square_and_non_finite() {
        assert!(ComplexSquareMatrix::new(2, vec![c(0.0, 0.0); 3]).is_err());
        assert!(ComplexSquareMatrix::new(0, vec![]).is_err());
        assert!(ComplexSquareMatrix::new(1, vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn cartesian_part_identity_at_zero() {
        let id = ComplexSquareMatrix::identity(2);
        let re = cartesian_part(&id, 0.0, CartesianPart::Real);
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((re[(i, j)] - c(want, 0.0)).norm() == 0.0);
            }
        }
    }

    #[test]
    fn cartesian_part_nilpotent() {
        let re = cartesian_part(&nilpotent2(), 0.0, CartesianPart::Real);
        assert_eq!(re[(0, 1)], c(0.5, 0.0));
        assert_eq!(re[(1, 0)], c(0.5, 0.0));
        assert_eq!(re[(0, 0)], c(0.0, 0.0));
    }

    #[test]
    fn cartesian_parts_recombine_to_rotated_matrix() {
        // Re(e^{-iθ}A) + i Im(e^{-iθ}A) = e^{-iθ}A
        let a = ComplexSquareMatrix::from_rows(&[
            vec![c(0.3, -1.2), c(2.0, 0.7)],
            vec![c(-0.4, 0.1), c(1.5, 2.2)],
        ]);
        for &theta in &[0.0, 0.71, 2.5, 5.9] {
            let re = cartesian_part(&a, theta, CartesianPart::Real);
            let im = cartesian_part(&a, theta, CartesianPart::Imaginary);
            let recombined = re.add(&im.scale(c(0.0, 1.0)));
            let rotated = a.scale(C64::from_polar(1.0, -theta));
            let defect = recombined.sub(&rotated).frobenius_norm();
            assert!(defect <= 1e-13 * a.frobenius_norm(), "defect {defect:.3e}");
        }
    }

    #[test]
    fn cartesian_part_is_exactly_hermitian() {
        let a = ComplexSquareMatrix::from_rows(&[
            vec![c(0.3, -1.2), c(2.0, 0.7), c(0.1, 0.9)],
            vec![c(-0.4, 0.1), c(1.5, 2.2), c(-2.0, 0.3)],
            vec![c(0.7, 0.7), c(0.0, -1.0), c(0.2, 0.8)],
        ]);
        for &theta in &[0.37, 1.9, 4.4] {
            for which in [CartesianPart::Real, CartesianPart::Imaginary] {
                assert_eq!(cartesian_part(&a, theta, which).hermitian_defect(), 0.0);
            }
        }
    }

    #[test]
    fn derivative_of_real_part_is_imaginary_part() {
        // d/dθ Re(e^{-iθ}A) = Im(e^{-iθ}A), central difference h = 1e-5
        let a = ComplexSquareMatrix::from_rows(&[
            vec![c(0.3, -1.2), c(2.0, 0.7)],
            vec![c(-0.4, 0.1), c(1.5, 2.2)],
        ]);
        let h = 1e-5;
        for &theta in &[0.2, 1.3, 3.8] {
            let plus = cartesian_part(&a, theta + h, CartesianPart::Real);
            let minus = cartesian_part(&a, theta - h, CartesianPart::Real);
            let fd = plus.sub(&minus).scale(c(1.0 / (2.0 * h), 0.0));
            let im = cartesian_part(&a, theta, CartesianPart::Imaginary);
            let defect = fd.sub(&im).frobenius_norm();
            assert!(defect <= 1e-8 * a.frobenius_norm(), "defect {defect:.3e}");
        }
    }

    #[test]
    fn range_map_identity_and_nilpotent() {
        let id = ComplexSquareMatrix::identity(3);
        let x = UnitVector::normalized(vec![c(0.3, 0.4), c(-0.1, 0.8), c(0.2, -0.2)]).unwrap();
        let f = evaluate_range_map(&id, &x).unwrap();
        assert!((f - c(1.0, 0.0)).norm() < 1e-14);

        let half = std::f64::consts::FRAC_1_SQRT_2;
        let x = UnitVector::try_new(vec![c(half, 0.0), c(half, 0.0)]).unwrap();
        let f = evaluate_range_map(&nilpotent2(), &x).unwrap();
        assert!((f - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn range_map_rejects_dimension_mismatch() {
        let x = UnitVector::standard_basis(3, 0);
        assert!(matches!(
            evaluate_range_map(&nilpotent2(), &x),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn compress_full_standard_basis_is_identity_map() {
        let a = ComplexSquareMatrix::from_rows(&[
            vec![c(0.3, -1.2), c(2.0, 0.7)],
            vec![c(-0.4, 0.1), c(1.5, 2.2)],
        ]);
        let basis = [UnitVector::standard_basis(2, 0), UnitVector::standard_basis(2, 1)];
        let b = compress(&a, &basis).unwrap();
        assert_eq!(b, a);
    }

    #[test]
    fn compress_diagonal_subset() {
        let a = ComplexSquareMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let basis = [UnitVector::standard_basis(3, 0), UnitVector::standard_basis(3, 2)];
        let b = compress(&a, &basis).unwrap();
        assert_eq!(b[(0, 0)], c(1.0, 0.0));
        assert_eq!(b[(1, 1)], c(3.0, 0.0));
        assert_eq!(b[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn compress_rejects_skewed_basis() {
        let v = UnitVector::normalized(vec![c(1.0, 0.0), c(0.1, 0.0)]).unwrap();
        let e0 = UnitVector::standard_basis(2, 0);
        assert!(matches!(
            compress(&nilpotent2(), &[e0, v]),
            Err(Error::BasisNotOrthonormal { .. })
        ));
    }

    #[test]
    fn unit_vector_validation() {
        assert!(UnitVector::try_new(vec![c(0.9, 0.0)]).is_err());
        assert!(UnitVector::normalized(vec![c(0.0, 0.0)]).is_err());
        let v = UnitVector::normalized(vec![c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
        assert!(v.norm_defect() <= UNIT_NORM_TOL);
        assert!((v.components()[0].re - 0.6).abs() < 1e-15);
    }
}
