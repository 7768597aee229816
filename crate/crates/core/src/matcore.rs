//! Dense complex matrices sized for small quantum systems, with a cyclic
//! Jacobi eigensolver for the Hermitian case.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Relative off-diagonal Frobenius mass at which Jacobi sweeps stop.
pub const JACOBI_TOL: f64 = 1e-14;
/// Sweep cap for the Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Relative Hermiticity tolerance accepted by [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from separate real and imaginary row lists.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let dim = re.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if im.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: im.len(),
            });
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (r, i) in re.iter().zip(im) {
            if r.len() != dim || i.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.len().min(i.len()),
                });
            }
            data.extend(r.iter().zip(i).map(|(&a, &b)| C64::new(a, b)));
        }
        Self::from_vec(dim, data)
    }

    /// Splits into real and imaginary row lists.
    pub fn to_parts(&self) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let rows = |f: fn(&C64) -> f64| {
            self.data
                .chunks(self.dim)
                .map(|row| row.iter().map(f).collect())
                .collect()
        };
        (rows(|z| z.re), rows(|z| z.im))
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * m.dim + i] = C64::new(d, 0.0);
        }
        m
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        assert_eq!(u.len(), v.len(), "outer product needs equal lengths");
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    /// `|v⟩⟨v|`.
    pub fn projector(v: &[C64]) -> Self {
        Self::outer(v, v)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self.data[i * self.dim + j]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.data[j * self.dim + i].conj())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn diagonal_real(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.data[i * self.dim + i].re)
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn scale_complex(&self, k: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    /// `‖A − A†‖_F`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.data[i * n + j] - self.data[j * n + i].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        self.hermitian_deviation() <= rel_tol * self.frobenius_norm().max(1.0)
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| {
            (self.data[i * n + j] + self.data[j * n + i].conj()) * 0.5
        })
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        self.data
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `Tr(A·B)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * other.data[k * n + i];
            }
        }
        acc
    }

    /// `U·A·U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for row in self.data.chunks(self.dim) {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Which factor of a bipartite space a routine refers to. The tensor index
/// is `s·dim_a + a` (system-major).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    System,
    Ancilla,
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..na {
        for j in 0..na {
            let aij = a.data[i * na + j];
            if aij == ZERO {
                continue;
            }
            for k in 0..nb {
                for l in 0..nb {
                    out.data[(i * nb + k) * n + j * nb + l] = aij * b.data[k * nb + l];
                }
            }
        }
    }
    out
}

/// Kronecker product of two vectors.
pub fn kron_vec(u: &[C64], v: &[C64]) -> Vec<C64> {
    u.iter()
        .flat_map(|a| v.iter().map(move |b| a * b))
        .collect()
}

/// Partial trace over the factor that is not `keep`.
pub fn partial_trace(
    m: &ComplexMatrix,
    dim_s: usize,
    dim_a: usize,
    keep: Subsystem,
) -> Result<ComplexMatrix> {
    if dim_s == 0 || dim_a == 0 || m.dim != dim_s * dim_a {
        return Err(Error::DimensionMismatch {
            expected: dim_s * dim_a,
            found: m.dim,
        });
    }
    let n = m.dim;
    let out = match keep {
        Subsystem::System => ComplexMatrix::from_fn(dim_s, |s, t| {
            (0..dim_a)
                .map(|a| m.data[(s * dim_a + a) * n + t * dim_a + a])
                .sum()
        }),
        Subsystem::Ancilla => ComplexMatrix::from_fn(dim_a, |a, b| {
            (0..dim_s)
                .map(|s| m.data[(s * dim_a + a) * n + s * dim_a + b])
                .sum()
        }),
    };
    Ok(out)
}

/// Spectrum (ascending) and unitary eigenvector matrix (columns).
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V·diag(f(λ))·V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let fl: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fl[k] * v[(j, k)].conj()).sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|l| l)
    }
}

fn check_hermitian(a: &ComplexMatrix) -> Result<()> {
    let deviation = a.hermitian_deviation();
    if deviation > HERMITIAN_TOL * a.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    if a.data
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// Cyclic complex Jacobi on the Hermitian part of `a`. Returns the unsorted
/// diagonal and, if requested, the accumulated rotation.
fn jacobi(a: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = a.dim;
    let mut m = a.hermitian_part().data;
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    let threshold = JACOBI_TOL * a.frobenius_norm();

    let off_norm = |m: &[C64]| -> f64 {
        let mut acc = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    acc += m[p * n + q].norm_sqr();
                }
            }
        }
        acc.sqrt()
    };

    let mut converged = n == 1;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_norm(&m) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m[p * n + q];
                let abs = apq.norm();
                if abs == 0.0 {
                    continue;
                }
                let app = m[p * n + p].re;
                let aqq = m[q * n + q].re;
                let theta = (aqq - app) / (2.0 * abs);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let phase = apq / abs;
                // G = [[c, s], [-s·e^{-iα}, c·e^{-iα}]] on the (p, q) plane.
                let gqp = -phase.conj() * s;
                let gqq = phase.conj() * c;

                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = akp * c + akq * gqp;
                    m[k * n + q] = akp * s + akq * gqq;
                }
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = apk * c + aqk * gqp.conj();
                    m[q * n + k] = apk * s + aqk * gqq.conj();
                }
                m[p * n + q] = ZERO;
                m[q * n + p] = ZERO;
                m[p * n + p].im = 0.0;
                m[q * n + q].im = 0.0;

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v.data[k * n + p];
                        let vkq = v.data[k * n + q];
                        v.data[k * n + p] = vkp * c + vkq * gqp;
                        v.data[k * n + q] = vkp * s + vkq * gqq;
                    }
                }
            }
        }
    }
    if !converged && off_norm(&m) > threshold {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }
    let diag = (0..n).map(|i| m[i * n + i].re).collect();
    Ok((diag, v))
}

fn ascending_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j)));
    idx
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<EigenDecomposition> {
    check_hermitian(a)?;
    let (diag, vectors) = jacobi(a, true)?;
    let vectors = vectors.expect("vectors requested");
    let order = ascending_order(&diag);
    let n = a.dim;
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, j| vectors[(i, order[j])]);
    Ok(EigenDecomposition { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigvals(a: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(a)?;
    let (mut diag, _) = jacobi(a, false)?;
    diag.sort_by(f64::total_cmp);
    Ok(diag)
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in `[-1e-8, 0)` are clamped to zero.
pub fn psd_sqrt(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a)?;
    let min = eig.values.first().copied().unwrap_or(0.0);
    if min < -1e-8 {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    Ok(eig.map_spectrum(|l| l.max(0.0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_fn(2, |i, j| if i != j { ONE } else { ZERO })
    }

    /// Deterministic pseudo-random Hermitian matrix for unit tests.
    fn lcg_hermitian(n: usize, mut seed: u64) -> ComplexMatrix {
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let g = ComplexMatrix::from_fn(n, |_, _| c(next(), next()));
        (&g + &g.adjoint()).scale(0.5)
    }

    #[test]
    fn diagonal_input_sorts_and_swaps_columns() {
        let eig = hermitian_eig(&ComplexMatrix::from_real_diag(&[3.0, 1.0])).unwrap();
        assert_eq!(eig.values, vec![1.0, 3.0]);
        assert!((eig.vectors[(1, 0)].norm() - 1.0).abs() < 1e-15);
        assert!((eig.vectors[(0, 1)].norm() - 1.0).abs() < 1e-15);
        assert!(eig.vectors[(0, 0)].norm() < 1e-15);
    }

    #[test]
    fn pauli_x_eigenpairs() {
        let eig = hermitian_eig(&pauli_x()).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 1.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // Column 0 ∝ (1, -1)/√2, column 1 ∝ (1, 1)/√2, up to phase.
        let v0 = eig.vectors.column(0);
        let v1 = eig.vectors.column(1);
        let overlap0 = (v0[0] * s - v0[1] * s).norm();
        let overlap1 = (v1[0] * s + v1[1] * s).norm();
        assert!((overlap0 - 1.0).abs() < 1e-14);
        assert!((overlap1 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn reconstruction_and_unitarity() {
        for seed in 0..20 {
            let a = lcg_hermitian(4, seed);
            let eig = hermitian_eig(&a).unwrap();
            assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
            let vv = &eig.vectors.adjoint() * &eig.vectors;
            assert!(vv.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
            let residual = (&a - &eig.reconstruct()).frobenius_norm();
            assert!(residual <= 1e-10 * a.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn larger_matrices_converge() {
        let a = lcg_hermitian(16, 99);
        let eig = hermitian_eig(&a).unwrap();
        let residual = (&a - &eig.reconstruct()).frobenius_norm();
        assert!(residual <= 1e-10 * a.frobenius_norm());
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut a = ComplexMatrix::identity(2);
        a[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn zero_and_scalar_matrices() {
        let eig = hermitian_eig(&ComplexMatrix::zeros(3)).unwrap();
        assert_eq!(eig.values, vec![0.0; 3]);
        let eig = hermitian_eig(&ComplexMatrix::from_real_diag(&[2.5])).unwrap();
        assert_eq!(eig.values, vec![2.5]);
    }

    #[test]
    fn kron_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        let p0 = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let p1 = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
        assert_eq!(
            kron(&p0, &p1),
            ComplexMatrix::from_real_diag(&[0.0, 1.0, 0.0, 0.0])
        );
    }

    #[test]
    fn kron_mixed_product_and_associativity() {
        let (a, b, cc, d) = (
            lcg_hermitian(2, 1),
            lcg_hermitian(2, 2),
            lcg_hermitian(2, 3),
            lcg_hermitian(2, 4),
        );
        let lhs = &kron(&a, &b) * &kron(&cc, &d);
        let rhs = kron(&(&a * &cc), &(&b * &d));
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        let l = kron(&kron(&a, &b), &cc);
        let r = kron(&a, &kron(&b, &cc));
        assert!(l.max_abs_diff(&r) < 1e-12);
    }

    #[test]
    fn partial_trace_examples() {
        let ket00 = [ONE, ZERO, ZERO, ZERO];
        let rho = ComplexMatrix::projector(&ket00);
        let rs = partial_trace(&rho, 2, 2, Subsystem::System).unwrap();
        assert_eq!(rs, ComplexMatrix::from_real_diag(&[1.0, 0.0]));

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = [c(s, 0.0), ZERO, ZERO, c(s, 0.0)];
        let rho = ComplexMatrix::projector(&bell);
        for keep in [Subsystem::System, Subsystem::Ancilla] {
            let r = partial_trace(&rho, 2, 2, keep).unwrap();
            assert!(r.max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-15);
        }
    }

    #[test]
    fn partial_trace_of_product_and_mismatch() {
        let a = lcg_hermitian(2, 5);
        let b = lcg_hermitian(3, 6);
        let prod = kron(&a, &b);
        let kept = partial_trace(&prod, 2, 3, Subsystem::Ancilla).unwrap();
        assert!(kept.max_abs_diff(&b.scale_complex(a.trace())) < 1e-12);
        let kept = partial_trace(&prod, 2, 3, Subsystem::System).unwrap();
        assert!(kept.max_abs_diff(&a.scale_complex(b.trace())) < 1e-12);
        assert!(matches!(
            partial_trace(&prod, 2, 2, Subsystem::System),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn psd_sqrt_examples() {
        let s = psd_sqrt(&ComplexMatrix::from_real_diag(&[4.0, 1.0])).unwrap();
        assert!(s.max_abs_diff(&ComplexMatrix::from_real_diag(&[2.0, 1.0])) < 1e-14);
        let s = psd_sqrt(&ComplexMatrix::identity(2).scale(0.5)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(s.max_abs_diff(&ComplexMatrix::from_real_diag(&[h, h])) < 1e-14);
        let g = lcg_hermitian(4, 11);
        let a = &g * &g.adjoint();
        let s = psd_sqrt(&a).unwrap();
        assert!((&(&s * &s) - &a).frobenius_norm() <= 1e-9);
        assert!(matches!(
            psd_sqrt(&ComplexMatrix::from_real_diag(&[1.0, -0.1])),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn from_parts_round_trip_and_validation() {
        let a = lcg_hermitian(3, 8);
        let (re, im) = a.to_parts();
        assert_eq!(ComplexMatrix::from_parts(&re, &im).unwrap(), a);
        let bad = vec![vec![f64::NAN]];
        assert!(matches!(
            ComplexMatrix::from_parts(&bad, &[vec![0.0]]),
            Err(Error::NonFinite)
        ));
    }
}
