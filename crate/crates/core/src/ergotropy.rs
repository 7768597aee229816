//! Work extraction from a single system: passive states, ergotropy, the
//! entropy-matched thermal bound and the measurement-cost lower bound.

use serde::{Deserialize, Serialize};

use crate::correlations::entropy_of_spectrum;
use crate::daemonic::ProjectiveMeasurement;
use crate::error::{Error, Result};
use crate::matcore::{hermitian_eig, hermitian_eigvals, ComplexMatrix, C64};
use crate::states::{BipartiteState, DensityMatrix};

/// Hamiltonian in spectral form: energies nondecreasing, eigenvectors as
/// the columns of a unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec {
    energies: Vec<f64>,
    basis: ComplexMatrix,
    matrix: ComplexMatrix,
}

impl HamiltonianSpec {
    pub fn new(energies: Vec<f64>, basis: ComplexMatrix) -> Result<Self> {
        if energies.is_empty() || energies.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                found: energies.len(),
            });
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidHamiltonian("non-finite energy".into()));
        }
        if energies.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidHamiltonian(format!(
                "energies must be nondecreasing: {energies:?}"
            )));
        }
        let gram = &basis.adjoint() * &basis;
        let err = (&gram - &ComplexMatrix::identity(basis.dim())).frobenius_norm();
        if err > 1e-10 {
            return Err(Error::InvalidHamiltonian(format!(
                "eigenbasis is not unitary (‖V†V − 1‖ = {err:e})"
            )));
        }
        let n = energies.len();
        let matrix = ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| basis[(i, k)] * energies[k] * basis[(j, k)].conj())
                .sum()
        });
        Ok(Self {
            energies,
            basis,
            matrix,
        })
    }

    /// Diagonal in the computational basis.
    pub fn diagonal(energies: Vec<f64>) -> Result<Self> {
        let basis = ComplexMatrix::identity(energies.len().max(1));
        Self::new(energies, basis)
    }

    /// `−σ_z`: energy −1 on |0⟩, +1 on |1⟩.
    pub fn neg_sigma_z() -> Self {
        Self::diagonal(vec![-1.0, 1.0]).expect("valid two-level Hamiltonian")
    }

    pub fn from_matrix(h: &ComplexMatrix) -> Result<Self> {
        let eig = hermitian_eig(h)?;
        Self::new(eig.values, eig.vectors)
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    /// Same spectrum, eigenbasis `U·V`.
    pub fn rotated(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::new(self.energies.clone(), u * &self.basis)
    }

    /// `Σ_k r_k ε_k` with `r` sorted nonincreasing against ascending `ε`.
    pub fn passive_energy(&self, spectrum: &[f64]) -> f64 {
        let mut r = spectrum.to_vec();
        r.sort_by(|a, b| b.total_cmp(a));
        r.iter().zip(&self.energies).map(|(p, e)| p * e).sum()
    }
}

/// `{re, im}` matrix literal.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixParts {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

/// On-disk Hamiltonian: `{eigenvalues, eigenbasis?}`; the computational
/// basis is used when `eigenbasis` is absent.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HamiltonianFile {
    pub eigenvalues: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenbasis: Option<MatrixParts>,
}

impl Default for HamiltonianFile {
    fn default() -> Self {
        Self {
            eigenvalues: vec![-1.0, 1.0],
            eigenbasis: None,
        }
    }
}

impl HamiltonianFile {
    pub fn to_spec(&self) -> Result<HamiltonianSpec> {
        match &self.eigenbasis {
            None => HamiltonianSpec::diagonal(self.eigenvalues.clone()),
            Some(parts) => {
                let basis = ComplexMatrix::from_parts(&parts.re, &parts.im)?;
                HamiltonianSpec::new(self.eigenvalues.clone(), basis)
            }
        }
    }
}

impl From<&HamiltonianSpec> for HamiltonianFile {
    fn from(h: &HamiltonianSpec) -> Self {
        let (re, im) = h.basis.to_parts();
        Self {
            eigenvalues: h.energies.clone(),
            eigenbasis: Some(MatrixParts { re, im }),
        }
    }
}

fn check_dims(rho: &DensityMatrix, h: &HamiltonianSpec) -> Result<()> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho.dim(),
        });
    }
    Ok(())
}

/// Eigenpairs of `ρ` with populations nonincreasing; ties keep the
/// eigensolver's order.
fn descending_eigenpairs(rho: &DensityMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let eig = hermitian_eig(rho.matrix())?;
    let n = eig.values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.values[j].total_cmp(&eig.values[i]).then(i.cmp(&j)));
    let pops = order.iter().map(|&i| eig.values[i]).collect();
    let vecs = ComplexMatrix::from_fn(n, |i, j| eig.vectors[(i, order[j])]);
    Ok((pops, vecs))
}

/// `Σ_k r_k↓ |ε_k⟩⟨ε_k|`.
pub fn passive_state(rho: &DensityMatrix, h: &HamiltonianSpec) -> Result<DensityMatrix> {
    check_dims(rho, h)?;
    let mut pops = hermitian_eigvals(rho.matrix())?;
    pops.sort_by(|a, b| b.total_cmp(a));
    let v = h.basis();
    let n = h.dim();
    let mat = ComplexMatrix::from_fn(n, |i, j| {
        (0..n).map(|k| v[(i, k)] * pops[k] * v[(j, k)].conj()).sum()
    });
    Ok(DensityMatrix::new_unchecked(mat))
}

/// Maximal work extractable by a cyclic unitary: `Tr(ρH) − Σ_k r_k↓ ε_k`.
pub fn ergotropy(rho: &DensityMatrix, h: &HamiltonianSpec) -> Result<f64> {
    check_dims(rho, h)?;
    let spectrum = hermitian_eigvals(rho.matrix())?;
    Ok(rho.expectation(h.matrix()) - h.passive_energy(&spectrum))
}

/// Ergotropy as the overlap double sum
/// `Σ_{j,k} r_k ε_j (|⟨ε_j|r_k⟩|² − δ_jk)`, independent of [`ergotropy`].
pub fn ergotropy_overlap_sum(rho: &DensityMatrix, h: &HamiltonianSpec) -> Result<f64> {
    check_dims(rho, h)?;
    let (pops, vecs) = descending_eigenpairs(rho)?;
    let n = h.dim();
    let e = h.basis();
    let mut total = 0.0;
    for j in 0..n {
        for k in 0..n {
            let overlap: C64 = (0..n).map(|i| e[(i, j)].conj() * vecs[(i, k)]).sum();
            let delta = if j == k { 1.0 } else { 0.0 };
            total += pops[k] * h.energies()[j] * (overlap.norm_sqr() - delta);
        }
    }
    Ok(total)
}

/// `U = Σ_k |ε_k⟩⟨r_k|`, mapping `ρ` onto its passive state.
pub fn extraction_unitary(rho: &DensityMatrix, h: &HamiltonianSpec) -> Result<ComplexMatrix> {
    check_dims(rho, h)?;
    let (_, vecs) = descending_eigenpairs(rho)?;
    let e = h.basis();
    let n = h.dim();
    Ok(ComplexMatrix::from_fn(n, |i, j| {
        (0..n).map(|k| e[(i, k)] * vecs[(j, k)].conj()).sum()
    }))
}

fn gibbs_populations(energies: &[f64], beta: f64) -> Vec<f64> {
    let e0 = energies[0];
    let weights: Vec<f64> = energies.iter().map(|e| (-beta * (e - e0)).exp()).collect();
    let z: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / z).collect()
}

/// `e^{−βH}/Z`.
pub fn gibbs_state(h: &HamiltonianSpec, beta: f64) -> Result<DensityMatrix> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::InvalidParameters(format!(
            "inverse temperature must be finite and nonnegative, got {beta}"
        )));
    }
    let pops = gibbs_populations(h.energies(), beta);
    let v = h.basis();
    let n = h.dim();
    let mat = ComplexMatrix::from_fn(n, |i, j| {
        (0..n).map(|k| v[(i, k)] * pops[k] * v[(j, k)].conj()).sum()
    });
    Ok(DensityMatrix::new_unchecked(mat))
}

/// Entropy (bits) of the Gibbs state of `energies` at `beta`.
fn gibbs_entropy(energies: &[f64], beta: f64) -> f64 {
    entropy_of_spectrum(&gibbs_populations(energies, beta))
}

const DEGENERACY_TOL: f64 = 1e-12;

/// Inverse temperature whose Gibbs state has entropy `target` (bits), or
/// `None` when only the zero-temperature limit reaches it.
pub fn entropy_matched_beta(h: &HamiltonianSpec, target: f64) -> Option<f64> {
    let energies = h.energies();
    let d = energies.len();
    let ground = energies[0];
    let degeneracy = energies
        .iter()
        .filter(|e| *e - ground <= DEGENERACY_TOL)
        .count();
    if target >= (d as f64).log2() {
        return Some(0.0);
    }
    if degeneracy == d || target <= (degeneracy as f64).log2() + 1e-12 {
        return None;
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while gibbs_entropy(energies, hi) > target {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            return None;
        }
    }
    // Entropy is strictly decreasing in β; bisect to machine precision
    // because dE/dS grows like 1/β near infinite temperature.
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gibbs_entropy(energies, mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Work extracted when `ρ` ends in the Gibbs state of equal entropy:
/// `Tr(ρH) − Tr(ρ_β* H)`.
pub fn thermal_ergotropy(rho: &DensityMatrix, h: &HamiltonianSpec) -> Result<f64> {
    check_dims(rho, h)?;
    let energies = h.energies();
    let mean = rho.expectation(h.matrix());
    let ground = energies[0];
    if energies
        .iter()
        .all(|e| (e - ground).abs() <= DEGENERACY_TOL)
    {
        return Ok(0.0);
    }
    let spectrum = hermitian_eigvals(rho.matrix())?;
    let entropy = entropy_of_spectrum(&spectrum);
    if entropy < 1e-12 {
        return Ok(mean - ground);
    }
    if energies.len() == 2 {
        // A two-level Gibbs state is fixed by its entropy: its populations
        // are ρ's spectrum in passive order.
        return Ok(mean - h.passive_energy(&spectrum));
    }
    let final_energy = match entropy_matched_beta(h, entropy) {
        Some(beta) => gibbs_populations(energies, beta)
            .iter()
            .zip(energies)
            .map(|(p, e)| p * e)
            .sum(),
        None => ground,
    };
    Ok(mean - final_energy)
}

/// Lower bound on the energetic cost of measuring the ancilla:
/// `Σ_a p_a Tr[Π_a H_A] − Tr[H_A ρ_A]`.
pub fn measurement_cost_bound(
    state: &BipartiteState,
    h_a: &HamiltonianSpec,
    measurement: &ProjectiveMeasurement,
) -> Result<f64> {
    if h_a.dim() != state.dim_a() || measurement.dim() != state.dim_a() {
        return Err(Error::DimensionMismatch {
            expected: state.dim_a(),
            found: if h_a.dim() != state.dim_a() {
                h_a.dim()
            } else {
                measurement.dim()
            },
        });
    }
    let rho_a = state.reduced_ancilla();
    let after: f64 = measurement
        .projectors()
        .iter()
        .map(|p| rho_a.expectation(p) * p.trace_product(h_a.matrix()).re)
        .sum();
    Ok(after - rho_a.expectation(h_a.matrix()))
}
