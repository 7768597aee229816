//! Validated density matrices, bipartite states, random ensembles and the
//! explicit two-qubit state families used throughout the crate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{
    hermitian_eig, hermitian_eigvals, partial_trace, ComplexMatrix, Subsystem, C64,
};
pub use crate::rng::RngStream;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Tolerance on Hermiticity and unit trace.
pub const STATE_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted as numerical noise.
pub const PSD_TOL: f64 = 1e-9;
/// Slack allowed on the x-state positivity conditions.
const PARAM_TOL: f64 = 1e-12;

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let norm = mat.frobenius_norm().max(1.0);
        let deviation = mat.hermitian_deviation();
        if deviation > STATE_TOL * norm {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {deviation:e})"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let mat = mat.hermitian_part();
        let min = hermitian_eigvals(&mat)?[0];
        if min < -PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { mat })
    }

    /// Skips validation; the caller guarantees a state up to rounding.
    pub(crate) fn new_unchecked(mat: ComplexMatrix) -> Self {
        Self {
            mat: mat.hermitian_part(),
        }
    }

    /// `|ψ⟩⟨ψ|` for a unit vector.
    pub fn from_pure(psi: &[C64]) -> Result<Self> {
        let norm = vector_norm(psi);
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self::new_unchecked(ComplexMatrix::projector(psi)))
    }

    /// Diagonal state from a probability vector.
    pub fn from_populations(p: &[f64]) -> Result<Self> {
        check_probabilities(p)?;
        Ok(Self {
            mat: ComplexMatrix::from_real_diag(p),
        })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Spectrum, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigvals(&self.mat)
    }

    pub fn purity(&self) -> f64 {
        self.mat.trace_product(&self.mat).re
    }

    /// `Tr(ρ·O)` for Hermitian `O`.
    pub fn expectation(&self, op: &ComplexMatrix) -> f64 {
        self.mat.trace_product(op).re
    }
}

/// Joint state of a system `S` and an ancilla `A`, index `s·dim_a + a`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    rho: DensityMatrix,
    dim_s: usize,
    dim_a: usize,
}

impl BipartiteState {
    pub fn new(rho: DensityMatrix, dim_s: usize, dim_a: usize) -> Result<Self> {
        if dim_s == 0 || dim_a == 0 || dim_s * dim_a != rho.dim() {
            return Err(Error::DimensionMismatch {
                expected: dim_s * dim_a,
                found: rho.dim(),
            });
        }
        Ok(Self { rho, dim_s, dim_a })
    }

    pub fn from_matrix(mat: ComplexMatrix, dim_s: usize, dim_a: usize) -> Result<Self> {
        Self::new(DensityMatrix::new(mat)?, dim_s, dim_a)
    }

    pub fn from_pure(psi: &[C64], dim_s: usize, dim_a: usize) -> Result<Self> {
        Self::new(DensityMatrix::from_pure(psi)?, dim_s, dim_a)
    }

    /// `ρ_S ⊗ ρ_A`.
    pub fn product(rho_s: &DensityMatrix, rho_a: &DensityMatrix) -> Self {
        let mat = crate::matcore::kron(rho_s.matrix(), rho_a.matrix());
        Self {
            rho: DensityMatrix::new_unchecked(mat),
            dim_s: rho_s.dim(),
            dim_a: rho_a.dim(),
        }
    }

    pub fn dim_s(&self) -> usize {
        self.dim_s
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim(&self, party: Subsystem) -> usize {
        match party {
            Subsystem::System => self.dim_s,
            Subsystem::Ancilla => self.dim_a,
        }
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.rho.matrix()
    }

    /// Marginal of `party`.
    pub fn reduced(&self, party: Subsystem) -> DensityMatrix {
        let m = partial_trace(self.rho.matrix(), self.dim_s, self.dim_a, party)
            .expect("dimensions validated at construction");
        DensityMatrix::new_unchecked(m)
    }

    pub fn reduced_system(&self) -> DensityMatrix {
        self.reduced(Subsystem::System)
    }

    pub fn reduced_ancilla(&self) -> DensityMatrix {
        self.reduced(Subsystem::Ancilla)
    }

    /// `(U_S ⊗ U_A) ρ (U_S ⊗ U_A)†`.
    pub fn local_rotate(&self, u_s: &ComplexMatrix, u_a: &ComplexMatrix) -> Result<Self> {
        if u_s.dim() != self.dim_s || u_a.dim() != self.dim_a {
            return Err(Error::DimensionMismatch {
                expected: self.rho.dim(),
                found: u_s.dim() * u_a.dim(),
            });
        }
        let u = crate::matcore::kron(u_s, u_a);
        Ok(Self {
            rho: DensityMatrix::new_unchecked(self.matrix().conjugate_by(&u)),
            dim_s: self.dim_s,
            dim_a: self.dim_a,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&StateFile::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(text)?;
        Self::try_from(file)
    }
}

/// On-disk form: `{dimS, dimA, re, im}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(rename = "dimS")]
    pub dim_s: usize,
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&BipartiteState> for StateFile {
    fn from(state: &BipartiteState) -> Self {
        let (re, im) = state.matrix().to_parts();
        Self {
            dim_s: state.dim_s,
            dim_a: state.dim_a,
            re,
            im,
        }
    }
}

impl TryFrom<StateFile> for BipartiteState {
    type Error = Error;

    fn try_from(file: StateFile) -> Result<Self> {
        let mat = ComplexMatrix::from_parts(&file.re, &file.im)?;
        Self::from_matrix(mat, file.dim_s, file.dim_a)
    }
}

fn vector_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn check_probabilities(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidParameters("empty probability vector".into()));
    }
    if p.iter().any(|&x| !x.is_finite() || x < -PARAM_TOL) {
        return Err(Error::InvalidParameters(format!(
            "probabilities must be nonnegative: {p:?}"
        )));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > STATE_TOL {
        return Err(Error::InvalidParameters(format!(
            "probabilities sum to {total}, not 1"
        )));
    }
    Ok(())
}

/// Haar-random unit vector in dimension `d`.
pub fn haar_pure(d: usize, rng: &mut RngStream) -> Vec<C64> {
    assert!(d >= 1, "dimension must be positive");
    loop {
        let v: Vec<C64> = (0..d).map(|_| rng.complex_normal()).collect();
        let norm = vector_norm(&v);
        if norm > 0.0 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-random pure bipartite state.
pub fn random_pure(dim_s: usize, dim_a: usize, rng: &mut RngStream) -> BipartiteState {
    let psi = haar_pure(dim_s * dim_a, rng);
    BipartiteState {
        rho: DensityMatrix::new_unchecked(ComplexMatrix::projector(&psi)),
        dim_s,
        dim_a,
    }
}

/// Mixed state from the induced (Hilbert–Schmidt) measure: a Haar-pure state
/// on `(S⊗A)⊗E` with `dim E = dim_s·dim_a`, with `E` traced out.
pub fn random_mixed(dim_s: usize, dim_a: usize, rng: &mut RngStream) -> BipartiteState {
    let n = dim_s * dim_a;
    let psi = haar_pure(n * n, rng);
    let mat = ComplexMatrix::from_fn(n, |i, j| {
        (0..n).map(|e| psi[i * n + e] * psi[j * n + e].conj()).sum()
    });
    BipartiteState {
        rho: DensityMatrix::new_unchecked(mat),
        dim_s,
        dim_a,
    }
}

/// Haar-random unitary: Gram–Schmidt on a complex Ginibre matrix.
pub fn haar_unitary(d: usize, rng: &mut RngStream) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<C64> = (0..d).map(|_| rng.complex_normal()).collect();
        for u in &cols {
            let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= proj * ui;
            }
        }
        let norm = vector_norm(&v);
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(d, |i, j| cols[j][i])
}

/// Schmidt decomposition `|ψ⟩ = Σ_k √r_k |s_k⟩⊗|a_k⟩`; `coefficients` holds
/// the squared amplitudes `r_k`, nonincreasing.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub coefficients: Vec<f64>,
    pub basis_s: Vec<Vec<C64>>,
    pub basis_a: Vec<Vec<C64>>,
}

impl SchmidtForm {
    pub fn reconstruct(&self) -> Vec<C64> {
        let ds = self.basis_s.first().map_or(0, Vec::len);
        let da = self.basis_a.first().map_or(0, Vec::len);
        let mut psi = vec![ZERO; ds * da];
        for ((r, s), a) in self
            .coefficients
            .iter()
            .zip(&self.basis_s)
            .zip(&self.basis_a)
        {
            let amp = r.sqrt();
            for i in 0..ds {
                for j in 0..da {
                    psi[i * da + j] += s[i] * a[j] * amp;
                }
            }
        }
        psi
    }

    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }
}

/// Coefficients below this are treated as absent.
const SCHMIDT_CUTOFF: f64 = 1e-20;

pub fn schmidt(psi: &[C64], dim_s: usize, dim_a: usize) -> Result<SchmidtForm> {
    if dim_s == 0 || dim_a == 0 || psi.len() != dim_s * dim_a {
        return Err(Error::DimensionMismatch {
            expected: dim_s * dim_a,
            found: psi.len(),
        });
    }
    let norm = vector_norm(psi);
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized { norm });
    }
    let rho = ComplexMatrix::projector(psi);
    let rho_s = partial_trace(&rho, dim_s, dim_a, Subsystem::System)?;
    let eig = hermitian_eig(&rho_s.hermitian_part())?;

    // Project ψ onto each system eigenvector: v_k = (⟨s_k| ⊗ 1)|ψ⟩.
    let mut terms: Vec<(f64, Vec<C64>, Vec<C64>)> = (0..dim_s)
        .rev()
        .map(|k| {
            let s = eig.vectors.column(k);
            let v: Vec<C64> = (0..dim_a)
                .map(|a| (0..dim_s).map(|i| s[i].conj() * psi[i * dim_a + a]).sum())
                .collect();
            (v.iter().map(|z| z.norm_sqr()).sum::<f64>(), s, v)
        })
        .filter(|(r, _, _)| *r > SCHMIDT_CUTOFF)
        .collect();
    terms.sort_by(|x, y| y.0.total_cmp(&x.0));

    let total: f64 = terms.iter().map(|t| t.0).sum();
    let mut coefficients = Vec::with_capacity(terms.len());
    let mut basis_s = Vec::with_capacity(terms.len());
    let mut basis_a: Vec<Vec<C64>> = Vec::with_capacity(terms.len());
    for (r, s, mut v) in terms {
        // Modified Gram–Schmidt keeps the ancilla vectors orthonormal even
        // for tiny coefficients.
        for u in &basis_a {
            let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= proj * ui;
            }
        }
        let n = vector_norm(&v);
        if n == 0.0 {
            continue;
        }
        coefficients.push(r / total);
        basis_s.push(s);
        basis_a.push(v.into_iter().map(|z| z / n).collect());
    }
    Ok(SchmidtForm {
        coefficients,
        basis_s,
        basis_a,
    })
}

/// Parameters of the two-qubit x-state
/// `[[a,0,0,z],[0,b,w,0],[0,w,c,0],[z,0,0,d]]`, `d = 1 − a − b − c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XStateParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub w: f64,
    pub z: f64,
}

impl XStateParams {
    pub fn new(a: f64, b: f64, c: f64, w: f64, z: f64) -> Result<Self> {
        let p = Self { a, b, c, w, z };
        p.validate()?;
        Ok(p)
    }

    pub fn d(&self) -> f64 {
        1.0 - self.a - self.b - self.c
    }

    pub fn validate(&self) -> Result<()> {
        let Self { a, b, c, w, z } = *self;
        let d = self.d();
        let vals = [a, b, c, w, z];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameters(
                "non-finite x-state parameter".into(),
            ));
        }
        if [a, b, c, d, w, z].iter().any(|&v| v < -PARAM_TOL) {
            return Err(Error::InvalidParameters(format!(
                "x-state entries must be nonnegative: {self:?}, d = {d}"
            )));
        }
        if b * c < w * w - PARAM_TOL || a * d < z * z - PARAM_TOL {
            return Err(Error::InvalidParameters(format!(
                "x-state violates bc ≥ w², ad ≥ z²: {self:?}"
            )));
        }
        Ok(())
    }

    /// Random valid parameters: Dirichlet(1,1,1,1) diagonal, coherences
    /// uniform within their positivity limits.
    pub fn random(rng: &mut RngStream) -> Self {
        let e: [f64; 4] = std::array::from_fn(|_| rng.exponential());
        let total: f64 = e.iter().sum();
        let (a, b, c) = (e[0] / total, e[1] / total, e[2] / total);
        let d = e[3] / total;
        let w = rng.uniform() * (b * c).sqrt();
        let z = rng.uniform() * (a * d).sqrt();
        Self { a, b, c, w, z }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let Self { a, b, c, w, z } = *self;
        let d = self.d();
        let rows = [
            [a, 0.0, 0.0, z],
            [0.0, b, w, 0.0],
            [0.0, w, c, 0.0],
            [z, 0.0, 0.0, d],
        ];
        ComplexMatrix::from_fn(4, |i, j| C64::new(rows[i][j], 0.0))
    }
}

/// Two-qubit x-state with basis order |00⟩, |01⟩, |10⟩, |11⟩.
pub fn x_state(params: XStateParams) -> Result<BipartiteState> {
    params.validate()?;
    Ok(BipartiteState {
        rho: DensityMatrix::new_unchecked(params.matrix()),
        dim_s: 2,
        dim_a: 2,
    })
}

/// Sign choice in `x = (1 ± √(1 − C²))/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

fn check_concurrence_arg(c: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::OutOfRange {
            name: "C",
            value: c,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(())
}

/// Parameters of the lower-boundary family in the concurrence plane.
pub fn boundary_min_params(c: f64, branch: Branch) -> Result<XStateParams> {
    check_concurrence_arg(c)?;
    let root = (1.0 - c * c).sqrt();
    let x = match branch {
        Branch::Plus => (1.0 + root) / 2.0,
        Branch::Minus => (1.0 - root) / 2.0,
    };
    Ok(XStateParams {
        a: 0.0,
        b: x,
        c: 1.0 - x,
        w: c / 2.0,
        z: 0.0,
    })
}

/// `[[0,0,0,0],[0,x,C/2,0],[0,C/2,1−x,0],[0,0,0,0]]`.
pub fn boundary_min_state(c: f64, branch: Branch) -> Result<BipartiteState> {
    x_state(boundary_min_params(c, branch)?)
}

pub fn boundary_max_params(c: f64) -> Result<XStateParams> {
    check_concurrence_arg(c)?;
    Ok(XStateParams {
        a: 0.5,
        b: 0.0,
        c: 0.0,
        w: 0.0,
        z: c / 2.0,
    })
}

/// `[|00⟩⟨00| + |11⟩⟨11| + C(|00⟩⟨11| + h.c.)]/2`.
pub fn boundary_max_state(c: f64) -> Result<BipartiteState> {
    x_state(boundary_max_params(c)?)
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn bell_state() -> BipartiteState {
    boundary_max_state(1.0).expect("C = 1 is in range")
}

/// `Σ_k r_k |k⟩⟨k| ⊗ |k⟩⟨k|` in the computational bases.
pub fn classical_correlated(r: &[f64], dim_s: usize, dim_a: usize) -> Result<BipartiteState> {
    check_probabilities(r)?;
    if r.len() > dim_s.min(dim_a) {
        return Err(Error::InvalidParameters(format!(
            "{} weights do not fit dimensions {dim_s}x{dim_a}",
            r.len()
        )));
    }
    let mut diag = vec![0.0; dim_s * dim_a];
    for (k, &p) in r.iter().enumerate() {
        diag[k * dim_a + k] = p.max(0.0);
    }
    Ok(BipartiteState {
        rho: DensityMatrix::new_unchecked(ComplexMatrix::from_real_diag(&diag)),
        dim_s,
        dim_a,
    })
}

/// `Σ_{a,k} q[a][k] |k⟩⟨k| ⊗ |φ_a⟩⟨φ_a|` with `|φ_0⟩ = |0⟩`,
/// `|φ_1⟩ = overlap·|0⟩ + √(1 − overlap²)·|1⟩`.
pub fn nonorthogonal_classical(q: [[f64; 2]; 2], overlap: f64) -> Result<BipartiteState> {
    if !(overlap > 0.0 && overlap < 1.0) {
        return Err(Error::OutOfRange {
            name: "overlap",
            value: overlap,
            min: 0.0,
            max: 1.0,
        });
    }
    check_probabilities(&[q[0][0], q[0][1], q[1][0], q[1][1]])?;
    if q.iter().any(|row| row[0] < row[1]) {
        return Err(Error::InvalidParameters(
            "each row of q must be nonincreasing in k".into(),
        ));
    }
    let phi = [
        [C64::new(1.0, 0.0), ZERO],
        [
            C64::new(overlap, 0.0),
            C64::new((1.0 - overlap * overlap).sqrt(), 0.0),
        ],
    ];
    let mut mat = ComplexMatrix::zeros(4);
    for (a, ket) in phi.iter().enumerate() {
        let pa = ComplexMatrix::projector(ket);
        for k in 0..2 {
            let mut pk = ComplexMatrix::zeros(2);
            pk[(k, k)] = C64::new(1.0, 0.0);
            let term = crate::matcore::kron(&pk, &pa).scale(q[a][k]);
            mat = &mat + &term;
        }
    }
    Ok(BipartiteState {
        rho: DensityMatrix::new_unchecked(mat),
        dim_s: 2,
        dim_a: 2,
    })
}
