//! Ancilla-assisted work extraction: conditional states after a projective
//! measurement on the ancilla, the resulting daemonic ergotropy, and the
//! daemonic gain maximized over qubit-ancilla measurements.

use crate::ergotropy::{ergotropy, HamiltonianSpec};
use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigvals, kron, partial_trace, ComplexMatrix, Subsystem};
use crate::optimize::{maximize_on_sphere, QubitMeasurementKernel};
use crate::par::Execution;
use crate::states::{schmidt, BipartiteState, DensityMatrix, XStateParams};

pub use crate::optimize::{BlochAngles, OptimizerConfig};

/// Outcomes rarer than this are dropped.
pub const MIN_OUTCOME_PROBABILITY: f64 = 1e-12;
const PROJECTOR_TOL: f64 = 1e-10;

/// Complete set of mutually orthogonal projectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMeasurement {
    projectors: Vec<ComplexMatrix>,
}

impl ProjectiveMeasurement {
    pub fn new(projectors: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = projectors.first() else {
            return Err(Error::InvalidMeasurement("no projectors".into()));
        };
        let d = first.dim();
        let mut sum = ComplexMatrix::zeros(d);
        for (a, p) in projectors.iter().enumerate() {
            if p.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.dim(),
                });
            }
            if p.hermitian_deviation() > PROJECTOR_TOL {
                return Err(Error::InvalidMeasurement(format!(
                    "projector {a} is not Hermitian"
                )));
            }
            if (&(p * p) - p).frobenius_norm() > PROJECTOR_TOL {
                return Err(Error::InvalidMeasurement(format!(
                    "projector {a} is not idempotent"
                )));
            }
            for (b, q) in projectors.iter().enumerate().skip(a + 1) {
                if (p * q).frobenius_norm() > PROJECTOR_TOL {
                    return Err(Error::InvalidMeasurement(format!(
                        "projectors {a} and {b} are not orthogonal"
                    )));
                }
            }
            sum = &sum + p;
        }
        if (&sum - &ComplexMatrix::identity(d)).frobenius_norm() > PROJECTOR_TOL {
            return Err(Error::InvalidMeasurement(
                "projectors do not sum to identity".into(),
            ));
        }
        Ok(Self { projectors })
    }

    /// Rank-one projectors on the computational basis.
    pub fn computational(d: usize) -> Self {
        let projectors = (0..d)
            .map(|k| {
                let mut p = ComplexMatrix::zeros(d);
                p[(k, k)] = 1.0.into();
                p
            })
            .collect();
        Self { projectors }
    }

    /// Rank-one projectors on the columns of a unitary.
    pub fn from_basis(u: &ComplexMatrix) -> Result<Self> {
        let projectors = (0..u.dim())
            .map(|k| ComplexMatrix::projector(&u.column(k)))
            .collect();
        Self::new(projectors)
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].dim()
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }
}

/// `Π_1 = |n⟩⟨n|` with `|n⟩ = (cos(θ/2), e^{iφ} sin(θ/2))`, `Π_2 = 1 − Π_1`.
pub fn measurement_from_angles(angles: BlochAngles) -> ProjectiveMeasurement {
    let p1 = ComplexMatrix::projector(&angles.ket());
    let p2 = &ComplexMatrix::identity(2) - &p1;
    ProjectiveMeasurement {
        projectors: vec![p1, p2],
    }
}

/// One measurement outcome: probability and normalized conditional state.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub probability: f64,
    pub state: DensityMatrix,
}

fn check_measured_dim(state: &BipartiteState, m: &ProjectiveMeasurement) -> Result<()> {
    if m.dim() != state.dim_a() {
        return Err(Error::DimensionMismatch {
            expected: state.dim_a(),
            found: m.dim(),
        });
    }
    Ok(())
}

fn check_hamiltonian(state: &BipartiteState, h: &HamiltonianSpec) -> Result<()> {
    if h.dim() != state.dim_s() {
        return Err(Error::DimensionMismatch {
            expected: state.dim_s(),
            found: h.dim(),
        });
    }
    Ok(())
}

/// `p_a = Tr[Π_a ρ_SA]`, `ρ_{S|a} = Tr_A[Π_a ρ_SA Π_a]/p_a`.
pub fn conditional_states(
    state: &BipartiteState,
    m: &ProjectiveMeasurement,
) -> Result<Vec<Outcome>> {
    check_measured_dim(state, m)?;
    let id_s = ComplexMatrix::identity(state.dim_s());
    let mut out = Vec::with_capacity(m.len());
    for p in m.projectors() {
        let full = kron(&id_s, p);
        let projected = &(&full * state.matrix()) * &full;
        let unnormalized =
            partial_trace(&projected, state.dim_s(), state.dim_a(), Subsystem::System)?;
        let probability = unnormalized.trace().re;
        if probability < MIN_OUTCOME_PROBABILITY {
            continue;
        }
        out.push(Outcome {
            probability,
            state: DensityMatrix::new_unchecked(unnormalized.scale(1.0 / probability)),
        });
    }
    Ok(out)
}

/// `W_Π = Tr[ρ_S H_S] − Σ_a p_a Σ_k r_k^a ε_k` with each conditional
/// spectrum in passive order.
pub fn daemonic_ergotropy(
    state: &BipartiteState,
    h: &HamiltonianSpec,
    m: &ProjectiveMeasurement,
) -> Result<f64> {
    check_hamiltonian(state, h)?;
    let outcomes = conditional_states(state, m)?;
    let mean = state.reduced_system().expectation(h.matrix());
    let mut passive = 0.0;
    for o in &outcomes {
        passive += o.probability * h.passive_energy(&o.state.eigenvalues()?);
    }
    Ok(mean - passive)
}

/// Closed-form ergotropy of an x-state under `H_S = −σ_z`.
pub fn xstate_ergotropy(p: &XStateParams) -> f64 {
    let ab = p.a + p.b;
    if ab >= 0.5 {
        0.0
    } else {
        2.0 - 4.0 * ab
    }
}

/// Closed-form daemonic ergotropy of an x-state under `H_S = −σ_z` and the
/// measurement at `angles`: `1 − 2(a+b) + (X₊ + X₋)/2`.
pub fn xstate_work(p: &XStateParams, angles: BlochAngles) -> Result<f64> {
    p.validate()?;
    let (st, ct) = angles.theta.sin_cos();
    let coherence = num_complex::Complex64::from_polar(p.w, -angles.phi)
        + num_complex::Complex64::from_polar(p.z, angles.phi);
    let base = 2.0 * (p.a + p.b) - 1.0;
    let tilt = (1.0 - 2.0 * p.b - 2.0 * p.c) * ct;
    let off = 4.0 * coherence.norm_sqr() * st * st;
    let x_plus = ((base + tilt).powi(2) + off).sqrt();
    let x_minus = ((base - tilt).powi(2) + off).sqrt();
    Ok(1.0 - 2.0 * (p.a + p.b) + 0.5 * (x_plus + x_minus))
}

/// Optimized daemonic gain and where it was attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainResult {
    pub gain: f64,
    pub best_measurement: BlochAngles,
    pub daemonic_ergotropy: f64,
    pub plain_ergotropy: f64,
}

/// Daemonic ergotropy at `(θ, φ)` evaluated through precomputed blocks.
pub(crate) struct DaemonicObjective<'a> {
    kernel: QubitMeasurementKernel,
    hamiltonian: &'a HamiltonianSpec,
    mean_energy: f64,
}

impl<'a> DaemonicObjective<'a> {
    pub(crate) fn new(state: &BipartiteState, h: &'a HamiltonianSpec) -> Result<Self> {
        check_hamiltonian(state, h)?;
        let kernel = QubitMeasurementKernel::new(state, Subsystem::Ancilla)?;
        let mean_energy = kernel.marginal().trace_product(h.matrix()).re;
        Ok(Self {
            kernel,
            hamiltonian: h,
            mean_energy,
        })
    }

    pub(crate) fn value(&self, theta: f64, phi: f64) -> f64 {
        let mut passive = 0.0;
        for m in self.kernel.outcomes(theta, phi) {
            if m.trace().re < MIN_OUTCOME_PROBABILITY {
                continue;
            }
            match hermitian_eigvals(&m) {
                Ok(spec) => passive += self.hamiltonian.passive_energy(&spec),
                Err(_) => return f64::NAN,
            }
        }
        self.mean_energy - passive
    }
}

/// `δW = max_Π W_Π − W` over two-outcome projective measurements on a qubit
/// ancilla.
pub fn daemonic_gain(
    state: &BipartiteState,
    h: &HamiltonianSpec,
    opt: &OptimizerConfig,
) -> Result<GainResult> {
    daemonic_gain_with(state, h, opt, Execution::default())
}

pub fn daemonic_gain_with(
    state: &BipartiteState,
    h: &HamiltonianSpec,
    opt: &OptimizerConfig,
    exec: Execution,
) -> Result<GainResult> {
    let objective = DaemonicObjective::new(state, h)?;
    let best = maximize_on_sphere(|t, p| objective.value(t, p), opt, exec)?;
    let plain = ergotropy(&state.reduced_system(), h)?;
    Ok(GainResult {
        gain: best.value - plain,
        best_measurement: best.angles,
        daemonic_ergotropy: best.value,
        plain_ergotropy: plain,
    })
}

/// Closed-form gain for a pure state: `Σ_k r_k ε_k − ε₁` with Schmidt
/// coefficients nonincreasing against ascending energies.
pub fn pure_state_gain(state: &BipartiteState, h: &HamiltonianSpec) -> Result<f64> {
    check_hamiltonian(state, h)?;
    let eig = crate::matcore::hermitian_eig(state.matrix())?;
    let n = eig.values.len();
    let largest = eig.values[n - 1];
    if largest < 1.0 - 1e-9 {
        return Err(Error::NotPure { largest });
    }
    let psi = eig.vectors.column(n - 1);
    let form = schmidt(&psi, state.dim_s(), state.dim_a())?;
    let weighted: f64 = form
        .coefficients
        .iter()
        .zip(h.energies())
        .map(|(r, e)| r * e)
        .sum();
    Ok(weighted - h.ground_energy())
}
