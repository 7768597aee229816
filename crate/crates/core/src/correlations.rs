//! Entropies and correlation measures: mutual information, one-way classical
//! information, discord in both directions, and two-qubit concurrence.

use serde::{Deserialize, Serialize};

use crate::daemonic::{OptimizerConfig, ProjectiveMeasurement, MIN_OUTCOME_PROBABILITY};
use crate::error::{Error, Result};
use crate::matcore::{
    hermitian_eigvals, kron, partial_trace, psd_sqrt, ComplexMatrix, Subsystem, C64,
};
use crate::optimize::{maximize_on_sphere, BlochAngles, QubitMeasurementKernel};
use crate::par::Execution;
use crate::states::{BipartiteState, DensityMatrix, XStateParams};

const ENTROPY_CUTOFF: f64 = 1e-14;
/// Negative discord above this is numerical noise and clamps to zero.
pub const DISCORD_CLAMP: f64 = 1e-8;

/// `−Σ λ log₂ λ`, with `λ ≤ 1e−14` contributing nothing.
pub fn entropy_of_spectrum(spectrum: &[f64]) -> f64 {
    spectrum
        .iter()
        .filter(|&&l| l > ENTROPY_CUTOFF)
        .map(|&l| -l * l.log2())
        .sum()
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(entropy_of_spectrum(&rho.eigenvalues()?))
}

/// `I = S(ρ_S) + S(ρ_A) − S(ρ_SA)`.
pub fn mutual_information(state: &BipartiteState) -> Result<f64> {
    let s = von_neumann_entropy(&state.reduced_system())?;
    let a = von_neumann_entropy(&state.reduced_ancilla())?;
    let sa = von_neumann_entropy(state.rho())?;
    Ok(s + a - sa)
}

/// Which party is measured: `S` gives `D→`, `A` gives `D←`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiscordDirection {
    #[serde(rename = "s")]
    MeasureSystem,
    #[serde(rename = "a")]
    MeasureAncilla,
}

impl DiscordDirection {
    pub fn measured(self) -> Subsystem {
        match self {
            Self::MeasureSystem => Subsystem::System,
            Self::MeasureAncilla => Subsystem::Ancilla,
        }
    }

    pub fn unmeasured(self) -> Subsystem {
        match self {
            Self::MeasureSystem => Subsystem::Ancilla,
            Self::MeasureAncilla => Subsystem::System,
        }
    }
}

impl std::str::FromStr for DiscordDirection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" | "S" => Ok(Self::MeasureSystem),
            "a" | "A" => Ok(Self::MeasureAncilla),
            other => Err(Error::InvalidParameters(format!(
                "unknown discord direction {other:?}"
            ))),
        }
    }
}

/// `J = S(ρ_X) − Σ_a p_a S(ρ_{X|a})` with `X` the unmeasured party.
pub fn classical_information(
    state: &BipartiteState,
    m: &ProjectiveMeasurement,
    dir: DiscordDirection,
) -> Result<f64> {
    let measured = dir.measured();
    if m.dim() != state.dim(measured) {
        return Err(Error::DimensionMismatch {
            expected: state.dim(measured),
            found: m.dim(),
        });
    }
    let (ds, da) = (state.dim_s(), state.dim_a());
    let keep = dir.unmeasured();
    let mut conditional = 0.0;
    for p in m.projectors() {
        let full = match measured {
            Subsystem::System => kron(p, &ComplexMatrix::identity(da)),
            Subsystem::Ancilla => kron(&ComplexMatrix::identity(ds), p),
        };
        let projected = &(&full * state.matrix()) * &full;
        let unnormalized = partial_trace(&projected, ds, da, keep)?;
        let prob = unnormalized.trace().re;
        if prob < MIN_OUTCOME_PROBABILITY {
            continue;
        }
        conditional +=
            prob * entropy_of_spectrum(&hermitian_eigvals(&unnormalized.scale(1.0 / prob))?);
    }
    Ok(von_neumann_entropy(&state.reduced(keep))? - conditional)
}

/// `Σ_a p_a S(M_a/p_a)` from unnormalized conditional operators.
fn conditional_entropy(outcomes: &[ComplexMatrix; 2]) -> f64 {
    let mut total = 0.0;
    for m in outcomes {
        let p = m.trace().re;
        if p < MIN_OUTCOME_PROBABILITY {
            continue;
        }
        match hermitian_eigvals(m) {
            Ok(spec) => total += entropy_of_spectrum(&spec) + p * p.log2(),
            Err(_) => return f64::NAN,
        }
    }
    total
}

/// Discord value and the measurement attaining the classical information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordResult {
    pub discord: f64,
    pub mutual_information: f64,
    pub classical_information: f64,
    pub best_measurement: BlochAngles,
}

/// `D = I − max_Π J` over rank-one projective measurements on a qubit party.
pub fn discord(
    state: &BipartiteState,
    dir: DiscordDirection,
    opt: &OptimizerConfig,
) -> Result<f64> {
    Ok(discord_with(state, dir, opt, Execution::default())?.discord)
}

pub fn discord_with(
    state: &BipartiteState,
    dir: DiscordDirection,
    opt: &OptimizerConfig,
    exec: Execution,
) -> Result<DiscordResult> {
    let kernel = QubitMeasurementKernel::new(state, dir.measured())?;
    let unmeasured = entropy_of_spectrum(&hermitian_eigvals(kernel.marginal())?);
    let best = maximize_on_sphere(
        |t, p| unmeasured - conditional_entropy(&kernel.outcomes(t, p)),
        opt,
        exec,
    )?;
    let info = mutual_information(state)?;
    let mut d = info - best.value;
    if (-DISCORD_CLAMP..0.0).contains(&d) {
        d = 0.0;
    }
    Ok(DiscordResult {
        discord: d,
        mutual_information: info,
        classical_information: best.value,
        best_measurement: best.angles,
    })
}

fn require_two_qubits(state: &BipartiteState) -> Result<()> {
    for d in [state.dim_s(), state.dim_a()] {
        if d != 2 {
            return Err(Error::UnsupportedDim(d));
        }
    }
    Ok(())
}

/// `σ_y ⊗ σ_y`.
fn spin_flip() -> ComplexMatrix {
    let mut f = ComplexMatrix::zeros(4);
    f[(0, 3)] = C64::new(-1.0, 0.0);
    f[(1, 2)] = C64::new(1.0, 0.0);
    f[(2, 1)] = C64::new(1.0, 0.0);
    f[(3, 0)] = C64::new(-1.0, 0.0);
    f
}

/// Two-qubit concurrence `max{0, λ₁ − λ₂ − λ₃ − λ₄}`.
pub fn concurrence(state: &BipartiteState) -> Result<f64> {
    require_two_qubits(state)?;
    let rho = state.matrix();
    let flip = spin_flip();
    let tilde = &(&flip * &rho.conj()) * &flip;
    let root = psd_sqrt(rho)?;
    let product = (&(&root * &tilde) * &root).hermitian_part();
    let mut lambdas: Vec<f64> = hermitian_eigvals(&product)?
        .into_iter()
        .map(|v| v.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0))
}

/// `C = 2 max{0, z − √(bc), w − √(ad)}`.
pub fn concurrence_x_state(p: &XStateParams) -> f64 {
    let d = p.d();
    2.0 * (p.z - (p.b * p.c).sqrt())
        .max(p.w - (p.a * d).sqrt())
        .max(0.0)
}
