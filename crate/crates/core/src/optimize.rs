//! Derivative-free maximization over qubit projective measurements,
//! parameterized by Bloch angles: a coarse (θ, φ) grid followed by a
//! shrinking pattern search around the incumbent.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, Subsystem, C64};
use crate::par::{map_range, Execution};
use crate::states::BipartiteState;

/// Grid and refinement settings shared by the gain and discord optimizers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    pub grid_theta: usize,
    pub grid_phi: usize,
    pub refine_tol: f64,
    pub max_refine_rounds: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_theta: 64,
            grid_phi: 64,
            refine_tol: 1e-6,
            max_refine_rounds: 40,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_theta < 2 || self.grid_phi < 1 {
            return Err(Error::InvalidParameters(format!(
                "grid must be at least 2 x 1, got {} x {}",
                self.grid_theta, self.grid_phi
            )));
        }
        if !(self.refine_tol > 0.0 && self.refine_tol.is_finite()) {
            return Err(Error::InvalidParameters(format!(
                "refine_tol must be positive, got {}",
                self.refine_tol
            )));
        }
        Ok(())
    }
}

/// Polar and azimuthal angle of a qubit projector, `θ ∈ [0, π]`,
/// `φ ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochAngles {
    pub theta: f64,
    pub phi: f64,
}

impl BlochAngles {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::OutOfRange {
                name: "theta",
                value: theta,
                min: 0.0,
                max: PI,
            });
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(Error::OutOfRange {
                name: "phi",
                value: phi,
                min: 0.0,
                max: TAU,
            });
        }
        Ok(Self { theta, phi })
    }

    /// Folds arbitrary real angles onto the canonical ranges without
    /// changing the projector `|n⟩⟨n|`.
    pub fn folded(theta: f64, phi: f64) -> Self {
        let mut t = theta.rem_euclid(TAU);
        let mut p = phi;
        if t > PI {
            t = TAU - t;
            p += PI;
        }
        let mut p = p.rem_euclid(TAU);
        if p >= TAU {
            p = 0.0;
        }
        Self { theta: t, phi: p }
    }

    /// `|n⟩ = (cos(θ/2), e^{iφ} sin(θ/2))`.
    pub fn ket(&self) -> [C64; 2] {
        bloch_ket(self.theta, self.phi)
    }
}

#[inline]
pub(crate) fn bloch_ket(theta: f64, phi: f64) -> [C64; 2] {
    let (s, c) = (0.5 * theta).sin_cos();
    [C64::new(c, 0.0), C64::from_polar(s, phi)]
}

/// Best point found and the objective there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereOptimum {
    pub angles: BlochAngles,
    pub value: f64,
    pub evaluations: usize,
}

/// Maximizes `f(θ, φ)`. Grid ties go to the lexicographically smallest
/// `(θ, φ)`; refinement only accepts strict improvements.
pub fn maximize_on_sphere<F>(f: F, cfg: &OptimizerConfig, exec: Execution) -> Result<SphereOptimum>
where
    F: Fn(f64, f64) -> f64 + Sync + Send,
{
    cfg.validate()?;
    let (nt, np) = (cfg.grid_theta, cfg.grid_phi);
    let dtheta = PI / (nt - 1) as f64;
    let dphi = TAU / np as f64;

    let values = map_range(nt * np, exec, |idx| {
        let (i, j) = (idx / np, idx % np);
        f(i as f64 * dtheta, j as f64 * dphi)
    });
    let mut evaluations = values.len();
    let mut best_idx = None;
    for (idx, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::OptimizerFailed(format!(
                "non-finite objective at grid point {idx}"
            )));
        }
        match best_idx {
            Some(b) if values[b] >= v => {}
            _ => best_idx = Some(idx),
        }
    }
    let best_idx = best_idx.expect("grid is nonempty");
    let mut theta = (best_idx / np) as f64 * dtheta;
    let mut phi = (best_idx % np) as f64 * dphi;
    let mut value = values[best_idx];

    let (mut ht, mut hp) = (dtheta, dphi);
    let mut rounds = 0;
    while ht.max(hp) >= cfg.refine_tol && rounds < cfg.max_refine_rounds {
        rounds += 1;
        let mut moved = false;
        let (ct, cp) = (theta, phi);
        for dt in [-1.0, 0.0, 1.0] {
            for dp in [-1.0, 0.0, 1.0] {
                if dt == 0.0 && dp == 0.0 {
                    continue;
                }
                let (t, p) = (ct + dt * ht, cp + dp * hp);
                let v = f(t, p);
                evaluations += 1;
                if !v.is_finite() {
                    return Err(Error::OptimizerFailed(format!(
                        "non-finite objective at ({t}, {p})"
                    )));
                }
                if v > value {
                    value = v;
                    theta = t;
                    phi = p;
                    moved = true;
                }
            }
        }
        if !moved {
            ht *= 0.25;
            hp *= 0.25;
        }
    }

    Ok(SphereOptimum {
        angles: BlochAngles::folded(theta, phi),
        value,
        evaluations,
    })
}

/// Precomputed blocks `B_ij = ⟨i|_X ρ |j⟩_X` of a state whose party `X` is a
/// qubit, so that the unnormalized post-measurement operator of the other
/// party for outcome `|n⟩⟨n|` is `Σ_ij n̄_i n_j B_ij`.
#[derive(Debug, Clone)]
pub(crate) struct QubitMeasurementKernel {
    blocks: [ComplexMatrix; 4],
    marginal: ComplexMatrix,
}

impl QubitMeasurementKernel {
    pub(crate) fn new(state: &BipartiteState, measured: Subsystem) -> Result<Self> {
        let (dm, other) = match measured {
            Subsystem::System => (state.dim_s(), state.dim_a()),
            Subsystem::Ancilla => (state.dim_a(), state.dim_s()),
        };
        if dm != 2 {
            return Err(match measured {
                Subsystem::Ancilla => Error::UnsupportedAncillaDim(dm),
                Subsystem::System => Error::UnsupportedDim(dm),
            });
        }
        let rho = state.matrix();
        let block = |i: usize, j: usize| match measured {
            Subsystem::System => {
                ComplexMatrix::from_fn(other, |a, b| rho[(i * other + a, j * other + b)])
            }
            Subsystem::Ancilla => ComplexMatrix::from_fn(other, |s, t| rho[(s * 2 + i, t * 2 + j)]),
        };
        let blocks = [block(0, 0), block(0, 1), block(1, 0), block(1, 1)];
        let marginal = &blocks[0] + &blocks[3];
        Ok(Self { blocks, marginal })
    }

    /// Reduced state of the unmeasured party.
    pub(crate) fn marginal(&self) -> &ComplexMatrix {
        &self.marginal
    }

    /// Unnormalized conditional operators for `|n⟩⟨n|` and `1 − |n⟩⟨n|`.
    pub(crate) fn outcomes(&self, theta: f64, phi: f64) -> [ComplexMatrix; 2] {
        let n = bloch_ket(theta, phi);
        let coeff = [
            C64::from(n[0].norm_sqr()),
            n[0].conj() * n[1],
            n[1].conj() * n[0],
            C64::from(n[1].norm_sqr()),
        ];
        let dim = self.marginal.dim();
        let first = ComplexMatrix::from_fn(dim, |r, c| {
            self.blocks[0][(r, c)] * coeff[0].re
                + self.blocks[1][(r, c)] * coeff[1]
                + self.blocks[2][(r, c)] * coeff[2]
                + self.blocks[3][(r, c)] * coeff[3].re
        });
        let second = &self.marginal - &first;
        [first, second]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_smooth_maximum() {
        // Maximum of the Bloch-vector overlap with a fixed direction.
        let (t0, p0): (f64, f64) = (1.1, 4.0);
        let target = [t0.sin() * p0.cos(), t0.sin() * p0.sin(), t0.cos()];
        let f = |t: f64, p: f64| {
            t.sin() * p.cos() * target[0] + t.sin() * p.sin() * target[1] + t.cos() * target[2]
        };
        let opt =
            maximize_on_sphere(f, &OptimizerConfig::default(), Execution::Sequential).unwrap();
        assert!((opt.value - 1.0).abs() < 1e-12);
        assert!((opt.angles.theta - t0).abs() < 1e-5);
        assert!((opt.angles.phi - p0).abs() < 1e-5);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let f = |t: f64, p: f64| (3.0 * t).sin() * (2.0 * p).cos() + 0.1 * t;
        let cfg = OptimizerConfig::default();
        let a = maximize_on_sphere(f, &cfg, Execution::Sequential).unwrap();
        let b = maximize_on_sphere(f, &cfg, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ties_pick_smallest_grid_point() {
        let opt = maximize_on_sphere(
            |_, _| 1.0,
            &OptimizerConfig::default(),
            Execution::Sequential,
        )
        .unwrap();
        assert_eq!(
            opt.angles,
            BlochAngles {
                theta: 0.0,
                phi: 0.0
            }
        );
    }

    #[test]
    fn rejects_bad_config_and_nan() {
        let cfg = OptimizerConfig {
            grid_theta: 1,
            ..Default::default()
        };
        assert!(maximize_on_sphere(|_, _| 0.0, &cfg, Execution::Sequential).is_err());
        assert!(matches!(
            maximize_on_sphere(
                |_, _| f64::NAN,
                &OptimizerConfig::default(),
                Execution::Sequential
            ),
            Err(Error::OptimizerFailed(_))
        ));
    }

    #[test]
    fn folding_preserves_projector() {
        for &(t, p) in &[(-0.3, 1.0), (4.0, 6.0), (7.0, -2.0), (PI, 0.5)] {
            let f = BlochAngles::folded(t, p);
            assert!((0.0..=PI).contains(&f.theta) && (0.0..TAU).contains(&f.phi));
            let a = bloch_ket(t, p);
            let b = f.ket();
            let overlap = (a[0].conj() * b[0] + a[1].conj() * b[1]).norm();
            assert!((overlap - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn angle_validation() {
        assert!(BlochAngles::new(-0.1, 0.0).is_err());
        assert!(BlochAngles::new(0.0, TAU).is_err());
        assert!(BlochAngles::new(PI, 0.0).is_ok());
    }
}
