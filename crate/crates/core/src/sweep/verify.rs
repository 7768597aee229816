use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::fmt;

use serde::Serialize;

use crate::bounds::gain_bound_concurrence;
use crate::correlations::{concurrence, concurrence_x_state, discord_with, DiscordDirection};
use crate::daemonic::{
    daemonic_ergotropy, daemonic_gain_with, measurement_from_angles, pure_state_gain,
    xstate_ergotropy, xstate_work, BlochAngles, OptimizerConfig,
};
use crate::ergotropy::{ergotropy, thermal_ergotropy, HamiltonianSpec};
use crate::error::{Error, Result};
use crate::matcore::kron_vec;
use crate::par::{map_range, Execution};
use crate::rng::derive_seed;
use crate::states::{
    boundary_max_state, boundary_min_state, classical_correlated, haar_pure,
    nonorthogonal_classical, random_mixed, random_pure, x_state, BipartiteState, Branch, RngStream,
    XStateParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Lemma1,
    Theorem1,
    Theorem2,
    Corollary1,
    Corollary2,
    XstateForms,
    BoundsSaturation,
    Ordering,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Lemma1,
        Suite::Theorem1,
        Suite::Theorem2,
        Suite::Corollary1,
        Suite::Corollary2,
        Suite::XstateForms,
        Suite::BoundsSaturation,
        Suite::Ordering,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Corollary1 => "corollary1",
            Suite::Corollary2 => "corollary2",
            Suite::XstateForms => "xstate_forms",
            Suite::BoundsSaturation => "bounds_saturation",
            Suite::Ordering => "ordering",
        }
    }

    /// Sample count used when none is given.
    pub fn default_samples(self) -> usize {
        match self {
            Suite::Lemma1 | Suite::XstateForms | Suite::Ordering => 500,
            Suite::Theorem1 => 1000,
            Suite::Theorem2 => 200,
            Suite::Corollary1 | Suite::Corollary2 | Suite::BoundsSaturation => 1,
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub n: Option<usize>,
    pub seed: u64,
    pub optimizer: OptimizerConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            n: None,
            seed: 0x5eed,
            optimizer: OptimizerConfig::default(),
        }
    }
}

/// Outcome of one property over all its samples. `worst_slack` is the
/// smallest margin seen; the property passes when it is at least
/// `−tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub samples: usize,
    pub worst_slack: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl PropertyCheck {
    fn from_slacks(name: &str, slacks: impl IntoIterator<Item = f64>, tolerance: f64) -> Self {
        let mut samples = 0;
        let mut worst = f64::INFINITY;
        let mut nan = false;
        for s in slacks {
            samples += 1;
            nan |= s.is_nan();
            worst = worst.min(s);
        }
        Self {
            name: name.to_string(),
            samples,
            worst_slack: worst,
            tolerance,
            passed: !nan && worst >= -tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub properties: Vec<PropertyCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.properties {
            writeln!(
                f,
                "[{}] {}::{} samples={} worst_slack={:.3e} tol={:.1e}",
                if p.passed { "PASS" } else { "FAIL" },
                self.suite.name(),
                p.name,
                p.samples,
                p.worst_slack,
                p.tolerance
            )?;
        }
        write!(
            f,
            "suite {}: {}",
            self.suite.name(),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

fn random_angles(rng: &mut RngStream) -> BlochAngles {
    BlochAngles::folded(rng.uniform_in(0.0, PI), rng.uniform_in(0.0, TAU))
}

/// Even samples are Haar-pure, odd ones Hilbert–Schmidt mixed.
fn mixed_or_pure(i: usize, rng: &mut RngStream) -> BipartiteState {
    if i.is_multiple_of(2) {
        random_pure(2, 2, rng)
    } else {
        random_mixed(2, 2, rng)
    }
}

fn per_sample<R: Send>(
    n: usize,
    seed: u64,
    f: impl Fn(usize, &mut RngStream) -> Result<R> + Sync + Send,
) -> Result<Vec<R>> {
    map_range(n, Execution::default(), |i| {
        let mut rng = RngStream::new(derive_seed(seed, i as u64));
        f(i, &mut rng)
    })
    .into_iter()
    .collect()
}

fn gain(state: &BipartiteState, h: &HamiltonianSpec, opt: &OptimizerConfig) -> Result<f64> {
    Ok(daemonic_gain_with(state, h, opt, Execution::Sequential)?.gain)
}

fn discord(state: &BipartiteState, dir: DiscordDirection, opt: &OptimizerConfig) -> Result<f64> {
    Ok(discord_with(state, dir, opt, Execution::Sequential)?.discord)
}

/// Runs every property of `suite` and reports the worst margins.
pub fn verify(suite: Suite, opts: &VerifyOptions) -> Result<VerificationReport> {
    let n = opts.n.unwrap_or(suite.default_samples());
    let opt = &opts.optimizer;
    let h = HamiltonianSpec::neg_sigma_z();
    let h = &h;
    let properties = match suite {
        Suite::Lemma1 => {
            let slacks = per_sample(n, opts.seed, |i, rng| {
                let st = mixed_or_pure(i, rng);
                let m = measurement_from_angles(random_angles(rng));
                Ok(daemonic_ergotropy(&st, h, &m)? - ergotropy(&st.reduced_system(), h)?)
            })?;
            vec![PropertyCheck::from_slacks(
                "daemonic_at_least_plain",
                slacks,
                1e-9,
            )]
        }
        Suite::Theorem1 => {
            let rows = per_sample(n, opts.seed, |_, rng| {
                let st = random_mixed(2, 2, rng);
                Ok((
                    discord(&st, DiscordDirection::MeasureSystem, opt)?,
                    gain(&st, h, opt)?,
                ))
            })?;
            let slacks = rows
                .iter()
                .filter(|(d, _)| *d > 0.05)
                .map(|(_, g)| g - 1e-6);
            vec![PropertyCheck::from_slacks(
                "discord_implies_positive_gain",
                slacks,
                0.0,
            )]
        }
        Suite::Theorem2 => {
            let entangled = per_sample(n, opts.seed, |_, rng| {
                let st = random_pure(2, 2, rng);
                Ok(-(gain(&st, h, opt)? - pure_state_gain(&st, h)?).abs())
            })?;
            let separable = per_sample(n.div_ceil(4), opts.seed ^ 0x5e9a, |_, rng| {
                let psi = kron_vec(&haar_pure(2, rng), &haar_pure(2, rng));
                let st = BipartiteState::from_pure(&psi, 2, 2)?;
                Ok(1e-8 - gain(&st, h, opt)?)
            })?;
            vec![
                PropertyCheck::from_slacks("gain_matches_schmidt_form", entangled, 1e-6),
                PropertyCheck::from_slacks("separable_gain_vanishes", separable, 0.0),
            ]
        }
        Suite::Corollary1 => {
            let st = nonorthogonal_classical([[0.5, 0.0], [0.3, 0.2]], FRAC_1_SQRT_2)?;
            let g = gain(&st, h, opt)?;
            let d = discord(&st, DiscordDirection::MeasureAncilla, opt)?;
            vec![
                PropertyCheck::from_slacks("gain_vanishes", [1e-8 - g], 0.0),
                PropertyCheck::from_slacks("ancilla_discord_positive", [d - 0.01], 0.0),
            ]
        }
        Suite::Corollary2 => {
            let st = classical_correlated(&[0.7, 0.3], 2, 2)?;
            let g = gain(&st, h, opt)?;
            let ds = discord(&st, DiscordDirection::MeasureSystem, opt)?;
            let da = discord(&st, DiscordDirection::MeasureAncilla, opt)?;
            vec![
                PropertyCheck::from_slacks("gain_equals_population_gap", [-(g - 0.6).abs()], 1e-6),
                PropertyCheck::from_slacks("zero_discord", [1e-8 - ds, 1e-8 - da], 0.0),
            ]
        }
        Suite::XstateForms => {
            let rows = per_sample(n, opts.seed, |_, rng| {
                let p = XStateParams::random(rng);
                let st = x_state(p)?;
                let a = random_angles(rng);
                let w = ergotropy(&st.reduced_system(), h)?;
                let wp = daemonic_ergotropy(&st, h, &measurement_from_angles(a))?;
                Ok([
                    -(xstate_ergotropy(&p) - w).abs(),
                    -(xstate_work(&p, a)? - wp).abs(),
                    -(concurrence_x_state(&p) - concurrence(&st)?).abs(),
                ])
            })?;
            [
                "ergotropy_closed_form",
                "daemonic_closed_form",
                "concurrence_closed_form",
            ]
            .iter()
            .enumerate()
            .map(|(k, name)| PropertyCheck::from_slacks(name, rows.iter().map(|r| r[k]), 1e-9))
            .collect()
        }
        Suite::BoundsSaturation => {
            let cs: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
            let mut min_slacks = Vec::new();
            let mut max_slacks = Vec::new();
            for &c in &cs {
                for branch in [Branch::Plus, Branch::Minus] {
                    let st = boundary_min_state(c, branch)?;
                    let g = gain(&st, h, opt)?;
                    min_slacks.push(-(g - gain_bound_concurrence(c)?).abs());
                }
                let st = boundary_max_state(c)?;
                max_slacks.push(-(gain(&st, h, opt)? - 1.0).abs());
            }
            vec![
                PropertyCheck::from_slacks(
                    "lower_family_saturates_concurrence_bound",
                    min_slacks,
                    1e-6,
                ),
                PropertyCheck::from_slacks("upper_family_reaches_unit_gain", max_slacks, 1e-6),
            ]
        }
        Suite::Ordering => {
            let rows = per_sample(n, opts.seed, |i, rng| {
                let st = mixed_or_pure(i, rng);
                let m = measurement_from_angles(random_angles(rng));
                let rho_s = st.reduced_system();
                let w = ergotropy(&rho_s, h)?;
                let wp = daemonic_ergotropy(&st, h, &m)?;
                let wth = thermal_ergotropy(&rho_s, h)?;
                Ok((wp - w, wth - wp))
            })?;
            vec![
                PropertyCheck::from_slacks("plain_below_daemonic", rows.iter().map(|r| r.0), 1e-9),
                PropertyCheck::from_slacks(
                    "daemonic_below_thermal",
                    rows.iter().map(|r| r.1),
                    1e-9,
                ),
            ]
        }
    };
    Ok(VerificationReport { suite, properties })
}
