//! Seeded Monte Carlo sweeps over random two-qubit states and record output.

mod verify;

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bounds::check_record;
use crate::correlations::{concurrence, discord_with, DiscordDirection};
use crate::daemonic::{daemonic_gain_with, OptimizerConfig};
use crate::ergotropy::{thermal_ergotropy, HamiltonianFile, HamiltonianSpec};
use crate::error::{Error, Result};
use crate::par::{map_range, with_workers, Execution};
use crate::rng::derive_seed;
use crate::states::{random_mixed, random_pure, x_state, BipartiteState, RngStream, XStateParams};

pub use verify::{verify, PropertyCheck, Suite, VerificationReport, VerifyOptions};

/// Random state family sampled by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    #[default]
    Mixed,
    Pure,
    Xstate,
}

impl std::str::FromStr for Ensemble {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mixed" => Ok(Self::Mixed),
            "pure" => Ok(Self::Pure),
            "xstate" => Ok(Self::Xstate),
            other => Err(Error::InvalidParameters(format!(
                "unknown ensemble {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    pub n_states: usize,
    pub seed: u64,
    pub ensemble: Ensemble,
    pub hamiltonian: HamiltonianFile,
    pub optimizer: OptimizerConfig,
    pub tol: f64,
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            n_states: 3000,
            seed: 0,
            ensemble: Ensemble::Mixed,
            hamiltonian: HamiltonianFile::default(),
            optimizer: OptimizerConfig::default(),
            tol: 1e-6,
            workers: 0,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_states == 0 {
            return Err(Error::InvalidParameters(
                "n_states must be at least 1".into(),
            ));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParameters(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        self.optimizer.validate()?;
        let h = self.hamiltonian.to_spec()?;
        if h.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: h.dim(),
            });
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// One sampled state and everything computed from it.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SweepRecord {
    pub index: u64,
    pub state_seed: u64,
    pub purity: f64,
    pub ergotropy: f64,
    pub thermal: f64,
    pub daemonic: f64,
    pub gain: f64,
    pub discord_s: f64,
    pub discord_a: f64,
    pub concurrence: f64,
    pub theta_opt: f64,
    pub phi_opt: f64,
}

pub const CSV_HEADER: &str =
    "index,state_seed,purity,ergotropy,thermal,daemonic,gain,discord_s,discord_a,concurrence,theta_opt,phi_opt";

/// Two-qubit state drawn from `ensemble` with its own seed.
pub fn sample_state(ensemble: Ensemble, state_seed: u64) -> Result<BipartiteState> {
    let mut rng = RngStream::new(state_seed);
    match ensemble {
        Ensemble::Mixed => Ok(random_mixed(2, 2, &mut rng)),
        Ensemble::Pure => Ok(random_pure(2, 2, &mut rng)),
        Ensemble::Xstate => x_state(XStateParams::random(&mut rng)),
    }
}

/// All record quantities for one state. Optimizers run sequentially.
pub fn analyze_state(
    state: &BipartiteState,
    h: &HamiltonianSpec,
    opt: &OptimizerConfig,
) -> Result<SweepRecord> {
    let exec = Execution::Sequential;
    let gain = daemonic_gain_with(state, h, opt, exec)?;
    let rho_s = state.reduced_system();
    let d_s = discord_with(state, DiscordDirection::MeasureSystem, opt, exec)?;
    let d_a = discord_with(state, DiscordDirection::MeasureAncilla, opt, exec)?;
    Ok(SweepRecord {
        index: 0,
        state_seed: 0,
        purity: state.rho().purity(),
        ergotropy: gain.plain_ergotropy,
        thermal: thermal_ergotropy(&rho_s, h)?,
        daemonic: gain.daemonic_ergotropy,
        gain: gain.gain,
        discord_s: d_s.discord,
        discord_a: d_a.discord,
        concurrence: concurrence(state)?,
        theta_opt: gain.best_measurement.theta,
        phi_opt: gain.best_measurement.phi,
    })
}

fn record_for(index: u64, cfg: &SweepConfig, h: &HamiltonianSpec) -> Result<SweepRecord> {
    let state_seed = derive_seed(cfg.seed, index);
    let wrap = |e: Error| Error::StateFailed {
        index,
        seed: state_seed,
        source: Box::new(e),
    };
    let state = sample_state(cfg.ensemble, state_seed).map_err(wrap)?;
    let mut rec = analyze_state(&state, h, &cfg.optimizer).map_err(wrap)?;
    rec.index = index;
    rec.state_seed = state_seed;
    Ok(rec)
}

/// Runs the sweep with states distributed over `cfg.workers` threads.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    run_sweep_with(cfg, Execution::default())
}

/// Output is identical for every `exec` and worker count.
pub fn run_sweep_with(cfg: &SweepConfig, exec: Execution) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let h = cfg.hamiltonian.to_spec()?;
    let results = with_workers(cfg.workers, || {
        map_range(cfg.n_states, exec, |i| record_for(i as u64, cfg, &h))
    });
    results.into_iter().collect()
}

/// Aggregate bound checks over a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSummary {
    pub n_states: usize,
    pub discord_violations: usize,
    pub concurrence_violations: usize,
    pub worst_discord_slack: f64,
    pub worst_concurrence_slack: f64,
    pub max_gain: f64,
    /// Records with `W_Π < W − tol` or `|δW − (W_Π − W)| > tol`.
    pub chain_violations: usize,
}

impl SweepSummary {
    pub fn gain_envelope_exceeded(&self, tol: f64) -> bool {
        self.max_gain > 1.0 + tol
    }
}

pub fn summarize(records: &[SweepRecord], tol: f64) -> Result<SweepSummary> {
    let mut s = SweepSummary {
        n_states: records.len(),
        discord_violations: 0,
        concurrence_violations: 0,
        worst_discord_slack: f64::INFINITY,
        worst_concurrence_slack: f64::INFINITY,
        max_gain: f64::NEG_INFINITY,
        chain_violations: 0,
    };
    for rec in records {
        let (d, c) = check_record(rec, tol)?;
        s.discord_violations += d.violated as usize;
        s.concurrence_violations += c.violated as usize;
        s.worst_discord_slack = s.worst_discord_slack.min(d.slack);
        s.worst_concurrence_slack = s.worst_concurrence_slack.min(c.slack);
        s.max_gain = s.max_gain.max(rec.gain);
        let chain_ok = rec.daemonic >= rec.ergotropy - tol
            && (rec.gain - (rec.daemonic - rec.ergotropy)).abs() <= tol;
        s.chain_violations += (!chain_ok) as usize;
    }
    Ok(s)
}

/// Output encoding for [`emit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidParameters(format!(
                "unknown format {other:?}"
            ))),
        }
    }
}

/// `%.12g`.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn rounded(x: f64) -> f64 {
    format_sig12(x).parse().unwrap_or(x)
}

pub fn to_csv(records: &[SweepRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(Error::EmptyOutput);
    }
    let mut out = String::with_capacity(records.len() * 160);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = write!(out, "{},{}", r.index, r.state_seed);
        for v in [
            r.purity,
            r.ergotropy,
            r.thermal,
            r.daemonic,
            r.gain,
            r.discord_s,
            r.discord_a,
            r.concurrence,
            r.theta_opt,
            r.phi_opt,
        ] {
            let _ = write!(out, ",{}", format_sig12(v));
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn to_json(records: &[SweepRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(Error::EmptyOutput);
    }
    let rounded: Vec<SweepRecord> = records
        .iter()
        .map(|r| SweepRecord {
            purity: rounded(r.purity),
            ergotropy: rounded(r.ergotropy),
            thermal: rounded(r.thermal),
            daemonic: rounded(r.daemonic),
            gain: rounded(r.gain),
            discord_s: rounded(r.discord_s),
            discord_a: rounded(r.discord_a),
            concurrence: rounded(r.concurrence),
            theta_opt: rounded(r.theta_opt),
            phi_opt: rounded(r.phi_opt),
            ..*r
        })
        .collect();
    Ok(serde_json::to_string_pretty(&rounded)?)
}

pub fn from_csv(text: &str) -> Result<Vec<SweepRecord>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in reader.deserialize() {
        out.push(row?);
    }
    Ok(out)
}

pub fn emit(records: &[SweepRecord], format: OutputFormat, path: &Path) -> Result<()> {
    let text = match format {
        OutputFormat::Csv => to_csv(records)?,
        OutputFormat::Json => to_json(records)?,
    };
    std::fs::write(path, text)?;
    Ok(())
}
