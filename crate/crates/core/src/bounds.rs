//! Two-qubit lower bounds on the daemonic gain as functions of discord and
//! concurrence.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sweep::SweepRecord;

/// Discord inputs up to this far above 1 are optimizer slack.
pub const DISCORD_EDGE_SLACK: f64 = 1e-6;

/// `h(x) = −x log₂ x − (1−x) log₂(1−x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange {
            name: "x",
            value: x,
            min: 0.0,
            max: 1.0,
        });
    }
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    Ok(term(x) + term(1.0 - x))
}

/// `δW_min(D) = h(1 − D/2)`.
pub fn gain_bound_discord(discord: f64) -> Result<f64> {
    let d = if discord > 1.0 && discord <= 1.0 + DISCORD_EDGE_SLACK {
        1.0
    } else {
        discord
    };
    if !(0.0..=1.0).contains(&d) {
        return Err(Error::OutOfRange {
            name: "discord",
            value: discord,
            min: 0.0,
            max: 1.0,
        });
    }
    binary_entropy(1.0 - 0.5 * d)
}

/// `δW_min(C) = 1 − √(1 − C²)`.
pub fn gain_bound_concurrence(c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::OutOfRange {
            name: "concurrence",
            value: c,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(1.0 - (1.0 - c * c).sqrt())
}

/// Gain measured against one bound curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub value: f64,
    pub bound: f64,
    pub slack: f64,
    pub violated: bool,
}

impl BoundReport {
    pub fn new(value: f64, bound: f64, tol: f64) -> Self {
        let slack = value - bound;
        Self {
            value,
            bound,
            slack,
            violated: slack < -tol,
        }
    }
}

/// Checks a record's gain against the discord (`D→`) and concurrence bounds.
pub fn check_record(rec: &SweepRecord, tol: f64) -> Result<(BoundReport, BoundReport)> {
    let fields = [rec.gain, rec.discord_s, rec.concurrence];
    if fields.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let by_discord = BoundReport::new(rec.gain, gain_bound_discord(rec.discord_s.max(0.0))?, tol);
    let by_concurrence = BoundReport::new(rec.gain, gain_bound_concurrence(rec.concurrence)?, tol);
    Ok((by_discord, by_concurrence))
}
