use serde::{Deserialize, Serialize};

use crate::hypercore::{Summability, CONVERGENT_RATIO, DIVERGENT_RATIO};
use crate::multivar::{DECAY_SLOPE, DECAY_TAIL_MAX};

/// Decision thresholds of the classifier; always reported with a verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// "Decays" needs the tail maximum of `|α|` below this…
    pub decay_tail_max: f64,
    /// …and the log-log slope below this.
    pub decay_slope: f64,
    /// Doubling-window increment ratio at or below which a series converges.
    pub convergent_ratio: f64,
    /// Ratio at or above which a series diverges.
    pub divergent_ratio: f64,
    /// `max |α - 1|` on the probe window accepted as the trivial character.
    pub trivial_tol: f64,
    /// `max |α - (-1)^level|` accepted as the parity character.
    pub parity_tol: f64,
    /// Largest convolution mass allowed on the wrong parity class.
    pub parity_leak: f64,
    /// Levels checked for the parity grading of the table.
    pub parity_radius: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            decay_tail_max: DECAY_TAIL_MAX,
            decay_slope: DECAY_SLOPE,
            convergent_ratio: CONVERGENT_RATIO,
            divergent_ratio: DIVERGENT_RATIO,
            trivial_tol: 1e-9,
            parity_tol: 1e-9,
            parity_leak: 1e-12,
            parity_radius: 12,
        }
    }
}

/// Estimate of the Plancherel mass `π({α}) = 1 / Σ h|α|²`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointMassEstimate {
    pub n: usize,
    /// `1 / s_∞` when the ℓ² series converges, otherwise 0.
    pub value: f64,
    pub convergent: bool,
    pub divergent: bool,
    /// Neither convergent nor divergent under the window test.
    pub inconclusive: bool,
    pub summability: Summability,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayVerdict {
    Decays,
    BoundedAway,
    Inconclusive,
}

/// Evidence on whether `α` vanishes at infinity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct C0Report {
    pub n: usize,
    pub verdict: DecayVerdict,
    /// `max |α|` over levels in `[N/2, N]`.
    pub tail_max: f64,
    /// Fitted log-log slope of the running-max envelope over `[N/2, N]`.
    pub slope: f64,
    /// Known asymptotic exponent, which takes precedence over the fit.
    pub closed_form_slope: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// `α ≡ 1`; every commutative hypergroup is amenable.
    TrivialCharacter { window: usize },
    /// `α = (-1)^level` on a parity-graded table: `f ↦ αf` carries a
    /// 1-mean to an α-mean.
    ParityTwist { window: usize, leak: f64 },
    /// `α ∈ ℓ¹(h) ∩ ℓ²(h)`; `m(f) = ⟨f, α⟩ / ‖α‖₂²` is an α-mean.
    L2Mean { point_mass: f64, l1_sum: f64 },
    /// A solved Reiter program (summary; see [`super::ReiterCertificate`]).
    Reiter {
        epsilon: f64,
        bound: f64,
        support: usize,
        compact: usize,
    },
}

/// Why `α` admits no α-mean: `α ∈ C₀` and `α ∉ ℓ¹(h)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub point_mass: f64,
    pub c0_slope: f64,
    pub tail_max: f64,
    pub l1_divergent: bool,
    pub l2_divergent: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Diagnostics {
    pub reason: String,
    pub point_mass: PointMassEstimate,
    pub c0: C0Report,
    pub l1: Summability,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    Amenable { certificate: Certificate },
    NotAmenable { witness: Witness },
    Inconclusive { report: Box<Diagnostics> },
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Amenable { .. } => "Amenable",
            Verdict::NotAmenable { .. } => "NotAmenable",
            Verdict::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn is_amenable(&self) -> bool {
        matches!(self, Verdict::Amenable { .. })
    }

    pub fn is_not_amenable(&self) -> bool {
        matches!(self, Verdict::NotAmenable { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Verdict::Inconclusive { .. })
    }
}

/// Verdict with its evaluation point and thresholds, as emitted per point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Classification {
    pub x: serde_json::Value,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub thresholds: Thresholds,
}
