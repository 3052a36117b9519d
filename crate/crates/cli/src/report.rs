//! Machine-readable reports. One JSON document per invocation; identical
//! inputs and seeds produce identical reports except for the timing field.

use serde::Serialize;

use etabound::algebra::Algebra;
use etabound::eta::{CheckOutcome, EtaEstimate};
use etabound::operators::{ClassificationReport, Positivity};
use etabound::selftest::SelfTestResult;

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<Algebra>,
    pub seed: u64,
    pub tol: f64,
    #[serde(flatten)]
    pub body: Body,
    pub timing_ms: u128,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Body {
    Eta { eta: EtaEstimate },
    Check { q: Vec<f64>, outcome: CheckBody },
    Classify { classification: ClassifyBody },
    Norm(NormBody),
    Vec { result: VecBody },
    SelfTest { suites: Vec<SuiteBody>, passed: bool },
}

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckBody {
    Pass { samples: usize },
    Witness { witness: WitnessBody },
}

#[derive(Serialize)]
pub struct WitnessBody {
    pub coords: Vec<f64>,
    /// Index of the worst partial sum and its two sides.
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Serialize)]
pub struct ClassifyBody {
    pub positivity: PositivityBody,
    pub is_ds: bool,
    pub is_dss: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar_ds: Option<f64>,
}

#[derive(Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PositivityBody {
    Certified { reason: String },
    Falsified { witness_coords: Vec<f64>, violation: f64 },
    Undetermined { samples: usize },
}

#[derive(Serialize)]
pub struct NormBody {
    pub r: String,
    pub s: String,
    pub lower: f64,
    pub upper: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holder: Option<HolderBody>,
}

#[derive(Serialize)]
pub struct HolderBody {
    pub p: String,
    pub status: String,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum VecBody {
    Vector(Vec<f64>),
    Bool(bool),
}

#[derive(Serialize)]
pub struct SuiteBody {
    pub name: &'static str,
    pub passed: bool,
    pub instances: usize,
    pub violations: usize,
}

impl From<&SelfTestResult> for SuiteBody {
    fn from(r: &SelfTestResult) -> Self {
        SuiteBody {
            name: r.name,
            passed: r.passed,
            instances: r.instances,
            violations: r.violations,
        }
    }
}

pub fn check_body(outcome: &CheckOutcome) -> CheckBody {
    match outcome {
        CheckOutcome::Pass { samples } => CheckBody::Pass { samples: *samples },
        CheckOutcome::Witness { x, k, lhs, rhs } => CheckBody::Witness {
            witness: WitnessBody { coords: x.coords().to_vec(), k: *k, lhs: *lhs, rhs: *rhs },
        },
    }
}

pub fn classify_body(report: &ClassificationReport) -> ClassifyBody {
    ClassifyBody {
        positivity: match &report.positivity {
            Positivity::Certified { reason } => {
                PositivityBody::Certified { reason: reason.clone() }
            }
            Positivity::Falsified { witness, violation } => PositivityBody::Falsified {
                witness_coords: witness.coords().to_vec(),
                violation: *violation,
            },
            Positivity::Undetermined { samples } => {
                PositivityBody::Undetermined { samples: *samples }
            }
        },
        is_ds: report.is_ds,
        is_dss: report.is_dss,
        scalar_ds: report.scalar_ds,
    }
}
