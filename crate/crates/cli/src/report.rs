//! JSON run reports. Field order is fixed by the struct definitions.

use num_complex::Complex64;
use serde::Serialize;

use mldual::likelihood::{DataVector, MlDegreeReport};
use mldual::solver::CriticalPointSet;
use mldual::Budget;

use crate::FORMAT_VERSION;

#[derive(Clone, Debug, Serialize)]
pub struct Resources {
    pub time_limit_s: Option<f64>,
    pub max_basis: usize,
    pub max_coeff_bits: u64,
}

impl Resources {
    pub fn new(budget: &Budget, time_limit_s: Option<f64>) -> Self {
        Resources { time_limit_s, max_basis: budget.max_basis, max_coeff_bits: budget.max_coeff_bits }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DrawReport {
    pub data: Vec<String>,
    pub degree: usize,
    pub prime: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EliminantReport {
    pub variable: String,
    pub polynomial: String,
}

/// Complex numbers are written as `[re, im]`.
#[derive(Clone, Debug, Serialize)]
pub struct PointReport {
    pub p: Vec<[f64; 2]>,
    pub b: Vec<[f64; 2]>,
    pub b_unit: Vec<[f64; 2]>,
    pub log_likelihood: f64,
    pub log_dual_likelihood: f64,
    pub invariant_residual: f64,
    pub residual: f64,
    pub real: bool,
    pub positive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MleReport {
    pub index: usize,
    pub log_likelihood: f64,
    pub p: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub count: usize,
    pub degree: usize,
    pub all_squarefree: bool,
    pub max_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub format_version: u32,
    pub command: String,
    pub model: String,
    pub role: String,
    pub formulation: String,
    pub seed: u64,
    pub saturation: String,
    pub arithmetic: String,
    pub data: Vec<DrawReport>,
    pub ml_degree: usize,
    pub wall_time_s: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub eliminants: Vec<EliminantReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mle: Option<MleReport>,
    pub order_reversal: Option<bool>,
    pub resources: Resources,
    pub warnings: Vec<String>,
}

fn data_strings(u: &DataVector) -> Vec<String> {
    u.entries().iter().map(|x| x.to_string()).collect()
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub struct Header<'a> {
    pub command: &'a str,
    pub model: &'a str,
    pub role: &'a str,
    pub seed: u64,
    pub saturation: &'a str,
    pub arithmetic: &'a str,
    pub wall_time_s: f64,
    pub resources: Resources,
}

impl RunReport {
    pub fn ml_degree(h: Header<'_>, r: &MlDegreeReport) -> Self {
        RunReport {
            format_version: FORMAT_VERSION,
            command: h.command.into(),
            model: h.model.into(),
            role: h.role.into(),
            formulation: r.formulation.name().into(),
            seed: h.seed,
            saturation: h.saturation.into(),
            arithmetic: h.arithmetic.into(),
            data: r.draws.iter().map(|d| DrawReport { data: data_strings(&d.data), degree: d.degree, prime: d.prime }).collect(),
            ml_degree: r.degree,
            wall_time_s: h.wall_time_s,
            eliminants: Vec::new(),
            points: Vec::new(),
            certificate: None,
            mle: None,
            order_reversal: None,
            resources: h.resources,
            warnings: r.warnings.clone(),
        }
    }

    pub fn critical_points(h: Header<'_>, cps: &CriticalPointSet, warnings: Vec<String>) -> Self {
        let positive_data = cps.data.is_positive();
        RunReport {
            format_version: FORMAT_VERSION,
            command: h.command.into(),
            model: h.model.into(),
            role: h.role.into(),
            formulation: cps.formulation.name().into(),
            seed: h.seed,
            saturation: h.saturation.into(),
            arithmetic: h.arithmetic.into(),
            data: vec![DrawReport { data: data_strings(&cps.data), degree: cps.count, prime: None }],
            ml_degree: cps.count,
            wall_time_s: h.wall_time_s,
            eliminants: cps
                .eliminants
                .iter()
                .map(|(v, p)| EliminantReport { variable: v.clone(), polynomial: p.to_string() })
                .collect(),
            points: cps
                .points
                .iter()
                .map(|c| PointReport {
                    p: pairs(&c.p),
                    b: pairs(&c.b),
                    b_unit: pairs(&c.b_unit),
                    log_likelihood: c.log_likelihood,
                    log_dual_likelihood: c.log_dual_likelihood,
                    invariant_residual: c.invariant_residual,
                    residual: c.residual,
                    real: c.real,
                    positive: c.positive,
                })
                .collect(),
            certificate: cps.certificate.as_ref().map(|c| CertificateReport {
                count: c.count,
                degree: c.degree,
                all_squarefree: c.all_squarefree(),
                max_residual: c.max_residual,
            }),
            mle: if positive_data {
                cps.mle().map(|(i, v)| MleReport { index: i, log_likelihood: v, p: cps.points[i].p.iter().map(|z| z.re).collect() })
            } else {
                None
            },
            order_reversal: positive_data.then(|| cps.order_reversal_holds()),
            resources: h.resources,
            warnings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub model: String,
    pub expected: Option<usize>,
    pub ml_degree: Option<usize>,
    pub time_s: f64,
    /// `ok`, `mismatch`, `timeout`, `resource-limit` or `error`.
    pub status: String,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub format_version: u32,
    pub suite: String,
    pub formulation: String,
    pub seed: u64,
    pub arithmetic: String,
    pub budget_s: f64,
    pub rows: Vec<BenchRow>,
}
