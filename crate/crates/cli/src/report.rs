//! Serializable report shapes for the JSON output format.

use serde::Serialize;

/// Echo of the flags a command ran with (stringly typed to stay schema-stable).
#[derive(Debug, Serialize)]
pub struct ConfigEcho {
    pub command: String,
    pub flags: Vec<(String, String)>,
}

impl ConfigEcho {
    pub fn new(command: &str, flags: &[(&str, String)]) -> Self {
        Self {
            command: command.to_string(),
            flags: flags
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Numeric residual where the check has one (0.0 for exact checks).
    pub residual: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub config: ConfigEcho,
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

#[derive(Debug, Serialize)]
pub struct TableReport<Row: Serialize> {
    pub config: ConfigEcho,
    pub rows: Vec<Row>,
}

#[derive(Debug, Serialize)]
pub struct DensityRow {
    pub e: String,
    pub mu: String,
}

#[derive(Debug, Serialize)]
pub struct FigureRow {
    pub e: String,
    pub mu_n3: String,
    pub mu_n6: String,
    pub mu_n9: String,
}

#[derive(Debug, Serialize)]
pub struct OmegaRow {
    pub j: u64,
    pub omega: String,
    pub omega_float: f64,
    pub max_term_float: f64,
    pub cancellation_ratio: f64,
}

#[derive(Debug, Serialize)]
pub struct RichardsonReport {
    pub config: ConfigEcho,
    pub estimate: f64,
    pub reference: f64,
    pub abs_deviation: f64,
}

#[derive(Debug, Serialize)]
pub struct SaddleReport {
    pub config: ConfigEcho,
    pub alpha: f64,
    pub lambda0: f64,
    pub f_at_saddle: f64,
    pub f_second_at_saddle: f64,
    pub fprime_residual: f64,
    pub predicted_rate: f64,
    pub prefactor_alpha2: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct MonteCarloBin {
    pub bin_center: f64,
    pub empirical: f64,
    pub exact: String,
}

#[derive(Debug, Serialize)]
pub struct MonteCarloReport {
    pub config: ConfigEcho,
    pub sup_deviation: f64,
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    pub tolerance: f64,
    pub passed: bool,
    pub rows: Vec<MonteCarloBin>,
}
