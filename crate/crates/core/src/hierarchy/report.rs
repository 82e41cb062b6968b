use serde::Serialize;

use crate::series::Series;

/// Outcome of evaluating one equation on a truncated series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    pub id: String,
    /// Weight up to which the residual is exact.
    pub max_weight: i64,
    pub pass: bool,
    pub residual: Series,
}

impl ResidualReport {
    pub fn new(id: impl Into<String>, residual: Series, max_weight: i64) -> Self {
        ResidualReport { id: id.into(), max_weight, pass: residual.is_zero(), residual }
    }
}

impl std::fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.pass { "pass" } else { "FAIL" };
        write!(f, "{} {} (exact through weight {})", self.id, verdict, self.max_weight)?;
        if !self.pass {
            write!(f, ": residual {}", self.residual)?;
        }
        Ok(())
    }
}
