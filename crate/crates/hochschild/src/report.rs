//! Report types shared by the engines and the CLI.

use serde::Serialize;

/// Per-degree dimension with engine provenance.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DegreeDim {
    pub degree: usize,
    pub value: u64,
    pub engine: String,
}

/// Rank bookkeeping retained by the direct engine so rank-identity
/// cross-checks need no recomputation.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DegreeDetail {
    pub degree: usize,
    /// `dim M^m`.
    pub space_dim: u64,
    /// `rank d^m`.
    pub rank_in: u64,
    /// `dim Ker d^{m+1}`.
    pub kernel_out: u64,
}

/// Per-degree dimensions for one algebra over one field.
#[derive(Debug, Clone, Serialize)]
pub struct CohomologyReport {
    pub algebra: String,
    pub n: usize,
    pub characteristic: u64,
    pub engine: String,
    pub dims: Vec<DegreeDim>,
    /// Set when a cap overflow stopped computation before `max_degree`:
    /// the first degree whose dimension could not be computed.
    pub truncated_at: Option<usize>,
    pub details: Vec<DegreeDetail>,
    pub warnings: Vec<String>,
}

impl CohomologyReport {
    /// The dimension values in degree order.
    pub fn values(&self) -> Vec<u64> {
        self.dims.iter().map(|d| d.value).collect()
    }

    pub fn value(&self, degree: usize) -> Option<u64> {
        self.dims
            .iter()
            .find(|d| d.degree == degree)
            .map(|d| d.value)
    }
}
