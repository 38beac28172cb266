//! The direct engine: `dim H^m = dim M^m - rank d^m - rank d^{m+1}`
//! with exact ranks taken from the materialized complex.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::complex::{assemble_differential, space_dim, ComplexSlice};
use crate::linalg::{kernel_dim, rank, FieldSpec};
use crate::quiver::{classify, Quiver, DEFAULT_PATH_CAP};
use crate::report::{CohomologyReport, DegreeDetail, DegreeDim};
use crate::{Error, Result};

pub const DEFAULT_MAX_DEGREE: usize = 8;

/// Builds the complex slices once and serves dimension reports for any
/// number of fields, caching ranks per characteristic.
pub struct DirectEngine<'q> {
    q: &'q Quiver,
    name: String,
    n: usize,
    max_degree: usize,
    /// `slices[m]` holds `d^{m+1}` for m in `0..=max_degree`; a cap error
    /// is recorded instead of a slice.
    slices: Vec<Result<ComplexSlice>>,
    space_dims: Vec<BigUint>,
    rank_cache: HashMap<(usize, u64), usize>,
    disconnected: bool,
}

impl<'q> DirectEngine<'q> {
    pub fn new(q: &'q Quiver, name: &str, n: usize, max_degree: usize, cap: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("truncation n must be >= 2, got {n}")));
        }
        let slices = (1..=max_degree + 1)
            .map(|m| assemble_differential(q, n, m, cap))
            .collect();
        let space_dims = (0..=max_degree).map(|m| space_dim(q, n, m)).collect();
        let disconnected = !classify(q).weakly_connected;
        Ok(DirectEngine {
            q,
            name: name.to_string(),
            n,
            max_degree,
            slices,
            space_dims,
            rank_cache: HashMap::new(),
            disconnected,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        self.q
    }

    /// The slice of `d^m`, if it was buildable under the cap.
    pub fn slice(&self, m: usize) -> Option<&ComplexSlice> {
        if m == 0 || m > self.max_degree + 1 {
            return None;
        }
        self.slices[m - 1].as_ref().ok()
    }

    /// `rank d^m` over the field; `d^0 = 0`.
    pub fn rank_d(&mut self, m: usize, field: FieldSpec) -> Option<usize> {
        if m == 0 {
            return Some(0);
        }
        let key = (m, field.characteristic());
        if let Some(&r) = self.rank_cache.get(&key) {
            return Some(r);
        }
        let slice = self.slices.get(m - 1)?.as_ref().ok()?;
        let r = rank(&slice.matrix, field);
        self.rank_cache.insert(key, r);
        Some(r)
    }

    /// Per-degree dimensions. A cap overflow at some slice truncates the
    /// report at the first affected degree.
    pub fn dims(&mut self, field: FieldSpec) -> CohomologyReport {
        let mut dims = Vec::new();
        let mut details = Vec::new();
        let mut warnings = Vec::new();
        let mut truncated_at = None;
        if self.disconnected {
            warnings.push(
                "quiver is not weakly connected; the complex is computed as literally defined"
                    .to_string(),
            );
        }
        for m in 0..=self.max_degree {
            let (rank_in, rank_out) = match (self.rank_d(m, field), self.rank_d(m + 1, field)) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    truncated_at = Some(m);
                    let failed = if self.rank_d(m, field).is_none() { m } else { m + 1 };
                    if let Some(Err(e)) = self.slices.get(failed - 1).map(|s| s.as_ref()) {
                        warnings.push(format!("degree {m} unavailable: {e}"));
                    }
                    break;
                }
            };
            let space: u64 = u64::try_from(&self.space_dims[m]).expect("space dimension fits u64");
            let value = space - rank_in as u64 - rank_out as u64;
            dims.push(DegreeDim {
                degree: m,
                value,
                engine: "direct".to_string(),
            });
            details.push(DegreeDetail {
                degree: m,
                space_dim: space,
                rank_in: rank_in as u64,
                kernel_out: space - rank_out as u64,
            });
        }
        CohomologyReport {
            algebra: self.name.clone(),
            n: self.n,
            characteristic: field.characteristic(),
            engine: "direct".to_string(),
            dims,
            truncated_at,
            details,
            warnings,
        }
    }
}

/// One-shot convenience wrapper around [`DirectEngine`].
pub fn dims_direct(
    q: &Quiver,
    n: usize,
    field: FieldSpec,
    max_degree: usize,
    cap: usize,
) -> Result<CohomologyReport> {
    let mut engine = DirectEngine::new(q, "quiver", n, max_degree, cap)?;
    Ok(engine.dims(field))
}

/// `dim Z(A) = dim Ker d^1` over the field.
pub fn center_dim(q: &Quiver, n: usize, field: FieldSpec, cap: usize) -> Result<usize> {
    let d1 = assemble_differential(q, n, 1, cap)?;
    Ok(kernel_dim(&d1.matrix, field))
}

/// Default-cap variant used by tests.
pub fn dims_direct_default(q: &Quiver, n: usize, field: FieldSpec, max_degree: usize) -> Vec<u64> {
    dims_direct(q, n, field, max_degree, DEFAULT_PATH_CAP)
        .expect("direct engine")
        .values()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn q0() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn l1_n2_char0() {
        assert_eq!(dims_direct_default(&corpus::l1(), 2, q0(), 4), vec![2, 1, 1, 1, 1]);
    }

    #[test]
    fn l1_n2_char2() {
        assert_eq!(dims_direct_default(&corpus::l1(), 2, fp(2), 4), vec![2, 2, 2, 2, 2]);
    }

    #[test]
    fn a2_n2() {
        assert_eq!(dims_direct_default(&corpus::a2(), 2, q0(), 4), vec![1, 0, 0, 0, 0]);
        assert_eq!(dims_direct_default(&corpus::a2(), 2, fp(5), 4), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn c2_n2_char0() {
        assert_eq!(dims_direct_default(&corpus::c2(), 2, q0(), 3), vec![1, 1, 1, 1]);
    }

    #[test]
    fn center_dims() {
        assert_eq!(center_dim(&corpus::l1(), 2, q0(), 200_000).unwrap(), 2);
        assert_eq!(center_dim(&corpus::c2(), 2, q0(), 200_000).unwrap(), 1);
        assert_eq!(center_dim(&corpus::th(), 2, q0(), 200_000).unwrap(), 1);
    }

    #[test]
    fn cap_overflow_truncates() {
        let q = corpus::th();
        // A tiny cap kills the degree-1 bases but leaves H^0 unavailable
        // too, because H^0 needs rank d^1.
        let mut engine = DirectEngine::new(&q, "TH", 2, 4, 1).unwrap();
        let report = engine.dims(q0());
        assert_eq!(report.truncated_at, Some(0));
        assert!(report.dims.is_empty());
        assert!(!report.warnings.is_empty());
    }
}
