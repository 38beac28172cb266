//! Finite-dimensionality of the cohomology algebra: the verdict is decided
//! by acyclicity, and the infinite case is certified by exhibiting an
//! explicit non-coboundary cocycle in degree 2re+1.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::{build_basis, build_odd_block};
use crate::linalg::{is_in_image, FieldSpec};
use crate::quiver::{classify, Path, Quiver};
use crate::{Error, Result};

/// Finiteness of `H^*(A)`, equivalent to `gl.dim A < infinity` and to the
/// quiver having no oriented cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FinitenessVerdict {
    Finite,
    Infinite { witness: Path },
}

pub fn decide_finiteness(q: &Quiver, _n: usize) -> FinitenessVerdict {
    let class = classify(q);
    match class.shortest_cycle {
        Some(witness) => FinitenessVerdict::Infinite { witness },
        None => FinitenessVerdict::Finite,
    }
}

/// Certify `H^{2re+1}(A) != 0` for a quiver with an oriented cycle:
/// the pair `(a_e, a_e w^{nr})` built from the shortest cycle
/// `w = a_1...a_e` lies outside the image of `d^{2re+1}_0`.
///
/// Returns true when the certificate holds (which the theory predicts for
/// every `r >= 0`).
pub fn witness_nonvanishing(
    q: &Quiver,
    n: usize,
    field: FieldSpec,
    r: usize,
    cap: usize,
) -> Result<bool> {
    let class = classify(q);
    let cycle = class.shortest_cycle.ok_or_else(|| {
        Error::InvalidInput("witness cocycles exist only for quivers with an oriented cycle".into())
    })?;
    let e = cycle.len();
    let last_arrow = Path::from_arrows(q, vec![*cycle.arrows().last().unwrap()])?;
    // a_e * w^{nr}
    let mut long = last_arrow.clone();
    for _ in 0..n * r {
        long = long.compose(q, &cycle).expect("w is a cycle at t(a_e)");
    }
    // d^{2re+1}_0 : k(0//nre) -> k(1//nre+1)
    let block = build_odd_block(q, n, r * e, 0, cap)?;
    let codomain = build_basis(q, 1, n * r * e + 1, cap)?;
    let target_idx = codomain
        .index_of(&last_arrow, &long)
        .expect("witness pair lies in (1//nre+1)");
    let mut target = vec![BigInt::zero(); codomain.len()];
    target[target_idx] = BigInt::one();
    Ok(!is_in_image(&block, &target, field)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::quiver::DEFAULT_PATH_CAP;

    const CAP: usize = DEFAULT_PATH_CAP;

    fn q0() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn verdicts() {
        assert_eq!(decide_finiteness(&corpus::a2(), 2), FinitenessVerdict::Finite);
        assert_eq!(decide_finiteness(&corpus::sc(), 3), FinitenessVerdict::Finite);
        match decide_finiteness(&corpus::th(), 2) {
            FinitenessVerdict::Infinite { witness } => {
                assert_eq!(witness.label(&corpus::th()), "ab")
            }
            other => panic!("expected infinite, got {other:?}"),
        }
    }

    #[test]
    fn witness_c2_r0() {
        assert!(witness_nonvanishing(&corpus::c2(), 2, q0(), 0, CAP).unwrap());
    }

    #[test]
    fn witness_l1_r0() {
        assert!(witness_nonvanishing(&corpus::l1(), 2, q0(), 0, CAP).unwrap());
    }

    #[test]
    fn witness_th_r1() {
        assert!(witness_nonvanishing(&corpus::th(), 2, q0(), 1, CAP).unwrap());
    }

    #[test]
    fn witness_needs_cycle() {
        assert!(witness_nonvanishing(&corpus::a2(), 2, q0(), 0, CAP).is_err());
    }
}
