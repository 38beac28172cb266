//! The cochain complex of parallel-path spaces: ordered bases of the
//! `k(j//L)` summands and the sparse integer matrices of its differentials.
//!
//! `d^m` maps `M^{m-1} -> M^m`, with `d^0 = 0` and `H^m = Ker d^{m+1} / Im d^m`.
//! Odd differentials are built from subdiagonal blocks
//! `d^{2i+1}_j : k(j//ni) -> k(j+1//ni+1)`, even ones from the single corner
//! block `d^{2i}_0 : k(0//n(i-1)+1) -> k(n-1//ni)`.

use num_bigint::{BigInt, BigUint};

use crate::matrix::SparseIntMatrix;
use crate::quiver::{count_parallel, enumerate_paths, Path, Quiver};
use crate::{Error, Result};

/// The ordered set `(first_len // second_len)` of parallel path pairs,
/// serving as a basis of the vector space it spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelBasis {
    pub first_len: usize,
    pub second_len: usize,
    /// Pairs in lexicographic `(p, q)` order, no duplicates.
    pub pairs: Vec<(Path, Path)>,
}

impl ParallelBasis {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index_of(&self, p: &Path, q: &Path) -> Option<usize> {
        self.pairs
            .binary_search_by(|(a, b)| (a, b).cmp(&(p, q)))
            .ok()
    }
}

/// Build the canonical basis of `k(j//L)`.
pub fn build_basis(q: &Quiver, j: usize, l: usize, cap: usize) -> Result<ParallelBasis> {
    let total = count_parallel(q, j, l);
    if total > BigUint::from(cap) {
        return Err(Error::CapExceeded(format!(
            "basis ({j}//{l}) has {total} pairs, cap is {cap}"
        )));
    }
    let mut pairs = Vec::new();
    for u in 0..q.vertex_count() {
        for v in 0..q.vertex_count() {
            let firsts = enumerate_paths(q, j, u, v, cap)?;
            if firsts.is_empty() {
                continue;
            }
            let seconds = enumerate_paths(q, l, u, v, cap)?;
            for p in &firsts {
                for s in &seconds {
                    pairs.push((p.clone(), s.clone()));
                }
            }
        }
    }
    pairs.sort();
    debug_assert!(pairs.windows(2).all(|w| w[0] < w[1]));
    Ok(ParallelBasis {
        first_len: j,
        second_len: l,
        pairs,
    })
}

fn odd_block_into(
    q: &Quiver,
    domain: &ParallelBasis,
    codomain: &ParallelBasis,
    matrix: &mut SparseIntMatrix,
    row_offset: usize,
    col_offset: usize,
) -> Result<()> {
    for (col, (p, s)) in domain.pairs.iter().enumerate() {
        // + (ap, aq) for every arrow a into o(p)
        for &a in q.arrows_in(p.origin()) {
            let ap = p.prepend(q, a).expect("arrow composes into origin");
            let aq = s.prepend(q, a).expect("pair shares its origin");
            let row = codomain
                .index_of(&ap, &aq)
                .expect("odd-block image pair lies in the codomain basis");
            matrix.add(row_offset + row, col_offset + col, BigInt::from(1))?;
        }
        // - (pa, qa) for every arrow a out of t(p)
        for &a in q.arrows_out(p.terminus(q)) {
            let pa = p.append(q, a).expect("arrow composes out of terminus");
            let qa = s.append(q, a).expect("pair shares its terminus");
            let row = codomain
                .index_of(&pa, &qa)
                .expect("odd-block image pair lies in the codomain basis");
            matrix.add(row_offset + row, col_offset + col, BigInt::from(-1))?;
        }
    }
    Ok(())
}

/// Matrix of `d^{2i+1}_j : k(j//ni) -> k(j+1//ni+1)`.
///
/// Coefficients are accumulated in Z, so coincident image pairs cancel
/// before any field reduction.
pub fn build_odd_block(
    q: &Quiver,
    n: usize,
    i: usize,
    j: usize,
    cap: usize,
) -> Result<SparseIntMatrix> {
    let domain = build_basis(q, j, n * i, cap)?;
    let codomain = build_basis(q, j + 1, n * i + 1, cap)?;
    let mut m = SparseIntMatrix::zero(codomain.len(), domain.len());
    odd_block_into(q, &domain, &codomain, &mut m, 0, 0)?;
    Ok(m)
}

fn even_block_into(
    q: &Quiver,
    n: usize,
    domain: &ParallelBasis,
    codomain: &ParallelBasis,
    matrix: &mut SparseIntMatrix,
    row_offset: usize,
    col_offset: usize,
    cap: usize,
) -> Result<()> {
    for (col, (_, p)) in domain.pairs.iter().enumerate() {
        let v = p.origin();
        // All decompositions (s, q) with t(s) = o(p) = o(q) and
        // l(s) + l(q) = n - 1, including trivial s or q.
        for s_len in 0..n {
            let q_len = n - 1 - s_len;
            for u in 0..q.vertex_count() {
                for s in enumerate_paths(q, s_len, u, v, cap)? {
                    for w in 0..q.vertex_count() {
                        for tail in enumerate_paths(q, q_len, v, w, cap)? {
                            let sq = s.compose(q, &tail).expect("s ends where q starts");
                            let sp = s.compose(q, p).expect("s ends at o(p)");
                            let spq = sp.compose(q, &tail).expect("p is a cycle at o(q)");
                            let row = codomain
                                .index_of(&sq, &spq)
                                .expect("even-block image pair lies in the codomain basis");
                            matrix.add(row_offset + row, col_offset + col, BigInt::from(1))?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Matrix of `d^{2i}_0 : k(0//n(i-1)+1) -> k(n-1//ni)` for `i >= 1`.
///
/// Multiplicities accumulate; entries may exceed 1.
pub fn build_even_block(q: &Quiver, n: usize, i: usize, cap: usize) -> Result<SparseIntMatrix> {
    assert!(i >= 1, "even blocks exist for i >= 1");
    let domain = build_basis(q, 0, n * (i - 1) + 1, cap)?;
    let codomain = build_basis(q, n - 1, n * i, cap)?;
    let mut m = SparseIntMatrix::zero(codomain.len(), domain.len());
    even_block_into(q, n, &domain, &codomain, &mut m, 0, 0, cap)?;
    Ok(m)
}

/// One assembled differential `d^m : M^{m-1} -> M^m` together with the
/// ordered summand bases on both sides.
#[derive(Debug, Clone)]
pub struct ComplexSlice {
    pub degree: usize,
    pub domain: Vec<ParallelBasis>,
    pub codomain: Vec<ParallelBasis>,
    pub matrix: SparseIntMatrix,
}

impl ComplexSlice {
    pub fn domain_dim(&self) -> usize {
        self.domain.iter().map(ParallelBasis::len).sum()
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain.iter().map(ParallelBasis::len).sum()
    }

    /// Text dump with path-pair labels as row and column headers.
    pub fn dump(&self, q: &Quiver) -> String {
        let label = |b: &ParallelBasis| -> Vec<String> {
            b.pairs
                .iter()
                .map(|(p, s)| format!("({},{})", p.label(q), s.label(q)))
                .collect()
        };
        let col_labels: Vec<String> = self.domain.iter().flat_map(|b| label(b)).collect();
        let row_labels: Vec<String> = self.codomain.iter().flat_map(|b| label(b)).collect();
        let mut out = String::new();
        out.push_str(&format!(
            "d^{} : {} -> {}\n",
            self.degree,
            self.domain_dim(),
            self.codomain_dim()
        ));
        out.push_str(&format!("columns: {}\n", col_labels.join(" ")));
        for (r, rl) in row_labels.iter().enumerate() {
            let cells: Vec<String> = (0..self.matrix.cols())
                .map(|c| self.matrix.get(r, c).to_string())
                .collect();
            out.push_str(&format!("{rl}: {}\n", cells.join(" ")));
        }
        out
    }
}

/// Lengths `(j, L)` of the summands of `M^m`.
fn summand_shapes(n: usize, m: usize) -> Vec<(usize, usize)> {
    if m % 2 == 0 {
        let i = m / 2;
        (0..n).map(|j| (j, n * i)).collect()
    } else {
        let i = (m - 1) / 2;
        (0..n).map(|j| (j, n * i + 1)).collect()
    }
}

/// Summand dimensions of `M^m` by pure counting (never capped).
pub fn space_dims(q: &Quiver, n: usize, m: usize) -> Vec<BigUint> {
    summand_shapes(n, m)
        .into_iter()
        .map(|(j, l)| count_parallel(q, j, l))
        .collect()
}

/// Total dimension of `M^m`.
pub fn space_dim(q: &Quiver, n: usize, m: usize) -> BigUint {
    space_dims(q, n, m).into_iter().sum()
}

fn build_bases(q: &Quiver, n: usize, m: usize, cap: usize) -> Result<Vec<ParallelBasis>> {
    summand_shapes(n, m)
        .into_iter()
        .map(|(j, l)| build_basis(q, j, l, cap))
        .collect()
}

/// Assemble `d^m : M^{m-1} -> M^m` for `m >= 1`.
pub fn assemble_differential(q: &Quiver, n: usize, m: usize, cap: usize) -> Result<ComplexSlice> {
    assert!(m >= 1, "d^0 is the zero map and has no slice");
    assert!(n >= 2);
    let domain = build_bases(q, n, m - 1, cap)?;
    let codomain = build_bases(q, n, m, cap)?;
    let rows: usize = codomain.iter().map(ParallelBasis::len).sum();
    let cols: usize = domain.iter().map(ParallelBasis::len).sum();
    let mut matrix = SparseIntMatrix::zero(rows, cols);
    let row_offset = |j: usize| -> usize { codomain[..j].iter().map(ParallelBasis::len).sum() };
    let col_offset = |j: usize| -> usize { domain[..j].iter().map(ParallelBasis::len).sum() };
    if m % 2 == 1 {
        // Subdiagonal blocks: summand j of M^{m-1} -> summand j+1 of M^m;
        // summand n-1 maps to zero.
        for j in 0..n - 1 {
            odd_block_into(
                q,
                &domain[j],
                &codomain[j + 1],
                &mut matrix,
                row_offset(j + 1),
                col_offset(j),
            )?;
        }
    } else {
        // Single corner block: summand 0 of M^{m-1} -> summand n-1 of M^m.
        even_block_into(
            q,
            n,
            &domain[0],
            &codomain[n - 1],
            &mut matrix,
            row_offset(n - 1),
            0,
            cap,
        )?;
    }
    Ok(ComplexSlice {
        degree: m,
        domain,
        codomain,
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::quiver::DEFAULT_PATH_CAP;

    const CAP: usize = DEFAULT_PATH_CAP;

    fn labels(q: &Quiver, b: &ParallelBasis) -> Vec<(String, String)> {
        b.pairs
            .iter()
            .map(|(p, s)| (p.label(q), s.label(q)))
            .collect()
    }

    #[test]
    fn basis_c2_1_3() {
        let q = corpus::c2();
        let b = build_basis(&q, 1, 3, CAP).unwrap();
        assert_eq!(
            labels(&q, &b),
            vec![
                ("a".to_string(), "aba".to_string()),
                ("b".to_string(), "bab".to_string())
            ]
        );
    }

    #[test]
    fn basis_sc_1_3() {
        let q = corpus::sc();
        let b = build_basis(&q, 1, 3, CAP).unwrap();
        assert_eq!(labels(&q, &b), vec![("d".to_string(), "abc".to_string())]);
    }

    #[test]
    fn basis_l1_1_2() {
        let q = corpus::l1();
        let b = build_basis(&q, 1, 2, CAP).unwrap();
        assert_eq!(labels(&q, &b), vec![("x".to_string(), "xx".to_string())]);
    }

    #[test]
    fn odd_block_c2() {
        let q = corpus::c2();
        let m = build_odd_block(&q, 2, 0, 0, CAP).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert_eq!(m.get(0, 0), BigInt::from(-1));
        assert_eq!(m.get(0, 1), BigInt::from(1));
        assert_eq!(m.get(1, 0), BigInt::from(1));
        assert_eq!(m.get(1, 1), BigInt::from(-1));
    }

    #[test]
    fn odd_block_l1_cancels() {
        let q = corpus::l1();
        let m = build_odd_block(&q, 2, 0, 0, CAP).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert!(m.is_zero());
    }

    #[test]
    fn odd_block_th_column() {
        let q = corpus::th();
        let m = build_odd_block(&q, 2, 0, 0, CAP).unwrap();
        // codomain (1//1) ordered (a,a),(a,c),(b,b),(c,a),(c,c)
        assert_eq!((m.rows(), m.cols()), (5, 2));
        let col0: Vec<BigInt> = (0..5).map(|r| m.get(r, 0)).collect();
        let expect: Vec<BigInt> = [-1, 0, 1, 0, -1].into_iter().map(BigInt::from).collect();
        assert_eq!(col0, expect);
    }

    #[test]
    fn even_block_l1() {
        let q = corpus::l1();
        let m = build_even_block(&q, 2, 1, CAP).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert_eq!(m.get(0, 0), BigInt::from(2));

        let m3 = build_even_block(&q, 3, 1, CAP).unwrap();
        assert_eq!((m3.rows(), m3.cols()), (1, 1));
        assert_eq!(m3.get(0, 0), BigInt::from(3));
    }

    #[test]
    fn even_block_c2_empty() {
        let q = corpus::c2();
        let m = build_even_block(&q, 2, 1, CAP).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 0));
    }

    #[test]
    fn assemble_l1_degree2() {
        let q = corpus::l1();
        let s = assemble_differential(&q, 2, 2, CAP).unwrap();
        assert_eq!(s.domain_dim(), 2);
        assert_eq!(s.codomain_dim(), 2);
        assert_eq!(s.matrix.nnz(), 1);
        // row of (x,xx) = summand 1, col of (e,x) = summand 0
        assert_eq!(s.matrix.get(1, 0), BigInt::from(2));
    }

    #[test]
    fn assemble_a2_degree2() {
        let q = corpus::a2();
        let s = assemble_differential(&q, 2, 2, CAP).unwrap();
        assert_eq!(s.domain_dim(), 1);
        assert_eq!(s.codomain_dim(), 0);
        assert!(s.matrix.is_zero());
    }

    #[test]
    fn assemble_c2_degree1_matches_block() {
        let q = corpus::c2();
        let s = assemble_differential(&q, 2, 1, CAP).unwrap();
        let block = build_odd_block(&q, 2, 0, 0, CAP).unwrap();
        assert_eq!(s.matrix, block);
    }

    #[test]
    fn dump_has_labels() {
        let q = corpus::l1();
        let s = assemble_differential(&q, 2, 2, CAP).unwrap();
        let text = s.dump(&q);
        assert!(text.contains("(x,xx)"));
        assert!(text.contains("(e_1,x)"));
    }
}
