//! Independent verification: cohomology of the reduced bar-type cochain
//! complex relative to the vertex subalgebra, and the center by
//! brute-force commutant. Neither construction touches the parallel-path
//! complex, so agreement is a genuine cross-check.
//!
//! Cochains in degree m are vertex-bimodule maps from the m-fold tensor
//! power (over the vertex algebra) of the radical into A; the
//! differential is the usual alternating sum of multiplication
//! insertions.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::linalg::{kernel_dim, rank, FieldSpec};
use crate::matrix::SparseIntMatrix;
use crate::quiver::{enumerate_paths, Path, Quiver};
use crate::{Error, Result};

pub const DEFAULT_DIM_BOUND: usize = 12;
pub const MAX_ORACLE_DEGREE: usize = 4;

/// The truncated algebra `kQ/k^nQ` on its path basis.
pub struct TruncatedAlgebra<'q> {
    q: &'q Quiver,
    n: usize,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl<'q> TruncatedAlgebra<'q> {
    pub fn new(q: &'q Quiver, n: usize, dim_bound: usize) -> Result<Self> {
        assert!(n >= 2);
        let mut basis = Vec::new();
        for len in 0..n {
            for u in 0..q.vertex_count() {
                for v in 0..q.vertex_count() {
                    basis.extend(enumerate_paths(q, len, u, v, dim_bound + 1)?);
                    if basis.len() > dim_bound {
                        return Err(Error::InvalidInput(format!(
                            "algebra too large for the oracle: dim A > {dim_bound}"
                        )));
                    }
                }
            }
        }
        basis.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Ok(TruncatedAlgebra { q, n, basis, index })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Product of two basis paths; `None` when it is zero in A.
    fn mult(&self, a: usize, b: usize) -> Option<usize> {
        let pa = &self.basis[a];
        let pb = &self.basis[b];
        if pa.len() + pb.len() >= self.n {
            return None;
        }
        let prod = pa.compose(self.q, pb)?;
        Some(self.index[&prod])
    }

    fn radical(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].len() >= 1).collect()
    }
}

/// A cochain basis element: a composable tuple of radical basis paths
/// together with a target basis path sharing its endpoints.
type Cochain = (Vec<usize>, usize);

struct CochainSpace {
    elems: Vec<Cochain>,
    index: HashMap<Cochain, usize>,
}

impl CochainSpace {
    fn new(elems: Vec<Cochain>) -> Self {
        let index = elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        CochainSpace { elems, index }
    }

    fn dim(&self) -> usize {
        self.elems.len()
    }
}

fn tensor_sequences(alg: &TruncatedAlgebra, m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let radical = alg.radical();
    let mut seqs: Vec<Vec<usize>> = radical.iter().map(|&r| vec![r]).collect();
    for _ in 1..m {
        let mut next = Vec::new();
        for seq in &seqs {
            let end = alg.basis[*seq.last().unwrap()].terminus(alg.q);
            for &r in &radical {
                if alg.basis[r].origin() == end {
                    let mut extended = seq.clone();
                    extended.push(r);
                    next.push(extended);
                }
            }
        }
        seqs = next;
    }
    seqs
}

fn cochain_space(alg: &TruncatedAlgebra, m: usize) -> CochainSpace {
    let mut elems = Vec::new();
    if m == 0 {
        // A^E: basis paths that are cycles (including trivial ones).
        for (i, p) in alg.basis.iter().enumerate() {
            if p.origin() == p.terminus(alg.q) {
                elems.push((Vec::new(), i));
            }
        }
        return CochainSpace::new(elems);
    }
    for seq in tensor_sequences(alg, m) {
        let o = alg.basis[seq[0]].origin();
        let t = alg.basis[*seq.last().unwrap()].terminus(alg.q);
        for (i, p) in alg.basis.iter().enumerate() {
            if p.origin() == o && p.terminus(alg.q) == t {
                elems.push((seq.clone(), i));
            }
        }
    }
    CochainSpace::new(elems)
}

/// All splits of a radical basis path into two radical basis paths whose
/// product is the path.
fn splits(alg: &TruncatedAlgebra, id: usize) -> Vec<(usize, usize)> {
    let p = &alg.basis[id];
    let mut out = Vec::new();
    for cut in 1..p.len() {
        let head = Path::from_arrows(alg.q, p.arrows()[..cut].to_vec()).unwrap();
        let tail = Path::from_arrows(alg.q, p.arrows()[cut..].to_vec()).unwrap();
        out.push((alg.index[&head], alg.index[&tail]));
    }
    out
}

/// The Hochschild differential `C^m -> C^{m+1}` on the relative reduced
/// complex.
fn differential(
    alg: &TruncatedAlgebra,
    domain: &CochainSpace,
    codomain: &CochainSpace,
    m: usize,
) -> Result<SparseIntMatrix> {
    let mut d = SparseIntMatrix::zero(codomain.dim(), domain.dim());
    let radical = alg.radical();
    let last_sign = if (m + 1) % 2 == 0 { 1 } else { -1 };
    for (col, (seq, z)) in domain.elems.iter().enumerate() {
        let seq_origin = if seq.is_empty() {
            alg.basis[*z].origin()
        } else {
            alg.basis[seq[0]].origin()
        };
        let seq_terminus = if seq.is_empty() {
            alg.basis[*z].terminus(alg.q)
        } else {
            alg.basis[*seq.last().unwrap()].terminus(alg.q)
        };
        // first insertion: +(p0 . f)(p0, seq)
        for &p0 in &radical {
            if alg.basis[p0].terminus(alg.q) != seq_origin {
                continue;
            }
            if let Some(y) = alg.mult(p0, *z) {
                let mut s = Vec::with_capacity(seq.len() + 1);
                s.push(p0);
                s.extend_from_slice(seq);
                let row = codomain.index[&(s, y)];
                d.add(row, col, BigInt::from(1))?;
            }
        }
        // last insertion: (-1)^{m+1} (f . pl)(seq, pl)
        for &pl in &radical {
            if alg.basis[pl].origin() != seq_terminus {
                continue;
            }
            if let Some(y) = alg.mult(*z, pl) {
                let mut s = seq.clone();
                s.push(pl);
                let row = codomain.index[&(s, y)];
                d.add(row, col, BigInt::from(last_sign))?;
            }
        }
        // inner multiplications: split entry idx of the tensor into two
        // factors; contracting them back is the (idx+1)-th face.
        for idx in 0..seq.len() {
            let sign = if (idx + 1) % 2 == 0 { 1 } else { -1 };
            for (u, v) in splits(alg, seq[idx]) {
                let mut s = Vec::with_capacity(seq.len() + 1);
                s.extend_from_slice(&seq[..idx]);
                s.push(u);
                s.push(v);
                s.extend_from_slice(&seq[idx + 1..]);
                let row = codomain.index[&(s, *z)];
                d.add(row, col, BigInt::from(sign))?;
            }
        }
    }
    Ok(d)
}

/// Oracle dimensions of `H^0..H^{max_degree}` from the relative reduced
/// bar complex.
pub fn dims_bar(
    q: &Quiver,
    n: usize,
    field: FieldSpec,
    max_degree: usize,
    dim_bound: usize,
) -> Result<Vec<u64>> {
    if max_degree > MAX_ORACLE_DEGREE {
        return Err(Error::InvalidInput(format!(
            "oracle degrees are capped at {MAX_ORACLE_DEGREE}"
        )));
    }
    let alg = TruncatedAlgebra::new(q, n, dim_bound)?;
    let spaces: Vec<CochainSpace> = (0..=max_degree + 1).map(|m| cochain_space(&alg, m)).collect();
    let ranks: Vec<usize> = (0..=max_degree)
        .map(|m| {
            let d = differential(&alg, &spaces[m], &spaces[m + 1], m)?;
            Ok(rank(&d, field))
        })
        .collect::<Result<_>>()?;
    let mut dims = Vec::new();
    for m in 0..=max_degree {
        let below = if m == 0 { 0 } else { ranks[m - 1] };
        dims.push((spaces[m].dim() - below - ranks[m]) as u64);
    }
    Ok(dims)
}

/// `dim Z(A)` by solving the commutant system over the path basis of A.
pub fn center_dim_bruteforce(
    q: &Quiver,
    n: usize,
    field: FieldSpec,
    dim_bound: usize,
) -> Result<usize> {
    let alg = TruncatedAlgebra::new(q, n, dim_bound)?;
    let dim = alg.dim();
    // Unknown z = sum z_p p; equations z a - a z = 0 for every basis path a.
    let mut system = SparseIntMatrix::zero(dim * dim, dim);
    for a in 0..dim {
        for p in 0..dim {
            if let Some(y) = alg.mult(p, a) {
                system.add(a * dim + y, p, BigInt::from(1))?;
            }
            if let Some(y) = alg.mult(a, p) {
                system.add(a * dim + y, p, BigInt::from(-1))?;
            }
        }
    }
    Ok(kernel_dim(&system, field))
}
