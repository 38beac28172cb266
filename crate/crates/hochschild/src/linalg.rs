//! Exact rank, kernel dimension and image-membership over Q and prime
//! fields F_p.
//!
//! Characteristic 0 is handled by division-controlled integer elimination:
//! rows are combined by cross-multiplication with gcd pre-scaling and
//! renormalized by their content, so every division is exact and no
//! floating point appears anywhere. Characteristic p reduces entries into
//! residues first. Pivoting is deterministic: within the set of candidate
//! rows for a column, the first row in row-major order wins.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, Zero};

use crate::matrix::SparseIntMatrix;
use crate::{Error, Result};

/// The coefficient field: characteristic 0 (the rationals) or a prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::BadCharacteristic(characteristic));
        }
        Ok(FieldSpec { characteristic })
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::BadCharacteristic(p));
        }
        Ok(FieldSpec { characteristic: p })
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// Whether the characteristic divides `n` (characteristic 0 divides
    /// nothing).
    pub fn divides(&self, n: u64) -> bool {
        self.characteristic != 0 && n % self.characteristic == 0
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.characteristic)
    }
}

/// Rank of the matrix with entries reduced into the field.
pub fn rank(m: &SparseIntMatrix, field: FieldSpec) -> usize {
    match field.characteristic {
        0 => rank_char0(m, None).rank,
        p => eliminate_mod_p(rows_mod_p(m, p), m.cols(), p).rank,
    }
}

/// `columns - rank`.
pub fn kernel_dim(m: &SparseIntMatrix, field: FieldSpec) -> usize {
    m.cols() - rank(m, field)
}

/// Whether `m * x = target` has a solution over the field.
pub fn is_in_image(m: &SparseIntMatrix, target: &[BigInt], field: FieldSpec) -> Result<bool> {
    if target.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "target length {} vs {} rows",
            target.len(),
            m.rows()
        )));
    }
    // Augment with the target as an extra trailing column; the system is
    // consistent iff no eliminated row survives with support only there.
    let aug = m.cols();
    match field.characteristic {
        0 => Ok(!rank_char0_augmented(m, target).inconsistent),
        p => {
            let mut rows = rows_mod_p(m, p);
            for (r, v) in target.iter().enumerate() {
                let res = reduce_mod(v, p);
                if res != 0 {
                    row_for(&mut rows, r).push((aug, res));
                }
            }
            Ok(!eliminate_mod_p(rows, aug, p).inconsistent)
        }
    }
}

struct Outcome {
    rank: usize,
    inconsistent: bool,
}

// ---------------------------------------------------------------------------
// shared row plumbing

type Row<T> = (usize, Vec<(usize, T)>); // (original row index, sorted sparse row)

fn row_for<T>(rows: &mut Vec<Row<T>>, orig: usize) -> &mut Vec<(usize, T)> {
    if let Some(pos) = rows.iter().position(|(r, _)| *r == orig) {
        &mut rows[pos].1
    } else {
        rows.push((orig, Vec::new()));
        &mut rows.last_mut().unwrap().1
    }
}

fn bucket_rows<T>(rows: Vec<Row<T>>, ncols_total: usize) -> Vec<Vec<Row<T>>> {
    let mut buckets: Vec<Vec<Row<T>>> = (0..=ncols_total).map(|_| Vec::new()).collect();
    for row in rows {
        if let Some(&(lead, _)) = row.1.first() {
            buckets[lead].push(row);
        }
    }
    buckets
}

// ---------------------------------------------------------------------------
// characteristic p

fn reduce_mod(v: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let mut r = v % &p_big;
    if r.sign() == num_bigint::Sign::Minus {
        r += &p_big;
    }
    let (_, digits) = r.to_u64_digits();
    match digits.as_slice() {
        [] => 0,
        [d] => *d,
        _ => unreachable!("residue below p fits one digit"),
    }
}

fn rows_mod_p(m: &SparseIntMatrix, p: u64) -> Vec<Row<u64>> {
    let mut rows: Vec<Row<u64>> = Vec::new();
    let mut current: Option<usize> = None;
    for (r, c, v) in m.entries() {
        let res = reduce_mod(v, p);
        if res == 0 {
            continue;
        }
        if current != Some(r) {
            rows.push((r, Vec::new()));
            current = Some(r);
        }
        rows.last_mut().unwrap().1.push((c, res));
    }
    rows
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn combine_mod_p(row: &[(usize, u64)], piv: &[(usize, u64)], factor: u64, p: u64) -> Vec<(usize, u64)> {
    // row - factor * piv
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let take_row = j >= piv.len() || (i < row.len() && row[i].0 < piv[j].0);
        let take_piv = i >= row.len() || (j < piv.len() && piv[j].0 < row[i].0);
        if take_row {
            out.push(row[i]);
            i += 1;
        } else if take_piv {
            let v = (p - mod_mul(factor, piv[j].1, p)) % p;
            if v != 0 {
                out.push((piv[j].0, v));
            }
            j += 1;
        } else {
            let v = (row[i].1 + p - mod_mul(factor, piv[j].1, p)) % p;
            if v != 0 {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn eliminate_mod_p(rows: Vec<Row<u64>>, ncols: usize, p: u64) -> Outcome {
    let mut buckets = bucket_rows(rows, ncols);
    let mut rank = 0;
    for col in 0..ncols {
        let mut here = std::mem::take(&mut buckets[col]);
        if here.is_empty() {
            continue;
        }
        let piv_pos = here
            .iter()
            .enumerate()
            .min_by_key(|(_, (orig, _))| *orig)
            .map(|(i, _)| i)
            .unwrap();
        let (_, piv) = here.swap_remove(piv_pos);
        rank += 1;
        let piv_inv = mod_inv(piv[0].1, p);
        for (orig, row) in here {
            let factor = mod_mul(row[0].1, piv_inv, p);
            let new = combine_mod_p(&row, &piv, factor, p);
            if let Some(&(lead, _)) = new.first() {
                buckets[lead].push((orig, new));
            }
        }
    }
    let inconsistent = !buckets[ncols].is_empty();
    Outcome { rank, inconsistent }
}

// ---------------------------------------------------------------------------
// characteristic 0

fn combine_char0<T>(row: &[(usize, T)], piv: &[(usize, T)]) -> Option<Vec<(usize, T)>>
where
    T: Integer + Signed + Clone + CheckedAdd + CheckedSub + CheckedMul,
{
    // a * row - b * piv with a = piv_lead/g, b = row_lead/g; the shared
    // leading column cancels exactly.
    let g = piv[0].1.gcd(&row[0].1);
    let a = piv[0].1.clone() / g.clone();
    let b = row[0].1.clone() / g;
    let mut out: Vec<(usize, T)> = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let take_row = j >= piv.len() || (i < row.len() && row[i].0 < piv[j].0);
        let take_piv = i >= row.len() || (j < piv.len() && piv[j].0 < row[i].0);
        if take_row {
            out.push((row[i].0, a.checked_mul(&row[i].1)?));
            i += 1;
        } else if take_piv {
            let v = T::zero().checked_sub(&b.checked_mul(&piv[j].1)?)?;
            out.push((piv[j].0, v));
            j += 1;
        } else {
            let v = a
                .checked_mul(&row[i].1)?
                .checked_sub(&b.checked_mul(&piv[j].1)?)?;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    // Content renormalization keeps entries small; the division is exact.
    if let Some(first) = out.first() {
        let mut content = first.1.abs();
        for (_, v) in out.iter().skip(1) {
            if content.is_one() {
                break;
            }
            content = content.gcd(v);
        }
        if !content.is_one() {
            for (_, v) in out.iter_mut() {
                *v = v.clone() / content.clone();
            }
        }
    }
    Some(out)
}

fn eliminate_char0<T>(rows: Vec<Row<T>>, ncols: usize) -> Option<Outcome>
where
    T: Integer + Signed + Clone + CheckedAdd + CheckedSub + CheckedMul,
{
    let mut buckets = bucket_rows(rows, ncols);
    let mut rank = 0;
    for col in 0..ncols {
        let mut here = std::mem::take(&mut buckets[col]);
        if here.is_empty() {
            continue;
        }
        let piv_pos = here
            .iter()
            .enumerate()
            .min_by_key(|(_, (orig, _))| *orig)
            .map(|(i, _)| i)
            .unwrap();
        let (_, piv) = here.swap_remove(piv_pos);
        rank += 1;
        for (orig, row) in here {
            let new = combine_char0(&row, &piv)?;
            if let Some(&(lead, _)) = new.first() {
                buckets[lead].push((orig, new));
            }
        }
    }
    let inconsistent = !buckets[ncols].is_empty();
    Some(Outcome { rank, inconsistent })
}

fn rows_i128(m: &SparseIntMatrix, target: Option<&[BigInt]>) -> Option<Vec<Row<i128>>> {
    let mut rows: Vec<Row<i128>> = Vec::new();
    let mut current: Option<usize> = None;
    for (r, c, v) in m.entries() {
        let small: i128 = v.try_into().ok()?;
        if current != Some(r) {
            rows.push((r, Vec::new()));
            current = Some(r);
        }
        rows.last_mut().unwrap().1.push((c, small));
    }
    if let Some(t) = target {
        for (r, v) in t.iter().enumerate() {
            if !v.is_zero() {
                let small: i128 = v.try_into().ok()?;
                row_for(&mut rows, r).push((m.cols(), small));
            }
        }
    }
    Some(rows)
}

fn rows_big(m: &SparseIntMatrix, target: Option<&[BigInt]>) -> Vec<Row<BigInt>> {
    let mut rows: Vec<Row<BigInt>> = Vec::new();
    let mut current: Option<usize> = None;
    for (r, c, v) in m.entries() {
        if current != Some(r) {
            rows.push((r, Vec::new()));
            current = Some(r);
        }
        rows.last_mut().unwrap().1.push((c, v.clone()));
    }
    if let Some(t) = target {
        for (r, v) in t.iter().enumerate() {
            if !v.is_zero() {
                row_for(&mut rows, r).push((m.cols(), v.clone()));
            }
        }
    }
    rows
}

fn rank_char0(m: &SparseIntMatrix, target: Option<&[BigInt]>) -> Outcome {
    if let Some(rows) = rows_i128(m, target) {
        if let Some(outcome) = eliminate_char0(rows, m.cols()) {
            return outcome;
        }
    }
    // i128 overflowed somewhere; redo with arbitrary precision.
    eliminate_char0(rows_big(m, target), m.cols()).expect("BigInt elimination cannot overflow")
}

fn rank_char0_augmented(m: &SparseIntMatrix, target: &[BigInt]) -> Outcome {
    rank_char0(m, Some(target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, t: Vec<(usize, usize, i64)>) -> SparseIntMatrix {
        SparseIntMatrix::from_triplets(rows, cols, t).unwrap()
    }

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(7).is_ok());
    }

    #[test]
    fn proportional_rows() {
        let m = mat(2, 2, vec![(0, 0, -1), (0, 1, 1), (1, 0, 1), (1, 1, -1)]);
        assert_eq!(rank(&m, q()), 1);
        assert_eq!(kernel_dim(&m, q()), 1);
    }

    #[test]
    fn scalar_two() {
        let m = mat(1, 1, vec![(0, 0, 2)]);
        assert_eq!(rank(&m, fp(2)), 0);
        assert_eq!(rank(&m, q()), 1);
        assert_eq!(kernel_dim(&m, fp(2)), 1);
    }

    #[test]
    fn empty_codomain_kernel() {
        let m = SparseIntMatrix::zero(0, 3);
        assert_eq!(kernel_dim(&m, q()), 3);
        assert_eq!(kernel_dim(&m, fp(5)), 3);
    }

    #[test]
    fn cyclic_2x2_prop2_case() {
        // e = 2, n = 3 => m = 1, r = 1: columns (2,1) and (1,2).
        let m = mat(2, 2, vec![(0, 0, 2), (1, 0, 1), (0, 1, 1), (1, 1, 2)]);
        assert_eq!(rank(&m, q()), 2);
        assert_eq!(rank(&m, fp(3)), 1);
    }

    #[test]
    fn image_membership() {
        // Image spanned by (-1, 1).
        let m = mat(2, 1, vec![(0, 0, -1), (1, 0, 1)]);
        let e1 = vec![BigInt::from(0), BigInt::from(1)];
        assert!(!is_in_image(&m, &e1, q()).unwrap());
        let col = vec![BigInt::from(-1), BigInt::from(1)];
        assert!(is_in_image(&m, &col, q()).unwrap());
        let zero = vec![BigInt::from(0), BigInt::from(0)];
        assert!(is_in_image(&m, &zero, q()).unwrap());
        // Over F_2 the signs collapse and (0,1) is still not reachable,
        // but (1,1) is.
        let ones = vec![BigInt::from(1), BigInt::from(1)];
        assert!(is_in_image(&m, &ones, fp(2)).unwrap());
    }

    #[test]
    fn image_membership_dimension_check() {
        let m = mat(2, 1, vec![(0, 0, 1)]);
        assert!(is_in_image(&m, &[BigInt::from(1)], q()).is_err());
    }
}
