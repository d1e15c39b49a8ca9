//! Exact rational scalars and dense matrices.
//!
//! Every dimension count in the library reduces to a rank or kernel
//! computation here, so everything is done over Q with no floating point.
//! Rank uses fraction-free (Bareiss) elimination on integer rows obtained
//! by clearing denominators; kernels use plain rational RREF.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. `num_rational` keeps values in lowest terms
/// with a positive denominator, matching our invariants.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("denominator divisible by prime {0}; retry with another prime")]
    DenominatorDivisibleByPrime(u64),
}

/// Dense row-major matrix over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        RatMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rat>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            entries.extend(r.iter().cloned());
        }
        RatMatrix::new(nrows, ncols, entries)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<Rat>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect();
        Self::from_rows(&v)
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    if !self.at(i, j).is_zero() && !v[j].is_zero() {
                        acc += self.at(i, j) * &v[j];
                    }
                }
                acc
            })
            .collect()
    }
}

/// Clear denominators of one row, producing a primitive integer row.
fn integer_row(row: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row {
        lcm = lcm.lcm(x.denom());
    }
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Rank over Q by fraction-free (Bareiss) elimination on integer rows.
pub fn rank(m: &RatMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows).map(|i| integer_row(m.row(i))).collect();
    rank_int_rows(&mut a, m.cols)
}

fn rank_int_rows(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        // pick the pivot with smallest magnitude to limit growth
        let mut piv: Option<usize> = None;
        for (i, row) in a.iter().enumerate().skip(rank) {
            if !row[col].is_zero()
                && piv.is_none_or(|p| row[col].abs() < a[p][col].abs())
            {
                piv = Some(i);
            }
        }
        let Some(p) = piv else { continue };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = num / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Basis of the right kernel { v : m v = 0 }, via rational RREF.
/// Returns `cols - rank(m)` linearly independent column vectors.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let rows = m.rows;
    let cols = m.cols;
    let mut a: Vec<Vec<Rat>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut prow = 0usize;
    for col in 0..cols {
        let piv = (prow..rows).find(|&i| !a[i][col].is_zero());
        let Some(p) = piv else { continue };
        a.swap(prow, p);
        let inv = a[prow][col].recip();
        for j in col..cols {
            let x = &a[prow][j] * &inv;
            a[prow][j] = x;
        }
        for i in 0..rows {
            if i != prow && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..cols {
                    let x = &a[i][j] - &f * &a[prow][j];
                    a[i][j] = x;
                }
            }
        }
        pivot_cols.push(col);
        prow += 1;
        if prow == rows {
            break;
        }
    }
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; cols];
        for &c in &pivot_cols {
            s[c] = true;
        }
        s
    };
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (prow, &pcol) in pivot_cols.iter().enumerate() {
            v[pcol] = -a[prow][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Rank of the span of a list of coordinate vectors.
pub fn span_rank(vectors: &[Vec<Rat>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&RatMatrix::from_rows(vectors))
}

/// Rank of `m` reduced mod `prime`. A consistency probe only: the result
/// is a lower bound for the rank over Q, never the answer of record.
pub fn rank_modular_probe(m: &RatMatrix, prime: u64, _seed: u64) -> Result<usize, LinalgError> {
    assert!(prime > (1 << 20), "prime must exceed 2^20");
    let p = BigInt::from(prime);
    let mut a: Vec<Vec<u64>> = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut row = Vec::with_capacity(m.cols);
        for j in 0..m.cols {
            let x = m.at(i, j);
            let d = x.denom().mod_floor(&p);
            if d.is_zero() {
                return Err(LinalgError::DenominatorDivisibleByPrime(prime));
            }
            let n = x.numer().mod_floor(&p);
            let n: u64 = n.try_into().unwrap();
            let d: u64 = d.try_into().unwrap();
            row.push(mulmod(n, modinv(d, prime), prime));
        }
        a.push(row);
    }
    Ok(rank_mod_p(&mut a, m.cols, prime))
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn modinv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn rank_mod_p(a: &mut [Vec<u64>], cols: usize, p: u64) -> usize {
    let rows = a.len();
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = modinv(a[rank][col], p);
        for j in col..cols {
            a[rank][j] = mulmod(a[rank][j], inv, p);
        }
        for i in rank + 1..rows {
            if a[i][col] != 0 {
                let f = a[i][col];
                for j in col..cols {
                    let sub = mulmod(f, a[rank][j], p);
                    a[i][j] = (a[i][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solve `basis_rows^T c = target`, i.e. express `target` as a linear
/// combination of the given rows. Returns None if `target` is outside
/// the span.
pub fn express_in_span(basis_rows: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let k = basis_rows.len();
    let n = target.len();
    if k == 0 {
        return if target.iter().all(|x| x.is_zero()) {
            Some(vec![])
        } else {
            None
        };
    }
    // augmented system: columns are basis vectors, last column the target
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rat> = basis_rows.iter().map(|b| b[j].clone()).collect();
            row.push(target[j].clone());
            row
        })
        .collect();
    let rows = n;
    let cols = k + 1;
    let mut pivot_cols = Vec::new();
    let mut prow = 0usize;
    for col in 0..k {
        let Some(p) = (prow..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(prow, p);
        let inv = a[prow][col].recip();
        for j in col..cols {
            let x = &a[prow][j] * &inv;
            a[prow][j] = x;
        }
        for i in 0..rows {
            if i != prow && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..cols {
                    let x = &a[i][j] - &f * &a[prow][j];
                    a[i][j] = x;
                }
            }
        }
        pivot_cols.push(col);
        prow += 1;
    }
    // inconsistent iff some nonpivot row has nonzero target entry
    for row in a.iter().skip(prow) {
        if !row[k].is_zero() {
            return None;
        }
    }
    let mut c = vec![Rat::zero(); k];
    for (prow, &pcol) in pivot_cols.iter().enumerate() {
        c[pcol] = a[prow][k].clone();
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_identity() {
        assert_eq!(rank(&RatMatrix::identity(2)), 2);
    }

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(rank(&RatMatrix::zero(3, 4)), 0);
    }

    #[test]
    fn rank_mk4_rows() {
        let m = RatMatrix::from_i64(&[&[1, 1, 0, 0, 1], &[0, 0, 1, 1, 1]]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn kernel_identity_empty() {
        assert!(kernel_basis(&RatMatrix::identity(2)).is_empty());
    }

    #[test]
    fn kernel_single_row() {
        let m = RatMatrix::from_i64(&[&[1, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(k[0][0].is_zero());
        assert!(!k[0][1].is_zero());
    }

    #[test]
    fn kernel_repeated_rows() {
        let m = RatMatrix::from_i64(&[&[1, 0], &[1, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(k[0][0].is_zero());
        assert!(!k[0][1].is_zero());
    }

    #[test]
    fn modular_probe_identity() {
        let m = RatMatrix::identity(2);
        assert_eq!(rank_modular_probe(&m, 1_048_583, 0).unwrap(), 2);
    }

    #[test]
    fn modular_probe_zero() {
        let m = RatMatrix::zero(2, 3);
        assert_eq!(rank_modular_probe(&m, 1_048_583, 0).unwrap(), 0);
    }

    #[test]
    fn modular_probe_denominator_error() {
        let p = 1_048_583u64;
        let m = RatMatrix::new(
            1,
            1,
            vec![BigRational::new(BigInt::from(1), BigInt::from(p))],
        );
        assert_eq!(
            rank_modular_probe(&m, p, 0),
            Err(LinalgError::DenominatorDivisibleByPrime(p))
        );
    }

    #[test]
    fn express_in_span_basic() {
        let b = vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(1), rat_int(1)],
        ];
        let c = express_in_span(&b, &[rat_int(3), rat_int(2)]).unwrap();
        assert_eq!(c, vec![rat_int(1), rat_int(2)]);
        assert!(express_in_span(&b[..1], &[rat_int(0), rat_int(1)]).is_none());
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-20i64..20, 1i64..8).prop_map(|(n, d)| rat(n, d))
    }

    fn small_matrix() -> impl Strategy<Value = RatMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(small_rat(), r * c)
                .prop_map(move |e| RatMatrix::new(r, c, e))
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(m in small_matrix()) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn rank_nullity(m in small_matrix()) {
            prop_assert_eq!(rank(&m) + kernel_basis(&m).len(), m.cols);
        }

        #[test]
        fn kernel_vectors_annihilated(m in small_matrix()) {
            for v in kernel_basis(&m) {
                prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn modular_probe_lower_bound(m in small_matrix()) {
            let r = rank_modular_probe(&m, 1_048_583, 0).unwrap();
            prop_assert!(r <= rank(&m));
        }

        #[test]
        fn arithmetic_round_trips(a in small_rat(), b in small_rat()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a);
            }
        }
    }
}
