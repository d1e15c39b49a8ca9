//! Essential hyperplane arrangements presented by an r x n rational matrix,
//! together with the matroid layer: flats, closure, cocircuit vectors,
//! minors, truncation, and the Tutte polynomial.
//!
//! Columns are the linear forms cutting out the hyperplanes. Zero columns
//! (loops) and repeated columns (parallel elements) are allowed; the matrix
//! must have full row rank (essentialness).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{kernel_basis, rank, Rat, RatMatrix};

/// Default cap on ground set size for subset-enumeration operations.
pub const DEFAULT_ENUM_CAP: usize = 16;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("matrix has rank {actual} but {expected} rows; arrangement must be essential")]
    NotEssential { expected: usize, actual: usize },
    #[error("cannot contract a loop (element {0})")]
    ContractLoop(usize),
    #[error("ground set of size {0} exceeds the enumeration cap {1}")]
    GroundSetTooLarge(usize, usize),
    #[error("no certified-generic form found after {0} attempts")]
    GenericityFailure(usize),
    #[error("corank-nullity and deletion-contraction Tutte computations disagree")]
    InternalMismatch,
    #[error("parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },
}

/// An essential arrangement of `n` hyperplanes in a space of dimension `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    matrix: RatMatrix,
}

/// A closed subset of the ground set with its rank and a basis of the
/// subspace it cuts out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    pub members: u32,
    pub rk: usize,
    pub subspace_basis: Vec<Vec<Rat>>,
}

impl Flat {
    pub fn contains(&self, i: usize) -> bool {
        self.members >> i & 1 == 1
    }

    pub fn size(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn member_indices(&self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }
}

/// A primitive integer generator of a 1-dimensional flat subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocircuitVector {
    pub flat: Flat,
    pub v: Vec<Rat>,
    /// Number of hyperplanes not containing `v`; equals n - |F|.
    pub rho: usize,
}

impl Arrangement {
    pub fn new(matrix: RatMatrix) -> Result<Self, ArrangementError> {
        let r = matrix.rows;
        let actual = rank(&matrix);
        if actual != r {
            return Err(ArrangementError::NotEssential { expected: r, actual });
        }
        Ok(Arrangement { matrix })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, ArrangementError> {
        Self::new(RatMatrix::from_i64(rows))
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    /// Ambient dimension r.
    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    /// Ground set size n.
    pub fn ground_size(&self) -> usize {
        self.matrix.cols
    }

    /// The i-th linear form (column).
    pub fn form(&self, i: usize) -> Vec<Rat> {
        self.matrix.col(i)
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.form(i).iter().all(|x| x.is_zero())
    }

    pub fn is_coloop(&self, i: usize) -> bool {
        let mask = (full_mask(self.ground_size())) & !(1u32 << i);
        self.subset_rank(mask) < self.dim()
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.ground_size()).filter(|&i| self.is_loop(i)).collect()
    }

    pub fn coloops(&self) -> Vec<usize> {
        (0..self.ground_size()).filter(|&i| self.is_coloop(i)).collect()
    }

    /// Rank of the set of columns selected by `mask`.
    pub fn subset_rank(&self, mask: u32) -> usize {
        let cols: Vec<Vec<Rat>> = (0..self.ground_size())
            .filter(|&j| mask >> j & 1 == 1)
            .map(|j| self.form(j))
            .collect();
        crate::linalg::span_rank(&cols)
    }

    /// Smallest flat containing `mask`.
    pub fn closure(&self, mask: u32) -> Flat {
        let r = self.dim();
        let selected: Vec<Vec<Rat>> = (0..self.ground_size())
            .filter(|&j| mask >> j & 1 == 1)
            .map(|j| self.form(j))
            .collect();
        // L_F = common kernel of the selected forms
        let sub = if selected.is_empty() {
            RatMatrix::zero(0, r)
        } else {
            RatMatrix::from_rows(&selected)
        };
        let basis = kernel_basis(&sub);
        let mut members = 0u32;
        for j in 0..self.ground_size() {
            let a = self.form(j);
            let vanishes = basis
                .iter()
                .all(|w| dot(&a, w).is_zero());
            if vanishes {
                members |= 1 << j;
            }
        }
        Flat {
            members,
            rk: r - basis.len(),
            subspace_basis: basis,
        }
    }

    /// All flats, sorted by (rank, bitmask). Includes cl(empty set) and E.
    pub fn flats(&self) -> Result<Vec<Flat>, ArrangementError> {
        self.flats_with_cap(DEFAULT_ENUM_CAP)
    }

    pub fn flats_with_cap(&self, cap: usize) -> Result<Vec<Flat>, ArrangementError> {
        let n = self.ground_size();
        if n > cap {
            return Err(ArrangementError::GroundSetTooLarge(n, cap));
        }
        let mut seen: BTreeMap<u32, Flat> = BTreeMap::new();
        for mask in 0..(1u64 << n) as u64 {
            let f = self.closure(mask as u32);
            seen.entry(f.members).or_insert(f);
        }
        let mut flats: Vec<Flat> = seen.into_values().collect();
        flats.sort_by_key(|f| (f.rk, f.members));
        Ok(flats)
    }

    /// Proper flats (everything except the full ground set E).
    pub fn proper_flats(&self) -> Result<Vec<Flat>, ArrangementError> {
        let full = full_mask(self.ground_size());
        Ok(self.flats()?.into_iter().filter(|f| f.members != full).collect())
    }

    /// One primitive generator per rank r-1 flat.
    pub fn cocircuit_vectors(&self) -> Result<Vec<CocircuitVector>, ArrangementError> {
        let r = self.dim();
        assert!(r >= 1, "cocircuit vectors need r >= 1");
        let n = self.ground_size();
        let mut out = Vec::new();
        for flat in self.flats()? {
            if flat.rk != r - 1 {
                continue;
            }
            let v = primitive(&flat.subspace_basis[0]);
            let rho = n - flat.size();
            let incident = (0..n)
                .filter(|&i| !dot(&self.form(i), &v).is_zero())
                .count();
            assert_eq!(rho, incident, "rho bookkeeping mismatch");
            out.push(CocircuitVector { flat, v, rho });
        }
        Ok(out)
    }

    /// Delete element i and re-essentialize. The ambient dimension drops
    /// exactly when i is a coloop.
    pub fn deletion(&self, i: usize) -> Arrangement {
        let cols: Vec<Vec<Rat>> = (0..self.ground_size())
            .filter(|&j| j != i)
            .map(|j| self.form(j))
            .collect();
        essentialize(self.dim(), &cols)
    }

    /// Restrict to the hyperplane H_i; coordinates are given by a kernel
    /// basis of the i-th form (see [`Arrangement::contraction_basis`]).
    pub fn contraction(&self, i: usize) -> Result<Arrangement, ArrangementError> {
        if self.is_loop(i) {
            return Err(ArrangementError::ContractLoop(i));
        }
        let basis = self.contraction_basis(i);
        let cols: Vec<Vec<Rat>> = (0..self.ground_size())
            .filter(|&j| j != i)
            .map(|j| restrict_form(&self.form(j), &basis))
            .collect();
        let m = cols_to_matrix(self.dim() - 1, &cols);
        Ok(Arrangement::new(m).expect("contraction of essential arrangement is essential"))
    }

    /// The kernel basis of the i-th form used to present the contraction.
    pub fn contraction_basis(&self, i: usize) -> Vec<Vec<Rat>> {
        kernel_basis(&RatMatrix::from_rows(&[self.form(i)]))
    }

    /// Keep only the columns in `mask` and re-essentialize.
    pub fn restriction_to(&self, mask: u32) -> Arrangement {
        let cols: Vec<Vec<Rat>> = (0..self.ground_size())
            .filter(|&j| mask >> j & 1 == 1)
            .map(|j| self.form(j))
            .collect();
        essentialize(self.dim(), &cols)
    }

    /// Cut by a certified-generic hyperplane ker(f). Returns the truncated
    /// arrangement, the form f, and the kernel basis of f giving its
    /// coordinates. Retries with fresh randomness until the rank
    /// certificate rk_TL(A) = min(rk_L(A), r-1) holds for all subsets.
    pub fn truncation(
        &self,
        seed: u64,
    ) -> Result<(Arrangement, Vec<Rat>, Vec<Vec<Rat>>), ArrangementError> {
        let r = self.dim();
        assert!(r >= 1, "truncation needs r >= 1");
        let n = self.ground_size();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        const ATTEMPTS: usize = 64;
        for _ in 0..ATTEMPTS {
            let f: Vec<Rat> = (0..r)
                .map(|_| Rat::from_integer(BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000))))
                .collect();
            if f.iter().all(|x| x.is_zero()) {
                continue;
            }
            let basis = kernel_basis(&RatMatrix::from_rows(&[f.clone()]));
            let cols: Vec<Vec<Rat>> = (0..n)
                .map(|j| restrict_form(&self.form(j), &basis))
                .collect();
            let m = cols_to_matrix(r - 1, &cols);
            if rank(&m) != r - 1 {
                continue;
            }
            let tl = Arrangement { matrix: m };
            let certified = (0..(1u64 << n)).all(|mask| {
                let mask = mask as u32;
                tl.subset_rank(mask) == self.subset_rank(mask).min(r - 1)
            });
            if certified {
                return Ok((tl, f, basis));
            }
        }
        Err(ArrangementError::GenericityFailure(ATTEMPTS))
    }

    /// Tutte polynomial, computed by corank-nullity summation and by
    /// deletion-contraction; the two must agree.
    pub fn tutte(&self) -> Result<TuttePoly, ArrangementError> {
        let n = self.ground_size();
        if n > DEFAULT_ENUM_CAP {
            return Err(ArrangementError::GroundSetTooLarge(n, DEFAULT_ENUM_CAP));
        }
        let a = self.tutte_corank_nullity();
        let b = self.tutte_deletion_contraction();
        if a != b {
            return Err(ArrangementError::InternalMismatch);
        }
        Ok(a)
    }

    fn tutte_corank_nullity(&self) -> TuttePoly {
        let n = self.ground_size();
        let r = self.dim();
        let xm1 = TuttePoly::x() - TuttePoly::one();
        let ym1 = TuttePoly::y() - TuttePoly::one();
        let mut acc = TuttePoly::zero();
        for mask in 0..(1u64 << n) {
            let mask = mask as u32;
            let rk = self.subset_rank(mask);
            let sz = mask.count_ones() as usize;
            acc = acc + xm1.pow(r - rk) * ym1.pow(sz - rk);
        }
        acc
    }

    fn tutte_deletion_contraction(&self) -> TuttePoly {
        let n = self.ground_size();
        if n == 0 {
            return TuttePoly::one();
        }
        for i in 0..n {
            if !self.is_loop(i) && !self.is_coloop(i) {
                let del = self.deletion(i).tutte_deletion_contraction();
                let con = self
                    .contraction(i)
                    .expect("non-loop")
                    .tutte_deletion_contraction();
                return del + con;
            }
        }
        // only loops and coloops remain
        let coloops = self.coloops().len();
        let loops = self.loops().len();
        TuttePoly::x().pow(coloops) * TuttePoly::y().pow(loops)
    }

    /// Beta invariant t_{1,0}.
    pub fn beta(&self) -> Result<i64, ArrangementError> {
        Ok(self.tutte()?.coeff(1, 0))
    }

    pub fn dual_tutte(&self) -> Result<TuttePoly, ArrangementError> {
        Ok(self.tutte()?.swap_vars())
    }

    /// Parse the plain-text format: first line `r n`, then r rows of n
    /// rationals (`p/q` or integers); `#` starts a comment line.
    pub fn from_text(text: &str) -> Result<Self, ArrangementError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            });
        let (hline, header) = lines.next().ok_or(ArrangementError::ParseError {
            line: 1,
            msg: "empty input".into(),
        })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(ArrangementError::ParseError {
                line: hline + 1,
                msg: "expected header `r n`".into(),
            });
        }
        let parse_dim = |s: &str| {
            s.parse::<usize>().map_err(|_| ArrangementError::ParseError {
                line: hline + 1,
                msg: format!("bad dimension `{s}`"),
            })
        };
        let r = parse_dim(dims[0])?;
        let n = parse_dim(dims[1])?;
        let mut rows = Vec::with_capacity(r);
        for _ in 0..r {
            let (lno, line) = lines.next().ok_or(ArrangementError::ParseError {
                line: hline + 1,
                msg: format!("expected {r} matrix rows"),
            })?;
            let entries: Vec<Rat> = line
                .split_whitespace()
                .map(|tok| parse_rat(tok).ok_or(ArrangementError::ParseError {
                    line: lno + 1,
                    msg: format!("bad rational `{tok}`"),
                }))
                .collect::<Result<_, _>>()?;
            if entries.len() != n {
                return Err(ArrangementError::ParseError {
                    line: lno + 1,
                    msg: format!("expected {n} entries, found {}", entries.len()),
                });
            }
            rows.push(entries);
        }
        Self::new(RatMatrix::from_rows(&rows))
    }

    /// Parse the JSON alternative:
    /// `{"rows": r, "cols": n, "entries": [["1","1/2",...],...]}`.
    pub fn from_json(text: &str) -> Result<Self, ArrangementError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| ArrangementError::ParseError {
                line: e.line(),
                msg: e.to_string(),
            })?;
        let bad = |msg: &str| ArrangementError::ParseError {
            line: 0,
            msg: msg.to_string(),
        };
        let r = v["rows"].as_u64().ok_or(bad("missing `rows`"))? as usize;
        let n = v["cols"].as_u64().ok_or(bad("missing `cols`"))? as usize;
        let entries = v["entries"].as_array().ok_or(bad("missing `entries`"))?;
        if entries.len() != r {
            return Err(bad("entry row count does not match `rows`"));
        }
        let mut rows = Vec::with_capacity(r);
        for row in entries {
            let row = row.as_array().ok_or(bad("entries must be arrays"))?;
            if row.len() != n {
                return Err(bad("entry column count does not match `cols`"));
            }
            let parsed: Vec<Rat> = row
                .iter()
                .map(|x| {
                    x.as_str()
                        .and_then(parse_rat)
                        .ok_or(bad("entries must be rational strings"))
                })
                .collect::<Result<_, _>>()?;
            rows.push(parsed);
        }
        Self::new(RatMatrix::from_rows(&rows))
    }
}

pub fn full_mask(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        (1u64 << n) as u32 - 1
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

fn parse_rat(tok: &str) -> Option<Rat> {
    if let Some((num, den)) = tok.split_once('/') {
        let n: BigInt = num.parse().ok()?;
        let d: BigInt = den.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n: BigInt = tok.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

/// Scale a rational vector to a primitive integer vector with positive
/// leading entry.
pub fn primitive(v: &[Rat]) -> Vec<Rat> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    let lead_neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let scale = if lead_neg { -gcd } else { gcd };
    ints.iter()
        .map(|x| Rat::from_integer(x / &scale))
        .collect()
}

fn restrict_form(a: &[Rat], basis: &[Vec<Rat>]) -> Vec<Rat> {
    basis.iter().map(|w| dot(a, w)).collect()
}

fn cols_to_matrix(r: usize, cols: &[Vec<Rat>]) -> RatMatrix {
    let n = cols.len();
    let mut m = RatMatrix::zero(r, n);
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            *m.at_mut(i, j) = x.clone();
        }
    }
    m
}

/// Present the span of the given forms in coordinates on a complement of
/// their common kernel. Keeps coordinates unchanged when the forms
/// already span (the common kernel is zero).
fn essentialize(r: usize, cols: &[Vec<Rat>]) -> Arrangement {
    let rows: Vec<Vec<Rat>> = cols.to_vec();
    let sub = if rows.is_empty() {
        RatMatrix::zero(0, r)
    } else {
        RatMatrix::from_rows(&rows)
    };
    let common_kernel = kernel_basis(&sub);
    if common_kernel.is_empty() {
        return Arrangement::new(cols_to_matrix(r, cols))
            .expect("forms span the dual space");
    }
    // orthogonal complement of the common kernel (the dot product is
    // positive definite over Q, so this is a genuine complement)
    let complement = kernel_basis(&RatMatrix::from_rows(&common_kernel));
    let new_cols: Vec<Vec<Rat>> = cols.iter().map(|a| restrict_form(a, &complement)).collect();
    Arrangement::new(cols_to_matrix(complement.len(), &new_cols))
        .expect("restriction to a complement of the common kernel is essential")
}

/// Finitely supported Tutte polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TuttePoly {
    coeffs: BTreeMap<(usize, usize), i64>,
}

impl TuttePoly {
    pub fn zero() -> Self {
        TuttePoly::default()
    }

    pub fn one() -> Self {
        TuttePoly::monomial(0, 0, 1)
    }

    pub fn x() -> Self {
        TuttePoly::monomial(1, 0, 1)
    }

    pub fn y() -> Self {
        TuttePoly::monomial(0, 1, 1)
    }

    pub fn monomial(i: usize, j: usize, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert((i, j), c);
        }
        TuttePoly { coeffs }
    }

    pub fn coeff(&self, i: usize, j: usize) -> i64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &BTreeMap<(usize, usize), i64> {
        &self.coeffs
    }

    pub fn swap_vars(&self) -> TuttePoly {
        let coeffs = self.coeffs.iter().map(|(&(i, j), &c)| ((j, i), c)).collect();
        TuttePoly { coeffs }
    }

    pub fn pow(&self, e: usize) -> TuttePoly {
        let mut acc = TuttePoly::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn eval_i64(&self, x: i64, y: i64) -> i64 {
        self.coeffs
            .iter()
            .map(|(&(i, j), &c)| c * x.pow(i as u32) * y.pow(j as u32))
            .sum()
    }

    fn insert(&mut self, key: (usize, usize), c: i64) {
        let entry = self.coeffs.entry(key).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&key);
        }
    }
}

impl std::ops::Add for TuttePoly {
    type Output = TuttePoly;
    fn add(mut self, rhs: TuttePoly) -> TuttePoly {
        for (k, c) in rhs.coeffs {
            self.insert(k, c);
        }
        self
    }
}

impl std::ops::Sub for TuttePoly {
    type Output = TuttePoly;
    fn sub(mut self, rhs: TuttePoly) -> TuttePoly {
        for (k, c) in rhs.coeffs {
            self.insert(k, -c);
        }
        self
    }
}

impl std::ops::Mul for TuttePoly {
    type Output = TuttePoly;
    fn mul(self, rhs: TuttePoly) -> TuttePoly {
        let mut out = TuttePoly::zero();
        for (&(i1, j1), &c1) in &self.coeffs {
            for (&(i2, j2), &c2) in &rhs.coeffs {
                out.insert((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::rat_int;

    fn u23() -> Arrangement {
        corpus::u23()
    }

    #[test]
    fn essential_check_rejects() {
        let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(matches!(
            Arrangement::new(m),
            Err(ArrangementError::NotEssential { .. })
        ));
    }

    #[test]
    fn closure_u23_singleton() {
        let f = u23().closure(0b001);
        assert_eq!(f.members, 0b001);
        assert_eq!(f.rk, 1);
    }

    #[test]
    fn closure_full_set() {
        let arr = u23();
        let f = arr.closure(full_mask(3));
        assert_eq!(f.members, full_mask(3));
        assert_eq!(f.rk, 2);
    }

    #[test]
    fn closure_of_empty_contains_loops() {
        // zero column 3 is a loop
        let arr = Arrangement::from_i64(&[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        let f = arr.closure(0);
        assert_eq!(f.members, 0b100);
        assert_eq!(f.rk, 0);
    }

    #[test]
    fn flats_u23() {
        let flats = u23().flats().unwrap();
        let masks: Vec<u32> = flats.iter().map(|f| f.members).collect();
        assert_eq!(masks, vec![0b000, 0b001, 0b010, 0b100, 0b111]);
    }

    #[test]
    fn flats_boolean2() {
        let flats = corpus::boolean(2).flats().unwrap();
        assert_eq!(flats.len(), 4);
    }

    #[test]
    fn flats_mk4() {
        let flats = corpus::mk4().flats().unwrap();
        let masks: Vec<u32> = flats.iter().map(|f| f.members).collect();
        assert_eq!(masks, vec![0b00000, 0b00011, 0b01100, 0b10000, 0b11111]);
    }

    #[test]
    fn cocircuits_u23() {
        let cv = u23().cocircuit_vectors().unwrap();
        assert_eq!(cv.len(), 3);
        assert!(cv.iter().all(|c| c.rho == 2));
    }

    #[test]
    fn cocircuits_boolean() {
        let cv = corpus::boolean(3).cocircuit_vectors().unwrap();
        assert_eq!(cv.len(), 3);
        assert!(cv.iter().all(|c| c.rho == 1));
        // coordinate directions, primitive with positive leading entry
        for c in &cv {
            assert_eq!(c.v.iter().filter(|x| !x.is_zero()).count(), 1);
            assert_eq!(*c.v.iter().find(|x| !x.is_zero()).unwrap(), rat_int(1));
        }
    }

    #[test]
    fn cocircuits_mk4_rho() {
        let mut rhos: Vec<usize> = corpus::mk4()
            .cocircuit_vectors()
            .unwrap()
            .iter()
            .map(|c| c.rho)
            .collect();
        rhos.sort();
        assert_eq!(rhos, vec![3, 3, 4]);
    }

    #[test]
    fn deletion_boolean() {
        let d = corpus::boolean(2).deletion(1);
        assert_eq!(d.dim(), 1);
        assert_eq!(d.ground_size(), 1);
    }

    #[test]
    fn mk4_contract_5() {
        let c = corpus::mk4().contraction(4).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(c.ground_size(), 4);
        assert!((0..4).all(|i| !c.is_loop(i)));
    }

    #[test]
    fn mk4_delete_5() {
        let d = corpus::mk4().deletion(4);
        assert_eq!(d.dim(), 2);
        assert_eq!(d.ground_size(), 4);
        // direct sum of two rank-1 pairs
        assert_eq!(d.flats().unwrap().len(), 4);
    }

    #[test]
    fn contract_loop_error() {
        let arr = Arrangement::from_i64(&[&[1, 0]]).unwrap();
        assert!(matches!(
            arr.contraction(1),
            Err(ArrangementError::ContractLoop(1))
        ));
    }

    #[test]
    fn truncation_u23() {
        let (tl, _f, _basis) = u23().truncation(1).unwrap();
        assert_eq!(tl.dim(), 1);
        assert_eq!(tl.ground_size(), 3);
        assert!((0..3).all(|i| !tl.is_loop(i)));
    }

    #[test]
    fn truncation_boolean2() {
        let (tl, _, _) = corpus::boolean(2).truncation(7).unwrap();
        assert_eq!(tl.dim(), 1);
        assert!((0..2).all(|i| !tl.is_loop(i)));
    }

    #[test]
    fn double_truncation_u34() {
        let (t1, _, _) = corpus::u34().truncation(3).unwrap();
        let (t2, _, _) = t1.truncation(4).unwrap();
        assert_eq!(t2.dim(), 1);
        assert!((0..4).all(|i| !t2.is_loop(i)));
    }

    #[test]
    fn tutte_boolean() {
        let t = corpus::boolean(3).tutte().unwrap();
        assert_eq!(t, TuttePoly::monomial(3, 0, 1));
    }

    #[test]
    fn tutte_u23() {
        let t = u23().tutte().unwrap();
        let expected = TuttePoly::monomial(2, 0, 1)
            + TuttePoly::monomial(1, 0, 1)
            + TuttePoly::monomial(0, 1, 1);
        assert_eq!(t, expected);
    }

    #[test]
    fn tutte_loop_only() {
        let arr = Arrangement::new(RatMatrix::zero(0, 1)).unwrap();
        assert_eq!(arr.tutte().unwrap(), TuttePoly::y());
    }

    #[test]
    fn beta_u23() {
        assert_eq!(u23().beta().unwrap(), 1);
    }

    #[test]
    fn beta_with_coloop_zero() {
        // element 1 is a coloop
        let arr = Arrangement::from_i64(&[&[1, 0, 0], &[0, 1, 1]]).unwrap();
        assert_eq!(arr.beta().unwrap(), 0);
    }

    #[test]
    fn dual_tutte_u23() {
        let dt = u23().dual_tutte().unwrap();
        let expected = TuttePoly::monomial(0, 2, 1)
            + TuttePoly::monomial(0, 1, 1)
            + TuttePoly::monomial(1, 0, 1);
        assert_eq!(dt, expected);
    }

    #[test]
    fn tutte_deletion_contraction_identity() {
        for arr in [u23(), corpus::u24(), corpus::mk4(), corpus::k4_graphic()] {
            let t = arr.tutte().unwrap();
            for i in 0..arr.ground_size() {
                if arr.is_loop(i) || arr.is_coloop(i) {
                    continue;
                }
                let sum = arr.deletion(i).tutte().unwrap()
                    + arr.contraction(i).unwrap().tutte().unwrap();
                assert_eq!(t, sum, "deletion-contraction failed at i={i}");
            }
        }
    }

    #[test]
    fn closure_properties() {
        for arr in [u23(), corpus::mk4(), corpus::boolean(3)] {
            let n = arr.ground_size();
            for mask in 0..(1u64 << n) as u32 {
                let c = arr.closure(mask);
                assert_eq!(c.members & mask, mask, "extensive");
                assert_eq!(arr.closure(c.members).members, c.members, "idempotent");
                for sub in [mask & (mask >> 1), mask & 0b11] {
                    let cs = arr.closure(sub);
                    assert_eq!(c.members | cs.members, c.members, "monotone");
                }
            }
        }
    }

    #[test]
    fn truncation_certificate_holds() {
        let arr = corpus::u34();
        let (tl, _, _) = arr.truncation(11).unwrap();
        for mask in 0..(1u32 << 4) {
            assert_eq!(tl.subset_rank(mask), arr.subset_rank(mask).min(2));
        }
    }

    #[test]
    fn parse_text_roundtrip() {
        let text = "# a comment\n2 3\n1 0 1\n0 1 1/1\n";
        let arr = Arrangement::from_text(text).unwrap();
        assert_eq!(arr.dim(), 2);
        assert_eq!(arr.ground_size(), 3);
        assert_eq!(arr.form(2), vec![rat_int(1), rat_int(1)]);
    }

    #[test]
    fn parse_text_errors_carry_line() {
        let bad = "2 3\n1 0 x\n0 1 1\n";
        match Arrangement::from_text(bad) {
            Err(ArrangementError::ParseError { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_json() {
        let json = r#"{"rows":2,"cols":2,"entries":[["1","0"],["0","1/2"]]}"#;
        let arr = Arrangement::from_json(json).unwrap();
        assert_eq!(*arr.matrix().at(1, 1), crate::linalg::rat(1, 2));
    }
}
