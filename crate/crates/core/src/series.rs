//! Shared output types: Laurent polynomials in one variable q, graded
//! Hilbert functions, and bigraded dimension tables in (q, t).
//!
//! All coefficients are exact integers; the types exist so every module
//! reports dimensions in the same comparable shape.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Laurent polynomial in q with integer coefficients, kept trimmed so
/// equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentSeries {
    min_deg: i64,
    coeffs: Vec<i64>,
}

impl LaurentSeries {
    pub fn zero() -> Self {
        LaurentSeries {
            min_deg: 0,
            coeffs: vec![],
        }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, deg: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        LaurentSeries {
            min_deg: deg,
            coeffs: vec![c],
        }
    }

    /// From coefficients of q^0, q^1, ...
    pub fn from_poly_coeffs(coeffs: &[i64]) -> Self {
        let mut s = LaurentSeries {
            min_deg: 0,
            coeffs: coeffs.to_vec(),
        };
        s.trim();
        s
    }

    pub fn coeff(&self, deg: i64) -> i64 {
        let idx = deg - self.min_deg;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            0
        } else {
            self.coeffs[idx as usize]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_deg(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_deg)
        }
    }

    pub fn max_deg(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_deg + self.coeffs.len() as i64 - 1)
        }
    }

    /// Nonzero terms as (degree, coefficient), ascending by degree.
    pub fn terms(&self) -> Vec<(i64, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.min_deg + i as i64, c))
            .collect()
    }

    /// Evaluation at an integer point (requires min_deg >= 0).
    pub fn eval_i64(&self, q: i64) -> i64 {
        assert!(self.is_zero() || self.min_deg >= 0, "negative powers at integer point");
        self.terms()
            .into_iter()
            .map(|(d, c)| c * q.pow(d as u32))
            .sum()
    }

    pub fn scale(&self, c: i64) -> LaurentSeries {
        if c == 0 {
            return Self::zero();
        }
        LaurentSeries {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentSeries {
            min_deg: self.min_deg + k,
            coeffs: self.coeffs.clone(),
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min_deg += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.min_deg = 0;
        }
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;

    fn add(self, other: &LaurentSeries) -> LaurentSeries {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let min = self.min_deg.min(other.min_deg);
        let max = (self.min_deg + self.coeffs.len() as i64)
            .max(other.min_deg + other.coeffs.len() as i64);
        let mut coeffs = vec![0i64; (max - min) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(self.min_deg - min) as usize + i] += c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            coeffs[(other.min_deg - min) as usize + i] += c;
        }
        let mut out = LaurentSeries { min_deg: min, coeffs };
        out.trim();
        out
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;

    fn sub(self, other: &LaurentSeries) -> LaurentSeries {
        self + &(-other)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;

    fn neg(self) -> LaurentSeries {
        self.scale(-1)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;

    fn mul(self, other: &LaurentSeries) -> LaurentSeries {
        if self.is_zero() || other.is_zero() {
            return LaurentSeries::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut out = LaurentSeries {
            min_deg: self.min_deg + other.min_deg,
            coeffs,
        };
        out.trim();
        out
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (d, c)) in terms.iter().enumerate() {
            let neg = *c < 0;
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (abs, d) {
                (a, 0) => write!(f, "{a}")?,
                (1, 1) => write!(f, "q")?,
                (a, 1) => write!(f, "{a}*q")?,
                (1, d) => write!(f, "q^{d}")?,
                (a, d) => write!(f, "{a}*q^{d}")?,
            }
        }
        Ok(())
    }
}

/// Graded dimension sequence of a quotient algebra, starting at degree 0.
/// `terminated` records that the next dimension is 0 (so the sequence is
/// the complete Hilbert function, not a truncation at a cap).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertFunction {
    pub dims: Vec<usize>,
    pub terminated: bool,
}

impl HilbertFunction {
    pub fn new(dims: Vec<usize>, terminated: bool) -> Self {
        HilbertFunction { dims, terminated }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn to_series(&self) -> LaurentSeries {
        let coeffs: Vec<i64> = self.dims.iter().map(|&d| d as i64).collect();
        LaurentSeries::from_poly_coeffs(&coeffs)
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_series())?;
        if !self.terminated {
            write!(f, " + ...")?;
        }
        Ok(())
    }
}

/// Bigraded dimension table: `dims[i][j]` is the dimension in commutative
/// degree i and anticommutative degree j (j <= dim of the arrangement).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedTable {
    pub dims: Vec<Vec<usize>>,
    pub terminated: bool,
}

impl BigradedTable {
    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.dims.get(i).and_then(|row| row.get(j)).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    /// Collapse to the single grading q (total degree i + j).
    pub fn to_total_series(&self) -> LaurentSeries {
        let mut out = LaurentSeries::zero();
        for (i, row) in self.dims.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                out = &out + &LaurentSeries::monomial(d as i64, (i + j) as i64);
            }
        }
        out
    }

    pub fn to_bivar(&self) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (i, row) in self.dims.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                out = out.add(&BivarPoly::monomial(d as i64, i as i64, j as i64));
            }
        }
        out
    }
}

impl fmt::Display for BigradedTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bivar())
    }
}

/// Polynomial in q (commutative degree) and t (anticommutative degree)
/// with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    coeffs: BTreeMap<(i64, i64), i64>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn monomial(c: i64, qdeg: i64, tdeg: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert((qdeg, tdeg), c);
        }
        BivarPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, qdeg: i64, tdeg: i64) -> i64 {
        self.coeffs.get(&(qdeg, tdeg)).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&k, &c) in &other.coeffs {
            let e = out.coeffs.entry(k).or_insert(0);
            *e += c;
            if *e == 0 {
                out.coeffs.remove(&k);
            }
        }
        out
    }

    pub fn sub(&self, other: &BivarPoly) -> BivarPoly {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> BivarPoly {
        if c == 0 {
            return BivarPoly::zero();
        }
        BivarPoly {
            coeffs: self.coeffs.iter().map(|(&k, &x)| (k, x * c)).collect(),
        }
    }

    /// Multiply by q^a t^b.
    pub fn shift(&self, a: i64, b: i64) -> BivarPoly {
        BivarPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(i, j), &x)| ((i + a, j + b), x))
                .collect(),
        }
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), &c) in &self.coeffs {
            let neg = c < 0;
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if abs != 1 || (i == 0 && j == 0) {
                parts.push(abs.to_string());
            }
            match i {
                0 => {}
                1 => parts.push("q".into()),
                _ => parts.push(format!("q^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("t".into()),
                _ => parts.push(format!("t^{j}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
