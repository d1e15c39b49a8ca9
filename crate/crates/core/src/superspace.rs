//! Exact symbolic algebra for polynomial differential forms in r variables:
//! the product with Koszul signs, the exterior derivative d, contractions
//! iota_v and iota_E, the differential-operator action (odot), and the
//! perfect pairing.
//!
//! Elements live in Sym tensor Exterior on r generators. A monomial is
//! x^alpha dx_S with S stored as an increasing index set (bitmask); signs
//! are produced during normalization so equality is a map comparison.
//!
//! Sign conventions are pinned by two executable calibration tests:
//! (e1 de2 - e2 de1) odot (x1 dx1 dx2) = -dx1, and
//! iota_{e1} iota_{e2} (dx1 dx2) = -1. The exterior derivative follows the
//! coordinate formula d(f dx_S) = sum_j (df/dx_j) dx_j dx_S with dx_j
//! multiplied on the left; the alternative convention (differing by -1 on
//! odd anticommutative degree) is not supported.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::{rat_int, Rat};

/// Cap on commutative exponents; exceeding it indicates a runaway loop.
pub const MAX_EXPONENT: u32 = 64;

/// (commutative degree, anticommutative degree)
pub type Bidegree = (usize, usize);

/// Monomial key: exponent vector and anticommutative index set.
pub type TermKey = (Vec<u32>, u32);

/// Sparse exact element of the superspace ring on `num_vars` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperElement {
    num_vars: usize,
    terms: BTreeMap<TermKey, Rat>,
}

impl SuperElement {
    pub fn zero(num_vars: usize) -> Self {
        SuperElement {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::monomial(num_vars, vec![0; num_vars], 0, Rat::one())
    }

    pub fn scalar(num_vars: usize, c: Rat) -> Self {
        Self::monomial(num_vars, vec![0; num_vars], 0, c)
    }

    /// The commutative generator x_i (0-based).
    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self::monomial(num_vars, e, 0, Rat::one())
    }

    /// The anticommutative generator dx_i (0-based).
    pub fn dvar(num_vars: usize, i: usize) -> Self {
        Self::monomial(num_vars, vec![0; num_vars], 1 << i, Rat::one())
    }

    pub fn monomial(num_vars: usize, exps: Vec<u32>, mask: u32, coeff: Rat) -> Self {
        assert_eq!(exps.len(), num_vars);
        assert!(mask < (1u64 << num_vars) as u32 || num_vars >= 32);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            assert!(exps.iter().all(|&e| e <= MAX_EXPONENT), "exponent cap exceeded");
            terms.insert((exps, mask), coeff);
        }
        SuperElement { num_vars, terms }
    }

    /// A linear form sum c_i x_i from a coordinate vector.
    pub fn linear_form(coeffs: &[Rat]) -> Self {
        let n = coeffs.len();
        let mut out = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                out.add_term(e, 0, c.clone());
            }
        }
        out
    }

    /// The 1-form sum c_i dx_i from a coordinate vector.
    pub fn linear_one_form(coeffs: &[Rat]) -> Self {
        let n = coeffs.len();
        let mut out = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(vec![0; n], 1 << i, c.clone());
            }
        }
        out
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32], mask: u32) -> Rat {
        self.terms
            .get(&(exps.to_vec(), mask))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Constant term (coefficient of 1).
    pub fn constant_term(&self) -> Rat {
        self.coeff(&vec![0; self.num_vars], 0)
    }

    fn add_term(&mut self, exps: Vec<u32>, mask: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        assert!(exps.iter().all(|&e| e <= MAX_EXPONENT), "exponent cap exceeded");
        let key = (exps, mask);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &SuperElement) -> SuperElement {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
        let mut out = self.clone();
        for ((e, m), c) in &other.terms {
            out.add_term(e.clone(), *m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SuperElement) -> SuperElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SuperElement {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> SuperElement {
        let mut out = SuperElement::zero(self.num_vars);
        if c.is_zero() {
            return out;
        }
        for ((e, m), x) in &self.terms {
            out.terms.insert((e.clone(), *m), x * c);
        }
        out
    }

    /// Associative product; dx_i dx_j = -dx_j dx_i and dx_i^2 = 0.
    pub fn mul(&self, other: &SuperElement) -> SuperElement {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
        let mut out = SuperElement::zero(self.num_vars);
        for ((e1, m1), c1) in &self.terms {
            for ((e2, m2), c2) in &other.terms {
                if m1 & m2 != 0 {
                    continue;
                }
                let sign = merge_sign(*m1, *m2);
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let mut c = c1 * c2;
                if sign < 0 {
                    c = -c;
                }
                out.add_term(exps, m1 | m2, c);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SuperElement {
        let mut acc = SuperElement::one(self.num_vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exterior derivative: d(x^a dx_S) = sum_j a_j x^(a - e_j) dx_j dx_S.
    pub fn d(&self) -> SuperElement {
        let mut out = SuperElement::zero(self.num_vars);
        for ((e, m), c) in &self.terms {
            for j in 0..self.num_vars {
                if e[j] == 0 || m >> j & 1 == 1 {
                    continue;
                }
                let mut exps = e.clone();
                exps[j] -= 1;
                // sign of moving dx_j past the smaller generators of S
                let below = (m & ((1u32 << j) - 1)).count_ones();
                let mut coeff = c * rat_int(e[j] as i64);
                if below % 2 == 1 {
                    coeff = -coeff;
                }
                out.add_term(exps, m | 1 << j, coeff);
            }
        }
        out
    }

    /// Contraction with a constant vector: the odd derivation with
    /// iota_v(dx_i) = v_i and iota_v(x_i) = 0.
    pub fn iota(&self, v: &[Rat]) -> SuperElement {
        assert_eq!(v.len(), self.num_vars, "variable count mismatch");
        let mut out = SuperElement::zero(self.num_vars);
        for ((e, m), c) in &self.terms {
            let mut seen_before = 0u32;
            for j in 0..self.num_vars {
                if m >> j & 1 == 0 {
                    continue;
                }
                if !v[j].is_zero() {
                    let mut coeff = c * &v[j];
                    if seen_before % 2 == 1 {
                        coeff = -coeff;
                    }
                    out.add_term(e.clone(), m & !(1 << j), coeff);
                }
                seen_before += 1;
            }
        }
        out
    }

    /// Contraction with the Euler vector field: sum_i x_i iota_{e_i}.
    pub fn iota_euler(&self) -> SuperElement {
        let mut out = SuperElement::zero(self.num_vars);
        for i in 0..self.num_vars {
            let mut v = vec![Rat::zero(); self.num_vars];
            v[i] = Rat::one();
            let contracted = self.iota(&v);
            out = out.add(&SuperElement::var(self.num_vars, i).mul(&contracted));
        }
        out
    }

    /// Differential-operator action: each generator e_i of `self` acts as
    /// d/dx_i and each de_i as iota_{e_i} on `g`. For a monomial
    /// e^a de_{i_1}..de_{i_b} (indices increasing) the operator is the
    /// composition applying iota_{e_{i_b}} first.
    pub fn odot(&self, g: &SuperElement) -> SuperElement {
        assert_eq!(self.num_vars, g.num_vars, "variable count mismatch");
        let n = self.num_vars;
        let mut out = SuperElement::zero(n);
        for ((e, m), c) in &self.terms {
            let mut acc = g.clone();
            for j in (0..n).rev() {
                if m >> j & 1 == 1 {
                    let mut v = vec![Rat::zero(); n];
                    v[j] = Rat::one();
                    acc = acc.iota(&v);
                    if acc.is_zero() {
                        break;
                    }
                }
            }
            for (j, &a) in e.iter().enumerate() {
                for _ in 0..a {
                    acc = acc.partial(j);
                    if acc.is_zero() {
                        break;
                    }
                }
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// Partial derivative in the j-th commutative variable.
    pub fn partial(&self, j: usize) -> SuperElement {
        let mut out = SuperElement::zero(self.num_vars);
        for ((e, m), c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[j] -= 1;
            out.add_term(exps, *m, c * rat_int(e[j] as i64));
        }
        out
    }

    /// Perfect pairing: constant term of `self odot g`.
    pub fn pairing(&self, g: &SuperElement) -> Rat {
        self.odot(g).constant_term()
    }

    /// Substitute x_j -> sum_t w[j][t] s_t and dx_j -> sum_t w[j][t] ds_t,
    /// mapping into the ring on `w`'s column count of variables. Used for
    /// restricting forms on L to a subspace presented by a basis matrix.
    pub fn substitute_linear(&self, w: &crate::linalg::RatMatrix) -> SuperElement {
        assert_eq!(w.rows, self.num_vars, "variable count mismatch");
        let nv = w.cols;
        let var_images: Vec<SuperElement> = (0..self.num_vars)
            .map(|j| SuperElement::linear_form(w.row(j)))
            .collect();
        let dvar_images: Vec<SuperElement> = (0..self.num_vars)
            .map(|j| SuperElement::linear_one_form(w.row(j)))
            .collect();
        let mut out = SuperElement::zero(nv);
        for ((e, m), c) in &self.terms {
            let mut acc = SuperElement::scalar(nv, c.clone());
            for (j, &a) in e.iter().enumerate() {
                if a > 0 {
                    acc = acc.mul(&var_images[j].pow(a));
                }
                if acc.is_zero() {
                    break;
                }
            }
            for j in 0..self.num_vars {
                if m >> j & 1 == 1 {
                    acc = acc.mul(&dvar_images[j]);
                    if acc.is_zero() {
                        break;
                    }
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// The bihomogeneous component of the given bidegree.
    pub fn component(&self, deg: Bidegree) -> SuperElement {
        let mut out = SuperElement::zero(self.num_vars);
        for ((e, m), c) in &self.terms {
            let cd = e.iter().sum::<u32>() as usize;
            let ad = m.count_ones() as usize;
            if (cd, ad) == deg {
                out.terms.insert((e.clone(), *m), c.clone());
            }
        }
        out
    }

    /// Bidegrees with nonzero support.
    pub fn support_bidegrees(&self) -> Vec<Bidegree> {
        let mut degs: Vec<Bidegree> = self
            .terms
            .keys()
            .map(|(e, m)| (e.iter().sum::<u32>() as usize, m.count_ones() as usize))
            .collect();
        degs.sort();
        degs.dedup();
        degs
    }

    pub fn is_bihomogeneous(&self) -> bool {
        self.support_bidegrees().len() <= 1
    }

    /// Coordinates in the monomial basis of one bidegree slice.
    pub fn slice_coords(&self, basis: &[TermKey]) -> Vec<Rat> {
        basis
            .iter()
            .map(|(e, m)| self.coeff(e, *m))
            .collect()
    }
}

/// Sign of merging two increasing anticommutative index sets (left set
/// stays on the left). Counts inversions between the sets.
fn merge_sign(m1: u32, m2: u32) -> i32 {
    let mut inversions = 0u32;
    let mut t = m2;
    while t != 0 {
        let j = t.trailing_zeros();
        inversions += (m1 >> (j + 1)).count_ones();
        t &= t - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Monomial basis (term keys) of one bidegree slice of the ring on
/// `num_vars` generators.
pub fn slice_basis(num_vars: usize, deg: Bidegree) -> Vec<TermKey> {
    let (cd, ad) = deg;
    let mut exps = Vec::new();
    enumerate_exponents(num_vars, cd as u32, &mut vec![], &mut exps);
    let masks: Vec<u32> = (0..(1u64 << num_vars) as u32)
        .filter(|m| m.count_ones() as usize == ad)
        .collect();
    let mut out = Vec::with_capacity(exps.len() * masks.len());
    for e in &exps {
        for &m in &masks {
            out.push((e.clone(), m));
        }
    }
    out
}

fn enumerate_exponents(vars: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if vars == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    if vars == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for a in 0..=total {
        prefix.push(a);
        enumerate_exponents(vars - 1, total - a, prefix, out);
        prefix.pop();
    }
}

/// Dimension of the commutative degree-d slice in r variables.
pub fn sym_dim(r: usize, d: usize) -> usize {
    if r == 0 {
        return usize::from(d == 0);
    }
    // C(r-1+d, d)
    let mut num = 1usize;
    for i in 0..d {
        num = num * (r + i) / (i + 1);
    }
    num
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
#[error("cannot parse element at `{0}`")]
pub struct ElementParseError(String);

/// Parse the plain-text syntax, e.g. `3/2*x1^2*x3*dx2*dx4 - x1*dx1`.
/// Variables are 1-based; `e`/`de` are accepted as synonyms for `x`/`dx`.
pub fn parse_element(text: &str, num_vars: usize) -> Result<SuperElement, ElementParseError> {
    let mut out = SuperElement::zero(num_vars);
    let text = text.trim();
    if text.is_empty() {
        return Ok(out);
    }
    for (sign, term) in split_terms(text) {
        let mut coeff = rat_int(sign);
        let mut exps = vec![0u32; num_vars];
        let mut mask = 0u32;
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(ElementParseError(term.clone()));
            }
            if let Some(c) = parse_coeff(factor) {
                coeff *= c;
                continue;
            }
            let (body, exp) = match factor.split_once('^') {
                Some((b, e)) => (
                    b,
                    e.parse::<u32>().map_err(|_| ElementParseError(factor.into()))?,
                ),
                None => (factor, 1),
            };
            let (anticommutative, idx_str) = if let Some(rest) =
                body.strip_prefix("dx").or_else(|| body.strip_prefix("de"))
            {
                (true, rest)
            } else if let Some(rest) = body.strip_prefix('x').or_else(|| body.strip_prefix('e')) {
                (false, rest)
            } else {
                return Err(ElementParseError(factor.into()));
            };
            let idx: usize = idx_str.parse().map_err(|_| ElementParseError(factor.into()))?;
            if idx == 0 || idx > num_vars {
                return Err(ElementParseError(factor.into()));
            }
            if anticommutative {
                if exp != 1 {
                    if exp == 0 {
                        continue;
                    }
                    // dx^2 = 0
                    coeff = Rat::zero();
                    continue;
                }
                if mask >> (idx - 1) & 1 == 1 {
                    coeff = Rat::zero();
                } else {
                    // normalize into increasing order; factors arrive left
                    // to right, so count already-placed larger indices
                    let above = (mask >> idx).count_ones();
                    if above % 2 == 1 {
                        coeff = -coeff;
                    }
                    mask |= 1 << (idx - 1);
                }
            } else {
                exps[idx - 1] += exp;
            }
        }
        out.add_term(exps, mask, coeff);
    }
    Ok(out)
}

fn parse_coeff(tok: &str) -> Option<Rat> {
    if let Some((n, d)) = tok.split_once('/') {
        let n: i128 = n.parse().ok()?;
        let d: i128 = d.parse().ok()?;
        if d == 0 {
            return None;
        }
        Some(Rat::new(n.into(), d.into()))
    } else {
        let n: i128 = tok.parse().ok()?;
        Some(Rat::from_integer(n.into()))
    }
}

fn split_terms(text: &str) -> Vec<(i64, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut sign = 1i64;
    for ch in text.chars() {
        match ch {
            '+' | '-' if !current.trim().is_empty() => {
                out.push((sign, current.trim().to_string()));
                sign = if ch == '-' { -1 } else { 1 };
                current = String::new();
            }
            '-' => sign = -sign,
            '+' => {}
            _ => current.push(ch),
        }
    }
    if !current.trim().is_empty() {
        out.push((sign, current.trim().to_string()));
    }
    out
}

impl fmt::Display for SuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((e, m), c) in &self.terms {
            let neg = c.is_negative();
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
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || (e.iter().all(|&x| x == 0) && *m == 0) {
                factors.push(abs.to_string());
            }
            for (j, &a) in e.iter().enumerate() {
                if a == 1 {
                    factors.push(format!("x{}", j + 1));
                } else if a > 1 {
                    factors.push(format!("x{}^{}", j + 1, a));
                }
            }
            for j in 0..self.num_vars {
                if m >> j & 1 == 1 {
                    factors.push(format!("dx{}", j + 1));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
