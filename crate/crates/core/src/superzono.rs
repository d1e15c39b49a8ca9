//! Superspace zonotopal algebras for k <= 0: bigraded Hilbert tables,
//! the differential complex and its homology, the super
//! deletion-contraction sequence with a chosen splitting, and the Boolean
//! monomial family for k >= 1.
//!
//! The ideal is generated by { v^{rho(v)+k+1}, d(v^{rho(v)+k+1}) } over
//! cocircuit vectors; no generator set is fabricated for k >= 1 on
//! general arrangements, where only the Boolean monomial span is exposed.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::arrangement::{Arrangement, ArrangementError};
use crate::linalg::{kernel_basis, rank, rat_int, Rat, RatMatrix};
use crate::powerideal::{in_span, PowerIdealError};
use crate::series::{BigradedTable, BivarPoly, LaurentSeries};
use crate::superspace::{slice_basis, Bidegree, SuperElement, TermKey};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum SuperZonoError {
    #[error("no validated generator description for k = {0} >= 1")]
    PositiveKUnsupported(i64),
    #[error("element {0} is a loop or coloop")]
    LoopOrColoop(usize),
    #[error("degree cap {cap} reached at nonzero dimension")]
    CapExceeded { cap: usize },
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    PowerIdeal(#[from] PowerIdealError),
}

/// Differentially closed generating set of the super zonotopal ideal.
#[derive(Debug, Clone)]
pub struct SuperIdealSpec {
    pub num_vars: usize,
    pub unit_ideal: bool,
    /// Contains d(g) for every polynomial generator g.
    pub generators: Vec<SuperElement>,
    socle_bound: usize,
}

pub fn super_zonotopal_ideal(arr: &Arrangement, k: i64) -> Result<SuperIdealSpec, SuperZonoError> {
    if k >= 1 {
        return Err(SuperZonoError::PositiveKUnsupported(k));
    }
    let r = arr.dim();
    let n = arr.ground_size() as i64;
    let mut generators = Vec::new();
    let mut unit = false;
    for cv in arr.cocircuit_vectors().map_err(SuperZonoError::Arrangement)? {
        let e = cv.rho as i64 + k + 1;
        if e <= 0 {
            unit = true;
            continue;
        }
        let p = SuperElement::linear_form(&cv.v).pow(e as u32);
        generators.push(p.d());
        generators.push(p);
    }
    let socle_bound = r * (n + k).max(0) as usize + 1;
    Ok(SuperIdealSpec {
        num_vars: r,
        unit_ideal: unit,
        generators,
        socle_bound,
    })
}

/// Rows spanning the bidegree (i, j) slice of the ideal, in the
/// coordinates of `slice_basis(r, (i, j))`.
fn ideal_slice_rows(spec: &SuperIdealSpec, deg: Bidegree) -> Vec<Vec<Rat>> {
    let r = spec.num_vars;
    let basis: Vec<TermKey> = slice_basis(r, deg);
    let index: BTreeMap<&TermKey, usize> = basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut rows = Vec::new();
    for g in &spec.generators {
        let (gc, ga) = match g.support_bidegrees().first() {
            Some(&d) => d,
            None => continue,
        };
        if gc > deg.0 || ga > deg.1 {
            continue;
        }
        for m in slice_basis(r, (deg.0 - gc, deg.1 - ga)) {
            let mono = SuperElement::monomial(r, m.0.clone(), m.1, rat_int(1));
            let prod = mono.mul(g);
            if prod.is_zero() {
                continue;
            }
            let mut row = vec![Rat::zero(); basis.len()];
            for (key, c) in prod.terms() {
                row[index[key]] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

fn slice_quotient_dim(spec: &SuperIdealSpec, deg: Bidegree) -> usize {
    let ambient = slice_basis(spec.num_vars, deg).len();
    if spec.unit_ideal {
        return 0;
    }
    let rows = ideal_slice_rows(spec, deg);
    let rk = if rows.is_empty() {
        0
    } else {
        rank(&RatMatrix::from_rows(&rows))
    };
    ambient - rk
}

/// Inverse-system basis of the bidegree (i, j) slice: all elements of the
/// ambient slice paired to zero with every ideal element of that slice.
pub fn super_inverse_basis(spec: &SuperIdealSpec, deg: Bidegree) -> Vec<SuperElement> {
    let r = spec.num_vars;
    if spec.unit_ideal {
        return vec![];
    }
    let basis: Vec<TermKey> = slice_basis(r, deg);
    let rows = ideal_slice_rows(spec, deg);
    if rows.is_empty() {
        return basis
            .iter()
            .map(|(e, m)| SuperElement::monomial(r, e.clone(), *m, rat_int(1)))
            .collect();
    }
    // the pairing is diagonal on monomials with nonzero weights, so
    // kernel vectors of the plain coefficient matrix rescale to a basis
    let kernel = kernel_basis(&RatMatrix::from_rows(&rows));
    kernel
        .into_iter()
        .map(|z| {
            let mut g = SuperElement::zero(r);
            for (idx, (e, m)) in basis.iter().enumerate() {
                if !z[idx].is_zero() {
                    let w = pairing_weight(e, *m);
                    g = g.add(&SuperElement::monomial(r, e.clone(), *m, &z[idx] / w));
                }
            }
            g
        })
        .collect()
}

/// pairing(monomial, monomial) = alpha! * (-1)^{s(s-1)/2} on the diagonal.
fn pairing_weight(e: &[u32], mask: u32) -> Rat {
    let mut w = rat_int(1);
    for &a in e {
        for t in 2..=a as i64 {
            w = w * rat_int(t);
        }
    }
    let s = mask.count_ones() as i64;
    if (s * (s - 1) / 2) % 2 == 1 {
        w = -w;
    }
    w
}

/// Bigraded dimensions of the quotient; rows are Artinian in the
/// commutative direction, so each anticommutative level stops at its
/// first vanishing commutative degree.
pub fn super_bigraded_hilbert(arr: &Arrangement, k: i64) -> Result<BigradedTable, SuperZonoError> {
    let spec = super_zonotopal_ideal(arr, k)?;
    super_bigraded_of_spec(&spec)
}

fn super_bigraded_of_spec(spec: &SuperIdealSpec) -> Result<BigradedTable, SuperZonoError> {
    let r = spec.num_vars;
    if spec.unit_ideal {
        return Ok(BigradedTable {
            dims: vec![],
            terminated: true,
        });
    }
    let mut columns: Vec<Vec<usize>> = Vec::new();
    for j in 0..=r {
        let mut col = Vec::new();
        for i in 0..=spec.socle_bound {
            let dim = slice_quotient_dim(spec, (i, j));
            if dim == 0 {
                break;
            }
            if i == spec.socle_bound {
                return Err(SuperZonoError::CapExceeded {
                    cap: spec.socle_bound,
                });
            }
            col.push(dim);
        }
        columns.push(col);
    }
    let rows = columns.iter().map(|c| c.len()).max().unwrap_or(0);
    let dims: Vec<Vec<usize>> = (0..rows)
        .map(|i| {
            (0..=r)
                .map(|j| columns[j].get(i).copied().unwrap_or(0))
                .collect()
        })
        .collect();
    Ok(BigradedTable {
        dims,
        terminated: true,
    })
}

/// The expanded Tutte expression (1+t)^r q^{n-r} T_L(1/(1+t), 1/q).
pub fn super_tutte_formula(arr: &Arrangement) -> Result<BivarPoly, SuperZonoError> {
    let t = arr.tutte().map_err(SuperZonoError::Arrangement)?;
    let n = arr.ground_size() as i64;
    let r = arr.dim() as i64;
    let mut total = BivarPoly::zero();
    for (&(a, b), &c) in t.coeffs() {
        // c * (1+t)^{r-a} * q^{n-r-b}; a <= r and b <= n-r always
        let mut term = BivarPoly::monomial(c, n - r - b as i64, 0);
        for _ in 0..(r - a as i64) {
            term = term.add(&term.shift(0, 1));
        }
        total = total.add(&term);
    }
    Ok(total)
}

/// Checks Hilb(Z_{L,-1} superspace) against the Tutte expression.
pub fn verify_super_hilbert_formula(
    arr: &Arrangement,
) -> Result<(BigradedTable, BivarPoly, bool), SuperZonoError> {
    let table = super_bigraded_hilbert(arr, -1)?;
    let formula = super_tutte_formula(arr)?;
    let equal = table.to_bivar() == formula;
    Ok((table, formula, equal))
}

/// Homology dimensions of d acting on the quotient, computed on the dual
/// side: the rank of d out of bidegree (i, j) equals the rank of iota_E
/// from the inverse-system slice (i-1, j+1) into slice (i, j).
pub fn d_complex_homology(
    arr: &Arrangement,
    k: i64,
) -> Result<BTreeMap<(usize, usize), usize>, SuperZonoError> {
    let spec = super_zonotopal_ideal(arr, k)?;
    let table = super_bigraded_of_spec(&spec)?;
    let r = spec.num_vars;
    let max_i = table.dims.len();
    let mut bases: BTreeMap<(usize, usize), Vec<SuperElement>> = BTreeMap::new();
    for i in 0..max_i {
        for j in 0..=r {
            if table.dim(i, j) > 0 {
                bases.insert((i, j), super_inverse_basis(&spec, (i, j)));
            }
        }
    }
    // rank of d out of (i, j), as the rank of iota_E on the (i-1, j+1) basis
    let rank_d_out = |i: usize, j: usize| -> usize {
        if i == 0 || j >= r {
            return 0;
        }
        let source = match bases.get(&(i - 1, j + 1)) {
            Some(b) => b,
            None => return 0,
        };
        let ambient = slice_basis(r, (i, j));
        let rows: Vec<Vec<Rat>> = source
            .iter()
            .map(|g| g.iota_euler().slice_coords(&ambient))
            .collect();
        if rows.is_empty() {
            0
        } else {
            rank(&RatMatrix::from_rows(&rows))
        }
    };
    let mut hom = BTreeMap::new();
    for i in 0..max_i {
        for j in 0..=r {
            let dim = table.dim(i, j);
            if dim == 0 {
                continue;
            }
            let out = rank_d_out(i, j);
            let into = rank_d_out(i + 1, j.wrapping_sub(1));
            let into = if j == 0 { 0 } else { into };
            let h = dim - out - into;
            if h > 0 {
                hom.insert((i, j), h);
            }
        }
    }
    Ok(hom)
}

/// Per-bidegree verdicts for the super deletion-contraction sequence.
#[derive(Debug, Clone, Serialize)]
pub struct BidegreeEntry {
    pub cdeg: usize,
    pub adeg: usize,
    pub dim_deletion: usize,
    pub dim_middle: usize,
    pub dim_target: usize,
    pub rank_mul: usize,
    pub rank_right: usize,
    pub left: bool,
    pub middle: bool,
    pub right: bool,
    pub cokernel_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuperSequenceReport {
    pub entries: Vec<BidegreeEntry>,
    /// Cokernel dimensions collected by commutative degree.
    pub cokernel: LaurentSeries,
}

impl SuperSequenceReport {
    pub fn left_exact_everywhere(&self) -> bool {
        self.entries.iter().all(|e| e.left)
    }

    pub fn middle_exact_everywhere(&self) -> bool {
        self.entries.iter().all(|e| e.middle)
    }

    pub fn right_exact_everywhere(&self) -> bool {
        self.entries.iter().all(|e| e.right)
    }

    pub fn failures(&self) -> Vec<&BidegreeEntry> {
        self.entries
            .iter()
            .filter(|e| !(e.left && e.middle && e.right))
            .collect()
    }
}

/// Default splitting vector: solves a_i . v = 1 with support on the first
/// coordinate where the form is nonzero.
pub fn default_splitting(arr: &Arrangement, i: usize) -> Vec<Rat> {
    let form = arr.form(i);
    let j = form
        .iter()
        .position(|c| !c.is_zero())
        .expect("splitting requires a non-loop");
    let mut v = vec![Rat::zero(); arr.dim()];
    v[j] = form[j].clone().recip();
    v
}

/// The sequence 0 -> C_{L-i,k}^{c-1,a} -> C_{L,k}^{c,a}
/// -> C_{L/i,k}^{c,a} + C_{L/i,k}^{c,a-1}: multiplication by the i-th
/// form, then (restriction, contraction-with-v-then-restriction).
pub fn super_deletion_contraction(
    arr: &Arrangement,
    i: usize,
    k: i64,
    splitting: Option<Vec<Rat>>,
) -> Result<SuperSequenceReport, SuperZonoError> {
    if arr.is_loop(i) || arr.is_coloop(i) {
        return Err(SuperZonoError::LoopOrColoop(i));
    }
    let r = arr.dim();
    let v = splitting.unwrap_or_else(|| default_splitting(arr, i));
    {
        let dot = crate::arrangement::dot(&arr.form(i), &v);
        assert!(dot == rat_int(1), "splitting must satisfy a_i . v = 1");
    }
    let del = arr.deletion(i);
    let con = arr.contraction(i).map_err(SuperZonoError::Arrangement)?;
    let spec_mid = super_zonotopal_ideal(arr, k)?;
    let spec_del = super_zonotopal_ideal(&del, k)?;
    let spec_con = super_zonotopal_ideal(&con, k)?;
    let t_mid = super_bigraded_of_spec(&spec_mid)?;
    let t_del = super_bigraded_of_spec(&spec_del)?;
    let t_con = super_bigraded_of_spec(&spec_con)?;

    let max_c = t_mid
        .dims
        .len()
        .max(t_con.dims.len())
        .max(t_del.dims.len() + 1);
    let ell = SuperElement::linear_form(&arr.form(i));
    let w = {
        let cols = arr.contraction_basis(i);
        let mut m = RatMatrix::zero(r, cols.len());
        for (t, c) in cols.iter().enumerate() {
            for jj in 0..r {
                *m.at_mut(jj, t) = c[jj].clone();
            }
        }
        m
    };

    let mut entries = Vec::new();
    let mut coker = LaurentSeries::zero();
    for c in 0..=max_c {
        for a in 0..=r {
            let dim_a = if c == 0 { 0 } else { t_del.dim(c - 1, a) };
            let dim_b = t_mid.dim(c, a);
            let dim_c1 = t_con.dim(c, a);
            let dim_c2 = if a == 0 { 0 } else { t_con.dim(c, a - 1) };
            if dim_a == 0 && dim_b == 0 && dim_c1 == 0 && dim_c2 == 0 {
                continue;
            }
            let amb_b = slice_basis(r, (c, a));
            let amb_c1 = slice_basis(r - 1, (c, a));
            let amb_c2 = if a == 0 {
                vec![]
            } else {
                slice_basis(r - 1, (c, a - 1))
            };
            let basis_a = if c == 0 {
                vec![]
            } else {
                super_inverse_basis(&spec_del, (c - 1, a))
            };
            let basis_b = super_inverse_basis(&spec_mid, (c, a));
            let basis_c1 = super_inverse_basis(&spec_con, (c, a));
            let basis_c2 = if a == 0 {
                vec![]
            } else {
                super_inverse_basis(&spec_con, (c, a - 1))
            };

            let b_rows: Vec<Vec<Rat>> =
                basis_b.iter().map(|g| g.slice_coords(&amb_b)).collect();
            let mut c_rows: Vec<Vec<Rat>> = Vec::new();
            for g in &basis_c1 {
                let mut row = g.slice_coords(&amb_c1);
                row.extend(vec![Rat::zero(); amb_c2.len()]);
                c_rows.push(row);
            }
            for g in &basis_c2 {
                let mut row = vec![Rat::zero(); amb_c1.len()];
                row.extend(g.slice_coords(&amb_c2));
                c_rows.push(row);
            }

            let right_map = |g: &SuperElement| -> Vec<Rat> {
                let mut row = g.substitute_linear(&w).slice_coords(&amb_c1);
                let second = g.iota(&v).substitute_linear(&w);
                row.extend(second.slice_coords(&amb_c2));
                row
            };

            let mul_images: Vec<SuperElement> = basis_a.iter().map(|g| ell.mul(g)).collect();
            let mul_rows: Vec<Vec<Rat>> =
                mul_images.iter().map(|g| g.slice_coords(&amb_b)).collect();
            let r_mul = if mul_rows.is_empty() {
                0
            } else {
                rank(&RatMatrix::from_rows(&mul_rows))
            };
            let composite_zero = mul_images
                .iter()
                .all(|g| right_map(g).iter().all(|x| x.is_zero()));
            let l_ok = r_mul == dim_a
                && mul_rows.iter().all(|row| in_span(&b_rows, row))
                && composite_zero;

            let right_rows: Vec<Vec<Rat>> = basis_b.iter().map(|g| right_map(g)).collect();
            let r_right = if right_rows.is_empty() {
                0
            } else {
                rank(&RatMatrix::from_rows(&right_rows))
            };
            let contained = right_rows.iter().all(|row| in_span(&c_rows, row));
            let m_ok = composite_zero && r_right == dim_b - r_mul;
            let r_ok = contained && r_right == dim_c1 + dim_c2;
            let image_in_c = if contained {
                r_right
            } else {
                let mut both = c_rows.clone();
                both.extend(right_rows.iter().cloned());
                let union = if both.is_empty() {
                    0
                } else {
                    rank(&RatMatrix::from_rows(&both))
                };
                dim_c1 + dim_c2 + r_right - union
            };
            let coker_dim = dim_c1 + dim_c2 - image_in_c;
            coker = &coker + &LaurentSeries::monomial(coker_dim as i64, c as i64);
            entries.push(BidegreeEntry {
                cdeg: c,
                adeg: a,
                dim_deletion: dim_a,
                dim_middle: dim_b,
                dim_target: dim_c1 + dim_c2,
                rank_mul: r_mul,
                rank_right: r_right,
                left: l_ok,
                middle: m_ok,
                right: r_ok,
                cokernel_dim: coker_dim,
            });
        }
    }
    Ok(SuperSequenceReport {
        entries,
        cokernel: coker,
    })
}

/// The bigraded identity Hilb(Z_{L,k}) = q Hilb(Z_{L-i,k})
/// + (1+t) Hilb(Z_{L/i,k}), expected for k in {-1, 0}.
pub fn super_hilbert_identity(arr: &Arrangement, i: usize, k: i64) -> Result<bool, SuperZonoError> {
    if arr.is_loop(i) || arr.is_coloop(i) {
        return Err(SuperZonoError::LoopOrColoop(i));
    }
    let mid = super_bigraded_hilbert(arr, k)?.to_bivar();
    let del = super_bigraded_hilbert(&arr.deletion(i), k)?.to_bivar();
    let con = super_bigraded_hilbert(&arr.contraction(i)?, k)?.to_bivar();
    Ok(mid == del.shift(1, 0).add(&con).add(&con.shift(0, 1)))
}

/// The Boolean monomial span for k >= 0: monomials x^e dx_S with
/// sum(e) - #{ i not in S : e_i >= 1 } <= k, counted by bidegree, with
/// the homology of the dual differential on the span.
pub fn boolean_b(
    n: usize,
    k: i64,
) -> (BigradedTable, BTreeMap<(usize, usize), usize>) {
    assert!(k >= 0, "the Boolean family is defined for k >= 0");
    let mut monomials: Vec<TermKey> = Vec::new();
    let max_e = (k + 1) as u32;
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for e in &exps {
            for x in 0..=max_e {
                let mut e2 = e.clone();
                e2.push(x);
                next.push(e2);
            }
        }
        exps = next;
    }
    for e in &exps {
        for s in 0..(1u64 << n) as u32 {
            let total: i64 = e.iter().map(|&x| x as i64).sum();
            let credits = (0..n)
                .filter(|&i| s >> i & 1 == 0 && e[i] >= 1)
                .count() as i64;
            if total - credits <= k {
                monomials.push((e.clone(), s));
            }
        }
    }
    let mut by_deg: BTreeMap<(usize, usize), Vec<TermKey>> = BTreeMap::new();
    for key in &monomials {
        let deg = (
            key.0.iter().sum::<u32>() as usize,
            key.1.count_ones() as usize,
        );
        by_deg.entry(deg).or_default().push(key.clone());
    }
    let max_i = by_deg.keys().map(|&(i, _)| i).max().unwrap_or(0);
    let dims: Vec<Vec<usize>> = (0..=max_i)
        .map(|i| {
            (0..=n)
                .map(|j| by_deg.get(&(i, j)).map_or(0, |v| v.len()))
                .collect()
        })
        .collect();
    let table = BigradedTable {
        dims,
        terminated: true,
    };

    // dual differential: iota_E on the span; rank out of quotient bidegree
    // (i, j) is the rank of iota_E from span slice (i-1, j+1) to (i, j)
    let rank_d_out = |i: usize, j: usize| -> usize {
        if i == 0 || j >= n {
            return 0;
        }
        let source = match by_deg.get(&(i - 1, j + 1)) {
            Some(b) => b,
            None => return 0,
        };
        let target = match by_deg.get(&(i, j)) {
            Some(b) => b,
            None => return 0,
        };
        let rows: Vec<Vec<Rat>> = source
            .iter()
            .map(|(e, m)| {
                SuperElement::monomial(n, e.clone(), *m, rat_int(1))
                    .iota_euler()
                    .slice_coords(target)
            })
            .collect();
        if rows.is_empty() {
            0
        } else {
            rank(&RatMatrix::from_rows(&rows))
        }
    };
    let mut hom = BTreeMap::new();
    for (&(i, j), keys) in &by_deg {
        let out = rank_d_out(i, j);
        let into = if j == 0 { 0 } else { rank_d_out(i + 1, j - 1) };
        let h = keys.len() - out - into;
        if h > 0 {
            hom.insert((i, j), h);
        }
    }
    (table, hom)
}

/// Beta-invariant bridge: dims of the bidegrees (n-r, r-1) and
/// (n-r-1, r) of the k = -1 table, plus the rank of d between them.
pub fn beta_bridge(arr: &Arrangement) -> Result<(usize, usize, usize), SuperZonoError> {
    let r = arr.dim();
    let n = arr.ground_size();
    let spec = super_zonotopal_ideal(arr, -1)?;
    let table = super_bigraded_of_spec(&spec)?;
    let d1 = table.dim(n - r, r - 1);
    let d2 = if n > r { table.dim(n - r - 1, r) } else { 0 };
    // rank of d: Z^{n-r, r-1} -> Z^{n-r-1, r} via the adjoint
    let rank_d = if n > r {
        let source = super_inverse_basis(&spec, (n - r - 1, r));
        let ambient = slice_basis(r, (n - r, r - 1));
        let rows: Vec<Vec<Rat>> = source
            .iter()
            .map(|g| g.iota_euler().slice_coords(&ambient))
            .collect();
        if rows.is_empty() {
            0
        } else {
            rank(&RatMatrix::from_rows(&rows))
        }
    } else {
        0
    };
    Ok((d1, d2, rank_d))
}
