//! Power ideals of hyperplane arrangements: graded ideal dimensions,
//! Hilbert functions of the quotient with certified termination, and
//! Macaulay inverse-system bases extracted by apolarity.
//!
//! An exponent map assigns an integer a_F to each proper flat; the ideal
//! is generated, per flat, by all (m_F + 1)-st powers of vectors of L_F,
//! where m_F = min { a_{F'} : F' flat, F' subseteq F }. Over an infinite
//! field those powers span Sym^{m_F+1}(L_F), which gives the finite
//! generating set used here.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arrangement::{primitive, Arrangement, Flat};
use crate::linalg::{kernel_basis, rank, rat_int, Rat, RatMatrix};
use crate::series::HilbertFunction;
use crate::superspace::{slice_basis, sym_dim, SuperElement, TermKey};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum PowerIdealError {
    #[error("degree cap {cap} reached at nonzero dimension; non-Artinian input")]
    CapExceeded { cap: usize },
    #[error("not a polymatroid: {0}")]
    NotAPolymatroid(String),
    #[error("exponent map domain must be exactly the proper flats")]
    InvalidExponentDomain,
    #[error(transparent)]
    Arrangement(#[from] crate::arrangement::ArrangementError),
}

/// Which proper flats contribute generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlatSelection {
    AllProper,
    /// Only rank-(r-1) flats (the cocircuit directions).
    CocircuitsOnly,
}

/// Integer exponent a_F for every proper flat, keyed by member mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMap {
    values: BTreeMap<u32, i64>,
}

impl ExponentMap {
    /// Domain must be exactly the proper flats of `arr`.
    pub fn new(arr: &Arrangement, values: BTreeMap<u32, i64>) -> Result<Self, PowerIdealError> {
        let proper: Vec<u32> = arr.proper_flats()?.iter().map(|f| f.members).collect();
        let domain: Vec<u32> = values.keys().copied().collect();
        if proper != domain {
            return Err(PowerIdealError::InvalidExponentDomain);
        }
        Ok(ExponentMap { values })
    }

    pub fn from_fn(
        arr: &Arrangement,
        f: impl Fn(&Flat) -> i64,
    ) -> Result<Self, PowerIdealError> {
        let values = arr
            .proper_flats()?
            .iter()
            .map(|fl| (fl.members, f(fl)))
            .collect();
        Ok(ExponentMap { values })
    }

    pub fn constant(arr: &Arrangement, c: i64) -> Result<Self, PowerIdealError> {
        Self::from_fn(arr, |_| c)
    }

    pub fn value(&self, mask: u32) -> Option<i64> {
        self.values.get(&mask).copied()
    }

    /// m_F: the minimum of a_{F'} over flats F' contained in F.
    pub fn effective_exponent(&self, mask: u32) -> i64 {
        self.values
            .iter()
            .filter(|(&m, _)| m & mask == m)
            .map(|(_, &a)| a)
            .min()
            .expect("flat lattice has a minimal element")
    }

    /// Effective exponent of the minimal flat cl(emptyset). The ideal
    /// contains v^{m+1} for generic v, so the inverse system has degree
    /// <= m in every direction; this bounds the socle degree by r*m.
    pub fn minimal_flat_exponent(&self) -> i64 {
        // a rank-0 arrangement has no proper flats and its quotient is the
        // ground field, so any nonnegative bound works
        match self.values.keys().copied().min_by_key(|m| m.count_ones()) {
            Some(mask) => self.effective_exponent(mask),
            None => 0,
        }
    }
}

/// One flat's contribution: polynomial generators of one degree.
#[derive(Debug, Clone)]
pub struct FlatGenerators {
    pub flat_mask: u32,
    pub degree: usize,
    /// Spans the image of Sym^degree(L_F) in Sym^degree(L).
    pub elements: Vec<SuperElement>,
    /// True when L_F is the whole space, so the ideal contains all of
    /// Sym^degree(L) and every degree above it.
    pub full_space: bool,
}

/// Generators of the power ideal for the selected flats.
#[derive(Debug, Clone)]
pub struct IdealGenerators {
    pub num_vars: usize,
    pub unit_ideal: bool,
    pub groups: Vec<FlatGenerators>,
}

pub fn power_ideal_generators(
    arr: &Arrangement,
    a: &ExponentMap,
    sel: FlatSelection,
) -> Result<IdealGenerators, PowerIdealError> {
    let r = arr.dim();
    let mut groups = Vec::new();
    let mut unit = false;
    for flat in arr.proper_flats()? {
        if sel == FlatSelection::CocircuitsOnly && flat.rk != r - 1 {
            continue;
        }
        let m = a.effective_exponent(flat.members);
        if m < 0 {
            unit = true;
            continue;
        }
        let deg = (m + 1) as usize;
        let basis: Vec<Vec<Rat>> = flat.subspace_basis.iter().map(|v| primitive(v)).collect();
        let forms: Vec<SuperElement> = basis.iter().map(|v| SuperElement::linear_form(v)).collect();
        let mut elements = Vec::new();
        for combo in multisets(forms.len(), deg as u32) {
            let mut g = SuperElement::one(r);
            for (idx, &e) in combo.iter().enumerate() {
                if e > 0 {
                    g = g.mul(&forms[idx].pow(e));
                }
            }
            elements.push(g);
        }
        groups.push(FlatGenerators {
            flat_mask: flat.members,
            degree: deg,
            elements,
            full_space: basis.len() == r,
        });
    }
    Ok(IdealGenerators {
        num_vars: r,
        unit_ideal: unit,
        groups,
    })
}

/// Exponent combinations (e_1, ..., e_parts) with sum = total.
fn multisets(parts: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn rec(parts: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=total {
            prefix.push(e);
            rec(parts - 1, total - e, prefix, out);
            prefix.pop();
        }
    }
    if parts > 0 {
        rec(parts, total, &mut prefix, &mut out);
    }
    out
}

/// Rows spanning I_d in the monomial coordinates of Sym^d(L), or None
/// when I_d is all of Sym^d (unit ideal or a full-space flat reached).
fn ideal_slice_rows(gens: &IdealGenerators, d: usize) -> Option<Vec<Vec<Rat>>> {
    if gens.unit_ideal {
        return None;
    }
    let r = gens.num_vars;
    let basis: Vec<TermKey> = slice_basis(r, (d, 0));
    let index: BTreeMap<&TermKey, usize> = basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut rows = Vec::new();
    for group in &gens.groups {
        if group.degree > d {
            continue;
        }
        if group.full_space {
            return None;
        }
        let shift = (d - group.degree) as u32;
        for g in &group.elements {
            for mono in multisets(r, shift) {
                let mut row = vec![Rat::zero(); basis.len()];
                for ((e, _), c) in g.terms() {
                    let key: TermKey = (
                        e.iter().zip(&mono).map(|(a, b)| a + b).collect(),
                        0,
                    );
                    row[index[&key]] = c.clone();
                }
                rows.push(row);
            }
        }
    }
    Some(rows)
}

/// Dimension of the degree-d piece of the power ideal inside Sym^d(L).
pub fn ideal_graded_dim(
    arr: &Arrangement,
    a: &ExponentMap,
    sel: FlatSelection,
    d: usize,
) -> Result<usize, PowerIdealError> {
    let gens = power_ideal_generators(arr, a, sel)?;
    Ok(ideal_slice_dim(&gens, arr.dim(), d))
}

fn ideal_slice_dim(gens: &IdealGenerators, r: usize, d: usize) -> usize {
    match ideal_slice_rows(gens, d) {
        None => sym_dim(r, d),
        Some(rows) => {
            if rows.is_empty() {
                0
            } else {
                rank(&RatMatrix::from_rows(&rows))
            }
        }
    }
}

/// Hilbert function of Sym(L) / I, computed degree by degree and stopped
/// at the first vanishing degree (which certifies all later degrees
/// vanish, since the quotient is generated in degree 0 as a module over
/// itself and a zero graded piece of a standard graded algebra kills all
/// higher pieces).
pub fn hilbert_quotient(
    arr: &Arrangement,
    a: &ExponentMap,
    sel: FlatSelection,
) -> Result<HilbertFunction, PowerIdealError> {
    hilbert_quotient_with_cap(arr, a, sel, None)
}

pub fn hilbert_quotient_with_cap(
    arr: &Arrangement,
    a: &ExponentMap,
    sel: FlatSelection,
    cap_override: Option<usize>,
) -> Result<HilbertFunction, PowerIdealError> {
    let gens = power_ideal_generators(arr, a, sel)?;
    if gens.unit_ideal {
        return Ok(HilbertFunction::new(vec![], true));
    }
    let r = arr.dim();
    let cap = cap_override.unwrap_or_else(|| {
        let m = a.minimal_flat_exponent().max(0) as usize;
        r * m + 1
    });
    let mut dims = Vec::new();
    for d in 0..=cap {
        let dim = sym_dim(r, d) - ideal_slice_dim(&gens, r, d);
        if dim == 0 {
            return Ok(HilbertFunction::new(dims, true));
        }
        dims.push(dim);
    }
    Err(PowerIdealError::CapExceeded { cap })
}

/// Basis of the degree-d inverse system: all g in Sym^d(L*) with
/// pairing(h, g) = 0 for every h in I_d. Elements are represented on the
/// dual monomial basis.
pub fn inverse_system_basis(
    arr: &Arrangement,
    a: &ExponentMap,
    sel: FlatSelection,
    d: usize,
) -> Result<Vec<SuperElement>, PowerIdealError> {
    let gens = power_ideal_generators(arr, a, sel)?;
    Ok(inverse_slice_basis(&gens, arr.dim(), d))
}

fn inverse_slice_basis(gens: &IdealGenerators, r: usize, d: usize) -> Vec<SuperElement> {
    let basis: Vec<TermKey> = slice_basis(r, (d, 0));
    let rows = match ideal_slice_rows(gens, d) {
        None => return vec![],
        Some(rows) => rows,
    };
    if rows.is_empty() {
        return basis
            .iter()
            .map(|(e, _)| SuperElement::monomial(r, e.clone(), 0, Rat::one()))
            .collect();
    }
    // pairing(h, g) = sum_alpha h_alpha g_alpha alpha!, so solve A D c = 0
    // by solving A z = 0 and setting c_alpha = z_alpha / alpha!
    let kernel = kernel_basis(&RatMatrix::from_rows(&rows));
    kernel
        .into_iter()
        .map(|z| {
            let mut g = SuperElement::zero(r);
            for (idx, (e, _)) in basis.iter().enumerate() {
                if !z[idx].is_zero() {
                    let f = factorial_product(e);
                    g = g.add(&SuperElement::monomial(r, e.clone(), 0, &z[idx] / f));
                }
            }
            g
        })
        .collect()
}

fn factorial_product(e: &[u32]) -> Rat {
    let mut f = Rat::one();
    for &a in e {
        for t in 2..=a as i64 {
            f *= rat_int(t);
        }
    }
    f
}

/// Report from checking the polymatroid span description.
#[derive(Debug, Clone)]
pub struct PolymatroidReport {
    pub quotient: HilbertFunction,
    pub span_dims: Vec<usize>,
    pub agree: bool,
}

/// Values of a set function on all subsets of E, keyed by mask.
pub type SetFunction = BTreeMap<u32, i64>;

pub fn polymatroid_rank_function(arr: &Arrangement) -> SetFunction {
    let n = arr.ground_size();
    (0..(1u64 << n) as u32)
        .map(|mask| (mask, arr.subset_rank(mask) as i64))
        .collect()
}

pub fn dual_rank_function(arr: &Arrangement) -> SetFunction {
    let n = arr.ground_size();
    let r = arr.dim();
    let full = ((1u64 << n) - 1) as u32;
    (0..=full)
        .map(|mask| {
            let comp = full & !mask;
            let dual_rk = mask.count_ones() as i64 + arr.subset_rank(comp) as i64 - r as i64;
            (mask, dual_rk)
        })
        .collect()
}

fn check_polymatroid(n: usize, f: &SetFunction) -> Result<(), PowerIdealError> {
    let full = ((1u64 << n) - 1) as u32;
    let get = |mask: u32| -> Result<i64, PowerIdealError> {
        f.get(&mask)
            .copied()
            .ok_or_else(|| PowerIdealError::NotAPolymatroid(format!("missing subset {mask:b}")))
    };
    if get(0)? != 0 {
        return Err(PowerIdealError::NotAPolymatroid("f(empty) != 0".into()));
    }
    for s in 0..=full {
        for i in 0..n as u32 {
            if s >> i & 1 == 0 && get(s)? > get(s | 1 << i)? {
                return Err(PowerIdealError::NotAPolymatroid(format!(
                    "not monotone at {s:b} + element {i}"
                )));
            }
        }
    }
    for s in 0..=full {
        for t in 0..=full {
            if get(s & t)? + get(s | t)? > get(s)? + get(t)? {
                return Err(PowerIdealError::NotAPolymatroid(format!(
                    "not submodular at {s:b}, {t:b}"
                )));
            }
        }
    }
    Ok(())
}

/// Checks that the inverse system of the polymatroid power ideal
/// (a_F = f(E minus F)) has the same graded dimensions as the span of the
/// coordinate monomials x^a with sum_{i in S} a_i <= f(S) for all S.
pub fn polymatroid_span_check(
    arr: &Arrangement,
    f: &SetFunction,
) -> Result<PolymatroidReport, PowerIdealError> {
    let n = arr.ground_size();
    let r = arr.dim();
    check_polymatroid(n, f)?;
    let full = ((1u64 << n) - 1) as u32;
    let a = ExponentMap::from_fn(arr, |fl| f[&(full & !fl.members)])?;
    let quotient = hilbert_quotient(arr, &a, FlatSelection::AllProper)?;

    // enumerate lattice points a with sum_{i in S} a_i <= f(S)
    let cap_total = f[&full].max(0) as u32;
    let mut points: Vec<Vec<u32>> = Vec::new();
    collect_points(n, cap_total, &mut vec![], &mut points);
    points.retain(|a| {
        (0..=full).all(|s| {
            let total: i64 = (0..n)
                .filter(|&i| s >> i & 1 == 1)
                .map(|i| a[i] as i64)
                .sum();
            total <= f[&s]
        })
    });

    // x_i pulled back to L is the i-th column as a linear form on L
    let coord_forms: Vec<SuperElement> = (0..n)
        .map(|i| SuperElement::linear_form(&arr.form(i)))
        .collect();
    let max_deg = points.iter().map(|a| a.iter().sum::<u32>()).max().unwrap_or(0) as usize;
    let mut span_dims = Vec::new();
    for d in 0..=max_deg {
        let basis = slice_basis(r, (d, 0));
        let mut rows = Vec::new();
        for pt in points.iter().filter(|a| a.iter().sum::<u32>() as usize == d) {
            let mut g = SuperElement::one(r);
            for (i, &e) in pt.iter().enumerate() {
                if e > 0 {
                    g = g.mul(&coord_forms[i].pow(e));
                }
            }
            rows.push(g.slice_coords(&basis));
        }
        let dim = if rows.is_empty() {
            0
        } else {
            rank(&RatMatrix::from_rows(&rows))
        };
        span_dims.push(dim);
    }
    while span_dims.last() == Some(&0) {
        span_dims.pop();
    }
    let agree = span_dims == quotient.dims;
    Ok(PolymatroidReport {
        quotient,
        span_dims,
        agree,
    })
}

fn collect_points(n: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for e in 0..=budget {
        prefix.push(e);
        collect_points(n, budget - e, prefix, out);
        prefix.pop();
    }
}

/// True if `v`'s coordinate vector lies in the row span of `span`.
pub fn in_span(span: &[Vec<Rat>], v: &[Rat]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if span.is_empty() {
        return false;
    }
    let base = rank(&RatMatrix::from_rows(span));
    let mut all: Vec<Vec<Rat>> = span.to_vec();
    all.push(v.to_vec());
    rank(&RatMatrix::from_rows(&all)) == base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::dot;
    use crate::corpus;

    fn zonotopal_map(arr: &Arrangement, k: i64) -> ExponentMap {
        let n = arr.ground_size() as i64;
        ExponentMap::from_fn(arr, |f| n - f.size() as i64 + k).unwrap()
    }

    #[test]
    fn effective_exponent_examples() {
        let arr = corpus::u23();
        let a = ExponentMap::constant(&arr, 2).unwrap();
        for fl in arr.proper_flats().unwrap() {
            assert_eq!(a.effective_exponent(fl.members), 2);
        }
        // zonotopal preset: on a rank-(r-1) flat the min over subflats is
        // attained at the flat itself
        let z = zonotopal_map(&arr, 0);
        for fl in arr.proper_flats().unwrap() {
            if fl.rk == arr.dim() - 1 {
                assert_eq!(
                    z.effective_exponent(fl.members),
                    3 - fl.size() as i64
                );
            }
        }
        let neg = ExponentMap::from_fn(&arr, |f| if f.size() == 0 { -1 } else { 5 }).unwrap();
        for fl in arr.proper_flats().unwrap() {
            assert_eq!(neg.effective_exponent(fl.members), -1);
        }
    }

    #[test]
    fn ideal_dims_boolean2_k0() {
        let arr = corpus::boolean(2);
        let a = zonotopal_map(&arr, 0);
        // generators e1^2, e2^2 bind from degree 2
        assert_eq!(ideal_graded_dim(&arr, &a, FlatSelection::CocircuitsOnly, 0).unwrap(), 0);
        assert_eq!(ideal_graded_dim(&arr, &a, FlatSelection::CocircuitsOnly, 1).unwrap(), 0);
        assert_eq!(ideal_graded_dim(&arr, &a, FlatSelection::CocircuitsOnly, 2).unwrap(), 2);
        let h = hilbert_quotient(&arr, &a, FlatSelection::CocircuitsOnly).unwrap();
        assert_eq!(h.dims, vec![1, 2, 1]);
    }

    #[test]
    fn u23_central_ideal_dims() {
        let arr = corpus::u23();
        let a = zonotopal_map(&arr, -1);
        // three squares of pairwise-independent forms span Sym^2
        assert_eq!(ideal_graded_dim(&arr, &a, FlatSelection::CocircuitsOnly, 2).unwrap(), 3);
        let h = hilbert_quotient(&arr, &a, FlatSelection::CocircuitsOnly).unwrap();
        assert_eq!(h.dims, vec![1, 2]);
    }

    #[test]
    fn u24_central() {
        let arr = corpus::u24();
        let h = hilbert_quotient(&arr, &zonotopal_map(&arr, -1), FlatSelection::CocircuitsOnly)
            .unwrap();
        assert_eq!(h.dims, vec![1, 2, 3]);
    }

    #[test]
    fn mk4_k_minus3() {
        let arr = corpus::mk4();
        let h = hilbert_quotient(&arr, &zonotopal_map(&arr, -3), FlatSelection::CocircuitsOnly)
            .unwrap();
        assert_eq!(h.dims, vec![1]);
    }

    #[test]
    fn unit_ideal_gives_zero_quotient() {
        let arr = corpus::u23();
        let a = ExponentMap::constant(&arr, -1).unwrap();
        let h = hilbert_quotient(&arr, &a, FlatSelection::AllProper).unwrap();
        assert!(h.dims.is_empty() && h.terminated);
        assert_eq!(
            ideal_graded_dim(&arr, &a, FlatSelection::AllProper, 2).unwrap(),
            sym_dim(2, 2)
        );
    }

    #[test]
    fn all_flats_equals_cocircuits_for_nonpositive_k() {
        for (name, arr) in corpus::all() {
            if arr.ground_size() > 6 {
                continue;
            }
            for k in [-3i64, -2, -1, 0] {
                let a = zonotopal_map(&arr, k);
                let h_all = hilbert_quotient(&arr, &a, FlatSelection::AllProper).unwrap();
                let h_coc = hilbert_quotient(&arr, &a, FlatSelection::CocircuitsOnly).unwrap();
                assert_eq!(h_all, h_coc, "{name} k={k}");
            }
        }
    }

    #[test]
    fn monotone_exponents_give_monotone_hilbert() {
        let arr = corpus::u23();
        for k in [-2i64, -1, 0] {
            let lo = hilbert_quotient(&arr, &zonotopal_map(&arr, k), FlatSelection::AllProper)
                .unwrap();
            let hi = hilbert_quotient(&arr, &zonotopal_map(&arr, k + 1), FlatSelection::AllProper)
                .unwrap();
            for (d, &dim) in lo.dims.iter().enumerate() {
                assert!(hi.dims.get(d).copied().unwrap_or(0) >= dim);
            }
        }
    }

    #[test]
    fn inverse_system_counts_and_annihilation() {
        let arr = corpus::u23();
        let a = zonotopal_map(&arr, -1);
        let gens = power_ideal_generators(&arr, &a, FlatSelection::CocircuitsOnly).unwrap();
        let h = hilbert_quotient(&arr, &a, FlatSelection::CocircuitsOnly).unwrap();
        for (d, &dim) in h.dims.iter().enumerate() {
            let basis = inverse_system_basis(&arr, &a, FlatSelection::CocircuitsOnly, d).unwrap();
            assert_eq!(basis.len(), dim);
            for g in &basis {
                for group in &gens.groups {
                    for h_gen in &group.elements {
                        assert!(h_gen.odot(g).is_zero());
                    }
                }
            }
        }
        // degree 0 basis is {1}
        let b0 = inverse_system_basis(&arr, &a, FlatSelection::CocircuitsOnly, 0).unwrap();
        assert_eq!(b0.len(), 1);
        // degree 1: all linear forms
        let b1 = inverse_system_basis(&arr, &a, FlatSelection::CocircuitsOnly, 1).unwrap();
        assert_eq!(b1.len(), 2);
    }

    #[test]
    fn boolean2_inverse_degree2_is_x1x2() {
        let arr = corpus::boolean(2);
        let a = zonotopal_map(&arr, 0);
        let b = inverse_system_basis(&arr, &a, FlatSelection::CocircuitsOnly, 2).unwrap();
        assert_eq!(b.len(), 1);
        let g = &b[0];
        assert!(g.coeff(&[2, 0], 0).is_zero());
        assert!(g.coeff(&[0, 2], 0).is_zero());
        assert!(!g.coeff(&[1, 1], 0).is_zero());
    }

    #[test]
    fn first_zero_truncation_is_sound() {
        for (name, arr) in [("u23", corpus::u23()), ("boolean_2", corpus::boolean(2))] {
            for k in [-1i64, 0] {
                let a = zonotopal_map(&arr, k);
                let h = hilbert_quotient(&arr, &a, FlatSelection::AllProper).unwrap();
                let d = h.dims.len();
                assert_eq!(
                    ideal_graded_dim(&arr, &a, FlatSelection::AllProper, d + 1).unwrap(),
                    sym_dim(arr.dim(), d + 1),
                    "{name} k={k}"
                );
            }
        }
    }

    #[test]
    fn translation_closure() {
        let arr = corpus::u23();
        let a = zonotopal_map(&arr, -1);
        let h = hilbert_quotient(&arr, &a, FlatSelection::AllProper).unwrap();
        let top = h.dims.len() - 1;
        // union of bases in degrees <= top, in total-degree-<=top coords
        let mut ambient: Vec<TermKey> = Vec::new();
        for d in 0..=top {
            ambient.extend(slice_basis(arr.dim(), (d, 0)));
        }
        let mut span: Vec<Vec<Rat>> = Vec::new();
        for d in 0..=top {
            for g in inverse_system_basis(&arr, &a, FlatSelection::AllProper, d).unwrap() {
                span.push(g.slice_coords(&ambient));
            }
        }
        let v = [rat_int(3), rat_int(-2)];
        for g in inverse_system_basis(&arr, &a, FlatSelection::AllProper, top).unwrap() {
            // g(x + v) expanded with binomials
            let mut shifted = SuperElement::zero(2);
            for ((e, _), c) in g.terms() {
                let mut term = SuperElement::scalar(2, c.clone());
                for (j, &exp) in e.iter().enumerate() {
                    let lin = SuperElement::var(2, j)
                        .add(&SuperElement::scalar(2, v[j].clone()));
                    term = term.mul(&lin.pow(exp));
                }
                shifted = shifted.add(&term);
            }
            assert!(in_span(&span, &shifted.slice_coords(&ambient)));
        }
    }

    #[test]
    fn polymatroid_trivial_and_cardinality() {
        let arr = corpus::boolean(2);
        let zero: SetFunction = (0..4u32).map(|m| (m, 0)).collect();
        let rep = polymatroid_span_check(&arr, &zero).unwrap();
        assert!(rep.agree);
        assert_eq!(rep.quotient.dims, vec![1]);

        let card: SetFunction = (0..4u32).map(|m| (m, m.count_ones() as i64)).collect();
        let rep = polymatroid_span_check(&arr, &card).unwrap();
        assert!(rep.agree);
        assert_eq!(rep.quotient.dims, vec![1, 2, 1]);
    }

    #[test]
    fn polymatroid_dual_rank_u23() {
        let arr = corpus::u23();
        let f = dual_rank_function(&arr);
        let rep = polymatroid_span_check(&arr, &f).unwrap();
        assert!(rep.agree);
        assert_eq!(
            rep.quotient.total_dim() as i64,
            arr.tutte().unwrap().eval_i64(1, 1)
        );
    }

    #[test]
    fn polymatroid_rejects_non_submodular() {
        let arr = corpus::boolean(2);
        // f({1}) = f({2}) = 0 but f(E) = 1 violates submodularity
        let f: SetFunction = [(0u32, 0i64), (1, 0), (2, 0), (3, 1)].into_iter().collect();
        assert!(matches!(
            polymatroid_span_check(&arr, &f),
            Err(PowerIdealError::NotAPolymatroid(_))
        ));
    }

    #[test]
    fn exponent_map_rejects_wrong_domain() {
        let arr = corpus::u23();
        let values: BTreeMap<u32, i64> = [(0u32, 1i64)].into_iter().collect();
        assert!(ExponentMap::new(&arr, values).is_err());
    }

    #[test]
    fn dual_rank_is_polymatroid_on_corpus() {
        for (name, arr) in corpus::all() {
            if arr.ground_size() > 5 {
                continue;
            }
            let f = dual_rank_function(&arr);
            assert!(
                check_polymatroid(arr.ground_size(), &f).is_ok(),
                "{name} dual rank not polymatroid"
            );
        }
    }

    #[test]
    fn in_span_and_dot_behave() {
        let rows = vec![
            vec![rat_int(1), rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(1), rat_int(1)],
        ];
        assert!(in_span(&rows, &[rat_int(1), rat_int(1), rat_int(2)]));
        assert!(!in_span(&rows, &[rat_int(0), rat_int(0), rat_int(1)]));
        assert_eq!(
            dot(&[rat_int(1), rat_int(2)], &[rat_int(3), rat_int(4)]),
            rat_int(11)
        );
    }
}
