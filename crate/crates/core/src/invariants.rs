//! Tutte-coefficient identities and the equivariant Euler characteristic
//! of the line bundle family on the wonderful model, computed by
//! deletion-contraction with projective-space base cases.

use crate::arrangement::{Arrangement, ArrangementError};
use crate::series::LaurentSeries;
use crate::superspace::sym_dim;
use crate::zonotopal::{zonotopal_hilbert, ZonotopalError, ZonotopalSpec};

/// C(n, k) with the convention C(n, k) = 0 for k < 0 or k > n.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

/// The alternating-sum expressions in the Tutte coefficients, one per
/// 1 <= k <= n-1; all should vanish.
pub fn brylawski_sums(arr: &Arrangement) -> Result<Vec<i64>, ArrangementError> {
    let t = arr.tutte()?;
    let n = arr.ground_size() as i64;
    let r = arr.dim() as i64;
    let mut sums = Vec::new();
    for k in 1..n {
        let mut total: i64 = 0;
        for i in 0..=k {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let mut inner: i64 = 0;
            for u in 0..=(r - k + i).max(0) {
                let j = n - r - i;
                if u < 0 || j < 0 {
                    continue;
                }
                inner += binomial(r - u, k - i) * t.coeff(u as usize, j as usize);
            }
            total += sign * inner;
        }
        sums.push(total);
    }
    Ok(sums)
}

pub fn brylawski_check(arr: &Arrangement) -> Result<Vec<bool>, ArrangementError> {
    Ok(brylawski_sums(arr)?.into_iter().map(|s| s == 0).collect())
}

/// The beta invariant equals the beta invariant of the dual matroid.
pub fn beta_duality_check(arr: &Arrangement) -> Result<bool, ArrangementError> {
    let t = arr.tutte()?;
    Ok(t.coeff(1, 0) == t.coeff(0, 1))
}

/// chi_q(P^rho, O(m)) in the graded convention pinned by the anchors
/// chi(1, -2) = -q^{-1} and chi(rho, m) = 1 for m = 0.
pub fn projective_chi(rho: usize, m: i64) -> LaurentSeries {
    let rho_i = rho as i64;
    if m >= 0 {
        let mut s = LaurentSeries::zero();
        for d in 0..=m {
            s = &s + &LaurentSeries::monomial(sym_dim(rho, d as usize) as i64, d);
        }
        s
    } else if m >= -rho_i {
        LaurentSeries::zero()
    } else {
        let sign = if rho % 2 == 0 { 1 } else { -1 };
        let mut s = LaurentSeries::zero();
        for d in 0..=(-m - rho_i - 1) {
            s = &s
                + &LaurentSeries::monomial(sign * sym_dim(rho, d as usize) as i64, -d - rho_i);
        }
        s
    }
}

fn euler_char_with_order(
    arr: &Arrangement,
    k: i64,
    last_first: bool,
) -> Result<LaurentSeries, ArrangementError> {
    let n = arr.ground_size();
    let candidates: Vec<usize> = (0..n)
        .filter(|&i| !arr.is_loop(i) && !arr.is_coloop(i))
        .collect();
    let pick = if last_first {
        candidates.last().copied()
    } else {
        candidates.first().copied()
    };
    match pick {
        Some(i) => {
            let con = euler_char_with_order(&arr.contraction(i)?, k, last_first)?;
            let del = euler_char_with_order(&arr.deletion(i), k, last_first)?;
            Ok(&con + &del.shift(1))
        }
        None => {
            // all elements are loops (deleted freely) or coloops
            let rho = arr.coloops().len();
            Ok(projective_chi(rho, k + 1))
        }
    }
}

/// chi of the line-bundle twist indexed by k, by deletion-contraction
/// chi(L) = chi(L/i) + q chi(L - i) down to loop-coloop base cases.
pub fn euler_char_lm(arr: &Arrangement, k: i64) -> Result<LaurentSeries, ArrangementError> {
    euler_char_with_order(arr, k, false)
}

/// The recursion gives the same answer whichever eligible element is
/// processed first.
pub fn euler_order_independent(arr: &Arrangement, k: i64) -> Result<bool, ArrangementError> {
    Ok(euler_char_with_order(arr, k, false)? == euler_char_with_order(arr, k, true)?)
}

/// euler_char_lm agrees with Hilb(Z_{L,k}) throughout the vanishing
/// range k in {-1, -2}.
pub fn euler_consistency(arr: &Arrangement) -> Result<bool, ZonotopalError> {
    for k in [-1i64, -2] {
        let chi = euler_char_lm(arr, k).map_err(ZonotopalError::Arrangement)?;
        let hilb = zonotopal_hilbert(arr, &ZonotopalSpec::plain(k))?.to_series();
        if chi != hilb {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(4, -1), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn brylawski_u23_hand_value() {
        // t_{2,0} = t_{1,0} = t_{0,1} = 1; k = 1 sum is 2 - 2 = 0
        let sums = brylawski_sums(&corpus::u23()).unwrap();
        assert_eq!(sums, vec![0, 0]);
    }

    #[test]
    fn brylawski_corpus_wide() {
        for (name, arr) in corpus::all() {
            if arr.ground_size() < 2 {
                continue;
            }
            let checks = brylawski_check(&arr).unwrap();
            assert_eq!(checks.len(), arr.ground_size() - 1, "{name}");
            assert!(checks.iter().all(|&b| b), "{name}");
        }
    }

    #[test]
    fn brylawski_permutation_invariant() {
        // reverse the columns of mk4: the Tutte polynomial and hence the
        // sums are unchanged
        let arr = corpus::mk4();
        let m = arr.matrix();
        let rows: Vec<Vec<i64>> = (0..m.rows)
            .map(|i| {
                (0..m.cols)
                    .rev()
                    .map(|j| m.at(i, j).to_integer().try_into().unwrap())
                    .collect()
            })
            .collect();
        let rows_ref: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let rev = Arrangement::from_i64(&rows_ref).unwrap();
        assert_eq!(
            brylawski_sums(&arr).unwrap(),
            brylawski_sums(&rev).unwrap()
        );
    }

    #[test]
    fn beta_duality() {
        for (name, arr) in corpus::all() {
            if arr.ground_size() < 2 {
                continue;
            }
            assert!(beta_duality_check(&arr).unwrap(), "{name}");
        }
        let u24 = corpus::u24();
        assert_eq!(u24.beta().unwrap(), 2);
        assert_eq!(corpus::boolean(2).beta().unwrap(), 0);
    }

    #[test]
    fn projective_anchors() {
        assert_eq!(projective_chi(1, -2), LaurentSeries::monomial(-1, -1));
        assert_eq!(projective_chi(0, 5), LaurentSeries::one());
        assert_eq!(projective_chi(0, -7), LaurentSeries::one());
        assert_eq!(projective_chi(2, -1), LaurentSeries::zero());
        assert_eq!(projective_chi(2, -2), LaurentSeries::zero());
        let m1 = projective_chi(1, 2);
        assert_eq!(m1.coeff(0), 1);
        assert_eq!(m1.coeff(1), 1);
        assert_eq!(m1.coeff(2), 1);
        // Serre duality shape: chi(rho, m) for m = -rho-1 is (-1)^rho q^{-rho}
        assert_eq!(projective_chi(3, -4), LaurentSeries::monomial(-1, -3));
    }

    #[test]
    fn projective_hyperplane_shadow() {
        // chi(rho, m) - q chi(rho, m-1) = chi(rho-1, m)
        for rho in 1..=4usize {
            for m in -7i64..=4 {
                let lhs = &projective_chi(rho, m) - &projective_chi(rho, m - 1).shift(1);
                assert_eq!(lhs, projective_chi(rho - 1, m), "rho={rho} m={m}");
            }
        }
    }

    #[test]
    fn euler_base_cases() {
        let single = corpus::boolean(1);
        assert_eq!(
            euler_char_lm(&single, -3).unwrap(),
            LaurentSeries::monomial(-1, -1)
        );
        assert_eq!(euler_char_lm(&single, -1).unwrap(), LaurentSeries::one());
    }

    #[test]
    fn euler_mk4_k_minus3() {
        assert_eq!(
            euler_char_lm(&corpus::mk4(), -3).unwrap(),
            LaurentSeries::one()
        );
    }

    #[test]
    fn euler_u23_values() {
        let chi = euler_char_lm(&corpus::u23(), -1).unwrap();
        assert_eq!(chi.coeff(0), 1);
        assert_eq!(chi.coeff(1), 2);
        assert_eq!(euler_char_lm(&corpus::u23(), -2).unwrap(), LaurentSeries::one());
    }

    #[test]
    fn euler_order_independent() {
        for (name, arr) in corpus::all() {
            for k in [-1i64, -2, -3] {
                assert_eq!(
                    euler_char_with_order(&arr, k, false).unwrap(),
                    euler_char_with_order(&arr, k, true).unwrap(),
                    "{name} k={k}"
                );
            }
        }
    }

    #[test]
    fn euler_matches_hilbert() {
        for (name, arr) in corpus::all() {
            assert!(euler_consistency(&arr).unwrap(), "{name}");
        }
    }
}
