//! End-to-end acceptance gate: one test per certified claim, each
//! printing a single pass line on success. Every comparison is exact.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zlab_core::arrangement::Arrangement;
use zlab_core::corpus;
use zlab_core::invariants::{
    beta_duality_check, brylawski_check, euler_char_lm, euler_consistency,
    euler_order_independent,
};
use zlab_core::linalg::rat_int;
use zlab_core::powerideal::{
    dual_rank_function, hilbert_quotient, polymatroid_span_check, FlatSelection, SetFunction,
};
use zlab_core::series::LaurentSeries;
use zlab_core::superzono::{
    beta_bridge, boolean_b, d_complex_homology, default_splitting, super_deletion_contraction,
    verify_super_hilbert_formula,
};
use zlab_core::zonotopal::{
    deletion_contraction_hilbert_identity, deletion_contraction_sequence, h1_consistency,
    h1_formula, h1_tutte_identity, truncation_sequence, verify_hilbert, zonotopal_exponent_map,
    zonotopal_hilbert, OrderFilter, ZonotopalSpec,
};

const SEED: u64 = 7;

fn movable_elements(arr: &Arrangement) -> Vec<usize> {
    (0..arr.ground_size())
        .filter(|&i| !arr.is_loop(i) && !arr.is_coloop(i))
        .collect()
}

#[test]
fn c01_tutte_formula_hilbert_match() {
    for (name, arr) in corpus::all() {
        for k in [0i64, -1, -2] {
            let cmp = verify_hilbert(&arr, k).unwrap();
            assert!(
                cmp.equal,
                "{name} k={k}: {:?} vs {:?}",
                cmp.brute_force.dims, cmp.formula.dims
            );
        }
    }
    println!("c01 tutte-formula hilbert match: pass");
}

#[test]
fn c02_mk4_example_reproduction() {
    let arr = corpus::mk4();
    let h = zonotopal_hilbert(&arr, &ZonotopalSpec::plain(-3)).unwrap();
    assert_eq!(h.dims, vec![1]);
    let con = arr.contraction(4).unwrap();
    let h_con = zonotopal_hilbert(&con, &ZonotopalSpec::plain(-3)).unwrap();
    assert_eq!(h_con.dims, vec![1, 1]);
    let rep = deletion_contraction_sequence(&arr, 4, &ZonotopalSpec::plain(-3)).unwrap();
    assert!(!rep.right_exact_everywhere());
    assert_eq!(rep.cokernel, LaurentSeries::monomial(1, 1));
    println!("c02 rank-2 five-line example reproduction: pass");
}

#[test]
fn c03_deletion_contraction_exactness() {
    for (name, arr) in corpus::all() {
        for i in movable_elements(&arr) {
            for k in [-2i64, -1, 0, 1, 2] {
                let rep =
                    deletion_contraction_sequence(&arr, i, &ZonotopalSpec::plain(k)).unwrap();
                assert!(rep.left_exact_everywhere(), "{name} i={i} k={k} left");
                assert!(rep.middle_exact_everywhere(), "{name} i={i} k={k} middle");
                assert!(rep.right_exact_everywhere(), "{name} i={i} k={k} right");
                assert!(
                    deletion_contraction_hilbert_identity(&arr, i, k).unwrap(),
                    "{name} i={i} k={k} hilbert recursion"
                );
            }
        }
    }
    println!("c03 deletion-contraction exactness and recursion: pass");
}

#[test]
fn c04_cocircuit_reduction() {
    for (name, arr) in corpus::all() {
        for k in [0i64, -1, -2, -3] {
            let a = zonotopal_exponent_map(&arr, &ZonotopalSpec::plain(k)).unwrap();
            let all = hilbert_quotient(&arr, &a, FlatSelection::AllProper).unwrap();
            let coc = hilbert_quotient(&arr, &a, FlatSelection::CocircuitsOnly).unwrap();
            assert_eq!(all.dims, coc.dims, "{name} k={k}");
        }
    }
    println!("c04 cocircuit generating-set reduction: pass");
}

#[test]
fn c05_super_hilbert_formula() {
    for (name, arr) in corpus::all() {
        let (_, _, equal) = verify_super_hilbert_formula(&arr).unwrap();
        assert!(equal, "{name}");
    }
    let (table, _, _) = verify_super_hilbert_formula(&corpus::u23()).unwrap();
    assert_eq!(table.dim(0, 0), 1);
    assert_eq!(table.dim(1, 0), 2);
    assert_eq!(table.dim(0, 1), 2);
    assert_eq!(table.dim(1, 1), 1);
    assert_eq!(table.dim(0, 2), 1);
    assert_eq!(table.total_dim(), 7);
    println!("c05 super bigraded hilbert formula: pass");
}

#[test]
fn c06_d_complex_exactness() {
    let expected: BTreeMap<(usize, usize), usize> = [((0, 0), 1)].into_iter().collect();
    for (name, arr) in corpus::all() {
        for k in [-1i64, 0] {
            let hom = d_complex_homology(&arr, k).unwrap();
            assert_eq!(hom, expected, "{name} k={k}");
        }
    }
    for n in 1..=3usize {
        for k in [1i64, 2] {
            let (_, hom) = boolean_b(n, k);
            assert_eq!(hom, expected, "boolean family n={n} k={k}");
        }
    }
    println!("c06 differential exact except at the origin: pass");
}

#[test]
fn c07_super_deletion_contraction() {
    for (name, arr) in corpus::all() {
        for i in movable_elements(&arr) {
            for k in [-1i64, 0] {
                let rep = super_deletion_contraction(&arr, i, k, None).unwrap();
                assert!(rep.left_exact_everywhere(), "{name} i={i} k={k} left");
                assert!(rep.middle_exact_everywhere(), "{name} i={i} k={k} middle");
                assert!(rep.right_exact_everywhere(), "{name} i={i} k={k} right");
            }
        }
    }

    // the rank-2 counterexample: not right exact at k = -2 and the top
    // anticommutative row carries the commutative k = -3 cokernel q
    let arr = corpus::mk4();
    let rep = super_deletion_contraction(&arr, 4, -2, None).unwrap();
    assert!(rep.left_exact_everywhere());
    assert!(!rep.right_exact_everywhere());
    let top_coker: LaurentSeries = rep
        .entries
        .iter()
        .filter(|e| e.adeg == arr.dim())
        .fold(LaurentSeries::zero(), |acc, e| {
            &acc + &LaurentSeries::monomial(e.cokernel_dim as i64, e.cdeg as i64)
        });
    assert_eq!(top_coker, LaurentSeries::monomial(1, 1));

    // verdicts are independent of the splitting choice
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (name, arr) in [("u23", corpus::u23()), ("u34", corpus::u34()), ("mk4", corpus::mk4())] {
        let i = movable_elements(&arr)[0];
        let kernel = arr.contraction_basis(i);
        for k in [-1i64, -2] {
            let base = super_deletion_contraction(&arr, i, k, None).unwrap();
            for _ in 0..2 {
                let mut v = default_splitting(&arr, i);
                for w in &kernel {
                    let c: i64 = rng.gen_range(-4..=4);
                    for (x, y) in v.iter_mut().zip(w) {
                        *x += y * rat_int(c);
                    }
                }
                let other = super_deletion_contraction(&arr, i, k, Some(v)).unwrap();
                for (a, b) in base.entries.iter().zip(&other.entries) {
                    assert_eq!(
                        (a.left, a.middle, a.right, a.cokernel_dim),
                        (b.left, b.middle, b.right, b.cokernel_dim),
                        "{name} i={i} k={k} bidegree ({},{})",
                        a.cdeg,
                        a.adeg
                    );
                }
            }
        }
    }
    println!("c07 super deletion-contraction: pass");
}

#[test]
fn c08_truncation() {
    for (name, arr) in corpus::all() {
        for k in [0i64, 1] {
            let rep = truncation_sequence(&arr, k, SEED).unwrap();
            assert!(rep.right_exact_everywhere(), "{name} k={k} surjectivity");
            assert!(rep.left_exact_everywhere(), "{name} k={k} left");
            assert!(rep.middle_exact_everywhere(), "{name} k={k} middle");
        }
        assert!(h1_consistency(&arr, SEED).unwrap(), "{name} k=-1 cokernel");
        assert!(h1_tutte_identity(&arr, SEED).unwrap(), "{name} identity");
    }
    assert_eq!(h1_formula(&corpus::u23()), LaurentSeries::monomial(1, 1));
    println!("c08 truncation sequences and h1 formula: pass");
}

fn random_filter(arr: &Arrangement, rng: &mut ChaCha8Rng) -> OrderFilter {
    let proper: Vec<u32> = arr
        .proper_flats()
        .unwrap()
        .into_iter()
        .map(|f| f.members)
        .collect();
    let seeds: Vec<u32> = proper
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.4))
        .collect();
    OrderFilter::generated_by(arr, &seeds).unwrap()
}

#[test]
fn c09_hierarchical_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (name, arr) in corpus::all() {
        let movable = movable_elements(&arr);
        if movable.is_empty() {
            continue;
        }
        for k in [-1i64, 0, 1] {
            for trial in 0..5 {
                let filter = random_filter(&arr, &mut rng);
                let spec = ZonotopalSpec::hierarchical(k, filter);
                let i = movable[trial % movable.len()];
                let rep = deletion_contraction_sequence(&arr, i, &spec).unwrap();
                assert!(rep.left_exact_everywhere(), "{name} k={k} trial={trial}");
                assert!(rep.middle_exact_everywhere(), "{name} k={k} trial={trial}");
                assert!(rep.right_exact_everywhere(), "{name} k={k} trial={trial}");
            }
        }

        // k = -2 with filters containing every corank-one flat
        let corank_one: Vec<u32> = arr
            .proper_flats()
            .unwrap()
            .into_iter()
            .filter(|f| f.rk + 1 == arr.dim())
            .map(|f| f.members)
            .collect();
        for trial in 0..2 {
            let mut seeds = corank_one.clone();
            seeds.extend(
                arr.proper_flats()
                    .unwrap()
                    .into_iter()
                    .map(|f| f.members)
                    .filter(|_| rng.gen_bool(0.3)),
            );
            let filter = OrderFilter::generated_by(&arr, &seeds).unwrap();
            assert!(filter.contains_all_corank_one(&arr).unwrap());
            let spec = ZonotopalSpec::hierarchical(-2, filter.clone());
            let i = movable[trial % movable.len()];
            let rep = deletion_contraction_sequence(&arr, i, &spec).unwrap();
            assert!(rep.left_exact_everywhere(), "{name} k=-2 trial={trial}");
            assert!(rep.middle_exact_everywhere(), "{name} k=-2 trial={trial}");
            assert!(rep.right_exact_everywhere(), "{name} k=-2 trial={trial}");

            // enlarging the filter by low-rank flats leaves the k = -2
            // quotient unchanged
            let all_small: Vec<u32> = arr
                .proper_flats()
                .unwrap()
                .into_iter()
                .filter(|f| f.rk + 2 <= arr.dim())
                .map(|f| f.members)
                .collect();
            let mut enlarged = seeds.clone();
            enlarged.extend(all_small);
            let big = OrderFilter::generated_by(&arr, &enlarged).unwrap();
            let h1 = zonotopal_hilbert(&arr, &ZonotopalSpec::hierarchical(-2, filter)).unwrap();
            let h2 = zonotopal_hilbert(&arr, &ZonotopalSpec::hierarchical(-2, big)).unwrap();
            assert_eq!(h1.dims, h2.dims, "{name} filter enlargement");
        }
    }
    println!("c09 hierarchical short exact sequences: pass");
}

#[test]
fn c10_brylawski_and_beta() {
    for (name, arr) in corpus::all() {
        if arr.ground_size() < 2 {
            continue;
        }
        assert!(
            brylawski_check(&arr).unwrap().iter().all(|&b| b),
            "{name} coefficient identities"
        );
        assert!(beta_duality_check(&arr).unwrap(), "{name} beta duality");
        let t = arr.tutte().unwrap();
        let beta = t.coeff(1, 0);
        let beta_dual = t.coeff(0, 1);
        let (d1, d2, rk) = beta_bridge(&arr).unwrap();
        assert_eq!(d1 as i64, beta, "{name} bidegree vs beta");
        assert_eq!(d2 as i64, beta_dual, "{name} bidegree vs dual beta");
        assert_eq!(rk, d1, "{name} differential full rank");
        assert_eq!(rk, d2, "{name} differential full rank");
    }
    println!("c10 tutte coefficient identities and beta bridge: pass");
}

#[test]
fn c11_euler_characteristic() {
    for (name, arr) in corpus::all() {
        assert!(euler_consistency(&arr).unwrap(), "{name}");
        for k in [-1i64, -2, -3] {
            assert!(euler_order_independent(&arr, k).unwrap(), "{name} k={k}");
        }
    }
    assert_eq!(
        euler_char_lm(&corpus::mk4(), -3).unwrap(),
        LaurentSeries::one()
    );
    println!("c11 equivariant euler characteristic: pass");
}

#[test]
fn c12_polymatroid_spans() {
    let u23 = corpus::u23();
    let b2 = corpus::boolean(2);

    let dual = dual_rank_function(&u23);
    let rep = polymatroid_span_check(&u23, &dual).unwrap();
    assert!(rep.agree, "dual rank on three points");
    let total: usize = rep.quotient.dims.iter().sum();
    assert_eq!(total as i64, u23.tutte().unwrap().eval_i64(1, 1));

    let cardinality: SetFunction = (0..4u32).map(|m| (m, m.count_ones() as i64)).collect();
    assert!(
        polymatroid_span_check(&b2, &cardinality).unwrap().agree,
        "cardinality on the coordinate square"
    );

    let double_rank: SetFunction = (0..8u32)
        .map(|m| (m, 2 * u23.subset_rank(m) as i64))
        .collect();
    assert!(
        polymatroid_span_check(&u23, &double_rank).unwrap().agree,
        "doubled rank on three points"
    );
    println!("c12 polymatroid lattice-point spans: pass");
}
