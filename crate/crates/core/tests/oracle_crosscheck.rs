use proptest::prelude::*;

use qident_core::coeff::GaussianInt;
use qident_core::corpus;
use qident_core::lang::{eval_product, eval_sum};
use qident_core::oracle::{dense_mul, partition_counts, unpruned_sum, PartSpec};
use qident_core::series::{QSeries, Rat};

fn r(n: i64) -> Rat {
    Rat::from_integer(n)
}

#[test]
fn unpruned_box_sum_matches_engine_for_single_sum() {
    let rr = corpus::load("rr-a");
    assert_eq!(unpruned_sum(&rr, &[30], r(50)).unwrap(), eval_sum(&rr, r(50)).unwrap());
}

#[test]
fn too_small_box_is_detected() {
    let rr = corpus::load("rr-a");
    let small = unpruned_sum(&rr, &[2], r(50)).unwrap();
    let full = eval_sum(&rr, r(50)).unwrap();
    let m = small.first_mismatch(&full).expect("box n <= 2 misses q^9");
    assert_eq!(m.exp, r(9));
}

#[test]
fn unpruned_box_sum_matches_engine_for_semidefinite_double_sum() {
    let spec = corpus::load("double-1-4-5");
    assert_eq!(unpruned_sum(&spec, &[25, 25], r(40)).unwrap(), eval_sum(&spec, r(40)).unwrap());
}

#[test]
fn unpruned_box_sum_matches_engine_for_quarter_exponents() {
    let spec = corpus::load("double-2-8-10");
    assert_eq!(unpruned_sum(&spec, &[10, 10], r(30)).unwrap(), eval_sum(&spec, r(30)).unwrap());
}

#[test]
fn integer_product_sides_match_partition_counts() {
    let mut checked = 0;
    for spec in corpus::all() {
        let Some(ps) = PartSpec::from_factors(&spec.product, 80) else { continue };
        let product = eval_product(&spec, r(80)).unwrap();
        for (n, c) in partition_counts(&ps).iter().enumerate() {
            assert_eq!(product.coeff_at(r(n as i64)), GaussianInt::real(*c), "{} q^{n}", spec.name);
        }
        checked += 1;
    }
    assert_eq!(checked, corpus::FILES.len());
}

fn arb_dense(len: usize) -> impl Strategy<Value = Vec<GaussianInt>> {
    prop::collection::vec((-1000i64..1000, -1000i64..1000).prop_map(|(a, b)| GaussianInt::new(a, b)), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn mul_agrees_with_schoolbook(x in arb_dense(201), y in arb_dense(201)) {
        let a = QSeries::from_dense(1, 200, x.clone());
        let b = QSeries::from_dense(1, 200, y.clone());
        prop_assert_eq!(a.mul(&b).to_dense(), dense_mul(&x, &y));
    }

    #[test]
    fn sparse_mul_agrees_with_schoolbook(x in arb_dense(121), y in arb_dense(121), mask in prop::collection::vec(0u8..5, 121)) {
        let keep = |v: &[GaussianInt]| v.iter().zip(&mask).map(|(c, &m)| if m == 0 { c.clone() } else { GaussianInt::default() }).collect::<Vec<_>>();
        let (x, y) = (keep(&x), keep(&y));
        let a = QSeries::from_dense(4, 120, x.clone());
        let b = QSeries::from_dense(4, 120, y.clone());
        prop_assert_eq!(a.mul(&b).to_dense(), dense_mul(&x, &y));
    }
}
