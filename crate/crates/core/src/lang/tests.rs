use num_traits::Zero;

use super::*;
use crate::coeff::{sign_binom2, GaussianInt, Unit};
use crate::corpus;
use crate::exec::Exec;
use crate::series::{poch_infinite_inverse, Monomial, QSeries, Rat};

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn ints(s: &QSeries) -> Vec<i64> {
    s.to_dense().iter().map(|c| c.to_i64_pair().unwrap().0).collect()
}

fn single(exponent: &str, base: &str, product: &str) -> String {
    format!(
        "identity \"t\" {{ den 1; sum {{ indices n; exponent {exponent}; denoms ({base}; n); }} product {{ {product} }} }}"
    )
}

#[test]
fn parses_rr_a() {
    let spec = corpus::load("rr-a");
    assert_eq!(spec.sum.indices, vec!["n"]);
    assert_eq!(spec.sum.exponent.value_matrix(), vec![vec![r(1, 1)]]);
    assert_eq!(spec.sum.denoms, vec![Denom { base: Monomial::q(), index: 0 }]);
    assert!(spec.sum.sign.atoms.is_empty());
    assert_eq!(spec.product.len(), 2);
    assert_eq!(spec.product[1].to_string(), "1/poch(q^4, q^5)");
}

#[test]
fn parses_double_sum_with_binomial_sign() {
    let spec = corpus::load("double-2-8-10");
    assert_eq!(spec.den, 4);
    assert_eq!(spec.sum.exponent.hessian, vec![vec![r(3, 2), r(1, 2)], vec![r(1, 2), r(3, 2)]]);
    assert_eq!(spec.sum.exponent.value(&[1, 1]), r(2, 1));
    assert_eq!(spec.sum.sign.atoms, vec![SignAtom::MinusOneBinom(LinForm { coeffs: vec![-1, 1], constant: 0 })]);
}

#[test]
fn monomial_and_rational_syntax() {
    let text = r#"
        # two identities in one file
        identity "a" { den 2; sum { indices n; exponent n^2/2; denoms (q^(1/2); n); }
                       product { poch(-q^3/2, q^2, 3) * 1/poch(iq, q) * poch(-iq^2, q) } }
        identity "b" { den 1; sum { indices n; exponent n^2; denoms (q; n); } product { } }
    "#;
    let specs = parse(text).unwrap();
    assert_eq!(specs.len(), 2);
    let a = &specs[0];
    assert_eq!(a.sum.denoms[0].base, Monomial::q_pow(r(1, 2)));
    assert_eq!(a.product[0].x, Monomial::new(Unit::MINUS_ONE, r(3, 2)));
    assert_eq!(a.product[0].finite, Some(3));
    assert_eq!(a.product[1].x, Monomial::new(Unit::I, r(1, 1)));
    assert_eq!(a.product[1].power, -1);
    assert_eq!(a.product[2].x, Monomial::new(Unit::MINUS_I, r(2, 1)));
    assert!(specs[1].product.is_empty());
}

fn semantic_message(text: &str) -> String {
    match parse(text) {
        Err(LangError::Semantic { message, .. }) => message,
        other => panic!("expected a semantic error, got {other:?}"),
    }
}

#[test]
fn semantic_errors() {
    let two = "identity \"t\" { den 1; sum { indices m, n; exponent m^2 + n^2; denoms (q; m), (q; m); } product { } }";
    assert!(semantic_message(two).contains("more than one denominator"));
    let unbound = single("n^2 + k", "q", "");
    assert!(semantic_message(&unbound).contains("unknown index `k`"));
    let zero_base = single("n^2", "q^0", "");
    assert!(semantic_message(&zero_base).contains("must be q^s"));
    let not_pd =
        "identity \"t\" { den 1; sum { indices i, j; exponent (i - 2*j)^2; denoms (q; i), (q; j); } product { } }";
    assert!(semantic_message(not_pd).contains("explicit bounds"));
    let with_bounds = not_pd.replace("(q; j); }", "(q; j); bounds 4, 2; }");
    assert!(parse(&with_bounds).is_ok());
    let bad_den = single("n^2/2", "q", "");
    assert!(semantic_message(&bad_den).contains("not a multiple of 1/1"));
    let missing = "identity \"t\" { den 1; sum { indices m, n; exponent m^2 + n^2; denoms (q; m); } product { } }";
    assert!(semantic_message(missing).contains("no denominator for index n"));
    let cubic = single("n^3", "q", "");
    assert!(semantic_message(&cubic).contains("degree at most 2"));
    let frac_sign =
        "identity \"t\" { den 1; sum { indices n; sign (-1)^(n/2); exponent n^2; denoms (q; n); } product { } }";
    assert!(semantic_message(frac_sign).contains("integer linear"));
}

#[test]
fn parse_errors_carry_position_and_expectation() {
    let text = "identity \"t\" {\n  den 1\n  sum { }\n}";
    match parse(text) {
        Err(LangError::Parse(e)) => {
            assert_eq!((e.line, e.col), (3, 3));
            assert_eq!(e.expected, vec!["`;`"]);
            assert_eq!(e.found, "`sum`");
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse(""), Err(LangError::Parse(_))));
    assert!(matches!(parse(&single("n^2", "q", "poch(q)")), Err(LangError::Parse(_))));
}

#[test]
fn rr_a_sum_at_order_six() {
    let spec = corpus::load("rr-a");
    let sum = eval_sum(&spec, r(6, 1)).unwrap();
    assert_eq!(ints(&sum), vec![1, 1, 1, 1, 2, 2, 3]);
    // Product side expanded independently of the evaluator.
    let oracle = poch_infinite_inverse(Monomial::q(), Monomial::q_int(5), r(6, 1))
        .unwrap()
        .mul(&poch_infinite_inverse(Monomial::q_int(4), Monomial::q_int(5), r(6, 1)).unwrap());
    assert_eq!(sum, oracle);
    assert_eq!(eval_product(&spec, r(6, 1)).unwrap(), oracle);
}

#[test]
fn quarter_exponents_cancel_at_low_order() {
    // (1,0) and (0,1) carry signs -1 and +1 at q^(3/4); (1,1) enters at q^2.
    assert_eq!(sign_binom2(-1), -GaussianInt::real(1));
    assert_eq!(sign_binom2(1), GaussianInt::real(1));
    let spec = corpus::load("double-2-8-10");
    let sum = eval_sum(&spec, r(2, 1)).unwrap();
    assert!(sum.fractional_support().is_empty());
    let expected = QSeries::from_terms(4, 8, [(0, GaussianInt::real(1)), (8, GaussianInt::real(1))]).unwrap();
    assert_eq!(sum, expected);
}

#[test]
fn order_zero_keeps_only_the_origin() {
    for spec in corpus::all() {
        let s = eval_sum(&spec, Rat::zero()).unwrap();
        assert_eq!(s, QSeries::one(spec.den, 0), "{}", spec.name);
    }
}

#[test]
fn empty_product_is_one() {
    let spec = parse_one(&single("n^2", "q", "")).unwrap();
    assert_eq!(eval_product(&spec, r(5, 1)).unwrap(), QSeries::one(1, 5));
}

#[test]
fn finite_factors_stop_after_n_terms() {
    let spec = parse_one(&single("n^2", "q", "poch(q, q, 2)")).unwrap();
    assert_eq!(ints(&eval_product(&spec, r(4, 1)).unwrap()), vec![1, -1, -1, 1, 0]);
}

#[test]
fn auto_bounds_agree_with_generous_explicit_bounds() {
    for spec in corpus::all() {
        if spec.sum.bounds.is_some() {
            continue;
        }
        let order = r(24, 1);
        let auto = eval_sum_with(&spec, order, None, Exec::Sequential).unwrap();
        let wide = vec![30; spec.sum.rank()];
        let explicit = eval_sum_with(&spec, order, Some(&wide), Exec::Sequential).unwrap();
        assert_eq!(auto, explicit, "{}", spec.name);
    }
}

#[test]
fn executors_agree() {
    for name in ["double-4-6-10", "cao-wang-u-q"] {
        let spec = corpus::load(name);
        let a = eval_sum_with(&spec, r(30, 1), None, Exec::Sequential).unwrap();
        let b = eval_sum_with(&spec, r(30, 1), None, Exec::Parallel).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn symmetrized_sign_rewrite_holds_for_the_whole_sum() {
    let spec = corpus::load("double-2-8-10");
    let mut rewritten = spec.clone();
    rewritten.sum.sign = SignRule { atoms: vec![SignAtom::IPow(LinForm { coeffs: vec![-1, 1], constant: 0 })] };
    let order = r(40, 1);
    let a = eval_sum(&spec, order).unwrap();
    let b = eval_sum(&rewritten, order).unwrap();
    assert_eq!(a, b);
    // The i^(n-m) form carries imaginary terms that only cancel in pairs.
    assert_ne!(spec.sum.sign.eval(&[1, 0]), rewritten.sum.sign.eval(&[1, 0]));
}

#[test]
fn corpus_matches_at_moderate_order() {
    let specs = corpus::all();
    for rep in verify_all(&specs, r(40, 1), Exec::default()) {
        assert_eq!(rep.status, Status::Match, "{rep:?}");
        assert!(rep.is_consistent());
    }
}

#[test]
fn match_is_monotone_in_order() {
    let spec = corpus::load("double-1-4-5");
    for n in [0, 1, 5, 17, 30] {
        assert_eq!(verify(&spec, r(n, 1)).status, Status::Match);
    }
    let mut bad = spec.clone();
    bad.sum.exponent.linear[0] += r(1, 1);
    let first = verify(&bad, r(30, 1)).first_mismatch.unwrap().exp;
    for n in 0..12 {
        let rep = verify(&bad, r(n, 1));
        assert_eq!(rep.status == Status::Match, r(n, 1) < first, "order {n}");
    }
}

#[test]
fn mutated_exponent_is_caught_early() {
    let mut spec = corpus::load("rr-b");
    spec.sum.exponent.linear[0] = r(2, 1);
    let rep = verify(&spec, r(50, 1));
    assert_eq!(rep.status, Status::Mismatch);
    let m = rep.first_mismatch.unwrap();
    assert_eq!(m.exp, r(2, 1));
    assert_eq!((m.lhs, m.rhs), (GaussianInt::zero(), GaussianInt::real(1)));
}

#[test]
fn fractional_orders_are_honoured() {
    let spec = corpus::load("double-2-8-10");
    let rep = verify(&spec, r(9, 4));
    assert_eq!(rep.status, Status::Match);
    assert_eq!(eval_sum(&spec, r(9, 4)).unwrap().order_q(), r(9, 4));
}

#[test]
fn report_json_shape() {
    let mut spec = corpus::load("rr-b");
    spec.sum.exponent.linear[0] = r(2, 1);
    let v = serde_json::to_value(verify(&spec, r(10, 1))).unwrap();
    assert_eq!(v["identity"], "rr-b");
    assert_eq!(v["status"], "mismatch");
    assert_eq!(v["order"], "10");
    assert_eq!(v["first_mismatch"]["exp"], "2");
    assert_eq!(v["first_mismatch"]["lhs"], serde_json::json!([0, 0]));
    assert_eq!(v["first_mismatch"]["rhs"], serde_json::json!([1, 0]));
    assert_eq!(v["fractional_residue"], serde_json::json!([]));
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn negative_exponents_are_reported() {
    let spec = parse_one(&single("n^2 - 3*n", "q", "")).unwrap();
    let rep = verify(&spec, r(10, 1));
    assert_eq!(rep.status, Status::Error);
    assert!(rep.error.unwrap().contains("negative exponent"));
}

#[test]
fn parse_poly_expands_binomials() {
    let a = parse_poly("3/4*m^2 + 1/2*m*n + 3/4*n^2", &["m", "n"]).unwrap();
    let b = parse_poly("1/2*binom(m+n,2) + binom(m,2) + 3/4*m + binom(n,2) + 3/4*n", &["m", "n"]).unwrap();
    assert_eq!(a, b);
    assert!(parse_poly("m +", &["m"]).is_err());
}
