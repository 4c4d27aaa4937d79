//! Step-by-step replays of the constant-term derivations of the four double
//! sum identities. Every step is a standalone equality of truncated series
//! (or of exponent polynomials) checked through the requested order; only
//! the last step appeals to a classical single-sum identity.

use std::fmt;

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coeff::Unit;
use crate::corpus;
use crate::error::SeriesError;
use crate::lang::{
    eval_product, eval_sum, parse_one, parse_poly, verify, IdentitySpec, LangError, LinForm, SignAtom, Status,
};
use crate::serial::{gaussian_pair, rat_to_string};
use crate::series::{poch_finite, scaled_order, Mismatch, Monomial, QSeries, Rat};
use crate::special::{gaussian_binomial, rs_at};
use crate::zseries::{euler_z_inverse_twisted, euler_z_product_twisted, Theta, ZSeries};

/// The double sum identities with a replayable derivation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Modulus 10, parts `±2`.
    Mod10Even,
    /// Modulus 10, parts `±4`.
    Mod10Odd,
    /// Semidefinite exponent, modulus 5 parts `±1` times `1/(-q²;q²)_∞`.
    Mod5First,
    /// Semidefinite exponent, modulus 5 parts `±2` times `1/(-q²;q²)_∞`.
    Mod5Second,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [Theorem::Mod10Even, Theorem::Mod10Odd, Theorem::Mod5First, Theorem::Mod5Second];

    /// Name of the corpus identity being replayed.
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Mod10Even => "double-2-8-10",
            Theorem::Mod10Odd => "double-4-6-10",
            Theorem::Mod5First => "double-1-4-5",
            Theorem::Mod5Second => "double-2-3-5",
        }
    }

    /// Short numeric alias accepted on the command line.
    pub fn alias(self) -> &'static str {
        match self {
            Theorem::Mod10Even => "1.5",
            Theorem::Mod10Odd => "1.6",
            Theorem::Mod5First => "1.7",
            Theorem::Mod5Second => "1.8",
        }
    }

    /// Accepts either the identity name or the numeric alias.
    pub fn parse(s: &str) -> Option<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.name() == s || t.alias() == s)
    }

    /// The bilateral factor and twist used by the constant-term step, if any.
    pub fn default_ct_form(self) -> Option<CtForm> {
        let minus_one = Unit::MINUS_ONE;
        match self {
            Theorem::Mod10Even | Theorem::Mod10Odd => {
                Some(CtForm { theta: Theta::new(Rat::new(1, 2), Rat::zero(), minus_one, -1), twist: Rat::zero() })
            }
            Theorem::Mod5First => None,
            // q^(k(k-2)/4) = q^(binom(k,2)/2 - k/4); the twist absorbs the -k/4.
            Theorem::Mod5Second => {
                Some(CtForm { theta: Theta::new(Rat::new(1, 2), Rat::new(-1, 4), Unit::I, -1), twist: Rat::new(1, 4) })
            }
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The bilateral factor of a constant-term step and the common twist under
/// which every factor is stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CtForm {
    pub theta: Theta,
    pub twist: Rat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepStatus {
    Pass,
    Fail,
}

/// Where a failing step first diverges; `z` is set for `z`-series steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub z: Option<i64>,
    pub mismatch: Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub theorem: Theorem,
    /// 1-based position in the replay.
    pub step: usize,
    pub description: String,
    pub status: StepStatus,
    pub order: Rat,
    pub first_divergence: Option<Divergence>,
    /// Why a step failed when there is no coefficient to point at.
    pub detail: Option<String>,
}

impl StepReport {
    pub fn passed(&self) -> bool {
        self.status == StepStatus::Pass
    }
}

impl Serialize for StepReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Div {
            z: Option<i64>,
            exp: String,
            lhs: (crate::serial::JsonInt, crate::serial::JsonInt),
            rhs: (crate::serial::JsonInt, crate::serial::JsonInt),
        }
        let div = self.first_divergence.as_ref().map(|d| Div {
            z: d.z,
            exp: rat_to_string(&d.mismatch.exp),
            lhs: gaussian_pair(&d.mismatch.lhs),
            rhs: gaussian_pair(&d.mismatch.rhs),
        });
        let mut st = s.serialize_struct("StepReport", 7)?;
        st.serialize_field("theorem", self.theorem.name())?;
        st.serialize_field("step", &self.step)?;
        st.serialize_field("description", &self.description)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("order", &rat_to_string(&self.order))?;
        st.serialize_field("first_divergence", &div)?;
        st.serialize_field("detail", &self.detail)?;
        st.end()
    }
}

/// True when a replay passed every step.
pub fn all_pass(reports: &[StepReport]) -> bool {
    reports.iter().all(StepReport::passed)
}

/// `(-1)^binom(n-m,2) == i^(n-m)` for a single pair. This fails for
/// `(m, n) = (1, 0)`: the rewrite only holds for the full symmetric sum.
pub fn sign_rewrite_holds_termwise(m: i64, n: i64) -> bool {
    Unit::sign_binom2(n - m) == Unit::i_pow(n - m)
}

/// Replays `theorem` through `order` with its default constant-term form.
pub fn replay(theorem: Theorem, order: Rat) -> Vec<StepReport> {
    replay_with(theorem, order, theorem.default_ct_form())
}

/// [`replay`] with the constant-term form replaced (ignored for theorems
/// without a constant-term step).
pub fn replay_with(theorem: Theorem, order: Rat, ct: Option<CtForm>) -> Vec<StepReport> {
    let mut steps = Steps { theorem, order, out: Vec::new() };
    let ct = ct.or(theorem.default_ct_form());
    match theorem {
        Theorem::Mod10Even => mod10(&mut steps, &MOD10_EVEN, ct.expect("has a constant-term step")),
        Theorem::Mod10Odd => mod10(&mut steps, &MOD10_ODD, ct.expect("has a constant-term step")),
        Theorem::Mod5First => mod5_first(&mut steps),
        Theorem::Mod5Second => mod5_second(&mut steps, ct.expect("has a constant-term step")),
    }
    steps.out
}

type StepResult = Result<Outcome, LangError>;

enum Outcome {
    Ok,
    Diverges(Divergence),
    Fails(String),
}

struct Steps {
    theorem: Theorem,
    order: Rat,
    out: Vec<StepReport>,
}

impl Steps {
    fn push(&mut self, description: &str, result: StepResult) {
        let (status, first_divergence, detail) = match result {
            Ok(Outcome::Ok) => (StepStatus::Pass, None, None),
            Ok(Outcome::Diverges(d)) => (StepStatus::Fail, Some(d), None),
            Ok(Outcome::Fails(msg)) => (StepStatus::Fail, None, Some(msg)),
            Err(e) => (StepStatus::Fail, None, Some(e.to_string())),
        };
        self.out.push(StepReport {
            theorem: self.theorem,
            step: self.out.len() + 1,
            description: description.to_string(),
            status,
            order: self.order,
            first_divergence,
            detail,
        });
    }
}

/// Equality through `order`; both sides must actually be known that far.
fn series_eq(order: Rat, lhs: &QSeries, rhs: &QSeries) -> Outcome {
    for (side, s) in [("left", lhs), ("right", rhs)] {
        if s.order_q() < order {
            return Outcome::Fails(format!("{side} side only known through q^{}", rat_to_string(&s.order_q())));
        }
    }
    match lhs.truncate_q(order).first_mismatch(&rhs.truncate_q(order)) {
        None => Outcome::Ok,
        Some(mismatch) => Outcome::Diverges(Divergence { z: None, mismatch }),
    }
}

fn zseries_eq(order: Rat, lhs: &ZSeries, rhs: &ZSeries) -> Result<Outcome, SeriesError> {
    for (side, s) in [("left", lhs), ("right", rhs)] {
        if Rat::new(s.order(), s.den()) < order {
            return Ok(Outcome::Fails(format!(
                "{side} side only known through q^{}",
                rat_to_string(&Rat::new(s.order(), s.den()))
            )));
        }
    }
    Ok(match lhs.first_mismatch(rhs)? {
        None => Outcome::Ok,
        Some((k, mismatch)) if mismatch.exp <= order => Outcome::Diverges(Divergence { z: Some(k), mismatch }),
        Some(_) => Outcome::Ok,
    })
}

/// Checks the classical single-sum identity `classical` through
/// `order / power`, then `q -> q^power` turns its sides into `single` and
/// `target`.
fn closure(order: Rat, classical: &str, power: i64, single: &QSeries, target: &QSeries) -> StepResult {
    let spec = corpus::load(classical);
    let inner = (order / power).ceil();
    let report = verify(&spec, inner);
    if report.status != Status::Match {
        return Ok(Outcome::Fails(format!("{classical} does not verify through q^{}", rat_to_string(&inner))));
    }
    let p = Rat::from_integer(power);
    let sum = eval_sum(&spec, inner)?.substitute_power(p);
    let product = eval_product(&spec, inner)?.substitute_power(p);
    Ok(match series_eq(order, &sum, single) {
        Outcome::Ok => series_eq(order, &product, target),
        other => other,
    })
}

/// `Σ x^n q^{e(n)} / (base; base)_n` for a single index, parsed from the
/// identity language so it is evaluated by the ordinary sum engine.
fn single_sum(name: &str, exponent: &str, base: &str) -> Result<IdentitySpec, LangError> {
    parse_one(&format!(
        "identity \"{name}\" {{ den 4; sum {{ indices n; exponent {exponent}; denoms ({base}; n); }} product {{ }} }}"
    ))
}

struct Mod10 {
    /// Linear exponent carried by each Euler factor.
    c_exp: Rat,
    exponent_split: &'static str,
    single_exponent: &'static str,
    classical: &'static str,
}

const MOD10_EVEN: Mod10 = Mod10 {
    c_exp: Rat::new_raw(3, 4),
    exponent_split: "binom(m+n,2)/2 + binom(m,2) + 3/4*m + binom(n,2) + 3/4*n",
    single_exponent: "2*n^2",
    classical: "rr-a",
};

const MOD10_ODD: Mod10 = Mod10 {
    c_exp: Rat::new_raw(7, 4),
    exponent_split: "binom(m+n,2)/2 + binom(m,2) + 7/4*m + binom(n,2) + 7/4*n",
    single_exponent: "2*n^2 + 2*n",
    classical: "rr-b",
};

fn mod10(steps: &mut Steps, p: &Mod10, ct: CtForm) {
    let order = steps.order;
    let spec = corpus::load(steps.theorem.name());
    let lhs = eval_sum(&spec, order);

    steps.push(
        "sign rewrite: (-1)^binom(n-m,2) may be replaced by i^(n-m) in the full double sum",
        (|| {
            let mut rewritten = spec.clone();
            rewritten.sum.sign.atoms = vec![SignAtom::IPow(LinForm { coeffs: vec![-1, 1], constant: 0 })];
            Ok(series_eq(order, lhs.as_ref().map_err(Clone::clone)?, &eval_sum(&rewritten, order)?))
        })(),
    );

    let quad = crate::lang::Poly::from(&spec.sum.exponent);
    steps.push(
        "exponent split: the quadratic form is binom(m+n,2)/2 plus one Euler exponent per index",
        (|| {
            let split = parse_poly(p.exponent_split, &["m", "n"])?;
            Ok(if quad == split { Outcome::Ok } else { Outcome::Fails(format!("difference {:?}", quad.sub(&split))) })
        })(),
    );

    let c = Monomial::new(Unit::I, p.c_exp);
    let q = Monomial::q();
    let e1 = euler_z_product_twisted(c, q, ct.twist, order);
    let e2 = euler_z_product_twisted(-c, q, ct.twist, order);
    let theta = ct.theta.expand_twisted(order, ct.twist);
    let ct_value =
        (|| -> Result<QSeries, SeriesError> { Ok(e1.clone()?.mul(&e2.clone()?)?.mul(&theta.clone()?)?.ct()) })();
    steps.push(
        "constant term: the double sum is CT[(-iq^c z; q)_inf (iq^c z; q)_inf theta(z)]",
        (|| Ok(series_eq(order, lhs.as_ref().map_err(Clone::clone)?, ct_value.as_ref().map_err(Clone::clone)?)))(),
    );

    let pair_exp = p.c_exp * 2;
    let paired = (|| -> Result<ZSeries, SeriesError> {
        Ok(euler_z_product_twisted(Monomial::q_pow(pair_exp), Monomial::q_int(2), ct.twist * 2, order)?.dilate(2))
    })();
    steps.push(
        "Euler pairing: the two Euler factors multiply to (-z^2 q^(2c); q^2)_inf",
        (|| Ok(zseries_eq(order, &e1.clone()?.mul(&e2.clone()?)?, paired.as_ref().map_err(Clone::clone)?)?))(),
    );

    let single = single_sum("single", p.single_exponent, "q^2");
    let single_value = single.as_ref().map_err(Clone::clone).and_then(|s| eval_sum(s, order));
    steps.push(
        "extraction: the constant term collapses to a single sum over (q^2; q^2)_n",
        (|| {
            let paired_ct = paired.as_ref().map_err(Clone::clone)?.mul(&theta.clone()?)?.ct();
            Ok(series_eq(order, &paired_ct, single_value.as_ref().map_err(Clone::clone)?))
        })(),
    );

    steps.push(
        "closure: the single sum is a classical identity under q -> q^2",
        (|| closure(order, p.classical, 2, single_value.as_ref().map_err(Clone::clone)?, &eval_product(&spec, order)?))(
        ),
    );
}

/// `q^(N²/4)/(q²;q²)_N` for `N` up to the largest index with `N²/4 <= order`.
fn regroup_weights(order: Rat) -> Result<Vec<QSeries>, SeriesError> {
    let q2 = Monomial::q_int(2);
    let mut out = Vec::new();
    let mut n = 0i64;
    while Rat::new(n * n, 4) <= order {
        let w = QSeries::from_monomial(Monomial::q_pow(Rat::new(n * n, 4)), order)?.with_den(4).into_owned();
        out.push(w.mul(&poch_finite(q2, q2, n as u64, order)?.with_den(4).invert_unit()?));
        n += 1;
    }
    Ok(out)
}

fn weighted_sum(
    order: Rat,
    weights: &[QSeries],
    inner: impl Fn(u64) -> Result<QSeries, SeriesError>,
) -> Result<QSeries, SeriesError> {
    let mut acc = QSeries::zero(4, scaled_order(order, 4));
    for (n, w) in weights.iter().enumerate() {
        acc = acc.add(&w.mul(&inner(n as u64)?.with_den(4)));
    }
    Ok(acc)
}

fn mod5_first(steps: &mut Steps) {
    let order = steps.order;
    let spec = corpus::load(steps.theorem.name());
    let q2 = Monomial::q_int(2);
    let weights = regroup_weights(order);
    let alternating = |n: u64| -> Result<QSeries, SeriesError> {
        let mut acc = QSeries::zero(1, scaled_order(order, 1));
        for m in 0..=n as i64 {
            acc = acc.add(&gaussian_binomial(n, m, q2, order)?.mul_unit(Unit::sign(m)));
        }
        Ok(acc)
    };
    let regrouped = (|| weighted_sum(order, weights.as_ref().map_err(Clone::clone)?, alternating))();

    steps.push(
        "regrouping: with N = m+n the double sum is sum_N q^(N^2/4)/(q^2;q^2)_N sum_m (-1)^m [N,m]_(q^2)",
        (|| Ok(series_eq(order, &eval_sum(&spec, order)?, regrouped.as_ref().map_err(Clone::clone)?)))(),
    );

    let minus = Monomial::constant(Unit::MINUS_ONE);
    let collapsed = (|| weighted_sum(order, weights.as_ref().map_err(Clone::clone)?, |n| rs_at(n, minus, q2, order)))();
    steps.push(
        "Rogers-Szego: each inner alternating sum is H_N(-1; q^2)",
        (|| Ok(series_eq(order, regrouped.as_ref().map_err(Clone::clone)?, collapsed.as_ref().map_err(Clone::clone)?)))(
        ),
    );

    let even = (|| -> Result<QSeries, SeriesError> {
        let mut acc = QSeries::zero(1, scaled_order(order, 1));
        let mut n = 0i64;
        while Rat::from_integer(n * n) <= order {
            let num = poch_finite(q2, Monomial::q_int(4), n as u64, order)?;
            let den = poch_finite(q2, q2, 2 * n as u64, order)?.invert_unit()?;
            acc = acc.add(&num.mul(&den).mul_monomial(Monomial::q_int(n * n))?);
            n += 1;
        }
        Ok(acc)
    })();
    steps.push(
        "odd N vanish: H_2n(-1; q^2) = (q^2; q^4)_n leaves sum_n q^(n^2) (q^2;q^4)_n / (q^2;q^2)_2n",
        (|| Ok(series_eq(order, collapsed.as_ref().map_err(Clone::clone)?, even.as_ref().map_err(Clone::clone)?)))(),
    );

    let classical = corpus::load("rogers-a");
    let single = eval_sum(&classical, order);
    steps.push(
        "telescoping: (q^2;q^4)_n / (q^2;q^2)_2n = 1/(q^4;q^4)_n",
        (|| Ok(series_eq(order, even.as_ref().map_err(Clone::clone)?, single.as_ref().map_err(Clone::clone)?)))(),
    );

    steps.push(
        "closure: the single sum is a classical identity",
        (|| closure(order, "rogers-a", 1, single.as_ref().map_err(Clone::clone)?, &eval_product(&spec, order)?))(),
    );
}

fn mod5_second(steps: &mut Steps, ct: CtForm) {
    let order = steps.order;
    let spec = corpus::load(steps.theorem.name());
    let lhs = eval_sum(&spec, order);

    let form = "3/2*m + 3/2*n + (m+n)*(m+n-2)/4";
    steps.push(
        "sign and exponent rewrite: (-1)^m q^((m+n)^2/4+m+n) = (-i)^(n-m) i^(n+m) q^(3(m+n)/2 + (m+n)(m+n-2)/4)",
        (|| {
            let quad = crate::lang::Poly::from(&spec.sum.exponent);
            let rewritten_exp = parse_poly(form, &["m", "n"])?;
            if quad != rewritten_exp {
                return Ok(Outcome::Fails(format!("exponent difference {:?}", quad.sub(&rewritten_exp))));
            }
            let mut rewritten = spec.clone();
            rewritten.sum.exponent = rewritten_exp.to_quad_form().expect("quadratic");
            rewritten.sum.sign.atoms = vec![
                SignAtom::IPow(LinForm { coeffs: vec![1, -1], constant: 0 }),
                SignAtom::IPow(LinForm { coeffs: vec![1, 1], constant: 0 }),
            ];
            Ok(series_eq(order, lhs.as_ref().map_err(Clone::clone)?, &eval_sum(&rewritten, order)?))
        })(),
    );

    let q2 = Monomial::q_int(2);
    let c = Monomial::new(Unit::I, Rat::new(3, 2));
    let e1 = euler_z_inverse_twisted(c, q2, ct.twist, order);
    let e2 = euler_z_inverse_twisted(-c, q2, ct.twist, order);
    let theta = ct.theta.expand_twisted(order, ct.twist);
    steps.push(
        "constant term: the double sum is CT[theta(z) / ((iq^(3/2) z; q^2)_inf (-iq^(3/2) z; q^2)_inf)]",
        (|| {
            let value = e1.clone()?.mul(&e2.clone()?)?.mul(&theta.clone()?)?.ct();
            Ok(series_eq(order, lhs.as_ref().map_err(Clone::clone)?, &value))
        })(),
    );

    let paired = (|| -> Result<ZSeries, SeriesError> {
        Ok(euler_z_inverse_twisted(-Monomial::q_int(3), Monomial::q_int(4), ct.twist * 2, order)?.dilate(2))
    })();
    steps.push(
        "Euler pairing: the two reciprocal Euler factors multiply to 1/(-z^2 q^3; q^4)_inf",
        (|| Ok(zseries_eq(order, &e1.clone()?.mul(&e2.clone()?)?, paired.as_ref().map_err(Clone::clone)?)?))(),
    );

    let classical = corpus::load("rogers-b");
    let single = eval_sum(&classical, order);
    steps.push(
        "extraction: the constant term collapses to sum_n q^(n^2+2n) / (q^4; q^4)_n",
        (|| {
            let value = paired.as_ref().map_err(Clone::clone)?.mul(&theta.clone()?)?.ct();
            Ok(series_eq(order, &value, single.as_ref().map_err(Clone::clone)?))
        })(),
    );

    steps.push(
        "closure: the single sum is a classical identity",
        (|| closure(order, "rogers-b", 1, single.as_ref().map_err(Clone::clone)?, &eval_product(&spec, order)?))(),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n)
    }

    fn show(reports: &[StepReport]) -> String {
        reports.iter().map(|s| format!("{} {:?} {:?} {:?}\n", s.step, s.status, s.first_divergence, s.detail)).collect()
    }

    #[test]
    fn theorem_names_and_aliases() {
        for t in Theorem::ALL {
            assert_eq!(Theorem::parse(t.name()), Some(t));
            assert_eq!(Theorem::parse(t.alias()), Some(t));
        }
        assert_eq!(Theorem::parse("9.9"), None);
    }

    #[test]
    fn every_replay_passes_at_moderate_order() {
        for t in Theorem::ALL {
            let reports = replay(t, r(24));
            assert!(all_pass(&reports), "{t}:\n{}", show(&reports));
        }
    }

    #[test]
    fn step_counts() {
        let counts: Vec<usize> = Theorem::ALL.iter().map(|&t| replay(t, r(4)).len()).collect();
        assert_eq!(counts, vec![6, 6, 5, 5]);
    }

    #[test]
    fn termwise_sign_rewrite_fails() {
        assert!(!sign_rewrite_holds_termwise(1, 0));
        assert!(sign_rewrite_holds_termwise(0, 0));
        assert!(!sign_rewrite_holds_termwise(0, 1));
        assert!(sign_rewrite_holds_termwise(3, 3));
    }

    #[test]
    fn wrong_theta_breaks_the_constant_term_step() {
        let bad = CtForm { theta: Theta::new(Rat::new(1, 2), r(1), Unit::MINUS_ONE, -1), twist: Rat::new(-1, 2) };
        let reports = replay_with(Theorem::Mod10Even, r(20), Some(bad));
        assert!(reports[0].passed() && reports[1].passed());
        assert!(!reports[2].passed());
        let d = reports[2].first_divergence.as_ref().expect("coefficient divergence");
        assert!(d.mismatch.exp <= r(4), "{:?}", d);
    }

    #[test]
    fn theta_window_for_semidefinite_case() {
        let ct = Theorem::Mod5Second.default_ct_form().unwrap();
        let (lo, hi) = ct.theta.expand_twisted(r(20), ct.twist).unwrap().window().unwrap();
        assert!(lo >= -11 && hi <= 11, "({lo}, {hi})");
    }

    #[test]
    fn telescoping_quotient() {
        let (q2, q4) = (Monomial::q_int(2), Monomial::q_int(4));
        let order = r(60);
        for n in 0..=20u64 {
            let lhs = poch_finite(q2, q4, n, order)
                .unwrap()
                .mul(&poch_finite(q2, q2, 2 * n, order).unwrap().invert_unit().unwrap());
            let rhs = poch_finite(q4, q4, n, order).unwrap().invert_unit().unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn odd_alternating_sums_vanish() {
        let minus = Monomial::constant(Unit::MINUS_ONE);
        for n in (1..16).step_by(2) {
            assert!(rs_at(n, minus, Monomial::q_int(2), r(40)).unwrap().is_zero());
        }
    }

    #[test]
    fn reduced_single_sum_for_mod10_odd() {
        let single = single_sum("s", "2*n^2 + 2*n", "q^2").unwrap();
        let direct = eval_sum(&single, r(40)).unwrap();
        // q^0, q^4/(1-q^2) ...: coefficients of q^0..q^8.
        let expect = [1, 0, 0, 0, 1, 0, 1, 0, 1];
        for (e, c) in expect.iter().enumerate() {
            assert_eq!(direct.coeff_at(r(e as i64)), crate::coeff::GaussianInt::real(*c), "q^{e}");
        }
    }

    #[test]
    fn reports_serialize() {
        let reports = replay(Theorem::Mod10Even, r(8));
        let v = serde_json::to_value(&reports).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 6);
        assert_eq!(v[0]["status"], "pass");
        assert_eq!(v[0]["theorem"], "double-2-8-10");
        assert_eq!(v[0]["order"], "8");
        assert!(v[0]["first_divergence"].is_null());
    }
}
