//! Named special objects: Gaussian binomials, Rogers–Szegő polynomials, the
//! Jacobi triple product and Nahm sums.

use num_integer::Integer;
use num_traits::Zero;

use crate::coeff::Unit;
use crate::error::SeriesError;
use crate::lang::{eval_sum, Denom, IdentitySpec, LangError, SignRule, SumSide};
use crate::lattice::{is_positive_definite, is_symmetric, QuadForm};
use crate::series::{check_base, common_den, poch_infinite, scaled_order, Mismatch, Monomial, QSeries, Rat};
use crate::zseries::{euler_z_product, z_monomial, Theta, ZSeries};

/// The Gaussian binomial `[n, k]` in base `b`, a polynomial of degree
/// `k(n-k)·b.exp`; zero for `k < 0` or `k > n`.
pub fn gaussian_binomial(n: u64, k: i64, b: Monomial, order: Rat) -> Result<QSeries, SeriesError> {
    if k < 0 || k as u64 > n {
        check_base(b)?;
        let den = *b.exp.denom();
        return Ok(QSeries::zero(den, scaled_order(order, den)));
    }
    Ok(pascal_row(n, k as usize, b, order)?.swap_remove(k as usize))
}

/// `[n, 0], ..., [n, kmax]` by the q-Pascal rule
/// `[m, j] = [m-1, j-1] + b^j·[m-1, j]`.
fn pascal_row(n: u64, kmax: usize, b: Monomial, order: Rat) -> Result<Vec<QSeries>, SeriesError> {
    check_base(b)?;
    let den = *b.exp.denom();
    let limit = scaled_order(order, den);
    let mut row = vec![QSeries::zero(den, limit); kmax + 1];
    row[0] = QSeries::one(den, limit);
    for m in 1..=n as usize {
        for j in (1..=kmax.min(m)).rev() {
            let shifted = row[j].mul_monomial(b.pow(j as i64))?;
            row[j] = row[j - 1].add(&shifted);
        }
    }
    Ok(row)
}

/// `H_n(t) = Σ_j [n, j]_b t^j` with `t` carried by `z`.
pub fn rogers_szego_def(n: u64, b: Monomial, order: Rat) -> Result<ZSeries, SeriesError> {
    let slices = pascal_row(n, n as usize, b, order)?;
    let den = *b.exp.denom();
    Ok(ZSeries::from_slices(den, scaled_order(order, den), Rat::zero(), 0, slices))
}

/// `p·(z + c)` for an untwisted `p`.
fn mul_z_plus(p: &ZSeries, c: Monomial) -> Result<ZSeries, SeriesError> {
    let den = p.den().lcm(c.exp.denom());
    let order = p.order() * (den / p.den());
    let Some((lo, hi)) = p.window() else {
        return Ok(ZSeries::zero(den, order));
    };
    let mut slices = vec![QSeries::zero(den, order); (hi - lo + 2) as usize];
    for (k, s) in p.slices() {
        let i = (k - lo) as usize;
        slices[i] = slices[i].add(&s.mul_monomial(c)?);
        slices[i + 1] = slices[i + 1].add(s);
    }
    Ok(ZSeries::from_slices(den, order, Rat::zero(), lo, slices))
}

/// The same polynomial through the representation
/// `H_n(t) = Σ_r t^(2r) (-b/t; b²)_r (-t; b²)_{⌊(n+1)/2⌋-r} [⌊n/2⌋, r]_{b²}`.
///
/// `t^(2r)·(-b/t; b²)_r` is expanded as `t^r·Π_{k<r} (t + b^(2k+1))`, so every
/// intermediate stays a polynomial in `t`; every factor costs linear time.
pub fn rogers_szego_bw(n: u64, b: Monomial, order: Rat) -> Result<ZSeries, SeriesError> {
    check_base(b)?;
    let den = *b.exp.denom();
    let limit = scaled_order(order, den);
    let b2 = b.pow(2);
    let (half, top) = (n / 2, n.div_ceil(2));
    let mut acc = ZSeries::zero(den, limit);
    for r in 0..=half {
        let mut left = z_monomial(r as i64, QSeries::one(den, limit));
        for k in 0..r as i64 {
            left = mul_z_plus(&left, b.pow(2 * k + 1))?;
        }
        // (-t; b²)_m, one linear factor at a time.
        let mut factor = Monomial::constant(Unit::MINUS_ONE);
        for _ in 0..top - r {
            left = left.mul_one_minus_z(factor)?;
            factor = factor * b2;
        }
        let binom = gaussian_binomial(half, r as i64, b2, order)?;
        acc = acc.add(&left.scale(&binom))?;
    }
    Ok(acc)
}

/// `H_n(t; b)` at the monomial `t`.
pub fn rs_at(n: u64, t: Monomial, b: Monomial, order: Rat) -> Result<QSeries, SeriesError> {
    rogers_szego_bw(n, b, order)?.specialize(t)
}

/// The bilateral side `Σ_k (-1)^k q^(k²/2) z^k` as a theta builder.
pub fn jtp_theta() -> Theta {
    Theta::new(Rat::from_integer(1), Rat::new(1, 2), Unit::MINUS_ONE, 1)
}

/// `(q, z·q^(1/2), q^(1/2)/z; q)_∞`, each `z`-factor from Euler's product
/// expansion and the `z`-free factor from the infinite product.
pub fn jtp_product(order: Rat) -> Result<ZSeries, SeriesError> {
    let c = -Monomial::q_pow(Rat::new(1, 2));
    let forward = euler_z_product(c, Monomial::q(), order)?;
    let pair = forward.mul(&forward.reflect())?;
    Ok(pair.scale(&poch_infinite(Monomial::q(), Monomial::q(), order)?))
}

/// Outcome of comparing both sides of the triple product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JtpReport {
    pub order: Rat,
    pub pass: bool,
    /// `z`-window of the bilateral side.
    pub window: Option<(i64, i64)>,
    /// `(z-power, mismatch)` of the smallest divergent `q`-exponent.
    pub first_mismatch: Option<(i64, Mismatch)>,
}

/// Compares `z`-slice by `z`-slice through `order`.
pub fn jtp_check(order: Rat) -> Result<JtpReport, SeriesError> {
    jtp_compare(order, &jtp_theta().expand(order)?)
}

/// Compares the product side with a caller-supplied bilateral side.
pub fn jtp_compare(order: Rat, bilateral: &ZSeries) -> Result<JtpReport, SeriesError> {
    let product = jtp_product(order)?;
    let first_mismatch = product.first_mismatch(bilateral)?;
    Ok(JtpReport { order, pass: first_mismatch.is_none(), window: bilateral.window(), first_mismatch })
}

/// Data `(A, B, C)` of a Nahm sum; `A` symmetric positive definite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NahmData {
    a: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    c: Rat,
}

impl NahmData {
    pub fn new(a: Vec<Vec<Rat>>, b: Vec<Rat>, c: Rat) -> Result<Self, SeriesError> {
        let r = b.len();
        if r == 0 || a.len() != r || a.iter().any(|row| row.len() != r) {
            return Err(SeriesError::Dimension(format!("A must be {r}x{r} to match B of length {r}")));
        }
        if !is_symmetric(&a) {
            return Err(SeriesError::NotSymmetric);
        }
        if !is_positive_definite(&a) {
            return Err(SeriesError::NotPositiveDefinite);
        }
        Ok(NahmData { a, b, c })
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &[Vec<Rat>] {
        &self.a
    }

    pub fn b(&self) -> &[Rat] {
        &self.b
    }

    pub fn c(&self) -> Rat {
        self.c
    }

    /// Denominator of every exponent `½nᵀAn + nᵀB` at lattice points.
    pub fn body_den(&self) -> i64 {
        let r = self.rank();
        let mut parts: Vec<Rat> = self.b.clone();
        for i in 0..r {
            parts.push(self.a[i][i] / 2);
            parts.extend(self.a[i][..i].iter().copied());
        }
        common_den(&parts)
    }

    fn as_identity(&self, den: i64) -> IdentitySpec {
        let r = self.rank();
        let form = QuadForm::new(self.a.clone(), self.b.clone(), Rat::zero()).expect("validated in new");
        IdentitySpec {
            name: "nahm".to_string(),
            den,
            sum: SumSide {
                indices: (1..=r).map(|i| format!("n{i}")).collect(),
                sign: SignRule::default(),
                exponent: form,
                denoms: (0..r).map(|index| Denom { base: Monomial::q(), index }).collect(),
                bounds: None,
            },
            product: Vec::new(),
        }
    }
}

/// `q^offset · body`, keeping a possibly negative offset separate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NahmSeries {
    pub offset: Rat,
    pub body: QSeries,
}

impl NahmSeries {
    /// Folds the prefactor in; fails when the offset is negative.
    pub fn to_qseries(&self) -> Result<QSeries, SeriesError> {
        if self.offset < Rat::zero() {
            return Err(SeriesError::NegativeExponent(self.offset));
        }
        let den = self.body.den().lcm(self.offset.denom());
        let body = self.body.with_den(den);
        let shift = (self.offset * den).to_integer();
        QSeries::from_terms(den, body.order() + shift, body.terms().iter().map(|(e, c)| (e + shift, c.clone())))
    }
}

/// `f_{A,B,C} = q^C Σ_{n>=0} q^(½nᵀAn + nᵀB) / Π (q;q)_{n_i}` exact through
/// `order`: the body is summed through `order - C`.
pub fn nahm_series(d: &NahmData, order: Rat) -> Result<NahmSeries, LangError> {
    let body_order = (order - d.c).max(Rat::zero());
    // Summing on the offset's denominator keeps the shifted order at `order`.
    let den = d.body_den().lcm(d.c.denom());
    let body = eval_sum(&d.as_identity(den), body_order)?;
    Ok(NahmSeries { offset: d.c, body })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::GaussianInt;
    use crate::series::poch_finite;
    use crate::zseries::sum_slices;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn ints(s: &QSeries) -> Vec<i64> {
        s.to_dense().iter().map(|c| c.to_i64_pair().unwrap().0).collect()
    }

    #[test]
    fn gaussian_binomial_examples() {
        let q = Monomial::q();
        assert_eq!(ints(&gaussian_binomial(2, 1, q, r(10, 1)).unwrap())[..3], [1, 1, 0]);
        assert_eq!(ints(&gaussian_binomial(4, 2, q, r(6, 1)).unwrap()), vec![1, 1, 2, 1, 1, 0, 0]);
        assert!(gaussian_binomial(4, -1, q, r(6, 1)).unwrap().is_zero());
        assert!(gaussian_binomial(4, 5, q, r(6, 1)).unwrap().is_zero());
    }

    #[test]
    fn gaussian_binomial_matches_pochhammer_quotient() {
        let q = Monomial::q();
        let order = r(40, 1);
        for n in 0..9u64 {
            for k in 0..=n as i64 {
                let num = poch_finite(q, q, n, order).unwrap();
                let den =
                    poch_finite(q, q, k as u64, order).unwrap().mul(&poch_finite(q, q, n - k as u64, order).unwrap());
                let quotient = num.mul(&den.invert_unit().unwrap());
                assert_eq!(gaussian_binomial(n, k, q, order).unwrap(), quotient, "[{n},{k}]");
            }
        }
    }

    #[test]
    fn rogers_szego_small_cases() {
        let q = Monomial::q();
        let order = r(12, 1);
        assert_eq!(rogers_szego_def(0, q, order).unwrap(), ZSeries::one(1, 12));
        assert_eq!(rogers_szego_bw(0, q, order).unwrap(), ZSeries::one(1, 12));
        let h1 = rogers_szego_bw(1, q, order).unwrap();
        assert_eq!(h1.window(), Some((0, 1)));
        assert_eq!(h1.coeff(0), QSeries::one(1, 12));
        assert_eq!(h1.coeff(1), QSeries::one(1, 12));
        let h2 = rogers_szego_def(2, q, order).unwrap();
        assert_eq!(ints(&h2.coeff(1))[..3], [1, 1, 0]);
        assert_eq!(rs_at(2, Monomial::constant(Unit::ONE), q, order).unwrap(), {
            QSeries::from_terms(1, 12, [(0, GaussianInt::real(3)), (1, GaussianInt::real(1))]).unwrap()
        });
    }

    #[test]
    fn rogers_szego_representations_agree() {
        let q = Monomial::q();
        for n in 0..=12 {
            let order = r((n * n / 4 + 2) as i64, 1);
            assert_eq!(rogers_szego_def(n, q, order).unwrap(), rogers_szego_bw(n, q, order).unwrap(), "n = {n}");
        }
        // Fractional base exercises denominators.
        let b = Monomial::q_pow(r(1, 2));
        assert_eq!(rogers_szego_def(7, b, r(9, 1)).unwrap(), rogers_szego_bw(7, b, r(9, 1)).unwrap());
    }

    #[test]
    fn rogers_szego_at_minus_one() {
        let q = Monomial::q();
        let minus = Monomial::constant(Unit::MINUS_ONE);
        assert_eq!(ints(&rs_at(2, minus, q, r(3, 1)).unwrap()), vec![1, -1, 0, 0]);
        assert!(rs_at(3, minus, q, r(10, 1)).unwrap().is_zero());
        let q2 = Monomial::q_int(2);
        for n in 0..6u64 {
            let even = rs_at(2 * n, minus, q, r(60, 1)).unwrap();
            assert_eq!(even, poch_finite(q, q2, n, r(60, 1)).unwrap());
        }
    }

    #[test]
    fn rogers_szego_evaluation_at_one_sums_binomials() {
        let q = Monomial::q();
        let h5 = rogers_szego_def(5, q, r(8, 1)).unwrap();
        let direct = (0..=5).fold(QSeries::zero(1, 8), |acc, j| acc.add(&gaussian_binomial(5, j, q, r(8, 1)).unwrap()));
        assert_eq!(sum_slices(&h5), direct);
        assert_eq!(rs_at(5, Monomial::constant(Unit::ONE), q, r(8, 1)).unwrap(), direct);
    }

    #[test]
    fn triple_product_small_orders() {
        for n in [0, 1, 7, 30] {
            let rep = jtp_check(r(n, 1)).unwrap();
            assert!(rep.pass, "order {n}: {:?}", rep.first_mismatch);
        }
        assert_eq!(jtp_check(r(0, 1)).unwrap().window, Some((0, 0)));
    }

    #[test]
    fn triple_product_detects_a_flipped_term() {
        let order = r(30, 1);
        let theta = jtp_theta().expand(order).unwrap();
        // Flip the sign of the z^2 term, q^2.
        let flipped_slice = theta.coeff(2).neg();
        let flipped = theta.sub(&z_monomial(2, theta.coeff(2))).unwrap().add(&z_monomial(2, flipped_slice)).unwrap();
        let rep = jtp_compare(order, &flipped).unwrap();
        assert!(!rep.pass);
        let (k, m) = rep.first_mismatch.unwrap();
        assert_eq!((k, m.exp), (2, r(2, 1)));
    }

    #[test]
    fn nahm_rank_one_examples() {
        let order = r(40, 1);
        let rr = NahmData::new(vec![vec![r(2, 1)]], vec![r(0, 1)], r(0, 1)).unwrap();
        let f = nahm_series(&rr, order).unwrap().to_qseries().unwrap();
        let rr_a = crate::corpus::load("rr-a");
        assert_eq!(f, eval_sum(&rr_a, order).unwrap());

        let half = NahmData::new(vec![vec![r(1, 1)]], vec![r(1, 2)], r(0, 1)).unwrap();
        assert_eq!(half.body_den(), 2);
        let g = nahm_series(&half, r(10, 1)).unwrap().to_qseries().unwrap();
        assert_eq!(g.den(), 2);
        // Σ q^(n(n+1)/2)/(q;q)_n = (-q;q)_∞, partitions into distinct parts.
        let distinct = [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10];
        for (n, c) in distinct.iter().enumerate() {
            assert_eq!(g.coeff_at(r(n as i64, 1)), GaussianInt::real(*c), "q^{n}");
        }
        assert!(g.fractional_support().is_empty());
    }

    #[test]
    fn nahm_offset_handling() {
        let d = NahmData::new(vec![vec![r(2, 1)]], vec![r(1, 1)], r(11, 60)).unwrap();
        let s = nahm_series(&d, r(5, 1)).unwrap();
        let full = s.to_qseries().unwrap();
        assert_eq!(full.den(), 60);
        assert_eq!(full.order_q(), r(5, 1));
        assert_eq!(full.coeff_at(r(11, 60)), GaussianInt::real(1));
        let neg = NahmData::new(vec![vec![r(2, 1)]], vec![r(0, 1)], r(-1, 60)).unwrap();
        let s = nahm_series(&neg, r(5, 1)).unwrap();
        assert_eq!(s.body.order_q(), r(301, 60));
        assert!(s.to_qseries().is_err());
    }

    #[test]
    fn nahm_rejects_bad_matrices() {
        let bad = NahmData::new(vec![vec![r(-1, 1)]], vec![r(0, 1)], r(0, 1));
        assert_eq!(bad, Err(SeriesError::NotPositiveDefinite));
        let asym = NahmData::new(vec![vec![r(1, 1), r(1, 1)], vec![r(0, 1), r(1, 1)]], vec![r(0, 1); 2], r(0, 1));
        assert_eq!(asym, Err(SeriesError::NotSymmetric));
        assert!(matches!(
            NahmData::new(vec![vec![r(1, 1)]], vec![r(0, 1); 2], r(0, 1)),
            Err(SeriesError::Dimension(_))
        ));
    }

    #[test]
    fn nahm_nonnegative_with_nonnegative_data() {
        let d = NahmData::new(vec![vec![r(4, 1), r(1, 1)], vec![r(1, 1), r(2, 1)]], vec![r(1, 2), r(0, 1)], r(0, 1))
            .unwrap();
        let f = nahm_series(&d, r(20, 1)).unwrap().to_qseries().unwrap();
        for (_, c) in f.terms() {
            assert!(c.is_real() && c.to_i64_pair().unwrap().0 > 0);
        }
    }
}
