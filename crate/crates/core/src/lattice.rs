//! Exact quadratic forms over the nonnegative lattice and enumeration bounds.
//!
//! A [`QuadForm`] stores `½·nᵀAn + b·n + c` by its Hessian `A`, the convention
//! used for Nahm sums. Positivity is decided with exact rational minors; the
//! enumeration bound uses a certified `λ` with `nᵀAn >= λ|n|²` on the
//! nonnegative orthant, found by checking `A - λI` for semidefiniteness
//! exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::SeriesError;
use crate::series::Rat;

fn big(r: &Rat) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// True when `m` is square and equal to its transpose.
pub fn is_symmetric(m: &[Vec<Rat>]) -> bool {
    let r = m.len();
    m.iter().all(|row| row.len() == r) && (0..r).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

fn det_big(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let r = m.len();
    let mut det = BigRational::one();
    for col in 0..r {
        let Some(piv) = (col..r).find(|&i| !m[i][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for i in col + 1..r {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &p;
            let (top, bottom) = m.split_at_mut(i);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

fn to_big(m: &[Vec<Rat>]) -> Vec<Vec<BigRational>> {
    m.iter().map(|row| row.iter().map(big).collect()).collect()
}

fn principal(m: &[Vec<BigRational>], idx: &[usize]) -> Vec<Vec<BigRational>> {
    idx.iter().map(|&i| idx.iter().map(|&j| m[i][j].clone()).collect()).collect()
}

/// Exact determinant.
pub fn determinant(m: &[Vec<Rat>]) -> BigRational {
    det_big(to_big(m))
}

/// Leading principal minors `Δ_1, …, Δ_r`.
pub fn leading_minors(m: &[Vec<Rat>]) -> Vec<BigRational> {
    let b = to_big(m);
    (1..=m.len()).map(|k| det_big(principal(&b, &(0..k).collect::<Vec<_>>()))).collect()
}

/// Sylvester's criterion: symmetric with every leading minor positive.
pub fn is_positive_definite(m: &[Vec<Rat>]) -> bool {
    !m.is_empty() && is_symmetric(m) && leading_minors(m).iter().all(|d| d.is_positive())
}

fn psd_big(m: &[Vec<BigRational>]) -> bool {
    let r = m.len();
    // Every principal minor, not only the leading ones.
    (1u32..(1 << r)).all(|mask| {
        let idx: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        !det_big(principal(m, &idx)).is_negative()
    })
}

/// Symmetric with every principal minor nonnegative.
pub fn is_positive_semidefinite(m: &[Vec<Rat>]) -> bool {
    is_symmetric(m) && psd_big(&to_big(m))
}

fn shifted_psd(m: &[Vec<BigRational>], lambda: &BigRational) -> bool {
    let mut s = m.to_vec();
    for (i, row) in s.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    psd_big(&s)
}

/// A positive rational `λ` with `m - λI` positive semidefinite, so that
/// `nᵀmn >= λ|n|²`; `None` unless `m` is positive definite.
///
/// `λ` is found by bisection on the exact semidefiniteness test and then
/// rounded down to a small denominator, so the bound it yields stays
/// certified.
pub fn min_eigen_lower_bound(m: &[Vec<Rat>]) -> Option<Rat> {
    if !is_positive_definite(m) {
        return None;
    }
    let b = to_big(m);
    let hi_r = (0..m.len()).map(|i| m[i][i]).min().expect("nonempty");
    if shifted_psd(&b, &big(&hi_r)) {
        return Some(hi_r);
    }
    let (mut lo, mut hi) = (Rat::zero(), hi_r);
    for _ in 0..40 {
        let mid = (lo + hi) / 2;
        if shifted_psd(&b, &big(&mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Snap to the best certified fraction with denominator at most 64.
    let mut best = lo;
    for d in 1..=64i64 {
        let cand = Rat::new((hi * d).floor().to_integer(), d);
        if cand > best && shifted_psd(&b, &big(&cand)) {
            best = cand;
        }
    }
    if best.denom().abs() > 1 << 20 {
        // Keep later i64 arithmetic well inside range.
        best = Rat::new((best * (1 << 20)).floor().to_integer(), 1 << 20);
    }
    (best > Rat::zero()).then_some(best)
}

/// Largest certified `λ > 0` with `nᵀmn >= λ|n|²` for every `n >= 0`.
///
/// Two certificates are tried: `m` itself, and `m` with its positive
/// off-diagonal entries dropped, which is entrywise below `m` and therefore
/// bounds it from below on the orthant. The second covers forms such as
/// `(m+n)²` that are only semidefinite on all of `ℤ²`.
pub fn orthant_coercivity(m: &[Vec<Rat>]) -> Option<Rat> {
    if !is_symmetric(m) {
        return None;
    }
    let dropped: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter().enumerate().map(|(j, a)| if i != j && *a > Rat::zero() { Rat::zero() } else { *a }).collect()
        })
        .collect();
    [min_eigen_lower_bound(m), min_eigen_lower_bound(&dropped)].into_iter().flatten().max()
}

/// `½·nᵀ·hessian·n + linear·n + constant` over `n ∈ ℤ_{>=0}^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    pub hessian: Vec<Vec<Rat>>,
    pub linear: Vec<Rat>,
    pub constant: Rat,
}

impl QuadForm {
    pub fn new(hessian: Vec<Vec<Rat>>, linear: Vec<Rat>, constant: Rat) -> Result<Self, SeriesError> {
        let r = linear.len();
        if hessian.len() != r || hessian.iter().any(|row| row.len() != r) {
            return Err(SeriesError::Dimension(format!("hessian must be {r}x{r} to match {r} linear coefficients")));
        }
        if !is_symmetric(&hessian) {
            return Err(SeriesError::NotSymmetric);
        }
        Ok(QuadForm { hessian, linear, constant })
    }

    pub fn rank(&self) -> usize {
        self.linear.len()
    }

    /// Matrix `M` with `nᵀMn` equal to the quadratic part, i.e. half the Hessian.
    pub fn value_matrix(&self) -> Vec<Vec<Rat>> {
        self.hessian.iter().map(|row| row.iter().map(|a| a / 2).collect()).collect()
    }

    pub fn value(&self, n: &[i64]) -> Rat {
        let r = self.rank();
        let mut v = self.constant;
        for i in 0..r {
            v += self.linear[i] * n[i];
            v += self.hessian[i][i] * (n[i] * n[i]) / 2;
            for j in 0..i {
                v += self.hessian[i][j] * (n[i] * n[j]);
            }
        }
        v
    }

    pub fn is_positive_definite(&self) -> bool {
        is_positive_definite(&self.hessian)
    }

    /// See [`orthant_coercivity`].
    pub fn orthant_coercivity(&self) -> Option<Rat> {
        orthant_coercivity(&self.hessian)
    }
}

/// Per-index upper bounds `B` such that every lattice point with some
/// `n_i > B` has value above `order`.
///
/// With `λ` from [`orthant_coercivity`], `β = Σ max(0, -b_i)` and `t = max_i n_i`, every point satisfies
/// `value >= λ/2·t² - β·t + c`. The bound is one less than the first `t`
/// beyond the vertex where this parabola exceeds `order`.
pub fn auto_bounds(form: &QuadForm, order: Rat) -> Result<Vec<i64>, SeriesError> {
    let lambda = form.orthant_coercivity().ok_or(SeriesError::NotPositiveDefinite)?;
    let beta: Rat = form.linear.iter().filter(|b| **b < Rat::zero()).map(|b| -b).sum();
    let f = |t: i64| lambda / 2 * (t * t) - beta * t + form.constant;
    let mut t = (beta / lambda).ceil().to_integer().max(0);
    while f(t) <= order {
        t += 1;
    }
    Ok(vec![(t - 1).max(0); form.rank()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn m(rows: &[&[(i64, i64)]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|row| row.iter().map(|&(n, d)| r(n, d)).collect()).collect()
    }

    #[test]
    fn sylvester_minors() {
        let au = m(&[&[(1, 1), (3, 2)], &[(3, 2), (9, 2)]]);
        let minors = leading_minors(&au);
        assert_eq!(minors[0], BigRational::from_integer(1.into()));
        assert_eq!(minors[1], BigRational::new(9.into(), 4.into()));
        assert!(is_positive_definite(&au));
        assert!(!is_positive_definite(&m(&[&[(-1, 1), (0, 1)], &[(0, 1), (-1, 1)]])));
        assert!(!is_positive_definite(&m(&[&[(1, 1), (2, 1)], &[(0, 1), (1, 1)]])));
    }

    #[test]
    fn semidefinite_needs_all_principal_minors() {
        // Leading minors 0 and 0, yet the (2,2) entry is negative.
        let a = m(&[&[(0, 1), (0, 1)], &[(0, 1), (-1, 1)]]);
        assert!(!is_positive_semidefinite(&a));
        let b = m(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]]);
        assert!(is_positive_semidefinite(&b));
        assert!(!is_positive_definite(&b));
    }

    #[test]
    fn eigen_bounds_are_certified_and_tight() {
        assert_eq!(min_eigen_lower_bound(&m(&[&[(2, 1)]])), Some(r(2, 1)));
        // Hessian [[3/2,1/2],[1/2,3/2]] has eigenvalues 1 and 2.
        let h = m(&[&[(3, 2), (1, 2)], &[(1, 2), (3, 2)]]);
        assert_eq!(min_eigen_lower_bound(&h), Some(r(1, 1)));
        // [[2,3],[3,9]] has smallest eigenvalue (11 - √85)/2 ≈ 0.8902.
        let au = m(&[&[(2, 1), (3, 1)], &[(3, 1), (9, 1)]]);
        let l = min_eigen_lower_bound(&au).unwrap();
        let exact = (11.0 - 85f64.sqrt()) / 2.0;
        let lf = *l.numer() as f64 / *l.denom() as f64;
        assert!(lf <= exact && lf > exact - 0.02, "{l}");
        assert_eq!(min_eigen_lower_bound(&m(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]])), None);
    }

    #[test]
    fn quad_form_value_and_matrix() {
        let q = QuadForm::new(m(&[&[(3, 2), (1, 2)], &[(1, 2), (3, 2)]]), vec![r(1, 1), r(1, 1)], r(0, 1)).unwrap();
        // 3m²/4 + mn/2 + 3n²/4 + m + n at (1,2) = 3/4 + 1 + 3 + 3.
        assert_eq!(q.value(&[1, 2]), r(31, 4));
        assert_eq!(q.value_matrix(), m(&[&[(3, 4), (1, 4)], &[(1, 4), (3, 4)]]));
        assert!(QuadForm::new(m(&[&[(1, 1), (2, 1)], &[(0, 1), (1, 1)]]), vec![r(0, 1); 2], r(0, 1)).is_err());
        assert!(QuadForm::new(m(&[&[(1, 1)]]), vec![r(0, 1); 2], r(0, 1)).is_err());
    }

    #[test]
    fn auto_bounds_examples() {
        let rr1 = QuadForm::new(m(&[&[(2, 1)]]), vec![r(0, 1)], r(0, 1)).unwrap();
        assert_eq!(auto_bounds(&rr1, r(100, 1)).unwrap(), vec![10]);
        let double = QuadForm::new(m(&[&[(3, 2), (1, 2)], &[(1, 2), (3, 2)]]), vec![r(0, 1); 2], r(0, 1)).unwrap();
        // Dropping the positive off-diagonal gives λ = 3/2, tighter than √(2·120).
        assert_eq!(auto_bounds(&double, r(120, 1)).unwrap(), vec![12, 12]);
        // (m+n)²/4 is only semidefinite but coercive on the orthant.
        let collapsed = QuadForm::new(m(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]]), vec![r(0, 1); 2], r(0, 1)).unwrap();
        assert!(!collapsed.is_positive_definite());
        assert_eq!(collapsed.orthant_coercivity(), Some(r(1, 2)));
        assert_eq!(auto_bounds(&collapsed, r(120, 1)).unwrap(), vec![21, 21]);
        let bad = QuadForm::new(m(&[&[(-1, 1)]]), vec![r(0, 1)], r(0, 1)).unwrap();
        assert_eq!(auto_bounds(&bad, r(5, 1)), Err(SeriesError::NotPositiveDefinite));
        // (i-2j)² vanishes along i = 2j; no certificate exists.
        let null = QuadForm::new(m(&[&[(2, 1), (-4, 1)], &[(-4, 1), (8, 1)]]), vec![r(0, 1); 2], r(0, 1)).unwrap();
        assert_eq!(null.orthant_coercivity(), None);
    }

    #[test]
    fn auto_bounds_exclude_everything_beyond() {
        // Negative linear terms push the vertex away from the origin.
        let q = QuadForm::new(m(&[&[(2, 1), (3, 1)], &[(3, 1), (9, 1)]]), vec![r(-3, 1), r(-5, 2)], r(1, 3)).unwrap();
        for order in [0, 7, 40] {
            let ord = r(order, 1);
            let b = auto_bounds(&q, ord).unwrap();
            for x in 0..=b[0] + 12 {
                for y in 0..=b[1] + 12 {
                    if x > b[0] || y > b[1] {
                        assert!(q.value(&[x, y]) > ord, "({x},{y}) at order {order}");
                    }
                }
            }
        }
    }
}
