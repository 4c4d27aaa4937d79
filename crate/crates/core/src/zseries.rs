//! Finite Laurent objects in an auxiliary variable `z` over [`QSeries`].
//!
//! A [`ZSeries`] is `Σ_k c_k(q) z^k` over a finite window. At a fixed
//! truncation order every object the constant-term method needs has finite
//! support in `z`, so the constant term is plain coefficient extraction.
//!
//! Some bilateral sums carry small negative `q`-powers on individual
//! `z`-slices (for instance `q^(k(k-2)/4)` at `k = 1`). Such objects are held
//! in *twisted* form: with twist `τ`, the stored slice `c_k` stands for the
//! true slice `q^(τk)·c_k`, which is the substitution `z -> z·q^(-τ)`.
//! Products of equally twisted objects stay twisted by `τ`, and the constant
//! term is unaffected, so [`ZSeries::ct`] never needs to look at the twist.

use num_integer::Integer;
use num_traits::Zero;

use crate::coeff::Unit;
use crate::error::SeriesError;
use crate::exec::Exec;
use crate::series::{check_base, common_den, scaled_order, Mismatch, Monomial, QSeries, Rat};

/// `Σ_{k=zmin}^{zmin+len-1} c_k z^k` with all slices on one denominator and order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    den: i64,
    order: i64,
    twist: Rat,
    zmin: i64,
    coeffs: Vec<QSeries>,
}

impl ZSeries {
    pub fn zero(den: i64, order: i64) -> Self {
        ZSeries { den, order, twist: Rat::zero(), zmin: 0, coeffs: Vec::new() }
    }

    pub fn one(den: i64, order: i64) -> Self {
        Self::embed(QSeries::one(den, order))
    }

    /// `s` as a `z`-free object.
    pub fn embed(s: QSeries) -> Self {
        Self::from_slices(s.den(), s.order(), Rat::zero(), 0, vec![s])
    }

    /// Builds from consecutive slices starting at `z^zmin`. Every slice is moved
    /// onto `den` (which must be a multiple of its own) and cut at `order`.
    pub fn from_slices(den: i64, order: i64, twist: Rat, zmin: i64, slices: Vec<QSeries>) -> Self {
        let coeffs = slices.into_iter().map(|s| s.with_den(den).truncate(order)).collect();
        let mut z = ZSeries { den, order, twist, zmin, coeffs };
        z.trim();
        z
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(QSeries::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.zmin = if self.coeffs.is_empty() { 0 } else { self.zmin + lead as i64 };
        // Slices shorter than the common order would misreport exactness.
        for c in &mut self.coeffs {
            debug_assert_eq!(c.den(), self.den);
            debug_assert!(c.order() >= self.order);
            if c.order() != self.order {
                *c = c.truncate(self.order);
            }
        }
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn twist(&self) -> Rat {
        self.twist
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(zmin, zmax)` of the nonzero support.
    pub fn window(&self) -> Option<(i64, i64)> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some((self.zmin, self.zmin + self.coeffs.len() as i64 - 1))
        }
    }

    /// Stored slice at `z^k` (zero outside the window).
    pub fn coeff(&self, k: i64) -> QSeries {
        let idx = k - self.zmin;
        if idx >= 0 && (idx as usize) < self.coeffs.len() {
            self.coeffs[idx as usize].clone()
        } else {
            QSeries::zero(self.den, self.order)
        }
    }

    pub fn slices(&self) -> impl Iterator<Item = (i64, &QSeries)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.zmin + i as i64, c))
    }

    fn with_den(&self, den: i64) -> ZSeries {
        if den == self.den {
            return self.clone();
        }
        ZSeries {
            den,
            order: self.order * (den / self.den),
            twist: self.twist,
            zmin: self.zmin,
            coeffs: self.coeffs.iter().map(|c| c.with_den(den).into_owned()).collect(),
        }
    }

    fn unify(&self, other: &ZSeries) -> Result<(ZSeries, ZSeries, i64), SeriesError> {
        if self.twist != other.twist {
            return Err(SeriesError::TwistMismatch(self.twist, other.twist));
        }
        let den = self.den.lcm(&other.den);
        let (a, b) = (self.with_den(den), other.with_den(den));
        let order = a.order.min(b.order);
        Ok((a, b, order))
    }

    fn combine(&self, other: &ZSeries, negate: bool) -> Result<ZSeries, SeriesError> {
        let (a, b, order) = self.unify(other)?;
        let lo = match (a.window(), b.window()) {
            (Some((x, _)), Some((y, _))) => x.min(y),
            (Some((x, _)), None) => x,
            (None, Some((y, _))) => y,
            (None, None) => return Ok(ZSeries { order, twist: a.twist, ..ZSeries::zero(a.den, order) }),
        };
        let hi = a.window().map_or(i64::MIN, |w| w.1).max(b.window().map_or(i64::MIN, |w| w.1));
        let slices = (lo..=hi)
            .map(|k| {
                let (x, y) = (a.coeff(k), b.coeff(k));
                if negate {
                    x.sub(&y)
                } else {
                    x.add(&y)
                }
            })
            .collect();
        Ok(ZSeries::from_slices(a.den, order, a.twist, lo, slices))
    }

    pub fn add(&self, other: &ZSeries) -> Result<ZSeries, SeriesError> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &ZSeries) -> Result<ZSeries, SeriesError> {
        self.combine(other, true)
    }

    /// Multiplies every slice by the `z`-free series `s`.
    pub fn scale(&self, s: &QSeries) -> ZSeries {
        let den = self.den.lcm(&s.den());
        let s = s.with_den(den);
        let me = self.with_den(den);
        let order = me.order.min(s.order());
        let slices = me.coeffs.iter().map(|c| c.mul(&s)).collect();
        ZSeries::from_slices(den, order, self.twist, self.zmin, slices)
    }

    /// Convolution in `z`; each slice product is truncated at the shared order.
    pub fn mul(&self, other: &ZSeries) -> Result<ZSeries, SeriesError> {
        self.mul_with(other, Exec::default())
    }

    pub fn mul_with(&self, other: &ZSeries, exec: Exec) -> Result<ZSeries, SeriesError> {
        let (a, b, order) = self.unify(other)?;
        let (Some((alo, ahi)), Some((blo, bhi))) = (a.window(), b.window()) else {
            return Ok(ZSeries { twist: a.twist, ..ZSeries::zero(a.den, order) });
        };
        let ks: Vec<i64> = (alo + blo..=ahi + bhi).collect();
        let slices = exec.map(ks, |k| {
            let mut acc = QSeries::zero(a.den, order);
            for i in alo.max(k - bhi)..=ahi.min(k - blo) {
                let x = &a.coeffs[(i - alo) as usize];
                let y = &b.coeffs[(k - i - blo) as usize];
                if !x.is_zero() && !y.is_zero() {
                    acc = acc.add(&x.mul(y));
                }
            }
            acc
        });
        Ok(ZSeries::from_slices(a.den, order, a.twist, alo + blo, slices))
    }

    /// `self · (1 - m·z)` for a monomial `m` with nonnegative exponent.
    pub fn mul_one_minus_z(&self, m: Monomial) -> Result<ZSeries, SeriesError> {
        let slices: Vec<QSeries> = self.coeffs.iter().map(|c| c.mul_monomial(m)).collect::<Result<_, _>>()?;
        let den = self.den.lcm(m.exp.denom());
        let order = self.order * (den / self.den);
        let shifted = ZSeries::from_slices(den, order, self.twist, self.zmin + 1, slices);
        self.sub(&shifted)
    }

    /// The coefficient of `z^0`.
    pub fn ct(&self) -> QSeries {
        self.coeff(0)
    }

    /// Substitutes `z -> z^s` for a nonzero integer `s`.
    pub fn dilate(&self, s: i64) -> ZSeries {
        assert!(s != 0, "dilation factor must be nonzero");
        let Some((lo, hi)) = self.window() else {
            return ZSeries { twist: self.twist / s, ..self.clone() };
        };
        let (new_lo, new_hi) = if s > 0 { (lo * s, hi * s) } else { (hi * s, lo * s) };
        let mut slices = vec![QSeries::zero(self.den, self.order); (new_hi - new_lo + 1) as usize];
        for (k, c) in self.slices() {
            slices[(k * s - new_lo) as usize] = c.clone();
        }
        ZSeries::from_slices(self.den, self.order, self.twist / s, new_lo, slices)
    }

    /// Substitutes `z -> 1/z`.
    pub fn reflect(&self) -> ZSeries {
        self.dilate(-1)
    }

    /// Evaluates at `z := m`, folding the twist back in.
    pub fn specialize(&self, m: Monomial) -> Result<QSeries, SeriesError> {
        let mut den = common_den([&m.exp, &self.twist]).lcm(&self.den);
        den = den.max(1);
        let me = self.with_den(den);
        let mut acc = QSeries::zero(den, me.order);
        for (k, c) in me.slices() {
            let exp = (m.exp + self.twist) * k;
            if exp < Rat::zero() {
                return Err(SeriesError::NegativeZPower(m.to_string()));
            }
            let factor = Monomial::new(m.unit.pow(k), exp);
            acc = acc.add(&c.mul_monomial(factor)?);
        }
        Ok(acc)
    }

    /// Smallest `(q-exponent, z-power)` where the two objects differ.
    pub fn first_mismatch(&self, other: &ZSeries) -> Result<Option<(i64, Mismatch)>, SeriesError> {
        let (a, b, order) = self.unify(other)?;
        let lo = [a.window(), b.window()].iter().flatten().map(|w| w.0).min();
        let hi = [a.window(), b.window()].iter().flatten().map(|w| w.1).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Ok(None);
        };
        let best = (lo..=hi)
            .filter_map(|k| a.coeff(k).truncate(order).first_mismatch(&b.coeff(k).truncate(order)).map(|m| (k, m)))
            .min_by(|x, y| x.1.exp.cmp(&y.1.exp).then(x.0.cmp(&y.0)));
        Ok(best)
    }
}

/// A bilateral sum `Σ_k chi^k q^(alpha·binom(k,2) + beta·k) z^(step·k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Theta {
    pub alpha: Rat,
    pub beta: Rat,
    pub chi: Unit,
    pub step: i64,
}

impl Theta {
    pub fn new(alpha: Rat, beta: Rat, chi: Unit, step: i64) -> Self {
        Theta { alpha, beta, chi, step }
    }

    /// Stored exponent of the `k`-th term under twist `twist`.
    pub fn stored_exponent(&self, k: i64, twist: Rat) -> Rat {
        self.alpha * Rat::from_integer(k * (k - 1) / 2) + self.beta * k - twist * (self.step * k)
    }

    /// Every term whose exponent is at most `order`.
    pub fn expand(&self, order: Rat) -> Result<ZSeries, SeriesError> {
        self.expand_twisted(order, Rat::zero())
    }

    pub fn expand_twisted(&self, order: Rat, twist: Rat) -> Result<ZSeries, SeriesError> {
        assert!(self.alpha > Rat::zero(), "theta needs alpha > 0");
        assert!(self.step != 0, "theta needs a nonzero z-step");
        let tw = twist * self.step;
        let den = common_den([&self.alpha, &self.beta, &tw]);
        let limit = scaled_order(order, den);
        let bound = Rat::from_integer(limit);
        let g = |k: i64| self.stored_exponent(k, twist) * den;
        // Convex in k: walk outward from the vertex.
        let vertex = (self.alpha / 2 - self.beta + tw) / self.alpha;
        let start = vertex.floor().to_integer();
        let mut ks = Vec::new();
        let mut k = start;
        while g(k) <= bound {
            ks.push(k);
            k -= 1;
        }
        let mut k = start + 1;
        while g(k) <= bound {
            ks.push(k);
            k += 1;
        }
        let mut terms: Vec<(i64, QSeries)> = Vec::with_capacity(ks.len());
        for k in ks {
            let e = g(k);
            if e < Rat::zero() {
                return Err(SeriesError::NegativeExponent(e / den));
            }
            let slice = QSeries::from_terms(den, limit, [(e.to_integer(), self.chi.pow(k).to_gaussian())])?;
            terms.push((self.step * k, slice));
        }
        Ok(collect_slices(den, limit, twist, terms))
    }
}

fn collect_slices(den: i64, order: i64, twist: Rat, mut terms: Vec<(i64, QSeries)>) -> ZSeries {
    if terms.is_empty() {
        return ZSeries { twist, ..ZSeries::zero(den, order) };
    }
    terms.sort_by_key(|(k, _)| *k);
    let lo = terms[0].0;
    let hi = terms[terms.len() - 1].0;
    let mut slices = vec![QSeries::zero(den, order); (hi - lo + 1) as usize];
    for (k, s) in terms {
        let slot = &mut slices[(k - lo) as usize];
        *slot = slot.add(&s);
    }
    ZSeries::from_slices(den, order, twist, lo, slices)
}

/// `Σ_n c^n z^n / (b;b)_n = 1/(c·z; b)_∞`, window `[0, n_max(order)]`.
pub fn euler_z_inverse(c: Monomial, b: Monomial, order: Rat) -> Result<ZSeries, SeriesError> {
    euler_z_inverse_twisted(c, b, Rat::zero(), order)
}

/// [`euler_z_inverse`] stored under twist `twist`.
pub fn euler_z_inverse_twisted(c: Monomial, b: Monomial, twist: Rat, order: Rat) -> Result<ZSeries, SeriesError> {
    euler_builder(c, b, twist, order, false)
}

/// `Σ_n c^n b^binom(n,2) z^n / (b;b)_n = (-c·z; b)_∞`.
pub fn euler_z_product(c: Monomial, b: Monomial, order: Rat) -> Result<ZSeries, SeriesError> {
    euler_z_product_twisted(c, b, Rat::zero(), order)
}

/// [`euler_z_product`] stored under twist `twist`.
pub fn euler_z_product_twisted(c: Monomial, b: Monomial, twist: Rat, order: Rat) -> Result<ZSeries, SeriesError> {
    euler_builder(c, b, twist, order, true)
}

fn euler_builder(c: Monomial, b: Monomial, twist: Rat, order: Rat, with_binom: bool) -> Result<ZSeries, SeriesError> {
    check_base(b)?;
    let stored = Monomial::new(c.unit, c.exp - twist);
    // The product form is bounded by the binomial growth even when c is q-free.
    let ok = if with_binom { stored.exp >= Rat::zero() } else { stored.exp > Rat::zero() };
    if !ok {
        return Err(SeriesError::DivergentEmbedding(c.to_string()));
    }
    let den = common_den([&stored.exp, &b.exp, &twist]);
    let limit = scaled_order(order, den);
    let bound = Rat::from_integer(limit);
    let exp_of = |n: i64| {
        let binom = if with_binom { b.exp * (n * (n - 1) / 2) } else { Rat::zero() };
        (stored.exp * n + binom) * den
    };
    let mut inv = QSeries::one(den, limit);
    let mut slices = Vec::new();
    let mut n = 0i64;
    while exp_of(n) <= bound {
        if n > 0 {
            inv = inv.div_one_minus(b.pow(n))?;
        }
        let m = Monomial::new(stored.unit.pow(n), exp_of(n) / den);
        slices.push(inv.mul_monomial(m)?);
        n += 1;
    }
    Ok(ZSeries::from_slices(den, limit, twist, 0, slices))
}

/// `Π_{k<n} (1 - c·b^k·z)` as a polynomial in `z`.
pub fn z_poch_finite(c: Monomial, b: Monomial, n: u64, order: Rat) -> Result<ZSeries, SeriesError> {
    check_base(b)?;
    let den = common_den([&c.exp, &b.exp]);
    let mut out = ZSeries::one(den, scaled_order(order, den));
    let mut factor = c;
    for _ in 0..n {
        out = out.mul_one_minus_z(factor)?;
        factor = factor * b;
    }
    Ok(out)
}

/// `z^k · s`.
pub fn z_monomial(k: i64, s: QSeries) -> ZSeries {
    ZSeries::from_slices(s.den(), s.order(), Rat::zero(), k, vec![s])
}

/// Sum of all stored slices (evaluation at `z = 1` for untwisted objects).
pub fn sum_slices(z: &ZSeries) -> QSeries {
    z.slices().fold(QSeries::zero(z.den(), z.order()), |acc, (_, c)| acc.add(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::GaussianInt;
    use crate::series::{poch_infinite, poch_infinite_inverse};
    use num_traits::One;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn z(den: i64, order: i64, zmin: i64, slices: Vec<QSeries>) -> ZSeries {
        ZSeries::from_slices(den, order, Rat::zero(), zmin, slices)
    }

    #[test]
    fn mul_examples() {
        let one = QSeries::one(1, 5);
        let zz = z(1, 5, 1, vec![one.clone()]);
        let zinv = z(1, 5, -1, vec![one.clone()]);
        assert_eq!(zz.mul(&zinv).unwrap(), ZSeries::one(1, 5));
        assert_eq!(zz.mul(&ZSeries::one(1, 5)).unwrap(), zz);
        let a = z(1, 5, 0, vec![one.clone(), one.clone()]);
        let b = z(1, 5, 0, vec![one.clone(), one.neg()]);
        assert_eq!(a.mul(&b).unwrap(), z(1, 5, 0, vec![one.clone(), QSeries::zero(1, 5), one.neg()]));
    }

    #[test]
    fn ct_examples() {
        let s = QSeries::from_terms(1, 6, [(2, GaussianInt::one())]).unwrap();
        let t = QSeries::from_terms(1, 6, [(3, GaussianInt::real(5))]).unwrap();
        let obj = z(1, 6, 0, vec![t.clone(), s.clone()]);
        assert_eq!(obj.ct(), t);
        assert_eq!(ZSeries::embed(s.clone()).ct(), s);
        assert!(z_monomial(2, s).ct().is_zero());
    }

    #[test]
    fn ct_of_product_is_naive_convolution() {
        let a = euler_z_product(Monomial::new(Unit::I, r(3, 4)), Monomial::q(), r(10, 1)).unwrap();
        let b = Theta::new(r(1, 2), r(0, 1), Unit::MINUS_ONE, -1).expand(r(10, 1)).unwrap();
        let (lo, hi) = a.window().unwrap();
        let mut naive = QSeries::zero(4, 40);
        for k in lo..=hi {
            naive = naive.add(&a.coeff(k).mul(&b.coeff(-k)));
        }
        assert_eq!(a.mul(&b).unwrap().ct(), naive);
    }

    #[test]
    fn theta_window_examples() {
        let th = Theta::new(r(1, 2), Rat::zero(), Unit::MINUS_ONE, -1);
        let w = th.expand(Rat::zero()).unwrap();
        // k in {0, 1} map to z^0 and z^-1.
        assert_eq!(w.window(), Some((-1, 0)));
        for n in [0, 5, 17] {
            assert_eq!(th.expand(r(n, 1)).unwrap().ct(), QSeries::one(4, 4 * n));
        }
    }

    #[test]
    fn theta_window_growth() {
        for n in 0..120i64 {
            let half = Theta::new(r(1, 2), Rat::zero(), Unit::MINUS_ONE, 1).expand(r(n, 1)).unwrap();
            let (lo, hi) = half.window().unwrap();
            let width = hi - lo + 1;
            // alpha = 1/2: k(k-1)/4 <= n.
            let brute = (-200i64..200).filter(|k| k * (k - 1) <= 4 * n).count() as i64;
            assert_eq!(width, brute);
            assert!(width <= 2 * ((2.0 * (n as f64).sqrt()).ceil() as i64) + 3, "n={n} width={width}");
            let full = Theta::new(Rat::one(), r(1, 2), Unit::MINUS_ONE, 1).expand(r(n, 1)).unwrap();
            let (lo, hi) = full.window().unwrap();
            assert!(hi - lo < 2 * ((2.0 * n as f64).sqrt().ceil() as i64) + 3);
        }
    }

    #[test]
    fn theta_with_negative_exponent_requires_twist() {
        let th = Theta::new(r(1, 2), r(-1, 4), Unit::I, -1);
        assert!(matches!(th.expand(r(5, 1)), Err(SeriesError::NegativeExponent(_))));
        let tw = th.expand_twisted(r(20, 1), r(1, 4)).unwrap();
        let (lo, hi) = tw.window().unwrap();
        assert!(lo >= -11 && hi <= 11, "window {lo}..{hi}");
    }

    #[test]
    fn euler_order_zero() {
        let c = Monomial::new(Unit::I, r(3, 4));
        let e = euler_z_inverse(c, Monomial::q(), Rat::zero()).unwrap();
        assert_eq!(e.window(), Some((0, 0)));
        assert_eq!(e.ct(), QSeries::one(4, 0));
        assert_eq!(euler_z_product(c, Monomial::q(), Rat::zero()).unwrap(), ZSeries::one(4, 0));
    }

    #[test]
    fn euler_inverse_at_z_one() {
        let q = Monomial::q();
        let e = euler_z_inverse(q, q, r(60, 1)).unwrap();
        assert_eq!(sum_slices(&e), poch_infinite_inverse(q, q, r(60, 1)).unwrap());
        assert_eq!(sum_slices(&e).mul(&poch_infinite(q, q, r(60, 1)).unwrap()), QSeries::one(1, 60));
    }

    #[test]
    fn euler_rejects_divergent_embedding() {
        let q = Monomial::q();
        assert!(matches!(
            euler_z_inverse(Monomial::constant(Unit::ONE), q, r(3, 1)),
            Err(SeriesError::DivergentEmbedding(_))
        ));
    }

    #[test]
    fn euler_pairing_matches_z_squared_expansion() {
        let order = r(40, 1);
        let q = Monomial::q();
        let a = euler_z_product(Monomial::new(Unit::I, r(3, 4)), q, order).unwrap();
        let b = euler_z_product(Monomial::new(Unit::MINUS_I, r(3, 4)), q, order).unwrap();
        let target = euler_z_product(Monomial::q_pow(r(3, 2)), Monomial::q_int(2), order).unwrap().dilate(2);
        assert_eq!(a.mul(&b).unwrap().first_mismatch(&target).unwrap(), None);
    }

    #[test]
    fn euler_product_against_finite_poch() {
        let c = Monomial::new(Unit::MINUS_ONE, r(1, 2));
        let q = Monomial::q();
        let e = euler_z_product(c, q, r(30, 1)).unwrap();
        // z = -1: (c; q)_∞ evaluated directly.
        let direct = poch_infinite(c, q, r(30, 1)).unwrap();
        assert_eq!(e.specialize(Monomial::constant(Unit::MINUS_ONE)).unwrap(), direct);
    }

    #[test]
    fn dilate_and_twist_bookkeeping() {
        let e = euler_z_inverse_twisted(-Monomial::q_int(3), Monomial::q_int(4), r(1, 2), r(20, 1)).unwrap();
        assert_eq!(e.dilate(2).twist(), r(1, 4));
        assert_eq!(e.reflect().twist(), r(-1, 2));
        let plain = euler_z_inverse(-Monomial::q_int(3), Monomial::q_int(4), r(20, 1)).unwrap();
        // At z = 1 the twisted object still evaluates to the same series.
        let lhs = e.specialize(Monomial::constant(Unit::ONE)).unwrap();
        let rhs = plain.specialize(Monomial::constant(Unit::ONE)).unwrap();
        assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn z_poch_finite_expands() {
        let q = Monomial::q();
        let p = z_poch_finite(Monomial::constant(Unit::MINUS_ONE), q, 2, r(10, 1)).unwrap();
        // (1+z)(1+qz) = 1 + (1+q)z + q z^2
        assert_eq!(p.window(), Some((0, 2)));
        assert_eq!(p.coeff(1), QSeries::from_terms(1, 10, [(0, GaussianInt::one()), (1, GaussianInt::one())]).unwrap());
        assert_eq!(p.coeff(2), QSeries::from_terms(1, 10, [(1, GaussianInt::one())]).unwrap());
    }
}
