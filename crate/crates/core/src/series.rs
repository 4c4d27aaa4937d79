//! Truncated formal power series in `q^(1/D)` with Gaussian-integer coefficients.
//!
//! A [`QSeries`] stores exponents as scaled integers `e` meaning `q^(e/D)` and
//! is exact through its (inclusive) order `N`: the coefficient of `q^(e/D)`
//! for every `e <= N` is the true value. Binary operations unify denominators
//! through the lcm and keep the smaller of the two orders.
//!
//! Exponents are never negative. Every object appearing in the identities is
//! a power series once its known `q`-prefix is split off.

use std::borrow::Cow;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::{GaussianInt, Unit};
use crate::error::SeriesError;
use crate::serial::{gaussian_pair, JsonInt};

/// Exact rational used for exponents and orders in `q`-units.
pub type Rat = Ratio<i64>;

/// Least common multiple of the denominators of `rats` (1 for an empty list).
pub fn common_den<'a>(rats: impl IntoIterator<Item = &'a Rat>) -> i64 {
    rats.into_iter().fold(1, |acc, r| acc.lcm(r.denom()))
}

/// Largest scaled exponent `e` with `e / den <= order`.
pub fn scaled_order(order: Rat, den: i64) -> i64 {
    assert!(order >= Rat::zero(), "truncation order must be nonnegative");
    (order * den).floor().to_integer()
}

/// `unit · q^exp`, the argument and base type of Pochhammer symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub unit: Unit,
    pub exp: Rat,
}

impl Monomial {
    pub fn new(unit: Unit, exp: Rat) -> Self {
        Monomial { unit, exp }
    }

    pub fn q() -> Self {
        Monomial::new(Unit::ONE, Rat::one())
    }

    pub fn q_pow(exp: Rat) -> Self {
        Monomial::new(Unit::ONE, exp)
    }

    pub fn q_int(exp: i64) -> Self {
        Monomial::q_pow(Rat::from_integer(exp))
    }

    /// The `q`-free unit `u`.
    pub fn constant(unit: Unit) -> Self {
        Monomial::new(unit, Rat::zero())
    }

    pub fn pow(self, n: i64) -> Self {
        Monomial::new(self.unit.pow(n), self.exp * n)
    }

    pub fn times_unit(self, u: Unit) -> Self {
        Monomial::new(self.unit * u, self.exp)
    }

    pub fn is_plain_base(&self) -> bool {
        self.unit == Unit::ONE && self.exp > Rat::zero()
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.unit * rhs.unit, self.exp + rhs.exp)
    }
}

impl Neg for Monomial {
    type Output = Monomial;
    fn neg(self) -> Monomial {
        self.times_unit(Unit::MINUS_ONE)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp.is_zero() {
            return write!(f, "{}", self.unit);
        }
        let prefix = match self.unit.exponent() {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        if self.exp.is_one() {
            write!(f, "{prefix}q")
        } else {
            write!(f, "{prefix}q^{}", crate::serial::rat_to_string(&self.exp))
        }
    }
}

/// First exponent at which two series disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exp: Rat,
    pub lhs: GaussianInt,
    pub rhs: GaussianInt,
}

/// Truncated series `Σ c_e q^(e/den)`, `0 <= e <= order`, sparse and canonical.
#[derive(Clone, Debug)]
pub struct QSeries {
    den: i64,
    order: i64,
    terms: Vec<(i64, GaussianInt)>,
}

impl QSeries {
    pub fn zero(den: i64, order: i64) -> Self {
        assert!(den > 0, "exponent denominator must be positive");
        QSeries { den, order, terms: Vec::new() }
    }

    pub fn one(den: i64, order: i64) -> Self {
        Self::constant(GaussianInt::one(), den, order)
    }

    pub fn constant(c: GaussianInt, den: i64, order: i64) -> Self {
        let mut s = Self::zero(den, order);
        if !c.is_zero() && order >= 0 {
            s.terms.push((0, c));
        }
        s
    }

    /// Canonicalises arbitrary `(scaled exponent, coefficient)` pairs.
    pub fn from_terms(
        den: i64,
        order: i64,
        terms: impl IntoIterator<Item = (i64, GaussianInt)>,
    ) -> Result<Self, SeriesError> {
        let mut v: Vec<(i64, GaussianInt)> = Vec::new();
        for (e, c) in terms {
            if e < 0 {
                return Err(SeriesError::NegativeExponent(Rat::new(e, den)));
            }
            if e <= order {
                v.push((e, c));
            }
        }
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i64, GaussianInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += &c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        let mut s = Self::zero(den, order);
        s.terms = out;
        Ok(s)
    }

    /// Builds from a dense buffer indexed by scaled exponent.
    pub fn from_dense(den: i64, order: i64, dense: Vec<GaussianInt>) -> Self {
        let mut s = Self::zero(den, order);
        s.terms = dense
            .into_iter()
            .enumerate()
            .take((order + 1).max(0) as usize)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as i64, c))
            .collect();
        s
    }

    /// `m` as a series truncated at `order` (in `q`-units).
    pub fn from_monomial(m: Monomial, order: Rat) -> Result<Self, SeriesError> {
        if m.exp < Rat::zero() {
            return Err(SeriesError::NegativeExponent(m.exp));
        }
        let den = *m.exp.denom();
        let n = scaled_order(order, den);
        Self::from_terms(den, n, [((m.exp * den).to_integer(), m.unit.to_gaussian())])
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// Truncation order in scaled units.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Truncation order in `q`-units.
    pub fn order_q(&self) -> Rat {
        Rat::new(self.order, self.den)
    }

    pub fn terms(&self) -> &[(i64, GaussianInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Option<&GaussianInt> {
        self.terms.binary_search_by_key(&e, |(k, _)| *k).ok().map(|i| &self.terms[i].1)
    }

    /// Coefficient of `q^exp`; zero when `exp` is not on this series' grid.
    pub fn coeff_at(&self, exp: Rat) -> GaussianInt {
        let scaled = exp * self.den;
        if !scaled.is_integer() {
            return GaussianInt::zero();
        }
        self.coeff(scaled.to_integer()).cloned().unwrap_or_default()
    }

    pub fn to_dense(&self) -> Vec<GaussianInt> {
        let mut v = vec![GaussianInt::zero(); (self.order + 1).max(0) as usize];
        for (e, c) in &self.terms {
            v[*e as usize] = c.clone();
        }
        v
    }

    /// Re-expresses the series over denominator `den` (a multiple of the current one).
    pub fn with_den(&self, den: i64) -> Cow<'_, QSeries> {
        if den == self.den {
            return Cow::Borrowed(self);
        }
        assert!(den % self.den == 0, "denominator {den} is not a multiple of {}", self.den);
        let k = den / self.den;
        Cow::Owned(QSeries {
            den,
            order: self.order * k,
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        })
    }

    /// Drops every term above `order` (scaled units); never raises the order.
    pub fn truncate(&self, order: i64) -> QSeries {
        let order = order.min(self.order);
        QSeries { den: self.den, order, terms: self.terms.iter().take_while(|(e, _)| *e <= order).cloned().collect() }
    }

    pub fn truncate_q(&self, order: Rat) -> QSeries {
        self.truncate(scaled_order(order, self.den))
    }

    fn unify<'a>(a: &'a QSeries, b: &'a QSeries) -> (Cow<'a, QSeries>, Cow<'a, QSeries>, i64) {
        let den = a.den.lcm(&b.den);
        let a = a.with_den(den);
        let b = b.with_den(den);
        let order = a.order.min(b.order);
        (a, b, order)
    }

    fn zip_with(&self, other: &QSeries, negate_rhs: bool) -> QSeries {
        let (a, b, order) = Self::unify(self, other);
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        let (at, bt) = (&a.terms, &b.terms);
        loop {
            let next_a = at.get(i).filter(|(e, _)| *e <= order);
            let next_b = bt.get(j).filter(|(e, _)| *e <= order);
            match (next_a, next_b) {
                (None, None) => break,
                (Some((ea, ca)), Some((eb, cb))) if ea == eb => {
                    let c = if negate_rhs { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ea, c));
                    }
                    i += 1;
                    j += 1;
                }
                (Some((ea, ca)), Some((eb, _))) if ea < eb => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                (Some((ea, ca)), None) => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                (_, Some((eb, cb))) => {
                    out.push((*eb, if negate_rhs { -cb } else { cb.clone() }));
                    j += 1;
                }
            }
        }
        QSeries { den: a.den, order, terms: out }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        self.zip_with(other, false)
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.zip_with(other, true)
    }

    pub fn neg(&self) -> QSeries {
        QSeries { den: self.den, order: self.order, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn scale(&self, c: &GaussianInt) -> QSeries {
        if c.is_zero() {
            return QSeries::zero(self.den, self.order);
        }
        QSeries { den: self.den, order: self.order, terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn mul_unit(&self, u: Unit) -> QSeries {
        let mut out = self.clone();
        for (_, c) in &mut out.terms {
            c.rotate(u);
        }
        out
    }

    /// Cauchy product, exact through the unified order.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let (a, b, order) = Self::unify(self, other);
        if a.terms.is_empty() || b.terms.is_empty() {
            return QSeries::zero(a.den, order);
        }
        if a.terms.len() == 1 || b.terms.len() == 1 {
            let (single, rest) = if a.terms.len() == 1 { (&a, &b) } else { (&b, &a) };
            let (e0, c0) = &single.terms[0];
            let terms = rest.terms.iter().map(|(e, c)| (e + e0, c * c0)).take_while(|(e, _)| *e <= order).collect();
            return QSeries { den: a.den, order, terms };
        }
        let mut buf = vec![GaussianInt::zero(); (order + 1) as usize];
        for (ea, ca) in &a.terms {
            if *ea > order {
                break;
            }
            for (eb, cb) in &b.terms {
                let e = ea + eb;
                if e > order {
                    break;
                }
                buf[e as usize].add_mul(ca, cb);
            }
        }
        QSeries::from_dense(a.den, order, buf)
    }

    /// Multiplies by `q^(e/den)` with `e >= 0` in this series' own units.
    pub fn shift(&self, e: i64) -> QSeries {
        assert!(e >= 0, "shift must be nonnegative");
        QSeries {
            den: self.den,
            order: self.order,
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).take_while(|(k, _)| *k <= self.order).collect(),
        }
    }

    /// Rescales to a denominator that can hold `exp` and returns the scaled exponent.
    fn fit(&self, exp: Rat) -> (Cow<'_, QSeries>, i64) {
        let den = self.den.lcm(exp.denom());
        let s = self.with_den(den);
        (s, (exp * den).to_integer())
    }

    /// Multiplies by the monomial `m` (whose exponent must be nonnegative).
    pub fn mul_monomial(&self, m: Monomial) -> Result<QSeries, SeriesError> {
        if m.exp < Rat::zero() {
            return Err(SeriesError::NegativeExponent(m.exp));
        }
        let (s, e) = self.fit(m.exp);
        Ok(s.shift(e).mul_unit(m.unit))
    }

    /// `self · (1 - m)` in linear time.
    pub fn mul_one_minus(&self, m: Monomial) -> Result<QSeries, SeriesError> {
        let shifted = self.mul_monomial(m)?;
        Ok(self.sub(&shifted))
    }

    /// `self / (1 - m)` for `m.exp > 0`, via the recurrence `out[e] = in[e] + u·out[e-k]`.
    pub fn div_one_minus(&self, m: Monomial) -> Result<QSeries, SeriesError> {
        if m.exp <= Rat::zero() {
            return Err(SeriesError::NonUnitConstantTerm(&GaussianInt::one() - &m.unit.to_gaussian()));
        }
        let (s, k) = self.fit(m.exp);
        if k > s.order {
            return Ok(s.into_owned());
        }
        let mut buf = s.to_dense();
        let k = k as usize;
        for e in k..buf.len() {
            if buf[e - k].is_zero() {
                continue;
            }
            let mut prev = buf[e - k].clone();
            prev.rotate(m.unit);
            buf[e] += &prev;
        }
        Ok(QSeries::from_dense(s.den, s.order, buf))
    }

    /// Two-sided inverse through the order; the constant term must be ±1 or ±i.
    pub fn invert_unit(&self) -> Result<QSeries, SeriesError> {
        let c0 = self.coeff(0).cloned().unwrap_or_default();
        let inv0 = c0.unit_inverse().ok_or(SeriesError::NonUnitConstantTerm(c0))?;
        let n = self.order.max(0) as usize;
        let mut b: Vec<GaussianInt> = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        let neg_inv0 = -&inv0;
        let tail: Vec<&(i64, GaussianInt)> = self.terms.iter().filter(|(e, _)| *e > 0).collect();
        for e in 1..=n {
            let mut acc = GaussianInt::zero();
            for (j, a) in &tail {
                let j = *j as usize;
                if j > e {
                    break;
                }
                acc.add_mul(a, &b[e - j]);
            }
            b.push(if acc.is_zero() { acc } else { &acc * &neg_inv0 });
        }
        Ok(QSeries::from_dense(self.den, self.order, b))
    }

    /// Substitutes `q -> q^r` for a positive rational `r`.
    pub fn substitute_power(&self, r: Rat) -> QSeries {
        assert!(r > Rat::zero(), "substitution power must be positive");
        let (p, s) = (*r.numer(), *r.denom());
        QSeries {
            den: self.den * s,
            order: self.order * p,
            terms: self.terms.iter().map(|(e, c)| (e * p, c.clone())).collect(),
        }
    }

    /// Exponents with a nonzero coefficient that are not integers.
    pub fn fractional_support(&self) -> Vec<Rat> {
        self.terms.iter().filter(|(e, _)| e % self.den != 0).map(|(e, _)| Rat::new(*e, self.den)).collect()
    }

    /// Exponents whose coefficient has a nonzero imaginary part.
    pub fn imaginary_support(&self) -> Vec<Rat> {
        self.terms.iter().filter(|(_, c)| !c.is_real()).map(|(e, _)| Rat::new(*e, self.den)).collect()
    }

    /// Smallest exponent (through the common order) where the two series differ.
    pub fn first_mismatch(&self, other: &QSeries) -> Option<Mismatch> {
        let (a, b, order) = Self::unify(self, other);
        let diff = a.truncate(order).sub(&b.truncate(order));
        diff.terms.first().map(|(e, _)| Mismatch {
            exp: Rat::new(*e, a.den),
            lhs: a.coeff(*e).cloned().unwrap_or_default(),
            rhs: b.coeff(*e).cloned().unwrap_or_default(),
        })
    }

    /// Equality through the smaller of the two orders.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        self.first_mismatch(other).is_none()
    }
}

impl PartialEq for QSeries {
    /// Equal orders (after unifying denominators) and equal coefficients.
    fn eq(&self, other: &QSeries) -> bool {
        let (a, b, _) = Self::unify(self, other);
        a.order == b.order && a.terms == b.terms
    }
}

impl Eq for QSeries {}

impl<'a> Add<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl<'a> Sub<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl<'a> Mul<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let exp = Rat::new(*e, self.den);
            let coef = if c.is_real() { c.to_string() } else { format!("({c})") };
            if k > 0 {
                f.write_str(" + ")?;
            }
            if exp.is_zero() {
                write!(f, "{coef}")?;
            } else {
                write!(f, "{coef}*q^{}", crate::serial::rat_to_string(&exp))?;
            }
        }
        write!(f, " + O(q^>{})", crate::serial::rat_to_string(&self.order_q()))
    }
}

#[derive(Serialize, Deserialize)]
struct QSeriesRepr {
    den: i64,
    order: i64,
    terms: Vec<(i64, JsonInt, JsonInt)>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QSeriesRepr {
            den: self.den,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let (re, im) = gaussian_pair(c);
                    (*e, re, im)
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = QSeriesRepr::deserialize(d)?;
        if r.den <= 0 {
            return Err(serde::de::Error::custom("den must be positive"));
        }
        if r.terms.iter().any(|(e, _, _)| *e > r.order) {
            return Err(serde::de::Error::custom("term beyond truncation order"));
        }
        QSeries::from_terms(
            r.den,
            r.order,
            r.terms.into_iter().map(|(e, re, im)| (e, GaussianInt { re: re.0, im: im.0 })),
        )
        .map_err(serde::de::Error::custom)
    }
}

/// Checks `b` is `q^s` with `s > 0`.
pub(crate) fn check_base(b: Monomial) -> Result<(), SeriesError> {
    if b.is_plain_base() {
        Ok(())
    } else {
        Err(SeriesError::InvalidBase(b.to_string()))
    }
}

/// `(x; b)_n = Π_{k<n} (1 - x·b^k)`, exact through `order`.
pub fn poch_finite(x: Monomial, b: Monomial, n: u64, order: Rat) -> Result<QSeries, SeriesError> {
    check_base(b)?;
    if x.exp < Rat::zero() {
        return Err(SeriesError::NegativeExponent(x.exp));
    }
    let den = common_den([&x.exp, &b.exp]);
    let limit = scaled_order(order, den);
    let mut out = QSeries::one(den, limit);
    let mut factor = x;
    for _ in 0..n {
        if factor.exp * den > Rat::from_integer(limit) {
            break;
        }
        out = out.mul_one_minus(factor)?;
        factor = factor * b;
    }
    Ok(out)
}

fn check_infinite(x: Monomial, b: Monomial) -> Result<(), SeriesError> {
    check_base(b)?;
    if x.exp <= Rat::zero() {
        return Err(SeriesError::DivergentProduct { arg: x.to_string(), base: b.to_string() });
    }
    Ok(())
}

/// `(x; b)_∞` truncated at `order`; needs `x.exp > 0`.
pub fn poch_infinite(x: Monomial, b: Monomial, order: Rat) -> Result<QSeries, SeriesError> {
    check_infinite(x, b)?;
    let den = common_den([&x.exp, &b.exp]);
    let limit = Rat::from_integer(scaled_order(order, den));
    let mut out = QSeries::one(den, limit.to_integer());
    let mut factor = x;
    while factor.exp * den <= limit {
        out = out.mul_one_minus(factor)?;
        factor = factor * b;
    }
    Ok(out)
}

/// `1 / (x; b)_∞` built factor by factor with the geometric recurrence.
pub fn poch_infinite_inverse(x: Monomial, b: Monomial, order: Rat) -> Result<QSeries, SeriesError> {
    check_infinite(x, b)?;
    let den = common_den([&x.exp, &b.exp]);
    let limit = Rat::from_integer(scaled_order(order, den));
    let mut out = QSeries::one(den, limit.to_integer());
    let mut factor = x;
    while factor.exp * den <= limit {
        out = out.div_one_minus(factor)?;
        factor = factor * b;
    }
    Ok(out)
}
