//! Exact Gaussian integers, the coefficient ring of every series in the crate.
//!
//! Sum sides such as `(-1)^binom(n-m,2)` and the constant-term rewrites that
//! route through powers of `i` both live in ℤ[i]. Results that should be real
//! are checked to be real rather than assumed.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element `re + im·i` of ℤ[i] with arbitrary-precision parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt { re: re.into(), im: im.into() }
    }

    pub fn real(re: impl Into<BigInt>) -> Self {
        GaussianInt { re: re.into(), im: BigInt::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianInt::new(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True for the four units ±1, ±i.
    pub fn is_unit(&self) -> bool {
        (self.re.abs().is_one() && self.im.is_zero()) || (self.re.is_zero() && self.im.abs().is_one())
    }

    pub fn conj(&self) -> Self {
        GaussianInt { re: self.re.clone(), im: -&self.im }
    }

    /// `re² + im²`.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Inverse of a unit; `None` for non-units.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.is_unit() {
            Some(self.conj())
        } else {
            None
        }
    }

    /// `(re, im)` as machine integers when both fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.re.to_i64()?, self.im.to_i64()?))
    }

    /// `self += a * b` without materialising the product when either side is real.
    pub fn add_mul(&mut self, a: &GaussianInt, b: &GaussianInt) {
        if a.im.is_zero() && b.im.is_zero() {
            self.re += &a.re * &b.re;
        } else if a.im.is_zero() {
            self.re += &a.re * &b.re;
            self.im += &a.re * &b.im;
        } else if b.im.is_zero() {
            self.re += &a.re * &b.re;
            self.im += &a.im * &b.re;
        } else {
            self.re += &a.re * &b.re - &a.im * &b.im;
            self.im += &a.re * &b.im + &a.im * &b.re;
        }
    }

    /// `self += u * c` for a unit `u`.
    pub fn add_unit_mul(&mut self, u: Unit, c: &GaussianInt) {
        match u.0 {
            0 => {
                self.re += &c.re;
                self.im += &c.im;
            }
            1 => {
                self.re -= &c.im;
                self.im += &c.re;
            }
            2 => {
                self.re -= &c.re;
                self.im -= &c.im;
            }
            _ => {
                self.re += &c.im;
                self.im -= &c.re;
            }
        }
    }

    /// Multiply in place by the unit `i^k`.
    pub fn rotate(&mut self, unit: Unit) {
        match unit.0 {
            0 => {}
            1 => {
                // (a+bi)i = -b + ai
                std::mem::swap(&mut self.re, &mut self.im);
                self.re = -std::mem::take(&mut self.re);
            }
            2 => {
                self.re = -std::mem::take(&mut self.re);
                self.im = -std::mem::take(&mut self.im);
            }
            _ => {
                // (a+bi)(-i) = b - ai
                std::mem::swap(&mut self.re, &mut self.im);
                self.im = -std::mem::take(&mut self.im);
            }
        }
    }
}

/// `i^k` for any integer `k`.
pub fn i_pow(k: i64) -> GaussianInt {
    Unit::i_pow(k).to_gaussian()
}

/// `(-1)^binom(k, 2)` with `binom(k, 2) = k(k-1)/2` for every integer `k`.
pub fn sign_binom2(k: i64) -> GaussianInt {
    Unit::sign_binom2(k).to_gaussian()
}

/// A unit of ℤ[i], stored as the exponent `k` in `i^k` (mod 4).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unit(u8);

impl Unit {
    pub const ONE: Unit = Unit(0);
    pub const I: Unit = Unit(1);
    pub const MINUS_ONE: Unit = Unit(2);
    pub const MINUS_I: Unit = Unit(3);

    pub fn i_pow(k: i64) -> Unit {
        Unit(k.rem_euclid(4) as u8)
    }

    /// `(-1)^k`.
    pub fn sign(k: i64) -> Unit {
        if k.is_even() {
            Unit::ONE
        } else {
            Unit::MINUS_ONE
        }
    }

    pub fn sign_binom2(k: i64) -> Unit {
        // k(k-1)/2 mod 2 depends only on k mod 4.
        match k.rem_euclid(4) {
            0 | 1 => Unit::ONE,
            _ => Unit::MINUS_ONE,
        }
    }

    /// Exponent of `i`, in `0..4`.
    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn pow(self, k: i64) -> Unit {
        Unit::i_pow(self.0 as i64 * k.rem_euclid(4))
    }

    pub fn inv(self) -> Unit {
        Unit((4 - self.0) % 4)
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn to_gaussian(self) -> GaussianInt {
        match self.0 {
            0 => GaussianInt::new(1, 0),
            1 => GaussianInt::new(0, 1),
            2 => GaussianInt::new(-1, 0),
            _ => GaussianInt::new(0, -1),
        }
    }

    pub fn from_gaussian(g: &GaussianInt) -> Option<Unit> {
        match g.to_i64_pair()? {
            (1, 0) => Some(Unit::ONE),
            (0, 1) => Some(Unit::I),
            (-1, 0) => Some(Unit::MINUS_ONE),
            (0, -1) => Some(Unit::MINUS_I),
            _ => None,
        }
    }
}

impl Mul for Unit {
    type Output = Unit;
    fn mul(self, rhs: Unit) -> Unit {
        Unit((self.0 + rhs.0) % 4)
    }
}

impl MulAssign for Unit {
    fn mul_assign(&mut self, rhs: Unit) {
        *self = *self * rhs;
    }
}

impl Neg for Unit {
    type Output = Unit;
    fn neg(self) -> Unit {
        self * Unit::MINUS_ONE
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        })
    }
}

impl Zero for GaussianInt {
    fn zero() -> Self {
        GaussianInt::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianInt {
    fn one() -> Self {
        GaussianInt::real(1)
    }
}

impl From<i64> for GaussianInt {
    fn from(v: i64) -> Self {
        GaussianInt::real(v)
    }
}

impl From<Unit> for GaussianInt {
    fn from(u: Unit) -> Self {
        u.to_gaussian()
    }
}

impl<'a> Add<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(mut self, rhs: GaussianInt) -> GaussianInt {
        self += &rhs;
        self
    }
}

impl AddAssign<&GaussianInt> for GaussianInt {
    fn add_assign(&mut self, rhs: &GaussianInt) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(mut self, rhs: GaussianInt) -> GaussianInt {
        self -= &rhs;
        self
    }
}

impl SubAssign<&GaussianInt> for GaussianInt {
    fn sub_assign(&mut self, rhs: &GaussianInt) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> Mul<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: &GaussianInt) -> GaussianInt {
        let mut out = GaussianInt::zero();
        out.add_mul(self, rhs);
        out
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: GaussianInt) -> GaussianInt {
        &self * &rhs
    }
}

impl MulAssign<&GaussianInt> for GaussianInt {
    fn mul_assign(&mut self, rhs: &GaussianInt) {
        *self = &*self * rhs;
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt { re: -&self.re, im: -&self.im }
    }
}

impl Sum for GaussianInt {
    fn sum<I: Iterator<Item = GaussianInt>>(iter: I) -> Self {
        iter.fold(GaussianInt::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_part = if self.im.is_one() {
            "i".to_string()
        } else if (-&self.im).is_one() {
            "-i".to_string()
        } else {
            format!("{}i", self.im)
        };
        if self.re.is_zero() {
            f.write_str(&im_part)
        } else if self.im.is_negative() {
            write!(f, "{}{}", self.re, im_part)
        } else {
            write!(f, "{}+{}", self.re, im_part)
        }
    }
}
