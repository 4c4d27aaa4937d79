//! Parsed identities.

use std::fmt;

use crate::coeff::Unit;
use crate::lattice::QuadForm;
use crate::series::{Monomial, Rat};

/// Integer linear form `Σ a_i n_i + c` in the summation indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinForm {
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

impl LinForm {
    pub fn eval(&self, n: &[i64]) -> i64 {
        self.coeffs.iter().zip(n).map(|(a, x)| a * x).sum::<i64>() + self.constant
    }
}

/// One factor of a sign rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignAtom {
    /// `(-1)^L`
    MinusOne(LinForm),
    /// `(-1)^binom(L,2)`
    MinusOneBinom(LinForm),
    /// `i^L`
    IPow(LinForm),
}

impl SignAtom {
    pub fn eval(&self, n: &[i64]) -> Unit {
        match self {
            SignAtom::MinusOne(l) => Unit::sign(l.eval(n)),
            SignAtom::MinusOneBinom(l) => Unit::sign_binom2(l.eval(n)),
            SignAtom::IPow(l) => Unit::i_pow(l.eval(n)),
        }
    }
}

/// Product of sign atoms; the empty product is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignRule {
    pub atoms: Vec<SignAtom>,
}

impl SignRule {
    pub fn eval(&self, n: &[i64]) -> Unit {
        self.atoms.iter().fold(Unit::ONE, |acc, a| acc * a.eval(n))
    }
}

/// Denominator `(base; base)_{n_index}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Denom {
    pub base: Monomial,
    pub index: usize,
}

/// `(x; base)_∞` or `(x; base)_n`, in the numerator (`power = 1`) or the
/// denominator (`power = -1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFactor {
    pub x: Monomial,
    pub base: Monomial,
    pub power: i32,
    pub finite: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumSide {
    pub indices: Vec<String>,
    pub sign: SignRule,
    pub exponent: QuadForm,
    /// One entry per index, in index order.
    pub denoms: Vec<Denom>,
    pub bounds: Option<Vec<i64>>,
}

impl SumSide {
    pub fn rank(&self) -> usize {
        self.indices.len()
    }

    pub fn base_of(&self, index: usize) -> Monomial {
        self.denoms.iter().find(|d| d.index == index).expect("every index has a denominator").base
    }
}

/// One sum-product identity: `sum = product`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitySpec {
    pub name: String,
    /// Exponent denominator `D`: both sides live in `q^(1/D)`.
    pub den: i64,
    pub sum: SumSide,
    pub product: Vec<ProductFactor>,
}

impl fmt::Display for ProductFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power < 0 {
            f.write_str("1/")?;
        }
        write!(f, "poch({}, {}", self.x, self.base)?;
        if let Some(n) = self.finite {
            write!(f, ", {n}")?;
        }
        f.write_str(")")
    }
}

impl IdentitySpec {
    /// Every exponent denominator that appears in the identity.
    pub fn exponent_dens(&self) -> Vec<Rat> {
        let mut v: Vec<Rat> = self.sum.denoms.iter().map(|d| d.base.exp).collect();
        for p in &self.product {
            v.push(p.x.exp);
            v.push(p.base.exp);
        }
        v
    }
}
