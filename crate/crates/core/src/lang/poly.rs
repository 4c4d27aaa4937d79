//! Rational polynomials in the summation indices, as produced by the parser.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::lattice::QuadForm;
use crate::series::Rat;

/// `Σ c_α n^α` keyed by exponent vectors over `nvars` indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        p.insert(vec![0; nvars], c);
        p
    }

    /// The index `n_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.insert(e, Rat::one());
        p
    }

    fn insert(&mut self, e: Vec<u32>, c: Rat) {
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// The constant value, when the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.degree() == 0 {
            Some(self.coeff(&vec![0; self.nvars]))
        } else {
            None
        }
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).copied().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), *c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(-Rat::one())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: Rat) -> Poly {
        let mut out = Poly::zero(self.nvars);
        if !k.is_zero() {
            out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::constant(self.nvars, Rat::one()), |acc, _| acc.mul(self))
    }

    /// `p(p-1)/2`.
    pub fn binom2(&self) -> Poly {
        self.mul(&self.sub(&Poly::constant(self.nvars, Rat::one()))).scale(Rat::new(1, 2))
    }

    pub fn eval(&self, n: &[i64]) -> Rat {
        self.terms
            .iter()
            .map(|(e, c)| {
                let m: i64 = e.iter().zip(n).map(|(k, x)| x.pow(*k)).product();
                c * m
            })
            .sum()
    }

    /// Lcm of the coefficient denominators.
    pub fn coeff_den(&self) -> i64 {
        self.terms.values().fold(1, |acc, c| acc.lcm(c.denom()))
    }

    /// Splits a polynomial of degree at most 2 into Hessian, linear part and constant.
    pub fn to_quad_form(&self) -> Option<QuadForm> {
        if self.degree() > 2 {
            return None;
        }
        let r = self.nvars;
        let mut h = vec![vec![Rat::zero(); r]; r];
        let mut lin = vec![Rat::zero(); r];
        let mut c = Rat::zero();
        for (e, v) in &self.terms {
            let nz: Vec<usize> = (0..r).filter(|&i| e[i] > 0).collect();
            match (nz.as_slice(), e.iter().sum::<u32>()) {
                ([], _) => c = *v,
                ([i], 1) => lin[*i] = *v,
                ([i], 2) => h[*i][*i] = v * 2,
                ([i, j], 2) => {
                    h[*i][*j] = *v;
                    h[*j][*i] = *v;
                }
                _ => unreachable!("degree checked above"),
            }
        }
        Some(QuadForm::new(h, lin, c).expect("symmetric by construction"))
    }

    /// Integer coefficients `(a_1..a_r, c)` of a linear form, when it is one.
    pub fn to_int_linear(&self) -> Option<(Vec<i64>, i64)> {
        if self.degree() > 1 || self.terms.values().any(|c| !c.is_integer()) {
            return None;
        }
        let coeffs = (0..self.nvars)
            .map(|i| {
                let mut e = vec![0; self.nvars];
                e[i] = 1;
                self.coeff(&e).to_integer()
            })
            .collect();
        Some((coeffs, self.coeff(&vec![0; self.nvars]).to_integer()))
    }
}

impl From<&QuadForm> for Poly {
    fn from(q: &QuadForm) -> Poly {
        let r = q.rank();
        let mut p = Poly::constant(r, q.constant);
        for i in 0..r {
            p = p.add(&Poly::var(r, i).scale(q.linear[i]));
            p = p.add(&Poly::var(r, i).pow(2).scale(q.hessian[i][i] / 2));
            for j in 0..i {
                p = p.add(&Poly::var(r, i).mul(&Poly::var(r, j)).scale(q.hessian[i][j]));
            }
        }
        p
    }
}
