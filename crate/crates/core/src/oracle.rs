//! Slow, independent references used by tests: partition counting for
//! product sides, schoolbook convolution and box summation without pruning.

use num_traits::Zero;

use crate::coeff::{GaussianInt, Unit};
use crate::lang::{IdentitySpec, LangError, ProductFactor};
use crate::series::{poch_finite, Monomial, QSeries, Rat};

/// How one part size enters the generating function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartKind {
    /// `1/(1 - s·q^p)`: the part may repeat; each copy carries the sign `s`.
    Repeated,
    /// `(1 - s·q^p)`: the part is used at most once, with sign `-s`.
    Distinct,
}

/// One generator `q^size` with sign `s = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Part {
    pub size: u64,
    pub sign: i8,
    pub kind: PartKind,
}

/// The multiset of part generators read off a product side, cut at `max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartSpec {
    pub parts: Vec<Part>,
    pub max: u64,
}

impl PartSpec {
    /// Parts in the given residue classes mod `m` (repeats allowed).
    pub fn residues(classes: &[u64], m: u64, max: u64) -> Self {
        let parts = (1..=max)
            .filter(|p| classes.iter().any(|c| p % m == c % m))
            .map(|size| Part { size, sign: 1, kind: PartKind::Repeated })
            .collect();
        PartSpec { parts, max }
    }

    /// Reads integer-exponent factors with real leading units. Returns `None`
    /// for anything else.
    pub fn from_factors(factors: &[ProductFactor], max: u64) -> Option<Self> {
        let mut parts = Vec::new();
        for f in factors {
            let int = |m: Monomial| m.exp.is_integer().then(|| m.exp.to_integer());
            let (a, c) = (int(f.x)?, int(f.base)?);
            if a <= 0 || c <= 0 || !f.x.unit.is_real() || f.base.unit != Unit::ONE {
                return None;
            }
            let sign = if f.x.unit == Unit::ONE { 1 } else { -1 };
            let kind = if f.power < 0 { PartKind::Repeated } else { PartKind::Distinct };
            let count = f.finite.unwrap_or(u64::MAX);
            let mut size = a as u64;
            let mut k = 0;
            while k < count && size <= max {
                parts.push(Part { size, sign, kind });
                size += c as u64;
                k += 1;
            }
        }
        Some(PartSpec { parts, max })
    }
}

/// Signed number of partitions of `n` (for `n <= ps.max`) built from the
/// generators; a plain partition count when every generator is a repeated
/// positive part.
pub fn partition_count(ps: &PartSpec, n: u64) -> i128 {
    partition_counts(ps)[n as usize]
}

/// [`partition_count`] for every `n <= ps.max`, by dynamic programming over
/// part sizes.
pub fn partition_counts(ps: &PartSpec) -> Vec<i128> {
    let len = ps.max as usize + 1;
    let mut ways = vec![0i128; len];
    ways[0] = 1;
    for p in &ps.parts {
        let size = p.size as usize;
        if size >= len {
            continue;
        }
        let s = p.sign as i128;
        match p.kind {
            // Ascending: each entry may already include copies of this part.
            PartKind::Repeated => {
                for n in size..len {
                    ways[n] += s * ways[n - size];
                }
            }
            // Descending: the part is added at most once.
            PartKind::Distinct => {
                for n in (size..len).rev() {
                    ways[n] -= s * ways[n - size];
                }
            }
        }
    }
    ways
}

/// Partitions of `n` into the given sizes, each repeatable, by explicit
/// enumeration. Exponential; for checking [`partition_count`] itself.
pub fn enumerate_partitions(sizes: &[u64], n: u64) -> Vec<Vec<u64>> {
    fn go(sizes: &[u64], n: u64, largest: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for i in (0..=largest).rev() {
            if sizes[i] <= n {
                cur.push(sizes[i]);
                go(sizes, n - sizes[i], i, cur, out);
                cur.pop();
            }
        }
    }
    let mut sorted: Vec<u64> = sizes.iter().copied().filter(|&s| s > 0).collect();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = Vec::new();
    if !sorted.is_empty() || n == 0 {
        go(&sorted, n, sorted.len().saturating_sub(1), &mut Vec::new(), &mut out);
    }
    out
}

/// Schoolbook convolution truncated to the common length.
pub fn dense_mul(a: &[GaussianInt], b: &[GaussianInt]) -> Vec<GaussianInt> {
    let len = a.len().min(b.len());
    let mut out = vec![GaussianInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += &(x * y);
        }
    }
    out
}

/// The sum side by literal summation over `0 <= n_i <= bounds[i]`, with no
/// exponent-based pruning.
pub fn unpruned_sum(spec: &IdentitySpec, bounds: &[i64], order: Rat) -> Result<QSeries, LangError> {
    let den = spec.den;
    let r = spec.sum.rank();
    assert_eq!(bounds.len(), r, "one bound per index");
    let limit = crate::series::scaled_order(order, den);
    let mut acc = QSeries::zero(den, limit);
    let mut point = vec![0i64; r];
    loop {
        let e = spec.sum.exponent.value(&point);
        if e < Rat::zero() {
            return Err(LangError::NegativeExponent { identity: spec.name.clone(), point });
        }
        let m = Monomial::new(spec.sum.sign.eval(&point), e);
        let mut term = QSeries::from_monomial(m, order)?.with_den(den).into_owned();
        for (i, &n) in point.iter().enumerate() {
            let b = spec.sum.base_of(i);
            let poch = poch_finite(b, b, n as u64, order)?.with_den(den).into_owned();
            term = term.mul(&poch.invert_unit()?);
        }
        acc = acc.add(&term);

        let mut i = 0;
        loop {
            if i == r {
                return Ok(acc);
            }
            if point[i] < bounds[i] {
                point[i] += 1;
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}
