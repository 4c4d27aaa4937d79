//! Truncated evaluation of both sides of an identity.
//!
//! The sum side walks the lattice box given by explicit or automatic bounds.
//! Inverse Pochhammer denominators are built once per index value. The index
//! with the largest bound is summed innermost by shifted accumulation into a
//! dense buffer; each remaining (outer) point then costs one series product,
//! and outer points are independent, so they run through [`Exec`].

use num_integer::Integer;
use num_traits::Zero;

use super::ast::IdentitySpec;
use super::LangError;
use crate::coeff::GaussianInt;
use crate::exec::Exec;
use crate::lattice;
use crate::series::{scaled_order, Monomial, QSeries, Rat};

/// Exact integer evaluation of `den · exponent(n)`.
struct ScaledExponent {
    /// `M·hessian/2` on the diagonal, `M·hessian` off it.
    quad: Vec<Vec<i64>>,
    lin: Vec<i64>,
    constant: i64,
    scale: i64,
    den: i64,
}

impl ScaledExponent {
    fn new(spec: &IdentitySpec) -> Self {
        let f = &spec.sum.exponent;
        let r = f.rank();
        let mut scale = f.constant.denom().abs();
        for i in 0..r {
            scale = scale.lcm(f.linear[i].denom());
            scale = scale.lcm((f.hessian[i][i] / 2).denom());
            for j in 0..i {
                scale = scale.lcm(f.hessian[i][j].denom());
            }
        }
        let int = |x: Rat| (x * scale).to_integer();
        let quad = (0..r)
            .map(|i| (0..r).map(|j| if i == j { int(f.hessian[i][i] / 2) } else { int(f.hessian[i][j]) }).collect())
            .collect();
        ScaledExponent {
            quad,
            lin: f.linear.iter().map(|x| int(*x)).collect(),
            constant: int(f.constant),
            scale,
            den: spec.den,
        }
    }

    fn at(&self, n: &[i64]) -> i64 {
        let r = n.len();
        let mut v = self.constant;
        for i in 0..r {
            v += self.lin[i] * n[i] + self.quad[i][i] * n[i] * n[i];
            for j in 0..i {
                v += self.quad[i][j] * n[i] * n[j];
            }
        }
        let num = v * self.den;
        debug_assert_eq!(num % self.scale, 0, "denominator check admitted a bad exponent");
        num / self.scale
    }
}

/// Per-index upper bounds certified by the exponent's positive definiteness.
pub fn auto_bounds(spec: &IdentitySpec, order: Rat) -> Result<Vec<i64>, LangError> {
    lattice::auto_bounds(&spec.sum.exponent, order).map_err(|_| {
        LangError::UnboundedEnumeration(format!(
            "`{}`: quadratic part is not certifiably positive on the orthant and no bounds were given",
            spec.name
        ))
    })
}

fn bounds_for(spec: &IdentitySpec, order: Rat, explicit: Option<&[i64]>) -> Result<Vec<i64>, LangError> {
    match explicit.or(spec.sum.bounds.as_deref()) {
        Some(b) if b.len() == spec.sum.rank() => Ok(b.to_vec()),
        Some(b) => Err(LangError::UnboundedEnumeration(format!(
            "`{}`: {} bounds for {} indices",
            spec.name,
            b.len(),
            spec.sum.rank()
        ))),
        None => auto_bounds(spec, order),
    }
}

/// `1/(b;b)_v` for `v = 0..=bound`, truncated at scaled order `limit`.
pub(crate) fn inverse_pochhammers(b: Monomial, bound: i64, den: i64, limit: i64) -> Result<Vec<QSeries>, LangError> {
    let mut out = Vec::with_capacity(bound as usize + 1);
    let mut cur = QSeries::one(den, limit);
    out.push(cur.clone());
    for v in 1..=bound {
        if (b.exp * v * den) <= Rat::from_integer(limit) {
            cur = cur.div_one_minus(b.pow(v))?;
        }
        out.push(cur.clone());
    }
    Ok(out)
}

/// The sum side through `order` (in `q`-units).
pub fn eval_sum(spec: &IdentitySpec, order: Rat) -> Result<QSeries, LangError> {
    eval_sum_with(spec, order, None, Exec::default())
}

/// [`eval_sum`] with optional bounds overriding the spec's, on a chosen executor.
pub fn eval_sum_with(
    spec: &IdentitySpec,
    order: Rat,
    bounds: Option<&[i64]>,
    exec: Exec,
) -> Result<QSeries, LangError> {
    let den = spec.den;
    let limit = scaled_order(order, den);
    let bounds = bounds_for(spec, order, bounds)?;
    let r = spec.sum.rank();
    let expo = ScaledExponent::new(spec);
    let invs: Vec<Vec<QSeries>> =
        (0..r).map(|i| inverse_pochhammers(spec.sum.base_of(i), bounds[i], den, limit)).collect::<Result<_, _>>()?;
    let inner = (0..r).max_by_key(|&i| (bounds[i], std::cmp::Reverse(i))).expect("at least one index");
    let outer: Vec<usize> = (0..r).filter(|&i| i != inner).collect();

    let mut points: Vec<Vec<i64>> = vec![vec![0; r]];
    for &j in &outer {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..=bounds[j]).map(move |v| {
                    let mut p = p.clone();
                    p[j] = v;
                    p
                })
            })
            .collect();
    }

    let term = |mut p: Vec<i64>| -> Result<QSeries, LangError> {
        let mut buf: Vec<GaussianInt> = Vec::new();
        for v in 0..=bounds[inner] {
            p[inner] = v;
            let e = expo.at(&p);
            if e > limit {
                continue;
            }
            if e < 0 {
                return Err(LangError::NegativeExponent { identity: spec.name.clone(), point: p.clone() });
            }
            if buf.is_empty() {
                buf = vec![GaussianInt::zero(); limit as usize + 1];
            }
            let u = spec.sum.sign.eval(&p);
            for (k, c) in invs[inner][v as usize].terms() {
                let at = e + k;
                if at > limit {
                    break;
                }
                buf[at as usize].add_unit_mul(u, c);
            }
        }
        if buf.is_empty() {
            return Ok(QSeries::zero(den, limit));
        }
        let mut acc = QSeries::from_dense(den, limit, buf);
        for &j in &outer {
            if p[j] > 0 {
                acc = acc.mul(&invs[j][p[j] as usize]);
            }
        }
        Ok(acc)
    };

    exec.map_reduce(points, term, |a, b| Ok(a?.add(&b?))).unwrap_or_else(|| Ok(QSeries::zero(den, limit)))
}

/// The product side through `order`, factor by factor in linear time each.
pub fn eval_product(spec: &IdentitySpec, order: Rat) -> Result<QSeries, LangError> {
    let den = spec.den;
    let limit = scaled_order(order, den);
    let cap = Rat::from_integer(limit);
    let mut out = QSeries::one(den, limit);
    for f in &spec.product {
        let count = f.finite.unwrap_or(u64::MAX);
        let mut m = f.x;
        let mut k = 0u64;
        while k < count && m.exp * den <= cap {
            out = if f.power > 0 { out.mul_one_minus(m)? } else { out.div_one_minus(m)? };
            m = m * f.base;
            k += 1;
        }
    }
    Ok(out)
}
