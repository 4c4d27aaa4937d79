//! Comparison of the two sides and the report format.

use std::time::Instant;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::ast::IdentitySpec;
use super::eval::{eval_product, eval_sum_with};
use crate::exec::Exec;
use crate::serial::{gaussian_pair, rat_to_string};
use crate::series::{Mismatch, QSeries, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch,
    Error,
}

/// Outcome of checking one identity through a truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub identity: String,
    pub status: Status,
    pub order: Rat,
    pub first_mismatch: Option<Mismatch>,
    /// Non-integer exponents carrying a nonzero sum-side coefficient.
    pub fractional_residue: Vec<Rat>,
    /// Exponents whose coefficient on either side is not real.
    pub imaginary_residue: Vec<Rat>,
    pub elapsed_ms: u128,
    pub error: Option<String>,
}

impl VerifyReport {
    /// A match must come with no mismatch and no residue of either kind.
    pub fn is_consistent(&self) -> bool {
        self.status != Status::Match
            || (self.first_mismatch.is_none()
                && self.fractional_residue.is_empty()
                && self.imaginary_residue.is_empty())
    }
}

struct MismatchJson<'a>(&'a Mismatch);

impl Serialize for MismatchJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Mismatch", 3)?;
        st.serialize_field("exp", &rat_to_string(&self.0.exp))?;
        st.serialize_field("lhs", &gaussian_pair(&self.0.lhs))?;
        st.serialize_field("rhs", &gaussian_pair(&self.0.rhs))?;
        st.end()
    }
}

impl Serialize for VerifyReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rats = |v: &[Rat]| v.iter().map(rat_to_string).collect::<Vec<_>>();
        let mut st = s.serialize_struct("VerifyReport", 8)?;
        st.serialize_field("identity", &self.identity)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("order", &rat_to_string(&self.order))?;
        st.serialize_field("first_mismatch", &self.first_mismatch.as_ref().map(MismatchJson))?;
        st.serialize_field("fractional_residue", &rats(&self.fractional_residue))?;
        st.serialize_field("imaginary_residue", &rats(&self.imaginary_residue))?;
        st.serialize_field("elapsed_ms", &self.elapsed_ms)?;
        st.serialize_field("error", &self.error)?;
        st.end()
    }
}

/// Checks `sum = product` coefficient by coefficient through `order`.
pub fn verify(spec: &IdentitySpec, order: Rat) -> VerifyReport {
    verify_with(spec, order, None, Exec::default())
}

pub fn verify_with(spec: &IdentitySpec, order: Rat, bounds: Option<&[i64]>, exec: Exec) -> VerifyReport {
    let start = Instant::now();
    let sides = eval_sum_with(spec, order, bounds, exec).and_then(|s| Ok((s, eval_product(spec, order)?)));
    let mut report = match sides {
        Ok((sum, product)) => compare(&spec.name, order, &sum, &product),
        Err(e) => VerifyReport {
            identity: spec.name.clone(),
            status: Status::Error,
            order,
            first_mismatch: None,
            fractional_residue: Vec::new(),
            imaginary_residue: Vec::new(),
            elapsed_ms: 0,
            error: Some(e.to_string()),
        },
    };
    report.elapsed_ms = start.elapsed().as_millis();
    report
}

/// Builds the report for already evaluated sides.
pub fn compare(name: &str, order: Rat, sum: &QSeries, product: &QSeries) -> VerifyReport {
    let first_mismatch = sum.first_mismatch(product);
    let fractional_residue = sum.fractional_support();
    let mut imaginary_residue = sum.imaginary_support();
    imaginary_residue.extend(product.imaginary_support());
    imaginary_residue.sort();
    imaginary_residue.dedup();
    let clean = first_mismatch.is_none() && fractional_residue.is_empty() && imaginary_residue.is_empty();
    VerifyReport {
        identity: name.to_string(),
        status: if clean { Status::Match } else { Status::Mismatch },
        order,
        first_mismatch,
        fractional_residue,
        imaginary_residue,
        elapsed_ms: 0,
        error: None,
    }
}

/// Verifies independent identities concurrently; reports keep input order.
pub fn verify_all(specs: &[IdentitySpec], order: Rat, exec: Exec) -> Vec<VerifyReport> {
    exec.map(specs.iter().collect(), |s| verify_with(s, order, None, exec))
}
