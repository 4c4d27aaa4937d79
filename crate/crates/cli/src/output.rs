//! Rendering of reports and tables in text, JSON and CSV.

use std::io::{self, Write};

use num_integer::Integer;
use serde::Serialize;

use qident_core::coeff::GaussianInt;
use qident_core::lang::VerifyReport;
use qident_core::replay::StepReport;
use qident_core::serial::{gaussian_pair, rat_to_string, JsonInt};
use qident_core::series::{scaled_order, QSeries, Rat};
use qident_core::special::NahmSeries;

use crate::Format;

fn parts(g: &GaussianInt) -> [String; 2] {
    [g.re.to_string(), g.im.to_string()]
}

fn finish_json(value: &impl Serialize) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn csv_writer() -> csv::Writer<io::StdoutLock<'static>> {
    csv::Writer::from_writer(io::stdout().lock())
}

pub fn verify_reports(reports: &[VerifyReport], format: Format) -> anyhow::Result<()> {
    match format {
        Format::Json => finish_json(&reports),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record([
                "identity",
                "status",
                "order",
                "exponent",
                "lhs_re",
                "lhs_im",
                "rhs_re",
                "rhs_im",
                "elapsed_ms",
                "error",
            ])?;
            for r in reports {
                let status = serde_json::to_value(r.status)?.as_str().unwrap_or_default().to_string();
                let (exp, lhs, rhs) = match &r.first_mismatch {
                    Some(m) => (rat_to_string(&m.exp), parts(&m.lhs), parts(&m.rhs)),
                    None => (String::new(), Default::default(), Default::default()),
                };
                let [lr, li] = lhs;
                let [rr, ri] = rhs;
                let order = rat_to_string(&r.order);
                let ms = r.elapsed_ms.to_string();
                let err = r.error.clone().unwrap_or_default();
                w.write_record([&r.identity, &status, &order, &exp, &lr, &li, &rr, &ri, &ms, &err])?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Text => {
            let mut out = io::stdout().lock();
            let width = reports.iter().map(|r| r.identity.len()).max().unwrap_or(0);
            for r in reports {
                let order = rat_to_string(&r.order);
                match (&r.first_mismatch, &r.error) {
                    (_, Some(e)) => writeln!(out, "{:width$}  error     {e}", r.identity)?,
                    (Some(m), _) => writeln!(
                        out,
                        "{:width$}  mismatch  first difference at q^{}: sum {}, product {} (order {order})",
                        r.identity,
                        rat_to_string(&m.exp),
                        m.lhs,
                        m.rhs
                    )?,
                    (None, None) => {
                        let status = serde_json::to_value(r.status)?;
                        writeln!(
                            out,
                            "{:width$}  {:8}  through q^{order} in {} ms",
                            r.identity,
                            status.as_str().unwrap_or_default(),
                            r.elapsed_ms
                        )?;
                        for (label, v) in [("fractional", &r.fractional_residue), ("imaginary", &r.imaginary_residue)] {
                            if !v.is_empty() {
                                let exps: Vec<String> = v.iter().map(rat_to_string).collect();
                                writeln!(out, "{:width$}  {label} residue at {}", "", exps.join(", "))?;
                            }
                        }
                    }
                }
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct TableJson<'a> {
    identity: &'a str,
    order: String,
    sum: &'a QSeries,
    product: &'a QSeries,
}

/// Every exponent `k/den` through `order`, zeros included.
fn grid(order: Rat, den: i64) -> impl Iterator<Item = Rat> {
    (0..=scaled_order(order, den)).map(move |k| Rat::new(k, den))
}

pub fn table(name: &str, order: Rat, sum: &QSeries, product: &QSeries, format: Format) -> anyhow::Result<()> {
    let den = sum.den().lcm(&product.den());
    match format {
        Format::Json => finish_json(&TableJson { identity: name, order: rat_to_string(&order), sum, product }),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["exponent", "lhs_re", "lhs_im", "rhs_re", "rhs_im"])?;
            for e in grid(order, den) {
                let ([lr, li], [rr, ri]) = (parts(&sum.coeff_at(e)), parts(&product.coeff_at(e)));
                w.write_record([rat_to_string(&e), lr, li, rr, ri])?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Text => {
            let rows: Vec<[String; 3]> = grid(order, den)
                .map(|e| [rat_to_string(&e), sum.coeff_at(e).to_string(), product.coeff_at(e).to_string()])
                .collect();
            let header = ["exponent".to_string(), "sum".to_string(), "product".to_string()];
            let widths: Vec<usize> =
                (0..3).map(|i| rows.iter().chain([&header]).map(|r| r[i].len()).max().unwrap_or(0)).collect();
            let mut out = io::stdout().lock();
            writeln!(out, "# {name}")?;
            for r in std::iter::once(&header).chain(&rows) {
                writeln!(
                    out,
                    "{:>w0$}  {:>w1$}  {:>w2$}",
                    r[0],
                    r[1],
                    r[2],
                    w0 = widths[0],
                    w1 = widths[1],
                    w2 = widths[2]
                )?;
            }
            Ok(())
        }
    }
}

pub fn replay_reports(reports: &[StepReport], format: Format) -> anyhow::Result<()> {
    match format {
        Format::Json => finish_json(&reports),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["theorem", "step", "status", "order", "exponent", "description"])?;
            for r in reports {
                let status = if r.passed() { "pass" } else { "fail" };
                let exp = r.first_divergence.as_ref().map(|d| rat_to_string(&d.mismatch.exp)).unwrap_or_default();
                w.write_record([
                    r.theorem.name(),
                    &r.step.to_string(),
                    status,
                    &rat_to_string(&r.order),
                    &exp,
                    &r.description,
                ])?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Text => {
            let mut out = io::stdout().lock();
            for r in reports {
                let status = if r.passed() { "pass" } else { "FAIL" };
                writeln!(out, "{} step {} {status}  {}", r.theorem.name(), r.step, r.description)?;
                if let Some(d) = &r.first_divergence {
                    let z = d.z.map(|k| format!(" at z^{k}")).unwrap_or_default();
                    writeln!(
                        out,
                        "    first divergence at q^{}{z}: {} vs {}",
                        rat_to_string(&d.mismatch.exp),
                        d.mismatch.lhs,
                        d.mismatch.rhs
                    )?;
                }
                if let Some(detail) = &r.detail {
                    writeln!(out, "    {detail}")?;
                }
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            writeln!(out, "{passed} of {} steps pass", reports.len())?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct NahmJson {
    offset: String,
    order: String,
    /// `[exponent, re, im]` rows, zeros included.
    terms: Vec<(String, JsonInt, JsonInt)>,
}

pub fn nahm(series: &NahmSeries, order: Rat, format: Format) -> anyhow::Result<()> {
    let body = &series.body;
    let rows: Vec<(Rat, GaussianInt)> =
        grid(body.order_q(), body.den()).map(|e| (e + series.offset, body.coeff_at(e))).collect();
    match format {
        Format::Json => finish_json(&NahmJson {
            offset: rat_to_string(&series.offset),
            order: rat_to_string(&order),
            terms: rows
                .iter()
                .map(|(e, c)| {
                    let (re, im) = gaussian_pair(c);
                    (rat_to_string(e), re, im)
                })
                .collect(),
        }),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["exponent", "re", "im"])?;
            for (e, c) in &rows {
                let [re, im] = parts(c);
                w.write_record([rat_to_string(e), re, im])?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Text => {
            let mut out = io::stdout().lock();
            let width = rows.iter().map(|(e, _)| rat_to_string(e).len()).max().unwrap_or(0).max(8);
            writeln!(out, "{:>width$}  coefficient", "exponent")?;
            for (e, c) in &rows {
                writeln!(out, "{:>width$}  {c}", rat_to_string(e))?;
            }
            Ok(())
        }
    }
}
