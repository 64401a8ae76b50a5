//! Deterministic serialization for experiment outputs.
//!
//! Every numeric quantity is rendered as a decimal string with 12
//! significant digits, JSON objects keep their keys sorted (the default
//! `serde_json` map is ordered), and all line endings are LF.  Identical
//! inputs therefore produce byte-identical files on every platform, which
//! the CLI tests rely on.

use nalgebra::DMatrix;
use serde_json::{json, Value};

use crate::gaussify::ConvergenceReport;
use crate::measures::ExtremalityReport;

/// Render a float with 12 significant digits.
///
/// Plain decimal notation within a sane exponent window, scientific
/// outside it; trailing zeros after the point are trimmed, so the result
/// carries *up to* 12 significant digits and round-trips through `f64`
/// parsing at full precision of the original 12 digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponential format");
    let exp: i32 = exp.parse().expect("float exponent");
    if !(-5..=14).contains(&exp) {
        let mut m = mantissa.to_owned();
        if m.contains('.') {
            while m.ends_with('0') {
                m.pop();
            }
            if m.ends_with('.') {
                m.pop();
            }
        }
        return format!("{m}e{exp}");
    }
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let point = exp + 1;
    let mut out = String::with_capacity(20);
    if neg {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        for _ in 0..(-point) {
            out.push('0');
        }
        out.push_str(&digits);
    } else if point as usize >= digits.len() {
        out.push_str(&digits);
        for _ in 0..(point as usize - digits.len()) {
            out.push('0');
        }
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

/// A real matrix as nested arrays of 12-digit decimal strings, row-major.
pub fn matrix_value(m: &DMatrix<f64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    (0..m.ncols())
                        .map(|j| Value::String(sig12(m[(i, j)])))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Pretty-print a JSON value with a trailing newline.
pub fn render_json(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON reports contain no non-string keys");
    text.push('\n');
    text
}

/// Assemble a CSV document from a header and stringified rows.
pub fn render_csv(header: &str, rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn quantity_value(q: &crate::measures::QuantitySet) -> Value {
    json!({
        "entropy": sig12(q.entropy),
        "reduced_entropy": sig12(q.reduced_entropy),
        "conditional_entropy": sig12(q.conditional_entropy),
        "log_negativity": sig12(q.log_negativity),
        "distillable": q.distillable,
    })
}

/// JSON form of an extremality report: quantities as decimal strings,
/// verdict booleans as JSON booleans.
pub fn extremality_json(report: &ExtremalityReport) -> Value {
    json!({
        "state_label": report.state_label,
        "cm": matrix_value(report.cm.matrix()),
        "fock": quantity_value(&report.fock),
        "gaussian": quantity_value(&report.gaussian),
        "verdicts": {
            "max_entropy_holds": report.verdicts.max_entropy_holds,
            "conditional_extremality_holds": report.verdicts.conditional_extremality_holds,
            "negativity_margin": sig12(report.verdicts.negativity_margin),
            "gaussian_negativity_exceeds": report.verdicts.gaussian_negativity_exceeds,
            "distillable_by_cm": report.verdicts.distillable_by_cm,
        },
    })
}

/// Flat CSV form of an extremality report: one row per side.
pub fn extremality_csv(report: &ExtremalityReport) -> String {
    let row = |side: &str, q: &crate::measures::QuantitySet| {
        vec![
            report.state_label.clone(),
            side.to_owned(),
            sig12(q.entropy),
            sig12(q.reduced_entropy),
            sig12(q.conditional_entropy),
            sig12(q.log_negativity),
            q.distillable.to_string(),
        ]
    };
    render_csv(
        "state_label,side,entropy,reduced_entropy,conditional_entropy,log_negativity,distillable",
        &[row("fock", &report.fock), row("gaussian", &report.gaussian)],
    )
}

/// CSV form of a convergence report: columns (n, row_class, sup_error).
pub fn convergence_csv(report: &ConvergenceReport) -> String {
    let mut rows = Vec::new();
    for fit in &report.fits {
        for (&n, &err) in report.n_values.iter().zip(&fit.sup_errors) {
            rows.push(vec![
                n.to_string(),
                fit.row_class.as_str().to_owned(),
                sig12(err),
            ]);
        }
    }
    render_csv("n,row_class,sup_error", &rows)
}

/// JSON sidecar for a convergence report: grid metadata plus the slope fits.
pub fn convergence_json(report: &ConvergenceReport, grid_meta: Value) -> Value {
    let fits: Vec<Value> = report
        .fits
        .iter()
        .map(|fit| {
            json!({
                "row_class": fit.row_class.as_str(),
                "sup_errors": fit.sup_errors.iter().map(|&e| sig12(e)).collect::<Vec<_>>(),
                "slope_all": sig12(fit.slope_all),
                "slope_tail": sig12(fit.slope_tail),
                "strictly_decreasing": fit.strictly_decreasing,
            })
        })
        .collect();
    json!({
        "n_values": report.n_values,
        "grid": grid_meta,
        "fits": fits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_formats_representative_values() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(-0.0), "0");
        assert_eq!(sig12(2.0), "2");
        assert_eq!(sig12(-1.0), "-1");
        assert_eq!(sig12(0.5696105840364359), "0.569610584036");
        assert_eq!(sig12(0.6418804160340621), "0.641880416034");
        assert_eq!(sig12(1.125), "1.125");
        assert_eq!(sig12(-0.4841229182759271), "-0.484122918276");
        assert_eq!(sig12(1e-7), "1e-7");
        assert_eq!(sig12(1.23456789012345e20), "1.23456789012e20");
        assert_eq!(sig12(3e-9), "3e-9");
        assert_eq!(sig12(0.000026), "0.000026");
        assert_eq!(sig12(123456789.0), "123456789");
    }

    #[test]
    fn sig12_round_trips_through_parsing() {
        for &x in &[
            0.13116152770780282,
            -0.0722698319976262,
            1.7839369077088,
            2.6e-5,
            -3.0,
        ] {
            let parsed: f64 = sig12(x).parse().unwrap();
            assert!((parsed - x).abs() <= 1e-11 * x.abs().max(1.0));
        }
    }

    #[test]
    fn json_rendering_is_sorted_and_lf_terminated() {
        let value = json!({"zeta": "1", "alpha": "2", "mid": {"b": 1, "a": 2}});
        let text = render_json(&value);
        let alpha = text.find("alpha").unwrap();
        let zeta = text.find("zeta").unwrap();
        assert!(alpha < zeta, "keys must serialize sorted");
        assert!(text.ends_with('\n') && !text.contains('\r'));
    }
}
