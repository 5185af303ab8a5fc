use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::experiments::{AccuracyCurve, EntropyEstimate};

/// Formats like C's `%.17g`.
pub fn format_g17(x: f64) -> String {
    format_g(x, 17)
}

/// Formats like C's `%.<precision>g`.
pub fn format_g(x: f64, precision: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.into();
    }
    let p = precision.max(1);
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", strip_zeros(mantissa), sign, exp.abs())
    } else {
        strip_zeros(&format!("{:.*}", (p as i32 - 1 - exp) as usize, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn accuracy_csv(curve: &AccuracyCurve) -> String {
    let mut out = String::from("beta,alpha,n\n");
    for r in &curve.rows {
        writeln!(out, "{},{},{}", r.beta, format_g17(r.alpha), r.n).expect("write to string");
    }
    out
}

pub fn entropy_csv(estimates: &[EntropyEstimate]) -> String {
    let mut out = String::from("T,n_samples,bits_per_step,stderr\n");
    for e in estimates {
        writeln!(out, "{},{},{},{}", e.t, e.n_samples, format_g17(e.bits_per_step), format_g17(e.stderr))
            .expect("write to string");
    }
    out
}

pub fn write_accuracy_csv(curve: &AccuracyCurve, path: &Path) -> Result<()> {
    Ok(std::fs::write(path, accuracy_csv(curve))?)
}

pub fn write_entropy_csv(estimates: &[EntropyEstimate], path: &Path) -> Result<()> {
    Ok(std::fs::write(path, entropy_csv(estimates))?)
}
