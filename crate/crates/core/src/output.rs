//! Number formatting shared by every CSV and JSON writer.
//!
//! Reals are written with 12 significant digits in fixed (non-exponent)
//! notation so that output files diff cleanly between runs.

use serde::Serializer;

/// Significant digits for every emitted real.
pub const SIGNIFICANT_DIGITS: i32 = 12;

/// Fixed-notation rendering with [`SIGNIFICANT_DIGITS`] significant digits.
pub fn format_real(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return format!("{:.*}", (SIGNIFICANT_DIGITS - 1) as usize, 0.0);
    }
    let magnitude = v.abs().log10().floor() as i32 + 1;
    let decimals = (SIGNIFICANT_DIGITS - magnitude).clamp(0, 40) as usize;
    format!("{v:.decimals$}")
}

/// `v` rounded to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_real(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{:.*e}", (SIGNIFICANT_DIGITS - 1) as usize, v)
        .parse()
        .unwrap_or(v)
}

/// serde adapter: serialize an `f64` rounded by [`round_real`].
pub fn rounded<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_real(*v))
}

/// serde adapter for optional reals.
pub fn rounded_opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&round_real(*x)),
        None => s.serialize_none(),
    }
}

/// serde adapter for slices of reals.
pub fn rounded_vec<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|&x| round_real(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_real(5f64.ln()), "1.60943791243");
        assert_eq!(format_real(0.0), "0.00000000000");
        assert_eq!(format_real(123456.0), "123456.000000");
        assert_eq!(format_real(-0.00123456789012345), "-0.00123456789012");
        assert_eq!(format_real(1e15), "1000000000000000");
    }

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_real(0.22696880651234567), 0.226968806512);
        assert_eq!(round_real(2.0), 2.0);
        assert_eq!(round_real(0.0), 0.0);
    }
}
