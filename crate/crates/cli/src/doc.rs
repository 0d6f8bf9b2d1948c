//! Deterministic result documents and plain tables.
//!
//! Every real lands in the JSON document rounded to nine significant
//! digits and keys are emitted sorted, so rerunning a scenario with the
//! same configuration and seed reproduces the output byte for byte.

use num_complex::Complex64;
use serde_json::{Map, Number, Value};

use qbond::qmath::StateVector;

/// Rounds to nine significant decimal digits; negative zero collapses.
pub fn sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let exp = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(8 - exp);
    let rounded = (x * scale).round() / scale;
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

/// JSON number with the document rounding applied.
pub fn num(x: f64) -> Value {
    Value::Number(Number::from_f64(sig9(x)).expect("finite number in result document"))
}

/// JSON `[re, im]` pair with the document rounding applied.
pub fn complex(z: Complex64) -> Value {
    Value::Array(vec![num(z.re), num(z.im)])
}

/// Sparse amplitude map keyed by basis digits; exact zeros are omitted.
pub fn state_map(state: &StateVector) -> Value {
    let mut map = Map::new();
    for (i, amp) in state.amplitudes().iter().enumerate() {
        if amp.norm_sqr() == 0.0 {
            continue;
        }
        let key: String = state
            .layout()
            .digits_of(i)
            .iter()
            .map(|d| d.to_string())
            .collect();
        map.insert(key, complex(*amp));
    }
    Value::Object(map)
}

/// Document-rounded real for tables; small magnitudes take exponent form.
pub fn fmt_f(x: f64) -> String {
    let r = sig9(x);
    if r != 0.0 && r.abs() < 1e-4 {
        format!("{r:.3e}")
    } else {
        format!("{r}")
    }
}

/// Complex number for tables; the imaginary part appears only when set.
pub fn fmt_c(z: Complex64) -> String {
    let re = sig9(z.re);
    let im = sig9(z.im);
    if im == 0.0 {
        format!("{re}")
    } else if im < 0.0 {
        format!("{re} - {}i", -im)
    } else {
        format!("{re} + {im}i")
    }
}

/// Two-column table with aligned keys, ending in a newline.
pub fn table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_nine_digits() {
        assert_eq!(sig9(0.283770918234567), 0.283770918);
        assert_eq!(sig9(-1.0 / 3.0), -0.333333333);
        assert_eq!(sig9(123456789.123), 123456789.0);
        assert_eq!(sig9(1.23456789123e-7), 1.23456789e-7);
        assert_eq!(sig9(0.0), 0.0);
        assert!(sig9(-1e-30).is_sign_negative());
    }

    #[test]
    fn negative_zero_never_escapes() {
        assert_eq!(format!("{}", sig9(-0.0)), "0");
        assert_eq!(fmt_c(Complex64::new(-0.0, 0.0)), "0");
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(fmt_c(Complex64::new(0.5, 0.0)), "0.5");
        assert_eq!(fmt_c(Complex64::new(0.5, -0.25)), "0.5 - 0.25i");
        assert_eq!(fmt_c(Complex64::new(0.0, 1.0)), "0 + 1i");
    }
}
