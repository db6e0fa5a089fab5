use cesaro::Complex64;

/// Rounds to `digits` significant digits, then prints the shortest form that
/// reads back to the rounded value.
pub fn fmt_real(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x);
    // avoid "-0"
    if rounded == 0.0 {
        return "0".into();
    }
    let a = rounded.abs();
    if (1e-5..1e16).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Drops an imaginary part below the displayed precision.
pub fn fmt_complex(z: Complex64, digits: usize) -> String {
    let scale = z.re.abs().max(1.0);
    if z.im.abs() < scale * 10f64.powi(-(digits as i32)) {
        return fmt_real(z.re, digits);
    }
    let im = fmt_real(z.im.abs(), digits);
    let sign = if z.im < 0.0 { '-' } else { '+' };
    if z.re == 0.0 {
        let lead = if z.im < 0.0 { "-" } else { "" };
        return format!("{lead}{im}i");
    }
    format!("{}{sign}{im}i", fmt_real(z.re, digits))
}

/// 17 significant digits, exponent form.
pub fn fmt_full(x: f64) -> String {
    format!("{x:.16e}")
}
