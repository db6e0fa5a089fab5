use cesaro::remainder_ops::{DirectionSpec, SummandKind};
use cesaro::Complex64;

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`. Exponents like `1e-3` are fine.
pub fn parse_complex(src: &str) -> Result<Complex64, String> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex number".into());
    }
    let bad = || format!("cannot parse {src:?} as a complex number (expected a+bi)");
    let Some(body) = s.strip_suffix('i') else {
        return real(&s).map(|re| Complex64::new(re, 0.0)).ok_or_else(bad);
    };
    // split at the last sign that is not the leading one and not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => real(t).ok_or_else(bad)?,
    };
    let re = if re_part.is_empty() { 0.0 } else { real(re_part).ok_or_else(bad)? };
    Ok(Complex64::new(re, im))
}

fn real(s: &str) -> Option<f64> {
    let v: f64 = s.parse().ok()?;
    v.is_finite().then_some(v)
}

/// `log`, `power:<s>` for z^(−s), `mono:<n>` for zⁿ, `const:<c>`.
pub fn parse_kind(src: &str) -> Result<SummandKind, String> {
    let (head, tail) = match src.split_once(':') {
        Some((h, t)) => (h, Some(t)),
        None => (src, None),
    };
    match (head, tail) {
        ("log", None) => Ok(SummandKind::Log),
        ("power", Some(s)) => Ok(SummandKind::Power(parse_complex(s)?)),
        ("const", Some(c)) => Ok(SummandKind::Const(parse_complex(c)?)),
        ("mono", Some(n)) => n
            .parse::<u32>()
            .map(SummandKind::monomial)
            .map_err(|_| format!("mono needs a non-negative integer, got {n:?}")),
        _ => Err(format!("unknown summand kind {src:?} (log, power:<s>, mono:<n>, const:<c>)")),
    }
}

pub fn parse_direction(src: &str) -> Result<DirectionSpec, String> {
    match src {
        "plus" => Ok(DirectionSpec::Plus),
        "plus-zero" => Ok(DirectionSpec::PlusZero),
        "minus" => Ok(DirectionSpec::Minus),
        "minus-zero" => Ok(DirectionSpec::MinusZero),
        "bi" | "bidirectional" => Ok(DirectionSpec::Bidirectional),
        _ => Err(format!("unknown direction {src:?} (plus, plus-zero, minus, minus-zero, bi)")),
    }
}
