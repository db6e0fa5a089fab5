use crate::output::fmt_full;
use cesaro::cesaro_core::{apply_p_exact, Direction, PSumTrace, Ray};
use cesaro::remainder_ops::SummandKind;
use cesaro::special_functions::gamma_staircase_trace;
use cesaro::{CesaroError, Complex64};
use std::fmt::Write;

pub const HEADER: &str = "t,z_re,z_im,psum_re,psum_im,averaged_re,averaged_im";

pub enum TraceSource {
    Staircase { h: f64 },
    Summand { kind: SummandKind, z0: Complex64 },
}

/// Sample points from..=to spaced by `step`; the endpoint is always included.
pub fn sample_points(from: f64, to: f64, step: f64) -> Vec<f64> {
    let n = ((to - from) / step).floor() as usize;
    let mut pts: Vec<f64> = (0..=n).map(|i| from + i as f64 * step).collect();
    if pts.last().is_some_and(|&t| to - t > 1e-9 * step) {
        pts.push(to);
    }
    pts
}

/// The CSV body (header included, LF endings).
pub fn render(source: &TraceSource, from: f64, to: f64, step: f64) -> Result<String, CesaroError> {
    let trace = match *source {
        TraceSource::Staircase { h } => gamma_staircase_trace(h, to)?,
        TraceSource::Summand { kind, z0 } => {
            let ray = Ray::new(z0, Direction::PosReal);
            PSumTrace::from_summand(ray, 1.0, to.floor() as usize, |z| kind.eval(z))?
        }
    };
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for t in sample_points(from, to, step) {
        let z = trace.ray().point(t);
        let psum = trace.value_at(t);
        // the average over an empty interval is the value at 0⁺
        let avg = if t > 0.0 { apply_p_exact(&trace, t)? } else { psum };
        let cols = [t, z.re, z.im, psum.re, psum.im, avg.re, avg.im];
        let line: Vec<String> = cols.iter().map(|&x| fmt_full(x)).collect();
        let _ = writeln!(out, "{}", line.join(","));
    }
    Ok(out)
}
