//! Remainder sums R₊, R₊,₀, R₋, R₋,₀, R₊,₀,₋ and the finite sums and
//! products they extend.
//!
//! A one-sided sum Σ_{j≥1} f(b + h·j) is evaluated on its Euler–Maclaurin
//! lattice: after the eigenfunction part F(z)/h is stripped in the geometric
//! variable, the α-dependent rest has vanishing Cesàro mean, so the limit is
//! the ordinary limit of S(k) − G(b + h·k) over lattice points k. The
//! `Averaged` strategy instead builds the p-sum trace, strips it and runs the
//! numeric limit driver.

use crate::asymptotics::{em_expansion, EmExpansion, MAX_EM_ORDER};
use crate::cesaro_core::{
    clim, strip_geometric, CesaroOutcome, Direction, LimitProbe, PSumTrace, Ray, DEFAULT_MAX_POWER,
};
use crate::error::{CesaroError, Result};
use crate::numeric::{cln, cpow, from_above, CompensatedSum};
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Supported summands f(z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SummandKind {
    /// z^(−s)
    Power(Complex64),
    /// ln z
    Log,
    /// the constant c
    Const(Complex64),
}

impl SummandKind {
    /// f(w) on the principal branch; `None` at a singularity.
    pub fn eval(&self, w: Complex64) -> Option<Complex64> {
        match *self {
            SummandKind::Power(s) => cpow(w, -s),
            SummandKind::Log => {
                if w == ZERO {
                    None
                } else {
                    Some(cln(w))
                }
            }
            SummandKind::Const(c) => Some(c),
        }
    }

    /// zⁿ as a summand.
    pub fn monomial(n: u32) -> Self {
        SummandKind::Power(Complex64::new(-(n as f64), 0.0))
    }
}

/// Which lattice points are summed, relative to z₀.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionSpec {
    /// n ≥ 1, z₀ + n
    Plus,
    /// n ≥ 0, z₀ + n
    PlusZero,
    /// n ≥ 1, z₀ − n
    Minus,
    /// n ≥ 0, z₀ − n
    MinusZero,
    /// PlusZero + Minus
    Bidirectional,
}

/// How the limit of a one-sided sum is extracted.
#[derive(Debug, Clone, PartialEq)]
pub enum ClimStrategy {
    /// Euler–Maclaurin lattice constant.
    Lattice,
    /// Numeric averaging of the stripped p-sum trace.
    Averaged(LimitProbe),
}

/// Options for remainder sums.
#[derive(Debug, Clone, PartialEq)]
pub struct SumOptions {
    pub strategy: ClimStrategy,
    /// Fixed Euler–Maclaurin order; chosen automatically when `None`.
    pub em_order: Option<usize>,
}

impl Default for SumOptions {
    fn default() -> Self {
        Self { strategy: ClimStrategy::Lattice, em_order: None }
    }
}

const LATTICE_SIZES: [usize; 6] = [8, 16, 32, 64, 128, 256];

/// Lattice size and order minimizing truncation plus rounding error.
fn choose_lattice(em_template: &EmExpansion, f: &SummandKind, fixed_order: Option<usize>) -> (usize, usize) {
    let base = em_template.base();
    let h = em_template.step();
    let proj = (base * h.conj()).re / h.norm_sqr();
    let shift = if proj < 0.0 { (-proj).ceil() as usize } else { 0 };
    let mut best = (f64::INFINITY, LATTICE_SIZES[3] + shift, fixed_order.unwrap_or(3));
    for &k in &LATTICE_SIZES {
        let k = k + shift;
        let w = em_template.lattice_point(k);
        let mag_end = f.eval(w).map_or(f64::INFINITY, |v| v.norm());
        let mag_start = f.eval(em_template.lattice_point(1)).map_or(0.0, |v| v.norm());
        let lead = em_template.leading(w).norm();
        let rounding = 2e-16 * (k as f64 * mag_end.max(mag_start) + lead);
        let orders: Vec<usize> = match fixed_order {
            Some(n) => vec![n],
            None => (0..=MAX_EM_ORDER).collect(),
        };
        for n in orders {
            let trunc = em_with_order(em_template, n).truncation_estimate(w);
            let est = trunc + rounding;
            if est < best.0 * 0.5 || (est <= best.0 && k < best.1) {
                best = (est, k, n);
            }
        }
    }
    (best.1, best.2)
}

fn em_with_order(em: &EmExpansion, order: usize) -> EmExpansion {
    em_expansion(em.summand(), em.base(), em.step(), order).expect("validated summand")
}

fn partial_sums(f: &SummandKind, base: Complex64, h: Complex64, k: usize) -> Result<Vec<Complex64>> {
    let mut acc = CompensatedSum::new();
    let mut out = Vec::with_capacity(k);
    for j in 1..=k {
        let w = from_above(base + h * j as f64);
        let v = f
            .eval(w)
            .ok_or_else(|| CesaroError::Pole(format!("summand is singular at z = {w}")))?;
        acc.add(v);
        out.push(acc.value());
    }
    Ok(out)
}

/// Generalized Cesàro value of Σ_{j≥1} f(b + h·j).
pub fn one_sided_sum(f: SummandKind, base: Complex64, step: Complex64, opts: &SumOptions) -> Result<CesaroOutcome> {
    let base = from_above(base);
    let template = em_expansion(f, base, step, opts.em_order.unwrap_or(0))?;
    match &opts.strategy {
        ClimStrategy::Lattice => lattice_sum(&f, &template, opts.em_order),
        ClimStrategy::Averaged(probe) => averaged_sum(&f, &template, probe),
    }
}

fn lattice_sum(f: &SummandKind, template: &EmExpansion, fixed_order: Option<usize>) -> Result<CesaroOutcome> {
    let (k, order) = choose_lattice(template, f, fixed_order);
    let em = em_with_order(template, order);
    let sums = partial_sums(f, em.base(), em.step(), 2 * k)?;
    let c_k = em.constant_from_partial_sum(sums[k - 1], em.lattice_point(k));
    let c_2k = em.constant_from_partial_sum(sums[2 * k - 1], em.lattice_point(2 * k));
    if !c_k.re.is_finite() || !c_k.im.is_finite() {
        return Err(CesaroError::Pole("lattice constant is not finite".into()));
    }
    Ok(CesaroOutcome {
        limit: c_k,
        averaging_power: em.structural_averaging_power(),
        stripped: em.smooth_part.clone(),
        tail_estimate: (c_2k - c_k).norm(),
    })
}

fn direction_of(step: Complex64) -> Result<Direction> {
    let d = if step.im == 0.0 && step.re > 0.0 {
        Direction::PosReal
    } else if step.im == 0.0 && step.re < 0.0 {
        Direction::NegReal
    } else if step.re == 0.0 && step.im > 0.0 {
        Direction::PosImag
    } else if step.re == 0.0 && step.im < 0.0 {
        Direction::NegImag
    } else {
        return Err(CesaroError::Domain("rays run parallel to the real or imaginary axis".into()));
    };
    Ok(d)
}

fn averaged_sum(f: &SummandKind, template: &EmExpansion, probe: &LimitProbe) -> Result<CesaroOutcome> {
    let h = template.step();
    let spacing = h.norm();
    let ray = Ray::new(template.base(), direction_of(h)?);
    let probe = LimitProbe { t0: probe.t0 * spacing, window_width: spacing, ..probe.clone() };
    let count = (probe.last_point() / spacing).ceil() as usize + 2;
    let trace = PSumTrace::from_summand(ray, spacing, count, |z| f.eval(z))?;
    let residual = strip_geometric(&trace, &template.smooth_part)?;
    clim(&residual, DEFAULT_MAX_POWER, &probe)
}

fn zero_term(f: &SummandKind, z0: Complex64) -> Result<Complex64> {
    f.eval(from_above(z0))
        .ok_or_else(|| CesaroError::Pole(format!("summand is singular at z0 = {z0}")))
}

fn conj_summand(f: SummandKind) -> SummandKind {
    match f {
        SummandKind::Power(s) => SummandKind::Power(s.conj()),
        SummandKind::Const(c) => SummandKind::Const(c.conj()),
        SummandKind::Log => SummandKind::Log,
    }
}

fn conj_outcome(o: CesaroOutcome) -> CesaroOutcome {
    use crate::cesaro_core::{AsymptoticExpansion, AsymptoticTerm};
    let stripped = AsymptoticExpansion::new(
        o.stripped
            .terms()
            .iter()
            .map(|t| AsymptoticTerm::new(t.coeff.conj(), t.power.conj(), t.log_power)),
        true,
    );
    CesaroOutcome { limit: o.limit.conj(), stripped, ..o }
}

fn minus_sum(f: SummandKind, z0: Complex64, opts: &SumOptions) -> Result<CesaroOutcome> {
    if z0.im < 0.0 {
        // Off the cut the principal branch commutes with conjugation.
        let o = one_sided_sum(conj_summand(f), z0.conj(), -ONE, opts)?;
        return Ok(conj_outcome(o));
    }
    one_sided_sum(f, z0, -ONE, opts)
}

fn with_offset(o: CesaroOutcome, v: Complex64) -> CesaroOutcome {
    CesaroOutcome { limit: o.limit + v, ..o }
}

/// Remainder sum with default options.
pub fn remainder_sum(f: SummandKind, z0: Complex64, dir: DirectionSpec) -> Result<CesaroOutcome> {
    remainder_sum_with(f, z0, dir, &SumOptions::default())
}

pub fn remainder_sum_with(f: SummandKind, z0: Complex64, dir: DirectionSpec, opts: &SumOptions) -> Result<CesaroOutcome> {
    let z0 = from_above(z0);
    match dir {
        DirectionSpec::Plus => one_sided_sum(f, z0, ONE, opts),
        DirectionSpec::PlusZero => {
            let v = zero_term(&f, z0)?;
            Ok(with_offset(one_sided_sum(f, z0, ONE, opts)?, v))
        }
        DirectionSpec::Minus => minus_sum(f, z0, opts),
        DirectionSpec::MinusZero => {
            let v = zero_term(&f, z0)?;
            Ok(with_offset(minus_sum(f, z0, opts)?, v))
        }
        DirectionSpec::Bidirectional => {
            let plus = remainder_sum_with(f, z0, DirectionSpec::PlusZero, opts)?;
            let minus = minus_sum(f, z0, opts)?;
            Ok(plus.plus(&minus))
        }
    }
}

/// Σ_{j=1}^{upper} f(j) := R₊[f](0) − R₊[f](upper).
pub fn finite_sum(f: SummandKind, upper: Complex64) -> Result<Complex64> {
    let a = remainder_sum(f, ZERO, DirectionSpec::Plus)?;
    let b = remainder_sum(f, upper, DirectionSpec::Plus)?;
    Ok(a.limit - b.limit)
}

/// ln∘f as a supported summand.
pub fn log_of(f: SummandKind) -> Result<SummandKind> {
    match f {
        SummandKind::Power(s) if s == Complex64::new(-1.0, 0.0) => Ok(SummandKind::Log),
        SummandKind::Power(s) if s == ZERO => Ok(SummandKind::Const(ZERO)),
        SummandKind::Const(c) if c != ZERO => Ok(SummandKind::Const(c.ln())),
        other => Err(CesaroError::Unsupported(format!(
            "ln∘f is not a supported summand for f = {other:?}"
        ))),
    }
}

/// exp of the remainder sum of ln∘f.
pub fn remainder_product(f: SummandKind, z0: Complex64, dir: DirectionSpec) -> Result<Complex64> {
    let g = log_of(f)?;
    Ok(remainder_sum(g, z0, dir)?.limit.exp())
}

/// exp of the finite sum of ln∘f.
pub fn finite_product(f: SummandKind, upper: Complex64) -> Result<Complex64> {
    let g = log_of(f)?;
    Ok(finite_sum(g, upper)?.exp())
}

/// The identity summand f(z) = z.
pub const IDENTITY: SummandKind = SummandKind::Power(Complex64::new(-1.0, 0.0));

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_and_linear_closed_forms() {
        for z0 in [c(0.3, 0.4), c(-2.5, 0.0), c(1.7, -2.2)] {
            let r = remainder_sum(SummandKind::Const(ONE), z0, DirectionSpec::Plus).unwrap();
            assert!((r.limit - (-z0 - 0.5)).norm() < 1e-13, "{z0} {}", r.limit);
            assert_eq!(r.averaging_power, 1);
            let r = remainder_sum(IDENTITY, z0, DirectionSpec::Plus).unwrap();
            let expect = -0.5 * z0 * z0 - 0.5 * z0 - 1.0 / 12.0;
            assert!((r.limit - expect).norm() < 1e-12, "{z0} {}", r.limit);
            assert_eq!(r.averaging_power, 2);
        }
    }

    #[test]
    fn finite_sums_and_products() {
        assert!((finite_sum(IDENTITY, c(4.0, 0.0)).unwrap() - c(10.0, 0.0)).norm() < 1e-11);
        assert!((finite_sum(SummandKind::monomial(2), c(3.0, 0.0)).unwrap() - c(14.0, 0.0)).norm() < 1e-11);
        let z0 = c(0.3, 1.2);
        assert!((finite_sum(SummandKind::Const(ONE), z0).unwrap() - z0).norm() < 1e-13);
        assert!((finite_product(IDENTITY, c(4.0, 0.0)).unwrap() - c(24.0, 0.0)).norm() < 1e-11);
        let g32 = std::f64::consts::PI.sqrt() / 2.0;
        assert!((finite_product(IDENTITY, c(0.5, 0.0)).unwrap() - c(g32, 0.0)).norm() < 1e-13);
        let e = c(1.0, 0.0).exp();
        assert!((finite_product(SummandKind::Const(e), z0).unwrap() - z0.exp()).norm() < 1e-12);
        let rp = remainder_product(SummandKind::Const(e), z0, DirectionSpec::Plus).unwrap();
        assert!((rp - (-z0 - 0.5).exp()).norm() < 1e-13);
        let rp = remainder_product(IDENTITY, ZERO, DirectionSpec::Plus).unwrap();
        assert!((rp.re - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-13);
        assert!((remainder_product(SummandKind::Const(ONE), z0, DirectionSpec::Plus).unwrap() - ONE).norm() < 1e-15);
        assert!(matches!(
            remainder_product(SummandKind::Power(c(0.5, 0.0)), z0, DirectionSpec::Plus),
            Err(CesaroError::Unsupported(_))
        ));
    }

    #[test]
    fn poles_are_rejected() {
        assert!(matches!(
            remainder_sum(SummandKind::Log, c(-3.0, 0.0), DirectionSpec::Plus),
            Err(CesaroError::Pole(_))
        ));
        assert!(matches!(
            remainder_sum(SummandKind::Log, c(2.0, 0.0), DirectionSpec::Minus),
            Err(CesaroError::Pole(_))
        ));
        assert!(matches!(
            remainder_sum(SummandKind::Power(c(2.0, 0.0)), c(0.0, 0.0), DirectionSpec::PlusZero),
            Err(CesaroError::Pole(_))
        ));
    }

    #[test]
    fn averaged_strategy_agrees_with_lattice() {
        let probe = LimitProbe::default();
        let opts = SumOptions { strategy: ClimStrategy::Averaged(probe), em_order: None };
        let z0 = c(0.3, 0.4);
        for (f, tol) in [
            (SummandKind::Const(ONE), 1e-10),
            (IDENTITY, 1e-8),
            (SummandKind::Log, 1e-8),
        ] {
            let lat = remainder_sum(f, z0, DirectionSpec::Plus).unwrap();
            let avg = remainder_sum_with(f, z0, DirectionSpec::Plus, &opts).unwrap();
            assert!((lat.limit - avg.limit).norm() < tol, "{f:?}: {} vs {}", lat.limit, avg.limit);
            assert_eq!(lat.averaging_power, avg.averaging_power, "{f:?}");
        }
    }
}
