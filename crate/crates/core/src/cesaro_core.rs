//! Rays, the averaging operator P, geometric eigenfunction stripping and
//! generalized Cesàro limits.
//!
//! A divergent partial-sum function f(t) along a ray has a generalized
//! Cesàro limit L when, after subtracting finitely many eigenfunctions
//! a·z^ρ(ln z)^m of P (evaluated at the geometric point z = γ(t)), some power
//! Pⁿ of the residual converges to L in the ordinary sense.

use crate::error::{CesaroError, NotSummable, Result};
use crate::extrapolation::{default_models, fit_limit, stable_limit, DecayModel};
use crate::numeric::{cln, cpow, from_above, CompensatedSum};
use crate::quadrature::{gl16, tanh_sinh_with_distance};
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Direction of a ray in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    PosReal,
    NegReal,
    PosImag,
    NegImag,
}

impl Direction {
    pub fn unit(self) -> Complex64 {
        match self {
            Direction::PosReal => Complex64::new(1.0, 0.0),
            Direction::NegReal => Complex64::new(-1.0, 0.0),
            Direction::PosImag => Complex64::new(0.0, 1.0),
            Direction::NegImag => Complex64::new(0.0, -1.0),
        }
    }
}

/// The contour t ↦ base + t·unit(direction), t ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub base: Complex64,
    pub direction: Direction,
}

impl Ray {
    pub fn new(base: Complex64, direction: Direction) -> Self {
        Self { base: from_above(base), direction }
    }

    pub fn point(&self, t: f64) -> Complex64 {
        let b = self.base;
        match self.direction {
            Direction::PosReal => Complex64::new(b.re + t, b.im),
            Direction::NegReal => Complex64::new(b.re - t, b.im),
            Direction::PosImag => Complex64::new(b.re, b.im + t),
            Direction::NegImag => Complex64::new(b.re, b.im - t),
        }
    }

    /// Arc length at which the ray passes through the origin, if it does.
    pub fn hits_origin(&self) -> Option<f64> {
        let b = self.base;
        let t = match self.direction {
            Direction::PosReal if b.im == 0.0 => -b.re,
            Direction::NegReal if b.im == 0.0 => b.re,
            Direction::PosImag if b.re == 0.0 => -b.im,
            Direction::NegImag if b.re == 0.0 => b.im,
            _ => return None,
        };
        (t >= 0.0).then_some(t)
    }
}

/// A single term a·z^ρ·(ln z)^m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticTerm {
    pub coeff: Complex64,
    pub power: Complex64,
    pub log_power: u32,
}

impl AsymptoticTerm {
    pub fn new(coeff: Complex64, power: Complex64, log_power: u32) -> Self {
        Self { coeff, power, log_power }
    }

    pub fn is_constant(&self) -> bool {
        self.power == ZERO && self.log_power == 0
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let p = match cpow(z, self.power) {
            Some(p) => p,
            None => return Complex64::new(f64::INFINITY, 0.0),
        };
        if self.log_power == 0 {
            self.coeff * p
        } else {
            self.coeff * p * cln(z).powu(self.log_power)
        }
    }
}

/// Magnitude below which derived coefficients are discarded.
pub const DROP_THRESHOLD: f64 = 1e-14;

/// Finite sum of asymptotic terms, either in the geometric variable z = γ(t)
/// or in the arc-length parameter t.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticExpansion {
    terms: Vec<AsymptoticTerm>,
    geometric: bool,
}

impl AsymptoticExpansion {
    /// Merges terms sharing (power, log_power) and drops negligible ones.
    pub fn new(terms: impl IntoIterator<Item = AsymptoticTerm>, geometric: bool) -> Self {
        let mut merged: Vec<AsymptoticTerm> = Vec::new();
        for t in terms {
            match merged
                .iter_mut()
                .find(|m| m.power == t.power && m.log_power == t.log_power)
            {
                Some(m) => m.coeff += t.coeff,
                None => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff.norm() >= DROP_THRESHOLD);
        Self { terms: merged, geometric }
    }

    pub fn empty(geometric: bool) -> Self {
        Self { terms: Vec::new(), geometric }
    }

    pub fn terms(&self) -> &[AsymptoticTerm] {
        &self.terms
    }

    pub fn is_geometric(&self) -> bool {
        self.geometric
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms.iter().map(|t| t.eval(z)).sum()
    }

    /// Coefficient of z^power (ln z)^log_power, zero if absent.
    pub fn coeff(&self, power: Complex64, log_power: u32) -> Complex64 {
        self.terms
            .iter()
            .find(|t| (t.power - power).norm() < 1e-12 && t.log_power == log_power)
            .map_or(ZERO, |t| t.coeff)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self::new(
            self.terms.iter().map(|t| AsymptoticTerm { coeff: t.coeff * c, ..*t }),
            self.geometric,
        )
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self::new(self.terms.iter().chain(other.terms.iter()).copied(), self.geometric)
    }
}

/// Piecewise-constant partial-sum function along a ray.
#[derive(Debug, Clone, PartialEq)]
pub struct PSumTrace {
    ray: Ray,
    jumps: Vec<(f64, Complex64)>,
}

impl PSumTrace {
    /// `jumps[i] = (tᵢ, vᵢ)`: the trace equals vᵢ on [tᵢ, tᵢ₊₁) and 0 before t₀.
    pub fn new(ray: Ray, jumps: Vec<(f64, Complex64)>) -> Result<Self> {
        for (i, (t, v)) in jumps.iter().enumerate() {
            if !t.is_finite() || *t < 0.0 {
                return Err(CesaroError::Domain(format!("jump arc length {t} must be finite and ≥ 0")));
            }
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(CesaroError::Pole(format!("non-finite partial sum at t = {t}")));
            }
            if i > 0 && jumps[i - 1].0 >= *t {
                return Err(CesaroError::Domain("jump arc lengths must be strictly increasing".into()));
            }
        }
        Ok(Self { ray, jumps })
    }

    /// Trace of the partial sums of `summand(γ(n·step))`, n = 1..=count, with
    /// jumps at arc lengths n·step. The summand is checked at every point so a
    /// ray through a singularity is rejected here.
    pub fn from_summand<F>(ray: Ray, step: f64, count: usize, mut summand: F) -> Result<Self>
    where
        F: FnMut(Complex64) -> Option<Complex64>,
    {
        let mut acc = CompensatedSum::new();
        let mut jumps = Vec::with_capacity(count);
        for n in 1..=count {
            let t = n as f64 * step;
            let z = ray.point(t);
            let v = summand(z).ok_or_else(|| {
                CesaroError::Pole(format!("summand is singular at z = {z} on the ray"))
            })?;
            acc.add(v);
            jumps.push((t, acc.value()));
        }
        Self::new(ray, jumps)
    }

    pub fn ray(&self) -> &Ray {
        &self.ray
    }

    pub fn jumps(&self) -> &[(f64, Complex64)] {
        &self.jumps
    }

    pub fn value_at(&self, t: f64) -> Complex64 {
        let idx = self.jumps.partition_point(|(tj, _)| *tj <= t);
        if idx == 0 {
            ZERO
        } else {
            self.jumps[idx - 1].1
        }
    }

    fn segments_up_to(&self, t: f64) -> impl Iterator<Item = (f64, f64, Complex64)> + '_ {
        let n = self.jumps.len();
        (0..n).map_while(move |i| {
            let a = self.jumps[i].0;
            if a >= t {
                return None;
            }
            let b = if i + 1 < n { self.jumps[i + 1].0.min(t) } else { t };
            Some((a, b, self.jumps[i].1))
        })
    }
}

/// ∫_a^b (ln(t/u))^m / m! du for 0 ≤ a ≤ b ≤ t.
pub fn kernel_segment(a: f64, b: f64, t: f64, m: u32) -> f64 {
    if m == 0 {
        return b - a;
    }
    if a >= 1.0 && b - a <= 0.5 * a {
        let lt = t.ln();
        let f = |u: f64| {
            let l = lt - u.ln();
            Complex64::new(l.powi(m as i32) / factorial(m), 0.0)
        };
        return gl16().integrate(f, a, b).re;
    }
    let anti = |u: f64| -> f64 {
        if u == 0.0 {
            return 0.0;
        }
        let l = (t / u).ln();
        let mut term = 1.0;
        let mut s = 1.0;
        for j in 1..=m {
            term *= l / j as f64;
            s += term;
        }
        u * s
    };
    anti(b) - anti(a)
}

fn factorial(m: u32) -> f64 {
    (1..=m).map(|k| k as f64).product()
}

/// P[trace](t) = (1/t)∫₀ᵗ trace(u) du by exact prefix integration.
pub fn apply_p_exact(trace: &PSumTrace, t: f64) -> Result<Complex64> {
    apply_pn_exact(trace, 1, t)
}

/// Pⁿ[trace](t) through the closed-form kernel
/// Pⁿ[h](t) = (1/t)∫₀ᵗ h(u)(ln(t/u))^{n−1}/(n−1)! du.
pub fn apply_pn_exact(trace: &PSumTrace, n: u32, t: f64) -> Result<Complex64> {
    if t <= 0.0 || !t.is_finite() {
        return Err(CesaroError::Domain(format!("P is evaluated at t > 0, got {t}")));
    }
    if n == 0 {
        return Ok(trace.value_at(t));
    }
    let mut acc = CompensatedSum::new();
    for (a, b, v) in trace.segments_up_to(t) {
        acc.add(v * kernel_segment(a, b, t, n - 1));
    }
    Ok(acc.value() / t)
}

/// Eigenvalue 1/(ρ+1) of P on z^ρ.
pub fn eigenvalue_of_p(power: Complex64) -> Result<Complex64> {
    if power == Complex64::new(-1.0, 0.0) {
        return Err(CesaroError::SingularEigenvalue);
    }
    Ok(Complex64::new(1.0, 0.0) / (power + 1.0))
}

/// A function of arc length on which powers of P can be evaluated.
pub trait CesaroSampler {
    fn value(&self, t: f64) -> Complex64;

    /// Pⁿ of the sampled function at t.
    fn averaged(&self, n: u32, t: f64) -> Complex64;

    /// Eigenfunction terms removed before averaging.
    fn stripped(&self) -> AsymptoticExpansion {
        AsymptoticExpansion::empty(true)
    }
}

impl CesaroSampler for PSumTrace {
    fn value(&self, t: f64) -> Complex64 {
        self.value_at(t)
    }

    fn averaged(&self, n: u32, t: f64) -> Complex64 {
        apply_pn_exact(self, n, t).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }
}

/// Pⁿ[f](t) for piecewise-smooth f with the given breakpoints.
///
/// Pieces starting at 0 or touching a singular point use tanh–sinh; the rest
/// use 16-point Gauss–Legendre, split so that no piece is longer than one
/// unit or half its left endpoint.
pub fn kernel_average<F>(f: F, breaks: &[f64], singular: &[f64], n: u32, t: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    if n == 0 {
        return f(t);
    }
    let m = n - 1;
    let lt = t.ln();
    let fact = factorial(m);
    let kernel = |u: f64| -> f64 {
        if m == 0 {
            1.0
        } else {
            (lt - u.ln()).powi(m as i32) / fact
        }
    };
    let mut points: Vec<f64> = vec![0.0, t];
    points.extend(breaks.iter().copied().filter(|&b| b > 0.0 && b < t));
    points.extend(singular.iter().copied().filter(|&b| b > 0.0 && b < t));
    points.sort_by(f64::total_cmp);
    points.dedup();
    let is_singular = |x: f64| x == 0.0 || singular.contains(&x);
    let mut acc = CompensatedSum::new();
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        if is_singular(a) || is_singular(b) {
            let part = tanh_sinh_with_distance(
                |u, dl, _| {
                    let u = if a == 0.0 { dl } else { u };
                    f(u) * kernel(u)
                },
                a,
                b,
                1e-14,
            );
            acc.add(part);
            continue;
        }
        let mut lo = a;
        while lo < b {
            let step = 1.0f64.min(0.5 * lo).max(1e-300);
            let hi = if lo + step >= b { b } else { lo + step };
            acc.add(gl16().integrate(|u| f(u) * kernel(u), lo, hi));
            lo = hi;
        }
    }
    acc.value() / t
}

/// Which variable the stripped terms are evaluated in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripVariable {
    /// z = γ(t), the correct choice.
    Geometric,
    /// The bare arc length t; kept for negative controls.
    Parameter,
}

/// f(t) − Σ aⱼ v^ρⱼ (ln v)^mⱼ with v = γ(t) or v = t.
#[derive(Debug, Clone)]
pub struct StrippedResidual {
    trace: PSumTrace,
    expansion: AsymptoticExpansion,
    variable: StripVariable,
    singular: Vec<f64>,
    breaks: Vec<f64>,
}

impl StrippedResidual {
    fn variable_at(&self, t: f64) -> Complex64 {
        match self.variable {
            StripVariable::Geometric => self.trace.ray.point(t),
            StripVariable::Parameter => Complex64::new(t, 0.0),
        }
    }

    pub fn trace(&self) -> &PSumTrace {
        &self.trace
    }

    pub fn variable(&self) -> StripVariable {
        self.variable
    }
}

impl CesaroSampler for StrippedResidual {
    fn value(&self, t: f64) -> Complex64 {
        self.trace.value_at(t) - self.expansion.eval(self.variable_at(t))
    }

    fn averaged(&self, n: u32, t: f64) -> Complex64 {
        if self.expansion.terms().is_empty() {
            return self.trace.averaged(n, t);
        }
        kernel_average(|u| self.value(u), &self.breaks, &self.singular, n, t)
    }

    fn stripped(&self) -> AsymptoticExpansion {
        self.expansion.clone()
    }
}

fn check_strippable(expansion: &AsymptoticExpansion) -> Result<()> {
    if let Some(t) = expansion.terms().iter().find(|t| t.is_constant()) {
        return Err(CesaroError::Misuse(format!(
            "constant term {} is part of the limit and cannot be stripped",
            t.coeff
        )));
    }
    Ok(())
}

/// Subtracts eigenfunction terms evaluated at the geometric point γ(t).
pub fn strip_geometric(trace: &PSumTrace, expansion: &AsymptoticExpansion) -> Result<StrippedResidual> {
    if !expansion.is_geometric() {
        return Err(CesaroError::Misuse(
            "expansion is written in the arc-length parameter; eigenfunctions must be stripped in z = γ(t)"
                .into(),
        ));
    }
    check_strippable(expansion)?;
    let singular = trace.ray.hits_origin().into_iter().filter(|&t| t > 0.0).collect();
    Ok(StrippedResidual {
        breaks: trace.jumps.iter().map(|j| j.0).collect(),
        trace: trace.clone(),
        expansion: expansion.clone(),
        variable: StripVariable::Geometric,
        singular,
    })
}

/// Subtracts terms evaluated at the arc length t instead of γ(t).
///
/// This is the wrong construction whenever the base point is not 0; it exists
/// so the failure can be demonstrated.
pub fn strip_parametric(trace: &PSumTrace, expansion: &AsymptoticExpansion) -> Result<StrippedResidual> {
    if expansion.is_geometric() {
        return Err(CesaroError::Misuse("parametric stripping expects an expansion in t".into()));
    }
    check_strippable(expansion)?;
    Ok(StrippedResidual {
        breaks: trace.jumps.iter().map(|j| j.0).collect(),
        trace: trace.clone(),
        expansion: expansion.clone(),
        variable: StripVariable::Parameter,
        singular: Vec::new(),
    })
}

/// Closure-backed sampler, piecewise smooth between multiples of `period`.
pub struct FnSampler<F: Fn(f64) -> Complex64> {
    f: F,
    period: f64,
}

impl<F: Fn(f64) -> Complex64> FnSampler<F> {
    pub fn new(f: F, period: f64) -> Self {
        Self { f, period }
    }
}

impl<F: Fn(f64) -> Complex64> CesaroSampler for FnSampler<F> {
    fn value(&self, t: f64) -> Complex64 {
        (self.f)(t)
    }

    fn averaged(&self, n: u32, t: f64) -> Complex64 {
        let count = (t / self.period).ceil() as usize;
        let breaks: Vec<f64> = (1..=count).map(|k| k as f64 * self.period).collect();
        kernel_average(&self.f, &breaks, &[], n, t)
    }
}

/// Probe schedule and tolerance for limit detection.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitProbe {
    /// Probe points are t0·2^i, i = 0..count.
    pub t0: f64,
    pub count: usize,
    pub tol: f64,
    /// Lattice period; probe windows sample one period past each probe point.
    pub window_width: f64,
    pub window_samples: usize,
}

impl Default for LimitProbe {
    fn default() -> Self {
        Self { t0: 64.0, count: 7, tol: 1e-8, window_width: 1.0, window_samples: 4 }
    }
}

impl LimitProbe {
    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.t0 * 2f64.powi(i as i32)).collect()
    }

    pub fn last_point(&self) -> f64 {
        self.t0 * 2f64.powi(self.count as i32 - 1) + self.window_width
    }
}

/// Default bound on the number of averagings.
pub const DEFAULT_MAX_POWER: u32 = 4;

/// A generalized Cesàro limit and how it was reached.
#[derive(Debug, Clone, PartialEq)]
pub struct CesaroOutcome {
    pub limit: Complex64,
    pub averaging_power: u32,
    pub stripped: AsymptoticExpansion,
    pub tail_estimate: f64,
}

impl CesaroOutcome {
    pub fn plus(&self, other: &CesaroOutcome) -> CesaroOutcome {
        CesaroOutcome {
            limit: self.limit + other.limit,
            averaging_power: self.averaging_power.max(other.averaging_power),
            stripped: self.stripped.plus(&other.stripped),
            tail_estimate: self.tail_estimate + other.tail_estimate,
        }
    }
}

/// Generalized Cesàro limit of a sampled residual.
///
/// For n = 0, 1, …, max_power the averaged values Pⁿ[R] are sampled at the
/// lattice-aligned probe points and across one lattice period after each.
/// A power is accepted when the in-window oscillation decays and the lattice
/// values either settle or extrapolate stably to a limit.
pub fn clim(sampler: &dyn CesaroSampler, max_power: u32, probe: &LimitProbe) -> Result<CesaroOutcome> {
    if probe.count < 3 || probe.tol <= 0.0 || probe.t0 <= 0.0 {
        return Err(CesaroError::Domain("probe needs ≥ 3 points, t0 > 0 and tol > 0".into()));
    }
    let ts = probe.points();
    let models = default_models();
    let mut last_values = Vec::new();
    let mut reason = String::from("no power of P stabilized");
    for n in 0..=max_power {
        let vals: Vec<Complex64> = ts.iter().map(|&t| sampler.averaged(n, t)).collect();
        if vals.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(CesaroError::Pole("averaged residual is not finite".into()));
        }
        let spreads: Vec<f64> = ts
            .iter()
            .zip(&vals)
            .map(|(&t, &v)| {
                (1..probe.window_samples)
                    .map(|j| {
                        let off = probe.window_width * j as f64 / probe.window_samples as f64;
                        (sampler.averaged(n, t + off) - v).norm()
                    })
                    .fold(0.0, f64::max)
            })
            .collect();
        last_values = vals.clone();
        let last = *vals.last().expect("probe points");
        let scale = last.norm().max(1.0);
        let tol = probe.tol * scale;
        let s_first = spreads[0];
        let s_last = *spreads.last().expect("probe points");
        let t_ratio = ts[0] / ts[ts.len() - 1];
        let decaying = s_last <= 1e-2 * tol || s_last <= s_first * t_ratio.sqrt();
        if !decaying {
            reason = format!("oscillation of P^{n} does not decay over the probe windows");
            continue;
        }
        let prev = vals[vals.len() - 2];
        if (last - prev).norm() <= tol && s_last <= tol {
            return Ok(CesaroOutcome {
                limit: last,
                averaging_power: n,
                stripped: sampler.stripped(),
                tail_estimate: s_last,
            });
        }
        if let Some(e) = stable_limit(&ts, &vals, &models) {
            if e.spread <= tol {
                return Ok(CesaroOutcome {
                    limit: e.limit,
                    averaging_power: n,
                    stripped: sampler.stripped(),
                    tail_estimate: s_last,
                });
            }
            reason = format!("lattice values of P^{n} do not extrapolate stably (spread {:.2e})", e.spread);
        }
    }
    Err(CesaroError::NotCesaroSummable(Box::new(NotSummable {
        max_power,
        log_growth: detect_log_growth(&ts, &last_values, probe.tol),
        last_values,
        reason,
    })))
}

/// Fits a + b·ln t + c/t to the tail of the sequence; reports b when it is
/// clearly nonzero.
fn detect_log_growth(ts: &[f64], vals: &[Complex64], tol: f64) -> Option<Complex64> {
    if ts.len() < 4 {
        return None;
    }
    // a + b ln t + c/t: shift the ln column into the model by fitting the
    // first differences against ln 2 spacing.
    let k = ts.len();
    let b_est: Vec<Complex64> = (1..k)
        .map(|i| (vals[i] - vals[i - 1]) / (ts[i] / ts[i - 1]).ln())
        .collect();
    let mids: Vec<f64> = (1..k).map(|i| (ts[i] * ts[i - 1]).sqrt()).collect();
    let b = fit_limit(&mids, &b_est, &DecayModel::grid(1, 1)).unwrap_or(b_est[k - 2]);
    (b.norm() > 10.0 * tol).then_some(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn counting_trace(z0: Complex64, k: usize) -> PSumTrace {
        let ray = Ray::new(z0, Direction::PosReal);
        PSumTrace::from_summand(ray, 1.0, k, |_| Some(c(1.0, 0.0))).unwrap()
    }

    #[test]
    fn ray_point_zero_is_base() {
        for d in [Direction::PosReal, Direction::NegReal, Direction::PosImag, Direction::NegImag] {
            let r = Ray::new(c(0.3, -1.7), d);
            assert_eq!(r.point(0.0), r.base);
            assert!((r.point(2.5) - (r.base + d.unit() * 2.5)).norm() < 1e-15);
        }
    }

    #[test]
    fn p_of_unit_jumps() {
        let tr = counting_trace(c(0.0, 0.0), 10);
        assert!((apply_p_exact(&tr, 2.0).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        let (k, a) = (5.0, 0.25);
        let expect = (0.5 * k * (k - 1.0) + k * a) / (k + a);
        assert!((apply_p_exact(&tr, k + a).unwrap().re - expect).abs() < 1e-14);
        assert!(apply_p_exact(&tr, 0.0).is_err());
    }

    #[test]
    fn constant_trace_is_fixed() {
        let ray = Ray::new(c(0.0, 0.0), Direction::PosReal);
        let tr = PSumTrace::new(ray, vec![(0.0, c(2.0, -1.0))]).unwrap();
        for n in 1..4 {
            for t in [0.5, 3.0, 1e3] {
                assert!((apply_pn_exact(&tr, n, t).unwrap() - c(2.0, -1.0)).norm() < 1e-13);
            }
        }
        let out = clim(&tr, 4, &LimitProbe::default()).unwrap();
        assert_eq!(out.averaging_power, 0);
        assert_eq!(out.limit, c(2.0, -1.0));
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(eigenvalue_of_p(c(1.0, 0.0)).unwrap(), c(0.5, 0.0));
        assert_eq!(eigenvalue_of_p(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert!((eigenvalue_of_p(c(2.0, 0.0)).unwrap() - c(1.0 / 3.0, 0.0)).norm() < 1e-16);
        assert_eq!(eigenvalue_of_p(c(-1.0, 0.0)), Err(CesaroError::SingularEigenvalue));
    }

    #[test]
    fn pn_kernel_matches_iterated_average() {
        // P²[1_{t ≥ 1}](t) = (1/t)∫₁ᵗ (1 − 1/u) du.
        let ray = Ray::new(c(0.0, 0.0), Direction::PosReal);
        let tr = PSumTrace::new(ray, vec![(1.0, c(1.0, 0.0))]).unwrap();
        for t in [2.0f64, 10.0, 1e4] {
            let expect = (t - 1.0 - t.ln()) / t;
            assert!((apply_pn_exact(&tr, 2, t).unwrap().re - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn strip_counting_trace() {
        let z0 = c(0.3, 0.4);
        let tr = counting_trace(z0, 8200);
        let ex = AsymptoticExpansion::new([AsymptoticTerm::new(c(1.0, 0.0), c(1.0, 0.0), 0)], true);
        let res = strip_geometric(&tr, &ex).unwrap();
        assert!((res.value(3.25) - (-z0 - 0.25)).norm() < 1e-13);
        let out = clim(&res, 1, &LimitProbe::default()).unwrap();
        assert_eq!(out.averaging_power, 1);
        assert!((out.limit - (-z0 - 0.5)).norm() < 1e-9, "{:?}", out.limit);
    }

    #[test]
    fn strip_rejects_parameter_expansion_and_constants() {
        let tr = counting_trace(c(0.0, 0.0), 4);
        let ex = AsymptoticExpansion::new([AsymptoticTerm::new(c(1.0, 0.0), c(1.0, 0.0), 0)], false);
        assert!(matches!(strip_geometric(&tr, &ex), Err(CesaroError::Misuse(_))));
        let ex = AsymptoticExpansion::new([AsymptoticTerm::new(c(1.0, 0.0), c(0.0, 0.0), 0)], true);
        assert!(matches!(strip_geometric(&tr, &ex), Err(CesaroError::Misuse(_))));
        let empty = strip_geometric(&tr, &AsymptoticExpansion::empty(true)).unwrap();
        for t in [0.5, 1.0, 2.7] {
            assert_eq!(empty.value(t), tr.value_at(t));
        }
    }

    #[test]
    fn alpha_squared_averages_to_one_third() {
        let s = FnSampler::new(|t: f64| c(t.fract().powi(2), 0.0), 1.0);
        let out = clim(&s, 4, &LimitProbe::default()).unwrap();
        assert_eq!(out.averaging_power, 1);
        assert!((out.limit.re - 1.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn pure_log_is_not_summable() {
        let z0 = c(0.5, 0.5);
        let s = FnSampler::new(move |t: f64| (z0 + t).ln(), 1.0);
        match clim(&s, 4, &LimitProbe::default()) {
            Err(CesaroError::NotCesaroSummable(d)) => {
                let b = d.log_growth.expect("log growth detected");
                assert!((b - c(1.0, 0.0)).norm() < 0.1, "{b}");
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn expansion_merges_and_drops() {
        let ex = AsymptoticExpansion::new(
            [
                AsymptoticTerm::new(c(1.0, 0.0), c(2.0, 0.0), 1),
                AsymptoticTerm::new(c(0.5, 0.0), c(2.0, 0.0), 1),
                AsymptoticTerm::new(c(1e-16, 0.0), c(1.0, 0.0), 0),
            ],
            true,
        );
        assert_eq!(ex.terms().len(), 1);
        assert_eq!(ex.coeff(c(2.0, 0.0), 1), c(1.5, 0.0));
    }
}
