//! Dilation and scaling invariance of Cesàro limits, and the operator
//! identities around P: P⁻¹ = H_D + 1, H_S = t ln t d/dt, and the
//! quasi-commutation P∘S_r = q̃(P)∘S_r∘P.
//!
//! S_r is the flow of H_S, S_r[f](t) = f(t^{e^r}). Only the positive real
//! ray is handled.

use crate::error::{CesaroError, Result};
use crate::numeric::{ln_1p, CompensatedSum};
use crate::quadrature::{gl16, tanh_sinh};
use crate::remainder_ops::{one_sided_sum, SumOptions, SummandKind};
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Registered test functions of t > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CorpusFn {
    Const(f64),
    /// t^ρ
    Power(f64),
    /// t^ρ (ln t)^m
    PowerLog(f64, u32),
    /// sin(ωt)
    Sine(f64),
    /// cos(ωt)
    Cosine(f64),
    /// e^{−at}
    ExpDecay(f64),
    /// 1/(1+t)
    Rational,
    /// sin(t)/(1+t); registered without derivative or antiderivative
    Damped,
}

/// (id, function) pairs of the default corpus.
pub fn corpus() -> Vec<(&'static str, CorpusFn)> {
    vec![
        ("const", CorpusFn::Const(2.5)),
        ("t", CorpusFn::Power(1.0)),
        ("t2", CorpusFn::Power(2.0)),
        ("sqrt", CorpusFn::Power(0.5)),
        ("t_ln_t", CorpusFn::PowerLog(1.0, 1)),
        ("sin", CorpusFn::Sine(1.0)),
        ("cos2", CorpusFn::Cosine(2.0)),
        ("exp_decay", CorpusFn::ExpDecay(1.0)),
        ("rational", CorpusFn::Rational),
        ("damped", CorpusFn::Damped),
        ("inv_t15", CorpusFn::Power(-1.5)),
    ]
}

/// Looks up a corpus entry by id.
pub fn corpus_fn(id: &str) -> Result<CorpusFn> {
    corpus()
        .into_iter()
        .find(|(k, _)| *k == id)
        .map(|(_, f)| f)
        .ok_or_else(|| CesaroError::Domain(format!("unknown corpus function '{id}'")))
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

impl CorpusFn {
    pub fn value(&self, t: f64) -> Complex64 {
        re(match *self {
            CorpusFn::Const(c) => c,
            CorpusFn::Power(p) => t.powf(p),
            CorpusFn::PowerLog(p, m) => t.powf(p) * t.ln().powi(m as i32),
            CorpusFn::Sine(w) => (w * t).sin(),
            CorpusFn::Cosine(w) => (w * t).cos(),
            CorpusFn::ExpDecay(a) => (-a * t).exp(),
            CorpusFn::Rational => 1.0 / (1.0 + t),
            CorpusFn::Damped => t.sin() / (1.0 + t),
        })
    }

    /// f′(t) where registered.
    pub fn derivative(&self, t: f64) -> Option<Complex64> {
        let v = match *self {
            CorpusFn::Const(_) => 0.0,
            CorpusFn::Power(p) => p * t.powf(p - 1.0),
            CorpusFn::PowerLog(p, m) => {
                let l = t.ln();
                let mut d = p * t.powf(p - 1.0) * l.powi(m as i32);
                if m > 0 {
                    d += m as f64 * t.powf(p - 1.0) * l.powi(m as i32 - 1);
                }
                d
            }
            CorpusFn::Sine(w) => w * (w * t).cos(),
            CorpusFn::Cosine(w) => -w * (w * t).sin(),
            CorpusFn::ExpDecay(a) => -a * (-a * t).exp(),
            CorpusFn::Rational => -1.0 / ((1.0 + t) * (1.0 + t)),
            CorpusFn::Damped => return None,
        };
        Some(re(v))
    }

    /// Whether ∫₀ᵗ f converges.
    pub fn integrable_at_zero(&self) -> bool {
        match *self {
            CorpusFn::Power(p) | CorpusFn::PowerLog(p, _) => p > -1.0,
            _ => true,
        }
    }

    /// ∫₀ᵗ f where a closed form is registered.
    pub fn antiderivative(&self, t: f64) -> Option<Complex64> {
        if !self.integrable_at_zero() {
            return None;
        }
        let v = match *self {
            CorpusFn::Const(c) => c * t,
            CorpusFn::Power(p) => t.powf(p + 1.0) / (p + 1.0),
            CorpusFn::PowerLog(p, m) => {
                // I_m = t^{p+1} ln^m t/(p+1) − m/(p+1)·I_{m−1}
                let a = p + 1.0;
                let l = t.ln();
                let tp = t.powf(a);
                let mut acc = tp / a;
                for j in 1..=m {
                    acc = tp * l.powi(j as i32) / a - j as f64 / a * acc;
                }
                acc
            }
            CorpusFn::Sine(w) => (1.0 - (w * t).cos()) / w,
            CorpusFn::Cosine(w) => (w * t).sin() / w,
            CorpusFn::ExpDecay(a) => -(-a * t).exp_m1() / a,
            CorpusFn::Rational => return Some(ln_1p(re(t))),
            CorpusFn::Damped => return None,
        };
        Some(re(v))
    }

    /// Whether the function oscillates on unit scale.
    fn oscillates(&self) -> bool {
        matches!(self, CorpusFn::Sine(_) | CorpusFn::Cosine(_) | CorpusFn::Damped)
    }
}

/// Central 5-point derivative. The corpus varies on scale min(t, 1).
fn stencil_derivative(f: &CorpusFn, t: f64) -> Complex64 {
    let h = 2e-3 * t.min(1.0);
    (f.value(t - 2.0 * h) - f.value(t - h) * 8.0 + f.value(t + h) * 8.0 - f.value(t + 2.0 * h)) / (12.0 * h)
}

fn derivative_or_stencil(f: &CorpusFn, t: f64) -> Complex64 {
    f.derivative(t).unwrap_or_else(|| stencil_derivative(f, t))
}

/// P[f](t) = (1/t)∫₀ᵗ f.
pub fn apply_p(f: &CorpusFn, t: f64) -> Result<Complex64> {
    if t <= 0.0 {
        return Err(CesaroError::Domain("t > 0 required".into()));
    }
    if !f.integrable_at_zero() {
        return Err(CesaroError::Domain(format!("{f:?} is not integrable at 0")));
    }
    if let Some(v) = f.antiderivative(t) {
        return Ok(v / t);
    }
    Ok(integrate_weighted(f, t, |_| 1.0) / t)
}

/// Minimum grid density for the 5-point stencil.
pub const POINTS_PER_DECADE: f64 = 5.0;

/// A corpus function sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSample {
    pub fn_id: String,
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
    /// Analytic derivative on the grid, when the source registers one.
    pub derivative: Option<Vec<Complex64>>,
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 5 {
        return Err(CesaroError::Resolution("grid needs at least 5 points".into()));
    }
    if grid[0] <= 0.0 {
        return Err(CesaroError::Domain("grid points must be > 0".into()));
    }
    let max_ratio = 10f64.powf(1.0 / POINTS_PER_DECADE) * (1.0 + 1e-12);
    for w in grid.windows(2) {
        if w[1] <= w[0] {
            return Err(CesaroError::Domain("grid must be strictly increasing".into()));
        }
        if w[1] / w[0] > max_ratio {
            return Err(CesaroError::Resolution(format!(
                "grid step {} → {} is coarser than {POINTS_PER_DECADE} points per decade",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

impl OperatorSample {
    pub fn new(fn_id: impl Into<String>, grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        check_grid(&grid)?;
        if values.len() != grid.len() {
            return Err(CesaroError::Misuse("values and grid differ in length".into()));
        }
        Ok(Self { fn_id: fn_id.into(), grid, values, derivative: None })
    }

    pub fn from_corpus(id: &str, grid: Vec<f64>) -> Result<Self> {
        let f = corpus_fn(id)?;
        check_grid(&grid)?;
        let values = grid.iter().map(|&t| f.value(t)).collect();
        let derivative = grid.iter().map(|&t| f.derivative(t)).collect::<Option<Vec<_>>>();
        Ok(Self { fn_id: id.to_string(), grid, values, derivative })
    }

    /// f′ on the grid: analytic if present, otherwise a 5-point stencil on
    /// the (possibly non-uniform) grid.
    pub fn derivative_values(&self) -> Vec<Complex64> {
        if let Some(d) = &self.derivative {
            return d.clone();
        }
        let n = self.grid.len();
        (0..n)
            .map(|i| {
                let lo = i.saturating_sub(2).min(n - 5);
                let nodes = &self.grid[lo..lo + 5];
                let w = fornberg_first_derivative(self.grid[i], nodes);
                (0..5).map(|j| self.values[lo + j] * w[j]).sum()
            })
            .collect()
    }

    fn derived(&self, tag: &str, values: Vec<Complex64>) -> Self {
        Self {
            fn_id: format!("{tag}({})", self.fn_id),
            grid: self.grid.clone(),
            values,
            derivative: None,
        }
    }

    /// Composition with t ↦ t^r on the grid.
    pub fn compose_power(id: &str, grid: Vec<f64>, r: f64) -> Result<Self> {
        let f = corpus_fn(id)?;
        check_grid(&grid)?;
        let values = grid.iter().map(|&t| f.value(t.powf(r))).collect();
        Ok(Self { fn_id: format!("{id}∘t^{r}"), grid, values, derivative: None })
    }
}

/// Fornberg weights for the first derivative at x0 on the given nodes.
pub fn fornberg_first_derivative(x0: f64, nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![[0.0f64; 2]; n];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(1);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.iter().map(|w| w[1]).collect()
}

/// P⁻¹ = t d/dt + 1.
#[allow(non_snake_case)]
pub fn apply_P_inverse(sample: &OperatorSample) -> Result<OperatorSample> {
    check_grid(&sample.grid)?;
    let d = sample.derivative_values();
    let values = sample
        .grid
        .iter()
        .zip(&sample.values)
        .zip(d)
        .map(|((&t, &f), df)| df * t + f)
        .collect();
    Ok(sample.derived("P⁻¹", values))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// H_D = t d/dt
    Dilation,
    /// H_S = t ln t d/dt
    Scaling,
}

pub fn apply_generator(sample: &OperatorSample, which: Generator) -> Result<OperatorSample> {
    check_grid(&sample.grid)?;
    let d = sample.derivative_values();
    let values = sample
        .grid
        .iter()
        .zip(d)
        .map(|(&t, df)| match which {
            Generator::Dilation => df * t,
            Generator::Scaling => df * (t * t.ln()),
        })
        .collect();
    let tag = match which {
        Generator::Dilation => "H_D",
        Generator::Scaling => "H_S",
    };
    Ok(sample.derived(tag, values))
}

/// max over the grid of |P[P⁻¹ f](t) − f(t)|, with P applied by quadrature to
/// u ↦ u f′(u) + f(u).
pub fn p_of_p_inverse_residual(id: &str, grid: &[f64]) -> Result<f64> {
    let f = corpus_fn(id)?;
    check_grid(grid)?;
    if !f.integrable_at_zero() {
        return Err(CesaroError::Domain(format!("{id} is not integrable at 0")));
    }
    let g = |u: f64| derivative_or_stencil(&f, u) * u + f.value(u);
    let mut worst = 0.0f64;
    for &t in grid {
        let p = integrate_fn(&g, t, f.oscillates()) / t;
        worst = worst.max((p - f.value(t)).norm());
    }
    Ok(worst)
}

/// ∫₀ᵀ g: tanh–sinh on [0, min(T, 1)], then GL16 panels, unit-length for
/// oscillating integrands and doubling otherwise.
fn integrate_fn<G: Fn(f64) -> Complex64>(g: &G, upper: f64, oscillating: bool) -> Complex64 {
    let head = upper.min(1.0);
    let mut acc = CompensatedSum::new();
    acc.add(tanh_sinh(g, 0.0, head, 1e-14));
    let mut a = head;
    while a < upper {
        let b = if oscillating { (a + 1.0).min(upper) } else { (2.0 * a).min(upper) };
        acc.add(gl16().integrate(g, a, b));
        a = b;
    }
    acc.value()
}

fn integrate_weighted<W: Fn(f64) -> f64>(f: &CorpusFn, upper: f64, weight: W) -> Complex64 {
    integrate_fn(&|v| f.value(v) * weight(v), upper, f.oscillates())
}

/// q̃(x) = 1 + (1 − e^{−r})(x − 1), written so that q̃(1) = 1 exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QTilde {
    pub r: f64,
}

impl QTilde {
    pub fn new(r: f64) -> Self {
        Self { r }
    }

    /// Coefficient of P.
    pub fn c1(&self) -> f64 {
        -(-self.r).exp_m1()
    }

    /// Constant coefficient e^{−r}.
    pub fn c0(&self) -> f64 {
        (-self.r).exp()
    }

    pub fn eval(&self, x: f64) -> f64 {
        1.0 + self.c1() * (x - 1.0)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        (x - 1.0) * self.c1() + 1.0
    }
}

/// Exponent R with S_r[f](t) = f(t^R).
pub fn scaling_exponent(r: f64) -> f64 {
    r.exp()
}

fn binomial(n: u32, k: u32) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// (1/t)∫ over u ∈ [v^{1/R}, t] of K_k(t,u)·K_n(u^R, v)·u^{−R} du, the weight
/// of f(v) in P^k[S Pⁿ f](t). K_m(x, y) = ln(x/y)^{m−1}/(m−1)!.
fn nested_weight(v: f64, t: f64, big_r: f64, k: u32, n: u32) -> f64 {
    let lt = t.ln();
    let lv = v.ln();
    let y0 = lv / big_r;
    if y0 >= lt {
        return 0.0;
    }
    let fk = factorial(k - 1);
    let fn_ = factorial(n - 1);
    let a = 1.0 - big_r;
    let integrand = |y: f64| {
        (lt - y).powi(k as i32 - 1) / fk * (big_r * y - lv).powi(n as i32 - 1) / fn_ * (a * y).exp()
    };
    let len = lt - y0;
    let panels = ((a.abs() * len / 4.0).ceil() as usize).max((len / 8.0).ceil() as usize).max(1);
    let h = len / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let lo = y0 + p as f64 * h;
        acc += gl16().integrate(|y| re(integrand(y)), lo, lo + h).re;
    }
    acc / t
}

fn check_scaling_args(f: &CorpusFn, t: f64, n: u32) -> Result<()> {
    if !f.integrable_at_zero() {
        return Err(CesaroError::Domain(format!("{f:?} is not integrable at 0")));
    }
    if t <= 0.0 {
        return Err(CesaroError::Domain("t > 0 required".into()));
    }
    if n == 0 {
        return Err(CesaroError::Domain("n ≥ 1 required".into()));
    }
    Ok(())
}

/// Both sides of Pⁿ∘S = q̃(P)ⁿ∘S∘Pⁿ at t, with S[f](t) = f(t^exponent).
pub fn scaling_commutation_sides(f: &CorpusFn, r: f64, exponent: f64, t: f64, n: u32) -> Result<(Complex64, Complex64)> {
    check_scaling_args(f, t, n)?;
    let q = QTilde::new(r);
    let big_r = exponent;
    if let CorpusFn::Const(c) = *f {
        return Ok((re(c), re(c * q.eval(1.0).powi(n as i32))));
    }
    if let CorpusFn::Power(rho) = *f {
        // eigenfunctions: both sides in closed form
        let ts = t.powf(rho * big_r);
        let lhs = ts / (rho * big_r + 1.0).powi(n as i32);
        let lam = 1.0 / (rho * big_r + 1.0);
        let rhs = q.eval(lam).powi(n as i32) * ts / (rho + 1.0).powi(n as i32);
        return Ok((re(lhs), re(rhs)));
    }
    let big_t = t.powf(big_r);
    let fn1 = factorial(n - 1);
    let lhs = integrate_weighted(f, big_t, |v| {
        v.powf(1.0 / big_r - 1.0) / (t * big_r) * ((big_t / v).ln() / big_r).powi(n as i32 - 1) / fn1
    });
    let (c0, c1) = (q.c0(), q.c1());
    let mut rhs = CompensatedSum::new();
    let k0 = integrate_weighted(f, big_t, |v| (big_t / v).ln().powi(n as i32 - 1) / fn1) / big_t;
    rhs.add(k0 * c0.powi(n as i32));
    for k in 1..=n {
        let coeff = binomial(n, k) * c1.powi(k as i32) * c0.powi((n - k) as i32);
        let ik = integrate_weighted(f, big_t, |v| nested_weight(v, t, big_r, k, n));
        rhs.add(ik * coeff);
    }
    Ok((lhs, rhs.value()))
}

/// |P[S_r f](t) − q̃(P)[S_r P f](t)|.
pub fn scaling_commutation_residual(id: &str, r: f64, t: f64) -> Result<f64> {
    scaling_commutation_power_residual(id, r, t, 1)
}

/// |Pⁿ[S_r f](t) − q̃(P)ⁿ[S_r Pⁿ f](t)|.
pub fn scaling_commutation_power_residual(id: &str, r: f64, t: f64, n: u32) -> Result<f64> {
    let f = corpus_fn(id)?;
    let (l, rh) = scaling_commutation_sides(&f, r, scaling_exponent(r), t, n)?;
    Ok((l - rh).norm())
}

/// A remainder-sum configuration for the dilation check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesCase {
    /// Σ_{j≥1} (z₀ + j)^(−s)
    Zeta { s: Complex64, z0: Complex64 },
    /// Σ_{j≥1} ln(z₀ + j)
    LogSum { z0: Complex64 },
    /// Σ_{j≥1} c
    ConstSum { c: Complex64, z0: Complex64 },
    /// Σ_{l=1}^n R₊[ln](z₀/n − (n−l)/n), which recomposes to
    /// R₊[ln](z₀) + (z₀ + ½) ln n
    Interleave { z0: Complex64, n: u32 },
}

impl SeriesCase {
    /// Closed form of the limit where one is elementary.
    pub fn known_limit(&self) -> Option<Complex64> {
        match *self {
            SeriesCase::Zeta { s, z0 } if s == ZERO => Some(-z0 - 0.5),
            SeriesCase::Zeta { s, z0 } if s == re(-1.0) => Some(-(z0 * z0 + z0) * 0.5 - 1.0 / 12.0),
            SeriesCase::ConstSum { c, z0 } => Some(c * (-z0 - 0.5)),
            _ => None,
        }
    }
}

/// Σ_{j≥1} f(r(z₀ + j)) brought back to Σ f(z₀ + j) by homogeneity.
fn dilated_limit(f: SummandKind, z0: Complex64, r: f64) -> Result<Complex64> {
    let raw = one_sided_sum(f, z0 * r, re(r), &SumOptions::default())?.limit;
    Ok(match f {
        SummandKind::Power(s) => re(r).powc(s) * raw,
        SummandKind::Log => raw - r.ln() * (-z0 - 0.5),
        SummandKind::Const(_) => raw,
    })
}

/// |Clim after dilation by r − Clim|. For `Interleave` the reference is the
/// recomposed R₊[ln](z₀) + (z₀+½) ln n and the sublattice sums are dilated.
pub fn dilation_invariance_check(case: SeriesCase, r: f64) -> Result<f64> {
    if !(0.1..=10.0).contains(&r) {
        return Err(CesaroError::Domain(format!("r = {r} outside [0.1, 10]")));
    }
    let single = |f: SummandKind, z0: Complex64| -> Result<f64> {
        let base = dilated_limit(f, z0, 1.0)?;
        let dil = dilated_limit(f, z0, r)?;
        Ok((dil - base).norm())
    };
    match case {
        SeriesCase::Zeta { s, z0 } => single(SummandKind::Power(s), z0),
        SeriesCase::LogSum { z0 } => single(SummandKind::Log, z0),
        SeriesCase::ConstSum { c, z0 } => single(SummandKind::Const(c), z0),
        SeriesCase::Interleave { z0, n } => {
            if n == 0 {
                return Err(CesaroError::Domain("n ≥ 1 required".into()));
            }
            let nf = n as f64;
            let mut acc = CompensatedSum::new();
            for l in 1..=n {
                let w = (z0 - (nf - l as f64)) / nf;
                acc.add(dilated_limit(SummandKind::Log, w, r)?);
            }
            let reference = dilated_limit(SummandKind::Log, z0, 1.0)? + (z0 + 0.5) * nf.ln();
            Ok((acc.value() - reference).norm())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
        let n = ((hi / lo).log10() * per_decade as f64).ceil() as usize;
        (0..=n).map(|i| lo * (hi / lo).powf(i as f64 / n as f64)).collect()
    }

    #[test]
    fn p_inverse_on_powers() {
        let s = OperatorSample::from_corpus("t2", log_grid(0.5, 20.0, 10)).unwrap();
        let p = apply_P_inverse(&s).unwrap();
        for (t, v) in p.grid.iter().zip(&p.values) {
            assert!((v.re - 3.0 * t * t).abs() < 1e-12 * t * t);
        }
        let c = apply_P_inverse(&OperatorSample::from_corpus("const", log_grid(0.5, 20.0, 10)).unwrap()).unwrap();
        assert!(c.values.iter().all(|v| (v.re - 2.5).abs() < 1e-15));
    }

    #[test]
    fn stencil_fallback() {
        let s = OperatorSample::from_corpus("damped", log_grid(1.0, 10.0, 400)).unwrap();
        assert!(s.derivative.is_none());
        let d = s.derivative_values();
        for (t, v) in s.grid.iter().zip(&d) {
            let exact = t.cos() / (1.0 + t) - t.sin() / ((1.0 + t) * (1.0 + t));
            assert!((v.re - exact).abs() < 1e-6, "{t} {}", v.re - exact);
        }
    }

    #[test]
    fn coarse_grid_rejected() {
        let g = vec![1.0, 2.0, 4.0, 8.0, 16.0];
        assert!(matches!(OperatorSample::from_corpus("t", g), Err(CesaroError::Resolution(_))));
    }

    #[test]
    fn commutation_identity_case() {
        let r = 2f64.ln();
        let q = QTilde::new(r);
        assert!((q.c0() - 0.5).abs() < 1e-16 && (q.c1() - 0.5).abs() < 1e-16);
        assert!(scaling_commutation_residual("t", r, 4.0).unwrap() < 1e-12);
        assert_eq!(scaling_commutation_residual("const", 0.37, 3.0).unwrap(), 0.0);
    }

    #[test]
    fn dilation_of_constant_sum() {
        let case = SeriesCase::Zeta { s: ZERO, z0: Complex64::new(0.3, 0.2) };
        assert_eq!(dilation_invariance_check(case, 1.0).unwrap(), 0.0);
        assert!(dilation_invariance_check(case, 2.0).unwrap() < 1e-9);
    }
}
