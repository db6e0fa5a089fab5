//! Euler–Maclaurin expansions of lattice sums of z^(−s), ln z and constants,
//! and their re-expansion in the geometric variable.
//!
//! For summands placed at w_j = b + h·j the Euler–Maclaurin formula gives
//!
//! ```text
//! Σ_{j=1}^k f(w_j) = C + F(w)/h + ½f(w) + Σ_i B_{2i}/(2i)!·h^{2i−1}·f^{(2i−1)}(w) + …
//! ```
//!
//! with w = b + h·k and F' = f. The constant C is the generalized Cesàro
//! limit of the partial sums. Written in the geometric variable
//! z = b + h·(k + α), the smooth part averages over α to F(z)/h.

use crate::cesaro_core::{AsymptoticExpansion, AsymptoticTerm};
use crate::error::{CesaroError, Result};
use crate::numeric::{cln, cpow, falling};
use crate::remainder_ops::SummandKind;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::OnceLock;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest Bernoulli index kept.
pub const BERNOULLI_MAX: usize = 30;

/// Exact Bernoulli numbers B₀..B₃₀, with B₁ = +½.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
    floats: Vec<f64>,
}

impl BernoulliTable {
    fn compute(max: usize) -> Self {
        // Σ_{k=0}^{n} C(n+1, k) B_k = 0 for n ≥ 1, giving B₁ = −½.
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for n in 1..=max {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one();
            for (k, bk) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bk;
                binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
        }
        b[1] = -b[1].clone();
        let floats = b.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect();
        Self { values: b, floats }
    }

    pub fn get(&self, n: usize) -> &BigRational {
        &self.values[n]
    }

    pub fn float(&self, n: usize) -> f64 {
        self.floats[n]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn bernoulli() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| BernoulliTable::compute(BERNOULLI_MAX))
}

/// Highest Euler–Maclaurin order the table supports.
pub const MAX_EM_ORDER: usize = BERNOULLI_MAX / 2 - 1;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// A term c·w^ρ·(ln w)^m in the lattice variable w = b + h·k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeTerm {
    pub coeff: Complex64,
    pub power: Complex64,
    /// 0 or 1.
    pub log_power: u32,
}

impl LatticeTerm {
    pub fn new(coeff: Complex64, power: Complex64, log_power: u32) -> Self {
        Self { coeff, power, log_power }
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        AsymptoticTerm::new(self.coeff, self.power, self.log_power).eval(w)
    }
}

/// A term c·z^ρ·(ln z)^m·α^i in the geometric variable and the lattice phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricTerm {
    pub coeff: Complex64,
    pub power: Complex64,
    pub log_power: u32,
    pub alpha_power: u32,
}

/// Result of re-expanding a lattice term around the geometric point.
#[derive(Debug, Clone, PartialEq)]
pub struct Regeometrized {
    pub terms: Vec<GeometricTerm>,
    source: LatticeTerm,
    step: Complex64,
    depth: usize,
}

fn binom(rho: Complex64, i: usize) -> Complex64 {
    falling(rho, i) / factorial(i)
}

/// (z − hα)^ρ (ln(z − hα))^m re-expanded in descending powers of z.
///
/// The α-series is truncated at total α-degree `depth − 1`.
pub fn binomial_regeometrize_step(term: LatticeTerm, step: Complex64, depth: usize) -> Regeometrized {
    let depth = depth.max(1);
    let mut out: Vec<GeometricTerm> = Vec::new();
    let mut push = |coeff: Complex64, power: Complex64, log_power: u32, alpha_power: u32| {
        if coeff == ZERO {
            return;
        }
        match out
            .iter_mut()
            .find(|g| g.power == power && g.log_power == log_power && g.alpha_power == alpha_power)
        {
            Some(g) => g.coeff += coeff,
            None => out.push(GeometricTerm { coeff, power, log_power, alpha_power }),
        }
    };
    let neg_h = -step;
    for i in 0..depth {
        let bi = term.coeff * binom(term.power, i) * neg_h.powu(i as u32);
        let p = term.power - i as f64;
        if term.log_power == 0 {
            push(bi, p, 0, i as u32);
            continue;
        }
        // ln(z − hα) = ln z − Σ_{j≥1} (hα)^j / (j z^j)
        push(bi, p, 1, i as u32);
        for j in 1..depth - i {
            let c = -bi * step.powu(j as u32) / j as f64;
            push(c, p - j as f64, 0, (i + j) as u32);
        }
    }
    Regeometrized { terms: out, source: term, step, depth }
}

/// Unit-step version: (z₀ + k)^ρ = (z − α)^ρ with z = z₀ + k + α.
pub fn binomial_regeometrize(term: LatticeTerm, depth: usize) -> Regeometrized {
    binomial_regeometrize_step(term, ONE, depth)
}

impl Regeometrized {
    pub fn eval(&self, z: Complex64, alpha: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|g| {
                AsymptoticTerm::new(g.coeff, g.power, g.log_power).eval(z) * alpha.powi(g.alpha_power as i32)
            })
            .sum()
    }

    /// Cesàro mean over the phase: α^i ↦ 1/(i+1).
    pub fn cesaro_mean(&self) -> AsymptoticExpansion {
        AsymptoticExpansion::new(
            self.terms.iter().map(|g| {
                AsymptoticTerm::new(g.coeff / (g.alpha_power as f64 + 1.0), g.power, g.log_power)
            }),
            true,
        )
    }

    /// Bound on |exact − truncated| at geometric point z for any α ∈ [0, 1].
    ///
    /// Sums the moduli of every omitted term of the (double) series; infinite
    /// when |h/z| ≥ 1, where the expansion does not converge.
    pub fn remainder_bound(&self, z: Complex64) -> f64 {
        let x = (self.step / z).norm();
        if x >= 1.0 {
            return f64::INFINITY;
        }
        let zr = cpow(z, self.source.power).map_or(f64::INFINITY, |v| v.norm()) * self.source.coeff.norm();
        let lz = cln(z).norm();
        let mut total = 0.0;
        for i in 0..400usize {
            let bi = binom(self.source.power, i).norm() * x.powi(i as i32);
            if self.source.log_power == 0 {
                if i >= self.depth {
                    total += bi;
                }
            } else {
                if i >= self.depth {
                    total += bi * lz;
                }
                let start = if i >= self.depth { 1 } else { self.depth - i };
                // Σ_{j ≥ start} x^j / j ≤ x^start / (start·(1 − x))
                total += bi * x.powi(start as i32) / (start as f64 * (1.0 - x));
            }
            if i > self.depth + 5 && bi < 1e-40 {
                break;
            }
        }
        total * zr
    }
}

/// A Bernoulli correction as it enters C = S(k) − leading(w) + Σ coeff·w^power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionTerm {
    pub order: usize,
    pub coeff: Complex64,
    pub power: Complex64,
}

/// Euler–Maclaurin expansion of a lattice partial sum.
#[derive(Debug, Clone, PartialEq)]
pub struct EmExpansion {
    /// α-averaged eigenfunction terms in the geometric variable.
    pub smooth_part: AsymptoticExpansion,
    /// z⁰α⁰ coefficient of the partial sum written in (z, α), available when
    /// the partial sum is a polynomial in w.
    pub constant: Option<Complex64>,
    pub correction_terms: Vec<CorrectionTerm>,
    pub truncation_order: usize,
    summand: SummandKind,
    base: Complex64,
    step: Complex64,
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_EM_ORDER {
        return Err(CesaroError::Domain(format!(
            "Euler–Maclaurin order {order} exceeds the Bernoulli table (max {MAX_EM_ORDER})"
        )));
    }
    Ok(())
}

/// F(w)/h + ½f(w) as lattice terms.
fn leading_terms(f: &SummandKind, h: Complex64) -> Vec<LatticeTerm> {
    match *f {
        SummandKind::Log => vec![
            LatticeTerm::new(ONE / h, ONE, 1),
            LatticeTerm::new(-ONE / h, ONE, 0),
            LatticeTerm::new(Complex64::new(0.5, 0.0), ZERO, 1),
        ],
        SummandKind::Power(s) => vec![
            LatticeTerm::new(ONE / ((ONE - s) * h), ONE - s, 0),
            LatticeTerm::new(Complex64::new(0.5, 0.0), -s, 0),
        ],
        SummandKind::Const(c) => vec![
            LatticeTerm::new(c / h, ONE, 0),
            LatticeTerm::new(c * 0.5, ZERO, 0),
        ],
    }
}

/// The i-th Bernoulli term of the smooth function G, as a lattice term.
fn g_correction(f: &SummandKind, h: Complex64, i: usize) -> Option<LatticeTerm> {
    let b = bernoulli().float(2 * i);
    let m = 2 * i - 1;
    match *f {
        SummandKind::Log => {
            // f^{(m)} = (−1)^{m−1}(m−1)!/w^m, m odd.
            let c = b / (2 * i * (2 * i - 1)) as f64;
            Some(LatticeTerm::new(h.powu(m as u32) * c, Complex64::new(-(m as f64), 0.0), 0))
        }
        SummandKind::Power(s) => {
            let c = falling(-s, m) * (b / factorial(2 * i)) * h.powu(m as u32);
            Some(LatticeTerm::new(c, -s - m as f64, 0))
        }
        SummandKind::Const(_) => None,
    }
}

fn validate_summand(f: &SummandKind) -> Result<()> {
    if let SummandKind::Power(s) = f {
        if *s == ONE {
            return Err(CesaroError::Domain(
                "s = 1 is the harmonic case: the leading term is logarithmic".into(),
            ));
        }
    }
    Ok(())
}

/// Euler–Maclaurin expansion of Σ_{j=1}^k f(b + h·j).
pub fn em_expansion(f: SummandKind, base: Complex64, step: Complex64, order: usize) -> Result<EmExpansion> {
    validate_summand(&f)?;
    check_order(order)?;
    if step == ZERO {
        return Err(CesaroError::Domain("lattice step must be nonzero".into()));
    }
    let leading = leading_terms(&f, step);
    let mut corrections = Vec::new();
    for i in 1..=order {
        if let Some(t) = g_correction(&f, step, i) {
            if t.coeff != ZERO {
                corrections.push(CorrectionTerm { order: i, coeff: -t.coeff, power: t.power });
            }
        }
    }
    let max_re = leading.iter().map(|t| t.power.re).fold(f64::NEG_INFINITY, f64::max);
    let depth = (max_re.floor() + 3.0).max(2.0) as usize;
    let mut smooth = AsymptoticExpansion::empty(true);
    for t in leading.iter().copied().chain(corrections.iter().map(|c| LatticeTerm::new(-c.coeff, c.power, 0))) {
        let mean = binomial_regeometrize_step(t, step, depth).cesaro_mean();
        smooth = smooth.plus(&mean);
    }
    let smooth = AsymptoticExpansion::new(
        smooth
            .terms()
            .iter()
            .copied()
            .filter(|t| !t.is_constant() && t.power.re > -1.0),
        true,
    );
    let mut em = EmExpansion {
        smooth_part: smooth,
        constant: None,
        correction_terms: corrections,
        truncation_order: order,
        summand: f,
        base,
        step,
    };
    em.constant = em.polynomial_constant();
    Ok(em)
}

/// Expansion of Σ_{j=1}^k ln(z₀ + j).
pub fn em_log_expansion(z0: Complex64, order: usize) -> Result<EmExpansion> {
    if z0.im == 0.0 && z0.re.fract() == 0.0 && z0.re < 0.0 {
        return Err(CesaroError::Pole(format!("ln(0) summand: z0 = {} is a negative integer", z0.re)));
    }
    em_expansion(SummandKind::Log, z0, ONE, order)
}

/// Expansion of Σ_{j=1}^k (z₀ + j)^(−s).
pub fn em_power_expansion(z0: Complex64, s: Complex64, order: usize) -> Result<EmExpansion> {
    validate_summand(&SummandKind::Power(s))?;
    if z0.im == 0.0 && z0.re.fract() == 0.0 && z0.re < 0.0 && (s.re > 0.0 || (s.re == 0.0 && s != ZERO)) {
        return Err(CesaroError::Pole(format!("summand (z0 + j)^(−s) is singular at j = {}", -z0.re)));
    }
    em_expansion(SummandKind::Power(s), z0, ONE, order)
}

impl EmExpansion {
    pub fn summand(&self) -> SummandKind {
        self.summand
    }

    pub fn base(&self) -> Complex64 {
        self.base
    }

    pub fn step(&self) -> Complex64 {
        self.step
    }

    /// Lattice point w_k = b + h·k.
    pub fn lattice_point(&self, k: usize) -> Complex64 {
        crate::numeric::from_above(self.base + self.step * k as f64)
    }

    /// F(w)/h + ½f(w).
    pub fn leading(&self, w: Complex64) -> Complex64 {
        leading_terms(&self.summand, self.step).iter().map(|t| t.eval(w)).sum()
    }

    /// The full smooth function G(w) including the retained corrections.
    pub fn smooth_at(&self, w: Complex64) -> Complex64 {
        self.leading(w) - self.corrections_at(w)
    }

    /// Σ of the retained Bernoulli corrections at w.
    pub fn corrections_at(&self, w: Complex64) -> Complex64 {
        self.correction_terms
            .iter()
            .map(|c| LatticeTerm::new(c.coeff, c.power, 0).eval(w))
            .sum()
    }

    /// C estimated from a partial sum S(k) at lattice point w_k.
    pub fn constant_from_partial_sum(&self, partial: Complex64, w: Complex64) -> Complex64 {
        partial - self.smooth_at(w)
    }

    /// Size of the first omitted Bernoulli term at w.
    pub fn truncation_estimate(&self, w: Complex64) -> f64 {
        let next = self.truncation_order + 1;
        if next > MAX_EM_ORDER {
            return f64::INFINITY;
        }
        g_correction(&self.summand, self.step, next).map_or(0.0, |t| t.eval(w).norm())
    }

    /// Whether the partial sum is a polynomial in w (summand z^n, n ≥ 0, or a constant).
    pub fn is_polynomial(&self) -> bool {
        match self.summand {
            SummandKind::Power(s) => s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0,
            SummandKind::Const(_) => true,
            SummandKind::Log => false,
        }
    }

    /// Power of P the oscillatory residual needs: the amplitude of the
    /// α-dependent remainder grows like z^β, and each averaging lowers β by one.
    pub fn structural_averaging_power(&self) -> u32 {
        let beta = match self.summand {
            SummandKind::Log => 0.0,
            SummandKind::Power(s) => -s.re,
            SummandKind::Const(c) => {
                if c == ZERO {
                    return 0;
                }
                0.0
            }
        };
        if beta < 0.0 {
            0
        } else {
            beta.floor() as u32 + 1
        }
    }

    fn polynomial_constant(&self) -> Option<Complex64> {
        if !self.is_polynomial() {
            return None;
        }
        // Exact polynomial identity S(k) = C + G(w_k) with all corrections,
        // evaluated at k = 1; the z⁰α⁰ coefficient is then C + G(0).
        let full = EmExpansion {
            truncation_order: MAX_EM_ORDER,
            correction_terms: (1..=MAX_EM_ORDER)
                .filter_map(|i| g_correction(&self.summand, self.step, i))
                .filter(|t| t.coeff != ZERO)
                .enumerate()
                .map(|(i, t)| CorrectionTerm { order: i + 1, coeff: -t.coeff, power: t.power })
                .collect(),
            ..self.clone()
        };
        let w1 = self.lattice_point(1);
        let s1 = self.summand.eval(w1)?;
        let c = s1 - full.smooth_at(w1);
        let mut g0 = ZERO;
        for t in leading_terms(&self.summand, self.step) {
            if t.power == ZERO && t.log_power == 0 {
                g0 += t.coeff;
            }
        }
        for ct in &full.correction_terms {
            if ct.power == ZERO {
                g0 -= ct.coeff;
            }
        }
        Some(c + g0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli();
        assert_eq!(*b.get(0), rat(1, 1));
        assert_eq!(*b.get(1), rat(1, 2));
        assert_eq!(*b.get(2), rat(1, 6));
        assert_eq!(*b.get(4), rat(-1, 30));
        assert_eq!(*b.get(12), rat(-691, 2730));
        assert_eq!(*b.get(30), rat(8615841276005, 14322));
        for k in 1..15 {
            assert!(b.get(2 * k + 1).is_zero());
        }
    }

    #[test]
    fn log_corrections_order_three() {
        let em = em_log_expansion(c(0.0, 0.0), 3).unwrap();
        let coeffs: Vec<f64> = em.correction_terms.iter().map(|t| t.coeff.re).collect();
        assert!((coeffs[0] + 1.0 / 12.0).abs() < 1e-17);
        assert!((coeffs[1] - 1.0 / 360.0).abs() < 1e-17);
        assert!((coeffs[2] + 1.0 / 1260.0).abs() < 1e-17);
        let powers: Vec<f64> = em.correction_terms.iter().map(|t| t.power.re).collect();
        assert_eq!(powers, vec![-1.0, -3.0, -5.0]);
    }

    #[test]
    fn log_smooth_part_is_z_log_z_minus_z() {
        for order in 0..=3 {
            let em = em_log_expansion(c(0.4, -0.2), order).unwrap();
            assert_eq!(em.smooth_part.terms().len(), 2, "{:?}", em.smooth_part);
            assert!((em.smooth_part.coeff(c(1.0, 0.0), 1) - c(1.0, 0.0)).norm() < 1e-15);
            assert!((em.smooth_part.coeff(c(1.0, 0.0), 0) - c(-1.0, 0.0)).norm() < 1e-15);
        }
        assert!(matches!(em_log_expansion(c(-2.0, 0.0), 3), Err(CesaroError::Pole(_))));
    }

    #[test]
    fn power_expansion_polynomial_cases() {
        let z0 = c(0.7, 1.1);
        let em = em_power_expansion(z0, c(0.0, 0.0), 3).unwrap();
        assert_eq!(em.smooth_part.terms().len(), 1);
        assert!((em.smooth_part.coeff(c(1.0, 0.0), 0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((em.constant.unwrap() + z0).norm() < 1e-14);

        let em = em_power_expansion(z0, c(-1.0, 0.0), 3).unwrap();
        assert_eq!(em.smooth_part.terms().len(), 1);
        assert!((em.smooth_part.coeff(c(2.0, 0.0), 0) - c(0.5, 0.0)).norm() < 1e-15);
        let expect = -0.5 * z0 * z0 - 0.5 * z0;
        assert!((em.constant.unwrap() - expect).norm() < 1e-13);

        assert!(matches!(em_power_expansion(z0, c(1.0, 0.0), 3), Err(CesaroError::Domain(_))));
    }

    #[test]
    fn zeta_two_from_expansion_constant() {
        let em = em_power_expansion(c(0.0, 0.0), c(2.0, 0.0), 6).unwrap();
        let k = 40;
        let s: Complex64 = (1..=k).map(|j| c(1.0 / (j * j) as f64, 0.0)).sum();
        let w = em.lattice_point(k);
        let z2 = em.constant_from_partial_sum(s, w);
        assert!((z2.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
    }

    #[test]
    fn regeometrize_examples() {
        let r = binomial_regeometrize(LatticeTerm::new(c(1.0, 0.0), c(1.0, 0.0), 0), 2);
        assert_eq!(r.terms.len(), 2);
        for (z, a) in [(c(3.0, 1.0), 0.3), (c(-2.0, 5.0), 0.9)] {
            assert!((r.eval(z, a) - (z - a)).norm() < 1e-15);
        }
        let half = binomial_regeometrize(LatticeTerm::new(c(1.0, 0.0), c(0.5, 0.0), 0), 3);
        let coeffs: Vec<f64> = half.terms.iter().map(|g| g.coeff.re).collect();
        assert_eq!(coeffs, vec![1.0, -0.5, -0.125]);
        let lg = binomial_regeometrize(LatticeTerm::new(c(1.0, 0.0), c(0.0, 0.0), 1), 2);
        assert_eq!(lg.terms.len(), 2);
        let a1 = lg.terms.iter().find(|g| g.alpha_power == 1).unwrap();
        assert_eq!((a1.coeff, a1.power, a1.log_power), (c(-1.0, 0.0), c(-1.0, 0.0), 0));
    }
}
