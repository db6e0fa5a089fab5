//! Fourier coefficients of bidirectional sums, the closed form of the
//! bidirectional ln-sum, and checks of the Γ and ζ functional equations.
//!
//! Transforms use the kernel e^{−2πixξ}. A bidirectional sum of f is 1-periodic
//! in z₀ and its n-th Fourier coefficient is 𝓕[f](n).

use crate::error::{CesaroError, Result};
use crate::numeric::{cpow, from_above};
use crate::remainder_ops::{one_sided_sum, remainder_sum, DirectionSpec, SumOptions, SummandKind};
use crate::special_functions::{gamma, ln_gamma, riemann_zeta, HALF_LN_2PI};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_4;

/// A tempered distribution evaluated at a frequency: a regular value plus the
/// weight of a point mass δ₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformValue {
    /// Value of the regular part; `None` where it is singular (ξ = 0).
    pub regular: Option<Complex64>,
    pub delta_weight: Complex64,
}

impl TransformValue {
    fn scaled(self, c: Complex64) -> Self {
        Self { regular: self.regular.map(|v| v * c), delta_weight: self.delta_weight * c }
    }

    fn plus(self, o: Self) -> Self {
        let regular = match (self.regular, o.regular) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Self { regular, delta_weight: self.delta_weight + o.delta_weight }
    }
}

/// Table entries the log transform is assembled from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasicTransform {
    /// 𝓕[ln|x|](ξ) = −1/(2|ξ|) − (γ + ln 2π) δ₀
    LnAbs,
    /// 𝓕[1](ξ) = δ₀
    One,
    /// 𝓕[u](ξ) = 1/(2πiξ) + ½ δ₀, u the unit step
    Heaviside,
}

impl BasicTransform {
    pub fn at(self, xi: f64) -> TransformValue {
        let regular = |v: Complex64| if xi == 0.0 { None } else { Some(v) };
        match self {
            BasicTransform::LnAbs => TransformValue {
                regular: regular(Complex64::new(-0.5 / xi.abs(), 0.0)),
                delta_weight: Complex64::new(-(EULER_GAMMA + (2.0 * PI).ln()), 0.0),
            },
            BasicTransform::One => TransformValue { regular: Some(ZERO), delta_weight: ONE },
            BasicTransform::Heaviside => TransformValue {
                regular: regular(Complex64::new(0.0, -1.0 / (2.0 * PI * xi))),
                delta_weight: Complex64::new(0.5, 0.0),
            },
        }
    }
}

/// 𝓕[ln x̃](ξ) for x approached from the upper half-plane, where
/// ln x̃ = ln|x| + iπ(1 − u(x)).
pub fn log_transform(xi: f64) -> TransformValue {
    let ipi = Complex64::new(0.0, PI);
    BasicTransform::LnAbs
        .at(xi)
        .plus(BasicTransform::One.at(xi).scaled(ipi))
        .plus(BasicTransform::Heaviside.at(xi).scaled(-ipi))
}

/// 𝓕[x̃^(−s)](ξ) = (−2πi)^s ξ₊^(s−1)/Γ(s) at ξ ≠ 0.
pub fn power_transform(s: Complex64, xi: f64) -> Result<Complex64> {
    if xi <= 0.0 {
        return Ok(ZERO);
    }
    let g = gamma(s)?;
    let lead = Complex64::new(2.0 * PI, 0.0).powc(s) * (-I * PI * s / 2.0).exp();
    Ok(lead * Complex64::new(xi, 0.0).powc(s - 1.0) / g)
}

/// a_n, the n-th Fourier coefficient of the bidirectional sum of `kind`.
pub fn fourier_coeff_closed_form(kind: SummandKind, s: Option<Complex64>, n: i64) -> Result<Complex64> {
    match kind {
        SummandKind::Log => {
            if n == 0 {
                // only the δ₀ part survives here; its Cesàro mean is zero
                return Ok(ZERO);
            }
            if n < 0 {
                // ln|ξ| and Heaviside parts cancel exactly; avoid the rounding residue
                return Ok(ZERO);
            }
            log_transform(n as f64)
                .regular
                .ok_or_else(|| CesaroError::Excluded("regular part singular".into()))
        }
        SummandKind::Power(sk) => {
            let s = s.unwrap_or(sk);
            if n == 0 {
                if s.re <= 1.0 {
                    return Err(CesaroError::Excluded(
                        "a_0 for z^(−s) needs Re(s) > 1".into(),
                    ));
                }
                return Ok(ZERO);
            }
            power_transform(s, n as f64)
        }
        SummandKind::Const(_) => Err(CesaroError::Unsupported(
            "Fourier coefficients are tabulated for ln and z^(−s) only".into(),
        )),
    }
}

/// a_n for |n| ≤ n_range.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoefficientTable {
    pub kind: SummandKind,
    pub s_param: Option<Complex64>,
    pub coeffs: BTreeMap<i64, Complex64>,
    pub n_range: i64,
}

impl FourierCoefficientTable {
    pub fn new(kind: SummandKind, n_range: i64) -> Result<Self> {
        let s_param = match kind {
            SummandKind::Power(s) => {
                if s.re <= 1.0 {
                    return Err(CesaroError::Excluded("table for z^(−s) needs Re(s) > 1".into()));
                }
                Some(s)
            }
            _ => None,
        };
        let mut coeffs = BTreeMap::new();
        for n in -n_range..=n_range {
            coeffs.insert(n, fourier_coeff_closed_form(kind, s_param, n)?);
        }
        Ok(Self { kind, s_param, coeffs, n_range })
    }

    pub fn get(&self, n: i64) -> Option<Complex64> {
        self.coeffs.get(&n).copied()
    }

    /// Σ_{|n|≤N} a_n e^{2πinz₀}.
    pub fn partial_series(&self, z0: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&n, &a)| a * (2.0 * PI * I * n as f64 * z0).exp())
            .sum()
    }
}

fn require_upper(z0: Complex64) -> Result<()> {
    if z0.im > 0.0 {
        Ok(())
    } else {
        Err(CesaroError::Domain(format!(
            "closed form is analyzed for Im z0 > 0, got {z0}"
        )))
    }
}

/// R₊,₀,₋[ln](z₀) = iπ(z₀ − ½) + ln 2 + ln sin(πz₀), Im z₀ > 0.
///
/// The branch of ln sin is the one continuous along horizontal lines, which
/// makes the whole expression 1-periodic.
pub fn bidirectional_log_closed_form(z0: Complex64) -> Result<Complex64> {
    require_upper(z0)?;
    let m = z0.re.floor();
    let x0 = Complex64::new(z0.re - m, z0.im);
    let ln_sin = (x0 * PI).sin().ln() - I * PI * m;
    Ok(I * PI * (z0 - 0.5) + LN_2 + ln_sin)
}

/// −Σ_{n=1}^N e^{2πinz₀}/n.
pub fn bidirectional_log_series(z0: Complex64, terms: usize) -> Result<Complex64> {
    require_upper(z0)?;
    let q = (2.0 * PI * I * z0).exp();
    let mut qn = ONE;
    let mut acc = ZERO;
    for n in 1..=terms {
        qn *= q;
        acc -= qn / n as f64;
    }
    Ok(acc)
}

/// R₊,₀,₋[ln](z₀) assembled from ln Γ: R₊,₀[ln](w) = ½ ln 2π − ln Γ(w) and
/// R₋[ln](z₀) = R₊,₀[ln](1 − z₀) + iπ(z₀ − ½).
pub fn bidirectional_log_via_gamma(z0: Complex64) -> Result<Complex64> {
    let plus = |w| -> Result<Complex64> { Ok(Complex64::new(HALF_LN_2PI, 0.0) - ln_gamma(w)?) };
    Ok(plus(z0)? + plus(ONE - z0)? + I * PI * (z0 - 0.5))
}

/// R₊,₀,₋[ln](z₀) straight from the remainder-sum engine.
pub fn bidirectional_log_direct(z0: Complex64) -> Result<Complex64> {
    Ok(remainder_sum(SummandKind::Log, z0, DirectionSpec::Bidirectional)?.limit)
}

/// Distance of a complex number from 2πiℤ.
pub fn distance_mod_2pi_i(d: Complex64) -> f64 {
    let k = (d.im / (2.0 * PI)).round();
    (d - Complex64::new(0.0, 2.0 * PI * k)).norm()
}

/// |R₊,₀[ln](z₀) + R₊,₀[ln](1 − z₀) − ln 2 − ln sin(πz₀)| modulo 2πi.
///
/// Im z₀ = 0 is accepted as the limit from above.
pub fn verify_log_reflection(z0: Complex64) -> Result<f64> {
    let z0 = from_above(z0);
    if z0.im < 0.0 {
        return Err(CesaroError::Domain(format!("Im z0 ≥ 0 required, got {z0}")));
    }
    let plus = |w| -> Result<Complex64> { Ok(Complex64::new(HALF_LN_2PI, 0.0) - ln_gamma(w)?) };
    let lhs = plus(z0)? + plus(ONE - z0)?;
    let rhs = LN_2 + (z0 * PI).sin().ln();
    Ok(distance_mod_2pi_i(lhs - rhs))
}

/// |ζ(1−s) − 2^{1−s}π^{−s}cos(πs/2)Γ(s)ζ(s)| / (1 + |ζ(1−s)|).
pub fn zeta_functional_equation_residual(s: Complex64) -> Result<f64> {
    if s == ZERO || s == ONE {
        return Err(CesaroError::Excluded(format!("s = {s} is excluded")));
    }
    let lhs = riemann_zeta(ONE - s)?;
    let two = Complex64::new(2.0, 0.0);
    let rhs = two.powc(ONE - s)
        * Complex64::new(PI, 0.0).powc(-s)
        * (s * PI / 2.0).cos()
        * gamma(s)?
        * riemann_zeta(s)?;
    Ok((lhs - rhs).norm() / (1.0 + lhs.norm()))
}

/// Cesàro value of Σ_{n≥1} (−1)ⁿ n^{s−1} = (2^s − 1) ζ(1 − s).
///
/// Computed as twice the even-index sum minus the full sum, the even-index
/// sum running on the lattice 2n. At s = 0 both pieces diverge harmonically
/// and the convergent value −ln 2 is returned.
pub fn alternating_series_clim(s: Complex64) -> Result<Complex64> {
    if s == ONE {
        return Err(CesaroError::Excluded("s = 1 is excluded".into()));
    }
    if s == ZERO {
        return Ok(Complex64::new(-LN_2, 0.0));
    }
    let p = ONE - s;
    let full = riemann_zeta(p)?;
    let even = one_sided_sum(SummandKind::Power(p), ZERO, Complex64::new(2.0, 0.0), &SumOptions::default())?.limit;
    Ok(even * 2.0 - full)
}

/// (2^s − 1) ζ(1 − s).
pub fn alternating_series_closed_form(s: Complex64) -> Result<Complex64> {
    let two_s = cpow(Complex64::new(2.0, 0.0), s).expect("2^s is finite");
    Ok((two_s - 1.0) * riemann_zeta(ONE - s)?)
}
