//! Quadrature rules for complex-valued integrands on real intervals.
//!
//! Gauss–Legendre for short smooth pieces, an adaptive Gauss–Kronrod (7/15)
//! driver for longer smooth stretches, and tanh–sinh for pieces with an
//! integrable endpoint singularity (log kernels, z^ρ with Re ρ > −1).

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

/// Nodes and weights of an n-point Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: FnMut(f64) -> Complex64>(&self, mut f: F, a: f64, b: f64) -> Complex64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(mid + half * x) * *w;
        }
        acc * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Shared 16-point rule.
pub fn gl16() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(16))
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(mid);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(mid - dx) + f(mid + dx);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let k = kron * half;
    let g = gauss * half;
    (k, (k - g).norm())
}

/// Adaptive Gauss–Kronrod on [a, b] with a global error budget.
///
/// Intervals are bisected greedily on the largest local error estimate until
/// the summed estimate drops below `max(abs_tol, rel_tol·|I|)` or the interval
/// budget is exhausted. Returns the integral and the final error estimate.
pub fn adaptive<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> (Complex64, f64) {
    if a == b {
        return (Complex64::new(0.0, 0.0), 0.0);
    }
    let mut pieces: Vec<(f64, f64, Complex64, f64)> = Vec::new();
    let (v, e) = gk15(&mut f, a, b);
    pieces.push((a, b, v, e));
    for _ in 0..2000 {
        let total: Complex64 = pieces.iter().map(|p| p.2).sum();
        let err: f64 = pieces.iter().map(|p| p.3).sum();
        if err <= abs_tol.max(rel_tol * total.norm()) {
            return (total, err);
        }
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("non-empty");
        let (lo, hi, _, _) = pieces.swap_remove(idx);
        let m = 0.5 * (lo + hi);
        if m <= lo || m >= hi {
            pieces.push((lo, hi, Complex64::new(0.0, 0.0), 0.0));
            continue;
        }
        let (v1, e1) = gk15(&mut f, lo, m);
        let (v2, e2) = gk15(&mut f, m, hi);
        pieces.push((lo, m, v1, e1));
        pieces.push((m, hi, v2, e2));
    }
    let total: Complex64 = pieces.iter().map(|p| p.2).sum();
    let err: f64 = pieces.iter().map(|p| p.3).sum();
    (total, err)
}

/// Tanh–sinh quadrature on [a, b].
///
/// The integrand is handed the abscissa together with its distances to both
/// ends, so that functions singular at an endpoint can be evaluated without
/// the cancellation in `x − a` near that end.
pub fn tanh_sinh_with_distance<F>(mut f: F, a: f64, b: f64, tol: f64) -> Complex64
where
    F: FnMut(f64, f64, f64) -> Complex64,
{
    let len = b - a;
    if len == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let mut eval = |u: f64| -> Complex64 {
        let v = FRAC_PI_2 * u.sinh();
        let ch = v.cosh();
        let w = FRAC_PI_2 * u.cosh() / (ch * ch);
        if !w.is_finite() || w == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let e = (2.0 * v).exp();
        let dl = len * e / (1.0 + e);
        let dr = len / (1.0 + e);
        let (dl, dr) = if e.is_infinite() { (len, 0.0) } else { (dl, dr) };
        if dl <= 0.0 || dr <= 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let x = if u < 0.0 { a + dl } else { b - dr };
        f(x, dl, dr) * (w * 0.5 * len)
    };
    let umax = 6.0;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= umax {
        let u = k as f64 * h;
        sum += eval(u) + eval(-u);
        k += 1;
    }
    let mut est = sum * h;
    for _level in 0..9 {
        h *= 0.5;
        let mut add = Complex64::new(0.0, 0.0);
        let mut k = 1;
        while (k as f64) * h <= umax {
            let u = k as f64 * h;
            add += eval(u) + eval(-u);
            k += 2;
        }
        sum += add;
        let next = sum * h;
        let diff = (next - est).norm();
        est = next;
        if diff <= tol * est.norm().max(1e-300) || diff < 1e-300 {
            break;
        }
    }
    est
}

/// Tanh–sinh quadrature on [a, b] for a plain integrand.
pub fn tanh_sinh<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, b: f64, tol: f64) -> Complex64 {
    tanh_sinh_with_distance(|x, _, _| f(x), a, b, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let r = GaussLegendre::new(8);
        let v = r.integrate(|x| c(x.powi(15) + 3.0 * x.powi(4)), -1.0, 2.0);
        let exact = (2f64.powi(16) - 1.0) / 16.0 + 3.0 * (32.0 + 1.0) / 5.0;
        assert!((v.re - exact).abs() < 1e-9 * exact);
        let ws: f64 = gl16().weights().iter().sum();
        assert!((ws - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_oscillation() {
        let (v, _) = adaptive(|x| Complex64::new(x.sin(), x.cos()), 0.0, 50.0, 1e-13, 1e-13);
        assert!((v.re - (1.0 - 50f64.cos())).abs() < 1e-11);
        assert!((v.im - 50f64.sin()).abs() < 1e-11);
    }

    #[test]
    fn tanh_sinh_handles_endpoint_singularities() {
        let v = tanh_sinh(|x| c(x.ln()), 0.0, 1.0, 1e-14);
        assert!((v.re + 1.0).abs() < 1e-13);
        let v = tanh_sinh(|x| c(x.powf(-0.5)), 0.0, 4.0, 1e-14);
        assert!((v.re - 4.0).abs() < 1e-12);
        let v = tanh_sinh_with_distance(|_, _, dr| c(dr.powf(-0.75)), 0.0, 1.0, 1e-14);
        assert!((v.re - 4.0).abs() < 1e-10);
    }
}
