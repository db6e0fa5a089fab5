//! Limit extraction from lattice samples by least-squares fitting.
//!
//! Averaged sequences approach their limit like a combination of
//! (ln t)^b / t^a. Fitting {1} ∪ {(ln t)^b t^{−a}} to samples at geometric
//! probe points and reading off the constant column is a generalized
//! Richardson extrapolation.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Decay model: a list of (a, b) exponents for basis functions (ln t)^b / t^a.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayModel {
    pub terms: Vec<(u32, u32)>,
}

impl DecayModel {
    /// All (a, b) with 1 ≤ a ≤ max_a and 0 ≤ b ≤ max_b.
    pub fn grid(max_a: u32, max_b: u32) -> Self {
        let mut terms = Vec::new();
        for a in 1..=max_a {
            for b in 0..=max_b {
                terms.push((a, b));
            }
        }
        Self { terms }
    }

    pub fn parameters(&self) -> usize {
        self.terms.len() + 1
    }
}

/// Fits `values[i] ≈ L + Σ c_j (ln t_i)^b_j / t_i^a_j` and returns L.
///
/// Real and imaginary parts share the real design matrix. Columns are
/// normalized before the SVD solve. Returns `None` if the system is
/// underdetermined.
pub fn fit_limit(ts: &[f64], values: &[Complex64], model: &DecayModel) -> Option<Complex64> {
    let m = ts.len();
    let p = model.parameters();
    if m < p || m != values.len() {
        return None;
    }
    let mut a = DMatrix::<f64>::zeros(m, p);
    for (i, &t) in ts.iter().enumerate() {
        a[(i, 0)] = 1.0;
        let lt = t.ln();
        for (j, &(pa, pb)) in model.terms.iter().enumerate() {
            a[(i, j + 1)] = lt.powi(pb as i32) / t.powi(pa as i32);
        }
    }
    let mut scale = vec![1.0; p];
    for j in 0..p {
        let n = a.column(j).norm();
        if n > 0.0 {
            scale[j] = n;
            for i in 0..m {
                a[(i, j)] /= n;
            }
        }
    }
    let re = DVector::from_iterator(m, values.iter().map(|v| v.re));
    let im = DVector::from_iterator(m, values.iter().map(|v| v.im));
    let svd = a.svd(true, true);
    let xr = svd.solve(&re, 1e-14).ok()?;
    let xi = svd.solve(&im, 1e-14).ok()?;
    Some(Complex64::new(xr[0] / scale[0], xi[0] / scale[0]))
}

/// Result of a stability-checked extrapolation.
#[derive(Debug, Clone, Copy)]
pub struct Extrapolated {
    pub limit: Complex64,
    /// Disagreement between the fit on all points and the fit with the
    /// smallest probe dropped.
    pub spread: f64,
}

/// Tries each model in turn and keeps the one whose fit is least sensitive to
/// dropping the earliest probe point.
pub fn stable_limit(ts: &[f64], values: &[Complex64], models: &[DecayModel]) -> Option<Extrapolated> {
    let mut best: Option<Extrapolated> = None;
    for model in models {
        if ts.len() < model.parameters() + 1 {
            continue;
        }
        let all = match fit_limit(ts, values, model) {
            Some(v) => v,
            None => continue,
        };
        let tail = match fit_limit(&ts[1..], &values[1..], model) {
            Some(v) => v,
            None => continue,
        };
        let cand = Extrapolated { limit: all, spread: (all - tail).norm() };
        if best.is_none_or(|b| cand.spread < b.spread) {
            best = Some(cand);
        }
    }
    best
}

/// The default model ladder used by the Cesàro limit driver.
pub fn default_models() -> Vec<DecayModel> {
    vec![
        DecayModel::grid(1, 0),
        DecayModel::grid(1, 1),
        DecayModel::grid(2, 1),
        DecayModel::grid(2, 2),
    ]
}
