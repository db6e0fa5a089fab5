//! Small numeric helpers shared across modules.

use num_complex::Complex64;

/// Neumaier-compensated accumulator for complex values.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

fn neumaier(sum: f64, comp: f64, x: f64) -> (f64, f64) {
    let t = sum + x;
    let c = if sum.abs() >= x.abs() {
        (sum - t) + x
    } else {
        (x - t) + sum
    };
    (t, comp + c)
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: Complex64) {
        let (re, cre) = neumaier(self.sum.re, self.comp.re, x.re);
        let (im, cim) = neumaier(self.sum.im, self.comp.im, x.im);
        self.sum = Complex64::new(re, im);
        self.comp = Complex64::new(cre, cim);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Replaces a negative-zero imaginary part by +0 so that points on the
/// negative real axis take the principal argument +π (limit from above).
pub fn from_above(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

/// Principal-branch power `w^p` with the conventions 0^0 = 1 and 0^p = 0
/// for Re p > 0. Returns `None` when w = 0 and the power is singular.
pub fn cpow(w: Complex64, p: Complex64) -> Option<Complex64> {
    if w == Complex64::new(0.0, 0.0) {
        if p == Complex64::new(0.0, 0.0) {
            return Some(Complex64::new(1.0, 0.0));
        }
        if p.re > 0.0 {
            return Some(Complex64::new(0.0, 0.0));
        }
        return None;
    }
    if p.im == 0.0 && p.re.fract() == 0.0 && p.re.abs() <= 64.0 {
        return Some(from_above(w).powi(p.re as i32));
    }
    Some(from_above(w).powc(p))
}

/// Principal-branch logarithm with the limit-from-above convention.
pub fn cln(w: Complex64) -> Complex64 {
    from_above(w).ln()
}

/// ln(1 + x) accurate for small |x|.
pub fn ln_1p(x: Complex64) -> Complex64 {
    let re = 0.5 * (2.0 * x.re + x.norm_sqr()).ln_1p();
    let im = x.im.atan2(1.0 + x.re);
    Complex64::new(re, im)
}

/// Falling factorial a(a−1)…(a−m+1).
pub fn falling(a: Complex64, m: usize) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    for i in 0..m {
        p *= a - i as f64;
    }
    p
}

/// True when `z` is an integer ≤ `max` (exactly, as a float).
pub fn is_integer_at_most(z: Complex64, max: f64) -> bool {
    z.im == 0.0 && z.re.fract() == 0.0 && z.re <= max
}

/// Distance from z to the nearest non-positive integer pole, used for
/// error messages and guards.
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    is_integer_at_most(z, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::new();
        s.add(Complex64::new(1e16, 0.0));
        s.add(Complex64::new(1.0, 1.0));
        s.add(Complex64::new(-1e16, 0.0));
        assert_eq!(s.value(), Complex64::new(1.0, 1.0));
    }

    #[test]
    fn principal_branch_from_above() {
        let w = Complex64::new(-2.0, -0.0);
        assert!((cln(w).im - std::f64::consts::PI).abs() < 1e-15);
        let half = cpow(Complex64::new(-4.0, 0.0), Complex64::new(0.5, 0.0)).unwrap();
        assert!((half - Complex64::new(0.0, 2.0)).norm() < 1e-15);
        assert_eq!(cpow(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)), Some(Complex64::new(1.0, 0.0)));
        assert_eq!(cpow(Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)), None);
    }

    #[test]
    fn ln_1p_small_argument() {
        let x = Complex64::new(1e-12, -3e-13);
        let v = ln_1p(x);
        assert!((v - x).norm() < 1e-23);
    }
}
