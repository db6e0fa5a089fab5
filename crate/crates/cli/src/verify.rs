use cesaro::functional_equations::{zeta_functional_equation_residual, EULER_GAMMA};
use cesaro::invariance::{corpus, dilation_invariance_check, scaling_commutation_power_residual, SeriesCase};
use cesaro::remainder_ops::{remainder_sum, DirectionSpec, SummandKind};
use cesaro::special_functions::*;
use cesaro::{CesaroError, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

pub const SUITES: &[&str] = &[
    "reflection",
    "multiplication",
    "duplication",
    "integral-identity",
    "kernel",
    "functional-equation",
    "dilation",
    "scaling",
    "staircase-gamma",
];

#[derive(Debug, Clone, Serialize)]
pub struct CaseRow {
    pub suite: String,
    pub case: String,
    /// `None` when the case errored.
    pub residual: Option<f64>,
    pub tol: f64,
    pub pass: bool,
}

struct Case {
    id: String,
    tol: f64,
    run: Box<dyn Fn() -> Result<f64, CesaroError>>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn off_poles(z: Complex64, gap: f64) -> bool {
    z.im.abs() > gap || z.re > gap || (z.re - z.re.round()).abs() > gap
}

fn random_point(rng: &mut ChaCha8Rng, half_width: f64) -> Complex64 {
    c(rng.gen_range(-half_width..half_width), rng.gen_range(-half_width..half_width))
}

fn case(id: String, tol: f64, run: impl Fn() -> Result<f64, CesaroError> + 'static) -> Case {
    Case { id, tol, run: Box::new(run) }
}

fn cases(suite: &str, seed: u64) -> Option<Vec<Case>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    match suite {
        "reflection" => {
            while out.len() < 20 {
                let z = random_point(&mut rng, 3.0);
                if off_poles(z, 0.05) && off_poles(c(1.0, 0.0) - z, 0.05) {
                    out.push(case(format!("z{:02}", out.len()), 1e-8, move || reflection_residual(z)));
                }
            }
        }
        "multiplication" => {
            for n in 2..=4u32 {
                let mut k = 0;
                while k < 10 {
                    let z0 = random_point(&mut rng, 3.0);
                    if off_poles(z0 + 1.0, 0.05) {
                        out.push(case(format!("n{n}_z{k:02}"), 1e-8, move || gamma_multiplication_residual(z0, n)));
                        k += 1;
                    }
                }
            }
        }
        "duplication" => {
            for n in 2..=3u32 {
                let mut k = 0;
                while k < 10 {
                    let z = c(rng.gen_range(-2.0..3.0), rng.gen_range(-2.0..2.0));
                    let s = c(rng.gen_range(-2.0..3.0), rng.gen_range(-2.0..2.0));
                    if (s - 1.0).norm() >= 0.1 && off_poles(z, 0.05) {
                        out.push(case(format!("n{n}_k{k:02}"), 1e-8, move || zeta_duplication_residual(z, s, n)));
                        k += 1;
                    }
                }
            }
        }
        "integral-identity" => {
            let svals = [c(-2.0, 0.0), c(-0.5, 0.0), c(0.0, 0.0), c(0.5, 0.5), c(2.0, 0.0)];
            for (i, s) in svals.into_iter().enumerate() {
                out.push(case(format!("integral_s{i}"), 1e-6, move || Ok(hurwitz_integral_identity(s, 256)?.norm())));
            }
            let known = [(-1.0, -1.0 / 12.0), (0.0, -0.5), (2.0, PI * PI / 6.0), (4.0, PI.powi(4) / 90.0)];
            for p in [2u64, 3, 5] {
                for (s, zeta) in known {
                    out.push(case(format!("prime_p{p}_s{s}"), 1e-8, move || {
                        let s = c(s, 0.0);
                        let expect = (c(p as f64, 0.0).powc(s) - 1.0) * zeta;
                        Ok((hurwitz_prime_special_value(p, s)? - expect).norm() / expect.norm().max(1.0))
                    }));
                }
            }
        }
        "kernel" => {
            for k in 0..10 {
                let z0 = random_point(&mut rng, 3.0);
                for n in 0..=3u32 {
                    out.push(case(format!("z{k:02}_n{n}"), 1e-8, move || {
                        Ok(remainder_sum(SummandKind::monomial(n), z0, DirectionSpec::Bidirectional)?.limit.norm())
                    }));
                }
            }
        }
        "functional-equation" => {
            while out.len() < 20 {
                let s = c(rng.gen_range(0.2..3.0), rng.gen_range(-3.0..3.0));
                if s.norm() >= 1.0 && (s - 1.0).norm() >= 1.0 {
                    out.push(case(format!("s{:02}", out.len()), 1e-7, move || zeta_functional_equation_residual(s)));
                }
            }
        }
        "dilation" => {
            let z = c(0.3, 0.4);
            let registered = [
                ("zeta_s0", SeriesCase::Zeta { s: c(0.0, 0.0), z0: z }),
                ("zeta_s-1", SeriesCase::Zeta { s: c(-1.0, 0.0), z0: z }),
                ("zeta_s2.5+1i", SeriesCase::Zeta { s: c(2.5, 1.0), z0: c(1.2, -0.7) }),
                ("log", SeriesCase::LogSum { z0: z }),
                ("const", SeriesCase::ConstSum { c: c(1.5, -1.0), z0: z }),
                ("interleave_n2", SeriesCase::Interleave { z0: z, n: 2 }),
                ("interleave_n3", SeriesCase::Interleave { z0: c(1.7, 0.0), n: 3 }),
            ];
            for (name, sc) in registered {
                for r in [0.5, 2.0, 3.0] {
                    out.push(case(format!("{name}_r{r}"), 1e-9, move || dilation_invariance_check(sc, r)));
                }
            }
        }
        "scaling" => {
            for (id, f) in corpus() {
                if !f.integrable_at_zero() {
                    continue;
                }
                for r in [0.3, 0.7] {
                    for t in [1.0, 10.0, 100.0] {
                        for n in 1..=2u32 {
                            out.push(case(format!("{id}_r{r}_t{t}_n{n}"), 1e-6, move || {
                                scaling_commutation_power_residual(id, r, t, n)
                            }));
                        }
                    }
                }
            }
        }
        "staircase-gamma" => {
            out.push(case("derivative_h1e-3_t1e4".into(), 1e-3, || {
                Ok((gamma_staircase_derivative(1e-3, 1e4)? + EULER_GAMMA).norm())
            }));
            out.push(case("clim".into(), 1e-8, || Ok((staircase_limit()? + EULER_GAMMA).norm())));
            out.push(case("taylor_c1".into(), 1e-8, || Ok((gamma_taylor_coeff(1)? + EULER_GAMMA).norm())));
        }
        _ => return None,
    }
    Some(out)
}

/// Runs a suite; `None` for an unknown suite. Rows come back sorted by case id.
pub fn run_suite(suite: &str, seed: u64, tol_override: Option<f64>) -> Option<Vec<CaseRow>> {
    let mut rows: Vec<CaseRow> = cases(suite, seed)?
        .into_iter()
        .map(|k| {
            let tol = tol_override.unwrap_or(k.tol);
            let residual = match (k.run)() {
                Ok(r) => Some(r),
                Err(e) => {
                    eprintln!("{suite}/{}: {e}", k.id);
                    None
                }
            };
            let pass = residual.is_some_and(|r| r <= tol);
            CaseRow { suite: suite.to_string(), case: k.id, residual, tol, pass }
        })
        .collect();
    rows.sort_by(|a, b| a.case.cmp(&b.case));
    Some(rows)
}
