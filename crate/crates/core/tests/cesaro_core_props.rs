use cesaro::cesaro_core::*;
use cesaro::asymptotics::em_power_expansion;
use cesaro::{CesaroError, Complex64};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn trace_from_values(values: &[Complex64]) -> PSumTrace {
    let ray = Ray::new(c(0.0, 0.0), Direction::PosReal);
    let jumps = values.iter().enumerate().map(|(i, v)| ((i + 1) as f64, *v)).collect();
    PSumTrace::new(ray, jumps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn p_at_integer_is_mean_of_partial_sums(
        jumps in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 2..200),
        frac in 0.0f64..1.0,
    ) {
        let mut acc = c(0.0, 0.0);
        let sums: Vec<Complex64> = jumps.iter().map(|&(a, b)| { acc += c(a, b); acc }).collect();
        let tr = trace_from_values(&sums);
        let k = ((sums.len() as f64 * frac).floor() as usize).max(1);
        let direct: Complex64 = sums[..k - 1].iter().sum::<Complex64>() / k as f64;
        let p = apply_p_exact(&tr, k as f64).unwrap();
        prop_assert!((p - direct).norm() < 1e-12 * (1.0 + direct.norm()));
    }

    #[test]
    fn averaging_powers_match_eigenvalue(rho_re in -0.9f64..3.0, rho_im in -2.0f64..2.0, t in 0.5f64..50.0) {
        let rho = c(rho_re, rho_im);
        let f = |u: f64| c(u, 0.0).powc(rho);
        let avg = kernel_average(f, &[], &[], 1, t);
        let expect = eigenvalue_of_p(rho).unwrap() * c(t, 0.0).powc(rho);
        prop_assert!((avg - expect).norm() < 1e-9 * (1.0 + expect.norm()), "{avg} vs {expect}");
    }

    #[test]
    fn clim_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0) {
        // Σ 1/j² (n = 0) and Σ (−1)^j (needs one averaging); the window
        // must span the period-2 pattern
        let probe = LimitProbe { window_width: 2.0, ..LimitProbe::default() };
        let n = probe.last_point() as usize + 2;
        let mut s1 = c(0.0, 0.0);
        let mut s2 = c(0.0, 0.0);
        let mut v1 = Vec::new();
        let mut v2 = Vec::new();
        let mut mix = Vec::new();
        for j in 1..=n {
            s1 += 1.0 / (j * j) as f64;
            s2 += if j % 2 == 0 { 1.0 } else { -1.0 };
            v1.push(s1);
            v2.push(s2);
            mix.push(s1 * a + s2 * b);
        }
        let l1 = clim(&trace_from_values(&v1), 4, &probe).unwrap().limit;
        let l2 = clim(&trace_from_values(&v2), 4, &probe).unwrap().limit;
        let lm = clim(&trace_from_values(&mix), 4, &probe).unwrap().limit;
        prop_assert!((l2 - c(-0.5, 0.0)).norm() < 1e-7);
        prop_assert!((lm - (l1 * a + l2 * b)).norm() < 1e-7 * (1.0 + a.abs() + b.abs()));
    }
}

#[test]
fn constant_trace_is_a_fixed_point() {
    for v in [c(3.0, 0.0), c(-1.5, 2.25)] {
        let ray = Ray::new(c(0.0, 0.0), Direction::PosReal);
        let tr = PSumTrace::new(ray, vec![(0.0, v)]).unwrap();
        let out = clim(&tr, 4, &LimitProbe::default()).unwrap();
        assert_eq!(out.limit, v);
        assert_eq!(out.averaging_power, 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// Σ (z₀ + j) stripped in z converges; stripped in t it drifts like ln t.
    #[test]
    fn stripping_needs_the_geometric_variable(re0 in -1.0f64..1.0, im0 in 0.3f64..1.5, sign in prop::bool::ANY) {
        let z0 = c(re0, if sign { im0 } else { -im0 });
        let em = em_power_expansion(z0, c(-1.0, 0.0), 0).unwrap();
        let probe = LimitProbe::default();
        let ray = Ray::new(z0, Direction::PosReal);
        let tr = PSumTrace::from_summand(ray, 1.0, probe.last_point() as usize + 2, Some).unwrap();
        let good = clim(&strip_geometric(&tr, &em.smooth_part).unwrap(), 4, &probe).unwrap();
        let expect = -(z0 * z0 + z0) * 0.5 - 1.0 / 12.0;
        prop_assert!((good.limit - expect).norm() < 1e-7, "{} vs {}", good.limit, expect);
        let in_t = AsymptoticExpansion::new(em.smooth_part.terms().iter().copied(), false);
        let bad = clim(&strip_parametric(&tr, &in_t).unwrap(), 4, &probe);
        prop_assert!(matches!(bad, Err(CesaroError::NotCesaroSummable(_))), "{bad:?}");
    }
}

#[test]
fn ray_through_a_pole_is_rejected_up_front() {
    let ray = Ray::new(c(-3.0, 0.0), Direction::PosReal);
    let r = PSumTrace::from_summand(ray, 1.0, 10, |z| (z != c(0.0, 0.0)).then(|| z.ln()));
    assert!(matches!(r, Err(CesaroError::Pole(_))));
}
