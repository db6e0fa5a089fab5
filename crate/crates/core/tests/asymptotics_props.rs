use cesaro::asymptotics::*;
use cesaro::Complex64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Akiyama–Tanigawa, which yields B₁ = +½.
fn akiyama_tanigawa(n: usize) -> BigRational {
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
        }
    }
    a[0].clone()
}

#[test]
fn bernoulli_table_matches_independent_recursion() {
    let table = bernoulli();
    for n in 0..=30 {
        assert_eq!(table.get(n), &akiyama_tanigawa(n), "B_{n}");
    }
    for k in 1..=14 {
        assert!(table.get(2 * k + 1).is_zero());
    }
}

fn zeta_ref(s: u32) -> f64 {
    match s {
        2 => std::f64::consts::PI.powi(2) / 6.0,
        3 => 1.202_056_903_159_594_3,
        4 => std::f64::consts::PI.powi(4) / 90.0,
        _ => unreachable!(),
    }
}

#[test]
fn em_residual_decays_at_predicted_rate() {
    for s in [2u32, 3, 4] {
        for order in [1usize, 2] {
            let em = em_power_expansion(c(0.0, 0.0), c(s as f64, 0.0), order).unwrap();
            let err = |k: usize| {
                let direct: f64 = (1..=k).rev().map(|j| (j as f64).powi(-(s as i32))).sum();
                let model = zeta_ref(s) + em.smooth_at(em.lattice_point(k)).re;
                (direct - model).abs()
            };
            let rate = (err(6) / err(12)).log2();
            let predicted = (s + 2 * order as u32 + 1) as f64;
            assert!((rate - predicted).abs() < 0.5, "s={s} order={order}: rate {rate}");
        }
    }
}

proptest! {
    #[test]
    fn regeometrize_round_trip(
        rho_re in -2.0f64..3.0, rho_im in -1.0f64..1.0,
        z0_re in 0.0f64..2.0, z0_im in -2.0f64..2.0,
        k in 8usize..200, alpha in 0.0f64..1.0, log in 0u32..2, depth in 3usize..8,
    ) {
        let rho = c(rho_re, rho_im);
        let term = LatticeTerm::new(c(1.0, 0.0), rho, log);
        let w = c(z0_re, z0_im) + k as f64;
        let z = w + alpha;
        let reg = binomial_regeometrize(term, depth);
        let diff = (reg.eval(z, alpha) - term.eval(w)).norm();
        let bound = reg.remainder_bound(z);
        prop_assert!(diff <= bound * (1.0 + 1e-9) + 1e-13 * (1.0 + term.eval(w).norm()), "{diff} > {bound}");
    }
}

#[test]
fn dilation_closes_eigenspaces() {
    // (r z)^ρ = r^ρ z^ρ and ln(r z) = ln r + ln z for r > 0, as expansion terms
    let z = c(1.7, -0.4);
    for r in [0.5, 2.0, 3.0] {
        for rho in [c(1.5, 0.5), c(-0.3, 0.0), c(2.0, 0.0)] {
            let t = cesaro::cesaro_core::AsymptoticTerm::new(c(1.0, 0.0), rho, 0);
            let scaled = cesaro::cesaro_core::AsymptoticTerm::new(c(r, 0.0).powc(rho), rho, 0);
            assert!((t.eval(z * r) - scaled.eval(z)).norm() < 1e-13);
        }
        let l = cesaro::cesaro_core::AsymptoticTerm::new(c(1.0, 0.0), c(0.0, 0.0), 1);
        assert!((l.eval(z * r) - (l.eval(z) + r.ln())).norm() < 1e-14);
    }
}
