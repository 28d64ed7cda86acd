//! Machine-precision evaluation of the special functions behind the Fourier
//! transforms of truncated singularities: the normalized Bessel kernels
//! `A_m`, the moment integrals `L_m` and `M^(mu)_m`, the sine integral,
//! `int_0^rho J_0`, the generalized cosine integral, and integer-order
//! Bessel functions.

mod bessel;
mod quadrule;
mod radial;
mod si;

pub use bessel::{bessel_j, j0, j0_complex, j1, j1_complex, j1_zero, y0, y1};
pub use radial::{
    a_fun, a_fun_complex, gen_cosine_integral, l_fun, m1_regimes, m1_tail, m2_regimes, m2_tail,
    m_fun, EvalRegime, PrecomputedAnchors, RegimeKind, M1_TAIL_START, M2_TAIL_START,
};
pub use si::{j0_integral, sine_integral};

pub(crate) use bessel::sinc;
pub(crate) use radial::a_fun_extended;

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn a_fun_trivial() {
        for m in 1..=10 {
            assert_eq!(a_fun(m, 0.0).unwrap(), 1.0);
        }
        assert!(a_fun(0, 1.0).is_err());
        assert!(a_fun(-2, 1.0).is_err());
    }

    #[test]
    fn a2_is_j0() {
        for &t in &[0.1, 1.0, 5.5, 17.0, 103.0] {
            assert_eq!(a_fun(2, t).unwrap(), j0(t));
        }
    }

    #[test]
    fn a5_closed_form() {
        // A_5(t) = 3 (sin t - t cos t) / t^3, so A_5(pi) = 3 / pi^2
        let v = a_fun(5, PI).unwrap();
        assert!((v - 3.0 / (PI * PI)).abs() < 1e-15);
        for &t in &[3.0_f64, 8.0, 21.0] {
            let explicit = 3.0 * (t.sin() - t * t.cos()) / (t * t * t);
            assert!((a_fun(5, t).unwrap() - explicit).abs() < 1e-14);
        }
    }

    #[test]
    fn l_fun_trivial_and_l1() {
        for m in 1..=9 {
            assert!((l_fun(m, 0.0).unwrap() - 1.0 / m as f64).abs() < 1e-15);
        }
        for &rho in &[0.7, 2.0, 9.3, 30.0] {
            let v = l_fun(1, rho).unwrap();
            assert!((v - sine_integral(rho) / rho).abs() < 1e-15);
        }
        assert!(l_fun(0, 1.0).is_err());
    }

    // L_4(3.7): adaptive quadrature of int_0^1 t^3 A_6(3.7 t) dt
    #[test]
    fn l4_quadrature_value() {
        let v = l_fun(4, 3.7).unwrap();
        assert!(
            (v - 0.110952032491730351748).abs() < 1e-15,
            "L_4(3.7) = {v:.18}"
        );
    }

    #[test]
    fn m_fun_trivial() {
        for m in 1..=6 {
            for &mu in &[0.3, 0.5, 1.0, 1.7, 2.0] {
                let v = m_fun(mu, m, 0.0).unwrap();
                assert!((v - m as f64 / mu).abs() < 1e-14);
            }
        }
        assert!(m_fun(2.5, 1, 1.0).is_err());
        assert!(m_fun(-0.3, 1, 1.0).is_err());
        assert!(m_fun(1.0, 0, 1.0).is_err());
    }

    #[test]
    fn m_mu2_closed_forms() {
        // M^(2)_2 = A_4
        for &rho in &[0.3, 2.0, 11.0, 60.0] {
            let v = m_fun(2.0, 2, rho).unwrap();
            assert!((v - a_fun(4, rho).unwrap()).abs() < 1e-13);
        }
        // M^(2)_1 matches the defining integral int_0^1 t cos(rho t) dt
        for &rho in &[0.4_f64, 1.0, 3.0, 20.0] {
            let exact = rho.sin() / rho + (rho.cos() - 1.0) / (rho * rho);
            assert!((m_fun(2.0, 1, rho).unwrap() - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn m_mu1_closed_forms() {
        for &rho in &[0.8, 4.0, 15.0, 80.0] {
            let v = m_fun(1.0, 3, rho).unwrap();
            assert!((v - 3.0 * sine_integral(rho) / rho).abs() < 1e-13);
            let v2 = m_fun(1.0, 2, rho).unwrap();
            assert!((v2 - 2.0 / rho * j0_integral(rho)).abs() < 1e-13);
        }
    }

    #[test]
    fn m_equals_a_when_mu_is_m() {
        // M^(m)_m = A_{m+2} for m = 1, 2
        for &rho in &[0.2, 1.5, 6.0, 33.0] {
            assert!((m_fun(1.0, 1, rho).unwrap() - a_fun(3, rho).unwrap()).abs() < 1e-13);
            assert!((m_fun(2.0, 2, rho).unwrap() - a_fun(4, rho).unwrap()).abs() < 1e-13);
        }
    }

    // M^(0.5)_1(9.0) = 9^{-1/2} int_0^9 t^{-1/2} cos t dt
    #[test]
    fn m1_bridge_value() {
        let v = m_fun(0.5, 1, 9.0).unwrap();
        assert!(
            (v - 0.468575705153512486783).abs() < 2e-15,
            "M^(0.5)_1(9) = {v:.18}"
        );
    }

    #[test]
    fn gen_cosine_elementary() {
        // Ci(1, rho) = sin rho
        for &rho in &[0.5, 2.0, 9.0] {
            assert!((gen_cosine_integral(1.0, rho).unwrap() - rho.sin()).abs() < 1e-14);
        }
        assert_eq!(gen_cosine_integral(0.7, 0.0).unwrap(), 0.0);
        assert!(gen_cosine_integral(-0.1, 1.0).is_err());
    }

    // Ci(0.7, 12.0): adaptive quadrature of the defining integral
    #[test]
    fn gen_cosine_quadrature_value() {
        let v = gen_cosine_integral(0.7, 12.0).unwrap();
        assert!(
            (v - 0.325533558018593413928).abs() < 2e-14,
            "Ci(0.7, 12) = {v:.18}"
        );
    }

    #[test]
    fn tails_reject_small_rho() {
        assert!(m1_tail(0.5, 10.0).is_err());
        assert!(m2_tail(0.5, 10.0).is_err());
        // at rho = a the tail is an empty integral
        assert!(m1_tail(0.7, M1_TAIL_START).unwrap().abs() < 1e-15);
        assert!(m2_tail(0.7, M2_TAIL_START).unwrap().abs() < 1e-15);
    }

    // m1_tail(0.5, 50) = 50^{-0.5} int_{14 pi}^50 t^{-0.5} cos t dt
    #[test]
    fn m1_tail_quadrature_value() {
        let v = m1_tail(0.5, 50.0).unwrap();
        assert!(
            (v - (-0.00519668015063274455634)).abs() < 1e-16,
            "m1_tail(0.5, 50) = {v:.18}"
        );
    }

    // m2_tail(1.3, 60) = 60^{-1.3} int_{j_{1,14}}^60 t^{0.3} J_0(t) dt
    #[test]
    fn m2_tail_quadrature_value() {
        let v = m2_tail(1.3, 60.0).unwrap();
        assert!(
            (v - 0.000822751357257715271401).abs() < 1e-16,
            "m2_tail(1.3, 60) = {v:.18}"
        );
    }

    #[test]
    fn anchors_are_ordered() {
        let anchors = PrecomputedAnchors::new(0.8).unwrap();
        for pair in anchors.m1_anchors().windows(2) {
            assert!(pair[0].0 < pair[1].0);
        }
        for pair in anchors.m2_anchors().windows(2) {
            assert!(pair[0].0 < pair[1].0);
        }
        assert!((anchors.m1_anchors()[0].0 - 2.0 * PI).abs() < 1e-12);
        assert!((anchors.m2_anchors()[0].0 - 7.01558666981561875).abs() < 1e-12);
        assert!((anchors.m2_anchors()[6].0 - M2_TAIL_START).abs() < 1e-10);
    }

    #[test]
    fn regime_tables_are_ordered() {
        for table in [m1_regimes(), m2_regimes()] {
            assert_eq!(table[0].kind, RegimeKind::SeriesSmallArg);
            assert_eq!(table.last().unwrap().kind, RegimeKind::AsymptoticTail);
            for pair in table.windows(2) {
                assert!(pair[0].crossover < pair[1].crossover);
            }
        }
    }

    #[test]
    fn si_j0int_consistency_with_m() {
        // M^(1)_2(rho) = (2/rho) int_0^rho J_0 for rho in {1, 5, 20}
        for &rho in &[1.0, 5.0, 20.0] {
            let lhs = m_fun(1.0, 2, rho).unwrap();
            let rhs = 2.0 / rho * j0_integral(rho);
            assert!((lhs - rhs).abs() < 1e-14);
        }
    }
}
