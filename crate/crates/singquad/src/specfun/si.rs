//! The sine integral `Si` and the Bessel integral `int_0^rho J_0`, each by
//! the same three-regime scheme: Maclaurin series near zero, a precomputed
//! anchor ladder with one quadrature panel in the middle range, and an
//! asymptotic form past the last anchor.

use once_cell::sync::Lazy;
use std::f64::consts::{FRAC_PI_2, PI};

use super::bessel;
use super::quadrule::CC64;
use super::radial::m2_tail_at;

/// Upper end of the pure-series regime.
const SERIES_END: f64 = PI;
/// Anchors sit at j * pi/2 for j = 2..=28 (pi through 14 pi).
const LAST_ANCHOR_J: usize = 28;

struct Anchors {
    si: Vec<f64>,
    ij0: Vec<f64>,
}

static ANCHORS: Lazy<Anchors> = Lazy::new(|| {
    let mut si = vec![0.0; LAST_ANCHOR_J + 1];
    let mut ij0 = vec![0.0; LAST_ANCHOR_J + 1];
    si[2] = si_series(PI);
    ij0[2] = ij0_series(PI);
    for j in 3..=LAST_ANCHOR_J {
        let (a, b) = ((j - 1) as f64 * FRAC_PI_2, j as f64 * FRAC_PI_2);
        si[j] = si[j - 1] + CC64.integrate(a, b, bessel::sinc);
        ij0[j] = ij0[j - 1] + CC64.integrate(a, b, bessel::j0);
    }
    Anchors { si, ij0 }
});

fn si_series(rho: f64) -> f64 {
    // sum (-1)^l rho^{2l+1} / ((2l+1) (2l+1)!)
    let q = rho * rho;
    let mut term = rho;
    let mut sum = rho;
    for l in 1..40 {
        let tl = 2 * l;
        term *= -q / ((tl * (tl + 1)) as f64);
        sum += term / (tl + 1) as f64;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn ij0_series(rho: f64) -> f64 {
    // sum (-1)^l rho^{2l+1} / (4^l (l!)^2 (2l+1))
    let q = 0.25 * rho * rho;
    let mut term = rho;
    let mut sum = rho;
    for l in 1..40 {
        term *= -q / ((l * l) as f64);
        sum += term / (2 * l + 1) as f64;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Auxiliary-function asymptotics: Si = pi/2 - cos(rho) f - sin(rho) g with
/// the divergent tails truncated at their smallest term.
fn si_asymptotic(rho: f64) -> f64 {
    let q = rho * rho;
    let mut f = 0.0;
    let mut term = 1.0 / rho;
    let mut k = 0u32;
    loop {
        f += term;
        let next = term * ((2 * k + 1) * (2 * k + 2)) as f64 / q;
        if next.abs() >= term.abs() || next.abs() < 1e-18 * f.abs() {
            break;
        }
        term = -next;
        k += 1;
    }
    let mut g = 0.0;
    let mut term = 1.0 / q;
    let mut k = 0u32;
    loop {
        g += term;
        let next = term * ((2 * k + 2) * (2 * k + 3)) as f64 / q;
        if next.abs() >= term.abs() || next.abs() < 1e-18 * g.abs() {
            break;
        }
        term = -next;
        k += 1;
    }
    FRAC_PI_2 - rho.cos() * f - rho.sin() * g
}

/// `Si(rho) = int_0^rho sin(t)/t dt`, `rho >= 0`.
pub fn sine_integral(rho: f64) -> f64 {
    debug_assert!(rho >= 0.0);
    if rho <= SERIES_END {
        si_series(rho)
    } else if rho > LAST_ANCHOR_J as f64 * FRAC_PI_2 {
        si_asymptotic(rho)
    } else {
        let j = ((rho / FRAC_PI_2).floor() as usize).clamp(2, LAST_ANCHOR_J);
        ANCHORS.si[j] + CC64.integrate(j as f64 * FRAC_PI_2, rho, bessel::sinc)
    }
}

/// `int_0^rho J_0(t) dt`, `rho >= 0`.
pub fn j0_integral(rho: f64) -> f64 {
    debug_assert!(rho >= 0.0);
    let last = LAST_ANCHOR_J as f64 * FRAC_PI_2;
    if rho <= SERIES_END {
        ij0_series(rho)
    } else if rho > super::radial::M2_TAIL_START {
        // int_a^rho t^{mu-1} J0 with mu = 1 is rho * I_a^N(1, rho)
        j0_integral_at_tail_start() + rho * m2_tail_at(1.0, rho)
    } else {
        let j = ((rho / FRAC_PI_2).floor() as usize).clamp(2, LAST_ANCHOR_J);
        let base = (j as f64 * FRAC_PI_2).min(last);
        ANCHORS.ij0[j] + CC64.integrate(base, rho, bessel::j0)
    }
}

fn j0_integral_at_tail_start() -> f64 {
    static VALUE: Lazy<f64> = Lazy::new(|| {
        let a = super::radial::M2_TAIL_START;
        ANCHORS.ij0[LAST_ANCHOR_J]
            + CC64.integrate(LAST_ANCHOR_J as f64 * FRAC_PI_2, a, bessel::j0)
    });
    *VALUE
}
