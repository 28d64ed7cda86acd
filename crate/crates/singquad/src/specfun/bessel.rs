//! Bessel functions of integer order, real and complex argument.
//!
//! The real-argument J and Y routines are backed by `libm` (the Rust port of
//! the classic FreeBSD routines, good to a couple of ulp relative to the
//! oscillation amplitude). Complex arguments are only needed with small or
//! purely imaginary `Re(z) = 0` content by the kernel factorizations, where
//! the power series is stable.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `J_n(t)` for integer order `n >= 0`.
pub fn bessel_j(order: i64, t: f64) -> Result<f64> {
    if order < 0 {
        return Err(Error::Domain(format!("bessel_j: negative order {order}")));
    }
    Ok(match order {
        0 => libm::j0(t),
        1 => libm::j1(t),
        n => libm::jn(n as i32, t),
    })
}

pub fn j0(t: f64) -> f64 {
    libm::j0(t)
}

pub fn j1(t: f64) -> f64 {
    libm::j1(t)
}

/// `Y_0(t)`, `t > 0`. Needed by the boundary-integral kernels.
pub fn y0(t: f64) -> f64 {
    libm::y0(t)
}

/// `Y_1(t)`, `t > 0`.
pub fn y1(t: f64) -> f64 {
    libm::y1(t)
}

/// `sin(t)/t` with the removable singularity filled in.
pub fn sinc(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        t.sin() / t
    }
}

/// `J_0(z)` for complex argument by the power series. Stable for purely
/// imaginary z (all terms positive) and for moderate `|Re z|`.
pub fn j0_complex(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return Complex64::new(libm::j0(z.re), 0.0);
    }
    let q = -(z * z) * 0.25;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..400 {
        term = term * q / ((k * k) as f64);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// `J_1(z)` for complex argument by the power series.
pub fn j1_complex(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return Complex64::new(libm::j1(z.re), 0.0);
    }
    let q = -(z * z) * 0.25;
    let mut term = z * 0.5;
    let mut sum = term;
    for k in 1..400 {
        term = term * q / ((k * (k + 1)) as f64);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// The `s`-th positive zero of `J_1`, by Newton refinement of the McMahon
/// approximation.
pub fn j1_zero(s: usize) -> f64 {
    assert!(s >= 1);
    let beta = (s as f64 + 0.25) * std::f64::consts::PI;
    let mu = 4.0; // 4 nu^2 with nu = 1
    let mut x = beta - (mu + 3.0) / (8.0 * beta)
        - 4.0 * (7.0 * mu * mu + 82.0 * mu - 9.0) / (3.0 * (8.0 * beta).powi(3));
    for _ in 0..50 {
        let f = libm::j1(x);
        let df = libm::j0(x) - libm::j1(x) / x;
        let step = f / df;
        x -= step;
        if step.abs() < 1e-15 * x {
            break;
        }
    }
    x
}
