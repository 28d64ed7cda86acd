//! Independent reference computations used by tests, acceptance suites and
//! the convergence drivers: adaptive Gauss-Kronrod quadrature, the exact
//! Gaussian potentials, and a brute-force DFT.
//!
//! Nothing here shares code with the evaluation paths it is used to check.

use num_complex::Complex64;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::IndexSet;

/// Tolerances and budget for the adaptive integrator.
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveQuadSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for AdaptiveQuadSpec {
    fn default() -> Self {
        AdaptiveQuadSpec {
            rel_tol: 1e-13,
            abs_tol: 1e-15,
            max_subdivisions: 4000,
        }
    }
}

impl AdaptiveQuadSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        AdaptiveQuadSpec {
            rel_tol,
            ..Default::default()
        }
    }
}

// 15-point Kronrod / 7-point Gauss pair (positive abscissae).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One Gauss-Kronrod 15/7 panel. Returns (kronrod value, error estimate,
/// integral of |f|).
fn qk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kronrod = Complex64::default();
    let mut gauss = Complex64::default();
    let mut resabs = 0.0;
    for (i, (&x, &wk)) in XGK.iter().zip(&WGK).enumerate() {
        let (v, norm) = if x == 0.0 {
            let v = f(c);
            (v, v.norm())
        } else {
            let v1 = f(c - h * x);
            let v2 = f(c + h * x);
            (v1 + v2, v1.norm() + v2.norm())
        };
        kronrod += wk * v;
        resabs += wk * norm;
        if i % 2 == 1 {
            gauss += WG[i / 2] * v;
        }
    }
    let err = (kronrod - gauss).norm() * h.abs();
    (kronrod * h, err, resabs * h.abs())
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    resabs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive integration of a complex-valued function on `[a, b]`.
///
/// Worst-panel-first bisection; endpoint singularities (log or integrable
/// power) are handled by the dyadic grading this produces towards the
/// singular end, and the open Kronrod rule never evaluates at panel ends.
pub fn adaptive_integrate_complex<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    spec: AdaptiveQuadSpec,
) -> Result<(Complex64, f64)> {
    if a == b {
        return Ok((Complex64::default(), 0.0));
    }
    let mut heap = BinaryHeap::new();
    let (v, e, ra) = qk15(&f, a, b);
    heap.push(Panel {
        a,
        b,
        value: v,
        err: e,
        resabs: ra,
    });
    let mut total = v;
    let mut total_err = e;
    let mut total_resabs = ra;
    for _ in 0..spec.max_subdivisions {
        // success: requested tolerance, or the rounding floor of the
        // panel sums (the estimate cannot drop below ~eps * int |f|)
        let floor = 100.0 * f64::EPSILON * total_resabs;
        if total_err <= spec.abs_tol.max(spec.rel_tol * total.norm()).max(floor) {
            return Ok((total, total_err));
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval collapsed to machine precision; keep its estimate
            total_err = heap.iter().map(|p| p.err).sum::<f64>() + worst.err;
            heap.push(worst);
            return Err(Error::Quadrature(format!(
                "panel collapsed with residual error {total_err:.3e}"
            )));
        }
        let (v1, e1, r1) = qk15(&f, worst.a, mid);
        let (v2, e2, r2) = qk15(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        total_resabs += r1 + r2 - worst.resabs;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            err: e1,
            resabs: r1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            err: e2,
            resabs: r2,
        });
        // refresh the accumulated sums periodically to avoid drift
        if heap.len() % 64 == 0 {
            total_err = heap.iter().map(|p| p.err).sum();
            total = heap.iter().map(|p| p.value).sum();
            total_resabs = heap.iter().map(|p| p.resabs).sum();
        }
    }
    Err(Error::Quadrature(format!(
        "subdivision budget exhausted, error estimate {total_err:.3e}"
    )))
}

/// Adaptive integration of a real function on `[a, b]`.
pub fn adaptive_integrate_1d<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: AdaptiveQuadSpec,
) -> Result<(f64, f64)> {
    let (v, e) = adaptive_integrate_complex(|t| Complex64::new(f(t), 0.0), a, b, spec)?;
    Ok((v.re, e))
}

/// Iterated 2-D adaptive integration over the rectangle `[ax,bx] x [ay,by]`.
/// Test-grade only: cost is the product of the two 1-D costs.
pub fn adaptive_integrate_2d<F: Fn(f64, f64) -> Complex64 + Sync>(
    f: F,
    ax: f64,
    bx: f64,
    ay: f64,
    by: f64,
    spec: AdaptiveQuadSpec,
) -> Result<(Complex64, f64)> {
    let inner_spec = AdaptiveQuadSpec {
        rel_tol: spec.rel_tol * 0.1,
        abs_tol: spec.abs_tol * 0.1,
        ..spec
    };
    adaptive_integrate_complex(
        |x| {
            adaptive_integrate_complex(|y| f(x, y), ay, by, inner_spec)
                .map(|(v, _)| v)
                .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
        },
        ax,
        bx,
        spec,
    )
}

/// Exponential integral `E_1(x)` for `x > 0`, accurate to ~1e-14 relative.
pub fn exp_integral_e1(x: f64) -> f64 {
    assert!(x > 0.0, "E1 requires positive argument");
    if x <= 1.0 {
        // E1 = -gamma - ln x + sum (-1)^{k+1} x^k / (k k!)
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..40 {
            term *= -x / k as f64;
            let add = -term / k as f64;
            sum += add;
            if add.abs() < 1e-17 * sum.abs().max(1.0) {
                break;
            }
        }
        -EULER_GAMMA - x.ln() + sum
    } else {
        // modified Lentz continued fraction: E1 = e^{-x} / (x + 1 - 1/(x + 3 - 4/(...)))
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..200 {
            let a = -(i as f64) * (i as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (-x).exp() * h
    }
}

pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;

/// Modified Bessel function `I_0(x)` by its (all-positive) power series.
pub fn bessel_i0(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..400 {
        term *= q / ((k * k) as f64);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

/// Modified Bessel function `K_0(x)`, via the ascending series for small
/// arguments and the integral representation `int_0^inf e^{-x cosh t} dt`
/// (adaptive) beyond it.
pub fn bessel_k0(x: f64) -> f64 {
    assert!(x > 0.0, "K0 requires positive argument");
    if x <= 2.0 {
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut h = 0.0;
        let mut sum = 0.0;
        for k in 1..60 {
            term *= q / ((k * k) as f64);
            h += 1.0 / k as f64;
            sum += term * h;
            if term * h < 1e-17 * sum.max(1.0) {
                break;
            }
        }
        -((x / 2.0).ln() + EULER_GAMMA) * bessel_i0(x) + sum
    } else {
        let t_max = ((745.0 / x).max(4.0)).acosh() + 1.0;
        let (v, _) = adaptive_integrate_1d(
            |t| (-x * t.cosh()).exp(),
            0.0,
            t_max,
            AdaptiveQuadSpec::with_rel_tol(1e-14),
        )
        .expect("K0 integral converges");
        v
    }
}

const GAUSS_A: f64 = 0.5;

/// The exact potentials `K^0_n * f_G` for the Gaussian source
/// `f_G(r) = exp(-(r/a)^2)` with `a = 1/2`, for the supported `(m, n)` pairs.
pub fn exact_gaussian_potential(m: usize, n: usize, r: f64) -> Result<f64> {
    let a = GAUSS_A;
    let rho = r / a;
    match (m, n) {
        (2, 2) => {
            // (a^2/4) log( exp(-E1(rho^2)) / rho^2 ) - (a^2/2) log a, where
            // -E1(rho^2) - 2 ln rho is continuous at 0 with value gamma.
            let core = if rho < 1e-8 {
                EULER_GAMMA
            } else {
                -exp_integral_e1(rho * rho) - 2.0 * rho.ln()
            };
            Ok(a * a / 4.0 * core - a * a / 2.0 * a.ln())
        }
        (2, 3) => {
            let h = 0.5 * rho * rho;
            Ok(a * PI.sqrt() / 4.0 * i0_scaled(h))
        }
        (3, 3) => {
            if rho < 1e-8 {
                Ok(a * a / 2.0 * (1.0 - rho * rho / 3.0))
            } else {
                Ok(a * a * PI.sqrt() / 4.0 * libm::erf(rho) / rho)
            }
        }
        (3, 4) => {
            let h = 0.5 * rho * rho;
            Ok(a / (2.0 * PI.sqrt()) * exact_34_integral(h)?)
        }
        _ => Err(Error::Domain(format!(
            "exact Gaussian potential unsupported for (m, n) = ({m}, {n})"
        ))),
    }
}

// exp(-h) * int_0^1 exp(-h t^2) I0(h (1 - t^2)) dt, evaluated stably:
// exp(-h - h t^2) I0(h (1-t^2)) = exp(-2 h t^2) [exp(-h(1-t^2)) I0(h(1-t^2))]
fn exact_34_integral(h: f64) -> Result<f64> {
    let (v, _) = adaptive_integrate_1d(
        |t| {
            let z = h * (1.0 - t * t);
            (-2.0 * h * t * t).exp() * i0_scaled(z)
        },
        0.0,
        1.0,
        AdaptiveQuadSpec::with_rel_tol(1e-14),
    )?;
    Ok(v)
}

/// `e^{-z} I_0(z)`, stable for large z.
fn i0_scaled(z: f64) -> f64 {
    if z < 30.0 {
        (-z).exp() * bessel_i0(z)
    } else {
        // asymptotic I0(z) ~ e^z / sqrt(2 pi z) (1 + 1/(8z) + 9/(128 z^2) + ...)
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..20 {
            let kf = k as f64;
            term *= (2.0 * kf - 1.0) * (2.0 * kf - 1.0) / (8.0 * kf * z);
            sum += term;
            if term < 1e-17 {
                break;
            }
        }
        sum / (2.0 * PI * z).sqrt()
    }
}

/// Direct `O(N^2)` DFT with the `1/(2^m Nbar)` normalization; the oracle for
/// the FFT path.
pub fn brute_dft(data: &[Complex64], n: &[usize]) -> Vec<Complex64> {
    let set = IndexSet::new(n);
    assert_eq!(data.len(), set.len());
    let total = set.len() as f64;
    let mut out = vec![Complex64::default(); set.len()];
    for (kp, k) in set.iter().enumerate() {
        let mut acc = Complex64::default();
        for (lp, l) in set.iter().enumerate() {
            let phase: f64 = k
                .iter()
                .zip(&l)
                .zip(n)
                .map(|((&kj, &lj), &nj)| PI * kj as f64 * lj as f64 / nj as f64)
                .sum();
            acc += data[lp] * Complex64::from_polar(1.0, -phase);
        }
        out[kp] = acc / total;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_integrals() {
        let spec = AdaptiveQuadSpec::default();
        let (v, _) = adaptive_integrate_1d(|t| t.ln(), 0.0, 1.0, spec).unwrap();
        assert!((v + 1.0).abs() < 1e-13);
        let (v, _) = adaptive_integrate_1d(|t| 1.0 / t.sqrt(), 0.0, 1.0, spec).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        let (v, _) = adaptive_integrate_1d(|t| (3.0 * t).sin(), 0.0, 2.0, spec).unwrap();
        assert!((v - (1.0 - (6.0_f64).cos()) / 3.0).abs() < 1e-13);
    }

    #[test]
    fn e1_known_values() {
        // reference values: high-precision quadrature of the defining integral
        assert!((exp_integral_e1(1.0) - 0.219383934395520273677).abs() < 1e-15);
        assert!((exp_integral_e1(0.5) - 0.559773594776160811747).abs() < 1e-15);
        assert!((exp_integral_e1(5.0) - 1.14829559127532579733e-3).abs() < 1e-17);
        assert!((exp_integral_e1(25.0) - 5.34889975534021664033e-13).abs() < 1e-26);
    }

    #[test]
    fn i0_k0_known_values() {
        assert!((bessel_i0(1.0) - 1.2660658777520083356).abs() < 1e-14);
        assert!((bessel_i0(10.0) - 2815.71662846625447147).abs() < 1e-10);
        assert!((bessel_k0(1.0) - 0.421024438240708333336).abs() < 1e-14);
        assert!((bessel_k0(5.0) - 3.69109833404259427474e-3).abs() < 1e-16);
        assert!((bessel_k0(20.0) - 5.74123781533652429272e-10).abs() < 1e-23);
    }

    #[test]
    fn gaussian_potentials_at_origin() {
        let a = 0.5_f64;
        // (2,2): a^2 gamma / 4 - a^2/2 ln a
        let u = exact_gaussian_potential(2, 2, 0.0).unwrap();
        assert!((u - (a * a * EULER_GAMMA / 4.0 - a * a / 2.0 * a.ln())).abs() < 1e-14);
        // (2,3): a sqrt(pi) / 4
        let u = exact_gaussian_potential(2, 3, 0.0).unwrap();
        assert!((u - a * PI.sqrt() / 4.0).abs() < 1e-14);
        // (3,3): a^2/2 = 1/8
        let u = exact_gaussian_potential(3, 3, 0.0).unwrap();
        assert!((u - 0.125).abs() < 1e-14);
        // (3,4): a/(2 sqrt(pi)) at rho = 0
        let u = exact_gaussian_potential(3, 4, 0.0).unwrap();
        assert!((u - a / (2.0 * PI.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn gaussian_potential_22_matches_radial_integral() {
        // -1/(2pi) int ln|x-y| f_G(y) dy recentered on the target: the
        // angular integral gives I0 and leaves a 1-D radial integral with an
        // integrable log endpoint,
        //   u(r) = -int_0^inf ln(s) s e^{-(s-r)^2/a^2} i0_scaled(2 s r/a^2) ds / a^2-free form
        let a = 0.5_f64;
        for &r in &[0.0, 0.3, 1.0, 1.7] {
            let f = |s: f64| {
                let z = 2.0 * s * r / (a * a);
                -s.ln() * s * (-((s - r) / a).powi(2)).exp() * i0_scaled(z)
            };
            let (v, _) =
                adaptive_integrate_1d(f, 0.0, r + 5.0, AdaptiveQuadSpec::with_rel_tol(1e-13))
                    .unwrap();
            let exact = exact_gaussian_potential(2, 2, r).unwrap();
            assert!(
                (v - exact).abs() < 1e-12,
                "radial {v} vs closed form {exact} at r = {r}"
            );
        }
    }

    #[test]
    fn iterated_2d_known_value() {
        // int_0^1 int_0^1 1/(1 + x y) = pi^2 / 12
        let spec = AdaptiveQuadSpec::with_rel_tol(1e-12);
        let (v, _) = adaptive_integrate_2d(
            |x, y| Complex64::new(1.0 / (1.0 + x * y), 0.0),
            0.0,
            1.0,
            0.0,
            1.0,
            spec,
        )
        .unwrap();
        assert!((v.re - PI * PI / 12.0).abs() < 1e-11);
    }

    #[test]
    fn brute_dft_constant_input() {
        let n = [4usize];
        let data = vec![Complex64::new(2.5, 0.0); 8];
        let coeffs = brute_dft(&data, &n);
        let set = IndexSet::new(&n);
        for (p, k) in set.iter().enumerate() {
            let expect = if k[0] == 0 { 2.5 } else { 0.0 };
            assert!((coeffs[p].re - expect).abs() < 1e-13);
            assert!(coeffs[p].im.abs() < 1e-13);
        }
    }
}
