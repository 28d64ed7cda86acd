//! The normalized Bessel kernels `A_m` and the moment integrals `L_m`
//! (logarithmic singularity) and `M^(mu)_m` (power-law singularity) that
//! make up the exact Fourier coefficients of truncated singularities.
//!
//! `A_m(t) = Gamma(m/2) J_{(m-2)/2}(t) / (t/2)^{(m-2)/2}` is entire, even,
//! `A_m(0) = 1`, `|A_m| <= 1`. `L_m(rho) = int_0^1 t^{m-1} A_{m+2}(rho t) dt`
//! and `M^(mu)_m(rho) = int_0^1 m t^{mu-1} A_m(rho t) dt`.
//!
//! Evaluation regimes: even Maclaurin series for small argument (the
//! upward recurrences cancel there), closed forms and upward recurrences in
//! the middle, and for the non-integer-mu base cases a piecewise anchor
//! bridge followed by an integration-by-parts asymptotic tail.

use num_complex::Complex64;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use super::bessel::{j0, j1, j1_zero, sinc};
use super::quadrule::CC64;
use super::si::{j0_integral, sine_integral};
use crate::error::{Error, Result};

/// Start of the asymptotic tail of `M^(mu)_1`: `14 pi`.
pub const M1_TAIL_START: f64 = 14.0 * PI;
/// Start of the asymptotic tail of `M^(mu)_2`: the 14th positive zero of `J_1`.
pub const M2_TAIL_START: f64 = 44.7593189976528217;
/// Orders of the integration-by-parts expansions.
const M1_TAIL_TERMS: usize = 13;
const M2_TAIL_TERMS: usize = 15;

const SERIES_MAX_TERMS: usize = 40;
const SERIES_CUTOFF: f64 = 1e-17;

/// How an operation is evaluated on a given argument range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeKind {
    SeriesSmallArg,
    ClosedForm,
    Recurrence,
    PiecewiseBridge,
    AsymptoticTail,
}

/// One evaluation regime and the argument threshold where the next one
/// takes over. Adjacent regimes agree at the crossover to <= 1e-14.
#[derive(Debug, Clone, Copy)]
pub struct EvalRegime {
    pub kind: RegimeKind,
    pub crossover: f64,
}

/// Regime table for the non-integer-mu base case `M^(mu)_1`.
pub fn m1_regimes() -> Vec<EvalRegime> {
    vec![
        EvalRegime {
            kind: RegimeKind::SeriesSmallArg,
            crossover: 2.0 * PI,
        },
        EvalRegime {
            kind: RegimeKind::PiecewiseBridge,
            crossover: M1_TAIL_START,
        },
        EvalRegime {
            kind: RegimeKind::AsymptoticTail,
            crossover: f64::INFINITY,
        },
    ]
}

/// Regime table for `M^(mu)_2`.
pub fn m2_regimes() -> Vec<EvalRegime> {
    vec![
        EvalRegime {
            kind: RegimeKind::SeriesSmallArg,
            crossover: j1_zero(2),
        },
        EvalRegime {
            kind: RegimeKind::PiecewiseBridge,
            crossover: M2_TAIL_START,
        },
        EvalRegime {
            kind: RegimeKind::AsymptoticTail,
            crossover: f64::INFINITY,
        },
    ]
}

// ---------------------------------------------------------------- A_m ----

fn a_series(m: f64, t: f64) -> f64 {
    let x2 = 0.25 * t * t;
    let mut c = 1.0;
    let mut sum = 1.0;
    for l in 0..SERIES_MAX_TERMS {
        c *= -x2 / ((l as f64 + 1.0) * (l as f64 + 0.5 * m));
        sum += c;
        if c.abs() < SERIES_CUTOFF * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn a_closed(m: i64, t: f64) -> f64 {
    match m {
        1 => t.cos(),
        2 => j0(t),
        3 => sinc(t),
        4 => {
            if t == 0.0 {
                1.0
            } else {
                2.0 * j1(t) / t
            }
        }
        _ => unreachable!(),
    }
}

pub(crate) fn a_fun_unchecked(m: i64, t: f64) -> f64 {
    let t = t.abs();
    if m <= 4 {
        if m >= 3 && t < 1e-3 {
            return a_series(m as f64, t);
        }
        return a_closed(m, t);
    }
    if t < 0.5 * m as f64 {
        return a_series(m as f64, t);
    }
    // three-term recurrence upward from the parity base
    let mut p = if m % 2 == 1 { 1 } else { 2 };
    let mut lo = a_closed(p, t);
    let mut hi = a_closed(p + 2, t);
    while p + 2 < m {
        let next = (p * (p + 2)) as f64 / (t * t) * (hi - lo);
        lo = hi;
        hi = next;
        p += 2;
    }
    hi
}

/// `A_m(t)` for integer `m >= 1`.
pub fn a_fun(m: i64, t: f64) -> Result<f64> {
    if m < 1 {
        return Err(Error::Domain(format!("a_fun: m = {m} must be >= 1")));
    }
    Ok(a_fun_unchecked(m, t))
}

/// `A_m` extended to the negative odd indices reached by the odd-dimension
/// Helmholtz factorizations (downward recurrence gives finite trig forms).
pub(crate) fn a_fun_extended(m: i64, t: f64) -> f64 {
    match m {
        -1 => t.cos() + t * t.sin(),
        -3 => (1.0 - t * t / 3.0) * t.cos() + t * t.sin(),
        m if m >= 1 => a_fun_unchecked(m, t),
        _ => panic!("A_m extension only defined for m in {{-3, -1}} below 1"),
    }
}

fn sinc_complex(z: Complex64) -> Complex64 {
    if z.norm() < 1e-12 {
        Complex64::new(1.0, 0.0) - z * z / 6.0
    } else {
        z.sin() / z
    }
}

/// `A_m(z)` for complex argument; odd indices (including -1, -3) use the
/// closed trig forms, the rest the power series (stable off the real axis
/// only for purely imaginary or moderate arguments, which is all the kernel
/// factorizations need).
pub fn a_fun_complex(m: i64, z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return Complex64::new(a_fun_extended(m, z.re), 0.0);
    }
    match m {
        -3 => (Complex64::new(1.0, 0.0) - z * z / 3.0) * z.cos() + z * z.sin(),
        -1 => z.cos() + z * z.sin(),
        1 => z.cos(),
        3 => sinc_complex(z),
        m if m >= 2 => {
            let q = -(z * z) * 0.25;
            let mut c = Complex64::new(1.0, 0.0);
            let mut sum = c;
            for l in 0..400 {
                c = c * q / ((l as f64 + 1.0) * (l as f64 + 0.5 * m as f64));
                sum += c;
                if c.norm() < 1e-17 * sum.norm().max(1e-300) {
                    break;
                }
            }
            sum
        }
        _ => panic!("A_m complex extension undefined for m = {m}"),
    }
}

// ---------------------------------------------------------------- L_m ----

fn l_series(m: f64, rho: f64) -> f64 {
    let x2 = 0.25 * rho * rho;
    let mut c = 1.0;
    let mut sum = 1.0 / m;
    for l in 0..SERIES_MAX_TERMS {
        c *= -x2 / ((l as f64 + 1.0) * (l as f64 + 1.0 + 0.5 * m));
        let add = c / (m + 2.0 * (l as f64 + 1.0));
        sum += add;
        if add.abs() < SERIES_CUTOFF * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// `L_m(rho) = int_0^1 t^{m-1} A_{m+2}(rho t) dt` for integer `m >= 1`.
pub fn l_fun(m: i64, rho: f64) -> Result<f64> {
    if m < 1 {
        return Err(Error::Domain(format!("l_fun: m = {m} must be >= 1")));
    }
    let rho = rho.abs();
    if rho < 0.5 * m as f64 {
        return Ok(l_series(m as f64, rho));
    }
    let mut p = if m % 2 == 1 { 1 } else { 2 };
    let mut cur = if p == 1 {
        sine_integral(rho) / rho
    } else {
        2.0 * (1.0 - j0(rho)) / (rho * rho)
    };
    while p < m {
        cur = (p + 2) as f64 / (rho * rho) * (p as f64 * cur - a_fun_unchecked(p + 2, rho));
        p += 2;
    }
    Ok(cur)
}

// ------------------------------------------------------------- M^(mu) ----

fn m_series(mu: f64, m: f64, rho: f64) -> f64 {
    let x2 = 0.25 * rho * rho;
    let mut c = 1.0;
    let mut sum = 1.0 / mu;
    for l in 0..SERIES_MAX_TERMS {
        c *= -x2 / ((l as f64 + 1.0) * (l as f64 + 0.5 * m));
        let add = c / (mu + 2.0 * (l as f64 + 1.0));
        sum += add;
        if add.abs() < SERIES_CUTOFF * sum.abs().max(1e-300) {
            break;
        }
    }
    m * sum
}

/// `P^N(mu, t)` of the cosine tail: `sum C_l t^{-2l}`,
/// `C_l = (-1)^l prod_{j=1}^{2l} (j - mu)`.
fn m1_tail_p(mu: f64, t: f64, terms: usize) -> f64 {
    let inv_t2 = 1.0 / (t * t);
    let mut c = 1.0;
    let mut tp = 1.0;
    let mut sum = 1.0;
    for l in 1..terms {
        let j1 = (2 * l - 1) as f64;
        let j2 = (2 * l) as f64;
        c *= -(j1 - mu) * (j2 - mu);
        tp *= inv_t2;
        sum += c * tp;
    }
    sum
}

fn m1_tail_terms(mu: f64, rho: f64, a: f64, terms: usize) -> f64 {
    let scale = (a / rho).powf(mu);
    rho.sin() / rho * m1_tail_p(mu, rho, terms)
        - scale * a.sin() / a * m1_tail_p(mu, a, terms)
        + rho.cos() / (rho * rho) * (mu - 1.0) * m1_tail_p(mu - 1.0, rho, terms)
        - scale * a.cos() / (a * a) * (mu - 1.0) * m1_tail_p(mu - 1.0, a, terms)
}

/// Truncated asymptotic expansion of `rho^{-mu} int_a^rho t^{mu-1} cos t dt`
/// from `a = 14 pi`, 13 terms; relative truncation error below 1e-16.
pub fn m1_tail(mu: f64, rho: f64) -> Result<f64> {
    if rho < M1_TAIL_START * (1.0 - 1e-12) {
        return Err(Error::Domain(format!(
            "m1_tail: rho = {rho} below the expansion start {M1_TAIL_START}"
        )));
    }
    Ok(m1_tail_terms(mu, rho, M1_TAIL_START, M1_TAIL_TERMS))
}

/// `P^N` and `Q^N` of the Bessel tail: `C_l = (-1)^l prod_{j=1}^l (2j - mu)^2`,
/// Q-coefficients `(mu - 2l - 2) C_l`.
fn m2_tail_pq(mu: f64, t: f64, terms: usize) -> (f64, f64) {
    let inv_t2 = 1.0 / (t * t);
    let mut c = 1.0;
    let mut tp = 1.0;
    let mut p = 1.0;
    let mut q = mu - 2.0;
    for l in 1..terms {
        let f = 2.0 * l as f64 - mu;
        c *= -f * f;
        tp *= inv_t2;
        p += c * tp;
        q += (mu - 2.0 * l as f64 - 2.0) * c * tp;
    }
    (p, q)
}

pub(crate) fn m2_tail_at(mu: f64, rho: f64) -> f64 {
    let a = M2_TAIL_START;
    let scale = (a / rho).powf(mu);
    let (p_rho, q_rho) = m2_tail_pq(mu, rho, M2_TAIL_TERMS);
    let (p_a, q_a) = m2_tail_pq(mu, a, M2_TAIL_TERMS);
    j1(rho) / rho * p_rho - scale * j1(a) / a * p_a + j0(rho) / (rho * rho) * q_rho
        - scale * j0(a) / (a * a) * q_a
}

/// Truncated asymptotic expansion of `rho^{-mu} int_a^rho t^{mu-1} J_0(t) dt`
/// from the 14th zero of `J_1`, 15 terms.
pub fn m2_tail(mu: f64, rho: f64) -> Result<f64> {
    if rho < M2_TAIL_START * (1.0 - 1e-12) {
        return Err(Error::Domain(format!(
            "m2_tail: rho = {rho} below the expansion start {M2_TAIL_START}"
        )));
    }
    Ok(m2_tail_at(mu, rho))
}

/// Anchor values `M^(mu)_1(a_n)`, `M^(mu)_2(a_n)` of the piecewise bridge,
/// precomputed once per `mu` and immutable afterwards.
#[derive(Debug, Clone)]
pub struct PrecomputedAnchors {
    mu: f64,
    /// `(a_n, M^(mu)_1(a_n))` with `a_n = 2 pi n`, `n = 1..=7`.
    m1: Vec<(f64, f64)>,
    /// `(a_n, M^(mu)_2(a_n))` with `a_n` the (2n)-th positive zero of `J_1`.
    m2: Vec<(f64, f64)>,
}

impl PrecomputedAnchors {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu <= 2.0) {
            return Err(Error::Domain(format!("anchors require mu in (0, 2], got {mu}")));
        }
        let mut m1 = Vec::with_capacity(7);
        let a1 = 2.0 * PI;
        m1.push((a1, m_series(mu, 1.0, a1)));
        for n in 2..=7 {
            let (a_prev, m_prev) = m1[n - 2];
            let a = 2.0 * PI * n as f64;
            let seg = CC64.integrate(a_prev, a, |t| t.powf(mu - 1.0) * t.cos());
            m1.push(((a), (a_prev / a).powf(mu) * m_prev + seg / a.powf(mu)));
        }
        let mut m2 = Vec::with_capacity(7);
        let b1 = j1_zero(2);
        m2.push((b1, m_series(mu, 2.0, b1)));
        for n in 2..=7 {
            let (a_prev, m_prev) = m2[n - 2];
            let a = j1_zero(2 * n);
            let seg = CC64.integrate(a_prev, a, |t| t.powf(mu - 1.0) * j0(t));
            m2.push((a, (a_prev / a).powf(mu) * m_prev + 2.0 * seg / a.powf(mu)));
        }
        Ok(PrecomputedAnchors { mu, m1, m2 })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn m1_anchors(&self) -> &[(f64, f64)] {
        &self.m1
    }

    pub fn m2_anchors(&self) -> &[(f64, f64)] {
        &self.m2
    }

    /// `M^(mu)_1(rho)` over all regimes.
    pub fn eval_m1(&self, rho: f64) -> f64 {
        let rho = rho.abs();
        if rho <= self.m1[0].0 {
            return m_series(self.mu, 1.0, rho);
        }
        if rho >= M1_TAIL_START {
            let (a, ma) = self.m1[6];
            return (a / rho).powf(self.mu) * ma + m1_tail_terms(self.mu, rho, a, M1_TAIL_TERMS);
        }
        let n = self
            .m1
            .iter()
            .rposition(|&(a, _)| a <= rho)
            .expect("rho above first anchor");
        let (a, ma) = self.m1[n];
        let seg = CC64.integrate(a, rho, |t| t.powf(self.mu - 1.0) * t.cos());
        (a / rho).powf(self.mu) * ma + seg / rho.powf(self.mu)
    }

    /// `M^(mu)_2(rho)` over all regimes.
    pub fn eval_m2(&self, rho: f64) -> f64 {
        let rho = rho.abs();
        if rho <= self.m2[0].0 {
            return m_series(self.mu, 2.0, rho);
        }
        if rho >= M2_TAIL_START {
            let (a, ma) = self.m2[6];
            return (a / rho).powf(self.mu) * ma + 2.0 * m2_tail_at(self.mu, rho);
        }
        let n = self
            .m2
            .iter()
            .rposition(|&(a, _)| a <= rho)
            .expect("rho above first anchor");
        let (a, ma) = self.m2[n];
        let seg = CC64.integrate(a, rho, |t| t.powf(self.mu - 1.0) * j0(t));
        (a / rho).powf(self.mu) * ma + 2.0 * seg / rho.powf(self.mu)
    }
}

static ANCHOR_CACHE: Lazy<Mutex<HashMap<u64, Arc<PrecomputedAnchors>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

pub(crate) fn anchors_for(mu: f64) -> Result<Arc<PrecomputedAnchors>> {
    let key = mu.to_bits();
    if let Some(a) = ANCHOR_CACHE.lock().unwrap().get(&key) {
        return Ok(a.clone());
    }
    let anchors = Arc::new(PrecomputedAnchors::new(mu)?);
    ANCHOR_CACHE
        .lock()
        .unwrap()
        .insert(key, anchors.clone());
    Ok(anchors)
}

fn is_near(x: f64, target: f64) -> bool {
    (x - target).abs() < 1e-12
}

/// `M^(mu)_m(rho) = int_0^1 m t^{mu-1} A_m(rho t) dt` for `mu` in `(0, 2]`,
/// integer `m >= 1`.
pub fn m_fun(mu: f64, m: i64, rho: f64) -> Result<f64> {
    if m < 1 {
        return Err(Error::Domain(format!("m_fun: m = {m} must be >= 1")));
    }
    if !(mu > 0.0 && mu <= 2.0) {
        return Err(Error::Domain(format!("m_fun: mu = {mu} outside (0, 2]")));
    }
    let rho = rho.abs();
    if rho < 0.5 * m as f64 {
        return Ok(m_series(mu, m as f64, rho));
    }
    if is_near(mu, 2.0) {
        return Ok(m_mu2(m, rho));
    }
    if is_near(mu, 1.0) {
        return Ok(m_mu1(m, rho));
    }
    // non-integer mu: bridge/tail base cases, then the recurrence
    // M_{m+2} = (m+2)/(m-mu) (M_m - A_{m+2})
    let anchors = anchors_for(mu)?;
    let (mut p, mut cur) = if m % 2 == 1 {
        (1, anchors.eval_m1(rho))
    } else {
        (2, anchors.eval_m2(rho))
    };
    while p < m {
        cur = (p + 2) as f64 / (p as f64 - mu) * (cur - a_fun_unchecked(p + 2, rho));
        p += 2;
    }
    Ok(cur)
}

/// Closed forms at `mu = 2` (`nu = m - 2`).
fn m_mu2(m: i64, rho: f64) -> f64 {
    match m {
        1 => sinc(rho) + (rho.cos() - 1.0) / (rho * rho),
        2 => a_fun_unchecked(4, rho),
        _ => {
            let mf = m as f64;
            mf * (mf - 2.0) / (rho * rho) * (1.0 - a_fun_unchecked(m - 2, rho))
        }
    }
}

/// Closed forms and recurrence at `mu = 1` (`nu = m - 1`).
fn m_mu1(m: i64, rho: f64) -> f64 {
    let base = match m % 2 {
        1 => {
            if m == 1 {
                return sinc(rho);
            }
            (3, 3.0 * sine_integral(rho) / rho)
        }
        _ => (2, 2.0 / rho * j0_integral(rho)),
    };
    let (mut p, mut cur) = base;
    while p < m {
        cur = (p + 2) as f64 / (p as f64 - 1.0) * (cur - a_fun_unchecked(p + 2, rho));
        p += 2;
    }
    cur
}


/// Generalized cosine integral `Ci(mu, rho) = int_0^rho t^{mu-1} cos t dt`.
pub fn gen_cosine_integral(mu: f64, rho: f64) -> Result<f64> {
    if !(mu > 0.0 && mu < 2.0 + 1e-12) {
        return Err(Error::Domain(format!(
            "gen_cosine_integral: mu = {mu} outside (0, 2]"
        )));
    }
    if rho == 0.0 {
        return Ok(0.0);
    }
    let m1 = if is_near(mu, 1.0) {
        return Ok(rho.sin());
    } else if is_near(mu, 2.0) {
        m_mu2(1, rho.abs())
    } else if rho.abs() < 0.5 {
        m_series(mu, 1.0, rho.abs())
    } else {
        anchors_for(mu)?.eval_m1(rho.abs())
    };
    Ok(rho.abs().powf(mu) * m1)
}
