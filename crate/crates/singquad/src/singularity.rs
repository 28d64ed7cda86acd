//! Exact Fourier coefficients of radially truncated singularities.
//!
//! For a radial singularity `phi` cut off outside the physical ball of
//! radius `R`, the coefficient at frequency `k` is radial in
//! `rho_k = pi R ||chi^{-T} k||` and reduces to the one-dimensional moment
//! integrals of [`crate::specfun`]:
//!
//! - `log r`:  `phihat = C_m R^m (log(R) A_{m+2}(rho) - L_m(rho))`
//! - `r^-nu`:  `phihat = C_m R^mu M^(mu)_m(rho)`, `mu = m - nu` in `(0, 2]`
//!
//! with `C_m = sqrt(pi)^m / (2^m |chi| Gamma(m/2 + 1))`.

use rayon::prelude::*;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::grid::{gamma_half, GridSpec};
use crate::specfun;

/// Which radial singularity is being truncated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingularityKind {
    /// `phi(r) = log(r)`.
    Log,
    /// `phi(r) = r^-nu`; requires `mu = m - nu` in `(0, 2]` (negative `nu`
    /// covers the bounded-but-unsmooth kernels like `phi = r`).
    Power(f64),
}

impl SingularityKind {
    /// Validate against the grid dimension, returning `mu` for power laws.
    pub fn validate(&self, dim: usize) -> Result<Option<f64>> {
        match *self {
            SingularityKind::Log => Ok(None),
            SingularityKind::Power(nu) => {
                let mu = dim as f64 - nu;
                if mu > 0.0 && mu <= 2.0 + 1e-12 {
                    Ok(Some(mu.min(2.0)))
                } else {
                    Err(Error::Domain(format!(
                        "power singularity r^-{nu} needs m - nu in (0, 2]; got mu = {mu} at m = {dim}"
                    )))
                }
            }
        }
    }

    /// The singular radial factor itself, for `r > 0`.
    pub fn phi(&self, r: f64) -> f64 {
        match *self {
            SingularityKind::Log => r.ln(),
            SingularityKind::Power(nu) => r.powf(-nu),
        }
    }
}

/// `rho_k = pi R ||chi^{-T} k||`.
pub fn rho_of_k(grid: &GridSpec, k: &[i64]) -> f64 {
    std::f64::consts::PI * grid.radius() * grid.dual_norm(k)
}

/// `sqrt(pi)^m / (2^m |chi| Gamma(m/2 + 1))`.
fn coeff(grid: &GridSpec) -> f64 {
    let m = grid.dim() as i32;
    std::f64::consts::PI.sqrt().powi(m)
        / (2f64.powi(m) * grid.det_chi() * gamma_half(grid.dim() as u32 + 2))
}

/// Fourier coefficient of the truncated `log r` at radial frequency `rho`.
pub fn phi_hat_log(grid: &GridSpec, rho: f64) -> Result<f64> {
    let m = grid.dim() as i64;
    let r = grid.radius();
    let c = coeff(grid) * r.powi(m as i32);
    Ok(c * (r.ln() * specfun::a_fun(m + 2, rho)? - specfun::l_fun(m, rho)?))
}

/// Fourier coefficient of the truncated `r^-nu` at radial frequency `rho`.
pub fn phi_hat_power(grid: &GridSpec, nu: f64, rho: f64) -> Result<f64> {
    let m = grid.dim();
    let mu = SingularityKind::Power(nu)
        .validate(m)?
        .expect("power kind yields mu");
    let c = coeff(grid) * grid.radius().powf(mu);
    Ok(c * specfun::m_fun(mu, m as i64, rho)?)
}

/// Evaluate `phihat` for one kind at one radial frequency.
pub fn phi_hat(grid: &GridSpec, kind: SingularityKind, rho: f64) -> Result<f64> {
    match kind {
        SingularityKind::Log => phi_hat_log(grid, rho),
        SingularityKind::Power(nu) => phi_hat_power(grid, nu, rho),
    }
}

/// The full frequency-indexed table of exact Fourier coefficients over
/// `I_N`, in the standard layout. For diagonal `chi` equal radii are
/// grouped (canonical summation order makes equal radii bit-identical) and
/// evaluated once.
pub fn phi_hat_table(grid: &GridSpec, kind: SingularityKind) -> Result<Vec<f64>> {
    kind.validate(grid.dim())?;
    let set = grid.index_set();
    let diag = grid.diagonal();
    // canonical rho: sort the per-axis contributions before summing, so
    // indices with the same multiset of contributions get identical floats
    let rho_canonical = |k: &[i64]| -> f64 {
        if let Some(d) = &diag {
            let mut q: Vec<f64> = k
                .iter()
                .zip(d)
                .map(|(&kj, &lj)| {
                    let v = kj as f64 / lj;
                    v * v
                })
                .collect();
            q.sort_by(|a, b| b.total_cmp(a));
            std::f64::consts::PI * grid.radius() * q.iter().sum::<f64>().sqrt()
        } else {
            rho_of_k(grid, k)
        }
    };

    if diag.is_some() {
        let rhos: Vec<f64> = (0..set.len())
            .into_par_iter()
            .map(|p| rho_canonical(&set.unflat(p)))
            .collect();
        let mut groups: HashMap<u64, f64> = HashMap::new();
        for &rho in &rhos {
            groups.entry(rho.to_bits()).or_insert(rho);
        }
        let keys: Vec<u64> = groups.keys().copied().collect();
        let values: Result<Vec<(u64, f64)>> = keys
            .par_iter()
            .map(|&bits| Ok((bits, phi_hat(grid, kind, f64::from_bits(bits))?)))
            .collect();
        let table: HashMap<u64, f64> = values?.into_iter().collect();
        Ok(rhos.iter().map(|rho| table[&rho.to_bits()]).collect())
    } else {
        (0..set.len())
            .into_par_iter()
            .map(|p| phi_hat(grid, kind, rho_of_k(grid, &set.unflat(p))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{adaptive_integrate_1d, AdaptiveQuadSpec};
    use std::f64::consts::PI;

    #[test]
    fn rho_of_k_examples() {
        let g = GridSpec::isotropic(2, 8, 3.0, Some(3.0)).unwrap();
        assert_eq!(rho_of_k(&g, &[0, 0]), 0.0);
        // chi = 3 Id, R = 3, k = e1: rho = pi * 3 * (1/3) = pi
        assert!((rho_of_k(&g, &[1, 0]) - PI).abs() < 1e-14);
    }

    #[test]
    fn log_coefficient_at_zero_matches_direct_integral() {
        // m = 1, chi = Id, R = 1: (1/2) int_{-1}^1 log|y| dy = -1
        let g = GridSpec::isotropic(1, 8, 1.0, Some(1.0)).unwrap();
        let v = phi_hat_log(&g, 0.0).unwrap();
        assert!((v + 1.0).abs() < 1e-14, "phi_hat_log(0) = {v}");
        // m = 2: (1/4) * 2 pi int_0^1 r ln r dr = -pi/8
        let g = GridSpec::isotropic(2, 8, 1.0, Some(1.0)).unwrap();
        let v = phi_hat_log(&g, 0.0).unwrap();
        assert!((v + PI / 8.0).abs() < 1e-14);
    }

    #[test]
    fn power_coefficient_at_zero() {
        // m = 3, nu = 1, chi = Id, R = 1: (1/8) int_{B_1} 1/r = pi/4
        let g = GridSpec::isotropic(3, 4, 1.0, Some(1.0)).unwrap();
        let v = phi_hat_power(&g, 1.0, 0.0).unwrap();
        assert!((v - PI / 4.0).abs() < 1e-14);
        // general rho = 0 value: sqrt(pi)^m R^mu m / (2^m |chi| Gamma(m/2+1) mu)
        let g = GridSpec::isotropic(2, 4, 1.5, Some(0.8)).unwrap();
        let nu = 0.7;
        let mu = 2.0 - nu;
        let expect = PI.sqrt().powi(2) * 0.8f64.powf(mu) * 2.0 / (4.0 * 1.5 * 1.5 * 1.0 * mu);
        assert!((phi_hat_power(&g, nu, 0.0).unwrap() - expect).abs() < 1e-14 * expect.abs());
    }

    /// Radial Hankel-form oracle: the 1-D integral over the unit ball with
    /// the angular kernel written out per dimension (cos, J0, sinc).
    fn phi_hat_oracle(grid: &GridSpec, kind: SingularityKind, rho: f64) -> f64 {
        let m = grid.dim();
        let r_max = grid.radius();
        let spec = AdaptiveQuadSpec::with_rel_tol(1e-13);
        let surf = match m {
            1 => 2.0,
            2 => 2.0 * PI,
            3 => 4.0 * PI,
            _ => unreachable!(),
        };
        let w = move |t: f64| match m {
            1 => t.cos(),
            2 => specfun::j0(t),
            3 => specfun::sinc(t),
            _ => unreachable!(),
        };
        let c = r_max.powi(m as i32) / (2f64.powi(m as i32) * grid.det_chi()) * surf;
        let (v, _) = adaptive_integrate_1d(
            |u| kind.phi(r_max * u) * u.powi(m as i32 - 1) * w(rho * u),
            0.0,
            1.0,
            spec,
        )
        .unwrap();
        c * v
    }

    #[test]
    fn log_coefficients_match_hankel_oracle() {
        for (m, rho) in [(1usize, 2.3), (2, 5.0), (2, 0.7), (3, 11.0)] {
            let g = GridSpec::isotropic(m, 8, 1.0, Some(1.0)).unwrap();
            let fast = phi_hat_log(&g, rho).unwrap();
            let slow = phi_hat_oracle(&g, SingularityKind::Log, rho);
            assert!(
                (fast - slow).abs() < 1e-12 * slow.abs().max(1e-3),
                "m={m} rho={rho}: {fast:.16} vs oracle {slow:.16}"
            );
        }
        // non-unit radius and anisotropy in the prefactor
        let g = GridSpec::new(&[8, 8], &[3.0, 1.0, 0.0, 2.0], Some(1.2)).unwrap();
        let fast = phi_hat_log(&g, 4.0).unwrap();
        let slow = phi_hat_oracle(&g, SingularityKind::Log, 4.0);
        assert!((fast - slow).abs() < 1e-12 * slow.abs().max(1e-3));
    }

    #[test]
    fn power_coefficients_match_hankel_oracle() {
        for (m, nu, rho) in [
            (1usize, -1.0, 3.0), // phi = r
            (1, 0.5, 1.8),
            (2, 1.0, 5.0),
            (2, 0.3, 9.0),
            (3, 1.0, 2.0),
            (3, 1.5, 13.0),
        ] {
            let g = GridSpec::isotropic(m, 8, 1.0, Some(1.0)).unwrap();
            let fast = phi_hat_power(&g, nu, rho).unwrap();
            let slow = phi_hat_oracle(&g, SingularityKind::Power(nu), rho);
            assert!(
                (fast - slow).abs() < 1e-11 * slow.abs().max(1e-3),
                "m={m} nu={nu} rho={rho}: {fast:.16} vs oracle {slow:.16}"
            );
        }
    }

    #[test]
    fn power_kind_validation() {
        assert!(SingularityKind::Power(2.0).validate(2).is_err()); // mu = 0
        assert!(SingularityKind::Power(-1.5).validate(1).is_err()); // mu = 2.5
        assert!(SingularityKind::Power(1.0).validate(3).is_ok()); // mu = 2
        assert!(SingularityKind::Power(-1.0).validate(1).is_ok()); // phi = r
    }

    #[test]
    fn table_is_even_and_grouped() {
        let g = GridSpec::isotropic(2, 6, 2.0, None).unwrap();
        let table = phi_hat_table(&g, SingularityKind::Log).unwrap();
        let set = g.index_set();
        for (p, k) in set.iter().enumerate() {
            if k.iter().all(|&kj| kj > -6 && kj < 6) {
                let neg: Vec<i64> = k.iter().map(|&kj| -kj).collect();
                assert_eq!(table[p], table[set.flat(&neg)]);
            }
        }
        assert_eq!(table[set.flat(&[0, 0])], phi_hat_log(&g, 0.0).unwrap());
    }

    #[test]
    fn table_matches_2d_direct_integral() {
        // one entry against the direct 2-D integral over B_R
        let g = GridSpec::isotropic(2, 4, 1.0, Some(1.0)).unwrap();
        let k = [2i64, -1];
        let rho = rho_of_k(&g, &k);
        let fast = phi_hat_log(&g, rho).unwrap();
        let spec = AdaptiveQuadSpec::with_rel_tol(1e-11);
        let (v, _) = crate::oracles::adaptive_integrate_2d(
            |s, th| {
                let y = [s * th.cos(), s * th.sin()];
                let phase = PI * (k[0] as f64 * y[0] + k[1] as f64 * y[1]);
                num_complex::Complex64::from_polar(1.0, -phase) * s.ln() * s * 0.25
            },
            0.0,
            1.0,
            0.0,
            2.0 * PI,
            spec,
        )
        .unwrap();
        assert!(v.im.abs() < 1e-9);
        assert!(
            (fast - v.re).abs() < 1e-9,
            "phihat {fast:.14} vs 2-D integral {:.14}",
            v.re
        );
    }
}
