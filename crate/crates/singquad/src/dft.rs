//! DFT/IDFT in the logical index convention of the quadrature rule.
//!
//! Forward: `F^_k = 1/(2^m Nbar) sum_l F_l e^{-i pi k . y_l}`, inverse:
//! `F_l = sum_k F^_k e^{+i pi k . y_l}`, both over `I_N` in the layout of
//! [`crate::grid`]. The map to the FFT library's natural order is a half
//! period rotation per axis (sizes `2 N_j` are even, so the rotation is an
//! involution): natural position `(l_j + 2 N_j) mod 2 N_j`.

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

static PLANS: Lazy<Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn plan(len: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    let mut cache = PLANS.lock().unwrap();
    cache
        .entry((len, forward))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if forward {
                planner.plan_fft_forward(len)
            } else {
                planner.plan_fft_inverse(len)
            }
        })
        .clone()
}

/// Swap the two half-periods of every axis (logical <-> natural order).
fn half_shift(data: &[Complex64], sizes: &[usize]) -> Vec<Complex64> {
    let total: usize = sizes.iter().product();
    debug_assert_eq!(data.len(), total);
    let m = sizes.len();
    let mut strides = vec![1usize; m];
    for j in (0..m.saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * sizes[j + 1];
    }
    let mut out = vec![Complex64::default(); total];
    out.par_iter_mut().enumerate().for_each(|(p, slot)| {
        let mut rem = p;
        let mut src = 0usize;
        for j in 0..m {
            let qj = rem / strides[j];
            rem %= strides[j];
            let sj = sizes[j];
            src += ((qj + sj / 2) % sj) * strides[j];
        }
        *slot = data[src];
    });
    out
}

/// Multidimensional FFT in natural order, in place over `data`.
/// Transforms the last axis of each rotation; after `m` axis rotations the
/// array is back in its original orientation with every axis transformed.
fn fft_nd(data: &mut Vec<Complex64>, sizes: &[usize], forward: bool) {
    let m = sizes.len();
    let mut sizes = sizes.to_vec();
    for _ in 0..m {
        let last = *sizes.last().unwrap();
        let fft = plan(last, forward);
        data.par_chunks_mut(last).for_each_init(
            || vec![Complex64::default(); fft.get_inplace_scratch_len()],
            |scratch, line| fft.process_with_scratch(line, scratch),
        );
        if m > 1 {
            // rotate axes: shape (s0, rest) -> (rest, s0)
            let s0 = sizes[0];
            let rest = data.len() / s0;
            let src = std::mem::take(data);
            let mut dst = vec![Complex64::default(); src.len()];
            dst.par_chunks_mut(s0).enumerate().for_each(|(q, chunk)| {
                for (i0, slot) in chunk.iter_mut().enumerate() {
                    *slot = src[i0 * rest + q];
                }
            });
            *data = dst;
            sizes.rotate_left(1);
        }
    }
}

fn full_sizes(n: &[usize]) -> Vec<usize> {
    n.iter().map(|&nj| 2 * nj).collect()
}

/// Forward DFT over `I_N` with the `1/(2^m Nbar)` normalization.
pub fn dft(data: &[Complex64], n: &[usize]) -> Vec<Complex64> {
    let sizes = full_sizes(n);
    let total: usize = sizes.iter().product();
    assert_eq!(data.len(), total, "array does not conform to the grid");
    let mut buf = half_shift(data, &sizes);
    fft_nd(&mut buf, &sizes, true);
    let scale = 1.0 / total as f64;
    let mut out = half_shift(&buf, &sizes);
    out.par_iter_mut().for_each(|v| *v *= scale);
    out
}

/// Unnormalized inverse DFT over `I_N`.
pub fn idft(coeffs: &[Complex64], n: &[usize]) -> Vec<Complex64> {
    let sizes = full_sizes(n);
    let total: usize = sizes.iter().product();
    assert_eq!(coeffs.len(), total, "array does not conform to the grid");
    let mut buf = half_shift(coeffs, &sizes);
    fft_nd(&mut buf, &sizes, false);
    half_shift(&buf, &sizes)
}
