//! Uniform grids on the computational cube `U = [-1,1]^m` and the affine
//! map to the physical domain.
//!
//! Index layout contract (bit-exact, shared by every array in this crate,
//! the DFT helpers, and the binary file formats): a grid array holds one
//! value per multi-index `l` in the logical set
//! `I_N = { l : -N_j <= l_j <= N_j - 1 }`, stored row-major with axis 0
//! slowest, at flat position `p = sum_j (l_j + N_j) * stride_j` where
//! `stride_{m-1} = 1` and `stride_{j-1} = 2 N_j * stride_j`. Frequency
//! indices `k` use the same map.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gamma(n/2) for integer n >= 1.
pub fn gamma_half(n: u32) -> f64 {
    assert!(n >= 1, "gamma_half requires n >= 1");
    let sqrt_pi = std::f64::consts::PI.sqrt();
    match n {
        1 => sqrt_pi,
        2 => 1.0,
        _ => (n as f64 / 2.0 - 1.0) * gamma_half(n - 2),
    }
}

/// Invert a small dense matrix (row-major, m <= 4 in practice) by partial
/// pivoting. Returns the inverse and the determinant.
fn invert_small(m: usize, a: &[f64]) -> Result<(Vec<f64>, f64)> {
    let mut aug = vec![0.0; m * 2 * m];
    for i in 0..m {
        for j in 0..m {
            aug[i * 2 * m + j] = a[i * m + j];
        }
        aug[i * 2 * m + m + i] = 1.0;
    }
    let mut det = 1.0;
    let scale: f64 = a.iter().fold(0.0_f64, |s, &v| s.max(v.abs()));
    for col in 0..m {
        let (piv, pval) = (col..m)
            .map(|r| (r, aug[r * 2 * m + col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if pval <= 1e-13 * scale.max(1e-300) {
            return Err(Error::Domain("grid map chi is singular".into()));
        }
        if piv != col {
            for j in 0..2 * m {
                aug.swap(col * 2 * m + j, piv * 2 * m + j);
            }
            det = -det;
        }
        let d = aug[col * 2 * m + col];
        det *= d;
        for j in 0..2 * m {
            aug[col * 2 * m + j] /= d;
        }
        for r in 0..m {
            if r == col {
                continue;
            }
            let f = aug[r * 2 * m + col];
            if f != 0.0 {
                for j in 0..2 * m {
                    aug[r * 2 * m + j] -= f * aug[col * 2 * m + j];
                }
            }
        }
    }
    let mut inv = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            inv[i * m + j] = aug[i * 2 * m + m + j];
        }
    }
    Ok((inv, det))
}

/// Uniform grid on `U = [-1,1]^m` together with the non-degenerate linear
/// map `chi` onto the physical domain and the truncation radius `R` of the
/// singularity ball.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridSpec {
    dim: usize,
    /// Per-axis sampling counts `N_j`: spacing `1/N_j`, `2 N_j` points per axis.
    n: Vec<usize>,
    /// Row-major `m x m` matrix of the map `U -> chi U`.
    chi: Vec<f64>,
    /// Truncation radius of the correction ball, in physical units.
    radius: f64,
    det_chi: f64,
    chi_inv: Vec<f64>,
}

impl GridSpec {
    /// Build a grid. When `radius` is `None` the default
    /// `R = max_{y in dU} ||chi y||` is used; since `||chi y||` is convex the
    /// boundary maximum is attained at a cube vertex.
    pub fn new(n: &[usize], chi: &[f64], radius: Option<f64>) -> Result<Self> {
        let dim = n.len();
        if dim == 0 || dim > 4 {
            return Err(Error::Domain(format!("dimension {dim} unsupported (1-4)")));
        }
        if chi.len() != dim * dim {
            return Err(Error::Shape(format!(
                "chi has {} entries, expected {}",
                chi.len(),
                dim * dim
            )));
        }
        if n.iter().any(|&nj| nj == 0) {
            return Err(Error::Domain("per-axis count N_j must be positive".into()));
        }
        let (chi_inv, det) = invert_small(dim, chi)?;
        let det_chi = det.abs();
        let mut grid = GridSpec {
            dim,
            n: n.to_vec(),
            chi: chi.to_vec(),
            radius: 0.0,
            det_chi,
            chi_inv,
        };
        let r = radius.unwrap_or_else(|| grid.circumradius());
        if !(r > 0.0) {
            return Err(Error::Domain("truncation radius must be positive".into()));
        }
        grid.radius = r;
        if r > grid.inradius() * (1.0 + 1e-12) {
            // The periodized ball then pokes out of U; valid as long as the
            // data vanishes at its window boundary, so warn rather than fail.
            log::warn!(
                "truncation radius {r:.6} exceeds the inscribed radius {:.6}; \
                 B_R is not contained in U",
                grid.inradius()
            );
        }
        Ok(grid)
    }

    /// Isotropic grid: physical domain `[-len/2, len/2]^m`, `n` points per axis
    /// on the data window.
    pub fn isotropic(dim: usize, n: usize, half_width: f64, radius: Option<f64>) -> Result<Self> {
        let mut chi = vec![0.0; dim * dim];
        for j in 0..dim {
            chi[j * dim + j] = half_width;
        }
        GridSpec::new(&vec![n; dim], &chi, radius)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn counts(&self) -> &[usize] {
        &self.n
    }

    pub fn chi(&self) -> &[f64] {
        &self.chi
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `|chi| = sqrt(det(chi^T chi))`, the Jacobian of the map.
    pub fn det_chi(&self) -> f64 {
        self.det_chi
    }

    /// Number of points of the full grid, `prod_j 2 N_j`.
    pub fn total_points(&self) -> usize {
        self.n.iter().map(|&nj| 2 * nj).product()
    }

    /// `prod_j N_j` (the `1/N̄` normalization of the quadrature rule).
    pub fn nbar(&self) -> f64 {
        self.n.iter().map(|&nj| nj as f64).product()
    }

    /// Max of `||chi y||` over the cube boundary (attained at a vertex).
    pub fn circumradius(&self) -> f64 {
        let m = self.dim;
        let mut best = 0.0_f64;
        for v in 0..(1usize << m) {
            let y: Vec<f64> = (0..m)
                .map(|j| if v >> j & 1 == 1 { 1.0 } else { -1.0 })
                .collect();
            best = best.max(self.physical_norm(&y));
        }
        best
    }

    /// Min of `||chi y||` over the cube boundary (distance to the nearest face).
    pub fn inradius(&self) -> f64 {
        let m = self.dim;
        (0..m)
            .map(|j| {
                let row = &self.chi_inv[j * m..(j + 1) * m];
                1.0 / row.iter().map(|v| v * v).sum::<f64>().sqrt()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Physical length of a computational vector: `||chi y||`.
    pub fn physical_norm(&self, y: &[f64]) -> f64 {
        let m = self.dim;
        let mut s = 0.0;
        for i in 0..m {
            let mut xi = 0.0;
            for j in 0..m {
                xi += self.chi[i * m + j] * y[j];
            }
            s += xi * xi;
        }
        s.sqrt()
    }

    /// `||chi^{-T} k||` for an integer frequency index.
    pub fn dual_norm(&self, k: &[i64]) -> f64 {
        let m = self.dim;
        let mut s = 0.0;
        for i in 0..m {
            // (chi^{-T} k)_i = sum_j chi_inv[j][i] k_j
            let mut xi = 0.0;
            for j in 0..m {
                xi += self.chi_inv[j * m + i] * k[j] as f64;
            }
            s += xi * xi;
        }
        s.sqrt()
    }

    /// Computational coordinates of the grid point `y_l = (l_j / N_j)`.
    pub fn point(&self, l: &[i64]) -> Vec<f64> {
        l.iter()
            .zip(&self.n)
            .map(|(&lj, &nj)| lj as f64 / nj as f64)
            .collect()
    }

    /// Physical distance `r(y_l) = ||chi y_l||` from the origin.
    pub fn r_of_index(&self, l: &[i64]) -> f64 {
        self.physical_norm(&self.point(l))
    }

    /// True when the chi matrix is diagonal (enables the rho-cache in tables).
    pub fn is_diagonal(&self) -> bool {
        let m = self.dim;
        (0..m).all(|i| (0..m).all(|j| i == j || self.chi[i * m + j] == 0.0))
    }

    /// Diagonal entries of chi, when diagonal.
    pub fn diagonal(&self) -> Option<Vec<f64>> {
        if self.is_diagonal() {
            Some((0..self.dim).map(|j| self.chi[j * self.dim + j]).collect())
        } else {
            None
        }
    }

    /// Grid with every `N_j` multiplied by `refine` (same map and radius).
    pub fn refined(&self, refine: usize) -> Result<GridSpec> {
        let n: Vec<usize> = self.n.iter().map(|&nj| nj * refine).collect();
        GridSpec::new(&n, &self.chi, Some(self.radius))
    }

    pub fn index_set(&self) -> IndexSet {
        IndexSet::new(&self.n)
    }
}

/// The logical multi-index set `I_N` and its flat row-major layout.
#[derive(Debug, Clone)]
pub struct IndexSet {
    n: Vec<i64>,
    strides: Vec<usize>,
    len: usize,
}

impl IndexSet {
    pub fn new(n: &[usize]) -> Self {
        let m = n.len();
        let mut strides = vec![1usize; m];
        for j in (0..m.saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * 2 * n[j + 1];
        }
        let len = n.iter().map(|&nj| 2 * nj).product();
        IndexSet {
            n: n.iter().map(|&x| x as i64).collect(),
            strides,
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.n.len()
    }

    /// Flat position of a logical multi-index.
    pub fn flat(&self, l: &[i64]) -> usize {
        debug_assert_eq!(l.len(), self.n.len());
        l.iter()
            .zip(&self.n)
            .zip(&self.strides)
            .map(|((&lj, &nj), &s)| {
                debug_assert!(-nj <= lj && lj < nj);
                (lj + nj) as usize * s
            })
            .sum()
    }

    /// Logical multi-index at a flat position.
    pub fn unflat(&self, mut p: usize) -> Vec<i64> {
        let mut l = vec![0i64; self.n.len()];
        for j in 0..self.n.len() {
            l[j] = (p / self.strides[j]) as i64 - self.n[j];
            p %= self.strides[j];
        }
        l
    }

    /// Wrap an arbitrary integer index onto the periodic set.
    pub fn wrap(&self, l: &[i64]) -> Vec<i64> {
        l.iter()
            .zip(&self.n)
            .map(|(&lj, &nj)| {
                let period = 2 * nj;
                let mut v = (lj + nj).rem_euclid(period) - nj;
                if v >= nj {
                    v -= period;
                }
                v
            })
            .collect()
    }

    /// Iterate all logical multi-indices in flat order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.len).map(|p| self.unflat(p))
    }
}
