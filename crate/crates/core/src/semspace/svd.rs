//! Truncated singular value decomposition of sparse matrices.
//!
//! Small problems go through a dense decomposition. Large ones use
//! Golub-Kahan-Lanczos bidiagonalization with full reorthogonalization: the
//! Krylov basis grows until the top-k Ritz triplets have residual norm below
//! `tolerance * σ₁`, or until the basis spans the whole row space, at which
//! point the decomposition is exact.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SvdMethod {
    /// Dense when `rows * cols <= dense_limit`, Lanczos otherwise.
    Auto,
    Dense,
    Lanczos,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvdOptions {
    pub method: SvdMethod,
    /// Seeds the Lanczos start vector.
    pub seed: u64,
    pub tolerance: f64,
    /// Lanczos step budget; `None` allows up to `min(rows, cols)` steps,
    /// which always suffices.
    pub max_steps: Option<usize>,
    pub dense_limit: usize,
}

impl Default for SvdOptions {
    fn default() -> Self {
        SvdOptions {
            method: SvdMethod::Auto,
            seed: 0,
            tolerance: 1e-10,
            max_steps: None,
            dense_limit: 1 << 21,
        }
    }
}

/// Leading singular triplets, largest first.
#[derive(Clone, Debug)]
pub struct TruncatedSvd {
    pub singular_values: Vec<f64>,
    /// `rows × rank`.
    pub left: DMatrix<f64>,
    /// `cols × rank`.
    pub right: DMatrix<f64>,
    /// Lanczos steps taken; 0 for the dense route.
    pub steps: usize,
}

impl TruncatedSvd {
    pub fn rank(&self) -> usize {
        self.singular_values.len()
    }

    /// `V Σ`: one row per column of the input matrix.
    pub fn scaled_right(&self) -> DMatrix<f64> {
        let mut out = self.right.clone();
        for (mut col, &s) in out.column_iter_mut().zip(&self.singular_values) {
            col *= s;
        }
        out
    }

    /// `U Σ Vᵀ`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.left * self.scaled_right().transpose()
    }
}

/// Top-`k` singular triplets of `a`; `k` is clamped to `min(rows, cols)`.
pub fn truncated_svd(a: &SparseMatrix, k: usize, opts: &SvdOptions) -> Result<TruncatedSvd> {
    if k == 0 {
        return Err(Error::Config("SVD dimension must be at least 1".into()));
    }
    let (rows, cols) = (a.nrows(), a.ncols());
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyCorpus);
    }
    let k = k.min(rows).min(cols);
    let dense = match opts.method {
        SvdMethod::Dense => true,
        SvdMethod::Lanczos => false,
        SvdMethod::Auto => rows.saturating_mul(cols) <= opts.dense_limit,
    };
    let mut svd = if dense {
        dense_svd(&a.to_dense(), k)
    } else if rows >= cols {
        lanczos(&Plain(a), k, opts)?
    } else {
        let t = lanczos(&Transposed(a), k, opts)?;
        TruncatedSvd {
            singular_values: t.singular_values,
            left: t.right,
            right: t.left,
            steps: t.steps,
        }
    };
    snap_negligible(&mut svd.singular_values, rows.max(cols));
    Ok(svd)
}

/// Singular values below the numerical-rank threshold become exactly zero.
fn snap_negligible(values: &mut [f64], dim: usize) {
    let Some(&top) = values.first() else { return };
    let cutoff = top * dim as f64 * f64::EPSILON;
    for v in values.iter_mut() {
        if *v <= cutoff {
            *v = 0.0;
        }
    }
}

fn dense_svd(a: &DMatrix<f64>, k: usize) -> TruncatedSvd {
    let svd = a.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let v = svd.v_t.expect("requested Vᵀ").transpose();
    let order = descending_order(svd.singular_values.as_slice());
    let keep = &order[..k];
    TruncatedSvd {
        singular_values: keep.iter().map(|&i| svd.singular_values[i].max(0.0)).collect(),
        left: a_columns(&u, keep),
        right: a_columns(&v, keep),
        steps: 0,
    }
}

fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    order
}

fn a_columns(m: &DMatrix<f64>, cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), cols.len(), |i, j| m[(i, cols[j])])
}

/// Linear operator with `rows >= cols` orientation for the Lanczos driver.
trait Operator {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    fn apply(&self, x: &[f64]) -> Vec<f64>;
    fn apply_t(&self, y: &[f64]) -> Vec<f64>;
    fn frobenius(&self) -> f64;
}

struct Plain<'a>(&'a SparseMatrix);
struct Transposed<'a>(&'a SparseMatrix);

impl Operator for Plain<'_> {
    fn nrows(&self) -> usize {
        self.0.nrows()
    }
    fn ncols(&self) -> usize {
        self.0.ncols()
    }
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.0.mul_vec(x)
    }
    fn apply_t(&self, y: &[f64]) -> Vec<f64> {
        self.0.tr_mul_vec(y)
    }
    fn frobenius(&self) -> f64 {
        self.0.frobenius_norm_squared().sqrt()
    }
}

impl Operator for Transposed<'_> {
    fn nrows(&self) -> usize {
        self.0.ncols()
    }
    fn ncols(&self) -> usize {
        self.0.nrows()
    }
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.0.tr_mul_vec(x)
    }
    fn apply_t(&self, y: &[f64]) -> Vec<f64> {
        self.0.mul_vec(y)
    }
    fn frobenius(&self) -> f64 {
        self.0.frobenius_norm_squared().sqrt()
    }
}

const CHECK_INTERVAL: usize = 10;

fn lanczos(op: &dyn Operator, k: usize, opts: &SvdOptions) -> Result<TruncatedSvd> {
    let (m, n) = (op.nrows(), op.ncols());
    debug_assert!(m >= n);
    let full = n;
    let budget = opts.max_steps.map_or(full, |s| s.clamp(k, full));
    let breakdown = op.frobenius() * 1e-13;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut us: Vec<Vec<f64>> = Vec::new();
    let mut vs: Vec<Vec<f64>> = Vec::new();
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut v = random_orthonormal(n, &vs, &mut rng);

    loop {
        vs.push(v);
        let j = vs.len() - 1;

        let mut r = op.apply(&vs[j]);
        if j > 0 {
            axpy(-beta[j - 1], &us[j - 1], &mut r);
        }
        reorthogonalize(&mut r, &us);
        let mut a_j = norm(&r);
        let u = if a_j > breakdown {
            scaled(r, 1.0 / a_j)
        } else {
            a_j = 0.0;
            random_orthonormal(m, &us, &mut rng)
        };
        us.push(u);

        let mut p = op.apply_t(&us[j]);
        axpy(-a_j, &vs[j], &mut p);
        reorthogonalize(&mut p, &vs);
        let mut b_j = norm(&p);
        alpha.push(a_j);

        let steps = j + 1;
        let next = if steps == full {
            // V spans the whole column space, p is rounding noise
            b_j = 0.0;
            None
        } else if b_j > breakdown {
            Some(scaled(p, 1.0 / b_j))
        } else {
            b_j = 0.0;
            Some(random_orthonormal(n, &vs, &mut rng))
        };
        beta.push(b_j);

        let exhausted = steps == budget;
        if steps >= k && (exhausted || steps == full || steps == k || steps.is_multiple_of(CHECK_INTERVAL)) {
            let (sv, p_mat, q_mat) = bidiagonal_svd(&alpha, &beta[..steps - 1]);
            let top = sv[0];
            let residual = (0..k)
                .map(|i| b_j * p_mat[(steps - 1, i)].abs())
                .fold(0.0, f64::max);
            if residual <= opts.tolerance * top || steps == full {
                let u_mat = DMatrix::from_iterator(m, steps, us.iter().flatten().copied());
                let v_mat = DMatrix::from_iterator(n, steps, vs.iter().flatten().copied());
                return Ok(TruncatedSvd {
                    singular_values: sv[..k].to_vec(),
                    left: u_mat * p_mat.columns(0, k),
                    right: v_mat * q_mat.columns(0, k),
                    steps,
                });
            }
            if exhausted {
                return Err(Error::NoConvergence {
                    steps,
                    residual: if top > 0.0 { residual / top } else { residual },
                    tolerance: opts.tolerance,
                });
            }
        }
        v = next.expect("a next Lanczos vector exists below the full rank");
    }
}

/// SVD of the upper bidiagonal matrix with diagonal `alpha` and
/// superdiagonal `beta`, sorted by descending singular value.
fn bidiagonal_svd(alpha: &[f64], beta: &[f64]) -> (Vec<f64>, DMatrix<f64>, DMatrix<f64>) {
    let j = alpha.len();
    let mut b = DMatrix::zeros(j, j);
    for i in 0..j {
        b[(i, i)] = alpha[i];
        if i + 1 < j {
            b[(i, i + 1)] = beta[i];
        }
    }
    let svd = b.svd(true, true);
    let order = descending_order(svd.singular_values.as_slice());
    let p = svd.u.expect("requested U");
    let q = svd.v_t.expect("requested Vᵀ").transpose();
    (
        order.iter().map(|&i| svd.singular_values[i].max(0.0)).collect(),
        a_columns(&p, &order),
        a_columns(&q, &order),
    )
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn scaled(mut x: Vec<f64>, s: f64) -> Vec<f64> {
    x.iter_mut().for_each(|v| *v *= s);
    x
}

/// Two passes of modified Gram-Schmidt against an orthonormal basis.
fn reorthogonalize(x: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for q in basis {
            let c = dot(q, x);
            axpy(-c, q, x);
        }
    }
}

fn random_orthonormal(dim: usize, basis: &[Vec<f64>], rng: &mut ChaCha8Rng) -> Vec<f64> {
    debug_assert!(basis.len() < dim);
    loop {
        let mut x: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        reorthogonalize(&mut x, basis);
        let nx = norm(&x);
        if nx > 1e-8 {
            return scaled(x, 1.0 / nx);
        }
    }
}
