//! Full GMRES in complex arithmetic and spectra of preconditioned operators.

use std::io::Write;
use std::time::{Duration, Instant};

use faer::Mat;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sparse::{CsrMatrix, SparseLu};

/// Square linear map on complex vectors.
pub trait LinearOperator: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[Complex64], y: &mut [Complex64]);
}

impl LinearOperator for CsrMatrix {
    fn dim(&self) -> usize {
        self.n_rows()
    }

    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        self.matvec_into(x, y);
    }
}

/// Exact inverse through a sparse LU factorization.
impl LinearOperator for SparseLu {
    fn dim(&self) -> usize {
        self.n()
    }

    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        y.copy_from_slice(x);
        self.solve_in_place(y).expect("dimension checked by caller");
    }
}

/// Identity map of the given size.
#[derive(Debug, Clone, Copy)]
pub struct Identity(pub usize);

impl LinearOperator for Identity {
    fn dim(&self) -> usize {
        self.0
    }

    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        y.copy_from_slice(x);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreconditionSide {
    /// Solve `A M⁻¹ y = b`, `x = M⁻¹ y`; the monitored residual is `b − Ax`.
    Right,
    /// Solve `M⁻¹ A x = M⁻¹ b`; the monitored residual is `M⁻¹(b − Ax)`.
    Left,
}

#[derive(Debug, Clone, Copy)]
pub struct GmresOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    pub side: PreconditionSide,
    /// Start from a random vector rather than zero.
    pub random_initial_guess: bool,
    pub reference: ResidualReference,
}

/// Norm the stopping criterion is relative to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualReference {
    /// `‖r_k‖ ≤ tol ‖r_0‖`.
    InitialResidual,
    /// `‖r_k‖ ≤ tol ‖b‖` (`‖M⁻¹b‖` for left preconditioning).
    RightHandSide,
}

impl Default for GmresOptions {
    fn default() -> Self {
        GmresOptions {
            tol: 1e-6,
            max_iter: 2000,
            seed: 0,
            side: PreconditionSide::Right,
            random_initial_guess: true,
            reference: ResidualReference::InitialResidual,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub iterations: usize,
    /// Relative residual before the first iteration, then the Arnoldi
    /// estimate after each one.
    pub residuals: Vec<f64>,
    /// Recomputed relative residual of the returned iterate.
    pub true_residual: f64,
    pub converged: bool,
    pub wall_time: Duration,
}

/// Components uniform in `[−1, 1] + i[−1, 1]`.
pub fn random_vector(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))).collect()
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨x, y⟩ = Σ conj(x_i) y_i`.
fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn axpy(alpha: Complex64, x: &[Complex64], y: &mut [Complex64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn residual(a: &dyn LinearOperator, b: &[Complex64], x: &[Complex64]) -> Vec<Complex64> {
    let mut ax = vec![Complex64::new(0.0, 0.0); b.len()];
    a.apply(x, &mut ax);
    b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect()
}

fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    // returns (c, s) with [c s; -conj(s) c] [a; b] = [r; 0]
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let t = (na * na + nb * nb).sqrt();
    let c = na / t;
    let s = (a / na) * b.conj() / t;
    (c, s)
}

/// Solve `A x = b` with full GMRES and an optional preconditioner.
pub fn gmres(
    a: &dyn LinearOperator,
    b: &[Complex64],
    precond: Option<&dyn LinearOperator>,
    opts: &GmresOptions,
) -> Result<(Vec<Complex64>, SolveReport)> {
    let start = Instant::now();
    let n = a.dim();
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: b.len() });
    }
    if let Some(m) = precond {
        if m.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: m.dim() });
        }
    }
    let zero = Complex64::new(0.0, 0.0);
    let apply_m = |x: &[Complex64]| -> Vec<Complex64> {
        match precond {
            Some(m) => {
                let mut y = vec![zero; n];
                m.apply(x, &mut y);
                y
            }
            None => x.to_vec(),
        }
    };
    let left = opts.side == PreconditionSide::Left && precond.is_some();
    let mut x = if opts.random_initial_guess { random_vector(n, opts.seed) } else { vec![zero; n] };
    let monitored = |x: &[Complex64]| -> Vec<Complex64> {
        let r = residual(a, b, x);
        if left {
            apply_m(&r)
        } else {
            r
        }
    };
    let scale = match opts.reference {
        ResidualReference::InitialResidual => norm(&monitored(&x)),
        ResidualReference::RightHandSide if left => norm(&apply_m(b)),
        ResidualReference::RightHandSide => norm(b),
    };
    if scale == 0.0 {
        let x = if norm(b) == 0.0 { vec![zero; n] } else { x };
        return Ok((
            x,
            SolveReport {
                iterations: 0,
                residuals: vec![0.0],
                true_residual: 0.0,
                converged: true,
                wall_time: start.elapsed(),
            },
        ));
    }

    let mut residuals = Vec::new();
    let mut iterations = 0;
    loop {
        let r0 = monitored(&x);
        let beta = norm(&r0);
        if residuals.is_empty() {
            residuals.push(beta / scale);
        }
        if beta / scale <= opts.tol || iterations >= opts.max_iter {
            return Ok((
                x,
                SolveReport {
                    iterations,
                    residuals,
                    true_residual: beta / scale,
                    converged: beta / scale <= opts.tol,
                    wall_time: start.elapsed(),
                },
            ));
        }
        let mut basis: Vec<Vec<Complex64>> = vec![r0.iter().map(|v| v / beta).collect()];
        let mut h: Vec<Vec<Complex64>> = Vec::new();
        let mut cs: Vec<(f64, Complex64)> = Vec::new();
        let mut g = vec![Complex64::new(beta, 0.0)];
        let mut breakdown = false;
        while iterations < opts.max_iter {
            let k = basis.len() - 1;
            let mut w = vec![zero; n];
            if left {
                a.apply(&basis[k], &mut w);
                w = apply_m(&w);
            } else {
                let z = apply_m(&basis[k]);
                a.apply(&z, &mut w);
            }
            let w_initial = norm(&w);
            let mut col = vec![zero; k + 2];
            for _pass in 0..2 {
                for (j, v) in basis.iter().enumerate() {
                    let c = inner(v, &w);
                    col[j] += c;
                    axpy(-c, v, &mut w);
                }
            }
            let wn = norm(&w);
            col[k + 1] = Complex64::new(wn, 0.0);
            for (j, &(c, s)) in cs.iter().enumerate() {
                let (u, v) = (col[j], col[j + 1]);
                col[j] = u * c + s * v;
                col[j + 1] = -s.conj() * u + v * c;
            }
            let (c, s) = givens(col[k], col[k + 1]);
            let u = col[k];
            col[k] = u * c + s * col[k + 1];
            col[k + 1] = zero;
            cs.push((c, s));
            let gk = g[k];
            g[k] = gk * c;
            g.push(-s.conj() * gk);
            h.push(col);
            iterations += 1;
            let est = g[k + 1].norm() / scale;
            residuals.push(est);
            if wn <= 1e-14 * w_initial {
                breakdown = true;
            }
            if est <= opts.tol || breakdown {
                break;
            }
            basis.push(w.iter().map(|v| v / wn).collect());
        }
        // back substitution on the triangular factor
        let m = h.len();
        let mut y = vec![zero; m];
        for i in (0..m).rev() {
            let mut s = g[i];
            for j in i + 1..m {
                s -= h[j][i] * y[j];
            }
            y[i] = s / h[i][i];
        }
        let mut update = vec![zero; n];
        for (j, v) in basis.iter().take(m).enumerate() {
            axpy(y[j], v, &mut update);
        }
        let update = if left { update } else { apply_m(&update) };
        axpy(Complex64::new(1.0, 0.0), &update, &mut x);
    }
}

/// Spectral metrics of `M⁻¹A` relative to the unit disk centred at 1.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<Complex64>,
    pub max_distance: f64,
    pub n_outside: usize,
    pub n_on_boundary: usize,
    pub n_inside: usize,
}

/// Tolerance deciding whether `|λ − 1| = 1`.
pub const BOUNDARY_TOLERANCE: f64 = 1e-10;
/// Largest order for which the dense spectrum is computed.
pub const SPECTRUM_LIMIT: usize = 20000;

impl SpectrumReport {
    pub fn from_eigenvalues(eigenvalues: Vec<Complex64>) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let mut max_distance: f64 = 0.0;
        let (mut n_outside, mut n_on_boundary, mut n_inside) = (0, 0, 0);
        for &l in &eigenvalues {
            let d = (l - one).norm();
            max_distance = max_distance.max(d);
            if (d - 1.0).abs() <= BOUNDARY_TOLERANCE {
                n_on_boundary += 1;
            } else if d > 1.0 {
                n_outside += 1;
            } else {
                n_inside += 1;
            }
        }
        SpectrumReport {
            eigenvalues,
            max_distance,
            n_outside,
            n_on_boundary,
            n_inside,
        }
    }

    /// `re,im` per line with a header.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "re,im")?;
        for l in &self.eigenvalues {
            writeln!(w, "{:e},{:e}", l.re, l.im)?;
        }
        Ok(())
    }
}

/// Dense `M⁻¹A`, column by column.
pub fn preconditioned_matrix(a: &dyn LinearOperator, m: &dyn LinearOperator) -> Result<Mat<Complex64>> {
    let n = a.dim();
    if m.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: m.dim() });
    }
    if n > SPECTRUM_LIMIT {
        return Err(Error::SpectrumTooLarge { n, limit: SPECTRUM_LIMIT });
    }
    let zero = Complex64::new(0.0, 0.0);
    let columns: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut e = vec![zero; n];
            e[j] = Complex64::new(1.0, 0.0);
            let mut ae = vec![zero; n];
            a.apply(&e, &mut ae);
            let mut col = vec![zero; n];
            m.apply(&ae, &mut col);
            col
        })
        .collect();
    Ok(Mat::from_fn(n, n, |i, j| columns[j][i]))
}

/// Eigenvalues of `M⁻¹A` and their position relative to the unit disk at 1.
pub fn preconditioned_spectrum(a: &dyn LinearOperator, m: &dyn LinearOperator) -> Result<SpectrumReport> {
    let dense = preconditioned_matrix(a, m)?;
    let ev = dense.eigenvalues().map_err(|_| Error::Eigen)?;
    Ok(SpectrumReport::from_eigenvalues(ev))
}
