//! Complex CSR matrices and a sparse LU wrapper.

use std::io::Write;

use faer::sparse::linalg::solvers::Lu;
use faer::sparse::{SparseColMat, Triplet};
use faer::MatMut;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Compressed sparse row matrix with complex entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n_rows: usize,
    n_cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<Complex64>,
}

impl CsrMatrix {
    /// Sum duplicate `(row, col, value)` entries into a CSR matrix.
    pub fn from_triplets(n_rows: usize, n_cols: usize, triplets: &[(usize, usize, Complex64)]) -> Result<Self> {
        let mut counts = vec![0usize; n_rows + 1];
        for &(i, j, _) in triplets {
            if i >= n_rows {
                return Err(Error::IndexOutOfRange { index: i, bound: n_rows });
            }
            if j >= n_cols {
                return Err(Error::IndexOutOfRange { index: j, bound: n_cols });
            }
            counts[i + 1] += 1;
        }
        for i in 0..n_rows {
            counts[i + 1] += counts[i];
        }
        let mut cols = vec![0usize; triplets.len()];
        let mut vals = vec![Complex64::new(0.0, 0.0); triplets.len()];
        let mut next = counts.clone();
        for &(i, j, v) in triplets {
            cols[next[i]] = j;
            vals[next[i]] = v;
            next[i] += 1;
        }
        let mut row_ptr = Vec::with_capacity(n_rows + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        let mut row: Vec<(usize, Complex64)> = Vec::new();
        for i in 0..n_rows {
            row.clear();
            row.extend((counts[i]..counts[i + 1]).map(|k| (cols[k], vals[k])));
            row.sort_unstable_by_key(|e| e.0);
            for &(j, v) in &row {
                if col_idx.len() > row_ptr[i] && *col_idx.last().unwrap() == j {
                    *values.last_mut().unwrap() += v;
                } else {
                    col_idx.push(j);
                    values.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        Ok(CsrMatrix {
            n_rows,
            n_cols,
            row_ptr,
            col_idx,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        CsrMatrix {
            n_rows: n,
            n_cols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: vec![Complex64::new(1.0, 0.0); n],
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Entries of row `i` as `(column, value)`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[r.clone()].iter().copied().zip(self.values[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.col_idx[r.clone()].binary_search(&j) {
            Ok(k) => self.values[r.start + k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// `y = A x`.
    pub fn matvec_into(&self, x: &[Complex64], y: &mut [Complex64]) {
        debug_assert_eq!(x.len(), self.n_cols);
        y.par_iter_mut().with_min_len(256).enumerate().for_each(|(i, yi)| {
            let mut s = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                s += self.values[k] * x[self.col_idx[k]];
            }
            *yi = s;
        });
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![Complex64::new(0.0, 0.0); self.n_rows];
        self.matvec_into(x, &mut y);
        y
    }

    pub fn transpose(&self) -> Self {
        let t: Vec<(usize, usize, Complex64)> = (0..self.n_rows).flat_map(|i| self.row(i).map(move |(j, v)| (j, i, v))).collect();
        CsrMatrix::from_triplets(self.n_cols, self.n_rows, &t).expect("indices in range")
    }

    /// `max |a_ij − a_ji| / max |a_ij|`.
    pub fn symmetry_defect(&self) -> f64 {
        let mut scale: f64 = 0.0;
        let mut defect: f64 = 0.0;
        for i in 0..self.n_rows {
            for (j, v) in self.row(i) {
                scale = scale.max(v.norm());
                defect = defect.max((v - self.get(j, i)).norm());
            }
        }
        if scale == 0.0 {
            0.0
        } else {
            defect / scale
        }
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let mut d = vec![vec![Complex64::new(0.0, 0.0); self.n_cols]; self.n_rows];
        for (i, row) in d.iter_mut().enumerate() {
            for (j, v) in self.row(i) {
                row[j] = v;
            }
        }
        d
    }

    /// Text export, one `row col re im` line per stored entry.
    pub fn write_triplets<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{} {} {}", self.n_rows, self.n_cols, self.nnz())?;
        for i in 0..self.n_rows {
            for (j, v) in self.row(i) {
                writeln!(w, "{i} {j} {:e} {:e}", v.re, v.im)?;
            }
        }
        Ok(())
    }

    fn to_faer(&self) -> Result<SparseColMat<usize, Complex64>> {
        let t: Vec<Triplet<usize, usize, Complex64>> =
            (0..self.n_rows).flat_map(|i| self.row(i).map(move |(j, v)| Triplet::new(i, j, v))).collect();
        SparseColMat::try_new_from_triplets(self.n_rows, self.n_cols, &t).map_err(|e| Error::Factorization(format!("{e:?}")))
    }
}

/// Sparse LU factorization of a square complex matrix.
pub struct SparseLu {
    n: usize,
    lu: Lu<usize, Complex64>,
}

impl std::fmt::Debug for SparseLu {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SparseLu").field("n", &self.n).finish()
    }
}

impl SparseLu {
    pub fn new(a: &CsrMatrix) -> Result<Self> {
        if a.n_rows() != a.n_cols() {
            return Err(Error::DimensionMismatch {
                expected: a.n_rows(),
                got: a.n_cols(),
            });
        }
        let lu = a.to_faer()?.sp_lu().map_err(|e| Error::Factorization(format!("{e:?}")))?;
        Ok(SparseLu { n: a.n_rows(), lu })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Overwrite `b` with `A⁻¹ b`.
    pub fn solve_in_place(&self, b: &mut [Complex64]) -> Result<()> {
        use faer::linalg::solvers::SolveCore;
        if b.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: b.len(),
            });
        }
        let m = MatMut::from_column_major_slice_mut(b, self.n, 1);
        self.lu.solve_in_place_with_conj(faer::Conj::No, m);
        if b.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Factorization("non-finite solution".into()));
        }
        Ok(())
    }

    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x)?;
        Ok(x)
    }
}
