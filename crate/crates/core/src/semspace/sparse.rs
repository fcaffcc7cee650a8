use nalgebra::DMatrix;

/// Compressed sparse column matrix. In a term-document matrix the columns
/// are documents.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Builds from per-column `(row, value)` lists. Zero values are dropped
    /// and entries within a column are sorted by row; duplicate rows are
    /// summed.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, f64)>>) -> Self {
        let cols = columns.len();
        let mut col_ptr = Vec::with_capacity(cols + 1);
        let mut row_idx = Vec::new();
        let mut values = Vec::new();
        col_ptr.push(0);
        for mut column in columns {
            column.sort_by_key(|&(r, _)| r);
            for (r, v) in column {
                assert!(r < rows, "row {r} out of bounds for {rows} rows");
                if row_idx.len() > *col_ptr.last().unwrap() && row_idx.last() == Some(&r) {
                    *values.last_mut().unwrap() += v;
                } else {
                    row_idx.push(r);
                    values.push(v);
                }
            }
            // drop explicit zeros in this column
            let start = *col_ptr.last().unwrap();
            let mut keep = start;
            for i in start..row_idx.len() {
                if values[i] != 0.0 {
                    row_idx[keep] = row_idx[i];
                    values[keep] = values[i];
                    keep += 1;
                }
            }
            row_idx.truncate(keep);
            values.truncate(keep);
            col_ptr.push(row_idx.len());
        }
        SparseMatrix {
            rows,
            cols,
            col_ptr,
            row_idx,
            values,
        }
    }

    pub fn from_dense(dense: &DMatrix<f64>) -> Self {
        let columns = (0..dense.ncols())
            .map(|j| {
                (0..dense.nrows())
                    .map(|i| (i, dense[(i, j)]))
                    .collect()
            })
            .collect();
        Self::from_columns(dense.nrows(), columns)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Stored `(row, value)` pairs of column `j`, ascending by row.
    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.col_ptr[j]..self.col_ptr[j + 1];
        self.row_idx[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    /// Every stored entry as `(row, col, value)`, column-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.cols).flat_map(move |j| self.column(j).map(move |(i, v)| (i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let range = self.col_ptr[j]..self.col_ptr[j + 1];
        match self.row_idx[range.clone()].binary_search(&i) {
            Ok(pos) => self.values[range.start + pos],
            Err(_) => 0.0,
        }
    }

    /// Same sparsity pattern, values replaced by `f(row, col, value)`; zeros
    /// produced by `f` are dropped.
    pub fn map(&self, mut f: impl FnMut(usize, usize, f64) -> f64) -> Self {
        let columns = (0..self.cols)
            .map(|j| self.column(j).map(|(i, v)| (i, f(i, j, v))).collect())
            .collect();
        Self::from_columns(self.rows, columns)
    }

    /// `A x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![0.0; self.rows];
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0.0 {
                continue;
            }
            for p in self.col_ptr[j]..self.col_ptr[j + 1] {
                y[self.row_idx[p]] += self.values[p] * xj;
            }
        }
        y
    }

    /// `Aᵀ y`.
    pub fn tr_mul_vec(&self, y: &[f64]) -> Vec<f64> {
        assert_eq!(y.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                (self.col_ptr[j]..self.col_ptr[j + 1])
                    .map(|p| self.values[p] * y[self.row_idx[p]])
                    .sum()
            })
            .collect()
    }

    pub fn frobenius_norm_squared(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut d = DMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.entries() {
            d[(i, j)] = v;
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_match_dense() {
        let dense = DMatrix::from_row_slice(3, 4, &[
            1.0, 0.0, 2.0, 0.0, //
            0.0, 0.0, 3.0, -1.0, //
            4.0, 5.0, 0.0, 0.0,
        ]);
        let s = SparseMatrix::from_dense(&dense);
        assert_eq!(s.nnz(), 6);
        assert_eq!(s.to_dense(), dense);
        let x = [1.0, -2.0, 0.5, 3.0];
        let y = [2.0, 1.0, -1.0];
        let ax = &dense * nalgebra::DVector::from_column_slice(&x);
        let aty = dense.transpose() * nalgebra::DVector::from_column_slice(&y);
        assert_eq!(s.mul_vec(&x), ax.as_slice());
        assert_eq!(s.tr_mul_vec(&y), aty.as_slice());
        assert_eq!(s.get(1, 3), -1.0);
        assert_eq!(s.get(1, 0), 0.0);
        assert_eq!(s.frobenius_norm_squared(), 56.0);
    }

    #[test]
    fn duplicates_sum_and_zeros_drop() {
        let s = SparseMatrix::from_columns(2, vec![vec![(1, 1.0), (0, 2.0), (1, 1.0)], vec![(0, 0.0)]]);
        assert_eq!(s.column(0).collect::<Vec<_>>(), [(0, 2.0), (1, 2.0)]);
        assert_eq!(s.column(1).count(), 0);
        let m = s.map(|i, _, v| if i == 0 { 0.0 } else { v * 3.0 });
        assert_eq!(m.entries().collect::<Vec<_>>(), [(1, 0, 6.0)]);
    }
}
