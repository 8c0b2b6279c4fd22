//! Column-sparse exact matrices over a ground field.

use std::collections::BTreeMap;

use crate::coeff::{FieldElem, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    field: FieldSpec,
    rows: usize,
    /// `columns[j]` lists `(row, value)` with strictly increasing rows and
    /// nonzero values.
    columns: Vec<Vec<(usize, FieldElem)>>,
}

impl SparseMatrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            field,
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for j in 0..n {
            m.columns[j].push((j, FieldElem::one(field)));
        }
        m
    }

    /// Build from dense columns, dropping zeros.
    pub fn from_dense_columns(field: FieldSpec, rows: usize, cols: Vec<Vec<FieldElem>>) -> Self {
        let mut m = Self::zero(field, rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            m.columns[j] = col
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
        m
    }

    pub fn from_dense_rows(field: FieldSpec, cols: usize, rows: &[Vec<FieldElem>]) -> Self {
        let mut m = Self::zero(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row length mismatch");
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.columns[j].push((i, v.clone()));
                }
            }
        }
        m
    }

    /// Column from a sparse map; zeros are dropped.
    pub(crate) fn set_column(&mut self, j: usize, entries: BTreeMap<usize, FieldElem>) {
        self.columns[j] = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, FieldElem)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.columns[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| FieldElem::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<FieldElem>> {
        let mut out = vec![vec![FieldElem::zero(self.field); self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch in product");
        let mut out = SparseMatrix::zero(self.field, self.rows, other.cols());
        for (j, col) in other.columns.iter().enumerate() {
            let mut acc: BTreeMap<usize, FieldElem> = BTreeMap::new();
            for (k, b) in col {
                for (i, a) in &self.columns[*k] {
                    let prod = a * b;
                    let entry = acc.entry(*i).or_insert_with(|| FieldElem::zero(self.field));
                    *entry = &*entry + &prod;
                }
            }
            out.set_column(j, acc);
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        let mut out = SparseMatrix::zero(self.field, self.rows, self.cols());
        for j in 0..self.cols() {
            let mut acc: BTreeMap<usize, FieldElem> = self.columns[j].iter().cloned().collect();
            for (i, v) in &other.columns[j] {
                let entry = acc.entry(*i).or_insert_with(|| FieldElem::zero(self.field));
                *entry = &*entry + v;
            }
            out.set_column(j, acc);
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.field, self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            out.columns[j] = col
                .iter()
                .map(|(i, v)| (*i, v * c))
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
        out
    }

    /// `self · v` for a dense vector.
    pub fn apply(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols());
        let mut out = vec![FieldElem::zero(self.field); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, a) in col {
                out[*i] = &out[*i] + &(a * &v[j]);
            }
        }
        out
    }
}
