//! Exact Gaussian elimination on sparse rows.

use crate::coeff::{FieldElem, FieldSpec};
use crate::sparse::SparseMatrix;

/// Sparse row: strictly increasing columns, nonzero values.
pub type Row = Vec<(usize, FieldElem)>;

/// `a − c·b`.
fn axpy(a: &Row, c: &FieldElem, b: &Row) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|t| t.0);
        let cb = b.get(j).map(|t| t.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 - &(c * &b[j].1);
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            _ => {
                out.push((b[j].0, -(c * &b[j].1)));
                j += 1;
            }
        }
    }
    out
}

fn scaled(row: &Row, c: &FieldElem) -> Row {
    row.iter().map(|(k, v)| (*k, v * c)).collect()
}

fn entry(row: &Row, col: usize) -> Option<&FieldElem> {
    row.binary_search_by_key(&col, |t| t.0)
        .ok()
        .map(|k| &row[k].1)
}

/// Rows in echelon form: each has leading entry 1 in its pivot column, and
/// rows are kept sorted by pivot.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: FieldSpec,
    cols: usize,
    rows: Vec<Row>,
}

impl Echelon {
    pub fn new(field: FieldSpec, cols: usize) -> Self {
        Echelon {
            field,
            cols,
            rows: Vec::new(),
        }
    }

    /// Echelon form of the given rows. Over `Q` each pivot is the candidate
    /// with the smallest numerator (then denominator, then row length).
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Row>) -> Self {
        let mut active: Vec<Row> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        let mut done = Vec::new();
        for col in 0..cols {
            let best = active
                .iter()
                .enumerate()
                .filter(|(_, r)| r[0].0 == col)
                .min_by_key(|(_, r)| (r[0].1.pivot_weight(), r.len()))
                .map(|(k, _)| k);
            let Some(k) = best else { continue };
            let pivot = active.swap_remove(k);
            let inv = pivot[0].1.inverse().expect("pivot is nonzero");
            let pivot = scaled(&pivot, &inv);
            for r in active.iter_mut() {
                if r[0].0 == col {
                    let c = r[0].1.clone();
                    *r = axpy(r, &c, &pivot);
                }
            }
            active.retain(|r| !r.is_empty());
            done.push(pivot);
        }
        Echelon {
            field,
            cols,
            rows: done,
        }
    }

    pub fn from_matrix_rows(m: &SparseMatrix) -> Self {
        let mut rows: Vec<Row> = vec![Vec::new(); m.rows()];
        for j in 0..m.cols() {
            for (i, v) in m.column(j) {
                rows[*i].push((j, v.clone()));
            }
        }
        Self::from_rows(m.field(), m.cols(), rows)
    }

    /// Echelon form of the column space of `m`.
    pub fn from_matrix_columns(m: &SparseMatrix) -> Self {
        let rows = (0..m.cols()).map(|j| m.column(j).to_vec()).collect();
        Self::from_rows(m.field(), m.rows(), rows)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &Row) -> Row {
        let mut v = v.clone();
        for r in &self.rows {
            if let Some(c) = entry(&v, r[0].0).cloned() {
                v = axpy(&v, &c, r);
            }
        }
        v
    }

    /// Add `v` if it is independent of the current rows; returns its reduced,
    /// monic remainder when it was added.
    pub fn insert(&mut self, v: &Row) -> Option<Row> {
        let rem = self.reduce(v);
        if rem.is_empty() {
            return None;
        }
        let monic = scaled(&rem, &rem[0].1.inverse().expect("nonzero"));
        let at = self.rows.partition_point(|r| r[0].0 < monic[0].0);
        self.rows.insert(at, monic.clone());
        Some(monic)
    }

    /// Fully reduce so that pivot columns are zero outside their own row.
    pub fn into_reduced(mut self) -> Self {
        for k in (0..self.rows.len()).rev() {
            let pivot = self.rows[k].clone();
            let col = pivot[0].0;
            for r in self.rows[..k].iter_mut() {
                if let Some(c) = entry(r, col).cloned() {
                    *r = axpy(r, &c, &pivot);
                }
            }
        }
        self
    }

    /// Basis of `{v : r·v = 0 for every row r}`; one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<FieldElem>> {
        let reduced = self.clone().into_reduced();
        let pivots = reduced.pivots();
        let mut free = vec![true; self.cols];
        for &p in &pivots {
            free[p] = false;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| free[c]) {
            let mut v = vec![FieldElem::zero(self.field); self.cols];
            v[f] = FieldElem::one(self.field);
            for (r, &p) in reduced.rows.iter().zip(&pivots) {
                if let Some(c) = entry(r, f) {
                    v[p] = -c.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

pub fn dense_to_row(v: &[FieldElem]) -> Row {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

pub fn row_to_dense(field: FieldSpec, len: usize, r: &Row) -> Vec<FieldElem> {
    let mut out = vec![FieldElem::zero(field); len];
    for (k, c) in r {
        out[*k] = c.clone();
    }
    out
}

/// Rank and a kernel basis of `m`.
pub fn rank_and_kernel(m: &SparseMatrix) -> (usize, Vec<Vec<FieldElem>>) {
    let e = Echelon::from_matrix_rows(m);
    (e.rank(), e.null_space())
}

pub fn rank(m: &SparseMatrix) -> usize {
    Echelon::from_matrix_rows(m).rank()
}

/// Some `x` with `m·x = b`, if one exists.
pub fn solve(m: &SparseMatrix, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
    assert_eq!(b.len(), m.rows());
    let n = m.cols();
    let mut rows: Vec<Row> = vec![Vec::new(); m.rows()];
    for j in 0..n {
        for (i, v) in m.column(j) {
            rows[*i].push((j, v.clone()));
        }
    }
    for (i, r) in rows.iter_mut().enumerate() {
        if !b[i].is_zero() {
            r.push((n, b[i].clone()));
        }
    }
    let e = Echelon::from_rows(m.field(), n + 1, rows).into_reduced();
    let mut x = vec![FieldElem::zero(m.field()); n];
    for r in e.rows() {
        let p = r[0].0;
        if p == n {
            return None;
        }
        if let Some(c) = entry(r, n) {
            x[p] = c.clone();
        }
    }
    Some(x)
}
