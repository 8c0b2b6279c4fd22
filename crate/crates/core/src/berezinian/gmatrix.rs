//! Dense matrices over a Grassmann ring.

use crate::coeff::{FieldElem, RingSpec, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GMatrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl GMatrix {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        GMatrix {
            ring,
            rows,
            cols,
            data: vec![Scalar::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(ring));
        }
        m
    }

    pub fn from_rows(ring: RingSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut m = Self::zeros(ring, rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidSupermatrix(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, v) in row.into_iter().enumerate() {
                if v.ring() != ring {
                    return Err(Error::RingMismatch {
                        left: v.ring(),
                        right: ring,
                    });
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &GMatrix) -> GMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = GMatrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::zero(self.ring);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    fn zip(&self, other: &GMatrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> GMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        GMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &GMatrix) -> GMatrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GMatrix) -> GMatrix {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> GMatrix {
        GMatrix {
            data: self.data.iter().map(|a| -a.clone()).collect(),
            ..self.clone()
        }
    }

    /// Field matrix of bodies.
    pub fn body(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).body()).collect())
            .collect()
    }

    pub fn all_even(&self) -> bool {
        self.data.iter().all(Scalar::is_even)
    }

    pub fn all_odd(&self) -> bool {
        self.data.iter().all(Scalar::is_odd)
    }

    fn require_even_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::InvalidArgument(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )));
        }
        if !self.all_even() {
            return Err(Error::NotEven);
        }
        Ok(())
    }

    /// Determinant of a matrix of even (hence commuting) entries.
    pub fn even_det(&self) -> Result<Scalar> {
        self.require_even_square()?;
        if self.rows <= 4 {
            return Ok(self.cofactor_det());
        }
        Ok(self
            .elimination_det()
            .unwrap_or_else(|| self.cofactor_det()))
    }

    fn cofactor_det(&self) -> Scalar {
        let idx: Vec<usize> = (0..self.rows).collect();
        self.cofactor(0, &idx)
    }

    /// Laplace expansion along `row` over the remaining columns.
    fn cofactor(&self, row: usize, cols: &[usize]) -> Scalar {
        if cols.is_empty() {
            return Scalar::one(self.ring);
        }
        let mut acc = Scalar::zero(self.ring);
        for (k, &c) in cols.iter().enumerate() {
            let entry = self.get(row, c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry * &self.cofactor(row + 1, &rest);
            acc = if k % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    /// `None` when some column has no pivot with invertible body.
    fn elimination_det(&self) -> Option<Scalar> {
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one(self.ring);
        for col in 0..n {
            let pr = (col..n).find(|&r| !m.get(r, col).body().is_zero())?;
            if pr != col {
                for j in 0..n {
                    let a = m.get(pr, j).clone();
                    let b = m.get(col, j).clone();
                    m.set(pr, j, b);
                    m.set(col, j, a);
                }
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            let inv = pivot.inverse().ok()?;
            det = &det * &pivot;
            for r in col + 1..n {
                let factor = m.get(r, col) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m.get(r, j) - &(&factor * m.get(col, j));
                    m.set(r, j, v);
                }
            }
        }
        Some(det)
    }

    /// Inverse of an even matrix with invertible body, by Gauss-Jordan.
    pub fn even_inverse(&self) -> Result<GMatrix> {
        self.require_even_square()?;
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = GMatrix::identity(self.ring, n);
        for col in 0..n {
            let pr = (col..n)
                .find(|&r| !m.get(r, col).body().is_zero())
                .ok_or(Error::NotInvertible)?;
            if pr != col {
                for j in 0..n {
                    for mat in [&mut m, &mut inv] {
                        let a = mat.get(pr, j).clone();
                        let b = mat.get(col, j).clone();
                        mat.set(pr, j, b);
                        mat.set(col, j, a);
                    }
                }
            }
            let p_inv = m.get(col, col).inverse()?;
            for j in 0..n {
                let a = &p_inv * m.get(col, j);
                m.set(col, j, a);
                let b = &p_inv * inv.get(col, j);
                inv.set(col, j, b);
            }
            for r in (0..n).filter(|&r| r != col) {
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let a = m.get(r, j) - &(&factor * m.get(col, j));
                    m.set(r, j, a);
                    let b = inv.get(r, j) - &(&factor * inv.get(col, j));
                    inv.set(r, j, b);
                }
            }
        }
        Ok(inv)
    }
}
