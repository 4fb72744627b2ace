//! Dense exact matrices over a single field, with Gauss-Jordan reduction.
//!
//! Vectors are rows throughout the crate; a matrix of shape (a, b) is the
//! linear map k^a -> k^b acting by `v * M`.

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    /// Builds a matrix from row vectors, checking that every entry lives in
    /// the same field.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Mat> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} in a {}-column matrix",
                    r.len(),
                    cols
                )));
            }
            for s in r {
                if s.field() != field {
                    return Err(Error::FieldMismatch(format!(
                        "entry over {} in a matrix over {}",
                        s.field(),
                        field
                    )));
                }
            }
        }
        let nrows = rows.len();
        Ok(Mat {
            field,
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn rows_vec(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.at(j, i).clone()
        })
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.at(i, j).add(o.at(i, j))
        })
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.at(i, j).sub(o.at(i, j))
        })
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.at(i, j).mul(s)
        })
    }

    pub fn matmul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matmul shape mismatch");
        Mat::from_fn(self.field, self.rows, o.cols, |i, j| {
            let mut acc = self.field.zero();
            for l in 0..self.cols {
                acc = acc.add(&self.at(i, l).mul(o.at(l, j)));
            }
            acc
        })
    }

    /// v * M for a row vector v.
    pub fn apply_row(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows, "apply_row shape mismatch");
        (0..self.cols)
            .map(|j| {
                let mut acc = self.field.zero();
                for i in 0..self.rows {
                    acc = acc.add(&v[i].mul(self.at(i, j)));
                }
                acc
            })
            .collect()
    }

    /// In-place Gauss-Jordan reduction; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.at(r, c).inv();
            for j in c..self.cols {
                let v = self.at(r, j).mul(&inv);
                *self.at_mut(r, j) = v;
            }
            for i in 0..self.rows {
                if i == r || self.at(i, c).is_zero() {
                    continue;
                }
                let f = self.at(i, c).clone();
                for j in c..self.cols {
                    let v = self.at(i, j).sub(&f.mul(self.at(r, j)));
                    *self.at_mut(i, j) = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the left kernel {v : v*M = 0}, as RREF rows of length nrows.
    pub fn kernel(&self) -> Mat {
        let (r, pivots) = self.transpose().rref();
        let n = self.rows;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![self.field.zero(); n];
            v[fc] = self.field.one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = r.at(ri, fc).neg();
            }
            rows.push(v);
        }
        let mut m = Mat::from_rows(self.field, n, rows).expect("kernel rows");
        m.rref_in_place();
        m
    }

    /// Solves v * M = target for a row vector v; None if inconsistent.
    pub fn solve_row(&self, target: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(target.len(), self.cols);
        // Augment M^T with the target column and reduce.
        let mt = self.transpose();
        let mut aug = Mat::zeros(self.field, self.cols, self.rows + 1);
        for i in 0..self.cols {
            for j in 0..self.rows {
                *aug.at_mut(i, j) = mt.at(i, j).clone();
            }
            *aug.at_mut(i, self.rows) = target[i].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.rows) {
            return None; // pivot in the augmented column
        }
        let mut v = vec![self.field.zero(); self.rows];
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = aug.at(ri, self.rows).clone();
        }
        Some(v)
    }

    /// Inverse of a square matrix; None when singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = self.field.one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        Some(Mat::from_fn(self.field, n, n, |i, j| {
            aug.at(i, n + j).clone()
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    /// Determinant of a square matrix by fraction-preserving elimination.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return self.field.zero();
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = det.neg();
            }
            let pivot = m.at(c, c).clone();
            det = det.mul(&pivot);
            for i in c + 1..n {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c).div(&pivot);
                for j in c..n {
                    let v = m.at(i, j).sub(&f.mul(m.at(c, j)));
                    *m.at_mut(i, j) = v;
                }
            }
        }
        det
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        Mat::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&n| Scalar::from_i64(field, n)).collect())
                .collect(),
        )
        .expect("integer rows")
    }
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn vec_scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x.mul(s)).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let mut acc = a
        .first()
        .map(|s| s.field().zero())
        .unwrap_or_else(|| FieldSpec::Rationals.zero());
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(y));
    }
    acc
}

/// True when b = c*a for some scalar c (a, b over the same field).
pub fn proportional(a: &[Scalar], b: &[Scalar]) -> bool {
    match a.iter().position(|s| !s.is_zero()) {
        None => vec_is_zero(b),
        Some(i) => {
            if b[i].is_zero() {
                return vec_is_zero(b);
            }
            let c = b[i].div(&a[i]);
            a.iter().zip(b).all(|(x, y)| x.mul(&c) == *y)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn rref_normalizes_scaling() {
        let m = Mat::from_i64_rows(q(), &[&[2, 0], &[0, 2]]);
        let (r, p) = m.rref();
        assert_eq!(r, Mat::identity(q(), 2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_drops_dependent_rows_to_zero() {
        let m = Mat::from_i64_rows(q(), &[&[1, 2], &[2, 4]]);
        let (r, p) = m.rref();
        assert_eq!(p, vec![0]);
        assert!(r.row(1).iter().all(|s| s.is_zero()));
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let m = Mat::zeros(q(), 5, 3);
        assert_eq!(m.kernel().nrows(), 5);
    }

    #[test]
    fn solve_and_inverse() {
        let m = Mat::from_i64_rows(q(), &[&[1, 2], &[3, 5]]);
        let t = vec![Scalar::from_i64(q(), 7), Scalar::from_i64(q(), 12)];
        let v = m.solve_row(&t).unwrap();
        assert_eq!(m.apply_row(&v), t);
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Mat::identity(q(), 2));
        let sing = Mat::from_i64_rows(q(), &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn proportional_detects_scaling() {
        let f = q();
        let a = vec![Scalar::from_i64(f, 2), Scalar::from_i64(f, 4)];
        let b = vec![Scalar::from_i64(f, 3), Scalar::from_i64(f, 6)];
        let c = vec![Scalar::from_i64(f, 3), Scalar::from_i64(f, 5)];
        assert!(proportional(&a, &b));
        assert!(!proportional(&a, &c));
    }
}
