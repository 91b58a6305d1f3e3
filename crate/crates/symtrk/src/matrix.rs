//! Dense matrices over a field view, with exact Gaussian elimination.

use crate::field::{Elt, Field};
use std::fmt;

#[derive(Clone)]
pub struct MatrixGf {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elt>,
}

impl MatrixGf {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> MatrixGf {
        MatrixGf {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> MatrixGf {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elt>>) -> MatrixGf {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        MatrixGf {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Elt,
    ) -> MatrixGf {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MatrixGf {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Elt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> MatrixGf {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, other: &MatrixGf) -> MatrixGf {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(&self.field, self.rows, self.cols, |i, j| {
            self.field.add(self.get(i, j), other.get(i, j))
        })
    }

    pub fn sub(&self, other: &MatrixGf) -> MatrixGf {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(&self.field, self.rows, self.cols, |i, j| {
            self.field.sub(self.get(i, j), other.get(i, j))
        })
    }

    pub fn neg(&self) -> MatrixGf {
        Self::from_fn(&self.field, self.rows, self.cols, |i, j| {
            self.field.neg(self.get(i, j))
        })
    }

    pub fn scalar_mul(&self, c: &Elt) -> MatrixGf {
        Self::from_fn(&self.field, self.rows, self.cols, |i, j| {
            self.field.mul(c, self.get(i, j))
        })
    }

    pub fn mul(&self, other: &MatrixGf) -> MatrixGf {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.field;
        Self::from_fn(f, self.rows, other.cols, |i, j| {
            let mut acc = f.zero();
            for k in 0..self.cols {
                let p = f.mul(self.get(i, k), other.get(k, j));
                acc = f.add(&acc, &p);
            }
            acc
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduced row echelon form restricted to the first
    /// `pivot_cols` columns (remaining columns ride along as augmentation);
    /// returns the pivot column indices.
    pub fn rref_bounded(&mut self, pivot_cols: usize) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols.min(self.cols) {
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || f.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let s = f.mul(&factor, self.get(r, j));
                    let v = f.sub(self.get(i, j), &s);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_bounded(self.cols)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    pub fn det(&self) -> Elt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).unwrap();
            for i in c + 1..n {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..n {
                    let s = f.mul(&factor, m.get(c, j));
                    let v = f.sub(m.get(i, j), &s);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<MatrixGf> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let pivots = aug.rref_bounded(n);
        if pivots.len() != n {
            return None;
        }
        Some(Self::from_fn(f, n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// Solves self * x = rhs for each right-hand side with one elimination.
    /// Each solution is the lexicographically smallest one: free variables
    /// are set to zero. Inconsistent systems yield None.
    pub fn solve_many(&self, rhs: &[Vec<Elt>]) -> Vec<Option<Vec<Elt>>> {
        let f = &self.field;
        let k = rhs.len();
        let mut aug = Self::zeros(f, self.rows, self.cols + k);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
        }
        for (t, b) in rhs.iter().enumerate() {
            assert_eq!(b.len(), self.rows, "rhs length mismatch");
            for i in 0..self.rows {
                aug.set(i, self.cols + t, b[i].clone());
            }
        }
        let pivots = aug.rref_bounded(self.cols);
        let mut out = Vec::with_capacity(k);
        for t in 0..k {
            let consistent = (pivots.len()..self.rows)
                .all(|i| f.is_zero(aug.get(i, self.cols + t)));
            if !consistent {
                out.push(None);
                continue;
            }
            let mut x = vec![f.zero(); self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = aug.get(r, self.cols + t).clone();
            }
            out.push(Some(x));
        }
        out
    }

    pub fn solve(&self, rhs: &[Elt]) -> Option<Vec<Elt>> {
        self.solve_many(&[rhs.to_vec()]).pop().unwrap()
    }

    /// Compact text: one line per row; entries are enumeration indices,
    /// concatenated when the field has at most 10 elements.
    pub fn render(&self) -> String {
        let wide = self.field.order() > 10;
        let mut out = String::new();
        for i in 0..self.rows {
            let parts: Vec<String> = self
                .row(i)
                .iter()
                .map(|e| self.field.index_of(e).to_string())
                .collect();
            out.push_str(&parts.join(if wide { " " } else { "" }));
            out.push('\n');
        }
        out
    }
}

impl PartialEq for MatrixGf {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for MatrixGf {}

impl fmt::Debug for MatrixGf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixGf({}x{})\n{}", self.rows, self.cols, self.render())
    }
}
