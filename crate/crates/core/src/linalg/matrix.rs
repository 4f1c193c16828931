use std::fmt;

use super::echelon::Echelon;
use super::scalar::{Field, Scalar};
use super::vector::{Acc, Vector};

/// Dense matrix over a field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { field, rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect();
        Matrix::from_rows(field, &rows)
    }

    pub fn from_sparse_rows(field: Field, cols: usize, rows: &[Vector]) -> Self {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, c) in r.iter() {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn sparse_row(&self, i: usize) -> Vector {
        Vector::from_dense(self.row(i))
    }

    pub fn sparse_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.sparse_row(i)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let s = out.get(i, j) + &(a * b);
                        out.set(i, j, s);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", r.join(" "))?;
        }
        Ok(())
    }
}

/// Linear map between coordinate spaces, stored as sparse rows: row `i` is the
/// image of basis vector `i` (maps act on row vectors from the right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    pub field: Field,
    pub src: usize,
    pub dst: usize,
    pub rows: Vec<Vector>,
}

impl LinMap {
    pub fn zero(field: Field, src: usize, dst: usize) -> Self {
        LinMap { field, src, dst, rows: vec![Vector::zero(); src] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        LinMap { field, src: n, dst: n, rows: (0..n).map(|i| Vector::unit(field, i)).collect() }
    }

    pub fn from_rows(field: Field, dst: usize, rows: Vec<Vector>) -> Self {
        debug_assert!(rows.iter().all(|r| r.support_bound() <= dst));
        LinMap { field, src: rows.len(), dst, rows }
    }

    pub fn from_fn(field: Field, src: usize, dst: usize, f: impl FnMut(usize) -> Vector) -> Self {
        LinMap::from_rows(field, dst, (0..src).map(f).collect())
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        LinMap::from_rows(m.field(), m.ncols(), m.sparse_rows())
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_sparse_rows(self.field, self.dst, &self.rows)
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut acc = Acc::new();
        for (i, c) in v.iter() {
            acc.add_scaled(&self.rows[i], c);
        }
        acc.finish()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &LinMap) -> LinMap {
        assert_eq!(self.dst, g.src, "composition dimension mismatch");
        LinMap { field: self.field, src: self.src, dst: g.dst, rows: self.rows.iter().map(|r| g.apply(r)).collect() }
    }

    pub fn add(&self, o: &LinMap) -> LinMap {
        assert_eq!((self.src, self.dst), (o.src, o.dst));
        LinMap { field: self.field, src: self.src, dst: self.dst, rows: self.rows.iter().zip(&o.rows).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &LinMap) -> LinMap {
        assert_eq!((self.src, self.dst), (o.src, o.dst));
        LinMap { field: self.field, src: self.src, dst: self.dst, rows: self.rows.iter().zip(&o.rows).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> LinMap {
        LinMap { field: self.field, src: self.src, dst: self.dst, rows: self.rows.iter().map(|r| r.scale(c)).collect() }
    }

    pub fn transpose(&self) -> LinMap {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.dst];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in r.iter() {
                cols[j].push((i, c.clone()));
            }
        }
        LinMap {
            field: self.field,
            src: self.dst,
            dst: self.src,
            rows: cols.into_iter().map(Vector::from_sorted_unchecked).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn rank(&self) -> usize {
        Echelon::from_rows(self.field, &self.rows).rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.src
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.dst
    }

    pub fn is_invertible(&self) -> bool {
        self.src == self.dst && self.is_injective()
    }

    /// Two-sided inverse, if any.
    pub fn inverse(&self) -> Option<LinMap> {
        if self.src != self.dst {
            return None;
        }
        let n = self.src;
        let aug: Vec<Vector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.add(&Vector::unit(self.field, n + i)))
            .collect();
        let e = Echelon::from_rows(self.field, &aug);
        if e.rank() != n || e.pivots().iter().any(|&p| p >= n) {
            return None;
        }
        let rows = e.rows().iter().map(|r| Vector::from_pairs(r.iter().filter(|(j, _)| *j >= n).map(|(j, c)| (j - n, c.clone())))).collect();
        Some(LinMap::from_rows(self.field, n, rows))
    }

    /// Index of the first basis vector on which `self` and `o` differ.
    pub fn first_difference(&self, o: &LinMap) -> Option<usize> {
        self.rows.iter().zip(&o.rows).position(|(a, b)| a != b)
    }

    /// Block map `[self; o]` on the direct sum of sources into a common target.
    pub fn stack(&self, o: &LinMap) -> LinMap {
        assert_eq!(self.dst, o.dst);
        let mut rows = self.rows.clone();
        rows.extend(o.rows.iter().cloned());
        LinMap::from_rows(self.field, self.dst, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let f = Field::Rational;
        let m = LinMap::from_matrix(&Matrix::from_ints(f, &[&[2, 1], &[1, 1]]));
        let inv = m.inverse().unwrap();
        assert_eq!(m.then(&inv), LinMap::identity(f, 2));
        let sing = LinMap::from_matrix(&Matrix::from_ints(f, &[&[1, 1], &[2, 2]]));
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn transpose_twice() {
        let f = Field::Prime(5);
        let m = LinMap::from_matrix(&Matrix::from_ints(f, &[&[1, 0, 3], &[0, 4, 0]]));
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().to_matrix(), m.to_matrix().transpose());
    }
}
