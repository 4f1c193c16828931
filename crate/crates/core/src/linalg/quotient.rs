use super::echelon::Echelon;
use super::matrix::Matrix;
use super::scalar::Field;
use super::vector::{Acc, Vector};

/// Quotient of a coordinate space by the span of relation rows.
///
/// The quotient basis is the set of non-pivot ambient coordinates of the reduced
/// relations, so each quotient basis vector lifts to a single ambient basis vector.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    field: Field,
    ambient_dim: usize,
    relations: Echelon,
    basis: Vec<usize>,
    index: Vec<usize>,
}

const PIVOT: usize = usize::MAX;

impl QuotientSpace {
    pub fn new(field: Field, ambient_dim: usize, mut relations: Echelon) -> Self {
        relations.finalize();
        let mut index = vec![PIVOT; ambient_dim];
        let mut basis = Vec::new();
        for (c, slot) in index.iter_mut().enumerate() {
            if !relations.is_pivot(c) {
                *slot = basis.len();
                basis.push(c);
            }
        }
        QuotientSpace { field, ambient_dim, relations, basis, index }
    }

    pub fn trivial(field: Field, ambient_dim: usize) -> Self {
        QuotientSpace::new(field, ambient_dim, Echelon::new(field))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Ambient coordinate carrying quotient basis vector `q`.
    pub fn lift_index(&self, q: usize) -> usize {
        self.basis[q]
    }

    pub fn relations(&self) -> &Echelon {
        &self.relations
    }

    pub fn project(&self, v: &Vector) -> Vector {
        let mut acc = Acc::new();
        for (c, x) in v.iter() {
            let q = self.index[c];
            if q != PIVOT {
                acc.add(q, x);
            } else {
                let row = self.relations.pivot_row(c).unwrap();
                for (c2, y) in row.iter() {
                    if c2 != c {
                        acc.add(self.index[c2], &-&(x * y));
                    }
                }
            }
        }
        acc.finish()
    }

    pub fn project_index(&self, c: usize) -> Vector {
        self.project(&Vector::unit(self.field, c))
    }

    pub fn lift(&self, v: &Vector) -> Vector {
        v.reindex(|q| self.basis[q])
    }

    /// Whether `v` lies in the span of the relations.
    pub fn is_relation(&self, v: &Vector) -> bool {
        self.relations.contains(v)
    }

    /// Ambient → quotient as a dense matrix (rows indexed by ambient coordinates).
    pub fn project_matrix(&self) -> Matrix {
        let rows: Vec<Vector> = (0..self.ambient_dim).map(|c| self.project_index(c)).collect();
        Matrix::from_sparse_rows(self.field, self.dim(), &rows)
    }

    /// Quotient → ambient as a dense matrix.
    pub fn lift_matrix(&self) -> Matrix {
        let rows: Vec<Vector> = (0..self.dim()).map(|q| Vector::unit(self.field, self.basis[q])).collect();
        Matrix::from_sparse_rows(self.field, self.ambient_dim, &rows)
    }
}

/// Subspace of a coordinate space with its reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    echelon: Echelon,
}

impl Subspace {
    pub fn new(field: Field, ambient_dim: usize, rows: &[Vector]) -> Self {
        Subspace { ambient_dim, echelon: Echelon::from_rows(field, rows) }
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vector] {
        self.echelon.rows()
    }

    pub fn field(&self) -> Field {
        self.echelon.field()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.echelon.contains(v)
    }

    pub fn coords(&self, v: &Vector) -> Option<Vector> {
        self.echelon.coords(v)
    }

    pub fn embed(&self, coords: &Vector) -> Vector {
        let mut acc = Acc::new();
        for (i, c) in coords.iter() {
            acc.add_scaled(&self.echelon.rows()[i], c);
        }
        acc.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_by_antidiagonal() {
        let f = Field::Rational;
        let mut e = Echelon::new(f);
        e.insert(&Vector::from_dense(&[f.int(1), f.int(-1)]));
        let q = QuotientSpace::new(f, 2, e);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.project(&Vector::unit(f, 0)), Vector::unit(f, 0));
        let pl = q.lift_matrix().mul(&q.project_matrix());
        assert_eq!(pl, Matrix::identity(f, 1));
    }
}
