//! Exact linear algebra over ℚ and 𝔽_p.

mod constraints;
mod echelon;
mod matrix;
mod quotient;
mod scalar;
mod vector;

pub use constraints::Constraints;
pub use echelon::Echelon;
pub use matrix::{LinMap, Matrix};
pub use quotient::{QuotientSpace, Subspace};
pub use scalar::{Field, Scalar};
pub use vector::{Acc, Vector};

/// Reduced row-echelon form and pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let e = Echelon::from_rows(m.field(), &m.sparse_rows());
    let mut rows = e.rows().to_vec();
    rows.resize(m.nrows(), Vector::zero());
    (Matrix::from_sparse_rows(m.field(), m.ncols(), &rows), e.pivots())
}

pub fn rank(m: &Matrix) -> usize {
    Echelon::from_rows(m.field(), &m.sparse_rows()).rank()
}

/// Basis of `{x : m·x = 0}` as rows, in reduced echelon form.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let rows = kernel_rows(m.field(), m.ncols(), &m.sparse_rows());
    Matrix::from_sparse_rows(m.field(), m.ncols(), &rows)
}

/// Echelon-canonical solution `X` of `m·X = targets` (free variables zero), if consistent.
pub fn solve(m: &Matrix, targets: &Matrix) -> Option<Matrix> {
    assert_eq!(m.nrows(), targets.nrows(), "solve: row mismatch");
    let rhs: Vec<Vector> = (0..targets.ncols())
        .map(|j| Vector::from_pairs((0..targets.nrows()).map(|i| (i, targets.get(i, j).clone()))))
        .collect();
    let sols = solve_rows(m.field(), m.ncols(), &m.sparse_rows(), &rhs)?;
    let mut out = Matrix::zeros(m.field(), m.ncols(), targets.ncols());
    for (j, s) in sols.iter().enumerate() {
        for (i, c) in s.iter() {
            out.set(i, j, c.clone());
        }
    }
    Some(out)
}

pub fn quotient_space(ambient_dim: usize, relations: &Matrix) -> QuotientSpace {
    assert_eq!(relations.ncols(), ambient_dim, "relation width");
    QuotientSpace::new(relations.field(), ambient_dim, Echelon::from_rows(relations.field(), &relations.sparse_rows()))
}

/// Kernel of the constraint rows `rows` (each a linear functional on `ncols` unknowns).
pub fn kernel_rows(field: Field, ncols: usize, rows: &[Vector]) -> Vec<Vector> {
    let e = Echelon::from_rows(field, rows);
    kernel_of_echelon(field, ncols, &e)
}

pub fn kernel_of_echelon(field: Field, ncols: usize, e: &Echelon) -> Vec<Vector> {
    let mut e = e.clone();
    e.finalize();
    let pivots = e.pivots();
    let mut basis = Vec::new();
    // column -> list of (pivot, coefficient) from rows containing that free column
    let mut by_col: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); ncols];
    for (r, &p) in e.rows().iter().zip(&pivots) {
        for (c, x) in r.iter() {
            if c != p {
                by_col[c].push((p, x.clone()));
            }
        }
    }
    for (f, col) in by_col.iter().enumerate() {
        if e.is_pivot(f) {
            continue;
        }
        let mut pairs = vec![(f, field.one())];
        for (p, x) in col {
            pairs.push((*p, -x));
        }
        basis.push(Vector::from_pairs(pairs));
    }
    Echelon::from_rows(field, &basis).rows().to_vec()
}

/// Solves `Σ_j rows[i][j] x_j = rhs_k[i]` for each right-hand side `rhs_k`
/// (given as a vector over the row index). Returns `None` if any is inconsistent.
pub fn solve_rows(field: Field, ncols: usize, rows: &[Vector], rhs: &[Vector]) -> Option<Vec<Vector>> {
    let k = rhs.len();
    let mut aug: Vec<Vec<(usize, Scalar)>> = rows.iter().map(|r| r.entries().to_vec()).collect();
    for (j, t) in rhs.iter().enumerate() {
        for (i, c) in t.iter() {
            aug[i].push((ncols + j, c.clone()));
        }
    }
    let aug: Vec<Vector> = aug.into_iter().map(Vector::from_pairs).collect();
    let e = Echelon::from_rows(field, &aug);
    if e.pivots().iter().any(|&p| p >= ncols) {
        return None;
    }
    let mut sols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); k];
    for r in e.rows() {
        let p = r.leading().unwrap();
        for (c, x) in r.iter() {
            if c >= ncols {
                sols[c - ncols].push((p, x.clone()));
            }
        }
    }
    Some(sols.into_iter().map(Vector::from_pairs).collect())
}

/// Finds `x` with `x · map = y` (row convention), echelon-canonical.
pub fn preimage(map: &LinMap, y: &Vector) -> Option<Vector> {
    let t = map.transpose();
    solve_rows(map.field, map.src, &t.rows, std::slice::from_ref(y)).map(|mut v| v.remove(0))
}

/// Kernel of a map in row convention: `{x : x · map = 0}`.
pub fn map_kernel(map: &LinMap) -> Vec<Vector> {
    kernel_rows(map.field, map.src, &map.transpose().rows)
}

/// Basis of the combinations `Σ λ_k m_k` of `candidates` whose residual vanishes,
/// for a residual that is linear in the map and given blockwise.
pub fn combination_kernel(candidates: &[LinMap], mut residual: impl FnMut(&LinMap) -> Vec<Vector>) -> Vec<LinMap> {
    let Some(first) = candidates.first() else {
        return Vec::new();
    };
    let field = first.field;
    let mut cs = Constraints::new(field, candidates.len());
    let one = field.one();
    for (k, m) in candidates.iter().enumerate() {
        for (block, v) in residual(m).iter().enumerate() {
            cs.add(block, k, v, &one);
        }
    }
    cs.kernel()
        .iter()
        .map(|lam| {
            let mut out = LinMap::zero(field, first.src, first.dst);
            for (k, c) in lam.iter() {
                out = out.add(&candidates[k].scale(c));
            }
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        let f = Field::Rational;
        let k = kernel_basis(&Matrix::from_ints(f, &[&[1, 1], &[2, 2]]));
        assert_eq!(k, Matrix::from_ints(f, &[&[1, -1]]));
    }

    #[test]
    fn solve_scalar() {
        let f = Field::Rational;
        let x = solve(&Matrix::from_ints(f, &[&[2]]), &Matrix::from_ints(f, &[&[1]])).unwrap();
        assert_eq!(x.get(0, 0), &f.ratio(1, 2).unwrap());
        assert!(solve(&Matrix::from_ints(f, &[&[0]]), &Matrix::from_ints(f, &[&[1]])).is_none());
    }

    #[test]
    fn solve_takes_free_variables_zero() {
        let f = Field::Rational;
        let x = solve(&Matrix::from_ints(f, &[&[1, 1]]), &Matrix::from_ints(f, &[&[3]])).unwrap();
        assert_eq!(x, Matrix::from_ints(f, &[&[3], &[0]]));
    }

    #[test]
    fn rref_pivots() {
        let f = Field::Prime(5);
        let (r, p) = rref(&Matrix::from_ints(f, &[&[0, 2, 4], &[0, 1, 2]]));
        assert_eq!(p, vec![1]);
        assert_eq!(r, Matrix::from_ints(f, &[&[0, 1, 2], &[0, 0, 0]]));
    }

    #[test]
    fn kernel_times_matrix_vanishes() {
        let f = Field::Rational;
        let m = Matrix::from_ints(f, &[&[1, 2, 3, 4], &[2, 4, 6, 9]]);
        let k = kernel_basis(&m);
        assert_eq!(k.nrows(), 2);
        assert!(m.mul(&k.transpose()).is_zero());
    }

    #[test]
    fn preimage_in_row_convention() {
        let f = Field::Rational;
        let m = LinMap::from_matrix(&Matrix::from_ints(f, &[&[1, 1], &[0, 2]]));
        let y = Vector::from_dense(&[f.int(1), f.int(5)]);
        let x = preimage(&m, &y).unwrap();
        assert_eq!(m.apply(&x), y);
    }
}
