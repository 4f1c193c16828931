use std::collections::BTreeMap;

use super::echelon::Echelon;
use super::scalar::{Field, Scalar};
use super::vector::{Acc, Vector};

/// Accumulates vector-valued linear equations in a fixed set of unknowns.
///
/// Each call to [`Constraints::add`] contributes `coef · value` to equation group
/// `group`, where `value` is a vector of the group's output coordinates, multiplied
/// by unknown `unknown`. Every (group, coordinate) pair becomes one scalar equation.
#[derive(Clone)]
pub struct Constraints {
    field: Field,
    unknowns: usize,
    rows: BTreeMap<(usize, usize), Acc>,
    rhs: BTreeMap<(usize, usize), Scalar>,
    extra: Vec<Vector>,
}

impl Constraints {
    pub fn new(field: Field, unknowns: usize) -> Self {
        Constraints { field, unknowns, rows: BTreeMap::new(), rhs: BTreeMap::new(), extra: Vec::new() }
    }

    pub fn add(&mut self, group: usize, unknown: usize, value: &Vector, coef: &Scalar) {
        for (y, v) in value.iter() {
            self.rows.entry((group, y)).or_default().add(unknown, &(v * coef));
        }
    }

    /// Adds `value` to the right-hand side of `group`.
    pub fn add_rhs(&mut self, group: usize, value: &Vector) {
        for (y, v) in value.iter() {
            let e = self.rhs.entry((group, y)).or_insert_with(|| self.field.zero());
            *e = &*e + v;
            self.rows.entry((group, y)).or_default();
        }
    }

    /// Adds homogeneous equations given directly as rows.
    pub fn add_rows(&mut self, rows: impl IntoIterator<Item = Vector>) {
        self.extra.extend(rows);
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    fn split(self) -> (Vec<Vector>, Vector) {
        let mut rows = Vec::with_capacity(self.rows.len());
        let mut rhs = Vec::new();
        let rhs_map = self.rhs;
        for (i, (key, acc)) in self.rows.into_iter().enumerate() {
            if let Some(v) = rhs_map.get(&key) {
                rhs.push((i, v.clone()));
            }
            rows.push(acc.finish());
        }
        rows.extend(self.extra);
        (rows, Vector::from_pairs(rhs))
    }

    /// Reduced echelon basis of the homogeneous solution space.
    pub fn kernel(self) -> Vec<Vector> {
        let (f, n) = (self.field, self.unknowns);
        let (rows, _) = self.split();
        super::kernel_rows(f, n, &rows)
    }

    /// Echelon-canonical particular solution, if consistent.
    pub fn solve(self) -> Option<Vector> {
        let (f, n) = (self.field, self.unknowns);
        let (rows, rhs) = self.split();
        super::solve_rows(f, n, &rows, std::slice::from_ref(&rhs)).map(|mut v| v.remove(0))
    }

    /// The particular solution, or the ranks of the coefficient and augmented
    /// systems when inconsistent.
    pub fn solve_certified(self) -> Result<Vector, (usize, usize)> {
        let (f, n) = (self.field, self.unknowns);
        let (rows, rhs) = self.split();
        match super::solve_rows(f, n, &rows, std::slice::from_ref(&rhs)) {
            Some(mut v) => Ok(v.remove(0)),
            None => {
                let r = Echelon::from_rows(f, &rows).rank();
                Err((r, r + 1))
            }
        }
    }

    /// Whether `x` satisfies every equation.
    pub fn satisfied_by(self, x: &Vector) -> bool {
        let (rows, rhs) = self.split();
        rows.iter().enumerate().all(|(i, r)| {
            let lhs = r.dot(x);
            let want = rhs.get(i);
            match (lhs, want) {
                (None, None) => true,
                (Some(a), None) => a.is_zero(),
                (None, Some(b)) => b.is_zero(),
                (Some(a), Some(b)) => a == *b,
            }
        })
    }

    pub fn rank(self) -> usize {
        let f = self.field;
        let (rows, _) = self.split();
        Echelon::from_rows(f, &rows).rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_equation() {
        // x0 (1,1) + x1 (1,-1) = (2, 0)
        let f = Field::Rational;
        let mut c = Constraints::new(f, 2);
        c.add(0, 0, &Vector::from_dense(&[f.int(1), f.int(1)]), &f.one());
        c.add(0, 1, &Vector::from_dense(&[f.int(1), f.int(-1)]), &f.one());
        c.add_rhs(0, &Vector::from_dense(&[f.int(2), f.int(0)]));
        assert_eq!(c.solve().unwrap(), Vector::from_dense(&[f.int(1), f.int(1)]));
    }
}
