use std::collections::{BTreeMap, HashMap};

use super::scalar::{Field, Scalar};
use super::vector::Vector;

/// Incremental sparse Gaussian elimination. Rows are kept with leading entry 1;
/// after [`Echelon::finalize`] they form the reduced row-echelon basis of their span.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: Vec<Vector>,
    pivot_row: HashMap<usize, usize>,
    reduced: bool,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Echelon { field, rows: Vec::new(), pivot_row: HashMap::new(), reduced: true }
    }

    pub fn from_rows<'a>(field: Field, rows: impl IntoIterator<Item = &'a Vector>) -> Self {
        let mut e = Echelon::new(field);
        for r in rows {
            e.insert(r);
        }
        e.finalize();
        e
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, v: &Vector) -> Vector {
        if self.rows.is_empty() || v.is_zero() {
            return v.clone();
        }
        let mut acc: BTreeMap<usize, Scalar> = v.iter().map(|(i, c)| (i, c.clone())).collect();
        let mut cursor = 0usize;
        loop {
            let next = acc.range(cursor..).find(|(k, _)| self.pivot_row.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let row = &self.rows[self.pivot_row[&k]];
            for (j, x) in row.iter() {
                let t = x * &c;
                match acc.get_mut(&j) {
                    Some(y) => {
                        let s = &*y - &t;
                        if s.is_zero() {
                            acc.remove(&j);
                        } else {
                            *y = s;
                        }
                    }
                    None => {
                        acc.insert(j, -&t);
                    }
                }
            }
            cursor = k + 1;
        }
        Vector::from_sorted_unchecked(acc.into_iter().collect())
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &Vector) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.entries().first().cloned() else { return false };
        let r = r.scale(&lead.inv());
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(r);
        self.reduced = false;
        true
    }

    /// Back-substitutes so that every pivot column is zero outside its own row,
    /// and orders the rows by pivot.
    pub fn finalize(&mut self) {
        if self.reduced {
            return;
        }
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i].leading().unwrap()));
        for &i in &order {
            let row = self.rows[i].clone();
            let p = row.leading().unwrap();
            let mut acc: BTreeMap<usize, Scalar> = row.iter().map(|(k, c)| (k, c.clone())).collect();
            let targets: Vec<(usize, Scalar)> = row
                .iter()
                .filter(|(k, _)| *k != p && self.pivot_row.contains_key(k))
                .map(|(k, c)| (k, c.clone()))
                .collect();
            for (k, c) in targets {
                let other = &self.rows[self.pivot_row[&k]];
                for (j, x) in other.iter() {
                    let t = x * &c;
                    match acc.get_mut(&j) {
                        Some(y) => {
                            let s = &*y - &t;
                            if s.is_zero() {
                                acc.remove(&j);
                            } else {
                                *y = s;
                            }
                        }
                        None => {
                            acc.insert(j, -&t);
                        }
                    }
                }
            }
            self.rows[i] = Vector::from_sorted_unchecked(acc.into_iter().collect());
        }
        let mut rows = std::mem::take(&mut self.rows);
        rows.sort_by_key(|r| r.leading().unwrap());
        self.pivot_row = rows.iter().enumerate().map(|(i, r)| (r.leading().unwrap(), i)).collect();
        self.rows = rows;
        self.reduced = true;
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.leading().unwrap()).collect()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row.contains_key(&c)
    }

    pub fn pivot_row(&self, c: usize) -> Option<&Vector> {
        self.pivot_row.get(&c).map(|&i| &self.rows[i])
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the (finalized) row basis, if `v` lies in the span.
    pub fn coords(&self, v: &Vector) -> Option<Vector> {
        assert!(self.reduced, "coords on unfinalized echelon");
        let mut pairs = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            if let Some(c) = v.get(r.leading().unwrap()) {
                pairs.push((i, c.clone()));
            }
        }
        let coords = Vector::from_sorted_unchecked(pairs);
        let mut acc = super::vector::Acc::new();
        for (i, c) in coords.iter() {
            acc.add_scaled(&self.rows[i], c);
        }
        if acc.finish() == *v {
            Some(coords)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form_is_canonical() {
        let f = Field::Rational;
        let a = Vector::from_dense(&[f.int(0), f.int(1), f.int(1)]);
        let b = Vector::from_dense(&[f.int(0), f.int(0), f.int(1)]);
        let e1 = Echelon::from_rows(f, [&a, &b]);
        let e2 = Echelon::from_rows(f, [&b, &a.add(&b)]);
        assert_eq!(e1.rows(), e2.rows());
        assert_eq!(e1.pivots(), vec![1, 2]);
        assert_eq!(e1.coords(&a).unwrap(), Vector::from_dense(&[f.int(1), f.int(1)]));
    }
}
