use std::collections::BTreeMap;

use super::scalar::{Field, Scalar};

/// Sparse coordinate vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector {
    entries: Vec<(usize, Scalar)>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { entries: Vec::new() }
    }

    pub fn unit(field: Field, i: usize) -> Self {
        Vector { entries: vec![(i, field.one())] }
    }

    pub fn single(i: usize, c: Scalar) -> Self {
        if c.is_zero() {
            Vector::zero()
        } else {
            Vector { entries: vec![(i, c)] }
        }
    }

    pub fn from_dense(xs: &[Scalar]) -> Self {
        Vector {
            entries: xs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect(),
        }
    }

    /// Builds from unsorted pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut acc = Acc::new();
        for (i, c) in pairs {
            acc.add(i, &c);
        }
        acc.finish()
    }

    pub fn to_dense(&self, field: Field, n: usize) -> Vec<Scalar> {
        let mut out = vec![field.zero(); n];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries.binary_search_by_key(&i, |e| e.0).ok().map(|k| &self.entries[k].1)
    }

    pub fn coeff(&self, field: Field, i: usize) -> Scalar {
        self.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|e| e.0)
    }

    /// Largest index plus one (0 for the zero vector).
    pub fn support_bound(&self) -> usize {
        self.entries.last().map(|e| e.0 + 1).unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    pub fn neg(&self) -> Vector {
        Vector { entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect() }
    }

    pub fn add(&self, o: &Vector) -> Vector {
        let mut acc = Acc::new();
        acc.add_vec(self);
        acc.add_vec(o);
        acc.finish()
    }

    pub fn sub(&self, o: &Vector) -> Vector {
        let mut acc = Acc::new();
        acc.add_vec(self);
        for (i, c) in o.iter() {
            acc.add(i, &-c);
        }
        acc.finish()
    }

    pub fn dot(&self, o: &Vector) -> Option<Scalar> {
        let mut out: Option<Scalar> = None;
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < o.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &o.entries[b];
            if i == j {
                let t = x * y;
                out = Some(match out {
                    Some(s) => &s + &t,
                    None => t,
                });
                a += 1;
                b += 1;
            } else if i < j {
                a += 1;
            } else {
                b += 1;
            }
        }
        out
    }

    /// Applies `f` to indices; `f` must be injective on the support.
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> Vector {
        Vector::from_pairs(self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }

    /// Shifts indices by `off` (used for block layouts).
    pub fn shift(&self, off: usize) -> Vector {
        Vector { entries: self.entries.iter().map(|(i, c)| (i + off, c.clone())).collect() }
    }

    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, Scalar)>) -> Self {
        Vector { entries }
    }
}

/// Accumulator for sparse linear combinations.
#[derive(Clone, Default)]
pub struct Acc {
    map: BTreeMap<usize, Scalar>,
}

impl Acc {
    pub fn new() -> Self {
        Acc { map: BTreeMap::new() }
    }

    pub fn add(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(x) => {
                let s = &*x + c;
                if s.is_zero() {
                    self.map.remove(&i);
                } else {
                    *x = s;
                }
            }
            None => {
                self.map.insert(i, c.clone());
            }
        }
    }

    pub fn add_vec(&mut self, v: &Vector) {
        for (i, c) in v.iter() {
            self.add(i, c);
        }
    }

    pub fn add_scaled(&mut self, v: &Vector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        if c.is_one() {
            return self.add_vec(v);
        }
        for (i, x) in v.iter() {
            self.add(i, &(x * c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    pub fn finish(self) -> Vector {
        Vector::from_sorted_unchecked(self.map.into_iter().collect())
    }
}
