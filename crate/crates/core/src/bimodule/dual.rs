use std::sync::Arc;

use super::{Bimodule, Tensor};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{kernel_rows, solve_rows, Acc, Echelon, Field, LinMap, Scalar, Vector};

/// Outcome of a witness search.
#[derive(Clone, Debug)]
pub enum Witnessed<T> {
    Found(T),
    /// Proven absent, with the reason.
    Absent(String),
    /// Not found with coefficients bounded by the given value.
    AbsentWithinBound(u32),
}

impl<T> Witnessed<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Witnessed::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Witnessed::Found(_))
    }
}

pub fn flatten(m: &LinMap) -> Vector {
    let d = m.dst;
    Vector::from_pairs(m.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(l, c)| (i * d + l, c.clone()))))
}

pub fn unflatten(f: Field, v: &Vector, src: usize, dst: usize) -> LinMap {
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); src];
    for (k, c) in v.iter() {
        rows[k / dst].push((k % dst, c.clone()));
    }
    LinMap::from_rows(f, dst, rows.into_iter().map(Vector::from_pairs).collect())
}

/// Constraint rows (over the flattened unknowns of a map `src → dst`) for
/// commuting with the left and/or right actions.
pub fn hom_constraints(src: &Bimodule, dst: &Bimodule, left: bool, right: bool) -> Vec<Vector> {
    let (n, d) = (src.dim(), dst.dim());
    let mut rows = Vec::new();
    let mut pairs: Vec<(&LinMap, &LinMap)> = Vec::new();
    if left {
        pairs.extend((0..src.left().dim()).map(|b| (src.left_basis_action(b), dst.left_basis_action(b))));
    }
    if right {
        pairs.extend((0..src.right().dim()).map(|a| (src.right_basis_action(a), dst.right_basis_action(a))));
    }
    for (sa, da) in pairs {
        for i in 0..n {
            let mut per_l: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d];
            for (j, c) in sa.rows[i].iter() {
                for (l, slot) in per_l.iter_mut().enumerate() {
                    slot.push((j * d + l, c.clone()));
                }
            }
            for m in 0..d {
                for (l, c) in da.rows[m].iter() {
                    per_l[l].push((i * d + m, -c));
                }
            }
            for p in per_l {
                let v = Vector::from_pairs(p);
                if !v.is_zero() {
                    rows.push(v);
                }
            }
        }
    }
    rows
}

/// Basis of the space of maps `src → dst` commuting with the requested actions.
pub fn hom_space(src: &Bimodule, dst: &Bimodule, left: bool, right: bool) -> Vec<LinMap> {
    let f = src.field();
    let rows = hom_constraints(src, dst, left, right);
    kernel_rows(f, src.dim() * dst.dim(), &rows)
        .iter()
        .map(|v| unflatten(f, v, src.dim(), dst.dim()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualSide {
    /// `Σ* = Hom_A(Σ, A)` for a `(B, A)`-bimodule `Σ`.
    Right,
    /// `*Σ = Hom_B(Σ, B)`.
    Left,
}

/// A dual bimodule together with its basis realised as explicit maps.
#[derive(Debug)]
pub struct DualModule {
    side: DualSide,
    source: Arc<Bimodule>,
    values: Arc<Algebra>,
    maps: Vec<LinMap>,
    space: Echelon,
    module: Arc<Bimodule>,
}

/// `Σ* = Hom_A(Σ, A)` as an `(A, B)`-bimodule, `(a·f·b)(s) = a·f(b·s)`.
pub fn right_dual(sigma: &Arc<Bimodule>) -> Arc<DualModule> {
    DualModule::build(sigma, DualSide::Right)
}

/// `*Σ = Hom_B(Σ, B)` as an `(A, B)`-bimodule, `(a·g·b)(s) = g(s·a)·b`.
pub fn left_dual(sigma: &Arc<Bimodule>) -> Arc<DualModule> {
    DualModule::build(sigma, DualSide::Left)
}

impl DualModule {
    fn build(sigma: &Arc<Bimodule>, side: DualSide) -> Arc<DualModule> {
        let f = sigma.field();
        let values = match side {
            DualSide::Right => sigma.right().clone(),
            DualSide::Left => sigma.left().clone(),
        };
        let reg = Bimodule::regular(&values);
        let maps = match side {
            DualSide::Right => hom_space(sigma, &reg, false, true),
            DualSide::Left => hom_space(sigma, &reg, true, false),
        };
        let flat: Vec<Vector> = maps.iter().map(flatten).collect();
        let space = Echelon::from_rows(f, &flat);
        let n = maps.len();
        let (sd, vd) = (sigma.dim(), values.dim());
        let coords = |m: &LinMap| space.coords(&flatten(m)).expect("action preserves the dual");
        let e = |i| Vector::unit(f, i);
        let (outer_left, outer_right) = match side {
            DualSide::Right => (sigma.right().clone(), sigma.left().clone()),
            DualSide::Left => (sigma.right().clone(), sigma.left().clone()),
        };
        let left_act: Vec<LinMap> = (0..outer_left.dim())
            .map(|a| {
                LinMap::from_fn(f, n, n, |p| {
                    let g = match side {
                        DualSide::Right => LinMap::from_fn(f, sd, vd, |i| values.mul(&e(a), &maps[p].rows[i])),
                        DualSide::Left => LinMap::from_fn(f, sd, vd, |i| maps[p].apply(&sigma.right_basis_action(a).rows[i])),
                    };
                    coords(&g)
                })
            })
            .collect();
        let right_act: Vec<LinMap> = (0..outer_right.dim())
            .map(|b| {
                LinMap::from_fn(f, n, n, |p| {
                    let g = match side {
                        DualSide::Right => LinMap::from_fn(f, sd, vd, |i| maps[p].apply(&sigma.left_basis_action(b).rows[i])),
                        DualSide::Left => LinMap::from_fn(f, sd, vd, |i| values.mul(&maps[p].rows[i], &e(b))),
                    };
                    coords(&g)
                })
            })
            .collect();
        let module = Bimodule::new(outer_left, outer_right, n, left_act, right_act).expect("dual actions");
        Arc::new(DualModule { side, source: sigma.clone(), values, maps, space, module })
    }

    pub fn side(&self) -> DualSide {
        self.side
    }

    pub fn module(&self) -> &Arc<Bimodule> {
        &self.module
    }

    pub fn source(&self) -> &Arc<Bimodule> {
        &self.source
    }

    pub fn values(&self) -> &Arc<Algebra> {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    /// Basis element `p` as a map out of the source.
    pub fn basis_map(&self, p: usize) -> &LinMap {
        &self.maps[p]
    }

    /// The element `f` (in dual coordinates) as a map out of the source.
    pub fn as_map(&self, f: &Vector) -> LinMap {
        let mut out = LinMap::zero(self.source.field(), self.source.dim(), self.values.dim());
        for (p, c) in f.iter() {
            out = out.add(&self.maps[p].scale(c));
        }
        out
    }

    /// `f(s)`.
    pub fn eval(&self, f: &Vector, s: &Vector) -> Vector {
        let mut acc = Acc::new();
        for (p, c) in f.iter() {
            acc.add_scaled(&self.maps[p].apply(s), c);
        }
        acc.finish()
    }

    /// Dual coordinates of a map out of the source, if it is linear on the right side.
    pub fn coords(&self, m: &LinMap) -> Option<Vector> {
        self.space.coords(&flatten(m))
    }
}

/// Finite dual basis: `s = Σ e_i·e_i*(s)` (right side) or `s = Σ e_i*(s)·e_i` (left side).
#[derive(Clone, Debug)]
pub struct DualBasis {
    pub side: DualSide,
    /// Elements of the source module.
    pub elems: Vec<Vector>,
    /// Matching dual elements in dual coordinates.
    pub duals: Vec<Vector>,
}

impl DualBasis {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// `Σ_i e_i ⊗ e_i*` in `Σ ⊗_A Σ*` (right side) or `Σ_i e_i* ⊗ e_i` in `*Σ ⊗_B Σ`.
    pub fn canonical_element(&self, t: &Tensor) -> Vector {
        let mut acc = Acc::new();
        for (e, d) in self.elems.iter().zip(&self.duals) {
            let v = match self.side {
                DualSide::Right => t.pure(&[e, d]),
                DualSide::Left => t.pure(&[d, e]),
            };
            acc.add_vec(&v);
        }
        acc.finish()
    }
}

/// Solves for a dual basis through the evaluation `Σ ⊗ Σ* → End(Σ)`.
pub fn dual_basis(dual: &DualModule) -> Result<DualBasis> {
    let sigma = &dual.source;
    let f = sigma.field();
    let (n, m) = (sigma.dim(), dual.dim());
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
    for j in 0..n {
        for p in 0..m {
            for t in 0..n {
                let val = dual.maps[p].rows[t].clone();
                let img = match dual.side {
                    DualSide::Right => sigma.act_right(&Vector::unit(f, j), &val),
                    DualSide::Left => sigma.act_left(&val, &Vector::unit(f, j)),
                };
                for (l, c) in img.iter() {
                    rows[t * n + l].push((j * m + p, c.clone()));
                }
            }
        }
    }
    let rows: Vec<Vector> = rows.into_iter().map(Vector::from_pairs).collect();
    let rhs = Vector::from_pairs((0..n).map(|t| (t * n + t, f.one())));
    let side_name = match dual.side {
        DualSide::Right => "right",
        DualSide::Left => "left",
    };
    let sol = solve_rows(f, n * m, &rows, std::slice::from_ref(&rhs))
        .ok_or_else(|| Error::NotProjective { side: side_name.to_string() })?
        .remove(0);
    let mut elems = Vec::new();
    let mut duals = Vec::new();
    for j in 0..n {
        let d = Vector::from_pairs(sol.iter().filter(|(k, _)| k / m == j).map(|(k, c)| (k % m, c.clone())));
        if !d.is_zero() {
            elems.push(Vector::unit(f, j));
            duals.push(d);
        }
    }
    Ok(DualBasis { side: dual.side, elems, duals })
}

/// First source basis index `s` where `Σ e_i·e_i*(s) ≠ s` (right side) or
/// `Σ e_i*(s)·e_i ≠ s` (left side).
pub fn dual_basis_failure(dual: &DualModule, w: &DualBasis) -> Option<Vec<usize>> {
    let sigma = &dual.source;
    let f = sigma.field();
    if w.side != dual.side || w.elems.len() != w.duals.len() {
        return Some(Vec::new());
    }
    (0..sigma.dim())
        .find(|&s| {
            let e = Vector::unit(f, s);
            let mut acc = Acc::new();
            for (x, d) in w.elems.iter().zip(&w.duals) {
                let v = dual.eval(d, &e);
                acc.add_vec(&match dual.side {
                    DualSide::Right => sigma.act_right(x, &v),
                    DualSide::Left => sigma.act_left(&v, x),
                });
            }
            acc.finish() != e
        })
        .map(|s| vec![s])
}

/// A bimodule `Σ` that is finitely generated projective on the right, with
/// `Σ*` and a chosen dual basis.
#[derive(Clone, Debug)]
pub struct ProjectiveModule {
    pub sigma: Arc<Bimodule>,
    pub dual: Arc<DualModule>,
    pub basis: DualBasis,
}

impl ProjectiveModule {
    pub fn new(sigma: &Arc<Bimodule>) -> Result<Self> {
        let dual = right_dual(sigma);
        let basis = dual_basis(&dual)?;
        Ok(ProjectiveModule { sigma: sigma.clone(), dual, basis })
    }

    pub fn with_basis(dual: Arc<DualModule>, basis: DualBasis) -> Result<Self> {
        if dual.side != DualSide::Right {
            return Err(Error::structural("dual_basis", "right dual expected"));
        }
        if let Some(w) = dual_basis_failure(&dual, &basis) {
            return Err(Error::structural(format!("dual_basis{w:?}"), "dual basis criterion fails"));
        }
        Ok(ProjectiveModule { sigma: dual.source.clone(), dual, basis })
    }

    /// `Σ*` as an `(A, B)`-bimodule.
    pub fn dual_module(&self) -> &Arc<Bimodule> {
        self.dual.module()
    }

    /// The same data with the first pair `(e, f)` split into `(e, 2f)` and `(e, -f)`.
    pub fn perturbed(&self) -> ProjectiveModule {
        let mut basis = self.basis.clone();
        if let (Some(e), Some(d)) = (basis.elems.first().cloned(), basis.duals.first().cloned()) {
            let f = self.sigma.field();
            basis.duals[0] = d.scale(&f.int(2));
            basis.elems.push(e);
            basis.duals.push(d.neg());
        }
        ProjectiveModule { sigma: self.sigma.clone(), dual: self.dual.clone(), basis }
    }

    /// `s*(s)`.
    pub fn eval(&self, f: &Vector, s: &Vector) -> Vector {
        self.dual.eval(f, s)
    }
}

/// Separability data for a `(B, A)`-bimodule `Σ` with `Σ_A` finitely generated projective.
#[derive(Clone, Debug)]
pub struct SeparabilityWitness {
    /// `Σ ⊗_A Σ*`, domain of `kappa`.
    pub endo: Arc<Tensor>,
    /// `(B, B)`-bilinear `κ: Σ ⊗_A Σ* → B` with `κ(Σ e_i ⊗ e_i*) = 1`.
    pub kappa: LinMap,
    /// `Σ ⊗_A *Σ`, home of `section`.
    pub evaluation_domain: Arc<Tensor>,
    /// `B`-central element of `Σ ⊗_A *Σ` evaluating to `1_B`.
    pub section: Vector,
}

pub fn separable_bimodule_witness(sigma: &Arc<Bimodule>) -> Result<Witnessed<SeparabilityWitness>> {
    let f = sigma.field();
    let b_alg = sigma.left().clone();
    let rdual = right_dual(sigma);
    let db = dual_basis(&rdual)?;
    let endo = Tensor::pair(sigma, rdual.module())?;
    let can = db.canonical_element(&endo);
    let reg_b = Bimodule::regular(&b_alg);
    let mut rows = hom_constraints(endo.module(), &reg_b, true, true);
    let nb = b_alg.dim();
    let base = rows.len();
    for l in 0..nb {
        rows.push(Vector::from_pairs(can.iter().map(|(x, c)| (x * nb + l, c.clone()))));
    }
    let rhs = Vector::from_pairs(b_alg.unit().iter().map(|(l, c)| (base + l, c.clone())));
    let Some(kappa) = solve_rows(f, endo.dim() * nb, &rows, std::slice::from_ref(&rhs)) else {
        return Ok(Witnessed::Absent("no (B,B)-bilinear splitting of B → End(Σ_A)".into()));
    };
    let kappa = unflatten(f, &kappa[0], endo.dim(), nb);

    let ldual = left_dual(sigma);
    let evd = Tensor::pair(sigma, ldual.module())?;
    let ev = evd.map_basis(nb, |t| ldual.eval(&Vector::unit(f, t[1]), &Vector::unit(f, t[0])));
    let dim = evd.dim();
    let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for b in 0..nb {
        let l = evd.module().left_basis_action(b);
        let r = evd.module().right_basis_action(b);
        let diff = l.sub(r).transpose();
        for row in diff.rows {
            if !row.is_zero() {
                rows.push(row.entries().to_vec());
            }
        }
    }
    let base = rows.len();
    for row in ev.transpose().rows {
        rows.push(row.entries().to_vec());
    }
    let rows: Vec<Vector> = rows.into_iter().map(Vector::from_pairs).collect();
    let rhs = Vector::from_pairs(b_alg.unit().iter().map(|(l, c)| (base + l, c.clone())));
    let Some(section) = solve_rows(f, dim, &rows, std::slice::from_ref(&rhs)) else {
        return Ok(Witnessed::Absent("evaluation Σ ⊗_A *Σ → B has no (B,B)-bilinear section".into()));
    };
    Ok(Witnessed::Found(SeparabilityWitness { endo, kappa, evaluation_domain: evd, section: section[0].clone() }))
}

/// Invertible `(A, B)`-bilinear `Σ* → *Σ`.
#[derive(Clone, Debug)]
pub struct FrobeniusWitness {
    pub right_dual: Arc<DualModule>,
    pub left_dual: Arc<DualModule>,
    pub map: LinMap,
    pub coefficients: Vec<i64>,
}

const SEARCH_CAP: usize = 200_000;

pub fn frobenius_bimodule_witness(sigma: &Arc<Bimodule>, coeff_bound: u32) -> Result<Witnessed<FrobeniusWitness>> {
    let f = sigma.field();
    let rd = right_dual(sigma);
    let ld = left_dual(sigma);
    dual_basis(&rd)?;
    dual_basis(&ld)?;
    if rd.dim() != ld.dim() {
        return Ok(Witnessed::Absent(format!("dim Σ* = {} differs from dim *Σ = {}", rd.dim(), ld.dim())));
    }
    let homs = hom_space(rd.module(), ld.module(), true, true);
    if rd.dim() == 0 {
        return Ok(Witnessed::Found(FrobeniusWitness { right_dual: rd, left_dual: ld, map: LinMap::zero(f, 0, 0), coefficients: vec![] }));
    }
    if homs.is_empty() {
        return Ok(Witnessed::Absent("no nonzero (A,B)-bilinear map Σ* → *Σ".into()));
    }
    Ok(match invertible_combination(f, &homs, coeff_bound) {
        Witnessed::Found((map, coefficients)) => Witnessed::Found(FrobeniusWitness { right_dual: rd, left_dual: ld, map, coefficients }),
        Witnessed::Absent(_) => Witnessed::Absent("exhaustive search over the finite hom space".into()),
        Witnessed::AbsentWithinBound(b) => Witnessed::AbsentWithinBound(b),
    })
}

/// An invertible integer combination of `homs`, searched by increasing
/// coefficient size (exhaustively over small prime fields).
pub fn invertible_combination(f: Field, homs: &[LinMap], coeff_bound: u32) -> Witnessed<(LinMap, Vec<i64>)> {
    let m = homs.len();
    if m == 0 {
        return Witnessed::Absent("empty hom space".into());
    }
    let exhaustive = match f {
        Field::Prime(p) => (p as u64).checked_pow(m as u32).is_some_and(|t| t as usize <= SEARCH_CAP),
        Field::Rational => false,
    };
    let bound = match f {
        Field::Prime(p) if exhaustive => (p / 2) as i64,
        _ => coeff_bound as i64,
    };
    let mut tried = 0usize;
    for coeffs in CoefficientWalk::new(m, bound) {
        tried += 1;
        if tried > SEARCH_CAP {
            break;
        }
        let mut g = LinMap::zero(f, homs[0].src, homs[0].dst);
        for (h, &c) in homs.iter().zip(&coeffs) {
            if c != 0 {
                g = g.add(&h.scale(&f.int(c)));
            }
        }
        if g.is_invertible() {
            return Witnessed::Found((g, coeffs));
        }
    }
    if exhaustive && tried <= SEARCH_CAP {
        return Witnessed::Absent("exhaustive search".into());
    }
    Witnessed::AbsentWithinBound(coeff_bound)
}

/// Integer vectors in `[-bound, bound]^m` by increasing max-norm, then
/// lexicographically in the order `0, 1, -1, 2, -2, …`.
struct CoefficientWalk {
    m: usize,
    bound: i64,
    radius: i64,
    state: Vec<usize>,
    done: bool,
}

impl CoefficientWalk {
    fn new(m: usize, bound: i64) -> Self {
        CoefficientWalk { m, bound, radius: 1, state: vec![0; m], done: bound < 1 || m == 0 }
    }

    fn value(k: usize) -> i64 {
        let h = k.div_ceil(2) as i64;
        if k % 2 == 1 {
            h
        } else {
            -h
        }
    }
}

impl Iterator for CoefficientWalk {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        while !self.done {
            let r = self.radius;
            let cur: Vec<i64> = self.state.iter().map(|&k| Self::value(k)).collect();
            let width = (2 * r + 1) as usize;
            let mut i = self.m;
            loop {
                if i == 0 {
                    self.radius += 1;
                    self.state = vec![0; self.m];
                    self.done = self.radius > self.bound;
                    break;
                }
                i -= 1;
                self.state[i] += 1;
                if self.state[i] < width {
                    break;
                }
                self.state[i] = 0;
            }
            if cur.iter().map(|c| c.abs()).max() == Some(r) {
                return Some(cur);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_module_dual_basis() {
        let f = Field::Rational;
        let a = Algebra::dual_numbers(f);
        let r = Bimodule::regular(&a);
        let d = right_dual(&r);
        assert_eq!(d.dim(), 2);
        let db = dual_basis(&d).unwrap();
        // Σ e_i e_i*(s) = s
        for s in 0..2 {
            let mut acc = Acc::new();
            for (e, x) in db.elems.iter().zip(&db.duals) {
                acc.add_vec(&r.act_right(e, &d.eval(x, &Vector::unit(f, s))));
            }
            assert_eq!(acc.finish(), Vector::unit(f, s));
        }
    }

    #[test]
    fn residue_field_is_not_projective() {
        let f = Field::Rational;
        let a = Algebra::dual_numbers(f);
        // ℚ as a right ℚ[x]/(x²)-module with x acting as 0
        let k = Algebra::ground(f);
        let xact = LinMap::zero(f, 1, 1);
        let m = Bimodule::new(k, a, 1, vec![LinMap::identity(f, 1)], vec![LinMap::identity(f, 1), xact]).unwrap();
        let d = right_dual(&m);
        assert_eq!(d.dim(), 1);
        assert!(matches!(dual_basis(&d), Err(Error::NotProjective { .. })));
    }

    #[test]
    fn walk_orders_by_radius() {
        let v: Vec<Vec<i64>> = CoefficientWalk::new(2, 1).collect();
        assert_eq!(v.len(), 8);
        assert_eq!(v[0], vec![0, 1]);
        assert!(v.iter().all(|x| x.iter().all(|c| c.abs() <= 1)));
        let w: Vec<Vec<i64>> = CoefficientWalk::new(1, 2).collect();
        assert_eq!(w, vec![vec![1], vec![-1], vec![2], vec![-2]]);
    }

    #[test]
    fn vector_space_is_separable_and_frobenius() {
        let f = Field::Rational;
        let s = Bimodule::vector_space(f, 2);
        let w = separable_bimodule_witness(&s).unwrap();
        assert!(w.is_found());
        let fw = frobenius_bimodule_witness(&s, 1).unwrap();
        assert!(fw.is_found());
    }

    #[test]
    fn zero_module_is_not_separable() {
        let f = Field::Rational;
        let s = Bimodule::vector_space(f, 0);
        assert!(matches!(separable_bimodule_witness(&s).unwrap(), Witnessed::Absent(_)));
    }

    #[test]
    fn asymmetric_duals_block_frobenius() {
        let f = Field::Rational;
        let t = Algebra::upper_triangular(f);
        let reg = Bimodule::regular(&t);
        // e11·T = span{e11, e12} as a (k, T)-bimodule
        let k = Algebra::ground(f);
        let right_act = (0..3)
            .map(|a| {
                LinMap::from_fn(f, 2, 2, |i| {
                    let src = [0usize, 1][i];
                    let img = reg.right_basis_action(a).rows[src].clone();
                    img.reindex(|c| match c {
                        0 => 0,
                        1 => 1,
                        _ => unreachable!(),
                    })
                })
            })
            .collect();
        let m = Bimodule::new(k.clone(), t.clone(), 2, vec![LinMap::identity(f, 2)], right_act).unwrap();
        assert!(crate::bimodule::check_bimodule(&m).passed());
        assert_eq!(right_dual(&m).dim(), 1);
        assert_eq!(left_dual(&m).dim(), 2);
        assert!(matches!(frobenius_bimodule_witness(&m, 1).unwrap(), Witnessed::Absent(_)));
    }
}
