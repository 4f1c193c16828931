//! Conversion between documents and library objects.

use std::sync::Arc;

use crate::algebra::{same_algebra, Algebra, AlgebraMap};
use crate::bicells::{mm_to_one_cell, one_cell_to_mm, ModuleMorphism, OneCellRight, TwoCell};
use crate::bimodule::{Bimodule, Tensor};
use crate::coring::{same_coring, Coring, GeneralCoringMorphism, LeftComodule, RightComodule};
use crate::descent::DescentDatum;
use crate::error::{Error, Result};
use crate::linalg::{Field, LinMap, Vector};

use super::document::{Block, Document, Kind, Object};

#[derive(Clone, Debug)]
pub enum Comodule {
    Right(RightComodule),
    Left(LeftComodule),
}

#[derive(Clone, Debug)]
pub enum Item {
    Algebra(Arc<Algebra>),
    AlgebraMap(AlgebraMap),
    Bimodule(Arc<Bimodule>),
    Coring(Arc<Coring>),
    CoringMorphism(GeneralCoringMorphism),
    Comodule(Comodule),
    ModuleMorphism(ModuleMorphism),
    DescentDatum(DescentDatum),
    OneCell(OneCellRight),
    TwoCell(TwoCell),
}

impl Item {
    pub fn kind(&self) -> Kind {
        match self {
            Item::Algebra(_) => Kind::Algebra,
            Item::AlgebraMap(_) => Kind::AlgebraMap,
            Item::Bimodule(_) => Kind::Bimodule,
            Item::Coring(_) => Kind::Coring,
            Item::CoringMorphism(_) => Kind::CoringMorphism,
            Item::Comodule(_) => Kind::Comodule,
            Item::ModuleMorphism(_) => Kind::ModuleMorphism,
            Item::DescentDatum(_) => Kind::DescentDatum,
            Item::OneCell(_) => Kind::OneCell,
            Item::TwoCell(_) => Kind::TwoCell,
        }
    }
}

fn to_block(m: &LinMap) -> Block {
    Block { rows: m.src, cols: m.dst, data: m.rows.iter().map(|r| r.to_dense(m.field, m.dst)).collect() }
}

fn to_map(field: Field, b: &Block) -> LinMap {
    LinMap::from_rows(field, b.cols, b.data.iter().map(|r| Vector::from_dense(r)).collect())
}

/// Every object of a document, built in order.
pub struct Resolved {
    pub field: Field,
    pub subject: String,
    pub items: Vec<(String, Item)>,
}

impl Resolved {
    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    pub fn subject(&self) -> &Item {
        self.get(&self.subject).expect("subject resolved")
    }

    /// The subject if it has kind `k`, otherwise the last object of that kind.
    pub fn pick(&self, k: Kind) -> Result<&Item> {
        if self.subject().kind() == k {
            return Ok(self.subject());
        }
        self.items
            .iter()
            .rev()
            .find(|(_, i)| i.kind() == k)
            .map(|(_, i)| i)
            .ok_or_else(|| Error::structural("document", format!("no {} object", k.name())))
    }
}

macro_rules! getter {
    ($fn:ident, $variant:ident, $ty:ty) => {
        fn $fn(&self, o: &Object, key: &str) -> Result<$ty> {
            let name = o.get_word(key)?;
            match self.get(name) {
                Some(Item::$variant(x)) => Ok(x.clone()),
                Some(other) => Err(o.structural(
                    key,
                    Error::structural(name, format!("refers to a {}", other.kind().name())),
                )),
                None => Err(o.structural(key, Error::structural(name, "undefined object"))),
            }
        }
    };
}

impl Resolved {
    getter!(algebra_ref, Algebra, Arc<Algebra>);
    getter!(algebra_map_ref, AlgebraMap, AlgebraMap);
    getter!(bimodule_ref, Bimodule, Arc<Bimodule>);
    getter!(coring_ref, Coring, Arc<Coring>);
    getter!(coring_morphism_ref, CoringMorphism, GeneralCoringMorphism);
    getter!(one_cell_ref, OneCell, OneCellRight);

    fn matrix(&self, o: &Object, key: &str, rows: usize, cols: usize) -> Result<LinMap> {
        Ok(to_map(self.field, o.get_matrix(key, rows, cols)?))
    }

    fn cell_from_ambient(&self, o: &Object, d: &Arc<Coring>, sigma: &Arc<Bimodule>, c: &Arc<Coring>) -> Result<OneCellRight> {
        let domain = Tensor::pair(d.carrier(), sigma).map_err(|e| o.structural("sigma", e))?;
        let codomain = Tensor::pair(sigma, c.carrier()).map_err(|e| o.structural("sigma", e))?;
        let amb = self.matrix(o, "cell", domain.ambient_dim(), codomain.ambient_dim())?;
        let projected = LinMap::from_fn(self.field, amb.src, codomain.dim(), |i| codomain.project(&amb.rows[i]));
        let cell = domain.map_from_ambient(&projected).map_err(|e| o.structural("cell", e))?;
        OneCellRight::new(c.clone(), d.clone(), sigma.clone(), cell).map_err(|e| o.structural("cell", e))
    }

    fn build(&self, o: &Object) -> Result<Item> {
        let f = self.field;
        let wrap = |e: Error| o.structural("", e);
        Ok(match o.kind {
            Kind::Algebra => {
                let n = o.get_usize("dim")?;
                let unit = Vector::from_dense(&o.get_matrix("unit", 1, n)?.data[0]);
                let mult = o.get_matrix("mult", n * n, n)?.data.iter().map(|r| Vector::from_dense(r)).collect();
                Item::Algebra(Algebra::from_structure(f, n, mult, unit).map_err(wrap)?)
            }
            Kind::AlgebraMap => {
                let (s, t) = (self.algebra_ref(o, "source")?, self.algebra_ref(o, "target")?);
                let map = self.matrix(o, "map", s.dim(), t.dim())?;
                Item::AlgebraMap(AlgebraMap::new(s, t, map).map_err(wrap)?)
            }
            Kind::Bimodule => {
                let (l, r) = (self.algebra_ref(o, "left")?, self.algebra_ref(o, "right")?);
                let n = o.get_usize("dim")?;
                let left = (0..l.dim()).map(|i| self.matrix(o, &format!("left.{i}"), n, n)).collect::<Result<_>>()?;
                let right = (0..r.dim()).map(|i| self.matrix(o, &format!("right.{i}"), n, n)).collect::<Result<_>>()?;
                Item::Bimodule(Bimodule::new(l, r, n, left, right).map_err(wrap)?)
            }
            Kind::Coring => {
                let carrier = self.bimodule_ref(o, "carrier")?;
                let n = carrier.dim();
                let comult = self.matrix(o, "comult", n, n * n)?;
                let counit = self.matrix(o, "counit", n, carrier.left().dim())?;
                Item::Coring(Coring::from_ambient(carrier, &comult, counit).map_err(wrap)?)
            }
            Kind::CoringMorphism => {
                let (s, t) = (self.coring_ref(o, "source")?, self.coring_ref(o, "target")?);
                let alpha = self.algebra_map_ref(o, "alpha")?;
                let gamma = self.matrix(o, "gamma", s.dim(), t.dim())?;
                Item::CoringMorphism(GeneralCoringMorphism::new(s, t, alpha, gamma).map_err(wrap)?)
            }
            Kind::Comodule => {
                let c = self.coring_ref(o, "over")?;
                let m = self.bimodule_ref(o, "carrier")?;
                let coaction = self.matrix(o, "coaction", m.dim(), m.dim() * c.dim())?;
                Item::Comodule(match o.get_word("side")? {
                    "right" => Comodule::Right(RightComodule::from_ambient(c, m, &coaction).map_err(wrap)?),
                    "left" => Comodule::Left(LeftComodule::from_ambient(c, m, &coaction).map_err(wrap)?),
                    _ => return Err(o.structural("side", Error::structural("side", "expected `right` or `left`"))),
                })
            }
            Kind::OneCell => {
                let (c, d) = (self.coring_ref(o, "source")?, self.coring_ref(o, "target")?);
                let sigma = self.bimodule_ref(o, "sigma")?;
                Item::OneCell(self.cell_from_ambient(o, &d, &sigma, &c)?)
            }
            Kind::ModuleMorphism => {
                let (d, c) = (self.coring_ref(o, "base_coring")?, self.coring_ref(o, "target")?);
                let sigma = self.bimodule_ref(o, "sigma")?;
                let cell = self.cell_from_ambient(o, &d, &sigma, &c)?;
                Item::ModuleMorphism(one_cell_to_mm(&cell).map_err(wrap)?)
            }
            Kind::TwoCell => {
                let (s, t) = (self.one_cell_ref(o, "source")?, self.one_cell_ref(o, "target")?);
                let amb = self.matrix(o, "map", s.domain.ambient_dim(), t.sigma.dim())?;
                let map = s.domain.map_from_ambient(&amb).map_err(|e| o.structural("map", e))?;
                Item::TwoCell(TwoCell::new(s, t, map).map_err(wrap)?)
            }
            Kind::DescentDatum => {
                let g = self.coring_morphism_ref(o, "morphism")?;
                let x = self.bimodule_ref(o, "carrier")?;
                let cols = x.dim() * g.source.dim() * g.target.base().dim();
                let rho = self.matrix(o, "rho", x.dim(), cols)?;
                Item::DescentDatum(DescentDatum::from_ambient(g, x, &rho).map_err(wrap)?)
            }
        })
    }
}

pub fn resolve(doc: &Document) -> Result<Resolved> {
    let mut r = Resolved { field: doc.field, subject: doc.subject.clone(), items: Vec::new() };
    for o in &doc.objects {
        let item = r.build(o)?;
        r.items.push((o.name.clone(), item));
    }
    if r.subject().kind() != doc.kind {
        return Err(Error::structural("document.subject", format!("subject is not a {}", doc.kind.name())));
    }
    Ok(r)
}

/// Builds a document from library objects, sharing repeated algebras, bimodules
/// and corings.
pub struct Emitter {
    field: Field,
    objects: Vec<Object>,
    algebras: Vec<(Arc<Algebra>, String)>,
    bimodules: Vec<(Arc<Bimodule>, String)>,
    corings: Vec<(Arc<Coring>, String)>,
}

impl Emitter {
    pub fn new(field: Field) -> Self {
        Emitter { field, objects: Vec::new(), algebras: Vec::new(), bimodules: Vec::new(), corings: Vec::new() }
    }

    fn fresh(&self, prefix: &str) -> String {
        let n = self.objects.iter().filter(|o| o.name.starts_with(prefix)).count();
        format!("{prefix}{n}")
    }

    fn push(&mut self, o: Object) -> String {
        let name = o.name.clone();
        self.objects.push(o);
        name
    }

    pub fn algebra(&mut self, a: &Arc<Algebra>) -> String {
        if let Some((_, n)) = self.algebras.iter().find(|(x, _)| same_algebra(x, a)) {
            return n.clone();
        }
        let mut o = Object::new(Kind::Algebra, self.fresh("alg"));
        let n = a.dim();
        o.word("dim", n.to_string());
        o.matrix("unit", to_block(&LinMap::from_rows(self.field, n, vec![a.unit().clone()])));
        o.matrix("mult", to_block(&LinMap::from_rows(self.field, n, a.structure_constants().to_vec())));
        let name = self.push(o);
        self.algebras.push((a.clone(), name.clone()));
        name
    }

    pub fn algebra_map(&mut self, m: &AlgebraMap) -> String {
        let (s, t) = (self.algebra(&m.source), self.algebra(&m.target));
        let mut o = Object::new(Kind::AlgebraMap, self.fresh("amap"));
        o.word("source", s).word("target", t).matrix("map", to_block(&m.map));
        self.push(o)
    }

    pub fn bimodule(&mut self, m: &Arc<Bimodule>) -> String {
        if let Some((_, n)) = self.bimodules.iter().find(|(x, _)| Arc::ptr_eq(x, m) || **x == **m) {
            return n.clone();
        }
        let (l, r) = (self.algebra(m.left()), self.algebra(m.right()));
        let mut o = Object::new(Kind::Bimodule, self.fresh("bim"));
        o.word("left", l).word("right", r).word("dim", m.dim().to_string());
        for i in 0..m.left().dim() {
            o.matrix(&format!("left.{i}"), to_block(m.left_basis_action(i)));
        }
        for i in 0..m.right().dim() {
            o.matrix(&format!("right.{i}"), to_block(m.right_basis_action(i)));
        }
        let name = self.push(o);
        self.bimodules.push((m.clone(), name.clone()));
        name
    }

    pub fn coring(&mut self, c: &Arc<Coring>) -> String {
        if let Some((_, n)) = self.corings.iter().find(|(x, _)| same_coring(x, c)) {
            return n.clone();
        }
        let carrier = self.bimodule(c.carrier());
        let mut o = Object::new(Kind::Coring, self.fresh("cor"));
        o.word("carrier", carrier)
            .matrix("comult", to_block(&c.comult_ambient()))
            .matrix("counit", to_block(c.counit()));
        let name = self.push(o);
        self.corings.push((c.clone(), name.clone()));
        name
    }

    pub fn coring_morphism(&mut self, g: &GeneralCoringMorphism) -> String {
        let (s, t) = (self.coring(&g.source), self.coring(&g.target));
        let alpha = self.algebra_map(&g.alpha);
        let mut o = Object::new(Kind::CoringMorphism, self.fresh("cmor"));
        o.word("source", s).word("target", t).word("alpha", alpha).matrix("gamma", to_block(&g.gamma));
        self.push(o)
    }

    fn lifted(&self, t: &Tensor, m: &LinMap) -> Block {
        to_block(&LinMap::from_fn(self.field, m.src, t.ambient_dim(), |i| t.lift(&m.rows[i])))
    }

    pub fn right_comodule(&mut self, m: &RightComodule) -> String {
        let (c, x) = (self.coring(&m.coring), self.bimodule(&m.carrier));
        let mut o = Object::new(Kind::Comodule, self.fresh("com"));
        o.word("side", "right").word("over", c).word("carrier", x).matrix("coaction", self.lifted(&m.target, &m.coaction));
        self.push(o)
    }

    pub fn left_comodule(&mut self, m: &LeftComodule) -> String {
        let (c, x) = (self.coring(&m.coring), self.bimodule(&m.carrier));
        let mut o = Object::new(Kind::Comodule, self.fresh("com"));
        o.word("side", "left").word("over", c).word("carrier", x).matrix("coaction", self.lifted(&m.target, &m.coaction));
        self.push(o)
    }

    fn cell_block(&self, c: &OneCellRight) -> Block {
        let amb = c.domain.map_to_ambient(&c.cell);
        self.lifted(&c.codomain, &amb)
    }

    pub fn one_cell(&mut self, c: &OneCellRight) -> String {
        let (s, t) = (self.coring(&c.source), self.coring(&c.target));
        let sigma = self.bimodule(&c.sigma);
        let mut o = Object::new(Kind::OneCell, self.fresh("cell"));
        o.word("source", s).word("target", t).word("sigma", sigma).matrix("cell", self.cell_block(c));
        self.push(o)
    }

    /// Stored through the associated 1-cell, which involves no dual basis.
    pub fn module_morphism(&mut self, m: &ModuleMorphism) -> Result<String> {
        let cell = mm_to_one_cell(m)?;
        let (d, c) = (self.coring(m.source()), self.coring(m.target()));
        let sigma = self.bimodule(m.sigma());
        let mut o = Object::new(Kind::ModuleMorphism, self.fresh("mm"));
        o.word("base_coring", d).word("sigma", sigma).word("target", c).matrix("cell", self.cell_block(&cell));
        Ok(self.push(o))
    }

    pub fn two_cell(&mut self, a: &TwoCell) -> String {
        let (s, t) = (self.one_cell(&a.source), self.one_cell(&a.target));
        let mut o = Object::new(Kind::TwoCell, self.fresh("two"));
        o.word("source", s).word("target", t).matrix("map", to_block(&a.source.domain.map_to_ambient(&a.map)));
        self.push(o)
    }

    pub fn descent_datum(&mut self, dd: &DescentDatum) -> String {
        let g = self.coring_morphism(&dd.morphism);
        let x = self.bimodule(&dd.carrier);
        let mut o = Object::new(Kind::DescentDatum, self.fresh("dd"));
        o.word("morphism", g).word("carrier", x).matrix("rho", self.lifted(&dd.target, &dd.rho));
        self.push(o)
    }

    pub fn finish(self, kind: Kind, subject: String) -> Document {
        let mut doc = Document::new(kind, self.field, subject);
        doc.objects = self.objects;
        doc
    }
}

/// One-object convenience wrappers.
pub fn coring_document(c: &Arc<Coring>) -> Document {
    let mut e = Emitter::new(c.field());
    let s = e.coring(c);
    e.finish(Kind::Coring, s)
}

pub fn bimodule_document(m: &Arc<Bimodule>) -> Document {
    let mut e = Emitter::new(m.field());
    let s = e.bimodule(m);
    e.finish(Kind::Bimodule, s)
}

pub fn algebra_map_document(m: &AlgebraMap) -> Document {
    let mut e = Emitter::new(m.source.field());
    let s = e.algebra_map(m);
    e.finish(Kind::AlgebraMap, s)
}

pub fn module_morphism_document(m: &ModuleMorphism) -> Result<Document> {
    let mut e = Emitter::new(m.sigma().field());
    let s = e.module_morphism(m)?;
    Ok(e.finish(Kind::ModuleMorphism, s))
}

pub fn coring_morphism_document(g: &GeneralCoringMorphism) -> Document {
    let mut e = Emitter::new(g.source.field());
    let s = e.coring_morphism(g);
    e.finish(Kind::CoringMorphism, s)
}
