//! The line-oriented interchange format.
//!
//! ```text
//! schema corings/1
//! kind coring
//! field Q
//! subject D
//! algebra k
//!   dim 1
//!   matrix unit 1 1
//!     1
//!   matrix mult 1 1
//!     1
//! end
//! ```
//!
//! A document is a header followed by named objects in dependency order. Object
//! entries are either `key word` or a dense `matrix key rows cols` block whose
//! rows follow one per line. Scalars are `n` or `n/d`.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

pub const SCHEMA: &str = "corings/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Algebra,
    AlgebraMap,
    Bimodule,
    Coring,
    CoringMorphism,
    Comodule,
    ModuleMorphism,
    DescentDatum,
    OneCell,
    TwoCell,
}

impl Kind {
    pub const ALL: [Kind; 10] = [
        Kind::Algebra,
        Kind::AlgebraMap,
        Kind::Bimodule,
        Kind::Coring,
        Kind::CoringMorphism,
        Kind::Comodule,
        Kind::ModuleMorphism,
        Kind::DescentDatum,
        Kind::OneCell,
        Kind::TwoCell,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::AlgebraMap => "algebra_map",
            Kind::Bimodule => "bimodule",
            Kind::Coring => "coring",
            Kind::CoringMorphism => "coring_morphism",
            Kind::Comodule => "comodule",
            Kind::ModuleMorphism => "module_morphism",
            Kind::DescentDatum => "descent_datum",
            Kind::OneCell => "one_cell",
            Kind::TwoCell => "two_cell",
        }
    }
}

impl FromStr for Kind {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        Kind::ALL.iter().copied().find(|k| k.name() == s).ok_or(())
    }
}

/// Dense matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Word(String),
    Matrix(Block),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Object {
    pub kind: Kind,
    pub name: String,
    pub entries: Vec<Entry>,
    /// Line of the object header in the source text, zero when built in memory.
    pub line: usize,
}

impl Object {
    pub fn new(kind: Kind, name: impl Into<String>) -> Self {
        Object { kind, name: name.into(), entries: Vec::new(), line: 0 }
    }

    pub fn word(&mut self, key: &str, w: impl Into<String>) -> &mut Self {
        self.entries.push(Entry { key: key.into(), value: Value::Word(w.into()) });
        self
    }

    pub fn matrix(&mut self, key: &str, b: Block) -> &mut Self {
        self.entries.push(Entry { key: key.into(), value: Value::Matrix(b) });
        self
    }

    fn location(&self, key: &str) -> String {
        format!("line {}: {} {}.{key}", self.line, self.kind.name(), self.name)
    }

    fn lookup(&self, key: &str) -> Result<&Value> {
        self.entries
            .iter()
            .find(|e| e.key == key)
            .map(|e| &e.value)
            .ok_or_else(|| Error::structural(self.location(key), "missing entry"))
    }

    pub fn get_word(&self, key: &str) -> Result<&str> {
        match self.lookup(key)? {
            Value::Word(w) => Ok(w),
            Value::Matrix(_) => Err(Error::structural(self.location(key), "expected a word, found a matrix")),
        }
    }

    pub fn get_usize(&self, key: &str) -> Result<usize> {
        self.get_word(key)?
            .parse()
            .map_err(|_| Error::structural(self.location(key), "expected a non-negative integer"))
    }

    /// The matrix under `key`, checked against the expected shape.
    pub fn get_matrix(&self, key: &str, rows: usize, cols: usize) -> Result<&Block> {
        match self.lookup(key)? {
            Value::Matrix(b) if b.rows == rows && b.cols == cols => Ok(b),
            Value::Matrix(b) => Err(Error::structural(
                self.location(key),
                format!("expected a {rows}x{cols} matrix, found {}x{}", b.rows, b.cols),
            )),
            Value::Word(_) => Err(Error::structural(self.location(key), "expected a matrix")),
        }
    }

    pub fn structural(&self, key: &str, e: Error) -> Error {
        match e {
            Error::Structural { location, message } => {
                Error::structural(self.location(key), format!("{message} ({location})"))
            }
            other => other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub schema: String,
    pub kind: Kind,
    pub field: Field,
    pub subject: String,
    pub objects: Vec<Object>,
}

fn parse_field(tokens: &[&str]) -> Option<Field> {
    match tokens {
        ["Q"] => Some(Field::Rational),
        ["Fp", p] => p.parse().ok().filter(|&p| Field::is_prime(p)).map(Field::Prime),
        _ => None,
    }
}

/// `Q` or `Fp:<p>` as accepted on the command line.
pub fn parse_field_flag(s: &str) -> Option<Field> {
    match s.split_once(':') {
        Some(("Fp", p)) => parse_field(&["Fp", p]),
        None => parse_field(&[s]),
        _ => None,
    }
}

fn field_words(f: Field) -> String {
    match f {
        Field::Rational => "Q".into(),
        Field::Prime(p) => format!("Fp {p}"),
    }
}

impl Document {
    pub fn new(kind: Kind, field: Field, subject: impl Into<String>) -> Self {
        Document { schema: SCHEMA.into(), kind, field, subject: subject.into(), objects: Vec::new() }
    }

    pub fn object(&self, name: &str) -> Option<&Object> {
        self.objects.iter().find(|o| o.name == name)
    }

    pub fn parse(text: &str) -> Result<Document> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .peekable();
        let mut header = |key: &str| -> Result<(usize, Vec<String>)> {
            match lines.next() {
                Some((n, l)) => {
                    let t: Vec<&str> = l.split_whitespace().collect();
                    if t[0] != key {
                        return Err(err(n, format!("expected `{key}`, found `{}`", t[0])));
                    }
                    Ok((n, t[1..].iter().map(|s| s.to_string()).collect()))
                }
                None => Err(err(0, format!("missing `{key}` header"))),
            }
        };
        let (n, schema) = header("schema")?;
        if schema != [SCHEMA] {
            return Err(err(n, format!("unsupported schema {:?}", schema.join(" "))));
        }
        let (n, kind) = header("kind")?;
        let kind = match kind.as_slice() {
            [k] => k.parse::<Kind>().map_err(|_| err(n, format!("unknown kind `{k}`")))?,
            _ => return Err(err(n, "expected one kind".into())),
        };
        let (n, field) = header("field")?;
        let field = parse_field(&field.iter().map(String::as_str).collect::<Vec<_>>())
            .ok_or_else(|| err(n, "field must be `Q` or `Fp <prime>`".into()))?;
        let (n, subject) = header("subject")?;
        let subject = match subject.as_slice() {
            [s] => s.clone(),
            _ => return Err(err(n, "expected one subject name".into())),
        };
        let mut doc = Document::new(kind, field, subject);
        while let Some((n, l)) = lines.next() {
            let t: Vec<&str> = l.split_whitespace().collect();
            let okind = match t.as_slice() {
                [k, _] => k.parse::<Kind>().map_err(|_| err(n, format!("unknown object type `{k}`")))?,
                _ => return Err(err(n, "expected `<type> <name>`".into())),
            };
            if doc.object(t[1]).is_some() {
                return Err(err(n, format!("duplicate object name `{}`", t[1])));
            }
            let mut obj = Object::new(okind, t[1]);
            obj.line = n;
            loop {
                let Some((m, l)) = lines.next() else {
                    return Err(err(n, format!("object `{}` is not closed by `end`", obj.name)));
                };
                let t: Vec<&str> = l.split_whitespace().collect();
                match t.as_slice() {
                    ["end"] => break,
                    [k, _] if k.parse::<Kind>().is_ok() => {
                        return Err(err(m, format!("object `{}` is not closed by `end`", obj.name)));
                    }
                    ["matrix", key, r, c] => {
                        let (rows, cols) = match (r.parse::<usize>(), c.parse::<usize>()) {
                            (Ok(r), Ok(c)) => (r, c),
                            _ => return Err(err(m, "matrix dimensions must be non-negative integers".into())),
                        };
                        let mut data = Vec::with_capacity(rows);
                        if cols == 0 {
                            data.resize(rows, Vec::new());
                        }
                        for _ in 0..if cols == 0 { 0 } else { rows } {
                            let Some((k, row)) = lines.next() else {
                                return Err(err(m, format!("matrix `{key}` is truncated")));
                            };
                            let toks: Vec<&str> = row.split_whitespace().collect();
                            if toks.len() != cols {
                                return Err(err(k, format!("expected {cols} scalars, found {}", toks.len())));
                            }
                            let row = toks
                                .iter()
                                .map(|s| field.parse_scalar(s).ok_or_else(|| err(k, format!("bad scalar `{s}`"))))
                                .collect::<Result<Vec<_>>>()?;
                            data.push(row);
                        }
                        obj.matrix(key, Block { rows, cols, data });
                    }
                    [key, w] => {
                        obj.word(key, *w);
                    }
                    _ => return Err(err(m, format!("cannot read entry `{l}`"))),
                }
            }
            doc.objects.push(obj);
        }
        if doc.object(&doc.subject).is_none() {
            return Err(err(0, format!("subject `{}` is not defined", doc.subject)));
        }
        Ok(doc)
    }

    pub fn serialise(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "schema {}", self.schema);
        let _ = writeln!(s, "kind {}", self.kind.name());
        let _ = writeln!(s, "field {}", field_words(self.field));
        let _ = writeln!(s, "subject {}", self.subject);
        for o in &self.objects {
            let _ = writeln!(s, "{} {}", o.kind.name(), o.name);
            for e in &o.entries {
                match &e.value {
                    Value::Word(w) => {
                        let _ = writeln!(s, "  {} {w}", e.key);
                    }
                    Value::Matrix(b) => {
                        let _ = writeln!(s, "  matrix {} {} {}", e.key, b.rows, b.cols);
                        for row in b.data.iter().filter(|_| b.cols > 0) {
                            let toks: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                            let _ = writeln!(s, "    {}", toks.join(" "));
                        }
                    }
                }
            }
            s.push_str("end\n");
        }
        s
    }
}

impl std::fmt::Display for Document {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.serialise())
    }
}
