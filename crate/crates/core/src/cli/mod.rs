//! The `corings` command line: checks, constructions, verifications and
//! property searches over documents in the interchange format.

pub mod convert;
pub mod document;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{check_algebra, check_algebra_map, AlgebraMap};
use crate::bicells::{
    check_module_morphism, check_one_cell_right, check_two_cell, double_dual_square, double_dual_two_cell_square,
    mm_to_one_cell, rep_arrows, rep_compose, rep_condition_check, rep_identity, two_cell_unreduce, two_cells,
    ModuleMorphism, TwoCell,
};
use crate::bimodule::{check_bimodule, frobenius_bimodule_witness, Bimodule, ProjectiveModule, Witnessed};
use crate::constructions::{base_ext_by_map, base_ext_by_module, comatrix_coring, composition_iso, sweedler_coring};
use crate::coring::{
    check_coring, check_general_morphism, check_left_comodule, check_right_comodule, left_dual_ring, Coring,
    GeneralCoringMorphism, RightComodule,
};
use crate::descent::{check_descent_datum, comodule_to_descent, descent_diagram_check, descent_equivalence};
use crate::error::{Error, Result};
use crate::fixtures::{
    diagonal_descent_morphism, field_name, fixture, matrix_descent_morphism, non_flat_morphism, non_iso_morphism,
    right_family, FAMILIES, FIELDS,
};
use crate::functors::{
    check_theta, purity_check, theta_iso, verify_cotensor_pushout, verify_equivalence_on, verify_nat_bijection,
    verify_omega, verify_triangles,
};
use crate::linalg::{Field, LinMap, Vector};
use crate::properties::{
    check_cointegral, check_frobenius_chain, check_frobenius_map, check_invariant, coring_frobenius_witness,
    coseparable_check, cosplit_check, frobenius_chain,
};
use crate::report::{DerivedObject, Report, Verdict};

use convert::{resolve, Comodule, Emitter, Item, Resolved};
use document::{parse_field_flag, Document, Kind};

#[derive(Parser, Debug)]
#[command(name = "corings", version, about = "Exact computations with finite-dimensional corings")]
pub struct Cli {
    /// `Q` or `Fp:<p>`; selects the field of fixture references.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Comma-separated names of family members (`regular`, `cyclic[i]`).
    #[arg(long, global = true, value_delimiter = ',')]
    pub family: Vec<String>,
    /// A matrix file replacing the searched witness of `props`.
    #[arg(long, global = true)]
    pub witness: Option<PathBuf>,
    /// File (or directory for `fixtures emit`) receiving emitted documents.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Coefficient bound of the Frobenius search.
    #[arg(long = "coeff-bound", global = true, default_value_t = 2)]
    pub coeff_bound: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate one object.
    Check { what: CheckKind, input: String },
    /// Build a coring and emit it.
    Construct {
        what: ConstructKind,
        #[arg(long)]
        coring: Option<String>,
        #[arg(long)]
        module: Option<String>,
        /// The outer bimodule of `composition-iso`.
        #[arg(long)]
        outer: Option<String>,
        #[arg(long)]
        map: Option<String>,
    },
    /// Verify a statement about a module-morphism or coring morphism.
    Verify {
        what: VerifyKind,
        #[arg(long)]
        mm: Option<String>,
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Search for cosplit, coseparable or Frobenius witnesses.
    Props {
        what: PropKind,
        #[arg(long)]
        coring: String,
        /// Adds the chain for `Σ[D]` to `frobenius`.
        #[arg(long)]
        module: Option<String>,
    },
    /// The standard fixture corpus.
    Fixtures { action: FixtureAction, names: Vec<String> },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum CheckKind {
    Algebra,
    Bimodule,
    Coring,
    Comodule,
    OneCell,
    TwoCell,
    Descent,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ConstructKind {
    Sweedler,
    BaseExtMap,
    Comatrix,
    BaseExtModule,
    CompositionIso,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum VerifyKind {
    Adjunction,
    Theta,
    Equivalence,
    Naturality,
    Duality,
    Rep,
    Descent,
    Purity,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum PropKind {
    Cosplit,
    Coseparable,
    Frobenius,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FixtureAction {
    List,
    Emit,
}

/// Exit code and standard output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => 0,
        _ => 1,
    }
}

/// Parses the arguments (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    match dispatch(cli).and_then(|r| write_derived(cli, &r).map(|_| r)) {
        Ok(r) => Outcome { code: exit_code(r.verdict), stdout: r.to_json() + "\n", stderr: String::new() },
        Err(e) => match verdict_of_error(&e) {
            Some(v) => {
                let mut r = Report::new(subject_of(&cli.command));
                r.absent("error", e.to_string()).set_verdict(v);
                Outcome { code: 1, stdout: r.to_json() + "\n", stderr: String::new() }
            }
            None => {
                let body = serde_json::json!({ "subject": subject_of(&cli.command), "error": e.to_string() });
                Outcome {
                    code: 2,
                    stdout: serde_json::to_string_pretty(&body).expect("json") + "\n",
                    stderr: format!("error: {e}\n"),
                }
            }
        },
    }
}

fn verdict_of_error(e: &Error) -> Option<Verdict> {
    match e {
        Error::PurityFailure { .. } => Some(Verdict::PurityFailure),
        Error::NotProjective { .. } => Some(Verdict::NotProjective),
        _ => None,
    }
}

fn subject_of(c: &Command) -> String {
    match c {
        Command::Check { what, .. } => format!("check {}", value_name(*what)),
        Command::Construct { what, .. } => format!("construct {}", value_name(*what)),
        Command::Verify { what, .. } => format!("verify {}", value_name(*what)),
        Command::Props { what, .. } => format!("props {}", value_name(*what)),
        Command::Fixtures { action, .. } => format!("fixtures {}", value_name(*action)),
    }
}

fn value_name<V: ValueEnum>(v: V) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn write_derived(cli: &Cli, r: &Report) -> Result<()> {
    let Some(out) = &cli.out else { return Ok(()) };
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", out.display()));
    match r.derived_objects.as_slice() {
        [] => Ok(()),
        [one] if !matches!(cli.command, Command::Fixtures { .. }) => std::fs::write(out, &one.document).map_err(io),
        many => {
            std::fs::create_dir_all(out).map_err(io)?;
            for d in many {
                std::fs::write(out.join(&d.name), &d.document).map_err(io)?;
            }
            Ok(())
        }
    }
}

fn field_of(cli: &Cli) -> Result<Field> {
    match &cli.field {
        None => Ok(Field::Rational),
        Some(s) => parse_field_flag(s).ok_or_else(|| Error::structural("--field", format!("expected Q or Fp:<p>, got {s}"))),
    }
}

/// Named special fixtures besides the five families.
pub const EXTRA_FIXTURES: [&str; 4] = ["non-flat", "non-iso", "diagonal-descent", "matrix-descent"];

/// The document a `fixtures/<name>` reference stands for when an object of kind
/// `want` is requested.
pub fn fixture_document(name: &str, field: Field, want: Kind) -> Result<Document> {
    let mut e = Emitter::new(field);
    let subject = match name {
        "non-flat" | "non-iso" => {
            let mm = if name == "non-flat" { non_flat_morphism(field)? } else { non_iso_morphism(field)? };
            emit_from_mm(&mut e, &mm, want)?
        }
        "diagonal-descent" | "matrix-descent" => {
            let g = if name == "diagonal-descent" { diagonal_descent_morphism(field)? } else { matrix_descent_morphism(field)? };
            match want {
                Kind::DescentDatum => {
                    let (ext, _) = g.induce()?;
                    e.descent_datum(&comodule_to_descent(&g, &ext, &RightComodule::regular(&ext.coring))?)
                }
                Kind::Coring => e.coring(&g.source),
                Kind::AlgebraMap => e.algebra_map(&g.alpha),
                _ => e.coring_morphism(&g),
            }
        }
        _ => {
            let fx = fixture(name, field)?;
            emit_from_mm(&mut e, &fx.identity_morphism()?, want)?
        }
    };
    let kind = match want {
        Kind::Algebra | Kind::AlgebraMap | Kind::Bimodule | Kind::Coring | Kind::Comodule | Kind::OneCell | Kind::TwoCell => want,
        _ if name.ends_with("descent") => {
            if want == Kind::DescentDatum {
                Kind::DescentDatum
            } else {
                Kind::CoringMorphism
            }
        }
        _ => Kind::ModuleMorphism,
    };
    Ok(e.finish(kind, subject))
}

fn emit_from_mm(e: &mut Emitter, mm: &ModuleMorphism, want: Kind) -> Result<String> {
    Ok(match want {
        Kind::Algebra => e.algebra(mm.source().base()),
        Kind::AlgebraMap => e.algebra_map(&AlgebraMap::unit_map(mm.sigma().right().clone())),
        Kind::Bimodule => e.bimodule(mm.sigma()),
        Kind::Coring => e.coring(mm.source()),
        Kind::Comodule => e.right_comodule(&RightComodule::regular(mm.source())),
        Kind::OneCell => e.one_cell(&mm_to_one_cell(mm)?),
        Kind::TwoCell => e.two_cell(&TwoCell::identity(&mm_to_one_cell(mm)?)),
        _ => e.module_morphism(mm)?,
    })
}

/// Reads a document from a file, or builds it for a `fixtures/<name>` reference.
pub fn load(arg: &str, field: Field, want: Kind) -> Result<Resolved> {
    let doc = if Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))?;
        Document::parse(&text)?
    } else if let Some(name) = arg.strip_prefix("fixtures/") {
        fixture_document(name, field, want)?
    } else {
        return Err(Error::Io(format!("{arg}: no such file or fixture reference")));
    };
    resolve(&doc)
}

macro_rules! pick {
    ($res:expr, $kind:ident) => {
        match $res.pick(Kind::$kind)? {
            Item::$kind(x) => x.clone(),
            _ => unreachable!(),
        }
    };
}

fn load_coring(arg: &str, field: Field) -> Result<Arc<Coring>> {
    Ok(pick!(load(arg, field, Kind::Coring)?, Coring))
}

fn load_bimodule(arg: &str, field: Field) -> Result<Arc<Bimodule>> {
    Ok(pick!(load(arg, field, Kind::Bimodule)?, Bimodule))
}

fn load_mm(arg: &str, field: Field) -> Result<ModuleMorphism> {
    Ok(pick!(load(arg, field, Kind::ModuleMorphism)?, ModuleMorphism))
}

fn load_morphism(arg: &str, field: Field) -> Result<GeneralCoringMorphism> {
    let r = load(arg, field, Kind::CoringMorphism)?;
    match r.pick(Kind::CoringMorphism) {
        Ok(Item::CoringMorphism(g)) => Ok(g.clone()),
        _ => match r.pick(Kind::DescentDatum)? {
            Item::DescentDatum(dd) => Ok(dd.morphism.clone()),
            _ => unreachable!(),
        },
    }
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::structural(flag, "required for this subcommand"))
}

fn select<T: Clone>(family: Vec<(String, T)>, names: &[String]) -> Vec<(String, T)> {
    if names.is_empty() {
        return family;
    }
    family.into_iter().filter(|(n, _)| names.contains(n)).collect()
}

type Family = Vec<(String, RightComodule)>;

/// Family members of `D` and `C` selected by `--family`; every name must occur in one of them.
fn families(cli: &Cli, d: &Arc<Coring>, c: &Arc<Coring>) -> Result<(Family, Family)> {
    let (fd, fc) = (right_family(d), right_family(c));
    if let Some(n) = cli.family.iter().find(|n| !fd.iter().chain(&fc).any(|(m, _)| m == *n)) {
        return Err(Error::structural("--family", format!("unknown member {n}")));
    }
    Ok((select(fd, &cli.family), select(fc, &cli.family)))
}

fn members(f: &[(String, RightComodule)]) -> Vec<RightComodule> {
    f.iter().map(|(_, m)| m.clone()).collect()
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let field = field_of(cli)?;
    match &cli.command {
        Command::Check { what, input } => check(*what, input, field),
        Command::Construct { what, coring, module, outer, map } => {
            construct(*what, field, coring.as_deref(), module.as_deref(), outer.as_deref(), map.as_deref())
        }
        Command::Verify { what, mm, morphism } => verify(cli, *what, field, mm, morphism),
        Command::Props { what, coring, module } => props(cli, *what, field, coring, module.as_deref()),
        Command::Fixtures { action, names } => fixtures_command(cli, *action, names),
    }
}

fn check(what: CheckKind, input: &str, field: Field) -> Result<Report> {
    let kind = match what {
        CheckKind::Algebra => Kind::Algebra,
        CheckKind::Bimodule => Kind::Bimodule,
        CheckKind::Coring => Kind::Coring,
        CheckKind::Comodule => Kind::Comodule,
        CheckKind::OneCell => Kind::OneCell,
        CheckKind::TwoCell => Kind::TwoCell,
        CheckKind::Descent => Kind::DescentDatum,
    };
    let res = load(input, field, kind)?;
    check_item(res.pick(kind)?)
}

/// Checks the subject of a document according to its kind.
pub fn check_document(doc: &Document) -> Result<Report> {
    let res = resolve(doc)?;
    check_item(res.subject())
}

fn check_item(item: &Item) -> Result<Report> {
    Ok(match item {
        Item::Algebra(a) => check_algebra(a),
        Item::AlgebraMap(m) => check_algebra_map(m),
        Item::Bimodule(m) => check_bimodule(m),
        Item::Coring(c) => check_coring(c),
        Item::CoringMorphism(g) => check_general_morphism(g),
        Item::Comodule(Comodule::Right(m)) => check_right_comodule(m),
        Item::Comodule(Comodule::Left(m)) => check_left_comodule(m),
        Item::ModuleMorphism(mm) => check_module_morphism(mm),
        Item::OneCell(c) => check_one_cell_right(c),
        Item::TwoCell(a) => check_two_cell(a),
        Item::DescentDatum(dd) => {
            let mut r = check_general_morphism(&dd.morphism);
            r.subject = "descent_datum".into();
            let inner = check_descent_datum(dd)?;
            r.absorb("datum", &inner);
            r
        }
    })
}

fn emitted(name: &str, doc: &Document) -> DerivedObject {
    DerivedObject { name: name.into(), document: doc.serialise() }
}

/// Checks the constructed coring and attaches its document, re-read from text.
fn coring_output(subject: &str, c: &Arc<Coring>, extra: Option<Report>) -> Result<Report> {
    let doc = convert::coring_document(c);
    let reread = resolve(&Document::parse(&doc.serialise())?)?;
    let mut r = Report::new(subject);
    if let Some(x) = extra {
        r.absorb("construction", &x);
    }
    let Item::Coring(back) = reread.subject() else { unreachable!() };
    r.absorb("coring", &check_coring(back));
    r.require("round_trip", back.comult() == c.comult() && back.counit() == c.counit());
    r.derived_objects.push(emitted(&format!("{subject}.crg"), &doc));
    Ok(r)
}

fn construct(
    what: ConstructKind,
    field: Field,
    coring: Option<&str>,
    module: Option<&str>,
    outer: Option<&str>,
    map: Option<&str>,
) -> Result<Report> {
    let need = |v: Option<&str>, flag: &str| v.ok_or_else(|| Error::structural(flag, "required for this subcommand")).map(str::to_string);
    match what {
        ConstructKind::Sweedler => {
            let alpha = pick!(load(&need(map, "--map")?, field, Kind::AlgebraMap)?, AlgebraMap);
            coring_output("sweedler", &sweedler_coring(&alpha)?.coring, None)
        }
        ConstructKind::BaseExtMap => {
            let d = load_coring(&need(coring, "--coring")?, field)?;
            let alpha = pick!(load(&need(map, "--map")?, field, Kind::AlgebraMap)?, AlgebraMap);
            coring_output("base_ext_map", &base_ext_by_map(&d, &alpha)?.coring, None)
        }
        ConstructKind::Comatrix => {
            let s = load_bimodule(&need(module, "--module")?, field)?;
            coring_output("comatrix", &comatrix_coring(&ProjectiveModule::new(&s)?)?.coring, None)
        }
        ConstructKind::BaseExtModule => {
            let d = load_coring(&need(coring, "--coring")?, field)?;
            let s = load_bimodule(&need(module, "--module")?, field)?;
            coring_output("base_ext_module", &base_ext_by_module(&d, &ProjectiveModule::new(&s)?)?.coring, None)
        }
        ConstructKind::CompositionIso => {
            let d = load_coring(&need(coring, "--coring")?, field)?;
            let xi = load_bimodule(&need(module, "--module")?, field)?;
            let sigma = load_bimodule(&need(outer, "--outer")?, field)?;
            let iso = composition_iso(&sigma, &xi, &d)?;
            coring_output("composition_iso", &iso.combined.coring, Some(iso.check()))
        }
    }
}

fn verify(cli: &Cli, what: VerifyKind, field: Field, mm: &Option<String>, morphism: &Option<String>) -> Result<Report> {
    if let VerifyKind::Descent = what {
        let g = load_morphism(required(morphism, "--morphism")?, field)?;
        let (ext, _) = g.induce()?;
        let (fd, fc) = families(cli, &g.source, &ext.coring)?;
        let mut r = Report::new("descent");
        r.absorb("diagram", &descent_diagram_check(&g, &members(&fd))?);
        for (name, m) in &fc {
            let dd = comodule_to_descent(&g, &ext, m)?;
            r.absorb(&format!("datum[{name}]"), &check_descent_datum(&dd)?);
        }
        r.absorb("equivalence", &descent_equivalence(&g, &members(&fd), &members(&fc))?);
        return Ok(r);
    }
    let mm = load_mm(required(mm, "--mm")?, field)?;
    let (fd, fc) = families(cli, mm.source(), mm.target())?;
    let mut r = Report::new(value_name(what));
    r.absorb("module_morphism", &check_module_morphism(&mm));
    match what {
        VerifyKind::Adjunction => {
            for (a, m) in &fd {
                for (b, n) in &fc {
                    r.absorb(&format!("triangles[{a},{b}]"), &verify_triangles(&mm, m, n)?);
                    r.absorb(&format!("hom_iso[{a},{b}]"), &verify_omega(&mm, m, n)?);
                }
            }
        }
        VerifyKind::Theta => {
            r.absorb("theta", &check_theta(&theta_iso(&mm)?));
        }
        VerifyKind::Equivalence => {
            r.absorb("equivalence", &verify_equivalence_on(&mm, &members(&fd), &members(&fc))?);
        }
        VerifyKind::Naturality => {
            let cell = mm_to_one_cell(&mm)?;
            let fam = members(&fd);
            r.absorb("cotensor_pushout", &verify_cotensor_pushout(&mm, &fam)?);
            let mut cells = vec![two_cell_unreduce(&TwoCell::identity(&cell))];
            for a in two_cells(&cell, &cell).into_iter().take(3) {
                cells.push(two_cell_unreduce(&TwoCell::new(cell.clone(), cell.clone(), a)?));
            }
            for (i, phi) in cells.iter().enumerate() {
                r.absorb(&format!("transformations[{i}]"), &verify_nat_bijection(&cell, &cell, phi, &fam)?);
            }
        }
        VerifyKind::Duality => {
            let cell = mm_to_one_cell(&mm)?;
            r.absorb("one_cell", &double_dual_square(&cell)?);
            for (i, a) in two_cells(&cell, &cell).into_iter().take(3).enumerate() {
                r.absorb(&format!("two_cell[{i}]"), &double_dual_two_cell_square(&TwoCell::new(cell.clone(), cell.clone(), a)?)?);
            }
        }
        VerifyKind::Rep => rep_report(&mut r, &mm)?,
        VerifyKind::Purity => {
            for (name, n) in &fc {
                let p = purity_check(&mm, n)?;
                r.absorb(&format!("purity[{name}]"), &p);
                if p.verdict == Verdict::PurityFailure {
                    r.set_verdict(Verdict::PurityFailure);
                }
            }
        }
        VerifyKind::Descent => unreachable!(),
    }
    Ok(r)
}

fn rep_report(r: &mut Report, mm: &ModuleMorphism) -> Result<()> {
    let id = rep_identity(mm);
    r.absorb("identity", &rep_condition_check(mm, mm, &id)?);
    let arrows = rep_arrows(mm, mm)?;
    let few = &arrows[..arrows.len().min(3)];
    let mut unit_law = None;
    let mut assoc = None;
    for (i, f) in few.iter().enumerate() {
        r.absorb(&format!("arrow[{i}]"), &rep_condition_check(mm, mm, f)?);
        if unit_law.is_none() && (rep_compose(mm, mm, mm, &id, f)? != *f || rep_compose(mm, mm, mm, f, &id)? != *f) {
            unit_law = Some(vec![i]);
        }
        for (j, g) in few.iter().enumerate() {
            for (k, h) in few.iter().enumerate() {
                if assoc.is_some() {
                    break;
                }
                let left = rep_compose(mm, mm, mm, &rep_compose(mm, mm, mm, f, g)?, h)?;
                let right = rep_compose(mm, mm, mm, f, &rep_compose(mm, mm, mm, g, h)?)?;
                if left != right {
                    assoc = Some(vec![i, j, k]);
                }
            }
        }
    }
    r.record("unit_law", unit_law);
    r.record("associative", assoc);
    Ok(())
}

fn read_witness(path: &Path, field: Field, rows: usize, cols: usize) -> Result<LinMap> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim().starts_with('#')) {
        let row = line
            .split_whitespace()
            .map(|t| field.parse_scalar(t).ok_or_else(|| Error::Parse { line: i + 1, message: format!("bad scalar `{t}`") }))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != cols {
            return Err(Error::Parse { line: i + 1, message: format!("expected {cols} scalars, found {}", row.len()) });
        }
        out.push(Vector::from_dense(&row));
    }
    if out.len() != rows {
        return Err(Error::structural("--witness", format!("expected {rows} rows, found {}", out.len())));
    }
    Ok(LinMap::from_rows(field, cols, out))
}

fn absent_report<T>(r: &mut Report, name: &str, w: &Witnessed<T>) {
    match w {
        Witnessed::Absent(s) => {
            r.absent(name, s.clone());
        }
        Witnessed::AbsentWithinBound(b) => {
            r.absent(name, format!("no witness with coefficients bounded by {b}"));
        }
        Witnessed::Found(_) => {}
    }
}

fn props(cli: &Cli, what: PropKind, field: Field, coring: &str, module: Option<&str>) -> Result<Report> {
    let c = load_coring(coring, field)?;
    let f = c.field();
    let mut r = Report::new(value_name(what));
    match what {
        PropKind::Cosplit => match &cli.witness {
            Some(p) => {
                let x = read_witness(p, f, 1, c.dim())?;
                r.absorb("invariant", &check_invariant(&c, &x.rows[0]));
            }
            None => match cosplit_check(&c) {
                Witnessed::Found(x) => {
                    r.absorb("invariant", &check_invariant(&c, &x));
                }
                w => absent_report(&mut r, "invariant", &w),
            },
        },
        PropKind::Coseparable => match &cli.witness {
            Some(p) => {
                let amb = read_witness(p, f, c.cc().ambient_dim(), c.dim())?;
                let nabla = c.cc().map_from_ambient(&amb)?;
                r.absorb("cointegral", &check_cointegral(&c, &nabla));
            }
            None => match coseparable_check(&c) {
                Witnessed::Found(n) => {
                    r.absorb("cointegral", &check_cointegral(&c, &n));
                }
                w => absent_report(&mut r, "cointegral", &w),
            },
        },
        PropKind::Frobenius => {
            let (ring, sd) = match &cli.witness {
                Some(p) => {
                    let ring = left_dual_ring(&c);
                    let m = read_witness(p, f, c.dim(), ring.dim())?;
                    (ring, Witnessed::Found(m))
                }
                None => coring_frobenius_witness(&c, cli.coeff_bound),
            };
            let Witnessed::Found(sd) = sd else {
                absent_report(&mut r, "coring", &sd);
                return Ok(r);
            };
            r.absorb("coring", &check_frobenius_map(&c, &ring, &sd));
            if let Some(m) = module {
                let s = load_bimodule(m, field)?;
                let ext = base_ext_by_module(&c, &ProjectiveModule::new(&s)?)?;
                match frobenius_bimodule_witness(&s, cli.coeff_bound)? {
                    Witnessed::Found(gamma) => {
                        let chain = frobenius_chain(&ext, &gamma, &ring, &sd)?;
                        r.absorb("extension", &check_frobenius_chain(&ext.coring, &chain));
                    }
                    w => absent_report(&mut r, "bimodule", &w),
                }
            }
        }
    }
    Ok(r)
}

fn fixture_names(names: &[String]) -> Result<Vec<String>> {
    if names.is_empty() {
        return Ok(FAMILIES.iter().map(|s| s.to_string()).collect());
    }
    for n in names {
        if !FAMILIES.contains(&n.as_str()) && !EXTRA_FIXTURES.contains(&n.as_str()) {
            return Err(Error::structural("fixtures", format!("unknown fixture {n}")));
        }
    }
    Ok(names.to_vec())
}

fn fixtures_command(cli: &Cli, action: FixtureAction, names: &[String]) -> Result<Report> {
    let fields = match &cli.field {
        None => FIELDS.to_vec(),
        Some(_) => vec![field_of(cli)?],
    };
    let names = fixture_names(names)?;
    let mut r = Report::new(format!("fixtures {}", value_name(action)));
    for &f in &fields {
        for n in &names {
            let label = format!("{n}/{}", field_name(f));
            match action {
                FixtureAction::List => {
                    let doc = fixture_document(n, f, Kind::ModuleMorphism)?;
                    let res = resolve(&Document::parse(&doc.serialise())?)?;
                    let rep = match res.subject() {
                        Item::ModuleMorphism(mm) => {
                            let mut x = check_coring(mm.source());
                            x.absorb("sigma", &check_bimodule(mm.sigma()));
                            x.absorb("module_morphism", &check_module_morphism(mm));
                            x
                        }
                        Item::CoringMorphism(g) => check_general_morphism(g),
                        _ => unreachable!(),
                    };
                    r.record(label, rep.failed_checks().first().map(|_| Vec::new()));
                }
                FixtureAction::Emit => {
                    let stem = format!("{n}-{}", field_name(f));
                    let parts: &[(Kind, &str)] = if n.ends_with("descent") {
                        &[(Kind::Coring, "coring"), (Kind::CoringMorphism, "morphism"), (Kind::DescentDatum, "datum")]
                    } else {
                        &[(Kind::Coring, "coring"), (Kind::Bimodule, "module"), (Kind::ModuleMorphism, "mm")]
                    };
                    for (k, part) in parts {
                        let doc = fixture_document(n, f, *k)?;
                        r.derived_objects.push(emitted(&format!("{stem}.{part}.crg"), &doc));
                    }
                }
            }
        }
    }
    Ok(r)
}
