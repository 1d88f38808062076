use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;

use super::error::{DocError, Location};
use super::lexer::{tokenize, Tok, Token};
use crate::behavior::{
    eliminate_latent, statespace_to_kernel, IoSystem, KernelRep, LatentRep, SignalBlock, StateSpace,
};
use crate::contracts::{Contract, System};
use crate::polyalg::{Poly, Rational};
use crate::polymatrix::PolyMatrix;

/// A contract definition refers to its assumptions and guarantees by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractDef {
    pub assumptions: String,
    pub guarantees: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Definition {
    StateSpace(StateSpace),
    IoSystem(IoSystem),
    Kernel(KernelRep),
    Latent(LatentRep),
    Contract(ContractDef),
}

impl Definition {
    pub fn kind(&self) -> &'static str {
        match self {
            Definition::StateSpace(_) => "statespace",
            Definition::IoSystem(_) => "iosystem",
            Definition::Kernel(_) => "kernel",
            Definition::Latent(_) => "latent",
            Definition::Contract(_) => "contract",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub def: Definition,
    pub loc: Location,
}

/// Ordered set of named definitions, possibly gathered from several files.
#[derive(Clone, Debug, Default)]
pub struct Document {
    entries: Vec<Entry>,
    index: HashMap<String, usize>,
}

impl PartialEq for Document {
    /// Names and definitions in order; source locations are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.name == b.name && a.def == b.def)
    }
}

impl Document {
    pub fn new() -> Self {
        Document::default()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&Definition> {
        self.index.get(name).map(|&i| &self.entries[i].def)
    }

    pub fn push(&mut self, name: impl Into<String>, def: Definition) -> Result<(), DocError> {
        let loc = Location {
            file: "<generated>".into(),
            line: 0,
            col: 0,
        };
        self.insert(Entry {
            name: name.into(),
            def,
            loc,
        })
    }

    fn insert(&mut self, entry: Entry) -> Result<(), DocError> {
        if let Some(&i) = self.index.get(&entry.name) {
            return Err(DocError::DuplicateName {
                name: entry.name,
                first: self.entries[i].loc.clone(),
                second: entry.loc,
            });
        }
        self.index.insert(entry.name.clone(), self.entries.len());
        self.entries.push(entry);
        Ok(())
    }

    /// Appends every definition of `other`; names must stay unique.
    pub fn merge(&mut self, other: Document) -> Result<(), DocError> {
        for e in other.entries {
            self.insert(e)?;
        }
        Ok(())
    }

    /// Resolves every contract reference, reporting the first problem.
    pub fn validate(&self) -> Result<(), DocError> {
        for e in &self.entries {
            if let Definition::Contract(_) = e.def {
                self.contract(&e.name)?;
            }
        }
        Ok(())
    }

    fn lookup(&self, name: &str, wanted: &str) -> Result<&Definition, DocError> {
        self.get(name).ok_or_else(|| DocError::Unresolved {
            name: name.into(),
            referenced_by: wanted.into(),
        })
    }

    /// Kernel representation of any definition denoting a behavior.
    pub fn kernel(&self, name: &str) -> Result<KernelRep, DocError> {
        match self.lookup(name, "command")? {
            Definition::Kernel(k) => Ok(k.clone()),
            Definition::Latent(l) => Ok(eliminate_latent(l)),
            Definition::IoSystem(s) => Ok(s.to_kernel()),
            Definition::StateSpace(s) => Ok(statespace_to_kernel(s)),
            other => Err(wrong_kind(name, "a kernel, latent or system definition", other)),
        }
    }

    pub fn system(&self, name: &str) -> Result<System, DocError> {
        match self.lookup(name, "command")? {
            Definition::IoSystem(s) => Ok(System::Io(s.clone())),
            Definition::StateSpace(s) => Ok(System::StateSpace(s.clone())),
            other => Err(wrong_kind(name, "a statespace or iosystem", other)),
        }
    }

    pub fn contract(&self, name: &str) -> Result<Contract, DocError> {
        let def = match self.lookup(name, "command")? {
            Definition::Contract(c) => c,
            other => return Err(wrong_kind(name, "a contract", other)),
        };
        let part = |part: &str| -> Result<KernelRep, DocError> {
            match self.get(part) {
                None => Err(DocError::Unresolved {
                    name: part.into(),
                    referenced_by: name.into(),
                }),
                Some(Definition::Kernel(k)) => Ok(k.clone()),
                Some(Definition::Latent(l)) => Ok(eliminate_latent(l)),
                Some(other) => Err(wrong_kind(part, "a kernel or latent definition", other)),
            }
        };
        let a = part(&def.assumptions)?;
        let g = part(&def.guarantees)?;
        Ok(Contract::new(&a, &g))
    }

    /// Source text in the same grammar the parser reads.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            write_definition(&mut out, &e.name, &e.def);
        }
        out
    }
}

fn wrong_kind(name: &str, expected: &str, found: &Definition) -> DocError {
    DocError::WrongKind {
        name: name.into(),
        expected: expected.into(),
        found: found.kind(),
    }
}

fn blocks_text(blocks: &[SignalBlock]) -> String {
    blocks.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn write_definition(out: &mut String, name: &str, def: &Definition) {
    let _ = writeln!(out, "{} {name} {{", def.kind());
    match def {
        Definition::Kernel(k) => {
            let _ = writeln!(out, "  vars {}", blocks_text(k.signals()));
            let _ = writeln!(out, "  R {}", k.matrix());
        }
        Definition::Latent(l) => {
            let _ = writeln!(out, "  vars {}", blocks_text(l.signals()));
            let _ = writeln!(out, "  latent l:{}", l.latent_dim());
            let _ = writeln!(out, "  R {}", l.manifest());
            let _ = writeln!(out, "  E {}", l.latent());
        }
        Definition::IoSystem(s) => {
            let _ = writeln!(out, "  vars {} {}", s.input(), s.output());
            let _ = writeln!(out, "  P {}", s.p());
            let _ = writeln!(out, "  Q {}", s.q());
        }
        Definition::StateSpace(s) => {
            let _ = writeln!(out, "  vars {} {}", s.input(), s.output());
            for (field, m) in [("A", s.a()), ("B", s.b()), ("C", s.c()), ("D", s.d())] {
                let _ = writeln!(out, "  {field} {m}");
            }
        }
        Definition::Contract(c) => {
            let _ = writeln!(out, "  assumptions {}", c.assumptions);
            let _ = writeln!(out, "  guarantees {}", c.guarantees);
        }
    }
    out.push_str("}\n");
}

/// Matrix literal as parsed: rows may be empty, and a literal with no rows
/// takes its column count from context.
#[derive(Clone, Debug)]
struct MatLit {
    rows: Vec<Vec<Poly>>,
    loc: Location,
}

impl MatLit {
    fn cols(&self) -> Option<usize> {
        self.rows.first().map(Vec::len)
    }

    fn build(&self, name: &str, cols_if_empty: usize) -> Result<PolyMatrix, DocError> {
        let cols = self.cols().unwrap_or(cols_if_empty);
        PolyMatrix::from_rows(self.rows.clone(), cols).map_err(|e| DocError::Dimension {
            name: name.into(),
            loc: self.loc.clone(),
            message: e.to_string(),
        })
    }
}

enum Field {
    Matrix(MatLit),
    Blocks(Vec<SignalBlock>),
    Name(String),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, DocError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn loc(&self) -> Location {
        self.tokens[self.pos].loc.clone()
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(DocError::Syntax {
            loc: self.loc(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Tok) -> PResult<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", want.describe(), self.peek().describe()))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => self.error(format!("expected a name, found {}", other.describe())),
        }
    }

    fn integer(&mut self) -> PResult<BigInt> {
        match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                Ok(s.parse().expect("lexer yields digits"))
            }
            other => self.error(format!("expected a number, found {}", other.describe())),
        }
    }

    fn small_integer(&mut self, what: &str) -> PResult<usize> {
        let loc = self.loc();
        let v = self.integer()?;
        usize::try_from(v).map_err(|_| DocError::Syntax {
            loc,
            message: format!("{what} is too large"),
        })
    }

    fn document(&mut self, doc: &mut Document) -> PResult<()> {
        while *self.peek() != Tok::Eof {
            let entry = self.definition()?;
            doc.insert(entry)?;
        }
        Ok(())
    }

    fn definition(&mut self) -> PResult<Entry> {
        let kind_loc = self.loc();
        let kind = self.ident()?;
        if !matches!(kind.as_str(), "statespace" | "iosystem" | "kernel" | "latent" | "contract") {
            return Err(DocError::Syntax {
                loc: kind_loc,
                message: format!(
                    "unknown definition kind `{kind}` (expected statespace, iosystem, kernel, latent or contract)"
                ),
            });
        }
        let name_loc = self.loc();
        let name = self.ident()?;
        self.expect(Tok::LBrace)?;
        let mut fields: Vec<(String, Location, Field)> = Vec::new();
        while *self.peek() != Tok::RBrace {
            let loc = self.loc();
            let field = self.ident()?;
            if fields.iter().any(|(f, _, _)| *f == field) {
                return Err(DocError::Syntax {
                    loc,
                    message: format!("field `{field}` given twice"),
                });
            }
            let value = match (kind.as_str(), field.as_str()) {
                (_, "vars") | ("latent", "latent") => Field::Blocks(self.blocks()?),
                ("contract", "assumptions" | "guarantees") => Field::Name(self.ident()?),
                ("kernel", "R")
                | ("latent", "R" | "E")
                | ("iosystem", "P" | "Q")
                | ("statespace", "A" | "B" | "C" | "D") => Field::Matrix(self.matrix()?),
                _ => {
                    return Err(DocError::Syntax {
                        loc,
                        message: format!("unknown field `{field}` in {kind} definition"),
                    })
                }
            };
            fields.push((field, loc, value));
        }
        self.expect(Tok::RBrace)?;
        let def = build_definition(&kind, &name, &name_loc, fields)?;
        Ok(Entry {
            name,
            def,
            loc: name_loc,
        })
    }

    fn blocks(&mut self) -> PResult<Vec<SignalBlock>> {
        let mut out = Vec::new();
        while matches!(self.peek(), Tok::Ident(_)) && *self.peek_at(1) == Tok::Colon {
            let name = self.ident()?;
            self.expect(Tok::Colon)?;
            let dim = self.small_integer("signal dimension")?;
            out.push(SignalBlock::new(name, dim));
        }
        if out.is_empty() {
            return self.error("expected signal blocks such as `u:2`");
        }
        Ok(out)
    }

    fn matrix(&mut self) -> PResult<MatLit> {
        let loc = self.loc();
        self.expect(Tok::LBracket)?;
        let mut rows = Vec::new();
        if *self.peek() != Tok::RBracket {
            loop {
                rows.push(self.row()?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBracket)?;
        if let Some(first) = rows.first() {
            let n = first.len();
            if let Some(i) = rows.iter().position(|r| r.len() != n) {
                return Err(DocError::Syntax {
                    loc,
                    message: format!("row {i} has {} entries, row 0 has {n}", rows[i].len()),
                });
            }
        }
        Ok(MatLit { rows, loc })
    }

    fn row(&mut self) -> PResult<Vec<Poly>> {
        self.expect(Tok::LBracket)?;
        let mut out = Vec::new();
        if *self.peek() != Tok::RBracket {
            loop {
                out.push(self.poly()?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    /// `['+'|'-'] term (('+'|'-') term)*`
    fn poly(&mut self) -> PResult<Poly> {
        let mut acc = Poly::zero();
        let mut negate = false;
        match self.peek() {
            Tok::Minus => {
                self.bump();
                negate = true;
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { acc - t } else { acc + t };
            let op_loc = self.loc();
            negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            let op = self.bump().tok;
            if !self.starts_term() {
                return Err(DocError::Syntax {
                    loc: op_loc,
                    message: format!(
                        "dangling {}: expected a term, found {}",
                        op.describe(),
                        self.peek().describe()
                    ),
                });
            }
        }
        Ok(acc)
    }

    fn starts_term(&self) -> bool {
        match self.peek() {
            Tok::Int(_) => true,
            Tok::Ident(s) => s == "s",
            _ => false,
        }
    }

    /// `coef ['*' 's' ['^' k]] | 's' ['^' k]`, coef being `p` or `p/q`.
    fn term(&mut self) -> PResult<Poly> {
        match self.peek().clone() {
            Tok::Int(_) => {
                let c = self.coefficient()?;
                if *self.peek() == Tok::Star {
                    self.bump();
                    let k = self.power_of_s()?;
                    Ok(Poly::monomial(c, k))
                } else {
                    Ok(Poly::constant(c))
                }
            }
            Tok::Ident(s) if s == "s" => {
                let k = self.power_of_s()?;
                Ok(Poly::monomial(Rational::from_integer(1.into()), k))
            }
            other => self.error(format!("expected a polynomial term, found {}", other.describe())),
        }
    }

    fn coefficient(&mut self) -> PResult<Rational> {
        let num = self.integer()?;
        if *self.peek() != Tok::Slash {
            return Ok(Rational::from_integer(num));
        }
        self.bump();
        let loc = self.loc();
        let den = self.integer()?;
        if den.is_zero() {
            return Err(DocError::Syntax {
                loc,
                message: "zero denominator".into(),
            });
        }
        Ok(Rational::new(num, den))
    }

    fn power_of_s(&mut self) -> PResult<usize> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "s" => {
                self.bump();
            }
            other => return self.error(format!("expected `s`, found {}", other.describe())),
        }
        if *self.peek() == Tok::Caret {
            self.bump();
            self.small_integer("exponent")
        } else {
            Ok(1)
        }
    }
}

fn build_definition(
    kind: &str,
    name: &str,
    loc: &Location,
    fields: Vec<(String, Location, Field)>,
) -> PResult<Definition> {
    let mut matrices: HashMap<String, MatLit> = HashMap::new();
    let mut blocks: HashMap<String, Vec<SignalBlock>> = HashMap::new();
    let mut names: HashMap<String, String> = HashMap::new();
    for (f, _, v) in fields {
        match v {
            Field::Matrix(m) => {
                matrices.insert(f, m);
            }
            Field::Blocks(b) => {
                blocks.insert(f, b);
            }
            Field::Name(n) => {
                names.insert(f, n);
            }
        }
    }
    let dim_err = |message: String| DocError::Dimension {
        name: name.into(),
        loc: loc.clone(),
        message,
    };
    let missing = |field: &str| dim_err(format!("missing field `{field}`"));
    let from_lib = |e: crate::Error| dim_err(e.to_string());
    let io_vars = |vars: Option<&Vec<SignalBlock>>| -> PResult<Option<(SignalBlock, SignalBlock)>> {
        match vars {
            None => Ok(None),
            Some(v) if v.len() == 2 => Ok(Some((v[0].clone(), v[1].clone()))),
            Some(_) => Err(dim_err("`vars` must list an input block and an output block".into())),
        }
    };

    match kind {
        "kernel" => {
            let vars = blocks.remove("vars").ok_or_else(|| missing("vars"))?;
            let r = matrices.remove("R").ok_or_else(|| missing("R"))?;
            let k: usize = vars.iter().map(|b| b.dim).sum();
            let r = r.build(name, k)?;
            Ok(Definition::Kernel(KernelRep::new(r, vars).map_err(from_lib)?))
        }
        "latent" => {
            let vars = blocks.remove("vars").ok_or_else(|| missing("vars"))?;
            let latent_dim = match blocks.remove("latent") {
                Some(b) => b.iter().map(|b| b.dim).sum(),
                None => return Err(missing("latent")),
            };
            let k: usize = vars.iter().map(|b| b.dim).sum();
            let r = matrices.remove("R").ok_or_else(|| missing("R"))?.build(name, k)?;
            let e = matrices.remove("E").ok_or_else(|| missing("E"))?.build(name, latent_dim)?;
            if e.cols() != latent_dim {
                return Err(dim_err(format!(
                    "E has {} columns, latent dimension is {latent_dim}",
                    e.cols()
                )));
            }
            Ok(Definition::Latent(LatentRep::new(r, e, vars).map_err(from_lib)?))
        }
        "iosystem" => {
            let vars = io_vars(blocks.get("vars"))?;
            let p = matrices.remove("P").ok_or_else(|| missing("P"))?;
            let q = matrices.remove("Q").ok_or_else(|| missing("Q"))?;
            let rows = p.rows.len();
            let m = match (&vars, q.cols()) {
                (Some((u, _)), _) => u.dim,
                (None, Some(c)) => c,
                (None, None) => return Err(dim_err("cannot infer the input dimension; add `vars`".into())),
            };
            let p = p.build(name, rows)?;
            let q = q.build(name, m)?;
            let mut io = IoSystem::new(p, q).map_err(from_lib)?;
            if let Some((u, y)) = vars {
                if u.dim != io.inputs() || y.dim != io.outputs() {
                    return Err(dim_err(format!(
                        "`vars` declares {u} {y} but P, Q give {} inputs and {} outputs",
                        io.inputs(),
                        io.outputs()
                    )));
                }
                io = io.with_signal_names(&u.name, &y.name);
            }
            Ok(Definition::IoSystem(io))
        }
        "statespace" => {
            let vars = io_vars(blocks.get("vars"))?;
            let mut take = |f: &str| matrices.remove(f).ok_or_else(|| missing(f));
            let (a, b, c, d) = (take("A")?, take("B")?, take("C")?, take("D")?);
            let n = a.rows.len();
            let m = match &vars {
                Some((u, _)) => u.dim,
                None => d.cols().or(b.cols()).ok_or_else(|| {
                    dim_err("cannot infer the input dimension; add `vars`".into())
                })?,
            };
            let p = match &vars {
                Some((_, y)) => y.dim,
                None => d.rows.len().max(c.rows.len()),
            };
            let ss = StateSpace::new(a.build(name, n)?, b.build(name, m)?, c.build(name, n)?, d.build(name, m)?)
                .map_err(from_lib)?;
            if ss.inputs() != m || ss.outputs() != p {
                return Err(dim_err(format!(
                    "declared {m} inputs and {p} outputs, matrices give {} and {}",
                    ss.inputs(),
                    ss.outputs()
                )));
            }
            let ss = match vars {
                Some((u, y)) => ss.with_signal_names(&u.name, &y.name),
                None => ss,
            };
            Ok(Definition::StateSpace(ss))
        }
        "contract" => {
            let assumptions = names.remove("assumptions").ok_or_else(|| missing("assumptions"))?;
            let guarantees = names.remove("guarantees").ok_or_else(|| missing("guarantees"))?;
            Ok(Definition::Contract(ContractDef {
                assumptions,
                guarantees,
            }))
        }
        _ => unreachable!("kind checked by the parser"),
    }
}

/// Parses one document.
pub fn parse(text: &str) -> Result<Document, DocError> {
    parse_named(text, "<input>")
}

/// Parses one document, labelling locations with `file`.
pub fn parse_named(text: &str, file: &str) -> Result<Document, DocError> {
    let mut p = Parser {
        tokens: tokenize(text, file)?,
        pos: 0,
    };
    let mut doc = Document::new();
    p.document(&mut doc)?;
    Ok(doc)
}

/// Parses a standalone polynomial such as `3/2*s^2 - s + 1`.
pub fn parse_poly(text: &str) -> Result<Poly, DocError> {
    let mut p = Parser {
        tokens: tokenize(text, "<poly>")?,
        pos: 0,
    };
    let out = p.poly()?;
    p.expect(Tok::Eof)?;
    Ok(out)
}

/// Parses a standalone matrix literal. A literal with no rows has no columns.
pub fn parse_matrix(text: &str) -> Result<PolyMatrix, DocError> {
    let mut p = Parser {
        tokens: tokenize(text, "<matrix>")?,
        pos: 0,
    };
    let lit = p.matrix()?;
    p.expect(Tok::Eof)?;
    lit.build("<matrix>", 0)
}

/// Reads files, or every `*.lc` file of a directory in name order, into one
/// validated document.
pub fn load_paths<P: AsRef<Path>>(paths: &[P]) -> Result<Document, DocError> {
    let mut files = Vec::new();
    for p in paths {
        let p = p.as_ref();
        if p.is_dir() {
            let rd = std::fs::read_dir(p).map_err(|e| io_err(p, e))?;
            let mut found: Vec<_> = rd
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "lc"))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(p.to_path_buf());
        }
    }
    let mut doc = Document::new();
    for f in files {
        let text = std::fs::read_to_string(&f).map_err(|e| io_err(&f, e))?;
        doc.merge(parse_named(&text, &f.display().to_string())?)?;
    }
    doc.validate()?;
    Ok(doc)
}

fn io_err(p: &Path, e: std::io::Error) -> DocError {
    DocError::Io {
        path: p.display().to_string(),
        message: e.to_string(),
    }
}
