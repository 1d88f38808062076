use super::document::{parse_matrix, ContractDef, Definition, Document};
use super::error::DocError;
use super::report::{poly_coefficients, CheckReport, NamedMatrix, Report};
use crate::behavior::{behavior_included, check_io_form, minimal_kernel, statespace_to_io};
use crate::contracts::{self, System};
use crate::polymatrix::smith_form;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    CheckIo { sys: String },
    Eliminate { sys: String },
    Smith { matrix: String },
    Include { r1: String, r2: String },
    Implements { sys: String, contract: String },
    Compatible { env: String, contract: String },
    Refines { c1: String, c2: String },
    Conjoin { c1: String, c2: String, name: Option<String> },
}

impl Command {
    pub fn words(&self) -> Vec<String> {
        let w: Vec<&str> = match self {
            Command::CheckIo { sys } => vec!["check-io", sys],
            Command::Eliminate { sys } => vec!["eliminate", sys],
            Command::Smith { matrix } => vec!["smith", matrix],
            Command::Include { r1, r2 } => vec!["include", r1, r2],
            Command::Implements { sys, contract } => vec!["implements", sys, contract],
            Command::Compatible { env, contract } => vec!["compatible", env, contract],
            Command::Refines { c1, c2 } => vec!["refines", c1, c2],
            Command::Conjoin { c1, c2, .. } => vec!["conjoin", c1, c2],
        };
        w.into_iter().map(String::from).collect()
    }
}

#[derive(Debug)]
enum RunError {
    Doc(DocError),
    Lib(crate::Error),
}

impl From<DocError> for RunError {
    fn from(e: DocError) -> Self {
        RunError::Doc(e)
    }
}

impl From<crate::Error> for RunError {
    fn from(e: crate::Error) -> Self {
        RunError::Lib(e)
    }
}

/// Executes `cmd` against `doc`. Exit code 0 means the property holds or
/// the output was produced, 1 that it fails, 2 an input or validation error.
pub fn run(cmd: &Command, doc: &Document) -> Report {
    let words = cmd.words();
    match execute(cmd, doc, words.clone()) {
        Ok(r) => r,
        Err(RunError::Doc(e)) => Report::error(words, e.to_string()),
        Err(RunError::Lib(e)) => Report::error(words, e.to_string()),
    }
}

fn verdict_report(words: Vec<String>, v: &contracts::Verdict) -> Report {
    let mut r = Report::new(words, Some(v.holds()));
    r.checks = CheckReport::from_verdict(v);
    r.diagnostics = v.diagnostics();
    r
}

fn execute(cmd: &Command, doc: &Document, words: Vec<String>) -> Result<Report, RunError> {
    Ok(match cmd {
        Command::CheckIo { sys } => {
            let io = match doc.system(sys)? {
                System::Io(io) => io,
                System::StateSpace(ss) => statespace_to_io(&ss)?,
            };
            let ok = check_io_form(&io);
            let mut r = Report::new(words, Some(ok));
            r.matrices = vec![named("P", io.p()), named("Q", io.q())];
            if !ok {
                r.diagnostics
                    .push("not in input-output form: P must be invertible and P^-1 Q proper".into());
            }
            r
        }
        Command::Eliminate { sys } => {
            let k = minimal_kernel(&doc.kernel(sys)?);
            let mut out = Document::new();
            out.push(format!("{sys}_kernel"), Definition::Kernel(k.clone()))?;
            let mut r = Report::new(words, None);
            r.matrices = vec![named("R", k.matrix())];
            r.document = Some(out.to_text());
            r
        }
        Command::Smith { matrix } => {
            let m = match doc.get(matrix) {
                Some(_) => doc.kernel(matrix)?.matrix().clone(),
                None => parse_matrix(matrix)?,
            };
            let sd = smith_form(&m);
            let mut r = Report::new(words, None);
            r.matrices = vec![named("U", &sd.u), named("D", &sd.diagonal()), named("V", &sd.v)];
            r.invariant_factors = sd.invariant_factors.iter().map(poly_coefficients).collect();
            r
        }
        Command::Include { r1, r2 } => {
            let (k1, k2) = (doc.kernel(r1)?, doc.kernel(r2)?);
            let inc = behavior_included(&k1, &k2)?;
            let mut r = Report::new(words, Some(inc.holds()));
            r.checks = vec![CheckReport::new("behavior", k1.matrix(), k2.matrix(), &inc)];
            if let Some(f) = inc.failure() {
                r.diagnostics.push(f.to_string());
            }
            r
        }
        Command::Implements { sys, contract } => {
            let v = contracts::implements(&doc.system(sys)?, &doc.contract(contract)?)?;
            verdict_report(words, &v)
        }
        Command::Compatible { env, contract } => {
            let v = contracts::env_compatible(&doc.kernel(env)?, &doc.contract(contract)?)?;
            verdict_report(words, &v)
        }
        Command::Refines { c1, c2 } => {
            let v = contracts::refines(&doc.contract(c1)?, &doc.contract(c2)?)?;
            verdict_report(words, &v)
        }
        Command::Conjoin { c1, c2, name } => {
            let both = contracts::conjunction(&doc.contract(c1)?, &doc.contract(c2)?)?;
            let name = name.clone().unwrap_or_else(|| format!("{c1}_and_{c2}"));
            let (a_name, g_name) = (format!("{name}_A"), format!("{name}_G"));
            let mut out = Document::new();
            out.push(a_name.clone(), Definition::Kernel(both.assumptions().clone()))?;
            out.push(g_name.clone(), Definition::Kernel(both.guarantees().clone()))?;
            out.push(
                name,
                Definition::Contract(ContractDef {
                    assumptions: a_name,
                    guarantees: g_name,
                }),
            )?;
            let mut r = Report::new(words, None);
            r.document = Some(out.to_text());
            r
        }
    })
}

fn named(name: &str, m: &crate::polymatrix::PolyMatrix) -> NamedMatrix {
    NamedMatrix {
        name: name.into(),
        matrix: m.into(),
    }
}
