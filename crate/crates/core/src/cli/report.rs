use std::fmt::Write as _;

use serde::Serialize;

use crate::behavior::Inclusion;
use crate::contracts::Verdict;
use crate::polyalg::{format_rational, Poly};
use crate::polymatrix::PolyMatrix;

/// Polynomial matrix in both report encodings: `text` is the literal syntax
/// the parser reads, `entries[i][j]` the ascending coefficients as `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixReport {
    pub rows: usize,
    pub cols: usize,
    pub text: String,
    pub entries: Vec<Vec<Vec<String>>>,
}

impl From<&PolyMatrix> for MatrixReport {
    fn from(m: &PolyMatrix) -> Self {
        MatrixReport {
            rows: m.rows(),
            cols: m.cols(),
            text: m.to_string(),
            entries: m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(poly_coefficients).collect())
                .collect(),
        }
    }
}

pub fn poly_coefficients(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

/// One inclusion and its certificate or failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub label: String,
    pub included: bool,
    /// `R1` of `B(R1) ⊂ B(R2)`.
    pub lhs: MatrixReport,
    /// `R2` of `B(R1) ⊂ B(R2)`.
    pub rhs: MatrixReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<MatrixReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl CheckReport {
    pub fn new(label: &str, lhs: &PolyMatrix, rhs: &PolyMatrix, outcome: &Inclusion) -> Self {
        CheckReport {
            label: label.into(),
            included: outcome.holds(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            witness: outcome.witness().map(|w| w.multiplier().into()),
            diagnostic: outcome.failure().map(ToString::to_string),
        }
    }

    pub fn from_verdict(v: &Verdict) -> Vec<Self> {
        v.checks
            .iter()
            .map(|c| CheckReport::new(c.label, &c.lhs, &c.rhs, &c.outcome))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: MatrixReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    /// `holds`, `fails`, `ok` or `error`.
    pub status: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<NamedMatrix>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub invariant_factors: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub document: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Report {
    pub fn new(command: Vec<String>, holds: Option<bool>) -> Self {
        let (status, exit_code) = match holds {
            Some(true) => ("holds", 0),
            Some(false) => ("fails", 1),
            None => ("ok", 0),
        };
        Report {
            command,
            status: status.into(),
            exit_code,
            checks: Vec::new(),
            matrices: Vec::new(),
            invariant_factors: Vec::new(),
            document: None,
            diagnostics: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn error(command: Vec<String>, message: String) -> Self {
        let mut r = Report::new(command, None);
        r.status = "error".into();
        r.exit_code = 2;
        r.diagnostics.push(message);
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable form. `quiet` drops witnesses and matrices.
    pub fn to_text(&self, quiet: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command.join(" "), self.status);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "  {} inclusion: {}",
                c.label,
                if c.included { "included" } else { "not included" }
            );
            if let (Some(w), false) = (&c.witness, quiet) {
                let _ = writeln!(out, "    R1 = {}", c.lhs.text);
                let _ = writeln!(out, "    R2 = {}", c.rhs.text);
                let _ = writeln!(out, "    witness M = {}   (M * R1 = R2)", w.text);
            }
            if let Some(d) = &c.diagnostic {
                let _ = writeln!(out, "    {d}");
            }
        }
        if !quiet {
            for m in &self.matrices {
                let _ = writeln!(out, "  {} = {}", m.name, m.matrix.text);
            }
        }
        if !self.invariant_factors.is_empty() || self.matrices.iter().any(|m| m.name == "U") {
            let factors: Vec<String> = self
                .invariant_factors
                .iter()
                .map(|c| {
                    let coeffs = c.iter().map(|s| crate::polyalg::parse_rational(s).expect("own output"));
                    Poly::from_coeffs(coeffs.collect()).to_string()
                })
                .collect();
            let _ = writeln!(out, "  invariant factors: [{}]", factors.join(", "));
        }
        if let Some(doc) = &self.document {
            for line in doc.lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        for d in &self.diagnostics {
            let _ = writeln!(out, "  {d}");
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "  elapsed: {ms:.3} ms");
        }
        out
    }
}
