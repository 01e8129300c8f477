//! Command-line front end.
//!
//! Every subcommand reads one text file (`-` for stdin). Algebra outputs are
//! written in the input format so commands can be piped together. Exit codes:
//! 0 on success, 1 when a check or validation fails, 2 on usage or parse errors.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{
    auslander_rad2, derived_preprojective, ginzburg, mckay_cyclic, resolve_gldim2,
};
use crate::dg::DgQuiverAlgebra;
use crate::dot::emit_dot;
use crate::dsl::{parse, parse_element, Document};
use crate::error::Error;
use crate::homology::{quotient_dim_truncated, truncated_cohomology};
use crate::leavitt::{leavitt_graded_dim, leavitt_presentation, leavitt_presentation_of, GradedDim};
use crate::quiver::{Quiver, VertexId};
use crate::quotients::{
    build_findim, contracting_homotopy, delete_vertices, drinfeld_h0, DrinfeldComplex, HomotopyFormula,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(name = "dgq", version, about = "Exact computations with differential graded quiver algebras")]
pub struct RunManifest {
    /// Report errors as JSON on stderr.
    #[arg(long, global = true)]
    pub json_errors: bool,

    /// Output format; each command accepts a subset.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Dsl,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Input file, or `-` for stdin.
    pub input: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check endpoints, degrees, weights and d^2 = 0.
    Validate(Input),
    /// Build a dg algebra from a presentation, quiver or potential.
    #[command(subcommand)]
    Construct(Construction),
    /// Quotient by the two-sided ideal generated by the given vertices.
    DeleteVertex {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<String>,
    },
    /// Check that dh + hd is the identity on paths through a contractible vertex.
    HomotopyCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        vertex: String,
        /// Cycle `x` at the vertex with `d(x) = e`.
        #[arg(long)]
        contraction: String,
        #[arg(long, default_value_t = 8)]
        max_length: usize,
        /// Check the bare insertion formula instead of the corrected homotopy.
        #[arg(long)]
        insertion_only: bool,
    },
    /// Truncated Drinfeld quotient of a finite-dimensional algebra.
    Drinfeld {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        idempotent: Vec<String>,
        #[arg(long, default_value_t = 3)]
        pmax: usize,
        /// Length bound for finding a basis of the algebra.
        #[arg(long, default_value_t = 16)]
        max_length: usize,
    },
    /// Leavitt presentation of a quiver, with graded dimensions.
    ///
    /// Arrows of degree 0 are primed first; a quiver whose arrows all have
    /// degree -1 is used as it is.
    Leavitt {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 5)]
        max_length: usize,
    },
    /// Truncated cohomology in the given degrees and weights.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        deg: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weight: Vec<i64>,
    },
    /// Dimensions of a quotient algebra by path length.
    Dims {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_length: usize,
    },
    /// Graphviz rendering of the quiver.
    Dot(Input),
}

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// Add a degree -1 arrow for each relation.
    Resolve(Input),
    /// Gldim-two algebra of the radical-square-zero algebra of a quiver.
    Auslander {
        #[command(flatten)]
        input: Input,
        /// Emit the presentation instead of its dg model.
        #[arg(long)]
        presentation: bool,
    },
    /// Ginzburg dg algebra of the quiver and potential in the file.
    Ginzburg(Input),
    /// Derived preprojective algebra, using the file's `lambda` lines.
    Preprojective(Input),
    /// Quiver with potential for a cyclic group acting diagonally on three variables.
    Mckay {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [1, 1, 1])]
        weights: Vec<i64>,
    },
}

/// Failure of a run, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
    pub location: Option<(usize, usize)>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 2, kind: "usage", message: message.into(), location: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let (code, kind) = match &e {
            Error::Syntax { .. } => (2, "syntax"),
            Error::NoVertices => (2, "no_vertices"),
            Error::DuplicateVertex(_) => (2, "duplicate_vertex"),
            Error::DuplicateArrow(_) => (2, "duplicate_arrow"),
            Error::DanglingEndpoint { .. } => (2, "dangling_endpoint"),
            Error::UnknownVertex(_) => (2, "unknown_vertex"),
            Error::UnknownArrow(_) => (2, "unknown_arrow"),
            Error::MalformedRelation(_) => (2, "malformed_relation"),
            Error::InvalidPotential(_) => (2, "invalid_potential"),
            Error::QuiverMismatch(_) => (1, "quiver_mismatch"),
            Error::Precondition(_) => (1, "precondition"),
            Error::Unsupported(_) => (1, "unsupported"),
            Error::EnumerationBound(_) => (1, "enumeration_bound"),
            Error::NoStabilization { .. } => (1, "no_stabilization"),
        };
        let location = match &e {
            Error::Syntax { line, column, .. } => Some((*line, *column)),
            _ => None,
        };
        Failure { code, kind, message: e.to_string(), location }
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json_errors = args.iter().any(|a| a == "--json-errors");
    let manifest = match RunManifest::try_parse_from(&args) {
        Ok(m) => m,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let failure = Failure::usage(e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string());
            if json_errors {
                report_failure(stderr, &failure, true);
            } else {
                let _ = write!(stderr, "{e}");
            }
            return 2;
        }
    };
    match execute(&manifest, stdin) {
        Ok(output) => {
            if stdout.write_all(output.text.as_bytes()).is_err() {
                return 2;
            }
            output.code
        }
        Err(failure) => {
            report_failure(stderr, &failure, manifest.json_errors);
            failure.code
        }
    }
}

fn report_failure(stderr: &mut dyn Write, failure: &Failure, json_errors: bool) {
    let _ = if json_errors {
        let mut error = json!({ "kind": failure.kind, "message": failure.message });
        if let Some((line, column)) = failure.location {
            error["line"] = json!(line);
            error["column"] = json!(column);
        }
        let value = json!({ "schema_version": SCHEMA_VERSION, "exit_code": failure.code, "error": error });
        writeln!(stderr, "{value}")
    } else {
        writeln!(stderr, "error: {}", failure.message)
    };
}

/// Text written to stdout and the exit code to return with it.
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, code: 0 }
    }
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    if input.input == "-" {
        stdin.read_to_string(&mut text).map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(&input.input)
            .map_err(|e| Failure::usage(format!("reading `{}`: {e}", input.input)))?;
    }
    Ok(text)
}

fn read_document(input: &Input, stdin: &mut dyn Read) -> Result<Document, Failure> {
    Ok(parse(&read_input(input, stdin)?)?)
}

fn vertex_ids(q: &Quiver, names: &[String]) -> Result<Vec<VertexId>, Failure> {
    names.iter().map(|n| q.vertex_by_name(n).map_err(Failure::from)).collect()
}

fn format_of(manifest: &RunManifest, allowed: &[Format]) -> Result<Format, Failure> {
    match manifest.format {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(Failure::usage(format!("format {f:?} is not available for this command").to_lowercase())),
    }
}

fn with_schema(value: impl Serialize) -> String {
    let mut v = serde_json::to_value(value).expect("reports serialize");
    if let Value::Object(map) = &mut v {
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    let mut text = serde_json::to_string_pretty(&v).expect("reports serialize");
    text.push('\n');
    text
}

fn emit_algebra(manifest: &RunManifest, doc: &Document) -> Result<Output, Failure> {
    Ok(Output::ok(match format_of(manifest, &[Format::Dsl, Format::Dot])? {
        Format::Dot => emit_dot(&doc.quiver),
        _ => doc.to_text(),
    }))
}

fn emit_dg(manifest: &RunManifest, algebra: &DgQuiverAlgebra) -> Result<Output, Failure> {
    emit_algebra(manifest, &Document::from_dg(algebra))
}

/// Executes a parsed command line.
pub fn execute(manifest: &RunManifest, stdin: &mut dyn Read) -> Result<Output, Failure> {
    match &manifest.command {
        Command::Validate(input) => validate(manifest, &read_document(input, stdin)?),
        Command::Construct(c) => construct(manifest, c, stdin),
        Command::DeleteVertex { input, vertices } => {
            let doc = read_document(input, stdin)?;
            let ids = vertex_ids(doc.quiver.quiver(), vertices)?;
            emit_dg(manifest, &delete_vertices(&doc.dg_algebra(), &ids)?)
        }
        Command::HomotopyCheck { input, vertex, contraction, max_length, insertion_only } => {
            let format = format_of(manifest, &[Format::Json, Format::Text])?;
            let doc = read_document(input, stdin)?;
            let algebra = doc.dg_algebra();
            let q = algebra.quiver();
            let v = q.vertex_by_name(vertex)?;
            let x = parse_element(q, contraction)?;
            let formula = if *insertion_only { HomotopyFormula::Insertion } else { HomotopyFormula::Corrected };
            let report = contracting_homotopy(&algebra, v, x)?.verify(formula, *max_length);
            let text = match format {
                Format::Text => match &report.failure {
                    None => format!("ok: {} paths of length <= {}\n", report.checked_paths, report.max_length),
                    Some(f) => format!("failed: {f}\n"),
                },
                _ => with_schema(&report),
            };
            Ok(Output { text, code: if report.is_ok() { 0 } else { 1 } })
        }
        Command::Drinfeld { input, idempotent, pmax, max_length } => {
            format_of(manifest, &[Format::Json])?;
            let doc = read_document(input, stdin)?;
            let algebra = build_findim(&doc.presentation()?, *max_length)?;
            let e = vertex_ids(algebra.quiver(), idempotent)?;
            drinfeld(&algebra, &e, *pmax)
        }
        Command::Leavitt { input, max_length } => {
            let format = format_of(manifest, &[Format::Dsl, Format::Json])?;
            let doc = read_document(input, stdin)?;
            let degrees = doc.quiver.degrees();
            let presentation = if degrees.iter().all(|&d| d == 0) {
                leavitt_presentation(doc.quiver.quiver())?
            } else if degrees.iter().all(|&d| d == -1) {
                leavitt_presentation_of(doc.quiver.quiver())?
            } else {
                return Err(Error::Unsupported("arrows must all have degree 0 or all degree -1".into()).into());
            };
            let text = presentation.to_document().to_text();
            if format == Format::Dsl {
                return Ok(Output::ok(text));
            }
            let bound = *max_length as i64;
            let table = (-bound..=bound)
                .map(|n| {
                    let dim = leavitt_graded_dim(&presentation, n, *max_length)?;
                    Ok(GradedDim { degree: n, max_word_length: *max_length, dim })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(Output::ok(with_schema(json!({ "presentation": text, "graded_dims": table }))))
        }
        Command::Cohomology { input, deg, weight } => {
            let format = format_of(manifest, &[Format::Json, Format::Text])?;
            let algebra = read_document(input, stdin)?.dg_algebra();
            let mut entries = Vec::new();
            for &n in deg {
                for &w in weight {
                    entries.push(truncated_cohomology(&algebra, n, w)?);
                }
            }
            Ok(Output::ok(match format {
                Format::Text => entries
                    .iter()
                    .map(|e| format!("H^{} weight {}: {}\n", e.degree, e.weight, e.dim))
                    .collect(),
                _ => with_schema(json!({ "entries": entries })),
            }))
        }
        Command::Dims { input, max_length } => {
            format_of(manifest, &[Format::Json])?;
            let doc = read_document(input, stdin)?;
            Ok(Output::ok(with_schema(quotient_dim_truncated(&doc.presentation()?, *max_length))))
        }
        Command::Dot(input) => {
            format_of(manifest, &[Format::Dot])?;
            Ok(Output::ok(emit_dot(&read_document(input, stdin)?.quiver)))
        }
    }
}

fn validate(manifest: &RunManifest, doc: &Document) -> Result<Output, Failure> {
    let format = format_of(manifest, &[Format::Text, Format::Json])?;
    let report = doc.dg_algebra().validate();
    let text = match format {
        Format::Json => with_schema(&report),
        _ if report.is_valid() => "valid\n".to_string(),
        _ => report.violations.iter().map(|v| format!("{:?} `{}`: {}\n", v.kind, v.arrow, v.detail)).collect(),
    };
    Ok(Output { text, code: if report.is_valid() { 0 } else { 1 } })
}

fn construct(manifest: &RunManifest, c: &Construction, stdin: &mut dyn Read) -> Result<Output, Failure> {
    match c {
        Construction::Resolve(input) => {
            let doc = read_document(input, stdin)?;
            emit_dg(manifest, &resolve_gldim2(&doc.presentation()?)?)
        }
        Construction::Auslander { input, presentation } => {
            let doc = read_document(input, stdin)?;
            let data = auslander_rad2(doc.quiver.quiver())?;
            if *presentation {
                emit_algebra(manifest, &Document::from_presentation(&data.presentation))
            } else {
                emit_dg(manifest, &data.dg)
            }
        }
        Construction::Ginzburg(input) => {
            let doc = read_document(input, stdin)?;
            emit_dg(manifest, &ginzburg(doc.quiver.quiver(), &doc.potential()?)?)
        }
        Construction::Preprojective(input) => {
            let doc = read_document(input, stdin)?;
            emit_dg(manifest, &derived_preprojective(doc.quiver.quiver(), &doc.deformation())?)
        }
        Construction::Mckay { n, weights } => {
            let w: [i64; 3] = weights.as_slice().try_into().map_err(|_| Failure::usage("expected three weights"))?;
            let (q, potential) = mckay_cyclic(*n, w)?;
            emit_dg(manifest, &ginzburg(&q, &potential)?)
        }
    }
}

fn drinfeld(algebra: &crate::quotients::FiniteDimAlgebra, e: &[VertexId], p_max: usize) -> Result<Output, Failure> {
    let complex = DrinfeldComplex::new(algebra, e, p_max)?;
    let h0 = drinfeld_h0(algebra, e)?;
    let q = algebra.quiver();
    let component_dims: Vec<Value> = (0..=p_max as i64 + 1)
        .map(|k| json!({ "degree": -k, "dim": complex.component_dim(-k) }))
        .collect();
    let d_squared = complex.d_squared_failure();
    let leibniz = complex.leibniz_failure();
    let checks = json!({
        "d_squared": d_squared.is_none(),
        "leibniz": leibniz.is_none(),
        "leibniz_pairs": complex.leibniz_pair_count(),
        "routes_agree": h0.routes_agree(),
        "span_dim": h0.span_dim,
        "cokernel_dim": h0.cokernel_dim,
    });
    let report = json!({
        "idempotent": e.iter().map(|v| q.vertex_name(*v)).collect::<Vec<_>>(),
        "p_max": p_max,
        "algebra_dim": algebra.dim(),
        "component_dims": component_dims,
        "h0_dim": h0.dim,
        "h0_basis": h0.basis.iter().map(|p| p.display(q).to_string()).collect::<Vec<_>>(),
        "checks": checks,
    });
    let ok = d_squared.is_none() && leibniz.is_none() && h0.routes_agree();
    Ok(Output { text: with_schema(report), code: if ok { 0 } else { 1 } })
}
