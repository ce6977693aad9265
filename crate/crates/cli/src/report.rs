//! Run one subcommand and render its result.

use std::fmt;
use std::time::Instant;

use invring::{
    invariant_ring, Error, FiniteAlgorithm, GroupAction, InvariantOptions, Method, Polynomial,
    RingOfInvariants,
};
use serde_json::{json, Map, Value};

use crate::description::{ActionDescription, BuildError, InputError};
use crate::{Algorithm, Command, Output};

const DEFAULT_SERIES_TERMS: u32 = 10;
const DEFAULT_VERIFY_DEGREE: u32 = 6;

pub struct Request {
    pub command: Command,
    pub algorithm: Option<Algorithm>,
    pub max_degree: Option<u32>,
    pub literal: bool,
    pub degrees: Option<Vec<u32>>,
    pub output: Output,
}

pub struct Report {
    pub text: String,
    pub exit_code: u8,
}

#[derive(Debug)]
pub enum Failure {
    Input(InputError),
    Usage(String),
    Domain(Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) | Failure::Usage(_) => 1,
            Failure::Domain(e) if e.is_input_error() => 1,
            Failure::Domain(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(e) => write!(f, "{e}"),
            Failure::Usage(m) => f.write_str(m),
            Failure::Domain(e) => write!(f, "{}: {e}", e.name()),
        }
    }
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Input(e) => Failure::Input(e),
            BuildError::Domain(e) => Failure::Domain(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn check_flags(description: &ActionDescription, request: &Request) -> Result<(), Failure> {
    let kind = description.kind();
    if request.algorithm.is_some() && kind != "finite" {
        return Err(Failure::Usage(
            "--algorithm applies to finite actions only".into(),
        ));
    }
    if request.literal && kind != "diagonal" {
        return Err(Failure::Usage(
            "--literal applies to diagonal actions only".into(),
        ));
    }
    match (request.command, &request.degrees) {
        (Command::HilbertSeries, None) => Err(Failure::Usage("hilbert-series requires --degrees".into())),
        (Command::HilbertSeries, Some(_)) | (_, None) => Ok(()),
        (_, Some(_)) => Err(Failure::Usage("--degrees applies to hilbert-series only".into())),
    }
}

fn strings(polys: &[Polynomial]) -> Vec<String> {
    polys.iter().map(|p| p.to_string()).collect()
}

fn degrees(polys: &[Polynomial]) -> Vec<u32> {
    polys.iter().map(|p| p.degree().unwrap_or(0)).collect()
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Invariants => "invariants",
        Command::Molien => "molien",
        Command::HilbertIdeal => "hilbert-ideal",
        Command::DefiningIdeal => "defining-ideal",
        Command::HilbertSeries => "hilbert-series",
        Command::Verify => "verify",
    }
}

pub fn run(description: &ActionDescription, request: &Request) -> Result<Report, Failure> {
    check_flags(description, request)?;
    let built = description.build()?;
    let literal_q = match (request.literal, built.literal_q) {
        (false, _) => None,
        (true, Some(q)) => Some(q),
        (true, None) => {
            return Err(Failure::Input(InputError {
                field: "action.literalQ".into(),
                message: "required with --literal".into(),
            }))
        }
    };
    let options = InvariantOptions {
        algorithm: match request.algorithm {
            Some(Algorithm::Linear) => FiniteAlgorithm::LinearAlgebra,
            _ => FiniteAlgorithm::King,
        },
        max_degree: match request.command {
            Command::Invariants | Command::HilbertIdeal | Command::DefiningIdeal => request.max_degree,
            _ => None,
        },
        literal_q,
    };
    let start = Instant::now();
    let mut fields = Map::new();
    let mut lines: Vec<String> = Vec::new();
    let mut exit_code = 0;
    match request.command {
        Command::Invariants => {
            let ring = invariant_ring(built.action, &options)?;
            let gens = ring.generators();
            fields.insert("method".into(), json!(ring.method().to_string()));
            fields.insert("generators".into(), json!(strings(gens)));
            fields.insert("degrees".into(), json!(degrees(gens)));
            fields.insert("count".into(), json!(gens.len()));
            lines.extend(strings(gens));
        }
        Command::Molien => {
            let GroupAction::Finite(action) = &built.action else {
                return Err(
                    Error::Unsupported("Molien series are available for finite actions only".into()).into(),
                );
            };
            let series = action.molien_series()?;
            let terms = request.max_degree.unwrap_or(DEFAULT_SERIES_TERMS) as usize;
            let coefficients: Vec<String> = series.series(terms).iter().map(|c| c.to_string()).collect();
            fields.insert("series".into(), json!(series.to_string()));
            fields.insert("coefficients".into(), json!(coefficients));
            lines.push(series.to_string());
        }
        Command::HilbertIdeal => {
            let gens = match &built.action {
                GroupAction::Reductive(a) => a.hilbert_ideal()?,
                _ => invariant_ring(built.action, &options)?.hilbert_ideal()?,
            };
            fields.insert("generators".into(), json!(strings(&gens)));
            fields.insert("degrees".into(), json!(degrees(&gens)));
            fields.insert("count".into(), json!(gens.len()));
            lines.extend(strings(&gens));
        }
        Command::DefiningIdeal => {
            let ring = invariant_ring(built.action, &options)?;
            let (target, relations) = ring.defining_ideal()?;
            let gens = strings(ring.generators());
            fields.insert("variables".into(), json!(target.variables()));
            fields.insert("generators".into(), json!(gens));
            fields.insert("relations".into(), json!(strings(&relations)));
            fields.insert("count".into(), json!(relations.len()));
            for (u, g) in target.variables().iter().zip(&gens) {
                lines.push(format!("{u} -> {g}"));
            }
            lines.extend(strings(&relations));
        }
        Command::HilbertSeries => {
            let degrees = request.degrees.clone().unwrap_or_default();
            // the rewrite depends on the action only, so no generators are computed
            let ring = RingOfInvariants::new(built.action, Vec::new(), Method::King);
            let numerator = ring.hilbert_series_rewrite(&degrees)?;
            fields.insert("degrees".into(), json!(degrees));
            fields.insert("numerator".into(), json!(numerator.to_string()));
            lines.push(numerator.to_string());
        }
        Command::Verify => {
            let top = request.max_degree.unwrap_or(DEFAULT_VERIFY_DEGREE);
            let ring = invariant_ring(built.action, &options)?;
            let checks = ring.verify_generators(top)?;
            let pass = checks.iter().all(|c| c.pass);
            let rows: Vec<Value> = checks
                .iter()
                .map(|c| json!({"degree": c.degree, "expected": c.expected, "actual": c.actual, "pass": c.pass}))
                .collect();
            fields.insert("method".into(), json!(ring.method().to_string()));
            fields.insert("generators".into(), json!(strings(ring.generators())));
            fields.insert("checks".into(), json!(rows));
            fields.insert("pass".into(), json!(pass));
            for c in &checks {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                lines.push(format!(
                    "degree {}: expected {}, actual {} {verdict}",
                    c.degree, c.expected, c.actual
                ));
            }
            lines.push(if pass { "PASS".into() } else { "FAIL".into() });
            if !pass {
                exit_code = 2;
            }
        }
    }
    fields.insert("command".into(), json!(command_name(request.command)));
    fields.insert("action".into(), json!(description.kind()));
    fields.insert("wallTimeSeconds".into(), json!(start.elapsed().as_secs_f64()));
    let text = match request.output {
        Output::Json => serde_json::to_string_pretty(&Value::Object(fields)).expect("serializable"),
        Output::Text => lines.join("\n"),
    };
    Ok(Report { text, exit_code })
}
