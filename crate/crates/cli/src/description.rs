//! The JSON action description and its translation into a [`GroupAction`].

use std::sync::Arc;

use invring::{
    parse_polynomial, parse_scalar, DiagonalAction, Error, Field, FiniteGroupAction, GroupAction,
    LinearlyReductiveAction, Matrix, Polynomial, PolynomialRing,
};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDescription {
    pub field: FieldSpec,
    pub variables: Vec<String>,
    pub action: ActionSpec,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum FieldSpec {
    Q,
    Fp { p: u64 },
}

#[derive(Debug, Deserialize)]
#[serde(
    tag = "kind",
    rename_all = "lowercase",
    rename_all_fields = "camelCase",
    deny_unknown_fields
)]
pub enum ActionSpec {
    Finite {
        generators: Vec<Vec<Vec<Entry>>>,
    },
    Diagonal {
        torus_rank: usize,
        cyclic_orders: Vec<u64>,
        weights: Vec<Vec<i64>>,
        #[serde(default)]
        literal_q: Option<u64>,
    },
    Reductive {
        group_variables: Vec<String>,
        group_ideal: Vec<String>,
        action_matrix: Vec<Vec<String>>,
    },
}

/// Matrix entries may be written as JSON integers or as rational strings.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn text(&self) -> String {
        match self {
            Entry::Int(v) => v.to_string(),
            Entry::Text(s) => s.clone(),
        }
    }
}

/// A problem with the input file, tagged with the path of the offending
/// field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub field: String,
    pub message: String,
}

impl InputError {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// Failures while building an action: malformed input, or a well-formed
/// request the library rejects.
#[derive(Debug)]
pub enum BuildError {
    Input(InputError),
    Domain(Error),
}

impl From<InputError> for BuildError {
    fn from(e: InputError) -> Self {
        BuildError::Input(e)
    }
}

/// The action together with the literal field size, if one was given.
pub struct Built {
    pub action: GroupAction,
    pub literal_q: Option<u64>,
}

impl ActionDescription {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| InputError::new("input", e.to_string()))
    }

    pub fn kind(&self) -> &'static str {
        match self.action {
            ActionSpec::Finite { .. } => "finite",
            ActionSpec::Diagonal { .. } => "diagonal",
            ActionSpec::Reductive { .. } => "reductive",
        }
    }

    pub fn build(&self) -> Result<Built, BuildError> {
        let field = match self.field {
            FieldSpec::Q => Field::Rationals,
            FieldSpec::Fp { p } => Field::prime(p).map_err(|e| InputError::new("field.p", e.to_string()))?,
        };
        let ring = PolynomialRing::grevlex(field, &self.variables)
            .map_err(|e| InputError::new("variables", e.to_string()))?;
        let n = ring.nvars();
        match &self.action {
            ActionSpec::Finite { generators } => {
                let mut matrices = Vec::with_capacity(generators.len());
                for (k, g) in generators.iter().enumerate() {
                    let path = format!("action.generators[{k}]");
                    check_square(g, n, &path)?;
                    let rows = g
                        .iter()
                        .enumerate()
                        .map(|(i, row)| {
                            row.iter()
                                .enumerate()
                                .map(|(j, e)| {
                                    parse_scalar(&e.text(), field).map_err(|err| {
                                        InputError::new(format!("{path}[{i}][{j}]"), err.to_string())
                                    })
                                })
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    matrices
                        .push(Matrix::from_rows(rows).map_err(|e| InputError::new(&path, e.to_string()))?);
                }
                let action = FiniteGroupAction::new(matrices, &ring).map_err(BuildError::Domain)?;
                Ok(Built {
                    action: GroupAction::Finite(action),
                    literal_q: None,
                })
            }
            ActionSpec::Diagonal {
                torus_rank,
                cyclic_orders,
                weights,
                literal_q,
            } => {
                let rows = torus_rank + cyclic_orders.len();
                if weights.len() != rows {
                    return Err(InputError::new(
                        "action.weights",
                        format!(
                            "expected {rows} rows (torusRank + cyclicOrders), found {}",
                            weights.len()
                        ),
                    )
                    .into());
                }
                if let Some(i) = weights.iter().position(|row| row.len() != n) {
                    return Err(InputError::new(
                        format!("action.weights[{i}]"),
                        format!("expected {n} entries, one per variable"),
                    )
                    .into());
                }
                if let Some(i) = cyclic_orders.iter().position(|&d| d < 2) {
                    return Err(InputError::new(
                        format!("action.cyclicOrders[{i}]"),
                        "orders must be at least 2",
                    )
                    .into());
                }
                let action = DiagonalAction::new(&ring, *torus_rank, cyclic_orders.clone(), weights.clone())
                    .map_err(BuildError::Domain)?;
                Ok(Built {
                    action: GroupAction::Diagonal(action),
                    literal_q: *literal_q,
                })
            }
            ActionSpec::Reductive {
                group_variables,
                group_ideal,
                action_matrix,
            } => {
                let group_ring = PolynomialRing::grevlex(field, group_variables)
                    .map_err(|e| InputError::new("action.groupVariables", e.to_string()))?;
                let ideal = group_ideal
                    .iter()
                    .enumerate()
                    .map(|(i, t)| parse_in(t, &group_ring, format!("action.groupIdeal[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                check_square(action_matrix, n, "action.actionMatrix")?;
                let matrix = action_matrix
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, t)| parse_in(t, &group_ring, format!("action.actionMatrix[{i}][{j}]")))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let action = LinearlyReductiveAction::new(ideal, matrix, &group_ring, &ring)
                    .map_err(BuildError::Domain)?;
                Ok(Built {
                    action: GroupAction::Reductive(action),
                    literal_q: None,
                })
            }
        }
    }
}

fn check_square<T>(m: &[Vec<T>], n: usize, path: &str) -> Result<(), InputError> {
    if m.len() != n {
        return Err(InputError::new(
            path,
            format!("expected {n} rows, found {}", m.len()),
        ));
    }
    match m.iter().position(|row| row.len() != n) {
        Some(i) => Err(InputError::new(
            format!("{path}[{i}]"),
            format!("expected {n} entries, found {}", m[i].len()),
        )),
        None => Ok(()),
    }
}

fn parse_in(text: &str, ring: &Arc<PolynomialRing>, path: String) -> Result<Polynomial, InputError> {
    parse_polynomial(text, ring).map_err(|e| InputError::new(path, e.to_string()))
}
