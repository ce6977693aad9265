use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{exponents_of_degree, Monomial, TermOrder};
use crate::polynomial::Polynomial;

/// `K[x_1, ..., x_n]` with a fixed term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolynomialRing {
    field: Field,
    variables: Vec<String>,
    order: TermOrder,
}

/// Identifier grammar: a letter followed by letters, digits or underscores.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolynomialRing {
    pub fn new<S: AsRef<str>>(field: Field, variables: &[S], order: TermOrder) -> Result<Arc<Self>> {
        let variables: Vec<String> = variables.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in &variables {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let TermOrder::Elimination(k) = order {
            if k > variables.len() {
                return Err(Error::InvalidRing(format!(
                    "elimination block of {k} variables exceeds {} variables",
                    variables.len()
                )));
            }
        }
        Ok(Arc::new(PolynomialRing {
            field,
            variables,
            order,
        }))
    }

    /// Graded reverse lex ring, the default.
    pub fn grevlex<S: AsRef<str>>(field: Field, variables: &[S]) -> Result<Arc<Self>> {
        Self::new(field, variables, TermOrder::GRevLex)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: TermOrder) -> Arc<Self> {
        Arc::new(PolynomialRing {
            field: self.field,
            variables: self.variables.clone(),
            order,
        })
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial {
        Polynomial::monomial(self, Monomial::variable(self.nvars(), i), self.field.one())
    }

    pub fn vars(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    /// Monomials of total degree `d`, descending in the ring's term order.
    pub fn monomial_basis(&self, d: u32) -> Vec<Monomial> {
        let mut basis: Vec<Monomial> = exponents_of_degree(self.nvars(), d)
            .into_iter()
            .map(Monomial::new)
            .collect();
        basis.sort_by(|a, b| self.order.compare(b, a));
        basis
    }
}

/// `count` names `{prefix}_{i}` (1-based) that avoid every name in `taken`.
pub(crate) fn fresh_names(prefix: &str, count: usize, taken: &[String]) -> Vec<String> {
    let mut prefix = prefix.to_string();
    loop {
        let names: Vec<String> = (1..=count).map(|i| format!("{prefix}_{i}")).collect();
        if names.iter().all(|n| !taken.contains(n)) {
            return names;
        }
        prefix.push(prefix.chars().next().unwrap_or('t'));
    }
}
