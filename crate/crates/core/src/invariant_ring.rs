//! Rings of invariants: one container over the three kinds of action, with
//! presentations, Hilbert series numerators and a generator check.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::diagonal::DiagonalAction;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::finite::{sort_generators, FiniteGroupAction};
use crate::groebner::{basis_with, elimination_ideal_weighted, IncrementalBasis};
use crate::linalg::rank;
use crate::monomial::{exponents_of_degree, Monomial, TermOrder};
use crate::polynomial::{same_ring, Polynomial};
use crate::reductive::{minimal_homogeneous_generators, LinearlyReductiveAction};
use crate::ring::{fresh_names, PolynomialRing};
use crate::univariate::{RationalFunction, UniPoly};

#[derive(Debug, Clone)]
pub enum GroupAction {
    Finite(FiniteGroupAction),
    Diagonal(DiagonalAction),
    Reductive(LinearlyReductiveAction),
}

impl GroupAction {
    pub fn ring(&self) -> &Arc<PolynomialRing> {
        match self {
            GroupAction::Finite(a) => a.ring(),
            GroupAction::Diagonal(a) => a.ring(),
            GroupAction::Reductive(a) => a.ring(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FiniteAlgorithm {
    #[default]
    King,
    LinearAlgebra,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    King,
    LinearAlgebra,
    Diagonal,
    DiagonalLiteral(u64),
    Reductive,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::King => "king",
            Method::LinearAlgebra => "linearAlgebra",
            Method::Diagonal => "diagonal",
            Method::DiagonalLiteral(_) => "diagonalLiteral",
            Method::Reductive => "reductive",
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct InvariantOptions {
    pub algorithm: FiniteAlgorithm,
    /// Degree bound for finite actions.
    pub max_degree: Option<u32>,
    /// Compute diagonal invariants over `F_q` itself.
    pub literal_q: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct RingOfInvariants {
    action: GroupAction,
    generators: Vec<Polynomial>,
    method: Method,
}

/// Compute minimal generators with the algorithm suited to `action`.
pub fn invariant_ring(action: GroupAction, options: &InvariantOptions) -> Result<RingOfInvariants> {
    let (generators, method) = match &action {
        GroupAction::Finite(a) => match options.algorithm {
            FiniteAlgorithm::King => (a.invariants_king(options.max_degree)?, Method::King),
            FiniteAlgorithm::LinearAlgebra => (
                a.invariants_linear_algebra(options.max_degree)?,
                Method::LinearAlgebra,
            ),
        },
        GroupAction::Diagonal(a) => match options.literal_q {
            Some(q) => (
                a.to_polynomials(&a.invariants_literal(q)?),
                Method::DiagonalLiteral(q),
            ),
            None => (a.to_polynomials(&a.invariants()?), Method::Diagonal),
        },
        GroupAction::Reductive(a) => (a.invariants()?, Method::Reductive),
    };
    Ok(RingOfInvariants::new(action, generators, method))
}

/// One line of a generator check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCheck {
    pub degree: u32,
    /// Dimension of the degree-`d` invariants, computed independently.
    pub expected: usize,
    /// Dimension spanned by degree-`d` products of the generators.
    pub actual: usize,
    pub pass: bool,
}

impl RingOfInvariants {
    /// Wrap given generators; they are sorted but not checked.
    pub fn new(action: GroupAction, generators: Vec<Polynomial>, method: Method) -> Self {
        RingOfInvariants {
            action,
            generators: sort_generators(generators),
            method,
        }
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        self.action.ring()
    }

    /// Invariance test matching the action and, for diagonal actions, the
    /// field over which invariants were computed.
    pub fn is_invariant(&self, f: &Polynomial) -> Result<bool> {
        if !same_ring(f.ring(), self.ring()) {
            return Err(Error::RingMismatch);
        }
        match &self.action {
            GroupAction::Finite(a) => a.is_invariant(f),
            GroupAction::Diagonal(a) => {
                let literal = match self.method {
                    Method::DiagonalLiteral(q) => Some(literal_action(a, q)?),
                    _ => None,
                };
                for (m, _) in f.terms() {
                    let ok = match &literal {
                        Some(None) => true,
                        Some(Some(l)) => l.is_invariant_exponent(m.exponents())?,
                        None => a.is_invariant_exponent(m.exponents())?,
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            GroupAction::Reductive(a) => a.is_invariant(f),
        }
    }

    /// Minimal generators of the ideal of `R` generated by the non-constant
    /// homogeneous invariants. Reductive actions use the elimination
    /// construction; otherwise the invariant generators already span it.
    pub fn hilbert_ideal(&self) -> Result<Vec<Polynomial>> {
        match &self.action {
            GroupAction::Reductive(a) => a.hilbert_ideal(),
            _ => Ok(minimal_homogeneous_generators(
                self.ring(),
                self.generators.clone(),
            )),
        }
    }

    /// Relations among the generators: the kernel of `u_i -> f_i`, in a
    /// fresh ring `K[u_1..u_k]`.
    pub fn defining_ideal(&self) -> Result<(Arc<PolynomialRing>, Vec<Polynomial>)> {
        let ring = self.ring();
        let n = ring.nvars();
        let k = self.generators.len();
        let us = fresh_names("u", k, ring.variables());
        let target = PolynomialRing::grevlex(ring.field(), &us)?;
        if k == 0 {
            return Ok((target, Vec::new()));
        }
        let names: Vec<String> = ring.variables().iter().chain(&us).cloned().collect();
        let combined = PolynomialRing::grevlex(ring.field(), &names)?;
        let x_map: Vec<usize> = (0..n).collect();
        let gens: Vec<Polynomial> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, f)| &combined.var(n + i) - &f.embed(&combined, &x_map))
            .collect();
        let mut specialize = vec![Polynomial::zero(&target); n];
        specialize.extend(target.vars());
        let mut weights = vec![1u32; n];
        weights.extend(self.generators.iter().map(|f| f.degree().unwrap_or(0).max(1)));
        let molien = match &self.action {
            GroupAction::Finite(a) if ring.field().characteristic() == 0 => a.molien_series().ok(),
            _ => None,
        };
        if let Some(molien) = molien {
            let elim = PolynomialRing::new(ring.field(), &names, TermOrder::Elimination(n))?;
            let gens: Vec<Polynomial> = gens.iter().map(|g| g.reorder(&elim)).collect();
            let relations = relations_by_series(&gens, n, &weights, &specialize, &molien)?;
            return Ok((target, relations));
        }
        let relations = elimination_ideal_weighted(&gens, &x_map, &weights)?
            .into_iter()
            .map(|g| g.substitute(&specialize))
            .collect::<Result<Vec<_>>>()?;
        Ok((target, relations))
    }

    /// Numerator `N(T)` with Molien series `N(T) / prod (1 - T^d)` over the
    /// given degrees. Finite actions in characteristic zero only.
    pub fn hilbert_series_rewrite(&self, degrees: &[u32]) -> Result<UniPoly> {
        let GroupAction::Finite(a) = &self.action else {
            return Err(Error::Unsupported(
                "Hilbert series are available for finite actions only".into(),
            ));
        };
        let molien = a.molien_series()?;
        let mut numerator = molien.numerator().clone();
        for &d in degrees {
            if d == 0 {
                return Err(Error::InvalidAction("degrees must be positive".into()));
            }
            numerator = &numerator * &UniPoly::one_minus_power(d as usize);
        }
        numerator
            .exact_div(molien.denominator())
            .ok_or(Error::InexactDivision)
    }

    /// For each degree up to `max_degree`, compare the span of generator
    /// products with the invariant space computed without the generators.
    pub fn verify_generators(&self, max_degree: u32) -> Result<Vec<DegreeCheck>> {
        (1..=max_degree)
            .map(|d| {
                let expected = self.invariant_dimension(d)?;
                let actual = self.product_span_dimension(d);
                Ok(DegreeCheck {
                    degree: d,
                    expected,
                    actual,
                    pass: expected == actual,
                })
            })
            .collect()
    }

    fn invariant_dimension(&self, d: u32) -> Result<usize> {
        match &self.action {
            GroupAction::Finite(a) => Ok(a.invariant_space_basis(d)?.len()),
            GroupAction::Reductive(a) => Ok(a.invariant_basis(d)?.len()),
            GroupAction::Diagonal(a) => {
                let literal = match self.method {
                    Method::DiagonalLiteral(q) => Some(literal_action(a, q)?),
                    _ => None,
                };
                let n = a.ring().nvars();
                let mut count = 0;
                for e in exponents_of_degree(n, d) {
                    let ok = match &literal {
                        Some(None) => true,
                        Some(Some(l)) => l.is_invariant_exponent(&e)?,
                        None => a.is_invariant_exponent(&e)?,
                    };
                    count += ok as usize;
                }
                Ok(count)
            }
        }
    }

    /// Rank of all products of generators of total degree `d`.
    fn product_span_dimension(&self, d: u32) -> usize {
        let ring = self.ring();
        let field = ring.field();
        let degrees: Vec<u32> = self.generators.iter().map(|g| g.degree().unwrap_or(0)).collect();
        let mut products = Vec::new();
        let mut current = Polynomial::one(ring);
        collect_products(&self.generators, &degrees, 0, d, &mut current, &mut products);
        let basis = ring.monomial_basis(d);
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let rows: Vec<Vec<Scalar>> = products
            .iter()
            .map(|p| {
                let mut row = vec![field.zero(); basis.len()];
                for (m, c) in p.homogeneous_part(d).terms() {
                    row[index[m]] = c.clone();
                }
                row
            })
            .collect();
        rank(&rows, field)
    }
}

/// The action with torus factors replaced by their `F_q` points, `None` when
/// `q = 2` makes every monomial invariant.
/// Relations among weighted-homogeneous generators `u_i - f_i` (the `x`
/// variables first, in an elimination order), computed degree by degree
/// until the quotient by the relations found so far has the Hilbert series
/// `expected`. Falls back to a full computation when `expected` is never
/// reached, as happens for generators that miss some invariants.
fn relations_by_series(
    gens: &[Polynomial],
    n: usize,
    weights: &[u32],
    specialize: &[Polynomial],
    expected: &RationalFunction,
) -> Result<Vec<Polynomial>> {
    let target = specialize[n].ring().clone();
    let u_weights = &weights[n..];
    let denominator = u_weights.iter().fold(UniPoly::one(), |acc, &w| {
        &acc * &UniPoly::one_minus_power(w as usize)
    });
    let mut engine = IncrementalBasis::new(gens[0].ring()).with_weights(weights.to_vec());
    for g in gens {
        engine.add(g)?;
    }
    let x_free = |g: &Polynomial| {
        g.terms()
            .iter()
            .all(|(m, _)| m.exponents()[..n].iter().all(|&e| e == 0))
    };
    let mut d = u_weights.iter().copied().max().unwrap_or(1);
    loop {
        engine.complete_to(d)?;
        let found: Vec<Polynomial> = engine
            .elements()
            .iter()
            .filter(|g| x_free(g))
            .map(|g| g.substitute(specialize))
            .collect::<Result<_>>()?;
        let gb = basis_with(&target, &found, None, Some(u_weights))?;
        let leads: Vec<Monomial> = gb
            .elements()
            .iter()
            .filter_map(|g| g.lead_monomial().cloned())
            .collect();
        let quotient = RationalFunction::new(hilbert_numerator(&leads, u_weights), denominator.clone())?;
        if quotient.same_function(expected) {
            return Ok(gb.into_elements());
        }
        let mut len = 2 * d as usize + 2;
        let first = loop {
            let (a, b) = (quotient.series(len), expected.series(len));
            if let Some(k) = (0..=len).find(|&k| a[k] != b[k]) {
                break (k, a[k] < b[k]);
            }
            len *= 2;
        };
        match first {
            (k, false) if k as u32 > d => d = k as u32,
            _ => break,
        }
    }
    engine.complete();
    let found: Vec<Polynomial> = engine
        .elements()
        .iter()
        .filter(|g| x_free(g))
        .map(|g| g.substitute(specialize))
        .collect::<Result<_>>()?;
    Ok(basis_with(&target, &found, None, Some(u_weights))?.into_elements())
}

/// Numerator of the weighted Hilbert series of `K[u] / (monomials)`.
fn hilbert_numerator(monomials: &[Monomial], weights: &[u32]) -> UniPoly {
    let mut gens: Vec<Monomial> = Vec::new();
    for m in monomials {
        if !gens.iter().any(|g| g.divides(m)) {
            gens.retain(|g| !m.divides(g));
            gens.push(m.clone());
        }
    }
    let Some((last, rest)) = gens.split_last() else {
        return UniPoly::one();
    };
    let colon: Vec<Monomial> = rest
        .iter()
        .map(|m| {
            Monomial::new(
                m.exponents()
                    .iter()
                    .zip(last.exponents())
                    .map(|(a, b)| a.saturating_sub(*b))
                    .collect(),
            )
        })
        .collect();
    let degree: u32 = last.exponents().iter().zip(weights).map(|(e, w)| e * w).sum();
    let shifted = &UniPoly::monomial(num_rational::BigRational::from_integer(1.into()), degree as usize)
        * &hilbert_numerator(&colon, weights);
    &hilbert_numerator(rest, weights) - &shifted
}

fn literal_action(a: &DiagonalAction, q: u64) -> Result<Option<DiagonalAction>> {
    if a.torus_rank() > 0 && q == 2 {
        return Ok(None);
    }
    let mut orders = vec![q - 1; a.torus_rank()];
    orders.extend(a.cyclic_orders());
    if orders.is_empty() {
        return Ok(Some(a.clone()));
    }
    DiagonalAction::new(a.ring(), 0, orders, a.weights().to_vec()).map(Some)
}

fn collect_products(
    gens: &[Polynomial],
    degrees: &[u32],
    start: usize,
    remaining: u32,
    current: &mut Polynomial,
    out: &mut Vec<Polynomial>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for i in start..gens.len() {
        if degrees[i] == 0 || degrees[i] > remaining {
            continue;
        }
        let saved = current.clone();
        *current = &*current * &gens[i];
        collect_products(gens, degrees, i, remaining - degrees[i], current, out);
        *current = saved;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::finite::permutation_matrix;
    use crate::linalg::Matrix;
    use crate::parse::parse_polynomial;

    fn ring(names: &[&str]) -> Arc<PolynomialRing> {
        PolynomialRing::grevlex(Field::Rationals, names).unwrap()
    }

    fn a4() -> GroupAction {
        let r = ring(&["x_1", "x_2", "x_3", "x_4"]);
        let gens = vec![
            permutation_matrix("2314", Field::Rationals).unwrap(),
            permutation_matrix("2143", Field::Rationals).unwrap(),
        ];
        GroupAction::Finite(FiniteGroupAction::new(gens, &r).unwrap())
    }

    fn minus_identity() -> GroupAction {
        let r = ring(&["x", "y"]);
        let m = Matrix::from_ints(&[vec![-1, 0], vec![0, -1]], Field::Rationals).unwrap();
        GroupAction::Finite(FiniteGroupAction::new(vec![m], &r).unwrap())
    }

    fn trivial(n: usize) -> GroupAction {
        let names: Vec<String> = (1..=n).map(|i| format!("x_{i}")).collect();
        let r = PolynomialRing::grevlex(Field::Rationals, &names).unwrap();
        GroupAction::Finite(FiniteGroupAction::new(vec![], &r).unwrap())
    }

    #[test]
    fn dispatch_and_methods() {
        let king = invariant_ring(a4(), &InvariantOptions::default()).unwrap();
        assert_eq!(king.method(), Method::King);
        assert_eq!(king.generators().len(), 5);
        let linear = invariant_ring(
            a4(),
            &InvariantOptions {
                algorithm: FiniteAlgorithm::LinearAlgebra,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(linear.method().to_string(), "linearAlgebra");
        for g in king.generators() {
            assert!(king.is_invariant(g).unwrap());
        }
    }

    #[test]
    fn defining_ideal_examples() {
        let pm = invariant_ring(minus_identity(), &InvariantOptions::default()).unwrap();
        let (u, relations) = pm.defining_ideal().unwrap();
        assert_eq!(relations.len(), 1);
        // generators sorted as x^2, xy, y^2
        let expected = parse_polynomial("u_2^2-u_1*u_3", &u).unwrap();
        assert_eq!(relations[0].monic(), expected.monic());

        let r = ring(&["x", "y"]);
        let swap = FiniteGroupAction::new(
            vec![Matrix::from_ints(&[vec![0, 1], vec![1, 0]], Field::Rationals).unwrap()],
            &r,
        )
        .unwrap();
        let sym = invariant_ring(GroupAction::Finite(swap), &InvariantOptions::default()).unwrap();
        assert!(sym.defining_ideal().unwrap().1.is_empty());

        let single = RingOfInvariants::new(
            minus_identity(),
            vec![parse_polynomial("x^2", &r).unwrap()],
            Method::King,
        );
        assert!(single.defining_ideal().unwrap().1.is_empty());
    }

    #[test]
    fn hilbert_ideal_of_finite_action() {
        let a = invariant_ring(a4(), &InvariantOptions::default()).unwrap();
        let ideal = a.hilbert_ideal().unwrap();
        let degrees: Vec<u32> = ideal.iter().map(|g| g.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 2, 3, 4, 6]);
        let t = trivial(2);
        let r = t.ring().clone();
        let gens = ["x_1^2", "x_1^3+x_1^2*x_2"]
            .map(|g| parse_polynomial(g, &r).unwrap())
            .to_vec();
        let redundant = RingOfInvariants::new(t, gens, Method::King);
        assert_eq!(
            redundant.hilbert_ideal().unwrap(),
            vec![parse_polynomial("x_1^2", &r).unwrap()]
        );
    }

    #[test]
    fn incomplete_generators_fall_back() {
        let r = ring(&["x", "y"]);
        let gens = ["x^2", "y^2", "x^3*y+x*y^3"]
            .map(|g| parse_polynomial(g, &r).unwrap())
            .to_vec();
        let partial = RingOfInvariants::new(minus_identity(), gens, Method::King);
        let (u, relations) = partial.defining_ideal().unwrap();
        let expected = parse_polynomial("u_3^2-u_1^3*u_2-2*u_1^2*u_2^2-u_1*u_2^3", &u).unwrap();
        assert_eq!(relations.len(), 1);
        assert_eq!(relations[0].monic(), expected.monic());
    }

    #[test]
    fn monomial_quotient_numerators() {
        let m = |e: &[u32]| Monomial::new(e.to_vec());
        assert_eq!(hilbert_numerator(&[], &[1, 1]), UniPoly::one());
        // K[x, y] / (xy): 1 - T^2
        assert_eq!(
            hilbert_numerator(&[m(&[1, 1])], &[1, 1]),
            UniPoly::from_ints(&[1, 0, -1])
        );
        // K[x, y] / (x^2, xy) with deg y = 3
        assert_eq!(
            hilbert_numerator(&[m(&[2, 0]), m(&[1, 1]), m(&[2, 1])], &[1, 3]),
            UniPoly::from_ints(&[1, 0, -1, 0, -1, 1])
        );
    }

    #[test]
    fn defining_ideal_relations_vanish() {
        let a = invariant_ring(a4(), &InvariantOptions::default()).unwrap();
        let (_, relations) = a.defining_ideal().unwrap();
        assert!(!relations.is_empty());
        for rel in relations {
            assert!(rel.substitute(a.generators()).unwrap().is_zero());
        }
    }

    #[test]
    fn hilbert_series_examples() {
        let a = invariant_ring(a4(), &InvariantOptions::default()).unwrap();
        assert_eq!(
            a.hilbert_series_rewrite(&[1, 2, 3, 4]).unwrap(),
            UniPoly::from_ints(&[1, 0, 0, 0, 0, 0, 1])
        );
        assert_eq!(a.hilbert_series_rewrite(&[]), Err(Error::InexactDivision));
        assert_eq!(a.hilbert_series_rewrite(&[1, 2, 3]), Err(Error::InexactDivision));
        let t = invariant_ring(trivial(1), &InvariantOptions::default()).unwrap();
        assert_eq!(t.hilbert_series_rewrite(&[1]).unwrap(), UniPoly::one());
        let pm = invariant_ring(minus_identity(), &InvariantOptions::default()).unwrap();
        assert_eq!(
            pm.hilbert_series_rewrite(&[2, 2]).unwrap(),
            UniPoly::from_ints(&[1, 0, 1])
        );
    }

    #[test]
    fn trivial_molien_denominator_one_case() {
        let t = RingOfInvariants::new(trivial(0), vec![], Method::King);
        assert_eq!(t.hilbert_series_rewrite(&[]).unwrap(), UniPoly::one());
    }

    #[test]
    fn verify_a4() {
        let a = invariant_ring(a4(), &InvariantOptions::default()).unwrap();
        let report = a.verify_generators(6).unwrap();
        let expected: Vec<usize> = report.iter().map(|c| c.expected).collect();
        assert_eq!(expected, vec![1, 2, 3, 5, 6, 10]);
        assert!(report.iter().all(|c| c.pass));

        let mut gens = a.generators().to_vec();
        let removed = gens.pop().unwrap();
        assert_eq!(removed.degree(), Some(6));
        let broken = RingOfInvariants::new(a4(), gens, Method::King);
        let report = broken.verify_generators(6).unwrap();
        let failing: Vec<u32> = report.iter().filter(|c| !c.pass).map(|c| c.degree).collect();
        assert_eq!(failing, vec![6]);
    }

    #[test]
    fn verify_trivial_and_diagonal() {
        let t = invariant_ring(trivial(3), &InvariantOptions::default()).unwrap();
        assert!(t.verify_generators(4).unwrap().iter().all(|c| c.pass));
        let r = ring(&["x_1", "x_2", "x_3", "x_4"]);
        let torus = DiagonalAction::new(
            &r,
            3,
            vec![],
            vec![vec![5, -3, -1, 4], vec![-3, 1, 1, 5], vec![0, -4, 2, 6]],
        )
        .unwrap();
        let d = invariant_ring(GroupAction::Diagonal(torus.clone()), &InvariantOptions::default()).unwrap();
        assert_eq!(d.generators().len(), 1);
        assert!(d.verify_generators(8).unwrap().iter().all(|c| c.pass));
        let lit = invariant_ring(
            GroupAction::Diagonal(torus),
            &InvariantOptions {
                literal_q: Some(9),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(lit.method(), Method::DiagonalLiteral(9));
        assert_eq!(lit.generators().len(), 10);
        assert!(lit.verify_generators(8).unwrap().iter().all(|c| c.pass));
        for g in lit.generators() {
            assert!(lit.is_invariant(g).unwrap());
        }
    }

    #[test]
    fn series_only_for_finite_actions() {
        let r = ring(&["x", "y"]);
        let d = DiagonalAction::new(&r, 1, vec![], vec![vec![1, -1]]).unwrap();
        let ri = invariant_ring(GroupAction::Diagonal(d), &InvariantOptions::default()).unwrap();
        assert!(matches!(
            ri.hilbert_series_rewrite(&[2]),
            Err(Error::Unsupported(_))
        ));
    }
}
