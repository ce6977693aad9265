//! Linearly reductive groups given by equations.
//!
//! The group is the zero set of `group_ideal` in `K^m`, with coordinates the
//! variables `z` of `group_ring`. Column `j` of the action matrix is the
//! image of `x_j`: the group element `z` acts by
//! `x_j -> sum_i A[i][j](z) x_i`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::finite::sort_generators;
use crate::groebner::{basis_in, elimination_ideal, normal_form, GroebnerBasis, IncrementalBasis};
use crate::linalg::nullspace;
use crate::monomial::{Monomial, TermOrder};
use crate::polynomial::{same_ring, Polynomial};
use crate::ring::{fresh_names, PolynomialRing};

#[derive(Debug, Clone)]
pub struct LinearlyReductiveAction {
    group_ring: Arc<PolynomialRing>,
    group_ideal: Vec<Polynomial>,
    action_matrix: Vec<Vec<Polynomial>>,
    ring: Arc<PolynomialRing>,
    group_basis: Option<GroebnerBasis>,
}

impl LinearlyReductiveAction {
    pub fn new(
        group_ideal: Vec<Polynomial>,
        action_matrix: Vec<Vec<Polynomial>>,
        group_ring: &Arc<PolynomialRing>,
        ring: &Arc<PolynomialRing>,
    ) -> Result<Self> {
        if group_ring.field() != Field::Rationals || ring.field() != Field::Rationals {
            return Err(Error::NonZeroCharacteristic);
        }
        let n = ring.nvars();
        if action_matrix.len() != n || action_matrix.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch(format!("action matrix must be {n}x{n}")));
        }
        if group_ideal
            .iter()
            .chain(action_matrix.iter().flatten())
            .any(|p| !same_ring(p.ring(), group_ring))
        {
            return Err(Error::RingMismatch);
        }
        if group_ideal.iter().any(|g| g.is_zero()) {
            return Err(Error::InvalidAction("zero generator in the group ideal".into()));
        }
        if let Some(name) = ring
            .variables()
            .iter()
            .find(|v| group_ring.variables().contains(v))
        {
            return Err(Error::InvalidRing(format!(
                "variable {name} appears in both the group ring and the target ring"
            )));
        }
        let group_basis = if group_ideal.is_empty() {
            None
        } else {
            Some(basis_in(group_ring, &group_ideal, None)?)
        };
        Ok(LinearlyReductiveAction {
            group_ring: group_ring.clone(),
            group_ideal,
            action_matrix,
            ring: ring.clone(),
            group_basis,
        })
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ring
    }

    pub fn group_ring(&self) -> &Arc<PolynomialRing> {
        &self.group_ring
    }

    pub fn group_ideal(&self) -> &[Polynomial] {
        &self.group_ideal
    }

    pub fn action_matrix(&self) -> &[Vec<Polynomial>] {
        &self.action_matrix
    }

    /// `Q[z, x, extra]` with `z` first.
    fn combined_ring(&self, extra: &[String], order: TermOrder) -> Result<Arc<PolynomialRing>> {
        let names: Vec<String> = self
            .group_ring
            .variables()
            .iter()
            .chain(self.ring.variables())
            .chain(extra)
            .cloned()
            .collect();
        PolynomialRing::new(Field::Rationals, &names, order)
    }

    /// Images `sum_i A[i][j](z) x_i` of the variables, in `combined`.
    fn images(&self, combined: &Arc<PolynomialRing>) -> Vec<Polynomial> {
        let m = self.group_ring.nvars();
        let n = self.ring.nvars();
        let z_map: Vec<usize> = (0..m).collect();
        (0..n)
            .map(|j| {
                let mut acc = Polynomial::zero(combined);
                for i in 0..n {
                    let entry = self.action_matrix[i][j].embed(combined, &z_map);
                    acc = &acc + &(&entry * &combined.var(m + i));
                }
                acc
            })
            .collect()
    }

    /// Generators of the ideal of `K[x]` spanned by all homogeneous
    /// invariants of positive degree, minimal and sorted. They need not be
    /// invariant themselves.
    pub fn hilbert_ideal(&self) -> Result<Vec<Polynomial>> {
        let m = self.group_ring.nvars();
        let n = self.ring.nvars();
        let taken: Vec<String> = self
            .group_ring
            .variables()
            .iter()
            .chain(self.ring.variables())
            .cloned()
            .collect();
        let ys = fresh_names("y", n, &taken);
        let combined = self.combined_ring(&ys, TermOrder::GRevLex)?;
        let z_map: Vec<usize> = (0..m).collect();
        let mut gens: Vec<Polynomial> = self
            .group_ideal
            .iter()
            .map(|g| g.embed(&combined, &z_map))
            .collect();
        for (j, image) in self.images(&combined).into_iter().enumerate() {
            gens.push(&combined.var(m + n + j) - &image);
        }
        let eliminated = elimination_ideal(&gens, &(0..m).collect::<Vec<_>>())?;
        // z -> 0 is harmless (no z left), x -> x, y -> 0
        let mut specialize = vec![Polynomial::zero(&self.ring); m];
        specialize.extend(self.ring.vars());
        specialize.extend(vec![Polynomial::zero(&self.ring); n]);
        let mut candidates = Vec::new();
        for g in eliminated {
            let h = g.substitute(&specialize)?;
            if h.is_zero() {
                continue;
            }
            if !h.is_homogeneous() {
                return Err(Error::NonHomogeneousResult(h.to_string()));
            }
            candidates.push(h);
        }
        Ok(minimal_homogeneous_generators(&self.ring, candidates))
    }

    /// `f(A^T(z) x) - f(x)` modulo the group ideal, as coefficients indexed
    /// by (x-monomial, standard z-monomial).
    fn reduced_difference(&self, f: &Polynomial) -> Result<Vec<((Monomial, Monomial), Scalar)>> {
        let m = self.group_ring.nvars();
        let n = self.ring.nvars();
        let combined = self.combined_ring(&[], TermOrder::GRevLex)?;
        let mut substitution = vec![Polynomial::zero(&combined); m];
        substitution.extend(self.images(&combined));
        let x_map: Vec<usize> = (m..m + n).collect();
        let lifted = f.embed(&combined, &x_map);
        let diff = &lifted.substitute(&substitution)? - &lifted;
        let mut by_x: BTreeMap<Monomial, Vec<(Monomial, Scalar)>> = BTreeMap::new();
        for (mono, c) in diff.terms() {
            let e = mono.exponents();
            by_x.entry(Monomial::new(e[m..].to_vec()))
                .or_default()
                .push((Monomial::new(e[..m].to_vec()), c.clone()));
        }
        let mut out = Vec::new();
        for (xm, zterms) in by_x {
            let zpoly = Polynomial::from_terms(&self.group_ring, zterms)?;
            let reduced = match &self.group_basis {
                Some(gb) => normal_form(&zpoly, gb)?,
                None => zpoly,
            };
            out.extend(
                reduced
                    .into_terms()
                    .into_iter()
                    .map(|(zm, c)| ((xm.clone(), zm), c)),
            );
        }
        Ok(out)
    }

    /// Basis of the degree-`d` invariants, in reduced echelon form over the
    /// descending monomial basis.
    pub fn invariant_basis(&self, d: u32) -> Result<Vec<Polynomial>> {
        let basis = self.ring.monomial_basis(d);
        let one = self.ring.field().one();
        let mut equations: BTreeMap<(Monomial, Monomial), Vec<Scalar>> = BTreeMap::new();
        for (k, mono) in basis.iter().enumerate() {
            let f = Polynomial::monomial(&self.ring, mono.clone(), one.clone());
            for (key, c) in self.reduced_difference(&f)? {
                equations
                    .entry(key)
                    .or_insert_with(|| vec![Scalar::zero(); basis.len()])[k] = c;
            }
        }
        let rows: Vec<Vec<Scalar>> = equations.into_values().collect();
        Ok(nullspace(&rows, basis.len(), Field::Rationals)
            .into_iter()
            .map(|v| {
                let terms = basis
                    .iter()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(mono, c)| (mono.clone(), c))
                    .collect();
                Polynomial::from_terms(&self.ring, terms).expect("rational coefficients")
            })
            .collect())
    }

    /// Whether `f(A^T(z) x) - f(x)` lies in the group ideal.
    pub fn is_invariant(&self, f: &Polynomial) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.reduced_difference(f)?.is_empty())
    }

    /// Minimal homogeneous invariant generators of the invariant ring.
    pub fn invariants(&self) -> Result<Vec<Polynomial>> {
        let hilbert = self.hilbert_ideal()?;
        let top = hilbert.iter().filter_map(|h| h.degree()).max().unwrap_or(0);
        let mut gb = IncrementalBasis::new(&self.ring);
        let mut found = Vec::new();
        let covers = |gb: &IncrementalBasis| -> Result<bool> {
            let mut probe = gb.clone();
            probe.complete_to(top)?;
            Ok(hilbert.iter().all(|h| probe.reduces_to_zero(h)))
        };
        for d in 1..=top {
            if covers(&gb)? {
                break;
            }
            gb.complete_to(d)?;
            for candidate in self.invariant_basis(d)? {
                if gb.reduces_to_zero(&candidate) {
                    continue;
                }
                gb.add(&candidate)?;
                gb.complete_to(d)?;
                found.push(candidate.monic());
            }
        }
        if !covers(&gb)? {
            return Err(Error::IncompleteGeneration(top));
        }
        Ok(sort_generators(found))
    }
}

/// A minimal generating set of the ideal of homogeneous `gens`: ascending
/// degree, keeping those not already in the ideal of the kept ones.
pub(crate) fn minimal_homogeneous_generators(
    ring: &Arc<PolynomialRing>,
    gens: Vec<Polynomial>,
) -> Vec<Polynomial> {
    let gens = sort_generators(gens.into_iter().map(|g| g.monic()).collect());
    let mut gb = IncrementalBasis::new(ring);
    let mut kept = Vec::new();
    for g in gens {
        let d = g.degree().unwrap_or(0);
        gb.complete_to(d).expect("homogeneous generators");
        if gb.reduces_to_zero(&g) {
            continue;
        }
        gb.add(&g).expect("same ring");
        kept.push(g);
    }
    kept
}
