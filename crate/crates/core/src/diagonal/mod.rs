//! Diagonal actions of a torus times a finite abelian group.
//!
//! The weight matrix has one row per group factor and one column per
//! variable: `r` torus rows followed by one row per cyclic factor `Z/d_i`.
//! A monomial `x^a` is invariant iff `W a` vanishes on the torus rows and is
//! divisible by `d_i` on the cyclic rows, so everything here is integer
//! arithmetic on exponent vectors.

pub mod monoid;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::prime_power;
use crate::monomial::Monomial;
use crate::polynomial::{same_ring, Polynomial};
use crate::ring::PolynomialRing;

pub use monoid::{abelian_generators, torus_hilbert_basis};

/// Largest finite abelian group handled by the zero-sum sieve.
pub const MAX_ABELIAN_ORDER: u64 = 1 << 22;

pub type MonomialSet = Vec<Monomial>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalAction {
    ring: Arc<PolynomialRing>,
    torus_rank: usize,
    cyclic_orders: Vec<u64>,
    weights: Vec<Vec<i64>>,
}

impl DiagonalAction {
    pub fn new(
        ring: &Arc<PolynomialRing>,
        torus_rank: usize,
        cyclic_orders: Vec<u64>,
        mut weights: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let n = ring.nvars();
        let rows = torus_rank + cyclic_orders.len();
        if weights.len() != rows {
            return Err(Error::DimensionMismatch(format!(
                "weights has {} rows, expected torus rank + cyclic factors = {rows}",
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|row| row.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "weights row {i} has {} entries, expected {n}",
                weights[i].len()
            )));
        }
        if let Some(&d) = cyclic_orders.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidAction(format!("cyclic order {d} is less than 2")));
        }
        for (row, &d) in weights[torus_rank..].iter_mut().zip(&cyclic_orders) {
            for w in row.iter_mut() {
                *w = w.rem_euclid(d as i64);
            }
        }
        Ok(DiagonalAction {
            ring: ring.clone(),
            torus_rank,
            cyclic_orders,
            weights,
        })
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ring
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    fn torus_rows(&self) -> &[Vec<i64>] {
        &self.weights[..self.torus_rank]
    }

    fn cyclic_rows(&self) -> &[Vec<i64>] {
        &self.weights[self.torus_rank..]
    }

    fn row_value(row: &[i64], a: &[u32]) -> i64 {
        row.iter().zip(a).map(|(&w, &e)| w * e as i64).sum()
    }

    pub fn is_invariant_exponent(&self, a: &[u32]) -> Result<bool> {
        if a.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "exponent vector of length {} for {} variables",
                a.len(),
                self.ring.nvars()
            )));
        }
        Ok(self.torus_rows().iter().all(|row| Self::row_value(row, a) == 0)
            && self
                .cyclic_rows()
                .iter()
                .zip(&self.cyclic_orders)
                .all(|(row, &d)| Self::row_value(row, a).rem_euclid(d as i64) == 0))
    }

    fn check_group_order(orders: &[u64]) -> Result<()> {
        let mut size: u64 = 1;
        for &d in orders {
            size = size.saturating_mul(d);
        }
        if size > MAX_ABELIAN_ORDER {
            return Err(Error::Unsupported(format!(
                "finite abelian part of order {size} exceeds {MAX_ABELIAN_ORDER}"
            )));
        }
        Ok(())
    }

    /// Minimal generating invariant monomials over an infinite field.
    pub fn invariants(&self) -> Result<MonomialSet> {
        let n = self.ring.nvars();
        let candidates: Vec<Monomial> = if self.cyclic_orders.is_empty() {
            (0..n).map(|j| Monomial::variable(n, j)).collect()
        } else {
            Self::check_group_order(&self.cyclic_orders)?;
            abelian_generators(&self.cyclic_orders, self.cyclic_rows())
        };
        if self.torus_rank == 0 {
            return Ok(candidates);
        }
        let vectors: Vec<Vec<i64>> = candidates
            .iter()
            .map(|m| {
                self.torus_rows()
                    .iter()
                    .map(|row| Self::row_value(row, m.exponents()))
                    .collect()
            })
            .collect();
        let products: Vec<Vec<u32>> = torus_hilbert_basis(&vectors)
            .into_iter()
            .map(|c| {
                let mut e = vec![0u32; n];
                for (&cj, m) in c.iter().zip(&candidates) {
                    for (ei, &mi) in e.iter_mut().zip(m.exponents()) {
                        *ei += cj * mi;
                    }
                }
                e
            })
            .collect();
        let mut out: Vec<Monomial> = monoid::minimal_vectors(products)
            .into_iter()
            .map(Monomial::new)
            .collect();
        monoid::sort_monomials(&mut out);
        Ok(out)
    }

    /// Minimal generating invariant monomials over `F_q` itself, where each
    /// torus factor acts through its `q - 1` points.
    pub fn invariants_literal(&self, q: u64) -> Result<MonomialSet> {
        if prime_power(q).is_none() {
            return Err(Error::InvalidRing(format!("{q} is not a prime power")));
        }
        if let Some(&d) = self.cyclic_orders.iter().find(|&&d| !(q - 1).is_multiple_of(d)) {
            return Err(Error::RootOfUnityUnavailable { order: d, q });
        }
        let mut moduli = vec![q - 1; self.torus_rank];
        moduli.extend(&self.cyclic_orders);
        Self::check_group_order(&moduli)?;
        Ok(abelian_generators(&moduli, &self.weights))
    }

    /// Projection onto the invariant terms.
    pub fn reynolds(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(f.filter_terms(|m| self.is_invariant_exponent(m.exponents()).unwrap_or(false)))
    }

    pub fn to_polynomials(&self, ms: &[Monomial]) -> Vec<Polynomial> {
        let one = self.ring.field().one();
        ms.iter()
            .map(|m| Polynomial::monomial(&self.ring, m.clone(), one.clone()))
            .collect()
    }
}
