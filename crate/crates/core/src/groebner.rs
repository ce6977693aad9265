//! Multivariate division, Buchberger's algorithm with optional degree
//! truncation for homogeneous input, and elimination ideals.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::monomial::{Monomial, TermOrder};
use crate::polynomial::{same_ring, Polynomial, Term};
use crate::ring::PolynomialRing;

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Arc<PolynomialRing>,
    elements: Vec<Polynomial>,
    truncation: Option<u32>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial> {
        self.elements
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Is `m` in the ideal generated by the lead monomials?
    pub fn lead_ideal_contains(&self, m: &Monomial) -> bool {
        self.elements
            .iter()
            .any(|g| g.lead_monomial().is_some_and(|l| l.divides(m)))
    }

    /// Ideal membership (exact for full bases; for a truncated basis exact
    /// for homogeneous `f` of degree at most the truncation degree).
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(normal_form(f, self)?.is_zero())
    }
}

/// Remainder of `f` on division by `gb`, reducing the leftmost reducible
/// term first and trying divisors in list order.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if f.ring().order() != gb.order() {
        return Err(Error::OrderMismatch);
    }
    if !same_ring(f.ring(), &gb.ring) {
        return Err(Error::RingMismatch);
    }
    Ok(divide(f, &gb.elements))
}

fn divide(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let field = ring.field();
    let order = ring.order();
    let mut h: Vec<Term> = f.terms().to_vec();
    let mut rem: Vec<Term> = Vec::new();
    while let Some((m, c)) = h.first().cloned() {
        match divisors
            .iter()
            .find(|g| g.lead_monomial().is_some_and(|l| l.divides(&m)))
        {
            Some(g) => {
                let (lm, lc) = g.lead_term().unwrap();
                let factor = field.div(&c, lc).unwrap();
                let shift = lm.quotient_of(&m);
                h = axpy(
                    &h[1..],
                    &Scalar::one(),
                    &factor,
                    &shift,
                    &g.terms()[1..],
                    order,
                    field,
                );
            }
            None => {
                rem.push((m, c));
                h.remove(0);
            }
        }
    }
    Polynomial::from_sorted(&ring, rem)
}

/// `a * h - c * shift * g`, both inputs sorted descending.
fn axpy(
    h: &[Term],
    a: &Scalar,
    c: &Scalar,
    shift: &Monomial,
    g: &[Term],
    order: TermOrder,
    field: Field,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(h.len() + g.len());
    let scale_h = |t: &Term| {
        if a.is_one() {
            t.clone()
        } else {
            (t.0.clone(), field.mul(&t.1, a))
        }
    };
    let mut i = 0;
    let mut j = 0;
    let mut gj: Option<Term> = None;
    loop {
        if gj.is_none() && j < g.len() {
            let (gm, gc) = &g[j];
            gj = Some((gm.mul(shift), field.neg(&field.mul(gc, c))));
            j += 1;
        }
        match (h.get(i), gj.as_ref()) {
            (None, None) => break,
            (Some(t), None) => {
                out.push(scale_h(t));
                i += 1;
            }
            (None, Some(_)) => out.push(gj.take().unwrap()),
            (Some(t), Some(s)) => match order.compare(&t.0, &s.0) {
                Ordering::Greater => {
                    out.push(scale_h(t));
                    i += 1;
                }
                Ordering::Less => out.push(gj.take().unwrap()),
                Ordering::Equal => {
                    let v = field.add(&scale_h(t).1, &s.1);
                    if !v.is_zero() {
                        out.push((t.0.clone(), v));
                    }
                    i += 1;
                    gj = None;
                }
            },
        }
    }
    out
}

/// Divide integer coefficients of `parts` by their common content.
fn remove_content(parts: &mut [&mut Vec<Term>]) {
    let mut g = BigInt::zero();
    for part in parts.iter() {
        for (_, c) in part.iter() {
            g = g.gcd(c.numer());
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    let g = BigRational::from_integer(g);
    for part in parts.iter_mut() {
        for (_, c) in part.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// A scalar multiple of the normal form, computed without fractions over
/// `Q` (inputs and divisors must have integer coefficients). Over a prime
/// field this is the plain remainder.
fn reduce_scaled(f: Vec<Term>, divisors: &[Polynomial], order: TermOrder, field: Field) -> Vec<Term> {
    let fraction_free = field == Field::Rationals;
    let mut h = f;
    let mut rem: Vec<Term> = Vec::new();
    let mut steps = 0usize;
    while let Some((m, c)) = h.first().cloned() {
        let divisor = divisors
            .iter()
            .find(|g| g.lead_monomial().is_some_and(|l| l.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.lead_term().unwrap();
                let shift = lm.quotient_of(&m);
                let (a, c) = if fraction_free {
                    let gamma = BigRational::from_integer(lc.numer().gcd(c.numer()));
                    (lc / &gamma, c / &gamma)
                } else {
                    (Scalar::one(), field.div(&c, lc).unwrap())
                };
                if !a.is_one() {
                    for t in rem.iter_mut() {
                        t.1 = &t.1 * &a;
                    }
                }
                h = axpy(&h[1..], &a, &c, &shift, &g.terms()[1..], order, field);
                steps += 1;
                if fraction_free && steps.is_multiple_of(8) {
                    remove_content(&mut [&mut h, &mut rem]);
                }
            }
            None => {
                rem.push((m, c));
                h.remove(0);
            }
        }
    }
    rem
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
}

/// Buchberger state that can be resumed: new generators may be added and
/// the degree bound raised. Elements are kept primitive (over `Q`) or monic.
#[derive(Debug, Clone)]
pub struct IncrementalBasis {
    ring: Arc<PolynomialRing>,
    basis: Vec<Polynomial>,
    /// Per-variable weights for the sugar degree; standard degree if `None`.
    weights: Option<Vec<u32>>,
    sugar: Vec<u32>,
    pairs: Vec<Pair>,
    pending: HashSet<(usize, usize)>,
    homogeneous: bool,
    completed_to: Option<u32>,
}

impl IncrementalBasis {
    pub fn new(ring: &Arc<PolynomialRing>) -> Self {
        IncrementalBasis {
            ring: ring.clone(),
            basis: Vec::new(),
            weights: None,
            sugar: Vec::new(),
            pairs: Vec::new(),
            pending: HashSet::new(),
            homogeneous: true,
            completed_to: None,
        }
    }

    /// Select pairs by weighted sugar degree. Weighted-homogeneous input is
    /// then processed degree by degree, as homogeneous input is by default.
    pub fn with_weights(mut self, weights: Vec<u32>) -> Self {
        assert_eq!(weights.len(), self.ring.nvars());
        assert!(
            self.basis.is_empty(),
            "weights must be set before adding generators"
        );
        self.weights = Some(weights);
        self
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.basis
    }

    fn weighted_degree(&self, m: &Monomial) -> u32 {
        match &self.weights {
            Some(w) => m.exponents().iter().zip(w).map(|(e, w)| e * w).sum(),
            None => m.degree(),
        }
    }

    /// Add a generator. Pairs it creates are processed by the next
    /// [`complete_to`](Self::complete_to) or [`complete`](Self::complete).
    pub fn add(&mut self, f: &Polynomial) -> Result<()> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(());
        }
        self.homogeneous &= match &self.weights {
            Some(_) => {
                let first = self.weighted_degree(&f.terms()[0].0);
                f.terms().iter().all(|(m, _)| self.weighted_degree(m) == first)
            }
            None => f.is_homogeneous(),
        };
        let f = if f.ring().order() == self.ring.order() {
            f.primitive()
        } else {
            f.reorder(&self.ring).primitive()
        };
        let sugar = f
            .terms()
            .iter()
            .map(|(m, _)| self.weighted_degree(m))
            .max()
            .unwrap_or(0);
        self.push(f, sugar);
        Ok(())
    }

    fn push(&mut self, f: Polynomial, sugar: u32) {
        let new = self.basis.len();
        let lm = f.lead_monomial().unwrap().clone();
        let lm_degree = self.weighted_degree(&lm);
        for (i, g) in self.basis.iter().enumerate() {
            let gm = g.lead_monomial().unwrap();
            let lcm = gm.lcm(&lm);
            let l = self.weighted_degree(&lcm);
            let degree = (self.sugar[i] + l - self.weighted_degree(gm)).max(sugar + l - lm_degree);
            self.pairs.push(Pair {
                i,
                j: new,
                lcm,
                degree,
            });
            self.pending.insert((i, new));
        }
        self.basis.push(f);
        self.sugar.push(sugar);
    }

    fn select(&self, limit: Option<u32>) -> Option<usize> {
        let order = self.ring.order();
        let mut best: Option<usize> = None;
        for (k, p) in self.pairs.iter().enumerate() {
            if limit.is_some_and(|d| p.degree > d) {
                continue;
            }
            best = match best {
                None => Some(k),
                Some(b) => {
                    let q = &self.pairs[b];
                    let cmp = p
                        .degree
                        .cmp(&q.degree)
                        .then_with(|| order.compare(&p.lcm, &q.lcm))
                        .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)));
                    if cmp == Ordering::Less {
                        Some(k)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best
    }

    fn key(a: usize, b: usize) -> (usize, usize) {
        (a.min(b), a.max(b))
    }

    fn chain_criterion(&self, p: &Pair) -> bool {
        self.basis.iter().enumerate().any(|(k, g)| {
            k != p.i
                && k != p.j
                && g.lead_monomial().unwrap().divides(&p.lcm)
                && !self.pending.contains(&Self::key(p.i, k))
                && !self.pending.contains(&Self::key(p.j, k))
        })
    }

    fn spoly(&self, p: &Pair) -> Vec<Term> {
        let field = self.ring.field();
        let order = self.ring.order();
        let f = &self.basis[p.i];
        let g = &self.basis[p.j];
        let (fm, fc) = f.lead_term().unwrap();
        let (gm, gc) = g.lead_term().unwrap();
        let (a, c) = if field == Field::Rationals {
            let gamma = BigRational::from_integer(fc.numer().gcd(gc.numer()));
            (gc / &gamma, fc / &gamma)
        } else {
            (gc.clone(), fc.clone())
        };
        // a * (lcm/fm) * f - c * (lcm/gm) * g
        let f_shift = fm.quotient_of(&p.lcm);
        let g_shift = gm.quotient_of(&p.lcm);
        let scaled_f: Vec<Term> = f.terms()[1..]
            .iter()
            .map(|(m, k)| (m.mul(&f_shift), k.clone()))
            .collect();
        axpy(&scaled_f, &a, &c, &g_shift, &g.terms()[1..], order, field)
    }

    fn run(&mut self, limit: Option<u32>) {
        let field = self.ring.field();
        let order = self.ring.order();
        while let Some(k) = self.select(limit) {
            let pair = self.pairs.swap_remove(k);
            self.pending.remove(&(pair.i, pair.j));
            let (fm, gm) = (
                self.basis[pair.i].lead_monomial().unwrap(),
                self.basis[pair.j].lead_monomial().unwrap(),
            );
            if fm.is_coprime(gm) || self.chain_criterion(&pair) {
                continue;
            }
            let s = self.spoly(&pair);
            let r = reduce_scaled(s, &self.basis, order, field);
            if !r.is_empty() {
                let h = Polynomial::from_sorted(&self.ring, r).primitive();
                self.push(h, pair.degree);
            }
        }
    }

    /// Process every pair of degree at most `d`. Requires homogeneous
    /// generators (for the weights, when given).
    pub fn complete_to(&mut self, d: u32) -> Result<()> {
        if !self.homogeneous {
            return Err(Error::InhomogeneousTruncation);
        }
        self.run(Some(d));
        self.completed_to = Some(self.completed_to.map_or(d, |c| c.max(d)));
        Ok(())
    }

    /// Process every pair.
    pub fn complete(&mut self) {
        self.run(None);
        self.completed_to = None;
    }

    pub fn lead_ideal_contains(&self, m: &Monomial) -> bool {
        self.basis
            .iter()
            .any(|g| g.lead_monomial().is_some_and(|l| l.divides(m)))
    }

    /// Whether `f` reduces to zero modulo the current elements.
    pub fn reduces_to_zero(&self, f: &Polynomial) -> bool {
        let f = f.reorder(&self.ring).primitive();
        reduce_scaled(f.into_terms(), &self.basis, self.ring.order(), self.ring.field()).is_empty()
    }

    /// Exact remainder of `f` modulo the current elements.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        divide(&f.reorder(&self.ring), &self.basis)
    }

    /// Reduced basis of the current elements (monic, sorted by descending
    /// lead monomial).
    pub fn reduced(&self) -> GroebnerBasis {
        GroebnerBasis {
            ring: self.ring.clone(),
            elements: interreduce(&self.basis),
            truncation: self.completed_to,
            reduced: true,
        }
    }
}

fn interreduce(basis: &[Polynomial]) -> Vec<Polynomial> {
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let order = ring.order();
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = g.lead_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let hl = h.lead_monomial().unwrap();
            j != k && hl.divides(lm) && (hl != lm || j < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, p)| p.clone())
                .collect();
            let g = &minimal[k];
            let (lm, lc) = g.lead_term().unwrap().clone();
            let tail = divide(&Polynomial::from_sorted(&ring, g.terms()[1..].to_vec()), &others);
            let mut terms = vec![(lm, lc)];
            terms.extend(tail.into_terms());
            let p = Polynomial::from_sorted(&ring, terms);
            p.monic()
        })
        .collect();
    reduced.sort_by(|a, b| order.compare(b.lead_monomial().unwrap(), a.lead_monomial().unwrap()));
    reduced
}

/// Reduced Gröbner basis of `generators` under `order`, or the reduced
/// `d`-truncated basis when `truncation = Some(d)`.
pub fn buchberger(
    generators: &[Polynomial],
    order: TermOrder,
    truncation: Option<u32>,
) -> Result<GroebnerBasis> {
    let Some(first) = generators.first() else {
        return Err(Error::InvalidRing(
            "a Gröbner basis needs at least one generator to fix the ring".into(),
        ));
    };
    let base = first.ring().clone();
    if generators.iter().any(|g| !same_ring(g.ring(), &base)) {
        return Err(Error::RingMismatch);
    }
    let ring = if base.order() == order {
        base
    } else {
        base.with_order(order)
    };
    basis_in(&ring, generators, truncation)
}

/// Like [`buchberger`] but with the ring (and so the order) given
/// explicitly, which also allows an empty generator list.
pub fn basis_in(
    ring: &Arc<PolynomialRing>,
    generators: &[Polynomial],
    truncation: Option<u32>,
) -> Result<GroebnerBasis> {
    basis_with(ring, generators, truncation, None)
}

pub(crate) fn basis_with(
    ring: &Arc<PolynomialRing>,
    generators: &[Polynomial],
    truncation: Option<u32>,
    weights: Option<&[u32]>,
) -> Result<GroebnerBasis> {
    if truncation.is_some() && weights.is_none() && generators.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::InhomogeneousTruncation);
    }
    let mut engine = IncrementalBasis::new(ring);
    if let Some(w) = weights {
        engine = engine.with_weights(w.to_vec());
    }
    for g in generators {
        if g.ring().variables() != ring.variables() || g.field() != ring.field() {
            return Err(Error::RingMismatch);
        }
        let g = g.reorder(ring);
        engine.add(&g)?;
    }
    match truncation {
        Some(d) => engine.complete_to(d)?,
        None => engine.complete(),
    }
    let mut gb = engine.reduced();
    if let Some(d) = truncation {
        gb.elements.retain(|g| g.degree().is_some_and(|e| e <= d));
    }
    Ok(gb)
}

/// Generators of `ideal(generators) ∩ K[remaining variables]`, expressed in
/// the input ring.
pub fn elimination_ideal(generators: &[Polynomial], eliminate: &[usize]) -> Result<Vec<Polynomial>> {
    eliminate_with(generators, eliminate, None)
}

/// [`elimination_ideal`] with pairs selected by the weighted degree given
/// by `weights` (one per variable of the input ring), which is much faster
/// when the generators are homogeneous for those weights.
pub fn elimination_ideal_weighted(
    generators: &[Polynomial],
    eliminate: &[usize],
    weights: &[u32],
) -> Result<Vec<Polynomial>> {
    eliminate_with(generators, eliminate, Some(weights))
}

fn eliminate_with(
    generators: &[Polynomial],
    eliminate: &[usize],
    weights: Option<&[u32]>,
) -> Result<Vec<Polynomial>> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let n = ring.nvars();
    let mut elim: Vec<usize> = eliminate.to_vec();
    elim.sort_unstable();
    elim.dedup();
    if elim.iter().any(|&i| i >= n) {
        return Err(Error::DimensionMismatch("variable index out of range".into()));
    }
    let keep: Vec<usize> = (0..n).filter(|i| !elim.contains(i)).collect();
    let permutation: Vec<usize> = elim.iter().chain(keep.iter()).copied().collect();
    let names: Vec<String> = permutation.iter().map(|&i| ring.variables()[i].clone()).collect();
    let elim_ring = PolynomialRing::new(ring.field(), &names, TermOrder::Elimination(elim.len()))?;
    // position of original variable i in the elimination ring
    let mut forward = vec![0usize; n];
    for (pos, &i) in permutation.iter().enumerate() {
        forward[i] = pos;
    }
    let moved: Vec<Polynomial> = generators
        .iter()
        .map(|g| {
            if !same_ring(g.ring(), &ring) {
                return Err(Error::RingMismatch);
            }
            Ok(g.embed(&elim_ring, &forward))
        })
        .collect::<Result<_>>()?;
    if weights.is_some_and(|w| w.len() != n) {
        return Err(Error::DimensionMismatch("one weight per variable".into()));
    }
    let permuted_weights: Option<Vec<u32>> = weights.map(|w| permutation.iter().map(|&i| w[i]).collect());
    let gb = basis_with(&elim_ring, &moved, None, permuted_weights.as_deref())?;
    let k = elim.len();
    Ok(gb
        .elements
        .iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0))
        })
        .map(|g| g.embed(&ring, &permutation))
        .collect())
}
