//! Finite matrix groups acting linearly on a polynomial ring.
//!
//! A matrix `g` acts by substitution `x_j -> sum_k g[j][k] x_k`, that is
//! `f -> f(g x)`. For a finite group this yields the same invariant ring as
//! `f -> f(g^{-1} x)` since the group is closed under inverses.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::groebner::IncrementalBasis;
use crate::linalg::{nullspace, Matrix};
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;
use crate::ring::PolynomialRing;
use crate::univariate::{RationalFunction, UniPoly};

pub const DEFAULT_CLOSURE_CAP: usize = 50_000;

/// One-line notation to a permutation matrix: column `j` carries a single 1
/// in row `s[j]`. `"2314"` gives rows `0010 / 1000 / 0100 / 0001`.
pub fn permutation_matrix(one_line: &str, field: Field) -> Result<Matrix> {
    let not_perm = || Error::NotAPermutation(one_line.to_string());
    let images: Vec<usize> = one_line
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(not_perm))
        .collect::<Result<_>>()?;
    let n = images.len();
    if n == 0 || n > 9 {
        return Err(not_perm());
    }
    let mut seen = vec![false; n];
    for &i in &images {
        if i == 0 || i > n || seen[i - 1] {
            return Err(not_perm());
        }
        seen[i - 1] = true;
    }
    let mut m = Matrix::zeros(n, n);
    for (j, &i) in images.iter().enumerate() {
        m.set(i - 1, j, field.one());
    }
    Ok(m)
}

/// Images of the variables under `g`: `x_j -> sum_k g[j][k] x_k`.
fn variable_images(g: &Matrix, ring: &Arc<PolynomialRing>) -> Result<Vec<Polynomial>> {
    let n = ring.nvars();
    if g.rows() != n || g.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix acting on {n} variables",
            g.rows(),
            g.cols()
        )));
    }
    Ok((0..n)
        .map(|j| {
            let terms = (0..n)
                .filter(|&k| !g.get(j, k).is_zero())
                .map(|k| (Monomial::variable(n, k), g.get(j, k).clone()))
                .collect();
            Polynomial::from_terms(ring, terms).expect("canonical entries")
        })
        .collect())
}

/// `f(g x)`.
pub fn act_on(g: &Matrix, f: &Polynomial) -> Result<Polynomial> {
    let images = variable_images(g, f.ring())?;
    f.substitute(&images)
}

#[derive(Debug)]
pub struct FiniteGroupAction {
    ring: Arc<PolynomialRing>,
    generators: Vec<Matrix>,
    closure_cap: usize,
    closure: OnceLock<Result<Arc<Vec<Matrix>>>>,
}

impl Clone for FiniteGroupAction {
    fn clone(&self) -> Self {
        let closure = OnceLock::new();
        if let Some(c) = self.closure.get() {
            let _ = closure.set(c.clone());
        }
        FiniteGroupAction {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            closure_cap: self.closure_cap,
            closure,
        }
    }
}

impl FiniteGroupAction {
    /// Entries must be canonical scalars of the ring's field; every
    /// generator must be an invertible `n x n` matrix.
    pub fn new(generators: Vec<Matrix>, ring: &Arc<PolynomialRing>) -> Result<Self> {
        let n = ring.nvars();
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator {i} is {}x{}, expected {n}x{n}",
                    g.rows(),
                    g.cols()
                )));
            }
            if g.determinant(ring.field()).is_zero() {
                return Err(Error::InvalidAction(format!("generator {i} is singular")));
            }
        }
        Ok(FiniteGroupAction {
            ring: ring.clone(),
            generators,
            closure_cap: DEFAULT_CLOSURE_CAP,
            closure: OnceLock::new(),
        })
    }

    pub fn with_closure_cap(mut self, cap: usize) -> Self {
        self.closure_cap = cap.max(1);
        self.closure = OnceLock::new();
        self
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn closure_cap(&self) -> usize {
        self.closure_cap
    }

    /// All group elements: the identity, then the generators, then
    /// breadth-first products `element * generator` in discovery order.
    pub fn closure(&self) -> Result<Arc<Vec<Matrix>>> {
        self.closure
            .get_or_init(|| self.enumerate_closure().map(Arc::new))
            .clone()
    }

    fn enumerate_closure(&self) -> Result<Vec<Matrix>> {
        let field = self.ring.field();
        let mut elements = vec![Matrix::identity(self.ring.nvars())];
        let mut seen: HashSet<Matrix> = elements.iter().cloned().collect();
        for g in &self.generators {
            if seen.insert(g.clone()) {
                elements.push(g.clone());
            }
        }
        if elements.len() > self.closure_cap {
            return Err(Error::ClosureCapExceeded(self.closure_cap));
        }
        let mut next = 0;
        while next < elements.len() {
            let current = elements[next].clone();
            next += 1;
            for g in &self.generators {
                let product = current.mul(g, field);
                if seen.insert(product.clone()) {
                    elements.push(product);
                    if elements.len() > self.closure_cap {
                        return Err(Error::ClosureCapExceeded(self.closure_cap));
                    }
                }
            }
        }
        Ok(elements)
    }

    pub fn group_order(&self) -> Result<usize> {
        Ok(self.closure()?.len())
    }

    fn check_nonmodular(&self, order: usize) -> Result<()> {
        let field = self.ring.field();
        if field.divides_order(order) {
            return Err(Error::ModularCaseUnsupported {
                characteristic: field.characteristic(),
                order,
            });
        }
        Ok(())
    }

    fn reynolds_operator(&self) -> Result<ReynoldsOperator> {
        let group = self.closure()?;
        self.check_nonmodular(group.len())?;
        let images = group
            .iter()
            .map(|g| variable_images(g, &self.ring))
            .collect::<Result<Vec<_>>>()?;
        let field = self.ring.field();
        let scale = field
            .inv(&field.from_int(group.len() as i64))
            .expect("nonmodular order is invertible");
        Ok(ReynoldsOperator { images, scale })
    }

    /// Group average of `f`.
    pub fn reynolds(&self, f: &Polynomial) -> Result<Polynomial> {
        if !crate::polynomial::same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        self.reynolds_operator()?.apply(f)
    }

    /// `(1/|G|) sum_g 1/det(I - T g)`, reduced.
    pub fn molien_series(&self) -> Result<RationalFunction> {
        if self.ring.field().characteristic() != 0 {
            return Err(Error::NonZeroCharacteristic);
        }
        let group = self.closure()?;
        let n = self.ring.nvars();
        // conjugate elements share det(I - Tg); cache by the polynomial
        let mut counts: HashMap<UniPoly, usize> = HashMap::new();
        let mut order_seen: Vec<UniPoly> = Vec::new();
        for g in group.iter() {
            let m: Vec<Vec<UniPoly>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let delta = if i == j {
                                BigRational::one()
                            } else {
                                BigRational::zero()
                            };
                            UniPoly::new(vec![delta, -g.get(i, j).clone()])
                        })
                        .collect()
                })
                .collect();
            let det = bareiss_determinant(m);
            let slot = counts.entry(det.clone()).or_insert(0);
            if *slot == 0 {
                order_seen.push(det);
            }
            *slot += 1;
        }
        let terms: Vec<(UniPoly, UniPoly)> = order_seen
            .into_iter()
            .map(|det| {
                let k = counts[&det];
                (UniPoly::constant(BigRational::from_integer(k.into())), det)
            })
            .collect();
        let sum = RationalFunction::sum(&terms)?;
        Ok(sum.scale(&BigRational::new(1.into(), group.len().into())))
    }

    /// Matrix of the action on degree-`d` forms, as equations on the
    /// coefficient vector over `basis`: one row per (generator, monomial).
    fn fixed_space_equations(&self, basis: &[Monomial]) -> Result<Vec<Vec<Scalar>>> {
        let field = self.ring.field();
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in &self.generators {
            let images = variable_images(g, &self.ring)?;
            let mut block = vec![vec![Scalar::zero(); basis.len()]; basis.len()];
            for (col, m) in basis.iter().enumerate() {
                let moved = Polynomial::monomial(&self.ring, m.clone(), field.one()).substitute(&images)?;
                for (tm, tc) in moved.terms() {
                    block[index[tm]][col] = tc.clone();
                }
                block[col][col] = field.sub(&block[col][col], &field.one());
            }
            rows.extend(block.into_iter().filter(|r| r.iter().any(|v| !v.is_zero())));
        }
        Ok(rows)
    }

    /// Basis of the degree-`d` invariants, from the generators alone,
    /// in reduced echelon form over the descending monomial basis.
    pub fn invariant_space_basis(&self, d: u32) -> Result<Vec<Polynomial>> {
        let field = self.ring.field();
        let basis = self.ring.monomial_basis(d);
        let rows = self.fixed_space_equations(&basis)?;
        let kernel = nullspace(&rows, basis.len(), field);
        Ok(kernel
            .into_iter()
            .map(|v| {
                let terms = basis
                    .iter()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| (m.clone(), c))
                    .collect();
                Polynomial::from_terms(&self.ring, terms).expect("canonical scalars")
            })
            .collect())
    }

    /// Minimal homogeneous generators of the invariant ring by Reynolds
    /// images of monomials, degree by degree up to `max_degree` (default
    /// `|G|`).
    pub fn invariants_king(&self, max_degree: Option<u32>) -> Result<Vec<Polynomial>> {
        self.king_with(max_degree, true)
    }

    /// King's loop; `skip_lead_monomials` toggles skipping monomials already
    /// in the lead ideal, which does not change the output.
    pub fn king_with(&self, max_degree: Option<u32>, skip_lead_monomials: bool) -> Result<Vec<Polynomial>> {
        let reynolds = self.reynolds_operator()?;
        let bound = max_degree.unwrap_or(reynolds.images.len() as u32);
        let mut gb = IncrementalBasis::new(&self.ring);
        let mut found: Vec<Polynomial> = Vec::new();
        for d in 1..=bound {
            gb.complete_to(d)?;
            let mut monomials = self.ring.monomial_basis(d);
            if monomials.iter().all(|m| gb.lead_ideal_contains(m)) {
                break;
            }
            // ascending, so skipped monomials never hide a new generator
            monomials.reverse();
            for m in monomials {
                if skip_lead_monomials && gb.lead_ideal_contains(&m) {
                    continue;
                }
                let r = reynolds.apply(&Polynomial::monomial(&self.ring, m, self.ring.field().one()))?;
                if r.is_zero() || gb.reduces_to_zero(&r) {
                    continue;
                }
                gb.add(&r)?;
                gb.complete_to(d)?;
                found.push(r.monic());
            }
        }
        Ok(sort_generators(found))
    }

    /// Minimal homogeneous generators from bases of the invariant spaces,
    /// degree by degree. Without `max_degree` the bound is `|G|`, which
    /// needs the closure.
    pub fn invariants_linear_algebra(&self, max_degree: Option<u32>) -> Result<Vec<Polynomial>> {
        let bound = match max_degree {
            Some(d) => d,
            None => {
                let order = match self.closure() {
                    Ok(group) => group.len(),
                    Err(Error::ClosureCapExceeded(_)) => return Err(Error::MissingDegreeBound),
                    Err(e) => return Err(e),
                };
                self.check_nonmodular(order)?;
                order as u32
            }
        };
        let mut gb = IncrementalBasis::new(&self.ring);
        let mut found: Vec<Polynomial> = Vec::new();
        for d in 1..=bound {
            gb.complete_to(d)?;
            if self
                .ring
                .monomial_basis(d)
                .iter()
                .all(|m| gb.lead_ideal_contains(m))
            {
                break;
            }
            for candidate in self.invariant_space_basis(d)? {
                if gb.reduces_to_zero(&candidate) {
                    continue;
                }
                gb.add(&candidate)?;
                gb.complete_to(d)?;
                found.push(candidate.monic());
            }
        }
        Ok(sort_generators(found))
    }

    /// Is `f` fixed by every generator?
    pub fn is_invariant(&self, f: &Polynomial) -> Result<bool> {
        for g in &self.generators {
            if act_on(g, f)? != *f {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

struct ReynoldsOperator {
    images: Vec<Vec<Polynomial>>,
    scale: Scalar,
}

impl ReynoldsOperator {
    fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        let ring = f.ring();
        let field = ring.field();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for images in &self.images {
            for (m, c) in f.substitute(images)?.into_terms() {
                let slot = acc.entry(m).or_insert_with(Scalar::zero);
                *slot = field.add(slot, &c);
            }
        }
        let sum = Polynomial::from_map(ring, acc);
        Ok(sum.scalar_mul(&self.scale))
    }
}

/// Ascending degree, then descending lead monomial.
pub(crate) fn sort_generators(mut gens: Vec<Polynomial>) -> Vec<Polynomial> {
    gens.sort_by(|a, b| {
        let order = a.ring().order();
        a.degree()
            .cmp(&b.degree())
            .then_with(|| order.compare(b.lead_monomial().unwrap(), a.lead_monomial().unwrap()))
    });
    gens
}

/// Fraction-free determinant of a square matrix of univariate polynomials.
pub fn bareiss_determinant(mut a: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = a.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut negate = false;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}
