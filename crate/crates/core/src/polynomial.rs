//! Sparse multivariate polynomials.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::monomial::Monomial;
use crate::ring::PolynomialRing;

pub type Term = (Monomial, Scalar);

/// A polynomial in canonical form: terms strictly descending in the ring's
/// term order, no zero coefficients. The zero polynomial has no terms.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Arc<PolynomialRing>,
    terms: Vec<Term>,
}

pub(crate) fn same_ring(a: &Arc<PolynomialRing>, b: &Arc<PolynomialRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolynomialRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolynomialRing>, c: Scalar) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolynomialRing>) -> Self {
        Self::constant(ring, Scalar::one())
    }

    /// `c * m`; `c` must already be canonical for the ring's field.
    pub fn monomial(ring: &Arc<PolynomialRing>, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial length must match the ring");
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Build from arbitrary terms: coefficients are mapped into the field,
    /// like monomials are combined and zeros dropped.
    pub fn from_terms(ring: &Arc<PolynomialRing>, terms: Vec<Term>) -> Result<Self> {
        let field = ring.field();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            if m.nvars() != ring.nvars() {
                return Err(Error::DimensionMismatch(format!(
                    "monomial with {} exponents in a ring with {} variables",
                    m.nvars(),
                    ring.nvars()
                )));
            }
            let c = field.from_rational(&c)?;
            let slot = acc.entry(m).or_insert_with(Scalar::zero);
            *slot = field.add(slot, &c);
        }
        Ok(Self::from_map(ring, acc))
    }

    pub(crate) fn from_map(ring: &Arc<PolynomialRing>, acc: HashMap<Monomial, Scalar>) -> Self {
        let order = ring.order();
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms already canonical and sorted.
    pub(crate) fn from_sorted(ring: &Arc<PolynomialRing>, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().compare(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    /// Coefficient of `m` (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> Scalar {
        let order = self.ring.order();
        self.terms
            .binary_search_by(|t| order.compare(m, &t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn combine(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let field = self.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        let sign = |c: &Scalar| if subtract { field.neg(c) } else { c.clone() };
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m.clone(), sign(c)));
                }
                (Some(ta), Some(tb)) => match order.compare(&ta.0, &tb.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (m, c) = b.next().unwrap();
                        out.push((m.clone(), sign(c)));
                    }
                    Ordering::Equal => {
                        let (m, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let c = if subtract {
                            field.sub(ca, cb)
                        } else {
                            field.add(ca, cb)
                        };
                        if !c.is_zero() {
                            out.push((m.clone(), c));
                        }
                    }
                },
            }
        }
        Polynomial::from_sorted(&self.ring, out)
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = field.mul(ca, cb);
                let slot = acc.entry(ma.mul(mb)).or_insert_with(Scalar::zero);
                *slot = field.add(slot, &prod);
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    /// `self * c * m`. Multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = self.field();
        let terms = self
            .terms
            .iter()
            .map(|(tm, tc)| (tm.mul(m), field.mul(tc, c)))
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.product(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base);
            }
        }
        result
    }

    /// Divide by the lead coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.lead_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("lead coefficient is nonzero");
                self.scalar_mul(&inv)
            }
        }
    }

    /// Scalar multiple with coprime integer coefficients and positive lead
    /// coefficient over `Q`; monic over a prime field.
    pub fn primitive(&self) -> Polynomial {
        match self.field() {
            Field::PrimeField(_) => self.monic(),
            Field::Rationals => {
                if self.is_zero() {
                    return self.clone();
                }
                let mut lcm_den = BigInt::one();
                for (_, c) in &self.terms {
                    lcm_den = lcm_den.lcm(c.denom());
                }
                let ints: Vec<BigInt> = self
                    .terms
                    .iter()
                    .map(|(_, c)| (c * BigRational::from_integer(lcm_den.clone())).to_integer())
                    .collect();
                let mut g = BigInt::zero();
                for v in &ints {
                    g = g.gcd(v);
                }
                if ints[0].is_negative() {
                    g = -g;
                }
                let terms = self
                    .terms
                    .iter()
                    .zip(ints)
                    .map(|((m, _), v)| (m.clone(), BigRational::from_integer(v / &g)))
                    .collect();
                Polynomial::from_sorted(&self.ring, terms)
            }
        }
    }

    /// Apply the ring homomorphism `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => {
                return Ok(match self.terms.first() {
                    Some((_, c)) => Polynomial::constant(&self.ring, c.clone()),
                    None => Polynomial::zero(&self.ring),
                })
            }
        };
        if images.iter().any(|p| !same_ring(&p.ring, &target)) {
            return Err(Error::RingMismatch);
        }
        if target.field() != self.field() {
            return Err(Error::RingMismatch);
        }
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        let field = self.field();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((i, e)).or_insert_with(|| images[i].pow(e)).clone();
                term = term.product(&p);
            }
            for (tm, tc) in term.terms {
                let slot = acc.entry(tm).or_insert_with(Scalar::zero);
                *slot = field.add(slot, &tc);
            }
        }
        Ok(Polynomial::from_map(&target, acc))
    }

    /// Re-express in `target`, sending variable `i` to variable
    /// `index_map[i]` of `target`. The fields must agree.
    pub fn embed(&self, target: &Arc<PolynomialRing>, index_map: &[usize]) -> Polynomial {
        assert_eq!(index_map.len(), self.ring.nvars());
        assert_eq!(target.field(), self.field());
        let n = target.nvars();
        let acc: HashMap<Monomial, Scalar> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[index_map[i]] += x;
                }
                (Monomial::new(e), c.clone())
            })
            .collect();
        Polynomial::from_map(target, acc)
    }

    /// Same polynomial in a ring with identical variables but a possibly
    /// different term order.
    pub fn reorder(&self, target: &Arc<PolynomialRing>) -> Polynomial {
        let index_map: Vec<usize> = (0..self.ring.nvars()).collect();
        self.embed(target, &index_map)
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .cloned()
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    /// Keep only the terms accepted by `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect();
        Polynomial::from_sorted(&self.ring, terms)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("operands must share a ring")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("operands must share a ring")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("operands must share a ring")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let field = self.field();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), field.neg(c)))
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }
}
