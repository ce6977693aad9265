//! Dense univariate polynomials over `Q` in the symbol `T`, and reduced
//! quotients of them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly(Vec<BigRational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * T^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `1 - T^k`.
    pub fn one_minus_power(k: usize) -> Self {
        &Self::one() - &Self::monomial(BigRational::one(), k)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.0.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.lead().unwrap().clone();
        let mut rem = self.0.clone();
        let mut quot = vec![BigRational::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, d) in divisor.0.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &c * d;
            }
            quot[k] = c;
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Quotient when the division is exact.
    pub fn exact_div(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        match a.lead().cloned() {
            Some(l) => a.scale(&l.recip()),
            None => a,
        }
    }

    /// Power series coefficients of `self / den` up to degree `n`
    /// (requires a nonzero constant term in `den`).
    pub fn series_div(&self, den: &UniPoly, n: usize) -> Vec<BigRational> {
        let c0 = den.coeff(0);
        assert!(!c0.is_zero(), "denominator must have a nonzero constant term");
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut v = self.coeff(k);
            for j in 1..=k.min(den.0.len().saturating_sub(1)) {
                v -= den.coeff(j) * &out[k - j];
            }
            out.push(v / &c0);
        }
        out
    }

    /// Ascending-power text form, e.g. `1-T^2+T^4`.
    pub fn format_with(&self, symbol: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            let abs = c.abs();
            let num = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            match k {
                0 => s.push_str(&num),
                _ => {
                    if !abs.is_one() {
                        s.push_str(&num);
                        s.push('*');
                    }
                    s.push_str(symbol);
                    if k > 1 {
                        s.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        s
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with("T"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.0.iter().map(|c| -c).collect())
    }
}

/// A reduced quotient `numerator / denominator` of univariate polynomials.
///
/// The denominator is normalized to constant term 1 when that term is
/// nonzero, otherwise to a monic polynomial. Zero is `0/1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: UniPoly,
    denominator: UniPoly,
}

impl RationalFunction {
    pub fn new(numerator: UniPoly, denominator: UniPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduced(numerator, denominator))
    }

    fn reduced(numerator: UniPoly, denominator: UniPoly) -> Self {
        if numerator.is_zero() {
            return RationalFunction {
                numerator,
                denominator: UniPoly::one(),
            };
        }
        let g = numerator.gcd(&denominator);
        let num = numerator.exact_div(&g).expect("gcd divides numerator");
        let den = denominator.exact_div(&g).expect("gcd divides denominator");
        let c0 = den.coeff(0);
        let norm = if c0.is_zero() {
            den.lead().unwrap().recip()
        } else {
            c0.recip()
        };
        RationalFunction {
            numerator: num.scale(&norm),
            denominator: den.scale(&norm),
        }
    }

    pub fn zero() -> Self {
        Self::reduced(UniPoly::zero(), UniPoly::one())
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.denominator
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        let num = &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator);
        Self::reduced(num, &self.denominator * &other.denominator)
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        Self::reduced(
            &self.numerator * &other.numerator,
            &self.denominator * &other.denominator,
        )
    }

    pub fn scale(&self, c: &BigRational) -> RationalFunction {
        Self::reduced(self.numerator.scale(c), self.denominator.clone())
    }

    /// Exact sum of `numerator_i / denominator_i`.
    pub fn sum(terms: &[(UniPoly, UniPoly)]) -> Result<RationalFunction> {
        let mut acc = RationalFunction::zero();
        for (n, d) in terms {
            acc = acc.add(&RationalFunction::new(n.clone(), d.clone())?);
        }
        Ok(acc)
    }

    /// Equality as elements of `Q(T)`.
    pub fn same_function(&self, other: &RationalFunction) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }

    /// Power series coefficients up to degree `n`.
    pub fn series(&self, n: usize) -> Vec<BigRational> {
        self.numerator.series_div(&self.denominator, n)
    }

    /// Write the denominator as `prod (1 - T^k)^e` when possible, trying
    /// the largest `k` first. Returns `(k, e)` pairs, descending in `k`.
    pub fn denominator_factors(&self) -> Option<Vec<(usize, u32)>> {
        let mut rest = self.denominator.clone();
        let mut factors = Vec::new();
        let top = rest.degree()?;
        for k in (1..=top).rev() {
            let f = UniPoly::one_minus_power(k);
            let mut e = 0;
            while rest.degree().is_some_and(|d| d >= k) {
                match rest.exact_div(&f) {
                    Some(q) => {
                        rest = q;
                        e += 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                factors.push((k, e));
            }
        }
        (rest == UniPoly::one()).then_some(factors)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator.to_string();
        let num_terms = self.numerator.coeffs().iter().filter(|c| !c.is_zero()).count();
        let num = if num_terms > 1 { format!("({num})") } else { num };
        if self.denominator == UniPoly::one() {
            return write!(f, "{num}");
        }
        let den = match self.denominator_factors() {
            Some(factors) => {
                let parts: Vec<String> = factors
                    .iter()
                    .map(|&(k, e)| {
                        let base = if k == 1 {
                            "(1-T)".to_string()
                        } else {
                            format!("(1-T^{k})")
                        };
                        if e == 1 {
                            base
                        } else {
                            format!("{base}^{e}")
                        }
                    })
                    .collect();
                if parts.len() == 1 {
                    parts[0].clone()
                } else {
                    format!("({})", parts.concat())
                }
            }
            None => format!("({})", self.denominator),
        };
        write!(f, "{num}/{den}")
    }
}
