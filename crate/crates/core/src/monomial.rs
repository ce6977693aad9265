//! Exponent vectors and term orders.

use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }
}

/// Monomial orders. `Elimination(k)` compares the total degree in the first
/// `k` variables and breaks ties by graded reverse lex on all variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TermOrder {
    Lex,
    #[default]
    GRevLex,
    Elimination(usize),
}

impl TermOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => a.0.cmp(&b.0),
            TermOrder::GRevLex => grevlex(&a.0, &b.0),
            TermOrder::Elimination(k) => {
                let k = (*k).min(a.0.len());
                let da: u32 = a.0[..k].iter().sum();
                let db: u32 = b.0[..k].iter().sum();
                da.cmp(&db).then_with(|| grevlex(&a.0, &b.0))
            }
        }
    }

    /// True when every monomial's position is governed first by total degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, TermOrder::GRevLex | TermOrder::Elimination(0))
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// All exponent vectors of length `nvars` and total degree `d`, in
/// lexicographically descending order.
pub fn exponents_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = vec![0u32; nvars];
    fill(&mut current, 0, d, &mut out);
    out
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}
