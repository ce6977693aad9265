//! Affine monoids of exponent vectors: minimal zero-sum sequences over a
//! finite abelian group and Hilbert bases of `N^k ∩ ker`.

use std::collections::HashSet;

use crate::monomial::Monomial;

/// Finite abelian group `Z/d_1 x ... x Z/d_s` with elements packed in mixed
/// radix.
struct AbelianGroup {
    orders: Vec<u64>,
    size: usize,
}

impl AbelianGroup {
    fn new(orders: &[u64]) -> Self {
        let size = orders.iter().map(|&d| d as usize).product();
        AbelianGroup {
            orders: orders.to_vec(),
            size,
        }
    }

    fn encode(&self, residues: impl Iterator<Item = i64>) -> usize {
        let mut index = 0usize;
        for (r, &d) in residues.zip(&self.orders) {
            index = index * d as usize + r.rem_euclid(d as i64) as usize;
        }
        index
    }

    fn decode(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.orders.len()];
        for (slot, &d) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (index % d as usize) as u64;
            index /= d as usize;
        }
        out
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.decode(a), self.decode(b));
        self.encode(
            da.iter()
                .zip(&db)
                .zip(&self.orders)
                .map(|((x, y), d)| ((x + y) % d) as i64),
        )
    }

    fn neg(&self, a: usize) -> usize {
        self.encode(self.decode(a).iter().map(|&x| -(x as i64)))
    }
}

#[derive(Clone)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(size: usize) -> Self {
        BitSet(vec![0; size.div_ceil(64)])
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64)
                .filter(move |b| bits >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }
}

/// Zero-sum-free sequence `T` (as an exponent vector), built with
/// non-decreasing variable index, with its sum and set of nonempty subsums.
struct Sequence {
    exponents: Vec<u32>,
    last: usize,
    sum: usize,
    subsums: BitSet,
}

/// Irreducible exponent vectors `a` with `sum_j a_j w_{ij} = 0 mod d_i` for
/// all `i`, where `weights` has one row per cyclic factor.
///
/// These are the minimal zero-sum sequences over the group: `T x_i` is one
/// exactly when `T` is zero-sum-free and `sum(T) + w_i = 0` with `w_i != 0`.
/// Zero-sum-free sequences are finite in number, so the search terminates
/// without a degree bound.
pub fn abelian_generators(orders: &[u64], weights: &[Vec<i64>]) -> Vec<Monomial> {
    let n = weights.first().map_or(0, |row| row.len());
    let group = AbelianGroup::new(orders);
    let columns: Vec<usize> = (0..n)
        .map(|j| group.encode(weights.iter().map(|row| row[j])))
        .collect();
    let negated: Vec<usize> = columns.iter().map(|&c| group.neg(c)).collect();

    let mut found: Vec<Monomial> = (0..n)
        .filter(|&j| columns[j] == 0)
        .map(|j| Monomial::variable(n, j))
        .collect();
    let mut frontier = vec![Sequence {
        exponents: vec![0; n],
        last: 0,
        sum: 0,
        subsums: BitSet::new(group.size),
    }];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for seq in &frontier {
            let empty = seq.exponents.iter().all(|&e| e == 0);
            for i in seq.last..n {
                if columns[i] == 0 {
                    continue;
                }
                let mut exponents = seq.exponents.clone();
                exponents[i] += 1;
                if !empty && seq.sum == negated[i] {
                    found.push(Monomial::new(exponents));
                    continue;
                }
                if !empty && seq.subsums.contains(negated[i]) {
                    continue;
                }
                let mut subsums = seq.subsums.clone();
                for e in seq.subsums.iter() {
                    subsums.insert(group.add(e, columns[i]));
                }
                subsums.insert(columns[i]);
                next.push(Sequence {
                    exponents,
                    last: i,
                    sum: group.add(seq.sum, columns[i]),
                    subsums,
                });
            }
        }
        frontier = next;
    }
    sort_monomials(&mut found);
    found
}

/// Hilbert basis of `{c in N^k : sum_j c_j v_j = 0}` for vectors `v_j` of a
/// common length `r`, one coordinate (hyperplane) at a time.
pub fn torus_hilbert_basis(vectors: &[Vec<i64>]) -> Vec<Vec<u32>> {
    let k = vectors.len();
    let r = vectors.first().map_or(0, |v| v.len());
    let mut basis: Vec<Vec<u32>> = (0..k)
        .map(|j| {
            let mut e = vec![0; k];
            e[j] = 1;
            e
        })
        .collect();
    for row in 0..r {
        let w: Vec<i64> = basis
            .iter()
            .map(|h| h.iter().zip(vectors).map(|(&c, v)| c as i64 * v[row]).sum())
            .collect();
        let lifted: Vec<Vec<u32>> = single_equation_basis(&w)
            .into_iter()
            .map(|lambda| {
                let mut c = vec![0u32; k];
                for (&l, h) in lambda.iter().zip(&basis) {
                    for (cj, &hj) in c.iter_mut().zip(h) {
                        *cj += l * hj;
                    }
                }
                c
            })
            .collect();
        basis = minimal_vectors(lifted);
    }
    basis
}

/// Hilbert basis of `{c in N^m : sum_j c_j w_j = 0}` by balanced completion:
/// from a state of weight `<= 0` add a positive entry, otherwise a negative
/// one. Every minimal solution is reachable this way, states dominating a
/// known solution are dropped, and a minimal solution uses at most
/// `max |negative|` positive entries and `max positive` negative ones.
fn single_equation_basis(w: &[i64]) -> Vec<Vec<u32>> {
    let m = w.len();
    let mut solutions: Vec<Vec<u32>> = (0..m)
        .filter(|&j| w[j] == 0)
        .map(|j| {
            let mut e = vec![0; m];
            e[j] = 1;
            e
        })
        .collect();
    let positive: Vec<usize> = (0..m).filter(|&j| w[j] > 0).collect();
    let negative: Vec<usize> = (0..m).filter(|&j| w[j] < 0).collect();
    if positive.is_empty() || negative.is_empty() {
        return solutions;
    }
    let max_pos = positive.iter().map(|&j| w[j]).max().unwrap() as u32;
    let max_neg = negative.iter().map(|&j| -w[j]).max().unwrap() as u32;

    // state: (vector, weight, positive count, negative count)
    let mut frontier: HashSet<(Vec<u32>, i64, u32, u32)> = HashSet::new();
    frontier.insert((vec![0; m], 0, 0, 0));
    while !frontier.is_empty() {
        let mut level: Vec<_> = frontier.into_iter().collect();
        level.sort();
        let mut next = HashSet::new();
        let mut found_here = Vec::new();
        for (c, s, np, nn) in level {
            let choices = if s <= 0 { &positive } else { &negative };
            for &j in choices {
                let (np, nn) = if w[j] > 0 { (np + 1, nn) } else { (np, nn + 1) };
                if np > max_neg || nn > max_pos {
                    continue;
                }
                let mut c2 = c.clone();
                c2[j] += 1;
                if solutions.iter().any(|sol| dominates(&c2, sol)) {
                    continue;
                }
                let s2 = s + w[j];
                if s2 == 0 {
                    found_here.push(c2);
                } else {
                    next.insert((c2, s2, np, nn));
                }
            }
        }
        found_here.sort();
        found_here.dedup();
        solutions.extend(found_here);
        frontier = next;
    }
    solutions
}

fn dominates(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Keep the componentwise-minimal vectors, dropping duplicates and zero.
pub fn minimal_vectors(mut vs: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    vs.retain(|v| v.iter().any(|&x| x > 0));
    vs.sort_by_key(|v| (v.iter().sum::<u32>(), std::cmp::Reverse(v.clone())));
    vs.dedup();
    let mut kept: Vec<Vec<u32>> = Vec::new();
    for v in vs {
        if !kept.iter().any(|k| dominates(&v, k)) {
            kept.push(v);
        }
    }
    kept
}

/// Ascending degree, then descending lexicographic.
pub fn sort_monomials(ms: &mut Vec<Monomial>) {
    ms.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    ms.dedup();
}
