//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every expected value is recomputed here with independent oracles
//! (brute-force enumeration, dense linear algebra over `Q`, explicit
//! substitution) rather than taken from the library. Comparisons are exact.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use invring::diagonal::torus_hilbert_basis;
use invring::groebner::buchberger;
use invring::{
    elimination_ideal, invariant_ring, parse_polynomial, permutation_matrix, DiagonalAction, Field,
    FiniteAlgorithm, FiniteGroupAction, GroupAction, InvariantOptions, LinearlyReductiveAction, Matrix,
    Monomial, Polynomial, PolynomialRing, RationalFunction, TermOrder, UniPoly,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Result of one criterion. A non-blocking failure is reported but does not
/// fail the run; it is reserved for statements that contradict another
/// criterion and so cannot hold.
struct Outcome {
    pass: bool,
    blocking: bool,
    detail: String,
}

impl Outcome {
    fn of(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            blocking: true,
            detail: detail.into(),
        }
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget_secs: f64,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "A4 invariants, both algorithms",
            budget_secs: 120.0,
            run: a4_invariants,
        },
        Criterion {
            id: 2,
            name: "A4 Hilbert series",
            budget_secs: 10.0,
            run: a4_series,
        },
        Criterion {
            id: 3,
            name: "torus invariants",
            budget_secs: 300.0,
            run: torus_invariants,
        },
        Criterion {
            id: 4,
            name: "literal GF(9) invariants",
            budget_secs: 60.0,
            run: literal_gf9,
        },
        Criterion {
            id: 5,
            name: "SL2 binary quadrics",
            budget_secs: 120.0,
            run: sl2_quadrics,
        },
        Criterion {
            id: 6,
            name: "diagonal oracle equivalence",
            budget_secs: 600.0,
            run: diagonal_oracle,
        },
        Criterion {
            id: 7,
            name: "finite oracle equivalence",
            budget_secs: 300.0,
            run: finite_oracle,
        },
        Criterion {
            id: 8,
            name: "property suites",
            budget_secs: 300.0,
            run: property_suites,
        },
        Criterion {
            id: 9,
            name: "reductive/diagonal consistency",
            budget_secs: 120.0,
            run: cross_module,
        },
    ];
    let mut blocking_failures = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::of(false, format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        let in_budget = secs <= c.budget_secs;
        let pass = outcome.pass && in_budget;
        let budget_note = if in_budget {
            String::new()
        } else {
            format!(" over budget {}s", c.budget_secs)
        };
        let blocking_note = if !pass && !outcome.blocking {
            " [non-blocking]"
        } else {
            ""
        };
        println!(
            "{} criterion {} ({}, {secs:.2}s{budget_note}): {}{blocking_note}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            outcome.detail,
        );
        if !pass && (outcome.blocking || !in_budget) {
            blocking_failures.push(c.id);
        }
    }
    if !blocking_failures.is_empty() {
        eprintln!("blocking failures: {blocking_failures:?}");
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------- helpers

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ring(vars: &[&str]) -> Arc<PolynomialRing> {
    PolynomialRing::grevlex(Field::Rationals, vars).unwrap()
}

fn xs(n: usize) -> Arc<PolynomialRing> {
    let names: Vec<String> = (1..=n).map(|i| format!("x_{i}")).collect();
    PolynomialRing::grevlex(Field::Rationals, &names).unwrap()
}

fn poly(text: &str, r: &Arc<PolynomialRing>) -> Polynomial {
    parse_polynomial(text, r).unwrap()
}

fn a4() -> FiniteGroupAction {
    let gens = vec![
        permutation_matrix("2314", Field::Rationals).unwrap(),
        permutation_matrix("2143", Field::Rationals).unwrap(),
    ];
    FiniteGroupAction::new(gens, &xs(4)).unwrap()
}

/// Rank over `Q` of a list of polynomials, by dense Gaussian elimination
/// on their coefficient vectors.
fn rank(polys: &[Polynomial]) -> usize {
    let mut columns: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let next = columns.len();
            columns.entry(m.clone()).or_insert(next);
        }
    }
    let mut rows: Vec<Vec<BigRational>> = polys
        .iter()
        .map(|p| {
            let mut row = vec![BigRational::zero(); columns.len()];
            for (m, c) in p.terms() {
                row[columns[m]] = c.clone();
            }
            row
        })
        .collect();
    let mut r = 0;
    for col in 0..columns.len() {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let lead = rows[r][col].clone();
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &lead;
            let pivot_row = rows[r].clone();
            for (v, p) in rows[i].iter_mut().zip(&pivot_row).skip(col) {
                *v -= &factor * p;
            }
        }
        r += 1;
    }
    r
}

/// All products of `gens` (with repetition) of total degree exactly `d`.
fn products(gens: &[Polynomial], d: u32) -> Vec<Polynomial> {
    fn go(gens: &[Polynomial], start: usize, left: u32, acc: &Polynomial, out: &mut Vec<Polynomial>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for (i, g) in gens.iter().enumerate().skip(start) {
            let e = g.degree().unwrap();
            if e >= 1 && e <= left {
                go(gens, i, left - e, &acc.checked_mul(g).unwrap(), out);
            }
        }
    }
    let mut out = Vec::new();
    if let Some(first) = gens.first() {
        go(gens, 0, d, &Polynomial::one(first.ring()), &mut out);
    }
    out
}

fn degree_multiset(polys: &[Polynomial]) -> Vec<u32> {
    let mut d: Vec<u32> = polys.iter().map(|p| p.degree().unwrap()).collect();
    d.sort_unstable();
    d
}

fn random_poly(r: &Arc<PolynomialRing>, rng: &mut ChaCha8Rng, max_degree: u32, terms: usize) -> Polynomial {
    let n = r.nvars();
    let mut f = Polynomial::zero(r);
    for _ in 0..terms {
        let mut e = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=max_degree) {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = q(rng.gen_range(-5..=5));
        f = f
            .checked_add(&Polynomial::monomial(r, Monomial::new(e), c))
            .unwrap();
    }
    f
}

/// Direct invariance test for a diagonal action.
fn invariant_exponent(a: &[u32], r: usize, orders: &[u64], w: &[Vec<i64>]) -> bool {
    w.iter().enumerate().all(|(i, row)| {
        let s: i64 = row.iter().zip(a).map(|(w, &e)| w * e as i64).sum();
        if i < r {
            s == 0
        } else {
            s.rem_euclid(orders[i - r] as i64) == 0
        }
    })
}

/// Irreducible invariant exponent vectors found by exhaustive search up to
/// total degree `bound`. With a torus row, the last variable with nonzero
/// weight in it is solved for instead of enumerated.
fn brute_force_irreducibles(
    n: usize,
    r: usize,
    orders: &[u64],
    w: &[Vec<i64>],
    bound: u32,
) -> BTreeSet<Vec<u32>> {
    let pivot = if r == 0 {
        None
    } else {
        (0..n).rev().find(|&j| w[0][j] != 0)
    };
    let free: Vec<usize> = (0..n).filter(|&j| Some(j) != pivot).collect();
    let mut hits: Vec<Vec<u32>> = Vec::new();
    let mut a = vec![0u32; n];
    fn walk(k: usize, left: u32, free: &[usize], a: &mut Vec<u32>, visit: &mut dyn FnMut(&mut Vec<u32>)) {
        if k == free.len() {
            visit(a);
            return;
        }
        for e in 0..=left {
            a[free[k]] = e;
            walk(k + 1, left - e, free, a, visit);
        }
        a[free[k]] = 0;
    }
    let mut visit = |a: &mut Vec<u32>| {
        if let Some(p) = pivot {
            let partial: i64 = (0..n).filter(|&j| j != p).map(|j| w[0][j] * a[j] as i64).sum();
            if partial % w[0][p] != 0 {
                return;
            }
            let e = -partial / w[0][p];
            let used: u32 = a.iter().sum();
            if e < 0 || used as i64 + e > bound as i64 {
                return;
            }
            a[p] = e as u32;
        }
        if a.iter().any(|&e| e > 0) && invariant_exponent(a, r, orders, w) {
            hits.push(a.clone());
        }
        if let Some(p) = pivot {
            a[p] = 0;
        }
    };
    walk(0, bound, &free, &mut a, &mut visit);
    hits.sort_by_key(|e| e.iter().sum::<u32>());
    let mut irreducible: Vec<Vec<u32>> = Vec::new();
    for e in hits {
        if !irreducible.iter().any(|k| k.iter().zip(&e).all(|(x, y)| x <= y)) {
            irreducible.push(e);
        }
    }
    irreducible.into_iter().collect()
}

fn exponent_set(polys: &[Polynomial]) -> BTreeSet<Vec<u32>> {
    polys
        .iter()
        .map(|p| p.terms()[0].0.exponents().to_vec())
        .collect()
}

fn same_up_to_scalar(a: &Polynomial, b: &Polynomial) -> bool {
    a.monic() == b.monic()
}

// --------------------------------------------------------------- criteria

fn a4_invariants() -> Outcome {
    let action = a4();
    let r = action.ring().clone();
    let printed = [
        "x_1+x_2+x_3+x_4",
        "x_1^2+x_2^2+x_3^2+x_4^2",
        "x_1^3+x_2^3+x_3^3+x_4^3",
        "x_1^4+x_2^4+x_3^4+x_4^4",
        "x_1^3*x_2^2*x_3+x_1*x_2^3*x_3^2+x_1^2*x_2*x_3^3+x_1^2*x_2^3*x_4+x_1^3*x_3^2*x_4+x_2^2*x_3^3*x_4\
         +x_1^3*x_2*x_4^2+x_2^3*x_3*x_4^2+x_1*x_3^3*x_4^2+x_1*x_2^2*x_4^3+x_1^2*x_3*x_4^3+x_2*x_3^2*x_4^3",
    ]
    .map(|t| poly(t, &r));
    let mut notes = Vec::new();
    let mut ok = true;
    let mut degrees = Vec::new();
    for algorithm in [FiniteAlgorithm::King, FiniteAlgorithm::LinearAlgebra] {
        let options = InvariantOptions {
            algorithm,
            ..Default::default()
        };
        let ring = invariant_ring(GroupAction::Finite(action.clone()), &options).unwrap();
        let gens = ring.generators();
        ok &= gens.len() == 5;
        degrees = degree_multiset(gens);
        for p in &printed {
            ok &= action.is_invariant(p).unwrap();
            let d = p.degree().unwrap();
            let span = products(gens, d);
            let mut with = span.clone();
            with.push(p.clone());
            ok &= rank(&span) == rank(&with);
        }
        notes.push(format!(
            "{:?}: {} generators, degrees {:?}",
            algorithm,
            gens.len(),
            degree_multiset(gens)
        ));
    }
    let stated = vec![1, 2, 3, 4, 5];
    let literal = degrees == stated;
    notes.push("printed A4 generators are invariant and lie in the span of same-degree products".into());
    if !literal {
        notes.push(format!(
            "stated degree multiset {stated:?} does not hold: the printed fifth generator has degree 6 and \
             the series numerator 1+T^6 of criterion 2 forces a degree-6 generator"
        ));
    }
    Outcome {
        pass: ok && literal,
        blocking: !ok,
        detail: notes.join("; "),
    }
}

fn a4_series() -> Outcome {
    let action = a4();
    let ring = invariant_ring(GroupAction::Finite(action.clone()), &InvariantOptions::default()).unwrap();
    let numerator = ring.hilbert_series_rewrite(&[1, 2, 3, 4]).unwrap();
    let rewrite_ok = numerator == UniPoly::from_ints(&[1, 0, 0, 0, 0, 0, 1]);
    let molien = action.molien_series().unwrap();
    let den = [1usize, 2, 3, 4]
        .iter()
        .fold(UniPoly::one(), |acc, &k| &acc * &UniPoly::one_minus_power(k));
    let expected = RationalFunction::new(UniPoly::from_ints(&[1, 0, 0, 0, 0, 0, 1]), den).unwrap();
    let equal = molien.same_function(&expected);
    let g = molien.numerator().gcd(molien.denominator());
    let reduced = g.degree() == Some(0);
    // the expansion must also match the per-degree fixed-space dimensions
    let coeffs = molien.series(6);
    let dims: Vec<BigRational> = (0..=6)
        .map(|d| q(action.invariant_space_basis(d).unwrap().len() as i64))
        .collect();
    let series_ok = coeffs == dims;
    Outcome::of(
        rewrite_ok && equal && reduced && series_ok,
        format!("rewrite numerator {numerator}; Molien {molien} (reduced: {reduced}); coefficients match fixed spaces through degree 6: {series_ok}"),
    )
}

fn paper_weights() -> Vec<Vec<i64>> {
    vec![vec![5, -3, -1, 4], vec![-3, 1, 1, 5], vec![0, -4, 2, 6]]
}

fn torus_invariants() -> Outcome {
    let r = xs(4);
    let action = DiagonalAction::new(&r, 3, vec![], paper_weights()).unwrap();
    let got = exponent_set(&action.to_polynomials(&action.invariants().unwrap()));
    // oracle: W a = 0 has a one-dimensional rational kernel; its primitive
    // nonnegative generator is the only irreducible invariant
    let oracle = brute_force_irreducibles(4, 3, &[], &paper_weights(), 16);
    let expected: BTreeSet<Vec<u32>> = [vec![1, 1, 2, 0]].into_iter().collect();
    Outcome::of(got == expected && oracle == expected, format!("{got:?}"))
}

fn literal_gf9() -> Outcome {
    let r = PolynomialRing::grevlex(Field::prime(3).unwrap(), &["x_1", "x_2", "x_3", "x_4"]).unwrap();
    let action = DiagonalAction::new(&r, 3, vec![], paper_weights()).unwrap();
    let got: BTreeSet<Vec<u32>> = action
        .invariants_literal(9)
        .unwrap()
        .iter()
        .map(|m| m.exponents().to_vec())
        .collect();
    let expected: BTreeSet<Vec<u32>> = [
        [1, 1, 2, 0],
        [0, 0, 0, 8],
        [0, 0, 8, 0],
        [0, 4, 4, 0],
        [0, 8, 0, 0],
        [2, 6, 0, 0],
        [4, 0, 4, 0],
        [4, 4, 0, 0],
        [6, 2, 0, 0],
        [8, 0, 0, 0],
    ]
    .iter()
    .map(|a| a.to_vec())
    .collect();
    // oracle: over GF(9) the torus is (Z/8)^3, so brute force that finite
    // group up to its Davenport constant 3 * 7 + 1
    let oracle = brute_force_irreducibles(4, 0, &[8, 8, 8], &paper_weights(), 22);
    Outcome::of(
        got == expected && oracle == expected,
        format!(
            "{} monomials; brute force over (Z/8)^3 agrees: {}",
            got.len(),
            oracle == expected
        ),
    )
}

fn sl2_action() -> LinearlyReductiveAction {
    let s = ring(&["z_11", "z_12", "z_21", "z_22"]);
    let r = ring(&["a", "b", "c"]);
    let p = |t: &str| poly(t, &s);
    LinearlyReductiveAction::new(
        vec![p("z_11*z_22-z_12*z_21-1")],
        vec![
            vec![p("z_11^2"), p("2*z_11*z_12"), p("z_12^2")],
            vec![p("z_11*z_21"), p("z_12*z_21+z_11*z_22"), p("z_12*z_22")],
            vec![p("z_21^2"), p("2*z_21*z_22"), p("z_22^2")],
        ],
        &s,
        &r,
    )
    .unwrap()
}

fn sl2_quadrics() -> Outcome {
    let action = sl2_action();
    let r = action.ring().clone();
    let disc = poly("b^2-4*a*c", &r);
    let ideal = action.hilbert_ideal().unwrap();
    let invariants = action.invariants().unwrap();
    let ideal_ok = ideal.len() == 1 && same_up_to_scalar(&ideal[0], &disc);
    let inv_ok = invariants.len() == 1
        && invariants[0].degree() == Some(2)
        && same_up_to_scalar(&invariants[0], &disc);
    // oracle: the discriminant is unchanged by the generic substitution
    // a,b,c -> transformed coefficients, modulo det = 1 (checked on
    // explicit unimodular matrices)
    let mut substitution_ok = true;
    for [p, q_, s, t] in [[1i64, 1, 0, 1], [2, 3, 1, 2], [0, -1, 1, 0]] {
        // (x, y) -> (p x + q y, s x + t y) sends a x^2 + b xy + c y^2 to
        // coefficients (a', b', c') computed by expansion
        let (p, q_, s, t) = (q(p), q(q_), q(s), q(t));
        for (a, b, c) in [(1i64, 2i64, 3i64), (-2, 5, 7), (0, 1, 0)] {
            let (a, b, c) = (q(a), q(b), q(c));
            let a2 = &a * &p * &p + &b * &p * &s + &c * &s * &s;
            let b2 = q(2) * &a * &p * &q_ + &b * (&p * &t + &q_ * &s) + q(2) * &c * &s * &t;
            let c2 = &a * &q_ * &q_ + &b * &q_ * &t + &c * &t * &t;
            let before = &b * &b - q(4) * &a * &c;
            let after = &b2 * &b2 - q(4) * &a2 * &c2;
            substitution_ok &= before == after;
        }
    }
    Outcome::of(
        ideal_ok && inv_ok && substitution_ok,
        format!(
            "Hilbert ideal {:?}; invariants {:?}",
            ideal.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            invariants.iter().map(|p| p.to_string()).collect::<Vec<_>>()
        ),
    )
}

fn diagonal_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x001a_7ce5);
    let mut mismatches = Vec::new();
    let mut largest = 0;
    for trial in 0..50 {
        let n = rng.gen_range(1..=4usize);
        let r = rng.gen_range(0..=2usize);
        let s = rng.gen_range(0..=1usize);
        let orders: Vec<u64> = (0..s).map(|_| rng.gen_range(2..=4)).collect();
        let w: Vec<Vec<i64>> = (0..r + s)
            .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let max_w = w
            .iter()
            .flatten()
            .map(|v| v.unsigned_abs() as u32)
            .max()
            .unwrap_or(0)
            .max(1);
        let cyclic: u32 = orders.iter().map(|&d| d as u32).product();
        let bound = n as u32 * max_w * 4 * cyclic;
        let expected = if r == 0 {
            // x_i^(prod d) is invariant, so no irreducible has a larger exponent
            let box_bound = n as u32 * cyclic;
            brute_force_irreducibles(n, 0, &orders, &w, box_bound)
        } else {
            brute_force_irreducibles(n, r, &orders, &w, bound)
        };
        let action = DiagonalAction::new(&xs(n), r, orders.clone(), w.clone()).unwrap();
        let got: BTreeSet<Vec<u32>> = action
            .invariants()
            .unwrap()
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        let top = got.iter().map(|a| a.iter().sum::<u32>()).max().unwrap_or(0);
        largest = largest.max(top);
        if got != expected || top >= bound {
            mismatches.push(format!("trial {trial}: r={r} orders={orders:?} w={w:?}"));
        }
    }
    Outcome::of(
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("50 seeded actions agree with brute force; largest generator degree {largest}")
        } else {
            mismatches.join("; ")
        },
    )
}

fn finite_oracle() -> Outcome {
    let m = |rows: &[Vec<i64>]| Matrix::from_ints(rows, Field::Rationals).unwrap();
    let groups: Vec<(&str, FiniteGroupAction)> = vec![
        (
            "S2",
            FiniteGroupAction::new(vec![m(&[vec![0, 1], vec![1, 0]])], &xs(2)).unwrap(),
        ),
        (
            "C2=+-I",
            FiniteGroupAction::new(vec![m(&[vec![-1, 0], vec![0, -1]])], &xs(2)).unwrap(),
        ),
        (
            "C3",
            FiniteGroupAction::new(vec![permutation_matrix("231", Field::Rationals).unwrap()], &xs(3))
                .unwrap(),
        ),
        ("A4", a4()),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, g) in groups {
        let gens = g.invariants_king(None).unwrap();
        let molien = g.molien_series().unwrap().series(6);
        let mut dims = Vec::new();
        for d in 0..=6u32 {
            let generated = if d == 0 { 1 } else { rank(&products(&gens, d)) };
            let fixed = g.invariant_space_basis(d).unwrap().len();
            ok &= q(generated as i64) == molien[d as usize] && generated == fixed;
            dims.push(generated);
        }
        notes.push(format!("{name} {dims:?}"));
    }
    Outcome::of(ok, notes.join(", "))
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut notes = Vec::new();

    // Reynolds operators
    let finite = a4();
    let fr = finite.ring().clone();
    let diagonal = DiagonalAction::new(&xs(3), 1, vec![3], vec![vec![1, -1, 0], vec![1, 1, 1]]).unwrap();
    let dr = diagonal.ring().clone();
    let mut reynolds_ok = true;
    for _ in 0..100 {
        let (f, g) = (random_poly(&fr, &mut rng, 4, 5), random_poly(&fr, &mut rng, 4, 5));
        let (a, b) = (q(rng.gen_range(-4..=4)), q(rng.gen_range(-4..=4)));
        let rf = finite.reynolds(&f).unwrap();
        let combo = f.scalar_mul(&a).checked_add(&g.scalar_mul(&b)).unwrap();
        let linear = rf
            .scalar_mul(&a)
            .checked_add(&finite.reynolds(&g).unwrap().scalar_mul(&b))
            .unwrap();
        reynolds_ok &= finite.reynolds(&rf).unwrap() == rf;
        reynolds_ok &= finite.reynolds(&combo).unwrap() == linear;
        reynolds_ok &= finite
            .generators()
            .iter()
            .all(|m| invring::act_on(m, &rf).unwrap() == rf);

        let (f, g) = (random_poly(&dr, &mut rng, 6, 8), random_poly(&dr, &mut rng, 6, 8));
        let rf = diagonal.reynolds(&f).unwrap();
        let combo = f.scalar_mul(&a).checked_add(&g.scalar_mul(&b)).unwrap();
        let linear = rf
            .scalar_mul(&a)
            .checked_add(&diagonal.reynolds(&g).unwrap().scalar_mul(&b))
            .unwrap();
        reynolds_ok &= diagonal.reynolds(&rf).unwrap() == rf;
        reynolds_ok &= diagonal.reynolds(&combo).unwrap() == linear;
        reynolds_ok &= rf
            .terms()
            .iter()
            .all(|(m, _)| invariant_exponent(m.exponents(), 1, &[3], diagonal.weights()));
    }
    notes.push(format!(
        "Reynolds (A4 and torus x Z/3, 100 pairs each): {reynolds_ok}"
    ));

    // reduced Gröbner bases do not depend on generator order
    let gr = ring(&["x", "y", "z"]);
    let mut gb_ok = true;
    for _ in 0..20 {
        let k = rng.gen_range(2..=3);
        let gens: Vec<Polynomial> = (0..k)
            .map(|_| loop {
                let f = random_poly(&gr, &mut rng, 2, 3);
                if !f.is_zero() {
                    break f;
                }
            })
            .collect();
        let reference = buchberger(&gens, TermOrder::GRevLex, None)
            .unwrap()
            .into_elements();
        for _ in 0..3 {
            let mut shuffled = gens.clone();
            shuffled.shuffle(&mut rng);
            gb_ok &= buchberger(&shuffled, TermOrder::GRevLex, None)
                .unwrap()
                .into_elements()
                == reference;
        }
        // every generator lies in the ideal of the basis
        let gb = buchberger(&gens, TermOrder::GRevLex, None).unwrap();
        gb_ok &= gens.iter().all(|g| gb.contains(g).unwrap());
    }
    notes.push(format!("reduced GB permutation invariance (20 ideals): {gb_ok}"));

    // Hilbert bases of {c : sum c_j v_j = 0}
    let mut hb_ok = true;
    for _ in 0..20 {
        let n = rng.gen_range(2..=4usize);
        let rows = rng.gen_range(1..=2usize);
        let w: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let columns: Vec<Vec<i64>> = (0..n).map(|j| w.iter().map(|row| row[j]).collect()).collect();
        let basis = torus_hilbert_basis(&columns);
        let solves = |c: &[u32]| {
            w.iter()
                .all(|row| row.iter().zip(c).map(|(a, &b)| a * b as i64).sum::<i64>() == 0)
        };
        hb_ok &= basis.iter().all(|c| solves(c) && c.iter().any(|&e| e > 0));
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                hb_ok &= i == j || !a.iter().zip(b).all(|(x, y)| x <= y);
            }
        }
        let all = brute_force_all(n, 6, &solves);
        hb_ok &= all.iter().all(|c| decomposes(c, &basis));
    }
    notes.push(format!(
        "Hilbert basis minimality and completeness to degree 6 (20 systems): {hb_ok}"
    ));

    // elimination on the cuspidal cubic
    let cr = ring(&["x", "y", "z"]);
    let eliminated = elimination_ideal(&[poly("y-x^2", &cr), poly("z-x^3", &cr)], &[0]).unwrap();
    let cusp = poly("y^3-z^2", &cr);
    let elim_ok = eliminated.len() == 1 && same_up_to_scalar(&eliminated[0], &cusp);
    notes.push(format!(
        "cusp elimination: {:?}",
        eliminated.iter().map(|p| p.to_string()).collect::<Vec<_>>()
    ));

    Outcome::of(reynolds_ok && gb_ok && hb_ok && elim_ok, notes.join("; "))
}

fn brute_force_all(n: usize, bound: u32, keep: &dyn Fn(&[u32]) -> bool) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut a = vec![0u32; n];
    fn go(j: usize, left: u32, a: &mut Vec<u32>, keep: &dyn Fn(&[u32]) -> bool, out: &mut Vec<Vec<u32>>) {
        if j == a.len() {
            if keep(a) {
                out.push(a.clone());
            }
            return;
        }
        for e in 0..=left {
            a[j] = e;
            go(j + 1, left - e, a, keep, out);
        }
        a[j] = 0;
    }
    go(0, bound, &mut a, keep, &mut out);
    out
}

/// Whether `c` is a sum of elements of `basis` (with repetition).
fn decomposes(c: &[u32], basis: &[Vec<u32>]) -> bool {
    if c.iter().all(|&e| e == 0) {
        return true;
    }
    basis.iter().any(|b| {
        b.iter().zip(c).all(|(x, y)| x <= y) && {
            let rest: Vec<u32> = c.iter().zip(b).map(|(x, y)| x - y).collect();
            decomposes(&rest, basis)
        }
    })
}

fn cross_module() -> Outcome {
    let r = ring(&["x", "y"]);
    let g = ring(&["t", "s"]);
    let reductive = LinearlyReductiveAction::new(
        vec![poly("t*s-1", &g)],
        vec![
            vec![poly("t", &g), poly("0", &g)],
            vec![poly("0", &g), poly("s", &g)],
        ],
        &g,
        &r,
    )
    .unwrap();
    let diagonal = DiagonalAction::new(&r, 1, vec![], vec![vec![1, -1]]).unwrap();
    let from_reductive = reductive.invariants().unwrap();
    let from_diagonal = diagonal.to_polynomials(&diagonal.invariants().unwrap());
    let mut ok = from_reductive.len() == from_diagonal.len()
        && from_reductive
            .iter()
            .zip(&from_diagonal)
            .all(|(a, b)| same_up_to_scalar(a, b));
    let mut dims = Vec::new();
    for d in 1..=6u32 {
        let basis = reductive.invariant_basis(d).unwrap();
        let monomials = r
            .monomial_basis(d)
            .iter()
            .filter(|m| invariant_exponent(m.exponents(), 1, &[], &[vec![1, -1]]))
            .count();
        let generated = rank(&products(&from_diagonal, d));
        ok &= basis.len() == monomials && generated == monomials;
        dims.push(basis.len());
    }
    Outcome::of(
        ok,
        format!(
            "reductive generators {:?}, diagonal generators {:?}, per-degree dimensions {dims:?}",
            from_reductive.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            from_diagonal.iter().map(|p| p.to_string()).collect::<Vec<_>>()
        ),
    )
}
