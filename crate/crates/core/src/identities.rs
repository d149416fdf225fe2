//! Polynomial identity checks on computed centralizers.
//!
//! The standard polynomial S_r is the signed sum of all r! products of r
//! distinct variables. Direct term-by-term evaluation is exponential in
//! r!, so the checker evaluates S_r with a subset dynamic program costing
//! 2^r matrix products, with a flat word-level kernel for prime fields.
//! Identities are multilinear, so vanishing on a spanning set is
//! vanishing everywhere; the checkers sample random central combinations
//! of the realized centralizer basis, or enumerate all basis tuples when
//! that count is small enough to be exhaustive.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::centralizer::{structured_basis, CentralizerBasis};
use crate::error::Error;
use crate::matrix::Matrix;
use crate::scalar::{Domain, Scalar};
use crate::structure::{pi_degree, semisimple_multiplicities};

/// Exhaustive spanning-set enumeration is used up to this many tuples.
pub const SPANNING_LIMIT: u64 = 100_000;

/// Term-level limit for materialized standard polynomials (r! terms).
const MAX_MATERIALIZED_DEGREE: usize = 8;

/// Degree limit for the generic (big-integer) evaluation path; prime
/// fields use the flat kernel and have no practical limit at desk scale.
const MAX_GENERIC_DEGREE: usize = 12;

/// A multilinear polynomial in noncommuting variables: a list of
/// (central coefficient, permutation) monomials.
#[derive(Debug, Clone)]
pub struct MultilinearPoly {
    domain: Domain,
    arity: usize,
    terms: Vec<(Scalar, Vec<usize>)>,
}

impl MultilinearPoly {
    pub fn new(domain: Domain, arity: usize, terms: Vec<(Scalar, Vec<usize>)>) -> MultilinearPoly {
        let mut seen = std::collections::HashSet::new();
        for (c, perm) in &terms {
            assert!(c.is_central(), "coefficients must be central");
            assert_eq!(perm.len(), arity, "monomial arity mismatch");
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..arity).collect::<Vec<_>>(), "not a permutation");
            assert!(seen.insert(perm.clone()), "duplicate permutation");
        }
        MultilinearPoly { domain, arity, terms }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[(Scalar, Vec<usize>)] {
        &self.terms
    }
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The standard polynomial S_r as an explicit term list. Only sensible for
/// small r; the evaluator below never materializes the terms.
pub fn standard_poly(domain: Domain, r: usize) -> MultilinearPoly {
    assert!(r >= 1 && r <= MAX_MATERIALIZED_DEGREE, "materialized S_r is capped at degree 8");
    let mut terms = Vec::new();
    let mut perm: Vec<usize> = (0..r).collect();
    loop {
        terms.push((domain.from_int(permutation_sign(&perm)), perm.clone()));
        // next permutation in lexicographic order
        let Some(i) = (0..r - 1).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
        let j = (i + 1..r).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    MultilinearPoly::new(domain, r, terms)
}

/// Evaluates a multilinear polynomial at square matrices, term by term.
pub fn eval_poly(f: &MultilinearPoly, args: &[Matrix]) -> Matrix {
    assert_eq!(args.len(), f.arity(), "arity mismatch");
    let d = args[0].rows();
    for a in args {
        assert!(a.is_square() && a.rows() == d && a.domain() == f.domain);
    }
    let mut acc = Matrix::zeros(f.domain, d, d);
    for (coeff, perm) in &f.terms {
        let mut prod = args[perm[0]].clone();
        for &idx in &perm[1..] {
            prod = prod.matmul(&args[idx]);
        }
        acc = acc.add(&prod.scale(coeff));
    }
    acc
}

/// Evaluates the standard polynomial S_r at the given matrices with the
/// subset dynamic program: g(T) sums the signed products over all
/// orderings of T and extends one factor at a time.
pub fn eval_standard(args: &[Matrix]) -> Matrix {
    let r = args.len();
    assert!(r >= 1, "S_r needs at least one argument");
    let domain = args[0].domain();
    let d = args[0].rows();
    for a in args {
        assert!(a.is_square() && a.rows() == d && a.domain() == domain);
    }
    if let Domain::PrimeField(p) = domain {
        if p.get() < (1 << 24) {
            return eval_standard_fp(args, p.get());
        }
    }
    assert!(
        r <= MAX_GENERIC_DEGREE,
        "generic standard-polynomial evaluation is capped at degree {MAX_GENERIC_DEGREE}"
    );
    let full = 1usize << r;
    let mut g: Vec<Option<Matrix>> = vec![None; full];
    for (i, a) in args.iter().enumerate() {
        g[1 << i] = Some(a.clone());
    }
    for mask in 1..full {
        if mask.count_ones() <= 1 {
            continue;
        }
        let mut acc = Matrix::zeros(domain, d, d);
        for i in 0..r {
            if mask & (1 << i) == 0 {
                continue;
            }
            let sub = mask ^ (1 << i);
            let prod = g[sub].as_ref().unwrap().matmul(&args[i]);
            // sign flip per larger element already in the subset
            if (mask >> (i + 1)).count_ones() % 2 == 0 {
                acc = acc.add(&prod);
            } else {
                acc = acc.sub(&prod);
            }
        }
        g[mask] = Some(acc);
    }
    g[full - 1].take().unwrap()
}

/// Flat word-level kernel for prime fields: matrices are u64 buffers and
/// the whole DP table lives in one allocation.
fn eval_standard_fp(args: &[Matrix], p: u64) -> Matrix {
    let r = args.len();
    let d = args[0].rows();
    let dd = d * d;
    let flat: Vec<Vec<u64>> = args
        .iter()
        .map(|m| {
            m.data()
                .iter()
                .map(|s| match s {
                    Scalar::Fp { val, .. } => *val,
                    _ => unreachable!(),
                })
                .collect()
        })
        .collect();
    let full = 1usize << r;
    let mut g: Vec<u64> = vec![0; full * dd];
    for (i, m) in flat.iter().enumerate() {
        g[(1 << i) * dd..(1 << i) * dd + dd].copy_from_slice(m);
    }
    // entries stay below p < 2^24, so a row of <= 16 accumulated products
    // fits in u64 with one reduction per entry
    let mut prod = vec![0u64; dd];
    for mask in 1..full {
        if mask.count_ones() <= 1 {
            continue;
        }
        let base = mask * dd;
        for i in 0..r {
            if mask & (1 << i) == 0 {
                continue;
            }
            let sub = (mask ^ (1 << i)) * dd;
            let rhs = &flat[i];
            for row in 0..d {
                let out_row = &mut prod[row * d..row * d + d];
                out_row.fill(0);
                let lhs_row = &g[sub + row * d..sub + row * d + d];
                for (t, &a) in lhs_row.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let rhs_row = &rhs[t * d..t * d + d];
                    for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                        *o += a * b;
                    }
                }
            }
            let negate = (mask >> (i + 1)).count_ones() % 2 == 1;
            for (e, v) in prod.iter().enumerate() {
                let v = v % p;
                let v = if negate { p - v } else { v };
                g[base + e] = (g[base + e] + v) % p;
            }
        }
    }
    let out = &g[(full - 1) * dd..full * dd];
    Matrix::from_fn(args[0].domain(), d, d, |i, j| Scalar::Fp { val: out[i * d + j], p })
}

/// Random central coefficient: the pool is -2..=2 over the rationals and
/// quaternions (whose center is rational), and the full field over F_p.
pub fn random_central_coefficient(domain: Domain, rng: &mut ChaCha8Rng) -> Scalar {
    match domain {
        Domain::PrimeField(p) => Scalar::Fp { val: rng.gen_range(0..p.get()), p: p.get() },
        _ => domain.from_int(rng.gen_range(-2..=2)),
    }
}

/// Random central combination of the given matrices.
pub fn random_combination(mats: &[Matrix], rng: &mut ChaCha8Rng) -> Matrix {
    assert!(!mats.is_empty());
    let domain = mats[0].domain();
    let mut acc = Matrix::zeros(domain, mats[0].rows(), mats[0].cols());
    for m in mats {
        let c = random_central_coefficient(domain, rng);
        if !c.is_zero() {
            acc = acc.add(&m.scale(&c));
        }
    }
    acc
}

/// One failed substitution: the trial index that produced a nonzero value.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct IdentityFailure {
    pub trial: u64,
}

/// Outcome of an identity check.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: String,
    pub degree: u64,
    pub trials: u64,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn guard_generic_degree(domain: Domain, degree: usize) -> Result<(), Error> {
    let fast = matches!(domain, Domain::PrimeField(p) if p.get() < (1 << 24));
    if !fast && degree > MAX_GENERIC_DEGREE {
        return Err(Error::DimensionTooLarge { dim: degree, max: MAX_GENERIC_DEGREE });
    }
    Ok(())
}

/// Checks a standard identity S_degree on random central combinations of
/// the realized centralizer basis of A.
pub fn check_standard_identity_of_degree(
    a: &Matrix,
    degree: usize,
    trials: u64,
    seed: u64,
) -> Result<IdentityReport, Error> {
    if !a.domain().is_commutative() {
        return Err(Error::UnsupportedDomain { op: "check_standard_identity", domain: a.domain() });
    }
    guard_generic_degree(a.domain(), degree)?;
    let cb = structured_basis(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let args: Vec<Matrix> =
            (0..degree).map(|_| random_combination(cb.realized(), &mut rng)).collect();
        if !eval_standard(&args).is_zero() {
            failures.push(IdentityFailure { trial });
        }
    }
    Ok(IdentityReport { identity: format!("S_{degree}"), degree: degree as u64, trials, failures })
}

/// The degree-2m standard identity of the centralizer, where m is the
/// kernel dimension (block count) of the nilpotent matrix.
pub fn check_standard_identity(
    a: &Matrix,
    trials: u64,
    seed: u64,
) -> Result<IdentityReport, Error> {
    let m = a.nullspace().len();
    check_standard_identity_of_degree(a, 2 * m, trials, seed)
}

/// Number of basis tuples the spanning check would enumerate, when small
/// enough to bother with.
pub fn spanning_tuple_count(basis_len: usize, arity: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..arity {
        acc = acc.checked_mul(basis_len as u64)?;
        if acc > SPANNING_LIMIT {
            return None;
        }
    }
    Some(acc)
}

/// Deterministic complete check of S_{2m} on every tuple of basis
/// elements; by multilinearity this proves the identity on the whole
/// centralizer. Only available when the tuple count is at most
/// `SPANNING_LIMIT`.
pub fn check_standard_identity_spanning(a: &Matrix) -> Result<IdentityReport, Error> {
    if !a.domain().is_commutative() {
        return Err(Error::UnsupportedDomain { op: "check_standard_identity", domain: a.domain() });
    }
    let cb = structured_basis(a)?;
    let degree = 2 * cb.jtype().block_count();
    guard_generic_degree(a.domain(), degree)?;
    let count = spanning_tuple_count(cb.len(), degree)
        .unwrap_or_else(|| panic!("spanning enumeration above {SPANNING_LIMIT} tuples"));
    let mut failures = Vec::new();
    let mut indices = vec![0usize; degree];
    for trial in 0..count {
        let args: Vec<Matrix> = indices.iter().map(|&i| cb.realized()[i].clone()).collect();
        if !eval_standard(&args).is_zero() {
            failures.push(IdentityFailure { trial });
        }
        // odometer
        for pos in (0..degree).rev() {
            indices[pos] += 1;
            if indices[pos] < cb.len() {
                break;
            }
            indices[pos] = 0;
        }
    }
    Ok(IdentityReport {
        identity: format!("S_{degree}"),
        degree: degree as u64,
        trials: count,
        failures,
    })
}

/// Checks the product identity: n*v copies of S_{2p} multiplied together
/// vanish on the centralizer, where p is the PI-degree, n the nilpotency
/// index and v the number of distinct block sizes. Each copy is evaluated
/// on fresh random centralizer elements.
///
/// S_{2p} alone is an identity of every matrix summand of the semisimple
/// quotient, so each copy lands in the radical part; n*v copies of
/// anything in that part multiply to zero.
pub fn check_product_identity(a: &Matrix, trials: u64, seed: u64) -> Result<IdentityReport, Error> {
    if !a.domain().is_field() {
        return Err(Error::UnsupportedDomain { op: "check_product_identity", domain: a.domain() });
    }
    let cb = structured_basis(a)?;
    let jt = cb.jtype();
    let p = pi_degree(jt);
    let copies = jt.index() * jt.distinct_sizes();
    let degree = 2 * p;
    guard_generic_degree(a.domain(), degree)?;
    let d = a.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let mut product = Matrix::identity(a.domain(), d);
        for _ in 0..copies {
            let args: Vec<Matrix> =
                (0..degree).map(|_| random_combination(cb.realized(), &mut rng)).collect();
            product = product.matmul(&eval_standard(&args));
        }
        if !product.is_zero() {
            failures.push(IdentityFailure { trial });
        }
    }
    Ok(IdentityReport {
        identity: format!("(S_{degree})^{copies}"),
        degree: (degree * copies) as u64,
        trials,
        failures,
    })
}

/// A tuple on which a standard polynomial does not vanish, with the value.
#[derive(Debug, Clone)]
pub struct NonIdentityWitness {
    pub degree: usize,
    pub args: Vec<Matrix>,
    pub value: Matrix,
}

fn find_unit(cb: &CentralizerBasis, row: usize, col: usize) -> Matrix {
    let idx = cb
        .tags()
        .iter()
        .position(|t| t.row == row && t.col == col && t.power == 0 && t.center_index == 0)
        .expect("degree-zero unit exists between equal-size blocks");
    cb.realized()[idx].clone()
}

/// Exhibits a nonvanishing value of S_{2p-2} on semisimple-quotient
/// representatives whenever the PI-degree p is at least 2, by walking the
/// staircase of matrix units inside a maximal family of equal-size blocks.
/// Returns None when p < 2 (the centralizer is then commutative).
pub fn standard_nonidentity_witness(a: &Matrix) -> Result<Option<NonIdentityWitness>, Error> {
    if !a.domain().is_field() {
        return Err(Error::UnsupportedDomain {
            op: "standard_nonidentity_witness",
            domain: a.domain(),
        });
    }
    let cb = structured_basis(a)?;
    let jt = cb.jtype().clone();
    let p = pi_degree(&jt);
    if p < 2 {
        return Ok(None);
    }
    // first size class (largest size) achieving the maximal multiplicity
    let mults = semisimple_multiplicities(&jt);
    let (class_size, _) = *mults.iter().find(|&&(_, count)| count == p).unwrap();
    let blocks: Vec<usize> =
        (0..jt.block_count()).filter(|&g| jt.sizes()[g] == class_size).collect();
    // unit(a, b) acts like the matrix unit E_ab of the p x p summand
    let unit = |x: usize, y: usize| find_unit(&cb, blocks[y], blocks[x]);
    let mut args = Vec::with_capacity(2 * p - 2);
    for i in 0..p - 1 {
        args.push(unit(i, i));
        args.push(unit(i, i + 1));
    }
    let value = eval_standard(&args);
    assert!(!value.is_zero(), "staircase evaluation of S_{} must be nonzero", 2 * p - 2);
    Ok(Some(NonIdentityWitness { degree: 2 * p - 2, args, value }))
}
