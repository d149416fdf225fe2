//! Structure of the centralizer as an abstract algebra.
//!
//! Over a field the centralizer of a nilpotent matrix is presented as a
//! monomial algebra: entry (i, j) of an m x m matrix holds truncated
//! polynomials mod z^{k_i} whose degrees start at the transposed shift
//! gap. The basis monomials z^a E_{i,j} multiply by concatenation, which
//! makes the radical, the semisimple quotient and the nilpotency index
//! directly computable. A trace-form oracle over the rationals provides
//! an independent check of the radical dimension.

use serde::{Deserialize, Serialize};

use crate::centralizer::{dimension_formula, span_rank};
use crate::error::Error;
use crate::jordan::JordanType;
use crate::matrix::Matrix;
use crate::scalar::{Domain, Scalar};

/// A basis monomial z^power E_{row,col} of the centralizer presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub row: usize,
    pub col: usize,
    pub power: usize,
}

/// The centralizer of a nilpotent matrix of the given type, presented on
/// its monomial basis with the full multiplication table. The structure
/// constants are 0/1 and independent of the base field.
#[derive(Debug, Clone)]
pub struct CentralizerAlgebra {
    jtype: JordanType,
    monomials: Vec<Monomial>,
    /// table[x * dim + y] = index of the product monomial, None when zero
    table: Vec<Option<usize>>,
}

/// Degree window of entry (i, j): the truncation modulus is the row size
/// k_i and the floor is the transposed shift gap.
fn entry_window(jtype: &JordanType, row: usize, col: usize) -> std::ops::Range<usize> {
    jtype.shift_gap(col, row)..jtype.sizes()[row]
}

impl CentralizerAlgebra {
    /// Enumerates the monomial basis (row, then column, then ascending
    /// power), computes the multiplication table, and asserts closure and
    /// the dimension count.
    pub fn new(jtype: &JordanType) -> CentralizerAlgebra {
        let m = jtype.block_count();
        let mut monomials = Vec::new();
        for row in 0..m {
            for col in 0..m {
                for power in entry_window(jtype, row, col) {
                    monomials.push(Monomial { row, col, power });
                }
            }
        }
        assert_eq!(
            monomials.len() as u64,
            dimension_formula(jtype, Domain::Rationals),
            "monomial count must match the dimension formula"
        );
        let index_of = |row: usize, col: usize, power: usize| -> usize {
            monomials
                .iter()
                .position(|mo| mo.row == row && mo.col == col && mo.power == power)
                .expect("product monomial is in the basis")
        };
        let dim = monomials.len();
        let mut table = vec![None; dim * dim];
        for (x, a) in monomials.iter().enumerate() {
            for (y, b) in monomials.iter().enumerate() {
                if a.col != b.row {
                    continue;
                }
                let power = a.power + b.power;
                if power >= jtype.sizes()[a.row] {
                    continue;
                }
                // closure: the concatenated power clears the window floor
                assert!(
                    entry_window(jtype, a.row, b.col).contains(&power),
                    "product monomial escaped its window"
                );
                table[x * dim + y] = Some(index_of(a.row, b.col, power));
            }
        }
        CentralizerAlgebra { jtype: jtype.clone(), monomials, table }
    }

    pub fn jtype(&self) -> &JordanType {
        &self.jtype
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Index of the product of two basis monomials, None when it is zero.
    pub fn mul_monomials(&self, x: usize, y: usize) -> Option<usize> {
        self.table[x * self.dim() + y]
    }

    /// Indices of the radical basis: every monomial of positive degree,
    /// plus the degree-zero monomials connecting blocks of unequal size.
    pub fn radical_monomials(&self) -> Vec<usize> {
        self.monomials
            .iter()
            .enumerate()
            .filter(|(_, mo)| {
                mo.power >= 1 || self.jtype.sizes()[mo.row] != self.jtype.sizes()[mo.col]
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Verifies that the radical span is a two-sided ideal.
    pub fn radical_is_ideal(&self) -> bool {
        let rad: std::collections::HashSet<usize> = self.radical_monomials().into_iter().collect();
        for &r in &rad {
            for x in 0..self.dim() {
                for prod in [self.mul_monomials(r, x), self.mul_monomials(x, r)] {
                    if let Some(p) = prod {
                        if !rad.contains(&p) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Measured nilpotency index of the radical: the least t with every
    /// product of t radical monomials equal to zero.
    pub fn radical_nilpotency_index(&self) -> usize {
        let rad = self.radical_monomials();
        if rad.is_empty() {
            return 1;
        }
        let mut reachable: std::collections::HashSet<usize> = rad.iter().copied().collect();
        let mut t = 1usize;
        while !reachable.is_empty() {
            let mut next = std::collections::HashSet::new();
            for &r in &rad {
                for &s in &reachable {
                    if let Some(p) = self.mul_monomials(r, s) {
                        next.insert(p);
                    }
                }
            }
            reachable = next;
            t += 1;
            assert!(t <= self.dim() + 2, "radical power iteration must terminate");
        }
        t
    }

    /// Degree-zero monomials between equal-size blocks: coset
    /// representatives of the semisimple quotient.
    pub fn quotient_monomials(&self) -> Vec<usize> {
        self.monomials
            .iter()
            .enumerate()
            .filter(|(_, mo)| {
                mo.power == 0 && self.jtype.sizes()[mo.row] == self.jtype.sizes()[mo.col]
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Checks the matrix-unit relations E_ab E_cd = delta_bc E_ad on the
    /// quotient representatives, with products computed in the algebra and
    /// projected modulo the radical.
    pub fn quotient_units_verified(&self) -> bool {
        let rad: std::collections::HashSet<usize> = self.radical_monomials().into_iter().collect();
        let quot = self.quotient_monomials();
        for &x in &quot {
            for &y in &quot {
                let a = self.monomials[x];
                let b = self.monomials[y];
                let prod = self.mul_monomials(x, y).filter(|p| !rad.contains(p));
                let expected = if a.col == b.row {
                    // same middle block, so the two size classes coincide
                    quot.iter().copied().find(|&i| {
                        self.monomials[i].row == a.row
                            && self.monomials[i].col == b.col
                            && self.monomials[i].power == 0
                    })
                } else {
                    None
                };
                if prod != expected {
                    return false;
                }
            }
        }
        true
    }
}

/// Multiplicity p_e of each block size e, largest size first.
pub fn semisimple_multiplicities(jtype: &JordanType) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &k in jtype.sizes() {
        match out.last_mut() {
            Some((size, count)) if *size == k => *count += 1,
            _ => out.push((k, 1)),
        }
    }
    debug_assert_eq!(out.iter().map(|(e, p)| e * p).sum::<usize>(), jtype.dim());
    out
}

/// PI-degree of the centralizer: the maximal number of equal block sizes.
pub fn pi_degree(jtype: &JordanType) -> usize {
    semisimple_multiplicities(jtype).iter().map(|&(_, p)| p).max().unwrap_or(0)
}

/// Structure summary of the centralizer of a nilpotent matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub sizes: Vec<usize>,
    pub total_dim: u64,
    pub radical_dim: u64,
    pub radical_basis: Vec<Monomial>,
    /// (block size e, multiplicity p_e), largest size first
    pub multiplicities: Vec<(usize, usize)>,
    /// number of nonzero matrix summands in the semisimple quotient
    pub summand_count: u64,
    /// number of distinct block sizes
    pub distinct_sizes: u64,
    pub radical_nilpotency_index: u64,
    /// upper bound n * v on the radical nilpotency index
    pub nilpotency_bound: u64,
    pub pi_degree: u64,
    pub quotient_units_verified: bool,
}

impl StructureReport {
    /// Computes the full report and asserts the internal identities:
    /// total = radical + sum of p_e^2, and the measured nilpotency index
    /// stays within the n * v bound.
    pub fn compute(jtype: &JordanType) -> StructureReport {
        let ca = CentralizerAlgebra::new(jtype);
        let radical = ca.radical_monomials();
        assert!(ca.radical_is_ideal(), "radical span must be an ideal");
        let mults = semisimple_multiplicities(jtype);
        let semisimple_dim: u64 = mults.iter().map(|&(_, p)| (p * p) as u64).sum();
        let total = ca.dim() as u64;
        assert_eq!(total, radical.len() as u64 + semisimple_dim);
        let measured = ca.radical_nilpotency_index() as u64;
        let bound = (jtype.index() * jtype.distinct_sizes()) as u64;
        assert!(measured <= bound, "radical nilpotency index exceeded n*v");
        let verified = ca.quotient_units_verified();
        assert!(verified, "quotient matrix units must satisfy the unit relations");
        StructureReport {
            sizes: jtype.sizes().to_vec(),
            total_dim: total,
            radical_dim: radical.len() as u64,
            radical_basis: radical.iter().map(|&i| ca.monomials()[i]).collect(),
            summand_count: mults.len() as u64,
            distinct_sizes: jtype.distinct_sizes() as u64,
            multiplicities: mults,
            radical_nilpotency_index: measured,
            nilpotency_bound: bound,
            pi_degree: pi_degree(jtype) as u64,
            quotient_units_verified: verified,
        }
    }
}

/// Reduces v against rows already in echelon form (pivot column, row).
fn reduce_against(echelon: &[(usize, Vec<Scalar>)], v: &mut [Scalar]) {
    for (pivot, row) in echelon {
        let c = v[*pivot].clone();
        if c.is_zero() {
            continue;
        }
        for (x, r) in v.iter_mut().zip(row) {
            if !r.is_zero() {
                let t = c.mul(r);
                *x = x.sub(&t);
            }
        }
    }
}

/// Radical dimension of a matrix algebra over Q, computed independently of
/// the structured presentation as the kernel of the trace bilinear form
/// (x, y) -> trace(xy). Valid in characteristic zero for a subalgebra of
/// a matrix ring; the span must be multiplicatively closed, which is
/// verified before anything else.
pub fn trace_form_radical_oracle(basis: &[Matrix]) -> Result<usize, Error> {
    assert!(!basis.is_empty(), "oracle needs a nonempty basis");
    let domain = basis[0].domain();
    if domain != Domain::Rationals {
        return Err(Error::UnsupportedDomain { op: "trace_form_radical_oracle", domain });
    }
    let d = basis[0].rows();
    for b in basis {
        assert!(b.is_square() && b.rows() == d && b.domain() == domain);
    }
    let n = basis.len();
    assert_eq!(span_rank(basis), n, "oracle input must be linearly independent");

    // echelonized span for membership tests
    let mut echelon: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for b in basis {
        let mut v = b.data().to_vec();
        reduce_against(&echelon, &mut v);
        let pivot = v.iter().position(|c| !c.is_zero()).expect("independent row");
        let inv = v[pivot].invert().unwrap();
        for x in v.iter_mut() {
            *x = inv.mul(x);
        }
        echelon.push((pivot, v));
    }

    let mut gram = Matrix::zeros(domain, n, n);
    for i in 0..n {
        for j in 0..n {
            let prod = basis[i].matmul(&basis[j]);
            let mut v = prod.data().to_vec();
            reduce_against(&echelon, &mut v);
            if v.iter().any(|c| !c.is_zero()) {
                return Err(Error::NotClosed);
            }
            gram[(i, j)] = prod.trace();
        }
    }
    Ok(n - gram.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::structured_basis;
    use crate::matrix::from_ints;

    fn q() -> Domain {
        Domain::Rationals
    }

    fn jt(sizes: &[usize]) -> JordanType {
        JordanType::new(sizes.to_vec())
    }

    #[test]
    fn monomial_counts() {
        let ca = CentralizerAlgebra::new(&jt(&[2, 1]));
        assert_eq!(ca.dim(), 5);
        // entry dimensions [[2, 1], [1, 1]]
        let count =
            |row, col| ca.monomials().iter().filter(|m| m.row == row && m.col == col).count();
        assert_eq!(count(0, 0), 2);
        assert_eq!(count(0, 1), 1);
        assert_eq!(count(1, 0), 1);
        assert_eq!(count(1, 1), 1);

        assert_eq!(CentralizerAlgebra::new(&jt(&[1, 1])).dim(), 4);
        assert_eq!(CentralizerAlgebra::new(&jt(&[3])).dim(), 3);
    }

    #[test]
    fn radical_examples() {
        // semisimple: centralizer of zero is the full matrix algebra
        let ca = CentralizerAlgebra::new(&jt(&[1, 1, 1]));
        assert!(ca.radical_monomials().is_empty());
        assert_eq!(ca.radical_nilpotency_index(), 1);

        // truncated polynomial ring: radical is (z), of index 3
        let ca = CentralizerAlgebra::new(&jt(&[3]));
        let rad = ca.radical_monomials();
        assert_eq!(rad.len(), 2);
        for &i in &rad {
            assert!(ca.monomials()[i].power >= 1);
        }
        assert!(ca.radical_is_ideal());
        assert_eq!(ca.radical_nilpotency_index(), 3);

        let report = StructureReport::compute(&jt(&[2, 2, 1]));
        assert_eq!(report.total_dim, 13);
        assert_eq!(report.radical_dim, 8); // 13 - (2^2 + 1^2)
    }

    #[test]
    fn multiplicities_and_pi_degree() {
        assert_eq!(semisimple_multiplicities(&jt(&[2, 2, 1])), vec![(2, 2), (1, 1)]);
        assert_eq!(semisimple_multiplicities(&jt(&[3])), vec![(3, 1)]);
        assert_eq!(semisimple_multiplicities(&jt(&[1, 1, 1])), vec![(1, 3)]);
        assert_eq!(pi_degree(&jt(&[2, 2, 1])), 2);
        assert_eq!(pi_degree(&jt(&[3])), 1);
        assert_eq!(pi_degree(&jt(&[1, 1, 1])), 3);
    }

    #[test]
    fn strict_inequality_in_nilpotency_bound_occurs() {
        let report = StructureReport::compute(&jt(&[2, 1]));
        assert_eq!(report.radical_nilpotency_index, 3);
        assert_eq!(report.nilpotency_bound, 4);
    }

    #[test]
    fn trace_oracle_examples() {
        // full 2x2 matrix algebra: semisimple
        let units = vec![
            from_ints(q(), &[&[1, 0], &[0, 0]]),
            from_ints(q(), &[&[0, 1], &[0, 0]]),
            from_ints(q(), &[&[0, 0], &[1, 0]]),
            from_ints(q(), &[&[0, 0], &[0, 1]]),
        ];
        assert_eq!(trace_form_radical_oracle(&units).unwrap(), 0);

        // span of I and a 2x2 shift block: radical is the shift
        let j2 = jt(&[2]).canonical_matrix(q());
        let basis = vec![Matrix::identity(q(), 2), j2];
        assert_eq!(trace_form_radical_oracle(&basis).unwrap(), 1);

        // realized centralizer basis of type (2,2,1): radical dimension 8
        let a = jt(&[2, 2, 1]).canonical_matrix(q());
        let cb = structured_basis(&a).unwrap();
        assert_eq!(trace_form_radical_oracle(cb.realized()).unwrap(), 8);
    }

    #[test]
    fn trace_oracle_rejects_non_closed_spans() {
        let basis = vec![
            Matrix::identity(q(), 2),
            from_ints(q(), &[&[0, 1], &[0, 0]]),
            from_ints(q(), &[&[0, 0], &[1, 0]]),
        ];
        assert_eq!(trace_form_radical_oracle(&basis), Err(Error::NotClosed));
    }

    #[test]
    fn structured_radical_matches_oracle_on_small_types() {
        for sizes in [vec![2, 1], vec![3, 1], vec![2, 2], vec![3, 2, 1], vec![1, 1, 1]] {
            let t = jt(&sizes);
            let a = t.canonical_matrix(q());
            let cb = structured_basis(&a).unwrap();
            let oracle = trace_form_radical_oracle(cb.realized()).unwrap();
            let report = StructureReport::compute(&t);
            assert_eq!(oracle as u64, report.radical_dim, "type {sizes:?}");
        }
    }

    #[test]
    fn quotient_units_hold_for_all_small_types() {
        for d in 1..=6 {
            for t in crate::jordan::partitions_of(d) {
                let ca = CentralizerAlgebra::new(&t);
                assert!(ca.quotient_units_verified(), "type {:?}", t.sizes());
            }
        }
    }
}
