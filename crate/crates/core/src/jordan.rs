//! Nilpotent Jordan normal bases.
//!
//! A Jordan base organizes the ambient space into chains
//! x_{g,1}, ..., x_{g,k_g} with A x_{g,i} = x_{g,i+1} and A x_{g,k_g} = 0.
//! The chain construction works over all three scalar domains; only
//! left-linear elimination is used, so the quaternion case runs through
//! the same code path.

use crate::error::Error;
use crate::matrix::Matrix;
use crate::scalar::{Domain, Scalar};

/// Multiset of chain lengths k_1 >= k_2 >= ... >= k_m >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JordanType {
    sizes: Vec<usize>,
}

impl JordanType {
    /// Sorts the sizes into canonical nonincreasing order.
    pub fn new(mut sizes: Vec<usize>) -> JordanType {
        assert!(!sizes.is_empty(), "a Jordan type needs at least one block");
        assert!(sizes.iter().all(|&k| k >= 1), "block sizes must be positive");
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        JordanType { sizes }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of blocks m; equals the kernel dimension of the matrix.
    pub fn block_count(&self) -> usize {
        self.sizes.len()
    }

    /// Total dimension d.
    pub fn dim(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Index of nilpotency n = k_1.
    pub fn index(&self) -> usize {
        self.sizes[0]
    }

    /// Number of distinct block sizes.
    pub fn distinct_sizes(&self) -> usize {
        let mut v = 0;
        for (i, &k) in self.sizes.iter().enumerate() {
            if i == 0 || self.sizes[i - 1] != k {
                v += 1;
            }
        }
        v
    }

    /// The shift gap k_{row,col} = k_col - k_row when k_row < k_col, else 0.
    pub fn shift_gap(&self, row: usize, col: usize) -> usize {
        let (kr, kc) = (self.sizes[row], self.sizes[col]);
        if kr < kc {
            kc - kr
        } else {
            0
        }
    }

    /// Degree window of the (row, col) entry: powers k_{row,col} .. k_col.
    pub fn window(&self, row: usize, col: usize) -> std::ops::Range<usize> {
        self.shift_gap(row, col)..self.sizes[col]
    }

    /// Offset of block g in the concatenated chain coordinates.
    pub fn block_offset(&self, g: usize) -> usize {
        self.sizes[..g].iter().sum()
    }

    /// Canonical matrix of this type: block-diagonal lower shifts, so the
    /// image of basis vector i inside a block is basis vector i+1.
    pub fn canonical_matrix(&self, domain: Domain) -> Matrix {
        let d = self.dim();
        let mut a = Matrix::zeros(domain, d, d);
        let mut off = 0;
        for &k in &self.sizes {
            for i in 0..k - 1 {
                a[(off + i + 1, off + i)] = domain.one();
            }
            off += k;
        }
        a
    }
}

/// All partitions of d as nonincreasing size lists, in deterministic order.
pub fn partitions_of(d: usize) -> Vec<JordanType> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<JordanType>) {
        if remaining == 0 {
            out.push(JordanType::new(prefix.clone()));
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(d, d, &mut Vec::new(), &mut out);
    }
    out
}

/// A verified Jordan base: the chain vectors assembled column-by-column
/// into a change-of-base matrix, with its inverse cached.
#[derive(Debug, Clone)]
pub struct JordanBasis {
    jtype: JordanType,
    change_of_base: Matrix,
    inverse: Matrix,
}

impl JordanBasis {
    pub fn jtype(&self) -> &JordanType {
        &self.jtype
    }

    pub fn change_of_base(&self) -> &Matrix {
        &self.change_of_base
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    pub fn domain(&self) -> Domain {
        self.change_of_base.domain()
    }

    /// Chain vector x_{g,i}; i is 1-based along the chain.
    pub fn vector(&self, g: usize, i: usize) -> Vec<Scalar> {
        assert!(i >= 1 && i <= self.jtype.sizes()[g], "chain index out of range");
        self.change_of_base.col(self.jtype.block_offset(g) + i - 1)
    }

    /// Coefficients a_{g,i} (in block order) expressing u in the base.
    /// Over the quaternions the coefficients multiply the chain vectors on
    /// the right, matching the matrix-side convention used throughout.
    pub fn express(&self, u: &[Scalar]) -> Vec<Scalar> {
        self.inverse.mul_vec(u)
    }

    /// Idempotent projection onto the chains of block `g`, commuting with
    /// the matrix the base was built for.
    pub fn block_projection(&self, g: usize) -> Matrix {
        let jt = &self.jtype;
        assert!(g < jt.block_count(), "block index out of range");
        let d = jt.dim();
        let off = jt.block_offset(g);
        let k = jt.sizes()[g];
        let domain = self.domain();
        let diag = Matrix::from_fn(domain, d, d, |i, j| {
            if i == j && i >= off && i < off + k {
                domain.one()
            } else {
                domain.zero()
            }
        });
        self.change_of_base.matmul(&diag).matmul(&self.inverse)
    }
}

/// Least n >= 1 with A^n = 0, or None when A is not nilpotent.
pub fn nilpotency_index(a: &Matrix) -> Option<usize> {
    assert!(a.is_square(), "nilpotency is defined for square matrices");
    let d = a.rows();
    if d == 0 {
        return Some(1);
    }
    let mut power = a.clone();
    for n in 1..=d {
        if power.is_zero() {
            return Some(n);
        }
        if n < d {
            power = power.matmul(a);
        }
    }
    None
}

/// True iff the columns stay right-linearly independent after appending v.
fn extends_independent(cols: &[Vec<Scalar>], v: &[Scalar], domain: Domain) -> bool {
    let rows = v.len();
    let mut all: Vec<Vec<Scalar>> = cols.to_vec();
    all.push(v.to_vec());
    let n = all.len();
    Matrix::from_cols(domain, rows, all).rank() == n
}

/// Builds a Jordan base for a nilpotent matrix.
///
/// Chain tops are selected level by level, from the nilpotency index down
/// to height one: at height h the kernel basis of A^h is scanned in its
/// deterministic order and vectors extending span(ker A^{h-1}, already
/// generated images of height h) are taken as new tops. Chains are then
/// closed off by repeated application of A, which orders the blocks by
/// nonincreasing size.
pub fn jordan_base(a: &Matrix) -> Result<JordanBasis, Error> {
    let n = nilpotency_index(a).ok_or(Error::NotNilpotent)?;
    let d = a.rows();
    assert!(d >= 1, "empty matrix has no Jordan base");
    let domain = a.domain();

    // kernel filtration bases ker(A^1) .. ker(A^n)
    let mut kernels: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(n + 1);
    kernels.push(Vec::new()); // ker(A^0) = 0
    let mut power = Matrix::identity(domain, d);
    for _ in 1..=n {
        power = power.matmul(a);
        kernels.push(power.nullspace());
    }

    let mut chains: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for h in (1..=n).rev() {
        // vectors of height h already present in longer chains
        let mut base: Vec<Vec<Scalar>> = kernels[h - 1].clone();
        for chain in &chains {
            base.push(chain[chain.len() - h].clone());
        }
        let mut selected: Vec<Vec<Scalar>> = Vec::new();
        for v in &kernels[h] {
            let mut combined = base.clone();
            combined.extend(selected.iter().cloned());
            if extends_independent(&combined, v, domain) {
                selected.push(v.clone());
            }
        }
        for top in selected {
            let mut chain = vec![top];
            for _ in 1..h {
                let next = a.mul_vec(chain.last().unwrap());
                chain.push(next);
            }
            chains.push(chain);
        }
    }

    let jtype = JordanType::new(chains.iter().map(Vec::len).collect());
    let mut cols = Vec::with_capacity(d);
    for chain in &chains {
        cols.extend(chain.iter().cloned());
    }
    let change_of_base = Matrix::from_cols(domain, d, cols);
    let inverse = change_of_base.inverse().expect("chain vectors form a base");
    let basis = JordanBasis { jtype, change_of_base, inverse };
    debug_assert!(verify_base(a, &basis));
    Ok(basis)
}

/// Checks every Jordan-base invariant exactly: the chain relations, the
/// invertibility of the change of base, and that conjugation brings the
/// matrix to the block-diagonal lower-shift canonical form.
pub fn verify_base(a: &Matrix, basis: &JordanBasis) -> bool {
    let jt = basis.jtype();
    if !a.is_square() || a.rows() != jt.dim() || a.domain() != basis.domain() {
        return false;
    }
    if basis.change_of_base().rank() != jt.dim() {
        return false;
    }
    let zero = vec![a.domain().zero(); a.rows()];
    for g in 0..jt.block_count() {
        let k = jt.sizes()[g];
        for i in 1..=k {
            let image = a.mul_vec(&basis.vector(g, i));
            let expected = if i < k { basis.vector(g, i + 1) } else { zero.clone() };
            if image != expected {
                return false;
            }
        }
    }
    let conjugated = basis.inverse().matmul(a).matmul(basis.change_of_base());
    conjugated == jt.canonical_matrix(a.domain())
}

/// A nilpotent matrix is indecomposable iff it is a single Jordan block,
/// iff A^{d-1} != 0. Both characterizations are computed and must agree.
pub fn is_indecomposable(a: &Matrix) -> Result<bool, Error> {
    if nilpotency_index(a).is_none() {
        return Err(Error::NotNilpotent);
    }
    let d = a.rows();
    assert!(d >= 1);
    let by_power = !a.matpow(d - 1).is_zero();
    let by_blocks = jordan_base(a)?.jtype().block_count() == 1;
    assert_eq!(by_power, by_blocks, "indecomposability criteria must agree");
    Ok(by_power)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::from_ints;
    use crate::scalar::Prime;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> Domain {
        Domain::Rationals
    }

    fn f(p: u64) -> Domain {
        Domain::PrimeField(Prime::new(p).unwrap())
    }

    fn random_invertible(domain: Domain, d: usize, rng: &mut ChaCha8Rng) -> Matrix {
        loop {
            let m = Matrix::from_fn(domain, d, d, |_, _| domain.from_int(rng.gen_range(-6..=6)));
            if m.rank() == d {
                return m;
            }
        }
    }

    fn conjugate(a: &Matrix, p: &Matrix) -> Matrix {
        p.matmul(a).matmul(&p.inverse().unwrap())
    }

    #[test]
    fn nilpotency_witness() {
        let j4 = JordanType::new(vec![4]).canonical_matrix(q());
        assert_eq!(nilpotency_index(&j4), Some(4));
        assert_eq!(nilpotency_index(&Matrix::identity(q(), 3)), None);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = JordanType::new(vec![2, 2]).canonical_matrix(f(7));
        let p = random_invertible(f(7), 4, &mut rng);
        assert_eq!(nilpotency_index(&conjugate(&a, &p)), Some(2));
    }

    #[test]
    fn jordan_base_of_zero_and_single_block() {
        let basis = jordan_base(&Matrix::zeros(q(), 3, 3)).unwrap();
        assert_eq!(basis.jtype().sizes(), &[1, 1, 1]);

        let j3 = JordanType::new(vec![3]).canonical_matrix(q());
        let basis = jordan_base(&j3).unwrap();
        assert_eq!(basis.jtype().sizes(), &[3]);
        assert!(verify_base(&j3, &basis));
    }

    #[test]
    fn jordan_base_recovers_planted_type() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let planted = JordanType::new(vec![2, 2, 1]);
        let a0 = planted.canonical_matrix(f(7));
        let p = random_invertible(f(7), 5, &mut rng);
        let a = conjugate(&a0, &p);
        let basis = jordan_base(&a).unwrap();
        assert_eq!(basis.jtype(), &planted);
        assert!(verify_base(&a, &basis));
    }

    #[test]
    fn jordan_base_over_quaternions() {
        let h = Domain::RationalQuaternions;
        let a0 = JordanType::new(vec![2, 1]).canonical_matrix(h);
        // conjugate by an invertible quaternion matrix
        let mut p = Matrix::identity(h, 3);
        p[(0, 1)] = Scalar::quaternion_units(0, 1, 0, 0);
        p[(1, 2)] = Scalar::quaternion_units(0, 0, 1, 0);
        p[(2, 0)] = Scalar::quaternion_units(1, 0, 0, 1);
        assert_eq!(p.rank(), 3);
        let a = conjugate(&a0, &p);
        let basis = jordan_base(&a).unwrap();
        assert_eq!(basis.jtype().sizes(), &[2, 1]);
        assert!(verify_base(&a, &basis));
    }

    #[test]
    fn verify_base_rejects_tampering() {
        let a = JordanType::new(vec![2, 1]).canonical_matrix(q());
        let good = jordan_base(&a).unwrap();
        assert!(verify_base(&a, &good));
        let mut bad = good.clone();
        bad.change_of_base = Matrix::zeros(q(), 3, 3);
        assert!(!verify_base(&a, &bad));
    }

    #[test]
    fn canonical_base_of_canonical_matrix_is_standard() {
        let a = JordanType::new(vec![2, 1]).canonical_matrix(q());
        let basis = jordan_base(&a).unwrap();
        assert_eq!(basis.change_of_base(), &Matrix::identity(q(), 3));
    }

    #[test]
    fn indecomposability() {
        let j4 = JordanType::new(vec![4]).canonical_matrix(q());
        assert!(is_indecomposable(&j4).unwrap());
        assert!(!is_indecomposable(&Matrix::zeros(q(), 2, 2)).unwrap());
        let a = JordanType::new(vec![2, 1]).canonical_matrix(q());
        assert!(!is_indecomposable(&a).unwrap());
        assert_eq!(is_indecomposable(&Matrix::identity(q(), 2)), Err(Error::NotNilpotent));
    }

    #[test]
    fn block_projections() {
        let j3 = JordanType::new(vec![3]).canonical_matrix(q());
        let basis = jordan_base(&j3).unwrap();
        assert_eq!(basis.block_projection(0), Matrix::identity(q(), 3));

        let a = JordanType::new(vec![2, 1]).canonical_matrix(q());
        let basis = jordan_base(&a).unwrap();
        assert_eq!(
            basis.block_projection(0),
            from_ints(q(), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]])
        );

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_invertible(f(11), 5, &mut rng);
        let c = conjugate(&JordanType::new(vec![3, 2]).canonical_matrix(f(11)), &p);
        let basis = jordan_base(&c).unwrap();
        for g in 0..2 {
            let e = basis.block_projection(g);
            assert_eq!(e.matmul(&e), e);
            assert!(e.commutes_with(&c));
        }
    }

    #[test]
    fn express_in_base_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = random_invertible(f(5), 5, &mut rng);
        let a = conjugate(&JordanType::new(vec![3, 2]).canonical_matrix(f(5)), &p);
        let basis = jordan_base(&a).unwrap();

        // indicator for a chain vector
        let coeffs = basis.express(&basis.vector(0, 2));
        for (i, c) in coeffs.iter().enumerate() {
            assert_eq!(*c, if i == 1 { f(5).one() } else { f(5).zero() });
        }
        // zero vector
        assert!(basis.express(&vec![f(5).zero(); 5]).iter().all(Scalar::is_zero));
        // random round trip: u = change_of_base * coeffs
        for _ in 0..10 {
            let u: Vec<Scalar> = (0..5).map(|_| f(5).from_int(rng.gen_range(0..5))).collect();
            let coeffs = basis.express(&u);
            let rebuilt = basis.change_of_base().mul_vec(&coeffs);
            assert_eq!(rebuilt, u);
        }
    }

    #[test]
    fn kernel_filtration_matches_type() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for sizes in [vec![4, 2, 1], vec![3, 3], vec![2, 1, 1, 1]] {
            let jt = JordanType::new(sizes);
            let d = jt.dim();
            let p = random_invertible(f(7), d, &mut rng);
            let a = conjugate(&jt.canonical_matrix(f(7)), &p);
            // dim ker A = number of blocks
            assert_eq!(a.nullspace().len(), jt.block_count());
            // dim ker A^i - dim ker A^{i-1} = #blocks of size >= i
            let mut prev = 0usize;
            for i in 1..=jt.index() {
                let cur = a.matpow(i).nullspace().len();
                let expected = jt.sizes().iter().filter(|&&k| k >= i).count();
                assert_eq!(cur - prev, expected);
                prev = cur;
            }
        }
    }

    #[test]
    fn partitions_enumeration() {
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(8).len(), 22);
        // deterministic first entry: the single block
        assert_eq!(partitions_of(5)[0].sizes(), &[5]);
    }

    #[test]
    fn shift_gaps_and_windows() {
        let jt = JordanType::new(vec![2, 1]);
        // k_{0,0} = 0, k_{0,1} = 0, k_{1,0} = k_0 - k_1 = 1, k_{1,1} = 0
        assert_eq!(jt.shift_gap(0, 0), 0);
        assert_eq!(jt.shift_gap(0, 1), 0);
        assert_eq!(jt.shift_gap(1, 0), 1);
        assert_eq!(jt.shift_gap(1, 1), 0);
        assert_eq!(jt.window(0, 0), 0..2);
        assert_eq!(jt.window(1, 0), 1..2);
        assert_eq!(jt.window(0, 1), 0..1);
        assert_eq!(jt.window(1, 1), 0..1);
    }
}
