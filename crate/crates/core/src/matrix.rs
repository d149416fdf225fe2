//! Dense exact matrices over a scalar domain.
//!
//! Row reduction uses LEFT scalar row operations only, which stays valid
//! over the noncommutative quaternions; nullspaces are the matching right
//! solution sets. Over the commutative domains this is ordinary reduced
//! row echelon form.
//!
//! The matrix ring acting on column vectors realizes endomorphisms up to
//! the usual matrix/endomorphism anti-isomorphism over noncommutative
//! scalars; dimensions, ranks, and all structure invariants downstream
//! are insensitive to that flip.

use std::fmt;
use std::ops::{Index, IndexMut};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::Error;
use crate::poly::Poly;
use crate::scalar::{Domain, Scalar};

/// Exact characteristic polynomials are limited to this size.
pub const MAX_CHARPOLY_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    domain: Domain,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>, // row-major
}

#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(domain: Domain, rows: usize, cols: usize) -> Matrix {
        Matrix { domain, rows, cols, data: vec![domain.zero(); rows * cols] }
    }

    pub fn identity(domain: Domain, n: usize) -> Matrix {
        let mut m = Matrix::zeros(domain, n, n);
        for i in 0..n {
            m[(i, i)] = domain.one();
        }
        m
    }

    pub fn from_rows(domain: Domain, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for x in row {
                assert_eq!(x.domain(), domain, "entry domain mismatch");
                data.push(x);
            }
        }
        Matrix { domain, rows: r, cols: c, data }
    }

    pub fn from_fn(
        domain: Domain,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut m = Matrix::zeros(domain, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_cols(domain: Domain, rows: usize, cols: Vec<Vec<Scalar>>) -> Matrix {
        let c = cols.len();
        let mut m = Matrix::zeros(domain, rows, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in add");
        assert_eq!(self.domain, other.domain);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Matrix { domain: self.domain, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in sub");
        assert_eq!(self.domain, other.domain);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { domain: self.domain, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(Scalar::neg).collect();
        Matrix { domain: self.domain, rows: self.rows, cols: self.cols, data }
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        assert_eq!(self.domain, other.domain);
        let mut out = Matrix::zeros(self.domain, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = &self[(i, t)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(t, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    out[(i, j)] = out[(i, j)].add(&prod);
                }
            }
        }
        out
    }

    pub fn matpow(&self, e: usize) -> Matrix {
        assert!(self.is_square(), "matpow needs a square matrix");
        let mut result = Matrix::identity(self.domain, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.matmul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base);
            }
        }
        result
    }

    /// Multiplies every entry by a CENTRAL scalar (left-module semantics).
    pub fn scale(&self, c: &Scalar) -> Matrix {
        assert_eq!(c.domain(), self.domain);
        assert!(c.is_central(), "scale by non-central scalar");
        let data = self.data.iter().map(|x| c.mul(x)).collect();
        Matrix { domain: self.domain, rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut t = self.domain.zero();
        for i in 0..self.rows {
            t = t.add(&self[(i, i)]);
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.domain.zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc.add(&self[(i, j)].mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn augment(&self, right: &Matrix) -> Matrix {
        assert_eq!(self.rows, right.rows);
        assert_eq!(self.domain, right.domain);
        Matrix::from_fn(self.domain, self.rows, self.cols + right.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                right[(i, j - self.cols)].clone()
            }
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Reduced row echelon form under left scalar row operations.
    ///
    /// Pivot selection is deterministic: columns are scanned left to
    /// right, and within a column the first nonzero entry from the top.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            let mut pivot_row = None;
            for i in r..m.rows {
                if !m[(i, c)].is_zero() {
                    pivot_row = Some(i);
                    break;
                }
            }
            let Some(i) = pivot_row else { continue };
            m.swap_rows(r, i);
            let inv = m[(r, c)].invert().expect("pivot is nonzero");
            for j in 0..m.cols {
                m[(r, j)] = inv.mul(&m[(r, j)]);
            }
            for i2 in 0..m.rows {
                if i2 == r || m[(i2, c)].is_zero() {
                    continue;
                }
                let f = m[(i2, c)].clone();
                for j in 0..m.cols {
                    if !m[(r, j)].is_zero() {
                        let t = f.mul(&m[(r, j)]);
                        m[(i2, j)] = m[(i2, j)].sub(&t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        Rref { matrix: m, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of { v : A v = 0 }, one vector per free column, ordered by
    /// free-column index. With left reduction this parameterizes the
    /// right solution space; over commutative domains it is the usual
    /// kernel basis.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let rr = self.rref();
        let pivot_set: std::collections::HashSet<usize> = rr.pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivot_set.contains(&f) {
                continue;
            }
            let mut v = vec![self.domain.zero(); self.cols];
            v[f] = self.domain.one();
            for (i, &p) in rr.pivots.iter().enumerate() {
                v[p] = rr.matrix[(i, f)].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves A X = B exactly; None when inconsistent. Free variables are
    /// set to zero, so for full-column-rank A the solution is unique.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "dimension mismatch in solve");
        let aug = self.augment(rhs).rref();
        for &p in &aug.pivots {
            if p >= self.cols {
                return None;
            }
        }
        let mut x = Matrix::zeros(self.domain, self.cols, rhs.cols);
        for (i, &p) in aug.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = aug.matrix[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    /// Two-sided inverse of a square matrix.
    pub fn inverse(&self) -> Result<Matrix, Error> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let aug = self.augment(&Matrix::identity(self.domain, n)).rref();
        if aug.rank < n {
            return Err(Error::NotInvertible);
        }
        let inv = Matrix::from_fn(self.domain, n, n, |i, j| aug.matrix[(i, n + j)].clone());
        debug_assert!(inv.matmul(self) == Matrix::identity(self.domain, n));
        debug_assert!(self.matmul(&inv) == Matrix::identity(self.domain, n));
        Ok(inv)
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self.matmul(other) == other.matmul(self)
    }

    /// Monic polynomial of least degree annihilating the matrix, found as
    /// the first linear dependence among I, A, A^2, ...
    pub fn minimal_polynomial(&self) -> Result<Poly, Error> {
        if !self.domain.is_field() {
            return Err(Error::UnsupportedDomain { op: "minimal_polynomial", domain: self.domain });
        }
        assert!(self.is_square());
        let d = self.rows;
        let dd = d * d;
        let mut power = Matrix::identity(self.domain, d);
        let mut stack: Vec<Vec<Scalar>> = vec![power.data.clone()];
        for k in 1..=d {
            power = power.matmul(self);
            // solve sum_i c_i vec(A^i) = vec(A^k) over the previous powers
            let coeff_matrix = Matrix::from_fn(self.domain, dd, k, |i, j| stack[j][i].clone());
            let rhs = Matrix::from_fn(self.domain, dd, 1, |i, _| power.data[i].clone());
            if let Some(c) = coeff_matrix.solve(&rhs) {
                let mut coeffs: Vec<Scalar> = (0..k).map(|i| c[(i, 0)].neg()).collect();
                coeffs.push(self.domain.one());
                return Ok(Poly::new(self.domain, coeffs));
            }
            stack.push(power.data.clone());
        }
        unreachable!("a d x d matrix satisfies a polynomial of degree at most d");
    }

    /// Exact characteristic polynomial via similarity reduction to upper
    /// Hessenberg form and the standard leading-minor recurrence.
    pub fn characteristic_polynomial(&self) -> Result<Poly, Error> {
        if !self.domain.is_field() {
            return Err(Error::UnsupportedDomain {
                op: "characteristic_polynomial",
                domain: self.domain,
            });
        }
        assert!(self.is_square());
        let n = self.rows;
        if n > MAX_CHARPOLY_DIM {
            return Err(Error::DimensionTooLarge { dim: n, max: MAX_CHARPOLY_DIM });
        }
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let mut pivot = None;
            for i in (j + 1)..n {
                if !h[(i, j)].is_zero() {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(pi) = pivot else { continue };
            if pi != j + 1 {
                h.swap_rows(j + 1, pi);
                h.swap_cols(j + 1, pi);
            }
            let inv = h[(j + 1, j)].invert().expect("pivot nonzero");
            for i in (j + 2)..n {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let t = h[(i, j)].mul(&inv);
                for c in 0..n {
                    if !h[(j + 1, c)].is_zero() {
                        let s = t.mul(&h[(j + 1, c)]);
                        h[(i, c)] = h[(i, c)].sub(&s);
                    }
                }
                for r in 0..n {
                    if !h[(r, i)].is_zero() {
                        let s = h[(r, i)].mul(&t);
                        h[(r, j + 1)] = h[(r, j + 1)].add(&s);
                    }
                }
            }
        }
        // p_k = (z - h_kk) p_{k-1} - sum_i h_ik (prod of subdiagonals) p_{i-1}
        let z_minus = |c: &Scalar| Poly::new(self.domain, vec![c.neg(), self.domain.one()]);
        let mut p: Vec<Poly> = vec![Poly::one(self.domain)];
        for k in 1..=n {
            let mut cur = p[k - 1].mul(&z_minus(&h[(k - 1, k - 1)]));
            let mut beta = self.domain.one();
            for i in (1..k).rev() {
                beta = beta.mul(&h[(i, i - 1)]);
                let coef = h[(i - 1, k - 1)].mul(&beta);
                if !coef.is_zero() {
                    cur = cur.sub(&p[i - 1].scale(&coef));
                }
            }
            p.push(cur);
        }
        Ok(p.pop().unwrap())
    }

    /// Factors the characteristic polynomial into linear factors over the
    /// base field and returns (eigenvalue, algebraic multiplicity) pairs in
    /// a deterministic order. Signals `NonSplitSpectrum` if a nonlinear
    /// factor remains.
    pub fn eigen_split(&self) -> Result<Vec<(Scalar, usize)>, Error> {
        let charpoly = self.characteristic_polynomial()?;
        let mut out = split_roots(&charpoly)?;
        let total: usize = out.iter().map(|(_, m)| m).sum();
        assert_eq!(total, self.rows, "multiplicities must sum to the dimension");
        match self.domain {
            Domain::PrimeField(_) => out.sort_by_key(|(v, _)| match v {
                Scalar::Fp { val, .. } => *val,
                _ => unreachable!(),
            }),
            Domain::Rationals => out.sort_by(|(a, _), (b, _)| match (a, b) {
                (Scalar::Rat(x), Scalar::Rat(y)) => x.cmp(y),
                _ => unreachable!(),
            }),
            Domain::RationalQuaternions => unreachable!(),
        }
        Ok(out)
    }
}

/// Strips every linear factor from the polynomial; errors with the
/// unfactored part if anything of positive degree remains.
fn split_roots(f: &Poly) -> Result<Vec<(Scalar, usize)>, Error> {
    let domain = f.domain();
    let mut rem = f.clone();
    let mut roots = Vec::new();
    let mut take_root = |rem: &mut Poly, r: Scalar| {
        let mut mult = 0usize;
        while let Some(q) = rem.deflate(&r) {
            *rem = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    };
    match domain {
        Domain::PrimeField(p) => {
            for v in 0..p.get() {
                if rem.degree() == Some(0) || rem.is_zero() {
                    break;
                }
                take_root(&mut rem, Scalar::Fp { val: v, p: p.get() });
            }
        }
        Domain::Rationals => {
            take_root(&mut rem, domain.zero());
            if rem.degree().unwrap_or(0) > 0 {
                for r in rational_root_candidates(&rem) {
                    if rem.degree() == Some(0) {
                        break;
                    }
                    take_root(&mut rem, Scalar::Rat(r));
                }
            }
        }
        Domain::RationalQuaternions => {
            return Err(Error::UnsupportedDomain { op: "eigen_split", domain })
        }
    }
    if rem.degree().unwrap_or(0) > 0 {
        return Err(Error::NonSplitSpectrum { remaining: rem.to_string() });
    }
    Ok(roots)
}

/// Candidate rational roots p/q with p dividing the constant term and q
/// dividing the leading coefficient, after clearing denominators.
fn rational_root_candidates(f: &Poly) -> Vec<BigRational> {
    let mut lcm = BigInt::one();
    for c in f.coeffs() {
        if let Scalar::Rat(r) = c {
            lcm = lcm.lcm(r.denom());
        }
    }
    let int_coeff = |c: &Scalar| -> BigInt {
        match c {
            Scalar::Rat(r) => (r * BigRational::from(lcm.clone())).to_integer(),
            _ => unreachable!(),
        }
    };
    let lead = int_coeff(&f.coeff(f.degree().unwrap())).abs();
    let constant = int_coeff(&f.coeff(0)).abs();
    if constant.is_zero() {
        return vec![];
    }
    let ps = divisors(&constant);
    let qs = divisors(&lead);
    let mut out = Vec::new();
    for p in &ps {
        for q in &qs {
            let r = BigRational::new(p.clone(), q.clone());
            if !out.contains(&r) {
                out.push(r.clone());
                out.push(-r);
            }
        }
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if (n % &i).is_zero() {
            out.push(i.clone());
            let other = n / &i;
            if other != i {
                out.push(other);
            }
        }
        i += 1;
    }
    out
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// The matrix of integers, mostly for tests and canonical constructions.
pub fn from_ints(domain: Domain, rows: &[&[i64]]) -> Matrix {
    Matrix::from_rows(
        domain,
        rows.iter().map(|r| r.iter().map(|&v| domain.from_int(v)).collect()).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Prime;
    use proptest::prelude::*;

    fn q() -> Domain {
        Domain::Rationals
    }

    fn f7() -> Domain {
        Domain::PrimeField(Prime::new(7).unwrap())
    }

    /// Upper-shift nilpotent Jordan block (ones on the superdiagonal).
    fn upper_block(domain: Domain, k: usize) -> Matrix {
        Matrix::from_fn(domain, k, k, |i, j| if j == i + 1 { domain.one() } else { domain.zero() })
    }

    #[test]
    fn rref_identity_and_shift() {
        let id = Matrix::identity(q(), 3);
        let rr = id.rref();
        assert_eq!(rr.matrix, id);
        assert_eq!(rr.pivots, vec![0, 1, 2]);
        assert_eq!(rr.rank, 3);

        let m = from_ints(q(), &[&[0, 1], &[0, 0]]);
        let rr = m.rref();
        assert_eq!(rr.matrix, m);
        assert_eq!(rr.pivots, vec![1]);
        assert_eq!(rr.rank, 1);
    }

    #[test]
    fn rref_one_row_over_quaternions() {
        let h = Domain::RationalQuaternions;
        let i = Scalar::quaternion_units(0, 1, 0, 0);
        let j = Scalar::quaternion_units(0, 0, 1, 0);
        let m = Matrix::from_rows(h, vec![vec![i.clone(), j.clone()]]);
        let rr = m.rref();
        assert_eq!(rr.rank, 1);
        assert!(rr.matrix[(0, 0)].is_one());
        // left-multiplying the reduced row by the original pivot restores the row
        let restored =
            Matrix::from_rows(h, vec![vec![i.mul(&rr.matrix[(0, 0)]), i.mul(&rr.matrix[(0, 1)])]]);
        assert_eq!(restored, m);
        // and the expected normalized entry is i^{-1} j = -k
        assert_eq!(rr.matrix[(0, 1)], Scalar::quaternion_units(0, 0, 0, -1));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Matrix::zeros(q(), 2, 2).nullspace().len(), 2);
        assert!(Matrix::identity(q(), 4).nullspace().is_empty());
        let m = from_ints(q(), &[&[1, 1], &[2, 2]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        // proportional to (1, -1)
        assert_eq!(v[0].neg(), v[1]);
        assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
    }

    #[test]
    fn matpow_on_shift_blocks() {
        let j3 = upper_block(q(), 3);
        let sq = j3.matpow(2);
        // ones on the second superdiagonal
        for i in 0..3 {
            for j in 0..3 {
                let expect = if j == i + 2 { q().one() } else { q().zero() };
                assert_eq!(sq[(i, j)], expect);
            }
        }
        assert!(j3.matpow(3).is_zero());
    }

    #[test]
    #[should_panic(expected = "non-central")]
    fn scale_by_noncentral_panics() {
        let h = Domain::RationalQuaternions;
        let m = Matrix::identity(h, 2);
        let _ = m.scale(&Scalar::quaternion_units(0, 1, 0, 0));
    }

    #[test]
    fn minimal_polynomials() {
        let j3 = upper_block(q(), 3);
        let f = j3.minimal_polynomial().unwrap();
        assert_eq!(f, Poly::monomial(q(), q().one(), 3)); // z^3

        let z = Matrix::zeros(q(), 4, 4);
        assert_eq!(z.minimal_polynomial().unwrap(), Poly::monomial(q(), q().one(), 1)); // z

        let d = from_ints(q(), &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let f = d.minimal_polynomial().unwrap();
        // (z-2)(z-3) = z^2 - 5z + 6
        assert_eq!(f, Poly::new(q(), vec![q().from_int(6), q().from_int(-5), q().from_int(1)]));
        assert!(f.eval_matrix(&d).is_zero());
        // no linear polynomial annihilates: I and A are independent
        assert!(f.degree() == Some(2));
    }

    /// Test-only determinant of a polynomial matrix by cofactor expansion,
    /// used as an independent route to the characteristic polynomial.
    fn poly_det(m: &Vec<Vec<Poly>>) -> Poly {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let domain = m[0][0].domain();
        let mut acc = Poly::zero(domain);
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Poly>> = (1..n)
                .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect())
                .collect();
            let term = m[0][j].mul(&poly_det(&minor));
            if j % 2 == 0 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        acc
    }

    fn charpoly_by_cofactors(a: &Matrix) -> Poly {
        let n = a.rows();
        let domain = a.domain();
        let zi_minus_a: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut p = Poly::new(domain, vec![a[(i, j)].neg()]);
                        if i == j {
                            p = p.add(&Poly::monomial(domain, domain.one(), 1));
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        poly_det(&zi_minus_a)
    }

    #[test]
    fn charpoly_matches_cofactor_oracle() {
        let cases = [
            from_ints(q(), &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]),
            from_ints(q(), &[&[0, -1], &[1, 0]]),
            from_ints(q(), &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]),
            from_ints(f7(), &[&[3, 1, 0, 2], &[0, 3, 5, 1], &[1, 0, 2, 2], &[4, 4, 0, 1]]),
            upper_block(q(), 4),
        ];
        for a in cases {
            assert_eq!(a.characteristic_polynomial().unwrap(), charpoly_by_cofactors(&a));
        }
    }

    #[test]
    fn minimal_polynomial_annihilates_and_is_minimal() {
        let mut s = 12345u64;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 33) as i64 % 7
        };
        for _ in 0..10 {
            let a = Matrix::from_fn(f7(), 4, 4, |_, _| f7().from_int(next()));
            let f = a.minimal_polynomial().unwrap();
            assert!(f.eval_matrix(&a).is_zero());
            // minimality: I, A, ..., A^{deg-1} are linearly independent
            let deg = f.degree().unwrap();
            let rows: Vec<Vec<Scalar>> = (0..deg).map(|k| a.matpow(k).data().to_vec()).collect();
            assert_eq!(Matrix::from_rows(f7(), rows).rank(), deg);
        }
    }

    #[test]
    fn eigen_split_examples() {
        // J2(5) + J1(5) over F7: triangular with 5s on the diagonal
        let a = from_ints(f7(), &[&[5, 1, 0], &[0, 5, 0], &[0, 0, 5]]);
        assert_eq!(a.eigen_split().unwrap(), vec![(f7().from_int(5), 3)]);

        // companion matrix of z^2 + 1 over Q
        let c = from_ints(q(), &[&[0, -1], &[1, 0]]);
        match c.eigen_split() {
            Err(Error::NonSplitSpectrum { remaining }) => {
                assert_eq!(remaining, "z^2 + 1");
            }
            other => panic!("expected NonSplitSpectrum, got {other:?}"),
        }

        let d = from_ints(q(), &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(d.eigen_split().unwrap(), vec![(q().from_int(2), 2), (q().from_int(3), 1)]);
    }

    #[test]
    fn eigen_split_rational_noninteger_roots() {
        // diag(1/2, 1/2, -3/4)
        let half = Scalar::Rat(num::BigRational::new(1.into(), 2.into()));
        let mq = Scalar::Rat(num::BigRational::new((-3).into(), 4.into()));
        let mut a = Matrix::zeros(q(), 3, 3);
        a[(0, 0)] = half.clone();
        a[(1, 1)] = half.clone();
        a[(2, 2)] = mq.clone();
        assert_eq!(a.eigen_split().unwrap(), vec![(mq, 1), (half, 2)]);
    }

    #[test]
    fn inverse_round_trip_over_quaternions() {
        let h = Domain::RationalQuaternions;
        let m = Matrix::from_rows(
            h,
            vec![
                vec![Scalar::quaternion_units(1, 1, 0, 0), Scalar::quaternion_units(0, 0, 1, 0)],
                vec![Scalar::quaternion_units(0, 0, 0, 2), Scalar::quaternion_units(3, 0, 0, 0)],
            ],
        );
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Matrix::identity(h, 2));
        assert_eq!(inv.matmul(&m), Matrix::identity(h, 2));
    }

    fn arb_matrix(domain: Domain, max_dim: usize) -> impl Strategy<Value = Matrix> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(-4i64..=4, r * c).prop_map(move |vals| {
                Matrix::from_fn(domain, r, c, |i, j| domain.from_int(vals[i * c + j]))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rref_is_idempotent_and_counts_add_up(a in arb_matrix(Domain::Rationals, 5)) {
            let rr = a.rref();
            let again = rr.matrix.rref();
            prop_assert_eq!(&again.matrix, &rr.matrix);
            prop_assert_eq!(again.rank, rr.rank);
            let ns = a.nullspace();
            prop_assert_eq!(ns.len() + rr.rank, a.cols());
            for v in &ns {
                prop_assert!(a.mul_vec(v).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn rank_invariant_under_invertible_left_multiplication(a in arb_matrix(Domain::PrimeField(Prime::new(7).unwrap()), 5), seed in 0u64..1000) {
            let d = a.rows();
            // build an invertible L as a product of elementary operations
            let mut l = Matrix::identity(a.domain(), d);
            let mut s = seed;
            let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (s >> 33) as i64 };
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        let mut e = Matrix::identity(a.domain(), d);
                        e[(i, j)] = a.domain().from_int(next() % 7);
                        l = l.matmul(&e);
                    }
                }
            }
            prop_assert_eq!(l.rank(), d);
            prop_assert_eq!(l.matmul(&a).rank(), a.rank());
        }
    }
}
