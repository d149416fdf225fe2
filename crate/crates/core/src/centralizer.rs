//! Centralizers of nilpotent matrices, computed two independent ways.
//!
//! The brute route solves the homogeneous linear system AB = BA entry by
//! entry over the center of the scalar domain. The structured route reads
//! a basis of window-truncated polynomial matrices off a Jordan base and
//! realizes each element as a concrete matrix commuting with A. The two
//! routes must agree in span and match the closed dimension formula
//! center_degree * (k_1 + 3 k_2 + ... + (2m-1) k_m).
//!
//! Convention note: a structured element realizes as the matrix of the
//! induced map in chain coordinates, conjugated back through the change
//! of base. Structured multiplication takes coefficient products in the
//! opposite order, which makes realize(P * Q) = realize(Q) * realize(P)
//! hold exactly in all three domains (over the commutative domains the
//! two orders coincide).

use crate::error::Error;
use crate::jordan::{is_indecomposable, jordan_base, nilpotency_index, JordanBasis, JordanType};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::{regular_representation, right_representation, Domain, Scalar};

/// Z(R)-dimension of the centralizer of a nilpotent matrix with the given
/// Jordan type: center_degree * sum of (2j-1) k_j over the sorted sizes.
pub fn dimension_formula(jtype: &JordanType, domain: Domain) -> u64 {
    let weighted: u64 =
        jtype.sizes().iter().enumerate().map(|(j, &k)| (2 * j as u64 + 1) * k as u64).sum();
    domain.center_degree() as u64 * weighted
}

/// An m x m array of truncated polynomials: the (row, col) entry has
/// degree < k_col and no monomials below the shift gap k_{row,col}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredElement {
    jtype: JordanType,
    domain: Domain,
    /// entry (row, col) at index row * m + col, coefficient vector of
    /// length k_col indexed by degree
    entries: Vec<Vec<Scalar>>,
}

impl StructuredElement {
    pub fn zero(jtype: &JordanType, domain: Domain) -> StructuredElement {
        let m = jtype.block_count();
        let mut entries = Vec::with_capacity(m * m);
        for _row in 0..m {
            for col in 0..m {
                entries.push(vec![domain.zero(); jtype.sizes()[col]]);
            }
        }
        StructuredElement { jtype: jtype.clone(), domain, entries }
    }

    /// Single-term element coeff * z^power at (row, col); the power must
    /// lie in the entry's degree window.
    pub fn monomial(
        jtype: &JordanType,
        domain: Domain,
        row: usize,
        col: usize,
        power: usize,
        coeff: Scalar,
    ) -> StructuredElement {
        assert!(
            jtype.window(row, col).contains(&power),
            "power {power} outside window {:?} of entry ({row}, {col})",
            jtype.window(row, col)
        );
        let mut e = StructuredElement::zero(jtype, domain);
        e.entries[row * jtype.block_count() + col][power] = coeff;
        e
    }

    pub fn jtype(&self) -> &JordanType {
        &self.jtype
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn entry(&self, row: usize, col: usize) -> &[Scalar] {
        &self.entries[row * self.jtype.block_count() + col]
    }

    fn entry_mut(&mut self, row: usize, col: usize) -> &mut Vec<Scalar> {
        let m = self.jtype.block_count();
        &mut self.entries[row * m + col]
    }

    /// True iff every coefficient respects its degree window.
    pub fn windows_respected(&self) -> bool {
        let m = self.jtype.block_count();
        for row in 0..m {
            for col in 0..m {
                let gap = self.jtype.shift_gap(row, col);
                if self.entry(row, col)[..gap].iter().any(|c| !c.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, other: &StructuredElement) -> StructuredElement {
        assert_eq!(self.jtype, other.jtype);
        assert_eq!(self.domain, other.domain);
        let mut out = self.clone();
        for (o, e) in out.entries.iter_mut().zip(&other.entries) {
            for (a, b) in o.iter_mut().zip(e) {
                *a = a.add(b);
            }
        }
        out
    }

    pub fn scale_central(&self, c: &Scalar) -> StructuredElement {
        assert!(c.is_central());
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            for a in e.iter_mut() {
                *a = c.mul(a);
            }
        }
        out
    }

    /// Matrix product of truncated-polynomial matrices: entry (row, col)
    /// is truncated to degree < k_col and the shift-gap floor is asserted
    /// afterwards (the window structure is closed under this product).
    /// Coefficient pairs multiply in the opposite order; see the module
    /// docs for the realization law this preserves.
    pub fn mul(&self, other: &StructuredElement) -> StructuredElement {
        assert_eq!(self.jtype, other.jtype);
        assert_eq!(self.domain, other.domain);
        let m = self.jtype.block_count();
        let mut out = StructuredElement::zero(&self.jtype, self.domain);
        for row in 0..m {
            for col in 0..m {
                let cap = self.jtype.sizes()[col];
                for t in 0..m {
                    let p = self.entry(row, t).to_vec();
                    let q = other.entry(t, col).to_vec();
                    let acc = out.entry_mut(row, col);
                    for (u, pu) in p.iter().enumerate() {
                        if pu.is_zero() {
                            continue;
                        }
                        for (v, qv) in q.iter().enumerate() {
                            if u + v >= cap {
                                break;
                            }
                            if !qv.is_zero() {
                                acc[u + v] = acc[u + v].add(&qv.mul(pu));
                            }
                        }
                    }
                }
            }
        }
        assert!(out.windows_respected(), "product left its degree windows");
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.iter().all(Scalar::is_zero))
    }
}

/// Realizes a structured element as a d x d matrix commuting with the
/// matrix the Jordan base belongs to: in chain coordinates the (row, col)
/// entry's z^w coefficient maps chain vector (row, j) to coefficient times
/// chain vector (col, j + w), and the result is conjugated back.
pub fn realize(basis: &JordanBasis, elem: &StructuredElement) -> Matrix {
    assert_eq!(basis.jtype(), elem.jtype());
    assert_eq!(basis.domain(), elem.domain());
    let jt = basis.jtype();
    let m = jt.block_count();
    let d = jt.dim();
    let mut in_base = Matrix::zeros(elem.domain(), d, d);
    for row in 0..m {
        let k_row = jt.sizes()[row];
        let row_off = jt.block_offset(row);
        for col in 0..m {
            let k_col = jt.sizes()[col];
            let col_off = jt.block_offset(col);
            for (w, coeff) in elem.entry(row, col).iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for j in 1..=k_row {
                    let target = j + w;
                    if target <= k_col {
                        in_base[(col_off + target - 1, row_off + j - 1)] = coeff.clone();
                    }
                }
            }
        }
    }
    basis.change_of_base().matmul(&in_base).matmul(basis.inverse())
}

/// Tag of a structured basis element: b_t z^power at entry (row, col).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisTag {
    pub row: usize,
    pub col: usize,
    pub power: usize,
    pub center_index: usize,
}

/// The structured centralizer basis of a nilpotent matrix together with
/// its realized matrices.
#[derive(Debug, Clone)]
pub struct CentralizerBasis {
    jordan: JordanBasis,
    tags: Vec<BasisTag>,
    elements: Vec<StructuredElement>,
    realized: Vec<Matrix>,
}

impl CentralizerBasis {
    pub fn jordan(&self) -> &JordanBasis {
        &self.jordan
    }

    pub fn jtype(&self) -> &JordanType {
        self.jordan.jtype()
    }

    pub fn domain(&self) -> Domain {
        self.jordan.domain()
    }

    pub fn tags(&self) -> &[BasisTag] {
        &self.tags
    }

    pub fn elements(&self) -> &[StructuredElement] {
        &self.elements
    }

    pub fn realized(&self) -> &[Matrix] {
        &self.realized
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }
}

/// Builds the structured centralizer basis: one element b_t z^i E_{row,col}
/// for every entry window degree i and center-basis element b_t, realized
/// through the Jordan base. The count always equals the dimension formula.
pub fn structured_basis(a: &Matrix) -> Result<CentralizerBasis, Error> {
    let jordan = jordan_base(a)?;
    let jt = jordan.jtype().clone();
    let domain = a.domain();
    let center = domain.center_basis();
    let m = jt.block_count();
    let mut tags = Vec::new();
    let mut elements = Vec::new();
    let mut realized = Vec::new();
    for row in 0..m {
        for col in 0..m {
            for power in jt.window(row, col) {
                for (t, b) in center.iter().enumerate() {
                    let elem = StructuredElement::monomial(&jt, domain, row, col, power, b.clone());
                    let mat = realize(&jordan, &elem);
                    debug_assert!(mat.commutes_with(a));
                    tags.push(BasisTag { row, col, power, center_index: t });
                    elements.push(elem);
                    realized.push(mat);
                }
            }
        }
    }
    assert_eq!(tags.len() as u64, dimension_formula(&jt, domain));
    Ok(CentralizerBasis { jordan, tags, elements, realized })
}

fn center_field(domain: Domain) -> Domain {
    match domain {
        Domain::RationalQuaternions => Domain::Rationals,
        d => d,
    }
}

fn left_rep(a: &Scalar) -> Matrix {
    regular_representation(a)
}

fn right_rep(a: &Scalar) -> Matrix {
    match a.domain() {
        Domain::RationalQuaternions => right_representation(a),
        d => Matrix::from_rows(d, vec![vec![a.clone()]]),
    }
}

fn scalar_from_center_coords(domain: Domain, comps: &[Scalar]) -> Scalar {
    match domain {
        Domain::RationalQuaternions => {
            let r = |s: &Scalar| match s {
                Scalar::Rat(r) => r.clone(),
                _ => unreachable!(),
            };
            Scalar::quaternion(r(&comps[0]), r(&comps[1]), r(&comps[2]), r(&comps[3]))
        }
        _ => comps[0].clone(),
    }
}

/// Basis of { B : AB = BA } over the center of the scalar domain, found as
/// the nullspace of the entrywise commutation system. Over the quaternions
/// the system is transported to rational matrices through the regular
/// representation (one 4 x 4 block per coefficient), so the solution space
/// is exactly the quaternion-matrix commutant seen as a rational space.
pub fn brute_commutant(a: &Matrix) -> Vec<Matrix> {
    assert!(a.is_square(), "commutant of a non-square matrix");
    let d = a.rows();
    let domain = a.domain();
    let cf = center_field(domain);
    let cd = domain.center_degree();
    let unknowns = cd * d * d;
    let mut system = Matrix::zeros(cf, unknowns, unknowns);
    for r in 0..d {
        for s in 0..d {
            let eq = cd * (r * d + s);
            for u in 0..d {
                for v in 0..d {
                    let un = cd * (u * d + v);
                    let mut block = Matrix::zeros(cf, cd, cd);
                    if v == s {
                        block = block.add(&left_rep(&a[(r, u)]));
                    }
                    if u == r {
                        block = block.sub(&right_rep(&a[(v, s)]));
                    }
                    if block.is_zero() {
                        continue;
                    }
                    for i in 0..cd {
                        for j in 0..cd {
                            system[(eq + i, un + j)] = block[(i, j)].clone();
                        }
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for vec in system.nullspace() {
        let b = Matrix::from_fn(domain, d, d, |u, v| {
            let base = cd * (u * d + v);
            scalar_from_center_coords(domain, &vec[base..base + cd])
        });
        assert!(b.commutes_with(a), "commutant solution must commute exactly");
        out.push(b);
    }
    out
}

/// Coordinates of a matrix over the center of its domain: the entries
/// themselves over a field, the four rational components per entry over
/// the quaternions.
pub fn vectorize_over_center(m: &Matrix) -> Vec<Scalar> {
    match m.domain() {
        Domain::RationalQuaternions => m
            .data()
            .iter()
            .flat_map(|s| s.center_coordinates().into_iter().map(Scalar::Rat))
            .collect(),
        _ => m.data().to_vec(),
    }
}

/// Rank of the center-span of a list of equally-shaped matrices.
pub fn span_rank(mats: &[Matrix]) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let cf = center_field(mats[0].domain());
    let rows: Vec<Vec<Scalar>> = mats.iter().map(vectorize_over_center).collect();
    Matrix::from_rows(cf, rows).rank()
}

/// Mutual containment of center-spans, decided by three rank computations.
pub fn spans_equal(xs: &[Matrix], ys: &[Matrix]) -> bool {
    let rx = span_rank(xs);
    let ry = span_rank(ys);
    if rx != ry {
        return false;
    }
    let mut all = xs.to_vec();
    all.extend(ys.iter().cloned());
    span_rank(&all) == rx
}

/// Reads the structured form of a matrix commuting with the base's matrix:
/// the coefficients of B x_{row,1} in the base give the (row, col) entry
/// polynomials. Realizing the result gives back exactly B.
pub fn express_as_structured(basis: &JordanBasis, b: &Matrix) -> StructuredElement {
    let jt = basis.jtype().clone();
    let m = jt.block_count();
    let domain = basis.domain();
    let mut elem = StructuredElement::zero(&jt, domain);
    for row in 0..m {
        let image = b.mul_vec(&basis.vector(row, 1));
        let coeffs = basis.express(&image);
        for col in 0..m {
            let off = jt.block_offset(col);
            let gap = jt.shift_gap(row, col);
            let entry = elem.entry_mut(row, col);
            for i in 1..=jt.sizes()[col] {
                let c = coeffs[off + i - 1].clone();
                if !c.is_zero() {
                    assert!(
                        i - 1 >= gap,
                        "commuting matrix produced a coefficient below the degree window"
                    );
                    entry[i - 1] = c;
                }
            }
        }
    }
    debug_assert_eq!(realize(basis, &elem), *b);
    elem
}

/// Structured form of B in a Jordan base of A; B must commute with A.
pub fn matrix_to_structured(a: &Matrix, b: &Matrix) -> Result<StructuredElement, Error> {
    if !a.commutes_with(b) {
        return Err(Error::NotCommuting);
    }
    let basis = jordan_base(a)?;
    Ok(express_as_structured(&basis, b))
}

/// Outcome of the polynomial-membership test for an indecomposable A.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Polynomial(Poly),
    NotInCentralizer,
}

/// For an indecomposable nilpotent A over a commutative domain, a matrix
/// commutes with A iff it is a polynomial in A of degree below the
/// nilpotency index; the polynomial is read off the structured form.
pub fn polynomial_membership(a: &Matrix, b: &Matrix) -> Result<Membership, Error> {
    if !a.domain().is_commutative() {
        return Err(Error::UnsupportedDomain { op: "polynomial_membership", domain: a.domain() });
    }
    if !is_indecomposable(a)? {
        return Err(Error::NotIndecomposable);
    }
    if !a.commutes_with(b) {
        return Ok(Membership::NotInCentralizer);
    }
    let basis = jordan_base(a)?;
    let elem = express_as_structured(&basis, b);
    let f = Poly::new(a.domain(), elem.entry(0, 0).to_vec());
    assert_eq!(f.eval_matrix(a), *b, "membership polynomial must evaluate back to B");
    Ok(Membership::Polynomial(f))
}

/// Outcome of the centralizer containment test Cen(A) subset of Cen(B).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Containment {
    Contained {
        /// Over a field, the polynomial h with h(A) = B (verified exactly);
        /// absent over the quaternions.
        witness_poly: Option<Poly>,
    },
    NotContained {
        /// An element of Cen(A) that fails to commute with B.
        witness: Matrix,
    },
}

/// Decides Cen(A) subset of Cen(B) for nilpotent A and arbitrary B.
///
/// Every realized structured basis element of Cen(A) is tested against B;
/// block projections are tried first since they are the natural witnesses.
/// If all of them commute the containment holds (the realized basis spans
/// Cen(A) over the center), and over a field the certifying polynomial is
/// extracted from the image of the longest chain's top vector.
pub fn containment_test(a: &Matrix, b: &Matrix) -> Result<Containment, Error> {
    assert_eq!(a.domain(), b.domain(), "containment needs one common domain");
    assert!(b.is_square() && b.rows() == a.rows(), "shape mismatch");
    let cb = structured_basis(a)?;
    let is_projection = |t: &BasisTag| t.row == t.col && t.power == 0 && t.center_index == 0;
    let order: Vec<usize> = {
        let mut proj: Vec<usize> =
            (0..cb.len()).filter(|&i| is_projection(&cb.tags()[i])).collect();
        let rest: Vec<usize> = (0..cb.len()).filter(|&i| !is_projection(&cb.tags()[i])).collect();
        proj.extend(rest);
        proj
    };
    for i in order {
        let psi = &cb.realized()[i];
        if !psi.commutes_with(b) {
            return Ok(Containment::NotContained { witness: psi.clone() });
        }
    }
    if !a.domain().is_field() {
        return Ok(Containment::Contained { witness_poly: None });
    }
    // blocks are sorted by size, so block 0 has the longest chain
    let basis = cb.jordan();
    let image = b.mul_vec(&basis.vector(0, 1));
    let coeffs = basis.express(&image);
    let jt = basis.jtype();
    let k0 = jt.sizes()[0];
    for (idx, c) in coeffs.iter().enumerate() {
        assert!(idx < k0 || c.is_zero(), "contained map must preserve the longest chain's span");
    }
    let h = Poly::new(a.domain(), coeffs[..k0].to_vec());
    assert_eq!(h.eval_matrix(a), *b, "containment polynomial must evaluate to B");
    Ok(Containment::Contained { witness_poly: Some(h) })
}

/// Per-eigenvalue centralizer data of a split-spectrum matrix.
#[derive(Debug, Clone)]
pub struct EigenBlock {
    pub eigenvalue: Scalar,
    pub jtype: JordanType,
    pub dimension: u64,
}

#[derive(Debug, Clone)]
pub struct SplitReport {
    pub blocks: Vec<EigenBlock>,
    pub total_dimension: u64,
}

/// One generalized eigenspace: eigenvalue, a column basis of the space,
/// and the nilpotent restriction A|_G - lambda I in that basis.
struct SplitPart {
    eigenvalue: Scalar,
    space: Matrix,
    nilpotent: Matrix,
}

fn split_parts(a: &Matrix) -> Result<Vec<SplitPart>, Error> {
    let eigen = a.eigen_split()?;
    let domain = a.domain();
    let d = a.rows();
    let mut parts = Vec::new();
    for (lambda, mult) in eigen {
        let shifted = a.sub(&Matrix::identity(domain, d).scale(&lambda));
        let generalized = shifted.matpow(mult).nullspace();
        assert_eq!(generalized.len(), mult, "generalized eigenspace has the algebraic dimension");
        let space = Matrix::from_cols(domain, d, generalized);
        let restricted = space.solve(&a.matmul(&space)).expect("eigenspace is invariant");
        let nilpotent = restricted.sub(&Matrix::identity(domain, mult).scale(&lambda));
        parts.push(SplitPart { eigenvalue: lambda, space, nilpotent });
    }
    Ok(parts)
}

/// Splits a matrix over a field into generalized eigenspaces, restricts to
/// each (where A - lambda I is nilpotent), and reports one nilpotent
/// centralizer per eigenvalue. The centralizer of A is the direct product
/// of the per-eigenvalue centralizers, so the dimensions add up.
pub fn split_centralizer(a: &Matrix) -> Result<SplitReport, Error> {
    let domain = a.domain();
    let mut blocks = Vec::new();
    let mut total = 0u64;
    for part in split_parts(a)? {
        let jtype = jordan_base(&part.nilpotent)?.jtype().clone();
        let dimension = dimension_formula(&jtype, domain);
        total += dimension;
        blocks.push(EigenBlock { eigenvalue: part.eigenvalue, jtype, dimension });
    }
    Ok(SplitReport { blocks, total_dimension: total })
}

/// Split reduction together with a realized centralizer basis of the full
/// matrix: every per-eigenvalue structured basis element is embedded back
/// through the direct-sum decomposition, so the returned matrices span
/// Cen(A) over the center and each commutes with A.
pub fn split_structured_basis(a: &Matrix) -> Result<(SplitReport, Vec<Matrix>), Error> {
    let domain = a.domain();
    let d = a.rows();
    let parts = split_parts(a)?;
    // change of base whose column blocks are the eigenspace bases
    let mut cols = Vec::with_capacity(d);
    for part in &parts {
        for j in 0..part.space.cols() {
            cols.push(part.space.col(j));
        }
    }
    let t = Matrix::from_cols(domain, d, cols);
    let t_inv = t.inverse().expect("generalized eigenspaces decompose the space");
    let mut blocks = Vec::new();
    let mut total = 0u64;
    let mut embedded = Vec::new();
    let mut offset = 0usize;
    for part in &parts {
        let mult = part.nilpotent.rows();
        let cb = structured_basis(&part.nilpotent)?;
        for small in cb.realized() {
            let mut big = Matrix::zeros(domain, d, d);
            for i in 0..mult {
                for j in 0..mult {
                    big[(offset + i, offset + j)] = small[(i, j)].clone();
                }
            }
            let full = t.matmul(&big).matmul(&t_inv);
            debug_assert!(full.commutes_with(a));
            embedded.push(full);
        }
        let jtype = cb.jtype().clone();
        let dimension = dimension_formula(&jtype, domain);
        total += dimension;
        blocks.push(EigenBlock { eigenvalue: part.eigenvalue.clone(), jtype, dimension });
        offset += mult;
    }
    Ok((SplitReport { blocks, total_dimension: total }, embedded))
}

/// Convenience: centralizer dimension over the center, by the brute route
/// for nilpotent input and through the split reduction otherwise.
pub fn centralizer_dimension(a: &Matrix) -> Result<u64, Error> {
    if nilpotency_index(a).is_some() {
        return Ok(brute_commutant(a).len() as u64);
    }
    if a.domain().is_field() {
        Ok(split_centralizer(a)?.total_dimension)
    } else {
        Err(Error::NotNilpotent)
    }
}
