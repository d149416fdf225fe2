//! Dense univariate polynomials with exact scalar coefficients.
//!
//! Coefficients are stored by ascending degree with no trailing zeros.
//! Multiplication and matrix evaluation are used over the commutative
//! domains; the noncommutative quaternion case never reaches them.

use std::fmt;

use crate::matrix::Matrix;
use crate::scalar::{Domain, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    domain: Domain,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(domain: Domain, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        for c in &coeffs {
            assert_eq!(c.domain(), domain, "polynomial coefficient domain mismatch");
        }
        Poly { domain, coeffs }
    }

    pub fn zero(domain: Domain) -> Poly {
        Poly { domain, coeffs: vec![] }
    }

    pub fn one(domain: Domain) -> Poly {
        Poly::new(domain, vec![domain.one()])
    }

    pub fn monomial(domain: Domain, coeff: Scalar, degree: usize) -> Poly {
        let mut coeffs = vec![domain.zero(); degree];
        coeffs.push(coeff);
        Poly::new(domain, coeffs)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.domain.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Poly::new(self.domain, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        Poly::new(self.domain, coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.domain, self.coeffs.iter().map(Scalar::neg).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.domain, self.coeffs.iter().map(|x| c.mul(x)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.domain);
        }
        let mut coeffs = vec![self.domain.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.domain, coeffs)
    }

    pub fn eval_scalar(&self, x: &Scalar) -> Scalar {
        let mut acc = self.domain.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Horner evaluation at a square matrix over a commutative domain.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        assert!(self.domain.is_commutative(), "matrix evaluation needs commutative scalars");
        assert_eq!(a.domain(), self.domain);
        let d = a.rows();
        let mut acc = Matrix::zeros(self.domain, d, d);
        for c in self.coeffs.iter().rev() {
            acc = acc.matmul(a);
            if !c.is_zero() {
                acc = acc.add(&Matrix::identity(self.domain, d).scale(c));
            }
        }
        acc
    }

    /// Divides by (z - root); returns None when the remainder is nonzero.
    pub fn deflate(&self, root: &Scalar) -> Option<Poly> {
        let deg = self.degree()?;
        if deg == 0 {
            return None;
        }
        let mut quotient = vec![self.domain.zero(); deg];
        let mut carry = self.domain.zero();
        for i in (0..=deg).rev() {
            let v = self.coeff(i).add(&carry);
            if i == 0 {
                if v.is_zero() {
                    return Some(Poly::new(self.domain, quotient));
                }
                return None;
            }
            quotient[i - 1] = v.clone();
            carry = v.mul(root);
        }
        unreachable!()
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.invert().expect("nonzero leading coefficient");
                Poly::new(self.domain, self.coeffs.iter().map(|c| inv.mul(c)).collect())
            }
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "z")?,
                1 => write!(f, "{c}*z")?,
                _ if c.is_one() => write!(f, "z^{i}")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        Ok(())
    }
}
