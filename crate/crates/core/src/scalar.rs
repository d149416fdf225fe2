//! Exact scalar arithmetic over the three supported coefficient domains:
//! the rationals, prime fields, and the rational quaternions.
//!
//! All values are kept in canonical form (reduced fractions, least
//! nonnegative residues) so that equality is structural equality. Every
//! nonzero scalar is invertible; the quaternions are the one
//! noncommutative domain and the reason several operations track a
//! center basis rather than assuming commutativity.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};

use crate::error::Error;
use crate::matrix::Matrix;

/// A checked prime modulus for `Domain::PrimeField`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    /// Validates primality by trial division; inputs are desk scale.
    pub fn new(p: u64) -> Result<Prime, Error> {
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p % d == 0 {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p))
    }

    pub(crate) fn new_unchecked(p: u64) -> Prime {
        Prime(p)
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Descriptor of the coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Rationals,
    PrimeField(Prime),
    RationalQuaternions,
}

impl Domain {
    pub fn prime_field(p: u64) -> Result<Domain, Error> {
        Ok(Domain::PrimeField(Prime::new(p)?))
    }

    pub fn is_commutative(self) -> bool {
        !matches!(self, Domain::RationalQuaternions)
    }

    pub fn is_field(self) -> bool {
        self.is_commutative()
    }

    /// Dimension of the domain over its center.
    pub fn center_degree(self) -> usize {
        match self {
            Domain::RationalQuaternions => 4,
            _ => 1,
        }
    }

    /// Basis of the domain over its center; the first element is 1.
    pub fn center_basis(self) -> Vec<Scalar> {
        match self {
            Domain::RationalQuaternions => vec![
                Scalar::quaternion_units(1, 0, 0, 0),
                Scalar::quaternion_units(0, 1, 0, 0),
                Scalar::quaternion_units(0, 0, 1, 0),
                Scalar::quaternion_units(0, 0, 0, 1),
            ],
            d => vec![d.one()],
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(self, v: i64) -> Scalar {
        match self {
            Domain::Rationals => Scalar::Rat(BigRational::from(BigInt::from(v))),
            Domain::PrimeField(p) => {
                let m = p.get() as i128;
                let r = ((v as i128 % m) + m) % m;
                Scalar::Fp { val: r as u64, p: p.get() }
            }
            Domain::RationalQuaternions => Scalar::Quat(Box::new(Quat {
                a: BigRational::from(BigInt::from(v)),
                b: BigRational::zero(),
                c: BigRational::zero(),
                d: BigRational::zero(),
            })),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rationals => write!(f, "Q"),
            Domain::PrimeField(p) => write!(f, "F{}", p.get()),
            Domain::RationalQuaternions => write!(f, "H(Q)"),
        }
    }
}

/// A rational quaternion a + b i + c j + d k.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quat {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

/// A domain-tagged exact scalar.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { val: u64, p: u64 },
    Quat(Box<Quat>),
}

fn fp_add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn fp_sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn fp_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse mod p by the extended Euclidean algorithm; a must be nonzero mod p.
pub(crate) fn fp_inv(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of a non-unit");
    (((t0 % p as i128) + p as i128) % p as i128) as u64
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rat(_) => Domain::Rationals,
            Scalar::Fp { p, .. } => Domain::PrimeField(Prime::new_unchecked(*p)),
            Scalar::Quat(_) => Domain::RationalQuaternions,
        }
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::Rat(r)
    }

    /// Quaternion with small integer components, mostly for tests and bases.
    pub fn quaternion_units(a: i64, b: i64, c: i64, d: i64) -> Scalar {
        Scalar::Quat(Box::new(Quat {
            a: BigRational::from(BigInt::from(a)),
            b: BigRational::from(BigInt::from(b)),
            c: BigRational::from(BigInt::from(c)),
            d: BigRational::from(BigInt::from(d)),
        }))
    }

    pub fn quaternion(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Scalar {
        Scalar::Quat(Box::new(Quat { a, b, c, d }))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
            Scalar::Quat(q) => q.a.is_zero() && q.b.is_zero() && q.c.is_zero() && q.d.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
            Scalar::Quat(q) => q.a.is_one() && q.b.is_zero() && q.c.is_zero() && q.d.is_zero(),
        }
    }

    fn check_same_domain(&self, other: &Scalar) {
        assert!(
            self.domain() == other.domain(),
            "scalar domain mismatch: {} vs {}",
            self.domain(),
            other.domain()
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same_domain(other);
        match (self, other) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Scalar::Fp { val: x, p }, Scalar::Fp { val: y, .. }) => {
                Scalar::Fp { val: fp_add(*x, *y, *p), p: *p }
            }
            (Scalar::Quat(x), Scalar::Quat(y)) => Scalar::Quat(Box::new(Quat {
                a: &x.a + &y.a,
                b: &x.b + &y.b,
                c: &x.c + &y.c,
                d: &x.d + &y.d,
            })),
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.check_same_domain(other);
        match (self, other) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            (Scalar::Fp { val: x, p }, Scalar::Fp { val: y, .. }) => {
                Scalar::Fp { val: fp_sub(*x, *y, *p), p: *p }
            }
            (Scalar::Quat(x), Scalar::Quat(y)) => Scalar::Quat(Box::new(Quat {
                a: &x.a - &y.a,
                b: &x.b - &y.b,
                c: &x.c - &y.c,
                d: &x.d - &y.d,
            })),
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        self.domain().zero().sub(self)
    }

    /// Exact product; quaternions multiply by the relations
    /// i^2 = j^2 = k^2 = ijk = -1, so the order of the factors matters.
    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same_domain(other);
        match (self, other) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Scalar::Fp { val: x, p }, Scalar::Fp { val: y, .. }) => {
                Scalar::Fp { val: fp_mul(*x, *y, *p), p: *p }
            }
            (Scalar::Quat(x), Scalar::Quat(y)) => {
                let a = &x.a * &y.a - &x.b * &y.b - &x.c * &y.c - &x.d * &y.d;
                let b = &x.a * &y.b + &x.b * &y.a + &x.c * &y.d - &x.d * &y.c;
                let c = &x.a * &y.c - &x.b * &y.d + &x.c * &y.a + &x.d * &y.b;
                let d = &x.a * &y.d + &x.b * &y.c - &x.c * &y.b + &x.d * &y.a;
                Scalar::Quat(Box::new(Quat { a, b, c, d }))
            }
            _ => unreachable!(),
        }
    }

    /// Two-sided inverse: `a.invert()? * a == 1 == a * a.invert()?`.
    pub fn invert(&self) -> Result<Scalar, Error> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Fp { val, p } => Scalar::Fp { val: fp_inv(*val, *p), p: *p },
            Scalar::Quat(q) => {
                // conjugate over norm
                let n = &q.a * &q.a + &q.b * &q.b + &q.c * &q.c + &q.d * &q.d;
                Scalar::Quat(Box::new(Quat {
                    a: &q.a / &n,
                    b: -(&q.b / &n),
                    c: -(&q.c / &n),
                    d: -(&q.d / &n),
                }))
            }
        })
    }

    /// True iff the scalar commutes with every center-basis element.
    pub fn is_central(&self) -> bool {
        match self {
            Scalar::Quat(q) => q.b.is_zero() && q.c.is_zero() && q.d.is_zero(),
            _ => true,
        }
    }

    /// The rational coordinates of the scalar in the center basis:
    /// a single coordinate for Q, the four components for H(Q).
    /// Prime-field values have no rational coordinates and are not handled here.
    pub(crate) fn center_coordinates(&self) -> Vec<BigRational> {
        match self {
            Scalar::Rat(r) => vec![r.clone()],
            Scalar::Quat(q) => vec![q.a.clone(), q.b.clone(), q.c.clone(), q.d.clone()],
            Scalar::Fp { .. } => panic!("prime-field scalars have no rational coordinates"),
        }
    }
}

/// Matrix of left multiplication by `a` in the center basis.
///
/// For the quaternions this is the injective ring homomorphism into
/// 4x4 rational matrices whose column t holds the coordinates of
/// `a * b_t` in the basis (1, i, j, k); for Q and F_p it is the 1x1
/// matrix `[a]` over the same domain.
pub fn regular_representation(a: &Scalar) -> Matrix {
    match a {
        Scalar::Quat(_) => {
            let basis = Domain::RationalQuaternions.center_basis();
            columns_in_center_basis(basis.iter().map(|b| a.mul(b)))
        }
        _ => Matrix::from_rows(a.domain(), vec![vec![a.clone()]]),
    }
}

/// Matrix of right multiplication `y -> y * a` in the center basis (quaternions).
pub(crate) fn right_representation(a: &Scalar) -> Matrix {
    assert_eq!(a.domain(), Domain::RationalQuaternions);
    let basis = Domain::RationalQuaternions.center_basis();
    columns_in_center_basis(basis.iter().map(|b| b.mul(a)))
}

fn columns_in_center_basis(values: impl Iterator<Item = Scalar>) -> Matrix {
    let cols: Vec<Vec<BigRational>> = values.map(|v| v.center_coordinates()).collect();
    let n = cols.len();
    let mut m = Matrix::zeros(Domain::Rationals, n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            m[(i, j)] = Scalar::Rat(x.clone());
        }
    }
    m
}

/// Parses a rational literal: an optional sign, digits, and an optional
/// `/denominator` part. Used for Q scalars and quaternion components.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{val}"),
            Scalar::Quat(q) => {
                let part = |r: &BigRational| -> String {
                    if r.denom().is_one() {
                        format!("{}", r.numer())
                    } else {
                        format!("{}/{}", r.numer(), r.denom())
                    }
                };
                write!(f, "({}, {}, {}, {})", part(&q.a), part(&q.b), part(&q.c), part(&q.d))
            }
        }
    }
}

impl Quat {
    pub fn is_negative_of(&self, other: &Quat) -> bool {
        self.a == -&other.a && self.b == -&other.b && self.c == -&other.c && self.d == -&other.d
    }
}
