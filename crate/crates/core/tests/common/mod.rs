//! Shared helpers for the integration suites.

use cenalg::jordan::JordanType;
use cenalg::matrix::Matrix;
use cenalg::scalar::{Domain, Prime};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q() -> Domain {
    Domain::Rationals
}

pub fn fp(p: u64) -> Domain {
    Domain::PrimeField(Prime::new(p).unwrap())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_invertible(domain: Domain, d: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = Matrix::from_fn(domain, d, d, |_, _| domain.from_int(rng.gen_range(-10..=10)));
        if m.rank() == d {
            return m;
        }
    }
}

pub fn conjugate(a: &Matrix, p: &Matrix) -> Matrix {
    p.matmul(a).matmul(&p.inverse().unwrap())
}

/// Uniform-ish random partition of d: parts are drawn nonincreasing.
pub fn random_partition(d: usize, rng: &mut ChaCha8Rng) -> JordanType {
    let mut parts = Vec::new();
    let mut remaining = d;
    let mut cap = d;
    while remaining > 0 {
        let part = rng.gen_range(1..=remaining.min(cap));
        parts.push(part);
        cap = part;
        remaining -= part;
    }
    JordanType::new(parts)
}

/// A random similarity conjugate of the canonical matrix of this type.
pub fn planted_nilpotent(jtype: &JordanType, domain: Domain, rng: &mut ChaCha8Rng) -> Matrix {
    let p = random_invertible(domain, jtype.dim(), rng);
    conjugate(&jtype.canonical_matrix(domain), &p)
}
