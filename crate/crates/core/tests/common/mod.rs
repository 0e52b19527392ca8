//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use fedosov_core::linalg::Matrix;
use fedosov_core::{Polynomial, Rational, RationalFunction, Slot, SymplecticSpace, Tensor};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(p: i64, d: i64) -> Rational {
    Rational::integer(p) / Rational::integer(d)
}

pub fn small_rational(r: &mut impl Rng) -> Rational {
    q(r.gen_range(-5..=5), r.gen_range(1..=4))
}

/// Sparse random tensor: each entry is nonzero with probability `density`.
pub fn tensor(r: &mut impl Rng, dim: usize, slots: &[Slot], density: f64) -> Tensor<Rational> {
    Tensor::from_fn(dim, slots, |_| if r.gen_bool(density) { small_rational(r) } else { Rational::zero() })
}

pub fn vector(r: &mut impl Rng, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| small_rational(r)).collect()
}

/// Random element of Sp(2n) as a product of symplectic transvections
/// `x ↦ x + t ω(v, x) v`.
pub fn symplectic_matrix(r: &mut impl Rng, n: usize) -> Matrix<Rational> {
    let sp = SymplecticSpace::new(n);
    let d = sp.dim();
    let mut m: Matrix<Rational> = Matrix::identity(d);
    for _ in 0..3 {
        let v: Vec<Rational> = (0..d).map(|_| Rational::integer(r.gen_range(-1..=1))).collect();
        let t = Rational::integer(r.gen_range(-2..=2));
        let fv = sp.flat(&v);
        let mut e: Matrix<Rational> = Matrix::identity(d);
        for i in 0..d {
            for j in 0..d {
                e[(i, j)] = e[(i, j)].clone() + &(t.clone() * &v[i] * &fv[j]);
            }
        }
        m = e.mul(&m);
    }
    m
}

pub fn vars(names: &[&str]) -> Arc<[String]> {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

/// Random polynomial of total degree ≤ 2 with small coefficients.
pub fn polynomial(r: &mut impl Rng, vars: &Arc<[String]>) -> Polynomial {
    let k = vars.len();
    let mut terms = Vec::new();
    for _ in 0..r.gen_range(1..=3) {
        let mut m = vec![0u32; k];
        for _ in 0..r.gen_range(0..=2) {
            m[r.gen_range(0..k)] += 1;
        }
        terms.push((m, Rational::integer(r.gen_range(-3..=3))));
    }
    Polynomial::from_terms(vars.clone(), terms)
}

pub fn rational_function(r: &mut impl Rng, vars: &Arc<[String]>) -> RationalFunction {
    loop {
        let den = polynomial(r, vars);
        if !den.is_zero() {
            return RationalFunction::from_polys(polynomial(r, vars), den).expect("nonzero denominator");
        }
    }
}
