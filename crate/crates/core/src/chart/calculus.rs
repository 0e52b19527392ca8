//! Coordinate formulas for connections and tensor fields.
//!
//! A connection is stored like a (1,2)-tensor: `conn[i][j][k]` is the
//! coefficient of `∂_k` in `∇_{∂_i} ∂_j`. Covariant derivatives put the new
//! derivative slot first.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::scalar::{RationalFunction as Rf, Scalar};
use crate::tensor::{Slot, Tensor};

pub(crate) const VV_V: [Slot; 3] = [Slot::Cov, Slot::Cov, Slot::Contra];
pub(crate) const VVV_V: [Slot; 4] = [Slot::Cov, Slot::Cov, Slot::Cov, Slot::Contra];

/// `∂f/∂x_i` where `x_i = coords[i]`; zero when `f` does not involve it.
pub fn partial(f: &Rf, coords: &Arc<[String]>, i: usize) -> Rf {
    if f.is_zero() {
        return Rf::zero();
    }
    match f.vars().iter().position(|v| *v == coords[i]) {
        None => Rf::zero(),
        Some(j) => f.partial_index(j),
    }
}

fn mul_acc(acc: &mut Rf, a: &Rf, b: &Rf) {
    if !a.is_zero() && !b.is_zero() {
        *acc = acc.clone() + &(a.clone() * b);
    }
}

/// `T_X Y = ∇_X Y − ∇_Y X`.
pub fn torsion(conn: &Tensor<Rf>) -> Tensor<Rf> {
    Tensor::from_fn(conn.dim(), &VV_V, |ix| conn.get(ix).clone() - conn.get(&[ix[1], ix[0], ix[2]]))
}

/// `R_{XY}Z = ∇_{[X,Y]}Z − ∇_X ∇_Y Z + ∇_Y ∇_X Z`, stored as
/// `R[i][j][l][k]` = k-th component of `R_{∂_i ∂_j} ∂_l`. This is the
/// negative of the more common sign convention.
pub fn curvature(conn: &Tensor<Rf>, coords: &Arc<[String]>) -> Tensor<Rf> {
    let d = conn.dim();
    Tensor::from_fn(d, &VVV_V, |ix| {
        let (i, j, l, k) = (ix[0], ix[1], ix[2], ix[3]);
        let mut std = partial(conn.get(&[j, l, k]), coords, i) - partial(conn.get(&[i, l, k]), coords, j);
        for m in 0..d {
            mul_acc(&mut std, conn.get(&[i, m, k]), conn.get(&[j, l, m]));
            let t = conn.get(&[j, m, k]).clone() * conn.get(&[i, l, m]);
            std = std - t;
        }
        -std
    })
}

/// `(∇T)[i, rest…] = (∇_{∂_i} T)[rest…]`.
pub fn covariant_derivative(conn: &Tensor<Rf>, coords: &Arc<[String]>, t: &Tensor<Rf>) -> Tensor<Rf> {
    let d = conn.dim();
    let mut slots = alloc::vec![Slot::Cov];
    slots.extend_from_slice(t.slots());
    Tensor::from_fn(d, &slots, |ix| {
        let i = ix[0];
        let rest = &ix[1..];
        let mut acc = partial(t.get(rest), coords, i);
        let mut src: Vec<usize> = rest.to_vec();
        for (s, slot) in t.slots().iter().enumerate() {
            let a = rest[s];
            for l in 0..d {
                src[s] = l;
                let v = t.get(&src);
                if v.is_zero() {
                    continue;
                }
                match slot {
                    Slot::Contra => mul_acc(&mut acc, conn.get(&[i, l, a]), v),
                    Slot::Cov => {
                        let g = conn.get(&[i, a, l]);
                        if !g.is_zero() {
                            acc = acc - &(g.clone() * v);
                        }
                    }
                }
            }
            src[s] = a;
        }
        acc
    })
}

/// `[X, Y]^k = X^i ∂_i Y^k − Y^i ∂_i X^k`.
pub fn lie_bracket(x: &[Rf], y: &[Rf], coords: &Arc<[String]>) -> Vec<Rf> {
    let d = x.len();
    (0..d)
        .map(|k| {
            let mut acc = Rf::zero();
            for i in 0..d {
                mul_acc(&mut acc, &x[i], &partial(&y[k], coords, i));
                let t = y[i].clone() * &partial(&x[k], coords, i);
                acc = acc - t;
            }
            acc
        })
        .collect()
}

/// `(L_ξ ω)_{ij} = ξ^k ∂_k ω_{ij} + ω_{kj} ∂_i ξ^k + ω_{ik} ∂_j ξ^k`.
pub fn lie_derivative_two_form(omega: &Tensor<Rf>, xi: &[Rf], coords: &Arc<[String]>) -> Tensor<Rf> {
    let d = omega.dim();
    Tensor::from_fn(d, &[Slot::Cov, Slot::Cov], |ix| {
        let (i, j) = (ix[0], ix[1]);
        let mut acc = Rf::zero();
        for k in 0..d {
            mul_acc(&mut acc, &xi[k], &partial(omega.get(&[i, j]), coords, k));
            mul_acc(&mut acc, omega.get(&[k, j]), &partial(&xi[k], coords, i));
            mul_acc(&mut acc, omega.get(&[i, k]), &partial(&xi[k], coords, j));
        }
        acc
    })
}

/// `(dα)_{ij} = ∂_i α_j − ∂_j α_i`.
pub fn exterior_derivative_one_form(alpha: &[Rf], coords: &Arc<[String]>) -> Tensor<Rf> {
    let d = alpha.len();
    Tensor::from_fn(d, &[Slot::Cov, Slot::Cov], |ix| {
        partial(&alpha[ix[1]], coords, ix[0]) - partial(&alpha[ix[0]], coords, ix[1])
    })
}

/// `(dω)_{ijk} = ∂_i ω_{jk} + ∂_j ω_{ki} + ∂_k ω_{ij}`.
pub fn exterior_derivative_two_form(omega: &Tensor<Rf>, coords: &Arc<[String]>) -> Tensor<Rf> {
    let d = omega.dim();
    Tensor::from_fn(d, &[Slot::Cov; 3], |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        partial(omega.get(&[j, k]), coords, i) + &partial(omega.get(&[k, i]), coords, j)
            + &partial(omega.get(&[i, j]), coords, k)
    })
}

/// `X ↦ ω(X, ·)` for a general 2-form given by its matrix.
pub fn contract_first<F: Scalar>(omega: &Tensor<F>, x: &[F]) -> Vec<F> {
    let d = omega.dim();
    (0..d)
        .map(|j| {
            (0..d).fold(F::zero(), |acc, i| {
                if x[i].is_zero() {
                    acc
                } else {
                    acc + &(x[i].clone() * omega.get(&[i, j]))
                }
            })
        })
        .collect()
}

/// `ω(u, v)` for a general 2-form.
pub fn pair<F: Scalar>(omega: &Tensor<F>, u: &[F], v: &[F]) -> F {
    contract_first(omega, u).iter().zip(v).fold(F::zero(), |acc, (a, b)| {
        if a.is_zero() || b.is_zero() {
            acc
        } else {
            acc + &(a.clone() * b)
        }
    })
}

/// `S_X Y = ω(X,Y) ξ − ω(Y,ξ) X` for the 2-form `omega` and vector `xi`.
pub fn linear_type_structure<F: Scalar>(omega: &Tensor<F>, xi: &[F]) -> Tensor<F> {
    let d = omega.dim();
    // ω(∂_j, ξ)
    let w_xi: Vec<F> = (0..d)
        .map(|j| (0..d).fold(F::zero(), |acc, l| acc + &(omega.get(&[j, l]).clone() * &xi[l])))
        .collect();
    Tensor::from_fn(d, &VV_V, |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        let mut v = omega.get(&[i, j]).clone() * &xi[k];
        if i == k {
            v = v - &w_xi[j];
        }
        v
    })
}

/// Lower the last index with `omega`: `A(…, Z, U) = ω(A(…, Z), U)` for a
/// tensor whose last slot is contravariant.
pub fn lower_last<F: Scalar>(t: &Tensor<F>, omega: &Tensor<F>) -> Tensor<F> {
    let d = t.dim();
    let r = t.rank();
    let mut slots = t.slots().to_vec();
    slots[r - 1] = Slot::Cov;
    let mut src = alloc::vec![0; r];
    Tensor::from_fn(d, &slots, |ix| {
        src.copy_from_slice(ix);
        let u = ix[r - 1];
        let mut acc = F::zero();
        for k in 0..d {
            src[r - 1] = k;
            let v = t.get(&src);
            let w = omega.get(&[k, u]);
            if !v.is_zero() && !w.is_zero() {
                acc = acc + &(v.clone() * w);
            }
        }
        acc
    })
}
