//! Generating formulas and the structural maps between the two spaces.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::symplectic::SymplecticSpace;
use crate::tensor::{Slot, Tensor};

const COV3: [Slot; 3] = [Slot::Cov; 3];

/// `ω(e_x, U)` for every basis index `x`.
fn omega_with<F: Scalar>(sp: &SymplecticSpace, u: &[F]) -> Vec<F> {
    sp.flat(u).into_iter().map(|v| -v).collect()
}

fn w<F: Scalar>(sp: &SymplecticSpace, i: usize, j: usize) -> F {
    F::from_i64(sp.omega_entry(i, j))
}

/// `S(X,Y,Z) = ω(Z,Y)ω(X,U) + ω(Z,X)ω(Y,U)`.
pub fn s1_generator<F: Scalar>(sp: &SymplecticSpace, u: &[F]) -> Tensor<F> {
    let wu = omega_with(sp, u);
    Tensor::from_fn(sp.dim(), &COV3, |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        w::<F>(sp, z, y) * &wu[x] + w::<F>(sp, z, x) * &wu[y]
    })
}

/// `T(X,Y,Z) = 2ω(X,Y)ω(Z,U) + ω(X,Z)ω(Y,U) − ω(Y,Z)ω(X,U)`.
pub fn t1_generator<F: Scalar>(sp: &SymplecticSpace, u: &[F]) -> Tensor<F> {
    let wu = omega_with(sp, u);
    Tensor::from_fn(sp.dim(), &COV3, |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        F::from_i64(2 * sp.omega_entry(x, y)) * &wu[z] + w::<F>(sp, x, z) * &wu[y] - w::<F>(sp, y, z) * &wu[x]
    })
}

/// `T(X,Y,Z) = ω(X,Y)ω(U,Z) + ω(Y,Z)ω(U,X) + ω(Z,X)ω(U,Y)`.
pub fn t3_generator<F: Scalar>(sp: &SymplecticSpace, u: &[F]) -> Tensor<F> {
    eta(sp, &sp.flat(u))
}

/// `T(X,Y,Z) = ω(X,Y)ω(Z,U) − n ω(X,Z)ω(Y,U) + n ω(Y,Z)ω(X,U)`.
pub fn w_generator<F: Scalar>(sp: &SymplecticSpace, u: &[F]) -> Tensor<F> {
    let wu = omega_with(sp, u);
    let n = sp.half_dim() as i64;
    Tensor::from_fn(sp.dim(), &COV3, |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        w::<F>(sp, x, y) * &wu[z] - F::from_i64(n * sp.omega_entry(x, z)) * &wu[y]
            + F::from_i64(n * sp.omega_entry(y, z)) * &wu[x]
    })
}

/// `A2(S)(X,Y,Z) = S(Y,Z,X) − S(X,Z,Y)`.
pub fn a2<F: Scalar>(s: &Tensor<F>) -> Tensor<F> {
    Tensor::from_fn(s.dim(), &COV3, |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        s.get(&[y, z, x]).clone() - s.get(&[x, z, y])
    })
}

/// Cyclic sum, mapping ∧²V*⊗V* onto ∧³V*.
pub fn a3<F: Scalar>(sp: &SymplecticSpace, t: &Tensor<F>) -> Tensor<F> {
    sp.cyclic_sum(t)
}

/// `C(T)(Z) = Σ_i T(e_i, e_{i+n}, Z) + T(Z, e_i, e_{i+n}) + T(e_{i+n}, Z, e_i)`.
pub fn c_map<F: Scalar>(sp: &SymplecticSpace, t: &Tensor<F>) -> Vec<F> {
    let n = sp.half_dim();
    (0..sp.dim())
        .map(|z| {
            (0..n).fold(F::zero(), |acc, i| {
                acc + t.get(&[i, i + n, z]) + t.get(&[z, i, i + n]) + t.get(&[i + n, z, i])
            })
        })
        .collect()
}

/// `η(α) = Σ_i e_i* ∧ e_{i+n}* ∧ α`, evaluated as
/// `ω(X,Y)α(Z) + ω(Y,Z)α(X) + ω(Z,X)α(Y)`.
pub fn eta<F: Scalar>(sp: &SymplecticSpace, alpha: &[F]) -> Tensor<F> {
    Tensor::from_fn(sp.dim(), &COV3, |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        w::<F>(sp, x, y) * &alpha[z] + w::<F>(sp, y, z) * &alpha[x] + w::<F>(sp, z, x) * &alpha[y]
    })
}

/// The contraction `s13`, projecting S²V*⊗V* onto V*.
pub fn phi<F: Scalar>(sp: &SymplecticSpace, s: &Tensor<F>) -> Result<Vec<F>> {
    sp.s13(s)
}

/// Cyclic sum, mapping S²V*⊗V* onto S³V*.
pub fn pi<F: Scalar>(sp: &SymplecticSpace, s: &Tensor<F>) -> Result<Tensor<F>> {
    if let Some(ix) = s.symmetry_violation(0, 1) {
        return Err(Error::Symmetry(alloc::format!("argument is not symmetric in its first two slots at {ix:?}")));
    }
    Ok(sp.cyclic_sum(s))
}

/// Right inverse of `s13`: the S1 generator of `U = α♯`, divided by `2n+1`.
pub fn xi_embed<F: Scalar>(sp: &SymplecticSpace, alpha: &[F]) -> Tensor<F> {
    let u = sp.sharp(alpha);
    let k = F::from_i64(2 * sp.half_dim() as i64 + 1).inv().expect("nonzero");
    s1_generator(sp, &u).scale(&k)
}
