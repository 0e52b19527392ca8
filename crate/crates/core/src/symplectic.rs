//! The standard symplectic space and the index gymnastics built on it.
//!
//! The basis is `e_0, …, e_{2n-1}` with `ω(e_i, e_{i+n}) = 1` for `i < n`.
//! Covectors are plain component vectors `α_b = α(e_b)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::tensor::{Slot, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    n: usize,
}

const VV_V: [Slot; 3] = [Slot::Cov, Slot::Cov, Slot::Contra];
const COV3: [Slot; 3] = [Slot::Cov; 3];

impl SymplecticSpace {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "half-dimension must be positive");
        SymplecticSpace { n }
    }

    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// `ω(e_i, e_j)` as an integer in `{-1, 0, 1}`.
    pub fn omega_entry(&self, i: usize, j: usize) -> i64 {
        let n = self.n;
        if i < n && j == i + n {
            1
        } else if j < n && i == j + n {
            -1
        } else {
            0
        }
    }

    pub fn omega_matrix<F: Scalar>(&self) -> Matrix<F> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = F::from_i64(self.omega_entry(i, j));
            }
        }
        m
    }

    pub fn omega_tensor<F: Scalar>(&self) -> Tensor<F> {
        Tensor::from_fn(self.dim(), &[Slot::Cov, Slot::Cov], |ix| F::from_i64(self.omega_entry(ix[0], ix[1])))
    }

    pub fn omega<F: Scalar>(&self, u: &[F], v: &[F]) -> F {
        let n = self.n;
        let mut acc = F::zero();
        for i in 0..n {
            acc = acc + &(u[i].clone() * &v[i + n]) - &(u[i + n].clone() * &v[i]);
        }
        acc
    }

    pub fn basis_vector<F: Scalar>(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[i] = F::one();
        v
    }

    /// `X ↦ X*` with `X*(Y) = ω(X, Y)`.
    pub fn flat<F: Scalar>(&self, x: &[F]) -> Vec<F> {
        let n = self.n;
        let mut out = vec![F::zero(); self.dim()];
        for i in 0..n {
            out[i] = -x[i + n].clone();
            out[i + n] = x[i].clone();
        }
        out
    }

    /// Inverse of [`flat`](Self::flat).
    pub fn sharp<F: Scalar>(&self, alpha: &[F]) -> Vec<F> {
        let n = self.n;
        let mut out = vec![F::zero(); self.dim()];
        for i in 0..n {
            out[i] = alpha[i + n].clone();
            out[i + n] = -alpha[i].clone();
        }
        out
    }

    fn expect_shape<F: Scalar>(&self, t: &Tensor<F>, slots: &[Slot], what: &str) -> Result<()> {
        if t.dim() != self.dim() || t.slots() != slots {
            return Err(Error::DimensionMismatch(format!(
                "{what}: expected valence {slots:?} in dimension {}, got {:?} in dimension {}",
                self.dim(),
                t.slots(),
                t.dim()
            )));
        }
        Ok(())
    }

    fn require_antisymmetric<F: Scalar>(&self, t: &Tensor<F>, what: &str) -> Result<()> {
        match t.antisymmetry_violation(0, 1) {
            None => Ok(()),
            Some(ix) => Err(Error::Symmetry(format!("{what} is not antisymmetric in its first two slots at {ix:?}"))),
        }
    }

    fn require_symmetric<F: Scalar>(&self, t: &Tensor<F>, what: &str) -> Result<()> {
        match t.symmetry_violation(0, 1) {
            None => Ok(()),
            Some(ix) => Err(Error::Symmetry(format!("{what} is not symmetric in its first two slots at {ix:?}"))),
        }
    }

    /// `T_{XYZ} = ω(T_X Y, Z)` for an antisymmetric (1,2)-tensor.
    pub fn torsion_lower<F: Scalar>(&self, t: &Tensor<F>) -> Result<Tensor<F>> {
        self.expect_shape(t, &VV_V, "torsion")?;
        self.require_antisymmetric(t, "torsion")?;
        Ok(self.torsion_lower_unchecked(t))
    }

    pub(crate) fn torsion_lower_unchecked<F: Scalar>(&self, t: &Tensor<F>) -> Tensor<F> {
        let d = self.dim();
        let mut out = Tensor::zeros(d, &COV3);
        for a in 0..d {
            for b in 0..d {
                let v: Vec<F> = (0..d).map(|k| t.get(&[a, b, k]).clone()).collect();
                for (c, val) in self.flat(&v).into_iter().enumerate() {
                    out.set(&[a, b, c], val);
                }
            }
        }
        out
    }

    /// Inverse of [`torsion_lower`](Self::torsion_lower).
    pub fn torsion_raise<F: Scalar>(&self, t: &Tensor<F>) -> Result<Tensor<F>> {
        self.expect_shape(t, &COV3, "lowered torsion")?;
        self.require_antisymmetric(t, "lowered torsion")?;
        let d = self.dim();
        let mut out = Tensor::zeros(d, &VV_V);
        for a in 0..d {
            for b in 0..d {
                let alpha: Vec<F> = (0..d).map(|k| t.get(&[a, b, k]).clone()).collect();
                for (c, val) in self.sharp(&alpha).into_iter().enumerate() {
                    out.set(&[a, b, c], val);
                }
            }
        }
        Ok(out)
    }

    /// `S_{XYZ} = ω(S_Z X, Y)`.
    pub fn cotorsion_lower<F: Scalar>(&self, s: &Tensor<F>) -> Result<Tensor<F>> {
        self.expect_shape(s, &VV_V, "structure tensor")?;
        let d = self.dim();
        let mut out = Tensor::zeros(d, &COV3);
        for z in 0..d {
            for x in 0..d {
                let v: Vec<F> = (0..d).map(|k| s.get(&[z, x, k]).clone()).collect();
                for (y, val) in self.flat(&v).into_iter().enumerate() {
                    out.set(&[x, y, z], val);
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`cotorsion_lower`](Self::cotorsion_lower).
    pub fn cotorsion_raise<F: Scalar>(&self, s: &Tensor<F>) -> Result<Tensor<F>> {
        self.expect_shape(s, &COV3, "lowered structure tensor")?;
        let d = self.dim();
        let mut out = Tensor::zeros(d, &VV_V);
        for z in 0..d {
            for x in 0..d {
                let alpha: Vec<F> = (0..d).map(|y| s.get(&[x, y, z]).clone()).collect();
                for (k, val) in self.sharp(&alpha).into_iter().enumerate() {
                    out.set(&[z, x, k], val);
                }
            }
        }
        Ok(out)
    }

    /// `s13(S)(Z) = Σ_i S(e_i, Z, e_{i+n}) − S(e_{i+n}, Z, e_i)`.
    pub fn s13<F: Scalar>(&self, s: &Tensor<F>) -> Result<Vec<F>> {
        self.expect_shape(s, &COV3, "s13 argument")?;
        self.require_symmetric(s, "s13 argument")?;
        Ok(self.pair_13(s))
    }

    /// `t12(T)(Z) = Σ_i T(e_i, e_{i+n}, Z)`.
    pub fn t12<F: Scalar>(&self, t: &Tensor<F>) -> Result<Vec<F>> {
        self.expect_shape(t, &COV3, "t12 argument")?;
        self.require_antisymmetric(t, "t12 argument")?;
        Ok(self.t12_unchecked(t))
    }

    pub(crate) fn t12_unchecked<F: Scalar>(&self, t: &Tensor<F>) -> Vec<F> {
        let n = self.n;
        (0..self.dim())
            .map(|z| (0..n).fold(F::zero(), |acc, i| acc + t.get(&[i, i + n, z])))
            .collect()
    }

    /// `t13(T)(Y) = Σ_i T(e_i, Y, e_{i+n}) − T(e_{i+n}, Y, e_i)`.
    pub fn t13<F: Scalar>(&self, t: &Tensor<F>) -> Result<Vec<F>> {
        self.expect_shape(t, &COV3, "t13 argument")?;
        self.require_antisymmetric(t, "t13 argument")?;
        Ok(self.pair_13(t))
    }

    pub(crate) fn pair_13<F: Scalar>(&self, t: &Tensor<F>) -> Vec<F> {
        let n = self.n;
        (0..self.dim())
            .map(|y| (0..n).fold(F::zero(), |acc, i| acc + t.get(&[i, y, i + n]) - t.get(&[i + n, y, i])))
            .collect()
    }

    /// `(𝔖A)_{XYZ} = A_{XYZ} + A_{YZX} + A_{ZXY}`.
    pub fn cyclic_sum<F: Scalar>(&self, a: &Tensor<F>) -> Tensor<F> {
        Tensor::from_fn(a.dim(), a.slots(), |ix| {
            let (x, y, z) = (ix[0], ix[1], ix[2]);
            a.get(&[x, y, z]).clone() + a.get(&[y, z, x]) + a.get(&[z, x, y])
        })
    }

    /// Whether `Mᵀ ω M = ω`.
    pub fn is_symplectic_matrix<F: Scalar>(&self, m: &Matrix<F>) -> bool {
        let w = self.omega_matrix::<F>();
        m.rows() == self.dim() && m.cols() == self.dim() && m.transpose().mul(&w).mul(m) == w
    }
}

/// Symplectic Gram–Schmidt for the nondegenerate antisymmetric form `b`.
///
/// Returns `M` whose columns `e_1, …, e_n, f_1, …, f_n` satisfy
/// `b(e_i, f_j) = δ_ij` and `b(e_i, e_j) = b(f_i, f_j) = 0`, i.e.
/// `Mᵀ b M` is the standard matrix.
pub fn symplectic_basis<F: Scalar>(b: &Matrix<F>) -> Result<Matrix<F>> {
    let d = b.rows();
    if d != b.cols() || d % 2 != 0 || d == 0 {
        return Err(Error::DimensionMismatch("form must be a square matrix of even size".into()));
    }
    let form = |u: &[F], v: &[F]| -> F { dot(u, &b.mul_vec(v)) };
    let mut pool: Vec<Vec<F>> = (0..d)
        .map(|i| {
            let mut v = vec![F::zero(); d];
            v[i] = F::one();
            v
        })
        .collect();
    let mut es = Vec::new();
    let mut fs = Vec::new();
    while !pool.is_empty() {
        let Some(iu) = pool.iter().position(|u| pool.iter().any(|v| !form(u, v).is_zero())) else {
            return Err(Error::Singular("form is degenerate".into()));
        };
        let u = pool.remove(iu);
        let iv = pool.iter().position(|v| !form(&u, v).is_zero()).expect("partner exists");
        let v = pool.remove(iv);
        let k = form(&u, &v).inv().expect("nonzero pairing");
        let f: Vec<F> = v.iter().map(|x| x.clone() * &k).collect();
        for w in pool.iter_mut() {
            let wf = form(w, &f);
            let we = form(w, &u);
            for i in 0..d {
                let t = w[i].clone() - &(wf.clone() * &u[i]) + &(we.clone() * &f[i]);
                w[i] = t;
            }
        }
        pool.retain(|w| w.iter().any(|x| !x.is_zero()));
        es.push(u);
        fs.push(f);
    }
    if es.len() * 2 != d {
        return Err(Error::Singular("form is degenerate".into()));
    }
    es.extend(fs);
    Ok(Matrix::from_columns(&es, d))
}

fn dot<F: Scalar>(u: &[F], v: &[F]) -> F {
    u.iter().zip(v).fold(F::zero(), |acc, (a, b)| if a.is_zero() || b.is_zero() { acc } else { acc + &(a.clone() * b) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(v: i64) -> Rational {
        Rational::integer(v)
    }

    #[test]
    fn flat_of_first_basis_vector() {
        let sp = SymplecticSpace::new(2);
        let e1: Vec<Rational> = sp.basis_vector(0);
        let f = sp.flat(&e1);
        assert_eq!(f, vec![q(0), q(0), q(1), q(0)]);
        assert_eq!(sp.sharp(&f), e1);
    }

    #[test]
    fn lowered_torsion_example() {
        let sp = SymplecticSpace::new(1);
        let mut t = Tensor::<Rational>::vv_v(2);
        t.set(&[0, 1, 0], q(1));
        t.set(&[1, 0, 0], q(-1));
        let low = sp.torsion_lower(&t).unwrap();
        assert_eq!(low.get(&[0, 1, 1]), &q(1));
        assert_eq!(low.nonzero().count(), 2);
        assert_eq!(sp.torsion_raise(&low).unwrap(), t);
        let mut bad = t.clone();
        bad.set(&[1, 0, 0], q(0));
        assert!(matches!(sp.torsion_lower(&bad), Err(Error::Symmetry(_))));
    }

    #[test]
    fn cyclic_sum_of_single_entry() {
        let sp = SymplecticSpace::new(2);
        let mut a = Tensor::<Rational>::cov3(4);
        a.set(&[0, 1, 2], q(1));
        let c = sp.cyclic_sum(&a);
        let nz: Vec<_> = c.nonzero().map(|(ix, _)| ix).collect();
        assert_eq!(nz, vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
    }

    #[test]
    fn gram_schmidt_standardizes_a_form() {
        let b = Matrix::from_rows(vec![
            vec![q(0), q(2), q(1), q(0)],
            vec![q(-2), q(0), q(0), q(3)],
            vec![q(-1), q(0), q(0), q(1)],
            vec![q(0), q(-3), q(-1), q(0)],
        ]);
        let m = symplectic_basis(&b).unwrap();
        let sp = SymplecticSpace::new(2);
        assert_eq!(m.transpose().mul(&b).mul(&m), sp.omega_matrix());
        let degenerate = Matrix::from_rows(vec![vec![q(0), q(0)], vec![q(0), q(0)]]);
        assert!(symplectic_basis(&degenerate).is_err());
    }
}
