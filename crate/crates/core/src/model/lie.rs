use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::report::Check;
use crate::scalar::Rational;

/// A finite-dimensional Lie algebra given by structure constants:
/// `[b_i, b_j] = Σ_k c[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraPresentation {
    pub basis_labels: Vec<String>,
    pub structure: Vec<Vec<Vec<Rational>>>,
    /// Named subspaces as sets of basis indices, e.g. `V` and `h0`.
    pub subspaces: Vec<(String, Vec<usize>)>,
}

impl LieAlgebraPresentation {
    pub fn new(basis_labels: Vec<String>, structure: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let d = basis_labels.len();
        if structure.len() != d || structure.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != d)) {
            return Err(Error::DimensionMismatch(format!("structure constants must be {d}x{d}x{d}")));
        }
        Ok(LieAlgebraPresentation { basis_labels, structure, subspaces: Vec::new() })
    }

    /// Presentation from the nonzero brackets `[b_i, b_j] = Σ c_k b_k` with
    /// `i < j`; the rest follows by antisymmetry.
    pub fn from_brackets(labels: &[&str], brackets: &[(usize, usize, &[(usize, i64)])]) -> Self {
        let d = labels.len();
        let mut c = vec![vec![vec![Rational::zero(); d]; d]; d];
        for &(i, j, terms) in brackets {
            for &(k, v) in terms {
                c[i][j][k] = Rational::integer(v);
                c[j][i][k] = Rational::integer(-v);
            }
        }
        LieAlgebraPresentation {
            basis_labels: labels.iter().map(|s| String::from(*s)).collect(),
            structure: c,
            subspaces: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn subspace(&self, name: &str) -> Option<&[usize]> {
        self.subspaces.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    /// Bracket of two elements given in basis coordinates.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for i in 0..d {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if v[j].is_zero() {
                    continue;
                }
                let uv = u[i].clone() * &v[j];
                for k in 0..d {
                    let c = &self.structure[i][j][k];
                    if !c.is_zero() {
                        out[k] = out[k].clone() + &(uv.clone() * c);
                    }
                }
            }
        }
        out
    }

    fn basis_vec(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    /// Matrix of `ad_u` acting on coordinates.
    pub fn ad(&self, u: &[Rational]) -> Matrix<Rational> {
        let d = self.dim();
        let cols: Vec<Vec<Rational>> = (0..d).map(|j| self.bracket(u, &self.basis_vec(j))).collect();
        Matrix::from_columns(&cols, d)
    }

    pub fn antisymmetry_check(&self) -> Check {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let s = self.structure[i][j][k].clone() + &self.structure[j][i][k];
                    if !s.is_zero() {
                        return Check::fail("bracket antisymmetric", vec![i, j, k], s);
                    }
                }
            }
        }
        Check::pass("bracket antisymmetric")
    }

    /// Jacobi identity on all basis triples; the witness is `(i, j, k, component)`.
    pub fn jacobi_check(&self) -> Check {
        let d = self.dim();
        let e: Vec<Vec<Rational>> = (0..d).map(|i| self.basis_vec(i)).collect();
        for i in 0..d {
            for j in i + 1..d {
                let bij = self.bracket(&e[i], &e[j]);
                for k in j + 1..d {
                    let a = self.bracket(&bij, &e[k]);
                    let b = self.bracket(&self.bracket(&e[j], &e[k]), &e[i]);
                    let c = self.bracket(&self.bracket(&e[k], &e[i]), &e[j]);
                    for l in 0..d {
                        let s = a[l].clone() + &b[l] + &c[l];
                        if !s.is_zero() {
                            return Check::fail("Jacobi identity", vec![i, j, k, l], s);
                        }
                    }
                }
            }
        }
        Check::pass("Jacobi identity")
    }

    /// Basis of the derived algebra `[g, g]`.
    pub fn derived_basis(&self) -> Vec<Vec<Rational>> {
        let d = self.dim();
        let mut all = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                all.push(self.structure[i][j].clone());
            }
        }
        linalg::span_basis(&all)
    }

    /// Killing form `B(b_i, b_j) = tr(ad_i ad_j)`.
    pub fn killing_form(&self) -> Matrix<Rational> {
        let d = self.dim();
        let ads: Vec<Matrix<Rational>> = (0..d).map(|i| self.ad(&self.basis_vec(i))).collect();
        let mut k = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                k[(i, j)] = ads[i].mul(&ads[j]).trace();
            }
        }
        k
    }

    /// Structure constants after the change of basis `b'_j = Σ_i M[i][j] b_i`.
    pub fn change_basis(&self, m: &Matrix<Rational>) -> Result<Self> {
        let d = self.dim();
        let m_inv = m.inverse()?;
        let cols: Vec<Vec<Rational>> = (0..d).map(|j| m.column(j)).collect();
        let mut c = vec![vec![vec![Rational::zero(); d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                let b = m_inv.mul_vec(&self.bracket(&cols[i], &cols[j]));
                c[i][j] = b;
            }
        }
        Ok(LieAlgebraPresentation { basis_labels: self.basis_labels.clone(), structure: c, subspaces: self.subspaces.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_is_a_lie_algebra() {
        let h = LieAlgebraPresentation::from_brackets(&["x", "y", "z"], &[(0, 1, &[(2, 1)])]);
        assert!(h.jacobi_check().pass);
        assert!(h.antisymmetry_check().pass);
        assert_eq!(h.derived_basis().len(), 1);
        assert!(h.killing_form().is_zero());
    }

    #[test]
    fn jacobi_failure_has_witness() {
        let bad = LieAlgebraPresentation::from_brackets(
            &["a", "b", "c"],
            &[(0, 1, &[(0, 1)]), (1, 2, &[(1, 1)]), (0, 2, &[(1, 1)])],
        );
        let check = bad.jacobi_check();
        assert!(!check.pass);
        assert_eq!(check.witness.unwrap().component.len(), 4);
    }
}
