//! Bianchi types of real three-dimensional Lie algebras.
//!
//! The decision follows the derived algebra `g' = [g, g]`:
//!
//! * `dim g' = 0`: I.
//! * `dim g' = 1`: II if `g'` is central, III otherwise.
//! * `dim g' = 2`: `g'` is abelian; pick `e ∉ g'` and let `D = ad_e|g'`.
//!   `D` is determined up to scale, so its type is read from `tr D` and
//!   `det D`: V if `D` is scalar, IV if it is a nontrivial Jordan block,
//!   VI (VI₀ when traceless) for real distinct eigenvalues, VII (VII₀ when
//!   traceless) for complex ones.
//! * `dim g' = 3`: IX if the Killing form is definite, VIII otherwise.
//!
//! For VI the parameter is the ratio of the two eigenvalues of `D`, reported
//! together with its reciprocal since either eigenvalue can be normalized to
//! 1 (with `[X1,X3] = X1, [X2,X3] = h X2` this ratio is `h`). For VII the
//! parameter `h ≥ 0` is taken with `D ∝ [[h, −1], [1, h]]`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::lie::LieAlgebraPresentation;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BianchiType {
    I,
    II,
    III,
    IV,
    V,
    VI0,
    VI,
    VII0,
    VII,
    VIII,
    IX,
}

impl BianchiType {
    pub fn name(self) -> &'static str {
        match self {
            BianchiType::I => "I",
            BianchiType::II => "II",
            BianchiType::III => "III",
            BianchiType::IV => "IV",
            BianchiType::V => "V",
            BianchiType::VI0 => "VI_0",
            BianchiType::VI => "VI_h",
            BianchiType::VII0 => "VII_0",
            BianchiType::VII => "VII_h",
            BianchiType::VIII => "VIII",
            BianchiType::IX => "IX",
        }
    }
}

impl fmt::Display for BianchiType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BianchiClass {
    pub kind: BianchiType,
    /// Equivalent values of the parameter `h` when it is rational:
    /// `{h, 1/h}` for VI, `{h}` for VII.
    pub parameters: Vec<Rational>,
    /// `tr(D)² / det(D)`, a scale-free invariant of types VI and VII.
    pub invariant: Option<Rational>,
}

fn coords_in(basis: &[Vec<Rational>], v: &[Rational]) -> Result<Vec<Rational>> {
    linalg::coordinates(basis, v).ok_or_else(|| Error::Internal("derived algebra is not an ideal".into()))
}

fn definite(k: &Matrix<Rational>) -> bool {
    let d = k.rows();
    let minors: Vec<Rational> = (1..=d)
        .map(|s| {
            let sub = Matrix::from_rows((0..s).map(|i| (0..s).map(|j| k[(i, j)].clone()).collect()).collect());
            sub.det()
        })
        .collect();
    let positive = minors.iter().all(Rational::is_positive);
    let negative = minors.iter().enumerate().all(|(i, m)| if i % 2 == 0 { m.is_negative() } else { m.is_positive() });
    positive || negative
}

/// Classify a three-dimensional Lie algebra.
pub fn bianchi_classify(p: &LieAlgebraPresentation) -> Result<BianchiClass> {
    if p.dim() != 3 {
        return Err(Error::Precondition(alloc::format!("Bianchi types need a 3-dimensional algebra, got {}", p.dim())));
    }
    if !p.antisymmetry_check().pass || !p.jacobi_check().pass {
        return Err(Error::Precondition("structure constants do not define a Lie algebra".into()));
    }
    let plain = |kind| Ok(BianchiClass { kind, parameters: Vec::new(), invariant: None });
    let derived = p.derived_basis();
    match derived.len() {
        0 => plain(BianchiType::I),
        1 => {
            let z = &derived[0];
            let central = (0..3).all(|i| {
                let mut e = vec![Rational::zero(); 3];
                e[i] = Rational::one();
                p.bracket(z, &e).iter().all(Rational::is_zero)
            });
            plain(if central { BianchiType::II } else { BianchiType::III })
        }
        2 => {
            let e = (0..3)
                .map(|i| {
                    let mut e = vec![Rational::zero(); 3];
                    e[i] = Rational::one();
                    e
                })
                .find(|e| linalg::coordinates(&derived, e).is_none())
                .expect("a basis vector outside a plane");
            let cols: Vec<Vec<Rational>> =
                derived.iter().map(|u| coords_in(&derived, &p.bracket(&e, u))).collect::<Result<_>>()?;
            let dmat = Matrix::from_columns(&cols, 2);
            let tr = dmat.trace();
            let det = dmat.det();
            if det.is_zero() {
                return Err(Error::Internal("ad_e is singular on a 2-dimensional derived algebra".into()));
            }
            let two = Rational::integer(2);
            let half_tr = &tr / &two;
            let is_scalar = dmat[(0, 1)].is_zero() && dmat[(1, 0)].is_zero() && dmat[(0, 0)] == dmat[(1, 1)];
            if is_scalar {
                return plain(BianchiType::V);
            }
            let disc = &(&tr * &tr) - &(&Rational::integer(4) * &det);
            let invariant = Some(&(&tr * &tr) / &det);
            if disc.is_zero() {
                return plain(BianchiType::IV);
            }
            if disc.is_positive() {
                if tr.is_zero() {
                    return Ok(BianchiClass { kind: BianchiType::VI0, parameters: vec![Rational::integer(-1)], invariant });
                }
                let parameters = match disc.sqrt_exact() {
                    Some(s) => {
                        let hs = &s / &two;
                        let l1 = &half_tr + &hs;
                        let l2 = &half_tr - &hs;
                        let r = &l2 / &l1;
                        let mut v = vec![r.clone(), r.recip().expect("nonzero eigenvalue")];
                        v.sort();
                        v.dedup();
                        v
                    }
                    None => Vec::new(),
                };
                return Ok(BianchiClass { kind: BianchiType::VI, parameters, invariant });
            }
            if tr.is_zero() {
                return Ok(BianchiClass { kind: BianchiType::VII0, parameters: vec![Rational::zero()], invariant });
            }
            let h2 = &(&tr * &tr) / &(-disc);
            let parameters = h2.sqrt_exact().into_iter().collect();
            Ok(BianchiClass { kind: BianchiType::VII, parameters, invariant })
        }
        _ => plain(if definite(&p.killing_form()) { BianchiType::IX } else { BianchiType::VIII }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(brackets: &[(usize, usize, &[(usize, i64)])]) -> BianchiClass {
        bianchi_classify(&LieAlgebraPresentation::from_brackets(&["a", "b", "c"], brackets)).unwrap()
    }

    #[test]
    fn standard_algebras() {
        assert_eq!(classify(&[]).kind, BianchiType::I);
        assert_eq!(classify(&[(0, 1, &[(2, 1)])]).kind, BianchiType::II);
        assert_eq!(classify(&[(0, 2, &[(0, 1)])]).kind, BianchiType::III);
        assert_eq!(classify(&[(0, 2, &[(0, 1)]), (1, 2, &[(0, 1), (1, 1)])]).kind, BianchiType::IV);
        assert_eq!(classify(&[(0, 2, &[(0, 1)]), (1, 2, &[(1, 1)])]).kind, BianchiType::V);
        assert_eq!(classify(&[(0, 2, &[(0, 1)]), (1, 2, &[(1, -1)])]).kind, BianchiType::VI0);
        assert_eq!(classify(&[(0, 2, &[(1, 1)]), (1, 2, &[(0, -1)])]).kind, BianchiType::VII0);
        let so21 = classify(&[(0, 1, &[(2, 1)]), (1, 2, &[(0, -1)]), (2, 0, &[(1, 1)])]);
        assert_eq!(so21.kind, BianchiType::VIII);
        let so3 = classify(&[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (2, 0, &[(1, 1)])]);
        assert_eq!(so3.kind, BianchiType::IX);
    }

    #[test]
    fn parameters() {
        let vi = classify(&[(0, 2, &[(0, 1)]), (1, 2, &[(1, 2)])]);
        assert_eq!(vi.kind, BianchiType::VI);
        assert_eq!(vi.parameters, vec![Rational::new(1, 2), Rational::integer(2)]);
        let vii = classify(&[(0, 2, &[(0, 3), (1, 1)]), (1, 2, &[(0, -1), (1, 3)])]);
        assert_eq!(vii.kind, BianchiType::VII);
        assert_eq!(vii.parameters, vec![Rational::integer(3)]);
    }
}
