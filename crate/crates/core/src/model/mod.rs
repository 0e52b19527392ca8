//! Infinitesimal models `(V, R, T, K)` and the Lie algebras built from them.
//!
//! Curvature is a (1,3)-tensor `R[x][y][c][d]` = d-th component of
//! `R_{e_x e_y} e_c`; torsion is a (1,2)-tensor `T[x][y][d]`. Endomorphisms
//! act on tensors as derivations (see [`Tensor::derivation`]).

mod bianchi;
mod lie;
mod nomizu;

pub use bianchi::{bianchi_classify, BianchiClass, BianchiType};
pub use lie::LieAlgebraPresentation;
pub use nomizu::{nomizu_algebra, nomizu_h0, transvection_algebra, transvection_h0, Transvection};

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{Check, VerificationReport};
use crate::scalar::{Rational, Scalar};
use crate::symplectic::SymplecticSpace;
use crate::tensor::{Slot, Tensor};

pub(crate) const VV_V: [Slot; 3] = [Slot::Cov, Slot::Cov, Slot::Contra];
pub(crate) const VVV_V: [Slot; 4] = [Slot::Cov, Slot::Cov, Slot::Cov, Slot::Contra];

/// Name under which the symplectic form is stored among the auxiliary tensors.
pub const OMEGA: &str = "omega";

#[derive(Clone, Debug, PartialEq)]
pub struct InfinitesimalModel {
    space: SymplecticSpace,
    curvature: Tensor<Rational>,
    torsion: Tensor<Rational>,
    aux: Vec<(String, Tensor<Rational>)>,
}

impl InfinitesimalModel {
    /// Builds a model; the standard symplectic form is added to the
    /// auxiliary tensors under [`OMEGA`] unless one is already present.
    pub fn new(
        space: SymplecticSpace,
        curvature: Tensor<Rational>,
        torsion: Tensor<Rational>,
        aux: Vec<(String, Tensor<Rational>)>,
    ) -> Result<Self> {
        let d = space.dim();
        if curvature.dim() != d || curvature.slots() != VVV_V {
            return Err(Error::DimensionMismatch(format!("curvature must be a (1,3)-tensor in dimension {d}")));
        }
        if torsion.dim() != d || torsion.slots() != VV_V {
            return Err(Error::DimensionMismatch(format!("torsion must be a (1,2)-tensor in dimension {d}")));
        }
        if let Some((name, _)) = aux.iter().find(|(_, k)| k.dim() != d) {
            return Err(Error::DimensionMismatch(format!("auxiliary tensor `{name}` has the wrong dimension")));
        }
        let mut aux = aux;
        if !aux.iter().any(|(name, _)| name == OMEGA) {
            aux.insert(0, (OMEGA.to_string(), space.omega_tensor()));
        }
        Ok(InfinitesimalModel { space, curvature, torsion, aux })
    }

    /// The model with zero curvature and torsion.
    pub fn flat(n: usize) -> Self {
        let space = SymplecticSpace::new(n);
        let d = space.dim();
        Self::new(space, Tensor::vvv_v(d), Tensor::vv_v(d), Vec::new()).expect("well-formed")
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn curvature(&self) -> &Tensor<Rational> {
        &self.curvature
    }

    pub fn torsion(&self) -> &Tensor<Rational> {
        &self.torsion
    }

    pub fn aux(&self) -> &[(String, Tensor<Rational>)] {
        &self.aux
    }

    pub fn aux_tensor(&self, name: &str) -> Option<&Tensor<Rational>> {
        self.aux.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    /// The endomorphism `R_{e_x e_y}`.
    pub fn curvature_endo(&self, x: usize, y: usize) -> Matrix<Rational> {
        self.curvature.endomorphism_at2(x, y)
    }

    /// All tensors an element of the stabilizer algebra must annihilate.
    pub(crate) fn annihilated(&self) -> Vec<(String, &Tensor<Rational>)> {
        let mut out = alloc::vec![("curvature".to_string(), &self.curvature), ("torsion".to_string(), &self.torsion)];
        out.extend(self.aux.iter().map(|(n, t)| (n.clone(), t)));
        out
    }

    pub fn push_forward(&self, f: &Matrix<Rational>) -> Result<Self> {
        let f_inv = f.inverse()?;
        Ok(InfinitesimalModel {
            space: self.space,
            curvature: self.curvature.push_forward(f, &f_inv),
            torsion: self.torsion.push_forward(f, &f_inv),
            aux: self.aux.iter().map(|(n, t)| (n.clone(), t.push_forward(f, &f_inv))).collect(),
        })
    }
}

fn prefixed(prefix: &[usize], ix: &[usize]) -> Vec<usize> {
    prefix.iter().chain(ix).copied().collect()
}

/// Check every algebraic axiom of an infinitesimal model. Failing checks carry
/// the first offending component, prefixed by the basis indices involved.
pub fn check_model_axioms(m: &InfinitesimalModel) -> VerificationReport {
    let d = m.dim();
    let r = &m.curvature;
    let t = &m.torsion;
    let mut report = VerificationReport::new();

    report.push(match t.antisymmetry_violation(0, 1) {
        None => Check::pass("torsion antisymmetric"),
        Some(ix) => Check::fail("torsion antisymmetric", ix.clone(), t.get(&ix).clone() + t.get(&[ix[1], ix[0], ix[2]])),
    });
    report.push(match r.antisymmetry_violation(0, 1) {
        None => Check::pass("curvature antisymmetric"),
        Some(ix) => Check::fail(
            "curvature antisymmetric",
            ix.clone(),
            r.get(&ix).clone() + r.get(&[ix[1], ix[0], ix[2], ix[3]]),
        ),
    });

    let endos: Vec<Vec<Matrix<Rational>>> =
        (0..d).map(|x| (0..d).map(|y| m.curvature_endo(x, y)).collect()).collect();
    let mut annihilates = |name: String, k: &Tensor<Rational>| {
        for x in 0..d {
            for y in 0..d {
                if let Some((ix, v)) = k.derivation(&endos[x][y]).nonzero().next() {
                    report.push(Check::fail(name, prefixed(&[x, y], &ix), v));
                    return;
                }
            }
        }
        report.push(Check::pass(name));
    };
    annihilates("R.T = 0".to_string(), t);
    annihilates("R.R = 0".to_string(), r);
    for (name, k) in &m.aux {
        annihilates(format!("R.{name} = 0"), k);
    }

    // Cyclic sum of R_XY Z + T_{T_X Y} Z.
    let first = Tensor::from_fn(d, &VVV_V, |ix| {
        let (x, y, z, c) = (ix[0], ix[1], ix[2], ix[3]);
        let mut acc = Rational::zero();
        for (a, b, w) in [(x, y, z), (y, z, x), (z, x, y)] {
            acc = acc + r.get(&[a, b, w, c]);
            for k in 0..d {
                let tk = t.get(&[a, b, k]);
                if !tk.is_zero() {
                    acc = acc + &(tk.clone() * t.get(&[k, w, c]));
                }
            }
        }
        acc
    });
    report.push(Check::vanishes("first Bianchi identity", &first));

    // Cyclic sum of R_{T_X Y, Z}, as endomorphisms.
    let slots = [Slot::Cov, Slot::Cov, Slot::Cov, Slot::Cov, Slot::Contra];
    let second = Tensor::from_fn(d, &slots, |ix| {
        let (x, y, z, c, e) = (ix[0], ix[1], ix[2], ix[3], ix[4]);
        let mut acc = Rational::zero();
        for (a, b, w) in [(x, y, z), (y, z, x), (z, x, y)] {
            for k in 0..d {
                let tk = t.get(&[a, b, k]);
                if !tk.is_zero() {
                    acc = acc + &(tk.clone() * r.get(&[k, w, c, e]));
                }
            }
        }
        acc
    });
    report.push(Check::vanishes("second Bianchi identity", &second));
    report
}

fn commutator_component<F: Scalar>(s: &Tensor<F>, x: usize, y: usize, c: usize, e: usize) -> F {
    // ([S_x, S_y] e_c)_e = Σ_k S[y][c][k] S[x][k][e] − S[x][c][k] S[y][k][e]
    let d = s.dim();
    let mut acc = F::zero();
    for k in 0..d {
        let a = s.get(&[y, c, k]);
        if !a.is_zero() {
            acc = acc + &(a.clone() * s.get(&[x, k, e]));
        }
        let b = s.get(&[x, c, k]);
        if !b.is_zero() {
            acc = acc - &(b.clone() * s.get(&[y, k, e]));
        }
    }
    acc
}

fn shift_component<F: Scalar>(s: &Tensor<F>, x: usize, y: usize, c: usize, e: usize) -> F {
    // (S_{S_x y − S_y x} e_c)_e
    let d = s.dim();
    let mut acc = F::zero();
    for k in 0..d {
        let v = s.get(&[x, y, k]).clone() - s.get(&[y, x, k]);
        if !v.is_zero() {
            acc = acc + &(v * s.get(&[k, c, e]));
        }
    }
    acc
}

fn check_pair_shapes<F: Scalar>(r: &Tensor<F>, t: &Tensor<F>, s: &Tensor<F>) -> Result<()> {
    let d = s.dim();
    if r.slots() != VVV_V || t.slots() != VV_V || s.slots() != VV_V || r.dim() != d || t.dim() != d {
        return Err(Error::DimensionMismatch(
            "expected a (1,3) curvature and (1,2) torsion and structure tensors of equal dimension".into(),
        ));
    }
    Ok(())
}

fn torsion_shift_component<F: Scalar>(t: &Tensor<F>, s: &Tensor<F>, x: usize, y: usize, c: usize, e: usize) -> F {
    // (S_{T_x y} e_c)_e
    (0..s.dim()).fold(F::zero(), |acc, k| {
        let v = t.get(&[x, y, k]);
        if v.is_zero() {
            acc
        } else {
            acc + &(v.clone() * s.get(&[k, c, e]))
        }
    })
}

/// Curvature and torsion of `∇̃ = ∇ − S` from those of `∇`, assuming
/// `∇̃S = 0`:
/// `T̃_X Y = T_X Y − (S_X Y − S_Y X)`,
/// `R̃_{XY} = R_{XY} + [S_X, S_Y] + S_{T_X Y} − S_{S_X Y − S_Y X}`.
///
/// The `S_{T_X Y}` term vanishes for torsion-free `∇`.
pub fn model_from_pair<F: Scalar>(r: &Tensor<F>, t: &Tensor<F>, s: &Tensor<F>) -> Result<(Tensor<F>, Tensor<F>)> {
    check_pair_shapes(r, t, s)?;
    let d = s.dim();
    let rt = Tensor::from_fn(d, &VVV_V, |ix| {
        let (x, y, c, e) = (ix[0], ix[1], ix[2], ix[3]);
        r.get(ix).clone() + commutator_component(s, x, y, c, e) + torsion_shift_component(t, s, x, y, c, e)
            - shift_component(s, x, y, c, e)
    });
    let tt = Tensor::from_fn(d, &VV_V, |ix| {
        let (x, y, e) = (ix[0], ix[1], ix[2]);
        t.get(ix).clone() - s.get(&[x, y, e]) + s.get(&[y, x, e])
    });
    Ok((rt, tt))
}

/// Inverse of [`model_from_pair`]: recover `(R, T)` from `(R̃, T̃, S)`, using
/// `R_{XY} = R̃_{XY} − [S_X, S_Y] − S_{T̃_X Y}`.
pub fn pair_from_model<F: Scalar>(rt: &Tensor<F>, tt: &Tensor<F>, s: &Tensor<F>) -> Result<(Tensor<F>, Tensor<F>)> {
    check_pair_shapes(rt, tt, s)?;
    let d = s.dim();
    let r = Tensor::from_fn(d, &VVV_V, |ix| {
        let (x, y, c, e) = (ix[0], ix[1], ix[2], ix[3]);
        rt.get(ix).clone() - commutator_component(s, x, y, c, e) - torsion_shift_component(tt, s, x, y, c, e)
    });
    let t = Tensor::from_fn(d, &VV_V, |ix| {
        let (x, y, e) = (ix[0], ix[1], ix[2]);
        tt.get(ix).clone() + s.get(&[x, y, e]) - s.get(&[y, x, e])
    });
    Ok((r, t))
}

/// Check that `f` carries `m` to `other`: `f R = R'`, `f T = T'` and
/// `f K = K'` for auxiliary tensors matched by name. When the symplectic
/// form is among them, whether `f` is symplectic is reported as well.
pub fn verify_model_isomorphism(
    f: &Matrix<Rational>,
    m: &InfinitesimalModel,
    other: &InfinitesimalModel,
) -> Result<VerificationReport> {
    let d = m.dim();
    if other.dim() != d || f.rows() != d || f.cols() != d {
        return Err(Error::DimensionMismatch("map and models must share one dimension".into()));
    }
    let f_inv = f.inverse()?;
    let mut report = VerificationReport::new();
    report.push(Check::equal("f R = R'", &m.curvature.push_forward(f, &f_inv), &other.curvature));
    report.push(Check::equal("f T = T'", &m.torsion.push_forward(f, &f_inv), &other.torsion));
    for (name, k) in &m.aux {
        let check_name = format!("f {name} = {name}'");
        match other.aux_tensor(name) {
            Some(k2) if k2.same_shape(k) => report.push(Check::equal(check_name, &k.push_forward(f, &f_inv), k2)),
            _ => report.push(Check::fail(check_name, Vec::new(), "missing in target model")),
        }
    }
    if m.aux_tensor(OMEGA).is_some() {
        let w = m.space.omega_matrix::<Rational>();
        let defect = f.transpose().mul(&w).mul(f).sub(&w);
        let t = Tensor::from_fn(d, &[Slot::Cov, Slot::Cov], |ix| defect[(ix[0], ix[1])].clone());
        report.push(Check::vanishes("f symplectic", &t));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(v: i64) -> Rational {
        Rational::integer(v)
    }

    #[test]
    fn flat_model_passes() {
        for n in 1..=2 {
            assert!(check_model_axioms(&InfinitesimalModel::flat(n)).all_pass());
        }
    }

    #[test]
    fn perturbed_torsion_fails() {
        let mut m = InfinitesimalModel::flat(1);
        m.torsion.set(&[0, 1, 0], q(1));
        let report = check_model_axioms(&m);
        let bad = report.get("torsion antisymmetric").unwrap();
        assert!(!bad.pass);
        assert_eq!(bad.witness.as_ref().unwrap().component, vec![0, 1, 0]);
    }

    #[test]
    fn non_symplectic_map_is_rejected() {
        let m = InfinitesimalModel::flat(1);
        let f = Matrix::from_rows(vec![vec![q(2), q(0)], vec![q(0), q(1)]]);
        let report = verify_model_isomorphism(&f, &m, &m).unwrap();
        assert!(!report.get("f omega = omega'").unwrap().pass);
        assert!(!report.get("f symplectic").unwrap().pass);
        assert!(report.get("f R = R'").unwrap().pass);
        let id = Matrix::identity(2);
        assert!(verify_model_isomorphism(&id, &m, &m).unwrap().all_pass());
        let singular = Matrix::zeros(2, 2);
        assert!(verify_model_isomorphism(&singular, &m, &m).is_err());
    }
}
