//! Evaluating a chart's AS data at a point as an infinitesimal model.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Chart, Connection};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::model::{InfinitesimalModel, OMEGA};
use crate::scalar::{Rational, RationalFunction as Rf};
use crate::symplectic::{symplectic_basis, SymplecticSpace};
use crate::tensor::Tensor;

#[derive(Clone, Debug)]
pub struct PointModel {
    pub model: InfinitesimalModel,
    /// Columns are the new symplectic basis in coordinate-frame components.
    pub basis: Matrix<Rational>,
    /// Name of the structure tensor in the model's auxiliary list.
    pub structure_name: String,
}

/// `R̃`, `T̃`, `ω` and `S` at `p`, expressed in a symplectic basis of `T_pM`.
pub fn model_at_point(c: &Chart, s: &Tensor<Rf>, p: &[Rational]) -> Result<PointModel> {
    let tilde = Connection::Tilde(s);
    let rt = c.eval_tensor(&c.curvature(tilde)?, p)?;
    let tt = c.eval_tensor(&c.torsion(tilde)?, p)?;
    let omega = c.eval_tensor(c.omega(), p)?;
    let sp = c.eval_tensor(s, p)?;
    let d = c.dim();
    let w = Matrix::from_rows((0..d).map(|i| (0..d).map(|j| omega.get(&[i, j]).clone()).collect()).collect());
    let m = symplectic_basis(&w)?;
    let m_inv = m.inverse()?;
    let space = SymplecticSpace::new(d / 2);
    let omega_new = omega.change_basis(&m, &m_inv);
    if omega_new != space.omega_tensor() {
        return Err(Error::Internal("symplectic basis did not standardize omega".into()));
    }
    let aux: Vec<(String, _)> = vec![(OMEGA.into(), omega_new), ("S".into(), sp.change_basis(&m, &m_inv))];
    let model = InfinitesimalModel::new(space, rt.change_basis(&m, &m_inv), tt.change_basis(&m, &m_inv), aux)?;
    Ok(PointModel { model, basis: m, structure_name: "S".into() })
}

