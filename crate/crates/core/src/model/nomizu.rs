//! The stabilizer algebra, the Nomizu construction and the transvection
//! algebra of an infinitesimal model.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::lie::LieAlgebraPresentation;
use super::InfinitesimalModel;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::report::Check;
use crate::scalar::Rational;

fn flatten(a: &Matrix<Rational>) -> Vec<Rational> {
    a.to_rows().into_iter().flatten().collect()
}

fn unflatten(v: &[Rational], d: usize) -> Matrix<Rational> {
    Matrix::from_rows(v.chunks(d).map(<[Rational]>::to_vec).collect())
}

fn elementary(d: usize, p: usize) -> Matrix<Rational> {
    let mut e = Matrix::zeros(d, d);
    e[(p / d, p % d)] = Rational::one();
    e
}

fn commutator(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    a.mul(b).sub(&b.mul(a))
}

/// Basis of `{A ∈ End(V) : A·R = 0, A·T = 0, A·K = 0}`.
pub fn nomizu_h0(m: &InfinitesimalModel) -> Result<Vec<Matrix<Rational>>> {
    let d = m.dim();
    let targets = m.annihilated();
    let columns: Vec<Vec<Rational>> = (0..d * d)
        .map(|p| {
            let e = elementary(d, p);
            targets.iter().flat_map(|(_, t)| t.derivation(&e).into_data()).collect()
        })
        .collect();
    let basis: Vec<Matrix<Rational>> =
        linalg::kernel_of_columns(&columns).iter().map(|v| unflatten(v, d)).collect();
    for a in &basis {
        if let Some((name, _)) = targets.iter().find(|(_, t)| !t.derivation(a).is_zero()) {
            return Err(Error::Internal(format!("stabilizer element fails to annihilate {name}")));
        }
    }
    Ok(basis)
}

/// Lie closure of the curvature endomorphisms `R_{XY}`.
pub fn transvection_h0(m: &InfinitesimalModel) -> Result<Vec<Matrix<Rational>>> {
    let d = m.dim();
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let gens = (0..d).flat_map(|x| (x + 1..d).map(move |y| (x, y))).map(|(x, y)| flatten(&m.curvature_endo(x, y)));
    linalg::extend_independent(&mut basis, gens);
    for _ in 0..=d * d {
        let mats: Vec<Matrix<Rational>> = basis.iter().map(|v| unflatten(v, d)).collect();
        let before = basis.len();
        let mut brackets = Vec::new();
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                brackets.push(flatten(&commutator(&mats[i], &mats[j])));
            }
        }
        linalg::extend_independent(&mut basis, brackets);
        if basis.len() == before {
            return Ok(mats);
        }
    }
    Err(Error::Internal("Lie closure did not stabilize within dim End(V) steps".into()))
}

/// The algebra `V ⊕ h` with brackets `[A,B] = AB − BA`, `[A,X] = AX`,
/// `[X,Y] = −T_X Y + R_{XY}`.
fn semidirect(m: &InfinitesimalModel, h: &[Matrix<Rational>], h_name: &str) -> Result<LieAlgebraPresentation> {
    let d = m.dim();
    let k = h.len();
    let total = d + k;
    let h_cols: Vec<Vec<Rational>> = h.iter().map(flatten).collect();
    let coords = |a: &Matrix<Rational>| linalg::coordinates(&h_cols, &flatten(a));
    let mut c = vec![vec![vec![Rational::zero(); total]; total]; total];
    for x in 0..d {
        for y in x + 1..d {
            let r = coords(&m.curvature_endo(x, y)).ok_or_else(|| {
                Error::Precondition(format!(
                    "curvature endomorphism R(e{}, e{}) does not lie in {h_name}; the model axioms fail",
                    x + 1,
                    y + 1
                ))
            })?;
            for z in 0..d {
                let v = -m.torsion().get(&[x, y, z]).clone();
                c[x][y][z] = v.clone();
                c[y][x][z] = -v;
            }
            for (a, v) in r.into_iter().enumerate() {
                c[x][y][d + a] = v.clone();
                c[y][x][d + a] = -v;
            }
        }
    }
    for (a, ma) in h.iter().enumerate() {
        for x in 0..d {
            for z in 0..d {
                let v = ma[(z, x)].clone();
                c[d + a][x][z] = v.clone();
                c[x][d + a][z] = -v;
            }
        }
        for (b, mb) in h.iter().enumerate().skip(a + 1) {
            let br = coords(&commutator(ma, mb))
                .ok_or_else(|| Error::Internal(format!("{h_name} is not closed under commutators")))?;
            for (e, v) in br.into_iter().enumerate() {
                c[d + a][d + b][d + e] = v.clone();
                c[d + b][d + a][d + e] = -v;
            }
        }
    }
    let mut labels: Vec<String> = (1..=d).map(|i| format!("e{i}")).collect();
    labels.extend((1..=k).map(|i| format!("A{i}")));
    let mut p = LieAlgebraPresentation::new(labels, c)?;
    p.subspaces = vec![(String::from("V"), (0..d).collect()), (String::from(h_name), (d..total).collect())];
    Ok(p)
}

/// Nomizu construction on `V ⊕ h0`.
pub fn nomizu_algebra(m: &InfinitesimalModel) -> Result<LieAlgebraPresentation> {
    let h0 = nomizu_h0(m)?;
    semidirect(m, &h0, "h0")
}

#[derive(Clone, Debug)]
pub struct Transvection {
    /// Basis of the algebra generated by the curvature endomorphisms.
    pub h0_prime: Vec<Matrix<Rational>>,
    pub algebra: LieAlgebraPresentation,
    /// Whether every element of `h0_prime` lies in the stabilizer algebra.
    pub contained_in_h0: Check,
}

/// Transvection algebra `V ⊕ h0'`, with `h0'` the Lie closure of the `R_{XY}`.
pub fn transvection_algebra(m: &InfinitesimalModel) -> Result<Transvection> {
    let h0p = transvection_h0(m)?;
    let h0 = nomizu_h0(m)?;
    let h0_cols: Vec<Vec<Rational>> = h0.iter().map(flatten).collect();
    let contained_in_h0 = match h0p.iter().position(|a| linalg::coordinates(&h0_cols, &flatten(a)).is_none()) {
        None => Check::pass("h0' contained in h0"),
        Some(i) => Check::fail("h0' contained in h0", vec![i], "generator outside h0"),
    };
    let algebra = semidirect(m, &h0p, "h0'")?;
    Ok(Transvection { h0_prime: h0p, algebra, contained_in_h0 })
}
