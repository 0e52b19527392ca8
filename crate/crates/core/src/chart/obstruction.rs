//! Pointwise test for a pseudo-Riemannian metric parallel under a
//! linear-type structure: `g(S_X Y, Z) + g(Y, S_X Z) = 0`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::calculus::{linear_type_structure, VV_V};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Polynomial, Rational};
use crate::tensor::{Slot, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObstructionVerdict {
    /// Every solution `g` is degenerate.
    Obstructed,
    /// Some solution is nondegenerate.
    NotObstructed,
}

impl ObstructionVerdict {
    pub fn name(self) -> &'static str {
        match self {
            ObstructionVerdict::Obstructed => "obstructed",
            ObstructionVerdict::NotObstructed => "not obstructed",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MetricObstruction {
    /// The vector with `S_X Y = ω(X,Y) ξ − ω(Y,ξ) X`.
    pub xi: Vec<Rational>,
    /// `ξ = 0`, so `S = 0` and every metric is parallel.
    pub degenerate: bool,
    /// A basis of the symmetric solutions `g`.
    pub solutions: Vec<Matrix<Rational>>,
    /// `det(Σ tₐ gₐ)` in the parameters `t1, t2, …`.
    pub determinant: Polynomial,
    pub verdict: ObstructionVerdict,
}

/// Recovers `ξ` from a structure tensor of linear type at a point.
pub fn linear_type_vector(s: &Tensor<Rational>, omega: &Tensor<Rational>) -> Result<Vec<Rational>> {
    let d = omega.dim();
    if omega.slots() != [Slot::Cov, Slot::Cov] || s.dim() != d || s.slots() != VV_V {
        return Err(Error::DimensionMismatch("expected a (1,2) tensor and a 2-form of equal dimension".into()));
    }
    let cols: Vec<Vec<Rational>> = (0..d)
        .map(|l| {
            let mut e = alloc::vec![Rational::zero(); d];
            e[l] = Rational::one();
            linear_type_structure(omega, &e).into_data()
        })
        .collect();
    let m = Matrix::from_columns(&cols, s.data().len());
    m.solve(s.data())
        .ok_or_else(|| Error::Precondition("structure tensor is not of linear type".into()))
}

pub fn metric_obstruction(s: &Tensor<Rational>, omega: &Tensor<Rational>) -> Result<MetricObstruction> {
    let xi = linear_type_vector(s, omega)?;
    let d = omega.dim();
    let mut slot = BTreeMap::new();
    for a in 0..d {
        for b in a..d {
            let k = slot.len();
            slot.insert((a, b), k);
        }
    }
    let var = |a: usize, b: usize| slot[&(a.min(b), a.max(b))];
    let mut rows = Vec::new();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let mut row = alloc::vec![Rational::zero(); slot.len()];
                for k in 0..d {
                    let a = s.get(&[x, y, k]);
                    if !a.is_zero() {
                        row[var(k, z)] += a;
                    }
                    let b = s.get(&[x, z, k]);
                    if !b.is_zero() {
                        row[var(y, k)] += b;
                    }
                }
                if row.iter().any(|r| !r.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..slot.len())
            .map(|i| {
                let mut v = alloc::vec![Rational::zero(); slot.len()];
                v[i] = Rational::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    let solutions: Vec<Matrix<Rational>> = basis
        .iter()
        .map(|v| {
            let mut g = Matrix::zeros(d, d);
            for a in 0..d {
                for b in 0..d {
                    g[(a, b)] = v[var(a, b)].clone();
                }
            }
            g
        })
        .collect();
    let params: Arc<[String]> = (1..=solutions.len()).map(|i| format!("t{i}")).collect::<Vec<_>>().into();
    let generic: Vec<Vec<Polynomial>> = (0..d)
        .map(|a| {
            (0..d)
                .map(|b| {
                    let terms = solutions.iter().enumerate().filter(|(_, g)| !g[(a, b)].is_zero()).map(|(m, g)| {
                        let mut mono = alloc::vec![0u32; params.len()];
                        mono[m] = 1;
                        (mono, g[(a, b)].clone())
                    });
                    Polynomial::from_terms(params.clone(), terms)
                })
                .collect()
        })
        .collect();
    let determinant = laplace_det(&generic);
    let verdict = if determinant.is_zero() { ObstructionVerdict::Obstructed } else { ObstructionVerdict::NotObstructed };
    let degenerate = xi.iter().all(|x| x.is_zero());
    Ok(MetricObstruction { xi, degenerate, solutions, determinant, verdict })
}

/// Determinant over a polynomial ring by cofactor expansion along rows,
/// memoized on the set of remaining columns.
fn laplace_det(m: &[Vec<Polynomial>]) -> Polynomial {
    fn go(m: &[Vec<Polynomial>], row: usize, cols: u32, memo: &mut BTreeMap<u32, Polynomial>) -> Polynomial {
        if row == m.len() {
            return Polynomial::constant(Rational::one());
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = Polynomial::zero();
        let mut sign_neg = false;
        for c in 0..m.len() {
            if cols & (1 << c) == 0 {
                continue;
            }
            let e = &m[row][c];
            if !e.is_zero() {
                let minor = go(m, row + 1, cols & !(1 << c), memo);
                let term = e * &minor;
                acc = if sign_neg { &acc - &term } else { &acc + &term };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    go(m, 0, (1u32 << m.len()) - 1, &mut BTreeMap::new())
}
