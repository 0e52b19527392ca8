//! Explicit bases of the invariant submodules and their defining predicates.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::maps::{s1_generator, t1_generator, t3_generator, w_generator};
use super::{Label, Space};
use crate::linalg;
use crate::scalar::{Rational, Scalar};
use crate::symplectic::SymplecticSpace;
use crate::tensor::{Slot, Tensor};

const COV3: [Slot; 3] = [Slot::Cov; 3];

#[derive(Clone, Debug, PartialEq)]
pub struct SubmoduleBasis {
    pub label: Label,
    pub n: usize,
    pub elements: Vec<Tensor<Rational>>,
}

impl SubmoduleBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

/// `2n·C(2n+1, 2)` for S²V*⊗V*, `2n·C(2n, 2)` for ∧²V*⊗V*.
pub fn ambient_dim(space: Space, n: usize) -> usize {
    let d = 2 * n;
    match space {
        Space::Cotorsion => d * d * (d + 1) / 2,
        Space::Torsion => d * d * (d - 1) / 2,
    }
}

fn pairs(space: Space, d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |i| {
        let start = if space == Space::Cotorsion { i } else { i + 1 };
        (start..d).map(move |j| (i, j))
    })
}

/// Independent components: `T(e_i, e_j, e_k)` for `i ≤ j` (cotorsion) or
/// `i < j` (torsion), ordered by `(i, j, k)`.
pub fn ambient_coordinates<F: Scalar>(space: Space, t: &Tensor<F>) -> Vec<F> {
    let d = t.dim();
    let mut out = Vec::with_capacity(ambient_dim(space, d / 2));
    for (i, j) in pairs(space, d) {
        for k in 0..d {
            out.push(t.get(&[i, j, k]).clone());
        }
    }
    out
}

/// Inverse of [`ambient_coordinates`].
pub fn from_ambient_coordinates<F: Scalar>(space: Space, n: usize, coords: &[F]) -> Tensor<F> {
    let d = 2 * n;
    assert_eq!(coords.len(), ambient_dim(space, n), "coordinate vector length");
    let mut t = Tensor::zeros(d, &COV3);
    let mut it = coords.iter();
    for (i, j) in pairs(space, d) {
        for k in 0..d {
            let v = it.next().unwrap().clone();
            if v.is_zero() {
                continue;
            }
            if i != j {
                let w = match space {
                    Space::Cotorsion => v.clone(),
                    Space::Torsion => -v.clone(),
                };
                t.set(&[j, i, k], w);
            }
            t.set(&[i, j, k], v);
        }
    }
    t
}

fn flatten(t: &Tensor<Rational>) -> impl Iterator<Item = Rational> + '_ {
    t.data().iter().cloned()
}

/// Basis of `{T in the ambient space : conditions(T) = 0}`.
fn kernel_basis(
    space: Space,
    n: usize,
    conditions: impl Fn(&Tensor<Rational>) -> Vec<Rational>,
) -> Vec<Tensor<Rational>> {
    let dim = ambient_dim(space, n);
    let columns: Vec<Vec<Rational>> = (0..dim)
        .map(|k| {
            let mut e = vec![Rational::zero(); dim];
            e[k] = Rational::one();
            conditions(&from_ambient_coordinates(space, n, &e))
        })
        .collect();
    linalg::kernel_of_columns(&columns)
        .into_iter()
        .map(|v| from_ambient_coordinates(space, n, &v))
        .collect()
}

fn generated(sp: &SymplecticSpace, g: impl Fn(&SymplecticSpace, &[Rational]) -> Tensor<Rational>) -> Vec<Tensor<Rational>> {
    (0..sp.dim())
        .map(|i| g(sp, &sp.basis_vector::<Rational>(i)))
        .filter(|t| !t.is_zero())
        .collect()
}

/// Basis of the submodule `label` for half-dimension `n`.
///
/// S1, T1, T3 and W come from their generating formulas applied to the
/// basis vectors; S3 from symmetrized indicator tensors; S2, T2 and T4 as
/// exact nullspaces of their defining linear conditions.
pub fn build_basis(label: Label, n: usize) -> SubmoduleBasis {
    let sp = SymplecticSpace::new(n);
    let d = sp.dim();
    let elements = match label {
        Label::S1 => generated(&sp, s1_generator),
        Label::T1 => generated(&sp, t1_generator),
        Label::T3 => generated(&sp, t3_generator),
        Label::W => generated(&sp, w_generator),
        Label::S3 => {
            let mut out = Vec::new();
            for i in 0..d {
                for j in i..d {
                    for k in j..d {
                        let idx = [i, j, k];
                        out.push(Tensor::from_fn(d, &COV3, |ix| {
                            let mut s = [ix[0], ix[1], ix[2]];
                            s.sort_unstable();
                            if s == idx {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        }));
                    }
                }
            }
            out
        }
        Label::S2 => kernel_basis(Space::Cotorsion, n, |t| {
            flatten(&sp.cyclic_sum(t)).chain(sp.pair_13(t)).collect()
        }),
        Label::T2 => kernel_basis(Space::Torsion, n, |t| {
            flatten(&sp.cyclic_sum(t)).chain(sp.t12_unchecked(t)).collect()
        }),
        Label::T4 => kernel_basis(Space::Torsion, n, |t| {
            let mut c: Vec<Rational> = t.indices().map(|ix| t.get(&ix).clone() + t.get(&[ix[0], ix[2], ix[1]])).collect();
            c.extend(sp.t12_unchecked(t));
            c
        }),
    };
    SubmoduleBasis { label, n, elements }
}

fn scaled(v: &[Rational], k: &Rational) -> Vec<Rational> {
    v.iter().map(|x| x.clone() * k).collect()
}

fn first_difference(a: &Tensor<Rational>, b: &Tensor<Rational>) -> Option<Vec<usize>> {
    a.sub(b).first_nonzero()
}

/// Why `t` fails the defining predicate of `label`, or `None` if it lies in
/// that submodule.
pub fn class_violation(label: Label, t: &Tensor<Rational>) -> Option<String> {
    if t.slots() != COV3 || t.dim() % 2 != 0 || t.dim() == 0 {
        return Some("not a (0,3)-tensor on an even-dimensional space".into());
    }
    let n = t.dim() / 2;
    let sp = SymplecticSpace::new(n);
    let two_n_plus_one = Rational::integer(2 * n as i64 + 1);
    if label.space() == Space::Cotorsion {
        if let Some(ix) = t.symmetry_violation(0, 1) {
            return Some(format!("not symmetric in slots 1,2 at {ix:?}"));
        }
    } else if let Some(ix) = t.antisymmetry_violation(0, 1) {
        return Some(format!("not antisymmetric in slots 1,2 at {ix:?}"));
    }
    match label {
        Label::S1 => {
            let u = sp.sharp(&scaled(&sp.pair_13(t), &two_n_plus_one.recip().unwrap()));
            first_difference(t, &s1_generator(&sp, &u)).map(|ix| format!("differs from the S1 generator at {ix:?}"))
        }
        Label::S2 => {
            if let Some(ix) = sp.cyclic_sum(t).first_nonzero() {
                return Some(format!("cyclic sum nonzero at {ix:?}"));
            }
            let s = sp.pair_13(t);
            s.iter().position(|v| !v.is_zero()).map(|i| format!("s13 nonzero at {i}"))
        }
        Label::S3 => {
            t.symmetry_violation(1, 2).map(|ix| format!("not symmetric in slots 2,3 at {ix:?}"))
        }
        Label::T1 => {
            let alpha = scaled(&sp.t12_unchecked(t), &(-two_n_plus_one).recip().unwrap());
            let u = sp.sharp(&alpha);
            first_difference(t, &t1_generator(&sp, &u)).map(|ix| format!("differs from the T1 generator at {ix:?}"))
        }
        Label::T2 => {
            if let Some(ix) = sp.cyclic_sum(t).first_nonzero() {
                return Some(format!("cyclic sum nonzero at {ix:?}"));
            }
            let c = sp.t12_unchecked(t);
            c.iter().position(|v| !v.is_zero()).map(|i| format!("t12 nonzero at {i}"))
        }
        Label::T3 => {
            if n == 1 {
                return t.first_nonzero().map(|ix| format!("T3 is zero for n = 1; nonzero at {ix:?}"));
            }
            let alpha = scaled(&sp.t12_unchecked(t), &Rational::integer(n as i64 - 1).recip().unwrap());
            let u = sp.sharp(&alpha);
            first_difference(t, &t3_generator(&sp, &u)).map(|ix| format!("differs from the T3 generator at {ix:?}"))
        }
        Label::T4 => {
            if let Some(ix) = t.antisymmetry_violation(1, 2) {
                return Some(format!("not antisymmetric in slots 2,3 at {ix:?}"));
            }
            let c = sp.t12_unchecked(t);
            c.iter().position(|v| !v.is_zero()).map(|i| format!("t12 nonzero at {i}"))
        }
        Label::W => {
            let basis = build_basis(Label::W, n);
            let coords: Vec<Vec<Rational>> =
                basis.elements.iter().map(|b| ambient_coordinates(Space::Torsion, b)).collect();
            match linalg::coordinates(&coords, &ambient_coordinates(Space::Torsion, t)) {
                Some(_) => None,
                None => Some("not in the span of the W generators".into()),
            }
        }
    }
}

pub fn in_class(label: Label, t: &Tensor<Rational>) -> bool {
    class_violation(label, t).is_none()
}
