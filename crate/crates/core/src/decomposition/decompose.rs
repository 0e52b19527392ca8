//! Projection onto the invariant submodules and the dimension bookkeeping.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::basis::{ambient_coordinates, ambient_dim, build_basis, from_ambient_coordinates, SubmoduleBasis};
use super::maps::a2;
use super::{Label, Space};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::report::{Check, VerificationReport};
use crate::scalar::Rational;
use crate::symplectic::SymplecticSpace;
use crate::tensor::{Slot, Tensor};

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionResult {
    /// One entry per class of the ambient space, in class order.
    pub parts: Vec<(Label, Tensor<Rational>)>,
    /// Classes with a nonzero part.
    pub type_set: Vec<Label>,
}

impl DecompositionResult {
    pub fn part(&self, label: Label) -> Option<&Tensor<Rational>> {
        self.parts.iter().find(|(l, _)| *l == label).map(|(_, t)| t)
    }

    pub fn sum(&self) -> Option<Tensor<Rational>> {
        let mut it = self.parts.iter().map(|(_, t)| t);
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, t| acc.add(t)))
    }
}

/// Precomputed class bases and change of coordinates for one ambient space.
///
/// Construction costs one exact matrix inversion of the ambient dimension;
/// afterwards each decomposition is a single matrix-vector product.
#[derive(Clone, Debug)]
pub struct Decomposer {
    space: Space,
    n: usize,
    bases: Vec<SubmoduleBasis>,
    inverse: Matrix<Rational>,
}

impl Decomposer {
    pub fn new(space: Space, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("half-dimension must be positive".into()));
        }
        let bases: Vec<SubmoduleBasis> = space.labels().iter().map(|&l| build_basis(l, n)).collect();
        let columns: Vec<Vec<Rational>> =
            bases.iter().flat_map(|b| b.elements.iter().map(|e| ambient_coordinates(space, e))).collect();
        let dim = ambient_dim(space, n);
        if columns.len() != dim {
            return Err(Error::Internal(format!(
                "class bases of the {space} space have {} elements, ambient dimension is {dim}",
                columns.len()
            )));
        }
        let inverse = Matrix::from_columns(&columns, dim)
            .inverse()
            .map_err(|_| Error::Internal(format!("class bases of the {space} space are not independent")))?;
        Ok(Decomposer { space, n, bases, inverse })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &[SubmoduleBasis] {
        &self.bases
    }

    pub fn basis(&self, label: Label) -> Option<&SubmoduleBasis> {
        self.bases.iter().find(|b| b.label == label)
    }

    fn check_input(&self, t: &Tensor<Rational>) -> Result<()> {
        if t.slots() != [Slot::Cov; 3] || t.dim() != 2 * self.n {
            return Err(Error::DimensionMismatch(format!(
                "expected a (0,3)-tensor in dimension {}, got valence {:?} in dimension {}",
                2 * self.n,
                t.slots(),
                t.dim()
            )));
        }
        let bad = match self.space {
            Space::Cotorsion => t.symmetry_violation(0, 1).map(|ix| ("symmetric", ix)),
            Space::Torsion => t.antisymmetry_violation(0, 1).map(|ix| ("antisymmetric", ix)),
        };
        match bad {
            Some((kind, ix)) => Err(Error::Symmetry(format!("input is not {kind} in its first two slots at {ix:?}"))),
            None => Ok(()),
        }
    }

    /// Coefficients of `t` in the concatenated class bases.
    pub fn coefficients(&self, t: &Tensor<Rational>) -> Result<Vec<Rational>> {
        self.check_input(t)?;
        Ok(self.inverse.mul_vec(&ambient_coordinates(self.space, t)))
    }

    pub fn decompose(&self, t: &Tensor<Rational>) -> Result<DecompositionResult> {
        let coeffs = self.coefficients(t)?;
        let mut offset = 0;
        let mut parts = Vec::new();
        let mut type_set = Vec::new();
        for b in &self.bases {
            let mut part = Tensor::cov3(2 * self.n);
            for (e, c) in b.elements.iter().zip(&coeffs[offset..]) {
                part.add_scaled(c, e);
            }
            offset += b.dim();
            if !part.is_zero() {
                type_set.push(b.label);
            }
            parts.push((b.label, part));
        }
        Ok(DecompositionResult { parts, type_set })
    }
}

/// Solve `A2(−S) = T` for a structure tensor `S` in S1 + S2.
///
/// Exists exactly when `T` lies in T1 + T2; otherwise a
/// [`Error::NoSolution`] is returned.
pub fn symplectify_torsion(cotorsion: &Decomposer, t: &Tensor<Rational>) -> Result<Tensor<Rational>> {
    if cotorsion.space() != Space::Cotorsion {
        return Err(Error::Precondition("symplectify needs the cotorsion decomposer".into()));
    }
    let n = cotorsion.n();
    if t.slots() != [Slot::Cov; 3] || t.dim() != 2 * n {
        return Err(Error::DimensionMismatch(format!("expected a (0,3)-tensor in dimension {}", 2 * n)));
    }
    if let Some(ix) = t.antisymmetry_violation(0, 1) {
        return Err(Error::Symmetry(format!("torsion is not antisymmetric in its first two slots at {ix:?}")));
    }
    let candidates: Vec<&Tensor<Rational>> = [Label::S1, Label::S2]
        .iter()
        .filter_map(|&l| cotorsion.basis(l))
        .flat_map(|b| b.elements.iter())
        .collect();
    let columns: Vec<Vec<Rational>> =
        candidates.iter().map(|s| ambient_coordinates(Space::Torsion, &a2(&s.neg()))).collect();
    let target = ambient_coordinates(Space::Torsion, t);
    let x = linalg::coordinates(&columns, &target)
        .ok_or_else(|| Error::NoSolution("torsion has a component outside T1 + T2".into()))?;
    let mut s = Tensor::cov3(2 * n);
    for (c, e) in x.iter().zip(candidates) {
        s.add_scaled(c, e);
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionEntry {
    pub n: usize,
    pub label: Label,
    pub computed: usize,
    /// The closed-form dimension, when one is stated for this class.
    pub formula: Option<i64>,
}

impl DimensionEntry {
    pub fn matches(&self) -> bool {
        self.formula.map_or(true, |f| f == self.computed as i64)
    }
}

/// A decomposition claimed for a particular `n`, with the dimensions that
/// test it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatedDecomposition {
    pub n: usize,
    pub space: Space,
    pub labels: Vec<Label>,
    /// Sum of the computed dimensions of `labels`.
    pub sum: usize,
    pub ambient: usize,
    /// Classes whose computed bases span the ambient space (exact rank).
    pub spanning: Vec<Label>,
}

impl StatedDecomposition {
    pub fn holds(&self) -> bool {
        self.sum == self.ambient
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionTable {
    pub entries: Vec<DimensionEntry>,
    /// Per `(n, space)`: sum of class dimensions, ambient dimension, and
    /// rank of the concatenated bases.
    pub totals: Vec<(usize, Space, usize, usize, usize)>,
    pub stated: Vec<StatedDecomposition>,
}

impl DimensionTable {
    pub fn entry(&self, n: usize, label: Label) -> Option<&DimensionEntry> {
        self.entries.iter().find(|e| e.n == n && e.label == label)
    }
}

/// Closed-form dimension of a class, `None` for W which has no stated formula.
pub fn formula_dim(label: Label, n: usize) -> Option<i64> {
    let n = n as i64;
    let binom3 = |m: i64| m * (m - 1) * (m - 2) / 6;
    match label {
        Label::S1 | Label::T1 | Label::T3 => Some(2 * n),
        Label::S2 | Label::T2 => Some(8 * (n * n * n - n) / 3),
        Label::S3 => Some(binom3(2 * n + 2)),
        Label::T4 => Some(2 * n * (2 * n * n - 3 * n - 2) / 3),
        Label::W => None,
    }
}

/// Decompositions claimed for small `n`, in addition to the generic ones.
fn stated_labels(space: Space, n: usize) -> Vec<Label> {
    match (space, n) {
        (Space::Cotorsion, 1) => alloc::vec![Label::S1, Label::S3],
        (Space::Torsion, 1) => alloc::vec![Label::T1],
        (Space::Torsion, 2) => alloc::vec![Label::T1, Label::T2, Label::T4],
        _ => space.labels().to_vec(),
    }
}

/// Computed basis sizes against the closed forms for `n = 1..=n_max`.
pub fn dimension_table(n_max: usize) -> DimensionTable {
    let mut entries = Vec::new();
    let mut totals = Vec::new();
    let mut stated = Vec::new();
    for n in 1..=n_max {
        for space in [Space::Cotorsion, Space::Torsion] {
            let bases: Vec<SubmoduleBasis> = space.labels().iter().map(|&l| build_basis(l, n)).collect();
            let coords = |b: &SubmoduleBasis| -> Vec<Vec<Rational>> {
                b.elements.iter().map(|e| ambient_coordinates(space, e)).collect()
            };
            let all: Vec<Vec<Rational>> = bases.iter().flat_map(coords).collect();
            let ambient = ambient_dim(space, n);
            totals.push((n, space, all.len(), ambient, linalg::rank_of(&all)));
            for b in &bases {
                entries.push(DimensionEntry { n, label: b.label, computed: b.dim(), formula: formula_dim(b.label, n) });
            }
            let labels = stated_labels(space, n);
            let sum = bases.iter().filter(|b| labels.contains(&b.label)).map(SubmoduleBasis::dim).sum();
            let spanning = bases.iter().filter(|b| b.dim() > 0).map(|b| b.label).collect();
            stated.push(StatedDecomposition { n, space, labels, sum, ambient, spanning });
        }
        let w = build_basis(Label::W, n);
        entries.push(DimensionEntry { n, label: Label::W, computed: w.dim(), formula: None });
    }
    DimensionTable { entries, totals, stated }
}

fn torsion_span(labels: &[Label], n: usize) -> Vec<Vec<Rational>> {
    labels
        .iter()
        .flat_map(|&l| build_basis(l, n).elements)
        .map(|e| ambient_coordinates(Space::Torsion, &e))
        .collect()
}

fn torsion_kernel(n: usize, conditions: impl Fn(&SymplecticSpace, &Tensor<Rational>) -> Vec<Rational>) -> Vec<Vec<Rational>> {
    let sp = SymplecticSpace::new(n);
    let dim = ambient_dim(Space::Torsion, n);
    let columns: Vec<Vec<Rational>> = (0..dim)
        .map(|k| {
            let mut e = alloc::vec![Rational::zero(); dim];
            e[k] = Rational::one();
            conditions(&sp, &from_ambient_coordinates(Space::Torsion, n, &e))
        })
        .collect();
    linalg::kernel_of_columns(&columns)
}

/// The four span identities relating the torsion classes, checked as exact
/// equalities of subspaces of ∧²V*⊗V*.
pub fn subspace_identities(n: usize) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut check = |name: String, lhs: Vec<Vec<Rational>>, rhs: Vec<Vec<Rational>>| {
        let (rl, rr) = (linalg::rank_of(&lhs), linalg::rank_of(&rhs));
        if linalg::same_span(&lhs, &rhs) {
            report.push(Check::pass(name));
        } else {
            report.push(Check::fail(name, alloc::vec![], format!("rank {rl} vs {rr}")));
        }
    };
    check(
        format!("T1+T2 = ker cyclic sum (n={n})"),
        torsion_span(&[Label::T1, Label::T2], n),
        torsion_kernel(n, |sp, t| sp.cyclic_sum(t).into_data()),
    );
    check(
        format!("T2+T4+W = ker t12 (n={n})"),
        torsion_span(&[Label::T2, Label::T4, Label::W], n),
        torsion_kernel(n, |sp, t| sp.t12_unchecked(t)),
    );
    check(
        format!("T3+T4 = totally antisymmetric (n={n})"),
        torsion_span(&[Label::T3, Label::T4], n),
        torsion_kernel(n, |_, t| t.indices().map(|ix| t.get(&ix).clone() + t.get(&[ix[0], ix[2], ix[1]])).collect()),
    );
    check(
        format!("T2+T4 = ker t12 ∩ ker t13 (n={n})"),
        torsion_span(&[Label::T2, Label::T4], n),
        torsion_kernel(n, |sp, t| {
            let mut c = sp.t12_unchecked(t);
            c.extend(sp.pair_13(t));
            c
        }),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposer_builds_for_small_n() {
        for n in 1..=2 {
            for space in [Space::Cotorsion, Space::Torsion] {
                let d = Decomposer::new(space, n).unwrap();
                let zero = Tensor::cov3(2 * n);
                let r = d.decompose(&zero).unwrap();
                assert!(r.type_set.is_empty());
            }
        }
    }

    #[test]
    fn generator_decomposes_to_itself() {
        let d = Decomposer::new(Space::Cotorsion, 2).unwrap();
        let e = d.basis(Label::S1).unwrap().elements[1].clone();
        let r = d.decompose(&e).unwrap();
        assert_eq!(r.type_set, alloc::vec![Label::S1]);
        assert_eq!(r.part(Label::S1), Some(&e));
    }

    #[test]
    fn symplectify_rejects_t3() {
        let cot = Decomposer::new(Space::Cotorsion, 2).unwrap();
        let t3 = build_basis(Label::T3, 2).elements[0].clone();
        assert!(matches!(symplectify_torsion(&cot, &t3), Err(Error::NoSolution(_))));
        let t1 = build_basis(Label::T1, 2).elements[0].clone();
        let s = symplectify_torsion(&cot, &t1).unwrap();
        assert_eq!(a2(&s.neg()), t1);
    }
}
