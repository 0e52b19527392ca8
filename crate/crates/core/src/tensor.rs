//! Dense tensors over a `dim`-dimensional space with declared valence.
//!
//! Components are stored row-major by slot, so a (1,2)-tensor `A_X Y` with
//! slots `[Cov, Cov, Contra]` keeps `A(e_a, e_b)` in the entries `[a][b][·]`,
//! and a curvature tensor `R_{XY}Z` with slots `[Cov, Cov, Cov, Contra]`
//! keeps the `d`-th component of `R_{e_a e_b} e_c` at `[a][b][c][d]`.
//!
//! An endomorphism is a [`Matrix`] acting on column vectors:
//! `A e_j = Σ_i A[i][j] e_i`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    Cov,
    Contra,
}

#[derive(Clone, PartialEq)]
pub struct Tensor<F> {
    dim: usize,
    slots: Vec<Slot>,
    data: Vec<F>,
}

/// Iterator over all multi-indices of a given rank, last index fastest.
pub struct MultiIndices {
    dim: usize,
    current: Option<Vec<usize>>,
}

impl MultiIndices {
    pub fn new(dim: usize, rank: usize) -> Self {
        let current = if dim == 0 && rank > 0 { None } else { Some(vec![0; rank]) };
        MultiIndices { dim, current }
    }
}

impl Iterator for MultiIndices {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut k = cur.len();
        loop {
            if k == 0 {
                self.current = None;
                break;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < self.dim {
                break;
            }
            cur[k] = 0;
        }
        Some(out)
    }
}

impl<F: Scalar> Tensor<F> {
    pub fn zeros(dim: usize, slots: &[Slot]) -> Self {
        let len = dim.pow(slots.len() as u32);
        Tensor { dim, slots: slots.to_vec(), data: vec![F::zero(); len] }
    }

    pub fn from_fn(dim: usize, slots: &[Slot], mut f: impl FnMut(&[usize]) -> F) -> Self {
        let data = MultiIndices::new(dim, slots.len()).map(|ix| f(&ix)).collect();
        Tensor { dim, slots: slots.to_vec(), data }
    }

    pub fn from_data(dim: usize, slots: &[Slot], data: Vec<F>) -> Result<Self> {
        if data.len() != dim.pow(slots.len() as u32) {
            return Err(Error::DimensionMismatch("component count does not match valence".into()));
        }
        Ok(Tensor { dim, slots: slots.to_vec(), data })
    }

    /// `(0,3)` valence.
    pub fn cov3(dim: usize) -> Self {
        Self::zeros(dim, &[Slot::Cov; 3])
    }

    /// `(1,2)` valence, `A_X Y`.
    pub fn vv_v(dim: usize) -> Self {
        Self::zeros(dim, &[Slot::Cov, Slot::Cov, Slot::Contra])
    }

    /// `(1,3)` valence, `R_{XY}Z`.
    pub fn vvv_v(dim: usize) -> Self {
        Self::zeros(dim, &[Slot::Cov, Slot::Cov, Slot::Cov, Slot::Contra])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn into_data(self) -> Vec<F> {
        self.data
    }

    pub fn offset(&self, ix: &[usize]) -> usize {
        debug_assert_eq!(ix.len(), self.slots.len());
        ix.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn get(&self, ix: &[usize]) -> &F {
        &self.data[self.offset(ix)]
    }

    pub fn set(&mut self, ix: &[usize], v: F) {
        let o = self.offset(ix);
        self.data[o] = v;
    }

    pub fn indices(&self) -> MultiIndices {
        MultiIndices::new(self.dim, self.slots.len())
    }

    /// Nonzero entries as `(multi-index, value)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &F)> {
        self.indices().zip(&self.data).filter(|(_, v)| !v.is_zero())
    }

    pub fn first_nonzero(&self) -> Option<Vec<usize>> {
        self.nonzero().next().map(|(ix, _)| ix)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.dim == other.dim && self.slots == other.slots
    }

    fn check_shape(&self, other: &Self) {
        assert!(self.same_shape(other), "tensor shape mismatch");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_shape(rhs);
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b).collect();
        Tensor { dim: self.dim, slots: self.slots.clone(), data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check_shape(rhs);
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b).collect();
        Tensor { dim: self.dim, slots: self.slots.clone(), data }
    }

    pub fn scale(&self, c: &F) -> Self {
        let data = self.data.iter().map(|a| a.clone() * c).collect();
        Tensor { dim: self.dim, slots: self.slots.clone(), data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| -a.clone()).collect();
        Tensor { dim: self.dim, slots: self.slots.clone(), data }
    }

    /// `self += c · rhs`.
    pub fn add_scaled(&mut self, c: &F, rhs: &Self) {
        self.check_shape(rhs);
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            if !b.is_zero() {
                *a = a.clone() + &(c.clone() * b);
            }
        }
    }

    pub fn map<G: Scalar>(&self, f: impl FnMut(&F) -> G) -> Tensor<G> {
        Tensor { dim: self.dim, slots: self.slots.clone(), data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<G: Scalar>(&self, f: impl FnMut(&F) -> Result<G>) -> Result<Tensor<G>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Tensor { dim: self.dim, slots: self.slots.clone(), data })
    }

    /// Reorder slots: the result's slot `k` is the input's slot `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rank());
        let slots: Vec<Slot> = perm.iter().map(|&p| self.slots[p]).collect();
        let mut src = vec![0; self.rank()];
        Tensor::from_fn(self.dim, &slots, |ix| {
            for (k, &p) in perm.iter().enumerate() {
                src[p] = ix[k];
            }
            self.get(&src).clone()
        })
    }

    fn swap_slots(&self, a: usize, b: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.rank()).collect();
        perm.swap(a, b);
        self.permute(&perm)
    }

    /// First multi-index where `T(.. a .. b ..) != T(.. b .. a ..)`.
    pub fn symmetry_violation(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let swapped = self.swap_slots(a, b);
        self.indices().zip(self.data.iter().zip(&swapped.data)).find(|(_, (x, y))| x != y).map(|(ix, _)| ix)
    }

    pub fn antisymmetry_violation(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let swapped = self.swap_slots(a, b);
        self.indices()
            .zip(self.data.iter().zip(&swapped.data))
            .find(|(_, (x, y))| !((*x).clone() + *y).is_zero())
            .map(|(ix, _)| ix)
    }

    pub fn is_symmetric_in(&self, a: usize, b: usize) -> bool {
        self.symmetry_violation(a, b).is_none()
    }

    pub fn is_antisymmetric_in(&self, a: usize, b: usize) -> bool {
        self.antisymmetry_violation(a, b).is_none()
    }

    pub fn is_totally_symmetric(&self) -> bool {
        (1..self.rank()).all(|k| self.is_symmetric_in(k - 1, k))
    }

    pub fn is_totally_antisymmetric(&self) -> bool {
        (1..self.rank()).all(|k| self.is_antisymmetric_in(k - 1, k))
    }

    /// Components in the basis `e'_j = Σ_i M[i][j] e_i`; `m_inv` must be `M⁻¹`.
    pub fn change_basis(&self, m: &Matrix<F>, m_inv: &Matrix<F>) -> Self {
        let mut cur = self.clone();
        for s in 0..self.rank() {
            let mut next = Tensor::zeros(self.dim, &self.slots);
            for ix in cur.indices() {
                let mut acc = F::zero();
                let mut src = ix.clone();
                for l in 0..self.dim {
                    src[s] = l;
                    let v = cur.get(&src);
                    if v.is_zero() {
                        continue;
                    }
                    let c = match self.slots[s] {
                        Slot::Cov => &m[(l, ix[s])],
                        Slot::Contra => &m_inv[(ix[s], l)],
                    };
                    if !c.is_zero() {
                        acc = acc + &(v.clone() * c);
                    }
                }
                next.set(&ix, acc);
            }
            cur = next;
        }
        cur
    }

    /// Push-forward by the invertible map `f`.
    pub fn push_forward(&self, f: &Matrix<F>, f_inv: &Matrix<F>) -> Self {
        self.change_basis(f_inv, f)
    }

    /// Action of the endomorphism `a` as a derivation of the tensor algebra:
    /// `a` on each contravariant slot minus `a` inserted into each covariant slot.
    pub fn derivation(&self, a: &Matrix<F>) -> Self {
        let mut out = Tensor::zeros(self.dim, &self.slots);
        for ix in self.indices() {
            let mut acc = F::zero();
            let mut src = ix.clone();
            for s in 0..self.rank() {
                for l in 0..self.dim {
                    src[s] = l;
                    let v = self.get(&src);
                    if v.is_zero() {
                        continue;
                    }
                    match self.slots[s] {
                        Slot::Contra => {
                            let c = &a[(ix[s], l)];
                            if !c.is_zero() {
                                acc = acc + &(c.clone() * v);
                            }
                        }
                        Slot::Cov => {
                            let c = &a[(l, ix[s])];
                            if !c.is_zero() {
                                acc = acc - &(c.clone() * v);
                            }
                        }
                    }
                }
                src[s] = ix[s];
            }
            out.set(&ix, acc);
        }
        out
    }

    /// Insert vectors into the leading covariant slots and return the rest.
    pub fn insert(&self, vectors: &[&[F]]) -> Self {
        let k = vectors.len();
        assert!(k <= self.rank());
        assert!(self.slots[..k].iter().all(|s| *s == Slot::Cov), "insertion into a contravariant slot");
        let rest = &self.slots[k..];
        let mut out: Tensor<F> = Tensor::zeros(self.dim, rest);
        let mut full = vec![0; self.rank()];
        for head in MultiIndices::new(self.dim, k) {
            let mut coeff = F::one();
            for (v, &i) in vectors.iter().zip(&head) {
                if v[i].is_zero() {
                    coeff = F::zero();
                    break;
                }
                coeff = coeff * &v[i];
            }
            if coeff.is_zero() {
                continue;
            }
            full[..k].copy_from_slice(&head);
            for tail in MultiIndices::new(self.dim, rest.len()) {
                full[k..].copy_from_slice(&tail);
                let v = self.get(&full);
                if !v.is_zero() {
                    let o = out.offset(&tail);
                    out.data[o] = out.data[o].clone() + &(coeff.clone() * v);
                }
            }
        }
        out
    }

    /// The matrix of `Y ↦ A_X Y` for a (1,2)-tensor and fixed basis index `x`.
    pub fn endomorphism_at(&self, x: usize) -> Matrix<F> {
        assert_eq!(self.slots, [Slot::Cov, Slot::Cov, Slot::Contra]);
        let mut m = Matrix::zeros(self.dim, self.dim);
        for c in 0..self.dim {
            for d in 0..self.dim {
                m[(d, c)] = self.get(&[x, c, d]).clone();
            }
        }
        m
    }

    /// The matrix of `Z ↦ R_{XY} Z` for a (1,3)-tensor and basis indices `x`, `y`.
    pub fn endomorphism_at2(&self, x: usize, y: usize) -> Matrix<F> {
        assert_eq!(self.slots, [Slot::Cov, Slot::Cov, Slot::Cov, Slot::Contra]);
        let mut m = Matrix::zeros(self.dim, self.dim);
        for c in 0..self.dim {
            for d in 0..self.dim {
                m[(d, c)] = self.get(&[x, y, c, d]).clone();
            }
        }
        m
    }
}

impl<F: Scalar> fmt::Debug for Tensor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor(dim={}, {:?}, {{", self.dim, self.slots)?;
        for (k, (ix, v)) in self.nonzero().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{ix:?}: {v}")?;
        }
        f.write_str("})")
    }
}
