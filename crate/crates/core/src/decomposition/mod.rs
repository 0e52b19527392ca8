//! Sp(V)-invariant decompositions of S²V*⊗V* and ∧²V*⊗V*.
//!
//! Tensors here are (0,3)-tensors in the lowered picture: a structure tensor
//! `S` is symmetric in its first two slots, a torsion tensor `T` is
//! antisymmetric in its first two slots.

mod basis;
mod decompose;
mod maps;

pub use basis::{
    ambient_coordinates, ambient_dim, build_basis, class_violation, from_ambient_coordinates, in_class,
    SubmoduleBasis,
};
pub use decompose::{
    dimension_table, subspace_identities, symplectify_torsion, DecompositionResult, Decomposer, DimensionEntry,
    DimensionTable, StatedDecomposition,
};
pub use maps::{a2, a3, c_map, eta, phi, pi, s1_generator, t1_generator, t3_generator, w_generator, xi_embed};

use core::fmt;
use core::str::FromStr;

use crate::error::Error;

/// The ambient space being decomposed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    /// S²V*⊗V*: symmetric in the first two slots.
    Cotorsion,
    /// ∧²V*⊗V*: antisymmetric in the first two slots.
    Torsion,
}

impl Space {
    pub fn labels(self) -> &'static [Label] {
        match self {
            Space::Cotorsion => &[Label::S1, Label::S2, Label::S3],
            Space::Torsion => &[Label::T1, Label::T2, Label::T3, Label::T4],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Space::Cotorsion => "cotorsion",
            Space::Torsion => "torsion",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "cotorsion" => Ok(Space::Cotorsion),
            "torsion" => Ok(Space::Torsion),
            _ => Err(Error::Unsupported(alloc::format!("unknown space `{s}` (expected torsion or cotorsion)"))),
        }
    }
}

/// An invariant submodule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    S1,
    S2,
    S3,
    T1,
    T2,
    T3,
    T4,
    /// The t12-free combination of the T1 and T3 generators.
    W,
}

impl Label {
    pub const ALL: [Label; 8] = [Label::S1, Label::S2, Label::S3, Label::T1, Label::T2, Label::T3, Label::T4, Label::W];

    pub fn space(self) -> Space {
        match self {
            Label::S1 | Label::S2 | Label::S3 => Space::Cotorsion,
            _ => Space::Torsion,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Label::S1 => "S1",
            Label::S2 => "S2",
            Label::S3 => "S3",
            Label::T1 => "T1",
            Label::T2 => "T2",
            Label::T3 => "T3",
            Label::T4 => "T4",
            Label::W => "W",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Label::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unsupported(alloc::format!("unknown class label `{s}`")))
    }
}
