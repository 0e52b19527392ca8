//! Symbolic calculus on a single coordinate chart with coefficients in
//! ℚ(x₁,…,xₘ).
//!
//! All identity checks are exact zero tests in the function field, so they
//! hold at a generic point; pointwise evaluation rejects poles explicitly.

mod calculus;
mod examples;
mod obstruction;
mod point;
mod verify;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Rational, RationalFunction as Rf, Scalar};
use crate::tensor::{Slot, Tensor};

pub use calculus::{
    contract_first, covariant_derivative, curvature, exterior_derivative_one_form, exterior_derivative_two_form,
    lie_bracket, lie_derivative_two_form, linear_type_structure, lower_last, pair, partial, torsion,
};
pub use examples::{example1, example1_emended, example2, flat_chart, sign_search, SignCandidate, SignSearch};
pub use obstruction::{linear_type_vector, metric_obstruction, MetricObstruction, ObstructionVerdict};
pub use point::{model_at_point, PointModel};
pub use verify::{
    hamiltonian_oneform, verify_as_conditions, verify_hamiltonian, verify_linear_type_suite, xi_perp, Hamiltonian,
};

/// Which connection a computation refers to: the chart's own `∇`, or
/// `∇̃ = ∇ − S` for a structure tensor `S`.
#[derive(Clone, Copy, Debug)]
pub enum Connection<'a> {
    Base,
    Tilde(&'a Tensor<Rf>),
}

/// A coordinate chart with a symplectic form, a connection and named fields.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    coords: Arc<[String]>,
    omega: Tensor<Rf>,
    // conn[i][j][k]: coefficient of ∂_k in ∇_{∂_i} ∂_j
    connection: Tensor<Rf>,
    fields: Vec<(String, Tensor<Rf>)>,
    excluded_locus: Option<String>,
}

fn embed_all(t: &Tensor<Rf>, coords: &Arc<[String]>, what: &str) -> Result<Tensor<Rf>> {
    t.try_map(|f| {
        if let Some(v) = f.vars().iter().find(|v| !coords.contains(v)) {
            return Err(Error::UnknownVariable(format!("{v} (in {what})")));
        }
        Ok(f.embed(coords))
    })
}

impl Chart {
    /// `omega` is the 2-form's component matrix (slots `[Cov, Cov]`) and
    /// `connection[i][j][k]` the coefficient of `∂_k` in `∇_{∂_i} ∂_j`.
    pub fn new(coords: Vec<String>, omega: Tensor<Rf>, connection: Tensor<Rf>) -> Result<Self> {
        let d = coords.len();
        if d == 0 || d % 2 == 1 {
            return Err(Error::DimensionMismatch(format!("a symplectic chart needs an even number of coordinates, got {d}")));
        }
        for (i, c) in coords.iter().enumerate() {
            if coords[..i].contains(c) {
                return Err(Error::Precondition(format!("duplicate coordinate `{c}`")));
            }
        }
        if omega.dim() != d || omega.slots() != [Slot::Cov, Slot::Cov] {
            return Err(Error::DimensionMismatch(format!("omega must be a {d}x{d} covariant 2-tensor")));
        }
        if connection.dim() != d || connection.slots() != calculus::VV_V {
            return Err(Error::DimensionMismatch(format!("connection must be a (1,2) array over {d} coordinates")));
        }
        let coords: Arc<[String]> = coords.into();
        let omega = embed_all(&omega, &coords, "omega")?;
        let connection = embed_all(&connection, &coords, "connection")?;
        if let Some(ix) = omega.antisymmetry_violation(0, 1) {
            return Err(Error::Symmetry(format!("omega is not antisymmetric at {ix:?}")));
        }
        let m = Matrix::from_rows((0..d).map(|i| (0..d).map(|j| omega.get(&[i, j]).clone()).collect()).collect());
        if m.det().is_zero() {
            return Err(Error::Singular("omega is degenerate".into()));
        }
        Ok(Chart { coords, omega, connection, fields: Vec::new(), excluded_locus: None })
    }

    /// Build from sparse Christoffel symbols `(k, i, j, Γᵏᵢⱼ)`.
    pub fn from_christoffel(coords: Vec<String>, omega: Tensor<Rf>, symbols: &[(usize, usize, usize, Rf)]) -> Result<Self> {
        let d = coords.len();
        let mut conn = Tensor::vv_v(d);
        for (k, i, j, g) in symbols {
            if *k >= d || *i >= d || *j >= d {
                return Err(Error::DimensionMismatch(format!("Christoffel index ({k},{i},{j}) out of range")));
            }
            conn.set(&[*i, *j, *k], g.clone());
        }
        Chart::new(coords, omega, conn)
    }

    /// Attach a named field. Vector fields have slots `[Contra]`.
    pub fn with_field(mut self, name: impl Into<String>, field: Tensor<Rf>) -> Result<Self> {
        let name = name.into();
        if field.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!("field `{name}` has dimension {}", field.dim())));
        }
        let field = embed_all(&field, &self.coords, &name)?;
        match self.fields.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = field,
            None => self.fields.push((name, field)),
        }
        Ok(self)
    }

    pub fn with_vector_field(self, name: impl Into<String>, components: Vec<Rf>) -> Result<Self> {
        let d = components.len();
        let t = Tensor::from_data(d, &[Slot::Contra], components)?;
        self.with_field(name, t)
    }

    pub fn with_excluded_locus(mut self, text: impl Into<String>) -> Self {
        self.excluded_locus = Some(text.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &Arc<[String]> {
        &self.coords
    }

    pub fn omega(&self) -> &Tensor<Rf> {
        &self.omega
    }

    pub fn connection(&self) -> &Tensor<Rf> {
        &self.connection
    }

    /// `Γᵏᵢⱼ`, the coefficient of `∂_k` in `∇_{∂_i} ∂_j`.
    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> &Rf {
        self.connection.get(&[i, j, k])
    }

    pub fn fields(&self) -> &[(String, Tensor<Rf>)] {
        &self.fields
    }

    pub fn field(&self, name: &str) -> Option<&Tensor<Rf>> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    /// Components of a named vector field.
    pub fn vector_field(&self, name: &str) -> Result<Vec<Rf>> {
        let t = self.field(name).ok_or_else(|| Error::Precondition(format!("no field named `{name}`")))?;
        if t.slots() != [Slot::Contra] {
            return Err(Error::Precondition(format!("field `{name}` is not a vector field")));
        }
        Ok(t.data().to_vec())
    }

    pub fn excluded_locus(&self) -> Option<&str> {
        self.excluded_locus.as_deref()
    }

    /// The coefficient array of the chosen connection.
    pub fn connection_of(&self, which: Connection<'_>) -> Result<Tensor<Rf>> {
        match which {
            Connection::Base => Ok(self.connection.clone()),
            Connection::Tilde(s) => {
                self.check_structure(s)?;
                Ok(self.connection.sub(&embed_all(s, &self.coords, "S")?))
            }
        }
    }

    pub(crate) fn check_structure(&self, s: &Tensor<Rf>) -> Result<()> {
        if s.dim() != self.dim() || s.slots() != calculus::VV_V {
            return Err(Error::DimensionMismatch("structure tensor must be a (1,2) field on the chart".into()));
        }
        Ok(())
    }

    pub fn torsion(&self, which: Connection<'_>) -> Result<Tensor<Rf>> {
        Ok(calculus::torsion(&self.connection_of(which)?))
    }

    /// Curvature with `R_{XY}Z = ∇_{[X,Y]}Z − ∇_X∇_Y Z + ∇_Y∇_X Z`.
    pub fn curvature(&self, which: Connection<'_>) -> Result<Tensor<Rf>> {
        Ok(calculus::curvature(&self.connection_of(which)?, &self.coords))
    }

    pub fn covariant_derivative(&self, field: &Tensor<Rf>, which: Connection<'_>) -> Result<Tensor<Rf>> {
        if field.dim() != self.dim() {
            return Err(Error::DimensionMismatch("field dimension differs from the chart".into()));
        }
        let f = embed_all(field, &self.coords, "field")?;
        Ok(calculus::covariant_derivative(&self.connection_of(which)?, &self.coords, &f))
    }

    /// `S_X Y = ω(X,Y) ξ − ω(Y,ξ) X`.
    pub fn linear_type_structure(&self, xi: &[Rf]) -> Result<Tensor<Rf>> {
        self.check_vector(xi)?;
        Ok(calculus::linear_type_structure(&self.omega, xi))
    }

    pub fn lie_derivative_omega(&self, xi: &[Rf]) -> Result<Tensor<Rf>> {
        self.check_vector(xi)?;
        Ok(calculus::lie_derivative_two_form(&self.omega, xi, &self.coords))
    }

    pub(crate) fn check_vector(&self, v: &[Rf]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("vector field has {} components, chart has {}", v.len(), self.dim())));
        }
        if let Some(x) = v.iter().flat_map(|f| f.vars().iter()).find(|x| !self.coords.contains(x)) {
            return Err(Error::UnknownVariable(x.clone()));
        }
        Ok(())
    }

    /// Evaluate a function of the chart coordinates at `point`.
    pub fn eval(&self, f: &Rf, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("point has {} coordinates, chart has {}", point.len(), self.dim())));
        }
        let values: Vec<Rational> = f
            .vars()
            .iter()
            .map(|v| {
                let i = self.coords.iter().position(|c| c == v).ok_or_else(|| Error::UnknownVariable(v.clone()))?;
                Ok(point[i].clone())
            })
            .collect::<Result<_>>()?;
        f.eval_slice(&values).map_err(|e| match e {
            Error::Pole(msg) => Error::Pole(format!("{msg} at {}", fmt_point(point))),
            other => other,
        })
    }

    pub fn eval_tensor(&self, t: &Tensor<Rf>, point: &[Rational]) -> Result<Tensor<Rational>> {
        t.try_map(|f| self.eval(f, point))
    }

    /// The constant function `c` over this chart's coordinates.
    pub fn constant(&self, c: i64) -> Rf {
        Rf::constant_in(self.coords.clone(), Rational::from_i64(c))
    }

    /// The coordinate function `x_i`.
    pub fn coordinate(&self, i: usize) -> Rf {
        Rf::variable(self.coords.clone(), i)
    }
}

fn fmt_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(|r| format!("{r}")).collect();
    format!("({})", parts.join(", "))
}
