//! The two half-plane charts `{x > 0}` of linear type, and the sign search
//! used to repair the first one.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{Chart, Connection};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational_function, RationalFunction as Rf, Scalar};
use crate::tensor::{Slot, Tensor};

fn xy() -> Arc<[String]> {
    Arc::from(vec![String::from("x"), String::from("y")])
}

fn rf(text: &str, vars: &Arc<[String]>) -> Rf {
    parse_rational_function(text, vars).expect("built-in literal")
}

fn area_form(coeff: &str, vars: &Arc<[String]>) -> Tensor<Rf> {
    let f = rf(coeff, vars);
    let mut w = Tensor::zeros(2, &[Slot::Cov, Slot::Cov]);
    w.set(&[0, 1], f.clone());
    w.set(&[1, 0], -f);
    w
}

fn half_plane(omega: &str, symbols: &[(usize, usize, usize, &str)]) -> Chart {
    let v = xy();
    let symbols: Vec<_> = symbols.iter().map(|&(k, i, j, t)| (k, i, j, rf(t, &v))).collect();
    Chart::from_christoffel(v.to_vec(), area_form(omega, &v), &symbols)
        .expect("built-in chart")
        .with_excluded_locus("x = 0")
}

/// `ω = 1/(3x²) dx∧dy` with `Γ¹₁₁ = −4/(3x)`, `Γ²₁₂ = 2/(3x)`,
/// `Γ²₂₁ = −2/(3x)` exactly as published. This connection has torsion; see
/// [`example1_emended`].
pub fn example1() -> Chart {
    let v = xy();
    half_plane("1/(3*x^2)", &[(0, 0, 0, "-4/(3*x)"), (1, 0, 1, "2/(3*x)"), (1, 1, 0, "-2/(3*x)")])
        .with_vector_field("xi", vec![Rf::zero(), rf("x", &v)])
        .and_then(|c| c.with_vector_field("radial", vec![rf("x", &v), Rf::zero()]))
        .expect("built-in fields")
}

/// The unique sign pattern on the published Christoffel symbols of
/// [`example1`] that is torsion-free and preserves `ω`.
pub fn example1_emended() -> Result<Chart> {
    let search = sign_search(&example1())?;
    search.unique().cloned().ok_or_else(|| {
        Error::Internal(format!("expected exactly one admissible sign pattern, found {}", search.admissible().count()))
    })
}

/// `ω = 1/x² dx∧dy` with `Γ¹₁₁ = −2/x` as the only nonzero symbol.
pub fn example2() -> Chart {
    let v = xy();
    half_plane("1/x^2", &[(0, 0, 0, "-2/x")])
        .with_vector_field("xi", vec![Rf::zero(), rf("x", &v)])
        .and_then(|c| c.with_vector_field("eta", vec![rf("x", &v), rf("y", &v)]))
        .expect("built-in fields")
}

/// `ℝ^{2n}` with coordinates `x1…xn, y1…yn`, `ω = Σ dxᵢ∧dyᵢ` and `Γ = 0`.
pub fn flat_chart(n: usize) -> Chart {
    let mut coords: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    coords.extend((1..=n).map(|i| format!("y{i}")));
    let d = 2 * n;
    let omega = Tensor::from_fn(d, &[Slot::Cov, Slot::Cov], |ix| {
        let (i, j) = (ix[0], ix[1]);
        if j == i + n && i < n {
            Rf::one()
        } else if i == j + n && j < n {
            -Rf::one()
        } else {
            Rf::zero()
        }
    });
    Chart::new(coords, omega, Tensor::vv_v(d)).expect("flat chart")
}

/// One sign assignment on the nonzero Christoffel symbols.
#[derive(Clone, Debug)]
pub struct SignCandidate {
    /// `(k, i, j, sign)` for each nonzero `Γᵏᵢⱼ` of the original chart.
    pub signs: Vec<(usize, usize, usize, i8)>,
    pub torsion_free: bool,
    pub preserves_omega: bool,
    pub chart: Chart,
}

impl SignCandidate {
    pub fn admissible(&self) -> bool {
        self.torsion_free && self.preserves_omega
    }
}

#[derive(Clone, Debug)]
pub struct SignSearch {
    pub candidates: Vec<SignCandidate>,
}

impl SignSearch {
    pub fn admissible(&self) -> impl Iterator<Item = &SignCandidate> {
        self.candidates.iter().filter(|c| c.admissible())
    }

    /// The chart of the only admissible candidate, if there is exactly one.
    pub fn unique(&self) -> Option<&Chart> {
        let mut it = self.admissible();
        match (it.next(), it.next()) {
            (Some(c), None) => Some(&c.chart),
            _ => None,
        }
    }
}

/// Tries every sign flip of the nonzero Christoffel symbols, recording for
/// each whether `T = 0` and `∇ω = 0`.
pub fn sign_search(c: &Chart) -> Result<SignSearch> {
    let d = c.dim();
    let mut symbols = Vec::new();
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                let g = c.christoffel(k, i, j);
                if !g.is_zero() {
                    symbols.push((k, i, j, g.clone()));
                }
            }
        }
    }
    if symbols.len() > 16 {
        return Err(Error::Unsupported(format!("sign search over {} symbols", symbols.len())));
    }
    let mut candidates = Vec::new();
    for mask in 0u32..(1 << symbols.len()) {
        let mut conn = Tensor::vv_v(d);
        let mut signs = Vec::new();
        for (b, (k, i, j, g)) in symbols.iter().enumerate() {
            let neg = mask & (1 << b) != 0;
            conn.set(&[*i, *j, *k], if neg { -g.clone() } else { g.clone() });
            signs.push((*k, *i, *j, if neg { -1 } else { 1 }));
        }
        let mut chart = Chart::new(c.coords().to_vec(), c.omega().clone(), conn)?;
        chart.fields = c.fields.clone();
        chart.excluded_locus = c.excluded_locus.clone();
        let torsion_free = chart.torsion(Connection::Base)?.is_zero();
        let preserves_omega = chart.covariant_derivative(chart.omega(), Connection::Base)?.is_zero();
        candidates.push(SignCandidate { signs, torsion_free, preserves_omega, chart });
    }
    Ok(SignSearch { candidates })
}
