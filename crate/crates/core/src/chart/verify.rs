//! Ambrose–Singer and linear-type identity checks on a chart.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::calculus::{
    contract_first, exterior_derivative_one_form, exterior_derivative_two_form, lie_bracket, lower_last, pair,
};
use super::{Chart, Connection};
use crate::error::{Error, Result};
use crate::report::{Check, VerificationReport};
use crate::scalar::{RationalFunction as Rf, Scalar};
use crate::tensor::{Slot, Tensor};

fn vector(v: &[Rf]) -> Tensor<Rf> {
    Tensor::from_fn(v.len(), &[Slot::Contra], |ix| v[ix[0]].clone())
}

/// Checks that a homogeneous structure tensor `S` makes `∇̃ = ∇ − S` an
/// Ambrose–Singer connection for the Fedosov structure of the chart.
pub fn verify_as_conditions(c: &Chart, s: &Tensor<Rf>) -> Result<VerificationReport> {
    c.check_structure(s)?;
    let tilde = Connection::Tilde(s);
    let r = c.curvature(Connection::Base)?;
    let rt = c.curvature(tilde)?;
    let tt = c.torsion(tilde)?;
    let mut rep = VerificationReport::new();
    rep.push(Check::vanishes("d(omega) = 0", &exterior_derivative_two_form(c.omega(), c.coords())));
    rep.push(Check::vanishes("nabla omega = 0", &c.covariant_derivative(c.omega(), Connection::Base)?));
    rep.push(Check::vanishes("torsion = 0", &c.torsion(Connection::Base)?));
    rep.push(Check::vanishes("nabla~ omega = 0", &c.covariant_derivative(c.omega(), tilde)?));
    rep.push(Check::vanishes("nabla~ S = 0", &c.covariant_derivative(s, tilde)?));
    rep.push(Check::vanishes("nabla~ R = 0", &c.covariant_derivative(&r, tilde)?));
    rep.push(Check::vanishes("nabla~ R~ = 0", &c.covariant_derivative(&rt, tilde)?));
    rep.push(Check::vanishes("nabla~ T~ = 0", &c.covariant_derivative(&tt, tilde)?));
    Ok(rep)
}

/// `ξ⊥ = ∂_i / ω(∂_i, ξ)` for the first coordinate field with
/// `ω(∂_i, ξ) ≠ 0`, so that `ω(ξ⊥, ξ) = 1`.
pub fn xi_perp(c: &Chart, xi: &[Rf]) -> Result<Vec<Rf>> {
    c.check_vector(xi)?;
    let w = contract_first(c.omega(), xi);
    // ω(∂_i, ξ) = −ω(ξ, ∂_i)
    let (i, wi) = w
        .iter()
        .enumerate()
        .find(|(_, f)| !f.is_zero())
        .ok_or_else(|| Error::Precondition("xi vanishes identically; no transverse field exists".into()))?;
    let scale = (-wi.clone()).recip().expect("nonzero");
    let mut out = vec![Rf::zero(); c.dim()];
    out[i] = scale;
    Ok(out)
}

/// The identities satisfied by a Fedosov manifold whose homogeneous structure
/// is of linear type with vector field `xi`. When `perp` is `None` a
/// transverse field is constructed by [`xi_perp`].
pub fn verify_linear_type_suite(c: &Chart, xi: &[Rf], perp: Option<&[Rf]>) -> Result<VerificationReport> {
    c.check_vector(xi)?;
    if xi.iter().all(|f| f.is_zero()) {
        return Err(Error::Precondition("xi vanishes identically".into()));
    }
    let perp = match perp {
        Some(p) => {
            c.check_vector(p)?;
            p.to_vec()
        }
        None => xi_perp(c, xi)?,
    };
    let d = c.dim();
    let coords = c.coords();
    let omega = c.omega();
    let s = c.linear_type_structure(xi)?;
    let tilde = Connection::Tilde(&s);
    let xi_t = vector(xi);
    let r = c.curvature(Connection::Base)?;
    let r4 = lower_last(&r, omega);

    let mut rep = VerificationReport::new();
    rep.push(Check::vanishes("nabla omega = 0", &c.covariant_derivative(omega, Connection::Base)?));
    rep.push(Check::vanishes("torsion = 0", &c.torsion(Connection::Base)?));
    rep.push(Check::vanishes("nabla~ xi = 0", &c.covariant_derivative(&xi_t, tilde)?));

    // ω(∂_x, ξ)
    let w: Vec<Rf> = contract_first(omega, xi).into_iter().map(|f| -f).collect();
    let nabla_xi = c.covariant_derivative(&xi_t, Connection::Base)?;
    let expected = Tensor::from_fn(d, &[Slot::Cov, Slot::Contra], |ix| w[ix[0]].clone() * &xi[ix[1]]);
    rep.push(Check::equal("nabla_X xi = omega(X, xi) xi", &nabla_xi, &expected));

    let r_xi = Tensor::from_fn(d, &[Slot::Cov, Slot::Cov, Slot::Contra], |ix| {
        (0..d).fold(Rf::zero(), |acc, l| acc + &(r.get(&[ix[0], ix[1], l, ix[2]]).clone() * &xi[l]))
    });
    rep.push(Check::vanishes("R(X,Y) xi = 0", &r_xi));

    let r_at_xi = r.insert(&[xi]);
    rep.push(Check::vanishes("R(xi,X)Y = R(xi,Y)X", &r_at_xi.sub(&r_at_xi.permute(&[1, 0, 2]))));
    rep.push(Check::vanishes("R(X,Y,Z,U) = R(X,Y,U,Z)", &r4.sub(&r4.permute(&[0, 1, 3, 2]))));

    let norm = pair(omega, &perp, xi) - &Rf::one();
    rep.push(if norm.is_zero() { Check::pass("omega(xi_perp, xi) = 1") } else { Check::fail("omega(xi_perp, xi) = 1", vec![], norm) });

    // R(ξ, ·, ·, ·) and R(ξ, ξ⊥, ·, ·)
    let r4_xi = r4.insert(&[xi]);
    let r4_xi_perp = r4.insert(&[xi, &perp]);
    let r4_perp = r4.insert(&[&perp]);

    let cyclic = Tensor::from_fn(d, &[Slot::Cov; 5], |ix| {
        let (u, wv) = (ix[3], ix[4]);
        let mut acc = Rf::zero();
        for (x, y, z) in [(ix[0], ix[1], ix[2]), (ix[1], ix[2], ix[0]), (ix[2], ix[0], ix[1])] {
            acc = acc + &(omega.get(&[x, y]).clone() * r4_xi.get(&[z, u, wv]));
            acc = acc + &(w[x].clone() * r4.get(&[y, z, u, wv]));
        }
        acc
    });
    rep.push(Check::vanishes("cyclic sum omega(X,Y) R(xi,Z,U,W) + omega(X,xi) R(Y,Z,U,W) = 0", &cyclic));

    let swap = Tensor::from_fn(d, &[Slot::Cov; 4], |ix| {
        let (x, y, u, wv) = (ix[0], ix[1], ix[2], ix[3]);
        w[x].clone() * r4_xi.get(&[y, u, wv]) - &(w[y].clone() * r4_xi.get(&[x, u, wv]))
    });
    rep.push(Check::vanishes("omega(X,xi) R(xi,Y,U,W) = omega(Y,xi) R(xi,X,U,W)", &swap));

    let reduced = Tensor::from_fn(d, &[Slot::Cov; 3], |ix| {
        r4_xi.get(ix).clone() - &(w[ix[0]].clone() * r4_xi_perp.get(&[ix[1], ix[2]]))
    });
    rep.push(Check::vanishes("R(xi,Y,U,W) = omega(Y,xi) R(xi,xi_perp,U,W)", &reduced));

    let k = r4_xi_perp.insert(&[&perp, &perp]).data()[0].clone();
    // ω(ξ⊥, ·) and R(·, ξ⊥, ·, ·)
    let w_perp = contract_first(omega, &perp);
    let r4_second_perp = Tensor::from_fn(d, &[Slot::Cov; 3], |ix| {
        (0..d).fold(Rf::zero(), |acc, b| {
            if perp[b].is_zero() {
                acc
            } else {
                acc + &(perp[b].clone() * r4.get(&[ix[0], b, ix[1], ix[2]]))
            }
        })
    });
    let eq_xi = Tensor::from_fn(d, &[Slot::Cov; 3], |ix| {
        r4_xi.get(ix).clone() - &(w[ix[0]].clone() * &w[ix[1]] * &w[ix[2]] * &k)
    });
    rep.push(Check::vanishes("R(xi,X,Y,Z) = omega(X,xi) omega(Y,xi) omega(Z,xi) R(xi,xi_perp,xi_perp,xi_perp)", &eq_xi));

    let eq_full = Tensor::from_fn(d, &[Slot::Cov; 4], |ix| {
        let (x, y, u, wv) = (ix[0], ix[1], ix[2], ix[3]);
        let coeff = -omega.get(&[x, y]).clone() - &(w_perp[x].clone() * &w[y]) + &(w_perp[y].clone() * &w[x]);
        let rhs = coeff * &w[u] * &w[wv] * &k
            - &(w[x].clone() * r4_second_perp.get(&[y, u, wv]))
            - &(w[y].clone() * r4_perp.get(&[x, u, wv]));
        r4.get(ix).clone() - &rhs
    });
    rep.push(Check::vanishes("R(X,Y,U,W) expansion in xi and xi_perp", &eq_full));

    rep.push(integrability_check(c, xi)?);
    let nxx = nabla_xi.insert(&[xi]);
    rep.push(Check::vanishes("nabla_xi xi = 0", &nxx));
    rep.push(Check::vanishes("L_xi omega = 0", &c.lie_derivative_omega(xi)?));
    let alpha = contract_first(omega, xi);
    rep.push(Check::vanishes("d(i_xi omega) = 0", &exterior_derivative_one_form(&alpha, coords)));
    Ok(rep)
}

/// `D = {X : ω(X, ξ) = 0}` is spanned by `∂_i − (α_i / α_p) ∂_p` for `i ≠ p`,
/// where `α = i_ξ ω` and `α_p ≠ 0`; integrability is `ω([X, Y], ξ) = 0` on
/// every pair of spanning fields.
fn integrability_check(c: &Chart, xi: &[Rf]) -> Result<Check> {
    const NAME: &str = "distribution omega(X, xi) = 0 integrable";
    let d = c.dim();
    let alpha = contract_first(c.omega(), xi);
    let Some(p) = alpha.iter().position(|f| !f.is_zero()) else {
        return Err(Error::Precondition("xi vanishes identically".into()));
    };
    let inv = alpha[p].recip().expect("nonzero");
    let span: Vec<(usize, Vec<Rf>)> = (0..d)
        .filter(|&i| i != p)
        .map(|i| {
            let mut v = vec![Rf::zero(); d];
            v[i] = Rf::one();
            v[p] = -(alpha[i].clone() * &inv);
            (i, v)
        })
        .collect();
    for (a, (i, x)) in span.iter().enumerate() {
        for (j, y) in span[a + 1..].iter() {
            let br = lie_bracket(x, y, c.coords());
            let v = pair(c.omega(), &br, xi);
            if !v.is_zero() {
                return Ok(Check::fail(NAME, vec![*i, *j], v));
            }
        }
    }
    Ok(Check::pass(NAME))
}

/// The 1-form `α = i_ξ ω` and whether it is closed.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    pub alpha: Vec<Rf>,
    pub closed: Check,
}

pub fn hamiltonian_oneform(c: &Chart, xi: &[Rf]) -> Result<Hamiltonian> {
    c.check_vector(xi)?;
    let alpha = contract_first(c.omega(), xi);
    let closed = Check::vanishes("d(i_xi omega) = 0", &exterior_derivative_one_form(&alpha, c.coords()));
    Ok(Hamiltonian { alpha, closed })
}

/// Compares `dH` with `i_ξ ω` for a candidate Hamiltonian `h`.
pub fn verify_hamiltonian(c: &Chart, xi: &[Rf], h: &Rf) -> Result<Check> {
    let ham = hamiltonian_oneform(c, xi)?;
    if let Some(v) = h.vars().iter().find(|v| !c.coords().contains(v)) {
        return Err(Error::UnknownVariable(v.clone()));
    }
    let diff: Vec<Rf> = (0..c.dim()).map(|i| super::partial(h, c.coords(), i) - &ham.alpha[i]).collect();
    Ok(Check::vanishes_vec(String::from("dH = i_xi omega"), &diff))
}
