//! Named pass/fail checks with concrete witnesses.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::scalar::Scalar;
use crate::tensor::Tensor;

/// The first failing component of a check: a multi-index into the tensor
/// that should have vanished, and the offending value as text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub component: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), pass: true, witness: None }
    }

    pub fn fail(name: impl Into<String>, component: Vec<usize>, value: impl ToString) -> Self {
        Check { name: name.into(), pass: false, witness: Some(Witness { component, value: value.to_string() }) }
    }

    /// Passes iff `t` vanishes; otherwise the first nonzero entry is the witness.
    pub fn vanishes<F: Scalar>(name: impl Into<String>, t: &Tensor<F>) -> Self {
        match t.nonzero().next() {
            None => Check::pass(name),
            Some((ix, v)) => Check::fail(name, ix, v),
        }
    }

    /// Passes iff every entry of `v` is zero.
    pub fn vanishes_vec<F: Scalar>(name: impl Into<String>, v: &[F]) -> Self {
        match v.iter().position(|x| !x.is_zero()) {
            None => Check::pass(name),
            Some(i) => Check::fail(name, alloc::vec![i], &v[i]),
        }
    }

    /// Passes iff `a == b`; the witness is the first differing entry of `a − b`.
    pub fn equal<F: Scalar>(name: impl Into<String>, a: &Tensor<F>, b: &Tensor<F>) -> Self {
        Check::vanishes(name, &a.sub(b))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}
