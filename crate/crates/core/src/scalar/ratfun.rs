use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::union_vars;
use super::{Polynomial, Rational, Scalar};
use crate::error::{Error, Result};

/// An element of ℚ(x₁,…,xₘ) stored as an unreduced quotient of polynomials.
///
/// No multivariate gcd is computed. After every operation the common
/// monomial factor of numerator and denominator is removed and the
/// denominator is made monic; equality is decided by cross-multiplication.
/// This keeps the rational functions that occur on charts whose poles lie on
/// coordinate hyperplanes (denominators that are monomials) fully reduced.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn from_polys(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let den = Polynomial::constant_in(p.vars().clone(), Rational::one());
        RationalFunction { num: p, den }
    }

    pub fn constant_in(vars: Arc<[String]>, c: Rational) -> Self {
        Self::from_polynomial(Polynomial::constant_in(vars, c))
    }

    pub fn variable(vars: Arc<[String]>, index: usize) -> Self {
        Self::from_polynomial(Polynomial::variable(vars, index))
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn vars(&self) -> &Arc<[String]> {
        self.num.vars()
    }

    /// Re-express over a superset of the current variables.
    pub fn embed(&self, vars: &Arc<[String]>) -> Self {
        RationalFunction { num: self.num.embed(vars), den: self.den.embed(vars) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(&n / &d)
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        let (num, den) = Polynomial::unify(&num, &den);
        if num.is_zero() {
            let one = Polynomial::constant_in(num.vars().clone(), Rational::one());
            return RationalFunction { num, den: one };
        }
        let cn = num.monomial_content();
        let cd = den.monomial_content();
        let common: Vec<u32> = cn.iter().zip(&cd).map(|(a, b)| *a.min(b)).collect();
        let (mut num, mut den) = if common.iter().any(|&e| e > 0) {
            (num.div_monomial(&common), den.div_monomial(&common))
        } else {
            (num, den)
        };
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.recip().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if let Some(k) = proportional(&num, &den) {
            let vars = num.vars().clone();
            return RationalFunction {
                num: Polynomial::constant_in(vars.clone(), k),
                den: Polynomial::constant_in(vars, Rational::one()),
            };
        }
        RationalFunction { num, den }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let inv = rhs.recip().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, exp: u32) -> Self {
        RationalFunction { num: self.num.pow(exp), den: self.den.pow(exp) }
    }

    pub fn has_var(&self, var: &str) -> bool {
        self.vars().iter().any(|v| v == var)
    }

    /// Exact partial derivative by the quotient rule.
    pub fn partial(&self, var: &str) -> Result<Self> {
        let Some(i) = self.num.var_index(var) else {
            return Err(Error::UnknownVariable(var.into()));
        };
        Ok(self.partial_index(i))
    }

    pub(crate) fn partial_index(&self, i: usize) -> Self {
        let dn = self.num.partial_index(i);
        if self.den.as_constant().is_some() {
            return Self::normalized(dn, self.den.clone());
        }
        let dd = self.den.partial_index(i);
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalized(top, &self.den * &self.den)
    }

    pub fn eval_slice(&self, values: &[Rational]) -> Result<Rational> {
        let d = self.den.eval_slice(values);
        if d.is_zero() {
            return Err(Error::Pole(alloc::format!("denominator {} vanishes", self.den)));
        }
        Ok(&self.num.eval_slice(values) / &d)
    }

    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let values = self
            .vars()
            .iter()
            .map(|v| point.get(v).cloned().ok_or_else(|| Error::UnassignedVariable(v.clone())))
            .collect::<Result<Vec<_>>>()?;
        self.eval_slice(&values)
    }

    fn sum(&self, rhs: &Self, sign: bool) -> Self {
        let combine = |a: &Polynomial, b: &Polynomial| if sign { a + b } else { a - b };
        if self.den == rhs.den {
            return Self::normalized(combine(&self.num, &rhs.num), self.den.clone());
        }
        if rhs.den.is_one() {
            return Self::normalized(combine(&self.num, &(&rhs.num * &self.den)), self.den.clone());
        }
        if self.den.is_one() {
            return Self::normalized(combine(&(&self.num * &rhs.den), &rhs.num), rhs.den.clone());
        }
        let top = combine(&(&self.num * &rhs.den), &(&rhs.num * &self.den));
        Self::normalized(top, &self.den * &rhs.den)
    }
}

/// `Some(k)` when `a = k·b` for a rational constant `k`.
fn proportional(a: &Polynomial, b: &Polynomial) -> Option<Rational> {
    if a.num_terms() != b.num_terms() {
        return None;
    }
    let mut k: Option<Rational> = None;
    for ((ma, ca), (mb, cb)) in a.terms().zip(b.terms()) {
        if ma != mb {
            return None;
        }
        let r = ca / cb;
        match &k {
            None => k = Some(r),
            Some(k0) if *k0 == r => {}
            Some(_) => return None,
        }
    }
    k
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        (&self.num * &other.den) == (&other.num * &self.den)
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.sum(rhs, true)
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.sum(rhs, false)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            let vars = union_vars(self.vars(), rhs.vars());
            return RationalFunction::constant_in(vars, Rational::zero());
        }
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; see [`RationalFunction::checked_div`].
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &'a RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Scalar for RationalFunction {
    fn zero() -> Self {
        RationalFunction::from_polynomial(Polynomial::zero())
    }
    fn one() -> Self {
        RationalFunction::from_polynomial(Polynomial::constant(Rational::one()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        RationalFunction::from_polynomial(Polynomial::constant(Rational::integer(v)))
    }
    fn from_rational(r: &Rational) -> Self {
        RationalFunction::from_polynomial(Polynomial::constant(r.clone()))
    }
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
}

impl From<Rational> for RationalFunction {
    fn from(r: Rational) -> Self {
        RationalFunction::from_rational(&r)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.is_compound() {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.is_compound() {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}
