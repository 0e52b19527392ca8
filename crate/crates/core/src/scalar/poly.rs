use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::Rational;
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable of the owning polynomial.
pub type Monomial = Vec<u32>;

/// A multivariate polynomial with rational coefficients.
///
/// Terms with zero coefficient are never stored. Binary operations between
/// polynomials over different variable lists work over the union of the
/// two lists (left operand's variables first).
#[derive(Clone)]
pub struct Polynomial {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rational>,
}

fn same_vars(a: &Arc<[String]>, b: &Arc<[String]>) -> bool {
    Arc::ptr_eq(a, b) || a[..] == b[..]
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { vars: Arc::from(Vec::new()), terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::constant_in(Arc::from(Vec::new()), c)
    }

    pub fn constant_in(vars: Arc<[String]>, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars.len()], c);
        }
        Polynomial { vars, terms }
    }

    /// The polynomial `vars[index]`.
    pub fn variable(vars: Arc<[String]>, index: usize) -> Self {
        assert!(index < vars.len());
        let mut m = vec![0; vars.len()];
        m[index] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(m, Rational::one());
        Polynomial { vars, terms }
    }

    pub fn from_terms(vars: Arc<[String]>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial { vars, terms: BTreeMap::new() };
        for (m, c) in terms {
            assert_eq!(m.len(), p.vars.len(), "monomial arity");
            p.add_term(m, &c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Greatest term in the (lexicographic) exponent order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Re-express over `vars`, which must contain every variable of `self`.
    pub fn embed(&self, vars: &Arc<[String]>) -> Self {
        if same_vars(&self.vars, vars) {
            return Polynomial { vars: vars.clone(), terms: self.terms.clone() };
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("embedding target lacks a variable"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut out = vec![0; vars.len()];
                for (i, &e) in m.iter().enumerate() {
                    out[map[i]] = e;
                }
                (out, c.clone())
            })
            .collect();
        Polynomial { vars: vars.clone(), terms }
    }

    /// Both operands over a common variable list.
    pub(crate) fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if same_vars(&a.vars, &b.vars) {
            return (a.clone(), Polynomial { vars: a.vars.clone(), terms: b.terms.clone() });
        }
        let vars = union_vars(&a.vars, &b.vars);
        (a.embed(&vars), b.embed(&vars))
    }

    fn zip_with(&self, rhs: &Self, sign: bool) -> Self {
        let (mut a, b) = if same_vars(&self.vars, &rhs.vars) {
            (self.clone(), None)
        } else {
            let (a, b) = Self::unify(self, rhs);
            (a, Some(b))
        };
        let b = b.as_ref().unwrap_or(rhs);
        for (m, c) in &b.terms {
            if sign {
                a.add_term(m.clone(), c);
            } else {
                a.add_term(m.clone(), &-c);
            }
        }
        a
    }

    fn product(&self, rhs: &Self) -> Self {
        let (a, b);
        let (lhs, rhs) = if same_vars(&self.vars, &rhs.vars) {
            (self, rhs)
        } else {
            (a, b) = Self::unify(self, rhs);
            (&a, &b)
        };
        let mut out = Polynomial { vars: lhs.vars.clone(), terms: BTreeMap::new() };
        for (ma, ca) in &lhs.terms {
            for (mb, cb) in &rhs.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(m, &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Polynomial::constant_in(self.vars.clone(), Rational::one());
        for _ in 0..exp {
            acc = acc.product(self);
        }
        acc
    }

    pub fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// Partial derivative with respect to the variable at `index`.
    pub fn partial_index(&self, index: usize) -> Self {
        let mut out = Polynomial { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            let e = m[index];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d[index] = e - 1;
            out.add_term(d, &(c * &Rational::integer(e as i64)));
        }
        out
    }

    pub fn partial(&self, var: &str) -> Result<Self> {
        let i = self.var_index(var).ok_or_else(|| Error::UnknownVariable(var.into()))?;
        Ok(self.partial_index(i))
    }

    /// Evaluate with `values[i]` substituted for `vars()[i]`.
    pub fn eval_slice(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(m) {
                if e > 0 {
                    t *= v.pow(e);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let values = self
            .vars
            .iter()
            .map(|v| point.get(v).cloned().ok_or_else(|| Error::UnassignedVariable(v.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval_slice(&values))
    }

    /// Componentwise minimum exponent over all terms (the monomial gcd).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.vars.len()];
        };
        let mut out = first.clone();
        for m in it {
            for (o, &e) in out.iter_mut().zip(m) {
                *o = (*o).min(e);
            }
        }
        out
    }

    /// Divide every term by the monomial `m`; each exponent must dominate `m`.
    pub fn div_monomial(&self, m: &[u32]) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }
}

pub(crate) fn union_vars(a: &Arc<[String]>, b: &Arc<[String]>) -> Arc<[String]> {
    if same_vars(a, b) {
        return a.clone();
    }
    let mut vars: Vec<String> = a.to_vec();
    for v in b.iter() {
        if !vars.contains(v) {
            vars.push(v.clone());
        }
    }
    if vars.len() == a.len() {
        a.clone()
    } else if vars[..] == b[..] {
        b.clone()
    } else {
        Arc::from(vars)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if same_vars(&self.vars, &other.vars) {
            return self.terms == other.terms;
        }
        let (a, b) = Self::unify(self, other);
        a.terms == b.terms
    }
}

impl Eq for Polynomial {}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.zip_with(rhs, true)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.zip_with(rhs, false)
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.product(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Rational::integer(-1))
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Polynomial {
    /// True if the printed form needs parentheses when used as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        match self.terms.len() {
            0 => false,
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                let nontrivial_vars = m.iter().filter(|&&e| e > 0).count();
                let coeff_plain = c.is_one() || (nontrivial_vars == 0 && c.is_integer() && !c.is_negative());
                !(coeff_plain && nontrivial_vars <= 1)
            }
            _ => true,
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = m.iter().all(|&e| e == 0);
            if !a.is_one() || is_const {
                factors.push(alloc::format!("{a}"));
            }
            for (v, &e) in self.vars.iter().zip(m) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(alloc::format!("{v}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn xy() -> Arc<[String]> {
        Arc::from(vec!["x".to_string(), "y".to_string()])
    }

    #[test]
    fn arithmetic_and_display() {
        let v = xy();
        let x = Polynomial::variable(v.clone(), 0);
        let y = Polynomial::variable(v.clone(), 1);
        let p = &(&x * &y) - &(&y * &x);
        assert!(p.is_zero());
        let q = &(&x + &y).pow(2) - &Polynomial::constant(Rational::new(1, 2));
        assert_eq!(alloc::format!("{q}"), "x^2 + 2*x*y + y^2 - 1/2");
    }

    #[test]
    fn union_of_variable_lists() {
        let x = Polynomial::variable(Arc::from(vec!["x".to_string()]), 0);
        let y = Polynomial::variable(Arc::from(vec!["y".to_string()]), 0);
        let s = &x + &y;
        assert_eq!(s.vars().len(), 2);
        assert_eq!(&s - &x, y);
    }

    #[test]
    fn partial_and_eval() {
        let v = xy();
        let x = Polynomial::variable(v.clone(), 0);
        let y = Polynomial::variable(v.clone(), 1);
        let p = &(&x.pow(3) * &y) + &y;
        assert_eq!(p.partial("x").unwrap(), (&x.pow(2) * &y).scale(&Rational::integer(3)));
        assert!(p.partial("z").is_err());
        assert_eq!(p.eval_slice(&[Rational::integer(2), Rational::integer(3)]), Rational::integer(27));
    }

    #[test]
    fn monomial_content() {
        let v = xy();
        let x = Polynomial::variable(v.clone(), 0);
        let y = Polynomial::variable(v.clone(), 1);
        let p = &(&x.pow(3) * &y) + &(&x.pow(2) * &y.pow(2));
        assert_eq!(p.monomial_content(), vec![2, 1]);
        assert_eq!(p.div_monomial(&[2, 1]), &x + &y);
    }
}
