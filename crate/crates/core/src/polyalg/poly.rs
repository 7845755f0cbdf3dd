use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{format_rational, is_negative, Rational};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Exponent vector of a monomial. Ordered by total degree, then
/// lexicographically on the exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial over ℚ in an ordered list of named variables.
///
/// Zero coefficients are never stored; the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

pub(crate) fn check_vars(left: &[String], right: &[String]) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::VariableMismatch { left: left.to_vec(), right: right.to_vec() })
    }
}

pub fn var_list(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

impl Poly {
    pub fn zero(vars: &[String]) -> Self {
        Poly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &[String]) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &[String], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn var(vars: &[String], name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Unsupported(format!("unknown variable {name:?}")))?;
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        Ok(Self::from_terms(vars, [(Monomial(exps), Rational::one())]))
    }

    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The value of a constant polynomial, `None` otherwise.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if !self.is_constant() {
            return None;
        }
        self.terms.values().next().cloned()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Degree in one variable.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        check_vars(&self.vars, &other.vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        check_vars(&self.vars, &other.vars)?;
        let mut out = Poly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division in one variable: `self = q·b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        check_vars(&self.vars, &b.vars)?;
        if self.vars.len() > 1 {
            return Err(Error::TooManyVariables(self.vars.clone()));
        }
        let (qu, ru) = self.to_upoly()?.divmod(&b.to_upoly()?)?;
        Ok((Poly::from_upoly(&qu, &self.vars), Poly::from_upoly(&ru, &self.vars)))
    }

    /// Substitutes `images[i]` for the `i`-th variable. All images must live
    /// over `target_vars`.
    pub fn substitute(&self, images: &[Poly], target_vars: &[String]) -> Result<Poly> {
        if images.len() != self.vars.len() {
            return Err(Error::Shape(format!(
                "{} images for {} variables",
                images.len(),
                self.vars.len()
            )));
        }
        for img in images {
            check_vars(img.vars(), target_vars)?;
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target_vars), p.clone()]).collect();
        let mut out = Poly::zero(target_vars);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn embed(&self, new_vars: &[String]) -> Result<Poly> {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                new_vars.iter().position(|w| w == v).ok_or_else(|| Error::VariableMismatch {
                    left: self.vars.clone(),
                    right: new_vars.to_vec(),
                })
            })
            .collect::<Result<_>>()?;
        let mut out = Poly::zero(new_vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; new_vars.len()];
            for (k, &i) in idx.iter().enumerate() {
                e[i] = m.0[k];
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Same polynomial with the variables renamed position by position.
    pub fn relabel(&self, new_vars: &[String]) -> Result<Poly> {
        if new_vars.len() != self.vars.len() {
            return Err(Error::WrongVariableCount { expected: self.vars.len(), found: new_vars.to_vec() });
        }
        Ok(Poly { vars: new_vars.to_vec(), terms: self.terms.clone() })
    }

    pub fn to_upoly(&self) -> Result<UPoly> {
        match self.vars.len() {
            0 => Ok(UPoly::constant(self.as_constant().unwrap_or_else(Rational::zero))),
            1 => {
                let deg = self.total_degree().unwrap_or(0) as usize;
                let mut coeffs = vec![Rational::zero(); deg + 1];
                for (m, c) in &self.terms {
                    coeffs[m.0[0] as usize] = c.clone();
                }
                Ok(UPoly::new(coeffs))
            }
            _ => Err(Error::TooManyVariables(self.vars.clone())),
        }
    }

    /// Inverse of [`Poly::to_upoly`]; `vars` must have length ≤ 1, and a
    /// nonconstant `u` needs exactly one variable.
    pub fn from_upoly(u: &UPoly, vars: &[String]) -> Poly {
        assert!(vars.len() <= 1);
        let mut p = Poly::zero(vars);
        for (i, c) in u.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = if vars.is_empty() {
                assert_eq!(i, 0, "nonconstant polynomial over no variables");
                Monomial(vec![])
            } else {
                Monomial(vec![i as u32])
            };
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn parse(input: &str, vars: &[String]) -> Result<Poly> {
        super::parse::parse_poly(input, vars)
    }
}

impl Add for &Poly {
    type Output = Poly;
    /// Panics when the variable lists differ; use [`Poly::try_add`] otherwise.
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial variable lists differ")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomial variable lists differ")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial variable lists differ")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (v, &e) in vars.iter().zip(&m.0) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(v)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    /// Highest term first: `3/2*t^2-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str("-")?,
                (_, false) => f.write_str("+")?,
            }
            if m.degree() == 0 {
                f.write_str(&format_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                write_monomial(f, &self.vars, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rational::{q, q_frac};

    fn t() -> Vec<String> {
        var_list(&["t"])
    }

    #[test]
    fn difference_of_squares() {
        let v = t();
        let x = Poly::var(&v, "t").unwrap();
        let a = &x + &Poly::one(&v);
        let b = &x - &Poly::one(&v);
        assert_eq!((&a * &b).to_string(), "t^2-1");
    }

    #[test]
    fn euclidean_step() {
        let v = t();
        let a = Poly::parse("t^2+1", &v).unwrap();
        let b = Poly::parse("t", &v).unwrap();
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q.to_string(), "t");
        assert_eq!(r.to_string(), "1");
    }

    #[test]
    fn additive_inverse_two_vars() {
        let v = var_list(&["t1", "t2"]);
        let a = Poly::parse("t1-t2", &v).unwrap();
        let b = Poly::parse("t2-t1", &v).unwrap();
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn mismatch_and_zero_division() {
        let a = Poly::one(&t());
        let b = Poly::one(&var_list(&["s"]));
        assert!(matches!(a.try_add(&b), Err(Error::VariableMismatch { .. })));
        assert_eq!(a.divmod(&Poly::zero(&t())), Err(Error::DivisionByZero));
        let two = Poly::one(&var_list(&["x", "y"]));
        assert!(matches!(two.divmod(&two), Err(Error::TooManyVariables(_))));
    }

    #[test]
    fn display_order_and_coefficients() {
        let v = var_list(&["t1", "t2"]);
        let p = Poly::parse("-1+3/2*t1^2-t1*t2+t2", &v).unwrap();
        assert_eq!(p.to_string(), "3/2*t1^2-t1*t2+t2-1");
        assert_eq!(Poly::parse(&p.to_string(), &v).unwrap(), p);
    }

    #[test]
    fn substitution() {
        let v = t();
        let s = var_list(&["s"]);
        let p = Poly::parse("t-4", &v).unwrap();
        let img = Poly::parse("s^2", &s).unwrap();
        assert_eq!(p.substitute(&[img], &s).unwrap().to_string(), "s^2-4");
        let e = Poly::parse("t^2+t", &v).unwrap();
        assert_eq!(e.eval(&[q(2)]), q(6));
        assert_eq!(Poly::constant(&v, q_frac(1, 2)).as_constant(), Some(q_frac(1, 2)));
    }
}
