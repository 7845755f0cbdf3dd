use std::fmt;

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients from degree 0 upward, with no
/// trailing zeros. Working type for Smith normal form over ℚ[t].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly(vec![Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - c`.
    pub fn linear_root(c: Rational) -> Self {
        Self::new(vec![-c, Rational::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::rational::q(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.len() == 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly(self.0.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UPoly {
        match self.lc() {
            None => UPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = other.0.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UPoly::new(out)
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|a| -a).collect())
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    /// `self - f·other`, the elementary row/column update.
    pub fn sub_mul(&self, f: &UPoly, other: &UPoly) -> UPoly {
        self.sub(&f.mul(other))
    }

    pub fn divmod(&self, b: &UPoly) -> Result<(UPoly, UPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv = b.lc().unwrap().recip();
        let mut r = self.0.clone();
        let mut qv = vec![Rational::zero(); self.0.len().saturating_sub(db)];
        while r.len() > db {
            let top = r.len() - 1;
            let c = &r[top] * &inv;
            if !c.is_zero() {
                let shift = top - db;
                for (k, bk) in b.0.iter().enumerate() {
                    r[shift + k] -= &c * bk;
                }
                qv[shift] = c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Ok((UPoly::new(qv), UPoly::new(r)))
    }

    pub fn divides(&self, other: &UPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divmod(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Exact quotient `self / b`, if `b` divides `self`.
    pub fn exact_div(&self, b: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divmod(b).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = vec!["t".to_string()];
        write!(f, "{}", super::poly::Poly::from_upoly(self, &vars))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rational::q;

    #[test]
    fn divmod_basic() {
        let a = UPoly::from_ints(&[1, 0, 1]);
        let b = UPoly::from_ints(&[0, 1]);
        let (qq, r) = a.divmod(&b).unwrap();
        assert_eq!(qq, UPoly::from_ints(&[0, 1]));
        assert_eq!(r, UPoly::from_ints(&[1]));
        assert_eq!(a.divmod(&UPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_and_eval() {
        let a = UPoly::from_ints(&[-1, 0, 1]);
        let b = UPoly::from_ints(&[-1, 1]);
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.eval(&q(3)), q(8));
        assert!(b.divides(&a));
        assert!(!a.divides(&b));
    }
}
