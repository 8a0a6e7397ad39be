use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{Field, Fp};

/// A polynomial over GF(p); `coeffs[k]` is the coefficient of `t^k`.
///
/// Always canonical: no trailing zero coefficients, so zero is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Fp>,
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field, Fp::ONE)
    }

    pub fn constant(field: Field, c: Fp) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(field: Field, c: Fp, k: usize) -> Self {
        let mut coeffs = vec![Fp::ZERO; k + 1];
        coeffs[k] = c;
        Self::from_coeffs(field, coeffs)
    }

    /// `t^k`.
    pub fn t_pow(field: Field, k: usize) -> Self {
        Self::monomial(field, Fp::ONE, k)
    }

    pub fn from_coeffs(field: Field, coeffs: Vec<Fp>) -> Self {
        let mut p = Poly { field, coeffs };
        p.normalize();
        p
    }

    /// Coefficients given as integers, reduced mod p.
    pub fn from_ints(field: Field, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.elem(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Fp::ONE]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest `k` with `t^k` dividing `self`; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Fp {
        self.coeffs.last().copied().unwrap_or(Fp::ZERO)
    }

    /// Coefficient of `t^k`; zero beyond the degree.
    pub fn coefficient(&self, k: i64) -> Result<Fp> {
        if k < 0 {
            return Err(Error::NegativeIndex(k));
        }
        Ok(self.coeff(k as usize))
    }

    pub(crate) fn coeff(&self, k: usize) -> Fp {
        self.coeffs.get(k).copied().unwrap_or(Fp::ZERO)
    }

    pub fn scale(&self, c: Fp) -> Poly {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fp::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            field: self.field,
            coeffs,
        }
    }

    /// Divides by `t^k`, which must divide `self`.
    pub fn unshift(&self, k: usize) -> Poly {
        debug_assert!(self.is_zero() || self.valuation().unwrap() >= k);
        if self.is_zero() {
            return self.clone();
        }
        Poly {
            field: self.field,
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Keeps only the terms of degree below `m`.
    pub fn truncate(&self, m: usize) -> Poly {
        Poly::from_coeffs(self.field, self.coeffs.iter().take(m).copied().collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("leading coefficient nonzero");
        self.scale(inv)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let f = self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut q = vec![Fp::ZERO; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], lead_inv);
            if c.is_zero() {
                continue;
            }
            q[k] = c;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                r[k + i] = f.sub(r[k + i], f.mul(c, dc));
            }
        }
        r.truncate(dd);
        Ok((Poly::from_coeffs(f, q), Poly::from_coeffs(f, r)))
    }

    /// Quotient of an exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        match self.div_rem(d) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Evaluation at a field element (Horner).
    pub fn eval(&self, x: Fp) -> Fp {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Fp::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "polynomials over different fields");
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(f, (0..n).map(|k| f.add(self.coeff(k), rhs.coeff(k))).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "polynomials over different fields");
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(f, (0..n).map(|k| f.sub(self.coeff(k), rhs.coeff(k))).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.field;
        Poly {
            field: f,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "polynomials over different fields");
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Fp::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match (k, c.0) {
                (0, v) => v.to_string(),
                (1, 1) => "t".into(),
                (1, v) => format!("{v}t"),
                (k, 1) => format!("t^{k}"),
                (k, v) => format!("{v}t^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}
