//! Dense univariate polynomials over a [`GaloisField`].

use std::fmt;

use super::field::{prime_factors, GaloisField};
use crate::error::{Error, Result};

/// Polynomial with coefficients stored low to high, without trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: GaloisField,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(field: &GaloisField, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|&c| field.contains(c)));
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &GaloisField) -> Self {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &GaloisField) -> Self {
        Poly::new(field, vec![1])
    }

    pub fn constant(field: &GaloisField, c: u64) -> Self {
        Poly::new(field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: &GaloisField) -> Self {
        Poly::new(field, vec![0, 1])
    }

    /// `x − a`.
    pub fn linear(field: &GaloisField, a: u64) -> Self {
        Poly::new(field, vec![field.neg(a), 1])
    }

    /// `∏ (x − a)` over the given roots.
    pub fn from_roots(field: &GaloisField, roots: &[u64]) -> Self {
        roots
            .iter()
            .fold(Poly::one(field), |acc, &a| acc.mul(&Poly::linear(field, a)))
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("leading coefficient is nonzero");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Self {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Self {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    /// Quotient and remainder.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::Domain("polynomial division by zero".into()));
        }
        let f = &self.field;
        let dd = divisor.deg();
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lead = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], inv_lead);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(rem[idx], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact division; errors if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Domain(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int((i as u64 % f.characteristic()) as i64), c))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// `g` with `g^p = self`, for a polynomial whose derivative vanishes.
    ///
    /// Only exponents divisible by `p` occur; each coefficient `c` is replaced
    /// by its `p`-th root `c^{q/p}`.
    pub fn pth_root(&self) -> Result<Poly> {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let root_exp = f.order() / f.characteristic();
        let mut out = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(f.pow(c, root_exp));
            } else if c != 0 {
                return Err(Error::Domain(format!("{self} is not a p-th power")));
            }
        }
        Ok(Poly::new(f, out))
    }

    /// Rabin's test: a degree-`d` polynomial is irreducible over `GF(q)` iff
    /// it divides `x^{q^d} − x` and is coprime to `x^{q^{d/r}} − x` for every
    /// prime `r | d`.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let f = self.monic();
        let q = self.field.order();
        let x = Poly::x(&self.field);
        // frob[i] = x^{q^i} mod f
        let mut frob = vec![x.rem(&f).expect("f nonzero")];
        for i in 0..d {
            let next = frob[i].powmod(q, &f).expect("f nonzero");
            frob.push(next);
        }
        if frob[d] != frob[0] {
            return false;
        }
        prime_factors(d as u64).into_iter().all(|r| {
            let h = frob[d / r as usize].sub(&x);
            h.gcd(&f).is_one()
        })
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {:?}", self.field)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = self.field.format_element(c);
            match (i, c) {
                (0, _) => write!(f, "{cs}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{cs}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{cs}x^{i}")?,
            }
        }
        Ok(())
    }
}
