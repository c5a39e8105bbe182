//! Eigenvalues in splitting fields and the strongly-regular test.

use std::collections::HashSet;

use super::factor::{factor_poly, roots};
use super::field::GaloisField;
use super::matrix::FieldMatrix;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Seed for the (result-independent) randomness in root finding.
const ROOT_SEED: u64 = 0x0e16;

/// Eigenvalues of a matrix, listed in a field containing all of them.
#[derive(Debug, Clone)]
pub struct SplittingEigenvalues {
    pub field: GaloisField,
    /// With algebraic multiplicity, ascending.
    pub values: Vec<u64>,
}

/// Embedding of `small` into `big` (same characteristic, degree dividing),
/// as a lookup function on element indices.
pub fn embedding(small: &GaloisField, big: &GaloisField) -> Result<impl Fn(u64) -> u64> {
    let (ks, kb) = (small.degree(), big.degree());
    if small.characteristic() != big.characteristic() || kb % ks != 0 {
        return Err(Error::Domain(format!("{small} does not embed in {big}")));
    }
    // Prime-subfield indices agree in every field of characteristic p.
    let beta = if ks == 1 {
        0
    } else {
        let m = Poly::new(big, small.modulus().to_vec());
        *roots(&m, ROOT_SEED)?
            .first()
            .ok_or_else(|| Error::Domain("defining polynomial has no root".into()))?
    };
    let small = small.clone();
    let big = big.clone();
    Ok(move |a: u64| {
        if ks == 1 {
            return a;
        }
        small
            .digits(a)
            .iter()
            .rev()
            .fold(0, |acc, &c| big.add(big.mul(acc, beta), c))
    })
}

/// All eigenvalues of a square matrix, computed in the splitting field of
/// its characteristic polynomial.
pub fn eigenvalues(x: &FieldMatrix) -> Result<SplittingEigenvalues> {
    let field = x.field();
    let chi = x.char_poly()?;
    let fac = factor_poly(&chi, ROOT_SEED)?;
    let l = fac
        .factors
        .iter()
        .map(|(g, _)| g.deg() as u64)
        .fold(1, lcm);
    let degree = u64::from(field.degree()) * l;
    let degree = u32::try_from(degree).map_err(|_| Error::FieldTooLarge {
        p: field.characteristic(),
        k: u32::MAX,
    })?;
    let big = GaloisField::with_degree(field.characteristic(), degree)?;
    let embed = embedding(field, &big)?;
    let mut values = Vec::with_capacity(x.rows());
    for (g, mult) in &fac.factors {
        let g_big = Poly::new(&big, g.coeffs().iter().map(|&c| embed(c)).collect());
        let r = roots(&g_big, ROOT_SEED)?;
        debug_assert_eq!(r.len(), g.deg());
        for v in r {
            for _ in 0..*mult {
                values.push(v);
            }
        }
    }
    values.sort_unstable();
    Ok(SplittingEigenvalues { field: big, values })
}

/// Whether `x` is regular semisimple with pairwise distinct eigenvalue
/// ratios `λ_i/λ_j` over all ordered pairs `i ≠ j`.
///
/// Equivalently: `λ_i λ_j⁻¹ = λ_k λ_l⁻¹` forces `(i, j) = (k, l)` or
/// `i = j, k = l`. Matrices with a repeated eigenvalue return `false`.
pub fn is_strongly_regular(x: &FieldMatrix) -> Result<bool> {
    let chi = x.char_poly()?;
    if !chi.gcd(&chi.derivative()).is_one() {
        return Ok(false);
    }
    let eig = eigenvalues(x)?;
    let f = &eig.field;
    let mut seen = HashSet::new();
    for (i, &a) in eig.values.iter().enumerate() {
        for (j, &b) in eig.values.iter().enumerate() {
            if i != j && !seen.insert(f.div(a, b)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}
