//! Factorization of polynomials over finite fields: squarefree decomposition,
//! distinct-degree splitting and randomized equal-degree splitting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::GaloisField;
use super::poly::Poly;
use crate::error::{Error, Result};

/// `unit · ∏ factor^multiplicity` with monic irreducible factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u64,
    /// Sorted by degree, then by coefficients.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn product(&self, field: &GaloisField) -> Poly {
        let mut acc = Poly::constant(field, self.unit);
        for (g, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

/// Factors a nonzero polynomial. The random choices in equal-degree
/// splitting are drawn from `seed`; the result does not depend on them.
pub fn factor_poly(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::Domain("cannot factor the zero polynomial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = f.leading();
    let mut factors = Vec::new();
    for (part, mult) in squarefree(&f.monic())? {
        for (block, d) in distinct_degree(&part)? {
            for g in equal_degree(&block, d, &mut rng)? {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(Factorization { unit, factors })
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree parts with their multiplicities.
pub fn squarefree(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return Ok(out);
    }
    let p = f.field().characteristic() as u32;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c)?;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y)?;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w)?;
    }
    if !c.is_one() {
        // What remains is a p-th power.
        for (g, m) in squarefree(&c.pth_root()?)? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree, returned as `(product, degree)`.
pub fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field();
    let q = field.order();
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut d = 1usize;
    while rest.deg() >= 2 * d {
        h = h.powmod(q, &rest)?;
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let deg = rest.deg();
        out.push((rest, deg));
    }
    Ok(out)
}

/// Splits a product of distinct monic irreducibles of degree `d` (Cantor and
/// Zassenhaus). Odd `q` uses `gcd(N(a)^{(q−1)/2} − 1, f)` with `N(a)` the
/// norm to `GF(q)`; even `q` uses the absolute trace to `GF(2)`.
pub fn equal_degree<R: rand::Rng>(f: &Poly, d: usize, rng: &mut R) -> Result<Vec<Poly>> {
    let n = f.deg();
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field();
    let q = field.order();
    let p = field.characteristic();
    loop {
        let a = Poly::new(field, (0..n).map(|_| field.random(rng)).collect());
        if a.deg() == 0 {
            continue;
        }
        let g = a.gcd(f);
        let candidate = if !g.is_one() && g.deg() < n {
            g
        } else if p == 2 {
            // T(a) = Σ_{i < k·d} a^{2^i}
            let rounds = field.degree() as usize * d;
            let mut term = a.rem(f)?;
            let mut sum = term.clone();
            for _ in 1..rounds {
                term = term.mul(&term).rem(f)?;
                sum = sum.add(&term);
            }
            sum.gcd(f)
        } else {
            // N(a) = ∏_{j<d} a^{q^j} lands in GF(q) modulo each factor.
            let mut term = a.rem(f)?;
            let mut norm = term.clone();
            for _ in 1..d {
                term = term.powmod(q, f)?;
                norm = norm.mul(&term).rem(f)?;
            }
            let b = norm.powmod((q - 1) / 2, f)?;
            b.sub(&Poly::one(field)).gcd(f)
        };
        if candidate.deg() > 0 && candidate.deg() < n {
            let other = f.div_exact(&candidate)?;
            let mut out = equal_degree(&candidate, d, rng)?;
            out.extend(equal_degree(&other, d, rng)?);
            return Ok(out);
        }
    }
}

/// All roots of `f` in its field, ascending, without multiplicity.
pub fn roots(f: &Poly, seed: u64) -> Result<Vec<u64>> {
    let fac = factor_poly(f, seed)?;
    let field = f.field();
    let mut out: Vec<u64> = fac
        .factors
        .iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| field.neg(g.coeff(0)))
        .collect();
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u64) -> GaloisField {
        GaloisField::of_order(q).unwrap()
    }

    fn p(field: &GaloisField, c: &[u64]) -> Poly {
        Poly::new(field, c.to_vec())
    }

    #[test]
    fn cube_minus_one_over_gf2() {
        let f = gf(2);
        let fac = factor_poly(&p(&f, &[1, 0, 0, 1]), 1).unwrap();
        assert_eq!(fac.factors, vec![(p(&f, &[1, 1]), 1), (p(&f, &[1, 1, 1]), 1)]);
    }

    #[test]
    fn x2_plus_1_over_gf5() {
        let f = gf(5);
        let fac = factor_poly(&p(&f, &[1, 0, 1]), 1).unwrap();
        assert_eq!(fac.factors, vec![(p(&f, &[2, 1]), 1), (p(&f, &[3, 1]), 1)]);
        assert_eq!(roots(&p(&f, &[1, 0, 1]), 3).unwrap(), vec![2, 3]);
    }

    #[test]
    fn fourth_power_over_gf2() {
        let f = gf(2);
        let g = p(&f, &[1, 1]);
        let h = g.mul(&g).mul(&g).mul(&g);
        let fac = factor_poly(&h, 5).unwrap();
        assert_eq!(fac.factors, vec![(g, 4)]);
    }

    #[test]
    fn mixed_multiplicities_in_char_3() {
        let f = gf(3);
        let a = p(&f, &[1, 1]);
        let b = p(&f, &[1, 0, 1]);
        let h = a.mul(&a).mul(&a).mul(&b).mul(&b);
        let fac = factor_poly(&h.scale(2), 9).unwrap();
        assert_eq!(fac.unit, 2);
        assert_eq!(fac.factors, vec![(a, 3), (b, 2)]);
    }

    #[test]
    fn result_is_independent_of_seed() {
        let f = gf(9);
        let h = Poly::from_roots(&f, &[1, 2, 3, 4, 5, 6, 7, 8]);
        let a = factor_poly(&h, 1).unwrap();
        for seed in 2..6 {
            assert_eq!(factor_poly(&h, seed).unwrap(), a);
        }
        assert_eq!(a.factors.len(), 8);
    }

    fn check_roundtrip(q: u64, coeffs: Vec<u64>, seed: u64) {
        let f = gf(q);
        let coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % q).collect();
        let h = Poly::new(&f, coeffs);
        if h.is_zero() {
            return;
        }
        let fac = factor_poly(&h, seed).unwrap();
        assert_eq!(fac.product(&f), h);
        for (g, _) in &fac.factors {
            assert!(g.is_monic() && g.is_irreducible(), "{g}");
        }
        for i in 0..fac.factors.len() {
            for j in i + 1..fac.factors.len() {
                assert_ne!(fac.factors[i].0, fac.factors[j].0);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn factors_multiply_back(
            q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 25]),
            coeffs in prop::collection::vec(0u64..1000, 1..10),
            seed in 0u64..1000,
        ) {
            check_roundtrip(q, coeffs, seed);
        }
    }
}
