//! Matrix realizations of classes, random elements of `SL_n(q)` and element
//! orders.

use std::collections::BTreeSet;

use rand::Rng;

use super::field::{prime_factors, GaloisField};
use super::matrix::FieldMatrix;
use crate::classdata::{ClassSpec, OrderModCenter};
use crate::error::{Error, Result};

/// Jordan matrix of a class with concrete eigenvalues: one block `J_b(λ)` per
/// block size `b` of each label, in profile order.
///
/// Labels must carry pairwise distinct values and the determinant must be 1.
pub fn representative_matrix(spec: &ClassSpec, field: &GaloisField) -> Result<FieldMatrix> {
    let values = spec.concrete_values().ok_or_else(|| {
        Error::Config(format!("class {spec} has no concrete eigenvalues"))
    })?;
    let mut seen = BTreeSet::new();
    let mut blocks = Vec::new();
    let mut det = 1u64;
    for entry in spec.profile().entries() {
        let text = &values[entry.label()];
        let lambda = field.parse_element(text)?;
        if lambda == 0 {
            return Err(Error::Realization(format!(
                "label `{}` has eigenvalue 0",
                entry.label()
            )));
        }
        if !seen.insert(lambda) {
            return Err(Error::Realization(format!(
                "label `{}` repeats eigenvalue {}",
                entry.label(),
                field.format_element(lambda)
            )));
        }
        for &b in entry.blocks().parts() {
            blocks.push(FieldMatrix::jordan_block(field, lambda, b as usize));
            det = field.mul(det, field.pow(lambda, u64::from(b)));
        }
    }
    if det != 1 {
        let root = field
            .nth_root(det, u64::from(spec.n()))
            .map(|c| field.format_element(c));
        return Err(Error::Determinant {
            det: field.format_element(det),
            root,
        });
    }
    Ok(FieldMatrix::block_diag(field, &blocks))
}

/// Attaches values to the labels of `spec`: the lexicographically first
/// assignment of distinct nonzero field elements (in index order) giving
/// determinant 1. Existing values are kept.
pub fn assign_eigenvalues(spec: &ClassSpec, field: &GaloisField) -> Result<ClassSpec> {
    if spec.concrete_values().is_some() {
        return Ok(spec.clone());
    }
    let sizes: Vec<u64> = spec
        .profile()
        .entries()
        .iter()
        .map(|e| u64::from(e.blocks().size()))
        .collect();
    let mut chosen = Vec::with_capacity(sizes.len());
    if !search_assignment(field, &sizes, 1, &mut chosen) {
        return Err(Error::Realization(format!(
            "no determinant-1 eigenvalue assignment for {spec} over GF({})",
            field.order()
        )));
    }
    let values: Vec<(String, String)> = spec
        .profile()
        .entries()
        .iter()
        .zip(&chosen)
        .map(|(e, &v)| (e.label().to_string(), field.format_element(v)))
        .collect();
    spec.clone().with_values(values)
}

fn search_assignment(field: &GaloisField, sizes: &[u64], det: u64, chosen: &mut Vec<u64>) -> bool {
    let i = chosen.len();
    if i == sizes.len() {
        return det == 1;
    }
    for v in 1..field.order() {
        if chosen.contains(&v) {
            continue;
        }
        chosen.push(v);
        if search_assignment(field, sizes, field.mul(det, field.pow(v, sizes[i])), chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// [`representative_matrix`] after [`assign_eigenvalues`].
pub fn realize_class(spec: &ClassSpec, field: &GaloisField) -> Result<FieldMatrix> {
    representative_matrix(&assign_eigenvalues(spec, field)?, field)
}

/// Uniform element of `GL_n(q)` by rejection sampling.
pub fn random_invertible<R: Rng + ?Sized>(n: usize, field: &GaloisField, rng: &mut R) -> FieldMatrix {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| field.random(rng)).collect())
            .collect();
        let m = FieldMatrix::from_rows(field, rows).expect("entries lie in the field");
        if m.det().expect("square") != 0 {
            return m;
        }
    }
}

/// Uniform element of `SL_n(q)`.
///
/// A uniform invertible matrix has its first row scaled by `det⁻¹`. The map
/// `GL_n → SL_n` so obtained sends each coset `g·D_c` (with `D_c` the diagonal
/// matrix `diag(c, 1, …, 1)`) to one point, and every fiber has exactly
/// `q − 1` elements, so the image is uniform.
pub fn random_special_linear<R: Rng + ?Sized>(
    n: usize,
    field: &GaloisField,
    rng: &mut R,
) -> FieldMatrix {
    let mut m = random_invertible(n, field, rng);
    let inv = field.inv(m.det().expect("square")).expect("invertible");
    for j in 0..n {
        let v = field.mul(m.get(0, j), inv);
        m.set(0, j, v);
    }
    m
}

/// `g·x·g⁻¹` with `g` uniform in `SL_n(q)`.
pub fn random_conjugate<R: Rng + ?Sized>(x: &FieldMatrix, rng: &mut R) -> FieldMatrix {
    let g = random_special_linear(x.rows(), x.field(), rng);
    let g_inv = g.inverse().expect("g is invertible");
    g.mul_unchecked(x).mul_unchecked(&g_inv)
}

/// Dimension of the `λ`-eigenspace.
pub fn eigenspace_dimension(x: &FieldMatrix, lambda: u64) -> Result<usize> {
    Ok(x.sub_scalar(lambda)?.nullity())
}

/// Whether `x` is an involution modulo the center (`x²` scalar, `x` not).
pub fn order_mod_center(x: &FieldMatrix) -> OrderModCenter {
    let sq = x.mul_unchecked(x);
    if x.scalar_value().is_none() && sq.scalar_value().is_some() {
        OrderModCenter::Involution
    } else {
        OrderModCenter::Other
    }
}

fn pow_u128(x: &FieldMatrix, mut e: u128) -> FieldMatrix {
    let mut acc = FieldMatrix::identity(x.field(), x.rows());
    let mut base = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_unchecked(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul_unchecked(&base);
        }
    }
    acc
}

/// Largest `q^n` for which the exponent bound is factored by trial division.
const FACTOR_LIMIT: u128 = 1 << 40;

/// Multiplicative order of an invertible matrix.
///
/// Every element of `GL_n(q)` has order dividing `p^e · lcm(q^i − 1 : i ≤ n)`
/// where `p^e ≥ n`; prime factors are stripped from that bound. When the
/// bound is too large to factor, powers are taken one at a time up to `cap`.
pub fn element_order(x: &FieldMatrix, cap: u64) -> Result<u64> {
    if !x.is_square() {
        return Err(Error::Shape("order of a non-square matrix".into()));
    }
    if x.det()? == 0 {
        return Err(Error::Singular);
    }
    let field = x.field();
    let n = x.rows() as u32;
    let (p, q) = (u128::from(field.characteristic()), u128::from(field.order()));
    let bound = q.checked_pow(n).filter(|&b| b < FACTOR_LIMIT);
    if bound.is_some() {
        let mut exponent: u128 = 1;
        let mut primes = BTreeSet::new();
        let mut pe = 1u128;
        while pe < u128::from(n) {
            pe *= p;
        }
        exponent *= pe;
        primes.insert(p as u64);
        for i in 1..=n {
            let m = q.pow(i) - 1;
            exponent = lcm(exponent, m);
            primes.extend(prime_factors(m as u64));
        }
        debug_assert!(pow_u128(x, exponent).is_identity());
        let mut order = exponent;
        for r in primes {
            let r = u128::from(r);
            while order.is_multiple_of(r) && pow_u128(x, order / r).is_identity() {
                order /= r;
            }
        }
        if order > u128::from(cap) {
            return Err(Error::CapExceeded { cap });
        }
        return Ok(order as u64);
    }
    let mut acc = x.clone();
    for t in 1..=cap {
        if acc.is_identity() {
            return Ok(t);
        }
        acc = acc.mul_unchecked(x);
    }
    Err(Error::CapExceeded { cap })
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> GaloisField {
        GaloisField::of_order(q).unwrap()
    }

    #[test]
    fn eigenvalue_assignment() {
        let f = gf(7);
        let spec = ClassSpec::new(3, vec![("a", vec![2]), ("b", vec![1])]).unwrap();
        let x = realize_class(&spec, &f).unwrap();
        assert_eq!(x.det().unwrap(), 1);
        // a^2 b = 1 with a = 2 first: b = 2 collides, a = 3: b = 4
        let v = assign_eigenvalues(&spec, &f).unwrap();
        assert_eq!(v.concrete_values().unwrap()["a"], "3");
        let three = ClassSpec::new(3, vec![("a", vec![1]), ("b", vec![1]), ("c", vec![1])]).unwrap();
        assert!(matches!(realize_class(&three, &gf(2)), Err(Error::Realization(_))));
    }

    #[test]
    fn representatives() {
        let f = gf(5);
        let spec = ClassSpec::new(3, vec![("a", vec![2, 1])])
            .unwrap()
            .with_values([("a", "1")])
            .unwrap();
        let x = representative_matrix(&spec, &f).unwrap();
        assert_eq!(
            x,
            FieldMatrix::block_diag(
                &f,
                &[FieldMatrix::jordan_block(&f, 1, 2), FieldMatrix::jordan_block(&f, 1, 1)]
            )
        );
        assert_eq!(x.det().unwrap(), 1);
        assert_eq!(eigenspace_dimension(&x, 1).unwrap(), 2);

        let f = gf(7);
        let spec = ClassSpec::from_shape(2, &[&[1], &[1]])
            .unwrap()
            .with_values([("a", "2"), ("b", "4")])
            .unwrap();
        assert_eq!(representative_matrix(&spec, &f).unwrap(), FieldMatrix::diagonal(&f, &[2, 4]));

        let f = gf(13);
        let spec = ClassSpec::from_shape(3, &[&[1], &[1], &[1]])
            .unwrap()
            .with_values([("a", "2"), ("b", "5"), ("c", "4")])
            .unwrap();
        let x = representative_matrix(&spec, &f).unwrap();
        assert_eq!(x, FieldMatrix::diagonal(&f, &[2, 5, 4]));
    }

    #[test]
    fn representative_errors() {
        let f = gf(7);
        let spec = ClassSpec::from_shape(2, &[&[1], &[1]]).unwrap();
        assert!(matches!(representative_matrix(&spec, &f), Err(Error::Config(_))));
        let bad_det = spec.clone().with_values([("a", "2"), ("b", "3")]).unwrap();
        match representative_matrix(&bad_det, &f) {
            Err(Error::Determinant { det, root }) => {
                assert_eq!(det, "6");
                // 6 = (±c)^2 has no solution: 6 is a non-residue mod 7
                assert_eq!(root, None);
            }
            other => panic!("{other:?}"),
        }
        let repeated = spec.with_values([("a", "1"), ("b", "1")]).unwrap();
        assert!(matches!(representative_matrix(&repeated, &f), Err(Error::Realization(_))));
    }

    #[test]
    fn random_special_linear_has_det_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for q in [2, 3, 4, 5, 7] {
            let f = gf(q);
            for n in 2..=4 {
                for _ in 0..20 {
                    assert_eq!(random_special_linear(n, &f, &mut rng).det().unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn random_special_linear_is_uniform_on_sl2_2() {
        // |SL_2(2)| = 6; each element should appear about 1/6 of the time.
        let f = gf(2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut counts = std::collections::HashMap::new();
        let trials = 6000;
        for _ in 0..trials {
            *counts.entry(random_special_linear(2, &f, &mut rng).canonical_bytes()).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 6);
        for &c in counts.values() {
            assert!((850..1150).contains(&c), "{c}");
        }
    }

    #[test]
    fn conjugation_preserves_char_poly() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = gf(5);
        let x = FieldMatrix::jordan_block(&f, 2, 3);
        for _ in 0..20 {
            let y = random_conjugate(&x, &mut rng);
            assert_eq!(y.char_poly().unwrap(), x.char_poly().unwrap());
        }
    }

    #[test]
    fn orders() {
        let f = gf(7);
        assert_eq!(element_order(&FieldMatrix::diagonal(&f, &[2, 4]), 1000).unwrap(), 3);
        let f = gf(3);
        assert_eq!(element_order(&FieldMatrix::jordan_block(&f, 1, 2), 1000).unwrap(), 3);
        let f = gf(5);
        assert_eq!(element_order(&FieldMatrix::scalar(&f, 2, 4), 1000).unwrap(), 2);
        let f = gf(2);
        // a unipotent block of size 3 in characteristic 2 has order 4
        assert_eq!(element_order(&FieldMatrix::jordan_block(&f, 1, 3), 1000).unwrap(), 4);
        assert!(matches!(
            element_order(&FieldMatrix::diagonal(&gf(7), &[3, 5]), 2),
            Err(Error::CapExceeded { cap: 2 })
        ));
    }

    #[test]
    fn involutions_mod_center() {
        let f = gf(3);
        let i4 = FieldMatrix::from_rows(&f, vec![vec![0, 1], vec![2, 0]]).unwrap();
        assert_eq!(order_mod_center(&i4), OrderModCenter::Involution);
        let u = FieldMatrix::jordan_block(&f, 1, 2);
        assert_eq!(order_mod_center(&u), OrderModCenter::Other);
    }
}
