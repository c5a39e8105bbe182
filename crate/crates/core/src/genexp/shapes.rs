//! Shapes of semisimple elements of prime order `r` in `SL_n(q)` and the
//! good/bad classification of shape pairs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::classdata::{
    default_label, dim_omega, generation_criterion, partitions_of, ClassSpec, ClassTuple,
    OrderModCenter, Outcome,
};
use crate::error::{Error, Result};
use crate::gflinalg::{embedding, factor_poly, is_prime, FieldMatrix, GaloisField, Poly};

/// Multiplicities of the eigenvalues of an order-`r` semisimple element over
/// the algebraic closure, grouped by Frobenius orbit.
///
/// The eigenvalue 1 has multiplicity `a`; each listed orbit consists of `l`
/// primitive `r`-th roots of unity, each with multiplicity `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassShape {
    pub n: u32,
    pub r: u64,
    pub orbit_degree: u32,
    pub unit_multiplicity: u32,
    /// Non-increasing, nonzero.
    pub orbit_counts: Vec<u32>,
}

impl ClassShape {
    /// Dimension of the largest eigenspace over the algebraic closure.
    pub fn gamma(&self) -> u32 {
        self.orbit_counts
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
            .max(self.unit_multiplicity)
    }

    /// `n² − a² − l·Σc²`.
    pub fn class_dimension(&self) -> u64 {
        let n = u64::from(self.n);
        let a = u64::from(self.unit_multiplicity);
        let l = u64::from(self.orbit_degree);
        let sq: u64 = self.orbit_counts.iter().map(|&c| u64::from(c).pow(2)).sum();
        n * n - a * a - l * sq
    }

    /// The class as a symbolic spec: one label per distinct eigenvalue, each
    /// with `multiplicity` blocks of size 1.
    pub fn to_class_spec(&self) -> Result<ClassSpec> {
        let mut entries = Vec::new();
        if self.unit_multiplicity > 0 {
            entries.push(vec![1; self.unit_multiplicity as usize]);
        }
        for &c in &self.orbit_counts {
            for _ in 0..self.orbit_degree {
                entries.push(vec![1; c as usize]);
            }
        }
        let entries = entries
            .into_iter()
            .enumerate()
            .map(|(i, b)| (default_label(i), b))
            .collect();
        let spec = ClassSpec::new(self.n, entries)?;
        Ok(if self.n == 2 {
            let omc = if self.r == 2 { OrderModCenter::Involution } else { OrderModCenter::Other };
            spec.with_order_mod_center(omc)
        } else {
            spec
        })
    }
}

impl fmt::Display for ClassShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self.orbit_counts.iter().map(u32::to_string).collect();
        write!(
            f,
            "r={} a={} l={} c=[{}]",
            self.r,
            self.unit_multiplicity,
            self.orbit_degree,
            counts.join(",")
        )
    }
}

/// Multiplicative order of `q` modulo `r`.
pub fn multiplicative_order(q: u64, r: u64) -> Option<u32> {
    if r < 2 || q.is_multiple_of(r) {
        return None;
    }
    let base = q % r;
    let mut acc = base;
    let mut l = 1;
    while acc != 1 {
        acc = ((u128::from(acc) * u128::from(base)) % u128::from(r)) as u64;
        l += 1;
        if u64::from(l) > r {
            return None;
        }
    }
    Some(l)
}

fn check_prime_order(n: u32, q: u64, r: u64) -> Result<u32> {
    if n < 2 {
        return Err(Error::Validation(format!("n = {n}, expected n >= 2")));
    }
    if !is_prime(r) {
        return Err(Error::NotPrime(r));
    }
    if q.is_multiple_of(r) {
        return Err(Error::Unsupported(format!(
            "r = {r} divides q = {q}: order-{r} elements are unipotent"
        )));
    }
    let l = multiplicative_order(q, r).expect("r is prime and coprime to q");
    if l > n {
        return Err(Error::Domain(format!(
            "r = {r} does not divide |SL_{n}({q})| (q has order {l} mod r)"
        )));
    }
    Ok(l)
}

/// All noncentral shapes of order-`r` semisimple elements of `SL_n(q)`, in
/// increasing order of `a`, then decreasing orbit counts.
///
/// The determinant is not checked here; see [`realize_shape`].
pub fn enumerate_prime_order_shapes(n: u32, q: u64, r: u64) -> Result<Vec<ClassShape>> {
    let l = check_prime_order(n, q, r)?;
    let m = ((r - 1) / u64::from(l)) as usize;
    let mut out = Vec::new();
    for a in 0..n {
        let rest = n - a;
        if !rest.is_multiple_of(l) {
            continue;
        }
        for counts in partitions_of(rest / l) {
            if counts.len() > m {
                continue;
            }
            if a == 0 && l == 1 && counts.len() == 1 {
                continue;
            }
            out.push(ClassShape {
                n,
                r,
                orbit_degree: l,
                unit_multiplicity: a,
                orbit_counts: counts.parts().to_vec(),
            });
        }
    }
    Ok(out)
}

/// Minimal polynomials over `GF(q)` of the primitive `r`-th roots of unity,
/// one per Frobenius orbit, sorted by coefficients.
pub fn root_of_unity_orbits(field: &GaloisField, r: u64) -> Result<Vec<Poly>> {
    let q = field.order();
    let l = check_prime_order(u32::MAX, q, r)?;
    let (p, k) = (field.characteristic(), field.degree());
    let big = GaloisField::with_degree(p, k * l)?;
    let embed = embedding(field, &big)?;
    let back: HashMap<u64, u64> = field.elements().map(|a| (embed(a), a)).collect();
    let cofactor = (big.order() - 1) / r;
    let zeta = (1..big.order())
        .map(|z| big.pow(z, cofactor))
        .find(|&w| w != 1)
        .ok_or_else(|| Error::Domain(format!("no element of order {r} in GF({})", big.order())))?;

    let mut covered = BTreeSet::new();
    let mut polys = Vec::new();
    for j in 1..r {
        if covered.contains(&j) {
            continue;
        }
        let mut coeffs = vec![1u64];
        let mut e = j;
        for _ in 0..l {
            covered.insert(e);
            let root = big.pow(zeta, e);
            // multiply by (x − root)
            let mut next = vec![0u64; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = big.add(next[i + 1], c);
                next[i] = big.sub(next[i], big.mul(c, root));
            }
            coeffs = next;
            e = ((u128::from(e) * u128::from(q)) % u128::from(r)) as u64;
        }
        let small = coeffs
            .iter()
            .map(|c| {
                back.get(c)
                    .copied()
                    .ok_or_else(|| Error::Domain("orbit polynomial not defined over GF(q)".into()))
            })
            .collect::<Result<Vec<u64>>>()?;
        polys.push(Poly::new(field, small));
    }
    polys.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    Ok(polys)
}

/// A block-diagonal matrix of determinant 1 with the given shape: an identity
/// block of size `a`, then `c` companion blocks for each assigned orbit.
/// Orbits are assigned to the counts in the lexicographically first way that
/// gives determinant 1; `None` when no assignment does.
pub fn realize_shape(shape: &ClassShape, field: &GaloisField) -> Result<Option<FieldMatrix>> {
    let orbits = root_of_unity_orbits(field, shape.r)?;
    let companions = orbits.iter().map(FieldMatrix::companion).collect::<Result<Vec<_>>>()?;
    let dets = companions.iter().map(FieldMatrix::det).collect::<Result<Vec<u64>>>()?;

    fn search(field: &GaloisField, dets: &[u64], counts: &[u32], det: u64, chosen: &mut Vec<usize>) -> bool {
        let i = chosen.len();
        if i == counts.len() {
            return det == 1;
        }
        for (j, &d) in dets.iter().enumerate() {
            if chosen.contains(&j) {
                continue;
            }
            chosen.push(j);
            if search(field, dets, counts, field.mul(det, field.pow(d, u64::from(counts[i]))), chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    if !search(field, &dets, &shape.orbit_counts, 1, &mut chosen) {
        return Ok(None);
    }
    let mut blocks = Vec::new();
    if shape.unit_multiplicity > 0 {
        blocks.push(FieldMatrix::identity(field, shape.unit_multiplicity as usize));
    }
    for (&j, &c) in chosen.iter().zip(&shape.orbit_counts) {
        for _ in 0..c {
            blocks.push(companions[j].clone());
        }
    }
    Ok(Some(FieldMatrix::block_diag(field, &blocks)))
}

/// Shape of a semisimple element of prime order `r`, read off the
/// factorization of its characteristic polynomial.
pub fn shape_of_element(x: &FieldMatrix, r: u64) -> Result<ClassShape> {
    let field = x.field();
    let l = check_prime_order(u32::MAX, field.order(), r)?;
    let chi = x.char_poly()?;
    let fac = factor_poly(&chi, 0x5ba9e)?;
    let mut a = 0;
    let mut counts = Vec::new();
    for (g, mult) in &fac.factors {
        if g.deg() == 1 && g.eval(1) == 0 {
            a = *mult;
        } else if g.deg() == l as usize {
            counts.push(*mult);
        } else {
            return Err(Error::Domain(format!("factor {g} is not an order-{r} orbit")));
        }
    }
    counts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(ClassShape {
        n: x.rows() as u32,
        r,
        orbit_degree: l,
        unit_multiplicity: a,
        orbit_counts: counts,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairStatus {
    Good,
    Bad,
    /// Generating but not dimension-dominant over every bad pair.
    Neutral,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub shape_r: ClassShape,
    pub shape_s: ClassShape,
    pub gamma_sum: u64,
    pub dim_omega: u64,
    pub outcome: Outcome,
    pub status: PairStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodBadReport {
    pub n: u32,
    pub q: u64,
    pub r: u64,
    pub s: u64,
    pub pairs: Vec<PairRecord>,
    pub max_bad_dim: Option<u64>,
    pub good_exists: bool,
}

impl GoodBadReport {
    pub fn good_pairs(&self) -> impl Iterator<Item = &PairRecord> {
        self.pairs.iter().filter(|p| p.status == PairStatus::Good)
    }
}

/// Classifies every pair (order-`r` shape, order-`s` shape) of `SL_n(q)`.
///
/// A pair is bad when the generation criterion fails on it, and good when
/// the criterion holds and its `dim Ω` exceeds that of every bad pair.
pub fn classify_good_bad(n: u32, q: u64, r: u64, s: u64) -> Result<GoodBadReport> {
    if r == 2 && s == 2 {
        return Err(Error::Domain("(r, s) = (2, 2) is excluded".into()));
    }
    let shapes_r = enumerate_prime_order_shapes(n, q, r)?;
    let shapes_s = enumerate_prime_order_shapes(n, q, s)?;
    let mut pairs = Vec::new();
    for cr in &shapes_r {
        for cs in &shapes_s {
            let tuple = ClassTuple::new(vec![cr.to_class_spec()?, cs.to_class_spec()?])?;
            let verdict = generation_criterion(&tuple)?;
            pairs.push(PairRecord {
                shape_r: cr.clone(),
                shape_s: cs.clone(),
                gamma_sum: tuple.gamma_sum(),
                dim_omega: dim_omega(&tuple),
                outcome: verdict.outcome,
                status: if verdict.is_generating() { PairStatus::Neutral } else { PairStatus::Bad },
            });
        }
    }
    let max_bad_dim = pairs
        .iter()
        .filter(|p| p.status == PairStatus::Bad)
        .map(|p| p.dim_omega)
        .max();
    for p in &mut pairs {
        if p.status == PairStatus::Neutral && max_bad_dim.is_none_or(|m| p.dim_omega > m) {
            p.status = PairStatus::Good;
        }
    }
    let good_exists = pairs.iter().any(|p| p.status == PairStatus::Good);
    Ok(GoodBadReport { n, q, r, s, pairs, max_bad_dim, good_exists })
}

/// Order-`r` shapes of largest class dimension among those with a
/// determinant-1 realization over `field`, i.e. classes meeting `SL_n(q)`.
pub fn max_dimensional_shapes(n: u32, field: &GaloisField, r: u64) -> Result<Vec<ClassShape>> {
    let mut shapes = Vec::new();
    for s in enumerate_prime_order_shapes(n, field.order(), r)? {
        if realize_shape(&s, field)?.is_some() {
            shapes.push(s);
        }
    }
    let best = shapes.iter().map(ClassShape::class_dimension).max().unwrap_or(0);
    Ok(shapes.into_iter().filter(|s| s.class_dimension() == best).collect())
}
