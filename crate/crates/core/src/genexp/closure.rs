//! Brute-force subgroup closure, conjugacy-class orbits and exact generation
//! probabilities in small groups `SL_n(q)`.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gflinalg::{element_order, FieldMatrix, GaloisField};

/// Default limit on the number of elements a closure may store.
pub const DEFAULT_CLOSURE_CAP: u64 = 10_000_000;

/// `|SL_n(q)| = q^{n(n−1)/2} ∏_{i=2}^{n} (q^i − 1)`.
pub fn special_linear_order(n: u32, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let mut order = q.pow(n * (n - 1) / 2);
    for i in 2..=n {
        order *= q.pow(i) - BigUint::one();
    }
    order
}

/// `|SL_n(q)|` as a `u64`, if it fits.
pub fn special_linear_order_u64(n: u32, q: u64) -> Option<u64> {
    special_linear_order(n, q).to_u64()
}

/// Result of a closure that may stop early.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureOutcome {
    /// The generated subgroup has exactly this order.
    Complete(u64),
    /// More than `stop_above` elements were found.
    Exceeded(u64),
    CapExceeded,
}

/// Breadth-first closure from the identity under right multiplication by the
/// generators. Stops once more than `stop_above` elements are known (if
/// given) or once `cap` elements are stored.
pub fn closure_with_stop(gens: &[FieldMatrix], cap: u64, stop_above: Option<u64>) -> Result<ClosureOutcome> {
    let Some(first) = gens.first() else {
        return Err(Error::Shape("no generators".into()));
    };
    let n = first.rows();
    let field = first.field();
    if gens.iter().any(|g| !g.is_square() || g.rows() != n || g.field() != field) {
        return Err(Error::Shape("generators must be square of one size over one field".into()));
    }
    let id = FieldMatrix::identity(field, n);
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(id.canonical_bytes());
    let mut queue = VecDeque::from([id]);
    while let Some(h) = queue.pop_front() {
        for g in gens {
            let next = h.mul_unchecked(g);
            if seen.insert(next.canonical_bytes()) {
                let size = seen.len() as u64;
                if stop_above.is_some_and(|s| size > s) {
                    return Ok(ClosureOutcome::Exceeded(size));
                }
                if size > cap {
                    return Ok(ClosureOutcome::CapExceeded);
                }
                queue.push_back(next);
            }
        }
    }
    Ok(ClosureOutcome::Complete(seen.len() as u64))
}

/// Order of the group generated by `gens` (a finite group, so closure under
/// multiplication suffices), or [`Error::CapExceeded`].
pub fn bfs_group_closure(gens: &[FieldMatrix], cap: u64) -> Result<u64> {
    match closure_with_stop(gens, cap, None)? {
        ClosureOutcome::Complete(order) => Ok(order),
        _ => Err(Error::CapExceeded { cap }),
    }
}

/// Whether `gens` generate all of `SL_n(q)`; by Lagrange, any subgroup with
/// more than half the elements is the whole group.
pub fn generates_special_linear(gens: &[FieldMatrix], cap: u64) -> Result<Option<bool>> {
    let first = &gens[0];
    let n = first.rows() as u32;
    let order = special_linear_order_u64(n, first.field().order())
        .ok_or_else(|| Error::Resource("group order exceeds u64".into()))?;
    Ok(match closure_with_stop(gens, cap, Some(order / 2))? {
        ClosureOutcome::Exceeded(_) => Some(true),
        ClosureOutcome::Complete(_) => Some(false),
        ClosureOutcome::CapExceeded => None,
    })
}

/// Elementary transvections `I + a·E_ij` (`i ≠ j`, `a` running over an
/// additive basis of the field), which generate `SL_n(q)`.
pub fn special_linear_generators(n: usize, field: &GaloisField) -> Vec<FieldMatrix> {
    let p = field.characteristic();
    let basis: Vec<u64> = (0..field.degree()).map(|j| p.pow(j)).collect();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for &a in &basis {
                let mut t = FieldMatrix::identity(field, n);
                t.set(i, j, a);
                gens.push(t);
            }
        }
    }
    gens
}

/// All elements of `SL_n(q)`, in breadth-first order from the identity.
pub fn group_elements(n: usize, field: &GaloisField, cap: u64) -> Result<Vec<FieldMatrix>> {
    let gens = special_linear_generators(n, field);
    orbit(&FieldMatrix::identity(field, n), cap, |h, out| {
        for g in &gens {
            out.push(h.mul_unchecked(g));
        }
    })
}

/// Conjugacy class of `x` in `SL_n(q)`: the orbit under conjugation by the
/// group generators.
pub fn class_orbit(x: &FieldMatrix, cap: u64) -> Result<Vec<FieldMatrix>> {
    let gens = special_linear_generators(x.rows(), x.field());
    let pairs: Vec<(FieldMatrix, FieldMatrix)> = gens
        .into_iter()
        .map(|g| {
            let inv = g.inverse().expect("transvections are invertible");
            (g, inv)
        })
        .collect();
    orbit(x, cap, |h, out| {
        for (g, gi) in &pairs {
            out.push(g.mul_unchecked(h).mul_unchecked(gi));
        }
    })
}

fn orbit(
    start: &FieldMatrix,
    cap: u64,
    step: impl Fn(&FieldMatrix, &mut Vec<FieldMatrix>),
) -> Result<Vec<FieldMatrix>> {
    let mut seen = HashSet::new();
    seen.insert(start.canonical_bytes());
    let mut out = vec![start.clone()];
    let mut next = Vec::new();
    let mut i = 0;
    while i < out.len() {
        next.clear();
        step(&out[i], &mut next);
        for m in next.drain(..) {
            if seen.insert(m.canonical_bytes()) {
                if seen.len() as u64 > cap {
                    return Err(Error::CapExceeded { cap });
                }
                out.push(m);
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Every element of order `r` in `SL_n(q)`.
pub fn elements_of_order(n: usize, field: &GaloisField, r: u64, cap: u64) -> Result<Vec<FieldMatrix>> {
    let all = group_elements(n, field, cap)?;
    let orders: Vec<u64> = all
        .par_iter()
        .map(|x| element_order(x, u64::MAX))
        .collect::<Result<_>>()?;
    Ok(all.into_iter().zip(orders).filter(|(_, o)| *o == r).map(|(x, _)| x).collect())
}

/// Fraction of pairs `(c, d) ∈ J × K` generating `SL_n(q)`, by exhaustive
/// enumeration.
pub fn exact_generation_probability_sets(
    j: &[FieldMatrix],
    k: &[FieldMatrix],
    cap: u64,
) -> Result<Ratio<u64>> {
    if j.is_empty() || k.is_empty() {
        return Err(Error::Domain("empty element set".into()));
    }
    let n = j[0].rows() as u32;
    let order = special_linear_order_u64(n, j[0].field().order())
        .ok_or_else(|| Error::Resource("group order exceeds u64".into()))?;
    if order > cap {
        return Err(Error::CapExceeded { cap });
    }
    let pairs: Vec<(usize, usize)> = (0..j.len()).flat_map(|a| (0..k.len()).map(move |b| (a, b))).collect();
    let hits = pairs
        .par_iter()
        .map(|&(a, b)| {
            let gens = [j[a].clone(), k[b].clone()];
            generates_special_linear(&gens, cap).map(|g| u64::from(g == Some(true)))
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .sum();
    Ok(Ratio::new(hits, pairs.len() as u64))
}

/// Probability that a uniformly random pair from the classes of `x` and `y`
/// generates `SL_n(q)`, by enumerating both classes in full.
pub fn exact_generation_probability(x: &FieldMatrix, y: &FieldMatrix, cap: u64) -> Result<Ratio<u64>> {
    let cx = class_orbit(x, cap)?;
    let cy = class_orbit(y, cap)?;
    exact_generation_probability_sets(&cx, &cy, cap)
}
