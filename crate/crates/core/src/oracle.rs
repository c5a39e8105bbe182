//! Brute-force oracles used to cross-check the main routes. Each one reaches
//! its answer by a different computation from the code it checks.

use std::collections::BTreeSet;

use crate::classdata::Partition;
use crate::error::Result;
use crate::genexp::{group_elements, root_of_unity_orbits, ClassShape};
use crate::gflinalg::{element_order, FieldMatrix, GaloisField};

/// Matrix of `A ↦ AX − XA` on `n × n` matrices, in row-major coordinates.
fn commutator_map(x: &FieldMatrix) -> FieldMatrix {
    let f = x.field();
    let n = x.rows();
    let mut m = FieldMatrix::zeros(f, n * n, n * n);
    // (AX − XA)_{ij} = Σ_k A_{ik} X_{kj} − X_{ik} A_{kj}
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                let a = f.add(m.get(row, i * n + k), x.get(k, j));
                m.set(row, i * n + k, a);
                let b = f.sub(m.get(row, k * n + j), x.get(i, k));
                m.set(row, k * n + j, b);
            }
        }
    }
    m
}

/// Dimension of the commutant `{A : AX = XA}` in `gl_n`.
pub fn commutant_nullity(x: &FieldMatrix) -> usize {
    commutator_map(x).nullity()
}

/// Dimension of `{A : AX = XA, tr A = 0}`.
pub fn trace_zero_commutant_nullity(x: &FieldMatrix) -> Result<usize> {
    let f = x.field();
    let n = x.rows();
    let mut trace = FieldMatrix::zeros(f, 1, n * n);
    for i in 0..n {
        trace.set(0, i * n + i, 1);
    }
    Ok(FieldMatrix::vstack(f, &[commutator_map(x), trace])?.nullity())
}

/// Shape keys of all noncentral classes of `SL_n`, found by generating every
/// ordered list of partitions with total size `n` and sorting each.
pub fn brute_force_shape_keys(n: u32) -> BTreeSet<Vec<Vec<u32>>> {
    fn parts(n: u32) -> Vec<Vec<u32>> {
        // all non-increasing sequences summing to n, by filtering compositions
        let mut out = Vec::new();
        for mask in 0..(1u64 << (n - 1)) {
            let mut cur = Vec::new();
            let mut len = 1;
            for bit in 0..n - 1 {
                if mask >> bit & 1 == 1 {
                    cur.push(len);
                    len = 1;
                } else {
                    len += 1;
                }
            }
            cur.push(len);
            if cur.windows(2).all(|w| w[0] >= w[1]) {
                out.push(cur);
            }
        }
        out
    }
    fn rec(rem: u32, cur: &mut Vec<Vec<u32>>, out: &mut BTreeSet<Vec<Vec<u32>>>) {
        if rem == 0 {
            let mut key = cur.clone();
            key.sort();
            key.reverse();
            out.insert(key);
            return;
        }
        for size in 1..=rem {
            for p in parts(size) {
                cur.push(p);
                rec(rem - size, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    rec(n, &mut Vec::new(), &mut out);
    out.retain(|k| !(k.len() == 1 && k[0].iter().all(|&b| b == 1)));
    out
}

/// Converts a shape key to plain vectors for comparison with
/// [`brute_force_shape_keys`].
pub fn key_vectors(key: &[Partition]) -> Vec<Vec<u32>> {
    key.iter().map(|p| p.parts().to_vec()).collect()
}

/// Some proper nonzero subspace invariant under every generator, found by
/// scanning all subspaces in reduced row echelon form.
pub fn exhaustive_invariant_subspace(gens: &[FieldMatrix]) -> Option<Vec<Vec<u64>>> {
    let g0 = gens.first()?;
    let f = g0.field();
    let n = g0.rows();
    let q = f.order();
    for k in 1..n {
        for pivots in combinations(n, k) {
            // free positions: row i, column c > pivots[i], c not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let pv = pivots.clone();
                    (pivots[i] + 1..n).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
                })
                .collect();
            let total = q.checked_pow(free.len() as u32)?;
            for idx in 0..total {
                let mut basis = vec![vec![0u64; n]; k];
                for (i, &pc) in pivots.iter().enumerate() {
                    basis[i][pc] = 1;
                }
                let mut rest = idx;
                for &(i, c) in &free {
                    basis[i][c] = rest % q;
                    rest /= q;
                }
                let span = FieldMatrix::from_rows(f, basis.clone()).ok()?;
                let invariant = gens.iter().all(|g| {
                    basis.iter().all(|v| {
                        let w = g.mul_vec(v);
                        let mut rows = basis.clone();
                        rows.push(w);
                        FieldMatrix::from_rows(f, rows).map(|m| m.rank()).unwrap_or(usize::MAX) == span.rank()
                    })
                });
                if invariant {
                    return Some(basis);
                }
            }
        }
    }
    None
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Smallest `m ≥ 1` with `x^m = I`, by repeated multiplication.
pub fn naive_order(x: &FieldMatrix, cap: u64) -> Option<u64> {
    let mut acc = x.clone();
    for m in 1..=cap {
        if acc.is_identity() {
            return Some(m);
        }
        acc = acc.mul_unchecked(x);
    }
    None
}

/// Shapes of all noncentral order-`r` elements of `SL_n(q)`, from a scan of the whole
/// group. Multiplicities come from kernel dimensions: `a = dim ker(x − 1)`
/// and `c_f = dim ker f(x) / deg f` for each orbit polynomial `f`.
pub fn scanned_prime_order_shapes(n: usize, field: &GaloisField, r: u64, cap: u64) -> Result<BTreeSet<ClassShape>> {
    let orbits = root_of_unity_orbits(field, r)?;
    let l = orbits[0].deg() as u32;
    let mut out = BTreeSet::new();
    for x in group_elements(n, field, cap)? {
        if x.scalar_value().is_some() || element_order(&x, u64::MAX)? != r {
            continue;
        }
        let a = x.sub_scalar(1)?.nullity() as u32;
        let mut counts = Vec::new();
        for f in &orbits {
            let c = x.eval_poly(f)?.nullity() as u32 / l;
            if c > 0 {
                counts.push(c);
            }
        }
        counts.sort_unstable_by(|a, b| b.cmp(a));
        out.insert(ClassShape {
            n: n as u32,
            r,
            orbit_degree: l,
            unit_multiplicity: a,
            orbit_counts: counts,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classdata::enumerate_shapes;

    #[test]
    fn shape_counts() {
        for (n, count) in [(2, 2), (3, 5), (4, 13), (5, 26)] {
            assert_eq!(brute_force_shape_keys(n).len(), count);
        }
        for n in 2..=6 {
            let ours: BTreeSet<_> = enumerate_shapes(n, n).unwrap().iter().map(|s| key_vectors(&s.shape_key())).collect();
            assert_eq!(ours, brute_force_shape_keys(n));
        }
    }

    #[test]
    fn commutant_of_scalar_and_regular() {
        let f = GaloisField::of_order(5).unwrap();
        assert_eq!(commutant_nullity(&FieldMatrix::identity(&f, 3)), 9);
        let j = FieldMatrix::jordan_block(&f, 2, 3);
        assert_eq!(commutant_nullity(&j), 3);
        assert_eq!(trace_zero_commutant_nullity(&j).unwrap(), 2);
    }

    #[test]
    fn invariant_subspace_scan() {
        let f = GaloisField::of_order(2).unwrap();
        let u = FieldMatrix::from_rows(&f, vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(exhaustive_invariant_subspace(std::slice::from_ref(&u)).is_some());
        let c = FieldMatrix::from_rows(&f, vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        assert!(exhaustive_invariant_subspace(&[c]).is_none());
    }
}
