//! MeatAxe irreducibility test for matrix modules.
//!
//! Generators act on column vectors. For a random element `θ` of the
//! enveloping algebra and an irreducible factor `g` of its characteristic
//! polynomial, a vector in the kernel of `g(θ)` is spun under the
//! generators. A proper result is an invariant subspace. Otherwise a kernel
//! vector of `g(θ)ᵀ` is spun under the transposed generators; a proper
//! result gives an invariant subspace as its annihilator. If both spins fill
//! the space and `g(θ)` has nullity `deg g`, the module is irreducible
//! (Norton's criterion).

use rand::Rng;

use super::factor::factor_poly;
use super::field::GaloisField;
use super::matrix::FieldMatrix;
use crate::error::{Error, Result};

/// Random algebra elements tried before giving up.
pub const MEATAXE_ATTEMPTS: usize = 64;

const POOL_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleStatus {
    Irreducible,
    /// Basis (as column vectors) of a proper nonzero invariant subspace.
    Reducible(Vec<Vec<u64>>),
    /// No certificate found within [`MEATAXE_ATTEMPTS`] tries.
    Inconclusive,
}

impl ModuleStatus {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, ModuleStatus::Irreducible)
    }

    pub fn is_reducible(&self) -> bool {
        matches!(self, ModuleStatus::Reducible(_))
    }
}

/// Subspace kept in semi-echelon form: each stored row has a pivot column
/// where it is 1 and every later-inserted row is 0.
pub(crate) struct Subspace {
    field: GaloisField,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Subspace {
    pub(crate) fn new(field: &GaloisField) -> Self {
        Subspace {
            field: field.clone(),
            rows: Vec::new(),
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let f = &self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        v
    }

    /// Adds `v` if independent; returns the normalized new row.
    pub(crate) fn insert(&mut self, v: Vec<u64>) -> Option<Vec<u64>> {
        let f = &self.field;
        let r = self.reduce(v);
        let pivot = r.iter().position(|&c| c != 0)?;
        let inv = f.inv(r[pivot]).expect("pivot is nonzero");
        let r: Vec<u64> = r.iter().map(|&c| f.mul(c, inv)).collect();
        self.rows.push((pivot, r.clone()));
        Some(r)
    }

    pub(crate) fn basis(&self) -> Vec<Vec<u64>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

/// Smallest subspace containing `seeds` and invariant under `gens`.
pub fn spin(seeds: &[Vec<u64>], gens: &[FieldMatrix]) -> Vec<Vec<u64>> {
    let field = gens[0].field();
    let n = gens[0].rows();
    let mut space = Subspace::new(field);
    let mut queue = Vec::new();
    for s in seeds {
        if let Some(r) = space.insert(s.clone()) {
            queue.push(r);
        }
    }
    while let Some(v) = queue.pop() {
        if space.dim() == n {
            break;
        }
        for g in gens {
            if let Some(r) = space.insert(g.mul_vec(&v)) {
                queue.push(r);
            }
        }
    }
    space.basis()
}

/// Decides whether the natural module of the matrix group generated by
/// `gens` is irreducible.
pub fn irreducibility_test<R: Rng + ?Sized>(gens: &[FieldMatrix], rng: &mut R) -> Result<ModuleStatus> {
    let Some(first) = gens.first() else {
        return Err(Error::Shape("no generators".into()));
    };
    let field = first.field().clone();
    let n = first.rows();
    if gens.iter().any(|g| !g.is_square() || g.rows() != n || g.field() != &field) {
        return Err(Error::Shape("generators must be square of one size over one field".into()));
    }
    if n == 1 {
        return Ok(ModuleStatus::Irreducible);
    }
    let transposed: Vec<FieldMatrix> = gens.iter().map(FieldMatrix::transpose).collect();
    let mut pool: Vec<FieldMatrix> = gens.to_vec();

    for _ in 0..MEATAXE_ATTEMPTS {
        let a = &pool[rng.gen_range(0..pool.len())];
        let b = &pool[rng.gen_range(0..pool.len())];
        let word = a.mul_unchecked(b);
        if pool.len() < POOL_LIMIT {
            pool.push(word);
        } else {
            let slot = rng.gen_range(gens.len()..pool.len());
            pool[slot] = word;
        }
        let mut theta = FieldMatrix::zeros(&field, n, n);
        for m in &pool {
            let c = field.random(rng);
            if c != 0 {
                theta = theta.add(&m.scale(c))?;
            }
        }
        let chi = theta.char_poly()?;
        let fac = factor_poly(&chi, rng.gen())?;
        for (g, _) in &fac.factors {
            let nmat = theta.eval_poly(g)?;
            let kernel = nmat.kernel_basis();
            let sub = spin(&kernel[..1], gens);
            if sub.len() < n {
                return Ok(ModuleStatus::Reducible(sub));
            }
            let kernel_t = nmat.transpose().kernel_basis();
            let dual = spin(&kernel_t[..1], &transposed);
            if dual.len() < n {
                let rows = FieldMatrix::from_rows(&field, dual)?;
                return Ok(ModuleStatus::Reducible(rows.kernel_basis()));
            }
            if kernel.len() == g.deg() {
                return Ok(ModuleStatus::Irreducible);
            }
        }
    }
    Ok(ModuleStatus::Inconclusive)
}

/// Checks that `basis` spans a proper nonzero subspace invariant under
/// `gens`.
pub fn is_invariant_subspace(basis: &[Vec<u64>], gens: &[FieldMatrix]) -> bool {
    let Some(g0) = gens.first() else {
        return false;
    };
    let n = g0.rows();
    let field = g0.field();
    let mut space = Subspace::new(field);
    for v in basis {
        space.insert(v.clone());
    }
    let d = space.dim();
    if d == 0 || d == n {
        return false;
    }
    gens.iter().all(|g| {
        basis.iter().all(|v| {
            let mut probe = Subspace::new(field);
            for r in space.basis() {
                probe.insert(r);
            }
            probe.insert(g.mul_vec(v)).is_none()
        })
    })
}
