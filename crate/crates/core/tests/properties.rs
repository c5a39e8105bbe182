use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use topogen::classdata::{enumerate_shapes, generation_criterion, ClassTuple};
use topogen::genexp::wilson_interval;
use topogen::gflinalg::{
    factor_poly, irreducibility_test, is_invariant_subspace, random_invertible, FieldMatrix, GaloisField,
    ModuleStatus, Poly,
};
use topogen::oracle::exhaustive_invariant_subspace;

const ORDERS: [u64; 6] = [2, 3, 4, 5, 8, 9];

fn field(i: usize) -> GaloisField {
    GaloisField::of_order(ORDERS[i % ORDERS.len()]).unwrap()
}

fn random_matrix(f: &GaloisField, n: usize, rng: &mut ChaCha8Rng) -> FieldMatrix {
    let rows = (0..n).map(|_| (0..n).map(|_| f.random(rng)).collect()).collect();
    FieldMatrix::from_rows(f, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(fi in 0usize..6, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        let u = f.random_nonzero(&mut rng);
        prop_assert_eq!(f.mul(u, f.inv(u).unwrap()), 1);
    }

    #[test]
    fn factorization_multiplies_back(fi in 0usize..6, deg in 1usize..8, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut coeffs: Vec<u64> = (0..deg).map(|_| f.random(&mut rng)).collect();
        coeffs.push(f.random_nonzero(&mut rng));
        let p = Poly::new(&f, coeffs);
        let fac = factor_poly(&p, seed).unwrap();
        prop_assert_eq!(fac.product(&f), p);
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic() && g.is_irreducible());
        }
    }

    #[test]
    fn char_poly_is_a_conjugation_invariant(fi in 0usize..6, n in 1usize..6, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_matrix(&f, n, &mut rng);
        let g = random_invertible(n, &f, &mut rng);
        let y = g.mul(&x).unwrap().mul(&g.inverse().unwrap()).unwrap();
        prop_assert_eq!(x.char_poly().unwrap(), y.char_poly().unwrap());
        // Cayley-Hamilton
        prop_assert!(x.eval_poly(&x.char_poly().unwrap()).unwrap().to_rows().iter().flatten().all(|&v| v == 0));
    }

    #[test]
    fn meataxe_agrees_with_subspace_scan(fi in 0usize..3, n in 2usize..4, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = vec![random_invertible(n, &f, &mut rng), random_invertible(n, &f, &mut rng)];
        let scan = exhaustive_invariant_subspace(&gens);
        match irreducibility_test(&gens, &mut rng).unwrap() {
            ModuleStatus::Irreducible => prop_assert!(scan.is_none()),
            ModuleStatus::Reducible(basis) => {
                prop_assert!(scan.is_some());
                prop_assert!(is_invariant_subspace(&basis, &gens));
            }
            ModuleStatus::Inconclusive => {}
        }
    }

    #[test]
    fn wilson_interval_brackets_the_estimate(trials in 1u64..5000, frac in 0.0f64..=1.0) {
        let s = ((trials as f64) * frac) as u64;
        let (lo, hi) = wilson_interval(s, trials, 1.959964);
        let p = s as f64 / trials as f64;
        prop_assert!(0.0 <= lo && lo <= p + 1e-12 && p <= hi + 1e-12 && hi <= 1.0);
    }
}

#[test]
fn class_dimensions_are_even() {
    for n in 2..=9 {
        for s in enumerate_shapes(n, n).unwrap() {
            assert_eq!(s.class_dimension() % 2, 0, "{s}");
            assert!(s.class_dimension() >= 2 * u64::from(n) - 2, "{s}");
        }
    }
}

#[test]
fn criterion_ignores_class_order_and_json_round_trip() {
    let shapes = enumerate_shapes(4, 4).unwrap();
    for a in &shapes {
        for b in &shapes {
            for c in &shapes {
                let t = ClassTuple::new(vec![a.clone(), b.clone(), c.clone()]).unwrap();
                let u = ClassTuple::new(vec![c.clone(), a.clone(), b.clone()]).unwrap();
                assert_eq!(generation_criterion(&t).unwrap(), generation_criterion(&u).unwrap());
                let back = ClassTuple::from_json(&t.to_canonical_json()).unwrap();
                assert_eq!(back.to_canonical_json(), t.to_canonical_json());
            }
        }
    }
}
