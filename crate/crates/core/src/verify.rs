//! Named consistency checks comparing each main route against an oracle.
//! The `verify-oracles` command runs [`run_all`]; the sizes are kept small
//! enough that the whole suite finishes in seconds.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classdata::{enumerate_shapes, generation_criterion, restrict_tuple, ClassSpec, ClassTuple, Outcome};
use crate::error::Result;
use crate::genexp::{
    class_orbit, elements_of_order, enumerate_prime_order_shapes, exact_generation_probability,
    exact_generation_probability_sets, group_elements, realize_shape, special_linear_order_u64,
};
use crate::gflinalg::{
    element_order, factor_poly, irreducibility_test, random_conjugate, random_invertible, realize_class,
    GaloisField, ModuleStatus, Poly,
};
use crate::obstructions::{parabolic_obstruction, sl3_base_case_audit};
use crate::oracle;
use crate::stabbounds::{alpha_exact, threshold_check};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

type Check = (&'static str, fn() -> Result<(bool, String)>);

const CHECKS: &[Check] = &[
    ("shape-enumeration", shape_enumeration),
    ("centralizer-vs-commutant", centralizer_vs_commutant),
    ("criterion-vs-min-generators", criterion_vs_min_generators),
    ("parabolic-equivalence", parabolic_equivalence),
    ("restriction-soundness", restriction_soundness),
    ("sl3-audit-soundness", sl3_audit_soundness),
    ("stabilizer-bounds", stabilizer_bounds),
    ("group-order", group_order),
    ("element-order", element_orders),
    ("factorization-round-trip", factorization_round_trip),
    ("char-poly-conjugation", char_poly_conjugation),
    ("meataxe-vs-exhaustive", meataxe_vs_exhaustive),
    ("prime-order-shapes-vs-scan", prime_order_shapes_vs_scan),
    ("sl2-3-exact-table", sl2_3_exact_table),
];

/// Names of all checks, in run order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Runs every check; a check that errors counts as a failure.
pub fn run_all() -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|(name, f)| match f() {
            Ok((pass, detail)) => CheckResult { name, pass, detail },
            Err(e) => CheckResult { name, pass: false, detail: format!("error: {e}") },
        })
        .collect()
}

/// Calls `f` on every multiset of `e` classes drawn from `shapes`.
pub fn for_each_tuple(shapes: &[ClassSpec], e: usize, mut f: impl FnMut(&ClassTuple)) {
    fn rec(shapes: &[ClassSpec], start: usize, e: usize, cur: &mut Vec<ClassSpec>, f: &mut dyn FnMut(&ClassTuple)) {
        if cur.len() == e {
            f(&ClassTuple::new(cur.clone()).expect("shapes share n"));
            return;
        }
        for i in start..shapes.len() {
            cur.push(shapes[i].clone());
            rec(shapes, i, e, cur, f);
            cur.pop();
        }
    }
    rec(shapes, 0, e, &mut Vec::with_capacity(e), &mut f);
}

fn shape_enumeration() -> Result<(bool, String)> {
    for n in 2..=7 {
        let ours: BTreeSet<_> = enumerate_shapes(n, n)?
            .iter()
            .map(|s| oracle::key_vectors(&s.shape_key()))
            .collect();
        if ours != oracle::brute_force_shape_keys(n) {
            return Ok((false, format!("mismatch at n = {n}")));
        }
    }
    Ok((true, "n = 2..7 match".into()))
}

fn centralizer_vs_commutant() -> Result<(bool, String)> {
    let f = GaloisField::new(7, 1)?;
    let mut count = 0;
    for n in 2..=5 {
        for spec in enumerate_shapes(n, n)? {
            let x = realize_class(&spec, &f)?;
            let tz = oracle::trace_zero_commutant_nullity(&x)? as u64;
            let gl = oracle::commutant_nullity(&x) as u64;
            if tz != spec.centralizer_dimension() || gl - 1 != spec.centralizer_dimension() {
                return Ok((false, format!("{spec}: formula {}, commutant {gl}, trace-zero {tz}", spec.centralizer_dimension())));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} shapes over GF(7)")))
}

fn criterion_vs_min_generators() -> Result<(bool, String)> {
    let mut count = 0;
    for n in 3..=8 {
        for spec in enumerate_shapes(n, n)? {
            let d = spec.min_generators()?;
            for e in 2..=n as usize {
                let t = ClassTuple::new(vec![spec.clone(); e])?;
                if generation_criterion(&t)?.is_generating() != (e as u32 >= d) {
                    return Ok((false, format!("{spec} with e = {e}, min_generators = {d}")));
                }
                count += 1;
            }
        }
    }
    Ok((true, format!("{count} (shape, e) pairs")))
}

fn parabolic_equivalence() -> Result<(bool, String)> {
    let mut count = 0u64;
    let mut bad = None;
    for n in 3..=6 {
        let shapes = enumerate_shapes(n, n)?;
        for e in 2..=4 {
            for_each_tuple(&shapes, e, |t| {
                let eig = generation_criterion(t).map(|v| v.outcome == Outcome::EigenspaceObstruction);
                if eig.ok() != Some(parabolic_obstruction(t)) && bad.is_none() {
                    bad = Some(format!("{:?}", t.classes().iter().map(|c| c.to_string()).collect::<Vec<_>>()));
                }
                count += 1;
            });
        }
    }
    Ok(match bad {
        Some(b) => (false, format!("mismatch on {b}")),
        None => (true, format!("{count} tuples, n <= 6, e <= 4")),
    })
}

fn restriction_soundness() -> Result<(bool, String)> {
    let mut count = 0u64;
    let mut bad = None;
    for n in 4..=6u32 {
        let shapes = enumerate_shapes(n, n)?;
        for e in 2..=4 {
            for_each_tuple(&shapes, e, |t| {
                if !matches!(generation_criterion(t), Ok(v) if v.is_generating()) {
                    return;
                }
                count += 1;
                let ok = restrict_tuple(t)
                    .map(|r| r.gamma_sum() <= u64::from(n - 1) * (e as u64 - 1))
                    .unwrap_or(false);
                if !ok && bad.is_none() {
                    bad = Some(format!("{:?}", t.classes().iter().map(|c| c.to_string()).collect::<Vec<_>>()));
                }
            });
        }
    }
    Ok(match bad {
        Some(b) => (false, format!("restriction fails on {b}")),
        None => (true, format!("{count} generating tuples, n = 4..6")),
    })
}

fn sl3_audit_soundness() -> Result<(bool, String)> {
    let shapes = enumerate_shapes(3, 3)?;
    let mut count = 0;
    let mut bad = None;
    for e in 2..=3 {
        for_each_tuple(&shapes, e, |t| {
            if matches!(generation_criterion(t), Ok(v) if v.is_generating()) {
                count += 1;
                if !matches!(sl3_base_case_audit(t), Ok(a) if a.pass) && bad.is_none() {
                    bad = Some(format!("{:?}", t.classes().iter().map(|c| c.to_string()).collect::<Vec<_>>()));
                }
            }
        });
    }
    Ok(match bad {
        Some(b) => (false, format!("audit fails on {b}")),
        None => (true, format!("{count} generating SL_3 tuples pass")),
    })
}

fn stabilizer_bounds() -> Result<(bool, String)> {
    for n in 3..=40 {
        if !threshold_check(n)? {
            return Ok((false, format!("threshold fails at n = {n}")));
        }
    }
    for n in 3..=8 {
        let t = alpha_exact(n)?;
        let a2 = t.rows[0].alpha_d_exact;
        if !t.exact_within_upper() || a2 != Some(u64::from(n * n - n)) {
            return Ok((false, format!("exact table inconsistent at n = {n}")));
        }
    }
    Ok((true, "threshold n <= 40, exact tables n <= 8".into()))
}

fn group_order() -> Result<(bool, String)> {
    for (n, q) in [(2usize, 2u64), (2, 3), (2, 4), (2, 5), (2, 7), (3, 2)] {
        let f = GaloisField::of_order(q)?;
        let count = group_elements(n, &f, 1_000_000)?.len() as u64;
        if Some(count) != special_linear_order_u64(n as u32, q) {
            return Ok((false, format!("SL_{n}({q}) has {count} elements")));
        }
    }
    Ok((true, "formula matches enumeration for 6 groups".into()))
}

fn element_orders() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0de7);
    for q in [2, 3, 4, 5, 9] {
        let f = GaloisField::of_order(q)?;
        for _ in 0..40 {
            let x = random_invertible(3, &f, &mut rng);
            if oracle::naive_order(&x, 1_000_000) != Some(element_order(&x, u64::MAX)?) {
                return Ok((false, format!("order mismatch over GF({q}):\n{x}")));
            }
        }
    }
    Ok((true, "200 random matrices".into()))
}

fn factorization_round_trip() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfac7);
    let mut count = 0;
    for q in [2, 3, 4, 5, 8, 9, 25] {
        let f = GaloisField::of_order(q)?;
        for _ in 0..50 {
            let deg = rng.gen_range(1..=9);
            let mut coeffs: Vec<u64> = (0..deg).map(|_| f.random(&mut rng)).collect();
            coeffs.push(f.random_nonzero(&mut rng));
            let p = Poly::new(&f, coeffs);
            let fac = factor_poly(&p, rng.gen())?;
            if fac.product(&f) != p || !fac.factors.iter().all(|(g, _)| g.is_irreducible() && g.is_monic()) {
                return Ok((false, format!("bad factorization of {p} over GF({q})")));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} polynomials")))
}

fn char_poly_conjugation() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc4a7);
    for q in [2, 3, 4, 7] {
        let f = GaloisField::of_order(q)?;
        for n in 1..=5 {
            let x = random_invertible(n, &f, &mut rng);
            let y = random_conjugate(&x, &mut rng);
            if x.char_poly()? != y.char_poly()? {
                return Ok((false, format!("char poly changed under conjugation over GF({q})")));
            }
        }
    }
    Ok((true, "20 conjugate pairs".into()))
}

fn meataxe_vs_exhaustive() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3ea7);
    let mut count = 0;
    for (n, q) in [(2usize, 2u64), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)] {
        let f = GaloisField::of_order(q)?;
        for _ in 0..30 {
            let a = random_invertible(n, &f, &mut rng);
            // bias towards reducible pairs by sometimes sharing an eigenvector
            let b = if rng.gen_bool(0.5) { a.pow(2)? } else { random_invertible(n, &f, &mut rng) };
            let gens = [a, b];
            let exhaustive = oracle::exhaustive_invariant_subspace(&gens).is_some();
            match irreducibility_test(&gens, &mut rng)? {
                ModuleStatus::Reducible(_) if exhaustive => {}
                ModuleStatus::Irreducible if !exhaustive => {}
                other => {
                    return Ok((false, format!("GF({q})^{n}: MeatAxe {other:?}, exhaustive reducible = {exhaustive}")));
                }
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} generator pairs")))
}

fn prime_order_shapes_vs_scan() -> Result<(bool, String)> {
    let cases = [(2usize, 3u64, 2u64), (2, 4, 3), (2, 4, 5), (2, 5, 3), (2, 7, 3), (3, 2, 7), (3, 2, 3)];
    for (n, q, r) in cases {
        let f = GaloisField::of_order(q)?;
        let listed: BTreeSet<_> = enumerate_prime_order_shapes(n as u32, q, r)?.into_iter().collect();
        let scanned = oracle::scanned_prime_order_shapes(n, &f, r, 1_000_000)?;
        if !scanned.is_subset(&listed) {
            return Ok((false, format!("SL_{n}({q}), r = {r}: scan found an unlisted shape")));
        }
        // listed shapes with no determinant-1 realization never occur
        for s in &listed {
            if realize_shape(s, &f)?.is_some() != scanned.contains(s) {
                return Ok((false, format!("SL_{n}({q}): realizability of {s} disagrees with the scan")));
            }
        }
    }
    Ok((true, format!("{} groups", cases.len())))
}

fn sl2_3_exact_table() -> Result<(bool, String)> {
    let f = GaloisField::of_order(3)?;
    let four = elements_of_order(2, &f, 4, 1000)?;
    let three = elements_of_order(2, &f, 3, 1000)?;
    let p43 = exact_generation_probability_sets(&four, &three, 1000)?;
    let p44 = exact_generation_probability(&four[0], &four[0], 1000)?;
    let p33 = exact_generation_probability_sets(&three, &three, 1000)?;
    let classes = class_orbit(&four[0], 1000)?.len();
    let pass = p43 == 1.into() && p44 == 0.into() && p33 > 0.into() && p33 < 1.into() && classes == 6;
    Ok((pass, format!("P(4,3) = {p43}, P(4,4) = {p44}, P(3,3) = {p33}")))
}
