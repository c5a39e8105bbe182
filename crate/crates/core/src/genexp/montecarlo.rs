//! Seeded Monte Carlo estimates of the probability that random conjugates of
//! two fixed elements generate `SL_n(q)`.

use std::fmt::Write as _;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::closure::{closure_with_stop, special_linear_order_u64, ClosureOutcome, DEFAULT_CLOSURE_CAP};
use super::shapes::{classify_good_bad, realize_shape, ClassShape};
use crate::classdata::{generation_criterion, ClassTuple};
use crate::error::{Error, Result};
use crate::gflinalg::{element_order, irreducibility_test, random_conjugate, realize_class, FieldMatrix, GaloisField, ModuleStatus};

/// Two-sided 95% normal quantile.
pub const WILSON_Z: f64 = 1.959964;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub n: u32,
    pub p: u64,
    pub k: u32,
    /// Element orders when the classes were chosen by order.
    pub r: Option<u64>,
    pub s: Option<u64>,
    /// Human-readable description of the two classes.
    pub shapes: String,
    pub samples: u64,
    pub master_seed: u64,
    pub closure_cap: u64,
}

impl ExperimentConfig {
    pub fn new(field: &GaloisField, n: u32, shapes: impl Into<String>, samples: u64, master_seed: u64) -> Self {
        ExperimentConfig {
            n,
            p: field.characteristic(),
            k: field.degree(),
            r: None,
            s: None,
            shapes: shapes.into(),
            samples,
            master_seed,
            closure_cap: DEFAULT_CLOSURE_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SampleCounts {
    pub generating: u64,
    pub reducible: u64,
    pub proper_irreducible: u64,
    pub inconclusive: u64,
}

impl SampleCounts {
    pub fn total(&self) -> u64 {
        self.generating + self.reducible + self.proper_irreducible + self.inconclusive
    }

    fn add(self, o: SampleCounts) -> SampleCounts {
        SampleCounts {
            generating: self.generating + o.generating,
            reducible: self.reducible + o.reducible,
            proper_irreducible: self.proper_irreducible + o.proper_irreducible,
            inconclusive: self.inconclusive + o.inconclusive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleClass {
    Generating,
    Reducible,
    ProperIrreducible,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationReport {
    pub config: ExperimentConfig,
    pub counts: SampleCounts,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seed: u64,
    /// Not serialized, so that reports are reproducible byte for byte.
    #[serde(skip)]
    pub wall_time_ms: u128,
}

impl GenerationReport {
    pub const CSV_HEADER: &'static str =
        "n,p,k,r,s,shapes,samples,generating,reducible,proper_irreducible,inconclusive,p_hat,ci_lo,ci_hi,seed";

    pub fn csv_row(&self) -> String {
        let c = &self.config;
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        let mut row = String::new();
        write!(
            row,
            "{},{},{},{},{},\"{}\",{},{},{},{},{},{:.6},{:.6},{:.6},{}",
            c.n,
            c.p,
            c.k,
            opt(c.r),
            opt(c.s),
            c.shapes.replace('"', "\"\""),
            c.samples,
            self.counts.generating,
            self.counts.reducible,
            self.counts.proper_irreducible,
            self.counts.inconclusive,
            self.p_hat,
            self.ci_lo,
            self.ci_hi,
            self.seed
        )
        .expect("writing to a String");
        row
    }

    pub fn to_csv(&self) -> String {
        format!("{}\n{}\n", Self::CSV_HEADER, self.csv_row())
    }

    /// Whether `p` lies in the confidence interval.
    pub fn interval_contains(&self, p: f64) -> bool {
        self.ci_lo - 1e-12 <= p && p <= self.ci_hi + 1e-12
    }
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Random stream for one sample: depends only on the master seed and the
/// sample index.
pub fn sample_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Classifies the group generated by `gens`: reducible if the MeatAxe finds
/// a submodule, generating if closure exceeds half of `|SL_n(q)|`.
pub fn classify_pair(gens: &[FieldMatrix], cap: u64, rng: &mut ChaCha8Rng) -> Result<SampleClass> {
    match irreducibility_test(gens, rng)? {
        ModuleStatus::Reducible(_) => return Ok(SampleClass::Reducible),
        ModuleStatus::Inconclusive => return Ok(SampleClass::Inconclusive),
        ModuleStatus::Irreducible => {}
    }
    let first = &gens[0];
    let Some(order) = special_linear_order_u64(first.rows() as u32, first.field().order()) else {
        return Ok(SampleClass::Inconclusive);
    };
    Ok(match closure_with_stop(gens, cap, Some(order / 2))? {
        ClosureOutcome::Exceeded(_) => SampleClass::Generating,
        ClosureOutcome::Complete(_) => SampleClass::ProperIrreducible,
        ClosureOutcome::CapExceeded => SampleClass::Inconclusive,
    })
}

/// Samples `config.samples` pairs of independent uniform conjugates of `x`
/// and `y` and classifies each. Samples run in parallel; the result does not
/// depend on scheduling.
pub fn estimate_generation_probability(
    x: &FieldMatrix,
    y: &FieldMatrix,
    config: &ExperimentConfig,
) -> Result<GenerationReport> {
    if config.samples == 0 {
        return Err(Error::Config("sample count must be at least 1".into()));
    }
    if x.rows() != config.n as usize || y.rows() != config.n as usize || x.field() != y.field() {
        return Err(Error::Shape("representatives do not match the configuration".into()));
    }
    let start = Instant::now();
    let counts = (0..config.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(config.master_seed, i);
            let a = random_conjugate(x, &mut rng);
            let b = random_conjugate(y, &mut rng);
            let class = classify_pair(&[a, b], config.closure_cap, &mut rng)?;
            let mut c = SampleCounts::default();
            match class {
                SampleClass::Generating => c.generating = 1,
                SampleClass::Reducible => c.reducible = 1,
                SampleClass::ProperIrreducible => c.proper_irreducible = 1,
                SampleClass::Inconclusive => c.inconclusive = 1,
            }
            Ok(c)
        })
        .try_reduce(SampleCounts::default, |a, b| Ok(a.add(b)))?;
    let (ci_lo, ci_hi) = wilson_interval(counts.generating, config.samples, WILSON_Z);
    Ok(GenerationReport {
        config: config.clone(),
        counts,
        p_hat: counts.generating as f64 / config.samples as f64,
        ci_lo,
        ci_hi,
        seed: config.master_seed,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// Monte Carlo estimate for two symbolic classes, realized over `field` with
/// determinant-1 eigenvalue assignments.
pub fn estimate_for_tuple(
    tuple: &ClassTuple,
    field: &GaloisField,
    samples: u64,
    master_seed: u64,
    closure_cap: u64,
) -> Result<GenerationReport> {
    if tuple.len() != 2 {
        return Err(Error::Config(format!("expected two classes, got {}", tuple.len())));
    }
    let x = realize_class(&tuple.classes()[0], field)?;
    let y = realize_class(&tuple.classes()[1], field)?;
    let shapes = format!("{} | {}", tuple.classes()[0], tuple.classes()[1]);
    let mut config = ExperimentConfig::new(field, tuple.n(), shapes, samples, master_seed);
    config.closure_cap = closure_cap;
    estimate_generation_probability(&x, &y, &config)
}

/// The realizable good pair of order-`r` and order-`s` shapes with the
/// largest `dim Ω` (first in classification order on ties), with matrices.
pub fn best_good_pair(
    n: u32,
    field: &GaloisField,
    r: u64,
    s: u64,
) -> Result<(ClassShape, ClassShape, FieldMatrix, FieldMatrix)> {
    let report = classify_good_bad(n, field.order(), r, s)?;
    let mut good: Vec<_> = report.good_pairs().collect();
    good.sort_by(|a, b| b.dim_omega.cmp(&a.dim_omega));
    for pair in good {
        let x = realize_shape(&pair.shape_r, field)?;
        let y = realize_shape(&pair.shape_s, field)?;
        if let (Some(x), Some(y)) = (x, y) {
            return Ok((pair.shape_r.clone(), pair.shape_s.clone(), x, y));
        }
    }
    Err(Error::Realization(format!(
        "no good pair of order-{r} and order-{s} classes is realizable in SL_{n}({})",
        field.order()
    )))
}

/// Monte Carlo estimate for the best realizable good pair of elements of
/// orders `r` and `s`.
pub fn estimate_for_orders(
    n: u32,
    field: &GaloisField,
    r: u64,
    s: u64,
    samples: u64,
    master_seed: u64,
    closure_cap: u64,
) -> Result<GenerationReport> {
    let (cr, cs, x, y) = best_good_pair(n, field, r, s)?;
    let tuple = ClassTuple::new(vec![cr.to_class_spec()?, cs.to_class_spec()?])?;
    debug_assert!(generation_criterion(&tuple)?.is_generating());
    let mut config = ExperimentConfig::new(field, n, format!("{cr} | {cs}"), samples, master_seed);
    config.r = Some(r);
    config.s = Some(s);
    config.closure_cap = closure_cap;
    estimate_generation_probability(&x, &y, &config)
}

/// Companion matrix of the least irreducible monic polynomial of degree `n`
/// whose companion has determinant 1 and order `(q^n − 1)/(q − 1)`: a
/// generator of the cyclic irreducible torus of `SL_n(q)`, hence regular
/// semisimple and outside every subfield subgroup.
pub fn irreducible_regular_element(n: usize, field: &GaloisField) -> Result<FieldMatrix> {
    use crate::gflinalg::Poly;
    let q = field.order();
    let total = q
        .checked_pow(n as u32)
        .ok_or_else(|| Error::Resource("search space too large".into()))?;
    let torus_order = (total - 1) / (q - 1);
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut rest = idx;
        for _ in 0..n {
            coeffs.push(rest % q);
            rest /= q;
        }
        coeffs.push(1);
        let f = Poly::new(field, coeffs);
        if f.coeff(0) == 0 || !f.is_irreducible() {
            continue;
        }
        let c = FieldMatrix::companion(&f)?;
        if c.det()? == 1 && element_order(&c, u64::MAX)? == torus_order {
            return Ok(c);
        }
    }
    Err(Error::Realization(format!("no degree-{n} torus generator over GF({q})")))
}
