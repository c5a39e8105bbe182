//! Bounds on class dimensions in terms of the number of class elements
//! needed to generate, used to bound generic stabilizers.
//!
//! For `d ≥ 2`, `α_d` is the largest dimension of a class needing `d`
//! elements, and `α = max_d d·α_d`. All arithmetic is exact.

use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use crate::classdata::{enumerate_shapes, ENUMERATION_CAP};
use crate::error::{Error, Result};

fn check_n(n: u32) -> Result<()> {
    if n < 3 {
        return Err(Error::Domain(format!("n = {n}, expected n >= 3")));
    }
    Ok(())
}

/// `⌈n(d−2)/(d−1)⌉`, a lower bound on the codimension of the largest
/// eigenspace of a class needing `d ≥ 3` generators.
pub fn beta(n: u32, d: u32) -> Result<u64> {
    check_n(n)?;
    if d < 3 || d > n {
        return Err(Error::Domain(format!("beta needs 3 <= d <= n, got d = {d}, n = {n}")));
    }
    let (n, d) = (u64::from(n), u64::from(d));
    Ok((n * (d - 2)).div_ceil(d - 1))
}

/// Upper bound on `α_d`: `n² − n` for `d = 2`, otherwise `n² − β² − (n − β)`.
pub fn alpha_d_upper(n: u32, d: u32) -> Result<u64> {
    check_n(n)?;
    if d < 2 || d > n {
        return Err(Error::Domain(format!("alpha_d needs 2 <= d <= n, got d = {d}, n = {n}")));
    }
    let nn = u64::from(n);
    if d == 2 {
        return Ok(nn * nn - nn);
    }
    let b = beta(n, d)?;
    Ok(nn * nn - b * b - (nn - b))
}

/// `max_{2 ≤ d ≤ n} d · alpha_d_upper(n, d)`.
pub fn alpha_upper(n: u32) -> Result<u64> {
    check_n(n)?;
    (2..=n)
        .map(|d| Ok(u64::from(d) * alpha_d_upper(n, d)?))
        .try_fold(0, |acc, v: Result<u64>| Ok(acc.max(v?)))
}

/// `9n²/4`.
pub fn threshold(n: u32) -> Ratio<u64> {
    let n = u64::from(n);
    Ratio::new(9 * n * n, 4)
}

/// Whether `alpha_upper(n) ≤ ⌊9n²/4⌋`.
pub fn threshold_check(n: u32) -> Result<bool> {
    Ok(alpha_upper(n)? <= threshold(n).floor().to_integer())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaRow {
    pub d: u32,
    pub alpha_d_upper: u64,
    /// Largest dimension of a class shape needing exactly `d` generators;
    /// `None` when not computed, or when no shape needs `d`.
    pub alpha_d_exact: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaTable {
    pub n: u32,
    pub rows: Vec<AlphaRow>,
    pub alpha_upper: u64,
    pub alpha_exact: Option<u64>,
    #[serde(serialize_with = "serialize_ratio")]
    pub threshold: Ratio<u64>,
}

fn serialize_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl AlphaTable {
    /// Upper bounds only.
    pub fn upper(n: u32) -> Result<Self> {
        let rows = (2..=n)
            .map(|d| {
                Ok(AlphaRow {
                    d,
                    alpha_d_upper: alpha_d_upper(n, d)?,
                    alpha_d_exact: None,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AlphaTable {
            n,
            rows,
            alpha_upper: alpha_upper(n)?,
            alpha_exact: None,
            threshold: threshold(n),
        })
    }

    /// Whether every exact entry is at most its upper bound.
    pub fn exact_within_upper(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.alpha_d_exact.is_none_or(|e| e <= r.alpha_d_upper))
            && self.alpha_exact.is_none_or(|e| e <= self.alpha_upper)
    }

    /// Columns `n,d,alpha_d_upper,alpha_d_exact,d_times_alpha_d,alpha_upper,threshold`;
    /// `d_times_alpha_d` uses the upper bound, missing exact values are empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,d,alpha_d_upper,alpha_d_exact,d_times_alpha_d,alpha_upper,threshold\n");
        for r in &self.rows {
            let exact = r.alpha_d_exact.map(|v| v.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                self.n,
                r.d,
                r.alpha_d_upper,
                exact,
                u64::from(r.d) * r.alpha_d_upper,
                self.alpha_upper,
                self.threshold
            )
            .expect("writing to a String");
        }
        out
    }
}

/// Exact `α_d` over all noncentral class shapes of `SL_n`.
///
/// Every shape counts, not only classes of prime-order elements, so the
/// result bounds the prime-order version from above.
pub fn alpha_exact(n: u32) -> Result<AlphaTable> {
    check_n(n)?;
    if n > ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "exact alpha is capped at n = {ENUMERATION_CAP}, got {n}"
        )));
    }
    let mut table = AlphaTable::upper(n)?;
    for shape in enumerate_shapes(n, n)? {
        let d = shape.min_generators()?;
        let dim = shape.class_dimension();
        let row = table
            .rows
            .iter_mut()
            .find(|r| r.d == d)
            .ok_or_else(|| Error::Domain(format!("shape {shape} needs {d} > n generators")))?;
        row.alpha_d_exact = Some(row.alpha_d_exact.map_or(dim, |e| e.max(dim)));
    }
    table.alpha_exact = table
        .rows
        .iter()
        .filter_map(|r| r.alpha_d_exact.map(|e| u64::from(r.d) * e))
        .max();
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VcBound {
    #[serde(serialize_with = "serialize_ratio")]
    pub bound: Ratio<u64>,
    /// `dim V > d · dim C`, which forces `dim V(C) < dim V`.
    pub strictly_smaller: bool,
}

/// `d/(d−1) · dim V + dim C` together with the strictness condition
/// `dim V > d · dim C`.
pub fn vc_dimension_bound(dim_v: u64, dim_c: u64, d: u64) -> Result<VcBound> {
    if d < 2 {
        return Err(Error::Domain(format!("d = {d}, expected d >= 2")));
    }
    if dim_v < 1 {
        return Err(Error::Domain("dim V must be positive".into()));
    }
    let bound = Ratio::new(d * dim_v, d - 1) + Ratio::from_integer(dim_c);
    Ok(VcBound {
        bound,
        strictly_smaller: dim_v > d * dim_c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn beta_examples() {
        assert_eq!(beta(6, 3).unwrap(), 3);
        assert_eq!(beta(5, 4).unwrap(), 4);
        assert_eq!(beta(7, 7).unwrap(), 6);
        assert!(matches!(beta(6, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn alpha_d_examples() {
        assert_eq!(alpha_d_upper(3, 2).unwrap(), 6);
        assert_eq!(alpha_d_upper(6, 3).unwrap(), 24);
        // beta = 3: 16 - 9 - 1
        assert_eq!(alpha_d_upper(4, 4).unwrap(), 6);
        assert_eq!(alpha_d_upper(3, 3).unwrap(), 4);
    }

    #[test]
    fn alpha_upper_examples() {
        assert_eq!(alpha_upper(3).unwrap(), 12);
        assert!(alpha_upper(4).unwrap() <= 36);
        assert!(alpha_upper(6).unwrap() <= 81);
        assert_eq!(threshold(6).to_string(), "81");
        assert_eq!(threshold(5).to_string(), "225/4");
    }

    #[test]
    fn exact_small_cases() {
        let t = alpha_exact(3).unwrap();
        assert_eq!(t.rows[0].alpha_d_exact, Some(6));
        assert_eq!(t.rows[1].alpha_d_exact, Some(4));
        assert!(t.exact_within_upper());
        let t = alpha_exact(4).unwrap();
        assert!(t.rows.iter().all(|r| r.d <= 4));
        assert!(matches!(alpha_exact(13), Err(Error::Resource(_))));
    }

    #[test]
    fn csv_layout() {
        let csv = AlphaTable::upper(3).unwrap().to_csv();
        assert_eq!(
            csv,
            "n,d,alpha_d_upper,alpha_d_exact,d_times_alpha_d,alpha_upper,threshold\n\
             3,2,6,,12,12,81/4\n\
             3,3,4,,12,12,81/4\n"
        );
    }

    #[test]
    fn vc_examples() {
        assert!(vc_dimension_bound(100, 6, 2).unwrap().strictly_smaller);
        assert!(!vc_dimension_bound(12, 6, 2).unwrap().strictly_smaller);
        assert!(vc_dimension_bound(21, 6, 3).unwrap().strictly_smaller);
        assert_eq!(vc_dimension_bound(21, 6, 3).unwrap().bound, Ratio::new(75, 2));
        assert!(vc_dimension_bound(10, 1, 1).is_err());
    }

    proptest! {
        #[test]
        fn beta_is_monotone_in_d(n in 3u32..60, d in 3u32..60) {
            prop_assume!(d < n);
            prop_assert!(beta(n, d).unwrap() <= beta(n, d + 1).unwrap());
        }

        #[test]
        fn d_alpha_d_within_threshold(n in 3u32..=40, d in 3u32..=40) {
            prop_assume!(d <= n);
            let lhs = Ratio::from_integer(u64::from(d) * alpha_d_upper(n, d).unwrap());
            prop_assert!(lhs <= threshold(n));
        }
    }
}
