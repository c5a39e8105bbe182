//! Dimension and fixed-point arithmetic behind the obstructions to
//! generation: the maximal positive-dimensional subgroups of `SL_n` in the
//! reducible, imprimitive, tensor and classical families, fixed points on
//! projective space, and the `SL_3` base-case dimension audit.

use serde::Serialize;

use crate::classdata::{dim_omega, generation_criterion, ClassSpec, ClassTuple};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SubgroupFamily {
    /// Maximal parabolics, stabilizing an `m`-space.
    C1,
    /// Stabilizers of a decomposition into `t` subspaces of dimension `m`.
    C2,
    /// Stabilizers of a tensor decomposition `V = V_1 ⊗ V_2`.
    C4a,
    /// Stabilizers of a tensor power decomposition `V = ⊗^t V_1`.
    C4b,
    C6Symplectic,
    C6Orthogonal,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SubgroupParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n1: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n2: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalSubgroupEntry {
    pub family: SubgroupFamily,
    pub structure: String,
    pub params: SubgroupParams,
    pub condition: &'static str,
    pub rank: u32,
}

/// Characteristic `0` stands for characteristic zero.
///
/// For `n = 2` the classical rows are omitted: `Sp_2 = SL_2` is not proper
/// and `SO_2` is a torus lying in the `C2` normalizer `GL_1 wr S_2`.
pub fn maximal_subgroup_table(n: u32, characteristic: u64) -> Result<Vec<MaximalSubgroupEntry>> {
    if n < 2 {
        return Err(Error::Validation(format!("n = {n}, expected n >= 2")));
    }
    let mut rows = Vec::new();
    for m in 1..n {
        rows.push(MaximalSubgroupEntry {
            family: SubgroupFamily::C1,
            structure: format!("P_{m}"),
            params: SubgroupParams {
                m: Some(m),
                ..Default::default()
            },
            condition: "1 <= m <= n-1",
            rank: n - 2,
        });
    }
    for t in 2..=n {
        if n.is_multiple_of(t) {
            let m = n / t;
            rows.push(MaximalSubgroupEntry {
                family: SubgroupFamily::C2,
                structure: format!("GL_{m} wr S_{t}"),
                params: SubgroupParams {
                    m: Some(m),
                    t: Some(t),
                    ..Default::default()
                },
                condition: "n = mt, t >= 2",
                rank: t * (m - 1),
            });
        }
    }
    for n1 in 2..n {
        if n.is_multiple_of(n1) && n1 < n / n1 {
            let n2 = n / n1;
            rows.push(MaximalSubgroupEntry {
                family: SubgroupFamily::C4a,
                structure: format!("GL_{n1} (x) GL_{n2}"),
                params: SubgroupParams {
                    n1: Some(n1),
                    n2: Some(n2),
                    ..Default::default()
                },
                condition: "n = n1*n2, 2 <= n1 < n2",
                rank: n1 + n2 - 2,
            });
        }
    }
    for m in 3..n {
        let mut power = m * m;
        let mut t = 2;
        while power <= n {
            if power == n {
                rows.push(MaximalSubgroupEntry {
                    family: SubgroupFamily::C4b,
                    structure: format!("(GL_{m})^(x){t}.S_{t}"),
                    params: SubgroupParams {
                        m: Some(m),
                        t: Some(t),
                        ..Default::default()
                    },
                    condition: "n = m^t, m >= 3, t >= 2",
                    rank: t * (m - 1),
                });
            }
            power *= m;
            t += 1;
        }
    }
    if n > 2 {
        if n.is_multiple_of(2) {
            rows.push(MaximalSubgroupEntry {
                family: SubgroupFamily::C6Symplectic,
                structure: format!("Sp_{n}"),
                params: SubgroupParams::default(),
                condition: "n even",
                rank: n / 2,
            });
        }
        if characteristic != 2 {
            rows.push(MaximalSubgroupEntry {
                family: SubgroupFamily::C6Orthogonal,
                structure: format!("SO_{n}"),
                params: SubgroupParams::default(),
                condition: "p != 2",
                rank: n / 2,
            });
        }
    }
    Ok(rows)
}

/// Dimension of the fixed-point space of a class element on the projective
/// space of lines, `γ − 1`.
pub fn fixed_point_dim_projective(spec: &ClassSpec) -> u32 {
    spec.gamma() - 1
}

/// Whether every tuple fixes a line: `Σ(γ_j − 1) ≥ (e − 1)(n − 1)`.
///
/// Fixed-point dimensions on `P^{n−1}` add up to at least the
/// `(e−1)·dim P^{n−1}` needed for a common fixed point.
pub fn parabolic_obstruction(tuple: &ClassTuple) -> bool {
    let lhs: u64 = tuple
        .classes()
        .iter()
        .map(|c| u64::from(fixed_point_dim_projective(c)))
        .sum();
    let rhs = (tuple.len() as u64 - 1) * (u64::from(tuple.n()) - 1);
    lhs >= rhs
}

/// Upper bound `dim Δ + dim G/M` on the dimension of the set of tuples
/// whose generated group lies in a conjugate of `M`.
pub fn ym_dimension_bound(dim_delta: u64, dim_coset: u64) -> u64 {
    dim_delta + dim_coset
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRecord {
    pub subgroup: &'static str,
    pub dim_coset: u64,
    pub cap_sum: u64,
    pub dim_omega: u64,
    pub strict_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sl3Audit {
    pub records: Vec<AuditRecord>,
    pub pass: bool,
}

/// Checks `dim Ω > Σ dim(C_j ∩ M) + dim G/M` for the maximal subgroups of
/// `SL_3` not handled by the fixed-line argument.
///
/// The intersection dimensions are the known caps, not computed: for `SO_3`
/// at most 2 per class (`dim G/M = 5`); for the torus normalizer at most 2,
/// or 1 for a quadratic class (`dim G/M = 6`); for subfield subgroups 0
/// (`dim G/M = 8`).
pub fn sl3_base_case_audit(tuple: &ClassTuple) -> Result<Sl3Audit> {
    const SOURCE: &str = "the SL_3 base case";
    if tuple.n() != 3 {
        return Err(Error::precondition(SOURCE, format!("n = {}, expected 3", tuple.n())));
    }
    let verdict = generation_criterion(tuple)?;
    if !verdict.is_generating() {
        return Err(Error::precondition(SOURCE, format!("tuple fails the criterion: {verdict}")));
    }
    let omega = dim_omega(tuple);
    let e = tuple.len() as u64;
    let torus_caps: u64 = tuple
        .classes()
        .iter()
        .map(|c| if c.is_quadratic() { 1 } else { 2 })
        .sum();
    let cases = [("SO_3", 5, 2 * e), ("N(T)", 6, torus_caps), ("subfield", 8, 0)];
    let records: Vec<AuditRecord> = cases
        .into_iter()
        .map(|(subgroup, dim_coset, cap_sum)| AuditRecord {
            subgroup,
            dim_coset,
            cap_sum,
            dim_omega: omega,
            strict_pass: omega > ym_dimension_bound(cap_sum, dim_coset),
        })
        .collect();
    let pass = records.iter().all(|r| r.strict_pass);
    Ok(Sl3Audit { records, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classdata::{enumerate_shapes, Outcome};

    fn spec(n: u32, shape: &[&[u32]]) -> ClassSpec {
        ClassSpec::from_shape(n, shape).unwrap()
    }

    fn has(rows: &[MaximalSubgroupEntry], structure: &str, rank: u32) -> bool {
        rows.iter().any(|r| r.structure == structure && r.rank == rank)
    }

    #[test]
    fn table_at_six() {
        let rows = maximal_subgroup_table(6, 0).unwrap();
        assert!(has(&rows, "Sp_6", 3));
        assert!(has(&rows, "GL_3 wr S_2", 4));
        assert!(has(&rows, "GL_2 (x) GL_3", 3));
        assert!(has(&rows, "SO_6", 3));
        assert_eq!(rows.iter().filter(|r| r.family == SubgroupFamily::C1).count(), 5);
    }

    #[test]
    fn table_at_three_and_characteristic_two() {
        let rows = maximal_subgroup_table(3, 0).unwrap();
        assert!(has(&rows, "SO_3", 1));
        assert!(has(&rows, "GL_1 wr S_3", 0));
        let rows = maximal_subgroup_table(3, 2).unwrap();
        assert!(!rows.iter().any(|r| r.family == SubgroupFamily::C6Orthogonal));
    }

    #[test]
    fn tensor_power_rows() {
        let rows = maximal_subgroup_table(9, 0).unwrap();
        assert!(has(&rows, "(GL_3)^(x)2.S_2", 4));
        assert!(!rows.iter().any(|r| r.family == SubgroupFamily::C4a));
        let rows = maximal_subgroup_table(27, 0).unwrap();
        assert!(has(&rows, "(GL_3)^(x)3.S_3", 6));
        assert!(has(&rows, "GL_3 (x) GL_9", 10));
    }

    #[test]
    fn table_is_well_formed() {
        for n in 2..=40 {
            for r in maximal_subgroup_table(n, 0).unwrap() {
                let p = r.params;
                match r.family {
                    SubgroupFamily::C1 => assert_eq!(r.rank, n - 2),
                    SubgroupFamily::C2 => {
                        let (m, t) = (p.m.unwrap(), p.t.unwrap());
                        assert!(m * t == n && t >= 2);
                        assert_eq!(r.rank, t * (m - 1));
                    }
                    SubgroupFamily::C4a => {
                        let (a, b) = (p.n1.unwrap(), p.n2.unwrap());
                        assert!(a * b == n && 2 <= a && a < b);
                        assert_eq!(r.rank, a + b - 2);
                    }
                    SubgroupFamily::C4b => {
                        let (m, t) = (p.m.unwrap(), p.t.unwrap());
                        assert!(m.pow(t) == n && m >= 3 && t >= 2);
                        assert_eq!(r.rank, t * (m - 1));
                    }
                    SubgroupFamily::C6Symplectic => {
                        assert!(n % 2 == 0);
                        assert_eq!(r.rank, n / 2)
                    }
                    SubgroupFamily::C6Orthogonal => assert_eq!(r.rank, n / 2),
                }
            }
        }
    }

    #[test]
    fn fixed_points() {
        assert_eq!(fixed_point_dim_projective(&spec(4, &[&[2, 1, 1]])), 2);
        assert_eq!(fixed_point_dim_projective(&spec(3, &[&[1], &[1], &[1]])), 0);
        assert_eq!(fixed_point_dim_projective(&spec(5, &[&[2, 2], &[1]])), 1);
    }

    #[test]
    fn parabolic_examples() {
        let tv = spec(3, &[&[2, 1]]);
        assert!(parabolic_obstruction(&ClassTuple::new(vec![tv.clone(), tv]).unwrap()));
        let reg = spec(3, &[&[1], &[1], &[1]]);
        assert!(!parabolic_obstruction(&ClassTuple::new(vec![reg.clone(), reg]).unwrap()));
        let tv4 = spec(4, &[&[2, 1, 1]]);
        assert!(parabolic_obstruction(
            &ClassTuple::new(vec![tv4.clone(), tv4.clone(), tv4]).unwrap()
        ));
    }

    #[test]
    fn parabolic_matches_criterion_small() {
        for n in 3..=5 {
            let shapes = enumerate_shapes(n, n).unwrap();
            for a in &shapes {
                for b in &shapes {
                    let t = ClassTuple::new(vec![a.clone(), b.clone()]).unwrap();
                    let obstructed =
                        generation_criterion(&t).unwrap().outcome == Outcome::EigenspaceObstruction;
                    assert_eq!(parabolic_obstruction(&t), obstructed);
                }
            }
        }
    }

    #[test]
    fn ym_bound() {
        assert_eq!(ym_dimension_bound(4, 5), 9);
        assert_eq!(ym_dimension_bound(0, 8), 8);
        assert_eq!(ym_dimension_bound(0, 0), 0);
    }

    #[test]
    fn audit_examples() {
        let reg = spec(3, &[&[1], &[1], &[1]]);
        let quad = spec(3, &[&[1, 1], &[1]]);
        let a = sl3_base_case_audit(&ClassTuple::new(vec![reg.clone(), reg.clone()]).unwrap()).unwrap();
        assert!(a.pass);
        assert_eq!(
            a.records.iter().map(|r| r.cap_sum + r.dim_coset).collect::<Vec<_>>(),
            vec![9, 10, 8]
        );
        let a = sl3_base_case_audit(&ClassTuple::new(vec![quad.clone(), reg]).unwrap()).unwrap();
        assert!(a.pass);
        assert_eq!(a.records[1].cap_sum + a.records[1].dim_coset, 9);
        let three = ClassTuple::new(vec![quad.clone(), quad.clone(), quad.clone()]).unwrap();
        let a = sl3_base_case_audit(&three).unwrap();
        assert!(a.pass);
        assert_eq!(a.records[0].cap_sum + a.records[0].dim_coset, 11);

        let pair = ClassTuple::new(vec![quad.clone(), quad]).unwrap();
        assert!(matches!(sl3_base_case_audit(&pair), Err(Error::Precondition { .. })));
    }

    #[test]
    fn audit_passes_for_every_generating_sl3_tuple() {
        let shapes = enumerate_shapes(3, 3).unwrap();
        let mut tuples: Vec<Vec<ClassSpec>> = shapes.iter().map(|s| vec![s.clone()]).collect();
        for _ in 1..4 {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    shapes.iter().map(move |s| {
                        let mut u = t.clone();
                        u.push(s.clone());
                        u
                    })
                })
                .collect();
            for t in &tuples {
                let t = ClassTuple::new(t.clone()).unwrap();
                if generation_criterion(&t).unwrap().is_generating() {
                    assert!(sl3_base_case_audit(&t).unwrap().pass, "{t:?}");
                }
            }
        }
    }
}
