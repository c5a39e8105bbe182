//! Conjugacy classes of `SL_n` over an algebraically closed field.
//!
//! A noncentral class is described by its Jordan type: for each distinct
//! eigenvalue, the partition formed by the sizes of its Jordan blocks.
//! Eigenvalues are opaque labels; every quantity computed here depends only on
//! the multiset of partitions, never on the eigenvalues themselves. Classes are
//! understood up to scalar rescaling, so no determinant condition is imposed
//! (matrix realizations in [`crate::gflinalg`] enforce determinant one).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_shapes`].
pub const ENUMERATION_CAP: u32 = 12;

/// A partition stored in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Validation("empty partition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Validation("block sizes must be at least 1".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of blocks (the length of the partition).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> u32 {
        self.0[0]
    }

    pub fn smallest(&self) -> u32 {
        *self.0.last().expect("partition is non-empty")
    }

    /// The conjugate partition (transpose of the Young diagram).
    pub fn transpose(&self) -> Partition {
        let cols = self.largest();
        let parts = (1..=cols)
            .map(|c| self.0.iter().filter(|&&b| b >= c).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Dimension of the centralizer in `GL` of a single-eigenvalue Jordan
    /// matrix of this type: the sum of squares of the conjugate partition.
    pub fn transpose_square_sum(&self) -> u64 {
        self.transpose().0.iter().map(|&m| u64::from(m) * u64::from(m)).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// One eigenvalue label together with its Jordan blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EigenBlock {
    label: String,
    blocks: Partition,
}

impl EigenBlock {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn blocks(&self) -> &Partition {
        &self.blocks
    }
}

/// Jordan-type data of a class: distinct labels, each with a partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EigenBlockProfile {
    entries: Vec<EigenBlock>,
}

impl EigenBlockProfile {
    pub fn new<L: Into<String>>(entries: Vec<(L, Vec<u32>)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Validation("profile has no eigenvalues".into()));
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(entries.len());
        for (label, blocks) in entries {
            let label = label.into();
            if label.is_empty() {
                return Err(Error::Validation("empty eigenvalue label".into()));
            }
            if !seen.insert(label.clone()) {
                return Err(Error::Validation(format!("duplicate eigenvalue label `{label}`")));
            }
            let blocks = Partition::new(blocks)
                .map_err(|e| Error::Validation(format!("label `{label}`: {e}")))?;
            out.push(EigenBlock { label, blocks });
        }
        Ok(EigenBlockProfile { entries: out })
    }

    pub fn entries(&self) -> &[EigenBlock] {
        &self.entries
    }

    pub fn size(&self) -> u32 {
        self.entries.iter().map(|e| e.blocks.size()).sum()
    }

    /// Multiset of partitions, sorted non-increasing. Two profiles describe
    /// the same class up to relabelling iff their keys agree.
    pub fn shape_key(&self) -> Vec<Partition> {
        let mut key: Vec<Partition> = self.entries.iter().map(|e| e.blocks.clone()).collect();
        key.sort_unstable_by(|a, b| b.cmp(a));
        key
    }

    /// Index of the canonically first entry with the most blocks.
    ///
    /// Canonical order sorts entries by partition (non-increasing), then by
    /// label.
    fn canonical_max_entry(&self) -> usize {
        let gamma = self.entries.iter().map(|e| e.blocks.len()).max().unwrap_or(0);
        (0..self.entries.len())
            .filter(|&i| self.entries[i].blocks.len() == gamma)
            .min_by(|&i, &j| {
                let (a, b) = (&self.entries[i], &self.entries[j]);
                b.blocks.cmp(&a.blocks).then_with(|| a.label.cmp(&b.label))
            })
            .expect("profile is non-empty")
    }
}

/// Order of a class of `SL_2` modulo the center; only meaningful for `n = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderModCenter {
    Involution,
    Other,
}

/// A noncentral conjugacy class of `SL_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassSpec {
    n: u32,
    // shared so that building many tuples from a fixed shape list is cheap
    profile: Arc<EigenBlockProfile>,
    order_mod_center: Option<OrderModCenter>,
    concrete_values: Option<Arc<BTreeMap<String, String>>>,
}

impl ClassSpec {
    /// Builds and validates a class from `(label, blocks)` pairs.
    pub fn new<L: Into<String>>(n: u32, entries: Vec<(L, Vec<u32>)>) -> Result<Self> {
        Self::from_profile(n, EigenBlockProfile::new(entries)?)
    }

    pub fn from_profile(n: u32, profile: EigenBlockProfile) -> Result<Self> {
        if n < 2 {
            return Err(Error::Validation(format!("n = {n}, expected n >= 2")));
        }
        if profile.size() != n {
            return Err(Error::Validation(format!(
                "block sizes sum to {}, expected n = {n}",
                profile.size()
            )));
        }
        let spec = ClassSpec {
            n,
            profile: Arc::new(profile),
            order_mod_center: None,
            concrete_values: None,
        };
        if spec.is_central() {
            return Err(Error::Validation("class is central (a scalar matrix)".into()));
        }
        Ok(spec)
    }

    /// Builds a class from bare partitions, labelling them `a`, `b`, ... in
    /// the order given.
    pub fn from_shape(n: u32, shape: &[&[u32]]) -> Result<Self> {
        let entries = shape
            .iter()
            .enumerate()
            .map(|(i, blocks)| (default_label(i), blocks.to_vec()))
            .collect();
        Self::new(n, entries)
    }

    pub fn with_order_mod_center(mut self, order: OrderModCenter) -> Self {
        self.order_mod_center = Some(order);
        self
    }

    /// Attaches finite-field values to the labels. Every label must receive a
    /// value; values are parsed later against a concrete field.
    pub fn with_values<K: Into<String>, V: Into<String>>(
        mut self,
        values: impl IntoIterator<Item = (K, V)>,
    ) -> Result<Self> {
        let map: BTreeMap<String, String> =
            values.into_iter().map(|(k, v)| (k.into(), v.into())).collect();
        for entry in &self.profile.entries {
            if !map.contains_key(&entry.label) {
                return Err(Error::Validation(format!("no value for label `{}`", entry.label)));
            }
        }
        if let Some(extra) = map.keys().find(|k| !self.profile.entries.iter().any(|e| &e.label == *k)) {
            return Err(Error::Validation(format!("value for unknown label `{extra}`")));
        }
        self.concrete_values = Some(Arc::new(map));
        Ok(self)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn profile(&self) -> &EigenBlockProfile {
        &self.profile
    }

    pub fn order_mod_center(&self) -> Option<OrderModCenter> {
        self.order_mod_center
    }

    pub fn concrete_values(&self) -> Option<&BTreeMap<String, String>> {
        self.concrete_values.as_deref()
    }

    pub fn shape_key(&self) -> Vec<Partition> {
        self.profile.shape_key()
    }

    /// True when both classes have the same Jordan type up to relabelling.
    pub fn same_shape(&self, other: &ClassSpec) -> bool {
        self.n == other.n && self.shape_key() == other.shape_key()
    }

    fn is_central(&self) -> bool {
        self.profile.entries.len() == 1 && self.profile.entries[0].blocks.largest() == 1
    }

    /// Dimension of the largest eigenspace: the most Jordan blocks carried by
    /// a single eigenvalue.
    pub fn gamma(&self) -> u32 {
        self.profile.entries.iter().map(|e| e.blocks.len() as u32).max().unwrap_or(0)
    }

    /// Degree of the minimal polynomial: for each eigenvalue, its largest
    /// block size.
    pub fn minimal_polynomial_degree(&self) -> u32 {
        self.profile.entries.iter().map(|e| e.blocks.largest()).sum()
    }

    pub fn is_quadratic(&self) -> bool {
        self.minimal_polynomial_degree() == 2
    }

    /// Dimension of the centralizer in `SL_n`.
    ///
    /// The centralizer in `GL_n` is block diagonal over distinct eigenvalues,
    /// and for one eigenvalue with block partition `λ` it has dimension
    /// `Σ μ_j²` where `μ` is the conjugate of `λ`.
    pub fn centralizer_dimension(&self) -> u64 {
        let gl: u64 = self.profile.entries.iter().map(|e| e.blocks.transpose_square_sum()).sum();
        gl - 1
    }

    pub fn class_dimension(&self) -> u64 {
        let n = u64::from(self.n);
        (n * n - 1) - self.centralizer_dimension()
    }

    /// Fewest copies of this class whose tuple can topologically generate.
    ///
    /// With `e` copies the eigenspace condition reads `e·γ ≤ n(e−1)`, i.e.
    /// `e ≥ n/(n−γ)`; two copies of a quadratic class never suffice.
    pub fn min_generators(&self) -> Result<u32> {
        if self.n < 3 {
            return Err(Error::Unsupported(
                "minimum generator count is only defined for n >= 3".into(),
            ));
        }
        let (n, gamma) = (self.n, self.gamma());
        let d0 = n.div_ceil(n - gamma).max(2);
        Ok(if d0 == 2 && self.is_quadratic() { 3 } else { d0 })
    }

    /// Restricts to `SL_{n−1}`: on the canonically first eigenvalue with the
    /// largest eigenspace, a smallest Jordan block is shrunk by one (or
    /// removed if it has size one). Values and annotations are dropped since
    /// the determinant changes.
    pub fn restrict(&self) -> Result<ClassSpec> {
        let idx = self.profile.canonical_max_entry();
        let mut entries: Vec<(String, Vec<u32>)> = self
            .profile
            .entries
            .iter()
            .map(|e| (e.label.clone(), e.blocks.parts().to_vec()))
            .collect();
        let blocks = &mut entries[idx].1;
        // Partitions are non-increasing, so the last block is a smallest one.
        let last = blocks.len() - 1;
        if blocks[last] == 1 {
            blocks.pop();
        } else {
            blocks[last] -= 1;
        }
        if blocks.is_empty() {
            entries.remove(idx);
        }
        let n = self.n - 1;
        if n < 2 {
            return Err(Error::Unsupported(format!("cannot restrict a class of SL_{}", self.n)));
        }
        let profile = EigenBlockProfile::new(entries)?;
        let candidate = ClassSpec {
            n,
            profile: Arc::new(profile),
            order_mod_center: None,
            concrete_values: None,
        };
        if candidate.is_central() {
            return Err(Error::Validation(format!(
                "restriction of {self} to SL_{n} is central"
            )));
        }
        Ok(candidate)
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.profile.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}:{}", e.label, e.blocks)?;
        }
        Ok(())
    }
}

/// Formats a shape key as `{[2],[1]}`.
pub fn format_shape(key: &[Partition]) -> String {
    let parts: Vec<String> = key.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

pub(crate) fn default_label(i: usize) -> String {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    if i < LETTERS.len() {
        (LETTERS[i] as char).to_string()
    } else {
        format!("l{i}")
    }
}

/// An ordered tuple of classes of the same `SL_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassTuple {
    classes: Vec<ClassSpec>,
}

impl ClassTuple {
    pub fn new(classes: Vec<ClassSpec>) -> Result<Self> {
        let Some(first) = classes.first() else {
            return Err(Error::Validation("class tuple is empty".into()));
        };
        let n = first.n;
        if let Some(bad) = classes.iter().position(|c| c.n != n) {
            return Err(Error::Validation(format!(
                "class {bad} has n = {}, expected {n}",
                classes[bad].n
            )));
        }
        Ok(ClassTuple { classes })
    }

    pub fn n(&self) -> u32 {
        self.classes[0].n
    }

    /// Number of classes `e`.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ClassSpec] {
        &self.classes
    }

    pub fn gamma_sum(&self) -> u64 {
        self.classes.iter().map(|c| u64::from(c.gamma())).sum()
    }

    /// `n(e − 1)`, the right-hand side of the eigenspace condition.
    pub fn eigenspace_budget(&self) -> u64 {
        u64::from(self.n()) * (self.len() as u64 - 1)
    }
}

/// Outcome of the generation criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Generating,
    /// `Σγ_i > n(e−1)`: every tuple has a common eigenvector.
    EigenspaceObstruction,
    /// Two classes, both with quadratic minimal polynomial.
    QuadraticPairObstruction,
    /// `n = 2` and both classes are involutions modulo the center.
    SL2InvolutionObstruction,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::Generating => "Generating",
            Outcome::EigenspaceObstruction => "EigenspaceObstruction",
            Outcome::QuadraticPairObstruction => "QuadraticPairObstruction",
            Outcome::SL2InvolutionObstruction => "SL2InvolutionObstruction",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    /// For [`Outcome::EigenspaceObstruction`], `Σγ_i − n(e−1) ≥ 1`: the
    /// dimension of the forced common eigenspace.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<u64>,
}

impl Verdict {
    fn plain(outcome: Outcome) -> Self {
        Verdict { outcome, witness: None }
    }

    pub fn is_generating(&self) -> bool {
        self.outcome == Outcome::Generating
    }

    /// Which hypothesis of the criterion failed, for diagnostics.
    pub fn reason(&self) -> &'static str {
        match self.outcome {
            Outcome::Generating => "both conditions hold",
            Outcome::EigenspaceObstruction => "condition (i): eigenspace dimensions",
            Outcome::QuadraticPairObstruction => "condition (ii): two quadratic classes",
            Outcome::SL2InvolutionObstruction => "SL_2: two involutions modulo the center",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.outcome {
            Outcome::Generating => write!(f, "Generating"),
            Outcome::EigenspaceObstruction => write!(
                f,
                "EigenspaceObstruction (condition (i)), witness {}",
                self.witness.unwrap_or(0)
            ),
            Outcome::QuadraticPairObstruction => write!(f, "QuadraticPairObstruction (condition (ii))"),
            Outcome::SL2InvolutionObstruction => {
                write!(f, "SL2InvolutionObstruction (involutions modulo the center)")
            }
        }
    }
}

/// Sum of class dimensions, `dim Ω`.
pub fn dim_omega(tuple: &ClassTuple) -> u64 {
    tuple.classes.iter().map(ClassSpec::class_dimension).sum()
}

/// Decides whether some tuple in `C_1 × … × C_e` topologically generates
/// `SL_n`.
///
/// For `n ≥ 3` this holds iff `Σγ_i ≤ n(e−1)` and the tuple is not a pair of
/// quadratic classes. For `n = 2` only pairs are supported; a pair fails iff
/// both classes are involutions modulo the center, which must be annotated.
pub fn generation_criterion(tuple: &ClassTuple) -> Result<Verdict> {
    let n = tuple.n();
    let e = tuple.len();
    if n == 2 {
        if e != 2 {
            return Err(Error::Unsupported(format!(
                "SL_2 criterion is only known for pairs of classes, got {e}"
            )));
        }
        let mut involutions = 0;
        for (i, c) in tuple.classes.iter().enumerate() {
            match c.order_mod_center {
                Some(OrderModCenter::Involution) => involutions += 1,
                Some(OrderModCenter::Other) => {}
                None => {
                    return Err(Error::Config(format!(
                        "class {i} of SL_2 needs an order_mod_center annotation"
                    )))
                }
            }
        }
        return Ok(if involutions == 2 {
            Verdict::plain(Outcome::SL2InvolutionObstruction)
        } else {
            Verdict::plain(Outcome::Generating)
        });
    }

    let sum = tuple.gamma_sum();
    let budget = tuple.eigenspace_budget();
    if sum > budget {
        return Ok(Verdict {
            outcome: Outcome::EigenspaceObstruction,
            witness: Some(sum - budget),
        });
    }
    if e == 2 && tuple.classes.iter().all(ClassSpec::is_quadratic) {
        return Ok(Verdict::plain(Outcome::QuadraticPairObstruction));
    }
    Ok(Verdict::plain(Outcome::Generating))
}

/// Restricts every class of a generating tuple from `SL_n` to `SL_{n−1}`.
pub fn restrict_tuple(tuple: &ClassTuple) -> Result<ClassTuple> {
    const SOURCE: &str = "restriction to SL_{n-1}";
    if tuple.n() < 4 {
        return Err(Error::precondition(SOURCE, format!("n = {} < 4", tuple.n())));
    }
    let verdict = generation_criterion(tuple)?;
    if !verdict.is_generating() {
        return Err(Error::precondition(SOURCE, format!("input tuple fails the criterion: {verdict}")));
    }
    let mut restricted = Vec::with_capacity(tuple.len());
    let mut collapsed = Vec::new();
    for (i, c) in tuple.classes.iter().enumerate() {
        match c.restrict() {
            Ok(r) => restricted.push(r),
            Err(_) => collapsed.push(i),
        }
    }
    if !collapsed.is_empty() {
        return Err(Error::Validation(format!(
            "classes {collapsed:?} become central after restriction"
        )));
    }
    ClassTuple::new(restricted)
}

/// `max(0, Σγ_i − n(e−1))`: a lower bound on the dimension of the common
/// intersection of chosen largest eigenspaces, attained for generic tuples.
pub fn eigenspace_intersection_lower_bound(tuple: &ClassTuple) -> u64 {
    tuple.gamma_sum().saturating_sub(tuple.eigenspace_budget())
}

/// All partitions of `n` in non-increasing lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            rec(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Every noncentral class shape of `SL_n` with at most `max_labels`
/// eigenvalues, one representative per shape.
///
/// Shapes come ordered by number of eigenvalues, then by shape key in
/// decreasing order; labels are `a, b, …` following the key.
pub fn enumerate_shapes(n: u32, max_labels: u32) -> Result<Vec<ClassSpec>> {
    if n < 2 {
        return Err(Error::Validation(format!("n = {n}, expected n >= 2")));
    }
    if n > ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "shape enumeration is capped at n = {ENUMERATION_CAP}, got {n}"
        )));
    }
    // Pool of all partitions of sizes 1..=n in one decreasing order; a shape
    // is a non-increasing sequence from this pool.
    let mut pool: Vec<Partition> = (1..=n).flat_map(partitions_of).collect();
    pool.sort_unstable_by(|a, b| b.cmp(a));

    fn rec(
        pool: &[Partition],
        start: usize,
        rem: u32,
        labels_left: u32,
        cur: &mut Vec<Partition>,
        out: &mut Vec<Vec<Partition>>,
    ) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if labels_left == 0 {
            return;
        }
        for i in start..pool.len() {
            if pool[i].size() <= rem {
                cur.push(pool[i].clone());
                rec(pool, i, rem - pool[i].size(), labels_left - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut keys = Vec::new();
    rec(&pool, 0, n, max_labels, &mut Vec::new(), &mut keys);
    keys.retain(|k| !(k.len() == 1 && k[0].largest() == 1));
    keys.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)));

    keys.into_iter()
        .map(|key| {
            let entries = key
                .into_iter()
                .enumerate()
                .map(|(i, p)| (default_label(i), p.0))
                .collect();
            ClassSpec::new(n, entries)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    label: String,
    blocks: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassDoc {
    profile: Vec<EntryDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order_mod_center: Option<OrderModCenter>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    n: u32,
    classes: Vec<ClassDoc>,
}

impl ClassTuple {
    /// Parses the JSON class-spec document:
    ///
    /// ```json
    /// {"n": 3, "classes": [{"profile": [{"label": "a", "blocks": [2, 1]}],
    ///                       "values": {"a": "1"}}]}
    /// ```
    ///
    /// `order_mod_center` (`"involution"` / `"other"`) and `values` are
    /// optional per class.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SpecDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut classes = Vec::with_capacity(doc.classes.len());
        for (i, c) in doc.classes.into_iter().enumerate() {
            let entries = c.profile.into_iter().map(|e| (e.label, e.blocks)).collect();
            let mut spec = ClassSpec::new(doc.n, entries)
                .map_err(|e| Error::Parse(format!("classes[{i}].profile: {e}")))?;
            if let Some(o) = c.order_mod_center {
                spec = spec.with_order_mod_center(o);
            }
            if let Some(values) = c.values {
                spec = spec
                    .with_values(values)
                    .map_err(|e| Error::Parse(format!("classes[{i}].values: {e}")))?;
            }
            classes.push(spec);
        }
        ClassTuple::new(classes).map_err(|e| Error::Parse(format!("classes: {e}")))
    }

    /// Canonical serialization: fixed key order, blocks non-increasing,
    /// values sorted by label, two-space indentation, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let doc = SpecDoc {
            n: self.n(),
            classes: self
                .classes
                .iter()
                .map(|c| ClassDoc {
                    profile: c
                        .profile
                        .entries
                        .iter()
                        .map(|e| EntryDoc {
                            label: e.label.clone(),
                            blocks: e.blocks.parts().to_vec(),
                        })
                        .collect(),
                    order_mod_center: c.order_mod_center,
                    values: c.concrete_values.as_deref().cloned(),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("spec document serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u32, shape: &[&[u32]]) -> ClassSpec {
        ClassSpec::from_shape(n, shape).unwrap()
    }

    fn pair(a: ClassSpec, b: ClassSpec) -> ClassTuple {
        ClassTuple::new(vec![a, b]).unwrap()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(spec(4, &[&[2, 1, 1]]).gamma(), 3);
        assert_eq!(spec(3, &[&[1], &[1], &[1]]).gamma(), 1);
        assert_eq!(spec(5, &[&[2, 2], &[1]]).gamma(), 2);
    }

    #[test]
    fn minimal_polynomial_examples() {
        let s = spec(2, &[&[2]]);
        assert_eq!(s.minimal_polynomial_degree(), 2);
        assert!(s.is_quadratic());
        let s = spec(3, &[&[1, 1], &[1]]);
        assert_eq!(s.minimal_polynomial_degree(), 2);
        assert!(s.is_quadratic());
        let s = spec(3, &[&[1], &[1], &[1]]);
        assert_eq!(s.minimal_polynomial_degree(), 3);
        assert!(!s.is_quadratic());
    }

    #[test]
    fn class_dimension_examples() {
        assert_eq!(spec(3, &[&[1, 1], &[1]]).class_dimension(), 4);
        let reg = spec(3, &[&[3]]);
        assert_eq!(reg.centralizer_dimension(), 2);
        assert_eq!(reg.class_dimension(), 6);
        let j2 = spec(2, &[&[2]]);
        assert_eq!(j2.centralizer_dimension(), 1);
        assert_eq!(j2.class_dimension(), 2);
    }

    #[test]
    fn transpose_partition() {
        let p = Partition::new(vec![3, 1, 1]).unwrap();
        assert_eq!(p.transpose().parts(), &[3, 1, 1]);
        let p = Partition::new(vec![4, 2]).unwrap();
        assert_eq!(p.transpose().parts(), &[2, 2, 1, 1]);
    }

    #[test]
    fn dim_omega_examples() {
        let reg = spec(3, &[&[1], &[1], &[1]]);
        let quad = spec(3, &[&[1, 1], &[1]]);
        assert_eq!(dim_omega(&pair(reg.clone(), reg.clone())), 12);
        assert_eq!(dim_omega(&pair(quad, reg)), 10);
        let tv = ClassTuple::new(vec![spec(3, &[&[2, 1]])]).unwrap();
        assert_eq!(dim_omega(&tv), 4);
    }

    #[test]
    fn criterion_examples() {
        let reg = spec(3, &[&[1], &[1], &[1]]);
        assert_eq!(
            generation_criterion(&pair(reg.clone(), reg)).unwrap().outcome,
            Outcome::Generating
        );

        let tv = spec(3, &[&[2, 1]]);
        let v = generation_criterion(&pair(tv.clone(), tv)).unwrap();
        assert_eq!(v.outcome, Outcome::EigenspaceObstruction);
        assert_eq!(v.witness, Some(1));

        let a = spec(4, &[&[2, 2]]);
        let b = spec(4, &[&[1, 1], &[1, 1]]);
        let v = generation_criterion(&pair(a, b)).unwrap();
        assert_eq!(v.outcome, Outcome::QuadraticPairObstruction);
        assert_eq!(v.witness, None);
    }

    #[test]
    fn sl2_criterion_needs_annotations_and_pairs() {
        let u = spec(2, &[&[2]]);
        assert!(matches!(
            generation_criterion(&pair(u.clone(), u.clone())),
            Err(Error::Config(_))
        ));
        let inv = spec(2, &[&[1], &[1]]).with_order_mod_center(OrderModCenter::Involution);
        let other = u.with_order_mod_center(OrderModCenter::Other);
        assert_eq!(
            generation_criterion(&pair(inv.clone(), inv.clone())).unwrap().outcome,
            Outcome::SL2InvolutionObstruction
        );
        assert_eq!(
            generation_criterion(&pair(inv.clone(), other)).unwrap().outcome,
            Outcome::Generating
        );
        let triple = ClassTuple::new(vec![inv.clone(), inv.clone(), inv]).unwrap();
        assert!(matches!(generation_criterion(&triple), Err(Error::Unsupported(_))));
    }

    #[test]
    fn single_class_never_generates() {
        let t = ClassTuple::new(vec![spec(3, &[&[1], &[1], &[1]])]).unwrap();
        let v = generation_criterion(&t).unwrap();
        assert_eq!(v.outcome, Outcome::EigenspaceObstruction);
        assert_eq!(v.witness, Some(1));
    }

    #[test]
    fn min_generators_examples() {
        for n in 3..=8 {
            let shape: Vec<Vec<u32>> = (0..n).map(|_| vec![1]).collect();
            let refs: Vec<&[u32]> = shape.iter().map(Vec::as_slice).collect();
            assert_eq!(spec(n, &refs).min_generators().unwrap(), 2);
        }
        assert_eq!(spec(4, &[&[2, 1, 1]]).min_generators().unwrap(), 4);
        assert_eq!(spec(4, &[&[2, 2]]).min_generators().unwrap(), 3);
        assert!(matches!(spec(2, &[&[2]]).min_generators(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn restriction_examples() {
        let r = spec(3, &[&[2, 1]]).restrict().unwrap();
        assert_eq!(r.n(), 2);
        assert_eq!(r.shape_key(), vec![Partition::new(vec![2]).unwrap()]);
        assert_eq!(r.gamma(), 1);

        let r = spec(4, &[&[2, 2]]).restrict().unwrap();
        assert_eq!(r.n(), 3);
        assert_eq!(r.shape_key(), vec![Partition::new(vec![2, 1]).unwrap()]);
        assert_eq!(r.gamma(), 2);

        let reg5 = spec(5, &[&[1], &[1], &[1], &[1], &[1]]);
        let t = restrict_tuple(&pair(reg5.clone(), reg5)).unwrap();
        assert_eq!(t.n(), 4);
        assert!(t.classes().iter().all(|c| c.gamma() == 1 && c.profile().entries().len() == 4));
        assert!(t.gamma_sum() <= 4);
    }

    #[test]
    fn restriction_preconditions() {
        let tv = spec(4, &[&[2, 1, 1]]);
        assert!(matches!(
            restrict_tuple(&pair(tv.clone(), tv)),
            Err(Error::Precondition { .. })
        ));
        let reg = spec(3, &[&[1], &[1], &[1]]);
        assert!(matches!(
            restrict_tuple(&pair(reg.clone(), reg)),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn restriction_to_central_fails() {
        assert!(spec(2, &[&[2]]).restrict().is_err());
        assert!(spec(2, &[&[1], &[1]]).restrict().is_err());
    }

    #[test]
    fn intersection_bound_examples() {
        let t = pair(spec(4, &[&[2, 1, 1]]), spec(4, &[&[1, 1, 1], &[1]]));
        assert_eq!(eigenspace_intersection_lower_bound(&t), 2);
        let reg = spec(3, &[&[1], &[1], &[1]]);
        assert_eq!(eigenspace_intersection_lower_bound(&pair(reg.clone(), reg)), 0);
        let tv6 = spec(6, &[&[2, 1, 1, 1, 1]]);
        let t = ClassTuple::new(vec![tv6.clone(), tv6.clone(), tv6]).unwrap();
        assert_eq!(eigenspace_intersection_lower_bound(&t), 3);
    }

    #[test]
    fn enumerate_small_shapes() {
        let two = enumerate_shapes(2, 2).unwrap();
        let keys: Vec<String> = two.iter().map(|s| format_shape(&s.shape_key())).collect();
        assert_eq!(keys, vec!["{[2]}", "{[1],[1]}"]);

        let three = enumerate_shapes(3, 3).unwrap();
        let keys: Vec<String> = three.iter().map(|s| format_shape(&s.shape_key())).collect();
        assert_eq!(keys, vec!["{[3]}", "{[2,1]}", "{[2],[1]}", "{[1,1],[1]}", "{[1],[1],[1]}"]);

        // 14 multisets of partitions of total size 4, minus the central one
        assert_eq!(enumerate_shapes(4, 4).unwrap().len(), 13);
        assert!(matches!(enumerate_shapes(13, 13), Err(Error::Resource(_))));
    }

    #[test]
    fn max_labels_limits_enumeration() {
        let shapes = enumerate_shapes(4, 1).unwrap();
        assert!(shapes.iter().all(|s| s.profile().entries().len() == 1));
        assert_eq!(shapes.len(), 4);
    }

    #[test]
    fn validation_errors() {
        assert!(ClassSpec::new(3, vec![("a", vec![1, 1, 1])]).is_err());
        assert!(ClassSpec::new(3, vec![("a", vec![2])]).is_err());
        assert!(ClassSpec::new(3, vec![("a", vec![2]), ("a", vec![1])]).is_err());
        assert!(ClassSpec::new(3, vec![("a", vec![2, 0, 1])]).is_err());
        assert!(ClassSpec::new(3, vec![("a", vec![])]).is_err());
        let a = spec(3, &[&[3]]);
        let b = spec(4, &[&[4]]);
        assert!(ClassTuple::new(vec![a, b]).is_err());
        assert!(ClassTuple::new(vec![]).is_err());
    }

    #[test]
    fn values_must_cover_labels() {
        let s = spec(3, &[&[2], &[1]]);
        assert!(s.clone().with_values([("a", "2")]).is_err());
        assert!(s.clone().with_values([("a", "2"), ("b", "1"), ("c", "3")]).is_err());
        assert!(s.with_values([("a", "2"), ("b", "1")]).is_ok());
    }

    #[test]
    fn canonical_json_is_stable() {
        let text = r#"{"n":3,"classes":[{"profile":[{"label":"a","blocks":[1,2]}],"values":{"a":"1"}},
                      {"profile":[{"label":"x","blocks":[1]},{"label":"y","blocks":[1]},{"label":"z","blocks":[1]}]}]}"#;
        let t = ClassTuple::from_json(text).unwrap();
        assert_eq!(t.classes()[0].profile().entries()[0].blocks().parts(), &[2, 1]);
        let canon = t.to_canonical_json();
        let expected = "{\n  \"n\": 3,\n  \"classes\": [\n    {\n      \"profile\": [\n        {\n          \"label\": \"a\",\n          \"blocks\": [\n            2,\n            1\n          ]\n        }\n      ],\n      \"values\": {\n        \"a\": \"1\"\n      }\n    },\n    {\n      \"profile\": [\n        {\n          \"label\": \"x\",\n          \"blocks\": [\n            1\n          ]\n        },\n        {\n          \"label\": \"y\",\n          \"blocks\": [\n            1\n          ]\n        },\n        {\n          \"label\": \"z\",\n          \"blocks\": [\n            1\n          ]\n        }\n      ]\n    }\n  ]\n}\n";
        assert_eq!(canon, expected);
        assert_eq!(ClassTuple::from_json(&canon).unwrap(), t);
    }

    #[test]
    fn parse_errors_name_the_field() {
        let err = ClassTuple::from_json(r#"{"n":3,"classes":[{"profile":[{"label":"a","blocks":[1,1,1]}]}]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("classes[0].profile"), "{err}");
        let err = ClassTuple::from_json("{\"n\": 3,\n \"classes\": [ {\"profil\": []} ]}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
