//! Finite relations stored as labeled boolean matrices.
//!
//! A [`Relation`] between `X` and `Y` keeps one bit row per source vertex.
//! Composition follows the usual relational convention: `compose(outer, inner)`
//! relates `x` to `z` when `x inner y` and `y outer z` for some `y`, so the
//! inner relation is applied first.

use std::collections::HashMap;
use std::collections::HashSet;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub type Labels = Arc<[String]>;

/// Default labels `prefix1..prefixN`.
pub fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn check_unique(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// A relation `R ⊂ X × Y` with its incidence matrix.
///
/// Two relations are equal only when both label lists and the matrices agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    source: Labels,
    target: Labels,
    rows: Vec<FixedBitSet>,
}

impl Relation {
    /// Builds a relation from boolean rows. Missing labels default to
    /// `x1..xm` and `y1..yn`.
    pub fn from_matrix(
        rows: &[Vec<bool>],
        source_labels: Option<Vec<String>>,
        target_labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let m = rows.len();
        let n = match (rows.first(), &target_labels) {
            (Some(r), _) => r.len(),
            (None, Some(t)) => t.len(),
            (None, None) => 0,
        };
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    expected: n,
                    found: r.len(),
                });
            }
        }
        let source = source_labels.unwrap_or_else(|| default_labels("x", m));
        let target = target_labels.unwrap_or_else(|| default_labels("y", n));
        let bits = rows
            .iter()
            .map(|r| {
                let mut b = FixedBitSet::with_capacity(n);
                for (j, &v) in r.iter().enumerate() {
                    b.set(j, v);
                }
                b
            })
            .collect();
        Self::from_bits(source, target, bits)
    }

    /// Builds a relation from explicit `(source, target)` label pairs.
    pub fn from_pairs<S: AsRef<str>, T: AsRef<str>>(
        source_labels: Vec<String>,
        target_labels: Vec<String>,
        pairs: impl IntoIterator<Item = (S, T)>,
    ) -> Result<Self> {
        let mut r = Self::empty(source_labels, target_labels)?;
        for (a, b) in pairs {
            let i = r.source_index(a.as_ref())?;
            let j = r.target_index(b.as_ref())?;
            r.rows[i].insert(j);
        }
        Ok(r)
    }

    pub fn empty(source_labels: Vec<String>, target_labels: Vec<String>) -> Result<Self> {
        let n = target_labels.len();
        let rows = vec![FixedBitSet::with_capacity(n); source_labels.len()];
        Self::from_bits(source_labels, target_labels, rows)
    }

    pub(crate) fn from_bits(
        source: Vec<String>,
        target: Vec<String>,
        rows: Vec<FixedBitSet>,
    ) -> Result<Self> {
        if rows.len() != source.len() {
            return Err(Error::LabelCount {
                side: "source",
                expected: rows.len(),
                found: source.len(),
            });
        }
        if let Some(r) = rows.first() {
            if r.len() != target.len() {
                return Err(Error::LabelCount {
                    side: "target",
                    expected: r.len(),
                    found: target.len(),
                });
            }
        }
        check_unique(&source)?;
        check_unique(&target)?;
        Ok(Self {
            source: source.into(),
            target: target.into(),
            rows,
        })
    }

    fn with_shared(source: Labels, target: Labels, rows: Vec<FixedBitSet>) -> Self {
        debug_assert_eq!(source.len(), rows.len());
        Self {
            source,
            target,
            rows,
        }
    }

    /// The graph `{(x, f(x))}` of a map given as target indices.
    pub(crate) fn graph_of(source: Labels, target: Labels, image: &[usize]) -> Self {
        let n = target.len();
        let rows = image
            .iter()
            .map(|&j| {
                let mut b = FixedBitSet::with_capacity(n);
                b.insert(j);
                b
            })
            .collect();
        Self::with_shared(source, target, rows)
    }

    pub fn source_labels(&self) -> &[String] {
        &self.source
    }

    pub fn target_labels(&self) -> &[String] {
        &self.target
    }

    pub(crate) fn shared_source(&self) -> Labels {
        self.source.clone()
    }

    pub(crate) fn shared_target(&self) -> Labels {
        self.target.clone()
    }

    /// `(rows, columns)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.source.len(), self.target.len())
    }

    pub fn source_index(&self, label: &str) -> Result<usize> {
        self.source
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn target_index(&self, label: &str) -> Result<usize> {
        self.target
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    /// Targets related to source `i`, as a bit row.
    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    pub(crate) fn rows(&self) -> &[FixedBitSet] {
        &self.rows
    }

    /// Sources related to target `j`.
    pub fn column(&self, j: usize) -> FixedBitSet {
        let mut c = FixedBitSet::with_capacity(self.source.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.contains(j) {
                c.insert(i);
            }
        }
        c
    }

    /// All related index pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.ones().map(move |j| (i, j)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_clear())
    }

    pub fn to_rows(&self) -> Vec<Vec<bool>> {
        self.rows
            .iter()
            .map(|r| (0..self.target.len()).map(|j| r.contains(j)).collect())
            .collect()
    }

    pub fn inverse(&self) -> Relation {
        let m = self.source.len();
        let mut rows = vec![FixedBitSet::with_capacity(m); self.target.len()];
        for (i, j) in self.pairs() {
            rows[j].insert(i);
        }
        Self::with_shared(self.target.clone(), self.source.clone(), rows)
    }

    pub fn domain_mask(&self) -> FixedBitSet {
        let mut d = FixedBitSet::with_capacity(self.source.len());
        for (i, r) in self.rows.iter().enumerate() {
            if !r.is_clear() {
                d.insert(i);
            }
        }
        d
    }

    pub fn image_mask(&self) -> FixedBitSet {
        let mut img = FixedBitSet::with_capacity(self.target.len());
        for r in &self.rows {
            img.union_with(r);
        }
        img
    }

    /// Sources with a nonempty row.
    pub fn domain(&self) -> Vec<&str> {
        self.domain_mask()
            .ones()
            .map(|i| self.source[i].as_str())
            .collect()
    }

    /// Targets with a nonempty column.
    pub fn image(&self) -> Vec<&str> {
        self.image_mask()
            .ones()
            .map(|j| self.target[j].as_str())
            .collect()
    }

    /// `Dom R = X`.
    pub fn is_total(&self) -> bool {
        self.rows.iter().all(|r| !r.is_clear())
    }

    /// `Ima R = Y`.
    pub fn is_surjective(&self) -> bool {
        self.image_mask().count_ones(..) == self.target.len()
    }

    pub fn is_subrelation_of(&self, other: &Relation) -> bool {
        self.source == other.source
            && self.target == other.target
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.is_subset(b))
    }
}

/// `outer ∘ inner`: `x` relates to `z` iff some `y` has `x inner y` and `y outer z`.
pub fn compose(outer: &Relation, inner: &Relation) -> Result<Relation> {
    if inner.target != outer.source {
        return Err(Error::LabelMismatch(format!(
            "inner targets [{}] differ from outer sources [{}]",
            inner.target.join(" "),
            outer.source.join(" ")
        )));
    }
    let n = outer.target.len();
    let rows = inner
        .rows
        .iter()
        .map(|r| {
            let mut acc = FixedBitSet::with_capacity(n);
            for y in r.ones() {
                acc.union_with(&outer.rows[y]);
            }
            acc
        })
        .collect();
    Ok(Relation::with_shared(
        inner.source.clone(),
        outer.target.clone(),
        rows,
    ))
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Relation[{}] -> [{}] {{",
            self.source.join(" "),
            self.target.join(" ")
        )?;
        let mut first = true;
        for (i, j) in self.pairs() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, " {}->{}", self.source[i], self.target[j])?;
        }
        f.write_str(" }")
    }
}

/// Text matrix rendering: one line of `0`/`1` per source.
impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let line: Vec<&str> = (0..self.target.len())
                .map(|j| if r.contains(j) { "1" } else { "0" })
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Index `j` and period `p` with `R^j = R^{j+p}`, both least.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EventualPeriod {
    pub index: usize,
    pub period: usize,
}

/// A relation on a single vertex set; the edge set of a directed graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SelfRelation(Relation);

impl SelfRelation {
    pub fn from_matrix(rows: &[Vec<bool>], labels: Option<Vec<String>>) -> Result<Self> {
        let labels = labels.unwrap_or_else(|| default_labels("x", rows.len()));
        if labels.len() != rows.len() {
            return Err(Error::LabelCount {
                side: "source",
                expected: rows.len(),
                found: labels.len(),
            });
        }
        Relation::from_matrix(rows, Some(labels.clone()), Some(labels))?.try_into()
    }

    pub fn from_pairs<S: AsRef<str>, T: AsRef<str>>(
        labels: Vec<String>,
        pairs: impl IntoIterator<Item = (S, T)>,
    ) -> Result<Self> {
        Relation::from_pairs(labels.clone(), labels, pairs)?.try_into()
    }

    pub fn identity(labels: Vec<String>) -> Result<Self> {
        check_unique(&labels)?;
        let labels: Labels = labels.into();
        Ok(Self::identity_on(labels))
    }

    fn identity_on(labels: Labels) -> Self {
        let idx: Vec<usize> = (0..labels.len()).collect();
        SelfRelation(Relation::graph_of(labels.clone(), labels, &idx))
    }

    pub fn labels(&self) -> &[String] {
        self.0.source_labels()
    }

    pub fn vertex_count(&self) -> usize {
        self.0.source.len()
    }

    pub fn as_relation(&self) -> &Relation {
        &self.0
    }

    pub fn into_relation(self) -> Relation {
        self.0
    }

    /// Composition of two relations on the same vertex set.
    pub fn then(&self, next: &SelfRelation) -> Result<SelfRelation> {
        compose(&next.0, &self.0).map(SelfRelation)
    }

    pub fn inverse(&self) -> SelfRelation {
        SelfRelation(self.0.inverse())
    }

    /// `R^n`; `R^0` is the identity and negative powers iterate `R^{-1}`.
    pub fn power(&self, n: i64) -> SelfRelation {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity_on(self.0.source.clone());
        for _ in 0..n.unsigned_abs() {
            acc = SelfRelation(compose(&base.0, &acc.0).expect("same vertex set"));
        }
        acc
    }

    /// Least `(j, p)` with `R^j = R^{j+p}`, found by remembering every power
    /// seen until one repeats.
    pub fn eventual_period(&self) -> EventualPeriod {
        let mut seen: HashMap<Vec<FixedBitSet>, usize> = HashMap::new();
        let mut current = self.0.clone();
        let mut k = 1usize;
        loop {
            if let Some(&first) = seen.get(&current.rows) {
                return EventualPeriod {
                    index: first,
                    period: k - first,
                };
            }
            let next = compose(&self.0, &current).expect("same vertex set");
            seen.insert(std::mem::take(&mut current.rows), k);
            current = next;
            k += 1;
        }
    }

    /// All powers `R^1..=R^upto`.
    pub fn powers(&self, upto: usize) -> Vec<SelfRelation> {
        let mut out = Vec::with_capacity(upto);
        let mut current = self.clone();
        for i in 1..=upto {
            if i > 1 {
                current = current.then(self).expect("same vertex set");
            }
            out.push(current.clone());
        }
        out
    }

    /// The stable power `R^j`, defined when the period is 1.
    pub fn r_infinity(&self) -> Result<SelfRelation> {
        let ep = self.eventual_period();
        if ep.period != 1 {
            return Err(Error::NotConvergent { period: ep.period });
        }
        Ok(self.power(ep.index as i64))
    }

    /// Out-neighbours of vertex `i`.
    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.0.rows[i].ones()
    }
}

impl TryFrom<Relation> for SelfRelation {
    type Error = Error;

    fn try_from(r: Relation) -> Result<Self> {
        if r.source != r.target {
            return Err(Error::NotSelfRelation);
        }
        Ok(SelfRelation(r))
    }
}

impl From<SelfRelation> for Relation {
    fn from(r: SelfRelation) -> Relation {
        r.0
    }
}

impl Deref for SelfRelation {
    type Target = Relation;

    fn deref(&self) -> &Relation {
        &self.0
    }
}

impl fmt::Debug for SelfRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for SelfRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
