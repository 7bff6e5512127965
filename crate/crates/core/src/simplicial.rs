//! Abstract simplicial complexes stored by their maximal simplices.
//!
//! Faces are never materialized unless asked for: [`SimplicialComplex::all_faces`]
//! enumerates them up to a dimension cap, and homology is computed over the
//! two-element field from boundary-matrix ranks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2;
use crate::relation::Labels;

pub const DEFAULT_DIM_CAP: usize = 3;

/// A nonempty, strictly increasing list of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(Error::EmptySimplex);
        }
        Ok(Simplex(vertices))
    }

    pub(crate) fn from_bits(bits: &FixedBitSet) -> Option<Self> {
        let v: Vec<usize> = bits.ones().collect();
        (!v.is_empty()).then_some(Simplex(v))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn intersection(&self, other: &Simplex) -> Option<Simplex> {
        let common: Vec<usize> = self
            .0
            .iter()
            .copied()
            .filter(|v| other.0.binary_search(v).is_ok())
            .collect();
        (!common.is_empty()).then_some(Simplex(common))
    }

    /// Codimension-one faces in the order obtained by dropping vertex 0, 1, ...
    pub fn boundary(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (0..n).filter(move |_| n > 1).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    pub fn labels<'a>(&'a self, universe: &'a [String]) -> impl Iterator<Item = &'a str> + 'a {
        self.0.iter().map(move |&v| universe[v].as_str())
    }
}

/// Homology ranks `β0..=β_cap` over the two-element field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn zeros(cap: usize) -> Self {
        BettiVector(vec![0; cap + 1])
    }

    pub fn get(&self, k: usize) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn cap(&self) -> usize {
        self.0.len() - 1
    }

    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(", "))
    }
}

/// A complex over a labeled vertex universe, kept as an antichain of maximal
/// simplices sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    universe: Labels,
    maximal: Vec<Simplex>,
}

impl SimplicialComplex {
    pub fn empty(universe: Labels) -> Self {
        Self {
            universe,
            maximal: Vec::new(),
        }
    }

    /// Builds a complex from labeled candidate simplices, dropping duplicates
    /// and candidates contained in another.
    pub fn from_maximal<S: AsRef<str>>(
        candidates: &[Vec<S>],
        universe: Vec<String>,
    ) -> Result<Self> {
        let universe: Labels = universe.into();
        let index: BTreeMap<&str, usize> = universe
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if index.len() != universe.len() {
            let dup = universe
                .iter()
                .duplicates()
                .next()
                .expect("a duplicate exists");
            return Err(Error::DuplicateLabel(dup.clone()));
        }
        let mut simplices = Vec::with_capacity(candidates.len());
        for c in candidates {
            let vs = c
                .iter()
                .map(|l| {
                    index
                        .get(l.as_ref())
                        .copied()
                        .ok_or_else(|| Error::UnknownVertex(l.as_ref().to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            simplices.push(Simplex::new(vs)?);
        }
        Ok(Self::from_simplices(universe, simplices))
    }

    /// Prunes `candidates` to an antichain. Vertices must lie in `universe`.
    pub fn from_simplices(universe: Labels, mut candidates: Vec<Simplex>) -> Self {
        debug_assert!(candidates
            .iter()
            .all(|s| s.0.iter().all(|&v| v < universe.len())));
        candidates.sort_unstable_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.cmp(b)));
        candidates.dedup();
        let mut kept: Vec<Simplex> = Vec::with_capacity(candidates.len());
        for c in candidates {
            if !kept.iter().any(|k| c.is_face_of(k)) {
                kept.push(c);
            }
        }
        kept.sort_unstable();
        Self {
            universe,
            maximal: kept,
        }
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn maximal(&self) -> &[Simplex] {
        &self.maximal
    }

    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty()
    }

    /// Largest simplex dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.maximal.iter().map(Simplex::dim).max()
    }

    /// Vertices that belong to some simplex.
    pub fn vertices(&self) -> Vec<usize> {
        self.maximal
            .iter()
            .flat_map(|s| s.0.iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn maximal_labels(&self) -> Vec<Vec<String>> {
        self.maximal
            .iter()
            .map(|s| s.labels(&self.universe).map(str::to_string).collect())
            .collect()
    }

    /// Every face of dimension at most `dim_cap`.
    pub fn all_faces(&self, dim_cap: usize) -> BTreeSet<Simplex> {
        let mut faces = BTreeSet::new();
        for s in &self.maximal {
            for k in 1..=s.0.len().min(dim_cap + 1) {
                for c in s.0.iter().copied().combinations(k) {
                    faces.insert(Simplex(c));
                }
            }
        }
        faces
    }

    /// Faces of dimension at most `dim_cap`, grouped by dimension.
    pub fn faces_by_dim(&self, dim_cap: usize) -> Vec<Vec<Simplex>> {
        let mut by_dim = vec![Vec::new(); dim_cap + 1];
        for f in self.all_faces(dim_cap) {
            by_dim[f.dim()].push(f);
        }
        by_dim
    }

    pub fn contains(&self, sigma: &Simplex) -> bool {
        self.maximal.iter().any(|m| sigma.is_face_of(m))
    }

    fn check_universe(&self, other: &SimplicialComplex) -> Result<()> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        Ok(())
    }

    /// `self ≤ other`.
    pub fn is_subcomplex(&self, other: &SimplicialComplex) -> Result<bool> {
        self.check_universe(other)?;
        Ok(self.maximal.iter().all(|s| other.contains(s)))
    }

    pub fn equals(&self, other: &SimplicialComplex) -> Result<bool> {
        self.check_universe(other)?;
        Ok(self.maximal == other.maximal)
    }

    /// Faces common to both complexes. The maximal simplices of the result are
    /// the maximal pairwise intersections.
    pub fn intersect(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        self.check_universe(other)?;
        let candidates = self
            .maximal
            .iter()
            .cartesian_product(&other.maximal)
            .filter_map(|(a, b)| a.intersection(b))
            .collect();
        Ok(Self::from_simplices(self.universe.clone(), candidates))
    }

    /// Vertices joined by chains of edges whose closures overlap. A vertex
    /// with no incident edge forms its own block.
    pub fn edge_connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.universe.len();
        let mut uf = UnionFind::new(n);
        for s in &self.maximal {
            for w in s.0.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in self.vertices() {
            blocks.entry(uf.find(v)).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = blocks.into_values().collect();
        out.sort_unstable_by_key(|b| b[0]);
        out
    }

    pub fn edge_connected_labels(&self) -> Vec<Vec<String>> {
        self.edge_connected_components()
            .into_iter()
            .map(|b| b.into_iter().map(|v| self.universe[v].clone()).collect())
            .collect()
    }

    /// `β_k = dim ker ∂_k − rank ∂_{k+1}` for `k = 0..=dim_cap`.
    pub fn betti_numbers(&self, dim_cap: usize) -> BettiVector {
        let by_dim = self.faces_by_dim(dim_cap + 1);
        let ranks: Vec<usize> = (0..=dim_cap + 1)
            .map(|k| {
                if k == 0 {
                    0
                } else {
                    boundary_rank(&by_dim[k - 1], &by_dim[k])
                }
            })
            .collect();
        BettiVector(
            (0..=dim_cap)
                .map(|k| by_dim[k].len() - ranks[k] - ranks[k + 1])
                .collect(),
        )
    }

    /// Alternating count of faces over every dimension.
    pub fn euler_characteristic(&self) -> i64 {
        let top = self.dimension().unwrap_or(0);
        self.faces_by_dim(top)
            .iter()
            .enumerate()
            .map(|(k, f)| {
                if k % 2 == 0 {
                    f.len() as i64
                } else {
                    -(f.len() as i64)
                }
            })
            .sum()
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            universe: self.universe.to_vec(),
            maximal: self.maximal_labels(),
        }
    }

    pub fn from_file(file: &ComplexFile) -> Result<Self> {
        Self::from_maximal(&file.maximal, file.universe.clone())
    }
}

/// Rank of the boundary map from `upper` (dimension k) to `lower` (k − 1).
fn boundary_rank(lower: &[Simplex], upper: &[Simplex]) -> usize {
    if upper.is_empty() {
        return 0;
    }
    let index: BTreeMap<&Simplex, usize> = lower.iter().enumerate().map(|(i, s)| (s, i)).collect();
    gf2::rank(upper.iter().map(|s| {
        let mut col = FixedBitSet::with_capacity(lower.len());
        for f in s.boundary() {
            col.insert(index[&f]);
        }
        col
    }))
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .maximal
            .iter()
            .map(|s| format!("[{}]", s.labels(&self.universe).join(", ")));
        write!(f, "{{{}}}", parts.format(", "))
    }
}

/// JSON form: `{"universe":[...],"maximal":[["x1","x3","x4"],["x2"]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub universe: Vec<String>,
    pub maximal: Vec<Vec<String>>,
}
