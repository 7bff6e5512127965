//! Power filtrations of Dowker complexes, their barcodes over the
//! two-element field, and the `K ∩ L` bi-filtration.
//!
//! For a total relation the complexes `K_{R^i}` grow with `i` and stop
//! changing at the index `j` of the eventual period, so a filtration over the
//! powers `1..=j` (optionally starting at the identity, power 0) captures
//! everything and bars alive at `j` are genuinely infinite. Bars are
//! half-open `[birth, death)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dowker::{dowker_k, dowker_l};
use crate::error::{Error, Result};
use crate::gf2::low;
use crate::relation::{EventualPeriod, SelfRelation};
use crate::simplicial::{BettiVector, Simplex, SimplicialComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    K,
    L,
}

impl Side {
    pub fn complex(self, r: &SelfRelation) -> SimplicialComplex {
        match self {
            Side::K => dowker_k(r),
            Side::L => dowker_l(r),
        }
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "K" | "k" => Ok(Side::K),
            "L" | "l" => Ok(Side::L),
            other => Err(Error::Precondition(format!("unknown side `{other}`"))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::K => "K",
            Side::L => "L",
        })
    }
}

/// Nested Dowker complexes of successive powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    pub side: Side,
    /// First power in `levels`, 0 or 1.
    pub start: usize,
    pub eventual_period: EventualPeriod,
    levels: Vec<SimplicialComplex>,
}

impl FilteredComplex {
    pub fn levels(&self) -> &[SimplicialComplex] {
        &self.levels
    }

    /// The stabilization index `j`; the last level is power `j`.
    pub fn stabilization_index(&self) -> usize {
        self.eventual_period.index
    }

    /// Powers covered, in order.
    pub fn powers(&self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.stabilization_index()
    }

    pub fn level(&self, power: usize) -> Option<&SimplicialComplex> {
        power
            .checked_sub(self.start)
            .and_then(|i| self.levels.get(i))
    }

    /// Least power whose complex contains `sigma`.
    pub fn birth(&self, sigma: &Simplex) -> Option<usize> {
        self.levels
            .iter()
            .position(|c| c.contains(sigma))
            .map(|i| i + self.start)
    }

    /// Every simplex up to `dim_cap` with its birth, ordered by birth, then
    /// dimension, then vertices.
    pub fn ordered_simplices(&self, dim_cap: usize) -> Vec<(Simplex, usize)> {
        let mut births: BTreeMap<Simplex, usize> = BTreeMap::new();
        for (i, c) in self.levels.iter().enumerate() {
            for s in c.all_faces(dim_cap) {
                births.entry(s).or_insert(i + self.start);
            }
        }
        let mut out: Vec<(Simplex, usize)> = births.into_iter().collect();
        out.sort_by(|(a, ba), (b, bb)| ba.cmp(bb).then(a.dim().cmp(&b.dim())).then(a.cmp(b)));
        out
    }
}

fn check_hypothesis(r: &SelfRelation, side: Side, ep: EventualPeriod) -> Result<()> {
    let missing_mask = match side {
        Side::K => r.domain_mask(),
        Side::L => r.image_mask(),
    };
    if missing_mask.count_ones(..) == r.vertex_count() {
        return Ok(());
    }
    let missing: Vec<String> = (0..r.vertex_count())
        .filter(|&i| !missing_mask.contains(i))
        .map(|i| r.labels()[i].clone())
        .collect();
    let complexes: Vec<SimplicialComplex> = r
        .powers(ep.index + ep.period)
        .iter()
        .map(|p| side.complex(p))
        .collect();
    let broken_at = complexes
        .windows(2)
        .position(|w| !w[0].is_subcomplex(&w[1]).expect("same universe"))
        .map(|i| i + 1);
    Err(match side {
        Side::K => Error::NotTotal { missing, broken_at },
        Side::L => Error::NotSurjective { missing, broken_at },
    })
}

/// The chain `K_{R^start} ⊆ … ⊆ K_{R^j}` (or the `L` analogue).
///
/// The `K` side needs `Dom R = X` and the `L` side `Ima R = X`; otherwise the
/// error names the vertices that break the hypothesis and the first power at
/// which inclusion actually fails, if any.
pub fn power_filtration(
    r: &SelfRelation,
    side: Side,
    include_zero: bool,
) -> Result<FilteredComplex> {
    let ep = r.eventual_period();
    check_hypothesis(r, side, ep)?;
    let mut levels = Vec::with_capacity(ep.index + 1);
    if include_zero {
        levels.push(side.complex(&r.power(0)));
    }
    levels.extend(r.powers(ep.index).iter().map(|p| side.complex(p)));
    Ok(FilteredComplex {
        side,
        start: if include_zero { 0 } else { 1 },
        eventual_period: ep,
        levels,
    })
}

/// One persistence interval; `death == None` means it never dies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bar {
    pub dim: usize,
    pub birth: usize,
    pub death: Option<usize>,
}

impl Bar {
    pub fn alive_at(&self, t: usize) -> bool {
        self.birth <= t && self.death.is_none_or(|d| t < d)
    }
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.death {
            Some(d) => write!(f, "{}: [{}, {})", self.dim, self.birth, d),
            None => write!(f, "{}: [{}, ∞)", self.dim, self.birth),
        }
    }
}

/// Bars sorted by dimension, birth, then death with infinite bars last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Barcode {
    pub bars: Vec<Bar>,
}

impl Barcode {
    fn sorted(mut bars: Vec<Bar>) -> Self {
        bars.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(a.birth.cmp(&b.birth))
                .then(match (a.death, b.death) {
                    (Some(x), Some(y)) => x.cmp(&y),
                    (Some(_), None) => std::cmp::Ordering::Less,
                    (None, Some(_)) => std::cmp::Ordering::Greater,
                    (None, None) => std::cmp::Ordering::Equal,
                })
        });
        Barcode { bars }
    }

    /// Number of `dim`-dimensional bars alive at level `t`.
    pub fn alive(&self, dim: usize, t: usize) -> usize {
        self.bars
            .iter()
            .filter(|b| b.dim == dim && b.alive_at(t))
            .count()
    }

    pub fn in_dim(&self, dim: usize) -> impl Iterator<Item = &Bar> + '_ {
        self.bars.iter().filter(move |b| b.dim == dim)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("barcode serializes")
    }

    pub fn to_text(&self) -> String {
        self.bars.iter().map(|b| format!("{b}\n")).collect()
    }
}

/// Persistence barcode by left-to-right column reduction over the two-element
/// field. Simplices up to `dim_cap + 1` enter the matrix so that bars of
/// dimension at most `dim_cap` are complete; only those are reported.
pub fn barcode(fc: &FilteredComplex, dim_cap: usize) -> Barcode {
    let order = fc.ordered_simplices(dim_cap + 1);
    let index: BTreeMap<&Simplex, usize> =
        order.iter().enumerate().map(|(i, (s, _))| (s, i)).collect();
    let n = order.len();

    let mut pivot_of_low: Vec<Option<usize>> = vec![None; n];
    let mut reduced: Vec<FixedBitSet> = Vec::with_capacity(n);
    let mut paired = vec![false; n];
    let mut bars = Vec::new();

    for (j, (s, death)) in order.iter().enumerate() {
        let mut col = FixedBitSet::with_capacity(n);
        for f in s.boundary() {
            col.insert(index[&f]);
        }
        while let Some(l) = low(&col) {
            match pivot_of_low[l] {
                Some(k) => col.symmetric_difference_with(&reduced[k]),
                None => break,
            }
        }
        if let Some(l) = low(&col) {
            pivot_of_low[l] = Some(j);
            paired[l] = true;
            paired[j] = true;
            let (creator, birth) = &order[l];
            if birth < death && creator.dim() <= dim_cap {
                bars.push(Bar {
                    dim: creator.dim(),
                    birth: *birth,
                    death: Some(*death),
                });
            }
        }
        reduced.push(col);
    }
    for (i, (s, birth)) in order.iter().enumerate() {
        if !paired[i] && s.dim() <= dim_cap {
            bars.push(Bar {
                dim: s.dim(),
                birth: *birth,
                death: None,
            });
        }
    }
    Barcode::sorted(bars)
}

/// `A ∩ B` on a shared universe.
pub fn intersect_complexes(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
) -> Result<SimplicialComplex> {
    a.intersect(b)
}

/// `K_{R^m} ∩ L_{R^n}`.
pub fn bifiltration_cell(r: &SelfRelation, m: usize, n: usize) -> SimplicialComplex {
    dowker_k(&r.power(m as i64))
        .intersect(&dowker_l(&r.power(n as i64)))
        .expect("same universe")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCell {
    pub m: usize,
    pub n: usize,
    pub betti: BettiVector,
}

/// Pointwise Betti numbers of `K_{R^m} ∩ L_{R^n}` for `1 ≤ m, n ≤ j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BifiltrationGrid {
    pub index: usize,
    pub dim_cap: usize,
    /// Row-major in `m`, then `n`.
    pub cells: Vec<GridCell>,
}

impl BifiltrationGrid {
    pub fn get(&self, m: usize, n: usize) -> Option<&BettiVector> {
        if m == 0 || n == 0 || m > self.index || n > self.index {
            return None;
        }
        Some(&self.cells[(m - 1) * self.index + (n - 1)].betti)
    }

    /// CSV with header `m,n,b0,...,b{dim_cap}`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,n");
        for k in 0..=self.dim_cap {
            out.push_str(&format!(",b{k}"));
        }
        out.push('\n');
        for c in &self.cells {
            out.push_str(&format!("{},{}", c.m, c.n));
            for b in &c.betti.0 {
                out.push_str(&format!(",{b}"));
            }
            out.push('\n');
        }
        out
    }
}

/// The `K ∩ L` grid. Needs `R` both total and surjective so that both axes
/// are filtrations.
pub fn bifiltration_grid(r: &SelfRelation, dim_cap: usize) -> Result<BifiltrationGrid> {
    let ep = r.eventual_period();
    check_hypothesis(r, Side::K, ep)?;
    check_hypothesis(r, Side::L, ep)?;
    let j = ep.index;
    let powers = r.powers(j);
    let ks: Vec<SimplicialComplex> = powers.iter().map(|p| dowker_k(p)).collect();
    let ls: Vec<SimplicialComplex> = powers.iter().map(|p| dowker_l(p)).collect();
    let cells = (0..j * j)
        .into_par_iter()
        .map(|idx| {
            let (m, n) = (idx / j + 1, idx % j + 1);
            let cell = ks[m - 1].intersect(&ls[n - 1]).expect("same universe");
            GridCell {
                m,
                n,
                betti: cell.betti_numbers(dim_cap),
            }
        })
        .collect();
    Ok(BifiltrationGrid {
        index: j,
        dim_cap,
        cells,
    })
}

/// For `σ` in `K_{R^m} ∩ L_{R^n}`, a vertex `x_α` reaching every vertex of
/// `σ` in `n` steps and a vertex `x_ω` reached from every vertex of `σ` in `m`
/// steps, returned as `(x_α, x_ω)`. Smallest indices are chosen.
pub fn walk_witness(
    r: &SelfRelation,
    m: usize,
    n: usize,
    sigma: &Simplex,
) -> Option<(usize, usize)> {
    let forward = r.power(m as i64);
    let backward = r.power(n as i64);
    let mut successors = FixedBitSet::with_capacity(r.vertex_count());
    successors.insert_range(..);
    let mut predecessors = successors.clone();
    for &v in sigma.vertices() {
        if v >= r.vertex_count() {
            return None;
        }
        successors.intersect_with(forward.row(v));
        predecessors.intersect_with(&backward.column(v));
    }
    let omega = successors.ones().next()?;
    let alpha = predecessors.ones().next()?;
    Some((alpha, omega))
}
