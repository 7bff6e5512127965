//! The two Dowker complexes of a relation `R ⊂ X × Y`.
//!
//! `K_R` lives on `X`: a set of sources is a simplex when some target is
//! related to all of them, so the maximal simplices are column supports.
//! `L_R` lives on `Y` and is built from row supports. Empty rows and columns
//! contribute nothing, so vertices outside `Dom R` are absent from `K_R`.

use std::collections::BTreeMap;

use crate::relation::Relation;
use crate::simplicial::{BettiVector, Simplex, SimplicialComplex};

/// A Dowker complex together with, for each maximal simplex, the targets
/// whose column support equals it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DowkerComplex {
    pub complex: SimplicialComplex,
    pub witnesses: BTreeMap<Simplex, Vec<usize>>,
}

/// `K_R` with its witness map.
pub fn dowker_k_with_witnesses(r: &Relation) -> DowkerComplex {
    let (_, n) = r.shape();
    let mut supports: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
    for y in 0..n {
        if let Some(s) = Simplex::from_bits(&r.column(y)) {
            supports.entry(s).or_default().push(y);
        }
    }
    let complex =
        SimplicialComplex::from_simplices(r.shared_source(), supports.keys().cloned().collect());
    let witnesses = complex
        .maximal()
        .iter()
        .map(|s| (s.clone(), supports[s].clone()))
        .collect();
    DowkerComplex { complex, witnesses }
}

/// `K_R` on the source labels.
pub fn dowker_k(r: &Relation) -> SimplicialComplex {
    let candidates = (0..r.shape().1)
        .filter_map(|y| Simplex::from_bits(&r.column(y)))
        .collect();
    SimplicialComplex::from_simplices(r.shared_source(), candidates)
}

/// `L_R` on the target labels; identical to `K` of the inverse relation.
pub fn dowker_l(r: &Relation) -> SimplicialComplex {
    let candidates = r.rows().iter().filter_map(Simplex::from_bits).collect();
    SimplicialComplex::from_simplices(r.shared_target(), candidates)
}

/// Betti vectors of both Dowker complexes and whether they agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub holds: bool,
    pub k_betti: BettiVector,
    pub l_betti: BettiVector,
}

pub fn duality_check(r: &Relation, dim_cap: usize) -> DualityReport {
    let k_betti = dowker_k(r).betti_numbers(dim_cap);
    let l_betti = dowker_l(r).betti_numbers(dim_cap);
    DualityReport {
        holds: k_betti == l_betti,
        k_betti,
        l_betti,
    }
}
