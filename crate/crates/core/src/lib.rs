//! Dowker complexes of finite relations.
//!
//! A relation `R ⊂ X × Y` is stored as a labeled boolean matrix
//! ([`Relation`]). From it the crate builds the two Dowker complexes `K_R`
//! (on `X`, from column supports) and `L_R` (on `Y`, from row supports),
//! analyzes self-relations as directed graphs, verifies morphisms and
//! shift-equivalence witnesses, and computes persistent homology over the
//! two-element field for the filtration of complexes of successive powers.
//!
//! ```
//! use dowker_core::{dowker_k, fixtures::fix_a};
//!
//! let k = dowker_k(&fix_a());
//! assert_eq!(k.maximal_labels(), vec![vec!["x1", "x3", "x4"], vec!["x2"]]);
//! assert_eq!(k.betti_numbers(1).0, vec![2, 0]);
//! ```

pub mod digraph;
pub mod dowker;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod io;
pub mod morphism;
pub mod persistence;
pub mod relation;
pub mod simplicial;

pub use digraph::{ComponentKind, ComponentPartition, QStructure};
pub use dowker::{dowker_k, dowker_l, duality_check, DualityReport};
pub use error::{Error, Result};
pub use morphism::{MultiMap, ShiftWitness, Verdict, VertexMap, Violation};
pub use persistence::{
    barcode, bifiltration_grid, power_filtration, Bar, Barcode, BifiltrationGrid, FilteredComplex,
    Side,
};
pub use relation::{compose, EventualPeriod, Relation, SelfRelation};
pub use simplicial::{BettiVector, Simplex, SimplicialComplex, DEFAULT_DIM_CAP};
