//! Small named relations used throughout the tests and benches.

use crate::relation::{Relation, SelfRelation};

fn bools(rows: &[&[u8]]) -> Vec<Vec<bool>> {
    rows.iter()
        .map(|r| r.iter().map(|&b| b != 0).collect())
        .collect()
}

/// The 4×5 worked example: `K` has maximal simplices `[x1,x3,x4]`, `[x2]`.
pub fn fix_a() -> Relation {
    Relation::from_matrix(
        &bools(&[
            &[1, 0, 0, 0, 1],
            &[0, 0, 1, 1, 0],
            &[1, 0, 0, 0, 1],
            &[1, 1, 0, 0, 0],
        ]),
        None,
        None,
    )
    .expect("valid fixture")
}

/// Strictly upper triangular 3×3, nilpotent of index 3.
pub fn fix_n() -> SelfRelation {
    SelfRelation::from_matrix(&bools(&[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]), None)
        .expect("valid fixture")
}

/// The 3-cycle `x1 -> x2 -> x3 -> x1`.
pub fn fix_c3() -> SelfRelation {
    cycle(3)
}

/// All-ones relation on 3 vertices.
pub fn fix_j3() -> SelfRelation {
    complete(3)
}

pub fn fix_i3() -> SelfRelation {
    SelfRelation::from_matrix(&bools(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), None)
        .expect("valid fixture")
}

/// Cyclic permutation `x_i -> x_{i+1}` on `n` vertices.
pub fn cycle(n: usize) -> SelfRelation {
    let rows: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| j == (i + 1) % n).collect())
        .collect();
    SelfRelation::from_matrix(&rows, None).expect("valid fixture")
}

pub fn complete(n: usize) -> SelfRelation {
    SelfRelation::from_matrix(&vec![vec![true; n]; n], None).expect("valid fixture")
}

/// Chain `x1 -> x2 -> x3` with a self-loop on `x3`.
pub fn chain_with_sink_loop() -> SelfRelation {
    SelfRelation::from_matrix(&bools(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 1]]), None)
        .expect("valid fixture")
}

/// Total relation on 5 vertices whose first Dowker complex carries one
/// 1-cycle that is filled at the second power; eventual period `(2, 1)`.
pub fn hollow_then_filled() -> SelfRelation {
    SelfRelation::from_matrix(
        &bools(&[
            &[1, 0, 0, 0, 1],
            &[1, 1, 1, 1, 0],
            &[0, 1, 1, 1, 1],
            &[1, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1],
        ]),
        None,
    )
    .expect("valid fixture")
}

fn on_labels(n: usize, edges: &[(usize, usize)]) -> SelfRelation {
    let labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let pairs: Vec<(String, String)> = edges
        .iter()
        .map(|&(a, b)| (format!("x{a}"), format!("x{b}")))
        .collect();
    SelfRelation::from_pairs(labels, pairs).expect("valid fixture")
}

/// Connected acyclic relation on 9 vertices with self-loops on the sinks.
///
/// Eventual period `(3, 1)`; the K-side barcode has one H1 bar `[1, 2)`,
/// three H0 bars that die at powers 2, 2 and 3, and one infinite H0 bar.
pub fn acyclic_nine() -> SelfRelation {
    on_labels(
        9,
        &[
            (1, 1),
            (2, 3),
            (3, 7),
            (4, 4),
            (5, 1),
            (5, 9),
            (6, 5),
            (6, 9),
            (7, 4),
            (8, 1),
            (8, 5),
            (9, 4),
        ],
    )
}

/// Connected simple relation on 10 vertices: one 4-cycle `x1 x2 x4 x7` fed
/// by trees. Eventual period `(3, 4)`; two H0 bars survive to infinity.
pub fn simple_ten() -> SelfRelation {
    on_labels(
        10,
        &[
            (1, 2),
            (2, 4),
            (3, 4),
            (4, 7),
            (5, 2),
            (5, 10),
            (6, 2),
            (6, 7),
            (6, 10),
            (7, 1),
            (8, 1),
            (9, 6),
            (10, 1),
        ],
    )
}
