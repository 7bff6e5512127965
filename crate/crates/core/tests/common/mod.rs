//! Independent brute-force oracles and seeded generators shared by the
//! integration tests. Nothing here calls into the algorithms under test.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use dowker_core::{Relation, SelfRelation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Matrix = Vec<Vec<bool>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, density: f64) -> Matrix {
    (0..m)
        .map(|_| (0..n).map(|_| rng.gen_bool(density)).collect())
        .collect()
}

pub fn to_self(m: &Matrix) -> SelfRelation {
    SelfRelation::from_matrix(m, None).unwrap()
}

pub fn to_rel(m: &Matrix) -> Relation {
    Relation::from_matrix(m, None, None).unwrap()
}

/// Adds a random successor to every empty row.
pub fn make_total(rng: &mut ChaCha8Rng, m: &mut Matrix) {
    let n = m[0].len();
    for row in m.iter_mut() {
        if !row.contains(&true) {
            row[rng.gen_range(0..n)] = true;
        }
    }
}

/// Adds a random predecessor to every empty column.
pub fn make_surjective(rng: &mut ChaCha8Rng, m: &mut Matrix) {
    let rows = m.len();
    for j in 0..m[0].len() {
        if !m.iter().any(|r| r[j]) {
            m[rng.gen_range(0..rows)][j] = true;
        }
    }
}

/// `{(x, z) : x A y, y B z}`: apply `a` first.
pub fn compose(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    (0..a.len())
        .map(|x| {
            (0..b[0].len())
                .map(|z| (0..inner).any(|y| a[x][y] && b[y][z]))
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect()
}

pub fn power(a: &Matrix, k: usize) -> Matrix {
    (0..k).fold(identity(a.len()), |acc, _| compose(&acc, a))
}

/// Least `(j, p)` with `A^j = A^{j+p}`, `j ≥ 1`, by listing powers.
pub fn eventual_period(a: &Matrix) -> (usize, usize) {
    let mut seen: Vec<Matrix> = vec![a.clone()];
    loop {
        let next = compose(seen.last().unwrap(), a);
        if let Some(i) = seen.iter().position(|m| *m == next) {
            return (i + 1, seen.len() - i);
        }
        seen.push(next);
    }
}

/// All faces of the Dowker complex on the row side: nonempty sets of rows
/// with a common column.
pub fn dowker_faces_rows(a: &Matrix) -> BTreeSet<Vec<usize>> {
    let m = a.len();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << m) {
        let set: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let n = a.first().map_or(0, Vec::len);
        if (0..n).any(|y| set.iter().all(|&x| a[x][y])) {
            out.insert(set);
        }
    }
    out
}

pub fn transpose(a: &Matrix) -> Matrix {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Downward closure of `maximal`.
pub fn close(maximal: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for s in maximal {
        for mask in 1u32..(1 << s.len()) {
            out.insert(
                s.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect(),
            );
        }
    }
    out
}

/// Rank over Z/2 as `log2` of the size of the spanned subspace.
pub fn span_rank(columns: &[u128]) -> usize {
    let mut span: HashSet<u128> = HashSet::from([0]);
    for &c in columns {
        let shifted: Vec<u128> = span.iter().map(|v| v ^ c).collect();
        span.extend(shifted);
    }
    span.len().trailing_zeros() as usize
}

/// Betti numbers up to `cap` from an explicit face set.
pub fn brute_betti(faces: &BTreeSet<Vec<usize>>, cap: usize) -> Vec<usize> {
    let by_dim =
        |d: usize| -> Vec<&Vec<usize>> { faces.iter().filter(|f| f.len() == d + 1).collect() };
    let boundary_rank = |d: usize| -> usize {
        if d == 0 {
            return 0;
        }
        let lower = by_dim(d - 1);
        let cols: Vec<u128> = by_dim(d)
            .iter()
            .map(|f| {
                (0..f.len()).fold(0u128, |acc, drop| {
                    let face: Vec<usize> = f
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, &v)| v)
                        .collect();
                    let row = lower.iter().position(|g| **g == face).unwrap();
                    acc | 1 << row
                })
            })
            .collect();
        span_rank(&cols)
    };
    (0..=cap)
        .map(|d| by_dim(d).len() - boundary_rank(d) - boundary_rank(d + 1))
        .collect()
}

/// Number of weakly connected components of the directed graph.
pub fn weak_components(a: &Matrix) -> usize {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if (a[v][w] || a[w][v]) && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

pub fn reachable(a: &Matrix) -> Matrix {
    let n = a.len();
    let mut r = a.clone();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                r[i][j] = r[i][j] || (r[i][k] && r[k][j]);
            }
        }
    }
    r
}

pub fn strongly_connected(a: &Matrix) -> bool {
    let r = reachable(a);
    (0..a.len()).all(|i| (0..a.len()).all(|j| r[i][j]))
}

/// Random strongly connected relation with at least one cycle, by rejection.
pub fn random_strongly_connected(rng: &mut ChaCha8Rng, max_n: usize) -> Matrix {
    loop {
        let n = rng.gen_range(1..=max_n);
        let density = rng.gen_range(0.15..0.7);
        let m = random_matrix(rng, n, n, density);
        if strongly_connected(&m) && m.iter().flatten().any(|&b| b) {
            return m;
        }
    }
}

/// Random DAG edges along a shuffled order, with self-loops on the sinks.
pub fn random_total_acyclic(rng: &mut ChaCha8Rng, max_n: usize) -> Matrix {
    let n = rng.gen_range(1..=max_n);
    let density = rng.gen_range(0.0..0.6);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut m = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                m[order[i]][order[j]] = true;
            }
        }
    }
    for (v, row) in m.iter_mut().enumerate() {
        if !row.contains(&true) {
            row[v] = true;
        }
    }
    m
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// `{(φ(a), φ(b)) : a R b}`.
pub fn conjugate(a: &Matrix, phi: &[usize]) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[phi[i]][phi[j]] = a[i][j];
        }
    }
    out
}

/// Every `m × n` boolean matrix.
pub fn all_matrices(m: usize, n: usize) -> Vec<Matrix> {
    (0u32..1 << (m * n))
        .map(|bits| {
            (0..m)
                .map(|i| (0..n).map(|j| bits >> (i * n + j) & 1 == 1).collect())
                .collect()
        })
        .collect()
}

/// Exhaustive search for shift-equivalence witnesses `(S, T)` of lag `l`
/// between `r1` on `X` and `r2` on `Y`, capped at `limit`.
pub fn shift_witnesses(
    r1: &Matrix,
    r2: &Matrix,
    lag: usize,
    limit: usize,
) -> Vec<(Matrix, Matrix)> {
    let (nx, ny) = (r1.len(), r2.len());
    let (p1, p2) = (power(r1, lag), power(r2, lag));
    // T ∘ R2 = R1 ∘ T does not involve S, so filter T once
    let ts: Vec<Matrix> = all_matrices(ny, nx)
        .into_iter()
        .filter(|t| compose(r2, t) == compose(t, r1))
        .collect();
    let mut out = Vec::new();
    for s in all_matrices(nx, ny) {
        if compose(r1, &s) != compose(&s, r2) {
            continue;
        }
        for t in &ts {
            if compose(&s, t) == p1 && compose(t, &s) == p2 {
                out.push((s.clone(), t.clone()));
                if out.len() == limit {
                    return out;
                }
            }
        }
    }
    out
}
