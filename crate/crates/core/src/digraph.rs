//! Graph-theoretic analysis of a self-relation viewed as a directed graph
//! with self-loops allowed.
//!
//! Vertex sets are returned as indices into [`SelfRelation::labels`].

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::relation::SelfRelation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    /// Undirected reachability.
    Path,
    /// Mutual directed reachability.
    Walk,
}

/// A partition of the vertex indices. Blocks are sorted internally and
/// ordered by their smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub kind: ComponentKind,
    pub blocks: Vec<Vec<usize>>,
}

impl ComponentPartition {
    fn canonical(kind: ComponentKind, mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.retain(|b| !b.is_empty());
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Self { kind, blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `v`.
    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&v).is_ok())
    }

    pub fn labeled(&self, labels: &[String]) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&v| labels[v].clone()).collect())
            .collect()
    }
}

/// The cycle-length gcd `q` of a strongly connected relation and its `q`
/// residue classes. Class `c` holds the vertices at BFS distance `≡ c (mod q)`
/// from vertex 0, so every edge goes from class `c` to class `c + 1 mod q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QStructure {
    pub q: usize,
    pub classes: Vec<Vec<usize>>,
}

impl QStructure {
    pub fn class_of(&self, v: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&v))
            .expect("classes cover every vertex")
    }
}

fn to_petgraph(r: &SelfRelation) -> DiGraph<(), ()> {
    let mut g = DiGraph::with_capacity(r.vertex_count(), r.len());
    for _ in 0..r.vertex_count() {
        g.add_node(());
    }
    for (i, j) in r.pairs() {
        g.add_edge(NodeIndex::new(i), NodeIndex::new(j), ());
    }
    g
}

pub fn connected_components(r: &SelfRelation) -> ComponentPartition {
    let n = r.vertex_count();
    let mut uf = UnionFind::new(n);
    for (i, j) in r.pairs() {
        uf.union(i, j);
    }
    let mut blocks = vec![Vec::new(); n];
    for v in 0..n {
        blocks[uf.find(v)].push(v);
    }
    ComponentPartition::canonical(ComponentKind::Path, blocks)
}

pub fn strongly_connected_components(r: &SelfRelation) -> ComponentPartition {
    let blocks = tarjan_scc(&to_petgraph(r))
        .into_iter()
        .map(|scc| scc.into_iter().map(|v| v.index()).collect())
        .collect();
    ComponentPartition::canonical(ComponentKind::Walk, blocks)
}

pub fn is_strongly_connected(r: &SelfRelation) -> bool {
    r.vertex_count() > 0 && strongly_connected_components(r).len() == 1
}

/// No directed cycle of length two or more. Self-loops are fixed points and
/// do not count against acyclicity.
pub fn is_acyclic(r: &SelfRelation) -> bool {
    strongly_connected_components(r)
        .blocks
        .iter()
        .all(|b| b.len() == 1)
}

/// Any two cycles are vertex-disjoint or identical.
///
/// Every nontrivial strongly connected component must be a bare directed
/// cycle: one in-edge and one out-edge inside the component per vertex and
/// no self-loop.
pub fn is_simple(r: &SelfRelation) -> bool {
    let sccs = strongly_connected_components(r);
    for block in sccs.blocks.iter().filter(|b| b.len() > 1) {
        let mut in_degree = vec![0usize; block.len()];
        for &v in block {
            if r.get(v, v) {
                return false;
            }
            let mut out = 0;
            for w in r.successors(v) {
                if let Ok(k) = block.binary_search(&w) {
                    out += 1;
                    in_degree[k] += 1;
                }
            }
            if out != 1 {
                return false;
            }
        }
        if in_degree.iter().any(|&d| d != 1) {
            return false;
        }
    }
    true
}

fn bfs_distances(r: &SelfRelation, root: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; r.vertex_count()];
    dist[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].expect("queued vertices have a distance");
        for v in r.successors(u) {
            if dist[v].is_none() {
                dist[v] = Some(d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn strongly_connected_distances(r: &SelfRelation) -> Result<Vec<usize>> {
    if !is_strongly_connected(r) {
        return Err(Error::NotStronglyConnected);
    }
    Ok(bfs_distances(r, 0)
        .into_iter()
        .map(|d| d.expect("strongly connected"))
        .collect())
}

/// gcd of all directed cycle lengths of a strongly connected relation.
///
/// With BFS levels `d` from any root, every edge `(u, v)` closes a walk whose
/// length differs from a cycle combination by `d(u) + 1 - d(v)`; the gcd of
/// these offsets over all edges is the gcd of the cycle lengths.
pub fn graph_period_q(r: &SelfRelation) -> Result<usize> {
    let dist = strongly_connected_distances(r)?;
    let q = r
        .pairs()
        .map(|(u, v)| (dist[u] + 1).abs_diff(dist[v]))
        .fold(0, gcd);
    if q == 0 {
        return Err(Error::NoCycle);
    }
    Ok(q)
}

/// The `q` classes of walk-length residues.
pub fn q_classes(r: &SelfRelation) -> Result<QStructure> {
    let q = graph_period_q(r)?;
    let dist = strongly_connected_distances(r)?;
    let mut classes = vec![Vec::new(); q];
    for (v, d) in dist.into_iter().enumerate() {
        classes[d % q].push(v);
    }
    Ok(QStructure { q, classes })
}

/// Vertices with no `R^∞`-successor other than themselves.
pub fn minima(r: &SelfRelation) -> Result<Vec<usize>> {
    let inf = r.r_infinity()?;
    Ok((0..inf.vertex_count())
        .filter(|&x| inf.row(x).ones().all(|y| y == x))
        .collect())
}

/// Vertices with no `R^∞`-predecessor other than themselves.
pub fn maxima(r: &SelfRelation) -> Result<Vec<usize>> {
    let inf = r.r_infinity()?;
    Ok((0..inf.vertex_count())
        .filter(|&x| inf.column(x).ones().all(|y| y == x))
        .collect())
}

/// `U_x = { y : y R^∞ x }`.
pub fn up_set(r: &SelfRelation, x: usize) -> Result<Vec<usize>> {
    Ok(r.r_infinity()?.column(x).ones().collect())
}

/// `D_x = { y : x R^∞ y }`.
pub fn down_set(r: &SelfRelation, x: usize) -> Result<Vec<usize>> {
    Ok(r.r_infinity()?.row(x).ones().collect())
}

pub fn has_positive_trace(r: &SelfRelation) -> bool {
    (0..r.vertex_count()).any(|i| r.get(i, i))
}

/// Least common multiple of the cycle lengths of a simple relation: the
/// smallest power at which every cycle collapses to fixed points.
pub fn cycle_lcm(r: &SelfRelation) -> usize {
    strongly_connected_components(r)
        .blocks
        .iter()
        .map(|b| b.len())
        .fold(1, |acc, l| acc / gcd(acc, l) * l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    /// Elementary directed cycles by exhaustive DFS, each reported once as the
    /// vertex list starting at its smallest vertex.
    fn brute_cycles(r: &SelfRelation) -> Vec<Vec<usize>> {
        fn dfs(r: &SelfRelation, start: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let last = *path.last().unwrap();
            for w in r.successors(last) {
                if w == start {
                    out.push(path.clone());
                } else if w > start && !path.contains(&w) {
                    path.push(w);
                    dfs(r, start, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        for s in 0..r.vertex_count() {
            dfs(r, s, &mut vec![s], &mut out);
        }
        out
    }

    fn rel(n: usize, edges: &[(usize, usize)]) -> SelfRelation {
        let mut rows = vec![vec![false; n]; n];
        for &(a, b) in edges {
            rows[a][b] = true;
        }
        SelfRelation::from_matrix(&rows, None).unwrap()
    }

    #[test]
    fn components_of_fixtures() {
        assert_eq!(connected_components(&fix_n()).len(), 1);
        assert_eq!(connected_components(&fix_i3()).len(), 3);
        assert_eq!(connected_components(&fix_c3()).len(), 1);
        assert_eq!(
            strongly_connected_components(&fix_n()).blocks,
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(
            strongly_connected_components(&fix_c3()).blocks,
            vec![vec![0, 1, 2]]
        );
        assert_eq!(strongly_connected_components(&fix_j3()).len(), 1);
    }

    #[test]
    fn acyclic_and_simple() {
        assert!(is_acyclic(&fix_n()));
        assert!(!is_acyclic(&fix_c3()));
        assert!(is_acyclic(&fix_i3()));
        assert!(is_simple(&fix_c3()));
        assert!(!is_simple(&fix_j3()));
        assert!(is_simple(&fix_n()));
        // brute force on J3: the loop at x1 and the 2-cycle x1 x2 overlap
        let cycles = brute_cycles(&fix_j3());
        assert!(cycles.contains(&vec![0]));
        assert!(cycles.contains(&vec![0, 1]));
    }

    #[test]
    fn q_of_cycles_and_complete() {
        assert_eq!(graph_period_q(&fix_c3()), Ok(3));
        assert_eq!(graph_period_q(&fix_j3()), Ok(1));
        assert_eq!(graph_period_q(&cycle(4)), Ok(4));
        assert_eq!(graph_period_q(&fix_n()), Err(Error::NotStronglyConnected));
        let single = SelfRelation::from_matrix(&[vec![false]], None).unwrap();
        assert_eq!(graph_period_q(&single), Err(Error::NoCycle));
    }

    #[test]
    fn q_classes_of_fixtures() {
        let c3 = q_classes(&fix_c3()).unwrap();
        assert_eq!(c3.classes, vec![vec![0], vec![1], vec![2]]);
        let j3 = q_classes(&fix_j3()).unwrap();
        assert_eq!(j3.classes, vec![vec![0, 1, 2]]);
        let c4 = q_classes(&cycle(4)).unwrap();
        assert_eq!(c4.q, 4);
        assert!(c4.classes.iter().all(|c| c.len() == 1));
        assert_eq!(q_classes(&fix_n()), Err(Error::NotStronglyConnected));
    }

    #[test]
    fn minima_and_sets() {
        assert_eq!(minima(&fix_i3()).unwrap(), vec![0, 1, 2]);
        assert_eq!(minima(&fix_n()).unwrap(), vec![0, 1, 2]);
        assert!(minima(&fix_c3()).is_err());

        // chain x1 -> x2 -> x3 with a loop on x3: R^2 = R^3 sends every vertex to x3
        let chain = chain_with_sink_loop();
        let powers = chain.powers(4);
        assert_eq!(powers[1], powers[2]);
        assert_ne!(powers[0], powers[1]);
        assert_eq!(down_set(&chain, 0).unwrap(), vec![2]);
        assert_eq!(up_set(&chain, 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(minima(&chain).unwrap(), vec![2]);
        assert_eq!(maxima(&chain).unwrap(), vec![0, 1]);
    }

    #[test]
    fn positive_trace() {
        assert!(has_positive_trace(&fix_j3()));
        assert!(!has_positive_trace(&fix_c3()));
        assert!(!has_positive_trace(&fix_n()));
    }

    #[test]
    fn acyclic_matches_brute_force_exhaustively_on_three_vertices() {
        for bits in 0u32..512 {
            let rows: Vec<Vec<bool>> = (0..3)
                .map(|i| (0..3).map(|j| bits >> (3 * i + j) & 1 == 1).collect())
                .collect();
            let r = SelfRelation::from_matrix(&rows, None).unwrap();
            let cycles = brute_cycles(&r);
            let long = cycles.iter().any(|c| c.len() >= 2);
            assert_eq!(is_acyclic(&r), !long, "{r:?}");
            let simple = cycles.iter().enumerate().all(|(a, c1)| {
                cycles[a + 1..]
                    .iter()
                    .all(|c2| c1.iter().all(|v| !c2.contains(v)))
            });
            assert_eq!(is_simple(&r), simple, "{r:?}");
            if is_strongly_connected(&r) && !cycles.is_empty() {
                let g = cycles.iter().map(|c| c.len()).fold(0, gcd);
                assert_eq!(graph_period_q(&r), Ok(g), "{r:?}");
            }
        }
    }

    #[test]
    fn q_divisibility_has_counterexamples() {
        // strongly connected, cycle gcd 2, yet index 3
        let r = rel(4, &[(0, 1), (0, 2), (1, 3), (2, 0), (2, 3), (3, 2)]);
        assert!(is_strongly_connected(&r));
        assert_eq!(graph_period_q(&r), Ok(2));
        let ep = r.eventual_period();
        assert_eq!((ep.index, ep.period), (3, 2));
        // the component count at the stable power still equals q
        let rj = r.power(3);
        assert_eq!(crate::dowker::dowker_k(&rj).betti_numbers(0).get(0), 2);
        assert_eq!(crate::dowker::dowker_l(&rj).betti_numbers(0).get(0), 2);
    }
}
