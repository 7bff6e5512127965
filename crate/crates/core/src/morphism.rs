//! Verification of maps between relations: graph homomorphisms, right and
//! left morphisms and their multivalued versions, conjugacies, and
//! shift-equivalence witnesses.
//!
//! Every check returns a [`Verdict`] that names the first violated pair or
//! equation. Label mismatches between the inputs are errors, not verdicts.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::dowker::{dowker_k, dowker_l};
use crate::error::{Error, Result};
use crate::relation::{compose, Labels, Relation, SelfRelation};

/// A total map between two label sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    domain: Labels,
    codomain: Labels,
    image: Vec<usize>,
}

impl VertexMap {
    /// Builds the map from `(source, image)` label pairs; every domain label
    /// must appear exactly once.
    pub fn from_pairs<A: AsRef<str>, B: AsRef<str>>(
        domain: &[String],
        codomain: &[String],
        pairs: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Self> {
        let mut image = vec![None; domain.len()];
        for (a, b) in pairs {
            let i = position(domain, a.as_ref())?;
            let j = position(codomain, b.as_ref())?;
            if image[i].replace(j).is_some_and(|prev| prev != j) {
                return Err(Error::Precondition(format!(
                    "`{}` is mapped twice",
                    a.as_ref()
                )));
            }
        }
        let image = image
            .into_iter()
            .enumerate()
            .map(|(i, j)| j.ok_or_else(|| Error::IncompleteMap(domain[i].clone())))
            .collect::<Result<_>>()?;
        Ok(Self {
            domain: domain.to_vec().into(),
            codomain: codomain.to_vec().into(),
            image,
        })
    }

    pub fn from_indices(domain: &[String], codomain: &[String], image: Vec<usize>) -> Result<Self> {
        if image.len() != domain.len() {
            return Err(Error::LabelCount {
                side: "map domain",
                expected: domain.len(),
                found: image.len(),
            });
        }
        if let Some(&bad) = image.iter().find(|&&j| j >= codomain.len()) {
            return Err(Error::UnknownVertex(format!("index {bad}")));
        }
        Ok(Self {
            domain: domain.to_vec().into(),
            codomain: codomain.to_vec().into(),
            image,
        })
    }

    pub fn identity(labels: &[String]) -> Self {
        Self {
            domain: labels.to_vec().into(),
            codomain: labels.to_vec().into(),
            image: (0..labels.len()).collect(),
        }
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn codomain(&self) -> &[String] {
        &self.codomain
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn is_bijective(&self) -> bool {
        if self.domain.len() != self.codomain.len() {
            return false;
        }
        let mut hit = vec![false; self.codomain.len()];
        self.image
            .iter()
            .all(|&j| !std::mem::replace(&mut hit[j], true))
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.codomain.len()];
        self.image
            .iter()
            .all(|&j| !std::mem::replace(&mut hit[j], true))
    }

    /// The relation `{(x, f(x))}`.
    pub fn as_relation(&self) -> Relation {
        Relation::graph_of(self.domain.clone(), self.codomain.clone(), &self.image)
    }

    /// Each vertex sent to a singleton.
    pub fn to_multi(&self) -> MultiMap {
        MultiMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            images: self
                .image
                .iter()
                .map(|&j| {
                    let mut b = FixedBitSet::with_capacity(self.codomain.len());
                    b.insert(j);
                    b
                })
                .collect(),
        }
    }
}

fn position(labels: &[String], l: &str) -> Result<usize> {
    labels
        .iter()
        .position(|x| x == l)
        .ok_or_else(|| Error::UnknownVertex(l.to_string()))
}

/// A multivalued map: each domain vertex goes to a (possibly empty) set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiMap {
    domain: Labels,
    codomain: Labels,
    images: Vec<FixedBitSet>,
}

impl MultiMap {
    pub fn from_sets<A: AsRef<str>, B: AsRef<str>>(
        domain: &[String],
        codomain: &[String],
        sets: impl IntoIterator<Item = (A, Vec<B>)>,
    ) -> Result<Self> {
        let mut images: Vec<Option<FixedBitSet>> = vec![None; domain.len()];
        for (a, bs) in sets {
            let i = position(domain, a.as_ref())?;
            let mut set = FixedBitSet::with_capacity(codomain.len());
            for b in bs {
                set.insert(position(codomain, b.as_ref())?);
            }
            images[i] = Some(set);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::IncompleteMap(domain[i].clone())))
            .collect::<Result<_>>()?;
        Ok(Self {
            domain: domain.to_vec().into(),
            codomain: codomain.to_vec().into(),
            images,
        })
    }

    /// Reads a relation `F ⊂ A × B` as the multivalued map `a ↦ F(a)`.
    pub fn from_relation(r: &Relation) -> Self {
        Self {
            domain: r.shared_source(),
            codomain: r.shared_target(),
            images: (0..r.shape().0).map(|i| r.row(i).clone()).collect(),
        }
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn codomain(&self) -> &[String] {
        &self.codomain
    }

    pub fn image(&self, i: usize) -> &FixedBitSet {
        &self.images[i]
    }
}

/// The first pair or equation that breaks a morphism condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `source R target` holds but its image is missing from the other relation.
    Pair {
        source: String,
        target: String,
        missing: (String, String),
    },
    /// A relational equation fails; `witness` is a pair in one side only.
    Equation {
        name: &'static str,
        witness: (String, String),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Pair {
                source,
                target,
                missing,
            } => write!(
                f,
                "({source}, {target}) is related but its image ({}, {}) is not",
                missing.0, missing.1
            ),
            Violation::Equation { name, witness } => {
                write!(f, "{name} fails at ({}, {})", witness.0, witness.1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Violation),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(v) => Some(v),
        }
    }
}

fn same(a: &[String], b: &[String], what: &str) -> Result<()> {
    if a != b {
        return Err(Error::LabelMismatch(format!(
            "{what}: [{}] vs [{}]",
            a.join(" "),
            b.join(" ")
        )));
    }
    Ok(())
}

fn pair_violation(r: &Relation, x: usize, y: usize, img: (String, String)) -> Verdict {
    Verdict::Fails(Violation::Pair {
        source: r.source_labels()[x].clone(),
        target: r.target_labels()[y].clone(),
        missing: img,
    })
}

/// `x1 R x2 ⟹ f(x1) R' f(x2)`.
pub fn is_graph_homomorphism(
    f: &VertexMap,
    r: &SelfRelation,
    r2: &SelfRelation,
) -> Result<Verdict> {
    same(f.domain(), r.labels(), "map domain and source relation")?;
    same(
        f.codomain(),
        r2.labels(),
        "map codomain and target relation",
    )?;
    for (a, b) in r.pairs() {
        let (fa, fb) = (f.apply(a), f.apply(b));
        if !r2.get(fa, fb) {
            let img = (r2.labels()[fa].clone(), r2.labels()[fb].clone());
            return Ok(pair_violation(r, a, b, img));
        }
    }
    Ok(Verdict::Holds)
}

/// Right morphism `f: (X, Y, R) → (X, Z, R')` with `f: Y → Z`:
/// `x R y ⟹ x R' f(y)`.
pub fn is_right_morphism(f: &VertexMap, r: &Relation, r2: &Relation) -> Result<Verdict> {
    is_multi_right_morphism(&f.to_multi(), r, r2)
}

/// Left morphism `g: (X, Z, R) → (Y, Z, R')` with `g: X → Y`:
/// `x R z ⟹ g(x) R' z`.
pub fn is_left_morphism(g: &VertexMap, r: &Relation, r2: &Relation) -> Result<Verdict> {
    is_multi_left_morphism(&g.to_multi(), r, r2)
}

/// `x R y ⟹ x R' a` for every `a ∈ F(y)`.
pub fn is_multi_right_morphism(f: &MultiMap, r: &Relation, r2: &Relation) -> Result<Verdict> {
    same(r.source_labels(), r2.source_labels(), "shared source set")?;
    same(f.domain(), r.target_labels(), "map domain and targets of R")?;
    same(
        f.codomain(),
        r2.target_labels(),
        "map codomain and targets of R'",
    )?;
    for (x, y) in r.pairs() {
        if let Some(a) = f.image(y).ones().find(|&a| !r2.get(x, a)) {
            let img = (r2.source_labels()[x].clone(), r2.target_labels()[a].clone());
            return Ok(pair_violation(r, x, y, img));
        }
    }
    Ok(Verdict::Holds)
}

/// `x R z ⟹ a R' z` for every `a ∈ G(x)`.
pub fn is_multi_left_morphism(g: &MultiMap, r: &Relation, r2: &Relation) -> Result<Verdict> {
    same(r.target_labels(), r2.target_labels(), "shared target set")?;
    same(g.domain(), r.source_labels(), "map domain and sources of R")?;
    same(
        g.codomain(),
        r2.source_labels(),
        "map codomain and sources of R'",
    )?;
    for (x, z) in r.pairs() {
        if let Some(a) = g.image(x).ones().find(|&a| !r2.get(a, z)) {
            let img = (r2.source_labels()[a].clone(), r2.target_labels()[z].clone());
            return Ok(pair_violation(r, x, z, img));
        }
    }
    Ok(Verdict::Holds)
}

fn equation(name: &'static str, lhs: &Relation, rhs: &Relation) -> Option<Violation> {
    debug_assert_eq!(lhs.shape(), rhs.shape());
    let (m, n) = lhs.shape();
    for i in 0..m {
        for j in 0..n {
            if lhs.get(i, j) != rhs.get(i, j) {
                return Some(Violation::Equation {
                    name,
                    witness: (
                        lhs.source_labels()[i].clone(),
                        lhs.target_labels()[j].clone(),
                    ),
                });
            }
        }
    }
    None
}

/// Conjugacy `φ ∘ R1 = R2 ∘ φ` for a bijection `φ: X1 → X2`.
pub fn is_conjugacy(phi: &VertexMap, r1: &SelfRelation, r2: &SelfRelation) -> Result<Verdict> {
    same(phi.domain(), r1.labels(), "map domain and R1")?;
    same(phi.codomain(), r2.labels(), "map codomain and R2")?;
    if !phi.is_bijective() {
        return Err(Error::NotBijective);
    }
    let graph = phi.as_relation();
    let lhs = compose(&graph, r1)?;
    let rhs = compose(r2, &graph)?;
    Ok(match equation("φ ∘ R1 = R2 ∘ φ", &lhs, &rhs) {
        Some(v) => Verdict::Fails(v),
        None => Verdict::Holds,
    })
}

/// Relations `S ⊂ X × Y`, `T ⊂ Y × X` and a lag `l ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftWitness {
    pub s: Relation,
    pub t: Relation,
    pub lag: usize,
}

/// The four shift-equivalence equations:
/// `R1 ∘ T = T ∘ R2`, `S ∘ R1 = R2 ∘ S`, `T ∘ S = R1^l`, `S ∘ T = R2^l`.
pub fn verify_shift_equivalence(
    r1: &SelfRelation,
    r2: &SelfRelation,
    w: &ShiftWitness,
) -> Result<Verdict> {
    same(w.s.source_labels(), r1.labels(), "sources of S and R1")?;
    same(w.s.target_labels(), r2.labels(), "targets of S and R2")?;
    same(w.t.source_labels(), r2.labels(), "sources of T and R2")?;
    same(w.t.target_labels(), r1.labels(), "targets of T and R1")?;
    if w.lag == 0 {
        return Err(Error::Precondition("lag must be positive".into()));
    }
    let (s, t) = (&w.s, &w.t);
    let checks = [
        ("R1 ∘ T = T ∘ R2", compose(r1, t)?, compose(t, r2)?),
        ("S ∘ R1 = R2 ∘ S", compose(s, r1)?, compose(r2, s)?),
        (
            "T ∘ S = R1^l",
            compose(t, s)?,
            r1.power(w.lag as i64).into_relation(),
        ),
        (
            "S ∘ T = R2^l",
            compose(s, t)?,
            r2.power(w.lag as i64).into_relation(),
        ),
    ];
    for (name, lhs, rhs) in &checks {
        if let Some(v) = equation(name, lhs, rhs) {
            return Ok(Verdict::Fails(v));
        }
    }
    Ok(Verdict::Holds)
}

/// Outcome of comparing the Dowker complexes on either side of a morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InclusionReport {
    /// The source complex is a subcomplex of the target complex.
    pub included: bool,
    /// The two complexes are equal.
    pub equal: bool,
}

/// For a right morphism `f`, compares `K_R` with `K_{R'}`; `included` must
/// hold. Equality follows when `f` is bijective and `R'` is exactly the image
/// of `R`, i.e. `x R' f(y) ⟺ x R y`.
pub fn assert_inclusion_from_right_morphism(
    f: &VertexMap,
    r: &Relation,
    r2: &Relation,
) -> Result<InclusionReport> {
    if let Verdict::Fails(v) = is_right_morphism(f, r, r2)? {
        return Err(Error::Precondition(format!("not a right morphism: {v}")));
    }
    let (k, k2) = (dowker_k(r), dowker_k(r2));
    Ok(InclusionReport {
        included: k.is_subcomplex(&k2)?,
        equal: k.equals(&k2)?,
    })
}

/// Left-morphism analogue on the `L` complexes.
pub fn assert_inclusion_from_left_morphism(
    g: &VertexMap,
    r: &Relation,
    r2: &Relation,
) -> Result<InclusionReport> {
    if let Verdict::Fails(v) = is_left_morphism(g, r, r2)? {
        return Err(Error::Precondition(format!("not a left morphism: {v}")));
    }
    let (l, l2) = (dowker_l(r), dowker_l(r2));
    Ok(InclusionReport {
        included: l.is_subcomplex(&l2)?,
        equal: l.equals(&l2)?,
    })
}

/// For an injective graph homomorphism, whether every maximal simplex of
/// `K_R` maps into `K_{R'}`.
pub fn homomorphism_maps_complex(f: &VertexMap, r: &SelfRelation, r2: &SelfRelation) -> bool {
    let k2 = dowker_k(r2);
    dowker_k(r).maximal().iter().all(|s| {
        let image: Vec<usize> = s.vertices().iter().map(|&v| f.apply(v)).collect();
        crate::simplicial::Simplex::new(image).is_ok_and(|img| k2.contains(&img))
    })
}

/// JSON form of a vertex map: `{"map": {"y1": "y1", "y3": "y1", ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub map: BTreeMap<String, String>,
}

/// JSON form of a multivalued map: `{"multimap": {"y1": ["a", "b"], ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiMapFile {
    pub multimap: BTreeMap<String, Vec<String>>,
}

/// JSON form of a shift witness: `{"S": [[0,1],...], "T": [[...]], "lag": 1}`.
/// Rows of `S` follow the labels of `R1`, columns those of `R2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    #[serde(rename = "S")]
    pub s: Vec<Vec<u8>>,
    #[serde(rename = "T")]
    pub t: Vec<Vec<u8>>,
    pub lag: usize,
}

impl WitnessFile {
    pub fn into_witness(self, r1: &SelfRelation, r2: &SelfRelation) -> Result<ShiftWitness> {
        let to_bool = |m: &[Vec<u8>]| -> Vec<Vec<bool>> {
            m.iter()
                .map(|r| r.iter().map(|&b| b != 0).collect())
                .collect()
        };
        let s = Relation::from_matrix(
            &to_bool(&self.s),
            Some(r1.labels().to_vec()),
            Some(r2.labels().to_vec()),
        )?;
        let t = Relation::from_matrix(
            &to_bool(&self.t),
            Some(r2.labels().to_vec()),
            Some(r1.labels().to_vec()),
        )?;
        Ok(ShiftWitness {
            s,
            t,
            lag: self.lag,
        })
    }

    pub fn from_witness(w: &ShiftWitness) -> Self {
        let to_u8 = |r: &Relation| -> Vec<Vec<u8>> {
            r.to_rows()
                .into_iter()
                .map(|row| row.into_iter().map(u8::from).collect())
                .collect()
        };
        Self {
            s: to_u8(&w.s),
            t: to_u8(&w.t),
            lag: w.lag,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::relation::default_labels;

    fn lbl(p: &str, n: usize) -> Vec<String> {
        default_labels(p, n)
    }

    #[test]
    fn homomorphisms() {
        let c = fix_c3();
        let id = VertexMap::identity(c.labels());
        assert!(is_graph_homomorphism(&id, &c, &c).unwrap().holds());

        let one = vec!["p".to_string()];
        let looped = SelfRelation::from_matrix(&[vec![true]], Some(one.clone())).unwrap();
        let bare = SelfRelation::from_matrix(&[vec![false]], Some(one.clone())).unwrap();
        let constant = VertexMap::from_indices(c.labels(), &one, vec![0, 0, 0]).unwrap();
        assert!(is_graph_homomorphism(&constant, &c, &looped)
            .unwrap()
            .holds());
        assert!(!is_graph_homomorphism(&constant, &c, &bare).unwrap().holds());
    }

    #[test]
    fn right_and_left() {
        let a = fix_a();
        let id = VertexMap::identity(a.target_labels());
        assert!(is_right_morphism(&id, &a, &a).unwrap().holds());
        let gid = VertexMap::identity(a.source_labels());
        assert!(is_left_morphism(&gid, &a, &a).unwrap().holds());

        // anything maps into the all-ones relation
        let full = Relation::from_matrix(&vec![vec![true; 2]; 4], None, Some(lbl("z", 2))).unwrap();
        let f =
            VertexMap::from_indices(a.target_labels(), &lbl("z", 2), vec![0, 1, 1, 0, 1]).unwrap();
        assert!(is_right_morphism(&f, &a, &full).unwrap().holds());

        // collapse y3 onto y1: x2 R y3 but not x2 R y1
        let collapse = VertexMap::from_pairs(
            a.target_labels(),
            a.target_labels(),
            [
                ("y1", "y1"),
                ("y2", "y2"),
                ("y3", "y1"),
                ("y4", "y4"),
                ("y5", "y5"),
            ],
        )
        .unwrap();
        let v = is_right_morphism(&collapse, &a, &a).unwrap();
        assert_eq!(
            v.violation(),
            Some(&Violation::Pair {
                source: "x2".into(),
                target: "y3".into(),
                missing: ("x2".into(), "y1".into()),
            })
        );
    }

    #[test]
    fn mismatched_labels_error() {
        let a = fix_a();
        let wrong = VertexMap::identity(a.source_labels());
        assert!(matches!(
            is_right_morphism(&wrong, &a, &a),
            Err(Error::LabelMismatch(_))
        ));
    }

    #[test]
    fn multi_morphisms() {
        // R as a multi-right morphism from (X, X, R^n) to (X, X, R^{n+1})
        let r = hollow_then_filled();
        assert!(r.is_total());
        let f = MultiMap::from_relation(&r);
        for n in 1..4 {
            let rn = r.power(n);
            let rn1 = r.power(n + 1);
            assert!(is_multi_right_morphism(&f, &rn, &rn1).unwrap().holds());
        }
        // an image vertex unrelated to x
        let a = fix_a();
        let g = MultiMap::from_sets(
            a.target_labels(),
            a.target_labels(),
            a.target_labels()
                .iter()
                .map(|y| (y.clone(), vec![y.clone(), "y2".to_string()])),
        )
        .unwrap();
        assert!(!is_multi_right_morphism(&g, &a, &a).unwrap().holds());
    }

    #[test]
    fn conjugacies() {
        let c = fix_c3();
        assert!(is_conjugacy(&VertexMap::identity(c.labels()), &c, &c)
            .unwrap()
            .holds());
        let rot = VertexMap::from_indices(c.labels(), c.labels(), vec![1, 2, 0]).unwrap();
        assert!(is_conjugacy(&rot, &c, &c).unwrap().holds());
        let n = fix_n();
        let swap = VertexMap::from_indices(n.labels(), n.labels(), vec![1, 0, 2]).unwrap();
        assert!(!is_conjugacy(&swap, &n, &n).unwrap().holds());
        let collapse = VertexMap::from_indices(n.labels(), n.labels(), vec![0, 0, 2]).unwrap();
        assert_eq!(is_conjugacy(&collapse, &n, &n), Err(Error::NotBijective));
    }

    #[test]
    fn shift_witnesses() {
        let j = fix_j3();
        let w = ShiftWitness {
            s: j.as_relation().clone(),
            t: j.as_relation().clone(),
            lag: 1,
        };
        assert!(verify_shift_equivalence(&j, &j, &w).unwrap().holds());
        let i = fix_i3();
        let w = ShiftWitness {
            s: i.as_relation().clone(),
            t: i.as_relation().clone(),
            lag: 1,
        };
        assert!(verify_shift_equivalence(&i, &i, &w).unwrap().holds());
        let bad = ShiftWitness {
            lag: 1,
            ..w.clone()
        };
        let v = verify_shift_equivalence(&fix_c3(), &i, &bad).unwrap();
        assert!(!v.holds());
        let zero = ShiftWitness { lag: 0, ..w };
        assert!(verify_shift_equivalence(&i, &i, &zero).is_err());
    }

    #[test]
    fn inclusions() {
        let a = fix_a();
        let id = VertexMap::identity(a.target_labels());
        let same = assert_inclusion_from_right_morphism(&id, &a, &a).unwrap();
        assert!(same.included && same.equal);
        // adding pairs keeps the identity a right morphism; the complex grows
        let mut rows = a.to_rows();
        rows[1][0] = true;
        let bigger = Relation::from_matrix(&rows, None, None).unwrap();
        let grown = assert_inclusion_from_right_morphism(&id, &a, &bigger).unwrap();
        assert!(grown.included && !grown.equal);
        assert!(assert_inclusion_from_right_morphism(&id, &bigger, &a).is_err());
        let gid = VertexMap::identity(a.source_labels());
        assert!(
            assert_inclusion_from_left_morphism(&gid, &a, &bigger)
                .unwrap()
                .included
        );
    }

    #[test]
    fn witness_file_round_trip() {
        let j = fix_j3();
        let w = ShiftWitness {
            s: j.as_relation().clone(),
            t: j.as_relation().clone(),
            lag: 1,
        };
        let file = WitnessFile::from_witness(&w);
        let json = serde_json::to_string(&file).unwrap();
        assert_eq!(
            json,
            r#"{"S":[[1,1,1],[1,1,1],[1,1,1]],"T":[[1,1,1],[1,1,1],[1,1,1]],"lag":1}"#
        );
        let back: WitnessFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_witness(&j, &j).unwrap(), w);
    }
}
