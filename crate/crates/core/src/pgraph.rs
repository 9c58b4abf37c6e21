//! Finite materialized P-graphs.
//!
//! A [`PGraph`] is a finite small category with a degree functor. It is either
//! closed under composition, or it is the window of a larger graph: all
//! morphisms of degree at most the window bound, with composition defined
//! exactly when the composite degree stays inside the window.
//!
//! Composition follows the convention `λμ` is defined when `s(λ) = r(μ)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree::{Degree, DegreeClass, DegreeError, DegreeMonoid, IncreasingSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MorphismId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown morphism {0}")]
    UnknownMorphism(String),
    #[error("morphism {0} has the identity degree but is not a unit")]
    IdentityDegree(String),
    #[error("{0} and {1} are not composable")]
    NotComposable(String, String),
    #[error("{0} lies outside the window")]
    OutsideWindow(String),
    #[error("edge {edge} has color {color}, expected 1..={rank}")]
    ColorOutOfRange {
        edge: String,
        color: usize,
        rank: usize,
    },
    #[error("edge {edge} refers to missing vertex {vertex}")]
    DanglingEdge { edge: String, vertex: String },
    #[error("malformed square {0}")]
    MalformedSquare(String),
    #[error("pair {pair} is sent to both {first} and {second}")]
    ConflictingSquare {
        pair: String,
        first: String,
        second: String,
    },
    #[error("no square for the pair {0}")]
    MissingSquare(String),
    #[error("cube condition fails on {word}: {left} vs {right}")]
    CubeViolation {
        word: String,
        left: String,
        right: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub range: VertexId,
    pub source: VertexId,
    pub degree: Degree,
}

/// A vertex and the name of its unit morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSpec {
    pub name: String,
    pub unit: String,
}

impl VertexSpec {
    /// A vertex whose unit carries the vertex name.
    pub fn named(name: &str) -> Self {
        VertexSpec {
            name: name.to_owned(),
            unit: name.to_owned(),
        }
    }
}

/// A non-unit morphism given by names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    #[serde(rename = "id")]
    pub name: String,
    pub range: String,
    pub source: String,
    pub degree: Degree,
}

#[derive(Clone, Debug)]
pub struct PGraph {
    monoid: DegreeMonoid,
    window: Option<Degree>,
    vertices: Vec<String>,
    units: Vec<MorphismId>,
    morphisms: Vec<Morphism>,
    composition: HashMap<(MorphismId, MorphismId), MorphismId>,
    by_name: HashMap<String, MorphismId>,
    factors: Vec<Vec<(MorphismId, MorphismId)>>,
    cones: Vec<BTreeSet<MorphismId>>,
    below: Vec<BTreeSet<MorphismId>>,
}

impl PGraph {
    /// Builds a graph from named data. Units are created for every vertex and
    /// composition with units is filled in unless given explicitly.
    pub fn new(
        monoid: DegreeMonoid,
        window: Option<Degree>,
        vertices: Vec<VertexSpec>,
        morphisms: Vec<MorphismSpec>,
        compositions: &[(String, String, String)],
    ) -> Result<Self, GraphError> {
        monoid.validate()?;
        if let Some(w) = &window {
            monoid.check(w)?;
        }
        let mut vertices = vertices;
        vertices.sort_by(|a, b| a.name.cmp(&b.name));
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.name.clone(), VertexId(i)).is_some() {
                return Err(GraphError::DuplicateName(v.name.clone()));
            }
        }
        let lookup = |name: &str| {
            vertex_index
                .get(name)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(name.to_owned()))
        };

        let mut records: Vec<Morphism> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| Morphism {
                name: v.unit.clone(),
                range: VertexId(i),
                source: VertexId(i),
                degree: monoid.identity(),
            })
            .collect();
        for spec in morphisms {
            monoid.check(&spec.degree)?;
            if monoid.is_identity(&spec.degree) {
                return Err(GraphError::IdentityDegree(spec.name));
            }
            if let Some(w) = &window {
                if !monoid.leq(&spec.degree, w)? {
                    return Err(GraphError::OutsideWindow(spec.name));
                }
            }
            records.push(Morphism {
                range: lookup(&spec.range)?,
                source: lookup(&spec.source)?,
                name: spec.name,
                degree: spec.degree,
            });
        }
        records.sort_by(|a, b| (&a.degree, &a.name).cmp(&(&b.degree, &b.name)));

        let mut by_name = HashMap::new();
        for (i, m) in records.iter().enumerate() {
            if by_name.insert(m.name.clone(), MorphismId(i)).is_some() {
                return Err(GraphError::DuplicateName(m.name.clone()));
            }
        }
        let mut units = vec![MorphismId(0); vertices.len()];
        for (i, m) in records.iter().enumerate() {
            if monoid.is_identity(&m.degree) {
                units[m.range.0] = MorphismId(i);
            }
        }

        let mut graph = PGraph {
            monoid,
            window,
            vertices: vertices.into_iter().map(|v| v.name).collect(),
            units,
            morphisms: records,
            composition: HashMap::new(),
            by_name,
            factors: Vec::new(),
            cones: Vec::new(),
            below: Vec::new(),
        };
        for (a, b, c) in compositions {
            let (a, b, c) = (graph.id(a)?, graph.id(b)?, graph.id(c)?);
            if graph.source(a) != graph.range(b) {
                return Err(GraphError::NotComposable(
                    graph.name(a).to_owned(),
                    graph.name(b).to_owned(),
                ));
            }
            let total = graph.monoid.compose(graph.degree(a), graph.degree(b))?;
            if !graph.window_admits(&total) {
                return Err(GraphError::OutsideWindow(format!(
                    "{}·{}",
                    graph.name(a),
                    graph.name(b)
                )));
            }
            graph.composition.insert((a, b), c);
        }
        for i in 0..graph.morphisms.len() {
            let l = MorphismId(i);
            let left = graph.unit(graph.range(l));
            let right = graph.unit(graph.source(l));
            graph.composition.entry((left, l)).or_insert(l);
            graph.composition.entry((l, right)).or_insert(l);
        }
        graph.reindex();
        Ok(graph)
    }

    fn reindex(&mut self) {
        let n = self.morphisms.len();
        self.factors = vec![Vec::new(); n];
        self.cones = vec![BTreeSet::new(); n];
        self.below = vec![BTreeSet::new(); n];
        let mut entries: Vec<_> = self.composition.iter().map(|(&k, &v)| (k, v)).collect();
        entries.sort();
        for ((a, b), c) in entries {
            self.factors[c.0].push((a, b));
            self.cones[a.0].insert(c);
            self.below[c.0].insert(a);
        }
    }

    /// Overwrites one composition entry. Used to exercise the validators.
    pub fn set_composite(&mut self, a: MorphismId, b: MorphismId, c: MorphismId) {
        self.composition.insert((a, b), c);
        self.reindex();
    }

    pub fn monoid(&self) -> &DegreeMonoid {
        &self.monoid
    }

    pub fn window(&self) -> Option<&Degree> {
        self.window.as_ref()
    }

    pub fn window_admits(&self, p: &Degree) -> bool {
        match &self.window {
            None => true,
            Some(w) => self.monoid.leq(p, w).unwrap_or(false),
        }
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = MorphismId> + '_ {
        (0..self.morphisms.len()).map(MorphismId)
    }

    pub fn morphism(&self, l: MorphismId) -> &Morphism {
        &self.morphisms[l.0]
    }

    pub fn name(&self, l: MorphismId) -> &str {
        &self.morphisms[l.0].name
    }

    pub fn names(&self, set: &BTreeSet<MorphismId>) -> Vec<String> {
        set.iter().map(|&l| self.name(l).to_owned()).collect()
    }

    pub fn id(&self, name: &str) -> Result<MorphismId, GraphError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownMorphism(name.to_owned()))
    }

    pub fn range(&self, l: MorphismId) -> VertexId {
        self.morphisms[l.0].range
    }

    pub fn source(&self, l: MorphismId) -> VertexId {
        self.morphisms[l.0].source
    }

    pub fn degree(&self, l: MorphismId) -> &Degree {
        &self.morphisms[l.0].degree
    }

    pub fn unit(&self, v: VertexId) -> MorphismId {
        self.units[v.0]
    }

    pub fn units(&self) -> &[MorphismId] {
        &self.units
    }

    pub fn is_unit(&self, l: MorphismId) -> bool {
        self.units.contains(&l)
    }

    /// Distinct degrees of morphisms, in canonical order.
    pub fn degrees(&self) -> Vec<Degree> {
        let set: BTreeSet<Degree> = self.morphisms.iter().map(|m| m.degree.clone()).collect();
        set.into_iter().collect()
    }

    pub fn compose(&self, a: MorphismId, b: MorphismId) -> Option<MorphismId> {
        self.composition.get(&(a, b)).copied()
    }

    /// All pairs `(μ, ν)` with `μν = λ`.
    pub fn factorizations(&self, l: MorphismId) -> &[(MorphismId, MorphismId)] {
        &self.factors[l.0]
    }

    /// The factorization `λ = μν` with `d(μ) = p`.
    pub fn factor(&self, l: MorphismId, p: &Degree) -> Option<(MorphismId, MorphismId)> {
        self.factors[l.0]
            .iter()
            .copied()
            .find(|&(mu, _)| self.degree(mu) == p)
    }

    /// `μ ⪯ λ`, i.e. `λ ∈ μΛ`.
    pub fn precedes(&self, mu: MorphismId, l: MorphismId) -> bool {
        self.cones[mu.0].contains(&l)
    }

    /// `λΛ` inside the materialized fragment.
    pub fn cone(&self, l: MorphismId) -> &BTreeSet<MorphismId> {
        &self.cones[l.0]
    }

    /// `{μ : μ ⪯ λ}`.
    pub fn divisors(&self, l: MorphismId) -> &BTreeSet<MorphismId> {
        &self.below[l.0]
    }

    /// `vΛ^{≤ bound}` in canonical order.
    pub fn from_vertex(&self, v: VertexId, bound: Option<&Degree>) -> Vec<MorphismId> {
        self.ids()
            .filter(|&l| self.range(l) == v)
            .filter(|&l| bound.is_none_or(|b| self.monoid.leq(self.degree(l), b).unwrap_or(false)))
            .collect()
    }

    /// Minimal common extensions of `μ` and `ν`.
    pub fn mce(&self, mu: MorphismId, nu: MorphismId) -> BTreeSet<MorphismId> {
        let common: BTreeSet<MorphismId> =
            self.cones[mu.0].intersection(&self.cones[nu.0]).copied().collect();
        common
            .iter()
            .copied()
            .filter(|&l| {
                !common
                    .iter()
                    .any(|&k| k != l && self.precedes(k, l))
            })
            .collect()
    }

    fn composite_in_window(&self, a: MorphismId, b: MorphismId) -> Option<Degree> {
        if self.source(a) != self.range(b) {
            return None;
        }
        let total = self.monoid.compose(self.degree(a), self.degree(b)).ok()?;
        self.window_admits(&total).then_some(total)
    }

    pub fn validate_category(&self) -> CategoryReport {
        let mut violations = Vec::new();
        let n = |l: MorphismId| self.name(l).to_owned();
        let shown = |l: Option<MorphismId>| l.map_or("undefined".to_owned(), &n);
        for l in self.ids() {
            let left = self.compose(self.unit(self.range(l)), l);
            if left != Some(l) {
                violations.push(CategoryViolation::LeftIdentity {
                    morphism: n(l),
                    got: shown(left),
                });
            }
            let right = self.compose(l, self.unit(self.source(l)));
            if right != Some(l) {
                violations.push(CategoryViolation::RightIdentity {
                    morphism: n(l),
                    got: shown(right),
                });
            }
        }
        let mut composable: Vec<Vec<MorphismId>> = vec![Vec::new(); self.len()];
        for a in self.ids() {
            for b in self.ids() {
                let Some(total) = self.composite_in_window(a, b) else {
                    continue;
                };
                composable[a.0].push(b);
                match self.compose(a, b) {
                    None => violations.push(CategoryViolation::MissingComposite {
                        pair: (n(a), n(b)),
                    }),
                    Some(c) => {
                        if *self.degree(c) != total {
                            violations.push(CategoryViolation::Degree {
                                pair: (n(a), n(b)),
                                composite: n(c),
                            });
                        }
                        if self.range(c) != self.range(a) || self.source(c) != self.source(b) {
                            violations.push(CategoryViolation::Endpoints {
                                pair: (n(a), n(b)),
                                composite: n(c),
                            });
                        }
                    }
                }
            }
        }
        for &(a, b) in self.composition.keys() {
            if self.composite_in_window(a, b).is_none() {
                violations.push(CategoryViolation::Spurious { pair: (n(a), n(b)) });
            }
        }
        for a in self.ids() {
            for &b in &composable[a.0] {
                for &c in &composable[b.0] {
                    let total = self
                        .monoid
                        .compose(self.degree(a), self.degree(b))
                        .and_then(|ab| self.monoid.compose(&ab, self.degree(c)));
                    if !total.is_ok_and(|t| self.window_admits(&t)) {
                        continue;
                    }
                    let left = self.compose(a, b).and_then(|ab| self.compose(ab, c));
                    let right = self.compose(b, c).and_then(|bc| self.compose(a, bc));
                    if left.is_none() || left != right {
                        violations.push(CategoryViolation::Associativity {
                            triple: (n(a), n(b), n(c)),
                            left: shown(left),
                            right: shown(right),
                        });
                    }
                }
            }
        }
        violations.sort();
        violations.dedup();
        CategoryReport {
            morphisms: self.len(),
            violations,
        }
    }

    /// Every morphism must factor exactly once through every splitting of its
    /// degree.
    pub fn validate_ufp(&self) -> UfpReport {
        let mut violations = Vec::new();
        for l in self.ids() {
            let Ok(splits) = self.monoid.divisors(self.degree(l)) else {
                continue;
            };
            for p in splits {
                let count = self.factors[l.0]
                    .iter()
                    .filter(|&&(mu, _)| *self.degree(mu) == p)
                    .count();
                if count != 1 {
                    violations.push(UfpViolation {
                        morphism: self.name(l).to_owned(),
                        split: p,
                        factorizations: count,
                    });
                }
            }
        }
        UfpReport { violations }
    }

    /// Cancellation, absence of inverses, and the order properties of `⪯`.
    pub fn path_category_check(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = |l: MorphismId| self.name(l);
        for (&(a, b), &c) in &self.composition {
            for (&(a2, b2), &c2) in &self.composition {
                if c != c2 {
                    continue;
                }
                if a == a2 && b != b2 {
                    out.push(format!("left cancellation fails: {0}{1} = {0}{2}", n(a), n(b), n(b2)));
                }
                if b == b2 && a != a2 {
                    out.push(format!("right cancellation fails: {0}{2} = {1}{2}", n(a), n(a2), n(b)));
                }
            }
            if self.is_unit(c) && !(self.is_unit(a) && self.is_unit(b)) {
                out.push(format!("{}{} is a unit", n(a), n(b)));
            }
        }
        for a in self.ids() {
            for b in self.ids() {
                if a != b && self.precedes(a, b) && self.precedes(b, a) {
                    out.push(format!("⪯ is not antisymmetric at {}, {}", n(a), n(b)));
                }
                for c in self.cones[b.0].iter().copied() {
                    if self.precedes(a, b) && !self.precedes(a, c) {
                        out.push(format!("⪯ is not transitive at {}, {}, {}", n(a), n(b), n(c)));
                    }
                }
            }
        }
        for (&(mu, nu), &x) in &self.composition {
            for (&(mu2, ka), &y) in &self.composition {
                if mu == mu2 && self.precedes(x, y) && !self.precedes(nu, ka) {
                    out.push(format!(
                        "left invariance fails: {}{} ⪯ {}{}",
                        n(mu),
                        n(nu),
                        n(mu),
                        n(ka)
                    ));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Minimal common extensions for every pair, flagging pairs whose
    /// certificate may be cut off by the window.
    pub fn is_finitely_aligned(&self) -> AlignmentReport {
        let mut entries = Vec::new();
        let mut violations = Vec::new();
        for mu in self.ids() {
            for nu in self.ids() {
                let j = self.mce(mu, nu);
                let common: BTreeSet<MorphismId> =
                    self.cones[mu.0].intersection(&self.cones[nu.0]).copied().collect();
                for &l in &common {
                    if !j.iter().any(|&k| self.precedes(k, l)) {
                        violations.push(format!(
                            "{} ∈ {}Λ ∩ {}Λ extends no certificate element",
                            self.name(l),
                            self.name(mu),
                            self.name(nu)
                        ));
                    }
                }
                let unconfirmed = match &self.window {
                    None => false,
                    Some(w) => {
                        j.iter().any(|&l| self.monoid.touches_window(self.degree(l), w))
                            || (j.is_empty()
                                && self.range(mu) == self.range(nu)
                                && self
                                    .monoid
                                    .lub(self.degree(mu), self.degree(nu))
                                    .ok()
                                    .flatten()
                                    .is_some_and(|l| !self.window_admits(&l)))
                    }
                };
                entries.push(AlignmentEntry {
                    mu: self.name(mu).to_owned(),
                    nu: self.name(nu).to_owned(),
                    certificate: self.names(&j),
                    unconfirmed,
                });
            }
        }
        AlignmentReport {
            entries,
            violations,
        }
    }

    /// The path prototype `Ω_{P,m}`: pairs `p ≤ q ≤ m` with
    /// `(p,q)(q,r) = (p,r)` and `d(p,q) = p⁻¹q`.
    pub fn build_omega(monoid: &DegreeMonoid, m: &Degree) -> Result<PGraph, GraphError> {
        if !matches!(monoid, DegreeMonoid::Grid { .. } | DegreeMonoid::Free { .. }) {
            return Err(DegreeError::Unsupported {
                operation: "path prototypes",
                monoid: monoid.to_string(),
            }
            .into());
        }
        let points = monoid.divisors(m)?;
        let pair = |p: &Degree, q: &Degree| format!("({p},{q})");
        let vertices = points
            .iter()
            .map(|p| VertexSpec {
                name: p.to_string(),
                unit: pair(p, p),
            })
            .collect();
        let mut morphisms = Vec::new();
        let mut compositions = Vec::new();
        for p in &points {
            for q in &points {
                if p == q {
                    continue;
                }
                let Some(d) = monoid.left_divide(p, q)? else {
                    continue;
                };
                morphisms.push(MorphismSpec {
                    name: pair(p, q),
                    range: p.to_string(),
                    source: q.to_string(),
                    degree: d,
                });
                for r in &points {
                    if r != q && monoid.leq(q, r)? {
                        compositions.push((pair(p, q), pair(q, r), pair(p, r)));
                    }
                }
            }
        }
        PGraph::new(monoid.clone(), None, vertices, morphisms, &compositions)
    }

    /// The union of the prototypes along `s`, cut down to pairs below the window.
    pub fn build_omega_limit(
        monoid: &DegreeMonoid,
        s: &IncreasingSequence,
        window: &Degree,
    ) -> Result<PGraph, GraphError> {
        let class = monoid.degree_class(s)?;
        PGraph::build_omega_class(monoid, &class, Some(window))
    }

    pub fn build_omega_class(
        monoid: &DegreeMonoid,
        class: &DegreeClass,
        window: Option<&Degree>,
    ) -> Result<PGraph, GraphError> {
        let top = monoid.truncate(class, window)?;
        PGraph::build_omega(monoid, &top)
    }

    /// Materializes a k-graph from colored edges and factorization squares.
    /// Morphisms are the color-sorted edge words of degree at most `window`.
    pub fn from_skeleton(sk: &Skeleton, window: &Degree) -> Result<PGraph, GraphError> {
        let monoid = DegreeMonoid::grid(sk.rank);
        monoid.validate()?;
        monoid.check(window)?;
        let vertex_set: BTreeSet<&str> = sk.vertices.iter().map(String::as_str).collect();
        let mut edge_index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, e) in sk.edges.iter().enumerate() {
            if e.color == 0 || e.color > sk.rank {
                return Err(GraphError::ColorOutOfRange {
                    edge: e.name.clone(),
                    color: e.color,
                    rank: sk.rank,
                });
            }
            for v in [&e.range, &e.source] {
                if !vertex_set.contains(v.as_str()) {
                    return Err(GraphError::DanglingEdge {
                        edge: e.name.clone(),
                        vertex: v.clone(),
                    });
                }
            }
            if vertex_set.contains(e.name.as_str()) || edge_index.insert(&e.name, i).is_some() {
                return Err(GraphError::DuplicateName(e.name.clone()));
            }
        }
        let edges = &sk.edges;
        let show = |w: &[usize]| -> String { w.iter().map(|&i| edges[i].name.as_str()).collect() };

        let mut rewrite: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for square in &sk.squares {
            let text = format!("{}{} = {}{}", square[0][0], square[0][1], square[1][0], square[1][1]);
            let mut sides = Vec::new();
            for side in square {
                let a = *edge_index
                    .get(side[0].as_str())
                    .ok_or_else(|| GraphError::UnknownMorphism(side[0].clone()))?;
                let b = *edge_index
                    .get(side[1].as_str())
                    .ok_or_else(|| GraphError::UnknownMorphism(side[1].clone()))?;
                if edges[a].source != edges[b].range {
                    return Err(GraphError::MalformedSquare(text));
                }
                sides.push((a, b));
            }
            let (x, y) = (sides[0], sides[1]);
            let colors = |(a, b): (usize, usize)| (edges[a].color, edges[b].color);
            let (cx, cy) = (colors(x), colors(y));
            if cx.0 == cx.1 || cx != (cy.1, cy.0) {
                return Err(GraphError::MalformedSquare(text));
            }
            if edges[x.0].range != edges[y.0].range || edges[x.1].source != edges[y.1].source {
                return Err(GraphError::MalformedSquare(text));
            }
            let (bad, good) = if cx.0 > cx.1 { (x, y) } else { (y, x) };
            if let Some(&prev) = rewrite.get(&bad) {
                if prev != good {
                    return Err(GraphError::ConflictingSquare {
                        pair: show(&[bad.0, bad.1]),
                        first: show(&[prev.0, prev.1]),
                        second: show(&[good.0, good.1]),
                    });
                }
            }
            rewrite.insert(bad, good);
        }
        for (a, ea) in edges.iter().enumerate() {
            for (b, eb) in edges.iter().enumerate() {
                if ea.source == eb.range && ea.color > eb.color && !rewrite.contains_key(&(a, b)) {
                    return Err(GraphError::MissingSquare(show(&[a, b])));
                }
            }
        }
        let normalize = |word: &[usize], leftmost: bool| -> Vec<usize> {
            let mut w = word.to_vec();
            loop {
                let positions: Vec<usize> = (0..w.len().saturating_sub(1))
                    .filter(|&i| edges[w[i]].color > edges[w[i + 1]].color)
                    .collect();
                let pick = if leftmost { positions.first() } else { positions.last() };
                let Some(&i) = pick else { return w };
                let (a, b) = rewrite[&(w[i], w[i + 1])];
                w[i] = a;
                w[i + 1] = b;
            }
        };

        if sk.rank >= 3 {
            for (a, ea) in edges.iter().enumerate() {
                for (b, eb) in edges.iter().enumerate() {
                    if ea.source != eb.range {
                        continue;
                    }
                    for (c, ec) in edges.iter().enumerate() {
                        if eb.source != ec.range {
                            continue;
                        }
                        let colors: BTreeSet<usize> = [ea.color, eb.color, ec.color].into();
                        if colors.len() < 3 {
                            continue;
                        }
                        let word = [a, b, c];
                        let left = normalize(&word, true);
                        let right = normalize(&word, false);
                        if left != right {
                            return Err(GraphError::CubeViolation {
                                word: show(&word),
                                left: show(&left),
                                right: show(&right),
                            });
                        }
                    }
                }
            }
        }

        let Degree::Grid(bound) = window else {
            unreachable!("window checked against a grid monoid")
        };
        let degree_of = |w: &[usize]| {
            let mut d = vec![0u32; sk.rank];
            for &e in w {
                d[edges[e].color - 1] += 1;
            }
            d
        };
        let mut words: Vec<Vec<usize>> = Vec::new();
        let mut frontier: Vec<Vec<usize>> = (0..edges.len()).map(|e| vec![e]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in frontier {
                let d = degree_of(&w);
                if d.iter().zip(bound).any(|(x, b)| x > b) {
                    continue;
                }
                let last = *w.last().expect("nonempty word");
                for (e, ee) in edges.iter().enumerate() {
                    if edges[last].source == ee.range && ee.color >= edges[last].color {
                        let mut longer = w.clone();
                        longer.push(e);
                        next.push(longer);
                    }
                }
                words.push(w);
            }
            frontier = next;
        }

        let vertices: Vec<VertexSpec> = sk.vertices.iter().map(|v| VertexSpec::named(v)).collect();
        let morphisms: Vec<MorphismSpec> = words
            .iter()
            .map(|w| MorphismSpec {
                name: show(w),
                range: edges[w[0]].range.clone(),
                source: edges[*w.last().expect("nonempty word")].source.clone(),
                degree: Degree::Grid(degree_of(w)),
            })
            .collect();
        let word_set: BTreeSet<&Vec<usize>> = words.iter().collect();
        let mut compositions = Vec::new();
        for a in &words {
            for b in &words {
                if edges[*a.last().expect("nonempty word")].source != edges[b[0]].range {
                    continue;
                }
                let joined: Vec<usize> = a.iter().chain(b).copied().collect();
                let d = degree_of(&joined);
                if d.iter().zip(bound).any(|(x, b)| x > b) {
                    continue;
                }
                let product = normalize(&joined, true);
                if !word_set.contains(&product) {
                    return Err(GraphError::MalformedSquare(show(&joined)));
                }
                compositions.push((show(a), show(b), show(&product)));
            }
        }
        PGraph::new(
            monoid,
            Some(window.clone()),
            vertices,
            morphisms,
            &compositions,
        )
    }
}

/// A k-graph presented by colored edges and factorization squares.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skeleton {
    pub rank: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<SkeletonEdge>,
    /// Each square equates two bicolored paths, e.g. `[["r","b"],["b","r"]]`.
    #[serde(default)]
    pub squares: Vec<[[String; 2]; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonEdge {
    #[serde(rename = "id")]
    pub name: String,
    pub color: usize,
    pub range: String,
    pub source: String,
}

impl SkeletonEdge {
    pub fn new(name: &str, color: usize, range: &str, source: &str) -> Self {
        SkeletonEdge {
            name: name.to_owned(),
            color,
            range: range.to_owned(),
            source: source.to_owned(),
        }
    }
}

pub fn square(left: [&str; 2], right: [&str; 2]) -> [[String; 2]; 2] {
    [left.map(str::to_owned), right.map(str::to_owned)]
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CategoryViolation {
    LeftIdentity { morphism: String, got: String },
    RightIdentity { morphism: String, got: String },
    MissingComposite { pair: (String, String) },
    Spurious { pair: (String, String) },
    Degree { pair: (String, String), composite: String },
    Endpoints { pair: (String, String), composite: String },
    Associativity { triple: (String, String, String), left: String, right: String },
}

impl fmt::Display for CategoryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryViolation::LeftIdentity { morphism, got } => {
                write!(f, "left identity fails at {morphism}: r({morphism})·{morphism} = {got}")
            }
            CategoryViolation::RightIdentity { morphism, got } => {
                write!(f, "right identity fails at {morphism}: {morphism}·s({morphism}) = {got}")
            }
            CategoryViolation::MissingComposite { pair } => {
                write!(f, "composite {}·{} is missing", pair.0, pair.1)
            }
            CategoryViolation::Spurious { pair } => {
                write!(f, "composite {}·{} is defined but should not be", pair.0, pair.1)
            }
            CategoryViolation::Degree { pair, composite } => {
                write!(f, "degree is not additive on {}·{} = {composite}", pair.0, pair.1)
            }
            CategoryViolation::Endpoints { pair, composite } => {
                write!(f, "endpoints of {}·{} = {composite} are wrong", pair.0, pair.1)
            }
            CategoryViolation::Associativity { triple, left, right } => write!(
                f,
                "associativity fails on ({},{},{}): {left} vs {right}",
                triple.0, triple.1, triple.2
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CategoryReport {
    pub morphisms: usize,
    pub violations: Vec<CategoryViolation>,
}

impl CategoryReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UfpViolation {
    pub morphism: String,
    pub split: Degree,
    pub factorizations: usize,
}

impl fmt::Display for UfpViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} has {} factorizations through degree {}",
            self.morphism, self.factorizations, self.split
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UfpReport {
    pub violations: Vec<UfpViolation>,
}

impl UfpReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlignmentEntry {
    pub mu: String,
    pub nu: String,
    pub certificate: Vec<String>,
    pub unconfirmed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlignmentReport {
    pub entries: Vec<AlignmentEntry>,
    pub violations: Vec<String>,
}

impl AlignmentReport {
    pub fn is_aligned(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn unconfirmed(&self) -> impl Iterator<Item = &AlignmentEntry> {
        self.entries.iter().filter(|e| e.unconfirmed)
    }

    pub fn largest_certificate(&self) -> usize {
        self.entries.iter().map(|e| e.certificate.len()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn e1_is_a_category() {
        let g = catalog::e1();
        assert_eq!(g.len(), 3);
        assert!(g.validate_category().is_ok());
        assert!(g.validate_ufp().is_ok());
        assert!(g.path_category_check().is_empty());
    }

    #[test]
    fn redirected_unit_composite_is_reported() {
        let mut g = catalog::e1();
        let (v, e) = (g.id("v").unwrap(), g.id("e").unwrap());
        g.set_composite(v, e, v);
        let report = g.validate_category();
        assert!(report.violations.contains(&CategoryViolation::LeftIdentity {
            morphism: "e".into(),
            got: "v".into()
        }));
    }

    #[test]
    fn omega_counts() {
        let n2 = DegreeMonoid::grid(2);
        let g = PGraph::build_omega(&n2, &Degree::grid([1, 1])).unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g.units().len(), 4);
        assert!(g.validate_category().is_ok());
        assert!(g.validate_ufp().is_ok());
        let e = PGraph::build_omega(&n2, &Degree::grid([0, 0])).unwrap();
        assert_eq!(e.len(), 1);
        let f = DegreeMonoid::free("ab");
        let g = PGraph::build_omega(&f, &Degree::word("ab")).unwrap();
        let mut names: Vec<&str> = g.ids().map(|l| g.name(l)).collect();
        names.sort();
        assert_eq!(names, ["(a,a)", "(a,ab)", "(ab,ab)", "(ε,a)", "(ε,ab)", "(ε,ε)"]);
    }

    #[test]
    fn omega_cone_and_units() {
        let g = PGraph::build_omega(&DegreeMonoid::grid(2), &Degree::grid([1, 1])).unwrap();
        let origin = g.id("((0,0),(0,0))").unwrap();
        assert_eq!(g.cone(origin).len(), 4);
        let top = g.id("((0,0),(1,1))").unwrap();
        assert_eq!(g.divisors(top).len(), 4);
        let report = g.is_finitely_aligned();
        assert!(report.is_aligned());
        assert_eq!(report.largest_certificate(), 1);
        assert_eq!(report.unconfirmed().count(), 0);
    }

    #[test]
    fn omega_limits() {
        let n = DegreeMonoid::grid(1);
        let s = n
            .sequence(vec![Degree::grid([0])], crate::degree::TailRule::Step(Degree::grid([1])))
            .unwrap();
        assert_eq!(PGraph::build_omega_limit(&n, &s, &Degree::grid([3])).unwrap().len(), 10);
        let n2 = DegreeMonoid::grid(2);
        let c = IncreasingSequence::constant(Degree::grid([1, 1]));
        let limit = PGraph::build_omega_limit(&n2, &c, &Degree::grid([5, 5])).unwrap();
        assert_eq!(limit.len(), 9);
        let s = n2
            .sequence(vec![Degree::grid([0, 2])], crate::degree::TailRule::Step(Degree::grid([1, 0])))
            .unwrap();
        let limit = PGraph::build_omega_limit(&n2, &s, &Degree::grid([2, 2])).unwrap();
        let direct = PGraph::build_omega(&n2, &Degree::grid([2, 2])).unwrap();
        assert_eq!(limit.len(), direct.len());
    }

    #[test]
    fn e3_skeleton() {
        let g = catalog::e3(&Degree::grid([1, 1]));
        let mut names: Vec<&str> = g.ids().map(|l| g.name(l)).collect();
        names.sort();
        assert_eq!(names, ["b", "br", "r", "u"]);
        let (b, r) = (g.id("b").unwrap(), g.id("r").unwrap());
        assert_eq!(g.names(&g.mce(b, r)), ["br"]);
        let rb = g.compose(r, b).unwrap();
        assert_eq!(g.name(rb), "br");
        assert!(g.validate_category().is_ok());
        assert!(g.validate_ufp().is_ok());
    }

    #[test]
    fn e3_alignment_flags_the_window_edge() {
        let g = catalog::e3(&Degree::grid([2, 2]));
        let report = g.is_finitely_aligned();
        assert!(report.is_aligned());
        assert!(report.unconfirmed().count() > 0);
        assert!(report
            .unconfirmed()
            .any(|e| e.mu == "bbrr" && e.nu == "bbrr"));
        assert!(report
            .entries
            .iter()
            .any(|e| e.mu == "b" && e.nu == "r" && !e.unconfirmed));
    }

    #[test]
    fn e1_cones_and_mce() {
        let g = catalog::e1();
        let (v, e, w) = (g.id("v").unwrap(), g.id("e").unwrap(), g.id("w").unwrap());
        assert_eq!(g.names(g.cone(v)), ["v", "e"]);
        assert_eq!(g.names(g.cone(e)), ["e"]);
        assert_eq!(g.names(&g.mce(e, e)), ["e"]);
        assert_eq!(g.names(&g.mce(v, e)), ["e"]);
        assert!(g.mce(v, w).is_empty());
        assert!(g.is_finitely_aligned().is_aligned());
    }

    #[test]
    fn e1_from_skeleton() {
        let sk = Skeleton {
            rank: 1,
            vertices: vec!["v".into(), "w".into()],
            edges: vec![SkeletonEdge::new("e", 1, "v", "w")],
            squares: vec![],
        };
        let g = PGraph::from_skeleton(&sk, &Degree::grid([1])).unwrap();
        let e1 = catalog::e1();
        let names = |g: &PGraph| g.ids().map(|l| g.name(l).to_owned()).collect::<Vec<_>>();
        assert_eq!(names(&g), names(&e1));
    }

    #[test]
    fn twisted_loops_have_six_morphisms() {
        let g = catalog::twisted_loops(&Degree::grid([1, 1]));
        let mut names: Vec<&str> = g.ids().map(|l| g.name(l)).collect();
        names.sort();
        assert_eq!(names, ["a1", "a1c", "a2", "a2c", "c", "u"]);
        assert!(g.validate_ufp().is_ok());
    }

    #[test]
    fn doubled_square_breaks_factorization() {
        let sk = Skeleton {
            rank: 2,
            vertices: vec!["u".into()],
            edges: vec![
                SkeletonEdge::new("b1", 1, "u", "u"),
                SkeletonEdge::new("b2", 1, "u", "u"),
                SkeletonEdge::new("r", 2, "u", "u"),
            ],
            squares: vec![square(["r", "b1"], ["b1", "r"]), square(["r", "b2"], ["b1", "r"])],
        };
        let g = PGraph::from_skeleton(&sk, &Degree::grid([1, 1])).unwrap();
        let report = g.validate_ufp();
        assert!(report
            .violations
            .iter()
            .any(|v| v.morphism == "b1r" && v.factorizations == 2));
    }

    #[test]
    fn skeleton_errors() {
        let base = Skeleton {
            rank: 2,
            vertices: vec!["u".into()],
            edges: vec![
                SkeletonEdge::new("b", 1, "u", "u"),
                SkeletonEdge::new("r", 2, "u", "u"),
            ],
            squares: vec![],
        };
        let w = Degree::grid([1, 1]);
        assert!(matches!(
            PGraph::from_skeleton(&base, &w),
            Err(GraphError::MissingSquare(p)) if p == "rb"
        ));
        let mut dangling = base.clone();
        dangling.edges.push(SkeletonEdge::new("x", 1, "u", "nowhere"));
        assert!(matches!(
            PGraph::from_skeleton(&dangling, &w),
            Err(GraphError::DanglingEdge { .. })
        ));
        let mut conflicting = base.clone();
        conflicting.edges.push(SkeletonEdge::new("b2", 1, "u", "u"));
        conflicting.squares = vec![square(["r", "b"], ["b", "r"]), square(["r", "b"], ["b2", "r"])];
        assert!(matches!(
            PGraph::from_skeleton(&conflicting, &w),
            Err(GraphError::ConflictingSquare { .. })
        ));
        let mut malformed = base;
        malformed.squares = vec![square(["b", "b"], ["r", "r"])];
        assert!(matches!(
            PGraph::from_skeleton(&malformed, &w),
            Err(GraphError::MalformedSquare(_))
        ));
    }

    #[test]
    fn cube_condition_is_checked() {
        let edges = vec![
            SkeletonEdge::new("a1", 1, "u", "u"),
            SkeletonEdge::new("a2", 1, "u", "u"),
            SkeletonEdge::new("b1", 2, "u", "u"),
            SkeletonEdge::new("b2", 2, "u", "u"),
            SkeletonEdge::new("c", 3, "u", "u"),
        ];
        let build = |squares| {
            let sk = Skeleton {
                rank: 3,
                vertices: vec!["u".into()],
                edges: edges.clone(),
                squares,
            };
            PGraph::from_skeleton(&sk, &Degree::grid([1, 1, 1]))
        };
        let commuting = vec![
            square(["b1", "a1"], ["a1", "b1"]),
            square(["b1", "a2"], ["a2", "b1"]),
            square(["b2", "a1"], ["a1", "b2"]),
            square(["b2", "a2"], ["a2", "b2"]),
            square(["c", "a1"], ["a1", "c"]),
            square(["c", "a2"], ["a2", "c"]),
            square(["c", "b1"], ["b1", "c"]),
            square(["c", "b2"], ["b2", "c"]),
        ];
        let g = build(commuting).unwrap();
        assert_eq!(g.len(), 1 + 5 + 4 + 2 + 2 + 4);
        assert!(g.validate_category().is_ok());
        assert!(g.validate_ufp().is_ok());

        // b flips when passing a2 and c swaps the a's: cb1a1 normalizes to
        // a2b2c or a2b1c depending on the order of rewriting.
        let twisted = vec![
            square(["b1", "a1"], ["a1", "b1"]),
            square(["b1", "a2"], ["a2", "b2"]),
            square(["b2", "a1"], ["a1", "b2"]),
            square(["b2", "a2"], ["a2", "b1"]),
            square(["c", "a1"], ["a2", "c"]),
            square(["c", "a2"], ["a1", "c"]),
            square(["c", "b1"], ["b1", "c"]),
            square(["c", "b2"], ["b2", "c"]),
        ];
        assert!(matches!(build(twisted), Err(GraphError::CubeViolation { .. })));
    }

    #[test]
    fn explicit_graph_errors() {
        let n = DegreeMonoid::grid(1);
        let vs = vec![VertexSpec::named("v"), VertexSpec::named("w")];
        let e = MorphismSpec {
            name: "e".into(),
            range: "v".into(),
            source: "w".into(),
            degree: Degree::grid([1]),
        };
        let bad = MorphismSpec {
            source: "x".into(),
            ..e.clone()
        };
        assert!(matches!(
            PGraph::new(n.clone(), None, vs.clone(), vec![bad], &[]),
            Err(GraphError::UnknownVertex(_))
        ));
        let zero = MorphismSpec {
            degree: Degree::grid([0]),
            ..e.clone()
        };
        assert!(matches!(
            PGraph::new(n.clone(), None, vs.clone(), vec![zero], &[]),
            Err(GraphError::IdentityDegree(_))
        ));
        let wrong = vec![("e".to_owned(), "v".to_owned(), "e".to_owned())];
        assert!(matches!(
            PGraph::new(n, None, vs, vec![e], &wrong),
            Err(GraphError::NotComposable(_, _))
        ));
    }
}
