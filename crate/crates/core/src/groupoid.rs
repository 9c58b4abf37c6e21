//! Semidirect product groupoids `X ⋊ Q` of a path space, their basis sets,
//! reductions, and the map `ψ_h` between the two presentations.
//!
//! Elements are triples `(x, q, y)` of point indices and a group element,
//! carried with one witness `(m, n)` such that `T^m x = T^n y` and
//! `q = m n⁻¹`. The witness never takes part in equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;
use thiserror::Error;

use crate::degree::{Degree, DegreeError, DegreeMonoid, GroupElement};
use crate::filters::{shift_up, range_of, CylinderSet, FilterSpace};
use crate::morphisms::MorphismSpace;
use crate::pgraph::{MorphismId, PGraph};
use crate::space::PathSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error("{x}·{m} ≠ {y}·{n}")]
    NotAnElement { x: String, m: String, n: String, y: String },
    #[error("the source of {left} is not the range of {right}")]
    NotComposable { left: String, right: String },
    #[error("no witness for ({x}, {q}, {y}) below {bound}")]
    WitnessNotFound { x: String, q: String, y: String, bound: String },
    #[error("({0}, {1}) is not source matched")]
    NotSourceMatched(String, String),
    #[error("d({0}) - d({1}) is not {2}")]
    WrongDifference(String, String, String),
}

type Result<T> = std::result::Result<T, GroupoidError>;

#[derive(Clone, Debug, Serialize)]
pub struct GroupoidElement {
    pub x: usize,
    pub q: GroupElement,
    pub y: usize,
    pub witness: (Degree, Degree),
}

impl GroupoidElement {
    fn key(&self) -> (usize, &GroupElement, usize) {
        (self.x, &self.q, self.y)
    }

    pub fn display<S: PathSpace>(&self, space: &S) -> String {
        format!("({}, {}, {})", space.label(self.x), self.q, space.label(self.y))
    }
}

impl PartialEq for GroupoidElement {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for GroupoidElement {}

impl Hash for GroupoidElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl Ord for GroupoidElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for GroupoidElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn make_element<S: PathSpace>(
    space: &S,
    x: usize,
    m: &Degree,
    n: &Degree,
    y: usize,
) -> Result<GroupoidElement> {
    let monoid = space.graph().monoid();
    let q = monoid.quotient(m, n)?;
    match (space.act(x, m), space.act(y, n)) {
        (Some(a), Some(b)) if a == b => Ok(GroupoidElement {
            x,
            q,
            y,
            witness: (m.clone(), n.clone()),
        }),
        _ => Err(GroupoidError::NotAnElement {
            x: space.label(x),
            m: m.to_string(),
            n: n.to_string(),
            y: space.label(y),
        }),
    }
}

pub fn invert_element(monoid: &DegreeMonoid, g: &GroupoidElement) -> Result<GroupoidElement> {
    Ok(GroupoidElement {
        x: g.y,
        q: monoid.group_invert(&g.q)?,
        y: g.x,
        witness: (g.witness.1.clone(), g.witness.0.clone()),
    })
}

/// `(x, q, y)(y, r, z) = (x, qr, z)`. The witness is `(m a, n′ b)` where
/// `n a = m′ b` is the least upper bound of `n` and `m′`; when that leaves
/// the window, a witness below `bound` is searched for instead.
pub fn compose_elements<S: PathSpace>(
    space: &S,
    g: &GroupoidElement,
    h: &GroupoidElement,
    bound: &Degree,
) -> Result<GroupoidElement> {
    compose_flagged(space, g, h, bound).map(|(e, _)| e)
}

fn compose_flagged<S: PathSpace>(
    space: &S,
    g: &GroupoidElement,
    h: &GroupoidElement,
    bound: &Degree,
) -> Result<(GroupoidElement, bool)> {
    if g.y != h.x {
        return Err(GroupoidError::NotComposable {
            left: g.display(space),
            right: h.display(space),
        });
    }
    let graph = space.graph();
    let monoid = graph.monoid();
    let q = monoid.group_compose(&g.q, &h.q)?;
    let (m, n) = &g.witness;
    let (m2, n2) = &h.witness;
    if let Some(l) = monoid.lub(n, m2)?.filter(|l| graph.window_admits(l)) {
        let a = monoid.left_divide(n, &l)?.expect("n ≤ lub");
        let b = monoid.left_divide(m2, &l)?.expect("m′ ≤ lub");
        let left = monoid.compose(m, &a)?;
        let right = monoid.compose(n2, &b)?;
        if let Ok(e) = make_element(space, g.x, &left, &right, h.y) {
            if e.q == q {
                return Ok((e, false));
            }
        }
    }
    let witness = find_witness(space, g.x, &q, h.y, bound)?.ok_or_else(|| {
        GroupoidError::WitnessNotFound {
            x: space.label(g.x),
            q: q.to_string(),
            y: space.label(h.y),
            bound: bound.to_string(),
        }
    })?;
    Ok((
        GroupoidElement {
            x: g.x,
            q,
            y: h.y,
            witness,
        },
        true,
    ))
}

/// The least `(m, n)` below `bound` with `T^m x = T^n y` and `m n⁻¹ = q`.
pub fn find_witness<S: PathSpace>(
    space: &S,
    x: usize,
    q: &GroupElement,
    y: usize,
    bound: &Degree,
) -> Result<Option<(Degree, Degree)>> {
    let monoid = space.graph().monoid();
    let degrees = monoid.divisors(bound)?;
    for m in &degrees {
        let Some(a) = space.act(x, m) else { continue };
        for n in &degrees {
            if space.act(y, n) == Some(a) && monoid.quotient(m, n)? == *q {
                return Ok(Some((m.clone(), n.clone())));
            }
        }
    }
    Ok(None)
}

/// Every `(x, q, y)` with a witness `m, n ≤ bound`, in canonical order, each
/// carrying its least witness.
pub fn enumerate_groupoid<S: PathSpace>(space: &S, bound: &Degree) -> Result<Vec<GroupoidElement>> {
    let monoid = space.graph().monoid();
    let degrees = monoid.divisors(bound)?;
    let fibres: Vec<BTreeMap<usize, Vec<usize>>> = degrees
        .iter()
        .map(|m| {
            let mut fibre: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for x in 0..space.len() {
                if let Some(z) = space.act(x, m) {
                    fibre.entry(z).or_default().push(x);
                }
            }
            fibre
        })
        .collect();
    let mut found: BTreeMap<(usize, GroupElement, usize), (Degree, Degree)> = BTreeMap::new();
    for (i, m) in degrees.iter().enumerate() {
        for (j, n) in degrees.iter().enumerate() {
            let q = monoid.quotient(m, n)?;
            for (z, xs) in &fibres[i] {
                let Some(ys) = fibres[j].get(z) else { continue };
                for &x in xs {
                    for &y in ys {
                        let witness = (m.clone(), n.clone());
                        found
                            .entry((x, q.clone(), y))
                            .and_modify(|w| {
                                if witness < *w {
                                    *w = witness.clone();
                                }
                            })
                            .or_insert(witness);
                    }
                }
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|((x, q, y), witness)| GroupoidElement { x, q, y, witness })
        .collect())
}

/// An enumerated groupoid with its multiplication and inversion tables.
///
/// The tables are computed by [`compose_elements`] and [`invert_element`]
/// and then looked up among the enumerated elements, so the axiom checks
/// test the operations rather than restate them.
#[derive(Clone, Debug)]
pub struct FiniteGroupoid {
    monoid: DegreeMonoid,
    labels: Vec<String>,
    elements: Vec<GroupoidElement>,
    index: HashMap<(usize, GroupElement, usize), usize>,
    products: HashMap<(usize, usize), usize>,
    missing: Vec<(usize, usize)>,
    inverses: Vec<Option<usize>>,
    fallbacks: usize,
}

impl FiniteGroupoid {
    pub fn from_space<S: PathSpace>(space: &S, bound: &Degree) -> Result<Self> {
        let elements = enumerate_groupoid(space, bound)?;
        let monoid = space.graph().monoid().clone();
        let labels = (0..space.len()).map(|x| space.label(x)).collect();
        let mut gpd = FiniteGroupoid::assemble(monoid, labels, elements);
        let mut by_range: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (j, e) in gpd.elements.iter().enumerate() {
            by_range.entry(e.x).or_default().push(j);
        }
        for i in 0..gpd.elements.len() {
            let inv = invert_element(&gpd.monoid, &gpd.elements[i])?;
            gpd.inverses[i] = gpd.lookup(&inv);
            let Some(js) = by_range.get(&gpd.elements[i].y) else { continue };
            for &j in js {
                let (c, fallback) = match compose_flagged(space, &gpd.elements[i], &gpd.elements[j], bound) {
                    Ok(found) => found,
                    Err(GroupoidError::WitnessNotFound { .. }) => {
                        gpd.missing.push((i, j));
                        continue;
                    }
                    Err(other) => return Err(other),
                };
                gpd.fallbacks += usize::from(fallback);
                match gpd.lookup(&c) {
                    Some(k) => {
                        gpd.products.insert((i, j), k);
                    }
                    None => gpd.missing.push((i, j)),
                }
            }
        }
        Ok(gpd)
    }

    fn assemble(monoid: DegreeMonoid, labels: Vec<String>, elements: Vec<GroupoidElement>) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| ((e.x, e.q.clone(), e.y), i))
            .collect();
        let n = elements.len();
        FiniteGroupoid {
            monoid,
            labels,
            elements,
            index,
            products: HashMap::new(),
            missing: Vec::new(),
            inverses: vec![None; n],
            fallbacks: 0,
        }
    }

    fn lookup(&self, e: &GroupoidElement) -> Option<usize> {
        self.index_of(e.x, &e.q, e.y)
    }

    pub fn monoid(&self) -> &DegreeMonoid {
        &self.monoid
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Number of points of the underlying space.
    pub fn points(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn elements(&self) -> &[GroupoidElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupoidElement {
        &self.elements[i]
    }

    pub fn index_of(&self, x: usize, q: &GroupElement, y: usize) -> Option<usize> {
        self.index.get(&(x, q.clone(), y)).copied()
    }

    pub fn display(&self, i: usize) -> String {
        let e = &self.elements[i];
        format!("({}, {}, {})", self.labels[e.x], e.q, self.labels[e.y])
    }

    pub fn composable(&self, i: usize, j: usize) -> bool {
        self.elements[i].y == self.elements[j].x
    }

    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        self.products.get(&(i, j)).copied()
    }

    pub fn inverse(&self, i: usize) -> Option<usize> {
        self.inverses[i]
    }

    pub fn unit(&self, x: usize) -> Option<usize> {
        self.index_of(x, &self.monoid.group_identity(), x)
    }

    /// Composites that were found only by the bounded witness search.
    pub fn fallbacks(&self) -> usize {
        self.fallbacks
    }

    pub fn set_product(&mut self, i: usize, j: usize, k: usize) {
        self.products.insert((i, j), k);
    }

    pub fn set_inverse(&mut self, i: usize, k: usize) {
        self.inverses[i] = Some(k);
    }

    /// `G|_U = s⁻¹(U) ∩ r⁻¹(U)`, with point labels kept.
    pub fn reduction(&self, u: &BTreeSet<usize>) -> FiniteGroupoid {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| u.contains(&self.elements[i].x) && u.contains(&self.elements[i].y))
            .collect();
        let position: HashMap<usize, usize> = keep.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let mut out = FiniteGroupoid::assemble(
            self.monoid.clone(),
            self.labels.clone(),
            keep.iter().map(|&i| self.elements[i].clone()).collect(),
        );
        for (&(i, j), &k) in &self.products {
            if let (Some(&a), Some(&b)) = (position.get(&i), position.get(&j)) {
                match position.get(&k) {
                    Some(&c) => {
                        out.products.insert((a, b), c);
                    }
                    None => out.missing.push((a, b)),
                }
            }
        }
        for &(i, j) in &self.missing {
            if let (Some(&a), Some(&b)) = (position.get(&i), position.get(&j)) {
                out.missing.push((a, b));
            }
        }
        for (&i, &a) in &position {
            out.inverses[a] = self.inverses[i].and_then(|k| position.get(&k).copied());
        }
        out.fallbacks = self.fallbacks;
        out
    }

    /// Indices of `s⁻¹(U)`.
    pub fn source_preimage(&self, u: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.len()).filter(|&i| u.contains(&self.elements[i].y)).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub elements: usize,
    pub pairs: usize,
    pub triples: usize,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks closure, the defining formulas for products and inverses, the
/// three groupoid axioms, and that `x ↦ (x, e, x)` is a bijection onto the
/// units.
pub fn groupoid_axiom_check(gpd: &FiniteGroupoid) -> AxiomReport {
    let mut report = AxiomReport {
        elements: gpd.len(),
        ..AxiomReport::default()
    };
    let v = &mut report.violations;
    let n = gpd.len();
    let by_range: Vec<Vec<usize>> = {
        let mut out = vec![Vec::new(); gpd.points()];
        for (j, e) in gpd.elements.iter().enumerate() {
            out[e.x].push(j);
        }
        out
    };
    for &(i, j) in &gpd.missing {
        v.push(format!("{}·{} is not enumerated", gpd.display(i), gpd.display(j)));
    }
    for i in 0..n {
        let g = &gpd.elements[i];
        for &j in &by_range[g.y] {
            report.pairs += 1;
            let h = &gpd.elements[j];
            let Some(k) = gpd.product(i, j) else {
                if !gpd.missing.contains(&(i, j)) {
                    v.push(format!("no product for {}·{}", gpd.display(i), gpd.display(j)));
                }
                continue;
            };
            let c = &gpd.elements[k];
            let expected = gpd.monoid.group_compose(&g.q, &h.q).ok();
            if c.x != g.x || c.y != h.y || Some(&c.q) != expected.as_ref() {
                v.push(format!(
                    "{}·{} = {} is not (x, qr, z)",
                    gpd.display(i),
                    gpd.display(j),
                    gpd.display(k)
                ));
            }
        }
        match gpd.inverse(i) {
            Some(k) => {
                let c = &gpd.elements[k];
                let expected = gpd.monoid.group_invert(&g.q).ok();
                if c.x != g.y || c.y != g.x || Some(&c.q) != expected.as_ref() {
                    v.push(format!("{}⁻¹ = {} is not (y, q⁻¹, x)", gpd.display(i), gpd.display(k)));
                }
                if gpd.inverse(k) != Some(i) {
                    v.push(format!("(g⁻¹)⁻¹ ≠ g at {}", gpd.display(i)));
                }
                if !gpd.composable(k, i) {
                    v.push(format!("(g⁻¹, g) is not composable at {}", gpd.display(i)));
                }
            }
            None => v.push(format!("{} has no inverse", gpd.display(i))),
        }
    }
    for f in 0..n {
        for &g in &by_range[gpd.elements[f].y] {
            let Some(fg) = gpd.product(f, g) else { continue };
            for &h in &by_range[gpd.elements[g].y] {
                report.triples += 1;
                let Some(gh) = gpd.product(g, h) else { continue };
                let left = gpd.composable(fg, h).then(|| gpd.product(fg, h)).flatten();
                let right = gpd.composable(f, gh).then(|| gpd.product(f, gh)).flatten();
                if left.is_none() || left != right {
                    v.push(format!(
                        "(fg)h ≠ f(gh) at f = {}, g = {}, h = {}",
                        gpd.display(f),
                        gpd.display(g),
                        gpd.display(h)
                    ));
                }
            }
        }
    }
    for g in 0..n {
        let Some(gi) = gpd.inverse(g) else { continue };
        for &h in &by_range[gpd.elements[g].y] {
            let Some(gh) = gpd.product(g, h) else { continue };
            if gpd.product(gi, gh) != Some(h) {
                v.push(format!("g⁻¹(gh) ≠ h at g = {}, h = {}", gpd.display(g), gpd.display(h)));
            }
            let back = gpd.inverse(h).and_then(|hi| gpd.product(gh, hi));
            if back != Some(g) {
                v.push(format!("(gh)h⁻¹ ≠ g at g = {}, h = {}", gpd.display(g), gpd.display(h)));
            }
        }
    }
    let units: BTreeSet<usize> = (0..n)
        .filter(|&i| gpd.composable(i, i) && gpd.product(i, i) == Some(i) && gpd.inverse(i) == Some(i))
        .collect();
    let embedded: Vec<Option<usize>> = (0..gpd.points()).map(|x| gpd.unit(x)).collect();
    for (x, u) in embedded.iter().enumerate() {
        if u.is_none() {
            v.push(format!("no unit at {}", gpd.labels[x]));
        }
    }
    let image: BTreeSet<usize> = embedded.iter().flatten().copied().collect();
    if image != units {
        v.push("the units are not exactly the elements (x, e, x)".into());
    }
    report
}

/// `r(s⁻¹(U)) ⊆ U`.
pub fn invariance_check(gpd: &FiniteGroupoid, u: &BTreeSet<usize>) -> bool {
    invariance_counterexample(gpd, u).is_none()
}

pub fn invariance_counterexample(gpd: &FiniteGroupoid, u: &BTreeSet<usize>) -> Option<usize> {
    (0..gpd.len()).find(|&i| u.contains(&gpd.elements[i].y) && !u.contains(&gpd.elements[i].x))
}

/// The basic open set `Z(U, m, n, V)` of elements `(x, m n⁻¹, y)` with
/// `x ∈ U`, `y ∈ V` and `T^m x = T^n y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSet {
    pub u: BTreeSet<usize>,
    pub m: Degree,
    pub n: Degree,
    pub v: BTreeSet<usize>,
}

impl BasisSet {
    pub fn new(u: BTreeSet<usize>, m: Degree, n: Degree, v: BTreeSet<usize>) -> Self {
        BasisSet { u, m, n, v }
    }
}

pub fn basis_membership<S: PathSpace>(space: &S, g: &GroupoidElement, z: &BasisSet) -> bool {
    let Ok(q) = space.graph().monoid().quotient(&z.m, &z.n) else {
        return false;
    };
    z.u.contains(&g.x)
        && z.v.contains(&g.y)
        && g.q == q
        && space.act(g.x, &z.m).is_some()
        && space.act(g.x, &z.m) == space.act(g.y, &z.n)
}

pub fn basis_members<S: PathSpace>(space: &S, gpd: &FiniteGroupoid, z: &BasisSet) -> BTreeSet<usize> {
    (0..gpd.len())
        .filter(|&i| basis_membership(space, &gpd.elements[i], z))
        .collect()
}

/// `Z_Yee(F, m)`: the elements `(λt, d(λ) − d(μ), μt)` for `(λ, μ) ∈ F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YeeBasisSet {
    pairs: BTreeSet<(MorphismId, MorphismId)>,
    m: GroupElement,
}

impl YeeBasisSet {
    pub fn new(
        g: &PGraph,
        pairs: impl IntoIterator<Item = (MorphismId, MorphismId)>,
        m: GroupElement,
    ) -> Result<Self> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        for &(l, mu) in &pairs {
            if g.source(l) != g.source(mu) {
                return Err(GroupoidError::NotSourceMatched(g.name(l).into(), g.name(mu).into()));
            }
            if g.monoid().quotient(g.degree(l), g.degree(mu))? != m {
                return Err(GroupoidError::WrongDifference(
                    g.name(l).into(),
                    g.name(mu).into(),
                    m.to_string(),
                ));
            }
        }
        Ok(YeeBasisSet { pairs, m })
    }

    /// `Z_Yee(A ∗_s B, m)`: the source-matched pairs of `A × B` with degree
    /// difference `m`.
    pub fn star(g: &PGraph, a: &BTreeSet<MorphismId>, b: &BTreeSet<MorphismId>, m: GroupElement) -> Self {
        let mut pairs = BTreeSet::new();
        for &l in a {
            for &mu in b {
                if g.source(l) == g.source(mu)
                    && g.monoid().quotient(g.degree(l), g.degree(mu)).ok().as_ref() == Some(&m)
                {
                    pairs.insert((l, mu));
                }
            }
        }
        YeeBasisSet { pairs, m }
    }

    pub fn pairs(&self) -> &BTreeSet<(MorphismId, MorphismId)> {
        &self.pairs
    }

    pub fn m(&self) -> &GroupElement {
        &self.m
    }
}

/// Membership in `Z_Yee(F, m)` over the filter space: some `(λ, μ) ∈ F` and
/// point `t` with `x = λt` and `y = μt`.
pub fn yee_basis_membership(fs: &FilterSpace, g: &GroupoidElement, z: &YeeBasisSet) -> bool {
    if g.q != z.m {
        return false;
    }
    let graph = fs.graph();
    z.pairs.iter().any(|&(l, mu)| {
        fs.points().iter().any(|t| {
            range_of(graph, t) == Some(graph.source(l))
                && shift_up(graph, l, t).ok().as_ref() == Some(fs.point(g.x))
                && shift_up(graph, mu, t).ok().as_ref() == Some(fs.point(g.y))
        })
    })
}

/// The members of `Z_Yee(F, m)` in `gpd`, generated from the pairs in `F`.
pub fn yee_basis_members(fs: &FilterSpace, gpd: &FiniteGroupoid, z: &YeeBasisSet) -> BTreeSet<usize> {
    let graph = fs.graph();
    let mut out = BTreeSet::new();
    for &(l, mu) in &z.pairs {
        for t in fs.points() {
            if range_of(graph, t) != Some(graph.source(l)) {
                continue;
            }
            let (Ok(x), Ok(y)) = (shift_up(graph, l, t), shift_up(graph, mu, t)) else {
                continue;
            };
            let (Some(x), Some(y)) = (fs.index_of(&x), fs.index_of(&y)) else { continue };
            if let Some(i) = gpd.index_of(x, &z.m, y) {
                out.insert(i);
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TauReport {
    /// Pairs `(λ, μ)` whose `Z_Yee` set was compared with a cylinder basis set.
    pub singletons: usize,
    /// Sampled `A ∗_s B` sets checked to be unions of cylinder basis sets.
    pub unions: usize,
    /// Cylinder basis sets rebuilt from `Z_Yee` sets.
    pub differences: usize,
    pub violations: Vec<String>,
}

impl TauReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn cylinder_basis(fs: &FilterSpace, gpd: &FiniteGroupoid, k: MorphismId, kk: &BTreeSet<MorphismId>, l: MorphismId, ll: &BTreeSet<MorphismId>) -> BTreeSet<usize> {
    let g = fs.graph();
    let z = BasisSet::new(
        fs.cylinder(&CylinderSet::new([k], kk.iter().copied())),
        g.degree(k).clone(),
        g.degree(l).clone(),
        fs.cylinder(&CylinderSet::new([l], ll.iter().copied())),
    );
    basis_members(fs, gpd, &z)
}

fn subsets_upto(items: &[MorphismId], size: usize) -> Vec<BTreeSet<MorphismId>> {
    let mut out = vec![BTreeSet::new()];
    for (i, &a) in items.iter().enumerate() {
        if size >= 1 {
            out.push(BTreeSet::from([a]));
        }
        if size >= 2 {
            for &b in &items[i + 1..] {
                out.push(BTreeSet::from([a, b]));
            }
        }
    }
    out
}

/// Compares the two bases of the groupoid topology on the enumerated
/// elements.
///
/// Every `Z_Yee({(λ, μ)}, d(λ) − d(μ))` must equal
/// `Z(Z({λ}), d(λ), d(μ), Z({μ}))`, sampled `Z_Yee(A ∗_s B, m)` must be the
/// union of those, and every `Z(Z({κ} \ K), d(κ), d(λ), Z({λ} \ L))` with
/// `|K|, |L| ≤ size` must equal `Z_Yee({κ} ∗_s {λ}) ∖ Z_Yee(F)` for
/// `F = {(κζ, λζ) : κζ ∈ K or λζ ∈ L}`, or be empty when `s(κ) ≠ s(λ)`.
pub fn tau_equality_check(fs: &FilterSpace, gpd: &FiniteGroupoid, size: usize) -> TauReport {
    let g = fs.graph();
    let monoid = g.monoid();
    let mut report = TauReport::default();
    let ids: Vec<MorphismId> = g.ids().collect();
    let empty = BTreeSet::new();
    let mut singles: BTreeMap<(MorphismId, MorphismId), BTreeSet<usize>> = BTreeMap::new();
    for &l in &ids {
        for &mu in &ids {
            if g.source(l) != g.source(mu) {
                continue;
            }
            report.singletons += 1;
            let q = monoid.quotient(g.degree(l), g.degree(mu)).expect("degrees of the graph");
            let yee = YeeBasisSet::new(g, [(l, mu)], q).expect("source matched");
            let members = yee_basis_members(fs, gpd, &yee);
            let cyl = cylinder_basis(fs, gpd, l, &empty, mu, &empty);
            if members != cyl {
                report.violations.push(format!(
                    "Z_Yee({{({}, {})}}) differs from its cylinder basis set",
                    g.name(l),
                    g.name(mu)
                ));
            }
            singles.insert((l, mu), members);
        }
    }
    let groups: BTreeSet<GroupElement> = gpd.elements().iter().map(|e| e.q.clone()).collect();
    let small = subsets_upto(&ids, size);
    for a in &small {
        for b in &small {
            for m in &groups {
                report.unions += 1;
                let yee = YeeBasisSet::star(g, a, b, m.clone());
                let direct = yee_basis_members(fs, gpd, &yee);
                let union: BTreeSet<usize> = yee
                    .pairs()
                    .iter()
                    .flat_map(|p| singles[p].iter().copied())
                    .collect();
                if direct != union {
                    report.violations.push(format!(
                        "Z_Yee({{{}}} ∗ {{{}}}, {m}) is not the union of its singleton sets",
                        g.names(a).join(","),
                        g.names(b).join(",")
                    ));
                }
            }
        }
    }
    for &k in &ids {
        let k_ext: Vec<MorphismId> = g.cone(k).iter().copied().collect();
        for &l in &ids {
            let l_ext: Vec<MorphismId> = g.cone(l).iter().copied().collect();
            for kk in subsets_upto(&k_ext, size) {
                for ll in subsets_upto(&l_ext, size) {
                    report.differences += 1;
                    let basis = cylinder_basis(fs, gpd, k, &kk, l, &ll);
                    let rebuilt = if g.source(k) != g.source(l) {
                        BTreeSet::new()
                    } else {
                        let q = monoid.quotient(g.degree(k), g.degree(l)).expect("degrees of the graph");
                        let whole = YeeBasisSet::new(g, [(k, l)], q.clone()).expect("source matched");
                        let mut f = BTreeSet::new();
                        for &zeta in g.cone(g.unit(g.source(k))) {
                            let (Some(kz), Some(lz)) = (g.compose(k, zeta), g.compose(l, zeta)) else {
                                continue;
                            };
                            if kk.contains(&kz) || ll.contains(&lz) {
                                f.insert((kz, lz));
                            }
                        }
                        let cut = YeeBasisSet::new(g, f, q).expect("pairs extend a matched pair");
                        let cut = yee_basis_members(fs, gpd, &cut);
                        yee_basis_members(fs, gpd, &whole)
                            .difference(&cut)
                            .copied()
                            .collect()
                    };
                    if basis != rebuilt {
                        report.violations.push(format!(
                            "Z(Z({{{}}}\\{{{}}}), {}, {}, Z({{{}}}\\{{{}}})) ≠ Z_Yee difference",
                            g.name(k),
                            g.names(&kk).join(","),
                            g.degree(k),
                            g.degree(l),
                            g.name(l),
                            g.names(&ll).join(",")
                        ));
                    }
                }
            }
        }
    }
    report
}

/// `ψ_h(x, q, y) = (h(x), q, h(y))` as a map of element indices.
pub fn psi_map(g1: &FiniteGroupoid, g2: &FiniteGroupoid, h: &[usize]) -> Vec<Option<usize>> {
    g1.elements()
        .iter()
        .map(|e| g2.index_of(h[e.x], &e.q, h[e.y]))
        .collect()
}

/// `ψ_h` for the identification `h` of graph morphisms with filters.
pub fn psi_h(ms: &MorphismSpace, fs: &FilterSpace, gm: &FiniteGroupoid, gf: &FiniteGroupoid) -> Option<Vec<Option<usize>>> {
    let h = crate::morphisms::h_index(ms, fs)?;
    Some(psi_map(gm, gf, &h))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub elements: usize,
    pub pairs: usize,
    pub violations: Vec<String>,
}

impl IsoReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `psi` is a bijection that preserves and reflects
/// composability and respects products and inverses.
pub fn check_isomorphism(psi: &[Option<usize>], g1: &FiniteGroupoid, g2: &FiniteGroupoid) -> IsoReport {
    let mut report = IsoReport {
        elements: g1.len(),
        ..IsoReport::default()
    };
    let v = &mut report.violations;
    if psi.len() != g1.len() {
        v.push(format!("the map has {} entries for {} elements", psi.len(), g1.len()));
        return report;
    }
    let mut hit = vec![None; g2.len()];
    for (i, image) in psi.iter().enumerate() {
        match image {
            None => v.push(format!("{} has no image", g1.display(i))),
            Some(k) => {
                if let Some(prev) = hit[*k].replace(i) {
                    v.push(format!(
                        "{} and {} have the same image {}",
                        g1.display(prev),
                        g1.display(i),
                        g2.display(*k)
                    ));
                }
            }
        }
    }
    for (k, pre) in hit.iter().enumerate() {
        if pre.is_none() {
            v.push(format!("{} is not an image", g2.display(k)));
        }
    }
    if !v.is_empty() {
        return report;
    }
    let psi: Vec<usize> = psi.iter().map(|p| p.expect("checked")).collect();
    for i in 0..g1.len() {
        if g1.inverse(i).map(|k| psi[k]) != g2.inverse(psi[i]) {
            v.push(format!("ψ(g⁻¹) ≠ ψ(g)⁻¹ at {}", g1.display(i)));
        }
        for j in 0..g1.len() {
            report.pairs += 1;
            let (a, b) = (g1.composable(i, j), g2.composable(psi[i], psi[j]));
            if a != b {
                v.push(format!(
                    "composability of ({}, {}) is not preserved",
                    g1.display(i),
                    g1.display(j)
                ));
                continue;
            }
            if a && g1.product(i, j).map(|k| psi[k]) != g2.product(psi[i], psi[j]) {
                v.push(format!("ψ(gh) ≠ ψ(g)ψ(h) at g = {}, h = {}", g1.display(i), g1.display(j)));
            }
        }
    }
    report
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BasisImageReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl BasisImageReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `ψ_h(Z(U, m, n, V)) = Z(h(U), m, n, h(V))` for `U`, `V` cylinders with
/// `|K1|, |K2| ≤ size` and `m, n` below the window.
pub fn basis_image_check(
    ms: &MorphismSpace,
    fs: &FilterSpace,
    gm: &FiniteGroupoid,
    gf: &FiniteGroupoid,
    size: usize,
) -> BasisImageReport {
    let mut report = BasisImageReport::default();
    let Some(h) = crate::morphisms::h_index(ms, fs) else {
        report.violations.push("h does not land in the filter space".into());
        return report;
    };
    let psi = psi_map(gm, gf, &h);
    let g = fs.graph();
    let mut cylinders: BTreeMap<BTreeSet<usize>, (String, BTreeSet<usize>)> = BTreeMap::new();
    for c in CylinderSet::all_small(g, size) {
        let left = ms.cylinder(&c);
        let right = fs.cylinder(&c);
        let image: BTreeSet<usize> = left.iter().map(|&x| h[x]).collect();
        if image != right {
            report.violations.push(format!("h does not map {} onto itself", c.display(g)));
        }
        cylinders.entry(left).or_insert((c.display(g), right));
    }
    let degrees = crate::space::degree_sample(g);
    for m in &degrees {
        for n in &degrees {
            let base = BasisSet::new((0..ms.len()).collect(), m.clone(), n.clone(), (0..ms.len()).collect());
            let left_all = basis_members(ms, gm, &base);
            let base = BasisSet::new((0..fs.len()).collect(), m.clone(), n.clone(), (0..fs.len()).collect());
            let right_all = basis_members(fs, gf, &base);
            for (u, (u_name, hu)) in &cylinders {
                for (w, (w_name, hw)) in &cylinders {
                    report.checked += 1;
                    let left: BTreeSet<Option<usize>> = left_all
                        .iter()
                        .filter(|&&i| u.contains(&gm.element(i).x) && w.contains(&gm.element(i).y))
                        .map(|&i| psi[i])
                        .collect();
                    let right: BTreeSet<Option<usize>> = right_all
                        .iter()
                        .filter(|&&i| hu.contains(&gf.element(i).x) && hw.contains(&gf.element(i).y))
                        .map(|&i| Some(i))
                        .collect();
                    if left != right {
                        report.violations.push(format!(
                            "ψ_h(Z({u_name}, {m}, {n}, {w_name})) ≠ Z(h({u_name}), {m}, {n}, h({w_name}))"
                        ));
                    }
                }
            }
        }
    }
    report
}

impl fmt::Display for IsoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "isomorphism on {} elements ({} pairs)", self.elements, self.pairs)
        } else {
            write!(f, "{} violations, first: {}", self.violations.len(), self.violations[0])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::filters::{ExhaustiveSearch, Filter};
    use crate::space::is_invariant_set;

    fn point(fs: &FilterSpace, names: &[&str]) -> usize {
        fs.index_of(&Filter::from_names(fs.graph(), names).unwrap()).unwrap()
    }

    fn d(k: u32) -> Degree {
        Degree::grid([k])
    }

    #[test]
    fn e1_elements() {
        let g = catalog::e1();
        let fs = FilterSpace::new(&g);
        let (v, w, ve) = (point(&fs, &["v"]), point(&fs, &["w"]), point(&fs, &["v", "e"]));
        let a = make_element(&fs, ve, &d(1), &d(0), w).unwrap();
        assert_eq!(a.q, GroupElement::Grid(vec![1]));
        assert!(matches!(
            make_element(&fs, v, &d(0), &d(0), w),
            Err(GroupoidError::NotAnElement { .. })
        ));
        let unit_w = make_element(&fs, w, &d(0), &d(0), w).unwrap();
        assert_eq!(compose_elements(&fs, &a, &unit_w, &d(1)).unwrap(), a);
        let inv = invert_element(g.monoid(), &a).unwrap();
        assert_eq!(compose_elements(&fs, &inv, &a, &d(1)).unwrap(), unit_w);
        assert!(compose_elements(&fs, &a, &a, &d(1)).is_err());
    }

    #[test]
    fn witnesses_do_not_identify() {
        let g = catalog::nat_loop(2);
        let fs = FilterSpace::new(&g);
        let (a1, a2) = (point(&fs, &["u", "a"]), point(&fs, &["u", "a", "aa"]));
        let first = make_element(&fs, a2, &d(1), &d(0), a1).unwrap();
        let second = make_element(&fs, a2, &d(2), &d(1), a1).unwrap();
        assert_ne!(first.witness, second.witness);
        assert_eq!(first, second);
    }

    #[test]
    fn censuses() {
        let g = catalog::e1();
        let fs = FilterSpace::new(&g);
        let gpd = FiniteGroupoid::from_space(&fs, &d(1)).unwrap();
        assert_eq!(gpd.len(), 5);
        assert!(groupoid_axiom_check(&gpd).is_ok());
        let search = ExhaustiveSearch::new(&g, None).unwrap();
        let boundary = fs.boundary(&search);
        assert_eq!(gpd.reduction(&boundary).len(), 4);
        assert_eq!(gpd.reduction(&BTreeSet::from([point(&fs, &["v"])])).len(), 1);
        assert_eq!(gpd.reduction(&(0..fs.len()).collect()).len(), 5);
        assert!(invariance_check(&gpd, &boundary));
        assert!(is_invariant_set(&fs, &boundary));

        let p = catalog::point();
        let fp = FilterSpace::new(&p);
        assert_eq!(FiniteGroupoid::from_space(&fp, &d(1)).unwrap().len(), 1);

        let l = catalog::nat_loop(2);
        let fl = FilterSpace::new(&l);
        let gl = FiniteGroupoid::from_space(&fl, &d(2)).unwrap();
        assert_eq!(gl.len(), 9);
        assert!(groupoid_axiom_check(&gl).is_ok());
    }

    #[test]
    fn mutated_tables_fail() {
        let g = catalog::e1();
        let fs = FilterSpace::new(&g);
        let gpd = FiniteGroupoid::from_space(&fs, &d(1)).unwrap();
        let (i, j) = (0..gpd.len())
            .flat_map(|i| (0..gpd.len()).map(move |j| (i, j)))
            .find(|&(i, j)| gpd.composable(i, j) && gpd.product(i, j) != Some(i))
            .unwrap();
        let mut bad = gpd.clone();
        bad.set_product(i, j, i);
        assert!(!groupoid_axiom_check(&bad).is_ok());
        let mut bad = gpd.clone();
        bad.set_inverse(0, 1);
        assert!(!groupoid_axiom_check(&bad).is_ok());
    }

    #[test]
    fn psi_h_on_e1() {
        let g = catalog::e1();
        let fs = FilterSpace::new(&g);
        let ms = MorphismSpace::new(&g).unwrap();
        let gf = FiniteGroupoid::from_space(&fs, &d(1)).unwrap();
        let gm = FiniteGroupoid::from_space(&ms, &d(1)).unwrap();
        let psi = psi_h(&ms, &fs, &gm, &gf).unwrap();
        assert!(check_isomorphism(&psi, &gm, &gf).is_ok());
        let identity: Vec<Option<usize>> = (0..gf.len()).map(Some).collect();
        assert!(check_isomorphism(&identity, &gf, &gf).is_ok());
        let a = (0..gm.len()).find(|&i| gm.element(i).q == GroupElement::Grid(vec![1])).unwrap();
        let b = gm.inverse(a).unwrap();
        let mut swapped = psi.clone();
        swapped.swap(a, b);
        assert!(!check_isomorphism(&swapped, &gm, &gf).is_ok());
        assert!(basis_image_check(&ms, &fs, &gm, &gf, 1).is_ok());
    }

    #[test]
    fn basis_membership_examples() {
        let g = catalog::e1();
        let fs = FilterSpace::new(&g);
        let gpd = FiniteGroupoid::from_space(&fs, &d(1)).unwrap();
        let (w, ve) = (point(&fs, &["w"]), point(&fs, &["v", "e"]));
        let a = make_element(&fs, ve, &d(1), &d(0), w).unwrap();
        let e = g.id("e").unwrap();
        let z = BasisSet::new(
            fs.cylinder(&CylinderSet::new([e], [])),
            d(1),
            d(0),
            fs.cylinder(&CylinderSet::default()),
        );
        assert!(basis_membership(&fs, &a, &z));
        let all: BTreeSet<usize> = (0..fs.len()).collect();
        let whole = BasisSet::new(all.clone(), d(0), d(0), all);
        assert!(basis_membership(&fs, &make_element(&fs, w, &d(0), &d(0), w).unwrap(), &whole));
        let yee = YeeBasisSet::new(&g, [(e, g.id("w").unwrap())], GroupElement::Grid(vec![1])).unwrap();
        assert!(yee_basis_membership(&fs, &a, &yee));
        assert_eq!(yee_basis_members(&fs, &gpd, &yee), BTreeSet::from([gpd.lookup(&a).unwrap()]));
        let none = YeeBasisSet::new(&g, [], GroupElement::Grid(vec![0])).unwrap();
        assert!(yee_basis_members(&fs, &gpd, &none).is_empty());
        assert!(YeeBasisSet::new(&g, [(e, g.id("v").unwrap())], GroupElement::Grid(vec![1])).is_err());
    }

    #[test]
    fn tau_bases_agree() {
        let g = catalog::e1();
        let fs = FilterSpace::new(&g);
        let gpd = FiniteGroupoid::from_space(&fs, &d(1)).unwrap();
        let report = tau_equality_check(&fs, &gpd, 2);
        assert!(report.is_ok(), "{:?}", report.violations);

        let w = Degree::grid([1, 1]);
        let g = catalog::e3(&w);
        let fs = FilterSpace::new(&g);
        let gpd = FiniteGroupoid::from_space(&fs, &w).unwrap();
        let report = tau_equality_check(&fs, &gpd, 1);
        assert!(report.is_ok(), "{:?}", report.violations);
        assert!(report.differences > 0);
    }
}
