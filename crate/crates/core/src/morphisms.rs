//! The graph-morphism path space.
//!
//! A path is a degree-preserving functor `x : Ω_{P,(m_n)} → Λ`. By unique
//! factorization it is determined by its anchored values `x(e, q)`, which is
//! all a [`PathMorphism`] stores; `x(p, q)` is recovered as the degree `p⁻¹q`
//! tail of `x(e, q)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use serde::Serialize;
use thiserror::Error;

use crate::degree::{Degree, DegreeClass, DegreeError, IncreasingSequence, TailRule};
use crate::filters::{
    principal_chain, BoundaryVerdict, CylinderSet, ExhaustiveSearch, Filter, FilterSpace,
};
use crate::pgraph::{MorphismId, PGraph};
use crate::space::{degree_sample, PathSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error("({p}, {q}) is outside the stored domain")]
    OutsideDomain { p: String, q: String },
    #[error("the path is not in the domain of the action of {0}")]
    NotActionable(String),
    #[error("acting by {0} needs values beyond the window")]
    WindowOverflow(String),
    #[error("{0}")]
    Invalid(String),
    #[error("the action leaves the enumerated space at {0}")]
    NotClosed(String),
}

/// A path given by its anchored values.
///
/// `class` is the degree class of the domain and `bound` the largest stored
/// degree, the class cut down to the window. Two paths are equal exactly when
/// their anchored values agree.
#[derive(Clone, Debug, Serialize)]
pub struct PathMorphism {
    class: DegreeClass,
    bound: Degree,
    values: BTreeMap<Degree, MorphismId>,
}

impl PartialEq for PathMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl Eq for PathMorphism {}

impl Hash for PathMorphism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.values.hash(state);
    }
}

impl PathMorphism {
    /// Takes the values as given; see [`validate_graph_morphism`].
    pub fn from_anchored(
        g: &PGraph,
        class: DegreeClass,
        values: BTreeMap<Degree, MorphismId>,
    ) -> Result<Self, MorphismError> {
        let bound = g.monoid().truncate(&class, g.window())?;
        Ok(PathMorphism {
            class,
            bound,
            values,
        })
    }

    /// The path whose value at the top of the stored domain is `top`.
    pub fn from_top(g: &PGraph, class: DegreeClass, top: MorphismId) -> Result<Self, MorphismError> {
        let bound = g.monoid().truncate(&class, g.window())?;
        if *g.degree(top) != bound {
            return Err(MorphismError::Invalid(format!(
                "{} has degree {}, expected {bound}",
                g.name(top),
                g.degree(top)
            )));
        }
        let mut values = BTreeMap::new();
        for q in g.monoid().divisors(&bound)? {
            let (head, _) = g.factor(top, &q).ok_or_else(|| {
                MorphismError::Invalid(format!("{} does not factor through {q}", g.name(top)))
            })?;
            values.insert(q, head);
        }
        Ok(PathMorphism {
            class,
            bound,
            values,
        })
    }

    pub fn class(&self) -> &DegreeClass {
        &self.class
    }

    pub fn bound(&self) -> &Degree {
        &self.bound
    }

    pub fn values(&self) -> &BTreeMap<Degree, MorphismId> {
        &self.values
    }

    /// The value at the top of the stored domain.
    pub fn top(&self) -> Option<MorphismId> {
        self.values.get(&self.bound).copied()
    }

    pub fn display(&self, g: &PGraph) -> String {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(q, &l)| format!("{q}↦{}", g.name(l)))
            .collect();
        format!("[{}; {}]", self.class, parts.join(", "))
    }
}

/// `x(p, q)`: the unique `ι` with `x(e, q) = x(e, p)ι`.
pub fn eval(g: &PGraph, x: &PathMorphism, p: &Degree, q: &Degree) -> Result<MorphismId, MorphismError> {
    let outside = || MorphismError::OutsideDomain {
        p: p.to_string(),
        q: q.to_string(),
    };
    if !g.monoid().leq(p, q)? {
        return Err(outside());
    }
    let l = *x.values.get(q).ok_or_else(outside)?;
    g.factor(l, p).map(|(_, tail)| tail).ok_or_else(outside)
}

pub fn degree_of(x: &PathMorphism) -> &DegreeClass {
    &x.class
}

/// Every way in which `x` fails to be a stored graph morphism.
pub fn validate_graph_morphism(g: &PGraph, x: &PathMorphism) -> Vec<String> {
    let monoid = g.monoid();
    let mut out = Vec::new();
    match monoid.truncate(&x.class, g.window()) {
        Ok(t) if t == x.bound => {}
        _ => out.push(format!("stored bound {} does not match class {}", x.bound, x.class)),
    }
    let expected: BTreeSet<Degree> = monoid
        .divisors(&x.bound)
        .map(|v| v.into_iter().collect())
        .unwrap_or_default();
    let stored: BTreeSet<Degree> = x.values.keys().cloned().collect();
    if expected != stored {
        out.push(format!("stored degrees are not the divisors of {}", x.bound));
    }
    match x.values.get(&monoid.identity()) {
        Some(&l) if g.is_unit(l) => {}
        _ => out.push("the value at e is not a unit".to_owned()),
    }
    for (q, &l) in &x.values {
        if g.degree(l) != q {
            out.push(format!("degree of x(e,{q}) = {} is {}", g.name(l), g.degree(l)));
        }
    }
    for (q, &l) in &x.values {
        for (p, &k) in &x.values {
            if p == q || !monoid.leq(p, q).unwrap_or(false) {
                continue;
            }
            if g.factor(l, p).map(|(head, _)| head) != Some(k) {
                out.push(format!(
                    "x(e,{p}) = {} is not the {p}-factor of x(e,{q}) = {}",
                    g.name(k),
                    g.name(l)
                ));
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    let degrees: Vec<&Degree> = x.values.keys().collect();
    for p in &degrees {
        for q in &degrees {
            if !monoid.leq(p, q).unwrap_or(false) {
                continue;
            }
            for r in &degrees {
                if !monoid.leq(q, r).unwrap_or(false) {
                    continue;
                }
                let pq = eval(g, x, p, q);
                let qr = eval(g, x, q, r);
                let pr = eval(g, x, p, r);
                let product = match (&pq, &qr) {
                    (Ok(a), Ok(b)) => g.compose(*a, *b),
                    _ => None,
                };
                if product.is_none() || product != pr.as_ref().ok().copied() {
                    out.push(format!("functoriality fails on ({p},{q}),({q},{r})"));
                }
            }
        }
    }
    out
}

/// `(e, p)` lies in the domain of `x`.
pub fn is_actionable(g: &PGraph, x: &PathMorphism, p: &Degree) -> bool {
    g.monoid().class_dominates(&x.class, p).unwrap_or(false)
}

fn eventually_below(g: &PGraph, s: &IncreasingSequence, p: &Degree) -> (bool, usize) {
    let size = match p {
        Degree::Grid(c) => c.iter().copied().max().unwrap_or(0) as usize,
        Degree::Word(w) => w.chars().count(),
    };
    let n = s.head().len() + size;
    (g.monoid().leq(p, &s.term(n)).unwrap_or(false), n)
}

/// The four equivalent forms of actionability, evaluated on representative
/// sequences of the domain class: membership of `(e, p)`; `p ≤ m_n`
/// eventually for every representative; for some representative; and
/// `p ≤ m_n` for all `n` for some representative.
pub fn actionable_characterizations(g: &PGraph, x: &PathMorphism, p: &Degree) -> [bool; 4] {
    let reps = g
        .monoid()
        .class_representatives(&x.class)
        .unwrap_or_default();
    let eventually: Vec<(bool, usize)> = reps.iter().map(|s| eventually_below(g, s, p)).collect();
    let all_terms = reps.iter().zip(&eventually).any(|(s, &(ok, n))| {
        let tail = s.suffix(n);
        ok && (0..=tail.head().len() + 2).all(|i| g.monoid().leq(p, &tail.term(i)).unwrap_or(false))
    });
    [
        is_actionable(g, x, p),
        !reps.is_empty() && eventually.iter().all(|&(ok, _)| ok),
        eventually.iter().any(|&(ok, _)| ok),
        all_terms,
    ]
}

/// `(x·m)(p, q) = x(mp, mq)`.
pub fn act_morphism(g: &PGraph, x: &PathMorphism, m: &Degree) -> Result<PathMorphism, MorphismError> {
    let monoid = g.monoid();
    if !is_actionable(g, x, m) {
        return Err(MorphismError::NotActionable(m.to_string()));
    }
    let bound = monoid
        .left_divide(m, &x.bound)?
        .ok_or_else(|| MorphismError::WindowOverflow(m.to_string()))?;
    let class = monoid.class_left_divide(&x.class, m)?;
    let mut values = BTreeMap::new();
    for q in monoid.divisors(&bound)? {
        let mq = monoid.compose(m, &q)?;
        values.insert(q, eval(g, x, m, &mq)?);
    }
    Ok(PathMorphism {
        class,
        bound,
        values,
    })
}

/// `h(x) = x(e·dom x)`, the set of anchored values.
pub fn to_filter(x: &PathMorphism) -> Filter {
    Filter::new(x.values.values().copied().collect())
}

/// `h⁻¹(y)`, built from the chain of principal filters in canonical order.
pub fn from_filter(g: &PGraph, y: &Filter) -> Result<PathMorphism, MorphismError> {
    let order: Vec<MorphismId> = y.members().iter().copied().collect();
    from_filter_with_order(g, y, &order)
}

/// `h⁻¹(y)` from the chain obtained by visiting the elements of `y` in `order`.
pub fn from_filter_with_order(
    g: &PGraph,
    y: &Filter,
    order: &[MorphismId],
) -> Result<PathMorphism, MorphismError> {
    let chain = principal_chain(g, y, order);
    let Some(&top) = chain.last() else {
        return Err(MorphismError::Invalid("the empty set is not a filter".into()));
    };
    if !y.members().iter().all(|&l| g.precedes(l, top)) {
        return Err(MorphismError::Invalid(format!(
            "{} is not exhausted by a chain",
            y.display(g)
        )));
    }
    let head: Vec<Degree> = chain.iter().map(|&l| g.degree(l).clone()).collect();
    let seq = g.monoid().sequence(head, TailRule::Constant)?;
    let class = g.monoid().degree_class(&seq)?;
    PathMorphism::from_top(g, class, top)
}

/// The boundary condition: at every stored `m`, for every exhaustive `E` at
/// `s(x(e,m))`, some `ν ∈ E` has `x(m, m d(ν)) = ν`.
pub fn is_boundary_morphism(g: &PGraph, search: &ExhaustiveSearch, x: &PathMorphism) -> BoundaryVerdict {
    let monoid = g.monoid();
    let mut truncated = false;
    for (m, &mu) in &x.values {
        for e in search.at(g.source(mu)) {
            let mut ok = false;
            for &nu in e {
                let Ok(mn) = monoid.compose(m, g.degree(nu)) else { continue };
                if !g.window_admits(&mn) {
                    truncated = true;
                    ok = true;
                    continue;
                }
                if monoid.leq(&mn, &x.bound).unwrap_or(false) && eval(g, x, m, &mn).ok() == Some(nu) {
                    ok = true;
                    break;
                }
            }
            if !ok {
                return BoundaryVerdict {
                    boundary: false,
                    truncated,
                    witness: Some((mu, e.clone())),
                };
            }
        }
    }
    BoundaryVerdict {
        boundary: true,
        truncated,
        witness: None,
    }
}

pub fn morphism_cylinder_membership(x: &PathMorphism, c: &CylinderSet) -> bool {
    c.contains_set(&x.values.values().copied().collect())
}

/// The graph-morphism path space, enumerated as `h⁻¹` of the filters, with
/// its own action table computed by [`act_morphism`].
#[derive(Clone, Debug)]
pub struct MorphismSpace<'g> {
    graph: &'g PGraph,
    points: Vec<PathMorphism>,
    index: HashMap<PathMorphism, usize>,
    actions: Vec<BTreeMap<Degree, usize>>,
}

impl<'g> MorphismSpace<'g> {
    pub fn new(graph: &'g PGraph) -> Result<Self, MorphismError> {
        let filters = FilterSpace::new(graph);
        let points = filters
            .points()
            .iter()
            .map(|y| from_filter(graph, y))
            .collect::<Result<Vec<_>, _>>()?;
        let index: HashMap<PathMorphism, usize> =
            points.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let mut actions = Vec::with_capacity(points.len());
        for x in &points {
            let mut row = BTreeMap::new();
            for m in x.values.keys() {
                if !is_actionable(graph, x, m) {
                    continue;
                }
                let y = act_morphism(graph, x, m)?;
                let j = *index
                    .get(&y)
                    .ok_or_else(|| MorphismError::NotClosed(x.display(graph)))?;
                row.insert(m.clone(), j);
            }
            actions.push(row);
        }
        Ok(MorphismSpace {
            graph,
            points,
            index,
            actions,
        })
    }

    pub fn points(&self) -> &[PathMorphism] {
        &self.points
    }

    pub fn point(&self, x: usize) -> &PathMorphism {
        &self.points[x]
    }

    pub fn index_of(&self, x: &PathMorphism) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn cylinder(&self, c: &CylinderSet) -> BTreeSet<usize> {
        (0..self.points.len())
            .filter(|&i| morphism_cylinder_membership(&self.points[i], c))
            .collect()
    }

    pub fn boundary(&self, search: &ExhaustiveSearch) -> BTreeSet<usize> {
        (0..self.points.len())
            .filter(|&i| is_boundary_morphism(self.graph, search, &self.points[i]).boundary)
            .collect()
    }
}

impl PathSpace for MorphismSpace<'_> {
    fn graph(&self) -> &PGraph {
        self.graph
    }

    fn len(&self) -> usize {
        self.points.len()
    }

    fn act(&self, x: usize, m: &Degree) -> Option<usize> {
        self.actions[x].get(m).copied()
    }

    fn label(&self, x: usize) -> String {
        self.points[x].display(self.graph)
    }
}

/// `h` as a map of point indices, if every image is a point of `filters`.
pub fn h_index(ms: &MorphismSpace, fs: &FilterSpace) -> Option<Vec<usize>> {
    ms.points().iter().map(|x| fs.index_of(&to_filter(x))).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConjugacyReport {
    pub points: usize,
    pub checked_pairs: usize,
    pub c1: Vec<String>,
    pub c2: Vec<String>,
    pub c3: Vec<String>,
    pub cylinders: Vec<String>,
}

impl ConjugacyReport {
    pub fn is_ok(&self) -> bool {
        self.c1.is_empty() && self.c2.is_empty() && self.c3.is_empty() && self.cylinders.is_empty()
    }
}

/// Checks that `h` is a bijection (C1), matches the action domains (C2),
/// intertwines the actions (C3), and identifies cylinder sets.
pub fn conjugacy_check(ms: &MorphismSpace, fs: &FilterSpace) -> ConjugacyReport {
    let g = fs.graph();
    let mut report = ConjugacyReport {
        points: fs.len(),
        ..ConjugacyReport::default()
    };
    for x in ms.points() {
        let y = to_filter(x);
        match from_filter(g, &y) {
            Ok(back) if back == *x => {}
            _ => report.c1.push(format!("h⁻¹(h(x)) ≠ x at {}", x.display(g))),
        }
    }
    for y in fs.points() {
        match from_filter(g, y) {
            Ok(x) if to_filter(&x) == *y => {}
            _ => report.c1.push(format!("h(h⁻¹(y)) ≠ y at {}", y.display(g))),
        }
    }
    let Some(h) = h_index(ms, fs) else {
        report.c1.push("some h(x) is not an enumerated filter".into());
        return report;
    };
    let image: BTreeSet<usize> = h.iter().copied().collect();
    if image.len() != h.len() || h.len() != fs.len() {
        report.c1.push("h is not a bijection of the enumerated spaces".into());
        return report;
    }
    for m in degree_sample(g) {
        let dom_m: BTreeSet<usize> = (0..ms.len()).filter(|&x| ms.act(x, &m).is_some()).map(|x| h[x]).collect();
        let dom_f: BTreeSet<usize> = (0..fs.len()).filter(|&y| fs.act(y, &m).is_some()).collect();
        if dom_m != dom_f {
            report.c2.push(format!("h(dom T^{m}) ≠ dom T^{m}"));
        }
        for x in 0..ms.len() {
            let Some(xm) = ms.act(x, &m) else { continue };
            report.checked_pairs += 1;
            if fs.act(h[x], &m) != Some(h[xm]) {
                report
                    .c3
                    .push(format!("h(x·{m}) ≠ h(x)·{m} at {}", ms.label(x)));
            }
        }
    }
    for c in CylinderSet::all_small(g, 1) {
        let left: BTreeSet<usize> = ms.cylinder(&c).into_iter().map(|x| h[x]).collect();
        if left != fs.cylinder(&c) {
            report.cylinders.push(format!("h does not preserve {}", c.display(g)));
        }
    }
    report
}
