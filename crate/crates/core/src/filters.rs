//! The filter path space: nonempty, hereditary, directed sets of morphisms.
//!
//! In a finite window every filter has a largest element, so the space is
//! exactly the set of principal filters `↓λ`. Enumeration relies on this and
//! the tests check it against a brute-force search over all subsets.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree::Degree;
use crate::pgraph::{GraphError, MorphismId, PGraph, VertexId};
use crate::space::PathSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no morphism with id {0}")]
    UnknownId(usize),
    #[error("{0} is not a filter: {1}")]
    NotAFilter(String, String),
    #[error("{morphism} is not in {filter}")]
    NotInFilter { morphism: String, filter: String },
    #[error("s({morphism}) is not the range of {filter}")]
    RangeMismatch { morphism: String, filter: String },
    #[error("{left}·{right} leaves the window")]
    WindowOverflow { left: String, right: String },
    #[error("{filter} has no element of degree {degree}")]
    NotInDomain { filter: String, degree: String },
    #[error("exhaustive-set search over {0} candidates is too large")]
    SearchTooLarge(usize),
}

/// A set of morphisms, normally a filter.
///
/// Filters are ordered by their largest element, which in a finite window is
/// the morphism generating them; ties fall back to the element lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Filter(BTreeSet<MorphismId>);

impl Ord for Filter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .last()
            .cmp(&other.0.last())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Filter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Filter {
    pub fn new(members: BTreeSet<MorphismId>) -> Self {
        Filter(members)
    }

    pub fn from_names(g: &PGraph, names: &[&str]) -> Result<Self, FilterError> {
        let members = names
            .iter()
            .map(|n| g.id(n))
            .collect::<Result<BTreeSet<_>, _>>()?;
        Ok(Filter(members))
    }

    pub fn members(&self) -> &BTreeSet<MorphismId> {
        &self.0
    }

    pub fn contains(&self, l: MorphismId) -> bool {
        self.0.contains(&l)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self, g: &PGraph) -> Vec<String> {
        g.names(&self.0)
    }

    pub fn display(&self, g: &PGraph) -> String {
        format!("{{{}}}", self.names(g).join(","))
    }

    /// `x ∩ Λ^{≤ bound}`.
    pub fn truncate(&self, g: &PGraph, bound: &Degree) -> Filter {
        Filter(
            self.0
                .iter()
                .copied()
                .filter(|&l| g.monoid().leq(g.degree(l), bound).unwrap_or(false))
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FilterViolation {
    Empty,
    NotHereditary { member: String, missing: String },
    NotDirected { left: String, right: String },
}

impl fmt::Display for FilterViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterViolation::Empty => write!(f, "the set is empty"),
            FilterViolation::NotHereditary { member, missing } => {
                write!(f, "{missing} ⪯ {member} is missing")
            }
            FilterViolation::NotDirected { left, right } => {
                write!(f, "{left} and {right} have no common extension in the set")
            }
        }
    }
}

fn check_ids(g: &PGraph, set: &BTreeSet<MorphismId>) -> Result<(), FilterError> {
    match set.iter().find(|l| l.0 >= g.len()) {
        Some(l) => Err(FilterError::UnknownId(l.0)),
        None => Ok(()),
    }
}

/// Every way in which `set` fails to be a filter.
pub fn filter_violations(
    g: &PGraph,
    set: &BTreeSet<MorphismId>,
) -> Result<Vec<FilterViolation>, FilterError> {
    check_ids(g, set)?;
    let mut out = Vec::new();
    if set.is_empty() {
        out.push(FilterViolation::Empty);
    }
    for &l in set {
        for &mu in g.divisors(l) {
            if !set.contains(&mu) {
                out.push(FilterViolation::NotHereditary {
                    member: g.name(l).to_owned(),
                    missing: g.name(mu).to_owned(),
                });
            }
        }
    }
    for &a in set {
        for &b in set.range(a..) {
            if !set.iter().any(|&c| g.precedes(a, c) && g.precedes(b, c)) {
                out.push(FilterViolation::NotDirected {
                    left: g.name(a).to_owned(),
                    right: g.name(b).to_owned(),
                });
            }
        }
    }
    Ok(out)
}

pub fn is_filter(g: &PGraph, set: &BTreeSet<MorphismId>) -> Result<bool, FilterError> {
    Ok(filter_violations(g, set)?.is_empty())
}

/// `↓λ`.
pub fn principal(g: &PGraph, l: MorphismId) -> Filter {
    Filter(g.divisors(l).clone())
}

/// All filters of the graph in canonical order.
pub fn enumerate_filters(g: &PGraph) -> Vec<Filter> {
    let set: BTreeSet<Filter> = g.ids().map(|l| principal(g, l)).collect();
    set.into_iter().collect()
}

/// The vertex whose unit lies in `x`.
pub fn range_of(g: &PGraph, x: &Filter) -> Option<VertexId> {
    x.0.iter()
        .copied()
        .find(|&l| g.is_unit(l))
        .map(|l| g.range(l))
}

/// `σ_λ(x) = {μ : λμ ∈ x}`.
pub fn shift_down(g: &PGraph, l: MorphismId, x: &Filter) -> Result<Filter, FilterError> {
    if !x.contains(l) {
        return Err(FilterError::NotInFilter {
            morphism: g.name(l).to_owned(),
            filter: x.display(g),
        });
    }
    Ok(Filter(
        g.cone(g.unit(g.source(l)))
            .iter()
            .copied()
            .filter(|&mu| g.compose(l, mu).is_some_and(|lm| x.contains(lm)))
            .collect(),
    ))
}

/// `{ζ : ζ ⪯ λμ for some μ ∈ x}`.
pub fn shift_up(g: &PGraph, l: MorphismId, x: &Filter) -> Result<Filter, FilterError> {
    if range_of(g, x) != Some(g.source(l)) {
        return Err(FilterError::RangeMismatch {
            morphism: g.name(l).to_owned(),
            filter: x.display(g),
        });
    }
    let mut out = BTreeSet::new();
    for &mu in &x.0 {
        let lm = g.compose(l, mu).ok_or_else(|| FilterError::WindowOverflow {
            left: g.name(l).to_owned(),
            right: g.name(mu).to_owned(),
        })?;
        out.extend(g.divisors(lm).iter().copied());
    }
    Ok(Filter(out))
}

/// `T^m(x) = σ_μ(x)` for the unique `μ ∈ x` of degree `m`.
pub fn act(g: &PGraph, x: &Filter, m: &Degree) -> Result<Filter, FilterError> {
    let mu = x
        .0
        .iter()
        .copied()
        .find(|&l| g.degree(l) == m)
        .ok_or_else(|| FilterError::NotInDomain {
            filter: x.display(g),
            degree: m.to_string(),
        })?;
    shift_down(g, mu, x)
}

/// The basic open set `Z(K1 \ K2) = {x : K1 ⊆ x ⊆ Λ ∖ K2}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CylinderSet {
    pub k1: BTreeSet<MorphismId>,
    pub k2: BTreeSet<MorphismId>,
}

impl CylinderSet {
    pub fn new(k1: impl IntoIterator<Item = MorphismId>, k2: impl IntoIterator<Item = MorphismId>) -> Self {
        CylinderSet {
            k1: k1.into_iter().collect(),
            k2: k2.into_iter().collect(),
        }
    }

    pub fn from_names(g: &PGraph, k1: &[&str], k2: &[&str]) -> Result<Self, FilterError> {
        let ids = |names: &[&str]| {
            names
                .iter()
                .map(|n| g.id(n))
                .collect::<Result<BTreeSet<_>, _>>()
        };
        Ok(CylinderSet {
            k1: ids(k1)?,
            k2: ids(k2)?,
        })
    }

    pub fn contains_set(&self, x: &BTreeSet<MorphismId>) -> bool {
        self.k1.is_subset(x) && self.k2.is_disjoint(x)
    }

    pub fn contains(&self, x: &Filter) -> bool {
        self.contains_set(&x.0)
    }

    pub fn display(&self, g: &PGraph) -> String {
        format!("Z({{{}}}\\{{{}}})", g.names(&self.k1).join(","), g.names(&self.k2).join(","))
    }

    /// All cylinders with `|K1|, |K2| ≤ size`, in a fixed order.
    pub fn all_small(g: &PGraph, size: usize) -> Vec<CylinderSet> {
        let ids: Vec<MorphismId> = g.ids().collect();
        let subsets = small_subsets(&ids, size);
        let mut out = Vec::new();
        for k1 in &subsets {
            for k2 in &subsets {
                out.push(CylinderSet {
                    k1: k1.clone(),
                    k2: k2.clone(),
                });
            }
        }
        out
    }
}

fn small_subsets(ids: &[MorphismId], size: usize) -> Vec<BTreeSet<MorphismId>> {
    let mut out = vec![BTreeSet::new()];
    let mut layer = vec![(BTreeSet::new(), 0usize)];
    for _ in 0..size {
        let mut next = Vec::new();
        for (set, start) in &layer {
            for (i, &l) in ids.iter().enumerate().skip(*start) {
                let mut bigger: BTreeSet<MorphismId> = set.clone();
                bigger.insert(l);
                out.push(bigger.clone());
                next.push((bigger, i + 1));
            }
        }
        layer = next;
    }
    out
}

/// Cylinder names as they appear in JSON files.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderRecord {
    #[serde(rename = "K1", default)]
    pub k1: Vec<String>,
    #[serde(rename = "K2", default)]
    pub k2: Vec<String>,
}

impl CylinderRecord {
    pub fn resolve(&self, g: &PGraph) -> Result<CylinderSet, FilterError> {
        let k1: Vec<&str> = self.k1.iter().map(String::as_str).collect();
        let k2: Vec<&str> = self.k2.iter().map(String::as_str).collect();
        CylinderSet::from_names(g, &k1, &k2)
    }
}

/// `E` is exhaustive when every `λ` with `r(λ) ∈ r(E)` has a common
/// extension with some element of `E`. Returns a `λ` meeting nothing.
pub fn exhaustive_witness(g: &PGraph, e: &BTreeSet<MorphismId>) -> Option<MorphismId> {
    let ranges: BTreeSet<VertexId> = e.iter().map(|&l| g.range(l)).collect();
    g.ids()
        .filter(|&l| ranges.contains(&g.range(l)))
        .find(|&l| e.iter().all(|&mu| g.mce(l, mu).is_empty()))
}

pub fn is_exhaustive(g: &PGraph, e: &BTreeSet<MorphismId>) -> bool {
    exhaustive_witness(g, e).is_none()
}

const SEARCH_LIMIT: usize = 20;

/// Inclusion-minimal exhaustive sets of non-units at each vertex, drawn from
/// morphisms of degree at most the depth bound. Any exhaustive set contains
/// one of these or a unit, so extendability only needs to be tested against
/// them.
#[derive(Clone, Debug)]
pub struct ExhaustiveSearch {
    pub depth: Option<Degree>,
    pub sets: Vec<Vec<BTreeSet<MorphismId>>>,
}

impl ExhaustiveSearch {
    pub fn new(g: &PGraph, depth: Option<&Degree>) -> Result<Self, FilterError> {
        let depth = depth.cloned().or_else(|| g.window().cloned());
        let mut sets = Vec::new();
        for v in 0..g.vertex_names().len() {
            let v = VertexId(v);
            let candidates: Vec<MorphismId> = g
                .from_vertex(v, depth.as_ref())
                .into_iter()
                .filter(|&l| !g.is_unit(l))
                .collect();
            if candidates.len() > SEARCH_LIMIT {
                return Err(FilterError::SearchTooLarge(candidates.len()));
            }
            let masks: Vec<u32> = g
                .from_vertex(v, None)
                .into_iter()
                .map(|l| {
                    candidates
                        .iter()
                        .enumerate()
                        .filter(|&(_, &mu)| !g.mce(l, mu).is_empty())
                        .fold(0u32, |acc, (i, _)| acc | (1 << i))
                })
                .collect();
            let mut order: Vec<u32> = (1..(1u32 << candidates.len())).collect();
            order.sort_by_key(|m| (m.count_ones(), *m));
            let mut minimal: Vec<u32> = Vec::new();
            for e in order {
                if minimal.iter().any(|&f| f & !e == 0) {
                    continue;
                }
                if masks.iter().all(|&hit| hit & e != 0) {
                    minimal.push(e);
                }
            }
            sets.push(
                minimal
                    .into_iter()
                    .map(|e| {
                        candidates
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| e & (1 << i) != 0)
                            .map(|(_, &l)| l)
                            .collect()
                    })
                    .collect(),
            );
        }
        Ok(ExhaustiveSearch { depth, sets })
    }

    pub fn at(&self, v: VertexId) -> &[BTreeSet<MorphismId>] {
        &self.sets[v.0]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    /// `μν ∈ x` for this `ν ∈ E`.
    Within(MorphismId),
    /// `μν` would leave the window; counted as an extension.
    Truncated(MorphismId),
    None,
}

/// Whether some `ν ∈ E` has `μν ∈ x`.
pub fn is_extendable(g: &PGraph, mu: MorphismId, x: &Filter, e: &BTreeSet<MorphismId>) -> Extension {
    let composable = || e.iter().copied().filter(|&nu| g.range(nu) == g.source(mu));
    if let Some(nu) = composable().find(|&nu| g.compose(mu, nu).is_some_and(|l| x.contains(l))) {
        return Extension::Within(nu);
    }
    let overflow = composable().find(|&nu| {
        g.compose(mu, nu).is_none()
            && g.monoid()
                .compose(g.degree(mu), g.degree(nu))
                .is_ok_and(|d| !g.window_admits(&d))
    });
    match overflow {
        Some(nu) => Extension::Truncated(nu),
        None => Extension::None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryVerdict {
    pub boundary: bool,
    /// Some extension was only assumed because it left the window.
    pub truncated: bool,
    /// A `μ ∈ x` and an exhaustive set it does not extend past.
    pub witness: Option<(MorphismId, BTreeSet<MorphismId>)>,
}

/// Every `μ ∈ x` is extendable against every exhaustive set in the search.
pub fn is_boundary(g: &PGraph, search: &ExhaustiveSearch, x: &Filter) -> BoundaryVerdict {
    let mut truncated = false;
    for &mu in &x.0 {
        for e in search.at(g.source(mu)) {
            match is_extendable(g, mu, x, e) {
                Extension::Within(_) => {}
                Extension::Truncated(_) => truncated = true,
                Extension::None => {
                    return BoundaryVerdict {
                        boundary: false,
                        truncated,
                        witness: Some((mu, e.clone())),
                    }
                }
            }
        }
    }
    BoundaryVerdict {
        boundary: true,
        truncated,
        witness: None,
    }
}

/// A `⪯`-increasing chain in `y` whose principal filters exhaust `y`: the
/// first element of `order`, then at each step the least common extension
/// in `y` of the previous link and the next element of `order`.
pub fn principal_chain(g: &PGraph, y: &Filter, order: &[MorphismId]) -> Vec<MorphismId> {
    let mut chain: Vec<MorphismId> = Vec::new();
    for &l in order {
        let next = match chain.last() {
            None => l,
            Some(&prev) => y
                .0
                .iter()
                .copied()
                .filter(|&k| g.precedes(prev, k) && g.precedes(l, k))
                .min_by(|&a, &b| (g.degree(a), a).cmp(&(g.degree(b), b)))
                .unwrap_or(prev),
        };
        chain.push(next);
    }
    chain
}

/// The filter path space of a graph with its action table.
#[derive(Clone, Debug)]
pub struct FilterSpace<'g> {
    graph: &'g PGraph,
    points: Vec<Filter>,
    index: HashMap<Filter, usize>,
    actions: Vec<BTreeMap<Degree, usize>>,
}

impl<'g> FilterSpace<'g> {
    pub fn new(graph: &'g PGraph) -> Self {
        let points = enumerate_filters(graph);
        let index: HashMap<Filter, usize> =
            points.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let actions = points
            .iter()
            .map(|x| {
                x.0.iter()
                    .map(|&mu| {
                        let y = shift_down(graph, mu, x).expect("μ ∈ x");
                        (graph.degree(mu).clone(), index[&y])
                    })
                    .collect()
            })
            .collect();
        FilterSpace {
            graph,
            points,
            index,
            actions,
        }
    }

    pub fn points(&self) -> &[Filter] {
        &self.points
    }

    pub fn point(&self, x: usize) -> &Filter {
        &self.points[x]
    }

    pub fn index_of(&self, x: &Filter) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Indices of points in a cylinder.
    pub fn cylinder(&self, c: &CylinderSet) -> BTreeSet<usize> {
        (0..self.points.len())
            .filter(|&i| c.contains(&self.points[i]))
            .collect()
    }

    pub fn ultrafilters(&self) -> BTreeSet<usize> {
        (0..self.points.len()).filter(|&i| self.is_ultrafilter(i)).collect()
    }

    pub fn is_ultrafilter(&self, x: usize) -> bool {
        let me = &self.points[x].0;
        !self
            .points
            .iter()
            .any(|y| y.0.len() > me.len() && me.is_subset(&y.0))
    }

    pub fn boundary(&self, search: &ExhaustiveSearch) -> BTreeSet<usize> {
        (0..self.points.len())
            .filter(|&i| is_boundary(self.graph, search, &self.points[i]).boundary)
            .collect()
    }
}

impl PathSpace for FilterSpace<'_> {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::space::{action_axioms_check, is_invariant_set};

    fn set(g: &PGraph, names: &[&str]) -> BTreeSet<MorphismId> {
        Filter::from_names(g, names).unwrap().0
    }

    #[test]
    fn e1_filter_checks() {
        let g = catalog::e1();
        assert!(is_filter(&g, &set(&g, &["v", "e"])).unwrap());
        assert_eq!(
            filter_violations(&g, &set(&g, &["v", "w"])).unwrap(),
            vec![FilterViolation::NotDirected {
                left: "v".into(),
                right: "w".into()
            }]
        );
        assert_eq!(
            filter_violations(&g, &set(&g, &["e"])).unwrap(),
            vec![FilterViolation::NotHereditary {
                member: "e".into(),
                missing: "v".into()
            }]
        );
        assert!(!is_filter(&g, &BTreeSet::new()).unwrap());
        assert_eq!(
            is_filter(&g, &BTreeSet::from([MorphismId(9)])),
            Err(FilterError::UnknownId(9))
        );
    }

    #[test]
    fn e1_census() {
        let g = catalog::e1();
        let listed: Vec<String> = enumerate_filters(&g).iter().map(|x| x.display(&g)).collect();
        assert_eq!(listed, ["{v}", "{w}", "{v,e}"]);
        let space = FilterSpace::new(&g);
        let ultra: Vec<String> = space.ultrafilters().iter().map(|&i| space.label(i)).collect();
        assert_eq!(ultra, ["{w}", "{v,e}"]);
        let search = ExhaustiveSearch::new(&g, None).unwrap();
        let boundary: Vec<String> = space.boundary(&search).iter().map(|&i| space.label(i)).collect();
        assert_eq!(boundary, ["{w}", "{v,e}"]);
        assert_eq!(enumerate_filters(&catalog::point()).len(), 1);
    }

    #[test]
    fn principal_filters_and_ranges() {
        let g = catalog::e1();
        let (v, e, w) = (g.id("v").unwrap(), g.id("e").unwrap(), g.id("w").unwrap());
        assert_eq!(principal(&g, e).display(&g), "{v,e}");
        assert_eq!(principal(&g, w).display(&g), "{w}");
        assert_eq!(range_of(&g, &principal(&g, e)), Some(g.range(v)));
        let omega = PGraph::build_omega(&crate::degree::DegreeMonoid::grid(2), &Degree::grid([1, 1])).unwrap();
        let top = omega.id("((0,0),(1,1))").unwrap();
        assert_eq!(principal(&omega, top).len(), 4);
        let mid = omega.id("((1,0),(1,1))").unwrap();
        let unit = omega.id("((1,0),(1,0))").unwrap();
        assert_eq!(range_of(&omega, &principal(&omega, mid)), Some(omega.range(unit)));
    }

    #[test]
    fn shifts_on_e1_and_the_loop() {
        let g = catalog::e1();
        let e = g.id("e").unwrap();
        let x = principal(&g, e);
        assert_eq!(shift_down(&g, e, &x).unwrap().display(&g), "{w}");
        let w = Filter::from_names(&g, &["w"]).unwrap();
        assert_eq!(shift_up(&g, e, &w).unwrap(), x);
        let v = g.id("v").unwrap();
        assert_eq!(shift_down(&g, v, &x).unwrap(), x);
        assert!(matches!(shift_down(&g, e, &w), Err(FilterError::NotInFilter { .. })));
        assert!(matches!(shift_up(&g, e, &x), Err(FilterError::RangeMismatch { .. })));

        let l = catalog::nat_loop(3);
        let a = l.id("a").unwrap();
        let a2 = principal(&l, l.id("aa").unwrap());
        let a3 = principal(&l, l.id("aaa").unwrap());
        assert_eq!(shift_down(&l, a, &a3).unwrap(), a2);
        assert_eq!(shift_up(&l, a, &a2).unwrap(), a3);
        assert!(matches!(shift_up(&l, a, &a3), Err(FilterError::WindowOverflow { .. })));
    }

    #[test]
    fn act_examples() {
        let g = catalog::e1();
        let x = Filter::from_names(&g, &["v", "e"]).unwrap();
        assert_eq!(act(&g, &x, &Degree::grid([1])).unwrap().display(&g), "{w}");
        assert_eq!(act(&g, &x, &Degree::grid([0])).unwrap(), x);
        assert!(matches!(
            act(&g, &x, &Degree::grid([2])),
            Err(FilterError::NotInDomain { .. })
        ));
        let e3 = catalog::e3(&Degree::grid([1, 1]));
        let br = principal(&e3, e3.id("br").unwrap());
        let r = principal(&e3, e3.id("r").unwrap());
        assert_eq!(act(&e3, &br, &Degree::grid([1, 0])).unwrap(), r);
    }

    #[test]
    fn action_axioms_on_examples() {
        let g = catalog::e1();
        let report = action_axioms_check(&FilterSpace::new(&g));
        assert!(report.is_ok(), "{report:?}");
        assert_eq!(report.skipped, 0);
        let l = catalog::nat_loop(3);
        let report = action_axioms_check(&FilterSpace::new(&l));
        assert!(report.is_ok());
        assert!(report
            .skipped_examples
            .iter()
            .any(|s| s.starts_with("({aaa}") || s.contains("m=2, n=2")));
        let e3 = catalog::e3(&Degree::grid([2, 2]));
        assert!(action_axioms_check(&FilterSpace::new(&e3)).is_ok());
    }

    #[test]
    fn loop_census() {
        for m in 0..5 {
            let l = catalog::nat_loop(m);
            let space = FilterSpace::new(&l);
            assert_eq!(space.len(), m as usize + 1);
            assert_eq!(space.ultrafilters().len(), 1);
        }
    }

    #[test]
    fn cylinders_on_e1() {
        let g = catalog::e1();
        let space = FilterSpace::new(&g);
        let labels = |c: &CylinderSet| -> Vec<String> {
            space.cylinder(c).iter().map(|&i| space.label(i)).collect()
        };
        assert_eq!(labels(&CylinderSet::from_names(&g, &["v"], &["e"]).unwrap()), ["{v}"]);
        assert_eq!(labels(&CylinderSet::default()).len(), 3);
        assert_eq!(labels(&CylinderSet::from_names(&g, &["e"], &[]).unwrap()), ["{v,e}"]);
    }

    #[test]
    fn exhaustive_examples() {
        let g = catalog::e1();
        assert!(is_exhaustive(&g, &set(&g, &["e"])));
        assert!(is_exhaustive(&g, &BTreeSet::new()));
        let b = catalog::bouquet(1);
        assert_eq!(exhaustive_witness(&b, &set(&b, &["a1"])), Some(b.id("a2").unwrap()));
        assert!(is_exhaustive(&b, &set(&b, &["a1", "a2"])));
        let e3 = catalog::e3(&Degree::grid([1, 1]));
        assert!(is_exhaustive(&e3, &set(&e3, &["b"])));
    }

    #[test]
    fn boundary_examples() {
        let g = catalog::e1();
        let search = ExhaustiveSearch::new(&g, None).unwrap();
        let v = Filter::from_names(&g, &["v"]).unwrap();
        let verdict = is_boundary(&g, &search, &v);
        assert!(!verdict.boundary);
        assert_eq!(verdict.witness, Some((g.id("v").unwrap(), set(&g, &["e"]))));

        let b = catalog::bouquet(1);
        let search = ExhaustiveSearch::new(&b, None).unwrap();
        assert_eq!(search.at(VertexId(0)), &[set(&b, &["a1", "a2"])]);
        let u = Filter::from_names(&b, &["u"]).unwrap();
        assert!(!is_boundary(&b, &search, &u).boundary);
        let a1 = principal(&b, b.id("a1").unwrap());
        let verdict = is_boundary(&b, &search, &a1);
        assert!(verdict.boundary && verdict.truncated);
    }

    #[test]
    fn invariant_sets_on_e1() {
        let g = catalog::e1();
        let space = FilterSpace::new(&g);
        let search = ExhaustiveSearch::new(&g, None).unwrap();
        assert!(is_invariant_set(&space, &space.boundary(&search)));
        assert!(is_invariant_set(&space, &(0..space.len()).collect()));
        let ve = space.index_of(&Filter::from_names(&g, &["v", "e"]).unwrap()).unwrap();
        assert!(!is_invariant_set(&space, &BTreeSet::from([ve])));
    }

    #[test]
    fn chains_reproduce_filters() {
        let g = catalog::e3(&Degree::grid([2, 2]));
        for y in enumerate_filters(&g) {
            let order: Vec<MorphismId> = y.members().iter().copied().collect();
            let chain = principal_chain(&g, &y, &order);
            assert!(chain.windows(2).all(|p| g.precedes(p[0], p[1])));
            let union: BTreeSet<MorphismId> =
                chain.iter().flat_map(|&l| g.divisors(l).iter().copied()).collect();
            assert_eq!(union, y.0);
        }
    }
}
