//! Degree monoids and their enveloping groups.
//!
//! Three families are supported: the grids `ℕ^k` (inside `ℤ^k`), free monoids
//! on a finite alphabet (inside the free group), and finitely generated
//! submonoids of `ℕ^k`. The last family is only used to exhibit monoids whose
//! order fails to have least upper bounds, so it supports the order and
//! [`DegreeMonoid::minimal_upper_bounds`] but not [`DegreeMonoid::lub`].
//!
//! Infinite degrees are represented by [`DegreeClass`]: the equivalence class
//! of a `≤`-increasing sequence under mutual domination.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("degree {degree} does not belong to the {monoid} monoid")]
    Foreign { degree: String, monoid: String },
    #[error("{operation} is not supported for the {monoid} monoid")]
    Unsupported {
        operation: &'static str,
        monoid: String,
    },
    #[error("malformed monoid descriptor: {0}")]
    Descriptor(String),
    #[error("sequence has no terms")]
    EmptySequence,
    #[error("sequence is not increasing after term {0}")]
    NotIncreasing(usize),
    #[error("{0} is not below the degree class {1}")]
    NotDominated(String, String),
    #[error("degree class {0} is infinite and no window bounds it")]
    Unbounded(String),
    #[error("cannot parse degree {0:?}")]
    Parse(String),
}

pub type Result<T, E = DegreeError> = std::result::Result<T, E>;

/// An element of a degree monoid.
///
/// Grid and submonoid degrees are `k`-tuples of naturals; free-monoid degrees
/// are words, one `char` per letter. The derived order is the canonical
/// enumeration order and has nothing to do with the monoid order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Degree {
    Grid(Vec<u32>),
    Word(String),
}

impl Degree {
    pub fn grid(coords: impl Into<Vec<u32>>) -> Self {
        Degree::Grid(coords.into())
    }

    pub fn word(letters: &str) -> Self {
        Degree::Word(letters.to_owned())
    }

    /// Composition that only looks at the payload shapes.
    pub(crate) fn raw_compose(&self, other: &Degree) -> Option<Degree> {
        match (self, other) {
            (Degree::Grid(a), Degree::Grid(b)) if a.len() == b.len() => {
                Some(Degree::Grid(a.iter().zip(b).map(|(x, y)| x + y).collect()))
            }
            (Degree::Word(a), Degree::Word(b)) => Some(Degree::Word(format!("{a}{b}"))),
            _ => None,
        }
    }

    fn raw_power(&self, times: u32) -> Degree {
        match self {
            Degree::Grid(a) => Degree::Grid(a.iter().map(|x| x * times).collect()),
            Degree::Word(w) => Degree::Word(w.repeat(times as usize)),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Grid(c) if c.len() == 1 => write!(f, "{}", c[0]),
            Degree::Grid(c) => {
                let parts: Vec<String> = c.iter().map(u32::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            Degree::Word(w) if w.is_empty() => write!(f, "ε"),
            Degree::Word(w) => write!(f, "{w}"),
        }
    }
}

/// Descriptor of a degree monoid, as it appears in graph files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DegreeMonoid {
    Grid { k: usize },
    Free { letters: Vec<char> },
    GridSubmonoid { k: usize, generators: Vec<Vec<u32>> },
}

impl fmt::Display for DegreeMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeMonoid::Grid { k } => write!(f, "grid-{k}"),
            DegreeMonoid::Free { letters } => {
                let l: String = letters.iter().collect();
                write!(f, "free{{{l}}}")
            }
            DegreeMonoid::GridSubmonoid { generators, .. } => {
                let g: Vec<String> = generators
                    .iter()
                    .map(|v| Degree::Grid(v.clone()).to_string())
                    .collect();
                write!(f, "⟨{}⟩", g.join(","))
            }
        }
    }
}

impl DegreeMonoid {
    pub fn grid(k: usize) -> Self {
        DegreeMonoid::Grid { k }
    }

    pub fn free(letters: &str) -> Self {
        DegreeMonoid::Free {
            letters: letters.chars().collect(),
        }
    }

    pub fn grid_submonoid(generators: Vec<Vec<u32>>) -> Self {
        let k = generators.first().map_or(0, Vec::len);
        DegreeMonoid::GridSubmonoid { k, generators }
    }

    /// Checks the descriptor itself.
    pub fn validate(&self) -> Result<()> {
        match self {
            DegreeMonoid::Grid { k } if *k == 0 => {
                Err(DegreeError::Descriptor("grid rank must be positive".into()))
            }
            DegreeMonoid::Grid { .. } => Ok(()),
            DegreeMonoid::Free { letters } => {
                let distinct: BTreeSet<_> = letters.iter().collect();
                if letters.is_empty() || distinct.len() != letters.len() {
                    Err(DegreeError::Descriptor(
                        "free alphabet must be nonempty with distinct letters".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            DegreeMonoid::GridSubmonoid { k, generators } => {
                if *k == 0 || generators.is_empty() {
                    return Err(DegreeError::Descriptor(
                        "submonoid needs a positive rank and at least one generator".into(),
                    ));
                }
                for g in generators {
                    if g.len() != *k || g.iter().all(|&c| c == 0) {
                        return Err(DegreeError::Descriptor(format!(
                            "generator {} must be a nonzero {k}-tuple",
                            Degree::Grid(g.clone())
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    fn foreign(&self, p: &Degree) -> DegreeError {
        DegreeError::Foreign {
            degree: p.to_string(),
            monoid: self.to_string(),
        }
    }

    fn unsupported(&self, operation: &'static str) -> DegreeError {
        DegreeError::Unsupported {
            operation,
            monoid: self.to_string(),
        }
    }

    /// Rejects degrees of the wrong shape or outside the monoid.
    pub fn check(&self, p: &Degree) -> Result<()> {
        let ok = match (self, p) {
            (DegreeMonoid::Grid { k }, Degree::Grid(c)) => c.len() == *k,
            (DegreeMonoid::Free { letters }, Degree::Word(w)) => {
                w.chars().all(|ch| letters.contains(&ch))
            }
            (DegreeMonoid::GridSubmonoid { k, .. }, Degree::Grid(c)) => {
                c.len() == *k && self.membership_witness(p).is_some()
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.foreign(p))
        }
    }

    pub fn identity(&self) -> Degree {
        match self {
            DegreeMonoid::Grid { k } | DegreeMonoid::GridSubmonoid { k, .. } => {
                Degree::Grid(vec![0; *k])
            }
            DegreeMonoid::Free { .. } => Degree::Word(String::new()),
        }
    }

    pub fn is_identity(&self, p: &Degree) -> bool {
        *p == self.identity()
    }

    /// Generator multiplicities expressing `p` in a grid submonoid. For the
    /// grid itself the unit vectors are the generators.
    pub fn membership_witness(&self, p: &Degree) -> Option<Vec<u32>> {
        let Degree::Grid(target) = p else {
            return None;
        };
        match self {
            DegreeMonoid::Grid { k } if target.len() == *k => Some(target.clone()),
            DegreeMonoid::GridSubmonoid { k, generators } if target.len() == *k => {
                let mut counts = vec![0; generators.len()];
                if express(generators, 0, target.clone(), &mut counts) {
                    Some(counts)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn compose(&self, p: &Degree, q: &Degree) -> Result<Degree> {
        self.check(p)?;
        self.check(q)?;
        Ok(p.raw_compose(q).expect("shapes checked"))
    }

    /// The unique `q` with `p·q = r`, if any.
    pub fn left_divide(&self, p: &Degree, r: &Degree) -> Result<Option<Degree>> {
        self.check(p)?;
        self.check(r)?;
        Ok(self.raw_left_divide(p, r))
    }

    fn raw_left_divide(&self, p: &Degree, r: &Degree) -> Option<Degree> {
        match (p, r) {
            (Degree::Grid(a), Degree::Grid(b)) => {
                if a.iter().zip(b).any(|(x, y)| x > y) {
                    return None;
                }
                let q = Degree::Grid(a.iter().zip(b).map(|(x, y)| y - x).collect());
                match self {
                    DegreeMonoid::GridSubmonoid { .. } => {
                        self.membership_witness(&q).map(|_| q)
                    }
                    _ => Some(q),
                }
            }
            (Degree::Word(a), Degree::Word(b)) => {
                b.strip_prefix(a.as_str()).map(|rest| Degree::Word(rest.to_owned()))
            }
            _ => None,
        }
    }

    /// `p ≤ r` iff `p·q = r` for some `q` in the monoid.
    pub fn leq(&self, p: &Degree, r: &Degree) -> Result<bool> {
        Ok(self.left_divide(p, r)?.is_some())
    }

    /// Least common upper bound; `None` when there is no common upper bound.
    pub fn lub(&self, p: &Degree, r: &Degree) -> Result<Option<Degree>> {
        self.check(p)?;
        self.check(r)?;
        match (self, p, r) {
            (DegreeMonoid::Grid { .. }, Degree::Grid(a), Degree::Grid(b)) => Ok(Some(
                Degree::Grid(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()),
            )),
            (DegreeMonoid::Free { .. }, Degree::Word(a), Degree::Word(b)) => {
                if b.starts_with(a.as_str()) {
                    Ok(Some(r.clone()))
                } else if a.starts_with(b.as_str()) {
                    Ok(Some(p.clone()))
                } else {
                    Ok(None)
                }
            }
            _ => Err(self.unsupported("lub")),
        }
    }

    /// All `≤`-minimal common upper bounds of `p` and `r` found by brute force
    /// below `search_bound`: inside the box `[0, search_bound]` of the ambient
    /// grid, or among words no longer than `search_bound` for free monoids.
    pub fn minimal_upper_bounds(
        &self,
        p: &Degree,
        r: &Degree,
        search_bound: &Degree,
    ) -> Result<BTreeSet<Degree>> {
        self.check(p)?;
        self.check(r)?;
        let candidates: Vec<Degree> = match (self, search_bound) {
            (DegreeMonoid::Free { letters }, Degree::Word(w)) => {
                words_up_to(letters, w.chars().count())
            }
            (DegreeMonoid::Free { .. }, _) => return Err(self.foreign(search_bound)),
            (_, Degree::Grid(b)) if b.len() == p_len(p) => box_points(b)
                .into_iter()
                .filter(|t| self.membership_witness(t).is_some())
                .collect(),
            _ => return Err(self.foreign(search_bound)),
        };
        let uppers: Vec<Degree> = candidates
            .into_iter()
            .filter(|t| {
                self.raw_left_divide(p, t).is_some() && self.raw_left_divide(r, t).is_some()
            })
            .collect();
        Ok(uppers
            .iter()
            .filter(|t| {
                !uppers
                    .iter()
                    .any(|s| s != *t && self.raw_left_divide(s, t).is_some())
            })
            .cloned()
            .collect())
    }

    /// Every `p ≤ m`, in canonical order.
    pub fn divisors(&self, m: &Degree) -> Result<Vec<Degree>> {
        self.check(m)?;
        let mut out: Vec<Degree> = match m {
            Degree::Grid(b) => box_points(b)
                .into_iter()
                .filter(|p| {
                    self.membership_witness(p).is_some() && self.raw_left_divide(p, m).is_some()
                })
                .collect(),
            Degree::Word(w) => {
                let chars: Vec<char> = w.chars().collect();
                (0..=chars.len())
                    .map(|n| Degree::Word(chars[..n].iter().collect()))
                    .collect()
            }
        };
        out.sort();
        Ok(out)
    }

    /// Whether `p` lies on the edge of the window `w`, where extensions of a
    /// path of degree `p` may leave the materialized fragment.
    pub fn touches_window(&self, p: &Degree, w: &Degree) -> bool {
        match (p, w) {
            (Degree::Grid(a), Degree::Grid(b)) => a.iter().zip(b).any(|(x, y)| x >= y),
            (Degree::Word(a), Degree::Word(b)) => a == b,
            _ => false,
        }
    }

    // ----- enveloping group -----

    pub fn embed(&self, p: &Degree) -> Result<GroupElement> {
        self.check(p)?;
        Ok(match p {
            Degree::Grid(c) => GroupElement::Grid(c.iter().map(|&x| i64::from(x)).collect()),
            Degree::Word(w) => GroupElement::Free(w.chars().map(|c| (c, false)).collect()),
        })
    }

    pub fn group_identity(&self) -> GroupElement {
        match self {
            DegreeMonoid::Grid { k } | DegreeMonoid::GridSubmonoid { k, .. } => {
                GroupElement::Grid(vec![0; *k])
            }
            DegreeMonoid::Free { .. } => GroupElement::Free(Vec::new()),
        }
    }

    fn check_group(&self, q: &GroupElement) -> Result<()> {
        let ok = match (self, q) {
            (DegreeMonoid::Grid { k } | DegreeMonoid::GridSubmonoid { k, .. }, GroupElement::Grid(c)) => {
                c.len() == *k
            }
            (DegreeMonoid::Free { letters }, GroupElement::Free(w)) => {
                w.iter().all(|(c, _)| letters.contains(c))
                    && w.windows(2).all(|p| !(p[0].0 == p[1].0 && p[0].1 != p[1].1))
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(DegreeError::Foreign {
                degree: q.to_string(),
                monoid: self.to_string(),
            })
        }
    }

    pub fn group_compose(&self, q: &GroupElement, r: &GroupElement) -> Result<GroupElement> {
        self.check_group(q)?;
        self.check_group(r)?;
        Ok(match (q, r) {
            (GroupElement::Grid(a), GroupElement::Grid(b)) => {
                GroupElement::Grid(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (GroupElement::Free(a), GroupElement::Free(b)) => {
                let mut out = a.clone();
                for &letter in b {
                    match out.last() {
                        Some(&(c, inv)) if c == letter.0 && inv != letter.1 => {
                            out.pop();
                        }
                        _ => out.push(letter),
                    }
                }
                GroupElement::Free(out)
            }
            _ => unreachable!("shapes checked"),
        })
    }

    pub fn group_invert(&self, q: &GroupElement) -> Result<GroupElement> {
        self.check_group(q)?;
        Ok(match q {
            GroupElement::Grid(a) => GroupElement::Grid(a.iter().map(|x| -x).collect()),
            GroupElement::Free(w) => {
                GroupElement::Free(w.iter().rev().map(|&(c, inv)| (c, !inv)).collect())
            }
        })
    }

    /// Canonical form of `m·n⁻¹`.
    pub fn quotient(&self, m: &Degree, n: &Degree) -> Result<GroupElement> {
        let m = self.embed(m)?;
        let n = self.embed(n)?;
        self.group_compose(&m, &self.group_invert(&n)?)
    }

    // ----- increasing sequences and degree classes -----

    pub fn sequence(&self, head: Vec<Degree>, tail: TailRule) -> Result<IncreasingSequence> {
        if head.is_empty() {
            return Err(DegreeError::EmptySequence);
        }
        for p in &head {
            self.check(p)?;
        }
        if let TailRule::Step(s) = &tail {
            self.check(s)?;
        }
        for (i, pair) in head.windows(2).enumerate() {
            if !self.leq(&pair[0], &pair[1])? {
                return Err(DegreeError::NotIncreasing(i));
            }
        }
        Ok(IncreasingSequence { head, tail })
    }

    fn check_sequence(&self, s: &IncreasingSequence) -> Result<()> {
        for p in &s.head {
            self.check(p)?;
        }
        if let TailRule::Step(step) = &s.tail {
            self.check(step)?;
        }
        Ok(())
    }

    /// Canonical representative of the `∼`-class of `s`.
    pub fn degree_class(&self, s: &IncreasingSequence) -> Result<DegreeClass> {
        self.check_sequence(s)?;
        let last = s.head.last().expect("sequences are nonempty");
        match (self, last, &s.tail) {
            (DegreeMonoid::Grid { .. }, Degree::Grid(c), TailRule::Constant) => {
                Ok(DegreeClass::Grid(c.iter().map(|&x| ExtNat::Fin(x)).collect()))
            }
            (DegreeMonoid::Grid { .. }, Degree::Grid(c), TailRule::Step(Degree::Grid(st))) => {
                Ok(DegreeClass::Grid(
                    c.iter()
                        .zip(st)
                        .map(|(&x, &d)| if d == 0 { ExtNat::Fin(x) } else { ExtNat::Inf })
                        .collect(),
                ))
            }
            (DegreeMonoid::Free { .. }, Degree::Word(w), TailRule::Constant) => {
                Ok(DegreeClass::finite_word(w))
            }
            (DegreeMonoid::Free { .. }, Degree::Word(w), TailRule::Step(Degree::Word(st))) => {
                Ok(DegreeClass::word(w, st))
            }
            _ => Err(self.unsupported("degree classes")),
        }
    }

    pub fn class_of(&self, p: &Degree) -> Result<DegreeClass> {
        self.degree_class(&IncreasingSequence::constant(p.clone()))
    }

    /// `l ≺ m`: every term of `l` is below some term of `m`.
    pub fn seq_precedes(&self, l: &IncreasingSequence, m: &IncreasingSequence) -> Result<bool> {
        let a = self.degree_class(l)?;
        let b = self.degree_class(m)?;
        self.class_leq(&a, &b)
    }

    pub fn seq_equivalent(&self, l: &IncreasingSequence, m: &IncreasingSequence) -> Result<bool> {
        Ok(self.degree_class(l)? == self.degree_class(m)?)
    }

    /// The order on classes induced by `≺`.
    pub fn class_leq(&self, a: &DegreeClass, b: &DegreeClass) -> Result<bool> {
        match (a, b) {
            (DegreeClass::Grid(x), DegreeClass::Grid(y)) if x.len() == y.len() => {
                Ok(x.iter().zip(y).all(|(s, t)| s <= t))
            }
            (
                DegreeClass::Word { prefix: pa, period: va },
                DegreeClass::Word { .. },
            ) => {
                if va.is_empty() {
                    Ok(b.word_prefix(pa.chars().count()).as_deref() == Some(pa.as_str()))
                } else {
                    Ok(a == b)
                }
            }
            _ => Err(self.unsupported("comparing classes of different shapes")),
        }
    }

    /// Whether `p` is eventually below the terms of any sequence in class `c`,
    /// i.e. whether `(e, p)` lies in the prototype of `c`.
    pub fn class_dominates(&self, c: &DegreeClass, p: &Degree) -> Result<bool> {
        self.class_leq(&self.class_of(p)?, c)
    }

    /// The class of `(m⁻¹ m_n)` for any representative `(m_n)` of `c` above `m`.
    pub fn class_left_divide(&self, c: &DegreeClass, m: &Degree) -> Result<DegreeClass> {
        if !self.class_dominates(c, m)? {
            return Err(DegreeError::NotDominated(m.to_string(), c.to_string()));
        }
        Ok(match (c, m) {
            (DegreeClass::Grid(x), Degree::Grid(d)) => DegreeClass::Grid(
                x.iter()
                    .zip(d)
                    .map(|(e, &dm)| match e {
                        ExtNat::Fin(v) => ExtNat::Fin(v - dm),
                        ExtNat::Inf => ExtNat::Inf,
                    })
                    .collect(),
            ),
            (DegreeClass::Word { prefix, period }, Degree::Word(w)) => {
                let cut = w.chars().count();
                let pre: Vec<char> = prefix.chars().collect();
                if cut <= pre.len() {
                    DegreeClass::word(&pre[cut..].iter().collect::<String>(), period)
                } else {
                    let per: Vec<char> = period.chars().collect();
                    let shift = (cut - pre.len()) % per.len();
                    let rotated: String = per[shift..].iter().chain(&per[..shift]).collect();
                    DegreeClass::word("", &rotated)
                }
            }
            _ => return Err(self.foreign(m)),
        })
    }

    /// The greatest degree below both the class and the window. Without a
    /// window the class must be finite.
    pub fn truncate(&self, c: &DegreeClass, window: Option<&Degree>) -> Result<Degree> {
        if let Some(w) = window {
            self.check(w)?;
        }
        match (c, window) {
            (DegreeClass::Grid(x), None) => x
                .iter()
                .map(|e| match e {
                    ExtNat::Fin(v) => Some(*v),
                    ExtNat::Inf => None,
                })
                .collect::<Option<Vec<u32>>>()
                .map(Degree::Grid)
                .ok_or_else(|| DegreeError::Unbounded(c.to_string())),
            (DegreeClass::Grid(x), Some(Degree::Grid(w))) if x.len() == w.len() => Ok(Degree::Grid(
                x.iter()
                    .zip(w)
                    .map(|(e, &b)| match e {
                        ExtNat::Fin(v) => (*v).min(b),
                        ExtNat::Inf => b,
                    })
                    .collect(),
            )),
            (DegreeClass::Word { prefix, period }, None) => {
                if period.is_empty() {
                    Ok(Degree::Word(prefix.clone()))
                } else {
                    Err(DegreeError::Unbounded(c.to_string()))
                }
            }
            (DegreeClass::Word { .. }, Some(Degree::Word(w))) => {
                let n = w.chars().count();
                let expanded = c.word_prefix(n).unwrap_or_else(|| c.word_prefix_lossy(n));
                let common: String = expanded
                    .chars()
                    .zip(w.chars())
                    .take_while(|(a, b)| a == b)
                    .map(|(a, _)| a)
                    .collect();
                Ok(Degree::Word(common))
            }
            _ => Err(self.unsupported("truncating a class by a window of another shape")),
        }
    }

    /// The increasing sequence that realizes a grid class: constant in each
    /// finite coordinate and `0, 1, 2, …` in each infinite one.
    pub fn grid_class_to_sequence(&self, c: &DegreeClass) -> Result<IncreasingSequence> {
        let DegreeClass::Grid(x) = c else {
            return Err(self.unsupported("grid class translation"));
        };
        if !matches!(self, DegreeMonoid::Grid { k } if *k == x.len()) {
            return Err(self.unsupported("grid class translation"));
        }
        let start: Vec<u32> = x
            .iter()
            .map(|e| match e {
                ExtNat::Fin(v) => *v,
                ExtNat::Inf => 0,
            })
            .collect();
        let step: Vec<u32> = x.iter().map(|e| u32::from(*e == ExtNat::Inf)).collect();
        let tail = if step.iter().all(|&s| s == 0) {
            TailRule::Constant
        } else {
            TailRule::Step(Degree::Grid(step))
        };
        Ok(IncreasingSequence {
            head: vec![Degree::Grid(start)],
            tail,
        })
    }

    /// Coordinatewise supremum of a grid sequence, `∞` where unbounded.
    pub fn sequence_to_grid_class(&self, s: &IncreasingSequence) -> Result<DegreeClass> {
        match self {
            DegreeMonoid::Grid { .. } => self.degree_class(s),
            _ => Err(self.unsupported("grid class translation")),
        }
    }

    /// A few distinct sequences presenting the class `c`.
    pub fn class_representatives(&self, c: &DegreeClass) -> Result<Vec<IncreasingSequence>> {
        let e = self.identity();
        match c {
            DegreeClass::Grid(_) => {
                let canonical = self.grid_class_to_sequence(c)?;
                let mut reps = vec![canonical.clone()];
                let start = canonical.head[0].clone();
                match &canonical.tail {
                    TailRule::Constant => {
                        reps.push(IncreasingSequence {
                            head: vec![e, start],
                            tail: TailRule::Constant,
                        });
                    }
                    TailRule::Step(step) => {
                        reps.push(IncreasingSequence {
                            head: vec![start.clone()],
                            tail: TailRule::Step(step.raw_power(2)),
                        });
                        reps.push(IncreasingSequence {
                            head: vec![e, start.clone(), start.raw_compose(step).expect("grid")],
                            tail: TailRule::Step(step.raw_power(3)),
                        });
                    }
                }
                Ok(reps)
            }
            DegreeClass::Word { prefix, period } => {
                let p = Degree::Word(prefix.clone());
                if period.is_empty() {
                    Ok(vec![
                        IncreasingSequence::constant(p.clone()),
                        IncreasingSequence {
                            head: vec![e, p],
                            tail: TailRule::Constant,
                        },
                    ])
                } else {
                    let v = Degree::Word(period.clone());
                    Ok(vec![
                        IncreasingSequence {
                            head: vec![p.clone()],
                            tail: TailRule::Step(v.clone()),
                        },
                        IncreasingSequence {
                            head: vec![p.clone()],
                            tail: TailRule::Step(v.raw_power(2)),
                        },
                        IncreasingSequence {
                            head: vec![e, p.clone(), p.raw_compose(&v).expect("words")],
                            tail: TailRule::Step(v),
                        },
                    ])
                }
            }
        }
    }
}

fn p_len(p: &Degree) -> usize {
    match p {
        Degree::Grid(c) => c.len(),
        Degree::Word(_) => usize::MAX,
    }
}

fn express(generators: &[Vec<u32>], i: usize, rest: Vec<u32>, counts: &mut [u32]) -> bool {
    if rest.iter().all(|&x| x == 0) {
        return true;
    }
    if i == generators.len() {
        return false;
    }
    let g = &generators[i];
    let max = g
        .iter()
        .zip(&rest)
        .filter(|(gc, _)| **gc > 0)
        .map(|(gc, r)| r / gc)
        .min()
        .unwrap_or(0);
    for c in (0..=max).rev() {
        let next: Vec<u32> = rest.iter().zip(g).map(|(r, gc)| r - c * gc).collect();
        counts[i] = c;
        if express(generators, i + 1, next, counts) {
            return true;
        }
    }
    counts[i] = 0;
    false
}

fn box_points(bound: &[u32]) -> Vec<Degree> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=b).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Degree::Grid).collect()
}

fn words_up_to(letters: &[char], len: usize) -> Vec<Degree> {
    let mut out = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..len {
        frontier = frontier
            .iter()
            .flat_map(|w| letters.iter().map(move |c| format!("{w}{c}")))
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out.into_iter().map(Degree::Word).collect()
}

/// Element of the enveloping group: an integer vector, or a reduced word in
/// letters and inverse letters (`true` marks an inverse).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Grid(Vec<i64>),
    Free(Vec<(char, bool)>),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Grid(c) if c.len() == 1 => write!(f, "{}", c[0]),
            GroupElement::Grid(c) => {
                let parts: Vec<String> = c.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElement::Free(w) if w.is_empty() => write!(f, "ε"),
            GroupElement::Free(w) => {
                for (c, inv) in w {
                    write!(f, "{c}")?;
                    if *inv {
                        write!(f, "^-1")?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl GroupElement {
    fn free_text(&self) -> Option<String> {
        match self {
            GroupElement::Free(_) => Some(self.to_string()).map(|s| if s == "ε" { String::new() } else { s }),
            GroupElement::Grid(_) => None,
        }
    }

    fn parse_free(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c == '^' {
                return Err(DegreeError::Parse(text.to_owned()));
            }
            if chars[i + 1..].starts_with(&['^', '-', '1']) {
                out.push((c, true));
                i += 4;
            } else {
                out.push((c, false));
                i += 1;
            }
        }
        Ok(GroupElement::Free(out))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GroupRepr {
    Grid(Vec<i64>),
    Free(String),
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GroupElement::Grid(c) => GroupRepr::Grid(c.clone()).serialize(s),
            GroupElement::Free(_) => GroupRepr::Free(self.free_text().unwrap_or_default()).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match GroupRepr::deserialize(d)? {
            GroupRepr::Grid(c) => Ok(GroupElement::Grid(c)),
            GroupRepr::Free(text) => GroupElement::parse_free(&text).map_err(de::Error::custom),
        }
    }
}

/// How an increasing sequence continues after its explicit head.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailRule {
    Constant,
    /// Each further term is the previous one composed with the step.
    Step(Degree),
}

/// A `≤`-increasing sequence given by finitely many terms and a tail rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncreasingSequence {
    head: Vec<Degree>,
    tail: TailRule,
}

impl IncreasingSequence {
    pub fn constant(p: Degree) -> Self {
        IncreasingSequence {
            head: vec![p],
            tail: TailRule::Constant,
        }
    }

    pub fn head(&self) -> &[Degree] {
        &self.head
    }

    pub fn tail(&self) -> &TailRule {
        &self.tail
    }

    /// The `n`-th term (zero-based).
    pub fn term(&self, n: usize) -> Degree {
        if n < self.head.len() {
            return self.head[n].clone();
        }
        let last = self.head.last().expect("sequences are nonempty");
        match &self.tail {
            TailRule::Constant => last.clone(),
            TailRule::Step(step) => {
                let times = u32::try_from(n + 1 - self.head.len()).expect("term index fits u32");
                last.raw_compose(&step.raw_power(times))
                    .expect("step shares the sequence shape")
            }
        }
    }

    /// The sequence with its first `n` terms dropped.
    pub fn suffix(&self, n: usize) -> IncreasingSequence {
        if n < self.head.len() {
            return IncreasingSequence {
                head: self.head[n..].to_vec(),
                tail: self.tail.clone(),
            };
        }
        IncreasingSequence {
            head: vec![self.term(n)],
            tail: self.tail.clone(),
        }
    }

    /// First index from which the terms no longer change shape: every later
    /// term is `term(stable_index()) · step^j`.
    pub fn stable_index(&self) -> usize {
        self.head.len() - 1
    }
}

/// `ℕ ∪ {∞}`; `Fin` sorts before `Inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Fin(u32),
    Inf,
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(v) => write!(f, "{v}"),
            ExtNat::Inf => write!(f, "∞"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExtRepr {
    Fin(u32),
    Inf(String),
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Fin(v) => ExtRepr::Fin(*v).serialize(s),
            ExtNat::Inf => ExtRepr::Inf("inf".into()).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match ExtRepr::deserialize(d)? {
            ExtRepr::Fin(v) => Ok(ExtNat::Fin(v)),
            ExtRepr::Inf(s) if s == "inf" => Ok(ExtNat::Inf),
            ExtRepr::Inf(s) => Err(de::Error::custom(format!("expected \"inf\", got {s:?}"))),
        }
    }
}

/// Canonical representative of an equivalence class of increasing sequences.
///
/// Grid classes are points of `(ℕ ∪ {∞})^k`. Word classes are finite words
/// (`period` empty) or ultimately periodic infinite words `prefix·period^ω`
/// with a primitive period and the shortest possible prefix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DegreeClass {
    Grid(Vec<ExtNat>),
    Word { prefix: String, period: String },
}

impl DegreeClass {
    pub fn finite_word(w: &str) -> Self {
        DegreeClass::Word {
            prefix: w.to_owned(),
            period: String::new(),
        }
    }

    /// Canonical form of `prefix·period^ω`.
    pub fn word(prefix: &str, period: &str) -> Self {
        if period.is_empty() {
            return DegreeClass::finite_word(prefix);
        }
        let per: Vec<char> = period.chars().collect();
        let root_len = (1..=per.len())
            .find(|d| per.len().is_multiple_of(*d) && per.chunks(*d).all(|c| c == &per[..*d]))
            .expect("the full length is always a period");
        let mut per: Vec<char> = per[..root_len].to_vec();
        let mut pre: Vec<char> = prefix.chars().collect();
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        DegreeClass::Word {
            prefix: pre.into_iter().collect(),
            period: per.into_iter().collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            DegreeClass::Grid(x) => x.iter().all(|e| *e != ExtNat::Inf),
            DegreeClass::Word { period, .. } => period.is_empty(),
        }
    }

    /// First `n` letters of a word class, or `None` if the class is a
    /// finite word shorter than `n`.
    pub fn word_prefix(&self, n: usize) -> Option<String> {
        let DegreeClass::Word { prefix, period } = self else {
            return None;
        };
        let out: String = if period.is_empty() {
            prefix.chars().take(n).collect()
        } else {
            prefix.chars().chain(period.chars().cycle()).take(n).collect()
        };
        (out.chars().count() == n).then_some(out)
    }

    fn word_prefix_lossy(&self, n: usize) -> String {
        match self {
            DegreeClass::Word { prefix, .. } => prefix.chars().take(n).collect(),
            DegreeClass::Grid(_) => String::new(),
        }
    }

    /// Partial comparison under the class order; used only for display sorting.
    pub fn partial_cmp_grid(&self, other: &DegreeClass) -> Option<Ordering> {
        match (self, other) {
            (DegreeClass::Grid(a), DegreeClass::Grid(b)) => {
                if a == b {
                    Some(Ordering::Equal)
                } else if a.iter().zip(b).all(|(x, y)| x <= y) {
                    Some(Ordering::Less)
                } else if a.iter().zip(b).all(|(x, y)| x >= y) {
                    Some(Ordering::Greater)
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

impl fmt::Display for DegreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeClass::Grid(x) if x.len() == 1 => write!(f, "{}", x[0]),
            DegreeClass::Grid(x) => {
                let parts: Vec<String> = x.iter().map(ExtNat::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            DegreeClass::Word { prefix, period } if period.is_empty() => {
                write!(f, "{}", Degree::Word(prefix.clone()))
            }
            DegreeClass::Word { prefix, period } => write!(f, "{prefix}({period})^ω"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(c: &[u32]) -> Degree {
        Degree::Grid(c.to_vec())
    }

    #[test]
    fn compose_examples() {
        let n2 = DegreeMonoid::grid(2);
        assert_eq!(n2.compose(&g(&[1, 0]), &g(&[0, 1])).unwrap(), g(&[1, 1]));
        assert_eq!(n2.compose(&g(&[2, 3]), &g(&[0, 0])).unwrap(), g(&[2, 3]));
        let f = DegreeMonoid::free("ab");
        assert_eq!(
            f.compose(&Degree::word("ab"), &Degree::word("ba")).unwrap(),
            Degree::word("abba")
        );
    }

    #[test]
    fn compose_rejects_foreign_degrees() {
        let n2 = DegreeMonoid::grid(2);
        assert!(matches!(
            n2.compose(&g(&[1, 0]), &Degree::word("a")),
            Err(DegreeError::Foreign { .. })
        ));
        assert!(n2.compose(&g(&[1, 0]), &g(&[1, 0, 0])).is_err());
        let f = DegreeMonoid::free("ab");
        assert!(f.leq(&Degree::word("ac"), &Degree::word("acb")).is_err());
    }

    #[test]
    fn order_examples() {
        let n2 = DegreeMonoid::grid(2);
        assert!(n2.leq(&g(&[1, 0]), &g(&[1, 1])).unwrap());
        assert!(!n2.leq(&g(&[1, 1]), &g(&[1, 0])).unwrap());
        let f = DegreeMonoid::free("ab");
        assert!(f.leq(&Degree::word("ab"), &Degree::word("abb")).unwrap());
        assert!(!f.leq(&Degree::word("ab"), &Degree::word("ba")).unwrap());
        let sub = DegreeMonoid::grid_submonoid(vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert!(sub.leq(&g(&[1, 0]), &g(&[2, 1])).unwrap());
        // (0,1) is not in the submonoid, so (2,1) ≰ (2,2) there.
        assert!(!sub.leq(&g(&[2, 1]), &g(&[2, 2])).unwrap());
        assert_eq!(sub.membership_witness(&g(&[2, 1])), Some(vec![1, 1, 0]));
        assert!(sub.check(&g(&[0, 1])).is_err());
    }

    #[test]
    fn lub_examples() {
        let n2 = DegreeMonoid::grid(2);
        assert_eq!(n2.lub(&g(&[1, 0]), &g(&[0, 1])).unwrap(), Some(g(&[1, 1])));
        let f = DegreeMonoid::free("ab");
        assert_eq!(f.lub(&Degree::word("ab"), &Degree::word("ba")).unwrap(), None);
        assert_eq!(
            f.lub(&Degree::word("a"), &Degree::word("ab")).unwrap(),
            Some(Degree::word("ab"))
        );
        let sub = DegreeMonoid::grid_submonoid(vec![vec![1, 0], vec![1, 1]]);
        assert!(matches!(
            sub.lub(&g(&[1, 0]), &g(&[1, 1])),
            Err(DegreeError::Unsupported { .. })
        ));
    }

    #[test]
    fn minimal_upper_bounds_examples() {
        let sub = DegreeMonoid::grid_submonoid(vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
        let got = sub
            .minimal_upper_bounds(&g(&[1, 0]), &g(&[1, 1]), &g(&[3, 3]))
            .unwrap();
        assert_eq!(got, BTreeSet::from([g(&[2, 1]), g(&[2, 2])]));

        let lattice = DegreeMonoid::grid_submonoid(vec![vec![1, 0], vec![0, 1]]);
        let got = lattice
            .minimal_upper_bounds(&g(&[1, 0]), &g(&[0, 1]), &g(&[3, 3]))
            .unwrap();
        assert_eq!(got, BTreeSet::from([g(&[1, 1])]));

        for p in [g(&[0, 0]), g(&[2, 1])] {
            let got = sub.minimal_upper_bounds(&p, &p, &g(&[3, 3])).unwrap();
            assert_eq!(got, BTreeSet::from([p.clone()]));
        }
        let f = DegreeMonoid::free("ab");
        let w = Degree::word("ab");
        assert_eq!(
            f.minimal_upper_bounds(&w, &w, &Degree::word("aaa")).unwrap(),
            BTreeSet::from([w.clone()])
        );
        assert!(f
            .minimal_upper_bounds(&Degree::word("a"), &Degree::word("b"), &Degree::word("aaa"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn divisors_of_degrees() {
        let n2 = DegreeMonoid::grid(2);
        assert_eq!(n2.divisors(&g(&[1, 1])).unwrap().len(), 4);
        let f = DegreeMonoid::free("ab");
        assert_eq!(
            f.divisors(&Degree::word("ab")).unwrap(),
            vec![Degree::word(""), Degree::word("a"), Degree::word("ab")]
        );
        let sub = DegreeMonoid::grid_submonoid(vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert_eq!(
            sub.divisors(&g(&[2, 2])).unwrap(),
            vec![g(&[0, 0]), g(&[1, 0]), g(&[1, 1]), g(&[1, 2]), g(&[2, 2])]
        );
    }

    #[test]
    fn group_examples() {
        let z2 = DegreeMonoid::grid(2);
        assert_eq!(
            z2.quotient(&g(&[1, 0]), &g(&[0, 1])).unwrap(),
            GroupElement::Grid(vec![1, -1])
        );
        let f = DegreeMonoid::free("ab");
        assert_eq!(
            f.quotient(&Degree::word("ab"), &Degree::word("b")).unwrap(),
            GroupElement::Free(vec![('a', false)])
        );
        let q = f.quotient(&Degree::word("a"), &Degree::word("bb")).unwrap();
        assert_eq!(q.to_string(), "ab^-1b^-1");
        let back = f.group_compose(&q, &f.group_invert(&q).unwrap()).unwrap();
        assert_eq!(back, f.group_identity());
    }

    #[test]
    fn group_element_json() {
        let q = GroupElement::Free(vec![('a', false), ('b', true)]);
        let text = serde_json::to_string(&q).unwrap();
        assert_eq!(text, "\"ab^-1\"");
        assert_eq!(serde_json::from_str::<GroupElement>(&text).unwrap(), q);
        let id: GroupElement = serde_json::from_str("\"\"").unwrap();
        assert_eq!(id, GroupElement::Free(vec![]));
        let z: GroupElement = serde_json::from_str("[1,-1]").unwrap();
        assert_eq!(z, GroupElement::Grid(vec![1, -1]));
    }

    #[test]
    fn sequences_must_increase() {
        let n2 = DegreeMonoid::grid(2);
        assert_eq!(
            n2.sequence(vec![g(&[1, 1]), g(&[1, 0])], TailRule::Constant),
            Err(DegreeError::NotIncreasing(0))
        );
        assert_eq!(
            n2.sequence(vec![], TailRule::Constant),
            Err(DegreeError::EmptySequence)
        );
    }

    #[test]
    fn precedence_examples() {
        let n = DegreeMonoid::grid(1);
        let odd = n.sequence(vec![g(&[1])], TailRule::Step(g(&[2]))).unwrap();
        let even = n.sequence(vec![g(&[2])], TailRule::Step(g(&[2]))).unwrap();
        assert!(n.seq_precedes(&odd, &even).unwrap());
        assert!(n.seq_precedes(&even, &odd).unwrap());
        assert!(n.seq_equivalent(&odd, &even).unwrap());
        assert_eq!(n.degree_class(&odd).unwrap(), DegreeClass::Grid(vec![ExtNat::Inf]));

        let n2 = DegreeMonoid::grid(2);
        let one = IncreasingSequence::constant(g(&[1, 1]));
        let diag = n2.sequence(vec![g(&[0, 0])], TailRule::Step(g(&[1, 1]))).unwrap();
        assert!(n2.seq_precedes(&one, &diag).unwrap());
        assert!(!n2.seq_precedes(&diag, &one).unwrap());
        assert!(n2.seq_precedes(&diag, &diag).unwrap());
    }

    #[test]
    fn grid_classes() {
        let n2 = DegreeMonoid::grid(2);
        let constant = IncreasingSequence::constant(g(&[1, 2]));
        assert_eq!(
            n2.degree_class(&constant).unwrap(),
            DegreeClass::Grid(vec![ExtNat::Fin(1), ExtNat::Fin(2)])
        );
        let s = n2
            .sequence(vec![g(&[0, 2]), g(&[1, 2])], TailRule::Step(g(&[1, 0])))
            .unwrap();
        let class = n2.degree_class(&s).unwrap();
        assert_eq!(class, DegreeClass::Grid(vec![ExtNat::Inf, ExtNat::Fin(2)]));
        let forward = n2.grid_class_to_sequence(&class).unwrap();
        assert_eq!(forward.term(0), g(&[0, 2]));
        assert_eq!(forward.term(3), g(&[3, 2]));
        assert_eq!(n2.sequence_to_grid_class(&forward).unwrap(), class);
        let finite = DegreeClass::Grid(vec![ExtNat::Fin(3), ExtNat::Fin(0)]);
        let seq = n2.grid_class_to_sequence(&finite).unwrap();
        assert_eq!(seq, IncreasingSequence::constant(g(&[3, 0])));
    }

    #[test]
    fn word_classes_are_canonical() {
        assert_eq!(DegreeClass::word("ab", "abab"), DegreeClass::word("", "ab"));
        assert_eq!(DegreeClass::word("aab", "ab"), DegreeClass::word("a", "ab"));
        assert_eq!(DegreeClass::word("a", "ba"), DegreeClass::word("", "ab"));
        assert_ne!(DegreeClass::word("", "ab"), DegreeClass::word("", "ba"));
        let f = DegreeMonoid::free("ab");
        let s = f
            .sequence(vec![Degree::word("a")], TailRule::Step(Degree::word("ba")))
            .unwrap();
        assert_eq!(f.degree_class(&s).unwrap(), DegreeClass::word("", "ab"));
        let shifted = f
            .class_left_divide(&DegreeClass::word("", "ab"), &Degree::word("aba"))
            .unwrap();
        assert_eq!(shifted, DegreeClass::word("", "ba"));
        assert_eq!(
            f.truncate(&DegreeClass::word("", "ab"), Some(&Degree::word("abb")))
                .unwrap(),
            Degree::word("ab")
        );
    }

    #[test]
    fn class_division_and_truncation() {
        let n2 = DegreeMonoid::grid(2);
        let c = DegreeClass::Grid(vec![ExtNat::Inf, ExtNat::Fin(2)]);
        assert_eq!(
            n2.class_left_divide(&c, &g(&[1, 1])).unwrap(),
            DegreeClass::Grid(vec![ExtNat::Inf, ExtNat::Fin(1)])
        );
        assert!(n2.class_left_divide(&c, &g(&[0, 3])).is_err());
        assert_eq!(n2.truncate(&c, Some(&g(&[3, 3]))).unwrap(), g(&[3, 2]));
        assert!(matches!(n2.truncate(&c, None), Err(DegreeError::Unbounded(_))));
    }

    #[test]
    fn class_json_round_trip() {
        let c = DegreeClass::Grid(vec![ExtNat::Inf, ExtNat::Fin(2)]);
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, "[\"inf\",2]");
        assert_eq!(serde_json::from_str::<DegreeClass>(&text).unwrap(), c);
        let w = DegreeClass::word("a", "b");
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<DegreeClass>(&text).unwrap(), w);
    }

    #[test]
    fn monoid_descriptors_parse() {
        let m: DegreeMonoid = serde_json::from_str(r#"{"kind":"grid","k":2}"#).unwrap();
        assert_eq!(m, DegreeMonoid::grid(2));
        let m: DegreeMonoid =
            serde_json::from_str(r#"{"kind":"free","letters":["a","b"]}"#).unwrap();
        assert_eq!(m, DegreeMonoid::free("ab"));
        let m: DegreeMonoid = serde_json::from_str(
            r#"{"kind":"grid-submonoid","k":2,"generators":[[1,0],[1,1],[1,2]]}"#,
        )
        .unwrap();
        assert!(m.validate().is_ok());
        assert!(DegreeMonoid::GridSubmonoid {
            k: 2,
            generators: vec![vec![0, 0]]
        }
        .validate()
        .is_err());
    }
}
