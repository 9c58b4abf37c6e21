//! The shift action on a finite path space, independent of how points are
//! presented.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::degree::Degree;
use crate::pgraph::PGraph;

/// A finite path space: points are indexed `0..len()` and `act(x, m)` is
/// `None` when `x` is outside the domain of `T^m`.
pub trait PathSpace {
    fn graph(&self) -> &PGraph;
    fn len(&self) -> usize;
    fn act(&self, x: usize, m: &Degree) -> Option<usize>;
    fn label(&self, x: usize) -> String;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Degrees over which the action is exercised: everything below the window,
/// or the degrees that occur in a closed graph.
pub fn degree_sample(g: &PGraph) -> Vec<Degree> {
    match g.window() {
        Some(w) => g.monoid().divisors(w).unwrap_or_else(|_| g.degrees()),
        None => g.degrees(),
    }
}

const EXAMPLES: usize = 5;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    pub checked: usize,
    /// Cases left out because a composite degree leaves the window.
    pub skipped: usize,
    pub skipped_examples: Vec<String>,
    pub violations: Vec<String>,
}

impl ActionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn skip(&mut self, what: String) {
        self.skipped += 1;
        if self.skipped_examples.len() < EXAMPLES {
            self.skipped_examples.push(what);
        }
    }
}

/// Checks `T^e = id`, the composition law for `T^{mn}`, and directedness on
/// every point and every pair of sampled degrees.
pub fn action_axioms_check<S: PathSpace>(space: &S) -> ActionReport {
    let g = space.graph();
    let monoid = g.monoid();
    let sample = degree_sample(g);
    let e = monoid.identity();
    let mut report = ActionReport::default();
    for x in 0..space.len() {
        report.checked += 1;
        if space.act(x, &e) != Some(x) {
            report
                .violations
                .push(format!("S1 fails at {}", space.label(x)));
        }
    }
    for m in &sample {
        for n in &sample {
            let Ok(mn) = monoid.compose(m, n) else { continue };
            let admitted = g.window_admits(&mn);
            for x in 0..space.len() {
                if !admitted {
                    if space.act(x, m).is_some() {
                        report.skip(format!("({}, {mn}) with m={m}, n={n}", space.label(x)));
                    }
                    continue;
                }
                report.checked += 1;
                let direct = space.act(x, &mn);
                let stepwise = space.act(x, m).and_then(|y| space.act(y, n));
                if direct != stepwise {
                    report.violations.push(format!(
                        "S2 fails at {} with m={m}, n={n}",
                        space.label(x)
                    ));
                }
            }
            let both: Vec<usize> = (0..space.len())
                .filter(|&x| space.act(x, m).is_some() && space.act(x, n).is_some())
                .collect();
            if both.is_empty() {
                continue;
            }
            match monoid.lub(m, n) {
                Ok(Some(l)) if g.window_admits(&l) => {
                    for &x in &both {
                        report.checked += 1;
                        if space.act(x, &l).is_none() {
                            report.violations.push(format!(
                                "directedness fails at {}: in the domains of {m} and {n} but not {l}",
                                space.label(x)
                            ));
                        }
                    }
                }
                Ok(Some(l)) => report.skip(format!("directedness at m={m}, n={n}, l={l}")),
                _ => report.violations.push(format!(
                    "domains of {m} and {n} meet but the degrees have no least upper bound"
                )),
            }
        }
    }
    report
}

/// Whether `T^m x = T^n y` with `y ∈ U` forces `x ∈ U`. Returns a witness
/// `(x, m, n, y)` when it does not.
pub fn invariance_witness<S: PathSpace>(
    space: &S,
    u: &BTreeSet<usize>,
) -> Option<(usize, Degree, Degree, usize)> {
    let sample = degree_sample(space.graph());
    for &y in u {
        for n in &sample {
            let Some(target) = space.act(y, n) else { continue };
            for x in 0..space.len() {
                if u.contains(&x) {
                    continue;
                }
                for m in &sample {
                    if space.act(x, m) == Some(target) {
                        return Some((x, m.clone(), n.clone(), y));
                    }
                }
            }
        }
    }
    None
}

pub fn is_invariant_set<S: PathSpace>(space: &S, u: &BTreeSet<usize>) -> bool {
    invariance_witness(space, u).is_none()
}
