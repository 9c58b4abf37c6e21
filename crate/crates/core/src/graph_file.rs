//! The JSON graph file and the export records for points and groupoid
//! elements.
//!
//! ```json
//! {
//!   "monoid": {"kind": "grid", "k": 1},
//!   "presentation": "explicit",
//!   "vertices": ["v", "w"],
//!   "morphisms": [{"id": "e", "range": "v", "source": "w", "degree": [1]}],
//!   "compositions": [],
//!   "sets": {"U": {"K1": ["e"]}}
//! }
//! ```
//!
//! A `"skeleton"` presentation has `rank`, `vertices`, `edges` and `squares`
//! and needs a `window`; an `"omega"` presentation has the top degree `m`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree::{Degree, DegreeClass, DegreeError, DegreeMonoid, GroupElement};
use crate::filters::{CylinderRecord, Filter, FilterError};
use crate::groupoid::GroupoidElement;
use crate::morphisms::{MorphismError, PathMorphism};
use crate::pgraph::{
    GraphError, MorphismId, MorphismSpec, PGraph, Skeleton, SkeletonEdge, VertexSpec,
};
use crate::space::PathSpace;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("malformed graph file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "presentation", rename_all = "kebab-case")]
pub enum Presentation {
    Explicit {
        vertices: Vec<String>,
        /// Unit names for vertices whose unit is not named after the vertex.
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        units: BTreeMap<String, String>,
        #[serde(default)]
        morphisms: Vec<MorphismSpec>,
        #[serde(default)]
        compositions: Vec<[String; 3]>,
    },
    Skeleton {
        rank: usize,
        vertices: Vec<String>,
        #[serde(default)]
        edges: Vec<SkeletonEdge>,
        #[serde(default)]
        squares: Vec<[[String; 2]; 2]>,
    },
    Omega { m: Degree },
}

/// A named subset: a cylinder `Z(K1 \ K2)` or a plain list of morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NamedSet {
    Cylinder(CylinderRecord),
    Morphisms(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monoid: Option<DegreeMonoid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<Degree>,
    #[serde(flatten)]
    pub presentation: Presentation,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sets: BTreeMap<String, NamedSet>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Builds the graph, with `window` taking precedence over the file's.
    pub fn build(&self, window: Option<&Degree>) -> Result<PGraph, FileError> {
        let window = window.or(self.window.as_ref()).cloned();
        match &self.presentation {
            Presentation::Explicit {
                vertices,
                units,
                morphisms,
                compositions,
            } => {
                let monoid = self
                    .monoid
                    .clone()
                    .ok_or_else(|| FileError::Invalid("an explicit presentation needs a monoid".into()))?;
                let triples: Vec<(String, String, String)> = compositions
                    .iter()
                    .map(|[a, b, c]| (a.clone(), b.clone(), c.clone()))
                    .collect();
                let graph = PGraph::new(
                    monoid,
                    None,
                    vertices
                        .iter()
                        .map(|v| VertexSpec {
                            name: v.clone(),
                            unit: units.get(v).unwrap_or(v).clone(),
                        })
                        .collect(),
                    morphisms.clone(),
                    &triples,
                )?;
                Ok(match window {
                    Some(w) => restrict(&graph, &w)?,
                    None => graph,
                })
            }
            Presentation::Skeleton {
                rank,
                vertices,
                edges,
                squares,
            } => {
                if let Some(m) = &self.monoid {
                    if *m != DegreeMonoid::grid(*rank) {
                        return Err(FileError::Invalid(format!(
                            "a rank {rank} skeleton needs the grid monoid, not {m}"
                        )));
                    }
                }
                let window = window
                    .ok_or_else(|| FileError::Invalid("a skeleton presentation needs a window".into()))?;
                let sk = Skeleton {
                    rank: *rank,
                    vertices: vertices.clone(),
                    edges: edges.clone(),
                    squares: squares.clone(),
                };
                Ok(PGraph::from_skeleton(&sk, &window)?)
            }
            Presentation::Omega { m } => {
                let monoid = self
                    .monoid
                    .clone()
                    .ok_or_else(|| FileError::Invalid("an omega presentation needs a monoid".into()))?;
                Ok(PGraph::build_omega(&monoid, m)?)
            }
        }
    }

    /// The explicit presentation of a built graph; building it again gives
    /// the same graph.
    pub fn explicit(g: &PGraph) -> Self {
        let mut units = BTreeMap::new();
        for (v, name) in g.vertex_names().iter().enumerate() {
            let unit = g.name(g.units()[v]);
            if unit != name {
                units.insert(name.clone(), unit.to_owned());
            }
        }
        let morphisms = g
            .ids()
            .filter(|&l| !g.is_unit(l))
            .map(|l| MorphismSpec {
                name: g.name(l).to_owned(),
                range: g.vertex_name(g.range(l)).to_owned(),
                source: g.vertex_name(g.source(l)).to_owned(),
                degree: g.degree(l).clone(),
            })
            .collect();
        let mut compositions = Vec::new();
        for a in g.ids().filter(|&l| !g.is_unit(l)) {
            for b in g.ids().filter(|&l| !g.is_unit(l)) {
                if let Some(c) = g.compose(a, b) {
                    compositions.push([g.name(a).to_owned(), g.name(b).to_owned(), g.name(c).to_owned()]);
                }
            }
        }
        GraphFile {
            monoid: Some(g.monoid().clone()),
            window: g.window().cloned(),
            presentation: Presentation::Explicit {
                vertices: g.vertex_names().to_vec(),
                units,
                morphisms,
                compositions,
            },
            sets: BTreeMap::new(),
        }
    }

    pub fn set(&self, name: &str) -> Option<&NamedSet> {
        self.sets.get(name)
    }
}

/// Drops the morphisms of an explicit graph whose degree leaves the window.
fn restrict(g: &PGraph, window: &Degree) -> Result<PGraph, FileError> {
    let keep = |l: MorphismId| g.monoid().leq(g.degree(l), window).unwrap_or(false);
    let vertices = (0..g.vertex_names().len())
        .map(|v| VertexSpec {
            name: g.vertex_names()[v].clone(),
            unit: g.name(g.units()[v]).to_owned(),
        })
        .collect();
    let morphisms = g
        .ids()
        .filter(|&l| !g.is_unit(l) && keep(l))
        .map(|l| MorphismSpec {
            name: g.name(l).to_owned(),
            range: g.vertex_name(g.range(l)).to_owned(),
            source: g.vertex_name(g.source(l)).to_owned(),
            degree: g.degree(l).clone(),
        })
        .collect();
    let mut compositions = Vec::new();
    for a in g.ids().filter(|&l| keep(l)) {
        for b in g.ids().filter(|&l| keep(l)) {
            if let Some(c) = g.compose(a, b) {
                compositions.push((g.name(a).to_owned(), g.name(b).to_owned(), g.name(c).to_owned()));
            }
        }
    }
    Ok(PGraph::new(
        g.monoid().clone(),
        Some(window.clone()),
        vertices,
        morphisms,
        &compositions,
    )?)
}

/// A path as it appears in exports: anchored values keyed by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismRecord {
    pub class: DegreeClass,
    pub values: BTreeMap<String, String>,
}

impl MorphismRecord {
    pub fn new(g: &PGraph, x: &PathMorphism) -> Self {
        MorphismRecord {
            class: x.class().clone(),
            values: x
                .values()
                .iter()
                .map(|(q, &l)| (degree_key(q), g.name(l).to_owned()))
                .collect(),
        }
    }

    pub fn resolve(&self, g: &PGraph) -> Result<PathMorphism, FileError> {
        let mut values = BTreeMap::new();
        for (q, name) in &self.values {
            let q: Degree = serde_json::from_str(q)?;
            values.insert(q, g.id(name)?);
        }
        Ok(PathMorphism::from_anchored(g, self.class.clone(), values)?)
    }
}

fn degree_key(q: &Degree) -> String {
    serde_json::to_string(q).expect("degrees serialize")
}

/// A point of either path space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointRecord {
    Filter(Vec<String>),
    Morphism(MorphismRecord),
}

impl PointRecord {
    pub fn filter(g: &PGraph, x: &Filter) -> Self {
        PointRecord::Filter(x.names(g))
    }

    pub fn morphism(g: &PGraph, x: &PathMorphism) -> Self {
        PointRecord::Morphism(MorphismRecord::new(g, x))
    }

    pub fn to_filter(&self, g: &PGraph) -> Result<Filter, FileError> {
        match self {
            PointRecord::Filter(names) => {
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                Ok(Filter::from_names(g, &names)?)
            }
            PointRecord::Morphism(_) => Err(FileError::Invalid("expected a filter".into())),
        }
    }

    pub fn to_morphism(&self, g: &PGraph) -> Result<PathMorphism, FileError> {
        match self {
            PointRecord::Morphism(m) => m.resolve(g),
            PointRecord::Filter(_) => Err(FileError::Invalid("expected a graph morphism".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub x: PointRecord,
    pub q: GroupElement,
    pub y: PointRecord,
    pub witness: (Degree, Degree),
}

impl ElementRecord {
    /// `point` turns a point index of the space into its record.
    pub fn new(e: &GroupoidElement, point: impl Fn(usize) -> PointRecord) -> Self {
        ElementRecord {
            x: point(e.x),
            q: e.q.clone(),
            y: point(e.y),
            witness: e.witness.clone(),
        }
    }

    /// The element with point indices recovered by `index`; fails unless the
    /// witness really relates the two points.
    pub fn resolve<S: PathSpace>(
        &self,
        space: &S,
        index: impl Fn(&PointRecord) -> Option<usize>,
    ) -> Result<GroupoidElement, FileError> {
        let find = |p: &PointRecord| {
            index(p).ok_or_else(|| FileError::Invalid(format!("{p:?} is not a point")))
        };
        let (x, y) = (find(&self.x)?, find(&self.y)?);
        let e = crate::groupoid::make_element(space, x, &self.witness.0, &self.witness.1, y)
            .map_err(|err| FileError::Invalid(err.to_string()))?;
        if e.q != self.q {
            return Err(FileError::Invalid(format!("q = {} does not match the witness", self.q)));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::filters::FilterSpace;
    use crate::groupoid::enumerate_groupoid;
    use crate::morphisms::MorphismSpace;

    const E1: &str = r#"{
        "monoid": {"kind": "grid", "k": 1},
        "presentation": "explicit",
        "vertices": ["v", "w"],
        "morphisms": [{"id": "e", "range": "v", "source": "w", "degree": [1]}],
        "sets": {"U": {"K1": ["e"]}, "E": ["e"]}
    }"#;

    #[test]
    fn explicit_file() {
        let file = GraphFile::parse(E1).unwrap();
        let g = file.build(None).unwrap();
        assert_eq!(g.len(), 3);
        assert!(matches!(file.set("U"), Some(NamedSet::Cylinder(_))));
        assert!(matches!(file.set("E"), Some(NamedSet::Morphisms(_))));
        let back = GraphFile::parse(&serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(back, file);
        let cut = file.build(Some(&Degree::grid([0]))).unwrap();
        assert_eq!(cut.len(), 2);
    }

    #[test]
    fn explicit_export_round_trips() {
        let omega = PGraph::build_omega(&DegreeMonoid::grid(2), &Degree::grid([1, 1])).unwrap();
        for g in [catalog::e1(), catalog::e3(&Degree::grid([2, 1])), omega] {
            let text = serde_json::to_string(&GraphFile::explicit(&g)).unwrap();
            let back = GraphFile::parse(&text).unwrap().build(None).unwrap();
            assert_eq!(GraphFile::explicit(&back), GraphFile::explicit(&g));
            assert!(back.validate_category().is_ok());
        }
    }

    #[test]
    fn skeleton_and_omega_files() {
        let text = r#"{"presentation": "skeleton", "rank": 2, "window": [1, 1],
            "vertices": ["u"],
            "edges": [{"id": "b", "color": 1, "range": "u", "source": "u"},
                      {"id": "r", "color": 2, "range": "u", "source": "u"}],
            "squares": [[["r", "b"], ["b", "r"]]]}"#;
        let g = GraphFile::parse(text).unwrap().build(None).unwrap();
        assert_eq!(g.len(), catalog::e3(&Degree::grid([1, 1])).len());
        let text = r#"{"monoid": {"kind": "free", "letters": ["a", "b"]},
            "presentation": "omega", "m": "ab"}"#;
        assert_eq!(GraphFile::parse(text).unwrap().build(None).unwrap().len(), 6);
        let no_window = r#"{"presentation": "skeleton", "rank": 1, "vertices": ["u"]}"#;
        assert!(GraphFile::parse(no_window).unwrap().build(None).is_err());
        assert!(GraphFile::parse("{\"presentation\": \"cube\"}").is_err());
    }

    #[test]
    fn records_round_trip() {
        let g = catalog::e3(&Degree::grid([1, 1]));
        let fs = FilterSpace::new(&g);
        let ms = MorphismSpace::new(&g).unwrap();
        for x in ms.points() {
            let rec = PointRecord::morphism(&g, x);
            let text = serde_json::to_string(&rec).unwrap();
            let back: PointRecord = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_morphism(&g).unwrap(), *x);
        }
        for e in enumerate_groupoid(&fs, &Degree::grid([1, 1])).unwrap() {
            let rec = ElementRecord::new(&e, |i| PointRecord::filter(&g, fs.point(i)));
            let text = serde_json::to_string(&rec).unwrap();
            let back: ElementRecord = serde_json::from_str(&text).unwrap();
            let resolved = back
                .resolve(&fs, |p| fs.index_of(&p.to_filter(&g).ok()?))
                .unwrap();
            assert_eq!(resolved, e);
            assert_eq!(resolved.witness, e.witness);
        }
    }
}
