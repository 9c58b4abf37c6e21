//! Small graphs used throughout the tests, the CLI fixtures and the docs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::degree::{Degree, DegreeMonoid};
use crate::pgraph::{square, MorphismSpec, PGraph, Skeleton, SkeletonEdge, VertexSpec};

/// A single edge `e` with `r(e) = v` and `s(e) = w`, as a 1-graph.
pub fn e1() -> PGraph {
    PGraph::new(
        DegreeMonoid::grid(1),
        None,
        vec![VertexSpec::named("v"), VertexSpec::named("w")],
        vec![MorphismSpec {
            name: "e".into(),
            range: "v".into(),
            source: "w".into(),
            degree: Degree::grid([1]),
        }],
        &[],
    )
    .expect("e1 is well formed")
}

/// One vertex and no edges.
pub fn point() -> PGraph {
    PGraph::new(DegreeMonoid::grid(1), None, vec![VertexSpec::named("u")], vec![], &[])
        .expect("a point is well formed")
}

/// One vertex `u` with a loop `a`, materialized up to `a^window`.
pub fn nat_loop(window: u32) -> PGraph {
    PGraph::from_skeleton(&nat_loop_skeleton(), &Degree::grid([window]))
        .expect("the loop skeleton is well formed")
}

pub fn nat_loop_skeleton() -> Skeleton {
    Skeleton {
        rank: 1,
        vertices: vec!["u".into()],
        edges: vec![SkeletonEdge::new("a", 1, "u", "u")],
        squares: vec![],
    }
}

/// Two loops `a1`, `a2` of the same color at one vertex.
pub fn bouquet(window: u32) -> PGraph {
    PGraph::from_skeleton(&bouquet_skeleton(), &Degree::grid([window]))
        .expect("the bouquet skeleton is well formed")
}

pub fn bouquet_skeleton() -> Skeleton {
    Skeleton {
        rank: 1,
        vertices: vec!["u".into()],
        edges: vec![
            SkeletonEdge::new("a1", 1, "u", "u"),
            SkeletonEdge::new("a2", 1, "u", "u"),
        ],
        squares: vec![],
    }
}

/// One vertex with a blue loop `b`, a red loop `r` and the square `rb = br`.
pub fn e3(window: &Degree) -> PGraph {
    PGraph::from_skeleton(&e3_skeleton(), window).expect("e3 is well formed")
}

pub fn e3_skeleton() -> Skeleton {
    Skeleton {
        rank: 2,
        vertices: vec!["u".into()],
        edges: vec![
            SkeletonEdge::new("b", 1, "u", "u"),
            SkeletonEdge::new("r", 2, "u", "u"),
        ],
        squares: vec![square(["r", "b"], ["b", "r"])],
    }
}

/// Loops `a1`, `a2` of color 1 and `c` of color 2, with `a1c = ca2` and
/// `a2c = ca1`.
pub fn twisted_loops(window: &Degree) -> PGraph {
    PGraph::from_skeleton(&twisted_loops_skeleton(), window)
        .expect("the twisted loops are well formed")
}

pub fn twisted_loops_skeleton() -> Skeleton {
    Skeleton {
        rank: 2,
        vertices: vec!["u".into()],
        edges: vec![
            SkeletonEdge::new("a1", 1, "u", "u"),
            SkeletonEdge::new("a2", 1, "u", "u"),
            SkeletonEdge::new("c", 2, "u", "u"),
        ],
        squares: vec![
            square(["a1", "c"], ["c", "a2"]),
            square(["a2", "c"], ["c", "a1"]),
        ],
    }
}

/// A random 2-graph skeleton with one or two vertices and one or two edges
/// of each color. Edge counts are resampled until blue-red and red-blue paths
/// can be matched between every pair of vertices; the squares are then a
/// random matching.
pub fn random_two_graph(seed: u64) -> Skeleton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(1..=2usize);
        let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for (color, letter) in [(1, 'b'), (2, 'r')] {
            for i in 0..rng.gen_range(1..=2usize) {
                let range = vertices[rng.gen_range(0..n)].clone();
                let source = vertices[rng.gen_range(0..n)].clone();
                edges.push(SkeletonEdge {
                    name: format!("{letter}{i}"),
                    color,
                    range,
                    source,
                });
            }
        }
        let paths = |first: usize, second: usize, v: &str, w: &str| -> Vec<[String; 2]> {
            let mut out = Vec::new();
            for f in edges.iter().filter(|e| e.color == first && e.range == v) {
                for g in edges.iter().filter(|e| e.color == second && e.source == w) {
                    if f.source == g.range {
                        out.push([f.name.clone(), g.name.clone()]);
                    }
                }
            }
            out
        };
        let mut squares = Vec::new();
        let mut balanced = true;
        for v in &vertices {
            for w in &vertices {
                let normal = paths(1, 2, v, w);
                let mut swapped = paths(2, 1, v, w);
                if normal.len() != swapped.len() {
                    balanced = false;
                }
                swapped.shuffle(&mut rng);
                for (a, b) in swapped.into_iter().zip(normal) {
                    squares.push([a, b]);
                }
            }
        }
        if balanced {
            return Skeleton {
                rank: 2,
                vertices,
                edges,
                squares,
            };
        }
    }
}

/// The graphs on which the path-space theorems are checked, with the degree
/// bound used for their groupoids.
pub fn theorem_suite(seed: u64) -> Vec<(String, PGraph, Degree)> {
    let w22 = Degree::grid([2, 2]);
    let w11 = Degree::grid([1, 1]);
    vec![
        ("E1".into(), e1(), Degree::grid([1])),
        ("E3 window (2,2)".into(), e3(&w22), w22.clone()),
        ("loop window 3".into(), nat_loop(3), Degree::grid([3])),
        ("bouquet window 1".into(), bouquet(1), Degree::grid([1])),
        (
            format!("random 2-graph seed {seed}"),
            PGraph::from_skeleton(&random_two_graph(seed), &w11)
                .expect("random skeletons are well formed"),
            w11,
        ),
    ]
}
