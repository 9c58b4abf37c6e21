//! The `pgraph` command line: load a graph file, run a check, report.
//!
//! Exit codes are 0 when every check passes, 1 when a property fails, and 2
//! for unreadable or malformed input.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use pgraph_core::degree::{Degree, DegreeMonoid};
use pgraph_core::filters::{CylinderSet, ExhaustiveSearch, FilterError, FilterSpace};
use pgraph_core::graph_file::{ElementRecord, FileError, GraphFile, NamedSet, PointRecord};
use pgraph_core::groupoid::{
    basis_image_check, check_isomorphism, groupoid_axiom_check, psi_map, tau_equality_check,
    FiniteGroupoid,
};
use pgraph_core::morphisms::{conjugacy_check, h_index, is_boundary_morphism, MorphismSpace};
use pgraph_core::pgraph::{GraphError, PGraph};
use pgraph_core::space::{action_axioms_check, degree_sample, PathSpace};

pub const PASS: i32 = 0;
pub const FAIL: i32 = 1;
pub const INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "pgraph", version, about = "Check finite P-graphs, their path spaces and groupoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Graph file (JSON).
    file: PathBuf,
    /// Degree window, e.g. `2,2` or `ab`; overrides the file.
    #[arg(long)]
    window: Option<String>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Space {
    Filters,
    Morphisms,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Category axioms, unique factorization and finite alignment.
    Validate(Common),
    /// List the points of a path space.
    Paths {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "filters")]
        space: Space,
        /// Keep only boundary paths.
        #[arg(long)]
        boundary: bool,
        /// Largest degree of the exhaustive sets searched.
        #[arg(long)]
        depth_bound: Option<String>,
        /// Graphviz output of the shift action.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
    /// List the semidirect product groupoid.
    Groupoid {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "filters")]
        space: Space,
        /// Largest witness degree.
        #[arg(long)]
        bound: Option<String>,
        /// Reduce to the boundary paths or to a named set of the file.
        #[arg(long)]
        reduce: Option<String>,
        #[arg(long)]
        depth_bound: Option<String>,
    },
    /// Check that the two path spaces are conjugate.
    Conjugacy(Common),
    /// Check that ψ_h is an isomorphism of the two groupoids.
    Iso {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        bound: Option<String>,
        #[arg(long)]
        depth_bound: Option<String>,
    },
    /// Write the materialized graph as an explicit graph file or as Graphviz.
    Export {
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
}

/// What a run printed and how it ended.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn input(message: impl Into<String>) -> Self {
        Output {
            code: INPUT,
            stdout: String::new(),
            stderr: message.into(),
        }
    }
}

struct Failure(i32, String);

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        let code = match &e {
            FileError::Graph(
                GraphError::MissingSquare(_) | GraphError::ConflictingSquare { .. } | GraphError::CubeViolation { .. },
            ) => FAIL,
            _ => INPUT,
        };
        Failure(code, e.to_string())
    }
}

fn input_error(e: impl ToString) -> Failure {
    Failure(INPUT, e.to_string())
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output::input(text)
            } else {
                Output {
                    code: PASS,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = String::new();
    match dispatch(cli.command, &mut out) {
        Ok(code) => Output {
            code,
            stdout: out,
            stderr: String::new(),
        },
        Err(Failure(code, message)) => Output {
            code,
            stdout: out,
            stderr: format!("error: {message}\n"),
        },
    }
}

/// Reads `2,2`, `(1,0)` or `3` as a grid degree and anything else as a word.
pub fn parse_degree(text: &str) -> Degree {
    let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
    let coords: Option<Vec<u32>> = trimmed.split(',').map(|c| c.trim().parse().ok()).collect();
    match coords {
        Some(c) => Degree::Grid(c),
        None if trimmed == "ε" => Degree::word(""),
        None => Degree::word(trimmed),
    }
}

struct Loaded {
    file: GraphFile,
    graph: PGraph,
}

fn load(common: &Common) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(&common.file)
        .map_err(|e| input_error(format!("cannot read {}: {e}", common.file.display())))?;
    let file = GraphFile::parse(&text)?;
    let window = common.window.as_deref().map(parse_degree);
    let graph = file.build(window.as_ref())?;
    Ok(Loaded { file, graph })
}

/// The witness bound: the flag, the window, or the join of all degrees.
fn witness_bound(g: &PGraph, flag: Option<&str>) -> Result<Degree, Failure> {
    if let Some(text) = flag {
        let d = parse_degree(text);
        g.monoid().check(&d).map_err(input_error)?;
        return Ok(d);
    }
    if let Some(w) = g.window() {
        return Ok(w.clone());
    }
    let monoid = g.monoid();
    let mut acc = monoid.identity();
    for d in g.degrees() {
        acc = monoid
            .lub(&acc, &d)
            .map_err(input_error)?
            .ok_or_else(|| input_error("the degrees have no common bound; pass --bound"))?;
    }
    Ok(acc)
}

fn search(g: &PGraph, depth: Option<&str>) -> Result<ExhaustiveSearch, Failure> {
    let depth = depth.map(parse_degree);
    ExhaustiveSearch::new(g, depth.as_ref()).map_err(|e| match e {
        FilterError::SearchTooLarge(_) => input_error(format!("{e}; pass a smaller --depth-bound")),
        other => input_error(other),
    })
}

fn show_depth(s: &ExhaustiveSearch) -> String {
    s.depth.as_ref().map_or("none".to_owned(), Degree::to_string)
}

fn count(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

fn json_line(out: &mut String, value: &impl Serialize) {
    out.push_str(&serde_json::to_string_pretty(value).expect("reports serialize"));
    out.push('\n');
}

fn dispatch(command: Command, out: &mut String) -> Result<i32, Failure> {
    match command {
        Command::Validate(common) => validate(&common, out),
        Command::Paths {
            common,
            space,
            boundary,
            depth_bound,
            dot,
        } => paths(&common, space, boundary, depth_bound.as_deref(), dot, out),
        Command::Groupoid {
            common,
            space,
            bound,
            reduce,
            depth_bound,
        } => groupoid(&common, space, bound.as_deref(), reduce.as_deref(), depth_bound.as_deref(), out),
        Command::Conjugacy(common) => conjugacy(&common, out),
        Command::Iso {
            common,
            bound,
            depth_bound,
        } => iso(&common, bound.as_deref(), depth_bound.as_deref(), out),
        Command::Export { common, dot } => export(&common, dot, out),
    }
}

fn validate(common: &Common, out: &mut String) -> Result<i32, Failure> {
    let Loaded { graph: g, .. } = match load(common) {
        Ok(loaded) => loaded,
        Err(Failure(FAIL, message)) => {
            if common.json {
                json_line(out, &json!({"ok": false, "construction": message}));
            } else {
                let _ = writeln!(out, "construction: FAIL\n  counterexample: {message}");
            }
            return Ok(FAIL);
        }
        Err(other) => return Err(other),
    };
    let category = g.validate_category();
    let ufp = g.validate_ufp();
    let alignment = g.is_finitely_aligned();
    let ok = category.is_ok() && ufp.is_ok() && alignment.is_aligned();
    if common.json {
        json_line(
            out,
            &json!({"ok": ok, "category": category, "ufp": ufp, "alignment": alignment}),
        );
    } else {
        let _ = writeln!(
            out,
            "{}, {}",
            count(g.len(), "morphism", "morphisms"),
            count(g.vertex_names().len(), "vertex", "vertices")
        );
        match category.violations.first() {
            None => out.push_str("category axioms: ok\n"),
            Some(v) => {
                let _ = writeln!(out, "category axioms: FAIL\n  counterexample: {v}");
            }
        }
        match ufp.violations.first() {
            None => out.push_str("unique factorization: ok\n"),
            Some(v) => {
                let _ = writeln!(out, "unique factorization: FAIL\n  counterexample: {v}");
            }
        }
        match alignment.violations.first() {
            None => {
                let _ = writeln!(
                    out,
                    "finite alignment: ok (largest certificate {}, {} pairs at the window edge)",
                    alignment.largest_certificate(),
                    alignment.unconfirmed().count()
                );
            }
            Some(v) => {
                let _ = writeln!(out, "finite alignment: FAIL\n  counterexample: {v}");
            }
        }
    }
    Ok(if ok { PASS } else { FAIL })
}

fn point_records(g: &PGraph, space: Space, fs: &FilterSpace, ms: &MorphismSpace) -> Vec<PointRecord> {
    match space {
        Space::Filters => fs.points().iter().map(|x| PointRecord::filter(g, x)).collect(),
        Space::Morphisms => ms.points().iter().map(|x| PointRecord::morphism(g, x)).collect(),
    }
}

fn dot_action<S: PathSpace>(space: &S, out: &mut String) {
    let g = space.graph();
    let e = g.monoid().identity();
    out.push_str("digraph action {\n");
    for x in 0..space.len() {
        let _ = writeln!(out, "  p{x} [label={:?}];", space.label(x));
    }
    for x in 0..space.len() {
        for m in degree_sample(g) {
            if m == e {
                continue;
            }
            if let Some(y) = space.act(x, &m) {
                let _ = writeln!(out, "  p{x} -> p{y} [label={:?}];", m.to_string());
            }
        }
    }
    out.push_str("}\n");
}

fn paths(
    common: &Common,
    space: Space,
    boundary: bool,
    depth: Option<&str>,
    dot: bool,
    out: &mut String,
) -> Result<i32, Failure> {
    let Loaded { graph: g, .. } = load(common)?;
    let fs = FilterSpace::new(&g);
    let ms = MorphismSpace::new(&g).map_err(input_error)?;
    let h = h_index(&ms, &fs).ok_or_else(|| Failure(FAIL, "h does not land in the filter space".into()))?;
    let search = if boundary { Some(search(&g, depth)?) } else { None };
    let mut keep: Vec<usize> = (0..fs.len()).collect();
    let mut truncated = BTreeSet::new();
    if let Some(s) = &search {
        keep.retain(|&x| match space {
            Space::Filters => {
                let v = pgraph_core::filters::is_boundary(&g, s, fs.point(x));
                if v.truncated {
                    truncated.insert(x);
                }
                v.boundary
            }
            Space::Morphisms => {
                let v = is_boundary_morphism(&g, s, ms.point(x));
                if v.truncated {
                    truncated.insert(x);
                }
                v.boundary
            }
        });
    }
    if dot {
        match space {
            Space::Filters => dot_action(&fs, out),
            Space::Morphisms => dot_action(&ms, out),
        }
        return Ok(PASS);
    }
    let (one, noun) = match space {
        Space::Filters => ("filter", "filters"),
        Space::Morphisms => ("graph morphism", "graph morphisms"),
    };
    if common.json {
        let records = point_records(&g, space, &fs, &ms);
        let points: Vec<&PointRecord> = keep.iter().map(|&x| &records[x]).collect();
        json_line(
            out,
            &json!({
                "space": noun,
                "boundary": boundary,
                "depth_bound": search.as_ref().and_then(|s| s.depth.clone()),
                "points": points,
            }),
        );
        return Ok(PASS);
    }
    if let Some(s) = &search {
        let _ = writeln!(out, "depth bound: {}", show_depth(s));
    }
    let prefix = if boundary { "boundary " } else { "" };
    let _ = writeln!(out, "{}", count(keep.len(), &format!("{prefix}{one}"), &format!("{prefix}{noun}")));
    for &x in &keep {
        let mark = if truncated.contains(&x) { "  [window]" } else { "" };
        match space {
            Space::Filters => {
                let _ = writeln!(out, "{}{mark}", fs.label(x));
            }
            Space::Morphisms => {
                let _ = writeln!(out, "{}  h: {}{mark}", ms.label(x), fs.label(h[x]));
            }
        }
    }
    Ok(PASS)
}

fn named_points<S: PathSpace>(
    file: &GraphFile,
    name: &str,
    space: &S,
    contains: impl Fn(usize, &CylinderSet) -> bool,
) -> Result<BTreeSet<usize>, Failure> {
    let g = space.graph();
    let cylinder = match file.set(name) {
        Some(NamedSet::Cylinder(c)) => c.resolve(g).map_err(input_error)?,
        Some(NamedSet::Morphisms(names)) => {
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            CylinderSet::from_names(g, &names, &[]).map_err(input_error)?
        }
        None => return Err(input_error(format!("no set named {name:?} in the file"))),
    };
    Ok((0..space.len()).filter(|&x| contains(x, &cylinder)).collect())
}

fn groupoid(
    common: &Common,
    space: Space,
    bound: Option<&str>,
    reduce: Option<&str>,
    depth: Option<&str>,
    out: &mut String,
) -> Result<i32, Failure> {
    let Loaded { file, graph: g } = load(common)?;
    let bound = witness_bound(&g, bound)?;
    let fs = FilterSpace::new(&g);
    let ms = MorphismSpace::new(&g).map_err(input_error)?;
    let (gpd, records) = match space {
        Space::Filters => (FiniteGroupoid::from_space(&fs, &bound).map_err(input_error)?, point_records(&g, space, &fs, &ms)),
        Space::Morphisms => (FiniteGroupoid::from_space(&ms, &bound).map_err(input_error)?, point_records(&g, space, &fs, &ms)),
    };
    let mut depth_used = None;
    let gpd = match reduce {
        None => gpd,
        Some("boundary") => {
            let s = search(&g, depth)?;
            depth_used = Some(show_depth(&s));
            let u = match space {
                Space::Filters => fs.boundary(&s),
                Space::Morphisms => ms.boundary(&s),
            };
            gpd.reduction(&u)
        }
        Some(name) => {
            let u = match space {
                Space::Filters => named_points(&file, name, &fs, |x, c| c.contains(fs.point(x)))?,
                Space::Morphisms => named_points(&file, name, &ms, |x, c| {
                    pgraph_core::morphisms::morphism_cylinder_membership(ms.point(x), c)
                })?,
            };
            gpd.reduction(&u)
        }
    };
    if common.json {
        let elements: Vec<ElementRecord> = gpd
            .elements()
            .iter()
            .map(|e| ElementRecord::new(e, |x| records[x].clone()))
            .collect();
        json_line(out, &json!({"bound": bound, "elements": elements}));
        return Ok(PASS);
    }
    if let Some(d) = depth_used {
        let _ = writeln!(out, "depth bound: {d}");
    }
    let _ = writeln!(out, "{} (witness bound {bound})", count(gpd.len(), "element", "elements"));
    for (i, e) in gpd.elements().iter().enumerate() {
        let _ = writeln!(out, "{}  witness ({}, {})", gpd.display(i), e.witness.0, e.witness.1);
    }
    Ok(PASS)
}

fn conjugacy(common: &Common, out: &mut String) -> Result<i32, Failure> {
    let Loaded { graph: g, .. } = load(common)?;
    let fs = FilterSpace::new(&g);
    let ms = MorphismSpace::new(&g).map_err(input_error)?;
    let report = conjugacy_check(&ms, &fs);
    let axioms_f = action_axioms_check(&fs);
    let axioms_m = action_axioms_check(&ms);
    let ok = report.is_ok() && axioms_f.is_ok() && axioms_m.is_ok();
    if common.json {
        json_line(
            out,
            &json!({"ok": ok, "conjugacy": report, "filter_action": axioms_f, "morphism_action": axioms_m}),
        );
    } else {
        let line = |out: &mut String, name: &str, v: &[String], extra: String| {
            let _ = match v.first() {
                None => writeln!(out, "{name}: ok{extra}"),
                Some(w) => writeln!(out, "{name}: FAIL\n  counterexample: {w}"),
            };
        };
        let _ = writeln!(out, "{}", count(report.points, "point", "points"));
        line(out, "C1 bijection", &report.c1, String::new());
        line(out, "C2 domains", &report.c2, String::new());
        line(out, "C3 equivariance", &report.c3, format!(" ({} pairs)", report.checked_pairs));
        line(out, "cylinder sets", &report.cylinders, String::new());
        for (name, a) in [("filter action", &axioms_f), ("morphism action", &axioms_m)] {
            line(
                out,
                name,
                &a.violations,
                format!(" ({} cases, {} skipped at the window)", a.checked, a.skipped),
            );
        }
    }
    Ok(if ok { PASS } else { FAIL })
}

fn iso(common: &Common, bound: Option<&str>, depth: Option<&str>, out: &mut String) -> Result<i32, Failure> {
    let Loaded { graph: g, .. } = load(common)?;
    let bound = witness_bound(&g, bound)?;
    let fs = FilterSpace::new(&g);
    let ms = MorphismSpace::new(&g).map_err(input_error)?;
    let gf = FiniteGroupoid::from_space(&fs, &bound).map_err(input_error)?;
    let gm = FiniteGroupoid::from_space(&ms, &bound).map_err(input_error)?;
    let h = h_index(&ms, &fs).ok_or_else(|| Failure(FAIL, "h does not land in the filter space".into()))?;
    let mut checks: Vec<(String, Vec<String>)> = Vec::new();
    let af = groupoid_axiom_check(&gf);
    checks.push((format!("filter groupoid axioms ({})", count(gf.len(), "element", "elements")), af.violations));
    let am = groupoid_axiom_check(&gm);
    checks.push((format!("morphism groupoid axioms ({})", count(gm.len(), "element", "elements")), am.violations));
    let psi = psi_map(&gm, &gf, &h);
    checks.push(("ψ_h isomorphism".into(), check_isomorphism(&psi, &gm, &gf).violations));

    let s = search(&g, depth)?;
    let (bf, bm) = (fs.boundary(&s), ms.boundary(&s));
    let (rf, rm) = (gf.reduction(&bf), gm.reduction(&bm));
    let image: Vec<usize> = (0..ms.len()).map(|x| h[x]).collect();
    let psi_boundary: Vec<Option<usize>> = rm
        .elements()
        .iter()
        .map(|e| rf.index_of(image[e.x], &e.q, image[e.y]))
        .collect();
    checks.push((
        format!(
            "boundary restriction ({}, depth bound {})",
            count(rf.len(), "element", "elements"),
            show_depth(&s)
        ),
        check_isomorphism(&psi_boundary, &rm, &rf).violations,
    ));
    let basis = basis_image_check(&ms, &fs, &gm, &gf, 1);
    checks.push((format!("basis images ({} sets)", basis.checked), basis.violations));
    if matches!(g.monoid(), DegreeMonoid::Grid { .. }) {
        let tau = tau_equality_check(&fs, &gf, 1);
        checks.push((
            format!("Z and Z_Yee bases ({} differences)", tau.differences),
            tau.violations,
        ));
    }
    let ok = checks.iter().all(|(_, v)| v.is_empty());
    if common.json {
        let items: Vec<_> = checks
            .iter()
            .map(|(name, v)| json!({"check": name, "ok": v.is_empty(), "violations": v}))
            .collect();
        json_line(out, &json!({"ok": ok, "bound": bound, "checks": items}));
    } else {
        for (name, v) in &checks {
            let _ = match v.first() {
                None => writeln!(out, "{name}: ok"),
                Some(w) => writeln!(out, "{name}: FAIL\n  counterexample: {w}"),
            };
        }
    }
    Ok(if ok { PASS } else { FAIL })
}

fn export(common: &Common, dot: bool, out: &mut String) -> Result<i32, Failure> {
    let Loaded { graph: g, .. } = load(common)?;
    if dot {
        out.push_str("digraph pgraph {\n");
        for v in g.vertex_names() {
            let _ = writeln!(out, "  {v:?};");
        }
        for l in g.ids().filter(|&l| !g.is_unit(l)) {
            let _ = writeln!(
                out,
                "  {:?} -> {:?} [label={:?}];",
                g.vertex_name(g.source(l)),
                g.vertex_name(g.range(l)),
                format!("{} : {}", g.name(l), g.degree(l))
            );
        }
        out.push_str("}\n");
    } else {
        json_line(out, &GraphFile::explicit(&g));
    }
    Ok(PASS)
}
