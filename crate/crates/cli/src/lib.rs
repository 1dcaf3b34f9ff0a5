//! Command-line front end: reads JSON input documents, runs the checks from
//! `gradecheck-core` and writes JSON reports.
//!
//! Exit codes: `0` yes, `1` no (the report carries a witness), `2` input
//! error. With several input files the worst code wins.

pub mod expr;
pub mod format;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use gradecheck_core::criteria::{describe_witness, strongly_z_graded, strongly_zmod_graded, Verdict, Witness};
use gradecheck_core::dade::dade_probe;
use gradecheck_core::graph::Graph;
use gradecheck_core::group::{AbelianGroup, Element};
use gradecheck_core::groupoid::{strong_grading_check, FiniteGradedGroupoid};
use gradecheck_core::kgraph::{strongly_zk_graded, validate_kgraph, KGraph};
use gradecheck_core::lpa::{reduce_ck2, unit_factorization_certificate};
use gradecheck_core::paction::{is_global, transformation_groupoid, PartialAction};
use gradecheck_core::ring::{Field, Fp, Q};
use gradecheck_core::steinberg::{
    inclusion_exclusion_factorization, steinberg_algebra, strongly_graded_algebra_check, GradedAlgebra,
};
use gradecheck_core::Error;

use format::{AlgebraDoc, Document, GraphDoc, GroupoidDoc, KGraphDoc, PartialActionDoc, REPORT_SCHEMA};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Limits read from `GRADECHECK_MAX_ENUM` and `GRADECHECK_MAX_DEPTH`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest path or set enumeration.
    pub max_enum: usize,
    /// Largest degree magnitude or window radius.
    pub max_depth: usize,
}

impl Caps {
    pub const DEFAULT: Caps = Caps { max_enum: 100_000, max_depth: 64 };

    pub fn from_env() -> Result<Caps, String> {
        let read = |name: &str, default: usize| -> Result<usize, String> {
            match std::env::var(name) {
                Ok(s) => s.trim().parse().map_err(|_| format!("{name}: expected a non-negative integer, found `{s}`")),
                Err(_) => Ok(default),
            }
        };
        Ok(Caps {
            max_enum: read("GRADECHECK_MAX_ENUM", Caps::DEFAULT.max_enum)?,
            max_depth: read("GRADECHECK_MAX_DEPTH", Caps::DEFAULT.max_depth)?,
        })
    }
}

#[derive(Debug, Parser)]
#[command(name = "gradecheck", version, about = "Decide strong gradings and emit re-checkable reports")]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads across input files.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Include wall-clock timings (makes reports nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Leavitt path algebras of graphs.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Finite graded groupoids.
    #[command(subcommand)]
    Gpd(GpdCommand),
    /// Graded algebras given by structure constants.
    #[command(subcommand)]
    Alg(AlgCommand),
    /// Restriction and induction of graded modules.
    #[command(subcommand)]
    Dade(DadeCommand),
    /// Partial actions of finite groups.
    #[command(subcommand)]
    Paction(PactionCommand),
    /// Finite higher-rank graphs.
    #[command(subcommand)]
    Kp(KpCommand),
    /// Multiply out a Leavitt path algebra expression.
    Eval {
        /// A graph document.
        graph: PathBuf,
        /// For example `e* e - v`; see docs/formats.md.
        expression: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum GraphCommand {
    /// Strong grading by `z` or `zmod:<n>`.
    Check {
        /// `z` or `zmod:<n>`.
        #[arg(long)]
        group: String,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Factor a vertex through degrees `d` and `-d`.
    Certify {
        /// Vertex identifier.
        #[arg(long)]
        vertex: String,
        /// The degree `d`, possibly negative.
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GpdCommand {
    /// Strong grading, with the four per-degree criteria.
    Check {
        /// `radius:<r>` or elements separated by `;`, coordinates by `,`.
        #[arg(long)]
        window: Option<String>,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Write `1_U` as a sum of products of degree `gamma` and `delta` parts.
    Factor {
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        /// Morphism names separated by `,`.
        #[arg(long)]
        set: String,
        file: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum AlgCommand {
    /// Strong grading from local units and component products.
    Check {
        /// Same syntax as `gpd check --window`.
        #[arg(long)]
        window: Option<String>,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DadeCommand {
    /// Natural maps for the shifted regular modules over the window.
    Probe {
        /// Same syntax as `gpd check --window`.
        #[arg(long)]
        window: Option<String>,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PactionCommand {
    /// Globality and strong grading of the transformation groupoid.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum KpCommand {
    /// Strong ℤᵏ-grading of the Kumjian-Pask algebra.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Check the factorisation property only.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

/// The result of one command: exit code and report text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

/// A failed input: exit code 2 and a message.
#[derive(Debug)]
struct InputError(String);

impl From<String> for InputError {
    fn from(s: String) -> Self {
        InputError(s)
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type Step = Result<(bool, Value), InputError>;

/// Parses arguments and runs, without touching the process exit code.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, report: e.to_string() };
        }
    };
    let caps = match Caps::from_env() {
        Ok(c) => c,
        Err(e) => return Outcome { code: 2, report: e },
    };
    run_cli(&cli, caps)
}

pub fn run_cli(cli: &Cli, caps: Caps) -> Outcome {
    let (name, files): (&str, Vec<&PathBuf>) = match &cli.command {
        Command::Graph(GraphCommand::Check { files, .. }) => ("graph check", files.iter().collect()),
        Command::Graph(GraphCommand::Certify { files, .. }) => ("graph certify", files.iter().collect()),
        Command::Gpd(GpdCommand::Check { files, .. }) => ("gpd check", files.iter().collect()),
        Command::Gpd(GpdCommand::Factor { file, .. }) => ("gpd factor", vec![file]),
        Command::Alg(AlgCommand::Check { files, .. }) => ("alg check", files.iter().collect()),
        Command::Dade(DadeCommand::Probe { files, .. }) => ("dade probe", files.iter().collect()),
        Command::Paction(PactionCommand::Check { files }) => ("paction check", files.iter().collect()),
        Command::Kp(KpCommand::Check { files }) => ("kp check", files.iter().collect()),
        Command::Kp(KpCommand::Validate { files }) => ("kp validate", files.iter().collect()),
        Command::Eval { graph, .. } => ("eval", vec![graph]),
    };
    let results = parallel_map(&files, cli.jobs.max(1), |path| one_file(cli, caps, name, path));
    let code = results.iter().map(|r| r.0).max().unwrap_or(0);
    let doc = if results.len() == 1 {
        results.into_iter().next().unwrap().1
    } else {
        Value::Array(results.into_iter().map(|r| r.1).collect())
    };
    let mut report = serde_json::to_string_pretty(&doc).expect("reports serialise");
    report.push('\n');
    Outcome { code, report }
}

/// Order-preserving map over `items` with up to `jobs` threads.
fn parallel_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let next = AtomicUsize::new(0);
    let mut out: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
    let chunks: Vec<Vec<(usize, R)>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs.min(items.len()))
            .map(|_| {
                s.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= items.len() {
                            break mine;
                        }
                        mine.push((i, f(&items[i])));
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    for (i, r) in chunks.into_iter().flatten() {
        out[i] = Some(r);
    }
    out.into_iter().map(|r| r.expect("every item is processed")).collect()
}

fn one_file(cli: &Cli, caps: Caps, name: &str, path: &Path) -> (i32, Value) {
    let start = Instant::now();
    let mut report = serde_json::Map::new();
    report.insert("schema".into(), json!(REPORT_SCHEMA));
    report.insert("version".into(), json!(VERSION));
    report.insert("command".into(), json!(name));
    let (code, body) = match std::fs::read(path) {
        Err(e) => (2, Err(InputError(format!("{}: {e}", path.display())))),
        Ok(bytes) => {
            report.insert(
                "input".into(),
                json!({ "path": path.display().to_string(), "sha256": hex::encode(Sha256::digest(&bytes)) }),
            );
            match String::from_utf8(bytes) {
                Err(_) => (2, Err(InputError(format!("{}: not UTF-8", path.display())))),
                Ok(text) => {
                    let r = dispatch(cli, caps, &text);
                    (r.as_ref().map_or(2, |(yes, _)| if *yes { 0 } else { 1 }), r)
                }
            }
        }
    };
    match body {
        Ok((yes, Value::Object(fields))) => {
            report.insert("verdict".into(), json!(if yes { "yes" } else { "no" }));
            report.extend(fields);
        }
        Ok((_, other)) => {
            report.insert("result".into(), other);
        }
        Err(InputError(msg)) => {
            report.insert("verdict".into(), json!("error"));
            report.insert("error".into(), json!(format!("{}: {msg}", path.display())));
        }
    }
    if cli.timing {
        report.insert("timing_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
    }
    (code, Value::Object(report))
}

fn load<D: Document>(text: &str) -> Result<D, InputError> {
    format::parse::<D>(text).map_err(|e| InputError(e.0))
}

fn dispatch(cli: &Cli, caps: Caps, text: &str) -> Step {
    match &cli.command {
        Command::Graph(GraphCommand::Check { group, .. }) => graph_check(text, group),
        Command::Graph(GraphCommand::Certify { vertex, degree, .. }) => graph_certify(text, vertex, *degree, caps),
        Command::Gpd(GpdCommand::Check { window, .. }) => gpd_check(text, window.as_deref(), caps),
        Command::Gpd(GpdCommand::Factor { gamma, delta, set, .. }) => gpd_factor(text, gamma, delta, set),
        Command::Alg(AlgCommand::Check { window, .. }) => with_field(text, |a| alg_check(a, window.as_deref(), caps)),
        Command::Dade(DadeCommand::Probe { window, .. }) => with_field(text, |a| dade(a, window.as_deref(), caps)),
        Command::Paction(PactionCommand::Check { .. }) => paction_check(text),
        Command::Kp(KpCommand::Check { .. }) => kp_check(text),
        Command::Kp(KpCommand::Validate { .. }) => kp_validate(text),
        Command::Eval { expression, .. } => eval(text, expression),
    }
}

fn trace_json(v: &Verdict) -> Value {
    Value::Array(v.trace.iter().map(|(c, h)| json!({ "check": c, "holds": h })).collect())
}

fn graph_witness(g: &Graph, w: &Witness) -> Value {
    let name = |v: usize| g.vertex_name(v).to_string();
    let mut out = match w {
        Witness::Sink { vertex } => json!({ "kind": "sink", "vertex": name(*vertex) }),
        Witness::InfiniteEmitter { vertex } => json!({ "kind": "infinite_emitter", "vertex": name(*vertex) }),
        Witness::ConditionY { ray, k, prefix } => json!({
            "kind": "condition_y",
            "ray": g.rays()[*ray].name,
            "k": k,
            "start": name(prefix.source()),
            "prefix": prefix.edges().iter().map(|&e| g.edge(e).name.clone()).collect::<Vec<_>>(),
        }),
        Witness::SingularReceives { vertex, length } => {
            json!({ "kind": "singular_receives", "vertex": name(*vertex), "length": length })
        }
        Witness::Isolated { vertex } => json!({ "kind": "isolated", "vertex": name(*vertex) }),
        other => json!({ "kind": format!("{other:?}") }),
    };
    out["description"] = json!(describe_witness(g, w));
    out
}

fn graph_check(text: &str, group: &str) -> Step {
    let g = Graph::new(&load::<GraphDoc>(text)?.spec())?;
    let (label, v) = if group == "z" {
        ("Z".to_string(), strongly_z_graded(&g))
    } else if let Some(n) = group.strip_prefix("zmod:") {
        let n: usize = n.parse().map_err(|_| format!("--group: bad modulus `{n}`"))?;
        (format!("Z/{n}"), strongly_zmod_graded(&g, n)?)
    } else {
        return Err(InputError(format!("--group: expected `z` or `zmod:<n>`, found `{group}`")));
    };
    let mut body = json!({ "group": label, "trace": trace_json(&v) });
    if let Some(w) = &v.witness {
        body["witness"] = graph_witness(&g, w);
    }
    Ok((v.answer, body))
}

fn graph_certify(text: &str, vertex: &str, degree: i64, caps: Caps) -> Step {
    let g = Graph::new(&load::<GraphDoc>(text)?.spec())?;
    let v = g.vertex_index(vertex).ok_or_else(|| format!("--vertex: unknown vertex `{vertex}`"))?;
    if degree.unsigned_abs() as usize > caps.max_depth {
        return Err(Error::Resource { what: "certificate degree".into(), cap: caps.max_depth }.into());
    }
    match unit_factorization_certificate::<Q>(&g, v, degree, caps.max_enum) {
        Ok(cert) => {
            let pairs: Vec<Value> =
                cert.pairs.iter().map(|(x, y)| json!([x.display(&g), y.display(&g)])).collect();
            Ok((
                true,
                json!({ "certificate": { "vertex": vertex, "degree": degree, "pairs": pairs, "verified": cert.verified } }),
            ))
        }
        Err(Error::GraphCondition(w)) => Ok((false, json!({ "witness": graph_witness(&g, &w) }))),
        Err(e) => Err(e.into()),
    }
}

fn parse_element(group: &AbelianGroup, s: &str, what: &str) -> Result<Element, InputError> {
    let coords: Result<Vec<i64>, _> =
        if s.trim().is_empty() { Ok(Vec::new()) } else { s.split(',').map(|c| c.trim().parse::<i64>()).collect() };
    let coords = coords.map_err(|_| format!("{what}: bad group element `{s}`"))?;
    group.element(&coords).map_err(|e| InputError(format!("{what}: {e}")))
}

/// `None` means the default window.
fn parse_window(group: &AbelianGroup, spec: Option<&str>, caps: Caps) -> Result<Option<Vec<Element>>, InputError> {
    let Some(spec) = spec else { return Ok(None) };
    if let Some(r) = spec.strip_prefix("radius:") {
        let r: usize = r.parse().map_err(|_| format!("--window: bad radius `{r}`"))?;
        if r > caps.max_depth {
            return Err(Error::Resource { what: "window radius".into(), cap: caps.max_depth }.into());
        }
        return Ok(Some(group.window(r as i64)));
    }
    let mut out = Vec::new();
    for part in spec.split(';') {
        let e = parse_element(group, part, "--window")?;
        if !out.contains(&e) {
            out.push(e);
        }
    }
    Ok(Some(out))
}

fn elem_json(e: &Element) -> Value {
    json!(e)
}

fn gpd_check(text: &str, window: Option<&str>, caps: Caps) -> Step {
    let g = FiniteGradedGroupoid::new(&load::<GroupoidDoc>(text)?.spec())?;
    let window = parse_window(g.group_ref(), window, caps)?.unwrap_or_else(|| g.default_window());
    let r = strong_grading_check(&g, &window);
    let degrees: Vec<Value> = r
        .degrees
        .iter()
        .map(|c| {
            json!({
                "gamma": elem_json(&c.gamma),
                "products": c.products,
                "inverse_products": c.inverse_products,
                "domains": c.domains,
                "codomains": c.codomains,
            })
        })
        .collect();
    let mut body = json!({ "group": g.group_ref().display(), "criteria_agree": r.agree, "degrees": degrees });
    if let Some(f) = r.failing_degree() {
        body["witness"] = json!({ "kind": "failing_degree", "gamma": elem_json(f) });
    }
    Ok((r.answer, body))
}

fn gpd_factor(text: &str, gamma: &str, delta: &str, set: &str) -> Step {
    let g = FiniteGradedGroupoid::new(&load::<GroupoidDoc>(text)?.spec())?;
    let gamma = parse_element(g.group_ref(), gamma, "--gamma")?;
    let delta = parse_element(g.group_ref(), delta, "--delta")?;
    let mut u = BTreeSet::new();
    for name in set.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        u.insert(g.index(name).ok_or_else(|| format!("--set: unknown morphism `{name}`"))?);
    }
    let names = |s: &BTreeSet<usize>| s.iter().map(|&x| g.name(x).to_string()).collect::<Vec<_>>();
    match inclusion_exclusion_factorization(&g, &u, &gamma, &delta) {
        Ok(expr) => {
            let value = expr.evaluate(&g);
            let exact = value.len() == u.len() && u.iter().all(|x| value.get(x) == Some(&1));
            let terms: Vec<Value> = expr
                .terms
                .iter()
                .map(|(s, v, w)| json!({ "sign": s, "left": names(v), "right": names(w) }))
                .collect();
            Ok((true, json!({ "set": names(&u), "terms": terms, "reevaluates_exactly": exact })))
        }
        Err(Error::NotStronglyGraded { morphism }) => Ok((
            false,
            json!({ "witness": { "kind": "no_factorisation", "morphism": g.name(morphism) } }),
        )),
        Err(e) => Err(e.into()),
    }
}

/// Builds the algebra of an [`AlgebraDoc`] over its declared field and runs `f`.
fn with_field(text: &str, f: impl Fn(&dyn AlgebraView) -> Step) -> Step {
    let doc = load::<AlgebraDoc>(text)?;
    match doc.field.trim() {
        "Q" => f(&build::<Q>(&doc)?),
        "Z/2" => f(&build::<Fp<2>>(&doc)?),
        "Z/3" => f(&build::<Fp<3>>(&doc)?),
        "Z/5" => f(&build::<Fp<5>>(&doc)?),
        "Z/7" => f(&build::<Fp<7>>(&doc)?),
        other => Err(Error::Domain(format!(
            "field `{other}`: coefficients must form a field; supported are Q, Z/2, Z/3, Z/5 and Z/7"
        ))
        .into()),
    }
}

fn build<F: Field>(doc: &AlgebraDoc) -> Result<GradedAlgebra<F>, InputError> {
    match (&doc.steinberg, doc.spec()) {
        (Some(g), _) => {
            if doc.group.is_some() || !doc.basis.is_empty() || !doc.products.is_empty() || !doc.local_units.is_empty() {
                return Err(InputError("`steinberg` excludes `group`, `basis`, `products` and `local_units`".into()));
            }
            if g.schema != format::GROUPOID_SCHEMA {
                return Err(InputError(format!("steinberg.schema: expected `{}`", format::GROUPOID_SCHEMA)));
            }
            Ok(steinberg_algebra(&FiniteGradedGroupoid::new(&g.spec())?))
        }
        (None, Some(spec)) => Ok(GradedAlgebra::new(&spec)?),
        (None, None) => unreachable!("spec is present without steinberg"),
    }
}

/// The field-independent queries the commands need.
trait AlgebraView {
    fn group(&self) -> &AbelianGroup;
    fn degrees(&self) -> Vec<Element>;
    fn check(&self, window: &[Element]) -> Value;
    fn probe(&self, window: &[Element]) -> (bool, Value);
}

impl<F: Field> AlgebraView for GradedAlgebra<F> {
    fn group(&self) -> &AbelianGroup {
        GradedAlgebra::group(self)
    }

    fn degrees(&self) -> Vec<Element> {
        (0..self.dim()).map(|i| self.degree(i).clone()).collect()
    }

    fn check(&self, window: &[Element]) -> Value {
        let r = strongly_graded_algebra_check(self, window);
        let degrees: Vec<Value> = r
            .degrees
            .iter()
            .map(|c| json!({ "gamma": elem_json(&c.gamma), "local_units": c.local_units, "products": c.products }))
            .collect();
        let failing = r.degrees.iter().find(|c| !c.local_units).map(|c| elem_json(&c.gamma));
        json!({ "answer": r.answer, "criteria_agree": r.agree, "degrees": degrees, "failing": failing })
    }

    fn probe(&self, window: &[Element]) -> (bool, Value) {
        let rows = dade_probe(self, window);
        let all = rows.iter().all(|r| r.natural_iso);
        let json_rows: Vec<Value> = rows
            .iter()
            .map(|r| json!({ "alpha": elem_json(&r.alpha), "natural_iso": r.natural_iso, "eta_iso": r.eta_iso }))
            .collect();
        let failing = rows.iter().find(|r| !r.natural_iso).map(|r| elem_json(&r.alpha));
        (all, json!({ "modules": json_rows, "failing": failing }))
    }
}

fn algebra_window(a: &dyn AlgebraView, window: Option<&str>, caps: Caps) -> Result<Vec<Element>, InputError> {
    if let Some(w) = parse_window(a.group(), window, caps)? {
        return Ok(w);
    }
    if let Some(all) = a.group().elements() {
        return Ok(all);
    }
    let radius = a.degrees().iter().flat_map(|g| g.iter().map(|x| x.abs())).max().unwrap_or(0) + 1;
    Ok(a.group().window(radius))
}

fn alg_check(a: &dyn AlgebraView, window: Option<&str>, caps: Caps) -> Step {
    let w = algebra_window(a, window, caps)?;
    let mut r = a.check(&w);
    let answer = r["answer"].as_bool().unwrap_or(false);
    let failing = r["failing"].take();
    let obj = r.as_object_mut().expect("object");
    obj.remove("answer");
    obj.remove("failing");
    obj.insert("group".into(), json!(a.group().display()));
    if !failing.is_null() {
        obj.insert("witness".into(), json!({ "kind": "local_unit_outside_span", "gamma": failing }));
    }
    Ok((answer, r))
}

fn dade(a: &dyn AlgebraView, window: Option<&str>, caps: Caps) -> Step {
    let w = algebra_window(a, window, caps)?;
    let (all, mut body) = a.probe(&w);
    let failing = body["failing"].take();
    let obj = body.as_object_mut().expect("object");
    obj.remove("failing");
    if !failing.is_null() {
        obj.insert("witness".into(), json!({ "kind": "natural_map_not_bijective", "alpha": failing }));
    }
    Ok((all, body))
}

fn paction_check(text: &str) -> Step {
    let p = PartialAction::new(&load::<PartialActionDoc>(text)?.spec())?;
    let g = transformation_groupoid(&p)?;
    let window = g.default_window();
    let groupoid = strong_grading_check(&g, &window);
    let algebra = strongly_graded_algebra_check(&steinberg_algebra::<Q>(&g), &window);
    let global = is_global(&p);
    let agree = global == groupoid.answer && groupoid.answer == algebra.answer;
    let mut body = json!({
        "global": global,
        "groupoid_strongly_graded": groupoid.answer,
        "algebra_strongly_graded": algebra.answer,
        "agree": agree,
    });
    if let Some(f) = groupoid.failing_degree() {
        body["witness"] = json!({ "kind": "failing_degree", "gamma": elem_json(f) });
    }
    Ok((groupoid.answer, body))
}

fn kp_check(text: &str) -> Step {
    let k = KGraph::new(&load::<KGraphDoc>(text)?.spec())?;
    let v = strongly_zk_graded(&k);
    let mut body = json!({ "rank": k.rank(), "trace": trace_json(&v) });
    match &v.witness {
        Some(Witness::Source { vertex, color }) => {
            body["witness"] = json!({ "kind": "source", "vertex": k.vertex_name(*vertex), "color": color });
        }
        Some(Witness::KConditionY(l)) => {
            let names = |es: &[usize]| es.iter().map(|&e| k.edge(e).name.clone()).collect::<Vec<_>>();
            body["witness"] = json!({
                "kind": "condition_y",
                "m": l.m,
                "start": k.vertex_name(l.start),
                "stem": names(&l.stem),
                "cycle": names(&l.cycle),
            });
        }
        Some(other) => body["witness"] = json!({ "kind": format!("{other:?}") }),
        None => {}
    }
    Ok((v.answer, body))
}

fn kp_validate(text: &str) -> Step {
    let r = validate_kgraph(&load::<KGraphDoc>(text)?.spec());
    let mut body = json!({ "valid": r.valid, "experimental": r.experimental });
    if let Some(v) = r.violation {
        body["violation"] = json!(v);
    }
    Ok((r.valid, body))
}

fn eval(text: &str, expression: &str) -> Step {
    let g = Graph::new(&load::<GraphDoc>(text)?.spec())?;
    let x = expr::parse_expression(&g, expression).map_err(|e| format!("expression {e}"))?;
    let normal = reduce_ck2(&g, &x);
    let components: Vec<Value> = normal
        .homogeneous_components()
        .iter()
        .map(|(d, c)| json!({ "degree": d, "value": c.display(&g) }))
        .collect();
    Ok((
        true,
        json!({
            "expression": expression,
            "normal_form": normal.display(&g),
            "is_zero": normal.is_zero(),
            "degree": normal.degree(),
            "components": components,
        }),
    ))
}

/// Writes the report and returns the process exit code.
pub fn emit(cli_output: Option<&Path>, outcome: &Outcome) -> i32 {
    match cli_output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.report) {
                eprintln!("{}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{}", outcome.report),
    }
    outcome.code
}
