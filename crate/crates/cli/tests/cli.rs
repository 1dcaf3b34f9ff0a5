use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use gradecheck::expr::parse_expression;
use gradecheck::format::{self, AlgebraDoc, GraphDoc, GroupoidDoc, KGraphDoc, PartialActionDoc};
use gradecheck_core::graph::Graph;
use gradecheck_core::groupoid::FiniteGradedGroupoid;
use gradecheck_core::kgraph::KGraph;
use gradecheck_core::lpa::{equal_in_algebra, multiply, LpaElement};
use gradecheck_core::paction::PartialAction;
use gradecheck_core::ring::Q;
use gradecheck_core::steinberg::GradedAlgebra;

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples").join(name)
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gradecheck"));
    c.env_remove("GRADECHECK_MAX_ENUM").env_remove("GRADECHECK_MAX_DEPTH");
    c
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = bin().args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    (code, serde_json::from_str(&text).unwrap_or(Value::String(text)))
}

fn ex(name: &str) -> String {
    example(name).to_str().unwrap().to_string()
}

#[test]
fn loop_graph_is_strongly_graded() {
    let (code, r) = run(&["graph", "check", "--group", "z", &ex("loop.graph.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "yes");
    assert_eq!(r["schema"], "gradecheck.report/1");
    assert_eq!(r["input"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn sink_graph_reports_the_sink() {
    let (code, r) = run(&["graph", "check", "--group", "z", &ex("sink.graph.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["witness"]["kind"], "sink");
    assert_eq!(r["witness"]["vertex"], "v");
}

#[test]
fn ray_graph_fails_condition_y() {
    let (code, r) = run(&["graph", "check", "--group", "z", &ex("ray.graph.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["witness"]["kind"], "condition_y");
    assert_eq!(r["witness"]["k"], 1);
}

fn reverify(graph: &str, vertex: &str, degree: i64) {
    let (code, r) = run(&["graph", "certify", "--vertex", vertex, "--degree", &degree.to_string(), &ex(graph)]);
    assert_eq!(code, 0, "{r}");
    let doc: GraphDoc = format::parse(&std::fs::read_to_string(example(graph)).unwrap()).unwrap();
    let g = Graph::new(&doc.spec()).unwrap();
    let mut sum = LpaElement::<Q>::zero(&g);
    for pair in r["certificate"]["pairs"].as_array().unwrap() {
        let x = parse_expression(&g, pair[0].as_str().unwrap()).unwrap();
        let y = parse_expression(&g, pair[1].as_str().unwrap()).unwrap();
        assert_eq!(x.degree(), Some(degree));
        assert_eq!(y.degree(), Some(-degree));
        sum = sum.add(&multiply(&g, &x, &y).unwrap()).unwrap();
    }
    let v = parse_expression(&g, vertex).unwrap();
    assert!(equal_in_algebra(&g, &sum, &v).unwrap());
}

#[test]
fn loop_certificate_in_degree_minus_one() {
    let (_, r) = run(&["graph", "certify", "--vertex", "v", "--degree", "-1", &ex("loop.graph.json")]);
    assert_eq!(r["certificate"]["pairs"].as_array().unwrap().len(), 1);
    assert_eq!(r["certificate"]["verified"], true);
    reverify("loop.graph.json", "v", -1);
}

#[test]
fn embedded_certificates_reverify() {
    for d in -3..=3 {
        reverify("loop.graph.json", "v", d);
        reverify("two_loops.graph.json", "v", d);
    }
}

#[test]
fn certificate_at_an_infinite_emitter_is_refused_with_a_witness() {
    let (code, r) = run(&["graph", "certify", "--vertex", "v", "--degree", "1", &ex("emitter.graph.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["witness"]["kind"], "infinite_emitter");
}

#[test]
fn groupoid_commands() {
    let (code, r) = run(&["gpd", "check", &ex("z2.groupoid.json")]);
    assert_eq!((code, r["criteria_agree"].clone()), (0, Value::Bool(true)));
    let (code, r) = run(&["gpd", "check", &ex("two_points.groupoid.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["witness"]["gamma"], serde_json::json!([1]));
    let (code, r) = run(&["gpd", "factor", "--gamma", "1", "--delta", "1", "--set", "e", &ex("z2.groupoid.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["terms"], serde_json::json!([{ "sign": 1, "left": ["s"], "right": ["s"] }]));
    assert_eq!(r["reevaluates_exactly"], true);
    let (code, r) = run(&["gpd", "factor", "--gamma", "1", "--delta", "1", "--set", "a", &ex("two_points.groupoid.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["witness"]["morphism"], "a");
}

#[test]
fn algebra_and_dade_commands() {
    assert_eq!(run(&["alg", "check", &ex("group_ring.algebra.json")]).0, 0);
    assert_eq!(run(&["alg", "check", &ex("product.algebra.json")]).0, 1);
    assert_eq!(run(&["dade", "probe", &ex("group_ring.algebra.json")]).0, 0);
    assert_eq!(run(&["dade", "probe", &ex("swap_steinberg.algebra.json")]).0, 0);
    let (code, r) = run(&["dade", "probe", &ex("product.algebra.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["witness"]["alpha"], serde_json::json!([1]));
    assert!(r["modules"].as_array().unwrap().iter().all(|m| m["eta_iso"] == true));
}

#[test]
fn integer_coefficients_are_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(example("group_ring.algebra.json")).unwrap().replace("\"Q\"", "\"Z\"");
    let path = dir.path().join("z.algebra.json");
    std::fs::write(&path, text).unwrap();
    let (code, r) = run(&["alg", "check", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("domain error"));
}

#[test]
fn partial_actions_and_kgraphs() {
    let (code, r) = run(&["paction", "check", &ex("swap.paction.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["global"], true);
    let (code, r) = run(&["paction", "check", &ex("fixed_point.paction.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["agree"], true);
    assert_eq!(run(&["kp", "check", &ex("two_graph.kgraph.json")]).0, 0);
    assert_eq!(run(&["kp", "validate", &ex("two_graph.kgraph.json")]).0, 0);
    let (code, r) = run(&["kp", "check", &ex("source.kgraph.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["witness"]["kind"], "source");
}

#[test]
fn eval_reduces_to_normal_form() {
    let (code, r) = run(&["eval", &ex("two_loops.graph.json"), "e* e + e* f - e e* - f f*"]);
    assert_eq!(code, 0);
    assert_eq!(r["normal_form"], "0");
    let (_, r) = run(&["eval", &ex("two_loops.graph.json"), "f f* + e e*"]);
    assert_eq!(r["normal_form"], "v");
    let (code, r) = run(&["eval", &ex("two_loops.graph.json"), "e + x"]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("column 5"));
}

#[test]
fn usage_errors_exit_with_two() {
    let out = bin().args(["gpd", "check", "--bogus", "x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["graph", "check", "--group", "q", &ex("loop.graph.json")]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schema_violations_name_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.graph.json");
    std::fs::write(&path, "{\"schema\": \"gradecheck.graph/1\",\n \"vertices\": [\"v\"],\n \"edgez\": []}").unwrap();
    let (code, r) = run(&["graph", "check", "--group", "z", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("line 3"), "{r}");
    let (code, r) = run(&["gpd", "check", &ex("loop.graph.json")]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("field `schema`"));
}

#[test]
fn caps_come_from_the_environment() {
    let out = bin()
        .env("GRADECHECK_MAX_DEPTH", "1")
        .args(["graph", "certify", "--vertex", "v", "--degree", "2", &ex("loop.graph.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("resource limit"));
    let out = bin()
        .env("GRADECHECK_MAX_ENUM", "3")
        .args(["graph", "certify", "--vertex", "v", "--degree", "2", &ex("two_loops.graph.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_across_jobs() {
    let files = ["loop.graph.json", "sink.graph.json", "ray.graph.json", "two_loops.graph.json", "emitter.graph.json"];
    let mut args = vec!["graph".to_string(), "check".into(), "--group".into(), "z".into()];
    args.extend(files.iter().map(|f| ex(f)));
    let one = bin().args(&args).arg("--jobs").arg("1").output().unwrap();
    let four = bin().args(&args).arg("--jobs").arg("4").output().unwrap();
    let again = bin().args(&args).arg("--jobs").arg("4").output().unwrap();
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);
    assert_eq!(one.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), files.len());
}

#[test]
fn output_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = bin()
        .args(["kp", "check", "--output", path.to_str().unwrap(), &ex("two_graph.kgraph.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verdict"], "yes");
}

#[test]
fn timing_is_opt_in() {
    let (_, r) = run(&["kp", "check", &ex("two_graph.kgraph.json")]);
    assert!(r.get("timing_ms").is_none());
    let (_, r) = run(&["kp", "check", "--timing", &ex("two_graph.kgraph.json")]);
    assert!(r["timing_ms"].is_number());
}

fn read(name: &str) -> String {
    std::fs::read_to_string(example(name)).unwrap()
}

#[test]
fn every_format_round_trips() {
    for name in ["loop.graph.json", "sink.graph.json", "ray.graph.json", "emitter.graph.json", "two_loops.graph.json"] {
        let doc: GraphDoc = format::parse(&read(name)).unwrap();
        assert_eq!(format::parse::<GraphDoc>(&format::to_string(&doc)).unwrap(), doc);
        let g = Graph::new(&doc.spec()).unwrap();
        let again = GraphDoc::from_spec(&g.to_spec());
        assert_eq!(Graph::new(&format::parse::<GraphDoc>(&format::to_string(&again)).unwrap().spec()).unwrap(), g);
    }
    for name in ["z2.groupoid.json", "two_points.groupoid.json"] {
        let doc: GroupoidDoc = format::parse(&read(name)).unwrap();
        assert_eq!(format::parse::<GroupoidDoc>(&format::to_string(&doc)).unwrap(), doc);
        let g = FiniteGradedGroupoid::new(&doc.spec()).unwrap();
        let again = GroupoidDoc::from_spec(&g.to_spec());
        let g2 = FiniteGradedGroupoid::new(&format::parse::<GroupoidDoc>(&format::to_string(&again)).unwrap().spec());
        assert_eq!(g2.unwrap(), g);
    }
    for name in ["swap.paction.json", "fixed_point.paction.json"] {
        let doc: PartialActionDoc = format::parse(&read(name)).unwrap();
        let p = PartialAction::new(&doc.spec()).unwrap();
        let again = PartialActionDoc::from_spec(&p.to_spec());
        let p2 = PartialAction::new(&format::parse::<PartialActionDoc>(&format::to_string(&again)).unwrap().spec());
        assert_eq!(p2.unwrap(), p);
    }
    for name in ["two_graph.kgraph.json", "source.kgraph.json"] {
        let doc: KGraphDoc = format::parse(&read(name)).unwrap();
        let k = KGraph::new(&doc.spec()).unwrap();
        let again = KGraphDoc::from_spec(&k.to_spec());
        let k2 = KGraph::new(&format::parse::<KGraphDoc>(&format::to_string(&again)).unwrap().spec());
        assert_eq!(k2.unwrap(), k);
    }
    for name in ["group_ring.algebra.json", "product.algebra.json"] {
        let doc: AlgebraDoc = format::parse(&read(name)).unwrap();
        let a = GradedAlgebra::<Q>::new(&doc.spec().unwrap()).unwrap();
        let again = AlgebraDoc::from_spec("Q", &a.to_spec());
        let parsed = format::parse::<AlgebraDoc>(&format::to_string(&again)).unwrap();
        assert_eq!(parsed, again);
        assert_eq!(GradedAlgebra::<Q>::new(&parsed.spec().unwrap()).unwrap(), a);
    }
    let doc: AlgebraDoc = format::parse(&read("swap_steinberg.algebra.json")).unwrap();
    assert_eq!(format::parse::<AlgebraDoc>(&format::to_string(&doc)).unwrap(), doc);
}
