use std::path::Path;
use std::time::Instant;

use cws_core::cwscode::{class_name, error_patterns, reduction_patterns};
use cws_core::operatoralg::{
    build_projector, projector_from_codewords, stabilizes, weight_enumerator, EnumeratorMethod,
};
use cws_core::search::compatibility_search;
use cws_core::{
    CwsCode, Distance, Exact, ExactPauliSum, Graph, KlReport, SearchConfig, SearchStrategy, VertexSet,
};
use num_rational::Rational64;
use serde_json::{json, Value};

use crate::io::{self, InputError};
use crate::report::RunReport;
use crate::{Cli, CodeInput, Command, GraphInput, Method, Strategy};

/// Enumerator of the built-in code.
const ENUMERATOR_9_12_3: [u64; 10] = [144, 0, 0, 0, 96, 0, 1536, 3072, 1296, 0];

pub struct Outcome {
    /// Line-based output printed before the report.
    pub payload: Option<String>,
    pub report: RunReport,
    pub ok: bool,
    pub summary: Vec<(String, String)>,
    /// Print the summary table even without `--pretty`.
    pub always_summary: bool,
}

impl Outcome {
    fn new(report: RunReport, ok: bool) -> Self {
        Outcome { payload: None, report, ok, summary: Vec::new(), always_summary: false }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, InputError> {
    let start = Instant::now();
    let mut outcome = match &cli.command {
        Command::Verify { input, weight } => verify(input, *weight)?,
        Command::Distance { input, max_d } => distance(input, *max_d)?,
        Command::Patterns { input } => patterns(input)?,
        Command::Proofcheck { input } => proofcheck(input)?,
        Command::Projector { code, graph } => projector(code.as_deref(), graph.as_deref())?,
        Command::Enumerator { input, method } => enumerator(input, *method)?,
        Command::Statevec { input } => statevec(input)?,
        Command::Search { input, distance, min_size, budget, strategy } => {
            let mut cfg = SearchConfig::new(Graph::loop_graph(9)?, *distance);
            cfg.min_size = *min_size;
            cfg.time_budget = *budget;
            cfg.strategy = match strategy {
                Strategy::Bb => SearchStrategy::BranchAndBound,
                Strategy::Greedy => SearchStrategy::Greedy,
            };
            search(input, cfg)?
        }
        Command::PaperDemo => paper_demo()?,
    };
    outcome.report.elapsed = start.elapsed();
    Ok(outcome)
}

fn load_code(input: &CodeInput, report: &mut RunReport) -> Result<CwsCode, InputError> {
    match (&input.code, &input.graph) {
        (Some(path), g) => {
            let (code, files) = io::load_code(path, g.as_deref())?;
            files.iter().for_each(|f| report.input(f));
            Ok(code)
        }
        (None, Some(_)) => Err(InputError::Usage("--graph given without --code".into())),
        (None, None) => {
            report.set("code", "built-in ((9,12,3))");
            Ok(CwsCode::the_9_12_3())
        }
    }
}

fn load_graph(input: &GraphInput, report: &mut RunReport) -> Result<Graph, InputError> {
    match &input.graph {
        Some(path) => {
            let (g, file) = io::load_graph(path)?;
            report.input(&file);
            Ok(g)
        }
        None => {
            report.set("graph", "built-in loop graph L_9");
            Ok(Graph::loop_graph(9)?)
        }
    }
}

fn set_name(s: VertexSet) -> String {
    if s.is_empty() {
        return "-".into();
    }
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn kl_json(r: &KlReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| json!({ "error": v.error.label(), "i": v.i + 1, "j": v.j + 1, "value": v.value.to_string() }))
        .collect();
    json!({
        "passed": r.passed,
        "pure": r.pure,
        "checked_weight": r.checked_weight,
        "violations": violations,
        "violations_truncated": r.truncated,
        "counts": { "errors_checked": r.errors_checked, "violations": r.violation_count },
    })
}

fn merge(report: &mut RunReport, v: Value) {
    if let Value::Object(map) = v {
        for (k, v) in map {
            report.verdicts.insert(k, v);
        }
    }
}

fn verify(input: &CodeInput, weight: usize) -> Result<Outcome, InputError> {
    let mut report = RunReport::new("verify");
    let code = load_code(input, &mut report)?;
    let r = code.kl_verify(weight)?;
    merge(&mut report, kl_json(&r));
    report.set("codewords", code.len());
    let mut out = Outcome::new(report, r.passed);
    out.summary = vec![
        ("checked weight".into(), r.checked_weight.to_string()),
        ("errors checked".into(), r.errors_checked.to_string()),
        ("passed".into(), r.passed.to_string()),
        ("pure".into(), r.pure.to_string()),
        ("violations".into(), r.violation_count.to_string()),
    ];
    Ok(out)
}

fn distance(input: &CodeInput, max_d: usize) -> Result<Outcome, InputError> {
    let mut report = RunReport::new("distance");
    let code = load_code(input, &mut report)?;
    let d = code.distance(max_d)?;
    report.set("distance", d.to_string());
    report.set("exact", matches!(d, Distance::Exact(_)));
    report.set("max_scanned", max_d);
    let mut out = Outcome::new(report, true);
    out.summary = vec![("distance".into(), d.to_string())];
    Ok(out)
}

fn patterns(input: &GraphInput) -> Result<Outcome, InputError> {
    let mut report = RunReport::new("patterns");
    let g = load_graph(input, &mut report)?;
    let weight = 2.min(g.n());
    let raw = reduction_patterns(&g, weight)?;
    report.set("pattern_count", raw.patterns.len());
    report.set("has_empty_pattern", raw.has_empty);
    let mut ok = true;
    let mut summary = vec![("patterns".into(), raw.patterns.len().to_string())];
    if g.is_loop_graph() {
        let classes = error_patterns(&g)?;
        let mut tagged = serde_json::Map::new();
        for (size, set) in &classes.classes {
            let list: Vec<String> = set.iter().map(|&p| set_name(p)).collect();
            summary.push((format!("class {}", class_name(*size)), list.len().to_string()));
            tagged.insert(class_name(*size).to_string(), json!(list));
        }
        report.set("classes", tagged);
        report.set("shapes_match", classes.shapes_match());
        report.set("unmatched", classes.unmatched.iter().map(|&p| set_name(p)).collect::<Vec<_>>());
        ok = classes.shapes_match();
    } else {
        report.set("classes", Value::Null);
        report.set("patterns", raw.patterns.iter().map(|&p| set_name(p)).collect::<Vec<_>>());
    }
    let mut out = Outcome::new(report, ok);
    out.summary = summary;
    Ok(out)
}

fn proofcheck(input: &CodeInput) -> Result<Outcome, InputError> {
    let mut report = RunReport::new("proofcheck");
    let code = load_code(input, &mut report)?;
    let verdict = code.paper_proof_check();
    let kl = code.kl_verify(2.min(code.n()))?;
    let reduced = code.reduced_transitions();
    let agree = verdict == (kl.passed && kl.pure);
    report.set("passed", verdict);
    report.set("kl_passed", kl.passed);
    report.set("kl_pure", kl.pure);
    report.set("agree", agree);
    report.set("transition_count", code.transition_set().len());
    report.set("coset_structure", reduced.coset_structure);
    report.set(
        "reduced_transitions",
        reduced.set.iter().map(|&t| set_name(t)).collect::<Vec<_>>(),
    );
    let mut out = Outcome::new(report, verdict && agree);
    out.summary = vec![
        ("proof check".into(), verdict.to_string()),
        ("KL passed and pure".into(), (kl.passed && kl.pure).to_string()),
        ("reduced transitions".into(), reduced.set.len().to_string()),
    ];
    Ok(out)
}

fn fmt_ratio(r: &Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn fmt_coefficient(c: &num_complex::Complex<Exact>) -> String {
    if *c.im.numer() == 0 {
        fmt_ratio(&c.re)
    } else {
        format!("({})+({})i", fmt_ratio(&c.re), fmt_ratio(&c.im))
    }
}

fn projector_lines(p: &ExactPauliSum) -> String {
    p.terms().map(|(op, c)| format!("{} {}\n", fmt_coefficient(c), op.label())).collect()
}

fn projector(code: Option<&Path>, graph: Option<&Path>) -> Result<Outcome, InputError> {
    let mut report = RunReport::new("projector");
    let (p, reference) = match code {
        Some(path) => {
            let input = CodeInput { code: Some(path.to_path_buf()), graph: graph.map(Path::to_path_buf) };
            let code = load_code(&input, &mut report)?;
            report.set("construction", "codewords");
            (projector_from_codewords::<Exact>(&code)?, None)
        }
        None => {
            report.set("construction", "closed-form product on L_9");
            let reference = projector_from_codewords::<Exact>(&CwsCode::the_9_12_3())?;
            (build_projector::<Exact>(), Some(reference))
        }
    };
    let idempotent = &p * &p == p;
    let hermitian = p.adjoint() == p;
    let trace = p.trace();
    report.set("idempotent", idempotent);
    report.set("hermitian", hermitian);
    report.set("trace", fmt_coefficient(&trace));
    report.set("terms", p.len());
    let mut ok = idempotent && hermitian;
    if let Some(reference) = reference {
        let matches = reference == p;
        report.set("matches_codeword_projector", matches);
        ok &= matches;
    }
    let mut out = Outcome::new(report, ok);
    out.payload = Some(projector_lines(&p));
    out.summary = vec![
        ("terms".into(), p.len().to_string()),
        ("idempotent".into(), idempotent.to_string()),
        ("hermitian".into(), hermitian.to_string()),
        ("trace".into(), fmt_coefficient(&trace)),
    ];
    Ok(out)
}

fn enumerator(input: &CodeInput, method: Method) -> Result<Outcome, InputError> {
    let mut report = RunReport::new("enumerator");
    let code = load_code(input, &mut report)?;
    let mut ok = true;
    let mut summary = Vec::new();
    let mut run = |name: &str, m: EnumeratorMethod, report: &mut RunReport| -> Result<Vec<u64>, InputError> {
        let t = Instant::now();
        let a = weight_enumerator(&code, m)?.a;
        report.set(&format!("{name}_ms"), t.elapsed().as_secs_f64() * 1e3);
        summary.push((format!("A_d ({name})"), format!("{a:?}")));
        Ok(a)
    };
    let a = match method {
        Method::Brute => run("brute", EnumeratorMethod::Brute, &mut report)?,
        Method::Fast => run("fast", EnumeratorMethod::Fast, &mut report)?,
        Method::Both => {
            let fast = run("fast", EnumeratorMethod::Fast, &mut report)?;
            let brute = run("brute", EnumeratorMethod::Brute, &mut report)?;
            report.set("brute", &brute);
            report.set("fast", &fast);
            report.set("agree", fast == brute);
            ok = fast == brute;
            fast
        }
    };
    report.set("method", format!("{method:?}").to_lowercase());
    report.set("a", &a);
    report.set("sum", a.iter().sum::<u64>());
    let mut out = Outcome::new(report, ok);
    out.summary = summary;
    Ok(out)
}

fn statevec(input: &GraphInput) -> Result<Outcome, InputError> {
    let mut report = RunReport::new("statevec");
    let g = load_graph(input, &mut report)?;
    let s = g.state_vector::<Exact>()?;
    let lines = s.sign_strings().expect("graph states have ±1 amplitudes");
    report.set("n", g.n());
    report.set("dimension", lines.len());
    report.set("negative_amplitudes", lines.iter().filter(|l| l.starts_with('-')).count());
    let mut out = Outcome::new(report, true);
    out.payload = Some(lines.iter().map(|l| format!("{l}\n")).collect());
    Ok(out)
}

fn search(input: &GraphInput, mut cfg: SearchConfig) -> Result<Outcome, InputError> {
    let mut report = RunReport::new("search");
    cfg.graph = load_graph(input, &mut report)?;
    let res = compatibility_search(&cfg)?;
    report.set("size", res.size);
    report.set("certified", res.certified);
    report.set("exhausted", res.exhausted);
    report.set("degenerate_errors", res.degenerate_errors);
    report.set("target_distance", cfg.target_distance);
    report.set("min_size", cfg.min_size);
    report.set("strategy", format!("{:?}", cfg.strategy));
    report.set("search_ms", res.elapsed.as_secs_f64() * 1e3);
    report.set("codewords", res.codewords.iter().map(|&c| set_name(c)).collect::<Vec<_>>());
    let graph_ref = input.graph.as_ref().map(|p| p.display().to_string());
    let mut out = Outcome::new(report, res.certified);
    out.payload = Some(io::render_code(graph_ref.as_deref(), &res.codewords));
    out.summary = vec![
        ("size".into(), res.size.to_string()),
        ("certified".into(), res.certified.to_string()),
        ("exhausted".into(), res.exhausted.to_string()),
    ];
    Ok(out)
}

fn paper_demo() -> Result<Outcome, InputError> {
    let mut report = RunReport::new("paper-demo");
    let code = CwsCode::the_9_12_3();
    let mut checks: Vec<(String, bool, String)> = Vec::new();

    let kl = code.kl_verify(2)?;
    checks.push(("kl_verify weight 2".into(), kl.passed && kl.pure, format!("{} errors, pure={}", kl.errors_checked, kl.pure)));

    let d = code.distance(3)?;
    checks.push(("distance".into(), d == Distance::Exact(3), d.to_string()));

    let proof = code.paper_proof_check();
    let reduced = code.reduced_transitions();
    checks.push((
        "proof path".into(),
        proof && proof == (kl.passed && kl.pure) && reduced.set.len() == 31,
        format!("{} reduced transitions", reduced.set.len()),
    ));

    let p = build_projector::<Exact>();
    let proj_ok = &p * &p == p
        && p.adjoint() == p
        && p.trace().re == Exact::from_integer(12)
        && p == projector_from_codewords::<Exact>(&code)?;
    checks.push(("projector".into(), proj_ok, format!("{} terms", p.len())));

    let mut local = true;
    for u in [[3, 8], [6, 2], [9, 5]] {
        let g = code.graph().stabilizer_element(VertexSet::from_vertices(u)?)?;
        local &= stabilizes(&ExactPauliSum::from_pauli(&g)?, &code)?.iter().all(|&b| b);
    }
    checks.push(("local stabilizers".into(), local, "G_38 G_62 G_95".into()));

    let fast = weight_enumerator(&code, EnumeratorMethod::Fast)?.a;
    let brute = weight_enumerator(&code, EnumeratorMethod::Brute)?.a;
    checks.push((
        "weight enumerator".into(),
        fast == brute && fast == ENUMERATOR_9_12_3,
        format!("{fast:?}"),
    ));

    let all = checks.iter().all(|c| c.1);
    report.set(
        "checks",
        checks.iter().map(|(n, ok, d)| json!({ "name": n, "passed": ok, "detail": d })).collect::<Vec<_>>(),
    );
    report.set("passed", all);
    let mut out = Outcome::new(report, all);
    out.always_summary = true;
    out.summary = checks
        .into_iter()
        .map(|(n, ok, d)| (n, format!("{}  {d}", if ok { "PASS" } else { "FAIL" })))
        .collect();
    Ok(out)
}
