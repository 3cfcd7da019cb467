//! Command handlers: build, verify, export. Every report echoes the tool
//! version and the configuration and is written atomically.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use easy_diagrams_core::algebra::{self, AlgebraElement, Category};
use easy_diagrams_core::arrays::{
    self, conjecture_sweep, dim_a_n, hyperoct_report, m_properties_report, KArray, MArray, Table,
};
use easy_diagrams_core::graphs::{
    build_graph, check_isomorphism_gamma_b, BranchingGraph, GraphKind, Vertex,
};
use easy_diagrams_core::ratio::{format_ratio, parse_ratio};
use easy_diagrams_core::report::{all_hold, CheckReport};
use easy_diagrams_core::traces::{lifted_diagram_trace, ThomaParameter, TraceConvention};
use easy_diagrams_core::{BigRatio, Error};

use crate::{Format, VerifyTarget};

pub enum Outcome {
    Pass,
    CheckFailed,
}

type CliResult<T> = Result<T, String>;

const VERSION: &str = env!("CARGO_PKG_VERSION");
const BASE_GRAPH_CAP: usize = 30;
const PASCALIZED_GRAPH_CAP: usize = 20;

// ------------------------------------------------------------------
// output plumbing
// ------------------------------------------------------------------

/// Writes through a temp file and rename so readers never see a torn file.
fn write_atomic(path: &Path, content: &str) -> CliResult<()> {
    let tmp = path.with_extension("tmp-write");
    fs::write(&tmp, content).map_err(|e| format!("writing {}: {e}", tmp.display()))?;
    fs::rename(&tmp, path).map_err(|e| format!("renaming into {}: {e}", path.display()))
}

fn emit(out: Option<&Path>, content: &str) -> CliResult<()> {
    match out {
        Some(path) => write_atomic(path, content),
        None => {
            print!("{content}");
            if !content.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn report_document(
    command: &str,
    config: serde_json::Value,
    started: Instant,
    checks: &[CheckReport],
    data: serde_json::Value,
) -> serde_json::Value {
    serde_json::json!({
        "tool_version": VERSION,
        "command": command,
        "config": config,
        "duration_ms": started.elapsed().as_millis(),
        "holds": all_hold(checks),
        "checks": checks,
        "data": data,
    })
}

// ------------------------------------------------------------------
// graph
// ------------------------------------------------------------------

fn build_by_name(kind: &str, levels: usize) -> CliResult<BranchingGraph> {
    let normalized = kind.to_ascii_lowercase().replace('_', "-");
    if let Some(base) = normalized.strip_prefix("pascalized-") {
        if levels > PASCALIZED_GRAPH_CAP {
            return Err(format!(
                "level cap for pascalized graphs is {PASCALIZED_GRAPH_CAP}, got {levels}"
            ));
        }
        let base_kind = GraphKind::parse(base).map_err(|e| e.to_string())?;
        build_graph(base_kind, levels)
            .pascalize()
            .map_err(|e| e.to_string())
    } else {
        if levels > BASE_GRAPH_CAP {
            return Err(format!(
                "level cap for base graphs is {BASE_GRAPH_CAP}, got {levels}"
            ));
        }
        Ok(build_graph(
            GraphKind::parse(&normalized).map_err(|e| e.to_string())?,
            levels,
        ))
    }
}

pub fn graph(kind: &str, levels: usize, format: Format, out: Option<&Path>) -> CliResult<Outcome> {
    let graph = build_by_name(kind, levels)?;
    let content = match format {
        Format::Json => serde_json::to_string_pretty(&graph.to_json()).unwrap() + "\n",
        Format::Dot => graph.to_dot(),
        Format::Csv => graph.dims_csv(),
        Format::Text => {
            let mut text = format!("{} up to level {}\n", graph.kind(), graph.level_cap());
            for n in 0..=graph.level_cap() {
                let payloads = graph.level(n).map_err(|e| e.to_string())?;
                let dims = graph.dims_at_level(n).map_err(|e| e.to_string())?;
                let _ = writeln!(text, "level {n} ({} vertices):", payloads.len());
                for (p, d) in payloads.iter().zip(dims) {
                    let _ = writeln!(text, "  {p}  dim {d}");
                }
            }
            text
        }
    };
    emit(out, &content)?;
    Ok(Outcome::Pass)
}

// ------------------------------------------------------------------
// verify
// ------------------------------------------------------------------

fn default_levels(target: VerifyTarget) -> usize {
    match target {
        VerifyTarget::MProperties => 200,
        VerifyTarget::Conjecture => 20,
        VerifyTarget::Hyperoct => 15,
        VerifyTarget::IsoGammaB => 8,
        VerifyTarget::DimAn => 12,
        VerifyTarget::Factorizations => 10,
        VerifyTarget::CountsBridge => 5,
    }
}

fn target_name(target: VerifyTarget) -> &'static str {
    match target {
        VerifyTarget::MProperties => "m-properties",
        VerifyTarget::Conjecture => "conjecture",
        VerifyTarget::Hyperoct => "hyperoct",
        VerifyTarget::IsoGammaB => "iso-gamma-b",
        VerifyTarget::DimAn => "dim-an",
        VerifyTarget::Factorizations => "factorizations",
        VerifyTarget::CountsBridge => "counts-bridge",
    }
}

pub fn verify(
    target: VerifyTarget,
    levels: Option<usize>,
    out: Option<&Path>,
    resume: Option<&Path>,
) -> CliResult<Outcome> {
    let started = Instant::now();
    let levels = levels.unwrap_or_else(|| default_levels(target));
    if resume.is_some() && !matches!(target, VerifyTarget::Conjecture) {
        return Err("--resume is only supported for the conjecture sweep".into());
    }
    let (checks, data) = match target {
        VerifyTarget::MProperties => verify_m_properties(levels),
        VerifyTarget::Conjecture => verify_conjecture(levels, resume)?,
        VerifyTarget::Hyperoct => verify_hyperoct(levels),
        VerifyTarget::IsoGammaB => verify_iso_gamma_b(levels)?,
        VerifyTarget::DimAn => verify_dim_an(levels),
        VerifyTarget::Factorizations => verify_factorizations(levels)?,
        VerifyTarget::CountsBridge => verify_counts_bridge(levels)?,
    };
    let config = serde_json::json!({
        "target": target_name(target),
        "levels": levels,
        "resume": resume.map(|p| p.display().to_string()),
    });
    let document = report_document("verify", config, started, &checks, data);
    let content = serde_json::to_string_pretty(&document).unwrap() + "\n";
    match out {
        Some(path) => {
            write_atomic(path, &content)?;
            // keep a one-line status on stdout for pipelines
            println!(
                "{}: {}",
                target_name(target),
                if all_hold(&checks) { "pass" } else { "FAIL" }
            );
        }
        None => print!("{content}"),
    }
    Ok(if all_hold(&checks) {
        Outcome::Pass
    } else {
        Outcome::CheckFailed
    })
}

fn verify_m_properties(levels: usize) -> (Vec<CheckReport>, serde_json::Value) {
    let m = MArray::build(levels);
    let checks = m_properties_report(&m);
    (checks, serde_json::Value::Null)
}

fn verify_conjecture(
    levels: usize,
    resume: Option<&Path>,
) -> CliResult<(Vec<CheckReport>, serde_json::Value)> {
    let verify_from = match resume {
        Some(path) if path.exists() => {
            let text =
                fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
            let checkpoint: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| format!("checkpoint: {e}"))?;
            if checkpoint["target"] != "conjecture" {
                return Err("checkpoint file belongs to a different target".into());
            }
            checkpoint["last_verified"].as_u64().unwrap_or(0) as usize
        }
        _ => 0,
    };
    let outcome = conjecture_sweep(levels, verify_from, |n| {
        if let Some(path) = resume {
            let checkpoint = serde_json::json!({ "target": "conjecture", "last_verified": n });
            let _ = write_atomic(path, &(checkpoint.to_string() + "\n"));
        }
    });
    let range = format!("3 <= n <= {levels} (resumed above {verify_from})");
    let mut checks = Vec::new();
    checks.push(match outcome.inequality_violation {
        None => CheckReport::pass("pairwise K-ratio inequalities", &range),
        Some((n, k, l)) => CheckReport::fail(
            "pairwise K-ratio inequalities",
            &range,
            format!("counterexample at n={n}, k={k}, l={l}"),
        ),
    });
    checks.push(match outcome.max_identity_violation {
        None => CheckReport::pass("max ratio attained at (0, n mod 2)", &range),
        Some((n, k, l)) => CheckReport::fail(
            "max ratio attained at (0, n mod 2)",
            &range,
            format!("counterexample at n={n}, k={k}, l={l}"),
        ),
    });
    let data = serde_json::json!({ "comparisons": outcome.comparisons });
    Ok((checks, data))
}

fn verify_hyperoct(levels: usize) -> (Vec<CheckReport>, serde_json::Value) {
    let (a, checks) = hyperoct_report(levels);
    let data = serde_json::json!({
        "a": a.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    });
    (checks, data)
}

fn verify_iso_gamma_b(levels: usize) -> CliResult<(Vec<CheckReport>, serde_json::Value)> {
    let pascalized = build_graph(GraphKind::LambdaPrincipal, levels)
        .pascalize()
        .map_err(|e| e.to_string())?;
    let gamma_b = build_graph(GraphKind::GammaB, levels);
    let report =
        check_isomorphism_gamma_b(&pascalized, &gamma_b, levels).map_err(|e| e.to_string())?;
    let claim = "copy-forgetting map is a graded graph isomorphism onto gamma-b";
    let range = format!("levels 0..={levels}");
    let check = if report.isomorphic {
        CheckReport::pass(claim, range)
    } else {
        CheckReport::fail(claim, range, report.mismatch.unwrap_or_default())
    };
    Ok((vec![check], serde_json::Value::Null))
}

fn verify_dim_an(levels: usize) -> (Vec<CheckReport>, serde_json::Value) {
    let theta = build_graph(GraphKind::Theta, levels);
    let witness = (0..=levels).find_map(|n| {
        let closed = dim_a_n(n);
        let summed = theta.sum_dim_squares(n).unwrap();
        (closed != summed).then(|| format!("n={n}: closed form {closed}, sum of squares {summed}"))
    });
    let claim = "closed-form total dimension equals the sum of squared path counts";
    let range = format!("0 <= n <= {levels}");
    let check = match witness {
        None => CheckReport::pass(claim, range),
        Some(w) => CheckReport::fail(claim, range, w),
    };
    (vec![check], serde_json::Value::Null)
}

fn verify_factorizations(levels: usize) -> CliResult<(Vec<CheckReport>, serde_json::Value)> {
    let mut checks = Vec::new();

    let gamma_b = build_graph(GraphKind::GammaB, levels);
    let m = MArray::build(levels);
    let mut witness = None;
    'outer: for n in 0..=levels {
        for payload in gamma_b.level(n).map_err(|e| e.to_string())? {
            let d = payload.as_single().expect("gamma-b payloads are single");
            let expected = m.get(n, d.size() as usize) * d.dim();
            let actual = gamma_b
                .dim_root(&Vertex::new(n, payload.clone()))
                .map_err(|e| e.to_string())?;
            if expected != actual {
                witness = Some(format!("vertex {n}:{payload}"));
                break 'outer;
            }
        }
    }
    checks.push(match witness {
        None => CheckReport::pass(
            "dim(gamma-b) = M(n,|d|)·dim(d)",
            format!("all vertices, n <= {levels}"),
        ),
        Some(w) => CheckReport::fail(
            "dim(gamma-b) = M(n,|d|)·dim(d)",
            format!("all vertices, n <= {levels}"),
            w,
        ),
    });

    let p_theta = build_graph(GraphKind::Theta, levels)
        .pascalize()
        .map_err(|e| e.to_string())?;
    let karr = KArray::build(levels);
    let mut witness = None;
    'outer: for n in 0..=levels {
        for payload in p_theta.level(n).map_err(|e| e.to_string())? {
            let (lambda, mu) = payload.as_pair().expect("theta payloads are pairs");
            let expected = karr.get(n, lambda.size(), mu.size()) * lambda.dim() * mu.dim();
            let actual = p_theta
                .dim_root(&Vertex::new(n, payload.clone()))
                .map_err(|e| e.to_string())?;
            if expected != actual {
                witness = Some(format!("vertex {n}:{payload}"));
                break 'outer;
            }
        }
    }
    checks.push(match witness {
        None => CheckReport::pass(
            "dim(pascalized-theta) = K(n,k,l)·dim·dim",
            format!("all vertices, n <= {levels}"),
        ),
        Some(w) => CheckReport::fail(
            "dim(pascalized-theta) = K(n,k,l)·dim·dim",
            format!("all vertices, n <= {levels}"),
            w,
        ),
    });

    Ok((checks, serde_json::Value::Null))
}

fn verify_counts_bridge(levels: usize) -> CliResult<(Vec<CheckReport>, serde_json::Value)> {
    if levels > 6 {
        return Err("counts-bridge supports levels <= 6 (category enumeration bound)".into());
    }
    let p_young = build_graph(GraphKind::Young, levels)
        .pascalize()
        .map_err(|e| e.to_string())?;
    let gamma_b = build_graph(GraphKind::GammaB, levels);
    let p_theta = build_graph(GraphKind::Theta, levels)
        .pascalize()
        .map_err(|e| e.to_string())?;
    let p_doubled = build_graph(GraphKind::DoubledYoung, 2 * levels)
        .pascalize()
        .map_err(|e| e.to_string())?;

    let mut checks = Vec::new();
    let pairs: [(&str, Category, &BranchingGraph, bool); 4] = [
        (
            "pascalized-young vs category O",
            Category::O,
            &p_young,
            false,
        ),
        ("gamma-b vs category B", Category::B, &gamma_b, false),
        (
            "pascalized-theta vs category H",
            Category::H,
            &p_theta,
            false,
        ),
        // the doubled graph advances half an algebra step per level
        (
            "pascalized-doubled-young vs category S",
            Category::S,
            &p_doubled,
            true,
        ),
    ];
    for (claim, category, graph, doubled) in pairs {
        let mut witness = None;
        for n in 0..=levels {
            let count = algebra::enumerate_category(category, n)
                .map_err(|e| e.to_string())?
                .len();
            let level = if doubled { 2 * n } else { n };
            let sum = graph.sum_dim_squares(level).map_err(|e| e.to_string())?;
            if sum.to_string() != count.to_string() {
                witness = Some(format!(
                    "n={n}: sum of squares {sum}, diagram count {count}"
                ));
                break;
            }
        }
        checks.push(match witness {
            None => CheckReport::pass(claim, format!("0 <= n <= {levels}")),
            Some(w) => CheckReport::fail(claim, format!("0 <= n <= {levels}"), w),
        });
    }
    Ok((checks, serde_json::Value::Null))
}

// ------------------------------------------------------------------
// dims
// ------------------------------------------------------------------

pub fn dims(kind: &str, levels: usize, format: Format, out: Option<&Path>) -> CliResult<Outcome> {
    let table = arrays::parse_table(kind).map_err(|e| e.to_string())?;
    let content = match (table, format) {
        (Table::M, Format::Csv | Format::Text) => MArray::build(levels).to_csv(),
        (Table::K, Format::Csv | Format::Text) => KArray::build(levels).to_csv(),
        (Table::M, Format::Json) => {
            let m = MArray::build(levels);
            let rows: Vec<serde_json::Value> = (0..=levels)
                .map(|n| {
                    serde_json::json!((0..=n).map(|l| m.get(n, l).to_string()).collect::<Vec<_>>())
                })
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({ "table": "m", "rows": rows }))
                .unwrap()
                + "\n"
        }
        (Table::K, Format::Json) => {
            let k = KArray::build(levels);
            let entries: Vec<serde_json::Value> = (0..=levels)
                .flat_map(|n| {
                    k.level(n)
                        .iter()
                        .map(move |((kk, ll), v)| serde_json::json!([n, kk, ll, v.to_string()]))
                        .collect::<Vec<_>>()
                })
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({ "table": "k", "entries": entries }))
                .unwrap()
                + "\n"
        }
        (_, Format::Dot) => return Err("dot output makes no sense for tables".into()),
    };
    emit(out, &content)?;
    Ok(Outcome::Pass)
}

// ------------------------------------------------------------------
// mul / trace / enumerate-category
// ------------------------------------------------------------------

fn read_element(path: &Path) -> CliResult<AlgebraElement> {
    let text = fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    AlgebraElement::from_json(&value).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn mul(
    x_path: &Path,
    y_path: &Path,
    delta: Option<&str>,
    format: Format,
    out: Option<&Path>,
) -> CliResult<Outcome> {
    let x = read_element(x_path)?;
    let y = read_element(y_path)?;
    let product = x.mul(&y).map_err(|e| e.to_string())?;
    let delta_value = delta
        .map(|s| parse_ratio(s).map_err(|e| e.to_string()))
        .transpose()?;
    let content = match format {
        Format::Json => {
            let mut doc = serde_json::json!({
                "k": product.k(),
                "terms": product.to_json(),
            });
            if let Some(d) = &delta_value {
                let evaluated: Vec<serde_json::Value> = product
                    .terms()
                    .map(|(diagram, coeff)| {
                        serde_json::json!({
                            "diagram": diagram.to_json(),
                            "value": format_ratio(&coeff.eval(d)),
                        })
                    })
                    .collect();
                doc["evaluated_at_delta"] = serde_json::json!({
                    "delta": format_ratio(d),
                    "terms": evaluated,
                });
            }
            serde_json::to_string_pretty(&doc).unwrap() + "\n"
        }
        _ => {
            let mut text = String::new();
            if product.is_zero() {
                text.push_str("0\n");
            }
            for (diagram, coeff) in product.terms() {
                match &delta_value {
                    Some(d) => {
                        let _ = writeln!(
                            text,
                            "({})  {}   [= {} at δ={}]",
                            coeff,
                            diagram,
                            format_ratio(&coeff.eval(d)),
                            format_ratio(d)
                        );
                    }
                    None => {
                        let _ = writeln!(text, "({coeff})  {diagram}");
                    }
                }
            }
            text
        }
    };
    emit(out, &content)?;
    Ok(Outcome::Pass)
}

pub fn trace(
    x_path: &Path,
    thoma_path: &Path,
    convention: &str,
    delta: Option<&str>,
    format: Format,
    out: Option<&Path>,
) -> CliResult<Outcome> {
    let x = read_element(x_path)?;
    let text = fs::read_to_string(thoma_path)
        .map_err(|e| format!("reading {}: {e}", thoma_path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", thoma_path.display()))?;
    let parameter = ThomaParameter::from_json(&value).map_err(|e| e.to_string())?;
    let convention = TraceConvention::parse(convention).map_err(|e| e.to_string())?;
    let delta_value: Option<BigRatio> = delta
        .map(|s| parse_ratio(s).map_err(|e| e.to_string()))
        .transpose()?;
    let result = lifted_diagram_trace(&parameter, convention, &x, delta_value.as_ref()).map_err(
        |e| match e {
            Error::DeltaValueRequired => "coefficients depend on δ; pass --delta p/q".to_string(),
            other => other.to_string(),
        },
    )?;
    let content = match format {
        Format::Json => {
            serde_json::to_string_pretty(&serde_json::json!({
                "convention": convention.name(),
                "delta": delta_value.as_ref().map(format_ratio),
                "value": format_ratio(&result),
            }))
            .unwrap()
                + "\n"
        }
        _ => format!("{}\n", format_ratio(&result)),
    };
    emit(out, &content)?;
    Ok(Outcome::Pass)
}

pub fn enumerate_category(
    category: &str,
    levels: usize,
    format: Format,
    out: Option<&Path>,
) -> CliResult<Outcome> {
    let category = Category::parse(category).map_err(|e| e.to_string())?;
    let diagrams = algebra::enumerate_category(category, levels).map_err(|e| e.to_string())?;
    let content = match format {
        Format::Json => {
            serde_json::to_string_pretty(&serde_json::json!({
                "category": category.name(),
                "size": levels,
                "count": diagrams.len(),
                "diagrams": diagrams.iter().map(|d| d.to_json()).collect::<Vec<_>>(),
            }))
            .unwrap()
                + "\n"
        }
        _ => {
            let mut text = format!(
                "category {} at size {}: {} diagrams\n",
                category.name(),
                levels,
                diagrams.len()
            );
            for d in &diagrams {
                let _ = writeln!(text, "{d}");
            }
            text
        }
    };
    emit(out, &content)?;
    Ok(Outcome::Pass)
}
