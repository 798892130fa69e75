//! `splice`: command-line front end. Results go to stdout as JSON, logs to
//! stderr. Exit codes: 0 success, 1 domain failure, 2 usage error.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use splice_core::diagram::{DiagramDocument, ValidationReport};
use splice_core::linalg::Rat;
use splice_core::sysfile::parse_rational;
use splice_core::tropfan::Fan;
use splice_core::{
    adapted_triple, check_semigroup_condition, deformation_partial_fan, dual_complex, edge_deformation,
    enrich, hamm_check, homogeneous_degree, initial_system, node_weight_vector, parse_diagram, rounding_fiber_group,
    strict_splice_system, surface_trop_fan, CoefficientSource, EnrichedDiagram, MonoidPresentation, SpliceDiagram,
    SpliceError, SystemDocument, SystemOptions, TriplePolicy,
};

#[derive(Parser)]
#[command(name = "splice", version, about = "Splice diagrams, splice type systems and their tropical fans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural, determinant and semigroup checks with witnesses.
    Validate { path: String },
    /// Linking numbers, degrees, weight vectors and Seifert data.
    Analyze { path: String },
    /// Strict splice type system of a diagram.
    GenSystem {
        path: String,
        #[command(flatten)]
        coeffs: CoeffArgs,
    },
    /// Edge deformation of the diagram's splice type system.
    Deform {
        path: String,
        #[command(flatten)]
        edge: EdgeArgs,
        #[command(flatten)]
        coeffs: CoeffArgs,
        /// Deformation coefficient, as `node:index=value` (index from 1); default 1.
        #[arg(long = "c", value_name = "NODE:I=C")]
        c: Vec<String>,
    },
    /// Tropical fan of the surface or of an edge deformation.
    TropFan {
        path: String,
        #[arg(long, conflicts_with = "deformation", required_unless_present = "deformation")]
        surface: bool,
        #[arg(long)]
        deformation: bool,
        #[command(flatten)]
        edge: OptionalEdgeArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Checks on a system file.
    Check {
        path: String,
        #[arg(long, group = "mode")]
        homogeneity: bool,
        #[arg(long, group = "mode")]
        hamm: bool,
        #[arg(long, group = "mode", requires = "weight")]
        initial: bool,
        /// Comma-separated rational weights, e.g. `15,10,6`.
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
    /// Rank, torsion and components of a rounding fiber.
    RoundFiber {
        #[arg(long)]
        generators: usize,
        /// Rows separated by `;`, entries by `,`, e.g. `2,-2;1,1`.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        relations: String,
    },
}

#[derive(Args)]
struct CoeffArgs {
    /// Vandermonde offset for the default coefficients.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON file mapping node ids to coefficient matrices.
    #[arg(long)]
    coeffs: Option<String>,
}

#[derive(Args)]
struct EdgeArgs {
    /// Internal edge as `a,b`.
    #[arg(long)]
    edge: String,
    #[command(flatten)]
    triple: TripleArgs,
}

#[derive(Args)]
struct OptionalEdgeArgs {
    #[arg(long, required_if_eq("deformation", "true"))]
    edge: Option<String>,
    #[command(flatten)]
    triple: TripleArgs,
}

#[derive(Args)]
struct TripleArgs {
    #[arg(long)]
    ka: Option<u64>,
    #[arg(long)]
    kb: Option<u64>,
    #[arg(long = "D")]
    scale: Option<String>,
    #[arg(long, value_enum)]
    policy: Option<Policy>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Min,
    Explicit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

enum Failure {
    /// Bad flags or flag values.
    Usage(String),
    /// Reported on stdout as JSON.
    Domain(String, String),
}

impl From<SpliceError> for Failure {
    fn from(e: SpliceError) -> Self {
        let debug = format!("{e:?}");
        let kind = debug.split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
        Failure::Domain(kind, e.to_string())
    }
}

/// A payload to print plus whether the command succeeded.
struct Output {
    body: String,
    ok: bool,
}

impl Output {
    fn json(v: &impl serde::Serialize, ok: bool) -> Self {
        Output {
            body: serde_json::to_string_pretty(v).expect("payload serializes"),
            ok,
        }
    }
}

type Outcome = Result<Output, Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Domain("Io".into(), format!("{path}: {e}")))?;
    Ok(text)
}

fn load_diagram(path: &str) -> Result<SpliceDiagram, Failure> {
    Ok(parse_diagram(&read_input(path)?)?)
}

fn rational_value(v: &Value) -> Result<Rat, Failure> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) if n.is_i64() => Ok(Rat::from_integer(BigInt::from(n.as_i64().unwrap()))),
        other => Err(Failure::Domain("Coefficients".into(), format!("not a rational: {other}"))),
    }
}

fn system_options(args: &CoeffArgs) -> Result<SystemOptions, Failure> {
    let coefficients = match &args.coeffs {
        None => CoefficientSource::Vandermonde { offset: args.seed },
        Some(path) => {
            let raw: BTreeMap<String, Vec<Vec<Value>>> = serde_json::from_str(&read_input(path)?)
                .map_err(|e| Failure::Domain("Syntax".into(), format!("{path}: {e}")))?;
            let mut m = BTreeMap::new();
            for (node, rows) in raw {
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(rational_value).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                m.insert(node, rows);
            }
            CoefficientSource::Explicit(m)
        }
    };
    Ok(SystemOptions {
        coefficients,
        ..SystemOptions::default()
    })
}

fn parse_edge(s: &str) -> Result<(String, String), Failure> {
    match s.split_once(',') {
        Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => Ok((a.trim().into(), b.trim().into())),
        _ => Err(Failure::Usage(format!("--edge expects `a,b`, got `{s}`"))),
    }
}

fn enriched(d: &SpliceDiagram, edge: &str, t: &TripleArgs) -> Result<EnrichedDiagram, Failure> {
    let (a, b) = parse_edge(edge)?;
    let explicit = t.ka.is_some() || t.kb.is_some();
    let policy = match (t.policy, explicit) {
        (Some(Policy::Min), true) => return Err(Failure::Usage("--ka/--kb conflict with --policy min".into())),
        (Some(Policy::Explicit), false) => return Err(Failure::Usage("--policy explicit needs --ka and --kb".into())),
        (_, true) => match (t.ka, t.kb) {
            (Some(ka), Some(kb)) => TriplePolicy::Explicit { ka, kb },
            _ => return Err(Failure::Usage("--ka and --kb go together".into())),
        },
        (_, false) => TriplePolicy::MinDenominator,
    };
    let scale = t
        .scale
        .as_deref()
        .map(|s| s.parse::<BigInt>().map_err(|_| Failure::Usage(format!("--D expects an integer, got `{s}`"))))
        .transpose()?;
    let triple = adapted_triple(d, &a, &b, policy, scale)?;
    Ok(enrich(d, &a, &b, &triple)?)
}

fn validate(path: &str) -> Outcome {
    let doc = DiagramDocument::from_json(&read_input(path)?)?;
    let report = ValidationReport::check(&doc);
    let ok = report.all_ok();
    let mut v = serde_json::to_value(&report).expect("report serializes");
    v["valid"] = json!(ok);
    Ok(Output::json(&v, ok))
}

fn analyze(path: &str) -> Outcome {
    let d = load_diagram(path)?;
    let mut nodes = Vec::new();
    for v in d.nodes() {
        let id = d.id(v);
        nodes.push(json!({
            "node": id,
            "degree": d.node_degree(id)?.to_string(),
            "weight": node_weight_vector(&d, id)?,
            "seifert": d.seifert_data(id)?,
        }));
    }
    let ids = d.ids().to_vec();
    let mut linking = Vec::new();
    for u in &ids {
        let row = ids.iter().map(|v| d.linking_number(u, v).map(|x| x.to_string())).collect::<Result<Vec<_>, _>>()?;
        linking.push(row);
    }
    let determinants: Vec<Value> = d
        .internal_edges()
        .into_iter()
        .map(|(u, v, _)| {
            let det = d.edge_determinant(d.id(u), d.id(v)).expect("internal edge");
            json!({"edge": [d.id(u), d.id(v)], "determinant": det.to_string()})
        })
        .collect();
    let out = json!({
        "vertices": ids,
        "leaves": d.leaf_ids(),
        "nodes": nodes,
        "linking": linking,
        "edge_determinants": determinants,
        "semigroup": check_semigroup_condition(&d),
    });
    Ok(Output::json(&out, true))
}

fn gen_system(path: &str, coeffs: &CoeffArgs) -> Outcome {
    let d = load_diagram(path)?;
    let s = strict_splice_system(&d, &system_options(coeffs)?)?;
    Ok(Output::json(&SystemDocument::from_system(&s), true))
}

fn parse_c(specs: &[String]) -> Result<BTreeMap<(String, usize), Rat>, Failure> {
    let mut out = BTreeMap::new();
    for s in specs {
        let bad = || Failure::Usage(format!("--c expects `node:index=value`, got `{s}`"));
        let (key, value) = s.split_once('=').ok_or_else(bad)?;
        let (node, index) = key.rsplit_once(':').ok_or_else(bad)?;
        let index: usize = index.parse().map_err(|_| bad())?;
        let value = parse_rational(value).map_err(|_| bad())?;
        out.insert((node.to_string(), index), value);
    }
    Ok(out)
}

fn deform(path: &str, edge: &EdgeArgs, coeffs: &CoeffArgs, c: &[String]) -> Outcome {
    let d = load_diagram(path)?;
    let c = parse_c(c)?;
    let ed = enriched(&d, &edge.edge, &edge.triple)?;
    let s = strict_splice_system(&d, &system_options(coeffs)?)?;
    let def = edge_deformation(&s, &ed, &c)?;
    Ok(Output::json(&SystemDocument::from_deformed(&def), true))
}

fn section_dot(f: &Fan) -> String {
    let mut out = String::from("graph section {\n");
    for i in 0..f.rays.len() {
        out.push_str(&format!("  \"{}\";\n", f.label(i)));
    }
    for (i, j) in f.two_cones() {
        out.push_str(&format!("  \"{}\" -- \"{}\";\n", f.label(i), f.label(j)));
    }
    out.push_str("}\n");
    out
}

fn trop_fan(path: &str, deformation: bool, edge: &OptionalEdgeArgs, format: Format) -> Outcome {
    let d = load_diagram(path)?;
    if !deformation {
        let f = surface_trop_fan(&d)?;
        return Ok(match format {
            Format::Json => Output { body: f.to_json(), ok: true },
            Format::Dot => Output { body: section_dot(&f), ok: true },
        });
    }
    let e = edge.edge.as_deref().ok_or_else(|| Failure::Usage("--deformation needs --edge".into()))?;
    let ed = enriched(&d, e, &edge.triple)?;
    Ok(match format {
        Format::Json => Output { body: deformation_partial_fan(&ed)?.to_json(), ok: true },
        Format::Dot => Output { body: dual_complex(&ed)?.to_dot(), ok: true },
    })
}

fn parse_weight(s: &str) -> Result<Vec<Rat>, Failure> {
    s.split(',')
        .map(|x| parse_rational(x.trim()).map_err(|_| Failure::Usage(format!("bad weight entry `{x}`"))))
        .collect()
}

fn check(path: &str, hamm: bool, initial: bool, weight: Option<&str>) -> Outcome {
    let doc = SystemDocument::from_json(&read_input(path)?)?;
    if hamm {
        let mut nodes = BTreeMap::new();
        let mut ok = true;
        for n in &doc.nodes {
            let Some(m) = doc.coefficient_matrix(n)? else {
                nodes.insert(n.node.clone(), json!({"passed": null, "failing_columns": null}));
                continue;
            };
            let verdict = if m.is_empty() {
                json!({"passed": true, "failing_columns": null})
            } else {
                let v = hamm_check(&m)?;
                ok &= v.passed;
                json!({"passed": v.passed, "failing_columns": v.failing_columns})
            };
            nodes.insert(n.node.clone(), verdict);
        }
        return Ok(Output::json(&json!({"passed": ok, "nodes": nodes}), ok));
    }
    if initial {
        let w = parse_weight(weight.expect("clap requires --weight"))?;
        let eqs = doc.all_equations()?;
        let r = initial_system(eqs.iter().map(|(_, _, f)| f), &w)?;
        let forms: Vec<Value> = eqs
            .iter()
            .zip(&r.forms)
            .map(|((node, i, _), f)| json!({"node": node, "index": i, "form": f.format_with(&doc.variables), "terms": f.len()}))
            .collect();
        let weight: Vec<String> = w.iter().map(ToString::to_string).collect();
        let out = json!({"weight": weight, "forms": forms, "generator_monomial_free": r.generator_monomial_free});
        return Ok(Output::json(&out, true));
    }
    // homogeneity is the default check
    let mut degrees = BTreeMap::new();
    let mut failures = Vec::new();
    for n in &doc.nodes {
        let expected = doc.degree(n);
        for (i, f) in doc.polynomials(n)?.iter().enumerate() {
            match homogeneous_degree(f, &n.weight)? {
                Some(deg) if deg == expected => {}
                got => failures.push(json!({
                    "node": n.node,
                    "index": i + 1,
                    "degree": got.map(|g| g.to_string()),
                })),
            }
        }
        degrees.insert(n.node.clone(), expected.to_string());
    }
    let ok = failures.is_empty();
    Ok(Output::json(&json!({"homogeneous": ok, "degrees": degrees, "failures": failures}), ok))
}

fn parse_relations(s: &str, g: usize) -> Result<Vec<Vec<BigInt>>, Failure> {
    s.split(';')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|row| {
            let entries = row
                .split(',')
                .map(|x| x.trim().parse::<BigInt>().map_err(|_| Failure::Usage(format!("bad relation entry `{x}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if entries.len() != g {
                return Err(Failure::Usage(format!("relation `{row}` has {} entries, expected {g}", entries.len())));
            }
            Ok(entries)
        })
        .collect()
}

fn round_fiber(generators: usize, relations: &str) -> Outcome {
    let p = MonoidPresentation {
        generators,
        relations: parse_relations(relations, generators)?,
    };
    let r = rounding_fiber_group(&p)?;
    let ok = r.verified;
    Ok(Output::json(&r, ok))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { path } => validate(&path),
        Command::Analyze { path } => analyze(&path),
        Command::GenSystem { path, coeffs } => gen_system(&path, &coeffs),
        Command::Deform { path, edge, coeffs, c } => deform(&path, &edge, &coeffs, &c),
        Command::TropFan {
            path,
            deformation,
            edge,
            format,
            ..
        } => trop_fan(&path, deformation, &edge, format),
        Command::Check {
            path,
            hamm,
            initial,
            weight,
            ..
        } => check(&path, hamm, initial, weight.as_deref()),
        Command::RoundFiber { generators, relations } => round_fiber(generators, &relations),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(body: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", body.trim_end());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            emit(&out.body);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(kind, message)) => {
            eprintln!("error: {message}");
            let body = json!({"error": {"kind": kind, "message": message}});
            emit(&serde_json::to_string_pretty(&body).expect("error serializes"));
            ExitCode::from(1)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("usage error: {message}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_rows() {
        assert!(matches!(parse_relations("", 2), Ok(r) if r.is_empty()));
        let r = parse_relations("2,-2; 1,1", 2).ok().unwrap();
        assert_eq!(r, vec![vec![BigInt::from(2), BigInt::from(-2)], vec![BigInt::from(1), BigInt::from(1)]]);
        assert!(parse_relations("1", 2).is_err());
        assert!(parse_relations("1,x", 2).is_err());
    }

    #[test]
    fn deformation_coefficients() {
        let c = parse_c(&["a:1=-1".into(), "b:2=3/2".into()]).ok().unwrap();
        assert_eq!(c[&("a".to_string(), 1)], Rat::from_integer(BigInt::from(-1)));
        assert!(parse_c(&["a1=-1".into()]).is_err());
        assert!(parse_c(&["a:x=1".into()]).is_err());
    }

    #[test]
    fn edges() {
        assert_eq!(parse_edge("a, b").ok(), Some(("a".into(), "b".into())));
        assert!(parse_edge("a").is_err());
        assert!(parse_edge(",b").is_err());
    }
}
