mod problem;

use clap::{Args, Parser, Subcommand};
use fduality::f_process::{
    canonical_projective_framing, canonical_projective_framing_with_sizes, f_dual_with_cap, is_calibrated,
    projective_label_order, weak_projective_framing, FDualData, PartitionedFraming,
};
use fduality::{hodge, mirror, report};
use problem::{columns_to_rows, load, one_based, PolytopeFile, ProblemFile};
use serde::Serialize;
use serde_json::Value;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fdual", version, about = "Partitioned f-duality for framed toric varieties")]
struct Cli {
    #[command(flatten)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(multiple = false)]
struct Format {
    /// JSON output (default).
    #[arg(long, global = true)]
    json: bool,
    /// Markdown tables.
    #[arg(long, global = true)]
    markdown: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Dual fan matrix and dual framing.
    Dual { file: PathBuf },
    /// Whether dualizing twice returns the framing.
    Calibrate { file: PathBuf },
    /// Mirror Cox polynomials.
    Mirror { file: PathBuf },
    /// Landau-Ginzburg model and Givental parameters.
    Lg { file: PathBuf },
    /// Hodge numbers of a complete intersection in projective space.
    Hodge { file: PathBuf },
    /// Stringy data of the resolved dual of a degree d hypersurface.
    Stringy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        h_max: Option<usize>,
    },
    /// Lattice points: EXPR is l(P), l*(P), l(kP) or l*(kP).
    Count { file: PathBuf, expr: String },
    /// Problem file of the canonical framing of P^n.
    Projective {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<i64>,
        #[arg(long, value_delimiter = ',', conflicts_with = "weak")]
        sizes: Option<Vec<usize>>,
        /// Weak framing for degrees adding up to at most n.
        #[arg(long)]
        weak: bool,
    },
    /// A worked example with its checks.
    Report {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(report::REPORT_IDS))]
        id: String,
    },
}

enum Failure {
    /// Exit 2.
    Input(String),
    /// Exit 1.
    Compute(String),
}

impl From<fduality::error::Error> for Failure {
    fn from(e: fduality::error::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type Out = Result<(Value, Option<String>), Failure>;

fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

#[derive(Serialize)]
struct DualOut {
    name: String,
    case: String,
    h0: u32,
    /// Rows of the dual fan matrix.
    fan_matrix: Vec<Vec<i64>>,
    b: Vec<i64>,
    b_k: Vec<Vec<i64>>,
    j_parts: Vec<Vec<usize>>,
}

fn framing(file: &Path) -> Result<(ProblemFile, PartitionedFraming), Failure> {
    let p: ProblemFile = load(file).map_err(Failure::Input)?;
    let pf = p.to_framing().map_err(|e| Failure::Input(format!("{}: {e}", p.name)))?;
    Ok((p, pf))
}

/// Columns in (part, vertex label) order on `P^n`, lexicographic otherwise.
fn dual(p: &ProblemFile, pf: &PartitionedFraming) -> Result<FDualData, Failure> {
    let cap = p.h_cap.unwrap_or_else(fduality::polytope::hcap);
    let d = f_dual_with_cap(pf, cap)?;
    if let Some(want) = p.expect_case {
        if d.case != want {
            return Err(Failure::Compute(format!("expect_case: expected {want}, found {}", d.case)));
        }
    }
    Ok(match projective_label_order(pf, &d) {
        Some(perm) => d.permuted(&perm),
        None => d,
    })
}

fn cmd_dual(file: &Path) -> Out {
    let (p, pf) = framing(file)?;
    let d = dual(&p, &pf)?;
    let out = DualOut {
        name: p.name,
        case: d.case.to_string(),
        h0: d.h0,
        fan_matrix: columns_to_rows(&d.dual_fan_matrix),
        b: d.b,
        b_k: d.b_k,
        j_parts: one_based(&d.j_parts),
    };
    Ok((json(&out), None))
}

fn cmd_calibrate(file: &Path) -> Out {
    let (p, pf) = framing(file)?;
    let c = is_calibrated(&pf)?;
    let permutation = c.permutation.map(|v| v.iter().map(|i| i + 1).collect::<Vec<_>>());
    Ok((serde_json::json!({ "name": p.name, "calibrated": c.calibrated, "permutation": permutation }), None))
}

fn cmd_mirror(file: &Path) -> Out {
    let (p, pf) = framing(file)?;
    let d = dual(&p, &pf)?;
    let polys = mirror::mirror_polynomials(&pf.v, &pf.partition, &d)?;
    let list: Vec<Value> = polys
        .iter()
        .map(|f| serde_json::json!({ "vars": f.num_vars, "monomials": f.monomials, "coeffs": f.coeffs, "text": f.render() }))
        .collect();
    Ok((serde_json::json!({ "name": p.name, "case": d.case, "polynomials": list }), None))
}

fn cmd_lg(file: &Path) -> Out {
    let (p, pf) = framing(file)?;
    let d = dual(&p, &pf)?;
    let polys = mirror::mirror_polynomials(&pf.v, &pf.partition, &d)?;
    let lg = mirror::lg_model(&polys, &d.b_k)?;
    let qq = lg.q_product();
    let mut v = json(&lg);
    v["name"] = json(&p.name);
    v["q_product"] = json(&qq);
    Ok((v, None))
}

fn cmd_hodge(file: &Path) -> Out {
    let (_, pf) = framing(file)?;
    Ok((json(&hodge::hodge_projective_ci(&pf)?), None))
}

fn parse_count(expr: &str) -> Option<(bool, i64)> {
    let e: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let (interior, rest) = if let Some(r) = e.strip_prefix("l*(") {
        (true, r)
    } else {
        (false, e.strip_prefix("l(")?)
    };
    let body = rest.strip_suffix("P)")?;
    let k = if body.is_empty() { 1 } else { body.parse().ok()? };
    (k >= 1).then_some((interior, k))
}

fn cmd_count(file: &Path, expr: &str) -> Out {
    let (interior, k) =
        parse_count(expr).ok_or_else(|| Failure::Input(format!("bad expression {expr:?}; use l(kP) or l*(kP)")))?;
    let p: PolytopeFile = load(file).map_err(Failure::Input)?;
    let poly = p.to_polytope().map_err(Failure::Input)?.dilate(k, 1)?;
    let value = if interior { poly.count_l_star() } else { poly.count_l() };
    Ok((serde_json::json!({ "expr": expr, "value": value }), None))
}

fn cmd_projective(n: usize, degrees: &[i64], sizes: Option<&[usize]>, weak: bool) -> Out {
    let pf = match sizes {
        _ if weak => weak_projective_framing(n, degrees),
        Some(s) => canonical_projective_framing_with_sizes(n, degrees, s),
        None => canonical_projective_framing(n, degrees),
    }
    .map_err(|e| Failure::Input(e.to_string()))?;
    let tag: Vec<String> = degrees.iter().map(ToString::to_string).collect();
    Ok((json(&ProblemFile::from_framing(&format!("P{n}-degrees-{}", tag.join("-")), &pf)), None))
}

fn cmd_report(id: &str) -> Out {
    let r = report::report(id).map_err(|e| Failure::Input(e.to_string()))?;
    if let Some(c) = r.checks.iter().find(|c| !c.ok) {
        return Err(Failure::Compute(format!(
            "{id}: check {:?} failed: expected {}, found {}",
            c.name,
            c.expected.as_deref().unwrap_or("-"),
            c.found
        )));
    }
    let md = r.markdown();
    Ok((json(&r), Some(md)))
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Two-column table of the top-level fields.
fn markdown(v: &Value) -> String {
    let mut s = String::from("| field | value |\n|---|---|\n");
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                s.push_str(&format!("| {k} | {} |\n", cell(x).replace('|', "\\|")));
            }
        }
        other => s.push_str(&format!("| value | {} |\n", cell(other))),
    }
    s
}

fn run(cli: &Cli) -> Out {
    match &cli.command {
        Command::Dual { file } => cmd_dual(file),
        Command::Calibrate { file } => cmd_calibrate(file),
        Command::Mirror { file } => cmd_mirror(file),
        Command::Lg { file } => cmd_lg(file),
        Command::Hodge { file } => cmd_hodge(file),
        Command::Stringy { n, d, h_max } => Ok((json(&hodge::stringy_data(*n, *d, h_max.unwrap_or(*n))?), None)),
        Command::Count { file, expr } => cmd_count(file, expr),
        Command::Projective { n, degrees, sizes, weak } => cmd_projective(*n, degrees, sizes.as_deref(), *weak),
        Command::Report { id } => cmd_report(id),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((v, md)) => {
            let text = if cli.format.markdown {
                md.unwrap_or_else(|| markdown(&v))
            } else {
                serde_json::to_string_pretty(&v).expect("serializable") + "\n"
            };
            // A closed pipe downstream is not an error here.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("fdual: input error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("fdual: {msg}");
            ExitCode::from(1)
        }
    }
}
