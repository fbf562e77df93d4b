//! `toric-brauer`: Brauer groups and related invariants of toric varieties
//! from fan files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use toric_brauer::brauer::{brauer_group, generator_cocycles, MonomialCocycle};
use toric_brauer::cech::{cech_complex_window, SheafKind};
use toric_brauer::fan::{Fan, FanValidation};
use toric_brauer::invariants::invariants;
use toric_brauer::io::{parse_fan_file, write_fan, FanFile};
use toric_brauer::resolution::resolve;

const EXIT_INVALID_FAN: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_WRITE: u8 = 4;

#[derive(Parser)]
#[command(name = "toric-brauer", version, about = "Brauer groups of toric varieties from their fans")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Include the elapsed time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fan axioms.
    Validate { path: PathBuf },
    /// Pic, Cl, ranks of SF and U, singular cones and ν.
    Invariants { path: PathBuf },
    /// The Brauer group H²(X_ét, G_m).
    Brauer {
        path: PathBuf,
        /// Emit a monomial 2-cocycle for each generator of the split part.
        #[arg(long)]
        emit_cocycles: bool,
    },
    /// Nonsingular subdivision by stellar subdivisions.
    Resolve {
        path: PathBuf,
        /// Where to write the resolved fan.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Čech cohomology of SF, U or W on the finest cover.
    Cech {
        path: PathBuf,
        /// One of sf, u, w.
        #[arg(long)]
        sheaf: SheafKind,
        #[arg(long)]
        degree: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Invariants { .. } => "invariants",
            Command::Brauer { .. } => "brauer",
            Command::Resolve { .. } => "resolve",
            Command::Cech { .. } => "cech",
        }
    }

    fn path(&self) -> &Path {
        match self {
            Command::Validate { path }
            | Command::Invariants { path }
            | Command::Brauer { path, .. }
            | Command::Resolve { path, .. }
            | Command::Cech { path, .. } => path,
        }
    }
}

/// A failure that ends the run with a diagnostic on stderr.
struct Failure {
    code: u8,
    message: String,
}

fn int(n: &BigInt) -> Value {
    // Exact integers of any size (arbitrary-precision numbers).
    serde_json::from_str(&n.to_string()).expect("integers are JSON numbers")
}

fn vector(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

fn vectors(vs: &[Vec<BigInt>]) -> Value {
    Value::Array(vs.iter().map(|v| vector(v)).collect())
}

fn digest(f: &Fan) -> Value {
    json!({
        "rank": f.ambient_rank(),
        "rays": f.rays().len(),
        "cones": f.num_cones(),
        "maximal": f.maximal().len(),
    })
}

fn read(path: &Path) -> Result<FanFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure { code: EXIT_PARSE, message: format!("{}: {e}", path.display()) })?;
    parse_fan_file(&text).map_err(|e| Failure { code: EXIT_PARSE, message: format!("{}: {e}", path.display()) })
}

fn load(path: &Path) -> Result<Fan, Failure> {
    read(path)?
        .to_fan()
        .map_err(|e| Failure { code: EXIT_INVALID_FAN, message: format!("{}: invalid fan: {e}", path.display()) })
}

fn axioms(v: &FanValidation) -> Value {
    let pairs = |ps: &[(usize, usize)]| Value::Array(ps.iter().map(|&(i, j)| json!([i, j])).collect());
    let check = |ok: bool, detail: (&str, Value)| {
        let mut m = Map::new();
        m.insert("pass".into(), Value::Bool(ok));
        if !ok {
            m.insert(detail.0.into(), detail.1);
        }
        Value::Object(m)
    };
    let structural: Vec<Value> = v.structural.iter().map(|e| Value::String(e.to_string())).collect();
    json!({
        "well_formed": check(v.structural.is_empty(), ("errors", Value::Array(structural))),
        "strongly_convex": check(v.not_strongly_convex.is_empty(), ("cones", json!(v.not_strongly_convex))),
        "distinct_cones": check(v.duplicates.is_empty(), ("pairs", pairs(&v.duplicates))),
        "intersection_is_face": check(v.intersection_not_face.is_empty(), ("pairs", pairs(&v.intersection_not_face))),
    })
}

fn cmd_validate(path: &Path) -> Result<(Option<Value>, Value, bool), Failure> {
    let file = read(path)?;
    let v = file.validate();
    let valid = v.is_valid();
    let fan = if valid { file.to_fan().ok().map(|f| digest(&f)) } else { None };
    Ok((fan, json!({ "valid": valid, "axioms": axioms(&v) }), valid))
}

fn cmd_invariants(f: &Fan) -> Value {
    let rep = invariants(f);
    let singular: Vec<Value> = rep
        .singular_cone_ids
        .iter()
        .map(|&id| {
            let c = f.cone(id);
            let mut m = Map::new();
            m.insert("rays".into(), vectors(c.rays()));
            if let Ok(mult) = c.multiplicity() {
                m.insert("multiplicity".into(), int(&mult));
            }
            Value::Object(m)
        })
        .collect();
    json!({
        "pic": rep.pic.to_string(),
        "cl": rep.cl.to_string(),
        "sf_rank": rep.sf_rank,
        "u_rank": rep.u_rank,
        "nu": vector(&rep.nu),
        "singular_cones": singular,
    })
}

fn cocycle_json(k: usize, c: &MonomialCocycle) -> Value {
    let lifts: Vec<Value> =
        c.lifts.iter().map(|(&(i, j), m)| json!({ "pair": [i, j], "m": vector(m) })).collect();
    let exponents: Vec<Value> =
        c.exponents.iter().map(|(&(i, j, l), m)| json!({ "triple": [i, j, l], "m": vector(m) })).collect();
    json!({ "generator": k, "lifts": lifts, "exponents": exponents })
}

fn cmd_brauer(f: &Fan, emit_cocycles: bool) -> Value {
    let rep = brauer_group(f);
    let mut out = Map::new();
    out.insert("split_part".into(), Value::String(rep.split_part.to_string()));
    out.insert("nu".into(), vector(&rep.nu));
    out.insert("m_basis".into(), vectors(&rep.m_basis));
    out.insert("smooth_part".into(), Value::Array(rep.symbols.iter().map(|s| Value::String(s.to_string())).collect()));
    out.insert("total".into(), Value::String(rep.total()));
    out.insert("resolution_agrees".into(), Value::Bool(rep.resolution_agrees));
    if emit_cocycles {
        let max: Vec<Value> = f.maximal().iter().map(|&c| vectors(f.cone(c).rays())).collect();
        out.insert("maximal_cones".into(), Value::Array(max));
        let cocycles = generator_cocycles(f);
        out.insert(
            "cocycles".into(),
            Value::Array(cocycles.iter().enumerate().map(|(k, c)| cocycle_json(k, c)).collect()),
        );
    }
    Value::Object(out)
}

fn cmd_resolve(f: &Fan, output: Option<&Path>) -> Result<Value, Failure> {
    let (g, cert) = resolve(f);
    let text = write_fan(&g);
    if let Some(p) = output {
        std::fs::write(p, &text)
            .map_err(|e| Failure { code: EXIT_WRITE, message: format!("{}: {e}", p.display()) })?;
    }
    let mut out = Map::new();
    out.insert(
        "certificate".into(),
        json!({
            "valid": cert.is_valid(),
            "refinement": cert.refinement_ok,
            "support_equal": cert.support_equal,
            "smooth": cert.all_smooth,
            "support_lattice_preserved": cert.support_lattice_preserved,
        }),
    );
    out.insert("subdivision_points".into(), vectors(&cert.points));
    out.insert("added_rays".into(), vectors(&cert.added_rays()));
    out.insert("resolved_fan".into(), digest(&g));
    if let Some(p) = output {
        out.insert("output".into(), Value::String(p.display().to_string()));
    }
    Ok(Value::Object(out))
}

fn cmd_cech(f: &Fan, sheaf: SheafKind, p: usize) -> Value {
    let n = f.maximal().len();
    let mut ranks = Map::new();
    let group = if p >= n {
        // No p-cochains: the group is zero.
        ranks.insert(format!("C^{p}"), json!(0));
        "0".to_string()
    } else {
        let cx = cech_complex_window(f, sheaf, p.saturating_sub(1), p + 1);
        for (k, d) in cx.dims().iter().enumerate() {
            ranks.insert(format!("C^{}", cx.lo + k), json!(d));
        }
        cx.group(p).to_string()
    };
    json!({ "sheaf": sheaf.to_string(), "degree": p, "group": group, "cochain_ranks": ranks })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn is_scalar_like(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(is_scalar_like),
        Value::Object(_) => false,
        _ => true,
    }
}

/// Indented `key: value` lines; arrays of scalars stay on one line.
fn render(out: &mut String, indent: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, x) in m {
                render(out, indent + 1, k, x);
            }
        }
        Value::Array(items) if !is_scalar_like(v) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, x) in items.iter().enumerate() {
                render(out, indent + 1, &format!("[{i}]"), x);
            }
        }
        Value::Array(items) if items.iter().all(|x| matches!(x, Value::String(_))) && !items.is_empty() => {
            let _ = writeln!(out, "{pad}{key}:");
            for x in items {
                let _ = writeln!(out, "{pad}  - {}", scalar(x));
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{key}: {}", scalar(other));
        }
    }
}

fn text_report(report: &Map<String, Value>) -> String {
    let mut out = String::new();
    for (k, v) in report {
        match (k.as_str(), v) {
            ("fan", Value::Object(d)) => {
                let _ = writeln!(
                    out,
                    "fan: rank {}, {} rays, {} cones, {} maximal",
                    d["rank"], d["rays"], d["cones"], d["maximal"]
                );
            }
            ("result", Value::Object(m)) => {
                for (rk, rv) in m {
                    render(&mut out, 0, rk, rv);
                }
            }
            ("timing_ms", t) => {
                let _ = writeln!(out, "timing: {t} ms");
            }
            _ => render(&mut out, 0, k, v),
        }
    }
    out
}

fn run(cli: &Cli) -> Result<(Value, bool), Failure> {
    let start = Instant::now();
    let path = cli.command.path();
    let (fan, result, ok) = match &cli.command {
        Command::Validate { path } => cmd_validate(path)?,
        Command::Invariants { path } => {
            let f = load(path)?;
            (Some(digest(&f)), cmd_invariants(&f), true)
        }
        Command::Brauer { path, emit_cocycles } => {
            let f = load(path)?;
            (Some(digest(&f)), cmd_brauer(&f, *emit_cocycles), true)
        }
        Command::Resolve { path, output } => {
            let f = load(path)?;
            (Some(digest(&f)), cmd_resolve(&f, output.as_deref())?, true)
        }
        Command::Cech { path, sheaf, degree } => {
            let f = load(path)?;
            (Some(digest(&f)), cmd_cech(&f, *sheaf, *degree), true)
        }
    };
    let mut report = Map::new();
    report.insert("command".into(), Value::String(cli.command.name().into()));
    report.insert("input".into(), Value::String(path.display().to_string()));
    report.insert("fan".into(), fan.unwrap_or(Value::Null));
    report.insert("result".into(), result);
    if cli.timing {
        report.insert("timing_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    Ok((Value::Object(report), ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, ok)) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
                Format::Text => text_report(report.as_object().expect("reports are objects")),
            };
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_INVALID_FAN)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
