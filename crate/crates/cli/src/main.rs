use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use qccodes::asymptotics::count_report;
use qccodes::bounds::{best_bounds, BoundOptions};
use qccodes::convolutional::ConvolutionalCode;
use qccodes::crt::{cubic_construction, CrtContext};
use qccodes::cyclotomic::{factor_xm1, Reciprocity};
use qccodes::duality::{build_qccd, is_lcd, is_self_dual, Verdict};
use qccodes::io;
use qccodes::linear::DEFAULT_ENUM_BUDGET;
use qccodes::selftest;
use qccodes::{Error, LinearCode, QcCode};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "qcc", version, about = "Quasi-cyclic code analysis: structure, duality and distance bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor x^m - 1 over GF(q) into irreducibles, grouped by reciprocity.
    Factor {
        #[arg(short)]
        q: u64,
        #[arg(short)]
        m: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print the constituents of a QC code.
    Decompose {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the reduced Groebner generator matrix of a QC code.
    Groebner {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Lower bounds on the minimum distance of a QC code.
    Bounds {
        #[arg(long)]
        file: PathBuf,
        /// Also compute the exact distance by enumeration.
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long)]
        json: bool,
    },
    /// Exact minimum distance of a QC code file or a generator matrix file.
    Distance {
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        file: Option<PathBuf>,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long)]
        json: bool,
    },
    /// Test a QC code for self-duality or LCD; exits 1 when the property fails.
    Check {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, conflicts_with = "lcd", required_unless_present = "lcd")]
        self_dual: bool,
        #[arg(long)]
        lcd: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build a QC code and write it in the QC file format.
    Construct {
        #[command(subcommand)]
        how: Construction,
        /// Write here instead of standard output.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Free-distance lower bound from a length-m projection, next to a capped search.
    ConvBound {
        #[arg(long)]
        gen: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 6)]
        cap: usize,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long)]
        json: bool,
    },
    /// Mass formulas and existence distances for self-dual codes of length 3*ell (JSON).
    Asymptotics {
        #[arg(long)]
        ell: u64,
        /// Include the Type II counts and distance; needs 8 | ell.
        #[arg(long)]
        type2: bool,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// Length-3l code from a binary C1 and a GF(4) C2, both given as matrix files.
    Cubic {
        #[arg(long)]
        c1: PathBuf,
        #[arg(long)]
        c2: PathBuf,
    },
    /// LCD code from constituent parts given as INDEX=MATRIX_FILE.
    Lcd {
        #[arg(short)]
        q: u64,
        #[arg(short)]
        m: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long = "part", value_parser = parse_part)]
        parts: Vec<(usize, PathBuf)>,
    },
    /// The QC code obtained by reducing a convolutional encoder modulo x^m - 1.
    Project {
        #[arg(long)]
        gen: PathBuf,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Args)]
struct BudgetArg {
    /// Enumeration budget; defaults to QC_BUDGET, then to 2^24.
    #[arg(long)]
    budget: Option<u64>,
}

impl BudgetArg {
    fn resolve(&self) -> Result<u64> {
        if let Some(b) = self.budget {
            return Ok(b);
        }
        match std::env::var("QC_BUDGET") {
            Ok(v) => v.trim().parse().with_context(|| format!("QC_BUDGET must be a nonnegative integer, got '{v}'")),
            Err(_) => Ok(DEFAULT_ENUM_BUDGET),
        }
    }
}

fn parse_part(s: &str) -> std::result::Result<(usize, PathBuf), String> {
    let (i, path) = s.split_once('=').ok_or("expected INDEX=FILE")?;
    let i = i.trim().parse().map_err(|_| format!("bad constituent index '{i}'"))?;
    Ok((i, PathBuf::from(path)))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_qc(path: &Path) -> Result<QcCode> {
    io::parse_qc(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_matrix_code(path: &Path) -> Result<LinearCode> {
    let m = io::parse_matrix(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    Ok(LinearCode::from_matrix(m))
}

fn load_conv(path: &Path) -> Result<ConvolutionalCode> {
    io::parse_conv(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn factor(q: u64, m: usize, as_json: bool) -> Result<()> {
    let fact = factor_xm1(q, m)?;
    let rec = |i: usize| match fact.reciprocity(i) {
        Reciprocity::SelfReciprocal => json!("self"),
        Reciprocity::Paired(j) => json!(j),
    };
    let n = fact.self_reciprocal().len();
    let p = fact.pairs().len();
    if as_json {
        let factors: Vec<_> = fact
            .factors()
            .iter()
            .enumerate()
            .map(|(i, f)| json!({"poly": f.poly.to_string(), "leader": f.leader, "coset": f.coset, "degree": f.degree(), "reciprocal": rec(i)}))
            .collect();
        return print_json(&json!({"q": q, "m": m, "factors": factors, "self_reciprocal": n, "pairs": p}));
    }
    println!("x^{m} - 1 over GF({q}): {} factors, {n} self-reciprocal, {p} reciprocal pairs", fact.len());
    let polys: Vec<String> = fact.factors().iter().map(|f| f.poly.to_string()).collect();
    let cosets: Vec<String> = fact
        .factors()
        .iter()
        .map(|f| format!("{{{}}}", f.coset.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    let width = polys.iter().map(String::len).max().unwrap_or(0);
    let cwidth = cosets.iter().map(String::len).max().unwrap_or(0);
    for (i, (f, (poly, coset))) in fact.factors().iter().zip(polys.iter().zip(&cosets)).enumerate() {
        let kind = match fact.reciprocity(i) {
            Reciprocity::SelfReciprocal => "self-reciprocal".to_string(),
            Reciprocity::Paired(j) => format!("paired with f{j}"),
        };
        println!("  f{i:<3} {poly:<width$}  u={:<4} coset={coset:<cwidth$}  {kind}", f.leader);
    }
    Ok(())
}

fn decompose(path: &Path, as_json: bool) -> Result<()> {
    let code = load_qc(path)?;
    let ctx = CrtContext::for_code(&code)?;
    let parts = ctx.decompose(&code)?;
    let blocks: Vec<_> = parts
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let f = c.field();
            let rows: Vec<Vec<String>> = c.basis_rows().iter().map(|r| r.iter().map(|&a| f.format(a)).collect()).collect();
            (format!("factor={} u={} field={}", ctx.factor(i), ctx.leader(i), ctx.field(i)), i, c.dim(), rows)
        })
        .collect();
    if as_json {
        let out: Vec<_> = blocks
            .iter()
            .map(|(_, i, dim, rows)| json!({"factor": ctx.factor(*i).to_string(), "u": ctx.leader(*i), "field": ctx.field(*i).to_string(), "dim": dim, "basis": rows}))
            .collect();
        return print_json(&json!({"m": code.m(), "ell": code.ell(), "constituents": out}));
    }
    for (header, _, dim, rows) in blocks {
        println!("{header} dim={dim}");
        for r in rows {
            println!("  {}", r.join(" "));
        }
    }
    Ok(())
}

fn groebner(path: &Path, as_json: bool) -> Result<()> {
    let code = load_qc(path)?;
    let g = code.groebner();
    let rows: Vec<Vec<String>> = g.rows().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
    if as_json {
        return print_json(&json!({"rows": rows, "dimension": g.dimension()}));
    }
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    for r in &rows {
        let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
        println!("[ {} ]", cells.join(" ; "));
    }
    println!("dimension {}", g.dimension());
    Ok(())
}

fn bounds(path: &Path, exact: bool, budget: u64, as_json: bool) -> Result<()> {
    let code = load_qc(path)?;
    let report = best_bounds(&code, &BoundOptions { budget, exact, ..Default::default() })?;
    if as_json {
        return print_json(&report);
    }
    println!("length {}  dimension {}", report.length, report.dim);
    for (name, b) in &report.bounds {
        let note = if b.witness.get("skipped").is_some() { "  (skipped: over budget)" } else { "" };
        println!("  {name:<14} {:>5}{note}", b.value.to_string());
    }
    if let Some(d) = report.exact {
        println!("  {:<14} {:>5}", "exact", d.to_string());
    }
    Ok(())
}

fn distance(file: Option<&Path>, matrix: Option<&Path>, budget: u64, as_json: bool) -> Result<()> {
    let code = match (file, matrix) {
        (Some(f), _) => load_qc(f)?.expand(),
        (None, Some(m)) => load_matrix_code(m)?,
        (None, None) => bail!("give --file or --matrix"),
    };
    let d = code.min_distance(budget)?;
    if as_json {
        return print_json(&json!({"length": code.len(), "dim": code.dim(), "distance": d}));
    }
    println!("[{}, {}, {}]", code.len(), code.dim(), d);
    Ok(())
}

fn check(path: &Path, self_dual: bool, as_json: bool) -> Result<bool> {
    let code = load_qc(path)?;
    let ctx = CrtContext::for_code(&code)?;
    let (property, verdict): (&str, Verdict) =
        if self_dual { ("self-dual", is_self_dual(&ctx, &code)?) } else { ("lcd", is_lcd(&ctx, &code)?) };
    if as_json {
        print_json(&json!({"property": property, "holds": verdict.holds, "witness": verdict.witness}))?;
    } else if verdict.holds {
        println!("{property}: yes");
    } else {
        let w = verdict.witness.as_ref().expect("failures carry a witness");
        let f = ctx.field(w.index);
        let v: Vec<String> = w.vector.iter().map(|&a| f.format(a)).collect();
        println!("{property}: no");
        println!("  constituent {} (factor {}): {}", w.index, ctx.factor(w.index), w.reason);
        println!("  vector {}", v.join(" "));
    }
    Ok(verdict.holds)
}

/// Writes a QC file and reads it back, refusing output that does not round-trip.
fn emit_qc(code: &QcCode, out: Option<&Path>) -> Result<()> {
    let text = io::format_qc(code);
    let back = io::parse_qc(&text)?;
    if back.generators() != code.generators() {
        bail!("internal error: written code does not read back identically");
    }
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn construct(how: &Construction, out: Option<&Path>) -> Result<()> {
    let code = match how {
        Construction::Cubic { c1, c2 } => cubic_construction(&load_matrix_code(c1)?, &load_matrix_code(c2)?)?,
        Construction::Lcd { q, m, ell, parts } => {
            let ctx = CrtContext::new(*q, *m)?;
            let loaded = parts.iter().map(|(i, p)| Ok((*i, load_matrix_code(p)?))).collect::<Result<Vec<_>>>()?;
            build_qccd(&ctx, *ell, &loaded)?
        }
        Construction::Project { gen, m } => load_conv(gen)?.project(*m)?,
    };
    emit_qc(&code, out)
}

fn conv_bound(path: &Path, m: usize, cap: usize, budget: u64, as_json: bool) -> Result<()> {
    let code = load_conv(path)?;
    let bound = code.dfree_lower_bound(m, budget)?;
    let search = code.dfree_search(cap, budget)?;
    if as_json {
        return print_json(&json!({"m": m, "bound": bound.value, "witness": bound.witness, "cap": cap, "search": search}));
    }
    println!("free distance >= {}  (projection to length {m})", bound.value);
    println!("free distance <= {search}  (paths of degree at most {cap})");
    Ok(())
}

fn run_selftest(as_json: bool) -> bool {
    let report = if as_json {
        selftest::run()
    } else {
        selftest::run_with(|r, took| {
            println!("{} {:<3} {:<30} {:.2}s", if r.passed { "PASS" } else { "FAIL" }, r.id, r.name, took.as_secs_f64());
            if !r.passed {
                println!("     {}", r.details);
            }
        })
    };
    if as_json {
        println!("{}", report.to_json());
    }
    report.passed
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Factor { q, m, json } => factor(q, m, json)?,
        Command::Decompose { file, json } => decompose(&file, json)?,
        Command::Groebner { file, json } => groebner(&file, json)?,
        Command::Bounds { file, exact, budget, json } => bounds(&file, exact, budget.resolve()?, json)?,
        Command::Distance { file, matrix, budget, json } => {
            distance(file.as_deref(), matrix.as_deref(), budget.resolve()?, json)?
        }
        Command::Check { file, self_dual, lcd: _, json } => {
            if !check(&file, self_dual, json)? {
                return Ok(ExitCode::from(EXIT_CHECK_FAILED));
            }
        }
        Command::Construct { how, out } => construct(&how, out.as_deref())?,
        Command::ConvBound { gen, m, cap, budget, json } => conv_bound(&gen, m, cap, budget.resolve()?, json)?,
        Command::Asymptotics { ell, type2 } => print_json(&count_report(ell, type2)?)?,
        Command::Selftest { json } => {
            if !run_selftest(json) {
                return Ok(ExitCode::from(EXIT_CHECK_FAILED));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_USAGE,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() || cause.downcast_ref::<std::num::ParseIntError>().is_some() {
            return EXIT_USAGE;
        }
    }
    EXIT_CHECK_FAILED
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            let code = exit_code(&err);
            if code == EXIT_BUDGET {
                eprintln!("budget exceeded: {err:#}");
                eprintln!("raise it with --budget or QC_BUDGET");
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(code)
        }
    }
}
