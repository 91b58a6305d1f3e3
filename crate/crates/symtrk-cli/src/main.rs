//! Front end over the symtrk library: build, search for, verify, and
//! export multiplication decompositions; build and measure symmetric
//! rank-metric codes; replay the recorded tables and worked examples.
//!
//! Exit codes: 0 found/valid, 2 definitive nonexistence, 3 budget
//! exhausted, 4 reproduction mismatch, 1 any other error.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use symtrk::basis::OrderedBasis;
use symtrk::decomp::construct::{
    construct_qm, m1_construct, m2_construct, m3_construct, m4_try_sequence,
};
use symtrk::decomp::fpoly::m3_f;
use symtrk::decomp::search::{search, SearchOutcome, SearchParams, SearchStrategy};
use symtrk::field::{Field, FieldSpec};
use symtrk::matrix::MatrixGf;
use symtrk::multtensor::DecompositionCertificate;
use symtrk::refdata;
use symtrk::reproduce::{self, ReproTarget};
use symtrk::symcodes::{build_sqmd, singleton_bound, strk_exact, CoverOutcome, SymCode};

const EXIT_OK: u8 = 0;
const EXIT_ERR: u8 = 1;
const EXIT_NO: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(
    name = "symtrk",
    version,
    about = "Exact symmetric tensor decompositions of multiplication in F_{q^m}",
    after_help = "Exit codes: 0 found/valid, 2 definitive nonexistence, \
                  3 budget exhausted, 4 reproduction mismatch, 1 error."
)]
struct Cli {
    /// Emit one JSON document on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel sweeps; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Largest enumeration any sweep agrees to run.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    cap: u64,
    /// Seed for the random search strategy.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form decomposition of multiplication in F_{q^m}, m <= 4.
    Construct {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        /// Field spec file (JSON) overriding the default minimal polynomial.
        #[arg(long)]
        poly: Option<PathBuf>,
        /// Write the certificate here as JSON.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Sweep rank-R candidate tuples for a verified decomposition.
    Search {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        #[arg(long = "R")]
        rank: usize,
        #[arg(long)]
        strategy: Strategy,
        /// Candidates to test before giving up.
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
        /// Comma-separated exponent tuple tried before the stream.
        #[arg(long)]
        hint: Option<String>,
        /// Write the certificate here as JSON.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file and report its parameters.
    Verify { cert: PathBuf },
    /// Leading terms of the cubic admissibility polynomial, per q.
    Ftable {
        #[arg(long, default_value_t = 3)]
        m: u32,
        #[arg(long, default_value_t = 17)]
        qmax: u64,
    },
    /// Re-emit a certificate as JSON or as digit matrices.
    Export {
        cert: PathBuf,
        #[arg(long)]
        format: ExportFormat,
    },
    /// Best recorded interval for the symmetric rank of F_{q^m} multiplication.
    Known {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
    },
    /// Symmetric rank-metric code operations.
    Code {
        #[command(subcommand)]
        cmd: CodeCmd,
    },
    /// Recompute the recorded tables and worked examples and diff them.
    Reproduce {
        /// table2, table4, example-f16, example-f9, example-strk-f16;
        /// omit to run all of them.
        target: Option<String>,
    },
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Build the symmetric MRD code S_{q,m,d} (m - d even).
    BuildSqmd {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d: usize,
        /// Write the code here as JSON.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Minimum rank distance of a code file, by full enumeration.
    Mindist { code: PathBuf },
    /// Does the code meet the symmetric Singleton-type bound?
    Mrd { code: PathBuf },
    /// Exact symmetric tensor rank by exhaustive subset sweep.
    Strk {
        code: PathBuf,
        #[arg(long)]
        rmax: usize,
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Powers,
    Random,
    Exhaustive,
}

impl From<Strategy> for SearchStrategy {
    fn from(s: Strategy) -> SearchStrategy {
        match s {
            Strategy::Powers => SearchStrategy::Powers,
            Strategy::Random => SearchStrategy::Random,
            Strategy::Exhaustive => SearchStrategy::Exhaustive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Json,
    Matrices,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERR)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Box<dyn Error>> {
    if cli.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global()?;
    }
    let json = cli.json;
    let cap = cli.cap as u128;
    match cli.cmd {
        Cmd::Construct { q, m, poly, out } => cmd_construct(q, m, poly, out, json),
        Cmd::Search {
            q,
            m,
            rank,
            strategy,
            budget,
            hint,
            out,
        } => cmd_search(q, m, rank, strategy, budget, hint, out, cli.seed, cap, json),
        Cmd::Verify { cert } => cmd_verify(&cert, json),
        Cmd::Ftable { m, qmax } => cmd_ftable(m, qmax, json),
        Cmd::Export { cert, format } => cmd_export(&cert, format, json),
        Cmd::Known { q, m } => cmd_known(q, m, json),
        Cmd::Code { cmd } => match cmd {
            CodeCmd::BuildSqmd { q, m, d, out } => cmd_build_sqmd(q, m, d, out, json),
            CodeCmd::Mindist { code } => cmd_mindist(&code, cap, json),
            CodeCmd::Mrd { code } => cmd_mrd(&code, cap, json),
            CodeCmd::Strk { code, rmax, budget } => cmd_strk(&code, rmax, budget, json),
        },
        Cmd::Reproduce { target } => cmd_reproduce(target.as_deref(), json),
    }
}

fn write_json(path: &Path, v: &Value) -> Result<(), Box<dyn Error>> {
    fs::write(path, serde_json::to_string_pretty(v)? + "\n")?;
    Ok(())
}

fn load_json(path: &Path) -> Result<Value, Box<dyn Error>> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn print_json(v: &Value) -> Result<(), Box<dyn Error>> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn elt_list(field: &Field, elts: &[symtrk::field::Elt]) -> String {
    let parts: Vec<String> = elts.iter().map(|e| field.format_elt(e)).collect();
    format!("[{}]", parts.join(", "))
}

/// Digit rows of a matrix over its own (base) field.
fn digit_rows(m: &MatrixGf) -> Vec<Vec<u64>> {
    let f = m.field();
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| f.index_of(m.get(i, j)) as u64)
                .collect()
        })
        .collect()
}

fn print_digit_matrix(m: &MatrixGf) {
    for row in digit_rows(m) {
        let digits: Vec<String> = row.iter().map(u64::to_string).collect();
        println!("{}", digits.join(" "));
    }
}

fn construct_in(field: &Field, q: u64, m: u32) -> Result<DecompositionCertificate, Box<dyn Error>> {
    Ok(match m {
        1 => m1_construct(field)?,
        2 => m2_construct(field)?,
        3 => m3_construct(field)?,
        4 => {
            let row = refdata::m4_row(q)
                .ok_or("no recorded quartic exponent row for this q; use search")?;
            m4_try_sequence(field, &field.generator(), row.effective)?.ok_or(
                "the recorded exponent row does not span in this field presentation; use search",
            )?
        }
        _ => return Err(format!("no closed-form construction for m = {m}; use search").into()),
    })
}

fn cmd_construct(
    q: u64,
    m: u32,
    poly: Option<PathBuf>,
    out: Option<PathBuf>,
    json: bool,
) -> Result<u8, Box<dyn Error>> {
    let cert = match &poly {
        None => construct_qm(q, m)?,
        Some(path) => {
            let spec: FieldSpec = serde_json::from_value(load_json(path)?)?;
            let field = spec.build()?;
            if field.base_size() != q as u128 || field.ext_degree() != m as usize {
                return Err(format!(
                    "spec in {} builds F_({}^{}), but q={q} m={m} was requested",
                    path.display(),
                    field.base_size(),
                    field.ext_degree()
                )
                .into());
            }
            construct_in(&field, q, m)?
        }
    };
    cert.verify()?;
    let doc = cert.to_json();
    if let Some(path) = &out {
        write_json(path, &doc)?;
    }
    if json {
        print_json(&doc)?;
    } else {
        let f = &cert.field;
        println!(
            "multiplication in F_({q}^{m}) decomposes with R = {}",
            cert.rank()
        );
        println!("xi = {}", f.format_elt(&cert.xi));
        println!("alphas = {}", elt_list(f, &cert.alphas));
        println!("certificate verified");
        if let Some(path) = &out {
            println!("written to {}", path.display());
        }
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    q: u64,
    m: u32,
    rank: usize,
    strategy: Strategy,
    budget: u64,
    hint: Option<String>,
    out: Option<PathBuf>,
    seed: u64,
    cap: u128,
    json: bool,
) -> Result<u8, Box<dyn Error>> {
    let field = Field::standard(q, m as usize)?;
    let hint = match &hint {
        Some(s) => Some(
            s.split(',')
                .map(|x| x.trim().parse::<u64>())
                .collect::<Result<Vec<u64>, _>>()
                .map_err(|e| format!("bad hint: {e}"))?,
        ),
        None => None,
    };
    let params = SearchParams {
        rank,
        strategy: strategy.into(),
        budget,
        seed,
        workers: 0,
        cap,
        hint,
    };
    match search(&field, &params)? {
        SearchOutcome::Found { certificate, index } => {
            certificate.verify()?;
            if let Some(path) = &out {
                write_json(path, &certificate.to_json())?;
            }
            if json {
                print_json(&json!({
                    "outcome": "found",
                    "index": index,
                    "rank": certificate.rank(),
                    "certificate": certificate.to_json(),
                }))?;
            } else {
                let f = &certificate.field;
                println!(
                    "found a rank-{rank} decomposition at stream index {index}"
                );
                println!("xi = {}", f.format_elt(&certificate.xi));
                println!("alphas = {}", elt_list(f, &certificate.alphas));
                if let Some(path) = &out {
                    println!("written to {}", path.display());
                }
            }
            Ok(EXIT_OK)
        }
        SearchOutcome::Exhausted { tested } => {
            if json {
                print_json(&json!({"outcome": "exhausted", "tested": tested}))?;
            } else {
                println!(
                    "definitive: no rank-{rank} decomposition exists \
                     (full space of {tested} candidates swept)"
                );
            }
            Ok(EXIT_NO)
        }
        SearchOutcome::BudgetExhausted { tested } => {
            if json {
                print_json(&json!({"outcome": "budget-exhausted", "tested": tested}))?;
            } else {
                println!("budget exhausted after {tested} candidates; no conclusion");
            }
            Ok(EXIT_BUDGET)
        }
    }
}

fn cmd_verify(path: &Path, json: bool) -> Result<u8, Box<dyn Error>> {
    let cert = DecompositionCertificate::from_json(&load_json(path)?)?;
    let q = cert.field.base_size();
    let m = cert.field.ext_degree();
    match cert.verify() {
        Ok(()) => {
            if json {
                print_json(&json!({
                    "valid": true,
                    "q": q as u64,
                    "m": m,
                    "rank": cert.rank(),
                }))?;
            } else {
                println!(
                    "valid certificate: q={q}, m={m}, R={}",
                    cert.rank()
                );
            }
            Ok(EXIT_OK)
        }
        Err(e) => {
            if json {
                print_json(&json!({"valid": false, "error": e.to_string()}))?;
            } else {
                println!("invalid certificate: {e}");
            }
            Ok(EXIT_ERR)
        }
    }
}

fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut p = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    let mut v = n;
    while v % p == 0 {
        v /= p;
    }
    (v == 1).then_some(p)
}

fn cmd_ftable(m: u32, qmax: u64, json: bool) -> Result<u8, Box<dyn Error>> {
    if m != 3 {
        return Err("the leading-term table only exists for m = 3".into());
    }
    let mut rows = Vec::new();
    let mut mismatch = false;
    for q in 2..=qmax {
        if prime_power_base(q).is_none() {
            continue;
        }
        let (coeff, exp) = m3_f(q)?
            .reduce_functional(q, 3)
            .leading()
            .ok_or("the reduced polynomial vanished")?;
        let exp = exp as u64;
        let recorded = refdata::M3_LEADING.iter().find(|r| r.0 == q);
        let status = match recorded {
            Some(&(_, c, e)) if c == coeff && e == exp => "matches",
            Some(_) => {
                mismatch = true;
                "MISMATCH"
            }
            None => "unrecorded",
        };
        rows.push((q, coeff, exp, status));
    }
    if json {
        print_json(&json!({
            "m": 3,
            "qmax": qmax,
            "rows": rows
                .iter()
                .map(|&(q, c, e, status)| {
                    json!({"q": q, "coefficient": c, "exponent": e, "status": status})
                })
                .collect::<Vec<_>>(),
        }))?;
    } else {
        println!("{:>4}  {:<12}  {}", "q", "leading term", "recorded");
        for (q, c, e, status) in &rows {
            let term = if *c == 1 {
                format!("T^{e}")
            } else {
                format!("{c}*T^{e}")
            };
            println!("{q:>4}  {term:<12}  {status}");
        }
    }
    Ok(if mismatch { EXIT_MISMATCH } else { EXIT_OK })
}

fn cmd_export(path: &Path, format: ExportFormat, json: bool) -> Result<u8, Box<dyn Error>> {
    let cert = DecompositionCertificate::from_json(&load_json(path)?)?;
    cert.verify()?;
    match format {
        ExportFormat::Json => print_json(&cert.to_json())?,
        ExportFormat::Matrices => {
            let basis = OrderedBasis::power(&cert.field);
            let grams = cert.rank_one_grams(&basis);
            if json {
                print_json(&json!({
                    "q": cert.field.base_size() as u64,
                    "m": cert.field.ext_degree(),
                    "matrices": grams.iter().map(|g| digit_rows(g)).collect::<Vec<_>>(),
                }))?;
            } else {
                let f = &cert.field;
                for (k, g) in grams.iter().enumerate() {
                    println!(
                        "# matrix {} of {}: alpha = {}, scalar = {}",
                        k + 1,
                        grams.len(),
                        f.format_elt(&cert.alphas[k]),
                        f.format_elt(&cert.scalars[k]),
                    );
                    print_digit_matrix(g);
                    println!();
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_known(q: u64, m: u32, json: bool) -> Result<u8, Box<dyn Error>> {
    let b = refdata::known_interval(q, m)?;
    if json {
        print_json(&json!({
            "q": q,
            "m": m,
            "lower": b.lower,
            "upper": b.upper,
            "exact": b.exact(),
            "sources": b.sources,
        }))?;
    } else {
        match (b.exact(), b.upper) {
            (Some(v), _) => println!("symmetric rank of F_({q}^{m}) multiplication = {v}"),
            (None, Some(u)) => println!(
                "symmetric rank of F_({q}^{m}) multiplication in [{}, {u}]",
                b.lower
            ),
            (None, None) => println!(
                "symmetric rank of F_({q}^{m}) multiplication >= {}",
                b.lower
            ),
        }
        for s in &b.sources {
            println!("  via {s}");
        }
    }
    Ok(EXIT_OK)
}

fn load_code(path: &Path) -> Result<SymCode, Box<dyn Error>> {
    Ok(SymCode::from_json(&load_json(path)?)?)
}

fn cmd_build_sqmd(
    q: u64,
    m: u32,
    d: usize,
    out: Option<PathBuf>,
    json: bool,
) -> Result<u8, Box<dyn Error>> {
    let field = Field::standard(q, m as usize)?;
    let code = build_sqmd(&field, d)?;
    let doc = code.to_json();
    if let Some(path) = &out {
        write_json(path, &doc)?;
    }
    if json {
        print_json(&doc)?;
    } else {
        println!(
            "S_({q},{m},{d}): dimension {} over F_{q} (bound {})",
            code.dim(),
            singleton_bound(m as usize, d)?
        );
        if let Some(path) = &out {
            println!("written to {}", path.display());
        }
    }
    Ok(EXIT_OK)
}

fn cmd_mindist(path: &Path, cap: u128, json: bool) -> Result<u8, Box<dyn Error>> {
    let code = load_code(path)?;
    let d = code.min_distance(cap)?;
    if json {
        print_json(&json!({
            "q": code.field().base_size() as u64,
            "m": code.field().ext_degree(),
            "dim": code.dim(),
            "min_distance": d,
        }))?;
    } else {
        println!("minimum rank distance: {d}");
    }
    Ok(EXIT_OK)
}

fn cmd_mrd(path: &Path, cap: u128, json: bool) -> Result<u8, Box<dyn Error>> {
    let code = load_code(path)?;
    let d = code.min_distance(cap)?;
    let bound = singleton_bound(code.field().ext_degree(), d)?;
    let mrd = code.dim() as u64 == bound;
    if json {
        print_json(&json!({
            "dim": code.dim(),
            "min_distance": d,
            "bound": bound,
            "mrd": mrd,
        }))?;
    } else {
        println!(
            "dimension {}, minimum distance {d}, bound {bound}: {}",
            code.dim(),
            if mrd { "MRD" } else { "not MRD" }
        );
    }
    Ok(if mrd { EXIT_OK } else { EXIT_NO })
}

fn cmd_strk(path: &Path, rmax: usize, budget: u64, json: bool) -> Result<u8, Box<dyn Error>> {
    let code = load_code(path)?;
    match strk_exact(&code, rmax, budget) {
        CoverOutcome::Exact { value, witness } => {
            if json {
                print_json(&json!({
                    "outcome": "exact",
                    "value": value,
                    "witness": witness.iter().map(|w| digit_rows(w)).collect::<Vec<_>>(),
                }))?;
            } else {
                println!("symmetric tensor rank: {value}");
                for (k, w) in witness.iter().enumerate() {
                    println!("# rank-one matrix {} of {}", k + 1, witness.len());
                    print_digit_matrix(w);
                    println!();
                }
            }
            Ok(EXIT_OK)
        }
        CoverOutcome::NoneWithin { rmax, tested } => {
            if json {
                print_json(&json!({"outcome": "none", "rmax": rmax, "tested": tested}))?;
            } else {
                println!(
                    "definitive: no spanning set of size <= {rmax} exists \
                     ({tested} subsets swept)"
                );
            }
            Ok(EXIT_NO)
        }
        CoverOutcome::Indeterminate { tested } => {
            if json {
                print_json(&json!({"outcome": "budget-exhausted", "tested": tested}))?;
            } else {
                println!("budget exhausted after {tested} subsets; no conclusion");
            }
            Ok(EXIT_BUDGET)
        }
    }
}

fn cmd_reproduce(target: Option<&str>, json: bool) -> Result<u8, Box<dyn Error>> {
    let targets: Vec<ReproTarget> = match target {
        Some(s) => vec![s.parse()?],
        None => ReproTarget::ALL.to_vec(),
    };
    let reports: Vec<_> = targets.into_iter().map(reproduce::run).collect();
    if json {
        print_json(&Value::Array(reports.iter().map(|r| r.to_json()).collect()))?;
    } else {
        for r in &reports {
            print!("{r}");
        }
    }
    Ok(if reports.iter().all(|r| r.all_pass()) {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}
