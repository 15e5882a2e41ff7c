//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 input or construction error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::{
    code_bounds, exact_params, format_csv, format_table, griesmer_check, singleton_check, BoundReport, ExactParams,
    TableRow,
};
use crate::asymptotics::{
    default_ihara, dominance_report, envelope_coefficient, envelope_product, figure_discrepancy, frontier_csv,
    ruled_curve,
};
use crate::codes::LinearCode;
use crate::config::{ExperimentConfig, Resolved};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::locality::{recover, recovery_sets_json, recovery_sets_unchecked, restriction_fiber};
use crate::surface::{segre_upper_bounds, SurfaceVariant};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ruledcodes", version, about = "Evaluation codes on ruled surfaces over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a code from a JSON config and write its matrix, point index and report.
    Build(BuildArgs),
    /// Compute exact parameters of a matrix file and check them against bounds.
    Verify(VerifyArgs),
    /// Bound the arithmetic Segre invariant of the configured surface.
    Segre(SegreArgs),
    /// Write limit (delta, rate) curves as CSV.
    Asymptotics(AsymptoticsArgs),
    /// Write recovery sets, or repair erasures in a received word.
    Recover(RecoverArgs),
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory; overrides the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Matrix file in `k n q` format.
    pub matrix: PathBuf,
    /// Config the matrix was built from; adds the construction's bounds and a
    /// row-space comparison with a fresh build.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub k_min: Option<usize>,
    #[arg(long)]
    pub d_min: Option<usize>,
    /// Cap on q^k for the exhaustive search.
    #[arg(long, default_value_t = crate::analysis::DEFAULT_EXACT_CAP)]
    pub cap: u64,
}

#[derive(Args, Debug)]
pub struct SegreArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Largest function degree enumerated for the lower bound.
    #[arg(long)]
    pub dmax: Option<u32>,
}

#[derive(Args, Debug)]
pub struct AsymptoticsArgs {
    #[arg(long)]
    pub q: u64,
    /// Ihara constant; defaults to sqrt(q) - 1 for square q.
    #[arg(long = "A")]
    pub a_q: Option<f64>,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    /// Range of b for the ruled curve, as `lo:hi`.
    #[arg(long, default_value = "0.3:0.99")]
    pub b_range: String,
    /// Skip the ruled curve and the dominance scan.
    #[arg(long)]
    pub envelope_only: bool,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct RecoverArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Received word: whitespace-separated encodings, `?` for an erasure.
    #[arg(long)]
    pub word: Option<PathBuf>,
    /// Where to write the recovery sets (JSON) or the repaired word.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parse arguments, run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return EXIT_INPUT;
    }
    let result = match cli.command {
        Command::Build(a) => cmd_build(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Segre(a) => cmd_segre(&a),
        Command::Asymptotics(a) => cmd_asymptotics(&a),
        Command::Recover(a) => cmd_recover(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var("RULEDCODES_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("RULEDCODES_THREADS={v:?} is not a thread count")))?;
    // a second initialization in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn load_config(path: &Path) -> Result<(ExperimentConfig, Resolved)> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let cfg = ExperimentConfig::parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let resolved = cfg.resolve()?;
    Ok((cfg, resolved))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn row_for(code: &LinearCode, b: Option<&BoundReport>, exact: Option<ExactParams>) -> TableRow {
    let prov = &code.provenance;
    TableRow {
        family: b.map_or_else(|| prov.family.to_string(), |b| b.family.to_string()),
        params: format!("q={} a={} b={}", code.q(), prov.a, prov.b),
        n: code.n(),
        k_lb: b.map_or(0, |b| b.k_lower),
        k_exact: code.rank(),
        d_lb: b.map_or(0, |b| b.d_lower),
        d_exact: exact.map(|e| e.d),
        griesmer: exact.map(|e| griesmer_check(e.n as u64, e.k as u64, e.d as u64, code.q()).0),
    }
}

pub fn cmd_build(args: &BuildArgs) -> Result<i32> {
    let (cfg, res) = load_config(&args.config)?;
    let code = res.build(&cfg.code)?;
    let dir = args.out.clone().unwrap_or_else(|| cfg.output.dir.clone());
    let stem = &cfg.output.stem;
    let exact = if cfg.analysis.exact {
        match exact_params(&code, cfg.analysis.exact_cap) {
            Ok(e) => Some(e),
            Err(Error::CapExceeded(msg)) => {
                eprintln!("note: exact distance skipped: {msg}");
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let bounds = code_bounds(&code)?;
    let rows: Vec<TableRow> = if bounds.is_empty() {
        vec![row_for(&code, None, exact)]
    } else {
        bounds.iter().map(|b| row_for(&code, Some(b), exact)).collect()
    };
    let mut report = format_table(&rows);
    for b in &bounds {
        let flags: Vec<String> = b
            .flags
            .iter()
            .map(|(name, ok)| format!("{name}: {}", if *ok { "ok" } else { "FAILS" }))
            .collect();
        let _ = writeln!(report, "{} bound valid={} ({}); {}", b.family, b.valid(), flags.join(", "), b.achieved_by);
    }
    if cfg.analysis.locality {
        let sets = recovery_sets_unchecked(&code)?;
        let nbases = code.n() / (code.q() as usize + 1);
        let deficient: Vec<usize> = (0..nbases)
            .filter(|&i| restriction_fiber(&code, i).map(|r| r.rank as i64) != Ok(code.provenance.a + 1))
            .collect();
        let _ = writeln!(
            report,
            "locality {} availability {} rank-deficient fibers {:?}",
            code.provenance.a + 1,
            sets.first().map_or(0, |s| s.len()),
            deficient
        );
        write(&dir.join(format!("{stem}.recovery.json")), &recovery_sets_json(&sets))?;
    }
    write(&dir.join(format!("{stem}.matrix")), &code.to_text())?;
    write(&dir.join(format!("{stem}.points")), &code.points_text())?;
    write(&dir.join(format!("{stem}.report.txt")), &report)?;
    write(&dir.join(format!("{stem}.report.csv")), &format_csv(&rows))?;
    print!("{report}");
    Ok(EXIT_OK)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let text = fs::read_to_string(&args.matrix).map_err(|e| Error::Io(format!("{}: {e}", args.matrix.display())))?;
    let code = LinearCode::from_text(&text).map_err(|e| Error::Parse(format!("{}: {e}", args.matrix.display())))?;
    let ex = exact_params(&code, args.cap)?;
    let (n, k, d) = (ex.n as u64, ex.k as u64, ex.d as u64);
    let mut checks: Vec<(String, bool)> = Vec::new();
    let (gr, gsum) = griesmer_check(n, k, d, code.q());
    checks.push((format!("griesmer n={n} >= {gsum}"), gr));
    checks.push((format!("singleton k+d={} <= n+1={}", k + d, n + 1), singleton_check(n, k, d)));
    if let Some(km) = args.k_min {
        checks.push((format!("k={k} >= {km}"), ex.k >= km));
    }
    if let Some(dm) = args.d_min {
        checks.push((format!("d={d} >= {dm}"), ex.d >= dm));
    }
    if let Some(path) = &args.config {
        let (cfg, res) = load_config(path)?;
        let built = res.build(&cfg.code)?;
        checks.push((format!("length n={n} matches construction {}", built.n()), ex.n == built.n()));
        let same = ex.n == built.n() && code.field == built.field && code.same_row_space(&built);
        checks.push(("row space equals construction".into(), same));
        for b in code_bounds(&built)?.iter().filter(|b| b.valid()) {
            checks.push((format!("{} k={k} >= {}", b.family, b.k_lower), k as i64 >= b.k_lower));
            checks.push((format!("{} d={d} >= {}", b.family, b.d_lower), d as i64 >= b.d_lower));
        }
    }
    println!("n={n} k={k} d={d} q={}", code.q());
    for (name, ok) in &checks {
        println!("{:<4} {name}", if *ok { "pass" } else { "FAIL" });
    }
    Ok(if checks.iter().all(|c| c.1) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

pub fn cmd_segre(args: &SegreArgs) -> Result<i32> {
    let (cfg, res) = load_config(&args.config)?;
    let s = res
        .surface
        .as_ref()
        .ok_or_else(|| Error::Config("surface: segre needs a surface block".into()))?;
    let g = s.genus();
    let nn = res.curve.rational_points()?.len() as i64;
    let q = res.curve.q() as i64;
    if g == 0 {
        println!("genus 0 base: arithmetic and geometric Segre invariants coincide (Hirzebruch surface)");
    }
    match &s.variant {
        SurfaceVariant::Decomposable { e, .. } => {
            let (sg, sa) = s.segre_decomposable()?;
            println!("decomposable e={e}: s_g = {sg}, s_a = {sa} (exact)");
        }
        SurfaceVariant::ElmOfProduct { .. } => {
            let dmax = args.dmax.unwrap_or(cfg.analysis.segre_dmax);
            let lo = s.segre_lower_bound_elm(dmax)?;
            let up = segre_upper_bounds(g, nn, q);
            println!(
                "lower bound s_a >= {} (no graph of degree <= {} through the center of degree {}; {} functions examined)",
                lo.bound, lo.d_star, lo.degree, lo.functions_examined
            );
            match up.t {
                Some(t) => println!("upper bound s_a <= {} (point count, t = {t})", up.bound),
                None => println!("upper bound s_a <= {} (2g)", up.bound),
            }
            if lo.bound == up.bound {
                println!("certified s_a = {}", lo.bound);
            }
        }
    }
    Ok(EXIT_OK)
}

fn parse_range(s: &str) -> Result<(f64, f64)> {
    let bad = || Error::Parse(format!("--b-range {s:?}: expected lo:hi with 0 < lo < hi < 1"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !(0.0 < lo && lo < hi && hi < 1.0) {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn cmd_asymptotics(args: &AsymptoticsArgs) -> Result<i32> {
    let q = args.q;
    let a_q = args
        .a_q
        .or_else(|| default_ihara(q))
        .ok_or_else(|| Error::Parse(format!("--A is required: {q} is not a square")))?;
    let (lo, hi) = parse_range(&args.b_range)?;
    if !args.envelope_only && a_q <= 2.0 {
        return Err(Error::Domain("A must exceed 2 for the ruled curve; pass --envelope-only".into()));
    }
    let qf = q as f64;
    let env = envelope_product(qf, a_q, args.samples)?;
    write(&args.out.join(format!("envelope_q{q}.csv")), &frontier_csv(&env))?;
    println!("envelope coefficient B = {:.12}", envelope_coefficient(qf, a_q));
    if let Some((printed, formula)) = figure_discrepancy(q, a_q) {
        println!("note: published plot uses B = {printed:.12}, formula gives {formula:.12}");
    }
    if !args.envelope_only {
        let ruled = ruled_curve(qf, a_q, lo, hi, args.samples)?;
        write(&args.out.join(format!("ruled_q{q}.csv")), &frontier_csv(&ruled))?;
        let dom = dominance_report(qf, a_q, args.samples)?;
        let mut csv = String::from("delta,product,ruled\n");
        let fmt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x:.9}"));
        for r in &dom.rows {
            let _ = writeln!(csv, "{:.6},{},{}", r.delta, fmt(r.product), fmt(r.ruled));
        }
        write(&args.out.join(format!("dominance_q{q}.csv")), &csv)?;
        match dom.interval {
            Some((a, b)) => println!("ruled codes beat the product envelope for delta in [{a:.4}, {b:.4}]"),
            None => println!("no delta where ruled codes beat the product envelope"),
        }
    }
    Ok(EXIT_OK)
}

fn parse_word(text: &str, q: u64, n: usize) -> Result<Vec<Option<Elem>>> {
    let word: Vec<Option<Elem>> = text
        .split_whitespace()
        .map(|t| match t {
            "?" | "*" => Ok(None),
            _ => t
                .parse::<u32>()
                .ok()
                .filter(|&v| (v as u64) < q)
                .map(|v| Some(Elem(v)))
                .ok_or_else(|| Error::Parse(format!("bad word entry {t:?}"))),
        })
        .collect::<Result<_>>()?;
    if word.len() != n {
        return Err(Error::Parse(format!("word has {} entries, code length is {n}", word.len())));
    }
    Ok(word)
}

pub fn cmd_recover(args: &RecoverArgs) -> Result<i32> {
    let (cfg, res) = load_config(&args.config)?;
    let code = res.build(&cfg.code)?;
    let sets = recovery_sets_unchecked(&code)?;
    let Some(word_path) = &args.word else {
        let json = recovery_sets_json(&sets);
        match &args.out {
            Some(p) => write(p, &json)?,
            None => println!("{json}"),
        }
        return Ok(EXIT_OK);
    };
    let text = fs::read_to_string(word_path).map_err(|e| Error::Io(format!("{}: {e}", word_path.display())))?;
    let word = parse_word(&text, code.q(), code.n())?;
    let mut repaired = word.clone();
    let mut failed = Vec::new();
    for (i, v) in word.iter().enumerate() {
        if v.is_some() {
            continue;
        }
        match sets[i].iter().find_map(|r| recover(&code.field, &word, r).ok()) {
            Some(x) => repaired[i] = Some(x),
            None => failed.push(i),
        }
    }
    let line: Vec<String> = repaired
        .iter()
        .map(|v| v.map_or("?".to_string(), |e| e.0.to_string()))
        .collect();
    let out = format!("{}\n", line.join(" "));
    match &args.out {
        Some(p) => write(p, &out)?,
        None => print!("{out}"),
    }
    if failed.is_empty() {
        Ok(EXIT_OK)
    } else {
        eprintln!("unrecoverable positions: {failed:?}");
        Ok(EXIT_VERIFY_FAILED)
    }
}
