use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use nu_core::coset_enum::{enumerate_with, EnumLimits, EnumStrategy};
use nu_core::presentation::{parse_presentation, Presentation};
use nu_core::tensor::tensor_square;
use nu_core::to_regular_engine;
use nu_core::verify::{corpus_entries, run_corpus, run_entry, CheckKind, CorpusEntry, CorpusReport, Include, RunOptions, VerifyConfig};
use nu_core::{NuOptions, NuStrategy};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(name = "nu-engine", version, about = "Build nu(G) from finite presentations and verify its structure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a presentation file and summarize each group.
    Parse { file: PathBuf },
    /// Enumerate cosets of the trivial subgroup and report the group order.
    Enumerate(GroupArgs),
    /// Build nu(G) and run structural checks.
    Nu(NuArgs),
    /// Compute the non-abelian tensor square of a small group.
    Tensor(GroupArgs),
    /// Run the built-in corpus.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct LimitArgs {
    /// Coset limit for every enumeration.
    #[arg(long, value_name = "N", default_value_t = 2_000_000)]
    max_cosets: usize,
    /// Time limit in seconds for every enumeration.
    #[arg(long, value_name = "S", default_value_t = 600.0)]
    max_time: f64,
}

#[derive(Args)]
struct GroupArgs {
    /// Presentation file; the built-in corpus when omitted.
    file: Option<PathBuf>,
    #[arg(long)]
    group: String,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args)]
struct NuArgs {
    #[command(flatten)]
    target: GroupArgs,
    #[arg(long, default_value = "gens", value_parser = ["gens", "cayley"])]
    strategy: String,
    /// Comma-separated check names, or `all`.
    #[arg(long, default_value = "all")]
    checks: String,
    /// Write the JSON report here (`-` for standard output).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CorpusArgs {
    /// Presentation file overriding or extending the built-in corpus.
    file: Option<PathBuf>,
    /// Comma-separated entry names, `all`, or `none`.
    #[arg(long, default_value = "all")]
    include: String,
    /// Also run the heavy entries.
    #[arg(long)]
    heavy: bool,
    #[arg(long, default_value = "gens", value_parser = ["gens", "cayley"])]
    strategy: String,
    #[arg(long, default_value = "all")]
    checks: String,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    limits: LimitArgs,
}

/// A failure that ends the command with a given exit code.
struct Exit(u8, String);

impl Exit {
    fn usage(msg: impl Into<String>) -> Self {
        Exit(EXIT_USAGE, msg.into())
    }
}

impl LimitArgs {
    fn options(&self) -> Result<(EnumLimits, EnumStrategy), Exit> {
        if !(self.max_time.is_finite() && self.max_time > 0.0) {
            return Err(Exit::usage("--max-time must be positive"));
        }
        let limits = EnumLimits::new(self.max_cosets, Duration::from_secs_f64(self.max_time))
            .map_err(|e| Exit::usage(e.to_string()))?;
        Ok((limits, EnumStrategy::Hlt))
    }
}

fn read_file(path: &Path) -> Result<Vec<Presentation>, Exit> {
    let text = fs::read_to_string(path).map_err(|e| Exit::usage(format!("{}: {e}", path.display())))?;
    parse_presentation(&text).map_err(|e| Exit::usage(format!("{}: {e}", path.display())))
}

fn user_groups(file: Option<&Path>) -> Result<Option<Vec<Presentation>>, Exit> {
    file.map(read_file).transpose()
}

/// The corpus entry for `name`, with expectations kept when the name is a
/// built-in one.
fn find_entry(file: Option<&Path>, name: &str) -> Result<CorpusEntry, Exit> {
    let user = user_groups(file)?;
    if let Some(groups) = &user {
        if !groups.iter().any(|p| p.name == name) {
            return Err(Exit::usage(format!("no group named `{name}` in the file")));
        }
    }
    corpus_entries(user.as_deref())
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Exit::usage(format!("no built-in group named `{name}`")))
}

fn write_json(path: &Path, json: &str) -> Result<(), Exit> {
    if path == Path::new("-") {
        println!("{json}");
        return Ok(());
    }
    fs::write(path, format!("{json}\n")).map_err(|e| Exit::usage(format!("{}: {e}", path.display())))
}

fn parse_checks(s: &str) -> Result<Vec<CheckKind>, Exit> {
    CheckKind::parse_list(s).map_err(|e| Exit::usage(e.to_string()))
}

fn parse_strategy(s: &str) -> Result<NuStrategy, Exit> {
    s.parse().map_err(Exit::usage)
}

fn cmd_parse(file: &Path) -> Result<u8, Exit> {
    for p in read_file(file)? {
        let lengths: Vec<usize> = p.relators.iter().map(|r| r.len()).collect();
        println!(
            "{}: {} generators, {} relators (lengths {:?})",
            p.name,
            p.generators.len(),
            p.relators.len(),
            lengths
        );
    }
    Ok(0)
}

fn cmd_enumerate(args: &GroupArgs) -> Result<u8, Exit> {
    let entry = find_entry(args.file.as_deref(), &args.group)?;
    let (limits, strategy) = args.limits.options()?;
    let start = Instant::now();
    match enumerate_with(&entry.presentation, limits, strategy) {
        Ok(t) => {
            println!("{}: order {}", entry.name, t.num_cosets());
            eprintln!("enumerated in {:.3} s", start.elapsed().as_secs_f64());
            Ok(0)
        }
        Err(e) if e.is_limit() => Err(Exit(EXIT_LIMIT, e.to_string())),
        Err(e) => Err(Exit(EXIT_FAIL, e.to_string())),
    }
}

fn cmd_tensor(args: &GroupArgs) -> Result<u8, Exit> {
    let entry = find_entry(args.file.as_deref(), &args.group)?;
    let (limits, strategy) = args.limits.options()?;
    let pres = &entry.presentation;
    let table = enumerate_with(pres, limits, strategy).map_err(|e| {
        let code = if e.is_limit() { EXIT_LIMIT } else { EXIT_FAIL };
        Exit(code, e.to_string())
    })?;
    let base = to_regular_engine(table, pres);
    let t = tensor_square(&base, limits).map_err(|e| {
        let code = if e.is_limit() { EXIT_LIMIT } else { EXIT_FAIL };
        Exit(code, e.to_string())
    })?;
    let f = t.engine.fingerprint_whole();
    println!("{} (x) {}: order {}", entry.name, entry.name, f.order);
    println!("{}", serde_json::to_string_pretty(&f).expect("fingerprint serializes"));
    Ok(0)
}

fn run_options(strategy: &str, checks: &str, seed: u64, limits: &LimitArgs) -> Result<RunOptions, Exit> {
    let (limits, enumeration) = limits.options()?;
    Ok(RunOptions {
        nu: NuOptions {
            strategy: parse_strategy(strategy)?,
            limits,
            enumeration,
        },
        checks: parse_checks(checks)?,
        verify: VerifyConfig {
            seed,
            ..VerifyConfig::default()
        },
    })
}

fn report_code(passed: bool, limit: bool) -> u8 {
    match (passed, limit) {
        (true, _) => 0,
        (false, true) => EXIT_LIMIT,
        (false, false) => EXIT_FAIL,
    }
}

fn cmd_nu(args: &NuArgs) -> Result<u8, Exit> {
    let opts = run_options(&args.strategy, &args.checks, args.seed, &args.target.limits)?;
    let entry = find_entry(args.target.file.as_deref(), &args.target.group)?;
    let report = run_entry(&entry, &opts);
    if let Some(path) = &args.json {
        write_json(path, &report.to_json())?;
    }
    if args.json.as_deref() != Some(Path::new("-")) {
        print!("{}", report.to_markdown());
    }
    Ok(report_code(report.passed(), report.resource_limit))
}

fn cmd_corpus(args: &CorpusArgs) -> Result<u8, Exit> {
    let opts = run_options(&args.strategy, &args.checks, args.seed, &args.limits)?;
    let user = user_groups(args.file.as_deref())?;
    let entries = Include::parse(&args.include)
        .select(corpus_entries(user.as_deref()), args.heavy)
        .map_err(Exit::usage)?;
    let report = CorpusReport {
        seed: args.seed,
        entries: run_corpus(&entries, &opts),
    };
    if let Some(path) = &args.json {
        write_json(path, &report.to_json())?;
    }
    if args.json.as_deref() != Some(Path::new("-")) {
        print!("{}", report.to_markdown());
    }
    Ok(report_code(report.passed(), report.resource_limit()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Parse { file } => cmd_parse(file),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Nu(a) => cmd_nu(a),
        Command::Tensor(a) => cmd_tensor(a),
        Command::Corpus(a) => cmd_corpus(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
