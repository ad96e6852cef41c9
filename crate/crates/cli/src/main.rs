//! `grouphom`: homology of finitely presented groups from the command line.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 a resource cap or an
//! interrupt cut `h2` short (the printed `d` is still an upper bound), 3 an
//! internal consistency check failed.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use grouphom::abelian::{first_homology, first_homology_mod_p, prime_primary_rank, tor_dimension};
use grouphom::fixtures::{fixture_names, fixture_text};
use grouphom::hopf::{HopfBound, HopfObserver, HopfQuotient};
use grouphom::kb::{build_monoid_presentation, complete_with, NormalForms, Progress};
use grouphom::{CompletionStatus, KbConfig, PrimeField, Presentation, RelatorSelection, RewritingSystem};

use report::{H2Report, InvariantsReport};

/// `println!` that reports a closed stdout as an error instead of panicking.
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        writeln!(std::io::stdout().lock(), $($t)*)?
    }};
}

macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        write!(std::io::stdout().lock(), $($t)*)?
    }};
}

static CANCEL: AtomicBool = AtomicBool::new(false);

/// Normal forms listed by `kb` before the group is reported as large.
const NORMAL_FORM_LIMIT: usize = 100_000;

#[derive(Parser, Debug)]
#[command(name = "grouphom", version, about = "H1, H1 mod p and a bound on H2 mod p of finitely presented groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Abelian invariants of H1 (0 stands for a copy of Z).
    H1(Common),
    /// dim H1(G; F_p).
    H1modp(Common),
    /// dim Tor(H1(G), F_p).
    Tor(Common),
    /// Exponent of the order of the p-primary part of H1.
    Prank(Common),
    /// Upper bound on dim H2(G; F_p), exact when rewriting is confluent.
    H2(Common),
    /// Rewrite a word in F / [F,R] R^p R'.
    Reduce(Common),
    /// Knuth-Bendix completion of the presentation itself.
    Kb(Common),
    /// Tietze-simplify the presentation and print it.
    Simplify(Common),
    /// List bundled fixtures, or print one.
    Fixtures { name: Option<String> },
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Presentation file, or `fixture:NAME` for a bundled one.
    input: String,
    #[arg(short, long)]
    prime: Option<u64>,
    #[arg(long = "max-eqns", default_value_t = 500_000)]
    max_eqns: usize,
    #[arg(long, default_value_t = 100)]
    tidy: usize,
    #[arg(long = "max-seconds")]
    max_seconds: Option<f64>,
    #[arg(long = "max-passes", default_value_t = 8)]
    max_passes: usize,
    /// 1-based relator indices, comma separated (`none` for the empty
    /// selection); defaults to all relators.
    #[arg(long)]
    sublist: Option<String>,
    #[arg(long)]
    json: bool,
    /// Apply Tietze simplification before anything else.
    #[arg(long = "simplify-first")]
    simplify_first: bool,
    /// Rounds of Tietze simplification for `simplify` and `--simplify-first`.
    #[arg(long = "tietze-rounds", default_value_t = 10_000)]
    tietze_rounds: usize,
    /// Word to rewrite (`reduce` only).
    #[arg(long)]
    word: Option<String>,
    /// Write the completed rewriting system to PATH (`kb`, `reduce`).
    #[arg(long = "dump-rules")]
    dump_rules: Option<PathBuf>,
    /// Use a previously dumped rewriting system instead of completing (`kb`, `reduce`).
    #[arg(long = "load-rules")]
    load_rules: Option<PathBuf>,
    /// Report progress on standard error.
    #[arg(short, long)]
    verbose: bool,
}

impl Common {
    fn kb_config(&self) -> Result<KbConfig> {
        let cfg = KbConfig {
            max_equations: self.max_eqns,
            tidy_interval: self.tidy,
            max_seconds: self.max_seconds,
            max_rule_length: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn prime(&self) -> Result<PrimeField> {
        let Some(p) = self.prime else {
            bail!("this command needs a prime, pass -p/--prime");
        };
        Ok(PrimeField::new(p)?)
    }

    fn presentation(&self) -> Result<Presentation> {
        let p = load_input(&self.input)?;
        Ok(if self.simplify_first { p.tietze_simplify(self.tietze_rounds) } else { p })
    }

    fn selection(&self, p: &Presentation) -> Result<RelatorSelection> {
        match &self.sublist {
            None => Ok(RelatorSelection::all(p)),
            Some(text) => {
                let mut idx = Vec::new();
                let text = text.trim();
                if text != "none" && !text.is_empty() {
                    for part in text.split(',') {
                        let i: usize = part.trim().parse().with_context(|| format!("bad --sublist entry `{part}`"))?;
                        if i == 0 {
                            bail!("--sublist indices are 1-based");
                        }
                        idx.push(i - 1);
                    }
                }
                Ok(RelatorSelection::new(idx, p.n_relators())?)
            }
        }
    }
}

fn load_input(input: &str) -> Result<Presentation> {
    if let Some(name) = input.strip_prefix("fixture:") {
        let text = fixture_text(name)?;
        return Ok(Presentation::parse(text).with_context(|| format!("fixture {name}"))?);
    }
    let path = Path::new(input);
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Presentation::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    outln!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// Prints progress to standard error when asked to.
struct Log {
    verbose: bool,
}

impl HopfObserver for Log {
    fn pass_started(&mut self, pass: usize, selection: &RelatorSelection) {
        if self.verbose {
            eprintln!("pass {pass}: {} candidate relators", selection.len());
        }
    }

    fn candidate_tested(&mut self, pass: usize, relator: usize, removed: bool, status: CompletionStatus) {
        if self.verbose {
            let verdict = if removed { "removed" } else { "kept" };
            eprintln!("pass {pass}: relator {} {verdict} ({status})", relator + 1);
        }
    }

    fn completion_progress(&mut self, p: Progress) {
        if self.verbose {
            eprintln!("  {} equations, {} rules, {} pending", p.equations_processed, p.rules, p.pending);
        }
    }
}

fn invariants(cmd: &Command, c: &Common) -> Result<ExitCode> {
    let p = c.presentation()?;
    let inv = first_homology(&p);
    let value = match cmd {
        Command::H1(_) => None,
        Command::H1modp(_) => Some(first_homology_mod_p(&p, c.prime()?) as u64),
        Command::Tor(_) => Some(tor_dimension(&p, c.prime()?) as u64),
        Command::Prank(_) => Some(prime_primary_rank(&p, c.prime()?) as u64),
        _ => unreachable!("not an invariant command"),
    };
    if c.json {
        print_json(&InvariantsReport::new(&inv, c.prime, value))?;
    } else {
        match value {
            None => outln!("{}", report::format_invariants(&inv)),
            Some(v) => outln!("{v}"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn h2(c: &Common) -> Result<ExitCode> {
    let p = c.presentation()?;
    let k = c.prime()?;
    let cfg = c.kb_config()?;
    let selection = c.selection(&p)?;
    let mut log = Log { verbose: c.verbose };
    let rep = HopfBound::new(&p, k, &cfg, &CANCEL).run(&selection, c.max_passes, &mut log);
    let out = H2Report::new(&p, &rep);
    if c.json {
        print_json(&out)?;
    } else {
        out!("{}", out.text());
    }
    if let Err(e) = rep.check() {
        eprintln!("error: inconsistent report: {e}");
        return Ok(ExitCode::from(3));
    }
    Ok(if rep.exact() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn complete_or_load(c: &Common, p: &Presentation, build: impl FnOnce(&KbConfig) -> RewritingSystem) -> Result<RewritingSystem> {
    let rs = match &c.load_rules {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            RewritingSystem::load(&text, p.generator_names()).with_context(|| format!("loading {}", path.display()))?
        }
        None => build(&c.kb_config()?),
    };
    if let Some(path) = &c.dump_rules {
        std::fs::write(path, rs.dump(p.generator_names())).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(rs)
}

fn progress(verbose: bool) -> impl FnMut(Progress) {
    move |p: Progress| {
        if verbose {
            eprintln!("  {} equations, {} rules, {} pending", p.equations_processed, p.rules, p.pending);
        }
    }
}

fn reduce(c: &Common) -> Result<ExitCode> {
    let p = c.presentation()?;
    let k = c.prime()?;
    let Some(text) = &c.word else {
        bail!("reduce needs --word");
    };
    let w = p.parse_word(text).context("parsing --word")?;
    let selection = c.selection(&p)?;
    let q = HopfQuotient::new(&p, k, &selection);
    let rs = complete_or_load(c, &p, |cfg| q.complete(cfg, &CANCEL, progress(c.verbose)))?;
    let r = rs.reduce(&w);
    let shown = report::format_word(&p, &r);
    if c.json {
        print_json(&serde_json::json!({
            "word": report::format_word(&p, &w),
            "reduced": shown,
            "identity": r.is_identity(),
            "status": rs.status(),
            "rules": rs.rules().len(),
        }))?;
    } else {
        outln!("{shown}");
        outln!("status: {}", rs.status());
    }
    Ok(ExitCode::SUCCESS)
}

fn kb(c: &Common) -> Result<ExitCode> {
    let p = c.presentation()?;
    let rs = complete_or_load(c, &p, |cfg| {
        complete_with(&build_monoid_presentation(&p), cfg, &CANCEL, progress(c.verbose))
    })?;
    let order = if rs.is_confluent() {
        match rs.enumerate_normal_forms(NORMAL_FORM_LIMIT) {
            NormalForms::Complete(v) => Some(v.len()),
            NormalForms::Overflow => None,
        }
    } else {
        None
    };
    if c.json {
        print_json(&serde_json::json!({
            "status": rs.status(),
            "rules": rs.rules().len(),
            "equations_processed": rs.equations_processed(),
            "normal_forms": order,
        }))?;
    } else {
        outln!("status: {}", rs.status());
        outln!("rules: {}", rs.rules().len());
        outln!("equations processed: {}", rs.equations_processed());
        match (rs.is_confluent(), order) {
            (true, Some(n)) => outln!("normal forms: {n}"),
            (true, None) => outln!("normal forms: at least {NORMAL_FORM_LIMIT}"),
            (false, _) => outln!("normal forms: unknown (not confluent)"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn simplify(c: &Common) -> Result<ExitCode> {
    let p = load_input(&c.input)?;
    let q = p.tietze_simplify(c.tietze_rounds);
    if c.json {
        let relators: Vec<String> = q.relators().iter().map(|r| report::format_word(&q, r)).collect();
        print_json(&serde_json::json!({ "generators": q.generator_names(), "relators": relators }))?;
    } else {
        out!("{q}");
    }
    Ok(ExitCode::SUCCESS)
}

fn fixtures(name: Option<&str>) -> Result<ExitCode> {
    match name {
        Some(n) => out!("{}", fixture_text(n)?),
        None => {
            for n in fixture_names() {
                outln!("{n}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match &cli.command {
        cmd @ (Command::H1(c) | Command::H1modp(c) | Command::Tor(c) | Command::Prank(c)) => invariants(cmd, c),
        Command::H2(c) => h2(c),
        Command::Reduce(c) => reduce(c),
        Command::Kb(c) => kb(c),
        Command::Simplify(c) => simplify(c),
        Command::Fixtures { name } => fixtures(name.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(e) = ctrlc::set_handler(|| {
        if CANCEL.swap(true, Ordering::SeqCst) {
            std::process::exit(130);
        }
    }) {
        eprintln!("warning: no interrupt handler: {e}");
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
