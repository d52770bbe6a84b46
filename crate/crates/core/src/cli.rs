//! Command implementations behind the `mgram` binary.
//!
//! Exit codes: 0 success, 1 property failure or unexpected stuck run, 2 usage
//! or parse error. All randomness derives from `--seed` (default 0).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::dsl::{self, export_dot_named, parse, serialize_trace, Instance};
use crate::grammar::Rule;
use crate::harness::{
    corollary1_campaign, oracle_campaign, theorem1_campaign, CampaignOptions, GenParams,
};
use crate::semantics::{choose_viable, enumerate_viable, run, HaltStatus, Policy};
use crate::threshold::{config_threshold, smallest_separating_threshold, Threshold};

#[derive(Debug, Parser)]
#[command(name = "mgram", version, about = "Membrane grammar simulator and threshold checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Canonical,
    Seeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Theorem1,
    Corollary1,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a .mg file.
    Validate { file: PathBuf },
    /// Run a computation and write its trace as JSON.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "canonical")]
        policy: PolicyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        max_steps: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the viable transitions of the configuration.
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 1000)]
        cap: usize,
    },
    /// Cap every object count at t and print the resulting instance.
    Threshold {
        file: PathBuf,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two configurations region by region.
    Diff { left: PathBuf, right: PathBuf },
    /// Fuzz-check one property on random instances.
    Check {
        #[arg(value_enum)]
        property: Property,
        #[command(flatten)]
        campaign: CampaignArgs,
        #[arg(long, default_value_t = 30)]
        max_steps: u32,
    },
    /// Run the oracle, theorem and corollary campaigns together.
    Fuzz {
        #[command(flatten)]
        campaign: CampaignArgs,
    },
    /// Render the configuration as Graphviz DOT.
    ExportDot {
        file: PathBuf,
        /// Annotate membranes with the transition chosen by this policy.
        #[arg(long, value_enum)]
        mark: Option<PolicyArg>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, clap::Args)]
struct CampaignArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: u32,
    #[arg(long, default_value_t = 1)]
    jobs: u32,
    /// Generate in rules too (theorem1 then looks for counterexamples).
    #[arg(long)]
    allow_in_rules: bool,
    /// Directory for witness files; the JSON summary goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CampaignArgs {
    fn options(&self, params: GenParams) -> CampaignOptions {
        CampaignOptions {
            seed: self.seed,
            trials: u64::from(self.trials),
            jobs: self.jobs.max(1) as usize,
            params: GenParams { allow_in_rules: self.allow_in_rules, ..params },
            out_dir: self.out.clone(),
        }
    }
}

/// Generator settings for the oracle comparison: at most six membranes and three objects.
pub fn oracle_params() -> GenParams {
    GenParams { objects: 1..=3, labels: 1..=3, regions: 1..=6, initial_count: 1..=3, ..GenParams::default() }
}

enum Failure {
    Usage(String),
    Property(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|d| Failure::Usage(format!("{}:{d}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

fn policy(arg: PolicyArg, seed: u64) -> Policy {
    match arg {
        PolicyArg::Canonical => Policy::Canonical,
        PolicyArg::Seeded => Policy::Seeded(seed),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(stdout, "{e}");
            } else {
                let _ = write!(stderr, "{e}");
            }
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Property(msg)) => {
            let _ = writeln!(stderr, "{msg}");
            1
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Validate { file } => validate(&file, stdout),
        Command::Run { file, policy: p, seed, max_steps, out } => {
            let inst = load(&file)?;
            let trace = run(&inst.grammar, &inst.config, policy(p, seed), max_steps as usize);
            let json = serialize_trace(&trace);
            match &out {
                Some(path) => {
                    std::fs::write(path, &json)?;
                    writeln!(
                        stdout,
                        "halt_status: {} after {} steps",
                        status_name(trace.halt_status),
                        trace.transitions.len()
                    )?;
                }
                None => stdout.write_all(json.as_bytes())?,
            }
            if trace.halt_status == HaltStatus::Stuck {
                return Err(Failure::Property("run got stuck: no viable transition".into()));
            }
            Ok(())
        }
        Command::Enumerate { file, cap } => {
            let inst = load(&file)?;
            let e = enumerate_viable(&inst.grammar, &inst.config, cap.max(1));
            for f in &e.transitions {
                writeln!(stdout, "{f}")?;
            }
            writeln!(
                stdout,
                "{} viable transition(s){}",
                e.transitions.len(),
                if e.cap_exceeded { " (cap exceeded)" } else { "" }
            )?;
            Ok(())
        }
        Command::Threshold { file, t, out } => {
            let inst = load(&file)?;
            let capped = Instance { config: config_threshold(&inst.config, Threshold(t)), ..inst };
            emit(&out, &capped.to_source(), stdout)?;
            Ok(())
        }
        Command::Diff { left, right } => diff(&left, &right, stdout),
        Command::Check { property, campaign, max_steps } => {
            let opts = campaign.options(GenParams::default());
            let summary = match property {
                Property::Theorem1 => theorem1_campaign(&opts)?,
                Property::Corollary1 => corollary1_campaign(&opts, max_steps as usize)?,
            };
            stdout.write_all(summary.to_json().as_bytes())?;
            if property == Property::Theorem1 && campaign.allow_in_rules {
                // failures here are the counterexamples being searched for
                return Ok(());
            }
            if !summary.all_pass() {
                return Err(Failure::Property(format!("{} check(s) failed", summary.fail)));
            }
            Ok(())
        }
        Command::Fuzz { campaign } => {
            let oracle = oracle_campaign(&campaign.options(oracle_params()))?;
            let theorem = theorem1_campaign(&campaign.options(GenParams::default()))?;
            let corollary = corollary1_campaign(&campaign.options(GenParams::default()), 30)?;
            let doc = serde_json::json!({
                "oracle": oracle,
                "theorem1": theorem,
                "corollary1": corollary,
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("json");
            text.push('\n');
            stdout.write_all(text.as_bytes())?;
            let failed = oracle.fail
                + corollary.fail
                + if campaign.allow_in_rules { 0 } else { theorem.fail };
            if failed > 0 {
                return Err(Failure::Property(format!("{failed} check(s) failed")));
            }
            Ok(())
        }
        Command::ExportDot { file, mark, seed, out } => {
            let inst = load(&file)?;
            let f = mark.and_then(|p| choose_viable(&inst.grammar, &inst.config, policy(p, seed)));
            let dot = export_dot_named(&inst.config, f.as_ref(), &inst.names)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            emit(&out, &dot, stdout)?;
            Ok(())
        }
    }
}

fn status_name(s: HaltStatus) -> &'static str {
    match s {
        HaltStatus::Halted => "halted",
        HaltStatus::StepLimit => "step_limit",
        HaltStatus::Stuck => "stuck",
    }
}

fn validate(file: &Path, stdout: &mut dyn Write) -> CmdResult {
    let inst = load(file)?;
    let g = &inst.grammar;
    let mut kinds = [0usize; 5];
    for r in g.rules() {
        let i = match r {
            Rule::Evolution { .. } => 0,
            Rule::Dissolution { .. } => 1,
            Rule::Division { .. } => 2,
            Rule::Out { .. } => 3,
            Rule::In { .. } => 4,
        };
        kinds[i] += 1;
    }
    writeln!(stdout, "ok: {}", file.display())?;
    writeln!(stdout, "objects: {}", g.objects().len())?;
    writeln!(stdout, "labels: {}", g.labels().len())?;
    writeln!(
        stdout,
        "rules: {} (evolution {}, dissolution {}, division {}, out {}, in {})",
        g.rules().len(),
        kinds[0],
        kinds[1],
        kinds[2],
        kinds[3],
        kinds[4]
    )?;
    writeln!(stdout, "regions: {}", inst.config.region_count())?;
    Ok(())
}

fn diff(left: &Path, right: &Path, stdout: &mut dyn Write) -> CmdResult {
    let a = load(left)?;
    let b = load(right)?;
    if a.config.structure != b.config.structure {
        writeln!(stdout, "membrane structures differ")?;
        writeln!(stdout, "smallest separating t: 0")?;
        return Ok(());
    }
    for r in a.config.structure.regions() {
        let (ma, mb) = (a.config.contents(r), b.config.contents(r));
        let mut objects: Vec<_> = ma.objects().chain(mb.objects()).collect();
        objects.sort();
        objects.dedup();
        for o in objects {
            let (x, y) = (ma.count(o), mb.count(o));
            if x != y {
                let diff = y as i128 - x as i128;
                writeln!(
                    stdout,
                    "{} {o}: {x} -> {y} ({diff:+})",
                    dsl::region_name(&a.names, r)
                )?;
            }
        }
    }
    match smallest_separating_threshold(&a.config, &b.config) {
        Some(t) => writeln!(stdout, "smallest separating t: {t}")?,
        None => writeln!(stdout, "identical (t-equivalent for every t)")?,
    }
    Ok(())
}
