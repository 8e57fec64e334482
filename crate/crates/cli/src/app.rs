//! Argument parsing and command dispatch.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oshlab_core::sperner::SPERNER_MAX_GROUND;
use oshlab_core::twolevel::{MinimalSet, TwoLevelClosure};
use oshlab_core::{
    construct_sperner_witness_with, criterion_sum, osh_consecutive_levels, osh_direct_with,
    osh_via_shift, sh_all, shift_full, st_all, t_min, ElementSet, Error, OshOptions, SetFamily,
    TwoLevelParams, DEFAULT_MAX_GROUND,
};
use serde::Serialize;

use crate::doc::{
    load_family, parse_set, render_json, write_output, BitmaskDocument, FamilyDocument,
};
use crate::error::{CliError, CliResult};
use crate::suites::{replay, run_suite, suite_list, SuiteReport, SuiteRequest};

#[derive(Debug, Parser)]
#[command(
    name = "oshlab",
    version,
    about = "Shattering, order shattering and down-shifts of set families"
)]
pub struct Cli {
    /// Largest ground size for commands that enumerate subsets of [n].
    #[arg(long, global = true, env = "OSHLAB_MAX_GROUND")]
    pub max_ground: Option<u32>,
    /// Output format; defaults to json for families and tsv for reports.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the main output here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a closure of a family read from a JSON file (`-` for stdin).
    Closures {
        #[arg(value_enum)]
        which: Closure,
        input: PathBuf,
        /// Emit members as integer bitmasks.
        #[arg(long)]
        bitmask: bool,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// The l-Sperner criterion and witness construction.
    #[command(subcommand)]
    Sperner(SpernerCommand),
    /// Closed forms for unions of complete levels.
    #[command(subcommand)]
    Twolevel(TwoLevelCommand),
    /// Down-shift operations.
    #[command(subcommand)]
    Shift(ShiftCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Closure {
    Sh,
    St,
    OshDirect,
    OshShift,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name; see `--list`.
    #[arg(required_unless_present = "list")]
    pub suite: Option<String>,
    /// List the available suites.
    #[arg(long)]
    pub list: bool,
    /// Run for this ground size only.
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    pub n: Option<u32>,
    #[arg(long)]
    pub n_min: Option<u32>,
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Random families per ground size.
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Every family on [n] instead of random ones (n <= 4).
    #[arg(long)]
    pub exhaustive: bool,
    /// Probability that a random family contains a given subset.
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    /// Rerun the check on the counterexample of a saved JSON report.
    #[arg(long, conflicts_with = "list")]
    pub replay: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SpernerCommand {
    /// Print the exact sum and whether it is below ell.
    Criterion {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, default_value_t = 1)]
        ell: u32,
    },
    /// Build an l-Sperner family of 2^|set| sets order shattering the set.
    Construct {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, default_value_t = 1)]
        ell: u32,
        #[arg(long)]
        bitmask: bool,
    },
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub d: u32,
}

#[derive(Debug, Subcommand)]
pub enum TwoLevelCommand {
    /// Dominance-minimal order-shattered sets of levels a and a+d.
    Minimal(LevelArgs),
    /// Whether a set is order shattered by levels a and a+d.
    Member {
        #[command(flatten)]
        levels: LevelArgs,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Order-shattered sets of levels k-ell+1, ..., k.
    Consecutive {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        bitmask: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ShiftCommand {
    /// Every stage of T_n(...T_1(F)...).
    Trace { input: PathBuf },
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    /// Criterion fails, set is not a member, or a suite found a counterexample.
    Negative,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Negative => 2,
        }
    }
}

struct Ctx {
    max_ground: Option<u32>,
    format: Option<Format>,
    output: Option<PathBuf>,
}

impl Ctx {
    fn cap(&self) -> u32 {
        self.max_ground.unwrap_or(DEFAULT_MAX_GROUND)
    }

    fn check_cap(&self, n: u32) -> CliResult<()> {
        if n > self.cap() {
            return Err(Error::GroundTooLarge { n, cap: self.cap() }.into());
        }
        Ok(())
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        write_output(self.output.as_deref(), text)
    }

    fn emit_family(&self, f: &SetFamily, bitmask: bool) -> CliResult<()> {
        let text = match self.format.unwrap_or(Format::Json) {
            Format::Json if bitmask => render_json(&BitmaskDocument::from_family(f)),
            Format::Json => render_json(&FamilyDocument::from_family(f)),
            Format::Tsv => family_tsv(f, bitmask),
        };
        self.emit(&text)
    }

    fn report_format(&self) -> Format {
        self.format.unwrap_or(Format::Tsv)
    }
}

fn family_tsv(f: &SetFamily, bitmask: bool) -> String {
    let mut out = String::new();
    for s in f.iter() {
        if bitmask {
            let _ = writeln!(out, "{}", s.bits());
        } else {
            let _ = writeln!(out, "{}\t{}", s.len(), s);
        }
    }
    out
}

/// Runs one parsed command line.
pub fn run(cli: Cli) -> CliResult<Status> {
    let ctx = Ctx {
        max_ground: cli.max_ground,
        format: cli.format,
        output: cli.output,
    };
    match cli.command {
        Command::Closures {
            which,
            input,
            bitmask,
        } => closures(&ctx, which, &load_family(&input)?, bitmask),
        Command::Verify(args) => verify(&ctx, args),
        Command::Sperner(cmd) => sperner(&ctx, cmd),
        Command::Twolevel(cmd) => twolevel(&ctx, cmd),
        Command::Shift(ShiftCommand::Trace { input }) => trace(&ctx, &load_family(&input)?),
    }
}

fn closures(ctx: &Ctx, which: Closure, f: &SetFamily, bitmask: bool) -> CliResult<Status> {
    ctx.check_cap(f.ground())?;
    let result = match which {
        Closure::Sh => sh_all(f),
        Closure::St => st_all(f),
        Closure::OshDirect => osh_direct_with(
            f,
            OshOptions {
                max_ground: ctx.cap(),
                prune: false,
            },
        )?,
        Closure::OshShift => osh_via_shift(f),
    };
    ctx.emit_family(&result, bitmask)?;
    Ok(Status::Success)
}

fn verify(ctx: &Ctx, args: VerifyArgs) -> CliResult<Status> {
    if args.list {
        let mut out = String::new();
        for (name, about) in suite_list() {
            let _ = writeln!(out, "{name}\t{about}");
        }
        ctx.emit(&out)?;
        return Ok(Status::Success);
    }
    let suite = args.suite.expect("clap requires a suite without --list");
    if let Some(path) = &args.replay {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let report: SuiteReport = serde_json::from_str(&text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let Some(cx) = report.counterexample else {
            return Err(CliError::Usage(format!(
                "{} holds no counterexample",
                path.display()
            )));
        };
        let f = cx.family.to_family()?;
        return match replay(&suite, &f, ctx.cap())? {
            Some(again) => {
                ctx.emit(&format!("reproduced: {}\n", again.detail))?;
                Ok(Status::Negative)
            }
            None => {
                ctx.emit("not reproduced: the family passes\n")?;
                Ok(Status::Success)
            }
        };
    }
    let req = SuiteRequest {
        n: args.n,
        n_min: args.n_min,
        n_max: args.n_max,
        trials: args.trials,
        seed: args.seed,
        exhaustive: args.exhaustive,
        density: args.density,
        max_ground: ctx.max_ground,
    };
    let report = run_suite(&suite, &req)?;
    let text = match ctx.report_format() {
        Format::Json => render_json(&report),
        Format::Tsv => report_tsv(&report),
    };
    ctx.emit(&text)?;
    Ok(if report.ok() {
        Status::Success
    } else {
        Status::Negative
    })
}

fn report_tsv(r: &SuiteReport) -> String {
    let p = &r.params;
    let mut out = format!(
        "{}\t{}\tpassed={}\tfailed={}\tskipped={}\tn={}..={}\ttrials={}\tseed={}\texhaustive={}\t{:.2}s\n",
        r.suite,
        if r.ok() { "PASS" } else { "FAIL" },
        r.passed,
        r.failed,
        r.skipped,
        p.n_min,
        p.n_max,
        p.trials,
        p.seed,
        p.exhaustive,
        r.wall_time_secs
    );
    if let Some(cx) = &r.counterexample {
        let _ = writeln!(out, "counterexample\t{}", cx.detail);
        if let Some(t) = &cx.target {
            let _ = writeln!(
                out,
                "target\t{}",
                ElementSet::from_elements(t.iter().copied())
            );
        }
        out.push_str(&render_json(&cx.family));
    }
    out
}

#[derive(Serialize)]
struct CriterionReport {
    set: Vec<u32>,
    ell: u32,
    sum: String,
    holds: bool,
}

fn sperner(ctx: &Ctx, cmd: SpernerCommand) -> CliResult<Status> {
    match cmd {
        SpernerCommand::Criterion { set, ell } => {
            let a = parse_set(&set)?;
            if ell == 0 {
                return Err(Error::InvalidParams("ell must be positive".into()).into());
            }
            let sum = criterion_sum(a);
            let holds = sum.lt_integer(ell as u64);
            let text = match ctx.report_format() {
                Format::Json => render_json(&CriterionReport {
                    set: a.to_vec(),
                    ell,
                    sum: sum.to_string(),
                    holds,
                }),
                Format::Tsv => format!(
                    "set = {a}\tsum = {sum}\tell = {ell}\t{}\n",
                    if holds {
                        "criterion holds"
                    } else {
                        "criterion fails"
                    }
                ),
            };
            ctx.emit(&text)?;
            Ok(if holds {
                Status::Success
            } else {
                Status::Negative
            })
        }
        SpernerCommand::Construct { set, ell, bitmask } => {
            let a = parse_set(&set)?;
            let cap = ctx.max_ground.unwrap_or(SPERNER_MAX_GROUND);
            match construct_sperner_witness_with(a, ell, cap) {
                Ok(w) => {
                    w.check()?;
                    eprintln!(
                        "verified: {} sets on [{}], {}-Sperner, order shatters {}",
                        w.family.len(),
                        w.n(),
                        ell,
                        a
                    );
                    ctx.emit_family(&w.family, bitmask)?;
                    Ok(Status::Success)
                }
                Err(e @ Error::CriterionFails { .. }) => {
                    eprintln!("{e}");
                    Ok(Status::Negative)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn params(l: &LevelArgs) -> CliResult<TwoLevelParams> {
    Ok(TwoLevelParams::new(l.n, l.a, l.d)?)
}

#[derive(Serialize)]
struct MinimalRow {
    kind: String,
    set: Vec<u32>,
    t_min: u32,
}

impl From<&MinimalSet> for MinimalRow {
    fn from(m: &MinimalSet) -> Self {
        MinimalRow {
            kind: m.kind.to_string(),
            set: m.set.to_vec(),
            t_min: t_min(m.set),
        }
    }
}

#[derive(Serialize)]
struct MemberReport {
    set: Vec<u32>,
    member: bool,
    via: Option<MinimalRow>,
}

fn twolevel(ctx: &Ctx, cmd: TwoLevelCommand) -> CliResult<Status> {
    match cmd {
        TwoLevelCommand::Minimal(l) => {
            let closure = TwoLevelClosure::new(params(&l)?);
            let rows: Vec<MinimalRow> = closure.minimal.iter().map(MinimalRow::from).collect();
            let text = match ctx.report_format() {
                Format::Json => render_json(&rows),
                Format::Tsv => closure.minimal.iter().fold(String::new(), |mut out, m| {
                    let _ = writeln!(out, "{}\t{}\tt_min={}", m.set, m.kind, t_min(m.set));
                    out
                }),
            };
            ctx.emit(&text)?;
            Ok(Status::Success)
        }
        TwoLevelCommand::Member { levels, set } => {
            let p = params(&levels)?;
            let s = parse_set(&set)?;
            if !s.fits(p.n) {
                return Err(Error::ElementOutOfRange {
                    element: s.max().unwrap_or(0),
                    n: p.n,
                }
                .into());
            }
            let closure = TwoLevelClosure::new(p);
            let via = closure.dominating_minimal(s);
            let text = match ctx.report_format() {
                Format::Json => render_json(&MemberReport {
                    set: s.to_vec(),
                    member: via.is_some(),
                    via: via.map(MinimalRow::from),
                }),
                Format::Tsv => match via {
                    Some(m) => format!("true\tvia {} ({})\n", m.set, m.kind),
                    None => "false\n".to_string(),
                },
            };
            ctx.emit(&text)?;
            Ok(if via.is_some() {
                Status::Success
            } else {
                Status::Negative
            })
        }
        TwoLevelCommand::Consecutive { n, k, ell, bitmask } => {
            ctx.check_cap(n)?;
            let f = osh_consecutive_levels(n, k, ell)?;
            eprintln!("{} sets", f.len());
            ctx.emit_family(&f, bitmask)?;
            Ok(Status::Success)
        }
    }
}

#[derive(Serialize)]
struct TraceDocument {
    n: u32,
    stages: Vec<Vec<Vec<u32>>>,
}

fn trace(ctx: &Ctx, f: &SetFamily) -> CliResult<Status> {
    ctx.check_cap(f.ground())?;
    let t = shift_full(f);
    let text = match ctx.report_format() {
        Format::Json => render_json(&TraceDocument {
            n: f.ground(),
            stages: t
                .stages
                .iter()
                .map(|s| FamilyDocument::from_family(s).sets)
                .collect(),
        }),
        Format::Tsv => t
            .stages
            .iter()
            .enumerate()
            .fold(String::new(), |mut out, (h, s)| {
                let sets: Vec<String> = s.iter().map(|m| m.to_string()).collect();
                let _ = writeln!(out, "{h}\t{}", sets.join(" "));
                out
            }),
    };
    ctx.emit(&text)?;
    Ok(Status::Success)
}
