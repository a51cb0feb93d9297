//! `cubesum`: Selmer dimensions, rank verdicts and cube-sum search for
//! n = ℓ₁^e₁ ℓ₂^e₂.
//!
//! Exit codes: 0 success, 1 usage, 2 input outside the supported domain,
//! 3 internal inconsistency (method mismatch, fixture or scan violation).

mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use cubesum_core::known_examples::check_all;
use cubesum_core::scan::scan;
use cubesum_core::{
    dim_selmer_closed, dim_selmer_direct, factor_two_primes_seeded, parse_n, rank_verdict, search_cube_sum,
    witness_to_point, CubeSumStatus, Error, RankVerdict, SelmerReport, TwoPrimeProfile,
};

use report::{ExamplesReport, Report, ScanReport, SearchJson, SelmerJson, TimingJson, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(name = "cubesum", version, about = "Selmer ranks and rational cube sums for n = l1^e1 * l2^e2")]
struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor n and show its splitting data.
    Classify { n: String },
    /// Compute dim Sel^phi(E_{16n^2}/Q(zeta)).
    Selmer {
        n: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        /// Also print the direct method's local-condition table.
        #[arg(long)]
        trace: bool,
    },
    /// Rank bounds, root number and cube-sum verdict for E_{-432n^2}.
    Rank { n: String },
    /// Look for x^3 + y^3 = n with denominators up to the bound.
    Search {
        n: String,
        #[arg(long, default_value_t = 100)]
        bound: u64,
    },
    /// Recompute every built-in literature example.
    #[command(alias = "paper-examples")]
    KnownExamples,
    /// Run the consistency checks on every admissible n with primes up to a bound.
    Scan {
        #[arg(long, default_value_t = 200)]
        max_prime: u64,
        /// Worker threads; 0 uses one per core.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Closed,
    Direct,
    Both,
}

enum Failure {
    Usage(String),
    Domain(Error),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain_error() {
            Failure::Domain(e)
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

fn hint(e: &Error) -> Option<&'static str> {
    Some(match e {
        Error::DivisibleByThree(_) => "only n prime to 3 is supported",
        Error::NotCubeFree { .. } => "divide out the cube; n and n/p^3 have the same cube-sum status",
        Error::WrongFactorCount { .. } => "n must be l1^e1 * l2^e2 with two distinct primes and e1, e2 in {1, 2}",
        Error::TooSmall(_) | Error::NotAnInteger(_) => "pass a positive decimal integer",
        _ => return None,
    })
}

struct Ctx {
    json: bool,
    seed: Option<u64>,
    start: Instant,
}

impl Ctx {
    fn profile(&self, raw: &str) -> Result<TwoPrimeProfile, Failure> {
        Ok(factor_two_primes_seeded(&parse_n(raw)?, self.seed)?)
    }

    fn timing(&self) -> Option<TimingJson> {
        Some(TimingJson { elapsed_ms: self.start.elapsed().as_secs_f64() * 1e3 })
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
        if self.json {
            let s = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
            println!("{s}");
        } else {
            println!("{}", text());
        }
        Ok(())
    }
}

/// Both dimensions, failing with exit 3 (and the trace on stderr) if they differ.
fn both_methods(profile: &TwoPrimeProfile) -> Result<(SelmerReport, SelmerReport), Failure> {
    let closed = dim_selmer_closed(profile)?;
    let direct = dim_selmer_direct(profile)?;
    if closed.dim != direct.dim {
        if let Some(t) = &direct.trace {
            eprintln!("{}", t.render());
        }
        return Err(Failure::Internal(format!(
            "closed form gives {} but direct enumeration gives {} for n = {}",
            closed.dim, direct.dim, profile.n
        )));
    }
    Ok((closed, direct))
}

fn selmer_text(closed: Option<&SelmerReport>, direct: Option<&SelmerReport>) -> String {
    let mut out = String::new();
    if let Some(c) = closed {
        out.push_str(&format!("closed form: dim = {}", c.dim));
        if let Some(rule) = &c.rule {
            out.push_str(&format!("  [{rule}]"));
        }
        out.push('\n');
    }
    if let Some(d) = direct {
        out.push_str(&format!("direct:      dim = {}  over generators {}\n", d.dim, d.generators.join(", ")));
        for b in &d.basis {
            out.push_str(&format!("  {}\n", b.label));
        }
    }
    out.trim_end().to_string()
}

fn cmd_classify(ctx: &Ctx, raw: &str) -> Result<(), Failure> {
    let p = ctx.profile(raw)?;
    let report = Report { profile: Some((&p).into()), timing: ctx.timing(), ..Report::new(&p.n) };
    ctx.emit(&report, || p.to_string())
}

fn cmd_selmer(ctx: &Ctx, raw: &str, method: MethodArg, trace: bool) -> Result<(), Failure> {
    let p = ctx.profile(raw)?;
    let (closed, direct) = match method {
        MethodArg::Closed => (Some(dim_selmer_closed(&p)?), None),
        MethodArg::Direct => (None, Some(dim_selmer_direct(&p)?)),
        MethodArg::Both => {
            let (c, d) = both_methods(&p)?;
            (Some(c), Some(d))
        }
    };
    let report = Report {
        profile: Some((&p).into()),
        selmer: Some(SelmerJson::from_reports(closed.as_ref(), direct.as_ref())),
        timing: ctx.timing(),
        ..Report::new(&p.n)
    };
    ctx.emit(&report, || {
        let mut s = format!("n = {} ({})\n{}", p.n, p.shape(), selmer_text(closed.as_ref(), direct.as_ref()));
        if trace {
            if let Some(t) = direct.as_ref().and_then(|d| d.trace.as_ref()) {
                s.push('\n');
                s.push_str(t.render().trim_end());
            }
        }
        s
    })
}

fn verdict_for(p: &TwoPrimeProfile) -> Result<(SelmerReport, SelmerReport, RankVerdict), Failure> {
    let (closed, direct) = both_methods(p)?;
    let verdict = rank_verdict(p, &direct)?;
    if !cubesum_core::consistency_check(&verdict) {
        return Err(Failure::Internal(format!("root number disagrees with t = {} for n = {}", verdict.selmer_dim, p.n)));
    }
    Ok((closed, direct, verdict))
}

fn cmd_rank(ctx: &Ctx, raw: &str) -> Result<(), Failure> {
    let p = ctx.profile(raw)?;
    let (closed, direct, verdict) = verdict_for(&p)?;
    let report = Report {
        profile: Some((&p).into()),
        selmer: Some(SelmerJson::from_reports(Some(&closed), Some(&direct))),
        verdict: Some((&verdict).into()),
        timing: ctx.timing(),
        ..Report::new(&p.n)
    };
    ctx.emit(&report, || format!("n = {} ({})\n{verdict}", p.n, p.shape()))
}

fn cmd_search(ctx: &Ctx, raw: &str, bound: u64) -> Result<(), Failure> {
    let n = parse_n(raw)?;
    if n < BigInt::from(1) {
        return Err(Error::TooSmall(n).into());
    }
    if bound == 0 {
        return Err(Failure::Usage("--bound must be at least 1".into()));
    }
    // the verdict is attached when n is in the supported family
    let classified = factor_two_primes_seeded(&n, ctx.seed).ok();
    let verdict = match &classified {
        Some(p) => Some(verdict_for(p)?.2),
        None => None,
    };
    let witness = search_cube_sum(&n, bound);
    let point = match &witness {
        Some(w) => {
            if !w.verifies(&n) {
                return Err(Failure::Internal(format!("witness {w} does not verify")));
            }
            let pt = witness_to_point(w, &n)?;
            if !pt.on_curve(&n) {
                return Err(Failure::Internal(format!("point {pt} is not on the curve")));
            }
            Some(pt)
        }
        None => None,
    };
    let report = Report {
        profile: classified.as_ref().map(Into::into),
        verdict: verdict.as_ref().map(Into::into),
        search: Some(SearchJson::new(bound, witness.as_ref(), point.as_ref())),
        timing: ctx.timing(),
        ..Report::new(&n)
    };
    ctx.emit(&report, || match (&witness, &point) {
        (Some(w), Some(pt)) => format!("n = {n} = {w}\npoint on v^2 = u^3 - 432n^2: (u, v) = {pt}"),
        _ => {
            let why = match verdict.as_ref().map(|v| v.cube_sum_status) {
                Some(CubeSumStatus::ProvenNotCubeSum) => "n is provably not a sum of two rational cubes (t = 1)",
                _ => "absence up to the bound is evidence only, not a proof",
            };
            format!("no witness with denominator <= {bound} for n = {n}\n{why}")
        }
    })
}

fn cmd_known_examples(ctx: &Ctx) -> Result<(), Failure> {
    let outcomes = check_all()?;
    let report = ExamplesReport {
        schema_version: SCHEMA_VERSION.into(),
        cases: outcomes.iter().map(Into::into).collect(),
        all_passed: outcomes.iter().all(|o| o.passed),
    };
    ctx.emit(&report, || {
        let mut s = format!(
            "{:<8} {:<10} {:>9} {:>10} {:>3} {:>6} {:>6}  {:<14} result\n",
            "group", "shape", "n", "expected", "t", "closed", "rank", "ranks if even"
        );
        for o in &outcomes {
            let ranks: Vec<String> = o.verdict.possible_ranks_if_sha_even.iter().map(u32::to_string).collect();
            s.push_str(&format!(
                "{:<8} {:<10} {:>9} {:>10} {:>3} {:>6} {:>6}  {:<14} {}{}\n",
                o.case.group,
                o.case.shape(),
                o.case.n(),
                o.case.t.map_or("-".into(), |t| t.to_string()),
                o.direct,
                o.closed,
                o.case.rank.map_or("-".into(), |r| r.to_string()),
                format!("{{{}}}", ranks.join(",")),
                if o.passed { "PASS" } else { "FAIL" },
                if o.notes.is_empty() { String::new() } else { format!("  {}", o.notes.join("; ")) }
            ));
        }
        let failed = outcomes.iter().filter(|o| !o.passed).count();
        s.push_str(&format!("{} of {} examples passed", outcomes.len() - failed, outcomes.len()));
        s
    })?;
    if report.all_passed {
        Ok(())
    } else {
        Err(Failure::Internal("some examples failed".into()))
    }
}

fn cmd_scan(ctx: &Ctx, max_prime: u64, jobs: usize) -> Result<(), Failure> {
    let summary = scan(max_prime, jobs)?;
    let report = ScanReport::from(&summary);
    ctx.emit(&report, || {
        let mut s = format!("checked {} values of n with primes <= {max_prime}\n", report.checked);
        for (t, count) in report.histogram.iter().enumerate().skip(1) {
            s.push_str(&format!("  t = {t}: {count}\n"));
        }
        s.push_str(&format!("  provably not cube sums: {}\n", report.proven_not_cube_sums));
        for v in &report.violations {
            s.push_str(&format!("  n = {}: {}\n", v.n, v.messages.join("; ")));
        }
        s.push_str(&format!("{} violations", report.violation_count));
        s
    })?;
    match report.violation_count {
        0 => Ok(()),
        k => Err(Failure::Internal(format!("{k} violations"))),
    }
}

fn run(cli: Cli, seed: Option<u64>) -> Result<(), Failure> {
    let ctx = Ctx { json: cli.json, seed, start: Instant::now() };
    match cli.command {
        Command::Classify { n } => cmd_classify(&ctx, &n),
        Command::Selmer { n, method, trace } => cmd_selmer(&ctx, &n, method, trace),
        Command::Rank { n } => cmd_rank(&ctx, &n),
        Command::Search { n, bound } => cmd_search(&ctx, &n, bound),
        Command::KnownExamples => cmd_known_examples(&ctx),
        Command::Scan { max_prime, jobs } => cmd_scan(&ctx, max_prime, jobs),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let seed = match std::env::var("SEED") {
        Ok(s) => match s.trim().parse::<u64>() {
            Ok(v) => Some(v),
            Err(_) => {
                eprintln!("error: SEED must be an unsigned 64-bit integer, got {s:?}");
                return ExitCode::from(1);
            }
        },
        Err(_) => None,
    };
    match run(cli, seed) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            if let Some(h) = hint(&e) {
                eprintln!("hint: {h}");
            }
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal inconsistency: {msg}");
            ExitCode::from(3)
        }
    }
}
