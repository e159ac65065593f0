mod decls;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dsc_core::cardinal::Cardinal;
use dsc_core::classify::{classify_countable, classify_general, Rule};
use dsc_core::dsc::DscDescription;
use dsc_core::embed::{dsc_embeds, embeds, Embedding};
use dsc_core::finite_oracle::{self, FinitePoset};
use dsc_core::ordertype::{Declarations, SibCount};
use dsc_core::syntax::{parse_dsc, parse_order_type};
use dsc_core::verify::{self, Params};
use dsc_core::witness::{self, IndexSet};

use report::{CliError, Outcome, Report, EXIT_DEFINITE, EXIT_RANGE};

#[derive(Debug, Parser)]
#[command(name = "dsc", version, about = "Embeddability and sibling numbers of direct sums of chains")]
struct Cli {
    /// JSON file declaring the chains referenced as X(name).
    #[arg(long, global = true)]
    decls: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Countable,
    General,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Padding,
    Bounded,
    Qj,
    Swap,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sibling number of a description.
    Classify {
        expr: String,
        #[arg(long, value_enum, default_value_t = Mode::General)]
        mode: Mode,
    },
    /// Whether the first description embeds in the second.
    Embeds { source: String, target: String },
    /// Whether two descriptions embed in each other.
    Equimorphic { left: String, right: String },
    /// Emit verified pairwise non-isomorphic siblings.
    Witnesses {
        expr: String,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Number of siblings (padding, swap).
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Comma-separated multiplicities of C^1..C^(n-1) (bounded).
        #[arg(long, default_value = "")]
        t: String,
        /// Index set: all, evens, odds, or h,h|start:period{r,r} (qj).
        #[arg(long, default_value = "evens")]
        j: String,
        /// Chain type to swap (swap).
        #[arg(long, default_value = "eta")]
        target: String,
    },
    /// Run a named verification suite.
    Verify {
        /// oracle-equivalence, sibling-uniqueness, lemma-biconditionals, quasi-order-laws or classifier-corpus.
        suite: String,
        #[arg(long, default_value_t = finite_oracle::SWEEP_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 250)]
        samples: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Brute-force checks on finite posets given as comma-separated chain sizes.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Search for an order embedding.
    Embeds {
        p: String,
        q: String,
        #[arg(long, default_value_t = finite_oracle::DEFAULT_CAP)]
        cap: usize,
    },
    /// Isomorphism test.
    Iso {
        p: String,
        q: String,
        #[arg(long, default_value_t = finite_oracle::DEFAULT_CAP)]
        cap: usize,
    },
    /// Every embedding found induces an injection on components.
    Injection {
        p: String,
        q: String,
        #[arg(long, default_value_t = finite_oracle::DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = finite_oracle::DEFAULT_WITNESS_BUDGET)]
        budget: usize,
    },
    /// Mutual embeddability implies isomorphism up to a total size.
    Mutual {
        #[arg(long, default_value_t = finite_oracle::SWEEP_CAP)]
        cap: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Embeds { .. } => "embeds",
            Command::Equimorphic { .. } => "equimorphic",
            Command::Witnesses { .. } => "witnesses",
            Command::Verify { .. } => "verify",
            Command::Oracle(_) => "oracle",
        }
    }
}

fn definite(inputs: Value, result: Value, summary: Vec<String>) -> Outcome {
    Outcome { inputs, result, certificate: None, exit_code: EXIT_DEFINITE, summary }
}

fn classify(d: &DscDescription, mode: Mode) -> Result<Outcome, CliError> {
    let (mode_name, result) = match mode {
        Mode::Countable => ("countable", classify_countable(d)?),
        Mode::General => ("general", classify_general(d)),
    };
    if result.certificate.rule != Rule::BoundsOnly {
        result.replay(d)?;
    }
    let (lo, hi) = result.count.bounds();
    let exit_code = match result.count {
        SibCount::Exact(_) => EXIT_DEFINITE,
        SibCount::Range(..) => EXIT_RANGE,
    };
    Ok(Outcome {
        inputs: json!({ "expr": d.to_string(), "mode": mode_name }),
        result: json!({
            "sib": result.count.to_string(),
            "exact": !result.count.is_range(),
            "lower": lo.to_string(),
            "upper": hi.to_string(),
        }),
        certificate: Some((&result.certificate).into()),
        exit_code,
        summary: vec![format!("Sib({d}) = {}", result.count)],
    })
}

fn embeds_outcome(src: &DscDescription, dst: &DscDescription) -> Result<Outcome, CliError> {
    let inputs = json!({ "source": src.to_string(), "target": dst.to_string() });
    Ok(match dsc_embeds(src, dst)? {
        Embedding::Embeds(a) => {
            let lines = a.render(src, dst);
            let mut summary = vec![format!("{src} embeds in {dst}")];
            summary.extend(lines.iter().map(|l| format!("  {l}")));
            definite(inputs, json!({ "embeds": true, "assignment": lines, "obstruction": null }), summary)
        }
        Embedding::Blocked(v) => {
            let summary = vec![
                format!("{src} does not embed in {dst}"),
                format!("  {} need {} targets, only {} available", v.sources.join(", "), v.demand, v.supply),
            ];
            definite(inputs, json!({ "embeds": false, "assignment": null, "obstruction": v }), summary)
        }
    })
}

fn equimorphic_outcome(a: &DscDescription, b: &DscDescription) -> Result<Outcome, CliError> {
    let (forward, backward) = (embeds(a, b)?, embeds(b, a)?);
    let both = forward && backward;
    let verdict = if both { "are" } else { "are not" };
    Ok(definite(
        json!({ "left": a.to_string(), "right": b.to_string() }),
        json!({ "equimorphic": both, "forward": forward, "backward": backward }),
        vec![format!("{a} and {b} {verdict} equimorphic")],
    ))
}

fn cardinals(list: &str) -> Result<Vec<Cardinal>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|e: dsc_core::cardinal::CardinalError| CliError::new("E_PARSE", e.to_string())))
        .collect()
}

fn witnesses(
    d: &DscDescription,
    kind: Kind,
    k: usize,
    t: &str,
    j: &str,
    target: &str,
    decls: &Declarations,
) -> Result<Outcome, CliError> {
    let (name, members, params) = match kind {
        Kind::Padding => ("padding", witness::padding_family(d, k)?, json!({ "k": k })),
        Kind::Bounded => {
            let t = cardinals(t)?;
            let rendered: Vec<String> = t.iter().map(ToString::to_string).collect();
            ("bounded", vec![witness::bounded_family(d, &t)?], json!({ "t": rendered }))
        }
        Kind::Qj => {
            let set: IndexSet = j.parse()?;
            ("qj", vec![witness::qj_family(d, &set)?], json!({ "j": set.to_string() }))
        }
        Kind::Swap => {
            let ty = parse_order_type(target, decls)?;
            ("swap", witness::component_swap_family(d, &ty, k)?, json!({ "target": ty.to_string(), "k": k }))
        }
    };
    let rendered: Vec<String> = members.iter().map(ToString::to_string).collect();
    let mut summary = vec![format!("{} verified {name} sibling(s) of {d}:", rendered.len())];
    summary.extend(rendered.iter().map(|m| format!("  {m}")));
    Ok(definite(
        json!({ "expr": d.to_string(), "kind": name, "params": params }),
        json!({ "members": rendered, "verified": true }),
        summary,
    ))
}

fn verify_outcome(suite: &str, params: Params) -> Result<Outcome, CliError> {
    let reports = verify::run_suite(suite, &params)?;
    let passed = reports.iter().all(verify::SuiteReport::passed);
    let summary: Vec<String> = reports
        .iter()
        .map(|r| {
            let tag = if r.passed() { "PASS" } else { "FAIL" };
            format!("{tag} {}: {} checked, {} failed", r.name, r.checked, r.failed)
        })
        .collect();
    if !passed {
        let first = reports.iter().flat_map(|r| r.failures.first()).next().cloned().unwrap_or_default();
        return Err(CliError::new("E_SUITE_FAILED", format!("{}; first failure: {first}", summary.join("; "))));
    }
    Ok(definite(
        json!({ "suite": suite, "cap": params.cap, "samples": params.samples, "seed": params.seed }),
        json!({ "passed": passed, "suites": reports }),
        summary,
    ))
}

fn poset(list: &str, cap: usize) -> Result<FinitePoset, CliError> {
    let chains = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|e| CliError::new("E_PARSE", format!("`{s}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FinitePoset::with_cap(chains, cap)?)
}

fn oracle(cmd: &OracleCommand) -> Result<Outcome, CliError> {
    match cmd {
        OracleCommand::Embeds { p, q, cap } => {
            let (a, b) = (poset(p, *cap)?, poset(q, *cap)?);
            let map = finite_oracle::brute_embeds_with_cap(&a, &b, *cap)?;
            let verdict = if map.is_some() { "embeds" } else { "does not embed" };
            Ok(definite(
                json!({ "p": a.chains(), "q": b.chains(), "cap": cap }),
                json!({ "embeds": map.is_some(), "map": map }),
                vec![format!("{p} {verdict} in {q}")],
            ))
        }
        OracleCommand::Iso { p, q, cap } => {
            let (a, b) = (poset(p, *cap)?, poset(q, *cap)?);
            let iso = finite_oracle::brute_iso(&a, &b)?;
            Ok(definite(
                json!({ "p": a.chains(), "q": b.chains(), "cap": cap }),
                json!({ "isomorphic": iso }),
                vec![format!("{p} and {q} isomorphic: {iso}")],
            ))
        }
        OracleCommand::Injection { p, q, cap, budget } => {
            let (a, b) = (poset(p, *cap)?, poset(q, *cap)?);
            let holds = finite_oracle::induced_injection_check_with_cap(&a, &b, *budget, *cap)?;
            Ok(definite(
                json!({ "p": a.chains(), "q": b.chains(), "cap": cap, "budget": budget }),
                json!({ "holds": holds }),
                vec![format!("every embedding of {p} in {q} is injective on components: {holds}")],
            ))
        }
        OracleCommand::Mutual { cap } => {
            let r = finite_oracle::check_mutual_embed_implies_iso(*cap)?;
            if !r.counterexamples.is_empty() {
                return Err(CliError::new("E_SUITE_FAILED", format!("{} counterexamples", r.counterexamples.len())));
            }
            Ok(definite(
                json!({ "cap": cap }),
                json!({ "pairs": r.pairs, "mutual": r.mutual, "counterexamples": 0 }),
                vec![format!("{} pairs, {} mutually embeddable, all isomorphic", r.pairs, r.mutual)],
            ))
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let decls = decls::load(cli.decls.as_deref())?;
    let parse = |s: &str| parse_dsc(s, &decls).map_err(CliError::from);
    match &cli.command {
        Command::Classify { expr, mode } => classify(&parse(expr)?, *mode),
        Command::Embeds { source, target } => embeds_outcome(&parse(source)?, &parse(target)?),
        Command::Equimorphic { left, right } => equimorphic_outcome(&parse(left)?, &parse(right)?),
        Command::Witnesses { expr, kind, k, t, j, target } => witnesses(&parse(expr)?, *kind, *k, t, j, target, &decls),
        Command::Verify { suite, cap, samples, seed } => {
            verify_outcome(suite, Params { cap: *cap, samples: *samples, seed: *seed })
        }
        Command::Oracle(cmd) => oracle(cmd),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    let report = Report::new(cli.command.name(), outcome, elapsed_ms);
    match cli.format {
        Format::Text => {
            let text = report.text();
            if report.error.is_some() {
                eprintln!("{text}");
            } else {
                println!("{text}");
            }
        }
        Format::Structured => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
    }
    ExitCode::from(report.exit_code as u8)
}
