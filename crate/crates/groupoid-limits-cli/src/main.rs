//! Command-line front end for the cover-tower library.
//!
//! Subcommands validate input files, print chamber tables and norms, run
//! the embedding and separation diagnostics, replay the scripted worked
//! examples, and emit a consolidated JSON report. Exit codes: 0 when every
//! requested check passes, 1 when a check runs but fails, 2 when the input
//! itself is unusable. With `--format json` the output is a single JSON
//! document whose bytes depend only on the input and the seed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use groupoid_limits::algebra::{self, AlgebraElement, Domain};
use groupoid_limits::cocycle::{CocycleData, LimitCocycle};
use groupoid_limits::cover::{CoverSequence, MultiIndex};
use groupoid_limits::embedding::{can_separate, check_direct_limit, phi, reduced_norm_cylinder, support_witness};
use groupoid_limits::finite;
use groupoid_limits::format;
use groupoid_limits::limit::{self, basic_range, script_local_compactness_failure, BasicSet, LimitArrow};
use groupoid_limits::random;
use groupoid_limits::rational::ratio;
use groupoid_limits::region::{Interval, Region, Space};
use groupoid_limits::tol;
use groupoid_limits::{Error, Result};

/// Axiom sweeps cost fiber^4 per chamber; skip them past this fiber size.
const AXIOM_FIBER_CAP: usize = 16;
/// Longest signature listing printed per chamber in text mode.
const LIST_CAP: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "groupoid-limits",
    version,
    about = "Chamber decompositions, twisted convolution norms, and limit embeddings for eventually periodic cover towers"
)]
struct Cli {
    /// Output format; JSON output is byte-identical for identical input and seed.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a cover description, optionally with a twist and an element file.
    Validate(ValidateArgs),
    /// Print the chamber table of one level, with fibers and axiom checks.
    Chambers(ChambersArgs),
    /// Summing norm, reduced norm, and per-chamber blocks of an element.
    Norms(NormsArgs),
    /// Push seeded random elements into the limit algebra and compare norms.
    IsometryCheck(IsometryArgs),
    /// Locate the witness level and matrix unit supporting one limit arrow.
    SupportWitness(SupportArgs),
    /// Decide whether cylinder functions can tell two limit arrows apart.
    Separate(SeparateArgs),
    /// Matrix-tower diagnostics: dimensions and the direct-limit checks.
    Uhf(UhfArgs),
    /// Replay a scripted worked example and assert its pinned outcome.
    Example(ExampleArgs),
    /// Consolidated JSON report for one cover tower.
    Report(ReportArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Cover file path or built-in name (example_A, example_B, example_C, uhf(m1,m2,...)).
    #[arg(long)]
    input: String,
    /// Optional twist file, checked against the cover.
    #[arg(long)]
    cocycle: Option<PathBuf>,
    /// Optional element file, checked against the cover.
    #[arg(long)]
    element: Option<PathBuf>,
}

#[derive(Args)]
struct ChambersArgs {
    /// Cover file path or built-in name.
    #[arg(long)]
    input: String,
    /// Tower level to decompose.
    #[arg(long, default_value_t = 0)]
    level: usize,
}

#[derive(Args)]
struct NormsArgs {
    /// Cover file path or built-in name.
    #[arg(long)]
    input: String,
    /// Element file; its level selects the view.
    #[arg(long)]
    element: PathBuf,
    /// Optional twist file at the element's level; trivial when absent.
    #[arg(long)]
    cocycle: Option<PathBuf>,
}

#[derive(Args)]
struct IsometryArgs {
    /// Cover file path or built-in name.
    #[arg(long)]
    input: String,
    /// Level whose algebra is pushed into the limit.
    #[arg(long, default_value_t = 1)]
    level: usize,
    /// Seed for the element sampler and the default twist.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of random elements to push.
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Relative tolerance for the norm comparison, in (0, 1e-3].
    #[arg(long, default_value_t = tol::ISOMETRY)]
    tolerance: f64,
    /// Optional twist file; its level must not exceed --level.
    #[arg(long)]
    cocycle: Option<PathBuf>,
}

#[derive(Args)]
struct SupportArgs {
    /// Cover file path or built-in name.
    #[arg(long)]
    input: String,
    /// Arrow literal "(head|cycle, t, head|cycle)".
    arrow: String,
}

#[derive(Args)]
struct SeparateArgs {
    /// Cover file path or built-in name.
    #[arg(long)]
    input: String,
    /// First arrow literal.
    x: String,
    /// Second arrow literal.
    y: String,
    /// Deepest level probed for a separating cylinder.
    #[arg(long, default_value_t = 12)]
    max_level: usize,
}

#[derive(Args)]
struct UhfArgs {
    /// Point-space tower, usually a built-in uhf(m1,m2,...) name.
    #[arg(long, default_value = "uhf(2)")]
    input: String,
    /// Top level of the inclusion chain.
    #[arg(long, default_value_t = 4)]
    max_level: usize,
    /// Seed for the per-level element samples.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random elements exercised per level.
    #[arg(long, default_value_t = 3)]
    trials: usize,
}

#[derive(Args)]
struct ExampleArgs {
    /// Which scripted regression to run.
    name: ExampleName,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    /// Closure of the open core is not closed under products.
    #[value(name = "rem_sharp")]
    RemSharp,
    /// A basic set of the closed limit groupoid with a non-open range.
    #[value(name = "gcheck_not_etale")]
    GcheckNotEtale,
    /// Open-core points with no compact neighborhood in the closed groupoid.
    #[value(name = "ginfty_not_loc_compact")]
    GinftyNotLocCompact,
    /// Tail-locked units that no cylinder function separates.
    #[value(name = "separation")]
    Separation,
    /// The 2-adic matrix tower: dimensions and direct-limit checks.
    #[value(name = "uhf_2inf")]
    Uhf2Inf,
}

#[derive(Args)]
struct ReportArgs {
    /// Cover file path or built-in name.
    #[arg(long)]
    input: String,
    /// Deepest level summarized.
    #[arg(long, default_value_t = 2)]
    max_level: usize,
    /// Seed for the embedded isometry spot check.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Trials in the isometry spot check.
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Relative tolerance for the spot check, in (0, 1e-3].
    #[arg(long, default_value_t = tol::ISOMETRY)]
    tolerance: f64,
}

/// What one subcommand produced: a verdict, text lines, and a JSON document.
struct Outcome {
    ok: bool,
    lines: Vec<String>,
    json: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(out) => {
            match cli.format {
                OutputFormat::Text => {
                    for line in &out.lines {
                        println!("{line}");
                    }
                }
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&out.json).expect("report serializes"));
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Validate(a) => cmd_validate(a),
        Command::Chambers(a) => cmd_chambers(a),
        Command::Norms(a) => cmd_norms(a),
        Command::IsometryCheck(a) => cmd_isometry(a),
        Command::SupportWitness(a) => cmd_support(a),
        Command::Separate(a) => cmd_separate(a),
        Command::Uhf(a) => cmd_uhf(a),
        Command::Example(a) => cmd_example(a),
        Command::Report(a) => cmd_report(a),
    }
}

fn ensure_tolerance(t: f64) -> Result<()> {
    if t > 0.0 && t <= 1e-3 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("tolerance {t} lies outside (0, 1e-3]")))
    }
}

fn ensure_positive(name: &str, v: usize) -> Result<()> {
    if v >= 1 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{name} must be positive")))
    }
}

fn space_label(space: &Space) -> String {
    match space {
        Space::Finite { size } => format!("{size} discrete point(s)"),
        Space::Intervals { .. } => space.whole().to_string(),
    }
}

fn members_per_period(seq: &CoverSequence) -> Vec<usize> {
    (0..seq.prefix_len() + seq.cycle_len()).map(|k| seq.cover_at(k).len()).collect()
}

fn join_usize(v: &[usize]) -> String {
    v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", ")
}

fn list_indices<'a>(iter: impl Iterator<Item = &'a MultiIndex>) -> String {
    let all: Vec<String> = iter.map(|mi| mi.to_string()).collect();
    if all.len() > LIST_CAP {
        format!("{} ... (+{} more)", all[..LIST_CAP].join(" "), all.len() - LIST_CAP)
    } else {
        all.join(" ")
    }
}

fn cmd_validate(a: &ValidateArgs) -> Result<Outcome> {
    let seq = format::resolve_cover(&a.input)?;
    let mut lines = vec![
        format!("cover: {}", a.input),
        format!("space: {}", space_label(seq.space())),
        format!("prefix levels: {}, cycle length: {}", seq.prefix_len(), seq.cycle_len()),
        format!("members per level (one period): {}", join_usize(&members_per_period(&seq))),
    ];
    let mut level_summaries = Vec::new();
    for n in 0..=1usize {
        let view = seq.level_view(n)?;
        lines.push(format!(
            "level {n}: omega {}, {} chamber(s)",
            view.omega().len(),
            view.chambers().len()
        ));
        level_summaries.push(json!({
            "level": n,
            "omega": view.omega().len(),
            "chambers": view.chambers().len(),
        }));
    }
    let mut doc = json!({
        "cover": {
            "input": a.input,
            "space": space_label(seq.space()),
            "prefix_levels": seq.prefix_len(),
            "cycle_length": seq.cycle_len(),
            "members_per_period": members_per_period(&seq),
            "levels": level_summaries,
        },
        "valid": true,
    });
    if let Some(path) = &a.cocycle {
        let sigma = format::load_cocycle(&seq, path)?;
        lines.push(format!("cocycle: level {}, {} table(s), verified", sigma.level, sigma.tables.len()));
        doc["cocycle"] = json!({ "level": sigma.level, "tables": sigma.tables.len() });
    }
    if let Some(path) = &a.element {
        let f = format::load_element(&seq, path)?;
        let domain = match f.domain {
            Domain::Open => "open",
            Domain::Closed => "closed",
        };
        lines.push(format!("element: level {}, {domain} domain, {} block(s)", f.level, f.blocks.len()));
        doc["element"] = json!({ "level": f.level, "domain": domain, "blocks": f.blocks.len() });
    }
    lines.push("valid: true".into());
    Ok(Outcome { ok: true, lines, json: doc })
}

fn cmd_chambers(a: &ChambersArgs) -> Result<Outcome> {
    let seq = format::resolve_cover(&a.input)?;
    let view = seq.level_view(a.level)?;
    let mut lines = vec![format!(
        "level {}: omega {}, {} chamber(s)",
        a.level,
        view.omega().len(),
        view.chambers().len()
    )];
    let mut chambers = Vec::new();
    for (c, ch) in view.chambers().iter().enumerate() {
        lines.push(format!(
            "chamber {c}: {}, open fiber {}, closed fiber {}",
            ch.region,
            ch.open_sig.len(),
            ch.closed_sig.len()
        ));
        lines.push(format!("  open: {}", list_indices(view.open_sig_indices(c))));
        lines.push(format!("  closed: {}", list_indices(view.closed_sig_indices(c))));
        chambers.push(json!({
            "index": c,
            "region": ch.region.to_string(),
            "open": view.open_sig_indices(c).map(|m| m.to_string()).collect::<Vec<_>>(),
            "closed": view.closed_sig_indices(c).map(|m| m.to_string()).collect::<Vec<_>>(),
        }));
    }
    let widest = view.chambers().iter().map(|ch| ch.open_sig.len()).max().unwrap_or(0);
    let mut doc = json!({
        "level": a.level,
        "omega": view.omega().len(),
        "chambers": chambers,
    });
    let ok;
    if widest <= AXIOM_FIBER_CAP {
        let rep = finite::groupoid_report(&seq, &view)?;
        ok = rep.axioms_hold;
        lines.push(format!(
            "axioms hold: {} ({} composable triples checked)",
            rep.axioms_hold, rep.composable_triples_checked
        ));
        doc["axioms_hold"] = json!(rep.axioms_hold);
        doc["composable_triples"] = json!(rep.composable_triples_checked);
    } else {
        ok = true;
        lines.push(format!("axioms: skipped (largest open fiber {widest} exceeds {AXIOM_FIBER_CAP})"));
        doc["axioms_hold"] = Value::Null;
    }
    Ok(Outcome { ok, lines, json: doc })
}

fn cmd_norms(a: &NormsArgs) -> Result<Outcome> {
    let seq = format::resolve_cover(&a.input)?;
    let f = format::load_element(&seq, &a.element)?;
    let view = seq.level_view(f.level)?;
    let sigma = match &a.cocycle {
        Some(path) => format::load_cocycle(&seq, path)?,
        None => CocycleData::trivial(&view),
    };
    sigma.check_alignment(&view)?;
    let summing = algebra::i_norm(&f);
    let reduced = algebra::reduced_norm(&view, &f, &sigma)?;
    let domain = match f.domain {
        Domain::Open => "open",
        Domain::Closed => "closed",
    };
    let mut lines = vec![
        format!("element: level {}, {domain} domain", f.level),
        format!("summing norm: {summing}"),
        format!("reduced norm: {reduced}"),
    ];
    let mut blocks = Vec::new();
    for (c, ch) in view.chambers().iter().enumerate() {
        let d = f.domain.fiber(ch).len();
        let block_norm = if d == 0 {
            0.0
        } else {
            algebra::induced_block(&view, &f, &sigma, c, 0)?.operator_norm()
        };
        lines.push(format!("chamber {c}: {}, fiber {d}, block norm {block_norm}", ch.region));
        blocks.push(json!({
            "chamber": c,
            "region": ch.region.to_string(),
            "fiber": d,
            "block_norm": block_norm,
        }));
    }
    let doc = json!({
        "level": f.level,
        "domain": domain,
        "summing_norm": summing,
        "reduced_norm": reduced,
        "chambers": blocks,
    });
    Ok(Outcome { ok: true, lines, json: doc })
}

fn cmd_isometry(a: &IsometryArgs) -> Result<Outcome> {
    ensure_positive("trials", a.trials)?;
    ensure_tolerance(a.tolerance)?;
    let seq = format::resolve_cover(&a.input)?;
    let view = seq.level_view(a.level)?;
    let (twist, twist_label) = match &a.cocycle {
        Some(path) => {
            let data = format::load_cocycle(&seq, path)?;
            if data.level > a.level {
                return Err(Error::Precondition(format!(
                    "twist level {} exceeds the requested level {}",
                    data.level, a.level
                )));
            }
            let label = format!("from file, based at level {}", data.level);
            (LimitCocycle::new(data.level, data)?, label)
        }
        None => (
            LimitCocycle::new(a.level, random::seeded_cocycle(&view, a.seed))?,
            format!("seeded coboundary (seed {})", a.seed),
        ),
    };
    let mut rng = random::rng_from(a.seed);
    let mut passed = 0usize;
    let mut worst: f64 = 0.0;
    for _ in 0..a.trials {
        let f = random::element(&mut rng, &view, Domain::Open);
        let cyl = phi(&seq, &view, &f, &twist)?;
        let level_norm = algebra::reduced_norm(&view, &f, cyl.sigma())?;
        let limit_norm = reduced_norm_cylinder(&seq, &view, &cyl)?;
        let err = (level_norm - limit_norm).abs();
        worst = worst.max(err / level_norm.max(1.0));
        if err <= a.tolerance * level_norm.max(1.0) {
            passed += 1;
        }
    }
    let ok = passed == a.trials;
    let lines = vec![
        format!("cover: {}, level {}", a.input, a.level),
        format!("twist: {twist_label}"),
        format!("passed: {passed}/{} within tolerance {:e}", a.trials, a.tolerance),
        format!("worst relative deviation: {:.3e}", worst),
        format!("isometry: {}", if ok { "PASS" } else { "FAIL" }),
    ];
    let doc = json!({
        "input": a.input,
        "level": a.level,
        "seed": a.seed,
        "trials": a.trials,
        "passed": passed,
        "tolerance": a.tolerance,
        "worst_relative_deviation": worst,
        "ok": ok,
    });
    Ok(Outcome { ok, lines, json: doc })
}

fn cmd_support(a: &SupportArgs) -> Result<Outcome> {
    let seq = format::resolve_cover(&a.input)?;
    let x = LimitArrow::parse(&a.arrow)?;
    let w = support_witness(&seq, &x)?;
    let ok = w.value.re == 1.0 && w.value.im == 0.0;
    let view = seq.level_view(w.level)?;
    let lines = vec![
        format!("arrow: {}", w.arrow),
        format!("witness level: {}", w.level),
        format!("chamber: {} ({})", w.chamber, view.chamber(w.chamber).region),
        format!("matrix unit: ({}, {})", w.range_prefix, w.source_prefix),
        format!("value: {}", w.value),
    ];
    let doc = json!({
        "arrow": w.arrow.to_string(),
        "level": w.level,
        "chamber": w.chamber,
        "region": view.chamber(w.chamber).region.to_string(),
        "range_prefix": w.range_prefix.to_string(),
        "source_prefix": w.source_prefix.to_string(),
        "value": [w.value.re, w.value.im],
        "ok": ok,
    });
    Ok(Outcome { ok, lines, json: doc })
}

fn cmd_separate(a: &SeparateArgs) -> Result<Outcome> {
    let seq = format::resolve_cover(&a.input)?;
    let x = LimitArrow::parse(&a.x)?;
    let y = LimitArrow::parse(&a.y)?;
    let separated = can_separate(&seq, &x, &y, a.max_level)?;
    let witness = if separated {
        (0..=a.max_level).find(|&k| can_separate(&seq, &x, &y, k).unwrap_or(false))
    } else {
        None
    };
    let mut lines = vec![format!("x: {x}"), format!("y: {y}")];
    match witness {
        Some(k) => lines.push(format!("separated: true at level {k}")),
        None => lines.push(format!(
            "separated: false (no cylinder distinguishes them through level {})",
            a.max_level
        )),
    }
    let doc = json!({
        "x": x.to_string(),
        "y": y.to_string(),
        "max_level": a.max_level,
        "separated": separated,
        "witness_level": witness,
    });
    Ok(Outcome { ok: true, lines, json: doc })
}

fn cmd_uhf(a: &UhfArgs) -> Result<Outcome> {
    ensure_positive("max-level", a.max_level)?;
    ensure_positive("trials", a.trials)?;
    let seq = format::resolve_cover(&a.input)?;
    let report = check_direct_limit(&seq, a.max_level, a.trials, a.seed)?;
    let mut lines = vec![
        format!("tower: {}", a.input),
        format!("dimensions through level {}: {}", a.max_level, join_usize(&report.dims)),
    ];
    let mut levels = Vec::new();
    for lc in &report.levels {
        lines.push(format!(
            "level {}: eval agree {}, norms match {}, star respected {}, inclusion isometric {}",
            lc.level, lc.eval_agrees, lc.norms_match, lc.star_respected, lc.inclusion_isometric
        ));
        levels.push(json!({
            "level": lc.level,
            "dim": lc.dim,
            "eval_agrees": lc.eval_agrees,
            "norms_match": lc.norms_match,
            "star_respected": lc.star_respected,
            "inclusion_isometric": lc.inclusion_isometric,
        }));
    }
    lines.push(format!("direct limit: {}", if report.holds { "PASS" } else { "FAIL" }));
    let doc = json!({
        "tower": a.input,
        "max_level": a.max_level,
        "seed": a.seed,
        "trials": a.trials,
        "dimensions": report.dims,
        "levels": levels,
        "holds": report.holds,
    });
    Ok(Outcome { ok: report.holds, lines, json: doc })
}

fn cmd_report(a: &ReportArgs) -> Result<Outcome> {
    ensure_positive("max-level", a.max_level)?;
    ensure_positive("trials", a.trials)?;
    ensure_tolerance(a.tolerance)?;
    let seq = format::resolve_cover(&a.input)?;
    let mut levels = Vec::new();
    let mut all_ok = true;
    for n in 0..=a.max_level {
        let view = seq.level_view(n)?;
        let widest = view.chambers().iter().map(|ch| ch.open_sig.len()).max().unwrap_or(0);
        let axioms = if widest <= AXIOM_FIBER_CAP {
            let rep = finite::groupoid_report(&seq, &view)?;
            all_ok &= rep.axioms_hold;
            json!(rep.axioms_hold)
        } else {
            Value::Null
        };
        let ident = AlgebraElement::identity(&view, Domain::Open);
        let reduced = algebra::reduced_norm(&view, &ident, &CocycleData::trivial(&view))?;
        levels.push(json!({
            "level": n,
            "omega": view.omega().len(),
            "chambers": view.chambers().len(),
            "axioms_hold": axioms,
            "identity_summing_norm": algebra::i_norm(&ident),
            "identity_reduced_norm": reduced,
        }));
    }
    let lvl = 1.min(a.max_level);
    let view = seq.level_view(lvl)?;
    let twist = LimitCocycle::new(lvl, random::seeded_cocycle(&view, a.seed))?;
    let mut rng = random::rng_from(a.seed);
    let mut passed = 0usize;
    for _ in 0..a.trials {
        let f = random::element(&mut rng, &view, Domain::Open);
        let cyl = phi(&seq, &view, &f, &twist)?;
        let level_norm = algebra::reduced_norm(&view, &f, cyl.sigma())?;
        let limit_norm = reduced_norm_cylinder(&seq, &view, &cyl)?;
        if (level_norm - limit_norm).abs() <= a.tolerance * level_norm.max(1.0) {
            passed += 1;
        }
    }
    all_ok &= passed == a.trials;
    let doc = json!({
        "input": a.input,
        "space": space_label(seq.space()),
        "prefix_levels": seq.prefix_len(),
        "cycle_length": seq.cycle_len(),
        "members_per_period": members_per_period(&seq),
        "levels": levels,
        "isometry": {
            "level": lvl,
            "seed": a.seed,
            "trials": a.trials,
            "passed": passed,
            "tolerance": a.tolerance,
        },
        "ok": all_ok,
    });
    let text = serde_json::to_string_pretty(&doc).expect("report serializes");
    Ok(Outcome { ok: all_ok, lines: vec![text], json: doc })
}

/// One pinned assertion inside a scripted example.
struct Check {
    label: String,
    got: Value,
    expected: Value,
}

impl Check {
    fn bool(label: &str, got: bool, expected: bool) -> Check {
        Check { label: label.into(), got: json!(got), expected: json!(expected) }
    }

    fn ok(&self) -> bool {
        self.got == self.expected
    }
}

fn finish_example(name: &str, mut lines: Vec<String>, checks: Vec<Check>) -> Outcome {
    let ok = checks.iter().all(Check::ok);
    for c in &checks {
        lines.push(format!("{}: {} (expected {})", c.label, c.got, c.expected));
    }
    lines.push(format!("result: {}", if ok { "PASS" } else { "FAIL" }));
    let doc = json!({
        "name": name,
        "checks": checks
            .iter()
            .map(|c| json!({
                "label": c.label,
                "got": c.got,
                "expected": c.expected,
                "ok": c.ok(),
            }))
            .collect::<Vec<_>>(),
        "ok": ok,
    });
    Outcome { ok, lines, json: doc }
}

fn cmd_example(a: &ExampleArgs) -> Result<Outcome> {
    match a.name {
        ExampleName::RemSharp => example_rem_sharp(),
        ExampleName::GcheckNotEtale => example_gcheck(),
        ExampleName::GinftyNotLocCompact => example_ginfty(),
        ExampleName::Separation => example_separation(),
        ExampleName::Uhf2Inf => example_uhf(),
    }
}

fn example_rem_sharp() -> Result<Outcome> {
    let seq = format::resolve_cover("example_A")?;
    let g = LimitArrow::parse("(0|2, 0, |2)")?;
    let x = LimitArrow::parse("(0|2, 0, |2)")?;
    let y = LimitArrow::parse("(|2, 0, 1|2)")?;
    let z = LimitArrow::parse("(0|2, 0, 1|2)")?;
    let lines = vec![
        "cover: example_A".to_string(),
        format!("g = {g}"),
        format!("x = {x}, y = {y}, z = x.y = {z}"),
    ];
    let composed = limit::compose_limit(&x, &y);
    let checks = vec![
        Check::bool("g in open core", limit::in_open_core(&seq, &g)?, false),
        Check::bool("g in closure of open core", limit::in_open_core_closure(&seq, &g)?, true),
        Check::bool("g in limit groupoid", limit::in_limit(&seq, &g)?.is_some(), false),
        Check::bool("x in closure of open core", limit::in_open_core_closure(&seq, &x)?, true),
        Check::bool("y in closure of open core", limit::in_open_core_closure(&seq, &y)?, true),
        Check::bool("x.y composes to z", composed.as_ref() == Some(&z), true),
        Check::bool("z in closed core", limit::in_closed_core(&seq, &z)?, true),
        Check::bool("z in closure of open core", limit::in_open_core_closure(&seq, &z)?, false),
    ];
    Ok(finish_example("rem_sharp", lines, checks))
}

fn example_gcheck() -> Result<Outcome> {
    let seq = format::resolve_cover("example_B")?;
    let window = Region::from_intervals(vec![Interval::new(ratio(1, 4), ratio(3, 4), false, false)]);
    let set = BasicSet::new(&seq, MultiIndex(vec![0]), MultiIndex(vec![1]), window)?;
    let r = basic_range(&seq, &set)?;
    let expected = Region::from_intervals(vec![Interval::new(ratio(1, 2), ratio(3, 4), true, false)]);
    let lines = vec![
        "cover: example_B".to_string(),
        "basic set: range prefix (0), source prefix (1), window (1/4,3/4)".to_string(),
        format!("range {}, relatively open: {}", r.range, r.relatively_open),
        format!("footprint: {}", r.footprint),
    ];
    let checks = vec![
        Check::bool("range equals [1/2,3/4)", r.range == expected, true),
        Check::bool("range relatively open in the unit space", r.relatively_open, false),
        Check::bool("footprint is the whole space", r.footprint == seq.space().whole(), true),
    ];
    Ok(finish_example("gcheck_not_etale", lines, checks))
}

fn example_ginfty() -> Result<Outcome> {
    let seq = format::resolve_cover("example_C")?;
    let report = script_local_compactness_failure(&seq)?;
    let approach_ok = report.approach_in_open_core.iter().all(|&(_, k, m)| m && (3..=10).contains(&k))
        && report.approach_in_open_core.len() == 3 * 8;
    let limits_ok = report.limit_in_closed_core.iter().all(|&(_, m)| m)
        && report.limit_in_open_core.iter().all(|&(_, m)| !m);
    let lines = vec![
        "cover: example_C".to_string(),
        format!("approach arrows checked: {}", report.approach_in_open_core.len()),
        format!("limit arrows checked: {}", report.limit_in_closed_core.len()),
    ];
    let checks = vec![
        Check::bool("every approach arrow lies in the open core", approach_ok, true),
        Check::bool("every declared limit is closed-core only", limits_ok, true),
        Check::bool("the diagonal unit lies in the open core", report.diagonal_in_open_core, true),
        Check::bool("script verdict", report.holds, true),
    ];
    Ok(finish_example("ginfty_not_loc_compact", lines, checks))
}

fn example_separation() -> Result<Outcome> {
    let seq = format::resolve_cover("example_A")?;
    let x = LimitArrow::parse("(2,0|2, 0, 2,0|2)")?;
    let y = LimitArrow::parse("(2,1|2, 0, 2,1|2)")?;
    let lines = vec!["cover: example_A".to_string(), format!("x = {x}"), format!("y = {y}")];
    let mut never = true;
    for max_level in [0usize, 3, 12] {
        never &= !can_separate(&seq, &x, &y, max_level)?;
    }
    let checks = vec![
        Check::bool("x lies in the limit groupoid", limit::in_limit(&seq, &x)? == Some(0), true),
        Check::bool("y lies in the limit groupoid", limit::in_limit(&seq, &y)? == Some(0), true),
        Check::bool("no cylinder separates them through level 12", never, true),
    ];
    Ok(finish_example("separation", lines, checks))
}

fn example_uhf() -> Result<Outcome> {
    let seq = format::resolve_cover("uhf(2)")?;
    let dims: Vec<usize> = (0..=6usize)
        .map(|n| seq.level_view(n).map(|v| v.omega().len()))
        .collect::<Result<Vec<_>>>()?;
    let dims_ok = dims.iter().enumerate().all(|(n, &d)| d == 1 << (n + 1));
    let report = check_direct_limit(&seq, 3, 2, 42)?;
    let lines = vec![
        "tower: uhf(2)".to_string(),
        format!("dimensions through level 6: {}", join_usize(&dims)),
    ];
    let checks = vec![
        Check::bool("dimensions double at every level", dims_ok, true),
        Check::bool("direct-limit checks hold", report.holds, true),
    ];
    Ok(finish_example("uhf_2inf", lines, checks))
}
