use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::Parser;
use goodstein_core::checks::{self, SuiteReport};
use goodstein_core::export;
use goodstein_core::goodstein::{self, BaseSchedule, DominationCertificate, GoodsteinTrace};
use goodstein_core::io;
use goodstein_core::numeral::{self, Numeral};
use goodstein_core::ordinal::{self, Ordinal};
use goodstein_core::slowdown::pipeline::{self, EvidenceStatus, SequencePrefix};
use goodstein_core::slowdown::{clock, GrzLevel};
use goodstein_core::{Error, Limits, Natural};
use num_bigint::BigUint;
use serde_json::{json, Value};

mod cli;

use cli::{Cli, Command, Format, GsCommand, NumCommand, OrdCommand, PipeCommand, Suite};

const OK: u8 = 0;
const VERIFICATION_FAILED: u8 = 1;
const USAGE: u8 = 2;
const RESOURCE: u8 = 3;

/// What a command prints and how it exits.
struct Outcome {
    output: String,
    code: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: OK }
    }

    fn with_code(output: String, code: u8) -> Self {
        Outcome { output, code }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        _ if err.is_resource() => RESOURCE,
        Error::InvariantViolation { .. } => VERIFICATION_FAILED,
        Error::AtLine { source, .. } => exit_code(source),
        _ => USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Context::new(&cli);
    match run(&ctx, cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            let _ = std::io::stdout().flush();
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

struct Context {
    format: Format,
    limits: Limits,
    seed: u64,
}

impl Context {
    fn new(cli: &Cli) -> Self {
        let g = &cli.global;
        Context {
            format: g.format,
            limits: Limits {
                bit_budget: g.bit_budget,
                expansion_cap: g.expansion_cap,
                max_steps: g.max_steps,
                ..Limits::default()
            },
            seed: g.seed,
        }
    }

    /// A single value: bare in text, `{"result": …}` in JSON, one column in CSV.
    fn scalar(&self, text: String, json: Value) -> String {
        match self.format {
            Format::Text => format!("{text}\n"),
            Format::Json => export::to_text(&json!({ "result": json })),
            Format::Csv => format!("result\n{text}\n"),
        }
    }
}

fn run(ctx: &Context, command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Ord(cmd) => ord(ctx, cmd),
        Command::Num(cmd) => num(ctx, cmd),
        Command::Gs(cmd) => gs(ctx, cmd),
        Command::Pipe(cmd) => pipe(ctx, cmd),
        Command::Check { suite } => check(ctx, suite),
    }
}

fn parse_natural(text: &str) -> Result<Natural, Error> {
    let trimmed = text.trim();
    if trimmed.is_empty() || !trimmed.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Syntax {
            position: 0,
            message: format!("expected a natural number, got {text:?}"),
        });
    }
    Ok(trimmed.parse::<BigUint>().expect("digits only"))
}

/// A decimal number, or a term over `b` read at `base`.
fn numeral_arg(text: &str, base: &Natural) -> Result<Numeral, Error> {
    match parse_natural(text) {
        Ok(m) => numeral::decompose(&m, base),
        Err(_) => Numeral::parse(base.clone(), text),
    }
}

fn parse_schedule(text: &str) -> Result<BaseSchedule, Error> {
    let bad = || Error::Syntax {
        position: 0,
        message: format!("expected shift:C, constant:B or table:B0,B1,..., got {text:?}"),
    };
    let (kind, params) = text.split_once(':').ok_or_else(bad)?;
    match kind {
        "shift" => Ok(BaseSchedule::Shift(parse_natural(params)?)),
        "constant" => Ok(BaseSchedule::Constant(parse_natural(params)?)),
        "table" => Ok(BaseSchedule::Table(
            params.split(',').map(parse_natural).collect::<Result<_, _>>()?,
        )),
        _ => Err(bad()),
    }
}

fn ord(ctx: &Context, cmd: OrdCommand) -> Result<Outcome, Error> {
    let term = |alpha: Ordinal| {
        let text = alpha.render();
        ctx.scalar(text.clone(), json!(text))
    };
    let natural = |n: Natural| ctx.scalar(n.to_string(), export::natural_json(&n));
    let output = match cmd {
        OrdCommand::Cmp { a, b } => {
            let label = match ordinal::compare(&Ordinal::parse(&a)?, &Ordinal::parse(&b)?) {
                std::cmp::Ordering::Less => "LT",
                std::cmp::Ordering::Equal => "EQ",
                std::cmp::Ordering::Greater => "GT",
            };
            ctx.scalar(label.into(), json!(label))
        }
        OrdCommand::Add { a, b } => term(ordinal::add(&Ordinal::parse(&a)?, &Ordinal::parse(&b)?)),
        OrdCommand::Mul { a, b } => term(ordinal::omega_power_mul(&Ordinal::parse(&a)?, &Ordinal::parse(&b)?)),
        OrdCommand::Len { a } => natural(ordinal::length(&Ordinal::parse(&a)?)),
        OrdCommand::Ko { a } => natural(ordinal::max_coefficient(&Ordinal::parse(&a)?)),
        OrdCommand::Tower { n } => term(ordinal::omega_tower_capped(n, ctx.limits.node_cap)?),
        OrdCommand::Height { a } => natural(Natural::from(ordinal::tower_height(&Ordinal::parse(&a)?))),
    };
    Ok(Outcome::ok(output))
}

fn numeral_output(ctx: &Context, h: &Numeral, eval: bool) -> Result<String, Error> {
    if eval {
        let value = numeral::evaluate(h, ctx.limits.bit_budget)?;
        return Ok(ctx.scalar(value.to_string(), export::natural_json(&value)));
    }
    Ok(match ctx.format {
        Format::Text => format!("{h}\n"),
        Format::Json => export::to_text(&export::numeral_json(h, ctx.limits.bit_budget)),
        Format::Csv => {
            let value = h
                .value_within(ctx.limits.bit_budget)
                .map_or_else(|| "big".to_string(), |v| v.to_string());
            format!("base,value,term\n{},{value},{h}\n", h.base())
        }
    })
}

fn num(ctx: &Context, cmd: NumCommand) -> Result<Outcome, Error> {
    let output = match cmd {
        NumCommand::Decompose { m, base } => {
            let h = numeral::decompose(&parse_natural(&m)?, &parse_natural(&base)?)?;
            numeral_output(ctx, &h, false)?
        }
        NumCommand::Shift { m, from, to, eval } => {
            let h = numeral_arg(&m, &parse_natural(&from)?)?;
            numeral_output(ctx, &numeral::base_shift(&h, &parse_natural(&to)?)?, eval)?
        }
        NumCommand::ToOrd { m, base } => {
            let alpha = numeral::to_ordinal(&numeral_arg(&m, &parse_natural(&base)?)?);
            ctx.scalar(alpha.render(), json!(alpha.render()))
        }
        NumCommand::FromOrd { a, base, eval } => {
            let h = numeral::from_ordinal(&Ordinal::parse(&a)?, &parse_natural(&base)?)?;
            numeral_output(ctx, &h, eval)?
        }
        NumCommand::Dec { m, base, eval } => {
            let h = numeral_arg(&m, &parse_natural(&base)?)?;
            numeral_output(ctx, &numeral::decrement(&h, ctx.limits.expansion_cap)?, eval)?
        }
    };
    Ok(Outcome::ok(output))
}

fn trace_output(ctx: &Context, trace: &GoodsteinTrace) -> String {
    let budget = ctx.limits.bit_budget;
    match ctx.format {
        Format::Json => export::to_text(&export::trace_json(trace, budget)),
        Format::Csv => export::trace_csv(trace, budget),
        Format::Text => {
            let mut out = String::new();
            for (i, h) in trace.steps.iter().enumerate() {
                let value = h.value_within(budget).map_or_else(|| "big".to_string(), |v| v.to_string());
                writeln!(out, "{i}\t{}\t{value}\t{h}", h.base()).unwrap();
            }
            match (trace.termination_index, &trace.truncated) {
                (Some(k), _) => writeln!(out, "terminated at index {k}").unwrap(),
                (None, Some(err)) => writeln!(out, "stopped at step {}: {err}", trace.len() - 1).unwrap(),
                (None, None) => writeln!(out, "not terminated by step {}", trace.len() - 1).unwrap(),
            }
            out
        }
    }
}

fn certificate_code(cert: &DominationCertificate) -> u8 {
    if cert.all_pass() {
        OK
    } else {
        VERIFICATION_FAILED
    }
}

fn certificate_text(cert: &DominationCertificate) -> String {
    let mut out = String::new();
    for r in &cert.records {
        writeln!(out, "{}\t{}\t{}\t{}\t{}", r.index, r.base, r.verdict.as_str(), r.target, r.image).unwrap();
    }
    match cert.first_failure() {
        None => writeln!(out, "all {} indices pass", cert.records.len()).unwrap(),
        Some(i) => writeln!(out, "fails at index {i}").unwrap(),
    }
    out
}

fn domination_output(ctx: &Context, trace: &GoodsteinTrace, cert: &DominationCertificate) -> String {
    match ctx.format {
        Format::Json => export::to_text(&json!({
            "trace": export::trace_json(trace, ctx.limits.bit_budget),
            "certificate": export::certificate_json(cert),
        })),
        Format::Csv => export::certificate_csv(&cert.records),
        Format::Text => certificate_text(cert),
    }
}

fn gs(ctx: &Context, cmd: GsCommand) -> Result<Outcome, Error> {
    match cmd {
        GsCommand::Run { m, schedule } => {
            let schedule = parse_schedule(&schedule)?;
            let start = numeral_arg(&m, &schedule.at(0)?)?;
            let trace = goodstein::run_from(start, &schedule, ctx.limits.max_steps, ctx.limits.expansion_cap)?;
            let code = if trace.truncated.is_some() { RESOURCE } else { OK };
            Ok(Outcome::with_code(trace_output(ctx, &trace), code))
        }
        GsCommand::Length { m, cap } => {
            let cap = cap.unwrap_or(ctx.limits.max_steps);
            let n = goodstein::goodstein_length(&parse_natural(&m)?, cap, ctx.limits.expansion_cap)?;
            Ok(Outcome::ok(ctx.scalar(n.to_string(), json!(n))))
        }
        GsCommand::FromOrdinals { file } => {
            let prefix = io::load_sequence_file(&file)?;
            let (_, trace, cert) = goodstein::ordinals_to_goodstein(prefix.terms(), ctx.limits.expansion_cap)?;
            Ok(Outcome::with_code(domination_output(ctx, &trace, &cert), certificate_code(&cert)))
        }
        GsCommand::Verify { trace, file } => {
            let trace = io::read_trace_json(&io::read_source(&trace)?)?;
            let alphas = io::parse_terms(&io::read_source(&file)?)?;
            if let Some(i) = io::check_trace_consistency(&trace, ctx.limits.expansion_cap)? {
                return Err(Error::InvariantViolation {
                    index: i,
                    message: "step does not follow from its predecessor under the schedule".into(),
                });
            }
            let cert = goodstein::verify_domination(&trace, &alphas);
            Ok(Outcome::with_code(domination_output(ctx, &trace, &cert), certificate_code(&cert)))
        }
    }
}

fn prefix_text(header: &str, prefix: &SequencePrefix) -> String {
    let mut out = format!("# {header}\n");
    for t in prefix.terms() {
        writeln!(out, "{t}").unwrap();
    }
    out
}

fn prefix_csv(prefix: &SequencePrefix) -> String {
    let mut out = String::from("i,length,ko,term\n");
    for (i, t) in prefix.terms().iter().enumerate() {
        writeln!(out, "{i},{},{},{t}", ordinal::length(t), ordinal::max_coefficient(t)).unwrap();
    }
    out
}

fn witness_code(status: &EvidenceStatus) -> u8 {
    match status {
        EvidenceStatus::Failed { .. } => VERIFICATION_FAILED,
        _ => OK,
    }
}

fn pipe(ctx: &Context, cmd: PipeCommand) -> Result<Outcome, Error> {
    let limits = &ctx.limits;
    match cmd {
        PipeCommand::Clock { n, m, level } => {
            let c = clock::build_clock(GrzLevel(level), limits.magnitude_bits)?;
            let value = clock::clock_eval(&c, &parse_natural(&n)?, &parse_natural(&m)?);
            let output = match ctx.format {
                Format::Json => export::to_text(&json!({
                    "clock": serde_json::to_value(&c).expect("clock serializes"),
                    "result": value.render(),
                })),
                _ => ctx.scalar(value.render(), json!(value.render())),
            };
            Ok(Outcome::ok(output))
        }
        PipeCommand::Slow { file, level } => {
            let raw = io::load_sequence_file(&file)?;
            let out = pipeline::slow_transform(&raw, GrzLevel(level), limits)?;
            let output = match ctx.format {
                Format::Json => export::to_text(&export::slow_json(&out)),
                Format::Csv => prefix_csv(&out.prefix),
                Format::Text => prefix_text(
                    &format!("slow K={} level={level} offset={}", out.slowness(), out.offset),
                    &out.prefix,
                ),
            };
            Ok(Outcome::ok(output))
        }
        PipeCommand::Bound { file, k } => {
            let terms = io::load_sequence_file(&file)?.terms().to_vec();
            let k = k.unwrap_or_else(|| pipeline::least_slowness(&terms));
            let out = pipeline::coeff_bound_terms(terms, k)?;
            let output = match ctx.format {
                Format::Json => export::to_text(&export::bounded_json(&out)),
                Format::Csv => prefix_csv(&out.prefix),
                Format::Text => prefix_text(&format!("coeff-bounded K={} s={}", out.k, out.s), &out.prefix),
            };
            Ok(Outcome::ok(output))
        }
        PipeCommand::Witness { file, horizon } => {
            let terms = io::load_sequence_file(&file)?.terms().to_vec();
            let bounded = SequencePrefix::coeff_bounded(terms)?;
            let w = pipeline::special_witness(&bounded, horizon, limits)?;
            let output = match ctx.format {
                Format::Json => export::to_text(&export::witness_json(&w, limits.bit_budget)),
                Format::Csv => export::certificate_csv(&w.certificate.records),
                Format::Text => {
                    let mut out = format!("m0 = {} (base 2)\n", w.start);
                    if let Some(v) = w.start.value_within(limits.bit_budget) {
                        writeln!(out, "m0 value = {v}").unwrap();
                    }
                    out.push_str(&witness_records_text(&w.certificate.records));
                    writeln!(out, "status: {}", status_text(&w.certificate.status)).unwrap();
                    out
                }
            };
            Ok(Outcome::with_code(output, witness_code(&w.certificate.status)))
        }
        PipeCommand::Full { file, level, horizon } => {
            let raw = io::load_sequence_file(&file)?;
            let bundle = pipeline::full_pipeline(raw.terms().to_vec(), GrzLevel(level), horizon, limits)
                .map_err(|e| {
                    eprintln!("stage {} failed{}", e.stage, e.index().map_or(String::new(), |i| format!(" at index {i}")));
                    e.source
                })?;
            let output = match ctx.format {
                Format::Json => export::to_text(&export::bundle_json(&bundle, limits.bit_budget)),
                Format::Csv => export::bundle_csv(&bundle),
                Format::Text => bundle_text(&bundle, limits.bit_budget),
            };
            let code = if bundle.passed() { OK } else { VERIFICATION_FAILED };
            Ok(Outcome::with_code(output, code))
        }
    }
}

fn status_text(status: &EvidenceStatus) -> String {
    match status {
        EvidenceStatus::NoEvidence => "no evidence (horizon 0)".into(),
        EvidenceStatus::CertifiedUpToHorizon(n) => format!("certified up to horizon ({n} indices)"),
        EvidenceStatus::Failed { first_index } => format!("failed at index {first_index}"),
    }
}

fn witness_records_text(records: &[goodstein::DominationRecord]) -> String {
    let mut out = String::new();
    for r in records {
        writeln!(out, "{}\t{}\t{}", r.index, r.verdict.as_str(), r.target).unwrap();
    }
    out
}

fn bundle_text(bundle: &pipeline::PipelineBundle, bit_budget: u64) -> String {
    let mut out = String::new();
    writeln!(out, "input: {} terms", bundle.input.len()).unwrap();
    writeln!(
        out,
        "slow: {} terms, K = {}, clock level {} (K = {})",
        bundle.slow.prefix.len(),
        bundle.slow.slowness(),
        bundle.level,
        bundle.slow.clock.slowness
    )
    .unwrap();
    writeln!(out, "bounded: {} terms, s = {}", bundle.bounded.prefix.len(), bundle.bounded.s).unwrap();
    let start = &bundle.witness.start;
    match start.value_within(bit_budget) {
        Some(v) => writeln!(out, "m0 = {start} = {v}").unwrap(),
        None => writeln!(out, "m0 = {start}").unwrap(),
    }
    for c in &bundle.checks {
        writeln!(out, "{}\t{}\t{}", c.name, if c.passed { "pass" } else { "fail" }, c.detail).unwrap();
    }
    writeln!(out, "witness: {}", status_text(&bundle.witness.certificate.status)).unwrap();
    writeln!(out, "verdict: {}", if bundle.passed() { "pass" } else { "fail" }).unwrap();
    out
}

fn check(ctx: &Context, suite: Suite) -> Result<Outcome, Error> {
    let seed = ctx.seed;
    let limits = &ctx.limits;
    let reports: Vec<SuiteReport> = match suite {
        Suite::All => checks::run_all(seed, limits),
        Suite::Ordinal => vec![checks::ordinal_suite(seed, 2000)],
        Suite::Numeral => vec![checks::numeral_suite(seed, 10_000, 2..=10, 2000, 1 << 16)],
        Suite::Goodstein => vec![checks::goodstein_suite(seed, 100, 50, 30, limits)],
        Suite::Domination => vec![checks::domination_suite(seed, 20, 15, 3, limits)],
        Suite::Grz => vec![checks::grz_suite(2, 12, limits.magnitude_bits)],
        Suite::Majorize => vec![checks::majorize_suite(12, limits.magnitude_bits)],
        Suite::Clock => vec![checks::clock_suite(2, 8, limits.magnitude_bits)],
        Suite::Pipeline => vec![checks::pipeline_suite(&[checks::reference_input()], 2, 50, limits)],
    };
    let all_pass = reports.iter().all(SuiteReport::passed);
    let output = match ctx.format {
        Format::Json => export::to_text(&json!({
            "seed": seed,
            "passed": all_pass,
            "suites": reports.iter().map(|r| json!({
                "name": r.name,
                "passed": r.passed(),
                "checked": r.checked,
                "skipped": r.skipped,
                "failed": r.failed,
                "failures": r.failures,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("suite,passed,checked,skipped,failed\n");
            for r in &reports {
                writeln!(out, "{},{},{},{},{}", r.name, r.passed(), r.checked, r.skipped, r.failed).unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                writeln!(out, "{verdict} {} (checked {}, skipped {})", r.name, r.checked, r.skipped).unwrap();
                for f in &r.failures {
                    writeln!(out, "  {f}").unwrap();
                }
            }
            out
        }
    };
    Ok(Outcome::with_code(output, if all_pass { OK } else { VERIFICATION_FAILED }))
}
