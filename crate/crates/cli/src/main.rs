//! The `multiplex` command line tool: exact enumeration of multiplex
//! juggling sequences.

mod tables;

use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use multiplex_core::{
    char_poly, count_walks_brute, count_walks_transfer, enumerate_walks, periodic_gf,
    periodic_sequence, primitive_sequence, HeightCappedDiagram, IntPolynomial, LinearRecurrence,
    RationalGF, SelectionMatrix, SiteswapPattern, State, TransferMatrix, Walk,
};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "multiplex",
    version,
    about = "Count, enumerate, and validate multiplex juggling sequences with exact arithmetic"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Count walks between two states by one or more methods.
    Count(CountArgs),
    /// List the walks between two states.
    Enumerate(EnumerateArgs),
    /// Periodic or primitive sequence counts from a state.
    Sequence(SequenceArgs),
    /// Rational generating function for the counts at a state.
    Genfunc(GenfuncArgs),
    /// Characteristic polynomial and linear recurrence for (balls, m).
    Recurrence(RecurrenceArgs),
    /// Parse and validate a siteswap pattern.
    Validate(ValidateArgs),
    /// Regenerate the built-in reference tables and diff them.
    Tables(TablesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Run brute, matrix, and capped, and compare.
    All,
    /// Depth-first bucket simulation.
    Brute,
    /// Selection-matrix counting.
    Matrix,
    /// Adjacency powers of the height-capped diagram.
    Capped,
    /// Transfer-matrix recursion (needs length ≥ height of the start state).
    Transfer,
}

#[derive(Args)]
struct CountArgs {
    /// Hand capacity m.
    #[arg(long)]
    m: u32,
    /// Start state, e.g. "1,2".
    #[arg(long)]
    from: String,
    /// End state.
    #[arg(long)]
    to: String,
    /// Walk length n.
    #[arg(long)]
    length: usize,
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
    /// Height cap for the capped method (default: saturating cap).
    #[arg(long)]
    height_cap: Option<usize>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
    #[arg(long)]
    length: usize,
    /// Maximum number of walks to list.
    #[arg(long, default_value_t = multiplex_core::DEFAULT_WALK_LIMIT)]
    limit: usize,
}

#[derive(Args)]
struct SequenceArgs {
    /// Origin state.
    #[arg(long)]
    state: String,
    #[arg(long)]
    m: u32,
    /// Number of terms a(1..N).
    #[arg(long)]
    terms: usize,
    /// Count primitive (first-return) sequences instead of periodic ones.
    #[arg(long)]
    primitive: bool,
    /// Re-verify every k-th term against the brute-force oracle.
    #[arg(long, value_name = "K")]
    spot_check: Option<usize>,
}

#[derive(Args)]
struct GenfuncArgs {
    #[arg(long)]
    state: String,
    #[arg(long)]
    m: u32,
    /// Apply the first-return transform F/(1+F).
    #[arg(long)]
    primitive: bool,
    /// Emit the gcd-cancelled fraction instead of the table form.
    #[arg(long)]
    reduced: bool,
    /// Also expand the series to this many terms.
    #[arg(long)]
    terms: Option<usize>,
}

#[derive(Args)]
struct RecurrenceArgs {
    /// Ball count b.
    #[arg(long)]
    balls: u32,
    #[arg(long)]
    m: u32,
}

#[derive(Args)]
struct ValidateArgs {
    /// Pattern in bracket notation, e.g. `[2,0][3,1][3,3][0,0]`.
    #[arg(long)]
    pattern: String,
    /// Hand capacity (default: inferred from the widest block).
    #[arg(long)]
    m: Option<u32>,
    /// Also simulate from this state and print the trajectory.
    #[arg(long)]
    state: Option<String>,
}

#[derive(Args)]
struct TablesArgs {
    /// Check a single row, written STATE:M (e.g. "2,1:3").
    #[arg(long)]
    row: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Count(args) => cmd_count(args, cli.format),
        Command::Enumerate(args) => cmd_enumerate(args, cli.format),
        Command::Sequence(args) => cmd_sequence(args, cli.format),
        Command::Genfunc(args) => cmd_genfunc(args, cli.format),
        Command::Recurrence(args) => cmd_recurrence(args, cli.format),
        Command::Validate(args) => cmd_validate(args, cli.format),
        Command::Tables(args) => cmd_tables(args, cli.format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn print_json(value: Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(&value).expect("JSON output")
    );
}

/// Conventional descending-power rendering for characteristic polynomials.
fn poly_descending(p: &IntPolynomial) -> String {
    use std::fmt::Write;
    if p.is_zero() {
        return "0".into();
    }
    let degree = p.degree().unwrap();
    let mut out = String::new();
    for power in (0..=degree).rev() {
        let c = p.coeff(power);
        if c == 0.into() {
            continue;
        }
        let negative = c < 0.into();
        let mag = if negative { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let one = mag == 1.into();
        match power {
            0 => write!(out, "{mag}").unwrap(),
            1 => {
                if !one {
                    write!(out, "{mag}").unwrap();
                }
                out.push('x');
            }
            _ => {
                if !one {
                    write!(out, "{mag}").unwrap();
                }
                write!(out, "x^{power}").unwrap();
            }
        }
    }
    out
}

fn poly_json(p: &IntPolynomial) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

fn gf_json(gf: &RationalGF) -> Value {
    json!({
        "numerator": poly_json(gf.numerator()),
        "denominator": poly_json(gf.denominator()),
        "text": gf.to_string(),
    })
}

fn saturating_cap(from: &State, to: &State, length: usize) -> usize {
    length + from.height().max(to.height())
}

fn cmd_count(args: &CountArgs, format: Format) -> Result<u8> {
    let from = State::parse(&args.from, args.m).context("--from")?;
    let to = State::parse(&args.to, args.m).context("--to")?;
    let cap = args
        .height_cap
        .unwrap_or_else(|| saturating_cap(&from, &to, args.length));

    let mut counts: Vec<(&str, String)> = Vec::new();
    let run = |method: Method| -> Result<String> {
        Ok(match method {
            Method::Brute => count_walks_brute(&from, &to, args.length)?.to_string(),
            Method::Matrix => SelectionMatrix::for_walks(&from, &to, args.length)?
                .count_selections()
                .to_string(),
            Method::Capped => HeightCappedDiagram::new(from.balls(), args.m, cap)?
                .count_walks(&from, &to, args.length)?
                .to_string(),
            Method::Transfer => count_walks_transfer(&from, &to, args.length)?.to_string(),
            Method::All => unreachable!("expanded by the caller"),
        })
    };
    match args.method {
        Method::All => {
            counts.push(("brute", run(Method::Brute)?));
            counts.push(("matrix", run(Method::Matrix)?));
            counts.push(("capped", run(Method::Capped)?));
        }
        Method::Brute => counts.push(("brute", run(Method::Brute)?)),
        Method::Matrix => counts.push(("matrix", run(Method::Matrix)?)),
        Method::Capped => counts.push(("capped", run(Method::Capped)?)),
        Method::Transfer => counts.push(("transfer", run(Method::Transfer)?)),
    }
    let agree = counts.windows(2).all(|w| w[0].1 == w[1].1);

    match format {
        Format::Text => {
            if counts.len() == 1 {
                println!("{}", counts[0].1);
            } else {
                for (name, value) in &counts {
                    println!("{name}: {value}");
                }
                println!("verdict: {}", if agree { "match" } else { "MISMATCH" });
            }
        }
        Format::Json => {
            let mut map = serde_json::Map::new();
            for (name, value) in &counts {
                map.insert((*name).into(), Value::String(value.clone()));
            }
            let mut payload = json!({
                "schemaVersion": SCHEMA_VERSION,
                "command": "count",
                "from": from.to_string(),
                "to": to.to_string(),
                "capacity": args.m,
                "length": args.length,
                "counts": Value::Object(map),
            });
            if counts.len() > 1 {
                payload["agree"] = Value::Bool(agree);
            }
            print_json(payload);
        }
        Format::Csv => {
            println!("method,count");
            for (name, value) in &counts {
                println!("{name},{value}");
            }
        }
    }
    Ok(u8::from(!agree))
}

fn walk_text(walk: &Walk) -> String {
    let mut pieces = Vec::new();
    for (state, throws) in walk.steps() {
        pieces.push(state.to_string());
        pieces.push(throws.to_string());
    }
    pieces.push(walk.end().to_string());
    pieces.join(" ")
}

fn walk_json(walk: &Walk) -> Value {
    let mut steps: Vec<Value> = walk
        .steps()
        .iter()
        .map(|(state, throws)| {
            json!({
                "state": state.to_string(),
                "throws": throws.heights(),
            })
        })
        .collect();
    steps.push(json!({ "state": walk.end().to_string() }));
    Value::Array(steps)
}

fn cmd_enumerate(args: &EnumerateArgs, format: Format) -> Result<u8> {
    let from = State::parse(&args.from, args.m).context("--from")?;
    let to = State::parse(&args.to, args.m).context("--to")?;
    let total = count_walks_brute(&from, &to, args.length)?;
    let walks = enumerate_walks(&from, &to, args.length, Some(args.limit))?;

    match format {
        Format::Text => {
            for walk in &walks {
                println!("{}", walk_text(walk));
            }
            if total > walks.len().into() {
                eprintln!("note: listed {} of {} walks", walks.len(), total);
            }
        }
        Format::Json => {
            print_json(json!({
                "schemaVersion": SCHEMA_VERSION,
                "command": "enumerate",
                "from": from.to_string(),
                "to": to.to_string(),
                "capacity": args.m,
                "length": args.length,
                "count": total.to_string(),
                "returned": walks.len(),
                "walks": walks.iter().map(walk_json).collect::<Vec<_>>(),
            }));
        }
        Format::Csv => {
            println!("walk,step,state,throws");
            for (w, walk) in walks.iter().enumerate() {
                for (s, (state, throws)) in walk.steps().iter().enumerate() {
                    let heights: Vec<String> =
                        throws.heights().iter().map(u32::to_string).collect();
                    println!("{w},{s},\"{state}\",{}", heights.join(" "));
                }
                println!("{w},{},\"{}\",", walk.len(), walk.end());
            }
        }
    }
    Ok(0)
}

fn cmd_sequence(args: &SequenceArgs, format: Format) -> Result<u8> {
    let origin = State::parse(&args.state, args.m).context("--state")?;
    let sequence = if args.primitive {
        primitive_sequence(&origin, args.terms)?
    } else {
        periodic_sequence(&origin, args.terms)?
    };
    let kind = if args.primitive {
        "primitive"
    } else {
        "periodic"
    };
    let spot_check = match args.spot_check {
        Some(stride) => match sequence.spot_check(stride) {
            Ok(()) => Some(Ok(())),
            Err(err) => Some(Err(err)),
        },
        None => None,
    };

    let terms: Vec<String> = sequence.terms().iter().map(|t| t.to_string()).collect();
    match format {
        Format::Text => {
            println!("{}", terms.join(","));
            if let Some(Err(err)) = &spot_check {
                eprintln!("spot check failed: {err}");
            }
        }
        Format::Json => {
            let mut payload = json!({
                "schemaVersion": SCHEMA_VERSION,
                "command": "sequence",
                "state": origin.to_string(),
                "capacity": args.m,
                "kind": kind,
                "terms": terms,
            });
            if let Some(result) = &spot_check {
                payload["spotCheck"] = match result {
                    Ok(()) => json!({ "ok": true }),
                    Err(err) => json!({ "ok": false, "detail": err.to_string() }),
                };
            }
            print_json(payload);
        }
        Format::Csv => {
            println!("n,count");
            for (i, term) in terms.iter().enumerate() {
                println!("{},{term}", i + 1);
            }
            if let Some(Err(err)) = &spot_check {
                eprintln!("spot check failed: {err}");
            }
        }
    }
    Ok(u8::from(matches!(spot_check, Some(Err(_)))))
}

fn cmd_genfunc(args: &GenfuncArgs, format: Format) -> Result<u8> {
    let origin = State::parse(&args.state, args.m).context("--state")?;
    let mut gf = periodic_gf(&origin)?;
    if args.primitive {
        gf = gf.primitive_transform()?;
    }
    if args.reduced {
        gf = gf.reduced();
    }
    let expansion: Option<Vec<String>> = args
        .terms
        .map(|n| gf.expand(n).iter().map(|c| c.to_string()).collect());

    match format {
        Format::Text => {
            println!("{gf}");
            if let Some(terms) = &expansion {
                println!("{}", terms.join(","));
            }
        }
        Format::Json => {
            let mut payload = json!({
                "schemaVersion": SCHEMA_VERSION,
                "command": "genfunc",
                "state": origin.to_string(),
                "capacity": args.m,
                "primitive": args.primitive,
                "reduced": args.reduced,
            });
            if let Value::Object(gf_fields) = gf_json(&gf) {
                for (key, value) in gf_fields {
                    payload[key] = value;
                }
            }
            if let Some(terms) = &expansion {
                payload["terms"] = json!(terms);
            }
            print_json(payload);
        }
        Format::Csv => {
            let row = |label: &str, values: &[String]| {
                println!("{label},{}", values.join(","));
            };
            let to_strings =
                |p: &IntPolynomial| p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>();
            row("numerator", &to_strings(gf.numerator()));
            row("denominator", &to_strings(gf.denominator()));
            if let Some(terms) = &expansion {
                row("terms", terms);
            }
        }
    }
    Ok(0)
}

fn cmd_recurrence(args: &RecurrenceArgs, format: Format) -> Result<u8> {
    let matrix = TransferMatrix::build(args.balls, args.m)?;
    let p = char_poly(&matrix);
    let recurrence = LinearRecurrence::from_char_poly(&p)?;
    let partitions: Vec<String> = matrix.partitions().iter().map(|p| p.to_string()).collect();

    match format {
        Format::Text => {
            println!("order: {}", recurrence.order());
            println!("partitions: {}", partitions.join("; "));
            println!("characteristic polynomial: {}", poly_descending(&p));
            println!("recurrence: {recurrence}");
        }
        Format::Json => {
            print_json(json!({
                "schemaVersion": SCHEMA_VERSION,
                "command": "recurrence",
                "balls": args.balls,
                "capacity": args.m,
                "order": recurrence.order(),
                "partitions": partitions,
                "charPoly": poly_json(&p),
                "charPolyText": poly_descending(&p),
                "recurrence": recurrence.to_string(),
            }));
        }
        Format::Csv => {
            println!("label,value");
            println!("order,{}", recurrence.order());
            println!("partitions,{}", partitions.join("; "));
            println!("charPoly,\"{}\"", poly_descending(&p));
            println!("recurrence,\"{recurrence}\"");
        }
    }
    Ok(0)
}

fn cmd_validate(args: &ValidateArgs, format: Format) -> Result<u8> {
    let pattern = match args.m {
        Some(m) => SiteswapPattern::parse_with_capacity(&args.pattern, m),
        None => SiteswapPattern::parse(&args.pattern),
    }
    .context("--pattern")?;
    let report = pattern.validate();

    let mut reasons: Vec<String> = Vec::new();
    if !report.residues_ok() {
        let counts: Vec<String> = report.residue_counts().iter().map(u32::to_string).collect();
        reasons.push(format!(
            "residue coverage failed: per-residue landing counts [{}] must all be {}",
            counts.join(","),
            pattern.capacity()
        ));
    }
    if report.ball_count().is_none() {
        reasons.push(format!(
            "ball count is not an integer: throw total {} over period {}",
            pattern.throw_total(),
            pattern.period()
        ));
    }

    let trajectory = match &args.state {
        Some(text) => {
            let start = State::parse(text, pattern.capacity()).context("--state")?;
            match pattern.simulate(&start) {
                Ok(states) => Some(states),
                Err(err) => {
                    reasons.push(format!("simulation failed: {err}"));
                    None
                }
            }
        }
        None => None,
    };
    let valid = reasons.is_empty();

    match format {
        Format::Text => {
            println!("pattern: {pattern}");
            println!("valid: {valid}");
            if let Some(balls) = report.ball_count() {
                println!("balls: {balls}");
            }
            let counts: Vec<String> = report.residue_counts().iter().map(u32::to_string).collect();
            println!("residues: {}", counts.join(","));
            if let Some(states) = &trajectory {
                let path: Vec<String> = states.iter().map(State::to_string).collect();
                println!("trajectory: {}", path.join(" -> "));
            }
            for reason in &reasons {
                println!("reason: {reason}");
            }
        }
        Format::Json => {
            let throws: Vec<Vec<u32>> = pattern
                .throws()
                .iter()
                .map(|t| t.heights().to_vec())
                .collect();
            let mut payload = json!({
                "schemaVersion": SCHEMA_VERSION,
                "command": "validate",
                "pattern": {
                    "m": pattern.capacity(),
                    "throws": throws,
                    "text": pattern.to_string(),
                },
                "period": pattern.period(),
                "valid": valid,
                "balls": report.ball_count(),
                "residues": report.residue_counts(),
                "reasons": reasons,
            });
            if let Some(states) = &trajectory {
                payload["trajectory"] =
                    json!(states.iter().map(State::to_string).collect::<Vec<_>>());
            }
            print_json(payload);
        }
        Format::Csv => {
            println!("label,value");
            println!("pattern,\"{pattern}\"");
            println!("valid,{valid}");
            if let Some(balls) = report.ball_count() {
                println!("balls,{balls}");
            }
            let counts: Vec<String> = report.residue_counts().iter().map(u32::to_string).collect();
            println!("residues,\"{}\"", counts.join(","));
            if let Some(states) = &trajectory {
                let path: Vec<String> = states.iter().map(State::to_string).collect();
                println!("trajectory,\"{}\"", path.join(" -> "));
            }
        }
    }
    Ok(u8::from(!valid))
}

fn cmd_tables(args: &TablesArgs, format: Format) -> Result<u8> {
    let checks = tables::reproduce(args.row.as_deref())?;
    let ok = checks.iter().filter(|c| c.ok()).count();
    let total = checks.len();

    match format {
        Format::Text => {
            for check in &checks {
                let status = if check.ok() { "ok" } else { "MISMATCH" };
                println!("{} {} m={}: {status}", check.table, check.state, check.m);
                for detail in &check.mismatches {
                    println!("  {detail}");
                }
            }
            println!("{ok}/{total} rows reproduced");
        }
        Format::Json => {
            print_json(json!({
                "schemaVersion": SCHEMA_VERSION,
                "command": "tables",
                "rows": checks
                    .iter()
                    .map(|c| {
                        json!({
                            "table": c.table,
                            "state": c.state,
                            "m": c.m,
                            "ok": c.ok(),
                            "mismatches": c.mismatches,
                        })
                    })
                    .collect::<Vec<_>>(),
                "reproduced": ok,
                "total": total,
            }));
        }
        Format::Csv => {
            println!("table,state,m,status");
            for check in &checks {
                println!(
                    "{},\"{}\",{},{}",
                    check.table,
                    check.state,
                    check.m,
                    if check.ok() { "ok" } else { "mismatch" }
                );
            }
        }
    }
    Ok(u8::from(ok != total))
}
