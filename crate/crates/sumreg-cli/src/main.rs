//! Command-line front end for the summing-register toolkit.
//!
//! Exit codes: 0 success, 1 a check that ran to completion reported a
//! failure, 2 bad usage or unparsable input, 3 internal invariant violation.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use sumreg::census::{census, CensusSource, CensusTable};
use sumreg::debruijn::{
    build_main_cycle, check_debruijn, default_utable, generate, validate_utable, verify_debruijn,
    DebruijnVerdict, UTable,
};
use sumreg::omega::{enumerate_omega, OmegaVerdict, SearchScope};
use sumreg::symfn::{anf_to_value, value_to_anf};
use sumreg::{FeedbackSpec, RegisterKind, State};

#[derive(Parser)]
#[command(
    name = "sumreg",
    version,
    about = "Cycle analysis and full-period sequence generation for summing registers"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cycle-length census of a summing register
    Cycles {
        /// Register order (number of stages)
        #[arg(long)]
        n: usize,
        /// Which summing register to analyze
        #[arg(long, value_enum)]
        register: RegisterArg,
        /// How to obtain the counts
        #[arg(long, value_enum, default_value_t = MethodArg::Formula)]
        method: MethodArg,
        /// Emit JSON instead of the text table
        #[arg(long)]
        json: bool,
    },
    /// Emit a full-period binary sequence of order n
    Generate {
        #[arg(long)]
        n: usize,
        /// Bridge-state file, lines "k: bits"; omitted classes keep defaults
        #[arg(long)]
        utable: Option<PathBuf>,
        /// Starting window (defaults to 0 followed by n-1 ones)
        #[arg(long)]
        seed: Option<String>,
    },
    /// Check that a bit stream visits every n-window exactly once
    Verify {
        #[arg(long)]
        n: usize,
        /// Read bits from this file instead of standard input
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Merge one extended-weight class of the complemented register
    Join {
        #[arg(long)]
        n: usize,
        /// Class index: the class of extended weight 2k+1
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Scan feedbacks whose cycle lengths all divide n+1
    Omega {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        scope: ScopeArg,
        #[arg(long)]
        json: bool,
    },
    /// Convert symmetric-function vectors between value and coefficient form
    Symfn {
        /// v2a: weight values to monomial coefficients; a2v: the reverse
        #[arg(value_enum)]
        direction: DirectionArg,
        /// Bit string, one bit per input weight 0..=n
        vector: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RegisterArg {
    Psr,
    Csr,
}

impl RegisterArg {
    fn kind(self) -> RegisterKind {
        match self {
            RegisterArg::Psr => RegisterKind::Psr,
            RegisterArg::Csr => RegisterKind::Csr,
        }
    }

    fn name(self) -> &'static str {
        match self {
            RegisterArg::Psr => "psr",
            RegisterArg::Csr => "csr",
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum MethodArg {
    Formula,
    Enumerate,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Exhaustive,
    SymmetricOnly,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    #[value(name = "v2a")]
    ValueToAnf,
    #[value(name = "a2v")]
    AnfToValue,
}

struct CliError {
    code: u8,
    message: String,
}

impl From<sumreg::Error> for CliError {
    fn from(e: sumreg::Error) -> Self {
        use sumreg::Error;
        let code = match e {
            Error::NonIntegralCount { .. }
            | Error::Internal(_)
            | Error::GenerationFailure { .. }
            | Error::StateNotOnCycle { .. }
            | Error::PartnerNotOnCycle { .. }
            | Error::CyclesNotDistinct => 3,
            _ => 2,
        };
        CliError { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { code: 2, message: message.into() }
}

fn internal(message: impl Into<String>) -> CliError {
    CliError { code: 3, message: message.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, CliError> {
    match cmd {
        Cmd::Cycles { n, register, method, json } => cmd_cycles(n, register, method, json),
        Cmd::Generate { n, utable, seed } => cmd_generate(n, utable.as_deref(), seed.as_deref()),
        Cmd::Verify { n, input } => cmd_verify(n, input.as_deref()),
        Cmd::Join { n, k, json } => cmd_join(n, k, json),
        Cmd::Omega { n, scope, json } => cmd_omega(n, scope, json),
        Cmd::Symfn { direction, vector } => cmd_symfn(direction, &vector),
    }
}

#[derive(Serialize)]
struct CensusRowJson {
    d: u64,
    count: String,
}

#[derive(Serialize)]
struct CensusJson {
    register: &'static str,
    n: usize,
    modulus: u64,
    source: &'static str,
    rows: Vec<CensusRowJson>,
    total_cycles: String,
    total_states: String,
}

#[derive(Serialize)]
struct CensusCompareRowJson {
    d: u64,
    formula: String,
    enumeration: String,
    matches: bool,
}

#[derive(Serialize)]
struct CensusCompareJson {
    register: &'static str,
    n: usize,
    modulus: u64,
    rows: Vec<CensusCompareRowJson>,
    all_match: bool,
}

fn cmd_cycles(n: usize, register: RegisterArg, method: MethodArg, json: bool) -> Result<u8, CliError> {
    let kind = register.kind();
    let modulus = n as u64 + 1;
    if method == MethodArg::Both {
        let formula = census(kind, n, CensusSource::Formula)?;
        let enumerated = census(kind, n, CensusSource::Enumeration)?;
        let lengths: Vec<u64> = {
            let mut all: Vec<u64> =
                formula.entries.keys().chain(enumerated.entries.keys()).copied().collect();
            all.sort_unstable();
            all.dedup();
            all
        };
        let zero = num_string_zero();
        let rows: Vec<CensusCompareRowJson> = lengths
            .iter()
            .map(|d| {
                let f = formula.entries.get(d).map_or_else(|| zero.clone(), |c| c.to_string());
                let e = enumerated.entries.get(d).map_or_else(|| zero.clone(), |c| c.to_string());
                CensusCompareRowJson { d: *d, matches: f == e, formula: f, enumeration: e }
            })
            .collect();
        let all_match = rows.iter().all(|r| r.matches);
        if json {
            let payload = CensusCompareJson {
                register: register.name(),
                n,
                modulus,
                rows,
                all_match,
            };
            println!("{}", serde_json::to_string(&payload).map_err(|e| internal(e.to_string()))?);
        } else {
            println!("# {} census, order n={n}, formula vs enumeration", register.name());
            println!("# every cycle length d divides n+1 = {modulus}");
            println!("# columns: d formula enumeration verdict");
            for r in &rows {
                let verdict = if r.matches { "match" } else { "mismatch" };
                println!("{} {} {} {verdict}", r.d, r.formula, r.enumeration);
            }
        }
        return Ok(if all_match { 0 } else { 1 });
    }

    let (source, source_name) = match method {
        MethodArg::Formula => (CensusSource::Formula, "formula"),
        MethodArg::Enumerate => (CensusSource::Enumeration, "enumeration"),
        MethodArg::Both => unreachable!(),
    };
    let table = census(kind, n, source)?;
    if json {
        let payload = census_json(&table, register.name(), source_name, modulus);
        println!("{}", serde_json::to_string(&payload).map_err(|e| internal(e.to_string()))?);
    } else {
        println!("# {} census, order n={n}, source {source_name}", register.name());
        println!("# every cycle length d divides n+1 = {modulus}");
        println!("# columns: d count");
        for (d, count) in &table.entries {
            println!("{d} {count}");
        }
    }
    Ok(0)
}

fn num_string_zero() -> String {
    "0".to_string()
}

fn census_json(
    table: &CensusTable,
    register: &'static str,
    source: &'static str,
    modulus: u64,
) -> CensusJson {
    CensusJson {
        register,
        n: table.n,
        modulus,
        source,
        rows: table
            .entries
            .iter()
            .map(|(d, count)| CensusRowJson { d: *d, count: count.to_string() })
            .collect(),
        total_cycles: table.total_cycles().to_string(),
        total_states: table.total_states().to_string(),
    }
}

fn cmd_generate(n: usize, utable: Option<&Path>, seed: Option<&str>) -> Result<u8, CliError> {
    let mut table = default_utable(n)?;
    if let Some(path) = utable {
        apply_utable_file(&mut table, path)?;
    }
    let seed = match seed {
        Some(bits) => {
            let s = State::parse(bits)?;
            if s.order() != n {
                return Err(usage(format!("seed has {} bits, expected {n}", s.order())));
            }
            s
        }
        None => State::new(n, (1u32 << (n - 1)) - 1)?,
    };
    let seq = generate(&table, &seed)?;
    if !verify_debruijn(&seq, n) {
        return Err(internal("generated stream failed the full-period check"));
    }
    let line: String = seq.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
    println!("{line}");
    Ok(0)
}

fn apply_utable_file(table: &mut UTable, path: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k_str, bits) = line
            .split_once(':')
            .ok_or_else(|| usage(format!("line {}: expected \"k: bits\"", idx + 1)))?;
        let k: usize = k_str
            .trim()
            .parse()
            .map_err(|_| usage(format!("line {}: bad class index {:?}", idx + 1, k_str.trim())))?;
        let state = State::parse(bits.trim())
            .map_err(|e| usage(format!("line {}: {e}", idx + 1)))?;
        table.set(k, state).map_err(|e| usage(format!("line {}: {e}", idx + 1)))?;
    }
    let report = validate_utable(table);
    if !report.is_ok() {
        let problems: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(usage(format!("invalid bridge table: {}", problems.join("; "))));
    }
    Ok(())
}

fn cmd_verify(n: usize, input: Option<&Path>) -> Result<u8, CliError> {
    let text = match input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?,
        None => std::io::read_to_string(std::io::stdin())
            .map_err(|e| usage(format!("cannot read standard input: {e}")))?,
    };
    let mut bits = Vec::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '0' => bits.push(0u8),
            '1' => bits.push(1u8),
            c if c.is_ascii_whitespace() => {}
            other => return Err(usage(format!("invalid character {other:?} in input"))),
        }
    }
    match check_debruijn(&bits, n)? {
        DebruijnVerdict::Pass => {
            println!("PASS");
            Ok(0)
        }
        DebruijnVerdict::WrongLength { expected, actual } => {
            println!("FAIL expected {expected} bits, got {actual}");
            Ok(1)
        }
        DebruijnVerdict::RepeatedWindow { window, first, second } => {
            println!("FAIL repeated window {window} at positions {first} and {second}");
            Ok(1)
        }
    }
}

#[derive(Serialize)]
struct JoinJson {
    n: usize,
    k: usize,
    weight: u32,
    length: usize,
    states: Vec<u64>,
    joins: Vec<(u64, u64)>,
}

fn cmd_join(n: usize, k: usize, json: bool) -> Result<u8, CliError> {
    let f = FeedbackSpec::csr(n)?;
    let mc = build_main_cycle(&f, k)?;
    let states: Vec<u64> =
        mc.cycle().states_from_min().iter().map(State::decimal_label).collect();
    let joins = mc.join_labels();
    if json {
        let payload = JoinJson {
            n,
            k,
            weight: mc.weight(),
            length: mc.cycle().len(),
            states,
            joins,
        };
        println!("{}", serde_json::to_string(&payload).map_err(|e| internal(e.to_string()))?);
    } else {
        println!(
            "# merged class k={k} of order n={n}, extended weight {}, length {}",
            mc.weight(),
            mc.cycle().len()
        );
        let rendered: Vec<String> = states.iter().map(u64::to_string).collect();
        println!("states {}", rendered.join(" "));
        if joins.is_empty() {
            println!("joins none");
        } else {
            let rendered: Vec<String> =
                joins.iter().map(|(p, q)| format!("({p},{q})")).collect();
            println!("joins {}", rendered.join(" "));
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct OmegaMemberJson {
    g: String,
    encoding: &'static str,
    kind: &'static str,
}

#[derive(Serialize)]
struct OmegaJson {
    n: usize,
    scope: &'static str,
    candidates: usize,
    members: Vec<OmegaMemberJson>,
    count: usize,
    expected: usize,
}

fn cmd_omega(n: usize, scope: ScopeArg, json: bool) -> Result<u8, CliError> {
    let (lib_scope, scope_name, encoding) = match scope {
        ScopeArg::Exhaustive => (SearchScope::Exhaustive, "exhaustive", "truth-table"),
        ScopeArg::SymmetricOnly => {
            (SearchScope::SymmetricOnly, "symmetric-only", "value-vector")
        }
    };
    let report = enumerate_omega(n, lib_scope)?;
    let members = report.members()?;
    let member_verdicts: Vec<&OmegaVerdict> =
        report.verdicts.iter().filter(|v| v.in_omega).collect();
    let rendered: Vec<OmegaMemberJson> = member_verdicts
        .iter()
        .zip(&members)
        .map(|(v, spec)| {
            let g = match scope {
                ScopeArg::Exhaustive => spec.g_table().bit_string(),
                ScopeArg::SymmetricOnly => (0..n)
                    .map(|w| if (v.g_bits >> w) & 1 == 1 { '1' } else { '0' })
                    .collect(),
            };
            OmegaMemberJson { g, encoding, kind: kind_name(spec.kind()) }
        })
        .collect();
    let has_psr = members.iter().any(|m| m.kind() == RegisterKind::Psr);
    let has_csr = members.iter().any(|m| m.kind() == RegisterKind::Csr);
    let ok = members.len() == 2 && has_psr && has_csr;
    if json {
        let payload = OmegaJson {
            n,
            scope: scope_name,
            candidates: report.verdicts.len(),
            members: rendered,
            count: members.len(),
            expected: 2,
        };
        println!("{}", serde_json::to_string(&payload).map_err(|e| internal(e.to_string()))?);
    } else {
        println!(
            "# feedbacks of order n={n} with all cycle lengths dividing {}, scope {scope_name}",
            n + 1
        );
        for m in &rendered {
            println!("member g={} encoding={} kind={}", m.g, m.encoding, m.kind);
        }
        println!("count={} expected=2", members.len());
    }
    Ok(if ok { 0 } else { 1 })
}

fn kind_name(kind: RegisterKind) -> &'static str {
    match kind {
        RegisterKind::Psr => "psr",
        RegisterKind::Csr => "csr",
        RegisterKind::General => "general",
    }
}

fn cmd_symfn(direction: DirectionArg, vector: &str) -> Result<u8, CliError> {
    let mut bits = Vec::with_capacity(vector.len());
    for (i, ch) in vector.chars().enumerate() {
        match ch {
            '0' => bits.push(0u8),
            '1' => bits.push(1u8),
            other => {
                return Err(usage(format!("invalid character {other:?} at position {i}")));
            }
        }
    }
    let out = match direction {
        DirectionArg::ValueToAnf => value_to_anf(&bits)?,
        DirectionArg::AnfToValue => anf_to_value(&bits)?,
    };
    let line: String = out.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
    println!("{line}");
    Ok(0)
}
