//! Batch command-line front end: classify networks, generate and verify
//! witness certificates, and run the corpus consistency report.
//!
//! Exit codes: 0 success; 2 parse or I/O error; 3 out-of-scope under
//! `--strict` / witness refusal without `--force`; 4 witness budget
//! exhausted; 5 certificate verification failure.

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crn::classify::{classify, Classification, ShapeTag, Verdict};
use crn::corpus::corpus;
use crn::netparse::{parse_network, split_blocks, ReactionNetwork};
use crn::witness::{verify_certificate, witness_search, WitnessCertificate, DEFAULT_BUDGET};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "crn", version, about = "Mass-action multistationarity classifier with verifiable witness certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify each network in the given files.
    Classify(ClassifyArgs),
    /// Search for a witness certificate for the network in a file.
    Witness(WitnessArgs),
    /// Verify a certificate file against a network file.
    Verify(VerifyArgs),
    /// Enumerate small networks and report classifier/witness agreement.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Input files; each may hold several networks separated by `---` lines.
    files: Vec<String>,
    /// Emit a machine-readable JSON report.
    #[arg(long)]
    json: bool,
    /// Treat OUT_OF_SCOPE verdicts as an error (exit 3).
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct WitnessArgs {
    /// Input file holding exactly one network.
    file: String,
    /// Search budget (number of candidate parameter attempts).
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Search even when the classifier verdict is not NONDEG_MSS.
    #[arg(long)]
    force: bool,
    /// Write the certificate to this file instead of stdout.
    #[arg(long)]
    out: Option<String>,
    /// Emit a machine-readable JSON report (the certificate itself is
    /// always JSON).
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Network file.
    network: String,
    /// Certificate file produced by `crn witness`.
    certificate: String,
    /// Emit a machine-readable JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CorpusArgs {
    /// Maximum stoichiometric coefficient.
    #[arg(long, default_value_t = 2)]
    max_coeff: u64,
    /// Restrict to one shape tag (e.g. ONE_SPECIES, TWO_SPECIES_REV_PLUS_IRREV).
    #[arg(long)]
    shape: Option<String>,
    /// Witness search budget per network.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Emit a machine-readable JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Serialize)]
struct NetworkReport {
    source: String,
    network: String,
    #[serde(flatten)]
    classification: Classification,
    millis: u128,
}

#[derive(Serialize)]
struct ClassifyReport {
    schema_version: u32,
    results: Vec<NetworkReport>,
    errors: Vec<String>,
}

fn parse_blocks(path: &str, errors: &mut Vec<String>) -> Vec<(String, ReactionNetwork)> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            errors.push(format!("{path}: {e}"));
            return vec![];
        }
    };
    let mut out = Vec::new();
    for (ix, block) in split_blocks(&text).into_iter().enumerate() {
        match parse_network(&block) {
            Ok(net) => out.push((format!("{path}#{}", ix + 1), net)),
            Err(e) => errors.push(format!("{path}#{}: {e}", ix + 1)),
        }
    }
    out
}

fn cmd_classify(args: &ClassifyArgs) -> ExitCode {
    let mut errors = Vec::new();
    let mut results = Vec::new();
    for path in &args.files {
        for (source, net) in parse_blocks(path, &mut errors) {
            let start = Instant::now();
            let classification = classify(&net);
            results.push(NetworkReport {
                source,
                network: net.to_string(),
                classification,
                millis: start.elapsed().as_millis(),
            });
        }
    }
    let out_of_scope = results
        .iter()
        .any(|r| r.classification.verdict == Verdict::OutOfScope);
    if args.json {
        let report = ClassifyReport {
            schema_version: SCHEMA_VERSION,
            results,
            errors: errors.clone(),
        };
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        for r in &results {
            println!("{}: {}", r.source, verdict_name(r.classification.verdict));
            println!("  network: {}", r.network);
            println!(
                "  shape: {} ({} species, {} reactions)",
                shape_name(r.classification.shape.tag),
                r.classification.shape.species,
                r.classification.shape.reactions
            );
            for e in &r.classification.evidence {
                println!("  evidence: {e}");
            }
            if r.classification.caveat {
                println!("  caveat: verdict leans on a sub-case the cited results leave open");
            }
            println!("  time: {} ms", r.millis);
        }
        for e in &errors {
            eprintln!("error: {e}");
        }
    }
    if !errors.is_empty() {
        ExitCode::from(2)
    } else if args.strict && out_of_scope {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn single_network(path: &str) -> Result<ReactionNetwork, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let blocks = split_blocks(&text);
    match blocks.as_slice() {
        [one] => parse_network(one).map_err(|e| format!("{path}: {e}")),
        _ => Err(format!(
            "{path}: expected exactly one network, found {}",
            blocks.len()
        )),
    }
}

#[derive(Serialize)]
struct WitnessReport {
    schema_version: u32,
    network: String,
    verdict: Verdict,
    found: bool,
    summary: Option<String>,
    millis: u128,
}

fn cmd_witness(args: &WitnessArgs) -> ExitCode {
    let net = match single_network(&args.file) {
        Ok(n) => n,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let classification = classify(&net);
    if classification.verdict != Verdict::NondegMss && !args.force {
        eprintln!(
            "refusing to search: classifier verdict is {} (use --force to search anyway)",
            verdict_name(classification.verdict)
        );
        return ExitCode::from(3);
    }
    let start = Instant::now();
    let cert = witness_search(&net, args.budget);
    let millis = start.elapsed().as_millis();
    let Some(cert) = cert else {
        if args.json {
            let report = WitnessReport {
                schema_version: SCHEMA_VERSION,
                network: net.to_string(),
                verdict: classification.verdict,
                found: false,
                summary: None,
                millis,
            };
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        } else {
            eprintln!("witness search exhausted its budget without a certificate");
        }
        return ExitCode::from(4);
    };
    let json = cert.to_json();
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &json) {
                eprintln!("error: {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => println!("{json}"),
    }
    if args.json {
        let report = WitnessReport {
            schema_version: SCHEMA_VERSION,
            network: net.to_string(),
            verdict: classification.verdict,
            found: true,
            summary: Some(cert.summary()),
            millis,
        };
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        eprintln!("{}", cert.summary());
        for r in &cert.roots {
            match &r.exact {
                Some(x) => eprintln!(
                    "  root: exactly {} in ({}, {})",
                    crn::rat::fmt_rat(x),
                    crn::rat::fmt_rat(&r.lo),
                    crn::rat::fmt_rat(&r.hi)
                ),
                None => eprintln!(
                    "  root: isolated in ({}, {})",
                    crn::rat::fmt_rat(&r.lo),
                    crn::rat::fmt_rat(&r.hi)
                ),
            }
        }
        eprintln!("  time: {millis} ms");
    }
    ExitCode::SUCCESS
}

#[derive(Serialize)]
struct VerifyReport {
    schema_version: u32,
    pass: bool,
    checks: Vec<VerifyCheck>,
}

#[derive(Serialize)]
struct VerifyCheck {
    name: String,
    pass: bool,
    detail: String,
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let net = match single_network(&args.network) {
        Ok(n) => n,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cert_text = match fs::read_to_string(&args.certificate) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", args.certificate);
            return ExitCode::from(2);
        }
    };
    let cert = match WitnessCertificate::from_json(&cert_text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", args.certificate);
            return ExitCode::from(2);
        }
    };
    let report = verify_certificate(&net, &cert);
    if args.json {
        let out = VerifyReport {
            schema_version: SCHEMA_VERSION,
            pass: report.pass,
            checks: report
                .checks
                .iter()
                .map(|c| VerifyCheck {
                    name: c.name.to_string(),
                    pass: c.pass,
                    detail: c.detail.clone(),
                })
                .collect(),
        };
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        for c in &report.checks {
            println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        println!("{}", if report.pass { "VERIFIED" } else { "REJECTED" });
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(5)
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::NondegMss => "NONDEG_MSS",
        Verdict::NotMss => "NOT_MSS",
        Verdict::Unknown => "UNKNOWN",
        Verdict::OutOfScope => "OUT_OF_SCOPE",
    }
}

fn shape_name(t: ShapeTag) -> &'static str {
    match t {
        ShapeTag::OneSpecies => "ONE_SPECIES",
        ShapeTag::OneReactionOrRevPair => "ONE_REACTION_OR_REV_PAIR",
        ShapeTag::TwoIrrev => "TWO_IRREV",
        ShapeTag::TwoSpeciesRevPlusIrrev => "TWO_SPECIES_REV_PLUS_IRREV",
        ShapeTag::TwoSpeciesTwoRev => "TWO_SPECIES_TWO_REV",
        ShapeTag::MultiSpeciesRank1 => "MULTI_SPECIES_RANK1",
        ShapeTag::Other => "OTHER",
    }
}

fn parse_shape_tag(s: &str) -> Result<ShapeTag, String> {
    match s {
        "ONE_SPECIES" => Ok(ShapeTag::OneSpecies),
        "TWO_IRREV" => Ok(ShapeTag::TwoIrrev),
        "TWO_SPECIES_REV_PLUS_IRREV" => Ok(ShapeTag::TwoSpeciesRevPlusIrrev),
        "TWO_SPECIES_TWO_REV" => Ok(ShapeTag::TwoSpeciesTwoRev),
        other => Err(format!(
            "unknown shape {other:?}; expected ONE_SPECIES, TWO_IRREV, \
             TWO_SPECIES_REV_PLUS_IRREV, or TWO_SPECIES_TWO_REV"
        )),
    }
}

#[derive(Serialize)]
struct CorpusReport {
    schema_version: u32,
    max_coeff: u64,
    total: usize,
    nondeg_mss: usize,
    not_mss: usize,
    unknown: usize,
    out_of_scope: usize,
    /// NONDEG_MSS networks of stoichiometric rank 1: the ones a univariate
    /// witness certificate can exist for.
    certificates_expected: usize,
    certificates_found: usize,
    certificates_missing: Vec<String>,
    millis: u128,
}

fn cmd_corpus(args: &CorpusArgs) -> ExitCode {
    let shape = match &args.shape {
        Some(s) => match parse_shape_tag(s) {
            Ok(t) => Some(t),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => None,
    };
    let start = Instant::now();
    let nets = corpus(args.max_coeff, shape);
    let mut report = CorpusReport {
        schema_version: SCHEMA_VERSION,
        max_coeff: args.max_coeff,
        total: nets.len(),
        nondeg_mss: 0,
        not_mss: 0,
        unknown: 0,
        out_of_scope: 0,
        certificates_expected: 0,
        certificates_found: 0,
        certificates_missing: Vec::new(),
        millis: 0,
    };
    for net in &nets {
        match classify(net).verdict {
            Verdict::NondegMss => {
                report.nondeg_mss += 1;
                // Witness certificates reduce to one variable, so only
                // rank-1 networks can carry one; rank-2 zigzag networks are
                // multistationary without a univariate reduction.
                if crn::structure::stoich_data(net).rank != 1 {
                    continue;
                }
                report.certificates_expected += 1;
                if witness_search(net, args.budget).is_some() {
                    report.certificates_found += 1;
                } else if report.certificates_missing.len() < 10 {
                    report.certificates_missing.push(net.to_string());
                }
            }
            Verdict::NotMss => report.not_mss += 1,
            Verdict::Unknown => report.unknown += 1,
            Verdict::OutOfScope => report.out_of_scope += 1,
        }
    }
    report.millis = start.elapsed().as_millis();
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("corpus (coefficients <= {}): {} networks", report.max_coeff, report.total);
        println!("  NONDEG_MSS: {}", report.nondeg_mss);
        println!("  NOT_MSS:    {}", report.not_mss);
        println!("  UNKNOWN:    {}", report.unknown);
        println!("  OUT_OF_SCOPE: {}", report.out_of_scope);
        println!(
            "  certificates: {}/{} rank-1 NONDEG_MSS verdicts witnessed",
            report.certificates_found, report.certificates_expected
        );
        if report.nondeg_mss > report.certificates_expected {
            println!(
                "  (plus {} rank-2 NONDEG_MSS networks, outside univariate certificates)",
                report.nondeg_mss - report.certificates_expected
            );
        }
        for n in &report.certificates_missing {
            println!("  missing certificate: {n}");
        }
        println!("  time: {} ms", report.millis);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Witness(a) => cmd_witness(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Corpus(a) => cmd_corpus(a),
    }
}
