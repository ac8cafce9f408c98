use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hurwitz_core::bigness::{coarse_range_ok, scan, verify_coarse, verify_stack, BignessCertificate, Verdict};
use hurwitz_core::divisor::{canonical_m0b, kappa1_m0b, weierstrass_class};
use hurwitz_core::hurwitz::{
    branch_pullback_bi, canonical_coarse, canonical_stack, hodge_class, kappa1_pullback,
};
use hurwitz_core::low_slope::{best_recipe, hilbert2_class, odd_pushforward_class, syzygy_class_g7};
use hurwitz_core::partitions::{count_transposition_factorizations, transposition_feasible};
use hurwitz_core::scalar::parse_rational;
use hurwitz_core::wire::{
    to_json, CertificateJson, DivisorClassJson, HurwitzClassJson, OracleJson, OutputEnvelope, Payload, RecipeJson,
    ScanRowJson,
};
use hurwitz_core::{DivisorRecipe, Error, Mode, Partition, Rational};

mod render;

const DEFAULT_MAX_K: u32 = 10;

#[derive(Parser)]
#[command(name = "hurwitz", version, about = "Divisor classes on Hurwitz spaces and bigness certificates")]
struct Cli {
    /// Output format; text adds decimal approximations.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Subject {
    Hodge,
    CanonicalStack,
    CanonicalCoarse,
    BranchPullback,
    Kappa1,
    CanonicalM0b,
    Weierstrass,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Even,
    Odd,
    #[value(name = "syzygy-g7")]
    SyzygyG7,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Stack,
    Coarse,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a divisor class.
    Classes {
        #[arg(value_enum)]
        subject: Subject,
        #[arg(long)]
        g: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        /// Number of marked points on M_0,b.
        #[arg(long)]
        b: Option<u32>,
        /// Boundary index for branch-pullback.
        #[arg(long)]
        i: Option<u32>,
    },
    /// Build a divisor of small slope on M_g.
    Divisor {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        g: Option<u32>,
    },
    /// Certify bigness of the canonical class of H_g^k.
    Verify {
        #[arg(value_enum)]
        mode: ModeArg,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        k: u32,
        /// Slope p/q of a divisor supplied by the user.
        #[arg(long, requires = "assume_avoidance")]
        slope: Option<String>,
        /// Assume the user divisor is effective and avoids the k-gonal locus.
        #[arg(long, requires = "slope")]
        assume_avoidance: bool,
    },
    /// Certify every cell of a (k, g) grid.
    Scan {
        #[arg(long, num_args = 2, value_names = ["KMIN", "KMAX"], required = true)]
        k: Vec<u32>,
        #[arg(long, num_args = 2, value_names = ["GMIN", "GMAX"], required = true)]
        g: Vec<u32>,
        /// Also write the table as CSV to this path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Count factorizations of a permutation into transpositions.
    Oracle {
        #[arg(long)]
        k: u32,
        /// Cycle type, e.g. 2,1,1.
        #[arg(long)]
        mu: String,
        #[arg(long)]
        i: u32,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Outcome {
    payload: Payload,
    code: u8,
    summary: Option<String>,
}

impl Outcome {
    fn ok(payload: Payload) -> Self {
        Outcome { payload, code: 0, summary: None }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn need(value: Option<u32>, name: &str) -> Result<u32, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{name} is required for this subject")))
}

fn max_k() -> Result<u32, Failure> {
    match std::env::var("HURWITZ_MAX_K") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("HURWITZ_MAX_K must be an integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_K),
    }
}

fn check_k(k: u32) -> Result<(), Failure> {
    let cap = max_k()?;
    if k > cap {
        return usage(format!("k = {k} exceeds HURWITZ_MAX_K = {cap}"));
    }
    Ok(())
}

fn hurwitz_payload(class: hurwitz_core::HurwitzClassQ) -> Payload {
    Payload::HurwitzClass(HurwitzClassJson::from(&class))
}

fn classes(subject: Subject, g: Option<u32>, k: Option<u32>, b: Option<u32>, i: Option<u32>) -> Result<Outcome, Failure> {
    let gk = || -> Result<(u32, u32), Failure> {
        let (g, k) = (need(g, "g")?, need(k, "k")?);
        check_k(k)?;
        Ok((g, k))
    };
    let payload = match subject {
        Subject::Hodge => {
            let (g, k) = gk()?;
            hurwitz_payload(hodge_class(g, k)?)
        }
        Subject::CanonicalStack => {
            let (g, k) = gk()?;
            hurwitz_payload(canonical_stack(g, k)?)
        }
        Subject::CanonicalCoarse => {
            let (g, k) = gk()?;
            hurwitz_payload(canonical_coarse(g, k)?)
        }
        Subject::BranchPullback => {
            let (g, k) = gk()?;
            hurwitz_payload(branch_pullback_bi(g, k, need(i, "i")?)?)
        }
        Subject::Kappa1 => match b {
            Some(b) => Payload::DivisorClass(DivisorClassJson::from(&kappa1_m0b::<Rational>(b)?)),
            None => {
                let (g, k) = gk()?;
                hurwitz_payload(kappa1_pullback(g, k)?)
            }
        },
        Subject::CanonicalM0b => Payload::DivisorClass(DivisorClassJson::from(&canonical_m0b::<Rational>(need(b, "b")?)?)),
        Subject::Weierstrass => {
            Payload::DivisorClass(DivisorClassJson::from(&weierstrass_class::<Rational>(need(g, "g")?)?))
        }
    };
    Ok(Outcome::ok(payload))
}

fn divisor(kind: Kind, g: Option<u32>) -> Result<Outcome, Failure> {
    let recipe: DivisorRecipe = match kind {
        Kind::Even => hilbert2_class(need(g, "g")?)?,
        Kind::Odd => odd_pushforward_class(need(g, "g")?)?,
        Kind::SyzygyG7 => {
            if g.is_some_and(|g| g != 7) {
                return usage("the syzygy divisor lives on M_7");
            }
            syzygy_class_g7()?
        }
    };
    Ok(Outcome::ok(Payload::DivisorRecipe(RecipeJson::from(&recipe))))
}

fn verification_code(c: &BignessCertificate) -> u8 {
    if c.verdict == Verdict::Certified {
        0
    } else {
        1
    }
}

fn verify(mode: ModeArg, g: u32, k: u32, slope: Option<String>) -> Result<Outcome, Failure> {
    check_k(k)?;
    if matches!(mode, ModeArg::Coarse) && !coarse_range_ok(g, k) {
        return usage(format!("coarse certificate needs 3 <= k <= (g+2)/2, got g={g}, k={k}"));
    }
    let recipe = match slope {
        Some(text) => Some(DivisorRecipe::user_supplied(g, k, parse_rational(&text)?)?),
        None => best_recipe::<Rational>(g, k)?,
    };
    let cert = match (recipe, mode) {
        (None, ModeArg::Stack) => BignessCertificate::no_divisor(g, k, Mode::Stack),
        (None, ModeArg::Coarse) => BignessCertificate::no_divisor(g, k, Mode::Coarse),
        (Some(r), ModeArg::Stack) => verify_stack(g, k, &r)?,
        (Some(r), ModeArg::Coarse) => verify_coarse(g, k, &r)?,
    };
    Ok(Outcome {
        code: verification_code(&cert),
        summary: Some(format!("{} {} for g={g}, k={k}", cert.mode, cert.verdict)),
        payload: Payload::BignessCertificate(CertificateJson::from(&cert)),
    })
}

fn scan_command(k: &[u32], g: &[u32], out: Option<PathBuf>, jobs: Option<usize>) -> Result<Outcome, Failure> {
    let (kmin, kmax, gmin, gmax) = (k[0], k[1], g[0], g[1]);
    if kmin <= kmax {
        check_k(kmax)?;
    }
    let rows = scan(kmin..=kmax, gmin..=gmax, jobs)?;
    let table: Vec<ScanRowJson> = rows.iter().map(ScanRowJson::from).collect();
    if let Some(path) = out {
        fs::write(&path, render::scan_csv(&table)).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    let stack = rows.iter().filter(|r| r.stack.verdict == Verdict::Certified).count();
    let coarse = rows.iter().filter(|r| r.coarse.as_ref().is_some_and(|c| c.verdict == Verdict::Certified)).count();
    Ok(Outcome {
        payload: Payload::ScanTable(table),
        code: 0,
        summary: Some(format!("{} cells, {stack} stack certified, {coarse} coarse certified", rows.len())),
    })
}

fn oracle(k: u32, mu: &str, i: u32) -> Result<Outcome, Failure> {
    check_k(k)?;
    let mu: Partition = mu.parse()?;
    if mu.weight() != k {
        return usage(format!("{mu} is not a partition of {k}"));
    }
    let count = count_transposition_factorizations(&mu, i)?;
    let feasible = transposition_feasible(&mu, i);
    let agree = feasible == (count > 0u32.into());
    Ok(Outcome::ok(Payload::Oracle(OracleJson {
        k,
        mu: mu.parts().to_vec(),
        i,
        count: count.to_string(),
        feasible,
        agree,
    })))
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Classes { subject, g, k, b, i } => classes(subject, g, k, b, i),
        Command::Divisor { kind, g } => divisor(kind, g),
        Command::Verify { mode, g, k, slope, assume_avoidance: _ } => verify(mode, g, k, slope),
        Command::Scan { k, g, out, jobs } => scan_command(&k, &g, out, jobs),
        Command::Oracle { k, mu, i } => oracle(k, &mu, i),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match run(cli) {
        Ok(outcome) => {
            let text = match format {
                Format::Json => to_json(&OutputEnvelope {
                    tool_version: env!("CARGO_PKG_VERSION").to_string(),
                    command,
                    payload: outcome.payload,
                }),
                Format::Csv => render::csv(&outcome.payload),
                Format::Text => render::text(&outcome.payload),
            };
            print!("{text}");
            if let Some(s) = outcome.summary {
                eprintln!("{s}");
            }
            ExitCode::from(outcome.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
