//! Command-line surface for the congruence engine.
//!
//! Six subcommands: `expand` (Fourier/Laurent expansion of a product spec),
//! `scan` (maximal congruent progressions of the specialized series),
//! `explain` (explainability verdict for one progression), `orbit`
//! (square-class transfer across the orbit of a progression), `bounds`
//! (divisor bounds a maximal progression must satisfy), and `oracle`
//! (independent naive re-expansion and partition-statistic censuses).
//!
//! Everything goes to standard output as compact deterministic JSON, or as
//! flat CSV under `--csv`.  Exit codes: 0 for clean verdicts, 2 when a
//! checked congruence fails or is not explainable (a verdict, not an
//! error), 1 for errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use congruence_forge::{config, dsl};
use num_rational::Rational64;

use forge_core::oracle::{oracle_product_coefficients, rank_table, RankTable, Statistic};
use forge_core::{
    check_explainable, check_maximality_bounds, orbit_violations, scan_maximal_progressions,
    verify_square_class_theorem, CongruenceQuery, CongruenceReport, CoprimalityMode,
    FourierSeries, JacobiExpansion, MaximalityCheck, ProductSpec, Specialization,
};

#[derive(Parser)]
#[command(
    name = "congruence-forge",
    version,
    about = "Search and certify explainable congruences of eta/theta quotients"
)]
struct Cli {
    /// TOML config file with `terms`, `threads`, `min_evidence` defaults.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Worker threads for scans (beats CONGRUENCE_FORGE_THREADS and config).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a product spec into its two-variable Fourier expansion.
    Expand {
        /// Product spec, e.g. "eta(1)^2 * theta(1)^-1".
        spec: String,
        /// Supported lattice points to expand.
        #[arg(long)]
        terms: Option<i64>,
        /// Emit JSON (the default).
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Emit flat CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// List maximal congruent progressions of the specialized series.
    Scan {
        spec: String,
        /// Congruence prime.
        #[arg(long)]
        ell: u32,
        /// Largest progression modulus to consider.
        #[arg(long)]
        mmax: i64,
        #[arg(long)]
        terms: Option<i64>,
        #[arg(long)]
        min_evidence: Option<i64>,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Check one progression for explainability (exit 2 when it fails).
    Explain {
        spec: String,
        #[arg(long)]
        ell: u32,
        /// Progression modulus.
        #[arg(long = "M")]
        modulus: i64,
        /// Progression offset, as `num/den` on the exponent lattice.
        #[arg(long)]
        beta: String,
        /// Interpret --beta combinatorially: add the spec's q-shift to it.
        #[arg(long)]
        beta_combinatorial: bool,
        #[arg(long)]
        terms: Option<i64>,
        #[arg(long)]
        min_evidence: Option<i64>,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Verify explainability across the square-class orbit of a progression.
    Orbit {
        spec: String,
        #[arg(long)]
        ell: u32,
        #[arg(long = "M")]
        modulus: i64,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        beta_combinatorial: bool,
        /// Require multipliers coprime to M only, not to M times the
        /// exponent denominator.
        #[arg(long)]
        literal_coprimality: bool,
        #[arg(long)]
        terms: Option<i64>,
        #[arg(long)]
        min_evidence: Option<i64>,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Check the divisor bounds a maximal progression must satisfy.
    Bounds {
        #[arg(long = "M")]
        modulus: i64,
        #[arg(long)]
        beta: String,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Run the independent oracle: naive re-expansion of a spec, or a
    /// partition-statistic census with --statistic.
    Oracle {
        /// Product spec to re-expand naively (omit when using --statistic).
        spec: Option<String>,
        /// Census statistic: rank, crank, or colored-residual.
        #[arg(long, conflicts_with = "spec")]
        statistic: Option<String>,
        /// Partition size for the census.
        #[arg(long, requires = "statistic")]
        n: Option<u32>,
        /// Residue modulus for the census.
        #[arg(long, requires = "statistic")]
        ell: Option<u32>,
        #[arg(long)]
        terms: Option<i64>,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
}

fn parse_rational(text: &str) -> anyhow::Result<Rational64> {
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let numer: i64 =
        numer.trim().parse().with_context(|| format!("bad rational numerator in {:?}", text))?;
    let denom: i64 =
        denom.trim().parse().with_context(|| format!("bad rational denominator in {:?}", text))?;
    if denom == 0 {
        bail!("rational denominator must be nonzero in {:?}", text);
    }
    Ok(Rational64::new(numer, denom))
}

fn parse_statistic(text: &str) -> anyhow::Result<Statistic> {
    match text {
        "rank" => Ok(Statistic::Rank),
        "crank" => Ok(Statistic::Crank),
        "colored-residual" => Ok(Statistic::ColoredResidual),
        other => bail!("unknown statistic {:?}: use rank, crank, or colored-residual", other),
    }
}

/// Engine-coordinate progression offset from the command line.
fn resolve_beta(
    text: &str,
    combinatorial: bool,
    spec: &ProductSpec,
) -> anyhow::Result<Rational64> {
    let beta = parse_rational(text)?;
    Ok(if combinatorial { beta + spec.q_shift() } else { beta })
}

/// Evidence never truncates below the expansion: small slack over `terms`
/// keeps positive q-shifts inside the scanned exponent range.
fn n_max_for(terms: i64) -> i64 {
    terms.saturating_add(64)
}

fn rational_or_empty(r: &Option<Rational64>) -> String {
    match r {
        Some(r) => format!("{}/{}", r.numer(), r.denom()),
        None => String::new(),
    }
}

fn print_series(series: &FourierSeries, csv: bool) -> anyhow::Result<()> {
    if csv {
        println!("num,den,zexp,zden,int");
        for (key, coeff) in series.terms() {
            for (zexp, value) in coeff.terms() {
                println!("{},{},{},{},{}", key, series.denom(), zexp, coeff.denom(), value);
            }
        }
    } else {
        println!("{}", serde_json::to_string(series)?);
    }
    Ok(())
}

const REPORT_CSV_HEADER: &str = "ell,modulus,beta_num,beta_den,holds_plain,explainable,vacuous,\
                                 checked_count,first_counterexample,failing_n";

fn report_csv_row(r: &CongruenceReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        r.query.ell(),
        r.query.modulus(),
        r.query.beta().numer(),
        r.query.beta().denom(),
        r.holds_plain,
        r.explainable,
        r.vacuous,
        r.checked_count,
        rational_or_empty(&r.first_counterexample),
        rational_or_empty(&r.failing_n),
    )
}

fn print_report(report: &CongruenceReport, csv: bool) -> anyhow::Result<()> {
    if csv {
        println!("{}", REPORT_CSV_HEADER);
        if report.orbit.is_empty() {
            println!("{}", report_csv_row(report));
        } else {
            for member in &report.orbit {
                println!("{}", report_csv_row(member));
            }
        }
    } else {
        println!("{}", serde_json::to_string(report)?);
    }
    Ok(())
}

fn print_bounds(check: &MaximalityCheck, csv: bool) -> anyhow::Result<()> {
    if csv {
        println!("prime,ord_modulus,ord_beta,limit,ok");
        for d in &check.diagnostics {
            let ord_beta = d.ord_beta.map(|o| o.to_string()).unwrap_or_default();
            println!("{},{},{},{},{}", d.prime, d.ord_modulus, ord_beta, d.limit, d.ok);
        }
    } else {
        println!("{}", serde_json::to_string(check)?);
    }
    Ok(())
}

fn print_rank_table(table: &RankTable, csv: bool) -> anyhow::Result<()> {
    if csv {
        println!("n,ell,statistic,residue,count");
        for (residue, count) in table.counts.iter().enumerate() {
            println!("{},{},{},{},{}", table.n, table.ell, table.statistic, residue, count);
        }
    } else {
        println!("{}", serde_json::to_string(table)?);
    }
    Ok(())
}

#[derive(serde::Serialize)]
struct ScanHit {
    modulus: i64,
    beta_num: i64,
    beta_den: i64,
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let settings = config::resolve(
        cli.config.as_deref(),
        cli.threads,
        std::env::var("CONGRUENCE_FORGE_THREADS").ok().as_deref(),
    )?;
    if let Some(threads) = settings.threads {
        if threads > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
                .context("initializing the scan thread pool")?;
        }
    }

    match cli.command {
        Command::Expand { spec, terms, json: _, csv } => {
            let spec = dsl::parse_spec(&spec)?;
            let phi = JacobiExpansion::from_spec(&spec, terms.unwrap_or(settings.terms))?;
            print_series(phi.series(), csv)?;
            Ok(0)
        }
        Command::Scan { spec, ell, mmax, terms, min_evidence, json: _, csv } => {
            let spec = dsl::parse_spec(&spec)?;
            let terms = terms.unwrap_or(settings.terms);
            let f = Specialization::from_spec(&spec, terms)?;
            let hits = scan_maximal_progressions(
                &f,
                ell,
                mmax,
                n_max_for(terms),
                min_evidence.unwrap_or(settings.min_evidence),
            )?;
            let rows: Vec<ScanHit> = hits
                .iter()
                .map(|(modulus, beta)| ScanHit {
                    modulus: *modulus,
                    beta_num: *beta.numer(),
                    beta_den: *beta.denom(),
                })
                .collect();
            if csv {
                println!("modulus,beta_num,beta_den");
                for row in &rows {
                    println!("{},{},{}", row.modulus, row.beta_num, row.beta_den);
                }
            } else {
                println!("{}", serde_json::to_string(&rows)?);
            }
            Ok(0)
        }
        Command::Explain {
            spec,
            ell,
            modulus,
            beta,
            beta_combinatorial,
            terms,
            min_evidence,
            json: _,
            csv,
        } => {
            let spec = dsl::parse_spec(&spec)?;
            let beta = resolve_beta(&beta, beta_combinatorial, &spec)?;
            let terms = terms.unwrap_or(settings.terms);
            let phi = JacobiExpansion::from_spec(&spec, terms)?;
            let query = CongruenceQuery::new(ell, modulus, beta, n_max_for(terms))?;
            let report =
                check_explainable(&phi, &query, min_evidence.unwrap_or(settings.min_evidence))?;
            print_report(&report, csv)?;
            Ok(if report.explainable { 0 } else { 2 })
        }
        Command::Orbit {
            spec,
            ell,
            modulus,
            beta,
            beta_combinatorial,
            literal_coprimality,
            terms,
            min_evidence,
            json: _,
            csv,
        } => {
            let spec = dsl::parse_spec(&spec)?;
            let beta = resolve_beta(&beta, beta_combinatorial, &spec)?;
            let terms = terms.unwrap_or(settings.terms);
            let min_evidence = min_evidence.unwrap_or(settings.min_evidence);
            let mode = if literal_coprimality {
                CoprimalityMode::Literal
            } else {
                CoprimalityMode::SupportPreserving
            };
            let phi = JacobiExpansion::from_spec(&spec, terms)?;
            let query = CongruenceQuery::new(ell, modulus, beta, n_max_for(terms))?;
            let mut root = check_explainable(&phi, &query, min_evidence)?;
            let members = verify_square_class_theorem(&phi, &query, mode, min_evidence)?;
            let clean = root.explainable && orbit_violations(&members).is_empty();
            root.orbit = members;
            print_report(&root, csv)?;
            Ok(if clean { 0 } else { 2 })
        }
        Command::Bounds { modulus, beta, json: _, csv } => {
            let beta = parse_rational(&beta)?;
            let check = check_maximality_bounds(modulus, beta);
            print_bounds(&check, csv)?;
            Ok(if check.ok { 0 } else { 2 })
        }
        Command::Oracle { spec, statistic, n, ell, terms, json: _, csv } => match (spec, statistic)
        {
            (Some(text), None) => {
                let spec = dsl::parse_spec(&text)?;
                let series = oracle_product_coefficients(&spec, terms.unwrap_or(settings.terms))?;
                print_series(&series, csv)?;
                Ok(0)
            }
            (None, Some(statistic)) => {
                let statistic = parse_statistic(&statistic)?;
                let n = n.context("--statistic censuses need --n")?;
                let ell = ell.context("--statistic censuses need --ell")?;
                print_rank_table(&rank_table(n, ell, statistic), csv)?;
                Ok(0)
            }
            _ => bail!("provide either a product spec or --statistic"),
        },
    }
}

fn main() -> ExitCode {
    // Exit code 2 is reserved for failed verdicts, so usage mistakes exit
    // with 1 like every other error instead of clap's default 2.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(1)
        }
    }
}
