//! Command-line front end: build and cache the tower, construct witness
//! certificates and amalgams, run verifier suites, emit JSON reports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input validation
//! failure (including usage), 3 resource cap exceeded.

use clap::{Parser, Subcommand};
use serde::Deserialize;
use std::path::PathBuf;
use std::process::ExitCode;
use ultrahom::amalgam::AmalgamResultData;
use ultrahom::config::{Config, OutputMode};
use ultrahom::error::Error;
use ultrahom::finite_group::{FiniteGroup, FiniteGroupData};
use ultrahom::homomorphism::GroupHomomorphism;
use ultrahom::perm::Permutation;
use ultrahom::report::VerificationReport;
use ultrahom::theoremlab;
use ultrahom::tower::{CacheOutcome, Tower};

#[derive(Parser)]
#[command(
    name = "ultrahom",
    about = "Finite approximations of inner ultrahomogeneous groups, \
             with machine-checked witness certificates",
    version
)]
struct Cli {
    /// Cache directory for tower levels (or the ULTRAHOM_CACHE env var).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Largest symmetric-group degree a construction may introduce.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Largest group that may be enumerated element by element.
    #[arg(long, global = true)]
    max_enum: Option<usize>,
    /// Largest point set a permutational product may act on.
    #[arg(long, global = true)]
    neumann_cap: Option<usize>,
    /// Worker threads for suite execution.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Emit raw JSON records instead of human summaries.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build (or load from cache) the tower levels and print their sizes.
    Tower {
        #[arg(long, default_value_t = 2)]
        max_level: usize,
    },
    /// Construct a conjugation-witness certificate for a partial
    /// automorphism of a tower level.
    Witness {
        #[arg(long)]
        level: usize,
        /// JSON file: {"pairs": [{"from": [..], "to": [..]}, ..]}.
        #[arg(long)]
        pairs: PathBuf,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Amalgamate two groups over a common subgroup, optionally carrying
    /// matched families of partial automorphisms.
    Amalgam {
        /// Common subgroup A (group file).
        #[arg(long)]
        base: PathBuf,
        /// Left factor B (group file).
        #[arg(long)]
        left: PathBuf,
        /// Right factor C (group file).
        #[arg(long)]
        right: PathBuf,
        /// Embedding A -> B: {"map": [..]}.
        #[arg(long)]
        embed_left: PathBuf,
        /// Embedding A -> C: {"map": [..]}.
        #[arg(long)]
        embed_right: PathBuf,
        /// Partial automorphisms of B: {"pairs": [[a,b],..]} (repeatable).
        #[arg(long)]
        partial_left: Vec<PathBuf>,
        /// Partial automorphisms of C, matched with the left family.
        #[arg(long)]
        partial_right: Vec<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a verifier suite (or "all") and emit the report.
    Verify {
        suite: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a finite group file for inner ultrahomogeneity.
    CheckGroup { group: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut config = Config::default();
    config.cache_dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("ULTRAHOM_CACHE").map(PathBuf::from));
    if let Some(d) = cli.max_degree {
        config.degree_cap = d;
    }
    if let Some(e) = cli.max_enum {
        config.enumeration_cap = e;
    }
    if let Some(n) = cli.neumann_cap {
        config.neumann_cap = n;
    }
    config.workers = cli.workers.max(1);
    config.output = if cli.json {
        OutputMode::Json
    } else {
        OutputMode::Human
    };
    if let Some(dir) = &config.cache_dir {
        if std::fs::create_dir_all(dir).is_err() {
            eprintln!("error: cache directory {} is not writable", dir.display());
            return ExitCode::from(2);
        }
    }

    let result = match &cli.command {
        Command::Tower { max_level } => cmd_tower(*max_level, &config),
        Command::Witness {
            level,
            pairs,
            output,
        } => cmd_witness(*level, pairs, output.as_deref(), &config),
        Command::Amalgam {
            base,
            left,
            right,
            embed_left,
            embed_right,
            partial_left,
            partial_right,
            output,
        } => cmd_amalgam(
            base,
            left,
            right,
            embed_left,
            embed_right,
            partial_left,
            partial_right,
            output.as_deref(),
            &config,
        ),
        Command::Verify { suite, output } => cmd_verify(suite, output.as_deref(), &config),
        Command::CheckGroup { group } => cmd_check_group(group, &config),
    };

    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => 3,
        Error::Pipeline { source, .. } => exit_code_for(source),
        Error::InvalidPartialAutomorphism(_)
        | Error::Precondition(_)
        | Error::NotABijection { .. }
        | Error::DegreeMismatch { .. }
        | Error::NotInGroup
        | Error::OrderMismatch { .. }
        | Error::LevelOutOfRange(_)
        | Error::Json(_) => 2,
        _ => 1,
    }
}

fn cmd_tower(max_level: usize, config: &Config) -> Result<ExitCode, Error> {
    let tower = Tower::build(max_level, config)?;
    let mut records = Vec::new();
    for level in tower.levels() {
        if level.cache_outcome == CacheOutcome::RebuiltAfterMismatch {
            eprintln!(
                "warning: cache for level {} was corrupt or stale; rebuilt",
                level.index
            );
        }
        records.push(serde_json::json!({
            "level": level.index,
            "degree": level.degree(),
            "order": level.order().to_string(),
            "cache": format!("{:?}", level.cache_outcome),
        }));
    }
    match config.output {
        OutputMode::Json => println!("{}", serde_json::to_string_pretty(&records)?),
        OutputMode::Human => {
            for r in &records {
                let order = r["order"].as_str().unwrap();
                let shown = if order.len() > 40 {
                    format!("{}... ({} digits)", &order[..20], order.len())
                } else {
                    order.to_string()
                };
                println!(
                    "level {}: degree {}, order {} [{}]",
                    r["level"], r["degree"], shown, r["cache"]
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Deserialize)]
struct PairsFile {
    pairs: Vec<PairEntry>,
}

#[derive(Deserialize)]
struct PairEntry {
    from: Permutation,
    to: Permutation,
}

fn cmd_witness(
    level: usize,
    pairs_path: &std::path::Path,
    output: Option<&std::path::Path>,
    config: &Config,
) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(pairs_path)?;
    let file: PairsFile = serde_json::from_str(&text)?;
    let pairs: Vec<(Permutation, Permutation)> =
        file.pairs.into_iter().map(|p| (p.from, p.to)).collect();
    let tower = Tower::build((level + 1).min(2), config)?;
    let cert = tower.inner_uh_witness(level, &pairs)?;
    let json = serde_json::to_string_pretty(&cert)?;
    match output {
        Some(path) => std::fs::write(path, &json)?,
        None => {
            if config.output == OutputMode::Json {
                println!("{json}");
            }
        }
    }
    if config.output == OutputMode::Human {
        println!(
            "witness in Sym({}) conjugating {} verified equation(s); tag {}",
            cert.witness.degree(),
            cert.verified_equations,
            cert.tag
        );
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Deserialize)]
struct EmbeddingFile {
    map: Vec<usize>,
}

#[derive(Deserialize)]
struct PartialFile {
    pairs: Vec<(usize, usize)>,
}

fn load_group(path: &std::path::Path) -> Result<FiniteGroup, Error> {
    let text = std::fs::read_to_string(path)?;
    let data: FiniteGroupData = serde_json::from_str(&text)?;
    FiniteGroup::from_data(data)
}

#[allow(clippy::too_many_arguments)]
fn cmd_amalgam(
    base: &std::path::Path,
    left: &std::path::Path,
    right: &std::path::Path,
    embed_left: &std::path::Path,
    embed_right: &std::path::Path,
    partial_left: &[PathBuf],
    partial_right: &[PathBuf],
    output: Option<&std::path::Path>,
    config: &Config,
) -> Result<ExitCode, Error> {
    let a = load_group(base)?;
    let b = load_group(left)?;
    let c = load_group(right)?;
    let read_embed =
        |p: &std::path::Path, target: &FiniteGroup| -> Result<GroupHomomorphism, Error> {
            let text = std::fs::read_to_string(p)?;
            let e: EmbeddingFile = serde_json::from_str(&text)?;
            GroupHomomorphism::new(&a, target, e.map)?.require_embedding()
        };
    let i_ab = read_embed(embed_left, &b)?;
    let i_ac = read_embed(embed_right, &c)?;
    let read_partials = |paths: &[PathBuf]| -> Result<Vec<Vec<(usize, usize)>>, Error> {
        paths
            .iter()
            .map(|p| {
                let text = std::fs::read_to_string(p)?;
                let f: PartialFile = serde_json::from_str(&text)?;
                Ok(f.pairs)
            })
            .collect()
    };
    let ps = read_partials(partial_left)?;
    let qs = read_partials(partial_right)?;
    if ps.len() != qs.len() {
        return Err(Error::Precondition(
            "matched families must have equal length".into(),
        ));
    }

    let result = if ps.is_empty() {
        ultrahom::amalgam::permutational_product(
            &a,
            &b,
            &c,
            &i_ab,
            &i_ac,
            config.neumann_cap,
            config.enumeration_cap,
        )
    } else {
        ultrahom::eppa::eppa_amalgam_with_automorphisms(&a, &b, &c, &i_ab, &i_ac, &ps, &qs, config)
    };
    let amalgam = match result {
        Ok(am) => am,
        Err(Error::Pipeline { completed, source }) => {
            eprintln!(
                "pipeline stopped after stages [{}]: {source}",
                completed.join(", ")
            );
            return Ok(ExitCode::from(3));
        }
        Err(e) => return Err(e),
    };

    let data: AmalgamResultData = amalgam.to_data();
    let json = serde_json::to_string_pretty(&data)?;
    match output {
        Some(path) => std::fs::write(path, &json)?,
        None => {
            if config.output == OutputMode::Json {
                println!("{json}");
            }
        }
    }
    if config.output == OutputMode::Human {
        println!(
            "amalgam on {} points, order {}, intersection {:?}, {} witness(es)",
            amalgam.degree,
            amalgam.group.order(),
            amalgam.intersection,
            amalgam.witnesses.len()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    suite: &str,
    output: Option<&std::path::Path>,
    config: &Config,
) -> Result<ExitCode, Error> {
    let reports: Vec<VerificationReport> = if suite == "all" {
        run_all_parallel(config)?
    } else {
        vec![theoremlab::run_suite(suite, config)?]
    };
    let json = serde_json::to_string_pretty(&reports)?;
    match output {
        Some(path) => std::fs::write(path, &json)?,
        None => {
            if config.output == OutputMode::Json {
                println!("{json}");
            }
        }
    }
    let mut all_pass = true;
    for r in &reports {
        if config.output == OutputMode::Human {
            println!("{}", r.summary());
        }
        all_pass &= r.passed();
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Suites are independent over immutable data; run them on a small
/// worker pool and merge by registry order so output is stable.
fn run_all_parallel(config: &Config) -> Result<Vec<VerificationReport>, Error> {
    let names = theoremlab::SUITE_NAMES;
    if config.workers <= 1 {
        return names
            .iter()
            .map(|n| theoremlab::run_suite(n, config))
            .collect();
    }
    let mut slots: Vec<Option<Result<VerificationReport, Error>>> =
        (0..names.len()).map(|_| None).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots_ref = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|scope| {
        for _ in 0..config.workers.min(names.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= names.len() {
                    break;
                }
                let report = theoremlab::run_suite(names[i], config);
                slots_ref.lock().unwrap()[i] = Some(report);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every suite ran"))
        .collect()
}

fn cmd_check_group(path: &std::path::Path, config: &Config) -> Result<ExitCode, Error> {
    let group = load_group(path)?;
    let outcome = theoremlab::check_inner_ultrahomogeneous(&group)?;
    let record = serde_json::json!({
        "order": group.order(),
        "inner_ultrahomogeneous": outcome.is_inner_uh,
        "subgroups": outcome.subgroup_count,
        "isomorphisms_checked": outcome.isomorphisms_checked,
        "counterexample": outcome.counterexample.as_ref().map(|(d, r, pairs)| {
            serde_json::json!({"dom": d, "ran": r, "pairs": pairs})
        }),
    });
    match config.output {
        OutputMode::Json => println!("{}", serde_json::to_string_pretty(&record)?),
        OutputMode::Human => {
            println!(
                "order {}: inner ultrahomogeneous = {} ({} isomorphisms over {} subgroups)",
                group.order(),
                outcome.is_inner_uh,
                outcome.isomorphisms_checked,
                outcome.subgroup_count
            );
            if let Some((dom, _, pairs)) = &outcome.counterexample {
                println!("  unwitnessed map on subgroup {dom:?}: pairs {pairs:?}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
