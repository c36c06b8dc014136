//! `scat`: strong homotopy and simplicial LS category from the command line.
//!
//! Exit codes: 0 decided or pass, 1 fail, 2 indeterminate, 3 resource cap,
//! 64 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use scat_core::category::{
    search_cover, two_cover_prover, CategoryError, CoverCertificate, CoverMode, ProverOptions, SearchOptions,
    TwoCoverDecision,
};
use scat_core::certificate::{read_complex, Bundle, CertificateFile, CertificateKind};
use scat_core::contiguity::{is_categorical, CategoricalOutcome, DEFAULT_STATE_CAP};
use scat_core::homology::{h1_generators_mod2, h1_rank_mod2};
use scat_core::pipeline::{find_paper_complex, verify_paper, FindOptions, FindOutcome, PipelineOptions};
use scat_core::reconstruct::{audit, search_k, CandidatePool, ConstraintSet, SearchStatus};
use scat_core::strong::{core, find_collapse_to};
use scat_core::SimplicialComplex;

const PASS: u8 = 0;
const FAIL: u8 = 1;
const INDETERMINATE: u8 = 2;
const RESOURCE: u8 = 3;
const USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "scat", version, about = "Strong collapses, contiguity and simplicial LS category")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for the randomized cover searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of maps visited by a contiguity search.
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_CAP)]
    state_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pool {
    Band,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print the core of a complex and the collapse that reaches it.
    Core {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look for a strong collapse from the first complex onto the second.
    Collapse {
        file_m: PathBuf,
        file_k: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a subcomplex is categorical in an ambient complex.
    Categorical {
        file_u: PathBuf,
        file_k: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a cover by categorical subcomplexes.
    Scat {
        file: PathBuf,
        #[arg(long)]
        pieces: usize,
        #[arg(long, default_value_t = 2000)]
        attempts: usize,
        /// Directory for the cover certificate and piece files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a cover by strongly collapsible subcomplexes.
    Gscat {
        file: PathBuf,
        #[arg(long)]
        pieces: usize,
        #[arg(long, default_value_t = 2000)]
        attempts: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two strongly collapsible subcomplexes can cover the complex.
    #[command(name = "prove-no-2-cover")]
    ProveNo2Cover {
        file: PathBuf,
        /// Where to write the certificate (default: next to the input).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        forest_cap: u64,
    },
    /// Search for complexes satisfying the built-in constraints.
    Reconstruct {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        limit: usize,
        #[arg(long, default_value_t = 200_000_000)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Pool::Band)]
        pool: Pool,
    },
    /// Run every claim check and write a report with its certificates.
    VerifyPaper {
        /// Complex to check; reconstructed when omitted.
        #[arg(long)]
        k: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rank and generators of the first Z/2 homology.
    H1 { file: PathBuf },
}

fn load(path: &Path) -> Result<SimplicialComplex> {
    Ok(read_complex(path)?)
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_cover(dir: &Path, ambient: &SimplicialComplex, cert: &CoverCertificate) -> Result<()> {
    let mut bundle = Bundle::default();
    bundle.add_complex("ambient.cplx", ambient);
    bundle.add_cover("cover.json", "ambient.cplx", "pieces/piece", cert);
    bundle.write_to(dir)?;
    Ok(())
}

fn cover(cli: &Cli, file: &Path, pieces: usize, attempts: usize, out: &Option<PathBuf>, mode: CoverMode) -> Result<u8> {
    let k = load(file)?;
    let options = SearchOptions { attempts, seed: cli.seed, state_cap: cli.state_cap };
    match search_cover(&k, pieces, mode, &options)? {
        Some(cert) => {
            for (i, p) in cert.cover.pieces.iter().enumerate() {
                println!("piece {}:\n{}", i + 1, p.to_facet_text());
            }
            println!("verified cover with {pieces} pieces: category <= {}", pieces - 1);
            if let Some(dir) = out {
                write_cover(dir, &k, &cert)?;
            }
            Ok(PASS)
        }
        None => {
            println!("no cover with {pieces} pieces found in {attempts} attempts");
            Ok(INDETERMINATE)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Core { file, out } => {
            let seq = core(&load(file)?);
            for step in &seq.steps {
                println!("remove {} (dominated by {})", step.removed.as_str(), step.dominator.as_str());
            }
            println!("core, {} vertices:\n{}", seq.end.vertex_count(), seq.end.to_facet_text());
            if let Some(out) = out {
                write(out, &CertificateFile::new(CertificateKind::Collapse, &seq).to_json())?;
            }
            Ok(PASS)
        }
        Command::Collapse { file_m, file_k, out } => {
            let (m, k) = (load(file_m)?, load(file_k)?);
            match find_collapse_to(&m, &k) {
                Some(seq) => {
                    for step in &seq.steps {
                        println!("remove {} (dominated by {})", step.removed.as_str(), step.dominator.as_str());
                    }
                    println!("{} step(s)", seq.steps.len());
                    if let Some(out) = out {
                        write(out, &CertificateFile::new(CertificateKind::Collapse, &seq).to_json())?;
                    }
                    Ok(PASS)
                }
                None => {
                    println!("no strong collapse onto the target");
                    Ok(FAIL)
                }
            }
        }
        Command::Categorical { file_u, file_k, out } => {
            let (u, k) = (load(file_u)?, load(file_k)?);
            match is_categorical(&u, &k, cli.state_cap)? {
                CategoricalOutcome::Categorical(w) => {
                    println!(
                        "categorical: core contracts to {} in {} contiguity step(s)",
                        w.vertex.as_str(),
                        w.chain.len()
                    );
                    if let Some(out) = out {
                        write(out, &CertificateFile::new(CertificateKind::ContiguityChain, &w).to_json())?;
                    }
                    Ok(PASS)
                }
                CategoricalOutcome::NotCategorical { explored } => {
                    println!("not categorical ({explored} maps explored)");
                    Ok(FAIL)
                }
                CategoricalOutcome::Unknown { explored } => {
                    println!("unknown: state cap reached after {explored} maps");
                    Ok(INDETERMINATE)
                }
            }
        }
        Command::Scat { file, pieces, attempts, out } => cover(cli, file, *pieces, *attempts, out, CoverMode::Categorical),
        Command::Gscat { file, pieces, attempts, out } => {
            cover(cli, file, *pieces, *attempts, out, CoverMode::StronglyCollapsible)
        }
        Command::ProveNo2Cover { file, out, forest_cap } => {
            let k = load(file)?;
            let options = ProverOptions { forest_cap: *forest_cap, threads: cli.threads.unwrap_or(0), ..Default::default() };
            let out = out.clone().unwrap_or_else(|| file.with_extension("no-2-cover.json"));
            match two_cover_prover(&k, &options) {
                Ok(TwoCoverDecision::Impossible(cert)) => {
                    println!(
                        "no cover by two strongly collapsible subcomplexes: {} nodes, {} leaves, digest {}",
                        cert.stats.nodes, cert.stats.leaves, cert.digest
                    );
                    write(&out, &CertificateFile::new(CertificateKind::Impossibility, &cert).to_json())?;
                    println!("certificate written to {}", out.display());
                    Ok(PASS)
                }
                Ok(TwoCoverDecision::Cover(cert)) => {
                    for (i, p) in cert.cover.pieces.iter().enumerate() {
                        println!("piece {}:\n{}", i + 1, p.to_facet_text());
                    }
                    println!("found a cover by two strongly collapsible subcomplexes");
                    let dir = out.with_extension("");
                    write_cover(&dir, &k, &cert)?;
                    Ok(FAIL)
                }
                Err(CategoryError::ResourceCap(m)) => {
                    println!("resource cap: {m}");
                    Ok(RESOURCE)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Reconstruct { out, limit, budget, pool } => {
            let pool = match pool {
                Pool::Band => CandidatePool::ColumnBand,
                Pool::All => CandidatePool::All,
            };
            let constraints = ConstraintSet::two_handle_pinched_sphere().with_pool(pool);
            let result = search_k(&constraints, *limit, *budget)?;
            std::fs::create_dir_all(out)?;
            write(&out.join("constraints.json"), &(serde_json::to_string_pretty(&constraints)? + "\n"))?;
            for (i, k) in result.solutions.iter().enumerate() {
                write(&out.join(format!("solution-{:03}.cplx", i + 1)), &k.to_facet_text())?;
                let report = audit(k, &constraints);
                write(&out.join(format!("audit-{:03}.json", i + 1)), &(serde_json::to_string_pretty(&report)? + "\n"))?;
            }
            println!(
                "{} solution(s), {} nodes, status {:?}, digest {}",
                result.solutions.len(),
                result.nodes,
                result.status,
                result.digest
            );
            Ok(match (result.solutions.is_empty(), result.status) {
                (false, _) => PASS,
                (true, SearchStatus::BudgetExhausted) => INDETERMINATE,
                (true, _) => FAIL,
            })
        }
        Command::VerifyPaper { k, out } => {
            let pipeline = PipelineOptions {
                state_cap: cli.state_cap,
                search: SearchOptions { seed: cli.seed, state_cap: cli.state_cap, ..Default::default() },
                prover: ProverOptions { threads: cli.threads.unwrap_or(0), ..Default::default() },
            };
            let run = match k {
                Some(path) => verify_paper(&load(path)?, &pipeline)?,
                None => match find_paper_complex(&FindOptions { pipeline, ..Default::default() })? {
                    FindOutcome::Found { run, candidates_tried, .. } => {
                        println!("reconstructed K passes after {candidates_tried} candidate(s)");
                        run
                    }
                    FindOutcome::NotFound { candidates_tried, exhausted } => {
                        println!("no candidate passed ({candidates_tried} tried)");
                        return Ok(if exhausted { FAIL } else { INDETERMINATE });
                    }
                },
            };
            let root = out.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            run.bundle.write_to(root)?;
            write(out, &(serde_json::to_string_pretty(&run.report)? + "\n"))?;
            print!("{}", run.report.to_text());
            Ok(match run.report.overall {
                scat_core::pipeline::Status::Pass => PASS,
                scat_core::pipeline::Status::Fail => FAIL,
                scat_core::pipeline::Status::Indeterminate => INDETERMINATE,
            })
        }
        Command::H1 { file } => {
            let k = load(file)?;
            println!("rank {}", h1_rank_mod2(&k));
            for (i, z) in h1_generators_mod2(&k).iter().enumerate() {
                let edges: Vec<String> = z.iter().map(|e| e.to_string()).collect();
                println!("generator {}: {}", i + 1, edges.join(" "));
            }
            Ok(PASS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
