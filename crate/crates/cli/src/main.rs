use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abelweb::abelian::{total_rank, RankOptions};
use abelweb::canonical::canonical_data;
use abelweb::exactalg::{parse_scalar_list, Matrix};
use abelweb::formats::{
    matrix_to_rows, parse_json, rows_to_matrix, to_json, ArrangementFile, CanonicalFile, MomentSpecFile,
    PointsFile, RncFitFile, StructureFile, WebFile,
};
use abelweb::gen;
use abelweb::grassmann::{akivis_structure, fit_rnc, moment_web, recover_normal_form, MomentWebSpec};
use abelweb::incidence::tangent_incidence_web;
use abelweb::webcore::{degree_bound, h_cutoff, rho_bound, ConstantWeb};
use abelweb::{Error, Result};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "abelweb", version, about = "Exact computations on constant webs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Upper bound on the rank of a d-web of type (r, n)
    Bound {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        /// Print the bound for each degree
        #[arg(long)]
        per_degree: bool,
    },
    /// Check the general position condition
    Pg {
        #[arg(long)]
        web: PathBuf,
    },
    /// Dimensions of the abelian relation spaces by degree
    Rank {
        #[arg(long)]
        web: PathBuf,
        /// Also check that the first degree past the cutoff vanishes
        #[arg(long)]
        paranoid: bool,
        #[arg(long, conflicts_with = "tsv")]
        json: bool,
        #[arg(long)]
        tsv: bool,
        /// Compute even if the web is not in general position
        #[arg(long)]
        allow_degenerate: bool,
        /// Compute degrees on separate threads
        #[arg(long)]
        parallel: bool,
    },
    /// Build the moment web on the rational normal curve
    Moment {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        n: usize,
        /// Comma-separated distinct parameters, integers or p/q
        #[arg(long, allow_hyphen_values = true)]
        taus: String,
        /// JSON file holding an invertible rn x rn base change
        #[arg(long, conflicts_with = "random_base")]
        base: Option<PathBuf>,
        /// Random base change, seeded by ABELWEB_SEED
        #[arg(long)]
        random_base: bool,
        #[arg(short)]
        o: PathBuf,
        /// Also write the generating spec, for `canonical`
        #[arg(long)]
        emit_spec: Option<PathBuf>,
    },
    /// Recover the adapted structure and points of a semi-extremal web
    Recover {
        #[arg(long)]
        web: PathBuf,
        #[arg(short)]
        o: PathBuf,
    },
    /// Almost-Grassmannian structure of the first n+1 foliations
    Akivis {
        #[arg(long)]
        web: PathBuf,
    },
    /// Poincare points and canonical curve of a moment web
    Canonical {
        #[arg(long)]
        moment: PathBuf,
    },
    /// Tangent web of a plane arrangement at the base plane
    Incidence {
        #[arg(long)]
        arrangement: PathBuf,
        #[arg(short)]
        o: PathBuf,
    },
    /// Fit a rational normal curve through points
    FitRnc {
        #[arg(long)]
        points: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn load_web(path: &Path) -> Result<ConstantWeb> {
    parse_json::<WebFile>(&read(path)?)?.to_web()
}

fn one_based(subset: &[usize]) -> String {
    let parts: Vec<_> = subset.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn seed() -> Result<u64> {
    match std::env::var("ABELWEB_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Error::Parse(format!("ABELWEB_SEED must be an integer, got {s:?}"))),
        Err(_) => Ok(0),
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Bound { r, n, d, per_degree } => {
            if r == 0 || n < 2 {
                return Err(Error::Invalid("need r >= 1 and n >= 2".into()));
            }
            if per_degree {
                println!("h\tbound");
                for h in 0..h_cutoff(r, n, d) {
                    println!("{h}\t{}", degree_bound(r, n, d, h));
                }
                println!("total\t{}", rho_bound(r, n, d));
            } else {
                println!("{}", rho_bound(r, n, d));
            }
        }
        Command::Pg { web } => {
            let web = load_web(&web)?;
            web.require_pg()?;
            println!("general position holds");
        }
        Command::Rank { web, paranoid, json, tsv, allow_degenerate, parallel } => {
            let web = load_web(&web)?;
            let report = total_rank(&web, &RankOptions { allow_degenerate, paranoid, parallel })?;
            if json {
                println!("{}", report.to_json());
            } else if tsv {
                print!("{}", report.to_tsv());
            } else {
                for p in &report.per_degree {
                    let mark = if p.saturated { " (saturated)" } else { "" };
                    println!("dim R({}) = {} of {}{mark}", p.h, p.dim, p.bound);
                }
                println!("total {} of {}", report.total_rank, report.rho);
                println!("semi-extremal: {}", report.semi_extremal);
                println!("maximal rank: {}", report.maximal_rank);
            }
        }
        Command::Moment { r, n, taus, base, random_base, o, emit_spec } => {
            let taus = parse_scalar_list(&taus)?;
            let dim = r * n;
            let base_change = if let Some(path) = base {
                let rows: Vec<Vec<String>> = parse_json(&read(&path)?)?;
                rows_to_matrix(dim, &rows)?
            } else if random_base {
                gen::random_invertible(&mut gen::rng(seed()?), dim, 3)
            } else {
                Matrix::identity(dim)
            };
            let spec = MomentWebSpec::new(r, n, base_change, taus)?;
            let web = moment_web(&spec)?;
            write(&o, &to_json(&WebFile::from_web(&web)))?;
            if let Some(path) = emit_spec {
                write(&path, &to_json(&MomentSpecFile::from_spec(&spec)))?;
            }
        }
        Command::Recover { web, o } => {
            let s = recover_normal_form(&load_web(&web)?)?;
            write(&o, &to_json(&StructureFile::from_structure(&s)))?;
        }
        Command::Akivis { web } => {
            let web = load_web(&web)?;
            let n = web.n();
            if web.d() < n + 1 {
                return Err(Error::Invalid(format!("need at least {} foliations", n + 1)));
            }
            let basis = akivis_structure(&web.foliations()[..=n])?;
            print!("{}", to_json(&serde_json::json!({ "basis": matrix_to_rows(&basis) })));
        }
        Command::Canonical { moment } => {
            let spec = parse_json::<MomentSpecFile>(&read(&moment)?)?.to_spec()?;
            print!("{}", to_json(&CanonicalFile::from_data(&canonical_data(&spec)?)));
        }
        Command::Incidence { arrangement, o } => {
            let arr = parse_json::<ArrangementFile>(&read(&arrangement)?)?.to_arrangement()?;
            let web = tangent_incidence_web(&arr)?;
            write(&o, &to_json(&WebFile::from_web(&web)))?;
        }
        Command::FitRnc { points } => {
            let pts = parse_json::<PointsFile>(&read(&points)?)?.to_points()?;
            print!("{}", to_json(&RncFitFile::from_fit(&fit_rnc(&pts)?)));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                Error::NotGeneralPosition { subset } => {
                    eprintln!("error: web not in general position (failing subset {})", one_based(subset))
                }
                _ => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
