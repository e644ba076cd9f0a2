//! `germinv`: singularity invariants of map germs from germ files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use germ_invariants::germ::{
    analyse, milnor_number, report_from, verified_image, GermAnalysis, MapGermSpec, Provenance, ReportConfig, Stability,
    Warning,
};
use germ_invariants::io::{parse_polynomial, parse_rational, report_record, GermFile, HypersurfaceFile, Record};
use germ_invariants::{GermError, Limits};

#[derive(Parser, Debug)]
#[command(name = "germinv", version, about = "Image Milnor numbers and related invariants of map germs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// First parameter value for the critical-point count, e.g. `1/2`.
    #[arg(long, global = true, value_parser = rational_arg)]
    s0: Option<germ_invariants::Rational>,
    /// Largest k in the Samuel profile.
    #[arg(long, global = true)]
    kmax: Option<u32>,
    /// TOML file with resource limits.
    #[arg(long, global = true)]
    limits: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Directory caching image equations by a hash of the branches.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
enum Command {
    /// Image equation of the unfolding.
    Image { path: PathBuf },
    /// FT(pi, G) and dim O/(FT + (s)).
    Ft { path: PathBuf },
    /// Image Milnor number as a Samuel multiplicity.
    MuImage { path: PathBuf },
    /// Bruce-Roberts number.
    MuBr { path: PathBuf },
    /// A_e-codimension (needs the stable-unfolding flag).
    AeCodim { path: PathBuf },
    /// Milnor number of a hypersurface file.
    Milnor { path: PathBuf },
    /// LC(G) against FT(pi, G), and dimensions.
    LcCheck { path: PathBuf },
    /// Everything, with cross-checks.
    Report { path: PathBuf },
}

impl Command {
    fn path(&self) -> &Path {
        match self {
            Command::Image { path }
            | Command::Ft { path }
            | Command::MuImage { path }
            | Command::MuBr { path }
            | Command::AeCodim { path }
            | Command::Milnor { path }
            | Command::LcCheck { path }
            | Command::Report { path } => path,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

fn rational_arg(s: &str) -> Result<germ_invariants::Rational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational number"))
}

/// Outcome of one file; the value is the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok = 0,
    InputError = 1,
    ResourceLimit = 2,
    RouteDisagreement = 3,
}

impl Status {
    /// A directory run exits with its most severe file status.
    fn severity(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::RouteDisagreement => 1,
            Status::ResourceLimit => 2,
            Status::InputError => 3,
        }
    }
}

struct Failure {
    status: Status,
    message: String,
}

impl From<GermError> for Failure {
    fn from(e: GermError) -> Self {
        let status = if e.is_resource_limit() { Status::ResourceLimit } else { Status::InputError };
        Failure { status, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { status: Status::InputError, message: message.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut base = ReportConfig::default();
    if let Some(path) = &cli.limits {
        match read_limits(path) {
            Ok(l) => base.limits = l,
            Err(f) => {
                eprintln!("error: {}", f.message);
                return ExitCode::from(f.status as u8);
            }
        }
    }
    let files = match collect_files(cli.command.path()) {
        Ok(f) => f,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.status as u8);
        }
    };
    let many = files.len() > 1 || cli.command.path().is_dir();
    let mut worst = Status::Ok;
    for file in &files {
        let mut record = Record::new();
        if many {
            record.push("file", file.display());
        }
        let status = match run_one(&cli, &base, file, &mut record) {
            Ok(status) => status,
            Err(f) => {
                record.push("error", &f.message);
                eprintln!("{}: error: {}", file.display(), f.message);
                f.status
            }
        };
        match cli.format {
            Format::Machine => print!("{}", record.machine()),
            Format::Human => {
                if many {
                    println!();
                }
                print!("{}", record.human());
            }
        }
        if status.severity() > worst.severity() {
            worst = status;
        }
    }
    ExitCode::from(worst as u8)
}

fn read_limits(path: &Path) -> Result<Limits, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

/// A file, or the `*.germ` and `*.hyp` files of a directory in name order.
fn collect_files(path: &Path) -> Result<Vec<PathBuf>, Failure> {
    if !path.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = fs::read_dir(path)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "germ" || x == "hyp"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(input_error(format!("{}: no .germ or .hyp files", path.display())));
    }
    Ok(files)
}

fn config_for(cli: &Cli, base: &ReportConfig, file: &GermFile) -> ReportConfig {
    let mut config = base.clone();
    file.config.apply(&mut config);
    // command-line flags win over the file
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(s0) = &cli.s0 {
        config.s0 = Some(s0.clone());
    }
    if let Some(k) = cli.kmax {
        config.k_max = k;
    }
    config
}

fn run_one(cli: &Cli, base: &ReportConfig, path: &Path, out: &mut Record) -> Result<Status, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    if let Command::Milnor { .. } = cli.command {
        let h = HypersurfaceFile::parse(&text).map_err(|e| input_error(format!("{}:{e}", path.display())))?;
        let mu = milnor_number(&h.function, &base.limits)?;
        out.push("milnor", mu);
        return Ok(Status::Ok);
    }
    let file = GermFile::parse(&text).map_err(|e| input_error(format!("{}:{e}", path.display())))?;
    let config = config_for(cli, base, &file);
    let analysis = load_analysis(&file.spec, &config, cli.cache.as_deref())?;
    let flags = file.spec.flags();
    match cli.command {
        Command::Image { .. } => {
            let img = analysis.image();
            out.push("image", img.polynomial());
            out.push("squarefree_on_line", img.reducedness().squarefree_on_line);
        }
        Command::Ft { .. } => {
            let ft = analysis.ft_ideal()?;
            out.push("ft_generators", ft.generators().len());
            out.push("ft_codim", analysis.ft_codim()?);
        }
        Command::MuImage { .. } => {
            let samuel = analysis.samuel(config.k_max)?;
            let ft_codim = analysis.ft_codim()?;
            out.push("mu_image", samuel.multiplicity);
            out.push("samuel_profile", samuel.profile.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
            out.push("stability", if ft_codim == 0 { Stability::Stable } else { Stability::Unstable });
            if !flags.stabilisation {
                out.push("warnings", Warning::StabilisationNotAsserted.key());
            }
        }
        Command::MuBr { .. } => {
            out.push("mu_br", analysis.bruce_roberts()?);
        }
        Command::AeCodim { .. } => {
            out.push("ae_codim", germ_invariants::germ::ae_codim_opsu(&analysis, flags)?);
        }
        Command::LcCheck { .. } => {
            let lc = analysis.lc_ideal()?;
            let dims = analysis.lc_dimension(config.seed, 3)?;
            out.push("lc_generators", lc.ideal().generators().len());
            out.push("lc_substitution", analysis.lc_substitution_holds()?);
            let show = |d: Option<usize>| d.map_or_else(|| "unknown".to_string(), |d| d.to_string());
            out.push("lc_dim_lower", show(dims.lower));
            out.push("lc_dim_upper", show(dims.upper));
            out.push("ft_krull_dim", analysis.ft_krull_dim(config.k_max)?);
        }
        Command::Report { .. } => {
            let report = report_from(&analysis, flags, &config)?;
            for (k, v) in report_record(&report).entries() {
                out.push(k, v);
            }
            if !report.routes_agree() {
                return Ok(Status::RouteDisagreement);
            }
        }
        Command::Milnor { .. } => unreachable!("handled above"),
    }
    Ok(Status::Ok)
}

/// Cache key: hash of the printed branch block, so formatting changes in
/// the file do not matter.
fn cache_key(spec: &MapGermSpec) -> String {
    let mut hasher = Sha256::new();
    hasher.update(spec.source_names().join(",").as_bytes());
    hasher.update(b"|");
    hasher.update(spec.target_names().join(",").as_bytes());
    hasher.update(b"|");
    hasher.update(spec.parameter_name().as_bytes());
    for b in spec.branches() {
        hasher.update(b"|branch");
        for c in b {
            hasher.update(b"|");
            hasher.update(c.to_string().as_bytes());
        }
    }
    hex::encode(hasher.finalize())
}

fn load_analysis(spec: &MapGermSpec, config: &ReportConfig, cache: Option<&Path>) -> Result<GermAnalysis, Failure> {
    let Some(dir) = cache.filter(|_| spec.image().is_none()) else {
        return Ok(analyse(spec, config)?);
    };
    let entry = dir.join(format!("{}.g", cache_key(spec)));
    if let Ok(text) = fs::read_to_string(&entry) {
        if let Ok(g) = parse_polynomial(text.trim(), spec.target_ctx()) {
            // a stale or foreign entry fails the checks and is recomputed
            if let Ok(img) = verified_image(spec, g, Provenance::Eliminated, true, config.seed) {
                return Ok(GermAnalysis::new(img, config.limits.clone()));
            }
        }
    }
    let analysis = analyse(spec, config)?;
    fs::create_dir_all(dir).map_err(|e| input_error(format!("{}: {e}", dir.display())))?;
    fs::write(&entry, format!("{}\n", analysis.image().polynomial()))
        .map_err(|e| input_error(format!("{}: {e}", entry.display())))?;
    Ok(analysis)
}
