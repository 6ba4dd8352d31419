//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or I/O error, 3 infeasible
//! model or placement.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use conceptq_core::bell::chsh_from_set;
use conceptq_core::counts::{normalize_counts, CountTable};
use conceptq_core::hilbert::build_model;
use conceptq_core::landscape::{
    Extent, GridGeometry, GridKind, Landscape, Resolution, DEFAULT_CENTER_A, DEFAULT_CENTER_B,
};
use conceptq_core::stats::{closest_model, observed_distribution};

use crate::corpus::corpus_phrase_count;
use crate::error::{Error, Result};
use crate::formats::{
    load_coincidence_set, load_count_table, load_disjunction, load_model, placements_csv,
    write_count_table, write_file, ModelFile, DATA_DIGITS,
};
use crate::grid::{grid_csv, grid_pgm, render_parallel};
use crate::provider::{provider_count, ProviderConfig, ENDPOINT_ENV};
use crate::report;

#[derive(Debug, Parser)]
#[command(
    name = "conceptq",
    version,
    about = "Quantum models of concept combination"
)]
struct Cli {
    /// Flat `key = value` file supplying defaults for flags of the chosen
    /// subcommand; flags given on the command line win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct GridSpec(Resolution);

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (nx, ny) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("expected NXxNY, got {s:?}"))?;
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        Resolution::new(parse(nx)?, parse(ny)?)
            .map(GridSpec)
            .map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct ExtentSpec(Extent);

impl FromStr for ExtentSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
            .collect::<std::result::Result<_, _>>()?;
        match v[..] {
            [x0, x1, y0, y1] => Extent::new(x0, x1, y0, y1)
                .map(ExtentSpec)
                .map_err(|e| e.to_string()),
            _ => Err(format!("expected x0,x1,y0,y1, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Pgm,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// CHSH statistic of a coincidence set.
    Chsh {
        #[arg(long, value_name = "FILE")]
        set: PathBuf,
        /// Also write a JSON report.
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
    },
    /// Build and verify the disjunction model of a `label,muA,muB,muAB` file.
    Model {
        #[arg(long, value_name = "FILE")]
        data: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Render field, classical, quantum and interference grids.
    Landscape {
        #[arg(long, value_name = "FILE")]
        data: PathBuf,
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        #[arg(long, value_name = "DIR")]
        outdir: PathBuf,
        /// Grid resolution, default 400x300.
        #[arg(long, value_name = "NXxNY")]
        grid: Option<GridSpec>,
        /// Default: placements' bounding box padded by two sigma.
        #[arg(long, value_name = "x0,x1,y0,y1", allow_hyphen_values = true)]
        extent: Option<ExtentSpec>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Compare an occupancy count table with Bose-Einstein and
    /// Maxwell-Boltzmann statistics.
    Stats {
        #[arg(long, value_name = "FILE")]
        observed: PathBuf,
        /// Number of entities; the table must have N + 1 rows.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
    },
    /// Superposition weights from counts.
    Weights {
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        counts: Vec<u64>,
    },
    /// Phrase counts from a local corpus or a remote provider, as a
    /// `label,count` table.
    Count {
        #[arg(long, value_name = "DIR", conflicts_with = "provider")]
        corpus: Option<PathBuf>,
        /// Endpoint URL; defaults to $CONCEPTQ_PROVIDER.
        #[arg(long, value_name = "URL")]
        provider: Option<String>,
        #[arg(long, required = true)]
        phrase: Vec<String>,
        /// Query parameter carrying the phrase.
        #[arg(long, default_value = "q")]
        param: String,
        /// Request timeout in seconds.
        #[arg(long, default_value_t = 10.0)]
        timeout: f64,
        #[arg(long, default_value_t = 2)]
        retries: u32,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

const SUBCOMMANDS: [&str; 6] = ["chsh", "model", "landscape", "stats", "weights", "count"];

/// `key = value` lines; `#` starts a comment line.
fn read_config(path: &Path) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Row {
            path: path.into(),
            row: i as u64 + 1,
            message: format!("expected key = value, got {line:?}"),
        })?;
        out.push((
            k.trim().trim_start_matches("--").to_string(),
            v.trim().to_string(),
        ));
    }
    Ok(out)
}

/// Inserts config entries as flags right after the subcommand, skipping keys
/// that are already given on the command line.
fn apply_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let text: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let mut config = None;
    let mut sub = None;
    let mut i = 1;
    while i < text.len() {
        let a = &text[i];
        if a == "--config" {
            config = text.get(i + 1).cloned();
            i += 2;
            continue;
        }
        if let Some(v) = a.strip_prefix("--config=") {
            config = Some(v.to_string());
        } else if sub.is_none() && SUBCOMMANDS.contains(&a.as_str()) {
            sub = Some(i);
        }
        i += 1;
    }
    let (Some(config), Some(sub)) = (config, sub) else {
        return Ok(args);
    };
    let given = |key: &str| {
        let flag = format!("--{key}");
        text[sub + 1..]
            .iter()
            .any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
    };
    let mut extra = Vec::new();
    for (k, v) in read_config(Path::new(&config))? {
        if !given(&k) {
            extra.push(OsString::from(format!("--{k}")));
            extra.push(OsString::from(v));
        }
    }
    let mut out = args;
    out.splice(sub + 1..sub + 1, extra);
    Ok(out)
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match apply_config(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let text = match command {
        Command::Chsh { set, report } => {
            let res = chsh_from_set(&load_coincidence_set(&set)?)?;
            if let Some(path) = report {
                write_file(&path, report::chsh_json(&res))?;
            }
            report::chsh_text(&res)
        }
        Command::Model { data, out: path } => {
            let d = load_disjunction(&data)?;
            if d.was_renormalized() {
                let _ = writeln!(
                    err,
                    "warning: {}: columns renormalised to sum to 1",
                    data.display()
                );
            }
            let model = build_model(&d)?;
            let v = model.verify(&d)?;
            let text = report::model_text(&d, &model, &v);
            if !v.pass {
                let _ = write!(out, "{text}");
                return Err(Error::Verification(format!(
                    "max residual {:e}, |<A|B>| {:e}",
                    v.max_residual, v.inner_product_modulus
                )));
            }
            write_file(&path, ModelFile::from_model(&model).to_json())?;
            text
        }
        Command::Landscape {
            data,
            model,
            outdir,
            grid,
            extent,
            format,
        } => landscape(&data, &model, &outdir, grid, extent, format, err)?,
        Command::Stats {
            observed,
            n,
            report,
        } => {
            let table = load_count_table(&observed)?;
            let n = match n {
                Some(n) => n,
                None if table.len() >= 2 => (table.len() - 1) as u32,
                None => {
                    return Err(Error::format(
                        &observed,
                        "an occupancy table needs at least two rows",
                    ))
                }
            };
            let obs = observed_distribution(&table, n)?;
            let cmp = closest_model(&obs)?;
            if let Some(path) = report {
                write_file(&path, report::stats_json(&obs, &cmp))?;
            }
            report::stats_text(&obs, &cmp)?
        }
        Command::Weights { counts } => {
            if counts.len() < 2 {
                return Err(Error::Usage("weights needs at least two counts".into()));
            }
            report::weights_text(normalize_counts(&counts)?.as_slice())
        }
        Command::Count {
            corpus,
            provider,
            phrase,
            param,
            timeout,
            retries,
            out: path,
        } => {
            let counts = if let Some(root) = corpus {
                let res = corpus_phrase_count(&root, &phrase)?;
                let _ = writeln!(err, "scanned {} documents", res.documents);
                for s in &res.skipped {
                    let _ = writeln!(err, "warning: skipped {}: {}", s.path.display(), s.reason);
                }
                res.counts
            } else {
                let endpoint = provider
                    .or_else(|| std::env::var(ENDPOINT_ENV).ok().filter(|v| !v.is_empty()))
                    .ok_or_else(|| {
                        Error::Usage(format!(
                            "count needs --corpus, --provider or ${ENDPOINT_ENV}"
                        ))
                    })?;
                if !(timeout > 0.0 && timeout.is_finite()) {
                    return Err(Error::Usage("provider timeout must be positive".into()));
                }
                let mut config = ProviderConfig::new(&endpoint)?
                    .with_timeout(Duration::from_secs_f64(timeout))?;
                config.param = param;
                config.retries = retries;
                phrase
                    .iter()
                    .map(|p| provider_count(&config, p))
                    .collect::<Result<_>>()?
            };
            let table = CountTable::from_entries(phrase.into_iter().zip(counts))
                .map_err(|e| Error::Usage(e.to_string()))?;
            let csv = write_count_table(&table)?;
            match path {
                Some(p) => {
                    write_file(&p, &csv)?;
                    String::new()
                }
                None => csv,
            }
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))
}

fn landscape(
    data: &Path,
    model_path: &Path,
    outdir: &Path,
    grid: Option<GridSpec>,
    extent: Option<ExtentSpec>,
    format: Format,
    err: &mut dyn Write,
) -> Result<String> {
    let d = load_disjunction(data)?;
    let model = load_model(model_path)?;
    if model.labels() != d.labels() {
        return Err(Error::format(
            model_path,
            "model labels do not match the data file",
        ));
    }
    let (land, placements) = Landscape::build(&d, &model, DEFAULT_CENTER_A, DEFAULT_CENTER_B)?;
    let extent = match extent {
        Some(ExtentSpec(e)) => e,
        None => Extent::around(&placements, land.field_a.sigma())?,
    };
    let resolution = grid.map_or(Resolution::DEFAULT, |g| g.0);
    let geometry = GridGeometry { extent, resolution };

    let mut files: Vec<(PathBuf, Vec<u8>)> = Vec::new();
    for kind in GridKind::ALL {
        let g = render_parallel(&land, kind, geometry)?;
        if matches!(format, Format::Csv | Format::Both) {
            files.push((
                outdir.join(format!("{}.csv", kind.name())),
                grid_csv(&g, DATA_DIGITS).into_bytes(),
            ));
        }
        if matches!(format, Format::Pgm | Format::Both) {
            files.push((outdir.join(format!("{}.pgm", kind.name())), grid_pgm(&g)));
        }
    }
    files.push((
        outdir.join("placements.csv"),
        placements_csv(d.labels(), &placements).into_bytes(),
    ));
    std::fs::create_dir_all(outdir).map_err(|e| Error::io(outdir, e))?;
    for (path, bytes) in &files {
        write_file(path, bytes)?;
    }
    for (label, p) in d.labels().iter().zip(placements.as_slice()) {
        if !p.exact {
            let _ = writeln!(
                err,
                "note: {label} placed inexactly (residual {:.3e})",
                p.residual
            );
        }
    }
    Ok(format!(
        "sigma {:.4}\namplitude A {:.4}\namplitude B {:.4}\nexact placements {} of {}\ngrid {}x{} over x [{:.4}, {:.4}], y [{:.4}, {:.4}]\nwrote {} files to {}\n",
        land.field_a.sigma(),
        land.field_a.amplitude(),
        land.field_b.amplitude(),
        placements.exact_count(),
        placements.len(),
        resolution.nx,
        resolution.ny,
        extent.xmin,
        extent.xmax,
        extent.ymin,
        extent.ymax,
        files.len(),
        outdir.display()
    ))
}
