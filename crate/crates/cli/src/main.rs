//! `ampl`: amplitudes, distances and stability checks from the command line.

mod input;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use amplitudes::amplitude::{c_tau_rank, eval_barcode, eval_grid, AmplitudeSpec, Content};
use amplitudes::barcode::fmt_real;
use amplitudes::distance::{
    abs_distance, abs_distance_grid, bottleneck, interleaving_1param, lp_hilbert_distance, lp_hilbert_distance_barcodes,
    path_metric_1param, wasserstein, CostFunction, DistanceReport, Exactness, Ground,
};
use amplitudes::gridmod::random::{random_module_sample, random_ses_sample, random_ses_sample_1d};
use amplitudes::gridmod::barcode_hilbert;
use amplitudes::rips::{bifiltration_hilbert, vr_barcodes};
use amplitudes::stability::{self, random_barcode, CheckReport, CATALOG, COUNTEREXAMPLES};
use amplitudes::{Face, Fp, GridModule, ModuleMorphism};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use input::{load_points, parse_list, Input};

#[derive(Parser)]
#[command(name = "ampl", version, about = "Amplitudes of persistence modules and the distances they induce")]
struct Cli {
    /// Worker threads for parallel library code (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Metric {
    Bottleneck,
    Wasserstein,
    Interleaving,
    Path,
    Abs,
    Lp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Barcode,
    Module,
    Ses,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an amplitude on a barcode file or a module document.
    Amp {
        file: PathBuf,
        /// Amplitude spec, e.g. `p1`, `trop:2`, `hilbert:1:counting`, `shift:1,1`, or `ctau:1,2`.
        #[arg(long)]
        spec: String,
        /// Content for `ctau:` specs.
        #[arg(long, default_value = "lebesgue")]
        content: String,
    },
    /// Distance between two inputs.
    Dist {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum)]
        metric: Metric,
        /// Amplitude spec for `path`, `abs` and `lp` (`hilbert:p[:content]`).
        #[arg(long)]
        spec: Option<String>,
        /// Cost fold for `path`: `sum`, `max` or `lp:q`.
        #[arg(long, default_value = "sum")]
        fold: String,
        /// Ground metric for `wasserstein`: `linf` or `l1`.
        #[arg(long, default_value = "linf")]
        ground: String,
        /// Exponent for `wasserstein`.
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        /// Fail instead of printing an upper bound.
        #[arg(long)]
        require_exact: bool,
        /// Also write the report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the inequality catalog and the counterexample suite.
    Check {
        /// Comma-separated ids; default is every catalog entry and counterexample.
        #[arg(long, value_delimiter = ',')]
        ids: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        json: Option<PathBuf>,
        /// List the registered ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Vietoris-Rips barcodes of a point cloud or distance matrix.
    Rips {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        maxdim: usize,
        /// Print only this degree.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = f64::INFINITY)]
        max_radius: f64,
        /// Input is a square distance matrix.
        #[arg(long)]
        matrix: bool,
        /// Last column holds point densities.
        #[arg(long)]
        density_col: bool,
        /// Radius breakpoints; with `--density-bps` prints the bifiltration Hilbert grid.
        #[arg(long)]
        radius_bps: Option<String>,
        #[arg(long)]
        density_bps: Option<String>,
    },
    /// Write seeded random inputs.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of parameters for modules (ses: 1 forces one parameter).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 8)]
        max_bars: usize,
        /// Output file (barcode, module) or directory (ses).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a summary of a file and validate it.
    Inspect {
        file: PathBuf,
        /// Source module, for morphism documents.
        #[arg(long)]
        source: Option<PathBuf>,
        /// Target module, for morphism documents.
        #[arg(long)]
        target: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every requested check passed.
fn run(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Amp { file, spec, content } => amp(&file, &spec, &content),
        Cmd::Dist { a, b, metric, spec, fold, ground, p, require_exact, json } => {
            dist(&a, &b, metric, spec.as_deref(), &fold, &ground, p, require_exact, json.as_deref())
        }
        Cmd::Check { ids, seed, samples, json, list } => check(&ids, seed, samples, json.as_deref(), list),
        Cmd::Rips { file, maxdim, degree, max_radius, matrix, density_col, radius_bps, density_bps } => {
            rips(&file, maxdim, degree, max_radius, matrix, density_col, radius_bps.as_deref(), density_bps.as_deref())
        }
        Cmd::Gen { kind, seed, n, max_bars, out } => gen(kind, seed, n, max_bars, out.as_deref()),
        Cmd::Inspect { file, source, target } => inspect(&file, source.as_deref(), target.as_deref()),
    }
}

fn amp(file: &Path, spec: &str, content: &str) -> Result<bool> {
    let input = Input::load(file)?;
    let value = if let Some(face) = spec.strip_prefix("ctau:") {
        let m = match &input {
            Input::Module(m) => m.clone(),
            Input::Bars(b) => amplitudes::gridmod::from_barcode(Fp::default(), b)?,
        };
        let tau = Face::parse(face, m.n())?;
        c_tau_rank(&m, &tau, &content.parse::<Content>()?)?
    } else {
        let s: AmplitudeSpec = spec.parse()?;
        match &input {
            Input::Bars(b) => eval_barcode(&s, b)?,
            Input::Module(m) => eval_grid(&s, m)?,
        }
    };
    println!("{}", fmt_real(value));
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn dist(
    a: &Path,
    b: &Path,
    metric: Metric,
    spec: Option<&str>,
    fold: &str,
    ground: &str,
    p: f64,
    require_exact: bool,
    json: Option<&Path>,
) -> Result<bool> {
    let (ia, ib) = (Input::load(a)?, Input::load(b)?);
    let need_spec = || -> Result<AmplitudeSpec> {
        Ok(spec.ok_or_else(|| anyhow!("--spec is required for this metric"))?.parse()?)
    };
    let mut plan = None;
    let (name, value, exactness) = match metric {
        Metric::Bottleneck => ("bottleneck".to_string(), bottleneck(&ia.barcode()?, &ib.barcode()?)?, Exactness::Exact),
        Metric::Interleaving => ("interleaving".to_string(), interleaving_1param(&ia.barcode()?, &ib.barcode()?)?, Exactness::Exact),
        Metric::Wasserstein => {
            let g: Ground = ground.parse()?;
            let v = wasserstein(p, &ia.barcode()?, &ib.barcode()?, g)?;
            (format!("wasserstein:{}", fmt_real(p)), v, Exactness::Exact)
        }
        Metric::Abs => {
            let s = need_spec()?;
            let v = match (&ia, &ib) {
                (Input::Bars(x), Input::Bars(y)) => abs_distance(&s, x, y)?,
                (Input::Module(x), Input::Module(y)) => abs_distance_grid(&s, x, y)?,
                _ => abs_distance(&s, &ia.barcode()?, &ib.barcode()?)?,
            };
            (format!("abs:{s}"), v, Exactness::Exact)
        }
        Metric::Lp => {
            let s = need_spec()?;
            let AmplitudeSpec::LpHilbert { p, content } = &s else {
                bail!("--metric lp needs a `hilbert:p[:content]` spec");
            };
            let v = match (&ia, &ib) {
                (Input::Bars(x), Input::Bars(y)) => lp_hilbert_distance_barcodes(*p, x, y, content)?,
                (Input::Module(x), Input::Module(y)) => lp_hilbert_distance(*p, &x.hilbert(), &y.hilbert(), content)?,
                (Input::Module(x), Input::Bars(y)) => lp_hilbert_distance(*p, &x.hilbert(), &barcode_hilbert(y)?, content)?,
                (Input::Bars(x), Input::Module(y)) => lp_hilbert_distance(*p, &barcode_hilbert(x)?, &y.hilbert(), content)?,
            };
            (format!("lp:{s}"), v, Exactness::Exact)
        }
        Metric::Path => {
            let s = need_spec()?;
            let f: CostFunction = fold.parse()?;
            let r = path_metric_1param(&s, &ia.barcode()?, &ib.barcode()?, f)?;
            plan = Some(r.plan);
            (format!("path:{s}:{f}"), r.value, r.exactness)
        }
    };
    if require_exact && exactness != Exactness::Exact {
        bail!("{name} is only an upper bound ({}) and --require-exact was given", fmt_real(value));
    }
    println!("{} {}", fmt_real(value), exactness.as_str());
    if let Some(path) = json {
        let report = DistanceReport { distance_name: name, value, exactness, witness_plan: plan };
        fs::write(path, serde_json::to_string_pretty(&report)?).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(true)
}

fn check(ids: &[String], seed: u64, samples: usize, json: Option<&Path>, list: bool) -> Result<bool> {
    if list {
        for c in CATALOG {
            println!("{}\t{}", c.id, c.description);
        }
        for (id, what) in COUNTEREXAMPLES {
            println!("{id}\t{what} (counterexample)");
        }
        return Ok(true);
    }
    let all: Vec<String>;
    let ids = if ids.is_empty() {
        all = CATALOG.iter().map(|c| c.id).chain(COUNTEREXAMPLES.iter().map(|c| c.0)).map(String::from).collect();
        &all
    } else {
        ids
    };
    let mut reports: Vec<CheckReport> = Vec::new();
    for id in ids {
        if stability::is_counterexample_id(id) {
            reports.push(stability::run_counterexample(id)?);
        } else {
            reports.extend(stability::run_catalog(&[id.as_str()], seed, samples)?);
        }
    }
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        eprintln!("{status} {} checks={} failures={} max_slack={}", r.id, r.checks, r.failures.len(), fmt_real(r.max_slack));
    }
    let text = serde_json::to_string_pretty(&reports)?;
    match json {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(reports.iter().all(CheckReport::passed))
}

#[allow(clippy::too_many_arguments)]
fn rips(
    file: &Path,
    maxdim: usize,
    degree: Option<usize>,
    max_radius: f64,
    matrix: bool,
    density_col: bool,
    radius_bps: Option<&str>,
    density_bps: Option<&str>,
) -> Result<bool> {
    let (d, density) = load_points(file, matrix, density_col)?;
    if let (Some(r), Some(dn)) = (radius_bps, density_bps) {
        let density = density.ok_or_else(|| anyhow!("the bifiltration needs --density-col"))?;
        let deg = degree.unwrap_or(0);
        let h = bifiltration_hilbert(&d, &density, &parse_list(r)?, &parse_list(dn)?, deg)?;
        let doc = serde_json::json!({
            "axes": ["density", "radius"],
            "degree": deg,
            "breakpoints": h.geometry.breakpoints(),
            "dims": h.dims,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
        return Ok(true);
    }
    if radius_bps.is_some() || density_bps.is_some() {
        bail!("--radius-bps and --density-bps must be given together");
    }
    let top = degree.map_or(maxdim, |k| k.max(maxdim));
    let bars = vr_barcodes(&d, top, max_radius)?;
    for (k, bc) in bars.iter().enumerate() {
        if degree.is_some_and(|want| want != k) {
            continue;
        }
        println!("# H{k}");
        print!("{}", bc.to_text());
    }
    Ok(true)
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn gen(kind: Kind, seed: u64, n: Option<usize>, max_bars: usize, out: Option<&Path>) -> Result<bool> {
    let field = Fp::default();
    match kind {
        Kind::Barcode => {
            let bc = random_barcode(seed, max_bars, (0.0, 10.0), (0.25, 5.0), 0.0)?;
            write_or_print(out, &bc.to_text())?;
        }
        Kind::Module => {
            let n = n.unwrap_or(2);
            if n == 0 {
                bail!("--n must be positive");
            }
            write_or_print(out, &random_module_sample(seed, field, n).to_json())?;
        }
        Kind::Ses => {
            let ses = match n {
                Some(1) => random_ses_sample_1d(seed, field),
                None | Some(2) => random_ses_sample(seed, field),
                Some(k) => bail!("short exact sequences are generated with n in {{1, 2}}, not {k}"),
            };
            let dir = out.unwrap_or(Path::new("."));
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let files = [
                ("a.json", ses.a.to_json()),
                ("b.json", ses.b.to_json()),
                ("c.json", ses.c.to_json()),
                ("incl.json", ses.incl.to_json()),
                ("proj.json", ses.proj.to_json()),
            ];
            for (name, text) in files {
                let p = dir.join(name);
                fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
                println!("{}", p.display());
            }
        }
    }
    Ok(true)
}

fn inspect(file: &Path, source: Option<&Path>, target: Option<&Path>) -> Result<bool> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    if amplitudes::gridmod::is_morphism_doc(&text) {
        let (Some(s), Some(t)) = (source, target) else {
            bail!("morphism documents need --source and --target module files");
        };
        let load = |p: &Path| -> Result<GridModule> {
            let t = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(GridModule::from_json(&t)?)
        };
        let (src, tgt) = (load(s)?, load(t)?);
        let f = ModuleMorphism::from_json(&text, &src, &tgt)?;
        println!("morphism: {} components", f.components().len());
        println!("injective: {}", f.is_injective());
        println!("surjective: {}", f.is_surjective());
        println!("valid");
        return Ok(true);
    }
    match Input::parse(&text)? {
        Input::Bars(b) => {
            println!("barcode: {} bars, {} infinite", b.len(), b.infinite_count());
            print!("{}", b.canonical().to_text());
        }
        Input::Module(m) => {
            let g = m.geometry();
            println!("module: n = {}, prime = {}", m.n(), m.field().modulus());
            println!("shape: {:?}", g.shape());
            println!("max dim: {}", m.max_dim());
            println!("total dim: {}", m.dims().iter().sum::<usize>());
            println!("valid");
        }
    }
    Ok(true)
}
