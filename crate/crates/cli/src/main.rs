use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{CommandFactory, Parser};
use spaceform::export::to_json;
use spaceform::scene::ExportFormat;
use spaceform::verify::{verify, Tolerances};
use spaceform::{run_scene, SceneConfig, SceneKind};

const USAGE_ERROR: u8 = 2;

/// Polyhedral surfaces in space forms: run a named scene or the acceptance suite.
#[derive(Debug, Parser)]
#[command(name = "spaceform-poly", version)]
struct Cli {
    /// fuchsian-genus2, parabolic-torus, polar-dual, generalized, rigidity, or verify
    target: Option<String>,
    /// Orbit truncation depth (0 to 8)
    #[arg(long)]
    depth: Option<usize>,
    /// Base point as comma-separated coordinates
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    base_point: Option<Vec<f64>>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated subset of obj,json
    #[arg(long, value_delimiter = ',')]
    export: Option<Vec<String>>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Scene configuration as JSON; flags given on the command line win
    #[arg(long)]
    config: Option<PathBuf>,
    /// Named input of the polar-dual, generalized and rigidity scenes
    #[arg(long)]
    preset: Option<String>,
    /// Record wall-clock time in the report
    #[arg(long)]
    timing: bool,
    /// JSON overrides for the verify tolerances
    #[arg(long)]
    tolerances: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Io(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.target.as_deref() {
        Some("verify") => run_verify(&cli),
        _ => run_one(&cli),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `{} --help` for usage", Cli::command().get_name());
            ExitCode::from(USAGE_ERROR)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn scene_config(cli: &Cli) -> Result<SceneConfig, Failure> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<SceneConfig>(&text)
                .map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))?
        }
        None => {
            let Some(name) = &cli.target else {
                return Err(Failure::Usage("a scene name or --config is required".into()));
            };
            SceneConfig::new(parse_scene(name)?)
        }
    };
    if let (Some(name), Some(_)) = (&cli.target, &cli.config) {
        config.scene = parse_scene(name)?;
    }
    if let Some(d) = cli.depth {
        config.depth = d;
    }
    if let Some(bp) = &cli.base_point {
        config.base_point = Some(bp.clone());
    }
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    if let Some(list) = &cli.export {
        config.export = list
            .iter()
            .map(|s| match s.trim() {
                "obj" => Ok(ExportFormat::Obj),
                "json" => Ok(ExportFormat::Json),
                other => Err(Failure::Usage(format!("unknown export format {other:?}"))),
            })
            .collect::<Result<_, _>>()?;
    }
    if let Some(out) = &cli.out {
        config.out_dir = out.display().to_string();
    }
    if cli.preset.is_some() {
        config.preset = cli.preset.clone();
    }
    config.timing |= cli.timing;
    if cli.tolerances.is_some() {
        return Err(Failure::Usage("--tolerances only applies to verify".into()));
    }
    config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(config)
}

fn parse_scene(name: &str) -> Result<SceneKind, Failure> {
    name.parse::<SceneKind>().map_err(|e| Failure::Usage(e.to_string()))
}

fn write(dir: &Path, name: &str, text: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn run_one(cli: &Cli) -> Result<bool, Failure> {
    let config = scene_config(cli)?;
    let outcome = run_scene(&config).map_err(|e| Failure::Usage(e.to_string()))?;
    let dir = Path::new(&config.out_dir);
    if config.export.contains(&ExportFormat::Obj) {
        if let Some(obj) = outcome.obj().map_err(|e| Failure::Io(e.to_string()))? {
            write(dir, "surface.obj", &obj)?;
        }
    }
    if config.export.contains(&ExportFormat::Json) {
        let json = to_json(&outcome.report).map_err(|e| Failure::Io(e.to_string()))?;
        write(dir, "report.json", &json)?;
    }
    let r = &outcome.report;
    println!("{} {}", if r.passed { "PASS" } else { "FAIL" }, r.scene);
    if let Some(m) = &r.metric {
        println!(
            "  genus {}  K {}  cone points {}  area {:.12}  Gauss-Bonnet residual {:.3e}",
            m.genus,
            m.k_const,
            m.cone_points.len(),
            m.total_area,
            m.gb_residual
        );
    }
    for f in &r.failures {
        println!("  {f}");
    }
    Ok(r.passed)
}

fn run_verify(cli: &Cli) -> Result<bool, Failure> {
    if cli.depth.is_some() || cli.base_point.is_some() || cli.preset.is_some() || cli.config.is_some() {
        return Err(Failure::Usage("verify takes only --seed, --tolerances and --out".into()));
    }
    let tol = match &cli.tolerances {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<Tolerances>(&text)
                .map_err(|e| Failure::Usage(format!("bad tolerances {}: {e}", path.display())))?
        }
        None => Tolerances::default(),
    };
    let summary = verify(cli.seed.unwrap_or(0), &tol);
    print!("{}", summary.table());
    if let Some(out) = &cli.out {
        let json = to_json(&summary).map_err(|e| Failure::Io(e.to_string()))?;
        write(out, "verify.json", &json)?;
    }
    Ok(summary.passed)
}
