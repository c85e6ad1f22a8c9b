mod render;
mod workspace;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use qvdomain::approx::{compose, psi_of, theta_of};
use qvdomain::closure::{closure_of_algebraic, closure_of_domain, restrict_to_subspace};
use qvdomain::dot::to_dot;
use qvdomain::io::{validate_document, Document, Object};
use qvdomain::{run_suite, Error, GenConfig, Limits, LOrderedSet};

use workspace::Workspace;

/// Finite-model workbench for quantale-valued domains and closure spaces.
#[derive(Parser)]
#[command(name = "qvdomain", version)]
struct Cli {
    /// Directory holding registered objects and reports.
    #[arg(long, global = true, default_value = "qvdomain-workspace")]
    workspace: PathBuf,

    /// Largest `L^X` enumeration any command may perform.
    #[arg(long, global = true)]
    cap: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a definition file without registering it.
    Validate { file: PathBuf },
    /// Validate a definition file and register it under a name.
    Load {
        file: PathBuf,
        #[arg(long = "as")]
        name: String,
    },
    /// Report the order-theoretic structure of a registered object.
    Analyze { name: String },
    /// Build a new object from registered ones and register it.
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// Run a named verification suite on generated instances.
    Suite(SuiteArgs),
    /// Write the u-cut Hasse diagram of an L-ordered set (or of 𝔠(X)) as DOT.
    ExportDot {
        name: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Closure space ⟨A⟩ = ⋁ A(x)⊗⇓x of a continuous L-dcpo.
    ClosureOfDomain {
        domain: String,
        #[arg(long = "as")]
        name: String,
    },
    /// Closure space ⟨A⟩ = ↓A on the compact elements of an algebraic L-dcpo.
    ClosureOfAlgebraic {
        domain: String,
        #[arg(long = "as")]
        name: String,
    },
    /// Restriction of a closure space to a subset of its points.
    Restrict {
        space: String,
        /// Comma-separated point labels.
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<String>,
        #[arg(long = "as")]
        name: String,
    },
    /// Composite Υ∘Θ of two approximable relations.
    Compose {
        upsilon: String,
        theta: String,
        #[arg(long = "as")]
        name: String,
    },
    /// Scott continuous map ψ_Θ between directed closed sets.
    Psi {
        relation: String,
        #[arg(long = "as")]
        name: String,
    },
    /// Approximable relation Θ_ψ of a Scott continuous map.
    Theta {
        map: String,
        #[arg(long = "as")]
        name: String,
    },
    /// The L-ordered set 𝔠(X) of directed closed sets.
    DirClosed {
        space: String,
        #[arg(long = "as")]
        name: String,
    },
}

#[derive(Args)]
struct SuiteArgs {
    /// One of core, oracle, waybelow, rep1, rep2, rep3, dense, equiv.
    name: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 30)]
    instances: usize,
    /// Fixture id, or `mixed` to cycle through boolean, lukasiewicz-3, goedel-3.
    #[arg(long, default_value = "mixed")]
    quantale: String,
    #[arg(long, default_value_t = 1)]
    min_size: usize,
    #[arg(long, default_value_t = 4)]
    max_size: usize,
    /// Largest candidate family enumerated exhaustively; beyond it checks are sampled.
    #[arg(long, default_value_t = 1 << 16)]
    budget: u64,
    /// Worker threads; reports do not depend on this.
    #[arg(long)]
    workers: Option<usize>,
    /// Report file; defaults to `<workspace>/reports/<suite>.json`.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Exit codes: 0 pass, 1 mathematical failure, 2 input or gate error,
/// 3 passed with sampled checks.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Axiom(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut limits = Limits::default();
    if let Some(cap) = cli.cap {
        limits = limits.with_enum_cap(cap);
    }
    let ws = Workspace::open(&cli.workspace, limits);
    match run(&ws, cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = exit_code(&e);
            if code == 1 {
                println!("FAIL {e}");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}

fn read_document(path: &Path) -> qvdomain::Result<Document> {
    let text = fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    Document::parse(&text)
}

fn write_file(path: &Path, text: &str) -> qvdomain::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::Format(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn run(ws: &Workspace, command: Command) -> qvdomain::Result<u8> {
    match command {
        Command::Validate { file } => {
            let doc = read_document(&file)?;
            let v = validate_document(&doc, ws, &ws.limits)?;
            print!("{}", render::validation(&file.display().to_string(), &v));
            Ok(if v.passed() { 0 } else { 1 })
        }
        Command::Load { file, name } => {
            let doc = read_document(&file)?;
            let v = validate_document(&doc, ws, &ws.limits)?;
            if !v.passed() {
                print!("{}", render::validation(&file.display().to_string(), &v));
                return Ok(1);
            }
            let obj = qvdomain::io::build(&doc, ws, &ws.limits)?;
            let path = ws.put(&name, &obj)?;
            println!("loaded {} `{name}` -> {}", obj.kind(), path.display());
            Ok(0)
        }
        Command::Analyze { name } => {
            let obj = ws.get(&name)?;
            let (text, code) = render::analysis(&name, &obj)?;
            print!("{text}");
            Ok(code)
        }
        Command::Construct { kind } => construct(ws, kind),
        Command::Suite(args) => suite(ws, args),
        Command::ExportDot { name, output } => {
            let p = lordered_view(ws.get(&name)?)?;
            write_file(&output, &to_dot(&p, &name)?)?;
            println!(
                "wrote {} ({} nodes, {} edges)",
                output.display(),
                p.size(),
                qvdomain::dot::cover_edges(&p).len()
            );
            Ok(0)
        }
    }
}

/// The L-ordered set shown for an object: itself, or `𝔠(X)` for a space.
fn lordered_view(obj: Object) -> qvdomain::Result<Arc<LOrderedSet>> {
    match obj {
        Object::LOrderedSet(p) => Ok(p),
        Object::ClosureSpace(s) => s.dir_closed_sets(),
        Object::Quantale(q) => Ok(Arc::new(LOrderedSet::lattice_order(q)?)),
        other => Err(Error::structural(format!(
            "cannot draw a {}; expected an lordered-set, closure-space or quantale",
            other.kind()
        ))),
    }
}

fn expect_lordered(ws: &Workspace, name: &str) -> qvdomain::Result<Arc<LOrderedSet>> {
    match ws.get(name)? {
        Object::LOrderedSet(p) => Ok(p),
        other => Err(Error::structural(format!("`{name}` is a {}, expected an lordered-set", other.kind()))),
    }
}

fn expect_space(ws: &Workspace, name: &str) -> qvdomain::Result<Arc<qvdomain::ClosureSpace>> {
    match ws.get(name)? {
        Object::ClosureSpace(s) => Ok(s),
        other => Err(Error::structural(format!("`{name}` is a {}, expected a closure-space", other.kind()))),
    }
}

fn expect_relation(ws: &Workspace, name: &str) -> qvdomain::Result<qvdomain::ApproxRelation> {
    match ws.get(name)? {
        Object::Relation(r) => Ok(r),
        other => Err(Error::structural(format!("`{name}` is a {}, expected a relation", other.kind()))),
    }
}

fn construct(ws: &Workspace, kind: Construct) -> qvdomain::Result<u8> {
    let (name, obj) = match kind {
        Construct::ClosureOfDomain { domain, name } => {
            let p = expect_lordered(ws, &domain)?;
            (name, Object::ClosureSpace(Arc::new(closure_of_domain(&p)?)))
        }
        Construct::ClosureOfAlgebraic { domain, name } => {
            let p = expect_lordered(ws, &domain)?;
            (name, Object::ClosureSpace(Arc::new(closure_of_algebraic(&p)?)))
        }
        Construct::Restrict { space, points, name } => {
            let s = expect_space(ws, &space)?;
            let ys = points.iter().map(|l| s.point(l)).collect::<qvdomain::Result<Vec<_>>>()?;
            (name, Object::ClosureSpace(Arc::new(restrict_to_subspace(&s, &ys)?)))
        }
        Construct::Compose { upsilon, theta, name } => {
            let u = expect_relation(ws, &upsilon)?;
            let t = expect_relation(ws, &theta)?;
            (name, Object::Relation(compose(&u, &t)?))
        }
        Construct::Psi { relation, name } => {
            let t = expect_relation(ws, &relation)?;
            (name, Object::ScottMap(psi_of(&t)?))
        }
        Construct::Theta { map, name } => {
            let psi = match ws.get(&map)? {
                Object::ScottMap(m) => m,
                other => {
                    return Err(Error::structural(format!("`{map}` is a {}, expected a scott-map", other.kind())))
                }
            };
            (name, Object::Relation(theta_of(&psi)?))
        }
        Construct::DirClosed { space, name } => {
            let s = expect_space(ws, &space)?;
            (name, Object::LOrderedSet(s.dir_closed_sets()?))
        }
    };
    let (checks, ok) = render::construction_checks(&obj)?;
    print!("{checks}");
    if !ok {
        return Ok(1);
    }
    let path = ws.put(&name, &obj)?;
    println!("constructed {} `{name}` -> {}", obj.kind(), path.display());
    Ok(0)
}

fn suite(ws: &Workspace, a: SuiteArgs) -> qvdomain::Result<u8> {
    let cfg = GenConfig {
        seed: a.seed,
        quantale: a.quantale,
        min_size: a.min_size,
        max_size: a.max_size,
        instances: a.instances,
        limits: ws.limits,
        budget: a.budget,
        workers: a
            .workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        ..GenConfig::default()
    };
    if cfg.min_size == 0 || cfg.min_size > cfg.max_size {
        return Err(Error::structural("need 1 ≤ --min-size ≤ --max-size"));
    }
    let report = run_suite(&a.name, &cfg)?;
    let path = match a.output {
        Some(p) => p,
        None => ws.reports_dir()?.join(format!("{}.json", a.name)),
    };
    write_file(&path, &report.to_json())?;
    print!("{}", report.to_text());
    println!("report: {}", path.display());
    Ok(report.exit_code() as u8)
}
