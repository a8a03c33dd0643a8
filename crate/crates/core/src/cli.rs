//! Command-line front end. [`run`] returns the rendered report and exit code
//! instead of printing, so the binary stays a thin wrapper.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::algebra::CoefficientModule;
use crate::complex::{homology_all, orient_coherently, Cochain, Cocycle, SimplexId, SimplicialComplex};
use crate::cycle::{build_cycle, check_cycle, corollary_report, nontriviality, CorollaryMode, Labeler, LabeledTopChain};
use crate::error::{Error, Result};
use crate::fiber::{evaluate_cocycle_on_loop, fiber_over, RepresentativeRule};
use crate::generators::{self, Generated};
use crate::io::{self, Report};
use crate::map::{pullback_cochain, retraction, subdivide_map, SimplicialMap};
use crate::pq::{pq_verify, PseudoQuotient};
use crate::reeb::{build_reeb, compare_with_reeb, sweep_oracle, ReebComplex};

/// Exit code for a failed cycle or wall check.
pub const EXIT_RESIDUAL: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "reebcycle", version, about = "Reeb spaces of simplicial maps and fiber-class cycles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a catalog fixture (complex, map, pseudo-quotient or cocycle) to a directory.
    Generate {
        name: String,
        params: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a complex, or a map between complexes.
    Validate {
        #[arg(long)]
        complex: Option<PathBuf>,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Homology of a complex or of a pseudo-quotient.
    Homology {
        #[arg(long, conflicts_with = "pq")]
        complex: Option<PathBuf>,
        #[arg(long)]
        pq: Option<PathBuf>,
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// Reeb complex of a map.
    Reeb {
        #[command(flatten)]
        map: MapArgs,
        /// Cross-check against the level-set sweep (1-dimensional targets).
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// Fibers over top target simplices.
    Fiber {
        #[command(flatten)]
        map: MapArgs,
        /// Comma-separated target vertices; all top simplices when omitted.
        #[arg(long)]
        simplex: Option<String>,
        #[arg(long)]
        cocycle: Option<PathBuf>,
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// Build the labeled top chain and check that it is a cycle.
    Cycle(CycleArgs),
    /// Cycle check, nontriviality verdict and top homology.
    Verify {
        #[command(flatten)]
        cycle: CycleArgs,
        /// lagrangian, spin or spin-c.
        #[arg(long)]
        corollary: Option<String>,
        /// Write the labeled Reeb complex as a pseudo-quotient file.
        #[arg(long)]
        export_pq: Option<PathBuf>,
    },
    /// Wall rules, cycle check and verdict for a pseudo-quotient file.
    PqVerify {
        #[arg(long)]
        pq: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
pub struct MapArgs {
    #[arg(long)]
    pub source: Option<PathBuf>,
    #[arg(long)]
    pub target: Option<PathBuf>,
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// Barycentric subdivision rounds applied to source and target.
    #[arg(long, default_value_t = 0)]
    pub subdivide: usize,
}

#[derive(Args, Debug, Clone)]
pub struct CycleArgs {
    #[command(flatten)]
    pub map: MapArgs,
    /// cocycle, chi2 or table:<file>.
    #[arg(long, default_value = "cocycle")]
    pub labeler: String,
    #[arg(long)]
    pub cocycle: Option<PathBuf>,
    /// Z, Z2 or a module presentation file.
    #[arg(long, default_value = "Z")]
    pub coeff: String,
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    configure_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            return Outcome {
                code,
                stdout: if code == 0 { e.to_string() } else { String::new() },
                stderr: if code == 0 { String::new() } else { e.to_string() },
            };
        }
    };
    match execute(&cli) {
        Ok((report, code)) => {
            let text = report.to_string();
            if let Some(path) = &cli.report {
                if let Err(e) = io::write_file(path, &text) {
                    return failure(e);
                }
            }
            Outcome {
                code,
                stdout: text,
                stderr: String::new(),
            }
        }
        Err(e) => failure(e),
    }
}

fn failure(e: Error) -> Outcome {
    Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

fn configure_threads() {
    let n = std::env::var("REEBCYCLE_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if n > 0 {
        // a pool may already exist when run is called twice in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    p.as_deref()
        .ok_or_else(|| Error::InvalidInput(format!("missing --{flag}")))
}

fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    io::parse_complex(&io::read_file(path)?, &path.display().to_string())
}

fn load_module(spec: &str) -> Result<CoefficientModule> {
    match spec {
        "Z" | "Z2" => io::parse_module(spec, "--coeff"),
        path => io::parse_module(&io::read_file(Path::new(path))?, path),
    }
}

/// A loaded map, possibly subdivided, with the vertex retraction back to the
/// original source for transporting cochains.
struct LoadedMap {
    original: SimplicialMap,
    map: SimplicialMap,
    to_original: Option<Vec<usize>>,
}

fn load_map(args: &MapArgs) -> Result<LoadedMap> {
    let source = load_complex(required(&args.source, "source")?)?;
    let target = load_complex(required(&args.target, "target")?)?;
    let path = required(&args.map, "map")?;
    let original = io::parse_map(&io::read_file(path)?, &path.display().to_string(), &source, &target)?;
    let mut map = original.clone();
    let mut to_original: Option<Vec<usize>> = None;
    for _ in 0..args.subdivide {
        let (g, sd_source, _) = subdivide_map(&map)?;
        let step = retraction(&sd_source, map.source());
        to_original = Some(match to_original {
            None => step,
            Some(prev) => step.iter().map(|&v| prev[v]).collect(),
        });
        map = g;
    }
    Ok(LoadedMap {
        original,
        map,
        to_original,
    })
}

fn load_cocycle(path: &Path, m: &LoadedMap, module: &CoefficientModule) -> Result<Cocycle> {
    let src = m.original.source();
    let c = io::parse_cochain(&io::read_file(path)?, &path.display().to_string(), src, module)?;
    let z = Cocycle::new(src, module, c)?;
    let Some(vmap) = &m.to_original else {
        return Ok(z);
    };
    let pulled: Cochain = pullback_cochain(m.map.source(), src, vmap, module, z.cochain())?;
    Cocycle::new(m.map.source(), module, pulled)
}

fn labeler(args: &CycleArgs, m: &LoadedMap) -> Result<Labeler> {
    match args.labeler.as_str() {
        "cocycle" => {
            let module = load_module(&args.coeff)?;
            let z = load_cocycle(required(&args.cocycle, "cocycle")?, m, &module)?;
            Ok(Labeler::cocycle(module, z))
        }
        "chi2" => Ok(Labeler::ChiModTwo),
        other => {
            let Some(path) = other.strip_prefix("table:") else {
                return Err(Error::InvalidInput(format!(
                    "unknown labeler {other:?} (cocycle, chi2, table:<file>)"
                )));
            };
            if m.to_original.is_some() {
                return Err(Error::Precondition(
                    "label tables name simplices of the unsubdivided target; drop --subdivide".into(),
                ));
            }
            Ok(Labeler::Table(io::parse_label_table(&io::read_file(Path::new(path))?, path)?))
        }
    }
}

fn groups(h: &[crate::algebra::AbelianGroup]) -> String {
    h.iter()
        .enumerate()
        .map(|(k, g)| format!("H{k}={g}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn map_summary(r: &mut Report, f: &SimplicialMap) {
    r.push_list("source.f-vector", f.source().f_vector());
    r.push_list("target.f-vector", f.target().f_vector());
    r.push("map.codimension", f.codimension());
}

fn reeb_summary(r: &mut Report, w: &ReebComplex) {
    r.push_list("reeb.counts", w.counts());
    r.push("reeb.euler", w.euler_characteristic());
    let walls: Vec<String> = w
        .walls()
        .iter()
        .map(|&c| format!("c{c}:{}", w.wall_kind(c).map_or("-", |k| k.name())))
        .collect();
    r.push_list("reeb.walls", walls);
    r.push("reeb.warnings", w.warnings().len());
    for (i, msg) in w.warnings().iter().enumerate() {
        r.push(format!("reeb.warning.{i}"), msg);
    }
}

fn labels_summary(r: &mut Report, c: &LabeledTopChain) {
    r.push("labeler", c.provenance.name());
    r.push("module", c.module.describe());
    let labels: Vec<String> = c
        .labels
        .iter()
        .map(|(cell, v)| format!("c{cell}:{}", v.to_string().replace(' ', ",")))
        .collect();
    r.push_list("labels", labels);
}

/// Returns `true` when the cycle check passed.
fn cycle_summary(r: &mut Report, c: &LabeledTopChain, w: &ReebComplex) -> bool {
    let check = check_cycle(c, w);
    r.push("residual.walls", check.walls.len());
    r.push_list("residual.nonzero", check.nonzero_walls().iter().map(|c| format!("c{c}")));
    r.push("residual.internal", check.internal.len());
    r.push_list("boundary-contract", check.boundary_contract.iter().map(|c| format!("c{c}")));
    r.push("cycle", check.passed());
    check.passed()
}

fn execute(cli: &Cli) -> Result<(Report, i32)> {
    let mut r = Report::new();
    let mut code = 0;
    match &cli.command {
        Command::Generate { name, params, out } => {
            r.push("command", "generate");
            r.push("generator", name);
            std::fs::create_dir_all(out).map_err(|source| Error::Io {
                path: out.display().to_string(),
                source,
            })?;
            let files: Vec<(String, String)> = match generators::generate(name, params)? {
                Generated::Complex(k) => vec![(format!("{name}.complex"), io::write_complex(&k))],
                Generated::Map(f) => vec![
                    ("source.complex".into(), io::write_complex(f.source())),
                    ("target.complex".into(), io::write_complex(f.target())),
                    ("map.map".into(), io::write_map(&f)),
                ],
                Generated::Quotient(p) => vec![(format!("{name}.pq"), io::write_pq(&p))],
                Generated::Cocycle(k, z) => vec![
                    ("source.complex".into(), io::write_complex(&k)),
                    ("dual.coc".into(), io::write_cochain(&k, &CoefficientModule::integers(), z.cochain())),
                ],
            };
            for (file, text) in &files {
                io::write_file(&out.join(file), text)?;
            }
            r.push_list("files", files.iter().map(|f| f.0.clone()));
        }
        Command::Validate { complex, map } => {
            r.push("command", "validate");
            if let Some(path) = complex {
                let k = load_complex(path)?;
                r.push_list("complex.f-vector", k.f_vector());
                r.push("complex.euler", k.euler_characteristic());
                let closed = k.is_closed_pseudomanifold();
                r.push("complex.pseudomanifold", k.check_pseudomanifold().is_ok());
                r.push("complex.closed", closed);
                r.push("complex.orientable", orient_coherently(&k)?.is_orientable());
            } else {
                let m = load_map(map)?;
                map_summary(&mut r, &m.map);
                r.push("source.closed", m.map.source().is_closed_pseudomanifold());
                r.push("source.orientable", orient_coherently(m.map.source())?.is_orientable());
                r.push("target.orientable", orient_coherently(m.map.target())?.is_orientable());
                r.push("map.simplicial", true);
            }
        }
        Command::Homology { complex, pq, coeff } => {
            r.push("command", "homology");
            if let Some(path) = pq {
                let p = io::parse_pq(&io::read_file(path)?, &path.display().to_string())?;
                r.push("module", p.module().describe());
                r.push("homology", groups(&p.homology()?));
            } else {
                let k = load_complex(required(complex, "complex")?)?;
                let module = load_module(coeff)?;
                r.push("module", module.describe());
                r.push("homology", groups(&homology_all(&k, &module)?));
            }
        }
        Command::Reeb { map, oracle, coeff } => {
            r.push("command", "reeb");
            let m = load_map(map)?;
            map_summary(&mut r, &m.map);
            let w = build_reeb(&m.map)?;
            reeb_summary(&mut r, &w);
            r.push("homology", groups(&w.homology(&load_module(coeff)?)?));
            if *oracle {
                if m.map.target().dim() == 1 {
                    let g = sweep_oracle(&m.map)?;
                    let ok = compare_with_reeb(&g, &w, &m.map).matches();
                    r.push("oracle-match", ok);
                    if !ok {
                        code = EXIT_RESIDUAL;
                    }
                } else {
                    r.push("oracle-match", "skipped");
                }
            }
        }
        Command::Fiber {
            map,
            simplex,
            cocycle,
            coeff,
        } => {
            r.push("command", "fiber");
            let m = load_map(map)?;
            let f = &m.map;
            let n = f.target().dim();
            let sigmas: Vec<SimplexId> = match simplex {
                Some(s) => {
                    let mut v = s
                        .split(',')
                        .map(|x| {
                            x.trim()
                                .parse::<usize>()
                                .map_err(|_| Error::InvalidInput(format!("bad vertex {x:?} in --simplex")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    v.sort_unstable();
                    vec![f
                        .target()
                        .find(&v)
                        .ok_or_else(|| Error::InvalidInput(format!("{v:?} is not a target simplex")))?]
                }
                None => (0..f.target().count(n)).map(|i| SimplexId::new(n, i)).collect(),
            };
            let module = load_module(coeff)?;
            let z = cocycle.as_deref().map(|p| load_cocycle(p, &m, &module)).transpose()?;
            let so = orient_coherently(f.source())?.orientation().cloned();
            let to = orient_coherently(f.target())?.orientation().cloned();
            for sigma in sigmas {
                let key: Vec<String> = f.target().simplex(sigma).iter().map(ToString::to_string).collect();
                let key = key.join(",");
                let fib = fiber_over(f, sigma)?;
                r.push(format!("fiber.{key}.components"), fib.component_count());
                for comp in 0..fib.component_count() {
                    let p = format!("fiber.{key}.{comp}");
                    r.push_list(format!("{p}.census"), fib.census(comp));
                    r.push(format!("{p}.euler"), fib.euler_characteristic(comp)?);
                    if f.codimension() == 1 {
                        let l = fib.fiber_loop(f, comp, RepresentativeRule::Smallest, so.as_ref(), to.as_ref())?;
                        r.push(format!("{p}.loop-length"), l.edges.len());
                        r.push(format!("{p}.oriented"), l.oriented);
                        if let Some(z) = &z {
                            r.push(format!("{p}.evaluation"), evaluate_cocycle_on_loop(f, &module, z, &l)?);
                        }
                    }
                }
            }
        }
        Command::Cycle(args) => {
            r.push("command", "cycle");
            let m = load_map(&args.map)?;
            map_summary(&mut r, &m.map);
            let w = build_reeb(&m.map)?;
            reeb_summary(&mut r, &w);
            let c = build_cycle(&m.map, &w, &labeler(args, &m)?)?;
            labels_summary(&mut r, &c);
            if !cycle_summary(&mut r, &c, &w) {
                code = EXIT_RESIDUAL;
            }
        }
        Command::Verify {
            cycle: args,
            corollary,
            export_pq,
        } => {
            r.push("command", "verify");
            let m = load_map(&args.map)?;
            map_summary(&mut r, &m.map);
            let w = build_reeb(&m.map)?;
            reeb_summary(&mut r, &w);
            let c = build_cycle(&m.map, &w, &labeler(args, &m)?)?;
            labels_summary(&mut r, &c);
            if cycle_summary(&mut r, &c, &w) {
                let v = nontriviality(&c, &w)?;
                r.push("homology", groups(&v.homology));
                r.push(format!("top-homology.H{}", v.degree), &v.top_homology);
                r.push("verdict", if v.nontrivial { "nontrivial" } else { "trivial" });
            } else {
                r.push("verdict", "not-a-cycle");
                code = EXIT_RESIDUAL;
            }
            if let Some(mode) = corollary {
                let rep = corollary_report(&m.map, &w, CorollaryMode::parse(mode)?)?;
                r.push("corollary.mode", rep.mode.name());
                r.push("corollary.coefficients", rep.coefficients);
                r.push("corollary.group", &rep.group);
                r.push("corollary.conclusion", rep.conclusion());
            }
            if let Some(path) = export_pq {
                io::write_file(path, &io::write_pq(&PseudoQuotient::from_reeb(&w, &c)?))?;
                r.push("export-pq", path.display());
            }
        }
        Command::PqVerify { pq } => {
            r.push("command", "pq-verify");
            let p = io::parse_pq(&io::read_file(pq)?, &pq.display().to_string())?;
            let rep = pq_verify(&p)?;
            r.push("pq.dim", p.dim());
            r.push_list("pq.counts", (0..=p.dim()).map(|k| p.poset().cells_of_dim(k).len()));
            r.push("module", p.module().describe());
            for w in &rep.walls {
                r.push(
                    format!("wall.{}", p.id(w.cell)),
                    format!(
                        "{} arity={} residual={} {}",
                        w.model,
                        w.arity,
                        w.residual.to_string().replace(' ', ","),
                        if w.consistent() { "ok" } else { "violated" }
                    ),
                );
            }
            r.push("walls-consistent", rep.walls_consistent());
            r.push("residual.internal", rep.check.internal.len());
            r.push_list(
                "boundary-contract",
                rep.check.boundary_contract.iter().map(|&c| p.id(c).to_string()),
            );
            r.push("cycle", rep.check.passed());
            r.push("homology", groups(&rep.homology));
            r.push(format!("top-homology.H{}", p.dim()), rep.top_homology());
            r.push(
                "verdict",
                match rep.nontrivial {
                    Some(true) => "nontrivial",
                    Some(false) => "trivial",
                    None => "not-a-cycle",
                },
            );
            if !rep.walls_consistent() || !rep.check.passed() {
                code = EXIT_RESIDUAL;
            }
        }
    }
    r.push("exit", code);
    Ok((r, code))
}
