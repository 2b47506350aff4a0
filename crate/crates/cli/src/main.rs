use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use entrocone::cones::cross_section;
use entrocone::fixtures::{self, VerifyReport};
use entrocone::graph::DEFAULT_ENUMERATION_CAP;
use entrocone::io::{
    self, ConeFile, CrossSectionFile, InequalityData, RatioRowFile, VectorData, VolumeFile,
};
use entrocone::rational::{format_rational, parse_rational};
use entrocone::symmetrize::{
    average_graph, symmetrize_inequality, symmetrize_vector, DEFAULT_AVERAGE_VERTEX_CAP,
};
use entrocone::volumes::{ratio_table, shec_volume, sqec_volume};
use entrocone::{Backend, ConeKind, Membership, SimplicialCone, Subsystem};

const DEFAULT_N_CAP: usize = 30;

#[derive(Parser)]
#[command(name = "entrocone", version, about = "Exact entropy-cone computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Flow,
    Enum,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Shec,
    Sqec,
}

impl From<KindArg> for ConeKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Shec => ConeKind::Shec,
            KindArg::Sqec => ConeKind::Sqec,
        }
    }
}

#[derive(Args)]
struct SizeArgs {
    /// Number of parties.
    #[arg(long)]
    n: usize,
    /// Largest accepted party count.
    #[arg(long, default_value_t = DEFAULT_N_CAP)]
    cap: usize,
}

impl SizeArgs {
    fn checked(&self) -> Result<usize> {
        if self.n > self.cap {
            bail!(
                "n = {} exceeds the cap {} (raise it with --cap)",
                self.n,
                self.cap
            );
        }
        Ok(self.n)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Min-cut entropies of a graph model.
    Entropy {
        /// Graph file, or `-` for standard input.
        graph: String,
        /// Only this subsystem, e.g. `1,2`.
        #[arg(long)]
        subsystem: Option<String>,
        #[arg(long, value_enum, default_value = "flow")]
        backend: BackendArg,
        /// State limit for the enumeration backend.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Symmetrize an entropy vector or an inequality.
    Symmetrize {
        #[arg(
            long,
            conflicts_with = "inequality",
            required_unless_present = "inequality"
        )]
        vector: Option<String>,
        #[arg(long)]
        inequality: Option<String>,
    },
    /// Rays and facets of the SHEC or SQEC.
    Cone {
        #[arg(value_enum)]
        kind: KindArg,
        #[command(flatten)]
        size: SizeArgs,
        #[arg(long, conflicts_with_all = ["facets", "both"])]
        rays: bool,
        #[arg(long, conflicts_with = "both")]
        facets: bool,
        #[arg(long)]
        both: bool,
    },
    /// Facets of the cone spanned by the rays in a cone file.
    Dual {
        #[arg(long)]
        rays: String,
    },
    /// Test a vector for membership in a cone (exit 1 when outside).
    Member {
        #[arg(long)]
        cone: String,
        #[arg(long)]
        vector: String,
    },
    /// Exact volume of a cone cross-section.
    Volume {
        #[arg(value_enum)]
        kind: KindArg,
        #[command(flatten)]
        size: SizeArgs,
    },
    /// SHEC and SQEC inverse volumes and their ratio for n = 2..max-n.
    Table {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_N_CAP)]
        cap: usize,
        /// Aligned text instead of JSON.
        #[arg(long)]
        pretty: bool,
    },
    /// Ray vertices on the hyperplane where the symmetric entropies sum to 1.
    CrossSection {
        #[arg(value_enum)]
        kind: KindArg,
        #[command(flatten)]
        size: SizeArgs,
    },
    /// Star graph with `n + 1` leaves and uniform weight.
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Disjoint union of all recolorings of a graph, weights scaled down.
    Average {
        graph: String,
        #[arg(long, default_value_t = DEFAULT_AVERAGE_VERTEX_CAP)]
        max_vertices: usize,
    },
    /// Re-derive the embedded reference tables (exit 1 on any mismatch).
    Verify {
        #[arg(long)]
        n: Option<usize>,
        /// Write every table row as JSON into this directory.
        #[arg(long)]
        emit_fixtures: Option<PathBuf>,
        #[arg(long)]
        pretty: bool,
    },
    /// Evaluate an inequality (exit 1 when violated).
    Check {
        #[arg(long)]
        inequality: String,
        #[arg(long, conflicts_with = "vector", required_unless_present = "vector")]
        graph: Option<String>,
        #[arg(long)]
        vector: Option<String>,
    },
}

enum Outcome {
    Ok(String),
    Failed(String),
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn pretty(v: &Value) -> String {
    io::to_pretty(v)
}

fn backend(arg: BackendArg, cap: u64) -> Backend {
    match arg {
        BackendArg::Flow => Backend::Flow,
        BackendArg::Enum => Backend::Enumeration { max_states: cap },
    }
}

fn as_sym_vector(v: VectorData) -> Result<entrocone::SymVector> {
    Ok(match v {
        VectorData::Sym(s) => s,
        VectorData::Entropy(e) => symmetrize_vector(&e)?,
    })
}

fn verify_report(n: Option<usize>) -> Result<VerifyReport> {
    Ok(match n {
        Some(n) => fixtures::verify_appendix(n)?,
        None => fixtures::verify_all()?,
    })
}

fn emit_fixtures(dir: &Path, n: Option<usize>) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let ns: Vec<usize> = match n {
        Some(n) => vec![n],
        None => (2..=5).collect(),
    };
    for n in ns {
        for r in fixtures::hec_rays(n)? {
            let text = io::vector_json(&VectorData::Entropy(r.vector));
            fs::write(dir.join(format!("hec-ray-n{n}-{:02}.json", r.number)), text)?;
        }
        let facets = fixtures::hec_facets(n)?
            .into_iter()
            .chain(fixtures::sa_ssa_facets(n)?);
        for f in facets {
            let text = io::inequality_json(&InequalityData::Full(f.inequality));
            fs::write(
                dir.join(format!("{}-n{n}-{:02}.json", f.table, f.number)),
                text,
            )?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome> {
    let out = match cli.command {
        Command::Entropy {
            graph,
            subsystem,
            backend: b,
            cap,
        } => {
            let g = io::parse_graph(&read_input(&graph)?)?;
            let b = backend(b, cap);
            match subsystem {
                Some(key) => {
                    let s = Subsystem::parse_key(g.parties(), &key)?;
                    let e = g.entropy(&s, b)?;
                    pretty(&json!({
                        "parties": g.parties(),
                        "subsystem": s.key(),
                        "entropy": format_rational(&e),
                    }))
                }
                None => io::vector_json(&VectorData::Entropy(g.entropy_vector(b)?)),
            }
        }
        Command::Symmetrize { vector, inequality } => {
            if let Some(path) = vector {
                match io::parse_vector(&read_input(&path)?)? {
                    VectorData::Entropy(e) => {
                        io::vector_json(&VectorData::Sym(symmetrize_vector(&e)?))
                    }
                    VectorData::Sym(_) => bail!("vector is already symmetrized"),
                }
            } else {
                let path =
                    inequality.ok_or_else(|| anyhow!("--vector or --inequality required"))?;
                match io::parse_inequality(&read_input(&path)?)? {
                    InequalityData::Full(q) => {
                        io::inequality_json(&InequalityData::Sym(symmetrize_inequality(&q)?))
                    }
                    InequalityData::Sym(_) => bail!("inequality is already symmetrized"),
                }
            }
        }
        Command::Cone {
            kind,
            size,
            rays,
            facets,
            both,
        } => {
            let cone = SimplicialCone::build(kind.into(), size.checked()?)?;
            let (r, f) = match (rays, facets, both) {
                (true, _, _) => (true, false),
                (_, true, _) => (false, true),
                _ => (true, true),
            };
            io::to_pretty(&ConeFile::from_cone(&cone, r, f))
        }
        Command::Dual { rays } => {
            let file: ConeFile = serde_json::from_str(&read_input(&rays)?)
                .map_err(|e| anyhow!("malformed cone file: {e}"))?;
            let cone = file.to_cone()?;
            io::to_pretty(&ConeFile::from_cone(&cone, true, true))
        }
        Command::Member { cone, vector } => {
            let cone = io::parse_cone(&read_input(&cone)?)?;
            let v = as_sym_vector(io::parse_vector(&read_input(&vector)?)?)?;
            let m = cone.membership(&v)?;
            let coeffs: Vec<String> = m.coefficients().iter().map(format_rational).collect();
            return Ok(match m {
                Membership::Inside { .. } => Outcome::Ok(pretty(&json!({
                    "member": true,
                    "coefficients": coeffs,
                }))),
                Membership::Outside {
                    facet_index, value, ..
                } => Outcome::Failed(pretty(&json!({
                    "member": false,
                    "coefficients": coeffs,
                    "violated_facet": facet_index + 1,
                    "value": format_rational(&value),
                }))),
            });
        }
        Command::Volume { kind, size } => {
            let n = size.checked()?;
            let (report, label) = match kind {
                KindArg::Shec => (shec_volume(n)?, "shec"),
                KindArg::Sqec => (sqec_volume(n)?, "sqec"),
            };
            io::to_pretty(&VolumeFile::new(n, label, &report))
        }
        Command::Table { max_n, cap, pretty } => {
            if max_n > cap {
                bail!("max-n = {max_n} exceeds the cap {cap} (raise it with --cap)");
            }
            let rows: Vec<RatioRowFile> =
                ratio_table(max_n)?.iter().map(RatioRowFile::from).collect();
            if pretty {
                render_table(&rows)
            } else {
                io::to_pretty(&rows)
            }
        }
        Command::CrossSection { kind, size } => {
            let cone = SimplicialCone::build(kind.into(), size.checked()?)?;
            io::to_pretty(&CrossSectionFile::new(&cross_section(cone.rays())?))
        }
        Command::Star { n, w } => {
            let w = parse_rational(&w)?;
            io::graph_json(&entrocone::graph::star_graph(n, &w)?)
        }
        Command::Average {
            graph,
            max_vertices,
        } => {
            let g = io::parse_graph(&read_input(&graph)?)?;
            io::graph_json(&average_graph(&g, max_vertices)?)
        }
        Command::Verify {
            n,
            emit_fixtures: dir,
            pretty: as_text,
        } => {
            if let Some(dir) = dir {
                emit_fixtures(&dir, n)?;
            }
            let report = verify_report(n)?;
            let text = if as_text {
                let mut s: String = report.rows.iter().map(|r| format!("{r}\n")).collect();
                let failed = report.failures().count();
                s.push_str(&format!("{} rows, {failed} failed\n", report.rows.len()));
                s
            } else {
                let rows: Vec<Value> = report
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "table": r.table.to_string(),
                            "n": r.parties,
                            "row": r.number,
                            "passed": r.passed,
                            "detail": r.detail,
                        })
                    })
                    .collect();
                pretty(&json!({ "passed": report.all_passed(), "rows": rows }))
            };
            return Ok(if report.all_passed() {
                Outcome::Ok(text)
            } else {
                Outcome::Failed(text)
            });
        }
        Command::Check {
            inequality,
            graph,
            vector,
        } => {
            let q = io::parse_inequality(&read_input(&inequality)?)?;
            let v = match (graph, vector) {
                (Some(g), _) => {
                    let g = io::parse_graph(&read_input(&g)?)?;
                    VectorData::Entropy(g.entropy_vector(Backend::Flow)?)
                }
                (None, Some(v)) => io::parse_vector(&read_input(&v)?)?,
                (None, None) => bail!("--graph or --vector required"),
            };
            let value = match (&q, v) {
                (InequalityData::Full(q), VectorData::Entropy(e)) => q.evaluate(&e)?,
                (InequalityData::Sym(q), v) => q.evaluate(&as_sym_vector(v)?)?,
                (InequalityData::Full(_), VectorData::Sym(_)) => {
                    bail!("an unsymmetrized inequality needs a full entropy vector")
                }
            };
            let ok = value >= entrocone::Rational::default();
            let text = pretty(&json!({
                "value": format_rational(&value),
                "satisfied": ok,
            }));
            return Ok(if ok {
                Outcome::Ok(text)
            } else {
                Outcome::Failed(text)
            });
        }
    };
    Ok(Outcome::Ok(out))
}

fn render_table(rows: &[RatioRowFile]) -> String {
    let header = ["n", "1/vol(SHEC)", "1/vol(SQEC)", "ratio"];
    let cells: Vec<[String; 4]> = rows
        .iter()
        .map(|r| {
            [
                r.n.to_string(),
                r.inv_shec.clone(),
                r.inv_sqec.clone(),
                r.ratio_3sf.clone(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |cols: [&str; 4]| {
        let parts: Vec<String> = cols
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        parts.join("  ") + "\n"
    };
    out.push_str(&line(header));
    for row in &cells {
        out.push_str(&line([&row[0], &row[1], &row[2], &row[3]]));
    }
    out
}

fn init_threads() {
    if let Ok(v) = std::env::var("ENTROCONE_THREADS") {
        if let Ok(t) = v.trim().parse::<usize>() {
            if t > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let result = run(cli);
    let mut stdout = std::io::stdout().lock();
    match result {
        Ok(Outcome::Ok(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
