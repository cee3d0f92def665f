//! Command-line front end: classify diagrams, realize Gram matrices, list
//! faces, build polytopes, expand tessellation patches, dualize, run the
//! special constructions, and execute the verification suite.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use coxeterkit::diagram::{classify, from_schlafli, parse_diagram, CoxeterDiagram, SchlafliEntry};
use coxeterkit::dual::{dual_polytope, hyperbolic_realization, ridge_angles};
use coxeterkit::error::Result;
use coxeterkit::export;
use coxeterkit::faces::enumerate_faces;
use coxeterkit::gram::{
    gram_from_diagram, matrix_from_json, matrix_from_text, recover_normals, signature,
    vinberg_realizable, GramMatrix, Realizability,
};
use coxeterkit::verify::{run_suite, Tier};
use coxeterkit::wythoff::{
    build, symmetry_class, tessellation_patch, Polytope, DEFAULT_CAP,
};
use coxeterkit::zoo;

#[derive(Parser)]
#[command(
    name = "coxeterkit",
    about = "Coxeter diagrams, Gram matrices, and Wythoff constructions",
    version
)]
struct Cli {
    /// Plain key=value config file (keys: cap, tol, suite).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Orbit cap for all constructions.
    #[arg(long, global = true)]
    cap: Option<usize>,

    /// Eigenvalue tolerance for signature classification.
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct DiagramInput {
    /// Schläfli symbol, e.g. `4,3,5` or `3,inf`.
    #[arg(long, value_name = "a,b,c")]
    schlafli: Option<String>,

    /// Diagram DSL file (see the README for the grammar).
    #[arg(long, value_name = "FILE")]
    diagram: Option<PathBuf>,

    /// Ringed nodes, e.g. `1` or `1,3` (default for Schläfli input: 1).
    #[arg(long, value_name = "i[,j...]")]
    ring: Option<String>,
}

#[derive(Args, Clone)]
struct GramInput {
    /// Gram matrix file: plain rows of decimals, or a JSON array of arrays
    /// when the extension is .json.
    #[arg(long, value_name = "FILE")]
    gram: Option<PathBuf>,

    /// Dimension of the target space for Gram input.
    #[arg(long, value_name = "n")]
    dim: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Off,
    Obj,
    Svg,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a diagram by the signature of its Gram matrix.
    Classify {
        #[command(flatten)]
        input: DiagramInput,
    },
    /// Check Vinberg realizability and recover a mirror system.
    Realize {
        #[command(flatten)]
        input: DiagramInput,
        #[command(flatten)]
        gram: GramInput,
        /// Output file for the recovered normals (matrix text).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the face lattice from Gram data (JSON output).
    Faces {
        #[command(flatten)]
        input: DiagramInput,
        #[command(flatten)]
        gram: GramInput,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the Wythoff construction.
    Build {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "off")]
        format: Format,
    },
    /// Expand a Euclidean or hyperbolic tessellation patch.
    Tessellate {
        #[command(flatten)]
        input: DiagramInput,
        /// Cell-adjacency depth of the patch.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "off")]
        format: Format,
    },
    /// Polar dual of a build, optionally realized in hyperbolic space.
    Dual {
        #[command(flatten)]
        input: DiagramInput,
        /// Realize the dual in the Klein model and report the angles.
        #[arg(long)]
        hyperbolic: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Special constructions: E8, quaternions, seed families, slices.
    Zoo {
        #[command(subcommand)]
        item: ZooItem,
    },
    /// Run the verification suite, one pass/fail line per criterion.
    Verify {
        /// `fast`, `large`, or `acceptance` (alias for fast).
        #[arg(long, default_value = "fast")]
        suite: String,
    },
}

#[derive(Subcommand)]
enum ZooItem {
    /// The 240 roots of the E8 lattice, as plain coordinates.
    E8Roots {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Gosset polytope 4_21 and report its facet counts.
    Gosset421,
    /// Nearest-vertex count and distance for a lattice hole num/den.
    Hole {
        /// Eight integers, comma separated.
        #[arg(long, value_name = "x1,..,x8")]
        num: String,
        #[arg(long, default_value_t = 1)]
        den: i64,
    },
    /// The binary tetrahedral and icosahedral vertex sets.
    Quaternions,
    /// The n-demicube.
    Demicube {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// A-family seed build with an arbitrary ring pattern.
    ASeed {
        n: usize,
        #[arg(long, value_name = "i[,j...]")]
        ring: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// B-family seed build with an arbitrary ring pattern.
    BSeed {
        n: usize,
        #[arg(long, value_name = "i[,j...]")]
        ring: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The n-permutohedron.
    Permutohedron {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The omnitruncated n-cube.
    OmnitruncatedCube {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The diagonal slice of the cubic tessellation, dimension n.
    DiagonalSlice {
        n: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Default)]
struct Config {
    cap: Option<usize>,
    tol: Option<f64>,
    suite: Option<String>,
}

fn read_config(path: &PathBuf) -> Result<Config> {
    let text = std::fs::read_to_string(path)?;
    let mut cfg = Config::default();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(coxeterkit::CoxError::Precondition(format!(
                "config line without '=': {line:?}"
            )));
        };
        match key.trim() {
            "cap" => cfg.cap = value.trim().parse().ok(),
            "tol" => cfg.tol = value.trim().parse().ok(),
            "suite" => cfg.suite = Some(value.trim().to_string()),
            other => {
                return Err(coxeterkit::CoxError::Precondition(format!(
                    "unknown config key {other:?}"
                )))
            }
        }
    }
    Ok(cfg)
}

fn parse_ring_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim().parse::<usize>().map_err(|_| {
                coxeterkit::CoxError::BadRings(format!("bad ring index {t:?}"))
            })
        })
        .collect()
}

fn load_diagram(input: &DiagramInput) -> Result<CoxeterDiagram> {
    let mut d = match (&input.schlafli, &input.diagram) {
        (Some(symbol), None) => {
            let entries: Vec<SchlafliEntry> = symbol
                .split(',')
                .map(|t| t.trim().parse())
                .collect::<Result<_>>()?;
            from_schlafli(&entries, None)?
        }
        (None, Some(path)) => parse_diagram(&std::fs::read_to_string(path)?)?,
        _ => {
            return Err(coxeterkit::CoxError::Precondition(
                "provide exactly one of --schlafli or --diagram".into(),
            ))
        }
    };
    if let Some(rings) = &input.ring {
        d.set_rings(parse_ring_list(rings)?)?;
    }
    Ok(d)
}

fn load_gram(gram: &GramInput) -> Result<Option<(GramMatrix, usize)>> {
    match (&gram.gram, gram.dim) {
        (Some(path), Some(dim)) => {
            let text = std::fs::read_to_string(path)?;
            let m = if path.extension().is_some_and(|e| e == "json") {
                matrix_from_json(&text)?
            } else {
                matrix_from_text(&text)?
            };
            Ok(Some((m, dim)))
        }
        (Some(_), None) => Err(coxeterkit::CoxError::Precondition(
            "--gram input needs --dim".into(),
        )),
        _ => Ok(None),
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, content)?;
            Ok(())
        }
        None => {
            print!("{content}");
            if !content.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn emit_polytope(
    p: &Polytope,
    diagram: Option<&CoxeterDiagram>,
    out: &Option<PathBuf>,
    format: Format,
) -> Result<()> {
    let content = match format {
        Format::Off => export::off(p)?,
        Format::Obj => export::obj(p)?,
        Format::Json => {
            let class = match diagram {
                Some(d) => Some(symmetry_class(p, d)?),
                None => None,
            };
            export::polytope_json(p, class)
        }
        Format::Svg => {
            return Err(coxeterkit::CoxError::Export(
                "SVG output applies to 2-dimensional patches".into(),
            ))
        }
    };
    emit(out, &content)
}

fn run_command(cli: Cli) -> Result<()> {
    let mut cap = DEFAULT_CAP;
    let mut tol = coxeterkit::tol::ALGEBRAIC;
    let mut suite_default = "fast".to_string();
    if let Some(path) = &cli.config {
        let cfg = read_config(path)?;
        if let Some(c) = cfg.cap {
            cap = c;
        }
        if let Some(t) = cfg.tol {
            tol = t;
        }
        if let Some(s) = cfg.suite {
            suite_default = s;
        }
    }
    if let Some(c) = cli.cap {
        cap = c;
    }
    if let Some(t) = cli.tol {
        tol = t;
    }

    match cli.command {
        Command::Classify { input } => {
            let d = load_diagram(&input)?;
            println!("{}", classify(&d)?);
            Ok(())
        }
        Command::Realize { input, gram, out } => {
            let (g, dim) = match load_gram(&gram)? {
                Some(pair) => pair,
                None => {
                    let d = load_diagram(&input)?;
                    (gram_from_diagram(&d), d.node_count() - 1)
                }
            };
            let sig = signature(&g, tol);
            println!("signature {sig}");
            if sig.negative == 1 {
                match vinberg_realizable(&g, dim)? {
                    Realizability::Realizable { compact, warnings } => {
                        println!(
                            "Realizable({})",
                            if compact { "compact" } else { "finite_volume" }
                        );
                        for w in warnings {
                            eprintln!("warning: {w}");
                        }
                    }
                    Realizability::NotRealizable(reason) => {
                        println!("NotRealizable({reason})");
                        return Ok(());
                    }
                }
            }
            let mirrors = recover_normals(&g, dim)?;
            let text = mirrors
                .normals
                .iter()
                .map(|v| v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("\n");
            match &out {
                Some(_) => emit(&out, &text)?,
                None => println!("{text}"),
            }
            Ok(())
        }
        Command::Faces { input, gram, out } => {
            let (g, dim) = match load_gram(&gram)? {
                Some(pair) => pair,
                None => {
                    let d = load_diagram(&input)?;
                    (gram_from_diagram(&d), d.node_count() - 1)
                }
            };
            let lattice = enumerate_faces(&g, dim)?;
            emit(&out, &lattice.to_json())
        }
        Command::Build { input, out, format } => {
            let d = load_diagram(&input)?;
            let p = build(&d, cap)?;
            emit_polytope(&p, Some(&d), &out, format)
        }
        Command::Tessellate { input, depth, out, format } => {
            let d = load_diagram(&input)?;
            let patch = tessellation_patch(&d, depth, cap)?;
            let content = match format {
                Format::Off => export::patch_off(&patch)?,
                Format::Svg => export::svg(&patch)?,
                _ => {
                    return Err(coxeterkit::CoxError::Export(
                        "patches export as OFF or SVG".into(),
                    ))
                }
            };
            emit(&out, &content)
        }
        Command::Dual { input, hyperbolic, out, format } => {
            let d = load_diagram(&input)?;
            let p = build(&d, cap)?;
            let dual = dual_polytope(&p)?;
            if hyperbolic {
                let real = hyperbolic_realization(&dual, &p)?;
                let (lo, hi) = real.dihedral_angles.iter().fold(
                    (f64::INFINITY, f64::NEG_INFINITY),
                    |(lo, hi), &a| (lo.min(a), hi.max(a)),
                );
                println!(
                    "hyperbolic realization: {} ideal, {} real vertices; dihedral angles in [{lo}, {hi}]",
                    real.ideal_vertices.len(),
                    real.real_vertices.len()
                );
                return emit_polytope(&real.polytope, None, &out, format);
            }
            let angles = ridge_angles(&dual, &p)?;
            if let Some(a) = angles.first() {
                println!("ridge dihedral angle {a}");
            }
            emit_polytope(&dual.polytope, None, &out, format)
        }
        Command::Zoo { item } => run_zoo(item, cap),
        Command::Verify { suite } => {
            let name = if suite == "fast" { suite_default } else { suite };
            let tier = match name.as_str() {
                "fast" | "acceptance" => Tier::Fast,
                "large" => Tier::Large,
                other => {
                    return Err(coxeterkit::CoxError::Precondition(format!(
                        "unknown suite {other:?} (use fast, large, or acceptance)"
                    )))
                }
            };
            let results = run_suite(tier);
            let mut ok = true;
            for r in &results {
                println!("{r}");
                ok &= r.passed;
            }
            if !ok {
                return Err(coxeterkit::CoxError::Numerical(
                    "verification suite failed".into(),
                ));
            }
            Ok(())
        }
    }
}

fn run_zoo(item: ZooItem, cap: usize) -> Result<()> {
    match item {
        ZooItem::E8Roots { out } => {
            let lines: Vec<String> = zoo::e8_roots()
                .iter()
                .map(|r| {
                    r.to_f64().iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(" ")
                })
                .collect();
            emit(&out, &(lines.join("\n") + "\n"))
        }
        ZooItem::Gosset421 => {
            let p = zoo::build_421(cap.max(2_000_000))?;
            let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
            for f in p.facets() {
                *counts.entry(f.len()).or_default() += 1;
            }
            println!("4_21: {} vertices", p.vertices.len());
            for (size, n) in counts {
                println!("  {n} facets with {size} vertices");
            }
            Ok(())
        }
        ZooItem::Hole { num, den } => {
            let parts: Vec<i64> = num
                .split(',')
                .map(|t| {
                    t.trim().parse::<i64>().map_err(|_| {
                        coxeterkit::CoxError::Precondition(format!("bad coordinate {t:?}"))
                    })
                })
                .collect::<Result<_>>()?;
            if parts.len() != 8 {
                return Err(coxeterkit::CoxError::Precondition(
                    "a hole needs 8 coordinates".into(),
                ));
            }
            let point = zoo::RationalPoint { num: parts.try_into().unwrap(), den };
            let (count, dist) = zoo::hole_neighbors(&point)?;
            println!("{count} nearest lattice vectors at distance {dist}");
            Ok(())
        }
        ZooItem::Quaternions => {
            let q = zoo::quaternion_polytopes()?;
            println!(
                "24-cell: {} vertices; 600-cell: {} vertices; snub 24-cell: {} vertices",
                q.cell24.len(),
                q.cell600.len(),
                q.snub24.len()
            );
            Ok(())
        }
        ZooItem::Demicube { n, out, format } => {
            let p = zoo::demicube(n)?;
            emit_polytope(&p, None, &out, format)
        }
        ZooItem::ASeed { n, ring, out, format } => {
            let p = zoo::a_seed(n, &parse_ring_list(&ring)?)?;
            emit_polytope(&p, None, &out, format)
        }
        ZooItem::BSeed { n, ring, out, format } => {
            let p = zoo::b_seed(n, &parse_ring_list(&ring)?)?;
            emit_polytope(&p, None, &out, format)
        }
        ZooItem::Permutohedron { n, out, format } => {
            let p = zoo::permutohedron(n)?;
            emit_polytope(&p, None, &out, format)
        }
        ZooItem::OmnitruncatedCube { n, out, format } => {
            let p = zoo::omnitruncated_cube(n)?;
            emit_polytope(&p, None, &out, format)
        }
        ZooItem::DiagonalSlice { n, depth, out } => {
            let patch = zoo::diagonal_slice_tessellation(n, depth)?;
            let content = export::patch_off(&patch)?;
            emit(&out, &content)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_command(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
