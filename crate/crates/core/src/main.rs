use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use z2tri::analyze::{
    apply_move, complexity_certificate, find_maximal_lsts, fundamental_report, lst_intersection_matrix, promote,
    KnownFamily, MoveSpec,
};
use z2tri::build::lst::{meridian_weights_by_homology, torus_boundary};
use z2tri::build::{
    augmented_solid_torus, enumerate_minimal_lens_families, fold_along_edge, fold_lst, layered_loop, lgraph, lst,
    seifert_family, Family, Sidecar,
};
use z2tri::report::{analyze_report, Report, SCHEMA_VERSION};
use z2tri::surface::canonical::{b_modification_with_skeleton, canonical_census};
use z2tri::surface::coord::surface_classify;
use z2tri::surface::squares::scan_with_skeleton;
use z2tri::verify::{verify_suite, Criterion, Grid};
use z2tri::z2::{basis_from_skeleton, classify_with_skeleton, nonzero_classes, Cocycle};
use z2tri::{compute_skeleton, Error, Skeleton, Triangulation};

/// Layered triangulations, Z2 colourings and canonical surfaces.
#[derive(Parser)]
#[command(name = "z2tri", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a triangulation and write it as .tri
    #[command(subcommand)]
    Construct(Construct),
    /// Fold a one-vertex solid torus along a boundary edge
    Fold {
        file: PathBuf,
        #[arg(long, value_enum)]
        edge: FoldEdge,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Full JSON report: skeleton, homology, classes, bounds, tori, squares, lint
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Cocycle basis and tetrahedron types of every nonzero class
    Colourings { file: PathBuf },
    /// Canonical surface of a class, optionally b-modified
    Surface {
        file: PathBuf,
        #[command(flatten)]
        class: ClassArg,
        /// Even edges raised to weight two
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
    },
    /// Bound report per class and the complexity certificate
    Bounds {
        file: PathBuf,
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long, default_value_t = 0)]
        k_phi: u64,
    },
    /// Apply a 2-3, 3-2 or 4-4 move
    Moves {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: MoveKind,
        #[arg(long)]
        tet: Option<usize>,
        #[arg(long)]
        facet: Option<usize>,
        #[arg(long)]
        edge: Option<usize>,
        #[arg(long, default_value_t = 0)]
        axis: usize,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Flip supportive solid tori away with 4-4 moves
    Promote {
        file: PathBuf,
        #[command(flatten)]
        class: ClassArg,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Maximal layered solid tori and their pairwise shared edges
    FindLst { file: PathBuf },
    /// Twisted squares and their edge pairs
    TwistedSquares { file: PathBuf },
    /// L-graph nodes with their parity counts
    Lgraph {
        #[arg(long)]
        depth: usize,
    },
    /// Folds whose parity census falls in a minimal lens family
    EnumerateLens {
        #[arg(long)]
        depth: usize,
    },
    /// Run the acceptance checks
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum Construct {
    /// Layered solid torus LST(p, q)
    Lst {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// LST(p, q) folded along a boundary edge
    Fold {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum)]
        edge: FoldEdge,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Seifert fibred family member M, Mprime, P or Q
    Family {
        #[arg(long, value_enum)]
        tag: FamilyTag,
        #[arg(long, short = 'k')]
        k: u64,
        #[arg(long, short = 'm', default_value_t = 0)]
        m: u64,
        #[arg(long, short = 'n', default_value_t = 0)]
        n: u64,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Layered loop with n tetrahedra
    Loop {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        twisted: bool,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Three layered solid tori glued to a base by slopes a,b
    Augmented {
        /// Seifert pair `alpha,beta`, given three times
        #[arg(long = "slope", num_args = 1, allow_hyphen_values = true, required = true)]
        slopes: Vec<String>,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ClassArg {
    /// Class as an edge bit string; defaults to the first nonzero class
    #[arg(long)]
    class: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only these checks (name or number)
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Grid as JSON; defaults to the built-in grid
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Extra .tri files for the generic checks
    #[arg(long)]
    file: Vec<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FoldEdge {
    P,
    Q,
    Pq,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyTag {
    #[value(name = "M")]
    M,
    #[value(name = "Mprime", alias = "M'")]
    MPrime,
    #[value(name = "P")]
    P,
    #[value(name = "Q")]
    Q,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    BalancedLens,
    #[value(name = "M")]
    M,
    #[value(name = "Mprime")]
    MPrime,
    #[value(name = "P")]
    P,
    #[value(name = "Q")]
    Q,
}

#[derive(Clone, Copy, ValueEnum)]
enum MoveKind {
    #[value(name = "23")]
    TwoThree,
    #[value(name = "32")]
    ThreeTwo,
    #[value(name = "44")]
    FourFour,
}

enum Failure {
    Usage(String),
    Domain(String),
    Closed,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        match e.kind() {
            io::ErrorKind::BrokenPipe => Failure::Closed,
            _ => Failure::Domain(format!("stdout: {e}")),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    result: T,
}

// A closed stdout (e.g. piped into `head`) ends the run quietly.
macro_rules! out {
    ($($a:tt)*) => {
        write!(io::stdout().lock(), $($a)*).map_err(Failure::from)?
    };
}

macro_rules! outln {
    ($($a:tt)*) => {
        writeln!(io::stdout().lock(), $($a)*).map_err(Failure::from)?
    };
}

fn emit<T: Serialize>(command: &str, result: T) -> CliResult<()> {
    let env = Envelope { schema_version: SCHEMA_VERSION, command, result };
    outln!("{}", serde_json::to_string_pretty(&env).map_err(|e| Failure::Domain(e.to_string()))?);
    Ok(())
}

fn read_tri(path: &Path) -> CliResult<Triangulation> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    Triangulation::parse(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct Written {
    output: Option<String>,
    tet_count: usize,
    signature: String,
    sidecar: Option<Sidecar>,
}

/// Write `tri` to `output` with its sidecar next to it, or print the .tri
/// text when no output is given.
fn write_tri(tri: &Triangulation, output: Option<&Path>, sidecar: Sidecar) -> CliResult<()> {
    let Some(path) = output else {
        out!("{}", tri.to_text());
        return Ok(());
    };
    write_file(path, &tri.to_text())?;
    let json = serde_json::to_string_pretty(&sidecar).map_err(|e| Failure::Domain(e.to_string()))?;
    write_file(&path.with_extension("json"), &(json + "\n"))?;
    emit(
        "construct",
        Written {
            output: Some(path.display().to_string()),
            tet_count: tri.tet_count(),
            signature: z2tri::isomorphism::signature(tri),
            sidecar: Some(sidecar),
        },
    )
}

fn choose_class(sk: &Skeleton, arg: &ClassArg) -> CliResult<Cocycle> {
    let classes = nonzero_classes(&basis_from_skeleton(sk));
    match &arg.class {
        None => classes.into_iter().next().ok_or_else(|| Failure::Domain("no nonzero Z2 class".into())),
        Some(bits) => classes
            .into_iter()
            .find(|c| &c.to_bit_string() == bits)
            .ok_or_else(|| Failure::Usage(format!("--class {bits} is not a nonzero cocycle class of this triangulation"))),
    }
}

fn parse_pair(s: &str) -> CliResult<(i64, i64)> {
    let bad = || Failure::Usage(format!("--slope expects `alpha,beta`, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// Weight of the named boundary edge of an `lst(p, q)`.
fn fold_weight(p: u64, q: u64, edge: FoldEdge) -> u64 {
    match edge {
        FoldEdge::P => p,
        FoldEdge::Q => q,
        FoldEdge::Pq => p + q,
    }
}

#[derive(Serialize)]
struct FoldSummary {
    output: Option<String>,
    fold_edge_weight: u64,
    tet_count: usize,
    homology: z2tri::HomologyProfile,
    h1_order: Option<u64>,
}

fn fold_file(file: &Path, edge: FoldEdge, output: Option<&Path>) -> CliResult<()> {
    let tri = read_tri(file)?;
    let sk = compute_skeleton(&tri);
    let boundary = torus_boundary(&sk)?;
    let weights = meridian_weights_by_homology(&tri)?;
    let mut by_weight: Vec<(u64, usize)> = boundary.edges.iter().map(|&e| (weights[e], e)).collect();
    by_weight.sort_unstable();
    let (w, e) = by_weight[match edge {
        FoldEdge::P => 0,
        FoldEdge::Q => 1,
        FoldEdge::Pq => 2,
    }];
    let folded = fold_along_edge(&tri, e)?;
    if let Some(path) = output {
        write_file(path, &folded.to_text())?;
    }
    let homology = z2tri::first_homology(&folded)?;
    emit(
        "fold",
        FoldSummary {
            output: output.map(|p| p.display().to_string()),
            fold_edge_weight: w,
            tet_count: folded.tet_count(),
            h1_order: homology.order(),
            homology,
        },
    )
}

fn construct(c: Construct) -> CliResult<()> {
    match c {
        Construct::Lst { p, q, output } => {
            let (tri, meta) = lst(p, q)?;
            let mut side = Sidecar::new("lst").param("p", p as i64).param("q", q as i64);
            side.meridian_weights = Some(meta.edge_weights.clone());
            write_tri(&tri, output.as_deref(), side)
        }
        Construct::Fold { p, q, edge, output } => {
            let (t, meta) = lst(p, q)?;
            let (tri, rec) = fold_lst(&t, &meta, fold_weight(p, q, edge))?;
            let mut side = Sidecar::new("fold").param("p", p as i64).param("q", q as i64);
            side.fold = Some(rec);
            side.predicted_homology = Some(z2tri::first_homology(&tri)?);
            write_tri(&tri, output.as_deref(), side)
        }
        Construct::Family { tag, k, m, n, output } => {
            let fam = match tag {
                FamilyTag::M => Family::M,
                FamilyTag::MPrime => Family::MPrime,
                FamilyTag::P => Family::P,
                FamilyTag::Q => Family::Q,
            };
            let (tri, params) = seifert_family(fam, k, m, n)?;
            let mut side = Sidecar::new(fam.to_string()).param("k", k as i64);
            if matches!(fam, Family::M | Family::MPrime) {
                side = side.param("m", m as i64).param("n", n as i64);
            }
            side.predicted_homology = Some(params.predicted);
            write_tri(&tri, output.as_deref(), side)
        }
        Construct::Loop { n, twisted, output } => {
            let tri = layered_loop(n, twisted)?;
            let side = Sidecar::new(if twisted { "twisted_loop" } else { "loop" }).param("n", n as i64);
            write_tri(&tri, output.as_deref(), side)
        }
        Construct::Augmented { slopes, output } => {
            let pairs = slopes.iter().map(|s| parse_pair(s)).collect::<CliResult<Vec<_>>>()?;
            let [a, b, c] = pairs[..] else {
                return Err(Failure::Usage(format!("--slope must be given three times, got {}", pairs.len())));
            };
            let tri = augmented_solid_torus([a, b, c])?;
            let mut side = Sidecar::new("augmented");
            for (i, (x, y)) in pairs.iter().enumerate() {
                side = side.param(&format!("alpha{}", i + 1), *x).param(&format!("beta{}", i + 1), *y);
            }
            side.predicted_homology = Some(z2tri::build::seifert_homology(&pairs));
            write_tri(&tri, output.as_deref(), side)
        }
    }
}

fn print_report_text(r: &Report) -> CliResult<()> {
    outln!("{}: {} tetrahedra", r.input.source, r.tet_count);
    let s = &r.skeleton;
    outln!("  skeleton: {} vertices, {} edges, {} faces", s.vertices, s.edges, s.faces);
    outln!(
        "  H1: betti {}, torsion {:?}; closed {}, orientable {}",
        r.homology.betti, r.homology.invariant_factors, r.input.closed, r.input.orientable
    );
    outln!("  z2 rank {}", r.z2_rank);
    for c in &r.classes {
        let surf = &c.surface;
        out!(
            "  class {}: chi {}, {}, {} component(s), e {} o {}",
            c.class,
            surf.chi,
            if surf.orientable { "orientable" } else { "non-orientable" },
            surf.components,
            c.census.e_count,
            c.census.o_count
        );
        match &c.bounds {
            Some(b) => outln!(", identity {} = {}, e3 {} vs {}", b.identity_lhs, b.identity_rhs, b.eq1_lhs, b.eq1_rhs),
            None => outln!(),
        }
    }
    for l in &r.lsts {
        outln!("  layered solid torus ({}, {}) on tetrahedra {:?}", l.p, l.q, l.tetrahedra);
    }
    for t in &r.twisted_squares {
        outln!("  twisted square in tet {}: {:?}", t.tet, t.kind);
    }
    if let Some(l) = &r.lint {
        outln!("  lint: sum (6-i) E_i = {}, E = {}, T = {}", l.degree_sum, l.edge_count, l.tet_count);
        for e in &l.edges {
            outln!("    edge {} degree {}: {:?}", e.edge, e.degree, e.case);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassTypes {
    class: String,
    types: Vec<&'static str>,
}

#[derive(Serialize)]
struct Colourings {
    basis: Vec<String>,
    classes: Vec<ClassTypes>,
}

#[derive(Serialize)]
struct SurfaceOut {
    class: String,
    chi: i64,
    orientable: bool,
    connected: bool,
    components: usize,
    coordinate: String,
    b_modification: Option<z2tri::surface::BModification>,
}

#[derive(Serialize)]
struct BoundsOut {
    classes: Vec<(String, z2tri::analyze::BoundReport)>,
    certificate: z2tri::analyze::Certificate,
}

#[derive(Serialize)]
struct MoveOut {
    output: Option<String>,
    tet_count_before: usize,
    tet_count_after: usize,
    homology_preserved: bool,
    first_new: usize,
}

#[derive(Serialize)]
struct LstOut {
    lsts: Vec<z2tri::analyze::LstEmbedding>,
    shared_edges: Vec<Vec<usize>>,
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Construct(c) => construct(c),
        Command::Fold { file, edge, output } => fold_file(&file, edge, output.as_deref()),
        Command::Analyze { file, json } => {
            let tri = read_tri(&file)?;
            let r = analyze_report(&tri, &file.display().to_string())?;
            if json {
                outln!("{}", serde_json::to_string_pretty(&r).map_err(|e| Failure::Domain(e.to_string()))?);
            } else {
                print_report_text(&r)?;
            }
            Ok(())
        }
        Command::Colourings { file } => {
            let tri = read_tri(&file)?;
            let sk = compute_skeleton(&tri);
            let basis = basis_from_skeleton(&sk);
            let classes = nonzero_classes(&basis)
                .iter()
                .map(|phi| {
                    let types = classify_with_skeleton(&sk, phi)?;
                    Ok(ClassTypes { class: phi.to_bit_string(), types: types.iter().map(|t| t.label()).collect() })
                })
                .collect::<CliResult<Vec<_>>>()?;
            emit("colourings", Colourings { basis: basis.iter().map(|b| b.to_bit_string()).collect(), classes })
        }
        Command::Surface { file, class, b } => {
            let tri = read_tri(&file)?;
            let sk = compute_skeleton(&tri);
            let phi = choose_class(&sk, &class)?;
            let (s, _) = canonical_census(&tri, &sk, &phi)?;
            let c = surface_classify(&tri, &s.coord)?;
            let b_modification =
                if b.is_empty() { None } else { Some(b_modification_with_skeleton(&tri, &sk, &phi, &b)?) };
            emit(
                "surface",
                SurfaceOut {
                    class: phi.to_bit_string(),
                    chi: s.chi,
                    orientable: c.orientable,
                    connected: c.connected,
                    components: c.components,
                    coordinate: s.coord.to_text(),
                    b_modification,
                },
            )
        }
        Command::Bounds { file, family, k_phi } => {
            let tri = read_tri(&file)?;
            let sk = compute_skeleton(&tri);
            let family = family.map(|f| match f {
                FamilyArg::BalancedLens => KnownFamily::BalancedLens,
                FamilyArg::M => KnownFamily::M,
                FamilyArg::MPrime => KnownFamily::MPrime,
                FamilyArg::P => KnownFamily::P,
                FamilyArg::Q => KnownFamily::Q,
            });
            let certificate = complexity_certificate(&tri, family)?;
            let classes = nonzero_classes(&basis_from_skeleton(&sk))
                .iter()
                .map(|phi| Ok((phi.to_bit_string(), fundamental_report(&tri, &sk, phi, k_phi)?)))
                .collect::<CliResult<Vec<_>>>()?;
            emit("bounds", BoundsOut { classes, certificate })
        }
        Command::Moves { file, kind, tet, facet, edge, axis, output } => {
            let tri = read_tri(&file)?;
            let need = |v: Option<usize>, name: &str| v.ok_or_else(|| Failure::Usage(format!("--{name} is required for this move")));
            let spec = match kind {
                MoveKind::TwoThree => MoveSpec::Move23 { tet: need(tet, "tet")?, facet: need(facet, "facet")? },
                MoveKind::ThreeTwo => MoveSpec::Move32 { edge: need(edge, "edge")? },
                MoveKind::FourFour => MoveSpec::Move44 { edge: need(edge, "edge")?, axis },
            };
            let o = apply_move(&tri, spec)?;
            if let Some(path) = &output {
                write_file(path, &o.tri.to_text())?;
            }
            let h = |t: &Triangulation| z2tri::homology::homology_from_skeleton(&compute_skeleton(t));
            emit(
                "moves",
                MoveOut {
                    output: output.map(|p| p.display().to_string()),
                    tet_count_before: tri.tet_count(),
                    tet_count_after: o.tri.tet_count(),
                    homology_preserved: h(&tri) == h(&o.tri),
                    first_new: o.first_new,
                },
            )
        }
        Command::Promote { file, class, output } => {
            let tri = read_tri(&file)?;
            let phi = choose_class(&compute_skeleton(&tri), &class)?;
            let out = promote(&tri, &phi)?;
            if let Some(path) = &output {
                write_file(path, &out.tri.to_text())?;
            }
            emit("promote", out)
        }
        Command::FindLst { file } => {
            let tri = read_tri(&file)?;
            let lsts = find_maximal_lsts(&tri);
            let shared_edges = lst_intersection_matrix(&lsts);
            emit("find-lst", LstOut { lsts, shared_edges })
        }
        Command::TwistedSquares { file } => {
            let tri = read_tri(&file)?;
            emit("twisted-squares", scan_with_skeleton(&compute_skeleton(&tri)))
        }
        Command::Lgraph { depth } => emit("lgraph", lgraph(depth)?),
        Command::EnumerateLens { depth } => emit("enumerate-lens", enumerate_minimal_lens_families(depth)?),
        Command::Verify(v) => verify(v),
    }
}

fn verify(v: VerifyArgs) -> CliResult<()> {
    let mut grid = match &v.grid {
        None => Grid::default(),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
    };
    grid.files.extend(v.file.iter().cloned());
    if let Some(seed) = v.seed {
        grid.seed = seed;
    }
    let only = v
        .only
        .iter()
        .map(|s| s.parse::<Criterion>().map_err(|e| Failure::Usage(e.to_string())))
        .collect::<CliResult<Vec<_>>>()?;
    let report = verify_suite(&grid, &only)?;
    if v.json {
        emit("verify", &report)?;
    } else {
        for e in &report.input_errors {
            outln!("[FAIL] input {e}");
        }
        for r in &report.results {
            outln!("{r}");
        }
    }
    if report.passed {
        Ok(())
    } else {
        let n = report.results.iter().filter(|r| !r.passed).count() + report.input_errors.len();
        Err(Failure::Domain(format!("{n} verification failure(s)")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
