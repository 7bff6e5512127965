//! `dowker`: command-line front end for `dowker-core`.
//!
//! Exit codes: 0 on success, 1 when a hypothesis fails or a `verify` verdict
//! is negative, 2 when an input cannot be read or parsed.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dowker_core::digraph;
use dowker_core::io::{self, Format};
use dowker_core::morphism::{self, MapFile, MultiMapFile, WitnessFile};
use dowker_core::{
    barcode, bifiltration_grid, power_filtration, BettiVector, Error, MultiMap, Relation,
    SelfRelation, Side, Verdict, VertexMap, DEFAULT_DIM_CAP,
};

#[derive(Parser)]
#[command(
    name = "dowker",
    version,
    about = "Dowker complexes and power filtrations of finite relations"
)]
struct Cli {
    /// Input format; detected from content when omitted.
    #[arg(long, global = true, value_enum)]
    input_format: Option<InputFormat>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Matrix,
    Edges,
    Json,
}

impl From<InputFormat> for Format {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Matrix => Format::Matrix,
            InputFormat::Edges => Format::Edges,
            InputFormat::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "L", alias = "l")]
    L,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::K => Side::K,
            SideArg::L => Side::L,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Conjugacy,
    Right,
    Left,
    MultiRight,
    MultiLeft,
    Shift,
    Homomorphism,
}

#[derive(Subcommand)]
enum Command {
    /// Shape, domain and image, eventual period and graph structure.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Maximal simplices and Betti numbers of one Dowker complex.
    Complex {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "K")]
        side: SideArg,
        /// Power of the relation; anything other than 1 needs a self-relation.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        power: i64,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Persistence barcode of the power filtration.
    Barcode {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "K")]
        side: SideArg,
        /// Start the filtration at the identity (power 0).
        #[arg(long)]
        include_zero: bool,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Betti grid of `K_{R^m} ∩ L_{R^n}` as CSV.
    Bifiltration {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
    },
    /// Checks a map or shift witness between two relations.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        r1: PathBuf,
        r2: PathBuf,
        /// Map, multimap or shift-witness JSON file.
        witness: PathBuf,
    },
}

enum Failure {
    Input(String),
    Hypothesis(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Input(e.to_string()),
            other => Failure::Hypothesis(other.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fmt = cli.input_format.map(Format::from);
    match run(cli.command, fmt) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Hypothesis(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path, fmt: Option<Format>) -> Result<Relation, Failure> {
    let text = read(path)?;
    io::parse(&text, fmt).map_err(|e| match e {
        Error::Parse { .. } => Failure::Input(format!("{}: {e}", path.display())),
        other => Failure::Input(format!("{}: {other}", path.display())),
    })
}

fn load_self(path: &Path, fmt: Option<Format>) -> Result<SelfRelation, Failure> {
    Ok(SelfRelation::try_from(load(path, fmt)?)?)
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("output serializes");
    s.push('\n');
    s
}

fn run(cmd: Command, fmt: Option<Format>) -> Outcome {
    match cmd {
        Command::Analyze { file, format } => analyze(&load(&file, fmt)?, format),
        Command::Complex {
            file,
            side,
            power,
            dim_cap,
            format,
        } => complex(&load(&file, fmt)?, side.into(), power, dim_cap, format),
        Command::Barcode {
            file,
            side,
            include_zero,
            dim_cap,
            format,
        } => {
            let r = load_self(&file, fmt)?;
            let fc = power_filtration(&r, side.into(), include_zero)?;
            let bc = barcode(&fc, dim_cap);
            let out = match format {
                OutputFormat::Json => format!("{}\n", bc.to_json()),
                OutputFormat::Text => bc.to_text(),
            };
            Ok((out, true))
        }
        Command::Bifiltration { file, dim_cap } => {
            let r = load_self(&file, fmt)?;
            Ok((bifiltration_grid(&r, dim_cap)?.to_csv(), true))
        }
        Command::Verify {
            kind,
            r1,
            r2,
            witness,
        } => verify(kind, &load(&r1, fmt)?, &load(&r2, fmt)?, &witness),
    }
}

#[derive(Serialize)]
struct Analysis {
    rows: usize,
    columns: usize,
    self_relation: bool,
    pairs: usize,
    domain: Vec<String>,
    image: Vec<String>,
    total: bool,
    surjective: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph: Option<GraphAnalysis>,
}

#[derive(Serialize)]
struct GraphAnalysis {
    eventual_period: [usize; 2],
    connected_components: usize,
    strongly_connected_components: usize,
    acyclic: bool,
    simple: bool,
    strongly_connected: bool,
    q: Option<usize>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn missing(all: &[String], present: &[String]) -> String {
    all.iter()
        .filter(|l| !present.contains(l))
        .cloned()
        .collect::<Vec<_>>()
        .join(", ")
}

fn analyze(r: &Relation, format: OutputFormat) -> Outcome {
    let (m, n) = r.shape();
    let as_self = SelfRelation::try_from(r.clone()).ok();
    let graph = as_self.as_ref().map(|s| {
        let ep = s.eventual_period();
        let strongly = digraph::is_strongly_connected(s);
        GraphAnalysis {
            eventual_period: [ep.index, ep.period],
            connected_components: digraph::connected_components(s).len(),
            strongly_connected_components: digraph::strongly_connected_components(s).len(),
            acyclic: digraph::is_acyclic(s),
            simple: digraph::is_simple(s),
            strongly_connected: strongly,
            q: if strongly {
                digraph::graph_period_q(s).ok()
            } else {
                None
            },
        }
    });
    let a = Analysis {
        rows: m,
        columns: n,
        self_relation: as_self.is_some(),
        pairs: r.len(),
        domain: r.domain().into_iter().map(String::from).collect(),
        image: r.image().into_iter().map(String::from).collect(),
        total: r.is_total(),
        surjective: r.is_surjective(),
        graph,
    };
    if format == OutputFormat::Json {
        return Ok((json(&a), true));
    }
    let (x, y) = if a.self_relation {
        ("X", "X")
    } else {
        ("X", "Y")
    };
    let mut out = format!(
        "dimensions: {m}×{n}, {}\npairs: {}\n",
        if a.self_relation {
            "self-relation"
        } else {
            "not self-relation"
        },
        a.pairs
    );
    if a.total {
        out += &format!("Dom R = {x}\n");
    } else {
        out += &format!(
            "Dom R ≠ {x} (missing: {})\n",
            missing(r.source_labels(), &a.domain)
        );
    }
    if a.surjective {
        out += &format!("Ima R = {y}\n");
    } else {
        out += &format!(
            "Ima R ≠ {y} (missing: {})\n",
            missing(r.target_labels(), &a.image)
        );
    }
    if let Some(g) = &a.graph {
        out += &format!(
            "eventual period ({}, {})\nconnected components: {}\nstrongly connected components: {}\nacyclic: {}\nsimple: {}\nstrongly connected: {}\n",
            g.eventual_period[0],
            g.eventual_period[1],
            g.connected_components,
            g.strongly_connected_components,
            yes_no(g.acyclic),
            yes_no(g.simple),
            yes_no(g.strongly_connected),
        );
        if let Some(q) = g.q {
            out += &format!("q = {q}\n");
        }
    }
    Ok((out, true))
}

#[derive(Serialize)]
struct ComplexReport {
    side: String,
    power: i64,
    universe: Vec<String>,
    maximal: Vec<Vec<String>>,
    betti: BettiVector,
}

fn complex(r: &Relation, side: Side, power: i64, dim_cap: usize, format: OutputFormat) -> Outcome {
    let k = if power == 1 {
        match side {
            Side::K => dowker_core::dowker_k(r),
            Side::L => dowker_core::dowker_l(r),
        }
    } else {
        let s = SelfRelation::try_from(r.clone())?;
        side.complex(&s.power(power))
    };
    let report = ComplexReport {
        side: side.to_string(),
        power,
        universe: k.universe().to_vec(),
        maximal: k.maximal_labels(),
        betti: k.betti_numbers(dim_cap),
    };
    let out = match format {
        OutputFormat::Json => json(&report),
        OutputFormat::Text => {
            let mut s = format!("{}_R^{}:\n", report.side, power);
            for m in &report.maximal {
                s += &format!("  [{}]\n", m.join(", "));
            }
            s + &format!("betti: {}\n", report.betti)
        }
    };
    Ok((out, true))
}

fn vertex_map(path: &Path, domain: &[String], codomain: &[String]) -> Result<VertexMap, Failure> {
    let file: MapFile = load_json(path)?;
    Ok(VertexMap::from_pairs(domain, codomain, file.map)?)
}

fn multi_map(path: &Path, domain: &[String], codomain: &[String]) -> Result<MultiMap, Failure> {
    let file: MultiMapFile = load_json(path)?;
    Ok(MultiMap::from_sets(domain, codomain, file.multimap)?)
}

fn verify(kind: VerifyKind, r1: &Relation, r2: &Relation, witness: &Path) -> Outcome {
    let self_pair = || -> Result<(SelfRelation, SelfRelation), Failure> {
        Ok((
            SelfRelation::try_from(r1.clone())?,
            SelfRelation::try_from(r2.clone())?,
        ))
    };
    let verdict = match kind {
        VerifyKind::Conjugacy => {
            let (a, b) = self_pair()?;
            let phi = vertex_map(witness, a.labels(), b.labels())?;
            morphism::is_conjugacy(&phi, &a, &b)?
        }
        VerifyKind::Homomorphism => {
            let (a, b) = self_pair()?;
            let f = vertex_map(witness, a.labels(), b.labels())?;
            morphism::is_graph_homomorphism(&f, &a, &b)?
        }
        VerifyKind::Right => {
            let f = vertex_map(witness, r1.target_labels(), r2.target_labels())?;
            morphism::is_right_morphism(&f, r1, r2)?
        }
        VerifyKind::Left => {
            let g = vertex_map(witness, r1.source_labels(), r2.source_labels())?;
            morphism::is_left_morphism(&g, r1, r2)?
        }
        VerifyKind::MultiRight => {
            let f = multi_map(witness, r1.target_labels(), r2.target_labels())?;
            morphism::is_multi_right_morphism(&f, r1, r2)?
        }
        VerifyKind::MultiLeft => {
            let g = multi_map(witness, r1.source_labels(), r2.source_labels())?;
            morphism::is_multi_left_morphism(&g, r1, r2)?
        }
        VerifyKind::Shift => {
            let (a, b) = self_pair()?;
            let file: WitnessFile = load_json(witness)?;
            let w = file.into_witness(&a, &b)?;
            morphism::verify_shift_equivalence(&a, &b, &w)?
        }
    };
    Ok(match verdict {
        Verdict::Holds => ("holds\n".to_string(), true),
        Verdict::Fails(v) => (format!("fails: {v}\n"), false),
    })
}
