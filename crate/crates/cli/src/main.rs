mod input;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use copyramsey::construct::{self, ConstructionReport};
use copyramsey::detect::{self, Embedding, Join, Packing, Tie};
use copyramsey::family::{components_family, d_family, FamilyKind};
use copyramsey::procedures::{absorption_tiling, TilingCertificate, TilingParams};
use copyramsey::solver::{self, RamseyOutcome, Target, DEFAULT_CAP};
use copyramsey::{BitSet, Colour, GraphFamily, PartitionSpec, SmallGraph, TwoColouring};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "copyramsey",
    version,
    about = "Ramsey numbers of disjoint copies: families, constructions, detectors, tiling and exact search"
)]
struct Cli {
    /// Cap on worker threads for internal parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a derived family as graph6 lines.
    Families {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Build an extremal colouring; writes the colouring and a partition sidecar.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Search a colouring for a certificate; prints JSON or NONE.
    #[command(subcommand)]
    Detect(DetectCmd),
    /// K_k tiling of a host graph by absorption.
    Tile {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: usize,
        /// JSON file with tiling parameters.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        seed: u64,
        /// Also write the certificate here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact Ramsey number (or arrowing answers over a range).
    Solve {
        /// `<n>x<graph6|family-file>`.
        #[arg(long)]
        red: String,
        #[arg(long)]
        blue: String,
        /// Report arrowing for every order in `a..b` (inclusive).
        #[arg(long)]
        n_range: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Write the lower-bound witness colouring here.
        #[arg(short, long)]
        witness: Option<PathBuf>,
    },
    /// Check a certificate or colouring produced by another subcommand.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    D,
    Dprime,
    Dc,
    Dcprime,
    Components,
}

impl From<KindArg> for FamilyKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::D => FamilyKind::D,
            KindArg::Dprime => FamilyKind::DPrime,
            KindArg::Dc => FamilyKind::DC,
            KindArg::Dcprime => FamilyKind::DCPrime,
            KindArg::Components => FamilyKind::Components,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ColourArg {
    Red,
    Blue,
}

impl From<ColourArg> for Colour {
    fn from(c: ColourArg) -> Self {
        match c {
            ColourArg::Red => Colour::Red,
            ColourArg::Blue => Colour::Blue,
        }
    }
}

#[derive(Args)]
struct Out {
    /// Colouring file to write; the partition goes to `<output>.partition.json`.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct ECol {
    /// Colouring of the `E` (or `C`) block; found by exact search when omitted.
    #[arg(long)]
    e_colouring: Option<String>,
    /// Search cap used when the block colouring is found automatically.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Two-block colouring with no monochromatic nH.
    BesLower {
        #[arg(long)]
        h: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Out,
    },
    /// No red G and no blue nH.
    AsymLower {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        e: ECol,
        #[command(flatten)]
        out: Out,
    },
    /// Two blocks plus an extremal block E.
    EstimateLower {
        #[arg(long)]
        h: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        e: ECol,
        #[command(flatten)]
        out: Out,
    },
    /// R, B, E template with a chosen R-B colour.
    Template {
        #[arg(long)]
        r_size: usize,
        #[arg(long)]
        b_size: usize,
        #[arg(long, value_enum)]
        join: ColourArg,
        /// Colouring of `E`; empty when omitted.
        #[arg(long)]
        e_colouring: Option<String>,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum DetectCmd {
    Copy {
        #[arg(long)]
        colouring: String,
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum)]
        colour: ColourArg,
    },
    Pack {
        #[arg(long)]
        colouring: String,
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum)]
        colour: ColourArg,
        #[arg(long)]
        n: usize,
    },
    Tie {
        #[arg(long)]
        colouring: String,
        #[arg(long)]
        pattern: String,
        /// Comma-separated vertices the tie must meet.
        #[arg(long)]
        touch: Option<String>,
    },
    Join {
        #[arg(long)]
        colouring: String,
        /// Comma-separated candidates for the red part.
        #[arg(long)]
        red_cand: String,
        #[arg(long)]
        blue_cand: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    Copy {
        #[arg(long)]
        colouring: String,
        #[arg(long)]
        certificate: PathBuf,
    },
    Pack {
        #[arg(long)]
        colouring: String,
        #[arg(long)]
        certificate: PathBuf,
        /// Also require this many copies of this pattern.
        #[arg(long, requires = "n")]
        pattern: Option<String>,
        #[arg(long, requires = "pattern")]
        n: Option<usize>,
    },
    Tie {
        #[arg(long)]
        colouring: String,
        #[arg(long)]
        certificate: PathBuf,
    },
    Join {
        #[arg(long)]
        colouring: String,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// The colouring has neither target (red target in red, blue in blue).
    Avoid {
        #[arg(long)]
        colouring: String,
        #[arg(long)]
        red: String,
        #[arg(long)]
        blue: String,
    },
    /// Block structure of an R, B, E colouring and no tie through E.
    Critical {
        #[arg(long)]
        colouring: String,
        /// Partition sidecar; defaults to `<colouring>.partition.json`.
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long)]
        pattern: String,
    },
    Tiling {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        certificate: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(text) => match writeln!(std::io::stdout(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                eprintln!("error: writing output: {e}");
                ExitCode::FAILURE
            }
            _ => ExitCode::SUCCESS,
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialise")
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serialises")
}

fn or_none<T: serde::Serialize>(found: Option<T>) -> String {
    found.map_or_else(|| "NONE".to_string(), |v| pretty(&to_json(&v)))
}

fn run(cmd: Command) -> Result<String> {
    match cmd {
        Command::Families { graph, kind } => {
            let h = input::small_graph(&graph)?;
            Ok(FamilyKind::from(kind).compute(&h).to_graph6_lines().join("\n"))
        }
        Command::Construct(c) => construct_cmd(c),
        Command::Detect(d) => detect_cmd(d),
        Command::Tile { graph, k, params, seed, output } => {
            let g = input::dense_graph(&graph)?;
            let mut p: TilingParams = match params {
                Some(path) => {
                    serde_json::from_str(&read(&path)?).with_context(|| format!("parsing {}", path.display()))?
                }
                None => TilingParams::default(),
            };
            p.seed = seed;
            let cert = absorption_tiling(&g, k, &p)?;
            let text = pretty(&to_json(&cert));
            if let Some(path) = output {
                write(&path, &format!("{text}\n"))?;
            }
            Ok(text)
        }
        Command::Solve { red, blue, n_range, cap, witness } => {
            let (red, blue) = (input::target(&red)?, input::target(&blue)?);
            match n_range {
                Some(r) => solve_range(&red, &blue, input::n_range(&r)?, cap, witness.as_deref()),
                None => solve(&red, &blue, cap, witness.as_deref()),
            }
        }
        Command::Verify(v) => verify_cmd(v),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".partition.json");
    PathBuf::from(s)
}

fn e_colouring(e: &ECol, avoid_red: &GraphFamily, avoid_blue: &GraphFamily) -> Result<TwoColouring> {
    match &e.e_colouring {
        Some(path) => input::colouring(path),
        None => Ok(solver::extremal_e_colouring(avoid_red, avoid_blue, e.cap)?),
    }
}

fn construct_cmd(c: ConstructCmd) -> Result<String> {
    let (report, out): (ConstructionReport, Out) = match c {
        ConstructCmd::BesLower { h, n, out } => (construct::bes_lower(&input::small_graph(&h)?, n)?, out),
        ConstructCmd::AsymLower { g, h, n, e, out } => {
            let (g, h) = (input::small_graph(&g)?, input::small_graph(&h)?);
            let connected = h.order() == 0 || h.is_connected();
            let blue = if connected { GraphFamily::singleton(h.clone()) } else { components_family(&h) };
            let e_col = e_colouring(&e, &d_family(&g), &blue)?;
            let report = if connected {
                construct::asym_lower(&g, &h, n, &e_col)?
            } else {
                construct::asym_lower_components(&g, &h, n, &e_col)?
            };
            (report, out)
        }
        ConstructCmd::EstimateLower { h, n, e, out } => {
            let h = input::small_graph(&h)?;
            let report = match &e.e_colouring {
                Some(path) => construct::estimate_lower(&h, n, &input::colouring(path)?)?,
                None => construct::estimate_lower_auto(&h, n, e.cap)?,
            };
            (report, out)
        }
        ConstructCmd::Template { r_size, b_size, join, e_colouring, out } => {
            let e_col = match e_colouring {
                Some(path) => input::colouring(&path)?,
                None => TwoColouring::all_blue(0),
            };
            (construct::critical_template(r_size, b_size, join.into(), &e_col)?, out)
        }
    };
    write(&out.output, &report.colouring.write_text())?;
    let part = sidecar(&out.output);
    write(&part, &format!("{}\n", pretty(&to_json(&report.partition))))?;
    Ok(pretty(&json!({
        "colouring": out.output.display().to_string(),
        "partition": part.display().to_string(),
        "order": report.colouring.order(),
        "claims": to_json(&report.claims),
    })))
}

fn bitset(order: usize, vs: &[usize]) -> Result<BitSet> {
    if let Some(&v) = vs.iter().find(|&&v| v >= order) {
        bail!("vertex {v} is outside the colouring (order {order})");
    }
    Ok(BitSet::from_vertices(order, vs.iter().copied()))
}

fn detect_cmd(d: DetectCmd) -> Result<String> {
    Ok(match d {
        DetectCmd::Copy { colouring, pattern, colour } => {
            let c = input::colouring(&colouring)?;
            or_none(detect::find_mono_copy(&c, &input::small_graph(&pattern)?, colour.into()))
        }
        DetectCmd::Pack { colouring, pattern, colour, n } => {
            let c = input::colouring(&colouring)?;
            or_none(detect::find_disjoint_copies(&c, &input::small_graph(&pattern)?, colour.into(), n))
        }
        DetectCmd::Tie { colouring, pattern, touch } => {
            let c = input::colouring(&colouring)?;
            let h = input::small_graph(&pattern)?;
            let touch = touch.map(|t| input::vertex_list(&t).and_then(|vs| bitset(c.order(), &vs))).transpose()?;
            or_none(detect::find_h_tie_in(&c, &h, &BitSet::full(c.order()), touch.as_ref())?)
        }
        DetectCmd::Join { colouring, red_cand, blue_cand, k, l } => {
            let c = input::colouring(&colouring)?;
            let rc = bitset(c.order(), &input::vertex_list(&red_cand)?)?;
            let bc = bitset(c.order(), &input::vertex_list(&blue_cand)?)?;
            or_none(detect::find_join(&c, &rc, &bc, k, l)?)
        }
    })
}

fn target_json(t: &Target) -> Value {
    json!({ "copies": t.copies(), "family": t.family().to_graph6_lines() })
}

fn write_witness(path: Option<&Path>, w: &TwoColouring) -> Result<Value> {
    if let Some(p) = path {
        write(p, &w.write_text())?;
    }
    Ok(json!({
        "order": w.order(),
        "red": w.to_json()["red"].clone(),
        "file": path.map(|p| p.display().to_string()),
    }))
}

fn record_json(r: &solver::Exhaustion) -> Value {
    // Wall-clock time is left out so output is reproducible.
    json!({ "nodes": r.nodes, "scheme": r.scheme, "level_sizes": r.level_sizes })
}

fn solve(red: &Target, blue: &Target, cap: usize, witness: Option<&Path>) -> Result<String> {
    let outcome = solver::ramsey_number(red, blue, cap)?;
    let w = write_witness(witness, outcome.witness())?;
    let mut v = json!({
        "red": target_json(red),
        "blue": target_json(blue),
        "witness": w,
        "record": record_json(outcome.record()),
    });
    match &outcome {
        RamseyOutcome::Exact(r) => {
            v["exact"] = json!(true);
            v["value"] = json!(r.value);
        }
        RamseyOutcome::Bracketed { lower, .. } => {
            v["exact"] = json!(false);
            v["lower"] = json!(lower);
            v["cap"] = json!(cap);
        }
    }
    Ok(pretty(&v))
}

fn solve_range(
    red: &Target,
    blue: &Target,
    (a, b): (usize, usize),
    cap: usize,
    witness: Option<&Path>,
) -> Result<String> {
    let mut answers = Vec::new();
    let mut last_witness = None;
    for n in a..=b {
        let out = solver::arrows(n, red, blue, cap)?;
        answers.push(json!({ "n": n, "arrows": out.arrows }));
        if let Some(w) = out.witness {
            last_witness = Some(w);
        }
    }
    let mut v = json!({ "red": target_json(red), "blue": target_json(blue), "answers": answers });
    if let Some(w) = last_witness {
        v["witness"] = write_witness(witness, &w)?;
    }
    Ok(pretty(&v))
}

fn verdict(valid: bool, detail: Option<String>) -> String {
    pretty(&json!({ "valid": valid, "detail": detail }))
}

fn parse_cert<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing certificate {}", path.display()))
}

fn verify_cmd(v: VerifyCmd) -> Result<String> {
    Ok(match v {
        VerifyCmd::Copy { colouring, certificate } => {
            let e: Embedding = parse_cert(&certificate)?;
            verdict(detect::verify_embedding(&input::colouring(&colouring)?, &e), None)
        }
        VerifyCmd::Pack { colouring, certificate, pattern, n } => {
            let c = input::colouring(&colouring)?;
            let p: Packing = parse_cert(&certificate)?;
            let ok = match (pattern, n) {
                (Some(h), Some(n)) => detect::verify_packing_of(&c, &p, &input::small_graph(&h)?, n),
                _ => detect::verify_packing(&c, &p),
            };
            verdict(ok, None)
        }
        VerifyCmd::Tie { colouring, certificate } => {
            let t: Tie = parse_cert(&certificate)?;
            verdict(detect::verify_tie(&input::colouring(&colouring)?, &t), None)
        }
        VerifyCmd::Join { colouring, certificate } => {
            let j: Join = parse_cert(&certificate)?;
            verdict(detect::verify_join(&input::colouring(&colouring)?, &j), None)
        }
        VerifyCmd::Avoid { colouring, red, blue } => {
            let c = input::colouring(&colouring)?;
            let (red, blue) = (input::target(&red)?, input::target(&blue)?);
            let hit = [(&red, Colour::Red), (&blue, Colour::Blue)]
                .into_iter()
                .find_map(|(t, colour)| detect::find_family_packing(&c, t.family(), colour, t.copies()));
            match hit {
                None => verdict(true, None),
                Some(p) => verdict(false, Some(serde_json::to_string(&p)?)),
            }
        }
        VerifyCmd::Critical { colouring, partition, pattern } => {
            let c = input::colouring(&colouring)?;
            let part_path = partition.unwrap_or_else(|| sidecar(Path::new(&colouring)));
            let p: PartitionSpec = parse_cert(&part_path)?;
            p.validate(c.order())?;
            let h: SmallGraph = input::small_graph(&pattern)?;
            let violations = construct::check_critical_structure(&c, &p, &h)?;
            if violations.is_empty() {
                verdict(true, None)
            } else {
                verdict(false, Some(serde_json::to_string(&violations)?))
            }
        }
        VerifyCmd::Tiling { graph, certificate } => {
            let g = input::dense_graph(&graph)?;
            let cert: TilingCertificate = parse_cert(&certificate)?;
            match cert.verify(&g) {
                Ok(()) => verdict(true, None),
                Err(e) => verdict(false, Some(e.to_string())),
            }
        }
    })
}
