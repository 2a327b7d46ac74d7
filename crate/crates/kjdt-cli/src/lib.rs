//! Command line front end for the kjdt library.
//!
//! Six subcommands cover the library surface: `poset` summarizes a cataloged
//! poset or triple, `count` runs the exact counting routines, `coeff`
//! expands Schubert products, `doppel` verifies or applies the bijections,
//! `heap` analyzes a Coxeter word, and `export` renders a Hasse diagram as
//! DOT. Output is plain text by default and a single JSON document under
//! `--json`; errors go to standard error, as JSON under `--json`.
//!
//! Exit codes: 0 for success, including a verification that ran and passed;
//! 1 when a check fails or the computation hits a limit; 2 for usage errors.
//! All numbers are exact integers end to end.

use std::collections::HashSet;
use std::ffi::OsString;
use std::fs;
use std::io::{Read as _, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kjdt::catalog::{
    build_triple, ideal_partition, minuscule_poset, named_poset, partition_ideal, CatalogError,
    MinusculeData, MinusculeFamily, RootPosetKind, TripleFamily,
};
use kjdt::coxeter::{CoxeterError, CoxeterSystem, TypeTag};
use kjdt::doppel::{BijectionContext, DoppelError};
use kjdt::ktheory::{
    coh_coefficient, coh_product_expansion, k_coefficient, k_product_expansion, KExpansion,
    KTheoryError,
};
use kjdt::poset::{ideal_cap, seeded_rng, Drawing, OrderIdeal, PlanePartition, Poset, PosetError};
use kjdt::tableaux::TableauError;

/// Why a parsed command could not deliver. The split drives the exit code:
/// a bad request is the caller's problem, a failed assertion or exhausted
/// limit is a result in its own right.
#[derive(Debug)]
pub enum Failure {
    /// Unknown names, malformed values, unreadable input. Exit 2.
    Usage(String),
    /// A property that was supposed to hold did not. Exit 1.
    Assertion(String),
    /// The computation could not finish: caps, I/O, oversized searches. Exit 1.
    Runtime(String),
}

impl Failure {
    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Assertion(m) | Failure::Runtime(m) => m,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Assertion(_) => "assertion",
            Failure::Runtime(_) => "runtime",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::UnknownName(_) | CatalogError::InvalidParams(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<CoxeterError> for Failure {
    fn from(e: CoxeterError) -> Self {
        match e {
            CoxeterError::UnknownType(_)
            | CoxeterError::InvalidRank(..)
            | CoxeterError::LetterOutOfRange { .. }
            | CoxeterError::NotCrystallographic(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<PosetError> for Failure {
    fn from(e: PosetError) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<TableauError> for Failure {
    fn from(e: TableauError) -> Self {
        match e {
            TableauError::Poset(p) => p.into(),
            // Shape and strictness problems surface from malformed inputs.
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<KTheoryError> for Failure {
    fn from(e: KTheoryError) -> Self {
        match e {
            KTheoryError::NotMinusculeAmbient | KTheoryError::SizeMismatch { .. } => {
                Failure::Usage(e.to_string())
            }
            KTheoryError::Shape(_) => Failure::Usage(e.to_string()),
            KTheoryError::Poset(p) => p.into(),
            KTheoryError::Tableau(t) => t.into(),
        }
    }
}

impl From<DoppelError> for Failure {
    fn from(e: DoppelError) -> Self {
        match e {
            DoppelError::Input(_) => Failure::Usage(e.to_string()),
            DoppelError::ShapeAssertionFailed(_) | DoppelError::InfusionMismatch(_) => {
                Failure::Assertion(e.to_string())
            }
            DoppelError::Catalog(c) => c.into(),
            DoppelError::Poset(p) => p.into(),
            DoppelError::Tableau(t) => t.into(),
        }
    }
}

/// Exact combinatorics of minuscule posets: plane partition counting,
/// Schubert structure coefficients, and doppelganger bijections.
#[derive(Parser)]
#[command(name = "kjdt", version, disable_help_subcommand = true)]
struct Cli {
    /// Emit one JSON document on stdout; errors become JSON on stderr.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized subcommands; one seed, one stream of draws.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Size of the worker pool behind verification and expansion.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a cataloged poset or a doppelganger triple.
    Poset(PosetArgs),
    /// Count plane partitions, ideals, or linear extensions exactly.
    #[command(subcommand)]
    Count(CountCmd),
    /// Expand a product of Schubert classes, or extract one coefficient.
    Coeff(CoeffArgs),
    /// Verify, apply, or spot-check a doppelganger bijection.
    #[command(subcommand)]
    Doppel(DoppelCmd),
    /// Analyze the heap of a word in a finite Coxeter group.
    Heap(HeapArgs),
    /// Write a Hasse diagram as a DOT digraph, covers pointing upward.
    Export(ExportArgs),
}

#[derive(Args)]
struct PosetArgs {
    /// Catalog name: gr:K,N, lg:N, og:N, quadric:D, cayley, freudenthal,
    /// rootA:N, rootB:K,N, rootH3, or rootI2:M.
    #[arg(long, value_name = "NAME", required_unless_present = "triple", conflicts_with = "triple")]
    name: Option<String>,
    /// Doppelganger triple: B:K,N, H, or I:N.
    #[arg(long, value_name = "TRIPLE")]
    triple: Option<String>,
    /// Use the dual order.
    #[arg(long, conflicts_with = "triple")]
    dual: bool,
}

#[derive(Args)]
struct CountTarget {
    /// Catalog name of the poset to count on.
    #[arg(long, value_name = "NAME")]
    poset: String,
    /// Use the dual order.
    #[arg(long)]
    dual: bool,
}

#[derive(Subcommand)]
enum CountCmd {
    /// Plane partitions of height at most --ell.
    Pp {
        #[command(flatten)]
        target: CountTarget,
        /// Height bound.
        #[arg(long, value_name = "L")]
        ell: u32,
    },
    /// Order ideals.
    Ideals {
        #[command(flatten)]
        target: CountTarget,
    },
    /// Linear extensions, equivalently standard fillings of the full shape.
    Extensions {
        #[command(flatten)]
        target: CountTarget,
    },
    /// Order polynomial values at heights 0..=--ell.
    Polynomial {
        #[command(flatten)]
        target: CountTarget,
        /// Largest height to evaluate at.
        #[arg(long, value_name = "L")]
        ell: u32,
    },
}

#[derive(Args)]
struct CoeffArgs {
    /// Ambient minuscule poset, e.g. gr:4,8.
    #[arg(long, value_name = "NAME")]
    ambient: String,
    /// First factor as comma-separated row lengths; 0 for the empty shape.
    #[arg(long, value_name = "PARTS")]
    w: String,
    /// Second factor as comma-separated row lengths.
    #[arg(long, value_name = "PARTS")]
    u: String,
    /// Target shape: print its single coefficient instead of the expansion.
    #[arg(long, value_name = "PARTS")]
    v: Option<String>,
    /// Cohomology instead of K-theory: top-degree terms only.
    #[arg(long)]
    cohomology: bool,
}

#[derive(Args)]
struct DoppelTarget {
    /// Triple: B:K,N, H, or I:N.
    #[arg(long, value_name = "TRIPLE")]
    triple: String,
    /// Height bound for the plane partitions.
    #[arg(long, value_name = "L")]
    ell: u32,
}

#[derive(Subcommand)]
enum DoppelCmd {
    /// Exhaustively verify the bijection at one height.
    Verify {
        #[command(flatten)]
        target: DoppelTarget,
    },
    /// Apply the forward map to a plane partition read from JSON.
    Map {
        #[command(flatten)]
        target: DoppelTarget,
        /// Input file holding {"ell": L, "values": [...]}, or - for stdin.
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// Apply the inverse map to a plane partition read from JSON.
    Invmap {
        #[command(flatten)]
        target: DoppelTarget,
        /// Input file holding {"ell": L, "values": [...]}, or - for stdin.
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// Round-trip randomly drawn plane partitions through both maps.
    Check {
        #[command(flatten)]
        target: DoppelTarget,
        /// How many random partitions to draw.
        #[arg(long, value_name = "N", default_value_t = 100)]
        samples: u64,
    },
}

#[derive(Args)]
struct HeapArgs {
    /// Coxeter type: A5, B4, D6, E6, E7, H3, or I2:7.
    #[arg(long = "type", value_name = "TYPE")]
    kind: String,
    /// Word as comma-separated generator indices, e.g. 2,1,3,2.
    #[arg(long, value_name = "WORD")]
    word: String,
    /// Also count the reduced words of the element by depth-first search.
    #[arg(long)]
    count_reduced: bool,
}

#[derive(Args)]
struct ExportArgs {
    /// Catalog name of the poset to draw.
    #[arg(long, value_name = "NAME", required_unless_present = "triple", conflicts_with = "triple")]
    name: Option<String>,
    /// Triple to draw: the ambient poset, with the copy of Y filled gray
    /// and the embedded image of X in thick borders.
    #[arg(long, value_name = "TRIPLE")]
    triple: Option<String>,
    /// Use the dual order.
    #[arg(long, conflicts_with = "triple")]
    dual: bool,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

/// What a handler hands back: both renderings of the answer, plus whether
/// the run counts as a success for the exit code.
struct Outcome {
    human: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn new(human: impl Into<String>, json: Value) -> Self {
        Outcome { human: human.into(), json, ok: true }
    }
}

/// Runs the command line with explicit output streams and returns the exit
/// code. `main` passes real stdio; tests pass buffers.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let wants_json = argv.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    if wants_json {
                        let msg = e.render().to_string();
                        let _ = writeln!(
                            err,
                            "{}",
                            json!({"error": msg.trim_end(), "kind": "usage"})
                        );
                    } else {
                        let _ = write!(err, "{}", e.render());
                    }
                    2
                }
            };
        }
    };
    if let Some(n) = cli.threads {
        // The pool is process-global; the first configuration wins.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(&cli) {
        Ok(outcome) => {
            let text = if cli.json { outcome.json.to_string() } else { outcome.human };
            let _ = writeln!(out, "{}", text.trim_end_matches('\n'));
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(f) => {
            if cli.json {
                let _ =
                    writeln!(err, "{}", json!({"error": f.message(), "kind": f.kind()}));
            } else {
                let _ = writeln!(err, "error: {}", f.message());
            }
            f.exit_code()
        }
    }
}

/// [`run_with`] on real stdio.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let out = std::io::stdout();
    let err = std::io::stderr();
    run_with(argv, &mut out.lock(), &mut err.lock())
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Poset(a) => poset_cmd(a),
        Command::Count(c) => count_cmd(c),
        Command::Coeff(a) => coeff_cmd(a),
        Command::Doppel(c) => doppel_cmd(c, cli.seed),
        Command::Heap(a) => heap_cmd(a),
        Command::Export(a) => export_cmd(a),
    }
}

fn parse_parts(s: &str) -> Result<Vec<usize>, Failure> {
    let t = s.trim();
    if t.is_empty() || t == "0" {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Usage(format!("bad row length {p:?} in {s:?}")))
        })
        .collect()
}

fn parse_word(s: &str) -> Result<Vec<usize>, Failure> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Usage(format!("bad letter {p:?} in {s:?}")))
        })
        .collect()
}

fn parts_display(parts: &[usize]) -> String {
    let inner: Vec<String> = parts.iter().map(usize::to_string).collect();
    format!("({})", inner.join(","))
}

/// Exact JSON for a count that may exceed u64: a number when it fits,
/// otherwise a decimal string, never a float.
fn exact(n: u128) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn load_poset(name: &str, dual: bool) -> Result<(Poset, Option<Drawing>), Failure> {
    let (p, drawing) = named_poset(name)?;
    Ok((if dual { p.dual() } else { p }, drawing))
}

fn poset_cmd(a: &PosetArgs) -> Result<Outcome, Failure> {
    if let Some(triple) = &a.triple {
        return triple_summary(triple);
    }
    let name = a.name.as_deref().expect("clap requires one of name/triple");
    // Root posets carry no drawing or word; minuscule families carry both.
    if name.parse::<RootPosetKind>().is_ok() {
        let (p, _) = load_poset(name, a.dual)?;
        return Ok(describe_poset(name, &p, None, None, a.dual));
    }
    let family: MinusculeFamily = name.parse()?;
    let data = minuscule_poset(&family)?;
    let p = if a.dual { data.poset.dual() } else { data.poset.clone() };
    Ok(describe_poset(
        name,
        &p,
        data.drawing.as_ref(),
        Some((data.word_system, &data.word)),
        a.dual,
    ))
}

fn describe_poset(
    name: &str,
    p: &Poset,
    drawing: Option<&Drawing>,
    word: Option<(TypeTag, &[usize])>,
    dual: bool,
) -> Outcome {
    let ranks = p.rank_function().ok();
    let mut lines = vec![
        format!("poset: {name}{}", if dual { " (dual)" } else { "" }),
        format!("elements: {}", p.len()),
        format!("covers: {}", p.covers().len()),
    ];
    let mut obj = serde_json::Map::new();
    obj.insert("name".into(), json!(name));
    obj.insert("dual".into(), json!(dual));
    obj.insert("elements".into(), json!(p.len()));
    obj.insert("covers".into(), json!(p.covers()));
    if let Some(r) = &ranks {
        let sizes = r.rank_sizes();
        let shown: Vec<String> = sizes.iter().map(usize::to_string).collect();
        lines.push(format!("height: {}", r.height));
        lines.push(format!("rank sizes: {}", shown.join(" ")));
        obj.insert("height".into(), json!(r.height));
        obj.insert("rank_sizes".into(), json!(sizes));
    }
    if let Some((tag, w)) = word {
        let shown: Vec<String> = w.iter().map(usize::to_string).collect();
        lines.push(format!("word system: {tag}"));
        lines.push(format!("word: {}", shown.join(" ")));
        obj.insert("word_system".into(), json!(tag.to_string()));
        obj.insert("word".into(), json!(w));
    }
    if let Some(d) = drawing {
        obj.insert("coords".into(), json!(d.coords));
    }
    Outcome::new(lines.join("\n"), Value::Object(obj))
}

fn shape_summary(data: &MinusculeData, ideal: &OrderIdeal) -> (String, Value) {
    match ideal_partition(data, ideal) {
        Ok(parts) => (
            format!("{} cells {}", ideal.len(), parts_display(&parts)),
            json!({"cells": ideal.len(), "partition": parts}),
        ),
        Err(_) => (format!("{} cells", ideal.len()), json!({"cells": ideal.len()})),
    }
}

fn triple_summary(name: &str) -> Result<Outcome, Failure> {
    let family: TripleFamily = name.parse()?;
    let t = build_triple(&family)?;
    let hx = t.x.poset.rank_function()?.height;
    let hy = t.y.rank_function()?.height;
    let (u_h, u_j) = shape_summary(&t.ambient, &t.u);
    let (v_h, v_j) = shape_summary(&t.ambient, &t.v);
    let (w_h, w_j) = shape_summary(&t.ambient, &t.w);
    let lines = vec![
        format!("triple: {family}"),
        format!("x: {} - {} elements, height {hx}", t.x.family, t.x.poset.len()),
        format!("y: dual of {} - {} elements, height {hy}", t.y_kind, t.y.len()),
        format!("ambient: {} - {} elements", t.ambient.family, t.ambient.poset.len()),
        format!("u: {u_h}"),
        format!("v: {v_h}"),
        format!("w: {w_h}"),
    ];
    let value = json!({
        "triple": family.to_string(),
        "x": {"name": t.x.family.to_string(), "elements": t.x.poset.len(), "height": hx},
        "y": {"name": t.y_kind.to_string(), "dual": true, "elements": t.y.len(), "height": hy},
        "ambient": {"name": t.ambient.family.to_string(), "elements": t.ambient.poset.len()},
        "u": u_j,
        "v": v_j,
        "w": w_j,
    });
    Ok(Outcome::new(lines.join("\n"), value))
}

fn count_cmd(cmd: &CountCmd) -> Result<Outcome, Failure> {
    match cmd {
        CountCmd::Pp { target, ell } => {
            let (p, _) = load_poset(&target.poset, target.dual)?;
            let count = p.count_pp(*ell)?;
            Ok(Outcome::new(count.to_string(), json!({"count": count})))
        }
        CountCmd::Ideals { target } => {
            let (p, _) = load_poset(&target.poset, target.dual)?;
            let count = p.count_ideals(ideal_cap())?;
            Ok(Outcome::new(count.to_string(), json!({"count": count})))
        }
        CountCmd::Extensions { target } => {
            let (p, _) = load_poset(&target.poset, target.dual)?;
            let count = p.count_linear_extensions(ideal_cap())?;
            Ok(Outcome::new(count.to_string(), json!({"count": exact(count)})))
        }
        CountCmd::Polynomial { target, ell } => {
            let (p, _) = load_poset(&target.poset, target.dual)?;
            let ells: Vec<u32> = (0..=*ell).collect();
            let values = p.order_polynomial_values(&ells)?;
            let shown: Vec<String> = values.iter().map(u64::to_string).collect();
            Ok(Outcome::new(shown.join(" "), json!({"values": values})))
        }
    }
}

fn coeff_cmd(a: &CoeffArgs) -> Result<Outcome, Failure> {
    if a.ambient.parse::<RootPosetKind>().is_ok() {
        return Err(Failure::Usage(format!(
            "products live on a minuscule ambient, not the root order {}",
            a.ambient
        )));
    }
    let family: MinusculeFamily = a.ambient.parse()?;
    let data = minuscule_poset(&family)?;
    let w = partition_ideal(&data, &parse_parts(&a.w)?)?;
    let u = partition_ideal(&data, &parse_parts(&a.u)?)?;
    if let Some(vs) = &a.v {
        let v = partition_ideal(&data, &parse_parts(vs)?)?;
        let coeff: i64 = if a.cohomology {
            i64::try_from(coh_coefficient(&data.poset, &w, &u, &v)?)
                .map_err(|_| Failure::Runtime("coefficient exceeds i64".into()))?
        } else {
            k_coefficient(&data.poset, &w, &u, &v)?
        };
        return Ok(Outcome::new(coeff.to_string(), json!({"coeff": coeff})));
    }
    let expansion: KExpansion = if a.cohomology {
        coh_product_expansion(&data.poset, &w, &u)?
    } else {
        k_product_expansion(&data.poset, &w, &u)?
    };
    let mut lines = Vec::new();
    let mut terms = Vec::new();
    for (ideal, coeff) in expansion.terms() {
        let parts = ideal_partition(&data, ideal)?;
        lines.push(format!("{coeff:+}  {}", parts_display(&parts)));
        terms.push(json!({"shape": parts, "coeff": coeff}));
    }
    if lines.is_empty() {
        lines.push("(empty expansion)".into());
    }
    Ok(Outcome::new(lines.join("\n"), json!({"terms": terms})))
}

fn read_pp(path: &Path) -> Result<PlanePartition, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))?
    };
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("parsing the plane partition: {e}")))
}

/// Tags a serialized report with the triple and height it came from.
fn tag_report(mut value: Value, family: &TripleFamily, ell: u32) -> Value {
    if let Value::Object(obj) = &mut value {
        obj.insert("triple".into(), json!(family.to_string()));
        obj.insert("ell".into(), json!(ell));
    }
    value
}

fn doppel_cmd(cmd: &DoppelCmd, seed: Option<u64>) -> Result<Outcome, Failure> {
    let target = match cmd {
        DoppelCmd::Verify { target }
        | DoppelCmd::Map { target, .. }
        | DoppelCmd::Invmap { target, .. }
        | DoppelCmd::Check { target, .. } => target,
    };
    let family: TripleFamily = target.triple.parse()?;
    let ctx = BijectionContext::new(&family, target.ell)?;
    match cmd {
        DoppelCmd::Verify { .. } => {
            let report = ctx.verify()?;
            let ok = report.pass;
            let value = tag_report(
                serde_json::to_value(&report).expect("report serializes"),
                &family,
                target.ell,
            );
            let human = serde_json::to_string_pretty(&value).expect("report serializes");
            Ok(Outcome { human, json: value, ok })
        }
        DoppelCmd::Map { input, .. } | DoppelCmd::Invmap { input, .. } => {
            let pp = read_pp(input)?;
            if pp.ell != target.ell {
                return Err(Failure::Usage(format!(
                    "input has height {} but --ell is {}",
                    pp.ell, target.ell
                )));
            }
            let image = match cmd {
                DoppelCmd::Map { .. } => ctx.forward(&pp)?,
                _ => ctx.inverse(&pp)?,
            };
            let value = serde_json::to_value(&image).expect("partition serializes");
            let human = serde_json::to_string_pretty(&value).expect("partition serializes");
            Ok(Outcome::new(human, value))
        }
        DoppelCmd::Check { samples, .. } => {
            let mut rng = seeded_rng(seed.unwrap_or(0));
            let report = ctx.spot_check(*samples, &mut rng)?;
            let ok = report.pass;
            let value = tag_report(
                serde_json::to_value(&report).expect("report serializes"),
                &family,
                target.ell,
            );
            let human = serde_json::to_string_pretty(&value).expect("report serializes");
            Ok(Outcome { human, json: value, ok })
        }
    }
}

fn heap_cmd(a: &HeapArgs) -> Result<Outcome, Failure> {
    let tag: TypeTag = a.kind.parse()?;
    let word = parse_word(&a.word)?;
    let sys = CoxeterSystem::new(tag)?;
    let heap = sys.heap_from_word(&word)?;
    let element_length = sys.length_of_word(&word)?;
    let reduced = element_length == word.len();
    let fully_commutative =
        if reduced { Some(sys.is_fully_commutative_word(&word)?) } else { None };
    let extensions = heap.poset.count_linear_extensions(ideal_cap())?;
    let reduced_words = if a.count_reduced { Some(sys.red_word_count(&word)?) } else { None };

    let word_shown: Vec<String> = word.iter().map(usize::to_string).collect();
    let covers_shown: Vec<String> =
        heap.poset.covers().iter().map(|(x, y)| format!("({x},{y})")).collect();
    let mut lines = vec![
        format!("type: {tag}"),
        format!("word: {}", word_shown.join(" ")),
        format!("letters: {}", word.len()),
        format!("element length: {element_length}"),
        format!("reduced: {}", if reduced { "yes" } else { "no" }),
    ];
    if let Some(fc) = fully_commutative {
        lines.push(format!("fully commutative: {}", if fc { "yes" } else { "no" }));
    }
    lines.push(format!(
        "heap covers: {}",
        if covers_shown.is_empty() { "none".into() } else { covers_shown.join(" ") }
    ));
    lines.push(format!("linear extensions: {extensions}"));
    if let Some(count) = reduced_words {
        lines.push(format!("reduced words: {count}"));
    }

    let mut obj = serde_json::Map::new();
    obj.insert("type".into(), json!(tag.to_string()));
    obj.insert("word".into(), json!(word));
    obj.insert("letters".into(), json!(word.len()));
    obj.insert("element_length".into(), json!(element_length));
    obj.insert("reduced".into(), json!(reduced));
    if let Some(fc) = fully_commutative {
        obj.insert("fully_commutative".into(), json!(fc));
    }
    obj.insert("labels".into(), json!(heap.labels));
    obj.insert("covers".into(), json!(heap.poset.covers()));
    obj.insert("extensions".into(), exact(extensions));
    if let Some(count) = reduced_words {
        obj.insert("reduced_words".into(), exact(count));
    }
    Ok(Outcome::new(lines.join("\n"), Value::Object(obj)))
}

/// Node highlight classes for [`export_dot`]: `gray` elements are filled,
/// `bold` elements get a thick border.
pub struct Highlights {
    pub gray: Vec<usize>,
    pub bold: Vec<usize>,
}

/// Renders the Hasse diagram as a DOT digraph. Every edge points from the
/// covered element to the element covering it, and `rankdir = BT` keeps
/// covers drawn upward. Labels come from the drawing when one is given and
/// matches the poset, otherwise from element ids.
pub fn export_dot(p: &Poset, drawing: Option<&Drawing>, highlights: Option<&Highlights>) -> String {
    let coords = drawing.filter(|d| d.coords.len() == p.len());
    let gray: HashSet<usize> =
        highlights.map(|h| h.gray.iter().copied().collect()).unwrap_or_default();
    let bold: HashSet<usize> =
        highlights.map(|h| h.bold.iter().copied().collect()).unwrap_or_default();
    let mut s = String::from("digraph poset {\n");
    if p.len() > 0 {
        s.push_str("  rankdir = BT;\n");
        s.push_str("  node [shape = circle, fontsize = 10];\n");
    }
    for x in 0..p.len() {
        let label = match coords {
            Some(d) => format!("({},{})", d.coords[x].0, d.coords[x].1),
            None => x.to_string(),
        };
        let mut attrs = vec![format!("label = \"{label}\"")];
        if gray.contains(&x) {
            attrs.push("style = filled".into());
            attrs.push("fillcolor = gray80".into());
        }
        if bold.contains(&x) {
            attrs.push("penwidth = 3".into());
        }
        s.push_str(&format!("  {x} [{}];\n", attrs.join(", ")));
    }
    for &(a, b) in p.covers() {
        s.push_str(&format!("  {a} -> {b};\n"));
    }
    s.push('}');
    s.push('\n');
    s
}

fn export_cmd(a: &ExportArgs) -> Result<Outcome, Failure> {
    let (poset, drawing, highlights) = if let Some(triple) = &a.triple {
        let family: TripleFamily = triple.parse()?;
        let t = build_triple(&family)?;
        let highlights = Highlights { gray: t.chi.clone(), bold: t.theta.clone() };
        (t.ambient.poset, t.ambient.drawing, Some(highlights))
    } else {
        let name = a.name.as_deref().expect("clap requires one of name/triple");
        let (p, d) = load_poset(name, a.dual)?;
        (p, d, None)
    };
    let dot = export_dot(&poset, drawing.as_ref(), highlights.as_ref());
    match &a.out {
        Some(path) => {
            fs::write(path, &dot)
                .map_err(|e| Failure::Runtime(format!("writing {}: {e}", path.display())))?;
            let shown = path.display().to_string();
            Ok(Outcome::new(format!("wrote {shown}"), json!({"written": shown})))
        }
        None => Ok(Outcome::new(dot.clone(), json!({"dot": dot}))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("kjdt").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn diamond_exports_as_four_nodes_and_four_edges() {
        let p = Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let dot = export_dot(&p, None, None);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert_eq!(dot.matches("label = ").count(), 4);
        assert!(dot.starts_with("digraph poset {"));
        assert!(dot.ends_with("}\n"));
    }

    #[test]
    fn empty_poset_exports_as_an_empty_digraph() {
        let dot = export_dot(&Poset::antichain(0), None, None);
        assert_eq!(dot, "digraph poset {\n}\n");
    }

    #[test]
    fn highlights_mark_fill_and_border_classes() {
        let p = Poset::chain(3);
        let hl = Highlights { gray: vec![0, 1], bold: vec![1, 2] };
        let dot = export_dot(&p, None, Some(&hl));
        assert_eq!(dot.matches("fillcolor = gray80").count(), 2);
        assert_eq!(dot.matches("penwidth = 3").count(), 2);
        let node1 = dot.lines().find(|l| l.trim_start().starts_with("1 [")).unwrap();
        assert!(node1.contains("filled") && node1.contains("penwidth"));
    }

    #[test]
    fn drawing_labels_are_used_when_sizes_match() {
        let (p, drawing) = named_poset("gr:2,4").unwrap();
        let dot = export_dot(&p, drawing.as_ref(), None);
        assert!(dot.contains("label = \"(1,1)\""));
    }

    #[test]
    fn order_polynomial_of_the_diamond_pair() {
        let (code, out, _) =
            run_capture(&["count", "polynomial", "--poset", "gr:2,4", "--ell", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1 6 20 50 105\n");
        let (code, out, _) =
            run_capture(&["count", "polynomial", "--poset", "rootB:2,4", "--ell", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1 6 20 50 105\n");
    }

    #[test]
    fn unknown_names_are_usage_errors() {
        let (code, out, err) = run_capture(&["count", "pp", "--poset", "gr:9", "--ell", "1"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("gr:9"));
    }

    #[test]
    fn json_errors_are_machine_readable() {
        let (code, _, err) =
            run_capture(&["--json", "count", "pp", "--poset", "nope", "--ell", "1"]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(&err).unwrap();
        assert_eq!(v["kind"], "usage");
        assert!(v["error"].as_str().unwrap().contains("nope"));
    }

    #[test]
    fn parse_failures_render_as_json_when_asked() {
        let (code, _, err) = run_capture(&["--json", "count", "pp", "--poset", "gr:2,4"]);
        assert_eq!(code, 2, "missing --ell is a usage error");
        let v: Value = serde_json::from_str(&err).unwrap();
        assert_eq!(v["kind"], "usage");
    }

    #[test]
    fn emitted_json_round_trips() {
        for args in [
            &["--json", "count", "pp", "--poset", "gr:2,4", "--ell", "2"][..],
            &["--json", "poset", "--name", "gr:2,4"][..],
            &["--json", "poset", "--triple", "B:2,4"][..],
            &["--json", "coeff", "--ambient", "gr:3,6", "--w", "2,1", "--u", "1,1"][..],
            &["--json", "heap", "--type", "A3", "--word", "2,1,3,2"][..],
            &["--json", "doppel", "verify", "--triple", "B:2,4", "--ell", "1"][..],
            &["--json", "export", "--name", "gr:2,4"][..],
        ] {
            let (code, out, err) = run_capture(args);
            assert_eq!(code, 0, "{args:?} failed: {err}");
            let parsed: Value = serde_json::from_str(&out).unwrap();
            let reparsed: Value = serde_json::from_str(&parsed.to_string()).unwrap();
            assert_eq!(parsed, reparsed, "{args:?}");
        }
    }

    #[test]
    fn seeds_replay_identical_output() {
        let args = &[
            "--json", "--seed", "9", "doppel", "check", "--triple", "B:3,6", "--ell", "2",
            "--samples", "25",
        ];
        let (code_a, out_a, _) = run_capture(args);
        let (code_b, out_b, _) = run_capture(args);
        assert_eq!(code_a, 0);
        assert_eq!(code_b, 0);
        assert_eq!(out_a, out_b);
        let v: Value = serde_json::from_str(&out_a).unwrap();
        assert_eq!(v["pass"], true);
        assert_eq!(v["samples"], 25);
    }
}
