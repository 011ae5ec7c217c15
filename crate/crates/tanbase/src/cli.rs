//! The `tanbase` command line.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Value};
use tanbase_core::graph::{canonical_form, enumerate_max_degenerate, find_isomorphisms, GraphMorphism};
use tanbase_core::kummer::{KummerData, Relation};
use tanbase_core::puiseux::{parse_series, PuiseuxSeries, Valuation};
use tanbase_core::ribbon::{enumerate_ribbons, rep_matrix, tangential_base_point};
use tanbase_core::scalars::principal_nth_root;
use tanbase_core::{Error, Field, RibbonStructure, StableGraph};

use crate::codec;

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "tanbase", version, about = "Stable graphs, ribbon structures, Puiseux series and Kummer splittings")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Maximally degenerate stable graphs
    Graphs {
        #[command(subcommand)]
        command: GraphsCommand,
    },
    /// Operations on one graph document
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
    /// Ribbon structures on a trivalent graph
    Ribbon {
        #[command(subcommand)]
        command: RibbonCommand,
    },
    /// Signed edge matrices of every automorphism
    Rep(RibbonArgs),
    /// Coordinates of the tangential base point of a ribbon structure
    Tangent(RibbonArgs),
    /// Truncated Puiseux series
    Puiseux {
        #[command(subcommand)]
        command: PuiseuxCommand,
    },
    /// Tame Kummer coverings
    Kummer {
        #[command(subcommand)]
        command: KummerCommand,
    },
}

#[derive(Debug, Subcommand)]
enum GraphsCommand {
    /// One graph per isomorphism class
    Enum {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        legs: u32,
        /// Write one document per graph into this directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum GraphCommand {
    /// The automorphism group
    Aut { graph: PathBuf },
    /// Canonical relabeling
    Canon { graph: PathBuf },
}

#[derive(Debug, Subcommand)]
enum RibbonCommand {
    Enum { graph: PathBuf },
}

#[derive(Debug, Args)]
struct RibbonArgs {
    graph: PathBuf,
    /// A ribbon document, or an index into `ribbon enum`
    #[arg(long)]
    ribbon: String,
}

#[derive(Debug, Args)]
struct SeriesArgs {
    /// 0 for the rationals, a prime p for F_p
    #[arg(long = "char")]
    characteristic: u64,
    /// Truncation order, an integer or p/q
    #[arg(long)]
    order: String,
    #[arg(long)]
    series: String,
    /// Number of variables; defaults to the largest index in the input
    #[arg(long)]
    vars: Option<usize>,
    /// Root denominator of the exponents
    #[arg(long, default_value_t = 1)]
    denom: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesOp {
    Normalize,
    Add,
    Sub,
    Mul,
    Inv,
    Valuation,
}

#[derive(Debug, Subcommand)]
enum PuiseuxCommand {
    /// An n-th root by Newton iteration
    Root {
        #[arg(short = 'n')]
        n: u64,
        #[command(flatten)]
        series: SeriesArgs,
        /// n-th root of the leading coefficient; defaults to the principal one
        #[arg(long)]
        root_choice: Option<String>,
    },
    /// Ring operations
    Eval {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, value_enum, default_value = "normalize")]
        op: SeriesOp,
        /// Second operand of add, sub and mul
        #[arg(long)]
        other: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum KummerCommand {
    /// Every homomorphism into the Puiseux ring
    Split {
        #[arg(long = "char")]
        characteristic: u64,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        order: String,
        /// A relation `radicand:n`
        #[arg(long = "rel", required = true)]
        relations: Vec<String>,
        /// Unit multiplied into every radicand
        #[arg(long)]
        unit_cofactor: Option<String>,
    },
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(mut stdout) => {
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure::Domain(e)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("ERROR {}: {}\n", e.kind(), e),
        },
        Err(Failure::Io(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = std::result::Result<String, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> std::result::Result<StableGraph, Failure> {
    Ok(codec::graph_from_json(&read(path)?)?)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn dispatch(cli: &Cli) -> Out {
    let fmt = cli.format;
    match &cli.command {
        Command::Graphs {
            command: GraphsCommand::Enum { genus, legs, out },
        } => graphs_enum(fmt, *genus, *legs, out.as_deref()),
        Command::Graph {
            command: GraphCommand::Aut { graph },
        } => graph_aut(fmt, &load_graph(graph)?),
        Command::Graph {
            command: GraphCommand::Canon { graph },
        } => graph_canon(fmt, &load_graph(graph)?),
        Command::Ribbon {
            command: RibbonCommand::Enum { graph },
        } => ribbon_enum(fmt, &load_graph(graph)?),
        Command::Rep(args) => {
            let g = load_graph(&args.graph)?;
            let r = load_ribbon(&g, &args.ribbon)?;
            rep(fmt, &g, &r)
        }
        Command::Tangent(args) => {
            let g = load_graph(&args.graph)?;
            let r = load_ribbon(&g, &args.ribbon)?;
            tangent(fmt, &g, &r)
        }
        Command::Puiseux {
            command: PuiseuxCommand::Root { n, series, root_choice },
        } => puiseux_root(fmt, *n, series, root_choice.as_deref()),
        Command::Puiseux {
            command: PuiseuxCommand::Eval { series, op, other },
        } => puiseux_eval(fmt, series, *op, other.as_deref()),
        Command::Kummer {
            command:
                KummerCommand::Split {
                    characteristic,
                    vars,
                    order,
                    relations,
                    unit_cofactor,
                },
        } => kummer_split(fmt, *characteristic, *vars, order, relations, unit_cofactor.as_deref()),
    }
}

fn graphs_enum(fmt: Format, genus: u32, legs: u32, out: Option<&Path>) -> Out {
    let graphs = enumerate_max_degenerate(genus, legs)?;
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
        for (i, g) in graphs.iter().enumerate() {
            let path = dir.join(format!("g{genus}_n{legs}_{}.json", i + 1));
            fs::write(&path, codec::graph_to_json_pretty(g) + "\n")
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(match fmt {
        Format::Text => graphs.iter().map(|g| codec::graph_to_json(g) + "\n").collect(),
        Format::Json => pretty(&Value::Array(graphs.iter().map(codec::graph_to_value).collect())),
    })
}

fn sorted_automorphisms(g: &StableGraph) -> Vec<GraphMorphism> {
    let mut auts = find_isomorphisms(g, g);
    auts.sort();
    auts
}

fn morphism_value(g: &StableGraph, a: &GraphMorphism) -> Value {
    let he: serde_json::Map<_, _> = (0..g.half_edge_count())
        .map(|h| (g.half_edge_name(h).to_owned(), json!(g.half_edge_name(a.f1[h]))))
        .collect();
    let vx: serde_json::Map<_, _> = (0..g.vertex_count())
        .map(|v| (g.vertex_name(v).to_owned(), json!(g.vertex_name(a.f0[v]))))
        .collect();
    json!({ "half_edges": he, "vertices": vx })
}

fn morphism_text(g: &StableGraph, h: &StableGraph, a: &GraphMorphism) -> String {
    let he: Vec<String> = (0..g.half_edge_count())
        .map(|x| format!("{}->{}", g.half_edge_name(x), h.half_edge_name(a.f1[x])))
        .collect();
    let vx: Vec<String> = (0..g.vertex_count())
        .map(|v| format!("{}->{}", g.vertex_name(v), h.vertex_name(a.f0[v])))
        .collect();
    format!("half-edges {} | vertices {}", he.join(" "), vx.join(" "))
}

fn graph_aut(fmt: Format, g: &StableGraph) -> Out {
    let auts = sorted_automorphisms(g);
    Ok(match fmt {
        Format::Text => {
            let mut s = format!("order {}\n", auts.len());
            for a in &auts {
                writeln!(s, "{}", morphism_text(g, g, a)).unwrap();
            }
            s
        }
        Format::Json => pretty(&json!({
            "order": auts.len(),
            "automorphisms": auts.iter().map(|a| morphism_value(g, a)).collect::<Vec<_>>(),
        })),
    })
}

fn graph_canon(fmt: Format, g: &StableGraph) -> Out {
    let (c, relabel) = canonical_form(g);
    Ok(match fmt {
        Format::Text => format!("{}\n{}\n", codec::graph_to_json(&c), morphism_text(g, &c, &relabel)),
        Format::Json => {
            let he: serde_json::Map<_, _> = (0..g.half_edge_count())
                .map(|h| (g.half_edge_name(h).to_owned(), json!(c.half_edge_name(relabel.f1[h]))))
                .collect();
            let vx: serde_json::Map<_, _> = (0..g.vertex_count())
                .map(|v| (g.vertex_name(v).to_owned(), json!(c.vertex_name(relabel.f0[v]))))
                .collect();
            pretty(&json!({
                "graph": codec::graph_to_value(&c),
                "relabeling": { "half_edges": he, "vertices": vx },
            }))
        }
    })
}

fn ribbon_enum(fmt: Format, g: &StableGraph) -> Out {
    let ribbons = enumerate_ribbons(g)?;
    Ok(match fmt {
        Format::Text => ribbons
            .iter()
            .enumerate()
            .map(|(i, r)| format!("{i} {}\n", codec::ribbon_to_json(g, r)))
            .collect(),
        Format::Json => pretty(&Value::Array(ribbons.iter().map(|r| codec::ribbon_to_value(g, r)).collect())),
    })
}

fn load_ribbon(g: &StableGraph, source: &str) -> std::result::Result<RibbonStructure, Failure> {
    if let Ok(i) = source.parse::<usize>() {
        let ribbons = enumerate_ribbons(g)?;
        let count = ribbons.len();
        return ribbons.into_iter().nth(i).ok_or_else(|| {
            Failure::Domain(Error::RibbonMismatch(format!("index {i} out of range 0..{count}")))
        });
    }
    Ok(codec::ribbon_from_json(g, &read(Path::new(source))?)?)
}

fn edge_name(g: &StableGraph, (h, k): (usize, usize)) -> String {
    format!("{{{},{}}}", g.half_edge_name(h), g.half_edge_name(k))
}

fn rep(fmt: Format, g: &StableGraph, r: &RibbonStructure) -> Out {
    let auts = sorted_automorphisms(g);
    let edges: Vec<String> = g.edges().into_iter().map(|e| edge_name(g, e)).collect();
    Ok(match fmt {
        Format::Text => {
            let mut s = format!("edges {}\n", edges.join(" "));
            for a in &auts {
                writeln!(s, "\n{}", morphism_text(g, g, a)).unwrap();
                for row in &rep_matrix(g, a, r).entries {
                    let row: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
                    writeln!(s, "{}", row.join(" ")).unwrap();
                }
            }
            s
        }
        Format::Json => pretty(&json!({
            "edges": edges,
            "matrices": auts
                .iter()
                .map(|a| json!({
                    "automorphism": morphism_value(g, a),
                    "rows": rep_matrix(g, a, r).entries,
                }))
                .collect::<Vec<_>>(),
        })),
    })
}

fn tangent(fmt: Format, g: &StableGraph, r: &RibbonStructure) -> Out {
    let t = tangential_base_point(g, r)?;
    let name = |h: usize| g.half_edge_name(h);
    Ok(match fmt {
        Format::Text => {
            let mut s = String::new();
            for c in &t.coordinates {
                writeln!(
                    s,
                    "eps{} = u*v on edge {}, u in chart {}, v in chart {}",
                    c.index + 1,
                    edge_name(g, c.edge),
                    name(c.u),
                    name(c.v)
                )
                .unwrap();
            }
            for c in &t.charts {
                writeln!(
                    s,
                    "chart {}: {} -> 0, {} -> +1, {} -> -1",
                    name(c.half_edge),
                    name(c.zero),
                    name(c.plus_one),
                    name(c.minus_one)
                )
                .unwrap();
            }
            for &i in &t.hyperplanes {
                writeln!(s, "hyperplane eps{} = 0", i + 1).unwrap();
            }
            s
        }
        Format::Json => pretty(&json!({
            "coordinates": t.coordinates.iter().map(|c| json!({
                "name": format!("eps{}", c.index + 1),
                "edge": [name(c.edge.0), name(c.edge.1)],
                "u": name(c.u),
                "v": name(c.v),
            })).collect::<Vec<_>>(),
            "charts": t.charts.iter().map(|c| json!({
                "half_edge": name(c.half_edge),
                "0": name(c.zero),
                "+1": name(c.plus_one),
                "-1": name(c.minus_one),
            })).collect::<Vec<_>>(),
            "hyperplanes": t.hyperplanes.iter().map(|i| format!("eps{} = 0", i + 1)).collect::<Vec<_>>(),
        })),
    })
}

fn parse_order(text: &str) -> std::result::Result<Rational64, Failure> {
    let bad = || {
        Failure::Domain(Error::SyntaxError {
            position: 0,
            message: format!("invalid order {text:?}"),
        })
    };
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let (p, q): (i64, i64) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
            if q <= 0 {
                return Err(bad());
            }
            Ok(Rational64::new(p, q))
        }
        None => Ok(Rational64::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// Largest `i` with `t<i>` in the text, at least 1.
fn inferred_vars(texts: &[&str]) -> usize {
    let mut best = 1;
    for text in texts {
        let bytes = text.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            if b == b't' {
                let digits: String = text[i + 1..].chars().take_while(char::is_ascii_digit).collect();
                if let Ok(k) = digits.parse::<usize>() {
                    best = best.max(k);
                }
            }
        }
    }
    best
}

struct SeriesContext {
    field: Field,
    vars: usize,
    denom: u64,
    order: Rational64,
}

impl SeriesContext {
    fn new(args: &SeriesArgs, extra: &[&str]) -> std::result::Result<Self, Failure> {
        let mut texts = vec![args.series.as_str()];
        texts.extend_from_slice(extra);
        Ok(SeriesContext {
            field: Field::from_characteristic(args.characteristic)?,
            vars: args.vars.unwrap_or_else(|| inferred_vars(&texts)),
            denom: args.denom,
            order: parse_order(&args.order)?,
        })
    }

    fn parse(&self, text: &str) -> std::result::Result<PuiseuxSeries, Failure> {
        Ok(parse_series(text, self.vars, self.field, self.denom, self.order)?)
    }
}

fn series_value(s: &PuiseuxSeries) -> Value {
    json!({
        "series": s.to_string(),
        "field": s.field().to_string(),
        "vars": s.nvars(),
        "root_denominator": s.root_denominator(),
        "order": s.order().to_string(),
        "terms": s.terms().map(|(e, c)| json!({
            "exponent": e.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "coefficient": c.to_string(),
        })).collect::<Vec<_>>(),
    })
}

fn series_out(fmt: Format, s: &PuiseuxSeries) -> String {
    match fmt {
        Format::Text => s.to_string(),
        Format::Json => pretty(&series_value(s)),
    }
}

fn puiseux_root(fmt: Format, n: u64, args: &SeriesArgs, root_choice: Option<&str>) -> Out {
    let ctx = SeriesContext::new(args, &[])?;
    let a = ctx.parse(&args.series)?;
    let choice = match root_choice {
        Some(text) => ctx.field.parse_scalar(text)?,
        None => {
            if n == 0 {
                return Err(Error::TameViolation {
                    characteristic: ctx.field.characteristic(),
                    n,
                }
                .into());
            }
            let lead = a.unit_monomial_form()?.coefficient;
            principal_nth_root(&lead, n)?.ok_or_else(|| {
                Error::LeadingCoefficientRootInvalid("none".into(), lead.to_string())
            })?
        }
    };
    Ok(series_out(fmt, &a.nth_root(n, &choice)?))
}

fn puiseux_eval(fmt: Format, args: &SeriesArgs, op: SeriesOp, other: Option<&str>) -> Out {
    let ctx = SeriesContext::new(args, other.as_slice())?;
    let a = ctx.parse(&args.series)?;
    let second = || -> std::result::Result<PuiseuxSeries, Failure> {
        match other {
            Some(text) => ctx.parse(text),
            None => Err(Failure::Io(format!("--op {op:?} needs --other").to_lowercase())),
        }
    };
    let result = match op {
        SeriesOp::Normalize => a,
        SeriesOp::Add => a.add(&second()?)?,
        SeriesOp::Sub => a.sub(&second()?)?,
        SeriesOp::Mul => a.mul(&second()?)?,
        SeriesOp::Inv => a.inv()?,
        SeriesOp::Valuation => {
            let v = match a.valuation() {
                Valuation::Finite(v) => v.to_string(),
                Valuation::Infinite => "inf".to_owned(),
            };
            return Ok(match fmt {
                Format::Text => v,
                Format::Json => pretty(&json!({ "valuation": v })),
            });
        }
    };
    Ok(series_out(fmt, &result))
}

fn kummer_split(
    fmt: Format,
    characteristic: u64,
    vars: usize,
    order: &str,
    relations: &[String],
    unit_cofactor: Option<&str>,
) -> Out {
    let field = Field::from_characteristic(characteristic)?;
    let order = parse_order(order)?;
    let cofactor = unit_cofactor
        .map(|text| parse_series(text, vars, field, 1, order))
        .transpose()?;
    let mut rels = Vec::new();
    for text in relations {
        let (radicand, degree) = text.rsplit_once(':').ok_or_else(|| Error::SyntaxError {
            position: 0,
            message: format!("relation {text:?} is not of the form radicand:n"),
        })?;
        let degree: u64 = degree.trim().parse().map_err(|_| Error::SyntaxError {
            position: radicand.len() + 1,
            message: format!("invalid degree in {text:?}"),
        })?;
        let mut radicand = parse_series(radicand, vars, field, 1, order)?;
        if let Some(c) = &cofactor {
            radicand = radicand.mul(c)?;
        }
        rels.push(Relation::new(radicand, degree));
    }
    let k = KummerData::new(field, vars, order, rels);
    let homs = k.split()?;
    Ok(match fmt {
        Format::Text => homs
            .iter()
            .map(|h| {
                let images: Vec<String> = h.images.iter().map(ToString::to_string).collect();
                images.join(", ") + "\n"
            })
            .collect(),
        Format::Json => pretty(&json!({
            "count": homs.len(),
            "homomorphisms": homs.iter().map(|h| json!({
                "root_indices": h.root_indices,
                "images": h.images.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
    })
}
