//! Command-line front end. Exit codes: 0 success, 1 domain error,
//! 2 parse or usage error.

use std::fs;

use clap::{Parser, Subcommand};

use crate::dr::{dr_mul, dr_to_graph};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::inorm::i_norm_with_precision;
use crate::lpa::{phi, reduce_lpa};
use crate::point::{AperiodicPoint, Point};
use crate::rep::{check_axioms, extend_pi, AxiomReport, VerifiedAssignment};
use crate::text::{
    parse_certificate, parse_dr_basic, parse_element, parse_graph, parse_groupoid_element, parse_lpa, parse_rep,
    parse_seed_cycles, parse_sft, SeedCycles,
};
use crate::uniqueness::{ck_certificate, condition_l, graded_certificate, verify_certificate, CkOutcome};

#[derive(Parser, Debug)]
#[command(name = "steinberg", version, about = "Exact computation in Steinberg algebras of graph groupoids")]
pub struct Cli {
    /// Graph file (`v name`, `e name range source` lines)
    #[arg(short = 'g', long = "graph", global = true)]
    pub graph: Option<String>,
    /// Depth for axiom checks and certificate searches
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Two first-return cycles at one vertex, e.g. `a,b`
    #[arg(long = "seed-cycles", global = true)]
    pub seed_cycles: Option<String>,
    /// Bits of precision for I-norm enclosures
    #[arg(long, global = true, default_value_t = crate::inorm::DEFAULT_PRECISION)]
    pub precision: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Product of two elements
    Mul { f: String, g: String },
    /// Involution
    Star { f: String },
    /// Canonical normal form
    Nf { f: String },
    /// Value at a groupoid element `x n y`
    Eval { f: String, element: String },
    /// I-norm, exact or as an enclosure `[lo,hi]`
    Inorm { f: String },
    /// Homogeneous component of a degree
    Component {
        f: String,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Reduce a Leavitt path algebra expression
    LpaReduce { expr: String },
    /// Image of a Leavitt path algebra expression
    Phi { expr: String },
    /// Check the representation axioms of a generator assignment
    CheckRep { rep: String },
    /// Matrix of an element under a checked assignment
    Pi { rep: String, f: String },
    /// Graded uniqueness certificate
    CertGraded { f: String },
    /// Cuntz-Krieger certificate along the seed point
    CertCk { f: String },
    /// Verify a certificate file against an element
    Verify { cert: String, f: String },
    /// Product of two basics of a shift of finite type
    DrMul { sft: String, a: String, b: String },
    /// Translate a shift basic to graph cylinders
    DrTranslate { sft: String, a: String },
    /// Whether every cycle has an entrance
    CondL,
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn load_graph(cli: &Cli) -> Result<Graph> {
    let path = cli.graph.as_deref().ok_or_else(|| Error::Io("this command needs a graph file (-g)".into()))?;
    parse_graph(&read(path)?)
}

fn seed(cli: &Cli, graph: &Graph) -> Result<Option<SeedCycles>> {
    cli.seed_cycles.as_deref().map(|s| parse_seed_cycles(s, graph)).transpose()
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let ok = |s: String| Ok((0, s));
    match &cli.command {
        Command::Mul { f, g } => {
            let graph = load_graph(cli)?;
            let f = parse_element(f, &graph)?;
            let g = parse_element(g, &graph)?;
            ok(f.mul(&graph, &g).render(&graph))
        }
        Command::Star { f } => {
            let graph = load_graph(cli)?;
            ok(parse_element(f, &graph)?.star().render(&graph))
        }
        Command::Nf { f } => {
            let graph = load_graph(cli)?;
            ok(parse_element(f, &graph)?.render(&graph))
        }
        Command::Eval { f, element } => {
            let graph = load_graph(cli)?;
            let seeds = seed(cli, &graph)?;
            let f = parse_element(f, &graph)?;
            let x = parse_groupoid_element(element, &graph, seeds.as_ref())?;
            ok(f.eval(&x).to_string())
        }
        Command::Inorm { f } => {
            let graph = load_graph(cli)?;
            ok(i_norm_with_precision(&parse_element(f, &graph)?, cli.precision).to_string())
        }
        Command::Component { f, n } => {
            let graph = load_graph(cli)?;
            ok(parse_element(f, &graph)?.homogeneous_component(*n).render(&graph))
        }
        Command::LpaReduce { expr } => {
            let graph = load_graph(cli)?;
            ok(reduce_lpa(&graph, &parse_lpa(expr, &graph)?).render(&graph))
        }
        Command::Phi { expr } => {
            let graph = load_graph(cli)?;
            ok(phi(&graph, &parse_lpa(expr, &graph)?).render(&graph))
        }
        Command::CheckRep { rep } => {
            let graph = load_graph(cli)?;
            let a = parse_rep(&read(rep)?, &graph)?;
            match check_axioms(&graph, &a, cli.depth.unwrap_or(4))? {
                AxiomReport::Verified { depth } => ok(format!("verified to depth {depth}")),
                AxiomReport::Violation { axiom, detail } => Ok((1, format!("violation {axiom:?}: {detail}"))),
            }
        }
        Command::Pi { rep, f } => {
            let graph = load_graph(cli)?;
            let a = parse_rep(&read(rep)?, &graph)?;
            let f = parse_element(f, &graph)?;
            let depth = cli.depth.unwrap_or(4);
            match VerifiedAssignment::verify(&graph, a, depth)? {
                Ok(v) => ok(extend_pi(&graph, &v, &f)?.to_string()),
                Err(AxiomReport::Violation { axiom, detail }) => Ok((1, format!("violation {axiom:?}: {detail}"))),
                Err(AxiomReport::Verified { .. }) => unreachable!("verified reports are accepted"),
            }
        }
        Command::CertGraded { f } => {
            let graph = load_graph(cli)?;
            let f = parse_element(f, &graph)?;
            let cert = graded_certificate(&graph, &f)?;
            ok(cert.render(&graph).trim_end().to_string())
        }
        Command::CertCk { f } => {
            let graph = load_graph(cli)?;
            let f = parse_element(f, &graph)?;
            let (c1, c2) =
                seed(cli, &graph)?.ok_or_else(|| Error::Io("cert-ck needs --seed-cycles c1,c2".into()))?;
            let seed = Point::from(AperiodicPoint::fibonacci(c1, c2)?);
            let depth = cli.depth.unwrap_or(8);
            match ck_certificate(&graph, &f, &seed, depth)? {
                CkOutcome::Found(cert) => ok(format!("{}# depth {}", cert.render(&graph), cert.depth)),
                CkOutcome::Exhausted(d) => Err(Error::Exhausted(d)),
            }
        }
        Command::Verify { cert, f } => {
            let graph = load_graph(cli)?;
            let cert = parse_certificate(&read(cert)?, &graph)?;
            let f = parse_element(f, &graph)?;
            if verify_certificate(&graph, &cert, &f) {
                ok("valid".into())
            } else {
                Ok((1, "invalid".into()))
            }
        }
        Command::DrMul { sft, a, b } => {
            let sft = parse_sft(&read(sft)?)?;
            let a = parse_dr_basic(a, &sft)?;
            let b = parse_dr_basic(b, &sft)?;
            let prod = dr_mul(&sft, &a, &b);
            if prod.is_empty() {
                return ok("empty".into());
            }
            ok(prod.iter().map(|d| d.render(&sft)).collect::<Vec<_>>().join("\n"))
        }
        Command::DrTranslate { sft, a } => {
            let graph = load_graph(cli)?;
            let sft = parse_sft(&read(sft)?)?;
            let a = parse_dr_basic(a, &sft)?;
            ok(dr_to_graph(&graph, &sft, &a)?.render(&graph))
        }
        Command::CondL => {
            let graph = load_graph(cli)?;
            ok(condition_l(&graph).to_string())
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, mut stdout)) => {
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = if e.is_parse_error() { 2 } else { 1 };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

