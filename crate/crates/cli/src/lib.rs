//! Command-line front end for `ellsurf`.
//!
//! [`run`] parses an argument vector, dispatches to the library and returns
//! the rendered report with an exit code: 0 on success, 2 on malformed
//! input, 3 when the mathematics rejects the request (an excluded fiber
//! type, a failed certification).

mod report;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use ellsurf::exactmath::{parse_rational, Rational};
use ellsurf::invariants::{
    check_numerical_gluing, gluing_smoothing_target, sigma_volume, volume_check_marked_res, wall_positions, Clause,
    GluingReport, GluingSmoothingError, GluingType, IntersectionProfile,
};
use ellsurf::lct::{
    builtin_graph, canonical_degree, log_pullback, parse_graph, smoothing_target, validate_moderate_config,
    BuiltinError, CentralFiber, KawamataFiberType, ResolutionGraph,
};
use ellsurf::quotsing::{chain_discrepancies, hj_expansion, is_t_singularity, normalize, CyclicQuotient};
use ellsurf::stability::{git_classify, stratum, survey_types, validate_configuration, StabilityError};
use ellsurf::weierstrass::{euler_sum, parse_fiber_list, parse_model, WeierstrassModel};

pub use report::{emit_human, emit_machine, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_REJECTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ellsurf", version, about = "Exact computations on elliptic surfaces and their degenerations")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kodaira types of the singular fibers of a Weierstrass model.
    Classify {
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
    },
    /// GIT stability of a model or of a fiber configuration.
    Stability {
        #[arg(long, value_name = "FILE", conflicts_with = "fibers", required_unless_present = "fibers")]
        model: Option<PathBuf>,
        /// Comma-separated Kodaira symbols, e.g. "I5,I5,I1,I1".
        #[arg(long, value_name = "LIST")]
        fibers: Option<String>,
    },
    /// Hirzebruch-Jung chain and discrepancies of 1/N(1,Q).
    Hj {
        /// `N Q`, or a single `1/N(A,B)`.
        #[arg(num_args = 1..=2, required = true)]
        singularity: Vec<String>,
    },
    /// Class-T test for 1/N(1,Q).
    Tsing {
        #[arg(num_args = 1..=2, required = true)]
        singularity: Vec<String>,
    },
    /// Discrepancies, pullback and log canonical threshold.
    Lct {
        /// Central-fiber type, e.g. II3, III(2), 1I2(3,1).
        #[arg(long = "type", value_name = "NAME", conflicts_with = "graph", required_unless_present = "graph")]
        fiber: Option<String>,
        #[arg(long, value_name = "FILE")]
        graph: Option<PathBuf>,
    },
    /// List the central-fiber types with shipped resolution graphs.
    Kawamata {
        #[arg(long, required = true)]
        list: bool,
    },
    /// Numerical certificate of a gluing.
    Glue {
        /// I0*, II|II*, III|III* or IV|IV*.
        #[arg(long = "type", value_name = "T")]
        gluing: String,
        /// Multiplicities of the logarithmic transforms on the smoothing.
        #[arg(long, value_name = "P,Q", value_delimiter = ',')]
        mults: Option<Vec<u64>>,
    },
    /// Surface class of a smoothing with the given multiple fibers.
    Smooth { m1: u64, m2: Option<u64> },
    /// Volumes of stable pairs.
    Volume {
        /// The marked rational elliptic surface (Abar + 2F, F).
        #[arg(long, conflicts_with = "dolgachev", required_unless_present = "dolgachev")]
        marked_res: bool,
        /// sigma(t) for a Dolgachev surface with weight C on both multiple fibers.
        #[arg(long, num_args = 3, value_names = ["P", "Q", "C"], allow_hyphen_values = true)]
        dolgachev: Option<Vec<String>>,
    },
    /// Candidate walls in the boundary weight for the listed types.
    Walls {
        /// Comma-separated central-fiber types.
        types: String,
    },
}

/// Result of [`run`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Rejected(Report),
}

type CmdResult = Result<Report, Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn rejected(mut report: Report, reason: impl Into<String>) -> Failure {
    let reason = reason.into();
    report.line(format!("rejected: {reason}")).field("rejected", reason);
    Failure::Rejected(report)
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let render = |r: &Report| match cli.format {
        Format::Human => emit_human(r),
        Format::Machine => emit_machine(r),
    };
    match dispatch(&cli.command) {
        Ok(r) => Outcome { code: EXIT_OK, stdout: render(&r), stderr: String::new() },
        Err(Failure::Rejected(r)) => Outcome { code: EXIT_REJECTED, stdout: render(&r), stderr: String::new() },
        Err(Failure::Input(msg)) => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Classify { model } => classify(model),
        Command::Stability { model: Some(path), .. } => stability_model(path),
        Command::Stability { fibers, .. } => stability_fibers(fibers.as_deref().unwrap_or("")),
        Command::Hj { singularity } => hj(singularity),
        Command::Tsing { singularity } => tsing(singularity),
        Command::Lct { graph: Some(path), .. } => lct_graph(path),
        Command::Lct { fiber, .. } => lct_type(fiber.as_deref().unwrap_or("")),
        Command::Kawamata { .. } => kawamata_list(),
        Command::Glue { gluing, mults } => glue(gluing, mults.as_deref()),
        Command::Smooth { m1, m2 } => smooth(*m1, *m2),
        Command::Volume { dolgachev: Some(args), .. } => volume_dolgachev(args),
        Command::Volume { .. } => volume_marked(),
        Command::Walls { types } => walls(types),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path, report: &mut Report) -> Result<WeierstrassModel, Failure> {
    let text = read(path)?;
    let given = parse_model(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let m = given.minimalize();
    if m != given {
        report.line(format!("model is not minimal; minimalized from N={} to N={}", given.level(), m.level()));
    }
    report.both(format!("A = {}", m.a()), "a", m.a());
    report.both(format!("B = {}", m.b()), "b", m.b());
    report.field("level", m.level()).field("minimalized", m != given);
    Ok(m)
}

fn classify(path: &Path) -> CmdResult {
    let mut r = Report::new();
    let m = load_model(path, &mut r)?;
    let survey = m.fiber_survey().map_err(|e| input(e.to_string()))?;
    r.line(format!("{:<16} {:>3} {:>5} {:>5} {:>5}  {:<6} {:>5}", "place", "deg", "v(A)", "v(B)", "v(D)", "type", "euler"));
    r.field("fibers", survey.len());
    for (i, f) in survey.iter().enumerate() {
        r.line(format!(
            "{:<16} {:>3} {:>5} {:>5} {:>5}  {:<6} {:>5}",
            f.place.to_string(),
            f.place_degree,
            f.v_a.to_string(),
            f.v_b.to_string(),
            f.v_delta.to_string(),
            f.kodaira.to_string(),
            f.euler
        ));
        let k = format!("fiber.{}", i + 1);
        r.field(format!("{k}.place"), &f.place)
            .field(format!("{k}.degree"), f.place_degree)
            .field(format!("{k}.v_a"), f.v_a)
            .field(format!("{k}.v_b"), f.v_b)
            .field(format!("{k}.v_delta"), f.v_delta)
            .field(format!("{k}.type"), f.kodaira)
            .field(format!("{k}.euler"), f.euler);
    }
    let sum = euler_sum(&survey);
    r.both(format!("Euler sum = {sum} (12N = {})", 12 * m.level()), "euler_sum", sum);
    Ok(r)
}

fn stability_model(path: &Path) -> CmdResult {
    let mut r = Report::new();
    let m = load_model(path, &mut r)?;
    let types = survey_types(&m).map_err(|e| input(e.to_string()))?;
    if types.is_empty() {
        r.both("no singular fibers", "class", "none");
        return Ok(r);
    }
    let class = git_classify(&types).map_err(|e| input(e.to_string()))?;
    r.both(class.to_string(), "class", class);
    match stratum(&m) {
        Ok(p) => r.both(format!("stratum: {p}"), "stratum", p),
        Err(StabilityError::Unstable) => r.both("stratum: none (unstable)", "stratum", "none"),
        Err(StabilityError::NotLevelOne(n)) => r.both(format!("stratum: undefined at N={n}"), "stratum", "undefined"),
        Err(e) => return Err(input(e.to_string())),
    };
    Ok(r)
}

fn stability_fibers(list: &str) -> CmdResult {
    let fibers = parse_fiber_list(list).map_err(|e| input(e.to_string()))?;
    let class = git_classify(&fibers).map_err(|e| input(e.to_string()))?;
    let mut r = Report::new();
    r.both(class.to_string(), "class", class);
    let warnings = validate_configuration(&fibers, 1);
    r.field("warnings", warnings.len());
    for (i, w) in warnings.iter().enumerate() {
        r.line(format!("warning: {w}")).field(format!("warning.{}", i + 1), w);
    }
    Ok(r)
}

fn singularity(args: &[String]) -> Result<CyclicQuotient, Failure> {
    let parsed = match args {
        [one] => one.parse::<CyclicQuotient>(),
        [n, q] => {
            let n: i64 = n.parse().map_err(|_| input(format!("'{n}' is not an integer")))?;
            let q: i64 = q.parse().map_err(|_| input(format!("'{q}' is not an integer")))?;
            normalize(n, 1, q)
        }
        _ => unreachable!("clap enforces one or two values"),
    };
    parsed.map_err(|e| input(e.to_string()))
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn hj(args: &[String]) -> CmdResult {
    let s = singularity(args)?;
    let chain = hj_expansion(&s);
    let disc = chain_discrepancies(&chain);
    let mut r = Report::new();
    r.line(format!("{s} = {chain}"));
    r.line(format!("discrepancies: {}", join(&disc, " ")));
    r.field("singularity", s).field("chain", join(chain.entries(), ","));
    for (i, d) in disc.iter().enumerate() {
        r.field(format!("discrepancy.{}", i + 1), d);
    }
    Ok(r)
}

fn tsing(args: &[String]) -> CmdResult {
    let s = singularity(args)?;
    let mut r = Report::new();
    r.field("singularity", s);
    match is_t_singularity(&s) {
        Some(w) => r.line(format!("{s}: class T, {w}")).field("class_t", true).field("witness", w),
        None => r.line(format!("{s}: not class T")).field("class_t", false),
    };
    Ok(r)
}

fn graph_report(r: &mut Report, g: &ResolutionGraph) -> Result<(), Failure> {
    let res = log_pullback(g).map_err(|e| input(e.to_string()))?;
    r.line(format!("{:<8} {:>5} {:>8} {:>8}", "curve", "self", "b", "r"));
    for (i, v) in g.vertices().iter().enumerate() {
        let (b, p) = (&res.discrepancy[i], &res.pullback_mult[i]);
        r.line(format!("{:<8} {:>5} {:>8} {:>8}", v.id, v.self_int, b.to_string(), p.to_string()));
        r.field(format!("{}.self", v.id), v.self_int)
            .field(format!("{}.discrepancy", v.id), b)
            .field(format!("{}.pullback", v.id), p);
    }
    for (s, m) in g.strict_components().iter().zip(&res.strict_mult) {
        r.line(format!("{:<8} {:>5} {:>8} {:>8}", s.id, "", "", m.to_string()));
        r.field(format!("{}.mult", s.id), m);
    }
    r.both(format!("lct = {}", res.lct), "lct", &res.lct);
    Ok(())
}

fn lct_type(name: &str) -> CmdResult {
    let fiber: CentralFiber = name.parse().map_err(|e: ellsurf::lct::KawamataTypeError| input(e.to_string()))?;
    let mut r = Report::new();
    r.both(format!("type: {fiber}"), "type", fiber);
    if let Err(rej) = validate_moderate_config(&[fiber]) {
        return Err(rejected(r, rej.to_string()));
    }
    let CentralFiber::Kawamata(t) = fiber else {
        return Err(rejected(r, format!("{fiber} is not a central-fiber type of a moderate degeneration")));
    };
    let b = match builtin_graph(t) {
        Ok(b) => b,
        Err(e @ BuiltinError::Unsupported(_)) => return Err(rejected(r, e.to_string())),
        Err(e) => return Err(input(e.to_string())),
    };
    r.both(format!("basket: {}", join(&t.basket(), " ")), "basket", join(&t.basket(), " "));
    if !KawamataFiberType::lct_bearing().contains(&t) {
        r.line("generated graph; the threshold below has no reference value");
    }
    graph_report(&mut r, &b.graph)?;
    Ok(r)
}

fn lct_graph(path: &Path) -> CmdResult {
    let text = read(path)?;
    let g = parse_graph(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let mut r = Report::new();
    graph_report(&mut r, &g)?;
    Ok(r)
}

fn kawamata_list() -> CmdResult {
    let mut r = Report::new();
    r.line(format!("{:<8} {:>3} {:>3} {:>5} {:>5}  basket", "type", "m~", "m", "comps", "lct"));
    for t in KawamataFiberType::lct_bearing() {
        let g = builtin_graph(t).map_err(|e| input(e.to_string()))?.graph;
        let lct = log_pullback(&g).map_err(|e| input(e.to_string()))?.lct;
        let basket = join(&t.basket(), " ");
        r.line(format!(
            "{:<8} {:>3} {:>3} {:>5} {:>5}  {basket}",
            t.to_string(),
            t.total_multiplicity(),
            ellsurf::lct::multiplicity(&t),
            t.component_count(),
            lct.to_string()
        ));
        r.field(format!("{t}.total_multiplicity"), t.total_multiplicity())
            .field(format!("{t}.multiplicity"), ellsurf::lct::multiplicity(&t))
            .field(format!("{t}.components"), t.component_count())
            .field(format!("{t}.basket"), basket)
            .field(format!("{t}.lct"), lct);
    }
    Ok(r)
}

fn gluing_lines(r: &mut Report, t: GluingType, rep: &GluingReport) {
    let ok = |b: bool| if b { "ok" } else { "FAIL" };
    r.both(format!("gluing: {t}, r = {}", rep.r), "type", t).field("r", rep.r);
    for (side, basket) in [(1, &rep.witnesses1), (2, &rep.witnesses2)] {
        let items: Vec<String> = basket
            .iter()
            .map(|(s, w)| match w {
                Some(w) => format!("{s} [{w}]"),
                None => format!("{s} [not T]"),
            })
            .collect();
        r.line(format!("X{side}: {}", items.join(", ")));
        r.field(format!("basket{side}"), join(&basket.iter().map(|(s, _)| *s).collect::<Vec<_>>(), " "));
    }
    r.line(format!("(a) class T: {}", ok(rep.passed(Clause::ClassT))));
    r.line(format!("(b) paired orders: {}", ok(rep.passed(Clause::PairedOrders))));
    r.line(format!(
        "(c) -K1-E1 = {}*E1, -K2-E2 = {}*E2: {}",
        rep.section_degrees.0,
        rep.section_degrees.1,
        ok(rep.passed(Clause::Degrees))
    ));
    r.line(format!(
        "(d) n = {} (Diff {} + {}): {}",
        rep.t1_degree,
        rep.diff.0,
        rep.diff.1,
        ok(rep.passed(Clause::T1Degree))
    ));
    r.line(format!(
        "paired weights opposite: {}; lcm of orders = r+1: {}",
        rep.weights_opposite, rep.lcm_matches_index
    ));
    r.line("numerical identities only; cohomology vanishing is not checked");
    for c in [Clause::ClassT, Clause::PairedOrders, Clause::Degrees] {
        r.field(c.to_string(), rep.passed(c));
    }
    r.field("t1_degree", &rep.t1_degree)
        .field("diff1", &rep.diff.0)
        .field("diff2", &rep.diff.1)
        .field("weights_opposite", rep.weights_opposite)
        .field("lcm_matches_index", rep.lcm_matches_index)
        .field("certified", rep.is_certified());
}

fn glue(token: &str, mults: Option<&[u64]>) -> CmdResult {
    let t: GluingType = token.parse().map_err(|e: ellsurf::invariants::UnknownGluingType| input(e.to_string()))?;
    let rep = check_numerical_gluing(t);
    let mut r = Report::new();
    gluing_lines(&mut r, t, &rep);
    if let Some(m) = mults {
        let [m1, m2] = *m else {
            return Err(input("--mults takes exactly two values P,Q"));
        };
        match gluing_smoothing_target(t, m1, m2) {
            Ok(class) => {
                r.both(format!("smoothing with multiplicities ({m1},{m2}): {class}"), "smoothing", class);
            }
            Err(e @ GluingSmoothingError::NotCoprime(..)) => return Err(rejected(r, e.to_string())),
            Err(e) => return Err(input(e.to_string())),
        }
    }
    if !rep.is_certified() {
        let failed = join(&rep.failures(), ",");
        return Err(rejected(r, format!("failed clauses: {failed}")));
    }
    Ok(r)
}

fn smooth(m1: u64, m2: Option<u64>) -> CmdResult {
    let mults: Vec<u64> = std::iter::once(m1).chain(m2).collect();
    let class = smoothing_target(&mults).map_err(|e| input(e.to_string()))?;
    let k = canonical_degree(&-Rational::from_integer(1.into()), &mults).map_err(|e| input(e.to_string()))?;
    let mut r = Report::new();
    r.both(class.to_string(), "class", &class);
    r.both(format!("deg K = {k}"), "canonical_degree", k);
    Ok(r)
}

fn volume_marked() -> CmdResult {
    let int = |n: i64| Rational::from_integer(n.into());
    let prof = IntersectionProfile { abar_sq: int(-1), abar_dot_fm: int(1), fm_sq: int(0) };
    let mut r = Report::new();
    r.line(format!("Abar^2 = {}, Abar.F = {}, F^2 = {}", prof.abar_sq, prof.abar_dot_fm, prof.fm_sq));
    match volume_check_marked_res(1, &prof) {
        Ok(t) => {
            r.line(format!("A^2 = {}", t.v));
            r.line(format!("(d, c, v) = ({}, {}, {})", t.d, t.c, t.v));
            r.field("a_sq", &t.v).field("d", t.d).field("c", &t.c).field("v", &t.v);
            Ok(r)
        }
        Err(e) => Err(rejected(r, e.to_string())),
    }
}

fn volume_dolgachev(args: &[String]) -> CmdResult {
    let [p, q, c] = args else {
        return Err(input("--dolgachev takes P Q C"));
    };
    let p: u64 = p.parse().map_err(|_| input(format!("'{p}' is not a positive integer")))?;
    let q: u64 = q.parse().map_err(|_| input(format!("'{q}' is not a positive integer")))?;
    let c = parse_rational(c).ok_or_else(|| input(format!("'{c}' is not a rational")))?;
    let s = sigma_volume(p, q, &c).map_err(|e| input(e.to_string()))?;
    let mut r = Report::new();
    r.both(format!("sigma(t) = {s}"), "sigma", &s);
    r.field("sigma.t2", s.coeff(2)).field("sigma.t1", s.coeff(1));
    r.line(format!("assumes the {}-multi-section is rational with C^2 = p+q+pq-2", p * q));
    r.field("conditional", true);
    Ok(r)
}

fn walls(list: &str) -> CmdResult {
    let mut types = Vec::new();
    let mut r = Report::new();
    for tok in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match tok.parse::<CentralFiber>() {
            Ok(CentralFiber::Kawamata(t)) => types.push(t),
            Ok(other) => return Err(rejected(r, format!("no wall data for {other}"))),
            Err(e) => return Err(input(e.to_string())),
        }
    }
    let walls = wall_positions(&types).map_err(|e| rejected(Report::new(), e.to_string()))?;
    let shown = if walls.is_empty() { "none".to_string() } else { join(&walls, ", ") };
    r.both(format!("walls: {shown}"), "walls", join(&walls, ","));
    r.field("count", walls.len());
    Ok(r)
}
