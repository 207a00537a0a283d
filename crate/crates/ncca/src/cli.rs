//! Subcommands. Results go to stdout as `key=value` lines, witnesses as one
//! `witness=<kind> key=value ...` line; notes and errors go to stderr.
//!
//! Exit codes: 0 success, 1 property violated, 2 usage, parse or input error.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncca_core::conservation::{
    brute_force_nc, oracle_vs_theorem_census, random_nc_test, OracleReport, Verdict,
    DEFAULT_BUDGET, DEFAULT_SEED,
};
use ncca_core::theory::{
    check_nc_hex, check_nc_tri, extract_flow_hex, extract_flow_tri, NcFailure,
};
use ncca_core::xsim::{
    lift_hex_to_tri, lift_tri_to_hex, lift_with_codec, random_corpus, Direction, SimFailureKind,
    SimulationPair,
};
use ncca_core::{
    evolve, CellularAutomaton, Configuration, Error, FlowFunction, Geometry, LocalRule, RuleTable,
    State, StateSet, Symmetry, SymmetryClass, TorusDims,
};

use crate::format::{self, FormatError};
use crate::render::{self, Format};

#[derive(Debug, Parser)]
#[command(
    name = "ncca",
    version,
    about = "Number-conserving cellular automata on triangular and hexagonal tori"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide number conservation by the flow theorem or by simulation.
    CheckNc(CheckNcArgs),
    /// Extract the flow of a rule table.
    ExtractFlow(ExtractFlowArgs),
    /// Build the permutation-symmetric rule table of a flow.
    BuildRule(BuildRuleArgs),
    /// Report the strongest symmetry of a rule table.
    ClassifySymmetry(ClassifyArgs),
    /// Advance a configuration.
    Step(StepArgs),
    /// Lift a flow to the other lattice.
    Lift(LiftArgs),
    /// Encode a configuration for the lifted automaton.
    Encode(CodecArgs),
    /// Decode a lifted configuration.
    Decode(CodecArgs),
    /// Check a lifted automaton against the original on random configurations.
    VerifySim(VerifySimArgs),
    /// Compare the theorem with the brute-force oracle over a whole rule space.
    Census(CensusArgs),
    /// Draw a configuration as PPM or SVG.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Theorem,
    Brute,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Dir {
    TriToHex,
    HexToTri,
}

impl Dir {
    fn direction(self) -> Direction {
        match self {
            Dir::TriToHex => Direction::TriInHex,
            Dir::HexToTri => Direction::HexInTri,
        }
    }

    fn source(self) -> Geometry {
        match self {
            Dir::TriToHex => Geometry::Triangular,
            Dir::HexToTri => Geometry::Hexagonal,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Dir::TriToHex => "tri-to-hex",
            Dir::HexToTri => "hex-to-tri",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeometryArg {
    Tri,
    Hex,
}

impl From<GeometryArg> for Geometry {
    fn from(g: GeometryArg) -> Self {
        match g {
            GeometryArg::Tri => Geometry::Triangular,
            GeometryArg::Hex => Geometry::Hexagonal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Ppm,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Torus(usize, usize);

impl fmt::Display for Torus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.0, self.1)
    }
}

fn parse_torus(s: &str) -> Result<Torus, String> {
    let (w, h) = s.split_once('x').ok_or("expected WxH, e.g. 4x4")?;
    let w = w.parse().map_err(|_| format!("bad width `{w}`"))?;
    let h = h.parse().map_err(|_| format!("bad height `{h}`"))?;
    Ok(Torus(w, h))
}

/// A rule given either as a table or as a flow.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct RuleSource {
    /// Rule table file.
    #[arg(long)]
    rule: Option<PathBuf>,
    /// Flow file.
    #[arg(long)]
    flow: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CheckNcArgs {
    #[command(flatten)]
    source: RuleSource,
    #[arg(long, value_enum, default_value = "theorem")]
    method: Method,
    /// Torus for the brute and random methods.
    #[arg(long, value_parser = parse_torus)]
    torus: Option<Torus>,
    /// Maximum number of configurations for the brute method.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 10)]
    steps: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug, Args)]
struct ExtractFlowArgs {
    #[arg(long)]
    rule: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BuildRuleArgs {
    #[arg(long)]
    flow: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long)]
    rule: PathBuf,
}

#[derive(Debug, Args)]
struct StepArgs {
    #[command(flatten)]
    source: RuleSource,
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LiftArgs {
    #[arg(long, value_enum)]
    dir: Dir,
    /// Flow of the automaton to lift.
    #[arg(long)]
    flow: PathBuf,
    /// Spacer state for tri-to-hex (default: largest state + 1).
    #[arg(long, allow_hyphen_values = true)]
    spacer: Option<State>,
    /// Strict state bound M for hex-to-tri (default: largest state + 1).
    #[arg(long)]
    bound: Option<State>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CodecArgs {
    #[arg(long, value_enum)]
    dir: Dir,
    /// Flow of the simulated automaton.
    #[arg(long)]
    flow: PathBuf,
    #[arg(long)]
    config: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifySimArgs {
    #[arg(long, value_enum)]
    dir: Dir,
    /// Triangular flow (tri-to-hex).
    #[arg(long)]
    tri: Option<PathBuf>,
    /// Hexagonal flow (hex-to-tri).
    #[arg(long)]
    hex: Option<PathBuf>,
    /// Torus of the simulated automaton.
    #[arg(long, value_parser = parse_torus)]
    torus: Torus,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug, Args)]
struct CensusArgs {
    #[arg(long, value_enum)]
    geometry: GeometryArg,
    /// Comma-separated state values.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    states: Vec<State>,
    #[arg(long, allow_hyphen_values = true)]
    quiescent: State,
    #[arg(long, value_parser = parse_torus)]
    torus: Torus,
    /// Maximum number of rule tables.
    #[arg(long, default_value_t = 1 << 20)]
    table_budget: u64,
    /// Maximum number of configurations per oracle run.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_enum, default_value = "svg")]
    format: FormatArg,
    /// Pixels per cell side.
    #[arg(long, default_value_t = 32)]
    scale: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(PathBuf, io::Error),
    Format(PathBuf, FormatError),
    Core(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Format(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Holds,
    Violated,
}

type CliResult = Result<Outcome, CliError>;

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn kv(&mut self, key: &str, value: impl fmt::Display) {
        let _ = writeln!(self.out, "{key}={value}");
    }

    fn note(&mut self, msg: impl fmt::Display) {
        let _ = writeln!(self.err, "{msg}");
    }

    /// Writes a document to `path`, or to stdout.
    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<(), CliError> {
        match path {
            Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(p.to_path_buf(), e)),
            None => self
                .out
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e)),
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    let result = match cli.command {
        Command::CheckNc(a) => check_nc(a, &mut io),
        Command::ExtractFlow(a) => extract_flow(a, &mut io),
        Command::BuildRule(a) => build_rule(a, &mut io),
        Command::ClassifySymmetry(a) => classify(a, &mut io),
        Command::Step(a) => step(a, &mut io),
        Command::Lift(a) => lift(a, &mut io),
        Command::Encode(a) => codec(a, true, &mut io),
        Command::Decode(a) => codec(a, false, &mut io),
        Command::VerifySim(a) => verify_sim(a, &mut io),
        Command::Census(a) => census(a, &mut io),
        Command::Render(a) => render_cmd(a, &mut io),
    };
    let _ = io.out.flush();
    match result {
        Ok(Outcome::Holds) => 0,
        Ok(Outcome::Violated) => 1,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> format::Result<T>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|e| CliError::Format(path.to_path_buf(), e))
}

fn load_flow(path: &Path) -> Result<format::FlowDoc, CliError> {
    load(path, format::parse_flow)
}

/// Flow-backed automaton; lifted flows are not closed on every
/// neighborhood, so closure falls back to a per-step check.
fn flow_automaton(doc: format::FlowDoc, io: &mut Io<'_>) -> Result<CellularAutomaton, CliError> {
    match CellularAutomaton::from_flow(doc.flow.clone(), doc.geometry) {
        Ok(ca) => Ok(ca),
        Err(Error::Closure { .. }) => {
            io.note(
                "note: rule is not closed on every neighborhood; closure is checked at each step",
            );
            Ok(CellularAutomaton::from_flow_open(doc.flow, doc.geometry)?)
        }
        Err(e) => Err(e.into()),
    }
}

fn load_automaton(source: &RuleSource, io: &mut Io<'_>) -> Result<CellularAutomaton, CliError> {
    match (&source.rule, &source.flow) {
        (Some(rule), _) => Ok(CellularAutomaton::from_table(load(
            rule,
            format::parse_rule,
        )?)),
        (None, Some(flow)) => flow_automaton(load_flow(flow)?, io),
        (None, None) => Err(CliError::Usage("give --rule or --flow".into())),
    }
}

fn dims(geometry: Geometry, t: Torus) -> Result<TorusDims, CliError> {
    Ok(match geometry {
        Geometry::Triangular => TorusDims::triangular(t.0, t.1)?,
        Geometry::Hexagonal => TorusDims::hexagonal(t.0, t.1)?,
    })
}

fn list(values: &[State]) -> String {
    values
        .iter()
        .map(State::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Rows joined by `/`, cells by `,`.
fn config_record(c: &Configuration) -> String {
    c.cells()
        .chunks(c.dims().width())
        .map(list)
        .collect::<Vec<_>>()
        .join("/")
}

fn print_nc_failure(io: &mut Io<'_>, failure: &NcFailure) {
    let line = match failure {
        NcFailure::Antisymmetry { x, y, forward, backward } => {
            format!("witness=antisymmetry x={x} y={y} forward={forward} backward={backward}")
        }
        NcFailure::Reconstruction {
            center,
            neighbors,
            expected,
            actual,
        } => format!(
            "witness=reconstruction center={center} neighbors={} expected={expected} actual={actual}",
            list(neighbors)
        ),
    };
    let _ = writeln!(io.out, "{line}");
}

fn print_oracle(io: &mut Io<'_>, report: &OracleReport) -> Outcome {
    io.kv("torus", Torus(report.torus.width(), report.torus.height()));
    if let Some(seed) = report.seed {
        io.kv("seed", seed);
    }
    io.kv("configs_checked", report.configs_checked);
    let verdict = match report.verdict {
        Verdict::Conserving => "true",
        Verdict::NotConserving => "false",
        Verdict::Unknown => "unknown",
    };
    io.kv("conserving", verdict);
    if let Some(f) = &report.failure {
        let _ = writeln!(
            io.out,
            "witness=sum step={} sum_before={} sum_after={} config={}",
            f.step,
            f.sum_before,
            f.sum_after,
            config_record(&f.config)
        );
    }
    if report.verdict == Verdict::Unknown {
        io.note("budget exhausted before every configuration was checked");
    }
    if report.conserving() {
        Outcome::Holds
    } else {
        Outcome::Violated
    }
}

fn check_nc(a: CheckNcArgs, io: &mut Io<'_>) -> CliResult {
    let ca = load_automaton(&a.source, io)?;
    let geometry = ca.geometry();
    io.kv("geometry", geometry.name());
    match a.method {
        Method::Theorem => {
            io.kv("method", "theorem");
            let verdict = match (geometry, ca.symmetry()) {
                (Geometry::Triangular, _) => check_nc_tri(&ca),
                (Geometry::Hexagonal, SymmetryClass::Permutation) => check_nc_hex(&ca),
                // A rotation table may still be fully symmetric.
                (Geometry::Hexagonal, _) => match ca.table().map(RuleTable::strongest_symmetry) {
                    Some(SymmetryClass::Permutation) => check_nc_hex(&ca),
                    _ => Err(Error::NotApplicable),
                },
            }?;
            io.kv("conserving", verdict.conserving);
            match &verdict.failure {
                Some(f) => {
                    print_nc_failure(io, f);
                    Ok(Outcome::Violated)
                }
                None => Ok(Outcome::Holds),
            }
        }
        Method::Brute | Method::Random => {
            let torus = a.torus.ok_or_else(|| {
                CliError::Usage("--torus is required for the brute and random methods".into())
            })?;
            let dims = dims(geometry, torus)?;
            let report = if a.method == Method::Brute {
                io.kv("method", "brute");
                brute_force_nc(&ca, dims, a.budget, None)?
            } else {
                io.kv("method", "random");
                random_nc_test(&ca, dims, a.trials, a.steps, a.seed)?
            };
            Ok(print_oracle(io, &report))
        }
    }
}

fn extract_flow(a: ExtractFlowArgs, io: &mut Io<'_>) -> CliResult {
    let table = load(&a.rule, format::parse_rule)?;
    let flow = match table.geometry() {
        Geometry::Triangular => extract_flow_tri(&table)?,
        Geometry::Hexagonal => extract_flow_hex(&table)?,
    };
    if let Some((x, y, forward, backward)) = flow.antisymmetry_violation() {
        io.kv("antisymmetric", false);
        let _ = writeln!(
            io.out,
            "witness=antisymmetry x={x} y={y} forward={forward} backward={backward}"
        );
        return Ok(Outcome::Violated);
    }
    io.emit(
        a.output.as_deref(),
        &format::serialize_flow(table.geometry(), &flow),
    )?;
    Ok(Outcome::Holds)
}

fn rule_of_flow(ca: &CellularAutomaton) -> Result<RuleTable, Error> {
    RuleTable::from_fn(
        ca.geometry(),
        ca.states().clone(),
        Symmetry::Permutation,
        |g, ns| ca.eval(g, ns),
    )
}

fn build_rule(a: BuildRuleArgs, io: &mut Io<'_>) -> CliResult {
    let doc = load_flow(&a.flow)?;
    let ca = match CellularAutomaton::from_flow(doc.flow, doc.geometry) {
        Ok(ca) => ca,
        Err(Error::Closure {
            center,
            neighbors,
            value,
        }) => {
            io.kv("closed", false);
            let _ = writeln!(
                io.out,
                "witness=closure center={center} neighbors={} value={value}",
                list(&neighbors)
            );
            return Ok(Outcome::Violated);
        }
        Err(e) => return Err(e.into()),
    };
    io.emit(
        a.output.as_deref(),
        &format::serialize_rule(&rule_of_flow(&ca)?),
    )?;
    Ok(Outcome::Holds)
}

fn classify(a: ClassifyArgs, io: &mut Io<'_>) -> CliResult {
    let table = load(&a.rule, format::parse_rule)?;
    let class = table.strongest_symmetry();
    io.kv("declared", table.symmetry_kind().name());
    io.kv("symmetry", class.name());
    Ok(Outcome::Holds)
}

fn step(a: StepArgs, io: &mut Io<'_>) -> CliResult {
    let ca = load_automaton(&a.source, io)?;
    let config = load(&a.config, format::parse_config)?;
    config.validate(ca.states())?;
    let next = evolve(&ca, &config, a.steps)?;
    io.emit(a.output.as_deref(), &format::serialize_config(&next))?;
    Ok(Outcome::Holds)
}

fn require_geometry(doc: &format::FlowDoc, dir: Dir) -> Result<(), CliError> {
    if doc.geometry != dir.source() {
        return Err(CliError::Usage(format!(
            "--dir {} needs a {} flow, got {}",
            dir.name(),
            dir.source().name(),
            doc.geometry.name()
        )));
    }
    Ok(())
}

fn lift(a: LiftArgs, io: &mut Io<'_>) -> CliResult {
    let doc = load_flow(&a.flow)?;
    require_geometry(&doc, a.dir)?;
    let ca = flow_automaton(doc, io)?;
    let (lifted, geometry) = match a.dir {
        Dir::TriToHex => {
            let (h, p) = lift_tri_to_hex(&ca, a.spacer)?;
            io.note(format!("spacer={}", p.spacer));
            (h, Geometry::Hexagonal)
        }
        Dir::HexToTri => {
            let (t, p) = lift_hex_to_tri(&ca, a.bound)?;
            io.note(format!("bound={}", p.bound));
            io.note(format!("payloads={}", list(&p.payloads)));
            (t, Geometry::Triangular)
        }
    };
    let flow: &FlowFunction = lifted.flow().ok_or(Error::NotFlowBacked)?;
    io.emit(a.output.as_deref(), &format::serialize_flow(geometry, flow))?;
    Ok(Outcome::Holds)
}

fn codec(a: CodecArgs, encode: bool, io: &mut Io<'_>) -> CliResult {
    let doc = load_flow(&a.flow)?;
    require_geometry(&doc, a.dir)?;
    let ca = flow_automaton(doc, io)?;
    let config = load(&a.config, format::parse_config)?;
    // The codec is keyed on the simulated torus.
    let source = if encode {
        *config.dims()
    } else {
        let d = config.dims();
        match a.dir {
            Dir::TriToHex => TorusDims::triangular(d.width(), 2 * d.height() / 3)?,
            Dir::HexToTri => TorusDims::hexagonal(d.width() / 2, d.height())?,
        }
    };
    let lifted = lift_with_codec(&ca, a.dir.direction(), source)?;
    let result = if encode {
        config.validate(ca.states())?;
        lifted.codec.encode(&config)
    } else {
        lifted.codec.decode(&config)
    };
    match result {
        Ok(c) => {
            io.emit(a.output.as_deref(), &format::serialize_config(&c))?;
            Ok(Outcome::Holds)
        }
        Err(Error::MalformedEncoding {
            cell,
            value,
            reason,
        }) => {
            io.kv("decodable", false);
            let _ = writeln!(
                io.out,
                "witness=malformed x={} y={} value={value} reason=\"{reason}\"",
                cell.x, cell.y
            );
            Ok(Outcome::Violated)
        }
        Err(e) => Err(e.into()),
    }
}

fn verify_sim(a: VerifySimArgs, io: &mut Io<'_>) -> CliResult {
    let path = match a.dir {
        Dir::TriToHex => a
            .tri
            .as_ref()
            .ok_or_else(|| CliError::Usage("--dir tri-to-hex needs --tri".into()))?,
        Dir::HexToTri => a
            .hex
            .as_ref()
            .ok_or_else(|| CliError::Usage("--dir hex-to-tri needs --hex".into()))?,
    };
    let doc = load_flow(path)?;
    require_geometry(&doc, a.dir)?;
    let simulated = flow_automaton(doc, io)?;
    let source = dims(a.dir.source(), a.torus)?;
    let lifted = lift_with_codec(&simulated, a.dir.direction(), source)?;
    let pair = SimulationPair {
        simulator: &lifted.simulator,
        simulated: &simulated,
        tau: lifted.tau,
        codec: lifted.codec.as_ref(),
    };
    let corpus = random_corpus(source, simulated.states().states(), a.trials, a.seed);
    let report = ncca_core::xsim::verify_step_simulation(&pair, corpus);
    io.kv("direction", a.dir.name());
    io.kv("torus", a.torus);
    io.kv("tau", lifted.tau);
    io.kv("seed", a.seed);
    io.kv("checked", report.checked);
    io.kv("passed", report.passed());
    let Some(f) = report.failure else {
        return Ok(Outcome::Holds);
    };
    let detail = match &f.kind {
        SimFailureKind::RoundTrip => "kind=round-trip".to_string(),
        SimFailureKind::Mismatch { expected, found } => format!(
            "kind=mismatch expected={} found={}",
            config_record(expected),
            config_record(found)
        ),
        SimFailureKind::SumDrift {
            step,
            before,
            after,
        } => {
            format!("kind=sum-drift step={step} before={before} after={after}")
        }
        SimFailureKind::Codec(e) => format!("kind=codec error=\"{e}\""),
        SimFailureKind::Step(e) => format!("kind=step error=\"{e}\""),
    };
    let _ = writeln!(
        io.out,
        "witness=simulation index={} {detail} config={}",
        f.index,
        config_record(&f.config)
    );
    Ok(Outcome::Violated)
}

fn census(a: CensusArgs, io: &mut Io<'_>) -> CliResult {
    let geometry: Geometry = a.geometry.into();
    let states = StateSet::new(a.states.iter().copied(), a.quiescent)?;
    let dims = dims(geometry, a.torus)?;
    let c = oracle_vs_theorem_census(geometry, &states, dims, a.table_budget, a.budget)?;
    io.kv("geometry", geometry.name());
    io.kv("torus", a.torus);
    io.kv(
        "mode",
        match c.mode {
            ncca_core::conservation::CensusMode::FullTables => "full",
            ncca_core::conservation::CensusMode::CanonicalTables => "canonical",
        },
    );
    io.kv("tables", c.tables_enumerated);
    io.kv("symmetric", c.symmetric);
    io.kv("checked", c.checked);
    io.kv("theorem_conserving", c.theorem_conserving);
    io.kv("oracle_conserving", c.oracle_conserving);
    io.kv("oracle_unknown", c.oracle_unknown);
    io.kv("disagreements", c.disagreements.len());
    for rule in &c.conserving_rules {
        let entries: Vec<String> = rule
            .entries()
            .filter(|&(g, _, r)| g != r)
            .map(|(g, ns, r)| format!("{g}:{}->{r}", list(ns)))
            .collect();
        let shown = if entries.is_empty() {
            "identity".to_string()
        } else {
            entries.join(";")
        };
        io.kv("conserving_rule", shown);
    }
    for d in &c.disagreements {
        let entries: Vec<String> = d
            .table
            .entries()
            .map(|(g, ns, r)| format!("{g}:{}->{r}", list(ns)))
            .collect();
        let _ = writeln!(
            io.out,
            "witness=disagreement theorem={} oracle={:?} table={}",
            d.theorem_conserving,
            d.oracle,
            entries.join(";")
        );
    }
    Ok(if c.disagreements.is_empty() {
        Outcome::Holds
    } else {
        Outcome::Violated
    })
}

fn render_cmd(a: RenderArgs, io: &mut Io<'_>) -> CliResult {
    if a.scale == 0 {
        return Err(CliError::Usage("--scale must be positive".into()));
    }
    let config = load(&a.config, format::parse_config)?;
    let format = match a.format {
        FormatArg::Ppm => Format::Ppm,
        FormatArg::Svg => Format::Svg,
    };
    io.emit(
        a.output.as_deref(),
        &render::render(&config, format, a.scale),
    )?;
    Ok(Outcome::Holds)
}
