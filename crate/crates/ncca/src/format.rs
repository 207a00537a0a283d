//! Line-oriented text formats for flows, rule tables and configurations.
//!
//! Every document starts with an `ncca-<kind> v1` header; `#` starts a
//! comment; all values are whitespace-separated decimal integers.
//!
//! ```text
//! ncca-flow v1              ncca-rule v1                ncca-config v1
//! geometry tri              geometry tri                geometry hex
//! states 4 0 1 2 3          states 2 0 1                torus 3 2
//! quiescent 0               quiescent 0                 1 1 7
//! pair 0 3 1                symmetry permutation        1 2 1
//!                           entry 0 0 0 1 1
//!                           default identity
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ncca_core::{
    Configuration, FlowFunction, Geometry, LocalRule, RuleTable, State, StateSet, Symmetry,
    TorusDims,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: ncca_core::Error,
    },
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error(transparent)]
    Document(ncca_core::Error),
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> FormatError {
        FormatError::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn int(&self) -> Result<State> {
        self.text
            .parse()
            .map_err(|_| self.error(format!("expected an integer, found `{}`", self.text)))
    }

    fn count(&self) -> Result<usize> {
        self.text.parse().map_err(|_| {
            self.error(format!(
                "expected a non-negative count, found `{}`",
                self.text
            ))
        })
    }
}

/// Non-empty lines as token lists, comments stripped.
fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in body.char_indices().chain([(body.len(), ' ')]) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &body[s..pos],
                        line: i + 1,
                        column: body[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push(tokens);
        }
    }
    out
}

fn check_header<'a>(lines: &'a [Vec<Token<'a>>], kind: &str) -> Result<&'a [Vec<Token<'a>>]> {
    let expected = format!("ncca-{kind}");
    match lines.first() {
        Some(first) if first.len() == 2 && first[0].text == expected && first[1].text == "v1" => {
            Ok(&lines[1..])
        }
        Some(first) => Err(first[0].error(format!("expected header `{expected} v1`"))),
        None => Err(FormatError::Syntax {
            line: 1,
            column: 1,
            message: format!("empty document, expected header `{expected} v1`"),
        }),
    }
}

fn expect_args(line: &[Token<'_>], n: usize) -> Result<()> {
    if line.len() != n + 1 {
        let at = line.get(n + 1).unwrap_or(&line[line.len() - 1]);
        return Err(at.error(format!(
            "`{}` takes {n} value(s), found {}",
            line[0].text,
            line.len() - 1
        )));
    }
    Ok(())
}

/// A directive that may appear at most once, remembering its line.
struct Once<T> {
    name: &'static str,
    value: Option<(usize, T)>,
}

impl<T> Once<T> {
    fn new(name: &'static str) -> Self {
        Once { name, value: None }
    }

    fn set(&mut self, tok: &Token<'_>, value: T) -> Result<()> {
        if self.value.is_some() {
            return Err(tok.error(format!("duplicate `{}` line", self.name)));
        }
        self.value = Some((tok.line, value));
        Ok(())
    }

    fn get(self) -> Result<(usize, T)> {
        self.value.ok_or(FormatError::Missing(self.name))
    }
}

fn invalid(line: usize) -> impl Fn(ncca_core::Error) -> FormatError {
    move |source| FormatError::Invalid { line, source }
}

/// Geometry, state set and quiescent state shared by flow and rule files.
struct Common {
    geometry: Once<Geometry>,
    states: Once<Vec<State>>,
    quiescent: Once<State>,
}

impl Common {
    fn new() -> Self {
        Common {
            geometry: Once::new("geometry"),
            states: Once::new("states"),
            quiescent: Once::new("quiescent"),
        }
    }

    /// Consumes the line if it is a common directive.
    fn accept(&mut self, line: &[Token<'_>]) -> Result<bool> {
        match line[0].text {
            "geometry" => {
                expect_args(line, 1)?;
                self.geometry.set(&line[0], parse_geometry(&line[1])?)?;
            }
            "states" => {
                let k = line
                    .get(1)
                    .ok_or_else(|| line[0].error("`states` needs a count"))?
                    .count()?;
                expect_args(line, k + 1)?;
                let values = line[2..].iter().map(Token::int).collect::<Result<_>>()?;
                self.states.set(&line[0], values)?;
            }
            "quiescent" => {
                expect_args(line, 1)?;
                self.quiescent.set(&line[0], line[1].int()?)?;
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn finish(self) -> Result<(Geometry, StateSet)> {
        let (_, geometry) = self.geometry.get()?;
        let (states_line, states) = self.states.get()?;
        let (q_line, q) = self.quiescent.get()?;
        let set = StateSet::new(states, q).map_err(|e| match e {
            ncca_core::Error::QuiescentNotInSet(_) => FormatError::Invalid {
                line: q_line,
                source: e,
            },
            e => FormatError::Invalid {
                line: states_line,
                source: e,
            },
        })?;
        Ok((geometry, set))
    }
}

fn parse_geometry(tok: &Token<'_>) -> Result<Geometry> {
    match tok.text {
        "tri" => Ok(Geometry::Triangular),
        "hex" => Ok(Geometry::Hexagonal),
        other => Err(tok.error(format!(
            "unknown geometry `{other}`, expected `tri` or `hex`"
        ))),
    }
}

fn unknown(line: &[Token<'_>]) -> FormatError {
    line[0].error(format!("unknown directive `{}`", line[0].text))
}

fn write_common(out: &mut String, kind: &str, geometry: Geometry, states: &StateSet) {
    let _ = writeln!(out, "ncca-{kind} v1");
    let _ = writeln!(out, "geometry {}", geometry.name());
    let _ = write!(out, "states {}", states.len());
    for s in states.states() {
        let _ = write!(out, " {s}");
    }
    let _ = writeln!(out, "\nquiescent {}", states.quiescent());
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowDoc {
    pub geometry: Geometry,
    pub flow: FlowFunction,
}

pub fn parse_flow(text: &str) -> Result<FlowDoc> {
    let lines = tokenize(text);
    let body = check_header(&lines, "flow")?;
    let mut common = Common::new();
    let mut pairs: BTreeMap<(State, State), (usize, i64)> = BTreeMap::new();
    for line in body {
        if common.accept(line)? {
            continue;
        }
        if line[0].text != "pair" {
            return Err(unknown(line));
        }
        expect_args(line, 3)?;
        let (x, y, v) = (line[1].int()?, line[2].int()?, line[3].int()?);
        if pairs.contains_key(&(x, y)) {
            return Err(line[0].error(format!("duplicate pair {x} {y}")));
        }
        if x == y && v != 0 {
            return Err(line[3].error(format!("flow from {x} to itself must be 0")));
        }
        if let Some(&(first, back)) = pairs.get(&(y, x)) {
            if back.checked_neg() != Some(v) {
                return Err(line[3].error(format!(
                    "pair {x} {y} {v} contradicts pair {y} {x} {back} on line {first}"
                )));
            }
        }
        pairs.insert((x, y), (line[0].line, v));
    }
    let (geometry, states) = common.finish()?;
    for (&(x, y), &(line, _)) in &pairs {
        states.require(x).map_err(invalid(line))?;
        states.require(y).map_err(invalid(line))?;
    }
    let flow =
        FlowFunction::antisymmetric(states, pairs.iter().map(|(&(x, y), &(_, v))| (x, y, v)))
            .map_err(FormatError::Document)?;
    Ok(FlowDoc { geometry, flow })
}

/// Canonical form: one `pair x y v` per nonzero flow with `x < y`.
pub fn serialize_flow(geometry: Geometry, flow: &FlowFunction) -> String {
    let mut out = String::new();
    write_common(&mut out, "flow", geometry, flow.states());
    for (x, y, v) in flow.nonzero() {
        if x < y {
            let _ = writeln!(out, "pair {x} {y} {v}");
        }
    }
    out
}

pub fn parse_rule(text: &str) -> Result<RuleTable> {
    let lines = tokenize(text);
    let body = check_header(&lines, "rule")?;
    let mut common = Common::new();
    let mut symmetry = Once::new("symmetry");
    let mut default = Once::new("default");
    let mut entries: Vec<(usize, &[Token<'_>])> = Vec::new();
    for line in body {
        if common.accept(line)? {
            continue;
        }
        match line[0].text {
            "symmetry" => {
                expect_args(line, 1)?;
                let s = match line[1].text {
                    "rotation" => Symmetry::Rotation,
                    "permutation" => Symmetry::Permutation,
                    other => {
                        return Err(line[1].error(format!(
                            "unknown symmetry `{other}`, expected `rotation` or `permutation`"
                        )))
                    }
                };
                symmetry.set(&line[0], s)?;
            }
            "default" => {
                expect_args(line, 1)?;
                if line[1].text != "identity" {
                    return Err(line[1].error("only `default identity` is supported"));
                }
                default.set(&line[0], ())?;
            }
            "entry" => entries.push((line[0].line, &line[1..])),
            _ => return Err(unknown(line)),
        }
    }
    let (geometry, states) = common.finish()?;
    let (_, symmetry) = symmetry.get()?;
    let default_identity = default.value.is_some();
    let n = geometry.arity();

    let mut parsed = Vec::with_capacity(entries.len());
    let mut seen: BTreeMap<Vec<State>, usize> = BTreeMap::new();
    for &(line, toks) in &entries {
        if toks.len() != n + 2 {
            let at = toks.last().copied().unwrap_or(Token {
                text: "",
                line,
                column: 1,
            });
            return Err(at.error(format!(
                "`entry` takes center, {n} neighbors and result ({} values), found {}",
                n + 2,
                toks.len()
            )));
        }
        let values = toks.iter().map(Token::int).collect::<Result<Vec<_>>>()?;
        for &s in &values {
            states.require(s).map_err(invalid(line))?;
        }
        let mut key = values[..n + 1].to_vec();
        symmetry.canonicalize(&mut key[1..]);
        if let Some(first) = seen.insert(key, line) {
            return Err(toks[0].error(format!(
                "duplicate entry for this neighborhood (first on line {first})"
            )));
        }
        parsed.push(values);
    }
    RuleTable::new(
        geometry,
        states,
        symmetry,
        parsed
            .into_iter()
            .map(|v| (v[0], v[1..=n].to_vec(), v[n + 1])),
        default_identity,
    )
    .map_err(FormatError::Document)
}

/// Canonical form: `default identity` plus every non-identity entry in
/// sorted key order.
pub fn serialize_rule(table: &RuleTable) -> String {
    let mut out = String::new();
    write_common(&mut out, "rule", table.geometry(), table.states());
    let _ = writeln!(out, "symmetry {}", table.symmetry_kind().name());
    for (g, ns, r) in table.entries() {
        if r != g {
            let _ = write!(out, "entry {g}");
            for n in ns {
                let _ = write!(out, " {n}");
            }
            let _ = writeln!(out, " {r}");
        }
    }
    out.push_str("default identity\n");
    out
}

pub fn parse_config(text: &str) -> Result<Configuration> {
    let lines = tokenize(text);
    let body = check_header(&lines, "config")?;
    let mut geometry = Once::new("geometry");
    let mut torus = Once::new("torus");
    let mut rows: Vec<&[Token<'_>]> = Vec::new();
    for line in body {
        match line[0].text {
            "geometry" => {
                expect_args(line, 1)?;
                geometry.set(&line[0], parse_geometry(&line[1])?)?;
            }
            "torus" => {
                expect_args(line, 2)?;
                torus.set(&line[0], (line[1].count()?, line[2].count()?))?;
            }
            t if t.starts_with(|c: char| c == '-' || c.is_ascii_digit()) => rows.push(line),
            _ => return Err(unknown(line)),
        }
    }
    let (_, geometry) = geometry.get()?;
    let (torus_line, (w, h)) = torus.get()?;
    let dims = match geometry {
        Geometry::Triangular => TorusDims::triangular(w, h),
        Geometry::Hexagonal => TorusDims::hexagonal(w, h),
    }
    .map_err(invalid(torus_line))?;
    if rows.len() != h {
        let line = rows.last().map_or(torus_line, |r| r[0].line);
        return Err(FormatError::Syntax {
            line,
            column: 1,
            message: format!("expected {h} rows, found {}", rows.len()),
        });
    }
    let mut cells = Vec::with_capacity(w * h);
    for (y, row) in rows.iter().enumerate() {
        if row.len() != w {
            let at = row.get(w).unwrap_or(&row[row.len() - 1]);
            return Err(at.error(format!("row {y} has {} values, expected {w}", row.len())));
        }
        for tok in row.iter() {
            cells.push(tok.int()?);
        }
    }
    Configuration::new(dims, cells).map_err(invalid(torus_line))
}

/// Rows in increasing `y`, each listing `x = 0..W`.
pub fn serialize_config(config: &Configuration) -> String {
    let dims = config.dims();
    let mut out = String::new();
    let _ = writeln!(out, "ncca-config v1");
    let _ = writeln!(out, "geometry {}", dims.geometry().name());
    let _ = writeln!(out, "torus {} {}", dims.width(), dims.height());
    for row in config.cells().chunks(dims.width()) {
        let line: Vec<String> = row.iter().map(State::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}
