//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! All comparisons are exact integer equality; each criterion also has a
//! wall-clock limit. Lines marked `known-red` are criteria that cannot hold
//! as stated; they are still run and still print FAIL, but do not fail the
//! suite.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use ncca_core::conservation::{oracle_vs_theorem_census, random_nc_test};
use ncca_core::lattice::hex_color;
use ncca_core::theory::{
    build_rule_from_flow, check_hex_eq1, check_hex_lemmas, check_nc_hex, extract_flow_hex,
    extract_flow_tri, random_closed_flow, Scope,
};
use ncca_core::xsim::{
    decode_payload_pair, lift_hex_to_tri, lift_tri_to_hex, random_corpus, verify_step_simulation,
    ConfigCodec, EmbeddingMap, HexInTriCodec, SimulationPair, TriInHexCodec,
};
use ncca_core::{
    step, total_sum, CellularAutomaton, FlowFunction, Geometry, LocalRule, Orientation, RuleTable,
    StateSet, Symmetry, TorusDims,
};

const SEED: u64 = 0x5eed;

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn check(ok: bool, detail: String) -> Outcome {
    Outcome { pass: ok, detail }
}

struct Suite {
    failed: Vec<String>,
    known_red: Vec<String>,
}

impl Suite {
    fn run(
        &mut self,
        id: &str,
        name: &str,
        limit: Duration,
        known_red: bool,
        f: impl FnOnce() -> Outcome,
    ) {
        let start = Instant::now();
        let mut out = f();
        let elapsed = start.elapsed();
        if elapsed > limit {
            out.pass = false;
            out.detail = format!("{}; over the {:.0?} limit", out.detail, limit);
        }
        let tag = if out.pass { "PASS" } else { "FAIL" };
        let red = if known_red && !out.pass {
            " [known-red]"
        } else {
            ""
        };
        println!("{tag} {id} {name}{red}: {} ({:.2?})", out.detail, elapsed);
        if !out.pass {
            if known_red {
                self.known_red.push(id.to_string());
            } else {
                self.failed.push(id.to_string());
            }
        }
    }
}

fn osmosis_t() -> CellularAutomaton {
    let f = FlowFunction::antisymmetric(StateSet::range(0, 3, 0).unwrap(), [(0, 3, 1)]).unwrap();
    build_rule_from_flow(f, Geometry::Triangular).unwrap()
}

fn osmosis_h() -> CellularAutomaton {
    let f = FlowFunction::antisymmetric(StateSet::range(1, 7, 1).unwrap(), [(1, 7, 1)]).unwrap();
    build_rule_from_flow(f, Geometry::Hexagonal).unwrap()
}

fn c1() -> Outcome {
    let mut mismatches = 0;
    let mut distinct = [BTreeSet::new(), BTreeSet::new()];
    for (slot, geometry, lo, hi) in [
        (0, Geometry::Triangular, 0, 3),
        (1, Geometry::Hexagonal, 1, 7),
    ] {
        for i in 0..100u64 {
            let q = lo + (i as i64 % (hi - lo + 1));
            let states = StateSet::range(lo, hi, q).unwrap();
            let f = random_closed_flow(&states, geometry, 64, SEED + i);
            let ca = match build_rule_from_flow(f.clone(), geometry) {
                Ok(ca) => ca,
                Err(_) => {
                    mismatches += 1;
                    continue;
                }
            };
            let back = match geometry {
                Geometry::Triangular => extract_flow_tri(&ca),
                Geometry::Hexagonal => extract_flow_hex(&ca),
            };
            if back.as_ref() != Ok(&f) {
                mismatches += 1;
            }
            distinct[slot].insert(f.nonzero().collect::<Vec<_>>());
        }
    }
    check(
        mismatches == 0,
        format!(
            "200 flows, {mismatches} mismatches; distinct nonzero patterns tri={} hex={}",
            distinct[0].len(),
            distinct[1].len()
        ),
    )
}

fn c2() -> Outcome {
    let states = StateSet::range(0, 1, 0).unwrap();
    let dims = TorusDims::triangular(4, 4).unwrap();
    let c = match oracle_vs_theorem_census(Geometry::Triangular, &states, dims, 1 << 16, 1 << 16) {
        Ok(c) => c,
        Err(e) => return fail(e.to_string()),
    };
    let identity_only =
        c.conserving_rules.len() == 1 && c.conserving_rules[0].entries().all(|(g, _, r)| g == r);
    check(
        c.tables_enumerated == 1 << 16 && c.disagreements.is_empty() && c.oracle_unknown == 0 && identity_only,
        format!(
            "{} tables, {} symmetric, {} quiescent checked, {} disagreements, {} unknown, conserving: theorem {} oracle {} (identity only: {identity_only})",
            c.tables_enumerated,
            c.symmetric,
            c.checked,
            c.disagreements.len(),
            c.oracle_unknown,
            c.theorem_conserving,
            c.oracle_conserving
        ),
    )
}

fn c3() -> Outcome {
    let ca = osmosis_h();
    let table = RuleTable::from_fn(
        Geometry::Hexagonal,
        ca.states().clone(),
        Symmetry::Permutation,
        |g, ns| ca.eval(g, ns),
    )
    .unwrap();
    let run = |t: &RuleTable| {
        let nc = check_nc_hex(t).unwrap();
        let lemmas = check_hex_lemmas(t).unwrap();
        let eq1 = check_hex_eq1(t, Scope::Exhaustive).unwrap();
        (nc, lemmas, eq1)
    };
    let (nc, lemmas, eq1) = run(&table);
    let clean = nc.conserving && lemmas.all_pass() && eq1.is_none();

    let perturbed = table.with_entry(1, &[2, 3, 1, 1, 1, 1], 2).unwrap();
    let (pnc, plemmas, peq1) = run(&perturbed);
    let failing_lemmas: Vec<usize> = (0..4)
        .filter(|&i| plemmas.lemmas[i].is_some())
        .map(|i| i + 1)
        .collect();
    let caught = !pnc.conserving && !plemmas.all_pass() && peq1.is_some();
    let mut detail = format!(
        "osmosis-H: nc={} lemmas={} eq1={}; perturbed (1;2,3,1,1,1,1)->2: nc witness {:?}, failing lemmas {:?}",
        nc.conserving,
        lemmas.all_pass(),
        eq1.is_none(),
        pnc.failure,
        failing_lemmas
    );
    if let Some(w) = &peq1 {
        detail.push_str(&format!(
            ", eq1 witness {:?} lhs={} rhs={}",
            w.tuple, w.lhs, w.rhs
        ));
    }
    check(clean && caught, detail)
}

fn c4() -> Outcome {
    let t = random_nc_test(
        &osmosis_t(),
        TorusDims::triangular(6, 6).unwrap(),
        1000,
        100,
        SEED,
    );
    let h = random_nc_test(
        &osmosis_h(),
        TorusDims::hexagonal(6, 6).unwrap(),
        1000,
        100,
        SEED,
    );
    match (t, h) {
        (Ok(t), Ok(h)) => check(
            t.conserving() && h.conserving(),
            format!(
                "tri 6x6: {} configs x 100 steps conserving={}; hex 6x6: {} configs x 100 steps conserving={}",
                t.configs_checked,
                t.conserving(),
                h.configs_checked,
                h.conserving()
            ),
        ),
        (t, h) => fail(format!("{:?} {:?}", t.err(), h.err())),
    }
}

/// Number of simple cycles of length `len` in a simple graph.
fn count_cycles(adj: &[BTreeSet<usize>], len: usize) -> usize {
    fn walk(
        adj: &[BTreeSet<usize>],
        start: usize,
        cur: usize,
        depth: usize,
        len: usize,
        seen: &mut Vec<bool>,
    ) -> usize {
        let mut n = 0;
        for &next in &adj[cur] {
            if next == start && depth == len {
                n += 1;
            } else if next > start && !seen[next] && depth < len {
                seen[next] = true;
                n += walk(adj, start, next, depth + 1, len, seen);
                seen[next] = false;
            }
        }
        n
    }
    let mut total = 0;
    let mut seen = vec![false; adj.len()];
    for s in 0..adj.len() {
        seen[s] = true;
        total += walk(adj, s, s, 1, len, &mut seen);
        seen[s] = false;
    }
    // Each cycle is found once per direction from its least vertex.
    total / 2
}

fn tri_graph(dims: TorusDims) -> Vec<BTreeSet<usize>> {
    dims.cells()
        .map(|c| dims.neighbors(c).iter().map(|&n| dims.index(n)).collect())
        .collect()
}

/// Class-0/1 subgraph of a hexagonal torus.
fn hex_state_graph(dims: TorusDims) -> Vec<BTreeSet<usize>> {
    let cells: Vec<_> = dims
        .cells()
        .filter(|&c| hex_color(c).value() != 2)
        .collect();
    let pos = |c| cells.iter().position(|&d| d == c);
    cells
        .iter()
        .map(|&c| dims.neighbors(c).iter().filter_map(|&n| pos(n)).collect())
        .collect()
}

fn c5_verify(tri: TorusDims, hex: TorusDims) -> Result<String, String> {
    let t = osmosis_t();
    let (h, params) = lift_tri_to_hex(&t, None).map_err(|e| e.to_string())?;
    let codec = TriInHexCodec::new(tri, hex, params.spacer, t.states().clone())
        .map_err(|e| e.to_string())?;
    let corpus = random_corpus(tri, t.states().states(), 500, SEED);
    let pair = SimulationPair {
        simulator: &h,
        simulated: &t,
        tau: 1,
        codec: &codec,
    };
    let report = verify_step_simulation(&pair, corpus.iter().cloned());
    if let Some(f) = report.failure {
        return Err(format!("config {} failed: {:?}", f.index, f.kind));
    }
    // Spacers stay put and the sum is constant over a longer run.
    for c in corpus.iter().take(100) {
        let mut cur = codec.encode(c).map_err(|e| e.to_string())?;
        let sum = total_sum(&cur);
        for s in 0..20 {
            cur = step(&h, &cur).map_err(|e| e.to_string())?;
            let spacers_ok = hex
                .cells()
                .filter(|&x| hex_color(x).value() == 2)
                .all(|x| cur.get(x) == params.spacer);
            if !spacers_ok || total_sum(&cur) != sum {
                return Err(format!("spacer or sum drift at step {}", s + 1));
            }
        }
    }
    Ok(format!(
        "q'={}, {} configs: rho(F_H(kappa c)) = F_T(c), spacers fixed and sum constant over 20 steps",
        params.spacer, report.checked
    ))
}

fn c5_stated() -> Outcome {
    let hex = TorusDims::hexagonal(6, 6).unwrap();
    let target = hex_state_graph(hex);
    let sig = |g: &[BTreeSet<usize>]| (count_cycles(g, 4), count_cycles(g, 6));
    let hex_sig = sig(&target);
    let mut notes = Vec::new();
    for (w, h) in [(4, 6), (6, 4), (12, 2)] {
        let tri = TorusDims::triangular(w, h).unwrap();
        match EmbeddingMap::tri_in_hex(tri, hex) {
            Ok(_) => return check(c5_verify(tri, hex).is_ok(), format!("embedded tri {w}x{h}")),
            Err(_) => notes.push(format!("tri {w}x{h} (C4,C6)={:?}", sig(&tri_graph(tri)))),
        }
    }
    fail(format!(
        "no 24-cell triangular torus embeds in hex 6x6: its class-0/1 graph has (C4,C6)={hex_sig:?}, vs {} (2x12 is not a valid torus)",
        notes.join(", ")
    ))
}

fn c5_variant() -> Outcome {
    let tri = TorusDims::triangular(12, 4).unwrap();
    let hex = TorusDims::hexagonal(12, 6).unwrap();
    match c5_verify(tri, hex) {
        Ok(d) => pass(format!("tri 12x4 in hex 12x6: {d}")),
        Err(e) => fail(e),
    }
}

fn c6() -> Outcome {
    let hca = osmosis_h();
    let (t, params) = match lift_hex_to_tri(&hca, None) {
        Ok(x) => x,
        Err(e) => return fail(e.to_string()),
    };
    let expected_p: Vec<i64> = (0..7).map(|i| 1 << (3 + i)).collect();
    if params.bound != 8 || params.payloads != expected_p {
        return fail(format!("M={} p={:?}", params.bound, params.payloads));
    }
    let hex = TorusDims::hexagonal(2, 4).unwrap();
    let codec = HexInTriCodec::new(hex, hca.states().clone()).unwrap();
    let map = codec.map().clone();
    let tri = map.target();
    let corpus = random_corpus(hex, hca.states().states(), 500, SEED);
    for (idx, c) in corpus.iter().enumerate() {
        let enc = codec.encode(c).unwrap();
        let sum = total_sum(&enc);
        let one = match step(&t, &enc) {
            Ok(x) => x,
            Err(e) => return fail(format!("config {idx}: step 1: {e}")),
        };
        for cell in tri.cells() {
            let v = one.get(cell);
            match ncca_core::lattice::tri_orientation(cell) {
                Orientation::Up => {
                    let s = enc.get(cell);
                    if v != s - 3 * params.payload_of(s).unwrap() {
                        return fail(format!(
                            "config {idx}: state cell {cell:?} holds {v} after step 1"
                        ));
                    }
                }
                Orientation::Down => {
                    let want: i64 = tri
                        .neighbors(cell)
                        .iter()
                        .map(|&n| params.payload_of(enc.get(n)).unwrap())
                        .sum();
                    if v != want {
                        return fail(format!(
                            "config {idx}: gatherer {cell:?} holds {v}, want {want}"
                        ));
                    }
                }
            }
        }
        let two = match step(&t, &one) {
            Ok(x) => x,
            Err(e) => return fail(format!("config {idx}: step 2: {e}")),
        };
        if tri
            .cells()
            .any(|x| ncca_core::lattice::tri_orientation(x) == Orientation::Down && two.get(x) != 0)
        {
            return fail(format!("config {idx}: gatherer nonzero after step 2"));
        }
        if total_sum(&one) != sum || total_sum(&two) != sum {
            return fail(format!("config {idx}: sum drift"));
        }
        if codec.decode(&two).ok() != step(&hca, c).ok() {
            return fail(format!("config {idx}: rho(F_T^2(kappa c)) != F_H(c)"));
        }
    }
    let pair = SimulationPair {
        simulator: &t,
        simulated: &hca,
        tau: 2,
        codec: &codec,
    };
    let report = verify_step_simulation(&pair, corpus);
    check(
        report.passed(),
        format!(
            "M=8, p=8..512, |Q_T|={}, {} configs on hex 2x4 / tri 4x4: step-1 payload sums, step-2 empty gatherers, constant sums, exact decode",
            t.states().len(),
            report.checked
        ),
    )
}

fn c7() -> Outcome {
    let p: Vec<i64> = (0..7).map(|i| 8 << i).collect();
    let mut ok = 0;
    let mut bad = Vec::new();
    for j in 0..7 {
        for k in j..7 {
            match decode_payload_pair(p[j] + p[k], &p) {
                Ok(r) if r == (j, k) => ok += 1,
                r => bad.push(format!("{{{j},{k}}} -> {r:?}")),
            }
        }
    }
    // Gatherer 48 = p0+p0+p2 = p1+p1+p1; each receiver removes its own payload.
    let collision = [(0, (0, 2)), (2, (0, 0)), (1, (1, 1))];
    let resolved = collision
        .iter()
        .all(|&(i, want)| decode_payload_pair(48 - p[i], &p) == Ok(want));
    check(
        ok == 28 && bad.is_empty() && resolved,
        format!("{ok}/28 pairs decoded {bad:?}; collision 8+8+32 = 16+16+16 resolved per receiver: {resolved}"),
    )
}

fn c8() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (tri, hex) in [((12, 4), (12, 6)), ((6, 2), (6, 3))] {
        let tri_d = TorusDims::triangular(tri.0, tri.1).unwrap();
        let hex_d = TorusDims::hexagonal(hex.0, hex.1).unwrap();
        match EmbeddingMap::tri_in_hex(tri_d, hex_d) {
            Ok(map) => {
                let counts = tri_d
                    .cells()
                    .all(|c| map.designated_neighbors(map.image(c)).len() == 3);
                ok &= map.verify_adjacency().is_ok() && counts;
                notes.push(format!(
                    "tri {}x{} in hex {}x{}: 3 neighbors each {counts}",
                    tri.0, tri.1, hex.0, hex.1
                ));
            }
            Err(e) => {
                ok = false;
                notes.push(e.to_string());
            }
        }
    }
    let hex = TorusDims::hexagonal(2, 4).unwrap();
    match EmbeddingMap::hex_in_tri(hex) {
        Ok(map) => {
            let counts = hex
                .cells()
                .all(|c| map.designated_neighbors(map.image(c)).len() == 6);
            ok &= map.verify_adjacency().is_ok() && counts;
            notes.push(format!(
                "hex 2x4 in tri 4x4: 6 through-gatherer neighbors each {counts}"
            ));
        }
        Err(e) => {
            ok = false;
            notes.push(e.to_string());
        }
    }
    check(ok, notes.join("; "))
}

struct Cli {
    dir: tempfile::TempDir,
}

impl Cli {
    fn run(&self, args: &[&str]) -> Result<String, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_ncca"))
            .args(args)
            .current_dir(self.dir.path())
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!(
                "`ncca {}` exited {:?}: {}",
                args.join(" "),
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        Ok(String::from_utf8_lossy(&out.stdout).into_owned())
    }
}

fn c9() -> Outcome {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let cli = Cli {
        dir: tempfile::tempdir().unwrap(),
    };
    let d = |name: &str| data.join(name).to_string_lossy().into_owned();
    let mut steps = 0;
    let mut run = |args: &[&str]| {
        steps += 1;
        cli.run(args)
    };
    let result = (|| -> Result<(), String> {
        for (flow, config, dir, brute, sim) in [
            (
                "osmosis-t.flow",
                "osmosis-t.config",
                "tri-to-hex",
                "4x2",
                "12x4",
            ),
            (
                "osmosis-h.flow",
                "osmosis-h.config",
                "hex-to-tri",
                "2x2",
                "2x4",
            ),
        ] {
            let (flow, config) = (d(flow), d(config));
            run(&["build-rule", "--flow", &flow, "-o", "rule"])?;
            let theorem = run(&["check-nc", "--rule", "rule", "--method", "theorem"])?;
            let brute = run(&[
                "check-nc", "--rule", "rule", "--method", "brute", "--torus", brute,
            ])?;
            if !theorem.contains("conserving=true") || !brute.contains("conserving=true") {
                return Err(format!("{flow}: {theorem}{brute}"));
            }
            run(&["lift", "--dir", dir, "--flow", &flow, "-o", "lifted.flow"])?;
            let sim_flag = if dir == "tri-to-hex" {
                "--tri"
            } else {
                "--hex"
            };
            let sim_args = [
                "verify-sim",
                "--dir",
                dir,
                sim_flag,
                &flow,
                "--torus",
                sim,
                "--trials",
                "200",
                "--seed",
                "11",
            ];
            let a = run(&sim_args)?;
            if !a.contains("passed=true") || a != run(&sim_args)? {
                return Err(format!(
                    "{flow}: verify-sim not passing or not reproducible"
                ));
            }
            run(&[
                "step",
                "--rule",
                "rule",
                "--config",
                &config,
                "--steps",
                "3",
                "-o",
                "stepped.config",
            ])?;
            for format in ["svg", "ppm"] {
                let once = run(&["render", "--config", "stepped.config", "--format", format])?;
                if once.is_empty()
                    || once != run(&["render", "--config", "stepped.config", "--format", format])?
                {
                    return Err(format!("{flow}: {format} render not deterministic"));
                }
            }
            let random = [
                "check-nc", "--flow", &flow, "--method", "random", "--torus", sim, "--seed", "5",
            ];
            if run(&random)? != run(&random)? {
                return Err(format!("{flow}: random check not reproducible"));
            }
        }
        Ok(())
    })();
    match result {
        Ok(()) => pass(format!(
            "{steps} invocations, all exit 0; seeded outputs byte-identical across reruns"
        )),
        Err(e) => fail(e),
    }
}

type Criterion = (&'static str, &'static str, u64, bool, fn() -> Outcome);

fn main() {
    // `cargo test` passes harness flags such as `--quiet`; a filter argument
    // restricts the run to criteria whose id contains it.
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut suite = Suite {
        failed: Vec::new(),
        known_red: Vec::new(),
    };
    let criteria: [Criterion; 10] = [
        ("C1", "flow round trip", 5, false, c1),
        (
            "C2",
            "theorem/oracle agreement, tri {0,1} on 4x4",
            120,
            false,
            c2,
        ),
        ("C3", "hexagonal identity suite", 30, false, c3),
        ("C4", "conservation dynamics", 60, false, c4),
        ("C5", "T in H, hex 6x6 as stated", 30, true, c5_stated),
        ("C5b", "T in H, tri 12x4 in hex 12x6", 30, false, c5_variant),
        ("C6", "H in T, hex 2x4 in tri 4x4", 30, false, c6),
        ("C7", "payload decoding", 1, false, c7),
        ("C8", "embedding adjacency", 1, false, c8),
        ("C9", "CLI end to end", 120, false, c9),
    ];
    for (id, name, secs, red, f) in criteria {
        if filter.as_deref().map_or(true, |p| id.contains(p)) {
            suite.run(id, name, Duration::from_secs(secs), red, f);
        }
    }
    println!(
        "acceptance: {} failed {:?}, {} known-red {:?}",
        suite.failed.len(),
        suite.failed,
        suite.known_red.len(),
        suite.known_red
    );
    if !suite.failed.is_empty() {
        std::process::exit(1);
    }
}
