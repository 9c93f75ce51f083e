use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use symqca::anyon;
use symqca::deffile::{self, Definitions};
use symqca::index::{self, AlgebraSpec, IntervalPair};
use symqca::oracle;
use symqca::qca::{self, QcaMap};
use symqca::sample::{self, DEFAULT_SEED};
use symqca::{Error, FiniteAbelianGroup, Interval};

#[derive(Parser, Debug)]
#[command(name = "symqca", version, about = "Index and anyon invariants of symmetric Pauli QCAs")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, env = "SYMQCA_SEED")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a definition is a symmetric locality-preserving automorphism.
    Validate {
        /// Definition file, optionally `FILE#NAME` to pick a named map.
        #[arg(long)]
        qca: String,
    },
    /// Compute the index over several interval placements.
    Index {
        #[arg(long)]
        qca: String,
        /// Explicit placement `LO:HI,LO:HI` for I- and I+; repeatable.
        #[arg(long = "pair", allow_hyphen_values = true)]
        pairs: Vec<String>,
        /// Number of default placements when no `--pair` is given.
        #[arg(long, default_value_t = 5)]
        placements: usize,
    },
    /// String transformation data and the induced anyon permutation.
    Anyons {
        #[arg(long)]
        qca: String,
    },
    /// Decide whether two maps agree up to a finite-depth symmetric circuit.
    Equiv {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Dense cross-checks on small chains.
    Oracle {
        #[arg(long, value_enum, default_value_t = Check::All)]
        check: Check,
        /// Chain length for the selected check.
        #[arg(long)]
        sites: Option<usize>,
        /// Group factors for `algebra` and `choi`, e.g. `2,2`.
        #[arg(long, default_value = "2")]
        group: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Algebra,
    Choi,
    Eta,
    Fermion,
    Q8,
    All,
}

/// Exit status 1: the mathematics failed. Exit status 2: the input could not be used.
#[derive(Debug)]
enum Failure {
    Math { kind: String, message: String },
    Usage { kind: String, message: String },
}

impl Failure {
    fn usage(kind: &str, message: impl Into<String>) -> Self {
        Failure::Usage { kind: kind.into(), message: message.into() }
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Math { .. } => 1,
            Failure::Usage { .. } => 2,
        }
    }

    fn json(&self) -> Value {
        let (Failure::Math { kind, message } | Failure::Usage { kind, message }) = self;
        json!({ "error": { "kind": kind, "message": message } })
    }

    fn message(&self) -> &str {
        let (Failure::Math { message, .. } | Failure::Usage { message, .. }) = self;
        message
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = e.kind().to_string();
        let message = e.to_string();
        match e {
            Error::GroupMismatch(_)
            | Error::InvalidGroup(_)
            | Error::FactorOutOfRange { .. }
            | Error::InvalidAutomorphism(_)
            | Error::InvalidCocycle(_)
            | Error::Syntax { .. }
            | Error::ExponentOutOfRange { .. }
            | Error::Malformed(_)
            | Error::Geometry(_)
            | Error::Definition(_) => Failure::Usage { kind, message },
            _ => Failure::Math { kind, message },
        }
    }
}

/// A finished task: its report, a text rendering, and whether every invariant held.
struct Outcome {
    report: Value,
    text: String,
    ok: bool,
}

type Run = std::result::Result<Outcome, Failure>;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn load(spec: &str) -> std::result::Result<(Definitions, String, QcaMap), Failure> {
    let (path, name) = match spec.split_once('#') {
        Some((p, n)) => (p, Some(n)),
        None => (spec, None),
    };
    let path = PathBuf::from(path);
    if !path.is_file() {
        return Err(Failure::usage("io", format!("no such file: {}", path.display())));
    }
    let defs = deffile::load(Path::new(&path))?;
    let (name, m) = match name {
        Some(n) => (n.to_string(), defs.get(n)?.clone()),
        None => {
            let m = defs.main()?.clone();
            let n = if defs.names().iter().any(|x| x == deffile::MAIN) {
                deffile::MAIN.to_string()
            } else {
                defs.names()[0].clone()
            };
            (n, m)
        }
    };
    Ok((defs, name, m))
}

fn load_valid(spec: &str) -> std::result::Result<QcaMap, Failure> {
    let (_, _, m) = load(spec)?;
    qca::require_valid(&m)?;
    Ok(m)
}

fn validate(spec: &str) -> Run {
    let (_, name, m) = load(spec)?;
    let r = qca::validate(&m);
    let ok = r.is_valid();
    let mut text = format!("{name}: {}\n", if ok { "valid" } else { "INVALID" });
    text += &format!(
        "  symmetric images: {}\n  commutation preserved: {}\n  orders preserved: {}\n  invertible: {}\n  spread: {}\n",
        r.symmetric_images, r.commutation_preserved, r.orders_preserved, r.invertible, r.spread
    );
    for f in &r.failures {
        match &f.partner {
            Some(p) => text += &format!("  fails on ({}, {}): {}\n", f.generator, p, f.reason),
            None => text += &format!("  fails on {}: {}\n", f.generator, f.reason),
        }
    }
    let report = json!({ "name": name, "valid": ok, "report": to_value(&r), "map": to_value(&m) });
    Ok(Outcome { report, text, ok })
}

fn parse_interval(s: &str) -> std::result::Result<Interval, Failure> {
    let bad = || Failure::usage("usage", format!("expected LO:HI, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    Ok(Interval::new(lo, hi)?)
}

fn parse_pair(s: &str) -> std::result::Result<IntervalPair, Failure> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Failure::usage("usage", format!("expected LO:HI,LO:HI, got {s:?}")))?;
    Ok(IntervalPair::new(parse_interval(a)?, parse_interval(b)?)?)
}

fn index_cmd(spec: &str, pairs: &[String], count: usize) -> Run {
    let m = load_valid(spec)?;
    let placements = if pairs.is_empty() {
        if count == 0 {
            return Err(Failure::usage("usage", "--placements must be positive"));
        }
        index::default_placements(m.spread(), count)
    } else {
        pairs.iter().map(|p| parse_pair(p)).collect::<std::result::Result<Vec<_>, _>>()?
    };
    for (k, p) in placements.iter().enumerate() {
        p.check_geometry(m.spread())
            .map_err(|e| Failure::usage("geometry", format!("placement {k}: {e}")))?;
    }
    let rep = index::probe_global_invariance(&m, &placements)?;
    let mut text = format!("ind = {}\n", rep.index);
    for p in &rep.placements {
        text += &format!(
            "  I- = {}, I+ = {}: eta^2 = {} / {} -> {}\n",
            p.pair.minus, p.pair.plus, p.numerator, p.denominator, p.index
        );
    }
    if !rep.invariant {
        text += "  placements disagree\n";
    }
    let report = json!({
        "index": to_value(&rep.index),
        "value": rep.index.to_string(),
        "approx": rep.index.to_f64(),
        "invariant": rep.invariant,
        "placements": to_value(&rep.placements),
    });
    Ok(Outcome { report, text, ok: rep.invariant })
}

fn optional<T>(r: symqca::Result<T>) -> (Option<T>, Option<String>) {
    match r {
        Ok(x) => (Some(x), None),
        Err(e) => (None, Some(e.to_string())),
    }
}

fn anyons_cmd(spec: &str) -> Run {
    let m = load_valid(spec)?;
    let data = anyon::string_data(&m)?;
    let perm = anyon::AnyonPermutation::from_data(&data)?;
    let g = m.group().clone();
    let mut text = format!("group {g}\n");
    text += &format!("  sigma {:?}\n  mu {:?}\n  gamma {:?}\n  nu {:?}\n", data.sigma, data.mu, data.gamma, data.nu);
    text += &format!("  permutation matrix {:?}{}\n", perm.matrix(), if perm.is_identity() { " (identity)" } else { "" });
    let mut report = json!({
        "group": to_value(&g),
        "string_data": to_value(&data),
        "permutation": to_value(&perm),
    });
    if g.factors() == [2, 2] {
        let table = anyon::boson_table_z2z2(&perm)?;
        text += &format!("  boson table\n{}", table.render());
        report["boson_table"] = to_value(&table);
    }
    let (bich, why) = optional(anyon::bicharacter(&m));
    if let Some(b) = &bich {
        let rows: Vec<String> = b
            .table
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        text += &format!(
            "  bicharacter on generators [{}], symmetric {}, nondegenerate {}\n",
            rows.join("; "),
            b.symmetric,
            b.nondegenerate
        );
    }
    report["bicharacter"] = match (&bich, &why) {
        (Some(b), _) => to_value(b),
        (None, Some(w)) => json!({ "unavailable": w }),
        _ => Value::Null,
    };
    let (ty, _) = optional(anyon::ty_conditions(&m));
    if let Some((a, b)) = ty {
        text += &format!("  TY conditions: gamma injective {a}, square acts trivially {b}\n");
        report["ty_conditions"] = json!({ "gamma_injective": a, "square_trivial": b });
    }
    let (h2, _) = optional(anyon::h2_class(&m));
    if let Some(c) = &h2 {
        text += &format!("  H^2 class {c}\n");
    }
    report["h2_class"] = h2.as_ref().map(to_value).unwrap_or(Value::Null);
    let ok = perm.check().is_ok();
    Ok(Outcome { report, text, ok })
}

fn equiv_cmd(a: &str, b: &str) -> Run {
    let ma = load_valid(a)?;
    let mb = load_valid(b)?;
    let rec = anyon::equivalent(&ma, &mb)?;
    let text = format!(
        "equivalent: {}\n  same anyon permutation: {}\n  same index: {} ({} vs {})\n",
        rec.equivalent, rec.same_permutation, rec.same_index, rec.a.index, rec.b.index
    );
    Ok(Outcome { report: to_value(&rec), text, ok: true })
}

fn parse_group(s: &str) -> std::result::Result<FiniteAbelianGroup, Failure> {
    let f = s
        .split(',')
        .map(|x| x.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Failure::usage("usage", format!("bad group {s:?}")))?;
    Ok(FiniteAbelianGroup::new(f)?)
}

/// Largest ring whose doubled chain fits the dense limit.
fn choi_ring(n: u32) -> usize {
    let mut l = 2;
    while (n as usize).pow(2 * (l as u32 + 1)) <= oracle::MAX_DIM {
        l += 1;
    }
    l
}

fn check_algebra(g: &FiniteAbelianGroup, sites: Option<usize>, seed: u64) -> Run {
    let l = sites.unwrap_or(match g.order() {
        2 => 6,
        3 | 4 => 4,
        _ => 3,
    });
    let alg = oracle::algebra_agreement(g, l, 200, seed)?;
    let mut ok = alg.passed;
    let mut text = format!(
        "algebra on {g}, L = {l}: max deviation {:.1e}, mismatches {}/{}/{} -> {}\n",
        alg.max_product_deviation,
        alg.commutation_mismatches,
        alg.trace_mismatches,
        alg.charge_mismatches,
        pass(alg.passed)
    );
    let mut applied = Vec::new();
    for (name, m) in sample::builtins(g) {
        let ring = if name.starts_with("kw") && g.rank() == 1 { choi_ring(g.modulus(0)).min(l) } else { l };
        match oracle::apply_agreement(&name, &m, ring, 100, seed) {
            Ok(r) => {
                ok &= r.passed;
                text += &format!("  apply {name} ({}, L = {ring}): {:.1e} -> {}\n", r.method, r.max_residual, pass(r.passed));
                applied.push(to_value(&r));
            }
            Err(e) => {
                text += &format!("  apply {name}: skipped ({e})\n");
                applied.push(json!({ "map": name, "skipped": e.to_string() }));
            }
        }
    }
    Ok(Outcome { report: json!({ "algebra": to_value(&alg), "apply": applied }), text, ok })
}

fn check_choi(g: &FiniteAbelianGroup, sites: Option<usize>, seed: u64) -> Run {
    if g.rank() != 1 {
        return Err(Failure::usage("usage", "the Choi check needs a single cyclic factor"));
    }
    let n = g.modulus(0);
    let l = sites.unwrap_or_else(|| choi_ring(n).min(4));
    let r = oracle::choi_check(n, l, seed)?;
    let text = format!(
        "choi Z{n}, L = {l}: {} stabilizers ({} independent), uniqueness {:.1e}, intertwining {:.1e}, fusion {:.1e} -> {}\n",
        r.stabilizer_count,
        r.independent,
        r.uniqueness_defect,
        r.intertwining_residual,
        r.fusion_residual,
        pass(r.passed)
    );
    Ok(Outcome { report: to_value(&r), text, ok: r.passed })
}

fn check_eta(sites: Option<usize>) -> Run {
    let sites = sites.unwrap_or(7);
    if !(5..=12).contains(&sites) {
        return Err(Failure::usage("usage", "the eta check needs 5 <= L <= 12"));
    }
    let g = FiniteAbelianGroup::cyclic(2);
    let k = qca::kw(&g, 0)?;
    let t = qca::translate(&g, 0, 1)?;
    let xi = sites as u64 - 4;
    let p = IntervalPair::from_segments(0, 2, xi, 2)?;
    let mut rows = Vec::new();
    let mut ok = true;
    let mut text = format!("eta on Z2, I- = {}, I+ = {}\n", p.minus, p.plus);
    let cases: [(&str, AlgebraSpec, AlgebraSpec); 3] = [
        ("identity", AlgebraSpec::Symmetric(p.minus), AlgebraSpec::Symmetric(p.plus)),
        ("kw", AlgebraSpec::Image(&k, p.minus), AlgebraSpec::Symmetric(p.plus)),
        ("translate", AlgebraSpec::Image(&t, p.minus), AlgebraSpec::Symmetric(p.plus)),
    ];
    for (name, a, b) in &cases {
        let sym = match (a, b) {
            (AlgebraSpec::Symmetric(i), AlgebraSpec::Symmetric(j)) => index::eta_squared_symmetric(&g, *i, *j),
            _ => index::eta_squared(a, b)?,
        };
        let dense = oracle::dense_eta(&g, a, b, sites)?;
        let agree = sym.to_u64() == Some(dense);
        ok &= agree;
        text += &format!("  {name}: symbolic {} dense {dense} -> {}\n", sym.value(), pass(agree));
        rows.push(json!({ "map": name, "symbolic": sym.value().to_string(), "dense": dense, "agree": agree }));
    }
    Ok(Outcome { report: json!({ "sites": sites, "cases": rows, "passed": ok }), text, ok })
}

fn check_fermion(sites: Option<usize>) -> Run {
    let r = oracle::fermionization_check(sites.unwrap_or(6))?;
    let text = format!(
        "fermion L = {}: anticommutators {:.1e}, dense left dims {} / {}, symbolic {:?} / {:?}, ind {} -> {}\n",
        r.sites,
        r.max_anticommutator,
        r.dense_left_identity,
        r.dense_left_kw,
        r.symbolic_identity,
        r.symbolic_kw,
        r.kw_index_from_support,
        pass(r.passed)
    );
    Ok(Outcome { report: to_value(&r), text, ok: r.passed })
}

fn check_q8(sites: Option<usize>) -> Run {
    let r = oracle::rep_q8_defect(sites.unwrap_or(8))?;
    let text = format!(
        "q8 on {} qubits: U = {} (residual {:.1e}), endpoints {} / {}, chi = chi1 {}, ind {} -> {}\n",
        r.qubits,
        r.truncated,
        r.residual,
        r.left_endpoint,
        r.right_endpoint,
        r.matches_d1_bicharacter,
        r.index,
        pass(r.passed)
    );
    Ok(Outcome { report: to_value(&r), text, ok: r.passed })
}

fn pass(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn oracle_cmd(check: Check, sites: Option<usize>, group: &str, seed: u64) -> Run {
    let g = parse_group(group)?;
    let one = |c: Check, sites: Option<usize>| -> Run {
        match c {
            Check::Algebra => check_algebra(&g, sites, seed),
            Check::Choi => check_choi(&g, sites, seed),
            Check::Eta => check_eta(sites),
            Check::Fermion => check_fermion(sites),
            Check::Q8 => check_q8(sites),
            Check::All => unreachable!(),
        }
    };
    if check != Check::All {
        return one(check, sites);
    }
    let checks = [Check::Algebra, Check::Choi, Check::Eta, Check::Fermion, Check::Q8];
    let results: Vec<Run> = std::thread::scope(|s| {
        let handles: Vec<_> = checks.iter().map(|&c| s.spawn(move || one(c, None))).collect();
        handles.into_iter().map(|h| h.join().expect("check thread")).collect()
    });
    let mut report = serde_json::Map::new();
    let mut text = String::new();
    let mut ok = true;
    for (c, r) in checks.iter().zip(results) {
        let key = format!("{c:?}").to_lowercase();
        let o = r?;
        ok &= o.ok;
        text += &o.text;
        report.insert(key, o.report);
    }
    Ok(Outcome { report: Value::Object(report), text, ok })
}

fn run(cli: &Cli) -> Run {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    match &cli.command {
        Command::Validate { qca } => validate(qca),
        Command::Index { qca, pairs, placements } => index_cmd(qca, pairs, *placements),
        Command::Anyons { qca } => anyons_cmd(qca),
        Command::Equiv { a, b } => equiv_cmd(a, b),
        Command::Oracle { check, sites, group } => oracle_cmd(*check, *sites, group, seed),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let json_requested = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            if json_requested {
                let f = Failure::usage("usage", e.to_string().trim_end());
                emit(&format!("{}\n", f.json()));
            } else {
                let _ = e.print();
            }
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(o) => {
            if cli.json {
                emit(&format!("{}\n", serde_json::to_string_pretty(&o.report).expect("json")));
            } else {
                emit(&o.text);
            }
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            if cli.json {
                emit(&format!("{}\n", f.json()));
            } else {
                eprintln!("error: {}", f.message());
            }
            ExitCode::from(f.code())
        }
    }
}
