use std::collections::BTreeSet;
use std::io::{self, Write};
use std::path::PathBuf;

use quadsg::cache::{self, MEMO_PATH_VAR};
use quadsg::embedding::EMBEDDING_EQ_TABLE;
use quadsg::invariants::{summarize, InvariantSummary};
use quadsg::search::{g_curve, CertificateTable, HitValues};
use quadsg::semigroup::gcd;
use quadsg::*;
use serde::Serialize;
use serde_json::json;

use crate::args::{CertifyTable, Command, Format, InvariantsArgs, Pair, SearchKind};

pub const TGRID_LIMIT: u64 = 500;

#[derive(Debug)]
pub enum Failure {
    Domain(Error),
    Verification(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// μ up to `n_max`, through the on-disk cache when `QUADSG_MEMO_PATH` is set.
fn mu_table(n_max: u64) -> Result<MuTable> {
    match std::env::var_os(MEMO_PATH_VAR) {
        Some(path) if !path.is_empty() => cache::load_or_build(&PathBuf::from(path), n_max),
        _ => MuTable::build(n_max),
    }
}

fn semigroup(pair: Pair) -> Result<QuadraticSemigroup> {
    QuadraticSemigroup::new(pair.a, pair.b)
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::Writer::from_writer(out)
}

fn real(x: f64) -> String {
    format!("{x:.9}")
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn run(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Mu { n, oracle } => mu(n, oracle, out),
        Command::Bounds { n_max, format } => bounds(n_max, format, out),
        Command::Semigroup { pair, last, format } => describe(pair, last, format, out),
        Command::Apery {
            pair,
            oracle,
            format,
        } => apery(pair, oracle, format, out),
        Command::Frobenius { pair, oracle } => {
            let s = semigroup(pair)?;
            let f = if oracle {
                frobenius_oracle(&s)?
            } else {
                frobenius(&s, &mu_table(pair.a)?)?
            };
            writeln!(out, "{f}")?;
            Ok(())
        }
        Command::Genus { pair, oracle } => {
            let s = semigroup(pair)?;
            let g = if oracle {
                genus_oracle(&s)?
            } else {
                genus(&s, &mu_table(pair.a)?)?
            };
            writeln!(out, "{g}")?;
            Ok(())
        }
        Command::Invariants(args) => invariants(args, out),
        Command::Embedding {
            pair,
            oracle,
            certify,
            format,
        } => embedding(pair, oracle, certify, format, out),
        Command::Search {
            kind,
            a_max,
            raw,
            threads,
            format,
        } => search(kind, a_max, raw, threads, format, out, err),
        Command::GAnalysis {
            curve,
            lo,
            hi,
            step,
            format,
        } => g_report(curve, (lo, hi, step), format, out),
        Command::Certify {
            all: _,
            table,
            threads,
            format,
        } => certify(table, threads, format, out),
        Command::Tgrid { m_max, n_max } => tgrid(m_max, n_max, out),
    }
}

fn mu(n: u64, oracle: bool, out: &mut dyn Write) -> Outcome {
    let value = mu_table(n)?.mu(n)?;
    if oracle {
        let check = mu_oracle(n)?;
        if check != value {
            return Err(Failure::Verification(format!(
                "mu({n}): recursion gives {value}, exhaustive search gives {check}"
            )));
        }
    }
    writeln!(out, "{value}")?;
    Ok(())
}

fn bounds(n_max: u64, format: Format, out: &mut dyn Write) -> Outcome {
    let mut table = mu_table(n_max)?;
    let rows = bounds_profile(&mut table, n_max)?;
    match format {
        Format::Json => write_json(out, &rows),
        Format::Csv | Format::Plain => {
            let delimiter = if format == Format::Plain { b' ' } else { b',' };
            let mut w = csv::WriterBuilder::new()
                .delimiter(delimiter)
                .from_writer(out);
            w.write_record(["n", "mu", "lower", "gauss", "combined"])?;
            for r in rows {
                w.write_record([
                    r.n.to_string(),
                    r.mu.to_string(),
                    real(r.lower),
                    real(r.gauss),
                    real(r.combined),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn describe(pair: Pair, last: u64, format: Format, out: &mut dyn Write) -> Outcome {
    let d = semigroup(pair)?.describe(last)?;
    match format {
        Format::Json => write_json(out, &d),
        Format::Plain => {
            writeln!(
                out,
                "S({},{}) generators: {}",
                d.a,
                d.b,
                join(&d.generators)
            )?;
            Ok(())
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "y"])?;
            for (n, y) in d.generators.iter().enumerate() {
                w.write_record([n.to_string(), y.to_string()])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn apery_set(s: &QuadraticSemigroup, oracle: bool) -> Result<AperySet> {
    if oracle || s.is_trivial() {
        apery_oracle(s)
    } else {
        apery_closed(s, &mu_table(s.a())?)
    }
}

fn apery(pair: Pair, oracle: bool, format: Format, out: &mut dyn Write) -> Outcome {
    let s = semigroup(pair)?;
    let ap = apery_set(&s, oracle)?;
    match format {
        Format::Plain => writeln!(out, "{}", join(&ap.sorted()))?,
        Format::Json => write_json(
            out,
            &json!({
                "a": s.a(),
                "b": s.b(),
                "modulus": ap.modulus(),
                "by_residue": ap.elements(),
                "sorted": ap.sorted(),
                "frobenius": ap.frobenius(),
                "genus": ap.genus(),
            }),
        )?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["residue", "element"])?;
            for (k, e) in ap.elements().iter().enumerate() {
                w.write_record([k.to_string(), e.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

const SWEEP_HEADER: [&str; 8] = [
    "a",
    "b",
    "frobenius",
    "genus",
    "F_lo",
    "F_hi",
    "g_lo",
    "g_hi",
];

fn sweep_record(s: &InvariantSummary) -> Vec<String> {
    let bound = |b: Option<BoundPair>, pick: fn(&BoundPair) -> f64| {
        b.as_ref().map(pick).map(real).unwrap_or_default()
    };
    vec![
        s.a.to_string(),
        s.b.to_string(),
        s.frobenius.to_string(),
        s.genus.to_string(),
        bound(s.frobenius_bounds, |b| b.lower),
        bound(s.frobenius_bounds, |b| b.upper),
        bound(s.genus_bounds, |b| b.lower),
        bound(s.genus_bounds, |b| b.upper),
    ]
}

fn invariants(args: InvariantsArgs, out: &mut dyn Write) -> Outcome {
    let summaries = match (args.a, args.b, args.a_max, args.b_max) {
        (Some(a), Some(b), _, _) => {
            let s = QuadraticSemigroup::new(a, b)?;
            vec![summarize(&s, &mut mu_table(a)?)?]
        }
        (_, _, Some(a_max), Some(b_max)) => {
            let mut table = mu_table(a_max)?;
            let mut rows = Vec::new();
            for a in 2..=a_max {
                for b in 1..=b_max {
                    if gcd(a, b) == 1 {
                        rows.push(summarize(&QuadraticSemigroup::new(a, b)?, &mut table)?);
                    }
                }
            }
            rows
        }
        _ => {
            return Err(
                Error::Domain("give either --a and --b, or --a-max and --b-max".into()).into(),
            )
        }
    };
    let sweep = args.a_max.is_some();
    match args
        .format
        .unwrap_or(if sweep { Format::Csv } else { Format::Json })
    {
        Format::Json if sweep => write_json(out, &summaries),
        Format::Json => write_json(out, &summaries[0]),
        Format::Plain => {
            for s in &summaries {
                writeln!(
                    out,
                    "S({},{}): F = {}, g = {}",
                    s.a, s.b, s.frobenius, s.genus
                )?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(SWEEP_HEADER)?;
            for s in &summaries {
                w.write_record(sweep_record(s))?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn generator_set(s: &QuadraticSemigroup, oracle: bool) -> Result<MinimalGeneratorSet> {
    if oracle || s.is_trivial() {
        minimal_generators_oracle(s)
    } else {
        minimal_generators_closed(s)
    }
}

fn embedding(
    pair: Pair,
    oracle: bool,
    certify: bool,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let s = semigroup(pair)?;
    let set = generator_set(&s, oracle)?;
    let e = embedding_dimension(s.a(), s.b())?;
    let check = certify.then(|| minimal_generators_oracle(&s)).transpose()?;
    match format {
        Format::Json => write_json(
            out,
            &json!({
                "a": s.a(),
                "b": s.b(),
                "embedding_dimension": e,
                "indices": set.indices,
                "elements": set.elements,
                "exceptional": s.exception().is_some(),
                "certified": check.as_ref().map(|c| *c == set && c.embedding_dimension() == e),
            }),
        )?,
        Format::Plain => {
            writeln!(out, "e(S({},{})) = {e}", s.a(), s.b())?;
            writeln!(out, "indices: {}", join(&set.indices))?;
            writeln!(out, "elements: {}", join(&set.elements))?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["index", "element"])?;
            for (i, y) in set.indices.iter().zip(&set.elements) {
                w.write_record([i.to_string(), y.to_string()])?;
            }
            w.flush()?;
        }
    }
    if let Some(c) = check {
        if c != set || c.embedding_dimension() != e {
            return Err(Failure::Verification(format!(
                "S({},{}): closed form gives {:?} (e = {e}), brute force gives {:?}",
                s.a(),
                s.b(),
                set.indices,
                c.indices
            )));
        }
    }
    Ok(())
}

fn hit_record(hit: &SearchHit) -> [String; 5] {
    let (x, y, z) = match hit.values {
        HitValues::MuDrop {
            mu_n,
            mu_n_plus_a,
            drop,
        } => (mu_n, mu_n_plus_a, drop),
        HitValues::EmbeddingEq {
            binom,
            residue,
            mu_residue,
        } => (binom, residue, mu_residue),
    };
    [
        hit.a.to_string(),
        hit.n.to_string(),
        x.to_string(),
        y.to_string(),
        z.to_string(),
    ]
}

fn search(
    kind: SearchKind,
    a_max: Option<u64>,
    raw: bool,
    threads: Option<usize>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let (report, header) = match kind {
        SearchKind::MuDrop => {
            if raw {
                return Err(Error::Domain("--raw applies to embedding-eq only".into()).into());
            }
            let a_max = a_max.unwrap_or(485);
            let mut table = mu_table(2 * a_max)?;
            (
                search_mu_drop(a_max, &mut table, threads)?,
                ["a", "n", "mu_n", "mu_n_plus_a", "drop"],
            )
        }
        SearchKind::EmbeddingEq => {
            let a_max = a_max.unwrap_or(655);
            let mut table = mu_table(a_max)?;
            (
                search_embedding_eq(a_max, raw, &mut table, threads)?,
                ["a", "n", "binom", "residue", "mu_residue"],
            )
        }
    };
    match format {
        Format::Json => write_json(out, &report)?,
        Format::Csv | Format::Plain => {
            let mut w = csv_writer(out);
            w.write_record(header)?;
            for hit in &report.hits {
                w.write_record(hit_record(hit))?;
            }
            w.flush()?;
        }
    }
    if raw {
        let found: BTreeSet<(u64, u64)> = report.pairs().into_iter().collect();
        let listed: BTreeSet<(u64, u64)> = EMBEDDING_EQ_TABLE
            .iter()
            .filter(|r| r.a <= report.a_max)
            .map(|r| (r.a, r.n))
            .collect();
        let extra: Vec<_> = found.difference(&listed).collect();
        let missing: Vec<_> = listed.difference(&found).collect();
        writeln!(
            err,
            "raw search: {} hits, {} in the table",
            found.len(),
            listed.len()
        )?;
        writeln!(err, "not in table: {extra:?}")?;
        writeln!(err, "table rows not found: {missing:?}")?;
    }
    Ok(())
}

fn g_report(
    curve: bool,
    (lo, hi, step): (f64, f64, f64),
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    if curve {
        let points = g_curve(lo, hi, step)?;
        if format == Format::Json {
            let rows: Vec<_> = points
                .iter()
                .map(|&(a, g)| json!({"a": a, "g": g}))
                .collect();
            return write_json(out, &rows);
        }
        let mut w = csv_writer(out);
        w.write_record(["a", "g"])?;
        for (a, g) in points {
            w.write_record([real(a), real(g)])?;
        }
        w.flush()?;
        return Ok(());
    }
    let g = g_analysis()?;
    let rows = [
        ("local_max_location", g.local_max_location),
        ("local_max_value", g.local_max_value),
        ("root_at_2", g.root_at_2),
        ("root_at_1", g.root_at_1),
    ];
    match format {
        Format::Json => write_json(out, &g)?,
        Format::Plain => {
            for (name, value) in rows {
                writeln!(out, "{name} {}", real(value))?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["quantity", "value"])?;
            for (name, value) in rows {
                w.write_record([name.to_string(), real(value)])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CertifyLine {
    table: &'static str,
    a: u64,
    n: u64,
    claim: String,
    passed: bool,
}

fn table_name(t: CertificateTable) -> &'static str {
    match t {
        CertificateTable::MuExceptions => "mu-exceptions",
        CertificateTable::EmbeddingEq => "embedding-eq",
        CertificateTable::ExceptionalGenerators => "exceptional-generators",
    }
}

fn wanted(selected: Option<CertifyTable>, t: CertifyTable) -> bool {
    selected.is_none_or(|s| s == t)
}

fn certify(
    selected: Option<CertifyTable>,
    threads: Option<usize>,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let mut table = mu_table(2 * 485)?;
    let mut lines = Vec::new();
    for c in exception_certificates(&mut table)? {
        let kind = match c.table {
            CertificateTable::MuExceptions => CertifyTable::MuExceptions,
            CertificateTable::EmbeddingEq => CertifyTable::EmbeddingEq,
            CertificateTable::ExceptionalGenerators => CertifyTable::ExceptionalGenerators,
        };
        if wanted(selected, kind) {
            lines.push(CertifyLine {
                table: table_name(c.table),
                a: c.a,
                n: c.n,
                claim: c.claim,
                passed: c.passed,
            });
        }
    }
    if wanted(selected, CertifyTable::Searches) {
        let drop = search_mu_drop(485, &mut table, threads)?.pairs();
        let expected: Vec<_> = EXCEPTIONS.iter().map(|e| (e.a, e.n)).collect();
        lines.push(CertifyLine {
            table: "searches",
            a: 485,
            n: drop.len() as u64,
            claim: format!(
                "mu-drop search up to a = 485 finds exactly the {} exceptional pairs",
                expected.len()
            ),
            passed: drop == expected,
        });
        let eq = search_embedding_eq(655, false, &mut table, threads)?.pairs();
        let expected: Vec<_> = EMBEDDING_EQ_TABLE.iter().map(|r| (r.a, r.n)).collect();
        lines.push(CertifyLine {
            table: "searches",
            a: 655,
            n: eq.len() as u64,
            claim: format!(
                "embedding-eq search up to a = 655 finds exactly the {} table rows",
                expected.len()
            ),
            passed: eq == expected,
        });
    }
    let failed = lines.iter().filter(|l| !l.passed).count();
    match format {
        Format::Json => write_json(out, &lines)?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["table", "a", "n", "claim", "passed"])?;
            for l in &lines {
                w.write_record([
                    l.table.to_string(),
                    l.a.to_string(),
                    l.n.to_string(),
                    l.claim.clone(),
                    l.passed.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Plain => {
            for l in &lines {
                let verdict = if l.passed { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{verdict} {:<22} ({},{}) {}",
                    l.table, l.a, l.n, l.claim
                )?;
            }
            let names = [
                "mu-exceptions",
                "embedding-eq",
                "exceptional-generators",
                "searches",
            ];
            for name in names {
                let rows: Vec<_> = lines.iter().filter(|l| l.table == name).collect();
                if !rows.is_empty() {
                    let ok = rows.iter().filter(|l| l.passed).count();
                    writeln!(out, "{name}: {ok}/{} passed", rows.len())?;
                }
            }
        }
    }
    if failed > 0 {
        return Err(Failure::Verification(format!(
            "{failed} certificate(s) failed"
        )));
    }
    Ok(())
}

fn tgrid(m_max: u64, n_max: u64, out: &mut dyn Write) -> Outcome {
    if m_max > TGRID_LIMIT || n_max > TGRID_LIMIT {
        return Err(
            Error::Domain(format!("tgrid is limited to {TGRID_LIMIT} x {TGRID_LIMIT}")).into(),
        );
    }
    let table = mu_table(n_max)?;
    let mut w = csv_writer(out);
    w.write_record(["m", "n", "in_T"])?;
    for m in 0..m_max {
        for n in 0..n_max {
            w.write_record([
                m.to_string(),
                n.to_string(),
                table.lift_contains(m, n)?.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
