//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
//! its wall time; the test fails if any criterion fails or exceeds its limit.

use std::time::{Duration, Instant};

use quadsg::embedding::{EMBEDDING_EQ_TABLE, EXCEPTIONAL_GENERATOR_TABLE};
use quadsg::search::HitValues;
use quadsg::semigroup::{gcd, is_exceptional_pair, MuAbOracle};
use quadsg::*;

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: Error) -> String {
    e.to_string()
}

/// Coprime `(a, b)` with `2 <= a <= a_max`, `1 <= b <= b_max`.
fn grid(a_max: u64, b_max: u64) -> Vec<QuadraticSemigroup> {
    let mut out = Vec::new();
    for a in 2..=a_max {
        for b in 1..=b_max {
            if gcd(a, b) == 1 {
                out.push(QuadraticSemigroup::new(a, b).unwrap());
            }
        }
    }
    out
}

struct Suite {
    failures: Vec<String>,
}

impl Suite {
    fn run(&mut self, id: u32, name: &str, limit: Duration, check: impl FnOnce() -> Check) {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let verdict = match (&outcome, elapsed <= limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over the {:?} limit)", limit),
            (Err(msg), _) => format!("FAIL ({msg})"),
        };
        println!("criterion {id:>2} {name:<32} {elapsed:>12.3?}  {verdict}");
        if verdict != "PASS" {
            self.failures.push(format!("{id} {name}: {verdict}"));
        }
    }
}

fn c1_mu_base() -> Check {
    let t = MuTable::build(triangular(2000).map_err(e2s)?).map_err(e2s)?;
    ensure(t.values()[..3] == [0, 2, 4], || {
        format!("mu(0..3) = {:?}", &t.values()[..3])
    })?;
    for i in 2..=2000 {
        let n = triangular(i).map_err(e2s)?;
        let mu = t.mu(n).map_err(e2s)?;
        ensure(mu == i, || format!("mu(C({i},2)) = {mu}"))?;
    }
    Ok(())
}

fn c2_oracle() -> Check {
    let t = MuTable::build(300).map_err(e2s)?;
    for n in 0..=300 {
        let (dp, dfs) = (t.mu(n).map_err(e2s)?, mu_oracle(n).map_err(e2s)?);
        ensure(dp == dfs, || format!("n={n}: table {dp}, oracle {dfs}"))?;
    }
    Ok(())
}

fn c3_sandwich() -> Check {
    let mut t = MuTable::build(0).map_err(e2s)?;
    for r in bounds_profile(&mut t, 2000).map_err(e2s)? {
        let mu = r.mu as f64;
        let upper = r.gauss.min(r.combined);
        ensure(r.lower <= mu + 1e-9 && mu <= upper + 1e-9, || {
            format!("n={}: {} <= {} <= {} fails", r.n, r.lower, mu, upper)
        })?;
    }
    Ok(())
}

fn c4_mu_drop() -> Check {
    let mut t = MuTable::build(0).map_err(e2s)?;
    let report = search_mu_drop(485, &mut t, None).map_err(e2s)?;
    let expected: Vec<(u64, u64)> = EXCEPTIONS.iter().map(|e| (e.a, e.n)).collect();
    ensure(report.pairs() == expected, || {
        format!("hits {:?}", report.pairs())
    })?;
    for h in &report.hits {
        ensure(
            matches!(h.values, HitValues::MuDrop { drop: 2, .. }),
            || format!("({},{}) has {:?}", h.a, h.n, h.values),
        )?;
    }
    Ok(())
}

fn c5_certificates() -> Check {
    let mut t = MuTable::build(0).map_err(e2s)?;
    let certs = exception_certificates(&mut t).map_err(e2s)?;
    let mu_rows: Vec<_> = certs
        .iter()
        .filter(|c| c.table == quadsg::search::CertificateTable::MuExceptions)
        .collect();
    ensure(mu_rows.len() == 8, || format!("{} rows", mu_rows.len()))?;
    for c in &mu_rows {
        ensure(c.passed, || format!("({},{}) {}", c.a, c.n, c.claim))?;
    }
    // the headline witness, checked without the table
    let s = QuadraticSemigroup::new(29, 1).map_err(e2s)?;
    let mut m = Membership::new(s);
    ensure(
        s.project(12, 26).map_err(e2s)? == 374
            && s.generator(11).map_err(e2s)? == 374
            && m.contains(374).map_err(e2s)?
            && !m.contains(345).map_err(e2s)?,
        || "374 = y_11 in S(29,1), 345 not in S(29,1)".into(),
    )
}

fn c6_mu_ab() -> Check {
    let t = MuTable::build(100).map_err(e2s)?;
    for s in grid(100, 5) {
        let oracle = MuAbOracle::new(s).map_err(e2s)?;
        for n in 0..s.a() {
            let closed = mu_ab_closed(&s, n, &t).map_err(e2s)?;
            let brute = oracle.mu_ab(n as i64).map_err(e2s)?;
            ensure(closed == brute, || {
                format!(
                    "S({},{}) n={n}: closed {closed}, oracle {brute}",
                    s.a(),
                    s.b()
                )
            })?;
        }
    }
    Ok(())
}

fn c7_apery() -> Check {
    let t = MuTable::build(100).map_err(e2s)?;
    let s21 = QuadraticSemigroup::new(2, 1).map_err(e2s)?;
    let ap = apery_closed(&s21, &t).map_err(e2s)?;
    ensure(ap.sorted() == [0, 5], || {
        format!("Ap(S(2,1)) = {:?}", ap.sorted())
    })?;
    ensure(frobenius(&s21, &t).map_err(e2s)? == 3, || {
        "F(S(2,1)) != 3".into()
    })?;
    ensure(genus(&s21, &t).map_err(e2s)? == 2, || {
        "g(S(2,1)) != 2".into()
    })?;

    let mut exceptional_seen = 0;
    for s in grid(100, 5) {
        let (a, b) = (s.a(), s.b());
        exceptional_seen += is_exceptional_pair(a, b) as u32;
        let closed = apery_closed(&s, &t).map_err(e2s)?;
        let brute = apery_oracle(&s).map_err(e2s)?;
        ensure(closed == brute, || format!("Ap(S({a},{b})) differs"))?;
        let (fc, fo) = (
            frobenius(&s, &t).map_err(e2s)?,
            frobenius_oracle(&s).map_err(e2s)?,
        );
        ensure(fc == fo, || {
            format!("F(S({a},{b})): closed {fc}, oracle {fo}")
        })?;
        let (gc, go) = (genus(&s, &t).map_err(e2s)?, genus_oracle(&s).map_err(e2s)?);
        ensure(gc == go, || {
            format!("g(S({a},{b})): closed {gc}, oracle {go}")
        })?;
        ensure(closed.genus() == go, || {
            format!("Apéry genus of S({a},{b})")
        })?;
    }
    ensure(exceptional_seen == 8, || {
        format!("{exceptional_seen} exceptional pairs on grid")
    })
}

fn c8_bounds() -> Check {
    let t = MuTable::build(100).map_err(e2s)?;
    let fb = frobenius_bounds(2, 1).map_err(e2s)?;
    ensure(fb.lower == 3.0, || {
        format!("F lower bound at (2,1) is {}", fb.lower)
    })?;
    for s in grid(100, 5) {
        let (a, b) = (s.a(), s.b());
        if is_exceptional_pair(a, b) {
            continue;
        }
        let f = frobenius(&s, &t).map_err(e2s)? as f64;
        let g = genus(&s, &t).map_err(e2s)? as f64;
        let (fb, gb) = (
            frobenius_bounds(a, b).map_err(e2s)?,
            genus_bounds(a, b).map_err(e2s)?,
        );
        ensure(fb.contains(f, 1e-9), || {
            format!("F(S({a},{b})) = {f} outside {fb:?}")
        })?;
        ensure(gb.contains(g, 1e-9), || {
            format!("g(S({a},{b})) = {g} outside {gb:?}")
        })?;
    }
    Ok(())
}

fn c9_embedding() -> Check {
    ensure(embedding_dimension(29, 1).map_err(e2s)? == 9, || {
        "e(S(29,1)) != 9".into()
    })?;
    ensure(embedding_dimension(2, 1).map_err(e2s)? == 2, || {
        "e(S(2,1)) != 2".into()
    })?;
    for s in grid(120, 4) {
        let (a, b) = (s.a(), s.b());
        let closed = embedding_dimension(a, b).map_err(e2s)?;
        let brute = minimal_generators_oracle(&s).map_err(e2s)?;
        ensure(closed == brute.embedding_dimension(), || {
            format!("e(S({a},{b})): closed {closed}, oracle {:?}", brute.indices)
        })?;
        let listed = minimal_generators_closed(&s).map_err(e2s)?;
        ensure(listed == brute, || {
            format!("minimal generators of S({a},{b}) differ")
        })?;
    }
    Ok(())
}

fn c10_embedding_search() -> Check {
    let mut t = MuTable::build(0).map_err(e2s)?;
    let report = search_embedding_eq(655, false, &mut t, None).map_err(e2s)?;
    let expected: Vec<(u64, u64)> = EMBEDDING_EQ_TABLE.iter().map(|r| (r.a, r.n)).collect();
    ensure(report.pairs() == expected, || {
        format!("hits {:?}", report.pairs())
    })?;
    ensure(
        expected.first() == Some(&(10, 6)) && expected.last() == Some(&(236, 31)),
        || "table endpoints".into(),
    )?;
    for row in EMBEDDING_EQ_TABLE
        .iter()
        .chain(EXCEPTIONAL_GENERATOR_TABLE.iter())
    {
        if let Some(terms) = row.terms {
            let s = QuadraticSemigroup::new(row.a, row.b).map_err(e2s)?;
            ensure(verify_decomposition(&s, row.n, terms).map_err(e2s)?, || {
                format!("decomposition of y_{} in S({},{})", row.n, row.a, row.b)
            })?;
        }
    }
    Ok(())
}

fn c11_g_analysis() -> Check {
    let g = g_analysis().map_err(e2s)?;
    let checks = [
        ("local max location", g.local_max_location, 52.15, 0.05),
        ("local max value", g.local_max_value, 4.59, 0.02),
        ("root of g = 2", g.root_at_2, 485.92, 0.01),
        ("root of g = 1", g.root_at_1, 655.24, 0.01),
    ];
    let misses: Vec<String> = checks
        .iter()
        .filter(|(_, got, want, tol)| (got - want).abs() > *tol)
        .map(|(what, got, want, tol)| format!("{what} {got:.4} vs {want} ± {tol}"))
        .collect();
    ensure(misses.is_empty(), || misses.join("; "))
}

fn c12_asymptotics() -> Check {
    let mut t = MuTable::build(0).map_err(e2s)?;
    for a in [50u64, 100, 200, 400] {
        let s = QuadraticSemigroup::new(a, 1).map_err(e2s)?;
        let summary = quadsg::invariants::summarize(&s, &mut t).map_err(e2s)?;
        ensure(
            summary.frobenius == frobenius_oracle(&s).map_err(e2s)?,
            || format!("F(S({a},1)) closed and oracle disagree"),
        )?;
        let scale = (a as f64).powf(1.5);
        let (rf, rg) = (
            summary.frobenius as f64 / scale,
            summary.genus as f64 / scale,
        );
        ensure((0.4..=2.5).contains(&rf), || {
            format!("F/a^1.5 = {rf} at a={a}")
        })?;
        ensure((0.4..=2.5).contains(&rg), || {
            format!("g/a^1.5 = {rg} at a={a}")
        })?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let mut suite = Suite {
        failures: Vec::new(),
    };
    let s = Duration::from_secs;
    suite.run(1, "mu base values", s(1), c1_mu_base);
    suite.run(2, "table vs DFS oracle", s(30), c2_oracle);
    suite.run(3, "mu bound sandwich", s(1), c3_sandwich);
    suite.run(4, "mu-drop search", s(5), c4_mu_drop);
    suite.run(5, "mu exception certificates", s(5), c5_certificates);
    suite.run(6, "mu_ab closed form", s(60), c6_mu_ab);
    suite.run(7, "Apery set, F, g", s(120), c7_apery);
    suite.run(8, "F and g bounds", s(10), c8_bounds);
    suite.run(9, "embedding dimension", s(120), c9_embedding);
    suite.run(10, "embedding-eq search", s(10), c10_embedding_search);
    suite.run(11, "g(a) analysis", s(1), c11_g_analysis);
    suite.run(12, "asymptotic ratios", s(30), c12_asymptotics);
    assert!(
        suite.failures.is_empty(),
        "failed criteria:\n{}",
        suite.failures.join("\n")
    );
}
