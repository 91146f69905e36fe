//! Exhaustive searches over `a` and the bound-gap function `g(a)`.
//! Also replays the tabulated exceptional cases.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embedding::{
    minimal_generators_oracle, verify_decomposition, TableRow, EMBEDDING_EQ_TABLE,
    EXCEPTIONAL_GENERATOR_TABLE,
};
use crate::error::{Error, Result};
use crate::mu::{f_unchecked, triangular, MuTable};
use crate::semigroup::{Membership, MuAbOracle, QuadraticSemigroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchId {
    MuDrop,
    EmbeddingEq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HitValues {
    MuDrop {
        mu_n: u64,
        mu_n_plus_a: u64,
        drop: u64,
    },
    EmbeddingEq {
        binom: u64,
        residue: u64,
        mu_residue: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SearchHit {
    pub a: u64,
    pub n: u64,
    #[serde(flatten)]
    pub values: HitValues,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub search_id: SearchId,
    pub a_max: u64,
    /// Sorted by `(a, n)`.
    pub hits: Vec<SearchHit>,
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.hits.iter().map(|h| (h.a, h.n)).collect()
    }
}

fn run_parallel<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(job()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(job))
            .map_err(|e| Error::domain(format!("cannot start {n} worker threads: {e}"))),
    }
}

/// All `(a, n)` with `3 <= n < a <= a_max` and `2 <= μ(n) - μ(n+a) <= 4`.
pub fn search_mu_drop(
    a_max: u64,
    table: &mut MuTable,
    threads: Option<usize>,
) -> Result<SearchReport> {
    if a_max < 4 {
        return Err(Error::domain("mu-drop search needs a_max >= 4"));
    }
    let start = Instant::now();
    table.extend_to(2 * a_max)?;
    let mu = table.values();
    let mut hits: Vec<SearchHit> = run_parallel(threads, || {
        (4..=a_max)
            .into_par_iter()
            .flat_map_iter(|a| {
                (3..a).filter_map(move |n| {
                    let (mu_n, mu_na) = (mu[n as usize], mu[(n + a) as usize]);
                    let drop = mu_n.checked_sub(mu_na)?;
                    (2..=4).contains(&drop).then_some(SearchHit {
                        a,
                        n,
                        values: HitValues::MuDrop {
                            mu_n,
                            mu_n_plus_a: mu_na,
                            drop,
                        },
                    })
                })
            })
            .collect()
    })?;
    hits.sort_unstable();
    Ok(SearchReport {
        search_id: SearchId::MuDrop,
        a_max,
        hits,
        elapsed: start.elapsed(),
    })
}

/// All `(a, n)` with `1 <= n <= a <= a_max` and `n + 1 = μ(C(n,2) mod a)`.
/// Unless `raw`, also requires `a < C(n,2) <= C(a,2)` and `a` not dividing `C(n,2)`.
pub fn search_embedding_eq(
    a_max: u64,
    raw: bool,
    table: &mut MuTable,
    threads: Option<usize>,
) -> Result<SearchReport> {
    if a_max < 2 {
        return Err(Error::domain("embedding-eq search needs a_max >= 2"));
    }
    triangular(a_max)?;
    let start = Instant::now();
    table.extend_to(a_max)?;
    let mu = table.values();
    let mut hits: Vec<SearchHit> = run_parallel(threads, || {
        (1..=a_max)
            .into_par_iter()
            .flat_map_iter(|a| {
                let binom_a = a * (a - 1) / 2;
                (1..=a).filter_map(move |n| {
                    let binom = n * (n - 1) / 2;
                    let residue = binom % a;
                    if !raw && (binom <= a || binom > binom_a || residue == 0) {
                        return None;
                    }
                    let mu_residue = mu[residue as usize];
                    (mu_residue == n + 1).then_some(SearchHit {
                        a,
                        n,
                        values: HitValues::EmbeddingEq {
                            binom,
                            residue,
                            mu_residue,
                        },
                    })
                })
            })
            .collect()
    })?;
    hits.sort_unstable();
    Ok(SearchReport {
        search_id: SearchId::EmbeddingEq,
        a_max,
        hits,
        elapsed: start.elapsed(),
    })
}

/// `g(a) = f(a-1) - f(2a-1) + 3 f((f(a-1) - 2)/3)`, defined for `a >= 2`.
pub fn g_of(a: f64) -> Result<f64> {
    if a.is_nan() || a < 2.0 {
        return Err(Error::domain(format!("g(a) needs a >= 2, got {a}")));
    }
    Ok(g_unchecked(a))
}

fn g_unchecked(a: f64) -> f64 {
    let fa = f_unchecked(a - 1.0);
    fa - f_unchecked(2.0 * a - 1.0) + 3.0 * f_unchecked(((fa - 2.0) / 3.0).max(0.0))
}

fn check_bracket(lo: f64, hi: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            reason: "need finite lo < hi",
        });
    }
    if lo < 2.0 {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            reason: "g is defined for a >= 2",
        });
    }
    Ok(())
}

/// Bisection for `g(x) = target` on a sign-changing bracket.
pub fn g_solve(target: f64, (lo, hi): (f64, f64)) -> Result<f64> {
    check_bracket(lo, hi)?;
    let h = |x: f64| g_unchecked(x) - target;
    let (mut lo, mut hi) = (lo, hi);
    let (h_lo, h_hi) = (h(lo), h(hi));
    if h_lo == 0.0 {
        return Ok(lo);
    }
    if h_hi == 0.0 {
        return Ok(hi);
    }
    if h_lo.signum() == h_hi.signum() {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            reason: "g - target does not change sign",
        });
    }
    let lo_negative = h_lo < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let hm = h(mid);
        if hm == 0.0 || (hi - lo) < 1e-12 * mid.abs().max(1.0) {
            return Ok(mid);
        }
        if (hm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section search for the maximum of `g` on a unimodal bracket.
/// Returns `(argmax, g(argmax))`.
pub fn g_local_max((lo, hi): (f64, f64)) -> Result<(f64, f64)> {
    check_bracket(lo, hi)?;
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (lo, hi);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut g1, mut g2) = (g_unchecked(x1), g_unchecked(x2));
    while hi - lo > 1e-6 {
        if g1 < g2 {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + inv_phi * (hi - lo);
            g2 = g_unchecked(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - inv_phi * (hi - lo);
            g1 = g_unchecked(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    Ok((x, g_unchecked(x)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GAnalysis {
    pub local_max_location: f64,
    pub local_max_value: f64,
    /// Largest solution of `g(a) = 2`; past it no exceptional `μ_{a,b}` exists.
    pub root_at_2: f64,
    /// Largest solution of `g(a) = 1`; past it no extra minimal generator exists.
    pub root_at_1: f64,
}

pub fn g_analysis() -> Result<GAnalysis> {
    let (local_max_location, local_max_value) = g_local_max((10.0, 200.0))?;
    Ok(GAnalysis {
        local_max_location,
        local_max_value,
        root_at_2: g_solve(2.0, (100.0, 600.0))?,
        root_at_1: g_solve(1.0, (100.0, 1000.0))?,
    })
}

/// Samples `(a, g(a))` on `lo, lo + step, ... <= hi`.
pub fn g_curve(lo: f64, hi: f64, step: f64) -> Result<Vec<(f64, f64)>> {
    check_bracket(lo, hi)?;
    if step.is_nan() || step <= 0.0 {
        return Err(Error::domain("step must be positive"));
    }
    let count = ((hi - lo) / step).floor() as usize;
    Ok((0..=count)
        .map(|k| {
            let a = lo + k as f64 * step;
            (a, g_unchecked(a))
        })
        .collect())
}

/// One tabulated witness `m a + n = y_k` with `m = μ(n) - 1`, in `S(a,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MuExceptionRow {
    pub a: u64,
    pub n: u64,
    pub mu_n: u64,
    pub m: u64,
    pub value: u64,
    pub generator_index: u64,
}

const fn cert(
    a: u64,
    n: u64,
    mu_n: u64,
    m: u64,
    value: u64,
    generator_index: u64,
) -> MuExceptionRow {
    MuExceptionRow {
        a,
        n,
        mu_n,
        m,
        value,
        generator_index,
    }
}

pub const MU_EXCEPTION_TABLE: [MuExceptionRow; 8] = [
    cert(29, 26, 13, 12, 374, 11),
    cert(45, 33, 15, 14, 663, 13),
    cert(47, 44, 16, 15, 749, 14),
    cert(50, 41, 16, 15, 791, 14),
    cert(55, 50, 17, 16, 930, 15),
    cert(67, 53, 18, 17, 1192, 16),
    cert(73, 63, 19, 18, 1377, 17),
    cert(79, 74, 20, 19, 1575, 18),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateTable {
    MuExceptions,
    EmbeddingEq,
    ExceptionalGenerators,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub table: CertificateTable,
    pub a: u64,
    pub n: u64,
    pub claim: String,
    pub passed: bool,
}

fn check_mu_exception(row: &MuExceptionRow, table: &MuTable) -> Result<Certificate> {
    let s = QuadraticSemigroup::new(row.a, 1)?;
    let mut membership = Membership::new(s);
    let value = s.project(row.m, row.n)?;
    let below = value.checked_sub(row.a);
    let passed = table.mu(row.n)? == row.mu_n
        && row.m + 1 == row.mu_n
        && value == row.value
        && s.generator(row.generator_index)? == value
        && membership.contains(value)?
        && match below {
            Some(v) => !membership.contains(v)?,
            None => true,
        }
        && MuAbOracle::new(s)?.mu_ab(row.n as i64)? == row.m as i64;
    Ok(Certificate {
        table: CertificateTable::MuExceptions,
        a: row.a,
        n: row.n,
        claim: format!(
            "{}({})+{}(1)={}=y_{} in S, {} not in S",
            row.m,
            row.a,
            row.n,
            row.value,
            row.generator_index,
            row.value.saturating_sub(row.a)
        ),
        passed,
    })
}

fn format_terms(terms: &[(u64, u64)]) -> String {
    terms
        .iter()
        .map(|&(i, c)| {
            if c == 1 {
                format!("y_{i}")
            } else {
                format!("{c}y_{i}")
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}

fn check_table_row(kind: CertificateTable, row: &TableRow) -> Result<Certificate> {
    let s = QuadraticSemigroup::new(row.a, row.b)?;
    let (claim, passed) = match row.terms {
        Some(terms) => (
            format!("y_{}={}", row.n, format_terms(terms)),
            verify_decomposition(&s, row.n, terms)?,
        ),
        None => (
            format!("y_{} is a minimal generator", row.n),
            minimal_generators_oracle(&s)?.indices.contains(&row.n),
        ),
    };
    Ok(Certificate {
        table: kind,
        a: row.a,
        n: row.n,
        claim,
        passed,
    })
}

/// Replays the eight μ-exception witnesses and every row of both generator
/// tables. Rows without a decomposition are checked as minimal by brute force.
pub fn exception_certificates(table: &mut MuTable) -> Result<Vec<Certificate>> {
    table.extend_to(100)?;
    let mut out = Vec::with_capacity(8 + 30 + 18);
    for row in &MU_EXCEPTION_TABLE {
        out.push(check_mu_exception(row, table)?);
    }
    for row in &EMBEDDING_EQ_TABLE {
        out.push(check_table_row(CertificateTable::EmbeddingEq, row)?);
    }
    for row in &EXCEPTIONAL_GENERATOR_TABLE {
        out.push(check_table_row(
            CertificateTable::ExceptionalGenerators,
            row,
        )?);
    }
    Ok(out)
}
