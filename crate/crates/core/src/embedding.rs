//! Minimal generators and embedding dimension of `S(a,b)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mu::triangular;
use crate::semigroup::{exception_for, QuadraticSemigroup, MEMBERSHIP_LIMIT};

/// Index `n > 1` with `C(n,2) > a` whose `y_n` is nevertheless minimal, one
/// per exceptional pair `(a, 1)`.
pub const EXTRA_MINIMAL_INDEX: [(u64, u64); 8] = [
    (29, 11),
    (45, 13),
    (47, 14),
    (50, 14),
    (55, 15),
    (67, 16),
    (73, 17),
    (79, 18),
];

pub fn extra_minimal_index(a: u64, b: u64) -> Option<u64> {
    exception_for(a, b)?;
    EXTRA_MINIMAL_INDEX
        .iter()
        .find(|(ea, _)| *ea == a)
        .map(|&(_, n)| n)
}

/// A tabulated generator `y_n` of `S(a,b)`; `terms` lists `(index, coefficient)`
/// pairs writing `y_n` over smaller generators, or `None` when `y_n` is minimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub a: u64,
    pub b: u64,
    pub n: u64,
    pub terms: Option<&'static [(u64, u64)]>,
}

const fn row(a: u64, n: u64, terms: &'static [(u64, u64)]) -> TableRow {
    TableRow {
        a,
        b: 1,
        n,
        terms: Some(terms),
    }
}

const fn minimal(a: u64, n: u64) -> TableRow {
    TableRow {
        a,
        b: 1,
        n,
        terms: None,
    }
}

/// Every `(a, n)` with `1 <= n <= a <= 655`, `a < C(n,2)`, `a` not dividing
/// `C(n,2)` and `n + 1 = μ(C(n,2) mod a)`, each shown non-minimal in `S(a,1)`.
pub const EMBEDDING_EQ_TABLE: [TableRow; 30] = [
    row(10, 6, &[(2, 2), (3, 1)]),
    row(13, 7, &[(2, 2), (4, 1)]),
    row(19, 9, &[(2, 2), (6, 1)]),
    row(22, 9, &[(2, 1), (3, 1), (5, 1)]),
    row(26, 10, &[(2, 1), (3, 1), (6, 1)]),
    row(34, 12, &[(2, 1), (3, 1), (8, 1)]),
    row(40, 12, &[(2, 1), (5, 1), (6, 1)]),
    row(43, 13, &[(2, 1), (4, 1), (8, 1)]),
    row(53, 15, &[(2, 1), (4, 1), (10, 1)]),
    row(58, 14, &[(2, 2), (3, 1), (8, 1)]),
    row(61, 15, &[(2, 1), (6, 1), (8, 1)]),
    row(64, 15, &[(2, 2), (3, 1), (9, 1)]),
    row(66, 16, &[(3, 1), (4, 1), (10, 1)]),
    row(70, 16, &[(2, 2), (3, 1), (10, 1)]),
    row(78, 18, &[(3, 1), (4, 1), (12, 1)]),
    row(82, 18, &[(2, 2), (3, 1), (12, 1)]),
    row(83, 17, &[(2, 2), (4, 1), (10, 1)]),
    row(90, 18, &[(2, 2), (4, 1), (11, 1)]),
    row(97, 19, &[(2, 2), (4, 1), (12, 1)]),
    row(104, 20, &[(2, 2), (4, 1), (13, 1)]),
    row(106, 21, &[(3, 1), (5, 1), (14, 1)]),
    row(107, 21, &[(4, 2), (14, 1)]),
    row(118, 22, &[(2, 2), (4, 1), (15, 1)]),
    row(142, 24, &[(2, 1), (8, 1), (15, 1)]),
    row(181, 27, &[(2, 2), (6, 1), (18, 1)]),
    row(184, 27, &[(2, 1), (3, 1), (5, 1), (18, 1)]),
    row(190, 28, &[(2, 2), (6, 1), (19, 1)]),
    row(193, 28, &[(2, 1), (3, 1), (5, 1), (19, 1)]),
    row(226, 30, &[(2, 1), (3, 1), (6, 1), (20, 1)]),
    row(236, 31, &[(2, 1), (3, 1), (6, 1), (21, 1)]),
];

/// For each exceptional pair `(a, 1)`, every `n` with `a < C(n,2) <= C(a,2)`
/// and `C(n,2) mod a` equal to the pair's exceptional argument.
pub const EXCEPTIONAL_GENERATOR_TABLE: [TableRow; 18] = [
    minimal(29, 11),
    row(29, 19, &[(1, 1), (2, 1), (8, 1), (11, 1)]),
    minimal(45, 13),
    row(45, 33, &[(1, 6), (2, 2), (5, 1), (13, 2)]),
    minimal(47, 14),
    row(47, 34, &[(1, 11), (3, 1), (14, 2)]),
    minimal(50, 14),
    row(50, 39, &[(1, 1), (2, 1), (3, 1), (5, 1), (10, 1), (14, 2)]),
    minimal(55, 15),
    row(55, 26, &[(1, 15), (15, 1)]),
    row(55, 30, &[(1, 5), (5, 1), (10, 1), (15, 1)]),
    row(55, 41, &[(5, 1), (15, 3)]),
    minimal(67, 16),
    row(67, 52, &[(1, 10), (8, 1), (16, 3)]),
    minimal(73, 17),
    row(73, 57, &[(1, 9), (2, 2), (3, 1), (6, 1), (17, 3)]),
    minimal(79, 18),
    row(79, 62, &[(6, 1), (18, 4)]),
];

/// Whether `y_n` belongs to the minimal generating set, decided from the
/// index alone:
///
/// * `C(n,2) < a`: minimal;
/// * `n > a`, or `a | C(n,2)` (including `C(n,2) = a`): not minimal;
/// * otherwise minimal only for the one extra index of an exceptional pair.
pub fn is_minimal_closed(s: &QuadraticSemigroup, n: u64) -> Result<bool> {
    s.require_nontrivial()?;
    if n == 0 {
        return Err(Error::domain("y_0 = 0 is never a generator"));
    }
    let a = s.a();
    if n > a {
        return Ok(false);
    }
    let t = triangular(n)?;
    if t < a {
        return Ok(true);
    }
    if t % a == 0 {
        return Ok(false);
    }
    Ok(extra_minimal_index(a, s.b()) == Some(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalGeneratorSet {
    pub a: u64,
    pub b: u64,
    /// Ascending indices `n` with `y_n` minimal.
    pub indices: Vec<u64>,
    pub elements: Vec<u64>,
}

impl MinimalGeneratorSet {
    pub fn embedding_dimension(&self) -> u64 {
        self.indices.len() as u64
    }
}

/// Candidate window for the brute-force search; everything past `n = a` is
/// re-checked anyway.
const ORACLE_WINDOW: u64 = 5;

/// Marks `y_n` minimal iff it is not an N0-combination of `y_1..y_{n-1}`,
/// for `1 <= n <= a + 5`, by coin-problem reachability.
pub fn minimal_generators_oracle(s: &QuadraticSemigroup) -> Result<MinimalGeneratorSet> {
    let last = s.a() + ORACLE_WINDOW;
    let top = s.generator(last)?;
    if top > MEMBERSHIP_LIMIT {
        return Err(Error::MemoryBudget {
            bound: top,
            limit: MEMBERSHIP_LIMIT,
        });
    }
    let len = top as usize + 1;
    let mut reachable = vec![false; len];
    reachable[0] = true;
    let mut indices = Vec::new();
    let mut elements = Vec::new();
    for n in 1..=last {
        let y = s.generator(n)? as usize;
        if y == 0 || reachable[y] {
            continue;
        }
        indices.push(n);
        elements.push(y as u64);
        // non-minimal generators add nothing new, so only minimal ones are coins
        for x in y..len {
            if reachable[x - y] {
                reachable[x] = true;
            }
        }
    }
    Ok(MinimalGeneratorSet {
        a: s.a(),
        b: s.b(),
        indices,
        elements,
    })
}

/// The set `{ n : is_minimal_closed(S, n) }` with its elements.
pub fn minimal_generators_closed(s: &QuadraticSemigroup) -> Result<MinimalGeneratorSet> {
    let mut indices = Vec::new();
    for n in 1..=s.a() {
        if is_minimal_closed(s, n)? {
            indices.push(n);
        }
    }
    let elements = indices
        .iter()
        .map(|&n| s.generator(n))
        .collect::<Result<_>>()?;
    Ok(MinimalGeneratorSet {
        a: s.a(),
        b: s.b(),
        indices,
        elements,
    })
}

/// `e(S(a,b)) = ⌈f(a)⌉ - 1`, or `⌈f(a)⌉` for the eight exceptional pairs, with
/// `⌈f(a)⌉ = max { n : C(n,2) < a } + 1` found by integer search. N0 gives 1.
pub fn embedding_dimension(a: u64, b: u64) -> Result<u64> {
    let s = QuadraticSemigroup::new(a, b)?;
    if s.is_trivial() {
        return Ok(1);
    }
    let mut below = 1;
    while triangular(below + 1)? < a {
        below += 1;
    }
    let ceil_f = below + 1;
    Ok(if s.exception().is_some() {
        ceil_f
    } else {
        ceil_f - 1
    })
}

/// `Σ c_i y_i == y_n` in exact arithmetic. Every index must be below `n`.
pub fn verify_decomposition(s: &QuadraticSemigroup, n: u64, terms: &[(u64, u64)]) -> Result<bool> {
    let mut total: u64 = 0;
    for &(index, coefficient) in terms {
        if index >= n {
            return Err(Error::domain(format!("index {index} is not below n = {n}")));
        }
        total = s
            .generator(index)?
            .checked_mul(coefficient)
            .and_then(|v| v.checked_add(total))
            .ok_or(Error::Overflow("decomposition sum"))?;
    }
    Ok(total == s.generator(n)?)
}
