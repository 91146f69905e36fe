//! `S(a,b) = <n a + C(n,2) b : n >= 0>` and the quantities that tie it to μ.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mu::{triangular, MuTable};

/// Largest membership table a caller may request.
pub const MEMBERSHIP_LIMIT: u64 = 1 << 30;

/// A triple `(a, b, n)` at which `μ_{a,b}(n) = μ(n) - 1`. Everywhere else on
/// `0 <= n < a` (with `a, b >= 1`) the two agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExceptionTriple {
    pub a: u64,
    pub b: u64,
    pub n: u64,
}

pub const EXCEPTIONS: [ExceptionTriple; 8] = [
    ExceptionTriple { a: 29, b: 1, n: 26 },
    ExceptionTriple { a: 45, b: 1, n: 33 },
    ExceptionTriple { a: 47, b: 1, n: 44 },
    ExceptionTriple { a: 50, b: 1, n: 41 },
    ExceptionTriple { a: 55, b: 1, n: 50 },
    ExceptionTriple { a: 67, b: 1, n: 53 },
    ExceptionTriple { a: 73, b: 1, n: 63 },
    ExceptionTriple { a: 79, b: 1, n: 74 },
];

pub fn exception_for(a: u64, b: u64) -> Option<&'static ExceptionTriple> {
    EXCEPTIONS.iter().find(|e| e.a == a && e.b == b)
}

pub fn is_exceptional_pair(a: u64, b: u64) -> bool {
    exception_for(a, b).is_some()
}

pub fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

/// A validated pair `(a, b)` with `gcd(a, b) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticSemigroup {
    a: u64,
    b: u64,
}

impl QuadraticSemigroup {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 && b == 0 {
            return Err(Error::domain("(a,b) = (0,0) generates only {0}"));
        }
        if gcd(a, b) != 1 {
            return Err(Error::NotANumericalSemigroup { a, b });
        }
        Ok(QuadraticSemigroup { a, b })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// `a <= 1` or `b = 0`: the semigroup is all of N0.
    pub fn is_trivial(&self) -> bool {
        self.a <= 1 || self.b == 0
    }

    pub fn exception(&self) -> Option<&'static ExceptionTriple> {
        exception_for(self.a, self.b)
    }

    pub(crate) fn require_nontrivial(&self) -> Result<()> {
        if self.is_trivial() {
            Err(Error::domain(format!(
                "S({},{}) is N0; this operation needs a >= 2 and b >= 1",
                self.a, self.b
            )))
        } else {
            Ok(())
        }
    }

    /// `y_n = n a + C(n,2) b`.
    pub fn generator(&self, n: u64) -> Result<u64> {
        let linear = n.checked_mul(self.a).ok_or(Error::Overflow("y_n"))?;
        triangular(n)?
            .checked_mul(self.b)
            .and_then(|q| q.checked_add(linear))
            .ok_or(Error::Overflow("y_n"))
    }

    /// Nonzero generators `y_n <= bound`, ascending. Nothing is pruned.
    pub fn generators_up_to(&self, bound: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut n = 1;
        while let Ok(y) = self.generator(n) {
            if y > bound {
                break;
            }
            if y > 0 && out.last() != Some(&y) {
                out.push(y);
            }
            n += 1;
        }
        out
    }

    /// The projection `(m, n) -> m a + n b`, which maps `T` onto `S(a,b)`.
    pub fn project(&self, m: u64, n: u64) -> Result<u64> {
        m.checked_mul(self.a)
            .zip(n.checked_mul(self.b))
            .and_then(|(x, y)| x.checked_add(y))
            .ok_or(Error::Overflow("m a + n b"))
    }

    /// Closed-form upper bound on the Frobenius number, used only to size
    /// brute-force tables (they grow if it ever falls short).
    pub(crate) fn table_size_hint(&self) -> u64 {
        let (a, b) = (self.a as f64, self.b as f64);
        let upper = a / 2.0 * (3.0 + (24.0 * a - 15.0).max(0.0).sqrt()) + a * b - a - b;
        upper.max(0.0).ceil() as u64 + self.a + 1
    }

    /// Lists `y_0` through `y_last`.
    pub fn describe(&self, last: u64) -> Result<SemigroupDescription> {
        Ok(SemigroupDescription {
            a: self.a,
            b: self.b,
            trivial: self.is_trivial(),
            generators: (0..=last)
                .map(|n| self.generator(n))
                .collect::<Result<_>>()?,
        })
    }
}

/// JSON shape `{"a":..,"b":..,"trivial":bool,"generators":[y_0..y_k]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupDescription {
    pub a: u64,
    pub b: u64,
    pub trivial: bool,
    pub generators: Vec<u64>,
}

/// Brute-force membership of `S(a,b)` on `0..=bound`, by forward coin-problem
/// DP over every generator `y_n <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipTable {
    reachable: Vec<bool>,
}

impl MembershipTable {
    pub fn build(s: &QuadraticSemigroup, bound: u64) -> Result<Self> {
        if bound > MEMBERSHIP_LIMIT {
            return Err(Error::MemoryBudget {
                bound,
                limit: MEMBERSHIP_LIMIT,
            });
        }
        let len = bound as usize + 1;
        let mut reachable = vec![false; len];
        reachable[0] = true;
        for y in s.generators_up_to(bound) {
            let y = y as usize;
            for x in y..len {
                if reachable[x - y] {
                    reachable[x] = true;
                }
            }
        }
        Ok(MembershipTable { reachable })
    }

    /// A table holding the least element of every residue class mod `a`, and
    /// therefore every gap. Starts from the Frobenius upper bound plus `a` and
    /// doubles until each class is hit.
    pub fn complete(s: &QuadraticSemigroup) -> Result<Self> {
        s.require_nontrivial()?;
        let mut bound = s.table_size_hint();
        loop {
            let table = Self::build(s, bound)?;
            if table.residue_minima(s.a()).is_some() {
                return Ok(table);
            }
            bound = bound.checked_mul(2).ok_or(Error::Overflow("table bound"))?;
        }
    }

    pub fn bound(&self) -> u64 {
        self.reachable.len() as u64 - 1
    }

    /// `None` when `x` lies beyond the table.
    pub fn contains(&self, x: u64) -> Option<bool> {
        self.reachable.get(usize::try_from(x).ok()?).copied()
    }

    pub fn reachable(&self) -> &[bool] {
        &self.reachable
    }

    pub fn gaps(&self) -> impl Iterator<Item = u64> + '_ {
        self.reachable
            .iter()
            .enumerate()
            .filter(|(_, &r)| !r)
            .map(|(x, _)| x as u64)
    }

    /// Least member of each residue class mod `modulus`, if every class
    /// appears in the table.
    pub fn residue_minima(&self, modulus: u64) -> Option<Vec<u64>> {
        let m = modulus as usize;
        let mut minima = vec![None; m];
        let mut missing = m;
        for (x, _) in self.reachable.iter().enumerate().filter(|(_, &r)| r) {
            let slot = &mut minima[x % m];
            if slot.is_none() {
                *slot = Some(x as u64);
                missing -= 1;
                if missing == 0 {
                    break;
                }
            }
        }
        minima.into_iter().collect()
    }
}

/// Exact membership queries backed by a lazily built [`MembershipTable::complete`].
#[derive(Clone, Debug)]
pub struct Membership {
    semigroup: QuadraticSemigroup,
    table: Option<MembershipTable>,
}

impl Membership {
    pub fn new(semigroup: QuadraticSemigroup) -> Self {
        Membership {
            semigroup,
            table: None,
        }
    }

    pub fn contains(&mut self, x: u64) -> Result<bool> {
        if self.semigroup.is_trivial() {
            return Ok(true);
        }
        if self.table.is_none() {
            self.table = Some(MembershipTable::complete(&self.semigroup)?);
        }
        let table = self.table.as_ref().expect("table just built");
        // every gap lies inside a complete table
        Ok(table.contains(x).unwrap_or(true))
    }
}

/// `(m, n)` lies in `T` iff `μ(n) <= m`.
pub fn lift_contains(table: &MuTable, m: u64, n: u64) -> Result<bool> {
    table.lift_contains(m, n)
}

/// `μ_{a,b}` read off brute-force residue minima.
///
/// For any integer `n`, the least `m` with `m a + n b` in `S` comes from the
/// least element `w` of `S` congruent to `n b (mod a)`: `m = (w - n b) / a`.
#[derive(Clone, Debug)]
pub struct MuAbOracle {
    semigroup: QuadraticSemigroup,
    minima: Vec<u64>,
}

impl MuAbOracle {
    pub fn new(semigroup: QuadraticSemigroup) -> Result<Self> {
        let table = MembershipTable::complete(&semigroup)?;
        let minima = table
            .residue_minima(semigroup.a())
            .expect("complete table covers every residue");
        Ok(MuAbOracle { semigroup, minima })
    }

    pub fn semigroup(&self) -> &QuadraticSemigroup {
        &self.semigroup
    }

    /// Least element of `S` in each residue class mod `a`, indexed by residue.
    pub fn residue_minima(&self) -> &[u64] {
        &self.minima
    }

    pub fn mu_ab(&self, n: i64) -> Result<i64> {
        let a = self.semigroup.a() as i128;
        let nb = n as i128 * self.semigroup.b() as i128;
        let w = self.minima[nb.rem_euclid(a) as usize] as i128;
        i64::try_from((w - nb) / a).map_err(|_| Error::Overflow("mu_ab"))
    }
}

/// `μ_{a,b}(n) = min { m : m a + n b in S(a,b) }` by brute force.
pub fn mu_ab_oracle(s: &QuadraticSemigroup, n: u64) -> Result<i64> {
    let n = i64::try_from(n).map_err(|_| Error::Overflow("n"))?;
    MuAbOracle::new(*s)?.mu_ab(n)
}

/// `μ_{a,b}(n)` for `0 <= n < a` from μ and the exception list.
pub fn mu_ab_closed(s: &QuadraticSemigroup, n: u64, table: &MuTable) -> Result<i64> {
    s.require_nontrivial()?;
    if n >= s.a() {
        return Err(Error::domain(format!(
            "closed form needs 0 <= n < a = {}, got n = {n}; reduce with the shift identity",
            s.a()
        )));
    }
    let mu = table.mu(n)? as i64;
    Ok(match s.exception() {
        Some(e) if e.n == n => mu - 1,
        _ => mu,
    })
}

/// `μ_{a,b}` at any integer argument: write `n = r + i a` with `0 <= r < a`
/// and use `μ_{a,b}(r + i a) = μ_{a,b}(r) - i b`.
pub fn mu_ab_shift(s: &QuadraticSemigroup, n: i64, table: &MuTable) -> Result<i64> {
    s.require_nontrivial()?;
    let a = s.a() as i64;
    let (r, i) = (n.rem_euclid(a), n.div_euclid(a));
    let base = mu_ab_closed(s, r as u64, table)?;
    i.checked_mul(s.b() as i64)
        .and_then(|shift| base.checked_sub(shift))
        .ok_or(Error::Overflow("mu_ab shift"))
}
