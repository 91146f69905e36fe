//! Apéry set of `a`, Frobenius number and genus of `S(a,b)`, each by a closed
//! form over μ and by brute force over a [`MembershipTable`], plus the
//! closed-form bounds on F and g.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mu::MuTable;
use crate::semigroup::{
    is_exceptional_pair, mu_ab_closed, MembershipTable, MuAbOracle, QuadraticSemigroup,
};

/// `Ap(S, a)`: element `k` is the least member of `S` congruent to `k (mod a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AperySet {
    modulus: u64,
    elements: Vec<u64>,
}

impl AperySet {
    /// `elements[k]` must be congruent to `k` modulo `modulus`.
    pub fn new(modulus: u64, elements: Vec<u64>) -> Result<Self> {
        if modulus == 0 || elements.len() as u64 != modulus {
            return Err(Error::domain("Apéry set needs exactly `modulus` elements"));
        }
        if let Some((k, w)) = elements
            .iter()
            .enumerate()
            .find(|(k, &w)| w % modulus != *k as u64)
        {
            return Err(Error::domain(format!(
                "element {w} is not congruent to {k}"
            )));
        }
        Ok(AperySet { modulus, elements })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Indexed by residue class.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn sorted(&self) -> Vec<u64> {
        let mut v = self.elements.clone();
        v.sort_unstable();
        v
    }

    /// `max Ap - a`; `-1` for N0.
    pub fn frobenius(&self) -> i64 {
        *self.elements.iter().max().expect("non-empty") as i64 - self.modulus as i64
    }

    /// `(1/a) Σ w - (a-1)/2`, evaluated as the exact integer quotient
    /// `(Σ w - a(a-1)/2) / a`.
    pub fn genus(&self) -> u64 {
        let a = self.modulus as u128;
        let sum: u128 = self.elements.iter().map(|&w| w as u128).sum();
        let numerator = sum - a * (a - 1) / 2;
        debug_assert_eq!(numerator % a, 0);
        (numerator / a) as u64
    }
}

fn n0_apery() -> AperySet {
    AperySet {
        modulus: 1,
        elements: vec![0],
    }
}

/// `Ap(S(a,b), a) = { μ_{a,b}(n) a + n b : 0 <= n < a }` with `μ_{a,b}` taken
/// from μ and the exception list. Needs μ up to `a - 1`.
pub fn apery_closed(s: &QuadraticSemigroup, table: &MuTable) -> Result<AperySet> {
    s.require_nontrivial()?;
    let (a, b) = (s.a(), s.b());
    let mut elements = vec![0u64; a as usize];
    for n in 0..a {
        let m = u64::try_from(mu_ab_closed(s, n, table)?)
            .map_err(|_| Error::domain("negative μ_{a,b} on 0 <= n < a"))?;
        let w = s.project(m, n)?;
        elements[((n as u128 * b as u128) % a as u128) as usize] = w;
    }
    AperySet::new(a, elements)
}

/// Residue-class minima scanned from a brute-force membership table.
pub fn apery_oracle(s: &QuadraticSemigroup) -> Result<AperySet> {
    if s.is_trivial() {
        return Ok(n0_apery());
    }
    let oracle = MuAbOracle::new(*s)?;
    AperySet::new(s.a(), oracle.residue_minima().to_vec())
}

/// Frobenius number from [`apery_closed`]; `-1` for N0.
pub fn frobenius(s: &QuadraticSemigroup, table: &MuTable) -> Result<i64> {
    if s.is_trivial() {
        return Ok(-1);
    }
    Ok(apery_closed(s, table)?.frobenius())
}

/// Largest gap in a complete membership table; `-1` for N0.
pub fn frobenius_oracle(s: &QuadraticSemigroup) -> Result<i64> {
    if s.is_trivial() {
        return Ok(-1);
    }
    let table = MembershipTable::complete(s)?;
    Ok(table.gaps().last().map_or(-1, |g| g as i64))
}

/// `g = Σ_{n<a} μ_{a,b}(n) + (a-1)(b-1)/2`, in integers.
pub fn genus(s: &QuadraticSemigroup, table: &MuTable) -> Result<u64> {
    if s.is_trivial() {
        return Ok(0);
    }
    let (a, b) = (s.a(), s.b());
    let mut sum: i64 = 0;
    for n in 0..a {
        sum += mu_ab_closed(s, n, table)?;
    }
    // gcd(a,b) = 1 rules out both being even, so the product is even
    let correction = (a - 1)
        .checked_mul(b - 1)
        .ok_or(Error::Overflow("(a-1)(b-1)"))?
        / 2;
    Ok(sum as u64 + correction)
}

/// Gap count in a complete membership table.
pub fn genus_oracle(s: &QuadraticSemigroup) -> Result<u64> {
    if s.is_trivial() {
        return Ok(0);
    }
    Ok(MembershipTable::complete(s)?.gaps().count() as u64)
}

/// A closed-form interval. `exceptional` marks the eight pairs outside the
/// hypothesis of the bound theorems; the values are still reported.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
    pub exceptional: bool,
}

impl BoundPair {
    /// `lower - slack <= x <= upper + slack`.
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        self.lower - slack <= x && x <= self.upper + slack
    }
}

fn require_bound_domain(a: u64, b: u64) -> Result<()> {
    if a < 2 || b < 1 {
        return Err(Error::domain(format!(
            "bounds need a >= 2 and b >= 1, got ({a},{b})"
        )));
    }
    Ok(())
}

/// `a/2 (1 + sqrt(8a-7)) + ab - a - b <= F <= a/2 (3 + sqrt(24a-15)) + ab - a - b`.
pub fn frobenius_bounds(a: u64, b: u64) -> Result<BoundPair> {
    require_bound_domain(a, b)?;
    let (af, bf) = (a as f64, b as f64);
    let tail = af * bf - af - bf;
    Ok(BoundPair {
        lower: af / 2.0 * (1.0 + (8.0 * af - 7.0).sqrt()) + tail,
        upper: af / 2.0 * (3.0 + (24.0 * af - 15.0).sqrt()) + tail,
        exceptional: is_exceptional_pair(a, b),
    })
}

/// Integral bounds on `Σ μ(n)` plus `(a-1)(b-1)/2`.
pub fn genus_bounds(a: u64, b: u64) -> Result<BoundPair> {
    require_bound_domain(a, b)?;
    let (af, bf) = (a as f64, b as f64);
    let tail = (af - 1.0) * (bf - 1.0) / 2.0;
    let lower = ((8.0 * af - 7.0).powf(1.5) + 12.0 * af - 13.0) / 24.0;
    let upper =
        (3f64.sqrt() * (8.0 * af + 3.0).powf(1.5) + 36.0 * af - 36.0 - 11.0 * 33f64.sqrt()) / 24.0;
    Ok(BoundPair {
        lower: lower + tail,
        upper: upper + tail,
        exceptional: is_exceptional_pair(a, b),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantSummary {
    pub a: u64,
    pub b: u64,
    pub frobenius: i64,
    pub genus: u64,
    /// Absent for the trivial semigroups, where the theorems do not apply.
    pub frobenius_bounds: Option<BoundPair>,
    pub genus_bounds: Option<BoundPair>,
}

/// Closed-form invariants; the table is grown to cover `a - 1` if needed.
pub fn summarize(s: &QuadraticSemigroup, table: &mut MuTable) -> Result<InvariantSummary> {
    if s.is_trivial() {
        return Ok(InvariantSummary {
            a: s.a(),
            b: s.b(),
            frobenius: -1,
            genus: 0,
            frobenius_bounds: None,
            genus_bounds: None,
        });
    }
    table.extend_to(s.a() - 1)?;
    Ok(InvariantSummary {
        a: s.a(),
        b: s.b(),
        frobenius: frobenius(s, table)?,
        genus: genus(s, table)?,
        frobenius_bounds: Some(frobenius_bounds(s.a(), s.b())?),
        genus_bounds: Some(genus_bounds(s.a(), s.b())?),
    })
}
