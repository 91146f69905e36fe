//! The μ sequence: the least index-sum over partitions of `n` into
//! triangular numbers `C(i,2)`, `i >= 2`.
//!
//! Equivalently μ(n) is the least `m` with `(m, n)` in the monoid generated
//! by `z_i = (i, C(i,2))`. [`MuTable`] memoizes the values bottom-up and
//! [`mu_oracle`] recomputes single values by exhaustive search. Closed-form
//! bounds sit on either side.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest argument accepted by [`mu_oracle`].
pub const ORACLE_LIMIT: u64 = 10_000;

/// Largest `n_max` a [`MuTable`] will allocate for.
pub const TABLE_LIMIT: u64 = 200_000_000;

/// `C(i, 2) = i(i-1)/2`, checked.
pub fn triangular(i: u64) -> Result<u64> {
    if i < 2 {
        return Ok(0);
    }
    let (even, odd) = if i.is_multiple_of(2) { (i, i - 1) } else { (i - 1, i) };
    (even / 2).checked_mul(odd).ok_or(Error::Overflow("C(i,2)"))
}

/// `f(x) = (1 + sqrt(8x + 1)) / 2`, the real inverse of `x -> C(x,2)` on `x >= 1`.
pub fn f_of(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain(format!("f(x) requires x >= 0, got {x}")));
    }
    Ok(f_unchecked(x))
}

#[inline]
pub(crate) fn f_unchecked(x: f64) -> f64 {
    (1.0 + (8.0 * x + 1.0).sqrt()) / 2.0
}

/// Memoized `μ(0..=n_max)`.
///
/// Values are filled bottom-up with
/// `μ(n) = min { μ(n - C(i,2)) + i : i >= 2, C(i,2) <= n }`.
/// The `i = 1` term of the recursion is dropped: `C(1,2) = 0`, so it only
/// offers `μ(n) + 1`, which is never the minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuTable {
    values: Vec<u64>,
}

impl MuTable {
    pub fn build(n_max: u64) -> Result<Self> {
        let mut table = MuTable { values: vec![0] };
        table.extend_to(n_max)?;
        Ok(table)
    }

    /// Wraps previously computed values. Only the shape is checked here;
    /// `values[0]` must be zero and the slice must be non-empty.
    pub fn from_values(values: Vec<u64>) -> Result<Self> {
        match values.first() {
            Some(0) => Ok(MuTable { values }),
            Some(v) => Err(Error::CacheFormat(format!("mu(0) must be 0, found {v}"))),
            None => Err(Error::CacheFormat("empty table".into())),
        }
    }

    /// Grows the table so that it covers `n_max`. Existing entries are kept.
    pub fn extend_to(&mut self, n_max: u64) -> Result<()> {
        if n_max > TABLE_LIMIT {
            return Err(Error::domain(format!(
                "mu table size {n_max} exceeds the limit of {TABLE_LIMIT}"
            )));
        }
        let start = self.values.len() as u64;
        if n_max < start {
            return Ok(());
        }
        self.values.reserve((n_max + 1 - start) as usize);
        // largest i with C(i,2) <= n, maintained as n grows
        let mut top = 2u64;
        while (top + 1) * top / 2 <= start {
            top += 1;
        }
        for n in start..=n_max {
            if (top + 1) * top / 2 <= n {
                top += 1;
            }
            // Scan i downwards. If i is the largest part of an optimal
            // partition, every part costs at least 2/(i-1) per unit, so the
            // total is at least 2n/(i-1); once that reaches `best`, no smaller
            // i can win.
            let mut best = 2 * n;
            let mut i = top;
            while i >= 2 && 2 * n < best * (i - 1) {
                let t = i * (i - 1) / 2;
                let candidate = self.values[(n - t) as usize] + i;
                if candidate < best {
                    best = candidate;
                }
                i -= 1;
            }
            self.values.push(best);
        }
        Ok(())
    }

    pub fn n_max(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        self.values.get(usize::try_from(n).ok()?).copied()
    }

    /// μ(n), or [`Error::OutOfTable`] when `n > n_max`.
    pub fn mu(&self, n: u64) -> Result<u64> {
        self.get(n).ok_or(Error::OutOfTable {
            n,
            n_max: self.n_max(),
        })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Whether `(m, n)` lies in the lifting monoid `T`.
    ///
    /// Each row of `T` switches from absent to present exactly once, at
    /// `m = μ(n)`, because `z_1 = (1, 0)` is a generator.
    pub fn lift_contains(&self, m: u64, n: u64) -> Result<bool> {
        Ok(self.mu(n)? <= m)
    }
}

/// μ(n) by branch-and-bound enumeration of non-increasing index sequences.
///
/// Shares nothing with [`MuTable`]: it walks multisets of indices directly and
/// prunes with the linear relaxation `cost >= 2r/(k-1)` for a remainder `r`
/// that may only use indices `<= k`.
pub fn mu_oracle(n: u64) -> Result<u64> {
    if n > ORACLE_LIMIT {
        return Err(Error::OracleLimit {
            n,
            limit: ORACLE_LIMIT,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let mut top = 2;
    while (top + 1) * top / 2 <= n {
        top += 1;
    }
    // all parts equal to C(2,2) = 1
    let mut best = 2 * n;
    descend(n, top, 0, &mut best);
    Ok(best)
}

fn descend(remaining: u64, max_index: u64, cost: u64, best: &mut u64) {
    if remaining == 0 {
        *best = (*best).min(cost);
        return;
    }
    if max_index == 2 {
        *best = (*best).min(cost + 2 * remaining);
        return;
    }
    let relaxed = cost + (2 * remaining).div_ceil(max_index - 1);
    if relaxed >= *best {
        return;
    }
    for i in (2..=max_index).rev() {
        let t = i * (i - 1) / 2;
        if t <= remaining {
            descend(remaining - t, i, cost + i, best);
        }
    }
}

/// `μ(n) >= f(n)` for `n >= 1`.
pub fn lower_bound(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("lower bound is stated for n >= 1"));
    }
    Ok(f_unchecked(n as f64))
}

/// Upper bound `3 f(n/3)` from writing `n` as a sum of three triangular numbers.
pub fn gauss_bound(n: u64) -> f64 {
    3.0 * f_unchecked(n as f64 / 3.0)
}

/// One step of the recursion followed by the Gauss bound:
/// `f(n) + 3 f((f(n) - 2)/3)`.
pub fn combined_bound(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("combined bound is stated for n >= 1"));
    }
    let fnv = f_unchecked(n as f64);
    // f(n) >= 2 for n >= 1; clamp rounding noise at n = 1
    let inner = ((fnv - 2.0) / 3.0).max(0.0);
    Ok(fnv + 3.0 * f_unchecked(inner))
}

/// One row of the μ-versus-bounds profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundProfile {
    pub n: u64,
    pub mu: u64,
    pub lower: f64,
    pub gauss: f64,
    pub combined: f64,
}

/// Rows `n = 1..=n_max`. The table is grown if it does not reach `n_max`.
pub fn bounds_profile(table: &mut MuTable, n_max: u64) -> Result<Vec<BoundProfile>> {
    if n_max == 0 {
        return Err(Error::domain("bounds profile needs n_max >= 1"));
    }
    table.extend_to(n_max)?;
    (1..=n_max)
        .map(|n| {
            Ok(BoundProfile {
                n,
                mu: table.mu(n)?,
                lower: lower_bound(n)?,
                gauss: gauss_bound(n),
                combined: combined_bound(n)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_values() {
        assert_eq!(triangular(0).unwrap(), 0);
        assert_eq!(triangular(1).unwrap(), 0);
        assert_eq!(triangular(2).unwrap(), 1);
        assert_eq!(triangular(8).unwrap(), 28);
        assert_eq!(triangular(1 << 32).unwrap(), (1u64 << 31) * ((1 << 32) - 1));
    }

    #[test]
    fn triangular_overflow_is_an_error() {
        assert!(matches!(triangular(u64::MAX), Err(Error::Overflow(_))));
        assert!(matches!(triangular(1 << 33), Err(Error::Overflow(_))));
    }

    #[test]
    fn f_values_and_domain() {
        assert_eq!(f_of(0.0).unwrap(), 1.0);
        assert_eq!(f_of(1.0).unwrap(), 2.0);
        assert!((f_of(28.0).unwrap() - 8.0).abs() < 1e-12);
        assert!(f_of(-0.5).is_err());
        assert!(f_of(f64::NAN).is_err());
    }

    #[test]
    fn table_small_values() {
        let t = MuTable::build(30).unwrap();
        let expected = [0, 2, 4, 3, 5, 7, 4, 6, 8, 7, 5, 7, 8];
        assert_eq!(&t.values()[..13], &expected);
        assert_eq!(t.mu(26).unwrap(), 13);
        assert_eq!(t.mu(10).unwrap(), 5);
        assert!(matches!(
            t.mu(31),
            Err(Error::OutOfTable { n: 31, n_max: 30 })
        ));
    }

    #[test]
    fn extend_matches_fresh_build() {
        let mut grown = MuTable::build(5).unwrap();
        grown.extend_to(400).unwrap();
        grown.extend_to(100).unwrap();
        assert_eq!(grown, MuTable::build(400).unwrap());
    }

    #[test]
    fn from_values_rejects_bad_shape() {
        assert!(MuTable::from_values(vec![]).is_err());
        assert!(MuTable::from_values(vec![1, 2]).is_err());
        assert!(MuTable::from_values(vec![0, 2]).is_ok());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(mu_oracle(0).unwrap(), 0);
        assert_eq!(mu_oracle(3).unwrap(), 3);
        assert_eq!(mu_oracle(4).unwrap(), 5);
        assert_eq!(mu_oracle(5).unwrap(), 7);
        assert_eq!(mu_oracle(26).unwrap(), 13);
        assert!(matches!(mu_oracle(10_001), Err(Error::OracleLimit { .. })));
    }

    #[test]
    fn lift_contains_rows() {
        let t = MuTable::build(10).unwrap();
        assert!(t.lift_contains(2, 1).unwrap());
        assert!(!t.lift_contains(1, 1).unwrap());
        assert!(t.lift_contains(0, 0).unwrap());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(lower_bound(1).unwrap(), 2.0);
        assert!((lower_bound(28).unwrap() - 8.0).abs() < 1e-12);
        assert!((lower_bound(5).unwrap() - (1.0 + 41f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(lower_bound(0).is_err());

        assert_eq!(gauss_bound(0), 3.0);
        assert!((gauss_bound(3) - 6.0).abs() < 1e-12);
        assert!((gauss_bound(26) - 14.079745625409124).abs() < 1e-9);

        assert_eq!(combined_bound(1).unwrap(), 5.0);
        assert!(combined_bound(28).unwrap() >= 8.0);
        assert!(combined_bound(0).is_err());
    }

    #[test]
    fn profile_first_row() {
        let mut t = MuTable::build(0).unwrap();
        let rows = bounds_profile(&mut t, 10).unwrap();
        assert_eq!(rows.len(), 10);
        let r = rows[0];
        assert_eq!((r.n, r.mu), (1, 2));
        assert_eq!(r.lower, 2.0);
        assert!((r.gauss - 4.372281323269014).abs() < 1e-9);
        assert_eq!(r.combined, 5.0);
        assert_eq!(rows[9].mu, 5);
        assert!(bounds_profile(&mut t, 0).is_err());
    }
}
