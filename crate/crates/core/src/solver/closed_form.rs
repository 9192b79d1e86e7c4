use std::fmt;
use std::str::FromStr;

use super::SolveError;
use crate::family::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Invariant {
    Rho,
    RhoOpt,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Rho => "rho",
            Invariant::RhoOpt => "rho-opt",
        })
    }
}

impl FromStr for Invariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rho" => Ok(Invariant::Rho),
            "rho-opt" | "rho_opt" => Ok(Invariant::RhoOpt),
            other => Err(format!("unknown invariant {other:?}; use rho or rho-opt")),
        }
    }
}

/// Known optimal rubbling numbers of `Q^n`, indexed by `n - 2`.
const HYPERCUBE_RHO_OPT: [u64; 4] = [2, 3, 4, 6];

/// `floor((7 * 2^(k-1) - 2) / 3) + 1`, the rubbling number of `C_{2k+1}`.
pub fn odd_cycle_rho(k: u32) -> u64 {
    (7 * (1u64 << (k - 1)) - 2) / 3 + 1
}

/// The pair `(floor(2^k / 3), floor(5 * 2^(k-1) / 3))`: pebble counts on the
/// two vertices farthest from the target of `C_{2k+1}` that leave it
/// unreachable with one pebble fewer than the rubbling number.
pub fn odd_cycle_extremal_pair(k: u32) -> (u64, u64) {
    ((1u64 << k) / 3, 5 * (1u64 << (k - 1)) / 3)
}

/// The known value of the invariant for `family`, when one applies.
pub fn closed_form(family: &Family, which: Invariant) -> Option<u64> {
    let pow2 = |e: usize| (e < 64).then(|| 1u64 << e);
    match (family, which) {
        (Family::Path(n), Invariant::Rho) => pow2(n - 1),
        (Family::Path(n), Invariant::RhoOpt) => Some((*n as u64 + 2) / 2),
        (Family::Cycle(n), Invariant::Rho) if n % 2 == 0 => pow2(n / 2),
        (Family::Cycle(n), Invariant::Rho) => Some(odd_cycle_rho((*n as u32 - 1) / 2)),
        (Family::Cycle(n), Invariant::RhoOpt) => Some((*n as u64).div_ceil(2)),
        (Family::Complete(n), _) if *n >= 2 => Some(2),
        (Family::Wheel(n), Invariant::Rho) if *n >= 4 => Some(4),
        (Family::Wheel(n), Invariant::RhoOpt) if *n >= 4 => Some(2),
        (Family::CompleteBipartite(m, n), Invariant::Rho) if *m >= 2 && *n >= 2 => Some(4),
        (Family::CompleteBipartite(m, n), Invariant::RhoOpt) if *m >= 3 && *n >= 3 => Some(3),
        (Family::Hypercube(n), Invariant::Rho) => pow2(*n),
        (Family::Hypercube(n), Invariant::RhoOpt) => n
            .checked_sub(2)
            .and_then(|i| HYPERCUBE_RHO_OPT.get(i).copied()),
        (Family::Petersen, Invariant::Rho) => Some(5),
        (Family::Petersen, Invariant::RhoOpt) => Some(4),
        (Family::Caterpillar(legs), Invariant::Rho) if is_proper_caterpillar(legs) => {
            pow2(legs.len() + 1)
        }
        _ => None,
    }
}

// The spine must be what remains after deleting the leaves, so both spine
// ends carry legs (a lone spine vertex needs two).
fn is_proper_caterpillar(legs: &[usize]) -> bool {
    match legs {
        [] => false,
        [only] => *only >= 2,
        [first, .., last] => *first >= 1 && *last >= 1,
    }
}

/// Which of four inequalities a pebble pair `(a, b)` satisfies, with `a`
/// and `b` on the two vertices of `C_{2k+1}` farthest from the target and
/// no other pebbles. A pair that cannot reach the target satisfies all four.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OddCycleBoundCheck {
    pub k: u32,
    pub a: u64,
    pub b: u64,
    /// `floor(a/2) + b <= 2^k - 1`
    pub first: bool,
    /// `a + 2b <= 2^(k+1) - 1`
    pub first_doubled: bool,
    /// `floor((b - 2^(k-1)) / 2) + a <= 2^(k-1) - 1`
    pub second: bool,
    /// `b + 2a <= 2^k + 2^(k-1) - 1`
    pub second_doubled: bool,
}

impl OddCycleBoundCheck {
    pub fn all_hold(&self) -> bool {
        self.first && self.first_doubled && self.second && self.second_doubled
    }
}

// written as `<= 2^k - 1` etc. to match the documented forms
#[allow(clippy::int_plus_one)]
pub fn odd_cycle_bounds(k: u32, a: u64, b: u64) -> Result<OddCycleBoundCheck, SolveError> {
    if k == 0 || k > 40 {
        return Err(SolveError::Precondition(format!(
            "k must be in 1..=40, got {k}"
        )));
    }
    if a > b {
        return Err(SolveError::Precondition(format!(
            "need a <= b, got a={a}, b={b}"
        )));
    }
    if b > 1 << 50 {
        return Err(SolveError::Precondition(format!("b={b} is too large")));
    }
    let (a, b) = (a as i64, b as i64);
    let full = 1i64 << k;
    let half = 1i64 << (k - 1);
    Ok(OddCycleBoundCheck {
        k,
        a: a as u64,
        b: b as u64,
        first: a / 2 + b <= full - 1,
        first_doubled: a + 2 * b <= 2 * full - 1,
        second: (b - half).div_euclid(2) + a <= half - 1,
        second_doubled: b + 2 * a <= full + half - 1,
    })
}
