use std::fmt;
use std::ops::{Add, Index};
use std::str::FromStr;

use super::EngineError;

/// Integer pebble count per vertex. Entries may be negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PebbleFunction(pub Vec<i64>);

/// Nonnegative pebble count per vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Distribution(pub Vec<u64>);

impl PebbleFunction {
    pub fn zeros(n: usize) -> Self {
        PebbleFunction(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Sum of all entries.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Converts to a distribution when every entry is nonnegative.
    pub fn to_distribution(&self) -> Option<Distribution> {
        self.0
            .iter()
            .map(|&c| u64::try_from(c).ok())
            .collect::<Option<Vec<_>>>()
            .map(Distribution)
    }

    /// Pointwise `self >= other`.
    pub fn dominates(&self, other: &PebbleFunction) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl Index<usize> for PebbleFunction {
    type Output = i64;

    fn index(&self, v: usize) -> &i64 {
        &self.0[v]
    }
}

impl Distribution {
    pub fn zeros(n: usize) -> Self {
        Distribution(vec![0; n])
    }

    /// `count` pebbles on `vertex`, nothing elsewhere.
    pub fn single(n: usize, vertex: usize, count: u64) -> Self {
        let mut d = Distribution::zeros(n);
        d.0[vertex] = count;
        d
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of pebbles.
    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn to_function(&self) -> Result<PebbleFunction, EngineError> {
        self.0
            .iter()
            .map(|&c| i64::try_from(c).map_err(|_| EngineError::Overflow))
            .collect::<Result<Vec<_>, _>>()
            .map(PebbleFunction)
    }

    /// Vertices holding at least one pebble.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, _)| v)
    }
}

impl Index<usize> for Distribution {
    type Output = u64;

    fn index(&self, v: usize) -> &u64 {
        &self.0[v]
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Display for PebbleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Distribution {
    type Err = EngineError;

    /// Comma-separated counts in vertex order, e.g. `0,0,0,8`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| EngineError::Parse(format!("bad pebble count {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Distribution)
    }
}

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    pub fn from_int(v: i64) -> Self {
        HalfInt { twice: 2 * v }
    }

    pub fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;

    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice + rhs.twice,
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// `a + b/2 - c`: the change at a vertex given the change in pebbles `a`,
/// in-degree `b` and out-degree `c`.
pub fn delta(a: i64, b: i64, c: i64) -> HalfInt {
    HalfInt::from_twice(2 * a + b - 2 * c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_values() {
        assert_eq!(delta(0, -2, -1), HalfInt::ZERO);
        assert_eq!(delta(0, 0, 0), HalfInt::ZERO);
        assert_eq!(delta(1, -2, 0), HalfInt::ZERO);
        // untangling: Δ(0,-2,a) = -1-a
        for a in -5..=-1 {
            assert_eq!(delta(0, -2, a), HalfInt::from_int(-1 - a));
        }
        assert_eq!(delta(0, 1, 0).to_string(), "1/2");
        assert_eq!(delta(0, 1, 0).to_integer(), None);
    }

    #[test]
    fn distribution_text() {
        let d: Distribution = "0,0,0,8".parse().unwrap();
        assert_eq!(d.counts(), &[0, 0, 0, 8]);
        assert_eq!(d.size(), 8);
        assert_eq!(d.to_string(), "0,0,0,8");
        assert!("1,-1".parse::<Distribution>().is_err());
        assert!("".parse::<Distribution>().is_err());
    }

    #[test]
    fn function_conversion() {
        let p = PebbleFunction(vec![1, -1, 0]);
        assert_eq!(p.to_distribution(), None);
        assert_eq!(p.total(), 0);
        let q = PebbleFunction(vec![1, 0, 2]);
        assert_eq!(q.to_distribution(), Some(Distribution(vec![1, 0, 2])));
        assert!(q.dominates(&p));
        assert!(!p.dominates(&q));
    }
}
