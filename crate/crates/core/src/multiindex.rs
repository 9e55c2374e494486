//! Multi-indices `α ∈ ℕⁿ` and the counting function `Γ`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CohomError;

/// An n-tuple of naturals. Ordered graded-lexicographically: first by the
/// total weight `|α|`, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit vector `ε_i` (0-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// `|α|`
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `α + ε_i`
    pub fn plus_unit(&self, i: usize) -> Self {
        let mut e = self.0.clone();
        e[i] += 1;
        MultiIndex(e)
    }

    /// `α − ε_i`, or `None` when `α_i = 0`.
    pub fn minus_unit(&self, i: usize) -> Option<Self> {
        let mut e = self.0.clone();
        e[i] = e[i].checked_sub(1)?;
        Some(MultiIndex(e))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MultiIndex {
    type Err = CohomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CohomError::ParseMultiIndex(s.to_string());
        let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        if inner.is_empty() {
            return Ok(MultiIndex(Vec::new()));
        }
        inner
            .split(',')
            .map(|part| {
                if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                part.parse::<u32>().map_err(|_| bad())
            })
            .collect::<Result<Vec<_>, _>>()
            .map(MultiIndex)
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MultiIndex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// `C(a, b)`, zero when `a < b` or `a < 0`.
pub fn binomial(a: i64, b: i64) -> u64 {
    if a < 0 || b < 0 || a < b {
        return 0;
    }
    let b = b.min(a - b) as u128;
    let a = a as u128;
    let mut acc: u128 = 1;
    for i in 0..b {
        // acc * (a - i) is divisible by (i + 1) at every step
        acc = acc * (a - i) / (i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// `Γ_m^k`: the number of `β ∈ ℕ^m` with `|β| = k`, i.e. `C(m+k−1, k)`,
/// with `Γ_m^0 = 1` and `Γ_m^k = 0` for negative `k`.
pub fn gamma(m: u64, k: i64) -> u64 {
    match k {
        k if k < 0 => 0,
        0 => 1,
        k => binomial(m as i64 + k - 1, k),
    }
}

/// `Γ_m^k` for natural `k`.
pub fn multiset_coeff(m: u64, k: u64) -> u64 {
    gamma(m, k as i64)
}

/// All `α ∈ ℕⁿ` with `|α| = weight`, in graded-lex (here: lexicographic) order.
pub fn enumerate_multiindices(n: usize, weight: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fill(&mut current, 0, weight, &mut out);
    out
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    let n = current.len();
    if pos == n {
        if remaining == 0 {
            out.push(MultiIndex(current.clone()));
        }
        return;
    }
    if pos + 1 == n {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for a in 0..=remaining {
        current[pos] = a;
        fill(current, pos + 1, remaining - a, out);
    }
    current[pos] = 0;
}

/// All `α ∈ ℕⁿ` with `|α| ≤ max_weight`, in graded-lex order.
pub fn enumerate_up_to(n: usize, max_weight: u32) -> Vec<MultiIndex> {
    (0..=max_weight).flat_map(|w| enumerate_multiindices(n, w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_examples() {
        assert_eq!(multiset_coeff(1, 5), 1);
        assert_eq!(multiset_coeff(2, 3), 4);
        assert_eq!(multiset_coeff(3, 2), 6);
        assert_eq!(gamma(3, -1), 0);
        assert_eq!(gamma(0, 0), 1);
        assert_eq!(gamma(0, 2), 0);
        // n = 2: Γ_{n-1}^k = C(k, k) = 1
        for k in 0..10 {
            assert_eq!(multiset_coeff(1, k), binomial(2 + k as i64 - 2, k as i64));
        }
    }

    #[test]
    fn enumeration_order() {
        let two = enumerate_multiindices(2, 1);
        assert_eq!(two, vec![MultiIndex::new(vec![0, 1]), MultiIndex::new(vec![1, 0])]);
        assert_eq!(enumerate_multiindices(3, 0), vec![MultiIndex::zero(3)]);
        let six = enumerate_multiindices(3, 2);
        assert_eq!(six.len(), 6);
        assert!(six.windows(2).all(|w| w[0] < w[1]));
        // brute-force check against the filter over a box
        let mut boxed: Vec<MultiIndex> = (0..3u32)
            .flat_map(|a| (0..3u32).flat_map(move |b| (0..3u32).map(move |c| MultiIndex::new(vec![a, b, c]))))
            .filter(|m| m.weight() == 2)
            .collect();
        boxed.sort();
        assert_eq!(boxed, six);
    }

    #[test]
    fn graded_order_puts_weight_first() {
        let a: MultiIndex = "[3,0]".parse().unwrap();
        let b: MultiIndex = "[0,4]".parse().unwrap();
        assert!(a < b);
        let all = enumerate_up_to(2, 3);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all.len(), 10);
    }

    #[test]
    fn unit_steps() {
        let a = MultiIndex::new(vec![1, 0, 2]);
        assert_eq!(a.plus_unit(1), MultiIndex::new(vec![1, 1, 2]));
        assert_eq!(a.minus_unit(1), None);
        assert_eq!(a.minus_unit(2), Some(MultiIndex::new(vec![1, 0, 1])));
    }

    #[test]
    fn text_form() {
        let a: MultiIndex = "[1,0,12]".parse().unwrap();
        assert_eq!(a.to_string(), "[1,0,12]");
        for bad in ["1,2", "[1, 2]", "[1,,2]", "[-1]", "[a]"] {
            assert!(bad.parse::<MultiIndex>().is_err(), "accepted {bad}");
        }
    }
}
