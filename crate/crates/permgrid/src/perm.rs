//! Permutations in one-line notation: containment, sums, symmetries, and
//! the covering relation of the containment poset.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Longest permutation the library will construct. Far above anything the
/// search routines can handle, but keeps `u8` value storage safe.
pub const MAX_PERM_LEN: usize = 250;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("permutation length {0} exceeds the supported maximum {MAX_PERM_LEN}")]
    TooLong(usize),
    #[error("values must be a bijection onto 1..={0}")]
    NotBijection(usize),
    #[error("invalid permutation text {0:?}: {1}")]
    Parse(String, String),
}

/// A permutation of {1, ..., n} in one-line notation. The empty permutation
/// (n = 0) is allowed and behaves as the identity for `direct_sum`/`skew_sum`.
///
/// Values are 1-based throughout. Ordering is lexicographic on the value
/// sequence, so sorting a set of equal-length permutations gives the
/// deterministic order used by the enumeration code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(values: Vec<u8>) -> Result<Self, PermError> {
        let n = values.len();
        if n > MAX_PERM_LEN {
            return Err(PermError::TooLong(n));
        }
        let mut seen = vec![false; n];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n || seen[v - 1] {
                return Err(PermError::NotBijection(n));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation(values))
    }

    /// Construct without validation; for internal use where the values come
    /// from an operation that preserves the bijection invariant.
    pub(crate) fn from_raw(values: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation(values)
    }

    /// The empty permutation.
    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_PERM_LEN);
        Permutation((1..=n as u8).collect())
    }

    pub fn decreasing(n: usize) -> Self {
        assert!(n <= MAX_PERM_LEN);
        Permutation((1..=n as u8).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    /// The pattern (renormalization to 1..k) of an arbitrary sequence of
    /// distinct values.
    pub fn pattern_of(seq: &[u8]) -> Permutation {
        let mut sorted: Vec<u8> = seq.to_vec();
        sorted.sort_unstable();
        let values = seq
            .iter()
            .map(|v| (sorted.binary_search(v).unwrap() + 1) as u8)
            .collect();
        Permutation(values)
    }

    /// True iff `self` has a subsequence order isomorphic to `pattern`.
    ///
    /// Depth-first position matching: each candidate entry must fall in the
    /// open value window determined by the already-matched prefix.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        contains_raw(&self.0, &pattern.0)
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    /// `self` followed by a shifted copy of `other` (⊕). Associative, with ε
    /// as the identity.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.len() as u8;
        let mut values = self.0.clone();
        values.extend(other.0.iter().map(|&v| v + shift));
        Permutation(values)
    }

    /// `self` above-left of `other` (⊖).
    pub fn skew_sum(&self, other: &Permutation) -> Permutation {
        let shift = other.len() as u8;
        let mut values: Vec<u8> = self.0.iter().map(|&v| v + shift).collect();
        values.extend_from_slice(&other.0);
        Permutation(values)
    }

    pub fn reverse(&self) -> Permutation {
        let mut values = self.0.clone();
        values.reverse();
        Permutation(values)
    }

    pub fn complement(&self) -> Permutation {
        let n = self.len() as u8;
        Permutation(self.0.iter().map(|&v| n + 1 - v).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut values = vec![0u8; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            values[v as usize - 1] = (i + 1) as u8;
        }
        Permutation(values)
    }

    pub fn symmetry(&self, which: Symmetry) -> Permutation {
        match which {
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
            Symmetry::Inverse => self.inverse(),
        }
    }

    /// All eight dihedral images of `self` (with duplicates removed).
    pub fn symmetry_orbit(&self) -> Vec<Permutation> {
        let mut out = vec![self.clone()];
        // reverse and complement generate the dihedral group together with
        // inverse; compose exhaustively and dedup.
        let mut frontier = vec![self.clone()];
        while let Some(p) = frontier.pop() {
            for q in [p.reverse(), p.complement(), p.inverse()] {
                if !out.contains(&q) {
                    out.push(q.clone());
                    frontier.push(q);
                }
            }
        }
        out.sort();
        out
    }

    /// The unique maximal decomposition into sum-indecomposable components.
    /// ε decomposes into the empty list.
    pub fn sum_components(&self) -> Vec<Permutation> {
        let mut comps = Vec::new();
        let mut start = 0usize;
        let mut maxv = 0u8;
        for (i, &v) in self.0.iter().enumerate() {
            maxv = maxv.max(v);
            if maxv as usize == i + 1 {
                let offset = start as u8;
                comps.push(Permutation(
                    self.0[start..=i].iter().map(|&v| v - offset).collect(),
                ));
                start = i + 1;
            }
        }
        comps
    }

    /// The maximal decomposition under ⊖, dual to `sum_components`.
    pub fn skew_components(&self) -> Vec<Permutation> {
        let n = self.len();
        let mut comps = Vec::new();
        let mut start = 0usize;
        let mut minv = u8::MAX;
        for (i, &v) in self.0.iter().enumerate() {
            minv = minv.min(v);
            if minv as usize == n - i {
                let offset = (n - i - 1) as u8;
                comps.push(Permutation(
                    self.0[start..=i].iter().map(|&v| v - offset).collect(),
                ));
                start = i + 1;
                minv = u8::MAX;
            }
        }
        comps
    }

    pub fn is_sum_indecomposable(&self) -> bool {
        self.sum_components().len() == 1
    }

    pub fn is_skew_indecomposable(&self) -> bool {
        self.skew_components().len() == 1
    }

    /// All distinct patterns obtained by deleting one entry.
    pub fn one_point_deletions(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::with_capacity(self.len());
        for skip in 0..self.len() {
            let removed = self.0[skip];
            let values: Vec<u8> = self
                .0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| if v > removed { v - 1 } else { v })
                .collect();
            out.push(Permutation(values));
        }
        out.sort();
        out.dedup();
        out
    }

    /// All distinct permutations obtained by inserting one new entry: value
    /// `v` at position `q`, with existing values ≥ v shifted up.
    pub fn one_point_extensions(&self) -> Vec<Permutation> {
        let n = self.len();
        let mut out: Vec<Permutation> = Vec::with_capacity((n + 1) * (n + 1));
        for v in 1..=(n + 1) as u8 {
            let shifted: Vec<u8> = self
                .0
                .iter()
                .map(|&x| if x >= v { x + 1 } else { x })
                .collect();
            for q in 0..=n {
                let mut values = Vec::with_capacity(n + 1);
                values.extend_from_slice(&shifted[..q]);
                values.push(v);
                values.extend_from_slice(&shifted[q..]);
                out.push(Permutation(values));
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Reverse,
    Complement,
    Inverse,
}

/// Containment on raw value sequences. Only relative order matters, so the
/// host slice need not be renormalized; this keeps the search engines free
/// of per-query allocations.
pub(crate) fn contains_raw(host: &[u8], pattern: &[u8]) -> bool {
    let k = pattern.len();
    let n = host.len();
    if k == 0 {
        return true;
    }
    if k > n {
        return false;
    }
    if k > 16 {
        return contains_big(host, pattern);
    }
    let mut chosen = [0u8; 16];
    step_raw(pattern, host, 0, 0, &mut chosen)
}

fn step_raw(pat: &[u8], host: &[u8], j: usize, start: usize, chosen: &mut [u8; 16]) -> bool {
    if j == pat.len() {
        return true;
    }
    let remaining = pat.len() - j;
    let mut lo = 0u8;
    let mut hi = u8::MAX;
    for a in 0..j {
        if pat[a] < pat[j] {
            lo = lo.max(chosen[a]);
        } else {
            hi = hi.min(chosen[a]);
        }
    }
    for i in start..=host.len() - remaining {
        let v = host[i];
        if v > lo && v < hi {
            chosen[j] = v;
            if step_raw(pat, host, j + 1, i + 1, chosen) {
                return true;
            }
        }
    }
    false
}

fn contains_big(host: &[u8], pattern: &[u8]) -> bool {
    fn step(pat: &[u8], host: &[u8], j: usize, start: usize, chosen: &mut Vec<u8>) -> bool {
        if j == pat.len() {
            return true;
        }
        let remaining = pat.len() - j;
        let mut lo = 0u8;
        let mut hi = u8::MAX;
        for (a, &cv) in chosen.iter().enumerate() {
            if pat[a] < pat[j] {
                lo = lo.max(cv);
            } else {
                hi = hi.min(cv);
            }
        }
        for i in start..=host.len() - remaining {
            let v = host[i];
            if v > lo && v < hi {
                chosen.push(v);
                if step(pat, host, j + 1, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(pattern.len());
    step(pattern, host, 0, 0, &mut chosen)
}

impl fmt::Display for Permutation {
    /// Digit string for n ≤ 9, comma-separated values otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for &v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts both the digit-string form ("32514") and the comma-separated
    /// form ("10,3,2,1,4,5,6,7,8,9"). The empty string parses as ε.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation::empty());
        }
        let values: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u8>()
                        .map_err(|e| PermError::Parse(s.to_string(), e.to_string()))
                })
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) if d >= 1 => Ok(d as u8),
                    _ => Err(PermError::Parse(
                        s.to_string(),
                        format!("unexpected character {c:?}"),
                    )),
                })
                .collect::<Result<_, _>>()?
        };
        Permutation::new(values)
    }
}

/// Every permutation of length n, in lexicographic order. Only usable for
/// small n; the naive-filtration cross checks need it.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut values: Vec<u8> = (1..=n as u8).collect();
    loop {
        out.push(Permutation(values.clone()));
        // next_permutation
        let Some(i) = (0..values.len().saturating_sub(1))
            .rev()
            .find(|&i| values[i] < values[i + 1])
        else {
            break;
        };
        let j = (i + 1..values.len())
            .rev()
            .find(|&j| values[j] > values[i])
            .unwrap();
        values.swap(i, j);
        values[i + 1..].reverse();
    }
    if n == 0 {
        // the loop above pushed the empty vector once already
        out.truncate(1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn construction_validates_bijection() {
        assert!(Permutation::new(vec![1, 2, 3]).is_ok());
        assert!(Permutation::new(vec![1, 1, 3]).is_err());
        assert!(Permutation::new(vec![2, 3, 4]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert_eq!(Permutation::new(vec![]).unwrap(), Permutation::empty());
    }

    #[test]
    fn containment_examples() {
        assert!(p("32514").contains(&p("132"))); // subsequence 2 5 4
        assert!(p("1").contains(&p("1")));
        assert!(p("54213").contains(&Permutation::empty()));
        assert!(Permutation::empty().contains(&Permutation::empty()));
        assert!(p("54213").contains(&p("4321"))); // subsequence 5 4 2 1
        assert!(!p("123").contains(&p("21")));
        assert!(!p("12").contains(&p("123")));
    }

    #[test]
    fn sums() {
        assert_eq!(p("1").skew_sum(&p("12")).skew_sum(&p("1")), p("4231"));
        assert_eq!(p("1").skew_sum(&p("1").skew_sum(&p("213"))), p("54213"));
        assert_eq!(p("21").direct_sum(&Permutation::empty()), p("21"));
        assert_eq!(Permutation::empty().direct_sum(&p("21")), p("21"));
        assert_eq!(p("1").direct_sum(&p("21")), p("132"));
    }

    #[test]
    fn symmetries() {
        assert_eq!(p("1342").reverse(), p("2431"));
        assert_eq!(p("12").complement(), p("21"));
        assert_eq!(p("312").inverse(), p("231"));
        assert!(p("1342").symmetry_orbit().contains(&p("4213")));
    }

    #[test]
    fn symmetries_are_involutions() {
        for s in ["1", "231", "4213", "35142"] {
            let q = p(s);
            assert_eq!(q.reverse().reverse(), q);
            assert_eq!(q.complement().complement(), q);
            assert_eq!(q.inverse().inverse(), q);
        }
    }

    #[test]
    fn sum_decomposition() {
        assert_eq!(p("123").sum_components(), vec![p("1"), p("1"), p("1")]);
        assert_eq!(p("2413").sum_components(), vec![p("2413")]);
        assert_eq!(p("2134").sum_components(), vec![p("21"), p("1"), p("1")]);
        assert!(Permutation::empty().sum_components().is_empty());
        assert!(p("2413").is_sum_indecomposable());
        assert!(!p("2134").is_sum_indecomposable());
    }

    #[test]
    fn skew_decomposition() {
        assert_eq!(p("54213").skew_components(), vec![p("1"), p("1"), p("213")]);
        assert_eq!(p("321").skew_components(), vec![p("1"), p("1"), p("1")]);
        assert_eq!(p("2413").skew_components(), vec![p("2413")]);
    }

    #[test]
    fn decompose_concatenates_under_sum() {
        let a = p("2134");
        let b = p("312");
        let mut expected = a.sum_components();
        expected.extend(b.sum_components());
        assert_eq!(a.direct_sum(&b).sum_components(), expected);
    }

    #[test]
    fn deletions_and_extensions() {
        assert_eq!(p("1").one_point_extensions(), vec![p("12"), p("21")]);
        assert_eq!(p("132").one_point_deletions(), vec![p("12"), p("21")]);
        assert_eq!(Permutation::empty().one_point_extensions(), vec![p("1")]);
        assert_eq!(p("1").one_point_deletions(), vec![Permutation::empty()]);
    }

    #[test]
    fn deletion_extension_duality() {
        for s in ["1", "21", "132", "2413", "54213"] {
            let q = p(s);
            for d in q.one_point_deletions() {
                assert!(d.one_point_extensions().contains(&q));
            }
            for e in q.one_point_extensions() {
                assert!(e.one_point_deletions().contains(&q));
            }
        }
    }

    #[test]
    fn textual_round_trip() {
        for s in ["", "1", "32514", "4321"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q);
        }
        let long = Permutation::new((1..=11).rev().collect::<Vec<u8>>()).unwrap();
        assert_eq!(long.to_string(), "11,10,9,8,7,6,5,4,3,2,1");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
        // digit strings and comma strings denote the same permutation
        assert_eq!(p("3,2,5,1,4"), p("32514"));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("302".parse::<Permutation>().is_err());
        assert!("1,x".parse::<Permutation>().is_err());
        assert!("11".parse::<Permutation>().is_err()); // digit form: 1 appears twice
    }

    #[test]
    fn all_permutations_sizes() {
        assert_eq!(all_permutations(0).len(), 1);
        assert_eq!(all_permutations(1).len(), 1);
        assert_eq!(all_permutations(4).len(), 24);
        let mut sorted = all_permutations(4);
        sorted.sort();
        assert_eq!(sorted, all_permutations(4));
    }

    #[test]
    fn pattern_of_renormalizes() {
        assert_eq!(Permutation::pattern_of(&[2, 5, 4]), p("132"));
        assert_eq!(Permutation::pattern_of(&[]), Permutation::empty());
        assert_eq!(Permutation::pattern_of(&[7, 3]), p("21"));
    }
}
