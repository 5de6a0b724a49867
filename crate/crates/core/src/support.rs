use std::collections::HashMap;

use crate::error::{Error, Location, Result};

/// A sorted set of positive integers: the absolute values of an array's entries.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SupportSet {
    values: Vec<u64>,
}

impl SupportSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Caller guarantees `values` is strictly increasing.
    pub(crate) fn from_sorted_unique(values: Vec<u64>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        SupportSet { values }
    }

    /// Builds a set from arbitrary values, rejecting repeats.
    pub fn from_values(mut values: Vec<u64>) -> Result<Self> {
        values.sort_unstable();
        if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateAbsoluteValue {
                value: w[0],
                locations: Vec::new(),
            });
        }
        Ok(SupportSet { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.values.binary_search(&x).is_ok()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.values.iter().copied()
    }

    /// Returns `(missing, extra)`: values of `expected` absent from `self`,
    /// and values of `self` absent from `expected`.
    pub fn difference_with(&self, expected: &SupportSet) -> (Vec<u64>, Vec<u64>) {
        let (a, b) = (&self.values, &expected.values);
        let (mut i, mut j) = (0, 0);
        let (mut missing, mut extra) = (Vec::new(), Vec::new());
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) if x == y => {
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    extra.push(*x);
                    i += 1;
                }
                (Some(_), Some(y)) => {
                    missing.push(*y);
                    j += 1;
                }
                (Some(x), None) => {
                    extra.push(*x);
                    i += 1;
                }
                (None, Some(y)) => {
                    missing.push(*y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        (missing, extra)
    }

    /// Adds `x` to every element.
    pub fn shifted(&self, x: u64) -> SupportSet {
        SupportSet {
            values: self.values.iter().map(|v| v + x).collect(),
        }
    }
}

impl FromIterator<u64> for SupportSet {
    /// Collects and deduplicates. Use [`SupportSet::from_values`] to reject repeats.
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        let mut values: Vec<u64> = iter.into_iter().collect();
        values.sort_unstable();
        values.dedup();
        SupportSet { values }
    }
}

/// Collects absolute values, failing on the first repeated one with every
/// location holding it.
pub(crate) fn collect_support<I>(entries: I) -> Result<SupportSet>
where
    I: IntoIterator<Item = (Location, i64)>,
{
    let mut seen: HashMap<u64, Location> = HashMap::new();
    let mut dup: Option<(u64, Vec<Location>)> = None;
    let mut all: Vec<(Location, i64)> = Vec::new();
    for (loc, e) in entries {
        let a = e.unsigned_abs();
        if dup.is_none() {
            if let Some(first) = seen.insert(a, loc) {
                dup = Some((a, vec![first, loc]));
            }
        }
        all.push((loc, e));
    }
    if let Some((value, _)) = dup {
        let locations = all
            .iter()
            .filter(|(_, e)| e.unsigned_abs() == value)
            .map(|(l, _)| *l)
            .collect();
        return Err(Error::DuplicateAbsoluteValue { value, locations });
    }
    let mut values: Vec<u64> = seen.into_keys().collect();
    values.sort_unstable();
    Ok(SupportSet::from_sorted_unique(values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_reports_both_sides() {
        let a: SupportSet = [1, 2, 4, 7].into_iter().collect();
        let b: SupportSet = [1, 3, 4, 5].into_iter().collect();
        assert_eq!(a.difference_with(&b), (vec![3, 5], vec![2, 7]));
        assert_eq!(a.difference_with(&a), (vec![], vec![]));
    }

    #[test]
    fn duplicates_are_errors() {
        assert!(SupportSet::from_values(vec![3, 1, 3]).is_err());
        let loc = |c| Location {
            block: None,
            row: 1,
            col: c,
        };
        let err = collect_support(vec![(loc(1), 5), (loc(2), -2), (loc(3), -5)]).unwrap_err();
        match err {
            Error::DuplicateAbsoluteValue { value, locations } => {
                assert_eq!(value, 5);
                assert_eq!(locations, vec![loc(1), loc(3)]);
            }
            e => panic!("unexpected {e}"),
        }
    }
}
