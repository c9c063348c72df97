use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// A finite multiset with deterministic (sorted) iteration order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset<T: Ord> {
    counts: BTreeMap<T, usize>,
    total: usize,
}

impl<T: Ord> Default for Multiset<T> {
    fn default() -> Self {
        Self {
            counts: BTreeMap::new(),
            total: 0,
        }
    }
}

impl<T: Ord + Clone> Multiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, item: T) {
        self.insert_n(item, 1);
    }

    pub fn insert_n(&mut self, item: T, n: usize) {
        if n == 0 {
            return;
        }
        *self.counts.entry(item).or_insert(0) += n;
        self.total += n;
    }

    /// Removes one copy; returns false when the item was absent.
    pub fn remove(&mut self, item: &T) -> bool {
        match self.counts.get_mut(item) {
            Some(c) => {
                *c -= 1;
                if *c == 0 {
                    self.counts.remove(item);
                }
                self.total -= 1;
                true
            }
            None => false,
        }
    }

    pub fn count(&self, item: &T) -> usize {
        self.counts.get(item).copied().unwrap_or(0)
    }

    /// Total number of elements counted with multiplicity.
    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// Pairs of (item, multiplicity) in increasing item order.
    pub fn iter(&self) -> impl Iterator<Item = (&T, usize)> + '_ {
        self.counts.iter().map(|(k, &v)| (k, v))
    }

    /// Items repeated according to multiplicity, sorted.
    pub fn to_sorted_vec(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.total);
        for (k, &v) in &self.counts {
            for _ in 0..v {
                out.push(k.clone());
            }
        }
        out
    }

    /// Multiset sum.
    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.insert_n(k.clone(), v);
        }
        out
    }

    pub fn map<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> U) -> Multiset<U> {
        let mut out = Multiset::new();
        for (k, v) in self.iter() {
            out.insert_n(f(k), v);
        }
        out
    }
}

impl<T: Ord + Clone> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for x in iter {
            m.insert(x);
        }
        m
    }
}

impl<T: Ord + Clone> Extend<T> for Multiset<T> {
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        for x in iter {
            self.insert(x);
        }
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for Multiset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (k, v) in &self.counts {
            m.entry(k, v);
        }
        m.finish()
    }
}

/// Serialized as a sorted list of `[item, multiplicity]` pairs.
impl<T: Ord + Serialize> Serialize for Multiset<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.counts.len()))?;
        for (k, v) in &self.counts {
            seq.serialize_element(&(k, v))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_removal() {
        let mut m: Multiset<&str> = ["a", "b", "a"].into_iter().collect();
        assert_eq!(m.len(), 3);
        assert_eq!(m.count(&"a"), 2);
        assert!(m.remove(&"a"));
        assert!(!m.remove(&"z"));
        assert_eq!(m.to_sorted_vec(), vec!["a", "b"]);
    }

    #[test]
    fn equality_ignores_insertion_order() {
        let a: Multiset<u8> = [3, 1, 2, 1].into_iter().collect();
        let b: Multiset<u8> = [1, 1, 2, 3].into_iter().collect();
        assert_eq!(a, b);
        assert_eq!(a.sum(&b).count(&1), 4);
    }
}
