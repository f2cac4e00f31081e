//! Small index sets stored as bitmasks.
//!
//! Generator subsets of a Coxeter system and vertex cliques of a graph
//! product are both subsets of a short, globally ordered list, so a `u32`
//! mask is enough. The cap of 24 indices keeps every exhaustive sweep in
//! this crate (subset posets, clique enumeration) comfortably finite.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Hard cap on the number of indices a [`GenSet`] can address.
pub const MAX_INDICES: usize = 24;

/// A subset of `{0, .., MAX_INDICES-1}` as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct GenSet(u32);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn singleton(i: usize) -> GenSet {
        debug_assert!(i < MAX_INDICES);
        GenSet(1 << i)
    }

    pub fn full(n: usize) -> GenSet {
        debug_assert!(n <= MAX_INDICES);
        GenSet(((1u64 << n) - 1) as u32)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> GenSet {
        let mut s = GenSet::EMPTY;
        for i in iter {
            s = s.with(i);
        }
        s
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn with(self, i: usize) -> GenSet {
        debug_assert!(i < MAX_INDICES);
        GenSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> GenSet {
        GenSet(self.0 & !(1 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn card(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: GenSet) -> GenSet {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> GenSet {
        GenSet(self.0 & other.0)
    }

    pub fn minus(self, other: GenSet) -> GenSet {
        GenSet(self.0 & !other.0)
    }

    /// Indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, the empty set first, `self` last.
    pub fn subsets(self) -> Vec<GenSet> {
        let mask = self.0;
        let mut out = Vec::with_capacity(1 << self.card());
        let mut sub = 0u32;
        loop {
            out.push(GenSet(sub));
            if sub == mask {
                break;
            }
            sub = (sub.wrapping_sub(mask)) & mask;
        }
        out
    }

    /// Order by cardinality first, then lexicographically on the ascending
    /// index list. This is the order used to pick minimal witnesses.
    pub fn cmp_card_lex(self, other: GenSet) -> std::cmp::Ordering {
        self.card()
            .cmp(&other.card())
            .then_with(|| self.iter().cmp(other.iter()))
    }

    pub fn render(self, names: &[String]) -> String {
        let parts: Vec<&str> = self.iter().map(|i| names[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl PartialOrd for GenSet {
    fn partial_cmp(&self, other: &GenSet) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GenSet {
    fn cmp(&self, other: &GenSet) -> std::cmp::Ordering {
        self.cmp_card_lex(*other)
    }
}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GenSet[")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration_covers_everything() {
        let s = GenSet::from_indices([0, 2, 3]);
        let subs = s.subsets();
        assert_eq!(subs.len(), 8);
        assert!(subs.contains(&GenSet::EMPTY));
        assert!(subs.contains(&s));
        for sub in &subs {
            assert!(sub.is_subset(s));
        }
    }

    #[test]
    fn card_lex_order_prefers_small_then_early() {
        let a = GenSet::from_indices([0, 3]);
        let b = GenSet::from_indices([1, 2]);
        // |a| = |b| = 2 and [0,3] < [1,2] lexicographically.
        assert_eq!(a.cmp_card_lex(b), std::cmp::Ordering::Less);
        let c = GenSet::singleton(5);
        assert_eq!(c.cmp_card_lex(a), std::cmp::Ordering::Less);
    }

    #[test]
    fn iter_is_ascending() {
        let s = GenSet::from_indices([4, 1, 7]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 4, 7]);
    }
}
