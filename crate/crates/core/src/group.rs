//! Finite subgroups represented as sorted element lists.
//!
//! Stabilisers in this crate are always finite even when the ambient group
//! is not, so a sorted, deduplicated `Vec` of elements is a faithful and
//! directly comparable representation: two subgroups are equal iff their
//! element lists are equal.

use std::fmt::Debug;

/// Group operations over some element type. Implementors decide what an
/// element is (a normal-form word, an index into a multiplication table).
pub trait GroupOps {
    type Elem: Clone + Ord + Eq + Debug;

    fn id(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Stable human-readable rendering, used verbatim in reports.
    fn render(&self, a: &Self::Elem) -> String;
}

/// A finite subgroup as a sorted list of elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Subgroup<E: Clone + Ord + Eq + Debug>(Vec<E>);

impl<E: Clone + Ord + Eq + Debug> Subgroup<E> {
    /// Wraps an element list, sorting and deduplicating. The caller is
    /// responsible for the list actually being closed under the group
    /// operations; `closure` produces closed lists from scratch.
    pub fn from_elements(mut elems: Vec<E>) -> Subgroup<E> {
        elems.sort();
        elems.dedup();
        Subgroup(elems)
    }

    pub fn trivial(id: E) -> Subgroup<E> {
        Subgroup(vec![id])
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.0
    }

    pub fn contains(&self, e: &E) -> bool {
        self.0.binary_search(e).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup<E>) -> bool {
        self.0.iter().all(|e| other.contains(e))
    }

    /// Sorted-list intersection. An intersection of subgroups is a subgroup.
    pub fn intersect(&self, other: &Subgroup<E>) -> Subgroup<E> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        Subgroup(out)
    }

    /// Closure of `gens` under multiplication and inversion.
    pub fn closure<G: GroupOps<Elem = E>>(ops: &G, gens: &[E]) -> Subgroup<E> {
        let mut elems = std::collections::BTreeSet::new();
        elems.insert(ops.id());
        let mut frontier: Vec<E> = vec![ops.id()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                for next in [ops.mul(&x, g), ops.mul(&x, &ops.inv(g))] {
                    if elems.insert(next.clone()) {
                        frontier.push(next);
                    }
                }
            }
        }
        Subgroup(elems.into_iter().collect())
    }

    /// Every subgroup of this (finite) group, sorted. Standard incremental
    /// closure: extend each known subgroup by each outside element.
    pub fn all_subgroups<G: GroupOps<Elem = E>>(&self, ops: &G) -> Vec<Subgroup<E>> {
        let mut known = std::collections::BTreeSet::new();
        known.insert(Subgroup::trivial(ops.id()));
        loop {
            let mut added = Vec::new();
            for sub in &known {
                for e in &self.0 {
                    if sub.contains(e) {
                        continue;
                    }
                    let mut gens = sub.0.clone();
                    gens.push(e.clone());
                    let bigger = Subgroup::closure(ops, &gens);
                    if bigger.is_subgroup_of(self) && !known.contains(&bigger) {
                        added.push(bigger);
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            known.extend(added);
        }
        known.into_iter().collect()
    }

    pub fn render<G: GroupOps<Elem = E>>(&self, ops: &G) -> Vec<String> {
        self.0.iter().map(|e| ops.render(e)).collect()
    }
}

/// Checks that `mul` is a group table with element 0 as identity and
/// returns the inverse of each element. The checks are total: closure,
/// identity, Latin-square rows and columns, associativity, two-sided
/// inverses.
pub fn validate_table(mul: &[Vec<u32>]) -> Result<Vec<u32>, String> {
    let n = mul.len();
    if n == 0 {
        return Err("empty table".into());
    }
    for (a, row) in mul.iter().enumerate() {
        if row.len() != n {
            return Err(format!("row {a} has length {}, expected {n}", row.len()));
        }
        for &x in row {
            if x as usize >= n {
                return Err(format!("entry {x} out of range in row {a}"));
            }
        }
    }
    for a in 0..n {
        if mul[a][0] != a as u32 || mul[0][a] != a as u32 {
            return Err("element 0 is not the identity".into());
        }
    }
    for a in 0..n {
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for b in 0..n {
            seen_row[mul[a][b] as usize] = true;
            seen_col[mul[b][a] as usize] = true;
        }
        if seen_row.contains(&false) || seen_col.contains(&false) {
            return Err(format!("row or column {a} is not a permutation"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let left = mul[mul[a][b] as usize][c];
                let right = mul[a][mul[b][c] as usize];
                if left != right {
                    return Err(format!("not associative at ({a}, {b}, {c})"));
                }
            }
        }
    }
    let mut inv = vec![0u32; n];
    for a in 0..n {
        let b = (0..n).find(|&b| mul[a][b] == 0).unwrap();
        if mul[b][a] != 0 {
            return Err(format!("element {a} has one-sided inverse only"));
        }
        inv[a] = b as u32;
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Z/n as indices with addition, for exercising the generic machinery.
    struct Cyclic(usize);
    impl GroupOps for Cyclic {
        type Elem = usize;
        fn id(&self) -> usize {
            0
        }
        fn mul(&self, a: &usize, b: &usize) -> usize {
            (a + b) % self.0
        }
        fn inv(&self, a: &usize) -> usize {
            (self.0 - a) % self.0
        }
        fn render(&self, a: &usize) -> String {
            a.to_string()
        }
    }

    #[test]
    fn closure_of_generator_is_whole_cyclic_group() {
        let ops = Cyclic(6);
        let g = Subgroup::closure(&ops, &[1]);
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn subgroups_of_z6_are_the_divisor_lattice() {
        let ops = Cyclic(6);
        let g = Subgroup::closure(&ops, &[1]);
        let subs = g.all_subgroups(&ops);
        let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
        assert_eq!(orders.len(), 4);
        assert!(orders.contains(&1) && orders.contains(&2) && orders.contains(&3) && orders.contains(&6));
    }

    #[test]
    fn intersect_is_elementwise() {
        let a = Subgroup::from_elements(vec![0usize, 2, 4]);
        let b = Subgroup::from_elements(vec![0usize, 3]);
        assert_eq!(a.intersect(&b).elements(), &[0]);
    }
}
