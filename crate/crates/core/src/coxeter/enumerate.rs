//! Coset enumeration over a presentation with involutory generators.
//!
//! Enumerates cosets of the trivial subgroup, so a completed table gives
//! the group order. Generators are involutions, so the table has a single
//! column per generator and setting `c.g = d` always sets `d.g = c` too.
//! Relator scans and coset definitions happen in a fixed order, so the
//! outcome is deterministic. The number of cosets ever defined is capped;
//! hitting the cap reports [`EnumerationOutcome::Exceeded`], which is the
//! expected outcome on infinite groups.

use super::{CoxeterSystem, Label};
use crate::genset::GenSet;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnumerationOutcome {
    /// The table closed; the group has exactly this many elements.
    Order(usize),
    /// More cosets than the cap were defined before the table closed.
    Exceeded,
}

struct CosetTable {
    /// `rows[c][g]`, indices into the coset list. Entries may go stale
    /// after a coincidence; resolve through `find` when reading.
    rows: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    ngens: usize,
    cap: usize,
}

impl CosetTable {
    fn new(ngens: usize, cap: usize) -> CosetTable {
        CosetTable {
            rows: vec![vec![None; ngens]],
            parent: vec![0],
            ngens,
            cap,
        }
    }

    fn find(&mut self, mut c: usize) -> usize {
        while self.parent[c] != c {
            let up = self.parent[self.parent[c]];
            self.parent[c] = up;
            c = up;
        }
        c
    }

    fn entry(&mut self, c: usize, g: usize) -> Option<usize> {
        self.rows[c][g].map(|d| self.find(d))
    }

    fn set(&mut self, c: usize, g: usize, d: usize) {
        self.rows[c][g] = Some(d);
        self.rows[d][g] = Some(c);
    }

    /// Defines `c.g` as a fresh coset. `None` means the cap is hit.
    fn define(&mut self, c: usize, g: usize) -> Option<usize> {
        if self.rows.len() >= self.cap {
            return None;
        }
        let d = self.rows.len();
        self.rows.push(vec![None; self.ngens]);
        self.parent.push(d);
        self.set(c, g, d);
        Some(d)
    }

    /// Merges the classes of `a` and `b`, folding their rows together and
    /// chasing any further coincidences this exposes. Keeps the smaller
    /// index, so coset 0 always survives.
    fn coincide(&mut self, a: usize, b: usize) {
        let mut queue = std::collections::VecDeque::new();
        queue.push_back((a, b));
        while let Some((a, b)) = queue.pop_front() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, dead) = (a.min(b), a.max(b));
            self.parent[dead] = keep;
            for g in 0..self.ngens {
                if let Some(u) = self.rows[dead][g].take() {
                    let u = self.find(u);
                    match self.entry(keep, g) {
                        Some(v) => {
                            if u != v {
                                queue.push_back((u, v));
                            }
                        }
                        None => self.set(keep, g, u),
                    }
                }
            }
        }
    }

    /// Scans `word` starting and ending at `c`, filling gaps by defining
    /// new cosets. `false` means the cap was hit.
    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> bool {
        let mut f = c;
        let mut fi = 0;
        let mut b = c;
        let mut bi = word.len();
        loop {
            while fi < bi {
                match self.entry(f, word[fi]) {
                    Some(next) => {
                        f = next;
                        fi += 1;
                    }
                    None => break,
                }
            }
            if fi == bi {
                if f != b {
                    self.coincide(f, b);
                }
                return true;
            }
            while bi > fi {
                match self.entry(b, word[bi - 1]) {
                    Some(prev) => {
                        b = prev;
                        bi -= 1;
                    }
                    None => break,
                }
            }
            if fi == bi {
                if f != b {
                    self.coincide(f, b);
                }
                return true;
            }
            if bi == fi + 1 {
                self.set(f, word[fi], b);
                return true;
            }
            match self.define(f, word[fi]) {
                Some(d) => {
                    f = d;
                    fi += 1;
                }
                None => return false,
            }
        }
    }

    fn live_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&c| self.find(c) == c).count()
    }
}

/// Order of the subgroup generated by `subset`, by coset enumeration with
/// at most `max_cosets` cosets defined along the way.
pub fn enumerate_coxeter(
    sys: &CoxeterSystem,
    subset: GenSet,
    max_cosets: usize,
) -> EnumerationOutcome {
    let gens: Vec<usize> = subset.iter().collect();
    let ngens = gens.len();
    let mut relators: Vec<Vec<usize>> = Vec::new();
    for a in 0..ngens {
        for b in a + 1..ngens {
            if let Label::Finite(m) = sys.label(gens[a], gens[b]) {
                let mut w = Vec::with_capacity(2 * m as usize);
                for _ in 0..m {
                    w.push(a);
                    w.push(b);
                }
                relators.push(w);
            }
        }
    }

    let mut table = CosetTable::new(ngens, max_cosets.max(1));
    let mut c = 0;
    while c < table.rows.len() {
        if table.find(c) != c {
            c += 1;
            continue;
        }
        for w in &relators {
            if !table.scan_and_fill(c, w) {
                return EnumerationOutcome::Exceeded;
            }
            if table.find(c) != c {
                break;
            }
        }
        if table.find(c) == c {
            for g in 0..ngens {
                if table.entry(c, g).is_none() && table.define(c, g).is_none() {
                    return EnumerationOutcome::Exceeded;
                }
            }
        }
        c += 1;
    }
    EnumerationOutcome::Order(table.live_count())
}
