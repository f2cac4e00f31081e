//! Coxeter systems: labelled generator sets, sphericality, and the
//! poset of spherical subsets.
//!
//! A system is a finite generator list plus a symmetric label `m(s,t) in
//! {2,3,...} or infinity` for each unordered pair. A subset is *spherical*
//! when the group it generates is finite; this is decided exactly by
//! matching each connected component of the labelled diagram against the
//! finite-type templates (see [`templates`]), never by numerics.
//!
//! [`enumerate`] contains an independent coset enumerator used to
//! cross-check the template route on small systems.

mod enumerate;
mod parse;
mod templates;

pub use enumerate::{enumerate_coxeter, EnumerationOutcome};
pub use parse::parse_coxeter;

use crate::genset::{GenSet, MAX_INDICES};
use serde::Serialize;
use thiserror::Error;

/// A pairwise label: the order of `st` in the group.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("input is not valid JSON: {0}")]
    Json(String),
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("at most {MAX_INDICES} generators are supported, got {0}")]
    TooManyGenerators(usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

/// A Coxeter system: ordered generators plus a total symmetric label map.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    generators: Vec<String>,
    /// Symmetric matrix, diagonal unused.
    labels: Vec<Vec<Label>>,
}

impl CoxeterSystem {
    /// Builds a system from explicit pair labels; pairs not listed get
    /// `default`. Generator names must be distinct and labels at least 2.
    pub fn new(
        generators: Vec<String>,
        pairs: &[(usize, usize, Label)],
        default: Label,
    ) -> Result<CoxeterSystem, CoxeterError> {
        if generators.len() > MAX_INDICES {
            return Err(CoxeterError::TooManyGenerators(generators.len()));
        }
        {
            let mut seen = std::collections::BTreeSet::new();
            for g in &generators {
                if !seen.insert(g) {
                    return Err(CoxeterError::Field {
                        field: "generators".into(),
                        message: format!("duplicate generator `{g}`"),
                    });
                }
            }
        }
        let n = generators.len();
        let mut labels = vec![vec![default; n]; n];
        let mut set = vec![vec![false; n]; n];
        for &(i, j, m) in pairs {
            if i == j {
                return Err(CoxeterError::Field {
                    field: "labels".into(),
                    message: format!("label on pair ({0},{0}) of a single generator", generators[i]),
                });
            }
            if let Label::Finite(v) = m {
                if v < 2 {
                    return Err(CoxeterError::Field {
                        field: "labels".into(),
                        message: format!("label {v} on pair ({},{}) is below 2", generators[i], generators[j]),
                    });
                }
            }
            if set[i][j] && labels[i][j] != m {
                return Err(CoxeterError::Field {
                    field: "labels".into(),
                    message: format!(
                        "conflicting labels for pair ({},{})",
                        generators[i], generators[j]
                    ),
                });
            }
            set[i][j] = true;
            set[j][i] = true;
            labels[i][j] = m;
            labels[j][i] = m;
        }
        Ok(CoxeterSystem { generators, labels })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        debug_assert_ne!(i, j);
        self.labels[i][j]
    }

    pub fn full_set(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    /// True iff the subgroup generated by `subset` is finite. Exact:
    /// decomposes the induced diagram into connected components (edges are
    /// pairs with label at least 3) and matches each against the finite
    /// templates.
    pub fn is_spherical(&self, subset: GenSet) -> bool {
        for comp in self.diagram_components(subset) {
            if !templates::component_is_finite_type(&comp) {
                return false;
            }
        }
        true
    }

    /// True iff every subset with all pairwise labels finite is spherical.
    /// On failure returns the minimal violating subset: smallest
    /// cardinality, ties broken lexicographically in generator order.
    pub fn is_fc(&self) -> (bool, Option<GenSet>) {
        // It is enough to look at cliques of the finite-label graph:
        // a subset with an infinite pairwise label is never a candidate.
        // Cliques are scanned by cardinality then lexicographic order, so
        // the first failure is the minimal witness.
        let mut level: Vec<GenSet> = vec![GenSet::EMPTY];
        for _size in 1..=self.rank() {
            let mut next: Vec<GenSet> = Vec::new();
            for &clique in &level {
                let start = clique.iter().last().map_or(0, |i| i + 1);
                for v in start..self.rank() {
                    if clique.iter().all(|u| self.label(u, v) != Label::Infinite) {
                        next.push(clique.with(v));
                    }
                }
            }
            next.sort_by(|a, b| a.cmp_card_lex(*b));
            for &clique in &next {
                if !self.is_spherical(clique) {
                    return (false, Some(clique));
                }
            }
            if next.is_empty() {
                break;
            }
            level = next;
        }
        (true, None)
    }

    /// All spherical subsets, with the inclusion order materialised.
    /// Sphericality is monotone under taking subsets, so the poset is
    /// downward closed and can be grown level by level.
    pub fn spherical_subsets(&self) -> SphericalPoset {
        let mut subsets: Vec<GenSet> = vec![GenSet::EMPTY];
        let mut present = std::collections::BTreeSet::new();
        present.insert(GenSet::EMPTY);
        let mut level: Vec<GenSet> = vec![GenSet::EMPTY];
        while !level.is_empty() {
            let mut candidates = std::collections::BTreeSet::new();
            for &s in &level {
                let start = s.iter().last().map_or(0, |i| i + 1);
                for v in start..self.rank() {
                    candidates.insert(s.with(v));
                }
            }
            let mut next = Vec::new();
            for cand in candidates {
                let all_faces_present = cand
                    .iter()
                    .all(|i| present.contains(&cand.without(i)));
                if all_faces_present && self.is_spherical(cand) {
                    present.insert(cand);
                    next.push(cand);
                }
            }
            subsets.extend(next.iter().copied());
            level = next;
        }
        subsets.sort_by(|a, b| a.cmp_card_lex(*b));
        let index: std::collections::BTreeMap<GenSet, usize> = subsets
            .iter()
            .enumerate()
            .map(|(k, &s)| (s, k))
            .collect();
        let mut covers = Vec::new();
        for (k, &s) in subsets.iter().enumerate() {
            for i in 0..self.rank() {
                if !s.contains(i) {
                    if let Some(&up) = index.get(&s.with(i)) {
                        covers.push((k, up));
                    }
                }
            }
        }
        covers.sort_unstable();
        SphericalPoset { subsets, covers }
    }

    /// Connected components of the diagram induced on `subset`. Vertices
    /// are generator indices; edges are pairs with label 3 or more
    /// (infinite included), carrying the label.
    fn diagram_components(&self, subset: GenSet) -> Vec<templates::Component> {
        let verts: Vec<usize> = subset.iter().collect();
        let mut seen = std::collections::BTreeSet::new();
        let mut comps = Vec::new();
        for &start in &verts {
            if seen.contains(&start) {
                continue;
            }
            let mut comp_verts = vec![start];
            seen.insert(start);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &verts {
                    if u != v && !seen.contains(&v) && self.label(u, v) >= Label::Finite(3) {
                        seen.insert(v);
                        comp_verts.push(v);
                        stack.push(v);
                    }
                }
            }
            comp_verts.sort_unstable();
            let mut edges = Vec::new();
            for (a_pos, &a) in comp_verts.iter().enumerate() {
                for &b in &comp_verts[a_pos + 1..] {
                    let l = self.label(a, b);
                    if l >= Label::Finite(3) {
                        edges.push((a, b, l));
                    }
                }
            }
            comps.push(templates::Component {
                vertices: comp_verts,
                edges,
            });
        }
        comps
    }

    pub fn render_subset(&self, s: GenSet) -> String {
        s.render(&self.generators)
    }
}

/// The poset of spherical subsets: subsets sorted by cardinality then
/// lexicographic order, plus the covering relation (one-generator steps).
#[derive(Clone, Debug)]
pub struct SphericalPoset {
    pub subsets: Vec<GenSet>,
    /// Indices into `subsets`: `(lower, upper)` with one generator added.
    pub covers: Vec<(usize, usize)>,
}

impl SphericalPoset {
    pub fn contains(&self, s: GenSet) -> bool {
        self.subsets.binary_search_by(|p| p.cmp_card_lex(s)).is_ok()
    }

    pub fn max_card(&self) -> usize {
        self.subsets.iter().map(|s| s.card()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(pairs: &[(&str, &str, Label)], gens: &[&str]) -> CoxeterSystem {
        let generators: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let idx = |n: &str| generators.iter().position(|g| g == n).unwrap();
        let pairs: Vec<(usize, usize, Label)> = pairs
            .iter()
            .map(|&(a, b, m)| (idx(a), idx(b), m))
            .collect();
        CoxeterSystem::new(generators, &pairs, Label::Infinite).unwrap()
    }

    #[test]
    fn dihedral_subsets_are_spherical_iff_label_finite() {
        let fin = sys(&[("s", "t", Label::Finite(3))], &["s", "t"]);
        assert!(fin.is_spherical(GenSet::full(2)));
        let inf = sys(&[], &["s", "t"]);
        assert!(!inf.is_spherical(GenSet::full(2)));
        assert!(inf.is_spherical(GenSet::singleton(0)));
        assert!(inf.is_spherical(GenSet::EMPTY));
    }

    #[test]
    fn triangle_of_threes_is_not_spherical_and_not_fc() {
        let tri = sys(
            &[
                ("a", "b", Label::Finite(3)),
                ("b", "c", Label::Finite(3)),
                ("a", "c", Label::Finite(3)),
            ],
            &["a", "b", "c"],
        );
        assert!(!tri.is_spherical(GenSet::full(3)));
        let (fc, witness) = tri.is_fc();
        assert!(!fc);
        assert_eq!(witness, Some(GenSet::full(3)));
    }

    #[test]
    fn right_angled_systems_are_fc() {
        let ra = sys(
            &[("a", "b", Label::Finite(2)), ("b", "c", Label::Finite(2))],
            &["a", "b", "c"],
        );
        let (fc, witness) = ra.is_fc();
        assert!(fc);
        assert_eq!(witness, None);
    }

    #[test]
    fn spherical_poset_of_free_pair_misses_the_top() {
        let inf = sys(&[], &["s", "t"]);
        let poset = inf.spherical_subsets();
        assert_eq!(poset.subsets.len(), 3);
        assert!(poset.contains(GenSet::EMPTY));
        assert!(poset.contains(GenSet::singleton(0)));
        assert!(!poset.contains(GenSet::full(2)));
        assert_eq!(poset.covers.len(), 2);
    }

    #[test]
    fn spherical_poset_is_downward_closed_on_a_mixed_system() {
        let m = sys(
            &[
                ("a", "b", Label::Finite(4)),
                ("b", "c", Label::Finite(3)),
                ("a", "c", Label::Finite(2)),
                ("c", "d", Label::Finite(3)),
            ],
            &["a", "b", "c", "d"],
        );
        let poset = m.spherical_subsets();
        for &s in &poset.subsets {
            for i in s.iter() {
                assert!(poset.contains(s.without(i)), "face of {s:?} missing");
            }
        }
        // {a,b,c} is the B3 diagram: finite.
        assert!(poset.contains(GenSet::from_indices([0, 1, 2])));
    }
}
