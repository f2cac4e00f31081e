//! Graph products of finite groups.
//!
//! The input is a finite simple graph with a finite group on each
//! vertex; the product is generated by all vertex groups, with two
//! groups commuting exactly when their vertices are joined. Elements are
//! kept in a normal form: a sequence of syllables, each a non-identity
//! element of one vertex group, such that no two syllables of the same
//! vertex can be brought together by swapping commuting neighbours, and
//! commuting adjacent syllables are in ascending vertex order. Two
//! elements are equal iff their normal forms are equal.

mod davis;
mod parse;

pub use davis::{BallVertex, DavisBall, DavisError};
pub use parse::parse_graph_product;

use crate::genset::{GenSet, MAX_INDICES};
use crate::group::GroupOps;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphProductError {
    #[error("input is not valid JSON: {0}")]
    Json(String),
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("at most {MAX_INDICES} vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("vertex `{vertex}`: {message}")]
    BadGroup { vertex: String, message: String },
}

/// A finite group given by its multiplication table; element 0 is the
/// identity.
#[derive(Clone, Debug)]
pub struct VertexGroup {
    name: String,
    mul: Vec<Vec<u32>>,
    inv: Vec<u32>,
    elem_names: Vec<String>,
}

impl VertexGroup {
    pub fn cyclic(name: &str, order: u32) -> VertexGroup {
        let n = order as usize;
        let mul = (0..n)
            .map(|a| (0..n).map(|b| ((a + b) % n) as u32).collect())
            .collect();
        let inv = (0..n).map(|a| ((n - a) % n) as u32).collect();
        let elem_names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => name.to_string(),
                _ => format!("{name}^{k}"),
            })
            .collect();
        VertexGroup { name: name.to_string(), mul, inv, elem_names }
    }

    /// Wraps an explicit table after checking it really is a group table
    /// with identity 0: closed, associative, with two-sided inverses.
    pub fn from_table(
        name: &str,
        mul: Vec<Vec<u32>>,
        elem_names: Option<Vec<String>>,
    ) -> Result<VertexGroup, String> {
        let n = mul.len();
        let inv = crate::group::validate_table(&mul)?;
        let elem_names = match elem_names {
            Some(names) => {
                if names.len() != n {
                    return Err(format!(
                        "{} element names for {n} elements",
                        names.len()
                    ));
                }
                names
            }
            None => (0..n)
                .map(|k| if k == 0 { "1".into() } else { format!("{name}{k}") })
                .collect(),
        };
        Ok(VertexGroup { name: name.to_string(), mul, inv, elem_names })
    }

    pub fn order(&self) -> u32 {
        self.mul.len() as u32
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

/// One syllable: a vertex index and a non-identity element of its group.
pub type Syllable = (usize, u32);

/// An element in normal form. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct NormalWord(Vec<Syllable>);

impl NormalWord {
    pub fn identity() -> NormalWord {
        NormalWord(Vec::new())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }
}

#[derive(Clone, Debug)]
pub struct GraphProduct {
    groups: Vec<VertexGroup>,
    adj: Vec<Vec<bool>>,
    cliques: Vec<GenSet>,
}

impl GraphProduct {
    /// `edges` are pairs of vertex indices whose groups commute.
    pub fn new(
        groups: Vec<VertexGroup>,
        edges: &[(usize, usize)],
    ) -> Result<GraphProduct, GraphProductError> {
        if groups.len() > MAX_INDICES {
            return Err(GraphProductError::TooManyVertices(groups.len()));
        }
        {
            let mut seen = std::collections::BTreeSet::new();
            for g in &groups {
                if !seen.insert(g.name.clone()) {
                    return Err(GraphProductError::Field {
                        field: "vertices".into(),
                        message: format!("duplicate vertex `{}`", g.name),
                    });
                }
            }
        }
        let n = groups.len();
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in edges {
            if a == b {
                return Err(GraphProductError::Field {
                    field: "edges".into(),
                    message: format!("vertex `{}` joined to itself", groups[a].name),
                });
            }
            adj[a][b] = true;
            adj[b][a] = true;
        }
        let cliques = enumerate_cliques(&adj);
        Ok(GraphProduct { groups, adj, cliques })
    }

    pub fn vertex_count(&self) -> usize {
        self.groups.len()
    }

    pub fn group(&self, v: usize) -> &VertexGroup {
        &self.groups[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.groups.iter().position(|g| g.name == name)
    }

    pub fn vertex_names(&self) -> Vec<String> {
        self.groups.iter().map(|g| g.name.clone()).collect()
    }

    pub fn commute(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    /// All cliques of the graph including the empty one, by cardinality
    /// then lexicographic order.
    pub fn cliques(&self) -> &[GenSet] {
        &self.cliques
    }

    pub fn is_clique(&self, s: GenSet) -> bool {
        self.cliques.binary_search_by(|c| c.cmp_card_lex(s)).is_ok()
    }

    /// Normal form of an arbitrary syllable sequence: drop identities,
    /// merge same-vertex syllables separated only by commuting ones, and
    /// take the lexicographically least word reachable by swapping
    /// adjacent commuting syllables. Runs to a fixpoint, so equal group
    /// elements get equal normal words.
    pub fn canonicalize(&self, raw: &[Syllable]) -> NormalWord {
        let mut w: Vec<Syllable> = raw.to_vec();
        loop {
            w.retain(|&(_, k)| k != 0);
            let mut changed = false;
            'merge: loop {
                for i in 0..w.len() {
                    for j in i + 1..w.len() {
                        if w[j].0 == w[i].0
                            && w[i + 1..j].iter().all(|&(u, _)| self.adj[u][w[i].0])
                        {
                            let (v, a) = w[i];
                            let b = w[j].1;
                            let prod = self.groups[v].mul[a as usize][b as usize];
                            w.remove(j);
                            if prod == 0 {
                                w.remove(i);
                            } else {
                                w[i].1 = prod;
                            }
                            changed = true;
                            continue 'merge;
                        }
                        if !self.adj[w[j].0][w[i].0] {
                            break;
                        }
                    }
                }
                break;
            }
            // A syllable can be first iff everything before it commutes
            // with it; among the candidates the least vertex wins (two
            // candidates never share a vertex, they would block each
            // other). Greedy front selection yields the least word.
            let mut rest = std::mem::take(&mut w);
            while !rest.is_empty() {
                let mut best = 0;
                for j in 1..rest.len() {
                    if rest[j].0 < rest[best].0
                        && rest[..j].iter().all(|&(u, _)| self.adj[u][rest[j].0])
                    {
                        best = j;
                    }
                }
                if best != 0 {
                    changed = true;
                }
                w.push(rest.remove(best));
            }
            if !changed {
                return NormalWord(w);
            }
        }
    }

    pub fn word(&self, syllables: &[Syllable]) -> NormalWord {
        self.canonicalize(syllables)
    }

    pub fn multiply(&self, a: &NormalWord, b: &NormalWord) -> NormalWord {
        let mut raw = a.0.clone();
        raw.extend_from_slice(&b.0);
        self.canonicalize(&raw)
    }

    pub fn inverse(&self, a: &NormalWord) -> NormalWord {
        let raw: Vec<Syllable> = a
            .0
            .iter()
            .rev()
            .map(|&(v, k)| (v, self.groups[v].inv[k as usize]))
            .collect();
        self.canonicalize(&raw)
    }

    /// Shortest representative of the coset `g * <clique subgroup>`:
    /// strips every syllable of a clique vertex that commutes past the
    /// tail of the word.
    pub fn coset_rep(&self, g: &NormalWord, clique: GenSet) -> NormalWord {
        let mut w = g.0.clone();
        loop {
            let strippable = (0..w.len()).rev().find(|&i| {
                clique.contains(w[i].0)
                    && w[i + 1..].iter().all(|&(u, _)| self.adj[u][w[i].0])
            });
            match strippable {
                Some(i) => {
                    w.remove(i);
                }
                None => break,
            }
        }
        self.canonicalize(&w)
    }

    /// All elements of the direct product over `clique`, as normal words.
    pub fn clique_subgroup(&self, clique: GenSet) -> Vec<NormalWord> {
        let verts: Vec<usize> = clique.iter().collect();
        let mut out = vec![Vec::new()];
        for &v in &verts {
            let mut next = Vec::new();
            for prefix in &out {
                for k in 0..self.groups[v].order() {
                    let mut w: Vec<Syllable> = prefix.clone();
                    if k != 0 {
                        w.push((v, k));
                    }
                    next.push(w);
                }
            }
            out = next;
        }
        out.into_iter().map(|w| self.canonicalize(&w)).collect()
    }

    pub fn render(&self, w: &NormalWord) -> String {
        if w.is_identity() {
            return "1".to_string();
        }
        w.0
            .iter()
            .map(|&(v, k)| self.groups[v].elem_names[k as usize].clone())
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn render_clique(&self, s: GenSet) -> String {
        let names = self.vertex_names();
        s.render(&names)
    }
}

impl GroupOps for GraphProduct {
    type Elem = NormalWord;

    fn id(&self) -> NormalWord {
        NormalWord::identity()
    }

    fn mul(&self, a: &NormalWord, b: &NormalWord) -> NormalWord {
        self.multiply(a, b)
    }

    fn inv(&self, a: &NormalWord) -> NormalWord {
        self.inverse(a)
    }

    fn render(&self, a: &NormalWord) -> String {
        GraphProduct::render(self, a)
    }
}

fn enumerate_cliques(adj: &[Vec<bool>]) -> Vec<GenSet> {
    let n = adj.len();
    let mut out = vec![GenSet::EMPTY];
    let mut level = vec![GenSet::EMPTY];
    while !level.is_empty() {
        let mut next = Vec::new();
        for &c in &level {
            let start = c.iter().last().map_or(0, |i| i + 1);
            for v in start..n {
                if c.iter().all(|u| adj[u][v]) {
                    next.push(c.with(v));
                }
            }
        }
        out.extend(next.iter().copied());
        level = next;
    }
    out.sort_by(|a, b| a.cmp_card_lex(*b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two commuting order-2 vertices.
    fn z2xz2() -> GraphProduct {
        GraphProduct::new(
            vec![VertexGroup::cyclic("a", 2), VertexGroup::cyclic("b", 2)],
            &[(0, 1)],
        )
        .unwrap()
    }

    /// Free product of orders 2 and 3, no edge.
    fn z2_free_z3() -> GraphProduct {
        GraphProduct::new(
            vec![VertexGroup::cyclic("a", 2), VertexGroup::cyclic("b", 3)],
            &[],
        )
        .unwrap()
    }

    #[test]
    fn commuting_syllables_sort_and_merge() {
        let p = z2xz2();
        let w = p.word(&[(1, 1), (0, 1)]);
        assert_eq!(w.syllables(), &[(0, 1), (1, 1)]);
        let sq = p.multiply(&w, &w);
        assert!(sq.is_identity());
    }

    #[test]
    fn free_syllables_do_not_sort() {
        let p = z2_free_z3();
        let w = p.word(&[(1, 1), (0, 1)]);
        assert_eq!(w.syllables(), &[(1, 1), (0, 1)]);
        let w2 = p.multiply(&w, &w);
        assert_eq!(w2.syllables(), &[(1, 1), (0, 1), (1, 1), (0, 1)]);
        let cube = p.multiply(&w2, &w);
        assert_eq!(cube.len(), 6);
    }

    #[test]
    fn inverse_multiplies_to_identity() {
        let p = z2_free_z3();
        for raw in [
            vec![(0, 1), (1, 1)],
            vec![(1, 2), (0, 1), (1, 1)],
            vec![(0, 1), (1, 2), (0, 1), (1, 1)],
        ] {
            let w = p.word(&raw);
            let winv = p.inverse(&w);
            assert!(p.multiply(&w, &winv).is_identity());
            assert!(p.multiply(&winv, &w).is_identity());
        }
    }

    #[test]
    fn syllables_of_z3_merge_by_exponent() {
        let p = z2_free_z3();
        let b = p.word(&[(1, 1)]);
        let b2 = p.multiply(&b, &b);
        assert_eq!(b2.syllables(), &[(1, 2)]);
        assert!(p.multiply(&b2, &b).is_identity());
    }

    #[test]
    fn coset_reps_strip_only_shuffleable_tails() {
        let free = z2_free_z3();
        let a_set = GenSet::singleton(0);
        // b*a with a stripped leaves b; a*b has b blocking the a.
        let ba = free.word(&[(1, 1), (0, 1)]);
        assert_eq!(free.coset_rep(&ba, a_set).syllables(), &[(1, 1)]);
        let ab = free.word(&[(0, 1), (1, 1)]);
        assert_eq!(free.coset_rep(&ab, a_set), ab);

        let ra = z2xz2();
        let ab = ra.word(&[(0, 1), (1, 1)]);
        assert_eq!(ra.coset_rep(&ab, a_set).syllables(), &[(1, 1)]);
        assert!(ra.coset_rep(&ab, GenSet::from_indices([0, 1])).is_identity());
    }

    #[test]
    fn clique_subgroup_enumerates_the_direct_product() {
        let ra = z2xz2();
        let sub = ra.clique_subgroup(GenSet::from_indices([0, 1]));
        assert_eq!(sub.len(), 4);
        let free = z2_free_z3();
        assert_eq!(free.clique_subgroup(GenSet::singleton(1)).len(), 3);
        assert_eq!(free.clique_subgroup(GenSet::EMPTY).len(), 1);
    }

    #[test]
    fn cliques_of_a_path_graph() {
        let p = GraphProduct::new(
            vec![
                VertexGroup::cyclic("a", 2),
                VertexGroup::cyclic("b", 2),
                VertexGroup::cyclic("c", 2),
            ],
            &[(0, 1), (1, 2)],
        )
        .unwrap();
        let cliques = p.cliques();
        // empty, three vertices, two edges; {a,c} is not a clique.
        assert_eq!(cliques.len(), 6);
        assert!(p.is_clique(GenSet::from_indices([0, 1])));
        assert!(!p.is_clique(GenSet::from_indices([0, 2])));
    }

    #[test]
    fn rendering_uses_vertex_names_and_powers() {
        let p = z2_free_z3();
        let w = p.word(&[(0, 1), (1, 2), (0, 1)]);
        assert_eq!(p.render(&w), "a*b^2*a");
        assert_eq!(p.render(&NormalWord::identity()), "1");
    }

    #[test]
    fn canonical_form_is_confluent_on_random_words() {
        // A 4-vertex graph mixing orders and one commuting path; products
        // of random syllables canonicalise associatively.
        let p = GraphProduct::new(
            vec![
                VertexGroup::cyclic("a", 2),
                VertexGroup::cyclic("b", 3),
                VertexGroup::cyclic("c", 2),
                VertexGroup::cyclic("d", 4),
            ],
            &[(0, 1), (1, 2), (2, 3)],
        )
        .unwrap();
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..200 {
            let mut raw = Vec::new();
            for _ in 0..(next() % 8) {
                let v = (next() % 4) as usize;
                let k = (next() % p.group(v).order() as u64) as u32;
                raw.push((v, k));
            }
            let cut = if raw.is_empty() { 0 } else { (next() as usize) % raw.len() };
            let whole = p.word(&raw);
            let left = p.word(&raw[..cut]);
            let right = p.word(&raw[cut..]);
            assert_eq!(p.multiply(&left, &right), whole);
            let inv = p.inverse(&whole);
            assert!(p.multiply(&whole, &inv).is_identity());
        }
    }
}
