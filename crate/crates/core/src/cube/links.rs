//! Flag condition on vertex links.
//!
//! The link of a vertex has one point per incident edge; a set of points
//! spans a simplex iff a cube realises all those directions at once.
//! Nonpositive curvature asks each link to be flag: whenever directions
//! are pairwise joined by squares, one cube must realise them jointly.

use super::CubeComplex;
use serde::Serialize;
use std::collections::BTreeSet;

/// A pairwise-square family of directions at `vertex` that no single
/// cube realises.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagViolation {
    pub vertex: u32,
    /// Neighbouring vertices giving the directions, ascending.
    pub directions: Vec<u32>,
}

impl CubeComplex {
    /// All flag failures, sorted by vertex then directions. Empty means
    /// every link is flag, which for a simply connected complex is the
    /// nonpositive-curvature condition.
    pub fn flag_violations(&self) -> Vec<FlagViolation> {
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            let nbrs: Vec<u32> = self.neighbors(v).to_vec();
            let n = nbrs.len();
            // Directions u, w are joined iff the square through v, u, w
            // exists; realised direction sets come from cubes at v.
            let mut joined = vec![vec![false; n]; n];
            let mut realised: BTreeSet<Vec<u32>> = BTreeSet::new();
            for &cid in &self.vertex_cubes_at(v) {
                let cube = self.cube(cid);
                let dirs: Vec<u32> = nbrs
                    .iter()
                    .copied()
                    .filter(|&u| cube.contains_vertex(u))
                    .collect();
                debug_assert_eq!(dirs.len(), cube.dim());
                if cube.dim() == 2 {
                    let a = nbrs.binary_search(&dirs[0]).unwrap();
                    let b = nbrs.binary_search(&dirs[1]).unwrap();
                    joined[a][b] = true;
                    joined[b][a] = true;
                }
                realised.insert(dirs);
            }
            for clique in maximal_cliques(&joined) {
                if clique.len() < 3 {
                    continue;
                }
                let dirs: Vec<u32> = clique.iter().map(|&i| nbrs[i]).collect();
                if !realised.contains(&dirs) {
                    out.push(FlagViolation { vertex: v, directions: dirs });
                }
            }
        }
        out.sort_by(|a, b| (a.vertex, &a.directions).cmp(&(b.vertex, &b.directions)));
        out
    }

    pub(super) fn vertex_cubes_at(&self, v: u32) -> Vec<super::CubeId> {
        self.vertex_cubes[v as usize].clone()
    }
}

/// Maximal cliques of a small graph, each sorted ascending; plain
/// Bron-Kerbosch without pivoting, deterministic order.
fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut out = Vec::new();
    fn extend(
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        adj: &[Vec<bool>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        let mut p = p;
        let mut x = x;
        while let Some(&v) = p.first() {
            r.push(v);
            let p2: Vec<usize> = p.iter().copied().filter(|&u| adj[v][u]).collect();
            let x2: Vec<usize> = x.iter().copied().filter(|&u| adj[v][u]).collect();
            extend(r, p2, x2, adj, out);
            r.pop();
            p.remove(0);
            x.push(v);
        }
    }
    extend(&mut Vec::new(), (0..n).collect(), Vec::new(), adj, &mut out);
    out
}

/// A hollow corner: three squares of a 3-cube around one vertex without
/// the cube itself. Used by tests and kept here so examples can build it.
pub fn hollow_corner() -> Result<CubeComplex, super::ComplexError> {
    // Masks 0..7 of a 3-cube minus the far corner 7; squares are the
    // three coordinate squares at the corner 0.
    let mut edges = Vec::new();
    for a in 0..7u32 {
        for b in a + 1..7 {
            if (a ^ b).count_ones() == 1 {
                edges.push((a, b));
            }
        }
    }
    let squares = vec![vec![0, 1, 2, 3], vec![0, 1, 4, 5], vec![0, 2, 4, 6]];
    CubeComplex::assemble(7, &edges, &squares)
}
