//! Finite cube complexes as explicit combinatorial data.
//!
//! A complex is a vertex set `0..n`, an edge list, and a face-closed
//! family of cubes, where a cube is just its vertex set. Two cubes are
//! equal iff their vertex sets are equal. Assembly validates that every
//! declared cube really is a hypercube of the 1-skeleton (each `k`-cube
//! induces exactly the `k`-dimensional hypercube graph, diagonals
//! forbidden) and closes the family under faces.
//!
//! Hyperplanes are computed during assembly: the equivalence classes of
//! edges generated by opposite sides of squares. They drive both the
//! half-space queries and the normal cube paths in [`paths`].

mod links;
mod paths;

pub use links::{hollow_corner, FlagViolation};
pub use paths::NormalPathError;

use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// A cube, stored as its sorted vertex set. The length is a power of
/// two; a single vertex is a 0-cube, an edge a 1-cube.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Cube(Vec<u32>);

impl Cube {
    pub fn new(mut vertices: Vec<u32>) -> Cube {
        vertices.sort_unstable();
        vertices.dedup();
        Cube(vertices)
    }

    pub fn vertex(v: u32) -> Cube {
        Cube(vec![v])
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        debug_assert!(self.0.len().is_power_of_two());
        self.0.len().trailing_zeros() as usize
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Cube) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    pub fn meets(&self, other: &Cube) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn intersection(&self, other: &Cube) -> Vec<u32> {
        self.0
            .iter()
            .filter(|v| other.contains_vertex(**v))
            .copied()
            .collect()
    }
}

/// Cubes order by dimension first, then lexicographically on vertices.
impl Ord for Cube {
    fn cmp(&self, other: &Cube) -> std::cmp::Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl PartialOrd for Cube {
    fn partial_cmp(&self, other: &Cube) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub type CubeId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    EdgeOutOfRange(u32, u32, u32),
    #[error("edge ({0}, {0}) is a loop")]
    LoopEdge(u32),
    #[error("cube {0:?} has an out-of-range vertex")]
    CubeOutOfRange(Vec<u32>),
    #[error("cube {0:?} has {1} vertices, not a power of two")]
    NotPowerOfTwo(Vec<u32>, usize),
    #[error("cube {cube:?} is not a hypercube of the edge graph: {reason}")]
    NotHypercube { cube: Vec<u32>, reason: String },
}

#[derive(Clone, Debug)]
pub struct CubeComplex {
    vertex_count: u32,
    adj: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
    cubes: Vec<Cube>,
    /// Hyperplane class of each edge, indexed like `edges`.
    edge_class: Vec<usize>,
    class_count: usize,
    /// For each vertex, ids of cubes containing it.
    vertex_cubes: Vec<Vec<CubeId>>,
}

impl CubeComplex {
    /// Builds the complex spanned by `maximal_cubes` over the given
    /// 1-skeleton. Cubes of any dimension may be listed; faces are added
    /// automatically. Every vertex and every edge becomes a cube too.
    pub fn assemble(
        vertex_count: u32,
        edge_list: &[(u32, u32)],
        maximal_cubes: &[Vec<u32>],
    ) -> Result<CubeComplex, ComplexError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(a, b) in edge_list {
            if a == b {
                return Err(ComplexError::LoopEdge(a));
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(ComplexError::EdgeOutOfRange(a, b, vertex_count));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        edges.dedup();

        let mut adj = vec![Vec::new(); vertex_count as usize];
        for &(a, b) in &edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        let mut cube_set: BTreeSet<Cube> = BTreeSet::new();
        for v in 0..vertex_count {
            cube_set.insert(Cube::vertex(v));
        }
        for &(a, b) in &edges {
            cube_set.insert(Cube(vec![a, b]));
        }
        for raw in maximal_cubes {
            let cube = Cube::new(raw.clone());
            if cube.vertices().iter().any(|&v| v >= vertex_count) {
                return Err(ComplexError::CubeOutOfRange(raw.clone()));
            }
            if !cube.vertices().len().is_power_of_two() {
                return Err(ComplexError::NotPowerOfTwo(raw.clone(), cube.vertices().len()));
            }
            let frame = CubeFrame::label(&cube, &adj)?;
            frame.add_faces(&mut cube_set);
        }

        let cubes: Vec<Cube> = cube_set.into_iter().collect();
        let mut vertex_cubes = vec![Vec::new(); vertex_count as usize];
        for (id, cube) in cubes.iter().enumerate() {
            for &v in cube.vertices() {
                vertex_cubes[v as usize].push(id);
            }
        }

        let mut complex = CubeComplex {
            vertex_count,
            adj,
            edges,
            cubes,
            edge_class: Vec::new(),
            class_count: 0,
            vertex_cubes,
        };
        complex.compute_hyperplanes();
        Ok(complex)
    }

    /// Opposite sides of every square are parallel; hyperplane classes
    /// are the transitive closure of that relation on edges.
    fn compute_hyperplanes(&mut self) {
        let edge_index: BTreeMap<(u32, u32), usize> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        let mut parent: Vec<usize> = (0..self.edges.len()).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let eidx = |a: u32, b: u32| edge_index[&(a.min(b), a.max(b))];
        for cube in &self.cubes {
            if cube.dim() != 2 {
                continue;
            }
            let vs = cube.vertices();
            let base = vs[0];
            let in_cube = |v: u32| cube.contains_vertex(v);
            let nbrs: Vec<u32> = self.adj[base as usize]
                .iter()
                .copied()
                .filter(|&v| in_cube(v))
                .collect();
            let (p, q) = (nbrs[0], nbrs[1]);
            let opp = *vs
                .iter()
                .find(|&&v| v != base && v != p && v != q)
                .expect("square has four vertices");
            for (u1, v1, u2, v2) in [(base, p, q, opp), (base, q, p, opp)] {
                let a = find(&mut parent, eidx(u1, v1));
                let b = find(&mut parent, eidx(u2, v2));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut rename: BTreeMap<usize, usize> = BTreeMap::new();
        let mut classes = Vec::with_capacity(self.edges.len());
        for i in 0..self.edges.len() {
            let root = find(&mut parent, i);
            let next = rename.len();
            classes.push(*rename.entry(root).or_insert(next));
        }
        self.class_count = rename.len();
        self.edge_class = classes;
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn cube(&self, id: CubeId) -> &Cube {
        &self.cubes[id]
    }

    pub fn cube_id(&self, cube: &Cube) -> Option<CubeId> {
        self.cubes.binary_search(cube).ok()
    }

    pub fn dim(&self) -> usize {
        self.cubes.last().map_or(0, |c| c.dim())
    }

    pub fn cubes_of_dim(&self, d: usize) -> impl Iterator<Item = CubeId> + '_ {
        self.cubes
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.dim() == d)
            .map(|(id, _)| id)
    }

    /// Ids of all cubes containing `c`, including `c` itself.
    pub fn star(&self, c: CubeId) -> Vec<CubeId> {
        let cube = &self.cubes[c];
        let anchor = cube.vertices()[0];
        self.vertex_cubes[anchor as usize]
            .iter()
            .copied()
            .filter(|&d| cube.is_face_of(&self.cubes[d]))
            .collect()
    }

    /// Ids of cubes sharing at least one vertex with `c`, including `c`.
    pub fn meeting(&self, c: CubeId) -> Vec<CubeId> {
        let cube = &self.cubes[c];
        let mut out = BTreeSet::new();
        for &v in cube.vertices() {
            out.extend(self.vertex_cubes[v as usize].iter().copied());
        }
        out.into_iter().collect()
    }

    pub fn hyperplane_count(&self) -> usize {
        self.class_count
    }

    pub fn edge_class(&self, a: u32, b: u32) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges
            .binary_search(&key)
            .ok()
            .map(|i| self.edge_class[i])
    }

    /// Hyperplane classes crossing a cube: the classes of its edges.
    pub fn cube_classes(&self, c: CubeId) -> BTreeSet<usize> {
        let cube = &self.cubes[c];
        let mut out = BTreeSet::new();
        for (i, &v) in cube.vertices().iter().enumerate() {
            for &w in &cube.vertices()[i + 1..] {
                if let Some(cls) = self.edge_class(v, w) {
                    out.insert(cls);
                }
            }
        }
        out
    }

    /// Splits the vertex set by removing all edges of one hyperplane
    /// class. `None` when the removal does not leave exactly two
    /// components, which flags a non-embedded hyperplane.
    pub fn halves(&self, class: usize) -> Option<(Vec<u32>, Vec<u32>)> {
        let mut comp = vec![usize::MAX; self.vertex_count as usize];
        let mut count = 0;
        for start in 0..self.vertex_count {
            if comp[start as usize] != usize::MAX {
                continue;
            }
            if count == 2 {
                return None;
            }
            let mut queue = std::collections::VecDeque::new();
            comp[start as usize] = count;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v as usize] {
                    if self.edge_class(v, w) == Some(class) {
                        continue;
                    }
                    if comp[w as usize] == usize::MAX {
                        comp[w as usize] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        if count != 2 {
            return None;
        }
        let mut sides = (Vec::new(), Vec::new());
        for v in 0..self.vertex_count {
            if comp[v as usize] == 0 {
                sides.0.push(v);
            } else {
                sides.1.push(v);
            }
        }
        Some(sides)
    }

    pub fn bfs_distances(&self, sources: &[u32]) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count as usize];
        let mut queue = std::collections::VecDeque::new();
        for &s in sources {
            if dist[s as usize].is_none() {
                dist[s as usize] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize].unwrap();
            for &w in &self.adj[v as usize] {
                if dist[w as usize].is_none() {
                    dist[w as usize] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The unique vertex on geodesics between each pair of `u, v, w`, or
    /// `None` when no single vertex does it (the 1-skeleton then fails to
    /// be a median graph).
    pub fn median(&self, u: u32, v: u32, w: u32) -> Option<u32> {
        let du = self.bfs_distances(&[u]);
        let dv = self.bfs_distances(&[v]);
        let dw = self.bfs_distances(&[w]);
        let on_geo = |da: &[Option<u32>], db: &[Option<u32>], dab: u32, x: usize| {
            matches!((da[x], db[x]), (Some(a), Some(b)) if a + b == dab)
        };
        let (duv, dvw, duw) = (
            du[v as usize]?,
            dv[w as usize]?,
            du[w as usize]?,
        );
        let mut found = None;
        for x in 0..self.vertex_count as usize {
            if on_geo(&du, &dv, duv, x) && on_geo(&dv, &dw, dvw, x) && on_geo(&du, &dw, duw, x) {
                if found.is_some() {
                    return None;
                }
                found = Some(x as u32);
            }
        }
        found
    }

    /// Smallest vertex set containing `seed` and closed under taking
    /// geodesics between its members.
    pub fn interval_hull(&self, seed: &[u32]) -> Vec<u32> {
        let mut hull: BTreeSet<u32> = seed.iter().copied().collect();
        loop {
            let members: Vec<u32> = hull.iter().copied().collect();
            let mut grew = false;
            for (i, &a) in members.iter().enumerate() {
                let da = self.bfs_distances(&[a]);
                for &b in &members[i + 1..] {
                    let db = self.bfs_distances(&[b]);
                    let Some(dab) = da[b as usize] else { continue };
                    for x in 0..self.vertex_count {
                        if let (Some(xa), Some(xb)) = (da[x as usize], db[x as usize]) {
                            if xa + xb == dab && hull.insert(x) {
                                grew = true;
                            }
                        }
                    }
                }
            }
            if !grew {
                return hull.into_iter().collect();
            }
        }
    }

    /// Counts of cubes per dimension, `counts[d]` = number of d-cubes.
    pub fn cube_census(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.dim() + 1];
        for c in &self.cubes {
            counts[c.dim()] += 1;
        }
        counts
    }

    pub fn summary(&self) -> ComplexSummary {
        ComplexSummary {
            vertices: self.vertex_count as usize,
            edges: self.edges.len(),
            dim: self.dim(),
            cubes_by_dim: self.cube_census(),
            hyperplanes: self.class_count,
        }
    }

    /// 1-skeleton in DOT format, edges grouped by hyperplane class.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write;
        let palette = [
            "black", "red", "blue", "green3", "orange", "purple", "brown", "cyan3",
            "magenta", "gray40",
        ];
        let mut out = String::from("graph complex {\n  node [shape=point];\n");
        for v in 0..self.vertex_count {
            writeln!(out, "  {v};").unwrap();
        }
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            let cls = self.edge_class[i];
            writeln!(
                out,
                "  {a} -- {b} [color={}, label={cls}];",
                palette[cls % palette.len()]
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ComplexSummary {
    pub vertices: usize,
    pub edges: usize,
    pub dim: usize,
    pub cubes_by_dim: Vec<usize>,
    pub hyperplanes: usize,
}

/// Coordinates for one declared cube: `by_mask[m]` is the vertex whose
/// axis bitmask is `m`, with the base (smallest vertex) at mask 0 and
/// the base's neighbors, in ascending order, on single bits.
struct CubeFrame {
    k: usize,
    by_mask: Vec<u32>,
}

impl CubeFrame {
    fn label(cube: &Cube, adj: &[Vec<u32>]) -> Result<CubeFrame, ComplexError> {
        let vs = cube.vertices();
        let n = vs.len();
        let k = n.trailing_zeros() as usize;
        let fail = |reason: &str| ComplexError::NotHypercube {
            cube: vs.to_vec(),
            reason: reason.to_string(),
        };
        if n == 1 {
            return Ok(CubeFrame { k: 0, by_mask: vec![vs[0]] });
        }
        let in_cube = |v: u32| cube.contains_vertex(v);
        let local = |v: u32| vs.binary_search(&v).unwrap();
        let induced: Vec<Vec<usize>> = vs
            .iter()
            .map(|&v| {
                adj[v as usize]
                    .iter()
                    .copied()
                    .filter(|&w| in_cube(w))
                    .map(local)
                    .collect()
            })
            .collect();
        if let Some(bad) = induced.iter().position(|l| l.len() != k) {
            return Err(fail(&format!(
                "vertex {} has {} neighbours in the cube, expected {k}",
                vs[bad],
                induced[bad].len()
            )));
        }
        let bfs = |start: usize| -> Vec<Option<u32>> {
            let mut dist = vec![None; n];
            dist[start] = Some(0);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &induced[v] {
                    if dist[w].is_none() {
                        dist[w] = Some(dist[v].unwrap() + 1);
                        queue.push_back(w);
                    }
                }
            }
            dist
        };
        let from_base = bfs(0);
        let axis_dists: Vec<Vec<Option<u32>>> =
            induced[0].iter().map(|&a| bfs(a)).collect();
        let mut by_mask = vec![u32::MAX; n];
        for v in 0..n {
            let Some(db) = from_base[v] else {
                return Err(fail("not connected"));
            };
            let mut mask = 0usize;
            for (i, da) in axis_dists.iter().enumerate() {
                match da[v] {
                    Some(d) if d + 1 == db => mask |= 1 << i,
                    Some(d) if d == db + 1 => {}
                    _ => return Err(fail("axis distances do not split evenly")),
                }
            }
            if (db as usize) != mask.count_ones() as usize {
                return Err(fail("distance does not match coordinate weight"));
            }
            if by_mask[mask] != u32::MAX {
                return Err(fail("two vertices share coordinates"));
            }
            by_mask[mask] = vs[v];
        }
        // Adjacency must be exactly Hamming distance one: no diagonals,
        // no missing cube edges.
        for a in 0..n {
            let mask_a = by_mask.iter().position(|&x| x == vs[a]).unwrap();
            for &b in &induced[a] {
                let mask_b = by_mask.iter().position(|&x| x == vs[b]).unwrap();
                if (mask_a ^ mask_b).count_ones() != 1 {
                    return Err(fail(&format!(
                        "edge ({}, {}) is a diagonal",
                        vs[a], vs[b]
                    )));
                }
            }
        }
        Ok(CubeFrame { k, by_mask })
    }

    /// Every face: each axis is free, pinned low, or pinned high.
    fn add_faces(&self, out: &mut BTreeSet<Cube>) {
        let k = self.k;
        let mut choice = vec![0u8; k];
        loop {
            let mut verts = Vec::new();
            'masks: for m in 0..(1usize << k) {
                for (i, &c) in choice.iter().enumerate() {
                    let bit = (m >> i) & 1;
                    if (c == 1 && bit != 0) || (c == 2 && bit != 1) {
                        continue 'masks;
                    }
                }
                verts.push(self.by_mask[m]);
            }
            out.insert(Cube::new(verts));
            let mut i = 0;
            while i < k && choice[i] == 2 {
                choice[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
            choice[i] += 1;
        }
        if k == 0 {
            out.insert(Cube::vertex(self.by_mask[0]));
        }
    }
}
