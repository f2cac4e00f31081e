//! Normal cube paths between cubes.
//!
//! The path from `C` to `C'` starts at `C`; while the current cube is
//! disjoint from `C'` it steps to the cube spanned by the gate (the face
//! of the current cube nearest `C'`) together with every hyperplane that
//! can be crossed from the gate straight towards `C'`; once the current
//! cube meets `C'`, the path finishes with `C'` itself. Each step
//! strictly reduces the distance, and consecutive cubes meet along the
//! gate, so the sequence is short and equivariant under any automorphism
//! fixing the endpoints' orbit structure.
//!
//! [`CubeComplex::is_normal_step`] states the step condition
//! declaratively, without constructing the successor; enumeration of all
//! step sequences satisfying it gives an independent uniqueness check.

use super::{Cube, CubeComplex, CubeId};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalPathError {
    #[error("target cube is in a different component of the 1-skeleton")]
    Unreachable,
    #[error("nearest vertices {gate:?} of cube {cube:?} do not form a stored face")]
    GateNotFace { cube: Vec<u32>, gate: Vec<u32> },
    #[error("no stored cube on vertices {wanted:?}; the complex is cut off here")]
    MissingStepCube { wanted: Vec<u32> },
    #[error("vertex {vertex} has {count} crossings of hyperplane {class} towards the target")]
    AmbiguousCrossing { vertex: u32, class: usize, count: usize },
    #[error("no hyperplane leads from cube {cube:?} towards the target")]
    Stalled { cube: Vec<u32> },
}

impl CubeComplex {
    /// Distance from the nearest vertex of `from` to the vertex set of
    /// `to`; zero iff they share a vertex.
    pub fn distance_to_cube(&self, from: CubeId, to: CubeId) -> Option<u32> {
        let dist = self.bfs_distances(self.cube(to).vertices());
        self.cube(from)
            .vertices()
            .iter()
            .filter_map(|&v| dist[v as usize])
            .min()
    }

    /// The cube after `prev` on the normal path to `to`; `None` iff
    /// `prev == to`.
    pub fn normal_successor(
        &self,
        prev: CubeId,
        to: CubeId,
    ) -> Result<Option<CubeId>, NormalPathError> {
        if prev == to {
            return Ok(None);
        }
        if self.cube(prev).meets(self.cube(to)) {
            return Ok(Some(to));
        }
        let dist = self.bfs_distances(self.cube(to).vertices());
        let step = self.successor_data(prev, &dist)?;
        Ok(Some(step))
    }

    /// Full normal path, starting with `from` and ending with `to`.
    pub fn normal_cube_path(
        &self,
        from: CubeId,
        to: CubeId,
    ) -> Result<Vec<CubeId>, NormalPathError> {
        let mut path = vec![from];
        let mut guard = self.vertex_count() as usize + 2;
        while let Some(next) = self.normal_successor(*path.last().unwrap(), to)? {
            path.push(next);
            guard -= 1;
            assert!(guard > 0, "normal path failed to terminate");
        }
        Ok(path)
    }

    fn successor_data(
        &self,
        prev: CubeId,
        dist: &[Option<u32>],
    ) -> Result<CubeId, NormalPathError> {
        let cube = self.cube(prev);
        let mut m = u32::MAX;
        for &v in cube.vertices() {
            match dist[v as usize] {
                Some(d) => m = m.min(d),
                None => return Err(NormalPathError::Unreachable),
            }
        }
        let gate: Vec<u32> = cube
            .vertices()
            .iter()
            .copied()
            .filter(|&v| dist[v as usize] == Some(m))
            .collect();
        let gate_cube = Cube::new(gate.clone());
        if self.cube_id(&gate_cube).is_none() {
            return Err(NormalPathError::GateNotFace {
                cube: cube.vertices().to_vec(),
                gate,
            });
        }
        let prev_classes = self.cube_classes(prev);
        let mut toward: BTreeSet<usize> = BTreeSet::new();
        for &x in gate_cube.vertices() {
            for &u in self.neighbors(x) {
                if cube.contains_vertex(u) {
                    continue;
                }
                if dist[u as usize] == Some(m.wrapping_sub(1)) {
                    let cls = self.edge_class(x, u).expect("edge exists");
                    if !prev_classes.contains(&cls) {
                        toward.insert(cls);
                    }
                }
            }
        }
        if toward.is_empty() {
            return Err(NormalPathError::Stalled { cube: cube.vertices().to_vec() });
        }
        let mut span: BTreeSet<u32> = gate_cube.vertices().iter().copied().collect();
        for &cls in &toward {
            let mut added = Vec::new();
            for &s in &span {
                let d_s = dist[s as usize].unwrap();
                let mut hits = Vec::new();
                for &t in self.neighbors(s) {
                    if self.edge_class(s, t) == Some(cls)
                        && dist[t as usize] == Some(d_s.wrapping_sub(1))
                    {
                        hits.push(t);
                    }
                }
                match hits.len() {
                    1 => added.push(hits[0]),
                    0 => {
                        let mut wanted: Vec<u32> = span.iter().copied().collect();
                        wanted.push(s);
                        return Err(NormalPathError::MissingStepCube { wanted });
                    }
                    n => {
                        return Err(NormalPathError::AmbiguousCrossing {
                            vertex: s,
                            class: cls,
                            count: n,
                        })
                    }
                }
            }
            span.extend(added);
        }
        let next = Cube::new(span.into_iter().collect());
        self.cube_id(&next)
            .ok_or(NormalPathError::MissingStepCube { wanted: next.vertices().to_vec() })
    }

    /// Declarative test that `next` is the legal step after `prev` on the
    /// way to `to`: it must hang on the gate of `prev`, cross only
    /// hyperplanes pointing at `to`, and cross all of them. The
    /// construction above is trusted only because enumeration against
    /// this predicate finds exactly one successor.
    pub fn is_normal_step(&self, prev: CubeId, next: CubeId, to: CubeId) -> bool {
        if prev == next || prev == to {
            return false;
        }
        if self.cube(prev).meets(self.cube(to)) {
            return next == to;
        }
        let dist = self.bfs_distances(self.cube(to).vertices());
        let cube = self.cube(prev);
        let Some(m) = cube
            .vertices()
            .iter()
            .filter_map(|&v| dist[v as usize])
            .min()
        else {
            return false;
        };
        let gate: Vec<u32> = cube
            .vertices()
            .iter()
            .copied()
            .filter(|&v| dist[v as usize] == Some(m))
            .collect();
        let meet = cube.intersection(self.cube(next));
        if meet != gate {
            return false;
        }
        let gate_id = match self.cube_id(&Cube::new(gate.clone())) {
            Some(id) => id,
            None => return false,
        };
        let gate_classes = self.cube_classes(gate_id);
        let prev_classes = self.cube_classes(prev);
        let next_classes = self.cube_classes(next);
        let new_classes: BTreeSet<usize> =
            next_classes.difference(&gate_classes).copied().collect();
        if new_classes.iter().any(|c| prev_classes.contains(c)) {
            return false;
        }
        // Every new hyperplane must be crossed towards the target,
        // dropping the distance by one on each of its edges in `next`.
        let nv = self.cube(next).vertices();
        for (i, &s) in nv.iter().enumerate() {
            for &t in &nv[i + 1..] {
                let Some(cls) = self.edge_class(s, t) else { continue };
                if !new_classes.contains(&cls) {
                    continue;
                }
                let (Some(ds), Some(dt)) = (dist[s as usize], dist[t as usize]) else {
                    return false;
                };
                if ds.abs_diff(dt) != 1 {
                    return false;
                }
            }
        }
        let next_min = nv.iter().filter_map(|&v| dist[v as usize]).min();
        let next_max = nv.iter().filter_map(|&v| dist[v as usize]).max();
        let Some(expect_min) = m.checked_sub(new_classes.len() as u32) else {
            return false;
        };
        if next_min != Some(expect_min) || next_max != Some(m) {
            return false;
        }
        // All crossable hyperplanes are crossed: the new classes must be
        // exactly those reachable from the gate towards the target.
        let mut toward: BTreeSet<usize> = BTreeSet::new();
        for &x in &gate {
            for &u in self.neighbors(x) {
                if cube.contains_vertex(u) {
                    continue;
                }
                if dist[u as usize] == Some(m.wrapping_sub(1)) {
                    let cls = self.edge_class(x, u).expect("edge exists");
                    if !prev_classes.contains(&cls) {
                        toward.insert(cls);
                    }
                }
            }
        }
        new_classes == toward
    }

    /// Every cube sequence from `from` to `to` whose consecutive pairs
    /// pass [`is_normal_step`], up to the given length. Exhaustive, so
    /// only for small complexes; the expected result is a single
    /// sequence, the one `normal_cube_path` builds.
    pub fn enumerate_normal_paths(
        &self,
        from: CubeId,
        to: CubeId,
        max_len: usize,
    ) -> Vec<Vec<CubeId>> {
        let mut out = Vec::new();
        let mut stack = vec![from];
        self.extend_paths(&mut stack, to, max_len, &mut out);
        out
    }

    fn extend_paths(
        &self,
        stack: &mut Vec<CubeId>,
        to: CubeId,
        max_len: usize,
        out: &mut Vec<Vec<CubeId>>,
    ) {
        let last = *stack.last().unwrap();
        if last == to {
            out.push(stack.clone());
            return;
        }
        if stack.len() == max_len {
            return;
        }
        for cand in self.meeting(last) {
            if self.is_normal_step(last, cand, to) {
                stack.push(cand);
                self.extend_paths(stack, to, max_len, out);
                stack.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(c: &CubeComplex, sets: &[&[u32]]) -> Vec<CubeId> {
        sets.iter()
            .map(|s| c.cube_id(&Cube::new(s.to_vec())).expect("cube exists"))
            .collect()
    }

    fn strip(columns: u32) -> CubeComplex {
        let mut edges = Vec::new();
        for c in 0..columns {
            edges.push((2 * c, 2 * c + 1));
        }
        for c in 0..columns - 1 {
            edges.push((2 * c, 2 * c + 2));
            edges.push((2 * c + 1, 2 * c + 3));
        }
        let squares: Vec<Vec<u32>> = (0..columns - 1)
            .map(|c| vec![2 * c, 2 * c + 1, 2 * c + 2, 2 * c + 3])
            .collect();
        CubeComplex::assemble(2 * columns, &edges, &squares).unwrap()
    }

    #[test]
    fn path_graph_walks_edge_by_edge() {
        let p = CubeComplex::assemble(4, &[(0, 1), (1, 2), (2, 3)], &[]).unwrap();
        let [from, to] = [
            p.cube_id(&Cube::vertex(0)).unwrap(),
            p.cube_id(&Cube::vertex(3)).unwrap(),
        ];
        let path = p.normal_cube_path(from, to).unwrap();
        let expect = ids(&p, &[&[0], &[0, 1], &[1, 2], &[2, 3], &[3]]);
        assert_eq!(path, expect);
    }

    #[test]
    fn opposite_corners_cross_the_square_diagonally() {
        let sq = CubeComplex::assemble(
            4,
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
            &[vec![0, 1, 2, 3]],
        )
        .unwrap();
        let [from, to] = [
            sq.cube_id(&Cube::vertex(0)).unwrap(),
            sq.cube_id(&Cube::vertex(3)).unwrap(),
        ];
        let path = sq.normal_cube_path(from, to).unwrap();
        assert_eq!(path, ids(&sq, &[&[0], &[0, 1, 2, 3], &[3]]));
    }

    #[test]
    fn strip_path_between_end_edges_runs_through_all_squares() {
        let s = strip(4);
        let [from, to] = [
            s.cube_id(&Cube::new(vec![0, 1])).unwrap(),
            s.cube_id(&Cube::new(vec![6, 7])).unwrap(),
        ];
        let path = s.normal_cube_path(from, to).unwrap();
        let expect = ids(
            &s,
            &[&[0, 1], &[0, 1, 2, 3], &[2, 3, 4, 5], &[4, 5, 6, 7], &[6, 7]],
        );
        assert_eq!(path, expect);
    }

    #[test]
    fn each_tail_of_a_normal_path_is_itself_normal() {
        let s = strip(5);
        let [from, to] = [
            s.cube_id(&Cube::vertex(0)).unwrap(),
            s.cube_id(&Cube::new(vec![8, 9])).unwrap(),
        ];
        let path = s.normal_cube_path(from, to).unwrap();
        for i in 1..path.len() {
            let tail = s.normal_cube_path(path[i], to).unwrap();
            assert_eq!(tail, path[i..].to_vec());
        }
    }

    #[test]
    fn constructed_path_is_the_unique_normal_sequence() {
        let s = strip(4);
        for (a, b) in [([0u32, 1], [6u32, 7]), ([0, 1], [4, 5])] {
            let from = s.cube_id(&Cube::new(a.to_vec())).unwrap();
            let to = s.cube_id(&Cube::new(b.to_vec())).unwrap();
            let path = s.normal_cube_path(from, to).unwrap();
            let all = s.enumerate_normal_paths(from, to, path.len());
            assert_eq!(all, vec![path]);
        }
        let sq = CubeComplex::assemble(
            4,
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
            &[vec![0, 1, 2, 3]],
        )
        .unwrap();
        let from = sq.cube_id(&Cube::vertex(0)).unwrap();
        let to = sq.cube_id(&Cube::vertex(3)).unwrap();
        let path = sq.normal_cube_path(from, to).unwrap();
        let all = sq.enumerate_normal_paths(from, to, path.len());
        assert_eq!(all, vec![path]);
    }

    #[test]
    fn missing_square_stops_the_path() {
        // Square boundary without the 2-cell: the step wants the square.
        let hollow =
            CubeComplex::assemble(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], &[]).unwrap();
        let from = hollow.cube_id(&Cube::vertex(0)).unwrap();
        let to = hollow.cube_id(&Cube::vertex(3)).unwrap();
        let err = hollow.normal_cube_path(from, to).unwrap_err();
        assert!(matches!(err, NormalPathError::MissingStepCube { .. }));
    }

    #[test]
    fn disconnected_targets_are_reported() {
        let two = CubeComplex::assemble(4, &[(0, 1), (2, 3)], &[]).unwrap();
        let from = two.cube_id(&Cube::vertex(0)).unwrap();
        let to = two.cube_id(&Cube::vertex(3)).unwrap();
        assert_eq!(
            two.normal_cube_path(from, to),
            Err(NormalPathError::Unreachable)
        );
    }

    #[test]
    fn distance_between_cubes_counts_edges() {
        let s = strip(4);
        let e0 = s.cube_id(&Cube::new(vec![0, 1])).unwrap();
        let e3 = s.cube_id(&Cube::new(vec![6, 7])).unwrap();
        let sq0 = s.cube_id(&Cube::new(vec![0, 1, 2, 3])).unwrap();
        assert_eq!(s.distance_to_cube(e0, e3), Some(3));
        assert_eq!(s.distance_to_cube(sq0, e3), Some(2));
        assert_eq!(s.distance_to_cube(sq0, e0), Some(0));
    }
}
