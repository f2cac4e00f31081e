//! Balls in the Davis complex of a graph product.
//!
//! Vertices are cosets `g * G_L` for cliques `L` of the graph, with `g`
//! the shortest representative; the coset of the empty clique is the
//! element itself. Cosets are joined when one contains the other with
//! cliques differing by a vertex, and every interval of cliques over a
//! fixed bottom coset spans a cube. The whole complex is usually
//! infinite; the ball keeps the cosets whose representative has at most
//! `radius` syllables, and every cube all of whose corners survive.
//!
//! The group acts by left multiplication. A vertex of the ball is
//! *star complete* when all its neighbours in the full complex are in
//! the ball; a cube is interior (for a margin `m`) when everything
//! within distance `m` of it is star complete. Stabiliser bookkeeping is
//! trustworthy for interior cubes only.

use super::{GraphProduct, NormalWord};
use crate::cube::{ComplexError, Cube, CubeComplex, CubeId};
use crate::genset::GenSet;
use crate::group::Subgroup;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DavisError {
    #[error("ball would have more than {cap} vertices; raise the cap or shrink the radius")]
    TooLarge { cap: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct BallVertex {
    pub rep: NormalWord,
    pub clique: GenSet,
}

#[derive(Clone, Debug)]
pub struct DavisBall {
    product: GraphProduct,
    radius: u32,
    vertices: Vec<BallVertex>,
    index: BTreeMap<BallVertex, u32>,
    /// Group elements with at most `radius` syllables, sorted.
    elements: Vec<NormalWord>,
    complex: CubeComplex,
    star_ok: Vec<bool>,
}

impl DavisBall {
    pub fn build(
        product: GraphProduct,
        radius: u32,
        cap_vertices: usize,
    ) -> Result<DavisBall, DavisError> {
        let elements = enumerate_elements(&product, radius, cap_vertices)?;

        let mut vertex_set: BTreeSet<BallVertex> = BTreeSet::new();
        for g in &elements {
            for &clique in product.cliques() {
                vertex_set.insert(BallVertex {
                    rep: product.coset_rep(g, clique),
                    clique,
                });
                if vertex_set.len() > cap_vertices {
                    return Err(DavisError::TooLarge { cap: cap_vertices });
                }
            }
        }
        let vertices: Vec<BallVertex> = vertex_set.into_iter().collect();
        let index: BTreeMap<BallVertex, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u32))
            .collect();

        let mut edges = Vec::new();
        for (id, bv) in vertices.iter().enumerate() {
            for up in clique_extensions(&product, bv) {
                if let Some(&to) = index.get(&up) {
                    edges.push((id as u32, to));
                }
            }
        }

        let mut cubes: Vec<Vec<u32>> = Vec::new();
        for bv in &vertices {
            'tops: for &top in product.cliques() {
                if !bv.clique.is_subset(top) || top.minus(bv.clique).card() < 2 {
                    continue;
                }
                let extra = top.minus(bv.clique);
                let mut corner_ids = Vec::new();
                for add in extra.subsets() {
                    let mid = bv.clique.union(add);
                    let corner = BallVertex {
                        rep: product.coset_rep(&bv.rep, mid),
                        clique: mid,
                    };
                    match index.get(&corner) {
                        Some(&cid) => corner_ids.push(cid),
                        None => continue 'tops,
                    }
                }
                cubes.push(corner_ids);
            }
        }

        let complex = CubeComplex::assemble(vertices.len() as u32, &edges, &cubes)?;

        let star_ok: Vec<bool> = vertices
            .iter()
            .map(|bv| {
                clique_extensions(&product, bv)
                    .into_iter()
                    .all(|up| index.contains_key(&up))
                    && sub_cosets(&product, bv)
                        .into_iter()
                        .all(|down| index.contains_key(&down))
            })
            .collect();

        Ok(DavisBall { product, radius, vertices, index, elements, complex, star_ok })
    }

    pub fn product(&self) -> &GraphProduct {
        &self.product
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn complex(&self) -> &CubeComplex {
        &self.complex
    }

    pub fn vertices(&self) -> &[BallVertex] {
        &self.vertices
    }

    /// Group elements within the radius, sorted; the vertices of empty
    /// clique type are exactly these.
    pub fn elements(&self) -> &[NormalWord] {
        &self.elements
    }

    pub fn vertex_id(&self, rep: &NormalWord, clique: GenSet) -> Option<u32> {
        self.index
            .get(&BallVertex { rep: rep.clone(), clique })
            .copied()
    }

    pub fn is_star_complete(&self, v: u32) -> bool {
        self.star_ok[v as usize]
    }

    /// Left action on a ball vertex; `None` when the image leaves the
    /// ball.
    pub fn act_vertex(&self, h: &NormalWord, v: u32) -> Option<u32> {
        let bv = &self.vertices[v as usize];
        let moved = self.product.multiply(h, &bv.rep);
        let rep = self.product.coset_rep(&moved, bv.clique);
        self.vertex_id(&rep, bv.clique)
    }

    pub fn act_cube(&self, h: &NormalWord, c: CubeId) -> Option<CubeId> {
        let mut verts = Vec::new();
        for &v in self.complex.cube(c).vertices() {
            verts.push(self.act_vertex(h, v)?);
        }
        self.complex.cube_id(&Cube::new(verts))
    }

    /// The corner with the smallest clique; every cube of the ball is an
    /// interval of cliques over it.
    pub fn cube_bottom(&self, c: CubeId) -> (u32, GenSet) {
        let vs = self.complex.cube(c).vertices();
        let &bottom = vs
            .iter()
            .min_by_key(|&&v| self.vertices[v as usize].clique.card())
            .expect("cube has corners");
        let clique = self.vertices[bottom as usize].clique;
        debug_assert!(vs
            .iter()
            .all(|&v| clique.is_subset(self.vertices[v as usize].clique)));
        (bottom, clique)
    }

    /// Setwise stabiliser of a cube: the bottom coset's clique subgroup
    /// conjugated by its representative.
    pub fn cube_stabiliser(&self, c: CubeId) -> Subgroup<NormalWord> {
        let (bottom, clique) = self.cube_bottom(c);
        let g = &self.vertices[bottom as usize].rep;
        let ginv = self.product.inverse(g);
        let elems: Vec<NormalWord> = self
            .product
            .clique_subgroup(clique)
            .into_iter()
            .map(|x| {
                let gx = self.product.multiply(g, &x);
                self.product.multiply(&gx, &ginv)
            })
            .collect();
        Subgroup::from_elements(elems)
    }

    /// Stabiliser by direct search: elements of `candidates` that map
    /// the cube's corner cosets onto themselves. Coset arithmetic only,
    /// so candidates may move other parts of the ball outside.
    pub fn cube_stabiliser_brute(
        &self,
        c: CubeId,
        candidates: &[NormalWord],
    ) -> Subgroup<NormalWord> {
        let corners: BTreeSet<BallVertex> = self
            .complex
            .cube(c)
            .vertices()
            .iter()
            .map(|&v| self.vertices[v as usize].clone())
            .collect();
        let stab: Vec<NormalWord> = candidates
            .iter()
            .filter(|h| {
                let moved: BTreeSet<BallVertex> = corners
                    .iter()
                    .map(|bv| {
                        let hg = self.product.multiply(h, &bv.rep);
                        BallVertex {
                            rep: self.product.coset_rep(&hg, bv.clique),
                            clique: bv.clique,
                        }
                    })
                    .collect();
                moved == corners
            })
            .cloned()
            .collect();
        Subgroup::from_elements(stab)
    }

    /// Cubes whose distance-`margin` neighbourhood is star complete.
    pub fn interior_cubes(&self, margin: u32) -> Vec<CubeId> {
        (0..self.complex.cubes().len())
            .filter(|&c| self.cube_is_interior(c, margin))
            .collect()
    }

    pub fn cube_is_interior(&self, c: CubeId, margin: u32) -> bool {
        let dist = self.complex.bfs_distances(self.complex.cube(c).vertices());
        (0..self.vertices.len()).all(|v| match dist[v] {
            Some(d) if d <= margin => self.star_ok[v],
            _ => true,
        })
    }

    pub fn render_vertex(&self, v: u32) -> String {
        let bv = &self.vertices[v as usize];
        format!(
            "{} : {}",
            self.product.render(&bv.rep),
            self.product.render_clique(bv.clique)
        )
    }
}

fn enumerate_elements(
    product: &GraphProduct,
    radius: u32,
    cap: usize,
) -> Result<Vec<NormalWord>, DavisError> {
    let mut seen: BTreeSet<NormalWord> = BTreeSet::new();
    seen.insert(NormalWord::identity());
    let mut frontier = vec![NormalWord::identity()];
    while let Some(g) = frontier.pop() {
        for v in 0..product.vertex_count() {
            for k in 1..product.group(v).order() {
                let syl = product.word(&[(v, k)]);
                let next = product.multiply(&g, &syl);
                if next.len() as u32 <= radius && !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(DavisError::TooLarge { cap });
                    }
                    seen.insert(next.clone());
                    frontier.push(next);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Neighbours above: one per clique vertex that can be added.
fn clique_extensions(product: &GraphProduct, bv: &BallVertex) -> Vec<BallVertex> {
    let mut out = Vec::new();
    for v in 0..product.vertex_count() {
        if bv.clique.contains(v) {
            continue;
        }
        let bigger = bv.clique.with(v);
        if product.is_clique(bigger) {
            out.push(BallVertex {
                rep: product.coset_rep(&bv.rep, bigger),
                clique: bigger,
            });
        }
    }
    out
}

/// Neighbours below: for each clique vertex, the contained cosets with
/// that vertex dropped, one per element of its group.
fn sub_cosets(product: &GraphProduct, bv: &BallVertex) -> Vec<BallVertex> {
    let mut out = Vec::new();
    for v in bv.clique.iter() {
        let smaller = bv.clique.without(v);
        for k in 0..product.group(v).order() {
            let shift = product.word(&[(v, k)]);
            let moved = product.multiply(&bv.rep, &shift);
            out.push(BallVertex {
                rep: product.coset_rep(&moved, smaller),
                clique: smaller,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphprod::VertexGroup;

    fn single_z2() -> GraphProduct {
        GraphProduct::new(vec![VertexGroup::cyclic("a", 2)], &[]).unwrap()
    }

    fn z2xz2() -> GraphProduct {
        GraphProduct::new(
            vec![VertexGroup::cyclic("a", 2), VertexGroup::cyclic("b", 2)],
            &[(0, 1)],
        )
        .unwrap()
    }

    fn z2_free_z2() -> GraphProduct {
        GraphProduct::new(
            vec![VertexGroup::cyclic("a", 2), VertexGroup::cyclic("b", 2)],
            &[],
        )
        .unwrap()
    }

    fn z3_free_z2() -> GraphProduct {
        GraphProduct::new(
            vec![VertexGroup::cyclic("a", 3), VertexGroup::cyclic("b", 2)],
            &[],
        )
        .unwrap()
    }

    #[test]
    fn one_vertex_group_gives_a_single_edge_path() {
        let ball = DavisBall::build(single_z2(), 1, 1000).unwrap();
        // Two elements and the unique coset of the whole group.
        assert_eq!(ball.vertices().len(), 3);
        assert_eq!(ball.complex().edges().len(), 2);
        assert!((0..3).all(|v| ball.is_star_complete(v)));
    }

    #[test]
    fn direct_product_ball_is_the_full_complex() {
        // Four elements, four edge-type cosets, one square-type coset,
        // four squares around the centre.
        let ball = DavisBall::build(z2xz2(), 2, 1000).unwrap();
        assert_eq!(ball.vertices().len(), 9);
        assert_eq!(ball.complex().summary().cubes_by_dim, vec![9, 12, 4]);
        assert!((0..9).all(|v| ball.is_star_complete(v)));
        assert_eq!(ball.interior_cubes(2).len(), ball.complex().cubes().len());
        assert!(ball.complex().flag_violations().is_empty());
    }

    /// Independent model of the infinite dihedral group: elements are
    /// alternating strings in two letters, cosets of a letter are the
    /// strings not ending in it.
    fn dihedral_ball_vertices(radius: usize) -> usize {
        let mut strings: Vec<String> = vec![String::new()];
        let mut frontier = vec![String::new()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for s in &frontier {
                for letter in ['a', 'b'] {
                    if s.chars().last() != Some(letter) {
                        let mut t = s.clone();
                        t.push(letter);
                        next.push(t);
                    }
                }
            }
            strings.extend(next.iter().cloned());
            frontier = next;
        }
        let not_ending = |letter: char| {
            strings
                .iter()
                .filter(|s| s.chars().last() != Some(letter))
                .count()
        };
        strings.len() + not_ending('a') + not_ending('b')
    }

    #[test]
    fn free_product_of_two_involutions_is_a_path_of_cosets() {
        let ball = DavisBall::build(z2_free_z2(), 2, 1000).unwrap();
        assert_eq!(ball.vertices().len(), dihedral_ball_vertices(2));
        assert_eq!(ball.vertices().len(), 11);
        // A tree: one fewer edge than vertices, no squares.
        assert_eq!(ball.complex().edges().len(), 10);
        assert_eq!(ball.complex().dim(), 1);
    }

    #[test]
    fn mixed_free_product_ball_counts() {
        let ball = DavisBall::build(z3_free_z2(), 3, 10_000).unwrap();
        // 14 elements, 6 cosets of the order-3 vertex, 9 of the order-2.
        assert_eq!(ball.elements().len(), 14);
        assert_eq!(ball.vertices().len(), 29);
        assert_eq!(ball.complex().edges().len(), 28);
    }

    #[test]
    fn stabiliser_of_a_translated_coset_is_a_conjugate() {
        let ball = DavisBall::build(z2_free_z2(), 2, 1000).unwrap();
        let p = ball.product().clone();
        let b = p.word(&[(1, 1)]);
        // The coset b<a> as a 0-cube: stabilised by b<a>b.
        let upper = ball.vertex_id(&b, GenSet::singleton(0)).unwrap();
        let point = ball.complex().cube_id(&Cube::vertex(upper)).unwrap();
        let stab = ball.cube_stabiliser(point);
        assert_eq!(stab.order(), 2);
        let bab = p.word(&[(1, 1), (0, 1), (1, 1)]);
        assert!(stab.contains(&bab));
        // An edge from an element coset is pinned at that element, so
        // its setwise stabiliser is trivial.
        let lower = ball.vertex_id(&b, GenSet::EMPTY).unwrap();
        let edge = ball
            .complex()
            .cube_id(&Cube::new(vec![lower, upper]))
            .unwrap();
        assert_eq!(ball.cube_stabiliser(edge).order(), 1);
    }

    #[test]
    fn formula_and_brute_force_stabilisers_agree_everywhere() {
        for (product, radius) in [
            (z2xz2(), 2u32),
            (z2_free_z2(), 2),
            (z3_free_z2(), 2),
        ] {
            let ball = DavisBall::build(product, radius, 10_000).unwrap();
            let p = ball.product();
            // Candidates long enough to cover every conjugate that can
            // stabilise a cube of the ball.
            let wide = enumerate_elements(p, 2 * radius + 1, 1_000_000).unwrap();
            for c in 0..ball.complex().cubes().len() {
                let formula = ball.cube_stabiliser(c);
                let brute = ball.cube_stabiliser_brute(c, &wide);
                assert_eq!(
                    formula.elements(),
                    brute.elements(),
                    "cube {c} in ball of radius {radius}"
                );
            }
        }
    }

    #[test]
    fn action_permutes_interior_and_respects_cubes() {
        let ball = DavisBall::build(z2xz2(), 2, 1000).unwrap();
        let p = ball.product().clone();
        let a = p.word(&[(0, 1)]);
        // The full complex is in the ball, so the action is total.
        for v in 0..ball.vertices().len() as u32 {
            let img = ball.act_vertex(&a, v).expect("total action");
            let back = ball.act_vertex(&a, img).unwrap();
            assert_eq!(back, v);
        }
        for c in 0..ball.complex().cubes().len() {
            assert!(ball.act_cube(&a, c).is_some());
        }
    }

    #[test]
    fn boundary_cosets_are_not_star_complete() {
        let ball = DavisBall::build(z2_free_z2(), 2, 1000).unwrap();
        let p = ball.product().clone();
        // ab<a> needs its sub-coset aba, which has three syllables.
        let ab = p.word(&[(0, 1), (1, 1)]);
        let v = ball.vertex_id(&ab, GenSet::singleton(0)).unwrap();
        assert!(!ball.is_star_complete(v));
        // The identity coset sits well inside.
        let id = ball
            .vertex_id(&NormalWord::identity(), GenSet::EMPTY)
            .unwrap();
        assert!(ball.is_star_complete(id));
    }

    #[test]
    fn vertex_cap_is_enforced() {
        let err = DavisBall::build(z3_free_z2(), 4, 20).unwrap_err();
        assert!(matches!(err, DavisError::TooLarge { cap: 20 }));
    }
}
