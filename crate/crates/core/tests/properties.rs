//! Law-style tests over randomly generated inputs: group arithmetic,
//! subset algebra, and complex assembly hold their invariants on far
//! more shapes than the handwritten cases cover.

use cubestar::cube::CubeComplex;
use cubestar::deligne::FreeWord;
use cubestar::genset::GenSet;
use cubestar::graphprod::{GraphProduct, VertexGroup};
use proptest::prelude::*;

fn small_product(edges_mask: u8) -> GraphProduct {
    let groups = vec![
        VertexGroup::cyclic("a", 2),
        VertexGroup::cyclic("b", 3),
        VertexGroup::cyclic("c", 2),
    ];
    let all = [(0, 1), (0, 2), (1, 2)];
    let edges: Vec<(usize, usize)> = all
        .iter()
        .enumerate()
        .filter(|(k, _)| edges_mask & (1 << k) != 0)
        .map(|(_, &e)| e)
        .collect();
    GraphProduct::new(groups, &edges).unwrap()
}

fn syllables() -> impl Strategy<Value = Vec<(usize, u32)>> {
    prop::collection::vec((0usize..3, 1u32..3), 0..8).prop_map(|raw| {
        raw.into_iter()
            .map(|(v, k)| if v == 1 { (v, k) } else { (v, 1) })
            .collect()
    })
}

proptest! {
    #[test]
    fn normal_forms_are_canonical_and_group_laws_hold(
        mask in 0u8..8,
        xs in syllables(),
        ys in syllables(),
        zs in syllables(),
    ) {
        let p = small_product(mask);
        let x = p.word(&xs);
        let y = p.word(&ys);
        let z = p.word(&zs);

        // Canonical forms are stable under re-canonicalisation.
        prop_assert_eq!(p.word(x.syllables()), x.clone());

        // Associativity and inverses.
        let xy_z = p.multiply(&p.multiply(&x, &y), &z);
        let x_yz = p.multiply(&x, &p.multiply(&y, &z));
        prop_assert_eq!(xy_z, x_yz);
        prop_assert!(p.multiply(&x, &p.inverse(&x)).is_identity());

        // Multiplication never grows past concatenation.
        prop_assert!(p.multiply(&x, &y).len() <= x.len() + y.len());
    }

    #[test]
    fn coset_representatives_are_idempotent_and_minimal(
        mask in 0u8..8,
        xs in syllables(),
        clique_bits in 0u32..8,
    ) {
        let p = small_product(mask);
        let clique = GenSet::from_indices((0..3).filter(|i| clique_bits & (1 << i) != 0));
        prop_assume!(p.is_clique(clique));

        let g = p.word(&xs);
        let rep = p.coset_rep(&g, clique);
        prop_assert_eq!(p.coset_rep(&rep, clique), rep.clone());
        prop_assert!(rep.len() <= g.len());

        // rep and g differ by an element of the clique subgroup.
        let diff = p.multiply(&p.inverse(&rep), &g);
        prop_assert!(p.clique_subgroup(clique).contains(&diff));
    }

    #[test]
    fn generator_subsets_form_a_boolean_algebra(a in 0u32..256, b in 0u32..256) {
        let bits = |m: u32| GenSet::from_indices((0..8).filter(|i| m & (1 << i) != 0));
        let (x, y) = (bits(a), bits(b));
        prop_assert_eq!(x.union(y), y.union(x));
        prop_assert_eq!(x.intersection(y).card() + x.union(y).card(), x.card() + y.card());
        prop_assert!(x.intersection(y).is_subset(x));
        prop_assert!(x.is_subset(x.union(y)));
        prop_assert!(x.minus(y).intersection(y).is_empty());
        prop_assert_eq!(x.subsets().len(), 1usize << x.card());
    }

    #[test]
    fn free_words_reduce_and_invert(letters in prop::collection::vec(-3i32..=3, 0..12)) {
        let letters: Vec<i32> = letters.into_iter().filter(|&l| l != 0).collect();
        let w = FreeWord::from_letters(&letters);
        prop_assert!(w.len() <= letters.len());
        prop_assert!(w.mul(&w.inv()).is_empty());
        // No cancelling pair survives reduction.
        let ls = w.letters();
        prop_assert!(ls.windows(2).all(|p| p[0] != -p[1]));
    }

    #[test]
    fn grids_assemble_face_closed_with_separating_hyperplanes(
        w in 1u32..5,
        h in 1u32..4,
        keep in prop::collection::vec(any::<bool>(), 12),
    ) {
        let vid = |x: u32, y: u32| y * (w + 1) + x;
        let mut edges = Vec::new();
        for y in 0..=h {
            for x in 0..=w {
                if x < w { edges.push((vid(x, y), vid(x + 1, y))); }
                if y < h { edges.push((vid(x, y), vid(x, y + 1))); }
            }
        }
        let mut squares = Vec::new();
        let mut k = 0;
        for y in 0..h {
            for x in 0..w {
                if *keep.get(k).unwrap_or(&true) {
                    squares.push(vec![vid(x, y), vid(x + 1, y), vid(x, y + 1), vid(x + 1, y + 1)]);
                }
                k += 1;
            }
        }
        let complex = CubeComplex::assemble((w + 1) * (h + 1), &edges, &squares).unwrap();

        // Faces of stored cubes are stored; stars sit inside meetings.
        for (id, cube) in complex.cubes().iter().enumerate() {
            if cube.dim() == 2 {
                let vs = cube.vertices();
                for pair in [[vs[0], vs[1]], [vs[0], vs[2]], [vs[1], vs[3]], [vs[2], vs[3]]] {
                    prop_assert!(complex.cube_id(&cubestar::cube::Cube::new(pair.to_vec())).is_some());
                }
            }
            let star = complex.star(id);
            let meeting = complex.meeting(id);
            prop_assert!(star.iter().all(|s| meeting.contains(s)));
            prop_assert!(star.contains(&id) && meeting.contains(&id));
        }

        // The full grid's hyperplanes are its w + h grid lines, and each
        // one separates.
        if squares.len() == (w * h) as usize {
            prop_assert_eq!(complex.hyperplane_count(), (w + h) as usize);
            for class in 0..complex.hyperplane_count() {
                prop_assert!(complex.halves(class).is_some());
            }
            prop_assert!(complex.flag_violations().is_empty());
        }
    }
}
