//! The free case: explicit balls and a concrete intersection oracle.
//!
//! When every label is infinite the group is free on its generators,
//! parabolic subgroups are the conjugates of the cyclic `<s>`, and the
//! coset complex is the tree dual to the free product decomposition.
//! Intersections reduce to reduced-word arithmetic: `g<s>g⁻¹ ∩ <t>` is
//! trivial unless `s = t` and `g` is itself a power of `s`.

use super::{
    DeligneError, DomainCube, FormalSample, IntersectionOracle, ParabolicLabel,
};
use crate::coxeter::{CoxeterSystem, Label};
use crate::cube::{CubeComplex, CubeId};
use crate::genset::GenSet;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// A reduced word in a free group. Letter `i+1` is generator `i`,
/// `-(i+1)` its inverse; no letter sits next to its own inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn identity() -> FreeWord {
        FreeWord(Vec::new())
    }

    pub fn generator(i: usize) -> FreeWord {
        FreeWord(vec![i as i32 + 1])
    }

    /// Reduces as it builds, so any letter sequence is accepted.
    pub fn from_letters(letters: &[i32]) -> FreeWord {
        let mut w = FreeWord::identity();
        for &l in letters {
            debug_assert_ne!(l, 0);
            w.push(l);
        }
        w
    }

    fn push(&mut self, letter: i32) {
        if self.0.last() == Some(&-letter) {
            self.0.pop();
        } else {
            self.0.push(letter);
        }
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &l in &other.0 {
            out.push(l);
        }
        out
    }

    pub fn inv(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    /// Whether the word lies in the cyclic subgroup of generator `s`.
    pub fn is_power_of(&self, s: usize) -> bool {
        let letter = s as i32 + 1;
        self.0.iter().all(|&l| l == letter) || self.0.iter().all(|&l| l == -letter)
    }

    /// The shortest element of the coset `w·<s>`: trailing powers of
    /// `s` stripped.
    pub fn coset_rep(&self, s: usize) -> FreeWord {
        let letter = s as i32 + 1;
        let mut out = self.clone();
        while out.0.last().map(|l| l.abs()) == Some(letter) {
            out.0.pop();
        }
        out
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut k = 0;
        while k < self.0.len() {
            let l = self.0[k];
            let mut run = 1;
            while k + run < self.0.len() && self.0[k + run] == l {
                run += 1;
            }
            let name = &names[(l.abs() - 1) as usize];
            let exp = if l > 0 { run as i32 } else { -(run as i32) };
            if exp == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            k += run;
        }
        parts.join("*")
    }
}

/// Reduced-word decision procedures for a free group's parabolics.
pub struct FreeOracle {
    names: Vec<String>,
}

impl FreeOracle {
    /// Every label must be infinite.
    pub fn new(sys: &CoxeterSystem) -> Result<FreeOracle, DeligneError> {
        check_free(sys)?;
        Ok(FreeOracle {
            names: sys.generators().to_vec(),
        })
    }

    fn singleton_of(&self, s: GenSet) -> Result<Option<usize>, DeligneError> {
        match s.card() {
            0 => Ok(None),
            1 => Ok(s.iter().next()),
            _ => Err(DeligneError::UnsupportedQuery {
                subset: s.render(&self.names),
            }),
        }
    }
}

fn check_free(sys: &CoxeterSystem) -> Result<(), DeligneError> {
    for i in 0..sys.rank() {
        for j in i + 1..sys.rank() {
            if sys.label(i, j) != Label::Infinite {
                return Err(DeligneError::NotFree {
                    a: sys.generators()[i].clone(),
                    b: sys.generators()[j].clone(),
                });
            }
        }
    }
    Ok(())
}

impl IntersectionOracle for FreeOracle {
    type Token = FreeWord;

    fn identity(&self) -> FreeWord {
        FreeWord::identity()
    }

    fn compose(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.mul(b)
    }

    fn invert(&self, a: &FreeWord) -> FreeWord {
        a.inv()
    }

    /// `<s> ∩ g<t>g⁻¹` in a free group: the whole of `<s>` when `s = t`
    /// and `g ∈ <s>`, trivial otherwise. Distinct free generators never
    /// share nontrivial powers, and `<t>` is its own normaliser.
    fn intersect_parabolics(
        &self,
        s1: GenSet,
        g: &FreeWord,
        s2: GenSet,
    ) -> Result<ParabolicLabel<FreeWord>, DeligneError> {
        let a = self.singleton_of(s1)?;
        let b = self.singleton_of(s2)?;
        let subset = match (a, b) {
            (Some(s), Some(t)) if s == t && g.is_power_of(s) => GenSet::singleton(s),
            _ => GenSet::EMPTY,
        };
        Ok(ParabolicLabel {
            conjugator: FreeWord::identity(),
            subset,
        })
    }

    fn same_subgroup(
        &self,
        a: &ParabolicLabel<FreeWord>,
        b: &ParabolicLabel<FreeWord>,
    ) -> Result<bool, DeligneError> {
        if a.subset != b.subset {
            return Ok(false);
        }
        match self.singleton_of(a.subset)? {
            None => Ok(true),
            Some(s) => Ok(b.conjugator.inv().mul(&a.conjugator).is_power_of(s)),
        }
    }

    fn render_token(&self, t: &FreeWord) -> String {
        t.render(&self.names)
    }
}

/// One vertex of the tree: the coset `rep·A_subset`, where `subset` is
/// empty (an element) or one generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DeligneVertex {
    pub rep: FreeWord,
    pub subset: GenSet,
}

/// A radius-`r` ball of the coset tree of a free system, with symbolic
/// stabiliser labels per cube.
#[derive(Debug)]
pub struct DeligneBall {
    names: Vec<String>,
    radius: u32,
    vertices: Vec<DeligneVertex>,
    index: BTreeMap<DeligneVertex, u32>,
    complex: CubeComplex,
    labels: Vec<ParabolicLabel<FreeWord>>,
}

impl DeligneBall {
    pub fn build(sys: &CoxeterSystem, radius: u32, cap: usize) -> Result<DeligneBall, DeligneError> {
        check_free(sys)?;
        if radius == 0 {
            return Err(DeligneError::BadRadius);
        }
        let rank = sys.rank();
        let mut elements: Vec<FreeWord> = vec![FreeWord::identity()];
        let mut frontier: Vec<FreeWord> = elements.clone();
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 0..rank {
                    for letter in [i as i32 + 1, -(i as i32 + 1)] {
                        let mut ext = w.clone();
                        ext.push(letter);
                        if ext.len() == w.len() + 1 {
                            next.push(ext);
                        }
                    }
                }
            }
            next.sort();
            next.dedup();
            elements.extend(next.iter().cloned());
            if elements.len() > cap {
                return Err(DeligneError::TooLarge { cap });
            }
            frontier = next;
        }

        let mut vertex_set: BTreeSet<DeligneVertex> = BTreeSet::new();
        for g in &elements {
            vertex_set.insert(DeligneVertex {
                rep: g.clone(),
                subset: GenSet::EMPTY,
            });
            for s in 0..rank {
                vertex_set.insert(DeligneVertex {
                    rep: g.coset_rep(s),
                    subset: GenSet::singleton(s),
                });
            }
        }
        if vertex_set.len() > cap {
            return Err(DeligneError::TooLarge { cap });
        }
        let vertices: Vec<DeligneVertex> = vertex_set.into_iter().collect();
        let index: BTreeMap<DeligneVertex, u32> = vertices
            .iter()
            .enumerate()
            .map(|(k, v)| (v.clone(), k as u32))
            .collect();

        let mut edges = Vec::new();
        for g in &elements {
            let from = index[&DeligneVertex {
                rep: g.clone(),
                subset: GenSet::EMPTY,
            }];
            for s in 0..rank {
                let to = index[&DeligneVertex {
                    rep: g.coset_rep(s),
                    subset: GenSet::singleton(s),
                }];
                edges.push((from, to));
            }
        }
        let complex = CubeComplex::assemble(vertices.len() as u32, &edges, &[])?;

        let mut labels = Vec::with_capacity(complex.cubes().len());
        for id in 0..complex.cubes().len() {
            let cube = complex.cube(id);
            // The face with the smallest parabolic: an element vertex
            // for edges, the vertex itself for vertices.
            let bottom = cube
                .vertices()
                .iter()
                .map(|&v| &vertices[v as usize])
                .min_by_key(|v| v.subset.card())
                .expect("cube has vertices");
            labels.push(ParabolicLabel {
                conjugator: bottom.rep.clone(),
                subset: bottom.subset,
            });
        }

        Ok(DeligneBall {
            names: sys.generators().to_vec(),
            radius,
            vertices,
            index,
            complex,
            labels,
        })
    }

    pub fn complex(&self) -> &CubeComplex {
        &self.complex
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn vertices(&self) -> &[DeligneVertex] {
        &self.vertices
    }

    pub fn vertex_id(&self, v: &DeligneVertex) -> Option<u32> {
        self.index.get(v).copied()
    }

    /// The stabiliser of a cube, as a label: `rep·A_T·rep⁻¹` for the
    /// cube's smallest coset vertex.
    pub fn cube_label(&self, c: CubeId) -> &ParabolicLabel<FreeWord> {
        &self.labels[c]
    }

    /// Left multiplication on vertices; `None` when the image leaves
    /// the ball.
    pub fn act_vertex(&self, g: &FreeWord, v: u32) -> Option<u32> {
        let vert = &self.vertices[v as usize];
        let moved = g.mul(&vert.rep);
        let rep = match vert.subset.iter().next() {
            None => moved,
            Some(s) => moved.coset_rep(s),
        };
        self.vertex_id(&DeligneVertex {
            rep,
            subset: vert.subset,
        })
    }

    pub fn render_vertex(&self, v: u32) -> String {
        let vert = &self.vertices[v as usize];
        if vert.subset.is_empty() {
            vert.rep.render(&self.names)
        } else {
            format!(
                "{} * <{}>",
                vert.rep.render(&self.names),
                vert.subset.render(&self.names)
            )
        }
    }

    /// The domain shape of a cube: its subset interval.
    fn domain_cube(&self, c: CubeId) -> DomainCube {
        let cube = self.complex.cube(c);
        let mut lower = GenSet::full(crate::genset::MAX_INDICES);
        let mut upper = GenSet::EMPTY;
        for &v in cube.vertices() {
            let s = self.vertices[v as usize].subset;
            if s.card() < lower.card() {
                lower = s;
            }
            upper = upper.union(s);
        }
        DomainCube { lower, upper }
    }

    /// Every ordered pair of meeting cubes, normalised so the first
    /// cube is standard: the translation is `u⁻¹·v` for the cubes'
    /// conjugators `u`, `v`.
    pub fn formal_samples(&self) -> Vec<FormalSample<FreeWord>> {
        let mut samples = Vec::new();
        for c in 0..self.complex.cubes().len() {
            let u = &self.labels[c].conjugator;
            for c2 in self.complex.meeting(c) {
                let v = &self.labels[c2].conjugator;
                samples.push(FormalSample {
                    first: self.domain_cube(c),
                    translation: u.inv().mul(v),
                    second: self.domain_cube(c2),
                });
            }
        }
        samples
    }

    /// The star property with symbolic stabilisers: for every ordered
    /// pair of meeting cubes, the oracle names the intersection of
    /// their stabilisers, and some cube over the first must carry
    /// exactly that subgroup.
    pub fn check_star<O: IntersectionOracle<Token = FreeWord>>(
        &self,
        oracle: &O,
    ) -> Result<BallStarReport, DeligneError> {
        let mut pairs_checked = 0;
        let mut violations = Vec::new();
        for c in 0..self.complex.cubes().len() {
            let lc = &self.labels[c];
            for c2 in self.complex.meeting(c) {
                pairs_checked += 1;
                let lc2 = &self.labels[c2];
                let g = lc.conjugator.inv().mul(&lc2.conjugator);
                let inner = oracle.intersect_parabolics(lc.subset, &g, lc2.subset)?;
                let needed = ParabolicLabel {
                    conjugator: lc.conjugator.mul(&inner.conjugator),
                    subset: inner.subset,
                };
                let mut witness = None;
                for d in self.complex.star(c) {
                    if oracle.same_subgroup(&self.labels[d], &needed)? {
                        witness = Some(d);
                        break;
                    }
                }
                if witness.is_none() {
                    violations.push(BallStarViolation {
                        cube: self.complex.cube(c).vertices().to_vec(),
                        other: self.complex.cube(c2).vertices().to_vec(),
                        needed_subgroup: format!(
                            "{} * <{}> * {}^-1",
                            oracle.render_token(&needed.conjugator),
                            needed.subset.render(&self.names),
                            oracle.render_token(&needed.conjugator),
                        ),
                    });
                }
            }
        }
        Ok(BallStarReport {
            pairs_checked,
            violations,
        })
    }

    pub fn to_dot(&self) -> String {
        use std::fmt::Write;
        let mut out = String::from("graph coset_tree {\n  node [shape=circle];\n");
        for (k, _) in self.vertices.iter().enumerate() {
            writeln!(out, "  {k} [label=\"{}\"];", self.render_vertex(k as u32)).unwrap();
        }
        for &(a, b) in self.complex.edges() {
            writeln!(out, "  {a} -- {b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BallStarViolation {
    pub cube: Vec<u32>,
    pub other: Vec<u32>,
    pub needed_subgroup: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BallStarReport {
    pub pairs_checked: usize,
    pub violations: Vec<BallStarViolation>,
}

impl BallStarReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deligne::{formal_property_star, FundamentalDomain};

    fn free_system(n: usize) -> CoxeterSystem {
        let names: Vec<String> = (0..n)
            .map(|i| {
                ["s", "t", "u", "v"][i].to_string()
            })
            .collect();
        CoxeterSystem::new(names, &[], Label::Infinite).unwrap()
    }

    #[test]
    fn words_reduce_and_compose() {
        let s = FreeWord::generator(0);
        let t = FreeWord::generator(1);
        let w = s.mul(&t).mul(&t.inv()).mul(&s);
        assert_eq!(w, FreeWord::from_letters(&[1, 1]));
        assert!(w.is_power_of(0));
        assert!(!w.is_power_of(1));
        assert!(w.mul(&w.inv()).is_empty());
        let ts = t.mul(&s);
        assert!(!ts.is_power_of(0));
        assert_eq!(ts.coset_rep(0), t);
        assert_eq!(ts.coset_rep(1), ts);
        let names = vec!["s".to_string(), "t".to_string()];
        assert_eq!(ts.render(&names), "t*s");
        assert_eq!(s.inv().mul(&s.inv()).render(&names), "s^-2");
        assert_eq!(FreeWord::identity().render(&names), "1");
    }

    #[test]
    fn oracle_matches_reduced_word_arithmetic() {
        let sys = free_system(2);
        let oracle = FreeOracle::new(&sys).unwrap();
        let s = GenSet::singleton(0);
        let t = GenSet::singleton(1);

        let cubed = FreeWord::from_letters(&[1, 1, 1]);
        let label = oracle.intersect_parabolics(s, &cubed, s).unwrap();
        assert_eq!(label.subset, s);

        let ts = FreeWord::from_letters(&[2, 1]);
        let label = oracle.intersect_parabolics(s, &ts, s).unwrap();
        assert!(label.subset.is_empty());

        let label = oracle
            .intersect_parabolics(s, &FreeWord::identity(), t)
            .unwrap();
        assert!(label.subset.is_empty());

        let err = oracle
            .intersect_parabolics(GenSet::full(2), &FreeWord::identity(), s)
            .unwrap_err();
        assert!(matches!(err, DeligneError::UnsupportedQuery { .. }));

        // Same subgroup iff the conjugators differ by a power of the
        // generator.
        let a = ParabolicLabel { conjugator: FreeWord::identity(), subset: s };
        let b = ParabolicLabel { conjugator: cubed.clone(), subset: s };
        let c = ParabolicLabel { conjugator: ts, subset: s };
        assert!(oracle.same_subgroup(&a, &b).unwrap());
        assert!(!oracle.same_subgroup(&a, &c).unwrap());
    }

    #[test]
    fn one_generator_ball_is_a_star_around_the_cyclic_coset() {
        let sys = free_system(1);
        let ball = DeligneBall::build(&sys, 2, 10_000).unwrap();
        // Elements 1, s, s^-1, s^2, s^-2 all share the single coset
        // vertex <s>.
        assert_eq!(ball.complex().vertex_count(), 6);
        assert_eq!(ball.complex().edges().len(), 5);
        assert!(ball.complex().flag_violations().is_empty());
    }

    #[test]
    fn two_generator_ball_is_the_expected_tree() {
        let sys = free_system(2);
        let ball = DeligneBall::build(&sys, 1, 10_000).unwrap();
        // 5 elements and 6 coset vertices, joined by 10 edges.
        assert_eq!(ball.complex().vertex_count(), 11);
        assert_eq!(ball.complex().edges().len(), 10);
        assert_eq!(ball.complex().dim(), 1);
        let dot = ball.to_dot();
        assert!(dot.contains("label=\"t * <{s}>\""));
        assert!(dot.contains("label=\"1 * <{t}>\""));
        assert!(dot.contains("label=\"1\""));
    }

    #[test]
    fn ball_star_check_is_clean_for_free_systems() {
        let mut total_pairs = 0;
        for rank in [2, 3] {
            let sys = free_system(rank);
            let ball = DeligneBall::build(&sys, 3, 100_000).unwrap();
            assert!(ball.complex().flag_violations().is_empty());
            let tree_edges = ball.complex().vertex_count() as usize - 1;
            assert_eq!(ball.complex().edges().len(), tree_edges);

            let oracle = FreeOracle::new(&sys).unwrap();
            let star = ball.check_star(&oracle).unwrap();
            assert!(star.holds(), "{:?}", star.violations);
            assert!(star.pairs_checked > ball.complex().cubes().len());
            total_pairs += star.pairs_checked;

            let dom = FundamentalDomain::build(&sys).unwrap();
            let samples = ball.formal_samples();
            let formal = formal_property_star(&dom, &oracle, &samples).unwrap();
            assert!(formal.holds(), "{:?}", formal.violations);
            assert_eq!(formal.samples_checked, samples.len());
        }
        assert!(total_pairs > 3000, "{total_pairs}");
    }

    #[test]
    fn ball_respects_caps_and_label_requirements() {
        let sys = free_system(2);
        assert!(matches!(
            DeligneBall::build(&sys, 3, 50).unwrap_err(),
            DeligneError::TooLarge { cap: 50 }
        ));
        assert!(matches!(
            DeligneBall::build(&sys, 0, 1000).unwrap_err(),
            DeligneError::BadRadius
        ));
        let braid = CoxeterSystem::new(
            vec!["s".into(), "t".into()],
            &[(0, 1, Label::Finite(3))],
            Label::Infinite,
        )
        .unwrap();
        assert!(matches!(
            DeligneBall::build(&braid, 2, 1000).unwrap_err(),
            DeligneError::NotFree { .. }
        ));
        assert!(FreeOracle::new(&braid).is_err());
    }

    #[test]
    fn vertex_action_moves_within_the_ball() {
        let sys = free_system(2);
        let ball = DeligneBall::build(&sys, 2, 10_000).unwrap();
        let s = FreeWord::generator(0);
        let origin = ball
            .vertex_id(&DeligneVertex {
                rep: FreeWord::identity(),
                subset: GenSet::EMPTY,
            })
            .unwrap();
        let moved = ball.act_vertex(&s, origin).unwrap();
        assert_eq!(
            ball.vertices()[moved as usize].rep,
            FreeWord::generator(0)
        );
        // <s> is fixed by s but not by t.
        let coset = ball
            .vertex_id(&DeligneVertex {
                rep: FreeWord::identity(),
                subset: GenSet::singleton(0),
            })
            .unwrap();
        assert_eq!(ball.act_vertex(&s, coset), Some(coset));
        let t = FreeWord::generator(1);
        assert_ne!(ball.act_vertex(&t, coset), Some(coset));
    }
}
