//! Cube complexes carrying group actions, built from two sources:
//! graph products of finite groups acting on their Davis complexes, and
//! Artin-style systems acting on cube complexes of standard cosets.
//!
//! The crate has three layers.
//!
//! * Combinatorics: [`cube`] holds finite cube complexes as explicit
//!   vertex sets with cubes as subsets, plus hyperplanes, medians, and
//!   normal cube paths.
//! * Constructions: [`coxeter`] classifies labelled systems and their
//!   spherical subsets; [`graphprod`] builds balls in Davis complexes of
//!   graph products; [`deligne`] builds coset complexes with symbolic
//!   stabiliser labels.
//! * Checks: [`stabposet`] verifies stabiliser properties of an action,
//!   such as star extensions, poset heights, and fixed-set descriptions.
//!
//! Everything is exact integer and set arithmetic; no floats, no hashing
//! nondeterminism. Reports serialise identically across runs.

pub mod coxeter;
pub mod cube;
pub mod deligne;
pub mod genset;
pub mod graphprod;
pub mod group;
pub mod stabposet;

#[cfg(doctest)]
mod booktests {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/coxeter-systems.md")]
    mod coxeter_systems {}
    #[doc = include_str!("../../../book/src/cube-complexes.md")]
    mod cube_complexes {}
    #[doc = include_str!("../../../book/src/normal-cube-paths.md")]
    mod normal_cube_paths {}
    #[doc = include_str!("../../../book/src/graph-products.md")]
    mod graph_products {}
    #[doc = include_str!("../../../book/src/stabiliser-checks.md")]
    mod stabiliser_checks {}
    #[doc = include_str!("../../../book/src/deligne-complexes.md")]
    mod deligne_complexes {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
