//! Coset cube complexes of Artin-style systems, with symbolic
//! stabilisers.
//!
//! The vertex set of the full complex is the set of cosets `g·A_T` with
//! `T` spherical; a cube spans the cosets between `g·A_{S1}` and
//! `g·A_{S2}` for a nested pair `S1 ⊆ S2`. These groups are infinite,
//! so stabilisers cannot be element lists: they are carried as
//! [`ParabolicLabel`]s (a conjugator token plus a generator subset), and
//! all reasoning about their intersections is delegated to an
//! [`IntersectionOracle`]. Only the free case (every label infinite) has
//! a concrete oracle and an explicit ball here; everything else is
//! checked at the level of the fundamental domain.

mod freegrp;

pub use freegrp::{DeligneBall, DeligneVertex, FreeOracle, FreeWord};

use crate::coxeter::CoxeterSystem;
use crate::cube::ComplexError;
use crate::genset::GenSet;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeligneError {
    #[error("system is not of type FC: {witness} has finite labels throughout but is not spherical")]
    NotFc { witness: String },
    #[error("generators `{a}` and `{b}` have a finite label; the explicit ball needs a free system")]
    NotFree { a: String, b: String },
    #[error("radius must be at least 1")]
    BadRadius,
    #[error("ball exceeds the vertex cap of {cap}")]
    TooLarge { cap: usize },
    #[error("oracle cannot answer for subset {subset}: free-system parabolics have at most one generator")]
    UnsupportedQuery { subset: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A conjugated standard parabolic `g·A_T·g⁻¹`, by token and subset.
/// Standard parabolics carry the identity token.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParabolicLabel<T> {
    pub conjugator: T,
    pub subset: GenSet,
}

/// Decision procedures for parabolic subgroups, supplied per system
/// class. `intersect_parabolics(s1, g, s2)` must return a label for
/// `A_{s1} ∩ g·A_{s2}·g⁻¹` whose subset is contained in `s1`; the
/// checkers verify that containment on every answer. Implementations
/// must be pure: the same query always gets the same label.
pub trait IntersectionOracle {
    type Token: Clone + Ord + std::fmt::Debug;

    fn identity(&self) -> Self::Token;
    fn compose(&self, a: &Self::Token, b: &Self::Token) -> Self::Token;
    fn invert(&self, a: &Self::Token) -> Self::Token;
    fn intersect_parabolics(
        &self,
        s1: GenSet,
        g: &Self::Token,
        s2: GenSet,
    ) -> Result<ParabolicLabel<Self::Token>, DeligneError>;
    /// Whether two labels name the same subgroup.
    fn same_subgroup(
        &self,
        a: &ParabolicLabel<Self::Token>,
        b: &ParabolicLabel<Self::Token>,
    ) -> Result<bool, DeligneError>;
    fn render_token(&self, t: &Self::Token) -> String;
}

/// One cube of the fundamental domain: the interval from `A_{lower}` to
/// `A_{upper}`, of dimension `|upper \ lower|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DomainCube {
    pub lower: GenSet,
    pub upper: GenSet,
}

impl DomainCube {
    pub fn dim(self) -> usize {
        self.upper.minus(self.lower).card()
    }

    /// Interval containment: every coset vertex of `other` is one of
    /// ours.
    pub fn contains(self, other: DomainCube) -> bool {
        self.lower.is_subset(other.lower) && other.upper.is_subset(self.upper)
    }
}

/// The cube poset of a single orbit region: all nested pairs of
/// spherical subsets. The whole complex is the orbit of this domain, so
/// every structural question about cube types reduces to it.
#[derive(Debug)]
pub struct FundamentalDomain {
    names: Vec<String>,
    cubes: Vec<DomainCube>,
    dim: usize,
}

impl FundamentalDomain {
    /// Requires the FC condition; its failure witness (the smallest
    /// all-finite-label subset that is not spherical) is in the error.
    pub fn build(sys: &CoxeterSystem) -> Result<FundamentalDomain, DeligneError> {
        let (fc, witness) = sys.is_fc();
        if !fc {
            return Err(DeligneError::NotFc {
                witness: sys.render_subset(witness.expect("failure carries a witness")),
            });
        }
        let poset = sys.spherical_subsets();
        let mut cubes = Vec::new();
        let mut dim = 0;
        for &upper in &poset.subsets {
            dim = dim.max(upper.card());
            for lower in upper.subsets() {
                cubes.push(DomainCube { lower, upper });
            }
        }
        cubes.sort();
        Ok(FundamentalDomain {
            names: sys.generators().to_vec(),
            cubes,
            dim,
        })
    }

    pub fn cubes(&self) -> &[DomainCube] {
        &self.cubes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, cube: DomainCube) -> bool {
        self.cubes.binary_search(&cube).is_ok()
    }

    /// Cube counts by dimension.
    pub fn census(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.dim + 1];
        for c in &self.cubes {
            counts[c.dim()] += 1;
        }
        counts
    }

    /// Longest inclusion chain among the standard stabiliser subsets
    /// appearing as lower ends; the bound to compare against is
    /// `dim + 1`.
    pub fn standard_height(&self) -> usize {
        let lowers: std::collections::BTreeSet<GenSet> =
            self.cubes.iter().map(|c| c.lower).collect();
        let lowers: Vec<GenSet> = lowers.into_iter().collect();
        let mut best = vec![1usize; lowers.len()];
        // Card-lex order sorts subsets before supersets.
        for j in 0..lowers.len() {
            for i in 0..j {
                if lowers[i] != lowers[j] && lowers[i].is_subset(lowers[j]) {
                    best[j] = best[j].max(best[i] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    pub fn render_cube(&self, c: DomainCube) -> String {
        format!(
            "{} <= {}",
            c.lower.render(&self.names),
            c.upper.render(&self.names)
        )
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Serialisable listing, sorted.
    pub fn summary(&self) -> DomainSummary {
        DomainSummary {
            generators: self.names.clone(),
            dim: self.dim,
            cubes_by_dim: self.census(),
            cubes: self
                .cubes
                .iter()
                .map(|&c| [c.lower.render(&self.names), c.upper.render(&self.names)])
                .collect(),
            standard_height: self.standard_height(),
            height_bound: self.dim + 1,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DomainSummary {
    pub generators: Vec<String>,
    pub dim: usize,
    pub cubes_by_dim: Vec<usize>,
    pub cubes: Vec<[String; 2]>,
    pub standard_height: usize,
    pub height_bound: usize,
}

/// A Theorem-style sample: a standard cube, a translation token, and a
/// second cube carried by that token.
#[derive(Clone, Debug)]
pub struct FormalSample<T> {
    pub first: DomainCube,
    pub translation: T,
    pub second: DomainCube,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FormalViolation {
    pub sample: usize,
    pub first: [String; 2],
    pub second: [String; 2],
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FormalStarReport {
    pub samples_checked: usize,
    pub violations: Vec<FormalViolation>,
}

impl FormalStarReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The reduction behind the star property for coset complexes, checked
/// per sample. The stabiliser of the cube `(S1 ⊆ S2)` is `A_{S1}`; for
/// a second cube translated by `g`, the oracle names the intersection
/// `A_{S1} ∩ g·A_{S1'}·g⁻¹` as a conjugated parabolic `(h, T)`. The
/// extension cube `(T ⊆ S2)` then realises that intersection over the
/// first cube, provided the oracle kept its contract `T ⊆ S1` and the
/// domain is face-closed; both are verified, not assumed.
pub fn formal_property_star<O: IntersectionOracle>(
    domain: &FundamentalDomain,
    oracle: &O,
    samples: &[FormalSample<O::Token>],
) -> Result<FormalStarReport, DeligneError> {
    let mut violations = Vec::new();
    for (k, sample) in samples.iter().enumerate() {
        let rendered = |c: DomainCube| {
            [
                c.lower.render(&domain.names),
                c.upper.render(&domain.names),
            ]
        };
        let mut flag = |reason: String| {
            violations.push(FormalViolation {
                sample: k,
                first: rendered(sample.first),
                second: rendered(sample.second),
                reason,
            });
        };
        if !domain.contains(sample.first) || !domain.contains(sample.second) {
            flag("sample cube is not in the fundamental domain".into());
            continue;
        }
        let label = oracle.intersect_parabolics(
            sample.first.lower,
            &sample.translation,
            sample.second.lower,
        )?;
        if !label.subset.is_subset(sample.first.lower) {
            flag(format!(
                "oracle broke its contract: {} is not inside {}",
                label.subset.render(&domain.names),
                sample.first.lower.render(&domain.names)
            ));
            continue;
        }
        let witness = DomainCube {
            lower: label.subset,
            upper: sample.first.upper,
        };
        if !domain.contains(witness) {
            flag(format!(
                "no domain cube {}",
                domain.render_cube(witness)
            ));
            continue;
        }
        if !witness.contains(sample.first) {
            flag(format!(
                "extension cube {} does not contain the sample cube",
                domain.render_cube(witness)
            ));
        }
    }
    Ok(FormalStarReport {
        samples_checked: samples.len(),
        violations,
    })
}
