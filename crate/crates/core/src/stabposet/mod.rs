//! Stabiliser checks for a group acting on a cube complex.
//!
//! Everything here is generic over [`GroupAction`]: a finite piece of a
//! complex, a designated set of interior cubes whose stabilisers are
//! trustworthy, and the action itself. The checks are the ones that make
//! ping-pong arguments on such complexes go through:
//!
//! * the star extension property: for intersecting cubes, some cube
//!   over the first realises the intersection of the two stabilisers
//!   ([`check_property_star`]);
//! * its extension to disjoint cubes by walking a normal cube path
//!   ([`check_disjoint_star`]);
//! * bounded chains: the poset of stabilisers has height at most
//!   dimension plus one ([`stabiliser_poset`], [`check_chains`]);
//! * fixed sets: the fixed set of a subgroup equals the fixed set of
//!   the intersection of all stabilisers over it ([`check_fix_lemma`]).
//!
//! Every check returns a serialisable report listing both the counts
//! and explicit witnesses for failures, so a violation can be traced to
//! concrete cubes.

mod actions;

pub use actions::{parse_explicit_action, ActionError, DavisAction, ExplicitAction};

use crate::cube::{CubeComplex, CubeId, NormalPathError};
use crate::group::{GroupOps, Subgroup};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// A group acting on a finite piece of a cube complex.
///
/// `act_vertex` returns `None` when the image falls outside the stored
/// piece. Stabilisers must be exact as abstract groups for every cube;
/// `interior_cubes` marks the cubes whose surroundings are complete
/// enough for the checks to be meaningful.
pub trait GroupAction: GroupOps {
    fn complex(&self) -> &CubeComplex;
    fn interior_cubes(&self) -> Vec<CubeId>;
    fn stabiliser(&self, c: CubeId) -> Subgroup<Self::Elem>;
    fn act_vertex(&self, g: &Self::Elem, v: u32) -> Option<u32>;
}

struct Stabs<'a, A: GroupAction> {
    action: &'a A,
    cache: BTreeMap<CubeId, Subgroup<A::Elem>>,
}

impl<'a, A: GroupAction> Stabs<'a, A> {
    fn new(action: &'a A) -> Self {
        Stabs { action, cache: BTreeMap::new() }
    }

    fn get(&mut self, c: CubeId) -> &Subgroup<A::Elem> {
        self.cache.entry(c).or_insert_with(|| self.action.stabiliser(c))
    }
}

/// One missing star extension: no cube over `cube` has exactly the
/// stabiliser shared by `cube` and `other`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StarViolation {
    pub cube: Vec<u32>,
    pub other: Vec<u32>,
    pub cube_stab_order: usize,
    pub other_stab_order: usize,
    pub needed_order: usize,
    pub needed_elements: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StarReport {
    pub interior_cubes: usize,
    pub pairs_checked: usize,
    pub violations: Vec<StarViolation>,
}

impl StarReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every ordered pair of meeting interior cubes `(C, C')` for a
/// cube `D` over `C` with `Stab(D) = Stab(C) n Stab(C')`.
pub fn check_property_star<A: GroupAction>(action: &A) -> StarReport {
    let complex = action.complex();
    let interior = action.interior_cubes();
    let inside: BTreeSet<CubeId> = interior.iter().copied().collect();
    let mut stabs = Stabs::new(action);
    let mut pairs_checked = 0;
    let mut violations = Vec::new();
    for &c in &interior {
        let candidates: Vec<CubeId> = complex
            .meeting(c)
            .into_iter()
            .filter(|other| inside.contains(other))
            .collect();
        let star = complex.star(c);
        for other in candidates {
            pairs_checked += 1;
            let other_stab = stabs.get(other).clone();
            let needed = stabs.get(c).intersect(&other_stab);
            let found = star.iter().any(|&d| *stabs.get(d) == needed);
            if !found {
                violations.push(StarViolation {
                    cube: complex.cube(c).vertices().to_vec(),
                    other: complex.cube(other).vertices().to_vec(),
                    cube_stab_order: stabs.get(c).order(),
                    other_stab_order: stabs.get(other).order(),
                    needed_order: needed.order(),
                    needed_elements: needed.render(action),
                });
            }
        }
    }
    violations.sort_by(|a, b| (&a.cube, &a.other).cmp(&(&b.cube, &b.other)));
    StarReport { interior_cubes: interior.len(), pairs_checked, violations }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DisjointFailure {
    pub from: Vec<u32>,
    pub to: Vec<u32>,
    pub step: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DisjointReport {
    pub pairs_checked: usize,
    pub pairs_skipped: usize,
    pub max_path_len: usize,
    pub failures: Vec<DisjointFailure>,
}

impl DisjointReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Extends the star property to disjoint interior pairs by walking the
/// normal cube path from `C` to `C'` and pulling the witness backwards:
/// at each cube on the path there must be a star cube realising the
/// stabiliser shared with `C'`, and the shared stabiliser seen from one
/// step must match the one seen from the next. The backward induction is
/// cross-checked against a direct star search at `C`; the two routes
/// must agree. Pairs whose path cannot be built or strays through
/// non-interior cubes are skipped and counted, since a missing witness
/// there says nothing. `limit` caps the number of ordered pairs checked.
pub fn check_disjoint_star<A: GroupAction>(action: &A, limit: usize) -> DisjointReport {
    let complex = action.complex();
    let interior = action.interior_cubes();
    let inside: BTreeSet<CubeId> = interior.iter().copied().collect();
    let mut stabs = Stabs::new(action);
    let mut pairs_checked = 0;
    let mut pairs_skipped = 0;
    let mut max_path_len = 0;
    let mut failures = Vec::new();

    'pairs: for &c in &interior {
        for &c2 in &interior {
            if pairs_checked + pairs_skipped >= limit {
                break 'pairs;
            }
            if c == c2 || complex.cube(c).meets(complex.cube(c2)) {
                continue;
            }
            let path = match complex.normal_cube_path(c, c2) {
                Ok(p) => p,
                Err(NormalPathError::MissingStepCube { .. })
                | Err(NormalPathError::Unreachable) => {
                    pairs_skipped += 1;
                    continue;
                }
                Err(e) => {
                    pairs_checked += 1;
                    failures.push(DisjointFailure {
                        from: complex.cube(c).vertices().to_vec(),
                        to: complex.cube(c2).vertices().to_vec(),
                        step: 0,
                        reason: format!("path construction: {e}"),
                    });
                    continue;
                }
            };
            if path.iter().any(|p| !inside.contains(p)) {
                pairs_skipped += 1;
                continue;
            }
            pairs_checked += 1;
            max_path_len = max_path_len.max(path.len());
            let k = path.len() - 1;
            let target_stab = stabs.get(c2).clone();
            // Backward induction: witness_stab is Stab(D_{l+1}).
            let mut witness_stab = target_stab.clone();
            let mut failed = false;
            for l in (0..k).rev() {
                let needed = stabs.get(path[l]).intersect(&target_stab);
                let via_witness = stabs.get(path[l]).intersect(&witness_stab);
                if needed != via_witness {
                    failures.push(DisjointFailure {
                        from: complex.cube(c).vertices().to_vec(),
                        to: complex.cube(c2).vertices().to_vec(),
                        step: l,
                        reason: format!(
                            "shared stabiliser changed along the path: order {} via the target, {} via the next witness",
                            needed.order(),
                            via_witness.order()
                        ),
                    });
                    failed = true;
                    break;
                }
                let found = complex
                    .star(path[l])
                    .into_iter()
                    .find(|&d| *stabs.get(d) == needed);
                match found {
                    Some(d) => witness_stab = stabs.get(d).clone(),
                    None => {
                        failures.push(DisjointFailure {
                            from: complex.cube(c).vertices().to_vec(),
                            to: complex.cube(c2).vertices().to_vec(),
                            step: l,
                            reason: format!(
                                "no cube over path cube {l} realises the shared stabiliser of order {}",
                                needed.order()
                            ),
                        });
                        failed = true;
                        break;
                    }
                }
            }
            // Direct route: search the star of C for the witness.
            let needed0 = stabs.get(c).intersect(&target_stab);
            let direct = complex
                .star(c)
                .into_iter()
                .any(|d| *stabs.get(d) == needed0);
            if direct == failed {
                failures.push(DisjointFailure {
                    from: complex.cube(c).vertices().to_vec(),
                    to: complex.cube(c2).vertices().to_vec(),
                    step: 0,
                    reason: if direct {
                        "direct star search succeeds but the path induction failed".into()
                    } else {
                        "path induction succeeds but no direct star witness exists".into()
                    },
                });
            }
        }
    }
    failures.sort_by(|a, b| (&a.from, &a.to, a.step).cmp(&(&b.from, &b.to, b.step)));
    DisjointReport { pairs_checked, pairs_skipped, max_path_len, failures }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ChainEntry {
    pub order: usize,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PosetReport {
    pub interior_cubes: usize,
    pub distinct_stabilisers: usize,
    pub height: usize,
    pub bound: usize,
    pub within_bound: bool,
    pub witness_chain: Vec<ChainEntry>,
}

/// The poset of stabilisers of interior cubes under inclusion: its
/// height (number of subgroups in the longest strict chain) must not
/// exceed the complex dimension plus one.
pub fn stabiliser_poset<A: GroupAction>(action: &A) -> PosetReport {
    let interior = action.interior_cubes();
    let mut stabs = Stabs::new(action);
    let distinct: Vec<Subgroup<A::Elem>> = {
        let set: BTreeSet<Subgroup<A::Elem>> =
            interior.iter().map(|&c| stabs.get(c).clone()).collect();
        set.into_iter().collect()
    };
    let n = distinct.len();
    let mut below = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && distinct[i].is_subgroup_of(&distinct[j]) {
                below[j].push(i);
            }
        }
    }
    // Longest chain ending at each subgroup, by increasing order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (distinct[i].order(), i));
    let mut best = vec![1usize; n];
    let mut prev = vec![usize::MAX; n];
    for &j in &order {
        for &i in &below[j] {
            if best[i] + 1 > best[j] {
                best[j] = best[i] + 1;
                prev[j] = i;
            }
        }
    }
    let (height, top) = order
        .iter()
        .map(|&j| (best[j], j))
        .max()
        .unwrap_or((0, usize::MAX));
    let mut witness_chain = Vec::new();
    let mut cur = top;
    while cur != usize::MAX {
        witness_chain.push(ChainEntry {
            order: distinct[cur].order(),
            elements: distinct[cur].render(action),
        });
        cur = prev[cur];
    }
    witness_chain.reverse();
    let bound = action.complex().dim() + 1;
    PosetReport {
        interior_cubes: interior.len(),
        distinct_stabilisers: n,
        height,
        bound,
        within_bound: height <= bound,
        witness_chain,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ChainsReport {
    pub distinct_stabilisers: usize,
    pub maximal_chains: usize,
    pub max_chain_length: usize,
    pub bound: usize,
    pub within_bound: bool,
    pub face_pairs_checked: usize,
    pub face_monotone_violations: usize,
}

/// Chain conditions, checked two ways: stabilisers shrink when cubes
/// grow (monotone along face relations), and every maximal chain in the
/// stabiliser poset stays within the height bound.
pub fn check_chains<A: GroupAction>(action: &A) -> ChainsReport {
    let complex = action.complex();
    let interior = action.interior_cubes();
    let mut stabs = Stabs::new(action);
    let mut face_pairs_checked = 0;
    let mut face_monotone_violations = 0;
    for &c in &interior {
        for d in complex.star(c) {
            if d == c {
                continue;
            }
            face_pairs_checked += 1;
            let bigger = stabs.get(d).clone();
            if !bigger.is_subgroup_of(stabs.get(c)) {
                face_monotone_violations += 1;
            }
        }
    }
    let distinct: Vec<Subgroup<A::Elem>> = {
        let set: BTreeSet<Subgroup<A::Elem>> =
            interior.iter().map(|&c| stabs.get(c).clone()).collect();
        set.into_iter().collect()
    };
    let n = distinct.len();
    let mut covers: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut has_lower = vec![false; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || !distinct[i].is_subgroup_of(&distinct[j]) {
                continue;
            }
            let direct = !(0..n).any(|m| {
                m != i
                    && m != j
                    && distinct[i].is_subgroup_of(&distinct[m])
                    && distinct[m].is_subgroup_of(&distinct[j])
            });
            if direct {
                covers[i].push(j);
                has_lower[j] = true;
            }
        }
    }
    let mut maximal_chains = 0usize;
    let mut max_chain_length = 0usize;
    fn walk(
        i: usize,
        len: usize,
        covers: &[Vec<usize>],
        chains: &mut usize,
        longest: &mut usize,
    ) {
        if covers[i].is_empty() {
            *chains += 1;
            *longest = (*longest).max(len);
            return;
        }
        for &j in &covers[i] {
            walk(j, len + 1, covers, chains, longest);
        }
    }
    for i in 0..n {
        if !has_lower[i] {
            walk(i, 1, &covers, &mut maximal_chains, &mut max_chain_length);
        }
    }
    let bound = complex.dim() + 1;
    ChainsReport {
        distinct_stabilisers: n,
        maximal_chains,
        max_chain_length,
        bound,
        within_bound: max_chain_length <= bound,
        face_pairs_checked,
        face_monotone_violations,
    }
}

/// Vertices fixed by every element of `h`.
pub fn fix_set<A: GroupAction>(action: &A, h: &Subgroup<A::Elem>) -> Vec<u32> {
    (0..action.complex().vertex_count())
        .filter(|&v| h.elements().iter().all(|g| action.act_vertex(g, v) == Some(v)))
        .collect()
}

/// The intersection of the stabilisers of all interior cubes containing
/// `h`; `None` when no interior cube is stabilised by all of `h`.
pub fn parabolic_over<A: GroupAction>(
    action: &A,
    h: &Subgroup<A::Elem>,
) -> Option<Subgroup<A::Elem>> {
    let mut acc: Option<Subgroup<A::Elem>> = None;
    for c in action.interior_cubes() {
        let stab = action.stabiliser(c);
        if h.is_subgroup_of(&stab) {
            acc = Some(match acc {
                None => stab,
                Some(prev) => prev.intersect(&stab),
            });
        }
    }
    acc
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FixPosetReport {
    pub subgroups_checked: usize,
    pub distinct_fixed_sets: usize,
    pub height: usize,
    pub bound: usize,
    pub within_bound: bool,
}

/// Height of the poset of fixed-point sets `Fix(H)` over all subgroups
/// `H` of interior-cube stabilisers, ordered by strict inclusion. Like
/// the stabiliser poset, it must fit in `dim + 1` levels.
pub fn fixed_set_poset<A: GroupAction>(action: &A) -> FixPosetReport {
    let interior = action.interior_cubes();
    let mut stabs = Stabs::new(action);
    let mut subgroups: BTreeSet<Subgroup<A::Elem>> = BTreeSet::new();
    for &c in &interior {
        let stab = stabs.get(c).clone();
        subgroups.extend(stab.all_subgroups(action));
    }
    let sets: BTreeSet<Vec<u32>> = subgroups.iter().map(|h| fix_set(action, h)).collect();
    let sets: Vec<Vec<u32>> = sets.into_iter().collect();
    let is_subset = |a: &[u32], b: &[u32]| {
        let mut it = b.iter();
        a.iter().all(|x| it.any(|y| y == x))
    };
    let mut order: Vec<usize> = (0..sets.len()).collect();
    order.sort_by_key(|&i| (sets[i].len(), i));
    let mut best = vec![1usize; sets.len()];
    for (pos, &j) in order.iter().enumerate() {
        for &i in &order[..pos] {
            if sets[i].len() < sets[j].len() && is_subset(&sets[i], &sets[j]) {
                best[j] = best[j].max(best[i] + 1);
            }
        }
    }
    let bound = action.complex().dim() + 1;
    let height = best.into_iter().max().unwrap_or(0);
    FixPosetReport {
        subgroups_checked: subgroups.len(),
        distinct_fixed_sets: sets.len(),
        height,
        bound,
        within_bound: height <= bound,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FixMismatch {
    pub subgroup: Vec<String>,
    pub parabolic: Vec<String>,
    pub fixed_by_subgroup: Vec<u32>,
    pub fixed_by_parabolic: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FixLemmaReport {
    pub subgroups_checked: usize,
    pub mismatches: Vec<FixMismatch>,
}

impl FixLemmaReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// For every subgroup of every interior-cube stabiliser: the vertices
/// fixed by the subgroup must equal the vertices fixed by the
/// intersection of all interior stabilisers over it.
pub fn check_fix_lemma<A: GroupAction>(action: &A) -> FixLemmaReport {
    let interior = action.interior_cubes();
    let mut stabs = Stabs::new(action);
    let mut seen: BTreeSet<Subgroup<A::Elem>> = BTreeSet::new();
    for &c in &interior {
        let stab = stabs.get(c).clone();
        for h in stab.all_subgroups(action) {
            seen.insert(h);
        }
    }
    let mut mismatches = Vec::new();
    for h in &seen {
        let p = parabolic_over(action, h)
            .expect("subgroup of an interior stabiliser has an interior cube over it");
        let fix_h = fix_set(action, h);
        let fix_p = fix_set(action, &p);
        if fix_h != fix_p {
            mismatches.push(FixMismatch {
                subgroup: h.render(action),
                parabolic: p.render(action),
                fixed_by_subgroup: fix_h,
                fixed_by_parabolic: fix_p,
            });
        }
    }
    FixLemmaReport { subgroups_checked: seen.len(), mismatches }
}
