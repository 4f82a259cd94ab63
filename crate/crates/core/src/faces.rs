//! Extreme rays, the face lattice, the good-cone test and the arrangement of
//! index sets whose facets meet only at the vertex.
//!
//! Faces are keyed by their *active set*: the indices `j` with `⟨η, μ_j⟩ = 0`
//! on the whole face. The cone itself has the empty active set and the zero
//! face has the full index set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cone::{Cone, ConeSpec};
use crate::error::{Error, Result};
use crate::facet_set::FacetSet;
use crate::linalg::{self, combinations, dot, generates_direct_summand, primitive_part, IntMatrix};

/// An extreme ray of the cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ray {
    /// Primitive generator in dual coordinates.
    pub generator: Vec<BigInt>,
    /// Normals annihilated by the generator.
    pub active: FacetSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub active: FacetSet,
    pub dim: usize,
    /// Indices into [`FaceLattice::rays`] of the rays lying on this face.
    pub rays: Vec<usize>,
}

impl Face {
    pub fn codim(&self, ambient: usize) -> usize {
        ambient - self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    dim: usize,
    num_normals: usize,
    rays: Vec<Ray>,
    faces: Vec<Face>,
}

impl FaceLattice {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_normals(&self) -> usize {
        self.num_normals
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    /// All faces, ordered by codimension and then by active set.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn facets(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| f.dim + 1 == self.dim)
    }

    pub fn cone_face(&self) -> &Face {
        &self.faces[0]
    }

    pub fn zero_face(&self) -> &Face {
        self.faces.last().expect("lattice always holds the zero face")
    }

    pub fn find(&self, active: &FacetSet) -> Option<&Face> {
        self.faces.iter().find(|f| &f.active == active)
    }

    /// The active set of the smallest face containing `⋂_{j∈I} F_j`.
    pub fn closure(&self, indices: &FacetSet) -> FacetSet {
        closure_over(&self.rays, indices, self.num_normals)
    }
}

pub(crate) fn closure_over(rays: &[Ray], indices: &FacetSet, num_normals: usize) -> FacetSet {
    let mut on_face = rays.iter().filter(|r| indices.is_subset(&r.active));
    match on_face.next() {
        None => FacetSet::full(num_normals),
        Some(first) => on_face.fold(first.active.clone(), |acc, r| acc.intersection(&r.active)),
    }
}

/// Signed maximal minors of an `(n-1) × n` matrix: a vector spanning its
/// kernel when the rank is `n - 1`, zero otherwise.
fn kernel_line(rows: &[&Vec<BigInt>], n: usize) -> Vec<BigInt> {
    (0..n)
        .map(|skip| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = linalg::det_of_rows(minor);
            if skip % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// All extreme rays of `{η : ⟨η, μ_j⟩ ≥ 0}`, sorted lexicographically by
/// generator.
///
/// Every extreme ray is the kernel line of some `n - 1` normals of rank
/// `n - 1`; each such line is oriented into the cone when possible. Subsets
/// already contained in a known ray's active set are skipped, since they can
/// only reproduce that ray.
pub fn extreme_rays(spec: &ConeSpec) -> Vec<Ray> {
    let n = spec.dim();
    let normals = spec.normals();
    if n == 0 {
        return Vec::new();
    }
    let mut found: BTreeMap<Vec<BigInt>, FacetSet> = BTreeMap::new();
    for subset in combinations(normals.len(), n - 1) {
        let key: FacetSet = subset.iter().copied().collect();
        if found.values().any(|active| key.is_subset(active)) {
            continue;
        }
        let rows: Vec<&Vec<BigInt>> = subset.iter().map(|&j| &normals[j]).collect();
        let line = kernel_line(&rows, n);
        if line.iter().all(Zero::is_zero) {
            continue;
        }
        let line = primitive_part(&line);
        let pairings: Vec<BigInt> = normals.iter().map(|mu| dot(&line, mu)).collect();
        let generator = if pairings.iter().all(|p| !p.is_negative()) {
            line
        } else if pairings.iter().all(|p| !p.is_positive()) {
            line.iter().map(|x| -x).collect()
        } else {
            continue;
        };
        let active = pairings
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_zero())
            .map(|(j, _)| j)
            .collect();
        found.insert(generator, active);
    }
    found
        .into_iter()
        .map(|(generator, active)| Ray { generator, active })
        .collect()
}

/// Builds the face lattice from the extreme rays.
///
/// Nonzero faces are exactly the intersections of ray active sets; the family
/// is closed under intersection with a worklist, then the cone (`∅`) and the
/// zero face (all indices) are added.
pub fn enumerate_faces(spec: &ConeSpec, rays: Vec<Ray>) -> FaceLattice {
    let n = spec.dim();
    let num_normals = spec.num_normals();

    let mut seen: BTreeSet<FacetSet> = BTreeSet::new();
    let mut work: Vec<FacetSet> = Vec::new();
    for r in &rays {
        if seen.insert(r.active.clone()) {
            work.push(r.active.clone());
        }
    }
    while let Some(s) = work.pop() {
        for r in &rays {
            let t = s.intersection(&r.active);
            if seen.insert(t.clone()) {
                work.push(t);
            }
        }
    }
    seen.insert(FacetSet::new());
    seen.insert(FacetSet::full(num_normals));

    let mut faces: Vec<Face> = seen
        .into_iter()
        .map(|active| {
            let on_face: Vec<usize> = rays
                .iter()
                .enumerate()
                .filter(|(_, r)| active.is_subset(&r.active))
                .map(|(i, _)| i)
                .collect();
            let dim = IntMatrix::from_rows(
                on_face.iter().map(|&i| rays[i].generator.clone()).collect(),
            )
            .map_or(0, |m| m.rank());
            Face {
                active,
                dim,
                rays: on_face,
            }
        })
        .collect();
    faces.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.active.cmp(&b.active)));

    FaceLattice {
        dim: n,
        num_normals,
        rays,
        faces,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GoodnessCondition {
    /// A codim-`ℓ` face lies on exactly `ℓ` facets.
    UniqueIntersection,
    /// The normals of those facets generate a rank-`ℓ` direct summand.
    DirectSummand,
}

impl GoodnessCondition {
    pub fn number(self) -> u8 {
        match self {
            Self::UniqueIntersection => 1,
            Self::DirectSummand => 2,
        }
    }
}

impl fmt::Display for GoodnessCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition-{}", self.number())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodnessViolation {
    pub face: FacetSet,
    pub codim: usize,
    pub condition: GoodnessCondition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodnessReport {
    pub violations: Vec<GoodnessViolation>,
}

impl GoodnessReport {
    pub fn good(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks both good-cone conditions on every face of codimension `0 < ℓ < n`.
pub fn check_good(cone: &Cone) -> GoodnessReport {
    let lattice = cone.lattice();
    let n = lattice.dim();
    let normals = cone.normals();
    let mut violations = Vec::new();
    for face in lattice.faces() {
        let codim = face.codim(n);
        if codim == 0 || codim >= n {
            continue;
        }
        if face.active.len() != codim {
            violations.push(GoodnessViolation {
                face: face.active.clone(),
                codim,
                condition: GoodnessCondition::UniqueIntersection,
            });
        }
        let rows = IntMatrix::from_rows(face.active.iter().map(|j| normals[j].clone()).collect())
            .expect("a proper face lies on at least one facet");
        if !generates_direct_summand(&rows, codim) {
            violations.push(GoodnessViolation {
                face: face.active.clone(),
                codim,
                condition: GoodnessCondition::DirectSummand,
            });
        }
    }
    GoodnessReport { violations }
}

/// The family of index sets `I` with `⋂_{j∈I} F_j = {0}`, stored by its
/// minimal members. The family is upward closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    minimal: Vec<FacetSet>,
    ray_actives: Vec<FacetSet>,
}

impl Arrangement {
    /// Minimal members, sorted by size and then lexicographically.
    pub fn minimal_members(&self) -> &[FacetSet] {
        &self.minimal
    }

    /// Complex codimension of the coordinate subspace `V_I` for each minimal
    /// member, i.e. `|I|`.
    pub fn codims(&self) -> Vec<usize> {
        self.minimal.iter().map(FacetSet::len).collect()
    }

    pub fn contains(&self, indices: &FacetSet) -> bool {
        !indices.is_empty() && !self.ray_actives.iter().any(|a| indices.is_subset(a))
    }
}

/// Computes the minimal members level by level: a set of size `k + 1` is a
/// minimal member iff it is a member and all of its `k`-subsets are not. Only
/// non-members are extended, each by indices above its maximum.
pub fn arrangement(cone: &Cone) -> Result<Arrangement> {
    let ray_actives: Vec<FacetSet> = cone.rays().iter().map(|r| r.active.clone()).collect();
    let num_normals = cone.num_normals();
    let on_some_ray = |s: &FacetSet| ray_actives.iter().any(|a| s.is_subset(a));

    let mut minimal = Vec::new();
    let mut level: Vec<(FacetSet, usize)> = vec![(FacetSet::new(), 0)];
    while !level.is_empty() {
        let mut next = Vec::new();
        for (s, start) in &level {
            for j in *start..num_normals {
                let mut t = s.clone();
                t.insert(j);
                if on_some_ray(&t) {
                    next.push((t, j + 1));
                    continue;
                }
                let all_faces_below = t.iter().all(|x| {
                    let without: FacetSet = t.iter().filter(|&y| y != x).collect();
                    on_some_ray(&without)
                });
                if all_faces_below {
                    minimal.push(t);
                }
            }
        }
        level = next;
    }
    minimal.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    if let Some(single) = minimal.iter().find(|m| m.len() < 2) {
        return Err(Error::InternalInvariantViolation(format!(
            "arrangement contains the singleton {single}: a facet collapses to the vertex"
        )));
    }
    Ok(Arrangement {
        minimal,
        ray_actives,
    })
}
