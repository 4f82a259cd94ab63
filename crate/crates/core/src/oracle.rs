//! Independent oracles for the main pipeline.
//!
//! - `π_1` via determinantal divisors (gcd of minors, no Smith form).
//! - Faces and the arrangement via a scan over all `2^N` index sets.
//!
//! [`run_oracles`] compares them against the pipeline and lists every
//! disagreement.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::faces::{arrangement, closure_over};
use crate::facet_set::FacetSet;
use crate::linalg::{minor_gcd, snf, FinAbGroup, IntMatrix, SmithDecomposition};

/// Largest `N` the subset scans accept.
pub const MAX_SCAN_NORMALS: usize = 24;

fn check_scan_size(cone: &Cone) -> Result<()> {
    let found = cone.num_normals();
    if found > MAX_SCAN_NORMALS {
        return Err(Error::OracleTooLarge {
            limit: MAX_SCAN_NORMALS,
            found,
        });
    }
    Ok(())
}

fn all_subsets(n: usize) -> impl Iterator<Item = FacetSet> {
    (0u64..1 << n).map(move |mask| (0..n).filter(|&j| mask & (1 << j) != 0).collect())
}

/// Active sets of all faces: for every `I ⊆ {1..N}`, the closure of
/// `⋂_{j∈I} F_j`.
pub fn brute_force_faces(cone: &Cone) -> Result<BTreeSet<FacetSet>> {
    check_scan_size(cone)?;
    let n = cone.num_normals();
    Ok(all_subsets(n)
        .map(|s| closure_over(cone.rays(), &s, n))
        .collect())
}

/// Minimal index sets whose facets meet only at the vertex, by full scan.
pub fn brute_force_arrangement(cone: &Cone) -> Result<Vec<FacetSet>> {
    check_scan_size(cone)?;
    let n = cone.num_normals();
    let full = FacetSet::full(n);
    let is_member = |s: &FacetSet| !s.is_empty() && closure_over(cone.rays(), s, n) == full;
    let mut minimal: Vec<FacetSet> = all_subsets(n)
        .filter(|s| is_member(s))
        .filter(|s| {
            s.iter().all(|x| {
                let smaller: FacetSet = s.iter().filter(|&y| y != x).collect();
                !is_member(&smaller)
            })
        })
        .collect();
    minimal.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(minimal)
}

/// Cokernel invariant factors from the determinantal divisors
/// `d_k / d_{k-1}`, for a matrix of full row rank.
pub fn cokernel_from_minors(matrix: &IntMatrix) -> Result<FinAbGroup> {
    let mut previous = BigInt::one();
    let mut chain = Vec::new();
    let mut rank = 0;
    for k in 1..=matrix.rows().min(matrix.cols()) {
        let dk = minor_gcd(matrix, k)?;
        if dk.is_zero() {
            break;
        }
        chain.push(dk.div_floor(&previous));
        previous = dk;
        rank = k;
    }
    FinAbGroup::from_diagonal(&chain, matrix.rows() - rank)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub disagreements: Vec<String>,
}

impl OracleReport {
    pub fn agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs every oracle against the main pipeline.
pub fn run_oracles(cone: &Cone) -> Result<OracleReport> {
    run_oracles_with(cone, snf)
}

/// As [`run_oracles`], with the Smith form supplied by the caller so a faulty
/// implementation can be substituted.
pub fn run_oracles_with<F>(cone: &Cone, smith: F) -> Result<OracleReport>
where
    F: Fn(&IntMatrix) -> SmithDecomposition,
{
    let mut report = OracleReport::default();
    let matrix = cone.normal_matrix();
    let n = cone.dim();

    let s = smith(&matrix);
    let rank = s.rank();
    let pipeline = FinAbGroup::from_diagonal(&s.diagonal()[..rank], n - rank);
    let order = match &pipeline {
        Ok(g) => g.order().unwrap_or_else(BigInt::zero),
        Err(e) => {
            report.disagreements.push(format!("Smith diagonal invalid: {e}"));
            BigInt::zero()
        }
    };
    if s.u.mul(&matrix).mul(&s.v) != s.d {
        report
            .disagreements
            .push("Smith decomposition does not satisfy D = U A V".into());
    }
    let oracle_order = minor_gcd(&matrix, n)?;
    if order != oracle_order {
        report.disagreements.push(format!(
            "pi1 order: Smith form gives {order}, gcd of maximal minors gives {oracle_order}"
        ));
    }
    let from_minors = cokernel_from_minors(&matrix)?;
    if let Ok(g) = &pipeline {
        if *g != from_minors {
            report.disagreements.push(format!(
                "pi1 factors: Smith form gives {g}, minor quotients give {from_minors}"
            ));
        }
    }

    let pipeline_faces: BTreeSet<FacetSet> =
        cone.lattice().faces().iter().map(|f| f.active.clone()).collect();
    let scanned = brute_force_faces(cone)?;
    if pipeline_faces != scanned {
        let missing: Vec<String> = scanned.difference(&pipeline_faces).map(ToString::to_string).collect();
        let extra: Vec<String> = pipeline_faces.difference(&scanned).map(ToString::to_string).collect();
        report.disagreements.push(format!(
            "faces: missing [{}], extra [{}]",
            missing.join(" "),
            extra.join(" ")
        ));
    }

    let minimal = arrangement(cone)?.minimal_members().to_vec();
    let scanned = brute_force_arrangement(cone)?;
    if minimal != scanned {
        report.disagreements.push(format!(
            "arrangement: pipeline {minimal:?}, subset scan {scanned:?}"
        ));
    }
    if let Some(s) = scanned.iter().find(|s| s.len() < 2) {
        report
            .disagreements
            .push(format!("arrangement member {s} has fewer than two indices"));
    }

    Ok(report)
}
