//! Homotopy invariants of the contact toric manifold with a given good cone.
//!
//! For `N` facet normals in `Z^n` spanning a sublattice `Λ`, the fundamental
//! group is the finite group `Z^n / Λ` (the cokernel of the map `Z^N -> Z^n`
//! sending `e_j` to `μ_j`) and `π_2` is free abelian of rank `N - n`. The same
//! groups appear as `π_0` and `π_1` of the kernel torus `T`, which is what the
//! long exact sequence of the free `T`-action identifies them with.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::faces::{arrangement, check_good, Arrangement};
use crate::linalg::{cokernel, minor_gcd, snf, FinAbGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyReport {
    pub pi1: FinAbGroup,
    pub pi2_rank: usize,
    /// Components of the kernel torus `T`.
    pub pi0_t: FinAbGroup,
    /// Rank of `π_1(T) = Z^{dim T}`.
    pub pi1_t_rank: usize,
    pub arrangement: Arrangement,
    /// Order of `π_1` recomputed as the gcd of the maximal minors.
    pub oracle_order: BigInt,
}

fn require_good(cone: &Cone) -> Result<()> {
    let report = check_good(cone);
    if report.good() {
        Ok(())
    } else {
        Err(Error::NotGoodCone(Box::new(report)))
    }
}

/// `π_1 = Z^n / span_Z{μ_j}`. Refuses cones that are not good.
pub fn compute_pi1(cone: &Cone) -> Result<FinAbGroup> {
    require_good(cone)?;
    pi1_unchecked(cone)
}

fn pi1_unchecked(cone: &Cone) -> Result<FinAbGroup> {
    let group = cokernel(&cone.normal_matrix());
    if !group.is_finite() {
        return Err(Error::InternalInvariantViolation(format!(
            "normals of a validated cone span a sublattice of corank {}",
            group.free_rank()
        )));
    }
    Ok(group)
}

/// `rank π_2 = N - n`. Refuses cones that are not good.
pub fn compute_pi2_rank(cone: &Cone) -> Result<usize> {
    require_good(cone)?;
    Ok(cone.num_normals() - cone.dim())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConsistencyCheck {
    /// `π_1` from the Smith form agrees with the determinantal divisors.
    MinorOracle,
    /// Every minimal member of the arrangement has codimension at least 2.
    ArrangementCodim,
    /// `π_1 = π_0(T)` and `rank π_2 = rank π_1(T)`.
    ExactSequence,
}

impl fmt::Display for ConsistencyCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::MinorOracle => "minor-oracle",
            Self::ArrangementCodim => "arrangement-codim",
            Self::ExactSequence => "exact-sequence",
        })
    }
}

fn fail(check: ConsistencyCheck, detail: String) -> Error {
    Error::ConsistencyFailure { check, detail }
}

/// Assembles the full report and cross-checks it.
pub fn consistency_check(cone: &Cone) -> Result<HomotopyReport> {
    require_good(cone)?;
    let n = cone.dim();
    let matrix = cone.normal_matrix();

    let pi1 = pi1_unchecked(cone)?;
    let pi2_rank = cone.num_normals() - n;

    // T = ker(T^N -> G): its component group is coker ϖ and its dimension is
    // rank ker ϖ, both read straight off the Smith diagonal.
    let s = snf(&matrix);
    let pi0_t = FinAbGroup::from_diagonal(&s.diagonal(), 0)?;
    let pi1_t_rank = cone.num_normals() - s.rank();

    // (a) determinantal divisors: d_k = ∏_{i≤k} s_i, for every k
    let oracle_order = minor_gcd(&matrix, n)?;
    let order = pi1.order().unwrap_or_else(BigInt::zero);
    if order != oracle_order {
        return Err(fail(
            ConsistencyCheck::MinorOracle,
            format!("Smith order {order} but gcd of maximal minors {oracle_order}"),
        ));
    }
    let mut previous = BigInt::one();
    let mut chain = Vec::with_capacity(n);
    for k in 1..=n {
        let dk = minor_gcd(&matrix, k)?;
        if dk.is_zero() || !dk.is_multiple_of(&previous) {
            return Err(fail(
                ConsistencyCheck::MinorOracle,
                format!("determinantal divisor d_{k} = {dk} not divisible by d_{} = {previous}", k - 1),
            ));
        }
        chain.push(&dk / &previous);
        previous = dk;
    }
    let from_minors = FinAbGroup::from_diagonal(&chain, 0)?;
    if from_minors != pi1 {
        return Err(fail(
            ConsistencyCheck::MinorOracle,
            format!("Smith factors {pi1} but minor quotients give {from_minors}"),
        ));
    }

    // (b) the deleted coordinate subspaces have complex codimension >= 2
    let arrangement = arrangement(cone)?;
    if let Some(bad) = arrangement.minimal_members().iter().find(|m| m.len() < 2) {
        return Err(fail(
            ConsistencyCheck::ArrangementCodim,
            format!("minimal member {bad} has codimension {}", bad.len()),
        ));
    }

    // (c) π_1 = π_0(T), π_2 = π_1(T)
    if pi0_t != pi1 || pi1_t_rank != pi2_rank {
        return Err(fail(
            ConsistencyCheck::ExactSequence,
            format!("pi1 = {pi1}, pi0(T) = {pi0_t}, pi2 rank {pi2_rank}, pi1(T) rank {pi1_t_rank}"),
        ));
    }

    Ok(HomotopyReport {
        pi1,
        pi2_rank,
        pi0_t,
        pi1_t_rank,
        arrangement,
        oracle_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::ConeSpec;
    use crate::facet_set::FacetSet;

    fn cone(n: usize, normals: &[&[i64]]) -> Cone {
        Cone::new(&ConeSpec::from_i64(n, normals).unwrap()).unwrap()
    }

    fn standard(n: usize) -> Cone {
        let normals: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let refs: Vec<&[i64]> = normals.iter().map(Vec::as_slice).collect();
        cone(n, &refs)
    }

    #[test]
    fn standard_cones() {
        for n in 2..=6 {
            let c = standard(n);
            assert!(compute_pi1(&c).unwrap().is_trivial());
            assert_eq!(compute_pi2_rank(&c).unwrap(), 0);
        }
    }

    #[test]
    fn lens_cones() {
        for p in 2..=12 {
            let c = cone(2, &[&[1, 0], &[1, p]]);
            let g = compute_pi1(&c).unwrap();
            assert_eq!(g.invariant_factors(), &[BigInt::from(p)]);
            assert_eq!(compute_pi2_rank(&c).unwrap(), 0);
        }
    }

    #[test]
    fn square_cone_report() {
        let c = cone(3, &[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]]);
        let r = consistency_check(&c).unwrap();
        assert_eq!(r.pi1.invariant_factors(), &[BigInt::from(2)]);
        assert_eq!(r.pi2_rank, 1);
        assert_eq!(r.pi1_t_rank, 1);
        assert_eq!(r.pi0_t, r.pi1);
        assert_eq!(r.oracle_order, BigInt::from(2));
        let expected: Vec<FacetSet> = vec![[0, 1].into_iter().collect(), [2, 3].into_iter().collect()];
        assert_eq!(r.arrangement.minimal_members(), expected.as_slice());
    }

    #[test]
    fn standard_and_lens_reports() {
        let r = consistency_check(&standard(2)).unwrap();
        assert!(r.pi1.is_trivial());
        assert_eq!(r.oracle_order, BigInt::one());

        let r = consistency_check(&cone(2, &[&[1, 0], &[1, 2]])).unwrap();
        assert_eq!(r.pi1.order(), Some(BigInt::from(2)));
        assert_eq!(r.pi2_rank, 0);
        assert_eq!(r.oracle_order, BigInt::from(2));
    }

    #[test]
    fn refuses_bad_cones() {
        let c = cone(3, &[&[1, 0, 0], &[1, 2, 0], &[0, 0, 1]]);
        assert!(matches!(compute_pi1(&c), Err(Error::NotGoodCone(_))));
        assert!(matches!(compute_pi2_rank(&c), Err(Error::NotGoodCone(_))));
        assert!(matches!(consistency_check(&c), Err(Error::NotGoodCone(_))));
    }
}
