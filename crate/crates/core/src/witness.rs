//! Exact moment-map witnesses.
//!
//! The standard moment map on `C^N` is `Φ(z) = Σ |z_j|² e_j*`. For a point
//! `η` in the relative interior of a nonzero face, the point `z^η` with
//! `|z^η_j|² = ⟨η, μ_j⟩` maps to the pullback of `η`, vanishes exactly on the
//! face's active coordinates, and lies in the zero level of the kernel torus
//! moment map. Everything is checked in the squared magnitudes
//! `m_j = |z_j|²`, where the identities are linear and exact over `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::faces::Face;
use crate::facet_set::FacetSet;
use crate::linalg::kernel_basis;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentWitness {
    pub face: Face,
    /// A relative-interior point of the face.
    pub eta: Vec<BigRational>,
    /// Squared magnitudes `m_j = ⟨η, μ_j⟩ = |z^η_j|²`.
    pub m: Vec<BigRational>,
}

fn pair(eta: &[BigRational], mu: &[BigInt]) -> BigRational {
    eta.iter()
        .zip(mu)
        .map(|(e, x)| e * BigRational::from_integer(x.clone()))
        .sum()
}

/// Sum of the face's primitive ray generators.
pub fn relint_point(cone: &Cone, face: &Face) -> Result<Vec<BigRational>> {
    if face.rays.is_empty() {
        return Err(Error::ZeroFace);
    }
    let rays = cone.rays();
    let mut eta = vec![BigInt::zero(); cone.dim()];
    for &r in &face.rays {
        for (e, g) in eta.iter_mut().zip(&rays[r].generator) {
            *e += g;
        }
    }
    Ok(eta.into_iter().map(BigRational::from_integer).collect())
}

/// Builds the witness for a nonzero face and checks both of its identities:
/// the zero pattern of `m` is the active set, and `m` is annihilated by every
/// integer kernel vector of the normal matrix.
pub fn witness_for_face(cone: &Cone, face: &Face) -> Result<MomentWitness> {
    let eta = relint_point(cone, face)?;
    let m: Vec<BigRational> = cone.normals().iter().map(|mu| pair(&eta, mu)).collect();

    let zeros: FacetSet = m
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_zero())
        .map(|(j, _)| j)
        .collect();
    if zeros != face.active || m.iter().any(Signed::is_negative) {
        return Err(Error::InternalInvariantViolation(format!(
            "witness for face {} has zero pattern {zeros}",
            face.active
        )));
    }

    if let Some(kernel) = kernel_basis(&cone.normal_matrix()) {
        for c in 0..kernel.cols() {
            let k = kernel.column(c);
            let p: BigRational = m
                .iter()
                .zip(&k)
                .map(|(x, kj)| x * BigRational::from_integer(kj.clone()))
                .sum();
            if !p.is_zero() {
                return Err(Error::InternalInvariantViolation(format!(
                    "witness for face {} pairs to {p} with kernel vector {k:?}",
                    face.active
                )));
            }
        }
    }

    Ok(MomentWitness {
        face: face.clone(),
        eta,
        m,
    })
}

/// Why a squared-magnitude vector is not the image of a nonzero cone point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    WrongLength { expected: usize, found: usize },
    /// `m_j < 0`: no `η ∈ C` produces it.
    NegativeEntry { index: usize },
    /// `m` is not in the image of the pullback of the normals.
    NotInImage,
    /// `m = 0`, the image of the vertex.
    Origin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `m` is the pullback of `eta`, which lies in the relative interior of `face`.
    Face { face: Face, eta: Vec<BigRational> },
    Rejected(Rejection),
}

/// Decides whether `m = (⟨η, μ_j⟩)_j` for some nonzero `η ∈ C` and, if so,
/// returns the face containing `η` in its relative interior.
pub fn membership_check(cone: &Cone, m: &[BigRational]) -> Result<Membership> {
    let normals = cone.normals();
    if m.len() != normals.len() {
        return Ok(Membership::Rejected(Rejection::WrongLength {
            expected: normals.len(),
            found: m.len(),
        }));
    }
    if let Some(index) = m.iter().position(Signed::is_negative) {
        return Ok(Membership::Rejected(Rejection::NegativeEntry { index }));
    }

    let system: Vec<Vec<BigRational>> = normals
        .iter()
        .map(|mu| mu.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let Some(eta) = solve(system, m.to_vec(), cone.dim()) else {
        return Ok(Membership::Rejected(Rejection::NotInImage));
    };
    if eta.iter().all(Zero::is_zero) {
        return Ok(Membership::Rejected(Rejection::Origin));
    }

    let active: FacetSet = m
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_zero())
        .map(|(j, _)| j)
        .collect();
    match cone.lattice().find(&active) {
        Some(face) => Ok(Membership::Face {
            face: face.clone(),
            eta,
        }),
        None => Err(Error::InternalInvariantViolation(format!(
            "cone point {eta:?} has active set {active}, which is not a face"
        ))),
    }
}

/// Solves `A x = b` exactly for `A` with `cols` columns. Returns `None` if the
/// system is inconsistent; free variables are set to zero.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>, cols: usize) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        b[r] *= &inv;
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let pivot = a[r].clone();
            for (x, p) in a[i].iter_mut().zip(&pivot) {
                *x -= &f * p;
            }
            let t = &f * &b[r];
            b[i] -= t;
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = b[i].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::ConeSpec;

    fn cone(n: usize, normals: &[&[i64]]) -> Cone {
        Cone::new(&ConeSpec::from_i64(n, normals).unwrap()).unwrap()
    }

    fn square() -> Cone {
        cone(3, &[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]])
    }

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    fn set(one_based: &[usize]) -> FacetSet {
        one_based.iter().map(|i| i - 1).collect()
    }

    #[test]
    fn relint_points() {
        let c = cone(2, &[&[1, 0], &[0, 1]]);
        let facet = c.lattice().find(&set(&[2])).unwrap();
        assert_eq!(relint_point(&c, facet).unwrap(), q(&[1, 0]));

        let c = square();
        let edge = c.lattice().find(&set(&[1, 3])).unwrap();
        assert_eq!(relint_point(&c, edge).unwrap(), q(&[-1, -1, 1]));
        assert_eq!(relint_point(&c, c.lattice().cone_face()).unwrap(), q(&[0, 0, 4]));
        assert!(matches!(
            relint_point(&c, c.lattice().zero_face()),
            Err(Error::ZeroFace)
        ));
    }

    #[test]
    fn witness_examples() {
        let c = square();
        let edge = c.lattice().find(&set(&[1, 3])).unwrap();
        let w = witness_for_face(&c, edge).unwrap();
        assert_eq!(w.eta, q(&[-1, -1, 1]));
        assert_eq!(w.m, q(&[0, 2, 0, 2]));

        let c = cone(2, &[&[1, 0], &[0, 1]]);
        let w = witness_for_face(&c, c.lattice().find(&set(&[2])).unwrap()).unwrap();
        assert_eq!(w.m, q(&[1, 0]));

        let c = cone(2, &[&[1, 0], &[1, 2]]);
        let w = witness_for_face(&c, c.lattice().cone_face()).unwrap();
        assert_eq!(w.eta, q(&[2, 0]));
        assert_eq!(w.m, q(&[2, 2]));
    }

    #[test]
    fn membership_examples() {
        let c = square();
        match membership_check(&c, &q(&[0, 2, 0, 2])).unwrap() {
            Membership::Face { face, .. } => assert_eq!(face.active, set(&[1, 3])),
            other => panic!("unexpected {other:?}"),
        }
        match membership_check(&c, &q(&[1, 1, 1, 1])).unwrap() {
            Membership::Face { face, eta } => {
                assert_eq!(face.active, FacetSet::new());
                assert_eq!(eta, q(&[0, 0, 1]));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            membership_check(&c, &q(&[1, 0, 0, 0])).unwrap(),
            Membership::Rejected(Rejection::NotInImage)
        );
        assert_eq!(
            membership_check(&c, &q(&[0, 0, 0, 0])).unwrap(),
            Membership::Rejected(Rejection::Origin)
        );
        assert_eq!(
            membership_check(&c, &q(&[1, -1, 0, 0])).unwrap(),
            Membership::Rejected(Rejection::NegativeEntry { index: 1 })
        );
        assert_eq!(
            membership_check(&c, &q(&[1, 1])).unwrap(),
            Membership::Rejected(Rejection::WrongLength { expected: 4, found: 2 })
        );
    }

    #[test]
    fn fractional_points_are_accepted() {
        let c = square();
        let half = BigRational::new(1.into(), 2.into());
        let m = vec![half.clone(), half.clone(), half.clone(), half];
        match membership_check(&c, &m).unwrap() {
            Membership::Face { face, eta } => {
                assert!(face.active.is_empty());
                assert_eq!(eta[2], BigRational::new(1.into(), 2.into()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
