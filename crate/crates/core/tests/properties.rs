mod common;

use common::*;
use momentcone_core::linalg::content;
use momentcone_core::oracle::{brute_force_arrangement, brute_force_faces};
use momentcone_core::*;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-10i64..=10, c), r)
            .prop_map(|rows| IntMatrix::from_i64_rows(&rows).unwrap())
    })
}

fn generated_cone() -> impl Strategy<Value = Cone> {
    (2usize..=4)
        .prop_flat_map(|n| {
            let gen = (prop::collection::vec(-3i64..=3, n - 1), 1i64..=3).prop_map(|(mut v, last)| {
                v.push(last);
                v
            });
            (Just(n), prop::collection::vec(gen, n..=n + 4))
        })
        .prop_filter_map("degenerate generators", |(n, gens)| {
            let spec = cone_from_generators(n, &gens)?;
            (spec.num_normals() <= 10).then_some(())?;
            Cone::new(&spec).ok()
        })
}

fn elementary_ops() -> impl Strategy<Value = Vec<(usize, usize, i64, bool)>> {
    prop::collection::vec((0usize..8, 0usize..8, -2i64..=2, any::<bool>()), 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_decomposition_is_exact(a in matrix()) {
        let s = snf(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.u.det().abs().is_one());
        prop_assert!(s.v.det().abs().is_one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            prop_assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero());
        }
        let mut prod = BigInt::one();
        for k in 1..=s.rank() {
            prod *= &diag[k - 1];
            prop_assert_eq!(minor_gcd(&a, k).unwrap(), prod.clone());
        }
    }

    #[test]
    fn cokernel_ignores_permutations_and_signs(a in matrix(), seed in any::<u64>()) {
        let mut rows = a.to_rows();
        let r = rows.len();
        rows.rotate_left(seed as usize % r);
        for (i, row) in rows.iter_mut().enumerate() {
            if (seed >> i) & 1 == 1 {
                for x in row.iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
        }
        let mut b = IntMatrix::from_rows(rows).unwrap().transpose().to_rows();
        let c = b.len();
        b.rotate_right((seed >> 8) as usize % c);
        let b = IntMatrix::from_rows(b).unwrap().transpose();
        prop_assert_eq!(cokernel(&a), cokernel(&b));
    }

    #[test]
    fn kernel_basis_spans_kernel(a in matrix()) {
        let rank = a.rank();
        match kernel_basis(&a) {
            None => prop_assert_eq!(rank, a.cols()),
            Some(k) => {
                prop_assert_eq!(k.cols(), a.cols() - rank);
                prop_assert!(a.mul(&k).is_zero());
                // saturated: the basis extends to a basis of Z^cols
                prop_assert!(momentcone_core::linalg::is_direct_summand(&k.transpose()));
            }
        }
    }

    #[test]
    fn rays_satisfy_all_inequalities(c in generated_cone()) {
        for r in c.rays() {
            prop_assert!(content(&r.generator).is_one());
            for (j, mu) in c.normals().iter().enumerate() {
                let p = momentcone_core::linalg::dot(&r.generator, mu);
                prop_assert!(!p.is_negative());
                prop_assert_eq!(p.is_zero(), r.active.contains(j));
            }
        }
    }

    #[test]
    fn faces_match_subset_scan(c in generated_cone()) {
        let faces: BTreeSet<FacetSet> = c.lattice().faces().iter().map(|f| f.active.clone()).collect();
        prop_assert_eq!(faces.len(), c.lattice().faces().len());
        prop_assert_eq!(faces, brute_force_faces(&c).unwrap());
        prop_assert_eq!(c.lattice().facets().count(), c.num_normals());
    }

    #[test]
    fn arrangement_is_upward_closed(c in generated_cone()) {
        let a = arrangement(&c).unwrap();
        let scanned = brute_force_arrangement(&c).unwrap();
        prop_assert_eq!(a.minimal_members(), scanned.as_slice());
        for m in a.minimal_members() {
            prop_assert!(m.len() >= 2);
            prop_assert!(a.contains(m));
            for j in 0..c.num_normals() {
                let mut sup = m.clone();
                sup.insert(j);
                prop_assert!(a.contains(&sup));
            }
        }
    }

    #[test]
    fn validation_is_idempotent_and_scale_invariant(c in generated_cone(), scales in prop::collection::vec(1i64..=4, 16)) {
        let again = validate(c.spec());
        prop_assert!(again.ok());
        prop_assert!(again.normalized.is_empty());
        prop_assert_eq!(&again.spec, c.spec());

        let scaled: Vec<Vec<BigInt>> = c.normals().iter().zip(&scales)
            .map(|(mu, &k)| mu.iter().map(|x| x * k).collect())
            .collect();
        let r = validate(&ConeSpec::new(None, c.dim(), scaled).unwrap());
        prop_assert!(r.ok());
        prop_assert_eq!(&r.spec, c.spec());
    }

    #[test]
    fn reeb_vector_is_positive(c in generated_cone()) {
        let x = reeb_vector(&c).unwrap();
        for r in c.rays() {
            prop_assert!(momentcone_core::linalg::dot(&r.generator, &x.0).is_positive());
        }
    }

    #[test]
    fn unimodular_change_preserves_everything(c in generated_cone(), ops in elementary_ops(), rot in 0usize..8) {
        let n = c.dim();
        let u = unimodular(n, &ops);
        let mut perm: Vec<usize> = (0..c.num_normals()).collect();
        perm.rotate_left(rot % c.num_normals());
        let moved = Cone::new(&transform(c.spec(), &u, &perm)).unwrap();
        prop_assert_eq!(moved.lattice().faces().len(), c.lattice().faces().len());
        prop_assert_eq!(moved.lattice().facets().count(), c.lattice().facets().count());
        prop_assert_eq!(check_good(&moved).good(), check_good(&c).good());
        prop_assert_eq!(cokernel(&moved.normal_matrix()), cokernel(&c.normal_matrix()));
    }

    #[test]
    fn witnesses_round_trip(c in generated_cone()) {
        let kernel = kernel_basis(&c.normal_matrix());
        for face in c.lattice().faces().iter().filter(|f| !f.is_zero()) {
            let w = witness_for_face(&c, face).unwrap();
            let zeros: FacetSet = w.m.iter().enumerate().filter(|(_, x)| x.is_zero()).map(|(j, _)| j).collect();
            prop_assert_eq!(&zeros, &face.active);
            if let Some(k) = &kernel {
                for col in 0..k.cols() {
                    let p: BigRational = w.m.iter().zip(k.column(col))
                        .map(|(x, kj)| x * BigRational::from_integer(kj))
                        .sum();
                    prop_assert!(p.is_zero());
                }
            }
            match membership_check(&c, &w.m).unwrap() {
                Membership::Face { face: back, .. } => prop_assert_eq!(&back, face),
                other => prop_assert!(false, "round trip rejected: {:?}", other),
            }
        }
    }

    #[test]
    fn points_outside_the_cone_are_rejected(c in generated_cone(), eta in prop::collection::vec(-5i64..=5, 4)) {
        let eta: Vec<BigInt> = eta[..c.dim()].iter().map(|&x| BigInt::from(x)).collect();
        let m: Vec<BigRational> = c.normals().iter()
            .map(|mu| BigRational::from_integer(momentcone_core::linalg::dot(&eta, mu)))
            .collect();
        if m.iter().any(Signed::is_negative) {
            let rejected = matches!(membership_check(&c, &m).unwrap(), Membership::Rejected(_));
            prop_assert!(rejected);
        } else if eta.iter().any(|x| !x.is_zero()) {
            let accepted = matches!(membership_check(&c, &m).unwrap(), Membership::Face { .. });
            prop_assert!(accepted);
        }
    }
}

#[test]
fn golden_cones_have_expected_invariants() {
    for c in golden_cones() {
        let r = consistency_check(&c).unwrap();
        assert_eq!(r.pi1.order(), Some(r.oracle_order.clone()));
        assert_eq!(r.pi2_rank, c.num_normals() - c.dim());
    }
}
