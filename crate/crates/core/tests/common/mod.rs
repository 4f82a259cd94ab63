#![allow(dead_code)]

use momentcone_core::{extreme_rays, BigInt, Cone, ConeSpec, IntMatrix};

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn spec(n: usize, normals: &[Vec<i64>]) -> ConeSpec {
    let refs: Vec<&[i64]> = normals.iter().map(Vec::as_slice).collect();
    ConeSpec::from_i64(n, &refs).unwrap()
}

pub fn standard(n: usize) -> Cone {
    let normals: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    Cone::new(&spec(n, &normals)).unwrap()
}

pub fn lens(p: i64) -> Cone {
    Cone::new(&spec(2, &[vec![1, 0], vec![1, p]])).unwrap()
}

pub fn square() -> Cone {
    Cone::new(&spec(
        3,
        &[vec![1, 0, 1], vec![-1, 0, 1], vec![0, 1, 1], vec![0, -1, 1]],
    ))
    .unwrap()
}

pub fn golden_cones() -> Vec<Cone> {
    let mut v: Vec<Cone> = (2..=6).map(standard).collect();
    v.extend((2..=12).map(lens));
    v.push(square());
    v
}

/// Facet normals of the cone generated by `generators`: the extreme rays of
/// `{μ : ⟨v, μ⟩ ≥ 0 for all generators v}`.
pub fn cone_from_generators(n: usize, generators: &[Vec<i64>]) -> Option<ConeSpec> {
    let dual = spec(n, generators);
    let normals: Vec<Vec<BigInt>> = extreme_rays(&dual).into_iter().map(|r| r.generator).collect();
    if normals.is_empty() {
        return None;
    }
    ConeSpec::new(None, n, normals).ok()
}

/// Product of elementary operations; each op is (i, j, k, swap?).
pub fn unimodular(n: usize, ops: &[(usize, usize, i64, bool)]) -> IntMatrix {
    let mut rows = IntMatrix::identity(n).unwrap().to_rows();
    for &(i, j, k, swap) in ops {
        let (i, j) = (i % n, j % n);
        if swap {
            rows.swap(i, j);
        } else if i != j {
            let src = rows[j].clone();
            for (x, y) in rows[i].iter_mut().zip(&src) {
                *x += y * BigInt::from(k);
            }
        } else {
            for x in rows[i].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }
    IntMatrix::from_rows(rows).unwrap()
}

pub fn transform(spec: &ConeSpec, u: &IntMatrix, perm: &[usize]) -> ConeSpec {
    let normals: Vec<Vec<BigInt>> = perm.iter().map(|&i| u.apply(&spec.normals()[i])).collect();
    ConeSpec::new(None, spec.dim(), normals).unwrap()
}
