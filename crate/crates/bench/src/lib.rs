//! Fixture cones for the benchmarks.

use momentcone_core::{BigInt, ConeSpec, IntMatrix};

fn spec(n: usize, normals: Vec<Vec<i64>>) -> ConeSpec {
    let normals = normals
        .into_iter()
        .map(|v| v.into_iter().map(BigInt::from).collect())
        .collect();
    ConeSpec::new(None, n, normals).expect("fixture shapes are consistent")
}

pub fn standard(n: usize) -> ConeSpec {
    spec(n, (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect())
}

pub fn square() -> ConeSpec {
    spec(3, vec![vec![1, 0, 1], vec![-1, 0, 1], vec![0, 1, 1], vec![0, -1, 1]])
}

/// Cone over the hexagon with vertices the six primitive directions
/// of the A2 fan: n = 3, N = 6.
pub fn hexagon() -> ConeSpec {
    let dirs = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)];
    spec(3, dirs.iter().map(|&(a, b)| vec![a, b, 1]).collect())
}

/// Product of two square cones: n = 6, N = 8. Not good, since each factor
/// contributes its non-simple apex.
pub fn square_product() -> ConeSpec {
    let sq = [[1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1]];
    let mut normals = Vec::new();
    for r in sq {
        normals.push([r.to_vec(), vec![0; 3]].concat());
    }
    for r in sq {
        normals.push([vec![0; 3], r.to_vec()].concat());
    }
    spec(6, normals)
}

/// Deterministic dense matrix with entries in -10..=10.
pub fn dense_matrix(rows: usize, cols: usize) -> IntMatrix {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((state >> 33) % 21) as i64 - 10
                })
                .collect()
        })
        .collect();
    IntMatrix::from_i64_rows(&data).expect("rectangular")
}
