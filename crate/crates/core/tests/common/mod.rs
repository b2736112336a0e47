//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use commalg::field::Scalar;
use commalg::linalg::Matrix;
use commalg::Quiver;

/// Reflexive-transitive closure of the arrow relation by Warshall's algorithm.
pub fn warshall(q: &Quiver) -> Vec<Vec<bool>> {
    let n = q.vertex_count();
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for a in q.arrows() {
        r[a.source.0][a.target.0] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Adjacency matrix with arrow multiplicities.
pub fn adjacency(q: &Quiver) -> Vec<Vec<u128>> {
    let n = q.vertex_count();
    let mut m = vec![vec![0u128; n]; n];
    for a in q.arrows() {
        m[a.source.0][a.target.0] += 1;
    }
    m
}

/// Number of paths of length at most `len` between every pair, from powers
/// of the adjacency matrix.
pub fn walk_counts(q: &Quiver, len: usize) -> Vec<Vec<u128>> {
    let n = q.vertex_count();
    let adj = adjacency(q);
    let mut power: Vec<Vec<u128>> = (0..n).map(|i| (0..n).map(|j| u128::from(i == j)).collect()).collect();
    let mut total = power.clone();
    for _ in 0..len {
        let mut next = vec![vec![0u128; n]; n];
        for i in 0..n {
            for k in 0..n {
                if power[i][k] == 0 {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += power[i][k] * adj[k][j];
                }
            }
        }
        power = next;
        for i in 0..n {
            for j in 0..n {
                total[i][j] += power[i][j];
            }
        }
    }
    total
}

pub fn to_rationals(m: &Matrix) -> Vec<Vec<BigRational>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| match m.get(i, j) {
                    Scalar::Rat(q) => q.clone(),
                    Scalar::Mod { value, .. } => BigRational::from_integer(BigInt::from(*value)),
                })
                .collect()
        })
        .collect()
}

/// Rank over the rationals by Gauss-Jordan elimination.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let factor = &a[i][c] / &pivot;
                for j in c..cols {
                    let delta = &factor * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>], inner: usize, cols: usize) -> Vec<Vec<BigRational>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn is_zero_matrix(m: &[Vec<BigRational>]) -> bool {
    m.iter().all(|r| r.iter().all(Zero::is_zero))
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn one() -> BigRational {
    BigRational::one()
}

/// `n`-cycle `v1 -> v2 -> ... -> vn -> v1`.
pub fn cycle(n: usize) -> Quiver {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Quiver::from_index_edges("Cycle", n, &edges)
}

/// Two vertices joined by `n` parallel arrows.
pub fn kronecker(n: usize) -> Quiver {
    Quiver::from_index_edges("Kronecker", 2, &vec![(0, 1); n])
}

pub fn fixture(name: &str) -> Quiver {
    let path = format!("{}/quivers/{name}.quiver", env!("CARGO_MANIFEST_DIR"));
    let src = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    commalg::parse_quiver(&src).unwrap_or_else(|e| panic!("{path}: {e}"))
}
