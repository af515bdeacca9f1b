//! Finite groups of order at most 6 as regular permutation representations,
//! and the lattices built from them.
#![allow(dead_code)]

use gmtheta_core::linalg::{IntLattice, IntMatrix, LatticeWithAction};

/// `(name, multiplication table)` for every group of order `1..=6`.
pub fn small_groups() -> Vec<(String, Vec<Vec<usize>>)> {
    let mut out = Vec::new();
    for n in 1..=6 {
        let t = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        out.push((format!("Z/{n}"), t));
    }
    out.push(("Z/2 x Z/2".into(), (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()));
    // S3 as permutations of 0..3, composed as (p q)(i) = p(q(i))
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let t = perms
        .iter()
        .map(|p| perms.iter().map(|q| idx([p[q[0]], p[q[1]], p[q[2]]])).collect())
        .collect();
    out.push(("S3".into(), t));
    out
}

/// Abelianization order of each group above.
pub fn abelianization_order(name: &str) -> u128 {
    match name {
        "S3" => 2,
        "Z/2 x Z/2" => 4,
        s => s.trim_start_matches("Z/").parse().unwrap(),
    }
}

/// Left-regular permutation matrices.
pub fn regular_matrices(table: &[Vec<usize>]) -> Vec<IntMatrix> {
    let n = table.len();
    table
        .iter()
        .map(|row| {
            let mut rows = vec![vec![0i64; n]; n];
            for (b, &ab) in row.iter().enumerate() {
                rows[ab][b] = 1;
            }
            IntMatrix::from_rows_i64(&rows)
        })
        .collect()
}

/// `Z[Γ]`.
pub fn induced(table: &[Vec<usize>]) -> LatticeWithAction {
    LatticeWithAction::standard(table.len(), regular_matrices(table)).unwrap()
}

/// `Z^r` with trivial action; the acting group is the image, which is trivial.
pub fn split(r: usize) -> LatticeWithAction {
    LatticeWithAction::standard(r, vec![IntMatrix::identity(r)]).unwrap()
}

/// The augmentation ideal of `Z[Γ]`: cocharacters of the norm-one torus.
/// Needs `|Γ| > 1`.
pub fn norm_one(table: &[Vec<usize>]) -> LatticeWithAction {
    let n = table.len();
    let vecs: Vec<Vec<i64>> = (1..n)
        .map(|g| {
            let mut v = vec![0i64; n];
            v[g] = 1;
            v[0] = -1;
            v
        })
        .collect();
    let lattice = IntLattice::from_vectors(n, &vecs).unwrap();
    LatticeWithAction::new(lattice, regular_matrices(table)).unwrap()
}
