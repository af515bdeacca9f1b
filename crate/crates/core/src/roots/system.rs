//! Restricted root systems, possibly non-reduced.
//!
//! The ambient space is `Q^r`. Roots are covectors, coroots are vectors and
//! the pairing is the dot product. Built-in systems use the basis of simple
//! coroots, so `α_i^∨ = e_i` and `α_i` is row `i` of the Cartan matrix.

use std::cmp::Reverse;
use std::collections::HashMap;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::rational::{dot, fmt_vec, is_integer, q, qf, scale, sub, to_i64, Vector, Q};
use crate::linalg::{IntLattice, RatMatrix};

pub const BUILTIN_NAMES: [&str; 8] = ["A1", "A2", "A3", "B2", "C2", "G2", "BC1", "BC2"];

#[derive(Clone, Debug)]
pub struct RestrictedRootSystem {
    name: String,
    dim: usize,
    roots: Vec<Vector>,
    coroots: Vec<Vector>,
    coeffs: Vec<Vec<i64>>,
    n_simple: usize,
    n_positive: usize,
    lattice: IntLattice,
    index: HashMap<Vector, usize>,
}

impl RestrictedRootSystem {
    /// Validates and canonicalizes raw data.
    ///
    /// `simple` lists indices into `roots`. Roots are reordered: positive roots
    /// by height, then the negatives in the same order, so simple root `i`
    /// ends up at index `i` and `-roots[k]` at `k + n_positive`.
    pub fn new(
        name: &str,
        roots: Vec<Vector>,
        coroots: Vec<Vector>,
        simple: &[usize],
        lattice: IntLattice,
    ) -> Result<Self> {
        let dim = lattice.ambient();
        if roots.len() != coroots.len() {
            return Err(Error::RootAxiom(
                "roots and coroots differ in number".into(),
            ));
        }
        if roots.iter().chain(&coroots).any(|v| v.len() != dim) {
            return Err(Error::RootAxiom(format!("vectors must have length {dim}")));
        }
        if lattice.rank() != dim {
            return Err(Error::RootAxiom(
                "normalization lattice must have full rank".into(),
            ));
        }
        let mut index = HashMap::new();
        for (i, r) in roots.iter().enumerate() {
            if r.iter().all(Zero::is_zero) {
                return Err(Error::RootAxiom(format!("root {i} is zero")));
            }
            if index.insert(r.clone(), i).is_some() {
                return Err(Error::RootAxiom(format!(
                    "root {} listed twice",
                    fmt_vec(r)
                )));
            }
        }
        if simple.iter().any(|&s| s >= roots.len()) {
            return Err(Error::RootAxiom("simple root index out of range".into()));
        }
        let simple_rows: Vec<Vector> = simple.iter().map(|&s| roots[s].clone()).collect();
        let sm = RatMatrix::from_rows(&simple_rows);
        if simple.len() != dim || sm.rank() != dim {
            return Err(Error::RootAxiom(
                "simple roots must form a basis of the dual space".into(),
            ));
        }
        for (a, av) in roots.iter().zip(&coroots) {
            if dot(a, av) != q(2) {
                return Err(Error::RootAxiom(format!(
                    "<{}, {}> != 2",
                    fmt_vec(a),
                    fmt_vec(av)
                )));
            }
        }
        // closure under every reflection, compatibly on coroots
        for (b, bv) in roots.iter().zip(&coroots) {
            for (a, av) in roots.iter().zip(&coroots) {
                let ra = sub(a, &scale(&dot(a, bv), b));
                let rav = sub(av, &scale(&dot(b, av), bv));
                match index.get(&ra) {
                    Some(&k) if coroots[k] == rav => {}
                    Some(_) => {
                        return Err(Error::RootAxiom(format!(
                            "coroot of s_{}({}) is not the reflected coroot",
                            fmt_vec(b),
                            fmt_vec(a)
                        )))
                    }
                    None => {
                        return Err(Error::RootAxiom(format!(
                            "s_{}({}) = {} is not a root",
                            fmt_vec(b),
                            fmt_vec(a),
                            fmt_vec(&ra)
                        )))
                    }
                }
            }
        }
        // non-reduced rule
        for (a, av) in roots.iter().zip(&coroots) {
            let double = scale(&q(2), a);
            if let Some(&k) = index.get(&double) {
                if coroots[k] != scale(&qf(1, 2), av) {
                    return Err(Error::RootAxiom(format!(
                        "coroot of 2{} must be half the coroot of {}",
                        fmt_vec(a),
                        fmt_vec(a)
                    )));
                }
            }
        }
        // integral coefficients of one sign
        let smt = sm.transpose();
        let mut coeffs = Vec::with_capacity(roots.len());
        for a in &roots {
            let c = smt.solve(a).expect("simple roots span");
            if !c.iter().all(is_integer) {
                return Err(Error::RootAxiom(format!(
                    "{} is not an integral combination of simple roots",
                    fmt_vec(a)
                )));
            }
            let c: Vec<i64> = c.iter().map(|x| to_i64(x).expect("small")).collect();
            if c.iter().any(|&x| x > 0) && c.iter().any(|&x| x < 0) {
                return Err(Error::RootAxiom(format!(
                    "{} has coefficients of both signs",
                    fmt_vec(a)
                )));
            }
            coeffs.push(c);
        }

        let mut pos: Vec<usize> = (0..roots.len())
            .filter(|&i| coeffs[i].iter().any(|&x| x > 0))
            .collect();
        pos.sort_by_key(|&i| (coeffs[i].iter().sum::<i64>(), Reverse(coeffs[i].clone())));
        let mut order = pos.clone();
        for &i in &pos {
            let neg: Vector = roots[i].iter().map(|x| -x).collect();
            order.push(index[&neg]);
        }
        let n_positive = pos.len();
        let roots: Vec<Vector> = order.iter().map(|&i| roots[i].clone()).collect();
        let coroots: Vec<Vector> = order.iter().map(|&i| coroots[i].clone()).collect();
        let coeffs: Vec<Vec<i64>> = order.iter().map(|&i| coeffs[i].clone()).collect();
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        Ok(RestrictedRootSystem {
            name: name.to_string(),
            dim,
            roots,
            coroots,
            coeffs,
            n_simple: dim,
            n_positive,
            lattice,
            index,
        })
    }

    /// Reduced system generated by a Cartan matrix `c[i][j] = <α_i, α_j^∨>`,
    /// with the coroot lattice as normalization lattice.
    pub fn from_cartan(name: &str, cartan: &[Vec<i64>]) -> Result<Self> {
        let (roots, coroots) = reflection_closure(cartan)?;
        let r = cartan.len();
        Self::new(
            name,
            roots,
            coroots,
            &(0..r).collect::<Vec<_>>(),
            IntLattice::standard(r),
        )
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let cartan: Vec<Vec<i64>> = match name {
            "A1" | "BC1" => vec![vec![2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            "B2" | "BC2" => vec![vec![2, -2], vec![-1, 2]],
            "C2" => vec![vec![2, -1], vec![-2, 2]],
            "G2" => vec![vec![2, -1], vec![-3, 2]],
            _ => return Err(Error::UnknownSystem(name.to_string())),
        };
        let (mut roots, mut coroots) = reflection_closure(&cartan)?;
        if name.starts_with("BC") {
            // double the roots in the orbit of the last (short) simple root
            let short: Vec<usize> = (0..roots.len())
                .filter(|&i| in_orbit_of_last(&cartan, &coroots[i]))
                .collect();
            for i in short {
                roots.push(scale(&q(2), &roots[i]));
                coroots.push(scale(&qf(1, 2), &coroots[i]));
            }
        }
        let r = cartan.len();
        Self::new(
            name,
            roots,
            coroots,
            &(0..r).collect::<Vec<_>>(),
            IntLattice::standard(r),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.n_simple
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vector] {
        &self.coroots
    }

    pub fn root(&self, i: usize) -> &Vector {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &Vector {
        &self.coroots[i]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_positive
    }

    /// Simple roots are indices `0..rank()`.
    pub fn simple_roots(&self) -> Vec<&Vector> {
        self.roots[..self.n_simple].iter().collect()
    }

    /// Coefficients of root `i` in the simple roots.
    pub fn coefficients(&self, i: usize) -> &[i64] {
        &self.coeffs[i]
    }

    pub fn index_of(&self, root: &[Q]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_reduced_root(&self, i: usize) -> bool {
        self.index_of(&scale(&qf(1, 2), &self.roots[i])).is_none()
    }

    pub fn is_reduced(&self) -> bool {
        (0..self.roots.len()).all(|i| self.index_of(&scale(&q(2), &self.roots[i])).is_none())
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }

    /// Reflection `s_i` on vectors: `x - <α_i, x> α_i^∨`.
    pub fn reflect_vector(&self, i: usize, x: &[Q]) -> Vector {
        sub(x, &scale(&dot(&self.roots[i], x), &self.coroots[i]))
    }

    /// Reflection `s_i` on covectors: `λ - <λ, α_i^∨> α_i`.
    pub fn reflect_covector(&self, i: usize, l: &[Q]) -> Vector {
        sub(l, &scale(&dot(l, &self.coroots[i]), &self.roots[i]))
    }

    /// Matrix of `s_i` acting on vectors.
    pub fn reflection_matrix(&self, i: usize) -> RatMatrix {
        let n = self.dim;
        let mut m = RatMatrix::identity(n);
        for r in 0..n {
            for c in 0..n {
                let v = &m[(r, c)] - &self.coroots[i][r] * &self.roots[i][c];
                m[(r, c)] = v;
            }
        }
        m
    }

    /// Positive roots `α` with `α/2` not a root, in root order.
    pub fn hyperplanes(&self) -> Vec<usize> {
        (0..self.n_positive)
            .filter(|&i| self.is_reduced_root(i))
            .collect()
    }

    pub fn to_fixture(&self) -> SystemFixture {
        let strs = |v: &Vector| {
            v.iter()
                .map(|x| serde_json::Value::String(crate::linalg::fmt_q(x)))
                .collect()
        };
        let b = self.lattice.basis();
        SystemFixture {
            name: Some(self.name.clone()),
            ambient_dim: self.dim,
            roots: self.roots.iter().map(strs).collect(),
            coroots: self.coroots.iter().map(strs).collect(),
            simple: (0..self.n_simple).collect(),
            lattice: Some(
                (0..b.cols())
                    .map(|j| {
                        b.col(j)
                            .iter()
                            .map(|x| x.to_string().parse().unwrap())
                            .collect()
                    })
                    .collect(),
            ),
        }
    }
}

fn in_orbit_of_last(cartan: &[Vec<i64>], v: &[Q]) -> bool {
    let r = cartan.len();
    let mut start = vec![Q::zero(); r];
    start[r - 1] = Q::one();
    let refl = |i: usize, x: &[Q]| -> Vector {
        let a: Vector = cartan[i].iter().map(|&c| q(c)).collect();
        let mut e = vec![Q::zero(); r];
        e[i] = Q::one();
        sub(x, &scale(&dot(&a, x), &e))
    };
    let mut seen = vec![start.clone()];
    let mut k = 0;
    while k < seen.len() {
        for i in 0..r {
            let y = refl(i, &seen[k]);
            if !seen.contains(&y) {
                seen.push(y);
            }
        }
        k += 1;
    }
    seen.iter().any(|s| s.as_slice() == v)
}

/// Orbit of the simple pairs `(α_i, e_i)` under the simple reflections.
fn reflection_closure(cartan: &[Vec<i64>]) -> Result<(Vec<Vector>, Vec<Vector>)> {
    let r = cartan.len();
    if cartan.iter().any(|row| row.len() != r) {
        return Err(Error::RootAxiom("Cartan matrix is not square".into()));
    }
    let simple: Vec<Vector> = cartan
        .iter()
        .map(|row| row.iter().map(|&c| q(c)).collect())
        .collect();
    let basis: Vec<Vector> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect();
    let mut roots: Vec<Vector> = simple.clone();
    let mut coroots: Vec<Vector> = basis.clone();
    let mut seen: HashMap<Vector, usize> = roots
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let mut k = 0;
    while k < roots.len() {
        for i in 0..r {
            let a = sub(&roots[k], &scale(&roots[k][i], &simple[i]));
            let av = sub(
                &coroots[k],
                &scale(&dot(&simple[i], &coroots[k]), &basis[i]),
            );
            if !seen.contains_key(&a) {
                if roots.len() > 1000 {
                    return Err(Error::RootAxiom(
                        "Cartan matrix generates an infinite system".into(),
                    ));
                }
                seen.insert(a.clone(), roots.len());
                roots.push(a);
                coroots.push(av);
            }
        }
        k += 1;
    }
    Ok((roots, coroots))
}

/// JSON form of a root system. Scalars may be numbers or `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemFixture {
    #[serde(default)]
    pub name: Option<String>,
    pub ambient_dim: usize,
    pub roots: Vec<Vec<serde_json::Value>>,
    pub coroots: Vec<Vec<serde_json::Value>>,
    pub simple: Vec<usize>,
    #[serde(default)]
    pub lattice: Option<Vec<Vec<i64>>>,
}

impl SystemFixture {
    pub fn build(&self) -> Result<RestrictedRootSystem> {
        let parse = |rows: &[Vec<serde_json::Value>]| -> Result<Vec<Vector>> {
            rows.iter()
                .map(|r| crate::fixtures::parse_vector(r))
                .collect()
        };
        let lattice = match &self.lattice {
            Some(b) => IntLattice::from_vectors(self.ambient_dim, b)?,
            None => IntLattice::standard(self.ambient_dim),
        };
        RestrictedRootSystem::new(
            self.name.as_deref().unwrap_or("fixture"),
            parse(&self.roots)?,
            parse(&self.coroots)?,
            &self.simple,
            lattice,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (name, n) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 12),
            ("B2", 8),
            ("C2", 8),
            ("G2", 12),
            ("BC1", 4),
            ("BC2", 12),
        ] {
            let s = RestrictedRootSystem::builtin(name).unwrap();
            assert_eq!(s.num_roots(), n, "{name}");
            assert_eq!(s.num_positive() * 2, n);
        }
    }

    #[test]
    fn simple_roots_come_first() {
        let s = RestrictedRootSystem::builtin("A3").unwrap();
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 1;
            assert_eq!(s.coefficients(i), e.as_slice());
        }
        assert_eq!(s.coefficients(5), &[1, 1, 1]);
        assert_eq!(s.coefficients(6), &[-1, 0, 0]);
    }

    #[test]
    fn bc1_double_root_has_half_coroot() {
        let s = RestrictedRootSystem::builtin("BC1").unwrap();
        assert!(!s.is_reduced());
        let i = s.index_of(&[q(4)]).unwrap();
        assert_eq!(s.coroot(i), &vec![qf(1, 2)]);
        assert_eq!(s.coroot(0), &vec![q(1)]);
    }

    #[test]
    fn bc2_doubles_only_short_roots() {
        let s = RestrictedRootSystem::builtin("BC2").unwrap();
        let doubled: Vec<Vec<i64>> = (0..s.num_positive())
            .filter(|&i| !s.is_reduced_root(i))
            .map(|i| s.coefficients(i).to_vec())
            .collect();
        assert_eq!(doubled, vec![vec![0, 2], vec![2, 2]]);
        assert_eq!(s.hyperplanes().len(), 4);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            RestrictedRootSystem::builtin("E9"),
            Err(Error::UnknownSystem(_))
        ));
    }

    #[test]
    fn bad_pairing_is_reported() {
        let r = RestrictedRootSystem::new(
            "bad",
            vec![vec![q(1)], vec![q(-1)]],
            vec![vec![q(1)], vec![q(-1)]],
            &[0],
            IntLattice::standard(1),
        );
        assert!(matches!(r, Err(Error::RootAxiom(_))));
    }

    #[test]
    fn missing_reflection_is_reported() {
        // A2 with one root dropped
        let s = RestrictedRootSystem::builtin("A2").unwrap();
        let keep: Vec<usize> = (0..6).filter(|&i| i != 2).collect();
        let r = RestrictedRootSystem::new(
            "bad",
            keep.iter().map(|&i| s.root(i).clone()).collect(),
            keep.iter().map(|&i| s.coroot(i).clone()).collect(),
            &[0, 1],
            IntLattice::standard(2),
        );
        let msg = r.unwrap_err().to_string();
        assert!(msg.contains("is not a root"), "{msg}");
    }

    #[test]
    fn fixture_round_trip() {
        let s = RestrictedRootSystem::builtin("G2").unwrap();
        let json = serde_json::to_string(&s.to_fixture()).unwrap();
        let f: SystemFixture = serde_json::from_str(&json).unwrap();
        let t = f.build().unwrap();
        assert_eq!(t.roots(), s.roots());
        assert_eq!(t.coroots(), s.coroots());
    }
}
