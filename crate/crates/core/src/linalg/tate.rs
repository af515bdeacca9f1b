//! Tate cohomology `H^-1` of a lattice with a finite group action.

use std::collections::HashSet;

use num::bigint::BigInt;
use num::{One, Signed};
use serde::{Deserialize, Serialize};

use super::lattice::{FiniteAbelianGroup, IntLattice};
use super::matrix::{IntMatrix, RatMatrix};
use super::rational::qi;
use super::snf::{integer_kernel, smith_normal_form};
use crate::error::{Error, Result};

/// A lattice together with a finite group of automorphisms.
///
/// Matrices act on the ambient space; the constructor converts them to
/// lattice coordinates and checks that they form a group preserving it.
#[derive(Clone, Debug)]
pub struct LatticeWithAction {
    lattice: IntLattice,
    elements: Vec<IntMatrix>,
    coords: Vec<IntMatrix>,
}

impl LatticeWithAction {
    pub fn new(lattice: IntLattice, elements: Vec<IntMatrix>) -> Result<Self> {
        let n = lattice.ambient();
        let r = lattice.rank();
        if elements.is_empty() {
            return Err(Error::Invalid("empty group".into()));
        }
        let b = lattice.basis().to_rat();
        let mut coords = Vec::with_capacity(elements.len());
        for (k, g) in elements.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(Error::Invalid(format!("action matrix {k} is not {n}x{n}")));
            }
            let gb = &g.to_rat() * &b;
            let mut cols = Vec::with_capacity(r);
            for j in 0..r {
                let c = lattice.coordinates(&gb.col(j)).ok_or_else(|| {
                    Error::Invalid(format!("action matrix {k} does not preserve the lattice"))
                })?;
                cols.push(c);
            }
            let c = IntMatrix::from_cols(r, &cols);
            if !c.det().abs().is_one() {
                return Err(Error::Invalid(format!(
                    "action matrix {k} is not invertible on the lattice"
                )));
            }
            coords.push(c);
        }
        let set: HashSet<&IntMatrix> = coords.iter().collect();
        if set.len() != coords.len() {
            return Err(Error::NotClosed("repeated group element".into()));
        }
        if !set.contains(&IntMatrix::identity(r)) {
            return Err(Error::NotClosed("identity is missing".into()));
        }
        for (i, a) in coords.iter().enumerate() {
            for (j, c) in coords.iter().enumerate() {
                if !set.contains(&(a * c)) {
                    return Err(Error::NotClosed(format!("product of elements {i} and {j}")));
                }
            }
        }
        Ok(LatticeWithAction {
            lattice,
            elements,
            coords,
        })
    }

    /// `Z^n` with the given action matrices.
    pub fn standard(n: usize, elements: Vec<IntMatrix>) -> Result<Self> {
        Self::new(IntLattice::standard(n), elements)
    }

    /// Permutation lattice `Z^n` where each group element is a permutation of `0..n`.
    pub fn permutation(perms: &[Vec<usize>]) -> Result<Self> {
        let n = perms.first().map_or(0, Vec::len);
        let mut mats = Vec::new();
        for p in perms {
            if p.len() != n {
                return Err(Error::Invalid("permutations of different degree".into()));
            }
            let mut m = IntMatrix::zeros(n, n);
            for (i, &pi) in p.iter().enumerate() {
                if pi >= n {
                    return Err(Error::Invalid(format!("{pi} out of range")));
                }
                m[(pi, i)] = BigInt::one();
            }
            mats.push(m);
        }
        Self::standard(n, mats)
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn group_order(&self) -> usize {
        self.coords.len()
    }

    /// Action matrices in lattice coordinates.
    pub fn coordinate_action(&self) -> &[IntMatrix] {
        &self.coords
    }

    /// Block sum `X1 + X2`; group elements are paired by position.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.group_order() != other.group_order() {
            return Err(Error::Invalid(
                "direct sum needs the same group on both sides".into(),
            ));
        }
        let (r1, r2) = (self.lattice.rank(), other.lattice.rank());
        let mats = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| {
                let mut m = IntMatrix::zeros(r1 + r2, r1 + r2);
                for i in 0..r1 {
                    for j in 0..r1 {
                        m[(i, j)] = a[(i, j)].clone();
                    }
                }
                for i in 0..r2 {
                    for j in 0..r2 {
                        m[(r1 + i, r1 + j)] = b[(i, j)].clone();
                    }
                }
                m
            })
            .collect();
        Self::standard(r1 + r2, mats)
    }
}

/// `ker(N) / I X` with `N` the norm and `I X` spanned by all `(g - 1) x`.
pub fn tate_h_minus1(x: &LatticeWithAction) -> Result<FiniteAbelianGroup> {
    let r = x.lattice.rank();
    let mut norm = IntMatrix::zeros(r, r);
    for g in &x.coords {
        for i in 0..r {
            for j in 0..r {
                norm[(i, j)] += &g[(i, j)];
            }
        }
    }
    let kernel = integer_kernel(&norm);
    let k = kernel.len();
    if k == 0 {
        return Ok(FiniteAbelianGroup::trivial());
    }
    let kmat = IntMatrix::from_cols(r, &kernel).to_rat();

    let mut gens = Vec::new();
    for g in &x.coords {
        for j in 0..r {
            let v: Vec<_> = (0..r)
                .map(|i| {
                    let d = if i == j {
                        &g[(i, j)] - BigInt::one()
                    } else {
                        g[(i, j)].clone()
                    };
                    qi(&d)
                })
                .collect();
            let c = kmat
                .solve(&v)
                .ok_or_else(|| Error::Inconsistent("(g - 1)x is not killed by the norm".into()))?;
            let c = RatMatrix::from_cols(k, &[c])
                .to_int()
                .ok_or_else(|| Error::Inconsistent("kernel basis is not saturated".into()))?;
            gens.push(c.col(0));
        }
    }
    let coords = IntMatrix::from_cols(k, &gens);
    let diag = smith_normal_form(&coords).diagonal();
    if diag.len() < k {
        return Err(Error::Inconsistent(
            "augmentation image has infinite index".into(),
        ));
    }
    FiniteAbelianGroup::from_diagonal(&diag)
        .map_err(|_| Error::Inconsistent("augmentation image has infinite index".into()))
}

/// `H^1(F, T)` for a torus with cocharacter lattice `x`, via Tate–Nakayama.
pub fn torus_h1(x: &LatticeWithAction) -> Result<FiniteAbelianGroup> {
    tate_h_minus1(x)
}

/// JSON form: `{"ambient_rank": n, "basis": [[..], ..], "action": [[[..], ..], ..]}`.
///
/// `basis` lists lattice vectors and defaults to the standard basis; each
/// action matrix is given row by row in ambient coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeFixture {
    pub ambient_rank: usize,
    #[serde(default)]
    pub basis: Option<Vec<Vec<i64>>>,
    pub action: Vec<Vec<Vec<i64>>>,
}

impl LatticeFixture {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn build(&self) -> Result<LatticeWithAction> {
        let n = self.ambient_rank;
        let lattice = match &self.basis {
            Some(b) => IntLattice::from_vectors(n, b)?,
            None => IntLattice::standard(n),
        };
        let mut mats = Vec::new();
        for (k, m) in self.action.iter().enumerate() {
            if m.len() != n || m.iter().any(|row| row.len() != n) {
                return Err(Error::Fixture(format!("action matrix {k} is not {n}x{n}")));
            }
            mats.push(IntMatrix::from_rows_i64(m));
        }
        LatticeWithAction::new(lattice, mats)
    }
}
