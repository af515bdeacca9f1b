//! Integer lattices and finitely generated abelian quotients.

use std::fmt;

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{IntMatrix, RatMatrix};
use super::rational::{is_integer, Vector, Q};
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// A full-rank-in-its-span lattice, stored as integer basis columns in `Z^ambient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    basis: IntMatrix,
}

impl IntLattice {
    pub fn new(basis: IntMatrix) -> Result<Self> {
        if basis.to_rat().rank() != basis.cols() {
            return Err(Error::Invalid(
                "lattice basis columns are linearly dependent".into(),
            ));
        }
        Ok(IntLattice { basis })
    }

    /// Builds from a list of basis vectors.
    pub fn from_vectors(ambient: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::Invalid("basis vector of wrong length".into()));
        }
        let cols: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::new(IntMatrix::from_cols(ambient, &cols))
    }

    pub fn standard(n: usize) -> Self {
        IntLattice {
            basis: IntMatrix::identity(n),
        }
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        let r = self.basis.to_rat();
        (0..r.cols()).map(|j| r.col(j)).collect()
    }

    /// Coordinates of `v` in the basis, if `v` lies in the rational span.
    pub fn rational_coordinates(&self, v: &[Q]) -> Option<Vector> {
        self.basis.to_rat().solve(v)
    }

    /// Integer coordinates of `v`, if `v` is a lattice vector.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<BigInt>> {
        let c = self.rational_coordinates(v)?;
        c.iter()
            .all(is_integer)
            .then(|| c.iter().map(|x| x.numer().clone()).collect())
    }

    /// `|det|` of the basis in coordinates of `other`, i.e. the covolume of
    /// `self` measured by `other` (same span required).
    pub fn covolume_in(&self, other: &IntLattice) -> Result<Q> {
        if self.rank() != other.rank() {
            return Err(Error::InfiniteIndex("ranks differ".into()));
        }
        let mut cols = Vec::new();
        for v in self.basis_vectors() {
            cols.push(
                other.rational_coordinates(&v).ok_or_else(|| {
                    Error::Invalid("lattices do not span the same subspace".into())
                })?,
            );
        }
        Ok(RatMatrix::from_cols(other.rank(), &cols).det().abs())
    }
}

/// `Z/d_1 x ... x Z/d_r` with `d_1 | d_2 | ... | d_r`, every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_orders(&[n])
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Normalizes an arbitrary product of cyclic groups `Z/n_1 x ... x Z/n_k`.
    pub fn from_orders(orders: &[u64]) -> Self {
        let k = orders.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, &n) in orders.iter().enumerate() {
            m[(i, i)] = BigInt::from(n);
        }
        let diag = smith_normal_form(&m).diagonal();
        Self::from_diagonal(&diag).expect("finite orders give a finite group")
    }

    /// Interprets a Smith diagonal as `Z/d_1 x ...`; zero entries mean a free
    /// summand and are rejected.
    pub fn from_diagonal(diag: &[BigInt]) -> Result<Self> {
        let mut inv = Vec::new();
        for d in diag {
            if d.is_zero() {
                return Err(Error::InfiniteIndex("quotient has a free summand".into()));
            }
            let d = d.abs();
            if !d.is_one() {
                inv.push(
                    d.to_u64()
                        .ok_or_else(|| Error::Invalid("invariant factor overflow".into()))?,
                );
            }
        }
        Ok(FiniteAbelianGroup {
            invariant_factors: inv,
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let all: Vec<u64> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .copied()
            .collect();
        Self::from_orders(&all)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Invariant factors of `sup / sub`.
pub fn quotient_group(sup: &IntLattice, sub: &IntLattice) -> Result<FiniteAbelianGroup> {
    if sup.ambient() != sub.ambient() {
        return Err(Error::Invalid(
            "lattices live in different ambient spaces".into(),
        ));
    }
    if sup.rank() != sub.rank() {
        return Err(Error::InfiniteIndex(format!(
            "rank {} sublattice of a rank {} lattice",
            sub.rank(),
            sup.rank()
        )));
    }
    let mut cols = Vec::new();
    for v in sub.basis_vectors() {
        let c = sup
            .coordinates(&v)
            .ok_or_else(|| Error::NotSublattice("a basis vector of sub is not in sup".into()))?;
        cols.push(c);
    }
    let coords = IntMatrix::from_cols(sup.rank(), &cols);
    FiniteAbelianGroup::from_diagonal(&smith_normal_form(&coords).diagonal())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_examples() {
        let z2 = IntLattice::standard(2);
        let two = IntLattice::from_vectors(2, &[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(
            quotient_group(&z2, &two).unwrap(),
            FiniteAbelianGroup::from_orders(&[2, 2])
        );
        assert_eq!(quotient_group(&z2, &two).unwrap().to_string(), "Z/2 x Z/2");

        let z = IntLattice::standard(1);
        let six = IntLattice::from_vectors(1, &[vec![6]]).unwrap();
        assert_eq!(quotient_group(&z, &six).unwrap().to_string(), "Z/6");

        // |det [[1,1],[1,-1]]| = 2
        let diag = IntLattice::from_vectors(2, &[vec![1, 1], vec![1, -1]]).unwrap();
        assert_eq!(
            quotient_group(&z2, &diag).unwrap(),
            FiniteAbelianGroup::cyclic(2)
        );
    }

    #[test]
    fn infinite_index_is_rejected() {
        let z2 = IntLattice::standard(2);
        let line = IntLattice::from_vectors(2, &[vec![1, 0]]).unwrap();
        assert!(matches!(
            quotient_group(&z2, &line),
            Err(Error::InfiniteIndex(_))
        ));
    }

    #[test]
    fn non_sublattice_is_rejected() {
        let two = IntLattice::from_vectors(1, &[vec![2]]).unwrap();
        let z = IntLattice::standard(1);
        assert!(matches!(
            quotient_group(&two, &z),
            Err(Error::NotSublattice(_))
        ));
    }

    #[test]
    fn normalization_of_orders() {
        assert_eq!(FiniteAbelianGroup::from_orders(&[2, 3]).to_string(), "Z/6");
        assert_eq!(
            FiniteAbelianGroup::from_orders(&[4, 2]).to_string(),
            "Z/2 x Z/4"
        );
        assert!(FiniteAbelianGroup::from_orders(&[1, 1]).is_trivial());
    }
}
