//! Elementary abelian 2-groups `(Z/2)^m`, their subgroups, and virtual
//! characters.
//!
//! Elements and characters are both bit vectors (`u32`, bit `i` for
//! coordinate `i`), paired by `χ(e) = (-1)^{popcount(χ & e)}`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported rank.
pub const MAX_RANK: usize = 20;

pub fn pairing(chi: u32, e: u32) -> i64 {
    if (chi & e).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn check_rank(m: usize) -> Result<()> {
    if m > MAX_RANK {
        return Err(Error::Invalid(format!("rank {m} exceeds {MAX_RANK}")));
    }
    Ok(())
}

fn full_mask(m: usize) -> u32 {
    if m == 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

/// Parses a bit string such as `"0110"`; character `i` is coordinate `i`.
pub fn parse_bits(s: &str) -> Result<(u32, usize)> {
    let mut v = 0u32;
    for (i, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => v |= 1 << i,
            _ => return Err(Error::Invalid(format!("bad bit string {s:?}"))),
        }
    }
    check_rank(s.len())?;
    Ok((v, s.len()))
}

pub fn format_bits(v: u32, m: usize) -> String {
    (0..m)
        .map(|i| if v >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// A subgroup of `(Z/2)^m`, kept as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    m: usize,
    basis: Vec<u32>,
}

impl Subgroup {
    pub fn from_generators(m: usize, gens: &[u32]) -> Result<Self> {
        check_rank(m)?;
        let mut basis: Vec<u32> = Vec::new();
        for &g in gens {
            if g & !full_mask(m) != 0 {
                return Err(Error::Invalid(format!(
                    "generator {g:#b} has bits beyond rank {m}"
                )));
            }
            let mut v = g;
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        // fully reduce so the basis is canonical
        let mut reduced = basis.clone();
        for i in 0..reduced.len() {
            let lead = 31 - reduced[i].leading_zeros();
            for j in 0..reduced.len() {
                if j != i && reduced[j] >> lead & 1 == 1 {
                    reduced[j] ^= reduced[i];
                }
            }
        }
        reduced.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Subgroup { m, basis: reduced })
    }

    pub fn trivial(m: usize) -> Self {
        Subgroup {
            m,
            basis: Vec::new(),
        }
    }

    pub fn full(m: usize) -> Self {
        Self::coordinate(m, full_mask(m))
    }

    /// Elements supported on `mask`.
    pub fn coordinate(m: usize, mask: u32) -> Self {
        let gens: Vec<u32> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| 1 << i)
            .collect();
        Self::from_generators(m, &gens).expect("coordinate subgroup")
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> u64 {
        1u64 << self.basis.len()
    }

    pub fn elements(&self) -> Vec<u32> {
        let mut out = vec![0u32];
        for &b in &self.basis {
            let more: Vec<u32> = out.iter().map(|&x| x ^ b).collect();
            out.extend(more);
        }
        out.sort_unstable();
        out
    }

    pub fn contains(&self, e: u32) -> bool {
        let mut v = e;
        for &b in &self.basis {
            v = v.min(v ^ b);
        }
        v == 0
    }

    /// Characters trivial on the subgroup.
    pub fn annihilator(&self) -> Subgroup {
        let gens: Vec<u32> = (0..1u32 << self.m)
            .filter(|&c| self.basis.iter().all(|&b| pairing(c, b) == 1))
            .collect();
        Subgroup::from_generators(self.m, &gens).expect("same rank")
    }

    pub fn sum(&self, other: &Subgroup) -> Subgroup {
        let gens: Vec<u32> = self.basis.iter().chain(&other.basis).copied().collect();
        Subgroup::from_generators(self.m, &gens).expect("same rank")
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let gens: Vec<u32> = self
            .elements()
            .into_iter()
            .filter(|&e| other.contains(e))
            .collect();
        Subgroup::from_generators(self.m, &gens).expect("same rank")
    }

    /// Image under the coordinate projection onto `mask`.
    pub fn project(&self, mask: u32) -> Subgroup {
        let gens: Vec<u32> = self.basis.iter().map(|b| b & mask).collect();
        Subgroup::from_generators(self.m, &gens).expect("same rank")
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.basis.iter().all(|&b| other.contains(b))
    }

    /// Whether `chi` is trivial on the subgroup.
    pub fn kills(&self, chi: u32) -> bool {
        self.basis.iter().all(|&b| pairing(chi, b) == 1)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.basis.iter().map(|&b| format_bits(b, self.m)).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// Every subgroup of `(Z/2)^m`.
pub fn all_subgroups(m: usize) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut frontier = vec![Subgroup::trivial(m)];
    seen.insert(Vec::new());
    let mut out = Vec::new();
    while let Some(s) = frontier.pop() {
        for e in 1..1u32 << m {
            if s.contains(e) {
                continue;
            }
            let mut gens = s.basis.clone();
            gens.push(e);
            let t = Subgroup::from_generators(m, &gens).expect("in range");
            if seen.insert(t.basis.clone()) {
                frontier.push(t);
            }
        }
        out.push(s);
    }
    out.sort_by(|a, b| (a.dim(), &a.basis).cmp(&(b.dim(), &b.basis)));
    out
}

/// Integer combination of the characters of `(Z/2)^m`; `coeffs[χ]` is the
/// coefficient of the character with bit vector `χ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualCharacter {
    m: usize,
    coeffs: Vec<i64>,
}

impl VirtualCharacter {
    pub fn zero(m: usize) -> Result<Self> {
        check_rank(m)?;
        Ok(VirtualCharacter {
            m,
            coeffs: vec![0; 1 << m],
        })
    }

    pub fn character(m: usize, chi: u32) -> Result<Self> {
        let mut v = Self::zero(m)?;
        if chi as usize >= v.coeffs.len() {
            return Err(Error::NotACharacter(format!(
                "{chi:#b} is not a character of rank {m}"
            )));
        }
        v.coeffs[chi as usize] = 1;
        Ok(v)
    }

    pub fn trivial(m: usize) -> Result<Self> {
        Self::character(m, 0)
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn coeff(&self, chi: u32) -> i64 {
        self.coeffs[chi as usize]
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Nonzero terms in increasing bit-vector order.
    pub fn support(&self) -> Vec<(u32, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i as u32, c))
            .collect()
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::Invalid(format!(
                "characters of (Z/2)^{} and (Z/2)^{}",
                self.m, other.m
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(VirtualCharacter { m: self.m, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        VirtualCharacter {
            m: self.m,
            coeffs: self.coeffs.iter().map(|x| c * x).collect(),
        }
    }

    /// Tensor product: characters multiply by xor of bit vectors.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = Self::zero(self.m)?;
        for (a, ca) in self.support() {
            for (b, cb) in other.support() {
                out.coeffs[(a ^ b) as usize] += ca * cb;
            }
        }
        Ok(out)
    }

    pub fn eval(&self, e: u32) -> i64 {
        self.support()
            .iter()
            .map(|&(chi, c)| c * pairing(chi, e))
            .sum()
    }

    /// `(v, w)` in the character basis.
    pub fn inner(&self, other: &Self) -> Result<i64> {
        self.same_group(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum())
    }

    /// `Ind_S^G 1`: the sum of the characters trivial on `S`.
    pub fn induced_trivial(sub: &Subgroup) -> Result<Self> {
        let mut out = Self::zero(sub.rank())?;
        for chi in sub.annihilator().elements() {
            out.coeffs[chi as usize] += 1;
        }
        Ok(out)
    }

    /// Restriction to `sub`, expressed in `sub`'s basis coordinates: the
    /// result is a virtual character of `(Z/2)^{dim sub}`.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Self> {
        let mut out = Self::zero(sub.dim())?;
        for (chi, c) in self.support() {
            out.coeffs[restriction_bits(chi, sub) as usize] += c;
        }
        Ok(out)
    }

    /// `Ind_S^G ψ` for `ψ` a virtual character of `S` in basis coordinates.
    pub fn induce(psi: &Self, sub: &Subgroup) -> Result<Self> {
        if psi.m != sub.dim() {
            return Err(Error::Invalid(
                "character does not live on the subgroup".into(),
            ));
        }
        let mut out = Self::zero(sub.rank())?;
        for chi in 0..1u32 << sub.rank() {
            out.coeffs[chi as usize] = psi.coeff(restriction_bits(chi, sub));
        }
        Ok(out)
    }
}

/// Bit vector of `χ` restricted to the basis of `sub`.
pub fn restriction_bits(chi: u32, sub: &Subgroup) -> u32 {
    sub.basis().iter().enumerate().fold(0, |acc, (i, &b)| {
        if pairing(chi, b) == -1 {
            acc | 1 << i
        } else {
            acc
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_basics() {
        let s = Subgroup::from_generators(3, &[0b011, 0b110, 0b101]).unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s.elements(), vec![0, 0b011, 0b101, 0b110]);
        assert_eq!(s.annihilator().elements(), vec![0, 0b111]);
        assert!(Subgroup::from_generators(2, &[0b100]).is_err());
        assert_eq!(all_subgroups(2).len(), 5);
        assert_eq!(all_subgroups(3).len(), 16);
        assert_eq!(all_subgroups(4).len(), 67);
        assert_eq!(parse_bits("101").unwrap(), (0b101, 3));
        assert_eq!(format_bits(0b101, 4), "1010");
    }

    #[test]
    fn frobenius_reciprocity() {
        for m in 0..=4 {
            for s in all_subgroups(m) {
                let ind = VirtualCharacter::induced_trivial(&s).unwrap();
                assert_eq!(ind.eval(0), (1i64 << m) / s.order() as i64);
                for chi in 0..1u32 << m {
                    let c = VirtualCharacter::character(m, chi).unwrap();
                    assert_eq!(c.inner(&ind).unwrap(), s.kills(chi) as i64);
                    // Ind of the restriction of the trivial character agrees
                    let triv = VirtualCharacter::trivial(s.dim()).unwrap();
                    assert_eq!(VirtualCharacter::induce(&triv, &s).unwrap(), ind);
                }
            }
        }
    }

    #[test]
    fn ring_operations() {
        let a = VirtualCharacter::character(2, 0b01).unwrap();
        let b = VirtualCharacter::character(2, 0b11).unwrap();
        assert_eq!(
            a.mul(&b).unwrap(),
            VirtualCharacter::character(2, 0b10).unwrap()
        );
        assert_eq!(a.sub(&a).unwrap(), VirtualCharacter::zero(2).unwrap());
        assert_eq!(a.eval(0b01), -1);
        let s = Subgroup::coordinate(2, 0b01);
        assert_eq!(
            b.restrict(&s).unwrap(),
            VirtualCharacter::character(1, 1).unwrap()
        );
        assert!(VirtualCharacter::character(2, 4).is_err());
    }
}
