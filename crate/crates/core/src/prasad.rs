//! The reduced Prasad character, the alternating Ind/Res identity over the
//! subsets of `Δ₋`, and the Steinberg multiplicity sum.

use serde::Serialize;

use crate::characters::{format_bits, Subgroup, VirtualCharacter};
use crate::error::{Error, Result};
use crate::presets::{a_subgroup, enumerate_elliptic_levis, ThetaPreset};

#[derive(Clone, Debug, Serialize)]
pub struct ReducedOmega {
    pub m: usize,
    /// The product character `(e_α) ↦ (-1)^{Σ e_α}`, i.e. all bits set.
    pub character: u32,
    /// Whether its restriction to `B` is trivial.
    pub effective_trivial: bool,
}

pub fn omega_bits(m: usize) -> u32 {
    if m == 0 {
        0
    } else {
        (1u32 << m) - 1
    }
}

pub fn prasad_omega(p: &ThetaPreset) -> ReducedOmega {
    let w = omega_bits(p.m());
    ReducedOmega {
        m: p.m(),
        character: w,
        effective_trivial: p.b.kills(w),
    }
}

/// `Σ_{I ⊆ Δ₋} (-1)^{|Δ₋ - I|} Res_I Ind_1^I 1`, built term by term as
/// `Ind_{A_I}^{A_∅} 1`.
pub fn prasad_sum(m: usize) -> Result<VirtualCharacter> {
    let mut total = VirtualCharacter::zero(m)?;
    for i in 0..1u32 << m {
        let term = VirtualCharacter::induced_trivial(&a_subgroup(m, i))?;
        let sign = if (m - i.count_ones() as usize).is_multiple_of(2) {
            1
        } else {
            -1
        };
        total = total.add(&term.scale(sign))?;
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize)]
pub struct PrasadCertificateRow {
    pub chi: String,
    /// Smallest `I` with `χ|_{A_I} = 1` (the support of `χ`).
    pub i_chi: String,
    pub coefficient: i64,
    pub expected: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrasadCertificate {
    pub m: usize,
    pub holds: bool,
    pub rows: Vec<PrasadCertificateRow>,
}

/// Compares the alternating sum with `ω` coefficient by coefficient, and
/// each coefficient with `Σ_{I ⊇ I_χ} (-1)^{m - |I|}` counted directly.
pub fn verify_prasad_identity(m: usize) -> Result<PrasadCertificate> {
    let sum = prasad_sum(m)?;
    let omega = VirtualCharacter::character(m, omega_bits(m))?;
    let full = omega_bits(m);
    let mut rows = Vec::with_capacity(1 << m);
    let mut holds = sum == omega;
    for chi in 0..1u32 << m {
        // smallest I with χ trivial on A_I, found by search
        let i_chi = (0..1u32 << m)
            .filter(|&i| a_subgroup(m, i).kills(chi))
            .min_by_key(|i| i.count_ones())
            .expect("I = Δ₋ always works");
        let direct: i64 = (0..1u32 << m)
            .filter(|&i| i & i_chi == i_chi)
            .map(|i| {
                if (m - i.count_ones() as usize).is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            })
            .sum();
        let coefficient = sum.coeff(chi);
        holds &= direct == coefficient;
        rows.push(PrasadCertificateRow {
            chi: format_bits(chi, m),
            i_chi: format_bits(i_chi, m),
            coefficient,
            expected: (chi == full) as i64,
        });
    }
    Ok(PrasadCertificate { m, holds, rows })
}

/// `χ_B` given as any character of `(Z/2)^{Δ₋}` restricting to it.
fn check_character(p: &ThetaPreset, chi: u32) -> Result<()> {
    if chi > omega_bits(p.m()) {
        return Err(Error::NotACharacter(format!(
            "{chi:#b} has bits beyond |Δ₋| = {}",
            p.m()
        )));
    }
    Ok(())
}

/// Representatives of the characters of `B`, one per restriction class
/// (the smallest bit vector in each).
pub fn characters_of_b(p: &ThetaPreset) -> Vec<u32> {
    let ann = p.b.annihilator();
    (0..1u32 << p.m())
        .filter(|&c| ann.elements().iter().all(|&a| (c ^ a) >= c))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SteinbergTerm {
    pub i: String,
    pub sign: i64,
    pub ker1_size: u64,
    /// `(χ|_{M_I}, 1)`: whether `χ_B` is trivial on `B ∩ A_I`.
    pub trivial_on_mab: bool,
}

/// `Σ_{I ⊆ Δ₋} (-1)^{|Δ₋ - I|} |ker^1(I)| (χ|_{M_I}, 1)`.
///
/// The pairing `(χ|_{M_I}, 1)` is the indicator of `χ` being trivial on the
/// image of `M_I`, which in the reduced model is `B ∩ A_I`; that rule is
/// taken as given here, not derived.
pub fn steinberg_terms(p: &ThetaPreset, chi: u32) -> Result<Vec<SteinbergTerm>> {
    check_character(p, chi)?;
    let m = p.m();
    Ok(enumerate_elliptic_levis(p)
        .into_iter()
        .map(|d| {
            let mab = p.b.intersect(&a_subgroup(m, d.i_mask));
            SteinbergTerm {
                i: format_bits(d.i_mask, m),
                sign: d.sign,
                ker1_size: d.ker1_size,
                trivial_on_mab: mab.kills(chi),
            }
        })
        .collect())
}

pub fn steinberg_multiplicity(p: &ThetaPreset, chi: u32) -> Result<i64> {
    Ok(steinberg_terms(p, chi)?
        .iter()
        .filter(|t| t.trivial_on_mab)
        .map(|t| t.sign * t.ker1_size as i64)
        .sum())
}

/// `⟦χ|_B = ω|_B⟧`.
pub fn steinberg_expected(p: &ThetaPreset, chi: u32) -> i64 {
    p.b.kills(chi ^ omega_bits(p.m())) as i64
}

/// `Σ_{(n_1, .., n_k)} (-1)^{n-k} 2^{k-1}` over all compositions of `n`.
pub fn composition_identity(n: usize) -> Result<i64> {
    if n == 0 || n > 40 {
        return Err(Error::Invalid(format!("n = {n} out of range 1..=40")));
    }
    let mut total = 0i64;
    for cuts in 0u64..1 << (n - 1) {
        let k = cuts.count_ones() as usize + 1;
        let sign = if (n - k).is_multiple_of(2) { 1 } else { -1 };
        total += sign * (1i64 << (k - 1));
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize)]
pub struct InductionIdentity {
    pub holds: bool,
    /// `(Ind 1 - 1)(x)` and `η(x)` at `x = 0, 1`.
    pub values: Vec<(i64, i64)>,
}

/// `Ind_{N(E^×)}^{F^×} 1 - 1 = η` on the image `B = Z/2`.
pub fn gln_induction_identity() -> Result<InductionIdentity> {
    let lhs = VirtualCharacter::induced_trivial(&Subgroup::trivial(1))?
        .sub(&VirtualCharacter::trivial(1)?)?;
    let eta = VirtualCharacter::character(1, 1)?;
    let values = (0..2).map(|x| (lhs.eval(x), eta.eval(x))).collect();
    Ok(InductionIdentity {
        holds: lhs == eta,
        values,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub m: usize,
    pub subgroups: usize,
    pub characters: usize,
    /// `(B generators, χ, computed, expected)` for each disagreement.
    pub counterexamples: Vec<(String, String, i64, i64)>,
}

/// Runs the Steinberg sum against its expected indicator for every subgroup
/// `B ⊆ (Z/2)^m`, not only those known to come from a group.
pub fn probe_all_subgroups(m: usize) -> Result<ProbeReport> {
    let mut subgroups = 0;
    let mut characters = 0;
    let mut counterexamples = Vec::new();
    for b in crate::characters::all_subgroups(m) {
        subgroups += 1;
        let gens: Vec<u32> = b.basis().to_vec();
        let p = ThetaPreset::new("probe", m, (0..m).collect(), (0..m).collect(), None, &gens)?;
        for chi in characters_of_b(&p) {
            characters += 1;
            let got = steinberg_multiplicity(&p, chi)?;
            let want = steinberg_expected(&p, chi);
            if got != want {
                counterexamples.push((b.to_string(), format_bits(chi, m), got, want));
            }
        }
    }
    Ok(ProbeReport {
        m,
        subgroups,
        characters,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_small_m() {
        for m in 0..=6 {
            let c = verify_prasad_identity(m).unwrap();
            assert!(c.holds, "m = {m}");
            for r in &c.rows {
                assert_eq!(r.coefficient, r.expected);
            }
        }
        // m = 1: -1 + (1 + ε) = ε
        let s = prasad_sum(1).unwrap();
        assert_eq!(s.support(), vec![(1, 1)]);
    }

    #[test]
    fn steinberg_on_presets() {
        let g = ThetaPreset::builtin("GL", 4).unwrap();
        assert_eq!(steinberg_multiplicity(&g, 1).unwrap(), 1);
        assert_eq!(steinberg_multiplicity(&g, 0).unwrap(), 0);
        assert!(steinberg_multiplicity(&g, 2).is_err());
        for n in 1..=6 {
            let u = ThetaPreset::builtin("U", n).unwrap();
            assert_eq!(characters_of_b(&u), vec![0]);
            assert_eq!(steinberg_multiplicity(&u, 0).unwrap(), 1);
            assert!(prasad_omega(&u).effective_trivial);
        }
        assert!(!prasad_omega(&g).effective_trivial);
        assert!(prasad_omega(&ThetaPreset::builtin("GL", 3).unwrap()).effective_trivial);
    }

    #[test]
    fn compositions() {
        assert_eq!(composition_identity(1).unwrap(), 1);
        assert_eq!(composition_identity(2).unwrap(), 1);
        for n in 1..=12 {
            assert_eq!(composition_identity(n).unwrap(), 1);
        }
        let g = gln_induction_identity().unwrap();
        assert!(g.holds);
        assert_eq!(g.values, vec![(1, 1), (-1, -1)]);
    }

    #[test]
    fn probe_is_clean() {
        for m in 0..=4 {
            let r = probe_all_subgroups(m).unwrap();
            assert!(r.counterexamples.is_empty(), "{:?}", r.counterexamples);
        }
    }
}
