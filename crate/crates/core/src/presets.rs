//! Finite data of a Galois pair: simple roots with the involution
//! `α ↦ -θ(α)`, its fixed set `Δ₋`, and the image `B ⊆ (Z/2)^{Δ₋}` of the
//! abelianized group.

use serde::{Deserialize, Serialize};

use crate::characters::{format_bits, parse_bits, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::{torus_h1, FiniteAbelianGroup, LatticeWithAction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    GL,
    U,
    SO,
    Custom,
}

#[derive(Clone, Debug)]
pub struct ThetaPreset {
    pub name: String,
    pub family: Family,
    pub n: Option<usize>,
    /// `|Δ_min|`; simple roots are `0..delta_min`.
    pub delta_min: usize,
    pub iota: Vec<usize>,
    /// Fixed points of `iota`, increasing. Bit `k` of `(Z/2)^{Δ₋}` is `delta_minus[k]`.
    pub delta_minus: Vec<usize>,
    /// One root from each free orbit of `iota`.
    pub s_choice: Vec<usize>,
    pub b: Subgroup,
    /// `|H^1(F, H)|`, when known.
    pub h1_order: Option<u64>,
    /// Whether the numbers this preset produces are backed by worked examples.
    pub validated: bool,
    pub notes: String,
}

impl ThetaPreset {
    pub fn new(
        name: &str,
        delta_min: usize,
        iota: Vec<usize>,
        delta_minus: Vec<usize>,
        s_choice: Option<Vec<usize>>,
        b_generators: &[u32],
    ) -> Result<Self> {
        if iota.len() != delta_min {
            return Err(Error::Preset(format!(
                "iota has {} entries for {delta_min} roots",
                iota.len()
            )));
        }
        if iota.iter().any(|&j| j >= delta_min) {
            return Err(Error::Preset(
                "iota is not a map of the simple roots".into(),
            ));
        }
        if (0..delta_min).any(|i| iota[iota[i]] != i) {
            return Err(Error::Preset("iota is not an involution".into()));
        }
        let fixed: Vec<usize> = (0..delta_min).filter(|&i| iota[i] == i).collect();
        let mut dm = delta_minus.clone();
        dm.sort_unstable();
        dm.dedup();
        if dm != fixed {
            return Err(Error::Preset(format!(
                "delta_minus {delta_minus:?} is not the fixed set {fixed:?}"
            )));
        }
        let s = match s_choice {
            Some(s) => {
                let mut covered: Vec<usize> = s
                    .iter()
                    .chain(s.iter().map(|&a| &iota[a]))
                    .copied()
                    .collect();
                let len = covered.len();
                covered.sort_unstable();
                covered.dedup();
                let moved: Vec<usize> = (0..delta_min).filter(|&i| iota[i] != i).collect();
                if covered.len() != len || covered != moved {
                    return Err(Error::Preset(
                        "S and iota(S) must partition the moved roots".into(),
                    ));
                }
                s
            }
            None => (0..delta_min).filter(|&i| iota[i] > i).collect(),
        };
        let b = Subgroup::from_generators(dm.len(), b_generators)
            .map_err(|e| Error::Preset(e.to_string()))?;
        Ok(ThetaPreset {
            name: name.to_string(),
            family: Family::Custom,
            n: None,
            delta_min,
            iota,
            delta_minus: dm,
            s_choice: s,
            b,
            h1_order: None,
            validated: false,
            notes: String::new(),
        })
    }

    /// `m = |Δ₋|`.
    pub fn m(&self) -> usize {
        self.delta_minus.len()
    }

    /// Built-in families: `GL` (`H = GL_n`) and `U` (`H = U(n)`).
    pub fn builtin(family: &str, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Preset("n must be at least 1".into()));
        }
        let r = n - 1;
        match family {
            "GL" => {
                // ι reverses the Dynkin diagram of GL_n; only the middle root is fixed
                let iota: Vec<usize> = (0..r).map(|i| r - 1 - i).collect();
                let dm: Vec<usize> = (0..r).filter(|&i| iota[i] == i).collect();
                let b = if dm.is_empty() { vec![] } else { vec![1] };
                let mut p = Self::new(&format!("GL:{n}"), r, iota, dm, None, &b)?;
                p.family = Family::GL;
                p.n = Some(n);
                p.h1_order = Some(1);
                p.validated = true;
                p.notes =
                    "H = GL_n, H_ab = F^x, omega = (eta o det)^(n+1); for even n the two classes \
                           are H and GL_{n/2}(E) with index-two image N(E^x)"
                        .into();
                Ok(p)
            }
            "U" => {
                let iota: Vec<usize> = (0..r).collect();
                let mut p = Self::new(&format!("U:{n}"), r, iota, (0..r).collect(), None, &[])?;
                p.family = Family::U;
                p.n = Some(n);
                p.h1_order = Some(2);
                p.validated = true;
                p.notes = "H = U(n), H_ab = ker N, omega = 1; classes are compositions of n with \
                           |ker1| = 2^(k-1) and M_ab = H_ab"
                    .into();
                Ok(p)
            }
            "SO" => Err(Error::Preset(
                "SO(2n+1) needs its Δ₋ and B data from a fixture".into(),
            )),
            other => Err(Error::Preset(format!("unknown family {other:?}"))),
        }
    }

    /// Parses `FAMILY:n`, e.g. `GL:4`.
    pub fn parse_selector(s: &str) -> Result<Self> {
        let (fam, n) = s
            .split_once(':')
            .ok_or_else(|| Error::Preset(format!("expected FAMILY:n, got {s:?}")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::Preset(format!("bad n in {s:?}")))?;
        Self::builtin(fam.trim(), n)
    }

    pub fn to_fixture(&self) -> PresetFixture {
        PresetFixture {
            name: self.name.clone(),
            family: Some(self.family),
            delta_min: self.delta_min,
            iota: self.iota.clone(),
            delta_minus: self.delta_minus.clone(),
            s_choice: Some(self.s_choice.clone()),
            b_generators: self
                .b
                .basis()
                .iter()
                .map(|&g| format_bits(g, self.m()))
                .collect(),
            h1_order: self.h1_order,
        }
    }
}

/// JSON form: `{"name": .., "delta_min": 4, "iota": [3, 2, 1, 0],
/// "delta_minus": [], "b_generators": ["01", ..], "h1_order": 1}`.
///
/// Bit strings index `delta_minus` in increasing order. Fixture presets are
/// never marked validated.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresetFixture {
    pub name: String,
    #[serde(default)]
    pub family: Option<Family>,
    pub delta_min: usize,
    pub iota: Vec<usize>,
    pub delta_minus: Vec<usize>,
    #[serde(default)]
    pub s_choice: Option<Vec<usize>>,
    #[serde(default)]
    pub b_generators: Vec<String>,
    #[serde(default)]
    pub h1_order: Option<u64>,
}

impl PresetFixture {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn build(&self) -> Result<ThetaPreset> {
        let m = self.delta_minus.len();
        let mut gens = Vec::new();
        for g in &self.b_generators {
            let (v, len) = parse_bits(g).map_err(|e| Error::Preset(e.to_string()))?;
            if len != m {
                return Err(Error::Preset(format!(
                    "generator {g:?} has length {len}, expected {m}"
                )));
            }
            gens.push(v);
        }
        let mut p = ThetaPreset::new(
            &self.name,
            self.delta_min,
            self.iota.clone(),
            self.delta_minus.clone(),
            self.s_choice.clone(),
            &gens,
        )?;
        p.family = self.family.unwrap_or(Family::Custom);
        p.h1_order = self.h1_order;
        p.notes = "loaded from fixture".into();
        Ok(p)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EllipticLeviDatum {
    /// `I ⊆ Δ₋` as a bit mask over `delta_minus`.
    pub i_mask: u32,
    /// `I` as simple-root indices.
    pub roots: Vec<usize>,
    /// `(-1)^{|Δ₋ - I|}`.
    pub sign: i64,
    /// `H^1(F, M_{I,sc}) = (Z/2)^I`.
    pub h1: FiniteAbelianGroup,
    /// Generators of `A_I = (Z/2)^{Δ₋ - I}`.
    pub a_i: Vec<String>,
    pub ker1_size: u64,
    /// `|proj_I(B)|`.
    pub mab_index: u64,
    /// The composition of `n` for family `U`.
    pub label: Option<Vec<usize>>,
}

/// `A_I`: the kernel of the projection `(Z/2)^{Δ₋} -> (Z/2)^I`.
pub fn a_subgroup(m: usize, i_mask: u32) -> Subgroup {
    let all = if m == 0 { 0 } else { (1u32 << m) - 1 };
    Subgroup::coordinate(m, all & !i_mask)
}

/// Composition of `n` whose cut points are the roots in `I` (cut after
/// position `i + 1` for root `i`).
pub fn composition_of(n: usize, roots: &[usize]) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut last = 0;
    for &i in roots {
        parts.push(i + 1 - last);
        last = i + 1;
    }
    parts.push(n - last);
    parts
}

/// One datum per `I ⊆ Δ₋`, ordered by the bit mask of `I`.
pub fn enumerate_elliptic_levis(p: &ThetaPreset) -> Vec<EllipticLeviDatum> {
    let m = p.m();
    (0..1u32 << m)
        .map(|mask| {
            let k = mask.count_ones() as usize;
            let roots: Vec<usize> = (0..m)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| p.delta_minus[b])
                .collect();
            let mab_index = p.b.project(mask).order();
            let a_i = a_subgroup(m, mask);
            EllipticLeviDatum {
                i_mask: mask,
                sign: if (m - k).is_multiple_of(2) { 1 } else { -1 },
                h1: FiniteAbelianGroup::from_orders(&vec![2; k]),
                a_i: a_i.basis().iter().map(|&g| format_bits(g, m)).collect(),
                ker1_size: (1u64 << k) / mab_index,
                mab_index,
                label: (p.family == Family::U)
                    .then(|| composition_of(p.n.expect("U presets carry n"), &roots)),
                roots,
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupLatticeReport {
    pub pairs: usize,
    pub failures: Vec<(u32, u32)>,
}

/// Checks `A_I + A_J = A_{I ∩ J}` for every pair.
pub fn a_subgroup_lattice_check(p: &ThetaPreset) -> Result<SubgroupLatticeReport> {
    let m = p.m();
    if m > 10 {
        return Err(Error::Invalid(format!(
            "|Δ₋| = {m} is too large for the exhaustive check"
        )));
    }
    let subs: Vec<Subgroup> = (0..1u32 << m).map(|i| a_subgroup(m, i)).collect();
    let mut failures = Vec::new();
    let mut pairs = 0;
    for i in 0..1u32 << m {
        for j in 0..1u32 << m {
            pairs += 1;
            if subs[i as usize].sum(&subs[j as usize]) != subs[(i & j) as usize] {
                failures.push((i, j));
            }
        }
    }
    Ok(SubgroupLatticeReport { pairs, failures })
}

/// `|ker^1(F; T, G)| = |H^1(F, T)| / |H^1(F, G)|`.
pub fn inner_form_fiber_count(torus: &LatticeWithAction, h1_g_order: u64) -> Result<u128> {
    if h1_g_order == 0 {
        return Err(Error::Invalid("|H^1(F, G)| must be at least 1".into()));
    }
    let t = torus_h1(torus)?.order();
    if t % h1_g_order as u128 != 0 {
        return Err(Error::Inconsistent(format!(
            "|H^1(T)| = {t} is not divisible by |H^1(G)| = {h1_g_order}"
        )));
    }
    Ok(t / h1_g_order as u128)
}
