//! The indicator functions `τ`, `τ̂`, `δ` and the alternating sums `Γ` built
//! from them, on a Levi subspace `A_M`.

use num::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::ortho::OrthogonalSet;
use crate::error::{Error, Result};
use crate::fixtures::ser_q;
use crate::linalg::rational::{dot, fmt_vec, norm_inf, sub, Vector, Q};
use crate::linalg::RatMatrix;
use crate::roots::Levi;

fn check_le(levi: &Levi, r: usize, q: usize) -> Result<()> {
    if r >= levi.num_faces() || q >= levi.num_faces() {
        return Err(Error::Invalid(format!(
            "face index out of range ({r}, {q})"
        )));
    }
    if !levi.parabolic_le(r, q) {
        return Err(Error::Incompatible(format!(
            "face {r} is not contained in face {q}"
        )));
    }
    Ok(())
}

/// Simple roots of `chamber` vanishing on face `q`.
fn mask_in(levi: &Levi, chamber: usize, q: usize) -> usize {
    let pt = levi.face_point(q);
    levi.chamber(chamber)
        .simple
        .iter()
        .enumerate()
        .filter(|(_, s)| dot(&s.root, pt).is_zero())
        .fold(0, |m, (i, _)| m | 1 << i)
}

/// Masks `(m_R, m_Q)` of `R ⊆ Q` relative to the chamber below `R`.
pub(crate) fn masks(levi: &Levi, r: usize, q: usize) -> (usize, usize, usize) {
    let p = levi.face(r).chamber;
    (p, levi.face(r).mask, mask_in(levi, p, q))
}

fn tau_masked(levi: &Levi, p: usize, r: usize, m_r: usize, m_q: usize, h: &[Q]) -> bool {
    let simple = &levi.chamber(p).simple;
    let diff = m_q & !m_r;
    if diff == 0 {
        return true;
    }
    let hp = if r < levi.num_chambers() {
        h.to_vec()
    } else {
        levi.face_proj(r).mul_vec(h)
    };
    (0..simple.len())
        .filter(|i| diff >> i & 1 == 1)
        .all(|i| dot(&simple[i].root, &hp).is_positive())
}

fn tau_hat_masked(levi: &Levi, p: usize, m_r: usize, m_q: usize, z: &[Q]) -> bool {
    let varpi = &levi.chamber(p).varpi[m_q];
    let diff = m_q & !m_r;
    (0..varpi.len())
        .filter(|i| diff >> i & 1 == 1)
        .all(|i| dot(&varpi[i], z).is_positive())
}

/// `τ^Q_R(H)`: every simple root of `R` relative to `Q` is positive on `H`
/// (projected to `A_R`).
pub fn tau(levi: &Levi, r: usize, q: usize, h: &[Q]) -> Result<bool> {
    check_le(levi, r, q)?;
    let (p, m_r, m_q) = masks(levi, r, q);
    Ok(tau_masked(levi, p, r, m_r, m_q, h))
}

/// `τ̂^Q_R(H)`: every dual weight of `R` relative to `Q` is positive on `H`.
pub fn tau_hat(levi: &Levi, r: usize, q: usize, h: &[Q]) -> Result<bool> {
    check_le(levi, r, q)?;
    let (p, m_r, m_q) = masks(levi, r, q);
    Ok(tau_hat_masked(levi, p, m_r, m_q, h))
}

/// `δ^R(H)`: `H` lies in `A_R`.
pub fn delta(levi: &Levi, r: usize, h: &[Q]) -> bool {
    levi.in_span(r, h)
}

/// `Γ^Q_R(H, X)` as the alternating sum over intermediate faces `R ⊆ S ⊆ Q`.
pub fn gamma_pq(levi: &Levi, r: usize, q: usize, h: &[Q], x: &[Q]) -> Result<i64> {
    check_le(levi, r, q)?;
    Ok(gamma_unchecked(levi, r, q, h, x))
}

fn gamma_unchecked(levi: &Levi, r: usize, q: usize, h: &[Q], x: &[Q]) -> i64 {
    let (p, m_r, m_q) = masks(levi, r, q);
    let free = m_q & !m_r;
    let z = sub(h, x);
    let mut total = 0i64;
    // S runs over faces with m_R ⊆ m_S ⊆ m_Q
    let mut sub_mask = free;
    loop {
        let m_s = m_r | sub_mask;
        if tau_masked(levi, p, r, m_r, m_s, h) && tau_hat_masked(levi, p, m_s, m_q, &z) {
            let parity = (m_q.count_ones() - m_s.count_ones()) % 2;
            total += if parity == 0 { 1 } else { -1 };
        }
        if sub_mask == 0 {
            break;
        }
        sub_mask = (sub_mask - 1) & free;
    }
    total
}

/// `Γ^Q_M(H, Y) = Σ_{R ⊆ Q} δ^R(H) Γ^Q_R(H, Y_R)`.
pub fn gamma_mq(y: &OrthogonalSet, q: usize, h: &[Q]) -> Result<i64> {
    let levi = y.levi();
    if q >= levi.num_faces() {
        return Err(Error::Invalid(format!("face index {q} out of range")));
    }
    if !levi.contains(h) {
        return Err(Error::Invalid(format!("{} is not in A_M", fmt_vec(h))));
    }
    let mut total = 0;
    for &r in &levi.face(q).below {
        if delta(levi, r, h) {
            total += gamma_unchecked(levi, r, q, h, &y.face_point(r));
        }
    }
    Ok(total)
}

/// `Γ^G_M(H, Y)`.
pub fn gamma_mg(y: &OrthogonalSet, h: &[Q]) -> Result<i64> {
    gamma_mq(y, y.levi().origin(), h)
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub samples: usize,
    /// Points where the sum is not 1, with the value found.
    pub violations: Vec<(String, i64)>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates `Σ_Q Γ^Q_M(H, Y) τ^G_Q(H - Y_Q)` at each sample.
pub fn partition_of_unity_check(y: &OrthogonalSet, samples: &[Vector]) -> Result<PartitionReport> {
    let levi = y.levi();
    let g = levi.origin();
    let face_points: Vec<Vector> = (0..levi.num_faces()).map(|q| y.face_point(q)).collect();
    let sums: Vec<i64> = samples
        .par_iter()
        .map(|h| {
            let mut sum = 0;
            for (q, yq) in face_points.iter().enumerate() {
                let (p, m_q, m_g) = masks(levi, q, g);
                if tau_masked(levi, p, q, m_q, m_g, &sub(h, yq)) {
                    sum += gamma_mq(y, q, h)?;
                }
            }
            Ok(sum)
        })
        .collect::<Result<_>>()?;
    let violations = samples
        .iter()
        .zip(sums)
        .filter(|(_, s)| *s != 1)
        .map(|(h, s)| (fmt_vec(h), s))
        .collect();
    Ok(PartitionReport {
        samples: samples.len(),
        violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportReport {
    pub samples: usize,
    pub nonzero: usize,
    /// Largest `|H^Q| / sup_P |Y^Q_P|` over sampled points where `Γ ≠ 0`.
    #[serde(serialize_with = "ser_q")]
    pub c_empirical: Q,
    /// Bound from the vertices of the arrangements cut out by `Γ`.
    #[serde(serialize_with = "ser_q")]
    pub c_bound: Q,
    /// A nonzero value of `Γ` at `H^Q ≠ 0` while every `Y^Q_P = 0`.
    pub degenerate_violation: bool,
}

impl SupportReport {
    pub fn passed(&self) -> bool {
        !self.degenerate_violation && self.c_empirical <= self.c_bound
    }
}

/// Max-abs norm in lattice coordinates of `A_M`.
fn lattice_norm(levi: &Levi, v: &[Q]) -> Q {
    norm_inf(&levi.lattice_coords(v))
}

/// `H^Q`: the component of `H ∈ A_M` in `A_M^Q`.
fn upper(levi: &Levi, q: usize, h: &[Q]) -> Vector {
    sub(h, &levi.face_proj(q).mul_vec(h))
}

/// Operator-norm bound for `Y^Q_P ↦ H^Q` over every vertex of every
/// arrangement `{α = 0} ∪ {ϖ = ϖ(Y)}` entering `Γ^Q_R`, `R ⊆ Q`.
pub fn support_constant(levi: &Levi, q: usize) -> Result<Q> {
    if q >= levi.num_faces() {
        return Err(Error::Invalid(format!("face index {q} out of range")));
    }
    let n = levi.fan().system().ambient_dim();
    let lat: Vec<Vector> = levi.lattice().basis_vectors();
    let mut best = Q::zero();
    for &r in &levi.face(q).below {
        let (p, m_r, m_q) = masks(levi, r, q);
        let idx: Vec<usize> = (0..levi.dim())
            .filter(|i| (m_q & !m_r) >> i & 1 == 1)
            .collect();
        let d = idx.len();
        if d == 0 {
            continue;
        }
        let ch = levi.chamber(p);
        let proj_r = levi.face_proj(r);
        // basis of A_R^Q: projected coroots
        let b: Vec<Vector> = idx
            .iter()
            .map(|&i| proj_r.mul_vec(&ch.simple[i].coroot))
            .collect();
        let bm = RatMatrix::from_cols(n, &b);
        // hyperplanes: (functional on A_R^Q coords, optional dual weight for the right side)
        let mut planes: Vec<(Vector, Option<Vector>)> = Vec::new();
        for &i in &idx {
            let alpha = bm.vec_mul(&proj_r.transpose().mul_vec(&ch.simple[i].root));
            planes.push((alpha, None));
            let w = ch.varpi[m_q][i].clone();
            planes.push((bm.vec_mul(&w), Some(w)));
        }
        for sel in subsets(planes.len(), d) {
            let m =
                RatMatrix::from_rows(&sel.iter().map(|&k| planes[k].0.clone()).collect::<Vec<_>>());
            let Some(minv) = m.inverse() else { continue };
            // image of each lattice basis vector y under y ↦ B M^{-1} (ϖ(y) or 0)
            let mut norm = Q::zero();
            let images: Vec<Vector> = lat
                .iter()
                .map(|y| {
                    let rhs: Vector = sel
                        .iter()
                        .map(|&k| planes[k].1.as_ref().map_or(Q::zero(), |w| dot(w, y)))
                        .collect();
                    levi.lattice_coords(&bm.mul_vec(&minv.mul_vec(&rhs)))
                })
                .collect();
            for row in 0..lat.len() {
                let s: Q = images.iter().map(|im| im[row].abs()).sum();
                if s > norm {
                    norm = s;
                }
            }
            if norm > best {
                best = norm;
            }
        }
    }
    Ok(best)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Checks `|H^Q| ≤ c sup_P |Y^Q_P|` on the sampled support of `Γ^Q_M`.
pub fn support_bound_check(
    y: &OrthogonalSet,
    q: usize,
    samples: &[Vector],
) -> Result<SupportReport> {
    let levi = y.levi();
    let c_bound = support_constant(levi, q)?;
    let sup = (0..levi.num_chambers())
        .map(|p| lattice_norm(levi, &upper(levi, q, y.point(p))))
        .max()
        .unwrap_or_else(Q::zero);
    let mut c_empirical = Q::zero();
    let mut nonzero = 0;
    let mut degenerate_violation = false;
    for h in samples {
        if gamma_mq(y, q, h)? == 0 {
            continue;
        }
        nonzero += 1;
        let hq = lattice_norm(levi, &upper(levi, q, h));
        if hq.is_zero() {
            continue;
        }
        if sup.is_zero() {
            degenerate_violation = true;
        } else {
            let c = hq / &sup;
            if c > c_empirical {
                c_empirical = c;
            }
        }
    }
    Ok(SupportReport {
        samples: samples.len(),
        nonzero,
        c_empirical,
        c_bound,
        degenerate_violation,
    })
}
