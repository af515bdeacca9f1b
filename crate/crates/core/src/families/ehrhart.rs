//! Lattice-point analogues of the volume: counts of `Γ^G_M` over refined
//! lattices along a dilation, quasi-polynomial fits, and their constant terms.

use num::{BigInt, Integer, One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::gamma::{gamma_mg, masks};
use super::hull::Hull;
use super::ortho::OrthogonalSet;
use super::volume::lattice_points;
use crate::error::{Error, Result};
use crate::fixtures::{ser_q, ser_q_mat};
use crate::linalg::rational::{dot, fmt_vec, q, qf, qi, scale, Vector, Q};
use crate::linalg::RatMatrix;

/// `Σ_H Γ^G_M(H, Y + Y[j X₀])` over `H ∈ (1/refinement) R`, with `R` the
/// Levi lattice.
///
/// Counting runs over the bounding box of the hull widened by one step;
/// a nonzero value on the widened margin is reported as an inconsistency.
pub fn v_tilde_lattice(y: &OrthogonalSet, refinement: u32, dilation: u32, x0: &[Q]) -> Result<i64> {
    y.require_positive()?;
    if refinement == 0 {
        return Err(Error::Invalid("refinement must be at least 1".into()));
    }
    let levi = y.levi().clone();
    let sys = levi.fan().system();
    if x0.len() != sys.ambient_dim() {
        return Err(Error::Invalid(
            "dilation direction has the wrong length".into(),
        ));
    }
    if (0..sys.rank()).any(|i| dot(sys.root(i), x0).is_negative()) {
        return Err(Error::Invalid(format!(
            "{} is not in the closed positive chamber",
            fmt_vec(x0)
        )));
    }
    let shift = OrthogonalSet::special(levi.clone(), &scale(&q(dilation as i64), x0))?;
    let yy = y.plus(&shift)?;
    count_on_lattice(&yy, refinement)
}

/// A linear form `c ↦ L·c - k K` on integer coordinates of `(1/k) R`,
/// scaled to integers from `(λ ∘ basis)(c / k) - κ`.
#[derive(Clone, Debug)]
struct IntForm {
    l: Vec<i128>,
    k_const: i128,
}

impl IntForm {
    fn new(lambda: &[Q], basis: &RatMatrix, kappa: &Q, k: u32) -> Result<Self> {
        let on_coords = basis.vec_mul(lambda);
        let mut den = kappa.denom().clone();
        for v in &on_coords {
            den = den.lcm(v.denom());
        }
        let d = qi(&den);
        let big = |x: Q| {
            num::ToPrimitive::to_i128(&x.to_integer())
                .ok_or_else(|| Error::Invalid("lattice form coefficients overflow".into()))
        };
        let l = on_coords.iter().map(|v| big(v * &d)).collect::<Result<_>>()?;
        let k_const = big(kappa * &d * q(k as i64))?;
        Ok(IntForm { l, k_const })
    }

    fn eval(&self, c: &[i64]) -> i128 {
        self.l.iter().zip(c).map(|(a, b)| a * *b as i128).sum::<i128>() - self.k_const
    }
}

struct IntTerm {
    /// Forms whose vanishing cuts out `A_R`.
    span: Vec<usize>,
    free: usize,
    /// `(bit, α_i, ϖ_i - ϖ_i(Y_R))` for the free simple roots.
    bits: Vec<(usize, IntForm, IntForm)>,
}

/// `Γ^G_M(·, Y)` on `(1/k) R` in exact integer arithmetic: every root,
/// simple root and shifted dual weight becomes an integer form in the
/// lattice coordinates, and the alternating sum runs over bit masks.
struct LatticeGamma {
    roots: Vec<IntForm>,
    terms: Vec<IntTerm>,
}

impl LatticeGamma {
    fn new(y: &OrthogonalSet, k: u32) -> Result<Self> {
        let levi = y.levi();
        let sys = levi.fan().system();
        let fan = levi.fan();
        let basis = levi.lattice().basis().to_rat();
        let zero = Q::zero();
        let mut root_ids: Vec<usize> = Vec::new();
        let mut terms = Vec::new();
        for &r in &levi.face(levi.origin()).below {
            let (p, m_r, m_q) = masks(levi, r, levi.origin());
            let free = m_q & !m_r;
            let ch = levi.chamber(p);
            let y_r = y.face_point(r);
            let mut span = Vec::new();
            for &i in &fan.cone(levi.face(r).base).vanishing {
                let pos = root_ids.iter().position(|&j| j == i).unwrap_or_else(|| {
                    root_ids.push(i);
                    root_ids.len() - 1
                });
                span.push(pos);
            }
            let mut bits = Vec::new();
            for i in 0..levi.dim() {
                if free >> i & 1 == 1 {
                    let w = &ch.varpi[m_q][i];
                    bits.push((
                        i,
                        IntForm::new(&ch.simple[i].root, &basis, &zero, k)?,
                        IntForm::new(w, &basis, &dot(w, &y_r), k)?,
                    ));
                }
            }
            terms.push(IntTerm { span, free, bits });
        }
        let roots = root_ids.iter().map(|&i| IntForm::new(sys.root(i), &basis, &zero, k)).collect::<Result<_>>()?;
        Ok(LatticeGamma { roots, terms })
    }

    fn eval(&self, c: &[i64]) -> i64 {
        let zero: Vec<bool> = self.roots.iter().map(|f| f.eval(c) == 0).collect();
        let mut total = 0;
        for t in &self.terms {
            if !t.span.iter().all(|&j| zero[j]) {
                continue;
            }
            // H lies in A_R here, so it is its own projection
            let (mut pos, mut hat) = (0usize, 0usize);
            for (i, alpha, varpi) in &t.bits {
                pos |= ((alpha.eval(c) > 0) as usize) << i;
                hat |= ((varpi.eval(c) > 0) as usize) << i;
            }
            let mut s = t.free;
            loop {
                let rest = t.free & !s;
                if s & !pos == 0 && rest & !hat == 0 {
                    total += if rest.count_ones() % 2 == 0 { 1 } else { -1 };
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & t.free;
            }
        }
        total
    }
}

/// Raw count `Σ Γ^G_M(H, Y)` over `H ∈ (1/k) R` for a positive set.
pub fn count_on_lattice(y: &OrthogonalSet, k: u32) -> Result<i64> {
    let levi = y.levi();
    let a = levi.dim();
    if a == 0 {
        return gamma_mg(y, &vec![Q::zero(); levi.fan().system().ambient_dim()]);
    }
    let pts = lattice_points(y);
    let kq = q(k as i64);
    let to_i64 = |x: BigInt| num::ToPrimitive::to_i64(&x).ok_or_else(|| Error::Invalid("count box too large".into()));
    let mut lo = Vec::with_capacity(a);
    let mut hi = Vec::with_capacity(a);
    for i in 0..a {
        let min = pts.iter().map(|p| &p[i] * &kq).min().expect("points");
        let max = pts.iter().map(|p| &p[i] * &kq).max().expect("points");
        lo.push(to_i64(min.ceil().to_integer())? - 1);
        hi.push(to_i64(max.floor().to_integer())? + 1);
    }
    let ev = LatticeGamma::new(y, k)?;
    let slices: Vec<i64> = (lo[0]..=hi[0])
        .into_par_iter()
        .map(|c0| {
            let mut cur = lo.clone();
            cur[0] = c0;
            let mut total = 0i64;
            loop {
                let v = ev.eval(&cur);
                if v != 0 && cur.iter().zip(&lo).zip(&hi).any(|((c, l), h)| c == l || c == h) {
                    let h = levi.lattice().basis().to_rat().mul_vec(&cur.iter().map(|&c| qf(c, k as i64)).collect::<Vec<_>>());
                    return Err(Error::Inconsistent(format!("Γ is nonzero outside the hull at {}", fmt_vec(&h))));
                }
                total += v;
                // odometer over the remaining coordinates
                let mut i = 1;
                loop {
                    if i == a {
                        return Ok(total);
                    }
                    if cur[i] < hi[i] {
                        cur[i] += 1;
                        break;
                    }
                    cur[i] = lo[i];
                    i += 1;
                }
            }
        })
        .collect::<Result<_>>()?;
    Ok(slices.iter().sum())
}

/// Closed-hull lattice count, an independent oracle for positive sets.
pub fn hull_count(y: &OrthogonalSet, k: u32) -> i64 {
    let pts = lattice_points(y);
    let a = y.levi().dim();
    let kq = q(k as i64);
    let scaled: Vec<Vector> = pts.iter().map(|p| scale(&kq, p)).collect();
    let hull = Hull::new(&scaled);
    let lo: Vec<BigInt> = (0..a)
        .map(|i| {
            scaled
                .iter()
                .map(|p| p[i].ceil().to_integer())
                .min()
                .unwrap()
        })
        .collect();
    let hi: Vec<BigInt> = (0..a)
        .map(|i| {
            scaled
                .iter()
                .map(|p| p[i].floor().to_integer())
                .max()
                .unwrap()
        })
        .collect();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return 0;
    }
    let mut cur = lo.clone();
    let mut n = 0;
    loop {
        let p: Vector = cur.iter().map(qi).collect();
        n += hull.contains(&p) as i64;
        let mut i = 0;
        loop {
            if i == a {
                return n;
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i].clone();
            i += 1;
        }
    }
}

/// `f(j) = P_{j mod period}(j)` with `coeffs[r][e]` the coefficient of `j^e`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuasiPolynomial {
    pub period: usize,
    #[serde(serialize_with = "ser_q_mat")]
    pub coeffs: Vec<Vec<Q>>,
}

impl QuasiPolynomial {
    pub fn eval(&self, j: i64) -> Q {
        let r = j.rem_euclid(self.period as i64) as usize;
        let x = q(j);
        self.coeffs[r]
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * &x + c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(|c| c.iter().rposition(|x| !x.is_zero()))
            .max()
            .unwrap_or(0)
    }

    /// Constant term of the purely polynomial part: the average over
    /// residues of each constituent's value at 0.
    pub fn polynomial_constant_term(&self) -> Q {
        let s: Q = self
            .coeffs
            .iter()
            .map(|c| c.first().cloned().unwrap_or_else(Q::zero))
            .sum();
        s / q(self.period as i64)
    }
}

/// Smallest period `p ≤ max_period` for which each residue class of the
/// samples `values[j]` (at `j = 0, 1, ..`) is matched by a polynomial of
/// degree `≤ max_degree`, with at least one sample per class left over to
/// confirm the fit.
pub fn fit_quasi_polynomial(
    values: &[Q],
    max_period: usize,
    max_degree: usize,
) -> Result<QuasiPolynomial> {
    for p in 1..=max_period.max(1) {
        let mut coeffs = Vec::with_capacity(p);
        let mut ok = true;
        for r in 0..p {
            let js: Vec<usize> = (r..values.len()).step_by(p).collect();
            if js.len() < max_degree + 2 {
                ok = false;
                break;
            }
            let d = max_degree + 1;
            let rows: Vec<Vector> = js[..d]
                .iter()
                .map(|&j| (0..d).map(|e| num::pow(q(j as i64), e)).collect())
                .collect();
            let rhs: Vector = js[..d].iter().map(|&j| values[j].clone()).collect();
            let c = RatMatrix::from_rows(&rows)
                .solve(&rhs)
                .ok_or_else(|| Error::Interpolation("singular Vandermonde system".into()))?;
            let fits = js[d..].iter().all(|&j| {
                let x = q(j as i64);
                c.iter().rev().fold(Q::zero(), |acc, v| acc * &x + v) == values[j]
            });
            if !fits {
                ok = false;
                break;
            }
            coeffs.push(c);
        }
        if ok {
            return Ok(QuasiPolynomial { period: p, coeffs });
        }
    }
    let needed = max_degree + 2;
    if values.len() < needed {
        return Err(Error::Interpolation(format!(
            "{} samples, need at least {needed}",
            values.len()
        )));
    }
    Err(Error::Interpolation(format!(
        "no quasi-polynomial of period <= {max_period} and degree <= {max_degree} fits {} samples",
        values.len()
    )))
}

/// Constant term of the purely polynomial part of the fitted quasi-polynomial.
pub fn exp_poly_constant_term(values: &[Q], max_period: usize, max_degree: usize) -> Result<Q> {
    Ok(fit_quasi_polynomial(values, max_period, max_degree)?.polynomial_constant_term())
}

/// Least common denominator of the lattice coordinates of every `Y[X₀]_P`,
/// which bounds the period of the counts along the dilation.
pub fn dilation_period(y: &OrthogonalSet, x0: &[Q]) -> Result<usize> {
    let s = OrthogonalSet::special(y.levi().clone(), x0)?;
    let mut l = BigInt::one();
    for p in lattice_points(&s) {
        for c in p {
            l = l.lcm(c.denom());
        }
    }
    num::ToPrimitive::to_usize(&l).ok_or_else(|| Error::Invalid("period too large".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct EhrhartRow {
    pub refinement: u32,
    pub counts: Vec<i64>,
    pub fit: QuasiPolynomial,
    #[serde(serialize_with = "ser_q")]
    pub constant_term: Q,
    /// `constant_term / refinement^a`.
    #[serde(serialize_with = "ser_q")]
    pub normalized: Q,
    /// `|normalized - volume|`.
    #[serde(serialize_with = "ser_q")]
    pub error: Q,
}

/// Counts for `j = 0..samples` at each refinement `1..=max_refinement`,
/// fitted and compared with `volume`.
pub fn ehrhart_table(
    y: &OrthogonalSet,
    x0: &[Q],
    volume: &Q,
    max_refinement: u32,
    samples: usize,
) -> Result<Vec<EhrhartRow>> {
    let a = y.levi().dim();
    let period = dilation_period(y, x0)?;
    let mut rows = Vec::new();
    for k in 1..=max_refinement {
        let counts: Vec<i64> = (0..samples as u32)
            .map(|j| v_tilde_lattice(y, k, j, x0))
            .collect::<Result<_>>()?;
        let values: Vec<Q> = counts.iter().map(|&c| q(c)).collect();
        let fit = fit_quasi_polynomial(&values, period, a)?;
        let constant_term = fit.polynomial_constant_term();
        let normalized = &constant_term / num::pow(q(k as i64), a);
        let error = (&normalized - volume).abs();
        rows.push(EhrhartRow {
            refinement: k,
            counts,
            fit,
            constant_term,
            normalized,
            error,
        });
    }
    Ok(rows)
}

/// Smallest `c` with `error_k ≤ c / k` for every row.
pub fn fitted_constant(rows: &[EhrhartRow]) -> Q {
    rows.iter()
        .map(|r| &r.error * q(r.refinement as i64))
        .max()
        .unwrap_or_else(Q::zero)
}

/// `w_1 + .. + w_a + 1` for bounding-box widths `w_i` of the hull in lattice
/// coordinates: a perimeter-type bound on `k |count/k^a - volume|` for
/// convex bodies in rank at most 2.
pub fn a_priori_constant(y: &OrthogonalSet) -> Q {
    let pts = lattice_points(y);
    let a = y.levi().dim();
    let mut s = Q::one();
    for i in 0..a {
        let min = pts.iter().map(|p| p[i].clone()).min().unwrap();
        let max = pts.iter().map(|p| p[i].clone()).max().unwrap();
        s += max - min;
    }
    s
}

/// Whether all entries are integers.
pub fn is_integral(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_integer())
}
