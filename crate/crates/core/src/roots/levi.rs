//! Levi-level data: the fan of `A_M` obtained by slicing the base fan, the
//! restricted roots and coroots, and the simple roots and dual bases of each
//! chamber.

use std::cmp::Reverse;
use std::collections::HashMap;
use std::sync::Arc;

use num::{One, Signed, Zero};

use super::fan::ThetaLeviPoset;
use crate::error::{Error, Result};
use crate::linalg::rational::{dot, fmt_vec, proportional, scale, Vector, Q};
use crate::linalg::{integer_kernel, IntLattice, IntMatrix, RatMatrix};

#[derive(Clone, Debug)]
pub struct SimpleRoot {
    /// Restricted root as a covector on `A_0` vanishing on `A_0^M`.
    pub root: Vector,
    /// Its restricted coroot, a vector in `A_M`.
    pub coroot: Vector,
    /// Local id of the wall of the chamber on which the root vanishes.
    pub wall: usize,
}

#[derive(Clone, Debug)]
pub struct LeviChamber {
    pub simple: Vec<SimpleRoot>,
    /// Local face on which exactly the simple roots in `mask` vanish.
    pub faces_by_mask: Vec<usize>,
    /// `varpi[mask][i]`: the dual weight of simple root `i` relative to the
    /// face `faces_by_mask[mask]` (zero when `i` is not in `mask`).
    pub varpi: Vec<Vec<Vector>>,
    /// `neighbor[i]`: the chamber across the wall of simple root `i`.
    pub neighbor: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct LeviFace {
    pub base: usize,
    pub dim: usize,
    /// A chamber whose closure contains this face.
    pub chamber: usize,
    /// Simple roots of `chamber` vanishing on this face.
    pub mask: usize,
    /// Faces `R` with `R ⊆ Q` as parabolics (this face lies in the closure of `R`).
    pub below: Vec<usize>,
}

/// Summary of one chamber as a parabolic cone.
#[derive(Clone, Debug)]
pub struct ParabolicCone {
    pub levi_subspace: Vec<Vector>,
    pub positive_roots: Vec<Vector>,
    pub simple: Vec<Vector>,
    pub simple_coroots: Vec<Vector>,
    pub dual_basis: Vec<Vector>,
}

/// A Levi subspace `A_M` of the base fan with all derived combinatorics.
#[derive(Clone, Debug)]
pub struct Levi {
    fan: Arc<ThetaLeviPoset>,
    base_face: usize,
    basis: Vec<Vector>,
    proj: RatMatrix,
    m_coroots: Vec<Vector>,
    faces: Vec<LeviFace>,
    n_chambers: usize,
    chambers: Vec<LeviChamber>,
    local: HashMap<usize, usize>,
    roots: Vec<Vector>,
    coroots: Vec<Vector>,
    lattice: IntLattice,
}

impl Levi {
    /// The minimal Levi (`A_M = A_0`).
    pub fn minimal(fan: Arc<ThetaLeviPoset>) -> Result<Self> {
        Self::new(fan, 0)
    }

    /// The standard Levi whose `A_M` is cut out by the simple roots in `j`.
    pub fn standard(fan: Arc<ThetaLeviPoset>, j: &[usize]) -> Result<Self> {
        if j.iter().any(|&i| i >= fan.system().rank()) {
            return Err(Error::Invalid(format!(
                "simple root index out of range in {j:?}"
            )));
        }
        let face = fan.standard_face(j);
        Self::new(fan, face)
    }

    /// Levi whose `A_M` is the span of base cone `face`.
    pub fn new(fan: Arc<ThetaLeviPoset>, face: usize) -> Result<Self> {
        let sys = fan.system();
        let n = sys.ambient_dim();
        let cone = fan.cone(face).clone();
        let a = cone.dim;
        let basis = cone.basis.clone();
        let proj = cone.proj.clone();
        let pt = proj.transpose();
        let m_coroots: Vec<Vector> = cone
            .vanishing
            .iter()
            .map(|&i| sys.coroot(i).clone())
            .collect();

        // faces of the sliced fan
        let mut ids: Vec<usize> = (0..fan.num_cones())
            .filter(|&c| {
                cone.vanishing
                    .iter()
                    .all(|v| fan.cone(c).vanishing.contains(v))
            })
            .collect();
        ids.sort_by_key(|&c| (Reverse(fan.cone(c).dim), c != face, c));
        let local: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let n_chambers = ids.iter().take_while(|&&c| fan.cone(c).dim == a).count();

        // restricted roots
        let mut roots: Vec<Vector> = Vec::new();
        for i in 0..sys.num_roots() {
            if cone.vanishing.contains(&i) {
                continue;
            }
            let l = pt.mul_vec(sys.root(i));
            if !roots.contains(&l) {
                roots.push(l);
            }
        }

        // normalization lattice A_M ∩ L
        let lb = sys.lattice().basis().to_rat();
        let lattice = if a == n {
            sys.lattice().clone()
        } else {
            let rows: Vec<Vector> = cone
                .vanishing
                .iter()
                .map(|&i| lb.vec_mul(sys.root(i)))
                .collect();
            let int_rows: Vec<Vec<i64>> = rows.iter().map(|r| integral_row(r)).collect();
            let ker = integer_kernel(&IntMatrix::from_rows_i64(&int_rows));
            let lbi = sys.lattice().basis();
            let cols: Vec<Vec<_>> = ker
                .iter()
                .map(|c| (lbi * &IntMatrix::from_cols(c.len(), std::slice::from_ref(c))).col(0))
                .collect();
            IntLattice::new(IntMatrix::from_cols(n, &cols))?
        };

        let mut levi = Levi {
            fan: fan.clone(),
            base_face: face,
            basis,
            proj,
            m_coroots,
            faces: Vec::new(),
            n_chambers,
            chambers: Vec::new(),
            local,
            roots,
            coroots: Vec::new(),
            lattice,
        };
        levi.coroots = levi.compute_coroots()?;

        let mut chambers = Vec::with_capacity(n_chambers);
        for p in 0..n_chambers {
            chambers.push(levi.build_chamber(&ids, p)?);
        }
        for p in 0..n_chambers {
            let mut nb = Vec::with_capacity(a);
            for s in &chambers[p].simple {
                let other = (0..n_chambers)
                    .find(|&o| o != p && fan.parabolic_le(ids[o], ids[s.wall]))
                    .ok_or_else(|| Error::Invalid(format!("wall {} bounds one chamber", s.wall)))?;
                nb.push(other);
            }
            chambers[p].neighbor = nb;
        }
        levi.chambers = chambers;

        let mut faces = Vec::with_capacity(ids.len());
        for (qi, &c) in ids.iter().enumerate() {
            let point = &fan.cone(c).point;
            let chamber = (0..n_chambers)
                .find(|&p| fan.parabolic_le(ids[p], c))
                .ok_or_else(|| Error::Invalid(format!("face {qi} is in no chamber closure")))?;
            let mask = levi.chambers[chamber]
                .simple
                .iter()
                .enumerate()
                .filter(|(_, s)| dot(&s.root, point).is_zero())
                .fold(0usize, |m, (i, _)| m | 1 << i);
            let below = (0..ids.len())
                .filter(|&r| fan.parabolic_le(ids[r], c))
                .collect();
            faces.push(LeviFace {
                base: c,
                dim: fan.cone(c).dim,
                chamber,
                mask,
                below,
            });
        }
        levi.faces = faces;
        Ok(levi)
    }

    fn build_chamber(&self, ids: &[usize], p: usize) -> Result<LeviChamber> {
        let fan = &self.fan;
        let a = self.dim();
        let x = &fan.cone(ids[p]).point;
        let mut simple = Vec::new();
        for (w, &c) in ids.iter().enumerate() {
            if fan.cone(c).dim + 1 != a || !fan.parabolic_le(ids[p], c) {
                continue;
            }
            let wp = &fan.cone(c).point;
            let cands: Vec<usize> = (0..self.roots.len())
                .filter(|&k| {
                    dot(&self.roots[k], wp).is_zero() && dot(&self.roots[k], x).is_positive()
                })
                .collect();
            let k = *cands
                .iter()
                .find(|&&k| {
                    cands.iter().all(|&j| {
                        proportional(&self.roots[j], &self.roots[k])
                            .is_some_and(|c| c >= Q::one())
                    })
                })
                .ok_or_else(|| Error::Invalid("wall without a reduced root".into()))?;
            simple.push(SimpleRoot {
                root: self.roots[k].clone(),
                coroot: self.coroots[k].clone(),
                wall: w,
            });
        }
        if simple.len() != a {
            return Err(Error::Invalid(format!(
                "chamber {p} has {} walls, expected {a}",
                simple.len()
            )));
        }

        let n = self.fan.system().ambient_dim();
        let bm = RatMatrix::from_cols(n, &self.basis);
        let sm = RatMatrix::from_rows(
            &simple
                .iter()
                .map(|s| bm.vec_mul(&s.root))
                .collect::<Vec<_>>(),
        );
        let mut faces_by_mask = Vec::with_capacity(1 << a);
        let mut varpi = Vec::with_capacity(1 << a);
        for mask in 0..(1usize << a) {
            let target: Vector = (0..a)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Q::zero()
                    } else {
                        Q::one()
                    }
                })
                .collect();
            let c = sm.solve(&target).expect("simple roots independent on A_M");
            let y = bm.mul_vec(&c);
            let f = self.local[&fan.facet_of(&y)];
            faces_by_mask.push(f);

            // dual weights: ϖ_i(α_j^∨) = δ_ij on mask, ϖ_i = 0 on A_Q and on A_0^M
            let members: Vec<usize> = (0..a).filter(|i| mask >> i & 1 == 1).collect();
            let mut cols: Vec<Vector> = members.iter().map(|&i| simple[i].coroot.clone()).collect();
            cols.extend(fan.cone(ids[f]).basis.iter().cloned());
            for v in &self.m_coroots {
                let mut trial = cols.clone();
                trial.push(v.clone());
                if RatMatrix::from_cols(n, &trial).rank() == trial.len() {
                    cols = trial;
                }
            }
            let t = RatMatrix::from_cols(n, &cols);
            let tinv = t
                .inverse()
                .ok_or_else(|| Error::Invalid("dual basis is degenerate".into()))?;
            let mut row = vec![vec![Q::zero(); n]; a];
            for (pos, &i) in members.iter().enumerate() {
                row[i] = tinv.row(pos);
            }
            varpi.push(row);
        }
        Ok(LeviChamber {
            simple,
            faces_by_mask,
            varpi,
            neighbor: Vec::new(),
        })
    }

    /// Smallest positive multiple of root `k` that is itself a root, with the ratio.
    fn indivisible(&self, k: usize) -> (usize, Q) {
        let mut best = (k, Q::one());
        for j in 0..self.roots.len() {
            if let Some(c) = proportional(&self.roots[k], &self.roots[j]) {
                if c > best.1 {
                    best = (j, c);
                }
            }
        }
        best
    }

    fn compute_coroots(&self) -> Result<Vec<Vector>> {
        let mut out: Vec<Option<Vector>> = vec![None; self.roots.len()];
        for k in 0..self.roots.len() {
            if self.indivisible(k).0 == k {
                let choices = self.coroot_choices(k)?;
                let first = choices[0].clone();
                if choices.iter().any(|c| *c != first) {
                    return Err(Error::Inconsistent(format!(
                        "coroot of {} depends on the chamber choice",
                        fmt_vec(&self.roots[k])
                    )));
                }
                out[k] = Some(first);
            }
        }
        // α = c α_0 gets α_0^∨ / c; for c = 2 this is the usual non-reduced rule
        for k in 0..self.roots.len() {
            if out[k].is_none() {
                let (j, c) = self.indivisible(k);
                out[k] = Some(scale(
                    &c.recip(),
                    out[j].as_ref().expect("indivisible root done"),
                ));
            }
        }
        Ok(out.into_iter().map(Option::unwrap).collect())
    }

    /// Coroot of the reduced restricted root `k` computed from every admissible
    /// minimal parabolic of the rank-one Levi `M_α`.
    fn coroot_choices(&self, k: usize) -> Result<Vec<Vector>> {
        let sys = self.fan.system();
        let pt = self.proj.transpose();
        let alpha = &self.roots[k];
        let restricted: Vec<Vector> = (0..sys.num_roots())
            .map(|i| pt.mul_vec(sys.root(i)))
            .collect();
        let sub: Vec<usize> = (0..sys.num_roots())
            .filter(|&i| {
                restricted[i].iter().all(Zero::is_zero)
                    || proportional(&restricted[i], alpha).is_some()
            })
            .collect();
        let up: Vec<usize> = sub
            .iter()
            .copied()
            .filter(|&i| proportional(&restricted[i], alpha).is_some_and(|c| c.is_positive()))
            .collect();

        let mut systems: Vec<Vec<usize>> = Vec::new();
        let mut out = Vec::new();
        for c in 0..self.fan.num_chambers() {
            let p = &self.fan.cone(c).point;
            if !up.iter().all(|&i| dot(sys.root(i), p).is_positive()) {
                continue;
            }
            let pos: Vec<usize> = sub
                .iter()
                .copied()
                .filter(|&i| dot(sys.root(i), p).is_positive())
                .collect();
            if systems.contains(&pos) {
                continue;
            }
            let simple: Vec<usize> = pos
                .iter()
                .copied()
                .filter(|&g| {
                    !pos.iter().any(|&g1| {
                        let rest: Vector = sys
                            .root(g)
                            .iter()
                            .zip(sys.root(g1))
                            .map(|(x, y)| x - y)
                            .collect();
                        sys.index_of(&rest).is_some_and(|g2| pos.contains(&g2))
                    })
                })
                .collect();
            let lifts: Vec<usize> = simple
                .iter()
                .copied()
                .filter(|&g| &restricted[g] == alpha)
                .collect();
            if lifts.len() != 1 {
                return Err(Error::Inconsistent(format!(
                    "{} simple roots lift {}",
                    lifts.len(),
                    fmt_vec(alpha)
                )));
            }
            out.push(self.proj.mul_vec(sys.coroot(lifts[0])));
            systems.push(pos);
        }
        if out.is_empty() {
            return Err(Error::Inconsistent(format!(
                "no chamber lifts {}",
                fmt_vec(alpha)
            )));
        }
        Ok(out)
    }

    pub fn fan(&self) -> &Arc<ThetaLeviPoset> {
        &self.fan
    }

    pub fn base_face(&self) -> usize {
        self.base_face
    }

    /// `a_M`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Projection `A_0 -> A_M`.
    pub fn proj(&self) -> &RatMatrix {
        &self.proj
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn num_chambers(&self) -> usize {
        self.n_chambers
    }

    pub fn face(&self, q: usize) -> &LeviFace {
        &self.faces[q]
    }

    pub fn faces(&self) -> &[LeviFace] {
        &self.faces
    }

    pub fn chamber(&self, p: usize) -> &LeviChamber {
        &self.chambers[p]
    }

    /// The cone `{0}`, i.e. `G`.
    pub fn origin(&self) -> usize {
        self.faces.len() - 1
    }

    /// Local id of the face for base cone `c`, if it lies in `A_M`.
    pub fn local_id(&self, c: usize) -> Option<usize> {
        self.local.get(&c).copied()
    }

    /// Projection onto the span of local face `q`, along its coroots.
    pub fn face_proj(&self, q: usize) -> &RatMatrix {
        &self.fan.cone(self.faces[q].base).proj
    }

    pub fn face_basis(&self, q: usize) -> &[Vector] {
        &self.fan.cone(self.faces[q].base).basis
    }

    pub fn face_point(&self, q: usize) -> &Vector {
        &self.fan.cone(self.faces[q].base).point
    }

    /// `H ∈ A_Q`.
    pub fn in_span(&self, q: usize, h: &[Q]) -> bool {
        self.fan
            .cone(self.faces[q].base)
            .contains_in_span(self.fan.system(), h)
    }

    pub fn contains(&self, h: &[Q]) -> bool {
        self.fan
            .cone(self.base_face)
            .contains_in_span(self.fan.system(), h)
    }

    /// Facet of the sliced fan containing `h ∈ A_M`.
    pub fn facet_of(&self, h: &[Q]) -> Result<usize> {
        if !self.contains(h) {
            return Err(Error::Invalid(format!("{} is not in A_M", fmt_vec(h))));
        }
        Ok(self.local[&self.fan.facet_of(h)])
    }

    /// Parabolic inclusion `R ⊆ Q` for local faces.
    pub fn parabolic_le(&self, r: usize, q: usize) -> bool {
        self.fan
            .parabolic_le(self.faces[r].base, self.faces[q].base)
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vector] {
        &self.coroots
    }

    pub fn root_index(&self, alpha: &[Q]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == alpha)
    }

    /// Restricted coroot of a root of `A_M` (given as a covector on `A_0`
    /// vanishing on `A_0^M`).
    pub fn restricted_coroot(&self, alpha: &[Q]) -> Result<Vector> {
        let k = self
            .root_index(alpha)
            .ok_or_else(|| Error::Invalid(format!("{} is not a root of A_M", fmt_vec(alpha))))?;
        Ok(self.coroots[k].clone())
    }

    /// The coroot obtained from each admissible chamber choice (indivisible roots only).
    pub fn restricted_coroot_choices(&self, alpha: &[Q]) -> Result<Vec<Vector>> {
        let k = self
            .root_index(alpha)
            .ok_or_else(|| Error::Invalid(format!("{} is not a root of A_M", fmt_vec(alpha))))?;
        self.coroot_choices(k)
    }

    /// Coordinates of `h ∈ A_M` in the normalization lattice basis.
    pub fn lattice_coords(&self, h: &[Q]) -> Vector {
        self.lattice.rational_coordinates(h).expect("point of A_M")
    }

    /// Point of `A_M` from lattice coordinates.
    pub fn from_lattice_coords(&self, c: &[Q]) -> Vector {
        self.lattice.basis().to_rat().mul_vec(c)
    }

    pub fn parabolic_cone(&self, p: usize) -> ParabolicCone {
        let x = self.face_point(p);
        let ch = &self.chambers[p];
        ParabolicCone {
            levi_subspace: self.basis.clone(),
            positive_roots: self
                .roots
                .iter()
                .filter(|r| dot(r, x).is_positive())
                .cloned()
                .collect(),
            simple: ch.simple.iter().map(|s| s.root.clone()).collect(),
            simple_coroots: ch.simple.iter().map(|s| s.coroot.clone()).collect(),
            dual_basis: ch.varpi[(1 << self.dim()) - 1].clone(),
        }
    }

    /// Projection onto `A_M` along `A_0^M`, as a standalone helper.
    pub fn project(&self, h: &[Q]) -> Vector {
        self.proj.mul_vec(h)
    }
}

fn integral_row(r: &[Q]) -> Vec<i64> {
    let l = r.iter().fold(num::BigInt::one(), |acc, x| {
        num::integer::lcm(acc, x.denom().clone())
    });
    r.iter()
        .map(|x| {
            let v = x * Q::from_integer(l.clone());
            crate::linalg::rational::to_i64(&v).expect("small root coordinates")
        })
        .collect()
}

/// Outcome of the direct-sum test `A_M^G = A_M^{G,θ} ⊕ A_M^L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DescentSupport {
    /// The coefficient `d(L)` may be nonzero.
    pub nonzero: bool,
    /// `A_M^{G,θ} = 0` and `L = G`, where the coefficient is known to be 1.
    pub coefficient_one: bool,
}

/// Direct-sum criterion for a subspace pair of an ambient space of dimension `dim`.
pub fn descent_support(dim: usize, theta_fixed: &[Vector], levi: &[Vector]) -> DescentSupport {
    let rank = |vs: &[Vector]| {
        if vs.is_empty() {
            0
        } else {
            RatMatrix::from_rows(vs).rank()
        }
    };
    let (r1, r2) = (rank(theta_fixed), rank(levi));
    let both: Vec<Vector> = theta_fixed.iter().chain(levi).cloned().collect();
    let nonzero = r1 + r2 == dim && rank(&both) == dim;
    DescentSupport {
        nonzero,
        coefficient_one: r1 == 0 && r2 == dim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{q, qf, vec_from_i64};
    use crate::roots::system::{RestrictedRootSystem, BUILTIN_NAMES};

    fn fan(name: &str) -> Arc<ThetaLeviPoset> {
        Arc::new(ThetaLeviPoset::new(
            RestrictedRootSystem::builtin(name).unwrap(),
        ))
    }

    #[test]
    fn minimal_levi_matches_root_system() {
        for name in BUILTIN_NAMES {
            let f = fan(name);
            let m = Levi::minimal(f.clone()).unwrap();
            assert_eq!(m.num_chambers(), f.num_chambers());
            assert_eq!(m.num_faces(), f.num_cones());
            for (i, r) in f.system().roots().iter().enumerate() {
                assert_eq!(
                    &m.restricted_coroot(r).unwrap(),
                    f.system().coroot(i),
                    "{name}"
                );
            }
        }
    }

    #[test]
    fn a2_corank_one_coroot() {
        let m = Levi::standard(fan("A2"), &[0]).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.num_chambers(), 2);
        assert_eq!(m.num_faces(), 3);
        assert_eq!(m.roots().len(), 2);
        let alpha = m.chamber(0).simple[0].root.clone();
        let choices = m.restricted_coroot_choices(&alpha).unwrap();
        assert_eq!(choices.len(), 2);
        assert!(choices.iter().all(|c| *c == vec![qf(1, 2), q(1)]));
        assert_eq!(dot(&alpha, &choices[0]), qf(3, 2));
        // A_M ∩ Z^2 = Z (1,2)
        assert_eq!(m.lattice().basis_vectors(), vec![vec_from_i64(&[1, 2])]);
    }

    #[test]
    fn bc1_nonreduced_coroot() {
        let m = Levi::minimal(fan("BC1")).unwrap();
        assert_eq!(m.restricted_coroot(&[q(4)]).unwrap(), vec![qf(1, 2)]);
        assert_eq!(m.chamber(0).simple[0].root, vec![q(2)]);
        assert!(m.restricted_coroot(&[q(3)]).is_err());
    }

    #[test]
    fn every_standard_levi_builds() {
        for name in BUILTIN_NAMES {
            let f = fan(name);
            let r = f.system().rank();
            for mask in 0..(1usize << r) {
                let j: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
                let m = Levi::standard(f.clone(), &j).unwrap();
                assert_eq!(m.dim(), r - j.len());
                for k in 0..m.roots().len() {
                    if m.indivisible(k).0 == k {
                        let ch = m.restricted_coroot_choices(&m.roots()[k].clone()).unwrap();
                        assert!(ch.iter().all(|c| *c == ch[0]));
                        assert!(dot(&m.roots()[k], &ch[0]).is_positive());
                    }
                }
            }
        }
    }

    #[test]
    fn dual_weights_are_dual() {
        for name in ["A2", "B2", "G2", "A3"] {
            let m = Levi::minimal(fan(name)).unwrap();
            let a = m.dim();
            for p in 0..m.num_chambers() {
                let ch = m.chamber(p);
                let full = &ch.varpi[(1 << a) - 1];
                for i in 0..a {
                    for j in 0..a {
                        let v = dot(&full[i], &ch.simple[j].coroot);
                        assert_eq!(v, if i == j { q(1) } else { q(0) });
                    }
                }
                for mask in 0..(1usize << a) {
                    let f = ch.faces_by_mask[mask];
                    assert_eq!(m.face(f).dim, a - mask.count_ones() as usize);
                    for b in m.face_basis(f) {
                        for i in 0..a {
                            assert!(dot(&ch.varpi[mask][i], b).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn neighbors_share_opposite_simple_coroot() {
        for (name, j) in [
            ("A2", vec![]),
            ("B2", vec![]),
            ("A3", vec![1]),
            ("G2", vec![0]),
            ("BC2", vec![]),
        ] {
            let m = Levi::standard(fan(name), &j).unwrap();
            for p in 0..m.num_chambers() {
                let ch = m.chamber(p);
                for (i, &o) in ch.neighbor.iter().enumerate() {
                    let neg: Vector = ch.simple[i].coroot.iter().map(|x| -x).collect();
                    assert!(
                        m.chamber(o).simple.iter().any(|s| s.coroot == neg),
                        "{name}"
                    );
                }
            }
        }
    }

    #[test]
    fn descent_support_examples() {
        let e1 = vec_from_i64(&[1, 0]);
        let e2 = vec_from_i64(&[0, 1]);
        let d = descent_support(2, &[], &[e1.clone(), e2.clone()]);
        assert!(d.nonzero && d.coefficient_one);
        assert!(!descent_support(2, std::slice::from_ref(&e1), std::slice::from_ref(&e1)).nonzero);
        let d = descent_support(2, &[e1], &[e2]);
        assert!(d.nonzero && !d.coefficient_one);
    }
}
