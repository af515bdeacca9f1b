//! Orthogonal sets: chamber-indexed points whose differences across each
//! wall are multiples of the wall's coroot.

use std::sync::Arc;

use num::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fixtures::{parse_vector, vector_to_json};
use crate::linalg::rational::{
    add, fmt_vec, is_zero_vec, proportional, q, qf, scale, sub, Vector, Q,
};
use crate::linalg::RatMatrix;
use crate::roots::{Levi, RestrictedRootSystem, SystemFixture, ThetaLeviPoset};

/// One wall crossing `P -> P'` with `Y_P - Y_P' = r α^∨`.
#[derive(Clone, Debug, PartialEq)]
pub struct Crossing {
    pub from: usize,
    pub to: usize,
    /// Index of the simple root of `from` whose wall is crossed.
    pub simple: usize,
    pub r: Q,
}

#[derive(Clone, Debug)]
pub struct OrthogonalSet {
    levi: Arc<Levi>,
    points: Vec<Vector>,
    crossings: Vec<Crossing>,
}

impl OrthogonalSet {
    /// `points[p]` is `Y_P` for chamber `p` of `levi`, in ambient coordinates.
    pub fn new(levi: Arc<Levi>, points: Vec<Vector>) -> Result<Self> {
        let n = levi.fan().system().ambient_dim();
        if points.len() != levi.num_chambers() {
            return Err(Error::Invalid(format!(
                "{} points for {} chambers",
                points.len(),
                levi.num_chambers()
            )));
        }
        for (p, y) in points.iter().enumerate() {
            if y.len() != n {
                return Err(Error::Invalid(format!(
                    "point {p} has length {}, expected {n}",
                    y.len()
                )));
            }
            if !levi.contains(y) {
                return Err(Error::Invalid(format!(
                    "point {p} = {} is not in A_M",
                    fmt_vec(y)
                )));
            }
        }
        let mut crossings = Vec::new();
        for p in 0..levi.num_chambers() {
            let ch = levi.chamber(p);
            for (i, &o) in ch.neighbor.iter().enumerate() {
                let d = sub(&points[p], &points[o]);
                let r = if is_zero_vec(&d) {
                    Q::zero()
                } else {
                    proportional(&d, &ch.simple[i].coroot).ok_or_else(|| {
                        Error::NotOrthogonal(format!(
                            "Y_{p} - Y_{o} = {} is not a multiple of {}",
                            fmt_vec(&d),
                            fmt_vec(&ch.simple[i].coroot)
                        ))
                    })?
                };
                crossings.push(Crossing {
                    from: p,
                    to: o,
                    simple: i,
                    r,
                });
            }
        }
        Ok(OrthogonalSet {
            levi,
            points,
            crossings,
        })
    }

    /// The special set `Y[X]`: `Y_P` is the projection to `A_M` of `w X` for
    /// any base chamber `w C_0` inside `P`.
    pub fn special(levi: Arc<Levi>, x: &[Q]) -> Result<Self> {
        let fan = levi.fan().clone();
        if x.len() != fan.system().ambient_dim() {
            return Err(Error::Invalid("base point has the wrong length".into()));
        }
        let mut points = Vec::with_capacity(levi.num_chambers());
        for p in 0..levi.num_chambers() {
            let base = levi.face(p).base;
            let c = (0..fan.num_chambers())
                .find(|&c| fan.parabolic_le(c, base))
                .expect("chamber below");
            points.push(levi.project(&fan.weyl()[c].mul_vec(x)));
        }
        Self::new(levi, points)
    }

    pub fn zero(levi: Arc<Levi>) -> Self {
        let n = levi.fan().system().ambient_dim();
        let points = vec![vec![Q::zero(); n]; levi.num_chambers()];
        Self::new(levi, points).expect("zero set is orthogonal")
    }

    pub fn levi(&self) -> &Arc<Levi> {
        &self.levi
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn point(&self, p: usize) -> &Vector {
        &self.points[p]
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn is_positive(&self) -> bool {
        self.crossings.iter().all(|c| !c.r.is_negative())
    }

    pub fn require_positive(&self) -> Result<()> {
        match self.crossings.iter().find(|c| c.r.is_negative()) {
            Some(c) => Err(Error::NotPositive(format!(
                "r = {} across chambers {} and {}",
                c.r, c.from, c.to
            ))),
            None => Ok(()),
        }
    }

    /// `Y_Q`: the projection of `Y_P` onto `A_Q` for a chamber `P ⊆ Q`.
    pub fn face_point(&self, q: usize) -> Vector {
        let f = self.levi.face(q);
        if q < self.levi.num_chambers() {
            return self.points[q].clone();
        }
        self.levi.face_proj(q).mul_vec(&self.points[f.chamber])
    }

    /// Pointwise sum with an orthogonal set on the same Levi.
    pub fn plus(&self, other: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&self.levi, &other.levi) && self.levi.base_face() != other.levi.base_face()
        {
            return Err(Error::Invalid(
                "orthogonal sets live on different Levis".into(),
            ));
        }
        let pts = self
            .points
            .iter()
            .zip(&other.points)
            .map(|(a, b)| add(a, b))
            .collect();
        Self::new(self.levi.clone(), pts)
    }

    pub fn scaled(&self, t: &Q) -> Self {
        let pts = self.points.iter().map(|y| scale(t, y)).collect();
        Self::new(self.levi.clone(), pts).expect("scaling preserves orthogonality")
    }

    /// Adds `v ∈ A_M` to every point.
    pub fn translated(&self, v: &[Q]) -> Result<Self> {
        let pts = self.points.iter().map(|y| add(y, v)).collect();
        Self::new(self.levi.clone(), pts)
    }

    /// The family `(Y_Q)` for the chambers `Q` of a larger Levi `L`.
    pub fn induce(&self, l: Arc<Levi>) -> Result<Self> {
        let mut pts = Vec::with_capacity(l.num_chambers());
        for p in 0..l.num_chambers() {
            let q = self.levi.local_id(l.face(p).base).ok_or_else(|| {
                Error::Incompatible("the target Levi subspace is not inside A_M".into())
            })?;
            pts.push(self.face_point(q));
        }
        Self::new(l, pts)
    }

    /// Every orthogonal set is a combination of these, in lattice coordinates.
    pub fn orthogonal_basis(levi: &Levi) -> Vec<Vec<Vector>> {
        let a = levi.dim();
        let n_ch = levi.num_chambers();
        if a == 0 {
            return vec![vec![Vec::new(); n_ch]];
        }
        let mut rows: Vec<Vector> = Vec::new();
        for p in 0..n_ch {
            let ch = levi.chamber(p);
            for (i, &o) in ch.neighbor.iter().enumerate() {
                if o < p {
                    continue;
                }
                let v = levi.lattice_coords(&ch.simple[i].coroot);
                for ell in RatMatrix::from_rows(&[v]).nullspace() {
                    let mut row = vec![Q::zero(); n_ch * a];
                    for k in 0..a {
                        row[p * a + k] = ell[k].clone();
                        row[o * a + k] = -ell[k].clone();
                    }
                    rows.push(row);
                }
            }
        }
        let null = if rows.is_empty() {
            let id = RatMatrix::identity(n_ch * a);
            (0..n_ch * a).map(|i| id.row(i)).collect()
        } else {
            RatMatrix::from_rows(&rows).nullspace()
        };
        null.into_iter()
            .map(|v| v.chunks(a).map(|c| c.to_vec()).collect())
            .collect()
    }

    /// A random orthogonal set with small rational lattice coordinates.
    pub fn random<R: Rng>(levi: Arc<Levi>, rng: &mut R) -> Self {
        let basis = Self::orthogonal_basis(&levi);
        let a = levi.dim();
        let mut coords = vec![vec![Q::zero(); a]; levi.num_chambers()];
        for b in &basis {
            let c = q(rng.gen_range(-3..=3));
            for (acc, v) in coords.iter_mut().zip(b) {
                *acc = add(acc, &scale(&c, v));
            }
        }
        let pts = coords.iter().map(|c| levi.from_lattice_coords(c)).collect();
        Self::new(levi, pts).expect("combination of orthogonal sets")
    }

    /// A random positive set: `Y[X]` for a random regular dominant lattice
    /// point `X`, perturbed by a random orthogonal set small enough to keep
    /// every crossing nonnegative.
    pub fn random_positive<R: Rng>(levi: Arc<Levi>, rng: &mut R) -> Self {
        let x = random_dominant(levi.fan(), rng);
        let base = Self::special(levi.clone(), &x).expect("special set");
        let z = Self::random(levi, rng);
        let mut eps = Q::one();
        loop {
            let y = base.plus(&z.scaled(&eps)).expect("same Levi");
            if y.is_positive() {
                return y;
            }
            eps *= qf(1, 2);
        }
    }

    /// A random orthogonal set with at least one negative crossing (when the
    /// Levi has a wall at all).
    pub fn random_non_positive<R: Rng>(levi: Arc<Levi>, rng: &mut R) -> Self {
        for _ in 0..16 {
            let y = Self::random(levi.clone(), rng);
            if !y.is_positive() {
                return y;
            }
        }
        let x = random_dominant(levi.fan(), rng);
        let neg: Vector = x.iter().map(|v| -v).collect();
        Self::special(levi, &neg).expect("special set")
    }

    pub fn to_fixture(
        &self,
        system: &RestrictedRootSystem,
        levi: Option<Vec<usize>>,
    ) -> OrthoFixture {
        OrthoFixture {
            system: SystemSpec::Fixture(system.to_fixture()),
            levi,
            points: self
                .points
                .iter()
                .map(|y| match vector_to_json(y) {
                    Value::Array(v) => v,
                    _ => unreachable!(),
                })
                .collect(),
        }
    }
}

/// Random point of `A_M` whose lattice coordinates lie in `[-6, 6]` with
/// denominator `den`.
pub fn random_point<R: Rng>(levi: &Levi, rng: &mut R, den: i64) -> Vector {
    let c: Vector = (0..levi.dim())
        .map(|_| qf(rng.gen_range(-6 * den..=6 * den), den))
        .collect();
    levi.from_lattice_coords(&c)
}

/// Random `X` with every simple root taking a value in `1..=4`.
pub fn random_dominant<R: Rng>(fan: &ThetaLeviPoset, rng: &mut R) -> Vector {
    let sys = fan.system();
    let r = sys.rank();
    let simple = RatMatrix::from_rows(&(0..r).map(|i| sys.root(i).clone()).collect::<Vec<_>>());
    let target: Vector = (0..r).map(|_| q(rng.gen_range(1..=4))).collect();
    simple.solve(&target).expect("simple roots span")
}

/// The `X` with every simple root equal to 1.
pub fn unit_dominant(fan: &ThetaLeviPoset) -> Vector {
    let sys = fan.system();
    let r = sys.rank();
    let simple = RatMatrix::from_rows(&(0..r).map(|i| sys.root(i).clone()).collect::<Vec<_>>());
    simple.solve(&vec![Q::one(); r]).expect("simple roots span")
}

/// A built-in name or an explicit system.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemSpec {
    Name(String),
    Fixture(SystemFixture),
}

impl SystemSpec {
    pub fn build(&self) -> Result<RestrictedRootSystem> {
        match self {
            SystemSpec::Name(n) => RestrictedRootSystem::builtin(n),
            SystemSpec::Fixture(f) => f.build(),
        }
    }
}

/// JSON form: `{"system": "A2", "levi": [0], "points": [["1", "2"], ...]}`.
///
/// `levi` lists the simple roots cutting out `A_M` (default: none, the
/// minimal Levi). `points` are in ambient coordinates, one per chamber in
/// the crate's chamber order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrthoFixture {
    pub system: SystemSpec,
    #[serde(default)]
    pub levi: Option<Vec<usize>>,
    pub points: Vec<Vec<Value>>,
}

impl OrthoFixture {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn build(&self) -> Result<OrthogonalSet> {
        let sys = self.system.build()?;
        let fan = Arc::new(ThetaLeviPoset::new(sys));
        let levi = Arc::new(Levi::standard(fan, self.levi.as_deref().unwrap_or(&[]))?);
        let pts = self
            .points
            .iter()
            .map(|p| parse_vector(p))
            .collect::<Result<Vec<_>>>()?;
        OrthogonalSet::new(levi, pts)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::linalg::rational::vec_from_i64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn levi(name: &str, j: &[usize]) -> Arc<Levi> {
        let fan = Arc::new(ThetaLeviPoset::new(
            RestrictedRootSystem::builtin(name).unwrap(),
        ));
        Arc::new(Levi::standard(fan, j).unwrap())
    }

    #[test]
    fn rank_one_sets() {
        let m = levi("A1", &[]);
        let y = OrthogonalSet::new(m.clone(), vec![vec![q(3)], vec![q(-1)]]).unwrap();
        assert!(y.is_positive());
        assert_eq!(y.crossings()[0].r, q(4));
        let y = OrthogonalSet::new(m, vec![vec![q(-1)], vec![q(3)]]).unwrap();
        assert!(!y.is_positive());
        assert!(y.require_positive().is_err());
    }

    #[test]
    fn special_sets_are_orthogonal_and_positive() {
        for name in ["A2", "B2", "G2", "A3", "BC2"] {
            let m = levi(name, &[]);
            let r = m.fan().system().rank();
            let x = vec![q(1); r];
            let x = RatMatrix::from_rows(
                &(0..r)
                    .map(|i| m.fan().system().root(i).clone())
                    .collect::<Vec<_>>(),
            )
            .solve(&x)
            .unwrap();
            let y = OrthogonalSet::special(m, &x).unwrap();
            assert!(y.is_positive(), "{name}");
            assert!(y.crossings().iter().all(|c| c.r.is_positive()));
        }
    }

    #[test]
    fn non_orthogonal_rejected() {
        let m = levi("A2", &[]);
        let mut pts = OrthogonalSet::special(m.clone(), &vec_from_i64(&[1, 1]))
            .unwrap()
            .points()
            .to_vec();
        pts[0][0] += q(1);
        assert!(matches!(
            OrthogonalSet::new(m, pts),
            Err(Error::NotOrthogonal(_))
        ));
    }

    #[test]
    fn random_sets_and_induction() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = levi("A3", &[]);
        let l = levi("A3", &[0, 2]);
        let basis = OrthogonalSet::orthogonal_basis(&m);
        // contains the special sets and the translations
        assert!(basis.len() >= 6);
        for _ in 0..5 {
            let y = OrthogonalSet::random_positive(m.clone(), &mut rng);
            assert!(y.is_positive());
            let z = y.induce(l.clone()).unwrap();
            assert!(z.is_positive());
            let n = OrthogonalSet::random_non_positive(m.clone(), &mut rng);
            assert!(!n.is_positive());
            n.induce(l.clone()).unwrap();
        }
    }

    #[test]
    fn fixture_round_trip() {
        let f = OrthoFixture::from_json(r#"{"system": "A1", "points": [["3"], [-1]]}"#).unwrap();
        let y = f.build().unwrap();
        assert_eq!(y.points()[0], vec![q(3)]);
        let sys = y.levi().fan().system().clone();
        let s = serde_json::to_string(&y.to_fixture(&sys, None)).unwrap();
        let back = OrthoFixture::from_json(&s).unwrap().build().unwrap();
        assert_eq!(back.points(), y.points());
    }
}
