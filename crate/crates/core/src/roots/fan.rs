//! The fan cut out by the root hyperplanes, with its faces identified by
//! sign vectors.

use std::cmp::Reverse;
use std::collections::HashMap;

use num::{One, Zero};

use super::system::RestrictedRootSystem;
use crate::linalg::rational::{dot, sign, Vector, Q};
use crate::linalg::RatMatrix;

/// A face of the fan (a relatively open cone).
#[derive(Clone, Debug)]
pub struct Cone {
    /// Sign of each hyperplane root on the relative interior.
    pub sign: Vec<i8>,
    /// A point of the relative interior.
    pub point: Vector,
    pub dim: usize,
    /// Basis of the linear span.
    pub basis: Vec<Vector>,
    /// Indices of all roots vanishing on the span.
    pub vanishing: Vec<usize>,
    /// Projection onto the span along the coroots of the vanishing roots.
    pub proj: RatMatrix,
}

impl Cone {
    pub fn contains_in_span(&self, sys: &RestrictedRootSystem, h: &[Q]) -> bool {
        self.vanishing
            .iter()
            .all(|&i| dot(sys.root(i), h).is_zero())
    }
}

/// All faces of the root fan. Chambers come first, in the order of the Weyl
/// group elements mapping the dominant chamber to them.
#[derive(Clone, Debug)]
pub struct ThetaLeviPoset {
    sys: RestrictedRootSystem,
    weyl: Vec<RatMatrix>,
    words: Vec<Vec<usize>>,
    hyperplanes: Vec<usize>,
    cones: Vec<Cone>,
    index: HashMap<Vec<i8>, usize>,
}

impl ThetaLeviPoset {
    pub fn new(sys: RestrictedRootSystem) -> Self {
        let r = sys.rank();
        let hyperplanes = sys.hyperplanes();
        let (weyl, words) = weyl_group(&sys);

        let simple = RatMatrix::from_rows(&(0..r).map(|i| sys.root(i).clone()).collect::<Vec<_>>());
        let mut reps: Vec<(usize, Vector)> = Vec::new();
        for mask in 0..(1usize << r) {
            let target: Vector = (0..r)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Q::zero()
                    } else {
                        Q::one()
                    }
                })
                .collect();
            reps.push((
                mask.count_ones() as usize,
                simple.solve(&target).expect("simple roots span"),
            ));
        }

        let sign_of = |x: &[Q]| -> Vec<i8> {
            hyperplanes
                .iter()
                .map(|&h| sign(&dot(sys.root(h), x)))
                .collect()
        };
        let mut chambers: Vec<(Vec<i8>, Vector)> = Vec::new();
        let mut others: HashMap<Vec<i8>, (usize, Vector)> = HashMap::new();
        for (codim, x) in &reps {
            for w in &weyl {
                let y = w.mul_vec(x);
                let s = sign_of(&y);
                if *codim == 0 {
                    chambers.push((s, y));
                } else {
                    others.entry(s).or_insert((r - codim, y));
                }
            }
        }
        let mut rest: Vec<(Vec<i8>, (usize, Vector))> = others.into_iter().collect();
        rest.sort_by(|a, b| (Reverse(a.1 .0), &a.0).cmp(&(Reverse(b.1 .0), &b.0)));

        let mut cones = Vec::new();
        for (s, y) in chambers
            .into_iter()
            .chain(rest.into_iter().map(|(s, (_, y))| (s, y)))
        {
            cones.push(make_cone(&sys, s, y));
        }
        let index = cones
            .iter()
            .enumerate()
            .map(|(i, c)| (c.sign.clone(), i))
            .collect();
        ThetaLeviPoset {
            sys,
            weyl,
            words,
            hyperplanes,
            cones,
            index,
        }
    }

    pub fn system(&self) -> &RestrictedRootSystem {
        &self.sys
    }

    /// Weyl group elements as matrices on vectors.
    pub fn weyl(&self) -> &[RatMatrix] {
        &self.weyl
    }

    /// A reduced word in the simple reflections for each Weyl element.
    pub fn weyl_words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn hyperplanes(&self) -> &[usize] {
        &self.hyperplanes
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    pub fn num_cones(&self) -> usize {
        self.cones.len()
    }

    /// Chambers are cones `0..num_chambers()`; chamber `k` is `w_k` applied to chamber 0.
    pub fn num_chambers(&self) -> usize {
        self.weyl.len()
    }

    pub fn is_chamber(&self, i: usize) -> bool {
        i < self.weyl.len()
    }

    /// The cone `{0}`, i.e. the parabolic `G`.
    pub fn origin(&self) -> usize {
        self.cones.len() - 1
    }

    pub fn sign_vector(&self, h: &[Q]) -> Vec<i8> {
        self.hyperplanes
            .iter()
            .map(|&i| sign(&dot(self.sys.root(i), h)))
            .collect()
    }

    pub fn lookup(&self, sign: &[i8]) -> Option<usize> {
        self.index.get(sign).copied()
    }

    /// The cone whose relative interior contains `h`.
    pub fn facet_of(&self, h: &[Q]) -> usize {
        self.index[&self.sign_vector(h)]
    }

    /// Parabolic inclusion `P ⊆ Q`: the cone of `q` lies in the closure of the cone of `p`.
    pub fn parabolic_le(&self, p: usize, q: usize) -> bool {
        let (sp, sq) = (&self.cones[p].sign, &self.cones[q].sign);
        sp.iter().zip(sq).all(|(a, b)| *b == 0 || a == b)
    }

    /// Face of the closure of chamber 0 on which exactly the simple roots in `j` vanish.
    pub fn standard_face(&self, j: &[usize]) -> usize {
        let r = self.sys.rank();
        let simple =
            RatMatrix::from_rows(&(0..r).map(|i| self.sys.root(i).clone()).collect::<Vec<_>>());
        let target: Vector = (0..r)
            .map(|i| if j.contains(&i) { Q::zero() } else { Q::one() })
            .collect();
        self.facet_of(&simple.solve(&target).expect("simple roots span"))
    }

    /// One representative cone for each distinct linear span.
    pub fn levi_subspaces(&self) -> Vec<usize> {
        let mut seen: Vec<&Vec<usize>> = Vec::new();
        let mut out = Vec::new();
        for (i, c) in self.cones.iter().enumerate() {
            if !seen.contains(&&c.vanishing) {
                seen.push(&c.vanishing);
                out.push(i);
            }
        }
        out
    }
}

fn make_cone(sys: &RestrictedRootSystem, sign: Vec<i8>, point: Vector) -> Cone {
    let n = sys.ambient_dim();
    let vanishing: Vec<usize> = (0..sys.num_roots())
        .filter(|&i| dot(sys.root(i), &point).is_zero())
        .collect();
    let basis = if vanishing.is_empty() {
        let id = RatMatrix::identity(n);
        (0..n).map(|i| id.row(i)).collect()
    } else {
        RatMatrix::from_rows(
            &vanishing
                .iter()
                .map(|&i| sys.root(i).clone())
                .collect::<Vec<_>>(),
        )
        .nullspace()
    };
    let proj = projection(
        n,
        &basis,
        &vanishing
            .iter()
            .map(|&i| sys.coroot(i).clone())
            .collect::<Vec<_>>(),
    );
    Cone {
        dim: basis.len(),
        sign,
        point,
        basis,
        vanishing,
        proj,
    }
}

/// Projection onto `span(onto)` along `span(along)`; the two must be complementary.
pub fn projection(n: usize, onto: &[Vector], along: &[Vector]) -> RatMatrix {
    let mut cols: Vec<Vector> = onto.to_vec();
    for v in along {
        let mut trial = cols.clone();
        trial.push(v.clone());
        if RatMatrix::from_cols(n, &trial).rank() == trial.len() {
            cols = trial;
        }
    }
    assert_eq!(cols.len(), n, "subspaces are not complementary");
    let t = RatMatrix::from_cols(n, &cols);
    let tinv = t.inverse().expect("basis");
    let mut d = RatMatrix::zeros(n, n);
    for i in 0..onto.len() {
        d[(i, i)] = Q::one();
    }
    &(&t * &d) * &tinv
}

/// Breadth-first enumeration of `W` from the identity by right multiplication
/// with simple reflections.
fn weyl_group(sys: &RestrictedRootSystem) -> (Vec<RatMatrix>, Vec<Vec<usize>>) {
    let r = sys.rank();
    let gens: Vec<RatMatrix> = (0..r).map(|i| sys.reflection_matrix(i)).collect();
    let simple = RatMatrix::from_rows(&(0..r).map(|i| sys.root(i).clone()).collect::<Vec<_>>());
    let x0 = simple.solve(&vec![Q::one(); r]).expect("simple roots span");
    let mut elems = vec![RatMatrix::identity(sys.ambient_dim())];
    let mut words = vec![Vec::new()];
    let mut seen: HashMap<Vector, usize> = HashMap::from([(x0.clone(), 0)]);
    let mut k = 0;
    while k < elems.len() {
        for (i, g) in gens.iter().enumerate() {
            let w = &elems[k] * g;
            let key = w.mul_vec(&x0);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                e.insert(elems.len());
                let mut word = words[k].clone();
                word.push(i);
                elems.push(w);
                words.push(word);
            }
        }
        k += 1;
    }
    (elems, words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::vec_from_i64;

    fn fan(name: &str) -> ThetaLeviPoset {
        ThetaLeviPoset::new(RestrictedRootSystem::builtin(name).unwrap())
    }

    #[test]
    fn cone_counts() {
        for (name, chambers, cones) in [
            ("A1", 2, 3),
            ("A2", 6, 13),
            ("B2", 8, 17),
            ("G2", 12, 25),
            ("A3", 24, 75),
            ("BC2", 8, 17),
        ] {
            let f = fan(name);
            assert_eq!(f.num_chambers(), chambers, "{name}");
            assert_eq!(f.num_cones(), cones, "{name}");
        }
    }

    #[test]
    fn origin_and_dominant() {
        let f = fan("A2");
        assert_eq!(f.facet_of(&vec_from_i64(&[0, 0])), f.origin());
        assert_eq!(f.cone(f.origin()).dim, 0);
        // α1 = (2,-1), α2 = (-1,2) are both positive at (1,1)
        assert_eq!(f.facet_of(&vec_from_i64(&[1, 1])), 0);
        // on the wall α1 = 0 only
        let w = f.facet_of(&vec_from_i64(&[1, 2]));
        assert_eq!(f.cone(w).dim, 1);
        assert_eq!(f.cone(w).sign, vec![0, 1, 1]);
        assert_eq!(w, f.standard_face(&[0]));
    }

    #[test]
    fn chamber_k_is_w_k_of_base() {
        let f = fan("B2");
        let x0 = f.cone(0).point.clone();
        for (k, w) in f.weyl().iter().enumerate() {
            assert_eq!(f.facet_of(&w.mul_vec(&x0)), k);
        }
    }

    #[test]
    fn projections_are_idempotent_and_fix_span() {
        let f = fan("G2");
        for c in f.cones() {
            assert_eq!(&c.proj * &c.proj, c.proj);
            for b in &c.basis {
                assert_eq!(&c.proj.mul_vec(b), b);
            }
            for &i in &c.vanishing {
                assert!(c
                    .proj
                    .mul_vec(f.system().coroot(i))
                    .iter()
                    .all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn containment() {
        let f = fan("A2");
        let g = f.origin();
        for i in 0..f.num_cones() {
            assert!(f.parabolic_le(i, g));
            assert!(f.parabolic_le(i, i));
        }
        let wall = f.standard_face(&[0]);
        assert!(f.parabolic_le(0, wall));
        assert!(!f.parabolic_le(wall, 0));
        assert_eq!(f.levi_subspaces().len(), 1 + 3 + 1);
    }
}
