//! Exact convex hulls of finite rational point sets by facet enumeration.

use num::{Signed, Zero};

use crate::linalg::rational::{dot, is_zero_vec, sub, Vector, Q};
use crate::linalg::RatMatrix;

/// Position of a point relative to a hull in its ambient space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

/// Convex hull of a point set. Facets are stored in the coordinates of the
/// affine hull as `normal · x ≤ offset`.
#[derive(Clone, Debug)]
pub struct Hull {
    ambient: usize,
    origin: Vector,
    /// Row basis of the directions of the affine hull.
    dirs: Vec<Vector>,
    /// Solves for affine-hull coordinates.
    coord_map: Option<RatMatrix>,
    local: Vec<Vector>,
    facets: Vec<(Vector, Q)>,
}

impl Hull {
    pub fn new(points: &[Vector]) -> Self {
        let ambient = points.first().map_or(0, Vec::len);
        let mut pts: Vec<Vector> = Vec::new();
        for p in points {
            if !pts.contains(p) {
                pts.push(p.clone());
            }
        }
        if pts.is_empty() {
            return Hull {
                ambient,
                origin: Vec::new(),
                dirs: Vec::new(),
                coord_map: None,
                local: Vec::new(),
                facets: Vec::new(),
            };
        }
        let origin = pts[0].clone();
        let mut dirs: Vec<Vector> = Vec::new();
        for p in &pts[1..] {
            let d = sub(p, &origin);
            let mut trial = dirs.clone();
            trial.push(d);
            if RatMatrix::from_rows(&trial).rank() == trial.len() {
                dirs = trial;
            }
        }
        let coord_map = if dirs.is_empty() {
            None
        } else {
            Some(RatMatrix::from_cols(ambient, &dirs))
        };
        let mut hull = Hull {
            ambient,
            origin,
            dirs,
            coord_map,
            local: Vec::new(),
            facets: Vec::new(),
        };
        hull.local = pts
            .iter()
            .map(|p| hull.to_local(p).expect("point in its own hull"))
            .collect();
        hull.facets = facets(&hull.local, hull.dirs.len());
        hull
    }

    pub fn dim(&self) -> usize {
        self.dirs.len()
    }

    fn to_local(&self, p: &[Q]) -> Option<Vector> {
        let d = sub(p, &self.origin);
        match &self.coord_map {
            None => is_zero_vec(&d).then(Vec::new),
            Some(m) => m.solve(&d),
        }
    }

    pub fn facets(&self) -> &[(Vector, Q)] {
        &self.facets
    }

    /// Vertices in affine-hull coordinates.
    pub fn vertices_local(&self) -> Vec<Vector> {
        self.local
            .iter()
            .filter(|p| {
                let tight: Vec<&Vector> = self
                    .facets
                    .iter()
                    .filter(|(n, b)| dot(n, p) == *b)
                    .map(|(n, _)| n)
                    .collect();
                self.dim() == 0
                    || (!tight.is_empty()
                        && RatMatrix::from_rows(&tight.into_iter().cloned().collect::<Vec<_>>())
                            .rank()
                            == self.dim())
            })
            .cloned()
            .collect()
    }

    pub fn membership(&self, h: &[Q]) -> Membership {
        if self.local.is_empty() {
            return Membership::Outside;
        }
        let Some(x) = self.to_local(h) else {
            return Membership::Outside;
        };
        let mut tight = false;
        for (n, b) in &self.facets {
            let v = dot(n, &x);
            if v > *b {
                return Membership::Outside;
            }
            if v == *b {
                tight = true;
            }
        }
        if tight || self.dim() < self.ambient {
            Membership::Boundary
        } else {
            Membership::Interior
        }
    }

    pub fn contains(&self, h: &[Q]) -> bool {
        self.membership(h) != Membership::Outside
    }

    /// `dim`-dimensional volume in affine-hull coordinates (Lebesgue measure
    /// of the hull directions' coordinate space).
    pub fn local_volume(&self) -> Q {
        simplices(&self.local, self.dim())
            .iter()
            .map(|s| simplex_volume(s))
            .fold(Q::zero(), |a, b| a + b)
    }

    /// Determinant of the chosen hull directions, for converting local
    /// volumes to the ambient measure when the hull is full-dimensional.
    pub fn direction_det(&self) -> Q {
        match &self.coord_map {
            None => Q::from_integer(1.into()),
            Some(m) => m.det().abs(),
        }
    }

    /// Full-dimensional volume in the ambient coordinates (zero if flat).
    pub fn volume(&self) -> Q {
        if self.local.is_empty() || self.dim() < self.ambient {
            return if self.ambient == 0 && !self.local.is_empty() {
                Q::from_integer(1.into())
            } else {
                Q::zero()
            };
        }
        self.local_volume() * self.direction_det()
    }
}

/// `1` for points in the closed hull, `0` otherwise.
pub fn hull_membership(points: &[Vector], h: &[Q]) -> u8 {
    Hull::new(points).contains(h) as u8
}

/// Facets of the hull of full-dimensional `pts ⊂ Q^d`.
fn facets(pts: &[Vector], d: usize) -> Vec<(Vector, Q)> {
    let mut out: Vec<(Vector, Q)> = Vec::new();
    if d == 0 {
        return out;
    }
    for sel in k_subsets(pts.len(), d) {
        let base = &pts[sel[0]];
        let rows: Vec<Vector> = sel[1..].iter().map(|&i| sub(&pts[i], base)).collect();
        let null = if rows.is_empty() {
            vec![vec![Q::from_integer(1.into())]]
        } else {
            RatMatrix::from_rows(&rows).nullspace()
        };
        if null.len() != 1 {
            continue;
        }
        let mut n = null.into_iter().next().expect("one normal");
        let mut b = dot(&n, base);
        let (mut above, mut below) = (false, false);
        for p in pts {
            let v = dot(&n, p);
            above |= v > b;
            below |= v < b;
        }
        if above && below {
            continue;
        }
        if above {
            n = n.iter().map(|x| -x).collect();
            b = -b;
        }
        // normalize so the first nonzero entry has absolute value 1
        let lead = n
            .iter()
            .find(|x| !x.is_zero())
            .expect("nonzero normal")
            .abs();
        n = n.iter().map(|x| x / &lead).collect();
        b /= &lead;
        if !out.iter().any(|(m, c)| *m == n && *c == b) {
            out.push((n, b));
        }
    }
    out
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Pulling triangulation of the hull of full-dimensional `pts ⊂ Q^d`: cone
/// from the first vertex over the triangulated facets not containing it.
fn simplices(pts: &[Vector], d: usize) -> Vec<Vec<Vector>> {
    if pts.is_empty() {
        return Vec::new();
    }
    if d == 0 {
        return vec![vec![pts[0].clone()]];
    }
    // any point of the polytope works as the apex
    let fs = facets(pts, d);
    let apex = pts[0].clone();
    let mut out = Vec::new();
    for (n, b) in &fs {
        if dot(n, &apex) == *b {
            continue;
        }
        let on: Vec<Vector> = pts.iter().filter(|p| dot(n, p) == *b).cloned().collect();
        let sub_hull = Hull::new(&on);
        debug_assert_eq!(sub_hull.dim(), d - 1);
        for s in simplices(&sub_hull.local, d - 1) {
            let mut simplex: Vec<Vector> = s.iter().map(|x| sub_hull.from_local(x)).collect();
            simplex.push(apex.clone());
            out.push(simplex);
        }
    }
    out
}

impl Hull {
    fn from_local(&self, x: &[Q]) -> Vector {
        let mut p = self.origin.clone();
        for (c, d) in x.iter().zip(&self.dirs) {
            for (pi, di) in p.iter_mut().zip(d) {
                *pi += c * di;
            }
        }
        p
    }
}

/// `|det(v_1 - v_0, ..)| / d!`.
pub fn simplex_volume(s: &[Vector]) -> Q {
    let d = s.len() - 1;
    if d == 0 {
        return Q::from_integer(1.into());
    }
    let rows: Vec<Vector> = s[1..].iter().map(|v| sub(v, &s[0])).collect();
    let fact: u64 = (1..=d as u64).product();
    RatMatrix::from_rows(&rows).det().abs() / Q::from_integer(fact.into())
}
