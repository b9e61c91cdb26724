//! PGL(3, q), its Singer cycles, and the induced action on PG(5, q).
//!
//! Points transform as column vectors, `P ↦ gP`. Quadrics transform by
//! `(g·Q)(X) = Q(g⁻¹X)`, so the Veronese map intertwines the two actions and
//! [`lift`] is a homomorphism into GL(6, q).

use std::hash::Hash;

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::galois::{Elem, FieldSpec, Fields, Tower};
use crate::linalg;
use crate::projgeom::{
    enumerate_points, normalize_vec, point_count, Point2, Point5, ProjPoint, Subspace,
};
use crate::quadrics::{product_coeffs, PlaneQuadric};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("matrix is singular")]
    Singular,
    #[error("orbit exceeded the size cap of {0}")]
    OrbitCap(usize),
    #[error("this check needs odd q")]
    NeedsOddQ,
}

pub type Mat3 = [[Elem; 3]; 3];
pub type Mat6 = [[Elem; 6]; 6];

/// Scales a matrix so its first nonzero entry in row-major order is 1.
pub fn canonical_matrix<const N: usize>(f: &FieldSpec, m: &[[Elem; N]; N]) -> [[Elem; N]; N] {
    let lead = m.iter().flatten().find(|x| !x.is_zero()).copied();
    match lead {
        Some(l) if l != Elem::ONE => {
            let inv = f.inv(l);
            m.map(|row| row.map(|x| f.mul(x, inv)))
        }
        _ => *m,
    }
}

pub fn projectively_equal<const N: usize>(
    f: &FieldSpec,
    a: &[[Elem; N]; N],
    b: &[[Elem; N]; N],
) -> bool {
    canonical_matrix(f, a) == canonical_matrix(f, b)
}

/// Smallest `n ≥ 1` with `mⁿ` scalar.
pub fn projective_order<const N: usize>(f: &FieldSpec, m: &[[Elem; N]; N]) -> u64 {
    let id = linalg::identity::<N>();
    let mut acc = *m;
    let mut n = 1;
    while !projectively_equal(f, &acc, &id) {
        acc = linalg::mat_mul(f, &acc, m);
        n += 1;
    }
    n
}

pub fn mat_pow<const N: usize>(f: &FieldSpec, m: &[[Elem; N]; N], mut e: u64) -> [[Elem; N]; N] {
    let mut base = *m;
    let mut acc = linalg::identity::<N>();
    while e > 0 {
        if e & 1 == 1 {
            acc = linalg::mat_mul(f, &acc, &base);
        }
        base = linalg::mat_mul(f, &base, &base);
        e >>= 1;
    }
    acc
}

/// An element of PGL(3, q), stored canonically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupElement {
    m: Mat3,
}

impl GroupElement {
    pub fn new(f: &FieldSpec, m: Mat3) -> Result<Self, GroupError> {
        if linalg::det3(f, &m).is_zero() {
            return Err(GroupError::Singular);
        }
        Ok(Self {
            m: canonical_matrix(f, &m),
        })
    }

    pub fn identity() -> Self {
        Self {
            m: linalg::identity(),
        }
    }

    #[inline]
    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn mul(&self, f: &FieldSpec, other: &GroupElement) -> Self {
        Self {
            m: canonical_matrix(f, &linalg::mat_mul(f, &self.m, &other.m)),
        }
    }

    pub fn inverse(&self, f: &FieldSpec) -> Self {
        let inv = linalg::inverse3(f, &self.m).expect("group elements are invertible");
        Self {
            m: canonical_matrix(f, &inv),
        }
    }

    pub fn pow(&self, f: &FieldSpec, e: u64) -> Self {
        Self {
            m: canonical_matrix(f, &mat_pow(f, &self.m, e)),
        }
    }

    pub fn order(&self, f: &FieldSpec) -> u64 {
        projective_order(f, &self.m)
    }

    pub fn act_point(&self, f: &FieldSpec, p: &Point2) -> Point2 {
        ProjPoint::normalize(f, linalg::mat_vec(f, &self.m, p.coords())).unwrap()
    }

    /// `g·P` for a point with coordinates in an extension field.
    pub fn act_point_ext(&self, t: &Tower, p: &[Elem; 3]) -> [Elem; 3] {
        let e = t.ext();
        let m = embed_matrix(t, &self.m);
        normalize_vec(e, &linalg::mat_vec(e, &m, p)).unwrap()
    }

    /// `(g·Q)(X) = Q(g⁻¹X)`.
    pub fn act_quadric(&self, f: &FieldSpec, quad: &PlaneQuadric) -> PlaneQuadric {
        let h = linalg::inverse3(f, &self.m).unwrap();
        let mut out = [Elem::ZERO; 6];
        for (c, &(i, j)) in quad.coeffs().iter().zip(&crate::quadrics::MONOMIALS) {
            if c.is_zero() {
                continue;
            }
            let term = product_coeffs(f, &h[i], &h[j]);
            for k in 0..6 {
                out[k] = f.add(out[k], f.mul(*c, term[k]));
            }
        }
        PlaneQuadric::new(f, out).unwrap()
    }
}

pub fn embed_matrix(t: &Tower, m: &Mat3) -> Mat3 {
    m.map(|row| row.map(|x| t.embed(x)))
}

/// The 6×6 matrix of `Q ↦ g·Q` on coefficient vectors.
///
/// Column `j` holds the coefficients of the `j`-th basis monomial `XaXb`
/// after substituting `X ↦ hX`, `h = g⁻¹`.
pub fn lift(f: &FieldSpec, g: &GroupElement) -> Lifted {
    let h = linalg::inverse3(f, &g.m).unwrap();
    let mut m = [[Elem::ZERO; 6]; 6];
    for (j, &(a, b)) in crate::quadrics::MONOMIALS.iter().enumerate() {
        let col = product_coeffs(f, &h[a], &h[b]);
        for i in 0..6 {
            m[i][j] = col[i];
        }
    }
    Lifted { m }
}

/// A collineation of PG(5, q).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Lifted {
    m: Mat6,
}

impl Lifted {
    pub fn from_matrix(m: Mat6) -> Self {
        Self { m }
    }

    #[inline]
    pub fn matrix(&self) -> &Mat6 {
        &self.m
    }

    pub fn mul(&self, f: &FieldSpec, other: &Lifted) -> Lifted {
        Lifted {
            m: linalg::mat_mul(f, &self.m, &other.m),
        }
    }

    pub fn order(&self, f: &FieldSpec) -> u64 {
        projective_order(f, &self.m)
    }

    #[inline]
    pub fn apply_point(&self, f: &FieldSpec, p: &Point5) -> Point5 {
        ProjPoint::normalize(f, linalg::mat_vec(f, &self.m, p.coords())).unwrap()
    }

    #[inline]
    pub fn apply(&self, f: &FieldSpec, s: &Subspace<6>) -> Subspace<6> {
        s.apply(f, &self.m)
    }
}

/// Generating set {Singer cycle, I + E12, diag(g, 1, 1)} of PGL(3, q).
pub fn pgl_generators(fields: &Fields) -> Vec<GroupElement> {
    let f = fields.f();
    let sd = SingerData::new(fields);
    let mut transvection = linalg::identity::<3>();
    transvection[0][1] = Elem::ONE;
    let mut diag = linalg::identity::<3>();
    diag[0][0] = f.generator();
    vec![
        sd.generator,
        GroupElement::new(f, transvection).unwrap(),
        GroupElement::new(f, diag).unwrap(),
    ]
}

/// BFS closure of `seed` under the maps in `gens`, returned sorted.
///
/// Each frontier is expanded in parallel; the result does not depend on
/// scheduling.
pub fn orbit<T, F>(seed: T, gens: &[F], cap: usize) -> Result<Vec<T>, GroupError>
where
    T: Copy + Eq + Hash + Ord + Send + Sync,
    F: Fn(&T) -> T + Sync,
{
    let mut seen: FxHashSet<T> = FxHashSet::default();
    seen.insert(seed);
    let mut frontier = vec![seed];
    while !frontier.is_empty() {
        let images: Vec<T> = frontier
            .par_iter()
            .flat_map_iter(|x| gens.iter().map(move |g| g(x)))
            .collect();
        frontier.clear();
        for y in images {
            if seen.insert(y) {
                frontier.push(y);
            }
        }
        if seen.len() > cap {
            return Err(GroupError::OrbitCap(cap));
        }
    }
    let mut out: Vec<T> = seen.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// Orbit of a subspace of PG(5, q) under lifted group elements and their
/// inverses.
pub fn orbit_subspaces(
    f: &FieldSpec,
    seed: Subspace<6>,
    gens: &[GroupElement],
    cap: usize,
) -> Result<Vec<Subspace<6>>, GroupError> {
    let lifted: Vec<Lifted> = gens
        .iter()
        .flat_map(|g| [lift(f, g), lift(f, &g.inverse(f))])
        .collect();
    let maps: Vec<_> = lifted
        .iter()
        .map(|l| move |s: &Subspace<6>| l.apply(f, s))
        .collect();
    orbit(seed, &maps, cap)
}

/// A Singer cycle of PG(2, q) with its Frobenius normalizer and fixed triangle.
#[derive(Clone, Debug)]
pub struct SingerData {
    /// Multiplication by the primitive element ω on GF(q³) = GF(q)·1 + GF(q)·ω + GF(q)·ω².
    pub generator: GroupElement,
    /// `x ↦ x^q` in the same basis.
    pub frob: GroupElement,
    /// Eigenvectors of the generator for ω, ω^q, ω^{q²}, over GF(q³).
    pub triangle: [[Elem; 3]; 3],
}

impl SingerData {
    pub fn new(fields: &Fields) -> Self {
        let t = &fields.cubic;
        let (f, e) = (t.base(), t.ext());
        let w = e.generator();
        let basis = [Elem::ONE, w, e.mul(w, w)];
        let column_matrix = |images: [Elem; 3]| {
            let mut m = [[Elem::ZERO; 3]; 3];
            for (j, img) in images.iter().enumerate() {
                let c = t.coords(*img);
                for i in 0..3 {
                    m[i][j] = c[i];
                }
            }
            m
        };
        let gen = column_matrix(basis.map(|b| e.mul(w, b)));
        let frob = column_matrix(basis.map(|b| t.frobenius(b, 1)));

        // eigenvector of the generator for ω: kernel of (C − ωI) over GF(q³)
        let mut shifted = embed_matrix(t, &gen);
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = e.sub(row[i], w);
        }
        let ker = linalg::nullspace(e, &shifted);
        assert_eq!(ker.len(), 1, "ω is a simple eigenvalue");
        let p0 = normalize_vec(e, &ker[0]).unwrap();
        let p1 = p0.map(|x| t.frobenius(x, 1));
        let p2 = p0.map(|x| t.frobenius(x, 2));

        Self {
            generator: GroupElement::new(f, gen).unwrap(),
            frob: GroupElement::new(f, frob).unwrap(),
            triangle: [p0, p1, p2],
        }
    }
}

/// Orbit of the Singer triangle (as a sorted vertex triple) under PGL(3, q).
pub fn triangle_orbit(fields: &Fields, cap: usize) -> Result<Vec<[[Elem; 3]; 3]>, GroupError> {
    let t = &fields.cubic;
    let f = fields.f();
    let sd = SingerData::new(fields);
    let mut seed = sd.triangle;
    seed.sort();
    let gens: Vec<Mat3> = pgl_generators(fields)
        .iter()
        .flat_map(|g| [*g.matrix(), *g.inverse(f).matrix()])
        .map(|m| embed_matrix(t, &m))
        .collect();
    let e = t.ext();
    let maps: Vec<_> = gens
        .iter()
        .map(|m| {
            move |tri: &[[Elem; 3]; 3]| {
                let mut out = tri.map(|p| normalize_vec(e, &linalg::mat_vec(e, m, &p)).unwrap());
                out.sort();
                out
            }
        })
        .collect();
    orbit(seed, &maps, cap)
}

/// Whether some five of the six vertices of two triangles form an arc.
pub fn contains_five_arc(e: &FieldSpec, a: &[[Elem; 3]; 3], b: &[[Elem; 3]; 3]) -> bool {
    let mut pts: Vec<[Elem; 3]> = a.iter().chain(b).copied().collect();
    pts.sort();
    pts.dedup();
    if pts.len() < 5 {
        return false;
    }
    let n = pts.len();
    let collinear =
        |i: usize, j: usize, k: usize| linalg::det3(e, &[pts[i], pts[j], pts[k]]).is_zero();
    let subsets: Vec<Vec<usize>> = if n == 5 {
        vec![(0..5).collect()]
    } else {
        (0..n)
            .map(|s| (0..n).filter(|&i| i != s).collect())
            .collect()
    };
    subsets.iter().any(|idx| {
        (0..5).all(|x| (x + 1..5).all(|y| (y + 1..5).all(|z| !collinear(idx[x], idx[y], idx[z]))))
    })
}

/// Pairs of distinct triangles in the orbit, and those whose six vertices
/// contain no five points in general position.
#[derive(Clone, Debug, serde::Serialize)]
pub struct FiveArcCensus {
    pub q: u32,
    pub triangles: usize,
    pub pairs: usize,
    pub pairs_without_arc: usize,
    /// Pairs of distinct triangles with a common vertex.
    pub pairs_sharing_vertex: usize,
    /// Smallest failing pair, by orbit index.
    pub first_failure: Option<(usize, usize)>,
}

pub fn five_arc_census(fields: &Fields) -> Result<FiveArcCensus, GroupError> {
    let orb = triangle_orbit(fields, 1 << 24)?;
    let e = fields.cubic.ext();
    let n = orb.len();
    let failures: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let orb = &orb;
            (i + 1..n)
                .filter(move |&j| !contains_five_arc(e, &orb[i], &orb[j]))
                .map(move |j| (i, j))
        })
        .collect();
    let sharing = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .filter(|&j| orb[i].iter().any(|v| orb[j].contains(v)))
                .count()
        })
        .sum();
    Ok(FiveArcCensus {
        q: fields.q(),
        triangles: n,
        pairs: n * (n - 1) / 2,
        pairs_without_arc: failures.len(),
        pairs_sharing_vertex: sharing,
        first_failure: failures.iter().min().copied(),
    })
}

/// Orbits of `⟨lift(s)⟩` on PG(5, q) and on the cubic hypersurface.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SingerReport {
    pub q: u32,
    pub lifted_order: u64,
    pub cubic_points: usize,
    /// Orbit sizes on the points of S, sorted.
    pub cubic_orbit_sizes: Vec<usize>,
    pub all_caps: bool,
    pub all_span_pg5: bool,
    /// Orbit sizes on all of PG(5, q).
    pub total_orbits: usize,
    pub all_orbits_regular: bool,
    pub invariant_planes: usize,
    pub invariant_planes_disjoint_from_s: bool,
}

impl SingerReport {
    pub fn passes(&self) -> bool {
        let q = self.q as usize;
        let n = q * q + q + 1;
        self.lifted_order == n as u64
            && self.cubic_points == (q * q + 1) * n
            && self.cubic_orbit_sizes.len() == q * q + 1
            && self.cubic_orbit_sizes.iter().all(|&s| s == n)
            && self.all_caps
            && self.all_span_pg5
            && self.all_orbits_regular
            && self.invariant_planes == 2
            && self.invariant_planes_disjoint_from_s
    }
}

fn is_cap(f: &FieldSpec, pts: &[Point5]) -> bool {
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let line = Subspace::span_points(f, &[pts[i], pts[j]]);
            if pts
                .iter()
                .enumerate()
                .any(|(k, p)| k != i && k != j && line.contains(f, p))
            {
                return false;
            }
        }
    }
    true
}

/// Partitions PG(5, q) into orbits of the lifted Singer cycle (odd q).
pub fn singer_structure_report(fields: &Fields) -> Result<SingerReport, GroupError> {
    let f = fields.f();
    if f.is_even() {
        return Err(GroupError::NeedsOddQ);
    }
    let sd = SingerData::new(fields);
    let a = lift(f, &sd.generator);
    let all = enumerate_points::<6>(f);
    let mut assigned: FxHashSet<Point5> = FxHashSet::default();
    let mut orbits: Vec<Vec<Point5>> = Vec::new();
    for p in &all {
        if assigned.contains(p) {
            continue;
        }
        let mut orb = vec![*p];
        let mut cur = a.apply_point(f, p);
        while cur != *p {
            orb.push(cur);
            cur = a.apply_point(f, &cur);
        }
        assigned.extend(orb.iter().copied());
        orbits.push(orb);
    }
    let n = point_count(f.order(), 3);
    let on_s = |p: &Point5| crate::quadrics::cubic_value(f, p.coords()).is_zero();
    let cubic_orbits: Vec<&Vec<Point5>> = orbits.iter().filter(|o| on_s(&o[0])).collect();
    debug_assert!(orbits
        .iter()
        .all(|o| o.iter().all(|p| on_s(p) == on_s(&o[0]))));
    let mut cubic_orbit_sizes: Vec<usize> = cubic_orbits.iter().map(|o| o.len()).collect();
    cubic_orbit_sizes.sort_unstable();
    let all_caps = cubic_orbits.par_iter().all(|o| is_cap(f, o));
    let all_span_pg5 = cubic_orbits
        .iter()
        .all(|o| Subspace::span_points(f, o).rank() == 6);
    let all_orbits_regular = orbits.iter().all(|o| o.len() == n);
    let planes: Vec<&Vec<Point5>> = orbits
        .iter()
        .filter(|o| Subspace::span_points(f, o).rank() == 3)
        .collect();
    let disjoint = planes.iter().all(|o| o.iter().all(|p| !on_s(p)));
    Ok(SingerReport {
        q: f.order(),
        lifted_order: a.order(f),
        cubic_points: cubic_orbits.iter().map(|o| o.len()).sum(),
        cubic_orbit_sizes,
        all_caps,
        all_span_pg5,
        total_orbits: orbits.len(),
        all_orbits_regular,
        invariant_planes: planes.len(),
        invariant_planes_disjoint_from_s: disjoint,
    })
}
