//! Hyperbolic and elliptic solids: webs of quadrics through two rational
//! points or through a conjugate pair of points of PG(2, q²).

use std::collections::BTreeMap;

use crate::galois::{Elem, FieldSpec, Fields};
use crate::linalg;
use crate::projgeom::{enumerate_points, Point2, Point5, ProjLine2, ProjPoint, Subspace};
use crate::quadrics::{cubic_terms, cubic_value};

use super::{
    conjugate, extension_point_rows, point_row, restrict_point, solve, tangent_plane,
    ConstructionError, Result,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum SolidFlavor {
    Hyperbolic,
    Elliptic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolidPoints {
    /// Two rational points.
    Rational(Point2, Point2),
    /// A point of PG(2, q²) ∖ PG(2, q), representing itself and its conjugate.
    Conjugate([Elem; 3]),
}

#[derive(Clone, Debug)]
pub struct Solid {
    pub flavor: SolidFlavor,
    pub defining: SolidPoints,
    pub space: Subspace<6>,
    /// Rational line through the defining points.
    pub line: ProjLine2,
    /// The plane of quadrics containing `line`, inside S.
    pub tangent_plane: Subspace<6>,
    /// Points of the 3-dimensional quadric, sorted.
    pub quadric3: Vec<Point5>,
}

type Poly4 = BTreeMap<[u8; 4], Elem>;

/// Expands the cubic along `X = Σ t_k b_k`.
fn restrict_cubic(f: &FieldSpec, basis: &[[Elem; 6]; 4]) -> Poly4 {
    let lin: [[Elem; 4]; 6] = std::array::from_fn(|i| std::array::from_fn(|k| basis[k][i]));
    let mut out = Poly4::new();
    for (c, [i, j, k]) in cubic_terms(f) {
        for a in 0..4 {
            for b in 0..4 {
                for d in 0..4 {
                    let v = f.mul(c, f.mul(lin[i][a], f.mul(lin[j][b], lin[k][d])));
                    if v.is_zero() {
                        continue;
                    }
                    let mut e = [0u8; 4];
                    e[a] += 1;
                    e[b] += 1;
                    e[d] += 1;
                    let slot = out.entry(e).or_insert(Elem::ZERO);
                    *slot = f.add(*slot, v);
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn eval4(f: &FieldSpec, poly: &Poly4, t: &[Elem; 4]) -> Elem {
    poly.iter().fold(Elem::ZERO, |acc, (e, c)| {
        let mut v = *c;
        for (k, &n) in e.iter().enumerate() {
            for _ in 0..n {
                v = f.mul(v, t[k]);
            }
        }
        f.add(acc, v)
    })
}

impl Solid {
    pub fn hyperbolic(f: &FieldSpec, a: &Point2, b: &Point2) -> Result<Self> {
        if a == b {
            return Err(ConstructionError::SamePoint);
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let rows = [point_row(f, a.coords()), point_row(f, b.coords())];
        let space = solve(f, &rows, "hyperbolic solid", 4)?;
        let line = ProjLine2::through(f, a.coords(), b.coords()).unwrap();
        Self::decompose(
            f,
            SolidFlavor::Hyperbolic,
            SolidPoints::Rational(*a, *b),
            space,
            line,
        )
    }

    pub fn elliptic(fields: &Fields, p: &[Elem; 3]) -> Result<Self> {
        let f = fields.f();
        let t = &fields.quad;
        if restrict_point(t, p).is_some() {
            return Err(ConstructionError::RationalPoint);
        }
        let p = crate::projgeom::normalize_vec(t.ext(), p).unwrap();
        let pq = conjugate(t, &p);
        let rep = p.min(pq);
        let space = solve(f, &extension_point_rows(t, &rep), "elliptic solid", 4)?;
        let dual = linalg::cross(t.ext(), &p, &pq);
        let down = restrict_point(t, &dual).ok_or(ConstructionError::Decomposition(
            "line PP^q is not rational",
        ))?;
        let line = ProjLine2::from_dual(f, down).unwrap();
        Self::decompose(
            f,
            SolidFlavor::Elliptic,
            SolidPoints::Conjugate(rep),
            space,
            line,
        )
    }

    /// Splits `space ∩ S` into the tangent plane and the quadric cut out by
    /// the cubic divided by the coordinate off the plane.
    fn decompose(
        f: &FieldSpec,
        flavor: SolidFlavor,
        defining: SolidPoints,
        space: Subspace<6>,
        line: ProjLine2,
    ) -> Result<Self> {
        let q = f.order() as usize;
        let pi = tangent_plane(f, &line);
        if !space.contains_subspace(f, &pi) {
            return Err(ConstructionError::Decomposition(
                "tangent plane not in solid",
            ));
        }
        let extra = *space
            .basis()
            .iter()
            .find(|r| !pi.contains_vec(f, r))
            .expect("solid is larger than the plane");
        let basis = [pi.basis()[0], pi.basis()[1], pi.basis()[2], extra];
        let cubic = restrict_cubic(f, &basis);
        if cubic.keys().any(|e| e[3] == 0) {
            return Err(ConstructionError::Decomposition(
                "cubic not divisible by the plane equation",
            ));
        }
        let quadratic: Poly4 = cubic
            .into_iter()
            .map(|(mut e, c)| {
                e[3] -= 1;
                (e, c)
            })
            .collect();

        let to_pg5 = |t: &[Elem; 4]| {
            let mut v = [Elem::ZERO; 6];
            for (k, b) in basis.iter().enumerate() {
                for i in 0..6 {
                    v[i] = f.add(v[i], f.mul(t[k], b[i]));
                }
            }
            ProjPoint::normalize(f, v).unwrap()
        };
        let mut quadric3: Vec<Point5> = enumerate_points::<4>(f)
            .iter()
            .filter(|t| eval4(f, &quadratic, t.coords()).is_zero())
            .map(|t| to_pg5(t.coords()))
            .collect();
        quadric3.sort();

        let (size, on_plane) = match flavor {
            SolidFlavor::Hyperbolic => ((q + 1) * (q + 1), 2 * q + 1),
            SolidFlavor::Elliptic => (q * q + 1, 1),
        };
        if quadric3.len() != size {
            return Err(ConstructionError::Decomposition(
                "quadric has the wrong size",
            ));
        }
        if quadric3.iter().filter(|p| pi.contains(f, p)).count() != on_plane {
            return Err(ConstructionError::Decomposition(
                "plane meets the quadric wrongly",
            ));
        }
        // space ∩ S = quadric ∪ plane
        let on_s: Vec<Point5> = space
            .points(f)
            .into_iter()
            .filter(|p| cubic_value(f, p.coords()).is_zero())
            .collect();
        let expected = on_s
            .iter()
            .all(|p| pi.contains(f, p) || quadric3.binary_search(p).is_ok());
        let union = quadric3.len() + pi.points(f).len() - on_plane;
        if !expected || on_s.len() != union {
            return Err(ConstructionError::Decomposition(
                "space ∩ S is not quadric ∪ plane",
            ));
        }
        Ok(Self {
            flavor,
            defining,
            space,
            line,
            tangent_plane: pi,
            quadric3,
        })
    }
}
