//! The plane families Π_e (one per pair of rational points) and Π_i (one per
//! conjugate pair of points of PG(2, q²) ∖ PG(2, q)).

use crate::galois::{Elem, FieldSpec, Fields, Tower};
use crate::linalg;
use crate::projgeom::{enumerate_points, Point2, ProjLine2, Subspace};
use crate::quadrics::{conjugate_product, product_coeffs};

use super::{conjugate, embed_point, restrict_point, Bundle, ConstructionError, Result};

/// Unordered pairs of distinct points, in lexicographic order.
pub fn rational_pairs(points: &[Point2]) -> Vec<(Point2, Point2)> {
    let mut out = Vec::with_capacity(points.len() * points.len().saturating_sub(1) / 2);
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            out.push((*a, *b));
        }
    }
    out
}

/// One representative `P < P^q` of each conjugate pair of non-rational points
/// of PG(2, q²), sorted.
pub fn conjugate_pair_reps(t: &Tower) -> Vec<[Elem; 3]> {
    enumerate_points::<3>(t.ext())
        .into_iter()
        .map(|p| *p.coords())
        .filter(|p| restrict_point(t, p).is_none() && *p < conjugate(t, p))
        .collect()
}

/// Veronese points of the bi-lines `t_{P1}r`, `t_{P2}r` and `(PP1)(PP2)` for
/// P on the bundle conic through P1, P2.
pub fn pi_e_generators(
    f: &FieldSpec,
    bundle: &Bundle,
    p1: &Point2,
    p2: &Point2,
) -> Result<Vec<[Elem; 6]>> {
    let k = bundle.conic_through_pair(p1, p2)?;
    let c = &bundle.conics[k];
    let r = ProjLine2::through(f, p1.coords(), p2.coords()).unwrap();
    let t1 = c.tangent_line(f, p1.coords())?;
    let t2 = c.tangent_line(f, p2.coords())?;
    let mut gens = vec![
        product_coeffs(f, t1.dual(), r.dual()),
        product_coeffs(f, t2.dual(), r.dual()),
    ];
    for p in bundle.zeros[k].iter().filter(|p| *p != p1 && *p != p2) {
        let r1 = ProjLine2::through(f, p.coords(), p1.coords()).unwrap();
        let r2 = ProjLine2::through(f, p.coords(), p2.coords()).unwrap();
        gens.push(product_coeffs(f, r1.dual(), r2.dual()));
    }
    Ok(gens)
}

pub fn pi_e(f: &FieldSpec, bundle: &Bundle, p1: &Point2, p2: &Point2) -> Result<Subspace<6>> {
    let gens = pi_e_generators(f, bundle, p1, p2)?;
    let s = Subspace::span(f, &gens);
    if s.rank() != 3 {
        return Err(ConstructionError::Dimension {
            what: "pi_e generators",
            expected: 3,
            got: s.rank(),
        });
    }
    Ok(s)
}

/// Veronese points of the imaginary bi-lines `(XP)(XP^q)` for X on the bundle
/// conic through P.
pub fn pi_i_generators(fields: &Fields, bundle: &Bundle, p: &[Elem; 3]) -> Result<Vec<[Elem; 6]>> {
    let t = &fields.quad;
    let k = bundle.conic_through_quad_point(fields, p)?;
    bundle.zeros[k]
        .iter()
        .map(|x| {
            let l = linalg::cross(t.ext(), &embed_point(t, x.coords()), p);
            Ok(*conjugate_product(t, &l)?.coeffs())
        })
        .collect()
}

pub fn pi_i(fields: &Fields, bundle: &Bundle, p: &[Elem; 3]) -> Result<Subspace<6>> {
    let f = fields.f();
    let gens = pi_i_generators(fields, bundle, p)?;
    let s = Subspace::span(f, &gens);
    if s.rank() != 3 {
        return Err(ConstructionError::Dimension {
            what: "pi_i generators",
            expected: 3,
            got: s.rank(),
        });
    }
    Ok(s)
}
