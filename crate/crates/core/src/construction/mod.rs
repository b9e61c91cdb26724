//! The circumscribed bundle, the nets N, the tangent planes T, the solids and
//! the plane families assembled into the code.

mod code;
mod families;
mod solids;

pub use code::{
    build_code, expected_family_sizes, expected_size, normalizer_lifts, Code, CodePlane,
    PlaneParams, Provenance,
};
pub use families::{
    conjugate_pair_reps, pi_e, pi_e_generators, pi_i, pi_i_generators, rational_pairs,
};
pub use solids::{Solid, SolidFlavor, SolidPoints};

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::galois::{Elem, FieldSpec, Fields, Tower};
use crate::groups::{GroupError, SingerData};
use crate::linalg;
use crate::projgeom::{enumerate_points, normalize_vec, Point2, ProjLine2, Subspace};
use crate::quadrics::{
    cubic_value, product_coeffs, Classifier, PlaneQuadric, QuadricError, QuadricKind, MONOMIALS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("{what}: expected vector dimension {expected}, got {got}")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{what}: expected exactly one bundle conic, found {found}")]
    NotUnique { what: &'static str, found: usize },
    #[error("bundle invariant violated: {0}")]
    Bundle(&'static str),
    #[error("solid decomposition failed: {0}")]
    Decomposition(&'static str),
    #[error("duplicate plane across families")]
    Duplicate,
    #[error("code has {got} planes, expected {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("points must be distinct")]
    SamePoint,
    #[error("point must not be rational")]
    RationalPoint,
    #[error(transparent)]
    Quadric(#[from] QuadricError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type Result<T> = std::result::Result<T, ConstructionError>;

/// The six monomials evaluated at a rational point: the row of the condition
/// `Q(P) = 0` on coefficient vectors.
pub fn point_row(f: &FieldSpec, p: &[Elem; 3]) -> [Elem; 6] {
    MONOMIALS.map(|(i, j)| f.mul(p[i], p[j]))
}

/// The condition `Q(P) = 0` for a point over GF(q^m), split into m rows over GF(q).
pub fn extension_point_rows(t: &Tower, p: &[Elem; 3]) -> Vec<[Elem; 6]> {
    let e = t.ext();
    let values = MONOMIALS.map(|(i, j)| e.mul(p[i], p[j]));
    (0..t.degree() as usize)
        .map(|k| values.map(|v| t.coords(v)[k]))
        .collect()
}

/// The condition `B(P, Y) = 0` on coefficient vectors.
pub fn polar_row(f: &FieldSpec, p: &[Elem; 3], y: &[Elem; 3]) -> [Elem; 6] {
    MONOMIALS.map(|(i, j)| {
        if i == j {
            let v = f.mul(p[i], y[i]);
            f.add(v, v)
        } else {
            f.add(f.mul(p[i], y[j]), f.mul(p[j], y[i]))
        }
    })
}

fn solve(
    f: &FieldSpec,
    rows: &[[Elem; 6]],
    what: &'static str,
    expected: usize,
) -> Result<Subspace<6>> {
    let ker = linalg::nullspace(f, rows);
    if ker.len() != expected {
        return Err(ConstructionError::Dimension {
            what,
            expected,
            got: ker.len(),
        });
    }
    Ok(Subspace::span(f, &ker))
}

/// Points of PG(2, q^m) given over an extension, converted to rational points
/// when all coordinates descend.
pub fn restrict_point(t: &Tower, p: &[Elem; 3]) -> Option<[Elem; 3]> {
    let p = normalize_vec(t.ext(), p)?;
    Some([t.restrict(p[0])?, t.restrict(p[1])?, t.restrict(p[2])?])
}

pub fn embed_point(t: &Tower, p: &[Elem; 3]) -> [Elem; 3] {
    p.map(|x| t.embed(x))
}

/// `P^q`, coordinatewise.
pub fn conjugate(t: &Tower, p: &[Elem; 3]) -> [Elem; 3] {
    p.map(|x| t.frobenius(x, 1))
}

/// The q²+q+1 conics through the vertices of the Singer triangle.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub plane: Subspace<6>,
    /// Members in increasing order of their Veronese points.
    pub conics: Vec<PlaneQuadric>,
    /// Rational points of each member.
    pub zeros: Vec<Vec<Point2>>,
    pub triangle: [[Elem; 3]; 3],
    pair_index: FxHashMap<(Point2, Point2), usize>,
}

impl Bundle {
    /// Solves `Q(P) = 0` at one triangle vertex; vanishing at its conjugates
    /// follows because Q has coefficients in GF(q).
    pub fn circumscribed(fields: &Fields, sd: &SingerData) -> Result<Self> {
        let f = fields.f();
        let rows = extension_point_rows(&fields.cubic, &sd.triangle[0]);
        let plane = solve(f, &rows, "circumscribed bundle", 3)?;
        let cl = Classifier::new(f);
        let conics: Vec<PlaneQuadric> = plane
            .points(f)
            .iter()
            .map(PlaneQuadric::from_point)
            .collect();
        let mut zeros = Vec::with_capacity(conics.len());
        let mut pair_index = FxHashMap::default();
        for (idx, c) in conics.iter().enumerate() {
            if cl.classify(c).kind != QuadricKind::Conic {
                return Err(ConstructionError::Bundle("member is degenerate"));
            }
            let z = cl.zeros(c);
            for a in 0..z.len() {
                for b in a + 1..z.len() {
                    if pair_index.insert((z[a], z[b]), idx).is_some() {
                        return Err(ConstructionError::Bundle("two members share two points"));
                    }
                }
            }
            zeros.push(z);
        }
        Ok(Self {
            plane,
            conics,
            zeros,
            triangle: sd.triangle,
            pair_index,
        })
    }

    pub fn len(&self) -> usize {
        self.conics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conics.is_empty()
    }

    pub fn index_of(&self, c: &PlaneQuadric) -> Option<usize> {
        self.conics.binary_search(c).ok()
    }

    /// The member through two distinct rational points.
    pub fn conic_through_pair(&self, a: &Point2, b: &Point2) -> Result<usize> {
        if a == b {
            return Err(ConstructionError::SamePoint);
        }
        let key = if a < b { (*a, *b) } else { (*b, *a) };
        self.pair_index
            .get(&key)
            .copied()
            .ok_or(ConstructionError::NotUnique {
                what: "conic through two points",
                found: 0,
            })
    }

    /// The member through a point of PG(2, q²) ∖ PG(2, q), by intersecting
    /// the bundle plane with the quadrics vanishing at the point.
    pub fn conic_through_quad_point(&self, fields: &Fields, p: &[Elem; 3]) -> Result<usize> {
        let f = fields.f();
        if restrict_point(&fields.quad, p).is_some() {
            return Err(ConstructionError::RationalPoint);
        }
        let rows = extension_point_rows(&fields.quad, p);
        let solid = Subspace::span(f, &linalg::nullspace(f, &rows));
        let meet = self.plane.meet(f, &solid);
        if meet.rank() != 1 {
            return Err(ConstructionError::NotUnique {
                what: "conic through a conjugate pair",
                found: meet.points(f).len(),
            });
        }
        let c = PlaneQuadric::new(f, meet.basis()[0])?;
        self.index_of(&c)
            .ok_or(ConstructionError::Bundle("meet point is not a member"))
    }

    /// Whether the plane of the bundle avoids the cubic hypersurface.
    pub fn is_disjoint_from_cubic(&self, f: &FieldSpec) -> bool {
        self.conics
            .iter()
            .all(|c| !cubic_value(f, c.coeffs()).is_zero())
    }
}

/// Field data, Singer cycle and bundle for one q.
#[derive(Debug)]
pub struct Geometry {
    pub fields: Fields,
    pub singer: SingerData,
    pub bundle: Bundle,
    /// Points of PG(2, q) in increasing order.
    pub points: Vec<Point2>,
}

impl Geometry {
    pub fn new(q: u32) -> std::result::Result<Self, crate::Error> {
        let fields = Fields::new(q)?;
        let singer = SingerData::new(&fields);
        let bundle = Bundle::circumscribed(&fields, &singer)?;
        let points = enumerate_points::<3>(fields.f());
        Ok(Self {
            fields,
            singer,
            bundle,
            points,
        })
    }

    pub fn q(&self) -> u32 {
        self.fields.q()
    }

    pub fn f(&self) -> &FieldSpec {
        self.fields.f()
    }

    pub fn classifier(&self) -> Classifier<'_> {
        Classifier::new(self.f())
    }
}

/// The plane of quadrics singular at a rational point A.
pub fn net_plane(f: &FieldSpec, a: &Point2) -> Result<Subspace<6>> {
    let mut rows: Vec<[Elem; 6]> = linalg::identity::<3>()
        .iter()
        .map(|e| polar_row(f, a.coords(), e))
        .collect();
    rows.push(point_row(f, a.coords()));
    solve(f, &rows, "net plane", 3)
}

/// The plane `{v(L·M)}` of quadrics containing a fixed line.
pub fn tangent_plane(f: &FieldSpec, line: &ProjLine2) -> Subspace<6> {
    let vs: Vec<[Elem; 6]> = linalg::identity::<3>()
        .iter()
        .map(|m| product_coeffs(f, line.dual(), m))
        .collect();
    Subspace::span(f, &vs)
}
