//! Plane quadrics of PG(2, q) and their images under the Veronese map.
//!
//! Coefficients are ordered `(a11, a22, a33, a12, a13, a23)` for
//! `a11 X1² + a22 X2² + a33 X3² + a12 X1X2 + a13 X1X3 + a23 X2X3`, so a quadric
//! and its Veronese image are the same normalized 6-tuple.

use rayon::prelude::*;
use thiserror::Error;

use crate::galois::{Elem, FieldSpec, Tower};
use crate::linalg;
use crate::projgeom::{enumerate_points, normalize_vec, Point2, Point5, ProjLine2, ProjPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadricError {
    #[error("all coefficients are zero")]
    Zero,
    #[error("point does not lie on the quadric")]
    NotOnQuadric,
    #[error("quadric is degenerate, a conic is required")]
    NotConic,
    #[error("operation requires {0} characteristic")]
    Parity(&'static str),
    #[error("linear form is proportional to a form over the base field")]
    RationalForm,
    #[error("product coefficients do not descend to the base field")]
    DescentFailed,
}

/// `(i, j)` index pairs of the six monomials in coefficient order.
pub const MONOMIALS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)];

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PlaneQuadric {
    coeffs: [Elem; 6],
}

impl PlaneQuadric {
    pub fn new(f: &FieldSpec, coeffs: [Elem; 6]) -> Result<Self, QuadricError> {
        let coeffs = normalize_vec(f, &coeffs).ok_or(QuadricError::Zero)?;
        Ok(Self { coeffs })
    }

    pub fn from_ints(f: &FieldSpec, c: [u32; 6]) -> Result<Self, QuadricError> {
        Self::new(f, c.map(Elem))
    }

    #[inline]
    pub fn coeffs(&self) -> &[Elem; 6] {
        &self.coeffs
    }

    /// The Veronese image, a point of PG(5, q).
    #[inline]
    pub fn veronese(&self) -> Point5 {
        ProjPoint::from_normalized(self.coeffs)
    }

    pub fn from_point(p: &Point5) -> Self {
        Self {
            coeffs: *p.coords(),
        }
    }

    pub fn eval(&self, f: &FieldSpec, x: &[Elem; 3]) -> Elem {
        evaluate(f, &self.coeffs, x)
    }

    /// Value at a point with coordinates in an extension of the base field.
    pub fn eval_ext(&self, t: &Tower, x: &[Elem; 3]) -> Elem {
        evaluate(t.ext(), &self.coeffs.map(|c| t.embed(c)), x)
    }

    pub fn polar(&self, f: &FieldSpec, x: &[Elem; 3], y: &[Elem; 3]) -> Elem {
        polar_form(f, &self.coeffs, x, y)
    }

    /// Coefficients of the linear form `X ↦ B(P, X)`.
    pub fn polar_dual(&self, f: &FieldSpec, p: &[Elem; 3]) -> [Elem; 3] {
        linalg::mat_vec(f, &gram(f, &self.coeffs), p)
    }

    pub fn is_singular_at(&self, f: &FieldSpec, p: &[Elem; 3]) -> bool {
        self.eval(f, p).is_zero() && self.polar_dual(f, p).iter().all(|x| x.is_zero())
    }

    /// The tangent line `{X : B(P, X) = 0}` at a point of a conic.
    pub fn tangent_line(&self, f: &FieldSpec, p: &[Elem; 3]) -> Result<ProjLine2, QuadricError> {
        if !self.eval(f, p).is_zero() {
            return Err(QuadricError::NotOnQuadric);
        }
        ProjLine2::from_dual(f, self.polar_dual(f, p)).map_err(|_| QuadricError::NotConic)
    }

    /// Polar line of an arbitrary point (odd q).
    pub fn polar_line(&self, f: &FieldSpec, p: &[Elem; 3]) -> Result<ProjLine2, QuadricError> {
        if f.is_even() {
            return Err(QuadricError::Parity("odd"));
        }
        ProjLine2::from_dual(f, self.polar_dual(f, p)).map_err(|_| QuadricError::NotConic)
    }

    /// Radical point of the polar form of a conic (even q).
    pub fn nucleus(&self, f: &FieldSpec) -> Result<Point2, QuadricError> {
        if !f.is_even() {
            return Err(QuadricError::Parity("even"));
        }
        let g = gram(f, &self.coeffs);
        let ker = linalg::nullspace(f, &g);
        if ker.len() != 1 || self.eval(f, &ker[0]).is_zero() {
            return Err(QuadricError::NotConic);
        }
        Ok(ProjPoint::normalize(f, ker[0]).unwrap())
    }
}

/// `Q(x)` for coefficients and point in the same field.
#[inline]
pub fn evaluate(f: &FieldSpec, a: &[Elem; 6], x: &[Elem; 3]) -> Elem {
    let mut acc = Elem::ZERO;
    for (c, &(i, j)) in a.iter().zip(&MONOMIALS) {
        if !c.is_zero() {
            acc = f.add(acc, f.mul(*c, f.mul(x[i], x[j])));
        }
    }
    acc
}

/// Symmetric matrix `G` with `B(x, y) = xᵀ G y`.
pub fn gram(f: &FieldSpec, a: &[Elem; 6]) -> [[Elem; 3]; 3] {
    let two = |x: Elem| f.add(x, x);
    [
        [two(a[0]), a[3], a[4]],
        [a[3], two(a[1]), a[5]],
        [a[4], a[5], two(a[2])],
    ]
}

/// `B(x, y) = Q(x + y) − Q(x) − Q(y)`.
pub fn polar_form(f: &FieldSpec, a: &[Elem; 6], x: &[Elem; 3], y: &[Elem; 3]) -> Elem {
    let g = gram(f, a);
    f.dot(x, &linalg::mat_vec(f, &g, y))
}

/// Coefficients of the product of two linear forms, in whatever field they live.
pub fn product_coeffs(f: &FieldSpec, l: &[Elem; 3], m: &[Elem; 3]) -> [Elem; 6] {
    MONOMIALS.map(|(i, j)| {
        if i == j {
            f.mul(l[i], m[i])
        } else {
            f.add(f.mul(l[i], m[j]), f.mul(l[j], m[i]))
        }
    })
}

pub fn product_of_forms(
    f: &FieldSpec,
    l: &[Elem; 3],
    m: &[Elem; 3],
) -> Result<PlaneQuadric, QuadricError> {
    PlaneQuadric::new(f, product_coeffs(f, l, m))
}

/// `L · L^q` for a linear form over GF(q²) (or any extension), brought down to
/// the base field.
pub fn conjugate_product(t: &Tower, l: &[Elem; 3]) -> Result<PlaneQuadric, QuadricError> {
    let e = t.ext();
    let l = normalize_vec(e, l).ok_or(QuadricError::Zero)?;
    if l.iter().all(|&c| t.restrict(c).is_some()) {
        return Err(QuadricError::RationalForm);
    }
    let lq = l.map(|c| t.frobenius(c, 1));
    let prod = normalize_vec(e, &product_coeffs(e, &l, &lq)).ok_or(QuadricError::Zero)?;
    let mut down = [Elem::ZERO; 6];
    for (d, c) in down.iter_mut().zip(prod) {
        *d = t.restrict(c).ok_or(QuadricError::DescentFailed)?;
    }
    PlaneQuadric::new(t.base(), down)
}

/// Terms `(c, [i, j, k])` of the degree-3 polynomial `Σ c·XiXjXk` on PG(5, q)
/// that vanishes exactly on degenerate quadrics.
///
/// Even q: `X4X5X6 + X1X6² + X2X5² + X3X4²`. Odd q: half the determinant of
/// the Gram matrix, `4X1X2X3 + X4X5X6 − X1X6² − X2X5² − X3X4²`.
pub fn cubic_terms(f: &FieldSpec) -> Vec<(Elem, [usize; 3])> {
    let tail = [[0, 5, 5], [1, 4, 4], [2, 3, 3]];
    let mut terms = vec![(Elem::ONE, [3, 4, 5])];
    if f.is_even() {
        terms.extend(tail.map(|t| (Elem::ONE, t)));
    } else {
        let minus = f.neg(Elem::ONE);
        terms.push((f.from_int(4), [0, 1, 2]));
        terms.extend(tail.map(|t| (minus, t)));
    }
    terms
}

pub fn cubic_value(f: &FieldSpec, x: &[Elem; 6]) -> Elem {
    let m = |a: Elem, b: Elem| f.mul(a, b);
    let tail = f.add(
        m(x[0], m(x[5], x[5])),
        f.add(m(x[1], m(x[4], x[4])), m(x[2], m(x[3], x[3]))),
    );
    let triple = m(x[3], m(x[4], x[5]));
    if f.is_even() {
        f.add(triple, tail)
    } else {
        let four = f.from_int(4);
        f.sub(f.add(m(four, m(x[0], m(x[1], x[2]))), triple), tail)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum QuadricKind {
    RepeatedLine,
    BiLine,
    ImaginaryBiLine,
    Conic,
}

impl QuadricKind {
    pub const ALL: [QuadricKind; 4] = [
        QuadricKind::RepeatedLine,
        QuadricKind::BiLine,
        QuadricKind::ImaginaryBiLine,
        QuadricKind::Conic,
    ];

    pub fn is_degenerate(self) -> bool {
        self != QuadricKind::Conic
    }

    /// Size of the orbit O1..O4 in PG(5, q).
    pub fn expected_count(self, q: u64) -> u64 {
        let pts = q * q + q + 1;
        match self {
            QuadricKind::RepeatedLine => pts,
            QuadricKind::BiLine => pts * (q + 1) * q / 2,
            QuadricKind::ImaginaryBiLine => pts * (q - 1) * q / 2,
            QuadricKind::Conic => q.pow(5) - q * q,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QuadricClass {
    pub kind: QuadricKind,
    pub center: Option<Point2>,
    pub nucleus: Option<Point2>,
}

/// Classifies quadrics by counting rational and singular points.
pub struct Classifier<'a> {
    f: &'a FieldSpec,
    points: Vec<Point2>,
}

impl<'a> Classifier<'a> {
    pub fn new(f: &'a FieldSpec) -> Self {
        Self {
            f,
            points: enumerate_points::<3>(f),
        }
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    /// Rational points of `Q`, in increasing order.
    pub fn zeros(&self, quad: &PlaneQuadric) -> Vec<Point2> {
        self.points
            .iter()
            .filter(|p| quad.eval(self.f, p.coords()).is_zero())
            .copied()
            .collect()
    }

    pub fn classify(&self, quad: &PlaneQuadric) -> QuadricClass {
        let f = self.f;
        let q = f.order() as usize;
        let zeros = self.zeros(quad);
        let singular: Vec<Point2> = zeros
            .iter()
            .filter(|p| quad.polar_dual(f, p.coords()).iter().all(|x| x.is_zero()))
            .copied()
            .collect();
        let (kind, center) = match (zeros.len(), singular.len()) {
            (n, s) if n == q + 1 && s == q + 1 => (QuadricKind::RepeatedLine, None),
            (n, 1) if n == 2 * q + 1 => (QuadricKind::BiLine, Some(singular[0])),
            (1, 1) => (QuadricKind::ImaginaryBiLine, Some(singular[0])),
            (n, 0) if n == q + 1 => (QuadricKind::Conic, None),
            other => unreachable!("impossible quadric signature {other:?}"),
        };
        let nucleus = if kind == QuadricKind::Conic && f.is_even() {
            quad.nucleus(f).ok()
        } else {
            None
        };
        QuadricClass {
            kind,
            center,
            nucleus,
        }
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq, Debug, serde::Serialize)]
pub struct Census {
    pub repeated_lines: u64,
    pub bi_lines: u64,
    pub imaginary_bi_lines: u64,
    pub conics: u64,
    /// Points where `cubic_value = 0` disagrees with the classification.
    pub cubic_mismatches: u64,
}

impl Census {
    pub fn count(&self, kind: QuadricKind) -> u64 {
        match kind {
            QuadricKind::RepeatedLine => self.repeated_lines,
            QuadricKind::BiLine => self.bi_lines,
            QuadricKind::ImaginaryBiLine => self.imaginary_bi_lines,
            QuadricKind::Conic => self.conics,
        }
    }

    pub fn expected(q: u64) -> Self {
        Self {
            repeated_lines: QuadricKind::RepeatedLine.expected_count(q),
            bi_lines: QuadricKind::BiLine.expected_count(q),
            imaginary_bi_lines: QuadricKind::ImaginaryBiLine.expected_count(q),
            conics: QuadricKind::Conic.expected_count(q),
            cubic_mismatches: 0,
        }
    }

    fn merge(mut self, o: Self) -> Self {
        self.repeated_lines += o.repeated_lines;
        self.bi_lines += o.bi_lines;
        self.imaginary_bi_lines += o.imaginary_bi_lines;
        self.conics += o.conics;
        self.cubic_mismatches += o.cubic_mismatches;
        self
    }
}

/// Classifies every point of PG(5, q).
pub fn census(f: &FieldSpec) -> Census {
    let cl = Classifier::new(f);
    enumerate_points::<6>(f)
        .par_iter()
        .map(|p| {
            let kind = cl.classify(&PlaneQuadric::from_point(p)).kind;
            let mut c = Census::default();
            match kind {
                QuadricKind::RepeatedLine => c.repeated_lines = 1,
                QuadricKind::BiLine => c.bi_lines = 1,
                QuadricKind::ImaginaryBiLine => c.imaginary_bi_lines = 1,
                QuadricKind::Conic => c.conics = 1,
            }
            if cubic_value(f, p.coords()).is_zero() != kind.is_degenerate() {
                c.cubic_mismatches = 1;
            }
            c
        })
        .reduce(Census::default, Census::merge)
}

/// Points of the cubic hypersurface S, in increasing order.
pub fn cubic_points(f: &FieldSpec) -> Vec<Point5> {
    enumerate_points::<6>(f)
        .into_iter()
        .filter(|p| cubic_value(f, p.coords()).is_zero())
        .collect()
}

/// Veronese images of the q²+q+1 repeated lines, in line order.
pub fn repeated_line_points(f: &FieldSpec) -> Vec<Point5> {
    enumerate_points::<3>(f)
        .iter()
        .map(|l| {
            product_of_forms(f, l.coords(), l.coords())
                .unwrap()
                .veronese()
        })
        .collect()
}
