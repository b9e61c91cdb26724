//! Points, lines and subspaces of PG(n, q).
//!
//! A projective point is stored as its normalized coordinate vector (first
//! nonzero coordinate equal to 1). A subspace is stored by its reduced row
//! echelon basis, which makes equality, ordering and hashing plain matrix
//! comparison.

use std::fmt;

use thiserror::Error;

use crate::galois::{Elem, FieldSpec};
use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("a line needs two distinct points")]
    SamePoint,
    #[error("plane enumeration is limited to q <= {bound}, got q = {q}")]
    BoundExceeded { q: u32, bound: u32 },
}

/// Scales `v` so that its first nonzero coordinate is 1.
#[inline]
pub fn normalize_vec<const N: usize>(f: &FieldSpec, v: &[Elem; N]) -> Option<[Elem; N]> {
    let lead = v.iter().position(|x| !x.is_zero())?;
    if v[lead] == Elem::ONE {
        return Some(*v);
    }
    let inv = f.inv(v[lead]);
    let mut out = [Elem::ZERO; N];
    for i in lead..N {
        out[i] = f.mul(v[i], inv);
    }
    Some(out)
}

/// A point of PG(N-1, q), normalized.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint<const N: usize>([Elem; N]);

pub type Point2 = ProjPoint<3>;
pub type Point5 = ProjPoint<6>;

impl<const N: usize> ProjPoint<N> {
    pub fn normalize(f: &FieldSpec, v: [Elem; N]) -> Result<Self, GeomError> {
        normalize_vec(f, &v).map(Self).ok_or(GeomError::ZeroVector)
    }

    pub fn from_ints(f: &FieldSpec, v: [u32; N]) -> Result<Self, GeomError> {
        Self::normalize(f, v.map(Elem))
    }

    /// Wraps a vector that is already normalized.
    pub fn from_normalized(v: [Elem; N]) -> Self {
        debug_assert!(v.iter().find(|x| !x.is_zero()) == Some(&Elem::ONE));
        Self(v)
    }

    #[inline]
    pub fn coords(&self) -> &[Elem; N] {
        &self.0
    }

    /// Bit-packed key, `bits` bits per coordinate.
    #[inline]
    pub fn key(&self, bits: u32) -> u64 {
        pack(&self.0, bits) as u64
    }
}

impl<const N: usize> fmt::Debug for ProjPoint<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x.0)?;
        }
        write!(f, ")")
    }
}

/// Bits per coordinate needed to pack elements of GF(q).
pub fn pack_bits(q: u32) -> u32 {
    32 - (q - 1).leading_zeros()
}

#[inline]
pub fn pack(v: &[Elem], bits: u32) -> u128 {
    v.iter().fold(0u128, |acc, x| (acc << bits) | x.0 as u128)
}

/// All points of PG(N-1, q) in increasing lexicographic order.
pub fn enumerate_points<const N: usize>(f: &FieldSpec) -> Vec<ProjPoint<N>> {
    let q = f.order();
    let mut out = Vec::new();
    for lead in (0..N).rev() {
        let free = N - 1 - lead;
        let mut digits = vec![0u32; free];
        loop {
            let mut v = [Elem::ZERO; N];
            v[lead] = Elem::ONE;
            for (i, &d) in digits.iter().enumerate() {
                v[lead + 1 + i] = Elem(d);
            }
            out.push(ProjPoint(v));
            // odometer, rightmost digit fastest
            let mut i = free;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < q {
                    break;
                }
                digits[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if free == 0 || i == usize::MAX {
                break;
            }
        }
    }
    out
}

/// A line of a projective plane, given by the normalized coefficients of its
/// linear form `u1 X1 + u2 X2 + u3 X3`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ProjLine2 {
    dual: [Elem; 3],
}

impl ProjLine2 {
    pub fn from_dual(f: &FieldSpec, u: [Elem; 3]) -> Result<Self, GeomError> {
        let dual = normalize_vec(f, &u).ok_or(GeomError::ZeroVector)?;
        Ok(Self { dual })
    }

    pub fn through(f: &FieldSpec, a: &[Elem; 3], b: &[Elem; 3]) -> Result<Self, GeomError> {
        Self::from_dual(f, linalg::cross(f, a, b)).map_err(|_| GeomError::SamePoint)
    }

    #[inline]
    pub fn dual(&self) -> &[Elem; 3] {
        &self.dual
    }

    #[inline]
    pub fn contains(&self, f: &FieldSpec, p: &[Elem; 3]) -> bool {
        f.dot(&self.dual, p).is_zero()
    }

    /// The point shared with another line (`None` if the lines coincide).
    pub fn meet(&self, f: &FieldSpec, other: &ProjLine2) -> Option<Point2> {
        ProjPoint::normalize(f, linalg::cross(f, &self.dual, &other.dual)).ok()
    }

    /// The q+1 points of the line.
    pub fn points(&self, f: &FieldSpec) -> Vec<Point2> {
        let basis = linalg::nullspace(f, &[self.dual]);
        let (u, v) = (basis[0], basis[1]);
        let mut out: Vec<Point2> = f
            .elements()
            .map(|t| {
                let w = [0, 1, 2].map(|i| f.add(u[i], f.mul(t, v[i])));
                ProjPoint::normalize(f, w).expect("basis vectors are independent")
            })
            .collect();
        out.push(ProjPoint::normalize(f, v).unwrap());
        out.sort();
        out
    }
}

/// All lines of PG(2, q).
pub fn enumerate_lines(f: &FieldSpec) -> Vec<ProjLine2> {
    enumerate_points::<3>(f)
        .into_iter()
        .map(|p| ProjLine2 { dual: p.0 })
        .collect()
}

/// A subspace of the vector space GF(q)^N, i.e. a projective subspace of
/// PG(N-1, q), stored by its reduced row echelon basis.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace<const N: usize> {
    rank: u8,
    rows: [[Elem; N]; N],
}

impl<const N: usize> fmt::Debug for Subspace<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.basis().iter().map(|r| ProjPoint(*r)))
            .finish()
    }
}

impl<const N: usize> Subspace<N> {
    pub fn zero() -> Self {
        Self {
            rank: 0,
            rows: [[Elem::ZERO; N]; N],
        }
    }

    /// Span of arbitrary vectors.
    pub fn span(f: &FieldSpec, vectors: &[[Elem; N]]) -> Self {
        let mut acc = Self::zero();
        for chunk in vectors.chunks(N) {
            let mut m: Vec<[Elem; N]> = acc.basis().to_vec();
            m.extend_from_slice(chunk);
            let r = linalg::rref(f, &mut m);
            acc.rank = r as u8;
            acc.rows = [[Elem::ZERO; N]; N];
            acc.rows[..r].copy_from_slice(&m[..r]);
        }
        acc
    }

    pub fn span_points(f: &FieldSpec, points: &[ProjPoint<N>]) -> Self {
        let v: Vec<[Elem; N]> = points.iter().map(|p| p.0).collect();
        Self::span(f, &v)
    }

    /// Wraps rows that are already in reduced echelon form.
    pub fn from_rref_rows(rows: &[[Elem; N]]) -> Self {
        let mut s = Self::zero();
        s.rank = rows.len() as u8;
        s.rows[..rows.len()].copy_from_slice(rows);
        s
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    #[inline]
    pub fn basis(&self) -> &[[Elem; N]] {
        &self.rows[..self.rank as usize]
    }

    pub fn pivots(&self) -> Vec<usize> {
        linalg::pivots(self.basis())
    }

    /// Membership of a vector, by reduction against the echelon basis.
    pub fn contains_vec(&self, f: &FieldSpec, v: &[Elem; N]) -> bool {
        let mut w = *v;
        for row in self.basis() {
            let pc = row.iter().position(|x| !x.is_zero()).unwrap();
            let c = w[pc];
            if !c.is_zero() {
                let nc = f.neg(c);
                for i in pc..N {
                    w[i] = f.add(w[i], f.mul(nc, row[i]));
                }
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, f: &FieldSpec, p: &ProjPoint<N>) -> bool {
        self.contains_vec(f, &p.0)
    }

    pub fn contains_subspace(&self, f: &FieldSpec, other: &Subspace<N>) -> bool {
        other.basis().iter().all(|r| self.contains_vec(f, r))
    }

    pub fn join(&self, f: &FieldSpec, other: &Subspace<N>) -> Self {
        let mut v = self.basis().to_vec();
        v.extend_from_slice(other.basis());
        Self::span(f, &v)
    }

    /// The orthogonal complement with respect to the standard dot product.
    pub fn annihilator(&self, f: &FieldSpec) -> Self {
        if self.rank == 0 {
            return Self::span(f, &linalg::identity::<N>());
        }
        Self::span(f, &linalg::nullspace(f, self.basis()))
    }

    pub fn meet(&self, f: &FieldSpec, other: &Subspace<N>) -> Self {
        self.annihilator(f)
            .join(f, &other.annihilator(f))
            .annihilator(f)
    }

    /// Rank of the stacked bases.
    pub fn join_rank(&self, f: &FieldSpec, other: &Subspace<N>) -> usize {
        let mut m = self.basis().to_vec();
        m.extend_from_slice(other.basis());
        linalg::rref(f, &mut m)
    }

    /// `(dim(U+W), dim(U∩W))` in vector dimensions.
    pub fn dim_sum_rank(&self, f: &FieldSpec, other: &Subspace<N>) -> (usize, usize) {
        let sum = self.join_rank(f, other);
        (sum, self.rank() + other.rank() - sum)
    }

    /// Every projective point of the subspace, in increasing order.
    pub fn points(&self, f: &FieldSpec) -> Vec<ProjPoint<N>> {
        let r = self.rank();
        let mut out = Vec::with_capacity(point_count(f.order(), r));
        // combinations with normalized coefficient vectors are already normalized
        for lead in 0..r {
            let free = r - 1 - lead;
            let total = (f.order() as usize).pow(free as u32);
            for code in 0..total {
                let mut v = self.rows[lead];
                let mut c = code;
                for j in (lead + 1..r).rev() {
                    let coef = Elem((c % f.order() as usize) as u32);
                    c /= f.order() as usize;
                    if !coef.is_zero() {
                        for i in 0..N {
                            v[i] = f.add(v[i], f.mul(coef, self.rows[j][i]));
                        }
                    }
                }
                out.push(ProjPoint(v));
            }
        }
        out.sort();
        out
    }

    /// Image under `v ↦ M v`.
    pub fn apply(&self, f: &FieldSpec, m: &[[Elem; N]; N]) -> Self {
        let mut rows = [[Elem::ZERO; N]; N];
        for (dst, src) in rows.iter_mut().zip(self.basis()) {
            *dst = linalg::mat_vec(f, m, src);
        }
        let r = linalg::rref(f, &mut rows[..self.rank()]);
        debug_assert_eq!(r, self.rank(), "matrix is singular");
        Self {
            rank: r as u8,
            rows,
        }
    }

    /// Bit-packed basis, `bits` bits per entry. Requires `rank·N·bits <= 128`.
    #[inline]
    pub fn key(&self, bits: u32) -> u128 {
        debug_assert!(self.rank() * N * bits as usize <= 128);
        self.basis()
            .iter()
            .fold(0u128, |acc, r| (acc << (N as u32 * bits)) | pack(r, bits))
    }

    /// The lines contained in a plane (rank 3), one per point of the dual plane.
    pub fn plane_lines(&self, f: &FieldSpec) -> Vec<Subspace<N>> {
        assert_eq!(self.rank, 3, "plane_lines needs a plane");
        enumerate_points::<3>(f)
            .iter()
            .map(|c| {
                let ker = linalg::nullspace(f, &[c.0]);
                let vecs: Vec<[Elem; N]> = ker
                    .iter()
                    .map(|k| {
                        let mut v = [Elem::ZERO; N];
                        for (j, &coef) in k.iter().enumerate() {
                            for i in 0..N {
                                v[i] = f.add(v[i], f.mul(coef, self.rows[j][i]));
                            }
                        }
                        v
                    })
                    .collect();
                Subspace::span(f, &vecs)
            })
            .collect()
    }
}

/// Number of points of a projective space of vector dimension `rank`.
pub fn point_count(q: u32, rank: usize) -> usize {
    ((q as usize).pow(rank as u32) - 1) / (q as usize - 1)
}

/// Gaussian binomial coefficient `[n choose k]_q`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= (q as u128).pow(n - i) - 1;
        den *= (q as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}

/// Calls `visit` with every reduced echelon `rank × N` matrix over GF(q),
/// grouped by pivot pattern.
pub fn for_each_rref<const N: usize>(
    f: &FieldSpec,
    rank: usize,
    mut visit: impl FnMut(&Subspace<N>),
) {
    for pattern in pivot_patterns(N, rank) {
        for_each_with_pivots(f, &pattern, &mut visit);
    }
}

/// All increasing pivot-column tuples of length `rank` in `0..n`.
pub fn pivot_patterns(n: usize, rank: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            rec(c + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, rank, &mut Vec::new(), &mut out);
    out
}

/// `(row, column)` positions left free by the pivot columns.
pub fn free_slots<const N: usize>(pivots: &[usize]) -> Vec<(usize, usize)> {
    pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &pc)| {
            (pc + 1..N)
                .filter(|c| !pivots.contains(c))
                .map(move |c| (r, c))
        })
        .collect()
}

/// Every echelon matrix with the given pivot columns.
pub fn for_each_with_pivots<const N: usize>(
    f: &FieldSpec,
    pivots: &[usize],
    visit: &mut impl FnMut(&Subspace<N>),
) {
    let total = (f.order() as u64).pow(free_slots::<N>(pivots).len() as u32);
    for_each_with_pivots_range(f, pivots, 0..total, visit);
}

/// The echelon matrices with the given pivots whose free entries, read as
/// base-q digits (last slot least significant), encode an index in `range`.
pub fn for_each_with_pivots_range<const N: usize>(
    f: &FieldSpec,
    pivots: &[usize],
    range: std::ops::Range<u64>,
    visit: &mut impl FnMut(&Subspace<N>),
) {
    let q = f.order();
    let free = free_slots::<N>(pivots);
    let mut s = Subspace::<N>::zero();
    s.rank = pivots.len() as u8;
    for (r, &pc) in pivots.iter().enumerate() {
        s.rows[r][pc] = Elem::ONE;
    }
    let mut digits = vec![0u32; free.len()];
    let mut idx = range.start;
    for i in (0..free.len()).rev() {
        digits[i] = (idx % q as u64) as u32;
        idx /= q as u64;
        let (r, c) = free[i];
        s.rows[r][c] = Elem(digits[i]);
    }
    for _ in range {
        visit(&s);
        let mut i = free.len();
        while i > 0 {
            i -= 1;
            digits[i] += 1;
            let (r, c) = free[i];
            if digits[i] < q {
                s.rows[r][c] = Elem(digits[i]);
                break;
            }
            digits[i] = 0;
            s.rows[r][c] = Elem::ZERO;
        }
    }
}

/// Default bound for full plane enumeration in PG(5, q).
pub const PLANE_ENUMERATION_BOUND: u32 = 5;

/// All planes of PG(5, q), sorted lexicographically by echelon matrix.
pub fn enumerate_planes5(f: &FieldSpec, bound: u32) -> Result<Vec<Subspace<6>>, GeomError> {
    if f.order() > bound {
        return Err(GeomError::BoundExceeded {
            q: f.order(),
            bound,
        });
    }
    let mut out = Vec::with_capacity(gaussian_binomial(6, 3, f.order() as u64) as usize);
    for_each_rref::<6>(f, 3, |s| out.push(*s));
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn f(q: u32) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let g7 = f(7);
        let p = ProjPoint::from_ints(&g7, [2, 4, 6]).unwrap();
        assert_eq!(p.coords(), &[Elem(1), Elem(2), Elem(3)]);
        let p = ProjPoint::from_ints(&g7, [0, 0, 5]).unwrap();
        assert_eq!(p.coords(), &[Elem(0), Elem(0), Elem(1)]);
        assert_eq!(
            ProjPoint::from_ints(&g7, [0, 0, 0]),
            Err(GeomError::ZeroVector)
        );
        let g5 = f(5);
        for p in enumerate_points::<3>(&g5) {
            assert_eq!(ProjPoint::normalize(&g5, *p.coords()).unwrap(), p);
            for l in g5.nonzero_elements() {
                let scaled = p.coords().map(|x| g5.mul(l, x));
                assert_eq!(ProjPoint::normalize(&g5, scaled).unwrap(), p);
            }
        }
    }

    #[test]
    fn point_counts() {
        assert_eq!(enumerate_points::<3>(&f(3)).len(), 13);
        assert_eq!(enumerate_points::<6>(&f(5)).len(), 3906);
        let pts = enumerate_points::<6>(&f(4));
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(pts.len(), point_count(4, 6));
    }

    #[test]
    fn lines_through_points() {
        let g = f(3);
        let a = [Elem(1), Elem(0), Elem(0)];
        let b = [Elem(0), Elem(1), Elem(0)];
        let l = ProjLine2::through(&g, &a, &b).unwrap();
        assert_eq!(l.dual(), &[Elem(0), Elem(0), Elem(1)]);
        assert_eq!(l.points(&g).len(), 4);
        assert_eq!(ProjLine2::through(&g, &a, &a), Err(GeomError::SamePoint));

        let g4 = f(4);
        for l in enumerate_lines(&g4) {
            let pts = l.points(&g4);
            assert_eq!(pts.len(), 5);
            assert!(pts.iter().all(|p| l.contains(&g4, p.coords())));
        }
    }

    #[test]
    fn incidence_counts_in_plane() {
        for q in 2..=5 {
            let g = f(q);
            let pts = enumerate_points::<3>(&g);
            let lines = enumerate_lines(&g);
            for p in &pts {
                let n = lines.iter().filter(|l| l.contains(&g, p.coords())).count();
                assert_eq!(n, q as usize + 1);
            }
            for l in &lines {
                let n = pts.iter().filter(|p| l.contains(&g, p.coords())).count();
                assert_eq!(n, q as usize + 1);
            }
        }
    }

    #[test]
    fn span_meet_and_modular_law() {
        let g = f(2);
        let mut e = [[Elem::ZERO; 6]; 3];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = Elem::ONE;
        }
        let u = Subspace::span(&g, &e);
        assert_eq!(u.rank(), 3);
        assert_eq!(u.basis(), &e);
        assert_eq!(u.meet(&g, &u), u);

        // planes <e1,e2,e3> and <e1,e4,e5> share exactly the point e1
        let g3 = f(3);
        let v = |i: usize| {
            let mut x = [Elem::ZERO; 6];
            x[i] = Elem::ONE;
            x
        };
        let a = Subspace::span(&g3, &[v(0), v(1), v(2)]);
        let b = Subspace::span(&g3, &[v(0), v(3), v(4)]);
        assert_eq!(a.dim_sum_rank(&g3, &b), (5, 1));
        assert_eq!(a.meet(&g3, &b), Subspace::span(&g3, &[v(0)]));
    }

    #[test]
    fn meet_matches_pointwise_intersection() {
        let g = f(3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let mk = |rng: &mut ChaCha8Rng, n: usize| {
                let vs: Vec<[Elem; 6]> = (0..n)
                    .map(|_| [(); 6].map(|_| Elem(rng.gen_range(0..3))))
                    .collect();
                Subspace::span(&g, &vs)
            };
            let (a, b) = (mk(&mut rng, 3), mk(&mut rng, 4));
            let m = a.meet(&g, &b);
            let pa: HashSet<_> = a.points(&g).into_iter().collect();
            let pb: HashSet<_> = b.points(&g).into_iter().collect();
            let common: HashSet<_> = pa.intersection(&pb).copied().collect();
            let pm: HashSet<_> = m.points(&g).into_iter().collect();
            assert_eq!(common, pm);
            let (s, i) = a.dim_sum_rank(&g, &b);
            assert_eq!(s + i, a.rank() + b.rank());
            assert_eq!(i, m.rank());
        }
    }

    #[test]
    fn echelon_form_is_canonical() {
        let g = f(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let planes = enumerate_planes5(&g, 3).unwrap();
        for _ in 0..10_000 {
            let s = planes[rng.gen_range(0..planes.len())];
            // random invertible mix of the basis rows
            let mix = loop {
                let m = [(); 3].map(|_| [(); 3].map(|_| Elem(rng.gen_range(0..3))));
                if !linalg::det3(&g, &m).is_zero() {
                    break m;
                }
            };
            let rows: Vec<[Elem; 6]> = (0..3)
                .map(|i| {
                    let mut v = [Elem::ZERO; 6];
                    for j in 0..3 {
                        for c in 0..6 {
                            v[c] = g.add(v[c], g.mul(mix[i][j], s.basis()[j][c]));
                        }
                    }
                    v
                })
                .collect();
            assert_eq!(Subspace::span(&g, &rows), s);
        }
    }

    #[test]
    fn plane_enumeration_counts() {
        let g2 = f(2);
        let p2 = enumerate_planes5(&g2, 5).unwrap();
        assert_eq!(p2.len(), 1395);
        assert_eq!(gaussian_binomial(6, 3, 2), 63 * 31 * 15 / (7 * 3));
        let p3 = enumerate_planes5(&f(3), 5).unwrap();
        assert_eq!(p3.len() as u64, gaussian_binomial(6, 3, 3));
        for list in [&p2, &p3] {
            assert!(list.windows(2).all(|w| w[0] < w[1]));
            assert!(list.iter().all(|s| s.rank() == 3));
        }
        assert_eq!(
            enumerate_planes5(&f(7), 5),
            Err(GeomError::BoundExceeded { q: 7, bound: 5 })
        );
    }

    #[test]
    fn ranged_enumeration_partitions_a_pattern() {
        let g = f(3);
        let pivots = [0, 2, 3];
        let mut whole = Vec::new();
        for_each_with_pivots::<6>(&g, &pivots, &mut |s| whole.push(*s));
        let total = whole.len() as u64;
        assert_eq!(total, 3u64.pow(free_slots::<6>(&pivots).len() as u32));
        let mut pieces = Vec::new();
        for (a, b) in [(0, 7), (7, 100), (100, total)] {
            for_each_with_pivots_range::<6>(&g, &pivots, a..b, &mut |s| pieces.push(*s));
        }
        assert_eq!(pieces, whole);
    }

    #[test]
    fn plane_lines_are_the_sub_lines() {
        let g = f(3);
        let planes = enumerate_planes5(&g, 3).unwrap();
        for s in planes.iter().step_by(997) {
            let lines = s.plane_lines(&g);
            assert_eq!(lines.len(), 13);
            let distinct: HashSet<_> = lines.iter().collect();
            assert_eq!(distinct.len(), 13);
            for l in &lines {
                assert_eq!(l.rank(), 2);
                assert!(s.contains_subspace(&g, l));
            }
        }
    }
}
