//! Gaussian elimination over a [`FieldSpec`].
//!
//! Rows are fixed-width arrays so the hot paths (ranks of stacked planes in
//! PG(5,q)) stay on the stack.

use crate::galois::{Elem, FieldSpec};

/// Brings `rows` to reduced row echelon form in place and returns the rank.
/// Nonzero rows end up first, in pivot order.
pub fn rref<const W: usize>(f: &FieldSpec, rows: &mut [[Elem; W]]) -> usize {
    let mut rank = 0;
    for col in 0..W {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let lead = rows[rank][col];
        if lead != Elem::ONE {
            let inv = f.inv(lead);
            for c in col..W {
                rows[rank][c] = f.mul(rows[rank][c], inv);
            }
        }
        let pivot_row = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = f.neg(row[col]);
            for c in col..W {
                row[c] = f.add(row[c], f.mul(factor, pivot_row[c]));
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank<const W: usize>(f: &FieldSpec, rows: &[[Elem; W]]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m)
}

/// Pivot columns of a matrix already in reduced row echelon form.
pub fn pivots<const W: usize>(rows: &[[Elem; W]]) -> Vec<usize> {
    rows.iter()
        .filter_map(|r| r.iter().position(|x| !x.is_zero()))
        .collect()
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace<const W: usize>(f: &FieldSpec, rows: &[[Elem; W]]) -> Vec<[Elem; W]> {
    let mut m = rows.to_vec();
    let r = rref(f, &mut m);
    m.truncate(r);
    let piv = pivots(&m);
    (0..W)
        .filter(|c| !piv.contains(c))
        .map(|free| {
            let mut v = [Elem::ZERO; W];
            v[free] = Elem::ONE;
            for (row, &pc) in m.iter().zip(&piv) {
                v[pc] = f.neg(row[free]);
            }
            v
        })
        .collect()
}

pub fn mat_vec<const N: usize>(f: &FieldSpec, m: &[[Elem; N]; N], v: &[Elem; N]) -> [Elem; N] {
    let mut out = [Elem::ZERO; N];
    for (o, row) in out.iter_mut().zip(m) {
        *o = f.dot(row, v);
    }
    out
}

pub fn mat_mul<const N: usize>(
    f: &FieldSpec,
    a: &[[Elem; N]; N],
    b: &[[Elem; N]; N],
) -> [[Elem; N]; N] {
    let mut out = [[Elem::ZERO; N]; N];
    for i in 0..N {
        for j in 0..N {
            let mut acc = Elem::ZERO;
            for k in 0..N {
                acc = f.add(acc, f.mul(a[i][k], b[k][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn identity<const N: usize>() -> [[Elem; N]; N] {
    let mut m = [[Elem::ZERO; N]; N];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Elem::ONE;
    }
    m
}

pub fn det3(f: &FieldSpec, m: &[[Elem; 3]; 3]) -> Elem {
    let minor = |a: usize, b: usize, c: usize, d: usize| {
        f.sub(f.mul(m[1][a], m[2][b]), f.mul(m[1][c], m[2][d]))
    };
    let t0 = f.mul(m[0][0], minor(1, 2, 2, 1));
    let t1 = f.mul(m[0][1], minor(0, 2, 2, 0));
    let t2 = f.mul(m[0][2], minor(0, 1, 1, 0));
    f.add(f.sub(t0, t1), t2)
}

/// Inverse of a 3×3 matrix via the adjugate, `None` if singular.
pub fn inverse3(f: &FieldSpec, m: &[[Elem; 3]; 3]) -> Option<[[Elem; 3]; 3]> {
    let d = det3(f, m);
    if d.is_zero() {
        return None;
    }
    let di = f.inv(d);
    let mut out = [[Elem::ZERO; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            // cofactor of m[j][i]
            let (r0, r1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = f.sub(f.mul(m[r0][c0], m[r1][c1]), f.mul(m[r0][c1], m[r1][c0]));
            let signed = if (i + j) % 2 == 0 {
                minor
            } else {
                f.neg(minor)
            };
            *slot = f.mul(signed, di);
        }
    }
    Some(out)
}

/// Cross product, i.e. the line through two points of a projective plane (or
/// the point common to two lines).
pub fn cross(f: &FieldSpec, a: &[Elem; 3], b: &[Elem; 3]) -> [Elem; 3] {
    [
        f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
        f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
    ]
}
