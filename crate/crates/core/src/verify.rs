//! Subspace distance checks, completeness search and greedy extension.
//!
//! Distances are in vector dimensions, so two planes of PG(5, q) meeting in a
//! point are at distance 4 and a code of planes meeting pairwise in at most a
//! point has minimum distance 4.

use std::time::Instant;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;
use thiserror::Error;

use crate::construction::{expected_family_sizes, expected_size, normalizer_lifts, Code, Geometry};
use crate::galois::{Elem, FieldSpec};
use crate::projgeom::{
    enumerate_points, for_each_with_pivots_range, free_slots, gaussian_binomial, pack_bits,
    pivot_patterns, Subspace, PLANE_ENUMERATION_BOUND,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("codeword {0} is not a plane")]
    NotAPlane(usize),
    #[error("completeness search is limited to q <= {bound}, got q = {q}")]
    BoundExceeded { q: u32, bound: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Naive,
    LineIndex,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub q: u32,
    pub m: usize,
    /// `None` for codes with fewer than two planes.
    pub min_distance: Option<usize>,
    /// Smallest index pair attaining the minimum distance.
    pub worst_pair: Option<(usize, usize)>,
    pub elapsed_ms: u128,
    pub method: Method,
}

impl VerificationReport {
    pub fn passes(&self, target: usize) -> bool {
        self.min_distance.is_none_or(|d| d >= target)
    }

    /// Same verdict and distance as another report.
    pub fn agrees_with(&self, other: &VerificationReport) -> bool {
        self.min_distance == other.min_distance && self.worst_pair == other.worst_pair
    }
}

/// `d(U, W) = dim(U + W) − dim(U ∩ W) = 2·rank(U; W) − rank U − rank W`.
pub fn subspace_distance<const N: usize>(f: &FieldSpec, u: &Subspace<N>, w: &Subspace<N>) -> usize {
    2 * u.join_rank(f, w) - u.rank() - w.rank()
}

fn check_planes(planes: &[Subspace<6>]) -> Result<(), VerifyError> {
    match planes.iter().position(|p| p.rank() != 3) {
        Some(i) => Err(VerifyError::NotAPlane(i)),
        None => Ok(()),
    }
}

/// All-pairs distance computation.
pub fn verify_naive(
    f: &FieldSpec,
    planes: &[Subspace<6>],
) -> Result<VerificationReport, VerifyError> {
    check_planes(planes)?;
    let start = Instant::now();
    let best = (0..planes.len())
        .into_par_iter()
        .filter_map(|i| {
            (i + 1..planes.len())
                .map(|j| (subspace_distance(f, &planes[i], &planes[j]), (i, j)))
                .min()
        })
        .min();
    Ok(VerificationReport {
        q: f.order(),
        m: planes.len(),
        min_distance: best.map(|b| b.0),
        worst_pair: best.map(|b| b.1),
        elapsed_ms: start.elapsed().as_millis(),
        method: Method::Naive,
    })
}

/// Kernel bases of the q²+q+1 linear forms on GF(q)³: multiplying a plane's
/// basis by one of them gives one of its lines.
pub struct LineMaker {
    kernels: Vec<[[Elem; 3]; 2]>,
    bits: u32,
}

impl LineMaker {
    pub fn new(f: &FieldSpec) -> Self {
        let kernels = enumerate_points::<3>(f)
            .iter()
            .map(|c| {
                let k = crate::linalg::nullspace(f, &[*c.coords()]);
                [k[0], k[1]]
            })
            .collect();
        Self {
            kernels,
            bits: pack_bits(f.order()),
        }
    }

    pub fn lines_per_plane(&self) -> usize {
        self.kernels.len()
    }

    /// Packed echelon key of the `idx`-th line of a plane.
    #[inline]
    pub fn line_key(&self, f: &FieldSpec, plane: &Subspace<6>, idx: usize) -> u128 {
        let rows = plane.basis();
        let mut m = [[Elem::ZERO; 6]; 2];
        for (r, k) in m.iter_mut().zip(&self.kernels[idx]) {
            for (j, coef) in k.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                for c in 0..6 {
                    r[c] = f.add(r[c], f.mul(*coef, rows[j][c]));
                }
            }
        }
        crate::linalg::rref(f, &mut m);
        Subspace::<6>::from_rref_rows(&m).key(self.bits)
    }

    pub fn line_keys(&self, f: &FieldSpec, plane: &Subspace<6>) -> Vec<u128> {
        (0..self.kernels.len())
            .map(|i| self.line_key(f, plane, i))
            .collect()
    }
}

/// Line-index verification: planes at distance ≤ 2 share a line, planes at
/// distance 4 share a point.
pub fn verify_line_index(
    f: &FieldSpec,
    planes: &[Subspace<6>],
) -> Result<VerificationReport, VerifyError> {
    check_planes(planes)?;
    let start = Instant::now();
    let lm = LineMaker::new(f);
    let keys: Vec<Vec<u128>> = planes.par_iter().map(|p| lm.line_keys(f, p)).collect();
    let mut index: FxHashMap<u128, Vec<u32>> = FxHashMap::default();
    for (i, ks) in keys.iter().enumerate() {
        for k in ks {
            index.entry(*k).or_default().push(i as u32);
        }
    }
    let mut close: Vec<(usize, usize)> = index
        .values()
        .filter(|v| v.len() > 1)
        .flat_map(|v| {
            let v = v.clone();
            (0..v.len()).flat_map(move |a| {
                let v = v.clone();
                (a + 1..v.len()).map(move |b| (v[a] as usize, v[b] as usize))
            })
        })
        .collect();
    close.sort_unstable();
    close.dedup();
    let best = close
        .par_iter()
        .map(|&(i, j)| (subspace_distance(f, &planes[i], &planes[j]), (i, j)))
        .min();
    let (min_distance, worst_pair) = match best {
        Some((d, pair)) => (Some(d), Some(pair)),
        None if planes.len() < 2 => (None, None),
        None => {
            let bits = pack_bits(f.order());
            let mut first: FxHashMap<u64, u32> = FxHashMap::default();
            let mut pair: Option<(usize, usize)> = None;
            for (i, p) in planes.iter().enumerate() {
                for pt in p.points(f) {
                    if let Some(&j) = first.get(&pt.key(bits)) {
                        let cand = (j as usize, i);
                        pair = Some(pair.map_or(cand, |old: (usize, usize)| old.min(cand)));
                    } else {
                        first.insert(pt.key(bits), i as u32);
                    }
                }
            }
            match pair {
                Some(p) => (Some(4), Some(p)),
                None => (Some(6), Some((0, 1))),
            }
        }
    };
    Ok(VerificationReport {
        q: f.order(),
        m: planes.len(),
        min_distance,
        worst_pair,
        elapsed_ms: start.elapsed().as_millis(),
        method: Method::LineIndex,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub q: u32,
    pub code_size: usize,
    pub candidates: u64,
    /// Planes meeting every codeword in at most a point, sorted.
    #[serde(skip)]
    pub addable: Vec<Subspace<6>>,
    /// Lexicographically greedy mutually compatible subset of `addable`.
    #[serde(skip)]
    pub greedy_added: Vec<Subspace<6>>,
    pub addable_count: usize,
    pub greedy_count: usize,
    pub elapsed_ms: u128,
}

/// Scans every plane of PG(5, q) for compatibility with the code, then
/// extends greedily in lexicographic order.
pub fn completeness_check(
    f: &FieldSpec,
    planes: &[Subspace<6>],
) -> Result<ExtensionReport, VerifyError> {
    check_planes(planes)?;
    if f.order() > PLANE_ENUMERATION_BOUND {
        return Err(VerifyError::BoundExceeded {
            q: f.order(),
            bound: PLANE_ENUMERATION_BOUND,
        });
    }
    let start = Instant::now();
    let q = f.order() as u64;
    let lm = LineMaker::new(f);
    let code_lines: FxHashSet<u128> = planes.iter().flat_map(|p| lm.line_keys(f, p)).collect();

    // split each pivot pattern into chunks of about q^4 candidates
    let chunk = q.pow(4);
    let mut jobs: Vec<(Vec<usize>, u64, u64)> = Vec::new();
    for pat in pivot_patterns(6, 3) {
        let total = q.pow(free_slots::<6>(&pat).len() as u32);
        let mut a = 0;
        while a < total {
            let b = (a + chunk).min(total);
            jobs.push((pat.clone(), a, b));
            a = b;
        }
    }
    let mut addable: Vec<Subspace<6>> = jobs
        .par_iter()
        .flat_map_iter(|(pat, a, b)| {
            let mut found = Vec::new();
            for_each_with_pivots_range::<6>(f, pat, *a..*b, &mut |s| {
                let clash =
                    (0..lm.lines_per_plane()).any(|i| code_lines.contains(&lm.line_key(f, s, i)));
                if !clash {
                    found.push(*s);
                }
            });
            found
        })
        .collect();
    addable.sort_unstable();

    let mut taken: FxHashSet<u128> = FxHashSet::default();
    let mut greedy_added = Vec::new();
    for s in &addable {
        let keys = lm.line_keys(f, s);
        if keys.iter().all(|k| !taken.contains(k)) {
            taken.extend(keys);
            greedy_added.push(*s);
        }
    }
    Ok(ExtensionReport {
        q: f.order(),
        code_size: planes.len(),
        candidates: gaussian_binomial(6, 3, q),
        addable_count: addable.len(),
        greedy_count: greedy_added.len(),
        addable,
        greedy_added,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Summary of a built code: family sizes, distance and automorphisms.
#[derive(Clone, Debug, Serialize)]
pub struct ParameterReport {
    pub q: u32,
    pub m: usize,
    pub expected_m: u64,
    /// Sizes of C, N, Π_e, Π_i.
    pub family_counts: [usize; 4],
    pub expected_family_counts: [u64; 4],
    pub min_distance: Option<usize>,
    /// Setwise invariance under the lifted Singer generator and Frobenius map;
    /// `None` when not checked.
    pub invariant_under_singer: Option<bool>,
    pub invariant_under_frobenius: Option<bool>,
    pub normalizer_order: u64,
    /// Best known size of a (6, M, 4; 3)_2 code, for q = 2.
    pub optimum_q2: Option<u64>,
}

impl ParameterReport {
    pub fn sizes_match(&self) -> bool {
        self.m as u64 == self.expected_m
            && self
                .family_counts
                .iter()
                .zip(&self.expected_family_counts)
                .all(|(a, b)| *a as u64 == *b)
    }

    pub fn passes(&self) -> bool {
        self.sizes_match()
            && self.min_distance.is_none_or(|d| d >= 4)
            && self.invariant_under_singer != Some(false)
            && self.invariant_under_frobenius != Some(false)
    }
}

impl std::fmt::Display for ParameterReport {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [c, n, e, i] = self.family_counts;
        writeln!(out, "q = {}", self.q)?;
        writeln!(out, "families C / N / PE / PI: {c} / {n} / {e} / {i}")?;
        writeln!(out, "M = {} (formula {})", self.m, self.expected_m)?;
        match self.min_distance {
            Some(d) => writeln!(out, "minimum subspace distance: {d}")?,
            None => writeln!(out, "minimum subspace distance: not checked")?,
        }
        let show = |b: Option<bool>| match b {
            Some(true) => "yes",
            Some(false) => "NO",
            None => "not checked",
        };
        writeln!(
            out,
            "invariant under Singer cycle: {}, under Frobenius: {} (group order {})",
            show(self.invariant_under_singer),
            show(self.invariant_under_frobenius),
            self.normalizer_order
        )?;
        if let Some(opt) = self.optimum_q2 {
            writeln!(out, "best known M for (6, M, 4; 3)_2: {opt}")?;
        }
        write!(
            out,
            "parameters: (6, {}, {}; 3)_{}",
            self.m,
            self.min_distance.map_or("?".into(), |d| d.to_string()),
            self.q
        )
    }
}

/// `checked = false` skips the distance and automorphism computations.
pub fn parameter_report(
    geo: &Geometry,
    code: &Code,
    checked: bool,
) -> Result<ParameterReport, VerifyError> {
    let q = geo.q() as u64;
    let (min_distance, inv) = if checked {
        let r = verify_line_index(geo.f(), &code.spaces())?;
        let inv = code.invariant_under(geo.f(), &normalizer_lifts(geo));
        (r.min_distance, Some((inv[0], inv[1])))
    } else {
        (None, None)
    };
    Ok(ParameterReport {
        q: geo.q(),
        m: code.len(),
        expected_m: expected_size(q),
        family_counts: code.family_counts(),
        expected_family_counts: expected_family_sizes(q),
        min_distance,
        invariant_under_singer: inv.map(|x| x.0),
        invariant_under_frobenius: inv.map(|x| x.1),
        normalizer_order: 3 * (q * q + q + 1),
        optimum_q2: (q == 2).then_some(77),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_code, Geometry};
    use crate::projgeom::enumerate_planes5;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn unit(i: usize) -> [Elem; 6] {
        let mut v = [Elem::ZERO; 6];
        v[i] = Elem::ONE;
        v
    }

    #[test]
    fn distance_examples() {
        let f = FieldSpec::with_order(3).unwrap();
        let u = Subspace::span(&f, &[unit(0), unit(1), unit(2)]);
        let w = Subspace::span(&f, &[unit(0), unit(3), unit(4)]);
        let x = Subspace::span(&f, &[unit(3), unit(4), unit(5)]);
        let y = Subspace::span(&f, &[unit(0), unit(1), unit(3)]);
        assert_eq!(subspace_distance(&f, &u, &u), 0);
        assert_eq!(subspace_distance(&f, &u, &w), 4);
        assert_eq!(subspace_distance(&f, &u, &x), 6);
        assert_eq!(subspace_distance(&f, &u, &y), 2);
    }

    #[test]
    fn metric_axioms_on_random_triples() {
        let f = FieldSpec::with_order(2).unwrap();
        let planes = enumerate_planes5(&f, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10_000 {
            let [a, b, c] = [(); 3].map(|_| planes[rng.gen_range(0..planes.len())]);
            let (ab, bc, ac) = (
                subspace_distance(&f, &a, &b),
                subspace_distance(&f, &b, &c),
                subspace_distance(&f, &a, &c),
            );
            assert!(ac <= ab + bc);
            assert_eq!(ab, subspace_distance(&f, &b, &a));
            assert_eq!(ab == 0, a == b);
        }
    }

    #[test]
    fn injected_violations_are_found() {
        let geo = Geometry::new(2).unwrap();
        let f = geo.f();
        let code = build_code(&geo).unwrap();
        let mut planes = code.spaces();
        let naive = verify_naive(f, &planes).unwrap();
        assert_eq!(naive.min_distance, Some(4));
        assert!(naive.agrees_with(&verify_line_index(f, &planes).unwrap()));

        let mut dup = planes.clone();
        dup.push(planes[5]);
        let r = verify_naive(f, &dup).unwrap();
        assert_eq!((r.min_distance, r.worst_pair), (Some(0), Some((5, 43))));
        assert!(r.agrees_with(&verify_line_index(f, &dup).unwrap()));

        // a plane through a line of codeword 0
        let b = planes[0].basis();
        let extra = (0..6)
            .map(unit)
            .find(|v| !planes[0].contains_vec(f, v))
            .unwrap();
        planes.push(Subspace::span(f, &[b[0], b[1], extra]));
        let r = verify_naive(f, &planes).unwrap();
        assert_eq!(r.min_distance, Some(2));
        assert_eq!(r.worst_pair.unwrap().0, 0);
        assert!(r.agrees_with(&verify_line_index(f, &planes).unwrap()));
    }

    fn random_plane(f: &FieldSpec, rng: &mut ChaCha8Rng) -> Subspace<6> {
        loop {
            let rows: Vec<[Elem; 6]> = (0..3)
                .map(|_| std::array::from_fn(|_| Elem(rng.gen_range(0..f.order()))))
                .collect();
            let s = Subspace::span(f, &rows);
            if s.rank() == 3 {
                return s;
            }
        }
    }

    #[test]
    fn methods_agree_on_mutated_codes() {
        let geo = Geometry::new(3).unwrap();
        let f = geo.f();
        let base = build_code(&geo).unwrap().spaces();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..100 {
            let mut planes = base.clone();
            for _ in 0..rng.gen_range(1..4) {
                let i = rng.gen_range(0..planes.len());
                match rng.gen_range(0..3) {
                    0 => planes[i] = random_plane(f, &mut rng),
                    1 => planes.push(planes[i]),
                    _ => {
                        let b = planes[i].basis();
                        let v = random_plane(f, &mut rng).basis()[0];
                        let s = Subspace::span(f, &[b[0], b[1], v]);
                        if s.rank() == 3 {
                            planes.push(s);
                        }
                    }
                }
            }
            let a = verify_naive(f, &planes).unwrap();
            let b = verify_line_index(f, &planes).unwrap();
            assert!(a.agrees_with(&b), "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn tiny_inputs() {
        let f = FieldSpec::with_order(2).unwrap();
        let u = Subspace::span(&f, &[unit(0), unit(1), unit(2)]);
        let x = Subspace::span(&f, &[unit(3), unit(4), unit(5)]);
        for planes in [vec![], vec![u]] {
            let a = verify_naive(&f, &planes).unwrap();
            let b = verify_line_index(&f, &planes).unwrap();
            assert_eq!(a.min_distance, None);
            assert!(a.agrees_with(&b));
        }
        let a = verify_naive(&f, &[u, x]).unwrap();
        let b = verify_line_index(&f, &[u, x]).unwrap();
        assert_eq!(a.min_distance, Some(6));
        assert!(a.agrees_with(&b));
        let line = Subspace::span(&f, &[unit(0), unit(1)]);
        assert_eq!(
            verify_naive(&f, &[u, line]).unwrap_err(),
            VerifyError::NotAPlane(1)
        );
    }

    #[test]
    fn line_maker_matches_plane_lines() {
        let f = FieldSpec::with_order(4).unwrap();
        let lm = LineMaker::new(&f);
        let geo = Geometry::new(4).unwrap();
        let code = build_code(&geo).unwrap();
        for p in code.spaces().iter().step_by(97) {
            let mut a = lm.line_keys(&f, p);
            let mut b: Vec<u128> = p
                .plane_lines(&f)
                .iter()
                .map(|l| l.key(pack_bits(4)))
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn completeness_small() {
        let geo = Geometry::new(2).unwrap();
        let f = geo.f();
        let code = build_code(&geo).unwrap();
        let r = completeness_check(f, &code.spaces()).unwrap();
        assert_eq!(r.candidates, 1395);
        // brute force oracle
        let all = enumerate_planes5(f, 2).unwrap();
        let spaces = code.spaces();
        let oracle: Vec<Subspace<6>> = all
            .into_iter()
            .filter(|c| spaces.iter().all(|s| subspace_distance(f, c, s) >= 4))
            .collect();
        assert_eq!(r.addable, oracle);
        let mut extended = spaces.clone();
        extended.extend(&r.greedy_added);
        assert_eq!(
            verify_naive(f, &extended)
                .unwrap()
                .min_distance
                .unwrap_or(4),
            4
        );
        // greedy is maximal
        for c in &r.addable {
            if !r.greedy_added.contains(c) {
                assert!(r
                    .greedy_added
                    .iter()
                    .any(|g| subspace_distance(f, c, g) < 4));
            }
        }
    }

    #[test]
    fn parameter_reports() {
        let geo = Geometry::new(3).unwrap();
        let code = build_code(&geo).unwrap();
        let r = parameter_report(&geo, &code, true).unwrap();
        assert_eq!(r.family_counts, [144, 13, 78, 39]);
        assert_eq!(
            (r.m, r.min_distance, r.normalizer_order),
            (274, Some(4), 39)
        );
        assert!(r.passes());
        assert!(r.to_string().contains("(6, 274, 4; 3)_3"));
        let geo = Geometry::new(2).unwrap();
        let r = parameter_report(&geo, &build_code(&geo).unwrap(), false).unwrap();
        assert_eq!((r.m, r.optimum_q2, r.min_distance), (43, Some(77), None));
        assert!(r.m as u64 <= r.optimum_q2.unwrap());
    }

    #[test]
    fn completeness_bound() {
        let f = FieldSpec::with_order(7).unwrap();
        assert_eq!(
            completeness_check(&f, &[]).unwrap_err(),
            VerifyError::BoundExceeded { q: 7, bound: 5 }
        );
    }
}
