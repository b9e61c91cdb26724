//! Property suites over the geometry, shared by the command line and the
//! acceptance tests. Each check yields a pass/fail line with a short detail.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;
use thiserror::Error;

use crate::construction::{
    conjugate_pair_reps, pi_e, pi_e_generators, pi_i, rational_pairs, Geometry, Solid, SolidFlavor,
    SolidPoints,
};
use crate::galois::{FieldSpec, Fields};
use crate::groups::{
    five_arc_census, lift, orbit_subspaces, pgl_generators, singer_structure_report, Lifted,
};
use crate::projgeom::{enumerate_points, point_count, Point2, Point5, Subspace};
use crate::quadrics::{census, Census, Classifier, PlaneQuadric, QuadricKind};

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("suite '{suite}' supports q <= {bound}, got q = {q}")]
    BoundExceeded {
        suite: &'static str,
        q: u32,
        bound: u32,
    },
    #[error("suite '{0}' needs odd q")]
    NeedsOddQ(&'static str),
    #[error(transparent)]
    Library(#[from] crate::Error),
}

impl From<crate::construction::ConstructionError> for CheckError {
    fn from(e: crate::construction::ConstructionError) -> Self {
        CheckError::Library(e.into())
    }
}

impl From<crate::groups::GroupError> for CheckError {
    fn from(e: crate::groups::GroupError) -> Self {
        CheckError::Library(e.into())
    }
}

impl From<crate::galois::FieldError> for CheckError {
    fn from(e: crate::galois::FieldError) -> Self {
        CheckError::Library(e.into())
    }
}

pub type Result<T> = std::result::Result<T, CheckError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    Census,
    Solids,
    Pp,
    Bundle,
    Singer,
    Arcs,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Census,
        Suite::Solids,
        Suite::Pp,
        Suite::Bundle,
        Suite::Singer,
        Suite::Arcs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Census => "census",
            Suite::Solids => "solids",
            Suite::Pp => "pp",
            Suite::Bundle => "bundle",
            Suite::Singer => "singer",
            Suite::Arcs => "arcs",
        }
    }

    /// Largest q the suite accepts.
    pub fn bound(self) -> u32 {
        match self {
            Suite::Census => 9,
            Suite::Solids => 4,
            Suite::Pp => 5,
            Suite::Bundle => 5,
            Suite::Singer => 7,
            Suite::Arcs => 4,
        }
    }

    /// Whether the suite has something to say at this q.
    pub fn applies(self, q: u32) -> bool {
        q <= self.bound() && !(self == Suite::Singer && q.is_multiple_of(2))
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub q: u32,
    pub passed: bool,
    /// Reported only, never counted as a failure.
    pub informational: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(suite: Suite, name: &'static str, q: u32, passed: bool, detail: String) -> Self {
        Self {
            suite: suite.name(),
            name,
            q,
            passed,
            informational: false,
            detail,
        }
    }

    fn info(suite: Suite, name: &'static str, q: u32, detail: String) -> Self {
        Self {
            suite: suite.name(),
            name,
            q,
            passed: true,
            informational: true,
            detail,
        }
    }

    pub fn failed(&self) -> bool {
        !self.passed && !self.informational
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.informational, self.passed) {
            (true, _) => "INFO",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        write!(
            out,
            "{status} [{} q={}] {}: {}",
            self.suite, self.q, self.name, self.detail
        )
    }
}

pub fn run_suite(suite: Suite, q: u32) -> Result<Vec<CheckOutcome>> {
    if q > suite.bound() {
        return Err(CheckError::BoundExceeded {
            suite: suite.name(),
            q,
            bound: suite.bound(),
        });
    }
    match suite {
        Suite::Census => Ok(vec![census_check(&Fields::new(q)?)]),
        Suite::Solids => solids_checks(&Geometry::new(q)?),
        Suite::Pp => pp_checks(&Geometry::new(q)?),
        Suite::Bundle => bundle_checks(&Geometry::new(q)?),
        Suite::Singer => {
            if q.is_multiple_of(2) {
                return Err(CheckError::NeedsOddQ("singer"));
            }
            singer_check(&Fields::new(q)?).map(|c| vec![c])
        }
        Suite::Arcs => Ok(vec![arcs_check(&Fields::new(q)?)?]),
    }
}

pub fn census_check(fields: &Fields) -> CheckOutcome {
    let f = fields.f();
    let q = f.order();
    let got = census(f);
    let want = Census::expected(q as u64);
    let counts_ok = QuadricKind::ALL
        .iter()
        .all(|k| got.count(*k) == want.count(*k));
    CheckOutcome::new(
        Suite::Census,
        "quadric classes",
        q,
        counts_ok && got.cubic_mismatches == 0,
        format!(
            "({}, {}, {}, {}) expected ({}, {}, {}, {}), cubic mismatches {}",
            got.repeated_lines,
            got.bi_lines,
            got.imaginary_bi_lines,
            got.conics,
            want.repeated_lines,
            want.bi_lines,
            want.imaginary_bi_lines,
            want.conics,
            got.cubic_mismatches
        ),
    )
}

/// `(rank of the meet of the solids, points of π₁ ∩ π₂, points of Q₁ ∩ Q₂)`.
pub type SolidSignature = (usize, usize, usize);

pub fn solid_signature(f: &FieldSpec, a: &Solid, b: &Solid) -> SolidSignature {
    let q = f.order();
    let meet = a.space.meet(f, &b.space).rank();
    let pi = a.tangent_plane.meet(f, &b.tangent_plane).rank();
    let mut common = 0;
    let (mut i, mut j) = (0, 0);
    while i < a.quadric3.len() && j < b.quadric3.len() {
        match a.quadric3[i].cmp(&b.quadric3[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    (meet, if pi == 0 { 0 } else { point_count(q, pi) }, common)
}

/// The case a pair of solids of one flavor should fall into, from the
/// defining points alone: `(case label, signature)`.
pub fn predicted_signature(q: u32, a: &Solid, b: &Solid) -> (&'static str, SolidSignature) {
    let n = point_count(q, 3);
    let q = q as usize;
    let same_line = a.line == b.line;
    match (a.defining, b.defining) {
        (SolidPoints::Rational(a1, a2), SolidPoints::Rational(b1, b2)) => {
            let share = [a1, a2].iter().any(|x| *x == b1 || *x == b2);
            match (share, same_line) {
                (true, true) => ("common point, same line", (3, n, q + 1)),
                (false, true) => ("same line", (3, n, 1)),
                (true, false) => ("common point", (3, 1, q + 2)),
                (false, false) => ("general", (2, 1, 2)),
            }
        }
        _ if same_line => ("same line", (3, n, 1)),
        _ => ("general", (2, 1, 2)),
    }
}

fn solid_pair_census(
    f: &FieldSpec,
    solids: &[Solid],
    suite: Suite,
    name: &'static str,
) -> CheckOutcome {
    let q = f.order();
    let n = solids.len();
    let tallies: Vec<(&'static str, SolidSignature, bool)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..n).map(move |j| {
                let (label, want) = predicted_signature(q, &solids[i], &solids[j]);
                let got = solid_signature(f, &solids[i], &solids[j]);
                (label, got, got == want)
            })
        })
        .collect();
    let mismatches = tallies.iter().filter(|t| !t.2).count();
    let mut cases: BTreeMap<(&'static str, SolidSignature), usize> = BTreeMap::new();
    for (label, sig, _) in &tallies {
        *cases.entry((label, *sig)).or_default() += 1;
    }
    let summary: Vec<String> = cases
        .iter()
        .map(|((label, (r, p, c)), k)| format!("{label} ({r},{p},{c}) x{k}"))
        .collect();
    CheckOutcome::new(
        suite,
        name,
        q,
        mismatches == 0,
        format!(
            "{} pairs, {} mismatches; {}",
            tallies.len(),
            mismatches,
            summary.join("; ")
        ),
    )
}

pub fn solids_checks(geo: &Geometry) -> Result<Vec<CheckOutcome>> {
    let f = geo.f();
    let hyp: Vec<Solid> = rational_pairs(&geo.points)
        .par_iter()
        .map(|(a, b)| Solid::hyperbolic(f, a, b))
        .collect::<std::result::Result<_, _>>()?;
    let ell: Vec<Solid> = conjugate_pair_reps(&geo.fields.quad)
        .par_iter()
        .map(|p| Solid::elliptic(&geo.fields, p))
        .collect::<std::result::Result<_, _>>()?;
    debug_assert!(hyp.iter().all(|s| s.flavor == SolidFlavor::Hyperbolic));
    Ok(vec![
        solid_pair_census(f, &hyp, Suite::Solids, "hyperbolic pairs"),
        solid_pair_census(f, &ell, Suite::Solids, "elliptic pairs"),
    ])
}

/// Orbits of a point set under a single collineation, each in cycle order.
fn cycles(f: &FieldSpec, a: &Lifted, pts: &[Point5]) -> Vec<Vec<Point5>> {
    let mut seen: FxHashSet<Point5> = FxHashSet::default();
    let mut out = Vec::new();
    for p in pts {
        if seen.contains(p) {
            continue;
        }
        let mut orb = vec![*p];
        let mut cur = a.apply_point(f, p);
        while cur != *p {
            orb.push(cur);
            cur = a.apply_point(f, &cur);
        }
        seen.extend(orb.iter().copied());
        out.push(orb);
    }
    out
}

/// Whether the incidence `lines[k] ⊂ 0..points` is a projective plane of
/// order `n`.
pub fn is_projective_plane(points: usize, lines: &[Vec<usize>], n: usize) -> bool {
    let size = n * n + n + 1;
    if points != size || lines.len() != size || lines.iter().any(|l| l.len() != n + 1) {
        return false;
    }
    let mut through = vec![0usize; points * points];
    for l in lines {
        for &a in l {
            for &b in l {
                through[a * points + b] += 1;
            }
        }
    }
    let pairs_ok = (0..points).all(|a| (0..points).all(|b| a == b || through[a * points + b] == 1));
    let lines_meet = lines.iter().enumerate().all(|(i, l)| {
        lines[i + 1..]
            .iter()
            .all(|m| l.iter().filter(|x| m.contains(x)).count() == 1)
    });
    pairs_ok && lines_meet
}

pub fn pp_checks(geo: &Geometry) -> Result<Vec<CheckOutcome>> {
    let f = geo.f();
    let q = geo.q();
    let qs = q as usize;
    let cl = geo.classifier();
    let s = lift(f, &geo.singer.generator);
    let all = enumerate_points::<6>(f);
    let classes: Vec<_> = all
        .par_iter()
        .map(|p| (*p, cl.classify(&PlaneQuadric::from_point(p))))
        .collect();
    let bundle = &geo.bundle;
    let on_conic: Vec<FxHashSet<Point2>> = bundle
        .zeros
        .iter()
        .map(|z| z.iter().copied().collect())
        .collect();

    let pe: FxHashMap<Subspace<6>, (Point2, Point2)> = rational_pairs(&geo.points)
        .par_iter()
        .map(|(a, b)| Ok((pi_e(f, bundle, a, b)?, (*a, *b))))
        .collect::<Result<_>>()?;
    let pi: FxHashSet<Subspace<6>> = conjugate_pair_reps(&geo.fields.quad)
        .par_iter()
        .map(|p| Ok(pi_i(&geo.fields, bundle, p)?))
        .collect::<Result<_>>()?;

    let mut out = Vec::new();
    for kind in [QuadricKind::BiLine, QuadricKind::ImaginaryBiLine] {
        let pts: Vec<Point5> = classes
            .iter()
            .filter(|c| c.1.kind == kind)
            .map(|c| c.0)
            .collect();
        let center: FxHashMap<Point5, Point2> = classes
            .iter()
            .filter(|c| c.1.kind == kind)
            .map(|c| (c.0, c.1.center.expect("bi-lines have a center")))
            .collect();
        let orbits = cycles(f, &s, &pts);
        let want_orbits = if kind == QuadricKind::BiLine {
            qs * (qs + 1) / 2
        } else {
            qs * (qs - 1) / 2
        };
        let label = if kind == QuadricKind::BiLine {
            "bi-line"
        } else {
            "imaginary bi-line"
        };

        let mut planes_ok = true;
        let mut corr_ok = true;
        let mut realized: FxHashSet<Subspace<6>> = FxHashSet::default();
        for orb in &orbits {
            let index: FxHashMap<Point2, usize> = orb
                .iter()
                .enumerate()
                .map(|(i, m)| (center[m], i))
                .collect();
            if index.len() != orb.len() {
                planes_ok = false;
                continue;
            }
            let lines: Vec<Vec<usize>> = bundle
                .zeros
                .iter()
                .map(|z| z.iter().filter_map(|c| index.get(c).copied()).collect())
                .collect();
            planes_ok &= is_projective_plane(orb.len(), &lines, qs);

            for (k, conic_pts) in on_conic.iter().enumerate() {
                let members: Vec<Point5> = orb
                    .iter()
                    .filter(|m| conic_pts.contains(&center[*m]))
                    .copied()
                    .collect();
                if members.len() != qs + 1 {
                    corr_ok = false;
                    continue;
                }
                let span = Subspace::span_points(f, &members);
                let common: Vec<Point2> = geo
                    .points
                    .iter()
                    .filter(|x| {
                        members
                            .iter()
                            .all(|m| PlaneQuadric::from_point(m).eval(f, x.coords()).is_zero())
                    })
                    .copied()
                    .collect();
                corr_ok &= match kind {
                    QuadricKind::BiLine => {
                        common.len() == 2
                            && common.iter().all(|x| conic_pts.contains(x))
                            && pe.get(&span) == Some(&(common[0], common[1]))
                    }
                    _ => common.is_empty() && pi.contains(&span),
                };
                let _ = k;
                realized.insert(span);
            }
        }
        let family = if kind == QuadricKind::BiLine {
            pe.len()
        } else {
            pi.len()
        };
        out.push(CheckOutcome::new(
            Suite::Pp,
            if kind == QuadricKind::BiLine {
                "bi-line orbits are projective planes"
            } else {
                "imaginary bi-line orbits are projective planes"
            },
            q,
            orbits.len() == want_orbits
                && orbits.iter().all(|o| o.len() == point_count(q, 3))
                && planes_ok,
            format!(
                "{} {label} orbits of size {}, expected {want_orbits}",
                orbits.len(),
                orbits.first().map_or(0, |o| o.len())
            ),
        ));
        out.push(CheckOutcome::new(
            Suite::Pp,
            if kind == QuadricKind::BiLine {
                "orbit x conic <-> secant pairs"
            } else {
                "orbit x conic <-> conjugate pairs"
            },
            q,
            corr_ok && realized.len() == family,
            format!(
                "{} distinct planes from (orbit, conic) pairs, family size {family}",
                realized.len()
            ),
        ));
    }
    out.push(r3_census(geo, &s, &classes)?);
    Ok(out)
}

/// Lines of π_e through R₃ = v((PP₁)(PP₂)) meeting O₂ in 3 points and the
/// Singer orbit of R₃ in 2 points, tallied over all Π_e planes.
fn r3_census(
    geo: &Geometry,
    s: &Lifted,
    classes: &[(Point5, crate::quadrics::QuadricClass)],
) -> Result<CheckOutcome> {
    let f = geo.f();
    let q = geo.q();
    let bi: FxHashSet<Point5> = classes
        .iter()
        .filter(|c| c.1.kind == QuadricKind::BiLine)
        .map(|c| c.0)
        .collect();
    let pairs = rational_pairs(&geo.points);
    let counts: Vec<usize> = pairs
        .par_iter()
        .map(|(a, b)| {
            let gens = pi_e_generators(f, &geo.bundle, a, b)?;
            let plane = Subspace::span(f, &gens);
            let r3 = PlaneQuadric::new(f, gens[2])
                .map_err(crate::Error::from)?
                .veronese();
            let orbit: FxHashSet<Point5> = cycles(f, s, &[r3]).remove(0).into_iter().collect();
            let others: Vec<Point5> = plane.points(f).into_iter().filter(|p| *p != r3).collect();
            let mut lines: FxHashSet<Subspace<6>> = FxHashSet::default();
            for p in &others {
                lines.insert(Subspace::span_points(f, &[r3, *p]));
            }
            Ok(lines
                .iter()
                .filter(|l| {
                    let pts = l.points(f);
                    pts.iter().filter(|p| bi.contains(p)).count() == 3
                        && pts.iter().filter(|p| orbit.contains(p)).count() == 2
                })
                .count())
        })
        .collect::<Result<_>>()?;
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for c in counts {
        *hist.entry(c).or_default() += 1;
    }
    let hist: Vec<String> = hist
        .iter()
        .map(|(k, v)| format!("{k} lines x{v}"))
        .collect();
    Ok(CheckOutcome::info(
        Suite::Pp,
        "lines through R3",
        q,
        format!("{} (predicted q-2 = {})", hist.join(", "), q as i64 - 2),
    ))
}

pub fn bundle_checks(geo: &Geometry) -> Result<Vec<CheckOutcome>> {
    let f = geo.f();
    let q = geo.q();
    let conics = &geo.bundle.conics;
    let mut out = Vec::new();
    if f.is_even() {
        let nuclei: FxHashSet<Point2> = conics
            .iter()
            .map(|c| c.nucleus(f))
            .collect::<std::result::Result<_, _>>()
            .map_err(crate::Error::from)?;
        out.push(CheckOutcome::new(
            Suite::Bundle,
            "nuclei distinct",
            q,
            nuclei.len() == conics.len(),
            format!(
                "{} distinct nuclei for {} conics",
                nuclei.len(),
                conics.len()
            ),
        ));
    } else {
        let bad = geo
            .points
            .par_iter()
            .filter(|p| {
                let lines: FxHashSet<_> = conics
                    .iter()
                    .map(|c| *c.polar_line(f, p.coords()).expect("odd q").dual())
                    .collect();
                lines.len() != conics.len()
            })
            .count();
        out.push(CheckOutcome::new(
            Suite::Bundle,
            "polar lines distinct",
            q,
            bad == 0,
            format!(
                "{} of {} points with a repeated polar line",
                bad,
                geo.points.len()
            ),
        ));
    }
    if q <= 4 {
        out.push(bundle_pair_check(geo)?);
    }
    Ok(out)
}

/// Pairs of bundles in the orbit sharing more than one conic, compared both
/// as quadrics and as sets of rational points.
pub fn bundle_pair_check(geo: &Geometry) -> Result<CheckOutcome> {
    let f = geo.f();
    let q = geo.q();
    let cl = Classifier::new(f);
    let orbit = orbit_subspaces(f, geo.bundle.plane, &pgl_generators(&geo.fields), 1 << 26)?;
    let mut zero_id: FxHashMap<Vec<Point2>, u32> = FxHashMap::default();
    let members: Vec<Vec<u32>> = orbit
        .iter()
        .map(|s| {
            let mut ids: Vec<u32> = s
                .points(f)
                .iter()
                .map(|p| {
                    let z = cl.zeros(&PlaneQuadric::from_point(p));
                    let next = zero_id.len() as u32;
                    *zero_id.entry(z).or_insert(next)
                })
                .collect();
            ids.sort_unstable();
            ids
        })
        .collect();
    let n = orbit.len();
    let (as_quadrics, as_sets) = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut a = 0;
            let mut b = 0;
            for j in i + 1..n {
                if orbit[i].meet(f, &orbit[j]).rank() > 1 {
                    a += 1;
                }
                if members[i]
                    .iter()
                    .filter(|x| members[j].binary_search(x).is_ok())
                    .count()
                    > 1
                {
                    b += 1;
                }
            }
            (a, b)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    Ok(CheckOutcome::new(
        Suite::Bundle,
        "bundle pairs share at most one conic",
        q,
        as_quadrics == 0 && as_sets == 0,
        format!(
            "{} bundles, {} pairs; sharing >1 conic: {} as quadrics, {} as point sets",
            n,
            n * (n - 1) / 2,
            as_quadrics,
            as_sets
        ),
    ))
}

pub fn singer_check(fields: &Fields) -> Result<CheckOutcome> {
    let r = singer_structure_report(fields)?;
    let n = point_count(r.q, 3);
    Ok(CheckOutcome::new(
        Suite::Singer,
        "cubic hypersurface under the Singer group",
        r.q,
        r.passes(),
        format!(
            "{} points on S, {} orbits x {}, caps: {}, span PG(5,q): {}, invariant planes: {}, disjoint from S: {}",
            r.cubic_points,
            r.cubic_orbit_sizes.len(),
            if r.cubic_orbit_sizes.iter().all(|&s| s == n) { n.to_string() } else { format!("{:?}", r.cubic_orbit_sizes) },
            yes(r.all_caps),
            yes(r.all_span_pg5),
            r.invariant_planes,
            yes(r.invariant_planes_disjoint_from_s)
        ),
    ))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Fails whenever some pair of triangles has no 5-arc among its vertices.
pub fn arcs_check(fields: &Fields) -> Result<CheckOutcome> {
    let c = five_arc_census(fields)?;
    Ok(CheckOutcome::new(
        Suite::Arcs,
        "every triangle pair contains a 5-arc",
        c.q,
        c.pairs_without_arc == 0,
        format!(
            "{} triangles, {} pairs, {} without a 5-arc, {} sharing a vertex",
            c.triangles, c.pairs, c.pairs_without_arc, c.pairs_sharing_vertex
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_plane_is_a_projective_plane() {
        let lines = vec![
            vec![0, 1, 3],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![3, 4, 6],
            vec![4, 5, 0],
            vec![5, 6, 1],
            vec![6, 0, 2],
        ];
        assert!(is_projective_plane(7, &lines, 2));
        let mut broken = lines.clone();
        broken[6] = vec![6, 0, 1];
        assert!(!is_projective_plane(7, &broken, 2));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert!(!Suite::Singer.applies(4));
        assert!(matches!(
            run_suite(Suite::Solids, 5),
            Err(CheckError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn small_suites_pass() {
        for q in [2, 3] {
            for s in [Suite::Census, Suite::Solids, Suite::Pp, Suite::Bundle] {
                for c in run_suite(s, q).unwrap() {
                    assert!(!c.failed(), "{c}");
                }
            }
        }
    }
}
