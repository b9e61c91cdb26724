use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::galois::Elem;
use crate::groups::{lift, orbit_subspaces, pgl_generators};
use crate::projgeom::{Point2, Subspace};

use super::{
    conjugate_pair_reps, net_plane, pi_e, pi_i, rational_pairs, ConstructionError, Geometry, Result,
};

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
pub enum Provenance {
    /// A plane in the PGL(3, q)-orbit of the bundle plane.
    #[serde(rename = "C")]
    FromBundleOrbit,
    #[serde(rename = "N")]
    NetN,
    #[serde(rename = "PE")]
    PiE,
    #[serde(rename = "PI")]
    PiI,
}

impl Provenance {
    pub const ALL: [Provenance; 4] = [
        Provenance::FromBundleOrbit,
        Provenance::NetN,
        Provenance::PiE,
        Provenance::PiI,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Provenance::FromBundleOrbit => "C",
            Provenance::NetN => "N",
            Provenance::PiE => "PE",
            Provenance::PiI => "PI",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.tag() == s)
    }
}

/// The datum a plane was built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneParams {
    /// Index into the sorted bundle orbit.
    Orbit(usize),
    Net(Point2),
    Pair(Point2, Point2),
    /// Representative of a conjugate pair, coordinates in GF(q²).
    Conjugate([Elem; 3]),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodePlane {
    pub space: Subspace<6>,
    pub provenance: Option<Provenance>,
    pub params: Option<PlaneParams>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    pub q: u32,
    /// Sorted by echelon basis, no duplicates.
    pub planes: Vec<CodePlane>,
}

/// `q³(q²−1)(q−1)/3 + (q²+1)(q²+q+1)`.
pub fn expected_size(q: u64) -> u64 {
    expected_family_sizes(q).iter().sum()
}

/// Sizes of the families C, N, Π_e, Π_i.
pub fn expected_family_sizes(q: u64) -> [u64; 4] {
    let n = q * q + q + 1;
    [
        q.pow(3) * (q * q - 1) * (q - 1) / 3,
        n,
        q * (q + 1) * n / 2,
        q * (q - 1) * n / 2,
    ]
}

impl Code {
    pub fn from_planes(q: u32, mut planes: Vec<CodePlane>) -> Self {
        planes.sort_by_key(|a| a.space);
        Self { q, planes }
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    pub fn spaces(&self) -> Vec<Subspace<6>> {
        self.planes.iter().map(|p| p.space).collect()
    }

    pub fn family_counts(&self) -> [usize; 4] {
        Provenance::ALL.map(|tag| {
            self.planes
                .iter()
                .filter(|p| p.provenance == Some(tag))
                .count()
        })
    }

    /// Whether every listed collineation maps the set of planes onto itself.
    pub fn invariant_under(
        &self,
        f: &crate::galois::FieldSpec,
        maps: &[crate::groups::Lifted],
    ) -> Vec<bool> {
        let set: FxHashSet<Subspace<6>> = self.planes.iter().map(|p| p.space).collect();
        maps.iter()
            .map(|m| {
                self.planes
                    .par_iter()
                    .all(|p| set.contains(&m.apply(f, &p.space)))
            })
            .collect()
    }
}

/// Assembles C ∪ N ∪ Π_e ∪ Π_i and checks size and distinctness.
pub fn build_code(geo: &Geometry) -> Result<Code> {
    let f = geo.f();
    let q = geo.q();
    let gens = pgl_generators(&geo.fields);
    let orbit = orbit_subspaces(f, geo.bundle.plane, &gens, 1 << 26)?;
    let mut planes: Vec<CodePlane> = orbit
        .into_iter()
        .enumerate()
        .map(|(i, s)| CodePlane {
            space: s,
            provenance: Some(Provenance::FromBundleOrbit),
            params: Some(PlaneParams::Orbit(i)),
        })
        .collect();

    let nets: Vec<CodePlane> = geo
        .points
        .par_iter()
        .map(|a| {
            Ok(CodePlane {
                space: net_plane(f, a)?,
                provenance: Some(Provenance::NetN),
                params: Some(PlaneParams::Net(*a)),
            })
        })
        .collect::<Result<_>>()?;
    let pe: Vec<CodePlane> = rational_pairs(&geo.points)
        .par_iter()
        .map(|(a, b)| {
            Ok(CodePlane {
                space: pi_e(f, &geo.bundle, a, b)?,
                provenance: Some(Provenance::PiE),
                params: Some(PlaneParams::Pair(*a, *b)),
            })
        })
        .collect::<Result<_>>()?;
    let pi: Vec<CodePlane> = conjugate_pair_reps(&geo.fields.quad)
        .par_iter()
        .map(|p| {
            Ok(CodePlane {
                space: pi_i(&geo.fields, &geo.bundle, p)?,
                provenance: Some(Provenance::PiI),
                params: Some(PlaneParams::Conjugate(*p)),
            })
        })
        .collect::<Result<_>>()?;
    planes.extend(nets);
    planes.extend(pe);
    planes.extend(pi);

    let code = Code::from_planes(q, planes);
    if code.planes.windows(2).any(|w| w[0].space == w[1].space) {
        return Err(ConstructionError::Duplicate);
    }
    let expected = expected_size(q as u64) as usize;
    if code.len() != expected {
        return Err(ConstructionError::SizeMismatch {
            expected,
            got: code.len(),
        });
    }
    Ok(code)
}

/// `lift(s)` and `lift(frob)` for the Singer cycle of the geometry.
pub fn normalizer_lifts(geo: &Geometry) -> [crate::groups::Lifted; 2] {
    let f = geo.f();
    [lift(f, &geo.singer.generator), lift(f, &geo.singer.frob)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        assert_eq!(expected_size(2), 43);
        assert_eq!(expected_size(3), 274);
        assert_eq!(expected_size(4), 1317);
        assert_eq!(expected_size(5), 4806);
        assert_eq!(expected_family_sizes(3), [144, 13, 78, 39]);
        assert_eq!(expected_family_sizes(4), [960, 21, 210, 126]);
    }

    #[test]
    fn small_codes() {
        for q in [2, 3] {
            let geo = Geometry::new(q).unwrap();
            let code = build_code(&geo).unwrap();
            let want = expected_family_sizes(q as u64).map(|x| x as usize);
            assert_eq!(code.family_counts(), want);
            assert_eq!(
                code.invariant_under(geo.f(), &normalizer_lifts(&geo)),
                vec![true, true]
            );
        }
    }

    #[test]
    fn provenance_tags_round_trip() {
        for p in Provenance::ALL {
            assert_eq!(Provenance::from_tag(p.tag()), Some(p));
        }
        assert_eq!(Provenance::from_tag("X"), None);
    }
}
