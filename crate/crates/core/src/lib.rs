//! Constant-dimension subspace codes in PG(5, q) built from plane quadrics.
//!
//! The code consists of four families of planes of PG(5, q): the orbit of a
//! Singer-invariant conic bundle under PGL(3, q), the nets of quadrics singular
//! at a point, and two families attached to pairs of points of PG(2, q) and
//! conjugate pairs of PG(2, q²). Any two planes meet in at most a point.

pub mod checks;
pub mod construction;
pub mod galois;
pub mod groups;
pub mod linalg;
pub mod projgeom;
pub mod quadrics;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] galois::FieldError),
    #[error(transparent)]
    Geometry(#[from] projgeom::GeomError),
    #[error(transparent)]
    Quadric(#[from] quadrics::QuadricError),
    #[error(transparent)]
    Group(#[from] groups::GroupError),
    #[error(transparent)]
    Construction(#[from] construction::ConstructionError),
    #[error(transparent)]
    Verify(#[from] verify::VerifyError),
}
