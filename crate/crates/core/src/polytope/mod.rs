//! Lattice points, placing triangulations, decorations, half-open
//! decompositions and lattice-point counts of cosmological polytopes.

mod decoration;
mod ehrhart;
mod halfopen;
mod json;
mod lattice;
mod triangulation;

pub use decoration::{
    affine_coordinates, decoration_of, verify_main_bijection, AffineCoordinates, BijectionReport,
    Decoration, DecorationKey, EdgeStatus,
};
pub use ehrhart::{ehrhart_brute, ehrhart_from_hstar, Membership};
pub use halfopen::{
    ehrhart_from_halfopen, h_vector_from_triangulation, half_open_decomposition, visibility_point,
    HalfOpenCell, HalfOpenDecomposition,
};
pub use json::{HalfOpenJson, TriangulationJson};
pub use lattice::{
    default_insertion_order, lattice_points, standard_simplex, LatticePoint, PointLabel,
};
pub use triangulation::{
    placing_triangulation, placing_triangulation_default, random_insertion_order, Triangulation,
    MAX_AMBIENT_DIMENSION,
};
