//! Standard and type F triangulations and the touching counters n_{i,k}, m_{i,k}.

mod counts;
mod simplex;
mod standard;
mod typef;

pub use counts::{cone_counts, profile_counts, touching_count, BoundaryMode, ConeCounts, Region};
pub use simplex::{facet_hyperplane, is_subdivision, matched_facets, touch_counts, LatticeSimplex, Point, Triangulation};
pub use standard::{
    chamber_to_cone, closed_form_touch_count, face_codimension, kuhn_chamber, standard_cube_triangulation, standard_simplex_triangulation, standard_touch_count,
};
pub use typef::{build_type_f, type_f_from_hint, validate_fan, ConeHint, HintMode, Origin, Piece, TypeFCone};
