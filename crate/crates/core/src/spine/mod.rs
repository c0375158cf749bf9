//! Vertices of the spine of outer space for `W_n`: marked trees of groups of order 2.

pub mod marked;
pub mod shape;

pub use marked::{
    labeled_vertex_of_class, star_center, standard_f_star, standard_f_star_pointed, standard_zero_star,
    standard_zero_star_pointed, zero_stars_adjacent_to_f_star, AdjacentZeroStar, MarkedGraph,
    SpineVertex,
};
pub use shape::{enumerate_shapes, GraphShape, ShapeSummary, StarClass};
