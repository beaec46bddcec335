//! Planar and low-dimensional geometric primitives.

mod distance;
mod extent;
mod hausdorff;
mod hull;
mod orient;
mod point;
mod sphere;

pub use distance::{
    dist_point_hull_2d, dist_point_hull_nd, project_onto_hull_nd, NdProjection, ND_ITERATION_CAP,
};
pub use extent::{directional_extent, get_max, StreamingArgMax};
pub use hausdorff::hausdorff_boundary_2d;
pub use hull::{convex_hull_2d, Hull2D};
pub use orient::{orientation, Orientation};
pub use point::{Direction, Point};
pub use sphere::{sample_unit_sphere, MIN_GAUSSIAN_NORM};

pub(crate) use distance::{dist_hull_xy, hull_distance_exceeds, seg_dist_xy};
pub(crate) use orient::{cross2, orient2, orient_tol};
pub(crate) use point::common_dim;
