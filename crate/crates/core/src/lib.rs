//! Picard groups, class groups and cohomological Brauer groups of toric
//! varieties, computed from the fan by exact integer linear algebra.

pub mod linalg;
pub mod cone;
pub mod fan;
pub mod io;
pub mod sheaf;
pub mod cech;
pub mod invariants;
pub mod resolution;
pub mod brauer;
