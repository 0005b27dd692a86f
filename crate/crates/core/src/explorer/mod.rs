//! Data pipelines: simplex grids, eigenvalue scatters, classified plane
//! sections of the polytope, and the product-closure fuzz harness.

mod fuzz;
mod grid;
mod raster;
mod scatter;

pub use fuzz::{fuzz_monoid_conjecture, revalidate_violation, write_violation, FuzzReport, DEFAULT_FUZZ_SEED};
pub use grid::{composition_count, grid_divisions, simplex_grid, DEFAULT_GRID_CAP};
pub use raster::{
    center_pixel, lattice_segment, raster_cross_section, raster_tetrahedron_slice, CrossSectionSpec, PixelClass, Raster,
    TetraPlane, TetraSlice,
};
pub use scatter::{boundary_sample_count, eigenvalue_scatter, EigenvalueScatter, ScatterSummary, BOUNDARY_SAMPLES};
