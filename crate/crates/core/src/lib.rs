//! Numerical tools for the Birkhoff polytope of bistochastic matrices:
//! bracelet conditions, unistochasticity witnesses, factorisable products,
//! circulant spectra and the hypocycloid regions that contain them.
//!
//! ```
//! use birkhoff_lab::{certify, fixtures, Verdict};
//!
//! let q = fixtures::q_matrix();
//! assert_eq!(certify(&q)?.verdict(), Verdict::NotUnistochastic);
//! # Ok::<(), birkhoff_lab::Error>(())
//! ```

pub mod bracelet;
pub mod circulant;
pub mod complex;
pub mod error;
pub mod explorer;
pub mod fixtures;
pub mod io;
pub mod matrix;
pub mod polar;
pub mod sinkhorn;
pub mod spectra;
pub mod tolerance;
pub mod unistochastic;

pub use bracelet::{
    bracelet_pair, compose_factors, is_bracelet, star_ray_scan, trotter_factorise_center_ray, Axis, BraceletReport,
    ElementaryFactor, Violation,
};
pub use circulant::{circulant_eigenvalues, CirculantVector, SpectrumSet};
pub use complex::ComplexSquareMatrix;
pub use error::{Error, Result};
pub use matrix::{make_bistochastic, BistochasticMatrix};
pub use polar::polar_unitary_factor;
pub use sinkhorn::sinkhorn_sample;
pub use spectra::{minkowski_closure_sample, spectrum_in_hypocycloid, ComplexPoint, HypocycloidRegion};
pub use tolerance::Tolerances;
pub use unistochastic::{certify, certify_exact, certify_with, Certificate, HeuristicConfig, UnitaryWitness, Verdict};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/bistochastic.md")]
    mod bistochastic {}
    #[doc = include_str!("../../../book/src/bracelet.md")]
    mod bracelet {}
    #[doc = include_str!("../../../book/src/unistochastic.md")]
    mod unistochastic {}
    #[doc = include_str!("../../../book/src/hypocycloid.md")]
    mod hypocycloid {}
    #[doc = include_str!("../../../book/src/explorer.md")]
    mod explorer {}
}
