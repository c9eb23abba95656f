//! Densities of the heterogeneity parameter φ on [-1, 1], the coupling
//! `g(φ) = E[ψ | φ]`, and the moment sequences `E[φ^k]`, `E[ψφ^k]` that
//! drive the aggregate process.
//!
//! ```
//! use hetero_distributions::{Coupling, Density, MomentTable};
//!
//! let density = Density::mixture(0.6, vec![0.15], vec![-0.1], 0.3).unwrap();
//! let table = MomentTable::build(&density, &Coupling::Linear { alpha: 0.3 }, 100).unwrap();
//! assert_eq!(table.mphi[0], 1.0);
//! ```

pub mod coupling;
pub mod density;
pub mod error;
pub mod fourier;
pub mod moments;
pub mod quad;
pub mod sample;
pub mod validate;

pub use coupling::Coupling;
pub use density::{
    bell_normalizer, density_cdf, density_eval, moment_phi, moments_phi, Density, MixtureDensity,
    ParametricDensity, SingularBeta,
};
pub use error::{DistError, Result};
pub use fourier::FourierDensity;
pub use moments::{moment_psi_phi, power_law_moments, MomentTable};
pub use sample::{sample_phi_psi, TabulatedCdf};
pub use validate::{validate_density, ValidationReport};
