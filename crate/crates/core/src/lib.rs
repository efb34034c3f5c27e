//! Finite-dimensional operator theory for unitary orbits.
//!
//! The crate works with dense complex matrices and provides:
//!
//! * [`opcore`]: Hermitian spectral decomposition, singular values, polar
//!   decomposition, exponentials and functional calculus;
//! * [`norming`]: symmetric norming functions (Schatten, Lorentz and its
//!   dual), the ideal norms they induce, adjoints and duality checks;
//! * [`states`]: self-adjoint functionals as density matrices, with support
//!   projections, Jordan decomposition and centralizers;
//! * [`orbits`]: coadjoint orbits of the unitary group, pinching and the
//!   kernel/range splitting of `ad T`;
//! * [`symplectic`]: the orbit 2-form `ω_T`, its radical, the complex
//!   polarization and Kähler checks;
//! * [`cross_section`]: the local cross-section of the orbit map
//!   `V ↦ V*TV` near a finite-rank self-adjoint `T`.

pub mod cross_section;
pub mod error;
pub mod norming;
pub mod opcore;
pub mod orbits;
pub mod random;
pub mod states;
pub mod symplectic;

pub use error::{LeafError, Result};
pub use opcore::{ComplexMatrix, SpectralData, C64};
