//! Width function, tube volumes and Steklov eigenvalue bounds for compact
//! manifolds with totally geodesic boundary whose sectional curvature is
//! pinched in `[-1, -kappa^2]`.
//!
//! - [`hypgeom`]: space-form ball volumes, the distance function `r(a)`,
//!   adaptive quadrature and monotone inversion.
//! - [`tube`]: the width of a totally geodesic hypersurface and the volume
//!   of its certified tube.
//! - [`sturm`]: finite-difference spectra of geodesic balls and of the
//!   Steklov–Dirichlet collar problem.
//! - [`bounds`]: Steklov eigenvalue bounds assembled from a
//!   [`bounds::ManifoldDescriptor`].
// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod hypgeom;
pub mod sturm;
pub mod tube;

pub use error::{Error, Result};
pub use hypgeom::{PinchedClass, QuadratureSpec, RootFindSpec};
