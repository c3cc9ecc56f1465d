//! Generalized Clarke transform for displacement-actuated continuum robots.
//!
//! A segment with `n >= 3` displacement-actuated joints placed symmetrically on a
//! cross-section of radius `d` has only two degrees of freedom. The generalized
//! Clarke transformation matrix maps the `n` joint displacements onto two Clarke
//! coordinates `(rho_re, rho_im)` and its right inverse maps them back.
//!
//! The crate is organized as:
//!
//! * [`clarke`] - geometry, the transformation matrix pair and the projector.
//! * [`joint_space`] - membership, projection, spanning basis and sampling of the
//!   two-dimensional joint space.
//! * [`legacy`] - exact adapters to the Dian, Della Santina and Allen parameterizations.
//! * [`kinematics`] - arc parameters, the regularized magnitude and constant-curvature
//!   forward kinematics with selectable straight-configuration handling.
//! * [`identities`] - the algebraic identity suite used by `clarke-kin check`.
//! * [`cli`] and [`table`] - the batch command-line front end and its CSV format.
//!
//! ```
//! use clarke_kin::{ClarkeTransform, Displacements, RobotGeometry};
//!
//! let transform = ClarkeTransform::new(RobotGeometry::symmetric(4, 0.01, 0.1).unwrap());
//! let clarke = transform.forward(&Displacements::from(vec![1.0, 0.0, -1.0, 0.0])).unwrap();
//! assert_eq!((clarke.re, clarke.im), (1.0, 0.0));
//! ```

pub mod clarke;
pub mod cli;
mod error;
pub mod identities;
pub mod joint_space;
pub mod kinematics;
pub mod legacy;
pub mod table;

pub use clarke::{
    generic_clarke_matrix, ClarkeCoords, ClarkeMatrix, ClarkeTransform, Displacements,
    RobotGeometry, Tolerances,
};
pub use error::{Error, Result};
pub use joint_space::JointSpaceBasis;
pub use kinematics::{ArcParams, Decay, Pose, RegularizationConfig, SingularityStrategy};
pub use legacy::{AbsoluteLengths, LegacyPair, LegacyScheme};
