//! Arc parameters, the regularized Clarke magnitude and constant-curvature forward
//! kinematics.
//!
//! The map from Clarke coordinates to arc parameters,
//! `(rho_re, rho_im) = d * phi * (cos theta, sin theta)`, needs no constant-curvature
//! assumption and has no singularity. The constant-curvature tip pose does: written in
//! `(theta, phi)` it divides by `phi` (equivalently by the Clarke magnitude
//! `m = d * phi`), which vanishes in the straight configuration. A
//! [`SingularityStrategy`] decides how that regime is evaluated.
//!
//! All thresholds compare the Clarke magnitude `m` (meters) with
//! [`RegularizationConfig::epsilon`] (meters).

use std::f64::consts::{LN_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Vector3};

use crate::{ClarkeCoords, ClarkeTransform, Displacements, Error, Result, RobotGeometry};

/// Bending-plane angle `theta` in `(-pi, pi]` and bending angle `phi >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcParams {
    theta: f64,
    phi: f64,
    kappa: f64,
}

impl ArcParams {
    /// `kappa = phi / segment_length`; `theta` is wrapped into `(-pi, pi]`.
    pub fn new(theta: f64, phi: f64, segment_length: f64) -> Result<Self> {
        if !(phi.is_finite() && phi >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "bending angle phi",
                value: phi,
            });
        }
        if !theta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "bending-plane angle theta",
                value: theta,
            });
        }
        if !(segment_length.is_finite() && segment_length > 0.0) {
            return Err(Error::InvalidParameter {
                name: "segment length l",
                value: segment_length,
            });
        }
        Ok(Self {
            theta: wrap_angle(theta),
            phi,
            kappa: phi / segment_length,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Curvature under the constant-curvature interpretation, in 1/m.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Set when the segment bends past a full circle.
    pub fn exceeds_full_circle(&self) -> bool {
        self.phi > TAU
    }
}

fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(TAU);
    if t > PI {
        t -= TAU;
    }
    t
}

/// Arc parameters from Clarke coordinates. `theta = 0` in the straight configuration.
pub fn arc_from_clarke(geometry: &RobotGeometry, clarke: ClarkeCoords) -> Result<ArcParams> {
    if !clarke.is_finite() {
        return Err(Error::InvalidParameter {
            name: "Clarke coordinate",
            value: f64::NAN,
        });
    }
    let magnitude = clarke.norm();
    let phi = magnitude / geometry.d();
    let theta = if magnitude > 0.0 {
        clarke.im.atan2(clarke.re)
    } else {
        0.0
    };
    ArcParams::new(theta, phi, geometry.l())
}

/// `d * phi * (cos theta, sin theta)`, which equals `d * l * kappa * (cos theta, sin theta)`.
pub fn clarke_from_arc(geometry: &RobotGeometry, arc: &ArcParams) -> ClarkeCoords {
    let (s, c) = arc.theta.sin_cos();
    let r = geometry.d() * arc.phi;
    ClarkeCoords::new(r * c, r * s)
}

/// Decaying function `f` used by the adaptive regularization: `f(0) = 1`, `f(inf) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decay {
    /// `exp(-t)`
    Exponential,
    /// `2 / (1 + exp(t))`
    MirroredLogistic,
}

impl Decay {
    pub fn eval(self, t: f64) -> f64 {
        match self {
            Decay::Exponential => (-t).exp(),
            Decay::MirroredLogistic => 2.0 / (1.0 + t.exp()),
        }
    }

    pub fn derivative(self, t: f64) -> f64 {
        match self {
            Decay::Exponential => -(-t).exp(),
            Decay::MirroredLogistic => {
                let e = (-t).exp();
                -2.0 * e / ((1.0 + e) * (1.0 + e))
            }
        }
    }
}

impl FromStr for Decay {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "exponential" => Ok(Decay::Exponential),
            "mirrored-logistic" => Ok(Decay::MirroredLogistic),
            _ => Err(Error::UnknownName {
                kind: "decay function",
                name: s.to_string(),
            }),
        }
    }
}

/// Parameters of `sqrt(2/n rho^T rho) + epsilon * f(a + b rho^T rho)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizationConfig {
    epsilon: f64,
    a: f64,
    b: f64,
    decay: Decay,
}

impl RegularizationConfig {
    pub fn new(epsilon: f64, a: f64, b: f64, decay: Decay) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                value: epsilon,
            });
        }
        if !a.is_finite() {
            return Err(Error::InvalidParameter {
                name: "decay offset a",
                value: a,
            });
        }
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::InvalidParameter {
                name: "decay rate b",
                value: b,
            });
        }
        Ok(Self {
            epsilon,
            a,
            b,
            decay,
        })
    }

    /// `epsilon = 1e-9 d`, `a = 0`, exponential decay, and `b` chosen so the additive
    /// term halves once `rho^T rho` reaches `epsilon * d`.
    pub fn for_geometry(geometry: &RobotGeometry) -> Self {
        Self::with_epsilon(geometry, 1e-9 * geometry.d())
            .expect("default epsilon is positive for a valid geometry")
    }

    /// Same defaults as [`for_geometry`](Self::for_geometry) with a caller-chosen epsilon.
    pub fn with_epsilon(geometry: &RobotGeometry, epsilon: f64) -> Result<Self> {
        Self::new(
            epsilon,
            0.0,
            LN_2 / (epsilon * geometry.d()),
            Decay::Exponential,
        )
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    /// The additive term `epsilon * f(a + b s)` as a function of `s = rho^T rho`.
    pub fn additive_term(&self, squared_norm: f64) -> f64 {
        self.epsilon * self.decay.eval(self.a + self.b * squared_norm)
    }

    /// d/ds of [`additive_term`](Self::additive_term).
    pub fn additive_term_derivative(&self, squared_norm: f64) -> f64 {
        self.epsilon * self.b * self.decay.derivative(self.a + self.b * squared_norm)
    }
}

/// `sqrt(2/n rho^T rho)`, which equals the Clarke magnitude for `rho` in the joint space.
pub fn clarke_magnitude(geometry: &RobotGeometry, rho: &Displacements) -> Result<f64> {
    geometry.check_len(rho.len())?;
    Ok((2.0 / geometry.n() as f64 * rho.as_vector().norm_squared()).sqrt())
}

/// Clarke magnitude plus a smooth additive term that vanishes away from the origin.
/// Strictly positive for every `rho`.
pub fn regularized_magnitude(
    geometry: &RobotGeometry,
    rho: &Displacements,
    config: &RegularizationConfig,
) -> Result<f64> {
    let squared = rho.as_vector().norm_squared();
    Ok(clarke_magnitude(geometry, rho)? + config.additive_term(squared))
}

/// How the forward kinematics treats the straight configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularityStrategy {
    /// Refuse configurations whose Clarke magnitude is below epsilon.
    AvoidStraight,
    /// Evaluate with magnitude `m + epsilon`.
    AddEpsilon,
    /// Evaluate with magnitude `max(m, epsilon)`.
    SaturateEpsilon,
    /// Truncated series below epsilon, closed form above.
    LinearizeNearZero,
    /// Closed form, exact limit when `m == 0`.
    AnalyticBranch,
    /// Evaluate with the regularized magnitude.
    AdaptiveEpsilon,
}

impl SingularityStrategy {
    pub const ALL: [SingularityStrategy; 6] = [
        SingularityStrategy::AvoidStraight,
        SingularityStrategy::AddEpsilon,
        SingularityStrategy::SaturateEpsilon,
        SingularityStrategy::LinearizeNearZero,
        SingularityStrategy::AnalyticBranch,
        SingularityStrategy::AdaptiveEpsilon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SingularityStrategy::AvoidStraight => "avoid-straight",
            SingularityStrategy::AddEpsilon => "add-epsilon",
            SingularityStrategy::SaturateEpsilon => "saturate-epsilon",
            SingularityStrategy::LinearizeNearZero => "linearize-near-zero",
            SingularityStrategy::AnalyticBranch => "analytic-branch",
            SingularityStrategy::AdaptiveEpsilon => "adaptive-epsilon",
        }
    }
}

impl fmt::Display for SingularityStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SingularityStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        SingularityStrategy::ALL
            .into_iter()
            .find(|strategy| strategy.name() == key)
            .ok_or_else(|| Error::UnknownName {
                kind: "singularity strategy",
                name: s.to_string(),
            })
    }
}

/// Tip frame: position in meters and a rotation matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub position: Vector3<f64>,
    pub rotation: Matrix3<f64>,
}

impl Pose {
    pub fn identity() -> Self {
        Self {
            position: Vector3::zeros(),
            rotation: Matrix3::identity(),
        }
    }

    /// `self` followed by `next` expressed in the frame of `self`.
    pub fn compose(&self, next: &Pose) -> Pose {
        Pose {
            position: self.position + self.rotation * next.position,
            rotation: self.rotation * next.rotation,
        }
    }

    /// Largest entry of `|R^T R - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        (self.rotation.transpose() * self.rotation - Matrix3::identity())
            .abs()
            .max()
    }

    /// Row-major `[x, y, z, r11, r12, ..., r33]`.
    pub fn to_row(&self) -> [f64; 12] {
        let mut row = [0.0; 12];
        row[..3].copy_from_slice(self.position.as_slice());
        for i in 0..3 {
            for j in 0..3 {
                row[3 + 3 * i + j] = self.rotation[(i, j)];
            }
        }
        row
    }
}

/// `sin(x) / x`
fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// `(1 - cos x) / x^2` via the half-angle form.
fn versine_ratio(x: f64) -> f64 {
    let half = sinc(0.5 * x);
    0.5 * half * half
}

/// Rotation `R_z(theta) R_y(phi) R_z(-theta)` given the bend vector
/// `(a, b) = phi (cos theta, sin theta)` and evaluators for `sin(phi)/phi` and
/// `(1 - cos phi)/phi^2`.
fn bend_rotation(a: f64, b: f64, sin_ratio: f64, versine: f64) -> Matrix3<f64> {
    let skew = Matrix3::new(0.0, 0.0, a, 0.0, 0.0, b, -a, -b, 0.0);
    let square = Matrix3::new(
        a * a,
        a * b,
        0.0,
        a * b,
        b * b,
        0.0,
        0.0,
        0.0,
        a * a + b * b,
    );
    Matrix3::identity() + skew * sin_ratio - square * versine
}

/// Closed-form pose with effective bending angle `phi` and in-plane direction `(wx, wy)`;
/// rotation is taken from the true bend vector `(a, b)`.
fn closed_form_pose(l: f64, phi: f64, wx: f64, wy: f64, a: f64, b: f64) -> Pose {
    let lateral = l * phi * versine_ratio(phi);
    let bend = a.hypot(b);
    Pose {
        position: Vector3::new(lateral * wx, lateral * wy, l * sinc(phi)),
        rotation: bend_rotation(a, b, sinc(bend), versine_ratio(bend)),
    }
}

/// Closed form with magnitude `effective` standing in for the Clarke magnitude in every
/// denominator.
fn regularized_pose(geometry: &RobotGeometry, clarke: ClarkeCoords, effective: f64) -> Pose {
    let d = geometry.d();
    closed_form_pose(
        geometry.l(),
        effective / d,
        clarke.re / effective,
        clarke.im / effective,
        clarke.re / d,
        clarke.im / d,
    )
}

/// Second-order series about the straight configuration; no division by the magnitude.
fn series_pose(geometry: &RobotGeometry, clarke: ClarkeCoords) -> Pose {
    let (l, d) = (geometry.l(), geometry.d());
    let (a, b) = (clarke.re / d, clarke.im / d);
    let phi2 = a * a + b * b;
    let sin_ratio = 1.0 - phi2 / 6.0 + phi2 * phi2 / 120.0;
    let versine = 0.5 - phi2 / 24.0 + phi2 * phi2 / 720.0;
    Pose {
        position: Vector3::new(l * versine * a, l * versine * b, l * sin_ratio),
        rotation: bend_rotation(a, b, sin_ratio, versine),
    }
}

/// Single-segment constant-curvature tip pose relative to the base frame.
///
/// Position is `(l/phi) [(1 - cos phi) cos theta, (1 - cos phi) sin theta, sin phi]`,
/// rotation `R_z(theta) R_y(phi) R_z(-theta)`.
pub fn forward_kinematics(
    transform: &ClarkeTransform,
    clarke: ClarkeCoords,
    strategy: SingularityStrategy,
    config: &RegularizationConfig,
) -> Result<Pose> {
    if !clarke.is_finite() {
        return Err(Error::InvalidParameter {
            name: "Clarke coordinate",
            value: f64::NAN,
        });
    }
    let geometry = transform.geometry();
    let magnitude = clarke.norm();
    let epsilon = config.epsilon();
    let pose = match strategy {
        SingularityStrategy::AvoidStraight => {
            if magnitude < epsilon {
                return Err(Error::StraightConfiguration { magnitude, epsilon });
            }
            regularized_pose(geometry, clarke, magnitude)
        }
        SingularityStrategy::AnalyticBranch => {
            if magnitude == 0.0 {
                Pose {
                    position: Vector3::new(0.0, 0.0, geometry.l()),
                    rotation: Matrix3::identity(),
                }
            } else {
                regularized_pose(geometry, clarke, magnitude)
            }
        }
        SingularityStrategy::LinearizeNearZero => {
            if magnitude < epsilon {
                series_pose(geometry, clarke)
            } else {
                regularized_pose(geometry, clarke, magnitude)
            }
        }
        SingularityStrategy::AddEpsilon => regularized_pose(geometry, clarke, magnitude + epsilon),
        SingularityStrategy::SaturateEpsilon => {
            regularized_pose(geometry, clarke, magnitude.max(epsilon))
        }
        SingularityStrategy::AdaptiveEpsilon => {
            let rho = transform.inverse(clarke);
            let effective = regularized_magnitude(geometry, &rho, config)?;
            regularized_pose(geometry, clarke, effective)
        }
    };
    Ok(pose)
}

/// Forward kinematics over a trajectory; output order follows input order.
pub fn forward_kinematics_batch(
    transform: &ClarkeTransform,
    trajectory: &[ClarkeCoords],
    strategy: SingularityStrategy,
    config: &RegularizationConfig,
) -> Result<Vec<Pose>> {
    trajectory
        .iter()
        .map(|&c| forward_kinematics(transform, c, strategy, config))
        .collect()
}

/// Tip pose of serially stacked segments, each with its own geometry.
pub fn chain_forward_kinematics(
    segments: &[(&ClarkeTransform, ClarkeCoords)],
    strategy: SingularityStrategy,
    config: &RegularizationConfig,
) -> Result<Pose> {
    segments
        .iter()
        .try_fold(Pose::identity(), |acc, (transform, clarke)| {
            Ok(acc.compose(&forward_kinematics(transform, *clarke, strategy, config)?))
        })
}
