//! Robot geometry, the generalized Clarke transformation matrix and its right inverse.

use std::f64::consts::{FRAC_PI_2, TAU};

use nalgebra::{DMatrix, DVector, Matrix2xX, Matrix3, MatrixXx2, Vector2};

use crate::{Error, Result};

/// Largest deviation of a supplied joint angle from `2*pi*(i-1)/n`.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Kinematic design parameters of one segment.
///
/// Joint angles are always `psi_i = 2*pi*(i-1)/n`; joint 1 sits on the positive
/// first axis. Indices are 0-based in code.
#[derive(Debug, Clone, PartialEq)]
pub struct RobotGeometry {
    n: usize,
    psi: Vec<f64>,
    d: f64,
    l: f64,
}

impl RobotGeometry {
    /// `n` symmetrically placed joints at offset distance `d` on a segment of length `l`.
    pub fn symmetric(n: usize, d: f64, l: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewJoints(n));
        }
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::InvalidParameter {
                name: "offset distance d",
                value: d,
            });
        }
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::InvalidParameter {
                name: "segment length l",
                value: l,
            });
        }
        let psi = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
        Ok(Self { n, psi, d, l })
    }

    /// Builds a geometry from explicit joint angles, rejecting any non-symmetric arrangement.
    pub fn with_angles(psi: &[f64], d: f64, l: f64) -> Result<Self> {
        let geometry = Self::symmetric(psi.len(), d, l)?;
        for (joint, (&found, &expected)) in psi.iter().zip(&geometry.psi).enumerate() {
            let deviation = (found - expected).abs();
            if deviation.is_nan() || deviation > SYMMETRY_TOLERANCE {
                return Err(Error::NonSymmetricJoints {
                    joint: joint + 1,
                    expected,
                    found,
                });
            }
        }
        Ok(geometry)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn psi(&self) -> &[f64] {
        &self.psi
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    /// `(cos psi_i, sin psi_i)` of joint `i` (0-based).
    ///
    /// Evaluated by exact quarter-turn reduction, so joints on the axes get exact
    /// zeros and ones.
    pub fn joint_direction(&self, i: usize) -> (f64, f64) {
        turn_cos_sin(i % self.n, self.n)
    }

    pub(crate) fn check_len(&self, found: usize) -> Result<()> {
        if found == self.n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.n,
                found,
            })
        }
    }
}

/// cos and sin of `2*pi*k/n`.
fn turn_cos_sin(k: usize, n: usize) -> (f64, f64) {
    let quarter = (4 * k) / n;
    let rem = (4 * k) % n;
    let alpha = FRAC_PI_2 * rem as f64 / n as f64;
    let (s, c) = if rem == 0 {
        (0.0, 1.0)
    } else {
        alpha.sin_cos()
    };
    match quarter % 4 {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

/// Tolerances for matrix identities (absolute) and vector round trips (relative).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub matrix_abs: f64,
    pub vector_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            matrix_abs: 1e-12,
            vector_rel: 1e-12,
        }
    }
}

/// Clarke coordinates `(rho_re, rho_im)` in meters, or their rates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClarkeCoords {
    pub re: f64,
    pub im: f64,
}

impl ClarkeCoords {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_vector(self) -> Vector2<f64> {
        Vector2::new(self.re, self.im)
    }
}

impl From<Vector2<f64>> for ClarkeCoords {
    fn from(v: Vector2<f64>) -> Self {
        Self { re: v.x, im: v.y }
    }
}

/// Joint displacements `rho_i` in meters (or displacement rates).
///
/// Membership in the joint space is not guaranteed; see
/// [`joint_space::contains`](crate::joint_space::contains).
#[derive(Debug, Clone, PartialEq)]
pub struct Displacements(pub DVector<f64>);

impl Displacements {
    pub fn zeros(n: usize) -> Self {
        Self(DVector::zeros(n))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn sum(&self) -> f64 {
        self.0.sum()
    }

    pub fn as_vector(&self) -> &DVector<f64> {
        &self.0
    }
}

impl From<Vec<f64>> for Displacements {
    fn from(v: Vec<f64>) -> Self {
        Self(DVector::from_vec(v))
    }
}

impl From<&[f64]> for Displacements {
    fn from(v: &[f64]) -> Self {
        Self(DVector::from_column_slice(v))
    }
}

impl From<DVector<f64>> for Displacements {
    fn from(v: DVector<f64>) -> Self {
        Self(v)
    }
}

/// The 3x3 Clarke matrix with free parameters `k0` and `k1`.
///
/// `k0 = 2/3, k1 = 1/2` is the amplitude-invariant form and
/// `k0 = sqrt(2/3), k1 = sqrt(2)/2` the power-invariant form.
pub fn generic_clarke_matrix(k0: f64, k1: f64) -> Matrix3<f64> {
    let h = 3f64.sqrt() / 2.0;
    k0 * Matrix3::new(
        1.0, -0.5, -0.5, //
        0.0, h, -h, //
        k1, k1, k1,
    )
}

/// The generalized Clarke transformation matrix `M_P` (2 x n) and its right inverse
/// `M_P^R = (n/2) M_P^T` (n x 2).
#[derive(Debug, Clone, PartialEq)]
pub struct ClarkeMatrix {
    forward: Matrix2xX<f64>,
    right_inverse: MatrixXx2<f64>,
}

impl ClarkeMatrix {
    pub fn new(geometry: &RobotGeometry) -> Self {
        let n = geometry.n();
        let right_inverse = MatrixXx2::from_fn(n, |i, j| {
            let (c, s) = geometry.joint_direction(i);
            if j == 0 {
                c
            } else {
                s
            }
        });
        let forward = right_inverse.transpose() * (2.0 / n as f64);
        Self {
            forward,
            right_inverse,
        }
    }

    pub fn forward(&self) -> &Matrix2xX<f64> {
        &self.forward
    }

    pub fn right_inverse(&self) -> &MatrixXx2<f64> {
        &self.right_inverse
    }

    /// `M_P^R M_P`, the orthogonal projector onto the joint space.
    pub fn projector(&self) -> DMatrix<f64> {
        let p = &self.right_inverse * &self.forward;
        DMatrix::from_column_slice(p.nrows(), p.ncols(), p.as_slice())
    }
}

/// A geometry together with its cached Clarke matrices.
///
/// Forward and inverse maps are plain matrix-vector products; because both matrices
/// are constant they apply equally to displacement rates and Clarke-coordinate rates.
#[derive(Debug, Clone, PartialEq)]
pub struct ClarkeTransform {
    geometry: RobotGeometry,
    matrix: ClarkeMatrix,
}

impl ClarkeTransform {
    pub fn new(geometry: RobotGeometry) -> Self {
        let matrix = ClarkeMatrix::new(&geometry);
        Self { geometry, matrix }
    }

    pub fn geometry(&self) -> &RobotGeometry {
        &self.geometry
    }

    pub fn matrix(&self) -> &ClarkeMatrix {
        &self.matrix
    }

    /// `M_P rho`.
    pub fn forward(&self, rho: &Displacements) -> Result<ClarkeCoords> {
        self.geometry.check_len(rho.len())?;
        Ok((self.matrix.forward() * rho.as_vector()).into())
    }

    /// `M_P^R rho_bar`; the result always lies in the joint space.
    pub fn inverse(&self, clarke: ClarkeCoords) -> Displacements {
        Displacements(self.matrix.right_inverse() * clarke.to_vector())
    }

    pub fn projector(&self) -> DMatrix<f64> {
        self.matrix.projector()
    }
}
