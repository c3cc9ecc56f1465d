//! The joint space: the two-dimensional subspace of valid displacement vectors.
//!
//! It has three equivalent descriptions: the range of `M_P^R`, the span of the
//! basis vectors `v1 = [cos psi_i]` and `v2 = [sin psi_i]`, and the fixed-point set of
//! the projector `M_P^R M_P`. Membership here uses the projector residual.

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitDisc};

use crate::{ClarkeCoords, ClarkeTransform, Displacements, Error, Result};

/// Default relative membership tolerance.
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-9;

/// Orthogonal spanning vectors of the joint space, each with squared norm `n/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpaceBasis {
    pub v1: DVector<f64>,
    pub v2: DVector<f64>,
}

/// The columns of `M_P^R`.
pub fn basis(transform: &ClarkeTransform) -> JointSpaceBasis {
    let mr = transform.matrix().right_inverse();
    JointSpaceBasis {
        v1: mr.column(0).into_owned(),
        v2: mr.column(1).into_owned(),
    }
}

/// `true` iff `max|rho - P rho| <= tol * max(1, max|rho|)`.
pub fn contains(transform: &ClarkeTransform, rho: &Displacements, tol: f64) -> Result<bool> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "membership tolerance",
            value: tol,
        });
    }
    let projected = project(transform, rho)?;
    let residual = (rho.as_vector() - projected.as_vector()).amax();
    Ok(residual <= tol * rho.as_vector().amax().max(1.0))
}

/// `M_P^R M_P rho`; discards only the part of `rho` that `M_P` cannot see.
pub fn project(transform: &ClarkeTransform, rho: &Displacements) -> Result<Displacements> {
    Ok(transform.inverse(transform.forward(rho)?))
}

/// Draws Clarke coordinates uniformly on the disk of radius `d * phi_max`.
pub fn sample_clarke(
    transform: &ClarkeTransform,
    phi_max: f64,
    count: usize,
    seed: u64,
) -> Result<Vec<ClarkeCoords>> {
    if !(phi_max.is_finite() && phi_max > 0.0) {
        return Err(Error::InvalidParameter {
            name: "phi_max",
            value: phi_max,
        });
    }
    if count == 0 {
        return Err(Error::InvalidParameter {
            name: "sample count",
            value: 0.0,
        });
    }
    let radius = transform.geometry().d() * phi_max;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let [x, y]: [f64; 2] = UnitDisc.sample(&mut rng);
            ClarkeCoords::new(radius * x, radius * y)
        })
        .collect())
}

/// Uniform samples of the joint space with bending angle at most `phi_max`.
/// Deterministic for a fixed seed.
pub fn sample(
    transform: &ClarkeTransform,
    phi_max: f64,
    count: usize,
    seed: u64,
) -> Result<Vec<Displacements>> {
    Ok(sample_clarke(transform, phi_max, count, seed)?
        .into_iter()
        .map(|c| transform.inverse(c))
        .collect())
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::RobotGeometry;

    fn transform(n: usize) -> ClarkeTransform {
        ClarkeTransform::new(RobotGeometry::symmetric(n, 0.01, 0.1).unwrap())
    }

    #[test]
    fn basis_examples() {
        let b = basis(&transform(4));
        assert_eq!(b.v1.as_slice(), &[1.0, 0.0, -1.0, 0.0]);
        assert_eq!(b.v2.as_slice(), &[0.0, 1.0, 0.0, -1.0]);
        let b = basis(&transform(3));
        for (x, e) in b.v1.iter().zip([1.0, -0.5, -0.5]) {
            assert!((x - e).abs() < 1e-15);
        }
        for n in 3..=16 {
            let b = basis(&transform(n));
            assert!(b.v1.dot(&b.v2).abs() < 1e-12);
            assert!((b.v1.norm_squared() - n as f64 / 2.0).abs() < 1e-12);
            assert!((b.v2.norm_squared() - n as f64 / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn membership() {
        let t4 = transform(4);
        assert!(contains(&t4, &vec![1.0, 0.0, -1.0, 0.0].into(), 1e-9).unwrap());
        assert!(contains(&t4, &Displacements::zeros(4), 1e-9).unwrap());
        assert!(!contains(&transform(3), &vec![1.0, 1.0, 1.0].into(), 1e-9).unwrap());
        assert!(!contains(&t4, &vec![1.0, 0.0, 0.0, 0.0].into(), 1e-9).unwrap());
        assert!(contains(&t4, &Displacements::zeros(4), 0.0).is_err());
        assert!(matches!(
            contains(&t4, &Displacements::zeros(5), 1e-9),
            Err(Error::LengthMismatch {
                expected: 4,
                found: 5
            })
        ));
    }

    #[test]
    fn projection_examples() {
        let t4 = transform(4);
        let rho: Displacements = vec![1.0, 0.0, -1.0, 0.0].into();
        assert_eq!(project(&t4, &rho).unwrap(), rho);
        let flat = project(&t4, &vec![0.3; 4].into()).unwrap();
        assert!(flat.as_vector().amax() < 1e-15);
        let p = project(&transform(3), &vec![1.0, 0.0, 0.0].into()).unwrap();
        for (x, e) in p.as_slice().iter().zip([2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0]) {
            assert!((x - e).abs() < 1e-15);
        }
    }

    #[test]
    fn samples_lie_in_joint_space() {
        for n in [3, 4, 7] {
            let t = transform(n);
            let d = t.geometry().d();
            let samples = sample(&t, PI, 1000, 42).unwrap();
            assert_eq!(samples.len(), 1000);
            for rho in &samples {
                assert!(rho.sum().abs() <= 1e-12 * n as f64 * d * PI);
                assert!(contains(&t, rho, DEFAULT_MEMBERSHIP_TOL).unwrap());
                assert!(t.forward(rho).unwrap().norm() <= d * PI * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let t = transform(5);
        assert_eq!(
            sample(&t, 1.0, 20, 7).unwrap(),
            sample(&t, 1.0, 20, 7).unwrap()
        );
        assert_ne!(
            sample(&t, 1.0, 20, 7).unwrap(),
            sample(&t, 1.0, 20, 8).unwrap()
        );
    }

    #[test]
    fn sample_mean_is_zero() {
        // per-component std of a uniform disk of radius R is R/2
        let t = transform(4);
        let count = 100_000;
        let radius = t.geometry().d() * PI;
        let samples = sample(&t, PI, count, 1).unwrap();
        let mut mean = DVector::zeros(4);
        for rho in &samples {
            mean += rho.as_vector();
        }
        mean /= count as f64;
        let sigma = radius / 2.0 / (count as f64).sqrt();
        assert!(mean.amax() < 3.0 * sigma, "{mean} vs {sigma}");
    }

    #[test]
    fn sample_rejects_bad_arguments() {
        let t = transform(3);
        assert!(sample(&t, 0.0, 10, 1).is_err());
        assert!(sample(&t, -1.0, 10, 1).is_err());
        assert!(sample(&t, 1.0, 0, 1).is_err());
    }
}
