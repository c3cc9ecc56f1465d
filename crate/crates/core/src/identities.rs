//! Algebraic identity suite behind `clarke-kin check`.
//!
//! Every identity is evaluated numerically and reported with its largest residual, so a
//! failing build shows which relation broke and by how much.

use std::fmt;

use nalgebra::{DMatrix, DVector, Matrix2};

use crate::joint_space::{self, basis};
use crate::legacy::{legacy_from_clarke, legacy_from_displacements, LegacyScheme};
use crate::{ClarkeTransform, Result, RobotGeometry, Tolerances};

/// Random joint-space samples per legacy scheme.
pub const EQUIVALENCE_SAMPLES: usize = 1000;

/// Singular values above this count towards the projector rank.
pub const RANK_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityResult {
    pub identity: &'static str,
    pub n: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl fmt::Display for IdentityResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<4} n={:<3} {:<43} residual={:.3e} tol={:.1e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.n,
            self.identity,
            self.max_residual,
            self.tolerance
        )
    }
}

fn record(
    out: &mut Vec<IdentityResult>,
    identity: &'static str,
    n: usize,
    residual: f64,
    tol: f64,
) {
    out.push(IdentityResult {
        identity,
        n,
        max_residual: residual,
        tolerance: tol,
        passed: residual <= tol,
    });
}

/// `max|a - b| / max(|b|)`, or the absolute difference when `b` is zero.
pub fn relative_residual(a: &[f64], b: &[f64]) -> f64 {
    let diff = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let scale = b.iter().map(|y| y.abs()).fold(0.0, f64::max);
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

/// Runs every identity for a single joint count.
pub fn check_joint_count(
    n: usize,
    d: f64,
    l: f64,
    tol: &Tolerances,
    seed: u64,
) -> Result<Vec<IdentityResult>> {
    let transform = ClarkeTransform::new(RobotGeometry::symmetric(n, d, l)?);
    let abs = tol.matrix_abs;
    let rel = tol.vector_rel;
    let nf = n as f64;
    let mut out = Vec::new();

    let m = transform.matrix();
    let mp = m.forward();
    let mr = m.right_inverse();
    let id2 = mp * mr - Matrix2::identity();
    record(&mut out, "M_P M_P^R = I2", n, id2.abs().max(), abs);

    let scaled = (mp.transpose() * (nf / 2.0) - mr).abs().max();
    record(&mut out, "M_P^R = (n/2) M_P^T", n, scaled, abs);

    let p = transform.projector();
    record(&mut out, "P P = P", n, (&p * &p - &p).abs().max(), abs);
    record(&mut out, "trace(P) = 2", n, (p.trace() - 2.0).abs(), abs);
    record(
        &mut out,
        "det(P) = 0",
        n,
        p.clone().determinant().abs(),
        abs,
    );
    // diagonal of P is 2/n, so P - I has an entry of size at least 1/3
    let off_identity = (&p - DMatrix::identity(n, n)).abs().max();
    record(
        &mut out,
        "max|P - I_n| >= 1/3",
        n,
        (1.0 / 3.0 - off_identity).max(0.0),
        abs,
    );

    let singular = p.clone().singular_values();
    let above = singular.iter().filter(|s| **s > RANK_THRESHOLD).count();
    let tail = singular
        .iter()
        .filter(|s| **s <= RANK_THRESHOLD)
        .fold(0.0f64, |a, s| a.max(*s));
    let rank_residual = if above == 2 { tail } else { f64::INFINITY };
    record(&mut out, "rank(P) = 2", n, rank_residual, RANK_THRESHOLD);

    let ones = DVector::from_element(n, 1.0);
    record(&mut out, "M_P 1 = 0", n, (mp * &ones).amax(), abs);
    record(&mut out, "P 1 = 0", n, (&p * &ones).amax(), abs);

    let psi = transform.geometry().psi();
    let mut one_hot_norm = 0.0f64;
    let mut one_hot_cos = 0.0f64;
    for k in 0..n {
        let image = p.column(k) * (nf / 2.0);
        one_hot_norm = one_hot_norm.max((image.norm_squared() - nf / 2.0).abs());
        for i in 0..n {
            one_hot_cos = one_hot_cos.max((image[i] - (psi[i] - psi[k]).cos()).abs());
        }
    }
    record(&mut out, "|(n/2) P e_k|^2 = n/2", n, one_hot_norm, abs);
    record(
        &mut out,
        "(n/2) P e_k = cos(psi_i - psi_k)",
        n,
        one_hot_cos,
        abs,
    );

    let b = basis(&transform);
    record(&mut out, "v1 . v2 = 0", n, b.v1.dot(&b.v2).abs(), abs);
    let norms = (b.v1.norm_squared() - nf / 2.0)
        .abs()
        .max((b.v2.norm_squared() - nf / 2.0).abs());
    record(&mut out, "|v1|^2 = |v2|^2 = n/2", n, norms, abs);

    let clarke =
        joint_space::sample_clarke(&transform, std::f64::consts::PI, EQUIVALENCE_SAMPLES, seed)?;
    let mut round_trip = 0.0f64;
    let mut idempotent = 0.0f64;
    let mut sum_zero = 0.0f64;
    for c in &clarke {
        let rho = transform.inverse(*c);
        let back = transform.forward(&rho)?;
        round_trip = round_trip.max(relative_residual(&[back.re, back.im], &[c.re, c.im]));
        let projected = joint_space::project(&transform, &rho)?;
        idempotent = idempotent.max(relative_residual(projected.as_slice(), rho.as_slice()));
        let scale = rho.as_vector().amax().max(f64::MIN_POSITIVE);
        sum_zero = sum_zero.max(rho.sum().abs() / (nf * scale));
    }
    record(&mut out, "M_P M_P^R rho_bar = rho_bar", n, round_trip, rel);
    record(&mut out, "P rho = rho on joint space", n, idempotent, rel);
    record(&mut out, "sum rho_i = 0 on joint space", n, sum_zero, rel);

    for scheme in LegacyScheme::ALL
        .into_iter()
        .filter(|s| s.joint_count() == n)
    {
        let geometry = transform.geometry();
        let mut worst = 0.0f64;
        for c in &clarke {
            let rho = transform.inverse(*c);
            let direct = legacy_from_displacements(scheme, geometry, &rho)?.components();
            let via_clarke =
                legacy_from_clarke(scheme, geometry, transform.forward(&rho)?)?.components();
            worst = worst.max(relative_residual(
                &[direct.0, direct.1],
                &[via_clarke.0, via_clarke.1],
            ));
        }
        let name = match scheme {
            LegacyScheme::Dian3 => "dian3 joint formulas = Clarke image",
            LegacyScheme::DellaSantina4 => "dellasantina4 joint formulas = Clarke image",
            LegacyScheme::Allen3 => "allen3 joint formulas = Clarke image",
            LegacyScheme::Allen4 => "allen4 joint formulas = Clarke image",
        };
        record(&mut out, name, n, worst, rel);
    }
    Ok(out)
}

/// Runs [`check_joint_count`] for every `n` in `3..=n_max`.
pub fn run_suite(
    n_max: usize,
    d: f64,
    l: f64,
    tol: &Tolerances,
    seed: u64,
) -> Result<Vec<IdentityResult>> {
    let mut all = Vec::new();
    for n in 3..=n_max {
        all.extend(check_joint_count(
            n,
            d,
            l,
            tol,
            seed.wrapping_add(n as u64),
        )?);
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_up_to_sixteen() {
        let results = run_suite(16, 0.01, 0.1, &Tolerances::default(), 1).unwrap();
        let failures: Vec<_> = results.iter().filter(|r| !r.passed).collect();
        assert!(failures.is_empty(), "{failures:#?}");
        let schemes = results
            .iter()
            .filter(|r| r.identity.ends_with("Clarke image"))
            .count();
        assert_eq!(schemes, 4);
    }

    #[test]
    fn too_small_n_max_yields_nothing() {
        assert!(run_suite(2, 0.01, 0.1, &Tolerances::default(), 1)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn zero_tolerance_reports_failures() {
        let tol = Tolerances {
            matrix_abs: 0.0,
            vector_rel: 0.0,
        };
        let results = check_joint_count(7, 0.01, 0.1, &tol, 3).unwrap();
        assert!(results.iter().any(|r| !r.passed));
    }
}
