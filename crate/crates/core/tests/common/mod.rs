//! Test-only oracles, independent of the library's closed forms.
#![allow(dead_code)]

use nalgebra::Vector3;

/// Tip position of a constant-curvature arc by composite Simpson integration of the
/// unit tangent `(sin(k s) cos t, sin(k s) sin t, cos(k s))` over `s in [0, l]`.
pub fn arc_tip_by_quadrature(theta: f64, phi: f64, l: f64, steps: usize) -> Vector3<f64> {
    assert!(steps.is_multiple_of(2));
    let kappa = phi / l;
    let h = l / steps as f64;
    let tangent = |s: f64| {
        let (sk, ck) = (kappa * s).sin_cos();
        Vector3::new(sk * theta.cos(), sk * theta.sin(), ck)
    };
    let mut acc = tangent(0.0) + tangent(l);
    for i in 1..steps {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += tangent(i as f64 * h) * w;
    }
    acc * (h / 3.0)
}

/// Median of adjacent differences and the largest one along a polyline.
pub fn adjacent_jump_stats(points: &[Vector3<f64>]) -> (f64, f64) {
    let mut diffs: Vec<f64> = points.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let max = diffs.iter().cloned().fold(0.0, f64::max);
    diffs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = diffs[diffs.len() / 2];
    (median, max)
}

/// `max|a - b| / max|b|`.
pub fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
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

/// Simple seeded generator so tests do not depend on the crate's sampler.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Self(
            seed.wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407),
        )
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}
