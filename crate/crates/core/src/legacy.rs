//! Conversions between Clarke coordinates and earlier two-parameter segment
//! representations, plus the absolute-length <-> displacement relation `l_i = l - rho_i`.
//!
//! Sign convention for the Allen schemes follows the joint-value formulas
//! `u = (l_2 - l_3) / (sqrt(3) d)` (n = 3) and `u = (l_2 - l_4) / d` (n = 4), which give
//! `u = -rho_im / d` and `u = -2 rho_im / d` respectively.

use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;

use crate::{ClarkeCoords, Displacements, Error, Result, RobotGeometry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LegacyScheme {
    /// Dian et al., `(dx, dy)`, three joints.
    Dian3,
    /// Della Santina et al., `(delta_x, delta_y)`, four joints.
    DellaSantina4,
    /// Allen et al., `(u, v)`, three joints.
    Allen3,
    /// Allen et al., `(u, v)`, four joints.
    Allen4,
}

impl LegacyScheme {
    pub const ALL: [LegacyScheme; 4] = [
        LegacyScheme::Dian3,
        LegacyScheme::DellaSantina4,
        LegacyScheme::Allen3,
        LegacyScheme::Allen4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LegacyScheme::Dian3 => "dian3",
            LegacyScheme::DellaSantina4 => "dellasantina4",
            LegacyScheme::Allen3 => "allen3",
            LegacyScheme::Allen4 => "allen4",
        }
    }

    pub fn joint_count(self) -> usize {
        match self {
            LegacyScheme::Dian3 | LegacyScheme::Allen3 => 3,
            LegacyScheme::DellaSantina4 | LegacyScheme::Allen4 => 4,
        }
    }

    /// Column names of the two parameters.
    pub fn parameter_names(self) -> [&'static str; 2] {
        match self {
            LegacyScheme::Dian3 | LegacyScheme::DellaSantina4 => ["delta_x", "delta_y"],
            LegacyScheme::Allen3 | LegacyScheme::Allen4 => ["u", "v"],
        }
    }

    pub fn check(self, geometry: &RobotGeometry) -> Result<()> {
        if geometry.n() == self.joint_count() {
            Ok(())
        } else {
            Err(Error::SchemeMismatch {
                scheme: self.name(),
                required: self.joint_count(),
                found: geometry.n(),
            })
        }
    }
}

impl fmt::Display for LegacyScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LegacyScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LegacyScheme::ALL
            .into_iter()
            .find(|scheme| scheme.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName {
                kind: "scheme",
                name: s.to_string(),
            })
    }
}

/// A scheme-tagged parameter pair, so `(u, v)` and `(dx, dy)` never mix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LegacyPair {
    Dian3 { dx: f64, dy: f64 },
    DellaSantina4 { delta_x: f64, delta_y: f64 },
    Allen3 { u: f64, v: f64 },
    Allen4 { u: f64, v: f64 },
}

impl LegacyPair {
    /// Builds a pair from its two parameters in [`LegacyScheme::parameter_names`] order.
    pub fn new(scheme: LegacyScheme, p1: f64, p2: f64) -> Self {
        match scheme {
            LegacyScheme::Dian3 => LegacyPair::Dian3 { dx: p1, dy: p2 },
            LegacyScheme::DellaSantina4 => LegacyPair::DellaSantina4 {
                delta_x: p1,
                delta_y: p2,
            },
            LegacyScheme::Allen3 => LegacyPair::Allen3 { u: p1, v: p2 },
            LegacyScheme::Allen4 => LegacyPair::Allen4 { u: p1, v: p2 },
        }
    }

    pub fn scheme(&self) -> LegacyScheme {
        match self {
            LegacyPair::Dian3 { .. } => LegacyScheme::Dian3,
            LegacyPair::DellaSantina4 { .. } => LegacyScheme::DellaSantina4,
            LegacyPair::Allen3 { .. } => LegacyScheme::Allen3,
            LegacyPair::Allen4 { .. } => LegacyScheme::Allen4,
        }
    }

    pub fn components(&self) -> (f64, f64) {
        match *self {
            LegacyPair::Dian3 { dx, dy } => (dx, dy),
            LegacyPair::DellaSantina4 { delta_x, delta_y } => (delta_x, delta_y),
            LegacyPair::Allen3 { u, v } | LegacyPair::Allen4 { u, v } => (u, v),
        }
    }
}

/// Absolute actuation lengths `l_i` in meters.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsoluteLengths(pub DVector<f64>);

impl AbsoluteLengths {
    pub fn as_slice(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<f64>> for AbsoluteLengths {
    fn from(v: Vec<f64>) -> Self {
        Self(DVector::from_vec(v))
    }
}

/// `rho_i = l - l_i`.
pub fn lengths_to_displacements(
    geometry: &RobotGeometry,
    lengths: &AbsoluteLengths,
) -> Result<Displacements> {
    geometry.check_len(lengths.len())?;
    Ok(Displacements(lengths.0.map(|li| geometry.l() - li)))
}

/// `l_i = l - rho_i`.
pub fn displacements_to_lengths(
    geometry: &RobotGeometry,
    rho: &Displacements,
) -> Result<AbsoluteLengths> {
    geometry.check_len(rho.len())?;
    Ok(AbsoluteLengths(rho.0.map(|r| geometry.l() - r)))
}

/// Legacy pair as a linear image of the Clarke coordinates.
pub fn legacy_from_clarke(
    scheme: LegacyScheme,
    geometry: &RobotGeometry,
    clarke: ClarkeCoords,
) -> Result<LegacyPair> {
    scheme.check(geometry)?;
    let d = geometry.d();
    let (re, im) = (clarke.re, clarke.im);
    Ok(match scheme {
        LegacyScheme::Dian3 => LegacyPair::Dian3 { dx: re, dy: im },
        LegacyScheme::DellaSantina4 => LegacyPair::DellaSantina4 {
            delta_x: re,
            delta_y: im,
        },
        LegacyScheme::Allen3 => LegacyPair::Allen3 {
            u: -im / d,
            v: re / d,
        },
        LegacyScheme::Allen4 => LegacyPair::Allen4 {
            u: -2.0 * im / d,
            v: 2.0 * re / d,
        },
    })
}

/// Exact inverse of [`legacy_from_clarke`].
pub fn clarke_from_legacy(geometry: &RobotGeometry, pair: LegacyPair) -> Result<ClarkeCoords> {
    pair.scheme().check(geometry)?;
    let d = geometry.d();
    Ok(match pair {
        LegacyPair::Dian3 { dx, dy } => ClarkeCoords::new(dx, dy),
        LegacyPair::DellaSantina4 { delta_x, delta_y } => ClarkeCoords::new(delta_x, delta_y),
        LegacyPair::Allen3 { u, v } => ClarkeCoords::new(v * d, -u * d),
        LegacyPair::Allen4 { u, v } => ClarkeCoords::new(v * d / 2.0, -u * d / 2.0),
    })
}

/// Legacy pair from the published joint-value formulas, written in displacements.
///
/// Does not go through `M_P`; agreement with
/// `legacy_from_clarke(forward(rho))` is what makes each scheme a Clarke-coordinate
/// special case.
pub fn legacy_from_displacements(
    scheme: LegacyScheme,
    geometry: &RobotGeometry,
    rho: &Displacements,
) -> Result<LegacyPair> {
    scheme.check(geometry)?;
    geometry.check_len(rho.len())?;
    let d = geometry.d();
    let r = rho.as_slice();
    let sqrt3 = 3f64.sqrt();
    Ok(match scheme {
        LegacyScheme::Dian3 => LegacyPair::Dian3 {
            dx: (2.0 * r[0] - r[1] - r[2]) / 3.0,
            dy: (r[1] - r[2]) / sqrt3,
        },
        LegacyScheme::DellaSantina4 => LegacyPair::DellaSantina4 {
            delta_x: (r[0] - r[2]) / 2.0,
            delta_y: (r[1] - r[3]) / 2.0,
        },
        LegacyScheme::Allen3 => LegacyPair::Allen3 {
            u: (r[2] - r[1]) / (sqrt3 * d),
            v: (2.0 * r[0] - r[1] - r[2]) / (3.0 * d),
        },
        LegacyScheme::Allen4 => LegacyPair::Allen4 {
            u: (r[3] - r[1]) / d,
            v: (r[0] - r[2]) / d,
        },
    })
}

/// Legacy pair from the published absolute-length formulas.
pub fn legacy_from_lengths(
    scheme: LegacyScheme,
    geometry: &RobotGeometry,
    lengths: &AbsoluteLengths,
) -> Result<LegacyPair> {
    scheme.check(geometry)?;
    geometry.check_len(lengths.len())?;
    let d = geometry.d();
    let l = lengths.as_slice();
    let sqrt3 = 3f64.sqrt();
    Ok(match scheme {
        LegacyScheme::Dian3 => LegacyPair::Dian3 {
            dx: (l[1] + l[2] - 2.0 * l[0]) / 3.0,
            dy: (l[2] - l[1]) / sqrt3,
        },
        LegacyScheme::DellaSantina4 => LegacyPair::DellaSantina4 {
            delta_x: (l[2] - l[0]) / 2.0,
            delta_y: (l[3] - l[1]) / 2.0,
        },
        LegacyScheme::Allen3 => LegacyPair::Allen3 {
            u: (l[1] - l[2]) / (sqrt3 * d),
            v: ((l[0] + l[1] + l[2]) / 3.0 - l[0]) / d,
        },
        LegacyScheme::Allen4 => LegacyPair::Allen4 {
            u: (l[1] - l[3]) / d,
            v: (l[2] - l[0]) / d,
        },
    })
}
