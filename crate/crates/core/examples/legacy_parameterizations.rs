//! The four published two-parameter schemes expressed through Clarke coordinates.

use clarke_kin::legacy::{
    clarke_from_legacy, displacements_to_lengths, legacy_from_clarke, legacy_from_lengths,
};
use clarke_kin::{ClarkeCoords, ClarkeTransform, LegacyScheme, RobotGeometry};

fn main() -> clarke_kin::Result<()> {
    let clarke = ClarkeCoords::new(0.0015, 0.0025);
    for scheme in LegacyScheme::ALL {
        let t = ClarkeTransform::new(RobotGeometry::symmetric(scheme.joint_count(), 0.01, 0.1)?);
        let g = t.geometry();
        let pair = legacy_from_clarke(scheme, g, clarke)?;
        let lengths = displacements_to_lengths(g, &t.inverse(clarke))?;
        let from_lengths = legacy_from_lengths(scheme, g, &lengths)?;
        let back = clarke_from_legacy(g, pair)?;
        let [p1, p2] = scheme.parameter_names();
        let (a, b) = pair.components();
        let (la, lb) = from_lengths.components();
        println!(
            "{:<14} {p1}={a:+.6} {p2}={b:+.6}  from lengths {la:+.6} {lb:+.6}  back ({:.4}, {:.4})",
            scheme.name(),
            back.re,
            back.im
        );
    }
    Ok(())
}
