//! Three stacked segments with different joint counts.

use clarke_kin::kinematics::chain_forward_kinematics;
use clarke_kin::{
    ClarkeCoords, ClarkeTransform, RegularizationConfig, RobotGeometry, SingularityStrategy,
};

fn main() -> clarke_kin::Result<()> {
    let base = ClarkeTransform::new(RobotGeometry::symmetric(3, 0.012, 0.12)?);
    let middle = ClarkeTransform::new(RobotGeometry::symmetric(4, 0.01, 0.1)?);
    let tip = ClarkeTransform::new(RobotGeometry::symmetric(6, 0.006, 0.06)?);
    let config = RegularizationConfig::for_geometry(middle.geometry());

    let segments = [
        (&base, ClarkeCoords::new(0.004, 0.0)),
        (&middle, ClarkeCoords::new(0.0, 0.0)),
        (&tip, ClarkeCoords::new(-0.002, 0.003)),
    ];
    for k in 1..=segments.len() {
        let pose = chain_forward_kinematics(
            &segments[..k],
            SingularityStrategy::AdaptiveEpsilon,
            &config,
        )?;
        let p = pose.position;
        println!(
            "after segment {k}: p = ({:.5}, {:.5}, {:.5})",
            p.x, p.y, p.z
        );
    }
    Ok(())
}
