use clarke_kin::kinematics::{arc_from_clarke, forward_kinematics};
use clarke_kin::{
    ClarkeTransform, Displacements, RegularizationConfig, RobotGeometry, SingularityStrategy,
};

fn main() -> clarke_kin::Result<()> {
    let t = ClarkeTransform::new(RobotGeometry::symmetric(4, 0.01, 0.1)?);
    let config = RegularizationConfig::for_geometry(t.geometry());

    // pull joint 1, release joint 3
    let rho = Displacements::from(vec![0.005, 0.0, -0.005, 0.0]);
    let clarke = t.forward(&rho)?;
    let arc = arc_from_clarke(t.geometry(), clarke)?;
    println!(
        "theta = {:.4} rad, phi = {:.4} rad, kappa = {:.3} 1/m",
        arc.theta(),
        arc.phi(),
        arc.kappa()
    );

    let pose = forward_kinematics(&t, clarke, SingularityStrategy::AnalyticBranch, &config)?;
    let p = pose.position;
    println!("tip position = ({:.6}, {:.6}, {:.6})", p.x, p.y, p.z);
    println!("tip rotation =\n{:.6}", pose.rotation);
    Ok(())
}
