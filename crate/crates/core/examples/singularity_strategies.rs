//! Tip x-coordinate of every strategy as the segment passes through straight.

use clarke_kin::kinematics::forward_kinematics;
use clarke_kin::{
    ClarkeCoords, ClarkeTransform, RegularizationConfig, RobotGeometry, SingularityStrategy,
};

fn main() -> clarke_kin::Result<()> {
    let t = ClarkeTransform::new(RobotGeometry::symmetric(4, 0.01, 0.1)?);
    let config = RegularizationConfig::for_geometry(t.geometry());
    let eps = config.epsilon();
    println!("epsilon = {eps:e} m");

    print!("{:>12}", "rho_re");
    for s in SingularityStrategy::ALL {
        print!(" {:>20}", s.name());
    }
    println!();
    for k in -4..=4 {
        let re = k as f64 * 0.5 * eps;
        print!("{re:>12.3e}");
        for s in SingularityStrategy::ALL {
            match forward_kinematics(&t, ClarkeCoords::new(re, 0.0), s, &config) {
                Ok(pose) => print!(" {:>20.6e}", pose.position.x),
                Err(_) => print!(" {:>20}", "straight"),
            }
        }
        println!();
    }
    Ok(())
}
