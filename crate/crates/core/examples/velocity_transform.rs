//! Joint rates map through the same matrix as displacements.

use clarke_kin::{ClarkeTransform, Displacements, RobotGeometry};

fn main() -> clarke_kin::Result<()> {
    let t = ClarkeTransform::new(RobotGeometry::symmetric(3, 0.01, 0.1)?);
    let rate = Displacements::from(vec![0.002, -0.001, -0.001]);
    let clarke_rate = t.forward(&rate)?;
    println!("joint rates   {:?} m/s", rate.as_slice());
    println!(
        "Clarke rates  ({:.6}, {:.6}) m/s",
        clarke_rate.re, clarke_rate.im
    );

    let mut rho = Displacements::zeros(3);
    let dt = 0.01;
    for step in 1..=5 {
        rho = Displacements::from(rho.as_vector() + rate.as_vector() * dt);
        let c = t.forward(&rho)?;
        println!(
            "t = {:.2} s  rho_bar = ({:.7}, {:.7})",
            step as f64 * dt,
            c.re,
            c.im
        );
    }
    Ok(())
}
