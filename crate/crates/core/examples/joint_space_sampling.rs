use clarke_kin::joint_space::{basis, contains, project, sample, DEFAULT_MEMBERSHIP_TOL};
use clarke_kin::{ClarkeTransform, Displacements, RobotGeometry};

fn main() -> clarke_kin::Result<()> {
    let t = ClarkeTransform::new(RobotGeometry::symmetric(5, 0.01, 0.1)?);
    let b = basis(&t);
    println!("v1 = {:.4}", b.v1.transpose());
    println!("v2 = {:.4}", b.v2.transpose());

    let samples = sample(&t, std::f64::consts::FRAC_PI_2, 5, 7)?;
    for rho in &samples {
        let inside = contains(&t, rho, DEFAULT_MEMBERSHIP_TOL)?;
        println!("{:>9.5?}  in joint space: {inside}", rho.as_slice());
    }

    // arbitrary actuator commands snap to the nearest valid configuration
    let raw = Displacements::from(vec![0.004, 0.0, 0.001, -0.002, 0.003]);
    let valid = project(&t, &raw)?;
    println!("raw       {:?}", raw.as_slice());
    println!("projected {:.6?}", valid.as_slice());
    println!(
        "raw in joint space: {}",
        contains(&t, &raw, DEFAULT_MEMBERSHIP_TOL)?
    );
    Ok(())
}
