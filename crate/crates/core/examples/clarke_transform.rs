//! Forward and inverse transform for a few joint counts.

use clarke_kin::{ClarkeCoords, ClarkeTransform, Displacements, RobotGeometry};

fn main() -> clarke_kin::Result<()> {
    for n in [3, 4, 6] {
        let t = ClarkeTransform::new(RobotGeometry::symmetric(n, 0.01, 0.1)?);
        println!("n = {n}");
        println!("M_P =\n{:.4}", t.matrix().forward());

        let rho = t.inverse(ClarkeCoords::new(0.002, -0.001));
        println!("inverse(0.002, -0.001) = {:?}", rho.as_slice());
        println!("sum of displacements   = {:.1e}", rho.sum());

        // a constant pre-tension on every joint is invisible
        let loaded = Displacements::from(rho.as_vector().add_scalar(0.5));
        let c = t.forward(&loaded)?;
        println!("forward(rho + 0.5)     = ({:.6}, {:.6})\n", c.re, c.im);
    }
    Ok(())
}
