use clarke_kin::identities::run_suite;
use clarke_kin::Tolerances;

fn main() -> clarke_kin::Result<()> {
    let results = run_suite(8, 0.01, 0.1, &Tolerances::default(), 0)?;
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} checked, {failed} failed", results.len());
    Ok(())
}
