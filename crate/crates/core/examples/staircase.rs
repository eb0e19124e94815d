//! Staircase form of the Levy–Tadmor matrix: five 1×1 blocks, R̃ nonzero
//! only in the leading block, J̃ block tridiagonal.

use rkcert::fixtures::levy_tadmor;
use rkcert::hypocoercivity::staircase_of;
use rkcert::tolerance::RANK_REL;

fn main() -> rkcert::Result<()> {
    let m = levy_tadmor();
    let form = staircase_of(&m, RANK_REL)?;
    println!("r = {}, sizes {:?}", form.block_count, form.block_sizes);
    println!("J~ = {}", form.j_t);
    println!("R~ = {}", form.r_t);
    for d in &form.decisions {
        println!("step {} rank {} gap {:?}", d.step, d.rank, d.gap());
    }
    let err = (form.reconstruct() - m.as_matrix()).norm();
    println!("reconstruction error {err:e}");
    assert!(err < 1e-10);
    Ok(())
}
