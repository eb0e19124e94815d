//! Splitting off the skew-Hermitian part of a matrix that is not
//! asymptotically stable.

use rkcert::hypocoercivity::{block_diagonalize, imaginary_axis_witness};
use rkcert::linalg::ComplexMatrix;
use rkcert::tolerance::RANK_REL;

fn main() -> rkcert::Result<()> {
    // Damped first coordinate coupled to the second; the third is a pure rotation.
    #[rustfmt::skip]
    let m = ComplexMatrix::from_real_rows(4, &[
        -1.0,  1.0, 0.0,  0.0,
        -1.0,  0.0, 0.0,  0.0,
         0.0,  0.0, 0.0,  2.0,
         0.0,  0.0, -2.0, 0.0,
    ])?;
    let form = block_diagonalize(&m, RANK_REL)?;
    println!("sizes {:?}, off-diagonal {:e}", form.sizes(), form.off_diagonal);
    if let Some(l2) = &form.l2 {
        println!("skew block = {l2}");
    }
    let w = imaginary_axis_witness(&m, 1e-9)?;
    println!("imaginary-axis eigenvector found: {}", w.is_some());
    Ok(())
}
