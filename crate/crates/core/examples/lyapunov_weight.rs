//! A Lyapunov weight P turns an asymptotically stable matrix into a
//! dissipative one: P^{1/2} L P^{-1/2} has negative definite Hermitian part.

use rkcert::fixtures::sun_shu;
use rkcert::linalg::{
    hermitian_part_max_eigenvalue, lyapunov_certificate, solve_lyapunov, transform_to_dissipative,
    ComplexMatrix,
};

fn main() -> rkcert::Result<()> {
    let m = sun_shu();
    let p = solve_lyapunov(&m, &ComplexMatrix::identity(3))?;
    println!("P = {p}");
    let cert = lyapunov_certificate(&m, &p, 1e-9)?.expect("P is a strict weight");
    println!("strict: {}", cert.strict);
    let t = transform_to_dissipative(&m, &p)?;
    println!("max eig of Hermitian part: before {:e}, after {:e}",
        hermitian_part_max_eigenvalue(&m)?, hermitian_part_max_eigenvalue(&t)?);
    Ok(())
}
