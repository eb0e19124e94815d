//! Tableaux and polynomials in their JSON forms, and the agreement between
//! the stage recursion and the stability polynomial.

use rkcert::fixtures::sun_shu;
use rkcert::linalg::{CVector, C64};
use rkcert::rk::{eval_poly_matrix, ButcherTableau, StabilityPolynomial};

fn main() -> rkcert::Result<()> {
    let json = r#"{"s":3,"a":[[0,0,0],[0.5,0,0],[-1,2,0]],"b":[0.16666666666666666,0.6666666666666666,0.16666666666666666]}"#;
    let t = ButcherTableau::from_json_str(json)?;
    let poly = StabilityPolynomial::from_tableau(&t)?;
    println!("order {} polynomial {}", poly.order(), poly.to_json_string());

    let m = sun_shu();
    let u = CVector::from_element(3, C64::new(1.0, 0.0));
    let tau = 0.3;
    let by_stages = t.step(&m, tau, &u);
    let by_poly = eval_poly_matrix(&poly, &m, tau).as_matrix() * &u;
    println!("stage vs polynomial gap {:e}", (by_stages - by_poly).norm());
    Ok(())
}
