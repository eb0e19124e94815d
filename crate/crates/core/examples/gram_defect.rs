//! The defect ‖R(τL)*R(τL) - e^{τL*}e^{τL}‖₂ is O(τ^{p+1}), with a leading
//! coefficient set by the first mismatched polynomial coefficient.

use rkcert::fixtures::sun_shu;
use rkcert::rk::scheme_by_name;
use rkcert::verifier::{gram_defect, GramDefect};

fn main() -> rkcert::Result<()> {
    let m = sun_shu();
    let poly = scheme_by_name("rk4")?.polynomial;
    let d = gram_defect(&poly, &m, &GramDefect::default_grid(&m))?;
    println!("fitted order {:?} from {} points", d.fitted_order, d.fit_points);
    println!(
        "coefficient: predicted {:.6e}, measured {:?}, series {:.6e}",
        d.predicted_coefficient, d.measured_coefficient, d.series_coefficient
    );
    Ok(())
}
