//! Order-condition indicators of a few stability polynomials.

use rkcert::rk::{coefficient_condition, combined_condition, ks_indicators, StabilityPolynomial};

fn main() -> rkcert::Result<()> {
    let polys = [
        ("euler", StabilityPolynomial::truncated_exponential(1)),
        ("rk4", StabilityPolynomial::truncated_exponential(4)),
        // p = 2 with z^3 weighted 1/3 instead of 1/6 (normalized c_3 = 2).
        ("custom", StabilityPolynomial::from_real_normalized(&[1.0, 1.0, 1.0, 2.0])?),
    ];
    for (name, poly) in &polys {
        let ind = ks_indicators(poly);
        println!(
            "{name:<7} p={} gamma={:?} delta={:?} condition(c)={:?} combined={:?}",
            ind.order,
            ind.gamma,
            ind.delta,
            coefficient_condition(poly).truth,
            combined_condition(poly).truth
        );
    }
    Ok(())
}
