//! The quadratic form ‖e^{τL}u‖² expanded to the first order at which the
//! dissipative part sees u, checked on the chain witness.

use rkcert::fixtures::sun_shu;
use rkcert::hypocoercivity::witness_vector;
use rkcert::tolerance::HC_CHAIN;
use rkcert::verifier::quadratic_form_identity;

fn main() -> rkcert::Result<()> {
    let m = sun_shu();
    let u = witness_vector(&m, 2, HC_CHAIN)?;
    let check = quadratic_form_identity(&m, &u, 2)?;
    println!(
        "level {}: lhs {:.12e} rhs {:.12e} matched {}",
        check.level, check.lhs, check.rhs, check.matched
    );
    Ok(())
}
