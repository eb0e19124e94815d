//! Verdicts for one scheme against one matrix: the index bound decides
//! small indices, the coefficient condition refutes large ones.

use rkcert::classifier::classify_pair;
use rkcert::fixtures::{index_one, levy_tadmor, minus_identity, sun_shu};
use rkcert::rk::scheme_by_name;

fn main() -> rkcert::Result<()> {
    let matrices = [
        ("minus-identity", minus_identity(3)),
        ("index-one", index_one()),
        ("sunshu", sun_shu()),
        ("levytadmor", levy_tadmor()),
    ];
    for scheme in ["rk4", "heun3", "texp7"] {
        let poly = scheme_by_name(scheme)?.polynomial;
        for (name, m) in &matrices {
            let v = classify_pair(&poly, m)?;
            println!("{scheme:<6} {name:<15} {:<9} [{}]", v.conclusion.to_string(), v.decided_by.token());
        }
    }
    Ok(())
}
