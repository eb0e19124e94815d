//! Short-time decay ‖e^{τL}‖₂ ≈ 1 - cτ^a with a = 2·m_HC + 1.

use rkcert::fixtures::{index_one, levy_tadmor, sun_shu};
use rkcert::verifier::short_time_exponent;

fn main() -> rkcert::Result<()> {
    for (name, m, expected) in [
        ("index-one", index_one(), 3),
        ("sunshu", sun_shu(), 5),
        ("levytadmor", levy_tadmor(), 9),
    ] {
        let fit = short_time_exponent(&m)?;
        println!(
            "{name:<11} a_hat {:.4} (expected {expected}) c_hat {:.4e} from {} points, shifted {} decades",
            fit.a_hat, fit.c_hat, fit.points, fit.shift_decades
        );
    }
    Ok(())
}
