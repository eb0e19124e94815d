//! Verdicts for the truncated exponentials R = Σ_{j≤s} z^j/j!, s = p.
//! Strong stability over the asymptotically stable class holds only for
//! p ≡ 3 mod 4.

use rkcert::classifier::classify_scheme;
use rkcert::rk::{scheme_by_name, TEXP_MAX};

fn main() -> rkcert::Result<()> {
    for p in 1..=TEXP_MAX {
        let r = classify_scheme(&scheme_by_name(&format!("texp{p}"))?)?;
        println!(
            "p={p} p%4={} class AS {:<9} [{}]",
            p % 4,
            r.class_as.conclusion.to_string(),
            r.class_as.decided_by.token()
        );
    }
    Ok(())
}
