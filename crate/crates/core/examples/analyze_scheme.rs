//! Full stability report for every catalog scheme.

use rkcert::classifier::classify_scheme;
use rkcert::rk::catalog;

fn main() -> rkcert::Result<()> {
    for scheme in catalog() {
        let r = classify_scheme(&scheme)?;
        println!(
            "{:<8} p={} s={}  class AS {:<9} overall {:<9} [{}]",
            r.scheme,
            r.p,
            r.s,
            r.class_as.conclusion.to_string(),
            r.overall.conclusion.to_string(),
            r.overall.decided_by.token()
        );
    }
    // One report in full, as the CLI prints it with --format json.
    println!("{}", classify_scheme(&rkcert::rk::scheme_by_name("rk4")?)?.to_json_string());
    Ok(())
}
