//! Hypocoercivity index of the built-in matrices, by the definiteness chain
//! and by the staircase block count.

use rkcert::fixtures::{matrix_by_name, MATRIX_NAMES};
use rkcert::hypocoercivity::{hc_index_definitional, hc_index_staircase, HcIndex};
use rkcert::tolerance::{HC_CHAIN, RANK_REL};

fn main() -> rkcert::Result<()> {
    for name in MATRIX_NAMES {
        let m = matrix_by_name(name).unwrap();
        let Ok(cert) = hc_index_definitional(&m, HC_CHAIN, m.dim()) else {
            println!("{name:<16} not semi-dissipative");
            continue;
        };
        let chain = match cert.index {
            HcIndex::Finite(k) => k.to_string(),
            HcIndex::NoFiniteIndex => "none".into(),
        };
        let stairs = hc_index_staircase(&m, RANK_REL)
            .map(|k| k.to_string())
            .unwrap_or_else(|_| "none".into());
        println!("{name:<16} chain {chain:<5} staircase {stairs}");
    }
    Ok(())
}
