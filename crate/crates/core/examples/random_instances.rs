//! Random semi-dissipative matrices with a prescribed index, reproducible
//! through RKCERT_SEED.

use rkcert::hypocoercivity::{hc_index_definitional, hc_index_staircase};
use rkcert::random::{random_staircase_instance, rng_from_env, seed_from_env};
use rkcert::tolerance::{HC_CHAIN, RANK_REL};

fn main() -> rkcert::Result<()> {
    let mut rng = rng_from_env();
    println!("seed {}", seed_from_env());
    for index in 0..=4 {
        let m = random_staircase_instance(8, index, &mut rng);
        let chain = hc_index_definitional(&m, HC_CHAIN, 8)?.index;
        let stairs = hc_index_staircase(&m, RANK_REL)?;
        println!("requested {index}: chain {:?}, staircase {stairs}", chain);
    }
    Ok(())
}
