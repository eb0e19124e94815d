//! RK4 on the Sun–Shu matrix: ‖R(τL)‖₂ exceeds 1 for small τ.

use rkcert::fixtures::sun_shu;
use rkcert::rk::scheme_by_name;
use rkcert::verifier::{counterexample_search, norm_sweep, Grid};

fn main() -> rkcert::Result<()> {
    let m = sun_shu();
    let poly = scheme_by_name("rk4")?.polynomial;
    let grid = Grid::log_spaced(1e-6, 1e-1, 200)?;
    let sweep = norm_sweep(&poly, &m, &grid, None)?;
    println!("violated: {}, max excess {:e}", sweep.violated(), sweep.max_excess);
    if let Some(v) = &sweep.first_violation {
        println!("first violation at tau = {:e}, norm = {}", v.tau, v.norm);
    }
    if let Some(c) = counterexample_search(&poly, &m, &grid, None)? {
        println!("growth {:e} at tau = {:e} for u = {}", c.growth, c.tau, c.u);
    }
    // CSV head, as written by `rkcert verify --format csv`.
    for line in sweep.to_csv().lines().take(4) {
        println!("{line}");
    }
    Ok(())
}
