//! The same sweep in the norm of a Lyapunov weight shows no growth, and the
//! weighted norm equals the 2-norm of the transformed step.

use rkcert::fixtures::{sun_shu, ww_star};
use rkcert::linalg::{solve_lyapunov, transform_to_dissipative, ComplexMatrix};
use rkcert::rk::scheme_by_name;
use rkcert::verifier::{norm_sweep, Grid};

fn main() -> rkcert::Result<()> {
    let m = sun_shu();
    let poly = scheme_by_name("rk4")?.polynomial;
    let grid = Grid::log_spaced(1e-6, 1e-1, 200)?;
    let auto = solve_lyapunov(&m, &ComplexMatrix::identity(3))?;
    for (name, w) in [("ww-star", ww_star()), ("lyapunov", auto)] {
        let sweep = norm_sweep(&poly, &m, &grid, Some(&w))?;
        let transformed = transform_to_dissipative(&m, &w)?;
        let plain = norm_sweep(&poly, &transformed, &grid, None)?;
        let gap = sweep
            .norms
            .iter()
            .zip(&plain.norms)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!("{name:<9} violated {} max excess {:e} transform gap {gap:e}", sweep.violated(), sweep.max_excess);
    }
    Ok(())
}
