//! Driving the command line in-process; `run` returns what the binary
//! would print and its exit code.

use rkcert::cli::run;

fn main() {
    for args in [
        "analyze-scheme --catalog heun3",
        "hc-index --catalog sunshu",
        "verify --catalog rk4 --matrix sunshu --weight auto --grid-points 20",
        "classify-pair --catalog rk4 --matrix levytadmor --format json",
    ] {
        let out = run(std::iter::once("rkcert").chain(args.split_whitespace()));
        println!("$ rkcert {args}   (exit {})\n{}{}", out.code, out.stdout, out.stderr);
    }
}
