//! Command-line front end. [`run`] parses arguments and returns the rendered
//! output with the exit code, so the binary stays a thin wrapper.
//!
//! Exit codes: 0 for Yes / no violation, 3 for No / violation, 4 for
//! Undecided, 2 for any error.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::classifier::{classify_pair, classify_scheme, Conclusion, StabilityReport, Verdict};
use crate::error::{Error, Result};
use crate::fixtures::{matrix_by_name, MATRIX_NAMES};
use crate::hypocoercivity::{
    block_diagonalize, hc_index_definitional, staircase_of, BlockDiagonalForm, HcCertificate,
    HcIndex, RankDecision, StaircaseForm,
};
use crate::linalg::{solve_lyapunov, ComplexMatrix};
use crate::rk::{catalog, scheme_by_name, ButcherTableau, Scheme, StabilityPolynomial};
use crate::tolerance::{HC_CHAIN, RANK_REL};
use crate::verifier::{
    gram_defect, norm_sweep, short_time_exponent_on, ExponentFit, GramDefect, Grid, SweepResult,
    DEFAULT_MAX, DEFAULT_MIN, DEFAULT_POINTS,
};

pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "rkcert", version, about = "Strong stability certificates for explicit Runge–Kutta schemes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Threshold on the T-chain of the unit-norm matrix.
    #[arg(long, default_value_t = HC_CHAIN)]
    pub tol_eig: f64,
    /// Relative staircase rank threshold.
    #[arg(long, default_value_t = RANK_REL)]
    pub tol_rank: f64,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// Smallest step, in units of 1/‖L‖₂.
    #[arg(long)]
    pub grid_min: Option<f64>,
    #[arg(long)]
    pub grid_max: Option<f64>,
    #[arg(long)]
    pub grid_points: Option<usize>,
}

impl GridArgs {
    fn build(&self, m: &ComplexMatrix, min: f64, max: f64, points: usize) -> Result<Grid> {
        Grid::scaled_for(
            m,
            self.grid_min.unwrap_or(min),
            self.grid_max.unwrap_or(max),
            self.grid_points.unwrap_or(points),
        )
    }

    fn is_set(&self) -> bool {
        self.grid_min.is_some() || self.grid_max.is_some() || self.grid_points.is_some()
    }
}

#[derive(Args, Debug, Clone)]
pub struct SchemeSource {
    /// Built-in scheme (see `catalog list`).
    #[arg(long, group = "scheme")]
    pub catalog: Option<String>,
    /// Butcher tableau JSON file.
    #[arg(long, group = "scheme")]
    pub tableau: Option<String>,
    /// Stability polynomial JSON file (normalized coefficients).
    #[arg(long, group = "scheme")]
    pub poly: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct MatrixSource {
    /// Built-in matrix name or matrix JSON file.
    #[arg(long, alias = "catalog")]
    pub matrix: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order, indicators and verdicts for a scheme.
    AnalyzeScheme {
        #[command(flatten)]
        scheme: SchemeSource,
        #[command(flatten)]
        common: Common,
    },
    /// Hypocoercivity index by both methods.
    HcIndex {
        #[command(flatten)]
        matrix: MatrixSource,
        #[command(flatten)]
        common: Common,
    },
    /// Staircase reduction of the Hermitian/skew-Hermitian split.
    Staircase {
        #[command(flatten)]
        matrix: MatrixSource,
        #[command(flatten)]
        common: Common,
    },
    /// Split into asymptotically stable and skew-Hermitian blocks.
    BlockDiag {
        #[command(flatten)]
        matrix: MatrixSource,
        #[command(flatten)]
        common: Common,
    },
    /// Verdict for one scheme and one matrix.
    ClassifyPair {
        #[command(flatten)]
        scheme: SchemeSource,
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        common: Common,
    },
    /// Norm sweep of the one-step matrix, optionally weighted.
    Verify {
        #[command(flatten)]
        scheme: SchemeSource,
        #[arg(long)]
        matrix: String,
        /// Weight matrix name, JSON file, or `auto` (Lyapunov solve with Q = I).
        #[arg(long)]
        weight: Option<String>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Short-time decay exponent of ‖e^{τL}‖₂.
    FitExponent {
        #[command(flatten)]
        matrix: MatrixSource,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Order of ‖R(τL)*R(τL) - e^{τL*}e^{τL}‖₂.
    GramDefect {
        #[command(flatten)]
        scheme: SchemeSource,
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Built-in schemes and matrices.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Rendered output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text, 0)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(out) => out,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_ERROR,
        },
    }
}

fn read_file(path: &str) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

pub fn load_scheme(src: &SchemeSource) -> Result<Scheme> {
    match (&src.catalog, &src.tableau, &src.poly) {
        (Some(name), None, None) => scheme_by_name(name),
        (None, Some(path), None) => {
            let t = ButcherTableau::from_json_str(&read_file(path)?)?;
            Scheme::from_tableau(path.as_str(), t)
        }
        (None, None, Some(path)) => Ok(Scheme::from_polynomial(
            path.as_str(),
            StabilityPolynomial::from_json_str(&read_file(path)?)?,
        )),
        _ => Err(Error::input("give exactly one of --catalog, --tableau, --poly")),
    }
}

/// Catalog name first, then a JSON file path.
pub fn load_matrix(source: &str) -> Result<ComplexMatrix> {
    if let Some(m) = matrix_by_name(source) {
        return Ok(m);
    }
    if Path::new(source).is_file() {
        return ComplexMatrix::from_json_str(&read_file(source)?);
    }
    Err(Error::input(format!(
        "'{source}' is neither a built-in matrix ({}) nor a readable file",
        MATRIX_NAMES.join(", ")
    )))
}

fn load_weight(source: &str, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if source == "auto" {
        return solve_lyapunov(m, &ComplexMatrix::identity(m.dim()));
    }
    load_matrix(source)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn no_csv(command: &str) -> Error {
    Error::input(format!("{command} has no CSV output"))
}

fn verdict_line(label: &str, v: &Verdict) -> String {
    let mut line = format!("{label:<16}{:<10}[{}]", v.conclusion.to_string(), v.decided_by.token());
    for e in &v.evidence {
        let _ = write!(line, " {}={}", e.name, e.value);
    }
    if let Some(note) = &v.note {
        let _ = write!(line, " ({note})");
    }
    line.push('\n');
    line
}

pub fn render_report_text(r: &StabilityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "scheme          {}", r.scheme);
    let _ = writeln!(s, "order           p = {}, s = {}", r.p, r.s);
    let coeffs: Vec<String> = r
        .c
        .iter()
        .map(|c| serde_json::to_string(c).expect("scalar"))
        .collect();
    let _ = writeln!(s, "c               {}", coeffs.join(" "));
    if r.order_ambiguous {
        let _ = writeln!(s, "warning         |c_(p+1) - 1| is below 1e-6; the order is ambiguous");
    }
    let ind = &r.indicators;
    if let Some(g) = ind.gamma {
        let _ = writeln!(s, "gamma_{:<10}{g}", r.p + 1);
    }
    if let Some(d) = ind.delta {
        let _ = writeln!(s, "delta_{:<10}{d}", r.p + 1);
    }
    let _ = writeln!(s, "condition (c)   {} {:?}", r.condition_c.value(), r.condition_c.truth);
    let _ = writeln!(
        s,
        "combined        {:?} {:?}",
        r.combined_condition.values, r.combined_condition.truth
    );
    s += &verdict_line("imaginary axis", &r.imag_axis);
    s += &verdict_line("class AS", &r.class_as);
    let _ = writeln!(s, "index bound     stable for index <= {}", r.class_as_index_bound);
    s += &verdict_line("overall", &r.overall);
    s += &verdict_line("weak form", &r.weak_form);
    s
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HcIndexReport {
    pub matrix: String,
    pub definitional: HcCertificate,
    /// `r - 2` of the staircase form; absent if a trailing block remains.
    pub staircase_index: Option<usize>,
    pub block_sizes: Vec<usize>,
    pub residual_block: usize,
    pub decisions: Vec<RankDecision>,
}

fn hc_index_report(name: &str, m: &ComplexMatrix, common: &Common) -> Result<HcIndexReport> {
    let cert = hc_index_definitional(m, common.tol_eig, m.dim())?;
    let form = staircase_of(m, common.tol_rank)?;
    let residual = form.residual_size();
    Ok(HcIndexReport {
        matrix: name.to_string(),
        definitional: cert,
        staircase_index: (residual == 0).then(|| form.block_count - 2),
        block_sizes: form.leading_sizes().to_vec(),
        residual_block: residual,
        decisions: form.decisions,
    })
}

fn index_text(i: HcIndex) -> String {
    match i {
        HcIndex::Finite(m) => m.to_string(),
        HcIndex::NoFiniteIndex => "none".into(),
    }
}

fn render_hc_text(r: &HcIndexReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "matrix          {}", r.matrix);
    let _ = writeln!(s, "m_HC (chain)    {}", index_text(r.definitional.index));
    let _ = writeln!(
        s,
        "m_HC (stairs)   {}",
        r.staircase_index.map_or("none (uncoupled block)".into(), |m| m.to_string())
    );
    let sizes: Vec<String> = r.block_sizes.iter().map(|b| b.to_string()).collect();
    let _ = writeln!(s, "blocks          ({})", sizes.join(","));
    if r.residual_block > 0 {
        let _ = writeln!(s, "uncoupled       {}", r.residual_block);
    }
    let chain: Vec<String> = r.definitional.t_chain_max_eigs.iter().map(|v| format!("{v:e}")).collect();
    let _ = writeln!(s, "chain max eig   {}", chain.join(" "));
    for d in &r.decisions {
        let gap = d.gap().map_or("-".into(), |g| format!("{g:e}"));
        let _ = writeln!(s, "rank step {:<6}rank {} threshold {:e} gap {gap}", d.step, d.rank, d.threshold);
    }
    s
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub scheme: String,
    pub matrix: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub scheme: String,
    pub matrix: String,
    pub weight: Option<String>,
    pub sweep: SweepResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub matrix: String,
    pub fit: ExponentFit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramReport {
    pub scheme: String,
    pub matrix: String,
    pub defect: GramDefect,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub schemes: Vec<CatalogScheme>,
    pub matrices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogScheme {
    pub name: String,
    pub p: usize,
    pub s: usize,
    pub tableau: bool,
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::AnalyzeScheme { scheme, common } => {
            let scheme = load_scheme(scheme)?;
            let report = classify_scheme(&scheme)?;
            let code = report.overall.conclusion.exit_code();
            let out = match common.format {
                Format::Text => render_report_text(&report),
                Format::Json => json(&report),
                Format::Csv => return Err(no_csv("analyze-scheme")),
            };
            Ok(Outcome::ok(out, code))
        }
        Command::HcIndex { matrix, common } => {
            let m = load_matrix(&matrix.matrix)?;
            let report = hc_index_report(&matrix.matrix, &m, common)?;
            let out = match common.format {
                Format::Text => render_hc_text(&report),
                Format::Json => json(&report),
                Format::Csv => return Err(no_csv("hc-index")),
            };
            Ok(Outcome::ok(out, 0))
        }
        Command::Staircase { matrix, common } => {
            let m = load_matrix(&matrix.matrix)?;
            let form: StaircaseForm = staircase_of(&m, common.tol_rank)?;
            let out = match common.format {
                Format::Text => {
                    let mut s = String::new();
                    let _ = writeln!(s, "blocks r = {}, sizes {:?}", form.block_count, form.block_sizes);
                    let _ = writeln!(s, "V =\n{}", form.v);
                    let _ = writeln!(s, "J~ =\n{}", form.j_t);
                    let _ = writeln!(s, "R~ =\n{}", form.r_t);
                    let err = (form.reconstruct() - m.as_matrix()).norm();
                    let _ = writeln!(s, "reconstruction error {err:e}");
                    s
                }
                Format::Json => json(&form),
                Format::Csv => return Err(no_csv("staircase")),
            };
            Ok(Outcome::ok(out, 0))
        }
        Command::BlockDiag { matrix, common } => {
            let m = load_matrix(&matrix.matrix)?;
            let form: BlockDiagonalForm = block_diagonalize(&m, common.tol_rank)?;
            let out = match common.format {
                Format::Text => {
                    let (a, b) = form.sizes();
                    let mut s = format!("stable block {a}, skew block {b}, off-diagonal {:e}\n", form.off_diagonal);
                    if let Some(l1) = &form.l1 {
                        let _ = writeln!(s, "L1 =\n{l1}");
                    }
                    if let Some(l2) = &form.l2 {
                        let _ = writeln!(s, "L2 =\n{l2}");
                    }
                    s
                }
                Format::Json => json(&form),
                Format::Csv => return Err(no_csv("block-diag")),
            };
            Ok(Outcome::ok(out, 0))
        }
        Command::ClassifyPair { scheme, matrix, common } => {
            let sch = load_scheme(scheme)?;
            let m = load_matrix(matrix)?;
            let verdict = classify_pair(&sch.polynomial, &m)?;
            let code = verdict.conclusion.exit_code();
            let report = PairReport {
                scheme: sch.name,
                matrix: matrix.clone(),
                verdict,
            };
            let out = match common.format {
                Format::Text => verdict_line("pair", &report.verdict),
                Format::Json => json(&report),
                Format::Csv => return Err(no_csv("classify-pair")),
            };
            Ok(Outcome::ok(out, code))
        }
        Command::Verify { scheme, matrix, weight, grid, common } => {
            let sch = load_scheme(scheme)?;
            let m = load_matrix(matrix)?;
            let w = weight.as_deref().map(|source| load_weight(source, &m)).transpose()?;
            let g = grid.build(&m, DEFAULT_MIN, DEFAULT_MAX, DEFAULT_POINTS)?;
            let sweep = norm_sweep(&sch.polynomial, &m, &g, w.as_ref())?;
            let code = if sweep.violated() { Conclusion::No } else { Conclusion::Yes }.exit_code();
            let report = VerifyReport {
                scheme: sch.name,
                matrix: matrix.clone(),
                weight: weight.clone(),
                sweep,
            };
            let out = match common.format {
                Format::Csv => report.sweep.to_csv(),
                Format::Json => json(&report),
                Format::Text => render_verify_text(&report),
            };
            Ok(Outcome::ok(out, code))
        }
        Command::FitExponent { matrix, grid, common } => {
            let m = load_matrix(&matrix.matrix)?;
            let g = if grid.is_set() {
                grid.build(&m, DEFAULT_MIN, DEFAULT_MAX, DEFAULT_POINTS)?
            } else {
                Grid::default_for(&m)
            };
            let fit = short_time_exponent_on(&m, &g)?;
            let report = FitReport {
                matrix: matrix.matrix.clone(),
                fit,
            };
            let out = match common.format {
                Format::Text => {
                    let f = &report.fit;
                    format!(
                        "a_hat {}\nc_hat {}\nresidual {:e}\nwindow [{:e}, {:e}] ({} points, shifted {} decades)\n",
                        f.a_hat, f.c_hat, f.residual, f.window.0, f.window.1, f.points, f.shift_decades
                    )
                }
                Format::Json => json(&report),
                Format::Csv => return Err(no_csv("fit-exponent")),
            };
            Ok(Outcome::ok(out, 0))
        }
        Command::GramDefect { scheme, matrix, grid, common } => {
            let sch = load_scheme(scheme)?;
            let m = load_matrix(matrix)?;
            let g = grid.build(&m, 1e-3, 1e-1, 60)?;
            let defect = gram_defect(&sch.polynomial, &m, &g)?;
            let report = GramReport {
                scheme: sch.name,
                matrix: matrix.clone(),
                defect,
            };
            let out = match common.format {
                Format::Csv => {
                    let mut s = String::from("tau,defect\n");
                    for (t, d) in report.defect.taus.iter().zip(&report.defect.defect_norms) {
                        let _ = writeln!(s, "{t:e},{d:e}");
                    }
                    s
                }
                Format::Json => json(&report),
                Format::Text => {
                    let d = &report.defect;
                    let mut s = String::new();
                    let _ = writeln!(
                        s,
                        "fitted order    {}",
                        d.fitted_order.map_or("n/a".into(), |o| o.to_string())
                    );
                    let _ = writeln!(s, "points          {}", d.fit_points);
                    let _ = writeln!(s, "predicted coef  {}", d.predicted_coefficient);
                    let _ = writeln!(
                        s,
                        "measured coef   {}",
                        d.measured_coefficient.map_or("n/a".into(), |c| c.to_string())
                    );
                    let _ = writeln!(s, "series coef     {}", d.series_coefficient);
                    if d.degenerate {
                        let _ = writeln!(s, "degenerate      leading term vanishes; order >= p+2");
                    }
                    s
                }
            };
            Ok(Outcome::ok(out, 0))
        }
        Command::Catalog { action: CatalogAction::List { format } } => {
            let report = CatalogReport {
                schemes: catalog()
                    .into_iter()
                    .map(|s| CatalogScheme {
                        p: s.polynomial.order(),
                        s: s.polynomial.stages(),
                        tableau: s.tableau.is_some(),
                        name: s.name,
                    })
                    .collect(),
                matrices: MATRIX_NAMES.iter().map(|s| s.to_string()).collect(),
            };
            let out = match format {
                Format::Json => json(&report),
                Format::Csv => {
                    let mut s = String::from("kind,name,p,s\n");
                    for sc in &report.schemes {
                        let _ = writeln!(s, "scheme,{},{},{}", sc.name, sc.p, sc.s);
                    }
                    for m in &report.matrices {
                        let _ = writeln!(s, "matrix,{m},,");
                    }
                    s
                }
                Format::Text => {
                    let mut s = String::from("schemes:\n");
                    for sc in &report.schemes {
                        let src = if sc.tableau { "tableau" } else { "polynomial" };
                        let _ = writeln!(s, "  {:<8} p={} s={} ({src})", sc.name, sc.p, sc.s);
                    }
                    s.push_str("matrices:\n");
                    for m in &report.matrices {
                        let _ = writeln!(s, "  {m}");
                    }
                    s
                }
            };
            Ok(Outcome::ok(out, 0))
        }
    }
}

fn render_verify_text(r: &VerifyReport) -> String {
    let sw = &r.sweep;
    let mut s = String::new();
    let _ = writeln!(s, "scheme          {}", r.scheme);
    let _ = writeln!(s, "matrix          {}", r.matrix);
    let _ = writeln!(s, "weight          {}", r.weight.as_deref().unwrap_or("none"));
    let taus = sw.grid.taus();
    let _ = writeln!(s, "grid            {} points in [{:e}, {:e}]", taus.len(), taus[0], taus[taus.len() - 1]);
    match &sw.first_violation {
        Some(v) => {
            let _ = writeln!(s, "violation       tau={:e} norm={} excess={:e}", v.tau, v.norm, v.norm - 1.0);
        }
        None => {
            let _ = writeln!(s, "violation       none");
        }
    }
    let _ = writeln!(s, "max excess      {:e}", sw.max_excess);
    if let Some(t) = sw.stable_threshold {
        let _ = writeln!(s, "stable up to    {t:e}");
    }
    s
}
