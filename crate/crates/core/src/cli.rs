//! `tanglement` command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error (for example an entangled
//! input to `state factor`), 2 on I/O, format or usage errors. Numbers are
//! printed with 12 significant digits; complex values as `re im`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bell;
use crate::error::Error;
use crate::format;
use crate::linalg::{fmt_complex, fmt_real};
use crate::linkinv;
use crate::luinv;
use crate::qstate::{BitString, ProductVerdict, PureState, DEFAULT_TOL};
use crate::yangbaxter::{self, BraidWord, PhaseMatrix};

const STATE_FORMAT: &str = "\
State file format: header `qubits N`, then one line per nonzero amplitude
`<bitstring> <re> <im>`; unlisted strings are zero; `#` starts a comment.
Example (singlet):
    qubits 2
    01  0.70710678118654757 0
    10 -0.70710678118654757 0";

const PHASE_FORMAT: &str = "\
Phase matrix format: header `phase-matrix n=<N> [lambda=<re> <im>]`, then rows
`<alpha> <beta> <angle-in-radians>`; unlisted entries have angle 0; the
diagonal must not be listed when lambda is given.
Example (M_01 = M_10 = i, lambda = 1):
    phase-matrix n=1 lambda=1 0
    0 1 1.5707963267948966
    1 0 1.5707963267948966";

const DIAGRAM_FORMAT: &str = "\
Diagram format: one crossing per line `X <comp_a> <comp_b> <+|->` with
components 1 or 2; `#` comments and blank lines ignored.
Example (Hopf link):
    X 1 2 +
    X 1 2 +";

#[derive(Parser, Debug)]
#[command(
    name = "tanglement",
    version,
    about = "Entanglement criteria, phase-matrix braiding, link state sums and CHSH"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Product-state criterion on a state file.
    #[command(subcommand)]
    State(StateCmd),
    /// Phase-matrix Yang-Baxter operators.
    #[command(subcommand)]
    Yb(YbCmd),
    /// Braid words acting on W^{⊗k}.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// Two-component link state sums.
    #[command(subcommand)]
    Link(LinkCmd),
    /// CHSH quantity and maximizer.
    #[command(subcommand)]
    Bell(BellCmd),
    /// Local-unitary minors.
    #[command(subcommand)]
    Luinv(LuinvCmd),
}

#[derive(Args, Debug)]
struct Tol {
    /// Relative tolerance for criterion residuals.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Subcommand, Debug)]
enum StateCmd {
    /// Print the product/entangled verdict and the residual table.
    #[command(after_help = STATE_FORMAT)]
    Check {
        file: PathBuf,
        #[command(flatten)]
        tol: Tol,
    },
    /// Factor a product state into single-qubit states.
    #[command(after_help = STATE_FORMAT)]
    Factor {
        file: PathBuf,
        #[command(flatten)]
        tol: Tol,
    },
    /// Relabel basis strings by XOR with a mask and write the state.
    #[command(after_help = STATE_FORMAT)]
    Relabel {
        file: PathBuf,
        #[arg(long)]
        mask: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum YbCmd {
    /// Check the Yang-Baxter equation for R built from a phase matrix.
    #[command(after_help = PHASE_FORMAT)]
    Verify {
        phase: PathBuf,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Whether R entangles the uniform state (criterion and closed form).
    #[command(after_help = PHASE_FORMAT)]
    Entangles {
        phase: PathBuf,
        #[command(flatten)]
        tol: Tol,
    },
}

#[derive(Subcommand, Debug)]
enum BraidCmd {
    /// Apply a braid word to a state on k·n qubits.
    #[command(after_help = PHASE_FORMAT)]
    Apply {
        phase: PathBuf,
        #[arg(long)]
        strands: usize,
        /// Signed generator indices, e.g. "1 -2 1".
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum LinkCmd {
    /// Print writhes, linking number and S_K by both routes.
    #[command(after_help = DIAGRAM_FORMAT)]
    Sum { diagram: PathBuf, phase: PathBuf },
    /// Print Z_K.
    #[command(after_help = DIAGRAM_FORMAT)]
    Z { diagram: PathBuf, phase: PathBuf },
    /// Whether Z_K can detect linking, with a witness pair.
    #[command(after_help = PHASE_FORMAT)]
    Detect {
        phase: PathBuf,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Subcommand, Debug)]
enum BellCmd {
    /// Δ for the standard observables.
    #[command(after_help = STATE_FORMAT)]
    Delta {
        #[arg(long)]
        state: PathBuf,
    },
    /// Violation census over random real states.
    Scan {
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Maximize Δ over observables in the X–Z plane.
    #[command(after_help = STATE_FORMAT)]
    Maximize {
        #[arg(long)]
        state: PathBuf,
    },
    /// Print the 16-row local hidden variable table.
    Lhv,
}

#[derive(Subcommand, Debug)]
enum LuinvCmd {
    /// List 2×2 minors (one position or all).
    #[command(after_help = STATE_FORMAT)]
    Minors {
        state: PathBuf,
        #[arg(long)]
        position: Option<usize>,
        #[command(flatten)]
        tol: Tol,
    },
    /// Probe "all minors vanish ⇒ product" on sampled states.
    Scan {
        #[arg(long)]
        qubits: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}

enum Failure {
    Domain(String),
    Format(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_format_error() {
            Failure::Format(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Format(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Format(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: crate::Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Format(m) => Failure::Format(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn load_state(path: &Path) -> std::result::Result<PureState, Failure> {
    with_path(path, format::parse_state(&read(path)?))
}

fn load_phase(path: &Path) -> std::result::Result<PhaseMatrix, Failure> {
    with_path(path, format::parse_phase_matrix(&read(path)?))
}

fn load_diagram(path: &Path) -> std::result::Result<linkinv::LinkDiagram, Failure> {
    with_path(path, format::parse_diagram(&read(path)?))
}

fn emit(text: &str, out_path: Option<&Path>, out: &mut dyn Write) -> CliResult {
    match out_path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Format(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
        Err(Failure::Format(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::State(c) => state_cmd(c, out),
        Command::Yb(c) => yb_cmd(c, out),
        Command::Braid(c) => braid_cmd(c, out),
        Command::Link(c) => link_cmd(c, out),
        Command::Bell(c) => bell_cmd(c, out),
        Command::Luinv(c) => luinv_cmd(c, out),
    }
}

fn state_cmd(cmd: StateCmd, out: &mut dyn Write) -> CliResult {
    match cmd {
        StateCmd::Check { file, tol } => {
            let psi = load_state(&file)?;
            let verdict = psi.is_product(tol.tol)?;
            let mask = match &verdict {
                ProductVerdict::Product(f) => f.flip_mask,
                ProductVerdict::Entangled(v) => v.relabel,
            };
            writeln!(out, "{}", if verdict.is_product() { "product" } else { "entangled" })?;
            writeln!(out, "relabel {mask}")?;
            if let ProductVerdict::Entangled(v) = &verdict {
                writeln!(out, "violated {} relative {}", v.alpha, fmt_real(v.relative))?;
            }
            writeln!(out, "# alpha residual_re residual_im relative")?;
            for r in psi.xor_relabel(&mask)?.criterion_residuals() {
                writeln!(out, "{} {} {}", r.alpha, fmt_complex(r.value()), fmt_real(r.relative()))?;
            }
            Ok(())
        }
        StateCmd::Factor { file, tol } => {
            let psi = load_state(&file)?;
            let f = psi.factorize(tol.tol)?.gauge_fixed();
            writeln!(out, "scalar {}", fmt_complex(f.scalar))?;
            writeln!(out, "flip_mask {}", f.flip_mask)?;
            for (i, (c0, c1)) in f.factors.iter().enumerate() {
                writeln!(out, "factor {} {} {}", i + 1, fmt_complex(*c0), fmt_complex(*c1))?;
            }
            Ok(())
        }
        StateCmd::Relabel { file, mask, out: dest } => {
            let psi = load_state(&file)?;
            let mask = BitString::parse(&mask)?;
            let relabeled = psi.xor_relabel(&mask)?;
            emit(&format::write_state(&relabeled), dest.as_deref(), out)
        }
    }
}

fn yb_cmd(cmd: YbCmd, out: &mut dyn Write) -> CliResult {
    match cmd {
        YbCmd::Verify { phase, tol } => {
            let m = load_phase(&phase)?;
            let report = yangbaxter::verify_ybe(&m, tol)?;
            writeln!(out, "max_deviation {}", fmt_real(report.max_deviation))?;
            writeln!(out, "{}", if report.holds { "ybe holds" } else { "ybe fails" })?;
            if report.holds {
                Ok(())
            } else {
                Err(Failure::Domain("Yang-Baxter equation fails".into()))
            }
        }
        YbCmd::Entangles { phase, tol } => {
            let m = load_phase(&phase)?;
            let brute = yangbaxter::r_entangles_uniform(&m, tol.tol)?;
            writeln!(out, "criterion {}", if brute { "entangled" } else { "product" })?;
            match yangbaxter::r_unentangled_closed_form(&m, tol.tol) {
                Ok(unent) => writeln!(out, "closed_form {}", if unent { "product" } else { "entangled" })?,
                Err(Error::MissingLambda) => writeln!(out, "closed_form unavailable (no lambda)")?,
                Err(e) => return Err(e.into()),
            }
            Ok(())
        }
    }
}

fn braid_cmd(cmd: BraidCmd, out: &mut dyn Write) -> CliResult {
    let BraidCmd::Apply {
        phase,
        strands,
        word,
        state,
        out: dest,
    } = cmd;
    let m = load_phase(&phase)?;
    let word = BraidWord::parse(strands, &word)?;
    let psi = load_state(&state)?;
    let op = yangbaxter::braid_operator(&word, &m)?;
    let result = op.apply(&psi)?;
    emit(&format::write_state(&result), dest.as_deref(), out)
}

fn link_cmd(cmd: LinkCmd, out: &mut dyn Write) -> CliResult {
    match cmd {
        LinkCmd::Sum { diagram, phase } => {
            let d = load_diagram(&diagram)?;
            let m = load_phase(&phase)?;
            let s = d.stats();
            writeln!(out, "w1 {} w2 {} lk {} w {}", s.w1, s.w2, s.lk, s.w)?;
            writeln!(out, "S_K {}", fmt_complex(linkinv::state_sum_bruteforce(&d, &m)?))?;
            match linkinv::state_sum_closed(&s, &m) {
                Ok(z) => writeln!(out, "S_K_closed {}", fmt_complex(z))?,
                Err(Error::MissingLambda) => writeln!(out, "S_K_closed unavailable (no lambda)")?,
                Err(e) => return Err(e.into()),
            }
            Ok(())
        }
        LinkCmd::Z { diagram, phase } => {
            let d = load_diagram(&diagram)?;
            let m = load_phase(&phase)?;
            let s = d.stats();
            writeln!(out, "lk {}", s.lk)?;
            writeln!(out, "Z_K {}", fmt_complex(linkinv::z_invariant(&s, &m)?))?;
            Ok(())
        }
        LinkCmd::Detect { phase, tol } => {
            let m = load_phase(&phase)?;
            match linkinv::detects_linking(&m, tol)? {
                Some((a, b)) => writeln!(out, "detects witness {a} {b}")?,
                None => writeln!(out, "blind")?,
            }
            Ok(())
        }
    }
}

fn bell_cmd(cmd: BellCmd, out: &mut dyn Write) -> CliResult {
    match cmd {
        BellCmd::Delta { state } => {
            let psi = load_state(&state)?;
            let d = bell::delta(&psi, &bell::standard_observables())?;
            writeln!(out, "delta {}", fmt_real(d))?;
            if let Ok(real) = bell::RealTwoQubitState::from_state(&psi) {
                writeln!(out, "delta_closed_form {}", fmt_real(bell::delta_closed_form(&real)))?;
                writeln!(out, "violates {}", bell::violates(&real))?;
            }
            Ok(())
        }
        BellCmd::Scan { trials, seed } => {
            let c = bell::violation_census(trials, seed)?;
            writeln!(out, "trials {}", c.trials)?;
            writeln!(out, "violating {}", c.violating)?;
            writeln!(out, "entangled {}", c.entangled)?;
            writeln!(out, "entangled_not_violating {}", c.entangled_not_violating)?;
            writeln!(out, "max_delta {}", fmt_real(c.max_delta))?;
            Ok(())
        }
        BellCmd::Maximize { state } => {
            let psi = load_state(&state)?;
            let best = bell::maximize_chsh(&psi)?;
            writeln!(out, "delta_max {}", fmt_real(best.delta_max))?;
            let [q, r, s, t] = best.angles.map(fmt_real);
            writeln!(out, "angles {q} {r} {s} {t}")?;
            Ok(())
        }
        BellCmd::Lhv => {
            out.write_all(bell::classical_bound().render().as_bytes())?;
            Ok(())
        }
    }
}

fn luinv_cmd(cmd: LuinvCmd, out: &mut dyn Write) -> CliResult {
    match cmd {
        LuinvCmd::Minors { state, position, tol } => {
            let psi = load_state(&state)?;
            let minors = match position {
                Some(k) => luinv::all_minors(&psi, k)?,
                None => luinv::all_minors_every_position(&psi),
            };
            writeln!(out, "# position context_a context_b minor_re minor_im")?;
            for (spec, m) in &minors {
                writeln!(
                    out,
                    "{} {} {} {}",
                    spec.position,
                    spec.context_a,
                    spec.context_b,
                    fmt_complex(*m)
                )?;
            }
            let vanish = luinv::all_minors_vanish(&psi, tol.tol);
            writeln!(out, "max_relative_minor {}", fmt_real(luinv::max_relative_minor(&psi)))?;
            writeln!(out, "all_vanish {vanish}")?;
            Ok(())
        }
        LuinvCmd::Scan { qubits, trials, seed } => {
            let report = luinv::conjecture_scan(&luinv::ScanConfig::new(qubits, trials, seed))?;
            out.write_all(report.render().as_bytes())?;
            Ok(())
        }
    }
}
