//! Command-line orchestration: SCF runs, one- and two-phase VQE with
//! artifact emission, 1-RDM property extraction, dissociation scans, and a
//! bundle generator for hydrogen systems.
//!
//! Exit codes: 0 success, 1 input error, 2 non-convergence or numerical
//! failure, 3 partial scan failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Deserialize;

use crate::ansatz::{build_gatefabric, build_kupccgsd, AnsatzCircuit};
use crate::chemio::{self, Atom, MoleculeBundle};
use crate::fermion::{build_active_hamiltonian, hamiltonian_to_pauli, ActiveSpaceHamiltonian};
use crate::oracle::{fci_ground_state, MAX_ORACLE_QUBITS};
use crate::properties;
use crate::rdm::{merge_with_hf, mo_to_ao, Rdm1, RdmBasis};
use crate::scf;
use crate::vqe::{run_vqe, GradientMode, RunMode, Termination, VqeConfig, VqeTrace};
use crate::{Error, Result};

/// Result of one CLI invocation: what to print and how to exit.
pub struct CliOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

const EXIT_OK: i32 = 0;
const EXIT_INPUT: i32 = 1;
const EXIT_NO_CONVERGENCE: i32 = 2;
const EXIT_PARTIAL_SCAN: i32 = 3;

#[derive(Parser)]
#[command(
    name = "vqedm",
    version,
    about = "Two-phase variational eigensolver with 1-RDM tracking and density-based molecular properties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a bundle (geometry, basis, integrals, converged MOs) for an
    /// all-hydrogen system and write it to a file.
    MakeBundle(MakeBundleArgs),
    /// Run restricted Hartree-Fock on a bundle and report the result.
    Scf(ScfArgs),
    /// Run the variational eigensolver (energy-only or two-phase) and write
    /// trace, parameters, and 1-RDM artifacts.
    Vqe(VqeArgs),
    /// Derive molecular properties from a stored 1-RDM.
    Properties(PropertiesArgs),
    /// Run energy-only and two-phase optimizations over a list of
    /// geometries and print a combined comparison table.
    Scan(ScanArgs),
}

#[derive(Args)]
struct MakeBundleArgs {
    /// Geometry as "H x y z; H x y z; ..." in bohr (hydrogen only; bundles
    /// for heavier atoms must come from an external code).
    #[arg(long)]
    geometry: String,
    /// Net molecular charge.
    #[arg(long, default_value_t = 0)]
    charge: i32,
    /// Output bundle path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ScfArgs {
    /// Bundle file.
    bundle: PathBuf,
    /// Energy convergence threshold (hartree).
    #[arg(long, default_value_t = scf::DEFAULT_E_TOL)]
    e_tol: f64,
    /// Density RMSD convergence threshold.
    #[arg(long, default_value_t = scf::DEFAULT_RDM_RMSD_TOL)]
    rdm_tol: f64,
    /// Iteration cap.
    #[arg(long, default_value_t = scf::DEFAULT_MAX_ITER)]
    max_iter: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AnsatzKind {
    Kupccgsd,
    Gatefabric,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeKind {
    /// Phase 1 only: plain energy minimization.
    Energy,
    /// Phase 1 followed by joint energy + 1-RDM optimization.
    TwoPhase,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GradientKind {
    /// Central finite differences on the full objective.
    Fd,
    /// Exact parameter-shift rules for the energy term.
    Shift,
}

#[derive(Args)]
struct VqeArgs {
    /// Bundle file.
    bundle: PathBuf,
    #[arg(long, value_enum, default_value_t = AnsatzKind::Kupccgsd)]
    ansatz: AnsatzKind,
    /// Active space "(n_electrons,n_orbitals)"; defaults to the full space.
    #[arg(long)]
    active: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeKind::TwoPhase)]
    mode: ModeKind,
    /// k-UpCCGSD repetition count.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// GateFabric layer count.
    #[arg(long, default_value_t = 2)]
    layers: usize,
    /// Include the fixed orbital-rotation block in each GateFabric tile.
    #[arg(long, default_value_t = false)]
    gf_pi: bool,
    /// Seed for uniform random initial parameters in [-0.1, 0.1];
    /// omitted = zero initial parameters (Hartree-Fock start).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1.0)]
    w_e: f64,
    #[arg(long, default_value_t = 1.0)]
    w_rdm: f64,
    #[arg(long, default_value_t = 1e-6)]
    e_tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    rdm_tol: f64,
    /// Consecutive phase-2 rejections tolerated before aborting.
    #[arg(long, default_value_t = 10)]
    n_r: usize,
    /// Phase-2 energy guard: E may not exceed the phase-1 result by more
    /// than this.
    #[arg(long, default_value_t = 1e-4)]
    e_limit_offset: f64,
    #[arg(long, default_value_t = 0.4)]
    learning_rate: f64,
    #[arg(long, default_value_t = 5000)]
    max_iter_phase1: usize,
    #[arg(long, default_value_t = 5000)]
    max_iter_phase2: usize,
    #[arg(long, value_enum, default_value_t = GradientKind::Fd)]
    gradient: GradientKind,
    /// Central-difference step (finite-difference gradients only).
    #[arg(long, default_value_t = 1e-4)]
    fd_step: f64,
    /// Directory for trace/theta/RDM artifacts.
    #[arg(long, default_value = "vqe-out")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct PropertiesArgs {
    /// Bundle file.
    bundle: PathBuf,
    /// 1-RDM text file (AO basis, or full-dimension MO basis — converted
    /// with the bundle's MO coefficients).
    #[arg(long)]
    rdm: PathBuf,
    /// Second 1-RDM: switches the cubes to difference mode (first minus
    /// second) and reports scalar properties for both.
    #[arg(long)]
    rdm_b: Option<PathBuf>,
    /// Comma-separated subset of density,esp,dipole,mulliken,cps.
    #[arg(long, default_value = "density,esp,dipole,mulliken,cps")]
    which: String,
    /// Grid spacing for the density cube (bohr).
    #[arg(long, default_value_t = 0.1)]
    spacing: f64,
    /// Grid spacing for the electrostatic-potential cube (bohr). Coarser
    /// than the density default: each node integrates over the whole
    /// quadrature grid.
    #[arg(long, default_value_t = 0.4)]
    esp_spacing: f64,
    /// Grid padding beyond the atomic bounding box (bohr).
    #[arg(long, default_value_t = 4.0)]
    padding: f64,
    /// Gradient-norm threshold for accepting a critical point.
    #[arg(long, default_value_t = properties::DEFAULT_CP_GRAD_TOL)]
    cp_grad_tol: f64,
    /// Newton iteration cap per critical-point seed.
    #[arg(long, default_value_t = properties::DEFAULT_CP_MAX_ITER)]
    cp_max_iter: usize,
    /// Directory for cube/table artifacts.
    #[arg(long, default_value = "properties-out")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct ScanArgs {
    /// Scan configuration file (TOML): [[geometry]] entries with label and
    /// bundle path, plus an optional [vqe] override block.
    config: PathBuf,
    /// Optional directory for per-geometry VQE artifacts.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

/// Parse and run one CLI invocation. Never panics on bad input; the outcome
/// carries the exit code and both output streams.
pub fn execute<I, T>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let header = artifact_header(&argv);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap bundles --help/--version into Err; they are successes
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                CliOutcome { exit_code: code, stdout: rendered, stderr: String::new() }
            } else {
                CliOutcome { exit_code: code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let mut stdout = String::new();
    let result = match cli.command {
        Command::MakeBundle(a) => cmd_make_bundle(&a, &mut stdout),
        Command::Scf(a) => cmd_scf(&a, &mut stdout),
        Command::Vqe(a) => cmd_vqe(&a, &header, &mut stdout),
        Command::Properties(a) => cmd_properties(&a, &header, &mut stdout),
        Command::Scan(a) => cmd_scan(&a, &header, &mut stdout),
    };
    match result {
        Ok(code) => CliOutcome { exit_code: code, stdout, stderr: String::new() },
        Err(e) => CliOutcome {
            exit_code: exit_code_for(&e),
            stdout,
            stderr: format!("error: {e}\n"),
        },
    }
}

/// First line of every artifact: tool version plus the full flag set.
fn artifact_header(argv: &[OsString]) -> String {
    let rest: Vec<String> =
        argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    format!("# vqedm {} | vqedm {}", env!("CARGO_PKG_VERSION"), rest.join(" "))
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NonFinite { .. } | Error::Linalg(_) => EXIT_NO_CONVERGENCE,
        _ => EXIT_INPUT,
    }
}

fn cmd_make_bundle(args: &MakeBundleArgs, out: &mut String) -> Result<i32> {
    let atoms = parse_geometry(&args.geometry)?;
    let mut bundle = crate::integrals::build_hydrogen_bundle(&atoms, args.charge)?;
    let scf_result = scf::run_rhf_default(&mut bundle)?;
    if !scf_result.converged {
        return Err(Error::validation(
            "scf_converged",
            "reference SCF did not converge; bundle not written",
        ));
    }
    chemio::serialize_bundle(&bundle, &args.out)?;
    writeln!(out, "bundle written: {}", args.out.display()).unwrap();
    writeln!(out, "atoms: {}  electrons: {}", bundle.atoms.len(), bundle.n_electrons()).unwrap();
    writeln!(out, "E_RHF = {:+.10} hartree ({} iterations)", scf_result.energy, scf_result.n_iterations)
        .unwrap();
    Ok(EXIT_OK)
}

/// Parse "H x y z; H x y z" (bohr).
fn parse_geometry(text: &str) -> Result<Vec<Atom>> {
    let mut atoms = Vec::new();
    for (i, entry) in text.split(';').enumerate() {
        let entry = entry.trim();
        if entry.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = entry.split_whitespace().collect();
        if tokens.len() != 4 {
            return Err(Error::parse(
                "geometry",
                format!("entry {} must be 'SYMBOL x y z', got '{entry}'", i + 1),
            ));
        }
        let mut position = [0.0; 3];
        for (k, t) in tokens[1..].iter().enumerate() {
            position[k] = t
                .parse()
                .map_err(|_| Error::parse("geometry", format!("bad coordinate '{t}'")))?;
        }
        let symbol = tokens[0].to_string();
        if !symbol.eq_ignore_ascii_case("h") {
            return Err(Error::Unsupported(format!(
                "the built-in basis covers hydrogen only; '{symbol}' bundles must be generated externally"
            )));
        }
        atoms.push(Atom { symbol: "H".into(), z: 1, position });
    }
    if atoms.is_empty() {
        return Err(Error::parse("geometry", "no atoms given".to_string()));
    }
    Ok(atoms)
}

fn cmd_scf(args: &ScfArgs, out: &mut String) -> Result<i32> {
    let mut bundle = chemio::parse_bundle(&args.bundle)?;
    let result = scf::run_rhf(&mut bundle, args.max_iter, args.e_tol, args.rdm_tol)?;
    writeln!(out, "E_RHF = {:+.10} hartree", result.energy).unwrap();
    writeln!(out, "iterations = {}", result.n_iterations).unwrap();
    writeln!(out, "converged = {}", result.converged).unwrap();
    write!(out, "mo_energies =").unwrap();
    for e in result.mo_energies.iter() {
        write!(out, " {e:+.10}").unwrap();
    }
    writeln!(out).unwrap();
    Ok(if result.converged { EXIT_OK } else { EXIT_NO_CONVERGENCE })
}

/// "(n_e,n_o)" → (n_electrons, n_orbitals).
fn parse_active(text: &str) -> Result<(usize, usize)> {
    let cleaned: String =
        text.chars().filter(|c| !c.is_whitespace() && *c != '(' && *c != ')').collect();
    let parts: Vec<&str> = cleaned.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::parse(
            "active space",
            format!("expected \"(n_electrons,n_orbitals)\", got '{text}'"),
        ));
    }
    let n_e = parts[0]
        .parse()
        .map_err(|_| Error::parse("active space", format!("bad electron count '{}'", parts[0])))?;
    let n_o = parts[1]
        .parse()
        .map_err(|_| Error::parse("active space", format!("bad orbital count '{}'", parts[1])))?;
    Ok((n_e, n_o))
}

/// Resolve (n_e, n_o) to explicit orbital indices: freeze the lowest
/// occupied orbitals, take the next n_o.
fn resolve_active(bundle: &MoleculeBundle, n_e: usize, n_o: usize) -> Result<Vec<usize>> {
    let n_elec = bundle.n_electrons();
    let n_mo = bundle.n_mo();
    if n_e == 0 || n_e % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "active electron count must be positive and even, got {n_e}"
        )));
    }
    if n_e > 2 * n_o {
        return Err(Error::validation(
            "active_space",
            format!("{n_e} electrons cannot fit in {n_o} spatial orbitals"),
        ));
    }
    if n_e > n_elec || (n_elec - n_e) % 2 != 0 {
        return Err(Error::validation(
            "active_space",
            format!("cannot split {n_elec} electrons into closed frozen shells plus {n_e} active"),
        ));
    }
    let frozen = (n_elec - n_e) / 2;
    if frozen + n_o > n_mo {
        return Err(Error::validation(
            "active_space",
            format!(
                "active window [{frozen}, {}) exceeds the {n_mo} available orbitals",
                frozen + n_o
            ),
        ));
    }
    Ok((frozen..frozen + n_o).collect())
}

struct PreparedVqe {
    bundle: MoleculeBundle,
    ham: ActiveSpaceHamiltonian,
    circuit: AnsatzCircuit,
    active: Vec<usize>,
    theta0: Vec<f64>,
    config: VqeConfig,
    run_mode: RunMode,
}

struct VqeRunSummary {
    trace: VqeTrace,
    e_oracle: Option<f64>,
    rdm_mo_full: Rdm1,
    rdm_ao: Rdm1,
}

fn prepare_vqe(args: &VqeArgs) -> Result<PreparedVqe> {
    let mut bundle = chemio::parse_bundle(&args.bundle)?;
    if bundle.n_mo() == 0 {
        // bundle carries no reference orbitals: derive them here
        let result = scf::run_rhf_default(&mut bundle)?;
        if !result.converged {
            return Err(Error::validation(
                "scf_converged",
                "reference SCF did not converge; rerun with `scf` to inspect",
            ));
        }
    }
    let (n_e, n_o) = match &args.active {
        Some(text) => parse_active(text)?,
        None => (bundle.n_electrons(), bundle.n_mo()),
    };
    let active = resolve_active(&bundle, n_e, n_o)?;
    let ham = build_active_hamiltonian(&bundle, &active)?;
    let circuit = match args.ansatz {
        AnsatzKind::Kupccgsd => build_kupccgsd(n_o, n_e, args.k)?,
        AnsatzKind::Gatefabric => build_gatefabric(n_o, n_e, args.layers, args.gf_pi)?,
    };
    let theta0 = match args.seed {
        None => vec![0.0; circuit.n_params],
        Some(seed) => {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            (0..circuit.n_params).map(|_| rng.gen_range(-0.1..0.1)).collect()
        }
    };
    let config = VqeConfig {
        w_e: args.w_e,
        w_rdm: args.w_rdm,
        e_tol: args.e_tol,
        rdm_tol: args.rdm_tol,
        n_r: args.n_r,
        e_limit_offset: args.e_limit_offset,
        learning_rate: args.learning_rate,
        max_iter_phase1: args.max_iter_phase1,
        max_iter_phase2: args.max_iter_phase2,
        gradient_mode: match args.gradient {
            GradientKind::Fd => GradientMode::FiniteDifference,
            GradientKind::Shift => GradientMode::ParameterShiftEnergy,
        },
        fd_step: args.fd_step,
    };
    let run_mode = match args.mode {
        ModeKind::Energy => RunMode::EnergyOnly,
        ModeKind::TwoPhase => RunMode::TwoPhase,
    };
    Ok(PreparedVqe { bundle, ham, circuit, active, theta0, config, run_mode })
}

fn run_prepared_vqe(prep: &PreparedVqe) -> Result<VqeRunSummary> {
    let pauli = hamiltonian_to_pauli(&prep.ham)?;
    let trace = run_vqe(&pauli, &prep.circuit, &prep.theta0, &prep.config, prep.run_mode)?;
    let e_oracle = if prep.ham.n_qubits() <= MAX_ORACLE_QUBITS {
        Some(fci_ground_state(&prep.ham)?.0)
    } else {
        None
    };
    // embed the active-space RDM into the full MO space over the HF frame
    let n_mo = prep.bundle.n_mo();
    let n_occ = prep.bundle.n_electrons() / 2;
    let mut hf = Array2::zeros((n_mo, n_mo));
    for i in 0..n_occ {
        hf[[i, i]] = 2.0;
    }
    let hf_rdm = Rdm1::new(hf, RdmBasis::MoSpatial, 0)?;
    let rdm_mo_full = merge_with_hf(&trace.final_rdm, &hf_rdm, &prep.active)?;
    let rdm_ao = mo_to_ao(&rdm_mo_full, &prep.bundle.mo_coeff)?;
    Ok(VqeRunSummary { trace, e_oracle, rdm_mo_full, rdm_ao })
}

/// Last recorded Δ_RDM per phase, rendered "p1" or "p1 (p2)".
fn delta_rdm_column(trace: &VqeTrace) -> String {
    let last_of = |phase: u8| {
        trace.records.iter().filter(|r| r.phase == phase).map(|r| r.delta_rdm).last()
    };
    match (last_of(1), last_of(2)) {
        (Some(p1), Some(p2)) => format!("{p1:.2e} ({p2:.2e})"),
        (Some(p1), None) => format!("{p1:.2e}"),
        _ => "-".to_string(),
    }
}

fn steps_column(trace: &VqeTrace) -> String {
    if trace.phase2_steps > 0 {
        format!("{} ({})", trace.phase1_steps, trace.phase2_steps)
    } else {
        format!("{}", trace.phase1_steps)
    }
}

fn write_artifact(dir: &Path, name: &str, header: &str, body: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    std::fs::write(&path, format!("{header}\n{body}"))?;
    Ok(path)
}

fn cmd_vqe(args: &VqeArgs, header: &str, out: &mut String) -> Result<i32> {
    let prep = prepare_vqe(args)?;
    let summary = run_prepared_vqe(&prep)?;
    let trace = &summary.trace;

    std::fs::create_dir_all(&args.out_dir)?;
    write_artifact(&args.out_dir, "trace.txt", header, &trace.to_text())?;
    let mut theta_text = String::new();
    for t in &trace.theta {
        writeln!(theta_text, "{t:+.16e}").unwrap();
    }
    write_artifact(&args.out_dir, "theta.txt", header, &theta_text)?;
    write_artifact(&args.out_dir, "rdm_mo.txt", header, &summary.rdm_mo_full.to_text())?;
    write_artifact(&args.out_dir, "rdm_ao.txt", header, &summary.rdm_ao.to_text())?;

    writeln!(out, "ansatz = {}  qubits = {}  parameters = {}", prep.circuit.name, prep.circuit.n_qubits, prep.circuit.n_params).unwrap();
    let oracle_col = match summary.e_oracle {
        Some(e) => format!("{e:+.10}"),
        None => format!("(> {MAX_ORACLE_QUBITS} qubits)"),
    };
    writeln!(out, "{:<18} {:<18} {:<22} {:<12} termination", "E_final", "E_oracle", "delta_rdm", "steps")
        .unwrap();
    writeln!(
        out,
        "{:<+18.10} {:<18} {:<22} {:<12} {}",
        trace.final_energy,
        oracle_col,
        delta_rdm_column(trace),
        steps_column(trace),
        trace.termination,
    )
    .unwrap();
    writeln!(out, "artifacts: {}", args.out_dir.display()).unwrap();
    Ok(if trace.termination == Termination::Converged { EXIT_OK } else { EXIT_NO_CONVERGENCE })
}

/// Load a stored 1-RDM and return it in the AO basis, converting
/// full-dimension MO RDMs with the bundle's reference orbitals.
fn load_rdm_ao(path: &Path, bundle: &MoleculeBundle) -> Result<Rdm1> {
    let text = std::fs::read_to_string(path)?;
    let body: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    let rdm = Rdm1::parse_text(&body)?;
    match rdm.basis {
        RdmBasis::Ao => Ok(rdm),
        RdmBasis::MoSpatial => {
            if rdm.dim() != bundle.n_mo() || rdm.offset != 0 {
                return Err(Error::Dimension(format!(
                    "MO-basis RDM from {} is {}×{} at offset {}; properties need the merged full-space file (rdm_mo.txt) or an AO-basis RDM",
                    path.display(),
                    rdm.dim(),
                    rdm.dim(),
                    rdm.offset
                )));
            }
            mo_to_ao(&rdm, &bundle.mo_coeff)
        }
    }
}

fn cmd_properties(args: &PropertiesArgs, header: &str, out: &mut String) -> Result<i32> {
    let bundle = chemio::parse_bundle(&args.bundle)?;
    let gamma_a = load_rdm_ao(&args.rdm, &bundle)?;
    let gamma_b = args.rdm_b.as_ref().map(|p| load_rdm_ao(p, &bundle)).transpose()?;

    let which: Vec<&str> = args.which.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    for w in &which {
        if !matches!(*w, "density" | "esp" | "dipole" | "mulliken" | "cps") {
            return Err(Error::parse(
                "property selection",
                format!("unknown property '{w}' (expected density, esp, dipole, mulliken, cps)"),
            ));
        }
    }
    std::fs::create_dir_all(&args.out_dir)?;

    // labelled RDM list: scalar properties run per RDM, cubes difference A-B
    let mut rdms: Vec<(&str, &Rdm1)> = vec![("A", &gamma_a)];
    if let Some(b) = &gamma_b {
        rdms.push(("B", b));
    }
    let difference = gamma_b.is_some();

    if which.contains(&"density") {
        let mut cube = properties::density_cube(&gamma_a, &bundle, args.spacing, args.padding)?;
        let (name, comment) = if let Some(b) = &gamma_b {
            let other = properties::density_cube(b, &bundle, args.spacing, args.padding)?;
            for (v, w) in cube.data.iter_mut().zip(&other.data) {
                *v -= w;
            }
            ("density_diff.cube", "electron density difference (A - B)")
        } else {
            ("density.cube", "electron density")
        };
        let text = chemio::write_cube_str(header, comment, &bundle.atoms, &cube);
        std::fs::write(args.out_dir.join(name), text)?;
        writeln!(out, "wrote {name}").unwrap();
    }

    if which.contains(&"esp") {
        let mut cube =
            properties::esp_cube(&gamma_a, &bundle, args.esp_spacing, args.padding)?;
        let (name, comment) = if let Some(b) = &gamma_b {
            let other = properties::esp_cube(b, &bundle, args.esp_spacing, args.padding)?;
            for (v, w) in cube.data.iter_mut().zip(&other.data) {
                *v -= w;
            }
            ("esp_diff.cube", "electrostatic potential difference (A - B)")
        } else {
            ("esp.cube", "electrostatic potential")
        };
        let text = chemio::write_cube_str(header, comment, &bundle.atoms, &cube);
        std::fs::write(args.out_dir.join(name), text)?;
        writeln!(out, "wrote {name}").unwrap();
    }

    if which.contains(&"dipole") {
        let mut text = String::new();
        for (label, gamma) in &rdms {
            let report = properties::dipole_moment(gamma, &bundle)?;
            if difference {
                writeln!(text, "[{label}]").unwrap();
            }
            writeln!(
                text,
                "origin (center of nuclear charge, bohr) = [{:+.10}, {:+.10}, {:+.10}]",
                report.origin[0], report.origin[1], report.origin[2]
            )
            .unwrap();
            writeln!(
                text,
                "mu (a.u.)   = [{:+.10}, {:+.10}, {:+.10}]",
                report.au[0], report.au[1], report.au[2]
            )
            .unwrap();
            writeln!(
                text,
                "mu (debye)  = [{:+.10}, {:+.10}, {:+.10}]",
                report.debye[0], report.debye[1], report.debye[2]
            )
            .unwrap();
            writeln!(text, "|mu| (debye) = {:.10}", report.magnitude_debye).unwrap();
        }
        write_artifact(&args.out_dir, "dipole.txt", header, &text)?;
        writeln!(out, "wrote dipole.txt").unwrap();
        out.push_str(&text);
    }

    if which.contains(&"mulliken") {
        let mut text = String::new();
        for (label, gamma) in &rdms {
            let report = properties::mulliken(gamma, &bundle)?;
            if difference {
                writeln!(text, "[{label}]").unwrap();
            }
            text.push_str(&report.to_text(&bundle.atoms));
        }
        write_artifact(&args.out_dir, "mulliken.txt", header, &text)?;
        writeln!(out, "wrote mulliken.txt").unwrap();
        out.push_str(&text);
    }

    if which.contains(&"cps") {
        let mut text = String::new();
        for (label, gamma) in &rdms {
            let cps = properties::find_critical_points(
                gamma,
                &bundle,
                args.cp_grad_tol,
                args.cp_max_iter,
            )?;
            if difference {
                writeln!(text, "[{label}]").unwrap();
            }
            text.push_str(&properties::critical_point_report(&cps, &bundle.atoms));
        }
        write_artifact(&args.out_dir, "cps.txt", header, &text)?;
        writeln!(out, "wrote cps.txt").unwrap();
        out.push_str(&text);
    }

    writeln!(out, "artifacts: {}", args.out_dir.display()).unwrap();
    Ok(EXIT_OK)
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ScanVqeOverrides {
    ansatz: Option<String>,
    k: Option<usize>,
    layers: Option<usize>,
    gf_pi: Option<bool>,
    active: Option<String>,
    seed: Option<u64>,
    w_e: Option<f64>,
    w_rdm: Option<f64>,
    e_tol: Option<f64>,
    rdm_tol: Option<f64>,
    n_r: Option<usize>,
    e_limit_offset: Option<f64>,
    learning_rate: Option<f64>,
    max_iter_phase1: Option<usize>,
    max_iter_phase2: Option<usize>,
    gradient: Option<String>,
    fd_step: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScanGeometry {
    label: String,
    bundle: PathBuf,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScanConfig {
    #[serde(default)]
    vqe: ScanVqeOverrides,
    #[serde(rename = "geometry")]
    geometries: Vec<ScanGeometry>,
}

fn scan_vqe_args(cfg: &ScanVqeOverrides, bundle: PathBuf, mode: ModeKind, out_dir: PathBuf) -> Result<VqeArgs> {
    let ansatz = match cfg.ansatz.as_deref() {
        None | Some("kupccgsd") => AnsatzKind::Kupccgsd,
        Some("gatefabric") => AnsatzKind::Gatefabric,
        Some(other) => {
            return Err(Error::parse(
                "scan config",
                format!("unknown ansatz '{other}' (expected kupccgsd or gatefabric)"),
            ))
        }
    };
    let gradient = match cfg.gradient.as_deref() {
        None | Some("fd") => GradientKind::Fd,
        Some("shift") => GradientKind::Shift,
        Some(other) => {
            return Err(Error::parse(
                "scan config",
                format!("unknown gradient mode '{other}' (expected fd or shift)"),
            ))
        }
    };
    Ok(VqeArgs {
        bundle,
        ansatz,
        active: cfg.active.clone(),
        mode,
        k: cfg.k.unwrap_or(1),
        layers: cfg.layers.unwrap_or(2),
        gf_pi: cfg.gf_pi.unwrap_or(false),
        seed: cfg.seed,
        w_e: cfg.w_e.unwrap_or(1.0),
        w_rdm: cfg.w_rdm.unwrap_or(1.0),
        e_tol: cfg.e_tol.unwrap_or(1e-6),
        rdm_tol: cfg.rdm_tol.unwrap_or(1e-6),
        n_r: cfg.n_r.unwrap_or(10),
        e_limit_offset: cfg.e_limit_offset.unwrap_or(1e-4),
        learning_rate: cfg.learning_rate.unwrap_or(0.4),
        max_iter_phase1: cfg.max_iter_phase1.unwrap_or(5000),
        max_iter_phase2: cfg.max_iter_phase2.unwrap_or(5000),
        gradient,
        fd_step: cfg.fd_step.unwrap_or(1e-4),
        out_dir,
    })
}

struct ScanRow {
    label: String,
    outcome: std::result::Result<ScanRowData, String>,
}

struct ScanRowData {
    e_energy_only: f64,
    e_two_phase: f64,
    e_oracle: Option<f64>,
    delta_rdm: String,
    steps: String,
}

fn sanitize_label(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
        .collect()
}

fn cmd_scan(args: &ScanArgs, header: &str, out: &mut String) -> Result<i32> {
    let text = std::fs::read_to_string(&args.config)?;
    let config: ScanConfig =
        toml::from_str(&text).map_err(|e| Error::parse("scan config", e.to_string()))?;
    if config.geometries.is_empty() {
        return Err(Error::validation("scan_geometries", "scan config lists no geometries"));
    }

    let mut rows = Vec::new();
    for geometry in &config.geometries {
        let run = || -> Result<ScanRowData> {
            let mut e_by_mode = [0.0f64; 2];
            let mut delta_rdm = String::new();
            let mut steps = String::new();
            let mut e_oracle = None;
            for (slot, mode) in [(0, ModeKind::Energy), (1, ModeKind::TwoPhase)] {
                let out_dir = match &args.out_dir {
                    Some(dir) => {
                        let mode_name = if mode == ModeKind::Energy { "energy" } else { "two-phase" };
                        dir.join(format!("{}_{mode_name}", sanitize_label(&geometry.label)))
                    }
                    None => std::env::temp_dir().join(format!(
                        "vqedm-scan-{}-{}",
                        std::process::id(),
                        sanitize_label(&geometry.label)
                    )),
                };
                let vqe_args =
                    scan_vqe_args(&config.vqe, geometry.bundle.clone(), mode, out_dir)?;
                let prep = prepare_vqe(&vqe_args)?;
                let summary = run_prepared_vqe(&prep)?;
                if args.out_dir.is_some() {
                    std::fs::create_dir_all(&vqe_args.out_dir)?;
                    write_artifact(&vqe_args.out_dir, "trace.txt", header, &summary.trace.to_text())?;
                    write_artifact(&vqe_args.out_dir, "rdm_mo.txt", header, &summary.rdm_mo_full.to_text())?;
                    write_artifact(&vqe_args.out_dir, "rdm_ao.txt", header, &summary.rdm_ao.to_text())?;
                }
                e_by_mode[slot] = summary.trace.final_energy;
                if mode == ModeKind::TwoPhase {
                    delta_rdm = delta_rdm_column(&summary.trace);
                    steps = steps_column(&summary.trace);
                    e_oracle = summary.e_oracle;
                }
            }
            Ok(ScanRowData {
                e_energy_only: e_by_mode[0],
                e_two_phase: e_by_mode[1],
                e_oracle,
                delta_rdm,
                steps,
            })
        };
        rows.push(ScanRow {
            label: geometry.label.clone(),
            outcome: run().map_err(|e| e.to_string()),
        });
    }

    writeln!(
        out,
        "{:<12} {:<18} {:<18} {:<18} {:<12} {:<22} steps",
        "label", "E_VQE", "E_VQE*", "E_oracle", "E_dif", "delta_rdm"
    )
    .unwrap();
    let mut any_failed = false;
    for row in &rows {
        match &row.outcome {
            Ok(data) => {
                let oracle_col = match data.e_oracle {
                    Some(e) => format!("{e:+.10}"),
                    None => "-".to_string(),
                };
                writeln!(
                    out,
                    "{:<12} {:<+18.10} {:<+18.10} {:<18} {:<12.4} {:<22} {}",
                    row.label,
                    data.e_energy_only,
                    data.e_two_phase,
                    oracle_col,
                    data.e_energy_only - data.e_two_phase,
                    data.delta_rdm,
                    data.steps,
                )
                .unwrap();
            }
            Err(message) => {
                any_failed = true;
                writeln!(out, "{:<12} FAILED: {message}", row.label).unwrap();
            }
        }
    }
    Ok(if any_failed { EXIT_PARTIAL_SCAN } else { EXIT_OK })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn active_space_strings_parse_and_reject() {
        assert_eq!(parse_active("(2,2)").unwrap(), (2, 2));
        assert_eq!(parse_active(" ( 4 , 4 ) ").unwrap(), (4, 4));
        assert_eq!(parse_active("2,3").unwrap(), (2, 3));
        assert!(parse_active("(2)").is_err());
        assert!(parse_active("(a,b)").is_err());
        assert!(parse_active("(2,2,2)").is_err());
    }

    #[test]
    fn active_window_resolution_freezes_the_core() {
        let atoms: Vec<Atom> = (0..4)
            .map(|i| Atom { symbol: "H".into(), z: 1, position: [0.0, 0.0, 1.8 * i as f64] })
            .collect();
        let mut bundle = crate::integrals::build_hydrogen_bundle(&atoms, 0).unwrap();
        scf::run_rhf_default(&mut bundle).unwrap(); // populate the MO frame
        // 4 electrons, 4 orbitals: (2,2) freezes orbital 0, activates 1..3
        assert_eq!(resolve_active(&bundle, 2, 2).unwrap(), vec![1, 2]);
        assert_eq!(resolve_active(&bundle, 4, 4).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(resolve_active(&bundle, 4, 3).unwrap(), vec![0, 1, 2]);
        assert!(resolve_active(&bundle, 3, 2).is_err(), "odd electron count");
        assert!(resolve_active(&bundle, 6, 4).is_err(), "more electrons than present");
        assert!(resolve_active(&bundle, 2, 4).is_err(), "window past the last orbital");
        assert!(resolve_active(&bundle, 4, 1).is_err(), "overfilled orbitals");
    }

    #[test]
    fn geometry_strings_parse_and_reject() {
        let atoms = parse_geometry("H 0 0 0; H 0 0 1.4").unwrap();
        assert_eq!(atoms.len(), 2);
        assert_eq!(atoms[1].position, [0.0, 0.0, 1.4]);
        assert!(parse_geometry("H 0 0").is_err());
        assert!(parse_geometry("He 0 0 0").is_err());
        assert!(parse_geometry("").is_err());
        assert!(parse_geometry("H x y z").is_err());
    }

    #[test]
    fn bad_flags_exit_with_input_error_and_help_succeeds() {
        let bad = execute(["vqedm", "vqe", "--no-such-flag"]);
        assert_eq!(bad.exit_code, EXIT_INPUT);
        assert!(!bad.stderr.is_empty());

        let help = execute(["vqedm", "--help"]);
        assert_eq!(help.exit_code, EXIT_OK);
        assert!(help.stdout.contains("vqe"));

        let missing = execute(["vqedm", "scf", "/no/such/bundle.toml"]);
        assert_eq!(missing.exit_code, EXIT_INPUT);
        assert!(!missing.stderr.is_empty());
    }

    #[test]
    fn artifact_headers_carry_version_and_flags() {
        let argv: Vec<OsString> =
            ["vqedm", "vqe", "h2.toml", "--ansatz", "kupccgsd"].iter().map(Into::into).collect();
        let header = artifact_header(&argv);
        assert!(header.starts_with(&format!("# vqedm {} | vqedm vqe h2.toml", env!("CARGO_PKG_VERSION"))));
        assert!(header.contains("--ansatz kupccgsd"));
    }
}
